//! Smith normal form over the integers, and finitely presented abelian
//! groups.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub type Matrix = Vec<Vec<BigInt>>;

/// `D = U·A·V` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next. Zeros come last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    pub diagonal: Vec<BigInt>,
    pub left: Matrix,
    pub right: Matrix,
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn to_matrix(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &Matrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `a / b` rounded to the nearest integer, so the remainder has at most
/// half the magnitude of `b`.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if (&r * 2u8).magnitude() > b.magnitude() {
        if r.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

struct Reducer {
    a: Matrix,
    u: Matrix,
    v: Matrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i -= q * row_j
    fn sub_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let (src, dst) = if i < j {
                let (lo, hi) = m.split_at_mut(j);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[j], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
    }

    /// col_i -= q * col_j
    fn sub_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            if !row[j].is_zero() {
                let t = q * &row[j];
                row[i] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
    }
}

impl SmithForm {
    pub fn new(a: &Matrix) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut r = Reducer {
            a: a.clone(),
            u: identity(rows),
            v: identity(cols),
        };
        let steps = rows.min(cols);
        for t in 0..steps {
            loop {
                // least nonzero |entry| in the trailing block
                let pivot = (t..rows)
                    .flat_map(|i| (t..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| !r.a[i][j].is_zero())
                    .min_by(|&(i, j), &(k, l)| r.a[i][j].magnitude().cmp(r.a[k][l].magnitude()));
                let Some((pi, pj)) = pivot else { break };
                r.swap_rows(t, pi);
                r.swap_cols(t, pj);
                for j in t + 1..cols {
                    let q = nearest_quotient(&r.a[t][j], &r.a[t][t]);
                    if !q.is_zero() {
                        r.sub_col(j, t, &q);
                    }
                }
                for i in t + 1..rows {
                    let q = nearest_quotient(&r.a[i][t], &r.a[t][t]);
                    if !q.is_zero() {
                        r.sub_row(i, t, &q);
                    }
                }
                let cleared = (t + 1..rows).all(|i| r.a[i][t].is_zero()) && (t + 1..cols).all(|j| r.a[t][j].is_zero());
                if !cleared {
                    continue;
                }
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !r.a[i][j].is_multiple_of(&r.a[t][t]));
                match bad {
                    Some((i, _)) => {
                        let minus_one = -BigInt::one();
                        r.sub_row(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if r.a[t][t].is_negative() {
                r.negate_row(t);
            }
        }
        let diagonal = (0..steps).map(|i| r.a[i][i].clone()).collect();
        SmithForm {
            rows,
            cols,
            diagonal,
            left: r.u,
            right: r.v,
        }
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Re-multiplies the transforms: `U·A·V` equals the diagonal matrix,
    /// both transforms have determinant ±1, and the divisibility chain holds.
    pub fn verify(&self, a: &Matrix) -> bool {
        let ua = mat_mul(&self.left, a, self.rows, self.cols);
        let uav = mat_mul(&ua, &self.right, self.cols, self.cols);
        let diagonal_ok = uav.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { *x == self.diagonal[i] } else { x.is_zero() })
        });
        let chain_ok = self.diagonal.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        }) && self.diagonal.iter().all(|d| !d.is_negative());
        diagonal_ok && chain_ok && determinant(&self.left).abs().is_one() && determinant(&self.right).abs().is_one()
    }

    /// Invariant factors of `Z^cols / rowspace(A)`: the non-unit diagonal
    /// entries, then a `0` per free summand.
    pub fn cokernel_factors(&self) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self
            .diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        let free = self.cols - self.rank();
        out.extend(std::iter::repeat_n(BigInt::zero(), free));
        out
    }
}

/// An abelian group `Z^generators / ⟨relations⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbPresentation {
    pub generators: usize,
    pub relations: Vec<Vec<i64>>,
}

/// A presentation shrunk by unit-pivot elimination and lattice reduction,
/// with the Smith form of what remains.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub eliminated: usize,
    pub matrix: Matrix,
    pub smith: SmithForm,
}

type SparseRow = BTreeMap<usize, BigInt>;

fn axpy(row: &mut SparseRow, q: &BigInt, pivot: &SparseRow) {
    for (&c, v) in pivot {
        let e = row.entry(c).or_insert_with(BigInt::zero);
        *e -= q * v;
        if e.is_zero() {
            row.remove(&c);
        }
    }
}

impl AbPresentation {
    pub fn new(generators: usize, relations: Vec<Vec<i64>>) -> Self {
        AbPresentation { generators, relations }
    }

    pub fn reduce(&self) -> Reduced {
        let mut pending: Vec<SparseRow> = self
            .relations
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(c, &x)| (c, BigInt::from(x)))
                    .collect()
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        // pivots in creation order; pivot k has no column of an earlier pivot
        let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
        let mut pivot_cols = BTreeSet::new();
        loop {
            let mut residual = Vec::new();
            let before = pivots.len();
            for mut row in pending {
                for (c, p) in &pivots {
                    if let Some(q) = row.get(c).cloned() {
                        // pivot entry is 1
                        axpy(&mut row, &q, p);
                    }
                }
                if row.is_empty() {
                    continue;
                }
                match row.iter().find(|(_, v)| v.abs().is_one()).map(|(&c, v)| (c, v.clone())) {
                    Some((c, v)) => {
                        if v.is_negative() {
                            for x in row.values_mut() {
                                *x = -&*x;
                            }
                        }
                        pivot_cols.insert(c);
                        pivots.push((c, row));
                    }
                    None => residual.push(row),
                }
            }
            pending = residual;
            if pivots.len() == before {
                break;
            }
        }
        let free: Vec<usize> = (0..self.generators).filter(|c| !pivot_cols.contains(c)).collect();
        let index: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let rows: BTreeSet<Vec<BigInt>> = pending
            .into_iter()
            .map(|row| {
                let mut dense = vec![BigInt::zero(); free.len()];
                for (c, v) in row {
                    dense[index[&c]] = v;
                }
                dense
            })
            .collect();
        let matrix = hermite_rows(rows.into_iter().collect(), free.len());
        let smith = SmithForm::new(&matrix);
        Reduced {
            eliminated: pivot_cols.len(),
            matrix,
            smith,
        }
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let r = self.reduce();
        if r.matrix.is_empty() {
            return vec![BigInt::zero(); self.generators - r.eliminated];
        }
        r.smith.cokernel_factors()
    }

    /// Order of the group, or `None` when it is infinite.
    pub fn order(&self) -> Option<BigUint> {
        order_of(&self.invariant_factors())
    }
}

pub fn order_of(factors: &[BigInt]) -> Option<BigUint> {
    factors.iter().try_fold(BigUint::one(), |acc, d| {
        if d.is_zero() {
            None
        } else {
            Some(acc * d.magnitude())
        }
    })
}

/// Row-echelon basis of the row lattice, at most `cols` rows.
fn hermite_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Matrix {
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; cols];
    for mut row in rows {
        for c in 0..cols {
            if row[c].is_zero() {
                continue;
            }
            match basis[c].take() {
                None => {
                    basis[c] = Some(row);
                    break;
                }
                Some(mut b) => {
                    // unimodular combination putting gcd in the pivot slot
                    let e = row[c].extended_gcd(&b[c]);
                    let (x, y) = (e.x, e.y);
                    let (rq, bq) = (&row[c] / &e.gcd, &b[c] / &e.gcd);
                    let new_b: Vec<BigInt> = row.iter().zip(&b).map(|(r, s)| &x * r + &y * s).collect();
                    let new_r: Vec<BigInt> = row.iter().zip(&b).map(|(r, s)| &bq * r - &rq * s).collect();
                    b = new_b;
                    row = new_r;
                    basis[c] = Some(b);
                }
            }
        }
    }
    basis.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_diagonalization() {
        let a = to_matrix(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = SmithForm::new(&a);
        assert!(s.verify(&a));
        assert_eq!(s.diagonal, ints(&[2, 6, 12]));
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(AbPresentation::new(1, vec![]).invariant_factors(), ints(&[0]));
        assert_eq!(AbPresentation::new(1, vec![vec![2]]).invariant_factors(), ints(&[2]));
        assert_eq!(
            AbPresentation::new(2, vec![vec![2, 0], vec![0, 3]]).invariant_factors(),
            ints(&[6])
        );
        assert_eq!(AbPresentation::new(2, vec![vec![1, 1]]).invariant_factors(), ints(&[0]));
        assert_eq!(AbPresentation::new(0, vec![]).invariant_factors(), ints(&[]));
        assert_eq!(
            AbPresentation::new(2, vec![vec![1, 0], vec![0, -1]]).order(),
            Some(BigUint::one())
        );
        assert_eq!(AbPresentation::new(2, vec![vec![4, 2]]).order(), None);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&to_matrix(&[vec![0, 1], vec![1, 0]])), BigInt::from(-1));
        assert_eq!(
            determinant(&to_matrix(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]])),
            BigInt::from(4)
        );
    }

    /// Order of `Z^n / rowspace` by brute force over the box `[0, bound)^n`
    /// when the lattice contains `bound·Z^n`.
    fn brute_order(n: usize, rows: &[Vec<i64>], bound: i64) -> usize {
        let mut rel: Vec<Vec<i64>> = rows.to_vec();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = bound;
            rel.push(e);
        }
        // closure of {0} under adding relation vectors mod bound
        let mut seen = BTreeSet::new();
        let mut stack = vec![vec![0i64; n]];
        while let Some(v) = stack.pop() {
            if !seen.insert(v.clone()) {
                continue;
            }
            for r in &rel {
                let w: Vec<i64> = v.iter().zip(r).map(|(a, b)| (a + b).rem_euclid(bound)).collect();
                stack.push(w);
            }
        }
        (bound as usize).pow(n as u32) / seen.len()
    }

    proptest! {
        #[test]
        fn smith_form_self_validates(rows in prop::collection::vec(prop::collection::vec(-9i64..10, 3), 0..5)) {
            let a = to_matrix(&rows);
            if !a.is_empty() {
                prop_assert!(SmithForm::new(&a).verify(&a));
            }
        }

        #[test]
        fn dense_square_matrices(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 12), 12)) {
            let a = to_matrix(&rows);
            let s = SmithForm::new(&a);
            prop_assert!(s.verify(&a));
            let product: BigInt = s.diagonal.iter().product();
            prop_assert_eq!(product, determinant(&a).abs());
        }

        #[test]
        fn order_matches_brute_force(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 2), 0..4)) {
            let mut with_torsion = rows.clone();
            with_torsion.push(vec![6, 0]);
            with_torsion.push(vec![0, 6]);
            let p = AbPresentation::new(2, with_torsion);
            let order = p.order().unwrap();
            prop_assert_eq!(order, BigUint::from(brute_order(2, &rows, 6)));
        }
    }
}
