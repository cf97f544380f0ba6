//! Finite commutative rings given by tables, ring maps, and the tensor square
//! `S ⊗_R S` of an algebra presented as an abelian group.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::snf::AbPresentation;

pub const DEFAULT_RING_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("a ring needs at least one element")]
    Empty,
    #[error("Z/n needs n >= 1")]
    ZeroModulus,
    #[error("table {table} must be {size}x{size} with entries below {size}")]
    TableShape { table: &'static str, size: usize },
    #[error("label list has {got} entries for {size} elements")]
    Labels { got: usize, size: usize },
    #[error("{law} fails at {witness}")]
    Axiom { law: &'static str, witness: String },
    #[error("modulus polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("ring would have {size} elements, above the cap of {cap}")]
    TooLarge { size: u128, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("map has {got} entries, domain has {size} elements")]
    Length { got: usize, size: usize },
    #[error("no element {0} in the codomain")]
    UnknownElement(String),
    #[error("map does not preserve {law} at {witness}")]
    NotHomomorphism { law: &'static str, witness: String },
}

/// A finite commutative ring with elements `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteRing {
    labels: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

impl FiniteRing {
    /// Builds a ring from tables, checking every axiom exhaustively.
    pub fn from_tables(
        labels: Option<Vec<String>>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self, RingError> {
        let n = add.len();
        if n == 0 {
            return Err(RingError::Empty);
        }
        for (table, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != n || t.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
                return Err(RingError::TableShape { table, size: n });
            }
        }
        if zero >= n || one >= n {
            return Err(RingError::TableShape {
                table: "zero/one",
                size: n,
            });
        }
        let labels = match labels {
            Some(l) if l.len() != n => return Err(RingError::Labels { got: l.len(), size: n }),
            Some(l) => l,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let ring = FiniteRing {
            labels,
            add,
            mul,
            zero,
            one,
        };
        ring.check_axioms()?;
        Ok(ring)
    }

    fn check_axioms(&self) -> Result<(), RingError> {
        let n = self.size();
        let fail = |law, w: &[usize]| RingError::Axiom {
            law,
            witness: format!("({})", w.iter().map(|&i| self.label(i)).collect::<Vec<_>>().join(", ")),
        };
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return Err(fail("additive identity", &[a]));
            }
            if self.mul(a, self.one) != a {
                return Err(fail("multiplicative identity", &[a]));
            }
            if !(0..n).any(|b| self.add(a, b) == self.zero) {
                return Err(fail("additive inverse", &[a]));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(fail("additive commutativity", &[a, b]));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(fail("multiplicative commutativity", &[a, b]));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(fail("additive associativity", &[a, b, c]));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(fail("multiplicative associativity", &[a, b, c]));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(fail("distributivity", &[a, b, c]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zn(n: usize) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::ZeroModulus);
        }
        let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
        Self::from_tables(None, add, mul, 0, 1 % n)
    }

    /// Product ring; the first factor is the most significant digit of an
    /// element index.
    pub fn product(factors: &[FiniteRing]) -> Result<Self, RingError> {
        let sizes: Vec<usize> = factors.iter().map(FiniteRing::size).collect();
        let n: usize = sizes.iter().product();
        let digits = |mut i: usize| {
            let mut d = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                d[k] = i % sizes[k];
                i /= sizes[k];
            }
            d
        };
        let index = |d: &[usize]| d.iter().zip(&sizes).fold(0, |acc, (&x, &s)| acc * s + x);
        let op = |f: &dyn Fn(&FiniteRing, usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n)
                .map(|a| {
                    let da = digits(a);
                    (0..n)
                        .map(|b| {
                            let db = digits(b);
                            let dc: Vec<usize> = factors.iter().enumerate().map(|(k, r)| f(r, da[k], db[k])).collect();
                            index(&dc)
                        })
                        .collect()
                })
                .collect()
        };
        let add = op(&|r, x, y| r.add(x, y));
        let mul = op(&|r, x, y| r.mul(x, y));
        let labels = (0..n)
            .map(|a| {
                let parts: Vec<&str> = digits(a).iter().zip(factors).map(|(&x, r)| r.label(x)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let zero = index(&factors.iter().map(|r| r.zero).collect::<Vec<_>>());
        let one = index(&factors.iter().map(|r| r.one).collect::<Vec<_>>());
        Self::from_tables(Some(labels), add, mul, zero, one)
    }

    /// `base[x] / (poly)`, with `poly` listed from the constant term up and
    /// each integer coefficient `k` read as `k·1`. The element with
    /// coefficients `c_0, c_1, ...` has index `Σ c_k |base|^k`.
    pub fn polyquo(base: &FiniteRing, poly: &[i64]) -> Result<Self, RingError> {
        let coeffs: Vec<usize> = poly.iter().map(|&k| base.integer(k)).collect();
        let d = coeffs.len().checked_sub(1).ok_or(RingError::NotMonic)?;
        if d == 0 || coeffs[d] != base.one {
            return Err(RingError::NotMonic);
        }
        let m = base.size();
        let n = m.pow(d as u32);
        let digits = |mut i: usize| {
            let mut c = vec![0; d];
            for slot in c.iter_mut() {
                *slot = i % m;
                i /= m;
            }
            c
        };
        let index = |c: &[usize]| c.iter().rev().fold(0, |acc, &x| acc * m + x);
        let add: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                let ca = digits(a);
                (0..n)
                    .map(|b| {
                        let cb = digits(b);
                        index(&ca.iter().zip(&cb).map(|(&x, &y)| base.add(x, y)).collect::<Vec<_>>())
                    })
                    .collect()
            })
            .collect();
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                let ca = digits(a);
                (0..n)
                    .map(|b| {
                        let cb = digits(b);
                        let mut prod = vec![base.zero; 2 * d - 1];
                        for (i, &x) in ca.iter().enumerate() {
                            for (j, &y) in cb.iter().enumerate() {
                                prod[i + j] = base.add(prod[i + j], base.mul(x, y));
                            }
                        }
                        // x^d = -(c_0 + ... + c_{d-1} x^{d-1})
                        for k in (d..prod.len()).rev() {
                            let lead = prod[k];
                            prod[k] = base.zero;
                            for (i, &c) in coeffs[..d].iter().enumerate() {
                                let t = base.neg(base.mul(lead, c));
                                prod[k - d + i] = base.add(prod[k - d + i], t);
                            }
                        }
                        index(&prod[..d])
                    })
                    .collect()
            })
            .collect();
        let labels = (0..n).map(|a| poly_label(base, &digits(a))).collect();
        let mut one = vec![base.zero; d];
        one[0] = base.one;
        Self::from_tables(Some(labels), add, mul, index(&vec![base.zero; d]), index(&one))
    }

    pub fn size(&self) -> usize {
        self.add.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.size())
            .find(|&b| self.add(a, b) == self.zero)
            .expect("validated ring")
    }

    /// The image of an integer, `k·1`.
    pub fn integer(&self, k: i64) -> usize {
        let unit = if k < 0 { self.neg(self.one) } else { self.one };
        (0..k.unsigned_abs()).fold(self.zero, |acc, _| self.add(acc, unit))
    }
}

fn poly_label(base: &FiniteRing, coeffs: &[usize]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != base.zero)
        .map(|(k, &c)| {
            let coef = base.label(c);
            match (k, c == base.one) {
                (0, _) => coef.to_string(),
                (_, true) if k == 1 => "x".to_string(),
                (_, true) => format!("x^{k}"),
                (1, false) => format!("{coef}x"),
                _ => format!("{coef}x^{k}"),
            }
        })
        .collect();
    if terms.is_empty() {
        base.label(base.zero).to_string()
    } else {
        terms.join("+")
    }
}

/// Ring description as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingSpec {
    Zn {
        n: usize,
    },
    Product {
        factors: Vec<RingSpec>,
    },
    Polyquo {
        base: Box<RingSpec>,
        poly: Vec<i64>,
    },
    Tables {
        #[serde(default)]
        labels: Option<Vec<String>>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    },
}

impl RingSpec {
    /// Number of elements this description yields, computed without building it.
    pub fn size_estimate(&self) -> u128 {
        match self {
            RingSpec::Zn { n } => *n as u128,
            RingSpec::Product { factors } => factors
                .iter()
                .fold(1u128, |acc, f| acc.saturating_mul(f.size_estimate())),
            RingSpec::Polyquo { base, poly } => {
                let d = poly.len().saturating_sub(1).min(128) as u32;
                base.size_estimate().saturating_pow(d)
            }
            RingSpec::Tables { add, .. } => add.len() as u128,
        }
    }

    pub fn build(&self, cap: usize) -> Result<FiniteRing, RingError> {
        let size = self.size_estimate();
        if size > cap as u128 {
            return Err(RingError::TooLarge { size, cap });
        }
        match self {
            RingSpec::Zn { n } => FiniteRing::zn(*n),
            RingSpec::Product { factors } => {
                let rings = factors.iter().map(|f| f.build(cap)).collect::<Result<Vec<_>, _>>()?;
                FiniteRing::product(&rings)
            }
            RingSpec::Polyquo { base, poly } => FiniteRing::polyquo(&base.build(cap)?, poly),
            RingSpec::Tables {
                labels,
                add,
                mul,
                zero,
                one,
            } => FiniteRing::from_tables(labels.clone(), add.clone(), mul.clone(), *zero, *one),
        }
    }
}

/// One entry of a hom file: an element index or label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSpec {
    pub map: Vec<ElementRef>,
}

/// A ring map given by the image of every element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingHom {
    pub map: Vec<usize>,
}

impl RingHom {
    pub fn identity(r: &FiniteRing) -> Self {
        RingHom {
            map: (0..r.size()).collect(),
        }
    }

    /// `k ↦ k·1`: the unique map out of `Z/n` when `r` is `Z/n`, if it is
    /// well defined.
    pub fn from_integers(r: &FiniteRing, s: &FiniteRing) -> Result<Self, HomError> {
        let h = RingHom {
            map: (0..r.size()).map(|k| s.integer(k as i64)).collect(),
        };
        h.validate(r, s)?;
        Ok(h)
    }

    pub fn from_spec(spec: &HomSpec, r: &FiniteRing, s: &FiniteRing) -> Result<Self, HomError> {
        let map = spec
            .map
            .iter()
            .map(|e| match e {
                ElementRef::Index(i) if *i < s.size() => Ok(*i),
                ElementRef::Index(i) => Err(HomError::UnknownElement(i.to_string())),
                ElementRef::Label(l) => s.element(l).ok_or_else(|| HomError::UnknownElement(l.clone())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let h = RingHom { map };
        h.validate(r, s)?;
        Ok(h)
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn validate(&self, r: &FiniteRing, s: &FiniteRing) -> Result<(), HomError> {
        if self.map.len() != r.size() {
            return Err(HomError::Length {
                got: self.map.len(),
                size: r.size(),
            });
        }
        if let Some(&x) = self.map.iter().find(|&&x| x >= s.size()) {
            return Err(HomError::UnknownElement(x.to_string()));
        }
        let fail = |law, w: String| HomError::NotHomomorphism { law, witness: w };
        if self.apply(r.one()) != s.one() {
            return Err(fail("one", r.label(r.one()).to_string()));
        }
        for a in 0..r.size() {
            for b in 0..r.size() {
                let w = || format!("({}, {})", r.label(a), r.label(b));
                if self.apply(r.add(a, b)) != s.add(self.apply(a), self.apply(b)) {
                    return Err(fail("addition", w()));
                }
                if self.apply(r.mul(a, b)) != s.mul(self.apply(a), self.apply(b)) {
                    return Err(fail("multiplication", w()));
                }
            }
        }
        Ok(())
    }
}

/// Every ring map `s → t`, by backtracking over element images.
pub fn ring_homs(s: &FiniteRing, t: &FiniteRing) -> Vec<RingHom> {
    fn go(s: &FiniteRing, t: &FiniteRing, map: &mut Vec<usize>, out: &mut Vec<RingHom>) {
        let k = map.len();
        if k == s.size() {
            out.push(RingHom { map: map.clone() });
            return;
        }
        for y in 0..t.size() {
            if (k == s.zero() && y != t.zero()) || (k == s.one() && y != t.one()) {
                continue;
            }
            map.push(y);
            let consistent = (0..=k).all(|a| {
                let (fa, fk) = (map[a], y);
                let sum = s.add(a, k);
                let prod = s.mul(a, k);
                (sum > k || map[sum] == t.add(fa, fk)) && (prod > k || map[prod] == t.mul(fa, fk))
            });
            if consistent {
                go(s, t, map, out);
            }
            map.pop();
        }
    }
    let mut out = Vec::new();
    go(s, t, &mut Vec::with_capacity(s.size()), &mut out);
    out
}

/// `S ⊗_R S` as the free abelian group on `S × S` modulo biadditivity and
/// `R`-balancing. Generator `(s, t)` has index `s·|S| + t`.
#[derive(Clone, Debug, Serialize)]
pub struct TensorSquare {
    pub presentation: AbPresentation,
    pub generators: Vec<(usize, usize)>,
}

pub fn tensor_square(r: &FiniteRing, s: &FiniteRing, phi: &RingHom) -> TensorSquare {
    let n = s.size();
    let g = |a: usize, b: usize| a * n + b;
    let mut relations = Vec::new();
    let mut row = |terms: &[(usize, i64)]| {
        let mut v = vec![0i64; n * n];
        for &(i, c) in terms {
            v[i] += c;
        }
        if v.iter().any(|&x| x != 0) {
            relations.push(v);
        }
    };
    for a in 0..n {
        for b in 0..n {
            for t in 0..n {
                row(&[(g(s.add(a, b), t), 1), (g(a, t), -1), (g(b, t), -1)]);
                row(&[(g(t, s.add(a, b)), 1), (g(t, a), -1), (g(t, b), -1)]);
            }
        }
    }
    for x in 0..r.size() {
        let px = phi.apply(x);
        for a in 0..n {
            for t in 0..n {
                row(&[(g(s.mul(px, a), t), 1), (g(a, s.mul(px, t)), -1)]);
            }
        }
    }
    TensorSquare {
        presentation: AbPresentation::new(n * n, relations),
        generators: (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicationReport {
    pub tensor_order: Option<BigUint>,
    pub algebra_order: usize,
    pub iso: bool,
}

/// `∇: S ⊗_R S → S`, `s ⊗ t ↦ st`, is onto, so it is an isomorphism exactly
/// when both sides have the same order.
pub fn mult_map_is_iso(r: &FiniteRing, s: &FiniteRing, phi: &RingHom) -> MultiplicationReport {
    let tensor_order = tensor_square(r, s, phi).presentation.order();
    let iso = tensor_order.as_ref() == Some(&BigUint::from(s.size()));
    MultiplicationReport {
        tensor_order,
        algebra_order: s.size(),
        iso,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationVerdict {
    pub exists: bool,
    pub multiplication: MultiplicationReport,
    pub conclusion: String,
}

pub fn localization_exists_verdict(r: &FiniteRing, s: &FiniteRing, phi: &RingHom) -> LocalizationVerdict {
    let multiplication = mult_map_is_iso(r, s, phi);
    let orders = format!(
        "|S ⊗_R S| = {}, |S| = {}",
        multiplication
            .tensor_order
            .as_ref()
            .map_or_else(|| "infinite".to_string(), ToString::to_string),
        multiplication.algebra_order
    );
    let conclusion = if multiplication.iso {
        format!(
            "localization exists: S ⊗_R S → S is an isomorphism ({orders}), so - ⊗_R S is the \
             fibrant replacement monad of a Bousfield localization of the discrete model structure on Mod(R)"
        )
    } else {
        format!(
            "no localization: S ⊗_R S → S is not an isomorphism ({orders}), so no Bousfield \
             localization of the discrete model structure on Mod(R) has - ⊗_R S as fibrant replacement"
        )
    };
    LocalizationVerdict {
        exists: multiplication.iso,
        multiplication,
        conclusion,
    }
}
