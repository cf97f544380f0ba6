//! `K₀` of the Waldhausen structure carried by a localization of a discrete
//! model structure: every map is a cofibration, and the weak equivalences
//! are the maps the localization inverts.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{limit_search, FinCat, MorId, ObjId, Shape};
use crate::lifting::MorphismClass;
use crate::snf::{to_matrix, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error("category has no zero object")]
    NoZeroObject,
    #[error("no cofiber for {0}: the pushout along the zero map is missing")]
    MissingCofiber(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p^bound = {p}^{bound} exceeds 64")]
    BoundTooLarge { p: u64, bound: u32 },
}

/// A relation `[source] + [cofiber] - [target]` from a cofiber sequence, or
/// `[source] - [target]` from a weak equivalence. Entries are generator
/// indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RelationTag {
    CofiberSequence {
        source: usize,
        cofiber: usize,
        target: usize,
    },
    WeakEquivalence {
        source: usize,
        target: usize,
    },
}

impl RelationTag {
    fn row(&self, generators: usize) -> Vec<i64> {
        let mut row = vec![0; generators];
        match *self {
            RelationTag::CofiberSequence {
                source,
                cofiber,
                target,
            } => {
                row[source] += 1;
                row[cofiber] += 1;
                row[target] -= 1;
            }
            RelationTag::WeakEquivalence { source, target } => {
                row[source] += 1;
                row[target] -= 1;
            }
        }
        row
    }
}

/// Objects up to isomorphism, with the cofiber sequences and weak
/// equivalences between them.
pub trait WaldhausenData {
    fn generator_labels(&self) -> Vec<String>;
    /// Generator of the zero object.
    fn zero_generator(&self) -> usize;
    /// Distinct relations, with the number of morphisms they came from.
    fn relations(&self) -> (Vec<RelationTag>, usize);
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K0Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Vec<i64>>,
    pub tags: Vec<RelationTag>,
    pub morphisms_considered: usize,
}

impl K0Presentation {
    pub fn cofiber_rows(&self) -> usize {
        self.tags
            .iter()
            .filter(|t| matches!(t, RelationTag::CofiberSequence { .. }))
            .count()
    }

    pub fn weak_equivalence_rows(&self) -> usize {
        self.tags.len() - self.cofiber_rows()
    }

    /// Generators `A` for which the row `[A]` itself is a relation, as the
    /// zero map `A → B` with cofiber `B` provides.
    pub fn generators_with_unit_row(&self) -> BTreeSet<usize> {
        self.relations
            .iter()
            .filter_map(|row| {
                let mut nz = row.iter().enumerate().filter(|(_, &x)| x != 0);
                match (nz.next(), nz.next()) {
                    (Some((i, &x)), None) if x.abs() == 1 => Some(i),
                    _ => None,
                }
            })
            .collect()
    }
}

pub fn k0_presentation(w: &impl WaldhausenData) -> K0Presentation {
    let generators = w.generator_labels();
    let (mut tags, morphisms_considered) = w.relations();
    tags.sort();
    tags.dedup();
    let relations = tags.iter().map(|t| t.row(generators.len())).collect();
    K0Presentation {
        generators,
        relations,
        tags,
        morphisms_considered,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K0Group {
    /// Invariant factors, `0` for each free summand; empty means trivial.
    pub invariant_factors: Vec<BigInt>,
    /// The Smith form of the relation matrix re-multiplied correctly.
    pub smith_verified: bool,
}

impl K0Group {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

pub fn k0_group(p: &K0Presentation) -> K0Group {
    let n = p.generators.len();
    if p.relations.is_empty() {
        return K0Group {
            invariant_factors: vec![BigInt::zero(); n],
            smith_verified: true,
        };
    }
    let a = to_matrix(&p.relations);
    let smith = SmithForm::new(&a);
    K0Group {
        invariant_factors: smith.cokernel_factors(),
        smith_verified: smith.verify(&a),
    }
}

/// A finite category with a zero object; cofibers are pushouts along the
/// zero map.
#[derive(Clone, Debug)]
pub struct PointedCategory<'a> {
    cat: &'a FinCat,
    zero: ObjId,
    we: MorphismClass,
    /// Least object of each isomorphism class.
    representatives: Vec<ObjId>,
}

impl<'a> PointedCategory<'a> {
    pub fn new(cat: &'a FinCat, we: MorphismClass) -> Result<Self, KTheoryError> {
        let zero = cat
            .objects()
            .find(|&z| {
                cat.objects()
                    .all(|x| cat.hom(z, x).len() == 1 && cat.hom(x, z).len() == 1)
            })
            .ok_or(KTheoryError::NoZeroObject)?;
        let representatives = cat
            .objects()
            .map(|x| *cat.iso_class(x).first().expect("x is in its own class"))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(PointedCategory {
            cat,
            zero,
            we,
            representatives,
        })
    }

    pub fn zero(&self) -> ObjId {
        self.zero
    }

    fn generator(&self, x: ObjId) -> usize {
        let rep = *self.cat.iso_class(x).first().expect("nonempty class");
        self.representatives.binary_search(&rep).expect("representative")
    }

    /// Pushout of `f: A → B` along `A → 0`.
    pub fn cofiber(&self, f: MorId) -> Result<ObjId, KTheoryError> {
        let c = self.cat;
        let to_zero = c.hom(c.src(f), self.zero)[0];
        limit_search(c, Shape::Pushout(f, to_zero))
            .expect("f and A → 0 form a span")
            .map(|l| l.apex)
            .ok_or_else(|| KTheoryError::MissingCofiber(c.mor_name(f).to_string()))
    }

    pub fn try_relations(&self) -> Result<Vec<RelationTag>, KTheoryError> {
        let c = self.cat;
        let mut out = Vec::new();
        for f in c.morphisms() {
            let (a, b) = (self.generator(c.src(f)), self.generator(c.dst(f)));
            out.push(RelationTag::CofiberSequence {
                source: a,
                cofiber: self.generator(self.cofiber(f)?),
                target: b,
            });
            if self.we.contains(f) {
                out.push(RelationTag::WeakEquivalence { source: a, target: b });
            }
        }
        Ok(out)
    }
}

impl WaldhausenData for PointedCategory<'_> {
    fn generator_labels(&self) -> Vec<String> {
        self.representatives
            .iter()
            .map(|&x| self.cat.obj_name(x).to_string())
            .collect()
    }

    fn zero_generator(&self) -> usize {
        self.generator(self.zero)
    }

    /// Panics when a cofiber is missing; call [`PointedCategory::try_relations`]
    /// first to get the error instead.
    fn relations(&self) -> (Vec<RelationTag>, usize) {
        let rels = self.try_relations().expect("every cofiber exists");
        (rels, self.cat.mor_count())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeakEquivalences {
    Isomorphisms,
    All,
}

/// Exponents of a finite abelian p-group `⊕ Z/p^{a_i}`, largest first.
pub type Partition = Vec<u32>;

/// A homomorphism `⊕ Z/p^{a_i} → ⊕ Z/p^{b_j}`, stored as `c[j][i]`, the
/// `j`-th coordinate of the image of the `i`-th generator.
pub type GroupHom = Vec<Vec<u64>>;

/// Abelian p-groups of order at most `p^bound`, one per isomorphism class,
/// with all homomorphisms between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedAbelian {
    pub p: u64,
    pub bound: u32,
    pub objects: Vec<Partition>,
    pub we: WeakEquivalences,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn partitions(n: u32, max: u32) -> Vec<Partition> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n.min(max))
        .rev()
        .flat_map(|first| {
            partitions(n - first, first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

impl TruncatedAbelian {
    pub fn build(p: u64, bound: u32, we: WeakEquivalences) -> Result<Self, KTheoryError> {
        if !is_prime(p) {
            return Err(KTheoryError::NotPrime(p));
        }
        if p.checked_pow(bound).is_none_or(|order| order > 64) {
            return Err(KTheoryError::BoundTooLarge { p, bound });
        }
        let objects = (0..=bound).flat_map(|n| partitions(n, n)).collect();
        Ok(TruncatedAbelian { p, bound, objects, we })
    }

    pub fn label(&self, a: &[u32]) -> String {
        if a.is_empty() {
            return "0".to_string();
        }
        a.iter()
            .map(|&e| format!("Z/{}", self.p.pow(e)))
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn index(&self, a: &[u32]) -> Option<usize> {
        self.objects.iter().position(|o| o == a)
    }

    pub fn hom_count(&self, a: &[u32], b: &[u32]) -> u128 {
        let e: u32 = a.iter().flat_map(|&x| b.iter().map(move |&y| x.min(y))).sum();
        (self.p as u128).pow(e)
    }

    /// Every homomorphism `a → b`: `c[j][i]` ranges over multiples of
    /// `p^{max(0, b_j - a_i)}` below `p^{b_j}`.
    pub fn homs(&self, a: &[u32], b: &[u32]) -> Vec<GroupHom> {
        let p = self.p;
        let slots: Vec<(usize, usize, u64, u64)> = (0..b.len())
            .flat_map(|j| (0..a.len()).map(move |i| (j, i)))
            .map(|(j, i)| {
                let step = p.pow(b[j].saturating_sub(a[i]));
                (j, i, step, p.pow(b[j]) / step)
            })
            .collect();
        let mut out = Vec::new();
        let mut counter = vec![0u64; slots.len()];
        loop {
            let mut c = vec![vec![0u64; a.len()]; b.len()];
            for (k, &(j, i, step, _)) in slots.iter().enumerate() {
                c[j][i] = counter[k] * step;
            }
            out.push(c);
            let Some(k) = (0..slots.len()).find(|&k| counter[k] + 1 < slots[k].3) else {
                break;
            };
            counter[k] += 1;
            counter[..k].iter_mut().for_each(|x| *x = 0);
        }
        out
    }

    /// `b / f(a)`, by Smith normal form of the presentation
    /// `⟨e_j | p^{b_j} e_j, f(e_i)⟩`.
    pub fn cofiber(&self, b: &[u32], f: &GroupHom) -> Partition {
        let n = b.len();
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let mut r = vec![0; n];
                r[j] = self.p.pow(b[j]) as i64;
                r
            })
            .collect();
        let cols = f.first().map_or(0, Vec::len);
        rows.extend((0..cols).map(|i| (0..n).map(|j| f[j][i] as i64).collect()));
        let mut parts: Vec<u32> = if n == 0 {
            vec![]
        } else {
            SmithForm::new(&to_matrix(&rows))
                .cokernel_factors()
                .iter()
                .map(|d| self.exponent(d))
                .collect()
        };
        parts.sort_unstable_by(|x, y| y.cmp(x));
        parts
    }

    fn exponent(&self, d: &BigInt) -> u32 {
        let mut d: u64 = d.try_into().expect("bounded factor");
        let mut e = 0;
        while d > 1 {
            d /= self.p;
            e += 1;
        }
        e
    }

    /// Distinct `(A, B/H, B)` triples, computed from the subgroups `H` of
    /// each `B` that are images of maps out of `A`.
    pub fn cofiber_triples(&self) -> BTreeSet<(usize, usize, usize)> {
        let mut out = BTreeSet::new();
        for (bi, b) in self.objects.iter().enumerate() {
            let g = ElementaryGroup::new(self.p, b);
            for h in g.subgroups() {
                let sub = g.subgroup_type(h);
                let quo = self.index(&g.quotient_type(h)).expect("quotients stay in bound");
                for (ai, a) in self.objects.iter().enumerate() {
                    if contains_partition(a, &sub) {
                        out.insert((ai, quo, bi));
                    }
                }
            }
        }
        out
    }

    /// The same triples by running through every homomorphism.
    pub fn cofiber_triples_by_enumeration(&self) -> BTreeSet<(usize, usize, usize)> {
        let mut out = BTreeSet::new();
        for (ai, a) in self.objects.iter().enumerate() {
            for (bi, b) in self.objects.iter().enumerate() {
                for f in self.homs(a, b) {
                    let q = self.index(&self.cofiber(b, &f)).expect("quotients stay in bound");
                    out.insert((ai, q, bi));
                }
            }
        }
        out
    }
}

/// `λ(h) ⊆ λ(a)` part by part.
fn contains_partition(a: &[u32], h: &[u32]) -> bool {
    h.len() <= a.len() && h.iter().zip(a).all(|(x, y)| x <= y)
}

/// `⊕ Z/p^{b_j}` with at most 64 elements, subsets as bitmasks.
struct ElementaryGroup {
    p: u64,
    moduli: Vec<u64>,
    size: usize,
}

impl ElementaryGroup {
    fn new(p: u64, b: &[u32]) -> Self {
        let moduli: Vec<u64> = b.iter().map(|&e| p.pow(e)).collect();
        let size = moduli.iter().product::<u64>() as usize;
        ElementaryGroup { p, moduli, size }
    }

    fn digits(&self, mut x: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let d = x as u64 % m;
                x /= m as usize;
                d
            })
            .collect()
    }

    fn index(&self, d: &[u64]) -> usize {
        d.iter()
            .zip(&self.moduli)
            .rev()
            .fold(0, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (dx, dy) = (self.digits(x), self.digits(y));
        let d: Vec<u64> = dx
            .iter()
            .zip(&dy)
            .zip(&self.moduli)
            .map(|((a, b), m)| (a + b) % m)
            .collect();
        self.index(&d)
    }

    fn scale(&self, k: u64, x: usize) -> usize {
        let d: Vec<u64> = self
            .digits(x)
            .iter()
            .zip(&self.moduli)
            .map(|(a, m)| (a * k) % m)
            .collect();
        self.index(&d)
    }

    fn members(&self, h: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&x| h >> x & 1 == 1)
    }

    fn join(&self, h: u64, g: usize) -> u64 {
        let mut out = h;
        let mut multiple = g;
        while multiple != 0 {
            for x in self.members(h) {
                out |= 1 << self.add(x, multiple);
            }
            multiple = self.add(multiple, g);
        }
        out
    }

    fn subgroups(&self) -> Vec<u64> {
        let mut seen = HashSet::from([1u64]);
        let mut stack = vec![1u64];
        while let Some(h) = stack.pop() {
            for g in 0..self.size {
                if h >> g & 1 == 0 {
                    let k = self.join(h, g);
                    if seen.insert(k) {
                        stack.push(k);
                    }
                }
            }
        }
        let mut out: Vec<u64> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Partition from the counts `n_k = |{x : p^k x ∈ h}|`, `k = 0, 1, ...`:
    /// `n_k / n_{k-1} = p^{#parts ≥ k}`.
    fn type_from_counts(&self, counts: &[u64]) -> Partition {
        let conj: Vec<u32> = counts.windows(2).map(|w| (w[1] / w[0]).ilog(self.p)).collect();
        let parts = conj.first().copied().unwrap_or(0);
        (1..=parts)
            .map(|i| conj.iter().filter(|&&c| c >= i).count() as u32)
            .collect()
    }

    fn counts(&self, h: u64, domain: impl Fn(usize) -> bool) -> Vec<u64> {
        let max = self.moduli.iter().copied().max().unwrap_or(1);
        let mut out = Vec::new();
        let mut pk = 1u64;
        loop {
            out.push(
                (0..self.size)
                    .filter(|&x| domain(x) && h >> self.scale(pk, x) & 1 == 1)
                    .count() as u64,
            );
            if pk >= max {
                break;
            }
            pk *= self.p;
        }
        out
    }

    fn subgroup_type(&self, h: u64) -> Partition {
        let zero = 1u64;
        self.type_from_counts(&self.counts(zero, |x| h >> x & 1 == 1))
    }

    fn quotient_type(&self, h: u64) -> Partition {
        let order = h.count_ones() as u64;
        let c: Vec<u64> = self.counts(h, |_| true).iter().map(|n| n / order).collect();
        self.type_from_counts(&c)
    }
}

impl WaldhausenData for TruncatedAbelian {
    fn generator_labels(&self) -> Vec<String> {
        self.objects.iter().map(|o| self.label(o)).collect()
    }

    fn zero_generator(&self) -> usize {
        0
    }

    fn relations(&self) -> (Vec<RelationTag>, usize) {
        let mut out: Vec<RelationTag> = self
            .cofiber_triples()
            .into_iter()
            .map(|(source, cofiber, target)| RelationTag::CofiberSequence {
                source,
                cofiber,
                target,
            })
            .collect();
        let n = self.objects.len();
        // isomorphisms only join an object to itself
        for a in 0..n {
            for b in 0..n {
                if a == b || self.we == WeakEquivalences::All {
                    out.push(RelationTag::WeakEquivalence { source: a, target: b });
                }
            }
        }
        let morphisms = self
            .objects
            .iter()
            .flat_map(|a| self.objects.iter().map(move |b| self.hom_count(a, b)))
            .sum::<u128>();
        (out, usize::try_from(morphisms).unwrap_or(usize::MAX))
    }
}
