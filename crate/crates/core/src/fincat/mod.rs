//! Finite categories given by an explicit, total composition table.
//!
//! Objects and morphisms carry opaque string ids. On construction both are
//! sorted lexicographically, so the dense indices [`ObjId`] and [`MorId`]
//! follow the canonical order and "least id" always means "least index".

mod functor;
mod limits;

pub use functor::{Functor, FunctorViolation, NatTrans, NaturalityViolation};
pub use limits::{is_finitely_bicomplete, limit_search, Bicompleteness, Limit, Shape, ShapeError};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Prefix of the reserved ids given to generated identity morphisms.
pub const IDENTITY_PREFIX: &str = "id_";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorId(pub usize);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The on-disk form of a category. Identities (and composites involving
/// them) may be omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<RawMorphism>,
    #[serde(default)]
    pub compose: Vec<RawComposite>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// One entry `g ∘ f = gf` of the composition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComposite {
    pub g: String,
    pub f: String,
    pub gf: String,
}

/// Structural problems that prevent a composition table from being built.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism id `{0}`")]
    DuplicateMorphism(String),
    #[error("morphism `{morphism}` refers to unknown object `{object}`")]
    UnknownObject { morphism: String, object: String },
    #[error("unknown morphism id `{0}`")]
    UnknownMorphism(String),
    #[error("unknown object id `{0}`")]
    UnknownObjectId(String),
    #[error("reserved id `{0}` is not an endomorphism of the object it names")]
    ReservedIdentity(String),
    #[error("composite `{g} ∘ {f}` listed for a non-composable pair")]
    NotComposable { g: String, f: String },
    #[error("composite `{g} ∘ {f}` listed twice with different values")]
    ConflictingComposite { g: String, f: String },
    #[error("composition table is partial; missing {}", format_pairs(.0))]
    MissingComposites(Vec<(String, String)>),
    #[error("{0}")]
    Law(LawViolation),
}

fn format_pairs(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(g, f)| format!("{g} ∘ {f}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// The first category law that fails, with the witnessing morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum LawViolation {
    #[error("composite {g} ∘ {f} = {gf} has the wrong source or target")]
    Typing { g: String, f: String, gf: String },
    #[error("identity law fails for {f}")]
    Identity { f: String },
    #[error("associativity fails for ({h} ∘ {g}) ∘ {f}")]
    Associativity { h: String, g: String, f: String },
}

/// Outcome of [`validate_category`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Validation {
    Pass,
    Violation(LawViolation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Morphism {
    name: String,
    src: ObjId,
    dst: ObjId,
}

/// A validated finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    // row-major over (g, f); `None` exactly when dst(f) != src(g)
    compose: Vec<Option<MorId>>,
    // row-major over (src, dst)
    hom: Vec<Vec<MorId>>,
}

/// Checks a candidate category. Structural problems are errors; law
/// failures are reported as a [`Validation::Violation`].
pub fn validate_category(raw: &RawCategory) -> Result<Validation, CategoryError> {
    let cat = build_table(raw)?;
    Ok(match cat.first_law_violation() {
        None => Validation::Pass,
        Some(v) => Validation::Violation(v),
    })
}

fn build_table(raw: &RawCategory) -> Result<FinCat, CategoryError> {
    let mut objects = raw.objects.clone();
    objects.sort();
    for w in objects.windows(2) {
        if w[0] == w[1] {
            return Err(CategoryError::DuplicateObject(w[0].clone()));
        }
    }
    let obj_index = |name: &str| objects.binary_search_by(|o| o.as_str().cmp(name)).ok();

    let mut entries: BTreeMap<String, (ObjId, ObjId)> = BTreeMap::new();
    for m in &raw.morphisms {
        let lookup = |o: &str| {
            obj_index(o).map(ObjId).ok_or_else(|| CategoryError::UnknownObject {
                morphism: m.id.clone(),
                object: o.to_string(),
            })
        };
        let (src, dst) = (lookup(&m.src)?, lookup(&m.dst)?);
        if let Some(obj) = m.id.strip_prefix(IDENTITY_PREFIX) {
            if obj != m.src || obj != m.dst {
                return Err(CategoryError::ReservedIdentity(m.id.clone()));
            }
        }
        if entries.insert(m.id.clone(), (src, dst)).is_some() {
            return Err(CategoryError::DuplicateMorphism(m.id.clone()));
        }
    }
    for (i, o) in objects.iter().enumerate() {
        entries
            .entry(format!("{IDENTITY_PREFIX}{o}"))
            .or_insert((ObjId(i), ObjId(i)));
    }

    let morphisms: Vec<Morphism> = entries
        .into_iter()
        .map(|(name, (src, dst))| Morphism { name, src, dst })
        .collect();
    let mor_index = |name: &str| {
        morphisms
            .binary_search_by(|m| m.name.as_str().cmp(name))
            .map(MorId)
            .map_err(|_| CategoryError::UnknownMorphism(name.to_string()))
    };
    let identity: Vec<MorId> = objects
        .iter()
        .map(|o| mor_index(&format!("{IDENTITY_PREFIX}{o}")))
        .collect::<Result<_, _>>()?;

    let n = morphisms.len();
    let mut compose: Vec<Option<MorId>> = vec![None; n * n];
    for c in &raw.compose {
        let (g, f, gf) = (mor_index(&c.g)?, mor_index(&c.f)?, mor_index(&c.gf)?);
        if morphisms[f.0].dst != morphisms[g.0].src {
            return Err(CategoryError::NotComposable {
                g: c.g.clone(),
                f: c.f.clone(),
            });
        }
        let slot = &mut compose[g.0 * n + f.0];
        match slot {
            Some(prev) if *prev != gf => {
                return Err(CategoryError::ConflictingComposite {
                    g: c.g.clone(),
                    f: c.f.clone(),
                })
            }
            _ => *slot = Some(gf),
        }
    }
    // composites with identities are implied when not listed
    for (i, m) in morphisms.iter().enumerate() {
        let id_dst = identity[m.dst.0];
        let id_src = identity[m.src.0];
        compose[id_dst.0 * n + i].get_or_insert(MorId(i));
        compose[i * n + id_src.0].get_or_insert(MorId(i));
    }
    let mut missing = Vec::new();
    for g in 0..n {
        for f in 0..n {
            if morphisms[f].dst == morphisms[g].src && compose[g * n + f].is_none() {
                missing.push((morphisms[g].name.clone(), morphisms[f].name.clone()));
            }
        }
    }
    if !missing.is_empty() {
        return Err(CategoryError::MissingComposites(missing));
    }

    let k = objects.len();
    let mut hom = vec![Vec::new(); k * k];
    for (i, m) in morphisms.iter().enumerate() {
        hom[m.src.0 * k + m.dst.0].push(MorId(i));
    }
    Ok(FinCat {
        objects,
        morphisms,
        identity,
        compose,
        hom,
    })
}

impl FinCat {
    /// Builds and validates a category; law violations become errors.
    pub fn from_raw(raw: &RawCategory) -> Result<Self, CategoryError> {
        let cat = build_table(raw)?;
        match cat.first_law_violation() {
            None => Ok(cat),
            Some(v) => Err(CategoryError::Law(v)),
        }
    }

    /// Inverse of [`FinCat::from_raw`], omitting identities and the
    /// composites they imply.
    pub fn to_raw(&self) -> RawCategory {
        let is_id = |f: MorId| self.identity[self.src(f).0] == f;
        let morphisms = self
            .morphisms()
            .filter(|&f| !is_id(f))
            .map(|f| RawMorphism {
                id: self.mor_name(f).to_string(),
                src: self.obj_name(self.src(f)).to_string(),
                dst: self.obj_name(self.dst(f)).to_string(),
            })
            .collect();
        let mut compose = Vec::new();
        for g in self.morphisms().filter(|&g| !is_id(g)) {
            for f in self.hom_into(self.src(g)).into_iter().filter(|&f| !is_id(f)) {
                compose.push(RawComposite {
                    g: self.mor_name(g).to_string(),
                    f: self.mor_name(f).to_string(),
                    gf: self.mor_name(self.compose(g, f)).to_string(),
                });
            }
        }
        RawCategory {
            objects: self.objects.clone(),
            morphisms,
            compose,
        }
    }

    /// The preorder on `names` with a morphism `x->y` whenever `leq(x, y)`.
    /// `leq` must be reflexive and transitive.
    pub fn preorder<S: AsRef<str>>(names: &[S], leq: impl Fn(usize, usize) -> bool) -> Result<Self, CategoryError> {
        let n = names.len();
        let name = |i: usize| names[i].as_ref().to_string();
        let arrow = |i: usize, j: usize| {
            if i == j {
                format!("{IDENTITY_PREFIX}{}", name(i))
            } else {
                format!("{}->{}", name(i), name(j))
            }
        };
        let mut raw = RawCategory {
            objects: (0..n).map(name).collect(),
            ..Default::default()
        };
        for i in 0..n {
            for j in 0..n {
                if i != j && leq(i, j) {
                    raw.morphisms.push(RawMorphism {
                        id: arrow(i, j),
                        src: name(i),
                        dst: name(j),
                    });
                }
            }
        }
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i && leq(i, j)) {
                for k in (0..n).filter(|&k| k != j && leq(j, k)) {
                    if !leq(i, k) {
                        return Err(CategoryError::MissingComposites(vec![(arrow(j, k), arrow(i, j))]));
                    }
                    raw.compose.push(RawComposite {
                        g: arrow(j, k),
                        f: arrow(i, j),
                        gf: arrow(i, k),
                    });
                }
            }
        }
        Self::from_raw(&raw)
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::preorder(&names, |i, j| i <= j).expect("chains are categories")
    }

    /// The category with the given objects and only identity morphisms.
    pub fn discrete<S: AsRef<str>>(names: &[S]) -> Self {
        Self::preorder(names, |i, j| i == j).expect("discrete categories are categories")
    }

    /// A one-object category. `elements[0]` is the unit and becomes the
    /// identity `id_<object>`; `mul(a, b)` is the index of `a · b`.
    pub fn monoid<S: AsRef<str>>(
        object: &str,
        elements: &[S],
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, CategoryError> {
        let id = format!("{IDENTITY_PREFIX}{object}");
        let name = |i: usize| {
            if i == 0 {
                id.clone()
            } else {
                elements[i].as_ref().to_string()
            }
        };
        let n = elements.len();
        let raw = RawCategory {
            objects: vec![object.to_string()],
            morphisms: (1..n)
                .map(|i| RawMorphism {
                    id: name(i),
                    src: object.to_string(),
                    dst: object.to_string(),
                })
                .collect(),
            compose: (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| RawComposite {
                    g: name(a),
                    f: name(b),
                    gf: name(mul(a, b)),
                })
                .collect(),
        };
        Self::from_raw(&raw)
    }

    fn first_law_violation(&self) -> Option<LawViolation> {
        let n = self.morphisms.len();
        let name = |f: MorId| self.morphisms[f.0].name.clone();
        for g in self.morphisms() {
            for f in self.hom_into(self.src(g)) {
                let gf = self.compose[g.0 * n + f.0].expect("table is total");
                if self.src(gf) != self.src(f) || self.dst(gf) != self.dst(g) {
                    return Some(LawViolation::Typing {
                        g: name(g),
                        f: name(f),
                        gf: name(gf),
                    });
                }
            }
        }
        for f in self.morphisms() {
            if self.compose(self.id(self.dst(f)), f) != f || self.compose(f, self.id(self.src(f))) != f {
                return Some(LawViolation::Identity { f: name(f) });
            }
        }
        for h in self.morphisms() {
            for g in self.hom_into(self.src(h)) {
                let hg = self.compose(h, g);
                for f in self.hom_into(self.src(g)) {
                    if self.compose(hg, f) != self.compose(h, self.compose(g, f)) {
                        return Some(LawViolation::Associativity {
                            h: name(h),
                            g: name(g),
                            f: name(f),
                        });
                    }
                }
            }
        }
        None
    }

    pub fn obj_count(&self) -> usize {
        self.objects.len()
    }

    pub fn mor_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn obj_name(&self, x: ObjId) -> &str {
        &self.objects[x.0]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn obj_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.binary_search_by(|o| o.as_str().cmp(name)).ok().map(ObjId)
    }

    pub fn mor_by_name(&self, name: &str) -> Option<MorId> {
        self.morphisms
            .binary_search_by(|m| m.name.as_str().cmp(name))
            .ok()
            .map(MorId)
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].src
    }

    pub fn dst(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].dst
    }

    pub fn id(&self, x: ObjId) -> MorId {
        self.identity[x.0]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.src(f).0] == f
    }

    /// `g ∘ f`, or `None` when `dst(f) != src(g)`.
    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose[g.0 * self.morphisms.len() + f.0]
    }

    /// `g ∘ f`. Panics on a non-composable pair.
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("{} ∘ {} is not composable", self.mor_name(g), self.mor_name(f)))
    }

    /// Morphisms `x → y` in canonical order.
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.hom[x.0 * self.objects.len() + y.0]
    }

    /// Morphisms with target `y`, in canonical order.
    pub fn hom_into(&self, y: ObjId) -> Vec<MorId> {
        self.morphisms().filter(|&f| self.dst(f) == y).collect()
    }

    /// Morphisms with source `x`, in canonical order.
    pub fn hom_from(&self, x: ObjId) -> Vec<MorId> {
        self.morphisms().filter(|&f| self.src(f) == x).collect()
    }

    /// Least two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        self.hom(self.dst(f), self.src(f))
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.id(self.src(f)) && self.compose(f, g) == self.id(self.dst(f)))
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Left-cancellable: `f ∘ a = f ∘ b` forces `a = b`.
    pub fn is_mono(&self, f: MorId) -> bool {
        let x = self.src(f);
        self.objects().all(|w| {
            let hs = self.hom(w, x);
            hs.iter()
                .enumerate()
                .all(|(i, &a)| hs[i + 1..].iter().all(|&b| self.compose(f, a) != self.compose(f, b)))
        })
    }

    /// Right-cancellable: `a ∘ f = b ∘ f` forces `a = b`.
    pub fn is_epi(&self, f: MorId) -> bool {
        let y = self.dst(f);
        self.objects().all(|z| {
            let hs = self.hom(y, z);
            hs.iter()
                .enumerate()
                .all(|(i, &a)| hs[i + 1..].iter().all(|&b| self.compose(a, f) != self.compose(b, f)))
        })
    }

    pub fn morphism_predicates(&self, f: MorId) -> MorphismPredicates {
        MorphismPredicates {
            is_iso: self.is_iso(f),
            is_mono: self.is_mono(f),
            is_epi: self.is_epi(f),
        }
    }

    /// At most one morphism between any two objects.
    pub fn is_thin(&self) -> bool {
        self.hom.iter().all(|h| h.len() <= 1)
    }

    /// Same ids, sources and targets swapped, composition transposed.
    pub fn opposite(&self) -> FinCat {
        let n = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                name: m.name.clone(),
                src: m.dst,
                dst: m.src,
            })
            .collect();
        let mut compose = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                compose[g * n + f] = self.compose[f * n + g];
            }
        }
        let k = self.objects.len();
        let mut hom = vec![Vec::new(); k * k];
        for x in 0..k {
            for y in 0..k {
                hom[x * k + y] = self.hom[y * k + x].clone();
            }
        }
        FinCat {
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            compose,
            hom,
        }
    }

    /// The full subcategory on `members`, keeping the parent's names.
    pub fn full_subcategory(&self, members: &BTreeSet<ObjId>) -> FinCat {
        let keep: Vec<MorId> = self
            .morphisms()
            .filter(|&f| members.contains(&self.src(f)) && members.contains(&self.dst(f)))
            .collect();
        let raw = RawCategory {
            objects: members.iter().map(|&x| self.obj_name(x).to_string()).collect(),
            morphisms: keep
                .iter()
                .map(|&f| RawMorphism {
                    id: self.mor_name(f).to_string(),
                    src: self.obj_name(self.src(f)).to_string(),
                    dst: self.obj_name(self.dst(f)).to_string(),
                })
                .collect(),
            compose: keep
                .iter()
                .flat_map(|&g| keep.iter().map(move |&f| (g, f)))
                .filter_map(|(g, f)| {
                    self.try_compose(g, f).map(|gf| RawComposite {
                        g: self.mor_name(g).to_string(),
                        f: self.mor_name(f).to_string(),
                        gf: self.mor_name(gf).to_string(),
                    })
                })
                .collect(),
        };
        FinCat::from_raw(&raw).expect("full subcategories inherit the category laws")
    }

    /// Objects isomorphic to `x`, in canonical order (including `x`).
    pub fn iso_class(&self, x: ObjId) -> Vec<ObjId> {
        self.objects()
            .filter(|&y| self.hom(x, y).iter().any(|&f| self.is_iso(f)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismPredicates {
    pub is_iso: bool,
    pub is_mono: bool,
    pub is_epi: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw_chain2() -> RawCategory {
        RawCategory {
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![RawMorphism {
                id: "a".into(),
                src: "0".into(),
                dst: "1".into(),
            }],
            compose: vec![],
        }
    }

    #[test]
    fn terminal_category_validates() {
        let raw = RawCategory {
            objects: vec!["*".into()],
            ..Default::default()
        };
        assert_eq!(validate_category(&raw).unwrap(), Validation::Pass);
        let c = FinCat::from_raw(&raw).unwrap();
        assert_eq!(c.mor_count(), 1);
        assert_eq!(c.mor_name(MorId(0)), "id_*");
    }

    #[test]
    fn chain3_has_six_morphisms() {
        let c = FinCat::chain(3);
        assert_eq!(c.mor_count(), 6);
        assert_eq!(validate_category(&c.to_raw()).unwrap(), Validation::Pass);
    }

    #[test]
    fn mistyped_composite_is_a_typing_violation() {
        let mut raw = FinCat::chain(3).to_raw();
        for c in &mut raw.compose {
            if c.g == "1->2" && c.f == "0->1" {
                c.gf = "id_0".into();
            }
        }
        match validate_category(&raw).unwrap() {
            Validation::Violation(LawViolation::Typing { g, f, gf }) => {
                assert_eq!((g.as_str(), f.as_str(), gf.as_str()), ("1->2", "0->1", "id_0"));
            }
            other => panic!("expected typing violation, got {other:?}"),
        }
    }

    #[test]
    fn partial_table_lists_missing_pairs() {
        let mut raw = FinCat::chain(3).to_raw();
        raw.compose.clear();
        match validate_category(&raw) {
            Err(CategoryError::MissingComposites(m)) => {
                assert_eq!(m, vec![("1->2".to_string(), "0->1".to_string())]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        let mut raw = raw_chain2();
        raw.morphisms[0].dst = "9".into();
        assert!(matches!(
            validate_category(&raw),
            Err(CategoryError::UnknownObject { .. })
        ));

        let mut raw = raw_chain2();
        raw.objects.push("0".into());
        assert!(matches!(
            validate_category(&raw),
            Err(CategoryError::DuplicateObject(_))
        ));

        let mut raw = raw_chain2();
        raw.compose.push(RawComposite {
            g: "a".into(),
            f: "a".into(),
            gf: "a".into(),
        });
        assert!(matches!(
            validate_category(&raw),
            Err(CategoryError::NotComposable { .. })
        ));

        let mut raw = raw_chain2();
        raw.morphisms.push(RawMorphism {
            id: "id_0".into(),
            src: "0".into(),
            dst: "1".into(),
        });
        assert!(matches!(
            validate_category(&raw),
            Err(CategoryError::ReservedIdentity(_))
        ));
    }

    #[test]
    fn explicit_identity_is_accepted() {
        let mut raw = raw_chain2();
        raw.morphisms.push(RawMorphism {
            id: "id_1".into(),
            src: "1".into(),
            dst: "1".into(),
        });
        let c = FinCat::from_raw(&raw).unwrap();
        assert_eq!(c.mor_count(), 3);
    }

    #[test]
    fn predicates_in_a_poset() {
        let c = FinCat::chain(3);
        let id = c.id(ObjId(1));
        assert_eq!(
            c.morphism_predicates(id),
            MorphismPredicates {
                is_iso: true,
                is_mono: true,
                is_epi: true
            }
        );
        let a = c.mor_by_name("0->1").unwrap();
        assert_eq!(
            c.morphism_predicates(a),
            MorphismPredicates {
                is_iso: false,
                is_mono: true,
                is_epi: true
            }
        );
    }

    #[test]
    fn free_parallel_pair_is_not_epi() {
        let raw = RawCategory {
            objects: vec!["X".into(), "Y".into()],
            morphisms: vec![
                RawMorphism {
                    id: "a".into(),
                    src: "X".into(),
                    dst: "Y".into(),
                },
                RawMorphism {
                    id: "b".into(),
                    src: "X".into(),
                    dst: "Y".into(),
                },
            ],
            compose: vec![],
        };
        let c = FinCat::from_raw(&raw).unwrap();
        assert_eq!(c.mor_count(), 4);
        let a = c.mor_by_name("a").unwrap();
        // no h: Y → Z distinguishes anything, and nothing composes into X either
        let p = c.morphism_predicates(a);
        assert!(!p.is_iso);
        assert!(p.is_mono && p.is_epi);
    }

    #[test]
    fn monoid_opposite_reverses_multiplication() {
        // {1, l, r} with left-zero multiplication on {l, r}: x · y = x
        let names = ["1", "l", "r"];
        let c = FinCat::monoid("*", &names, |a, b| if a == 0 { b } else { a }).unwrap();
        let op = c.opposite();
        let l = c.mor_by_name("l").unwrap();
        let r = c.mor_by_name("r").unwrap();
        assert_eq!(c.compose(l, r), l);
        assert_eq!(op.compose(l, r), r);
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn opposite_of_chain_reverses_order() {
        let c = FinCat::chain(3);
        let op = c.opposite();
        let a = op.mor_by_name("0->1").unwrap();
        assert_eq!(op.src(a), ObjId(1));
        assert_eq!(op.dst(a), ObjId(0));
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn full_subcategory_keeps_ids() {
        let c = FinCat::chain(3);
        let sub = c.full_subcategory(&[ObjId(1), ObjId(2)].into_iter().collect());
        assert_eq!(sub.obj_count(), 2);
        assert_eq!(sub.mor_count(), 3);
        assert!(sub.mor_by_name("1->2").is_some());
    }
}
