//! Lifting properties, strong monomorphisms and factorization systems.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::fincat::{limit_search, CategoryError, FinCat, MorId, ObjId, Shape};

/// A set of morphisms of some category.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MorphismClass(BTreeSet<MorId>);

impl MorphismClass {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn all(c: &FinCat) -> Self {
        c.morphisms().collect()
    }

    pub fn isomorphisms(c: &FinCat) -> Self {
        c.morphisms().filter(|&f| c.is_iso(f)).collect()
    }

    pub fn epimorphisms(c: &FinCat) -> Self {
        c.morphisms().filter(|&f| c.is_epi(f)).collect()
    }

    pub fn from_names<S: AsRef<str>>(c: &FinCat, names: &[S]) -> Result<Self, CategoryError> {
        names
            .iter()
            .map(|n| {
                c.mor_by_name(n.as_ref())
                    .ok_or_else(|| CategoryError::UnknownMorphism(n.as_ref().to_string()))
            })
            .collect()
    }

    /// Member ids, sorted.
    pub fn names(&self, c: &FinCat) -> Vec<String> {
        self.0.iter().map(|&f| c.mor_name(f).to_string()).collect()
    }

    pub fn contains(&self, f: MorId) -> bool {
        self.0.contains(&f)
    }

    pub fn insert(&mut self, f: MorId) -> bool {
        self.0.insert(f)
    }

    pub fn remove(&mut self, f: MorId) -> bool {
        self.0.remove(&f)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = MorId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &MorphismClass) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection(&self, other: &MorphismClass) -> MorphismClass {
        MorphismClass(self.0.intersection(&other.0).copied().collect())
    }

    /// Least morphism in exactly one of the two classes.
    pub fn first_difference(&self, other: &MorphismClass) -> Option<MorId> {
        self.0.symmetric_difference(&other.0).min().copied()
    }
}

impl FromIterator<MorId> for MorphismClass {
    fn from_iter<I: IntoIterator<Item = MorId>>(iter: I) -> Self {
        MorphismClass(iter.into_iter().collect())
    }
}

/// A square
///
/// ```text
///   V --top--> X
///   |          |
/// left       right
///   v          v
///   W -bottom> Y
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Square {
    pub left: MorId,
    pub right: MorId,
    pub top: MorId,
    pub bottom: MorId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("square does not type-check")]
    Malformed,
    #[error("square does not commute")]
    NotCommuting,
}

/// All diagonals `W → X` making both triangles commute.
pub fn has_lift(c: &FinCat, sq: Square) -> Result<Vec<MorId>, LiftError> {
    let typed = c.src(sq.top) == c.src(sq.left)
        && c.dst(sq.top) == c.src(sq.right)
        && c.src(sq.bottom) == c.dst(sq.left)
        && c.dst(sq.bottom) == c.dst(sq.right);
    if !typed {
        return Err(LiftError::Malformed);
    }
    if c.compose(sq.right, sq.top) != c.compose(sq.bottom, sq.left) {
        return Err(LiftError::NotCommuting);
    }
    Ok(fillers(c, sq))
}

fn fillers(c: &FinCat, sq: Square) -> Vec<MorId> {
    c.hom(c.dst(sq.left), c.src(sq.right))
        .iter()
        .copied()
        .filter(|&d| c.compose(d, sq.left) == sq.top && c.compose(sq.right, d) == sq.bottom)
        .collect()
}

/// The least commuting square with `left = g`, `right = f` that has no
/// filler, or `None` when `g` lifts against `f`.
pub fn lifting_obstruction(c: &FinCat, g: MorId, f: MorId) -> Option<Square> {
    let (v, w) = (c.src(g), c.dst(g));
    let (x, y) = (c.src(f), c.dst(f));
    let tops = c.hom(v, x);
    let bottoms = c.hom(w, y);
    if tops.is_empty() || bottoms.is_empty() {
        return None;
    }
    let diagonal_free = c.hom(w, x).is_empty();
    for &top in tops {
        let ft = c.compose(f, top);
        for &bottom in bottoms {
            if ft != c.compose(bottom, g) {
                continue;
            }
            let sq = Square {
                left: g,
                right: f,
                top,
                bottom,
            };
            if diagonal_free || fillers(c, sq).is_empty() {
                return Some(sq);
            }
        }
    }
    None
}

pub fn lifts_against(c: &FinCat, g: MorId, f: MorId) -> bool {
    lifting_obstruction(c, g, f).is_none()
}

/// Morphisms with the right lifting property against every member of `e`.
pub fn rlp_class(c: &FinCat, e: &MorphismClass) -> MorphismClass {
    c.morphisms()
        .filter(|&f| e.iter().all(|g| lifts_against(c, g, f)))
        .collect()
}

/// Morphisms with the left lifting property against every member of `m`.
pub fn llp_class(c: &FinCat, m: &MorphismClass) -> MorphismClass {
    c.morphisms()
        .filter(|&g| m.iter().all(|f| lifts_against(c, g, f)))
        .collect()
}

/// Morphisms lifting against all epimorphisms.
pub fn strong_monos(c: &FinCat) -> MorphismClass {
    rlp_class(c, &MorphismClass::epimorphisms(c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellCompleteness {
    pub well_complete: bool,
    /// First missing generating limit (terminal, binary product, equalizer).
    pub missing_limit: Option<Shape>,
    /// Target whose family of strong monos had no iterated pullback.
    pub missing_intersection: Option<ObjId>,
    pub intersections_checked: usize,
    pub reduction: &'static str,
}

const WELL_COMPLETE_REDUCTION: &str = "families of strong monomorphisms into a fixed object are finite, \
so their intersections are iterated binary pullbacks and exist once finite limits do";

/// Finite limits plus intersections of strong monomorphisms into each
/// object, formed as iterated pullbacks in canonical order.
pub fn is_finitely_well_complete(c: &FinCat) -> WellCompleteness {
    let mut report = WellCompleteness {
        well_complete: false,
        missing_limit: None,
        missing_intersection: None,
        intersections_checked: 0,
        reduction: WELL_COMPLETE_REDUCTION,
    };
    let mut shapes = vec![Shape::Terminal];
    for a in c.objects() {
        for b in c.objects().filter(|&b| b >= a) {
            shapes.push(Shape::Product(a, b));
        }
    }
    for f in c.morphisms() {
        for &g in c.hom(c.src(f), c.dst(f)).iter().filter(|&&g| g >= f) {
            shapes.push(Shape::Equalizer(f, g));
        }
    }
    if let Some(s) = shapes
        .into_iter()
        .find(|&s| limit_search(c, s).expect("well-formed").is_none())
    {
        report.missing_limit = Some(s);
        return report;
    }
    let strong = strong_monos(c);
    for y in c.objects() {
        let family: Vec<MorId> = strong.iter().filter(|&m| c.dst(m) == y).collect();
        let Some((&first, rest)) = family.split_first() else {
            continue;
        };
        let mut meet = first;
        for &m in rest {
            match limit_search(c, Shape::Pullback(meet, m)).expect("cospan") {
                Some(p) => meet = c.compose(meet, p.legs[0]),
                None => {
                    report.missing_intersection = Some(y);
                    return report;
                }
            }
        }
        report.intersections_checked += 1;
    }
    report.well_complete = true;
    report
}

/// A pair of classes with a chosen `E`-then-`M` factorization of every
/// morphism: `factor[f] = (e, m)` with `m ∘ e = f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationSystem {
    pub e: MorphismClass,
    pub m: MorphismClass,
    pub factor: BTreeMap<MorId, (MorId, MorId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizationError {
    #[error("no factorization given for morphism {0}")]
    NotTotal(MorId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FactorizationFailure {
    /// The stored pair does not compose to `f` or lies in the wrong classes.
    BadFactorization(MorId),
    /// First morphism in exactly one of `rlp(E)` and `M`.
    RightClass(MorId),
    /// First morphism in exactly one of `llp(M)` and `E`.
    LeftClass(MorId),
}

pub fn verify_factorization_system(
    c: &FinCat,
    fs: &FactorizationSystem,
) -> Result<Option<FactorizationFailure>, FactorizationError> {
    for f in c.morphisms() {
        let &(e, m) = fs.factor.get(&f).ok_or(FactorizationError::NotTotal(f))?;
        let ok = c.try_compose(m, e) == Some(f) && fs.e.contains(e) && fs.m.contains(m);
        if !ok {
            return Ok(Some(FactorizationFailure::BadFactorization(f)));
        }
    }
    if let Some(f) = rlp_class(c, &fs.e).first_difference(&fs.m) {
        return Ok(Some(FactorizationFailure::RightClass(f)));
    }
    if let Some(f) = llp_class(c, &fs.m).first_difference(&fs.e) {
        return Ok(Some(FactorizationFailure::LeftClass(f)));
    }
    Ok(None)
}

/// Every `(e, m)` with `e ∈ E`, `m ∈ M`, `m ∘ e = f`, in canonical order.
pub fn factorizations(c: &FinCat, e: &MorphismClass, m: &MorphismClass, f: MorId) -> Vec<(MorId, MorId)> {
    let (x, y) = (c.src(f), c.dst(f));
    let mut out = Vec::new();
    for z in c.objects() {
        for &ef in c.hom(x, z).iter().filter(|&&ef| e.contains(ef)) {
            for &mf in c.hom(z, y).iter().filter(|&&mf| m.contains(mf)) {
                if c.compose(mf, ef) == f {
                    out.push((ef, mf));
                }
            }
        }
    }
    out
}

/// Checks that any two factorizations of `f` are related by exactly one
/// isomorphism of middle objects compatible with both triangles.
pub fn factorizations_unique_up_to_iso(c: &FinCat, e: &MorphismClass, m: &MorphismClass, f: MorId) -> bool {
    let all = factorizations(c, e, m, f);
    all.iter().all(|&(e1, m1)| {
        all.iter().all(|&(e2, m2)| {
            let comparisons = c
                .hom(c.dst(e1), c.dst(e2))
                .iter()
                .filter(|&&u| c.is_iso(u) && c.compose(u, e1) == e2 && c.compose(m2, u) == m1)
                .count();
            comparisons == 1
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iso_on_the_left_always_lifts() {
        let c = FinCat::chain(3);
        let id0 = c.id(ObjId(0));
        let a = c.mor_by_name("0->2").unwrap();
        let sq = Square {
            left: id0,
            right: a,
            top: id0,
            bottom: a,
        };
        assert_eq!(has_lift(&c, sq).unwrap(), vec![id0]);
    }

    #[test]
    fn chain_lifts() {
        let c = FinCat::chain(3);
        let g = c.mor_by_name("0->1").unwrap();
        let id2 = c.id(ObjId(2));
        let sq = Square {
            left: g,
            right: id2,
            top: c.mor_by_name("0->2").unwrap(),
            bottom: c.mor_by_name("1->2").unwrap(),
        };
        assert_eq!(has_lift(&c, sq).unwrap(), vec![c.mor_by_name("1->2").unwrap()]);

        // right = id_0: the only square has bottom 1 → 0, which does not exist
        let id0 = c.id(ObjId(0));
        assert!(c.hom(ObjId(1), ObjId(0)).is_empty());
        assert_eq!(lifting_obstruction(&c, g, id0), None);
    }

    #[test]
    fn malformed_square_is_rejected() {
        let c = FinCat::chain(2);
        let a = c.mor_by_name("0->1").unwrap();
        let sq = Square {
            left: a,
            right: c.id(ObjId(1)),
            top: a,
            bottom: a,
        };
        assert_eq!(has_lift(&c, sq), Err(LiftError::Malformed));
    }

    #[test]
    fn parallel_pair_square_does_not_commute() {
        use crate::fincat::{RawCategory, RawMorphism};
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
        let (x, y) = (c.obj_by_name("X").unwrap(), c.obj_by_name("Y").unwrap());
        let sq = Square {
            left: c.id(x),
            right: c.id(y),
            top: c.mor_by_name("a").unwrap(),
            bottom: c.mor_by_name("b").unwrap(),
        };
        assert_eq!(has_lift(&c, sq), Err(LiftError::NotCommuting));
    }

    #[test]
    fn rlp_of_everything_is_isos() {
        let c = FinCat::chain(3);
        let all = MorphismClass::all(&c);
        let isos = MorphismClass::isomorphisms(&c);
        assert_eq!(rlp_class(&c, &all), isos);
        assert_eq!(llp_class(&c, &all), isos);
        assert_eq!(rlp_class(&c, &isos), all);
    }

    #[test]
    fn strong_monos_in_poset_are_identities() {
        let c = FinCat::chain(3);
        assert_eq!(strong_monos(&c), MorphismClass::isomorphisms(&c));
    }

    #[test]
    fn trivial_factorization_systems() {
        let c = FinCat::chain(2);
        let isos = MorphismClass::isomorphisms(&c);
        let all = MorphismClass::all(&c);
        let fs = FactorizationSystem {
            e: isos.clone(),
            m: all.clone(),
            factor: c.morphisms().map(|f| (f, (c.id(c.src(f)), f))).collect(),
        };
        assert_eq!(verify_factorization_system(&c, &fs).unwrap(), None);
        let fs = FactorizationSystem {
            e: all.clone(),
            m: isos,
            factor: c.morphisms().map(|f| (f, (f, c.id(c.dst(f))))).collect(),
        };
        assert_eq!(verify_factorization_system(&c, &fs).unwrap(), None);

        let fs = FactorizationSystem {
            e: all.clone(),
            m: all,
            factor: c.morphisms().map(|f| (f, (f, c.id(c.dst(f))))).collect(),
        };
        let a = c.mor_by_name("0->1").unwrap();
        assert_eq!(
            verify_factorization_system(&c, &fs).unwrap(),
            Some(FactorizationFailure::RightClass(a))
        );
    }

    #[test]
    fn partial_factor_map_is_an_error() {
        let c = FinCat::chain(2);
        let fs = FactorizationSystem {
            e: MorphismClass::all(&c),
            m: MorphismClass::all(&c),
            factor: BTreeMap::new(),
        };
        assert!(verify_factorization_system(&c, &fs).is_err());
    }

    #[test]
    fn well_completeness() {
        assert!(is_finitely_well_complete(&FinCat::chain(3)).well_complete);
        let d = is_finitely_well_complete(&FinCat::discrete(&["x", "y"]));
        assert!(!d.well_complete);
        assert_eq!(d.missing_limit, Some(Shape::Terminal));
    }
}
