//! Replete reflective and coreflective subcategories.
//!
//! A reflection is found by searching, for each object `X`, for a universal
//! arrow `η_X: X → a` into the subcategory. Among the (uniquely isomorphic)
//! universal arrows the one with the least target and then the least
//! morphism id is chosen, and the reflector's action on morphisms is read
//! off from the unique factorizations.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::fincat::{
    limit_search, CategoryError, FinCat, Functor, FunctorViolation, MorId, NatTrans, NaturalityViolation, ObjId, Shape,
};
use crate::lifting::{factorizations, is_finitely_well_complete, rlp_class, FactorizationSystem, MorphismClass};

/// A full subcategory, given by its objects.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FullSubcat {
    pub members: BTreeSet<ObjId>,
}

impl FullSubcat {
    pub fn new(members: impl IntoIterator<Item = ObjId>) -> Self {
        FullSubcat {
            members: members.into_iter().collect(),
        }
    }

    pub fn all(c: &FinCat) -> Self {
        Self::new(c.objects())
    }

    pub fn from_names<S: AsRef<str>>(c: &FinCat, names: &[S]) -> Result<Self, CategoryError> {
        names
            .iter()
            .map(|n| {
                c.obj_by_name(n.as_ref())
                    .ok_or_else(|| CategoryError::UnknownObjectId(n.as_ref().to_string()))
            })
            .collect::<Result<BTreeSet<_>, _>>()
            .map(|members| FullSubcat { members })
    }

    pub fn names(&self, c: &FinCat) -> Vec<String> {
        self.members.iter().map(|&x| c.obj_name(x).to_string()).collect()
    }

    pub fn contains(&self, x: ObjId) -> bool {
        self.members.contains(&x)
    }

    pub fn is_subset(&self, other: &FullSubcat) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// Closed under isomorphism in `c`.
pub fn is_replete(c: &FinCat, a: &FullSubcat) -> bool {
    a.members.iter().all(|&x| c.iso_class(x).iter().all(|y| a.contains(*y)))
}

/// A reflection onto a full subcategory: an endofunctor `F` landing in the
/// subcategory and the unit `η: id ⇒ F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reflector {
    pub subcat: FullSubcat,
    pub functor: Functor,
    pub unit: NatTrans,
}

/// Dual of [`Reflector`]: `G` lands in the subcategory, `ε: G ⇒ id`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coreflector {
    pub subcat: FullSubcat,
    pub functor: Functor,
    pub counit: NatTrans,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("object {witness} has no universal arrow into the subcategory")]
pub struct NotReflective {
    pub witness: ObjId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum ReflectorViolation {
    #[error(transparent)]
    Functor(#[from] FunctorViolation),
    #[error(transparent)]
    Unit(#[from] NaturalityViolation),
    #[error("object {0} is sent outside the subcategory")]
    Image(ObjId),
    #[error("unit at {0} is not universal")]
    NotUniversal(ObjId),
    #[error("unit at member {0} is not an isomorphism")]
    MemberUnit(ObjId),
}

fn is_universal_arrow(c: &FinCat, a: &FullSubcat, u: MorId) -> bool {
    let (x, fx) = (c.src(u), c.dst(u));
    a.members.iter().all(|&b| {
        c.hom(x, b)
            .iter()
            .all(|&h| c.hom(fx, b).iter().filter(|&&k| c.compose(k, u) == h).count() == 1)
    })
}

fn is_couniversal_arrow(c: &FinCat, a: &FullSubcat, u: MorId) -> bool {
    let (gx, x) = (c.src(u), c.dst(u));
    a.members.iter().all(|&b| {
        c.hom(b, x)
            .iter()
            .all(|&h| c.hom(b, gx).iter().filter(|&&k| c.compose(u, k) == h).count() == 1)
    })
}

fn unique_factor(c: &FinCat, from: ObjId, to: ObjId, through: MorId, target: MorId) -> MorId {
    let mut it = c
        .hom(from, to)
        .iter()
        .copied()
        .filter(|&k| c.compose(k, through) == target);
    let k = it.next().expect("universal arrow admits a factorization");
    debug_assert!(it.next().is_none());
    k
}

/// Searches for a reflection of `c` onto `a`.
pub fn find_reflector(c: &FinCat, a: &FullSubcat) -> Result<Reflector, NotReflective> {
    let mut units = Vec::with_capacity(c.obj_count());
    for x in c.objects() {
        let u = a
            .members
            .iter()
            .flat_map(|&m| c.hom(x, m).iter().copied())
            .find(|&u| is_universal_arrow(c, a, u))
            .ok_or(NotReflective { witness: x })?;
        units.push(u);
    }
    let obj: Vec<ObjId> = units.iter().map(|&u| c.dst(u)).collect();
    let mor = c
        .morphisms()
        .map(|f| {
            let (x, y) = (c.src(f), c.dst(f));
            unique_factor(c, obj[x.0], obj[y.0], units[x.0], c.compose(units[y.0], f))
        })
        .collect();
    Ok(Reflector {
        subcat: a.clone(),
        functor: Functor { obj, mor },
        unit: NatTrans { components: units },
    })
}

/// Searches for a coreflection of `c` onto `a`.
pub fn find_coreflector(c: &FinCat, a: &FullSubcat) -> Result<Coreflector, NotReflective> {
    let mut counits = Vec::with_capacity(c.obj_count());
    for x in c.objects() {
        let u = a
            .members
            .iter()
            .flat_map(|&m| c.hom(m, x).iter().copied())
            .find(|&u| is_couniversal_arrow(c, a, u))
            .ok_or(NotReflective { witness: x })?;
        counits.push(u);
    }
    let obj: Vec<ObjId> = counits.iter().map(|&u| c.src(u)).collect();
    let mor = c
        .morphisms()
        .map(|f| {
            let (x, y) = (c.src(f), c.dst(f));
            let target = c.compose(f, counits[x.0]);
            let mut it = c
                .hom(obj[x.0], obj[y.0])
                .iter()
                .copied()
                .filter(|&k| c.compose(counits[y.0], k) == target);
            it.next().expect("couniversal arrow admits a factorization")
        })
        .collect();
    Ok(Coreflector {
        subcat: a.clone(),
        functor: Functor { obj, mor },
        counit: NatTrans { components: counits },
    })
}

impl Reflector {
    pub fn identity(c: &FinCat) -> Self {
        let functor = Functor::identity(c);
        Reflector {
            subcat: FullSubcat::all(c),
            unit: NatTrans::identity(c, &functor),
            functor,
        }
    }

    /// Checks functoriality, naturality of the unit, the universal property
    /// at every object and invertibility of the unit on members.
    pub fn verify(&self, c: &FinCat) -> Result<(), ReflectorViolation> {
        self.functor.check(c, c)?;
        if let Some(x) = c.objects().find(|&x| !self.subcat.contains(self.functor.on_obj(x))) {
            return Err(ReflectorViolation::Image(x));
        }
        self.unit.check(c, c, &Functor::identity(c), &self.functor)?;
        if let Some(x) = c
            .objects()
            .find(|&x| !is_universal_arrow(c, &self.subcat, self.unit.at(x)))
        {
            return Err(ReflectorViolation::NotUniversal(x));
        }
        if let Some(&a) = self.subcat.members.iter().find(|&&a| !c.is_iso(self.unit.at(a))) {
            return Err(ReflectorViolation::MemberUnit(a));
        }
        Ok(())
    }
}

impl Coreflector {
    pub fn verify(&self, c: &FinCat) -> Result<(), ReflectorViolation> {
        self.functor.check(c, c)?;
        if let Some(x) = c.objects().find(|&x| !self.subcat.contains(self.functor.on_obj(x))) {
            return Err(ReflectorViolation::Image(x));
        }
        self.counit.check(c, c, &self.functor, &Functor::identity(c))?;
        if let Some(x) = c
            .objects()
            .find(|&x| !is_couniversal_arrow(c, &self.subcat, self.counit.at(x)))
        {
            return Err(ReflectorViolation::NotUniversal(x));
        }
        if let Some(&a) = self.subcat.members.iter().find(|&&a| !c.is_iso(self.counit.at(a))) {
            return Err(ReflectorViolation::MemberUnit(a));
        }
        Ok(())
    }
}

fn nonempty_replete_subsets(c: &FinCat) -> impl Iterator<Item = FullSubcat> + '_ {
    let n = c.obj_count();
    assert!(n < usize::BITS as usize, "too many objects to enumerate subsets");
    (1usize..(1 << n))
        .map(move |mask| FullSubcat::new((0..n).filter(|i| mask & (1 << i) != 0).map(ObjId)))
        .filter(move |a| is_replete(c, a))
}

/// Every replete reflective subcategory with its canonical reflector,
/// in order of the member bitmask.
pub fn enumerate_replete_reflective(c: &FinCat) -> Vec<Reflector> {
    nonempty_replete_subsets(c)
        .filter_map(|a| find_reflector(c, &a).ok())
        .collect()
}

pub fn enumerate_replete_coreflective(c: &FinCat) -> Vec<Coreflector> {
    nonempty_replete_subsets(c)
        .filter_map(|a| find_coreflector(c, &a).ok())
        .collect()
}

/// Morphisms sent to isomorphisms by the reflector.
pub fn inverted_class(c: &FinCat, r: &Reflector) -> MorphismClass {
    c.morphisms().filter(|&f| c.is_iso(r.functor.on_mor(f))).collect()
}

pub fn coinverted_class(c: &FinCat, r: &Coreflector) -> MorphismClass {
    c.morphisms().filter(|&f| c.is_iso(r.functor.on_mor(f))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChkError {
    #[error("category is not finitely well-complete")]
    NotWellComplete,
    #[error("no factorization of morphism {0} into an inverted map followed by an orthogonal one")]
    NoFactorization(MorId),
}

/// Factors `f: X → Y` as `m ∘ e` with `F e` invertible and `m` lifting
/// against all such maps. Uses `X → FX ×_{FY} Y → Y` when that pullback
/// exists and lands in the right classes, and exhaustive search otherwise.
pub fn chk_factorization(c: &FinCat, r: &Reflector, f: MorId) -> Result<(MorId, MorId), ChkError> {
    if !is_finitely_well_complete(c).well_complete {
        return Err(ChkError::NotWellComplete);
    }
    let e = inverted_class(c, r);
    let m = rlp_class(c, &e);
    factor_with(c, r, &e, &m, f)
}

/// The whole reflective factorization system.
pub fn chk_factorization_system(c: &FinCat, r: &Reflector) -> Result<FactorizationSystem, ChkError> {
    if !is_finitely_well_complete(c).well_complete {
        return Err(ChkError::NotWellComplete);
    }
    let e = inverted_class(c, r);
    let m = rlp_class(c, &e);
    let factor = c
        .morphisms()
        .map(|f| factor_with(c, r, &e, &m, f).map(|p| (f, p)))
        .collect::<Result<_, _>>()?;
    Ok(FactorizationSystem { e, m, factor })
}

fn factor_with(
    c: &FinCat,
    r: &Reflector,
    e: &MorphismClass,
    m: &MorphismClass,
    f: MorId,
) -> Result<(MorId, MorId), ChkError> {
    let (x, y) = (c.src(f), c.dst(f));
    let ff = r.functor.on_mor(f);
    let (eta_x, eta_y) = (r.unit.at(x), r.unit.at(y));
    if let Some(p) = limit_search(c, Shape::Pullback(ff, eta_y)).expect("Ff and η_Y share a target") {
        let (p1, p2) = (p.legs[0], p.legs[1]);
        let induced = c
            .hom(x, p.apex)
            .iter()
            .copied()
            .find(|&u| c.compose(p1, u) == eta_x && c.compose(p2, u) == f);
        if let Some(u) = induced {
            if e.contains(u) && m.contains(p2) {
                return Ok((u, p2));
            }
        }
    }
    factorizations(c, e, m, f)
        .first()
        .copied()
        .ok_or(ChkError::NoFactorization(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::verify_factorization_system;

    fn sub(c: &FinCat, names: &[&str]) -> FullSubcat {
        FullSubcat::from_names(c, names).unwrap()
    }

    #[test]
    fn reflector_onto_top_of_chain2() {
        let c = FinCat::chain(2);
        let r = find_reflector(&c, &sub(&c, &["1"])).unwrap();
        assert_eq!(r.functor.obj, vec![ObjId(1), ObjId(1)]);
        assert!(r.verify(&c).is_ok());
        assert_eq!(inverted_class(&c, &r), MorphismClass::all(&c));
    }

    #[test]
    fn bottom_of_chain2_is_not_reflective() {
        let c = FinCat::chain(2);
        assert_eq!(
            find_reflector(&c, &sub(&c, &["0"])),
            Err(NotReflective { witness: ObjId(1) })
        );
    }

    #[test]
    fn whole_category_gives_identity_reflector() {
        let c = FinCat::chain(3);
        let r = find_reflector(&c, &FullSubcat::all(&c)).unwrap();
        assert_eq!(r, Reflector::identity(&c));
        assert_eq!(inverted_class(&c, &r), MorphismClass::isomorphisms(&c));
    }

    #[test]
    fn empty_subcategory_is_not_reflective() {
        let c = FinCat::chain(2);
        assert!(find_reflector(&c, &FullSubcat::default()).is_err());
    }

    #[test]
    fn reflective_counts_on_chains() {
        assert_eq!(enumerate_replete_reflective(&FinCat::chain(2)).len(), 2);
        let refl = enumerate_replete_reflective(&FinCat::chain(3));
        assert_eq!(refl.len(), 4);
        assert!(refl.iter().all(|r| r.subcat.contains(ObjId(2))));
        let one = FinCat::monoid("*", &["1"], |_, _| 0).unwrap();
        assert_eq!(enumerate_replete_reflective(&one).len(), 1);
    }

    #[test]
    fn repleteness() {
        let c = FinCat::chain(3);
        assert!(is_replete(&c, &FullSubcat::all(&c)));
        assert!(is_replete(&c, &sub(&c, &["0", "2"])));
        // 0 < {1a ≅ 1b} < 2
        let names = ["0", "1a", "1b", "2"];
        let rank = [0, 1, 1, 2];
        let d = FinCat::preorder(&names, |i, j| rank[i] <= rank[j]).unwrap();
        assert!(!is_replete(&d, &sub(&d, &["1a", "2"])));
        assert!(is_replete(&d, &sub(&d, &["1a", "1b", "2"])));
    }

    #[test]
    fn least_id_choice_among_isomorphic_targets() {
        let names = ["0", "1a", "1b", "2"];
        let rank = [0, 1, 1, 2];
        let d = FinCat::preorder(&names, |i, j| rank[i] <= rank[j]).unwrap();
        let r = find_reflector(&d, &sub(&d, &["1a", "1b", "2"])).unwrap();
        let one_a = d.obj_by_name("1a").unwrap();
        assert_eq!(r.functor.on_obj(d.obj_by_name("0").unwrap()), one_a);
        assert_eq!(r.functor.on_obj(d.obj_by_name("1b").unwrap()), one_a);
        assert!(r.verify(&d).is_ok());
    }

    #[test]
    fn chk_factorization_on_chain3() {
        let c = FinCat::chain(3);
        let r = find_reflector(&c, &sub(&c, &["1", "2"])).unwrap();
        let f = c.mor_by_name("0->2").unwrap();
        let (e, m) = chk_factorization(&c, &r, f).unwrap();
        assert_eq!(c.mor_name(e), "0->1");
        assert_eq!(c.mor_name(m), "1->2");

        let fs = chk_factorization_system(&c, &r).unwrap();
        assert_eq!(verify_factorization_system(&c, &fs).unwrap(), None);
    }

    #[test]
    fn chk_with_identity_reflector() {
        let c = FinCat::chain(3);
        let r = Reflector::identity(&c);
        for f in c.morphisms() {
            assert_eq!(chk_factorization(&c, &r, f).unwrap(), (c.id(c.src(f)), f));
        }
    }

    #[test]
    fn chk_with_inverted_map() {
        let c = FinCat::chain(3);
        let r = find_reflector(&c, &sub(&c, &["2"])).unwrap();
        for f in c.morphisms() {
            assert_eq!(chk_factorization(&c, &r, f).unwrap(), (f, c.id(c.dst(f))));
        }
    }

    #[test]
    fn chk_requires_well_completeness() {
        let c = FinCat::discrete(&["x", "y"]);
        let r = Reflector::identity(&c);
        assert_eq!(chk_factorization(&c, &r, MorId(0)), Err(ChkError::NotWellComplete));
    }

    #[test]
    fn coreflector_onto_bottom_of_chain2() {
        let c = FinCat::chain(2);
        let g = find_coreflector(&c, &sub(&c, &["0"])).unwrap();
        assert_eq!(g.functor.obj, vec![ObjId(0), ObjId(0)]);
        assert!(g.verify(&c).is_ok());
        assert!(find_coreflector(&c, &sub(&c, &["1"])).is_err());
        assert_eq!(enumerate_replete_coreflective(&c).len(), 2);
    }
}
