//! Monads on a finite category, idempotency, and the dictionary between
//! idempotent monads and reflective subcategories.

use serde::Serialize;
use thiserror::Error;

use crate::fincat::{FinCat, Functor, FunctorViolation, MorId, NatTrans, NaturalityViolation, ObjId};
use crate::reflect::{FullSubcat, Reflector, ReflectorViolation};

/// An endofunctor `T` with unit `η: id ⇒ T` and multiplication `μ: TT ⇒ T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonadData {
    pub functor: Functor,
    pub unit: NatTrans,
    pub mult: NatTrans,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("monad data does not match the category: {0}")]
pub struct ShapeMismatch(pub String);

/// The first monad law that fails.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum MonadLaw {
    #[error("T is not a functor: {0}")]
    Functor(FunctorViolation),
    #[error("unit is not natural: {0}")]
    UnitNaturality(NaturalityViolation),
    #[error("multiplication is not natural: {0}")]
    MultNaturality(NaturalityViolation),
    #[error("associativity μ∘Tμ = μ∘μT fails at {0}")]
    Associativity(ObjId),
    #[error("unit law μ∘Tη = id fails at {0}")]
    LeftUnit(ObjId),
    #[error("unit law μ∘ηT = id fails at {0}")]
    RightUnit(ObjId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonadError {
    #[error(transparent)]
    Shape(#[from] ShapeMismatch),
    #[error("{0}")]
    Law(MonadLaw),
    #[error("monad is not idempotent at {0}")]
    NotIdempotent(ObjId),
    #[error("essential image is not reflective: {0}")]
    Reflector(ReflectorViolation),
    #[error("round trip through the reflector is not naturally equivalent to the monad")]
    RoundTrip,
}

impl MonadData {
    pub fn identity(c: &FinCat) -> Self {
        let functor = Functor::identity(c);
        let unit = NatTrans::identity(c, &functor);
        MonadData {
            mult: unit.clone(),
            unit,
            functor,
        }
    }

    fn check_shape(&self, c: &FinCat) -> Result<(), ShapeMismatch> {
        let ok = self.functor.obj.len() == c.obj_count()
            && self.functor.mor.len() == c.mor_count()
            && self.unit.components.len() == c.obj_count()
            && self.mult.components.len() == c.obj_count()
            && self.functor.obj.iter().all(|x| x.0 < c.obj_count())
            && self.functor.mor.iter().all(|f| f.0 < c.mor_count())
            && self
                .unit
                .components
                .iter()
                .chain(&self.mult.components)
                .all(|f| f.0 < c.mor_count());
        if ok {
            Ok(())
        } else {
            Err(ShapeMismatch(format!(
                "expected {} object and {} morphism entries",
                c.obj_count(),
                c.mor_count()
            )))
        }
    }
}

/// Checks functoriality, naturality of `η` and `μ`, associativity and the
/// two unit laws, in that order; returns the first failure.
pub fn verify_monad(c: &FinCat, m: &MonadData) -> Result<Option<MonadLaw>, ShapeMismatch> {
    m.check_shape(c)?;
    let t = &m.functor;
    if let Err(v) = t.check(c, c) {
        return Ok(Some(MonadLaw::Functor(v)));
    }
    if let Err(v) = m.unit.check(c, c, &Functor::identity(c), t) {
        return Ok(Some(MonadLaw::UnitNaturality(v)));
    }
    let tt = t.after(t);
    if let Err(v) = m.mult.check(c, c, &tt, t) {
        return Ok(Some(MonadLaw::MultNaturality(v)));
    }
    for x in c.objects() {
        let mu = m.mult.at(x);
        let lhs = c.compose(mu, t.on_mor(mu));
        let rhs = c.compose(mu, m.mult.at(t.on_obj(x)));
        if lhs != rhs {
            return Ok(Some(MonadLaw::Associativity(x)));
        }
    }
    for x in c.objects() {
        let id = c.id(t.on_obj(x));
        if c.compose(m.mult.at(x), t.on_mor(m.unit.at(x))) != id {
            return Ok(Some(MonadLaw::LeftUnit(x)));
        }
        if c.compose(m.mult.at(x), m.unit.at(t.on_obj(x))) != id {
            return Ok(Some(MonadLaw::RightUnit(x)));
        }
    }
    Ok(None)
}

/// First object where `Tη_X` or `η_TX` fails to be an isomorphism.
pub fn idempotency_failure(c: &FinCat, m: &MonadData) -> Option<ObjId> {
    c.objects()
        .find(|&x| !c.is_iso(m.functor.on_mor(m.unit.at(x))) || !c.is_iso(m.unit.at(m.functor.on_obj(x))))
}

pub fn is_idempotent(c: &FinCat, m: &MonadData) -> bool {
    idempotency_failure(c, m).is_none()
}

/// The monad of the adjunction between a reflector and the inclusion.
/// `μ_X` is the unique map `FFX → FX` splitting `η_FX`.
pub fn monad_from_reflector(c: &FinCat, r: &Reflector) -> MonadData {
    let t = &r.functor;
    let mult = c
        .objects()
        .map(|x| {
            let tx = t.on_obj(x);
            let eta_tx = r.unit.at(tx);
            c.hom(t.on_obj(tx), tx)
                .iter()
                .copied()
                .find(|&k| c.compose(k, eta_tx) == c.id(tx))
                .expect("η at a reflected object is universal")
        })
        .collect();
    MonadData {
        functor: r.functor.clone(),
        unit: r.unit.clone(),
        mult: NatTrans { components: mult },
    }
}

/// Iso-closure of the objects `T` hits.
pub fn essential_image(c: &FinCat, m: &MonadData) -> FullSubcat {
    FullSubcat::new(
        c.objects()
            .flat_map(|x| c.iso_class(m.functor.on_obj(x)))
            .collect::<Vec<_>>(),
    )
}

/// The reflective subcategory of an idempotent monad: its essential image,
/// reflected by `T` itself. The round trip back to a monad is checked.
pub fn reflector_from_monad(c: &FinCat, m: &MonadData) -> Result<Reflector, MonadError> {
    if let Some(law) = verify_monad(c, m)? {
        return Err(MonadError::Law(law));
    }
    if let Some(x) = idempotency_failure(c, m) {
        return Err(MonadError::NotIdempotent(x));
    }
    let r = Reflector {
        subcat: essential_image(c, m),
        functor: m.functor.clone(),
        unit: m.unit.clone(),
    };
    r.verify(c).map_err(MonadError::Reflector)?;
    if naturally_equivalent(c, &monad_from_reflector(c, &r), m).is_none() {
        return Err(MonadError::RoundTrip);
    }
    Ok(r)
}

/// A monad morphism `M1 → M2`: components `θ_X: T1X → T2X`, natural,
/// with `θ∘η1 = η2` and `θ∘μ1 = μ2∘(θ*θ)`. Returns the least one found.
pub fn monad_morphism_exists(c: &FinCat, m1: &MonadData, m2: &MonadData) -> Option<NatTrans> {
    search_morphism(c, m1, m2, false)
}

/// A monad morphism whose components are all isomorphisms.
pub fn naturally_equivalent(c: &FinCat, m1: &MonadData, m2: &MonadData) -> Option<NatTrans> {
    search_morphism(c, m1, m2, true)
}

fn search_morphism(c: &FinCat, m1: &MonadData, m2: &MonadData, iso: bool) -> Option<NatTrans> {
    let (t1, t2) = (&m1.functor, &m2.functor);
    // candidates respect the unit condition up front
    let candidates: Vec<Vec<MorId>> = c
        .objects()
        .map(|x| {
            c.hom(t1.on_obj(x), t2.on_obj(x))
                .iter()
                .copied()
                .filter(|&th| c.compose(th, m1.unit.at(x)) == m2.unit.at(x))
                .filter(|&th| !iso || c.is_iso(th))
                .collect()
        })
        .collect();
    let mut theta = Vec::with_capacity(c.obj_count());
    if assign(c, m1, m2, &candidates, &mut theta) {
        Some(NatTrans { components: theta })
    } else {
        None
    }
}

fn assign(c: &FinCat, m1: &MonadData, m2: &MonadData, candidates: &[Vec<MorId>], theta: &mut Vec<MorId>) -> bool {
    let k = theta.len();
    if k == candidates.len() {
        return respects_multiplication(c, m1, m2, theta);
    }
    let x = ObjId(k);
    for &th in &candidates[k] {
        theta.push(th);
        // naturality squares between assigned objects
        let natural = c.morphisms().all(|f| {
            let (s, d) = (c.src(f), c.dst(f));
            s.0 > k
                || d.0 > k
                || (s != x && d != x)
                || c.compose(theta[d.0], m1.functor.on_mor(f)) == c.compose(m2.functor.on_mor(f), theta[s.0])
        });
        if natural && assign(c, m1, m2, candidates, theta) {
            return true;
        }
        theta.pop();
    }
    false
}

fn respects_multiplication(c: &FinCat, m1: &MonadData, m2: &MonadData, theta: &[MorId]) -> bool {
    let (t1, t2) = (&m1.functor, &m2.functor);
    c.objects().all(|x| {
        // (θ*θ)_X = θ_{T2 X} ∘ T1(θ_X)
        let horizontal = c.compose(theta[t2.on_obj(x).0], t1.on_mor(theta[x.0]));
        c.compose(theta[x.0], m1.mult.at(x)) == c.compose(m2.mult.at(x), horizontal)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{RawCategory, RawComposite, RawMorphism};
    use crate::reflect::{enumerate_replete_reflective, find_reflector};

    fn reflector(c: &FinCat, names: &[&str]) -> Reflector {
        find_reflector(c, &FullSubcat::from_names(c, names).unwrap()).unwrap()
    }

    #[test]
    fn identity_monad_is_an_idempotent_monad() {
        let c = FinCat::chain(3);
        let m = MonadData::identity(&c);
        assert_eq!(verify_monad(&c, &m).unwrap(), None);
        assert!(is_idempotent(&c, &m));
        assert_eq!(monad_from_reflector(&c, &Reflector::identity(&c)), m);
        assert_eq!(reflector_from_monad(&c, &m).unwrap(), Reflector::identity(&c));
    }

    #[test]
    fn constant_at_top_monad() {
        let c = FinCat::chain(2);
        let m = monad_from_reflector(&c, &reflector(&c, &["1"]));
        assert_eq!(verify_monad(&c, &m).unwrap(), None);
        assert_eq!(m.functor.obj, vec![ObjId(1), ObjId(1)]);
        assert_eq!(m.mult.components, vec![c.id(ObjId(1)), c.id(ObjId(1))]);
        let r = reflector_from_monad(&c, &m).unwrap();
        assert_eq!(r.subcat, FullSubcat::new([ObjId(1)]));
    }

    #[test]
    fn monad_of_upper_pair_in_chain3() {
        let c = FinCat::chain(3);
        let m = monad_from_reflector(&c, &reflector(&c, &["1", "2"]));
        assert_eq!(m.functor.obj, vec![ObjId(1), ObjId(1), ObjId(2)]);
        assert!(is_idempotent(&c, &m));
    }

    #[test]
    fn ordering_reverses_inclusion() {
        let c = FinCat::chain(3);
        let top = monad_from_reflector(&c, &reflector(&c, &["2"]));
        let upper = monad_from_reflector(&c, &reflector(&c, &["1", "2"]));
        assert!(monad_morphism_exists(&c, &top, &upper).is_none());
        assert!(monad_morphism_exists(&c, &upper, &top).is_some());
        let id = MonadData::identity(&c);
        assert_eq!(monad_morphism_exists(&c, &id, &upper).unwrap(), upper.unit);
        assert_eq!(
            monad_morphism_exists(&c, &upper, &upper).unwrap(),
            NatTrans::identity(&c, &upper.functor)
        );
    }

    #[test]
    fn every_reflector_monad_round_trips() {
        let c = FinCat::chain(4);
        for r in enumerate_replete_reflective(&c) {
            let m = monad_from_reflector(&c, &r);
            assert_eq!(verify_monad(&c, &m).unwrap(), None);
            assert!(is_idempotent(&c, &m));
            assert_eq!(essential_image(&c, &m), r.subcat);
            assert_eq!(reflector_from_monad(&c, &m).unwrap().subcat, r.subcat);
        }
    }

    /// Objects `P`, `Q`, `R`; `P` carries the monoid `{1, g, z}` with `g² = 1`
    /// and `z` absorbing. `T` collapses `P`'s monoid to the identity,
    /// `η_P = z` and `μ_P = g`, so `μ∘Tμ = g` but `μ∘μT = g² = 1`.
    pub(crate) fn non_associative_fixture() -> (FinCat, MonadData) {
        let mul = |a: &str, b: &str| -> &'static str {
            match (a, b) {
                ("z", _) | (_, "z") => "z",
                ("g", "g") => "id_P",
                ("g", _) | (_, "g") => "g",
                _ => "id_P",
            }
        };
        let elems = ["id_P", "g", "z"];
        let raw = RawCategory {
            objects: vec!["P".into(), "Q".into(), "R".into()],
            morphisms: ["g", "z"]
                .iter()
                .map(|&m| RawMorphism {
                    id: m.into(),
                    src: "P".into(),
                    dst: "P".into(),
                })
                .collect(),
            compose: elems
                .iter()
                .flat_map(|&a| elems.iter().map(move |&b| (a, b)))
                .map(|(a, b)| RawComposite {
                    g: a.into(),
                    f: b.into(),
                    gf: mul(a, b).into(),
                })
                .collect(),
        };
        let c = FinCat::from_raw(&raw).unwrap();
        let p = c.obj_by_name("P").unwrap();
        let id_p = c.id(p);
        let functor = Functor {
            obj: c.objects().collect(),
            mor: c.morphisms().map(|f| if c.src(f) == p { id_p } else { f }).collect(),
        };
        let at = |x: ObjId, name: &str| if x == p { c.mor_by_name(name).unwrap() } else { c.id(x) };
        let unit = NatTrans {
            components: c.objects().map(|x| at(x, "z")).collect(),
        };
        let mult = NatTrans {
            components: c.objects().map(|x| at(x, "g")).collect(),
        };
        (c, MonadData { functor, unit, mult })
    }

    #[test]
    fn non_associative_multiplication_is_caught() {
        let (c, m) = non_associative_fixture();
        let p = c.obj_by_name("P").unwrap();
        assert_eq!(verify_monad(&c, &m).unwrap(), Some(MonadLaw::Associativity(p)));
        assert!(matches!(reflector_from_monad(&c, &m), Err(MonadError::Law(_))));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let c = FinCat::chain(2);
        let mut m = MonadData::identity(&c);
        m.mult.components.pop();
        assert!(verify_monad(&c, &m).is_err());
    }

    #[test]
    fn non_idempotent_monad_on_a_monoid() {
        // {1, z} with z² = z: T = id, η = z, μ = 1 is natural but the unit law
        // μ ∘ Tη = z fails, and Tη = z is not invertible
        let c = FinCat::monoid("*", &["1", "z"], |a, b| a.max(b)).unwrap();
        let z = c.mor_by_name("z").unwrap();
        let m = MonadData {
            functor: Functor::identity(&c),
            unit: NatTrans { components: vec![z] },
            mult: NatTrans {
                components: vec![c.id(ObjId(0))],
            },
        };
        assert_eq!(verify_monad(&c, &m).unwrap(), Some(MonadLaw::LeftUnit(ObjId(0))));
        assert!(!is_idempotent(&c, &m));
    }
}
