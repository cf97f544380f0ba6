//! Fibrant replacement, homotopy relations and the homotopy category of a
//! localization.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::fincat::{limit_search, FinCat, Functor, MorId, ObjId, Shape};
use crate::reflect::FullSubcat;

use super::{fibrant_objects, ModelStructure, Provenance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("{0} and {1} are not parallel")]
    NotParallel(String, String),
    #[error("no coproduct of {0} with itself")]
    MissingCoproduct(String),
    #[error("no product of {0} with itself")]
    MissingProduct(String),
    #[error("{0} has no fibrant replacement")]
    NoReplacement(String),
    #[error("homotopy category needs a localization (every map a cofibration)")]
    NotALocalization,
}

/// An acyclic cofibration `unit: X → target` into a fibrant object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Replacement {
    pub target: ObjId,
    pub unit: MorId,
}

/// Least fibrant `P` with an acyclic cofibration `X → P`, then the least
/// such map.
pub fn fibrant_replacement(m: &ModelStructure, x: ObjId) -> Result<Replacement, HomotopyError> {
    let c = &m.base;
    let fibrant = fibrant_objects(m);
    fibrant
        .members
        .iter()
        .find_map(|&p| {
            c.hom(x, p)
                .iter()
                .copied()
                .find(|&i| m.cof.contains(i) && m.we.contains(i))
                .map(|unit| Replacement { target: p, unit })
        })
        .ok_or_else(|| HomotopyError::NoReplacement(c.obj_name(x).to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplacementCertificate {
    /// Commuting squares `Pf ∘ i_X = i_Y ∘ f` enumerated, one per morphism.
    pub diagrams_checked: usize,
    /// Morphisms whose square had a filler count other than one.
    pub non_unique_fillers: Vec<MorId>,
    pub functorial: bool,
    /// Pairs `(X, B)`, `B` fibrant, checked for `hom(PX, B) ≅ hom(X, B)`.
    pub adjunction_pairs_checked: usize,
    /// First pair where precomposition with `i_X` is not a bijection.
    pub adjunction_failure: Option<(ObjId, ObjId)>,
}

impl ReplacementCertificate {
    pub fn holds(&self) -> bool {
        self.non_unique_fillers.is_empty() && self.functorial && self.adjunction_failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrantReplacement {
    pub replacements: Vec<Replacement>,
    /// `P` as an endofunctor; present when every filler is unique.
    pub functor: Option<Functor>,
    pub certificate: ReplacementCertificate,
}

/// Replaces every object, fills every square `X → PX → PY ← Y` and checks
/// that the fillers assemble into a functor left adjoint to the inclusion
/// of fibrant objects.
pub fn fibrant_replacement_functor(m: &ModelStructure) -> Result<FibrantReplacement, HomotopyError> {
    let c = &m.base;
    let replacements = c
        .objects()
        .map(|x| fibrant_replacement(m, x))
        .collect::<Result<Vec<_>, _>>()?;
    let mut non_unique = Vec::new();
    let mut images = Vec::with_capacity(c.mor_count());
    for f in c.morphisms() {
        let (rx, ry) = (replacements[c.src(f).0], replacements[c.dst(f).0]);
        let target = c.compose(ry.unit, f);
        let fillers: Vec<MorId> = c
            .hom(rx.target, ry.target)
            .iter()
            .copied()
            .filter(|&k| c.compose(k, rx.unit) == target)
            .collect();
        if fillers.len() != 1 {
            non_unique.push(f);
        }
        images.push(fillers.first().copied());
    }
    let functor = images.iter().copied().collect::<Option<Vec<_>>>().map(|mor| Functor {
        obj: replacements.iter().map(|r| r.target).collect(),
        mor,
    });
    let functorial = non_unique.is_empty() && functor.as_ref().is_some_and(|p| p.check(c, c).is_ok());
    let fibrant = fibrant_objects(m);
    let mut pairs = 0;
    let mut adjunction_failure = None;
    'outer: for x in c.objects() {
        let r = replacements[x.0];
        for &b in &fibrant.members {
            pairs += 1;
            let image: BTreeSet<MorId> = c.hom(r.target, b).iter().map(|&k| c.compose(k, r.unit)).collect();
            let bijective = image.len() == c.hom(r.target, b).len() && image.len() == c.hom(x, b).len();
            if !bijective {
                adjunction_failure = Some((x, b));
                break 'outer;
            }
        }
    }
    Ok(FibrantReplacement {
        replacements,
        functor: functor.filter(|_| non_unique.is_empty()),
        certificate: ReplacementCertificate {
            diagrams_checked: c.mor_count(),
            non_unique_fillers: non_unique,
            functorial,
            adjunction_pairs_checked: pairs,
            adjunction_failure,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyRelations {
    pub left_homotopic: bool,
    pub right_homotopic: bool,
    /// Cylinder factorizations `A ⊔ A → Cyl → A` examined.
    pub cylinders: usize,
    /// Path factorizations `B → Path → B × B` examined.
    pub paths: usize,
}

/// Decides left homotopy over every cylinder object and right homotopy over
/// every path object found in the category.
pub fn homotopy_relations(m: &ModelStructure, f: MorId, g: MorId) -> Result<HomotopyRelations, HomotopyError> {
    let c = &m.base;
    let (a, b) = (c.src(f), c.dst(f));
    if c.src(g) != a || c.dst(g) != b {
        return Err(HomotopyError::NotParallel(c.mor_name(f).into(), c.mor_name(g).into()));
    }
    let coproduct = limit_search(c, Shape::Coproduct(a, a))
        .expect("coproduct shape")
        .ok_or_else(|| HomotopyError::MissingCoproduct(c.obj_name(a).into()))?;
    let product = limit_search(c, Shape::Product(b, b))
        .expect("product shape")
        .ok_or_else(|| HomotopyError::MissingProduct(c.obj_name(b).into()))?;

    let (s, in1, in2) = (coproduct.apex, coproduct.legs[0], coproduct.legs[1]);
    let id_a = c.id(a);
    let fold = c
        .hom(s, a)
        .iter()
        .copied()
        .find(|&k| c.compose(k, in1) == id_a && c.compose(k, in2) == id_a)
        .expect("coproduct induces the fold map");
    let mut cylinders = 0;
    let mut left = false;
    for cyl in c.objects() {
        for &i in c.hom(s, cyl).iter().filter(|&&i| m.cof.contains(i)) {
            for &j in c.hom(cyl, a).iter().filter(|&&j| m.we.contains(j)) {
                if c.compose(j, i) != fold {
                    continue;
                }
                cylinders += 1;
                let (i1, i2) = (c.compose(i, in1), c.compose(i, in2));
                left |= c
                    .hom(cyl, b)
                    .iter()
                    .any(|&h| c.compose(h, i1) == f && c.compose(h, i2) == g);
            }
        }
    }

    let (p, pr1, pr2) = (product.apex, product.legs[0], product.legs[1]);
    let id_b = c.id(b);
    let diagonal = c
        .hom(b, p)
        .iter()
        .copied()
        .find(|&k| c.compose(pr1, k) == id_b && c.compose(pr2, k) == id_b)
        .expect("product induces the diagonal");
    let mut paths = 0;
    let mut right = false;
    for path in c.objects() {
        for &sec in c.hom(b, path).iter().filter(|&&sec| m.we.contains(sec)) {
            for &q in c.hom(path, p).iter().filter(|&&q| m.fib.contains(q)) {
                if c.compose(q, sec) != diagonal {
                    continue;
                }
                paths += 1;
                let (q1, q2) = (c.compose(pr1, q), c.compose(pr2, q));
                right |= c
                    .hom(a, path)
                    .iter()
                    .any(|&h| c.compose(q1, h) == f && c.compose(q2, h) == g);
            }
        }
    }
    Ok(HomotopyRelations {
        left_homotopic: left,
        right_homotopic: right,
        cylinders,
        paths,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceCertificate {
    /// `P` sends every weak equivalence to an isomorphism.
    pub inverts_weak_equivalences: bool,
    /// Parallel maps between fibrant objects are homotopic only when equal.
    pub homotopy_classes_singletons: bool,
    /// `f ↦ Pf` is a bijection `hom(A, B) → hom(PA, PB)` for fibrant `A`, `B`.
    pub full_and_faithful: bool,
    /// Every object is joined to a fibrant one by a weak equivalence.
    pub essentially_surjective: bool,
    pub parallel_pairs_checked: usize,
}

impl EquivalenceCertificate {
    pub fn holds(&self) -> bool {
        self.inverts_weak_equivalences
            && self.homotopy_classes_singletons
            && self.full_and_faithful
            && self.essentially_surjective
    }
}

/// The full subcategory on fibrant objects, with the certificate that it is
/// equivalent to the homotopy category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyCategoryView {
    pub objects: FullSubcat,
    #[serde(skip)]
    pub category: FinCat,
    pub certificate: EquivalenceCertificate,
}

pub fn homotopy_category(m: &ModelStructure) -> Result<HomotopyCategoryView, HomotopyError> {
    let c = &m.base;
    if matches!(m.provenance, Provenance::Colocalization { .. }) || m.cof.len() != c.mor_count() {
        return Err(HomotopyError::NotALocalization);
    }
    let fibrant = fibrant_objects(m);
    let replacement = fibrant_replacement_functor(m)?;
    let p = replacement.functor.as_ref();
    let inverts_weak_equivalences = p.is_some_and(|p| m.we.iter().all(|w| c.is_iso(p.on_mor(w))));
    let mut pairs = 0;
    let mut singletons = true;
    for &x in &fibrant.members {
        for &y in &fibrant.members {
            let hom = c.hom(x, y);
            for (k, &f) in hom.iter().enumerate() {
                for &g in &hom[k + 1..] {
                    pairs += 1;
                    let h = homotopy_relations(m, f, g)?;
                    if h.left_homotopic || h.right_homotopic {
                        singletons = false;
                    }
                }
            }
        }
    }
    let full_and_faithful = p.is_some_and(|p| {
        fibrant.members.iter().all(|&x| {
            fibrant.members.iter().all(|&y| {
                let images: BTreeSet<MorId> = c.hom(x, y).iter().map(|&f| p.on_mor(f)).collect();
                images.len() == c.hom(x, y).len() && images.len() == c.hom(p.on_obj(x), p.on_obj(y)).len()
            })
        })
    });
    let essentially_surjective = replacement
        .replacements
        .iter()
        .all(|r| fibrant.contains(r.target) && m.we.contains(r.unit));
    Ok(HomotopyCategoryView {
        category: c.full_subcategory(&fibrant.members),
        objects: fibrant,
        certificate: EquivalenceCertificate {
            inverts_weak_equivalences,
            homotopy_classes_singletons: singletons,
            full_and_faithful,
            essentially_surjective,
            parallel_pairs_checked: pairs,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{discrete_structure, localization_from_reflector};
    use crate::reflect::{enumerate_replete_reflective, find_reflector};

    fn localization(c: &FinCat, names: &[&str]) -> ModelStructure {
        let r = find_reflector(c, &FullSubcat::from_names(c, names).unwrap()).unwrap();
        localization_from_reflector(c, &r).unwrap()
    }

    #[test]
    fn replacement_in_chain2() {
        let c = FinCat::chain(2);
        let m = localization(&c, &["1"]);
        let r = fibrant_replacement(&m, ObjId(0)).unwrap();
        assert_eq!(r.target, ObjId(1));
        assert_eq!(r.unit, c.mor_by_name("0->1").unwrap());
        let fixed = fibrant_replacement(&m, ObjId(1)).unwrap();
        assert!(c.is_iso(fixed.unit));
    }

    #[test]
    fn replacement_functor_is_certified() {
        let c = FinCat::chain(4);
        for r in enumerate_replete_reflective(&c) {
            let m = localization_from_reflector(&c, &r).unwrap();
            let p = fibrant_replacement_functor(&m).unwrap();
            assert!(p.certificate.holds(), "{:?}", r.subcat);
            assert_eq!(p.functor.unwrap(), r.functor);
        }
    }

    #[test]
    fn homotopy_is_equality_into_fibrants() {
        let c = FinCat::chain(3);
        let m = discrete_structure(&c).unwrap();
        let f = c.mor_by_name("0->2").unwrap();
        let h = homotopy_relations(&m, f, f).unwrap();
        assert!(h.left_homotopic && h.right_homotopic);
        assert!(matches!(
            homotopy_relations(&m, f, c.id(ObjId(0))),
            Err(HomotopyError::NotParallel(..))
        ));
    }

    #[test]
    fn missing_coproduct_is_reported() {
        // X ⇉ Y has no X ⊔ X: a cocone (a, b) into Y cannot factor through X
        let raw = crate::fincat::RawCategory {
            objects: vec!["X".into(), "Y".into()],
            morphisms: ["a", "b"]
                .iter()
                .map(|&m| crate::fincat::RawMorphism {
                    id: m.into(),
                    src: "X".into(),
                    dst: "Y".into(),
                })
                .collect(),
            compose: vec![],
        };
        let c = FinCat::from_raw(&raw).unwrap();
        let m = ModelStructure {
            base: c.clone(),
            cof: crate::lifting::MorphismClass::all(&c),
            we: crate::lifting::MorphismClass::isomorphisms(&c),
            fib: crate::lifting::MorphismClass::all(&c),
            provenance: Provenance::Discrete,
        };
        let a = c.mor_by_name("a").unwrap();
        assert!(matches!(
            homotopy_relations(&m, a, a),
            Err(HomotopyError::MissingCoproduct(_))
        ));
    }

    #[test]
    fn homotopy_categories() {
        let c = FinCat::chain(3);
        let ho = homotopy_category(&localization(&c, &["1", "2"])).unwrap();
        assert!(ho.certificate.holds());
        assert_eq!(ho.category.obj_count(), 2);
        assert_eq!(ho.category.mor_count(), 3);
        let c2 = FinCat::chain(2);
        let ho = homotopy_category(&localization(&c2, &["1"])).unwrap();
        assert_eq!(ho.category.obj_count(), 1);
        let whole = homotopy_category(&discrete_structure(&c).unwrap()).unwrap();
        assert_eq!(whole.category, c);
    }
}
