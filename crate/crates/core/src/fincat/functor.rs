use serde::Serialize;
use thiserror::Error;

use super::{FinCat, MorId, ObjId};

/// Functor data between two finite categories, given by its action on
/// object and morphism indices. The categories themselves are passed to
/// the checks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Functor {
    pub obj: Vec<ObjId>,
    pub mor: Vec<MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum FunctorViolation {
    #[error("functor data has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("functor data refers to ids outside the target category")]
    OutOfRange,
    #[error("image of morphism {0} has the wrong source or target")]
    Typing(MorId),
    #[error("identity of object {0} is not sent to an identity")]
    Identity(ObjId),
    #[error("composition {g} ∘ {f} is not preserved")]
    Composition { g: MorId, f: MorId },
}

impl Functor {
    pub fn identity(c: &FinCat) -> Self {
        Functor {
            obj: c.objects().collect(),
            mor: c.morphisms().collect(),
        }
    }

    pub fn on_obj(&self, x: ObjId) -> ObjId {
        self.obj[x.0]
    }

    pub fn on_mor(&self, f: MorId) -> MorId {
        self.mor[f.0]
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Functor) -> Functor {
        Functor {
            obj: inner.obj.iter().map(|&x| self.on_obj(x)).collect(),
            mor: inner.mor.iter().map(|&f| self.on_mor(f)).collect(),
        }
    }

    pub fn check(&self, source: &FinCat, target: &FinCat) -> Result<(), FunctorViolation> {
        if self.obj.len() != source.obj_count() {
            return Err(FunctorViolation::Shape {
                expected: source.obj_count(),
                got: self.obj.len(),
            });
        }
        if self.mor.len() != source.mor_count() {
            return Err(FunctorViolation::Shape {
                expected: source.mor_count(),
                got: self.mor.len(),
            });
        }
        if self.obj.iter().any(|x| x.0 >= target.obj_count()) || self.mor.iter().any(|f| f.0 >= target.mor_count()) {
            return Err(FunctorViolation::OutOfRange);
        }
        for f in source.morphisms() {
            let ff = self.on_mor(f);
            if target.src(ff) != self.on_obj(source.src(f)) || target.dst(ff) != self.on_obj(source.dst(f)) {
                return Err(FunctorViolation::Typing(f));
            }
        }
        for x in source.objects() {
            if self.on_mor(source.id(x)) != target.id(self.on_obj(x)) {
                return Err(FunctorViolation::Identity(x));
            }
        }
        for g in source.morphisms() {
            for &f in &source.hom_into(source.src(g)) {
                if self.on_mor(source.compose(g, f)) != target.compose(self.on_mor(g), self.on_mor(f)) {
                    return Err(FunctorViolation::Composition { g, f });
                }
            }
        }
        Ok(())
    }
}

/// A natural transformation `F ⇒ G`, given by its components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NatTrans {
    pub components: Vec<MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum NaturalityViolation {
    #[error("transformation has {got} components, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("component at {0} has the wrong source or target")]
    Typing(ObjId),
    #[error("naturality square for morphism {0} does not commute")]
    Square(MorId),
}

impl NatTrans {
    pub fn identity(c: &FinCat, f: &Functor) -> Self {
        NatTrans {
            components: c.objects().map(|x| c.id(f.on_obj(x))).collect(),
        }
    }

    pub fn at(&self, x: ObjId) -> MorId {
        self.components[x.0]
    }

    /// Checks that the components form a natural transformation
    /// `from ⇒ to` between functors `source → target`.
    pub fn check(
        &self,
        source: &FinCat,
        target: &FinCat,
        from: &Functor,
        to: &Functor,
    ) -> Result<(), NaturalityViolation> {
        if self.components.len() != source.obj_count() {
            return Err(NaturalityViolation::Shape {
                expected: source.obj_count(),
                got: self.components.len(),
            });
        }
        for x in source.objects() {
            let a = self.at(x);
            if a.0 >= target.mor_count() || target.src(a) != from.on_obj(x) || target.dst(a) != to.on_obj(x) {
                return Err(NaturalityViolation::Typing(x));
            }
        }
        for f in source.morphisms() {
            let lhs = target.compose(to.on_mor(f), self.at(source.src(f)));
            let rhs = target.compose(self.at(source.dst(f)), from.on_mor(f));
            if lhs != rhs {
                return Err(NaturalityViolation::Square(f));
            }
        }
        Ok(())
    }

    /// Vertical composite `other ∘ self` in category `c`.
    pub fn then(&self, c: &FinCat, other: &NatTrans) -> NatTrans {
        NatTrans {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&a, &b)| c.compose(b, a))
                .collect(),
        }
    }

    pub fn is_iso(&self, c: &FinCat) -> bool {
        self.components.iter().all(|&f| c.is_iso(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_functor_is_a_functor() {
        let c = FinCat::chain(3);
        let id = Functor::identity(&c);
        assert!(id.check(&c, &c).is_ok());
        assert!(NatTrans::identity(&c, &id).check(&c, &c, &id, &id).is_ok());
    }

    #[test]
    fn constant_functor_on_chain() {
        let c = FinCat::chain(2);
        let top = ObjId(1);
        let f = Functor {
            obj: vec![top, top],
            mor: c.morphisms().map(|_| c.id(top)).collect(),
        };
        assert!(f.check(&c, &c).is_ok());
        // unit id ⇒ const: components 0->1 and id_1
        let a = c.mor_by_name("0->1").unwrap();
        let eta = NatTrans {
            components: vec![a, c.id(top)],
        };
        assert!(eta.check(&c, &c, &Functor::identity(&c), &f).is_ok());
        // reversed direction has no component 1 → 0
        let bad = NatTrans {
            components: vec![a, c.id(top)],
        };
        assert!(matches!(
            bad.check(&c, &c, &f, &Functor::identity(&c)),
            Err(NaturalityViolation::Typing(_))
        ));
    }
}
