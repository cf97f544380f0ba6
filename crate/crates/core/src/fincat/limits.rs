//! Brute-force search for finite limits and colimits.
//!
//! A limit is certified by enumerating every competing cone over the
//! diagram and checking that exactly one mediating morphism exists.
//! Colimits are limits in the opposite category, which keeps the same ids.

use serde::Serialize;
use thiserror::Error;

use super::{FinCat, MorId, ObjId};

/// The finite (co)limit shapes generating finite (co)completeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    Terminal,
    Initial,
    Product(ObjId, ObjId),
    Coproduct(ObjId, ObjId),
    /// Cospan `f: A → C ← B: g`.
    Pullback(MorId, MorId),
    /// Span `f: C → A`, `g: C → B`.
    Pushout(MorId, MorId),
    Equalizer(MorId, MorId),
    Coequalizer(MorId, MorId),
}

impl Shape {
    pub fn is_colimit(&self) -> bool {
        matches!(
            self,
            Shape::Initial | Shape::Coproduct(..) | Shape::Pushout(..) | Shape::Coequalizer(..)
        )
    }

    /// The same shape read in the opposite category.
    pub fn dual(&self) -> Shape {
        match *self {
            Shape::Terminal => Shape::Initial,
            Shape::Initial => Shape::Terminal,
            Shape::Product(a, b) => Shape::Coproduct(a, b),
            Shape::Coproduct(a, b) => Shape::Product(a, b),
            Shape::Pullback(f, g) => Shape::Pushout(f, g),
            Shape::Pushout(f, g) => Shape::Pullback(f, g),
            Shape::Equalizer(f, g) => Shape::Coequalizer(f, g),
            Shape::Coequalizer(f, g) => Shape::Equalizer(f, g),
        }
    }

    pub fn describe(&self, c: &FinCat) -> String {
        let o = |x: ObjId| c.obj_name(x).to_string();
        let m = |f: MorId| c.mor_name(f).to_string();
        match *self {
            Shape::Terminal => "terminal object".into(),
            Shape::Initial => "initial object".into(),
            Shape::Product(a, b) => format!("product {} × {}", o(a), o(b)),
            Shape::Coproduct(a, b) => format!("coproduct {} ⊔ {}", o(a), o(b)),
            Shape::Pullback(f, g) => format!("pullback of {} and {}", m(f), m(g)),
            Shape::Pushout(f, g) => format!("pushout of {} and {}", m(f), m(g)),
            Shape::Equalizer(f, g) => format!("equalizer of {} and {}", m(f), m(g)),
            Shape::Coequalizer(f, g) => format!("coequalizer of {} and {}", m(f), m(g)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("pullback needs a cospan")]
    NotCospan,
    #[error("pushout needs a span")]
    NotSpan,
    #[error("(co)equalizer needs a parallel pair")]
    NotParallel,
    #[error("unknown id in shape")]
    UnknownId,
}

/// A (co)limit with its certificate.
///
/// `legs` are the projections of a limit (`P → A`, `P → B`, `E → A`) or the
/// injections of a colimit (`A → Q`, `B → Q`, `B → Q`), always as morphisms
/// of the category the search ran on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Limit {
    pub apex: ObjId,
    pub legs: Vec<MorId>,
    /// Competing cones checked for a unique mediating morphism.
    pub cones_checked: usize,
}

struct Diagram {
    nodes: Vec<ObjId>,
    // (from node, to node, morphism)
    arrows: Vec<(usize, usize, MorId)>,
    // which node legs are reported
    visible: Vec<usize>,
}

fn diagram(c: &FinCat, shape: Shape) -> Result<Diagram, ShapeError> {
    let check_mor = |f: MorId| {
        if f.0 < c.mor_count() {
            Ok(())
        } else {
            Err(ShapeError::UnknownId)
        }
    };
    let check_obj = |x: ObjId| {
        if x.0 < c.obj_count() {
            Ok(())
        } else {
            Err(ShapeError::UnknownId)
        }
    };
    Ok(match shape {
        Shape::Terminal => Diagram {
            nodes: vec![],
            arrows: vec![],
            visible: vec![],
        },
        Shape::Product(a, b) => {
            check_obj(a)?;
            check_obj(b)?;
            Diagram {
                nodes: vec![a, b],
                arrows: vec![],
                visible: vec![0, 1],
            }
        }
        Shape::Pullback(f, g) => {
            check_mor(f)?;
            check_mor(g)?;
            if c.dst(f) != c.dst(g) {
                return Err(ShapeError::NotCospan);
            }
            Diagram {
                nodes: vec![c.src(f), c.src(g), c.dst(f)],
                arrows: vec![(0, 2, f), (1, 2, g)],
                visible: vec![0, 1],
            }
        }
        Shape::Equalizer(f, g) => {
            check_mor(f)?;
            check_mor(g)?;
            if c.src(f) != c.src(g) || c.dst(f) != c.dst(g) {
                return Err(ShapeError::NotParallel);
            }
            Diagram {
                nodes: vec![c.src(f), c.dst(f)],
                arrows: vec![(0, 1, f), (0, 1, g)],
                visible: vec![0],
            }
        }
        _ => unreachable!("colimit shapes are dualized first"),
    })
}

/// All cones over `d` with apex `x`, in canonical order.
fn cones(c: &FinCat, d: &Diagram, x: ObjId) -> Vec<Vec<MorId>> {
    let mut out = Vec::new();
    let mut legs = Vec::with_capacity(d.nodes.len());
    extend_cones(c, d, x, &mut legs, &mut out);
    out
}

fn extend_cones(c: &FinCat, d: &Diagram, x: ObjId, legs: &mut Vec<MorId>, out: &mut Vec<Vec<MorId>>) {
    let k = legs.len();
    if k == d.nodes.len() {
        out.push(legs.clone());
        return;
    }
    for &l in c.hom(x, d.nodes[k]) {
        legs.push(l);
        // check every arrow whose endpoints are both assigned
        let ok = d
            .arrows
            .iter()
            .all(|&(i, j, a)| i.max(j) > k || c.compose(a, legs[i]) == legs[j]);
        if ok {
            extend_cones(c, d, x, legs, out);
        }
        legs.pop();
    }
}

fn search(c: &FinCat, d: &Diagram) -> Option<Limit> {
    let all_cones: Vec<Vec<Vec<MorId>>> = c.objects().map(|x| cones(c, d, x)).collect();
    for apex in c.objects() {
        'candidate: for legs in &all_cones[apex.0] {
            let mut checked = 0;
            for x in c.objects() {
                for cone in &all_cones[x.0] {
                    checked += 1;
                    let mediating = c
                        .hom(x, apex)
                        .iter()
                        .filter(|&&u| legs.iter().zip(cone).all(|(&l, &k)| c.compose(l, u) == k))
                        .count();
                    if mediating != 1 {
                        continue 'candidate;
                    }
                }
            }
            return Some(Limit {
                apex,
                legs: d.visible.iter().map(|&i| legs[i]).collect(),
                cones_checked: checked,
            });
        }
    }
    None
}

/// Finds the canonical (least apex, then least legs) (co)limit of `shape`,
/// or `Ok(None)` when no universal (co)cone exists.
pub fn limit_search(c: &FinCat, shape: Shape) -> Result<Option<Limit>, ShapeError> {
    if shape.is_colimit() {
        let op = c.opposite();
        let d = diagram(&op, shape.dual()).map_err(|e| match e {
            ShapeError::NotCospan => ShapeError::NotSpan,
            other => other,
        })?;
        Ok(search(&op, &d))
    } else {
        let d = diagram(c, shape)?;
        Ok(search(c, &d))
    }
}

/// Outcome of [`is_finitely_bicomplete`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bicompleteness {
    pub bicomplete: bool,
    /// First generating shape without a universal (co)cone.
    pub missing: Option<Shape>,
    /// At most one morphism between any two objects; forced for finite
    /// categories with finite products.
    pub thin: bool,
}

/// Terminal and initial objects, binary (co)products and (co)equalizers of
/// every parallel pair, checked in that order.
pub fn is_finitely_bicomplete(c: &FinCat) -> Bicompleteness {
    let thin = c.is_thin();
    let missing =
        generating_shapes(c).find(|&s| limit_search(c, s).expect("generated shapes are well-formed").is_none());
    let bicomplete = missing.is_none();
    // hom(A, B)^n ⊆ hom(A, B^n) stays bounded only if every hom-set has ≤ 1 element
    assert!(
        !bicomplete || thin,
        "finitely bicomplete finite category with a non-trivial hom-set"
    );
    Bicompleteness {
        bicomplete,
        missing,
        thin,
    }
}

fn generating_shapes(c: &FinCat) -> impl Iterator<Item = Shape> + '_ {
    let pairs: Vec<(ObjId, ObjId)> = c
        .objects()
        .flat_map(|a| c.objects().filter(move |&b| b >= a).map(move |b| (a, b)))
        .collect();
    let parallel: Vec<(MorId, MorId)> = c
        .morphisms()
        .flat_map(|f| {
            c.hom(c.src(f), c.dst(f))
                .iter()
                .copied()
                .filter(move |&g| g >= f)
                .map(move |g| (f, g))
        })
        .collect();
    let products: Vec<Shape> = pairs.iter().map(|&(a, b)| Shape::Product(a, b)).collect();
    let coproducts: Vec<Shape> = pairs.iter().map(|&(a, b)| Shape::Coproduct(a, b)).collect();
    let equalizers: Vec<Shape> = parallel.iter().map(|&(f, g)| Shape::Equalizer(f, g)).collect();
    let coequalizers: Vec<Shape> = parallel.iter().map(|&(f, g)| Shape::Coequalizer(f, g)).collect();
    [Shape::Terminal, Shape::Initial]
        .into_iter()
        .chain(products)
        .chain(coproducts)
        .chain(equalizers)
        .chain(coequalizers)
}
