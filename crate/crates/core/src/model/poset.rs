//! The poset of localizations of the discrete structure, and its dual.

use std::fmt::Write;

use serde::Serialize;

use crate::fincat::FinCat;
use crate::reflect::{enumerate_replete_reflective, find_coreflector, FullSubcat};

use super::{
    colocalization_from_coreflector, localization_from_reflector, transport_from_opposite, ModelError, ModelStructure,
    Provenance,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetChecks {
    /// `A ⊆ A'` exactly when `we(A') ⊆ we(A)`.
    pub order_reversing: bool,
    /// Distinct subcategories give distinct structures.
    pub injective: bool,
}

/// Structures ordered by inclusion of weak equivalences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationPoset {
    pub structures: Vec<ModelStructure>,
    /// `(i, j)` with `we_i ⊆ we_j`, `i ≠ j`.
    pub order: Vec<(usize, usize)>,
    /// Covering relations of `order`.
    pub hasse: Vec<(usize, usize)>,
    pub checks: PosetChecks,
}

fn members(m: &ModelStructure) -> Option<&FullSubcat> {
    match &m.provenance {
        Provenance::Localization { members } | Provenance::Colocalization { members } => Some(members),
        Provenance::Discrete | Provenance::Supplied => None,
    }
}

impl LocalizationPoset {
    pub fn new(structures: Vec<ModelStructure>) -> Self {
        let n = structures.len();
        let leq = |i: usize, j: usize| structures[i].we.is_subset(&structures[j].we);
        let order: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && leq(i, j))
            .collect();
        let hasse = order
            .iter()
            .copied()
            .filter(|&(i, j)| !(0..n).any(|k| k != i && k != j && leq(i, k) && leq(k, j)))
            .collect();
        let order_reversing = (0..n).all(|i| {
            (0..n).all(|j| match (members(&structures[i]), members(&structures[j])) {
                (Some(a), Some(b)) => a.is_subset(b) == leq(j, i),
                _ => true,
            })
        });
        let injective = (0..n).all(|i| (i + 1..n).all(|j| !structures[i].same_classes(&structures[j])));
        LocalizationPoset {
            structures,
            order,
            hasse,
            checks: PosetChecks {
                order_reversing,
                injective,
            },
        }
    }

    pub fn len(&self) -> usize {
        self.structures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structures.is_empty()
    }

    /// Graphviz rendering of the Hasse diagram; an edge points from the
    /// smaller structure to the larger one.
    pub fn to_dot(&self, c: &FinCat, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{name}\" {{");
        let _ = writeln!(out, "  rankdir=BT;");
        for (i, m) in self.structures.iter().enumerate() {
            let subcat = members(m).map_or_else(|| "all".to_string(), |s| s.names(c).join(","));
            let _ = writeln!(out, "  n{i} [label=\"{{{subcat}}} |we|={}\"];", m.we.len());
        }
        for &(i, j) in &self.hasse {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// One localization per replete reflective subcategory.
pub fn enumerate_localizations(c: &FinCat) -> Result<LocalizationPoset, ModelError> {
    let structures = enumerate_replete_reflective(c)
        .iter()
        .map(|r| localization_from_reflector(c, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LocalizationPoset::new(structures))
}

/// Colocalizations of `c`, obtained as localizations of `c^op` carried
/// back. Each transported structure is checked against the coreflector
/// onto the same subcategory.
pub fn colocalizations_via_op(c: &FinCat) -> Result<LocalizationPoset, ModelError> {
    let op = c.opposite();
    let on_op = enumerate_localizations(&op)?;
    let mut out = Vec::with_capacity(on_op.len());
    for m in &on_op.structures {
        let transported = transport_from_opposite(c, m);
        let subcat = members(&transported).expect("localizations carry members").clone();
        let direct = colocalization_from_coreflector(c, &find_coreflector(c, &subcat)?)?;
        debug_assert!(direct.same_classes(&transported));
        out.push(transported);
    }
    Ok(LocalizationPoset::new(out))
}

/// Colocalizations built directly from coreflectors, without the opposite.
pub fn colocalization_poset(c: &FinCat) -> Result<LocalizationPoset, ModelError> {
    let structures = crate::reflect::enumerate_replete_coreflective(c)
        .iter()
        .map(|r| colocalization_from_coreflector(c, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LocalizationPoset::new(structures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_counts() {
        for n in 2..=5 {
            let p = enumerate_localizations(&FinCat::chain(n)).unwrap();
            assert_eq!(p.len(), 1 << (n - 1));
            assert!(p.checks.order_reversing && p.checks.injective);
        }
    }

    #[test]
    fn chain2_poset_is_a_two_chain() {
        let c = FinCat::chain(2);
        let p = enumerate_localizations(&c).unwrap();
        assert_eq!(p.order.len(), 1);
        assert_eq!(p.hasse, p.order);
        let dot = p.to_dot(&c, "chain2");
        assert!(dot.starts_with("digraph \"chain2\" {"));
        assert!(dot.contains("->"));
    }

    #[test]
    fn colocalizations_of_chain2() {
        let c = FinCat::chain(2);
        let via_op = colocalizations_via_op(&c).unwrap();
        let direct = colocalization_poset(&c).unwrap();
        assert_eq!(via_op.len(), 2);
        assert_eq!(via_op.order, direct.order);
        for (a, b) in via_op.structures.iter().zip(&direct.structures) {
            assert!(a.same_classes(b));
        }
    }

    #[test]
    fn discrete_is_both() {
        let c = FinCat::chain(3);
        let loc = enumerate_localizations(&c).unwrap();
        let coloc = colocalizations_via_op(&c).unwrap();
        let discrete = super::super::discrete_structure(&c).unwrap();
        assert!(loc.structures.iter().any(|m| m.same_classes(&discrete)));
        assert!(coloc.structures.iter().any(|m| m.same_classes(&discrete)));
    }
}
