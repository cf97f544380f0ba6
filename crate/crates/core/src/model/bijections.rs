//! Round trips between replete reflective subcategories, localizations of
//! the discrete structure and idempotent monads, with their orderings.

use serde::Serialize;

use crate::fincat::FinCat;
use crate::monad::{is_idempotent, monad_from_reflector, monad_morphism_exists, reflector_from_monad, verify_monad};
use crate::reflect::enumerate_replete_reflective;

use super::{enumerate_localizations, reflector_from_structure, verify_model_axioms, ModelError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub reflectors: usize,
    /// Reflector → localization → reflector returns the same members.
    pub refl_loc_refl: bool,
    /// Localization → reflector → localization returns the same classes.
    pub loc_refl_loc: bool,
    /// Reflector → monad → reflector returns the same members.
    pub refl_monad_refl: bool,
    /// Every structure passes the model axioms.
    pub axioms: bool,
    /// Every induced monad satisfies the laws and is idempotent.
    pub monads_idempotent: bool,
    /// Pairs `(A, A')` compared for the orderings.
    pub pairs_checked: usize,
    /// `A ⊆ A'` exactly when `we(A') ⊆ we(A)`.
    pub loc_order_reversing: bool,
    /// `A ⊆ A'` exactly when there is a monad morphism `T_{A'} → T_A`.
    pub monad_order_matches: bool,
    pub failures: Vec<String>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn bijection_suite(c: &FinCat) -> Result<BijectionReport, ModelError> {
    let reflectors = enumerate_replete_reflective(c);
    let poset = enumerate_localizations(c)?;
    let monads: Vec<_> = reflectors.iter().map(|r| monad_from_reflector(c, r)).collect();
    let mut failures = Vec::new();
    let label = |i: usize| format!("{{{}}}", reflectors[i].subcat.names(c).join(","));

    let mut refl_loc_refl = true;
    let mut loc_refl_loc = true;
    let mut refl_monad_refl = true;
    let mut axioms = true;
    let mut monads_idempotent = true;
    for (i, (r, m)) in reflectors.iter().zip(&poset.structures).enumerate() {
        if !verify_model_axioms(m).passes() {
            axioms = false;
            failures.push(format!("{}: model axioms fail", label(i)));
        }
        match reflector_from_structure(m) {
            Ok(back) => {
                if back.subcat != r.subcat {
                    refl_loc_refl = false;
                    failures.push(format!("{}: localization recovers a different subcategory", label(i)));
                }
                match super::localization_from_reflector(c, &back) {
                    Ok(again) if again.same_classes(m) => {}
                    _ => {
                        loc_refl_loc = false;
                        failures.push(format!("{}: structure not reproduced from its reflector", label(i)));
                    }
                }
            }
            Err(e) => {
                refl_loc_refl = false;
                loc_refl_loc = false;
                failures.push(format!("{}: {e}", label(i)));
            }
        }
        let monad = &monads[i];
        if verify_monad(c, monad).ok().flatten().is_some() || !is_idempotent(c, monad) {
            monads_idempotent = false;
            failures.push(format!("{}: induced monad is not an idempotent monad", label(i)));
        }
        match reflector_from_monad(c, monad) {
            Ok(back) if back.subcat == r.subcat => {}
            _ => {
                refl_monad_refl = false;
                failures.push(format!("{}: monad recovers a different subcategory", label(i)));
            }
        }
    }

    let n = reflectors.len();
    let mut pairs = 0;
    let mut loc_order_reversing = true;
    let mut monad_order_matches = true;
    for i in 0..n {
        for j in 0..n {
            pairs += 1;
            let contained = reflectors[i].subcat.is_subset(&reflectors[j].subcat);
            let we_reversed = poset.structures[j].we.is_subset(&poset.structures[i].we);
            if contained != we_reversed {
                loc_order_reversing = false;
                failures.push(format!(
                    "order mismatch between {} and {} (localizations)",
                    label(i),
                    label(j)
                ));
            }
            let monad_edge = monad_morphism_exists(c, &monads[j], &monads[i]).is_some();
            if contained != monad_edge {
                monad_order_matches = false;
                failures.push(format!("order mismatch between {} and {} (monads)", label(i), label(j)));
            }
        }
    }
    Ok(BijectionReport {
        reflectors: n,
        refl_loc_refl,
        loc_refl_loc,
        refl_monad_refl,
        axioms,
        monads_idempotent,
        pairs_checked: pairs,
        loc_order_reversing,
        monad_order_matches,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_and_lattices_round_trip() {
        let diamond = FinCat::preorder(&["bot", "l", "r", "top"], |i, j| i == j || i == 0 || j == 3).unwrap();
        for c in [FinCat::chain(1), FinCat::chain(3), diamond] {
            let r = bijection_suite(&c).unwrap();
            assert!(r.holds(), "{:?}", r.failures);
            assert_eq!(r.pairs_checked, r.reflectors * r.reflectors);
        }
    }

    #[test]
    fn not_bicomplete_is_an_error() {
        assert!(bijection_suite(&FinCat::discrete(&["a", "b"])).is_err());
    }
}
