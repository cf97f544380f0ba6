//! Limits, reflections and localizations on random finite preorders,
//! compared with answers computed from the order relation alone.

use std::collections::BTreeSet;

use discoloc_core::lifting::{llp_class, rlp_class};
use discoloc_core::model::{enumerate_localizations, verify_model_axioms, Provenance};
use discoloc_core::reflect::enumerate_replete_reflective;
use discoloc_core::{is_finitely_bicomplete, limit_search, FinCat, MorphismClass, ObjId, Shape};
use proptest::prelude::*;

/// A reflexive, transitive relation on `0..n`, as a matrix.
#[derive(Clone, Debug)]
struct Order {
    n: usize,
    leq: Vec<Vec<bool>>,
}

impl Order {
    fn closure(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            leq[a % n][b % n] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Order { n, leq }
    }

    fn names(&self) -> Vec<String> {
        (0..self.n).map(|i| format!("v{i}")).collect()
    }

    fn category(&self) -> FinCat {
        FinCat::preorder(&self.names(), |i, j| self.leq[i][j]).unwrap()
    }

    fn index(&self, c: &FinCat, x: ObjId) -> usize {
        c.obj_name(x)[1..].parse().unwrap()
    }

    /// Greatest lower bounds of `set`, all of them (they form one
    /// isomorphism class when there are any).
    fn meets(&self, set: &[usize]) -> BTreeSet<usize> {
        let lower: Vec<usize> = (0..self.n).filter(|&z| set.iter().all(|&s| self.leq[z][s])).collect();
        lower
            .iter()
            .copied()
            .filter(|&m| lower.iter().all(|&z| self.leq[z][m]))
            .collect()
    }

    fn joins(&self, set: &[usize]) -> BTreeSet<usize> {
        let upper: Vec<usize> = (0..self.n).filter(|&z| set.iter().all(|&s| self.leq[s][z])).collect();
        upper
            .iter()
            .copied()
            .filter(|&m| upper.iter().all(|&z| self.leq[m][z]))
            .collect()
    }

    fn is_lattice(&self) -> bool {
        !self.meets(&[]).is_empty()
            && !self.joins(&[]).is_empty()
            && (0..self.n)
                .all(|a| (0..self.n).all(|b| !self.meets(&[a, b]).is_empty() && !self.joins(&[a, b]).is_empty()))
    }

    /// Closure operators up to the order's isomorphisms, identified by the
    /// set of closed elements.
    fn closed_sets(&self) -> BTreeSet<BTreeSet<usize>> {
        let n = self.n;
        let mut out = BTreeSet::new();
        for code in 0..n.pow(n as u32) {
            let j: Vec<usize> = (0..n).map(|i| code / n.pow(i as u32) % n).collect();
            let extensive = (0..n).all(|x| self.leq[x][j[x]]);
            let idempotent = (0..n).all(|x| self.leq[j[j[x]]][j[x]] && self.leq[j[x]][j[j[x]]]);
            let monotone = (0..n).all(|x| (0..n).all(|y| !self.leq[x][y] || self.leq[j[x]][j[y]]));
            if extensive && idempotent && monotone {
                let image: BTreeSet<usize> = j.iter().copied().collect();
                out.insert(
                    (0..n)
                        .filter(|&x| image.iter().any(|&i| self.leq[x][i] && self.leq[i][x]))
                        .collect(),
                );
            }
        }
        out
    }

    /// On a lattice, closed sets of closure operators are the subsets that
    /// contain the top and are closed under binary meets.
    fn moore_families(&self) -> BTreeSet<BTreeSet<usize>> {
        let top = *self.meets(&[]).iter().next().expect("lattice");
        (0u32..1 << self.n)
            .map(|mask| (0..self.n).filter(|&i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
            .filter(|s| {
                s.contains(&top)
                    && s.iter()
                        .all(|&a| s.iter().all(|&b| self.meets(&[a, b]).iter().all(|m| s.contains(m))))
            })
            .collect()
    }
}

fn order(max: usize) -> impl Strategy<Value = Order> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..2 * n).prop_map(move |pairs| Order::closure(n, &pairs))
    })
}

/// Distributive lattices: families of subsets of a 3-element set closed
/// under union and intersection, containing the empty and full sets.
fn lattice() -> impl Strategy<Value = Order> {
    proptest::collection::btree_set(0u8..8, 0..6).prop_map(|seed| {
        let mut sets: BTreeSet<u8> = seed;
        sets.insert(0);
        sets.insert(7);
        loop {
            let before = sets.len();
            let snapshot: Vec<u8> = sets.iter().copied().collect();
            for &a in &snapshot {
                for &b in &snapshot {
                    sets.insert(a | b);
                    sets.insert(a & b);
                }
            }
            if sets.len() == before {
                break;
            }
        }
        let elems: Vec<u8> = sets.into_iter().collect();
        let n = elems.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| elems[i] & !elems[j] == 0)
            .collect();
        Order::closure(n, &pairs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_and_coproducts_are_meets_and_joins(o in order(5)) {
        let c = o.category();
        for a in c.objects() {
            for b in c.objects() {
                let (i, j) = (o.index(&c, a), o.index(&c, b));
                let product = limit_search(&c, Shape::Product(a, b)).unwrap();
                let meets = o.meets(&[i, j]);
                prop_assert_eq!(product.is_some(), !meets.is_empty());
                if let Some(l) = product {
                    prop_assert!(meets.contains(&o.index(&c, l.apex)));
                }
                let coproduct = limit_search(&c, Shape::Coproduct(a, b)).unwrap();
                let joins = o.joins(&[i, j]);
                prop_assert_eq!(coproduct.is_some(), !joins.is_empty());
                if let Some(l) = coproduct {
                    prop_assert!(joins.contains(&o.index(&c, l.apex)));
                }
            }
        }
        let terminal = limit_search(&c, Shape::Terminal).unwrap();
        prop_assert_eq!(terminal.is_some(), !o.meets(&[]).is_empty());
        prop_assert_eq!(is_finitely_bicomplete(&c).bicomplete, o.is_lattice());
    }

    #[test]
    fn pullbacks_are_meets(o in order(5)) {
        let c = o.category();
        for f in c.morphisms() {
            for g in c.morphisms().filter(|&g| c.dst(g) == c.dst(f)) {
                let (x, y) = (o.index(&c, c.src(f)), o.index(&c, c.src(g)));
                let pb = limit_search(&c, Shape::Pullback(f, g)).unwrap();
                let meets = o.meets(&[x, y]);
                prop_assert_eq!(pb.is_some(), !meets.is_empty());
                if let Some(l) = pb {
                    prop_assert!(meets.contains(&o.index(&c, l.apex)));
                }
            }
        }
    }

    #[test]
    fn opposite_is_an_involution(o in order(5)) {
        let c = o.category();
        prop_assert_eq!(c.opposite().opposite().to_raw(), c.to_raw());
    }

    #[test]
    fn reflectors_give_hom_bijections(o in order(5)) {
        let c = o.category();
        let reflectors = enumerate_replete_reflective(&c);
        let found: BTreeSet<BTreeSet<usize>> = reflectors
            .iter()
            .map(|r| r.subcat.members.iter().map(|&x| o.index(&c, x)).collect())
            .collect();
        prop_assert_eq!(found, o.closed_sets());
        for r in &reflectors {
            for x in c.objects() {
                let (fx, eta) = (r.functor.on_obj(x), r.unit.at(x));
                prop_assert_eq!(c.src(eta), x);
                prop_assert_eq!(c.dst(eta), fx);
                for &a in &r.subcat.members {
                    let pulled: BTreeSet<_> = c.hom(fx, a).iter().map(|&k| c.compose(k, eta)).collect();
                    let direct: BTreeSet<_> = c.hom(x, a).iter().copied().collect();
                    prop_assert_eq!(pulled, direct);
                    prop_assert_eq!(c.hom(fx, a).len(), c.hom(x, a).len());
                }
            }
        }
    }

    #[test]
    fn lifting_classes_form_a_galois_connection(o in order(4), picks in proptest::collection::vec(any::<bool>(), 16)) {
        let c = o.category();
        let mut e = MorphismClass::new();
        for (f, keep) in c.morphisms().zip(picks.iter().cycle()) {
            if *keep {
                e.insert(f);
            }
        }
        let r = rlp_class(&c, &e);
        prop_assert!(e.is_subset(&llp_class(&c, &r)));
        prop_assert_eq!(rlp_class(&c, &llp_class(&c, &r)), r.clone());
        prop_assert!(MorphismClass::isomorphisms(&c).is_subset(&r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lattice_localizations_match_closure_operators(o in lattice()) {
        let c = o.category();
        prop_assert!(is_finitely_bicomplete(&c).bicomplete);
        let poset = enumerate_localizations(&c).unwrap();
        let members: BTreeSet<BTreeSet<usize>> = poset
            .structures
            .iter()
            .map(|m| match &m.provenance {
                Provenance::Localization { members } => members.members.iter().map(|&x| o.index(&c, x)).collect(),
                _ => unreachable!(),
            })
            .collect();
        prop_assert_eq!(members, o.moore_families());
        prop_assert!(poset.checks.order_reversing && poset.checks.injective);
        for m in &poset.structures {
            prop_assert!(verify_model_axioms(m).passes());
        }
    }
}
