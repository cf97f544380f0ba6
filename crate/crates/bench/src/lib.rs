//! Inputs shared by the benchmarks.

use discoloc_core::FinCat;

/// The subsets of a `k`-element set ordered by inclusion.
pub fn boolean_lattice(k: u32) -> FinCat {
    let names: Vec<String> = (0..1u32 << k).map(|s| format!("s{s}")).collect();
    FinCat::preorder(&names, |a, b| a & !b == 0).expect("a preorder")
}

/// An `n × n` integer matrix with entries in `-3..=3`, deterministic in `seed`.
pub fn matrix(n: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    (state >> 33) as i64 % 7 - 3
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_sizes() {
        let c = boolean_lattice(2);
        assert_eq!(c.obj_count(), 4);
        assert_eq!(c.mor_count(), 9);
    }

    #[test]
    fn matrices_are_deterministic() {
        assert_eq!(matrix(4, 1), matrix(4, 1));
        assert!(matrix(5, 2).iter().flatten().all(|x| (-3..=3).contains(x)));
    }
}
