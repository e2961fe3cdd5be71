//! Inputs shared by the benchmarks.

use morita_core::sample::{random_morphism, rng};
use morita_core::{Base, Morphism, Result};

/// A seeded parallel pair of `n x n` matrices over `F_p`.
pub fn matrix_pair(p: u32, n: usize, seed: u64) -> Result<(Morphism, Morphism)> {
    let base = Base::finvec(p)?;
    let mut r = rng(seed);
    Ok((random_morphism(base, n, n, &mut r)?, random_morphism(base, n, n, &mut r)?))
}

/// A seeded parallel pair of maps between `n`-element sets.
pub fn set_pair(n: usize, seed: u64) -> Result<(Morphism, Morphism)> {
    let mut r = rng(seed);
    Ok((random_morphism(Base::FinSet, n, n, &mut r)?, random_morphism(Base::FinSet, n, n, &mut r)?))
}

#[cfg(test)]
mod tests {
    #[test]
    fn pairs_are_parallel() {
        let (f, g) = super::matrix_pair(3, 5, 1).unwrap();
        assert_eq!((f.dom(), f.cod()), (g.dom(), g.cod()));
        let (f, g) = super::set_pair(6, 1).unwrap();
        assert_eq!((f.dom(), f.cod()), (g.dom(), g.cod()));
    }
}
