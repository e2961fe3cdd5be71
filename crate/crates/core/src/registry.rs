//! Named standard instances.

use crate::base::{Base, Morphism};
use crate::bimodule::{Bimodule, LeftModuleObject};
use crate::error::{Error, Result};
use crate::monoid::{Monoid, RightModule};

pub const TRIVIAL: &str = "trivial";
pub const Z2: &str = "z2";
pub const IDEM3: &str = "idem3";
pub const F2: &str = "f2";
pub const F3: &str = "f3";
pub const M2F2: &str = "m2f2";

/// Largest `p^(n^2)` accepted by [`matrix_monoid`].
pub const MATRIX_SIZE_BOUND: u128 = 1 << 40;

fn finset_monoid(n: usize, unit: usize, mult: impl Fn(usize, usize) -> usize) -> Result<Monoid> {
    let s = Base::FinSet;
    let table = (0..n * n).map(|k| mult(k / n, k % n)).collect();
    Monoid::new(s, n, s.map(1, n, vec![unit])?, s.map(n * n, n, table)?)
}

pub fn z2() -> Monoid {
    finset_monoid(2, 0, |a, b| (a + b) % 2).expect("Z/2 is a monoid")
}

/// `{0, 1, 2}` with unit `0` and `x * y = y` whenever `y != 0`.
pub fn idem3() -> Monoid {
    finset_monoid(3, 0, |x, y| if y == 0 { x } else { y }).expect("idempotent monoid")
}

pub fn f2() -> Monoid {
    Monoid::trivial(Base::FinVec { prime: 2 })
}

pub fn f3() -> Monoid {
    Monoid::trivial(Base::FinVec { prime: 3 })
}

pub fn m2f2() -> Monoid {
    matrix_monoid(2, 2).expect("M_2(F_2)")
}

pub fn standard_monoids() -> Vec<(&'static str, Monoid)> {
    vec![
        (TRIVIAL, Monoid::trivial(Base::FinSet)),
        (Z2, z2()),
        (IDEM3, idem3()),
        (F2, f2()),
        (F3, f3()),
        (M2F2, m2f2()),
    ]
}

pub fn monoid_by_name(name: &str) -> Result<Monoid> {
    standard_monoids()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, m)| m)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// The matrix algebra `M_n(F_p)` with `E_ij` at index `i * n + j`.
pub fn matrix_monoid(p: u32, n: usize) -> Result<Monoid> {
    let base = Base::finvec(p)?;
    if n == 0 {
        return Err(Error::ShapeMismatch("matrix size must be positive".into()));
    }
    let size = (p as u128).checked_pow((n * n) as u32);
    if size.map_or(true, |s| s > MATRIX_SIZE_BOUND) {
        return Err(Error::SizeBoundExceeded(format!("{p}^({n}^2) elements")));
    }
    let d = n * n;
    let mut mult = vec![0; d * d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let col = (i * n + j) * d + j * n + l;
                mult[(i * n + l) * d * d + col] = 1;
            }
        }
    }
    let mut unit = vec![0; d];
    for i in 0..n {
        unit[i * n + i] = 1;
    }
    Monoid::new(base, d, Morphism::new(base, 1, d, unit)?, Morphism::new(base, d * d, d, mult)?)
}

/// Row vectors `F_p^{1 x n}` as an `(F_p, M_n)`-bimodule and column vectors
/// `F_p^{n x 1}` as an `(M_n, F_p)`-bimodule.
pub fn matrix_bimodules(p: u32, n: usize) -> Result<(Bimodule, Bimodule)> {
    let mn = matrix_monoid(p, n)?;
    let base = mn.base();
    let d = n * n;
    // e_j (x) E_kl -> delta_jk e_l
    let mut act = vec![0; n * n * d];
    // E_kl (x) e_j -> delta_lj e_k
    let mut lact = vec![0; n * d * n];
    for k in 0..n {
        for l in 0..n {
            act[l * n * d + k * d + k * n + l] = 1;
            lact[k * d * n + (k * n + l) * n + l] = 1;
        }
    }
    let row_obj = RightModule::new(&mn, n, Morphism::new(base, n * d, n, act)?)?;
    let fp = Monoid::trivial(base);
    let row = LeftModuleObject::new(&fp, &row_obj, base.identity(n))?;
    let col_obj = RightModule::plain(base, n);
    let col = LeftModuleObject::new(&mn, &col_obj, Morphism::new(base, d * n, n, lact)?)?;
    Ok((row, col))
}

/// The one-point `Z/2`-set.
pub fn z2_point() -> RightModule {
    let s = Base::FinSet;
    RightModule::new(&z2(), 1, s.map(2, 1, vec![0, 0]).expect("shape")).expect("point module")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_monoids_are_valid() {
        for (name, m) in standard_monoids() {
            assert!(m.check().passed(), "{name}");
            assert!(m.regular_module().check().passed(), "{name}");
        }
        assert_eq!(m2f2().carrier(), 4);
    }

    #[test]
    fn matrix_monoid_multiplies_units() {
        let m = matrix_monoid(3, 2).unwrap();
        // E_01 E_10 = E_00
        let col = (0 * 2 + 1) * 4 + (1 * 2 + 0);
        let rows = m.mult().rows();
        assert_eq!((0..4).map(|r| rows[r][col]).collect::<Vec<_>>(), vec![1, 0, 0, 0]);
        assert!(matches!(matrix_monoid(2, 7), Err(Error::SizeBoundExceeded(_))));
    }
}
