//! Seeded random morphisms and spot checks of the equalizer and coequalizer
//! universal properties.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::base::{Base, Morphism, Obj};
use crate::error::Result;
use crate::report::{Check, Report, Witness};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_morphism(base: Base, dom: Obj, cod: Obj, rng: &mut impl Rng) -> Result<Morphism> {
    let data = match base {
        Base::FinSet => (0..dom).map(|_| rng.gen_range(0..cod.max(1))).collect(),
        Base::FinVec { prime } => (0..dom * cod).map(|_| rng.gen_range(0..prime as usize)).collect(),
    };
    if base.is_finset() && cod == 0 && dom > 0 {
        return Err(crate::error::Error::ShapeMismatch("no maps into the empty set".into()));
    }
    Morphism::new(base, dom, cod, data)
}

/// A random parallel pair with carriers in `1..=max`. Half of the time the pair is
/// made to agree somewhere non-trivially by sharing columns or images.
pub fn random_parallel_pair(base: Base, max: Obj, rng: &mut impl Rng) -> Result<(Morphism, Morphism)> {
    let dom = rng.gen_range(1..=max);
    let cod = rng.gen_range(1..=max);
    let f = random_morphism(base, dom, cod, rng)?;
    let mut g = random_morphism(base, dom, cod, rng)?;
    if rng.gen_bool(0.5) {
        let rows = f.rows();
        let mut data = g.table().to_vec();
        for c in 0..dom {
            if rng.gen_bool(0.5) {
                match base {
                    Base::FinSet => data[c] = f.table()[c],
                    Base::FinVec { .. } => {
                        for (r, row) in rows.iter().enumerate() {
                            data[r * dom + c] = row[c];
                        }
                    }
                }
            }
        }
        g = Morphism::new(base, dom, cod, data)?;
    }
    Ok((f, g))
}

/// Checks the defining equations of the equalizer and coequalizer of `(f, g)` and
/// the factorization of random maps through them.
pub fn universal_property_spot_check(f: &Morphism, g: &Morphism, rng: &mut impl Rng) -> Result<Report> {
    let base = f.base();
    let mut r = Report::new();
    let e = base.equalizer(f, g)?;
    r.record("equalizer equalizes", f.compose(&e.inclusion)?.difference(&g.compose(&e.inclusion)?));
    r.push(Check::flag("equalizer inclusion is a monomorphism", e.inclusion.is_injective()));
    let q = base.coequalizer(f, g)?;
    r.record("coequalizer coequalizes", q.projection.compose(f)?.difference(&q.projection.compose(g)?));
    r.push(Check::flag("coequalizer projection is an epimorphism", q.projection.is_surjective()));
    for t in 0..4 {
        let a = rng.gen_range(1..=3);
        if e.carrier == 0 && base.is_finset() {
            break;
        }
        let k = random_morphism(base, a, e.carrier, rng)?;
        let h = e.inclusion.compose(&k)?;
        match e.factor(&h) {
            Ok(u) => r.record(format!("equalizer factor {t}"), u.difference(&k)),
            Err(err) => r.push(Check::fail(format!("equalizer factor {t}"), Witness::Note(err.to_string()))),
        }
        let c = rng.gen_range(1..=3);
        let k = random_morphism(base, q.carrier, c, rng)?;
        let h = k.compose(&q.projection)?;
        match q.cofactor(&h) {
            Ok(u) => r.record(format!("coequalizer cofactor {t}"), u.difference(&k)),
            Err(err) => r.push(Check::fail(format!("coequalizer cofactor {t}"), Witness::Note(err.to_string()))),
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_checks_pass() {
        let mut g = rng(7);
        for base in [Base::FinSet, Base::FinVec { prime: 2 }, Base::FinVec { prime: 3 }] {
            for _ in 0..20 {
                let (f, h) = random_parallel_pair(base, 4, &mut g).unwrap();
                let r = universal_property_spot_check(&f, &h, &mut g).unwrap();
                assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
            }
        }
    }
}
