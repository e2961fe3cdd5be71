//! Default probe families and the registries of named functors and left module
//! objects used by the test suites and the CLI.

use crate::base::{Base, Morphism};
use crate::bimodule::LeftModuleObject;
use crate::error::{Error, Result};
use crate::functor::{hom_functor, tensor_functor_from, EnrichedFunctorData};
use crate::monoid::{Monoid, RightModule};
use crate::probe::ProbeFamily;
use crate::registry;

/// The one-point module of a finite-set monoid.
pub fn point_module(m: &Monoid) -> Result<RightModule> {
    let s = m.base();
    if !s.is_finset() {
        return Err(Error::BaseMismatch("point module needs a finite-set monoid".into()));
    }
    RightModule::new(m, 1, s.map(m.carrier(), 1, vec![0; m.carrier()])?)
}

/// Seeds of the default family for a registered monoid. Finite-set monoids get
/// their one-point module so that non-free behaviour is visible.
pub fn default_seeds(name: &str, m: &Monoid) -> Result<Vec<RightModule>> {
    Ok(match name {
        registry::Z2 | registry::IDEM3 => vec![point_module(m)?],
        registry::F2 | registry::F3 => vec![RightModule::plain(m.base(), 2)],
        registry::M2F2 => {
            let (row, _) = registry::matrix_bimodules(2, 2)?;
            vec![row.object().clone()]
        }
        _ => Vec::new(),
    })
}

/// The default family of a registered monoid, with id `"<monoid>/standard"`.
pub fn default_probes(name: &str) -> Result<ProbeFamily> {
    let m = registry::monoid_by_name(name)?;
    ProbeFamily::standard(&format!("{name}/standard"), &m, &default_seeds(name, &m)?)
}

#[derive(Clone, Debug)]
pub struct NamedFunctor {
    pub name: String,
    pub probes: ProbeFamily,
    pub functor: EnrichedFunctorData,
    /// Known answer where there is one.
    pub cocontinuous: Option<bool>,
}

fn named(name: &str, probes: &ProbeFamily, functor: EnrichedFunctorData, cocontinuous: Option<bool>) -> NamedFunctor {
    NamedFunctor { name: name.to_string(), probes: probes.clone(), functor, cocontinuous }
}

/// The same family without seeds beyond `b_b`, with id `"<monoid>/regular"`.
pub fn regular_probes(name: &str) -> Result<ProbeFamily> {
    let m = registry::monoid_by_name(name)?;
    ProbeFamily::standard(&format!("{name}/regular"), &m, &[])
}

/// All registered functors over the default families. `z2/fix` (fixed points of a
/// `Z/2`-set) is the non-cocontinuous one.
pub fn functor_registry() -> Result<Vec<NamedFunctor>> {
    functor_registry_over(default_probes)
}

/// The registry with every functor rebuilt over `probes(monoid name)`.
pub fn functor_registry_over(probes: impl Fn(&str) -> Result<ProbeFamily>) -> Result<Vec<NamedFunctor>> {
    let mut out = Vec::new();
    let z2p = probes(registry::Z2)?;
    let z2 = &z2p.monoid;
    out.push(named("z2/identity", &z2p, EnrichedFunctorData::identity(&z2p), Some(true)));
    out.push(named("z2/forgetful", &z2p, EnrichedFunctorData::forgetful(&z2p), Some(true)));
    let (t, _) = tensor_functor_from(&LeftModuleObject::regular_bimodule(z2), &z2p)?;
    out.push(named("z2/tensor-regular", &z2p, t, Some(true)));
    let (h, _) = hom_functor(&LeftModuleObject::trivial_action(&z2.regular_module()), &z2p)?;
    out.push(named("z2/hom-regular", &z2p, h, Some(true)));
    let (fix, _) = hom_functor(&LeftModuleObject::trivial_action(&point_module(z2)?), &z2p)?;
    out.push(named("z2/fix", &z2p, fix, Some(false)));

    let ip = probes(registry::IDEM3)?;
    out.push(named("idem3/identity", &ip, EnrichedFunctorData::identity(&ip), Some(true)));
    let (h, _) = hom_functor(&LeftModuleObject::trivial_action(&point_module(&ip.monoid)?), &ip)?;
    out.push(named("idem3/hom-point", &ip, h, None));

    let tp = probes(registry::TRIVIAL)?;
    let (t, _) = tensor_functor_from(&LeftModuleObject::trivial_action(&point_module(z2)?), &tp)?;
    out.push(named("trivial/tensor-z2-point", &tp, t, Some(true)));

    let (row, col) = registry::matrix_bimodules(2, 2)?;
    let fp = probes(registry::F2)?;
    let (t, _) = tensor_functor_from(&row, &fp)?;
    out.push(named("f2/tensor-row", &fp, t, Some(true)));
    let f3p = probes(registry::F3)?;
    out.push(named("f3/forgetful", &f3p, EnrichedFunctorData::forgetful(&f3p), Some(true)));

    let mp = probes(registry::M2F2)?;
    let (t, _) = tensor_functor_from(&col, &mp)?;
    out.push(named("m2f2/tensor-col", &mp, t, Some(true)));
    let (h, _) = hom_functor(&LeftModuleObject::trivial_action(row.object()), &mp)?;
    out.push(named("m2f2/hom-row", &mp, h, Some(true)));
    Ok(out)
}

pub fn functor_by_name(name: &str) -> Result<NamedFunctor> {
    functor_registry()?
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Registered left module objects with the default family of their acting monoid.
pub fn left_module_registry() -> Result<Vec<(String, LeftModuleObject, ProbeFamily)>> {
    let mut out = Vec::new();
    for (name, m) in registry::standard_monoids() {
        out.push((format!("{name}/regular"), LeftModuleObject::regular_bimodule(&m), default_probes(name)?));
    }
    let z2 = registry::z2();
    out.push(("z2/left-regular".into(), LeftModuleObject::regular_left(&z2), default_probes(registry::Z2)?));
    out.push((
        "trivial/z2-point".into(),
        LeftModuleObject::trivial_action(&point_module(&z2)?),
        default_probes(registry::TRIVIAL)?,
    ));
    let (row, col) = registry::matrix_bimodules(2, 2)?;
    out.push(("f2/row".into(), row, default_probes(registry::F2)?));
    out.push(("m2f2/col".into(), col, default_probes(registry::M2F2)?));
    Ok(out)
}

/// A finite-set monoid that is not associative: `Z/3` with `1 + 1` sent to `0`.
pub fn broken_z3() -> (Base, usize, Morphism, Morphism) {
    let s = Base::FinSet;
    let mut table: Vec<usize> = (0..9).map(|k| (k / 3 + k % 3) % 3).collect();
    table[4] = 0;
    (s, 3, s.map(1, 3, vec![0]).expect("unit"), s.map(9, 3, table).expect("mult"))
}
