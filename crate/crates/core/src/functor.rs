//! Enriched functors `Mod_b -> D` as finite data over a probe family: an object map,
//! a morphism map and strength components `t_{w,M}: w (*) F(M) -> F(w (*) M)`.

use std::collections::BTreeMap;

use crate::base::{Morphism, Obj};
use crate::bimodule::{hom_module_action, tensor_over, tensor_strength, Ambient, LeftModuleObject, TensorResult};
use crate::error::{Error, Result};
use crate::monoid::{compare, hom_object, HomObject, RightModule};
use crate::probe::ProbeFamily;
use crate::report::{Check, Report, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedFunctorData {
    pub target: Ambient,
    /// Parallel to the probe modules.
    pub objects: Vec<RightModule>,
    /// Parallel to the probe morphisms.
    pub morphisms: Vec<Morphism>,
    /// Keyed by `(w, module index)` over the probe tensor grid.
    pub strength: BTreeMap<(Obj, usize), Morphism>,
}

fn note(e: &Error) -> Witness {
    Witness::Note(e.to_string())
}

/// Checks functoriality, the strength axioms and strength naturality on `p`.
pub fn validate_functor(f: &EnrichedFunctorData, p: &ProbeFamily) -> Result<Report> {
    if f.objects.len() != p.modules.len() || f.morphisms.len() != p.morphisms.len() {
        return Err(Error::ProbeNotClosed(format!(
            "functor data covers {} modules and {} morphisms, family {} has {} and {}",
            f.objects.len(),
            f.morphisms.len(),
            p.id,
            p.modules.len(),
            p.morphisms.len()
        )));
    }
    for (w, i, _) in p.tensor_grid() {
        if !f.strength.contains_key(&(w, i)) {
            return Err(Error::ProbeNotClosed(format!("strength at ({w}, {i}) missing")));
        }
    }
    let base = p.monoid.base();
    let mut r = Report::new();
    for (i, x) in f.objects.iter().enumerate() {
        let ok = f.target.contains(x) && x.check().passed();
        r.push(Check::flag(format!("object {i} lies in the target"), ok));
    }
    for (k, pm) in p.morphisms.iter().enumerate() {
        let (d, c) = (&f.objects[pm.dom], &f.objects[pm.cod]);
        r.record(format!("morphism {k} is a target morphism"), d.equivariance(c, &f.morphisms[k]));
    }
    if !r.passed() {
        return Ok(r);
    }
    for (k, pm) in p.morphisms.iter().enumerate() {
        if pm.dom == pm.cod && pm.map.is_identity() {
            let id = base.identity(f.objects[pm.dom].carrier());
            r.record(format!("identity {k}"), f.morphisms[k].difference(&id));
        }
    }
    for &(a, b, ba) in &p.composites {
        compare(
            &mut r,
            &format!("composition {b} o {a}"),
            f.morphisms[b].compose(&f.morphisms[a]),
            Ok(f.morphisms[ba].clone()),
            &[],
        );
    }
    for (w, i, j) in p.tensor_grid() {
        let t = &f.strength[&(w, i)];
        match f.objects[i].tensor_c(w) {
            Ok(src) => r.record(format!("strength ({w}, {i}) is a target morphism"), src.equivariance(&f.objects[j], t)),
            Err(e) => r.push(Check::fail(format!("strength ({w}, {i}) is a target morphism"), note(&e))),
        }
    }
    if !r.passed() {
        return Ok(r);
    }
    for i in 0..p.modules.len() {
        if let Some(t) = f.strength.get(&(1, i)) {
            r.record(format!("strength unit at {i}"), t.difference(&base.identity(t.dom())));
        }
    }
    for (w2, i, j) in p.tensor_grid() {
        for &w1 in &p.objects {
            let (Some(k), Some(t1)) = (p.tensor_index(w1, j), f.strength.get(&(w1, j))) else {
                continue;
            };
            let Some(t12) = f.strength.get(&(base.tensor_obj(w1, w2)?, i)) else {
                continue;
            };
            debug_assert_eq!(p.tensor_index(w1 * w2, i), Some(k));
            let inner = &f.strength[&(w2, i)];
            compare(
                &mut r,
                &format!("strength associativity ({w1}, {w2}, {i})"),
                base.identity(w1).tensor(inner).and_then(|t| t1.compose(&t)),
                Ok(t12.clone()),
                &[],
            );
        }
    }
    for &(w, l, wl) in &p.whiskers {
        let pm = &p.morphisms[l];
        let (Some(ta), Some(tb)) = (f.strength.get(&(w, pm.dom)), f.strength.get(&(w, pm.cod))) else {
            continue;
        };
        compare(
            &mut r,
            &format!("strength natural in module ({w}, morphism {l})"),
            base.identity(w).tensor(&f.morphisms[l]).and_then(|x| tb.compose(&x)),
            f.morphisms[wl].compose(ta),
            &[],
        );
    }
    for (si, s) in p.scalars.iter().enumerate() {
        for &(m, km) in &s.on {
            let (Some(t0), Some(t1)) = (f.strength.get(&(s.k.dom(), m)), f.strength.get(&(s.k.cod(), m))) else {
                continue;
            };
            let id = base.identity(f.objects[m].carrier());
            compare(
                &mut r,
                &format!("strength natural in object (scalar {si}, module {m})"),
                f.morphisms[km].compose(t0),
                s.k.tensor(&id).and_then(|x| t1.compose(&x)),
                &[],
            );
        }
    }
    Ok(r)
}

impl EnrichedFunctorData {
    pub fn identity(p: &ProbeFamily) -> EnrichedFunctorData {
        let base = p.monoid.base();
        EnrichedFunctorData {
            target: Ambient::for_monoid(&p.monoid),
            objects: p.modules.clone(),
            morphisms: p.morphisms.iter().map(|m| m.map.clone()).collect(),
            strength: p
                .tensor_grid()
                .map(|(w, i, j)| ((w, i), base.identity(p.modules[j].carrier())))
                .collect(),
        }
    }

    pub fn forgetful(p: &ProbeFamily) -> EnrichedFunctorData {
        let base = p.monoid.base();
        let mut f = Self::identity(p);
        f.target = Ambient::Base(base);
        f.objects = p.modules.iter().map(|m| RightModule::plain(base, m.carrier())).collect();
        f
    }

    /// A copy with one strength entry replaced.
    pub fn with_strength(&self, key: (Obj, usize), t: Morphism) -> EnrichedFunctorData {
        let mut f = self.clone();
        f.strength.insert(key, t);
        f
    }
}

/// `- (*)_b X` with strength the associator `a_{w,M,X}`.
pub fn tensor_functor_from(x: &LeftModuleObject, p: &ProbeFamily) -> Result<(EnrichedFunctorData, Vec<TensorResult>)> {
    let r = x.check();
    if !r.passed() {
        return Err(Error::InvalidLeftModule(r));
    }
    if *x.monoid() != p.monoid {
        return Err(Error::ActionMismatch);
    }
    let tensors = p.modules.iter().map(|m| tensor_over(m, x)).collect::<Result<Vec<_>>>()?;
    let id_x = x.base().identity(x.carrier());
    let morphisms = p
        .morphisms
        .iter()
        .map(|pm| tensors[pm.dom].map_to(&tensors[pm.cod], &pm.map, &id_x))
        .collect::<Result<Vec<_>>>()?;
    let strength = p
        .tensor_grid()
        .map(|(w, i, j)| Ok(((w, i), tensor_strength(w, &tensors[i], &tensors[j])?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let f = EnrichedFunctorData {
        target: x.ambient(),
        objects: tensors.iter().map(|t| t.object.clone()).collect(),
        morphisms,
        strength,
    };
    Ok((f, tensors))
}

/// `D(X, -): Mod_b -> Mod_{b''}` for a left `b''`-module object `X` in `Mod_b`; the
/// target is the base itself when `b''` is trivial.
pub fn hom_functor(x: &LeftModuleObject, p: &ProbeFamily) -> Result<(EnrichedFunctorData, Vec<HomObject>)> {
    let r = x.check();
    if !r.passed() {
        return Err(Error::InvalidLeftModule(r));
    }
    if *x.object().monoid() != p.monoid {
        return Err(Error::ActionMismatch);
    }
    let base = p.monoid.base();
    let homs = p.modules.iter().map(|m| hom_object(x.object(), m)).collect::<Result<Vec<_>>>()?;
    let objects = homs
        .iter()
        .map(|h| {
            let (c, act) = hom_module_action(x, h)?;
            Ok(RightModule::new_unchecked(x.monoid(), c, act))
        })
        .collect::<Result<Vec<_>>>()?;
    let elements = homs.iter().map(HomObject::elements).collect::<Result<Vec<_>>>()?;
    let n = x.carrier();
    let morphisms = p
        .morphisms
        .iter()
        .map(|pm| {
            let images = elements[pm.dom].iter().map(|e| pm.map.compose(e)).collect::<Result<Vec<_>>>()?;
            homs[pm.cod].factor(&base.assemble(&images, (n, p.modules[pm.cod].carrier()))?)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut strength = BTreeMap::new();
    for (w, i, j) in p.tensor_grid() {
        let mut images = Vec::with_capacity(w * elements[i].len());
        for v in 0..w {
            let pt = base.point(w, v)?;
            for e in &elements[i] {
                images.push(pt.tensor(e)?);
            }
        }
        let family = base.assemble(&images, (n, p.modules[j].carrier()))?;
        strength.insert((w, i), homs[j].factor(&family)?);
    }
    let f = EnrichedFunctorData { target: Ambient::for_monoid(x.monoid()), objects, morphisms, strength };
    Ok((f, homs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    fn z2_probes() -> ProbeFamily {
        ProbeFamily::standard("z2", &registry::z2(), &[registry::z2_point()]).unwrap()
    }

    #[test]
    fn identity_and_forgetful_pass() {
        let p = z2_probes();
        assert!(validate_functor(&EnrichedFunctorData::identity(&p), &p).unwrap().passed());
        assert!(validate_functor(&EnrichedFunctorData::forgetful(&p), &p).unwrap().passed());
    }

    #[test]
    fn tensor_and_hom_functors_pass() {
        let p = z2_probes();
        let bb = LeftModuleObject::regular_bimodule(&p.monoid);
        let (f, _) = tensor_functor_from(&bb, &p).unwrap();
        let r = validate_functor(&f, &p).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let pt = LeftModuleObject::trivial_action(&registry::z2_point());
        let (h, _) = hom_functor(&pt, &p).unwrap();
        let r = validate_functor(&h, &p).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        for t in f.strength.values() {
            assert!(t.is_iso());
        }
    }

    #[test]
    fn corrupted_strength_fails_associativity() {
        let p = z2_probes();
        let f = EnrichedFunctorData::identity(&p);
        let b = p.monoid.carrier();
        let t = &f.strength[&(b, 0)];
        // id_2 (x) (translation by 1) is an automorphism of 2 (*) b_b, so the
        // mutation stays equivariant and only the axioms can catch it
        let shift = crate::Base::FinSet.map(4, 4, vec![1, 0, 3, 2]).unwrap();
        let bad = f.with_strength((b, 0), shift.compose(t).unwrap());
        let r = validate_functor(&bad, &p).unwrap();
        assert!(!r.passed());
        assert!(r.failures().any(|c| c.law.starts_with("strength associativity") && c.witness.is_some()));
    }

    #[test]
    fn matrix_tensor_functor() {
        let f2 = registry::f2();
        let p = ProbeFamily::standard("f2", &f2, &[]).unwrap();
        let (row, _) = registry::matrix_bimodules(2, 2).unwrap();
        let (f, _) = tensor_functor_from(&row, &p).unwrap();
        assert_eq!(f.objects[0].carrier(), 2);
        assert!(validate_functor(&f, &p).unwrap().passed());
    }
}
