//! Evaluation at `b_b`, the coreflection `lambda^F: - (*)_b F(b_b) => F`, the
//! cocontinuity criteria and the adjunction `- (*)_b X -| D(X, -)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::base::Morphism;
use crate::bimodule::{hom_from_left_module, iota_b, tensor_over, tensor_strength, LeftModuleObject, TensorResult};
use crate::error::{Error, Result};
use crate::functor::{validate_functor, EnrichedFunctorData};
use crate::monoid::{compare, hom_object, RightModule};
use crate::probe::ProbeFamily;
use crate::report::{Check, Report, Witness};

/// Components of a natural transformation, keyed by probe module index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NatTransData {
    pub components: BTreeMap<usize, Morphism>,
}

impl NatTransData {
    pub fn is_iso(&self) -> bool {
        self.components.values().all(Morphism::is_iso)
    }
}

fn validated(f: &EnrichedFunctorData, p: &ProbeFamily) -> Result<()> {
    let r = validate_functor(f, p)?;
    if !r.passed() {
        return Err(Error::ValidationFailed(r));
    }
    Ok(())
}

/// `F(b_b)` with the left action `F(gamma_{b_b}) o t_{b, b_b}`.
pub fn evaluate_at_b(f: &EnrichedFunctorData, p: &ProbeFamily) -> Result<LeftModuleObject> {
    let (_, g) = p.require_regular_closure()?;
    let b = p.monoid.carrier();
    let t = f
        .strength
        .get(&(b, p.regular()))
        .ok_or_else(|| Error::ProbeNotClosed("strength at (b, b_b) missing".into()))?;
    let rho = f.morphisms[g].compose(t)?;
    LeftModuleObject::new(&p.monoid, &f.objects[p.regular()], rho)
}

#[derive(Clone, Debug)]
pub struct Lambda {
    pub left: LeftModuleObject,
    pub tensors: BTreeMap<usize, TensorResult>,
    pub nat: NatTransData,
    pub report: Report,
}

/// The components `lambda_M`, each the unique cofactor of `F(gamma_M) o t_{|M|, b_b}`
/// through `cq_{M, F(b_b)}`, with naturality and the value at `b_b` checked.
pub fn lambda(f: &EnrichedFunctorData, p: &ProbeFamily) -> Result<Lambda> {
    validated(f, p)?;
    let x = evaluate_at_b(f, p)?;
    let mut tensors = BTreeMap::new();
    let mut nat = NatTransData::default();
    let mut report = Report::new();
    for i in p.presented_modules() {
        let m = &p.modules[i];
        let t = tensor_over(m, &x)?;
        let g = p.gamma_index(i).expect("presented module");
        let strength = f
            .strength
            .get(&(m.carrier(), p.regular()))
            .ok_or_else(|| Error::ProbeNotClosed(format!("strength at ({}, b_b) missing", m.carrier())))?;
        let h = f.morphisms[g].compose(strength)?;
        match t.cofactor(&h) {
            Ok(l) => {
                nat.components.insert(i, l);
            }
            Err(e) => {
                report.push(Check::fail(format!("lambda {i} exists"), Witness::Note(e.to_string())));
                return Err(Error::ValidationFailed(report));
            }
        }
        tensors.insert(i, t);
    }
    let (_, iota) = iota_b(&x)?;
    report.record("lambda at b_b is iota", nat.components[&p.regular()].difference(&iota.forward));
    let id_x = p.monoid.base().identity(x.carrier());
    for (k, pm) in p.morphisms.iter().enumerate() {
        let (Some(ld), Some(lc)) = (nat.components.get(&pm.dom), nat.components.get(&pm.cod)) else {
            continue;
        };
        compare(
            &mut report,
            &format!("lambda natural at morphism {k}"),
            tensors[&pm.dom].map_to(&tensors[&pm.cod], &pm.map, &id_x).and_then(|m| lc.compose(&m)),
            f.morphisms[k].compose(ld),
            &[],
        );
    }
    let base = p.monoid.base();
    for (w, i, j) in p.tensor_grid() {
        let (Some(li), Some(lj)) = (nat.components.get(&i), nat.components.get(&j)) else {
            continue;
        };
        let a = tensor_strength(w, &tensors[&i], &tensors[&j]);
        compare(
            &mut report,
            &format!("lambda enriched natural ({w}, {i})"),
            a.and_then(|a| lj.compose(&a)),
            base.identity(w).tensor(li).and_then(|x| f.strength[&(w, i)].compose(&x)),
            &[],
        );
    }
    Ok(Lambda { left: x, tensors, nat, report })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocontinuityVerdict {
    pub probe_family: String,
    pub strength_iso: bool,
    pub preserves_coeq: bool,
    pub lambda_iso: bool,
    pub relation_pairs_checked: usize,
    pub note: String,
}

pub const CRITERION_II_NOTE: &str =
    "enriched cocontinuity in full generality is not checked directly; it is equivalent to the criteria above";

/// Strength invertibility, preservation of the probe relation-pair coequalizers and
/// invertibility of `lambda`. Errors with `ValidationFailed` if the functor data is
/// invalid or the three criteria disagree.
pub fn cocontinuity_verdict(f: &EnrichedFunctorData, p: &ProbeFamily) -> Result<(CocontinuityVerdict, Report)> {
    let lam = lambda(f, p)?;
    let (strength_iso, preserves_coeq, criteria) = tensor_and_coeq_criteria(f, p)?;
    let mut report = Report::new();
    report.extend_prefixed("lambda: ", lam.report.clone());
    report.extend(criteria);
    let mut lambda_iso = true;
    for (&i, l) in &lam.nat.components {
        let ok = l.is_iso();
        lambda_iso &= ok;
        report.push(Check::flag(format!("lambda {i} invertible"), ok));
    }
    let consistent = lambda_iso == (strength_iso && preserves_coeq);
    let verdict = CocontinuityVerdict {
        probe_family: p.id.clone(),
        strength_iso,
        preserves_coeq,
        lambda_iso,
        relation_pairs_checked: p.relation_pairs.len(),
        note: CRITERION_II_NOTE.to_string(),
    };
    let laws_hold = lam.report.passed();
    if !consistent || !laws_hold {
        let mut r = report;
        r.push(Check::flag("criteria agree", consistent));
        return Err(Error::ValidationFailed(r));
    }
    Ok((verdict, report))
}

/// Strength invertibility and relation-pair preservation, without `lambda`.
pub fn tensor_and_coeq_criteria(f: &EnrichedFunctorData, p: &ProbeFamily) -> Result<(bool, bool, Report)> {
    validated(f, p)?;
    let mut report = Report::new();
    let mut strength_iso = true;
    for (&(w, i), t) in &f.strength {
        let ok = t.is_iso();
        strength_iso &= ok;
        report.push(Check::flag(format!("strength ({w}, {i}) invertible"), ok));
    }
    let mut preserves_coeq = true;
    for rp in &p.relation_pairs {
        let ok = preserves_pair(f, rp.left, rp.right, rp.gamma)?;
        preserves_coeq &= ok;
        report.push(Check::flag(format!("coequalizer of seed {} preserved", rp.seed), ok));
    }
    Ok((strength_iso, preserves_coeq, report))
}

fn preserves_pair(f: &EnrichedFunctorData, left: usize, right: usize, gamma: usize) -> Result<bool> {
    let (fl, fr, fg) = (&f.morphisms[left], &f.morphisms[right], &f.morphisms[gamma]);
    let q = fl.base().coequalizer(fl, fr)?;
    Ok(q.cofactor(fg).map(|k| k.is_iso()).unwrap_or(false))
}

/// Square (`lambda^G o (id (*) xi_{b_b}) = xi o lambda^F`) at every presented probe
/// module, after checking that `xi` is natural.
pub fn naturality_in_f(
    f: &EnrichedFunctorData,
    g: &EnrichedFunctorData,
    xi: &NatTransData,
    p: &ProbeFamily,
) -> Result<Report> {
    for i in 0..p.modules.len() {
        let c = xi.components.get(&i).ok_or_else(|| Error::InvalidNatTrans(format!("component {i} missing")))?;
        if c.dom() != f.objects[i].carrier() || c.cod() != g.objects[i].carrier() {
            return Err(Error::InvalidNatTrans(format!("component {i} has the wrong shape")));
        }
    }
    let mut r = Report::new();
    for (i, c) in &xi.components {
        r.record(format!("xi {i} is a target morphism"), f.objects[*i].equivariance(&g.objects[*i], c));
    }
    for (k, pm) in p.morphisms.iter().enumerate() {
        compare(
            &mut r,
            &format!("xi natural at morphism {k}"),
            g.morphisms[k].compose(&xi.components[&pm.dom]),
            xi.components[&pm.cod].compose(&f.morphisms[k]),
            &[],
        );
    }
    let base = p.monoid.base();
    for (w, i, j) in p.tensor_grid() {
        compare(
            &mut r,
            &format!("xi enriched natural ({w}, {i})"),
            xi.components[&j].compose(&f.strength[&(w, i)]),
            base.identity(w).tensor(&xi.components[&i]).and_then(|x| g.strength[&(w, i)].compose(&x)),
            &[],
        );
    }
    if !r.passed() {
        return Ok(r);
    }
    let lf = lambda(f, p)?;
    let lg = lambda(g, p)?;
    let xb = &xi.components[&p.regular()];
    for (&i, l) in &lf.nat.components {
        let m = &p.modules[i];
        let id_m = base.identity(m.carrier());
        compare(
            &mut r,
            &format!("lambda natural in F at {i}"),
            lf.tensors[&i].map_to(&lg.tensors[&i], &id_m, xb).and_then(|x| lg.nat.components[&i].compose(&x)),
            xi.components[&i].compose(l),
            &[],
        );
    }
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct Adjunction {
    /// `eta_z: z -> D(X, z (*) X)`, keyed by probe module.
    pub unit: NatTransData,
    /// `eps_Y: D(X, Y) (*)_b X -> Y`, parallel to the supplied objects.
    pub counit: Vec<Morphism>,
    pub triangles: Report,
}

/// Unit `eta_z = (cq)_* o Cv`, counit `eps_Y` with `eps_Y o cq = Ev`, and both
/// triangle identities on the probe modules and the supplied objects of `D`.
pub fn adjunction(x: &LeftModuleObject, p: &ProbeFamily, ys: &[RightModule]) -> Result<Adjunction> {
    let r = x.check();
    if !r.passed() {
        return Err(Error::InvalidLeftModule(r));
    }
    if *x.monoid() != p.monoid {
        return Err(Error::ActionMismatch);
    }
    let base = p.monoid.base();
    let n = x.carrier();
    let id_x = base.identity(n);
    let mut report = Report::new();
    let mut unit = NatTransData::default();

    let counit_at = |y: &RightModule| -> Result<(RightModule, TensorResult, Morphism)> {
        let gy = hom_from_left_module(x, y)?;
        let hom = hom_object(x.object(), y)?;
        let t = tensor_over(&gy, x)?;
        let ev = base.uncurry(hom.inclusion(), n, y.carrier())?;
        let eps = t.cofactor(&ev)?;
        Ok((gy, t, eps))
    };

    for (i, z) in p.modules.iter().enumerate() {
        let tz = tensor_over(z, x)?;
        let hom = hom_object(x.object(), &tz.object)?;
        let eta = hom.factor(&base.curry(tz.projection(), z.carrier(), n)?)?;
        let (gfz, t_gfz, eps) = counit_at(&tz.object)?;
        report.record(format!("unit {i} is equivariant"), z.equivariance(&gfz, &eta));
        let f_eta = tz.map_to(&t_gfz, &eta, &id_x)?;
        report.record(format!("triangle at module {i}"), eps.compose(&f_eta)?.difference(&base.identity(tz.carrier())));
        unit.components.insert(i, eta);
    }
    let mut counit = Vec::new();
    for (k, y) in ys.iter().enumerate() {
        let (gy, t, eps) = counit_at(y)?;
        report.record(format!("counit {k} is a target morphism"), t.object.equivariance(y, &eps));
        let hom_gfy = hom_object(x.object(), &t.object)?;
        let eta = hom_gfy.factor(&base.curry(t.projection(), gy.carrier(), n)?)?;
        let hom_y = hom_object(x.object(), y)?;
        let images = hom_gfy.elements()?.iter().map(|e| eps.compose(e)).collect::<Result<Vec<_>>>()?;
        let g_eps = hom_y.factor(&base.assemble(&images, (n, y.carrier()))?)?;
        report.record(format!("triangle at object {k}"), g_eps.compose(&eta)?.difference(&base.identity(gy.carrier())));
        counit.push(eps);
    }
    Ok(Adjunction { unit, counit, triangles: report })
}

/// `X = F(b_b)` with its evaluation action, together with `lambda^F`.
pub fn coreflect(f: &EnrichedFunctorData, p: &ProbeFamily) -> Result<(LeftModuleObject, Lambda)> {
    let lam = lambda(f, p)?;
    Ok((lam.left.clone(), lam))
}

/// Checks that `f: X -> Y` is an isomorphism of left module objects.
pub fn left_module_iso_check(x: &LeftModuleObject, y: &LeftModuleObject, f: &Morphism) -> Report {
    let mut r = Report::new();
    if x.monoid() != y.monoid() {
        r.push(Check::fail("same acting monoid", Witness::Note("monoids differ".into())));
        return r;
    }
    r.record("morphism in the ambient", x.object().equivariance(y.object(), f));
    let base = x.base();
    compare(
        &mut r,
        "commutes with left actions",
        f.compose(x.rho()),
        base.identity(x.monoid().carrier()).tensor(f).and_then(|t| y.rho().compose(&t)),
        &[],
    );
    r.record("invertible", f.invertibility_witness());
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::Bimodule;
    use crate::functor::{hom_functor, tensor_functor_from};
    use crate::registry;

    fn z2_probes() -> ProbeFamily {
        ProbeFamily::standard("z2", &registry::z2(), &[registry::z2_point()]).unwrap()
    }

    #[test]
    fn identity_coreflects_to_regular() {
        let p = z2_probes();
        let id = EnrichedFunctorData::identity(&p);
        let (x, lam) = coreflect(&id, &p).unwrap();
        assert_eq!(x, LeftModuleObject::regular_bimodule(&p.monoid));
        assert!(lam.report.passed());
        assert!(lam.nat.is_iso());
        let (v, _) = cocontinuity_verdict(&id, &p).unwrap();
        assert!(v.strength_iso && v.preserves_coeq && v.lambda_iso);
    }

    #[test]
    fn forgetful_evaluates_to_regular_left() {
        let p = z2_probes();
        let x = evaluate_at_b(&EnrichedFunctorData::forgetful(&p), &p).unwrap();
        assert_eq!(x, LeftModuleObject::regular_left(&p.monoid));
    }

    #[test]
    fn fixed_points_are_not_cocontinuous() {
        let p = z2_probes();
        let pt = LeftModuleObject::trivial_action(&registry::z2_point());
        let (fix, _) = hom_functor(&pt, &p).unwrap();
        let (v, _) = cocontinuity_verdict(&fix, &p).unwrap();
        assert!(v.strength_iso);
        assert!(!v.preserves_coeq);
        assert!(!v.lambda_iso);
    }

    #[test]
    fn tensor_functor_round_trip() {
        let p = z2_probes();
        let bb: Bimodule = LeftModuleObject::regular_bimodule(&p.monoid);
        let (f, _) = tensor_functor_from(&bb, &p).unwrap();
        let (x, lam) = coreflect(&f, &p).unwrap();
        assert!(lam.nat.is_iso());
        let (_, iota) = iota_b(&bb).unwrap();
        assert!(left_module_iso_check(&x, &bb, &iota.forward).passed());
    }

    #[test]
    fn naturality_in_functor() {
        let p = z2_probes();
        let id = EnrichedFunctorData::identity(&p);
        let xi = NatTransData {
            components: p.modules.iter().enumerate().map(|(i, m)| (i, m.base().identity(m.carrier()))).collect(),
        };
        assert!(naturality_in_f(&id, &id, &xi, &p).unwrap().passed());

        let bb = LeftModuleObject::regular_bimodule(&p.monoid);
        let (t, tensors) = tensor_functor_from(&bb, &p).unwrap();
        let j = NatTransData {
            components: tensors
                .iter()
                .enumerate()
                .map(|(i, tr)| (i, tr.cofactor(tr.right.action()).unwrap()))
                .collect(),
        };
        let r = naturality_in_f(&t, &id, &j, &p).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());

        // a constant map into one orbit is not natural
        let mut bad = xi.clone();
        bad.components.insert(0, crate::Base::FinSet.map(2, 2, vec![0, 0]).unwrap());
        let r = naturality_in_f(&id, &id, &bad, &p).unwrap();
        assert!(r.failures().any(|c| c.witness.is_some()));
    }

    #[test]
    fn adjunction_triangles() {
        let p = z2_probes();
        let bb = LeftModuleObject::regular_bimodule(&p.monoid);
        let a = adjunction(&bb, &p, &p.modules[..3]).unwrap();
        assert!(a.triangles.passed(), "{:?}", a.triangles.failures().collect::<Vec<_>>());

        let f2 = registry::f2();
        let pf = ProbeFamily::standard("f2", &f2, &[]).unwrap();
        let (row, _) = registry::matrix_bimodules(2, 2).unwrap();
        let m2 = row.object().monoid().clone();
        let ys = [row.object().clone(), m2.regular_module()];
        let a = adjunction(&row, &pf, &ys).unwrap();
        assert!(a.triangles.passed(), "{:?}", a.triangles.failures().collect::<Vec<_>>());
    }
}
