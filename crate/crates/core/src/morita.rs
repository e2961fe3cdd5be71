//! Compact generators, the End-monoid comparison, equivalences built from a
//! generator and Morita certificates.

use serde::{Deserialize, Serialize};

use crate::base::{Base, Iso, Morphism};
use crate::bimodule::{
    associator, compose_bimodules, end_monoid, jmath_b, tensor_over, Bimodule, LeftModuleObject, TensorResult,
};
use crate::error::{Error, Result};
use crate::ew::{adjunction, tensor_and_coeq_criteria, NatTransData};
use crate::functor::{hom_functor, tensor_functor_from, EnrichedFunctorData};
use crate::monoid::{check_monoid_morphism, compare, Monoid, RightModule};
use crate::probe::ProbeFamily;
use crate::registry;
use crate::report::{Check, Report, Witness};

/// Carrier bound for the monoid-isomorphism search.
pub const ISO_SEARCH_MAX: usize = 6;
/// Node budget for the monoid-isomorphism search.
pub const ISO_SEARCH_BUDGET: usize = 2_000_000;

pub const COMPACT_NOTE: &str =
    "a compact object that is not a generator still yields a fully faithful embedding with a right adjoint";

#[derive(Clone, Debug)]
pub struct GeneratorReport {
    pub probe_family: String,
    pub compact: bool,
    pub generator: bool,
    pub end_monoid: Monoid,
    pub comparison: Option<Morphism>,
    pub report: Report,
}

/// Whether `D(X, -)` preserves tensors and probe coequalizers (compactness) and
/// reflects isomorphisms among probe morphisms (generation), plus a monoid
/// isomorphism `m -> End(X)` when one is found.
pub fn generator_report(x: &RightModule, m: &Monoid, p: &ProbeFamily) -> Result<GeneratorReport> {
    if *x.monoid() != p.monoid {
        return Err(Error::ActionMismatch);
    }
    let lx = LeftModuleObject::trivial_action(x);
    let (hom, _) = hom_functor(&lx, p)?;
    let (strength_iso, preserves_coeq, criteria) = tensor_and_coeq_criteria(&hom, p)?;
    let mut report = Report::new();
    report.extend_prefixed("compact: ", criteria);
    let compact = strength_iso && preserves_coeq;
    let generator = reflects_isos(&hom, p, &mut report);
    report.push(Check::flag("conservative on probes", generator));
    let (end, end_hom) = end_monoid(x)?;
    let comparison = if *x == p.monoid.regular_module() && *m == p.monoid {
        Some(x.gamma_bar()?)
    } else {
        find_monoid_iso(m, &end)
    };
    if let Some(f) = &comparison {
        report.extend_prefixed("comparison ", check_monoid_morphism(f, m, &end));
        report.push(Check::flag("comparison invertible", f.is_iso()));
    } else {
        report.push(Check::flag("comparison found", false));
    }
    if compact && !generator {
        report.push(Check::fail("generator", Witness::Note(COMPACT_NOTE.into())));
    }
    debug_assert_eq!(end_hom.carrier(), end.carrier());
    Ok(GeneratorReport { probe_family: p.id.clone(), compact, generator, end_monoid: end, comparison, report })
}

fn reflects_isos(f: &EnrichedFunctorData, p: &ProbeFamily, report: &mut Report) -> bool {
    let mut ok = true;
    for (k, pm) in p.morphisms.iter().enumerate() {
        if !pm.map.is_iso() && f.morphisms[k].is_iso() {
            ok = false;
            report.push(Check::fail(
                format!("reflects isomorphism at morphism {k}"),
                Witness::Note(format!("non-invertible {} -> {} sent to an isomorphism", pm.dom, pm.cod)),
            ));
        }
    }
    ok
}

/// Bounded backtracking search for a monoid isomorphism `from -> to`.
pub fn find_monoid_iso(from: &Monoid, to: &Monoid) -> Option<Morphism> {
    let n = from.carrier();
    if n != to.carrier() || from.base() != to.base() || n > ISO_SEARCH_MAX {
        return None;
    }
    let base = from.base();
    let choices: Vec<Morphism> = match base {
        Base::FinSet => (0..n).map(|k| base.point(n, k).ok()).collect::<Option<_>>()?,
        Base::FinVec { prime } => {
            let total = (prime as usize).checked_pow(n as u32)?;
            (1..total)
                .map(|mut code| {
                    let mut v = vec![0; n];
                    for slot in v.iter_mut().rev() {
                        *slot = code % prime as usize;
                        code /= prime as usize;
                    }
                    Morphism::new(base, 1, n, v).ok()
                })
                .collect::<Option<_>>()?
        }
    };
    // product of basis elements i, j of `from` as coordinates
    let products: Vec<Vec<Morphism>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let pi = base.point(n, i)?;
                    let pj = base.point(n, j)?;
                    from.mult().compose(&pi.tensor(&pj)?)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()
        .ok()?;
    let mut budget = ISO_SEARCH_BUDGET;
    let mut images: Vec<Morphism> = Vec::new();
    search(from, to, &choices, &products, &mut images, &mut budget)
}

fn assemble_columns(base: Base, images: &[Morphism], n: usize) -> Option<Morphism> {
    match base {
        Base::FinSet => base.map(images.len(), n, images.iter().map(|m| m.table()[0]).collect()).ok(),
        Base::FinVec { .. } => {
            let cols = images.len();
            let mut data = vec![0; n * cols];
            for (c, m) in images.iter().enumerate() {
                for r in 0..n {
                    data[r * cols + c] = m.table()[r];
                }
            }
            Morphism::new(base, cols, n, data).ok()
        }
    }
}

/// Value of the partial map on a vector supported on the assigned coordinates.
fn partial_apply(base: Base, images: &[Morphism], v: &Morphism, n: usize) -> Option<Morphism> {
    let k = images.len();
    match base {
        Base::FinSet => {
            let e = v.table()[0];
            (e < k).then(|| images[e].clone())
        }
        Base::FinVec { .. } => {
            if v.table()[k..].iter().any(|&c| c != 0) {
                return None;
            }
            let f = assemble_columns(base, images, n)?;
            let restricted = Morphism::new(base, 1, k, v.table()[..k].to_vec()).ok()?;
            f.compose(&restricted).ok()
        }
    }
}

fn search(
    from: &Monoid,
    to: &Monoid,
    choices: &[Morphism],
    products: &[Vec<Morphism>],
    images: &mut Vec<Morphism>,
    budget: &mut usize,
) -> Option<Morphism> {
    let base = from.base();
    let n = from.carrier();
    if images.len() == n {
        let f = assemble_columns(base, images, n)?;
        let ok = check_monoid_morphism(&f, from, to).passed() && f.is_iso();
        return ok.then_some(f);
    }
    for c in choices {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        images.push(c.clone());
        if consistent(from, to, images, products) {
            if let Some(f) = search(from, to, choices, products, images, budget) {
                return Some(f);
            }
        }
        images.pop();
    }
    None
}

fn consistent(from: &Monoid, to: &Monoid, images: &[Morphism], products: &[Vec<Morphism>]) -> bool {
    let base = from.base();
    let n = from.carrier();
    let k = images.len();
    let Some(f) = assemble_columns(base, images, n) else { return false };
    if base.is_finset() {
        let mut seen = vec![false; n];
        if images.iter().any(|m| std::mem::replace(&mut seen[m.table()[0]], true)) {
            return false;
        }
    } else if !f.is_injective() {
        return false;
    }
    if let Some(u) = partial_apply(base, images, from.unit(), n) {
        if u != *to.unit() {
            return false;
        }
    }
    let i = k - 1;
    for j in 0..k {
        for (a, b) in [(i, j), (j, i)] {
            let Some(lhs) = partial_apply(base, images, &products[a][b], n) else { continue };
            let Ok(rhs) = images[a].tensor(&images[b]).and_then(|t| to.mult().compose(&t)) else { return false };
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// An equivalence `Mod_b ~ Mod_{b'}` as functor data with the round-trip transformations.
#[derive(Clone, Debug)]
pub struct EquivalencePair {
    pub alpha: EnrichedFunctorData,
    pub beta: EnrichedFunctorData,
    /// `z -> beta(alpha(z))` at modules of the `b` probe family.
    pub unit: NatTransData,
    /// `alpha(beta(Y)) -> Y` at modules of the `b'` probe family.
    pub counit: NatTransData,
    pub report: Report,
}

/// The equivalence `- (*)_b X -| D(X, -)` for a compact generator `X` of `Mod_{b'}`
/// and a monoid isomorphism `f: b -> End(X)`.
pub fn equivalence_from_generator(
    x: &RightModule,
    f: &Morphism,
    b: &Monoid,
    pd: &ProbeFamily,
    pb: &ProbeFamily,
) -> Result<EquivalencePair> {
    let gr = generator_report(x, b, pd)?;
    if !(gr.compact && gr.generator) {
        return Err(Error::NotAGenerator(gr.report));
    }
    let mut check = check_monoid_morphism(f, b, &gr.end_monoid);
    check.push(Check::flag("comparison invertible", f.is_iso()));
    if !check.passed() {
        return Err(Error::ComparisonNotIso(check));
    }
    let base = b.base();
    let (_, end_hom) = end_monoid(x)?;
    let rho = base.uncurry(&end_hom.inclusion().compose(f)?, x.carrier(), x.carrier())?;
    let lx = LeftModuleObject::new(b, x, rho)?;
    let (alpha, alpha_t) = tensor_functor_from(&lx, pb)?;
    let (beta, _) = hom_functor(&lx, pd)?;
    let adj = adjunction(&lx, pb, &pd.modules)?;
    let mut report = Report::new();
    report.extend_prefixed("triangles: ", adj.triangles.clone());
    for (i, eta) in &adj.unit.components {
        report.push(Check::flag(format!("unit {i} invertible"), eta.is_iso()));
    }
    for (k, eps) in adj.counit.iter().enumerate() {
        report.push(Check::flag(format!("counit {k} invertible"), eps.is_iso()));
    }
    // eta at b_b factors as (iota^{-1})_* o f
    let t_reg: &TensorResult = &alpha_t[pb.regular()];
    let iota_inv = t_reg.projection().compose(&b.unit().tensor(&base.identity(x.carrier()))?)?;
    let target = crate::monoid::hom_object(x, &t_reg.object)?;
    let images = end_hom.elements()?.iter().map(|e| iota_inv.compose(e)).collect::<Result<Vec<_>>>()?;
    let push = target.factor(&base.assemble(&images, (x.carrier(), t_reg.carrier()))?)?;
    compare(&mut report, "unit at b_b", Ok(adj.unit.components[&pb.regular()].clone()), push.compose(f), &[]);
    let mut conservative = Report::new();
    let ok = reflects_isos(&beta, pd, &mut conservative);
    report.extend(conservative);
    report.push(Check::flag("beta conservative on probes", ok));
    let counit = NatTransData { components: adj.counit.into_iter().enumerate().collect() };
    Ok(EquivalencePair { alpha, beta, unit: adj.unit, counit, report })
}

/// Bimodules `x: (b, b')`, `y: (b', b)` with bimodule isomorphisms
/// `phi: x (*)_{b'} y -> b` and `psi: y (*)_b x -> b'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaCertificate {
    pub x: Bimodule,
    pub y: Bimodule,
    pub phi: Morphism,
    pub psi: Morphism,
}

fn check_bimodule_iso(report: &mut Report, tag: &str, src: &Bimodule, dst: &Bimodule, f: &Morphism) {
    report.record(format!("{tag} right equivariant"), src.object().equivariance(dst.object(), f));
    let base = src.base();
    compare(
        report,
        &format!("{tag} left equivariant"),
        f.compose(src.rho()),
        base.identity(src.monoid().carrier()).tensor(f).and_then(|t| dst.rho().compose(&t)),
        &[],
    );
    report.record(format!("{tag} invertible"), f.invertibility_witness());
}

/// Round-trip isomorphism `(z (*) x) (*) y -> z` built from `phi`, the associator
/// and `j^b`.
fn round_trip(z: &RightModule, x: &Bimodule, y: &Bimodule, phi: &Morphism) -> Result<(Morphism, TensorResult)> {
    let base = z.base();
    let (xy, _) = compose_bimodules(x, y)?;
    let assoc = associator(z, x, y)?;
    let t_zxy = tensor_over(z, &xy)?;
    let (t_zb, j) = jmath_b(z)?;
    let mid = t_zxy.map_to(&t_zb, &base.identity(z.carrier()), phi)?;
    let theta = j.forward.compose(&mid)?.compose(&assoc.inverse)?;
    let zx = tensor_over(z, x)?;
    let outer = tensor_over(&zx.object, y)?;
    Ok((theta, outer))
}

fn round_trips(
    report: &mut Report,
    tag: &str,
    p: &ProbeFamily,
    x: &Bimodule,
    y: &Bimodule,
    phi: &Morphism,
) -> Result<NatTransData> {
    let base = p.monoid.base();
    let mut nat = NatTransData::default();
    let mut outers = Vec::new();
    for (i, z) in p.modules.iter().enumerate() {
        let (theta, outer) = round_trip(z, x, y, phi)?;
        report.record(format!("{tag} round trip {i} invertible"), theta.invertibility_witness());
        report.record(format!("{tag} round trip {i} equivariant"), outer.object.equivariance(z, &theta));
        nat.components.insert(i, theta);
        outers.push(outer);
    }
    let inner: Vec<TensorResult> = p.modules.iter().map(|z| tensor_over(z, x)).collect::<Result<_>>()?;
    for (k, pm) in p.morphisms.iter().enumerate() {
        let lx = inner[pm.dom].map_to(&inner[pm.cod], &pm.map, &base.identity(x.carrier()))?;
        let lxy = outers[pm.dom].map_to(&outers[pm.cod], &lx, &base.identity(y.carrier()))?;
        compare(
            report,
            &format!("{tag} round trip natural at morphism {k}"),
            nat.components[&pm.cod].compose(&lxy),
            pm.map.compose(&nat.components[&pm.dom]),
            &[],
        );
    }
    Ok(nat)
}

/// Checks `phi`, `psi` and the round trips of `- (*) x` and `- (*) y` on the two
/// probe families. The triangle identities of the resulting pair are not checked.
pub fn verify_certificate(
    cert: &MoritaCertificate,
    pb: &ProbeFamily,
    pd: &ProbeFamily,
) -> Result<(Report, Option<EquivalencePair>)> {
    let (x, y) = (&cert.x, &cert.y);
    let (b, d) = (x.monoid(), x.object().monoid());
    if y.monoid() != d || y.object().monoid() != b || pb.monoid != *b || pd.monoid != *d {
        return Err(Error::MonoidMismatch);
    }
    let mut report = Report::new();
    report.extend_prefixed("x: ", x.check());
    report.extend_prefixed("y: ", y.check());
    if !report.passed() {
        return Ok((report, None));
    }
    let (xy, _) = compose_bimodules(x, y)?;
    let (yx, _) = compose_bimodules(y, x)?;
    let bb = LeftModuleObject::regular_bimodule(b);
    let dd = LeftModuleObject::regular_bimodule(d);
    check_shape(&mut report, "phi", &cert.phi, xy.carrier(), b.carrier());
    check_shape(&mut report, "psi", &cert.psi, yx.carrier(), d.carrier());
    if !report.passed() {
        return Ok((report, None));
    }
    check_bimodule_iso(&mut report, "phi", &xy, &bb, &cert.phi);
    check_bimodule_iso(&mut report, "psi", &yx, &dd, &cert.psi);
    if !report.passed() {
        return Ok((report, None));
    }
    let unit = round_trips(&mut report, "b", pb, x, y, &cert.phi)?;
    let counit = round_trips(&mut report, "b'", pd, y, x, &cert.psi)?;
    let (alpha, _) = tensor_functor_from(x, pb)?;
    let (beta, _) = tensor_functor_from(y, pd)?;
    let ok = report.passed();
    let pair = EquivalencePair { alpha, beta, unit, counit, report: report.clone() };
    Ok((report, ok.then_some(pair)))
}

fn check_shape(report: &mut Report, tag: &str, f: &Morphism, dom: usize, cod: usize) {
    let ok = f.dom() == dom && f.cod() == cod;
    if ok {
        report.push(Check::pass(format!("{tag} shape")));
    } else {
        report.push(Check::fail(
            format!("{tag} shape"),
            Witness::Note(format!("expected {dom} -> {cod}, got {} -> {}", f.dom(), f.cod())),
        ));
    }
}

/// The certificate `F_p ~ M_n(F_p)` from row and column vectors, with `phi` induced
/// by the evaluation pairing and `psi` by the outer product.
pub fn build_matrix_example(p: u32, n: usize) -> Result<MoritaCertificate> {
    let (x, y) = registry::matrix_bimodules(p, n)?;
    let base = x.base();
    let t_xy = tensor_over(x.object(), &y)?;
    let t_yx = tensor_over(y.object(), &x)?;
    let diag: Vec<usize> = (0..n * n).map(|k| usize::from(k / n == k % n)).collect();
    let pairing = Morphism::new(base, n * n, 1, diag)?;
    let phi = t_xy.cofactor(&pairing)?;
    let outer = base.identity(n * n);
    let psi = t_yx.cofactor(&outer)?;
    Iso::of(phi.clone())?;
    Iso::of(psi.clone())?;
    Ok(MoritaCertificate { x, y, phi, psi })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDims {
    pub xy: usize,
    pub yx: usize,
}

impl MoritaCertificate {
    pub fn tensor_dims(&self) -> Result<TensorDims> {
        Ok(TensorDims {
            xy: tensor_over(self.x.object(), &self.y)?.carrier(),
            yx: tensor_over(self.y.object(), &self.x)?.carrier(),
        })
    }
}
