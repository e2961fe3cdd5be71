//! Left module objects in a tensored category `D`, bimodules, the End monoid and the
//! tensor product over a monoid.
//!
//! `D` is either the base category or right modules over a monoid `b'`. Objects of `D`
//! are represented uniformly as [`RightModule`]s: a bare base object is a module over
//! the trivial monoid, with the identity action. The tensoring `w (*) X` is then
//! `X.tensor_c(w)` in both cases, and coequalizers in `D` are computed on carriers with
//! the action transported along the chosen section.

use serde::{Deserialize, Serialize};

use crate::base::{Base, Iso, Morphism, Obj, QuotientObject, SplitEpi};
use crate::error::{Error, Result};
use crate::monoid::{check_monoid_morphism, compare, hom_object, HomObject, Monoid, RightModule};
use crate::report::{Check, Report, Witness};

/// The tensored category that left module objects live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    Base(Base),
    Modules(Monoid),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmbientKind {
    BaseSelf,
    ModulesOver,
}

impl Ambient {
    /// Modules over `m`, collapsing to the base itself when `m` is trivial.
    pub fn for_monoid(m: &Monoid) -> Ambient {
        if m.is_trivial() {
            Ambient::Base(m.base())
        } else {
            Ambient::Modules(m.clone())
        }
    }

    pub fn kind(&self) -> AmbientKind {
        match self {
            Ambient::Base(_) => AmbientKind::BaseSelf,
            Ambient::Modules(_) => AmbientKind::ModulesOver,
        }
    }

    pub fn base(&self) -> Base {
        match self {
            Ambient::Base(b) => *b,
            Ambient::Modules(m) => m.base(),
        }
    }

    /// The acting monoid of objects of this category (trivial for the base).
    pub fn monoid(&self) -> Monoid {
        match self {
            Ambient::Base(b) => Monoid::trivial(*b),
            Ambient::Modules(m) => m.clone(),
        }
    }

    /// The unit-like generator: `c` in the base, `b'_{b'}` in modules.
    pub fn regular_object(&self) -> RightModule {
        self.monoid().regular_module()
    }

    pub fn contains(&self, x: &RightModule) -> bool {
        *x.monoid() == self.monoid()
    }

    pub fn is_morphism(&self, x: &RightModule, y: &RightModule, f: &Morphism) -> bool {
        self.contains(x) && self.contains(y) && x.equivariance(y, f).is_none()
    }
}

/// `X` in `D` with a left action `rho: b (*) X -> X` of a monoid `b`. When `D` is a
/// module category this is a bimodule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeftModuleObject {
    monoid: Monoid,
    object: RightModule,
    rho: Morphism,
}

pub type Bimodule = LeftModuleObject;

pub fn check_left_module(m: &Monoid, x: &RightModule, rho: &Morphism) -> Report {
    let mut r = Report::new();
    let base = m.base();
    let b = m.carrier();
    let n = x.carrier();
    let shape_ok = rho.base() == base && rho.dom() == b.saturating_mul(n) && rho.cod() == n;
    if !shape_ok {
        r.push(Check::fail(
            "left action shape",
            Witness::Note(format!("expected {} -> {n}, got {} -> {}", b.saturating_mul(n), rho.dom(), rho.cod())),
        ));
        return r;
    }
    r.push(Check::pass("left action shape"));
    let idx = base.identity(n);
    compare(&mut r, "left unit action", m.unit().tensor(&idx).and_then(|t| rho.compose(&t)), Ok(idx.clone()), &[n]);
    compare(
        &mut r,
        "left action associativity",
        m.mult().tensor(&idx).and_then(|t| rho.compose(&t)),
        base.identity(b).tensor(rho).and_then(|t| rho.compose(&t)),
        &[b, b, n],
    );
    if !x.monoid().is_trivial() {
        match x.tensor_c(b) {
            Ok(bx) => r.record("left action equivariant", bx.equivariance(x, rho)),
            Err(e) => r.push(Check::fail("left action equivariant", Witness::Note(e.to_string()))),
        }
    }
    r
}

impl LeftModuleObject {
    pub fn new(monoid: &Monoid, object: &RightModule, rho: Morphism) -> Result<LeftModuleObject> {
        let r = check_left_module(monoid, object, &rho);
        if !r.passed() {
            return Err(Error::InvalidLeftModule(r));
        }
        Ok(LeftModuleObject { monoid: monoid.clone(), object: object.clone(), rho })
    }

    pub fn new_unchecked(monoid: &Monoid, object: &RightModule, rho: Morphism) -> LeftModuleObject {
        LeftModuleObject { monoid: monoid.clone(), object: object.clone(), rho }
    }

    /// `b` acting on itself from the left, as an object of the base category.
    pub fn regular_left(m: &Monoid) -> LeftModuleObject {
        let object = RightModule::plain(m.base(), m.carrier());
        LeftModuleObject { monoid: m.clone(), object, rho: m.mult().clone() }
    }

    /// The `(b, b)`-bimodule `b_b` with both actions given by `m_b`.
    pub fn regular_bimodule(m: &Monoid) -> Bimodule {
        LeftModuleObject { monoid: m.clone(), object: m.regular_module(), rho: m.mult().clone() }
    }

    /// The trivial monoid acting on `X` by the left unitor.
    pub fn trivial_action(x: &RightModule) -> LeftModuleObject {
        let base = x.base();
        LeftModuleObject { monoid: Monoid::trivial(base), object: x.clone(), rho: base.identity(x.carrier()) }
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn object(&self) -> &RightModule {
        &self.object
    }

    pub fn rho(&self) -> &Morphism {
        &self.rho
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::for_monoid(self.object.monoid())
    }

    pub fn base(&self) -> Base {
        self.monoid.base()
    }

    pub fn carrier(&self) -> Obj {
        self.object.carrier()
    }

    pub fn check(&self) -> Report {
        check_left_module(&self.monoid, &self.object, &self.rho)
    }

    /// `rho-bar: b -> End(X)`, the transpose of `rho` corestricted to the Hom-object.
    pub fn rho_bar(&self, end: &HomObject) -> Result<Morphism> {
        let curried = self.base().curry(&self.rho, self.monoid.carrier(), self.carrier())?;
        end.factor(&curried)
    }

    /// `rho_a = rho o (a (x) id_X)` for the element or basis vector `a` of `b`.
    fn action_by(&self, a: usize) -> Result<Morphism> {
        let base = self.base();
        let pt = base.point(self.monoid.carrier(), a)?;
        self.rho.compose(&pt.tensor(&base.identity(self.carrier()))?)
    }
}

/// The monoid `End_D(X) = (D(X, X), name(id_X), mu)`.
pub fn end_monoid(x: &RightModule) -> Result<(Monoid, HomObject)> {
    let hom = hom_object(x, x)?;
    let base = x.base();
    let unit = hom.name(&base.identity(x.carrier()))?;
    let mult = crate::monoid::hom_composition(&hom, &hom, &hom)?;
    let m = Monoid::new(base, hom.carrier(), unit, mult)?;
    Ok((m, hom))
}

/// Checks that `rho-bar` is a monoid morphism `b -> End(X)`.
pub fn rho_bar_check(x: &LeftModuleObject) -> Report {
    let mut r = Report::new();
    let (end, hom) = match end_monoid(&x.object) {
        Ok(v) => v,
        Err(e) => {
            r.push(Check::fail("End monoid", Witness::Note(e.to_string())));
            return r;
        }
    };
    match x.rho_bar(&hom) {
        Ok(rb) => r.extend_prefixed("rho-bar ", check_monoid_morphism(&rb, &x.monoid, &end)),
        Err(e) => r.push(Check::fail("rho-bar factors through End", Witness::Note(e.to_string()))),
    }
    r
}

/// `D(_bX, Y)` as a right `b`-module with action `mu o (id (x) rho-bar)`.
pub fn hom_from_left_module(x: &LeftModuleObject, y: &RightModule) -> Result<RightModule> {
    let hom = hom_object(&x.object, y)?;
    let (carrier, action) = hom_module_action(x, &hom)?;
    RightModule::new(x.monoid(), carrier, action)
}

pub(crate) fn hom_module_action(x: &LeftModuleObject, hom: &HomObject) -> Result<(Obj, Morphism)> {
    let base = x.base();
    let acts = (0..x.monoid.carrier()).map(|a| x.action_by(a)).collect::<Result<Vec<_>>>()?;
    let mut images = Vec::with_capacity(hom.carrier() * acts.len());
    for f in hom.elements()? {
        for act in &acts {
            images.push(f.compose(act)?);
        }
    }
    let family = base.assemble(&images, (hom.source, hom.target))?;
    Ok((hom.carrier(), hom.factor(&family)?))
}

/// The coequalizer `z (*)_b X` of `gamma_z (x) id_X` and `id_z (x) rho_X`, computed in `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorResult {
    pub right: RightModule,
    pub left: LeftModuleObject,
    pub object: RightModule,
    pub quotient: QuotientObject,
}

pub fn tensor_over(z: &RightModule, x: &LeftModuleObject) -> Result<TensorResult> {
    if z.monoid() != x.monoid() {
        return Err(Error::ActionMismatch);
    }
    let base = z.base();
    let id_x = base.identity(x.carrier());
    let f = z.action().tensor(&id_x)?;
    let g = base.identity(z.carrier()).tensor(&x.rho)?;
    let quotient = base.coequalizer(&f, &g)?;
    let d = x.object.monoid();
    let object = if d.is_trivial() {
        RightModule::plain(base, quotient.carrier)
    } else {
        let inner = base.identity(z.carrier()).tensor(x.object.action())?;
        let lifted = quotient.section.tensor(&base.identity(d.carrier()))?;
        let action = quotient.projection.compose(&inner)?.compose(&lifted)?;
        let q = RightModule::new(d, quotient.carrier, action)?;
        let zx = x.object.tensor_c(z.carrier())?;
        if let Some(w) = zx.equivariance(&q, &quotient.projection) {
            let mut r = Report::new();
            r.push(Check::fail("projection equivariant", w));
            return Err(Error::InvalidModule(r));
        }
        q
    };
    Ok(TensorResult { right: z.clone(), left: x.clone(), object, quotient })
}

impl TensorResult {
    pub fn carrier(&self) -> Obj {
        self.quotient.carrier
    }

    pub fn projection(&self) -> &Morphism {
        &self.quotient.projection
    }

    pub fn cofactor(&self, h: &Morphism) -> Result<Morphism> {
        self.quotient.cofactor(h)
    }

    pub fn split(&self) -> SplitEpi {
        self.quotient.split_epi()
    }

    /// `l (*)_b l~ : z (*) X -> z' (*) X'` for module maps `l: z -> z'` and
    /// `l~: X -> X'`, into the tensor `other`.
    pub fn map_to(&self, other: &TensorResult, l: &Morphism, lt: &Morphism) -> Result<Morphism> {
        let h = other.projection().compose(&l.tensor(lt)?)?;
        self.cofactor(&h)
    }
}

/// `i^b: b_b (*)_b X -> X`, the cofactor of `rho_X`, with inverse `cq o (u_b (x) id)`.
pub fn iota_b(x: &LeftModuleObject) -> Result<(TensorResult, Iso)> {
    let t = tensor_over(&x.monoid.regular_module(), x)?;
    let forward = t.cofactor(&x.rho)?;
    let base = x.base();
    let inverse = t.projection().compose(&x.monoid.unit().tensor(&base.identity(x.carrier()))?)?;
    Ok((t, Iso::with_inverse(forward, inverse)?))
}

/// `j^b: z_b (*)_b b_b -> z_b`, the cofactor of `gamma_z`, with inverse `cq o (id (x) u_b)`.
pub fn jmath_b(z: &RightModule) -> Result<(TensorResult, Iso)> {
    let bb = LeftModuleObject::regular_bimodule(z.monoid());
    let t = tensor_over(z, &bb)?;
    let forward = t.cofactor(z.action())?;
    let base = z.base();
    let inverse = t.projection().compose(&base.identity(z.carrier()).tensor(z.monoid().unit())?)?;
    Ok((t, Iso::with_inverse(forward, inverse)?))
}

/// The strength `a_{w,z,X}: w (*) (z (*)_b X) -> (w (*) z) (*)_b X`, given both tensors.
pub fn tensor_strength(w: Obj, inner: &TensorResult, outer: &TensorResult) -> Result<Morphism> {
    let base = inner.right.base();
    let epi = SplitEpi::identity(base, w).tensor(&inner.split())?;
    epi.cofactor(outer.projection())
}

/// The `(b, b'')`-bimodule `x (*)_{b'} y`.
pub fn compose_bimodules(x: &Bimodule, y: &Bimodule) -> Result<(Bimodule, TensorResult)> {
    if x.object.monoid() != y.monoid() {
        return Err(Error::MonoidMismatch);
    }
    let b = x.monoid.carrier();
    let t = tensor_over(&x.object, y)?;
    let bx = x.object.tensor_c(b)?;
    let tb = tensor_over(&bx, y)?;
    let strength = tensor_strength(b, &t, &tb)?;
    let act = tb.map_to(&t, &x.rho, &x.base().identity(y.carrier()))?;
    let rho = act.compose(&strength)?;
    let out = LeftModuleObject::new(&x.monoid, &t.object, rho)?;
    Ok((out, t))
}

/// `z (*)_b (x (*)_{b'} y) -> (z (*)_b x) (*)_{b'} y`, the unique map compatible with
/// both pairs of projections.
pub fn associator(z: &RightModule, x: &Bimodule, y: &Bimodule) -> Result<Iso> {
    if z.monoid() != x.monoid() || x.object.monoid() != y.monoid() {
        return Err(Error::MonoidMismatch);
    }
    let base = z.base();
    let (xy, txy) = compose_bimodules(x, y)?;
    let left = tensor_over(z, &xy)?;
    let zx = tensor_over(z, x)?;
    let right = tensor_over(&zx.object, y)?;
    let epi = SplitEpi::identity(base, z.carrier()).tensor(&txy.split())?.then(&left.split())?;
    let target = right.projection().compose(&zx.projection().tensor(&base.identity(y.carrier()))?)?;
    Iso::of(epi.cofactor(&target)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn regular_bimodule_is_valid() {
        for (_, m) in registry::standard_monoids() {
            assert!(LeftModuleObject::regular_bimodule(&m).check().passed());
            assert!(LeftModuleObject::regular_left(&m).check().passed());
            assert!(rho_bar_check(&LeftModuleObject::regular_bimodule(&m)).passed());
        }
    }

    #[test]
    fn end_monoid_examples() {
        let point = RightModule::plain(Base::FinSet, 1);
        let (end, _) = end_monoid(&point).unwrap();
        assert_eq!(end, Monoid::trivial(Base::FinSet));
        let (row, _) = registry::matrix_bimodules(2, 2).unwrap();
        let (end, _) = end_monoid(row.object()).unwrap();
        assert_eq!(end.carrier(), 1);
        assert!(rho_bar_check(&row).passed());
    }

    #[test]
    fn hom_from_left_module_examples() {
        let z2 = registry::z2();
        let reg = LeftModuleObject::regular_left(&z2);
        let dual = hom_from_left_module(&reg, &RightModule::plain(Base::FinSet, 1)).unwrap();
        assert_eq!(dual.carrier(), 1);
        let (row, _) = registry::matrix_bimodules(2, 2).unwrap();
        let m = hom_from_left_module(&row, row.object()).unwrap();
        assert_eq!(m.carrier(), 1);
        let m2 = registry::m2f2();
        let reg = LeftModuleObject::regular_left(&m2);
        let dual = hom_from_left_module(&reg, &RightModule::plain(m2.base(), 1)).unwrap();
        assert_eq!(dual.carrier(), 4);
        assert!(dual.check().passed());
    }

    #[test]
    fn tensor_dimensions() {
        let (row, col) = registry::matrix_bimodules(2, 2).unwrap();
        assert_eq!(tensor_over(row.object(), &col).unwrap().carrier(), 1);
        assert_eq!(tensor_over(col.object(), &row).unwrap().carrier(), 4);
        assert!(matches!(tensor_over(row.object(), &row), Err(Error::ActionMismatch)));
    }

    #[test]
    fn unit_isomorphisms() {
        for (_, m) in registry::standard_monoids() {
            let bb = LeftModuleObject::regular_bimodule(&m);
            let (_, iota) = iota_b(&bb).unwrap();
            let (_, j) = jmath_b(&m.regular_module()).unwrap();
            assert_eq!(iota, j);
        }
        let (row, col) = registry::matrix_bimodules(2, 2).unwrap();
        let (_, iota) = iota_b(&col).unwrap();
        assert_eq!(iota.forward.dom(), 2);
        let (_, iota) = iota_b(&row).unwrap();
        assert_eq!(iota.forward.dom(), 2);
    }

    #[test]
    fn composed_bimodules() {
        let (row, col) = registry::matrix_bimodules(2, 2).unwrap();
        let (rc, _) = compose_bimodules(&row, &col).unwrap();
        assert_eq!(rc.carrier(), 1);
        let (cr, _) = compose_bimodules(&col, &row).unwrap();
        assert_eq!(cr.carrier(), 4);
        assert!(matches!(compose_bimodules(&row, &row), Err(Error::MonoidMismatch)));
        let f2 = registry::f2();
        let unit = LeftModuleObject::regular_bimodule(&f2);
        let (u_row, _) = compose_bimodules(&unit, &row).unwrap();
        assert_eq!(u_row.carrier(), row.carrier());
    }

    #[test]
    fn associator_examples() {
        let (row, col) = registry::matrix_bimodules(2, 2).unwrap();
        let f2 = registry::f2();
        let a = associator(&f2.regular_module(), &row, &col).unwrap();
        assert!(a.forward.is_identity());
        let m2 = registry::m2f2();
        let a = associator(&m2.regular_module(), &col, &row).unwrap();
        assert_eq!(a.forward.dom(), 4);
        let z2 = registry::z2();
        let bb = LeftModuleObject::regular_bimodule(&z2);
        let a = associator(&z2.regular_module(), &bb, &bb).unwrap();
        assert_eq!(a.forward.dom(), 2);
    }
}
