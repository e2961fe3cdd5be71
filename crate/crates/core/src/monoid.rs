//! Monoids in a base category, right modules over them and the enriched
//! Hom-objects of the module category.

use crate::base::{Base, Morphism, Obj, SubObject};
use crate::error::{Error, Result};
use crate::report::{Check, Report, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monoid {
    base: Base,
    carrier: Obj,
    unit: Morphism,
    mult: Morphism,
}

/// Records `law` comparing two sides, attaching tensor coordinates to finite-set witnesses.
pub(crate) fn compare(report: &mut Report, law: &str, lhs: Result<Morphism>, rhs: Result<Morphism>, sizes: &[usize]) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => report.record(law, l.difference(&r).map(|w| w.with_coords(sizes))),
        (Err(e), _) | (_, Err(e)) => report.push(Check::fail(law, Witness::Note(e.to_string()))),
    }
}

fn shape_check(report: &mut Report, law: &str, f: &Morphism, base: Base, dom: Obj, cod: Obj) -> bool {
    let ok = f.base() == base && f.dom() == dom && f.cod() == cod;
    if ok {
        report.push(Check::pass(law));
    } else {
        report.push(Check::fail(
            law,
            Witness::Note(format!("expected {dom} -> {cod}, got {} -> {}", f.dom(), f.cod())),
        ));
    }
    ok
}

/// Checks the unit and associativity laws of `(b, unit, mult)`.
pub fn check_monoid(base: Base, b: Obj, unit: &Morphism, mult: &Morphism) -> Report {
    let mut r = Report::new();
    let u_ok = shape_check(&mut r, "unit shape", unit, base, 1, b);
    let bb = b.saturating_mul(b);
    let m_ok = shape_check(&mut r, "mult shape", mult, base, bb, b);
    if !(u_ok && m_ok) {
        return r;
    }
    let id = base.identity(b);
    compare(&mut r, "left unit", unit.tensor(&id).and_then(|t| mult.compose(&t)), Ok(id.clone()), &[b]);
    compare(&mut r, "right unit", id.tensor(unit).and_then(|t| mult.compose(&t)), Ok(id.clone()), &[b]);
    compare(
        &mut r,
        "associativity",
        mult.tensor(&id).and_then(|t| mult.compose(&t)),
        id.tensor(mult).and_then(|t| mult.compose(&t)),
        &[b, b, b],
    );
    r
}

impl Monoid {
    pub fn new(base: Base, carrier: Obj, unit: Morphism, mult: Morphism) -> Result<Monoid> {
        let r = check_monoid(base, carrier, &unit, &mult);
        if !r.passed() {
            return Err(Error::InvalidMonoid(r));
        }
        Ok(Monoid { base, carrier, unit, mult })
    }

    /// The monoid structure on the unit object.
    pub fn trivial(base: Base) -> Monoid {
        Monoid { base, carrier: 1, unit: base.identity(1), mult: base.identity(1) }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn carrier(&self) -> Obj {
        self.carrier
    }

    pub fn unit(&self) -> &Morphism {
        &self.unit
    }

    pub fn mult(&self) -> &Morphism {
        &self.mult
    }

    pub fn is_trivial(&self) -> bool {
        *self == Monoid::trivial(self.base)
    }

    pub fn check(&self) -> Report {
        check_monoid(self.base, self.carrier, &self.unit, &self.mult)
    }

    /// Bypasses validation; only for building mutation fixtures.
    pub fn new_unchecked(base: Base, carrier: Obj, unit: Morphism, mult: Morphism) -> Monoid {
        Monoid { base, carrier, unit, mult }
    }

    pub fn regular_module(&self) -> RightModule {
        RightModule { monoid: self.clone(), carrier: self.carrier, action: self.mult.clone() }
    }
}

/// Laws for `f: b -> b'` to be a monoid morphism.
pub fn check_monoid_morphism(f: &Morphism, from: &Monoid, to: &Monoid) -> Report {
    let mut r = Report::new();
    if !shape_check(&mut r, "shape", f, from.base, from.carrier, to.carrier) {
        return r;
    }
    compare(&mut r, "preserves unit", f.compose(&from.unit), Ok(to.unit.clone()), &[]);
    compare(
        &mut r,
        "preserves mult",
        f.compose(&from.mult),
        f.tensor(f).and_then(|t| to.mult.compose(&t)),
        &[from.carrier, from.carrier],
    );
    r
}

/// A right module `(z, gamma_z)` over a monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RightModule {
    monoid: Monoid,
    carrier: Obj,
    action: Morphism,
}

pub fn check_module(m: &Monoid, z: Obj, gamma: &Morphism) -> Report {
    let mut r = Report::new();
    let b = m.carrier;
    if !shape_check(&mut r, "action shape", gamma, m.base, z.saturating_mul(b), z) {
        return r;
    }
    let idz = m.base.identity(z);
    compare(&mut r, "unit action", idz.tensor(&m.unit).and_then(|t| gamma.compose(&t)), Ok(idz.clone()), &[z]);
    compare(
        &mut r,
        "action associativity",
        gamma.tensor(&m.base.identity(b)).and_then(|t| gamma.compose(&t)),
        idz.tensor(&m.mult).and_then(|t| gamma.compose(&t)),
        &[z, b, b],
    );
    r
}

impl RightModule {
    pub fn new(monoid: &Monoid, carrier: Obj, action: Morphism) -> Result<RightModule> {
        let r = check_module(monoid, carrier, &action);
        if !r.passed() {
            return Err(Error::InvalidModule(r));
        }
        Ok(RightModule { monoid: monoid.clone(), carrier, action })
    }

    pub fn new_unchecked(monoid: &Monoid, carrier: Obj, action: Morphism) -> RightModule {
        RightModule { monoid: monoid.clone(), carrier, action }
    }

    /// A bare object viewed as a module over the trivial monoid.
    pub fn plain(base: Base, carrier: Obj) -> RightModule {
        RightModule { monoid: Monoid::trivial(base), carrier, action: base.identity(carrier) }
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn base(&self) -> Base {
        self.monoid.base
    }

    pub fn carrier(&self) -> Obj {
        self.carrier
    }

    pub fn action(&self) -> &Morphism {
        &self.action
    }

    pub fn check(&self) -> Report {
        check_module(&self.monoid, self.carrier, &self.action)
    }

    /// `w (*) z` with action `id_w (x) gamma_z`.
    pub fn tensor_c(&self, w: Obj) -> Result<RightModule> {
        let base = self.base();
        Ok(RightModule {
            monoid: self.monoid.clone(),
            carrier: base.tensor_obj(w, self.carrier)?,
            action: base.identity(w).tensor(&self.action)?,
        })
    }

    /// Whether `f: z -> z'` is equivariant, with a witness if not.
    pub fn equivariance(&self, other: &RightModule, f: &Morphism) -> Option<Witness> {
        if self.monoid != other.monoid {
            return Some(Witness::Note("acting monoids differ".into()));
        }
        if f.dom() != self.carrier || f.cod() != other.carrier {
            return Some(Witness::Note(format!(
                "expected {} -> {}, got {} -> {}",
                self.carrier,
                other.carrier,
                f.dom(),
                f.cod()
            )));
        }
        let id_b = self.base().identity(self.monoid.carrier);
        let lhs = f.tensor(&id_b).and_then(|t| other.action.compose(&t));
        let rhs = f.compose(&self.action);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => l.difference(&r).map(|w| w.with_coords(&[self.carrier, self.monoid.carrier])),
            (Err(e), _) | (_, Err(e)) => Some(Witness::Note(e.to_string())),
        }
    }

    /// `gamma_z` as a module morphism `z (x) b_b -> z_b`.
    pub fn gamma_as_module_mor(&self) -> Result<ModuleMorphism> {
        let src = self.monoid.regular_module().tensor_c(self.carrier)?;
        ModuleMorphism::new(&src, self, self.action.clone())
    }

    /// The relation pair `(gamma_z (x) id_b, id_z (x) m_b): z (x) b (x) b => z (x) b`.
    pub fn relation_pair(&self) -> Result<(Morphism, Morphism)> {
        let base = self.base();
        let id_b = base.identity(self.monoid.carrier);
        let left = self.action.tensor(&id_b)?;
        let right = base.identity(self.carrier).tensor(&self.monoid.mult)?;
        Ok((left, right))
    }

    /// Confirms that `gamma_z` is a coequalizer of the relation pair: the cofactor of
    /// `gamma_z` through the canonical coequalizer is invertible.
    pub fn coequalizer_check(&self) -> Result<Report> {
        let (f, g) = self.relation_pair()?;
        let q = self.base().coequalizer(&f, &g)?;
        let mut r = Report::new();
        match q.cofactor(&self.action) {
            Ok(k) => r.push(Check::flag("action presents the module", k.is_iso())),
            Err(e) => r.push(Check::fail("action presents the module", Witness::Note(e.to_string()))),
        }
        Ok(r)
    }

    /// `gamma-bar: z -> Mod_b(b_b, z)`.
    pub fn gamma_bar(&self) -> Result<Morphism> {
        let b = self.monoid.carrier;
        let hom = hom_object(&self.monoid.regular_module(), self)?;
        let curried = self.base().curry(&self.action, self.carrier, b)?;
        hom.sub.factor(&curried)
    }
}

/// An equivariant morphism of right modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism {
    pub dom: RightModule,
    pub cod: RightModule,
    pub map: Morphism,
}

impl ModuleMorphism {
    pub fn new(dom: &RightModule, cod: &RightModule, map: Morphism) -> Result<ModuleMorphism> {
        if dom.monoid != cod.monoid {
            return Err(Error::ActionMismatch);
        }
        if let Some(w) = dom.equivariance(cod, &map) {
            let mut r = Report::new();
            r.push(Check::fail("equivariance", w));
            return Err(Error::InvalidModuleMorphism(r));
        }
        Ok(ModuleMorphism { dom: dom.clone(), cod: cod.clone(), map })
    }

    pub fn identity(z: &RightModule) -> ModuleMorphism {
        ModuleMorphism { dom: z.clone(), cod: z.clone(), map: z.base().identity(z.carrier) }
    }
}

/// The Hom-object of two modules: the equalizer in `[z, z']` of precomposition with
/// `gamma_z` and `gamma_z' o (- (x) b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomObject {
    pub source: Obj,
    pub target: Obj,
    pub sub: SubObject,
}

pub fn hom_object(z: &RightModule, z2: &RightModule) -> Result<HomObject> {
    if z.monoid != z2.monoid {
        return Err(Error::ActionMismatch);
    }
    for m in [z, z2] {
        let r = m.check();
        if !r.passed() {
            return Err(Error::InvalidModule(r));
        }
    }
    let base = z.base();
    let (x, y) = (z.carrier, z2.carrier);
    if z.monoid.is_trivial() {
        return Ok(HomObject { source: x, target: y, sub: SubObject::whole(base, base.internal_hom(x, y)?) });
    }
    let b = z.monoid.carrier;
    let xb = base.tensor_obj(x, b)?;
    let id_b = base.identity(b);
    let pre = base.induced_hom((x, y), (xb, y), |f| f.compose(&z.action))?;
    let post = base.induced_hom((x, y), (xb, y), |f| z2.action.compose(&f.tensor(&id_b)?))?;
    let sub = base.equalizer(&pre, &post)?;
    Ok(HomObject { source: x, target: y, sub })
}

impl HomObject {
    pub fn base(&self) -> Base {
        self.sub.base()
    }

    pub fn carrier(&self) -> Obj {
        self.sub.carrier
    }

    pub fn inclusion(&self) -> &Morphism {
        &self.sub.inclusion
    }

    /// The morphism named by element (or basis vector) `k` of the carrier.
    pub fn element(&self, k: usize) -> Result<Morphism> {
        self.base().named(&self.sub.inclusion, self.source, self.target, k)
    }

    pub fn elements(&self) -> Result<Vec<Morphism>> {
        (0..self.carrier()).map(|k| self.element(k)).collect()
    }

    /// The global element of the Hom-object naming an equivariant `f`.
    pub fn name(&self, f: &Morphism) -> Result<Morphism> {
        self.sub.factor(&self.base().name(f)?)
    }

    /// Factors a family `a -> [source, target]` through the Hom-object.
    pub fn factor(&self, h: &Morphism) -> Result<Morphism> {
        self.sub.factor(h)
    }

    pub fn whole(&self) -> bool {
        self.carrier() == self.sub.ambient && self.sub.inclusion.is_identity()
    }
}

/// Composition `mu: D(y, z) (x) D(x, y) -> D(x, z)` on Hom-objects, obtained by
/// factoring base composition through the equalizer.
pub fn hom_composition(yz: &HomObject, xy: &HomObject, xz: &HomObject) -> Result<Morphism> {
    if yz.source != xy.target || xz.source != xy.source || xz.target != yz.target {
        return Err(Error::ShapeMismatch("hom objects are not composable".into()));
    }
    let base = yz.base();
    let left = yz.elements()?;
    let right = xy.elements()?;
    let mut images = Vec::with_capacity(left.len() * right.len());
    for g in &left {
        for f in &right {
            images.push(g.compose(f)?);
        }
    }
    let family = base.assemble(&images, (xz.source, xz.target))?;
    xz.factor(&family)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn z2() -> Monoid {
        let s = Base::FinSet;
        Monoid::new(s, 2, s.map(1, 2, vec![0]).unwrap(), s.map(4, 2, vec![0, 1, 1, 0]).unwrap()).unwrap()
    }

    pub(crate) fn m2() -> Monoid {
        // E_ij at index 2i + j; E_ij E_kl = delta_jk E_il
        let f2 = Base::FinVec { prime: 2 };
        let mut rows = vec![vec![0; 16]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    rows[2 * i + l][(2 * i + j) * 4 + 2 * j + l] = 1;
                }
            }
        }
        let unit = f2.matrix(1, &[vec![1], vec![0], vec![0], vec![1]]).unwrap();
        Monoid::new(f2, 4, unit, f2.matrix(16, &rows).unwrap()).unwrap()
    }

    fn row_action(transpose: bool) -> Morphism {
        // e_j (x) E_kl -> delta_jk e_l  (row vectors times matrices)
        let f2 = Base::FinVec { prime: 2 };
        let mut rows = vec![vec![0; 8]; 2];
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let (hit, out) = if transpose { (l == j, k) } else { (j == k, l) };
                    if hit {
                        rows[out][j * 4 + 2 * k + l] = 1;
                    }
                }
            }
        }
        f2.matrix(8, &rows).unwrap()
    }

    #[test]
    fn monoid_examples() {
        assert!(Monoid::trivial(Base::FinSet).check().passed());
        assert!(z2().check().passed());
        assert!(m2().check().passed());
        let s = Base::FinSet;
        // Z/3 with 1 + 1 redirected to 0: units still hold, associativity does not
        let mut table: Vec<usize> = (0..9).map(|k| (k / 3 + k % 3) % 3).collect();
        table[4] = 0;
        let bad = s.map(9, 3, table).unwrap();
        let err = Monoid::new(s, 3, s.map(1, 3, vec![0]).unwrap(), bad).unwrap_err();
        let report = err.report().unwrap();
        let failed = report.find("associativity").unwrap();
        assert!(!failed.pass);
        assert!(matches!(&failed.witness, Some(Witness::Index { coords, .. }) if coords.len() == 3));
    }

    #[test]
    fn module_examples() {
        let m = z2();
        assert!(m.regular_module().check().passed());
        let point = RightModule::new(&m, 1, Base::FinSet.map(2, 1, vec![0, 0]).unwrap()).unwrap();
        assert_eq!(point.carrier(), 1);
        let m2 = m2();
        assert!(RightModule::new(&m2, 2, row_action(false)).is_ok());
        assert!(matches!(RightModule::new(&m2, 2, row_action(true)), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn hom_objects() {
        let m = z2();
        let reg = m.regular_module();
        let h = hom_object(&reg, &reg).unwrap();
        // of the 4 self-maps of {0,1}, exactly id and the swap commute with addition
        assert_eq!(h.carrier(), 2);
        let maps: Vec<Vec<usize>> = h.elements().unwrap().iter().map(|f| f.table().to_vec()).collect();
        assert_eq!(maps, vec![vec![0, 1], vec![1, 0]]);

        let m2 = m2();
        let row = RightModule::new(&m2, 2, row_action(false)).unwrap();
        assert_eq!(hom_object(&row, &row).unwrap().carrier(), 1);
        assert_eq!(hom_object(&m2.regular_module(), &row).unwrap().carrier(), 2);
    }

    #[test]
    fn gamma_bar_is_iso() {
        let m2 = m2();
        let row = RightModule::new(&m2, 2, row_action(false)).unwrap();
        for z in [z2().regular_module(), m2.regular_module(), row] {
            let g = z.gamma_bar().unwrap();
            assert!(g.is_iso(), "{z:?}");
            assert!(z.coequalizer_check().unwrap().passed());
            assert!(z.gamma_as_module_mor().is_ok());
        }
    }

    #[test]
    fn tensored_module() {
        let t = z2().regular_module().tensor_c(3).unwrap();
        assert_eq!(t.carrier(), 6);
        assert!(t.check().passed());
        // the action never changes the w-coordinate
        for (i, &v) in t.action().table().iter().enumerate() {
            assert_eq!(v / 2, i / 4);
        }
    }

    #[test]
    fn composition_on_hom_objects() {
        let reg = z2().regular_module();
        let h = hom_object(&reg, &reg).unwrap();
        let mu = hom_composition(&h, &h, &h).unwrap();
        // {id, swap} under composition is Z/2
        assert_eq!(mu.table(), &[0, 1, 1, 0]);
    }
}
