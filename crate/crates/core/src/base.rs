//! The two concrete closed symmetric monoidal base categories.
//!
//! Objects are plain sizes: the cardinality of a finite set or the dimension of an
//! `F_p`-vector space. Tensor products flatten index pairs as `(i, j) -> i * |y| + j`
//! everywhere, which makes the associator and both unitors identity tables and lets
//! every construction downstream be compared bit for bit.
//!
//! Internal homs are enumerated as follows. For finite sets, a map `x -> y` is the
//! base-`|y|` numeral whose most significant digit is the image of element `0`. For
//! vector spaces, `[x, y]` has the matrix units `E_{rc}` (`r < |y|`, `c < |x|`) as
//! basis, indexed row-major as `r * |x| + c`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::report::Witness;

/// An object of a base category: its cardinality or dimension.
pub type Obj = usize;

/// Which base category a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Base {
    FinSet,
    FinVec { prime: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coherence {
    /// `a_{z,x,y}: z (x) (x (x) y) -> (z (x) x) (x) y`
    Assoc,
    /// `s_{x,y}: x (x) y -> y (x) x`
    Braid,
    /// `i_x: c (x) x -> x`
    LeftUnit,
    /// `j_x: x (x) c -> x`
    RightUnit,
}

/// A morphism of a base category. For finite sets `data` is the index table of
/// length `dom`; for vector spaces it is the `cod x dom` matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    base: Base,
    dom: Obj,
    cod: Obj,
    data: Vec<usize>,
}

impl Base {
    pub fn finvec(prime: u32) -> Result<Base> {
        if !linalg::is_prime(prime as u64) || prime > (1 << 16) {
            return Err(Error::InvalidPrime(prime as u64));
        }
        Ok(Base::FinVec { prime })
    }

    pub fn prime(self) -> Option<usize> {
        match self {
            Base::FinSet => None,
            Base::FinVec { prime } => Some(prime as usize),
        }
    }

    pub fn is_finset(self) -> bool {
        matches!(self, Base::FinSet)
    }

    pub fn unit_object(self) -> Obj {
        1
    }

    pub fn tensor_obj(self, x: Obj, y: Obj) -> Result<Obj> {
        x.checked_mul(y)
            .ok_or_else(|| Error::SizeOverflow(format!("{x} (x) {y}")))
    }

    pub fn internal_hom(self, x: Obj, y: Obj) -> Result<Obj> {
        let n = match self {
            Base::FinSet => u32::try_from(x).ok().and_then(|e| y.checked_pow(e)),
            Base::FinVec { .. } => x.checked_mul(y),
        };
        n.ok_or_else(|| Error::SizeOverflow(format!("[{x}, {y}]")))
    }

    pub fn identity(self, n: Obj) -> Morphism {
        match self {
            Base::FinSet => Morphism { base: self, dom: n, cod: n, data: (0..n).collect() },
            Base::FinVec { .. } => {
                let mut data = vec![0; n * n];
                for i in 0..n {
                    data[i * n + i] = 1;
                }
                Morphism { base: self, dom: n, cod: n, data }
            }
        }
    }

    pub fn zero(self, dom: Obj, cod: Obj) -> Result<Morphism> {
        match self {
            Base::FinSet if dom > 0 && cod != 1 => Err(Error::ShapeMismatch(
                "finite sets have no zero morphism unless the codomain is a point".into(),
            )),
            Base::FinSet => Ok(Morphism { base: self, dom, cod, data: vec![0; dom] }),
            Base::FinVec { .. } => Ok(Morphism { base: self, dom, cod, data: vec![0; dom * cod] }),
        }
    }

    /// The morphism induced by a function on indices: the table itself for finite
    /// sets, its linearization (a 0/1 matrix) for vector spaces.
    pub fn from_index_map(self, dom: Obj, cod: Obj, map: &[usize]) -> Result<Morphism> {
        if map.len() != dom || map.iter().any(|&j| j >= cod) {
            return Err(Error::ShapeMismatch(format!("index map does not fit {dom} -> {cod}")));
        }
        match self {
            Base::FinSet => Ok(Morphism { base: self, dom, cod, data: map.to_vec() }),
            Base::FinVec { .. } => {
                let mut data = vec![0; dom * cod];
                for (i, &j) in map.iter().enumerate() {
                    data[j * dom + i] = 1;
                }
                Ok(Morphism { base: self, dom, cod, data })
            }
        }
    }

    /// The global element `c -> n` picking element (or basis vector) `k`.
    pub fn point(self, n: Obj, k: usize) -> Result<Morphism> {
        self.from_index_map(1, n, &[k])
    }

    /// Finite-set morphism from a table.
    pub fn map(self, dom: Obj, cod: Obj, table: Vec<usize>) -> Result<Morphism> {
        Morphism::new(self, dom, cod, table)
    }

    /// Vector-space morphism from matrix rows (`cod` rows of length `dom`).
    pub fn matrix(self, dom: Obj, rows: &[Vec<usize>]) -> Result<Morphism> {
        let cod = rows.len();
        if rows.iter().any(|r| r.len() != dom) {
            return Err(Error::ShapeMismatch(format!("matrix rows must have length {dom}")));
        }
        Morphism::new(self, dom, cod, rows.concat())
    }

    pub fn coherence(self, which: Coherence, objs: &[Obj]) -> Result<Morphism> {
        let arity = match which {
            Coherence::Assoc => 3,
            Coherence::Braid => 2,
            Coherence::LeftUnit | Coherence::RightUnit => 1,
        };
        if objs.len() != arity {
            return Err(Error::ArityMismatch { expected: arity, got: objs.len() });
        }
        match which {
            Coherence::Assoc => {
                let n = self.tensor_obj(self.tensor_obj(objs[0], objs[1])?, objs[2])?;
                Ok(self.identity(n))
            }
            Coherence::LeftUnit | Coherence::RightUnit => Ok(self.identity(objs[0])),
            Coherence::Braid => {
                let (x, y) = (objs[0], objs[1]);
                let n = self.tensor_obj(x, y)?;
                let map: Vec<usize> = (0..n).map(|k| (k % y.max(1)) * x + k / y.max(1)).collect();
                self.from_index_map(n, n, &map)
            }
        }
    }

    /// `Ev_{x,y}: [x, y] (x) x -> y`
    pub fn eval(self, x: Obj, y: Obj) -> Result<Morphism> {
        let h = self.internal_hom(x, y)?;
        self.uncurry(&self.identity(h), x, y)
    }

    /// Transposes `f: a (x) x -> y` to `a -> [x, y]`.
    pub fn curry(self, f: &Morphism, a: Obj, x: Obj) -> Result<Morphism> {
        self.same(f)?;
        if f.dom != self.tensor_obj(a, x)? {
            return Err(Error::ShapeMismatch(format!(
                "curry: domain {} is not {a} (x) {x}",
                f.dom
            )));
        }
        let y = f.cod;
        let h = self.internal_hom(x, y)?;
        match self {
            Base::FinSet => {
                let mut data = Vec::with_capacity(a);
                for k in 0..a {
                    let mut code = 0usize;
                    for i in 0..x {
                        code = code * y + f.data[k * x + i];
                    }
                    data.push(code);
                }
                Ok(Morphism { base: self, dom: a, cod: h, data })
            }
            Base::FinVec { .. } => {
                // curry(f)[(r*x + c), k] = f[r, k*x + c]
                let mut data = vec![0; h * a];
                let fd = a * x;
                for r in 0..y {
                    for c in 0..x {
                        for k in 0..a {
                            data[(r * x + c) * a + k] = f.data[r * fd + k * x + c];
                        }
                    }
                }
                Ok(Morphism { base: self, dom: a, cod: h, data })
            }
        }
    }

    /// Inverse of [`Base::curry`]: `g: a -> [x, y]` to `a (x) x -> y`.
    pub fn uncurry(self, g: &Morphism, x: Obj, y: Obj) -> Result<Morphism> {
        self.same(g)?;
        let h = self.internal_hom(x, y)?;
        if g.cod != h {
            return Err(Error::ShapeMismatch(format!("uncurry: codomain {} is not [{x}, {y}]", g.cod)));
        }
        let a = g.dom;
        let dom = self.tensor_obj(a, x)?;
        match self {
            Base::FinSet => {
                let mut data = vec![0; dom];
                for k in 0..a {
                    let mut code = g.data[k];
                    for i in (0..x).rev() {
                        data[k * x + i] = code % y;
                        code /= y;
                    }
                }
                Ok(Morphism { base: self, dom, cod: y, data })
            }
            Base::FinVec { .. } => {
                let mut data = vec![0; y * dom];
                for r in 0..y {
                    for c in 0..x {
                        for k in 0..a {
                            data[r * dom + k * x + c] = g.data[(r * x + c) * a + k];
                        }
                    }
                }
                Ok(Morphism { base: self, dom, cod: y, data })
            }
        }
    }

    /// The global element `c -> [x, y]` naming `f: x -> y`.
    pub fn name(self, f: &Morphism) -> Result<Morphism> {
        self.curry(f, 1, f.dom)
    }

    /// The morphism `x -> y` named by `e: a -> [x, y]`, read at the element `e`
    /// for `a = c`.
    pub fn unname(self, e: &Morphism, x: Obj, y: Obj) -> Result<Morphism> {
        if e.dom != 1 {
            return Err(Error::ShapeMismatch("unname expects a global element".into()));
        }
        self.uncurry(e, x, y)
    }

    /// The element of `[x, y]` with index `k`: the `k`-th map in lexicographic order
    /// for finite sets, the matrix unit with flat index `k` for vector spaces.
    pub fn hom_element(self, x: Obj, y: Obj, k: usize) -> Result<Morphism> {
        let h = self.internal_hom(x, y)?;
        if k >= h {
            return Err(Error::ShapeMismatch(format!("element {k} outside [{x}, {y}]")));
        }
        let mut data = vec![0; if self.is_finset() { x } else { x * y }];
        match self {
            Base::FinSet => {
                let mut code = k;
                for slot in data.iter_mut().rev() {
                    *slot = code % y;
                    code /= y;
                }
            }
            Base::FinVec { .. } => data[k] = 1,
        }
        Ok(Morphism { base: self, dom: x, cod: y, data })
    }

    /// Index of a finite-set map as an element of `[dom, cod]`.
    pub fn hom_code(self, f: &Morphism) -> Result<usize> {
        if !self.is_finset() {
            return Err(Error::BaseMismatch("hom_code is defined for finite sets".into()));
        }
        self.internal_hom(f.dom, f.cod)?;
        Ok(f.data.iter().fold(0, |code, &v| code * f.cod + v))
    }

    /// The morphism `[x, y] -> [x', y']` induced by an operation on morphisms. For
    /// vector spaces the operation must be linear; it is evaluated on matrix units.
    pub fn induced_hom(
        self,
        src: (Obj, Obj),
        dst: (Obj, Obj),
        op: impl Fn(&Morphism) -> Result<Morphism>,
    ) -> Result<Morphism> {
        let hs = self.internal_hom(src.0, src.1)?;
        let images = (0..hs)
            .map(|k| op(&self.hom_element(src.0, src.1, k)?))
            .collect::<Result<Vec<_>>>()?;
        self.assemble(&images, dst)
    }

    /// The morphism `n -> [x, y]` sending element (or basis vector) `k` to `images[k]`.
    pub fn assemble(self, images: &[Morphism], dst: (Obj, Obj)) -> Result<Morphism> {
        let n = images.len();
        let hd = self.internal_hom(dst.0, dst.1)?;
        let mut data = vec![0; if self.is_finset() { n } else { n * hd }];
        for (k, img) in images.iter().enumerate() {
            self.same(img)?;
            if img.dom != dst.0 || img.cod != dst.1 {
                return Err(Error::ShapeMismatch("induced map leaves the target hom".into()));
            }
            match self {
                Base::FinSet => data[k] = self.hom_code(img)?,
                Base::FinVec { .. } => {
                    for (row, &v) in img.data.iter().enumerate() {
                        data[row * n + k] = v;
                    }
                }
            }
        }
        Ok(Morphism { base: self, dom: n, cod: hd, data })
    }

    /// The morphism named by element `k` of `a`, for `a: n -> [x, y]`.
    pub fn named(self, a: &Morphism, x: Obj, y: Obj, k: usize) -> Result<Morphism> {
        if self.internal_hom(x, y)? != a.cod || k >= a.dom {
            return Err(Error::ShapeMismatch(format!("named: not an element family of [{x}, {y}]")));
        }
        match self {
            Base::FinSet => self.hom_element(x, y, a.data[k]),
            Base::FinVec { .. } => {
                let data = (0..a.cod).map(|r| a.data[r * a.dom + k]).collect();
                Ok(Morphism { base: self, dom: x, cod: y, data })
            }
        }
    }

    /// The morphism `[x1, y1] (x) [x2, y2] -> [x', y']` induced by a binary operation,
    /// bilinear in the vector-space case.
    pub fn induced_hom2(
        self,
        src1: (Obj, Obj),
        src2: (Obj, Obj),
        dst: (Obj, Obj),
        op: impl Fn(&Morphism, &Morphism) -> Result<Morphism>,
    ) -> Result<Morphism> {
        let left = (0..self.internal_hom(src1.0, src1.1)?)
            .map(|i| self.hom_element(src1.0, src1.1, i))
            .collect::<Result<Vec<_>>>()?;
        let right = (0..self.internal_hom(src2.0, src2.1)?)
            .map(|j| self.hom_element(src2.0, src2.1, j))
            .collect::<Result<Vec<_>>>()?;
        let mut images = Vec::with_capacity(left.len() * right.len());
        for f in &left {
            for g in &right {
                images.push(op(f, g)?);
            }
        }
        self.assemble(&images, dst)
    }

    /// `l_*: [z, x] -> [z, y]` for `l: x -> y`.
    pub fn hom_post(self, l: &Morphism, z: Obj) -> Result<Morphism> {
        self.induced_hom((z, l.dom), (z, l.cod), |f| l.compose(f))
    }

    /// `l^*: [y, w] -> [x, w]` for `l: x -> y`.
    pub fn hom_pre(self, l: &Morphism, w: Obj) -> Result<Morphism> {
        self.induced_hom((l.cod, w), (l.dom, w), |f| f.compose(l))
    }

    /// Internal composition `[y, z] (x) [x, y] -> [x, z]`.
    pub fn composition(self, x: Obj, y: Obj, z: Obj) -> Result<Morphism> {
        self.induced_hom2((y, z), (x, y), (x, z), |g, f| g.compose(f))
    }

    /// `(- (x) b)_{x,y}: [x, y] -> [x (x) b, y (x) b]`.
    pub fn tensor_right_hom(self, x: Obj, y: Obj, b: Obj) -> Result<Morphism> {
        let id = self.identity(b);
        self.induced_hom((x, y), (self.tensor_obj(x, b)?, self.tensor_obj(y, b)?), |f| f.tensor(&id))
    }

    pub fn equalizer(self, f: &Morphism, g: &Morphism) -> Result<SubObject> {
        self.same(f)?;
        self.same(g)?;
        if f.dom != g.dom || f.cod != g.cod {
            return Err(Error::NotParallel);
        }
        let ambient = f.dom;
        match self {
            Base::FinSet => {
                let keep: Vec<usize> = (0..ambient).filter(|&i| f.data[i] == g.data[i]).collect();
                let carrier = keep.len();
                let inclusion = Morphism { base: self, dom: carrier, cod: ambient, data: keep };
                Ok(SubObject { carrier, ambient, inclusion, free: Vec::new(), pair: (f.clone(), g.clone()) })
            }
            Base::FinVec { prime } => {
                let p = prime as usize;
                let diff: Vec<usize> = f.data.iter().zip(&g.data).map(|(a, b)| (a + p - b) % p).collect();
                let (basis, free) = linalg::kernel(&diff, f.cod, ambient, p);
                let carrier = free.len();
                let inclusion = Morphism { base: self, dom: carrier, cod: ambient, data: basis };
                Ok(SubObject { carrier, ambient, inclusion, free, pair: (f.clone(), g.clone()) })
            }
        }
    }

    pub fn coequalizer(self, f: &Morphism, g: &Morphism) -> Result<QuotientObject> {
        self.same(f)?;
        self.same(g)?;
        if f.dom != g.dom || f.cod != g.cod {
            return Err(Error::NotParallel);
        }
        let ambient = f.cod;
        match self {
            Base::FinSet => {
                let mut uf = crate::unionfind::UnionFind::new(ambient);
                for i in 0..f.dom {
                    uf.union(f.data[i], g.data[i]);
                }
                let (classes, reps) = uf.canonical_classes();
                let carrier = reps.len();
                let projection = Morphism { base: self, dom: ambient, cod: carrier, data: classes };
                let section = Morphism { base: self, dom: carrier, cod: ambient, data: reps };
                Ok(QuotientObject { carrier, ambient, projection, section, pair: (f.clone(), g.clone()) })
            }
            Base::FinVec { prime } => {
                let p = prime as usize;
                let diff: Vec<usize> = f.data.iter().zip(&g.data).map(|(a, b)| (a + p - b) % p).collect();
                let (rows, pivots) = linalg::column_space(&diff, ambient, f.dom, p);
                let mut pivot_row = vec![None; ambient];
                for (i, &pc) in pivots.iter().enumerate() {
                    pivot_row[pc] = Some(i);
                }
                let complement: Vec<usize> = (0..ambient).filter(|&j| pivot_row[j].is_none()).collect();
                let carrier = complement.len();
                let mut proj = vec![0; carrier * ambient];
                for (t, &j) in complement.iter().enumerate() {
                    proj[t * ambient + j] = 1;
                }
                for j in 0..ambient {
                    if let Some(i) = pivot_row[j] {
                        for (t, &nj) in complement.iter().enumerate() {
                            proj[t * ambient + j] = (p - rows[i][nj]) % p;
                        }
                    }
                }
                let projection = Morphism { base: self, dom: ambient, cod: carrier, data: proj };
                let section = self.from_index_map(carrier, ambient, &complement)?;
                Ok(QuotientObject { carrier, ambient, projection, section, pair: (f.clone(), g.clone()) })
            }
        }
    }

    fn same(self, f: &Morphism) -> Result<()> {
        if f.base != self {
            return Err(Error::BaseMismatch(format!("{:?} vs {:?}", f.base, self)));
        }
        Ok(())
    }
}

impl Morphism {
    pub fn new(base: Base, dom: Obj, cod: Obj, data: Vec<usize>) -> Result<Morphism> {
        match base {
            Base::FinSet => {
                if data.len() != dom {
                    return Err(Error::ShapeMismatch(format!("table length {} != domain {dom}", data.len())));
                }
                if let Some(&bad) = data.iter().find(|&&j| j >= cod) {
                    return Err(Error::ShapeMismatch(format!("entry {bad} outside codomain {cod}")));
                }
            }
            Base::FinVec { prime } => {
                if data.len() != dom * cod {
                    return Err(Error::ShapeMismatch(format!(
                        "matrix has {} entries, expected {cod} x {dom}",
                        data.len()
                    )));
                }
                if let Some(&bad) = data.iter().find(|&&v| v >= prime as usize) {
                    return Err(Error::ShapeMismatch(format!("entry {bad} outside F_{prime}")));
                }
            }
        }
        Ok(Morphism { base, dom, cod, data })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn dom(&self) -> Obj {
        self.dom
    }

    pub fn cod(&self) -> Obj {
        self.cod
    }

    /// Index table (finite sets) or row-major matrix entries (vector spaces).
    pub fn table(&self) -> &[usize] {
        &self.data
    }

    /// Matrix rows; for finite sets, the 0/1 matrix of the function.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        match self.base {
            Base::FinSet => {
                let mut rows = vec![vec![0; self.dom]; self.cod];
                for (i, &j) in self.data.iter().enumerate() {
                    rows[j][i] = 1;
                }
                rows
            }
            Base::FinVec { .. } => self.data.chunks(self.dom.max(1)).take(self.cod).map(<[usize]>::to_vec).collect(),
        }
    }

    /// `self o f`
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        if self.base != f.base {
            return Err(Error::BaseMismatch(format!("{:?} vs {:?}", self.base, f.base)));
        }
        if f.cod != self.dom {
            return Err(Error::DomainMismatch { cod: f.cod, dom: self.dom });
        }
        let data = match self.base {
            Base::FinSet => f.data.iter().map(|&i| self.data[i]).collect(),
            Base::FinVec { prime } => linalg::mul(&self.data, &f.data, self.cod, self.dom, f.dom, prime as usize),
        };
        Ok(Morphism { base: self.base, dom: f.dom, cod: self.cod, data })
    }

    /// `self (x) other`, flattening pairs lexicographically.
    pub fn tensor(&self, other: &Morphism) -> Result<Morphism> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(format!("{:?} vs {:?}", self.base, other.base)));
        }
        let b = self.base;
        let dom = b.tensor_obj(self.dom, other.dom)?;
        let cod = b.tensor_obj(self.cod, other.cod)?;
        let data = match b {
            Base::FinSet => {
                let mut data = Vec::with_capacity(dom);
                for &i in &self.data {
                    for &j in &other.data {
                        data.push(i * other.cod + j);
                    }
                }
                data
            }
            Base::FinVec { prime } => {
                let p = prime as usize;
                let mut data = vec![0; dom * cod];
                for r1 in 0..self.cod {
                    for c1 in 0..self.dom {
                        let a = self.data[r1 * self.dom + c1];
                        if a == 0 {
                            continue;
                        }
                        for r2 in 0..other.cod {
                            let row = (r1 * other.cod + r2) * dom + c1 * other.dom;
                            for c2 in 0..other.dom {
                                let v = other.data[r2 * other.dom + c2];
                                if v != 0 {
                                    data[row + c2] = a * v % p;
                                }
                            }
                        }
                    }
                }
                data
            }
        };
        Ok(Morphism { base: b, dom, cod, data })
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && *self == self.base.identity(self.dom)
    }

    pub fn inverse(&self) -> Option<Morphism> {
        if self.dom != self.cod {
            return None;
        }
        match self.base {
            Base::FinSet => {
                let mut inv = vec![usize::MAX; self.dom];
                for (i, &j) in self.data.iter().enumerate() {
                    if inv[j] != usize::MAX {
                        return None;
                    }
                    inv[j] = i;
                }
                Some(Morphism { base: self.base, dom: self.cod, cod: self.dom, data: inv })
            }
            Base::FinVec { prime } => linalg::inverse(&self.data, self.dom, prime as usize)
                .map(|data| Morphism { base: self.base, dom: self.cod, cod: self.dom, data }),
        }
    }

    pub fn is_iso(&self) -> bool {
        self.inverse().is_some()
    }

    /// Why `self` is not invertible: a collision, a missed element, a kernel vector or
    /// a rank deficit. `None` for isomorphisms.
    pub fn invertibility_witness(&self) -> Option<Witness> {
        if self.is_iso() {
            return None;
        }
        match self.base {
            Base::FinSet => {
                let mut first = vec![usize::MAX; self.cod];
                for (i, &j) in self.data.iter().enumerate() {
                    if first[j] != usize::MAX {
                        return Some(Witness::Note(format!("elements {} and {i} both map to {j}", first[j])));
                    }
                    first[j] = i;
                }
                let missed = first.iter().position(|&i| i == usize::MAX).unwrap_or(0);
                Some(Witness::Note(format!("element {missed} of the codomain is not hit")))
            }
            Base::FinVec { prime } => {
                let (basis, _) = linalg::kernel(&self.data, self.cod, self.dom, prime as usize);
                let k = if self.dom == 0 { 0 } else { basis.len() / self.dom };
                if k > 0 {
                    let v: Vec<usize> = (0..self.dom).map(|r| basis[r * k]).collect();
                    return Some(Witness::Note(format!("kernel vector {v:?}")));
                }
                let rank = linalg::rank(&self.data, self.cod, self.dom, prime as usize);
                Some(Witness::Note(format!("rank {rank} is below the codomain dimension {}", self.cod)))
            }
        }
    }

    pub fn is_injective(&self) -> bool {
        match self.base {
            Base::FinSet => {
                let mut seen = vec![false; self.cod];
                self.data.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
            }
            Base::FinVec { prime } => linalg::rank(&self.data, self.cod, self.dom, prime as usize) == self.dom,
        }
    }

    pub fn is_surjective(&self) -> bool {
        match self.base {
            Base::FinSet => {
                let mut seen = vec![false; self.cod];
                for &j in &self.data {
                    seen[j] = true;
                }
                seen.into_iter().all(|s| s)
            }
            Base::FinVec { prime } => linalg::rank(&self.data, self.cod, self.dom, prime as usize) == self.cod,
        }
    }

    /// First position where `self` and `other` disagree, or `None` when equal.
    pub fn difference(&self, other: &Morphism) -> Option<Witness> {
        if self.base != other.base || self.dom != other.dom || self.cod != other.cod {
            return Some(Witness::Note(format!(
                "shape {} -> {} vs {} -> {}",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        let pos = self.data.iter().zip(&other.data).position(|(a, b)| a != b)?;
        let (left, right) = (self.data[pos], other.data[pos]);
        Some(match self.base {
            Base::FinSet => Witness::Index { index: pos, coords: Vec::new(), left, right },
            Base::FinVec { .. } => Witness::Entry { row: pos / self.dom, col: pos % self.dom, left, right },
        })
    }

    /// A copy with one entry replaced; used to build mutation fixtures.
    pub fn with_entry(&self, index: usize, value: usize) -> Result<Morphism> {
        let mut data = self.data.clone();
        if index >= data.len() {
            return Err(Error::ShapeMismatch(format!("entry {index} out of range")));
        }
        data[index] = value;
        Morphism::new(self.base, self.dom, self.cod, data)
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.zip_entries(other, |a, b, p| (a + p - b) % p)
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.zip_entries(other, |a, b, p| (a + b) % p)
    }

    fn zip_entries(&self, other: &Morphism, op: impl Fn(usize, usize, usize) -> usize) -> Result<Morphism> {
        let Base::FinVec { prime } = self.base else {
            return Err(Error::BaseMismatch("entrywise arithmetic needs a vector-space base".into()));
        };
        if self.base != other.base || self.dom != other.dom || self.cod != other.cod {
            return Err(Error::NotParallel);
        }
        let p = prime as usize;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b, p)).collect();
        Ok(Morphism { base: self.base, dom: self.dom, cod: self.cod, data })
    }
}

/// A morphism with a two-sided inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso {
    pub forward: Morphism,
    pub inverse: Morphism,
}

impl Iso {
    /// Pairs `forward` with its inverse, or fails with `NotInvertible`.
    pub fn of(forward: Morphism) -> Result<Iso> {
        let inverse = forward.inverse().ok_or(Error::NotInvertible)?;
        Ok(Iso { forward, inverse })
    }

    /// Pairs `forward` with a claimed inverse after checking both composites.
    pub fn with_inverse(forward: Morphism, inverse: Morphism) -> Result<Iso> {
        if !forward.compose(&inverse)?.is_identity() || !inverse.compose(&forward)?.is_identity() {
            return Err(Error::NotInvertible);
        }
        Ok(Iso { forward, inverse })
    }
}

/// Canonical equalizer. For finite sets the carrier is the sorted subset where the
/// pair agrees; for vector spaces it is the kernel of `f - g` with its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubObject {
    pub carrier: Obj,
    pub ambient: Obj,
    pub inclusion: Morphism,
    free: Vec<usize>,
    pair: (Morphism, Morphism),
}

impl SubObject {
    /// The whole object, included by the identity.
    pub fn whole(base: Base, n: Obj) -> SubObject {
        let id = base.identity(n);
        SubObject {
            carrier: n,
            ambient: n,
            inclusion: id.clone(),
            free: (0..n).collect(),
            pair: (id.clone(), id),
        }
    }

    pub fn base(&self) -> Base {
        self.inclusion.base
    }

    /// The unique `k` with `inclusion o k = h`.
    pub fn factor(&self, h: &Morphism) -> Result<Morphism> {
        let (f, g) = &self.pair;
        if h.cod != self.ambient || h.base != self.base() {
            return Err(Error::ShapeMismatch(format!("factor: codomain {} is not {}", h.cod, self.ambient)));
        }
        if f.compose(h)? != g.compose(h)? {
            return Err(Error::FactorNotEqualizing);
        }
        let base = self.base();
        let k = match base {
            Base::FinSet => {
                let incl = &self.inclusion.data;
                let data = h
                    .data
                    .iter()
                    .map(|v| incl.binary_search(v).map_err(|_| Error::FactorNotEqualizing))
                    .collect::<Result<Vec<_>>>()?;
                Morphism { base, dom: h.dom, cod: self.carrier, data }
            }
            Base::FinVec { .. } => {
                let mut data = Vec::with_capacity(self.carrier * h.dom);
                for &r in &self.free {
                    data.extend_from_slice(&h.data[r * h.dom..(r + 1) * h.dom]);
                }
                Morphism { base, dom: h.dom, cod: self.carrier, data }
            }
        };
        if self.inclusion.compose(&k)? != *h {
            return Err(Error::FactorNotEqualizing);
        }
        Ok(k)
    }

    pub fn contains(&self, h: &Morphism) -> bool {
        self.factor(h).is_ok()
    }
}

/// Canonical coequalizer with a chosen section of the projection. For finite sets,
/// classes are numbered by their smallest member and the section picks it; for vector
/// spaces the carrier is spanned by the non-pivot coordinates of the image of `f - g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientObject {
    pub carrier: Obj,
    pub ambient: Obj,
    pub projection: Morphism,
    pub section: Morphism,
    pair: (Morphism, Morphism),
}

impl QuotientObject {
    pub fn base(&self) -> Base {
        self.projection.base
    }

    /// The unique `k` with `k o projection = h`.
    pub fn cofactor(&self, h: &Morphism) -> Result<Morphism> {
        if h.dom != self.ambient || h.base != self.base() {
            return Err(Error::ShapeMismatch(format!("cofactor: domain {} is not {}", h.dom, self.ambient)));
        }
        let (f, g) = &self.pair;
        if h.compose(f)? != h.compose(g)? {
            return Err(Error::CofactorNotCoequalizing);
        }
        let k = h.compose(&self.section)?;
        if k.compose(&self.projection)? != *h {
            return Err(Error::CofactorNotCoequalizing);
        }
        Ok(k)
    }

    pub fn split_epi(&self) -> SplitEpi {
        SplitEpi { epi: self.projection.clone(), section: self.section.clone() }
    }
}

/// An epimorphism together with a section, so that cofactoring through it is
/// precomposition with the section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEpi {
    pub epi: Morphism,
    pub section: Morphism,
}

impl SplitEpi {
    /// `other o self`, split by the composite of the sections.
    pub fn then(&self, other: &SplitEpi) -> Result<SplitEpi> {
        Ok(SplitEpi { epi: other.epi.compose(&self.epi)?, section: self.section.compose(&other.section)? })
    }

    pub fn identity(base: Base, n: Obj) -> SplitEpi {
        SplitEpi { epi: base.identity(n), section: base.identity(n) }
    }

    pub fn tensor(&self, other: &SplitEpi) -> Result<SplitEpi> {
        Ok(SplitEpi { epi: self.epi.tensor(&other.epi)?, section: self.section.tensor(&other.section)? })
    }

    /// The unique `k` with `k o epi = h`, or `CofactorNotCoequalizing` if none exists.
    pub fn cofactor(&self, h: &Morphism) -> Result<Morphism> {
        let k = h.compose(&self.section)?;
        if k.compose(&self.epi)? != *h {
            return Err(Error::CofactorNotCoequalizing);
        }
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: Base = Base::FinVec { prime: 2 };

    #[test]
    fn compose_examples() {
        let s = Base::FinSet;
        let g = s.map(2, 3, vec![2, 0]).unwrap();
        assert_eq!(g.compose(&s.identity(2)).unwrap(), g);
        let sw = s.map(2, 2, vec![1, 0]).unwrap();
        assert_eq!(sw.compose(&sw).unwrap(), s.identity(2));
        let g = F2.matrix(2, &[vec![1, 1]]).unwrap();
        let f = F2.matrix(1, &[vec![1], vec![1]]).unwrap();
        assert_eq!(g.compose(&f).unwrap(), F2.matrix(1, &[vec![0]]).unwrap());
        assert!(matches!(f.compose(&f), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn tensor_examples() {
        let s = Base::FinSet;
        assert_eq!(s.tensor_obj(2, 3).unwrap(), 6);
        assert!(s.identity(2).tensor(&s.identity(3)).unwrap().is_identity());
        let a = F2.matrix(2, &[vec![1, 0], vec![1, 1]]).unwrap();
        let one = F2.matrix(1, &[vec![1]]).unwrap();
        assert_eq!(a.tensor(&one).unwrap(), a);
    }

    #[test]
    fn braid_is_transposition() {
        let s = Base::FinSet.coherence(Coherence::Braid, &[2, 3]).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(s.table()[i * 3 + j], j * 2 + i);
            }
        }
        let back = Base::FinSet.coherence(Coherence::Braid, &[3, 2]).unwrap();
        assert!(back.compose(&s).unwrap().is_identity());
        assert!(Base::FinSet.coherence(Coherence::LeftUnit, &[4]).unwrap().is_identity());
        assert!(matches!(
            Base::FinSet.coherence(Coherence::Assoc, &[1, 2]),
            Err(Error::ArityMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn internal_hom_sizes() {
        assert_eq!(Base::FinSet.internal_hom(2, 3).unwrap(), 9);
        assert_eq!(F2.internal_hom(2, 3).unwrap(), 6);
        assert_eq!(Base::FinSet.internal_hom(0, 5).unwrap(), 1);
        assert_eq!(Base::FinSet.internal_hom(3, 0).unwrap(), 0);
        assert!(Base::FinSet.internal_hom(64, 64).is_err());
    }

    #[test]
    fn curry_of_unitor_names_identity() {
        let s = Base::FinSet;
        let e = s.curry(&s.identity(3), 1, 3).unwrap();
        // id_3 = (0,1,2) in base 3 = 0*9 + 1*3 + 2
        assert_eq!(e.table(), &[5]);
        assert!(s.unname(&e, 3, 3).unwrap().is_identity());
    }

    #[test]
    fn curry_regular_representation() {
        // F_2[t]/(t^2) with basis (1, t): mult e_i e_j = e_{i+j} (0 if i+j >= 2).
        let mut rows = vec![vec![0; 4]; 2];
        for i in 0..2 {
            for j in 0..2 {
                if i + j < 2 {
                    rows[i + j][i * 2 + j] = 1;
                }
            }
        }
        let m = F2.matrix(4, &rows).unwrap();
        let reg = F2.curry(&m, 2, 2).unwrap();
        // column k is left multiplication by e_k, flattened row-major
        for k in 0..2 {
            for r in 0..2 {
                for c in 0..2 {
                    assert_eq!(reg.table()[(r * 2 + c) * 2 + k], rows[r][k * 2 + c]);
                }
            }
        }
    }

    #[test]
    fn hom_post_collapses() {
        let s = Base::FinSet;
        let l = s.map(2, 1, vec![0, 0]).unwrap();
        let post = s.hom_post(&l, 2).unwrap();
        assert_eq!(post.dom(), 4);
        assert_eq!(post.table(), &[0, 0, 0, 0]);
        assert!(s.hom_post(&s.identity(3), 2).unwrap().is_identity());
    }

    #[test]
    fn induced_maps_agree_with_curried_forms() {
        for base in [Base::FinSet, F2, Base::FinVec { prime: 3 }] {
            let l = base.from_index_map(3, 2, &[1, 0, 1]).unwrap();
            let z = 2;
            let ev = base.eval(z, 3).unwrap();
            let h = base.internal_hom(z, 3).unwrap();
            let expect = base.curry(&l.compose(&ev).unwrap(), h, z).unwrap();
            assert_eq!(base.hom_post(&l, z).unwrap(), expect);

            let w = 2;
            let ev = base.eval(2, w).unwrap();
            let h = base.internal_hom(2, w).unwrap();
            let f = ev.compose(&base.identity(h).tensor(&l).unwrap()).unwrap();
            assert_eq!(base.hom_pre(&l, w).unwrap(), base.curry(&f, h, 3).unwrap());

            let (x, y, zz) = (2, 2, 3);
            let hyz = base.internal_hom(y, zz).unwrap();
            let hxy = base.internal_hom(x, y).unwrap();
            let inner = base.identity(hyz).tensor(&base.eval(x, y).unwrap()).unwrap();
            let f = base.eval(y, zz).unwrap().compose(&inner).unwrap();
            let expect = base.curry(&f, hyz * hxy, x).unwrap();
            assert_eq!(base.composition(x, y, zz).unwrap(), expect);
        }
    }

    #[test]
    fn equalizer_examples() {
        let s = Base::FinSet;
        let f = s.map(3, 2, vec![0, 1, 0]).unwrap();
        let g = s.map(3, 2, vec![0, 0, 0]).unwrap();
        let e = s.equalizer(&f, &g).unwrap();
        assert_eq!(e.inclusion.table(), &[0, 2]);
        let same = s.equalizer(&f, &f).unwrap();
        assert!(same.inclusion.is_identity());
        let h = s.map(1, 3, vec![1]).unwrap();
        assert!(matches!(e.factor(&h), Err(Error::FactorNotEqualizing)));

        let f = F2.matrix(2, &[vec![1, 0]]).unwrap();
        let g = F2.matrix(2, &[vec![0, 1]]).unwrap();
        let e = F2.equalizer(&f, &g).unwrap();
        assert_eq!(e.carrier, 1);
        assert_eq!(e.inclusion.rows(), vec![vec![1], vec![1]]);
    }

    #[test]
    fn coequalizer_examples() {
        let s = Base::FinSet;
        let f = s.map(1, 2, vec![0]).unwrap();
        let g = s.map(1, 2, vec![1]).unwrap();
        let q = s.coequalizer(&f, &g).unwrap();
        assert_eq!(q.carrier, 1);
        assert_eq!(q.projection.table(), &[0, 0]);
        assert!(s.coequalizer(&f, &f).unwrap().projection.is_identity());

        let f = F2.matrix(1, &[vec![1], vec![0]]).unwrap();
        let g = F2.matrix(1, &[vec![0], vec![1]]).unwrap();
        let q = F2.coequalizer(&f, &g).unwrap();
        assert_eq!(q.carrier, 1);
        assert_eq!(q.projection.compose(&f).unwrap(), q.projection.compose(&g).unwrap());
        let bad = F2.matrix(2, &[vec![1, 0]]).unwrap();
        assert!(matches!(q.cofactor(&bad), Err(Error::CofactorNotCoequalizing)));
        let parallel_err = F2.coequalizer(&f, &F2.identity(2));
        assert!(matches!(parallel_err, Err(Error::NotParallel)));
    }

    #[test]
    fn zero_objects() {
        let s = Base::FinSet;
        let empty = s.map(0, 3, vec![]).unwrap();
        assert_eq!(empty.compose(&s.identity(0)).unwrap(), empty);
        let e = s.equalizer(&empty, &empty).unwrap();
        assert_eq!(e.carrier, 0);
        assert_eq!(F2.identity(0).tensor(&F2.identity(3)).unwrap().dom(), 0);
    }
}
