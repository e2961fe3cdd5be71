//! Finite probe families: the modules, tensors and morphisms over which functor
//! axioms and naturality squares are checked.

use std::collections::BTreeMap;

use crate::base::{Morphism, Obj};
use crate::error::{Error, Result};
use crate::monoid::{Monoid, RightModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeMorphism {
    pub dom: usize,
    pub cod: usize,
    pub map: Morphism,
}

/// A base morphism `k: w -> w'` acting on modules as `k (x) id_M: w (*) M -> w' (*) M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    pub k: Morphism,
    /// `(module, morphism index of k (x) id_M)`
    pub on: Vec<(usize, usize)>,
}

/// A relation pair `(gamma_z (x) id_b, id_z (x) m_b)` with the morphism `gamma_z`
/// that should coequalize it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationPair {
    pub seed: usize,
    pub left: usize,
    pub right: usize,
    pub gamma: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeFamily {
    pub id: String,
    pub monoid: Monoid,
    pub objects: Vec<Obj>,
    pub modules: Vec<RightModule>,
    pub morphisms: Vec<ProbeMorphism>,
    /// Module indices of the seeds; the regular module is always `seeds[0] == 0`.
    pub seeds: Vec<usize>,
    pub shallow: bool,
    tensor: BTreeMap<(Obj, usize), usize>,
    /// module index -> morphism index of `gamma_M: |M| (*) b_b -> M`
    gamma: BTreeMap<usize, usize>,
    pub relation_pairs: Vec<RelationPair>,
    pub scalars: Vec<Scalar>,
    /// `(w, l, w (*) l)` morphism indices
    pub whiskers: Vec<(Obj, usize, usize)>,
    /// `(f, g, g o f)` morphism indices
    pub composites: Vec<(usize, usize, usize)>,
}

struct Builder {
    modules: Vec<RightModule>,
    morphisms: Vec<ProbeMorphism>,
}

impl Builder {
    fn module(&mut self, m: RightModule) -> usize {
        if let Some(i) = self.modules.iter().position(|x| *x == m) {
            return i;
        }
        self.modules.push(m);
        self.modules.len() - 1
    }

    fn find(&self, m: &RightModule) -> Option<usize> {
        self.modules.iter().position(|x| x == m)
    }

    fn morphism(&mut self, dom: usize, cod: usize, map: Morphism) -> usize {
        if let Some(i) = self.morphisms.iter().position(|p| p.dom == dom && p.cod == cod && p.map == map) {
            return i;
        }
        self.morphisms.push(ProbeMorphism { dom, cod, map });
        self.morphisms.len() - 1
    }
}

impl ProbeFamily {
    /// The default family: `c, b, b (x) b` and the carriers of the seeds (with `b_b`
    /// always a seed) tensored onto every seed, together with all `gamma` maps,
    /// relation pairs, scalar actions of `u_b`, `m_b`, `gamma_z` and their whiskerings.
    pub fn standard(id: &str, monoid: &Monoid, seeds: &[RightModule]) -> Result<ProbeFamily> {
        Self::build(id, monoid, seeds, false)
    }

    /// Seeds, `|z| (*) b_b` and `gamma_z` only. Enough for round-trip checks over
    /// large monoids; carries no relation pairs.
    pub fn shallow(id: &str, monoid: &Monoid, seeds: &[RightModule]) -> Result<ProbeFamily> {
        Self::build(id, monoid, seeds, true)
    }

    fn build(id: &str, monoid: &Monoid, seeds: &[RightModule], shallow: bool) -> Result<ProbeFamily> {
        let base = monoid.base();
        let b = monoid.carrier();
        let reg = monoid.regular_module();
        let mut all_seeds = vec![reg.clone()];
        for s in seeds {
            if s.monoid() != monoid {
                return Err(Error::ActionMismatch);
            }
            let r = s.check();
            if !r.passed() {
                return Err(Error::InvalidModule(r));
            }
            if !all_seeds.contains(s) {
                all_seeds.push(s.clone());
            }
        }
        let mut objects = vec![1];
        if !shallow {
            objects.extend([b, base.tensor_obj(b, b)?]);
        }
        for s in &all_seeds {
            objects.push(s.carrier());
            if !shallow {
                objects.push(base.tensor_obj(s.carrier(), b)?);
            }
        }
        objects.sort_unstable();
        objects.dedup();

        let mut bld = Builder { modules: Vec::new(), morphisms: Vec::new() };
        let seed_idx: Vec<usize> = all_seeds.iter().map(|s| bld.module(s.clone())).collect();
        if shallow {
            for s in &all_seeds {
                bld.module(reg.tensor_c(s.carrier())?);
            }
        } else {
            for s in &all_seeds {
                for &w in &objects {
                    bld.module(s.tensor_c(w)?);
                }
            }
        }
        for i in 0..bld.modules.len() {
            let id = base.identity(bld.modules[i].carrier());
            bld.morphism(i, i, id);
        }
        let mut gamma = BTreeMap::new();
        let targets: Vec<usize> = if shallow { seed_idx.clone() } else { (0..bld.modules.len()).collect() };
        for i in targets {
            let m = bld.modules[i].clone();
            if !objects.contains(&m.carrier()) {
                continue;
            }
            if let Some(src) = bld.find(&reg.tensor_c(m.carrier())?) {
                gamma.insert(i, bld.morphism(src, i, m.action().clone()));
            }
        }
        let mut relation_pairs = Vec::new();
        let mut scalars = Vec::new();
        if !shallow {
            for (&si, s) in seed_idx.iter().zip(&all_seeds) {
                let (f, g) = s.relation_pair()?;
                let dom = bld.find(&reg.tensor_c(base.tensor_obj(s.carrier(), b)?)?);
                let cod = bld.find(&reg.tensor_c(s.carrier())?);
                let (Some(dom), Some(cod)) = (dom, cod) else {
                    return Err(Error::ProbeNotClosed(format!("relation pair of seed {si}")));
                };
                let left = bld.morphism(dom, cod, f);
                let right = bld.morphism(dom, cod, g);
                let gamma_idx = *gamma.get(&si).ok_or_else(|| Error::ProbeNotClosed(format!("gamma of seed {si}")))?;
                relation_pairs.push(RelationPair { seed: si, left, right, gamma: gamma_idx });
            }
            let mut ks = vec![monoid.unit().clone(), monoid.mult().clone()];
            for s in &all_seeds {
                ks.push(s.action().clone());
            }
            let mut unique: Vec<Morphism> = Vec::new();
            for k in ks {
                if !unique.contains(&k) {
                    unique.push(k);
                }
            }
            for k in unique {
                let mut on = Vec::new();
                for mi in 0..bld.modules.len() {
                    let m = bld.modules[mi].clone();
                    let (Some(d), Some(c)) = (bld.find(&m.tensor_c(k.dom())?), bld.find(&m.tensor_c(k.cod())?)) else {
                        continue;
                    };
                    let map = k.tensor(&base.identity(m.carrier()))?;
                    on.push((mi, bld.morphism(d, c, map)));
                }
                scalars.push(Scalar { k, on });
            }
        }
        let mut whiskers = Vec::new();
        if !shallow {
            let snapshot = bld.morphisms.len();
            for li in 0..snapshot {
                let l = bld.morphisms[li].clone();
                for &w in &objects {
                    let d = bld.find(&bld.modules[l.dom].tensor_c(w)?);
                    let c = bld.find(&bld.modules[l.cod].tensor_c(w)?);
                    if let (Some(d), Some(c)) = (d, c) {
                        let wl = bld.morphism(d, c, base.identity(w).tensor(&l.map)?);
                        whiskers.push((w, li, wl));
                    }
                }
            }
        }
        let mut tensor = BTreeMap::new();
        for i in 0..bld.modules.len() {
            for &w in &objects {
                if let Some(j) = bld.find(&bld.modules[i].tensor_c(w)?) {
                    tensor.insert((w, i), j);
                }
            }
        }
        let mut composites = Vec::new();
        for (fi, f) in bld.morphisms.iter().enumerate() {
            for (gi, g) in bld.morphisms.iter().enumerate() {
                if f.cod != g.dom {
                    continue;
                }
                let gf = g.map.compose(&f.map)?;
                if let Some(k) = bld.morphisms.iter().position(|p| p.dom == f.dom && p.cod == g.cod && p.map == gf) {
                    composites.push((fi, gi, k));
                }
            }
        }
        Ok(ProbeFamily {
            id: id.to_string(),
            monoid: monoid.clone(),
            objects,
            modules: bld.modules,
            morphisms: bld.morphisms,
            seeds: seed_idx,
            shallow,
            tensor,
            gamma,
            relation_pairs,
            scalars,
            whiskers,
            composites,
        })
    }

    pub fn regular(&self) -> usize {
        0
    }

    pub fn module_index(&self, m: &RightModule) -> Option<usize> {
        self.modules.iter().position(|x| x == m)
    }

    /// Index of `w (*) modules[i]`, when it is a probe module.
    pub fn tensor_index(&self, w: Obj, i: usize) -> Option<usize> {
        self.tensor.get(&(w, i)).copied()
    }

    pub fn tensor_grid(&self) -> impl Iterator<Item = (Obj, usize, usize)> + '_ {
        self.tensor.iter().map(|(&(w, i), &j)| (w, i, j))
    }

    /// Morphism index of `gamma_M` for module `i`.
    pub fn gamma_index(&self, i: usize) -> Option<usize> {
        self.gamma.get(&i).copied()
    }

    /// Modules at which the coreflection is computed: those with `gamma_M` available.
    pub fn presented_modules(&self) -> impl Iterator<Item = usize> + '_ {
        self.gamma.keys().copied()
    }

    pub fn identity_index(&self, i: usize) -> Option<usize> {
        self.morphisms.iter().position(|p| p.dom == i && p.cod == i && p.map.is_identity())
    }

    /// Errors unless the family contains what evaluation at `b_b` needs.
    pub fn require_regular_closure(&self) -> Result<(usize, usize)> {
        let b = self.monoid.carrier();
        let bb = self
            .tensor_index(b, 0)
            .ok_or_else(|| Error::ProbeNotClosed(format!("{}: b (*) b_b missing", self.id)))?;
        let g = self
            .gamma_index(0)
            .ok_or_else(|| Error::ProbeNotClosed(format!("{}: gamma of b_b missing", self.id)))?;
        Ok((bb, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn standard_family_is_closed() {
        let z2 = registry::z2();
        let p = ProbeFamily::standard("z2", &z2, &[registry::z2_point()]).unwrap();
        assert_eq!(p.objects, vec![1, 2, 4]);
        // b_b, 2 b_b, 4 b_b, pt, 2 pt, 4 pt
        assert_eq!(p.modules.len(), 6);
        assert_eq!(p.relation_pairs.len(), 2);
        assert!(p.require_regular_closure().is_ok());
        for (w, i, j) in p.tensor_grid() {
            assert_eq!(p.modules[i].tensor_c(w).unwrap(), p.modules[j]);
        }
        for m in &p.morphisms {
            assert!(p.modules[m.dom].equivariance(&p.modules[m.cod], &m.map).is_none());
        }
    }

    #[test]
    fn shallow_family() {
        let m2 = registry::m2f2();
        let p = ProbeFamily::shallow("m2", &m2, &[]).unwrap();
        assert_eq!(p.modules.len(), 2);
        assert!(p.gamma_index(0).is_some());
        assert!(p.relation_pairs.is_empty());
    }
}
