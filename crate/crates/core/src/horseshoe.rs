//! Simultaneous resolutions of a short exact sequence.

use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{check_ses, free_map, free_module, GModuleMap};
use crate::resolution::{CoverPolicy, Level, Resolution};
use crate::Int;

/// Syzygy sequence `0 → Ã_k → B̃_k → C̃_k → 0` at one level, together with
/// the lift `h_k: C_k → B̃_k` of the cover of `C̃_k`.
#[derive(Clone, Debug)]
pub struct HorseshoeLevel {
    pub f: GModuleMap,
    pub g: GModuleMap,
    pub lift: GModuleMap,
}

/// Horseshoe resolution of `0 → A → B → C → 0` with `B_k = A_k ⊕ C_k`.
pub struct Horseshoe {
    pub left: Arc<Resolution>,
    pub right: Arc<Resolution>,
    pub middle: Arc<Resolution>,
    levels: Mutex<Vec<HorseshoeLevel>>,
}

impl std::fmt::Debug for Horseshoe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Horseshoe({:?} -> {:?} -> {:?})", self.left.base(), self.middle.base(), self.right.base())
    }
}

impl Horseshoe {
    /// Checks exactness of the input and records level 0.
    pub fn new(f: &GModuleMap, g: &GModuleMap, left: Arc<Resolution>, right: Arc<Resolution>) -> Result<Arc<Self>> {
        if !check_ses(f, g)? {
            return Err(Error::NotExact("horseshoe input is not short exact".into()));
        }
        if !left.base().same_as(&f.src) || !right.base().same_as(&g.dst) {
            return Err(Error::Mismatch("outer resolutions do not resolve the outer terms".into()));
        }
        let middle = Resolution::new(f.dst.clone(), CoverPolicy::Manual);
        let lift = GModuleMap::zero(&free_module(f.src.group(), f.src.ring(), 0), &f.dst);
        let h = Horseshoe { left, right, middle, levels: Mutex::new(vec![HorseshoeLevel { f: f.clone(), g: g.clone(), lift }]) };
        Ok(Arc::new(h))
    }

    /// Builds the horseshoe of a sequence with greedy outer resolutions.
    pub fn of(f: &GModuleMap, g: &GModuleMap) -> Result<Arc<Self>> {
        let left = Resolution::new(f.src.clone(), CoverPolicy::Greedy);
        let right = Resolution::new(g.dst.clone(), CoverPolicy::Greedy);
        Self::new(f, g, left, right)
    }

    /// Materializes levels `0..=k` of the middle resolution.
    pub fn ensure(&self, k: usize) -> Result<()> {
        let mut levels = self.levels.lock().expect("horseshoe lock");
        while self.middle.len() <= k {
            let j = self.middle.len();
            let la = self.left.level(j)?;
            let lc = self.right.level(j)?;
            let cur = levels[j].clone();
            let group = cur.f.src.group().clone();
            let ring = cur.f.src.ring();
            let gsolve = cur.g.map.preimage_solver();
            let mut values: Vec<Vec<Int>> = la.values.iter().map(|v| cur.f.apply(v)).collect();
            let mut lifts = Vec::with_capacity(lc.values.len());
            for v in &lc.values {
                let y = gsolve.solve(v).ok_or_else(|| Error::NotExact("syzygy map is not surjective".into()))?;
                lifts.push(y.clone());
                values.push(y);
            }
            let free = free_module(&group, ring, la.rank() + lc.rank());
            let b_tilde = cur.f.dst.clone();
            let level = Level::new(free.clone(), &b_tilde, values)?;
            let lift = free_map(&lc.free, &b_tilde, &lifts)?;
            let (na, nc) = (la.free.ngens(), lc.free.ngens());
            let restrict = |lvl: &Level, x: &[Int]| lvl.restrict(x).ok_or_else(|| Error::NotExact("element outside the syzygy".into()));
            let mut fcols = Vec::new();
            for j2 in 0..la.kernel.ngens() {
                let mut x = la.incl.map.matrix.column(j2);
                x.extend(std::iter::repeat(Int::from(0)).take(nc));
                fcols.push(restrict(&level, &x)?);
            }
            let mut gcols = Vec::new();
            for j2 in 0..level.kernel.ngens() {
                let x = level.incl.map.matrix.column(j2);
                gcols.push(restrict(&lc, &x[na..na + nc])?);
            }
            let f_next = GModuleMap::trusted(la.kernel.clone(), level.kernel.clone(), Matrix::from_columns(&fcols, level.kernel.ngens()));
            let g_next = GModuleMap::trusted(level.kernel.clone(), lc.kernel.clone(), Matrix::from_columns(&gcols, lc.kernel.ngens()));
            levels[j].lift = lift;
            self.middle.push_level(level)?;
            levels.push(HorseshoeLevel { f: f_next, g: g_next, lift: GModuleMap::zero(&free_module(&group, ring, 0), &b_tilde) });
        }
        Ok(())
    }

    /// Syzygy sequence and cover lift at level `k`.
    pub fn level(&self, k: usize) -> Result<HorseshoeLevel> {
        self.ensure(k)?;
        Ok(self.levels.lock().expect("horseshoe lock")[k].clone())
    }

    /// `0 → Ã_k → B̃_k → C̃_k → 0`.
    pub fn syzygy_sequence(&self, k: usize) -> Result<(GModuleMap, GModuleMap)> {
        if k > 0 {
            self.ensure(k - 1)?;
        }
        let levels = self.levels.lock().expect("horseshoe lock");
        let l = &levels[k];
        Ok((l.f.clone(), l.g.clone()))
    }

    /// `h*_k: C̃_{k+1} → Ã_k`, the restriction of the cover lift.
    pub fn h_star(&self, k: usize) -> Result<GModuleMap> {
        let lvl = self.level(k)?;
        let lc = self.right.level(k)?;
        let fsolve = lvl.f.map.preimage_solver();
        let cols = (0..lc.kernel.ngens())
            .map(|j| {
                let y = lvl.lift.apply(&lc.incl.map.matrix.column(j));
                fsolve.solve(&y).ok_or_else(|| Error::NotExact("lift leaves the left syzygy".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GModuleMap::trusted(lc.kernel.clone(), lvl.f.src.clone(), Matrix::from_columns(&cols, lvl.f.src.ngens())))
    }

    /// Levelwise inclusion `A_k → B_k` and projection `B_k → C_k`.
    pub fn free_maps(&self, k: usize) -> Result<(GModuleMap, GModuleMap)> {
        self.ensure(k)?;
        let (fa, fb, fc) = (self.left.term(k)?, self.middle.term(k)?, self.right.term(k)?);
        let (na, nc) = (fa.ngens(), fc.ngens());
        let mut inc = Matrix::zeros(na + nc, na);
        let mut proj = Matrix::zeros(nc, na + nc);
        for i in 0..na {
            inc[(i, i)] = Int::from(1);
        }
        for i in 0..nc {
            proj[(i, na + i)] = Int::from(1);
        }
        Ok((GModuleMap::trusted(fa, fb.clone(), inc), GModuleMap::trusted(fb, fc, proj)))
    }

    /// Checks exactness of every row and column up to level `k`.
    pub fn verify(&self, k: usize) -> Result<()> {
        self.ensure(k)?;
        self.middle.verify()?;
        for j in 0..=k + 1 {
            let (f, g) = self.syzygy_sequence(j)?;
            if !check_ses(&f, &g)? {
                return Err(Error::NotExact(format!("syzygy sequence at level {j}")));
            }
        }
        for j in 0..=k {
            let (inc, proj) = self.free_maps(j)?;
            if !check_ses(&inc, &proj)? {
                return Err(Error::NotExact(format!("free row at level {j}")));
            }
            let (f, g) = self.syzygy_sequence(j)?;
            let (la, lb, lc) = (self.left.level(j)?, self.middle.level(j)?, self.right.level(j)?);
            if !lb.cover.compose(&inc)?.equals(&f.compose(&la.cover)?) || !lc.cover.compose(&proj)?.equals(&g.compose(&lb.cover)?) {
                return Err(Error::NotExact(format!("cover squares at level {j}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::module::{augmentation_sequence, direct_sum, standard_module, CoefficientRing, StandardModule};
    use crate::IntegerMatrix;

    #[test]
    fn augmentation_sequence_over_c2() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let (i, a) = augmentation_sequence(&g, CoefficientRing::Integers).unwrap();
        let h = Horseshoe::of(&i, &a).unwrap();
        h.verify(3).unwrap();
        assert_eq!(h.middle.level(0).unwrap().rank(), 2);
        let (fa, fc) = (h.left.level(2).unwrap(), h.right.level(2).unwrap());
        assert!(fa.free.same_as(&h.left.term(2).unwrap()) && fc.rank() == 1);
    }

    #[test]
    fn times_two_over_c2() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        let z2 = standard_module(&g, CoefficientRing::Integers, &StandardModule::TrivialMod(2)).unwrap();
        let f = GModuleMap::scalar(&z, 2);
        let p = GModuleMap::new(z.clone(), z2, IntegerMatrix::from_i64_rows(&[vec![1]])).unwrap();
        let h = Horseshoe::of(&f, &p).unwrap();
        h.verify(3).unwrap();
        h.h_star(2).unwrap();
    }

    #[test]
    fn split_sequence() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        let s = standard_module(&g, CoefficientRing::Integers, &StandardModule::Sign).unwrap();
        let sum = direct_sum(&z, &s).unwrap();
        let inc = GModuleMap::new(z.clone(), sum.clone(), IntegerMatrix::from_i64_rows(&[vec![1], vec![0]])).unwrap();
        let proj = GModuleMap::new(sum, s, IntegerMatrix::from_i64_rows(&[vec![0, 1]])).unwrap();
        let h = Horseshoe::of(&inc, &proj).unwrap();
        h.verify(2).unwrap();
        assert!(h.h_star(0).unwrap().is_zero());
        assert!(h.right.verify().is_ok() && h.left.verify().is_ok());
    }

    #[test]
    fn rejects_non_exact_input() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        assert!(Horseshoe::of(&GModuleMap::zero(&z, &z), &GModuleMap::identity(&z)).is_err());
    }
}
