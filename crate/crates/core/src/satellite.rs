//! Left satellites of `T = Ext^m(X, -)`, the maps `ε` and `underline δ`.
//!
//! `S^{-k}T(M)` is realized as a subgroup of `T(M̃_k)`: the classes killed
//! by every `T(Ω^{k-j} ι_j): T(M̃_k) → T(Ω^{k-j} F_{j-1})`.

use std::sync::Arc;

use crate::abelian::{induced_map, AbGroup, AbMap, Subquotient};
use crate::error::{Error, Result};
use crate::ext::{blockwise, induced_coeff, ConnectingCochain, ExtGroup};
use crate::horseshoe::Horseshoe;
use crate::module::{GModuleMap, ModuleRef};
use crate::resolution::{lift_morphism, CoverPolicy, Resolution, Tail};

/// Resolutions used for the free terms met while iterating satellites.
pub type Resolver<'a> = &'a dyn Fn(&ModuleRef) -> Arc<Resolution>;

/// Greedy resolver: free modules cover themselves, so their satellites vanish.
pub fn greedy_resolver(m: &ModuleRef) -> Arc<Resolution> {
    Resolution::new(m.clone(), CoverPolicy::Greedy)
}

/// `S^{-k}T^m(M)` inside `T^m(M̃_k)`.
#[derive(Clone, Debug)]
pub struct Satellite {
    pub ext: ExtGroup,
    /// Same ambient as `ext.value`, with the smaller lattice.
    pub value: Subquotient,
    pub order: usize,
}

impl Satellite {
    pub fn group(&self) -> &AbGroup {
        &self.value.group
    }

    pub fn is_zero(&self) -> bool {
        self.value.group.is_trivial()
    }

    /// The satellite as a full Ext group (order 0).
    pub fn full(ext: ExtGroup) -> Self {
        let value = ext.value.clone();
        Satellite { ext, value, order: 0 }
    }

    /// Inclusion into `T(M̃_k)`; the composite of the `ε` embeddings.
    pub fn embedding(&self) -> Result<AbMap> {
        induced_map(&self.value, &self.ext.value, |x| Some(x.to_vec()))
    }
}

/// `S^{-k} Ext^m(X, -)` evaluated at the base of `tail`.
pub fn satellite_group(res_x: &Arc<Resolution>, m: i64, k: usize, tail: &Tail, resolver: Resolver) -> Result<Satellite> {
    let top = tail.syzygy(k)?;
    let ext = ExtGroup::new(res_x, &top, m)?;
    if k == 0 || ext.is_zero() {
        let mut s = Satellite::full(ext);
        s.order = k;
        return Ok(s);
    }
    let mut blocks: Vec<AbMap> = Vec::new();
    for j in 1..=k {
        let iota = tail.level(j - 1)?.incl.clone();
        let free_res = resolver(&iota.dst);
        let lift = lift_morphism(&iota, &Tail::new(&tail.res, tail.offset + j), &Tail::from(&free_res), k - j)?;
        let target = &lift.syzygy[k - j];
        if target.dst.is_zero() {
            continue;
        }
        let dst = ExtGroup::new(res_x, &target.dst, m)?;
        if dst.is_zero() {
            continue;
        }
        blocks.push(induced_coeff(&ext, &dst, target)?);
    }
    let kernel_reps = if blocks.is_empty() {
        return Ok(Satellite { value: ext.value.clone(), ext, order: k });
    } else {
        let mut rows = blocks[0].matrix.clone();
        let mut dst = blocks[0].dst.clone();
        for b in &blocks[1..] {
            rows = rows.vstack(&b.matrix);
            dst = dst.direct_sum(&b.dst);
        }
        let stacked = AbMap::new(ext.group().clone(), dst, rows)?;
        stacked.kernel().gen_reps()
    };
    let reps: Vec<_> = kernel_reps.iter().map(|q| ext.rep(q)).collect();
    let value = ext.value.subgroup_from_reps(&reps)?;
    Ok(Satellite { ext, value, order: k })
}

/// Satellite along a greedy resolution starting at `offset`.
pub fn satellite_at(res_x: &Arc<Resolution>, m: i64, k: usize, res_m: &Arc<Resolution>, offset: usize) -> Result<Satellite> {
    satellite_group(res_x, m, k, &Tail::new(res_m, offset), &greedy_resolver)
}

/// `ε^{-k-1}: S^{-k-1}T(C) → S^{-k}T(A)` for `0 → A → B → C → 0`,
/// through the lift `h*: C̃_1 → A` of the cover of `C`.
pub fn satellite_epsilon(res_x: &Arc<Resolution>, m: i64, k: usize, hs: &Horseshoe) -> Result<(Satellite, Satellite, AbMap)> {
    let src = satellite_at(res_x, m, k + 1, &hs.right, 0)?;
    let dst = satellite_at(res_x, m, k, &hs.left, 0)?;
    let map = epsilon_between(&src, &dst, hs, 0, k)?;
    Ok((src, dst, map))
}

/// `T(Ω^p h*_d)` restricted to the given subgroups, where
/// `h*_d: C̃_{d+1} → Ã_d` comes from the horseshoe.
pub fn epsilon_between(src: &Satellite, dst: &Satellite, hs: &Horseshoe, d: usize, p: usize) -> Result<AbMap> {
    let lifted = lifted_h_star(hs, d, p)?;
    let r = src.ext.rank();
    induced_map(&src.value, &dst.value, |x| Some(blockwise(&lifted.map, r, x)))
}

/// `Ω^p h*_d: C̃_{d+1+p} → Ã_{d+p}`.
pub fn lifted_h_star(hs: &Horseshoe, d: usize, p: usize) -> Result<GModuleMap> {
    let h = hs.h_star(d)?;
    let lift = lift_morphism(&h, &Tail::new(&hs.right, d + 1), &Tail::new(&hs.left, d), p)?;
    Ok(lift.syzygy[p].clone())
}

/// `underline δ^n: T^n(M̃_j) → S^{-1}T^{n+1}(M̃_j)`, the connecting map of
/// the cover sequence `0 → M̃_{j+1} → F_j → M̃_j → 0` corestricted.
pub fn underline_delta(res_x: &Arc<Resolution>, n: i64, res_m: &Arc<Resolution>, j: usize) -> Result<(ExtGroup, Satellite, AbMap)> {
    let src = ExtGroup::new(res_x, &res_m.syzygy(j)?, n)?;
    let dst = satellite_at(res_x, n + 1, 1, res_m, j)?;
    let map = cover_connecting(&src.value, &dst.value, res_x, n, res_m, j)?;
    Ok((src, dst, map))
}

/// Connecting map of the `j`-th cover sequence of `res_m` between
/// arbitrary subgroups of `T^n(M̃_j)` and `T^{n+1}(M̃_{j+1})`.
pub fn cover_connecting(src: &Subquotient, dst: &Subquotient, res_x: &Arc<Resolution>, n: i64, res_m: &Arc<Resolution>, j: usize) -> Result<AbMap> {
    if n < 0 {
        return Ok(AbMap::zero(&src.group, &dst.group));
    }
    let lvl = res_m.level(j)?;
    let c = ConnectingCochain::new(res_x, &lvl.incl, &lvl.cover, n as usize)?;
    induced_map(src, dst, |x| c.apply(x))
}

/// Satellite values along two cover policies, for independence checks.
pub fn satellite_with_policy(res_x: &Arc<Resolution>, m: i64, k: usize, base: &ModuleRef, policy: CoverPolicy) -> Result<Satellite> {
    if policy == CoverPolicy::Manual {
        return Err(Error::Input("manual resolutions have no cover policy".into()));
    }
    let res = Resolution::new(base.clone(), policy);
    let resolver = move |m: &ModuleRef| Resolution::new(m.clone(), policy);
    satellite_group(res_x, m, k, &Tail::from(&res), &resolver)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::groups_isomorphic;
    use crate::group::FiniteGroup;
    use crate::module::{augmentation_sequence, free_module, standard_module, CoefficientRing, StandardModule};

    fn c2_setup() -> (Arc<FiniteGroup>, ModuleRef, Arc<Resolution>) {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        let res = Resolution::new(z.clone(), CoverPolicy::Greedy);
        (g, z, res)
    }

    #[test]
    fn satellite_examples_over_c2() {
        let (g, z, rx) = c2_setup();
        let rz = Resolution::new(z.clone(), CoverPolicy::Greedy);
        let s0 = satellite_at(&rx, 2, 0, &rz, 0).unwrap();
        assert_eq!(s0.group(), &AbGroup::cyclic(2));
        let s1 = satellite_at(&rx, 1, 1, &rz, 0).unwrap();
        assert_eq!(s1.group(), &AbGroup::cyclic(2));
        let free = free_module(&g, CoefficientRing::Integers, 2);
        let rf = Resolution::new(free.clone(), CoverPolicy::Greedy);
        for m in 0..3 {
            for k in 1..3 {
                assert!(satellite_at(&rx, m, k, &rf, 0).unwrap().is_zero());
                for policy in [CoverPolicy::Padded, CoverPolicy::AllGenerators] {
                    assert!(satellite_with_policy(&rx, m, k, &free, policy).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn satellites_do_not_depend_on_covers() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        let rx = Resolution::new(z.clone(), CoverPolicy::Greedy);
        for m in 0..3 {
            for k in 0..3 {
                let a = satellite_with_policy(&rx, m, k, &z, CoverPolicy::Greedy).unwrap();
                let b = satellite_with_policy(&rx, m, k, &z, CoverPolicy::Padded).unwrap();
                assert!(groups_isomorphic(a.group(), b.group()), "m={m} k={k}: {} vs {}", a.group(), b.group());
            }
        }
    }

    #[test]
    fn epsilon_and_underline_delta() {
        let (g, z, rx) = c2_setup();
        let (i, a) = augmentation_sequence(&g, CoefficientRing::Integers).unwrap();
        let hs = Horseshoe::of(&i, &a).unwrap();
        let (src, dst, eps) = satellite_epsilon(&rx, 1, 0, &hs).unwrap();
        assert_eq!(src.group(), &AbGroup::cyclic(2));
        assert_eq!(dst.group(), &AbGroup::cyclic(2));
        assert!(eps.is_injective() && !eps.is_zero());
        let rz = Resolution::new(z.clone(), CoverPolicy::Greedy);
        let (s, t, ud) = underline_delta(&rx, 1, &rz, 0).unwrap();
        assert!(ud.is_iso());
        let full = ExtGroup::new(&rx, &rz.syzygy(1).unwrap(), 2).unwrap();
        let delta = cover_connecting(&s.value, &full.value, &rx, 1, &rz, 0).unwrap();
        let incl = induced_map(&t.value, &full.value, |x| Some(x.to_vec())).unwrap();
        assert!(incl.compose(&ud).unwrap().equals(&delta));
    }
}
