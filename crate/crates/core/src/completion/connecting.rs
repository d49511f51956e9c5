//! Signed connecting maps of completed functors and long exact sequences.

use std::sync::Arc;

use serde::Serialize;

use crate::abelian::{induced_map, is_exact_at, AbMap};
use crate::error::{Error, Result};
use crate::ext::{blockwise, ConnectingCochain};
use crate::horseshoe::Horseshoe;
use crate::module::{check_ses, GModuleMap, ModuleRef};
use crate::resolution::Resolution;
use crate::satellite::lifted_h_star;

use super::colimit::{compatibility_failure, limit_map};
use super::vogel::{default_window, VogelGroup};
use super::{theory_bound, CompletedGroup, Construction, Context, SignConvention};

/// `0 → A →f B →g C → 0` with its horseshoe over the shared resolutions of
/// `A` and `C`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub f: GModuleMap,
    pub g: GModuleMap,
    pub hs: Arc<Horseshoe>,
}

impl ShortExact {
    pub fn new(ctx: &Context, f: &GModuleMap, g: &GModuleMap) -> Result<Self> {
        if !check_ses(f, g)? {
            return Err(Error::NotExact("input sequence is not short exact".into()));
        }
        let hs = Horseshoe::new(f, g, ctx.res(&f.src), ctx.res(&g.dst))?;
        Ok(ShortExact { f: f.clone(), g: g.clone(), hs })
    }

    pub fn left(&self) -> &ModuleRef {
        &self.f.src
    }

    pub fn middle(&self) -> &ModuleRef {
        &self.f.dst
    }

    pub fn right(&self) -> &ModuleRef {
        &self.g.dst
    }
}

/// A stagewise family and its limit.
#[derive(Clone, Debug)]
pub struct FamilyMap {
    pub family: Vec<AbMap>,
    pub map: AbMap,
    /// First stage where the family fails to commute with the transitions.
    pub failure: Option<usize>,
}

/// Sign of the `k`-th stage of the connecting family.
pub fn stage_sign(signs: SignConvention, kind: &Construction, k: usize) -> i64 {
    let alt = |e: usize| if e % 2 == 0 { 1 } else { -1 };
    match (signs, kind) {
        (SignConvention::Unsigned, _) => 1,
        (_, Construction::Resolution | Construction::Naive) => alt(k),
        (_, Construction::Satellite | Construction::Vogel) => 1,
        (SignConvention::Alternating, Construction::Ta(a)) => alt(a.d(k)),
        (SignConvention::LiteralTa, Construction::Ta(a)) => alt(a.p(k) + 1),
    }
}

impl Context {
    /// Connecting map `T̂^n(C) → T̂^{n+1}(A)` between completed groups built
    /// over the outer resolutions of the horseshoe.
    pub fn connecting_family(&self, ses: &ShortExact, src: &CompletedGroup, dst: &CompletedGroup) -> Result<FamilyMap> {
        let kind = &src.construction;
        if dst.construction != *kind || dst.degree != src.degree + 1 {
            return Err(Error::Mismatch("connecting map needs one construction in consecutive degrees".into()));
        }
        if !Arc::ptr_eq(&src.res_b, &ses.hs.right) || !Arc::ptr_eq(&dst.res_b, &ses.hs.left) {
            return Err(Error::Mismatch("completed groups are not built over the horseshoe".into()));
        }
        if let (Some(v), Some(w)) = (&src.vogel, &dst.vogel) {
            let sign = stage_sign(self.signs, kind, v.bottom);
            let map = v.delta_hat(w, &ses.hs, sign)?;
            return Ok(FamilyMap { family: vec![map.clone()], map, failure: None });
        }
        let len = src.stages.len().min(dst.stages.len());
        ses.hs.ensure(len + 1)?;
        let n = src.degree;
        let mut family = Vec::with_capacity(len);
        for k in 0..len {
            let j = n + k as i64;
            if j < 0 {
                family.push(AbMap::zero(&src.stages[k].group, &dst.stages[k].group));
                continue;
            }
            let sign = num_bigint::BigInt::from(stage_sign(self.signs, kind, k));
            let stage = match kind {
                Construction::Resolution => {
                    let (f, g) = ses.hs.syzygy_sequence(k)?;
                    let c = ConnectingCochain::new(&src.res_x, &f, &g, j as usize)?;
                    induced_map(&src.stages[k], &dst.stages[k], |x| c.apply(x).map(|v| v.into_iter().map(|e| e * &sign).collect()))?
                }
                _ => {
                    let (d, p) = match kind {
                        Construction::Naive => (k, 0),
                        Construction::Satellite => (0, k),
                        Construction::Ta(a) => (a.d(k), a.p(k)),
                        _ => unreachable!("handled above"),
                    };
                    let h = lifted_h_star(&ses.hs, d, p)?;
                    let lvl = ses.hs.right.level(k)?;
                    let c = ConnectingCochain::new(&src.res_x, &lvl.incl, &lvl.cover, j as usize)?;
                    let r = src.res_x.level(j as usize + 1)?.rank();
                    induced_map(&src.stages[k], &dst.stages[k], |x| {
                        let y = c.apply(x)?;
                        Some(blockwise(&h.map, r, &y).into_iter().map(|e| e * &sign).collect())
                    })?
                }
            };
            family.push(stage);
        }
        let failure = compatibility_failure(&src.colimit, &dst.colimit, &family)?;
        let map = limit_map(&src.colimit, &dst.colimit, &family)?;
        Ok(FamilyMap { family, map, failure })
    }

    /// Stagewise maps `T(f̃_k)` or `T(g̃_k)` along the horseshoe rows.
    pub fn horseshoe_family(&self, ses: &ShortExact, src: &CompletedGroup, dst: &CompletedGroup, left: bool) -> Result<FamilyMap> {
        let len = src.stages.len().max(dst.stages.len()).max(src.vogel.as_ref().map_or(0, |v| v.top + 1));
        ses.hs.ensure(len + 1)?;
        let mut maps = Vec::with_capacity(len);
        for k in 0..len {
            let m = if src.vogel.is_some() {
                let (i, p) = ses.hs.free_maps(k)?;
                if left { i } else { p }
            } else {
                let (f, g) = ses.hs.syzygy_sequence(k)?;
                if left { f } else { g }
            };
            maps.push(m);
        }
        let family = self.coefficient_family(src, dst, &maps)?;
        let failure = compatibility_failure(&src.colimit, &dst.colimit, &family)?;
        let map = limit_map(&src.colimit, &dst.colimit, &family)?;
        Ok(FamilyMap { family, map, failure })
    }

    /// Completed group for the LES: Vogel groups share one window.
    pub fn les_group(&self, kind: &Construction, res_x: &Arc<Resolution>, res_b: &Arc<Resolution>, n: i64, window: (usize, usize)) -> Result<CompletedGroup> {
        if *kind == Construction::Vogel {
            return Ok(VogelGroup::with_window(res_x, res_b, n, window.0, window.1)?.into_completed());
        }
        self.complete_with(kind, res_x, res_b, n)
    }

    /// `δ̂: T̂^n(C) → T̂^{n+1}(A)`. Fails when the stage family is not
    /// compatible with the transitions.
    pub fn connecting_complete(&self, kind: &Construction, x: &ModuleRef, ses: &ShortExact, n: i64) -> Result<FamilyMap> {
        let rx = self.res(x);
        let window = default_window(n, self.vogel_width);
        let src = self.les_group(kind, &rx, &ses.hs.right, n, window)?;
        let dst = self.les_group(kind, &rx, &ses.hs.left, n + 1, window)?;
        let fm = self.connecting_family(ses, &src, &dst)?;
        if let Some(k) = fm.failure {
            return Err(Error::StageCompatibility(format!("{kind} connecting map in degree {n} at stage {k}")));
        }
        Ok(fm)
    }

    /// Checks exactness of `… → T̂^n(A) → T̂^n(B) → T̂^n(C) → T̂^{n+1}(A) → …`
    /// at every node between degrees `lo` and `hi`.
    pub fn verify_les(&self, kind: &Construction, x: &ModuleRef, ses: &ShortExact, lo: i64, hi: i64) -> Result<LesReport> {
        let rx = self.res(x);
        let window = default_window(lo, self.vogel_width);
        let need = theory_bound(lo) + self.window + 3 + window.1;
        ses.hs.ensure(need)?;
        let mut a_groups = Vec::new();
        let mut nodes = Vec::new();
        let mut failures = Vec::new();
        for n in lo..=hi + 1 {
            a_groups.push(self.les_group(kind, &rx, &ses.hs.left, n, window)?);
        }
        let mut prev_delta: Option<AbMap> = None;
        for (i, n) in (lo..=hi).enumerate() {
            let ga = &a_groups[i];
            let gb = self.les_group(kind, &rx, &ses.hs.middle, n, window)?;
            let gc = self.les_group(kind, &rx, &ses.hs.right, n, window)?;
            let f = self.horseshoe_family(ses, ga, &gb, true)?;
            let g = self.horseshoe_family(ses, &gb, &gc, false)?;
            let d = self.connecting_family(ses, &gc, &a_groups[i + 1])?;
            for (name, fm) in [("f", &f), ("g", &g), ("delta", &d)] {
                if let Some(k) = fm.failure {
                    failures.push(StageFailure { degree: n, map: name.into(), stage: k });
                }
            }
            if let Some(pd) = &prev_delta {
                nodes.push(LesNode { degree: n, node: "A".into(), exact: is_exact_at(pd, &f.map) });
            }
            nodes.push(LesNode { degree: n, node: "B".into(), exact: is_exact_at(&f.map, &g.map) });
            nodes.push(LesNode { degree: n, node: "C".into(), exact: is_exact_at(&g.map, &d.map) });
            prev_delta = Some(d.map);
        }
        Ok(LesReport { construction: kind.name(), nodes, stage_failures: failures })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LesNode {
    pub degree: i64,
    pub node: String,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageFailure {
    pub degree: i64,
    pub map: String,
    pub stage: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub construction: String,
    pub nodes: Vec<LesNode>,
    pub stage_failures: Vec<StageFailure>,
}

impl LesReport {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    pub fn compatible(&self) -> bool {
        self.stage_failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::module::{augmentation_sequence, standard_module, CoefficientRing, StandardModule};
    use crate::IntegerMatrix;

    fn times_m(m: usize) -> (Context, ModuleRef, ShortExact) {
        let ctx = Context::default();
        let g = Arc::new(FiniteGroup::cyclic(m));
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        let zm = standard_module(&g, CoefficientRing::Integers, &StandardModule::TrivialMod(m as u64)).unwrap();
        let f = GModuleMap::scalar(&z, m as i64);
        let p = GModuleMap::new(z.clone(), zm, IntegerMatrix::from_i64_rows(&[vec![1]])).unwrap();
        let ses = ShortExact::new(&ctx, &f, &p).unwrap();
        (ctx, z, ses)
    }

    #[test]
    fn les_of_times_two() {
        let (ctx, z, ses) = times_m(2);
        for kind in [Construction::Resolution, Construction::Naive, Construction::Satellite] {
            let r = ctx.verify_les(&kind, &z, &ses, -2, 2).unwrap();
            assert!(r.exact(), "{kind}: {:?}", r.nodes);
            assert!(r.compatible(), "{kind}: {:?}", r.stage_failures);
        }
    }

    #[test]
    fn connecting_map_is_nonzero_where_expected() {
        let (ctx, z, ses) = times_m(2);
        let d = ctx.connecting_complete(&Construction::Resolution, &z, &ses, -1).unwrap();
        assert!(d.map.is_iso());
        let d = ctx.connecting_complete(&Construction::Resolution, &z, &ses, 0).unwrap();
        assert!(d.map.is_zero());
    }

    #[test]
    fn unsigned_families_break() {
        // signs are invisible on 2-torsion
        let (ctx, z, ses) = times_m(3);
        let ctx = Context { signs: SignConvention::Unsigned, ..ctx };
        let r = ctx.verify_les(&Construction::Resolution, &z, &ses, -2, 2).unwrap();
        assert!(!r.compatible());
    }

    #[test]
    fn augmentation_les_over_c2() {
        let ctx = Context::default();
        let g = Arc::new(FiniteGroup::cyclic(2));
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        let (i, a) = augmentation_sequence(&g, CoefficientRing::Integers).unwrap();
        let ses = ShortExact::new(&ctx, &i, &a).unwrap();
        let d = ctx.connecting_complete(&Construction::Naive, &z, &ses, 0).unwrap();
        assert!(d.map.is_iso());
    }

    #[test]
    fn ta_sign_conventions() {
        use super::super::SequencePrefix;
        let (mut ctx, z, ses) = times_m(3);
        let kind = Construction::Ta(SequencePrefix::new(vec![1, 0, 1, 0, 1, 0], 1).unwrap());
        let r = ctx.verify_les(&kind, &z, &ses, -2, 2).unwrap();
        assert!(r.exact() && r.compatible());
        ctx.signs = SignConvention::LiteralTa;
        let r = ctx.verify_les(&kind, &z, &ses, -2, 2).unwrap();
        assert!(r.exact());
        assert!(!r.compatible());
    }

    #[test]
    fn vogel_les_over_c3() {
        let (ctx, z, ses) = times_m(3);
        let r = ctx.verify_les(&Construction::Vogel, &z, &ses, -2, 2).unwrap();
        assert!(r.exact(), "{:?}", r.nodes);
    }
}
