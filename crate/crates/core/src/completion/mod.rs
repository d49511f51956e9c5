//! Mislin completions of `T = Ext(X, -)`: satellites, resolutions, stable
//! homs, Vogel's almost chain maps and the `T_a` family.
//!
//! Every direct-system construction keeps its stage `k` inside the cochain
//! group of `Ext^{n+k}(X, B̃_k)`, so all transitions are the connecting maps
//! of the cover sequences `0 → B̃_{k+1} → B_k → B̃_k → 0` on representatives
//! and the comparison maps are inclusions or quotients.

pub mod colimit;
pub mod compare;
pub mod connecting;
pub mod oracle;
pub mod stable;
pub mod vogel;

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::abelian::{induced_map, AbGroup, AbMap, Subquotient};
use crate::error::{Error, Result};
use crate::ext::{blockwise, ExtGroup};
use crate::module::{standard_module, GModuleMap, ModuleRef, StandardModule};
use crate::resolution::{lift_morphism, CoverPolicy, Resolution, ResolutionCache, Tail};
use crate::satellite::{cover_connecting, satellite_at};

pub use colimit::{colimit_stabilized, limit_map, ColimitPolicy, ColimitResult};
pub use oracle::classical_tate_cyclic;
pub use stable::{stable_hom, transition_t, StableHomGroup};
pub use vogel::VogelGroup;

/// A 0/1 sequence `a_1, a_2, ...` given by a finite prefix and a constant tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SequencePrefix {
    pub bits: Vec<u8>,
    pub tail: u8,
}

impl SequencePrefix {
    pub fn new(bits: Vec<u8>, tail: u8) -> Result<Self> {
        if bits.iter().chain(std::iter::once(&tail)).any(|&b| b > 1) {
            return Err(Error::Input("sequence bits must be 0 or 1".into()));
        }
        Ok(SequencePrefix { bits, tail })
    }

    pub fn zeros() -> Self {
        SequencePrefix { bits: Vec::new(), tail: 0 }
    }

    pub fn ones() -> Self {
        SequencePrefix { bits: Vec::new(), tail: 1 }
    }

    /// `a_i` for `i ≥ 1`.
    pub fn bit(&self, i: usize) -> u8 {
        assert!(i >= 1, "sequence is indexed from 1");
        self.bits.get(i - 1).copied().unwrap_or(self.tail)
    }

    /// `P(a)_k = a_1 + ... + a_k`.
    pub fn p(&self, k: usize) -> usize {
        (1..=k).map(|i| self.bit(i) as usize).sum()
    }

    /// `D(a)_k = k - P(a)_k`.
    pub fn d(&self, k: usize) -> usize {
        k - self.p(k)
    }

    pub fn label(&self) -> String {
        let prefix: String = self.bits.iter().map(|b| char::from(b'0' + b)).collect();
        format!("{prefix}({})", self.tail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Construction {
    Satellite,
    Resolution,
    Naive,
    Vogel,
    Ta(SequencePrefix),
}

impl Construction {
    /// The four constructions in report order.
    pub fn basic() -> Vec<Construction> {
        vec![Construction::Satellite, Construction::Resolution, Construction::Naive, Construction::Vogel]
    }

    pub fn name(&self) -> String {
        match self {
            Construction::Satellite => "satellite".into(),
            Construction::Resolution => "resolution".into(),
            Construction::Naive => "naive".into(),
            Construction::Vogel => "vogel".into(),
            Construction::Ta(a) => format!("T_a[{}]", a.label()),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "satellite" => Ok(Construction::Satellite),
            "resolution" => Ok(Construction::Resolution),
            "naive" => Ok(Construction::Naive),
            "vogel" => Ok(Construction::Vogel),
            _ => s
                .strip_prefix("T_a[")
                .and_then(|r| r.strip_suffix(']'))
                .or_else(|| s.strip_prefix("T_a:"))
                .and_then(parse_ta)
                .ok_or_else(|| Error::Input(format!("unknown construction {s:?}"))),
        }
    }
}

/// `101(0)`: prefix bits, then the constant tail in parentheses.
fn parse_ta(body: &str) -> Option<Construction> {
    let (prefix, tail) = body.strip_suffix(')')?.split_once('(')?;
    let bits = prefix.chars().map(|c| c.to_digit(2).map(|d| d as u8)).collect::<Option<Vec<_>>>()?;
    let tail = tail.parse::<u8>().ok()?;
    SequencePrefix::new(bits, tail).ok().map(Construction::Ta)
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Sign attached to the stagewise connecting maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignConvention {
    /// `(-1)^k` for resolutions and stable homs, `(-1)^{D(a)_k}` for `T_a`.
    Alternating,
    /// Every stage sign replaced by `+1`.
    Unsigned,
    /// `(-1)^{-P(a)_k - 1}` for `T_a`, otherwise as `Alternating`.
    LiteralTa,
}

/// A completed value together with the stage data used to move elements.
#[derive(Clone, Debug)]
pub struct CompletedGroup {
    pub construction: Construction,
    pub degree: i64,
    pub res_x: Arc<Resolution>,
    pub res_b: Arc<Resolution>,
    pub value: AbGroup,
    pub colimit: ColimitResult,
    /// Stage `k` as a subquotient of the cochains of `Ext^{n+k}(X, B̃_k)`.
    pub stages: Vec<Subquotient>,
    pub vogel: Option<VogelGroup>,
}

impl CompletedGroup {
    pub fn argument(&self) -> &ModuleRef {
        self.res_x.base()
    }

    pub fn coefficient(&self) -> &ModuleRef {
        self.res_b.base()
    }

    pub fn stable_at(&self) -> usize {
        self.colimit.stable_at
    }

    /// Stage representative of a limit element, at the stable stage.
    pub fn representative(&self, x: &[crate::Int]) -> Result<(usize, Vec<crate::Int>)> {
        let s = self.colimit.stable_at;
        let q = self.colimit.from_limit(s)?.apply(x);
        Ok((s, self.stages[s].rep(&q)))
    }

    /// Limit class of a stage representative.
    pub fn limit_class(&self, k: usize, rep: &[crate::Int]) -> Option<Vec<crate::Int>> {
        let q = self.stages.get(k)?.class(rep)?;
        Some(self.colimit.to_limit[k].apply(&q))
    }
}

/// `max(2 - n, 0)`: from this stage on every transition is an isomorphism.
pub fn theory_bound(n: i64) -> usize {
    (2 - n).max(0) as usize
}

/// Shared state: a resolution cache, memoized Ext groups and the settings.
pub struct Context {
    cache: ResolutionCache,
    exts: Mutex<HashMap<(usize, usize, i64), ExtGroup>>,
    /// Isomorphisms required after the theory bound.
    pub window: usize,
    /// Largest number of stages any direct system may use.
    pub bound: usize,
    /// Extra stages of the Vogel truncation beyond its first stage.
    pub vogel_width: usize,
    pub signs: SignConvention,
}

impl Default for Context {
    fn default() -> Self {
        Context::new(ResolutionCache::new())
    }
}

impl Context {
    pub fn new(cache: ResolutionCache) -> Self {
        Context { cache, exts: Mutex::new(HashMap::new()), window: 2, bound: 16, vogel_width: 3, signs: SignConvention::Alternating }
    }

    pub fn with_cache_dir(dir: &Path) -> Self {
        Self::new(ResolutionCache::with_dir(dir))
    }

    pub fn unsigned(mut self) -> Self {
        self.signs = SignConvention::Unsigned;
        self
    }

    pub fn persist(&self) -> Result<()> {
        self.cache.persist()
    }

    /// The greedy resolution of `m` shared by all computations.
    pub fn res(&self, m: &ModuleRef) -> Arc<Resolution> {
        self.cache.get(m, CoverPolicy::Greedy)
    }

    /// Memoized `Ext^n(X, b)`.
    pub fn ext(&self, res_x: &Arc<Resolution>, b: &ModuleRef, n: i64) -> Result<ExtGroup> {
        let key = (Arc::as_ptr(res_x) as usize, Arc::as_ptr(b) as usize, n);
        if let Some(e) = self.exts.lock().expect("ext cache").get(&key) {
            return Ok(e.clone());
        }
        let e = ExtGroup::new(res_x, b, n)?;
        self.exts.lock().expect("ext cache").insert(key, e.clone());
        Ok(e)
    }

    pub fn policy(&self, n: i64) -> ColimitPolicy {
        ColimitPolicy::new(theory_bound(n), self.window)
    }

    /// Stage `k` of a direct-system construction.
    pub fn stage(&self, kind: &Construction, res_x: &Arc<Resolution>, res_b: &Arc<Resolution>, n: i64, k: usize) -> Result<Subquotient> {
        let j = n + k as i64;
        if j < 0 {
            return Ok(Subquotient::whole(&AbGroup::zero()));
        }
        match kind {
            Construction::Resolution => Ok(self.ext(res_x, &res_b.syzygy(k)?, j)?.value),
            Construction::Satellite => Ok(satellite_at(res_x, j, k, res_b, 0)?.value),
            Construction::Ta(a) => {
                let (p, d) = (a.p(k), a.d(k));
                if p == 0 {
                    Ok(self.ext(res_x, &res_b.syzygy(k)?, j)?.value)
                } else {
                    Ok(satellite_at(res_x, j, p, res_b, d)?.value)
                }
            }
            Construction::Naive => {
                let full = self.ext(res_x, &res_b.syzygy(k)?, j)?;
                let lvl = res_b.level(k)?;
                let free = self.ext(res_x, &lvl.free, j)?;
                let r = full.rank();
                let through: Vec<_> = free.value.l_generators().iter().map(|z| blockwise(&lvl.cover.map, r, z)).collect();
                let mut n_gens = full.value.n_generators().to_vec();
                n_gens.extend(through);
                Subquotient::new(&full.value.ambient, full.value.l_generators(), &n_gens)
            }
            Construction::Vogel => Err(Error::Input("the Vogel construction has no direct system".into())),
        }
    }

    /// Stages `0..len` and the transitions between them.
    pub fn stage_system(&self, kind: &Construction, res_x: &Arc<Resolution>, res_b: &Arc<Resolution>, n: i64, len: usize) -> Result<(Vec<Subquotient>, Vec<AbMap>)> {
        let stages = (0..len).map(|k| self.stage(kind, res_x, res_b, n, k)).collect::<Result<Vec<_>>>()?;
        let maps = (0..len.saturating_sub(1))
            .map(|k| cover_connecting(&stages[k], &stages[k + 1], res_x, n + k as i64, res_b, k))
            .collect::<Result<Vec<_>>>()?;
        Ok((stages, maps))
    }

    /// The completed value of `Ext^n(X, B)` in the given construction, with
    /// `X` and `B` resolved by the given resolutions.
    pub fn complete_with(&self, kind: &Construction, res_x: &Arc<Resolution>, res_b: &Arc<Resolution>, n: i64) -> Result<CompletedGroup> {
        if *kind == Construction::Vogel {
            let v = VogelGroup::new(self, res_x, res_b, n, None)?;
            return Ok(v.into_completed());
        }
        let policy = self.policy(n);
        let len = policy.stages_needed();
        if len > self.bound {
            return Err(Error::NotStabilized(format!("degree {n} needs {len} stages, bound is {}", self.bound)));
        }
        let (stages, maps) = self.stage_system(kind, res_x, res_b, n, len)?;
        let groups = stages.iter().map(|s| s.group.clone()).collect();
        let colimit = colimit_stabilized(groups, maps, policy)?;
        Ok(CompletedGroup {
            construction: kind.clone(),
            degree: n,
            res_x: res_x.clone(),
            res_b: res_b.clone(),
            value: colimit.limit.clone(),
            colimit,
            stages,
            vogel: None,
        })
    }

    pub fn complete(&self, kind: &Construction, a: &ModuleRef, b: &ModuleRef, n: i64) -> Result<CompletedGroup> {
        let (rx, rb) = (self.res(a), self.res(b));
        self.complete_with(kind, &rx, &rb, n)
    }

    /// Stagewise maps induced by coefficient maps `f̃_k: B̃_k → C̃_k`.
    pub fn coefficient_family(&self, src: &CompletedGroup, dst: &CompletedGroup, maps: &[GModuleMap]) -> Result<Vec<AbMap>> {
        if let (Some(v), Some(w)) = (&src.vogel, &dst.vogel) {
            return Ok(vec![v.induced_by_chain(w, maps)?]);
        }
        let len = src.stages.len().min(dst.stages.len()).min(maps.len());
        (0..len)
            .map(|k| {
                let j = src.degree + k as i64;
                if j < 0 {
                    return Ok(AbMap::zero(&src.stages[k].group, &dst.stages[k].group));
                }
                let r = src.res_x.level(j as usize)?.rank();
                let f = &maps[k].map;
                induced_map(&src.stages[k], &dst.stages[k], |x| Some(blockwise(f, r, x)))
            })
            .collect()
    }

    /// `f̃_0..f̃_{len}` along the resolutions of the two completed groups.
    pub fn syzygy_lifts(&self, f: &GModuleMap, src: &CompletedGroup, dst: &CompletedGroup, len: usize) -> Result<crate::resolution::ChainLift> {
        lift_morphism(f, &Tail::from(&src.res_b), &Tail::from(&dst.res_b), len)
    }

    /// `T̂^n(f)` for `f: B → C` together with its stagewise family.
    pub fn induced_complete(&self, f: &GModuleMap, src: &CompletedGroup, dst: &CompletedGroup) -> Result<(AbMap, Vec<AbMap>)> {
        let len = src.stages.len().max(dst.stages.len()).max(src.vogel.as_ref().map_or(0, |v| v.top + 2));
        let lift = self.syzygy_lifts(f, src, dst, len)?;
        let family = if src.vogel.is_some() { self.coefficient_family(src, dst, &lift.chain)? } else { self.coefficient_family(src, dst, &lift.syzygy)? };
        if let Some(k) = colimit::compatibility_failure(&src.colimit, &dst.colimit, &family)? {
            return Err(Error::StageCompatibility(format!("induced map of {} at stage {k}", src.construction)));
        }
        Ok((limit_map(&src.colimit, &dst.colimit, &family)?, family))
    }
}

/// Argument module of complete cohomology: the trivial module.
pub fn trivial_argument(b: &ModuleRef) -> Result<ModuleRef> {
    standard_module(b.group(), b.ring(), &StandardModule::Trivial)
}

/// `Ĥ^n(G, M)` in the chosen construction.
pub fn complete_group_cohomology(ctx: &Context, m: &ModuleRef, n: i64, construction: &Construction) -> Result<CompletedGroup> {
    let z = trivial_argument(m)?;
    ctx.complete(construction, &z, m, n)
}

/// Colimit of `([Ã_{n+k}, B̃_k], t)`.
pub fn complete_naive(ctx: &Context, a: &ModuleRef, b: &ModuleRef, n: i64) -> Result<CompletedGroup> {
    ctx.complete(&Construction::Naive, a, b, n)
}

/// Colimit of `(Ext^{n+k}(A, B̃_k), δ)`.
pub fn complete_resolution_constr(ctx: &Context, a: &ModuleRef, b: &ModuleRef, n: i64) -> Result<CompletedGroup> {
    ctx.complete(&Construction::Resolution, a, b, n)
}

/// Colimit of `S^{-k}Ext^{n+k}(A, -)(B)`.
pub fn complete_satellite(ctx: &Context, a: &ModuleRef, b: &ModuleRef, n: i64) -> Result<CompletedGroup> {
    ctx.complete(&Construction::Satellite, a, b, n)
}

/// Almost chain maps modulo almost null-homotopies on a finite window.
pub fn complete_vogel(ctx: &Context, a: &ModuleRef, b: &ModuleRef, n: i64) -> Result<CompletedGroup> {
    ctx.complete(&Construction::Vogel, a, b, n)
}

/// Colimit of `S^{-P(a)_k}Ext^{n+k}(A, B̃_{D(a)_k})`.
pub fn complete_ta(ctx: &Context, a: &SequencePrefix, x: &ModuleRef, b: &ModuleRef, n: i64) -> Result<CompletedGroup> {
    ctx.complete(&Construction::Ta(a.clone()), x, b, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::module::{free_module, CoefficientRing};

    fn c(m: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(m))
    }

    fn z(g: &Arc<FiniteGroup>) -> ModuleRef {
        standard_module(g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap()
    }

    #[test]
    fn sequence_counts() {
        let a = SequencePrefix::new(vec![1, 0, 1], 0).unwrap();
        assert_eq!((a.p(0), a.p(1), a.p(2), a.p(3), a.p(5)), (0, 1, 1, 2, 2));
        assert_eq!(a.d(5), 3);
        assert!(SequencePrefix::new(vec![2], 0).is_err());
        let c = Construction::Ta(a.clone());
        assert_eq!(Construction::parse(&c.name()).unwrap(), c);
    }

    #[test]
    fn direct_system_values_over_c2() {
        let ctx = Context::default();
        let g = c(2);
        let z = z(&g);
        for kind in [Construction::Resolution, Construction::Satellite, Construction::Naive, Construction::Ta(SequencePrefix::new(vec![1, 0], 1).unwrap())] {
            for (n, order) in [(0, 2), (-1, 1), (2, 2), (-2, 2), (1, 1)] {
                let v = ctx.complete(&kind, &z, &z, n).unwrap();
                assert_eq!(v.value.order(), Some(crate::Int::from(order)), "{kind} n={n}");
                assert!(v.colimit.verify_cocone());
                assert!(v.stable_at() <= theory_bound(n) + 1);
            }
        }
    }

    #[test]
    fn free_coefficients_vanish() {
        let ctx = Context::default();
        let g = c(2);
        let f = free_module(&g, CoefficientRing::Integers, 1);
        for kind in [Construction::Resolution, Construction::Satellite, Construction::Naive] {
            for n in -3..=3 {
                assert!(ctx.complete(&kind, &z(&g), &f, n).unwrap().value.is_trivial());
            }
        }
    }

    #[test]
    fn group_cohomology_examples() {
        let ctx = Context::default();
        let m = z(&c(3));
        let v = complete_group_cohomology(&ctx, &m, 2, &Construction::Resolution).unwrap();
        assert_eq!(v.value, AbGroup::cyclic(3));
        let t = Arc::new(FiniteGroup::trivial());
        assert!(complete_group_cohomology(&ctx, &z(&t), 0, &Construction::Naive).unwrap().value.is_trivial());
    }

    #[test]
    fn all_zero_and_all_one_sequences_match() {
        let ctx = Context::default();
        let g = c(3);
        let z = z(&g);
        for n in -2..=2 {
            let r = ctx.complete(&Construction::Resolution, &z, &z, n).unwrap();
            let e = ctx.complete(&Construction::Ta(SequencePrefix::zeros()), &z, &z, n).unwrap();
            let s = ctx.complete(&Construction::Satellite, &z, &z, n).unwrap();
            let f = ctx.complete(&Construction::Ta(SequencePrefix::ones()), &z, &z, n).unwrap();
            for k in 0..r.stages.len() {
                assert!(r.stages[k].same_subgroup(&e.stages[k]));
                assert!(s.stages[k].same_subgroup(&f.stages[k]));
            }
        }
    }

    #[test]
    fn induced_by_times_two_kills_h0() {
        let ctx = Context::default();
        let g = c(2);
        let z = z(&g);
        let v = ctx.complete(&Construction::Resolution, &z, &z, 0).unwrap();
        let (m, _) = ctx.induced_complete(&GModuleMap::scalar(&z, 2), &v, &v).unwrap();
        assert!(m.is_zero());
        let (id, _) = ctx.induced_complete(&GModuleMap::identity(&z), &v, &v).unwrap();
        assert!(id.equals(&AbMap::identity(&v.value)));
    }
}
