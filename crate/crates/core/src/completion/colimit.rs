//! Stabilized direct limits of finitely many stages.

use crate::abelian::{AbGroup, AbMap};
use crate::error::{Error, Result};

/// How many stages a direct system needs before its limit is trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColimitPolicy {
    /// Stage from which the transition maps are known to be isomorphisms.
    pub theory_bound: usize,
    /// Number of consecutive isomorphisms checked from the bound on.
    pub window: usize,
}

impl ColimitPolicy {
    pub fn new(theory_bound: usize, window: usize) -> Self {
        ColimitPolicy { theory_bound, window }
    }

    /// Number of stages to compute.
    pub fn stages_needed(&self) -> usize {
        self.theory_bound + self.window + 1
    }
}

/// A direct system cut off once it has stabilized; the limit is the stage
/// `stable_at`.
#[derive(Clone, Debug)]
pub struct ColimitResult {
    pub stages: Vec<AbGroup>,
    pub maps: Vec<AbMap>,
    pub limit: AbGroup,
    pub stable_at: usize,
    pub to_limit: Vec<AbMap>,
}

impl ColimitResult {
    /// The map `stage k → stage l` for `k ≤ l`.
    pub fn transition(&self, k: usize, l: usize) -> Result<AbMap> {
        let mut m = AbMap::identity(&self.stages[k]);
        for j in k..l {
            m = self.maps[j].compose(&m)?;
        }
        Ok(m)
    }

    /// Inverse of the cocone leg at a stable stage.
    pub fn from_limit(&self, k: usize) -> Result<AbMap> {
        if k < self.stable_at {
            return Err(Error::NotStabilized(format!("stage {k} precedes the stable stage {}", self.stable_at)));
        }
        self.to_limit[k].inverse()
    }

    /// Last stage index.
    pub fn last(&self) -> usize {
        self.stages.len() - 1
    }

    /// Checks `to_limit[k+1] ∘ maps[k] = to_limit[k]` at every stage.
    pub fn verify_cocone(&self) -> bool {
        self.maps.iter().enumerate().all(|(k, m)| self.to_limit[k + 1].compose(m).map(|c| c.equals(&self.to_limit[k])).unwrap_or(false))
    }
}

fn describe(stages: &[AbGroup], maps: &[AbMap]) -> String {
    let mut parts = Vec::new();
    for (k, g) in stages.iter().enumerate() {
        let iso = maps.get(k).map(|m| if m.is_iso() { " iso" } else { " non-iso" }).unwrap_or("");
        parts.push(format!("stage {k}: {g}{iso}"));
    }
    parts.join("; ")
}

/// Finds the first stage from which every supplied map is an isomorphism and
/// realizes the limit there. Fails when fewer than `policy.window` such maps
/// follow it or when too few stages are supplied.
pub fn colimit_stabilized(stages: Vec<AbGroup>, maps: Vec<AbMap>, policy: ColimitPolicy) -> Result<ColimitResult> {
    if stages.is_empty() || maps.len() + 1 != stages.len() {
        return Err(Error::Mismatch(format!("{} stages with {} maps", stages.len(), maps.len())));
    }
    for (k, m) in maps.iter().enumerate() {
        if m.src != stages[k] || m.dst != stages[k + 1] {
            return Err(Error::Mismatch(format!("map {k} is not composable")));
        }
    }
    if stages.len() < policy.stages_needed() {
        return Err(Error::NotStabilized(format!("{} stages supplied, {} needed: {}", stages.len(), policy.stages_needed(), describe(&stages, &maps))));
    }
    let mut s = maps.len();
    while s > 0 && maps[s - 1].is_iso() {
        s -= 1;
    }
    if maps.len() - s < policy.window || s > policy.theory_bound + 1 {
        return Err(Error::NotStabilized(describe(&stages, &maps)));
    }
    let mut to_limit = vec![AbMap::identity(&stages[s]); stages.len()];
    for k in (0..s).rev() {
        to_limit[k] = to_limit[k + 1].compose(&maps[k])?;
    }
    for k in s + 1..stages.len() {
        to_limit[k] = to_limit[k - 1].compose(&maps[k - 1].inverse()?)?;
    }
    let limit = stages[s].clone();
    Ok(ColimitResult { stages, maps, limit, stable_at: s, to_limit })
}

/// The map of limits induced by a stagewise family `φ_k: X_k → Y_k`.
pub fn limit_map(src: &ColimitResult, dst: &ColimitResult, family: &[AbMap]) -> Result<AbMap> {
    let s = src.stable_at.max(dst.stable_at);
    let phi = family.get(s).ok_or_else(|| Error::NotStabilized(format!("no stage map at stage {s}")))?;
    dst.to_limit[s].compose(phi)?.compose(&src.from_limit(s)?)
}

/// First stage where `φ_{k+1} ∘ x_k = y_k ∘ φ_k` fails, if any.
pub fn compatibility_failure(src: &ColimitResult, dst: &ColimitResult, family: &[AbMap]) -> Result<Option<usize>> {
    let top = family.len().min(src.stages.len()).min(dst.stages.len());
    for k in 0..top.saturating_sub(1) {
        let a = family[k + 1].compose(&src.maps[k])?;
        let b = dst.maps[k].compose(&family[k])?;
        if !a.equals(&b) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
