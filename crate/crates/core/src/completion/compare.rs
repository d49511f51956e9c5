//! Comparison maps ω, ω_a, β, σ, ρ between the constructions and the
//! connecting squares they have to respect.

use std::sync::Arc;

use serde::Serialize;

use crate::abelian::{induced_map, AbGroup, AbMap};
use crate::error::{Error, Result};
use crate::module::{GModuleMap, ModuleRef};
use crate::resolution::Resolution;

use super::colimit::{compatibility_failure, limit_map};
use super::connecting::{FamilyMap, ShortExact};
use super::vogel::{default_window, VogelGroup};
use super::{CompletedGroup, Construction, Context, SequencePrefix};

/// Outcome of one verified diagram or bijectivity claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl DiagramCheck {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        DiagramCheck { name: name.into(), passed, detail: detail.into() }
    }

    fn iso(name: &str, f: &FamilyMap) -> Self {
        let ok = f.failure.is_none() && f.map.is_iso();
        let detail = match f.failure {
            Some(k) => format!("stage {k} incompatible"),
            None if ok => format!("{} ≅ {}", f.map.src, f.map.dst),
            None => format!("not bijective: {} → {}", f.map.src, f.map.dst),
        };
        DiagramCheck::new(name, ok, detail)
    }

    fn square(name: &str, left: &AbMap, right: &AbMap) -> Self {
        let ok = left.equals(right);
        DiagramCheck::new(name, ok, if ok { "commutes".to_string() } else { format!("{left:?} ≠ {right:?}") })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedMap {
    pub name: String,
    pub map: AbMap,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedValue {
    pub construction: String,
    pub value: String,
    pub stable_at: usize,
}

/// Values, comparison matrices and checks for one `(A, B, n)`.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub degree: i64,
    pub values: Vec<NamedValue>,
    pub maps: Vec<NamedMap>,
    pub checks: Vec<DiagramCheck>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&DiagramCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Connecting-square checks for one SES and degree.
#[derive(Clone, Debug, Serialize)]
pub struct SquareReport {
    pub degree: i64,
    pub checks: Vec<DiagramCheck>,
    /// Whether the snake-lemma map on the Vogel complexes equals `Δ̂`.
    /// Reported only.
    pub snake_agrees: Option<bool>,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The family of stagewise identities on representatives. Meaningful when
/// the stages of `src` lie inside the stages of `dst` or the other way
/// around modulo a larger subgroup.
pub fn stagewise_identity(src: &CompletedGroup, dst: &CompletedGroup) -> Result<FamilyMap> {
    if src.degree != dst.degree || !Arc::ptr_eq(&src.res_x, &dst.res_x) || !Arc::ptr_eq(&src.res_b, &dst.res_b) {
        return Err(Error::Mismatch("comparison needs the same resolutions and degree".into()));
    }
    let len = src.stages.len().min(dst.stages.len());
    let family = (0..len).map(|k| induced_map(&src.stages[k], &dst.stages[k], |x| Some(x.to_vec()))).collect::<Result<Vec<_>>>()?;
    let failure = compatibility_failure(&src.colimit, &dst.colimit, &family)?;
    let map = limit_map(&src.colimit, &dst.colimit, &family)?;
    Ok(FamilyMap { family, map, failure })
}

fn expect(g: &CompletedGroup, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Mismatch(format!("expected {what}, got {}", g.construction)))
    }
}

/// `ω`: satellite (or `T_a`) stages included into the resolution stages.
pub fn omega(sat: &CompletedGroup, res: &CompletedGroup) -> Result<FamilyMap> {
    expect(sat, matches!(sat.construction, Construction::Satellite | Construction::Ta(_)), "satellite or T_a")?;
    expect(res, res.construction == Construction::Resolution, "resolution")?;
    stagewise_identity(sat, res)
}

/// `β`: Ext classes modulo maps through the free covers.
pub fn beta(res: &CompletedGroup, naive: &CompletedGroup) -> Result<FamilyMap> {
    expect(res, res.construction == Construction::Resolution, "resolution")?;
    expect(naive, naive.construction == Construction::Naive, "naive")?;
    stagewise_identity(res, naive)
}

/// `σ`: a class at the first Vogel stage lifted to an almost chain map.
pub fn sigma(res: &CompletedGroup, vogel: &CompletedGroup) -> Result<AbMap> {
    expect(res, res.construction == Construction::Resolution, "resolution")?;
    let v = vogel.vogel.as_ref().ok_or_else(|| Error::Mismatch("expected vogel".into()))?;
    let (s, t) = (v.bottom, res.stable_at());
    if t > s || s >= res.stages.len() {
        return Err(Error::WindowTooSmall(format!("Vogel window starts at {s}, resolution stable at {t}")));
    }
    let to_s = res.colimit.transition(t, s)?.compose(&res.colimit.from_limit(t)?)?;
    let cols = (0..res.value.ngens())
        .map(|i| {
            let c = res.stages[s].rep(&to_s.apply(&res.value.basis_elem(i)));
            let phi = v.sigma_rep(&c)?;
            v.value.class(&phi).ok_or_else(|| Error::Verification("σ produced a non-cocycle".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    AbMap::from_columns(&res.value, &v.value.group, &cols)
}

/// `ρ = π_bottom ∘ φ_bottom`, landing in the naive stage `bottom`.
pub fn rho(vogel: &CompletedGroup, naive: &CompletedGroup) -> Result<AbMap> {
    expect(naive, naive.construction == Construction::Naive, "naive")?;
    let v = vogel.vogel.as_ref().ok_or_else(|| Error::Mismatch("expected vogel".into()))?;
    if naive.degree != v.degree || !Arc::ptr_eq(&naive.res_b, &v.res_b) {
        return Err(Error::Mismatch("ρ needs the same coefficient resolution and degree".into()));
    }
    let cols = (0..v.group().ngens())
        .map(|i| {
            let rep = v.value.rep(&v.group().basis_elem(i));
            let c = v.rho_rep(&rep)?;
            naive.limit_class(v.bottom, &c).ok_or_else(|| Error::Verification("ρ left the naive stage".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    AbMap::from_columns(v.group(), &naive.value, &cols)
}

fn value_entry(g: &CompletedGroup) -> NamedValue {
    NamedValue { construction: g.construction.name(), value: g.value.describe(), stable_at: g.stable_at() }
}

impl Context {
    fn iso_check(name: &str, map: &AbMap) -> DiagramCheck {
        DiagramCheck::new(name, map.is_iso(), format!("{} → {}", map.src, map.dst))
    }

    /// All constructions for `(A, B, n)` with ω, ω_a, β, σ, ρ and `ρσ = β`.
    pub fn compare_constructions(&self, a: &ModuleRef, b: &ModuleRef, n: i64, prefixes: &[SequencePrefix]) -> Result<ComparisonReport> {
        let (rx, rb) = (self.res(a), self.res(b));
        self.compare_with(&rx, &rb, n, prefixes)
    }

    pub fn compare_with(&self, rx: &Arc<Resolution>, rb: &Arc<Resolution>, n: i64, prefixes: &[SequencePrefix]) -> Result<ComparisonReport> {
        let res = self.complete_with(&Construction::Resolution, rx, rb, n)?;
        let sat = self.complete_with(&Construction::Satellite, rx, rb, n)?;
        let naive = self.complete_with(&Construction::Naive, rx, rb, n)?;
        let vogel = self.complete_with(&Construction::Vogel, rx, rb, n)?;
        let mut values = vec![value_entry(&sat), value_entry(&res), value_entry(&naive), value_entry(&vogel)];
        let mut maps = Vec::new();
        let mut checks = Vec::new();

        let w = omega(&sat, &res)?;
        checks.push(DiagramCheck::iso("omega bijective", &w));
        maps.push(NamedMap { name: "omega".into(), map: w.map });
        let bt = beta(&res, &naive)?;
        checks.push(DiagramCheck::iso("beta bijective", &bt));
        let sg = sigma(&res, &vogel)?;
        checks.push(Self::iso_check("sigma bijective", &sg));
        let r = rho(&vogel, &naive)?;
        checks.push(Self::iso_check("rho bijective", &r));
        checks.push(DiagramCheck::square("rho sigma = beta", &r.compose(&sg)?, &bt.map));
        maps.push(NamedMap { name: "beta".into(), map: bt.map });
        maps.push(NamedMap { name: "sigma".into(), map: sg });
        maps.push(NamedMap { name: "rho".into(), map: r });

        for a in prefixes {
            let kind = Construction::Ta(a.clone());
            let ta = self.complete_with(&kind, rx, rb, n)?;
            let wa = omega(&ta, &res)?;
            checks.push(DiagramCheck::iso(&format!("omega_a bijective {}", a.label()), &wa));
            values.push(value_entry(&ta));
            maps.push(NamedMap { name: format!("omega_a {}", a.label()), map: wa.map });
        }
        Ok(ComparisonReport { degree: n, values, maps, checks })
    }

    /// The ω (and ω_a) square, the naive bottom square and the Vogel square
    /// for `δ: T̂^n(C) → T̂^{n+1}(A)`.
    pub fn connecting_squares(&self, x: &ModuleRef, ses: &ShortExact, n: i64, prefixes: &[SequencePrefix]) -> Result<SquareReport> {
        let rx = self.res(x);
        let (left, right) = (&ses.hs.left, &ses.hs.right);
        let window = default_window(n, self.vogel_width);
        let pair = |kind: &Construction| -> Result<(CompletedGroup, CompletedGroup)> {
            Ok((self.les_group(kind, &rx, right, n, window)?, self.les_group(kind, &rx, left, n + 1, window)?))
        };
        let delta = |c: &CompletedGroup, a: &CompletedGroup| -> Result<AbMap> {
            let fm = self.connecting_family(ses, c, a)?;
            match fm.failure {
                Some(k) => Err(Error::StageCompatibility(format!("{} connecting map in degree {n} at stage {k}", c.construction))),
                None => Ok(fm.map),
            }
        };
        let (res_c, res_a) = pair(&Construction::Resolution)?;
        let d_res = delta(&res_c, &res_a)?;
        let mut checks = Vec::new();

        let mut sats = vec![Construction::Satellite];
        sats.extend(prefixes.iter().cloned().map(Construction::Ta));
        for kind in &sats {
            let (c, a) = pair(kind)?;
            let d = delta(&c, &a)?;
            let lhs = omega(&a, &res_a)?.map.compose(&d)?;
            let rhs = d_res.compose(&omega(&c, &res_c)?.map)?;
            let name = match kind {
                Construction::Ta(p) => format!("omega_a square {}", p.label()),
                _ => "omega square".into(),
            };
            checks.push(DiagramCheck::square(&name, &lhs, &rhs));
        }

        let (naive_c, naive_a) = pair(&Construction::Naive)?;
        let d_naive = delta(&naive_c, &naive_a)?;
        let lhs = beta(&res_a, &naive_a)?.map.compose(&d_res)?;
        let rhs = d_naive.compose(&beta(&res_c, &naive_c)?.map)?;
        checks.push(DiagramCheck::square("naive bottom square", &lhs, &rhs));

        let (vog_c, vog_a) = pair(&Construction::Vogel)?;
        let d_vog = delta(&vog_c, &vog_a)?;
        let lhs = rho(&vog_a, &naive_a)?.compose(&d_vog)?;
        let rhs = d_naive.compose(&rho(&vog_c, &naive_c)?)?;
        checks.push(DiagramCheck::square("vogel square", &lhs, &rhs));

        let snake_agrees = match (&vog_c.vogel, &vog_a.vogel) {
            (Some(v), Some(w)) => v.snake_connecting(w, &ses.hs).ok().map(|m| m.equals(&d_vog)),
            _ => None,
        };
        Ok(SquareReport { degree: n, checks, snake_agrees })
    }

    /// Vogel values for the windows `W` and `W + 2`: the restriction is an
    /// isomorphism and the σ-images of the resolution generators agree.
    pub fn vogel_window_check(&self, a: &ModuleRef, b: &ModuleRef, n: i64) -> Result<DiagramCheck> {
        let (rx, rb) = (self.res(a), self.res(b));
        let (s, w) = default_window(n, self.vogel_width);
        let small = VogelGroup::with_window(&rx, &rb, n, s, w)?.into_completed();
        let large = VogelGroup::with_window(&rx, &rb, n, s, w + 2)?.into_completed();
        let restrict = large.vogel.as_ref().expect("vogel").restriction_to(small.vogel.as_ref().expect("vogel"))?;
        let res = self.complete_with(&Construction::Resolution, &rx, &rb, n)?;
        let probes = restrict.compose(&sigma(&res, &large)?)?.equals(&sigma(&res, &small)?);
        let iso = restrict.is_iso() && small.value == large.value;
        let detail = format!("W={w}: {}, W+2: {}", small.value, large.value);
        Ok(DiagramCheck::new(format!("vogel window {n}"), iso && probes, detail))
    }

    /// Naturality of β for a coefficient map `f: B → C`.
    pub fn beta_naturality(&self, a: &ModuleRef, f: &GModuleMap, n: i64) -> Result<DiagramCheck> {
        let rx = self.res(a);
        let (rb, rc) = (self.res(&f.src), self.res(&f.dst));
        let (res_b, res_c) = (self.complete_with(&Construction::Resolution, &rx, &rb, n)?, self.complete_with(&Construction::Resolution, &rx, &rc, n)?);
        let (nv_b, nv_c) = (self.complete_with(&Construction::Naive, &rx, &rb, n)?, self.complete_with(&Construction::Naive, &rx, &rc, n)?);
        let (f_res, _) = self.induced_complete(f, &res_b, &res_c)?;
        let (f_nv, _) = self.induced_complete(f, &nv_b, &nv_c)?;
        let lhs = beta(&res_c, &nv_c)?.map.compose(&f_res)?;
        let rhs = f_nv.compose(&beta(&res_b, &nv_b)?.map)?;
        Ok(DiagramCheck::square("beta naturality", &lhs, &rhs))
    }
}

/// Groups compared up to isomorphism.
pub fn same_value(a: &AbGroup, b: &AbGroup) -> bool {
    crate::abelian::groups_isomorphic(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::module::{free_module, standard_module, CoefficientRing, StandardModule};
    use crate::IntegerMatrix;

    fn z(g: &Arc<FiniteGroup>) -> ModuleRef {
        standard_module(g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap()
    }

    #[test]
    fn c2_integers_all_maps_bijective() {
        let ctx = Context::default();
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = z(&g);
        for n in -2..=2 {
            let r = ctx.compare_constructions(&m, &m, n, &[SequencePrefix::new(vec![1, 0, 1, 0, 1, 0], 0).unwrap()]).unwrap();
            assert!(r.passed(), "n={n}: {:?}", r.failures());
            let expected = if n % 2 == 0 { "Z/2" } else { "0" };
            for v in &r.values {
                assert_eq!(v.value, expected, "{}", v.construction);
            }
        }
    }

    #[test]
    fn free_coefficients_give_zero_maps() {
        let ctx = Context::default();
        let g = Arc::new(FiniteGroup::cyclic(2));
        let f = free_module(&g, CoefficientRing::Integers, 1);
        let r = ctx.compare_constructions(&z(&g), &f, 0, &[]).unwrap();
        assert!(r.passed());
        assert!(r.values.iter().all(|v| v.value == "0"));
    }

    #[test]
    fn squares_over_c3() {
        let ctx = Context::default();
        let g = Arc::new(FiniteGroup::cyclic(3));
        let m = z(&g);
        let z3 = standard_module(&g, CoefficientRing::Integers, &StandardModule::TrivialMod(3)).unwrap();
        let f = GModuleMap::scalar(&m, 3);
        let p = GModuleMap::new(m.clone(), z3, IntegerMatrix::from_i64_rows(&[vec![1]])).unwrap();
        let ses = ShortExact::new(&ctx, &f, &p).unwrap();
        for n in -2..=2 {
            let r = ctx.connecting_squares(&m, &ses, n, &[SequencePrefix::ones()]).unwrap();
            assert!(r.passed(), "n={n}: {:?}", r.checks);
        }
    }

    #[test]
    fn window_independence_and_naturality() {
        let ctx = Context::default();
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = z(&g);
        for n in [-1, 0, 1] {
            assert!(ctx.vogel_window_check(&m, &m, n).unwrap().passed);
        }
        let two = GModuleMap::scalar(&m, 2);
        assert!(ctx.beta_naturality(&m, &two, 0).unwrap().passed);
    }
}
