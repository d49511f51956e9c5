//! Vogel's construction: almost chain maps `P_{• + n} → Q_•` between free
//! resolutions modulo almost null-homotopic ones, computed on a finite
//! window of stages `bottom..=top`.
//!
//! A cochain is the tuple `(φ_bottom, ..., φ_top)` with `φ_k: P_{k+n} → Q_k`
//! stored as values on the free generators of `P_{k+n}`. Cocycles are the
//! tuples with `∂φ_{k+1} = φ_k∂`, coboundaries the `∂h_k + h_{k-1}∂`.

use std::sync::Arc;

use num_traits::Zero;

use crate::abelian::{induced_map, AbGroup, AbMap, Subquotient};
use crate::error::{Error, Result};
use crate::ext::{blockwise, pullback_matrix};
use crate::horseshoe::Horseshoe;
use crate::module::GModuleMap;
use crate::resolution::{lift_morphism, Resolution, Tail};
use crate::{Int, IntegerMatrix};

use super::{theory_bound, ColimitResult, CompletedGroup, Construction, Context};

#[derive(Clone, Debug)]
struct Block {
    k: usize,
    /// Rank of `P_{k+n}`.
    rank: usize,
    /// Generators of the underlying group of `Q_k`.
    width: usize,
    offset: usize,
}

#[derive(Clone, Debug)]
pub struct VogelGroup {
    pub res_x: Arc<Resolution>,
    pub res_b: Arc<Resolution>,
    pub degree: i64,
    pub bottom: usize,
    pub top: usize,
    blocks: Vec<Block>,
    /// Cocycles modulo coboundaries inside the window cochains.
    pub value: Subquotient,
}

/// Default window for degree `n`: the first even stage at or above the
/// theory bound, followed by `width` more stages.
pub fn default_window(n: i64, width: usize) -> (usize, usize) {
    let b = theory_bound(n);
    let s = b + b % 2;
    (s, s + width)
}

impl VogelGroup {
    /// The truncated complex on `window` (default from the context).
    pub fn new(ctx: &Context, res_x: &Arc<Resolution>, res_b: &Arc<Resolution>, n: i64, window: Option<(usize, usize)>) -> Result<Self> {
        let (s, w) = window.unwrap_or_else(|| default_window(n, ctx.vogel_width));
        Self::with_window(res_x, res_b, n, s, w)
    }

    pub fn with_window(res_x: &Arc<Resolution>, res_b: &Arc<Resolution>, n: i64, s: usize, w: usize) -> Result<Self> {
        if w < s || (s as i64) + n < 1 {
            return Err(Error::WindowTooSmall(format!("window {s}..={w} in degree {n}")));
        }
        if !res_x.base().compatible(res_b.base()) {
            return Err(Error::Mismatch("modules over different groups or rings".into()));
        }
        let order = res_x.base().group().order();
        let p = |k: usize| (k as i64 + n) as usize;
        let mut blocks = Vec::new();
        let mut offset = 0;
        for k in s..=w {
            let rank = res_x.level(p(k))?.rank();
            let width = res_b.term(k)?.ngens();
            blocks.push(Block { k, rank, width, offset });
            offset += rank * width;
        }
        let ambient = ambient_group(res_b, &blocks)?;
        // cocycle condition, one row block per consecutive pair
        let mut row_sizes = Vec::new();
        for k in s..w {
            row_sizes.push(res_x.level(p(k) + 1)?.rank() * res_b.term(k)?.ngens());
        }
        let rows: usize = row_sizes.iter().sum();
        let mut d = IntegerMatrix::zeros(rows, offset);
        let mut r0 = 0;
        for (i, k) in (s..w).enumerate() {
            let (cur, next) = (&blocks[i], &blocks[i + 1]);
            let dq = res_b.boundary(k + 1)?;
            for j in 0..next.rank {
                d.add_block(r0 + j * cur.width, next.offset + j * next.width, dq.matrix());
            }
            let pull = pullback_matrix(&res_x.boundary_values(p(k) + 1)?, cur.rank, order, &res_b.term(k)?);
            d.add_block(r0, cur.offset, &pull.neg());
            r0 += row_sizes[i];
        }
        let target = AbGroup::from_moduli(row_moduli(res_b, s, w, &row_sizes)?)?;
        let cocycles = AbMap::new(ambient.clone(), target, d)?.kernel();
        // homotopies h_k: P_{k+n} → Q_{k+1} for k = s-1..=w
        let mut gens: Vec<Vec<Int>> = Vec::new();
        for kk in s as i64 - 1..=w as i64 {
            let k1 = (kk + 1) as usize;
            let pk = (kk + n) as usize;
            let rank = res_x.level(pk)?.rank();
            let q1 = res_b.term(k1)?;
            let dq = if kk >= s as i64 { Some(res_b.boundary(k1)?) } else { None };
            let pull = pullback_matrix(&res_x.boundary_values(pk + 1)?, rank, order, &q1);
            for c in 0..rank * q1.ngens() {
                let mut v = vec![Int::zero(); offset];
                let (j, e) = (c / q1.ngens(), c % q1.ngens());
                if let Some(dq) = &dq {
                    let b = &blocks[kk as usize - s];
                    for (i, x) in dq.matrix().column(e).into_iter().enumerate() {
                        v[b.offset + j * b.width + i] += x;
                    }
                }
                if k1 <= w {
                    let b = &blocks[k1 - s];
                    for (i, x) in pull.column(c).into_iter().enumerate() {
                        v[b.offset + i] += x;
                    }
                }
                gens.push(v);
            }
        }
        let value = Subquotient::new(&ambient, cocycles.l_generators(), &gens)?;
        Ok(VogelGroup { res_x: res_x.clone(), res_b: res_b.clone(), degree: n, bottom: s, top: w, blocks, value })
    }

    pub fn group(&self) -> &AbGroup {
        &self.value.group
    }

    /// `φ_k` of a cochain.
    pub fn block<'a>(&self, x: &'a [Int], k: usize) -> &'a [Int] {
        let b = &self.blocks[k - self.bottom];
        &x[b.offset..b.offset + b.rank * b.width]
    }

    fn p(&self, k: usize) -> usize {
        (k as i64 + self.degree) as usize
    }

    /// The next component `φ_{k+1}` with `∂φ_{k+1} = φ_k∂`.
    fn extend_once(&self, phi: &[Int], k: usize) -> Result<Vec<Int>> {
        let order = self.res_x.base().group().order();
        let q = self.res_b.term(k)?;
        let pull = pullback_matrix(&self.res_x.boundary_values(self.p(k) + 1)?, self.res_x.level(self.p(k))?.rank(), order, &q);
        let y = q.underlying().power(self.res_x.level(self.p(k) + 1)?.rank()).reduced(&pull.mul_vec(phi));
        let (here, next) = (self.res_b.level(k)?, self.res_b.level(k + 1)?);
        let nq = q.ngens();
        let mut out = Vec::new();
        for block in y.chunks(nq.max(1)).take(self.res_x.level(self.p(k) + 1)?.rank()) {
            let z = here.restrict(block).ok_or_else(|| Error::Verification("almost chain map does not extend".into()))?;
            out.extend(next.lift(&z).ok_or_else(|| Error::Verification("almost chain map does not extend".into()))?);
        }
        if nq == 0 {
            out = vec![Int::zero(); self.res_x.level(self.p(k) + 1)?.rank() * self.res_b.term(k + 1)?.ngens()];
        }
        Ok(out)
    }

    /// Components `φ_bottom..=φ_{top+extra}` of a cocycle.
    pub fn components(&self, x: &[Int], extra: usize) -> Result<Vec<Vec<Int>>> {
        let mut comps: Vec<Vec<Int>> = (self.bottom..=self.top).map(|k| self.block(x, k).to_vec()).collect();
        for k in self.top..self.top + extra {
            let next = self.extend_once(comps.last().expect("nonempty window"), k)?;
            comps.push(next);
        }
        Ok(comps)
    }

    /// `σ`: the chain map lifting a cocycle of `Ext^{bottom+n}(X, B̃_bottom)`.
    pub fn sigma_rep(&self, c: &[Int]) -> Result<Vec<Int>> {
        let s = self.bottom;
        let lvl = self.res_b.level(s)?;
        let target = self.res_b.syzygy(s)?;
        let mut phi = Vec::new();
        for block in c.chunks(target.ngens().max(1)).take(self.blocks[0].rank) {
            phi.extend(lvl.lift(block).ok_or_else(|| Error::Verification("cover lift failed".into()))?);
        }
        if target.ngens() == 0 {
            phi = vec![Int::zero(); self.blocks[0].rank * self.blocks[0].width];
        }
        let mut out = phi.clone();
        let mut cur = phi;
        for k in s..self.top {
            cur = self.extend_once(&cur, k)?;
            out.extend(cur.iter().cloned());
        }
        Ok(out)
    }

    /// `ρ` on representatives: `π_bottom ∘ φ_bottom`, a cocycle with values
    /// in `B̃_bottom`.
    pub fn rho_rep(&self, x: &[Int]) -> Result<Vec<Int>> {
        let lvl = self.res_b.level(self.bottom)?;
        Ok(blockwise(&lvl.cover.map, self.blocks[0].rank, self.block(x, self.bottom)))
    }

    /// Restriction to a smaller window with the same resolutions and degree.
    pub fn restriction_to(&self, other: &VogelGroup) -> Result<AbMap> {
        if other.degree != self.degree || other.bottom < self.bottom || other.top > self.top {
            return Err(Error::Mismatch("window is not contained in this window".into()));
        }
        induced_map(&self.value, &other.value, |x| {
            let mut y = Vec::new();
            for k in other.bottom..=other.top {
                y.extend(self.block(x, k).iter().cloned());
            }
            Some(y)
        })
    }

    /// Postcomposition with chain maps `f_k: Q_k → Q'_k`.
    pub fn induced_by_chain(&self, dst: &VogelGroup, chain: &[GModuleMap]) -> Result<AbMap> {
        if dst.degree != self.degree || dst.bottom != self.bottom || dst.top != self.top {
            return Err(Error::Mismatch("Vogel windows differ".into()));
        }
        if chain.len() <= self.top {
            return Err(Error::Mismatch("chain map too short".into()));
        }
        induced_map(&self.value, &dst.value, |x| {
            let mut y = Vec::new();
            for b in &self.blocks {
                y.extend(blockwise(&chain[b.k].map, b.rank, self.block(x, b.k)));
            }
            Some(y)
        })
    }

    /// `Δ̂`: postcomposition with the chain lift `H_k: Q^C_{k+1} → Q^A_k` of
    /// `h*: C̃_1 → A`, which raises the degree by one.
    pub fn delta_hat(&self, dst: &VogelGroup, hs: &Horseshoe, sign: i64) -> Result<AbMap> {
        if dst.degree != self.degree + 1 || dst.bottom < self.bottom || dst.top > self.top {
            return Err(Error::Mismatch("target window must lie inside the source window".into()));
        }
        let h = hs.h_star(0)?;
        let lift = lift_morphism(&h, &Tail::new(&hs.right, 1), &Tail::new(&hs.left, 0), dst.top + 1)?;
        induced_map(&self.value, &dst.value, |x| {
            let comps = self.components(x, 1).ok()?;
            let mut y = Vec::new();
            for b in &dst.blocks {
                let phi = &comps[b.k + 1 - self.bottom];
                let v = blockwise(&lift.chain[b.k].map, b.rank, phi);
                y.extend(v.into_iter().map(|e| e * sign));
            }
            Some(y)
        })
    }

    /// Connecting map of the short exact sequence of truncated Vogel
    /// complexes `0 → V(A) → V(B) → V(C) → 0` from the horseshoe, by the
    /// snake lemma: lift into `V(B)`, apply the differential, pull back.
    pub fn snake_connecting(&self, dst: &VogelGroup, hs: &Horseshoe) -> Result<AbMap> {
        if dst.degree != self.degree + 1 || dst.bottom < self.bottom || dst.top > self.top {
            return Err(Error::Mismatch("target window must lie inside the source window".into()));
        }
        hs.ensure(self.top + 2)?;
        let order = self.res_x.base().group().order();
        induced_map(&self.value, &dst.value, |x| {
            let comps = self.components(x, 1).ok()?;
            let mut y = Vec::new();
            for b in &dst.blocks {
                let k = b.k;
                let (fa, fc) = (hs.left.term(k).ok()?, hs.right.term(k).ok()?);
                let (na, nc) = (fa.ngens(), fc.ngens());
                let (fa1, fc1) = (hs.left.term(k + 1).ok()?, hs.right.term(k + 1).ok()?);
                let section = |phi: &[Int], na: usize, nc: usize| -> Vec<Int> {
                    let mut out = Vec::new();
                    for c in phi.chunks(nc.max(1)) {
                        out.extend(std::iter::repeat(Int::zero()).take(na));
                        out.extend(c.iter().cloned());
                    }
                    out
                };
                let r1 = self.res_x.level(self.p(k) + 1).ok()?.rank();
                let r0 = self.res_x.level(self.p(k)).ok()?.rank();
                let psi1 = section(&comps[k + 1 - self.bottom], fa1.ngens(), fc1.ngens());
                let psi0 = section(&comps[k - self.bottom], na, nc);
                let dq = hs.middle.boundary(k + 1).ok()?;
                let term = hs.middle.term(k).ok()?;
                let mut dpsi = blockwise(&dq.map, r1, &psi1);
                let pull = pullback_matrix(&self.res_x.boundary_values(self.p(k) + 1).ok()?, r0, order, &term);
                let back = pull.mul_vec(&psi0);
                for (a, b) in dpsi.iter_mut().zip(back) {
                    *a -= b;
                }
                let width = na + nc;
                for chunk in dpsi.chunks(width.max(1)).take(r1) {
                    let chunk = term.underlying().reduced(chunk);
                    if chunk[na..].iter().any(|v| !v.is_zero()) {
                        return None;
                    }
                    y.extend(chunk[..na].iter().cloned());
                }
            }
            Some(y)
        })
    }

    pub fn into_completed(self) -> CompletedGroup {
        let g = self.value.group.clone();
        let colimit = ColimitResult { stages: vec![g.clone()], maps: Vec::new(), limit: g.clone(), stable_at: 0, to_limit: vec![AbMap::identity(&g)] };
        CompletedGroup {
            construction: Construction::Vogel,
            degree: self.degree,
            res_x: self.res_x.clone(),
            res_b: self.res_b.clone(),
            value: g,
            colimit,
            stages: vec![self.value.clone()],
            vogel: Some(self),
        }
    }
}

fn ambient_group(res_b: &Arc<Resolution>, blocks: &[Block]) -> Result<AbGroup> {
    let mut moduli = Vec::new();
    for b in blocks {
        let q = res_b.term(b.k)?;
        for _ in 0..b.rank {
            moduli.extend(q.underlying().moduli().iter().cloned());
        }
    }
    AbGroup::from_moduli(moduli)
}

fn row_moduli(res_b: &Arc<Resolution>, s: usize, w: usize, sizes: &[usize]) -> Result<Vec<Int>> {
    let mut moduli = Vec::new();
    for (i, k) in (s..w).enumerate() {
        let q = res_b.term(k)?;
        let m = q.underlying().moduli();
        for j in 0..sizes[i] {
            moduli.push(m[j % m.len().max(1)].clone());
        }
    }
    Ok(moduli)
}
