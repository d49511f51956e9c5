//! Ext groups from free resolutions, induced maps and connecting maps.
//!
//! A cochain in degree `j` is the tuple of values of a map `A_j → B` on the
//! free generators of `A_j`, stacked into a vector of `B^{r_j}`.

use std::sync::Arc;

use num_traits::Zero;

use crate::abelian::{induced_map, AbGroup, AbMap, PreimageSolver, Subquotient};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{check_ses, free_map, GModuleMap, ModuleRef};
use crate::resolution::{lift_morphism, CoverPolicy, Resolution, Tail};
use crate::{Int, IntegerMatrix};

/// `Ext^n(A, B)` computed from a fixed resolution of `A`.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub a: ModuleRef,
    pub b: ModuleRef,
    pub degree: i64,
    pub resolution: Arc<Resolution>,
    /// Cocycles modulo coboundaries inside `B^{r_n}`.
    pub value: Subquotient,
}

/// Matrix of `φ ↦ φ∘u` from `B^{r}` to `B^{s}` where `u` sends the `s`
/// free generators of the source to the given elements of a free module
/// of rank `r`.
pub fn pullback_matrix(images: &[Vec<Int>], r: usize, order: usize, b: &ModuleRef) -> IntegerMatrix {
    let nb = b.ngens();
    let mut m = Matrix::zeros(nb * images.len(), nb * r);
    for (j, x) in images.iter().enumerate() {
        for i in 0..r {
            for h in 0..order {
                let c = &x[i * order + h];
                if !c.is_zero() {
                    m.add_block(j * nb, i * nb, &b.act(h).scale(c));
                }
            }
        }
    }
    m
}

/// The coboundary `δ^j: B^{r_j} → B^{r_{j+1}}`.
pub fn coboundary(res: &Resolution, b: &ModuleRef, j: usize) -> Result<AbMap> {
    let rj = res.level(j)?.rank();
    let images = res.boundary_values(j + 1)?;
    let order = b.group().order();
    let m = pullback_matrix(&images, rj, order, b);
    Ok(AbMap { src: b.underlying().power(rj), dst: b.underlying().power(images.len()), matrix: reduce_cols(b, m, images.len()) })
}

fn reduce_cols(b: &ModuleRef, mut m: IntegerMatrix, blocks: usize) -> IntegerMatrix {
    let g = b.underlying().power(blocks);
    for j in 0..m.cols() {
        let col = g.reduced(&m.column(j));
        for (i, v) in col.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}

/// Applies `f: B → C` to each of the `blocks` blocks of a vector of `B^r`.
pub fn blockwise(f: &AbMap, blocks: usize, x: &[Int]) -> Vec<Int> {
    let nb = f.src.ngens();
    let mut out = Vec::with_capacity(blocks * f.dst.ngens());
    for j in 0..blocks {
        out.extend(f.apply(&x[j * nb..(j + 1) * nb]));
    }
    out
}

/// Blockwise preimage under `f`.
pub fn blockwise_preimage(solver: &PreimageSolver, src_gens: usize, blocks: usize, y: &[Int]) -> Option<Vec<Int>> {
    let nd = solver.target().ngens();
    let mut out = Vec::with_capacity(blocks * src_gens);
    for j in 0..blocks {
        out.extend(solver.solve(&y[j * nd..(j + 1) * nd])?);
    }
    Some(out)
}

impl ExtGroup {
    pub fn new(res: &Arc<Resolution>, b: &ModuleRef, n: i64) -> Result<Self> {
        let a = res.base().clone();
        if !a.compatible(b) {
            return Err(Error::Mismatch("modules over different groups or rings".into()));
        }
        if n < 0 {
            return Ok(ExtGroup { a, b: b.clone(), degree: n, resolution: res.clone(), value: Subquotient::whole(&AbGroup::zero()) });
        }
        let n = n as usize;
        let rn = res.level(n)?.rank();
        let ambient = b.underlying().power(rn);
        let cocycles = coboundary(res, b, n)?.kernel();
        let boundaries = if n == 0 { Vec::new() } else { coboundary(res, b, n - 1)?.matrix.columns() };
        let value = Subquotient::new(&ambient, cocycles.l_generators(), &boundaries)?;
        Ok(ExtGroup { a, b: b.clone(), degree: n as i64, resolution: res.clone(), value })
    }

    pub fn group(&self) -> &AbGroup {
        &self.value.group
    }

    pub fn is_zero(&self) -> bool {
        self.value.group.is_trivial()
    }

    /// Rank of `A_n`, or `0` in negative degrees.
    pub fn rank(&self) -> usize {
        if self.degree < 0 {
            0
        } else {
            self.resolution.level(self.degree as usize).map(|l| l.rank()).unwrap_or(0)
        }
    }

    /// The equivariant map `A_n → B` of a cocycle vector.
    pub fn cocycle_map(&self, x: &[Int]) -> Result<GModuleMap> {
        let nb = self.b.ngens();
        let values: Vec<Vec<Int>> = (0..self.rank()).map(|i| x[i * nb..(i + 1) * nb].to_vec()).collect();
        let free = self.resolution.term(self.degree as usize)?;
        free_map(&free, &self.b, &values)
    }

    pub fn class(&self, x: &[Int]) -> Option<Vec<Int>> {
        self.value.class(x)
    }

    pub fn rep(&self, q: &[Int]) -> Vec<Int> {
        self.value.rep(q)
    }

    /// Representatives of the generators of the group.
    pub fn generators(&self) -> Vec<Vec<Int>> {
        self.value.gen_reps()
    }
}

/// `Ext^n(A, B)` with a greedy resolution of `A`.
pub fn ext_group(a: &ModuleRef, b: &ModuleRef, n: i64) -> Result<ExtGroup> {
    ExtGroup::new(&Resolution::new(a.clone(), CoverPolicy::Greedy), b, n)
}

fn same_resolution(x: &ExtGroup, y: &ExtGroup) -> Result<()> {
    if !Arc::ptr_eq(&x.resolution, &y.resolution) || x.degree != y.degree {
        return Err(Error::Mismatch("Ext groups use different resolutions or degrees".into()));
    }
    Ok(())
}

/// `Ext^n(A, B) → Ext^n(A, C)` by postcomposition with `f: B → C`.
pub fn induced_coeff(src: &ExtGroup, dst: &ExtGroup, f: &GModuleMap) -> Result<AbMap> {
    same_resolution(src, dst)?;
    if !f.src.same_as(&src.b) || !f.dst.same_as(&dst.b) {
        return Err(Error::Mismatch("coefficient map does not match".into()));
    }
    if src.degree < 0 {
        return Ok(AbMap::zero(src.group(), dst.group()));
    }
    let r = src.rank();
    induced_map(&src.value, &dst.value, |x| Some(blockwise(&f.map, r, x)))
}

/// `Ext^n(A, B) → Ext^n(C, B)` by precomposition with a chain lift of
/// `g: C → A`.
pub fn induced_arg(src: &ExtGroup, dst: &ExtGroup, g: &GModuleMap) -> Result<AbMap> {
    if !g.dst.same_as(&src.a) || !g.src.same_as(&dst.a) || !src.b.same_as(&dst.b) || src.degree != dst.degree {
        return Err(Error::Mismatch("argument map does not match".into()));
    }
    if src.degree < 0 {
        return Ok(AbMap::zero(src.group(), dst.group()));
    }
    let n = src.degree as usize;
    let lift = lift_morphism(g, &Tail::from(&dst.resolution), &Tail::from(&src.resolution), n + 1)?;
    let gn = &lift.chain[n];
    let lc = dst.resolution.level(n)?;
    let images: Vec<Vec<Int>> = lc.values.iter().enumerate().map(|(i, _)| gn.matrix().column(i * g.src.group().order() + g.src.group().identity())).collect();
    let m = pullback_matrix(&images, src.rank(), src.b.group().order(), &src.b);
    let pull = AbMap { src: src.value.ambient.clone(), dst: dst.value.ambient.clone(), matrix: m };
    induced_map(&src.value, &dst.value, |x| Some(pull.apply(x)))
}

/// Cochain-level connecting map for `0 → B →f C →g D → 0` in degree `n`:
/// lift through `g`, apply the coboundary, pull back along `f`.
pub struct ConnectingCochain {
    gsolve: PreimageSolver,
    fsolve: PreimageSolver,
    dc: AbMap,
    rn: usize,
    rn1: usize,
    nb: usize,
    nc: usize,
}

impl ConnectingCochain {
    pub fn new(res: &Resolution, f: &GModuleMap, g: &GModuleMap, n: usize) -> Result<Self> {
        Ok(ConnectingCochain {
            gsolve: g.map.preimage_solver(),
            fsolve: f.map.preimage_solver(),
            dc: coboundary(res, &f.dst, n)?,
            rn: res.level(n)?.rank(),
            rn1: res.level(n + 1)?.rank(),
            nb: f.src.ngens(),
            nc: g.src.ngens(),
        })
    }

    pub fn apply(&self, x: &[Int]) -> Option<Vec<Int>> {
        let lifted = blockwise_preimage(&self.gsolve, self.nc, self.rn, x)?;
        let d = self.dc.apply(&lifted);
        blockwise_preimage(&self.fsolve, self.nb, self.rn1, &d)
    }
}

/// Connecting map `Ext^n(A, D) → Ext^{n+1}(A, B)` of `0 → B → C → D → 0`.
pub fn connecting_delta(src: &ExtGroup, dst: &ExtGroup, f: &GModuleMap, g: &GModuleMap) -> Result<AbMap> {
    if !Arc::ptr_eq(&src.resolution, &dst.resolution) || dst.degree != src.degree + 1 {
        return Err(Error::Mismatch("connecting map needs consecutive degrees over one resolution".into()));
    }
    if !f.src.same_as(&dst.b) || !g.dst.same_as(&src.b) || !f.dst.same_as(&g.src) {
        return Err(Error::Mismatch("sequence does not match the Ext groups".into()));
    }
    if src.degree < 0 {
        return Ok(AbMap::zero(src.group(), dst.group()));
    }
    let c = ConnectingCochain::new(&src.resolution, f, g, src.degree as usize)?;
    induced_map(&src.value, &dst.value, |x| c.apply(x))
}

/// Checks the sequence and computes `δ: Ext^n(A, D) → Ext^{n+1}(A, B)`.
pub fn connecting_for_ses(res: &Arc<Resolution>, f: &GModuleMap, g: &GModuleMap, n: i64) -> Result<(ExtGroup, ExtGroup, AbMap)> {
    if !check_ses(f, g)? {
        return Err(Error::NotExact("input sequence is not short exact".into()));
    }
    let src = ExtGroup::new(res, &g.dst, n)?;
    let dst = ExtGroup::new(res, &f.src, n + 1)?;
    let d = connecting_delta(&src, &dst, f, g)?;
    Ok((src, dst, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{groups_isomorphic, ints, is_exact_at};
    use crate::group::FiniteGroup;
    use crate::module::{standard_module, CoefficientRing, StandardModule};

    fn setup() -> (ModuleRef, ModuleRef, Arc<Resolution>) {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        let z2 = standard_module(&g, CoefficientRing::Integers, &StandardModule::TrivialMod(2)).unwrap();
        let res = Resolution::new(z.clone(), CoverPolicy::Greedy);
        (z, z2, res)
    }

    #[test]
    fn ext_over_c2() {
        let (z, _, res) = setup();
        let e0 = ExtGroup::new(&res, &z, 0).unwrap();
        assert_eq!(e0.group(), &AbGroup::free(1));
        let e2 = ExtGroup::new(&res, &z, 2).unwrap();
        assert_eq!(e2.group(), &AbGroup::cyclic(2));
        assert!(ExtGroup::new(&res, &z, 1).unwrap().is_zero());
        assert!(ExtGroup::new(&res, &z, -1).unwrap().is_zero());
        let rep = e2.generators()[0].clone();
        let phi = e2.cocycle_map(&rep).unwrap();
        let d = res.boundary(3).unwrap();
        assert!(phi.compose(&d).unwrap().is_zero());
    }

    #[test]
    fn induced_maps() {
        let (z, _, res) = setup();
        let e2 = ExtGroup::new(&res, &z, 2).unwrap();
        let id = induced_coeff(&e2, &e2, &GModuleMap::identity(&z)).unwrap();
        assert!(id.equals(&AbMap::identity(e2.group())));
        assert!(induced_coeff(&e2, &e2, &GModuleMap::zero(&z, &z)).unwrap().is_zero());
        assert!(induced_coeff(&e2, &e2, &GModuleMap::scalar(&z, 2)).unwrap().is_zero());
        assert!(induced_coeff(&e2, &e2, &GModuleMap::scalar(&z, 3)).unwrap().equals(&id));
        assert!(induced_arg(&e2, &e2, &GModuleMap::identity(&z)).unwrap().equals(&id));
        assert!(induced_arg(&e2, &e2, &GModuleMap::zero(&z, &z)).unwrap().is_zero());
        assert!(induced_arg(&e2, &e2, &GModuleMap::scalar(&z, 2)).unwrap().is_zero());
    }

    #[test]
    fn connecting_maps_for_times_two() {
        let (z, z2, res) = setup();
        let f = GModuleMap::scalar(&z, 2);
        let g = GModuleMap::new(z.clone(), z2.clone(), IntegerMatrix::from_i64_rows(&[vec![1]])).unwrap();
        let (s0, t0, d0) = connecting_for_ses(&res, &f, &g, 0).unwrap();
        assert_eq!(s0.group(), &AbGroup::cyclic(2));
        assert!(t0.is_zero() && d0.is_zero());
        let (s1, t1, d1) = connecting_for_ses(&res, &f, &g, 1).unwrap();
        assert!(groups_isomorphic(s1.group(), &AbGroup::from_invariants(0, &ints(&[2]))));
        assert_eq!(t1.group(), &AbGroup::cyclic(2));
        assert!(d1.is_iso());
    }

    #[test]
    fn long_exact_sequence_segment() {
        let (z, z2, res) = setup();
        let f = GModuleMap::scalar(&z, 2);
        let g = GModuleMap::new(z.clone(), z2.clone(), IntegerMatrix::from_i64_rows(&[vec![1]])).unwrap();
        for n in 0..4i64 {
            let eb = ExtGroup::new(&res, &z, n).unwrap();
            let ec = ExtGroup::new(&res, &z, n).unwrap();
            let ed = ExtGroup::new(&res, &z2, n).unwrap();
            let eb1 = ExtGroup::new(&res, &z, n + 1).unwrap();
            let fs = induced_coeff(&eb, &ec, &f).unwrap();
            let gs = induced_coeff(&ec, &ed, &g).unwrap();
            let d = connecting_delta(&ed, &eb1, &f, &g).unwrap();
            let fs1 = induced_coeff(&eb1, &ExtGroup::new(&res, &z, n + 1).unwrap(), &f).unwrap();
            assert!(is_exact_at(&fs, &gs));
            assert!(is_exact_at(&gs, &d));
            assert!(is_exact_at(&d, &fs1));
        }
    }
}
