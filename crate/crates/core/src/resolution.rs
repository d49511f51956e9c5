//! Free resolutions, syzygies and lifting of morphisms.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbGroup, AbMap, PreimageSolver};
use crate::error::{Error, Result};
use crate::linalg::{lattice_of, Matrix};
use crate::module::{free_map, free_module, hom_g, GModule, GModuleMap, ModuleRef};
use crate::{Int, IntegerMatrix};

/// How free generators of a cover are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CoverPolicy {
    /// Add a basis element only when it is not yet in the span of the
    /// orbits chosen so far. Free modules cover themselves.
    Greedy,
    /// One free generator per generator of the underlying group.
    AllGenerators,
    /// Greedy plus one extra free generator sent to zero.
    Padded,
    /// Levels are pushed explicitly (horseshoe resolutions).
    Manual,
}

/// One step `0 → M̃_{k+1} → F_k → M̃_k → 0`.
#[derive(Clone, Debug)]
pub struct Level {
    pub free: ModuleRef,
    /// Images of the free generators in `M̃_k`.
    pub values: Vec<Vec<Int>>,
    /// `π_k: F_k → M̃_k`.
    pub cover: GModuleMap,
    /// `M̃_{k+1}`.
    pub kernel: ModuleRef,
    /// `ι_{k+1}: M̃_{k+1} → F_k`.
    pub incl: GModuleMap,
    cover_solver: Arc<PreimageSolver>,
    incl_solver: Arc<PreimageSolver>,
}

impl Level {
    pub fn new(free: ModuleRef, target: &ModuleRef, values: Vec<Vec<Int>>) -> Result<Self> {
        let cover = free_map(&free, target, &values)?;
        if !cover.is_surjective() {
            return Err(Error::NotExact("cover is not surjective".into()));
        }
        let (kernel, incl) = cover.kernel();
        Ok(Self::assemble(free, values, cover, kernel, incl))
    }

    fn assemble(free: ModuleRef, values: Vec<Vec<Int>>, cover: GModuleMap, kernel: ModuleRef, incl: GModuleMap) -> Self {
        let cover_solver = Arc::new(cover.map.preimage_solver());
        let incl_solver = Arc::new(incl.map.preimage_solver());
        Level { free, values, cover, kernel, incl, cover_solver, incl_solver }
    }

    pub fn rank(&self) -> usize {
        self.free.free_rank().expect("free term")
    }

    /// Some `x ∈ F_k` with `π_k(x) = y`.
    pub fn lift(&self, y: &[Int]) -> Option<Vec<Int>> {
        self.cover_solver.solve(y)
    }

    /// Coordinates in `M̃_{k+1}` of an element of `ker π_k`.
    pub fn restrict(&self, x: &[Int]) -> Option<Vec<Int>> {
        let z = self.incl_solver.solve(x)?;
        Some(self.kernel.underlying().reduced(&z))
    }
}

/// A lazily extended free resolution of `base`.
pub struct Resolution {
    base: ModuleRef,
    policy: CoverPolicy,
    levels: Mutex<Vec<Arc<Level>>>,
}

impl std::fmt::Debug for Resolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Resolution({:?}, {:?}, {} levels)", self.base, self.policy, self.len())
    }
}

impl Resolution {
    pub fn new(base: ModuleRef, policy: CoverPolicy) -> Arc<Self> {
        Arc::new(Resolution { base, policy, levels: Mutex::new(Vec::new()) })
    }

    pub fn base(&self) -> &ModuleRef {
        &self.base
    }

    pub fn policy(&self) -> CoverPolicy {
        self.policy
    }

    /// Number of materialized levels.
    pub fn len(&self) -> usize {
        self.levels.lock().expect("resolution lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub(crate) fn push_level(&self, level: Level) -> Result<()> {
        let mut levels = self.levels.lock().expect("resolution lock");
        let target = levels.last().map_or(self.base.clone(), |l| l.kernel.clone());
        if !level.cover.dst.same_as(&target) {
            return Err(Error::Mismatch("level does not cover the last syzygy".into()));
        }
        levels.push(Arc::new(level));
        Ok(())
    }

    /// Level `k`, extending the resolution as needed.
    pub fn level(&self, k: usize) -> Result<Arc<Level>> {
        let mut levels = self.levels.lock().expect("resolution lock");
        while levels.len() <= k {
            if self.policy == CoverPolicy::Manual {
                return Err(Error::Input(format!("level {k} of a fixed resolution is not materialized")));
            }
            let target = levels.last().map_or(self.base.clone(), |l| l.kernel.clone());
            let (free, values) = choose_cover(&target, self.policy);
            levels.push(Arc::new(Level::new(free, &target, values)?));
        }
        Ok(levels[k].clone())
    }

    /// `M̃_k`; `M̃_0` is the base.
    pub fn syzygy(&self, k: usize) -> Result<ModuleRef> {
        if k == 0 {
            return Ok(self.base.clone());
        }
        Ok(self.level(k - 1)?.kernel.clone())
    }

    /// `F_k`.
    pub fn term(&self, k: usize) -> Result<ModuleRef> {
        Ok(self.level(k)?.free.clone())
    }

    /// `∂_k: F_k → F_{k-1}`, with `∂_0 = π_0: F_0 → M`.
    pub fn boundary(&self, k: usize) -> Result<GModuleMap> {
        let cur = self.level(k)?;
        if k == 0 {
            return Ok(cur.cover.clone());
        }
        let prev = self.level(k - 1)?;
        prev.incl.compose(&cur.cover)
    }

    /// Matrix of `∂_k` restricted to the free generators of `F_k`, as
    /// values in `F_{k-1}` (column `i` is `∂(e_{i,1})`).
    pub fn boundary_values(&self, k: usize) -> Result<Vec<Vec<Int>>> {
        let cur = self.level(k)?;
        if k == 0 {
            return Ok(cur.values.clone());
        }
        let prev = self.level(k - 1)?;
        Ok(cur.values.iter().map(|v| prev.incl.apply(v)).collect())
    }

    /// Checks `∂∂ = 0` and exactness at every materialized level.
    pub fn verify(&self) -> Result<()> {
        let n = self.len();
        for k in 0..n {
            let lvl = self.level(k)?;
            if !lvl.cover.is_surjective() || !lvl.incl.is_injective() {
                return Err(Error::NotExact(format!("level {k}")));
            }
            if !lvl.cover.compose(&lvl.incl)?.is_zero() {
                return Err(Error::NotExact(format!("π∘ι at level {k}")));
            }
            if !lvl.incl.map.image().same_subgroup(&lvl.cover.map.kernel()) {
                return Err(Error::NotExact(format!("image and kernel differ at level {k}")));
            }
            if k >= 1 && !self.boundary(k - 1)?.compose(&self.boundary(k)?)?.is_zero() {
                return Err(Error::NotExact(format!("∂∂ ≠ 0 at level {k}")));
            }
        }
        Ok(())
    }

    fn snapshot(&self) -> Vec<LevelRecord> {
        let levels = self.levels.lock().expect("resolution lock");
        levels
            .iter()
            .map(|l| LevelRecord {
                rank: l.rank(),
                values: l.values.clone(),
                kernel: l.kernel.underlying().clone(),
                kernel_actions: l.kernel.group().generators().iter().map(|&g| l.kernel.act(g).clone()).collect(),
                incl: l.incl.matrix().clone(),
            })
            .collect()
    }

    fn restore(&self, records: Vec<LevelRecord>) -> Result<()> {
        let mut levels = self.levels.lock().expect("resolution lock");
        if !levels.is_empty() {
            return Ok(());
        }
        let group = self.base.group().clone();
        let ring = self.base.ring();
        let mut target = self.base.clone();
        for (k, r) in records.into_iter().enumerate() {
            let free = free_module(&group, ring, r.rank);
            let cover = free_map(&free, &target, &r.values)?;
            let label = format!("{}~{}", self.base.label(), k + 1);
            let kernel = Arc::new(GModule::new(group.clone(), ring, r.kernel, r.kernel_actions, &label)?);
            let incl = GModuleMap::new(kernel.clone(), free.clone(), r.incl)?;
            if !cover.compose(&incl)?.is_zero() || !incl.is_injective() {
                return Err(Error::Input("cached resolution is inconsistent".into()));
            }
            let lvl = Level::assemble(free, r.values, cover, kernel.clone(), incl);
            levels.push(Arc::new(lvl));
            target = kernel;
        }
        Ok(())
    }
}

/// Chooses free generators covering `m`.
fn choose_cover(m: &ModuleRef, policy: CoverPolicy) -> (ModuleRef, Vec<Vec<Int>>) {
    let group = m.group();
    let ring = m.ring();
    let n = m.ngens();
    let mut values: Vec<Vec<Int>> = Vec::new();
    match (policy, m.free_rank()) {
        (CoverPolicy::Greedy | CoverPolicy::Padded, Some(r)) => {
            let id = group.identity();
            let order = group.order();
            for i in 0..r {
                values.push(m.underlying().basis_elem(i * order + id));
            }
        }
        (CoverPolicy::AllGenerators, _) => {
            values = (0..n).map(|i| m.underlying().basis_elem(i)).collect();
        }
        _ => {
            let rel = m.underlying().relation_columns();
            let mut span: Vec<Vec<Int>> = rel.clone();
            let mut ech = lattice_of(&span, n);
            for i in 0..n {
                let e = m.underlying().basis_elem(i);
                if ech.contains(&e) {
                    continue;
                }
                for g in 0..group.order() {
                    span.push(m.act(g).column(i));
                }
                ech = lattice_of(&span, n);
                values.push(e);
            }
            // drop generators that the others already generate
            let orbit = |v: &Vec<Int>| (0..group.order()).map(|g| m.act(g).mul_vec(v)).collect::<Vec<_>>();
            let mut i = values.len();
            while i > 0 {
                i -= 1;
                let mut rest = rel.clone();
                for (j, v) in values.iter().enumerate() {
                    if j != i {
                        rest.extend(orbit(v));
                    }
                }
                if lattice_of(&rest, n).contains(&values[i]) {
                    values.remove(i);
                }
            }
        }
    }
    if policy == CoverPolicy::Padded {
        values.push(vec![Int::zero(); n]);
    }
    (free_module(group, ring, values.len()), values)
}

/// The short exact sequence `0 → K → F → M → 0` of a chosen cover.
pub fn free_cover(m: &ModuleRef) -> Result<(ModuleRef, GModuleMap, ModuleRef, GModuleMap)> {
    let res = Resolution::new(m.clone(), CoverPolicy::Greedy);
    let l = res.level(0)?;
    Ok((l.free.clone(), l.cover.clone(), l.kernel.clone(), l.incl.clone()))
}

/// A resolution viewed from degree `offset`: a resolution of `M̃_offset`.
#[derive(Clone, Debug)]
pub struct Tail {
    pub res: Arc<Resolution>,
    pub offset: usize,
}

impl Tail {
    pub fn new(res: &Arc<Resolution>, offset: usize) -> Self {
        Tail { res: res.clone(), offset }
    }

    pub fn level(&self, k: usize) -> Result<Arc<Level>> {
        self.res.level(k + self.offset)
    }

    pub fn syzygy(&self, k: usize) -> Result<ModuleRef> {
        self.res.syzygy(k + self.offset)
    }

    pub fn term(&self, k: usize) -> Result<ModuleRef> {
        self.res.term(k + self.offset)
    }
}

impl From<&Arc<Resolution>> for Tail {
    fn from(r: &Arc<Resolution>) -> Self {
        Tail::new(r, 0)
    }
}

/// Lifts of `f: M → N` along resolutions: `f_k: F^M_k → F^N_k` and the
/// syzygy maps `f̃_k: M̃_k → Ñ_k` with `f̃_0 = f`.
#[derive(Clone, Debug)]
pub struct ChainLift {
    pub chain: Vec<GModuleMap>,
    pub syzygy: Vec<GModuleMap>,
}

impl ChainLift {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }
}

/// Lifts `f` to `length` levels (`f_0..f_{length-1}`, `f̃_0..f̃_length`).
pub fn lift_morphism(f: &GModuleMap, rm: &Tail, rn: &Tail, length: usize) -> Result<ChainLift> {
    if !f.src.same_as(&*rm.syzygy(0)?) || !f.dst.same_as(&*rn.syzygy(0)?) {
        return Err(Error::Mismatch("map does not match the resolved modules".into()));
    }
    let mut chain = Vec::with_capacity(length);
    let mut syz = vec![f.clone()];
    for k in 0..length {
        let lm = rm.level(k)?;
        let ln = rn.level(k)?;
        let cur = &syz[k];
        let xs = lm
            .values
            .iter()
            .map(|v| ln.lift(&cur.apply(v)).ok_or_else(|| Error::Verification("lift through cover failed".into())))
            .collect::<Result<Vec<_>>>()?;
        let fk = free_map(&lm.free, &ln.free, &xs)?;
        let cols = lm
            .kernel
            .underlying()
            .moduli()
            .iter()
            .enumerate()
            .map(|(j, _)| {
                let img = fk.apply(&lm.incl.map.matrix.column(j));
                ln.restrict(&img).ok_or_else(|| Error::Verification("restriction to syzygy failed".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let next = GModuleMap::trusted(lm.kernel.clone(), ln.kernel.clone(), Matrix::from_columns(&cols, ln.kernel.ngens()));
        chain.push(fk);
        syz.push(next);
    }
    Ok(ChainLift { chain, syzygy: syz })
}

/// Some `g: A → F` with `p∘g = f` for the cover `p: F → B`, if it exists.
pub fn factors_through_projective(f: &GModuleMap) -> Result<Option<GModuleMap>> {
    let (free, p, _, _) = free_cover(&f.dst)?;
    let hom = hom_g(&f.src, &free)?;
    let reps = hom.representatives();
    let composites: Vec<Vec<Int>> = reps.iter().map(|g| flatten(&p.compose(g).expect("composable"))).collect();
    let ambient = f.dst.underlying().power(f.src.ngens());
    let sys = AbMap::new(AbGroup::free(reps.len()), ambient, Matrix::from_columns(&composites, f.dst.ngens() * f.src.ngens()))?;
    match sys.preimage(&flatten(f)) {
        None => Ok(None),
        Some(c) => {
            let mut m: IntegerMatrix = Matrix::zeros(free.ngens(), f.src.ngens());
            for (ci, g) in c.iter().zip(&reps) {
                if !ci.is_zero() {
                    m = m.add(&g.matrix().scale(ci));
                }
            }
            Ok(Some(GModuleMap::trusted(f.src.clone(), free, m)))
        }
    }
}

fn flatten(f: &GModuleMap) -> Vec<Int> {
    let mut v = Vec::new();
    for j in 0..f.src.ngens() {
        v.extend(f.matrix().column(j));
    }
    v
}

#[derive(Serialize, Deserialize)]
struct LevelRecord {
    rank: usize,
    values: Vec<Vec<Int>>,
    kernel: AbGroup,
    kernel_actions: Vec<IntegerMatrix>,
    incl: IntegerMatrix,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    fingerprint: String,
    policy: CoverPolicy,
    levels: Vec<LevelRecord>,
}

/// Resolutions memoized by module content and cover policy, optionally
/// persisted as JSON files named by content hash.
#[derive(Default)]
pub struct ResolutionCache {
    dir: Option<PathBuf>,
    map: Mutex<HashMap<(String, CoverPolicy), Arc<Resolution>>>,
}

impl ResolutionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_dir(dir: &Path) -> Self {
        ResolutionCache { dir: Some(dir.to_path_buf()), map: Mutex::new(HashMap::new()) }
    }

    fn path(&self, key: &str, policy: CoverPolicy) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}-{policy:?}.json").to_lowercase()))
    }

    pub fn get(&self, m: &ModuleRef, policy: CoverPolicy) -> Arc<Resolution> {
        let key = m.fingerprint();
        let mut map = self.map.lock().expect("cache lock");
        if let Some(r) = map.get(&(key.clone(), policy)) {
            if r.base().same_as(m) {
                return r.clone();
            }
        }
        let res = Resolution::new(m.clone(), policy);
        if let Some(path) = self.path(&key, policy) {
            if let Ok(text) = std::fs::read_to_string(&path) {
                if let Ok(file) = serde_json::from_str::<CacheFile>(&text) {
                    if file.fingerprint == key && file.policy == policy && res.restore(file.levels).is_err() {
                        // unusable cache entry, recompute from scratch
                        let fresh = Resolution::new(m.clone(), policy);
                        map.insert((key, policy), fresh.clone());
                        return fresh;
                    }
                }
            }
        }
        map.insert((key, policy), res.clone());
        res
    }

    /// Writes every memoized resolution to the cache directory.
    pub fn persist(&self) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        std::fs::create_dir_all(dir).map_err(|e| Error::Input(format!("cache dir: {e}")))?;
        let map = self.map.lock().expect("cache lock");
        let mut keys: Vec<_> = map.keys().cloned().collect();
        keys.sort();
        for (key, policy) in keys {
            let res = &map[&(key.clone(), policy)];
            let file = CacheFile { fingerprint: key.clone(), policy, levels: res.snapshot() };
            let path = self.path(&key, policy).expect("dir set");
            let text = serde_json::to_string(&file).expect("serializable");
            std::fs::write(&path, text).map_err(|e| Error::Input(format!("writing {}: {e}", path.display())))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::groups_isomorphic;
    use crate::group::FiniteGroup;
    use crate::module::{standard_module, CoefficientRing, StandardModule};

    fn c2() -> Arc<crate::group::FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn z(g: &Arc<FiniteGroup>) -> ModuleRef {
        standard_module(g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap()
    }

    #[test]
    fn cover_of_trivial_module() {
        let g = c2();
        let (f, p, k, i) = free_cover(&z(&g)).unwrap();
        assert_eq!(f.free_rank(), Some(1));
        assert!(crate::module::check_ses(&i, &p).unwrap());
        let t = g.generators()[0];
        assert_eq!(k.act(t), &IntegerMatrix::from_i64_rows(&[vec![-1]]));
        let zero = Arc::new(GModule::new(g.clone(), CoefficientRing::Integers, AbGroup::zero(), vec![Matrix::zeros(0, 0)], "0").unwrap());
        let (f0, _, k0, _) = free_cover(&zero).unwrap();
        assert!(f0.is_zero() && k0.is_zero());
        let free = free_module(&g, CoefficientRing::Integers, 1);
        let (_, p, k, _) = free_cover(&free).unwrap();
        assert!(k.is_zero());
        assert!(p.map.is_iso());
    }

    #[test]
    fn periodic_syzygies_over_c2() {
        let g = c2();
        let res = Resolution::new(z(&g), CoverPolicy::Greedy);
        let t = g.generators()[0];
        let s1 = res.syzygy(1).unwrap();
        assert_eq!(s1.act(t), &IntegerMatrix::from_i64_rows(&[vec![-1]]));
        let s2 = res.syzygy(2).unwrap();
        assert_eq!(s2.underlying(), &AbGroup::free(1));
        assert_eq!(s2.act(t), &IntegerMatrix::identity(1));
        assert!(res.syzygy(0).unwrap().same_as(res.base()));
        res.level(5).unwrap();
        res.verify().unwrap();
    }

    #[test]
    fn resolutions_of_s3_are_exact() {
        let g = Arc::new(FiniteGroup::symmetric3());
        for (policy, depth) in [(CoverPolicy::Greedy, 4), (CoverPolicy::AllGenerators, 1), (CoverPolicy::Padded, 3)] {
            let res = Resolution::new(z(&g), policy);
            res.level(depth).unwrap();
            res.verify().unwrap();
        }
    }

    #[test]
    fn lifts_over_c2() {
        let g = c2();
        let zm = z(&g);
        let res = Resolution::new(zm.clone(), CoverPolicy::Greedy);
        let tail = Tail::from(&res);
        let id = lift_morphism(&GModuleMap::identity(&zm), &tail, &tail, 3).unwrap();
        for s in &id.syzygy {
            assert!(s.equals(&GModuleMap::identity(&s.src)));
        }
        let two = lift_morphism(&GModuleMap::scalar(&zm, 2), &tail, &tail, 1).unwrap();
        assert!(two.syzygy[1].equals(&GModuleMap::scalar(&two.syzygy[1].src, 2)));
        let zero = lift_morphism(&GModuleMap::zero(&zm, &zm), &tail, &tail, 3).unwrap();
        for s in &zero.syzygy[1..] {
            assert!(factors_through_projective(s).unwrap().is_some());
        }
    }

    #[test]
    fn factorization_through_projectives() {
        let g = c2();
        let zm = z(&g);
        let free = free_module(&g, CoefficientRing::Integers, 1);
        assert!(factors_through_projective(&GModuleMap::identity(&free)).unwrap().is_some());
        let two = GModuleMap::scalar(&zm, 2);
        let w = factors_through_projective(&two).unwrap().expect("norm factorization");
        let (_, p, _, _) = free_cover(&zm).unwrap();
        assert!(p.compose(&w).unwrap().equals(&two));
        assert!(factors_through_projective(&GModuleMap::identity(&zm)).unwrap().is_none());
    }

    #[test]
    fn cache_roundtrip() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let dir = std::env::temp_dir().join(format!("ccoh-cache-test-{}", std::process::id()));
        let cache = ResolutionCache::with_dir(&dir);
        let m = z(&g);
        let r = cache.get(&m, CoverPolicy::Greedy);
        r.level(2).unwrap();
        cache.persist().unwrap();
        let again = ResolutionCache::with_dir(&dir);
        let r2 = again.get(&m, CoverPolicy::Greedy);
        assert_eq!(r2.len(), 3);
        r2.verify().unwrap();
        assert!(groups_isomorphic(r2.syzygy(3).unwrap().underlying(), r.syzygy(3).unwrap().underlying()));
        std::fs::remove_dir_all(&dir).ok();
    }
}
