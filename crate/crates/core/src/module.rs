//! Finitely generated modules over `Z[G]` and `F_p[G]`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::abelian::{cokernel_group, is_exact_at, AbGroup, AbMap, Subquotient};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::{Int, IntegerMatrix};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    PrimeField(u64),
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    /// Modulus of a ring element viewed as an abelian group generator.
    pub fn modulus(&self) -> Int {
        match self {
            CoefficientRing::Integers => Int::zero(),
            CoefficientRing::PrimeField(p) => Int::from(*p),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CoefficientRing::Integers => "Z".into(),
            CoefficientRing::PrimeField(p) => format!("Fp:{p}"),
        }
    }
}

pub type ModuleRef = Arc<GModule>;

/// A module over `R[G]`: an underlying diagonal abelian group with one action
/// matrix per group element.
#[derive(Clone)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    ring: CoefficientRing,
    underlying: AbGroup,
    action: Arc<Vec<IntegerMatrix>>,
    label: String,
    free_rank: Option<usize>,
}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}[{}] ({})", self.label, self.ring.label(), self.group.label, self.underlying)
    }
}

#[derive(Serialize)]
struct ModuleFingerprint<'a> {
    cayley: &'a [Vec<usize>],
    generators: &'a [usize],
    ring: CoefficientRing,
    underlying: &'a AbGroup,
    actions: Vec<&'a IntegerMatrix>,
}

impl GModule {
    /// Builds a module from actions of the group generators. The action is
    /// extended to all elements and validated against the Cayley table.
    pub fn new(
        group: Arc<FiniteGroup>,
        ring: CoefficientRing,
        underlying: AbGroup,
        generator_actions: Vec<IntegerMatrix>,
        label: &str,
    ) -> Result<Self> {
        if generator_actions.len() != group.generators().len() {
            return Err(Error::BadAction(format!(
                "{} action matrices for {} generators",
                generator_actions.len(),
                group.generators().len()
            )));
        }
        let n = underlying.ngens();
        if let CoefficientRing::PrimeField(p) = ring {
            if underlying.moduli().iter().any(|m| m != &Int::from(p)) {
                return Err(Error::BadAction(format!("underlying group {underlying} is not an F_{p}-vector space")));
            }
        }
        let mut gens = Vec::with_capacity(generator_actions.len());
        for a in generator_actions {
            let f = AbMap::new(underlying.clone(), underlying.clone(), a)
                .map_err(|e| Error::BadAction(format!("action matrix is not an endomorphism: {e}")))?;
            if !f.is_iso() {
                return Err(Error::BadAction("action matrix is not invertible".into()));
            }
            gens.push(f.matrix);
        }
        let words = group.words();
        let mut action: Vec<IntegerMatrix> = Vec::with_capacity(group.order());
        for w in &words {
            let mut m = Matrix::identity(n);
            for &g in w {
                m = m.mul(&gens[g]);
            }
            action.push(reduce_matrix(&underlying, m));
        }
        let module = GModule {
            group: group.clone(),
            ring,
            underlying,
            action: Arc::new(action),
            label: label.to_string(),
            free_rank: None,
        };
        module.validate_action()?;
        Ok(module)
    }

    /// Trusted constructor for actions known to be valid (used for modules
    /// produced internally by kernels and free constructions).
    fn from_all_actions(
        group: Arc<FiniteGroup>,
        ring: CoefficientRing,
        underlying: AbGroup,
        action: Vec<IntegerMatrix>,
        label: &str,
        free_rank: Option<usize>,
    ) -> Self {
        let action = action.into_iter().map(|m| reduce_matrix(&underlying, m)).collect();
        GModule { group, ring, underlying, action: Arc::new(action), label: label.to_string(), free_rank }
    }

    /// `act(a·g) = act(a)·act(g)` for every element `a` and generator `g`.
    pub fn validate_action(&self) -> Result<()> {
        let u = &self.underlying;
        if !u.is_zero_elem(&self.action[self.group.identity()].sub(&Matrix::identity(u.ngens())).entries().to_vec())
        {
            return Err(Error::BadAction("identity does not act trivially".into()));
        }
        for a in 0..self.group.order() {
            for &g in self.group.generators() {
                let lhs = &self.action[self.group.mul(a, g)];
                let rhs = self.action[a].mul(&self.action[g]);
                if !matrices_agree(u, lhs, &rhs) {
                    return Err(Error::BadAction(format!("action violates the Cayley table at ({a}, {g})")));
                }
            }
        }
        Ok(())
    }

    /// Module from a raw presentation `Z^n / colspan(relations)` with raw
    /// generator actions; the underlying group is normalized.
    pub fn from_presentation(
        group: Arc<FiniteGroup>,
        ring: CoefficientRing,
        relations: &IntegerMatrix,
        generator_actions: &[IntegerMatrix],
        label: &str,
    ) -> Result<Self> {
        let mut rel = relations.clone();
        if let CoefficientRing::PrimeField(p) = ring {
            let n = rel.rows();
            rel = rel.hstack(&Matrix::identity(n).scale(&Int::from(p)));
        }
        let pres = cokernel_group(&rel);
        let acts = generator_actions
            .iter()
            .map(|a| {
                if a.rows() != relations.rows() || a.cols() != relations.rows() {
                    return Err(Error::BadAction("action matrix has the wrong size".into()));
                }
                Ok(pres.to_normal.mul(a).mul(&pres.from_normal))
            })
            .collect::<Result<Vec<_>>>()?;
        // raw actions must preserve the relation lattice
        for a in generator_actions {
            for j in 0..rel.cols() {
                let img = a.mul_vec(&rel.column(j));
                if !pres.group.is_zero_elem(&pres.to_normal.mul_vec(&img)) {
                    return Err(Error::BadAction("action does not preserve the relations".into()));
                }
            }
        }
        let underlying = match ring {
            CoefficientRing::Integers => pres.group.clone(),
            CoefficientRing::PrimeField(_) => pres.group.clone(),
        };
        GModule::new(group, ring, underlying, acts, label)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn underlying(&self) -> &AbGroup {
        &self.underlying
    }

    pub fn ngens(&self) -> usize {
        self.underlying.ngens()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    /// Action matrix of group element `g`.
    pub fn act(&self, g: usize) -> &IntegerMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntegerMatrix] {
        &self.action
    }

    pub fn act_on(&self, g: usize, x: &[Int]) -> Vec<Int> {
        self.underlying.reduced(&self.action[g].mul_vec(x))
    }

    /// `Some(r)` for the standard free module `R[G]^r`.
    pub fn free_rank(&self) -> Option<usize> {
        self.free_rank
    }

    pub fn is_zero(&self) -> bool {
        self.underlying.is_trivial()
    }

    pub fn compatible(&self, other: &GModule) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) && self.ring == other.ring
    }

    /// Same underlying group and same action.
    pub fn same_as(&self, other: &GModule) -> bool {
        self.compatible(other)
            && self.underlying == other.underlying
            && (Arc::ptr_eq(&self.action, &other.action) || self.action == other.action)
    }

    /// Content hash of group, ring, underlying group and action.
    pub fn fingerprint(&self) -> String {
        let gens = self.group.generators();
        let fp = ModuleFingerprint {
            cayley: self.group.cayley(),
            generators: gens,
            ring: self.ring,
            underlying: &self.underlying,
            actions: gens.iter().map(|&g| &self.action[g]).collect(),
        };
        let bytes = serde_json::to_vec(&fp).expect("fingerprint serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

fn reduce_matrix(g: &AbGroup, mut m: IntegerMatrix) -> IntegerMatrix {
    for j in 0..m.cols() {
        let col = g.reduced(&m.column(j));
        for (i, v) in col.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}

fn matrices_agree(g: &AbGroup, a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    (0..a.cols()).all(|j| {
        let d: Vec<Int> = a.column(j).iter().zip(b.column(j)).map(|(x, y)| x - y).collect();
        g.is_zero_elem(&d)
    })
}

/// Equivariant homomorphism.
#[derive(Clone)]
pub struct GModuleMap {
    pub src: ModuleRef,
    pub dst: ModuleRef,
    pub map: AbMap,
}

impl fmt::Debug for GModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {:?}", self.src.label, self.dst.label, self.map.matrix)
    }
}

impl GModuleMap {
    /// Checks well-definedness and equivariance on the group generators.
    pub fn new(src: ModuleRef, dst: ModuleRef, matrix: IntegerMatrix) -> Result<Self> {
        if !src.compatible(&dst) {
            return Err(Error::Mismatch("modules over different groups or rings".into()));
        }
        let map = AbMap::new(src.underlying.clone(), dst.underlying.clone(), matrix)?;
        for &g in src.group.generators() {
            let lhs = map.matrix.mul(src.act(g));
            let rhs = dst.act(g).mul(&map.matrix);
            if !matrices_agree(&dst.underlying, &lhs, &rhs) {
                return Err(Error::NotEquivariant);
            }
        }
        Ok(GModuleMap { src, dst, map })
    }

    pub(crate) fn trusted(src: ModuleRef, dst: ModuleRef, matrix: IntegerMatrix) -> Self {
        let matrix = reduce_matrix(&dst.underlying, matrix);
        let map = AbMap { src: src.underlying.clone(), dst: dst.underlying.clone(), matrix };
        GModuleMap { src, dst, map }
    }

    pub fn identity(m: &ModuleRef) -> Self {
        Self::trusted(m.clone(), m.clone(), Matrix::identity(m.ngens()))
    }

    pub fn zero(src: &ModuleRef, dst: &ModuleRef) -> Self {
        Self::trusted(src.clone(), dst.clone(), Matrix::zeros(dst.ngens(), src.ngens()))
    }

    pub fn scalar(m: &ModuleRef, s: i64) -> Self {
        Self::trusted(m.clone(), m.clone(), Matrix::identity(m.ngens()).scale(&Int::from(s)))
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.map.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.map.apply(x)
    }

    pub fn compose(&self, first: &GModuleMap) -> Result<GModuleMap> {
        if !first.dst.same_as(&self.src) {
            return Err(Error::Mismatch("composition of maps with different middle modules".into()));
        }
        Ok(Self::trusted(first.src.clone(), self.dst.clone(), self.map.matrix.mul(&first.map.matrix)))
    }

    pub fn add(&self, other: &GModuleMap) -> Result<GModuleMap> {
        if !self.src.same_as(&other.src) || !self.dst.same_as(&other.dst) {
            return Err(Error::Mismatch("sum of maps with different endpoints".into()));
        }
        Ok(Self::trusted(self.src.clone(), self.dst.clone(), self.map.matrix.add(&other.map.matrix)))
    }

    pub fn neg(&self) -> GModuleMap {
        Self::trusted(self.src.clone(), self.dst.clone(), self.map.matrix.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    pub fn equals(&self, other: &GModuleMap) -> bool {
        self.src.same_as(&other.src) && self.dst.same_as(&other.dst) && self.map.equals(&other.map)
    }

    pub fn is_injective(&self) -> bool {
        self.map.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.map.is_surjective()
    }

    /// Kernel with the induced action and its inclusion.
    pub fn kernel(&self) -> (ModuleRef, GModuleMap) {
        submodule(&self.src, &self.map.kernel(), &format!("ker({})", self.src.label))
    }

    /// Image with the induced action and its inclusion into the target.
    pub fn image(&self) -> (ModuleRef, GModuleMap) {
        submodule(&self.dst, &self.map.image(), &format!("im({})", self.src.label))
    }
}

/// The submodule `L/D` of `m` given by a subquotient with trivial `N`.
/// The lattice must be `G`-stable.
pub fn submodule(m: &ModuleRef, sq: &Subquotient, label: &str) -> (ModuleRef, GModuleMap) {
    let reps = sq.gen_reps();
    let group = m.group.clone();
    let action: Vec<IntegerMatrix> = (0..group.order())
        .map(|g| {
            let cols: Vec<Vec<Int>> = reps
                .iter()
                .map(|r| sq.class(&m.act_on(g, r)).expect("lattice is G-stable"))
                .collect();
            Matrix::from_columns(&cols, sq.group.ngens())
        })
        .collect();
    let k = Arc::new(GModule::from_all_actions(group, m.ring, sq.group.clone(), action, label, None));
    let incl = GModuleMap::trusted(k.clone(), m.clone(), Matrix::from_columns(&reps, m.ngens()));
    (k, incl)
}

/// `R[G]^rank` with basis `e_{i,h}` at index `i·|G| + h` and `g·e_{i,h} = e_{i,gh}`.
pub fn free_module(group: &Arc<FiniteGroup>, ring: CoefficientRing, rank: usize) -> ModuleRef {
    let n = group.order();
    let dim = n * rank;
    let underlying = AbGroup::from_moduli(vec![ring.modulus(); dim]).expect("valid moduli");
    let action: Vec<IntegerMatrix> = (0..n)
        .map(|g| {
            let mut m = Matrix::zeros(dim, dim);
            for i in 0..rank {
                for h in 0..n {
                    m[(i * n + group.mul(g, h), i * n + h)] = Int::one();
                }
            }
            m
        })
        .collect();
    let label = match ring {
        CoefficientRing::Integers => format!("Z[{}]^{rank}", group.label),
        CoefficientRing::PrimeField(p) => format!("F{p}[{}]^{rank}", group.label),
    };
    Arc::new(GModule::from_all_actions(group.clone(), ring, underlying, action, &label, Some(rank)))
}

/// The equivariant map `R[G]^r → N` sending `e_{i,1}` to `values[i]`.
pub fn free_map(free: &ModuleRef, target: &ModuleRef, values: &[Vec<Int>]) -> Result<GModuleMap> {
    let r = free.free_rank().ok_or_else(|| Error::Mismatch("source is not a standard free module".into()))?;
    if values.len() != r {
        return Err(Error::Mismatch(format!("{} values for rank {r}", values.len())));
    }
    let n = free.group.order();
    let mut m = Matrix::zeros(target.ngens(), free.ngens());
    for (i, y) in values.iter().enumerate() {
        for h in 0..n {
            let col = target.act_on(h, y);
            for (row, v) in col.into_iter().enumerate() {
                m[(row, i * n + h)] = v;
            }
        }
    }
    Ok(GModuleMap::trusted(free.clone(), target.clone(), m))
}

/// Values of a map out of a standard free module on its free generators.
pub fn free_values(f: &GModuleMap) -> Vec<Vec<Int>> {
    let r = f.src.free_rank().expect("free source");
    let n = f.src.group.order();
    let id = f.src.group.identity();
    (0..r).map(|i| f.map.matrix.column(i * n + id)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardModule {
    Trivial,
    TrivialMod(u64),
    Sign,
    AugmentationIdeal,
    Free(usize),
}

pub fn standard_module(group: &Arc<FiniteGroup>, ring: CoefficientRing, name: &StandardModule) -> Result<ModuleRef> {
    let gl = &group.label;
    let ng = group.generators().len();
    match name {
        StandardModule::Trivial => {
            let under = AbGroup::from_moduli(vec![ring.modulus()])?;
            let label = match ring {
                CoefficientRing::Integers => "Z".to_string(),
                CoefficientRing::PrimeField(p) => format!("F{p}"),
            };
            Ok(Arc::new(GModule::new(group.clone(), ring, under, vec![Matrix::identity(1); ng], &label)?))
        }
        StandardModule::TrivialMod(m) => {
            if *m < 2 {
                return Err(Error::BadModule(format!("trivial_mod needs m >= 2, got {m}")));
            }
            if let CoefficientRing::PrimeField(p) = ring {
                if *m != p {
                    return Err(Error::BadModule(format!("Z/{m} is not an F_{p}-module")));
                }
            }
            let under = AbGroup::from_moduli(vec![Int::from(*m)])?;
            Ok(Arc::new(GModule::new(group.clone(), ring, under, vec![Matrix::identity(1); ng], &format!("Z/{m}"))?))
        }
        StandardModule::Sign => {
            let chi = group
                .sign_character()
                .ok_or_else(|| Error::BadModule(format!("{gl} has no subgroup of index 2")))?;
            let under = AbGroup::from_moduli(vec![ring.modulus()])?;
            let acts = group.generators().iter().map(|&g| Matrix::from_i64_rows(&[vec![chi[g]]])).collect();
            Ok(Arc::new(GModule::new(group.clone(), ring, under, acts, "sign")?))
        }
        StandardModule::AugmentationIdeal => {
            let free = free_module(group, ring, 1);
            let triv = standard_module(group, ring, &StandardModule::Trivial)?;
            let aug = free_map(&free, &triv, &[vec![Int::one()]])?;
            let (k, _) = aug.kernel();
            Ok(Arc::new((*k).clone().with_label("aug")))
        }
        StandardModule::Free(r) => Ok(free_module(group, ring, *r)),
    }
}

/// Augmentation `R[G] → R` together with its kernel inclusion, as an exact
/// sequence `0 → I → R[G] → R → 0`.
pub fn augmentation_sequence(group: &Arc<FiniteGroup>, ring: CoefficientRing) -> Result<(GModuleMap, GModuleMap)> {
    let free = free_module(group, ring, 1);
    let triv = standard_module(group, ring, &StandardModule::Trivial)?;
    let aug = free_map(&free, &triv, &[vec![Int::one()]])?;
    let (k, incl) = aug.kernel();
    let k = Arc::new((*k).clone().with_label("aug"));
    let incl = GModuleMap::trusted(k, free, incl.map.matrix.clone());
    Ok((incl, aug))
}

/// `Hom_G(A, B)` from the linear system of equivariance and relation
/// compatibility. The ambient group is `B^{ngens(A)}` with the images of
/// the generators of `A` stacked; representatives are equivariant maps.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub src: ModuleRef,
    pub dst: ModuleRef,
    pub value: Subquotient,
}

impl HomGroup {
    pub fn group(&self) -> &AbGroup {
        &self.value.group
    }

    pub fn map_from_vec(&self, x: &[Int]) -> GModuleMap {
        let b = self.dst.ngens();
        let a = self.src.ngens();
        let cols: Vec<Vec<Int>> = (0..a).map(|j| x[j * b..(j + 1) * b].to_vec()).collect();
        GModuleMap::trusted(self.src.clone(), self.dst.clone(), Matrix::from_columns(&cols, b))
    }

    pub fn vec_from_map(f: &GModuleMap) -> Vec<Int> {
        let mut v = Vec::new();
        for j in 0..f.src.ngens() {
            v.extend(f.map.matrix.column(j));
        }
        v
    }

    pub fn representatives(&self) -> Vec<GModuleMap> {
        self.value.gen_reps().iter().map(|x| self.map_from_vec(x)).collect()
    }

    pub fn class_of(&self, f: &GModuleMap) -> Option<Vec<Int>> {
        self.value.class(&Self::vec_from_map(f))
    }
}

pub fn hom_g(a: &ModuleRef, b: &ModuleRef) -> Result<HomGroup> {
    if !a.compatible(b) {
        return Err(Error::Mismatch("modules over different groups or rings".into()));
    }
    let na = a.ngens();
    let nb = b.ngens();
    let nvars = na * nb;
    let idx = |i: usize, j: usize| j * nb + i;
    let bu = b.underlying();
    // constraint blocks, each a B-valued linear form in the unknowns
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut row_moduli: Vec<Int> = Vec::new();
    for (j, e) in a.underlying().moduli().iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        for i in 0..nb {
            let mut r = vec![Int::zero(); nvars];
            r[idx(i, j)] = e.clone();
            rows.push(r);
            row_moduli.push(bu.moduli()[i].clone());
        }
    }
    for &g in a.group().generators() {
        let ag = a.act(g);
        let bg = b.act(g);
        for j in 0..na {
            for i in 0..nb {
                // (X A_g)[i][j] - (B_g X)[i][j]
                let mut r = vec![Int::zero(); nvars];
                for k in 0..na {
                    let c = &ag[(k, j)];
                    if !c.is_zero() {
                        r[idx(i, k)] += c;
                    }
                }
                for k in 0..nb {
                    let c = &bg[(i, k)];
                    if !c.is_zero() {
                        r[idx(k, j)] -= c;
                    }
                }
                rows.push(r);
                row_moduli.push(bu.moduli()[i].clone());
            }
        }
    }
    let ambient = bu.power(na);
    let target = AbGroup::from_moduli(row_moduli)?;
    let system = AbMap::new(ambient, target, Matrix::from_rows(rows, nvars))?;
    let value = system.kernel();
    Ok(HomGroup { src: a.clone(), dst: b.clone(), value })
}

/// `f` injective, `g` surjective and `im f = ker g`.
pub fn check_ses(f: &GModuleMap, g: &GModuleMap) -> Result<bool> {
    if !f.dst.same_as(&g.src) {
        return Err(Error::Mismatch("maps are not composable".into()));
    }
    Ok(f.is_injective() && g.is_surjective() && is_exact_at(&f.map, &g.map))
}

/// Direct sum of two modules with block-diagonal action.
pub fn direct_sum(a: &ModuleRef, b: &ModuleRef) -> Result<ModuleRef> {
    if !a.compatible(b) {
        return Err(Error::Mismatch("modules over different groups or rings".into()));
    }
    let under = a.underlying().direct_sum(b.underlying());
    let action = (0..a.group().order()).map(|g| a.act(g).block_diag(b.act(g))).collect();
    let free_rank = match (a.free_rank(), b.free_rank()) {
        (Some(r), Some(s)) => Some(r + s),
        _ => None,
    };
    let label = format!("{} + {}", a.label, b.label);
    Ok(Arc::new(GModule::from_all_actions(a.group.clone(), a.ring, under, action, &label, free_rank)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::ints;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn free_module_examples() {
        let g = c2();
        let f = free_module(&g, CoefficientRing::Integers, 1);
        assert_eq!(f.underlying(), &AbGroup::free(2));
        let t = g.generators()[0];
        assert_eq!(f.act(t), &IntegerMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]));
        assert!(free_module(&g, CoefficientRing::Integers, 0).is_zero());
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let f2 = free_module(&s3, CoefficientRing::PrimeField(2), 2);
        assert_eq!(f2.ngens(), 12);
        f2.validate_action().unwrap();
    }

    #[test]
    fn standard_modules_over_c2() {
        let g = c2();
        let t = g.generators()[0];
        let sign = standard_module(&g, CoefficientRing::Integers, &StandardModule::Sign).unwrap();
        assert_eq!(sign.act(t), &IntegerMatrix::from_i64_rows(&[vec![-1]]));
        let aug = standard_module(&g, CoefficientRing::Integers, &StandardModule::AugmentationIdeal).unwrap();
        assert_eq!(aug.underlying(), &AbGroup::free(1));
        assert_eq!(aug.act(t), &IntegerMatrix::from_i64_rows(&[vec![-1]]));
        assert!(standard_module(&Arc::new(FiniteGroup::cyclic(3)), CoefficientRing::Integers, &StandardModule::Sign).is_err());
        assert!(standard_module(&g, CoefficientRing::Integers, &StandardModule::TrivialMod(1)).is_err());
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let g = c2();
        // generator of order 2 acting by an element of order 3 on Z/7
        let bad = GModule::new(
            g.clone(),
            CoefficientRing::Integers,
            AbGroup::cyclic(7),
            vec![IntegerMatrix::from_i64_rows(&[vec![2]])],
            "bad",
        );
        assert!(bad.is_err());
        let not_auto = GModule::new(
            g,
            CoefficientRing::Integers,
            AbGroup::free(1),
            vec![IntegerMatrix::from_i64_rows(&[vec![2]])],
            "bad",
        );
        assert!(not_auto.is_err());
    }

    #[test]
    fn hom_examples() {
        let g = c2();
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        let sign = standard_module(&g, CoefficientRing::Integers, &StandardModule::Sign).unwrap();
        let free = free_module(&g, CoefficientRing::Integers, 1);
        assert_eq!(hom_g(&z, &z).unwrap().group(), &AbGroup::free(1));
        assert!(hom_g(&z, &sign).unwrap().group().is_trivial());
        let h = hom_g(&free, &z).unwrap();
        assert_eq!(h.group(), &AbGroup::free(1));
        for f in h.representatives() {
            GModuleMap::new(f.src.clone(), f.dst.clone(), f.matrix().clone()).unwrap();
        }
    }

    #[test]
    fn ses_checks() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        let z3 = standard_module(&g, CoefficientRing::Integers, &StandardModule::TrivialMod(3)).unwrap();
        let f = GModuleMap::scalar(&z, 3);
        let p = GModuleMap::new(z.clone(), z3.clone(), IntegerMatrix::from_i64_rows(&[vec![1]])).unwrap();
        assert!(check_ses(&f, &p).unwrap());
        let (i, a) = augmentation_sequence(&g, CoefficientRing::Integers).unwrap();
        assert!(check_ses(&i, &a).unwrap());
        let zero = GModuleMap::zero(&z3, &z3);
        assert!(!check_ses(&zero, &GModuleMap::identity(&z3)).unwrap());
    }

    #[test]
    fn free_sum_is_free() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let a = free_module(&g, CoefficientRing::Integers, 1);
        let b = free_module(&g, CoefficientRing::Integers, 2);
        let s = direct_sum(&a, &b).unwrap();
        let f = free_module(&g, CoefficientRing::Integers, 3);
        let iso = GModuleMap::new(s.clone(), f.clone(), IntegerMatrix::identity(18)).unwrap();
        assert!(iso.map.is_iso());
        assert_eq!(s.free_rank(), Some(3));
    }

    #[test]
    fn presentation_normalizes() {
        let g = c2();
        // Z^2 / <(2, 2)> with swap action: Z ⊕ Z/2
        let rel = IntegerMatrix::from_i64_rows(&[vec![2], vec![2]]);
        let swap = IntegerMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        let m = GModule::from_presentation(g, CoefficientRing::Integers, &rel, &[swap], "m").unwrap();
        assert_eq!(m.underlying(), &AbGroup::from_invariants(1, &ints(&[2])));
    }
}
