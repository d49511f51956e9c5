//! Finitely generated abelian groups in invariant-factor form, homomorphisms
//! between them, and subquotients with element transport.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, lattice_of, smith_normal_form, Echelon, Matrix, Snf};
use crate::{Int, IntegerMatrix};

/// Diagonal group `Z/m_1 ⊕ ... ⊕ Z/m_n` where each modulus is `0` (a free
/// generator) or at least 2.
///
/// Groups produced by [`cokernel_group`] and [`Subquotient`] are in
/// invariant-factor form: torsion generators first, in divisibility order,
/// then free generators. Ambient groups such as `B^r` may use any order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbGroup {
    moduli: Vec<Int>,
}

impl AbGroup {
    pub fn zero() -> Self {
        AbGroup { moduli: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbGroup { moduli: vec![Int::zero(); rank] }
    }

    pub fn cyclic(m: i64) -> Self {
        Self::from_invariants(0, &[Int::from(m)])
    }

    /// Normal form of `Z^rank ⊕ ⊕ Z/t_i` for arbitrary positive `t_i`.
    pub fn from_invariants(rank: usize, torsion: &[Int]) -> Self {
        let mut diag: Vec<Int> = torsion.to_vec();
        diag.extend(std::iter::repeat(Int::zero()).take(rank));
        cokernel_group(&IntegerMatrix::diagonal(&diag)).group
    }

    /// Diagonal group with the given moduli (each `0` or `≥ 2`).
    pub fn from_moduli(moduli: Vec<Int>) -> Result<Self> {
        if moduli.iter().any(|m| m.is_negative() || m.is_one()) {
            return Err(Error::Input(format!("moduli {moduli:?} must be 0 or at least 2")));
        }
        Ok(AbGroup { moduli })
    }

    /// `true` when already in invariant-factor form.
    pub fn is_normalized(&self) -> bool {
        let mut seen_free = false;
        let mut prev: Option<&Int> = None;
        for m in &self.moduli {
            if m.is_zero() {
                seen_free = true;
                continue;
            }
            if seen_free || prev.is_some_and(|p| !m.is_multiple_of(p)) {
                return false;
            }
            prev = Some(m);
        }
        true
    }

    /// Concatenation `self ⊕ other` (not renormalized).
    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend(other.moduli.iter().cloned());
        AbGroup { moduli }
    }

    /// `self^k` as a diagonal group.
    pub fn power(&self, k: usize) -> AbGroup {
        let mut moduli = Vec::with_capacity(self.moduli.len() * k);
        for _ in 0..k {
            moduli.extend(self.moduli.iter().cloned());
        }
        AbGroup { moduli }
    }

    pub fn ngens(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.iter().filter(|m| m.is_zero()).count()
    }

    /// Invariant factors of the torsion subgroup.
    pub fn torsion(&self) -> Vec<Int> {
        let t: Vec<Int> = self.moduli.iter().filter(|m| !m.is_zero()).cloned().collect();
        if self.is_normalized() {
            return t;
        }
        let snf = smith_normal_form(&IntegerMatrix::diagonal(&t));
        snf.diag.into_iter().filter(|d| !d.is_one()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Isomorphism type in invariant-factor form.
    pub fn normalized(&self) -> AbGroup {
        AbGroup::from_invariants(self.rank(), &self.torsion())
    }

    pub fn is_finite(&self) -> bool {
        self.rank() == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        if self.rank() > 0 {
            return None;
        }
        Some(self.moduli.iter().fold(Int::one(), |a, b| a * b))
    }

    /// Relation matrix `diag(moduli)` restricted to torsion generators, as columns.
    pub fn relation_columns(&self) -> Vec<Vec<Int>> {
        let n = self.ngens();
        self.moduli
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| {
                let mut v = vec![Int::zero(); n];
                v[i] = m.clone();
                v
            })
            .collect()
    }

    pub fn reduce(&self, x: &mut [Int]) {
        for (v, m) in x.iter_mut().zip(&self.moduli) {
            if !m.is_zero() {
                *v = v.mod_floor(m);
            }
        }
    }

    pub fn reduced(&self, x: &[Int]) -> Vec<Int> {
        let mut v = x.to_vec();
        self.reduce(&mut v);
        v
    }

    pub fn is_zero_elem(&self, x: &[Int]) -> bool {
        x.iter().zip(&self.moduli).all(|(v, m)| if m.is_zero() { v.is_zero() } else { v.is_multiple_of(m) })
    }

    pub fn zero_elem(&self) -> Vec<Int> {
        vec![Int::zero(); self.ngens()]
    }

    pub fn basis_elem(&self, i: usize) -> Vec<Int> {
        let mut v = self.zero_elem();
        v[i] = Int::one();
        v
    }

    /// Human readable form such as `Z^2 + Z/2 + Z/6` or `0`.
    pub fn describe(&self) -> String {
        if self.moduli.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = self.torsion().iter().map(|d| format!("Z/{d}")).collect();
        match self.rank() {
            0 => {}
            1 => parts.insert(0, "Z".into()),
            r => parts.insert(0, format!("Z^{r}")),
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

pub fn groups_isomorphic(a: &AbGroup, b: &AbGroup) -> bool {
    a.rank() == b.rank() && a.torsion() == b.torsion()
}

/// `Z^rows / colspan(M)` in normal form, with transport matrices between
/// raw coordinates and normal-form coordinates.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    pub group: AbGroup,
    pub relations: IntegerMatrix,
    /// Raw coordinates to normal-form coordinates (`ngens × rows`).
    pub to_normal: IntegerMatrix,
    /// Normal-form generators as raw vectors (`rows × ngens`).
    pub from_normal: IntegerMatrix,
}

impl PresentedGroup {
    pub fn normalize(&self, raw: &[Int]) -> Vec<Int> {
        self.group.reduced(&self.to_normal.mul_vec(raw))
    }

    pub fn raw(&self, normal: &[Int]) -> Vec<Int> {
        self.from_normal.mul_vec(normal)
    }
}

pub fn cokernel_group(m: &IntegerMatrix) -> PresentedGroup {
    let n = m.rows();
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let mut keep = Vec::new();
    let mut moduli = Vec::new();
    for i in 0..n {
        let d = if i < r { snf.diag[i].clone() } else { Int::zero() };
        if !d.is_one() {
            keep.push(i);
            moduli.push(d);
        }
    }
    let to_normal = snf.u.select_rows(&keep);
    let from_normal = snf.u_inv.select_columns(&keep);
    PresentedGroup { group: AbGroup { moduli }, relations: m.clone(), to_normal, from_normal }
}

/// Homomorphism of abelian groups given on generators.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbMap {
    pub src: AbGroup,
    pub dst: AbGroup,
    /// `dst.ngens() × src.ngens()`; column `j` is the image of generator `j`.
    pub matrix: IntegerMatrix,
}

impl fmt::Debug for AbMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {:?}", self.src, self.dst, self.matrix)
    }
}

impl AbMap {
    /// Checks that the matrix carries relations to relations.
    pub fn new(src: AbGroup, dst: AbGroup, matrix: IntegerMatrix) -> Result<Self> {
        if matrix.rows() != dst.ngens() || matrix.cols() != src.ngens() {
            return Err(Error::Mismatch(format!(
                "matrix is {}x{} for a map {} -> {}",
                matrix.rows(),
                matrix.cols(),
                src,
                dst
            )));
        }
        let mut matrix = matrix;
        for (j, e) in src.moduli.iter().enumerate() {
            let col = matrix.column(j);
            if !e.is_zero() {
                let scaled: Vec<Int> = col.iter().map(|v| v * e).collect();
                if !dst.is_zero_elem(&scaled) {
                    return Err(Error::IllDefined(format!("generator {j} of order {e} maps to {col:?} in {dst}")));
                }
            }
            let red = dst.reduced(&col);
            for (i, v) in red.into_iter().enumerate() {
                matrix[(i, j)] = v;
            }
        }
        Ok(AbMap { src, dst, matrix })
    }

    pub fn zero(src: &AbGroup, dst: &AbGroup) -> Self {
        AbMap { src: src.clone(), dst: dst.clone(), matrix: Matrix::zeros(dst.ngens(), src.ngens()) }
    }

    pub fn identity(g: &AbGroup) -> Self {
        AbMap { src: g.clone(), dst: g.clone(), matrix: Matrix::identity(g.ngens()) }
    }

    pub fn from_columns(src: &AbGroup, dst: &AbGroup, cols: &[Vec<Int>]) -> Result<Self> {
        Self::new(src.clone(), dst.clone(), Matrix::from_columns(cols, dst.ngens()))
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.dst.reduced(&self.matrix.mul_vec(x))
    }

    pub fn compose(&self, first: &AbMap) -> Result<AbMap> {
        if first.dst != self.src {
            return Err(Error::Mismatch(format!("cannot compose {} -> {} after {} -> {}", self.src, self.dst, first.src, first.dst)));
        }
        AbMap::new(first.src.clone(), self.dst.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn add(&self, other: &AbMap) -> Result<AbMap> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::Mismatch("sum of maps with different endpoints".into()));
        }
        AbMap::new(self.src.clone(), self.dst.clone(), self.matrix.add(&other.matrix))
    }

    pub fn neg(&self) -> AbMap {
        AbMap::new(self.src.clone(), self.dst.clone(), self.matrix.neg()).expect("negation is well defined")
    }

    pub fn scale(&self, s: i64) -> AbMap {
        AbMap::new(self.src.clone(), self.dst.clone(), self.matrix.scale(&Int::from(s))).expect("scaling is well defined")
    }

    pub fn is_zero(&self) -> bool {
        (0..self.src.ngens()).all(|j| self.dst.is_zero_elem(&self.matrix.column(j)))
    }

    pub fn equals(&self, other: &AbMap) -> bool {
        self.src == other.src && self.dst == other.dst && self.sub_is_zero(other)
    }

    fn sub_is_zero(&self, other: &AbMap) -> bool {
        (0..self.src.ngens()).all(|j| {
            let d: Vec<Int> = self.matrix.column(j).iter().zip(other.matrix.column(j)).map(|(a, b)| a - b).collect();
            self.dst.is_zero_elem(&d)
        })
    }

    /// `[M | diag(dst torsion)]`: solving against it solves `f(x) = y` in `dst`.
    fn extended(&self) -> IntegerMatrix {
        let rel = Matrix::from_columns(&self.dst.relation_columns(), self.dst.ngens());
        self.matrix.hstack(&rel)
    }

    pub fn preimage_solver(&self) -> PreimageSolver {
        PreimageSolver { snf: smith_normal_form(&self.extended()), src: self.src.clone(), dst: self.dst.clone() }
    }

    /// Some `x` with `f(x) = y`.
    pub fn preimage(&self, y: &[Int]) -> Option<Vec<Int>> {
        self.preimage_solver().solve(y)
    }

    pub fn kernel(&self) -> Subquotient {
        let e = self.src.ngens();
        let k = kernel_basis(&self.extended());
        let gens: Vec<Vec<Int>> = (0..k.cols()).map(|j| k.column(j)[..e].to_vec()).collect();
        Subquotient::new(&self.src, &gens, &[]).expect("kernel lattice contains the relations")
    }

    pub fn image(&self) -> Subquotient {
        let gens = self.matrix.columns();
        Subquotient::new(&self.dst, &gens, &[]).expect("image is a subgroup")
    }

    pub fn cokernel(&self) -> Subquotient {
        let all: Vec<Vec<Int>> = (0..self.dst.ngens()).map(|i| self.dst.basis_elem(i)).collect();
        Subquotient::new(&self.dst, &all, &self.matrix.columns()).expect("image lies in the target")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Result<AbMap> {
        if !self.is_iso() {
            return Err(Error::Verification(format!("map {} -> {} is not invertible", self.src, self.dst)));
        }
        let solver = self.preimage_solver();
        let cols: Vec<Vec<Int>> = (0..self.dst.ngens())
            .map(|i| solver.solve(&self.dst.basis_elem(i)).expect("surjective"))
            .collect();
        AbMap::from_columns(&self.dst, &self.src, &cols)
    }
}

/// Kernel, image and cokernel with their witnesses.
pub fn map_kernel_image_cokernel(f: &AbMap) -> (Subquotient, Subquotient, Subquotient) {
    (f.kernel(), f.image(), f.cokernel())
}

/// `im f = ker g` as subgroups of the middle group.
pub fn is_exact_at(f: &AbMap, g: &AbMap) -> bool {
    f.dst == g.src && f.image().same_subgroup(&g.kernel())
}

/// Cached solver for `f(x) = y`.
#[derive(Clone, Debug)]
pub struct PreimageSolver {
    snf: Snf<Int>,
    src: AbGroup,
    dst: AbGroup,
}

impl PreimageSolver {
    pub fn solve(&self, y: &[Int]) -> Option<Vec<Int>> {
        let x = self.snf.solve(y)?;
        Some(self.src.reduced(&x[..self.src.ngens()]))
    }

    pub fn target(&self) -> &AbGroup {
        &self.dst
    }
}

/// `L / N` for lattices `N ⊆ L` inside an ambient group `E = Z^e / D`.
///
/// `group` is the normalized quotient; `class` and `rep` move elements
/// between the ambient group and normal-form coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub ambient: AbGroup,
    pub group: AbGroup,
    lattice: Echelon<Int>,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    keep: Vec<usize>,
    units: Vec<usize>,
    n_gens: Vec<Vec<Int>>,
}

impl Subquotient {
    /// `span(l_gens) + D` over `span(n_gens) + D`. Fails when `N ⊄ L`.
    pub fn new(ambient: &AbGroup, l_gens: &[Vec<Int>], n_gens: &[Vec<Int>]) -> Result<Self> {
        let e = ambient.ngens();
        let rel = ambient.relation_columns();
        let mut lg: Vec<Vec<Int>> = l_gens.to_vec();
        lg.extend(rel.iter().cloned());
        let lattice = lattice_of(&lg, e);
        let l = lattice.rank();
        let mut ng: Vec<Vec<Int>> = n_gens.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
        ng.extend(rel);
        let n_basis = lattice_of(&ng, e).basis;
        let mut coords = Vec::with_capacity(n_basis.len());
        for v in &n_basis {
            coords.push(lattice.coordinates(v).ok_or_else(|| Error::Verification("sublattice is not contained in lattice".into()))?);
        }
        let c = Matrix::from_columns(&coords, l);
        let snf = smith_normal_form(&c);
        let r = snf.rank();
        let mut keep = Vec::new();
        let mut units = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..l {
            let d = if i < r { snf.diag[i].clone() } else { Int::zero() };
            if d.is_one() {
                units.push(i);
            } else {
                keep.push(i);
                moduli.push(d);
            }
        }
        Ok(Subquotient {
            ambient: ambient.clone(),
            group: AbGroup { moduli },
            lattice,
            u: snf.u,
            u_inv: snf.u_inv,
            keep,
            units,
            n_gens: n_basis,
        })
    }

    /// The whole ambient group.
    pub fn whole(ambient: &AbGroup) -> Self {
        let all: Vec<Vec<Int>> = (0..ambient.ngens()).map(|i| ambient.basis_elem(i)).collect();
        Self::new(ambient, &all, &[]).expect("whole group")
    }

    /// Normal-form coordinates of an ambient element lying in `L`.
    pub fn class(&self, x: &[Int]) -> Option<Vec<Int>> {
        let c = self.lattice.coordinates(x)?;
        let y = self.u.mul_vec(&c);
        let q: Vec<Int> = self.keep.iter().map(|&i| y[i].clone()).collect();
        Some(self.group.reduced(&q))
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.lattice.contains(x)
    }

    /// `true` when `x ∈ N`.
    pub fn is_trivial_class(&self, x: &[Int]) -> bool {
        self.class(x).is_some_and(|q| self.group.is_zero_elem(&q))
    }

    /// An ambient representative of the class with coordinates `q`.
    pub fn rep(&self, q: &[Int]) -> Vec<Int> {
        let l = self.lattice.rank();
        let mut y = vec![Int::zero(); l];
        for (qi, &i) in q.iter().zip(&self.keep) {
            y[i] = qi.clone();
        }
        self.lattice_point(&self.u_inv.mul_vec(&y))
    }

    fn lattice_point(&self, c: &[Int]) -> Vec<Int> {
        let mut x = vec![Int::zero(); self.ambient.ngens()];
        for (ci, row) in c.iter().zip(&self.lattice.basis) {
            crate::linalg::axpy(&mut x, ci, row);
        }
        self.ambient.reduced(&x)
    }

    pub fn gen_reps(&self) -> Vec<Vec<Int>> {
        (0..self.group.ngens()).map(|i| self.rep(&self.group.basis_elem(i))).collect()
    }

    /// Ambient vectors spanning `N` (relations included).
    pub fn n_generators(&self) -> &[Vec<Int>] {
        &self.n_gens
    }

    /// Ambient vectors spanning `L` (relations included).
    pub fn l_generators(&self) -> &[Vec<Int>] {
        &self.lattice.basis
    }

    /// Lattice vectors that lie in `N` but are hidden by unit invariant factors.
    fn unit_reps(&self) -> Vec<Vec<Int>> {
        let l = self.lattice.rank();
        self.units
            .iter()
            .map(|&i| {
                let mut y = vec![Int::zero(); l];
                y[i] = Int::one();
                self.lattice_point(&self.u_inv.mul_vec(&y))
            })
            .collect()
    }

    /// Subgroup generated by classes with the given coordinates.
    pub fn subgroup(&self, gens: &[Vec<Int>]) -> Subquotient {
        let mut lg: Vec<Vec<Int>> = gens.iter().map(|q| self.rep(q)).collect();
        lg.extend(self.n_gens.iter().cloned());
        Subquotient::new(&self.ambient, &lg, &self.n_gens).expect("subgroup contains N")
    }

    /// Subgroup given by ambient representatives lying in `L`.
    pub fn subgroup_from_reps(&self, reps: &[Vec<Int>]) -> Result<Subquotient> {
        for r in reps {
            if !self.contains(r) {
                return Err(Error::Verification("representative outside the lattice".into()));
            }
        }
        let mut lg = reps.to_vec();
        lg.extend(self.n_gens.iter().cloned());
        Subquotient::new(&self.ambient, &lg, &self.n_gens)
    }

    /// Inclusion of a subgroup built with [`Subquotient::subgroup`] into `self`.
    pub fn inclusion_from(&self, sub: &Subquotient) -> Result<AbMap> {
        induced_map(sub, self, |x| Some(x.to_vec()))
    }

    /// `L` lattices agree (the `N` parts are ignored).
    pub fn same_subgroup(&self, other: &Subquotient) -> bool {
        self.ambient == other.ambient
            && self.lattice.rank() == other.lattice.rank()
            && self.lattice.basis.iter().all(|v| other.lattice.contains(v))
            && other.lattice.basis.iter().all(|v| self.lattice.contains(v))
    }

    /// Inclusion `L/N → E/N0` is not generally defined; this returns the
    /// embedding of `L/D` into `E` when `N` is just the relations.
    pub fn embedding(&self) -> Result<AbMap> {
        let cols = self.gen_reps();
        AbMap::from_columns(&self.group, &self.ambient, &cols)
    }

    /// Projection `E → E/N` when `L` is everything.
    pub fn projection(&self) -> Result<AbMap> {
        let cols: Vec<Vec<Int>> = (0..self.ambient.ngens())
            .map(|i| self.class(&self.ambient.basis_elem(i)).ok_or_else(|| Error::Verification("lattice is not the whole group".into())))
            .collect::<Result<_>>()?;
        AbMap::from_columns(&self.ambient, &self.group, &cols)
    }
}

/// The map `src → dst` induced by an ambient-level function on
/// representatives. Checks that `f(L_src) ⊆ L_dst` and `f(N_src) ⊆ N_dst`.
pub fn induced_map(src: &Subquotient, dst: &Subquotient, f: impl Fn(&[Int]) -> Option<Vec<Int>>) -> Result<AbMap> {
    let mut cols = Vec::with_capacity(src.group.ngens());
    for rep in src.gen_reps() {
        let img = f(&rep).ok_or_else(|| Error::Verification("representative could not be mapped".into()))?;
        cols.push(dst.class(&img).ok_or_else(|| Error::Verification("image leaves the target lattice".into()))?);
    }
    for rep in src.unit_reps() {
        let img = f(&rep).ok_or_else(|| Error::Verification("representative could not be mapped".into()))?;
        if !dst.is_trivial_class(&img) {
            return Err(Error::IllDefined("map does not preserve the quotient".into()));
        }
    }
    AbMap::from_columns(&src.group, &dst.group, &cols)
}

/// Helper for literal integers.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Absolute value helper used by diagnostics.
pub fn abs(v: &Int) -> Int {
    v.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(rows)
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_group(&m(&[vec![2]])).group, AbGroup::cyclic(2));
        assert_eq!(cokernel_group(&m(&[vec![1, 0], vec![0, 6]])).group, AbGroup::cyclic(6));
        assert_eq!(cokernel_group(&IntegerMatrix::zeros(3, 0)).group, AbGroup::free(3));
    }

    #[test]
    fn isomorphism_decisions() {
        let a = AbGroup::from_invariants(0, &ints(&[2, 3]));
        assert!(groups_isomorphic(&a, &AbGroup::cyclic(6)));
        assert!(!groups_isomorphic(&AbGroup::free(1), &AbGroup::cyclic(2)));
        assert!(groups_isomorphic(&AbGroup::zero(), &AbGroup::zero()));
    }

    #[test]
    fn times_two_into_z8() {
        let f = AbMap::new(AbGroup::free(1), AbGroup::cyclic(8), m(&[vec![2]])).unwrap();
        let (k, i, c) = map_kernel_image_cokernel(&f);
        assert_eq!(k.group, AbGroup::free(1));
        assert_eq!(k.gen_reps()[0].iter().map(abs).collect::<Vec<_>>(), ints(&[4]));
        assert_eq!(i.group, AbGroup::cyclic(4));
        assert_eq!(c.group, AbGroup::cyclic(2));
    }

    #[test]
    fn ill_defined_maps_are_rejected() {
        assert!(AbMap::new(AbGroup::cyclic(2), AbGroup::free(1), m(&[vec![1]])).is_err());
        assert!(AbMap::new(AbGroup::cyclic(4), AbGroup::cyclic(2), m(&[vec![1]])).is_ok());
    }

    #[test]
    fn identity_on_z6() {
        let g = AbGroup::cyclic(6);
        let f = AbMap::identity(&g);
        let (k, i, c) = map_kernel_image_cokernel(&f);
        assert!(k.group.is_trivial());
        assert_eq!(i.group, g);
        assert!(c.group.is_trivial());
        assert!(f.is_iso());
    }

    #[test]
    fn exactness_of_times_two_sequence() {
        let f = AbMap::new(AbGroup::free(1), AbGroup::free(1), m(&[vec![2]])).unwrap();
        let g = AbMap::new(AbGroup::free(1), AbGroup::cyclic(2), m(&[vec![1]])).unwrap();
        assert!(is_exact_at(&f, &g));
        let h = AbMap::new(AbGroup::free(1), AbGroup::cyclic(4), m(&[vec![1]])).unwrap();
        assert!(!is_exact_at(&f, &h));
    }

    #[test]
    fn subquotient_transport_roundtrip() {
        // (2Z + 3Z^?) style: L = <(2,0),(0,3)> in Z^2, N = <(4,0)>
        let amb = AbGroup::free(2);
        let sq = Subquotient::new(&amb, &[ints(&[2, 0]), ints(&[0, 3])], &[ints(&[4, 0])]).unwrap();
        assert_eq!(sq.group, AbGroup::from_invariants(1, &ints(&[2])));
        for q in [ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 5])] {
            let r = sq.rep(&q);
            assert_eq!(sq.class(&r).unwrap(), sq.group.reduced(&q));
        }
        assert!(sq.class(&ints(&[1, 0])).is_none());
    }

    #[test]
    fn inverse_of_unimodular_map() {
        let g = AbGroup::free(2);
        let f = AbMap::new(g.clone(), g.clone(), m(&[vec![2, 1], vec![1, 1]])).unwrap();
        let inv = f.inverse().unwrap();
        assert!(inv.compose(&f).unwrap().equals(&AbMap::identity(&g)));
    }
}
