//! Stable homomorphism groups `[A, B] = Hom(A, B) / P(A, B)` and the
//! syzygy transition `t: [A, B] → [ΩA, ΩB]`.

use std::sync::Arc;

use crate::abelian::{induced_map, AbGroup, AbMap, Subquotient};
use crate::error::{Error, Result};
use crate::module::{hom_g, GModuleMap, HomGroup, ModuleRef};
use crate::resolution::{free_cover, lift_morphism, CoverPolicy, Resolution, Tail};

/// `[A, B]` as a subquotient of the ambient group of `Hom(A, B)`.
#[derive(Clone, Debug)]
pub struct StableHomGroup {
    pub a: ModuleRef,
    pub b: ModuleRef,
    pub hom: HomGroup,
    /// `Hom(A, B)` modulo the composites with the free cover of `B`.
    pub value: Subquotient,
}

impl StableHomGroup {
    pub fn group(&self) -> &AbGroup {
        &self.value.group
    }

    /// Representative maps for the generators.
    pub fn representatives(&self) -> Vec<GModuleMap> {
        self.value.gen_reps().iter().map(|x| self.hom.map_from_vec(x)).collect()
    }

    /// Class of an equivariant map.
    pub fn class_of(&self, f: &GModuleMap) -> Option<Vec<crate::Int>> {
        self.value.class(&HomGroup::vec_from_map(f))
    }
}

/// `[A, B]`. Every map through a projective factors through the cover of `B`.
pub fn stable_hom(a: &ModuleRef, b: &ModuleRef) -> Result<StableHomGroup> {
    if !a.compatible(b) {
        return Err(Error::Mismatch("modules over different groups or rings".into()));
    }
    let hom = hom_g(a, b)?;
    let (free, p, _, _) = free_cover(b)?;
    let through = hom_g(a, &free)?;
    let composites = through
        .representatives()
        .iter()
        .map(|g| p.compose(g).map(|c| HomGroup::vec_from_map(&c)))
        .collect::<Result<Vec<_>>>()?;
    let value = Subquotient::new(&hom.value.ambient, hom.value.l_generators(), &composites)?;
    Ok(StableHomGroup { a: a.clone(), b: b.clone(), hom, value })
}

/// `t_{A,B}` along the greedy covers of `A` and `B`, returned with its
/// source and target.
pub fn transition_t(a: &ModuleRef, b: &ModuleRef) -> Result<(StableHomGroup, StableHomGroup, AbMap)> {
    let ra = Resolution::new(a.clone(), CoverPolicy::Greedy);
    let rb = Resolution::new(b.clone(), CoverPolicy::Greedy);
    transition_along(&ra, &rb)
}

/// `t` along the first covers of the given resolutions.
pub fn transition_along(ra: &Arc<Resolution>, rb: &Arc<Resolution>) -> Result<(StableHomGroup, StableHomGroup, AbMap)> {
    let src = stable_hom(ra.base(), rb.base())?;
    let dst = stable_hom(&ra.syzygy(1)?, &rb.syzygy(1)?)?;
    let map = induced_map(&src.value, &dst.value, |x| {
        let f = src.hom.map_from_vec(x);
        let lift = lift_morphism(&f, &Tail::from(ra), &Tail::from(rb), 1).ok()?;
        Some(HomGroup::vec_from_map(&lift.syzygy[1]))
    })?;
    Ok((src, dst, map))
}

/// `t` applied to a single map.
pub fn lift_class(f: &GModuleMap, ra: &Arc<Resolution>, rb: &Arc<Resolution>) -> Result<GModuleMap> {
    Ok(lift_morphism(f, &Tail::from(ra), &Tail::from(rb), 1)?.syzygy[1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::module::{free_module, standard_module, CoefficientRing, StandardModule};
    use crate::resolution::factors_through_projective;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn stable_endomorphisms_of_z() {
        let z = standard_module(&c2(), CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        assert_eq!(stable_hom(&z, &z).unwrap().group(), &AbGroup::cyclic(2));
    }

    #[test]
    fn free_and_zero_arguments() {
        let g = c2();
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        let f = free_module(&g, CoefficientRing::Integers, 2);
        let zero = free_module(&g, CoefficientRing::Integers, 0);
        assert!(stable_hom(&z, &f).unwrap().group().is_trivial());
        assert!(stable_hom(&zero, &z).unwrap().group().is_trivial());
        assert!(stable_hom(&f, &z).unwrap().group().is_trivial());
    }

    #[test]
    fn transition_of_identity() {
        let z = standard_module(&c2(), CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        let (src, dst, t) = transition_t(&z, &z).unwrap();
        let id = GModuleMap::identity(&z);
        let q = src.class_of(&id).unwrap();
        let image = t.apply(&q);
        assert!(!dst.group().is_zero_elem(&image));
        assert_eq!(dst.group(), &AbGroup::cyclic(2));
        let rep = dst.hom.map_from_vec(&dst.value.rep(&image));
        assert!(factors_through_projective(&rep).unwrap().is_none());
        assert!(t.apply(&src.group().zero_elem()).iter().all(|x| x == &crate::Int::from(0)));
    }
}
