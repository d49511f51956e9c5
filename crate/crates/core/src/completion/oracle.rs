//! Classical Tate cohomology of cyclic groups from the periodic resolution.

use crate::abelian::{AbGroup, AbMap, Subquotient};
use crate::error::{Error, Result};
use crate::module::GModule;
use crate::IntegerMatrix;

/// `Ĥ^n(C_m, M)`: `M^G / N M` in even degrees and `ker N / (t - 1) M` in
/// odd degrees, where `t` generates `C_m` and `N = 1 + t + ... + t^{m-1}`.
pub fn classical_tate_cyclic(m: usize, module: &GModule, n: i64) -> Result<AbGroup> {
    let group = module.group();
    if group.order() != m {
        return Err(Error::Mismatch(format!("group has order {}, expected {m}", group.order())));
    }
    let t = group.cyclic_generator().ok_or(Error::NotCyclic)?;
    let d = module.ngens();
    let under = module.underlying();
    let tm = module.act(t).clone();
    let mut norm = IntegerMatrix::zeros(d, d);
    let mut power = IntegerMatrix::identity(d);
    for _ in 0..m {
        norm = norm.add(&power);
        power = tm.mul(&power);
    }
    let norm = AbMap::new(under.clone(), under.clone(), norm)?;
    let t_minus_1 = AbMap::new(under.clone(), under.clone(), tm.sub(&IntegerMatrix::identity(d)))?;
    let (upper, lower) = if n.rem_euclid(2) == 0 { (t_minus_1, norm) } else { (norm, t_minus_1) };
    let value = Subquotient::new(under, upper.kernel().gen_reps().as_slice(), &lower.matrix.columns())?;
    Ok(value.group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::module::{free_module, standard_module, CoefficientRing, StandardModule};
    use std::sync::Arc;

    fn module(m: usize, name: StandardModule) -> Arc<GModule> {
        standard_module(&Arc::new(FiniteGroup::cyclic(m)), CoefficientRing::Integers, &name).unwrap()
    }

    #[test]
    fn trivial_integers() {
        let z = module(2, StandardModule::Trivial);
        assert_eq!(classical_tate_cyclic(2, &z, 0).unwrap(), AbGroup::cyclic(2));
        assert!(classical_tate_cyclic(2, &z, -1).unwrap().is_trivial());
        assert_eq!(classical_tate_cyclic(2, &z, -2).unwrap(), AbGroup::cyclic(2));
        let z3 = module(3, StandardModule::Trivial);
        assert_eq!(classical_tate_cyclic(3, &z3, 2).unwrap(), AbGroup::cyclic(3));
    }

    #[test]
    fn sign_module() {
        let s = module(2, StandardModule::Sign);
        assert_eq!(classical_tate_cyclic(2, &s, 1).unwrap(), AbGroup::cyclic(2));
        assert!(classical_tate_cyclic(2, &s, 0).unwrap().is_trivial());
    }

    #[test]
    fn torsion_coefficients() {
        for m in [2usize, 3, 4, 6] {
            let zm = module(m, StandardModule::TrivialMod(m as u64));
            for n in -3..=3 {
                assert_eq!(classical_tate_cyclic(m, &zm, n).unwrap(), AbGroup::cyclic(m as i64));
            }
        }
    }

    #[test]
    fn free_and_trivial_group() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let f = free_module(&g, CoefficientRing::Integers, 2);
        let t = Arc::new(FiniteGroup::trivial());
        let z = standard_module(&t, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        for n in -3..=3 {
            assert!(classical_tate_cyclic(4, &f, n).unwrap().is_trivial());
            assert!(classical_tate_cyclic(1, &z, n).unwrap().is_trivial());
        }
    }

    #[test]
    fn rejects_non_cyclic() {
        let g = Arc::new(FiniteGroup::klein_four());
        let z = standard_module(&g, CoefficientRing::Integers, &StandardModule::Trivial).unwrap();
        assert!(matches!(classical_tate_cyclic(4, &z, 0), Err(Error::NotCyclic)));
    }
}
