//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use ccoh::group::FiniteGroup;
use ccoh::module::{standard_module, CoefficientRing, ModuleRef, StandardModule};
use ccoh::{Int, IntegerMatrix};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn rand_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntegerMatrix {
    let rs: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    if rows == 0 || cols == 0 {
        return IntegerMatrix::zeros(rows, cols);
    }
    IntegerMatrix::from_i64_rows(&rs)
}

/// Product of random elementary operations.
pub fn rand_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> IntegerMatrix {
    let mut u = IntegerMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            u = u.neg();
        }
        return u;
    }
    for _ in 0..steps {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = Int::from(rng.gen_range(-2i64..=2));
        let mut e = IntegerMatrix::identity(n);
        e[(i, j)] = c;
        u = e.mul(&u);
    }
    u
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_det(m: &IntegerMatrix) -> Int {
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = m.to_rows();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in k - 1..n {
        for mut s in subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

/// Invariant factors from gcds of `k`-minors.
pub fn determinantal_invariants(m: &IntegerMatrix) -> Vec<Int> {
    let mut divisors = vec![Int::one()];
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = Int::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                g = g.gcd(&bareiss_det(&m.select_rows(&rs).select_columns(&cs)));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

pub fn is_unimodular(m: &IntegerMatrix) -> bool {
    bareiss_det(m).abs().is_one()
}

/// Number of `G`-equivariant maps between two `F_2`-modules, by enumerating
/// every matrix.
pub fn brute_hom_count_f2(a: &ModuleRef, b: &ModuleRef) -> u64 {
    let (da, db) = (a.ngens(), b.ngens());
    let group = a.group();
    let mut count = 0;
    for bits in 0u64..(1u64 << (da * db)) {
        let f = IntegerMatrix::from_vec(db, da, (0..da * db).map(|i| Int::from((bits >> i) & 1)).collect());
        let ok = (0..group.order()).all(|g| {
            let lhs = f.mul(a.act(g));
            let rhs = b.act(g).mul(&f);
            lhs.sub(&rhs).entries().iter().all(|x| x.is_even())
        });
        if ok {
            count += 1;
        }
    }
    count
}

pub fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(match name {
        "V4" => FiniteGroup::klein_four(),
        "S3" => FiniteGroup::symmetric3(),
        _ => FiniteGroup::cyclic(name[1..].parse().expect("cyclic group name")),
    })
}

pub fn module(g: &Arc<FiniteGroup>, ring: CoefficientRing, name: StandardModule) -> ModuleRef {
    standard_module(g, ring, &name).expect("standard module")
}

/// The cyclic oracle grid: `(group, m, coefficient label, module)`.
pub fn cyclic_grid() -> Vec<(String, usize, String, ModuleRef)> {
    let mut out = Vec::new();
    for m in [2usize, 3, 4, 6] {
        let g = group(&format!("C{m}"));
        out.push((g.label.clone(), m, "Z".into(), module(&g, CoefficientRing::Integers, StandardModule::Trivial)));
        out.push((g.label.clone(), m, format!("Z/{m}"), module(&g, CoefficientRing::Integers, StandardModule::TrivialMod(m as u64))));
        if m == 2 {
            out.push((g.label.clone(), m, "sign".into(), module(&g, CoefficientRing::Integers, StandardModule::Sign)));
        }
    }
    out
}
