//! Finite groups given by Cayley tables.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_BOUND: usize = 1024;

/// Finite group with elements `0..order`; `cayley[a][b]` is the index of `a·b`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub label: String,
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    /// Element indices generating the group.
    generators: Vec<usize>,
    /// Permutation realisation when the group came from permutations.
    permutations: Option<Vec<Vec<usize>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order())
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // (p∘q)(x) = p(q(x))
    q.iter().map(|&x| p[x]).collect()
}

impl FiniteGroup {
    /// Closure of the given permutations (image lists on `0..n`).
    pub fn from_permutations(gens: &[Vec<usize>], label: &str) -> Result<Self> {
        Self::from_permutations_bounded(gens, label, DEFAULT_ORDER_BOUND)
    }

    pub fn from_permutations_bounded(gens: &[Vec<usize>], label: &str, bound: usize) -> Result<Self> {
        let degree = gens.iter().map(|g| g.len()).max().unwrap_or(0);
        let mut padded = Vec::new();
        for g in gens {
            let mut seen = vec![false; g.len()];
            for &x in g {
                if x >= g.len() || seen[x] {
                    return Err(Error::BadPermutation(format!("{g:?} is not a permutation")));
                }
                seen[x] = true;
            }
            let mut p = g.clone();
            p.extend(g.len()..degree);
            padded.push(p);
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &padded {
                let p = compose(&elems[i], g);
                if !index.contains_key(&p) {
                    if elems.len() >= bound {
                        return Err(Error::OrderBound { bound });
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let cayley: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| index[&compose(&elems[a], &elems[b])]).collect()).collect();
        let generators: Vec<usize> = padded.iter().map(|g| index[g]).filter(|&i| i != 0).collect();
        let mut group = Self::assemble(cayley, label)?;
        group.generators = dedup(generators);
        group.permutations = Some(elems);
        Ok(group)
    }

    /// Group given by an explicit multiplication table; the table is validated.
    pub fn from_cayley(table: Vec<Vec<usize>>, label: &str) -> Result<Self> {
        let mut g = Self::assemble(table, label)?;
        g.generators = g.greedy_generators();
        Ok(g)
    }

    fn assemble(cayley: Vec<Vec<usize>>, label: &str) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::Input("empty Cayley table".into()));
        }
        if n > DEFAULT_ORDER_BOUND {
            return Err(Error::OrderBound { bound: DEFAULT_ORDER_BOUND });
        }
        for row in &cayley {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Input("Cayley table is not square over 0..order".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| cayley[e][a] == a && cayley[a][e] == a))
            .ok_or_else(|| Error::Input("Cayley table has no identity".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| cayley[a][b] == identity && cayley[b][a] == identity)
                .ok_or_else(|| Error::Input(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::Input("Cayley table is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            label: label.to_string(),
            cayley,
            identity,
            inverse,
            generators: Vec::new(),
            permutations: None,
        })
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for a in 0..self.order() {
            if !span.contains(&a) {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        (0..self.order()).filter(|&a| seen[a]).collect()
    }

    pub fn cyclic(m: usize) -> Self {
        let p: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
        let gens = if m > 1 { vec![p] } else { vec![] };
        Self::from_permutations(&gens, &format!("C{m}")).expect("cyclic group")
    }

    pub fn trivial() -> Self {
        Self::from_permutations(&[], "C1").expect("trivial group")
    }

    pub fn klein_four() -> Self {
        Self::from_permutations(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]], "V4").expect("Klein four group")
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], "S3").expect("S3")
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.permutations.as_deref()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// An element generating the whole group, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&a| self.element_order(a) == self.order())
    }

    /// Each element written as a word in the generators (BFS order).
    pub fn words(&self) -> Vec<Vec<usize>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order()];
        words[self.identity] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for (gi, &g) in self.generators.iter().enumerate() {
                let b = self.mul(a, g);
                if words[b].is_none() {
                    let mut w = words[a].clone().unwrap();
                    w.push(gi);
                    words[b] = Some(w);
                    queue.push_back(b);
                }
            }
        }
        words.into_iter().map(|w| w.expect("generators generate")).collect()
    }

    /// A surjective character `G → {±1}`, as a list of signs per element.
    /// Permutation parity is preferred when it is nontrivial.
    pub fn sign_character(&self) -> Option<Vec<i64>> {
        if let Some(perms) = &self.permutations {
            let chi: Vec<i64> = perms.iter().map(|p| parity(p)).collect();
            if chi.iter().any(|&s| s == -1) {
                return Some(chi);
            }
        }
        let g = self.generators.len();
        let words = self.words();
        for mask in 1u64..(1u64 << g.min(20)) {
            let sign_of_gen = |i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
            let chi: Vec<i64> = words.iter().map(|w| w.iter().map(|&i| sign_of_gen(i)).product()).collect();
            let hom = (0..self.order()).all(|a| (0..self.order()).all(|b| chi[self.mul(a, b)] == chi[a] * chi[b]));
            if hom {
                return Some(chi);
            }
        }
        None
    }
}

fn parity(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn dedup(v: Vec<usize>) -> Vec<usize> {
    let mut out = Vec::new();
    for x in v {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Parses cycle notation such as `(1 2)(3 4 5)` with 1-based points.
pub fn parse_cycles(s: &str) -> Result<Vec<usize>> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| Error::BadPermutation(s.to_string()))?;
        let close = open.find(')').ok_or_else(|| Error::BadPermutation(s.to_string()))?;
        let body = &open[..close];
        let pts: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().ok().filter(|&v| v >= 1).ok_or_else(|| Error::BadPermutation(s.to_string())))
            .collect::<Result<_>>()?;
        cycles.push(pts.into_iter().map(|v| v - 1).collect());
        rest = open[close + 1..].trim_start();
    }
    let degree = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
    let mut p: Vec<usize> = (0..degree).collect();
    let mut moved = vec![false; degree];
    for c in &cycles {
        for (i, &x) in c.iter().enumerate() {
            if moved[x] {
                return Err(Error::BadPermutation(format!("{s}: point {} repeated", x + 1)));
            }
            moved[x] = true;
            p[x] = c[(i + 1) % c.len()];
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_table(g: &FiniteGroup) {
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(a, g.inverse(a)), g.identity());
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn permutation_examples() {
        let c2 = FiniteGroup::from_permutations(&[parse_cycles("(1 2)").unwrap()], "C2").unwrap();
        assert_eq!(c2.order(), 2);
        let s3 = FiniteGroup::from_permutations(&[parse_cycles("(1 2)").unwrap(), parse_cycles("(1 2 3)").unwrap()], "S3")
            .unwrap();
        assert_eq!(s3.order(), 6);
        check_table(&s3);
        assert_eq!(FiniteGroup::from_permutations(&[], "1").unwrap().order(), 1);
    }

    #[test]
    fn order_bound_is_enforced() {
        let gens = [parse_cycles("(1 2)").unwrap(), parse_cycles("(1 2 3 4 5 6 7)").unwrap()];
        assert!(matches!(FiniteGroup::from_permutations_bounded(&gens, "S7", 100), Err(Error::OrderBound { .. })));
    }

    #[test]
    fn malformed_permutations() {
        assert!(parse_cycles("(1 2").is_err());
        assert!(parse_cycles("(1 1)").is_err());
        assert!(FiniteGroup::from_permutations(&[vec![0, 0]], "x").is_err());
    }

    #[test]
    fn cayley_roundtrip() {
        let v4 = FiniteGroup::klein_four();
        let again = FiniteGroup::from_cayley(v4.cayley().to_vec(), "V4").unwrap();
        assert_eq!(again.order(), 4);
        assert_eq!(again.generators().len(), 2);
        assert!(again.cyclic_generator().is_none());
        assert!(FiniteGroup::cyclic(6).cyclic_generator().is_some());
    }

    #[test]
    fn sign_characters() {
        assert!(FiniteGroup::cyclic(2).sign_character().is_some());
        assert!(FiniteGroup::cyclic(3).sign_character().is_none());
        let s3 = FiniteGroup::symmetric3();
        let chi = s3.sign_character().unwrap();
        assert_eq!(chi.iter().filter(|&&s| s == -1).count(), 3);
        let c4 = FiniteGroup::from_cayley(FiniteGroup::cyclic(4).cayley().to_vec(), "C4").unwrap();
        assert!(c4.sign_character().is_some());
    }
}
