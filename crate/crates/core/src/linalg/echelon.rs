
use crate::scalar::Scalar;

/// Row echelon form of a list of vectors, optionally with the transform that
/// produced it.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    /// Nonzero echelon rows; row `i` has its leading entry at `pivots[i]`.
    pub basis: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
    /// Row `i` of the transform expresses echelon row `i` (nonzero rows first,
    /// then zero rows) as a combination of the input rows.
    pub transform: Option<Vec<Vec<T>>>,
    pub width: usize,
}

fn sub_mul<T: Scalar>(rows: &mut [Vec<T>], target: usize, src: usize, q: &T) {
    if q.is_zero() {
        return;
    }
    let (a, b) = if target < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            let cur = std::mem::replace(x, T::zero());
            *x = cur - q.clone() * y.clone();
        }
    }
}

fn scale_row<T: Scalar>(row: &mut [T], u: &T) {
    for x in row.iter_mut() {
        if !x.is_zero() {
            let cur = std::mem::replace(x, T::zero());
            *x = cur * u.clone();
        }
    }
}

/// Hermite-style row echelon form with rows reduced above each pivot.
pub fn row_echelon<T: Scalar>(mut rows: Vec<Vec<T>>, width: usize, track: bool) -> Echelon<T> {
    let n = rows.len();
    let mut tr: Option<Vec<Vec<T>>> = if track {
        Some(
            (0..n)
                .map(|i| {
                    let mut r = vec![T::zero(); n];
                    r[i] = T::one();
                    r
                })
                .collect(),
        )
    } else {
        None
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..n {
                let v = &rows[i][c];
                if !v.is_zero() {
                    match best {
                        None => best = Some(i),
                        Some(b) if v.size_lt(&rows[b][c]) => best = Some(i),
                        _ => {}
                    }
                }
            }
            let Some(p) = best else { break };
            rows.swap(r, p);
            if let Some(t) = tr.as_mut() {
                t.swap(r, p);
            }
            let mut done = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let (q, rem) = rows[i][c].div_rem_euclid(&rows[r][c]);
                sub_mul(&mut rows, i, r, &q);
                if let Some(t) = tr.as_mut() {
                    sub_mul(t, i, r, &q);
                }
                if !rem.is_zero() {
                    done = false;
                }
            }
            if done {
                let u = rows[r][c].normalizing_unit();
                if !u.is_one() {
                    scale_row(&mut rows[r], &u);
                    if let Some(t) = tr.as_mut() {
                        scale_row(&mut t[r], &u);
                    }
                }
                for i in 0..r {
                    if rows[i][c].is_zero() {
                        continue;
                    }
                    let (q, _) = rows[i][c].div_rem_euclid(&rows[r][c]);
                    sub_mul(&mut rows, i, r, &q);
                    if let Some(t) = tr.as_mut() {
                        sub_mul(t, i, r, &q);
                    }
                }
                pivots.push(c);
                r += 1;
                break;
            }
        }
    }
    rows.truncate(r);
    Echelon { basis: rows, pivots, transform: tr, width }
}

impl<T: Scalar> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coefficients `c` with `Σ c_i basis_i = x`, if `x` lies in the lattice.
    pub fn coordinates(&self, x: &[T]) -> Option<Vec<T>> {
        let mut rem = x.to_vec();
        let mut out = Vec::with_capacity(self.basis.len());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if rem[p].is_zero() {
                out.push(T::zero());
                continue;
            }
            let (q, r) = rem[p].div_rem_euclid(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (a, b) in rem.iter_mut().zip(row) {
                if !b.is_zero() {
                    let cur = std::mem::replace(a, T::zero());
                    *a = cur - q.clone() * b.clone();
                }
            }
            out.push(q);
        }
        if rem.iter().all(|v| v.is_zero()) {
            Some(out)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &[T]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Reduces `x` modulo the lattice using the echelon pivots (a canonical
    /// representative when all pivots are units or the lattice has full rank
    /// in the pivot columns).
    pub fn reduce(&self, x: &[T]) -> Vec<T> {
        let mut rem = x.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if rem[p].is_zero() {
                continue;
            }
            let (q, _) = rem[p].div_rem_euclid(&row[p]);
            if q.is_zero() {
                continue;
            }
            for (a, b) in rem.iter_mut().zip(row) {
                if !b.is_zero() {
                    let cur = std::mem::replace(a, T::zero());
                    *a = cur - q.clone() * b.clone();
                }
            }
        }
        rem
    }
}
