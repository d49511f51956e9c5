
use super::matrix::Matrix;
use crate::scalar::Scalar;

/// Smith normal form `U·M·V = D` with unimodular `U`, `V`. `U⁻¹` is kept as
/// well so elements can be moved back from normal-form coordinates.
#[derive(Clone, Debug)]
pub struct Snf<T> {
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v: Matrix<T>,
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub diag: Vec<T>,
    pub rows: usize,
    pub cols: usize,
}

impl<T: Scalar> Snf<T> {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn d_matrix(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    /// Some `x` with `M x = b`, or `None` when no integral solution exists.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let c = self.u.mul_vec(b);
        let r = self.rank();
        if c[r..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut y = Vec::with_capacity(r);
        for (ci, di) in c.iter().zip(&self.diag) {
            let (q, rem) = ci.div_rem_euclid(di);
            if !rem.is_zero() {
                return None;
            }
            y.push(q);
        }
        let mut x = vec![T::zero(); self.cols];
        for i in 0..self.cols {
            let mut acc = T::zero();
            for (j, yj) in y.iter().enumerate() {
                let v = &self.v[(i, j)];
                if !v.is_zero() && !yj.is_zero() {
                    acc = acc + v.clone() * yj.clone();
                }
            }
            x[i] = acc;
        }
        Some(x)
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    u: Vec<Vec<T>>,
    u_inv: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
    m: usize,
    n: usize,
}

fn ident<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            let mut r = vec![T::zero(); n];
            r[i] = T::one();
            r
        })
        .collect()
}

fn row_axpy<T: Scalar>(rows: &mut [Vec<T>], target: usize, src: usize, q: &T) {
    // rows[target] += q * rows[src]
    if q.is_zero() {
        return;
    }
    let src_row = rows[src].clone();
    for (x, y) in rows[target].iter_mut().zip(&src_row) {
        if !y.is_zero() {
            let cur = std::mem::replace(x, T::zero());
            *x = cur + q.clone() * y.clone();
        }
    }
}

fn col_axpy<T: Scalar>(rows: &mut [Vec<T>], target: usize, src: usize, q: &T) {
    // column target += q * column src
    if q.is_zero() {
        return;
    }
    for r in rows.iter_mut() {
        if !r[src].is_zero() {
            let add = q.clone() * r[src].clone();
            let cur = std::mem::replace(&mut r[target], T::zero());
            r[target] = cur + add;
        }
    }
}

fn col_swap<T>(rows: &mut [Vec<T>], i: usize, j: usize) {
    if i != j {
        for r in rows.iter_mut() {
            r.swap(i, j);
        }
    }
}

impl<T: Scalar> Work<T> {
    /// row_i += q row_t
    fn row_add(&mut self, i: usize, t: usize, q: &T) {
        row_axpy(&mut self.a, i, t, q);
        row_axpy(&mut self.u, i, t, q);
        let neg = -q.clone();
        col_axpy(&mut self.u_inv, t, i, &neg);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
            col_swap(&mut self.u_inv, i, j);
        }
    }

    fn row_scale(&mut self, i: usize, unit: &T) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            if !x.is_zero() {
                let cur = std::mem::replace(x, T::zero());
                *x = cur * unit.clone();
            }
        }
        let inv = unit.unit_inv();
        for r in self.u_inv.iter_mut() {
            if !r[i].is_zero() {
                let cur = std::mem::replace(&mut r[i], T::zero());
                r[i] = cur * inv.clone();
            }
        }
    }

    /// col_j += q col_t
    fn col_add(&mut self, j: usize, t: usize, q: &T) {
        col_axpy(&mut self.a, j, t, q);
        col_axpy(&mut self.v, j, t, q);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        col_swap(&mut self.a, i, j);
        col_swap(&mut self.v, i, j);
    }

    fn min_in(&self, t: usize, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in rows {
            for j in cols.clone() {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) if v.size_lt(&self.a[bi][bj]) => best = Some((i, j)),
                    _ => {}
                }
                if v.is_unit() {
                    return best;
                }
            }
        }
        let _ = t;
        best
    }
}

pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> Snf<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work { a: m.to_rows(), u: ident(rows), u_inv: ident(rows), v: ident(cols), m: rows, n: cols };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.min_in(t, t..w.m, t..w.n) else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..w.m {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = w.a[i][t].div_rem_euclid(&w.a[t][t]);
                w.row_add(i, t, &(-q));
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..w.n {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = w.a[t][j].div_rem_euclid(&w.a[t][t]);
                w.col_add(j, t, &(-q));
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let col_best = w.min_in(t, t..w.m, t..t + 1);
                let row_best = w.min_in(t, t..t + 1, t..w.n);
                let pick = match (col_best, row_best) {
                    (Some(a), Some(b)) => {
                        if w.a[b.0][b.1].size_lt(&w.a[a.0][a.1]) {
                            b
                        } else {
                            a
                        }
                    }
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => unreachable!("pivot vanished"),
                };
                w.row_swap(t, pick.0);
                w.col_swap(t, pick.1);
                continue;
            }
            if !w.a[t][t].is_unit() {
                let p = w.a[t][t].clone();
                let mut bad = None;
                'outer: for i in t + 1..w.m {
                    for j in t + 1..w.n {
                        if !w.a[i][j].divisible_by(&p) {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                if let Some(i) = bad {
                    w.row_add(t, i, &T::one());
                    continue;
                }
            }
            break;
        }
        let unit = w.a[t][t].normalizing_unit();
        if !unit.is_one() {
            w.row_scale(t, &unit);
        }
        diag.push(w.a[t][t].clone());
        t += 1;
    }
    Snf {
        u: Matrix::from_rows(w.u, rows),
        u_inv: Matrix::from_rows(w.u_inv, rows),
        v: Matrix::from_rows(w.v, cols),
        diag,
        rows,
        cols,
    }
}
