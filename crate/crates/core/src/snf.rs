//! Smith normal form over the integers with transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type BigMatrix = Vec<Vec<BigInt>>;

/// `u * a * v = diag(d)` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: BigMatrix,
    pub u_inv: BigMatrix,
    pub v: BigMatrix,
    pub v_inv: BigMatrix,
}

pub fn identity(n: usize) -> BigMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &BigMatrix, b: &BigMatrix) -> BigMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

struct State {
    a: BigMatrix,
    u: BigMatrix,
    u_inv: BigMatrix,
    v: BigMatrix,
    v_inv: BigMatrix,
}

impl State {
    // row_i += c * row_j
    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for t in 0..self.a[0].len() {
            let x = &self.a[j][t] * c;
            self.a[i][t] += x;
        }
        for t in 0..self.u.len() {
            let x = &self.u[j][t] * c;
            self.u[i][t] += x;
        }
        for t in 0..self.u_inv.len() {
            let x = &self.u_inv[t][i] * c;
            self.u_inv[t][j] -= x;
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn row_neg(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -&*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }

    // col_j += c * col_i
    fn col_add(&mut self, j: usize, i: usize, c: &BigInt) {
        for row in self.a.iter_mut() {
            let x = &row[i] * c;
            row[j] += x;
        }
        for row in self.v.iter_mut() {
            let x = &row[i] * c;
            row[j] += x;
        }
        let n = self.v_inv[0].len();
        for t in 0..n {
            let x = &self.v_inv[j][t] * c;
            self.v_inv[i][t] -= x;
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }
}

pub fn smith(a: &BigMatrix) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut st = State { a: a.clone(), u: identity(m), u_inv: identity(m), v: identity(n), v_inv: identity(n) };
    let k = m.min(n);
    for t in 0..k {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !st.a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| st.a[i][j].abs() < st.a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != t {
                st.row_swap(pi, t);
            }
            if pj != t {
                st.col_swap(pj, t);
            }
            let mut clean = true;
            for i in t + 1..m {
                if !st.a[i][t].is_zero() {
                    let q = st.a[i][t].div_floor(&st.a[t][t]);
                    st.row_add(i, t, &-q);
                    if !st.a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !st.a[t][j].is_zero() {
                    let q = st.a[t][j].div_floor(&st.a[t][t]);
                    st.col_add(j, t, &-q);
                    if !st.a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let piv = st.a[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&st.a[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => st.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.a[t][t].is_negative() {
            st.row_neg(t);
        }
    }
    let diag = (0..k).map(|i| st.a[i][i].clone()).collect();
    Smith { diag, u: st.u, u_inv: st.u_inv, v: st.v, v_inv: st.v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> BigMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn snf_small() {
        let a = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a);
        let d: Vec<i64> = s.diag.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        let p = mat_mul(&mat_mul(&s.u, &a), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(p[i][j], want);
            }
        }
        assert_eq!(mat_mul(&s.u, &s.u_inv), identity(3));
        assert_eq!(mat_mul(&s.v, &s.v_inv), identity(3));
    }
}
