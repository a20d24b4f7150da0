//! Dense integer matrices.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_cols(cols: &[Vec<i64>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Product that skips zero entries of the left factor.
    pub fn mul_mat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let orow = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * oc..(k + 1) * oc];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if b != 0 {
                        *o += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![0; self.cols];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += x * a;
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(-1)
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mat(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mat(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == i64::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Multiplicative order, if at most `bound`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul_mat(self);
        }
        None
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
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
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Characteristic polynomial det(tI − A), coefficients from constant term upward.
    pub fn charpoly(&self) -> Vec<BigInt> {
        assert!(self.is_square());
        let n = self.rows;
        let a: Vec<Vec<BigInt>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = vec![vec![BigInt::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = BigInt::zero();
                    for l in 0..n {
                        if !a[i][l].is_zero() && !m[l][j].is_zero() {
                            s += &a[i][l] * &m[l][j];
                        }
                    }
                    next[i][j] = s;
                }
                next[i][i] += &coeffs[n - k + 1];
            }
            let mut tr = BigInt::zero();
            for i in 0..n {
                for l in 0..n {
                    if !a[i][l].is_zero() && !next[l][i].is_zero() {
                        tr += &a[i][l] * &next[l][i];
                    }
                }
            }
            let kk = BigInt::from(k as i64);
            assert!((&tr % &kk).is_zero(), "Faddeev-LeVerrier division must be exact");
            coeffs[n - k] = -(tr / kk);
            m = next;
        }
        coeffs
    }

    /// Basis of the rational kernel, scaled to primitive integer vectors.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        let rref = rref(self);
        let pivots = &rref.pivots;
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref.rows[r][free].clone();
            }
            basis.push(primitive(&v));
        }
        basis
    }

    pub fn rank(&self) -> usize {
        rref(self).pivots.len()
    }

    /// Exact inverse when it is integral.
    pub fn inverse(&self) -> Option<IntMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = IntMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = 1;
        }
        let r = rref(&aug);
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = &r.rows[i][n + j];
                if !x.is_integer() {
                    return None;
                }
                inv[(i, j)] = i64::try_from(x.to_integer()).ok()?;
            }
        }
        Some(inv)
    }

    pub fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMatrix::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Row-major integer text.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

struct Rref {
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

fn rref(m: &IntMatrix) -> Rref {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows)
        .map(|i| m.row(i).iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..m.cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(pivots.len());
    Rref { rows: a, pivots }
}

fn primitive(v: &[BigRational]) -> Vec<i64> {
    use num_integer::Integer;
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    let lead_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.iter()
        .map(|x| {
            let y = x / &g;
            let y = if lead_neg { -y } else { y };
            i64::try_from(y).expect("kernel vector entry overflow")
        })
        .collect()
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.mul_mat(rhs)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let a = IntMatrix::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(a.det(), BigInt::from(4));
        assert!(a.inverse().is_none());
        let u = IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        let ui = u.inverse().unwrap();
        assert!(u.mul_mat(&ui).is_identity());
    }

    #[test]
    fn charpoly_rotation() {
        // order-3 rotation: t^2 + t + 1
        let a = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]);
        let c: Vec<i64> = a.charpoly().iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(c, vec![1, 1, 1]);
        assert_eq!(a.order(10), Some(3));
    }

    #[test]
    fn kernel_basis() {
        let a = IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 0, 1]]);
        let k = a.kernel();
        assert_eq!(k, vec![vec![1, -1, 0]]);
        assert_eq!(a.rank(), 2);
    }
}
