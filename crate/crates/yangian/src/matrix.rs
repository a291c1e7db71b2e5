//! Dense matrices over F_{p^m}, exact Gaussian elimination, and
//! matrix-valued truncated series.
//!
//! Matrix series get their own type instead of reusing [`crate::series::Tail`]:
//! the scalar trait hands out a context-free multiplicative identity, and a
//! matrix identity cannot exist without knowing the dimension. The mul / inv /
//! shift formulas are the same ones, restated for matrix coefficients.

use num_traits::{One, Zero};

use crate::field::{binom_mod, Fq};
use crate::scalar::Scalar;
use crate::series::Compare;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    a: Vec<Fq>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            a: vec![Fq::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Fq::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fq>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn scale(&self, k: &Fq) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|x| k.clone() * x.clone()).collect(),
        }
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = &self[(i, k)];
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let y = &other[(k, j)];
                    if y.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + x.clone() * y.clone();
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Fq::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn row(&self, i: usize) -> Vec<Fq> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self[(pr, j)].clone();
                self[(pr, j)] = self[(r, j)].clone();
                self[(r, j)] = tmp;
            }
            let inv = self[(r, c)].try_inv().expect("nonzero field element");
            for j in 0..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in 0..self.cols {
                        self[(i, j)] = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space {v : Av = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<Fq>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![Fq::zero(); self.cols];
            v[free] = Fq::one();
            for (col, &rowopt) in pivot_set.iter().enumerate() {
                if let Some(row) = rowopt {
                    v[col] = -m[(row, free)].clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of Ax = b, if consistent.
    pub fn solve(&self, b: &[Fq]) -> Option<Vec<Fq>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Fq::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = aug[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Fq::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Fq;
    fn index(&self, (i, j): (usize, usize)) -> &Fq {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fq {
        &mut self.a[i * self.cols + j]
    }
}

impl std::ops::Add for Mat {
    type Output = Mat;
    fn add(self, rhs: Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self
                .a
                .into_iter()
                .zip(rhs.a)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl std::ops::Sub for Mat {
    type Output = Mat;
    fn sub(self, rhs: Mat) -> Mat {
        self + (-rhs)
    }
}

impl std::ops::Neg for Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.into_iter().map(|x| -x).collect(),
        }
    }
}

/// A growing subspace of row vectors, kept in echelon form so membership and
/// insertion are cheap. The workhorse behind spinning and Burnside closure.
#[derive(Clone, Debug)]
pub struct Subspace {
    cols: usize,
    rows: Vec<Vec<Fq>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(cols: usize) -> Subspace {
        Subspace {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, v: &mut [Fq]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.cols {
                    if !row[j].is_zero() {
                        v[j] = v[j].clone() - f.clone() * row[j].clone();
                    }
                }
            }
        }
    }

    /// Adds a vector; returns true when the dimension grew.
    pub fn insert(&mut self, mut v: Vec<Fq>) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].try_inv().unwrap();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        // Keep rows sorted by pivot so reduce stays a single sweep.
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Fq>] {
        &self.rows
    }
}

/// A truncated series of square matrices: coefficient r is the matrix of the
/// u^{-r} term.
#[derive(Clone, Debug, PartialEq)]
pub struct MatTail {
    c: Vec<Mat>,
}

impl MatTail {
    pub fn new(coeffs: Vec<Mat>) -> MatTail {
        assert!(!coeffs.is_empty());
        let n = coeffs[0].nrows();
        assert!(coeffs
            .iter()
            .all(|m| m.nrows() == n && m.ncols() == n));
        MatTail { c: coeffs }
    }

    pub fn identity(dim: usize, order: usize) -> MatTail {
        let mut c = vec![Mat::zeros(dim, dim); order + 1];
        c[0] = Mat::identity(dim);
        MatTail { c }
    }

    pub fn zero(dim: usize, order: usize) -> MatTail {
        MatTail {
            c: vec![Mat::zeros(dim, dim); order + 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.c[0].nrows()
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &Mat {
        &self.c[r]
    }

    pub fn coeff_mut(&mut self, r: usize) -> &mut Mat {
        &mut self.c[r]
    }

    /// Zero-extends; only correct for tails known to be exact polynomials.
    pub fn extended(&self, order: usize) -> MatTail {
        let mut c = self.c.clone();
        c.resize(order + 1, Mat::zeros(self.dim(), self.dim()));
        MatTail { c }
    }

    pub fn truncated(&self, order: usize) -> MatTail {
        assert!(order <= self.order());
        MatTail {
            c: self.c[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &MatTail) -> MatTail {
        let n = self.order().min(other.order());
        MatTail {
            c: (0..=n)
                .map(|r| self.c[r].clone() + other.c[r].clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &MatTail) -> MatTail {
        let n = self.order().min(other.order());
        MatTail {
            c: (0..=n)
                .map(|r| self.c[r].clone() - other.c[r].clone())
                .collect(),
        }
    }

    pub fn mul(&self, other: &MatTail, n: usize) -> MatTail {
        assert!(self.order() >= n && other.order() >= n);
        assert_eq!(self.dim(), other.dim());
        let mut out = vec![Mat::zeros(self.dim(), self.dim()); n + 1];
        for r in 0..=n {
            if self.c[r].is_zero() {
                continue;
            }
            for s in 0..=n - r {
                if other.c[s].is_zero() {
                    continue;
                }
                out[r + s] = out[r + s].clone() + self.c[r].matmul(&other.c[s]);
            }
        }
        MatTail { c: out }
    }

    /// Inverse through order n; the constant term must be invertible.
    pub fn inv(&self, n: usize) -> Option<MatTail> {
        assert!(self.order() >= n);
        let m0 = self.c[0].inverse()?;
        let mut out = vec![Mat::zeros(self.dim(), self.dim()); n + 1];
        out[0] = m0.clone();
        for r in 1..=n {
            let mut acc = Mat::zeros(self.dim(), self.dim());
            for t in 1..=r {
                acc = acc + self.c[t].matmul(&out[r - t]);
            }
            out[r] = -(m0.matmul(&acc));
        }
        Some(MatTail { c: out })
    }

    /// a(u − c) through order n for a scalar shift c in characteristic p.
    /// Binomials are reduced mod p up front and the powers of c ride on a
    /// field element, so large orders never overflow machine integers.
    pub fn shift(&self, c: &Fq, p: u32, n: usize) -> MatTail {
        assert!(self.order() >= n);
        let dim = self.dim();
        let mut out = vec![Mat::zeros(dim, dim); n + 1];
        out[0] = self.c[0].clone();
        for r in 1..=n {
            if self.c[r].is_zero() {
                continue;
            }
            let mut cpow = Fq::one();
            for k in 0..=n - r {
                let b = binom_mod(p, (r + k - 1) as u64, k as u64);
                if b != 0 {
                    let f = Fq::from_int(b as i64) * cpow.clone();
                    if !f.is_zero() {
                        out[r + k] = out[r + k].clone() + self.c[r].scale(&f);
                    }
                }
                cpow = cpow * c.clone();
            }
        }
        MatTail { c: out }
    }

    /// Multiplies every coefficient order by a scalar tail (used by twists).
    pub fn scale_series(&self, f: &crate::series::Tail<Fq>, n: usize) -> MatTail {
        assert!(self.order() >= n && f.order() >= n);
        let mut out = vec![Mat::zeros(self.dim(), self.dim()); n + 1];
        for r in 0..=n {
            for s in 0..=n - r {
                if f.coeff(s).is_zero() || self.c[r].is_zero() {
                    continue;
                }
                out[r + s] = out[r + s].clone() + self.c[r].scale(f.coeff(s));
            }
        }
        MatTail { c: out }
    }

    pub fn compare(&self, other: &MatTail) -> Compare {
        let n = self.order().min(other.order());
        for r in 0..=n {
            if self.c[r] != other.c[r] {
                return Compare::Differs { index: r };
            }
        }
        Compare::Equal { through: n }
    }

    /// First order at which this tail differs from the constant identity.
    pub fn identity_defect(&self) -> Option<usize> {
        match self.compare(&MatTail::identity(self.dim(), self.order())) {
            Compare::Equal { .. } => None,
            Compare::Differs { index } => Some(index),
        }
    }
}
