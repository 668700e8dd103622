//! Small dense matrices over any [`Scalar`].

use std::fmt;

use crate::scalars::{Field, Scalar, ZeroVerdict};

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(d: Vec<S>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<S> {
        self.data
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.clone() - b.clone())
    }

    fn zip(&self, o: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Zero test of every entry; returns `(all_zero, worst log2 width)`.
    pub fn zero_test(&self, tol_bits: u32) -> (bool, Option<f64>) {
        let mut ok = true;
        let mut worst: Option<f64> = None;
        for x in &self.data {
            let ZeroVerdict { is_zero, log2_width } = x.zero_test(tol_bits);
            ok &= is_zero;
            if let Some(w) = log2_width {
                worst = Some(worst.map_or(w, |c: f64| c.max(w)));
            }
        }
        (ok, worst)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl<F: Field> Matrix<F> {
    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                for j in 0..n {
                    let t = a.get(p, j).clone();
                    a.set(p, j, a.get(c, j).clone());
                    a.set(c, j, t);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = det * piv.clone();
            let pinv = piv.inv();
            for r in c + 1..n {
                let f = a.get(r, c).clone() * pinv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(r, j).clone() - f.clone() * a.get(c, j).clone();
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn is_zero_exact(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:?}", self.get(i, j))).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
    }

    #[test]
    fn determinant() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).det(), rat(-2, 1));
        assert_eq!(m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]).det(), rat(-5, 1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), rat(0, 1));
    }
}
