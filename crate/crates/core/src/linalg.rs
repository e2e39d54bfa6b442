//! Dense complex matrices and LU determinants.

use num_complex::Complex64;
use std::ops::{Index, IndexMut};

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// `I + s K` for a scalar sign/scale `s`.
    pub fn identity_plus(&self, s: f64) -> Self {
        let mut m = self.clone();
        for v in m.data.iter_mut() {
            *v *= s;
        }
        for i in 0..self.n {
            m[(i, i)] += 1.0;
        }
        m
    }

    /// Determinant by LU factorisation with partial pivoting.
    pub fn det(&self) -> Complex64 {
        det_in_place(self.n, self.data.clone())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

fn det_in_place(n: usize, mut a: Vec<Complex64>) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].norm_sqr();
        for r in col + 1..n {
            let v = a[r * n + col].norm_sqr();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        let inv = p.inv();
        let (upper, lower) = a.split_at_mut((col + 1) * n);
        let pivot_row = &upper[col * n..col * n + n];
        for r in 0..n - col - 1 {
            let row = &mut lower[r * n..r * n + n];
            let f = row[col] * inv;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in col + 1..n {
                row[j] -= f * pivot_row[j];
            }
        }
    }
    det
}

/// `det(I - K)`.
pub fn fredholm_det(k: &CMatrix) -> Complex64 {
    k.identity_plus(-1.0).det()
}
