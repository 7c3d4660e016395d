//! Small dense complex matrices, a cyclic Jacobi eigensolver and Haar
//! unitaries.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::SamplingError;

/// Row-major `n×n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        let mut m = ComplexMatrix::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let n = rows.len();
        ComplexMatrix::from_fn(n, |i, j| rows[i][j])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        ComplexMatrix::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> Self {
        ComplexMatrix::from_fn(self.n, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Self {
        ComplexMatrix::from_fn(self.n, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn scale(&self, s: f64) -> Self {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// `self + t·other`.
    pub fn axpy(&self, t: f64, other: &ComplexMatrix) -> Self {
        ComplexMatrix::from_fn(self.n, |i, j| self[(i, j)] + other[(i, j)] * t)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(A†B)`.
    pub fn hs_inner(&self, other: &ComplexMatrix) -> Complex64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        let (n, m) = (self.n, other.n);
        ComplexMatrix::from_fn(n * m, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        self.add(&self.adjoint()).scale(0.5)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap_or(col);
            if a[pivot * n + col].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
            }
        }
        det
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Off-diagonal tolerance of the Jacobi iteration.
pub const JACOBI_TOLERANCE: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;
const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Eigenvalues (descending) and, if requested, the unitary whose columns
/// are the matching eigenvectors.
fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>), SamplingError> {
    let n = m.dim();
    let scale = m.max_abs().max(1.0);
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOLERANCE * scale {
        return Err(SamplingError::NotHermitian(defect));
    }
    let mut a = m.hermitian_part();
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));

    if n == 2 && !want_vectors {
        let (p, d) = (a[(0, 0)].re, a[(1, 1)].re);
        let half = (p - d) / 2.0;
        let r = (half * half + a[(0, 1)].norm_sqr()).sqrt();
        let mid = (p + d) / 2.0;
        return Ok((vec![mid + r, mid - r], None));
    }

    let off = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&a) > JACOBI_TOLERANCE * scale {
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(SamplingError::NoConvergence(off(&a)));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // phase e^{-iφ} on column q makes the pivot real, then a real rotation
                let phase = (apq / r).conj();
                let zeta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let gpp = Complex64::new(c, 0.0);
                let gpq = Complex64::new(s, 0.0);
                let gqp = phase * (-s);
                let gqq = phase * c;
                // A ← A G
                for i in 0..n {
                    let (x, y) = (a[(i, p)], a[(i, q)]);
                    a[(i, p)] = x * gpp + y * gqp;
                    a[(i, q)] = x * gpq + y * gqq;
                }
                // A ← G† A
                for j in 0..n {
                    let (x, y) = (a[(p, j)], a[(q, j)]);
                    a[(p, j)] = gpp.conj() * x + gqp.conj() * y;
                    a[(q, j)] = gpq.conj() * x + gqq.conj() * y;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                if let Some(v) = v.as_mut() {
                    for i in 0..n {
                        let (x, y) = (v[(i, p)], v[(i, q)]);
                        v[(i, p)] = x * gpp + y * gqp;
                        v[(i, q)] = x * gpq + y * gqq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.map(|v| ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]));
    Ok((values, vectors))
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigs(m: &ComplexMatrix) -> Result<Vec<f64>, SamplingError> {
    Ok(jacobi(m, false)?.0)
}

/// Eigenvalues (descending) and eigenvectors as the columns of a unitary.
pub fn eigh(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), SamplingError> {
    let (vals, vecs) = jacobi(m, true)?;
    Ok((vals, vecs.expect("vectors requested")))
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of iid standard complex Gaussians.
pub fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = complex_normal(rng);
        }
    }
    m
}

/// Haar unitary: Gram-Schmidt on a Ginibre matrix, which yields the `Q` of
/// a QR factorization whose `R` has a positive diagonal.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let z = ginibre(n, rng);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = z.column(j);
        // two passes keep the columns orthogonal to working precision
        for _ in 0..2 {
            for u in &cols {
                let d: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= d * ui;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|x| x / norm).collect());
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}
