//! Small dense linear algebra: cyclic Jacobi for symmetric eigenproblems and
//! Gaussian elimination with partial pivoting.

use crate::error::{Error, Result};

/// Relative off-diagonal Frobenius norm at which Jacobi stops.
pub const JACOBI_TOLERANCE: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parameter(
                "matrix rows must all have length n".into(),
            ));
        }
        Ok(Matrix {
            n,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Max absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// A matrix known to be exactly symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix(Matrix);

impl SymMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if m.is_symmetric() {
            Ok(SymMatrix(m))
        } else {
            Err(Error::Parameter("matrix is not symmetric".into()))
        }
    }

    /// Builds from the upper triangle of `f` (including the diagonal).
    pub fn from_upper(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        SymMatrix(m)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.n
    }
}

impl std::ops::Index<(usize, usize)> for SymMatrix {
    type Output = f64;
    fn index(&self, ij: (usize, usize)) -> &f64 {
        &self.0[ij]
    }
}

/// Eigenvalues ascending; column `k` of `vectors` pairs with `values[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }
}

/// Full eigendecomposition by cyclic Jacobi rotations.
pub fn eig_sym(m: &SymMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    let mut a = m.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let threshold = JACOBI_TOLERANCE * a.frobenius_norm();

    let off_norm = |a: &Matrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, |row, k| v[(row, order[k])]);
    Ok(EigenDecomposition { values, vectors })
}

/// Applies the rotation `J(p,q,c,s)` as `Jᵀ A J`, zeroing `A[p,q]`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.n;
    let app = a[(p, p)];
    let aqq = a[(q, q)];
    let apq = a[(p, q)];
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp;
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq;
    }
    a[(p, p)] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
    a[(q, q)] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// LU factors of `P·A` with unit lower triangle stored below the diagonal.
struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
}

fn factor(m: &Matrix) -> Result<Lu> {
    let n = m.n;
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let scale = m.inf_norm().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| lu[(i, col)].abs().total_cmp(&lu[(j, col)].abs()))
            .expect("non-empty range");
        if lu[(pivot, col)].abs() <= scale * n as f64 * f64::EPSILON {
            return Err(Error::Singular { column: col });
        }
        if pivot != col {
            for j in 0..n {
                lu.data.swap(pivot * n + j, col * n + j);
            }
            perm.swap(pivot, col);
        }
        let d = lu[(col, col)];
        for i in col + 1..n {
            let f = lu[(i, col)] / d;
            lu[(i, col)] = f;
            if f != 0.0 {
                for j in col + 1..n {
                    lu.data[i * n + j] -= f * lu.data[col * n + j];
                }
            }
        }
    }
    Ok(Lu { lu, perm })
}

impl Lu {
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        x
    }
}

pub fn solve(m: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    if b.len() != m.n {
        return Err(Error::Parameter(format!(
            "right-hand side has length {}, matrix is {}x{}",
            b.len(),
            m.n,
            m.n
        )));
    }
    Ok(factor(m)?.solve(b))
}

/// Inverse of a nonsingular matrix, one column solve per unit vector.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.n;
    let lu = factor(m)?;
    let mut inv = Matrix::zeros(n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e.iter_mut().for_each(|x| *x = 0.0);
        e[j] = 1.0;
        for (i, x) in lu.solve(&e).into_iter().enumerate() {
            inv[(i, j)] = x;
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_decomposition(m: &SymMatrix, d: &EigenDecomposition) {
        let n = m.dim();
        let vt_v = d.vectors.transpose().mul(&d.vectors);
        let mut err = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                err += (vt_v[(i, j)] - target).powi(2);
            }
        }
        assert!(err.sqrt() <= 1e-10, "orthogonality error {}", err.sqrt());
        let scale = m.as_matrix().frobenius_norm().max(1.0);
        for k in 0..n {
            let v = d.vector(k);
            let mv = m.as_matrix().mul_vec(&v);
            let res: f64 = mv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - d.values[k] * b).powi(2))
                .sum();
            assert!(
                res.sqrt() <= 1e-9 * scale,
                "residual {} for k={k}",
                res.sqrt()
            );
        }
        assert!(d.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn k2_laplacian() {
        let m = SymMatrix::new(Matrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap())
            .unwrap();
        let d = eig_sym(&m).unwrap();
        assert!((d.values[0] - 0.0).abs() < 1e-14);
        assert!((d.values[1] - 2.0).abs() < 1e-14);
        check_decomposition(&m, &d);
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let m = SymMatrix::new(Matrix::identity(3)).unwrap();
        let d = eig_sym(&m).unwrap();
        assert_eq!(d.values, vec![1.0, 1.0, 1.0]);
        check_decomposition(&m, &d);
    }

    #[test]
    fn empty_and_zero_matrices() {
        let d = eig_sym(&SymMatrix::new(Matrix::zeros(0)).unwrap()).unwrap();
        assert!(d.values.is_empty());
        let d = eig_sym(&SymMatrix::new(Matrix::zeros(3)).unwrap()).unwrap();
        assert_eq!(d.values, vec![0.0; 3]);
    }

    #[test]
    fn deterministic() {
        let m = SymMatrix::from_upper(6, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
        let a = eig_sym(&m).unwrap();
        let b = eig_sym(&m).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(SymMatrix::new(m).is_err());
    }

    #[test]
    fn solve_small_systems() {
        let x = solve(&Matrix::identity(3), &[1.0, -2.0, 3.0]).unwrap();
        assert_eq!(x, vec![1.0, -2.0, 3.0]);
        let m = Matrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]).unwrap();
        assert_eq!(solve(&m, &[2.0, 8.0]).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn solve_needs_pivoting() {
        let m = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(solve(&m, &[3.0, 4.0]).unwrap(), vec![4.0, 3.0]);
    }

    #[test]
    fn singular_detected() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(
            solve(&m, &[1.0, 1.0]),
            Err(Error::Singular { .. })
        ));
        assert!(solve(&Matrix::identity(2), &[1.0]).is_err());
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = Matrix::from_fn(5, |i, j| {
            if i == j {
                4.0
            } else {
                1.0 / (1 + i + 2 * j) as f64
            }
        });
        let p = m.mul(&inverse(&m).unwrap());
        for i in 0..5 {
            for j in 0..5 {
                let t = if i == j { 1.0 } else { 0.0 };
                assert!((p[(i, j)] - t).abs() < 1e-13);
            }
        }
    }

    fn sym_strategy() -> impl Strategy<Value = SymMatrix> {
        (1usize..10).prop_flat_map(|n| {
            proptest::collection::vec(-5.0f64..5.0, n * n)
                .prop_map(move |raw| SymMatrix::from_upper(n, |i, j| raw[i * n + j]))
        })
    }

    /// Orthogonal matrix from Gram-Schmidt on a random square matrix.
    fn orthogonal(n: usize, raw: &[f64]) -> Option<Matrix> {
        let mut cols: Vec<Vec<f64>> = Vec::new();
        for j in 0..n {
            let mut c: Vec<f64> = (0..n).map(|i| raw[i * n + j]).collect();
            for q in &cols {
                let d: f64 = c.iter().zip(q).map(|(a, b)| a * b).sum();
                c.iter_mut().zip(q).for_each(|(a, b)| *a -= d * b);
            }
            let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-3 {
                return None;
            }
            c.iter_mut().for_each(|x| *x /= norm);
            cols.push(c);
        }
        Some(Matrix::from_fn(n, |i, j| cols[j][i]))
    }

    proptest! {
        #[test]
        fn decomposition_invariants(m in sym_strategy()) {
            let d = eig_sym(&m).unwrap();
            check_decomposition(&m, &d);
            let scale = m.as_matrix().frobenius_norm().max(1.0);
            let sum: f64 = d.values.iter().sum();
            prop_assert!((sum - m.as_matrix().trace()).abs() <= 1e-9 * scale);
        }

        #[test]
        fn spectrum_invariant_under_rotation(m in sym_strategy(), raw in proptest::collection::vec(-1.0f64..1.0, 100)) {
            let n = m.dim();
            let Some(q) = orthogonal(n, &raw[..n * n]) else { return Ok(()); };
            let rotated = q.transpose().mul(m.as_matrix()).mul(&q);
            // symmetrize away rounding asymmetry
            let rotated = SymMatrix::from_upper(n, |i, j| 0.5 * (rotated[(i, j)] + rotated[(j, i)]));
            let a = eig_sym(&m).unwrap();
            let b = eig_sym(&rotated).unwrap();
            let scale = m.as_matrix().frobenius_norm().max(1.0);
            for (x, y) in a.values.iter().zip(&b.values) {
                prop_assert!((x - y).abs() <= 1e-9 * scale);
            }
        }

        #[test]
        fn solve_residual(n in 1usize..9, raw in proptest::collection::vec(-3.0f64..3.0, 81), b in proptest::collection::vec(-3.0f64..3.0, 9)) {
            let m = Matrix::from_fn(n, |i, j| raw[i * 9 + j] + if i == j { 10.0 } else { 0.0 });
            let x = solve(&m, &b[..n]).unwrap();
            let mx = m.mul_vec(&x);
            let xinf = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            let binf = b[..n].iter().fold(0.0f64, |a, v| a.max(v.abs()));
            for i in 0..n {
                prop_assert!((mx[i] - b[i]).abs() <= 1e-9 * (m.inf_norm() * xinf + binf));
            }
        }
    }
}
