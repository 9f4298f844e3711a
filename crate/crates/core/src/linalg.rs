//! Small dense linear-algebra helpers.
//!
//! The systems assembled by this crate are small (tens to a few hundred
//! unknowns), so a plain dense LU factorization with partial pivoting is
//! both simple and fast enough for year-long simulations.

use crate::scalar::Scalar;

/// Row-major dense matrix with its right-hand side.
#[derive(Debug, Clone)]
pub struct DenseSystem<S> {
    n: usize,
    a: Vec<S>,
    rhs: Vec<S>,
}

impl<S: Scalar> DenseSystem<S> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            a: vec![S::zero(); n * n],
            rhs: vec![S::zero(); n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&mut self, row: usize, col: usize, value: S) {
        self.a[row * self.n + col] += value;
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> S {
        self.a[row * self.n + col]
    }

    #[inline]
    pub fn add_rhs(&mut self, row: usize, value: S) {
        self.rhs[row] += value;
    }

    #[inline]
    pub fn rhs(&self, row: usize) -> S {
        self.rhs[row]
    }

    /// Adds a two-sided conductance `k` between unknowns `i` and `j`.
    pub fn add_conductance(&mut self, i: usize, j: usize, k: S) {
        self.add(i, i, k);
        self.add(j, j, k);
        self.add(i, j, -k);
        self.add(j, i, -k);
    }

    /// Adds a conductance `k` from unknown `i` to a known boundary
    /// temperature `t_boundary`.
    pub fn add_boundary(&mut self, i: usize, k: S, t_boundary: S) {
        self.add(i, i, k);
        self.add_rhs(i, k * t_boundary);
    }

    /// Replaces row `i` with the equation `x_i = value`.
    pub fn set_dirichlet(&mut self, i: usize, value: S) {
        for col in 0..self.n {
            self.a[i * self.n + col] = S::zero();
        }
        self.a[i * self.n + i] = S::one();
        self.rhs[i] = value;
    }

    /// Evaluates `(A·x)_row − rhs_row`, i.e. the residual of one equation.
    pub fn row_residual(&self, row: usize, x: &[S]) -> S {
        let mut acc = S::zero();
        for col in 0..self.n {
            acc += self.a[row * self.n + col] * x[col];
        }
        acc - self.rhs[row]
    }

    /// Solves the system in place. On failure reports the pivot column
    /// where elimination broke down.
    pub fn solve(mut self) -> Result<Vec<S>, SingularError> {
        lu_solve(&mut self.a, &mut self.rhs, self.n)?;
        Ok(self.rhs)
    }
}

/// Elimination found no usable pivot in the given column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularError {
    pub column: usize,
}

impl std::fmt::Display for SingularError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "singular matrix (no pivot in column {})", self.column)
    }
}

impl std::error::Error for SingularError {}

/// In-place LU solve with partial pivoting; `a` is row-major `n × n`,
/// `rhs` becomes the solution.
pub fn lu_solve<S: Scalar>(a: &mut [S], rhs: &mut [S], n: usize) -> Result<(), SingularError> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(rhs.len(), n);
    for col in 0..n {
        // Pivot search.
        let mut pivot_row = col;
        let mut pivot_mag = a[col * n + col].abs();
        for row in (col + 1)..n {
            let mag = a[row * n + col].abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_mag <= S::lit(1e-300) || !pivot_mag.is_finite() {
            return Err(SingularError { column: col });
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            rhs.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            if factor == S::zero() {
                continue;
            }
            for k in (col + 1)..n {
                let upper = a[col * n + k];
                a[row * n + k] = a[row * n + k] - factor * upper;
            }
            a[row * n + col] = S::zero();
            rhs[row] = rhs[row] - factor * rhs[col];
        }
    }
    // Back substitution.
    for col in (0..n).rev() {
        let mut acc = rhs[col];
        for k in (col + 1)..n {
            acc = acc - a[col * n + k] * rhs[k];
        }
        rhs[col] = acc / a[col * n + col];
    }
    Ok(())
}

/// Ordinary least squares `min ‖X·beta − y‖²` via normal equations.
///
/// Returns the coefficient vector; errors if the design matrix is
/// rank-deficient (pivots below a scale-relative threshold).
pub fn least_squares<S: Scalar>(
    rows: &[Vec<S>],
    y: &[S],
    n_coef: usize,
) -> Result<Vec<S>, SingularError> {
    let n = n_coef;
    let mut a = vec![S::zero(); n * n];
    let mut b = vec![S::zero(); n];
    for (row, &target) in rows.iter().zip(y) {
        debug_assert_eq!(row.len(), n);
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] += row[i] * row[j];
            }
            b[i] += row[i] * target;
        }
    }
    let mut scale = S::zero();
    for i in 0..n {
        scale = scale.max(a[i * n + i].abs());
    }
    if scale == S::zero() {
        return Err(SingularError { column: 0 });
    }
    let floor = scale * S::lit(1e-10);
    // Gaussian elimination with partial pivoting and a relative pivot floor.
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = a[col * n + col].abs();
        for row in (col + 1)..n {
            let mag = a[row * n + col].abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_mag < floor || !pivot_mag.is_finite() {
            return Err(SingularError { column: col });
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            for k in (col + 1)..n {
                let upper = a[col * n + k];
                a[row * n + k] = a[row * n + k] - factor * upper;
            }
            a[row * n + col] = S::zero();
            b[row] = b[row] - factor * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc = acc - a[col * n + k] * b[k];
        }
        b[col] = acc / a[col * n + col];
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let mut sys = DenseSystem::<f64>::zeros(2);
        sys.add(0, 0, 2.0);
        sys.add(0, 1, 1.0);
        sys.add(1, 0, 1.0);
        sys.add(1, 1, 3.0);
        sys.add_rhs(0, 5.0);
        sys.add_rhs(1, 10.0);
        let x = sys.solve().unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn pivoting_handles_zero_diagonal() {
        let mut sys = DenseSystem::<f64>::zeros(2);
        sys.add(0, 1, 1.0);
        sys.add(1, 0, 1.0);
        sys.add_rhs(0, 2.0);
        sys.add_rhs(1, 3.0);
        let x = sys.solve().unwrap();
        assert_eq!(x, vec![3.0, 2.0]);
    }

    #[test]
    fn reports_singular_column() {
        let mut sys = DenseSystem::<f64>::zeros(2);
        sys.add(0, 0, 1.0);
        sys.add(1, 0, 1.0);
        let err = sys.solve().unwrap_err();
        assert_eq!(err.column, 1);
    }

    #[test]
    fn least_squares_recovers_exact_affine() {
        let rows: Vec<Vec<f64>> = vec![
            vec![1.0, 0.0, 0.0],
            vec![1.0, 1.0, 0.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 1.0],
        ];
        let y: Vec<f64> = rows.iter().map(|r| 2.0 + 3.0 * r[1] - 0.5 * r[2]).collect();
        let beta = least_squares(&rows, &y, 3).unwrap();
        assert!((beta[0] - 2.0).abs() < 1e-10);
        assert!((beta[1] - 3.0).abs() < 1e-10);
        assert!((beta[2] + 0.5).abs() < 1e-10);
    }

    #[test]
    fn least_squares_rejects_duplicated_points() {
        let rows: Vec<Vec<f64>> = vec![vec![1.0, 2.0]; 5];
        let y = vec![3.0; 5];
        assert!(least_squares(&rows, &y, 2).is_err());
    }

    #[test]
    fn works_in_f32() {
        let mut sys = DenseSystem::<f32>::zeros(2);
        sys.add(0, 0, 4.0);
        sys.add(1, 1, 2.0);
        sys.add_rhs(0, 8.0);
        sys.add_rhs(1, 6.0);
        let x = sys.solve().unwrap();
        assert!((x[0] - 2.0).abs() < 1e-5);
        assert!((x[1] - 3.0).abs() < 1e-5);
    }
}
