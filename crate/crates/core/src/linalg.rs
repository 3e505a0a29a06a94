//! Small dense linear algebra over `f64`.
//!
//! Matrices are row-major `Vec<Vec<f64>>`; every system solved by the
//! certifier has dimension at most a few dozen.

use alloc::vec;
use alloc::vec::Vec;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter().map(|row| dot(row, x)).collect()
}

pub fn transpose(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j]).collect())
        .collect()
}

/// Largest absolute entry, or 0 for an empty matrix.
pub fn max_abs(m: &[Vec<f64>]) -> f64 {
    m.iter()
        .flat_map(|r| r.iter())
        .fold(0.0, |acc, x| acc.max(libm::fabs(*x)))
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| libm::fabs(a[i][col]).total_cmp(&libm::fabs(a[j][col])))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                for k in col..n {
                    a[row][k] -= factor * a[col][k];
                }
            }
        }
    }
    det
}

/// Solves `m x = b`. Returns `None` when a pivot falls below
/// `1e-13 * max|m|`.
pub fn solve(m: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = m.len();
    let threshold = 1e-13 * max_abs(m).max(f64::MIN_POSITIVE);
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| libm::fabs(a[i][col]).total_cmp(&libm::fabs(a[j][col])))?;
        if libm::fabs(a[pivot][col]) <= threshold {
            return None;
        }
        a.swap(pivot, col);
        for row in 0..n {
            if row != col {
                let factor = a[row][col] / a[col][col];
                if factor != 0.0 {
                    for k in col..=n {
                        a[row][k] -= factor * a[col][k];
                    }
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n] / a[i][i]).collect())
}

pub fn inverse(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        columns.push(solve(m, &e)?);
    }
    Some(transpose(&columns))
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut [Vec<f64>], tol: f64) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let threshold = tol * max_abs(a).max(1.0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let p = (r..rows)
            .max_by(|&i, &j| libm::fabs(a[i][c]).total_cmp(&libm::fabs(a[j][c])))
            .unwrap();
        if libm::fabs(a[p][c]) <= threshold {
            for row in a.iter_mut().skip(r) {
                row[c] = 0.0;
            }
            continue;
        }
        a.swap(p, r);
        let lead = a[r][c];
        for k in 0..cols {
            a[r][k] /= lead;
        }
        for i in 0..rows {
            if i != r {
                let factor = a[i][c];
                if factor != 0.0 {
                    for k in 0..cols {
                        a[i][k] -= factor * a[r][k];
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Numerical rank with relative tolerance `tol`.
pub fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a = rows.to_vec();
    rref(&mut a, tol).len()
}

/// Basis of `{x : rows . x = 0}` in a space of dimension `dim`.
pub fn null_space(rows: &[Vec<f64>], dim: usize, tol: f64) -> Vec<Vec<f64>> {
    if rows.is_empty() {
        return (0..dim)
            .map(|i| {
                let mut e = vec![0.0; dim];
                e[i] = 1.0;
                e
            })
            .collect();
    }
    let mut a = rows.to_vec();
    let pivots = rref(&mut a, tol);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0.0; dim];
            x[f] = 1.0;
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -a[r][f];
            }
            x
        })
        .collect()
}

/// Affine dimension of a point set (-1 is reported as `None` for the empty set).
pub fn affine_dimension(points: &[Vec<f64>], tol: f64) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, first)).collect();
    Some(rank(&diffs, tol))
}

/// Gram-Schmidt: orthonormal basis of the orthogonal complement of `span(vectors)`.
pub fn orthogonal_complement(vectors: &[Vec<f64>], dim: usize, tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        if let Some(u) = residual(v, &basis, tol) {
            basis.push(u);
        }
    }
    let spanned = basis.len();
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        if let Some(u) = residual(&e, &basis, tol) {
            basis.push(u);
        }
    }
    basis.split_off(spanned)
}

fn residual(v: &[f64], basis: &[Vec<f64>], tol: f64) -> Option<Vec<f64>> {
    let mut r = v.to_vec();
    // two passes keep the result orthogonal to working precision
    for _ in 0..2 {
        for b in basis {
            let c = dot(&r, b);
            r = axpy(&r, -c, b);
        }
    }
    let nr = norm(&r);
    (nr > tol * norm(v).max(1.0)).then(|| scale(&r, 1.0 / nr))
}
