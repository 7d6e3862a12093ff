//! Dense eigenvalue computation for the Hermitian truncations.
//!
//! A complex Hermitian matrix `A + iB` is embedded as the real symmetric
//! matrix `[[A, -B], [B, A]]`, whose spectrum is the spectrum of the input
//! with every eigenvalue doubled. Real symmetric eigenvalues come from
//! Householder tridiagonalization followed by implicit-shift QL iteration,
//! accurate to machine precision relative to the matrix norm.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenError {
    /// QL iteration failed to converge on some eigenvalue.
    NonConvergence,
    /// Matrix data does not form a square matrix of the stated dimension.
    ShapeMismatch,
}

impl fmt::Display for EigenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenError::NonConvergence => f.write_str("eigenvalue iteration did not converge"),
            EigenError::ShapeMismatch => f.write_str("matrix data does not match its dimension"),
        }
    }
}

const MAX_QL_ITERATIONS: usize = 50;

/// Eigenvalues of a real symmetric matrix (row-major, lower triangle used),
/// sorted ascending. The input buffer is consumed as workspace.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>, EigenError> {
    if a.len() != n * n {
        return Err(EigenError::ShapeMismatch);
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut d = vec![0.0_f64; n];
    let mut e = vec![0.0_f64; n];
    tridiagonalize(&mut a, n, &mut d, &mut e);
    ql_implicit(&mut d, &mut e, n)?;
    d.sort_unstable_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(d)
}

/// Eigenvalues of a complex Hermitian matrix (row-major), sorted ascending.
pub fn hermitian_eigenvalues(entries: &[Complex64], n: usize) -> Result<Vec<f64>, EigenError> {
    if entries.len() != n * n {
        return Err(EigenError::ShapeMismatch);
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let all_real = entries.iter().all(|z| z.im == 0.0);
    if all_real {
        let mut a = vec![0.0_f64; n * n];
        for (k, z) in entries.iter().enumerate() {
            a[k] = z.re;
        }
        return symmetric_eigenvalues(a, n);
    }
    // Real embedding [[A, -B], [B, A]]; every eigenvalue appears twice, so
    // keep every other value of the doubled spectrum.
    let m = 2 * n;
    let mut a = vec![0.0_f64; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = entries[i * n + j];
            a[i * m + j] = z.re;
            a[i * m + (n + j)] = -z.im;
            a[(n + i) * m + j] = z.im;
            a[(n + i) * m + (n + j)] = z.re;
        }
    }
    let doubled = symmetric_eigenvalues(a, m)?;
    Ok(doubled.into_iter().step_by(2).collect())
}

/// Smallest eigenvalue of a complex Hermitian matrix.
pub fn hermitian_min_eigenvalue(entries: &[Complex64], n: usize) -> Result<f64, EigenError> {
    if n == 0 {
        return Ok(0.0);
    }
    let values = hermitian_eigenvalues(entries, n)?;
    Ok(values[0])
}

/// Householder reduction to tridiagonal form, eigenvalues-only variant.
/// Works on the lower triangle of `a`; leaves the diagonal in `d` and the
/// subdiagonal in `e[1..]`.
fn tridiagonalize(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    let at = |a: &[f64], r: usize, c: usize| a[r * n + c];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0_f64;
        if l > 0 {
            let mut scale = 0.0_f64;
            for k in 0..=l {
                scale += Float::abs(at(a, i, k));
            }
            if scale == 0.0 {
                e[i] = at(a, i, l);
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += at(a, i, k) * at(a, i, k);
                }
                let mut f = at(a, i, l);
                let g = if f >= 0.0 {
                    -Float::sqrt(h)
                } else {
                    Float::sqrt(h)
                };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0_f64;
                    for k in 0..=j {
                        g += at(a, j, k) * at(a, i, k);
                    }
                    for k in (j + 1)..=l {
                        g += at(a, k, j) * at(a, i, k);
                    }
                    e[j] = g / h;
                    f += e[j] * at(a, i, j);
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = at(a, i, j);
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * at(a, i, k);
                    }
                }
            }
        } else {
            e[i] = at(a, i, l);
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = at(a, i, i);
    }
    e[0] = 0.0;
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
fn ql_implicit(d: &mut [f64], e: &mut [f64], n: usize) -> Result<(), EigenError> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    // Absolute deflation floor: subdiagonals below eps * ||A|| perturb the
    // spectrum by at most machine precision relative to the matrix norm.
    // Without it, blocks of underflow-scale noise never pass the
    // neighbor-relative test and the iteration spins.
    let norm_bound = (0..n)
        .map(|i| {
            Float::abs(d[i])
                + Float::abs(e[i])
                + if i > 0 { Float::abs(e[i - 1]) } else { 0.0 }
        })
        .fold(0.0_f64, |acc, x| if x > acc { x } else { acc });
    let floor = f64::EPSILON * norm_bound;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            // Find a negligible subdiagonal element to split the problem.
            let mut m = l;
            while m + 1 < n {
                let dd = Float::abs(d[m]) + Float::abs(d[m + 1]);
                if Float::abs(e[m]) + dd == dd || Float::abs(e[m]) <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(EigenError::NonConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = Float::hypot(g, 1.0);
            let sign_r = if g >= 0.0 { Float::abs(r) } else { -Float::abs(r) };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = 1.0_f64;
            let mut c = 1.0_f64;
            let mut p = 0.0_f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = Float::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, b) in actual.iter().zip(expected) {
            assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
        }
    }

    #[test]
    fn trivial_sizes() {
        assert_eq!(symmetric_eigenvalues(vec![], 0).unwrap(), Vec::<f64>::new());
        assert_eq!(symmetric_eigenvalues(vec![4.5], 1).unwrap(), vec![4.5]);
        assert_eq!(
            symmetric_eigenvalues(vec![1.0, 2.0], 1).unwrap_err(),
            EigenError::ShapeMismatch
        );
    }

    #[test]
    fn diagonal_matrix() {
        let a = vec![
            3.0, 0.0, 0.0, //
            0.0, -7.0, 0.0, //
            0.0, 0.0, 1.5,
        ];
        assert_close(
            &symmetric_eigenvalues(a, 3).unwrap(),
            &[-7.0, 1.5, 3.0],
            1e-12,
        );
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[a, b], [b, c]] has eigenvalues (a+c)/2 +- sqrt(((a-c)/2)^2 + b^2)
        let (a, b, c) = (2.0_f64, -1.5, 0.25);
        let mid = (a + c) / 2.0;
        let rad = (((a - c) / 2.0).powi(2) + b * b).sqrt();
        let values = symmetric_eigenvalues(vec![a, b, b, c], 2).unwrap();
        assert_close(&values, &[mid - rad, mid + rad], 1e-12);
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        // Tridiagonal (-1, 2, -1) of order n has eigenvalues
        // 2 - 2 cos(k pi / (n + 1)).
        let n = 8;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = 2.0;
            if i + 1 < n {
                a[i * n + i + 1] = -1.0;
                a[(i + 1) * n + i] = -1.0;
            }
        }
        let expected: Vec<f64> = (1..=n)
            .map(|k| 2.0 - 2.0 * (k as f64 * core::f64::consts::PI / (n as f64 + 1.0)).cos())
            .collect();
        assert_close(&symmetric_eigenvalues(a, n).unwrap(), &expected, 1e-10);
    }

    #[test]
    fn hermitian_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let i = Complex64::new(0.0, 1.0);
        let entries = vec![
            Complex64::new(2.0, 0.0),
            i,
            -i,
            Complex64::new(2.0, 0.0),
        ];
        assert_close(&hermitian_eigenvalues(&entries, 2).unwrap(), &[1.0, 3.0], 1e-12);
        assert!((hermitian_min_eigenvalue(&entries, 2).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_symmetric_trace_and_gershgorin() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in [3usize, 7, 16] {
            let mut a = vec![0.0_f64; n * n];
            for i in 0..n {
                for j in 0..=i {
                    let x = rng.gen_range(-2.0..2.0);
                    a[i * n + j] = x;
                    a[j * n + i] = x;
                }
            }
            let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
            let values = symmetric_eigenvalues(a.clone(), n).unwrap();
            let sum: f64 = values.iter().sum();
            assert!((sum - trace).abs() < 1e-9 * (1.0 + trace.abs()));
            let mut bound = 0.0_f64;
            for i in 0..n {
                let radius: f64 = (0..n).map(|j| a[i * n + j].abs()).sum();
                bound = bound.max(radius);
            }
            for v in values {
                assert!(v.abs() <= bound + 1e-9);
            }
        }
    }

    #[test]
    fn random_hermitian_matches_rayleigh_bounds() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let n = 9usize;
        let mut h = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            h[i * n + i] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
            for j in 0..i {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                h[i * n + j] = z;
                h[j * n + i] = z.conj();
            }
        }
        let values = hermitian_eigenvalues(&h, n).unwrap();
        assert_eq!(values.len(), n);
        // lambda_min <= Rayleigh quotient at unit basis vectors = diagonal.
        for i in 0..n {
            assert!(values[0] <= h[i * n + i].re + 1e-10);
            assert!(values[n - 1] >= h[i * n + i].re - 1e-10);
        }
        // Sum of eigenvalues equals the (real) trace.
        let trace: f64 = (0..n).map(|i| h[i * n + i].re).sum();
        let sum: f64 = values.iter().sum();
        assert!((sum - trace).abs() < 1e-9);
    }
}
