//! Dense complex eigensolver and singular-value solver for desk-scale
//! matrices: Givens-based Hessenberg reduction followed by an implicitly
//! shifted QR iteration with Wilkinson shifts (full unitary accumulated),
//! and a one-sided Jacobi orthogonalization for singular values.

use num_complex::Complex64;

use super::{DenseMatrix, SpectralError};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const EPS: f64 = f64::EPSILON;

/// Complex Givens rotation `G = [[c, s], [-conj(s), c]]` with real `c >= 0`
/// mapping `(f, g)` to `(r, 0)`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64, Complex64) {
    if g == ZERO {
        return (1.0, ZERO, f);
    }
    if f == ZERO {
        let ng = g.norm();
        return (0.0, g.conj() / ng, Complex64::new(ng, 0.0));
    }
    let nf = f.norm();
    let d = (nf * nf + g.norm_sqr()).sqrt();
    let c = nf / d;
    let phase = f / nf;
    let s = phase * g.conj() / d;
    (c, s, phase * d)
}

struct Rotation {
    c: f64,
    s: Complex64,
}

impl Rotation {
    /// Applies `G` to rows `(p, p+1)` over columns `lo..hi`.
    fn apply_left(&self, m: &mut DenseMatrix, p: usize, lo: usize, hi: usize) {
        for j in lo..hi {
            let a = m[(p, j)];
            let b = m[(p + 1, j)];
            m[(p, j)] = self.c * a + self.s * b;
            m[(p + 1, j)] = -self.s.conj() * a + self.c * b;
        }
    }

    /// Applies `G*` to columns `(p, p+1)` over rows `lo..hi`.
    fn apply_right(&self, m: &mut DenseMatrix, p: usize, lo: usize, hi: usize) {
        for i in lo..hi {
            let a = m[(i, p)];
            let b = m[(i, p + 1)];
            m[(i, p)] = self.c * a + self.s.conj() * b;
            m[(i, p + 1)] = -self.s * a + self.c * b;
        }
    }
}

/// Reduces `h` to upper Hessenberg form by a similarity built from Givens
/// rotations, accumulating the transform into `u` (right-multiplied).
fn hessenberg(h: &mut DenseMatrix, u: &mut DenseMatrix) {
    let n = h.dim();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        for i in (k + 2..n).rev() {
            if h[(i, k)] == ZERO {
                continue;
            }
            let (c, s, r) = givens(h[(i - 1, k)], h[(i, k)]);
            let rot = Rotation { c, s };
            rot.apply_left(h, i - 1, k, n);
            h[(i - 1, k)] = r;
            h[(i, k)] = ZERO;
            rot.apply_right(h, i - 1, 0, n);
            rot.apply_right(u, i - 1, 0, n);
        }
    }
}

/// Eigenvalues of a complex 2x2 block, returned with the one closer to the
/// bottom-right entry first (the Wilkinson shift).
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let m = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (m * m - det).sqrt();
    let l1 = m + disc;
    let l2 = m - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Unitary triangularization `a = U R U*`: returns `(U, R)` with `R` upper
/// triangular holding the eigenvalues on its diagonal.
pub fn schur(a: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix), SpectralError> {
    let n = a.dim();
    let mut h = a.clone();
    let mut u = DenseMatrix::identity(n);
    if n <= 1 {
        return Ok((u, h));
    }
    hessenberg(&mut h, &mut u);

    let scale = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let negligible = |h: &DenseMatrix, k: usize| -> bool {
        let s = h[(k, k)].norm() + h[(k + 1, k + 1)].norm();
        let s = if s == 0.0 { scale } else { s };
        h[(k + 1, k)].norm() <= EPS * s
    };

    let mut hi = n - 1;
    let mut iter_since_deflation = 0usize;
    let mut total_iter = 0usize;
    let max_total = 60 * n;

    while hi > 0 {
        // deflate converged subdiagonal entries below the active block
        if negligible(&h, hi - 1) {
            h[(hi, hi - 1)] = ZERO;
            hi -= 1;
            iter_since_deflation = 0;
            continue;
        }
        // find the top of the active block
        let mut lo = hi - 1;
        while lo > 0 {
            if negligible(&h, lo - 1) {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }

        total_iter += 1;
        iter_since_deflation += 1;
        if total_iter > max_total {
            return Err(SpectralError::NonConvergence);
        }

        let shift = if iter_since_deflation.is_multiple_of(12) {
            // exceptional shift to break symmetry on stubborn blocks
            let off = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + Complex64::new(1.5 * off, 0.5 * off)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        // implicit single-shift sweep over the active block
        let mut x = h[(lo, lo)] - shift;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s, _) = givens(x, y);
            let rot = Rotation { c, s };
            rot.apply_left(&mut h, k, lo.saturating_sub(1), n);
            rot.apply_right(&mut h, k, 0, n.min(k + 3));
            rot.apply_right(&mut u, k, 0, n);
            if k + 1 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }

    // clean the below-diagonal residue left by deflation thresholds
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok((u, h))
}

/// Singular values via one-sided Jacobi: unitary column mixing until all
/// column pairs are orthogonal; the values are the final column norms.
/// Small singular values come out with high relative accuracy, which keeps
/// long log-products meaningful.
#[allow(clippy::needless_range_loop)] // parallel column updates read clearest indexed
pub fn singular_values(a: &DenseMatrix) -> Result<Vec<f64>, SpectralError> {
    let n = a.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| a[(i, j)]).collect())
        .collect();
    let max_sweeps = 60;
    for _ in 0..max_sweeps {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = ZERO;
                for i in 0..n {
                    app += cols[p][i].norm_sqr();
                    aqq += cols[q][i].norm_sqr();
                    apq += cols[p][i].conj() * cols[q][i];
                }
                let napq = apq.norm();
                if napq <= 1e-30 || napq * napq <= EPS * EPS * app * aqq {
                    continue;
                }
                rotated = true;
                // diagonalize the Hermitian 2x2 Gram block
                let phase = apq / napq;
                let tau = (aqq - app) / (2.0 * napq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    let vp = cols[p][i];
                    let vq = cols[q][i];
                    cols[p][i] = c * vp - s * phase.conj() * vq;
                    cols[q][i] = s * phase * vp + c * vq;
                }
            }
        }
        if !rotated {
            let sv = cols
                .iter()
                .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
                .collect();
            return Ok(sv);
        }
    }
    Err(SpectralError::NonConvergence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        m
    }

    fn assert_unitary(u: &DenseMatrix, slack: f64) {
        let id = DenseMatrix::identity(u.dim());
        let res = u.mul(&u.adjoint()).sub(&id).frobenius_norm();
        assert!(res < slack, "unitarity residual {res}");
    }

    #[test]
    fn schur_reconstructs_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in [1usize, 2, 3, 5, 8, 13, 24] {
            for _ in 0..8 {
                let a = random_matrix(&mut rng, n);
                let (u, r) = schur(&a).unwrap();
                assert_unitary(&u, 1e-12);
                for i in 0..n {
                    for j in 0..i {
                        assert_eq!(r[(i, j)], ZERO);
                    }
                }
                let recon = u.mul(&r).mul(&u.adjoint());
                let err = recon.sub(&a).frobenius_norm();
                assert!(err < 1e-12 * a.frobenius_norm().max(1.0), "n={n} err={err}");
            }
        }
    }

    #[test]
    fn schur_trace_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 10);
            let (_, r) = schur(&a).unwrap();
            assert!((a.trace() - r.trace()).norm() < 1e-12 * a.frobenius_norm());
        }
    }

    #[test]
    fn schur_on_strictly_triangular_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 9;
        let mut a = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                a[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let (u, r) = schur(&a).unwrap();
        for k in 0..n {
            assert_eq!(r[(k, k)], ZERO);
        }
        assert_eq!(u, DenseMatrix::identity(n));
    }

    #[test]
    fn singular_values_match_determinant_and_unitary_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = random_matrix(&mut rng, 7);
            let sv = singular_values(&a).unwrap();
            // |det| equals the product of singular values; det from Schur
            let (_, r) = schur(&a).unwrap();
            let det: Complex64 = (0..7).map(|k| r[(k, k)]).product();
            let prod: f64 = sv.iter().product();
            assert!((det.norm() - prod).abs() < 1e-10 * prod.max(1.0));
            // invariance under a unitary similarity from the Schur factor
            let (u, _) = schur(&a).unwrap();
            let rotated = u.mul(&a);
            let mut sv2 = singular_values(&rotated).unwrap();
            let mut sv1 = sv.clone();
            sv1.sort_by(|a, b| b.partial_cmp(a).unwrap());
            sv2.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (x, y) in sv1.iter().zip(&sv2) {
                assert!((x - y).abs() < 1e-11 * (1.0 + x));
            }
        }
    }

    #[test]
    fn hermitian_eigen_through_schur() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = random_matrix(&mut rng, 8);
        let h = g.real_part();
        let (u, r) = schur(&h).unwrap();
        assert_unitary(&u, 1e-12);
        for k in 0..8 {
            assert!(r[(k, k)].im.abs() < 1e-12);
        }
        let recon = u.mul(&r).mul(&u.adjoint());
        assert!(recon.sub(&h).frobenius_norm() < 1e-12 * h.frobenius_norm());
    }
}
