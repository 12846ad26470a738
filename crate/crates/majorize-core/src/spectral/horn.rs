//! Constructive realization of a triangular matrix with prescribed
//! eigenvalues and dominated singular values.
//!
//! Given a complex list `y` with nonincreasing moduli and a nonincreasing
//! `x` whose prefix products dominate those of `|y|`, this builds an upper
//! triangular `T` with diagonal exactly `y` and singular values equal to a
//! shrunk copy `x' <= x` whose total product matches `prod |y|`. The chain
//! works on an initially diagonal matrix and applies one 2x2 unitary
//! congruence step per consumed eigenvalue: each step welds two trailing
//! singular values `d_a >= |y_j| >= d_b` into the triangular block
//! `[[y_j, t], [0, z]]` with `z = d_a d_b / |y_j|` and `t` fixed by the
//! Frobenius norm, which has singular values exactly `(d_a, d_b)`. Once the
//! remaining eigenvalues are all zero, the leftover diagonal is turned into
//! a superdiagonal nilpotent block with the same singular values. Output
//! validity is always re-verified a posteriori.

use num_complex::Complex64;

use super::{canonical_eigen_sort, eigen_seq, sv_seq, DenseMatrix, SpectralError};
use crate::config::Tolerances;
use crate::orders::check_log_submajor;
use crate::seq::{self, NonincreasingSeq};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone)]
pub struct HornResult {
    /// Upper triangular matrix with diagonal `y`.
    pub matrix: DenseMatrix,
    /// The shrunk singular-value target actually realized (`<= x` entrywise).
    pub shrunk: NonincreasingSeq,
    /// Largest eigenvalue mismatch found by the a-posteriori check.
    pub eigen_err: f64,
    /// Largest relative excess of a singular value over `x` (0 when none).
    pub sv_excess: f64,
}

/// Shrinks `x` from the tail so its total product matches `prod |y|` while
/// every prefix product still dominates. Only the last entry moves; it drops
/// to exactly zero when `y` contains a zero.
fn shrink_tail(x: &NonincreasingSeq, y_mods: &[f64], floor: f64) -> Vec<f64> {
    let mut out = x.values().to_vec();
    let lx: f64 = seq::log_entries(&out, floor).iter().sum();
    let ly: f64 = seq::log_entries(y_mods, floor).iter().sum();
    if lx == f64::NEG_INFINITY {
        // x already carries a zero; products agree at zero
        return out;
    }
    let last = out.len() - 1;
    if ly == f64::NEG_INFINITY {
        out[last] = 0.0;
    } else {
        let deficit = (lx - ly).max(0.0);
        out[last] *= (-deficit).exp();
    }
    out
}

/// Right factor `V = V_B*` of the 2x2 weld: `V_B`'s columns are the right
/// singular vectors of `B = [[alpha, t], [0, z]]` for singular values
/// `(d_a, d_b)`.
fn weld_right_factor(alpha: Complex64, t: f64, d_a: f64) -> [[Complex64; 2]; 2] {
    let v1_raw = [
        alpha.conj() * t,
        Complex64::new(d_a * d_a - alpha.norm_sqr(), 0.0),
    ];
    let norm = (v1_raw[0].norm_sqr() + v1_raw[1].norm_sqr()).sqrt();
    if norm <= 1e-300 {
        // already diagonal: no mixing needed
        return [
            [Complex64::new(1.0, 0.0), ZERO],
            [ZERO, Complex64::new(1.0, 0.0)],
        ];
    }
    let v1 = [v1_raw[0] / norm, v1_raw[1] / norm];
    let v2 = [-v1[1].conj(), v1[0].conj()];
    // rows of V_B* are the conjugated right singular vectors
    [[v1[0].conj(), v1[1].conj()], [v2[0].conj(), v2[1].conj()]]
}

fn swap_position(m: &mut DenseMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    let n = m.dim();
    for r in 0..n {
        let tmp = m[(r, a)];
        m[(r, a)] = m[(r, b)];
        m[(r, b)] = tmp;
    }
    for c in 0..n {
        let tmp = m[(a, c)];
        m[(a, c)] = m[(b, c)];
        m[(b, c)] = tmp;
    }
}

/// Sorts the trailing diagonal block (positions `from..n`) into nonincreasing
/// order by symmetric row/column swaps.
fn sort_trailing(m: &mut DenseMatrix, from: usize) {
    let n = m.dim();
    for i in from..n {
        let mut best = i;
        for j in i + 1..n {
            if m[(j, j)].re > m[(best, best)].re {
                best = j;
            }
        }
        swap_position(m, i, best);
    }
}

/// Builds an upper triangular matrix with diagonal `y` (given with
/// nonincreasing moduli) and singular values dominated by `x`.
///
/// Preconditions: `y` and `x` have the same positive length, `|y|` is
/// nonincreasing and `mu(y)` is log-submajorized by `x`. The result is
/// re-verified: its eigenvalue multiset must match `y` and its singular
/// values must not exceed `x` beyond the `sv_rel` slack.
pub fn construct_from_spectrum(
    y: &[Complex64],
    x: &NonincreasingSeq,
    tol: &Tolerances,
) -> Result<HornResult, SpectralError> {
    let n = y.len();
    if n == 0 || n != x.len() {
        return Err(SpectralError::Precondition(format!(
            "need matching positive lengths, got {} and {}",
            n,
            x.len()
        )));
    }
    let y_mods: Vec<f64> = y.iter().map(|z| z.norm()).collect();
    for k in 1..n {
        if y_mods[k] > y_mods[k - 1] * (1.0 + 1e-12) + 1e-300 {
            return Err(SpectralError::Precondition(
                "moduli of y must be nonincreasing".into(),
            ));
        }
    }
    let mu_y = seq::mu(y);
    let order = check_log_submajor(&mu_y, x, tol);
    if !order.is_holds() {
        return Err(SpectralError::Precondition(format!(
            "mu(y) is not log-submajorized by x (first bad prefix {:?})",
            order.failure_index
        )));
    }

    let shrunk_vals = shrink_tail(x, &y_mods, tol.prod_floor);
    let mut m = DenseMatrix::diagonal(&shrunk_vals);

    let mut j = 0;
    while j < n {
        let alpha = y[j];
        let mods = alpha.norm();
        if mods <= tol.prod_floor {
            // all remaining eigenvalues are zero: nilpotent closure
            sort_trailing(&mut m, j);
            let d: Vec<f64> = (j..n).map(|i| m[(i, i)].re).collect();
            // cyclically shift the coupling columns to follow D -> D P
            for r in 0..j {
                let last = m[(r, n - 1)];
                for c in (j + 1..n).rev() {
                    m[(r, c)] = m[(r, c - 1)];
                }
                m[(r, j)] = last;
            }
            for i in j..n {
                for c in j..n {
                    m[(i, c)] = ZERO;
                }
            }
            for (offset, &val) in d.iter().enumerate().take(n - 1 - j) {
                m[(j + offset, j + offset + 1)] = Complex64::new(val, 0.0);
            }
            j = n;
            continue;
        }
        if j == n - 1 {
            // product equality pins the last singular value to |y|; keep the phase
            m[(j, j)] = alpha;
            j += 1;
            continue;
        }
        sort_trailing(&mut m, j);
        // adjacent straddling pair d_a >= |y_j| >= d_b in the trailing block
        let mut a_idx = j;
        for i in j..n {
            if m[(i, i)].re >= mods {
                a_idx = i;
            } else {
                break;
            }
        }
        a_idx = a_idx.min(n - 2);
        // bring the pair (a_idx, a_idx+1) to positions (j, j+1)
        swap_position(&mut m, a_idx, j);
        let b_pos = if a_idx == j { j + 1 } else { a_idx + 1 };
        swap_position(&mut m, b_pos, j + 1);
        let d_a = m[(j, j)].re;
        let d_b = m[(j + 1, j + 1)].re;
        // snap exact-tie welds so that y = x reproduces a diagonal matrix
        let (z, t) = if (d_a - mods).abs() <= 1e-12 * mods {
            (d_b, 0.0)
        } else if (mods - d_b).abs() <= 1e-12 * mods {
            (d_a, 0.0)
        } else {
            let z = d_a * d_b / mods;
            let m2 = mods * mods;
            // factored form of d_a^2 + d_b^2 - mods^2 - z^2, stable near ties
            let t2 = (d_a * d_a - m2) * (m2 - d_b * d_b);
            (z, t2.max(0.0).sqrt() / mods)
        };
        let v = weld_right_factor(alpha, t, d_a);
        for r in 0..j {
            let u0 = m[(r, j)];
            let u1 = m[(r, j + 1)];
            m[(r, j)] = u0 * v[0][0] + u1 * v[1][0];
            m[(r, j + 1)] = u0 * v[0][1] + u1 * v[1][1];
        }
        m[(j, j)] = alpha;
        m[(j, j + 1)] = Complex64::new(t, 0.0);
        m[(j + 1, j)] = ZERO;
        m[(j + 1, j + 1)] = Complex64::new(z, 0.0);
        j += 1;
    }

    // a-posteriori verification, never skipped
    let shrunk = NonincreasingSeq::new({
        let mut v = shrunk_vals.clone();
        v.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        v
    })
    .expect("shrunk target is nonincreasing");
    let mut eig = eigen_seq(&m)?;
    let mut want = y.to_vec();
    canonical_eigen_sort(&mut eig);
    canonical_eigen_sort(&mut want);
    let scale = x.get_padded(0).max(1.0);
    let eigen_err = eig
        .iter()
        .zip(&want)
        .map(|(p, q)| (p - q).norm())
        .fold(0.0f64, f64::max);
    if eigen_err > tol.eig_rel * scale {
        return Err(SpectralError::VerificationFailed(format!(
            "eigenvalue mismatch {eigen_err:.3e} exceeds {:.3e}",
            tol.eig_rel * scale
        )));
    }
    let sv = sv_seq(&m)?;
    let mut sv_excess = 0.0f64;
    // exact-zero targets tolerate the eps-scale residue the weld chain
    // leaves in the mixed columns
    let zero_floor = 1e-14 * scale;
    for (k, &s) in sv.values().iter().enumerate() {
        let bound = x.get_padded(k);
        if s > bound * (1.0 + tol.sv_rel) + zero_floor {
            return Err(SpectralError::VerificationFailed(format!(
                "singular value {k} = {s:.12e} exceeds target {bound:.12e}"
            )));
        }
        if bound > 0.0 {
            sv_excess = sv_excess.max(s / bound - 1.0);
        }
    }
    Ok(HornResult {
        matrix: m,
        shrunk,
        eigen_err,
        sv_excess: sv_excess.max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn seq(values: &[f64]) -> NonincreasingSeq {
        NonincreasingSeq::new(values.to_vec()).unwrap()
    }

    fn real(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn equal_spectra_give_diagonal() {
        let y = vec![real(0.9), real(0.5), real(0.2)];
        let x = seq(&[0.9, 0.5, 0.2]);
        let out = construct_from_spectrum(&y, &x, &tol()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(out.matrix[(i, j)].norm() < 1e-14);
                }
            }
        }
        assert!(out.eigen_err < 1e-14);
    }

    #[test]
    fn two_by_two_hand_case() {
        // y = (1/2, 1/2), x = (1, 1/4) realizes [[1/2, 3/4], [0, 1/2]]
        let y = vec![real(0.5), real(0.5)];
        let x = seq(&[1.0, 0.25]);
        let out = construct_from_spectrum(&y, &x, &tol()).unwrap();
        assert!((out.matrix[(0, 0)] - real(0.5)).norm() < 1e-15);
        assert!((out.matrix[(0, 1)] - real(0.75)).norm() < 1e-15);
        assert!((out.matrix[(1, 1)] - real(0.5)).norm() < 1e-15);
        let sv = sv_seq(&out.matrix).unwrap();
        assert!((sv.values()[0] - 1.0).abs() < 1e-12);
        assert!((sv.values()[1] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn zero_spectrum_gives_shift_matrix() {
        // y = (0, 0), x = (1, 0) realizes the rank-one shift E_01
        let y = vec![ZERO, ZERO];
        let x = seq(&[1.0, 0.0]);
        let out = construct_from_spectrum(&y, &x, &tol()).unwrap();
        assert!((out.matrix[(0, 1)] - real(1.0)).norm() < 1e-15);
        assert!(out.matrix[(0, 0)].norm() < 1e-15);
        assert!(out.matrix[(1, 1)].norm() < 1e-15);
        let sv = sv_seq(&out.matrix).unwrap();
        assert!((sv.values()[0] - 1.0).abs() < 1e-14);
        assert!(sv.values()[1].abs() < 1e-14);
    }

    #[test]
    fn strict_product_deficit_shrinks_tail() {
        let y = vec![real(0.8), real(0.4)];
        let x = seq(&[1.0, 1.0]);
        let out = construct_from_spectrum(&y, &x, &tol()).unwrap();
        // total product of the realized singular values is 0.32
        let sv = sv_seq(&out.matrix).unwrap();
        let prod: f64 = sv.values().iter().product();
        assert!((prod - 0.32).abs() < 1e-12);
        assert!(sv.values()[0] <= 1.0 + 1e-12);
    }

    #[test]
    fn complex_phases_are_preserved() {
        let y = vec![
            Complex64::new(0.3, 0.4), // modulus 0.5
            Complex64::new(0.0, 0.5),
            Complex64::new(-0.2, 0.0),
        ];
        let x = seq(&[2.0, 1.0, 0.1]);
        let out = construct_from_spectrum(&y, &x, &tol()).unwrap();
        assert!(out.eigen_err < 1e-10);
        assert!(out.sv_excess <= 0.0 + 1e-12);
    }

    #[test]
    fn precondition_failures_are_reported() {
        // moduli of y increase
        let y = vec![real(0.1), real(0.9)];
        let x = seq(&[1.0, 1.0]);
        assert!(matches!(
            construct_from_spectrum(&y, &x, &tol()),
            Err(SpectralError::Precondition(_))
        ));
        // first prefix product violated
        let y = vec![real(2.0), real(0.1)];
        assert!(matches!(
            construct_from_spectrum(&y, &x, &tol()),
            Err(SpectralError::Precondition(_))
        ));
    }

    #[test]
    fn interleaved_zero_eigenvalues() {
        let y = vec![real(1.0), real(1.0), ZERO];
        let x = seq(&[2.0, 1.0, 0.7]);
        let out = construct_from_spectrum(&y, &x, &tol()).unwrap();
        assert!(out.eigen_err < 1e-10);
        let sv = sv_seq(&out.matrix).unwrap();
        for (k, &s) in sv.values().iter().enumerate() {
            assert!(s <= x.values()[k] * (1.0 + 1e-9), "sv {k} = {s}");
        }
    }
}
