//! Desk-scale matrix layer: eigenvalue and singular-value sequences, unitary
//! triangularization and the normal/quasi-nilpotent splitting, trace checks,
//! the quasi-nilpotent Cesaro estimates, and the constructive converse to the
//! Weyl inequality.

mod horn;
mod linalg;

pub use horn::{construct_from_spectrum, HornResult};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::config::{Tolerances, DESK_LIMIT};
use crate::orders::{check_log_submajor, OrderVerdict};
use crate::seq::{self, NonincreasingSeq};

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("matrix data has length {0}, not a square of the dimension")]
    NotSquare(usize),
    #[error("dimension {dim} exceeds the desk limit {limit}")]
    DeskLimit { dim: usize, limit: usize },
    #[error("matrix entry ({0}, {1}) is not finite")]
    NotFinite(usize, usize),
    #[error("eigensolver failed to converge")]
    NonConvergence,
    #[error(
        "input is not quasi-nilpotent: max eigenvalue modulus {0:.3e} exceeds tolerance {1:.3e}"
    )]
    NotQuasiNilpotent(f64, f64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction verification failed: {0}")]
    VerificationFailed(String),
}

/// Square complex matrix, row-major, with a desk-scale dimension cap.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self, SpectralError> {
        Self::with_limit(dim, data, DESK_LIMIT)
    }

    pub fn with_limit(
        dim: usize,
        data: Vec<Complex64>,
        limit: usize,
    ) -> Result<Self, SpectralError> {
        if data.len() != dim * dim {
            return Err(SpectralError::NotSquare(data.len()));
        }
        if dim > limit {
            return Err(SpectralError::DeskLimit { dim, limit });
        }
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(SpectralError::NotFinite(idx / dim, idx % dim));
            }
        }
        Ok(DenseMatrix { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m[(k, k)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self, SpectralError> {
        Self::new(
            dim,
            entries.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (k, &v) in values.iter().enumerate() {
            m[(k, k)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        DenseMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        DenseMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> DenseMatrix {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn adjoint(&self) -> DenseMatrix {
        let n = self.dim;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Hermitian real part `(A + A*)/2`.
    pub fn real_part(&self) -> DenseMatrix {
        self.add(&self.adjoint()).scale(Complex64::new(0.5, 0.0))
    }

    /// Hermitian imaginary part `(A - A*)/(2i)`.
    pub fn imag_part(&self) -> DenseMatrix {
        self.sub(&self.adjoint()).scale(Complex64::new(0.0, -0.5))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self[(k, k)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, slack: f64) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > slack {
                    return false;
                }
            }
        }
        true
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Canonical eigenvalue order: nonincreasing modulus, ties broken by
/// descending real part, then descending imaginary part. The modulus order is
/// the mathematically meaningful one; the tie-break makes runs reproducible.
pub fn canonical_eigen_sort(values: &mut [Complex64]) {
    values.sort_by(|p, q| {
        q.norm()
            .partial_cmp(&p.norm())
            .expect("finite eigenvalues")
            .then(q.re.partial_cmp(&p.re).expect("finite"))
            .then(q.im.partial_cmp(&p.im).expect("finite"))
    });
}

/// All eigenvalues with algebraic multiplicity, in canonical order.
pub fn eigen_seq(t: &DenseMatrix) -> Result<Vec<Complex64>, SpectralError> {
    let (_, r) = linalg::schur(t)?;
    let mut eig: Vec<Complex64> = (0..t.dim()).map(|k| r[(k, k)]).collect();
    canonical_eigen_sort(&mut eig);
    Ok(eig)
}

/// Singular values, nonincreasing, length `dim`.
pub fn sv_seq(t: &DenseMatrix) -> Result<NonincreasingSeq, SpectralError> {
    let mut sv = linalg::singular_values(t)?;
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    NonincreasingSeq::new(sv).map_err(|e| SpectralError::VerificationFailed(e.to_string()))
}

/// Normal + quasi-nilpotent splitting through a unitary triangularization:
/// `t = n_part + q_part` with `n_part` normal carrying the full eigenvalue
/// sequence and `q_part` quasi-nilpotent.
#[derive(Debug, Clone)]
pub struct RingroseSplit {
    pub n_part: DenseMatrix,
    pub q_part: DenseMatrix,
    /// Unitary `U` with `U* t U` upper triangular.
    pub basis: DenseMatrix,
}

/// Residuals certifying the split invariants, all computed a posteriori.
#[derive(Debug, Clone, Serialize)]
pub struct RingroseCheck {
    /// `|| n_part + q_part - t ||_F`
    pub recon_err: f64,
    /// Largest diagonal modulus of `U* q_part U` — the spectral radius of
    /// `q_part` read through its own triangularization.
    pub qpart_spectral_radius: f64,
    /// Largest below-diagonal modulus of `U* q_part U` (validity of the
    /// triangular reading).
    pub qpart_triangular_residual: f64,
    /// Hausdorff-style distance between the eigenvalue multisets of `t` and
    /// `n_part` after canonical sorting.
    pub eigen_match_err: f64,
    /// `|| n n* - n* n ||_F` for `n = n_part`.
    pub normality_residual: f64,
}

pub fn ringrose_decompose(t: &DenseMatrix) -> Result<RingroseSplit, SpectralError> {
    let (u, r) = linalg::schur(t)?;
    let n = t.dim();
    let mut diag = DenseMatrix::zeros(n);
    let mut strict = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            if i == j {
                diag[(i, j)] = r[(i, j)];
            } else {
                strict[(i, j)] = r[(i, j)];
            }
        }
    }
    let uh = u.adjoint();
    Ok(RingroseSplit {
        n_part: u.mul(&diag).mul(&uh),
        q_part: u.mul(&strict).mul(&uh),
        basis: u,
    })
}

impl RingroseSplit {
    pub fn verify(&self, t: &DenseMatrix) -> Result<RingroseCheck, SpectralError> {
        let recon_err = self.n_part.add(&self.q_part).sub(t).frobenius_norm();
        let conj = self.basis.adjoint().mul(&self.q_part).mul(&self.basis);
        let n = t.dim();
        let mut qpart_spectral_radius: f64 = 0.0;
        let mut qpart_triangular_residual: f64 = 0.0;
        for i in 0..n {
            qpart_spectral_radius = qpart_spectral_radius.max(conj[(i, i)].norm());
            for j in 0..i {
                qpart_triangular_residual = qpart_triangular_residual.max(conj[(i, j)].norm());
            }
        }
        let mut eig_t = eigen_seq(t)?;
        let mut eig_n = eigen_seq(&self.n_part)?;
        canonical_eigen_sort(&mut eig_t);
        canonical_eigen_sort(&mut eig_n);
        let eigen_match_err = eig_t
            .iter()
            .zip(&eig_n)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        let nh = self.n_part.adjoint();
        let normality_residual = self
            .n_part
            .mul(&nh)
            .sub(&nh.mul(&self.n_part))
            .frobenius_norm();
        Ok(RingroseCheck {
            recon_err,
            qpart_spectral_radius,
            qpart_triangular_residual,
            eigen_match_err,
            normality_residual,
        })
    }
}

/// Eigenvalue-vs-singular-value log comparison: the rearranged eigenvalue
/// moduli are log-submajorized by the singular values.
pub fn weyl_check(t: &DenseMatrix, tol: &Tolerances) -> Result<OrderVerdict, SpectralError> {
    let eig = eigen_seq(t)?;
    let sv = sv_seq(t)?;
    Ok(check_log_submajor(&seq::mu(&eig), &sv, tol))
}

#[derive(Debug, Clone, Serialize)]
pub struct LidskiiReport {
    pub trace_re: f64,
    pub trace_im: f64,
    pub eigen_sum_re: f64,
    pub eigen_sum_im: f64,
    pub abs_err: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Trace equals the eigenvalue sum, up to `eig_rel * dim` scaled by the
/// operator norm (with a floor of 1 for near-zero matrices).
pub fn lidskii_check(t: &DenseMatrix, tol: &Tolerances) -> Result<LidskiiReport, SpectralError> {
    let tr = t.trace();
    let eig = eigen_seq(t)?;
    let sum: Complex64 = eig.iter().sum();
    let abs_err = (tr - sum).norm();
    let scale = sv_seq(t)?.get_padded(0).max(1.0);
    let threshold = tol.eig_rel * t.dim() as f64 * scale;
    Ok(LidskiiReport {
        trace_re: tr.re,
        trace_im: tr.im,
        eigen_sum_re: sum.re,
        eigen_sum_im: sum.im,
        abs_err,
        threshold,
        pass: abs_err <= threshold,
    })
}

/// Checks quasi-nilpotency: every eigenvalue modulus at most
/// `eig_rel * ||q||`. Strictly triangular inputs pass exactly.
pub fn require_quasinilpotent(q: &DenseMatrix, tol: &Tolerances) -> Result<(), SpectralError> {
    let eig = eigen_seq(q)?;
    let scale = sv_seq(q)?.get_padded(0);
    let threshold = tol.eig_rel * scale;
    let max_mod = eig.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if max_mod > threshold {
        return Err(SpectralError::NotQuasiNilpotent(max_mod, threshold));
    }
    Ok(())
}

/// Real eigenvalues of a Hermitian matrix in canonical order (nonincreasing
/// modulus, positive value first on modulus ties).
pub fn hermitian_eigen_ordered(h: &DenseMatrix) -> Result<Vec<f64>, SpectralError> {
    debug_assert!(h.is_hermitian(1e-10 * (1.0 + h.frobenius_norm())));
    let eig = eigen_seq(h)?;
    // eigenvalues of a Hermitian matrix are real; discard solver roundoff
    let mut vals: Vec<f64> = eig.iter().map(|z| z.re).collect();
    vals.sort_by(|p, q| {
        q.abs()
            .partial_cmp(&p.abs())
            .expect("finite")
            .then(q.partial_cmp(p).expect("finite"))
    });
    Ok(vals)
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasinilpotentSumReport {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// Spectral sum bound for a quasi-nilpotent `q`: the modulus of the sum of
/// eigenvalues of `Re q` beyond modulus 1 is at most `400` times the log-sum
/// of the singular-value spectrum of `2e|q|` beyond 1. The imaginary-part
/// variant is checked by passing `q.imag_part()`-derived data by the caller
/// through the same entry point with `i*q`.
pub fn quasinilpotent_sum_check(
    q: &DenseMatrix,
    tol: &Tolerances,
) -> Result<QuasinilpotentSumReport, SpectralError> {
    require_quasinilpotent(q, tol)?;
    let two_e = 2.0 * std::f64::consts::E;
    let herm = q.real_part();
    let lam = hermitian_eigen_ordered(&herm)?;
    let lhs = lam.iter().filter(|v| v.abs() > 1.0).sum::<f64>().abs();
    let sv = sv_seq(q)?;
    let rhs = 400.0
        * sv.values()
            .iter()
            .map(|&s| two_e * s)
            .filter(|&s| s > 1.0)
            .map(|s| s.ln())
            .sum::<f64>();
    let pass = lhs <= rhs + 1e-9 * (1.0 + rhs);
    Ok(QuasinilpotentSumReport { lhs, rhs, pass })
}

#[derive(Debug, Clone, Serialize)]
pub struct PrefinalReport {
    /// Worst ratio of |Cesaro of eigenvalues| to the transform bound, over
    /// both the real and imaginary parts.
    pub max_ratio: f64,
    pub pass: bool,
}

fn cesaro_abs_of_hermitian_eigen(h: &DenseMatrix) -> Result<Vec<f64>, SpectralError> {
    let lam = hermitian_eigen_ordered(h)?;
    let mut acc = 0.0;
    Ok(lam
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            acc += v;
            (acc / (k + 1) as f64).abs()
        })
        .collect())
}

/// Entrywise bound `|C lambda(Re q)| <= 200 * S(sigma_2(2e mu(q)))`, and the
/// same for the imaginary part.
pub fn prefinal_bound_check(
    q: &DenseMatrix,
    tol: &Tolerances,
) -> Result<PrefinalReport, SpectralError> {
    require_quasinilpotent(q, tol)?;
    let two_e = 2.0 * std::f64::consts::E;
    let rhs_base = sv_seq(q)?.scale(two_e).dilate(2).expect("dilate by 2");
    let rhs = seq::s_transform(&rhs_base, tol).scale(200.0);
    let mut max_ratio: f64 = 0.0;
    let mut pass = true;
    for part in [q.real_part(), q.imag_part()] {
        let lhs = cesaro_abs_of_hermitian_eigen(&part)?;
        for (k, &l) in lhs.iter().enumerate() {
            let r = rhs.get_padded(k);
            if l > r + 1e-9 * (1.0 + r) {
                pass = false;
            }
            if r > 0.0 {
                max_ratio = max_ratio.max(l / r);
            } else if l > 0.0 {
                pass = false;
                max_ratio = f64::INFINITY;
            }
        }
    }
    Ok(PrefinalReport { max_ratio, pass })
}

#[derive(Debug, Clone, Serialize)]
pub struct GeomEstimateReport {
    pub real_part: OrderVerdict,
    pub imag_part: OrderVerdict,
}

/// Log submajorization `mu(C lambda(Re q)) <<_log sigma_4(1600 e mu(q))`,
/// for both the real and imaginary parts.
pub fn geom_estimate_check(
    q: &DenseMatrix,
    tol: &Tolerances,
) -> Result<GeomEstimateReport, SpectralError> {
    require_quasinilpotent(q, tol)?;
    let c = 1600.0 * std::f64::consts::E;
    let rhs = sv_seq(q)?.scale(c).dilate(4).expect("dilate by 4");
    let mut verdicts = Vec::with_capacity(2);
    for part in [q.real_part(), q.imag_part()] {
        let lam = hermitian_eigen_ordered(&part)?;
        let mut acc = 0.0;
        let ces: Vec<f64> = lam
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                acc += v;
                acc / (k + 1) as f64
            })
            .collect();
        verdicts.push(check_log_submajor(&seq::mu_real(&ces), &rhs, tol));
    }
    let imag_part = verdicts.pop().expect("two parts");
    let real_part = verdicts.pop().expect("two parts");
    Ok(GeomEstimateReport {
        real_part,
        imag_part,
    })
}
