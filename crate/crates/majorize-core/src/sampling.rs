//! Seeded random generators for trials: complex Gaussian matrices, strictly
//! upper triangular quasi-nilpotent matrices, Haar-ish unitaries and random
//! nonincreasing sequences.

use num_complex::Complex64;
use rand::Rng;

use crate::seq::{mu_real, NonincreasingSeq};
use crate::spectral::DenseMatrix;

/// Standard normal via Box-Muller; keeps the dependency surface to `rand`.
pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.gen::<f64>();
        if u > 0.0 {
            let v: f64 = rng.gen::<f64>();
            return (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos();
        }
    }
}

pub fn standard_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// Dense matrix with independent standard complex Gaussian entries.
pub fn random_matrix<R: Rng>(rng: &mut R, dim: usize) -> DenseMatrix {
    let data = (0..dim * dim).map(|_| standard_complex(rng)).collect();
    DenseMatrix::with_limit(dim, data, usize::MAX).expect("generated matrix is valid")
}

/// Strictly upper triangular matrix of the same entry law; exactly
/// quasi-nilpotent by construction.
pub fn random_strict_upper<R: Rng>(rng: &mut R, dim: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(dim);
    for i in 0..dim {
        for j in i + 1..dim {
            m[(i, j)] = standard_complex(rng);
        }
    }
    m
}

/// Hermitian positive semidefinite matrix with the given eigenvalues in a
/// random orthonormal basis.
pub fn random_positive_with_spectrum<R: Rng>(
    rng: &mut R,
    values: &NonincreasingSeq,
) -> DenseMatrix {
    let u = random_unitary(rng, values.len());
    let d = DenseMatrix::diagonal(values.values());
    u.mul(&d).mul(&u.adjoint())
}

/// Matrix with the prescribed singular values and independent random
/// orthonormal bases on both sides.
pub fn random_with_singular_values<R: Rng>(rng: &mut R, values: &NonincreasingSeq) -> DenseMatrix {
    let u = random_unitary(rng, values.len());
    let v = random_unitary(rng, values.len());
    u.mul(&DenseMatrix::diagonal(values.values()))
        .mul(&v.adjoint())
}

/// Unitary from modified Gram-Schmidt on a complex Gaussian matrix.
#[allow(clippy::needless_range_loop)] // parallel column updates read clearest indexed
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> DenseMatrix {
    let g = random_matrix(rng, dim);
    let n = dim;
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let dot: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let c = cols[k][i];
                cols[j][i] -= dot * c;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        debug_assert!(norm > 1e-12, "Gaussian matrix numerically singular");
        for i in 0..n {
            cols[j][i] /= norm;
        }
    }
    let mut u = DenseMatrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            u[(i, j)] = cols[j][i];
        }
    }
    u
}

/// Random nonincreasing sequence with entries drawn log-uniformly from
/// `[lo, hi]`.
pub fn random_nonincreasing<R: Rng>(rng: &mut R, len: usize, lo: f64, hi: f64) -> NonincreasingSeq {
    assert!(0.0 < lo && lo <= hi);
    let raw: Vec<f64> = (0..len)
        .map(|_| {
            let u: f64 = rng.gen();
            lo * (hi / lo).powf(u)
        })
        .collect();
    mu_real(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_unitary(&mut rng, 9);
        let res = u
            .mul(&u.adjoint())
            .sub(&DenseMatrix::identity(9))
            .frobenius_norm();
        assert!(res < 1e-12);
    }

    #[test]
    fn positive_with_spectrum_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let spec = random_nonincreasing(&mut rng, 6, 1e-3, 1.0);
        let a = random_positive_with_spectrum(&mut rng, &spec);
        let sv = crate::spectral::sv_seq(&a).unwrap();
        for (s, t) in sv.values().iter().zip(spec.values()) {
            assert!((s - t).abs() < 1e-10 * (1.0 + t));
        }
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let a = random_matrix(&mut ChaCha8Rng::seed_from_u64(7), 5);
        let b = random_matrix(&mut ChaCha8Rng::seed_from_u64(7), 5);
        assert_eq!(a, b);
    }
}
