use majorize_core::sampling;
use majorize_core::spectral::{self, DenseMatrix};
use majorize_core::Tolerances;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let tol = Tolerances {
        log: 1e-9,
        ..Tolerances::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let trials = 4000;
    let mut worst_recon = 0f64;
    let mut fails = 0;
    for trial in 0..trials {
        let dim = rng.gen_range(2..=20);
        let kind = trial % 8;
        let t = match kind {
            // repeated eigenvalues: conjugated diagonal with few distinct values
            0 => {
                let mut vals = vec![Complex64::new(0.0, 0.0); dim];
                let distinct = rng.gen_range(1..=3.min(dim));
                let pool: Vec<Complex64> = (0..distinct)
                    .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                    .collect();
                for v in vals.iter_mut() {
                    *v = pool[rng.gen_range(0..distinct)];
                }
                let u = sampling::random_unitary(&mut rng, dim);
                let mut d = DenseMatrix::zeros(dim);
                for (k, v) in vals.iter().enumerate() {
                    d[(k, k)] = *v;
                }
                u.mul(&d).mul(&u.adjoint())
            }
            // Jordan-like: single eigenvalue plus superdiagonal, conjugated
            1 => {
                let lam = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let mut j = DenseMatrix::zeros(dim);
                for k in 0..dim {
                    j[(k, k)] = lam;
                    if k + 1 < dim {
                        j[(k, k + 1)] = Complex64::new(1.0, 0.0);
                    }
                }
                let u = sampling::random_unitary(&mut rng, dim);
                u.mul(&j).mul(&u.adjoint())
            }
            // unitary input
            2 => sampling::random_unitary(&mut rng, dim),
            // hermitian
            3 => sampling::random_matrix(&mut rng, dim).real_part(),
            // rank-deficient: outer product sums
            4 => {
                let r = rng.gen_range(1..=dim / 2 + 1);
                let a = sampling::random_matrix(&mut rng, dim);
                let mut m = DenseMatrix::zeros(dim);
                for i in 0..dim {
                    for j in 0..dim {
                        for k in 0..r {
                            let v = a[(i, k)] * a[(j, k)].conj();
                            m[(i, j)] += v;
                        }
                    }
                }
                m
            }
            // tiny scale
            5 => sampling::random_matrix(&mut rng, dim).scale(Complex64::new(1e-150, 0.0)),
            // huge scale
            6 => sampling::random_matrix(&mut rng, dim).scale(Complex64::new(1e120, 0.0)),
            // plain
            _ => sampling::random_matrix(&mut rng, dim),
        };
        match spectral::ringrose_decompose(&t) {
            Ok(split) => {
                let c = split.verify(&t).unwrap();
                let scale = t.frobenius_norm().max(f64::MIN_POSITIVE);
                worst_recon = worst_recon.max(c.recon_err / scale);
                if c.recon_err > 1e-10 * scale || c.qpart_spectral_radius > 1e-8 * scale {
                    fails += 1;
                    eprintln!("kind {kind} dim {dim}: recon {:.2e} rho {:.2e}", c.recon_err / scale, c.qpart_spectral_radius / scale);
                }
            }
            Err(e) => {
                fails += 1;
                eprintln!("kind {kind} dim {dim}: {e}");
            }
        }
        // weyl on everything except astronomically scaled ones (log prefix
        // sums overflow the f64 exp range there by design)
        if kind != 5 && kind != 6 {
            if !spectral::weyl_check(&t, &tol).unwrap().is_holds() {
                fails += 1;
                eprintln!("weyl failed: kind {kind} dim {dim}");
            }
        }
    }
    println!("{trials} structured trials, {fails} failures, worst recon {worst_recon:.3e}");
}
