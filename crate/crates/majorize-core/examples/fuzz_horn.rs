use majorize_core::sampling;
use majorize_core::seq::{self, NonincreasingSeq};
use majorize_core::spectral::{self};
use majorize_core::Tolerances;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut worst_eig = 0f64;
    let mut worst_excess = 0f64;
    let trials = 20000;
    let mut fails = 0;
    for trial in 0..trials {
        let dim = rng.gen_range(1..=24);
        // wide dynamic range
        let lo = 10f64.powf(rng.gen_range(-6.0..0.0));
        let hi = lo * 10f64.powf(rng.gen_range(0.0..6.0));
        let mut xv = sampling::random_nonincreasing(&mut rng, dim, lo, hi).values().to_vec();
        // occasional zero tail in x
        if dim >= 3 && rng.gen_bool(0.2) {
            let zeros = rng.gen_range(1..=dim / 2);
            for k in dim - zeros..dim { xv[k] = 0.0; }
        }
        let x = NonincreasingSeq::new(xv).unwrap();
        // y: damped moduli, sometimes exact ties with x, sometimes zeros
        let mut mods: Vec<f64> = x.values().iter().map(|v| {
            if rng.gen_bool(0.25) { *v } else { v * rng.gen_range(0.01..=1.0) }
        }).collect();
        if rng.gen_bool(0.3) {
            let zeros = rng.gen_range(1..=dim);
            for k in dim - zeros..dim { mods[k] = 0.0; }
        }
        let mods = seq::mu_real(&mods);
        let y: Vec<Complex64> = mods.values().iter().map(|&m| {
            if m == 0.0 { Complex64::new(0.0, 0.0) }
            else { Complex64::from_polar(m, rng.gen_range(0.0..std::f64::consts::TAU)) }
        }).collect();
        match spectral::construct_from_spectrum(&y, &x, &tol) {
            Ok(out) => {
                worst_eig = worst_eig.max(out.eigen_err / x.get_padded(0).max(1.0));
                worst_excess = worst_excess.max(out.sv_excess);
            }
            Err(e) => {
                fails += 1;
                if fails < 5 { eprintln!("trial {trial}: {e}"); }
            }
        }
    }
    println!("{trials} trials, {fails} failures, worst rel eigen err {worst_eig:.3e}, worst sv excess {worst_excess:.3e}");
}
