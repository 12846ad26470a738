//! Deciders for the three submajorization orders on nonincreasing sequences
//! and randomized verifiers for the sequence-level sum inequalities.
//!
//! All deciders zero-pad the shorter input, mirroring the zero tail of a
//! finite-rank operator's singular values. Verdicts are tri-state: a bounded
//! witness search that exhausts its budget is `Inconclusive`, never a silent
//! pass or fail.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::Tolerances;
use crate::sampling;
use crate::seq::{self, NonincreasingSeq};
use crate::spectral::{self, DenseMatrix, SpectralError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderStatus {
    Holds,
    Fails,
    Inconclusive,
}

/// Tri-state outcome of an order or membership query.
///
/// `witness` carries the integer certificate of a `Holds` answer where one
/// exists (the dilation witness of uniform submajorization, the level of an
/// ideal membership). `failure_index` identifies the first violated prefix of
/// a `Fails` answer: for sum-based orders it is the number of summed entries,
/// for product-based orders the top index of the violated prefix product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub status: OrderStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_searched: Option<usize>,
}

impl OrderVerdict {
    pub fn holds() -> Self {
        OrderVerdict {
            status: OrderStatus::Holds,
            witness: None,
            failure_index: None,
            bound_searched: None,
        }
    }

    pub fn holds_with(witness: usize) -> Self {
        OrderVerdict {
            witness: Some(witness),
            ..OrderVerdict::holds()
        }
    }

    pub fn fails_at(index: usize) -> Self {
        OrderVerdict {
            status: OrderStatus::Fails,
            witness: None,
            failure_index: Some(index),
            bound_searched: None,
        }
    }

    pub fn inconclusive(bound: usize) -> Self {
        OrderVerdict {
            status: OrderStatus::Inconclusive,
            witness: None,
            failure_index: None,
            bound_searched: Some(bound),
        }
    }

    pub fn is_holds(&self) -> bool {
        self.status == OrderStatus::Holds
    }
}

fn padded(values: &[f64], len: usize) -> Vec<f64> {
    let mut out = values.to_vec();
    out.resize(len, 0.0);
    out
}

fn prefix_sums(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len() + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for &v in values {
        acc += v;
        out.push(acc);
    }
    out
}

/// Hardy-Littlewood submajorization: every prefix sum of `b` is dominated by
/// the corresponding prefix sum of `a`, within `sum_base` slack per summed
/// entry. `Fails` reports the length of the first violated prefix.
pub fn check_hl_submajor(
    b: &NonincreasingSeq,
    a: &NonincreasingSeq,
    tol: &Tolerances,
) -> OrderVerdict {
    let len = b.len().max(a.len());
    let sb = prefix_sums(&padded(b.values(), len));
    let sa = prefix_sums(&padded(a.values(), len));
    for n in 1..=len {
        if sb[n] > sa[n] + tol.sum_base * n as f64 {
            return OrderVerdict::fails_at(n);
        }
    }
    OrderVerdict::holds()
}

/// Logarithmic submajorization: every prefix product of `b` is dominated by
/// that of `a`, compared as natural-log sums with absolute slack `log`.
/// A zero prefix product on the left holds vacuously; a zero on the right
/// against a nonzero left fails. `Fails` reports the top index of the first
/// violated prefix product.
pub fn check_log_submajor(
    b: &NonincreasingSeq,
    a: &NonincreasingSeq,
    tol: &Tolerances,
) -> OrderVerdict {
    let len = b.len().max(a.len());
    let lb = seq::log_prefixes(&padded(b.values(), len), tol.prod_floor);
    let la = seq::log_prefixes(&padded(a.values(), len), tol.prod_floor);
    for n in 0..len {
        if lb[n] == f64::NEG_INFINITY {
            continue;
        }
        if la[n] == f64::NEG_INFINITY || lb[n] > la[n] + tol.log {
            return OrderVerdict::fails_at(n);
        }
    }
    OrderVerdict::holds()
}

/// Uniform submajorization: searches for the smallest witness `lambda` in
/// `1..=lambda_max` such that every shifted window satisfies
/// `sum_{k=lambda*m}^{n-1} b(k) <= sum_{k=m}^{n-1} a(k)` for `lambda*m < n`.
///
/// When no witness is found the answer is `Fails` if already the `m = 0` rows
/// (the Hardy-Littlewood comparison) fail, and otherwise an honest
/// `Inconclusive` carrying the exhausted bound.
pub fn check_uniform_submajor(
    b: &NonincreasingSeq,
    a: &NonincreasingSeq,
    lambda_max: usize,
    tol: &Tolerances,
) -> OrderVerdict {
    assert!(lambda_max >= 1, "lambda_max must be >= 1");
    let hl = check_hl_submajor(b, a, tol);
    if hl.status == OrderStatus::Fails {
        return OrderVerdict {
            status: OrderStatus::Fails,
            witness: None,
            failure_index: hl.failure_index,
            bound_searched: None,
        };
    }
    let len = b.len().max(a.len());
    let sb = prefix_sums(&padded(b.values(), len));
    let sa = prefix_sums(&padded(a.values(), len));
    'lambda: for lambda in 1..=lambda_max {
        let mut m = 0;
        while lambda * m < len {
            let lo = lambda * m;
            for n in (lo + 1)..=len {
                let left = sb[n] - sb[lo];
                let right = sa[n] - sa[m];
                if left > right + tol.sum_base * (n - lo) as f64 {
                    continue 'lambda;
                }
            }
            m += 1;
        }
        // the m = 0 row of any witness is the Hardy-Littlewood comparison
        debug_assert!(check_hl_submajor(b, a, tol).is_holds());
        return OrderVerdict::holds_with(lambda);
    }
    OrderVerdict::inconclusive(lambda_max)
}

#[derive(Debug, Error)]
pub enum OrderInputError {
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Per-link verdicts for the two submajorization chains relating a sum of
/// positive operators to its summands:
/// `A+B << mu(A)+mu(B) << 2 sigma_{1/2} mu(A+B)` for both the
/// Hardy-Littlewood and the uniform order.
#[derive(Debug, Clone, Serialize)]
pub struct MajSumChainReport {
    pub hl_left: OrderVerdict,
    pub hl_right: OrderVerdict,
    pub uniform_left: OrderVerdict,
    pub uniform_right: OrderVerdict,
}

impl MajSumChainReport {
    pub fn all_hold(&self) -> bool {
        self.hl_left.is_holds()
            && self.hl_right.is_holds()
            && self.uniform_left.is_holds()
            && self.uniform_right.is_holds()
    }
}

/// Checks both chains given the two already-computed sequences:
/// `sum` = mu(A+B), `mid` = mu(A)+mu(B), with the right end derived as
/// `2 sigma_{1/2}` of the padded `sum`.
pub fn check_maj_sum_links(
    sum: &NonincreasingSeq,
    mid: &NonincreasingSeq,
    lambda_max: usize,
    tol: &Tolerances,
) -> MajSumChainReport {
    let len = sum.len().max(mid.len());
    // pad to an even 2*len so the pair averages cover the whole prefix
    let padded_sum = NonincreasingSeq::new(padded(sum.values(), 2 * len)).expect("padded");
    let right = padded_sum.half_dilate().scale(2.0);
    MajSumChainReport {
        hl_left: check_hl_submajor(sum, mid, tol),
        hl_right: check_hl_submajor(mid, &right, tol),
        uniform_left: check_uniform_submajor(sum, mid, lambda_max, tol),
        uniform_right: check_uniform_submajor(mid, &right, lambda_max, tol),
    }
}

/// How the nonnegative sequences of `verify_maj_sum_chain` become positive
/// operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummandRealization {
    /// Commuting summands: plain diagonal matrices.
    Diagonal,
    /// Each spectrum placed in an independent random orthonormal basis.
    RandomRotation,
}

/// Realizes `a`, `b` as positive matrices (per the flag), computes
/// `mu(A+B)` spectrally and checks both sum chains.
pub fn verify_maj_sum_chain<R: Rng>(
    a: &NonincreasingSeq,
    b: &NonincreasingSeq,
    realization: SummandRealization,
    lambda_max: usize,
    tol: &Tolerances,
    rng: &mut R,
) -> Result<MajSumChainReport, SpectralError> {
    let len = a.len().max(b.len());
    let a_pad = NonincreasingSeq::new(padded(a.values(), len)).expect("padded");
    let b_pad = NonincreasingSeq::new(padded(b.values(), len)).expect("padded");
    let (ma, mb) = match realization {
        SummandRealization::Diagonal => (
            DenseMatrix::diagonal(a_pad.values()),
            DenseMatrix::diagonal(b_pad.values()),
        ),
        SummandRealization::RandomRotation => (
            sampling::random_positive_with_spectrum(rng, &a_pad),
            sampling::random_positive_with_spectrum(rng, &b_pad),
        ),
    };
    let mu_sum = spectral::sv_seq(&ma.add(&mb))?;
    let mid: Vec<f64> = a_pad
        .values()
        .iter()
        .zip(b_pad.values())
        .map(|(x, y)| x + y)
        .collect();
    let mid = NonincreasingSeq::new(mid).expect("sum of sorted is sorted");
    Ok(check_maj_sum_links(&mu_sum, &mid, lambda_max, tol))
}

/// Trial report for the dilation bound on singular values of sums:
/// `mu(A+B) <= sigma_2(mu(A) + mu(B))` entrywise on the first `dim` entries.
#[derive(Debug, Clone, Serialize)]
pub struct MuSumReport {
    pub trials: usize,
    pub dim: usize,
    pub violations: usize,
    /// Largest observed excess over the bound (absolute, after slack).
    pub worst_excess: f64,
}

/// Draws random matrix pairs and checks the dilation bound on each; the
/// expected violation count is zero up to singular-value tolerance.
pub fn verify_mu_sum<R: Rng>(
    noise_trials: usize,
    dim: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<MuSumReport, SpectralError> {
    if dim > crate::config::DESK_LIMIT {
        return Err(SpectralError::DeskLimit {
            dim,
            limit: crate::config::DESK_LIMIT,
        });
    }
    let mut violations = 0;
    let mut worst_excess: f64 = 0.0;
    for _ in 0..noise_trials {
        let a = sampling::random_matrix(rng, dim);
        let b = sampling::random_matrix(rng, dim);
        let mu_sum = spectral::sv_seq(&a.add(&b))?;
        let mu_a = spectral::sv_seq(&a)?;
        let mu_b = spectral::sv_seq(&b)?;
        let mid: Vec<f64> = mu_a
            .values()
            .iter()
            .zip(mu_b.values())
            .map(|(x, y)| x + y)
            .collect();
        let bound = NonincreasingSeq::new(mid)
            .expect("sum of sorted is sorted")
            .dilate(2)
            .expect("dilate by 2");
        let slack = tol.sv_rel * (mu_a.get_padded(0) + mu_b.get_padded(0));
        let mut bad = false;
        for (k, &v) in mu_sum.values().iter().enumerate().take(dim) {
            let excess = v - bound.get_padded(k);
            if excess > slack {
                bad = true;
                worst_excess = worst_excess.max(excess);
            }
        }
        if bad {
            violations += 1;
        }
    }
    Ok(MuSumReport {
        trials: noise_trials,
        dim,
        violations,
        worst_excess,
    })
}

/// Trial report for convex combinations of rearrangement-dominated terms
/// staying uniformly submajorized.
#[derive(Debug, Clone, Serialize)]
pub struct ConvexHullReport {
    pub trials: usize,
    pub holds: usize,
    pub inconclusive: usize,
    pub failures: usize,
}

/// Samples convex combinations `y = sum w_k z_k` with each `z_k` a randomly
/// permuted and damped copy of `x` (so `mu(z_k) <= mu(x)`), and checks that
/// `mu(y)` is uniformly submajorized by `x`.
pub fn verify_convex_hull_direction_a<R: Rng>(
    x: &NonincreasingSeq,
    trials: usize,
    lambda_max: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> ConvexHullReport {
    assert!(trials >= 1, "need at least one trial");
    let len = x.len();
    let mut holds = 0;
    let mut inconclusive = 0;
    let mut failures = 0;
    for _ in 0..trials {
        let terms = rng.gen_range(1..=4);
        let mut weights: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.01..1.0)).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let mut y = vec![0.0; len];
        for &w in &weights {
            let mut idx: Vec<usize> = (0..len).collect();
            for i in (1..len).rev() {
                idx.swap(i, rng.gen_range(0..=i));
            }
            for (slot, &src) in idx.iter().enumerate() {
                y[slot] += w * x.values()[src] * rng.gen_range(0.0..=1.0);
            }
        }
        match check_uniform_submajor(&seq::mu_real(&y), x, lambda_max, tol).status {
            OrderStatus::Holds => holds += 1,
            OrderStatus::Inconclusive => inconclusive += 1,
            OrderStatus::Fails => failures += 1,
        }
    }
    ConvexHullReport {
        trials,
        holds,
        inconclusive,
        failures,
    }
}

/// Verdict for `S x <<_log 4 (x (+) x)`.
pub fn verify_hardest_estimate(x: &NonincreasingSeq, tol: &Tolerances) -> OrderVerdict {
    let s = seq::s_transform(x, tol);
    let rhs = seq::direct_sum(x, x).scale(4.0);
    check_log_submajor(&s, &rhs, tol)
}

/// Report for the two direct-sum stability claims of log submajorization:
/// (a) `b1 (+) b2 <<_log a1 (+) a2` checked on sequences, and
/// (b) `mu(B1 + B2) <<_log 2 (a1 (+) a2)^{(+)2}` where the caller provides
/// `mu(B1 + B2)` computed from matrix realizations of `b1`, `b2`.
#[derive(Debug, Clone, Serialize)]
pub struct SumLessdotReport {
    pub part_a: OrderVerdict,
    pub part_b: Option<OrderVerdict>,
}

pub fn verify_sum_lessdot(
    b1: &NonincreasingSeq,
    a1: &NonincreasingSeq,
    b2: &NonincreasingSeq,
    a2: &NonincreasingSeq,
    mu_matrix_sum: Option<&NonincreasingSeq>,
    tol: &Tolerances,
) -> Result<SumLessdotReport, OrderInputError> {
    if !check_log_submajor(b1, a1, tol).is_holds() {
        return Err(OrderInputError::Precondition(
            "b1 is not log-submajorized by a1".into(),
        ));
    }
    if !check_log_submajor(b2, a2, tol).is_holds() {
        return Err(OrderInputError::Precondition(
            "b2 is not log-submajorized by a2".into(),
        ));
    }
    let a_sum = seq::direct_sum(a1, a2);
    let part_a = check_log_submajor(&seq::direct_sum(b1, b2), &a_sum, tol);
    let part_b = mu_matrix_sum.map(|m| {
        let rhs = a_sum.dilate(2).expect("dilate by 2").scale(2.0);
        check_log_submajor(m, &rhs, tol)
    });
    Ok(SumLessdotReport { part_a, part_b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::mu_real;
    use proptest::prelude::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn seq(values: &[f64]) -> NonincreasingSeq {
        NonincreasingSeq::new(values.to_vec()).unwrap()
    }

    #[test]
    fn hl_examples() {
        let v = check_hl_submajor(&seq(&[1.0, 1.0]), &seq(&[2.0, 0.0]), &tol());
        assert!(v.is_holds());
        let x = seq(&[0.9, 0.4, 0.1]);
        assert!(check_hl_submajor(&x, &x, &tol()).is_holds());
        let v = check_hl_submajor(&seq(&[2.0, 0.0]), &seq(&[1.0, 1.0]), &tol());
        assert_eq!(v.status, OrderStatus::Fails);
        assert_eq!(v.failure_index, Some(1));
    }

    #[test]
    fn log_examples() {
        let v = check_log_submajor(&seq(&[0.5, 0.5]), &seq(&[1.0, 0.25]), &tol());
        assert!(v.is_holds());
        let v = check_log_submajor(&seq(&[1.0, 0.125]), &seq(&[0.5, 0.5]), &tol());
        assert_eq!(v.status, OrderStatus::Fails);
        assert_eq!(v.failure_index, Some(0));
        let x = seq(&[0.8, 0.2]);
        assert!(check_log_submajor(&x, &x, &tol()).is_holds());
    }

    #[test]
    fn log_zero_conventions() {
        // zero prefix product on the left holds vacuously
        let v = check_log_submajor(&seq(&[1.0, 0.0]), &seq(&[1.0, 0.0]), &tol());
        assert!(v.is_holds());
        // zero on the right with nonzero left fails
        let v = check_log_submajor(&seq(&[0.5, 0.5]), &seq(&[1.0, 0.0]), &tol());
        assert_eq!(v.status, OrderStatus::Fails);
        assert_eq!(v.failure_index, Some(1));
    }

    #[test]
    fn uniform_examples() {
        let v = check_uniform_submajor(
            &seq(&[1.0, 1.0, 0.0, 0.0]),
            &seq(&[2.0, 2.0, 0.0, 0.0]),
            8,
            &tol(),
        );
        assert_eq!(v.witness, Some(1));
        // prefix sums (1,2,3,4) vs (1,1.9,2.0,2.1): the first violated
        // prefix is n = 2 (the n = 4 row also fails, 4 > 2.1)
        let v = check_uniform_submajor(
            &seq(&[1.0, 1.0, 1.0, 1.0]),
            &seq(&[1.0, 0.9, 0.1, 0.1]),
            8,
            &tol(),
        );
        assert_eq!(v.status, OrderStatus::Fails);
        assert_eq!(v.failure_index, Some(2));
        let x = seq(&[0.9, 0.4, 0.1]);
        let v = check_uniform_submajor(&x, &x, 8, &tol());
        assert_eq!(v.witness, Some(1));
    }

    #[test]
    fn uniform_inconclusive_when_hl_holds_but_no_witness() {
        // b has all its mass late; HL prefix sums still dominate, but the
        // shifted windows of any small witness do not.
        let b = seq(&[1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let a = seq(&[8.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let v = check_uniform_submajor(&b, &a, 4, &tol());
        assert_eq!(v.status, OrderStatus::Inconclusive);
        assert_eq!(v.bound_searched, Some(4));
    }

    #[test]
    fn hardest_estimate_examples() {
        let c = seq(&[0.4, 0.4, 0.4]);
        assert!(verify_hardest_estimate(&c, &tol()).is_holds());
        let x = seq(&[1.0, 0.25]);
        assert!(verify_hardest_estimate(&x, &tol()).is_holds());
        // frozen direct-formula spot check for (Sx)(1) with x = (1, 1/4)
        let s = seq::s_transform(&x, &tol());
        let expected = 0.25 * (1.0 + 0.5 * (0.25f64 / (0.25f64 * 0.25)).ln());
        assert!((s.values()[1] - expected).abs() < 1e-15);
        assert!((expected - 0.4232867951399863).abs() < 1e-15);
    }

    #[test]
    fn sum_lessdot_sequence_part() {
        let b1 = seq(&[0.5, 0.5]);
        let a1 = seq(&[1.0, 0.25]);
        let b2 = seq(&[1.0]);
        let a2 = seq(&[1.0]);
        let rep = verify_sum_lessdot(&b1, &a1, &b2, &a2, None, &tol()).unwrap();
        assert!(rep.part_a.is_holds());
        // reflexive case
        let rep = verify_sum_lessdot(&a1, &a1, &a2, &a2, None, &tol()).unwrap();
        assert!(rep.part_a.is_holds());
        // precondition violation is an input error
        assert!(verify_sum_lessdot(&a1, &b1, &b2, &a2, None, &tol()).is_err());
    }

    #[test]
    fn maj_sum_chain_diagonal_example() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        // a = b = (1, 0): mu(A+B) = (2, 0), mu(A)+mu(B) = (2, 0)
        let a = seq(&[1.0, 0.0]);
        let rep =
            verify_maj_sum_chain(&a, &a, SummandRealization::Diagonal, 8, &tol(), &mut rng)
                .unwrap();
        assert!(rep.all_hold(), "{rep:?}");
        // all-zero case
        let z = seq(&[0.0, 0.0]);
        let rep =
            verify_maj_sum_chain(&z, &z, SummandRealization::Diagonal, 8, &tol(), &mut rng)
                .unwrap();
        assert!(rep.all_hold());
        // rotated positive summands, random lengths
        for _ in 0..20 {
            let len = rng.gen_range(2..=12);
            let a = crate::sampling::random_nonincreasing(&mut rng, len, 1e-3, 1.0);
            let b = crate::sampling::random_nonincreasing(&mut rng, len, 1e-3, 1.0);
            let rep = verify_maj_sum_chain(
                &a,
                &b,
                SummandRealization::RandomRotation,
                8,
                &tol(),
                &mut rng,
            )
            .unwrap();
            assert!(rep.all_hold(), "{rep:?}");
        }
    }

    #[test]
    fn mu_sum_examples() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        // hand case: A = diag(1, 0), B = diag(0, 1): mu(A+B) = (1, 1) and
        // sigma_2(mu(A)+mu(B)) = (1, 1, 1, 1)
        let a = DenseMatrix::diagonal(&[1.0, 0.0]);
        let b = DenseMatrix::diagonal(&[0.0, 1.0]);
        let mu_sum = spectral::sv_seq(&a.add(&b)).unwrap();
        let bound = seq(&[1.0, 1.0]).dilate(2).unwrap();
        for (k, v) in mu_sum.values().iter().enumerate() {
            assert!(*v <= bound.get_padded(k) + 1e-12);
        }
        // zero matrices trivially satisfy the bound; randomized suite
        let rep = verify_mu_sum(200, 8, &mut rng, &tol()).unwrap();
        assert_eq!(rep.violations, 0, "{rep:?}");
        assert!(verify_mu_sum(1, 1000, &mut rng, &tol()).is_err());
    }

    #[test]
    fn convex_hull_direction_a_examples() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let x = seq(&[1.0, 0.5, 0.25, 0.0]);
        // single full-weight term with mu(z) = mu(x) holds with witness 1
        let v = check_uniform_submajor(&x, &x, 8, &tol());
        assert_eq!(v.witness, Some(1));
        // averaged damped rearrangements
        let rep = verify_convex_hull_direction_a(&x, 100, 64, &mut rng, &tol());
        assert_eq!(rep.failures, 0, "{rep:?}");
        assert_eq!(rep.inconclusive, 0, "{rep:?}");
        // longer randomized suite
        use crate::sampling::random_nonincreasing;
        let x = random_nonincreasing(&mut rng, 12, 1e-3, 1.0);
        let rep = verify_convex_hull_direction_a(&x, 200, 64, &mut rng, &tol());
        assert_eq!(rep.failures + rep.inconclusive, 0, "{rep:?}");
    }

    prop_compose! {
        fn nonincreasing(max_len: usize)
            (len in 1..=max_len)
            (raw in prop::collection::vec(0.0f64..1.0, len)) -> NonincreasingSeq
        {
            mu_real(&raw)
        }
    }

    proptest! {
        #[test]
        fn pointwise_domination_gives_all_three_orders(x in nonincreasing(24), damp in prop::collection::vec(0.0f64..1.0, 24)) {
            let b_vals: Vec<f64> = x.values().iter().zip(&damp).map(|(v, d)| v * d).collect();
            let b = mu_real(&b_vals);
            prop_assert!(check_hl_submajor(&b, &x, &tol()).is_holds());
            prop_assert!(check_log_submajor(&b, &x, &tol()).is_holds());
            let v = check_uniform_submajor(&b, &x, 8, &tol());
            prop_assert_eq!(v.witness, Some(1));
        }

        #[test]
        fn log_submajor_is_transitive(a in nonincreasing(16), damp1 in prop::collection::vec(0.0f64..1.0, 16), damp2 in prop::collection::vec(0.0f64..1.0, 16)) {
            let b_vals: Vec<f64> = a.values().iter().zip(&damp1).map(|(v, d)| v * d).collect();
            let b = mu_real(&b_vals);
            let c_vals: Vec<f64> = b.values().iter().zip(&damp2).map(|(v, d)| v * d).collect();
            let c = mu_real(&c_vals);
            prop_assert!(check_log_submajor(&b, &a, &tol()).is_holds());
            prop_assert!(check_log_submajor(&c, &b, &tol()).is_holds());
            prop_assert!(check_log_submajor(&c, &a, &tol()).is_holds());
        }

        #[test]
        fn uniform_holds_implies_hl_holds(b in nonincreasing(16), a in nonincreasing(16)) {
            let v = check_uniform_submajor(&b, &a, 8, &tol());
            if v.is_holds() {
                prop_assert!(check_hl_submajor(&b, &a, &tol()).is_holds());
            }
        }
    }
}
