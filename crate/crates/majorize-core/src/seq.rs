//! Sequence domain: decreasing rearrangements and the linear and nonlinear
//! sequence transforms acting on finite truncations of nonincreasing
//! nonnegative sequences.
//!
//! Every operation works on the finite prefix it is given and never
//! extrapolates beyond the provided entries. Running products are always
//! accumulated as sums of natural logarithms; entries at or below the
//! configured floor are treated as exact zeros.

use num_complex::Complex64;
use thiserror::Error;

use crate::config::Tolerances;

/// Relative slack accepted when validating monotonicity of computed
/// transform outputs before clamping microscopic floating-point inversions.
const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum SeqError {
    #[error("sequence entry at index {0} is negative: {1}")]
    NegativeEntry(usize, f64),
    #[error("sequence increases at index {0}: {1} -> {2}")]
    NotNonincreasing(usize, f64, f64),
    #[error("sequence entry at index {0} is not finite")]
    NotFinite(usize),
    #[error("empty sequence not allowed here")]
    Empty,
    #[error("dilation factor must be >= 1")]
    ZeroDilation,
}

/// Finite truncation of a nonnegative nonincreasing real sequence.
///
/// This is the universal carrier for singular-value sequences and for the
/// rearranged-modulus sequences of eigenvalue lists.
#[derive(Debug, Clone, PartialEq)]
pub struct NonincreasingSeq {
    values: Vec<f64>,
}

impl NonincreasingSeq {
    /// Validates the invariant exactly: entries finite, nonnegative and
    /// nonincreasing. Empty sequences are permitted (the rearrangement of an
    /// empty list).
    pub fn new(values: Vec<f64>) -> Result<Self, SeqError> {
        for (k, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(SeqError::NotFinite(k));
            }
            if v < 0.0 {
                return Err(SeqError::NegativeEntry(k, v));
            }
            if k > 0 && values[k - 1] < v {
                return Err(SeqError::NotNonincreasing(k - 1, values[k - 1], v));
            }
        }
        Ok(NonincreasingSeq { values })
    }

    /// Accepts computed values whose monotonicity may be off by floating
    /// roundoff; inversions within `MONOTONE_SLACK` (relative) are clamped,
    /// anything larger is an error.
    fn from_computed(mut values: Vec<f64>) -> Result<Self, SeqError> {
        for k in 1..values.len() {
            let prev = values[k - 1];
            let cur = values[k];
            if cur > prev {
                if cur - prev <= MONOTONE_SLACK * cur.max(1e-300) {
                    values[k] = prev;
                } else {
                    return Err(SeqError::NotNonincreasing(k - 1, prev, cur));
                }
            }
        }
        NonincreasingSeq::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entry at `k`, or zero past the stored prefix. Zero-padding is the
    /// finite-truncation reading of a compact operator's singular values.
    pub fn get_padded(&self, k: usize) -> f64 {
        self.values.get(k).copied().unwrap_or(0.0)
    }

    /// Scales every entry by a nonnegative constant.
    pub fn scale(&self, c: f64) -> NonincreasingSeq {
        assert!(c >= 0.0 && c.is_finite(), "scale factor must be >= 0");
        NonincreasingSeq {
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// Repeats every entry `n` times; preserves monotonicity.
    pub fn dilate(&self, n: usize) -> Result<NonincreasingSeq, SeqError> {
        Ok(NonincreasingSeq {
            values: dilate_slice(&self.values, n)?,
        })
    }

    /// Averages consecutive pairs, padding odd lengths with one trailing zero.
    pub fn half_dilate(&self) -> NonincreasingSeq {
        NonincreasingSeq {
            values: half_dilate_slice(&self.values),
        }
    }

    pub fn as_real_seq(&self) -> RealSeq {
        RealSeq {
            values: self.values.clone(),
        }
    }
}

/// Finite truncation of an arbitrary real sequence (eigenvalue lists before
/// rearrangement, Cesaro outputs).
#[derive(Debug, Clone, PartialEq)]
pub struct RealSeq {
    values: Vec<f64>,
}

#[allow(clippy::len_without_is_empty)] // the invariant forbids emptiness
impl RealSeq {
    pub fn new(values: Vec<f64>) -> Result<Self, SeqError> {
        if values.is_empty() {
            return Err(SeqError::Empty);
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(SeqError::NotFinite(k));
        }
        Ok(RealSeq { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn dilate(&self, n: usize) -> Result<RealSeq, SeqError> {
        Ok(RealSeq {
            values: dilate_slice(&self.values, n)?,
        })
    }

    pub fn half_dilate(&self) -> RealSeq {
        RealSeq {
            values: half_dilate_slice(&self.values),
        }
    }
}

/// Decreasing rearrangement of the moduli of a complex list.
pub fn mu(xs: &[Complex64]) -> NonincreasingSeq {
    let mut moduli: Vec<f64> = xs.iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| b.partial_cmp(a).expect("finite moduli"));
    NonincreasingSeq { values: moduli }
}

/// Decreasing rearrangement of the absolute values of a real list.
pub fn mu_real(xs: &[f64]) -> NonincreasingSeq {
    let mut moduli: Vec<f64> = xs.iter().map(|v| v.abs()).collect();
    moduli.sort_by(|a, b| b.partial_cmp(a).expect("finite moduli"));
    NonincreasingSeq { values: moduli }
}

/// Running arithmetic mean: `(Cx)(k) = (x(0) + ... + x(k)) / (k + 1)`.
pub fn cesaro(x: &RealSeq) -> RealSeq {
    let mut out = Vec::with_capacity(x.len());
    let mut acc = 0.0;
    for (k, &v) in x.values.iter().enumerate() {
        acc += v;
        out.push(acc / (k + 1) as f64);
    }
    RealSeq { values: out }
}

/// Running arithmetic mean of a complex list (used on eigenvalue sequences).
pub fn cesaro_complex(xs: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(xs.len());
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &z) in xs.iter().enumerate() {
        acc += z;
        out.push(acc / (k + 1) as f64);
    }
    out
}

fn dilate_slice(values: &[f64], n: usize) -> Result<Vec<f64>, SeqError> {
    if n == 0 {
        return Err(SeqError::ZeroDilation);
    }
    let mut out = Vec::with_capacity(values.len() * n);
    for &v in values {
        out.extend(std::iter::repeat_n(v, n));
    }
    Ok(out)
}

fn half_dilate_slice(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len().div_ceil(2));
    let mut k = 0;
    while k < values.len() {
        let a = values[k];
        let b = if k + 1 < values.len() {
            values[k + 1]
        } else {
            0.0
        };
        out.push((a + b) / 2.0);
        k += 2;
    }
    out
}

/// Merge-and-rearrange of two nonincreasing sequences; the sequence model of
/// the direct sum of operators. Satisfies `x (+) x = dilate(x, 2)`.
pub fn direct_sum(x: &NonincreasingSeq, y: &NonincreasingSeq) -> NonincreasingSeq {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        if x.values[i] >= y.values[j] {
            out.push(x.values[i]);
            i += 1;
        } else {
            out.push(y.values[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&x.values[i..]);
    out.extend_from_slice(&y.values[j..]);
    NonincreasingSeq { values: out }
}

/// Natural logs of the entries with the zero floor applied; `-inf` marks an
/// exact zero. Prefix sums of this vector are the running log-products.
pub fn log_entries(values: &[f64], floor: f64) -> Vec<f64> {
    values
        .iter()
        .map(|&v| {
            if v <= floor {
                f64::NEG_INFINITY
            } else {
                v.ln()
            }
        })
        .collect()
}

/// Running sums of `log_entries`; entry `k` is `ln prod_{m<=k} x(m)`.
pub fn log_prefixes(values: &[f64], floor: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    for l in log_entries(values, floor) {
        acc += l;
        out.push(acc);
    }
    out
}

/// Entrywise correction of a nonincreasing sequence by its normalized
/// log-deficiency:
/// `(Sx)(k) = x(k) * (1 + (1/(k+1)) * ln(prod_{m<=k} x(m) / x(k)^{k+1}))`.
///
/// Entries that are zero (at or below the product floor) map to zero, the
/// continuous extension of the formula. The output is again nonincreasing
/// and dominates the input entrywise.
pub fn s_transform(x: &NonincreasingSeq, tol: &Tolerances) -> NonincreasingSeq {
    let logs = log_prefixes(x.values(), tol.prod_floor);
    let mut out = Vec::with_capacity(x.len());
    for (k, &v) in x.values().iter().enumerate() {
        if v <= tol.prod_floor {
            out.push(0.0);
            continue;
        }
        let deficiency = logs[k] - (k + 1) as f64 * v.ln();
        out.push(v * (1.0 + deficiency / (k + 1) as f64));
    }
    NonincreasingSeq::from_computed(out).expect("s transform preserves monotonicity")
}

/// Running geometric mean: `(Tx)(k) = (prod_{m<=k} x(m))^{1/(k+1)}`,
/// computed in the log domain. Zero entries propagate to the whole tail.
pub fn t_transform(x: &NonincreasingSeq, tol: &Tolerances) -> NonincreasingSeq {
    let logs = log_prefixes(x.values(), tol.prod_floor);
    let out: Vec<f64> = logs
        .iter()
        .enumerate()
        .map(|(k, &l)| {
            if l == f64::NEG_INFINITY {
                0.0
            } else {
                (l / (k + 1) as f64).exp()
            }
        })
        .collect();
    NonincreasingSeq::from_computed(out).expect("t transform preserves monotonicity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn seq(values: &[f64]) -> NonincreasingSeq {
        NonincreasingSeq::new(values.to_vec()).unwrap()
    }

    #[test]
    fn mu_sorts_moduli() {
        let out = mu_real(&[0.5, 0.1, 0.3]);
        assert_eq!(out.values(), &[0.5, 0.3, 0.1]);
        let out = mu_real(&[-2.0, 1.0]);
        assert_eq!(out.values(), &[2.0, 1.0]);
        let out = mu(&[
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 0.0),
        ]);
        assert_eq!(out.values(), &[1.0, 1.0, 0.0]);
    }

    #[test]
    fn mu_of_empty_is_empty() {
        assert!(mu(&[]).is_empty());
    }

    #[test]
    fn cesaro_examples() {
        let c = cesaro(&RealSeq::new(vec![1.0, 1.0, 1.0]).unwrap());
        assert_eq!(c.values(), &[1.0, 1.0, 1.0]);
        let c = cesaro(&RealSeq::new(vec![1.0, 0.0, 0.0]).unwrap());
        assert_eq!(c.values(), &[1.0, 0.5, 1.0 / 3.0]);
        let c = cesaro(&RealSeq::new(vec![4.0, 2.0, 0.0]).unwrap());
        assert_eq!(c.values(), &[4.0, 3.0, 2.0]);
    }

    #[test]
    fn dilate_examples() {
        let d = seq(&[1.0, 0.5]).dilate(2).unwrap();
        assert_eq!(d.values(), &[1.0, 1.0, 0.5, 0.5]);
        let x = seq(&[0.9, 0.3, 0.1]);
        assert_eq!(x.dilate(1).unwrap(), x);
        let d = seq(&[5.0]).dilate(3).unwrap();
        assert_eq!(d.values(), &[5.0, 5.0, 5.0]);
        assert_eq!(seq(&[1.0]).dilate(0), Err(SeqError::ZeroDilation));
    }

    #[test]
    fn half_dilate_examples() {
        let h = seq(&[4.0, 2.0, 2.0, 0.0]).half_dilate();
        assert_eq!(h.values(), &[3.0, 1.0]);
        let h = seq(&[7.0, 7.0]).half_dilate();
        assert_eq!(h.values(), &[7.0]);
        // odd length pads with a trailing zero
        let h = seq(&[1.0, 0.0, 0.0, 0.0]).half_dilate();
        assert_eq!(h.values(), &[0.5, 0.0]);
        let h = seq(&[1.0, 0.0, 0.0]).half_dilate();
        assert_eq!(h.values(), &[0.5, 0.0]);
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&seq(&[1.0, 0.5]), &seq(&[0.75]));
        assert_eq!(s.values(), &[1.0, 0.75, 0.5]);
        let x = seq(&[1.0, 0.25]);
        assert_eq!(direct_sum(&x, &x), x.dilate(2).unwrap());
        let s = direct_sum(&seq(&[1.0, 0.0]), &seq(&[0.0, 0.0]));
        assert_eq!(s.values(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn s_transform_constant_is_fixed_point() {
        let x = seq(&[0.7, 0.7, 0.7]);
        let s = s_transform(&x, &tol());
        for (a, b) in s.values().iter().zip(x.values()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn s_transform_direct_formula_value() {
        // x = (1, 1/e): (Sx)(1) = (1/e)(1 + ln(e)/2) = 1.5/e
        let e = std::f64::consts::E;
        let x = seq(&[1.0, 1.0 / e]);
        let s = s_transform(&x, &tol());
        assert!((s.values()[0] - 1.0).abs() < 1e-15);
        assert!((s.values()[1] - 1.5 / e).abs() < 1e-14);
    }

    #[test]
    fn s_transform_zero_convention() {
        let x = seq(&[1.0, 0.0]);
        let s = s_transform(&x, &tol());
        assert_eq!(s.values(), &[1.0, 0.0]);
    }

    #[test]
    fn t_transform_examples() {
        let t = t_transform(&seq(&[1.0, 0.25]), &tol());
        assert!((t.values()[0] - 1.0).abs() < 1e-15);
        assert!((t.values()[1] - 0.5).abs() < 1e-15);
        let t = t_transform(&seq(&[0.3, 0.3, 0.3]), &tol());
        for &v in t.values() {
            assert!((v - 0.3).abs() < 1e-14);
        }
        let t = t_transform(&seq(&[1.0, 0.0, 0.0]), &tol());
        assert_eq!(t.values(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn invalid_sequences_rejected() {
        assert!(NonincreasingSeq::new(vec![1.0, 2.0]).is_err());
        assert!(NonincreasingSeq::new(vec![-1.0]).is_err());
        assert!(NonincreasingSeq::new(vec![f64::NAN]).is_err());
        assert!(RealSeq::new(vec![]).is_err());
    }

    prop_compose! {
        fn nonincreasing_positive(max_len: usize)
            (len in 1..=max_len)
            (raw in prop::collection::vec(1e-6f64..1.0, len)) -> NonincreasingSeq
        {
            mu_real(&raw)
        }
    }

    proptest! {
        #[test]
        fn mu_is_idempotent(raw in prop::collection::vec(-10.0f64..10.0, 0..40)) {
            let once = mu_real(&raw);
            let twice = mu_real(once.values());
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn cesaro_preserves_nonincreasing_nonnegative(x in nonincreasing_positive(40)) {
            let c = cesaro(&x.as_real_seq());
            let as_seq = NonincreasingSeq::new(c.values().to_vec());
            prop_assert!(as_seq.is_ok());
        }

        #[test]
        fn dilate_composes(x in nonincreasing_positive(12), n in 1usize..4, m in 1usize..4) {
            let a = x.dilate(n * m).unwrap();
            let b = x.dilate(n).unwrap().dilate(m).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn s_transform_is_homogeneous(x in nonincreasing_positive(24), c in 0.1f64..10.0) {
            let lhs = s_transform(&x.scale(c), &tol());
            let rhs = s_transform(&x, &tol()).scale(c);
            for (a, b) in lhs.values().iter().zip(rhs.values()) {
                prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
            }
        }

        #[test]
        fn t_transform_sandwich(x in nonincreasing_positive(40), shift in 0usize..3) {
            // sigma_N T x <= T(sigma_N x) <= sigma_2N T x on the common prefix
            let n = 1usize << shift;
            let t = t_transform(&x, &tol());
            let left = t.dilate(n).unwrap();
            let mid = t_transform(&x.dilate(n).unwrap(), &tol());
            let right = t.dilate(2 * n).unwrap();
            let common = left.len().min(mid.len()).min(right.len());
            for k in 0..common {
                prop_assert!(left.values()[k] <= mid.values()[k] * (1.0 + 1e-12));
                prop_assert!(mid.values()[k] <= right.values()[k] * (1.0 + 1e-12));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        // the rearrangement-invariance of the transform output, on the full
        // thousand-case budget
        #[test]
        fn s_transform_nonincreasing_and_dominates(x in nonincreasing_positive(48)) {
            let s = s_transform(&x, &tol());
            // nonincreasing is enforced by the return type; domination:
            for (k, (&sv, &xv)) in s.values().iter().zip(x.values()).enumerate() {
                prop_assert!(sv >= xv * (1.0 - 1e-12), "index {}: {} < {}", k, sv, xv);
            }
        }
    }

    #[test]
    fn s_bounds_from_partial_products() {
        // For x = mu(x) > 0 and all pairs (n, k):
        //   k >= n: (Sx)(k) <= x(n) (1 + ln(prod_{m<=n} x(m) / x(n)^{n+1}) / (k+1))
        //   k <= n: (Sx)(k) <= x(k) (1 + ln(prod_{m<=n} x(m) / x(n)^{n+1}) / (k+1))
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let len = rng.gen_range(1..24);
            let raw: Vec<f64> = (0..len).map(|_| rng.gen_range(1e-4f64..1.0)).collect();
            let x = mu_real(&raw);
            let s = s_transform(&x, &tol());
            let logs = log_prefixes(x.values(), tol().prod_floor);
            #[allow(clippy::needless_range_loop)] // n drives two arrays and the weight
            for n in 0..len {
                let log_s = logs[n] - (n + 1) as f64 * x.values()[n].ln();
                for k in 0..len {
                    let bound_base = if k >= n { x.values()[n] } else { x.values()[k] };
                    let bound = bound_base * (1.0 + log_s / (k + 1) as f64);
                    assert!(
                        s.values()[k] <= bound * (1.0 + 1e-12),
                        "n={} k={}: {} > {}",
                        n,
                        k,
                        s.values()[k],
                        bound
                    );
                }
            }
        }
    }

    #[test]
    fn binomial_product_bound() {
        // prod_{k=0}^{2n} (1 + u/(k+1)) <= 2^{2n+u+2} in the log domain
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let u: f64 = rng.gen_range(1e-9f64..50.0);
            let n: usize = rng.gen_range(1..=200);
            let lhs: f64 = (0..=2 * n).map(|k| (1.0 + u / (k + 1) as f64).ln()).sum();
            let rhs = (2.0 * n as f64 + u + 2.0) * std::f64::consts::LN_2;
            assert!(lhs <= rhs + 1e-9, "u={u} n={n}: {lhs} > {rhs}");
        }
    }
}
