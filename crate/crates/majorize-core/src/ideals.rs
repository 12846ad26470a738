//! Finite models of principal ideals: membership through the dilation
//! witness form `mu(B) <= 2^l sigma_{2^l} mu(A)`, the logarithmic envelope,
//! geometric stability and commutator-subspace membership.
//!
//! Verdicts are honest about the finite horizon: a floating-point truncation
//! can certify `Holds` but never non-membership of the infinite object, so
//! the numeric paths answer `Inconclusive` when the witness search is
//! exhausted. Only the exact step-sequence path can return `Fails`, and it
//! does so with per-level symbolic witness indices.

use num_bigint::BigUint;
use serde::Serialize;

use crate::config::Tolerances;
use crate::dyadic::{self, DyadicStepSeq};
use crate::orders::{check_log_submajor, OrderVerdict};
use crate::seq::{self, NonincreasingSeq};
use crate::spectral::{self, DenseMatrix, SpectralError};

/// Entrywise slack for witness comparisons, relative to the bound.
const WITNESS_SLACK: f64 = 1e-12;

#[derive(Debug, Clone)]
pub enum GeneratorSeq {
    Numeric(NonincreasingSeq),
    Exact(DyadicStepSeq),
}

/// Finite model of the principal ideal generated by a nonincreasing
/// sequence: a witness search bound and an index horizon.
#[derive(Debug, Clone)]
pub struct PrincipalIdealModel {
    pub generator: GeneratorSeq,
    pub l_max: usize,
    pub truncation: usize,
}

impl PrincipalIdealModel {
    pub fn numeric(generator: NonincreasingSeq, l_max: usize, truncation: usize) -> Self {
        assert!(l_max >= 1, "witness bound must be >= 1");
        PrincipalIdealModel {
            generator: GeneratorSeq::Numeric(generator),
            l_max,
            truncation,
        }
    }

    pub fn exact(generator: DyadicStepSeq, l_max: usize) -> Self {
        assert!(l_max >= 1, "witness bound must be >= 1");
        PrincipalIdealModel {
            generator: GeneratorSeq::Exact(generator),
            l_max,
            truncation: usize::MAX,
        }
    }

    /// Generator entries as floats on the comparison horizon.
    fn generator_prefix(&self, len: usize) -> Vec<f64> {
        match &self.generator {
            GeneratorSeq::Numeric(g) => g.values().iter().copied().take(len).collect(),
            GeneratorSeq::Exact(step) => {
                let mut out = Vec::with_capacity(len);
                for k in 0..len {
                    match step.value_at(&BigUint::from(k)) {
                        Ok(v) => out.push(2f64.powf(v.to_f64())),
                        Err(_) => break,
                    }
                }
                out
            }
        }
    }

    fn generator_len(&self) -> usize {
        match &self.generator {
            GeneratorSeq::Numeric(g) => g.len(),
            GeneratorSeq::Exact(step) => step
                .horizon()
                .and_then(|h| h.try_into().ok())
                .unwrap_or(usize::MAX),
        }
    }
}

/// Smallest `l <= l_max` with `x <= 2^l sigma_{2^l}(generator)` entrywise on
/// the truncation; `Inconclusive` when the search bound is exhausted.
pub fn ideal_member(x: &NonincreasingSeq, ideal: &PrincipalIdealModel) -> OrderVerdict {
    let glen = ideal.generator_len();
    for l in 0..=ideal.l_max.min(48) {
        let scale = (1u64 << l) as f64;
        let horizon = x
            .len()
            .min(ideal.truncation)
            .min(glen.saturating_mul(1usize << l));
        let gen = ideal.generator_prefix(horizon.div_ceil(1 << l).min(glen));
        let ok = (0..horizon).all(|k| {
            let bound = scale * gen.get(k >> l).copied().unwrap_or(0.0);
            x.values()[k] <= bound * (1.0 + WITNESS_SLACK)
        });
        if ok {
            return OrderVerdict::holds_with(l);
        }
    }
    OrderVerdict::inconclusive(ideal.l_max)
}

/// Smallest `l <= l_max` with `b <<_log 2^l sigma_{2^l}(generator)` on the
/// common prefix; the logarithmic-envelope membership test for principal
/// models. Pointwise membership implies this with the same witness.
pub fn le_member(
    b: &NonincreasingSeq,
    ideal: &PrincipalIdealModel,
    tol: &Tolerances,
) -> OrderVerdict {
    let glen = ideal.generator_len();
    for l in 0..=ideal.l_max.min(48) {
        let scale = (1u64 << l) as f64;
        let horizon = b
            .len()
            .min(ideal.truncation)
            .min(glen.saturating_mul(1usize << l));
        if horizon == 0 {
            break;
        }
        let gen = ideal.generator_prefix(horizon.div_ceil(1 << l).min(glen));
        let bound: Vec<f64> = (0..horizon)
            .map(|k| scale * gen.get(k >> l).copied().unwrap_or(0.0))
            .collect();
        let b_trunc =
            NonincreasingSeq::new(b.values()[..horizon].to_vec()).expect("prefix stays sorted");
        let bound_seq = NonincreasingSeq::new(bound).expect("dilated generator stays sorted");
        if check_log_submajor(&b_trunc, &bound_seq, tol).is_holds() {
            return OrderVerdict::holds_with(l);
        }
    }
    OrderVerdict::inconclusive(ideal.l_max)
}

/// Per-level exact witnesses that the running geometric mean of an exact
/// generator escapes every dilation bound up to `l_max`.
#[derive(Debug, Clone, Serialize)]
pub struct GeomStabilityWitnesses {
    pub witnesses: Vec<(usize, String)>,
    pub missing_levels: Vec<usize>,
}

/// Geometric stability of the model: membership of the running geometric
/// mean of the generator.
///
/// Numeric generators run the float witness search. Exact generators search,
/// for every level `l <= l_max`, for an exact index at which the geometric
/// mean strictly exceeds the dilation bound; if one is found for every level
/// the answer is `Fails` (with symbolic indices in the companion report),
/// otherwise `Inconclusive`.
pub fn geom_stable_check(
    ideal: &PrincipalIdealModel,
    tol: &Tolerances,
) -> (OrderVerdict, Option<GeomStabilityWitnesses>) {
    match &ideal.generator {
        GeneratorSeq::Numeric(g) => {
            let t = seq::t_transform(g, tol);
            (ideal_member(&t, ideal), None)
        }
        GeneratorSeq::Exact(step) => {
            let mut witnesses = Vec::new();
            let mut missing = Vec::new();
            for l in 0..=ideal.l_max.min(20) {
                match exact_geom_violation(step, l as u32) {
                    Some(k) => witnesses.push((l, k.to_string())),
                    None => missing.push(l),
                }
            }
            let report = GeomStabilityWitnesses {
                witnesses,
                missing_levels: missing.clone(),
            };
            if missing.is_empty() {
                (
                    OrderVerdict {
                        status: crate::orders::OrderStatus::Fails,
                        witness: None,
                        failure_index: None,
                        bound_searched: Some(ideal.l_max),
                    },
                    Some(report),
                )
            } else {
                (OrderVerdict::inconclusive(ideal.l_max), Some(report))
            }
        }
    }
}

/// Exact index with `(T gen)(k) > 2^l (sigma_{2^l} gen)(k)`, if one exists
/// among the candidate indices derived from the generator's breakpoints
/// (each breakpoint and each breakpoint shifted up by the dilation). The
/// comparison is cross-multiplied by `k + 1` so huge candidates stay in
/// big-integer arithmetic.
fn exact_geom_violation(gen: &DyadicStepSeq, l: u32) -> Option<BigUint> {
    use num_bigint::BigInt;
    let horizon = gen.horizon().cloned();
    let mut candidates: Vec<BigUint> = Vec::new();
    for iv in gen.intervals() {
        candidates.push(iv.start.clone());
        candidates.push(&iv.start << l);
    }
    candidates.sort();
    candidates.dedup();
    for k in candidates {
        if k == BigUint::from(0u32) {
            continue;
        }
        if let Some(h) = &horizon {
            if &k >= h {
                continue;
            }
        }
        let shifted = &k >> l;
        let Ok(gval) = gen.value_at(&shifted) else {
            continue;
        };
        match (gval.as_integer(), gen.prefix_log2_bigint(&k)) {
            (Some(val), Ok(Some(prefix))) => {
                // (T gen)(k) > 2^l gen(k >> l)
                //   <=>  prefix(k) > (l + val) * (k + 1)
                let kp1 = BigInt::from(&k + BigUint::from(1u32));
                if prefix > (BigInt::from(l) + val) * kp1 {
                    return Some(k);
                }
            }
            (_, Ok(None)) => {}
            _ => {
                // rational exponents: fall back to the exact rational mean
                let (Ok(tval), Ok(gval)) = (gen.exact_t_log2(&k), gen.value_at(&shifted)) else {
                    continue;
                };
                let (dyadic::Log2Value::Finite(t), dyadic::Log2Value::Finite(g)) = (&tval, gval)
                else {
                    continue;
                };
                let bound = g + num_rational::BigRational::from_integer(BigInt::from(l));
                if *t > bound {
                    return Some(k);
                }
            }
        }
    }
    None
}

/// Commutator-subspace membership through the Cesaro mean of the eigenvalue
/// sequence.
pub fn commutator_member(
    t: &DenseMatrix,
    ideal: &PrincipalIdealModel,
) -> Result<OrderVerdict, SpectralError> {
    let eig = spectral::eigen_seq(t)?;
    let ces = seq::cesaro_complex(&eig);
    Ok(ideal_member(&seq::mu(&ces), ideal))
}
