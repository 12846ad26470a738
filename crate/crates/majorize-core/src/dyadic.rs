//! Exact piecewise-constant sequences over big-integer index intervals with
//! values `2^q`, `q` a big rational (or exact zero), and the certified
//! verification chains for the tower-sequence counterexample.
//!
//! Nothing in this module touches floating point. Products over
//! astronomically long index ranges are interval sums of `length * log2`;
//! harmonic sums are enclosed between integral bounds reduced to integer
//! multiples of `ln 2`, itself enclosed by `6931/10000 < ln 2 < 6932/10000`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DyadicError {
    #[error("index {0} is beyond the sequence horizon")]
    BeyondHorizon(String),
    #[error("invalid interval structure: {0}")]
    BadIntervals(String),
    #[error("operation needs integer log2 exponents, found {0}")]
    FractionalExponent(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
}

/// The base-2 logarithm of a sequence value: an exact rational, or negative
/// infinity for an exact zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Log2Value {
    NegInf,
    Finite(BigRational),
}

impl Log2Value {
    pub fn from_int(v: i64) -> Self {
        Log2Value::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Log2Value::Finite(BigRational::from_integer(v))
    }

    pub fn is_zero_value(&self) -> bool {
        matches!(self, Log2Value::NegInf)
    }

    /// The exponent as a big integer when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Log2Value::NegInf => None,
            Log2Value::Finite(q) if q.denom().is_one() => Some(q.numer().clone()),
            Log2Value::Finite(_) => None,
        }
    }

    /// Approximate float value of the exponent (test bridging only).
    pub fn to_f64(&self) -> f64 {
        match self {
            Log2Value::NegInf => f64::NEG_INFINITY,
            Log2Value::Finite(q) => {
                q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
            }
        }
    }
}

impl std::fmt::Display for Log2Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Log2Value::NegInf => write!(f, "-inf"),
            Log2Value::Finite(q) => write!(f, "{q}"),
        }
    }
}

/// One constant piece: indices in `[start, end)` (with `end = None` meaning
/// unbounded) all carry the value `2^log2`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepInterval {
    pub start: BigUint,
    pub end: Option<BigUint>,
    pub log2: Log2Value,
}

/// Exact nonincreasing step sequence over `[0, horizon)`; conceptually
/// infinite when the last interval is unbounded.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicStepSeq {
    intervals: Vec<StepInterval>,
}

impl DyadicStepSeq {
    pub fn new(intervals: Vec<StepInterval>) -> Result<Self, DyadicError> {
        if intervals.is_empty() {
            return Err(DyadicError::BadIntervals("no intervals".into()));
        }
        if !intervals[0].start.is_zero() {
            return Err(DyadicError::BadIntervals(
                "first interval must start at 0".into(),
            ));
        }
        for (i, iv) in intervals.iter().enumerate() {
            if let Some(end) = &iv.end {
                if end <= &iv.start {
                    return Err(DyadicError::BadIntervals(format!("interval {i} is empty")));
                }
            } else if i + 1 != intervals.len() {
                return Err(DyadicError::BadIntervals(format!(
                    "unbounded interval {i} is not last"
                )));
            }
            if i + 1 < intervals.len() {
                let end = iv.end.as_ref().ok_or_else(|| {
                    DyadicError::BadIntervals(format!("interval {i} lacks an end"))
                })?;
                if end != &intervals[i + 1].start {
                    return Err(DyadicError::BadIntervals(format!(
                        "gap between intervals {i} and {}",
                        i + 1
                    )));
                }
                if intervals[i + 1].log2 > iv.log2 {
                    return Err(DyadicError::BadIntervals(format!(
                        "log2 values increase at interval {}",
                        i + 1
                    )));
                }
            }
        }
        Ok(DyadicStepSeq { intervals })
    }

    /// The all-zero sequence on `[0, inf)`.
    pub fn zero() -> Self {
        DyadicStepSeq {
            intervals: vec![StepInterval {
                start: BigUint::zero(),
                end: None,
                log2: Log2Value::NegInf,
            }],
        }
    }

    /// Constant sequence `2^q` on `[0, inf)`.
    pub fn constant(log2: Log2Value) -> Self {
        DyadicStepSeq {
            intervals: vec![StepInterval {
                start: BigUint::zero(),
                end: None,
                log2,
            }],
        }
    }

    pub fn intervals(&self) -> &[StepInterval] {
        &self.intervals
    }

    /// Finite horizon, or `None` when the sequence is conceptually infinite.
    pub fn horizon(&self) -> Option<&BigUint> {
        self.intervals.last().and_then(|iv| iv.end.as_ref())
    }

    pub fn value_at(&self, k: &BigUint) -> Result<&Log2Value, DyadicError> {
        let pos = self.intervals.partition_point(|iv| &iv.start <= k);
        if pos == 0 {
            return Err(DyadicError::BadIntervals("no covering interval".into()));
        }
        let iv = &self.intervals[pos - 1];
        match &iv.end {
            Some(end) if k >= end => Err(DyadicError::BeyondHorizon(k.to_string())),
            _ => Ok(&iv.log2),
        }
    }

    /// Repeats every entry `2^l` times: interval endpoints shift left by `l`.
    pub fn dilate_pow2(&self, l: u32) -> Self {
        DyadicStepSeq {
            intervals: self
                .intervals
                .iter()
                .map(|iv| StepInterval {
                    start: &iv.start << l,
                    end: iv.end.as_ref().map(|e| e << l),
                    log2: iv.log2.clone(),
                })
                .collect(),
        }
    }

    /// Multiplies every value by `2^l`: adds `l` to the exponents.
    pub fn scale_pow2(&self, l: i64) -> Self {
        let shift = BigRational::from_integer(BigInt::from(l));
        DyadicStepSeq {
            intervals: self
                .intervals
                .iter()
                .map(|iv| StepInterval {
                    start: iv.start.clone(),
                    end: iv.end.clone(),
                    log2: match &iv.log2 {
                        Log2Value::NegInf => Log2Value::NegInf,
                        Log2Value::Finite(q) => Log2Value::Finite(q + &shift),
                    },
                })
                .collect(),
        }
    }

    /// Entrywise integer power `x -> x^p`, `p >= 1`: exponents scale by `p`.
    pub fn pow(&self, p: u32) -> Result<Self, DyadicError> {
        if p == 0 {
            return Err(DyadicError::Precondition("power must be >= 1".into()));
        }
        let factor = BigRational::from_integer(BigInt::from(p));
        Ok(DyadicStepSeq {
            intervals: self
                .intervals
                .iter()
                .map(|iv| StepInterval {
                    start: iv.start.clone(),
                    end: iv.end.clone(),
                    log2: match &iv.log2 {
                        Log2Value::NegInf => Log2Value::NegInf,
                        Log2Value::Finite(q) => Log2Value::Finite(q * &factor),
                    },
                })
                .collect(),
        })
    }

    /// Replaces everything at or past `point` with exact zeros, making the
    /// sequence conceptually infinite.
    pub fn zero_from(&self, point: &BigUint) -> Result<Self, DyadicError> {
        if point.is_zero() {
            return Ok(DyadicStepSeq::zero());
        }
        let mut intervals = Vec::new();
        for iv in &self.intervals {
            if &iv.start >= point {
                break;
            }
            let mut trimmed = iv.clone();
            match &trimmed.end {
                Some(end) if end > point => trimmed.end = Some(point.clone()),
                None => trimmed.end = Some(point.clone()),
                _ => {}
            }
            intervals.push(trimmed);
        }
        intervals.push(StepInterval {
            start: point.clone(),
            end: None,
            log2: Log2Value::NegInf,
        });
        DyadicStepSeq::new(intervals)
    }

    /// Pointwise maximum on the common domain.
    pub fn sup(&self, other: &DyadicStepSeq) -> Result<DyadicStepSeq, DyadicError> {
        let horizon = match (self.horizon(), other.horizon()) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        };
        let mut starts: Vec<BigUint> = Vec::new();
        for iv in self.intervals.iter().chain(&other.intervals) {
            if horizon.as_ref().is_none_or(|h| &iv.start < h) {
                starts.push(iv.start.clone());
            }
        }
        starts.sort();
        starts.dedup();
        let mut intervals: Vec<StepInterval> = Vec::new();
        for (i, s) in starts.iter().enumerate() {
            let v = self.value_at(s)?.max(other.value_at(s)?).clone();
            let end = if i + 1 < starts.len() {
                Some(starts[i + 1].clone())
            } else {
                horizon.clone()
            };
            match intervals.last_mut() {
                Some(last) if last.log2 == v => last.end = end,
                _ => intervals.push(StepInterval {
                    start: s.clone(),
                    end,
                    log2: v,
                }),
            }
        }
        DyadicStepSeq::new(intervals)
    }

    /// Interval starts strictly below `hi`.
    pub fn breakpoints_within(&self, hi: &BigUint) -> Vec<BigUint> {
        self.intervals
            .iter()
            .map(|iv| iv.start.clone())
            .filter(|s| s < hi)
            .collect()
    }

    /// `log2 prod_{m=0}^{k} x(m)` as an exact integer; `None` when the
    /// product is zero. Requires integer exponents. Interval lengths only
    /// ever multiply small exponents, so this stays near-linear even for
    /// megabit indices.
    pub fn prefix_log2_bigint(&self, k: &BigUint) -> Result<Option<BigInt>, DyadicError> {
        let upto = k + BigUint::one();
        self.value_at(k)?;
        let mut acc = BigInt::zero();
        for iv in &self.intervals {
            if iv.start >= upto {
                break;
            }
            let covered_end = match &iv.end {
                Some(end) => end.min(&upto).clone(),
                None => upto.clone(),
            };
            let len = BigInt::from(covered_end - &iv.start);
            match &iv.log2 {
                Log2Value::NegInf => return Ok(None),
                Log2Value::Finite(q) => {
                    let e = iv
                        .log2
                        .as_integer()
                        .ok_or_else(|| DyadicError::FractionalExponent(q.to_string()))?;
                    acc += len * e;
                }
            }
        }
        Ok(Some(acc))
    }

    /// `log2 prod_{m=0}^{k} x(m)` as an exact rational, or the zero marker.
    pub fn exact_prefix_log2(&self, k: &BigUint) -> Result<Log2Value, DyadicError> {
        let upto = k + BigUint::one();
        self.value_at(k)?;
        let mut acc = BigRational::zero();
        for iv in &self.intervals {
            if iv.start >= upto {
                break;
            }
            let covered_end = match &iv.end {
                Some(end) => end.min(&upto).clone(),
                None => upto.clone(),
            };
            let len = BigRational::from_integer(BigInt::from(covered_end - &iv.start));
            match &iv.log2 {
                Log2Value::NegInf => return Ok(Log2Value::NegInf),
                Log2Value::Finite(q) => acc += len * q,
            }
        }
        Ok(Log2Value::Finite(acc))
    }

    /// `log2 (Tx)(k) = prefix_log2(k) / (k+1)` exactly.
    pub fn exact_t_log2(&self, k: &BigUint) -> Result<Log2Value, DyadicError> {
        match self.exact_prefix_log2(k)? {
            Log2Value::NegInf => Ok(Log2Value::NegInf),
            Log2Value::Finite(p) => {
                let kp1 = BigRational::from_integer(BigInt::from(k + BigUint::one()));
                Ok(Log2Value::Finite(p / kp1))
            }
        }
    }
}

/// Unary exact operations, dispatched for the command-line surface.
#[derive(Debug, Clone, Copy)]
pub enum ExactOp {
    DilatePow2(u32),
    ScalePow2(i64),
    Pow(u32),
}

pub fn exact_ops(x: &DyadicStepSeq, op: ExactOp) -> Result<DyadicStepSeq, DyadicError> {
    match op {
        ExactOp::DilatePow2(l) => Ok(x.dilate_pow2(l)),
        ExactOp::ScalePow2(l) => Ok(x.scale_pow2(l)),
        ExactOp::Pow(p) => x.pow(p),
    }
}

fn pow2_biguint(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Largest tower level kept within a 16 MiB big-integer budget.
const TOWER_N_CAP: u32 = 9;

fn check_tower_cap(n: u32) -> Result<(), DyadicError> {
    if n > TOWER_N_CAP {
        return Err(DyadicError::CapExceeded(format!(
            "tower level {n} exceeds the supported maximum {TOWER_N_CAP}"
        )));
    }
    Ok(())
}

/// `gamma_n = 2^{3n + 2^{3n}}`.
pub fn gamma(n: u32) -> Result<BigUint, DyadicError> {
    check_tower_cap(n)?;
    Ok(pow2_biguint(3 * n as usize + (1usize << (3 * n))))
}

/// The tower generator: value `2^{-2^{3n}}` on `[2^{2^{3(n-1)}}, 2^{2^{3n}})`
/// for `n >= 1` and `2^{-1}` on `[0, 2)`; exact up to index `2^{2^{3 n_max}}`.
pub fn tower_sequence(n_max: u32) -> Result<DyadicStepSeq, DyadicError> {
    check_tower_cap(n_max)?;
    let mut intervals = vec![StepInterval {
        start: BigUint::zero(),
        end: Some(pow2_biguint(2usize.pow(0))),
        log2: Log2Value::from_int(-1),
    }];
    for n in 1..=n_max {
        intervals.push(StepInterval {
            start: pow2_biguint(1usize << (3 * (n as usize - 1))),
            end: Some(pow2_biguint(1usize << (3 * n as usize))),
            log2: Log2Value::from_bigint(-BigInt::from(pow2_biguint(3 * n as usize))),
        });
    }
    DyadicStepSeq::new(intervals)
}

/// The vanishing companion: value `2^{-2^{3(n+1)}}` on
/// `[gamma_{n-1}, gamma_n)` with `gamma_{-1} = 0`; exact up to
/// `gamma_{n_max}`.
pub fn a0_sequence(n_max: u32) -> Result<DyadicStepSeq, DyadicError> {
    check_tower_cap(n_max)?;
    let mut intervals = Vec::new();
    let mut start = BigUint::zero();
    for n in 0..=n_max {
        let end = gamma(n)?;
        intervals.push(StepInterval {
            start: start.clone(),
            end: Some(end.clone()),
            log2: Log2Value::from_bigint(-BigInt::from(pow2_biguint(3 * (n as usize + 1)))),
        });
        start = end;
    }
    DyadicStepSeq::new(intervals)
}

/// Decides `2^lhs <= sum of 2^{e_i}` exactly. Terms never need more than a
/// few carries: after merging equal exponents pairwise the bit positions are
/// distinct, and a sum of distinct powers of two reaches `2^e` exactly when
/// its top bit does.
pub fn le_sum_of_powers(lhs: &Log2Value, terms: &[&Log2Value]) -> Result<bool, DyadicError> {
    let q = match lhs {
        Log2Value::NegInf => return Ok(true),
        Log2Value::Finite(q) => q,
    };
    let finite: Vec<&BigRational> = terms
        .iter()
        .filter_map(|t| match t {
            Log2Value::NegInf => None,
            Log2Value::Finite(f) => Some(f),
        })
        .collect();
    if finite.is_empty() {
        return Ok(false);
    }
    if finite.iter().any(|f| *f >= q) {
        return Ok(true);
    }
    // every term is strictly smaller: resolve carries on integer exponents
    let mut exps: Vec<BigInt> = Vec::with_capacity(finite.len());
    for f in &finite {
        if f.denom().is_one() {
            exps.push(f.numer().clone());
        } else {
            return Err(DyadicError::FractionalExponent(f.to_string()));
        }
    }
    loop {
        exps.sort();
        let mut merged = false;
        for i in 0..exps.len().saturating_sub(1) {
            if exps[i] == exps[i + 1] {
                let bumped = &exps[i] + 1;
                exps.remove(i + 1);
                exps[i] = bumped;
                merged = true;
                break;
            }
        }
        if !merged {
            break;
        }
    }
    let top = exps.last().expect("nonempty").clone();
    let top_rat = BigRational::from_integer(top.clone());
    if top_rat >= *q {
        return Ok(true);
    }
    // sum < 2^{top+1}; decide when the threshold clears that too
    let next = BigRational::from_integer(top + 1);
    if next <= *q {
        return Ok(false);
    }
    Err(DyadicError::FractionalExponent(q.to_string()))
}

/// Exact entrywise comparison `b <= a` at every interval breakpoint below
/// `hi`. Both sides are constant between breakpoints, so this is a complete
/// check on `[0, hi)`. Returns the first violating index if any.
pub fn first_pointwise_violation(
    b: &DyadicStepSeq,
    a: &DyadicStepSeq,
    hi: &BigUint,
) -> Result<Option<BigUint>, DyadicError> {
    let mut points = b.breakpoints_within(hi);
    points.extend(a.breakpoints_within(hi));
    points.sort();
    points.dedup();
    for k in points {
        if b.value_at(&k)? > a.value_at(&k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Exact prefix-product comparison `b <<_log a` on `[0, hi)`. The difference
/// of prefix log-sums is piecewise linear in the index, so checking both
/// ends of every piece is a complete check, not a sample.
pub fn first_log_submajor_violation(
    b: &DyadicStepSeq,
    a: &DyadicStepSeq,
    hi: &BigUint,
) -> Result<Option<BigUint>, DyadicError> {
    let one = BigUint::one();
    let mut points: Vec<BigUint> = Vec::new();
    for s in b
        .breakpoints_within(hi)
        .into_iter()
        .chain(a.breakpoints_within(hi))
    {
        points.push(s.clone());
        if s > one {
            points.push(s - &one);
        }
    }
    points.push(hi - &one);
    points.sort();
    points.dedup();
    for k in points {
        let pb = b.exact_prefix_log2(&k)?;
        let pa = a.exact_prefix_log2(&k)?;
        match (pb, pa) {
            (Log2Value::NegInf, _) => {}
            (Log2Value::Finite(_), Log2Value::NegInf) => return Ok(Some(k)),
            (Log2Value::Finite(x), Log2Value::Finite(y)) => {
                if x > y {
                    return Ok(Some(k));
                }
            }
        }
    }
    Ok(None)
}

/// Exact rational enclosure `lower <= value <= upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedBound {
    lower: BigRational,
    upper: BigRational,
}

impl CertifiedBound {
    pub fn new(lower: BigRational, upper: BigRational) -> Result<Self, DyadicError> {
        if lower > upper {
            return Err(DyadicError::Precondition(format!(
                "bound is empty: {lower} > {upper}"
            )));
        }
        Ok(CertifiedBound { lower, upper })
    }

    pub fn lower(&self) -> &BigRational {
        &self.lower
    }

    pub fn upper(&self) -> &BigRational {
        &self.upper
    }
}

/// `6931/10000 < ln 2 < 6932/10000`.
pub fn ln2_enclosure() -> CertifiedBound {
    CertifiedBound {
        lower: BigRational::new(BigInt::from(6931), BigInt::from(10000)),
        upper: BigRational::new(BigInt::from(6932), BigInt::from(10000)),
    }
}

/// Largest `e >= 0` with `q * 2^e <= p`; requires `p >= q >= 1`.
pub fn floor_log2_ratio(p: &BigUint, q: &BigUint) -> Result<u64, DyadicError> {
    if q.is_zero() || p < q {
        return Err(DyadicError::Precondition("need p >= q >= 1".into()));
    }
    let mut e = p.bits() - q.bits();
    while (q << (e + 1)) <= *p {
        e += 1;
    }
    while e > 0 && (q << e) > *p {
        e -= 1;
    }
    Ok(e)
}

/// Smallest `e >= 0` with `p <= q * 2^e`; requires `p >= q >= 1`.
pub fn ceil_log2_ratio(p: &BigUint, q: &BigUint) -> Result<u64, DyadicError> {
    let e = floor_log2_ratio(p, q)?;
    if (q << e) == *p {
        Ok(e)
    } else {
        Ok(e + 1)
    }
}

/// Certified enclosure of the harmonic sum `sum_{m=a}^{b-1} 1/(m+1)` via the
/// integral bounds `ln((b+1)/(a+1)) <= sum <= ln(b/a)`, with the logarithms
/// relaxed to whole multiples of the `ln 2` enclosure.
pub fn harmonic_sum_enclosure(a: &BigUint, b: &BigUint) -> Result<CertifiedBound, DyadicError> {
    if b <= a {
        return Err(DyadicError::Precondition("need b > a".into()));
    }
    let one = BigUint::one();
    let ln2 = ln2_enclosure();
    let lo_exp = floor_log2_ratio(&(b + &one), &(a + &one))?;
    let hi_exp = ceil_log2_ratio(b, a)?;
    let lower = BigRational::from_integer(BigInt::from(lo_exp)) * ln2.lower;
    let upper = BigRational::from_integer(BigInt::from(hi_exp)) * ln2.upper;
    CertifiedBound::new(lower, upper)
}

#[derive(Debug, Clone, Serialize)]
pub struct TAuxSample {
    pub k: String,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TAuxReport {
    pub n: u32,
    pub samples: Vec<TAuxSample>,
    pub pass: bool,
}

/// Exact two-sided check of the running-geometric-mean enclosure on the
/// tower: for `k` in `[2^{2^{3n}}, 2^{2^{3(n+1)}})`,
/// `7 gamma_n / (k+1) <= 2^{3(n+1)} + log2 (T mu)(k) <= 1 + 7 gamma_n / (k+1)`,
/// verified after clearing denominators so every comparison is big-integer.
pub fn verify_t_aux(n: u32, ks: &[BigUint]) -> Result<TAuxReport, DyadicError> {
    check_tower_cap(n + 1)?;
    let tower = tower_sequence(n + 1)?;
    let g = BigInt::from(gamma(n)?);
    let range_lo = pow2_biguint(1usize << (3 * n as usize));
    let range_hi = pow2_biguint(1usize << (3 * (n as usize + 1)));
    let mut samples = Vec::with_capacity(ks.len());
    let mut pass = true;
    for k in ks {
        if k < &range_lo || k >= &range_hi {
            return Err(DyadicError::Precondition(format!(
                "k = {k} outside [2^(2^(3n)), 2^(2^(3(n+1))))"
            )));
        }
        let prefix = tower
            .prefix_log2_bigint(k)?
            .expect("tower has no zero entries");
        let kp1 = BigInt::from(k + BigUint::one());
        let mid = (&kp1 << (3 * (n + 1) as usize)) + &prefix;
        let seven_gamma = 7 * &g;
        let lower_ok = seven_gamma <= mid;
        let upper_ok = mid <= &kp1 + &seven_gamma;
        pass &= lower_ok && upper_ok;
        samples.push(TAuxSample {
            k: k.to_string(),
            lower_ok,
            upper_ok,
        });
    }
    Ok(TAuxReport { n, samples, pass })
}

#[derive(Debug, Clone, Serialize)]
pub struct TMainReport {
    pub l: u32,
    pub n: u32,
    /// Certified lower bound for the harmonic sum over
    /// `[2^{2^{3n}}, gamma_n)`, as an exact rational string.
    pub harmonic_lower: String,
    /// The harmonic lower bound dominates `n`.
    pub harmonic_lower_at_least_n: bool,
    /// Every factor below the harmonic range is at least 1 (tower values on
    /// the range are no smaller than `2^{-2^{3n}}`).
    pub early_factors_ok: bool,
    /// Exact enclosure checks pinning the left exponent from below and the
    /// right exponent from above at the witness point `gamma_n - 1`.
    pub left_exponent_ok: bool,
    pub right_exponent_ok: bool,
    /// The stated integer reduction `7n >= l + 1 + 7*2^l`.
    pub integer_inequality_ok: bool,
    /// Strict rational form `7 * harmonic_lower > l + 1 + 7*2^l`, which
    /// certifies strict failure of the dilation inequality at the witness.
    pub strict_margin_ok: bool,
    /// All chain links verified: the inequality
    /// `T^2 mu <= 2^l sigma_{2^l} T mu` is certified to fail at
    /// `gamma_n - 1`.
    pub certified: bool,
    pub witness_index: String,
}

/// Certifies that the once-more-averaged tower escapes every `2^l`-dilation
/// bound: the chain lower-bounds `(T^2 mu)(gamma_n - 1)` through certified
/// harmonic enclosures and upper-bounds `(2^l sigma_{2^l} T mu)(gamma_n - 1)`
/// through the exact enclosure at `k = gamma_n / 2^l - 1`, reducing to
/// `7n >= l + 1 + 7*2^l`.
pub fn verify_t_main(l: u32, n: u32) -> Result<TMainReport, DyadicError> {
    if l < 1 {
        return Err(DyadicError::Precondition("need l >= 1".into()));
    }
    if l > 20 {
        return Err(DyadicError::CapExceeded("l > 20 not supported".into()));
    }
    if u64::from(n) < 1u64 << (l + 1) {
        return Err(DyadicError::Precondition(format!(
            "need n >= 2^(l+1) = {}, got n = {n}",
            1u64 << (l + 1)
        )));
    }
    check_tower_cap(n + 1)?;
    let tower = tower_sequence(n + 1)?;
    let m0 = pow2_biguint(1usize << (3 * n as usize));
    let g = gamma(n)?;
    let g_int = BigInt::from(g.clone());

    // factors with m < 2^{2^{3n}}: the tower never drops below 2^{-2^{3n}}
    // there, so each normalized factor is at least 1
    let min_early = Log2Value::from_bigint(-BigInt::from(pow2_biguint(3 * n as usize)));
    let early_factors_ok = tower
        .intervals()
        .iter()
        .filter(|iv| iv.start < m0)
        .all(|iv| iv.log2 >= min_early);

    // factors on [m0, gamma_n): the normalized exponent
    // 2^{3(n+1)}(m+1) + prefix(m) - 7 gamma_n is constant there (the tower
    // value is exactly -2^{3(n+1)}), so one exact check at m0 covers the
    // whole range
    let constant_value = Log2Value::from_bigint(-BigInt::from(pow2_biguint(3 * (n as usize + 1))));
    let range_value_ok = *tower.value_at(&m0)? == constant_value
        && *tower.value_at(&(&g - BigUint::one()))? == constant_value;
    let prefix_m0 = tower.prefix_log2_bigint(&m0)?.expect("no zero entries");
    let m0p1 = BigInt::from(&m0 + BigUint::one());
    let left_at_m0 = (&m0p1 << (3 * (n + 1) as usize)) + &prefix_m0;
    let left_exponent_ok = range_value_ok && 7 * &g_int <= left_at_m0;

    // harmonic enclosure over [m0, gamma_n)
    let harmonic = harmonic_sum_enclosure(&m0, &g)?;
    let n_rat = BigRational::from_integer(BigInt::from(n));
    let harmonic_lower_at_least_n = *harmonic.lower() >= n_rat;

    // right side at the witness: gamma_n - 1 dilated back by 2^l
    let k0p1 = &g >> l;
    let dilation_exact = (&k0p1 << l) == g;
    let k0 = &k0p1 - BigUint::one();
    let prefix_k0 = tower.prefix_log2_bigint(&k0)?.expect("no zero entries");
    let k0p1_int = BigInt::from(k0p1.clone());
    let mid_k0 = (&k0p1_int << (3 * (n + 1) as usize)) + &prefix_k0;
    let right_exponent_ok = dilation_exact && k0p1 > m0 && mid_k0 <= &k0p1_int + 7 * &g_int;

    let rhs_small = BigInt::from(l) + 1 + 7 * (BigInt::one() << l);
    let integer_inequality_ok = BigInt::from(7 * n) >= rhs_small;
    let strict_margin_ok = BigRational::from_integer(BigInt::from(7)) * harmonic.lower().clone()
        > BigRational::from_integer(rhs_small);

    let certified = early_factors_ok
        && left_exponent_ok
        && harmonic_lower_at_least_n
        && right_exponent_ok
        && integer_inequality_ok
        && strict_margin_ok;

    Ok(TMainReport {
        l,
        n,
        harmonic_lower: harmonic.lower().to_string(),
        harmonic_lower_at_least_n,
        early_factors_ok,
        left_exponent_ok,
        right_exponent_ok,
        integer_inequality_ok,
        strict_margin_ok,
        certified,
        witness_index: (&g - BigUint::one()).to_string(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct A0BoundReport {
    pub l: u32,
    pub n_max: u32,
    /// `3n + l + 2^{3n} <= 2^{3(n+1)}` for `l <= n <= n_max`.
    pub arithmetic_ok: bool,
    pub breakpoints_checked: usize,
    pub first_violation: Option<String>,
    pub pass: bool,
}

/// Exact check of the dilation bound for the vanishing companion:
/// `sigma_{2^l} mu(A0) <= sigma_{2^l}(mu(A0) truncated below level l) + mu(A)`
/// at every breakpoint, together with the supporting integer inequality.
pub fn verify_a0_bound(l: u32, n_max: u32) -> Result<A0BoundReport, DyadicError> {
    if l < 1 {
        return Err(DyadicError::Precondition("need l >= 1".into()));
    }
    check_tower_cap(n_max + 1)?;
    let mut arithmetic_ok = true;
    for n in l..=n_max {
        let lhs = BigUint::from(3 * n + l) + pow2_biguint(3 * n as usize);
        let rhs = pow2_biguint(3 * (n as usize + 1));
        arithmetic_ok &= lhs <= rhs;
    }
    let a0 = a0_sequence(n_max)?;
    let tower = tower_sequence(n_max + 1)?;
    let lhs = a0.dilate_pow2(l);
    let cut = gamma(l.min(n_max + 1).saturating_sub(1))?;
    let truncated = if l == 0 {
        DyadicStepSeq::zero()
    } else {
        a0.zero_from(&cut)?
    };
    let rhs1 = truncated.dilate_pow2(l);
    let hi = match (lhs.horizon(), tower.horizon()) {
        (Some(a), Some(b)) => a.min(b).clone(),
        (Some(a), None) => a.clone(),
        (None, Some(b)) => b.clone(),
        (None, None) => unreachable!("both sequences have finite pieces"),
    };
    let mut points = lhs.breakpoints_within(&hi);
    points.extend(rhs1.breakpoints_within(&hi));
    points.extend(tower.breakpoints_within(&hi));
    points.sort();
    points.dedup();
    let mut first_violation = None;
    for k in &points {
        let ok = le_sum_of_powers(lhs.value_at(k)?, &[rhs1.value_at(k)?, tower.value_at(k)?])?;
        if !ok {
            first_violation = Some(k.to_string());
            break;
        }
    }
    let pass = arithmetic_ok && first_violation.is_none();
    Ok(A0BoundReport {
        l,
        n_max,
        arithmetic_ok,
        breakpoints_checked: points.len(),
        first_violation,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HorrorReport {
    pub l: u32,
    /// `b <= 2^l sigma_{2^l} mu(A)` verified exactly (the principal-ideal
    /// witness form). A failure here is an input error.
    pub witness_precondition_ok: bool,
    /// `b <<_log mu(A)` verified exactly at all piece endpoints. Reported
    /// but not fatal: the envelope can hold for inputs (such as constant
    /// multiples of dilated generators) whose head escapes the log order.
    pub log_submajor_precondition_ok: bool,
    pub breakpoints_checked: usize,
    pub first_violation: Option<String>,
    pub pass: bool,
}

/// Exact breakpoint check of the three-term envelope
/// `mu(B) <= 2^l mu(A0) + 256 sigma_2 mu(A) + sigma_{2^l} mu^4(A)`.
pub fn verify_horror(b: &DyadicStepSeq, l: u32, n_max: u32) -> Result<HorrorReport, DyadicError> {
    check_tower_cap(n_max + 1)?;
    let tower = tower_sequence(n_max + 1)?;
    let a0 = a0_sequence(n_max)?;

    let witness_bound = tower.dilate_pow2(l).scale_pow2(l as i64);
    let hi_pre = match (b.horizon(), witness_bound.horizon()) {
        (Some(x), Some(y)) => x.min(y).clone(),
        (Some(x), None) => x.clone(),
        (None, Some(y)) => y.clone(),
        (None, None) => return Err(DyadicError::Precondition("unbounded inputs".into())),
    };
    let witness_precondition_ok = first_pointwise_violation(b, &witness_bound, &hi_pre)?.is_none();
    let hi_log = match (b.horizon(), tower.horizon()) {
        (Some(x), Some(y)) => x.min(y).clone(),
        (Some(x), None) => x.clone(),
        (None, Some(y)) => y.clone(),
        (None, None) => unreachable!(),
    };
    let log_submajor_precondition_ok = first_log_submajor_violation(b, &tower, &hi_log)?.is_none();
    if !witness_precondition_ok {
        return Err(DyadicError::Precondition(format!(
            "input is not within the level-{l} dilation witness bound"
        )));
    }

    let t1 = a0.scale_pow2(l as i64);
    let t2 = tower.dilate_pow2(1).scale_pow2(8);
    let t3 = tower.pow(4)?.dilate_pow2(l);

    let mut hi = hi_log.clone();
    for h in [t1.horizon(), t2.horizon(), t3.horizon()]
        .into_iter()
        .flatten()
    {
        if *h < hi {
            hi = h.clone();
        }
    }
    let mut points = b.breakpoints_within(&hi);
    points.extend(t1.breakpoints_within(&hi));
    points.extend(t2.breakpoints_within(&hi));
    points.extend(t3.breakpoints_within(&hi));
    points.sort();
    points.dedup();
    let mut first_violation = None;
    for k in &points {
        let ok = le_sum_of_powers(
            b.value_at(k)?,
            &[t1.value_at(k)?, t2.value_at(k)?, t3.value_at(k)?],
        )?;
        if !ok {
            first_violation = Some(k.to_string());
            break;
        }
    }
    let pass = first_violation.is_none();
    Ok(HorrorReport {
        l,
        witness_precondition_ok,
        log_submajor_precondition_ok,
        breakpoints_checked: points.len(),
        first_violation,
        pass,
    })
}

/// Tower level whose breakpoints carry dilation-escape witnesses for every
/// level up to `l`: the candidate at breakpoint `2^{2^{3s}}` shifted by `l`
/// beats the dilated bound once `7 * 2^{3s}` clears `(l + 2) * 2^l`.
pub fn tower_witness_level(l: u32) -> u32 {
    let mut s = 1u32;
    while s < 3 * TOWER_N_CAP
        && 7u128 * (1u128 << (3 * s)) <= (l as u128 + 2) * (1u128 << l.min(100))
    {
        s += 1;
    }
    (s + 1).min(TOWER_N_CAP)
}

/// Searches for an exact index witnessing
/// `(T mu)(k) > 2^l (sigma_{2^l} mu)(k)` on the tower: candidates
/// `k = 2^{l + 2^{3s}}`, where the running geometric mean still remembers the
/// previous tower level while the dilated tower has already dropped.
pub fn tower_geom_unstable_witness(l: u32, s_cap: u32) -> Result<Option<BigUint>, DyadicError> {
    for s in 1..=s_cap {
        check_tower_cap(s + 2)?;
        let tower = tower_sequence(s + 2)?;
        let k = pow2_biguint(l as usize + (1usize << (3 * s as usize)));
        if tower.horizon().is_some_and(|h| &k >= h) {
            continue;
        }
        let prefix = tower.prefix_log2_bigint(&k)?.expect("no zeros");
        let shifted = &k >> l;
        let val = tower
            .value_at(&shifted)?
            .as_integer()
            .expect("tower exponents are integers");
        let kp1 = BigInt::from(&k + BigUint::one());
        // T mu (k) > 2^l mu(k >> l)  <=>  prefix(k) > (l + val) * (k+1)
        let rhs = (BigInt::from(l) + val) * &kp1;
        if prefix > rhs {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn tower_piece_values() {
        let t = tower_sequence(2).unwrap();
        assert_eq!(*t.value_at(&big(0)).unwrap(), Log2Value::from_int(-1));
        assert_eq!(*t.value_at(&big(1)).unwrap(), Log2Value::from_int(-1));
        assert_eq!(*t.value_at(&big(2)).unwrap(), Log2Value::from_int(-8));
        assert_eq!(*t.value_at(&big(255)).unwrap(), Log2Value::from_int(-8));
        assert_eq!(*t.value_at(&big(256)).unwrap(), Log2Value::from_int(-64));
        assert_eq!(
            *t.value_at(&(pow2_biguint(64) - big(1))).unwrap(),
            Log2Value::from_int(-64)
        );
        assert!(matches!(
            t.value_at(&pow2_biguint(64)),
            Err(DyadicError::BeyondHorizon(_))
        ));
    }

    #[test]
    fn a0_piece_values_and_domination() {
        let a0 = a0_sequence(2).unwrap();
        assert_eq!(*a0.value_at(&big(0)).unwrap(), Log2Value::from_int(-8));
        assert_eq!(*a0.value_at(&big(1)).unwrap(), Log2Value::from_int(-8));
        assert_eq!(*a0.value_at(&big(2)).unwrap(), Log2Value::from_int(-64));
        assert_eq!(*a0.value_at(&big(2047)).unwrap(), Log2Value::from_int(-64));
        assert_eq!(*a0.value_at(&big(2048)).unwrap(), Log2Value::from_int(-512));
        // gamma boundaries
        assert_eq!(gamma(0).unwrap(), big(2));
        assert_eq!(gamma(1).unwrap(), big(2048));
        // a0 <= tower on the shared horizon
        let tower = tower_sequence(3).unwrap();
        let hi = gamma(2).unwrap();
        assert_eq!(first_pointwise_violation(&a0, &tower, &hi).unwrap(), None);
    }

    #[test]
    fn exact_ops_examples() {
        let t = tower_sequence(2).unwrap();
        let dil = t.dilate_pow2(1);
        assert_eq!(dil.intervals()[1].start, big(4));
        assert_eq!(dil.intervals()[1].end, Some(big(512)));
        let scaled = t.scale_pow2(3);
        assert_eq!(*scaled.value_at(&big(2)).unwrap(), Log2Value::from_int(-5));
        let pow4 = t.pow(4).unwrap();
        assert_eq!(*pow4.value_at(&big(2)).unwrap(), Log2Value::from_int(-32));
    }

    #[test]
    fn prefix_log2_examples() {
        let t = tower_sequence(2).unwrap();
        assert_eq!(
            t.prefix_log2_bigint(&big(1)).unwrap(),
            Some(BigInt::from(-2))
        );
        // two entries of -1, 254 entries of -8
        assert_eq!(
            t.prefix_log2_bigint(&big(255)).unwrap(),
            Some(BigInt::from(-2034))
        );
        // consistency with the closed form: 256*64 - 2034 = 14 + 7*2048
        let lhs = BigInt::from(256i64 * 64) + t.prefix_log2_bigint(&big(255)).unwrap().unwrap();
        assert_eq!(lhs, BigInt::from(14 + 7 * 2048));
    }

    #[test]
    fn closed_form_identity_at_piece_ends() {
        // 2^{(k+1) 2^{3(n+1)}} prod = 2^{14 + 7 sum gamma_s} at
        // k = 2^{2^{3(n+1)}} - 1, for n <= 2
        for n in 0u32..=2 {
            let tower = tower_sequence(n + 1).unwrap();
            let k = pow2_biguint(1usize << (3 * (n as usize + 1))) - BigUint::one();
            let prefix = tower.prefix_log2_bigint(&k).unwrap().unwrap();
            let kp1 = BigInt::from(&k + BigUint::one());
            let lhs = (kp1 << (3 * (n + 1) as usize)) + prefix;
            let mut rhs = BigInt::from(14);
            for s in 1..=n {
                rhs += 7 * BigInt::from(gamma(s).unwrap());
            }
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn exact_t_log2_examples() {
        let t = tower_sequence(2).unwrap();
        assert_eq!(t.exact_t_log2(&big(1)).unwrap(), Log2Value::from_int(-1));
        assert_eq!(
            t.exact_t_log2(&big(255)).unwrap(),
            Log2Value::Finite(BigRational::new(BigInt::from(-2034), BigInt::from(256)))
        );
        let c = DyadicStepSeq::constant(Log2Value::from_int(-3));
        assert_eq!(c.exact_t_log2(&big(77)).unwrap(), Log2Value::from_int(-3));
    }

    #[test]
    fn t_aux_exact_checks() {
        // n = 1 spot checks, including the last index of the range piece
        let ks = vec![
            big(256),
            big(2047),
            big(1_000_000),
            pow2_biguint(64) - big(1),
        ];
        let rep = verify_t_aux(1, &ks).unwrap();
        assert!(rep.pass, "{rep:?}");
        // n = 0 degenerate pieces are covered by the same formula
        let rep = verify_t_aux(0, &[big(2), big(100), big(255)]).unwrap();
        assert!(rep.pass, "{rep:?}");
        // out-of-range k rejected
        assert!(verify_t_aux(1, &[big(1)]).is_err());
    }

    #[test]
    fn t_main_certifies_stated_pairs() {
        let rep = verify_t_main(1, 4).unwrap();
        assert!(rep.certified, "{rep:?}");
        assert!(rep.integer_inequality_ok);
        let rep = verify_t_main(2, 8).unwrap();
        assert!(rep.certified, "{rep:?}");
    }

    #[test]
    fn t_main_rejects_small_n() {
        assert!(matches!(
            verify_t_main(1, 2),
            Err(DyadicError::Precondition(_))
        ));
    }

    #[test]
    fn a0_bound_examples() {
        // 3n + l + 2^{3n} <= 2^{3(n+1)}: 12 <= 64 and 524 <= 4096
        assert_eq!(BigUint::from(3u32 + 1 + 8u32), big(12));
        let rep = verify_a0_bound(1, 3).unwrap();
        assert!(rep.arithmetic_ok);
        assert!(rep.pass, "{rep:?}");
        let rep = verify_a0_bound(3, 4).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn horror_on_tower_and_dilates() {
        let tower3 = tower_sequence(3).unwrap();
        let rep = verify_horror(&tower3, 0, 3).unwrap();
        assert!(rep.pass, "{rep:?}");
        let b = tower3.dilate_pow2(1).scale_pow2(1);
        let rep = verify_horror(&b, 1, 3).unwrap();
        assert!(rep.pass, "{rep:?}");
        // a0 scaled by 2^l is dominated by the first envelope term alone
        let b = a0_sequence(3).unwrap().scale_pow2(2);
        let rep = verify_horror(&b, 2, 3).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn horror_rejects_bad_input() {
        // far above the dilation witness bound
        let b = tower_sequence(2).unwrap().scale_pow2(40);
        assert!(verify_horror(&b, 1, 2).is_err());
    }

    #[test]
    fn geom_unstable_witnesses_exist_for_small_l() {
        for l in 0..=6u32 {
            let w = tower_geom_unstable_witness(l, 6).unwrap();
            assert!(w.is_some(), "no witness for l = {l}");
        }
        // spot check l = 0 at k = 256 directly: T decays much slower
        let t = tower_sequence(2).unwrap();
        let k = big(256);
        let prefix = t.prefix_log2_bigint(&k).unwrap().unwrap();
        let rhs = BigInt::from(-64i64) * BigInt::from(257u32);
        assert!(prefix > rhs);
    }

    #[test]
    fn le_sum_of_powers_cases() {
        let a = Log2Value::from_int(3);
        let b = Log2Value::from_int(3);
        let c = Log2Value::from_int(4);
        // 2^4 <= 2^3 + 2^3 via one carry
        assert!(le_sum_of_powers(&c, &[&a, &b]).unwrap());
        // 2^5 > 2^3 + 2^3
        let d = Log2Value::from_int(5);
        assert!(!le_sum_of_powers(&d, &[&a, &b]).unwrap());
        // single-term domination
        assert!(le_sum_of_powers(&a, &[&c, &Log2Value::NegInf]).unwrap());
        // zero left side
        assert!(le_sum_of_powers(&Log2Value::NegInf, &[]).unwrap());
        // no finite terms
        assert!(!le_sum_of_powers(&a, &[&Log2Value::NegInf]).unwrap());
    }

    #[test]
    fn harmonic_enclosure_brackets_direct_sums() {
        // direct summation oracle on a small range
        let a = 7u64;
        let b = 5000u64;
        let direct: f64 = (a..b).map(|m| 1.0 / (m as f64 + 1.0)).sum();
        let enc = harmonic_sum_enclosure(&big(a), &big(b)).unwrap();
        let lo = enc.lower().numer().to_f64().unwrap() / enc.lower().denom().to_f64().unwrap();
        let hi = enc.upper().numer().to_f64().unwrap() / enc.upper().denom().to_f64().unwrap();
        assert!(lo <= direct && direct <= hi, "{lo} <= {direct} <= {hi}");
    }

    #[test]
    fn prefix_additivity_against_direct_summation() {
        // cross-check interval sums against per-entry summation on a small
        // horizon
        let t = tower_sequence(2).unwrap();
        let mut acc: i64 = 0;
        for k in 0u64..10_000 {
            let v = t.value_at(&big(k)).unwrap().as_integer().unwrap();
            acc += v.to_i64().unwrap();
            assert_eq!(
                t.prefix_log2_bigint(&big(k)).unwrap().unwrap(),
                BigInt::from(acc),
                "k = {k}"
            );
        }
    }

    #[test]
    fn sup_and_zero_from() {
        let a0 = a0_sequence(2).unwrap();
        let cut = a0.zero_from(&big(2)).unwrap();
        assert_eq!(*cut.value_at(&big(1)).unwrap(), Log2Value::from_int(-8));
        assert!(cut.value_at(&big(5)).unwrap().is_zero_value());
        assert!(cut.horizon().is_none());
        let s = cut.sup(&a0_sequence(2).unwrap()).unwrap();
        assert_eq!(*s.value_at(&big(5)).unwrap(), Log2Value::from_int(-64));
    }
}
