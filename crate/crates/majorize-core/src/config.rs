//! Shared numeric tolerances and desk-scale limits.

/// Hard cap on matrix dimension accepted by the spectral layer.
pub const DESK_LIMIT: usize = 64;

/// Tolerances used by the floating-point deciders and checks.
///
/// Prefix-sum comparisons use `sum_base` scaled by the number of summed
/// entries; log-product comparisons use `log` as an absolute slack on natural
/// log sums; singular-value comparisons use `sv_rel` relative to the largest
/// singular value involved; `eig_rel` and `recon_rel` bound eigenvalue and
/// reconstruction residuals relative to the operator norm.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Additive slack per summed entry in prefix-sum comparisons.
    pub sum_base: f64,
    /// Additive slack on natural-log prefix sums.
    pub log: f64,
    /// Relative slack for singular-value comparisons.
    pub sv_rel: f64,
    /// Relative bound on eigenvalue residuals (quasi-nilpotency checks).
    pub eig_rel: f64,
    /// Relative bound on reconstruction residuals (Ringrose splits).
    pub recon_rel: f64,
    /// Entries with absolute value at or below this floor are treated as
    /// exact zeros inside running products.
    pub prod_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sum_base: 1e-12,
            log: 1e-10,
            sv_rel: 1e-9,
            eig_rel: 1e-8,
            recon_rel: 1e-10,
            prod_floor: 1e-300,
        }
    }
}

/// Default witness search bound for uniform submajorization.
pub const DEFAULT_LAMBDA_MAX: usize = 64;

/// Default witness search bound for principal-ideal membership.
pub const DEFAULT_L_MAX: usize = 16;
