//! Floating-point verification oracles: stratified quasi-Monte Carlo
//! estimates of weighted sublevel measures and oscillatory integrals, plus
//! the log-log fits that recover growth and decay exponents.

pub mod fit;
pub mod fourier;
pub mod qmc;
pub mod stratify;
pub mod sublevel;

pub use fourier::{estimate_fourier_transform, fit_decay_exponent, DecayFit, FourierEstimate, FourierOptions};
pub use sublevel::{estimate_sublevel_measure, fit_growth_exponents, SublevelEstimate, SublevelFit, SublevelOptions};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("budget {budget} too small: at least {required} evaluations needed for depth {depth}")]
    BudgetTooSmall { budget: u64, required: u64, depth: usize },
    #[error("dimension {0} unsupported by this oracle")]
    UnsupportedDimension(usize),
    #[error("the j-range [{j_min}, {j_max}] must span at least 10 dyadic scales")]
    JRangeTooNarrow { j_min: u32, j_max: u32 },
    #[error("lambda grid needs at least {required} points, got {got}")]
    LambdaGridTooSmall { required: usize, got: usize },
    #[error("measure sequence non-monotone beyond noise tolerance at j = {j}")]
    NonMonotone { j: u32 },
    #[error("fit residual {residual:.3} exceeds threshold {threshold:.3}; inconclusive")]
    ResidualTooLarge { residual: f64, threshold: f64 },
    #[error("only {usable} of {total} decay magnitudes above the noise floor; inconclusive")]
    NoiseFloor { usable: usize, total: usize },
    #[error("phase has non-integer exponents; the oscillatory oracle requires integer exponents")]
    NonIntegerExponents,
    #[error("too few usable fit points ({usable}); need at least {required}")]
    TooFewFitPoints { usable: usize, required: usize },
}
