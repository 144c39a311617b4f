//! Assembly of the boundedness statement: the smoothing exponent `g`, the
//! open region of `(1/p, beta)` where the operator gains `beta` derivatives,
//! the sharpness interval, and point classification.

use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::pipeline::ExponentResult;
use crate::poly::BlockStructure;
use crate::rat::{rat, ratio};
use crate::vanishing::{VanishingMode, VanishingOrderResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TheoremError {
    #[error("1/p = {0} outside the open interval (0, 1)")]
    PRecipOutOfRange(String),
    #[error("beta = {0} must be positive")]
    BetaNotPositive(String),
}

/// `g = min(a0, l_1 - alpha_1, ..., l_m - alpha_m)`.
pub fn smoothing_exponent_g(a0: &BigRational, blocks: &BlockStructure) -> BigRational {
    let mut g = a0.clone();
    for k in 0..blocks.num_blocks() {
        let cap = rat(blocks.block_size(k) as i64) - &blocks.alphas()[k];
        if cap < g {
            g = cap;
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionShape {
    Triangle,
    Trapezoid,
}

impl RegionShape {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionShape::Triangle => "triangle",
            RegionShape::Trapezoid => "trapezoid",
        }
    }
}

/// The open boundedness polygon in the `(1/p, beta)` plane. Its interior is
/// cut out by `beta > 0`, `beta < g`, and the two slanted edges of slope
/// `2 / o_clamped` through `(0,0)` and `(1,0)`; it is symmetric under
/// `1/p -> 1 - 1/p`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundednessRegion {
    pub shape: RegionShape,
    /// Polygon corners, counterclockwise from the origin.
    pub vertices: Vec<(BigRational, BigRational)>,
    pub g: BigRational,
    pub o_clamped: u32,
}

/// Region of part 1: the full open triangle with apex `(1/2, 1/max(o,2))`
/// when `g` reaches the apex, otherwise the open trapezoid cut at height
/// `g` (both top corners on the triangle's slanted edges).
pub fn boundedness_region(g: &BigRational, o_clamped: u32) -> BoundednessRegion {
    assert!(g.is_positive(), "g must be positive");
    assert!(o_clamped >= 2);
    let o = rat(o_clamped as i64);
    let apex = BigRational::one() / &o;
    if *g >= apex {
        BoundednessRegion {
            shape: RegionShape::Triangle,
            vertices: vec![
                (rat(0), rat(0)),
                (rat(1), rat(0)),
                (ratio(1, 2), apex),
            ],
            g: g.clone(),
            o_clamped,
        }
    } else {
        let x = g * &o / rat(2);
        BoundednessRegion {
            shape: RegionShape::Trapezoid,
            vertices: vec![
                (rat(0), rat(0)),
                (rat(1), rat(0)),
                (x.clone(), g.clone()),
                (BigRational::one() - &x, g.clone()),
            ],
            g: g.clone(),
            o_clamped,
        }
    }
}

impl BoundednessRegion {
    /// Strict interior membership.
    pub fn contains(&self, p_recip: &BigRational, beta: &BigRational) -> bool {
        if !beta.is_positive() || *beta >= self.g {
            return false;
        }
        if !p_recip.is_positive() || *p_recip >= BigRational::one() {
            return false;
        }
        let o = rat(self.o_clamped as i64);
        let two = rat(2);
        // beta < (2/o) * x and beta < (2/o) * (1 - x)
        beta * &o < &two * p_recip && beta * &o < two * (BigRational::one() - p_recip)
    }

    /// Height of the region's apex: `min(g, 1/o_clamped)`.
    pub fn apex_height(&self) -> BigRational {
        let apex = BigRational::one() / rat(self.o_clamped as i64);
        if self.g < apex {
            self.g.clone()
        } else {
            apex
        }
    }
}

/// Interval of `1/p` on which the smoothing `g` is optimal up to endpoints:
/// nonempty exactly when `g <= 1/max(o, 2)`, degenerating to `{1/2}` at
/// equality.
pub fn sharpness_interval(g: &BigRational, o_clamped: u32) -> Option<(BigRational, BigRational)> {
    let o = rat(o_clamped as i64);
    let apex = BigRational::one() / &o;
    if *g > apex {
        return None;
    }
    if *g == apex {
        return Some((ratio(1, 2), ratio(1, 2)));
    }
    let lo = &o * g / rat(2);
    let hi = BigRational::one() - &lo;
    Some((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Bounded,
    Unbounded,
    Unknown,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Bounded => "bounded",
            Verdict::Unbounded => "unbounded",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sharpness {
    /// Upper bound on any attainable `beta` (the part-2 ceiling), present
    /// when `g < 1`.
    pub upper_bound_beta: Option<BigRational>,
    /// Open interval of `1/p` with optimal smoothing; equal endpoints encode
    /// the single point `1/2`.
    pub sharp_p_interval: Option<(BigRational, BigRational)>,
    pub caveats: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingReport {
    pub a0: BigRational,
    pub d0: usize,
    pub o_value: u32,
    pub o_clamped: u32,
    pub o_mode: VanishingMode,
    pub o_uncertain: bool,
    pub g: BigRational,
    pub region: BoundednessRegion,
    pub sharpness: Sharpness,
    pub noncompact_flag: bool,
}

pub const CAVEAT_KERNEL: &str = "unbounded verdicts additionally assume a nonnegative kernel bounded below by C0 * prod_k |t_k|^{-alpha_k} near the origin";
pub const CAVEAT_SAMPLED_O: &str = "o(S) is a sampled lower bound; a larger true order would lower the region apex";
pub const CAVEAT_OVERRIDE_O: &str = "o(S) was supplied by the caller and is not verified";
pub const CAVEAT_NONCOMPACT: &str = "a minimizing ordering region read its log exponent from a noncompact diagonal face";
pub const CAVEAT_G_GE_1: &str = "g >= 1: no unboundedness conclusions are available above the region";
pub const CAVEAT_O_UNCERTAIN: &str = "sampled order fits did not settle on a clean integer; treat o(S) as approximate";

/// Assemble the full report from the pipeline result and the vanishing
/// order.
pub fn build_report(
    exponents: &ExponentResult,
    order: &VanishingOrderResult,
    blocks: &BlockStructure,
) -> SmoothingReport {
    let g = smoothing_exponent_g(&exponents.a0, blocks);
    let o_clamped = order.clamped();
    let region = boundedness_region(&g, o_clamped);
    let mut caveats = vec![CAVEAT_KERNEL.to_string()];
    if g >= BigRational::one() {
        caveats.push(CAVEAT_G_GE_1.to_string());
    }
    match order.mode {
        VanishingMode::SampledLowerBound => caveats.push(CAVEAT_SAMPLED_O.to_string()),
        VanishingMode::UserOverride => caveats.push(CAVEAT_OVERRIDE_O.to_string()),
        VanishingMode::Exact2d => {}
    }
    if order.uncertain {
        caveats.push(CAVEAT_O_UNCERTAIN.to_string());
    }
    if exponents.noncompact_flag {
        caveats.push(CAVEAT_NONCOMPACT.to_string());
    }
    let upper_bound_beta = if g < BigRational::one() { Some(g.clone()) } else { None };
    SmoothingReport {
        a0: exponents.a0.clone(),
        d0: exponents.d0,
        o_value: order.value,
        o_clamped,
        o_mode: order.mode.clone(),
        o_uncertain: order.uncertain,
        g: g.clone(),
        sharpness: Sharpness {
            upper_bound_beta,
            sharp_p_interval: sharpness_interval(&g, o_clamped),
            caveats,
        },
        region,
        noncompact_flag: exponents.noncompact_flag,
    }
}

/// Classify a point of the `(1/p, beta)` plane: strictly inside the region
/// means bounded; above the part-2 ceiling (when `g < 1`) means unbounded;
/// anything else is out of reach of the theorem.
pub fn classify_point(
    p_recip: &BigRational,
    beta: &BigRational,
    report: &SmoothingReport,
) -> Result<Verdict, TheoremError> {
    if !p_recip.is_positive() || *p_recip >= BigRational::one() {
        return Err(TheoremError::PRecipOutOfRange(p_recip.to_string()));
    }
    if !beta.is_positive() {
        return Err(TheoremError::BetaNotPositive(beta.to_string()));
    }
    if report.region.contains(p_recip, beta) {
        return Ok(Verdict::Bounded);
    }
    if report.g < BigRational::one() && *beta > report.g {
        return Ok(Verdict::Unbounded);
    }
    Ok(Verdict::Unknown)
}
