//! Newton-polyhedron smoothing exponents for polynomial hypersurface
//! averages with multiparameter fractional kernels.
//!
//! Given a polynomial phase `S(t1,...,tn)` and a block structure with
//! singularity exponents `alpha_k`, the crate computes — in exact rational
//! arithmetic — the sublevel growth exponents `(a0, d0)` of the weighted
//! measure of `{S* < eps}`, the vanishing order `o(S)` of compact-face
//! polynomials, the smoothing exponent `g`, and the open region of
//! `(1/p, beta)` where the associated averaging operator gains `beta`
//! derivatives on `L^p`. Floating point appears only in the numeric oracles
//! that cross-check the predicted exponents by stratified quasi-Monte Carlo
//! integration.
//!
//! The `parallel` feature (on by default) runs the data-parallel inner loops
//! on rayon; reductions are performed in a fixed order, so reports are
//! byte-identical across worker counts.

pub mod lp;
pub mod newton;
pub mod oracle;
pub mod par;
pub mod pipeline;
pub mod poly;
pub mod rat;
pub mod report;
pub mod theorem;
pub mod univar;
pub mod vanishing;

pub use newton::{check_star_majorization, star_function, Face, NewtonPolyhedron};
pub use pipeline::{aggregate_exponents, analyze_all_permutations, ExponentResult, PermutationRecord};
pub use poly::{
    parse_polynomial, validate_input, BlockStructure, ExponentVector, Polynomial, StarFunction,
    ValidationReport,
};
pub use theorem::{boundedness_region, classify_point, smoothing_exponent_g, SmoothingReport, Verdict};
pub use vanishing::{face_polynomial, order_of_s, VanishingOrderResult};
