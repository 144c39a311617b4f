//! The permutation-region pipeline extracting the growth exponents
//! `(a0, d0)` of the weighted sublevel measure.
//!
//! For every ordering `u_1 < ... < u_n` of the variables, the substitutions
//! `u_k = prod_{i>=k} y_i` and `z_k = y_k^{1-beta_k}` turn the weighted
//! measure of `{S* < eps}` into the Lebesgue measure of a sublevel set of a
//! transformed star function. Its Newton distance gives the region's power
//! `a_l = 1/d_l`, the dimension of the minimal diagonal face gives the log
//! power `d_l_log = n - 1 - dim`, and the region results aggregate by
//! minimal `a_l` with the maximal log power among the minimizers.

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::newton::NewtonPolyhedron;
use crate::par;
use crate::poly::{BlockStructure, ExponentVector, StarFunction};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("beta_{index} = {value} >= 1: the weight is not integrable on the region")]
    NonIntegrableBeta { index: usize, value: String },
    #[error("dimension {0} exceeds the supported factorial scale (n <= {1})")]
    TooManyVariables(usize, usize),
    #[error("no permutation records to aggregate")]
    NoRecords,
    #[error("star function has no exponents")]
    EmptyStar,
    #[error("transformed star has Newton distance 0 (a constant term); inputs must satisfy S(0) = 0")]
    ZeroNewtonDistance,
}

/// Largest dimension for which all n! orderings are enumerated.
pub const MAX_FACTORIAL_DIMENSION: usize = 5;

/// The full substitution trail of one ordering region.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationRecord {
    /// `sigma[i] = j` means the i-th smallest variable is `t_{j+1}`
    /// (zero-based storage; reports print one-based labels).
    pub sigma: Vec<usize>,
    /// Per block: the largest u-position among the block's variables
    /// (one-based positions).
    pub block_maxima: Vec<usize>,
    /// Weight exponents after the product substitution.
    pub beta: Vec<BigRational>,
    /// Prefix-summed permuted exponents (y-coordinates).
    pub w_exponents: Vec<ExponentVector>,
    /// Final exponents after the z-substitution; rational in general.
    pub x_exponents: Vec<ExponentVector>,
    /// The re-minimalized transformed star function.
    pub star_transformed: StarFunction,
    /// Newton distance of the transformed polyhedron.
    pub d_l: BigRational,
    /// `1 / d_l`, the region's growth power.
    pub a_l: BigRational,
    pub diagonal_face_dim: usize,
    /// `n - 1 - diagonal_face_dim`.
    pub d_l_log: usize,
    pub diagonal_face_compact: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentResult {
    pub a0: BigRational,
    pub d0: usize,
    pub per_permutation: Vec<PermutationRecord>,
    /// Some minimizing record read its log power off a noncompact diagonal
    /// face.
    pub noncompact_flag: bool,
}

/// One-based largest u-position per block: `b_k = max over j in block_k of
/// sigma^{-1}(j)`.
pub fn block_maxima(sigma: &[usize], blocks: &BlockStructure) -> Vec<usize> {
    let n = sigma.len();
    let mut position = vec![0usize; n];
    for (pos, &var) in sigma.iter().enumerate() {
        position[var] = pos + 1;
    }
    blocks
        .blocks()
        .iter()
        .map(|blk| blk.iter().map(|&j| position[j]).max().expect("blocks are nonempty"))
        .collect()
}

/// Weight exponents in the y-coordinates:
/// `beta_j = sum_{k : b_k <= j} alpha_k - (j - 1)`.
///
/// The product substitution `u_k = prod_{i>=k} y_i` has Jacobian
/// `prod_j y_j^{j-1}`, and the block weight `prod_k u_{b_k}^{-alpha_k}`
/// pulls back to `prod_j y_j^{-sum_{k: b_k <= j} alpha_k}`; combining the
/// two gives the formula. Integrability (`beta_j < 1`) holds exactly when
/// every `alpha_k < l_k`, because blocks with `b_k <= j` fit entirely in the
/// first `j` positions.
pub fn beta_exponents(sigma: &[usize], blocks: &BlockStructure) -> Result<Vec<BigRational>, PipelineError> {
    let n = sigma.len();
    let maxima = block_maxima(sigma, blocks);
    let mut beta = Vec::with_capacity(n);
    for j in 1..=n {
        let mut s = BigRational::zero();
        for (k, &b_k) in maxima.iter().enumerate() {
            if b_k <= j {
                s += &blocks.alphas()[k];
            }
        }
        s -= BigRational::from_integer((j as i64 - 1).into());
        if s >= BigRational::one() {
            return Err(PipelineError::NonIntegrableBeta { index: j, value: s.to_string() });
        }
        beta.push(s);
    }
    Ok(beta)
}

/// Apply the ordering substitutions to the star function: permute each
/// vertex exponent, prefix-sum it (y-coordinates) and divide by `1 - beta`
/// (z-coordinates), then drop dominated exponents.
pub fn substituted_star(
    star: &StarFunction,
    sigma: &[usize],
    beta: &[BigRational],
) -> Result<(Vec<ExponentVector>, Vec<ExponentVector>, StarFunction), PipelineError> {
    let n = star.dimension();
    if star.vertex_exponents().is_empty() {
        return Err(PipelineError::EmptyStar);
    }
    let mut w_list = Vec::new();
    let mut x_list = Vec::new();
    for v in star.vertex_exponents() {
        let permuted: Vec<&BigRational> = sigma.iter().map(|&j| v.entry(j)).collect();
        let mut w = Vec::with_capacity(n);
        let mut acc = BigRational::zero();
        for p in &permuted {
            acc += *p;
            w.push(acc.clone());
        }
        let x: Vec<BigRational> = w
            .iter()
            .zip(beta.iter())
            .map(|(wj, bj)| wj / (BigRational::one() - bj))
            .collect();
        w_list.push(ExponentVector::new(w).expect("prefix sums of nonnegative entries"));
        x_list.push(ExponentVector::new(x).expect("scaled by positive factors"));
    }
    let minimal = crate::newton::minimal_exponents(n, x_list.clone()).expect("nonempty point set");
    let star_z = StarFunction::new(n, minimal).expect("vertex sets are non-dominating");
    Ok((w_list, x_list, star_z))
}

/// Full analysis of one ordering region.
pub fn analyze_permutation(
    star: &StarFunction,
    blocks: &BlockStructure,
    sigma: &[usize],
) -> Result<PermutationRecord, PipelineError> {
    let n = star.dimension();
    let beta = beta_exponents(sigma, blocks)?;
    let (w_exponents, x_exponents, star_z) = substituted_star(star, sigma, &beta)?;
    let np = NewtonPolyhedron::from_points(n, star_z.vertex_exponents().to_vec())
        .expect("transformed star is nonempty");
    let d_l = np.newton_distance();
    if d_l.is_zero() {
        return Err(PipelineError::ZeroNewtonDistance);
    }
    let a_l = BigRational::one() / &d_l;
    let face = np.minimal_face_at_diagonal();
    let d_l_log = n - 1 - face.dim;
    Ok(PermutationRecord {
        sigma: sigma.to_vec(),
        block_maxima: block_maxima(sigma, blocks),
        beta,
        w_exponents,
        x_exponents,
        star_transformed: star_z,
        d_l,
        a_l,
        diagonal_face_dim: face.dim,
        d_l_log,
        diagonal_face_compact: face.is_compact,
    })
}

/// `a0 = min a_l`; `d0 = max d_l_log` over the minimizers; the noncompact
/// flag propagates from any minimizing record.
pub fn aggregate_exponents(records: Vec<PermutationRecord>) -> Result<ExponentResult, PipelineError> {
    if records.is_empty() {
        return Err(PipelineError::NoRecords);
    }
    let a0 = records.iter().map(|r| r.a_l.clone()).min().expect("nonempty");
    let minimizers: Vec<&PermutationRecord> = records.iter().filter(|r| r.a_l == a0).collect();
    let d0 = minimizers.iter().map(|r| r.d_l_log).max().expect("nonempty");
    let noncompact_flag = minimizers.iter().any(|r| !r.diagonal_face_compact);
    Ok(ExponentResult { a0, d0, per_permutation: records, noncompact_flag })
}

/// Lexicographic enumeration of all permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    // next_permutation until the descending arrangement
    while let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) {
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Run every ordering region and aggregate. Regions are independent and run
/// in parallel; aggregation scans them in lexicographic order.
pub fn analyze_all_permutations(
    star: &StarFunction,
    blocks: &BlockStructure,
) -> Result<ExponentResult, PipelineError> {
    let n = star.dimension();
    if n > MAX_FACTORIAL_DIMENSION {
        return Err(PipelineError::TooManyVariables(n, MAX_FACTORIAL_DIMENSION));
    }
    let sigmas = permutations(n);
    let records: Vec<Result<PermutationRecord, PipelineError>> =
        par::map_collect(&sigmas, |sigma| analyze_permutation(star, blocks, sigma));
    let records: Result<Vec<_>, _> = records.into_iter().collect();
    aggregate_exponents(records?)
}
