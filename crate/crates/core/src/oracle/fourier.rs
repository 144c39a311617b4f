//! Oscillatory-integral oracle: estimates
//! `nu_hat(lambda) = int exp(i(lambda . t + lambda_{n+1} S(t))) K(t) dt`
//! with `K(t) = prod_k |t_k|^{-alpha_k} * phi(t/r)` for the fixed bump
//! `phi(s) = exp(1 - 1/(1 - |s|^2))`, and fits log-log decay slopes along a
//! chosen frequency axis.
//!
//! The signed dyadic grid handles the weight singularity; cells are then
//! split recursively while the sampled phase range exceeds pi, and each leaf
//! is integrated by shifted-Halton quadrature. All shifts derive from the
//! cell path, so estimates are bit-identical across runs and worker counts.

use num_complex::Complex64;

use crate::oracle::fit::fit_line;
use crate::oracle::qmc::{splitmix64, CellSampler};
use crate::oracle::stratify::{DyadicGrid, SignedDyadicGrid};
use crate::oracle::OracleError;
use crate::par;
use crate::poly::{BlockStructure, Polynomial};
use crate::rat;

#[derive(Debug, Clone)]
pub struct FourierOptions {
    /// Bump radius; the kernel is supported in `|t| < r`.
    pub r: f64,
    /// Initial dyadic depth per axis; `None` picks 26 for n <= 2, 14 for n = 3.
    pub depth: Option<usize>,
    /// Evaluation budget for one estimate.
    pub budget: u64,
    /// Halton points per leaf cell.
    pub points_per_cell: u64,
    /// Additional subdivision levels below the initial grid.
    pub max_refine_depth: u32,
}

impl Default for FourierOptions {
    fn default() -> Self {
        FourierOptions {
            r: 0.5,
            depth: None,
            budget: 150_000_000,
            points_per_cell: 16,
            max_refine_depth: 44,
        }
    }
}

fn default_depth(dim: usize) -> usize {
    if dim <= 2 {
        26
    } else {
        14
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierEstimate {
    pub value: Complex64,
    /// Accumulated quadrature error estimate (absolute).
    pub abs_err: f64,
    pub evaluations: u64,
    /// Some cell hit the refinement depth cap or its budget share while its
    /// phase still varied by more than pi; the estimate may be unreliable.
    pub depth_capped: bool,
}

/// Polynomial compiled to f64 with integer exponents for the hot loop.
struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl CompiledPoly {
    fn new(p: &Polynomial) -> Result<Self, OracleError> {
        let mut terms = Vec::with_capacity(p.terms().len());
        for t in p.terms() {
            let mut exps = Vec::new();
            for (i, e) in t.exponents.entries().iter().enumerate() {
                if num_traits::Zero::is_zero(e) {
                    continue;
                }
                let Some(k) = rat::as_i64(e) else {
                    return Err(OracleError::NonIntegerExponents);
                };
                exps.push((i, k as i32));
            }
            terms.push((rat::to_f64(&t.coefficient), exps));
        }
        Ok(CompiledPoly { terms })
    }

    #[inline]
    fn eval(&self, t: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (c, exps) in &self.terms {
            let mut m = *c;
            for &(i, k) in exps {
                m *= match k {
                    1 => t[i],
                    2 => t[i] * t[i],
                    _ => t[i].powi(k),
                };
            }
            acc += m;
        }
        acc
    }
}

struct Integrand<'a> {
    phase_poly: CompiledPoly,
    lambda_t: Vec<f64>,
    lambda_phase: f64,
    blocks: &'a BlockStructure,
    r2_inv: f64,
}

impl<'a> Integrand<'a> {
    #[inline]
    fn phase(&self, t: &[f64]) -> f64 {
        let mut p = self.lambda_phase * self.phase_poly.eval(t);
        for (i, l) in self.lambda_t.iter().enumerate() {
            p += l * t[i];
        }
        p
    }

    #[inline]
    fn kernel(&self, t: &[f64]) -> f64 {
        let s2: f64 = t.iter().map(|x| x * x).sum::<f64>() * self.r2_inv;
        if s2 >= 1.0 {
            return 0.0;
        }
        let bump = (1.0 - 1.0 / (1.0 - s2)).exp();
        bump * self.blocks.weight(t)
    }

    #[inline]
    fn eval(&self, t: &[f64]) -> Complex64 {
        let k = self.kernel(t);
        if k == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let (s, c) = self.phase(t).sin_cos();
        Complex64::new(c * k, s * k)
    }
}

struct CellResult {
    sum: Complex64,
    var: f64,
    evaluations: u64,
    capped: bool,
}

/// Estimate the kernel-weighted Fourier transform at the frequency vector
/// `lambda` (length `n + 1`; the last entry multiplies the phase `S`).
pub fn estimate_fourier_transform(
    phase: &Polynomial,
    blocks: &BlockStructure,
    lambda: &[f64],
    opts: &FourierOptions,
) -> Result<FourierEstimate, OracleError> {
    let dim = phase.dimension();
    if dim > 3 {
        return Err(OracleError::UnsupportedDimension(dim));
    }
    assert_eq!(lambda.len(), dim + 1, "lambda must have n + 1 entries");
    let depth = opts.depth.unwrap_or_else(|| default_depth(dim));
    let grid = SignedDyadicGrid::new(dim, opts.r, depth);
    let cells = grid.num_cells();

    let required = cells * (probe_cost(dim) + opts.points_per_cell);
    if opts.budget < required {
        return Err(OracleError::BudgetTooSmall {
            budget: opts.budget,
            required,
            depth,
        });
    }

    let integrand = Integrand {
        phase_poly: CompiledPoly::new(phase)?,
        lambda_t: lambda[..dim].to_vec(),
        lambda_phase: lambda[dim],
        blocks,
        r2_inv: 1.0 / (opts.r * opts.r),
    };

    // Budget shares proportional to the expected leaf count of each top
    // cell: the product over axes of the per-axis oscillation counts.
    // Deterministic, so the refinement tree does not depend on scheduling.
    let weights: Vec<f64> = par::map_range(cells as usize, |id| {
        let (lo, hi) = grid.cell(id as u64);
        if outside_support(&lo, &hi, opts.r) {
            return 0.0;
        }
        let probe = probe_cell(&integrand, &lo, &hi);
        probe
            .axis_variation
            .iter()
            .map(|v| (2.0 * v / std::f64::consts::PI).max(1.0))
            .product()
    });
    let wsum: f64 = weights.iter().sum();
    let spendable = opts.budget - required;

    let results: Vec<CellResult> = par::map_range(cells as usize, |id| {
        let (lo, hi) = grid.cell(id as u64);
        if outside_support(&lo, &hi, opts.r) {
            return CellResult { sum: Complex64::new(0.0, 0.0), var: 0.0, evaluations: 0, capped: false };
        }
        let extra = (spendable as f64 * weights[id] / wsum) as i64;
        let mut budget_left = (probe_cost(dim) + opts.points_per_cell) as i64 + extra;
        let key = splitmix64(id as u64 + 1);
        integrate_cell(&integrand, &lo, &hi, 0, key, opts, &mut budget_left)
    });

    let mut sum = Complex64::new(0.0, 0.0);
    let mut var = 0.0;
    let mut evaluations = 0;
    let mut capped = false;
    for r in &results {
        sum += r.sum;
        var += r.var;
        evaluations += r.evaluations;
        capped |= r.capped;
    }
    Ok(FourierEstimate { value: sum, abs_err: var.sqrt(), evaluations, depth_capped: capped })
}

fn outside_support(lo: &[f64], hi: &[f64], r: f64) -> bool {
    let mut min2 = 0.0;
    for (l, h) in lo.iter().zip(hi) {
        let m = if *l > 0.0 {
            *l
        } else if *h < 0.0 {
            -*h
        } else {
            0.0
        };
        min2 += m * m;
    }
    min2 >= r * r
}

struct CellProbe {
    /// Phase spread over corners and center.
    range: f64,
    /// Phase variation along each axis through the cell center.
    axis_variation: Vec<f64>,
}

fn probe_cost(dim: usize) -> u64 {
    (1u64 << dim) + 1 + 2 * dim as u64
}

/// Sample the phase at the corners, the center, and the per-axis edge
/// midpoints to size the oscillation of a cell.
fn probe_cell(ig: &Integrand, lo: &[f64], hi: &[f64]) -> CellProbe {
    let dim = lo.len();
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut t = vec![0.0; dim];
    for corner in 0..1usize << dim {
        for d in 0..dim {
            t[d] = if corner >> d & 1 == 1 { hi[d] } else { lo[d] };
        }
        let p = ig.phase(&t);
        min = min.min(p);
        max = max.max(p);
    }
    for d in 0..dim {
        t[d] = 0.5 * (lo[d] + hi[d]);
    }
    let p = ig.phase(&t);
    min = min.min(p);
    max = max.max(p);

    let mut axis_variation = Vec::with_capacity(dim);
    for d in 0..dim {
        let keep = t[d];
        t[d] = lo[d];
        let a = ig.phase(&t);
        t[d] = hi[d];
        let b = ig.phase(&t);
        t[d] = keep;
        min = min.min(a.min(b));
        max = max.max(a.max(b));
        axis_variation.push((b - a).abs());
    }
    CellProbe { range: max - min, axis_variation }
}

fn integrate_cell(
    ig: &Integrand,
    lo: &[f64],
    hi: &[f64],
    depth: u32,
    key: u64,
    opts: &FourierOptions,
    budget_left: &mut i64,
) -> CellResult {
    let dim = lo.len();
    let probes = probe_cost(dim) as i64;
    let leaf_cost = opts.points_per_cell as i64;
    *budget_left -= probes;
    let probe = probe_cell(ig, lo, hi);
    let mut evaluations = probes as u64;

    let oscillatory = probe.range > std::f64::consts::PI;
    let child_min_cost = 2 * (probes + leaf_cost);
    if oscillatory && depth < opts.max_refine_depth && *budget_left >= child_min_cost {
        // Split only the axis with the largest phase variation: thin cells
        // near the coordinate planes then refine along their long axis only.
        let axis = probe
            .axis_variation
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(d, _)| d)
            .unwrap_or(0);
        let axis = if probe.axis_variation[axis] > 0.0 {
            axis
        } else {
            // degenerate probe: fall back to the widest axis
            (0..dim)
                .max_by(|&a, &b| {
                    (hi[a] - lo[a]).partial_cmp(&(hi[b] - lo[b])).unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(0)
        };
        let mut sum = Complex64::new(0.0, 0.0);
        let mut var = 0.0;
        let mut capped = false;
        let mid = 0.5 * (lo[axis] + hi[axis]);
        for child in 0..2usize {
            let mut clo = lo.to_vec();
            let mut chi = hi.to_vec();
            if child == 0 {
                chi[axis] = mid;
            } else {
                clo[axis] = mid;
            }
            let ckey = splitmix64(key ^ (0x1000 + (axis as u64) * 2 + child as u64));
            let r = integrate_cell(ig, &clo, &chi, depth + 1, ckey, opts, budget_left);
            sum += r.sum;
            var += r.var;
            evaluations += r.evaluations;
            capped |= r.capped;
        }
        return CellResult { sum, var, evaluations, capped };
    }

    // leaf quadrature
    let points = opts.points_per_cell;
    *budget_left -= leaf_cost;
    let volume = DyadicGrid::volume(lo, hi);
    let sampler = CellSampler::new(dim, 0x6f73_6369, key);
    let mut u = vec![0.0; dim];
    let mut t = vec![0.0; dim];
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sum_sq = 0.0;
    for k in 0..points {
        sampler.point(k, &mut u);
        for d in 0..dim {
            let x = u[d].clamp(1e-12, 1.0 - 1e-12);
            t[d] = lo[d] + (hi[d] - lo[d]) * x;
        }
        let v = ig.eval(&t);
        sum += v;
        sum_sq += v.norm_sqr();
    }
    evaluations += points;
    let mean = sum / points as f64;
    let var_pop = (sum_sq / points as f64 - mean.norm_sqr()).max(0.0);
    let err = volume * (var_pop / points as f64).sqrt();
    CellResult {
        sum: mean * volume,
        var: err * err,
        evaluations,
        capped: oscillatory,
    }
}

#[derive(Debug, Clone)]
pub struct DecayFit {
    /// 1-based frequency axis: `1..=n` are the spatial directions, `n + 1`
    /// multiplies the phase polynomial.
    pub direction: usize,
    pub lambdas: Vec<f64>,
    pub magnitudes: Vec<f64>,
    pub abs_errs: Vec<f64>,
    pub usable: Vec<bool>,
    /// Magnitudes fell below the noise floor somewhere in the grid.
    pub truncated: bool,
    /// Slope of `log |nu_hat|` against `log lambda` (negative for decay).
    pub fitted_slope: f64,
    pub fit_residual: f64,
    /// `-fitted_slope`, the measured decay exponent.
    pub beta_hat: f64,
    pub evaluations: u64,
    pub depth_capped: bool,
}

/// Fit the decay exponent along one frequency axis over a geometric grid.
pub fn fit_decay_exponent(
    phase: &Polynomial,
    blocks: &BlockStructure,
    direction: usize,
    lambda_range: (f64, f64),
    grid_points: usize,
    opts: &FourierOptions,
) -> Result<DecayFit, OracleError> {
    let dim = phase.dimension();
    assert!((1..=dim + 1).contains(&direction), "direction must be in 1..=n+1");
    if grid_points < 8 {
        return Err(OracleError::LambdaGridTooSmall { required: 8, got: grid_points });
    }
    let (lmin, lmax) = lambda_range;
    let lambdas: Vec<f64> = (0..grid_points)
        .map(|i| lmin * (lmax / lmin).powf(i as f64 / (grid_points - 1) as f64))
        .collect();

    // kernel mass for the noise floor
    let mass = estimate_fourier_transform(phase, blocks, &vec![0.0; dim + 1], opts)?;
    let mut magnitudes = Vec::with_capacity(lambdas.len());
    let mut abs_errs = Vec::with_capacity(lambdas.len());
    let mut evaluations = mass.evaluations;
    let mut depth_capped = mass.depth_capped;
    for &l in &lambdas {
        let mut lambda = vec![0.0; dim + 1];
        lambda[direction - 1] = l;
        let est = estimate_fourier_transform(phase, blocks, &lambda, opts)?;
        magnitudes.push(est.value.norm());
        abs_errs.push(est.abs_err);
        evaluations += est.evaluations;
        depth_capped |= est.depth_capped;
    }

    let floor = 1e-9 * mass.value.norm();
    let usable: Vec<bool> = magnitudes
        .iter()
        .zip(abs_errs.iter())
        .map(|(&m, &e)| m > floor && m > 3.0 * e)
        .collect();
    let truncated = usable.iter().any(|&u| !u);
    let n_usable = usable.iter().filter(|&&u| u).count();
    if n_usable < 4 {
        return Err(OracleError::NoiseFloor { usable: n_usable, total: lambdas.len() });
    }
    let xs: Vec<f64> = lambdas
        .iter()
        .zip(usable.iter())
        .filter(|(_, &u)| u)
        .map(|(&l, _)| l.ln())
        .collect();
    let ys: Vec<f64> = magnitudes
        .iter()
        .zip(usable.iter())
        .filter(|(_, &u)| u)
        .map(|(&m, _)| m.ln())
        .collect();
    let (slope, _, residual) = fit_line(&xs, &ys);
    Ok(DecayFit {
        direction,
        lambdas,
        magnitudes,
        abs_errs,
        usable,
        truncated,
        fitted_slope: slope,
        fit_residual: residual,
        beta_hat: -slope,
        evaluations,
        depth_capped,
    })
}
