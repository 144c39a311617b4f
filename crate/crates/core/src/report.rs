//! Machine-readable reports: the flat key-value analysis spec, the JSON
//! document types, CSV tables, and the entry points the CLI wraps.
//!
//! Exact rationals are serialized as `"p/q"` strings; floats appear only in
//! oracle-produced fields. Serialization order is fixed by the struct
//! declarations, so reports are byte-stable across runs and worker counts.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::newton::{Face, NewtonPolyhedron};
use crate::oracle::{
    fit_decay_exponent, fit_growth_exponents, DecayFit, FourierOptions, OracleError, SublevelFit,
    SublevelOptions,
};
use crate::pipeline::{analyze_all_permutations, ExponentResult, PipelineError, MAX_FACTORIAL_DIMENSION};
use crate::poly::{parse_polynomial, validate_input, BlockStructure, Polynomial};
use crate::rat::{self, parse_rat, to_f64};
use crate::theorem::{build_report, classify_point, SmoothingReport};
use crate::vanishing::{order_of_s, VanishingOrderResult, WitnessLocation};

// ---------------------------------------------------------------------------
// Analysis spec (text format and echo)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub r: BigRational,
    pub j_min: u32,
    pub j_max: u32,
    pub budget: u64,
    pub seed: u64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub lambda_points: usize,
    pub decay_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            r: rat::ratio(1, 2),
            j_min: 6,
            j_max: 24,
            budget: 10_000_000,
            seed: 0,
            lambda_min: 32.0,
            lambda_max: 4096.0,
            lambda_points: 10,
            decay_budget: 150_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisSpec {
    pub phase: String,
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
    pub alphas: Vec<BigRational>,
    pub o_override: Option<u32>,
    pub oracle: OracleConfig,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum RunError {
    /// Malformed or invalid spec (exit code 2).
    #[error("invalid spec: {0}")]
    Spec(String),
    /// Hypothesis violations found by validation (exit code 2).
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
    /// Problem size beyond the supported scale (exit code 3).
    #[error("unsupported scale: {0}")]
    Scale(String),
    /// Numerics could not reach a verdict (exit code 4).
    #[error("inconclusive numerics: {0}")]
    Inconclusive(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Spec(_) | RunError::Validation(_) => 2,
            RunError::Scale(_) => 3,
            RunError::Inconclusive(_) => 4,
        }
    }

    pub fn error_json(&self) -> String {
        let (kind, detail) = match self {
            RunError::Spec(m) => ("invalid_spec", m.clone()),
            RunError::Validation(v) => ("validation_failed", v.join("; ")),
            RunError::Scale(m) => ("unsupported_scale", m.clone()),
            RunError::Inconclusive(m) => ("inconclusive", m.clone()),
        };
        let doc = serde_json::json!({
            "error": kind,
            "detail": detail,
            "exit_code": self.exit_code(),
        });
        serde_json::to_string_pretty(&doc).expect("static document")
    }
}

impl From<OracleError> for RunError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::UnsupportedDimension(n) => RunError::Scale(format!("dimension {n} unsupported")),
            OracleError::BudgetTooSmall { .. } => RunError::Spec(e.to_string()),
            OracleError::JRangeTooNarrow { .. } | OracleError::LambdaGridTooSmall { .. } => {
                RunError::Spec(e.to_string())
            }
            OracleError::NonIntegerExponents => RunError::Spec(e.to_string()),
            OracleError::NonMonotone { .. }
            | OracleError::ResidualTooLarge { .. }
            | OracleError::NoiseFloor { .. }
            | OracleError::TooFewFitPoints { .. } => RunError::Inconclusive(e.to_string()),
        }
    }
}

impl From<PipelineError> for RunError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::TooManyVariables(..) => RunError::Scale(e.to_string()),
            other => RunError::Spec(other.to_string()),
        }
    }
}

impl AnalysisSpec {
    /// Parse the flat key-value spec document. Keys: `phase`, `n`, `blocks`,
    /// `alphas`, `o_override`, and `oracle.*`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, RunError> {
        let mut phase = None;
        let mut n = None;
        let mut blocks = None;
        let mut alphas = None;
        let mut o_override = None;
        let mut oracle = OracleConfig::default();

        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(RunError::Spec(format!("line {}: expected 'key = value'", lineno + 1)));
            };
            let key = key.trim();
            let value = value.trim();
            let ctx = |m: String| RunError::Spec(format!("line {}: {m}", lineno + 1));
            match key {
                "phase" => phase = Some(value.to_string()),
                "n" => n = Some(value.parse::<usize>().map_err(|e| ctx(format!("bad n: {e}")))?),
                "blocks" => blocks = Some(parse_blocks(value).map_err(ctx)?),
                "alphas" => {
                    let parsed: Result<Vec<_>, _> =
                        value.split(",").map(|s| parse_rat(s).map_err(&ctx)).collect();
                    alphas = Some(parsed?);
                }
                "o_override" => {
                    o_override =
                        Some(value.parse::<u32>().map_err(|e| ctx(format!("bad o_override: {e}")))?)
                }
                "oracle.r" => oracle.r = parse_rat(value).map_err(ctx)?,
                "oracle.j_min" => oracle.j_min = value.parse().map_err(|e| ctx(format!("bad j_min: {e}")))?,
                "oracle.j_max" => oracle.j_max = value.parse().map_err(|e| ctx(format!("bad j_max: {e}")))?,
                "oracle.budget" => oracle.budget = value.parse().map_err(|e| ctx(format!("bad budget: {e}")))?,
                "oracle.seed" => oracle.seed = value.parse().map_err(|e| ctx(format!("bad seed: {e}")))?,
                "oracle.lambda_min" => {
                    oracle.lambda_min = value.parse().map_err(|e| ctx(format!("bad lambda_min: {e}")))?
                }
                "oracle.lambda_max" => {
                    oracle.lambda_max = value.parse().map_err(|e| ctx(format!("bad lambda_max: {e}")))?
                }
                "oracle.lambda_points" => {
                    oracle.lambda_points =
                        value.parse().map_err(|e| ctx(format!("bad lambda_points: {e}")))?
                }
                "oracle.decay_budget" => {
                    oracle.decay_budget =
                        value.parse().map_err(|e| ctx(format!("bad decay_budget: {e}")))?
                }
                other => return Err(RunError::Spec(format!("line {}: unknown key '{other}'", lineno + 1))),
            }
        }

        let phase = phase.ok_or_else(|| RunError::Spec("missing key 'phase'".into()))?;
        let n = n.ok_or_else(|| RunError::Spec("missing key 'n'".into()))?;
        let blocks = blocks.unwrap_or_else(|| (1..=n).map(|i| vec![i]).collect());
        let alphas = alphas.unwrap_or_else(|| vec![BigRational::from_integer(0.into()); blocks.len()]);
        Ok(AnalysisSpec { phase, n, blocks, alphas, o_override, oracle })
    }

    /// Build the polynomial and block structure, reporting hypothesis
    /// violations.
    pub fn build(&self) -> Result<(Polynomial, BlockStructure), RunError> {
        let poly = parse_polynomial(&self.phase, self.n).map_err(|e| RunError::Spec(e.to_string()))?;
        let blocks = BlockStructure::from_one_based(self.n, self.blocks.clone(), self.alphas.clone())
            .map_err(|e| RunError::Spec(e.to_string()))?;
        let report = validate_input(&poly, &blocks);
        if !report.passed() {
            return Err(RunError::Validation(
                report.violations.iter().map(|v| v.to_string()).collect(),
            ));
        }
        Ok((poly, blocks))
    }

    pub fn echo(&self, canonical_phase: &str) -> SpecEcho {
        SpecEcho {
            phase: canonical_phase.to_string(),
            n: self.n,
            blocks: self.blocks.clone(),
            alphas: self.alphas.iter().map(|a| a.to_string()).collect(),
            o_override: self.o_override,
            oracle: OracleEcho {
                r: self.oracle.r.to_string(),
                j_min: self.oracle.j_min,
                j_max: self.oracle.j_max,
                budget: self.oracle.budget,
                seed: self.oracle.seed,
                lambda_min: self.oracle.lambda_min,
                lambda_max: self.oracle.lambda_max,
                lambda_points: self.oracle.lambda_points,
                decay_budget: self.oracle.decay_budget,
            },
        }
    }

    /// Rebuild a spec from a report echo (used by the round-trip check).
    pub fn from_echo(echo: &SpecEcho) -> Result<Self, RunError> {
        let alphas: Result<Vec<_>, _> = echo.alphas.iter().map(|s| parse_rat(s)).collect();
        Ok(AnalysisSpec {
            phase: echo.phase.clone(),
            n: echo.n,
            blocks: echo.blocks.clone(),
            alphas: alphas.map_err(RunError::Spec)?,
            o_override: echo.o_override,
            oracle: OracleConfig {
                r: parse_rat(&echo.oracle.r).map_err(RunError::Spec)?,
                j_min: echo.oracle.j_min,
                j_max: echo.oracle.j_max,
                budget: echo.oracle.budget,
                seed: echo.oracle.seed,
                lambda_min: echo.oracle.lambda_min,
                lambda_max: echo.oracle.lambda_max,
                lambda_points: echo.oracle.lambda_points,
                decay_budget: echo.oracle.decay_budget,
            },
        })
    }
}

fn parse_blocks(value: &str) -> Result<Vec<Vec<usize>>, String> {
    // `[1,3], [2]`
    let mut out = Vec::new();
    let trimmed = value.trim();
    if trimmed.is_empty() {
        return Err("empty blocks".into());
    }
    let mut rest = trimmed;
    while !rest.is_empty() {
        let Some(open) = rest.find('[') else {
            return Err("expected '['".into());
        };
        let Some(close_rel) = rest[open..].find(']') else {
            return Err("missing ']'".into());
        };
        let inner = &rest[open + 1..open + close_rel];
        let idxs: Result<Vec<usize>, _> = inner
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|e| format!("bad block index: {e}")))
            .collect();
        out.push(idxs?);
        rest = rest[open + close_rel + 1..].trim_start_matches([' ', ',']);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// JSON document types
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SpecEcho {
    pub phase: String,
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
    pub alphas: Vec<String>,
    pub o_override: Option<u32>,
    pub oracle: OracleEcho,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OracleEcho {
    pub r: String,
    pub j_min: u32,
    pub j_max: u32,
    pub budget: u64,
    pub seed: u64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub lambda_points: usize,
    pub decay_budget: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FacetDto {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FaceDto {
    pub dim: usize,
    pub compact: bool,
    pub vertices: Vec<Vec<String>>,
    pub recession_directions: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NewtonSection {
    pub vertices: Vec<Vec<String>>,
    pub facets: Vec<FacetDto>,
    pub distance: String,
    pub diagonal_face: FaceDto,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WitnessLocationDto {
    RootInterval { lo: String, hi: String },
    Point { coords: Vec<f64> },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessDto {
    pub face_vertices: Vec<Vec<String>>,
    pub sign_chart: Vec<i8>,
    pub location: WitnessLocationDto,
    pub multiplicity: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VanishingDto {
    pub value: u32,
    pub clamped: u32,
    pub mode: String,
    pub uncertain: bool,
    pub witnesses: Vec<WitnessDto>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PermutationDto {
    pub sigma: Vec<usize>,
    pub block_maxima: Vec<usize>,
    pub beta: Vec<String>,
    pub w: Vec<Vec<String>>,
    pub x: Vec<Vec<String>>,
    pub star_vertices: Vec<Vec<String>>,
    pub d_l: String,
    pub a_l: String,
    pub diagonal_face_dim: usize,
    pub d_l_log: usize,
    pub diagonal_face_compact: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RegionDto {
    pub shape: String,
    pub vertices: Vec<[String; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SharpnessDto {
    pub upper_bound_beta: Option<String>,
    pub sharp_p_interval: Option<[String; 2]>,
    pub caveats: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub spec: SpecEcho,
    pub newton: NewtonSection,
    pub star_exponents: Vec<Vec<String>>,
    pub vanishing_order: VanishingDto,
    pub permutations: Vec<PermutationDto>,
    pub a0: String,
    pub d0: usize,
    pub noncompact_flag: bool,
    pub g: String,
    pub region: RegionDto,
    pub sharpness: SharpnessDto,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SublevelRow {
    pub j: u32,
    pub epsilon: f64,
    pub measure: f64,
    pub rel_err: f64,
    pub used: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifySublevelReport {
    pub spec: SpecEcho,
    pub predicted_a0: String,
    pub predicted_d0: usize,
    pub fitted_a: f64,
    pub fitted_d: f64,
    pub fitted_c: f64,
    pub residual: f64,
    pub tol_a: f64,
    pub a_ok: bool,
    pub d_ok: bool,
    pub pass: bool,
    pub evaluations: u64,
    pub table: Vec<SublevelRow>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DecayRow {
    pub lambda: f64,
    pub magnitude: f64,
    pub rel_err: f64,
    pub usable: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyDecayReport {
    pub spec: SpecEcho,
    pub direction: usize,
    pub fitted_slope: f64,
    pub beta_hat: f64,
    pub fit_residual: f64,
    pub floor: f64,
    pub ceiling: Option<f64>,
    pub floor_ok: bool,
    pub ceiling_ok: bool,
    pub consistent: bool,
    pub truncated: bool,
    pub depth_capped: bool,
    pub evaluations: u64,
    pub table: Vec<DecayRow>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub spec: SpecEcho,
    pub p: String,
    pub p_recip: String,
    pub beta: String,
    pub verdict: String,
    pub g: String,
    pub a0: String,
    pub d0: usize,
    pub o_value: u32,
    pub o_mode: String,
    pub caveats: Vec<String>,
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

fn rational_vec(entries: &[BigRational]) -> Vec<String> {
    entries.iter().map(|e| e.to_string()).collect()
}

fn exponent_rows(list: &[crate::poly::ExponentVector]) -> Vec<Vec<String>> {
    list.iter().map(|e| rational_vec(e.entries())).collect()
}

fn face_dto(face: &Face) -> FaceDto {
    FaceDto {
        dim: face.dim,
        compact: face.is_compact,
        vertices: face
            .generating_vertices
            .iter()
            .map(|v| rational_vec(v.entries()))
            .collect(),
        recession_directions: face.recession_directions.iter().map(|i| i + 1).collect(),
    }
}

fn vanishing_dto(order: &VanishingOrderResult) -> VanishingDto {
    VanishingDto {
        value: order.value,
        clamped: order.clamped(),
        mode: order.mode.as_str().to_string(),
        uncertain: order.uncertain,
        witnesses: order
            .witnesses
            .iter()
            .map(|w| WitnessDto {
                face_vertices: exponent_rows(&w.face_vertices),
                sign_chart: w.sign_chart.clone(),
                location: match &w.location {
                    WitnessLocation::RootInterval { lo, hi } => WitnessLocationDto::RootInterval {
                        lo: lo.to_string(),
                        hi: hi.to_string(),
                    },
                    WitnessLocation::Point(p) => WitnessLocationDto::Point { coords: p.clone() },
                },
                multiplicity: w.multiplicity,
                slope: w.slope,
            })
            .collect(),
    }
}

struct Analysis {
    poly: Polynomial,
    blocks: BlockStructure,
    newton: NewtonPolyhedron,
    exponents: ExponentResult,
    order: VanishingOrderResult,
    smoothing: SmoothingReport,
}

fn analyze_core(spec: &AnalysisSpec) -> Result<Analysis, RunError> {
    if spec.n > MAX_FACTORIAL_DIMENSION {
        return Err(RunError::Scale(format!(
            "n = {} exceeds the supported limit {MAX_FACTORIAL_DIMENSION}",
            spec.n
        )));
    }
    let (poly, blocks) = spec.build()?;
    let newton = NewtonPolyhedron::from_polynomial(&poly).map_err(|e| RunError::Spec(e.to_string()))?;
    let star = crate::newton::star_function(&poly).map_err(|e| RunError::Spec(e.to_string()))?;
    let exponents = analyze_all_permutations(&star, &blocks)?;
    let order = order_of_s(&poly, spec.o_override).map_err(|e| RunError::Spec(e.to_string()))?;
    let smoothing = build_report(&exponents, &order, &blocks);
    Ok(Analysis { poly, blocks, newton, exponents, order, smoothing })
}

pub fn run_analyze(spec: &AnalysisSpec) -> Result<AnalyzeReport, RunError> {
    let a = analyze_core(spec)?;
    let diag = a.newton.minimal_face_at_diagonal();
    let permutations = a
        .exponents
        .per_permutation
        .iter()
        .map(|r| PermutationDto {
            sigma: r.sigma.iter().map(|i| i + 1).collect(),
            block_maxima: r.block_maxima.clone(),
            beta: rational_vec(&r.beta),
            w: exponent_rows(&r.w_exponents),
            x: exponent_rows(&r.x_exponents),
            star_vertices: exponent_rows(r.star_transformed.vertex_exponents()),
            d_l: r.d_l.to_string(),
            a_l: r.a_l.to_string(),
            diagonal_face_dim: r.diagonal_face_dim,
            d_l_log: r.d_l_log,
            diagonal_face_compact: r.diagonal_face_compact,
        })
        .collect();
    let region = RegionDto {
        shape: a.smoothing.region.shape.as_str().to_string(),
        vertices: a
            .smoothing
            .region
            .vertices
            .iter()
            .map(|(x, y)| [x.to_string(), y.to_string()])
            .collect(),
    };
    let sharpness = SharpnessDto {
        upper_bound_beta: a.smoothing.sharpness.upper_bound_beta.as_ref().map(|b| b.to_string()),
        sharp_p_interval: a
            .smoothing
            .sharpness
            .sharp_p_interval
            .as_ref()
            .map(|(lo, hi)| [lo.to_string(), hi.to_string()]),
        caveats: a.smoothing.sharpness.caveats.clone(),
    };
    Ok(AnalyzeReport {
        spec: spec.echo(&a.poly.to_text()),
        newton: NewtonSection {
            vertices: exponent_rows(a.newton.vertices()),
            facets: a
                .newton
                .facets()
                .iter()
                .map(|f| FacetDto { normal: rational_vec(&f.normal), offset: f.offset.to_string() })
                .collect(),
            distance: a.newton.newton_distance().to_string(),
            diagonal_face: face_dto(&diag),
        },
        star_exponents: exponent_rows(a.newton.vertices()),
        vanishing_order: vanishing_dto(&a.order),
        permutations,
        a0: a.exponents.a0.to_string(),
        d0: a.exponents.d0,
        noncompact_flag: a.exponents.noncompact_flag,
        g: a.smoothing.g.to_string(),
        region,
        sharpness,
    })
}

/// Residual ceiling for a conclusive growth fit (log2 RMS units).
pub const SUBLEVEL_RESIDUAL_LIMIT: f64 = 0.25;
/// Default tolerance on the fitted power.
pub const SUBLEVEL_TOL_A: f64 = 0.05;

pub fn run_verify_sublevel(spec: &AnalysisSpec) -> Result<(VerifySublevelReport, String), RunError> {
    if spec.n > 3 {
        return Err(RunError::Scale(format!("verify-sublevel supports n <= 3, got {}", spec.n)));
    }
    let a = analyze_core(spec)?;
    let star = crate::newton::star_function(&a.poly).map_err(|e| RunError::Spec(e.to_string()))?;
    let opts = SublevelOptions {
        r: to_f64(&spec.oracle.r),
        depth: None,
        budget: spec.oracle.budget,
        seed: spec.oracle.seed,
    };
    let fit: SublevelFit =
        fit_growth_exponents(&star, &a.blocks, spec.oracle.j_min, spec.oracle.j_max, &opts)?;
    if fit.residual > SUBLEVEL_RESIDUAL_LIMIT {
        return Err(RunError::Inconclusive(
            OracleError::ResidualTooLarge { residual: fit.residual, threshold: SUBLEVEL_RESIDUAL_LIMIT }
                .to_string(),
        ));
    }
    let a0_f = to_f64(&a.exponents.a0);
    let a_ok = (fit.fitted_a - a0_f).abs() <= SUBLEVEL_TOL_A;
    let d_ok = fit.fitted_d.round() as i64 == a.exponents.d0 as i64;
    let table: Vec<SublevelRow> = (0..fit.j_values.len())
        .map(|k| SublevelRow {
            j: fit.j_values[k],
            epsilon: fit.epsilons[k],
            measure: fit.measures[k],
            rel_err: fit.rel_errs[k],
            used: fit.used[k],
        })
        .collect();
    let csv = sublevel_csv(&table);
    let report = VerifySublevelReport {
        spec: spec.echo(&a.poly.to_text()),
        predicted_a0: a.exponents.a0.to_string(),
        predicted_d0: a.exponents.d0,
        fitted_a: fit.fitted_a,
        fitted_d: fit.fitted_d,
        fitted_c: fit.fitted_c,
        residual: fit.residual,
        tol_a: SUBLEVEL_TOL_A,
        a_ok,
        d_ok,
        pass: a_ok && d_ok,
        evaluations: fit.evaluations,
        table,
    };
    Ok((report, csv))
}

fn sublevel_csv(rows: &[SublevelRow]) -> String {
    let mut out = String::from("j,epsilon,measure,rel_err\n");
    for r in rows {
        out.push_str(&format!("{},{:.12e},{:.12e},{:.6e}\n", r.j, r.epsilon, r.measure, r.rel_err));
    }
    out
}

/// One-sided tolerances for the decay consistency verdict.
pub const DECAY_FLOOR_TOL: f64 = 0.15;
pub const DECAY_CEILING_TOL: f64 = 0.25;

pub fn run_verify_decay(
    spec: &AnalysisSpec,
    direction: usize,
    allow_3d: bool,
) -> Result<(VerifyDecayReport, String), RunError> {
    let a = analyze_core(spec)?;
    if spec.n > 3 || (spec.n == 3 && !allow_3d) {
        return Err(RunError::Scale(format!(
            "verify-decay supports n <= 2 (n = 3 behind --allow-3d-oscillatory), got {}",
            spec.n
        )));
    }
    if !(1..=spec.n + 1).contains(&direction) {
        return Err(RunError::Spec(format!(
            "direction {direction} outside 1..={}",
            spec.n + 1
        )));
    }
    let opts = FourierOptions {
        r: to_f64(&spec.oracle.r),
        budget: spec.oracle.decay_budget,
        ..Default::default()
    };
    let fit: DecayFit = fit_decay_exponent(
        &a.poly,
        &a.blocks,
        direction,
        (spec.oracle.lambda_min, spec.oracle.lambda_max),
        spec.oracle.lambda_points,
        &opts,
    )?;
    let floor = to_f64(&a.smoothing.region.apex_height());
    let is_phase_direction = direction == spec.n + 1;
    let ceiling = if is_phase_direction { Some(to_f64(&a.exponents.a0)) } else { None };
    let floor_ok = fit.beta_hat >= floor - DECAY_FLOOR_TOL;
    let ceiling_ok = match ceiling {
        Some(c) => fit.beta_hat <= c + DECAY_CEILING_TOL,
        None => true,
    };
    let table: Vec<DecayRow> = (0..fit.lambdas.len())
        .map(|k| DecayRow {
            lambda: fit.lambdas[k],
            magnitude: fit.magnitudes[k],
            rel_err: if fit.magnitudes[k] > 0.0 {
                fit.abs_errs[k] / fit.magnitudes[k]
            } else {
                f64::INFINITY
            },
            usable: fit.usable[k],
        })
        .collect();
    let csv = decay_csv(&table);
    let report = VerifyDecayReport {
        spec: spec.echo(&a.poly.to_text()),
        direction,
        fitted_slope: fit.fitted_slope,
        beta_hat: fit.beta_hat,
        fit_residual: fit.fit_residual,
        floor,
        ceiling,
        floor_ok,
        ceiling_ok,
        consistent: floor_ok && ceiling_ok,
        truncated: fit.truncated,
        depth_capped: fit.depth_capped,
        evaluations: fit.evaluations,
        table,
    };
    Ok((report, csv))
}

fn decay_csv(rows: &[DecayRow]) -> String {
    let mut out = String::from("lambda,magnitude,rel_err\n");
    for r in rows {
        out.push_str(&format!("{:.6e},{:.12e},{:.6e}\n", r.lambda, r.magnitude, r.rel_err));
    }
    out
}

pub fn run_classify(
    spec: &AnalysisSpec,
    p: &BigRational,
    beta: &BigRational,
) -> Result<ClassifyReport, RunError> {
    let a = analyze_core(spec)?;
    if *p <= BigRational::from_integer(1.into()) {
        return Err(RunError::Spec(format!("p = {p} must exceed 1")));
    }
    let p_recip = BigRational::from_integer(1.into()) / p;
    let verdict = classify_point(&p_recip, beta, &a.smoothing)
        .map_err(|e| RunError::Spec(e.to_string()))?;
    Ok(ClassifyReport {
        spec: spec.echo(&a.poly.to_text()),
        p: p.to_string(),
        p_recip: p_recip.to_string(),
        beta: beta.to_string(),
        verdict: verdict.as_str().to_string(),
        g: a.smoothing.g.to_string(),
        a0: a.exponents.a0.to_string(),
        d0: a.exponents.d0,
        o_value: a.order.value,
        o_mode: a.order.mode.as_str().to_string(),
        caveats: a.smoothing.sharpness.caveats.clone(),
    })
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization is infallible")
}
