//! Vanishing order of compact-face polynomials on the punctured torus
//! `(R \ {0})^n`: exact for two variables with integer exponents (edge
//! polynomials reduce to univariate multiplicity questions), estimated by a
//! slope oracle otherwise, with a user override available.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::newton::{Face, NewtonError, NewtonPolyhedron};
use crate::oracle::qmc;
use crate::poly::{ExponentVector, Polynomial};
use crate::rat::{self, to_f64};
use crate::univar::UniPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VanishingError {
    #[error("exact mode requires exactly two variables, got {0}")]
    NotTwoDimensional(usize),
    #[error("exact mode requires integer exponents")]
    NonIntegerExponents,
    #[error(transparent)]
    Newton(#[from] NewtonError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VanishingMode {
    Exact2d,
    SampledLowerBound,
    UserOverride,
}

impl VanishingMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            VanishingMode::Exact2d => "exact_2d",
            VanishingMode::SampledLowerBound => "sampled_lower_bound",
            VanishingMode::UserOverride => "user_override",
        }
    }
}

#[derive(Debug, Clone)]
pub enum WitnessLocation {
    /// Isolating interval for the edge-parameter root (exact mode).
    RootInterval { lo: BigRational, hi: BigRational },
    /// Approximate torus zero (sampled mode), given in signed coordinates.
    Point(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct VanishingWitness {
    pub face_vertices: Vec<ExponentVector>,
    pub sign_chart: Vec<i8>,
    pub location: WitnessLocation,
    pub multiplicity: u32,
    /// Raw fitted slope for sampled witnesses.
    pub slope: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct VanishingOrderResult {
    pub value: u32,
    pub mode: VanishingMode,
    pub witnesses: Vec<VanishingWitness>,
    /// Sampled slope fits disagreed with an integer order.
    pub uncertain: bool,
}

impl VanishingOrderResult {
    /// `max(o, 2)`, the clamp used throughout the boundedness region.
    pub fn clamped(&self) -> u32 {
        self.value.max(2)
    }
}

/// Sum of the terms of `p` whose exponents lie on the compact face `F`,
/// decided exactly through the face's normal witness.
pub fn face_polynomial(p: &Polynomial, face: &Face) -> Result<Polynomial, NewtonError> {
    if !face.is_compact || face.generating_vertices.is_empty() {
        return Err(NewtonError::NotAFace);
    }
    // The witness must attain its minimum over p's exponents exactly at the
    // face offset, and every generating vertex must be an exponent of p
    // achieving it; otherwise F is not a face of N(p).
    let value = |e: &ExponentVector| -> BigRational {
        face.normal_witness
            .iter()
            .zip(e.entries())
            .map(|(w, x)| w * x)
            .sum()
    };
    let mut min: Option<BigRational> = None;
    for term in p.terms() {
        let v = value(&term.exponents);
        if min.as_ref().is_none_or(|m| v < *m) {
            min = Some(v);
        }
    }
    let Some(min) = min else {
        return Err(NewtonError::EmptyPolynomial);
    };
    if min != face.witness_offset {
        return Err(NewtonError::NotAFace);
    }
    for gv in &face.generating_vertices {
        let present = p
            .terms()
            .iter()
            .any(|t| t.exponents == *gv && value(&t.exponents) == min);
        if !present {
            return Err(NewtonError::NotAFace);
        }
    }
    let picked: Vec<_> = p
        .terms()
        .iter()
        .filter(|t| value(&t.exponents) == face.witness_offset)
        .map(|t| (t.coefficient.clone(), t.exponents.clone()))
        .collect();
    Ok(Polynomial::new(p.dimension(), picked).expect("terms of a valid polynomial"))
}

/// Exact vanishing order for `n = 2` with integer exponents.
///
/// Vertices contribute zero. On a compact edge with primitive direction `d`,
/// the face polynomial factors through `w = t^d`, so its torus zeros come
/// from nonzero real roots of a univariate polynomial; all four quadrant
/// sign charts are checked and multiplicities are read off the square-free
/// decomposition, with root existence decided by Sturm sequences.
pub fn vanishing_order_exact_2d(p: &Polynomial) -> Result<VanishingOrderResult, VanishingError> {
    if p.dimension() != 2 {
        return Err(VanishingError::NotTwoDimensional(p.dimension()));
    }
    if !p.all_integer_exponents() {
        return Err(VanishingError::NonIntegerExponents);
    }
    let np = NewtonPolyhedron::from_polynomial(p)?;
    let mut best = 0u32;
    let mut witnesses = Vec::new();

    for face in np.compact_faces() {
        if face.dim == 0 {
            continue; // a vertex carries a single monomial, zero-free on the torus
        }
        let a = face.generating_vertices.first().unwrap();
        let b = face.generating_vertices.last().unwrap();
        let da = exponent_to_bigints(a);
        let db = exponent_to_bigints(b);
        let diff: Vec<BigInt> = db.iter().zip(da.iter()).map(|(x, y)| x - y).collect();
        let g = diff[0].gcd(&diff[1]);
        let steps = g.to_u32().expect("edge lattice length fits in u32");
        let step: Vec<BigInt> = diff.iter().map(|x| x / &g).collect();

        // coefficient ladder c_k at A + k*step
        let mut ladder = vec![BigRational::zero(); steps as usize + 1];
        for term in p.terms() {
            let e = exponent_to_bigints(&term.exponents);
            if let Some(k) = ladder_index(&da, &step, &e, steps) {
                ladder[k as usize] = term.coefficient.clone();
            }
        }

        for chart in [[1i8, 1], [-1, 1], [1, -1], [-1, -1]] {
            let coeffs: Vec<BigRational> = ladder
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let e0 = &da[0] + &step[0] * BigInt::from(k);
                    let e1 = &da[1] + &step[1] * BigInt::from(k);
                    let s = chart_sign(chart[0], &e0) * chart_sign(chart[1], &e1);
                    if s < 0 {
                        -c
                    } else {
                        c.clone()
                    }
                })
                .collect();
            let gpoly = UniPoly::new(coeffs);
            debug_assert!(!gpoly.constant_term().is_zero(), "endpoints are vertices of N(p)");
            for (factor, mult) in gpoly.squarefree_decomposition() {
                if factor.constant_term().is_zero() {
                    continue; // w = 0 is off the torus
                }
                if factor.count_positive_roots() > 0 {
                    let mult = mult as u32;
                    if mult >= best {
                        let (lo, hi) = factor
                            .isolate_positive_root(&rat::ratio(1, 1 << 12))
                            .expect("positive root exists");
                        witnesses.push(VanishingWitness {
                            face_vertices: face.generating_vertices.clone(),
                            sign_chart: chart.to_vec(),
                            location: WitnessLocation::RootInterval { lo, hi },
                            multiplicity: mult,
                        slope: None,
                        });
                        best = best.max(mult);
                    }
                }
            }
        }
    }
    witnesses.retain(|w| w.multiplicity == best && best > 0);
    Ok(VanishingOrderResult {
        value: best,
        mode: VanishingMode::Exact2d,
        witnesses,
        uncertain: false,
    })
}

fn exponent_to_bigints(e: &ExponentVector) -> Vec<BigInt> {
    e.entries()
        .iter()
        .map(|x| {
            debug_assert!(rat::is_integer(x));
            x.numer().clone()
        })
        .collect()
}

/// If `e = a + k * step` for an integer `0 <= k <= steps`, return `k`.
fn ladder_index(a: &[BigInt], step: &[BigInt], e: &[BigInt], steps: u32) -> Option<u32> {
    let axis = if step[0].is_zero() { 1 } else { 0 };
    let num = &e[axis] - &a[axis];
    let (k, rem) = num.div_rem(&step[axis]);
    if !rem.is_zero() || k.is_negative() {
        return None;
    }
    let k = k.to_u32()?;
    if k > steps {
        return None;
    }
    for i in 0..a.len() {
        if &a[i] + &step[i] * BigInt::from(k) != e[i] {
            return None;
        }
    }
    Some(k)
}

fn chart_sign(s: i8, e: &BigInt) -> i8 {
    if s > 0 || e.is_even() {
        1
    } else {
        -1
    }
}

/// Heuristic lower bound for `n >= 2`: per compact face, locate approximate
/// torus zeros of the face polynomial on the slice `t_n = 1` (dilation
/// invariance of face polynomials puts a representative of every zero orbit
/// there) and estimate the local order from log-log slopes along random
/// lines. May under-report; never claims exactness.
pub fn vanishing_order_sampled(p: &Polynomial, resolution: usize) -> Result<VanishingOrderResult, VanishingError> {
    let n = p.dimension();
    let np = NewtonPolyhedron::from_polynomial(p)?;
    let signed = p.all_integer_exponents();
    let charts = sign_charts(n, signed);

    let mut best = 0u32;
    let mut witnesses: Vec<VanishingWitness> = Vec::new();
    let mut uncertain = false;

    for face in np.compact_faces() {
        if face.dim == 0 {
            continue;
        }
        let fpoly = face_polynomial(p, &face)?;
        for chart in &charts {
            let chart_poly = apply_chart(&fpoly, chart);
            let zeros = find_positive_zeros(&chart_poly, resolution);
            for z in zeros {
                let (slope, ok) = order_slope(&chart_poly, &z);
                let mult = slope.round().max(0.0) as u32;
                if !ok {
                    uncertain = true;
                }
                if mult >= best && mult > 0 {
                    let signed_point: Vec<f64> =
                        z.iter().zip(chart.iter()).map(|(&x, &s)| x * s as f64).collect();
                    witnesses.push(VanishingWitness {
                        face_vertices: face.generating_vertices.clone(),
                        sign_chart: chart.clone(),
                        location: WitnessLocation::Point(signed_point),
                        multiplicity: mult,
                        slope: Some(slope),
                    });
                    best = best.max(mult);
                }
            }
        }
    }
    witnesses.retain(|w| w.multiplicity == best && best > 0);
    Ok(VanishingOrderResult {
        value: best,
        mode: VanishingMode::SampledLowerBound,
        witnesses,
        uncertain,
    })
}

fn sign_charts(n: usize, signed: bool) -> Vec<Vec<i8>> {
    if !signed {
        return vec![vec![1; n]];
    }
    (0..1usize << n)
        .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { -1i8 } else { 1 }).collect())
        .collect()
}

/// Fold a sign chart into the coefficients (valid for integer exponents):
/// `f_chart(x) = f(s1 x1, ..., sn xn)` for `x > 0`.
fn apply_chart(p: &Polynomial, chart: &[i8]) -> Polynomial {
    let terms = p
        .terms()
        .iter()
        .map(|t| {
            let mut c = t.coefficient.clone();
            for (i, e) in t.exponents.entries().iter().enumerate() {
                if chart[i] < 0 && rat::is_integer(e) && e.numer().is_odd() {
                    c = -c;
                }
            }
            (c, t.exponents.clone())
        })
        .collect();
    Polynomial::new(p.dimension(), terms).expect("chart transform keeps terms valid")
}

/// Magnitude scale `sum |c| |x^a|` used for relative zero thresholds.
fn magnitude_scale(p: &Polynomial, x: &[f64]) -> f64 {
    let mut acc = 0.0;
    for t in p.terms() {
        let mut m = to_f64(&t.coefficient).abs();
        for (i, e) in t.exponents.entries().iter().enumerate() {
            if !e.is_zero() {
                m *= x[i].abs().powf(to_f64(e));
            }
        }
        acc += m;
    }
    acc.max(f64::MIN_POSITIVE)
}

const ZERO_REL_TOL: f64 = 1e-10;

/// Search the slice `x_n = 1` of the positive orthant for zeros of `p`.
fn find_positive_zeros(p: &Polynomial, resolution: usize) -> Vec<Vec<f64>> {
    let n = p.dimension();
    let slice_dim = n - 1;
    let eval = |slice: &[f64]| -> f64 {
        let mut x: Vec<f64> = slice.to_vec();
        x.push(1.0);
        p.evaluate(&x).unwrap_or(f64::INFINITY)
    };
    let mut zeros: Vec<Vec<f64>> = Vec::new();
    let mut push_zero = |pt: Vec<f64>| {
        let dup = zeros.iter().any(|z| {
            z.iter()
                .zip(pt.iter())
                .all(|(a, b)| (a - b).abs() <= 1e-4 * (1.0 + a.abs()))
        });
        if !dup {
            zeros.push(pt);
        }
    };

    if slice_dim == 0 {
        // single point x = (1); a face polynomial in one variable is a
        // monomial ladder handled by callers, but stay total anyway
        let x = vec![1.0];
        if p.evaluate(&x).unwrap_or(1.0).abs() <= ZERO_REL_TOL * magnitude_scale(p, &x) {
            push_zero(x);
        }
        return zeros;
    }

    let starts = resolution.max(32);
    if slice_dim == 1 {
        // dense log grid + sign-change bisection + |f| minima polish
        let grid: Vec<f64> = (0..starts)
            .map(|i| {
                let u = i as f64 / (starts - 1) as f64;
                10f64.powf(-4.0 + 8.0 * u)
            })
            .collect();
        let vals: Vec<f64> = grid.iter().map(|&x| eval(&[x])).collect();
        for i in 0..grid.len() - 1 {
            if vals[i] == 0.0 {
                push_zero(vec![grid[i], 1.0]);
                continue;
            }
            if vals[i].signum() != vals[i + 1].signum() && vals[i].is_finite() && vals[i + 1].is_finite() {
                let (mut lo, mut hi) = (grid[i], grid[i + 1]);
                for _ in 0..90 {
                    let mid = 0.5 * (lo + hi);
                    if eval(&[mid]).signum() == eval(&[lo]).signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                push_zero(vec![0.5 * (lo + hi), 1.0]);
            }
        }
        // even-order zeros: polish local minima of |f|
        for i in 1..grid.len() - 1 {
            if vals[i].abs() < vals[i - 1].abs() && vals[i].abs() <= vals[i + 1].abs() {
                let obj = |s: &[f64]| eval(&[s[0].exp()]).abs();
                let (bestlog, _) = nelder_mead(&obj, &[grid[i].ln()], 0.3, 260);
                let x = bestlog[0].exp();
                let full = [x, 1.0];
                if eval(&[x]).abs() <= ZERO_REL_TOL * magnitude_scale(p, &full) {
                    push_zero(full.to_vec());
                }
            }
        }
    } else {
        // multistart Nelder-Mead in log coordinates
        let obj = |s: &[f64]| {
            let x: Vec<f64> = s.iter().map(|&l| l.exp()).collect();
            let mut full = x.clone();
            full.push(1.0);
            p.evaluate(&full).unwrap_or(f64::INFINITY).abs()
        };
        for k in 0..starts {
            let u = qmc::halton_point(slice_dim, k as u64 + 1);
            let start: Vec<f64> = u.iter().map(|&v| (-2.0 + 4.0 * v) * std::f64::consts::LN_10).collect();
            let (s1, v1) = nelder_mead(&obj, &start, 1.0, 220);
            let (s2, v2) = nelder_mead(&obj, &s1, 1e-3, 220);
            let (slog, val) = if v2 < v1 { (s2, v2) } else { (s1, v1) };
            let x: Vec<f64> = slog.iter().map(|&l| l.exp()).collect();
            let mut full = x.clone();
            full.push(1.0);
            if val <= ZERO_REL_TOL * magnitude_scale(p, &full) {
                push_zero(full);
            }
        }
    }
    zeros
}

/// Log-log slope of |p| along random lines through an approximate zero; the
/// minimum over directions estimates the order along a generic line. The
/// boolean reports whether the fit looked like a clean integer order.
fn order_slope(p: &Polynomial, zero: &[f64]) -> (f64, bool) {
    let n = p.dimension();
    let min_coord = zero.iter().cloned().fold(f64::INFINITY, f64::min);
    let h_max = 0.05 * min_coord.min(1.0);
    let h_min = h_max * 1e-3;
    // samples whose value saturates at the residual of the located zero
    // flatten the fit for high-order zeros; cut them away
    let saturation = 30.0 * p.evaluate(zero).unwrap_or(0.0).abs();
    let mut best = f64::INFINITY;
    let mut clean = false;
    let mut dir_index = 0u64;
    let mut found_dirs = 0;
    while found_dirs < 6 && dir_index < 200 {
        dir_index += 1;
        let u = qmc::halton_point(n, dir_index + 17);
        let mut v: Vec<f64> = u.iter().map(|&x| 2.0 * x - 1.0).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 0.1 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        found_dirs += 1;

        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let steps = 18;
        for i in 0..steps {
            let h = h_min * (h_max / h_min).powf(i as f64 / (steps - 1) as f64);
            let pt: Vec<f64> = zero.iter().zip(v.iter()).map(|(z, d)| z + h * d).collect();
            if pt.iter().any(|&c| c <= 0.0) {
                continue;
            }
            let f = p.evaluate(&pt).unwrap_or(0.0).abs();
            // termwise evaluation cancels near the zero set; values inside
            // the cancellation noise carry no slope information
            let noise = 128.0 * f64::EPSILON * magnitude_scale(p, &pt);
            if f > noise && f > saturation {
                xs.push(h.ln());
                ys.push(f.ln());
            }
        }
        if xs.len() < 8 {
            continue;
        }
        let (slope, _, resid) = crate::oracle::fit::fit_line(&xs, &ys);
        if slope < best {
            best = slope;
            clean = resid < 0.2 && (slope - slope.round()).abs() < 0.3;
        }
    }
    if best.is_infinite() {
        (0.0, false)
    } else {
        (best, clean)
    }
}

/// Nelder-Mead on `R^d`, minimizing `f`; returns the best point and value.
fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, start: &[f64], scale: f64, iters: usize) -> (Vec<f64>, f64) {
    let d = start.len();
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..d {
        let mut p = start.to_vec();
        p[i] += scale;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();
    for _ in 0..iters {
        // order ascending by value
        let mut idx: Vec<usize> = (0..simplex.len()).collect();
        idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
        let reorder: Vec<Vec<f64>> = idx.iter().map(|&i| simplex[i].clone()).collect();
        let revals: Vec<f64> = idx.iter().map(|&i| values[i]).collect();
        simplex = reorder;
        values = revals;

        let worst = simplex.len() - 1;
        let centroid: Vec<f64> = (0..d)
            .map(|j| simplex[..worst].iter().map(|p| p[j]).sum::<f64>() / worst as f64)
            .collect();
        let reflect: Vec<f64> = (0..d).map(|j| 2.0 * centroid[j] - simplex[worst][j]).collect();
        let fr = f(&reflect);
        if fr < values[0] {
            let expand: Vec<f64> = (0..d).map(|j| 3.0 * centroid[j] - 2.0 * simplex[worst][j]).collect();
            let fe = f(&expand);
            if fe < fr {
                simplex[worst] = expand;
                values[worst] = fe;
            } else {
                simplex[worst] = reflect;
                values[worst] = fr;
            }
        } else if worst > 0 && fr < values[worst - 1] {
            simplex[worst] = reflect;
            values[worst] = fr;
        } else {
            let contract: Vec<f64> = (0..d).map(|j| 0.5 * (centroid[j] + simplex[worst][j])).collect();
            let fc = f(&contract);
            if fc < values[worst] {
                simplex[worst] = contract;
                values[worst] = fc;
            } else {
                // shrink toward the best point
                for i in 1..simplex.len() {
                    for j in 0..d {
                        simplex[i][j] = 0.5 * (simplex[0][j] + simplex[i][j]);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
        if values.iter().cloned().fold(f64::INFINITY, f64::min) < 1e-300 {
            break;
        }
    }
    let mut bi = 0;
    for i in 1..values.len() {
        if values[i] < values[bi] {
            bi = i;
        }
    }
    (simplex[bi].clone(), values[bi])
}

/// Dispatch: user override wins; exact mode for two integer-exponent
/// variables; the sampled estimator otherwise.
pub fn order_of_s(p: &Polynomial, override_value: Option<u32>) -> Result<VanishingOrderResult, VanishingError> {
    if let Some(v) = override_value {
        return Ok(VanishingOrderResult {
            value: v,
            mode: VanishingMode::UserOverride,
            witnesses: Vec::new(),
            uncertain: false,
        });
    }
    if p.dimension() == 2 && p.all_integer_exponents() {
        return vanishing_order_exact_2d(p);
    }
    vanishing_order_sampled(p, 96)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::star_function;
    use crate::poly::parse_polynomial;
    use crate::rat::rat;

    fn p2(text: &str) -> Polynomial {
        parse_polynomial(text, 2).unwrap()
    }

    #[test]
    fn face_polynomial_examples() {
        // edge through (2,0),(1,1),(0,2) of (t1-t2)^2 + t1^5
        let p = p2("t1^2 - 2*t1*t2 + t2^2 + t1^5");
        let np = NewtonPolyhedron::from_polynomial(&p).unwrap();
        let edge = np
            .compact_faces()
            .into_iter()
            .find(|f| f.dim == 1)
            .expect("one compact edge");
        let fp = face_polynomial(&p, &edge).unwrap();
        assert_eq!(fp, p2("t1^2 - 2*t1*t2 + t2^2"));

        // vertex face of t1^2 + t2^2
        let p = p2("t1^2 + t2^2");
        let np = NewtonPolyhedron::from_polynomial(&p).unwrap();
        let vertex = np
            .compact_faces()
            .into_iter()
            .find(|f| f.dim == 0 && f.generating_vertices[0] == ExponentVector::from_ints(&[2, 0]))
            .unwrap();
        assert_eq!(face_polynomial(&p, &vertex).unwrap(), p2("t1^2"));

        // edge {(4,0),(1,1)} of t1^4 + t1*t2 + t2^4
        let p = p2("t1^4 + t1*t2 + t2^4");
        let np = NewtonPolyhedron::from_polynomial(&p).unwrap();
        let edge = np
            .compact_faces()
            .into_iter()
            .find(|f| {
                f.dim == 1
                    && f.generating_vertices.contains(&ExponentVector::from_ints(&[4, 0]))
                    && f.generating_vertices.contains(&ExponentVector::from_ints(&[1, 1]))
            })
            .unwrap();
        assert_eq!(face_polynomial(&p, &edge).unwrap(), p2("t1^4 + t1*t2"));
    }

    #[test]
    fn face_polynomial_rejects_foreign_face() {
        let p = p2("t1^2 + t2^2");
        let q = p2("t1^4 + t2^4");
        let nq = NewtonPolyhedron::from_polynomial(&q).unwrap();
        let edge = nq.compact_faces().into_iter().find(|f| f.dim == 1).unwrap();
        assert!(matches!(face_polynomial(&p, &edge), Err(NewtonError::NotAFace)));
    }

    #[test]
    fn exact_2d_examples() {
        assert_eq!(vanishing_order_exact_2d(&p2("t1^2 + t2^2")).unwrap().value, 0);
        let r = vanishing_order_exact_2d(&p2("t1^2 - 2*t1*t2 + t2^2")).unwrap();
        assert_eq!(r.value, 2);
        assert!(!r.witnesses.is_empty());
        // (t1 - t2)^3 + t1^7
        let r = vanishing_order_exact_2d(&p2("t1^3 - 3*t1^2*t2 + 3*t1*t2^2 - t2^3 + t1^7")).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(vanishing_order_exact_2d(&p2("t1*t2")).unwrap().value, 0);
    }

    #[test]
    fn exact_2d_sign_charts() {
        // (t1 + t2)^2 has its double zero in the (+,-) and (-,+) quadrants
        let r = vanishing_order_exact_2d(&p2("t1^2 + 2*t1*t2 + t2^2")).unwrap();
        assert_eq!(r.value, 2);
        let w = &r.witnesses[0];
        assert_eq!(w.sign_chart.iter().product::<i8>(), -1);
    }

    #[test]
    fn zero_value_means_no_witnesses() {
        let r = vanishing_order_exact_2d(&p2("t1^2 + t2^2")).unwrap();
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn sampled_agrees_on_plane_square() {
        let r = vanishing_order_sampled(&p2("t1^2 - 2*t1*t2 + t2^2"), 96).unwrap();
        assert_eq!(r.value, 2, "slope witness: {:?}", r.witnesses.first().map(|w| w.slope));
    }

    #[test]
    fn sampled_positive_definite_is_zero() {
        let p = parse_polynomial("t1^2 + t2^2 + t3^2", 3).unwrap();
        let r = vanishing_order_sampled(&p, 64).unwrap();
        assert_eq!(r.value, 0);
    }

    #[test]
    fn sampled_three_variable_square() {
        let p = parse_polynomial(
            "t1^2 + t2^2 + t3^2 + 2*t1*t2 + 2*t1*t3 + 2*t2*t3 + t1^8 + t2^8 + t3^8",
            3,
        )
        .unwrap();
        let r = vanishing_order_sampled(&p, 96).unwrap();
        assert_eq!(r.value, 2);
    }

    #[test]
    fn dispatch_rules() {
        let p = p2("t1^2 + t2^2");
        assert_eq!(order_of_s(&p, None).unwrap().mode, VanishingMode::Exact2d);
        assert_eq!(order_of_s(&p, None).unwrap().clamped(), 2);
        let r = order_of_s(&p, Some(5)).unwrap();
        assert_eq!(r.value, 5);
        assert_eq!(r.mode, VanishingMode::UserOverride);
        assert_eq!(r.clamped(), 5);
        let p3 = parse_polynomial("t1^2 + t2^2 + t3^2", 3).unwrap();
        assert_eq!(order_of_s(&p3, None).unwrap().mode, VanishingMode::SampledLowerBound);
    }

    #[test]
    fn monomial_order_zero() {
        for text in ["t1*t2", "t1^3", "t1^2*t2^5"] {
            assert_eq!(order_of_s(&p2(text), None).unwrap().value, 0, "{text}");
        }
    }

    #[test]
    fn star_polynomial_odd_edge_zero() {
        // The star polynomial t1^4 + t1 t2 + t2^4 has simple zeros on the
        // mixed-sign quadrants (the edge t1 t2 + t1^4 vanishes where
        // t2 = -t1^3), so its own order is 1.
        let p = p2("t1^4 + t1*t2 + t2^4");
        let s = star_function(&p).unwrap();
        let sp = Polynomial::new(
            2,
            s.vertex_exponents().iter().map(|e| (rat(1), e.clone())).collect(),
        )
        .unwrap();
        let r = vanishing_order_exact_2d(&sp).unwrap();
        assert_eq!(r.value, 1);
        assert!(r.witnesses.iter().all(|w| w.sign_chart.iter().product::<i8>() == -1));
    }
}
