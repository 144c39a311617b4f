//! Newton polyhedra over exact rationals: `N(f) = conv(points) + R+^n`.
//!
//! The H-description is computed with an incremental double-description run
//! on the cone of valid inequalities, seeded with the orthant rays. Vertex
//! minimality is decided independently by rational LP feasibility, so the
//! V- and H-descriptions cross-check each other.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lp::{self, LpOutcome};
use crate::poly::{ExponentVector, Polynomial, StarFunction};
use crate::rat::{lex_cmp, primitive_integer_vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NewtonError {
    #[error("polynomial has no terms")]
    EmptyPolynomial,
    #[error("too many candidate points ({0}); this tool is sized for desk-scale inputs")]
    TooManyPoints(usize),
    #[error("face does not belong to the Newton polyhedron of the polynomial")]
    NotAFace,
    #[error("sample radius must lie in (0, 1]")]
    BadSampleRadius,
}

/// Facet inequality `<normal, x> >= offset`, with `normal >= 0` componentwise
/// and equality attained on the facet. Scaled to primitive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigRational>,
    pub offset: BigRational,
}

impl Facet {
    fn eval(&self, x: &[BigRational]) -> BigRational {
        self.normal.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn active_at(&self, x: &[BigRational]) -> bool {
        self.eval(x) == self.offset
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        self.eval(x) >= self.offset
    }
}

/// A face of the polyhedron, represented by its generating vertices, its
/// recession directions, and an exposing witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Indices into `NewtonPolyhedron::vertices`, sorted.
    pub vertex_indices: Vec<usize>,
    /// Owned copies of the generating vertices.
    pub generating_vertices: Vec<ExponentVector>,
    /// Zero-based coordinate directions spanning the recession cone.
    pub recession_directions: Vec<usize>,
    pub dim: usize,
    pub is_compact: bool,
    /// `<normal_witness, .>` is minimized over the polyhedron exactly on this
    /// face; the zero vector for the whole polyhedron.
    pub normal_witness: Vec<BigRational>,
    /// The minimum value attained by the witness.
    pub witness_offset: BigRational,
    /// All facets containing the face.
    pub active_facets: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct NewtonPolyhedron {
    dimension: usize,
    candidate_points: Vec<ExponentVector>,
    vertices: Vec<ExponentVector>,
    facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    /// Newton polyhedron of a polynomial's exponent set.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self, NewtonError> {
        Self::from_points(p.dimension(), p.exponent_vectors())
    }

    /// `conv(points) + R+^n` for an explicit point set.
    pub fn from_points(dimension: usize, points: Vec<ExponentVector>) -> Result<Self, NewtonError> {
        if points.is_empty() {
            return Err(NewtonError::EmptyPolynomial);
        }
        let mut candidate_points = points;
        candidate_points.sort_by(|a, b| lex_cmp(a.entries(), b.entries()));
        candidate_points.dedup();
        if dimension + candidate_points.len() > 120 {
            return Err(NewtonError::TooManyPoints(candidate_points.len()));
        }

        let vertices = minimal_vertex_set(dimension, &candidate_points);
        let facets = facets_by_double_description(dimension, &candidate_points);
        Ok(NewtonPolyhedron { dimension, candidate_points, vertices, facets })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn candidate_points(&self) -> &[ExponentVector] {
        &self.candidate_points
    }

    /// Minimal generating set, sorted lexicographically.
    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Exact membership test for `x` in `conv(vertices) + R+^n`, decided by
    /// LP feasibility (independent of the facet description).
    pub fn contains(&self, x: &[BigRational]) -> bool {
        point_in_hull_plus_orthant(self.dimension, &self.vertices, x)
    }

    /// Newton distance: the least `c` with `(c,...,c)` in the polyhedron,
    /// solved as an exact rational linear program.
    pub fn newton_distance(&self) -> BigRational {
        let n = self.dimension;
        let nv = self.vertices.len();
        // variables: [c, lambda_1..lambda_nv, s_1..s_n]
        let cols = 1 + nv + n;
        let mut a = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut row = vec![BigRational::zero(); cols];
            row[0] = BigRational::one();
            for (j, v) in self.vertices.iter().enumerate() {
                row[1 + j] = -v.entry(i).clone();
            }
            row[1 + nv + i] = -BigRational::one();
            a.push(row);
        }
        let mut row = vec![BigRational::zero(); cols];
        for j in 0..nv {
            row[1 + j] = BigRational::one();
        }
        a.push(row);
        let mut b = vec![BigRational::zero(); n];
        b.push(BigRational::one());
        let mut cost = vec![BigRational::zero(); cols];
        cost[0] = BigRational::one();
        match lp::solve_min(&a, &b, &cost) {
            LpOutcome::Optimal { objective, .. } => objective,
            outcome => unreachable!("diagonal LP is feasible and bounded: {outcome:?}"),
        }
    }

    /// The diagonal point `(d,...,d)` at the Newton distance.
    pub fn diagonal_point(&self) -> Vec<BigRational> {
        let d = self.newton_distance();
        vec![d; self.dimension]
    }

    /// The unique minimal face containing the diagonal point: the
    /// intersection of all facets active there.
    pub fn minimal_face_at_diagonal(&self) -> Face {
        let x = self.diagonal_point();
        let active: Vec<usize> = (0..self.facets.len())
            .filter(|&j| self.facets[j].active_at(&x))
            .collect();
        self.face_from_active(&active)
            .expect("diagonal point lies on the polyhedron")
    }

    /// All faces, the whole polyhedron included, in canonical order.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen: std::collections::BTreeSet<(Vec<usize>, Vec<usize>)> = Default::default();
        let mut out: Vec<Face> = Vec::new();
        let mut queue: Vec<Face> = Vec::new();
        let top = self
            .face_from_active(&[])
            .expect("polyhedron is nonempty");
        seen.insert((top.vertex_indices.clone(), top.recession_directions.clone()));
        queue.push(top.clone());
        out.push(top);
        while let Some(face) = queue.pop() {
            for j in 0..self.facets.len() {
                if face.active_facets.contains(&j) {
                    continue;
                }
                let mut active = face.active_facets.clone();
                active.push(j);
                if let Some(child) = self.face_from_active(&active) {
                    let key = (child.vertex_indices.clone(), child.recession_directions.clone());
                    if seen.insert(key) {
                        queue.push(child.clone());
                        out.push(child);
                    }
                }
            }
        }
        out.sort_by(|a, b| {
            (a.dim, &a.vertex_indices, &a.recession_directions)
                .cmp(&(b.dim, &b.vertex_indices, &b.recession_directions))
        });
        out
    }

    /// Faces whose normal cone contains a strictly positive vector; every
    /// vertex appears as a zero-dimensional face.
    pub fn compact_faces(&self) -> Vec<Face> {
        self.faces().into_iter().filter(|f| f.is_compact).collect()
    }

    /// Build the face determined by a set of active facets. Returns `None`
    /// when the intersection is empty.
    fn face_from_active(&self, active: &[usize]) -> Option<Face> {
        let vertex_indices: Vec<usize> = (0..self.vertices.len())
            .filter(|&vi| {
                active
                    .iter()
                    .all(|&j| self.facets[j].active_at(self.vertices[vi].entries()))
            })
            .collect();
        if vertex_indices.is_empty() {
            return None;
        }
        let recession_directions: Vec<usize> = (0..self.dimension)
            .filter(|&i| active.iter().all(|&j| self.facets[j].normal[i].is_zero()))
            .collect();

        // Closure: every facet containing all generating vertices whose
        // normal also vanishes on the recession directions contains the face.
        let closed: Vec<usize> = (0..self.facets.len())
            .filter(|&j| {
                vertex_indices
                    .iter()
                    .all(|&vi| self.facets[j].active_at(self.vertices[vi].entries()))
                    && recession_directions.iter().all(|&i| self.facets[j].normal[i].is_zero())
            })
            .collect();

        let mut witness = vec![BigRational::zero(); self.dimension];
        let mut offset = BigRational::zero();
        for &j in &closed {
            for i in 0..self.dimension {
                witness[i] += &self.facets[j].normal[i];
            }
            offset += &self.facets[j].offset;
        }

        // dim = rank of {v - v0} together with the recession directions
        let v0 = self.vertices[vertex_indices[0]].entries();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for &vi in &vertex_indices[1..] {
            let v = self.vertices[vi].entries();
            rows.push((0..self.dimension).map(|i| &v[i] - &v0[i]).collect());
        }
        for &i in &recession_directions {
            let mut e = vec![BigRational::zero(); self.dimension];
            e[i] = BigRational::one();
            rows.push(e);
        }
        let dim = rational_rank(rows);

        Some(Face {
            generating_vertices: vertex_indices.iter().map(|&vi| self.vertices[vi].clone()).collect(),
            is_compact: recession_directions.is_empty(),
            vertex_indices,
            recession_directions,
            dim,
            normal_witness: witness,
            witness_offset: offset,
            active_facets: closed,
        })
    }
}

/// Vertices of `conv(points) + R+^n`: the points not expressible from the
/// others, decided per point by LP feasibility.
fn minimal_vertex_set(dimension: usize, points: &[ExponentVector]) -> Vec<ExponentVector> {
    let mut vertices = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let others: Vec<ExponentVector> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        if !point_in_hull_plus_orthant(dimension, &others, p.entries()) {
            vertices.push(p.clone());
        }
    }
    vertices
}

fn point_in_hull_plus_orthant(dimension: usize, generators: &[ExponentVector], x: &[BigRational]) -> bool {
    if generators.is_empty() {
        return false;
    }
    let nv = generators.len();
    let cols = nv + dimension;
    let mut a = Vec::with_capacity(dimension + 1);
    for i in 0..dimension {
        let mut row = vec![BigRational::zero(); cols];
        for (j, v) in generators.iter().enumerate() {
            row[j] = v.entry(i).clone();
        }
        row[nv + i] = BigRational::one();
        a.push(row);
    }
    let mut row = vec![BigRational::zero(); cols];
    for j in 0..nv {
        row[j] = BigRational::one();
    }
    a.push(row);
    let mut b: Vec<BigRational> = x.to_vec();
    b.push(BigRational::one());
    lp::feasible(&a, &b)
}

// ---------------------------------------------------------------------------
// Double description on the cone of valid inequalities
// ---------------------------------------------------------------------------

/// The valid inequalities `<w, x> >= c` of `conv(points) + R+^n` form a cone
/// in `(w, c)`-space cut out by `<p, w> - c >= 0` per point and `w_i >= 0`
/// per coordinate. Its extreme rays are the facets plus the trivial ray
/// `(0, -1)`, which is dropped.
fn facets_by_double_description(dimension: usize, points: &[ExponentVector]) -> Vec<Facet> {
    let m = dimension + 1;
    // constraint rows, in processing order: orthant rows then point rows
    let mut constraints: Vec<Vec<BigRational>> = Vec::with_capacity(dimension + points.len());
    for i in 0..dimension {
        let mut g = vec![BigRational::zero(); m];
        g[i] = BigRational::one();
        constraints.push(g);
    }
    for p in points {
        let mut g: Vec<BigRational> = p.entries().to_vec();
        g.push(-BigRational::one());
        constraints.push(g);
    }

    // Initial simplicial cone from the orthant rows and the first point row:
    // the constraint matrix [[I, 0], [p0, -1]] is its own inverse, so the
    // initial rays are its columns.
    let p0 = points[0].entries();
    let mut rays: Vec<Vec<BigRational>> = Vec::new();
    for j in 0..dimension {
        let mut r = vec![BigRational::zero(); m];
        r[j] = BigRational::one();
        r[dimension] = p0[j].clone();
        rays.push(r);
    }
    let mut trivial = vec![BigRational::zero(); m];
    trivial[dimension] = -BigRational::one();
    rays.push(trivial);

    let processed_init = dimension + 1; // orthant rows + first point row
    for step in processed_init..constraints.len() {
        let g = &constraints[step];
        let values: Vec<BigRational> = rays.iter().map(|r| dot(g, r)).collect();
        let mut kept: Vec<Vec<BigRational>> = Vec::new();
        let mut new_rays: Vec<Vec<BigRational>> = Vec::new();

        // tight sets over the constraints processed so far
        let masks: Vec<u128> = rays
            .iter()
            .map(|r| tight_mask(&constraints[..step], r))
            .collect();

        for (i, r) in rays.iter().enumerate() {
            if !values[i].is_negative() {
                kept.push(r.clone());
            }
        }
        for i in 0..rays.len() {
            if !values[i].is_positive() {
                continue;
            }
            for j in 0..rays.len() {
                if !values[j].is_negative() {
                    continue;
                }
                if !adjacent(&masks, i, j) {
                    continue;
                }
                // combo = values[i] * r_j - values[j] * r_i  (positive combo)
                let combo: Vec<BigRational> = (0..m)
                    .map(|k| &values[i] * &rays[j][k] - &values[j] * &rays[i][k])
                    .collect();
                let combo = normalize_ray(&combo);
                if !combo.iter().all(|x| x.is_zero()) {
                    new_rays.push(combo);
                }
            }
        }
        kept.extend(new_rays);
        kept = dedup_rays(kept);
        rays = kept;
    }

    let mut facets: Vec<Facet> = Vec::new();
    for r in &rays {
        let w = &r[..dimension];
        if w.iter().all(|x| x.is_zero()) {
            continue; // the trivial ray (0, -1)
        }
        let prim = primitive_integer_vector(r);
        let normal: Vec<BigRational> = prim[..dimension]
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let offset = BigRational::from_integer(prim[dimension].clone());
        facets.push(Facet { normal, offset });
    }
    facets.sort_by(|a, b| {
        lex_cmp(&a.normal, &b.normal).then_with(|| a.offset.cmp(&b.offset))
    });
    facets.dedup();
    facets
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn tight_mask(constraints: &[Vec<BigRational>], ray: &[BigRational]) -> u128 {
    let mut mask = 0u128;
    for (k, g) in constraints.iter().enumerate() {
        if dot(g, ray).is_zero() {
            mask |= 1u128 << k;
        }
    }
    mask
}

/// Combinatorial adjacency test: rays i and j are adjacent iff no third ray
/// is tight on every constraint both are tight on.
fn adjacent(masks: &[u128], i: usize, j: usize) -> bool {
    let common = masks[i] & masks[j];
    for (k, &m) in masks.iter().enumerate() {
        if k != i && k != j && common & !m == 0 {
            return false;
        }
    }
    true
}

fn normalize_ray(r: &[BigRational]) -> Vec<BigRational> {
    let prim = primitive_integer_vector(r);
    prim.into_iter().map(BigRational::from_integer).collect()
}

fn dedup_rays(mut rays: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    rays = rays.into_iter().map(|r| normalize_ray(&r)).collect();
    rays.sort_by(|a, b| lex_cmp(a, b));
    rays.dedup();
    rays
}

/// Rank of a rational matrix by Gaussian elimination.
pub(crate) fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &p;
                for j in col..cols {
                    let delta = &f * &rows[rank][j];
                    rows[i][j] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// The star function of a polynomial: `sum |t^v|` over the vertices of its
/// Newton polyhedron.
pub fn star_function(p: &Polynomial) -> Result<StarFunction, NewtonError> {
    let np = NewtonPolyhedron::from_polynomial(p)?;
    Ok(StarFunction::new(p.dimension(), np.vertices().to_vec())
        .expect("a vertex set is pairwise non-dominating"))
}

/// Drop exponents dominated within `conv(points) + R+^n`, returning the
/// vertex set.
pub fn minimal_exponents(dimension: usize, points: Vec<ExponentVector>) -> Result<Vec<ExponentVector>, NewtonError> {
    Ok(NewtonPolyhedron::from_points(dimension, points)?.vertices().to_vec())
}

// ---------------------------------------------------------------------------
// Sampled majorization check |f| <= C f*
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MajorizationReport {
    /// max |f| / f* over the sampled points.
    pub c_hat: f64,
    /// The same maximum over the first half of the samples.
    pub c_hat_first_half: f64,
    /// Ratio grew by < 50% when doubling the sample count.
    pub stable: bool,
    /// A point where the ratio appears unbounded, if any. The bound is a
    /// theorem, so a counterexample indicates an implementation bug.
    pub counterexample: Option<Vec<f64>>,
    pub skipped: usize,
    pub samples: usize,
}

impl MajorizationReport {
    pub fn passes(&self) -> bool {
        self.counterexample.is_none() && self.stable && self.c_hat.is_finite()
    }
}

/// Estimate the majorization constant `C` in `|f| <= C f*` by sampling the
/// box `(-r, r)^n` (or `(0, r)^n` when fractional exponents restrict the
/// domain of `f`).
pub fn check_star_majorization(
    p: &Polynomial,
    s: &StarFunction,
    r: f64,
    count: usize,
) -> Result<MajorizationReport, NewtonError> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(NewtonError::BadSampleRadius);
    }
    let n = p.dimension();
    let signed = p.all_integer_exponents();
    let mut c_hat = 0.0f64;
    let mut c_half = 0.0f64;
    let mut skipped = 0usize;
    let mut counterexample = None;
    for k in 0..count {
        let u = crate::oracle::qmc::halton_point(n, k as u64 + 1);
        let t: Vec<f64> = u
            .iter()
            .map(|&x| if signed { (2.0 * x - 1.0) * r } else { x * r })
            .collect();
        let fv = p.evaluate(&t).expect("sample stays in the admissible domain").abs();
        let sv = s.evaluate(&t);
        if sv == 0.0 {
            if fv == 0.0 {
                skipped += 1;
            } else if counterexample.is_none() {
                counterexample = Some(t.clone());
            }
            continue;
        }
        let ratio = fv / sv;
        if ratio > 1e12 && counterexample.is_none() {
            counterexample = Some(t.clone());
        }
        if ratio > c_hat {
            c_hat = ratio;
        }
        if k < count / 2 && ratio > c_half {
            c_half = ratio;
        }
    }
    let stable = c_half > 0.0 && c_hat <= 1.5 * c_half || c_hat == 0.0;
    Ok(MajorizationReport {
        c_hat,
        c_hat_first_half: c_half,
        stable,
        counterexample,
        skipped,
        samples: count,
    })
}

/// Convenience: Newton distance of a polynomial.
pub fn newton_distance(p: &Polynomial) -> Result<BigRational, NewtonError> {
    Ok(NewtonPolyhedron::from_polynomial(p)?.newton_distance())
}

/// Closed form cross-check used in tests: the distance equals the largest
/// facet ratio `offset / sum(normal)`.
pub fn distance_from_facets(np: &NewtonPolyhedron) -> BigRational {
    let mut best = BigRational::zero();
    for f in np.facets() {
        let s: BigRational = f.normal.iter().sum();
        debug_assert!(s.is_positive());
        let c = &f.offset / &s;
        if c > best {
            best = c;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::rat::{rat, ratio};

    fn np(text: &str, n: usize) -> NewtonPolyhedron {
        let p = parse_polynomial(text, n).unwrap();
        NewtonPolyhedron::from_polynomial(&p).unwrap()
    }

    fn ev(entries: &[i64]) -> ExponentVector {
        ExponentVector::from_ints(entries)
    }

    #[test]
    fn absorbs_interior_point() {
        let q = np("t1^2 + t1*t2 + t2^2", 2);
        assert_eq!(q.vertices(), &[ev(&[0, 2]), ev(&[2, 0])]);
    }

    #[test]
    fn keeps_diagonal_vertex() {
        let q = np("t1^4 + t1*t2 + t2^4", 2);
        assert_eq!(q.vertices(), &[ev(&[0, 4]), ev(&[1, 1]), ev(&[4, 0])]);
    }

    #[test]
    fn monomial_polyhedron() {
        let q = np("t1^3*t2^5", 2);
        assert_eq!(q.vertices(), &[ev(&[3, 5])]);
        // facets x >= 3, y >= 5
        assert_eq!(q.facets().len(), 2);
        assert_eq!(q.facets()[0].normal, vec![rat(0), rat(1)]);
        assert_eq!(q.facets()[0].offset, rat(5));
        assert_eq!(q.facets()[1].normal, vec![rat(1), rat(0)]);
        assert_eq!(q.facets()[1].offset, rat(3));
    }

    #[test]
    fn facets_of_simple_sum() {
        let q = np("t1^2 + t2^2", 2);
        // x >= 0, y >= 0, x + y >= 2
        assert_eq!(q.facets().len(), 3);
        assert!(q.facets().iter().any(|f| f.normal == vec![rat(1), rat(1)] && f.offset == rat(2)));
    }

    #[test]
    fn vertices_satisfy_facets() {
        for (text, n) in [("t1^2 + t2^2", 2), ("t1^4 + t1*t2 + t2^4", 2), ("t1^2*t2 + t1*t2^3 + t2^5", 2)] {
            let q = np(text, n);
            for v in q.vertices() {
                for f in q.facets() {
                    assert!(f.satisfied_by(v.entries()), "{text}: {v:?} violates a facet");
                }
            }
            for p in q.candidate_points() {
                for f in q.facets() {
                    assert!(f.satisfied_by(p.entries()));
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let q = np("t1^2 + t2^2", 2);
        assert!(q.contains(&[rat(1), rat(1)]));
        assert!(q.contains(&[rat(5), rat(0)]));
        assert!(!q.contains(&[ratio(1, 2), ratio(1, 2)]));
        assert!(!q.contains(&[rat(0), rat(1)]));
    }

    #[test]
    fn newton_distance_examples() {
        assert_eq!(np("t1^2 + t2^2", 2).newton_distance(), rat(1));
        assert_eq!(np("t1^2", 1).newton_distance(), rat(2));
        assert_eq!(np("t1^4 + t1*t2 + t2^4", 2).newton_distance(), rat(1));
        assert_eq!(np("t1^2 + t2^2 + t3^2", 3).newton_distance(), ratio(2, 3));
        assert_eq!(np("t1^2*t2^4", 2).newton_distance(), rat(4));
    }

    #[test]
    fn distance_matches_facet_formula() {
        for (text, n) in [
            ("t1^2 + t2^2", 2),
            ("t1^2*t2^4", 2),
            ("t1^4 + t1*t2 + t2^4", 2),
            ("t1^2 + t2^2 + t3^4", 3),
            ("t1^3*t2 + t2^6", 2),
        ] {
            let q = np(text, n);
            assert_eq!(q.newton_distance(), distance_from_facets(&q), "{text}");
        }
    }

    #[test]
    fn minimal_face_examples() {
        // vertex face, compact
        let q = np("t1^2*t2^2", 2);
        let f = q.minimal_face_at_diagonal();
        assert_eq!(f.dim, 0);
        assert!(f.is_compact);
        assert_eq!(f.generating_vertices, vec![ev(&[2, 2])]);

        // open edge, compact
        let q = np("t1^2 + t2^2", 2);
        let f = q.minimal_face_at_diagonal();
        assert_eq!(f.dim, 1);
        assert!(f.is_compact);
        assert_eq!(f.vertex_indices.len(), 2);

        // unbounded edge for t1^2 viewed in two variables
        let q = np("t1^2", 2);
        let f = q.minimal_face_at_diagonal();
        assert_eq!(q.newton_distance(), rat(2));
        assert_eq!(f.dim, 1);
        assert!(!f.is_compact);
        assert_eq!(f.recession_directions, vec![1]);
    }

    #[test]
    fn compact_face_counts() {
        assert_eq!(np("t1^2 + t2^2", 2).compact_faces().len(), 3);
        assert_eq!(np("t1^2*t2^2", 2).compact_faces().len(), 1);
        assert_eq!(np("t1^4 + t1*t2 + t2^4", 2).compact_faces().len(), 5);
    }

    #[test]
    fn compact_faces_have_positive_witnesses() {
        for (text, n) in [("t1^2 + t2^2", 2), ("t1^4 + t1*t2 + t2^4", 2), ("t1^2 + t2^2 + t3^2", 3)] {
            let q = np(text, n);
            let faces = q.compact_faces();
            // union of generating vertices covers the vertex set
            let mut seen = vec![false; q.vertices().len()];
            for f in &faces {
                assert!(f.normal_witness.iter().all(|w| w.is_positive()), "{text}");
                for &vi in &f.vertex_indices {
                    seen[vi] = true;
                }
                // witness exposes exactly the generating vertices
                for (vi, v) in q.vertices().iter().enumerate() {
                    let val: BigRational = f
                        .normal_witness
                        .iter()
                        .zip(v.entries())
                        .map(|(a, b)| a * b)
                        .sum();
                    if f.vertex_indices.contains(&vi) {
                        assert_eq!(val, f.witness_offset);
                    } else {
                        assert!(val > f.witness_offset);
                    }
                }
            }
            assert!(seen.iter().all(|&s| s), "{text}: some vertex missing from compact faces");
        }
    }

    #[test]
    fn star_function_examples() {
        let p = parse_polynomial("t1^2 - 2*t1*t2 + t2^2", 2).unwrap();
        let s = star_function(&p).unwrap();
        assert_eq!(s.vertex_exponents(), &[ev(&[0, 2]), ev(&[2, 0])]);
        assert_eq!(s.evaluate(&[1.0, 1.0]), 2.0);

        let p = parse_polynomial("t1^2*t2^2", 2).unwrap();
        assert_eq!(star_function(&p).unwrap().vertex_exponents(), &[ev(&[2, 2])]);

        let p = parse_polynomial("t1^2 + t2^2 + t3^2", 3).unwrap();
        assert_eq!(
            star_function(&p).unwrap().vertex_exponents(),
            &[ev(&[0, 0, 2]), ev(&[0, 2, 0]), ev(&[2, 0, 0])]
        );
    }

    #[test]
    fn majorization_examples() {
        let p = parse_polynomial("t1^2 + t2^2", 2).unwrap();
        let s = star_function(&p).unwrap();
        let rep = check_star_majorization(&p, &s, 1.0, 2000).unwrap();
        assert!(rep.passes());
        assert!((rep.c_hat - 1.0).abs() < 1e-9, "c_hat = {}", rep.c_hat);

        let p = parse_polynomial("t1^2 - 2*t1*t2 + t2^2", 2).unwrap();
        let s = star_function(&p).unwrap();
        let rep = check_star_majorization(&p, &s, 1.0, 2000).unwrap();
        assert!(rep.passes());
        assert!(rep.c_hat <= 2.0 + 1e-9);

        let p = parse_polynomial("t1*t2", 2).unwrap();
        let s = star_function(&p).unwrap();
        let rep = check_star_majorization(&p, &s, 1.0, 2000).unwrap();
        assert!(rep.passes());
        assert!((rep.c_hat - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rank_helper() {
        let rows = vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
            vec![rat(1), rat(1)],
        ];
        assert_eq!(rational_rank(rows), 2);
        assert_eq!(rational_rank(vec![vec![rat(0), rat(0)]]), 0);
    }
}
