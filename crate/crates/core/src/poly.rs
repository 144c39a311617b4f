//! Sparse multivariate polynomials with exact rational coefficients and
//! rational nonnegative exponents, plus the star-function and block-structure
//! types consumed by the rest of the crate.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::{self, lex_cmp, to_f64};

/// Exponent vector of a monomial: `n` nonnegative rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<BigRational>);

impl ExponentVector {
    pub fn new(entries: Vec<BigRational>) -> Result<Self, PolyError> {
        if entries.is_empty() {
            return Err(PolyError::ZeroDimension);
        }
        if let Some(i) = entries.iter().position(|e| e.is_negative()) {
            return Err(PolyError::NegativeExponent { position: i });
        }
        Ok(ExponentVector(entries))
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![BigRational::zero(); n])
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        ExponentVector(entries.iter().map(|&e| rat::rat(e)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn entry(&self, i: usize) -> &BigRational {
        &self.0[i]
    }

    pub fn total_degree(&self) -> BigRational {
        self.0.iter().sum()
    }

    pub fn all_integer(&self) -> bool {
        self.0.iter().all(rat::is_integer)
    }

    /// Coordinatewise `self >= other`, i.e. `self` lies in `other + R+^n`.
    pub fn dominates(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    /// Entries as f64, for the numeric oracles.
    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// One polynomial term: nonzero rational coefficient and exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: BigRational,
    pub exponents: ExponentVector,
}

/// Sparse polynomial in `t1..tn`. Terms are kept in canonical order
/// (descending lexicographic by exponent vector), with no zero coefficients
/// and no duplicate exponent vectors, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    dimension: usize,
    terms: Vec<Term>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial dimension must be at least 1")]
    ZeroDimension,
    #[error("negative exponent at coordinate {position}")]
    NegativeExponent { position: usize },
    #[error("exponent vector length does not match dimension")]
    DimensionMismatch,
    #[error("vertex exponent {dominated} lies in the octant of vertex {by}")]
    DominatedVertex { dominated: usize, by: usize },
}

impl Polynomial {
    /// Build from raw (coefficient, exponent) pairs, merging duplicate
    /// exponent vectors and dropping zero coefficients.
    pub fn new(dimension: usize, raw: Vec<(BigRational, ExponentVector)>) -> Result<Self, PolyError> {
        if dimension == 0 {
            return Err(PolyError::ZeroDimension);
        }
        let mut merged: std::collections::BTreeMap<ExponentVector, BigRational> = Default::default();
        for (c, e) in raw {
            if e.len() != dimension {
                return Err(PolyError::DimensionMismatch);
            }
            let slot = merged.entry(e).or_insert_with(BigRational::zero);
            *slot += c;
        }
        let mut terms: Vec<Term> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponents, coefficient)| Term { coefficient, exponents })
            .collect();
        terms.sort_by(|a, b| lex_cmp(b.exponents.entries(), a.exponents.entries()));
        Ok(Polynomial { dimension, terms })
    }

    pub fn zero(dimension: usize) -> Self {
        Polynomial { dimension, terms: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exponent_vectors(&self) -> Vec<ExponentVector> {
        self.terms.iter().map(|t| t.exponents.clone()).collect()
    }

    pub fn all_integer_exponents(&self) -> bool {
        self.terms.iter().all(|t| t.exponents.all_integer())
    }

    /// Evaluate at a real point with the convention `0^0 = 1`.
    ///
    /// Negative coordinates are only admitted under integer exponents.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64, EvalError> {
        if point.len() != self.dimension {
            return Err(EvalError::DimensionMismatch { expected: self.dimension, got: point.len() });
        }
        let mut acc = 0.0;
        for term in &self.terms {
            let mut m = to_f64(&term.coefficient);
            for (i, e) in term.exponents.entries().iter().enumerate() {
                m *= pow_checked(point[i], e, i)?;
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Canonical text form; `parse_polynomial` of the output reproduces the
    /// polynomial exactly.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, term) in self.terms.iter().enumerate() {
            let c = &term.coefficient;
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (k, e) in term.exponents.entries().iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if e.is_one() {
                    factors.push(format!("t{}", k + 1));
                } else {
                    factors.push(format!("t{}^{}", k + 1, e));
                }
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("point has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative coordinate t{} raised to non-integer exponent {exponent}", coordinate + 1)]
    NegativeBase { coordinate: usize, exponent: String },
}

fn pow_checked(base: f64, exp: &BigRational, coordinate: usize) -> Result<f64, EvalError> {
    if exp.is_zero() {
        return Ok(1.0); // 0^0 = 1 by convention
    }
    if let Some(k) = rat::as_i64(exp) {
        return Ok(base.powi(k as i32));
    }
    if base < 0.0 {
        return Err(EvalError::NegativeBase { coordinate, exponent: exp.to_string() });
    }
    Ok(base.powf(to_f64(exp)))
}

/// Sum of `|t^v|` over the vertex exponents of a Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarFunction {
    dimension: usize,
    vertex_exponents: Vec<ExponentVector>,
}

impl StarFunction {
    /// Construct from a vertex set. The entries must be pairwise
    /// non-dominating (no vertex inside another's translated octant), which
    /// holds for the vertex set of any Newton polyhedron.
    pub fn new(dimension: usize, vertex_exponents: Vec<ExponentVector>) -> Result<Self, PolyError> {
        for v in &vertex_exponents {
            if v.len() != dimension {
                return Err(PolyError::DimensionMismatch);
            }
        }
        for (i, a) in vertex_exponents.iter().enumerate() {
            for (j, b) in vertex_exponents.iter().enumerate() {
                if i != j && a.dominates(b) {
                    return Err(PolyError::DominatedVertex { dominated: i, by: j });
                }
            }
        }
        let mut vertex_exponents = vertex_exponents;
        vertex_exponents.sort_by(|a, b| lex_cmp(a.entries(), b.entries()));
        Ok(StarFunction { dimension, vertex_exponents })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertex_exponents(&self) -> &[ExponentVector] {
        &self.vertex_exponents
    }

    /// `sum_v prod_i |t_i|^{v_i}`; total and even in every coordinate.
    pub fn evaluate(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.dimension);
        let mut acc = 0.0;
        for v in &self.vertex_exponents {
            let mut m = 1.0;
            for (i, e) in v.entries().iter().enumerate() {
                if e.is_zero() {
                    continue; // |t|^0 = 1 even at t = 0
                }
                let b = point[i].abs();
                m *= match rat::as_i64(e) {
                    Some(k) => b.powi(k as i32),
                    None => b.powf(to_f64(e)),
                };
            }
            acc += m;
        }
        acc
    }
}

/// Partition of the `n` variables into blocks with singularity exponents.
/// Indices are stored zero-based; the public constructors take the one-based
/// labels used by the text interfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    dimension: usize,
    blocks: Vec<Vec<usize>>,
    alphas: Vec<BigRational>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("variable t{0} appears in more than one block")]
    DuplicateVariable(usize),
    #[error("variable t{0} is outside 1..={1}")]
    VariableOutOfRange(usize, usize),
    #[error("blocks cover {covered} of {n} variables")]
    IncompleteCover { covered: usize, n: usize },
    #[error("got {alphas} alphas for {blocks} blocks")]
    AlphaCountMismatch { alphas: usize, blocks: usize },
}

impl BlockStructure {
    /// Build from one-based variable indices.
    pub fn from_one_based(
        dimension: usize,
        blocks_one_based: Vec<Vec<usize>>,
        alphas: Vec<BigRational>,
    ) -> Result<Self, BlockError> {
        if alphas.len() != blocks_one_based.len() {
            return Err(BlockError::AlphaCountMismatch { alphas: alphas.len(), blocks: blocks_one_based.len() });
        }
        let mut seen = vec![false; dimension];
        let mut blocks = Vec::with_capacity(blocks_one_based.len());
        for (k, blk) in blocks_one_based.iter().enumerate() {
            if blk.is_empty() {
                return Err(BlockError::EmptyBlock(k + 1));
            }
            let mut b = Vec::with_capacity(blk.len());
            for &j in blk {
                if j == 0 || j > dimension {
                    return Err(BlockError::VariableOutOfRange(j, dimension));
                }
                if seen[j - 1] {
                    return Err(BlockError::DuplicateVariable(j));
                }
                seen[j - 1] = true;
                b.push(j - 1);
            }
            b.sort_unstable();
            blocks.push(b);
        }
        let covered = seen.iter().filter(|&&s| s).count();
        if covered != dimension {
            return Err(BlockError::IncompleteCover { covered, n: dimension });
        }
        Ok(BlockStructure { dimension, blocks, alphas })
    }

    /// All blocks one-dimensional with the given alphas.
    pub fn singletons(dimension: usize, alphas: Vec<BigRational>) -> Result<Self, BlockError> {
        let blocks = (1..=dimension).map(|i| vec![i]).collect();
        Self::from_one_based(dimension, blocks, alphas)
    }

    /// One block holding all variables.
    pub fn single_block(dimension: usize, alpha: BigRational) -> Result<Self, BlockError> {
        Self::from_one_based(dimension, vec![(1..=dimension).collect()], vec![alpha])
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Zero-based member indices of block `k`.
    pub fn block(&self, k: usize) -> &[usize] {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn alphas(&self) -> &[BigRational] {
        &self.alphas
    }

    pub fn block_size(&self, k: usize) -> usize {
        self.blocks[k].len()
    }

    pub fn blocks_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect()
    }

    /// Euclidean norm of the block-`k` component of `point`.
    pub fn block_norm(&self, k: usize, point: &[f64]) -> f64 {
        self.blocks[k].iter().map(|&i| point[i] * point[i]).sum::<f64>().sqrt()
    }

    /// The kernel weight `prod_k |t_k|^{-alpha_k}` at a point with all
    /// block norms nonzero.
    pub fn weight(&self, point: &[f64]) -> f64 {
        let mut w = 1.0;
        for k in 0..self.blocks.len() {
            let a = to_f64(&self.alphas[k]);
            if a != 0.0 {
                w *= self.block_norm(k, point).powf(-a);
            }
        }
        w
    }
}

/// Rule violations detected by [`validate_input`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A constant term makes `S(0) != 0`.
    ConstantTerm,
    /// A single-variable term `c*t_i^e` with `e <= 1` makes the gradient at
    /// the origin nonzero (or unbounded for fractional `e < 1`).
    GradientTerm { variable: usize, exponent: String },
    /// The zero polynomial is excluded.
    ZeroPolynomial,
    /// `alpha_k` outside `[0, l_k)`.
    AlphaOutOfRange { block: usize, alpha: String, block_size: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ConstantTerm => write!(f, "constant term violates S(0) = 0"),
            Violation::GradientTerm { variable, exponent } => write!(
                f,
                "term t{variable}^{exponent} violates grad S(0) = 0"
            ),
            Violation::ZeroPolynomial => write!(f, "phase polynomial is identically zero"),
            Violation::AlphaOutOfRange { block, alpha, block_size } => write!(
                f,
                "alpha_{block} = {alpha} outside [0, {block_size})"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the standing hypotheses: `S(0) = 0`, `grad S(0) = 0`, `S` not
/// identically zero, and `0 <= alpha_k < l_k` for every block.
pub fn validate_input(p: &Polynomial, b: &BlockStructure) -> ValidationReport {
    let mut violations = Vec::new();
    if p.is_zero() {
        violations.push(Violation::ZeroPolynomial);
    }
    for term in p.terms() {
        let nonzero: Vec<usize> = term
            .exponents
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, _)| i)
            .collect();
        if nonzero.is_empty() {
            violations.push(Violation::ConstantTerm);
        } else if nonzero.len() == 1 {
            let i = nonzero[0];
            let e = term.exponents.entry(i);
            if *e <= BigRational::one() {
                violations.push(Violation::GradientTerm {
                    variable: i + 1,
                    exponent: e.to_string(),
                });
            }
        }
    }
    for k in 0..b.num_blocks() {
        let a = &b.alphas()[k];
        let l = rat::rat(b.block_size(k) as i64);
        if a.is_negative() || *a >= l {
            violations.push(Violation::AlphaOutOfRange {
                block: k + 1,
                alpha: a.to_string(),
                block_size: b.block_size(k),
            });
        }
    }
    ValidationReport { violations }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("negative exponent at byte {position}")]
    NegativeExponent { position: usize },
    #[error("variable t{index} at byte {position} outside dimension {dimension}")]
    DimensionMismatch { position: usize, index: usize, dimension: usize },
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { position: self.pos, message: message.into() })
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.syntax("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    /// `p` or `p/q` (unsigned).
    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let n = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.integer()?;
            if d == num_bigint::BigInt::from(0) {
                return Err(ParseError::Syntax { position: at, message: "zero denominator".into() });
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    /// `t<k>` variable reference; returns zero-based index.
    fn variable(&mut self, dimension: usize) -> Result<usize, ParseError> {
        let at = self.pos;
        if self.bump() != Some(b't') {
            return Err(ParseError::Syntax { position: at, message: "expected variable".into() });
        }
        let idx = self.integer()?;
        let idx: usize = match idx.try_into() {
            Ok(v) => v,
            Err(_) => usize::MAX,
        };
        if idx == 0 || idx > dimension {
            return Err(ParseError::DimensionMismatch { position: at, index: idx, dimension });
        }
        Ok(idx - 1)
    }
}

/// Parse the text polynomial grammar: terms joined by `+`/`-`, each term an
/// optional rational coefficient times factors `t<k>` or `t<k>^e` with
/// rational `e >= 0`; `*` between factors is optional.
pub fn parse_polynomial(text: &str, dimension: usize) -> Result<Polynomial, ParseError> {
    if dimension == 0 {
        return Err(ParseError::Syntax { position: 0, message: "dimension must be at least 1".into() });
    }
    let mut cur = Cursor::new(text);
    let mut raw: Vec<(BigRational, ExponentVector)> = Vec::new();
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            None if first => return cur.syntax("empty polynomial"),
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                1
            }
            Some(b'-') => {
                cur.pos += 1;
                -1
            }
            Some(_) if first => 1,
            Some(c) => {
                return cur.syntax(format!("expected '+' or '-', found '{}'", c as char));
            }
        };
        first = false;

        let saw_coeff = matches!(cur.peek(), Some(c) if c.is_ascii_digit());
        let mut coeff = if saw_coeff { cur.rational()? } else { BigRational::one() };
        if sign < 0 {
            coeff = -coeff;
        }

        let mut exps = vec![BigRational::zero(); dimension];
        let mut saw_factor = false;
        loop {
            match cur.peek() {
                Some(b'*') => {
                    cur.pos += 1;
                    // factor must follow
                    match cur.peek() {
                        Some(b't') => {}
                        _ => return cur.syntax("expected variable after '*'"),
                    }
                }
                Some(b't') => {}
                _ => break,
            }
            let var = cur.variable(dimension)?;
            let e = if cur.peek() == Some(b'^') {
                cur.pos += 1;
                let at = cur.pos;
                if cur.peek() == Some(b'-') {
                    return Err(ParseError::NegativeExponent { position: at });
                }
                cur.rational()?
            } else {
                BigRational::one()
            };
            exps[var] += e;
            saw_factor = true;
        }
        if !saw_factor && !saw_coeff {
            return cur.syntax("expected term");
        }
        raw.push((coeff, ExponentVector::new(exps).expect("nonnegative by construction")));
    }
    if raw.is_empty() {
        return Err(ParseError::Syntax { position: 0, message: "empty polynomial".into() });
    }
    Polynomial::new(dimension, raw).map_err(|e| ParseError::Syntax { position: 0, message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn p(text: &str, n: usize) -> Polynomial {
        parse_polynomial(text, n).unwrap()
    }

    #[test]
    fn parse_simple_sum() {
        let q = p("t1^2 + t2^2", 2);
        assert_eq!(q.terms().len(), 2);
        assert_eq!(q.terms()[0].coefficient, rat(1));
        assert_eq!(q.terms()[0].exponents, ExponentVector::from_ints(&[2, 0]));
        assert_eq!(q.terms()[1].exponents, ExponentVector::from_ints(&[0, 2]));
    }

    #[test]
    fn parse_three_terms_and_signs() {
        let q = p("t1^2 - 2*t1*t2 + t2^2", 2);
        assert_eq!(q.terms().len(), 3);
        let mid = &q.terms()[1];
        assert_eq!(mid.coefficient, rat(-2));
        assert_eq!(mid.exponents, ExponentVector::from_ints(&[1, 1]));
    }

    #[test]
    fn parse_merges_duplicates() {
        let q = p("t1^2 + t1^2", 2);
        assert_eq!(q.terms().len(), 1);
        assert_eq!(q.terms()[0].coefficient, rat(2));
    }

    #[test]
    fn parse_merge_to_zero_drops_term() {
        let q = p("t1^2 - t1^2 + t2", 2);
        assert_eq!(q.terms().len(), 1);
        assert_eq!(q.terms()[0].exponents, ExponentVector::from_ints(&[0, 1]));
    }

    #[test]
    fn parse_rational_coefficient_and_exponent() {
        let q = p("3/2*t1^4/3", 1);
        assert_eq!(q.terms()[0].coefficient, ratio(3, 2));
        assert_eq!(q.terms()[0].exponents.entry(0), &ratio(4, 3));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_polynomial("t1^-2", 1), Err(ParseError::NegativeExponent { .. })));
        assert!(matches!(parse_polynomial("t3", 2), Err(ParseError::DimensionMismatch { index: 3, .. })));
        assert!(matches!(parse_polynomial("t1 +", 1), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("", 1), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("1/0*t1", 1), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn print_parse_roundtrip() {
        for text in [
            "t1^2 + t2^2",
            "t1^2 - 2*t1*t2 + t2^2",
            "3/2*t1^4/3",
            "t1^2*t2^2",
            "1 + t1^2",
            "-t1^3 + 5*t2",
        ] {
            let q = p(text, 2);
            let r = parse_polynomial(&q.to_text(), q.dimension()).unwrap();
            assert_eq!(q, r, "roundtrip failed for {text}");
        }
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("t1^2 + t2^2", 2).evaluate(&[3.0, 4.0]).unwrap(), 25.0);
        assert_eq!(p("t1^2 - 2*t1*t2 + t2^2", 2).evaluate(&[1.0, 1.0]).unwrap(), 0.0);
        let v = p("t1^4/3", 1).evaluate(&[8.0]).unwrap();
        assert!((v - 16.0).abs() < 1e-12, "8^(4/3) = {v}");
    }

    #[test]
    fn evaluate_zero_conventions() {
        // 0^0 = 1: the t2^0 factor ignores the zero coordinate.
        assert_eq!(p("t1^2", 2).evaluate(&[2.0, 0.0]).unwrap(), 4.0);
        assert_eq!(p("1", 1).evaluate(&[0.0]).unwrap(), 1.0);
    }

    #[test]
    fn evaluate_negative_base_error() {
        let q = p("t1^1/2", 1);
        assert!(matches!(q.evaluate(&[-1.0]), Err(EvalError::NegativeBase { .. })));
        // integer exponents are fine on negative coordinates
        assert_eq!(p("t1^3", 1).evaluate(&[-2.0]).unwrap(), -8.0);
    }

    #[test]
    fn star_evaluate() {
        let s = StarFunction::new(
            2,
            vec![ExponentVector::from_ints(&[2, 0]), ExponentVector::from_ints(&[0, 2])],
        )
        .unwrap();
        assert_eq!(s.evaluate(&[-1.0, 1.0]), 2.0);
        assert_eq!(s.evaluate(&[1.0, 1.0]), 2.0);
        let prod = StarFunction::new(2, vec![ExponentVector::from_ints(&[2, 2])]).unwrap();
        assert_eq!(prod.evaluate(&[0.5, 0.5]), 1.0 / 16.0);
    }

    #[test]
    fn star_rejects_dominated_vertices() {
        let r = StarFunction::new(
            2,
            vec![ExponentVector::from_ints(&[1, 1]), ExponentVector::from_ints(&[2, 2])],
        );
        assert!(r.is_err());
    }

    #[test]
    fn validation_examples() {
        let b = BlockStructure::singletons(2, vec![rat(0), rat(0)]).unwrap();
        assert!(validate_input(&p("t1^2 + t2^2", 2), &b).passed());

        let b1 = BlockStructure::singletons(2, vec![rat(0), rat(0)]).unwrap();
        let rep = validate_input(&p("1 + t1^2", 2), &b1);
        assert!(rep.violations.contains(&Violation::ConstantTerm));

        let b2 = BlockStructure::singletons(1, vec![rat(1)]).unwrap();
        let rep = validate_input(&p("t1^2", 1), &b2);
        assert!(matches!(rep.violations[0], Violation::AlphaOutOfRange { block: 1, .. }));
    }

    #[test]
    fn validation_gradient_rule() {
        let b = BlockStructure::singletons(2, vec![rat(0), rat(0)]).unwrap();
        let rep = validate_input(&p("t1 + t2^2", 2), &b);
        assert!(matches!(rep.violations[0], Violation::GradientTerm { variable: 1, .. }));
        // multi-variable degree-one-ish terms are fine
        assert!(validate_input(&p("t1*t2", 2), &b).passed());
    }

    #[test]
    fn block_structure_partition_errors() {
        assert!(BlockStructure::from_one_based(2, vec![vec![1]], vec![rat(0)]).is_err());
        assert!(BlockStructure::from_one_based(2, vec![vec![1, 1], vec![2]], vec![rat(0), rat(0)]).is_err());
        assert!(BlockStructure::from_one_based(2, vec![vec![1, 3]], vec![rat(0)]).is_err());
        // alpha >= l is constructible (validation reports it later)
        assert!(BlockStructure::singletons(1, vec![rat(1)]).is_ok());
    }
}
