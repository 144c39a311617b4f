//! Univariate polynomials over the rationals: exact arithmetic, Yun's
//! square-free decomposition, and Sturm-sequence real-root counting on
//! intervals. Supports the exact two-dimensional vanishing-order computation.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rat::sign;

/// Coefficients stored low-to-high; the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divmod(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree();
        let lead = div.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (UniPoly::zero(), UniPoly::new(rem));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            let f = c / &lead;
            for i in 0..=dd {
                let delta = &f * &div.coeffs[i];
                rem[k + i] -= delta;
            }
            quot[k] = f;
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        UniPoly::new(out)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::new(out)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => UniPoly::new(self.coeffs.iter().map(|c| c / l).collect()),
        }
    }

    /// Yun's algorithm: square-free factors with their multiplicities,
    /// `self = c * prod factor_i ^ mult_i`, factors monic and pairwise
    /// coprime, listed in increasing multiplicity.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        if self.degree() == 0 || self.is_zero() {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.divmod(&a0).0;
        let mut c = df.divmod(&a0).0;
        let mut out = Vec::new();
        let mut i = 1usize;
        loop {
            let d = {
                let bp = b.derivative();
                let diff = c.sub(&bp);
                if diff.is_zero() {
                    break;
                }
                diff
            };
            let q = b.gcd(&d);
            if q.degree() > 0 {
                out.push((q.clone(), i));
            }
            b = b.divmod(&q).0;
            c = d.divmod(&q).0;
            i += 1;
            if b.degree() == 0 {
                break;
            }
        }
        if b.degree() > 0 {
            out.push((b, i));
        }
        out
    }

    /// Number of distinct real roots in the open interval `(a, b)`, via the
    /// Sturm chain. Neither endpoint may be a root.
    pub fn count_roots_in(&self, a: &BigRational, b: &BigRational) -> usize {
        debug_assert!(!self.eval(a).is_zero() && !self.eval(b).is_zero());
        let chain = self.sturm_chain();
        let va = sign_variations(&chain, a);
        let vb = sign_variations(&chain, b);
        va.saturating_sub(vb)
    }

    /// Number of distinct real roots in `(0, +inf)`. Zero must not be a root.
    pub fn count_positive_roots(&self) -> usize {
        debug_assert!(!self.constant_term().is_zero());
        let chain = self.sturm_chain();
        let zero = BigRational::zero();
        let v0 = sign_variations(&chain, &zero);
        let vinf = sign_variations_at_infinity(&chain);
        v0.saturating_sub(vinf)
    }

    fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[k - 2].divmod(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(UniPoly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        chain
    }

    /// Cauchy bound: every real root has absolute value below this.
    pub fn root_bound(&self) -> BigRational {
        let lead = match self.leading() {
            Some(l) => l.abs(),
            None => return BigRational::one(),
        };
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let v = c.abs() / &lead;
            if v > m {
                m = v;
            }
        }
        m + BigRational::one()
    }

    /// Isolate one root in `(0, bound)` to width `<= tol` by Sturm-guided
    /// bisection. Returns a closed interval `[lo, hi]` containing a root
    /// (possibly degenerate when the bisection lands exactly on one).
    pub fn isolate_positive_root(&self, tol: &BigRational) -> Option<(BigRational, BigRational)> {
        if self.constant_term().is_zero() || self.count_positive_roots() == 0 {
            return None;
        }
        let mut lo = BigRational::zero();
        let mut hi = self.root_bound();
        if self.eval(&hi).is_zero() {
            // nudge past the bound; the bound is strict so this cannot recur
            hi += BigRational::one();
        }
        let two = BigRational::from_integer(2.into());
        while &hi - &lo > *tol {
            let mid = (&lo + &hi) / &two;
            if self.eval(&mid).is_zero() {
                return Some((mid.clone(), mid));
            }
            if self.count_roots_in(&lo, &mid) > 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some((lo, hi))
    }
}

fn sign_variations(chain: &[UniPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut var = 0usize;
    for p in chain {
        let s = sign(&p.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                var += 1;
            }
            last = s;
        }
    }
    var
}

fn sign_variations_at_infinity(chain: &[UniPoly]) -> usize {
    let mut last = 0i8;
    let mut var = 0usize;
    for p in chain {
        let s = p.leading().map(sign).unwrap_or(0);
        if s != 0 {
            if last != 0 && s != last {
                var += 1;
            }
            last = s;
        }
    }
    var
}
