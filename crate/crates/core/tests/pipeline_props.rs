//! Property tests for the ordering-region pipeline: the closed-form
//! identities with trivial weights, relabeling invariance, and weight
//! monotonicity.

use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use newton_smoothing::newton::{star_function, NewtonPolyhedron};
use newton_smoothing::pipeline::{analyze_all_permutations, beta_exponents, permutations};
use newton_smoothing::poly::{BlockStructure, ExponentVector, Polynomial};
use newton_smoothing::rat::{rat, ratio};

fn exponent_vector(n: usize) -> impl Strategy<Value = ExponentVector> {
    proptest::collection::vec(0i64..6, n)
        .prop_filter("no constant term", |v| v.iter().any(|&e| e > 0))
        .prop_map(|v| ExponentVector::from_ints(&v))
}

fn positive_polynomial(n: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((1i64..5, exponent_vector(n)), 1..6).prop_map(move |terms| {
        Polynomial::new(n, terms.into_iter().map(|(c, e)| (rat(c), e)).collect()).unwrap()
    })
}

/// Random alphas with 0 <= alpha < 1 for singleton blocks.
fn unit_alphas(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec((0i64..4, 4i64..8), n)
        .prop_map(|ps| ps.into_iter().map(|(p, q)| ratio(p, q)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    /// With all weights trivial, the aggregate equals the reciprocal Newton
    /// distance of the star polyhedron for arbitrary positive polynomials.
    #[test]
    fn trivial_weight_identity(p in positive_polynomial(3)) {
        let star = star_function(&p).unwrap();
        let b = BlockStructure::singletons(3, vec![rat(0); 3]).unwrap();
        let res = analyze_all_permutations(&star, &b).unwrap();
        let np = NewtonPolyhedron::from_points(3, star.vertex_exponents().to_vec()).unwrap();
        prop_assert_eq!(res.a0, BigRational::one() / np.newton_distance());
    }

    /// Relabeling the variables (and the blocks with them) leaves the
    /// aggregate untouched.
    #[test]
    fn relabeling_invariance(p in positive_polynomial(3), alphas in unit_alphas(3), perm_index in 0usize..6) {
        let sigma = &permutations(3)[perm_index];
        let b = BlockStructure::singletons(3, alphas.clone()).unwrap();
        let star = star_function(&p).unwrap();
        let res = analyze_all_permutations(&star, &b).unwrap();

        // rename variable j -> position of j under sigma
        let renamed_terms: Vec<(BigRational, ExponentVector)> = p
            .terms()
            .iter()
            .map(|t| {
                let e: Vec<BigRational> =
                    (0..3).map(|i| t.exponents.entry(sigma[i]).clone()).collect();
                (t.coefficient.clone(), ExponentVector::new(e).unwrap())
            })
            .collect();
        let renamed = Polynomial::new(3, renamed_terms).unwrap();
        let renamed_alphas: Vec<BigRational> = (0..3).map(|i| alphas[sigma[i]].clone()).collect();
        let b2 = BlockStructure::singletons(3, renamed_alphas).unwrap();
        let star2 = star_function(&renamed).unwrap();
        let res2 = analyze_all_permutations(&star2, &b2).unwrap();

        prop_assert_eq!(res.a0, res2.a0);
        prop_assert_eq!(res.d0, res2.d0);
    }

    /// Every produced beta exponent stays below one on validated inputs.
    #[test]
    fn beta_are_integrable(alphas in unit_alphas(4), perm_index in 0usize..24) {
        let sigma = &permutations(4)[perm_index];
        let b = BlockStructure::singletons(4, alphas).unwrap();
        let beta = beta_exponents(sigma, &b).unwrap();
        for bj in beta {
            prop_assert!(bj < BigRational::one());
        }
    }

    /// Single-block bound: when every star vertex has total degree >= 2, the
    /// growth power is at most (n - alpha)/2.
    #[test]
    fn single_block_upper_bound(p in positive_polynomial(2), alpha_num in 0i64..8) {
        let alpha = ratio(alpha_num, 4); // 0 .. 7/4 < 2 = n
        let star = star_function(&p).unwrap();
        prop_assume!(star
            .vertex_exponents()
            .iter()
            .all(|v| v.total_degree() >= rat(2)));
        let b = BlockStructure::single_block(2, alpha.clone()).unwrap();
        let res = analyze_all_permutations(&star, &b).unwrap();
        let bound = (rat(2) - &alpha) / rat(2);
        prop_assert!(res.a0 <= bound, "a0 = {} > bound {}", res.a0, bound);
    }
}

/// Raising any single weight never raises the growth power (checked over a
/// grid on the two-variable catalog).
#[test]
fn alpha_monotonicity_on_catalog() {
    let texts = ["t1^2 + t2^2", "t1^2*t2^2", "t1^4 + t1*t2 + t2^4", "t1^2*t2^4"];
    let steps: Vec<BigRational> = (0..4).map(|k| ratio(k, 4)).collect();
    for text in texts {
        let p = newton_smoothing::poly::parse_polynomial(text, 2).unwrap();
        let star = star_function(&p).unwrap();
        for a2 in &steps {
            let mut last: Option<BigRational> = None;
            for a1 in &steps {
                let b = BlockStructure::singletons(2, vec![a1.clone(), a2.clone()]).unwrap();
                let res = analyze_all_permutations(&star, &b).unwrap();
                if let Some(prev) = last {
                    assert!(
                        res.a0 <= prev,
                        "{text}: a0 rose from {prev} to {} when alpha_1 -> {a1}",
                        res.a0
                    );
                }
                last = Some(res.a0);
            }
        }
    }
}

/// The worked n = 2 catalog from the analysis examples, frozen end to end.
#[test]
fn frozen_half_weight_traces() {
    // S = t1^2 + t2^2, alpha = (1/2, 1/2)
    let p = newton_smoothing::poly::parse_polynomial("t1^2 + t2^2", 2).unwrap();
    let star = star_function(&p).unwrap();
    let b = BlockStructure::singletons(2, vec![ratio(1, 2), ratio(1, 2)]).unwrap();
    let res = analyze_all_permutations(&star, &b).unwrap();
    assert_eq!(res.a0, ratio(1, 2));
    assert_eq!(res.d0, 0);
    assert!(res.noncompact_flag);
    let rec = &res.per_permutation[0];
    assert_eq!(rec.beta, vec![ratio(1, 2), rat(0)]);
    assert_eq!(
        rec.star_transformed.vertex_exponents(),
        &[ExponentVector::from_ints(&[0, 2])]
    );

    // quartic with half weights lands at 1/4 with no log
    let p = newton_smoothing::poly::parse_polynomial("t1^4 + t2^4", 2).unwrap();
    let star = star_function(&p).unwrap();
    let res = analyze_all_permutations(&star, &b).unwrap();
    assert_eq!(res.a0, ratio(1, 4));
    assert_eq!(res.d0, 0);
}
