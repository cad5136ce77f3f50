//! Randomized property suites for the polynomial kernel and the domain
//! model: ring axioms, substitution/evaluation commutation, the
//! resultant-gcd link, square extraction, and family instantiation
//! behaviour over a parameter range.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use tep7::gcd::{gcd, poly_sqrt, squarefree_split, squarefree_split_all};
use tep7::pipeline::equivalent;
use tep7::poly::Poly;
use tep7::resultant::{discriminant, resultant, resultant_sylvester};
use tep7::vars::{VarId, A1, A3, G, T};
use tep7::{fixtures, monomial::Monomial};

/// Random sparse polynomial in the given variables.
fn arb_poly(vars: &'static [VarId], max_deg: u16, max_terms: usize) -> BoxedStrategy<Poly> {
    let term = (
        -20i64..=20,
        proptest::collection::vec(0u16..=max_deg, vars.len()),
    );
    proptest::collection::vec(term, 0..=max_terms)
        .prop_map(move |terms| {
            let mut p = Poly::zero();
            for (c, exps) in terms {
                let mut m = Monomial::ONE;
                for (v, e) in vars.iter().zip(exps) {
                    m = m.mul(&Monomial::var_pow(*v, e));
                }
                p = p.add(&Poly::term(BigInt::from(c), m));
            }
            p
        })
        .boxed()
}

fn assignment(vals: &[i64], vars: &[VarId]) -> BTreeMap<VarId, BigInt> {
    vars.iter()
        .zip(vals)
        .map(|(&v, &x)| (v, BigInt::from(x)))
        .collect()
}

const VARS2: &[VarId] = &[A1, A3];
const VARS3: &[VarId] = &[A1, A3, G];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(
        p in arb_poly(VARS3, 4, 6),
        q in arb_poly(VARS3, 4, 6),
        r in arb_poly(VARS3, 4, 6),
    ) {
        // commutativity, associativity, distributivity
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
    }

    #[test]
    fn substitute_commutes_with_evaluate(
        p in arb_poly(VARS2, 5, 6),
        q in arb_poly(&[A3], 3, 4),
        a1v in -50i64..=50,
        a3v in -50i64..=50,
    ) {
        // p[v := q] evaluated equals p evaluated with v bound to q's value
        let asn = assignment(&[a1v, a3v], &[A1, A3]);
        let substituted = p.substitute(A1, &q);
        let lhs = substituted.evaluate(&asn).unwrap();
        let qv = q.evaluate(&asn).unwrap();
        let mut asn2 = asn.clone();
        asn2.insert(A1, qv);
        let rhs = p.evaluate(&asn2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_zero_iff_common_factor(
        p in arb_poly(VARS2, 3, 4),
        q in arb_poly(VARS2, 3, 4),
        c in arb_poly(VARS2, 2, 3),
    ) {
        // planted common factor forces a zero resultant
        prop_assume!(!p.is_zero() && !q.is_zero() && c.degree_in(A1) >= 1);
        let pc = p.mul(&c);
        let qc = q.mul(&c);
        let res = resultant(&pc, &qc, A1).unwrap();
        prop_assert!(res.is_zero());
        // and conversely on the raw pair: zero resultant means positive-degree gcd
        if p.degree_in(A1) >= 1 && q.degree_in(A1) >= 1 {
            let r = resultant(&p, &q, A1).unwrap();
            let g = gcd(&p, &q);
            prop_assert_eq!(r.is_zero(), g.degree_in(A1) >= 1);
        }
    }

    #[test]
    fn subresultant_agrees_with_sylvester(
        p in arb_poly(VARS2, 3, 4),
        q in arb_poly(VARS2, 3, 4),
    ) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let fast = resultant(&p, &q, A1).unwrap();
        let slow = resultant_sylvester(&p, &q, A1).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn discriminant_of_planted_square_vanishes(
        s in arb_poly(VARS2, 2, 3),
        c in arb_poly(VARS2, 2, 3),
    ) {
        prop_assume!(s.degree_in(A1) >= 1);
        let p = s.mul(&s).mul(&c);
        prop_assume!(p.degree_in(A1) >= 2);
        prop_assert!(discriminant(&p, A1).unwrap().is_zero());
    }

    #[test]
    fn squarefree_split_reassembles(
        s in arb_poly(VARS2, 2, 3),
        c in arb_poly(VARS2, 2, 3),
    ) {
        prop_assume!(!s.is_zero() && !c.is_zero());
        let p = s.mul(&s).mul(&c);
        let (root, cof) = squarefree_split_all(&p);
        prop_assert_eq!(root.mul(&root).mul(&cof), p.clone());
        // and the root part absorbs at least the planted square
        let (_, s_prim) = s.content_primitive().unwrap();
        prop_assert!(root.divide_exact(&gcd(&s_prim, &root)).is_some());
        let (r2, c2) = squarefree_split(&p, A1);
        prop_assert_eq!(r2.mul(&r2).mul(&c2), p);
    }

    #[test]
    fn poly_sqrt_roundtrip(p in arb_poly(VARS3, 3, 5)) {
        let sq = p.mul(&p);
        let got = poly_sqrt(&sq);
        if p.is_zero() {
            prop_assert_eq!(got, Some(Poly::zero()));
        } else {
            prop_assert_eq!(got, Some(p.normalize_sign()));
        }
    }

    #[test]
    fn canonical_text_roundtrip(p in arb_poly(VARS3, 5, 8)) {
        let s = p.to_string();
        let back: Poly = s.parse().unwrap();
        prop_assert_eq!(&back, &p);
        // JSON route is bit-exact as well
        let js = serde_json::to_string(&p).unwrap();
        let jback: Poly = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(jback, p);
    }
}

// ---------------------------------------------------------------------------
// Family-level properties
// ---------------------------------------------------------------------------

#[test]
fn builtin_families_generic_over_range() {
    // every built-in family: all integer t in [-50, 50] give instances
    // passing degrees 1..7; triviality happens on a finite recorded set and
    // every nontrivial instance fails degree 8
    let degrees17: BTreeSet<u32> = (1..=7).collect();
    let expected_trivial: [&[i64]; 4] = [
        &[-11, -6, -5, -3, -1, 1, 3, 4, 9],
        &[-11, -9, -1, 1, 3, 6, 7, 23],
        &[-15, -11, -3, -1, 1, 7, 9, 29],
        &[-13, -9, -5, -3, -1, 1, 4, 21],
    ];
    for idx in 1..=4usize {
        let fam = fixtures::builtin_family(idx);
        let mut trivial_ts = Vec::new();
        for t0 in -50..=50i64 {
            let inst = match fam.instantiate_int(t0) {
                Ok(i) => i,
                Err(_) => continue,
            };
            assert!(
                inst.check_multigrade(&degrees17),
                "family {} fails 1..7 at t = {}",
                idx,
                t0
            );
            if inst.is_trivial() {
                trivial_ts.push(t0);
            } else {
                assert!(
                    inst.power_sum_xs(8) != inst.power_sum_ys(8),
                    "family {} unexpectedly satisfies degree 8 at t = {}",
                    idx,
                    t0
                );
            }
        }
        assert_eq!(
            trivial_ts, expected_trivial[idx - 1],
            "family {} trivial set changed",
            idx
        );
    }
}

#[test]
fn extend_and_instantiate_commute() {
    use tep7::tep::HalfFamily;
    let half = HalfFamily {
        xs: [
            "t^2 + 1".parse().unwrap(),
            "2*t".parse().unwrap(),
            "t^2 - 3".parse().unwrap(),
            "t + 4".parse().unwrap(),
        ],
        ys: [
            "t^2 - 1".parse().unwrap(),
            "2*t + 2".parse().unwrap(),
            "t^2 - 2".parse().unwrap(),
            "t + 1".parse().unwrap(),
        ],
    };
    for t0 in -10..=10i64 {
        let via_family = half
            .extend_symmetric("commute")
            .instantiate_int(t0)
            .unwrap();
        let via_instance = half
            .instantiate_int(&BigInt::from(t0))
            .unwrap()
            .extend_symmetric()
            .canonicalize()
            .unwrap();
        assert_eq!(via_family, via_instance, "t = {}", t0);
    }
}

#[test]
fn canonicalize_permutation_invariant() {
    let fam = fixtures::builtin_family(1);
    let inst = fam.instantiate_int(5).unwrap();
    let mut shuffled = inst.clone();
    shuffled.xs.swap(0, 7);
    shuffled.xs.swap(2, 5);
    shuffled.ys.swap(1, 6);
    let a = inst.canonicalize().unwrap();
    let b = shuffled.canonicalize().unwrap();
    assert_eq!(a, b);
}

#[test]
fn equivalence_respects_reparametrization_and_sign() {
    let fam = fixtures::builtin_family(2);
    // t -> 2t - 3, scale by -5, swap sides
    let repl: Poly = "2*t - 3".parse().unwrap();
    let scale = BigInt::from(-5);
    let mapped = tep7::tep::SolutionFamily {
        xs: std::array::from_fn(|i| fam.ys[i].substitute(T, &repl).mul_scalar(&scale)),
        ys: std::array::from_fn(|i| fam.xs[i].substitute(T, &repl).mul_scalar(&scale)),
        label: "mapped".into(),
        degrees_claimed: fam.degrees_claimed.clone(),
    };
    assert!(equivalent(&fam, &mapped));
    assert!(equivalent(&mapped, &fam));
    assert!(!equivalent(&mapped, &fixtures::builtin_family(3)));
}

#[test]
fn instantiate_rational_matches_scaled_integer_math() {
    // at t = p/q the homogenized instance must satisfy the same multigrade
    let fam = fixtures::builtin_family(3);
    let degrees17: BTreeSet<u32> = (1..=7).collect();
    for (n, d) in [(1i64, 2i64), (-3, 2), (7, 3), (-5, 4)] {
        let t0 = BigRational::new(BigInt::from(n), BigInt::from(d));
        let inst = fam.instantiate(&t0).unwrap();
        assert!(inst.check_multigrade(&degrees17), "t = {}/{}", n, d);
    }
}

#[test]
fn heavy_resultant_agrees_across_both_routes() {
    // the resultant driving the first vanishing condition, computed by the
    // subresultant sequence and independently by Bareiss elimination of the
    // full Sylvester matrix
    let p = tep7::pipeline::substituted_phi_symbolic();
    let dp = p.derivative(A1);
    let fast = resultant(p, &dp, A1).unwrap();
    let slow = resultant_sylvester(p, &dp, A1).unwrap();
    assert_eq!(fast, slow);
}

#[test]
fn first_condition_strip_structure() {
    // the raw discriminant of the substituted sextic is a pure a3^30 times
    // the condition in (f, g): homogeneity pushes every monomial to the
    // same a3 power
    let disc = tep7::resultant::discriminant(tep7::pipeline::substituted_phi_symbolic(), A1)
        .unwrap();
    assert_eq!(disc.min_degree_in(A1), 0);
    assert_eq!(disc.min_degree_in(A3), 30);
    assert_eq!(disc.degree_in(A3), 30);
}

#[test]
fn parametrize_split_conic_route() {
    // A and C non-square but the discriminant a square: the form has a
    // rational zero and the line pencil through it parametrizes
    let q: Poly = "2*a1^2 + 5*a1*a3 + 3*a3^2".parse().unwrap();
    let param = tep7::pipeline::parametrize_square(&q).unwrap();
    assert_eq!(param.method, tep7::pipeline::ParamMethod::SplitConic);
    let qt = q.substitute_all(&[(A1, &param.alpha1), (A3, &param.alpha3)]);
    assert_eq!(qt, param.y.mul(&param.y));
    assert!(param.alpha1.degree_in(T) >= 1 && param.alpha3.degree_in(T) >= 1);
}
