//! Agreement between the independent brute-force oracles and the exact
//! pipeline: two implementations that share no code must reach the same
//! verdicts.

use fourap::arith::{gcd, int, Int};
use fourap::congruent::{certify_congruent, triangle_from_ap, CertifyOutcome, ThreeSquareAP};
use fourap::descent::{ad_to_ap, AdPair, FailedCondition};
use fourap::search::{
    search_double_square_pairs, search_double_square_pairs_relaxed, search_three_square_ap, Hit,
};

/// The oracle's verdict on the double-square grid matches the pipeline's:
/// both say "no" everywhere with A >= 1, and (0, 1) — outside the oracle's
/// grid — is the pipeline's unique yes.
#[test]
fn double_square_oracle_agrees_with_the_pipeline() {
    let report = search_double_square_pairs(200, 399);
    assert!(report.hits.is_empty());

    for a in 0i64..=200 {
        for d in (1i64..=399).step_by(2) {
            if gcd(&int(a), &int(d)) != int(1) {
                continue;
            }
            let pipeline_accepts = ad_to_ap(&AdPair::new(int(a), int(d)).unwrap()).is_ok();
            let oracle_hit = report
                .hits
                .iter()
                .any(|h| matches!(h, Hit::DoubleSquarePair { a: ha, d: hd, .. } if *ha == a as u64 && *hd == d as u64));
            if a == 0 {
                assert!(pipeline_accepts, "(0, 1) certifies");
            } else {
                assert_eq!(pipeline_accepts, oracle_hit, "disagreement at ({a}, {d})");
            }
        }
    }
}

/// Finer agreement via the relaxed oracle: the pairs whose 16-form alone is
/// square are exactly the pairs the pipeline refutes at the *4-form* stage.
#[test]
fn relaxed_oracle_matches_the_refutation_stage() {
    let a_bound = 50i64;
    let d_bound = 99i64;
    let relaxed = search_double_square_pairs_relaxed(a_bound as u64, d_bound as u64);
    let mut oracle_pairs: Vec<(i64, i64)> = relaxed
        .hits
        .iter()
        .map(|h| match h {
            Hit::DoubleSquarePair { a, d, .. } => (*a as i64, *d as i64),
            other => panic!("unexpected hit {other:?}"),
        })
        .collect();
    oracle_pairs.sort_unstable();

    let mut pipeline_pairs = Vec::new();
    for a in 1..=a_bound {
        for d in (1..=d_bound).step_by(2) {
            if gcd(&int(a), &int(d)) != int(1) {
                continue;
            }
            let refutation = ad_to_ap(&AdPair::new(int(a), int(d)).unwrap())
                .expect_err("no nontrivial pair certifies");
            if matches!(
                refutation.condition,
                FailedCondition::FourFormNotSquare { .. }
            ) {
                // the 16-form passed, the 4-form failed
                pipeline_pairs.push((a, d));
            }
        }
    }
    pipeline_pairs.sort_unstable();
    assert_eq!(oracle_pairs, pipeline_pairs);
    assert!(
        !oracle_pairs.is_empty(),
        "single-form solutions exist in this range"
    );
}

/// Three-square oracle hits and congruent certificates describe the same
/// objects: clearing a certificate's progression lands among the hits, and
/// every hit rebuilds into a valid triangle for the same k.
#[test]
fn three_square_oracle_agrees_with_certificates() {
    for k in [5i64, 6, 30] {
        let cert = match certify_congruent(&int(k), &int(500)).unwrap() {
            CertifyOutcome::Found(cert) => cert,
            other => panic!("{k} certifies below 500, got {other:?}"),
        };
        // clear the rational roots at scale 2m
        let (a, b, c) = cert.ap.roots();
        let two_m = fourap::arith::Rational::from_integer(&cert.m * 2);
        let roots: Vec<u64> = [a, b, c]
            .iter()
            .map(|r| {
                let cleared = *r * &two_m;
                assert!(cleared.is_integer());
                cleared.to_integer().to_string().parse().unwrap()
            })
            .collect();

        let report = search_three_square_ap(k as u64, 500).unwrap();
        let found = report.hits.iter().any(|h| match h {
            Hit::SquareProgression { roots: hr, .. } => *hr == roots,
            _ => false,
        });
        assert!(found, "certificate progression for k = {k} missing from the oracle hits");

        // every oracle hit re-builds a triangle of squarefree area part k
        for hit in &report.hits {
            let Hit::SquareProgression { roots, diff } = hit else {
                panic!("unexpected hit {hit:?}");
            };
            let scale = ((*diff / k as u64) as f64).sqrt() as u64;
            assert_eq!(scale * scale * k as u64, *diff, "diff = k * scale^2");
            let scale_q = fourap::arith::Rational::from_integer(Int::from(scale));
            let to_rat =
                |r: u64| fourap::arith::Rational::from_integer(Int::from(r)) / &scale_q;
            let ap = ThreeSquareAP::new(
                to_rat(roots[0]),
                to_rat(roots[1]),
                to_rat(roots[2]),
                int(k),
            )
            .expect("oracle hit forms a valid progression");
            let (triangle, primitive) = triangle_from_ap(&ap).unwrap();
            assert_eq!(
                triangle.area(),
                fourap::arith::Rational::from_integer(int(k))
            );
            let (part, _) =
                fourap::arith::squarefree_split(&primitive.area()).unwrap();
            assert_eq!(part, int(k));
        }
    }
}
