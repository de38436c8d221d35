//! Congruent numbers as common differences of three rational squares in
//! arithmetic progression.
//!
//! ```bash
//! cargo run -p fourap --example congruent_numbers
//! ```

use fourap::arith::int;
use fourap::congruent::{ap_from_triangle, certify_congruent, triangle_from_ap, CertifyOutcome};

fn main() {
    // 1/4, 25/4, 49/4 is a progression of squares with common difference 6,
    // and 6 is the area of the (3, 4, 5) triangle. The same works for every
    // congruent number.
    for k in [5i64, 6, 7, 30, 1] {
        match certify_congruent(&int(k), &int(1000)).expect("k is squarefree") {
            CertifyOutcome::Found(cert) => {
                let (a, b, c) = cert.ap.roots();
                let (s1, s2, s3) = cert.ap.squares();
                println!("k = {k} is congruent:");
                println!(
                    "  triangle ({}, {}, {}) has area {} = {}*{}^2",
                    cert.triple.even_leg(),
                    cert.triple.odd_leg(),
                    cert.triple.hyp(),
                    cert.triple.area(),
                    cert.k,
                    cert.m
                );
                println!("  roots   {a}, {b}, {c}");
                println!("  squares {s1}, {s2}, {s3}  (difference {k})");
                cert.verify().expect("certificate re-validates");
            }
            CertifyOutcome::ExhaustedBelow { hyp_bound, .. } => {
                println!(
                    "k = {k}: no triangle with hypotenuse <= {hyp_bound} \
                     (a bounded statement, not a proof)"
                );
            }
        }
        println!();
    }

    // the maps invert each other
    let cert = match certify_congruent(&int(5), &int(50)).unwrap() {
        CertifyOutcome::Found(cert) => cert,
        _ => unreachable!("5 certifies below 50"),
    };
    let ap = ap_from_triangle(&cert.triple).unwrap();
    let (triangle, primitive) = triangle_from_ap(&ap).unwrap();
    println!(
        "roundtrip: rational triangle ({}, {}, {}) -> primitive ({}, {}, {})",
        triangle.leg_short,
        triangle.leg_long,
        triangle.hyp,
        primitive.even_leg(),
        primitive.odd_leg(),
        primitive.hyp()
    );
}
