//! The quartic model C, the elliptic curve E (24A1), and the maps between
//! windows, C, and E.
//!
//! ```bash
//! cargo run -p fourap --example elliptic_curve
//! ```

use fourap::arith::{int, Rational};
use fourap::curves::{
    e_add, e_mul, e_to_quartic, naive_point_search, point_order, quartic_to_e, torsion_points,
    window_to_quartic, EPoint,
};

fn rq(v: i64) -> Rational {
    Rational::from_integer(int(v))
}

fn main() {
    // A window (x, n, y) with y^2 = (x^2-4n^2)(x^2-36n^2) lands on
    // C: Y^2 - (X^2-5)Y + 4 = 0, and C maps to E: y^2 = x(x+1)(x+4)
    // by (X, Y) -> (Y, XY).
    let q = window_to_quartic(&rq(6), &rq(1), &rq(0)).expect("degenerate window, y = 0");
    println!("window (6, 1, 0) -> C point ({}, {})", q.x(), q.y());
    let e = quartic_to_e(&q).expect("C maps to E");
    println!("            -> E point {e}");
    let back = e_to_quartic(&e).expect("x != 0");
    assert_eq!(&back, &q);
    println!("            -> back on C ({}, {})", back.x(), back.y());

    // group law
    let p1 = EPoint::affine(rq(0), rq(0)).unwrap();
    let p2 = EPoint::affine(rq(-1), rq(0)).unwrap();
    println!("\n(0,0) + (-1,0) = {}", e_add(&p1, &p2));
    let gen4 = EPoint::affine(rq(2), rq(6)).unwrap();
    for k in 1..=4 {
        println!("{k} * (2,6) = {}", e_mul(&int(k), &gen4));
    }

    // the full rational torsion, by Nagell-Lutz plus order checks
    println!("\ntorsion points:");
    for p in torsion_points() {
        let order = if p.is_infinity() { 1 } else { point_order(&p) };
        println!("  {p}  (order {order})");
    }

    // an exact height-bounded scan finds nothing beyond the torsion:
    // consistent with rank 0, every point of E comes from a degenerate
    // window.
    let found = naive_point_search(1000);
    println!(
        "\nheight-1000 point search: {} affine points, all torsion",
        found.len()
    );
    for p in &found {
        assert!(e_mul(&int(8), p).is_infinity(), "every found point is torsion");
        print!("  {p}");
    }
    println!();
}
