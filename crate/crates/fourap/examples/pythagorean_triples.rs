//! Primitive Pythagorean triples through the (u, v) parametrization.
//!
//! ```bash
//! cargo run -p fourap --example pythagorean_triples
//! ```

use fourap::arith::int;
use fourap::pythagoras::{
    enumerate_primitive_triples, params_from_triple, triple_from_params, ParamPair,
};

fn main() {
    // (4uv, |4u^2 - v^2|, 4u^2 + v^2) with gcd(2u, v) = 1 hits every
    // primitive triple exactly once.
    println!("parameters -> triples:");
    for (u, v) in [(1i64, 1i64), (2, 5), (1, 3), (3, 1), (2, 7)] {
        let pair = ParamPair::new(int(u), int(v)).expect("coprime parameters");
        let t = triple_from_params(&pair);
        println!(
            "  (u={u}, v={v}) -> ({}, {}, {})   area {}",
            t.even_leg(),
            t.odd_leg(),
            t.hyp(),
            t.area()
        );
    }

    // and back: recover (u, v) from the sides alone
    println!("\ntriples -> parameters:");
    for t in enumerate_primitive_triples(&int(60)).expect("desk-scale bound") {
        let p = params_from_triple(&t).expect("every primitive triple has parameters");
        println!(
            "  ({:>3}, {:>3}, {:>3})  <-  (u={}, v={})",
            t.even_leg(),
            t.odd_leg(),
            t.hyp(),
            p.u(),
            p.v()
        );
    }

    let count = enumerate_primitive_triples(&int(10_000))
        .expect("desk-scale bound")
        .len();
    println!("\nprimitive triples with hypotenuse <= 10000: {count}");
}
