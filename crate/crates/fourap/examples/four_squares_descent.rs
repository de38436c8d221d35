//! The four-squares descent pipeline, step by step.
//!
//! Four distinct rational squares never form an arithmetic progression, so
//! on real inputs the pipeline either certifies the degenerate constant
//! window or refutes with the first condition that failed.
//!
//! ```bash
//! cargo run -p fourap --example four_squares_descent
//! ```

use fourap::arith::{int, rational, Rational};
use fourap::descent::{
    ad_to_ap, clear_denominators, descent_step, forward_to_ad, normalize_window, AdPair,
    FourApCandidate,
};

fn rat(p: i64, q: i64) -> Rational {
    rational(int(p), int(q)).expect("nonzero denominator")
}

fn main() {
    // The degenerate window 1, 1, 1, 1 walks the whole chain and certifies.
    let window = FourApCandidate::degenerate();
    let witness = forward_to_ad(&window).expect("trivial window certifies");
    println!("window (x={}, n={}) certifies:", witness.x, witness.n);
    println!(
        "  y = {}, (u, v) = ({}, {}), (A, D) = ({}, {})",
        witness.y, witness.u, witness.v, witness.a, witness.d
    );

    // Anything else refutes somewhere; the refutation names the failure.
    println!("\nrefutations:");
    for (x, n) in [(7i64, 1i64), (49, 4), (25, 2)] {
        let candidate = FourApCandidate::new(int(x), int(n)).expect("valid window shape");
        let refutation = forward_to_ad(&candidate).expect_err("nontrivial windows refute");
        println!("  (x={x}, n={n}): {refutation}");
        assert!(refutation.reproduces());
    }

    // Rational inputs are cleared to integers first.
    let quarters = [rat(1, 4), rat(25, 4), rat(49, 4), rat(73, 4)];
    println!(
        "\n1/4, 25/4, 49/4, 73/4: {}",
        clear_denominators(&quarters).expect_err("73/4 is not a square")
    );
    let constant = [rat(9, 4), rat(9, 4), rat(9, 4), rat(9, 4)];
    let cleared = clear_denominators(&constant).unwrap();
    let candidate = normalize_window(&cleared).unwrap();
    println!(
        "9/4 (x4) clears to {:?} and normalizes to (x={}, n={})",
        cleared,
        candidate.x(),
        candidate.n()
    );

    // The reverse direction: a pair (A, D) with both 16A^2+D^2 and 4A^2+D^2
    // square would rebuild a window. Only (0, 1) qualifies.
    println!("\nreverse direction:");
    for (a, d) in [(0i64, 1i64), (1, 1), (6, 1), (3, 5)] {
        let pair = AdPair::new(int(a), int(d)).expect("valid pair shape");
        match ad_to_ap(&pair) {
            Ok(window) => println!("  (A={a}, D={d}) -> window (x={}, n={})", window.x(), window.n()),
            Err(refutation) => println!("  (A={a}, D={d}): {refutation}"),
        }
    }

    // The descent step reproduces the degenerate fixpoint instead of
    // descending below it.
    let fixpoint = AdPair::degenerate().certify().expect("(0,1) certifies");
    let step = descent_step(&fixpoint);
    println!(
        "\ndescent on (0, 1): next = ({}, {}), split UV = {}*{} = U'V' = {}*{}",
        step.next.a(),
        step.next.d(),
        step.split.u,
        step.split.v,
        step.split.u_prime,
        step.split.v_prime
    );
}
