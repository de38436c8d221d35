//! Certificate documents: what the CLI emits and how `check` re-validates.
//!
//! ```bash
//! cargo run -p fourap --example certificates
//! ```

use fourap::arith::{int, Rational};
use fourap::descent::{clear_denominators, forward_to_ad, AdPair, FourApCandidate};
use fourap::document::{
    check_document, descend_refutation_document, to_json_line, torsion_documents,
    window_refutation_document, witness_document,
};

fn main() {
    // a witness document for the degenerate window, with the full trace
    let witness = forward_to_ad(&FourApCandidate::degenerate()).unwrap();
    let inputs: Vec<String> = vec!["1".into(), "1".into(), "1".into(), "1".into()];
    let doc = witness_document(&inputs, &witness, true);
    println!("{}", to_json_line(&doc));
    check_document(&doc).expect("emitted documents re-validate");

    // a refutation document records the failed condition with its operands,
    // so it can be replayed without re-running the whole pipeline
    let terms: [Rational; 4] = [1, 5, 9, 13].map(|t| Rational::from_integer(int(t)));
    let refutation = clear_denominators(&terms).unwrap_err();
    println!("\n{refutation}");
    let doc = window_refutation_document(
        &["1".into(), "5".into(), "9".into(), "13".into()],
        &refutation,
    );
    println!("{}", to_json_line(&doc));
    check_document(&doc).expect("window refutations re-validate");

    let pair = AdPair::new(int(2), int(1)).unwrap();
    let refutation = pair.certify().unwrap_err();
    let doc = descend_refutation_document(&pair, &refutation);
    println!("\n{}", to_json_line(&doc));
    check_document(&doc).expect("descend refutations re-validate");

    // torsion documents carry each point's order; check re-derives it
    println!();
    for doc in torsion_documents() {
        println!("{}", to_json_line(&doc));
        check_document(&doc).expect("torsion documents re-validate");
    }
}
