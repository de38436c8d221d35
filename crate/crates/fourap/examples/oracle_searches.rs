//! The brute-force oracles at desk scale.
//!
//! ```bash
//! cargo run --release -p fourap --example oracle_searches
//! ```

use fourap::search::{
    partitioned, search_double_square_pairs_relaxed, search_euler_pairs_relaxed,
    search_four_square_ap, search_square_progression, search_three_square_ap, ApLength,
};

fn main() {
    // No four squares in arithmetic progression below the bound.
    let report = search_four_square_ap(2_000);
    println!(
        "four-square windows, roots <= 2000: {} hits over {} pairs",
        report.hits.len(),
        report.scanned
    );

    // Dropping the last test makes hits plentiful: three squares in
    // progression exist everywhere.
    let report = search_square_progression(30, ApLength::ThreePrefix);
    println!(
        "\nthree-square prefixes, roots <= 30: {} hits, first few:",
        report.hits.len()
    );
    for hit in report.hits.iter().take(5) {
        println!("  {hit:?}");
    }

    // The pair forms 16A^2+D^2 and 4A^2+D^2 are never both square...
    let report = partitioned::search_double_square_pairs(500, 2_000, 4);
    println!(
        "\ndouble-square pairs, A <= 500, D <= 2000 (4 partitions): {} hits over {} pairs",
        report.hits.len(),
        report.scanned
    );
    // ...though the first form alone is, routinely.
    let relaxed = search_double_square_pairs_relaxed(10, 20);
    println!("first form alone, A <= 10, D <= 20: {:?}", relaxed.hits);

    // Same story for x^2+y^2 and x^2+4y^2 with x odd, y even.
    let report = partitioned::search_euler_pairs(2_000, 2_000, 4);
    println!(
        "\nEuler pairs, x, y <= 2000: {} hits over {} pairs",
        report.hits.len(),
        report.scanned
    );
    let relaxed = search_euler_pairs_relaxed(5, 5);
    println!("first form alone, bounds 5: {:?}", relaxed.hits);

    // Three squares in progression with a prescribed squarefree difference
    // exist exactly for congruent numbers.
    for k in [5u64, 6, 1] {
        let report = search_three_square_ap(k, 100).expect("squarefree k");
        println!(
            "\nthree squares with squarefree difference part {k}, roots <= 100: {} hits",
            report.hits.len()
        );
        for hit in &report.hits {
            println!("  {hit:?}");
        }
    }
}
