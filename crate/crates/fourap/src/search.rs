//! Independent exhaustive brute-force oracles.
//!
//! These searches know nothing about the descent pipeline: they scan
//! explicit machine-integer grids with their own perfect-square test and
//! report every hit as a self-certifying witness. An empty hit list is a
//! statement about the scanned grid and nothing more — reports embed their
//! bounds so negative results stay bounded claims.
//!
//! All scans are pure functions over the outer-loop range, so they can be
//! partitioned into chunks, scanned independently, and merged; hits are
//! sorted at the end either way.

use std::ops::Range;

use crate::arith::Int;
use crate::error::Error;

/// How many terms the square-progression scan certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApLength {
    /// Full four-term windows (the nonexistence target).
    Four,
    /// Three-term prefixes: same scan, last test dropped. These exist in
    /// abundance and exercise the hit path.
    ThreePrefix,
}

/// Which square forms a pair scan tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormFilter {
    /// Both forms must be square (the nonexistence target).
    Both,
    /// Only the first form; single-form solutions exist and exercise the
    /// hit path.
    FirstOnly,
}

/// Search identity plus the exact grid it scanned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchKind {
    /// Pairs of squares a^2 < b^2 with roots up to `root_bound`; extends the
    /// two-term progression right by 1 or 2 steps.
    SquareProgression { root_bound: u64, length: ApLength },
    /// A in [1, a_bound], odd D in [1, d_bound], gcd(A, D) = 1, testing
    /// 16A^2+D^2 (and 4A^2+D^2 unless relaxed).
    DoubleSquarePair {
        a_bound: u64,
        d_bound: u64,
        forms: FormFilter,
    },
    /// x in [1, x_bound] (odd unless relaxed), even y in [2, y_bound],
    /// testing x^2+y^2 (and x^2+4y^2 unless relaxed).
    EulerPair {
        x_bound: u64,
        y_bound: u64,
        forms: FormFilter,
        odd_x_only: bool,
    },
    /// Integer squares r^2 < s^2 < t^2 in progression with the squarefree
    /// part of the common difference equal to k; roots r < s <= root_bound.
    ThreeSquareProgression { k: u64, root_bound: u64 },
}

impl SearchKind {
    /// The named bounds of the scanned grid.
    pub fn bounds(&self) -> Vec<(&'static str, u64)> {
        match self {
            SearchKind::SquareProgression { root_bound, .. } => {
                vec![("root_bound", *root_bound)]
            }
            SearchKind::DoubleSquarePair { a_bound, d_bound, .. } => {
                vec![("a_bound", *a_bound), ("d_bound", *d_bound)]
            }
            SearchKind::EulerPair { x_bound, y_bound, .. } => {
                vec![("x_bound", *x_bound), ("y_bound", *y_bound)]
            }
            SearchKind::ThreeSquareProgression { k, root_bound } => {
                vec![("k", *k), ("root_bound", *root_bound)]
            }
        }
    }
}

/// A single witness found by a scan. Each variant stores the roots needed
/// to re-check it without re-running the search.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Hit {
    /// Squares of `roots` in arithmetic progression with difference `diff`.
    SquareProgression { roots: Vec<u64>, diff: u64 },
    /// (A, D) with 16A^2+D^2 = root16^2 and, unless relaxed,
    /// 4A^2+D^2 = root4^2.
    DoubleSquarePair {
        a: u64,
        d: u64,
        root16: u64,
        root4: Option<u64>,
    },
    /// (x, y) with x^2+y^2 = root1^2 and, unless relaxed,
    /// x^2+4y^2 = root2^2.
    EulerPair {
        x: u64,
        y: u64,
        root1: u64,
        root2: Option<u64>,
    },
}

impl Hit {
    /// Re-checks the defining condition from the recorded values.
    pub fn revalidate(&self, kind: &SearchKind) -> bool {
        match (self, kind) {
            (
                Hit::SquareProgression { roots, diff },
                SearchKind::SquareProgression { length, .. },
            ) => {
                let expected = match length {
                    ApLength::Four => 4,
                    ApLength::ThreePrefix => 3,
                };
                if roots.len() != expected || *diff == 0 {
                    return false;
                }
                let squares: Vec<u128> =
                    roots.iter().map(|r| *r as u128 * *r as u128).collect();
                squares
                    .windows(2)
                    .all(|w| w[1].checked_sub(w[0]) == Some(*diff as u128))
            }
            (
                Hit::SquareProgression { roots, diff },
                SearchKind::ThreeSquareProgression { k, .. },
            ) => {
                if roots.len() != 3 || *diff == 0 {
                    return false;
                }
                let squares: Vec<u128> =
                    roots.iter().map(|r| *r as u128 * *r as u128).collect();
                if !squares
                    .windows(2)
                    .all(|w| w[1].checked_sub(w[0]) == Some(*diff as u128))
                {
                    return false;
                }
                squarefree_part(*diff) == *k
            }
            (
                Hit::DoubleSquarePair { a, d, root16, root4 },
                SearchKind::DoubleSquarePair { forms, .. },
            ) => {
                let a = *a as u128;
                let d = *d as u128;
                if 16 * a * a + d * d != (*root16 as u128).pow(2) {
                    return false;
                }
                match (forms, root4) {
                    (FormFilter::Both, Some(r4)) => {
                        4 * a * a + d * d == (*r4 as u128).pow(2)
                    }
                    (FormFilter::FirstOnly, None) => true,
                    _ => false,
                }
            }
            (
                Hit::EulerPair { x, y, root1, root2 },
                SearchKind::EulerPair { forms, .. },
            ) => {
                let x = *x as u128;
                let y = *y as u128;
                if x * x + y * y != (*root1 as u128).pow(2) {
                    return false;
                }
                match (forms, root2) {
                    (FormFilter::Both, Some(r2)) => {
                        x * x + 4 * y * y == (*r2 as u128).pow(2)
                    }
                    (FormFilter::FirstOnly, None) => true,
                    _ => false,
                }
            }
            _ => false,
        }
    }

    /// The hit as arbitrary-precision integers, for pipeline cross-checks.
    pub fn values(&self) -> Vec<Int> {
        match self {
            Hit::SquareProgression { roots, .. } => {
                roots.iter().map(|r| Int::from(*r)).collect()
            }
            Hit::DoubleSquarePair { a, d, .. } => vec![Int::from(*a), Int::from(*d)],
            Hit::EulerPair { x, y, .. } => vec![Int::from(*x), Int::from(*y)],
        }
    }
}

/// Outcome of one exhaustive scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub kind: SearchKind,
    pub hits: Vec<Hit>,
    /// Number of grid candidates examined (after parity filters; the
    /// coprimality filter runs only on squareness survivors).
    pub scanned: u64,
    /// True when the full stated grid was covered.
    pub exhaustive: bool,
}

impl SearchReport {
    pub fn bounds(&self) -> Vec<(&'static str, u64)> {
        self.kind.bounds()
    }

    /// Re-checks every recorded hit against the defining condition.
    pub fn revalidate_hits(&self) -> bool {
        self.hits.iter().all(|h| h.revalidate(&self.kind))
    }
}

// Perfect-square test over u64 with quadratic-residue prefilters mod 64 and
// 63; the same filters as the arbitrary-precision layer, independently
// implemented.
const SQUARES_MOD_64: u64 = {
    let mut mask = 0u64;
    let mut r = 0u64;
    while r < 64 {
        mask |= 1 << ((r * r) % 64);
        r += 1;
    }
    mask
};

const SQUARES_MOD_63: u64 = {
    let mut mask = 0u64;
    let mut r = 0u64;
    while r < 63 {
        mask |= 1 << ((r * r) % 63);
        r += 1;
    }
    mask
};

#[inline]
fn square_root_u64(n: u64) -> Option<u64> {
    if SQUARES_MOD_64 & (1 << (n % 64)) == 0 {
        return None;
    }
    if SQUARES_MOD_63 & (1 << (n % 63)) == 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && r > n / r {
        r -= 1;
    }
    while (r + 1) as u128 * (r + 1) as u128 <= n as u128 {
        r += 1;
    }
    if r * r == n {
        Some(r)
    } else {
        None
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn squarefree_part(mut n: u64) -> u64 {
    let mut k = 1u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut exp = 0u32;
            while n % d == 0 {
                n /= d;
                exp += 1;
            }
            if exp % 2 == 1 {
                k *= d;
            }
        }
        d += 1;
    }
    k * n
}

/// Scans square pairs a < b <= root_bound, extending b^2 by the difference
/// d = b^2 - a^2 once (three-term prefix) or twice (full four-term window).
/// For the four-term scan a hit would contradict the nonexistence theorem.
pub fn search_square_progression(root_bound: u64, length: ApLength) -> SearchReport {
    scan_square_progression(2..root_bound + 1, root_bound, length, 1)
}

/// Four-term windows: the headline nonexistence scan.
pub fn search_four_square_ap(root_bound: u64) -> SearchReport {
    search_square_progression(root_bound, ApLength::Four)
}

fn scan_square_progression(
    outer: Range<u64>,
    root_bound: u64,
    length: ApLength,
    partitions: usize,
) -> SearchReport {
    // 3 * root_bound^2 must fit a u64
    assert!(root_bound <= 2_000_000_000, "desk-scale scan bound");
    let kind = SearchKind::SquareProgression { root_bound, length };
    let (hits, scanned) = run_partitioned(outer, partitions, move |b_range| {
        let mut hits = Vec::new();
        let mut scanned = 0u64;
        for b in b_range {
            let b2 = b * b;
            for a in 1..b {
                scanned += 1;
                let d = b2 - a * a;
                let third = b2 + d;
                let Some(t3) = square_root_u64(third) else {
                    continue;
                };
                match length {
                    ApLength::ThreePrefix => {
                        hits.push(Hit::SquareProgression {
                            roots: vec![a, b, t3],
                            diff: d,
                        });
                    }
                    ApLength::Four => {
                        let fourth = third + d;
                        if let Some(t4) = square_root_u64(fourth) {
                            hits.push(Hit::SquareProgression {
                                roots: vec![a, b, t3, t4],
                                diff: d,
                            });
                        }
                    }
                }
            }
        }
        (hits, scanned)
    });
    SearchReport {
        kind,
        hits,
        scanned,
        exhaustive: true,
    }
}

/// Scans coprime pairs (A, odd D) testing 16A^2+D^2 and, unless relaxed,
/// 4A^2+D^2 for squareness. With both forms a hit would contradict the
/// descent theorem.
pub fn search_double_square_pairs(a_bound: u64, d_bound: u64) -> SearchReport {
    scan_double_square(1..a_bound + 1, a_bound, d_bound, FormFilter::Both, 1)
}

/// Single-form relaxation of [`search_double_square_pairs`]; solutions of
/// 16A^2+D^2 = square alone exist and prove the scan detects hits.
pub fn search_double_square_pairs_relaxed(a_bound: u64, d_bound: u64) -> SearchReport {
    scan_double_square(1..a_bound + 1, a_bound, d_bound, FormFilter::FirstOnly, 1)
}

fn scan_double_square(
    outer: Range<u64>,
    a_bound: u64,
    d_bound: u64,
    forms: FormFilter,
    partitions: usize,
) -> SearchReport {
    // 16 a^2 + d^2 must fit a u64
    assert!(
        a_bound <= 1_000_000_000 && d_bound <= 1_000_000_000,
        "desk-scale scan bounds"
    );
    let kind = SearchKind::DoubleSquarePair {
        a_bound,
        d_bound,
        forms,
    };
    let (hits, scanned) = run_partitioned(outer, partitions, move |a_range| {
        let mut hits = Vec::new();
        let mut scanned = 0u64;
        for a in a_range {
            let a2_16 = 16 * a * a;
            let a2_4 = 4 * a * a;
            let mut d = 1u64;
            while d <= d_bound {
                // the squareness tests are far cheaper than the gcd, so
                // filter coprimality only on survivors
                scanned += 1;
                if let Some(root16) = square_root_u64(a2_16 + d * d) {
                    let second = match forms {
                        FormFilter::Both => square_root_u64(a2_4 + d * d).map(Some),
                        FormFilter::FirstOnly => Some(None),
                    };
                    if let Some(root4) = second {
                        if gcd_u64(a, d) == 1 {
                            hits.push(Hit::DoubleSquarePair { a, d, root16, root4 });
                        }
                    }
                }
                d += 2;
            }
        }
        (hits, scanned)
    });
    SearchReport {
        kind,
        hits,
        scanned,
        exhaustive: true,
    }
}

/// Scans x (odd unless relaxed) and even nonzero y, testing x^2+y^2 and,
/// unless relaxed, x^2+4y^2.
pub fn search_euler_pairs(x_bound: u64, y_bound: u64) -> SearchReport {
    scan_euler(
        1..x_bound + 1,
        x_bound,
        y_bound,
        FormFilter::Both,
        true,
        1,
    )
}

/// Single-form, any-parity-x relaxation of [`search_euler_pairs`]; ordinary
/// Pythagorean pairs like (3, 4) appear as hits.
pub fn search_euler_pairs_relaxed(x_bound: u64, y_bound: u64) -> SearchReport {
    scan_euler(
        1..x_bound + 1,
        x_bound,
        y_bound,
        FormFilter::FirstOnly,
        false,
        1,
    )
}

fn scan_euler(
    outer: Range<u64>,
    x_bound: u64,
    y_bound: u64,
    forms: FormFilter,
    odd_x_only: bool,
    partitions: usize,
) -> SearchReport {
    // x^2 + 4 y^2 must fit a u64
    assert!(
        x_bound <= 1_000_000_000 && y_bound <= 1_000_000_000,
        "desk-scale scan bounds"
    );
    let kind = SearchKind::EulerPair {
        x_bound,
        y_bound,
        forms,
        odd_x_only,
    };
    let (hits, scanned) = run_partitioned(outer, partitions, move |x_range| {
        let mut hits = Vec::new();
        let mut scanned = 0u64;
        for x in x_range {
            if odd_x_only && x % 2 == 0 {
                continue;
            }
            let x2 = x * x;
            let mut y = 2u64;
            while y <= y_bound {
                scanned += 1;
                if let Some(root1) = square_root_u64(x2 + y * y) {
                    let second = match forms {
                        FormFilter::Both => square_root_u64(x2 + 4 * y * y).map(Some),
                        FormFilter::FirstOnly => Some(None),
                    };
                    if let Some(root2) = second {
                        hits.push(Hit::EulerPair { x, y, root1, root2 });
                    }
                }
                y += 2;
            }
        }
        (hits, scanned)
    });
    SearchReport {
        kind,
        hits,
        scanned,
        exhaustive: true,
    }
}

/// Finds integer squares r^2 < s^2 < t^2 in progression whose common
/// difference has squarefree part k; cross-checks the congruent-number
/// certificates. `k` must be squarefree and at least 1.
pub fn search_three_square_ap(k: u64, root_bound: u64) -> Result<SearchReport, Error> {
    if k == 0 {
        return Err(Error::OutOfDomain {
            op: "search_three_square_ap (k)",
            value: Int::from(0),
        });
    }
    if squarefree_part(k) != k {
        return Err(Error::NotSquarefree { value: Int::from(k) });
    }
    Ok(scan_three_square(2..root_bound + 1, k, root_bound, 1))
}

fn scan_three_square(
    outer: Range<u64>,
    k: u64,
    root_bound: u64,
    partitions: usize,
) -> SearchReport {
    assert!(root_bound <= 2_000_000_000, "desk-scale scan bound");
    let kind = SearchKind::ThreeSquareProgression { k, root_bound };
    let (hits, scanned) = run_partitioned(outer, partitions, move |s_range| {
        let mut hits = Vec::new();
        let mut scanned = 0u64;
        for s in s_range {
            let s2 = s * s;
            for r in 1..s {
                scanned += 1;
                let d = s2 - r * r;
                if let Some(t) = square_root_u64(s2 + d) {
                    if squarefree_part(d) == k {
                        hits.push(Hit::SquareProgression {
                            roots: vec![r, s, t],
                            diff: d,
                        });
                    }
                }
            }
        }
        (hits, scanned)
    });
    SearchReport {
        kind,
        hits,
        scanned,
        exhaustive: true,
    }
}

/// Partitioned front ends: identical reports to the plain scans, produced
/// by splitting the outer loop into `partitions` contiguous chunks scanned
/// on separate threads and merged deterministically.
pub mod partitioned {
    use super::*;

    pub fn search_four_square_ap(root_bound: u64, partitions: usize) -> SearchReport {
        scan_square_progression(2..root_bound + 1, root_bound, ApLength::Four, partitions)
    }

    pub fn search_double_square_pairs(
        a_bound: u64,
        d_bound: u64,
        partitions: usize,
    ) -> SearchReport {
        scan_double_square(1..a_bound + 1, a_bound, d_bound, FormFilter::Both, partitions)
    }

    pub fn search_euler_pairs(x_bound: u64, y_bound: u64, partitions: usize) -> SearchReport {
        scan_euler(1..x_bound + 1, x_bound, y_bound, FormFilter::Both, true, partitions)
    }

    pub fn search_three_square_ap(
        k: u64,
        root_bound: u64,
        partitions: usize,
    ) -> Result<SearchReport, Error> {
        if k == 0 {
            return Err(Error::OutOfDomain {
                op: "search_three_square_ap (k)",
                value: Int::from(0),
            });
        }
        if squarefree_part(k) != k {
            return Err(Error::NotSquarefree { value: Int::from(k) });
        }
        Ok(scan_three_square(2..root_bound + 1, k, root_bound, partitions))
    }
}

/// Splits `outer` into contiguous chunks, scans each (on threads when more
/// than one chunk), and concatenates partial results in chunk order before
/// the final sort — the merge is independent of thread timing.
fn run_partitioned<F>(outer: Range<u64>, partitions: usize, scan: F) -> (Vec<Hit>, u64)
where
    F: Fn(Range<u64>) -> (Vec<Hit>, u64) + Sync,
{
    let partitions = partitions.max(1);
    let total = outer.end.saturating_sub(outer.start);
    let chunk = total.div_ceil(partitions as u64).max(1);
    let ranges: Vec<Range<u64>> = (0..partitions as u64)
        .map(|i| {
            let lo = (outer.start + i * chunk).min(outer.end);
            let hi = (lo + chunk).min(outer.end);
            lo..hi
        })
        .filter(|r| !r.is_empty())
        .collect();
    let mut parts: Vec<(Vec<Hit>, u64)> = Vec::new();
    if ranges.len() <= 1 {
        for r in ranges {
            parts.push(scan(r));
        }
    } else {
        let scan = &scan;
        std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|r| scope.spawn(move || scan(r)))
                .collect();
            for h in handles {
                parts.push(h.join().expect("scan thread panicked"));
            }
        });
    }
    let mut hits = Vec::new();
    let mut scanned = 0u64;
    for (mut part_hits, part_scanned) in parts {
        hits.append(&mut part_hits);
        scanned += part_scanned;
    }
    hits.sort();
    (hits, scanned)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_square_bound_three_scans_three_pairs() {
        let report = search_four_square_ap(3);
        assert_eq!(report.scanned, 3); // (1,2), (1,3), (2,3)
        assert!(report.hits.is_empty());
        assert!(report.exhaustive);
    }

    #[test]
    fn three_term_prefix_finds_1_25_49() {
        let report = search_square_progression(10, ApLength::ThreePrefix);
        let expected = Hit::SquareProgression {
            roots: vec![1, 5, 7],
            diff: 24,
        };
        assert!(report.hits.contains(&expected), "{:?}", report.hits);
        assert!(report.revalidate_hits());
    }

    #[test]
    fn double_square_tiny_grid() {
        let report = search_double_square_pairs(1, 1);
        assert!(report.hits.is_empty());
        assert_eq!(report.scanned, 1); // (1, 1) only: 17 and 5 are not squares
    }

    #[test]
    fn double_square_relaxed_detects_3_5() {
        let report = search_double_square_pairs_relaxed(3, 5);
        let expected = Hit::DoubleSquarePair {
            a: 3,
            d: 5,
            root16: 13,
            root4: None,
        };
        assert!(report.hits.contains(&expected), "{:?}", report.hits);
        assert!(report.revalidate_hits());
    }

    #[test]
    fn euler_strict_small_grids() {
        let report = search_euler_pairs(3, 4);
        assert!(report.hits.is_empty());
        // x in {1, 3}, y in {2, 4}
        assert_eq!(report.scanned, 4);
    }

    #[test]
    fn euler_relaxed_detects_3_4() {
        let report = search_euler_pairs_relaxed(4, 4);
        let expected = Hit::EulerPair {
            x: 3,
            y: 4,
            root1: 5,
            root2: None,
        };
        assert!(report.hits.contains(&expected), "{:?}", report.hits);
        assert!(report.revalidate_hits());
    }

    #[test]
    fn three_square_examples() {
        let report = search_three_square_ap(5, 100).unwrap();
        let expected = Hit::SquareProgression {
            roots: vec![31, 41, 49],
            diff: 720,
        };
        assert!(report.hits.contains(&expected), "{:?}", report.hits);
        assert!(report.revalidate_hits());

        let report = search_three_square_ap(6, 10).unwrap();
        let expected = Hit::SquareProgression {
            roots: vec![1, 5, 7],
            diff: 24,
        };
        assert!(report.hits.contains(&expected));

        let report = search_three_square_ap(1, 100).unwrap();
        assert!(report.hits.is_empty());

        assert!(search_three_square_ap(4, 10).is_err());
        assert!(search_three_square_ap(0, 10).is_err());
    }

    #[test]
    fn partitioned_scans_match_plain_scans() {
        for parts in [2usize, 3, 7] {
            assert_eq!(
                partitioned::search_four_square_ap(200, parts),
                search_four_square_ap(200)
            );
            assert_eq!(
                partitioned::search_double_square_pairs(40, 80, parts),
                search_double_square_pairs(40, 80)
            );
            assert_eq!(
                partitioned::search_euler_pairs(60, 60, parts),
                search_euler_pairs(60, 60)
            );
            assert_eq!(
                partitioned::search_three_square_ap(5, 120, parts).unwrap(),
                search_three_square_ap(5, 120).unwrap()
            );
        }
    }

    #[test]
    fn square_root_u64_edges() {
        for r in [0u64, 1, 2, 3, 4294967295, 3_037_000_499] {
            assert_eq!(square_root_u64(r * r), Some(r));
            if r > 1 {
                assert_eq!(square_root_u64(r * r - 1), None);
            }
        }
        assert_eq!(square_root_u64(65), None);
        assert_eq!(square_root_u64(1681), Some(41));
        assert_eq!(square_root_u64(u64::MAX), None);
    }

    #[test]
    fn squarefree_part_examples() {
        assert_eq!(squarefree_part(720), 5);
        assert_eq!(squarefree_part(24), 6);
        assert_eq!(squarefree_part(1), 1);
        assert_eq!(squarefree_part(49), 1);
    }
}
