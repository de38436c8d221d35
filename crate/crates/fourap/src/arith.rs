//! Arbitrary-precision exact arithmetic and perfect-square utilities.
//!
//! Everything downstream — triple parametrization, the descent chain, the
//! curve group law — reduces to a handful of exact primitives collected here:
//! gcd, integer square root, perfect-square recognition, and the squarefree
//! split `n = k * m^2`. All functions are pure and never round: `Int` is an
//! arbitrary-precision signed integer and `Rational` an exact reduced
//! fraction with positive denominator.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Exact rational number, always reduced, denominator always positive.
pub type Rational = num_rational::BigRational;

/// Shorthand for building an [`Int`] from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Checked rational construction: rejects a zero denominator, then reduces
/// and normalizes the sign into the numerator.
pub fn rational(num: Int, den: Int) -> Result<Rational, Error> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

/// Nonnegative greatest common divisor, with `gcd(0, 0) = 0`.
pub fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}

/// Floor of the square root, exact for any width.
///
/// Integer Newton iteration from an initial guess derived from the bit
/// length; the sequence decreases monotonically to the floor once it is at
/// or above the true root.
///
/// # Panics
///
/// Panics if `n` is negative.
pub fn isqrt(n: &Int) -> Int {
    assert!(!n.is_negative(), "isqrt of negative value {n}");
    if n.is_zero() {
        return Int::zero();
    }
    // 2^ceil(bits/2) >= sqrt(n), so the iteration starts above the root.
    let mut x: Int = Int::one() << (n.bits().div_ceil(2) as usize);
    loop {
        let next: Int = (&x + n / &x) >> 1;
        if next >= x {
            return x;
        }
        x = next;
    }
}

// Quadratic residues modulo 64 and 63, as lookup bitmaps. Only ~23% of
// residue classes survive both filters, so most non-squares never reach the
// isqrt call.
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

/// The nonnegative root if `n` is a perfect square, otherwise `None`.
/// Negative numbers are never squares.
pub fn is_perfect_square(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r64 = (n % 64u32).to_u64().expect("residue fits u64");
    if SQUARES_MOD_64 & (1 << r64) == 0 {
        return None;
    }
    let r63 = (n % 63u32).to_u64().expect("residue fits u64");
    if SQUARES_MOD_63 & (1 << r63) == 0 {
        return None;
    }
    let r = isqrt(n);
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Splits `n >= 1` as `n = k * m^2` with `k` squarefree; returns `(k, m)`.
///
/// Trial division up to the cube root, then a perfect-square test on the
/// residual cofactor (which at that point is `1`, `p`, `p^2`, or `pq`).
pub fn squarefree_split(n: &Int) -> Result<(Int, Int), Error> {
    if !n.is_positive() {
        return Err(Error::OutOfDomain {
            op: "squarefree_split",
            value: n.clone(),
        });
    }
    if let Some(small) = n.to_u128() {
        let (k, m) = squarefree_split_u128(small);
        return Ok((Int::from(k), Int::from(m)));
    }
    // General path for values beyond u128; same algorithm over Int.
    let mut rest = n.clone();
    let mut k = Int::one();
    let mut m = Int::one();
    let mut d = int(2);
    while &(&d * &d) * &d <= rest {
        if (&rest % &d).is_zero() {
            let mut exp = 0u64;
            while (&rest % &d).is_zero() {
                rest /= &d;
                exp += 1;
            }
            if exp % 2 == 1 {
                k *= &d;
            }
            for _ in 0..exp / 2 {
                m *= &d;
            }
        }
        d += 1;
    }
    match is_perfect_square(&rest) {
        Some(r) => m *= r,
        None => k *= rest,
    }
    Ok((k, m))
}

fn squarefree_split_u128(n: u128) -> (u128, u128) {
    let mut rest = n;
    let mut k = 1u128;
    let mut m = 1u128;
    let mut d = 2u128;
    while d.saturating_mul(d).saturating_mul(d) <= rest {
        if rest % d == 0 {
            let mut exp = 0u32;
            while rest % d == 0 {
                rest /= d;
                exp += 1;
            }
            if exp % 2 == 1 {
                k *= d;
            }
            m *= d.pow(exp / 2);
        }
        d += 1;
    }
    let r = isqrt_u128(rest);
    if r * r == rest {
        m *= r;
    } else {
        k *= rest;
    }
    (k, m)
}

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u128;
    while r > 0 && r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(&int(40), &int(16)), int(8));
        assert_eq!(gcd(&int(0), &int(5)), int(5));
        assert_eq!(gcd(&int(720), &int(1681)), int(1));
        assert_eq!(gcd(&int(0), &int(0)), int(0));
        assert_eq!(gcd(&int(-12), &int(18)), int(6));
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&int(2401)), int(49));
        assert_eq!(isqrt(&int(48)), int(6));
        assert_eq!(isqrt(&int(0)), int(0));
        assert_eq!(isqrt(&int(1)), int(1));
    }

    #[test]
    #[should_panic(expected = "isqrt of negative")]
    fn isqrt_rejects_negative() {
        isqrt(&int(-1));
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(is_perfect_square(&int(1681)), Some(int(41)));
        assert_eq!(is_perfect_square(&int(65)), None);
        assert_eq!(is_perfect_square(&int(-4)), None);
        assert_eq!(is_perfect_square(&int(0)), Some(int(0)));
    }

    #[test]
    fn perfect_square_large() {
        // 10^15 + 3 squared: far past machine width on the road to 10^30.
        let root: Int = int(10).pow(15) + 3;
        let sq = &root * &root;
        assert_eq!(is_perfect_square(&sq), Some(root.clone()));
        assert_eq!(is_perfect_square(&(sq + 1)), None);
    }

    #[test]
    fn squarefree_split_examples() {
        assert_eq!(squarefree_split(&int(180)).unwrap(), (int(5), int(6)));
        assert_eq!(squarefree_split(&int(1)).unwrap(), (int(1), int(1)));
        assert_eq!(squarefree_split(&int(48)).unwrap(), (int(3), int(4)));
        assert_eq!(squarefree_split(&int(720)).unwrap(), (int(5), int(12)));
        assert!(squarefree_split(&int(0)).is_err());
        assert!(squarefree_split(&int(-4)).is_err());
    }

    #[test]
    fn perfect_square_recognition_by_remultiplication() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(30);
        let half: i64 = 1_000_000_000_000_000; // 10^15, so products reach 10^30
        for round in 0..10_000 {
            let n: Int = if round % 2 == 0 {
                // random value up to 10^30
                int(rng.gen_range(0..half)) * int(half) + int(rng.gen_range(0..half))
            } else {
                // a perfect square, sometimes nudged off by one
                let m = int(rng.gen_range(0..half));
                &m * &m + int(rng.gen_range(-1..=1))
            };
            if n.is_negative() {
                continue;
            }
            let floor = isqrt(&n);
            match is_perfect_square(&n) {
                Some(r) => {
                    assert_eq!(&r * &r, n, "claimed root must re-multiply");
                    assert_eq!(r, floor);
                }
                None => assert_ne!(&floor * &floor, n, "missed square {n}"),
            }
        }
    }

    #[test]
    fn squarefree_split_beyond_machine_width() {
        // 3 * (10^20)^2 exercises the Int path.
        let m: Int = int(10).pow(20);
        let n: Int = int(3) * &m * &m;
        assert_eq!(squarefree_split(&n).unwrap(), (int(3), m));
    }

    #[test]
    fn rational_is_reduced_with_positive_denominator() {
        let r = rational(int(6), int(-4)).unwrap();
        assert_eq!(r.numer(), &int(-3));
        assert_eq!(r.denom(), &int(2));
        let z = rational(int(0), int(7)).unwrap();
        assert_eq!(z.numer(), &int(0));
        assert_eq!(z.denom(), &int(1));
        assert_eq!(rational(int(1), int(0)), Err(Error::ZeroDenominator));
    }

    proptest! {
        #[test]
        fn isqrt_brackets_the_root(n in 0u128..u128::MAX / 4) {
            let n = Int::from(n);
            let r = isqrt(&n);
            prop_assert!(&r * &r <= n);
            let r1 = &r + 1;
            prop_assert!(&r1 * &r1 > n);
        }

        #[test]
        fn squarefree_split_reassembles(n in 1u64..1_000_000u64) {
            let n = Int::from(n);
            let (k, m) = squarefree_split(&n).unwrap();
            prop_assert_eq!(&k * &m * &m, n);
            // no prime square divides k
            let mut d = 2u64;
            let k_small = k.to_u64().unwrap();
            while d * d <= k_small {
                prop_assert!(k_small % (d * d) != 0);
                d += 1;
            }
        }

        #[test]
        fn rational_always_reduced(p in -10_000i64..10_000, q in 1i64..10_000) {
            let r = rational(int(p), int(q)).unwrap();
            prop_assert_eq!(gcd(r.numer(), r.denom()), Int::one());
            prop_assert!(r.denom().is_positive());
        }
    }
}
