//! Primitive Pythagorean triples in the (u, v) parametrization
//! `(4uv, |4u^2 - v^2|, 4u^2 + v^2)` with `2u` and `v` coprime.
//!
//! This parametrization produces every triangle with pairwise coprime integer
//! sides exactly once, directly exposing the divisible-by-4 even leg that the
//! descent pipeline consumes. The classic opposite-parity (m, n) form is kept
//! out of the library proper and used as an independent oracle in tests.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{gcd, int, Int};
use crate::error::Error;

/// Parameter pair (u, v) with `u, v >= 1` and `gcd(2u, v) = 1` (so `v` is odd).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParamPair {
    u: Int,
    v: Int,
}

impl ParamPair {
    pub fn new(u: Int, v: Int) -> Result<Self, Error> {
        if !u.is_positive() {
            return Err(Error::OutOfDomain {
                op: "ParamPair::new (u)",
                value: u,
            });
        }
        if !v.is_positive() {
            return Err(Error::OutOfDomain {
                op: "ParamPair::new (v)",
                value: v,
            });
        }
        let two_u: Int = &u * 2;
        if !gcd(&two_u, &v).is_one() {
            return Err(Error::NotCoprime { a: two_u, b: v });
        }
        Ok(ParamPair { u, v })
    }

    pub fn u(&self) -> &Int {
        &self.u
    }

    pub fn v(&self) -> &Int {
        &self.v
    }
}

/// A right triangle with pairwise coprime integer sides, stored even leg
/// first. The degenerate form (0, 1, 1) is representable (it closes the
/// descent pipeline's n = 0 branch) but is excluded from enumeration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimitiveTriple {
    even_leg: Int,
    odd_leg: Int,
    hyp: Int,
}

impl PrimitiveTriple {
    pub fn new(even_leg: Int, odd_leg: Int, hyp: Int) -> Result<Self, Error> {
        if even_leg.is_zero() && odd_leg.is_one() && hyp.is_one() {
            return Ok(PrimitiveTriple::degenerate());
        }
        if !even_leg.is_positive() || !odd_leg.is_positive() || !hyp.is_positive() {
            return Err(Error::NotPythagorean { even: even_leg, odd: odd_leg, hyp });
        }
        if &even_leg * &even_leg + &odd_leg * &odd_leg != &hyp * &hyp {
            return Err(Error::NotPythagorean { even: even_leg, odd: odd_leg, hyp });
        }
        if !gcd(&even_leg, &odd_leg).is_one()
            || !gcd(&even_leg, &hyp).is_one()
            || !gcd(&odd_leg, &hyp).is_one()
        {
            return Err(Error::NotPrimitive { even: even_leg, odd: odd_leg, hyp });
        }
        if !(&even_leg % 4u32).is_zero() {
            return Err(Error::EvenLegNotMultipleOfFour { even: even_leg });
        }
        Ok(PrimitiveTriple { even_leg, odd_leg, hyp })
    }

    /// The degenerate triple (0, 1, 1) arising from the trivial window.
    pub fn degenerate() -> Self {
        PrimitiveTriple {
            even_leg: Int::zero(),
            odd_leg: Int::one(),
            hyp: Int::one(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.even_leg.is_zero()
    }

    pub fn even_leg(&self) -> &Int {
        &self.even_leg
    }

    pub fn odd_leg(&self) -> &Int {
        &self.odd_leg
    }

    pub fn hyp(&self) -> &Int {
        &self.hyp
    }

    /// `even_leg * odd_leg / 2`, exact (the even leg makes the product even).
    pub fn area(&self) -> Int {
        (&self.even_leg * &self.odd_leg) >> 1
    }
}

/// `(4uv, |4u^2 - v^2|, 4u^2 + v^2)`. The sign dropped by the absolute value
/// is recoverable from whether `4u^2 > v^2`.
pub fn triple_from_params(p: &ParamPair) -> PrimitiveTriple {
    let u = &p.u;
    let v = &p.v;
    let four_u_sq: Int = int(4) * u * u;
    let v_sq: Int = v * v;
    let even_leg: Int = int(4) * u * v;
    let odd_leg: Int = (&four_u_sq - &v_sq).abs();
    let hyp: Int = four_u_sq + v_sq;
    PrimitiveTriple { even_leg, odd_leg, hyp }
}

/// Recovers the unique (u, v) with `triple_from_params(u, v) = t`.
///
/// From `4uv = even_leg` and `4u^2 + v^2 = hyp`: iterate over the divisors
/// `u` of `even_leg / 4` and accept the one whose cofactor `v` is odd,
/// coprime to `2u`, and closes the hypotenuse identity.
pub fn params_from_triple(t: &PrimitiveTriple) -> Result<ParamPair, Error> {
    if t.is_degenerate() {
        return Err(Error::DegenerateTriple);
    }
    let product: Int = &t.even_leg >> 2; // u * v
    let check = |u: Int, v: Int| -> Option<ParamPair> {
        if !v.is_odd() {
            return None;
        }
        if int(4) * &u * &u + &v * &v != t.hyp {
            return None;
        }
        ParamPair::new(u, v).ok()
    };
    if let Some(small) = product.to_u128() {
        let mut d = 1u128;
        while d.checked_mul(d).is_some_and(|sq| sq <= small) {
            if small % d == 0 {
                for (u, v) in [(d, small / d), (small / d, d)] {
                    if let Some(p) = check(Int::from(u), Int::from(v)) {
                        return Ok(p);
                    }
                }
            }
            d += 1;
        }
    } else {
        let mut d = Int::one();
        while &d * &d <= product {
            if (&product % &d).is_zero() {
                let q = &product / &d;
                for (u, v) in [(d.clone(), q.clone()), (q, d.clone())] {
                    if let Some(p) = check(u, v) {
                        return Ok(p);
                    }
                }
            }
            d += 1;
        }
    }
    Err(Error::NotPrimitive {
        even: t.even_leg.clone(),
        odd: t.odd_leg.clone(),
        hyp: t.hyp.clone(),
    })
}

/// All primitive triples with `hyp <= hyp_bound`, sorted by (hyp, even_leg),
/// without duplicates. Bounds below 5 yield an empty list.
pub fn enumerate_primitive_triples(hyp_bound: &Int) -> Result<Vec<PrimitiveTriple>, Error> {
    let bound = match hyp_bound.to_u64() {
        Some(b) => b,
        None => {
            return Err(Error::BoundTooLarge {
                op: "enumerate_primitive_triples",
            })
        }
    };
    let bound = bound as u128;
    let mut triples = Vec::new();
    let mut u = 1u128;
    while 4 * u * u < bound {
        let mut v = 1u128;
        while 4 * u * u + v * v <= bound {
            if (2 * u).gcd(&v) == 1 {
                let pair = ParamPair {
                    u: Int::from(u),
                    v: Int::from(v),
                };
                triples.push(triple_from_params(&pair));
            }
            v += 2;
        }
        u += 1;
    }
    triples.sort_by(|a, b| (&a.hyp, &a.even_leg).cmp(&(&b.hyp, &b.even_leg)));
    Ok(triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(u: i64, v: i64) -> ParamPair {
        ParamPair::new(int(u), int(v)).unwrap()
    }

    fn triple(e: i64, o: i64, h: i64) -> PrimitiveTriple {
        PrimitiveTriple::new(int(e), int(o), int(h)).unwrap()
    }

    #[test]
    fn triple_from_params_examples() {
        assert_eq!(triple_from_params(&pair(1, 1)), triple(4, 3, 5));
        assert_eq!(triple_from_params(&pair(2, 5)), triple(40, 9, 41));
        assert_eq!(triple_from_params(&pair(1, 3)), triple(12, 5, 13));
    }

    #[test]
    fn param_pair_rejects_shared_factors() {
        assert!(ParamPair::new(int(1), int(2)).is_err()); // v even
        assert!(ParamPair::new(int(3), int(3)).is_err()); // gcd(6, 3) = 3
        assert!(ParamPair::new(int(0), int(1)).is_err());
    }

    #[test]
    fn params_from_triple_examples() {
        assert_eq!(params_from_triple(&triple(40, 9, 41)).unwrap(), pair(2, 5));
        assert_eq!(params_from_triple(&triple(4, 3, 5)).unwrap(), pair(1, 1));
        assert_eq!(params_from_triple(&triple(12, 5, 13)).unwrap(), pair(1, 3));
        assert_eq!(
            params_from_triple(&PrimitiveTriple::degenerate()),
            Err(Error::DegenerateTriple)
        );
    }

    #[test]
    fn triple_validation() {
        assert!(PrimitiveTriple::new(int(4), int(3), int(6)).is_err());
        assert!(PrimitiveTriple::new(int(8), int(6), int(10)).is_err()); // not primitive
        assert!(PrimitiveTriple::new(int(6), int(8), int(10)).is_err());
        assert!(PrimitiveTriple::new(int(0), int(1), int(1)).unwrap().is_degenerate());
    }

    #[test]
    fn enumerate_small_bounds() {
        assert_eq!(enumerate_primitive_triples(&int(5)).unwrap(), vec![triple(4, 3, 5)]);
        assert_eq!(
            enumerate_primitive_triples(&int(13)).unwrap(),
            vec![triple(4, 3, 5), triple(12, 5, 13)]
        );
        let upto41 = enumerate_primitive_triples(&int(41)).unwrap();
        assert!(upto41.contains(&triple(40, 9, 41)));
        assert!(enumerate_primitive_triples(&int(4)).unwrap().is_empty());
    }

    #[test]
    fn areas() {
        assert_eq!(triple(40, 9, 41).area(), int(180));
        assert_eq!(triple(4, 3, 5).area(), int(6));
        assert_eq!(triple(12, 5, 13).area(), int(30));
        assert_eq!(PrimitiveTriple::degenerate().area(), int(0));
    }

    #[test]
    fn enumerated_triples_validate() {
        for t in enumerate_primitive_triples(&int(1000)).unwrap() {
            // re-run the full constructor checks
            let rebuilt =
                PrimitiveTriple::new(t.even_leg().clone(), t.odd_leg().clone(), t.hyp().clone());
            assert_eq!(rebuilt.unwrap(), t);
        }
    }

    #[test]
    fn roundtrip_all_params_up_to_200() {
        for u in 1i64..=200 {
            for v in (1i64..=200).step_by(2) {
                if !int(2 * u).gcd(&int(v)).is_one() {
                    continue;
                }
                let p = pair(u, v);
                let t = triple_from_params(&p);
                assert_eq!(params_from_triple(&t).unwrap(), p);
            }
        }
    }

    proptest! {
        #[test]
        fn roundtrip_params_beyond_the_grid(u in 1i64..=5000, v in 1i64..=5000) {
            prop_assume!(int(2 * u).gcd(&int(v)).is_one());
            let p = pair(u, v);
            let t = triple_from_params(&p);
            prop_assert_eq!(params_from_triple(&t).unwrap(), p);
        }
    }
}
