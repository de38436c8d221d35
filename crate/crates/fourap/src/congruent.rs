//! The bidirectional correspondence between right triangles with rational
//! sides and three rational squares in arithmetic progression.
//!
//! A primitive triple with legs p, q, hypotenuse h and area `k * m^2`
//! (k squarefree) yields the square roots `|p - q| / 2m`, `h / 2m`,
//! `(p + q) / 2m`, whose squares are in progression with common difference
//! exactly k. Conversely the roots a < b < c of such a progression bound a
//! rational right triangle with legs `c - a`, `c + a`, hypotenuse `2b`, and
//! area k. `certify_congruent` searches the triple enumeration for a witness
//! that a given squarefree k is congruent, packaging everything needed for
//! independent re-verification.

use num_integer::Integer as _;
use num_traits::Signed;

use crate::arith::{gcd, int, squarefree_split, Int, Rational};
use crate::error::Error;
use crate::pythagoras::{enumerate_primitive_triples, PrimitiveTriple};

/// Square roots `0 <= a < b < c` of three rational squares in arithmetic
/// progression with squarefree common difference `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeSquareAP {
    a: Rational,
    b: Rational,
    c: Rational,
    k: Int,
}

impl ThreeSquareAP {
    pub fn new(a: Rational, b: Rational, c: Rational, k: Int) -> Result<Self, Error> {
        if a.is_negative() || a >= b || b >= c {
            return Err(Error::BadSquareProgression {
                detail: "roots must satisfy 0 <= a < b < c",
            });
        }
        if !k.is_positive() {
            return Err(Error::OutOfDomain {
                op: "ThreeSquareAP::new (k)",
                value: k,
            });
        }
        let (sf, _) = squarefree_split(&k)?;
        if sf != k {
            return Err(Error::NotSquarefree { value: k });
        }
        let kq = Rational::from_integer(k.clone());
        if &b * &b - &a * &a != kq || &c * &c - &b * &b != kq {
            return Err(Error::BadSquareProgression {
                detail: "squares are not in progression with difference k",
            });
        }
        Ok(ThreeSquareAP { a, b, c, k })
    }

    pub fn roots(&self) -> (&Rational, &Rational, &Rational) {
        (&self.a, &self.b, &self.c)
    }

    pub fn squares(&self) -> (Rational, Rational, Rational) {
        (&self.a * &self.a, &self.b * &self.b, &self.c * &self.c)
    }

    pub fn difference(&self) -> &Int {
        &self.k
    }
}

/// A right triangle with rational sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalTriangle {
    pub leg_short: Rational,
    pub leg_long: Rational,
    pub hyp: Rational,
}

impl RationalTriangle {
    pub fn area(&self) -> Rational {
        &self.leg_short * &self.leg_long / Rational::from_integer(int(2))
    }
}

/// Everything needed to re-verify that `k` is a congruent number: the
/// integer triple, the scale m with `area = k * m^2`, and the progression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruentCertificate {
    pub k: Int,
    pub triple: PrimitiveTriple,
    pub m: Int,
    pub ap: ThreeSquareAP,
}

impl CongruentCertificate {
    /// Re-checks every claim from raw integers: the Pythagorean identity,
    /// primitivity, the area split, and both square differences.
    pub fn verify(&self) -> Result<(), Error> {
        let t = &self.triple;
        let rebuilt =
            PrimitiveTriple::new(t.even_leg().clone(), t.odd_leg().clone(), t.hyp().clone())?;
        if rebuilt.is_degenerate() {
            return Err(Error::DegenerateTriple);
        }
        if rebuilt.area() != &self.k * &self.m * &self.m {
            return Err(Error::BadSquareProgression {
                detail: "area does not equal k * m^2",
            });
        }
        let (sf, _) = squarefree_split(&self.k)?;
        if sf != self.k {
            return Err(Error::NotSquarefree { value: self.k.clone() });
        }
        if self.ap.difference() != &self.k {
            return Err(Error::BadSquareProgression {
                detail: "progression difference does not match k",
            });
        }
        // Check the two square differences on cleared integers: with roots
        // scaled by 2m the squares differ by exactly 4 k m^2.
        let (a, b, c) = self.ap.roots();
        let two_m = Rational::from_integer(&self.m * 2);
        let (ra, rb, rc) = (a * &two_m, b * &two_m, c * &two_m);
        for r in [&ra, &rb, &rc] {
            if !r.is_integer() {
                return Err(Error::BadSquareProgression {
                    detail: "roots do not clear at scale 2m",
                });
            }
        }
        let (ia, ib, ic) = (ra.to_integer(), rb.to_integer(), rc.to_integer());
        let step = int(4) * &self.k * &self.m * &self.m;
        if &ib * &ib - &ia * &ia != step || &ic * &ic - &ib * &ib != step {
            return Err(Error::BadSquareProgression {
                detail: "cleared squares are not in progression with difference 4 k m^2",
            });
        }
        if ap_from_triangle(&rebuilt)? != self.ap {
            return Err(Error::BadSquareProgression {
                detail: "progression does not match the triangle",
            });
        }
        Ok(())
    }
}

/// Maps a nondegenerate primitive triple to its three-square progression.
pub fn ap_from_triangle(t: &PrimitiveTriple) -> Result<ThreeSquareAP, Error> {
    if t.is_degenerate() {
        return Err(Error::DegenerateTriple);
    }
    let (k, m) = squarefree_split(&t.area())?;
    let two_m: Int = &m * 2;
    let p = t.even_leg();
    let q = t.odd_leg();
    let a = Rational::new((p - q).abs(), two_m.clone());
    let b = Rational::new(t.hyp().clone(), two_m.clone());
    let c = Rational::new(p + q, two_m);
    ThreeSquareAP::new(a, b, c, k)
}

/// Maps a progression back to the rational right triangle with legs
/// `c - a`, `c + a` and hypotenuse `2b` (area k), plus the primitive integer
/// triple obtained by clearing denominators and dividing out the content.
pub fn triangle_from_ap(ap: &ThreeSquareAP) -> Result<(RationalTriangle, PrimitiveTriple), Error> {
    let (a, b, c) = ap.roots();
    let leg_short = c - a;
    let leg_long = c + a;
    let hyp = b * Rational::from_integer(int(2));
    let triangle = RationalTriangle {
        leg_short: leg_short.clone(),
        leg_long: leg_long.clone(),
        hyp: hyp.clone(),
    };
    let scale = leg_short
        .denom()
        .lcm(leg_long.denom())
        .lcm(hyp.denom());
    let scale = Rational::from_integer(scale);
    let mut sides = [
        (&leg_short * &scale).to_integer(),
        (&leg_long * &scale).to_integer(),
        (&hyp * &scale).to_integer(),
    ];
    let content = gcd(&gcd(&sides[0], &sides[1]), &sides[2]);
    for s in &mut sides {
        *s /= &content;
    }
    let [s0, s1, hyp_i] = sides;
    let (even, odd) = if s0.is_even() { (s0, s1) } else { (s1, s0) };
    let triple = PrimitiveTriple::new(even, odd, hyp_i)?;
    Ok((triangle, triple))
}

/// Result of a bounded congruent-number search: either a certificate or an
/// explicit record of how far the search went.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyOutcome {
    Found(CongruentCertificate),
    /// No triple with squarefree area part k has hypotenuse <= the bound.
    /// This is a statement about the bound, not about k.
    ExhaustedBelow { k: Int, hyp_bound: Int },
}

/// Searches all primitive triples with `hyp <= hyp_bound` for one whose area
/// has squarefree part `k`, preferring the smallest hypotenuse (ties broken
/// by even leg, which is the enumeration order).
pub fn certify_congruent(k: &Int, hyp_bound: &Int) -> Result<CertifyOutcome, Error> {
    if !k.is_positive() {
        return Err(Error::OutOfDomain {
            op: "certify_congruent (k)",
            value: k.clone(),
        });
    }
    let (sf, _) = squarefree_split(k)?;
    if &sf != k {
        return Err(Error::NotSquarefree { value: k.clone() });
    }
    for triple in enumerate_primitive_triples(hyp_bound)? {
        let (part, m) = squarefree_split(&triple.area())?;
        if &part == k {
            let ap = ap_from_triangle(&triple)?;
            return Ok(CertifyOutcome::Found(CongruentCertificate {
                k: k.clone(),
                triple,
                m,
                ap,
            }));
        }
    }
    Ok(CertifyOutcome::ExhaustedBelow {
        k: k.clone(),
        hyp_bound: hyp_bound.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn triple(e: i64, o: i64, h: i64) -> PrimitiveTriple {
        PrimitiveTriple::new(int(e), int(o), int(h)).unwrap()
    }

    fn rat(p: i64, q: i64) -> Rational {
        rational(int(p), int(q)).unwrap()
    }

    #[test]
    fn ap_from_the_area_180_triangle() {
        let ap = ap_from_triangle(&triple(40, 9, 41)).unwrap();
        let (a, b, c) = ap.roots();
        assert_eq!(a, &rat(31, 12));
        assert_eq!(b, &rat(41, 12));
        assert_eq!(c, &rat(49, 12));
        assert_eq!(ap.difference(), &int(5));
        // middle square is 1681/144, i.e. 11 + 97/144
        assert_eq!(ap.squares().1, rat(1681, 144));
    }

    #[test]
    fn ap_from_the_area_6_triangle() {
        let ap = ap_from_triangle(&triple(4, 3, 5)).unwrap();
        let (a, b, c) = ap.roots();
        assert_eq!((a, b, c), (&rat(1, 2), &rat(5, 2), &rat(7, 2)));
        assert_eq!(ap.difference(), &int(6));
        let (s1, s2, s3) = ap.squares();
        assert_eq!((s1, s2, s3), (rat(1, 4), rat(25, 4), rat(49, 4)));
    }

    #[test]
    fn ap_from_the_area_30_triangle() {
        let ap = ap_from_triangle(&triple(12, 5, 13)).unwrap();
        let (a, b, c) = ap.roots();
        assert_eq!((a, b, c), (&rat(7, 2), &rat(13, 2), &rat(17, 2)));
        assert_eq!(ap.difference(), &int(30));
    }

    #[test]
    fn triangle_from_ap_examples() {
        let ap = ThreeSquareAP::new(rat(1, 2), rat(5, 2), rat(7, 2), int(6)).unwrap();
        let (tri, prim) = triangle_from_ap(&ap).unwrap();
        assert_eq!(tri.leg_short, rat(3, 1));
        assert_eq!(tri.leg_long, rat(4, 1));
        assert_eq!(tri.hyp, rat(5, 1));
        assert_eq!(prim, triple(4, 3, 5));

        let ap = ThreeSquareAP::new(rat(31, 12), rat(41, 12), rat(49, 12), int(5)).unwrap();
        let (tri, prim) = triangle_from_ap(&ap).unwrap();
        assert_eq!(tri.leg_short, rat(3, 2));
        assert_eq!(tri.leg_long, rat(20, 3));
        assert_eq!(tri.hyp, rat(41, 6));
        assert_eq!(tri.area(), rat(5, 1));
        assert_eq!(prim, triple(40, 9, 41));
    }

    #[test]
    fn roundtrip_through_both_maps() {
        let t = triple(12, 5, 13);
        let ap = ap_from_triangle(&t).unwrap();
        let (_, back) = triangle_from_ap(&ap).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn certify_5_and_6() {
        match certify_congruent(&int(5), &int(50)).unwrap() {
            CertifyOutcome::Found(cert) => {
                assert_eq!(cert.triple, triple(40, 9, 41));
                assert_eq!(cert.m, int(6));
                cert.verify().unwrap();
            }
            other => panic!("expected certificate, got {other:?}"),
        }
        match certify_congruent(&int(6), &int(10)).unwrap() {
            CertifyOutcome::Found(cert) => {
                assert_eq!(cert.triple, triple(4, 3, 5));
                assert_eq!(cert.m, int(1));
                cert.verify().unwrap();
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn certify_1_is_exhausted() {
        let outcome = certify_congruent(&int(1), &int(10_000)).unwrap();
        assert_eq!(
            outcome,
            CertifyOutcome::ExhaustedBelow {
                k: int(1),
                hyp_bound: int(10_000)
            }
        );
    }

    #[test]
    fn certify_rejects_non_squarefree() {
        assert_eq!(
            certify_congruent(&int(4), &int(100)),
            Err(Error::NotSquarefree { value: int(4) })
        );
    }

    #[test]
    fn certificates_verify_independently() {
        for k in [5i64, 6, 7, 30] {
            if let CertifyOutcome::Found(cert) =
                certify_congruent(&int(k), &int(1000)).unwrap()
            {
                cert.verify().unwrap();
            } else {
                panic!("{k} should certify below 1000");
            }
        }
    }

    #[test]
    fn every_triple_below_10k_roundtrips_through_the_maps() {
        for t in enumerate_primitive_triples(&int(10_000)).unwrap() {
            let ap = ap_from_triangle(&t).unwrap();
            // the squares differ by exactly the squarefree area part
            let (part, _) = squarefree_split(&t.area()).unwrap();
            assert_eq!(ap.difference(), &part);
            let (s1, s2, s3) = ap.squares();
            let k = Rational::from_integer(part);
            assert_eq!(&s2 - &s1, k);
            assert_eq!(&s3 - &s2, k);
            let (_, back) = triangle_from_ap(&ap).unwrap();
            assert_eq!(back, t);
        }
    }
}
