//! The four-squares descent pipeline.
//!
//! A window (x, n) claims that the four odd integers x-6n, x-2n, x+2n, x+6n
//! are pairwise coprime perfect squares in arithmetic progression with
//! common difference 4n. The pipeline normalizes arbitrary square
//! progressions into that shape, walks the constructive chain
//!
//! ```text
//! window -> y (product of the roots, y^2 = (x^2-4n^2)(x^2-36n^2))
//!        -> Pythagorean triple (16n^2, y, x^2-20n^2)
//!        -> parameters (u, v) with 4uv = 16n^2, 4u^2+v^2 = x^2-20n^2
//!        -> (A, D) with u = 4A^2, v = D^2, n = AD
//!        -> 16A^2+D^2 and 4A^2+D^2 both squares
//! ```
//!
//! and, in reverse, rebuilds the window from a certified (A, D) pair. The
//! descent step splits the two factorizations of A forced by the two square
//! forms and produces a strictly smaller certified pair — except on the
//! degenerate pair (0, 1), the unique fixpoint, which reproduces itself.
//!
//! Every operation returns a witness carrying all intermediate quantities,
//! or a [`Refutation`] naming the first condition that failed together with
//! the value that broke it. A bare boolean would be unverifiable; the
//! refutation can be replayed.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd, int, is_perfect_square, Int, Rational};
use crate::error::Error;
use crate::pythagoras::{params_from_triple, PrimitiveTriple};

/// Which sign an `... = +/-D`-style identity took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// A window (x, n) of four odd values in arithmetic progression:
/// x-6n, x-2n, x+2n, x+6n. The degenerate candidate is canonically (1, 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourApCandidate {
    x: Int,
    n: Int,
}

impl FourApCandidate {
    pub fn new(x: Int, n: Int) -> Result<Self, Error> {
        if !x.is_positive() || !x.is_odd() {
            return Err(Error::BadParity {
                what: "window center x (must be odd and positive)",
                value: x,
            });
        }
        if n.is_negative() {
            return Err(Error::OutOfDomain {
                op: "FourApCandidate::new (n)",
                value: n,
            });
        }
        if n.is_zero() {
            if !x.is_one() {
                return Err(Error::IdentityPrecondition {
                    op: "FourApCandidate::new",
                    detail: format!("degenerate window must be (1, 0), got x = {x}"),
                });
            }
        } else if !gcd(&x, &n).is_one() {
            return Err(Error::NotCoprime { a: x, b: n });
        }
        Ok(FourApCandidate { x, n })
    }

    /// The canonical trivial window (1, 0) with terms 1, 1, 1, 1.
    pub fn degenerate() -> Self {
        FourApCandidate {
            x: Int::one(),
            n: Int::zero(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.n.is_zero()
    }

    pub fn x(&self) -> &Int {
        &self.x
    }

    pub fn n(&self) -> &Int {
        &self.n
    }

    /// The four claimed terms x-6n, x-2n, x+2n, x+6n.
    pub fn terms(&self) -> [Int; 4] {
        let x = &self.x;
        let n = &self.n;
        [
            x - n * 6,
            x - n * 2,
            x + n * 2,
            x + n * 6,
        ]
    }
}

/// Coprime pair (A, D) with A >= 0 and D odd >= 1. Certification (both
/// 16A^2+D^2 and 4A^2+D^2 perfect squares) is a separate step so that the
/// type records exactly what has been checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdPair {
    a: Int,
    d: Int,
}

impl AdPair {
    pub fn new(a: Int, d: Int) -> Result<Self, Error> {
        if a.is_negative() {
            return Err(Error::OutOfDomain {
                op: "AdPair::new (A)",
                value: a,
            });
        }
        if !d.is_positive() || !d.is_odd() {
            return Err(Error::BadParity {
                what: "D (must be odd and positive)",
                value: d,
            });
        }
        if !gcd(&a, &d).is_one() {
            return Err(Error::NotCoprime { a, b: d });
        }
        Ok(AdPair { a, d })
    }

    /// The degenerate fixpoint (0, 1).
    pub fn degenerate() -> Self {
        AdPair {
            a: Int::zero(),
            d: Int::one(),
        }
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn sixteen_form(&self) -> Int {
        int(16) * &self.a * &self.a + &self.d * &self.d
    }

    pub fn four_form(&self) -> Int {
        int(4) * &self.a * &self.a + &self.d * &self.d
    }

    /// Checks that both square forms hold, recording their roots. The first
    /// failing form is reported, 16A^2+D^2 before 4A^2+D^2.
    pub fn certify(&self) -> Result<CertifiedAdPair, Refutation> {
        let sixteen = self.sixteen_form();
        let root16 = is_perfect_square(&sixteen).ok_or_else(|| {
            Refutation::new(FailedCondition::SixteenFormNotSquare {
                a: self.a.clone(),
                d: self.d.clone(),
                value: sixteen.clone(),
            })
        })?;
        let four = self.four_form();
        let root4 = is_perfect_square(&four).ok_or_else(|| {
            Refutation::new(FailedCondition::FourFormNotSquare {
                a: self.a.clone(),
                d: self.d.clone(),
                value: four.clone(),
            })
        })?;
        Ok(CertifiedAdPair {
            pair: self.clone(),
            root16,
            root4,
        })
    }
}

/// An [`AdPair`] together with the roots witnessing that both forms are
/// squares. Only values of this type may enter [`descent_step`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedAdPair {
    pair: AdPair,
    root16: Int,
    root4: Int,
}

impl CertifiedAdPair {
    pub fn pair(&self) -> &AdPair {
        &self.pair
    }

    /// Root of 16A^2 + D^2.
    pub fn root16(&self) -> &Int {
        &self.root16
    }

    /// Root of 4A^2 + D^2.
    pub fn root4(&self) -> &Int {
        &self.root4
    }
}

/// The full chain of quantities extracted from a verified window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentWitness {
    pub x: Int,
    pub n: Int,
    /// Product of the four term roots; y^2 = (x^2-4n^2)(x^2-36n^2).
    pub y: Int,
    /// Triple parameters: 4uv = 16n^2, 4u^2+v^2 = x^2-20n^2.
    pub u: Int,
    pub v: Int,
    /// u = 4A^2.
    pub a: Int,
    /// v = D^2, D odd.
    pub d: Int,
    /// Sign of 4u^2 - v^2 in the odd leg y = +/-(4u^2 - v^2).
    pub odd_leg_branch: Branch,
}

impl DescentWitness {
    pub fn ad_pair(&self) -> AdPair {
        AdPair {
            a: self.a.clone(),
            d: self.d.clone(),
        }
    }

    /// Re-derives every invariant equation from the raw integers.
    pub fn revalidate(&self) -> Result<(), String> {
        let DescentWitness { x, n, y, u, v, a, d, odd_leg_branch } = self;
        let x2 = x * x;
        let n2 = n * n;
        if y * y != (&x2 - &n2 * 4) * (&x2 - &n2 * 36) {
            return Err("y^2 != (x^2-4n^2)(x^2-36n^2)".into());
        }
        if int(4) * u * v != &n2 * 16 {
            return Err("4uv != 16n^2".into());
        }
        if int(4) * u * u + v * v != &x2 - &n2 * 20 {
            return Err("4u^2+v^2 != x^2-20n^2".into());
        }
        if u != &(int(4) * a * a) {
            return Err("u != 4A^2".into());
        }
        if v != &(d * d) {
            return Err("v != D^2".into());
        }
        if !gcd(&(u * 2), v).is_one() {
            return Err("gcd(2u, v) != 1".into());
        }
        let signed = int(4) * u * u - v * v;
        let expected = match odd_leg_branch {
            Branch::Plus => y.clone(),
            Branch::Minus => -y.clone(),
        };
        if signed != expected {
            return Err("odd-leg branch does not match 4u^2 - v^2".into());
        }
        if &(a * d) != n {
            return Err("A*D != n".into());
        }
        Ok(())
    }
}

/// The two factorizations `UV = U'V' = A` split into pairwise coprime parts
/// 2a, b, c, d with U = 2ab, V = cd, U' = 2ac, V' = bd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitWitness {
    pub u: Int,
    pub v: Int,
    pub u_prime: Int,
    pub v_prime: Int,
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
    /// The common product A.
    pub product: Int,
}

impl SplitWitness {
    pub fn revalidate(&self) -> Result<(), String> {
        let SplitWitness { u, v, u_prime, v_prime, a, b, c, d, product } = self;
        if &(u * v) != product || &(u_prime * v_prime) != product {
            return Err("UV and U'V' do not both equal A".into());
        }
        if u != &(int(2) * a * b) {
            return Err("U != 2ab".into());
        }
        if v != &(c * d) {
            return Err("V != cd".into());
        }
        if u_prime != &(int(2) * a * c) {
            return Err("U' != 2ac".into());
        }
        if v_prime != &(b * d) {
            return Err("V' != bd".into());
        }
        let two_a = a * 2;
        let parts = [&two_a, b, c, d];
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if !gcd(parts[i], parts[j]).is_one() {
                    return Err(format!(
                        "parts {} and {} are not coprime",
                        parts[i], parts[j]
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Result of one descent step: the next pair and the factorization split
/// that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentStep {
    pub next: AdPair,
    pub split: SplitWitness,
}

/// The first proof-chain condition an input failed, with enough recorded
/// state to re-evaluate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailedCondition {
    /// `term` (the `index`-th window entry, 0-based) is not a perfect square.
    TermNotSquare { index: usize, term: Int },
    /// `term` is not the square of a rational.
    RationalTermNotSquare { index: usize, term: Rational },
    /// The integer terms break the progression at `index`.
    NotInProgression { terms: Vec<Int>, index: usize },
    /// The rational terms break the progression at `index`.
    RationalsNotInProgression { terms: Vec<Rational>, index: usize },
    /// A reduced window term is even.
    TermEven { term: Int },
    /// Two reduced window terms share a factor.
    TermsShareFactor { left: Int, right: Int },
    /// The common difference of the reduced window is not divisible by 4.
    DifferenceNotMultipleOfFour { difference: Int },
    /// The triple (16n^2, y, x^2-20n^2) is not primitive.
    TripleNotPrimitive { even: Int, odd: Int, hyp: Int },
    /// The even parameter u is not of the form 4A^2.
    EvenParamNotFourTimesSquare { u: Int },
    /// The odd parameter v is not a perfect square.
    OddParamNotSquare { v: Int },
    /// 16A^2 + D^2 = `value` is not a perfect square.
    SixteenFormNotSquare { a: Int, d: Int, value: Int },
    /// 4A^2 + D^2 = `value` is not a perfect square.
    FourFormNotSquare { a: Int, d: Int, value: Int },
}

impl FailedCondition {
    /// Stable machine-readable name of the condition.
    pub fn label(&self) -> &'static str {
        match self {
            FailedCondition::TermNotSquare { .. } => "term-not-square",
            FailedCondition::RationalTermNotSquare { .. } => "rational-term-not-square",
            FailedCondition::NotInProgression { .. } => "not-in-progression",
            FailedCondition::RationalsNotInProgression { .. } => {
                "rationals-not-in-progression"
            }
            FailedCondition::TermEven { .. } => "term-even-after-reduction",
            FailedCondition::TermsShareFactor { .. } => "terms-share-factor",
            FailedCondition::DifferenceNotMultipleOfFour { .. } => {
                "difference-not-multiple-of-four"
            }
            FailedCondition::TripleNotPrimitive { .. } => "triple-not-primitive",
            FailedCondition::EvenParamNotFourTimesSquare { .. } => {
                "even-param-not-four-times-square"
            }
            FailedCondition::OddParamNotSquare { .. } => "odd-param-not-square",
            FailedCondition::SixteenFormNotSquare { .. } => "sixteen-form-not-square",
            FailedCondition::FourFormNotSquare { .. } => "four-form-not-square",
        }
    }

    /// The integer that broke the condition. For rational terms this is the
    /// first of numerator/denominator that fails the square test.
    pub fn offending_value(&self) -> Int {
        match self {
            FailedCondition::TermNotSquare { term, .. } => term.clone(),
            FailedCondition::RationalTermNotSquare { term, .. } => {
                if term.is_negative() || is_perfect_square(term.numer()).is_none() {
                    term.numer().clone()
                } else {
                    term.denom().clone()
                }
            }
            FailedCondition::NotInProgression { terms, index } => terms[*index].clone(),
            FailedCondition::RationalsNotInProgression { terms, index } => {
                terms[*index].numer().clone()
            }
            FailedCondition::TermEven { term } => term.clone(),
            FailedCondition::TermsShareFactor { left, right } => gcd(left, right),
            FailedCondition::DifferenceNotMultipleOfFour { difference } => difference.clone(),
            FailedCondition::TripleNotPrimitive { even, odd, hyp } => {
                gcd(&gcd(even, odd), hyp)
            }
            FailedCondition::EvenParamNotFourTimesSquare { u } => u.clone(),
            FailedCondition::OddParamNotSquare { v } => v.clone(),
            FailedCondition::SixteenFormNotSquare { value, .. } => value.clone(),
            FailedCondition::FourFormNotSquare { value, .. } => value.clone(),
        }
    }

    /// Re-evaluates the condition on the recorded inputs. Returns true when
    /// the failure reproduces.
    pub fn reproduces(&self) -> bool {
        match self {
            FailedCondition::TermNotSquare { term, .. } => is_perfect_square(term).is_none(),
            FailedCondition::RationalTermNotSquare { term, .. } => {
                rational_square_root(term).is_none()
            }
            FailedCondition::NotInProgression { terms, index } => {
                *index >= 2
                    && *index < terms.len()
                    && &terms[*index] - &terms[*index - 1] != &terms[1] - &terms[0]
            }
            FailedCondition::RationalsNotInProgression { terms, index } => {
                *index >= 2
                    && *index < terms.len()
                    && &terms[*index] - &terms[*index - 1] != &terms[1] - &terms[0]
            }
            FailedCondition::TermEven { term } => term.is_even(),
            FailedCondition::TermsShareFactor { left, right } => !gcd(left, right).is_one(),
            FailedCondition::DifferenceNotMultipleOfFour { difference } => {
                !(difference % 4u32).is_zero()
            }
            FailedCondition::TripleNotPrimitive { even, odd, hyp } => {
                PrimitiveTriple::new(even.clone(), odd.clone(), hyp.clone()).is_err()
            }
            FailedCondition::EvenParamNotFourTimesSquare { u } => {
                u.is_negative()
                    || !(u % 4u32).is_zero()
                    || is_perfect_square(&(u >> 2)).is_none()
            }
            FailedCondition::OddParamNotSquare { v } => is_perfect_square(v).is_none(),
            FailedCondition::SixteenFormNotSquare { a, d, value } => {
                &(int(16) * a * a + d * d) == value && is_perfect_square(value).is_none()
            }
            FailedCondition::FourFormNotSquare { a, d, value } => {
                &(int(4) * a * a + d * d) == value && is_perfect_square(value).is_none()
            }
        }
    }
}

impl std::fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FailedCondition::TermNotSquare { index, term } => {
                write!(f, "term #{index} = {term} is not a perfect square")
            }
            FailedCondition::RationalTermNotSquare { index, term } => {
                write!(f, "term #{index} = {term} is not a rational square")
            }
            FailedCondition::NotInProgression { index, .. } => {
                write!(f, "terms break the arithmetic progression at #{index}")
            }
            FailedCondition::RationalsNotInProgression { index, .. } => {
                write!(f, "terms break the arithmetic progression at #{index}")
            }
            FailedCondition::TermEven { term } => {
                write!(f, "reduced term {term} is even")
            }
            FailedCondition::TermsShareFactor { left, right } => {
                write!(
                    f,
                    "reduced terms {left} and {right} share factor {}",
                    gcd(left, right)
                )
            }
            FailedCondition::DifferenceNotMultipleOfFour { difference } => {
                write!(f, "common difference {difference} is not divisible by 4")
            }
            FailedCondition::TripleNotPrimitive { even, odd, hyp } => {
                write!(f, "triple ({even}, {odd}, {hyp}) is not primitive")
            }
            FailedCondition::EvenParamNotFourTimesSquare { u } => {
                write!(f, "u = {u} is not four times a perfect square")
            }
            FailedCondition::OddParamNotSquare { v } => {
                write!(f, "v = {v} is not a perfect square")
            }
            FailedCondition::SixteenFormNotSquare { value, .. } => {
                write!(f, "16A^2 + D^2 = {value} is not a perfect square")
            }
            FailedCondition::FourFormNotSquare { value, .. } => {
                write!(f, "4A^2 + D^2 = {value} is not a perfect square")
            }
        }
    }
}

/// A structured "no": the first failed condition plus the value that broke
/// it, replayable via [`Refutation::reproduces`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub condition: FailedCondition,
    pub offending_value: Int,
}

impl Refutation {
    pub fn new(condition: FailedCondition) -> Self {
        let offending_value = condition.offending_value();
        Refutation {
            condition,
            offending_value,
        }
    }

    /// True when re-evaluating the recorded condition still fails.
    pub fn reproduces(&self) -> bool {
        self.condition.reproduces()
    }
}

impl std::fmt::Display for Refutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "refuted: {}", self.condition)
    }
}

/// Square root of a nonnegative rational, if it is the square of a rational.
/// In lowest terms p/q is a square exactly when p and q both are.
fn rational_square_root(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let num = is_perfect_square(r.numer())?;
    let den = is_perfect_square(r.denom())?;
    Some(Rational::new_raw(num, den))
}

/// Scales four rational squares in progression to integer squares in
/// progression by the square of the least common denominator of the roots.
pub fn clear_denominators(terms: &[Rational; 4]) -> Result<[Int; 4], Refutation> {
    let mut roots = Vec::with_capacity(4);
    for (index, term) in terms.iter().enumerate() {
        match rational_square_root(term) {
            Some(root) => roots.push(root),
            None => {
                return Err(Refutation::new(FailedCondition::RationalTermNotSquare {
                    index,
                    term: term.clone(),
                }))
            }
        }
    }
    let step = &terms[1] - &terms[0];
    for index in 2..4 {
        if &terms[index] - &terms[index - 1] != step {
            return Err(Refutation::new(
                FailedCondition::RationalsNotInProgression {
                    terms: terms.to_vec(),
                    index,
                },
            ));
        }
    }
    let mut scale = Int::one();
    for root in &roots {
        scale = scale.lcm(root.denom());
    }
    let scale_sq = Rational::from_integer(&scale * &scale);
    let mut out = [Int::zero(), Int::zero(), Int::zero(), Int::zero()];
    for (slot, term) in out.iter_mut().zip(terms.iter()) {
        let scaled = term * &scale_sq;
        debug_assert!(scaled.is_integer());
        *slot = scaled.to_integer();
    }
    Ok(out)
}

/// Reduces four integer squares in progression by their common content and
/// validates the window shape the descent chain requires: odd pairwise
/// coprime terms whose common difference is divisible by 4. Nothing is
/// proved here — an input that cannot be brought into shape is refuted with
/// the violated condition. Degenerate (constant) windows reduce to (1, 0).
pub fn normalize_window(terms: &[Int; 4]) -> Result<FourApCandidate, Refutation> {
    for (index, term) in terms.iter().enumerate() {
        if is_perfect_square(term).is_none() {
            return Err(Refutation::new(FailedCondition::TermNotSquare {
                index,
                term: term.clone(),
            }));
        }
    }
    // Orient ascending; a decreasing progression is the same window read
    // backwards.
    let mut ordered: Vec<Int> = terms.to_vec();
    if ordered[3] < ordered[0] {
        ordered.reverse();
    }
    let step = &ordered[1] - &ordered[0];
    for index in 2..4 {
        if &ordered[index] - &ordered[index - 1] != step {
            return Err(Refutation::new(FailedCondition::NotInProgression {
                terms: ordered.clone(),
                index,
            }));
        }
    }
    let content = ordered
        .iter()
        .fold(Int::zero(), |acc, t| gcd(&acc, t));
    if content.is_zero() {
        // all-zero window: cannot be made odd
        return Err(Refutation::new(FailedCondition::TermEven {
            term: Int::zero(),
        }));
    }
    let reduced: Vec<Int> = ordered.iter().map(|t| t / &content).collect();
    for term in &reduced {
        if term.is_even() {
            return Err(Refutation::new(FailedCondition::TermEven {
                term: term.clone(),
            }));
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if !gcd(&reduced[i], &reduced[j]).is_one() {
                return Err(Refutation::new(FailedCondition::TermsShareFactor {
                    left: reduced[i].clone(),
                    right: reduced[j].clone(),
                }));
            }
        }
    }
    let diff = &reduced[1] - &reduced[0];
    if !(&diff % 4u32).is_zero() {
        return Err(Refutation::new(
            FailedCondition::DifferenceNotMultipleOfFour { difference: diff },
        ));
    }
    let n: Int = diff >> 2;
    let x: Int = (&reduced[1] + &reduced[2]) >> 1;
    Ok(FourApCandidate::new(x, n).expect("validated window yields a well-formed candidate"))
}

/// The right-hand side (x^2-4n^2)(x^2-36n^2) together with its factors.
/// Construction checks the factored and expanded forms agree exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticRhs {
    pub value: Int,
    /// x^2 - 4n^2, the product of the two inner terms.
    pub inner_factor: Int,
    /// x^2 - 36n^2, the product of the two outer terms.
    pub outer_factor: Int,
}

/// Evaluates y^2 = (x^2-4n^2)(x^2-36n^2) and asserts the algebraic identity
/// with (x^2-20n^2)^2 - 256 n^4.
pub fn quartic_rhs(x: &Int, n: &Int) -> QuarticRhs {
    let x2 = x * x;
    let n2 = n * n;
    let inner_factor = &x2 - &n2 * 4;
    let outer_factor = &x2 - &n2 * 36;
    let value = &inner_factor * &outer_factor;
    let expanded_core = &x2 - &n2 * 20;
    let expanded = &expanded_core * &expanded_core - int(256) * &n2 * &n2;
    assert_eq!(
        value, expanded,
        "(x^2-4n^2)(x^2-36n^2) must equal (x^2-20n^2)^2 - 256n^4"
    );
    QuarticRhs {
        value,
        inner_factor,
        outer_factor,
    }
}

/// Checks the identity (4u+v)(u+v) = x^2 under the preconditions
/// 4uv = 16n^2 and 4u^2+v^2 = x^2-20n^2, which force it.
pub fn sum_identity_check(u: &Int, v: &Int, n: &Int, x: &Int) -> Result<bool, Error> {
    let n2 = n * n;
    if int(4) * u * v != &n2 * 16 {
        return Err(Error::IdentityPrecondition {
            op: "sum_identity_check",
            detail: format!("4uv = {} but 16n^2 = {}", int(4) * u * v, &n2 * 16),
        });
    }
    let x2 = x * x;
    if int(4) * u * u + v * v != &x2 - &n2 * 20 {
        return Err(Error::IdentityPrecondition {
            op: "sum_identity_check",
            detail: format!(
                "4u^2+v^2 = {} but x^2-20n^2 = {}",
                int(4) * u * u + v * v,
                &x2 - &n2 * 20
            ),
        });
    }
    let product = (u * 4 + v) * (u + v);
    assert_eq!(
        product, x2,
        "(4u+v)(u+v) = x^2 is forced by the preconditions"
    );
    Ok(true)
}

/// Walks the forward chain from a window to its (A, D) pair, verifying each
/// square and coprimality condition on the way. The first failure refutes.
pub fn forward_to_ad(candidate: &FourApCandidate) -> Result<DescentWitness, Refutation> {
    let x = candidate.x();
    let n = candidate.n();
    let terms = candidate.terms();
    let mut roots = Vec::with_capacity(4);
    for (index, term) in terms.iter().enumerate() {
        match is_perfect_square(term) {
            Some(root) => roots.push(root),
            None => {
                return Err(Refutation::new(FailedCondition::TermNotSquare {
                    index,
                    term: term.clone(),
                }))
            }
        }
    }
    // y is the product of the four roots; its square is the quartic RHS.
    let y: Int = roots.iter().product();
    let rhs = quartic_rhs(x, n);
    assert_eq!(&y * &y, rhs.value, "y^2 must equal the verified product");

    let even_leg: Int = n * n * 16;
    let hyp: Int = x * x - n * n * 20;
    assert!(
        hyp.is_positive(),
        "verified window has x > 6n, so x^2 - 20n^2 > 0"
    );
    let (u, v) = if n.is_zero() {
        // Degenerate window: 4uv = 0 with v odd and coprime to 2u forces
        // u = 0, v = 1.
        (Int::zero(), Int::one())
    } else {
        let triple = PrimitiveTriple::new(even_leg.clone(), y.clone(), hyp.clone()).map_err(
            |_| {
                Refutation::new(FailedCondition::TripleNotPrimitive {
                    even: even_leg.clone(),
                    odd: y.clone(),
                    hyp: hyp.clone(),
                })
            },
        )?;
        let params = params_from_triple(&triple).map_err(|_| {
            Refutation::new(FailedCondition::TripleNotPrimitive {
                even: even_leg.clone(),
                odd: y.clone(),
                hyp: hyp.clone(),
            })
        })?;
        (params.u().clone(), params.v().clone())
    };

    // u must be even; more precisely u = 4A^2 since gcd(u, v) = 1 and
    // uv = 4n^2 puts the full power of 2 into u.
    if !(&u % 4u32).is_zero() {
        return Err(Refutation::new(
            FailedCondition::EvenParamNotFourTimesSquare { u },
        ));
    }
    let quarter: Int = &u >> 2;
    let a = match is_perfect_square(&quarter) {
        Some(a) => a,
        None => {
            return Err(Refutation::new(
                FailedCondition::EvenParamNotFourTimesSquare { u },
            ))
        }
    };
    let d = match is_perfect_square(&v) {
        Some(d) => d,
        None => return Err(Refutation::new(FailedCondition::OddParamNotSquare { v })),
    };

    sum_identity_check(&u, &v, n, x).expect("chain preserves the identity preconditions");

    let pair = AdPair::new(a.clone(), d.clone()).expect("extracted pair is well-formed");
    let sixteen = pair.sixteen_form();
    assert_eq!(sixteen, &u * 4 + &v, "16A^2+D^2 must equal 4u+v");
    if is_perfect_square(&sixteen).is_none() {
        return Err(Refutation::new(FailedCondition::SixteenFormNotSquare {
            a,
            d,
            value: sixteen,
        }));
    }
    let four = pair.four_form();
    assert_eq!(four, &u + &v, "4A^2+D^2 must equal u+v");
    if is_perfect_square(&four).is_none() {
        return Err(Refutation::new(FailedCondition::FourFormNotSquare {
            a,
            d,
            value: four,
        }));
    }

    assert_eq!(&(&a * &d), n, "AD = n follows from uv = 4n^2");
    let odd_leg_branch = if int(4) * &u * &u >= &v * &v {
        Branch::Plus
    } else {
        Branch::Minus
    };
    let witness = DescentWitness {
        x: x.clone(),
        n: n.clone(),
        y,
        u,
        v,
        a,
        d,
        odd_leg_branch,
    };
    witness
        .revalidate()
        .expect("freshly built witness revalidates");
    Ok(witness)
}

/// Rebuilds the window from an (A, D) pair: u = 4A^2, v = D^2,
/// x = root of (4u+v)(u+v), n = AD. Inverse of [`forward_to_ad`] on
/// certified pairs.
///
/// # Panics
///
/// Panics on internal inconsistency: once both forms are squares, the four
/// window terms are provably squares, so a failure there is a bug rather
/// than a property of the input.
pub fn ad_to_ap(pair: &AdPair) -> Result<FourApCandidate, Refutation> {
    let certified = pair.certify()?;
    let x: Int = certified.root16() * certified.root4();
    let n: Int = pair.a() * pair.d();
    let u: Int = pair.a() * pair.a() * 4;
    let v: Int = pair.d() * pair.d();
    assert_eq!(
        &x * &x,
        (&u * 4 + &v) * (&u + &v),
        "x^2 must equal (4u+v)(u+v)"
    );
    let candidate =
        FourApCandidate::new(x, n).expect("certified pair yields a well-formed window");
    for (index, term) in candidate.terms().iter().enumerate() {
        assert!(
            is_perfect_square(term).is_some(),
            "internal consistency: window term #{index} = {term} must be square \
             once both forms are"
        );
    }
    Ok(candidate)
}

/// Splits the two coprime factorizations `UV = U'V' = A` into pairwise
/// coprime 2a, b, c, d with U = 2ab, V = cd, U' = 2ac, V' = bd.
///
/// The gcd recipe b = gcd(U, V'), c = gcd(U', V), d = gcd(V, V'),
/// a = U / 2b only asserts existence; the reconstruction identities are
/// re-checked before the witness is returned.
pub fn split_factorizations(
    product: &Int,
    u: &Int,
    v: &Int,
    u_prime: &Int,
    v_prime: &Int,
) -> Result<SplitWitness, Error> {
    if u.is_negative() || v.is_negative() || u_prime.is_negative() || v_prime.is_negative() {
        return Err(Error::InconsistentFactorization {
            detail: "factors must be nonnegative",
        });
    }
    if &(u * v) != product || &(u_prime * v_prime) != product {
        return Err(Error::InconsistentFactorization {
            detail: "UV and U'V' must both equal A",
        });
    }
    if !gcd(u, v).is_one() {
        return Err(Error::InconsistentFactorization {
            detail: "gcd(U, V) != 1",
        });
    }
    if !gcd(&(u_prime * 2), v_prime).is_one() {
        return Err(Error::InconsistentFactorization {
            detail: "gcd(2U', V') != 1",
        });
    }
    let b = gcd(u, v_prime);
    let c = gcd(u_prime, v);
    let d = gcd(v, v_prime);
    let two_b: Int = &b * 2;
    if two_b.is_zero() || !(u % &two_b).is_zero() {
        return Err(Error::InconsistentFactorization {
            detail: "U is not divisible by 2 gcd(U, V')",
        });
    }
    let a: Int = u / &two_b;
    let witness = SplitWitness {
        u: u.clone(),
        v: v.clone(),
        u_prime: u_prime.clone(),
        v_prime: v_prime.clone(),
        a,
        b,
        c,
        d,
        product: product.clone(),
    };
    witness
        .revalidate()
        .map_err(|_| Error::InconsistentFactorization {
            detail: "reconstruction identities failed",
        })?;
    Ok(witness)
}

/// One descent step on a certified pair.
///
/// The degenerate pair (0, 1) reproduces itself. For A >= 1 the step
/// recovers the two factorizations of A from the square roots of
/// 4A^2 + D^2 and 16A^2 + D^2, splits them, and returns (a, d) — with the
/// runtime post-conditions that both forms of the new pair are squares and
/// that |ad| < |AD| strictly. Those asserts are vacuous in practice: no
/// certified pair with A >= 1 exists, and a hypothetical counterexample
/// would be transformed rather than rejected.
pub fn descent_step(certified: &CertifiedAdPair) -> DescentStep {
    let pair = certified.pair();
    let big_a = pair.a();
    let big_d = pair.d();

    let (u_fac, v_fac, branch_first, u_prime, v_prime, branch_second) = if big_a.is_zero() {
        // 2UV = 0 and U^2 - V^2 = -D with D = 1: the factorization (0, 1)
        // on both sides.
        (
            Int::zero(),
            Int::one(),
            Branch::Minus,
            Int::zero(),
            Int::one(),
            Branch::Minus,
        )
    } else {
        // 4A^2 + D^2 = f^2: the halves (f+D)/2 and (f-D)/2 are coprime with
        // product A^2, hence both squares; their roots give U > V with
        // U^2 - V^2 = D.
        let f = certified.root4();
        let s: Int = (f + big_d) >> 1;
        let t: Int = (f - big_d) >> 1;
        assert_eq!(&s * &t, big_a * big_a, "(f^2 - D^2)/4 = A^2");
        let mut u_fac = is_perfect_square(&s).expect("coprime factor of A^2 is square");
        let mut v_fac = is_perfect_square(&t).expect("coprime factor of A^2 is square");
        let mut branch_first = Branch::Plus;
        // The split recipe writes U = 2ab, so normalize the even factor into
        // the U slot; swapping flips the sign branch.
        if u_fac.is_odd() {
            std::mem::swap(&mut u_fac, &mut v_fac);
            branch_first = Branch::Minus;
        }

        // 16A^2 + D^2 = e^2: the halves (e+D)/2 and (e-D)/2 are coprime with
        // product 4A^2; the even one is 4U'^2, the odd one V'^2.
        let e = certified.root16();
        let s2: Int = (e + big_d) >> 1;
        let t2: Int = (e - big_d) >> 1;
        assert_eq!(&s2 * &t2, big_a * big_a * 4, "(e^2 - D^2)/4 = 4A^2");
        let (even_half, odd_half, branch_second) = if s2.is_even() {
            (s2, t2, Branch::Plus)
        } else {
            (t2, s2, Branch::Minus)
        };
        assert!((&even_half % 4u32).is_zero(), "even half carries the 4");
        let u_prime =
            is_perfect_square(&(&even_half >> 2)).expect("even half over 4 is square");
        let v_prime = is_perfect_square(&odd_half).expect("odd half is square");
        (u_fac, v_fac, branch_first, u_prime, v_prime, branch_second)
    };

    // Both recoveries factor the same A.
    assert_eq!(&(&u_fac * &v_fac), big_a, "UV = A");
    assert_eq!(&(&u_prime * &v_prime), big_a, "U'V' = A");
    // Record which sign each +/-D identity took.
    let signed_first = &u_fac * &u_fac - &v_fac * &v_fac;
    match branch_first {
        Branch::Plus => assert_eq!(&signed_first, big_d),
        Branch::Minus => assert_eq!(signed_first, -big_d.clone()),
    }
    let signed_second = int(4) * &u_prime * &u_prime - &v_prime * &v_prime;
    match branch_second {
        Branch::Plus => assert_eq!(&signed_second, big_d),
        Branch::Minus => assert_eq!(signed_second, -big_d.clone()),
    }

    let split = split_factorizations(big_a, &u_fac, &v_fac, &u_prime, &v_prime)
        .expect("recovered factorizations satisfy the split preconditions");
    // The balanced form behind the final step: b^2 (4a^2 + d^2) must equal
    // c^2 (16a^2 + d^2), which is what forces both factors to be squares.
    {
        let (a, b, c, d) = (&split.a, &split.b, &split.c, &split.d);
        let four_form: Int = int(4) * a * a + d * d;
        let sixteen_form: Int = int(16) * a * a + d * d;
        assert_eq!(
            b * b * four_form,
            c * c * sixteen_form,
            "b^2 (4a^2+d^2) = c^2 (16a^2+d^2) must hold after the split"
        );
    }
    let next = AdPair::new(split.a.clone(), split.d.clone())
        .expect("split parts form a well-formed pair");

    // Post-conditions of the step, runtime-asserted (vacuously at desk
    // scale): the new pair is again certified and strictly smaller.
    assert!(
        is_perfect_square(&next.sixteen_form()).is_some(),
        "descent output must satisfy the 16-form square condition"
    );
    assert!(
        is_perfect_square(&next.four_form()).is_some(),
        "descent output must satisfy the 4-form square condition"
    );
    if !big_a.is_zero() {
        assert!(
            (next.a() * next.d()).abs() < (big_a * big_d).abs(),
            "descent must strictly decrease |AD|"
        );
    }
    DescentStep { next, split }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use rand::{Rng, SeedableRng};

    fn rat(p: i64, q: i64) -> Rational {
        rational(int(p), int(q)).unwrap()
    }

    fn candidate(x: i64, n: i64) -> FourApCandidate {
        FourApCandidate::new(int(x), int(n)).unwrap()
    }

    #[test]
    fn candidate_construction() {
        assert!(FourApCandidate::new(int(1), int(0)).is_ok());
        assert!(FourApCandidate::new(int(3), int(0)).is_err()); // degenerate must be (1,0)
        assert!(FourApCandidate::new(int(4), int(1)).is_err()); // x even
        assert!(FourApCandidate::new(int(9), int(3)).is_err()); // shared factor
        assert_eq!(candidate(7, 1).terms(), [int(1), int(5), int(9), int(13)]);
    }

    #[test]
    fn clear_denominators_examples() {
        let refuted =
            clear_denominators(&[rat(1, 4), rat(25, 4), rat(49, 4), rat(73, 4)]).unwrap_err();
        assert_eq!(refuted.offending_value, int(73));
        assert!(refuted.reproduces());

        let ones = clear_denominators(&[rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(ones, [int(1), int(1), int(1), int(1)]);

        let quarters =
            clear_denominators(&[rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)]).unwrap();
        assert_eq!(quarters, [int(1), int(1), int(1), int(1)]);
    }

    #[test]
    fn clear_denominators_rejects_non_progression() {
        let refuted =
            clear_denominators(&[rat(1, 1), rat(4, 1), rat(9, 1), rat(16, 1)]).unwrap_err();
        assert_eq!(
            refuted.condition.label(),
            "rationals-not-in-progression"
        );
        assert!(refuted.reproduces());
    }

    #[test]
    fn normalize_window_examples() {
        let four = [int(4), int(4), int(4), int(4)];
        assert_eq!(normalize_window(&four).unwrap(), FourApCandidate::degenerate());

        let nine = [int(9), int(9), int(9), int(9)];
        assert_eq!(normalize_window(&nine).unwrap(), FourApCandidate::degenerate());

        let refuted = normalize_window(&[int(1), int(9), int(17), int(25)]).unwrap_err();
        assert_eq!(refuted.offending_value, int(17));
        assert_eq!(refuted.condition.label(), "term-not-square");
        assert!(refuted.reproduces());
    }

    #[test]
    fn normalize_handles_descending_windows() {
        let desc = [int(25), int(9), int(9), int(9)];
        // not an AP after orienting: 9,9,9,25
        assert!(normalize_window(&desc).is_err());
        let constant_desc = [int(49), int(49), int(49), int(49)];
        assert_eq!(
            normalize_window(&constant_desc).unwrap(),
            FourApCandidate::degenerate()
        );
    }

    #[test]
    fn quartic_rhs_examples() {
        assert_eq!(quartic_rhs(&int(1), &int(0)).value, int(1));
        let r = quartic_rhs(&int(7), &int(2));
        assert_eq!(r.value, int(-3135));
        assert_eq!(r.inner_factor, int(33));
        assert_eq!(r.outer_factor, int(-95));
        assert_eq!(quartic_rhs(&int(41), &int(0)).value, int(41).pow(4));
    }

    #[test]
    fn forward_on_degenerate_window() {
        let w = forward_to_ad(&FourApCandidate::degenerate()).unwrap();
        assert_eq!((&w.a, &w.d), (&int(0), &int(1)));
        assert_eq!((&w.u, &w.v, &w.y), (&int(0), &int(1), &int(1)));
        assert_eq!(w.odd_leg_branch, Branch::Minus);
        w.revalidate().unwrap();
        assert_eq!(w.ad_pair(), AdPair::degenerate());
    }

    #[test]
    fn forward_refutes_non_square_terms() {
        let r = forward_to_ad(&candidate(7, 1)).unwrap_err();
        assert_eq!(r.offending_value, int(5));
        assert_eq!(r.condition.label(), "term-not-square");
        match &r.condition {
            FailedCondition::TermNotSquare { index, .. } => assert_eq!(*index, 1),
            other => panic!("unexpected condition {other:?}"),
        }

        let r = forward_to_ad(&candidate(49, 4)).unwrap_err();
        assert_eq!(r.offending_value, int(41));
    }

    #[test]
    fn ad_to_ap_examples() {
        assert_eq!(
            ad_to_ap(&AdPair::degenerate()).unwrap(),
            FourApCandidate::degenerate()
        );

        let r = ad_to_ap(&AdPair::new(int(1), int(1)).unwrap()).unwrap_err();
        assert_eq!(r.offending_value, int(17));
        assert_eq!(r.condition.label(), "sixteen-form-not-square");

        let r = ad_to_ap(&AdPair::new(int(6), int(1)).unwrap()).unwrap_err();
        assert_eq!(r.offending_value, int(577));
    }

    #[test]
    fn composition_is_identity_on_the_degenerate_pair() {
        let pair = AdPair::degenerate();
        let window = ad_to_ap(&pair).unwrap();
        let witness = forward_to_ad(&window).unwrap();
        assert_eq!(witness.ad_pair(), pair);
    }

    #[test]
    fn split_examples() {
        let w = split_factorizations(&int(30), &int(6), &int(5), &int(10), &int(3)).unwrap();
        assert_eq!(
            (&w.a, &w.b, &w.c, &w.d),
            (&int(1), &int(3), &int(5), &int(1))
        );
        w.revalidate().unwrap();

        let w = split_factorizations(&int(2), &int(2), &int(1), &int(2), &int(1)).unwrap();
        assert_eq!(
            (&w.a, &w.b, &w.c, &w.d),
            (&int(1), &int(1), &int(1), &int(1))
        );

        let w = split_factorizations(&int(0), &int(0), &int(1), &int(0), &int(1)).unwrap();
        assert_eq!(
            (&w.a, &w.b, &w.c, &w.d),
            (&int(0), &int(1), &int(1), &int(1))
        );
    }

    #[test]
    fn split_rejects_inconsistent_inputs() {
        assert!(split_factorizations(&int(30), &int(6), &int(4), &int(10), &int(3)).is_err());
        assert!(split_factorizations(&int(30), &int(5), &int(6), &int(10), &int(3)).is_err());
    }

    #[test]
    fn descent_fixpoint() {
        let certified = AdPair::degenerate().certify().unwrap();
        let step = descent_step(&certified);
        assert_eq!(step.next, AdPair::degenerate());
        assert_eq!(
            (&step.split.u, &step.split.v, &step.split.u_prime, &step.split.v_prime),
            (&int(0), &int(1), &int(0), &int(1))
        );
        step.split.revalidate().unwrap();
    }

    #[test]
    fn uncertified_pairs_refute() {
        let r = AdPair::new(int(2), int(1)).unwrap().certify().unwrap_err();
        assert_eq!(r.offending_value, int(65));
        assert_eq!(r.condition.label(), "sixteen-form-not-square");

        let r = AdPair::new(int(3), int(5)).unwrap().certify().unwrap_err();
        assert_eq!(r.offending_value, int(61));
        assert_eq!(r.condition.label(), "four-form-not-square");
        assert!(r.reproduces());
    }

    #[test]
    fn sum_identity_examples() {
        assert!(sum_identity_check(&int(0), &int(1), &int(0), &int(1)).unwrap());
        // 4uv = 4 but 16n^2 = 0: precondition violated
        assert!(sum_identity_check(&int(1), &int(1), &int(0), &int(5)).is_err());
    }

    #[test]
    fn sum_identity_on_sampled_constructions() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut found = 0;
        while found < 50 {
            let u: i64 = rng.gen_range(0..500) * 2;
            let v: i64 = rng.gen_range(0..500) * 2 + 1;
            let uv = u * v;
            // need uv = 4n^2, i.e. uv a square divisible by 4
            if uv % 4 != 0 {
                continue;
            }
            let n2 = uv / 4;
            let n = (n2 as f64).sqrt() as i64;
            if n * n != n2 {
                continue;
            }
            let x2 = (4 * u + v) * (u + v);
            let x = (x2 as f64).sqrt() as i64;
            if x * x != x2 {
                continue;
            }
            assert!(sum_identity_check(&int(u), &int(v), &int(n), &int(x)).unwrap());
            found += 1;
        }
    }

    #[test]
    fn grid_equivalence_small() {
        // ad_to_ap succeeds iff forward_to_ad succeeds on the rebuilt window,
        // and only the degenerate pair certifies.
        for a in 0i64..=40 {
            for d in (1i64..=79).step_by(2) {
                if gcd(&int(a), &int(d)) != int(1) {
                    continue;
                }
                let pair = AdPair::new(int(a), int(d)).unwrap();
                match ad_to_ap(&pair) {
                    Ok(window) => {
                        let witness = forward_to_ad(&window).unwrap();
                        assert_eq!(witness.ad_pair(), pair);
                        assert_eq!((a, d), (0, 1), "only the degenerate pair certifies");
                    }
                    Err(refutation) => {
                        assert!(refutation.reproduces());
                        assert!((a, d) != (0, 1));
                    }
                }
            }
        }
    }

    #[test]
    fn random_splits_reconstruct() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let mut done = 0;
        while done < 10_000 {
            let a: i64 = rng.gen_range(1..200);
            let b: i64 = rng.gen_range(1..200) * 2 - 1;
            let c: i64 = rng.gen_range(1..200) * 2 - 1;
            let d: i64 = rng.gen_range(1..200) * 2 - 1;
            let parts = [2 * a, b, c, d];
            let mut coprime = true;
            for i in 0..4 {
                for j in i + 1..4 {
                    if gcd(&int(parts[i]), &int(parts[j])) != int(1) {
                        coprime = false;
                    }
                }
            }
            if !coprime {
                continue;
            }
            let u = int(2 * a * b);
            let v = int(c * d);
            let up = int(2 * a * c);
            let vp = int(b * d);
            let product = int(2 * a * b * c * d);
            let w = split_factorizations(&product, &u, &v, &up, &vp).unwrap();
            assert_eq!(
                (&w.a, &w.b, &w.c, &w.d),
                (&int(a), &int(b), &int(c), &int(d))
            );
            done += 1;
        }
    }

    #[test]
    fn refutations_replay() {
        let samples = vec![
            forward_to_ad(&candidate(7, 1)).unwrap_err(),
            forward_to_ad(&candidate(49, 4)).unwrap_err(),
            ad_to_ap(&AdPair::new(int(1), int(1)).unwrap()).unwrap_err(),
            normalize_window(&[int(1), int(9), int(17), int(25)]).unwrap_err(),
            clear_denominators(&[rat(1, 4), rat(25, 4), rat(49, 4), rat(73, 4)]).unwrap_err(),
        ];
        for refutation in samples {
            assert!(refutation.reproduces(), "{refutation} must replay");
        }
    }
}
