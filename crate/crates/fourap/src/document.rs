//! Versioned JSON certificate documents.
//!
//! Every CLI subcommand emits line-delimited JSON documents with
//! `schema_version` "1" and a `kind` tag. All integers are decimal strings
//! and rationals are `"p/q"` strings, so arbitrary precision survives any
//! consumer and golden files stay byte-exact. [`check_document`] re-derives
//! each document's claims from the echoed inputs alone.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{rational, Int, Rational};
use crate::congruent::{certify_congruent, CertifyOutcome, CongruentCertificate};
use crate::curves::{
    e_mul, e_to_quartic, on_e, point_order, quartic_to_e, torsion_points,
    EPoint, QuarticPoint,
};
use crate::descent::{
    clear_denominators, descent_step, forward_to_ad, normalize_window, AdPair, DescentStep,
    DescentWitness, FailedCondition, Refutation,
};
use crate::pythagoras::PrimitiveTriple;
use crate::search::{ApLength, FormFilter, Hit, SearchKind, SearchReport};

pub const SCHEMA_VERSION: &str = "1";

/// One emitted document: schema version plus a kind-tagged payload.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum Body {
    FourApWitness(FourApWitnessDoc),
    Refutation(RefutationDoc),
    CongruentCertificate(CongruentCertificateDoc),
    AdPair(AdPairDoc),
    CurvePoint(CurvePointDoc),
    SearchReport(SearchReportDoc),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::FourApWitness(_) => "four-ap-witness",
            Body::Refutation(_) => "refutation",
            Body::CongruentCertificate(_) => "congruent-certificate",
            Body::AdPair(_) => "ad-pair",
            Body::CurvePoint(_) => "curve-point",
            Body::SearchReport(_) => "search-report",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

fn named(name: &str, value: impl ToString) -> NamedValue {
    NamedValue {
        name: name.to_string(),
        value: value.to_string(),
    }
}

fn lookup<'a>(values: &'a [NamedValue], name: &str) -> Result<&'a str, String> {
    values
        .iter()
        .find(|nv| nv.name == name)
        .map(|nv| nv.value.as_str())
        .ok_or_else(|| format!("missing operand '{name}'"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourApWitnessDoc {
    /// The four terms exactly as given on the command line.
    pub inputs: Vec<String>,
    pub x: String,
    pub n: String,
    pub a: String,
    pub d: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<WitnessTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTrace {
    /// Square roots of the four window terms.
    pub roots: Vec<String>,
    pub y: String,
    pub u: String,
    pub v: String,
    /// Each square test of the chain with the value it certified.
    pub checks: Vec<CheckRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub condition: String,
    pub value: String,
    pub root: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationDoc {
    /// Which pipeline produced this refutation: verify-ap, descend, certify.
    pub operation: String,
    pub inputs: Vec<NamedValue>,
    pub condition: String,
    pub operands: Vec<NamedValue>,
    pub offending_value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruentCertificateDoc {
    pub inputs: Vec<NamedValue>,
    pub k: String,
    pub triple: TripleDoc,
    pub m: String,
    pub ap: ThreeSquareApDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleDoc {
    pub even_leg: String,
    pub odd_leg: String,
    pub hyp: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeSquareApDoc {
    pub a: String,
    pub b: String,
    pub c: String,
    pub k: String,
    /// The three squares themselves, for human consumption.
    pub squares: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdPairDoc {
    pub inputs: Vec<NamedValue>,
    pub a: String,
    pub d: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<DescendTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendTrace {
    /// Root of 16A^2 + D^2 for the input pair.
    pub root16: String,
    /// Root of 4A^2 + D^2 for the input pair.
    pub root4: String,
    pub split: SplitDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitDoc {
    pub u: String,
    pub v: String,
    pub u_prime: String,
    pub v_prime: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePointDoc {
    /// "e" or "quartic".
    pub curve: String,
    /// Absent coordinates mean the point at infinity (curve "e" only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mapped_from: Option<MappedFrom>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappedFrom {
    pub curve: String,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReportDoc {
    pub search: String,
    pub bounds: Vec<NamedValue>,
    pub hits: Vec<HitDoc>,
    pub scanned: String,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum HitDoc {
    SquareProgression {
        roots: Vec<String>,
        diff: String,
    },
    DoubleSquarePair {
        a: String,
        d: String,
        root16: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        root4: Option<String>,
    },
    EulerPair {
        x: String,
        y: String,
        root1: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        root2: Option<String>,
    },
    EPoint {
        x: String,
        y: String,
    },
}

fn wrap(body: Body) -> CertificateDocument {
    CertificateDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        body,
    }
}

/// Serializes one document as a single JSON line.
pub fn to_json_line(doc: &CertificateDocument) -> String {
    serde_json::to_string(doc).expect("documents always serialize")
}

/// Parses one JSON line back into a document.
pub fn parse_line(line: &str) -> Result<CertificateDocument, String> {
    serde_json::from_str(line).map_err(|e| format!("not a certificate document: {e}"))
}

// ---------------------------------------------------------------------------
// builders

pub fn witness_document(
    raw_inputs: &[String],
    witness: &DescentWitness,
    trace: bool,
) -> CertificateDocument {
    let trace = trace.then(|| {
        let terms = crate::descent::FourApCandidate::new(witness.x.clone(), witness.n.clone())
            .expect("witness coordinates form a candidate")
            .terms();
        let roots = terms
            .iter()
            .map(|t| {
                crate::arith::is_perfect_square(t)
                    .expect("witness terms are squares")
                    .to_string()
            })
            .collect();
        let pair = witness.ad_pair();
        let checks = vec![
            CheckRecord {
                condition: "even-param-is-four-times-square".into(),
                value: witness.u.to_string(),
                root: witness.a.to_string(),
            },
            CheckRecord {
                condition: "odd-param-is-square".into(),
                value: witness.v.to_string(),
                root: witness.d.to_string(),
            },
            CheckRecord {
                condition: "sixteen-form-is-square".into(),
                value: pair.sixteen_form().to_string(),
                root: crate::arith::is_perfect_square(&pair.sixteen_form())
                    .expect("witness certifies the 16-form")
                    .to_string(),
            },
            CheckRecord {
                condition: "four-form-is-square".into(),
                value: pair.four_form().to_string(),
                root: crate::arith::is_perfect_square(&pair.four_form())
                    .expect("witness certifies the 4-form")
                    .to_string(),
            },
        ];
        WitnessTrace {
            roots,
            y: witness.y.to_string(),
            u: witness.u.to_string(),
            v: witness.v.to_string(),
            checks,
        }
    });
    wrap(Body::FourApWitness(FourApWitnessDoc {
        inputs: raw_inputs.to_vec(),
        x: witness.x.to_string(),
        n: witness.n.to_string(),
        a: witness.a.to_string(),
        d: witness.d.to_string(),
        trace,
    }))
}

fn condition_operands(condition: &FailedCondition) -> Vec<NamedValue> {
    match condition {
        FailedCondition::TermNotSquare { index, term } => {
            vec![named("index", index), named("term", term)]
        }
        FailedCondition::RationalTermNotSquare { index, term } => {
            vec![named("index", index), named("term", term)]
        }
        FailedCondition::NotInProgression { terms, index } => {
            let mut ops: Vec<NamedValue> = terms
                .iter()
                .enumerate()
                .map(|(i, t)| named(&format!("term{i}"), t))
                .collect();
            ops.push(named("index", index));
            ops
        }
        FailedCondition::RationalsNotInProgression { terms, index } => {
            let mut ops: Vec<NamedValue> = terms
                .iter()
                .enumerate()
                .map(|(i, t)| named(&format!("term{i}"), t))
                .collect();
            ops.push(named("index", index));
            ops
        }
        FailedCondition::TermEven { term } => vec![named("term", term)],
        FailedCondition::TermsShareFactor { left, right } => {
            vec![named("left", left), named("right", right)]
        }
        FailedCondition::DifferenceNotMultipleOfFour { difference } => {
            vec![named("difference", difference)]
        }
        FailedCondition::TripleNotPrimitive { even, odd, hyp } => vec![
            named("even", even),
            named("odd", odd),
            named("hyp", hyp),
        ],
        FailedCondition::EvenParamNotFourTimesSquare { u } => vec![named("u", u)],
        FailedCondition::OddParamNotSquare { v } => vec![named("v", v)],
        FailedCondition::SixteenFormNotSquare { a, d, value } => {
            vec![named("a", a), named("d", d), named("value", value)]
        }
        FailedCondition::FourFormNotSquare { a, d, value } => {
            vec![named("a", a), named("d", d), named("value", value)]
        }
    }
}

fn parse_int(s: &str) -> Result<Int, String> {
    Int::from_str(s).map_err(|e| format!("bad integer '{s}': {e}"))
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.parse::<usize>()
        .map_err(|e| format!("bad index '{s}': {e}"))
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num.trim())?;
            let den = parse_int(den.trim())?;
            rational(num, den).map_err(|e| e.to_string())
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

fn condition_from_operands(
    label: &str,
    operands: &[NamedValue],
) -> Result<FailedCondition, String> {
    let collect_terms = |prefix: &str| -> Result<Vec<String>, String> {
        let mut terms = Vec::new();
        for i in 0.. {
            match lookup(operands, &format!("{prefix}{i}")) {
                Ok(v) => terms.push(v.to_string()),
                Err(_) => break,
            }
        }
        if terms.is_empty() {
            Err("no terms recorded".to_string())
        } else {
            Ok(terms)
        }
    };
    match label {
        "term-not-square" => Ok(FailedCondition::TermNotSquare {
            index: parse_usize(lookup(operands, "index")?)?,
            term: parse_int(lookup(operands, "term")?)?,
        }),
        "rational-term-not-square" => Ok(FailedCondition::RationalTermNotSquare {
            index: parse_usize(lookup(operands, "index")?)?,
            term: parse_rational(lookup(operands, "term")?)?,
        }),
        "not-in-progression" => Ok(FailedCondition::NotInProgression {
            terms: collect_terms("term")?
                .iter()
                .map(|s| parse_int(s))
                .collect::<Result<_, _>>()?,
            index: parse_usize(lookup(operands, "index")?)?,
        }),
        "rationals-not-in-progression" => Ok(FailedCondition::RationalsNotInProgression {
            terms: collect_terms("term")?
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()?,
            index: parse_usize(lookup(operands, "index")?)?,
        }),
        "term-even-after-reduction" => Ok(FailedCondition::TermEven {
            term: parse_int(lookup(operands, "term")?)?,
        }),
        "terms-share-factor" => Ok(FailedCondition::TermsShareFactor {
            left: parse_int(lookup(operands, "left")?)?,
            right: parse_int(lookup(operands, "right")?)?,
        }),
        "difference-not-multiple-of-four" => {
            Ok(FailedCondition::DifferenceNotMultipleOfFour {
                difference: parse_int(lookup(operands, "difference")?)?,
            })
        }
        "triple-not-primitive" => Ok(FailedCondition::TripleNotPrimitive {
            even: parse_int(lookup(operands, "even")?)?,
            odd: parse_int(lookup(operands, "odd")?)?,
            hyp: parse_int(lookup(operands, "hyp")?)?,
        }),
        "even-param-not-four-times-square" => {
            Ok(FailedCondition::EvenParamNotFourTimesSquare {
                u: parse_int(lookup(operands, "u")?)?,
            })
        }
        "odd-param-not-square" => Ok(FailedCondition::OddParamNotSquare {
            v: parse_int(lookup(operands, "v")?)?,
        }),
        "sixteen-form-not-square" => Ok(FailedCondition::SixteenFormNotSquare {
            a: parse_int(lookup(operands, "a")?)?,
            d: parse_int(lookup(operands, "d")?)?,
            value: parse_int(lookup(operands, "value")?)?,
        }),
        "four-form-not-square" => Ok(FailedCondition::FourFormNotSquare {
            a: parse_int(lookup(operands, "a")?)?,
            d: parse_int(lookup(operands, "d")?)?,
            value: parse_int(lookup(operands, "value")?)?,
        }),
        other => Err(format!("unknown condition '{other}'")),
    }
}

pub fn window_refutation_document(
    raw_inputs: &[String],
    refutation: &Refutation,
) -> CertificateDocument {
    wrap(Body::Refutation(RefutationDoc {
        operation: "verify-ap".into(),
        inputs: raw_inputs
            .iter()
            .enumerate()
            .map(|(i, s)| named(&format!("term{i}"), s))
            .collect(),
        condition: refutation.condition.label().into(),
        operands: condition_operands(&refutation.condition),
        offending_value: refutation.offending_value.to_string(),
    }))
}

pub fn descend_refutation_document(
    input: &AdPair,
    refutation: &Refutation,
) -> CertificateDocument {
    wrap(Body::Refutation(RefutationDoc {
        operation: "descend".into(),
        inputs: vec![named("a", input.a()), named("d", input.d())],
        condition: refutation.condition.label().into(),
        operands: condition_operands(&refutation.condition),
        offending_value: refutation.offending_value.to_string(),
    }))
}

/// Bounded negative outcome of a congruent-number search, expressed as a
/// replayable refutation of "a witness exists below this bound".
pub fn congruent_exhausted_document(k: &Int, hyp_bound: &Int) -> CertificateDocument {
    wrap(Body::Refutation(RefutationDoc {
        operation: "certify".into(),
        inputs: vec![named("k", k), named("hyp_bound", hyp_bound)],
        condition: "congruent-search-exhausted".into(),
        operands: vec![named("k", k), named("hyp_bound", hyp_bound)],
        offending_value: hyp_bound.to_string(),
    }))
}

pub fn congruent_certificate_document(
    cert: &CongruentCertificate,
    hyp_bound: &Int,
) -> CertificateDocument {
    let (a, b, c) = cert.ap.roots();
    let (s1, s2, s3) = cert.ap.squares();
    wrap(Body::CongruentCertificate(CongruentCertificateDoc {
        inputs: vec![named("k", &cert.k), named("hyp_bound", hyp_bound)],
        k: cert.k.to_string(),
        triple: TripleDoc {
            even_leg: cert.triple.even_leg().to_string(),
            odd_leg: cert.triple.odd_leg().to_string(),
            hyp: cert.triple.hyp().to_string(),
        },
        m: cert.m.to_string(),
        ap: ThreeSquareApDoc {
            a: a.to_string(),
            b: b.to_string(),
            c: c.to_string(),
            k: cert.ap.difference().to_string(),
            squares: vec![s1.to_string(), s2.to_string(), s3.to_string()],
        },
    }))
}

pub fn descend_document(
    input: &AdPair,
    root16: &Int,
    root4: &Int,
    step: &DescentStep,
    trace: bool,
) -> CertificateDocument {
    let trace = trace.then(|| DescendTrace {
        root16: root16.to_string(),
        root4: root4.to_string(),
        split: SplitDoc {
            u: step.split.u.to_string(),
            v: step.split.v.to_string(),
            u_prime: step.split.u_prime.to_string(),
            v_prime: step.split.v_prime.to_string(),
            a: step.split.a.to_string(),
            b: step.split.b.to_string(),
            c: step.split.c.to_string(),
            d: step.split.d.to_string(),
        },
    });
    wrap(Body::AdPair(AdPairDoc {
        inputs: vec![named("a", input.a()), named("d", input.d())],
        a: step.next.a().to_string(),
        d: step.next.d().to_string(),
        trace,
    }))
}

pub fn torsion_point_document(point: &EPoint, order: u32) -> CertificateDocument {
    let (x, y) = match point {
        EPoint::Infinity => (None, None),
        EPoint::Affine(x, y) => (Some(x.to_string()), Some(y.to_string())),
    };
    wrap(Body::CurvePoint(CurvePointDoc {
        curve: "e".into(),
        x,
        y,
        order: Some(order.to_string()),
        mapped_from: None,
    }))
}

pub fn mapped_point_document(
    from_curve: &str,
    from_x: &Rational,
    from_y: &Rational,
    to_curve: &str,
    to_x: &Rational,
    to_y: &Rational,
) -> CertificateDocument {
    wrap(Body::CurvePoint(CurvePointDoc {
        curve: to_curve.into(),
        x: Some(to_x.to_string()),
        y: Some(to_y.to_string()),
        order: None,
        mapped_from: Some(MappedFrom {
            curve: from_curve.into(),
            x: from_x.to_string(),
            y: from_y.to_string(),
        }),
    }))
}

pub fn e_search_document(height: u64, points: &[EPoint], scanned: u64) -> CertificateDocument {
    let hits = points
        .iter()
        .map(|p| match p {
            EPoint::Affine(x, y) => HitDoc::EPoint {
                x: x.to_string(),
                y: y.to_string(),
            },
            EPoint::Infinity => unreachable!("search returns affine points"),
        })
        .collect();
    wrap(Body::SearchReport(SearchReportDoc {
        search: "e-point-search".into(),
        bounds: vec![named("height", height)],
        hits,
        scanned: scanned.to_string(),
        exhaustive: true,
    }))
}

fn search_label(kind: &SearchKind) -> &'static str {
    match kind {
        SearchKind::SquareProgression {
            length: ApLength::Four,
            ..
        } => "four-square-ap",
        SearchKind::SquareProgression {
            length: ApLength::ThreePrefix,
            ..
        } => "three-square-prefix",
        SearchKind::DoubleSquarePair {
            forms: FormFilter::Both,
            ..
        } => "double-square-pairs",
        SearchKind::DoubleSquarePair {
            forms: FormFilter::FirstOnly,
            ..
        } => "double-square-pairs-first-form",
        SearchKind::EulerPair {
            forms: FormFilter::Both,
            ..
        } => "euler-pairs",
        SearchKind::EulerPair {
            forms: FormFilter::FirstOnly,
            ..
        } => "euler-pairs-first-form",
        SearchKind::ThreeSquareProgression { .. } => "three-square-ap",
    }
}

fn kind_from_label(label: &str, bounds: &[NamedValue]) -> Result<SearchKind, String> {
    let bound = |name: &str| -> Result<u64, String> {
        lookup(bounds, name)?
            .parse::<u64>()
            .map_err(|e| format!("bad bound '{name}': {e}"))
    };
    match label {
        "four-square-ap" => Ok(SearchKind::SquareProgression {
            root_bound: bound("root_bound")?,
            length: ApLength::Four,
        }),
        "three-square-prefix" => Ok(SearchKind::SquareProgression {
            root_bound: bound("root_bound")?,
            length: ApLength::ThreePrefix,
        }),
        "double-square-pairs" => Ok(SearchKind::DoubleSquarePair {
            a_bound: bound("a_bound")?,
            d_bound: bound("d_bound")?,
            forms: FormFilter::Both,
        }),
        "double-square-pairs-first-form" => Ok(SearchKind::DoubleSquarePair {
            a_bound: bound("a_bound")?,
            d_bound: bound("d_bound")?,
            forms: FormFilter::FirstOnly,
        }),
        "euler-pairs" => Ok(SearchKind::EulerPair {
            x_bound: bound("x_bound")?,
            y_bound: bound("y_bound")?,
            forms: FormFilter::Both,
            odd_x_only: true,
        }),
        "euler-pairs-first-form" => Ok(SearchKind::EulerPair {
            x_bound: bound("x_bound")?,
            y_bound: bound("y_bound")?,
            forms: FormFilter::FirstOnly,
            odd_x_only: false,
        }),
        "three-square-ap" => Ok(SearchKind::ThreeSquareProgression {
            k: bound("k")?,
            root_bound: bound("root_bound")?,
        }),
        other => Err(format!("unknown search '{other}'")),
    }
}

fn hit_to_doc(hit: &Hit) -> HitDoc {
    match hit {
        Hit::SquareProgression { roots, diff } => HitDoc::SquareProgression {
            roots: roots.iter().map(|r| r.to_string()).collect(),
            diff: diff.to_string(),
        },
        Hit::DoubleSquarePair { a, d, root16, root4 } => HitDoc::DoubleSquarePair {
            a: a.to_string(),
            d: d.to_string(),
            root16: root16.to_string(),
            root4: root4.map(|r| r.to_string()),
        },
        Hit::EulerPair { x, y, root1, root2 } => HitDoc::EulerPair {
            x: x.to_string(),
            y: y.to_string(),
            root1: root1.to_string(),
            root2: root2.map(|r| r.to_string()),
        },
    }
}

fn hit_from_doc(doc: &HitDoc) -> Result<Hit, String> {
    let p64 = |s: &str| -> Result<u64, String> {
        s.parse::<u64>()
            .map_err(|e| format!("bad value '{s}': {e}"))
    };
    match doc {
        HitDoc::SquareProgression { roots, diff } => Ok(Hit::SquareProgression {
            roots: roots
                .iter()
                .map(|r| p64(r))
                .collect::<Result<_, _>>()?,
            diff: p64(diff)?,
        }),
        HitDoc::DoubleSquarePair { a, d, root16, root4 } => Ok(Hit::DoubleSquarePair {
            a: p64(a)?,
            d: p64(d)?,
            root16: p64(root16)?,
            root4: root4.as_deref().map(p64).transpose()?,
        }),
        HitDoc::EulerPair { x, y, root1, root2 } => Ok(Hit::EulerPair {
            x: p64(x)?,
            y: p64(y)?,
            root1: p64(root1)?,
            root2: root2.as_deref().map(p64).transpose()?,
        }),
        HitDoc::EPoint { .. } => Err("point hit in a grid search report".into()),
    }
}

pub fn search_report_document(report: &SearchReport) -> CertificateDocument {
    wrap(Body::SearchReport(SearchReportDoc {
        search: search_label(&report.kind).into(),
        bounds: report
            .bounds()
            .into_iter()
            .map(|(name, value)| named(name, value))
            .collect(),
        hits: report.hits.iter().map(hit_to_doc).collect(),
        scanned: report.scanned.to_string(),
        exhaustive: report.exhaustive,
    }))
}

// ---------------------------------------------------------------------------
// re-validation

/// Re-derives a document's claims from its echoed inputs. Accepts exactly
/// the documents this tool emits.
pub fn check_document(doc: &CertificateDocument) -> Result<(), String> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(format!(
            "unsupported schema version '{}'",
            doc.schema_version
        ));
    }
    match &doc.body {
        Body::FourApWitness(w) => check_witness(w),
        Body::Refutation(r) => check_refutation(r),
        Body::CongruentCertificate(c) => check_congruent(c),
        Body::AdPair(p) => check_ad_pair(p),
        Body::CurvePoint(p) => check_curve_point(p),
        Body::SearchReport(r) => check_search_report(r),
    }
}

fn run_window_pipeline(
    inputs: &[Rational],
) -> Result<Result<DescentWitness, Refutation>, String> {
    if inputs.len() != 4 {
        return Err(format!("expected 4 terms, got {}", inputs.len()));
    }
    let terms: [Rational; 4] = [
        inputs[0].clone(),
        inputs[1].clone(),
        inputs[2].clone(),
        inputs[3].clone(),
    ];
    let cleared = match clear_denominators(&terms) {
        Ok(c) => c,
        Err(r) => return Ok(Err(r)),
    };
    let candidate = match normalize_window(&cleared) {
        Ok(c) => c,
        Err(r) => return Ok(Err(r)),
    };
    Ok(forward_to_ad(&candidate))
}

fn check_witness(w: &FourApWitnessDoc) -> Result<(), String> {
    let inputs = w
        .inputs
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    let witness = run_window_pipeline(&inputs)?
        .map_err(|r| format!("inputs refute instead of certifying: {r}"))?;
    witness.revalidate()?;
    let got = [
        witness.x.to_string(),
        witness.n.to_string(),
        witness.a.to_string(),
        witness.d.to_string(),
    ];
    let recorded = [w.x.clone(), w.n.clone(), w.a.clone(), w.d.clone()];
    if got != recorded {
        return Err(format!(
            "recomputed chain (x={}, n={}, a={}, d={}) does not match the document",
            got[0], got[1], got[2], got[3]
        ));
    }
    if let Some(trace) = &w.trace {
        if trace.y != witness.y.to_string()
            || trace.u != witness.u.to_string()
            || trace.v != witness.v.to_string()
        {
            return Err("trace does not match the recomputed witness".into());
        }
    }
    Ok(())
}

fn check_refutation(r: &RefutationDoc) -> Result<(), String> {
    if r.condition == "congruent-search-exhausted" {
        let k = parse_int(lookup(&r.operands, "k")?)?;
        let hyp_bound = parse_int(lookup(&r.operands, "hyp_bound")?)?;
        return match certify_congruent(&k, &hyp_bound) {
            Ok(CertifyOutcome::ExhaustedBelow { .. }) => Ok(()),
            Ok(CertifyOutcome::Found(cert)) => Err(format!(
                "search is not exhausted: {} certifies with triple ({}, {}, {})",
                k,
                cert.triple.even_leg(),
                cert.triple.odd_leg(),
                cert.triple.hyp()
            )),
            Err(e) => Err(e.to_string()),
        };
    }
    let condition = condition_from_operands(&r.condition, &r.operands)?;
    if !condition.reproduces() {
        return Err(format!("condition '{}' does not reproduce", r.condition));
    }
    if condition.offending_value().to_string() != r.offending_value {
        return Err("offending value does not match the condition".into());
    }
    // Where the inputs are present, confirm they really produce this
    // refutation.
    match r.operation.as_str() {
        "verify-ap" => {
            let mut inputs = Vec::new();
            for i in 0..4 {
                inputs.push(parse_rational(lookup(&r.inputs, &format!("term{i}"))?)?);
            }
            match run_window_pipeline(&inputs)? {
                Err(produced) if produced.condition == condition => Ok(()),
                Err(produced) => Err(format!("inputs refute differently: {produced}")),
                Ok(_) => Err("inputs certify instead of refuting".into()),
            }
        }
        "descend" => {
            let a = parse_int(lookup(&r.inputs, "a")?)?;
            let d = parse_int(lookup(&r.inputs, "d")?)?;
            let pair = AdPair::new(a, d).map_err(|e| e.to_string())?;
            match pair.certify() {
                Err(produced) if produced.condition == condition => Ok(()),
                Err(produced) => Err(format!("inputs refute differently: {produced}")),
                Ok(_) => Err("pair certifies instead of refuting".into()),
            }
        }
        other => Err(format!("unknown refutation operation '{other}'")),
    }
}

fn check_congruent(c: &CongruentCertificateDoc) -> Result<(), String> {
    let k = parse_int(&c.k)?;
    let m = parse_int(&c.m)?;
    let triple = PrimitiveTriple::new(
        parse_int(&c.triple.even_leg)?,
        parse_int(&c.triple.odd_leg)?,
        parse_int(&c.triple.hyp)?,
    )
    .map_err(|e| e.to_string())?;
    let ap = crate::congruent::ThreeSquareAP::new(
        parse_rational(&c.ap.a)?,
        parse_rational(&c.ap.b)?,
        parse_rational(&c.ap.c)?,
        parse_int(&c.ap.k)?,
    )
    .map_err(|e| e.to_string())?;
    let cert = CongruentCertificate { k, triple, m, ap };
    cert.verify().map_err(|e| e.to_string())?;
    let hyp_bound = parse_int(lookup(&c.inputs, "hyp_bound")?)?;
    if cert.triple.hyp() > &hyp_bound {
        return Err("certificate triple exceeds the declared search bound".into());
    }
    let (s1, s2, s3) = cert.ap.squares();
    let squares = vec![s1.to_string(), s2.to_string(), s3.to_string()];
    if squares != c.ap.squares {
        return Err("recorded squares do not match the roots".into());
    }
    Ok(())
}

fn check_ad_pair(p: &AdPairDoc) -> Result<(), String> {
    let a = parse_int(lookup(&p.inputs, "a")?)?;
    let d = parse_int(lookup(&p.inputs, "d")?)?;
    let pair = AdPair::new(a, d).map_err(|e| e.to_string())?;
    let certified = pair
        .certify()
        .map_err(|r| format!("input pair does not certify: {r}"))?;
    let step = descent_step(&certified);
    if step.next.a().to_string() != p.a || step.next.d().to_string() != p.d {
        return Err(format!(
            "recomputed descent gives ({}, {}), document claims ({}, {})",
            step.next.a(),
            step.next.d(),
            p.a,
            p.d
        ));
    }
    step.split.revalidate()?;
    if let Some(trace) = &p.trace {
        if trace.root16 != certified.root16().to_string()
            || trace.root4 != certified.root4().to_string()
        {
            return Err("trace roots do not match the certified pair".into());
        }
        let split = &step.split;
        let recorded = [
            &trace.split.u,
            &trace.split.v,
            &trace.split.u_prime,
            &trace.split.v_prime,
            &trace.split.a,
            &trace.split.b,
            &trace.split.c,
            &trace.split.d,
        ];
        let computed = [
            split.u.to_string(),
            split.v.to_string(),
            split.u_prime.to_string(),
            split.v_prime.to_string(),
            split.a.to_string(),
            split.b.to_string(),
            split.c.to_string(),
            split.d.to_string(),
        ];
        if recorded.iter().zip(computed.iter()).any(|(r, c)| **r != *c) {
            return Err("trace split does not match the recomputed split".into());
        }
    }
    Ok(())
}

fn check_curve_point(p: &CurvePointDoc) -> Result<(), String> {
    let point = match (&p.x, &p.y) {
        (None, None) => {
            if p.curve != "e" {
                return Err("only E has a point at infinity".into());
            }
            EPoint::Infinity
        }
        (Some(x), Some(y)) => {
            let x = parse_rational(x)?;
            let y = parse_rational(y)?;
            match p.curve.as_str() {
                "e" => EPoint::affine(x, y).map_err(|e| e.to_string())?,
                "quartic" => {
                    let q = QuarticPoint::new(x, y).map_err(|e| e.to_string())?;
                    if let Some(mapped) = &p.mapped_from {
                        check_map_from(mapped, &MapTarget::Quartic(q.clone()))?;
                    }
                    if p.order.is_some() {
                        return Err("orders are only recorded for points of E".into());
                    }
                    return Ok(());
                }
                other => return Err(format!("unknown curve '{other}'")),
            }
        }
        _ => return Err("point must have both coordinates or neither".into()),
    };
    if !on_e(&point) {
        return Err(format!("{point} is not on E"));
    }
    if let Some(order) = &p.order {
        let order: u32 = order
            .parse()
            .map_err(|e| format!("bad order '{order}': {e}"))?;
        if e_mul(&Int::from(order), &point) != EPoint::Infinity {
            return Err(format!("{point} does not have order dividing {order}"));
        }
        if point_order(&point) != order {
            return Err(format!("{point} does not have exact order {order}"));
        }
    }
    if let Some(mapped) = &p.mapped_from {
        check_map_from(mapped, &MapTarget::E(point))?;
    }
    Ok(())
}

enum MapTarget {
    E(EPoint),
    Quartic(QuarticPoint),
}

fn check_map_from(mapped: &MappedFrom, target: &MapTarget) -> Result<(), String> {
    let x = parse_rational(&mapped.x)?;
    let y = parse_rational(&mapped.y)?;
    match (mapped.curve.as_str(), target) {
        ("quartic", MapTarget::E(point)) => {
            let q = QuarticPoint::new(x, y).map_err(|e| e.to_string())?;
            let image = quartic_to_e(&q).map_err(|e| e.to_string())?;
            if &image != point {
                return Err("map image does not match the recorded point".into());
            }
            Ok(())
        }
        ("e", MapTarget::Quartic(q)) => {
            let point = EPoint::affine(x, y).map_err(|e| e.to_string())?;
            let image = e_to_quartic(&point).map_err(|e| e.to_string())?;
            if &image != q {
                return Err("map image does not match the recorded point".into());
            }
            Ok(())
        }
        _ => Err("map source and target curves do not line up".into()),
    }
}

fn check_search_report(r: &SearchReportDoc) -> Result<(), String> {
    if r.search == "e-point-search" {
        let height = lookup(&r.bounds, "height")?
            .parse::<u64>()
            .map_err(|e| format!("bad height: {e}"))?;
        let height_int = Int::from(height);
        for hit in &r.hits {
            let HitDoc::EPoint { x, y } = hit else {
                return Err("e-point-search hits must be points".into());
            };
            let x = parse_rational(x)?;
            let y = parse_rational(y)?;
            if x.numer().magnitude() > height_int.magnitude()
                || x.denom().magnitude() > height_int.magnitude()
            {
                return Err(format!("point x = {x} exceeds height {height}"));
            }
            EPoint::affine(x, y).map_err(|e| e.to_string())?;
        }
        return Ok(());
    }
    let kind = kind_from_label(&r.search, &r.bounds)?;
    for hit_doc in &r.hits {
        let hit = hit_from_doc(hit_doc)?;
        if !hit.revalidate(&kind) {
            return Err(format!("hit {hit_doc:?} fails its defining condition"));
        }
    }
    Ok(())
}

/// Torsion emission exactly as the CLI produces it: one document per point
/// in deterministic order, each carrying the point's group order.
pub fn torsion_documents() -> Vec<CertificateDocument> {
    torsion_points()
        .iter()
        .map(|p| {
            let order = if p.is_infinity() { 1 } else { point_order(p) };
            torsion_point_document(p, order)
        })
        .collect()
}

/// The `curve search` emission.
pub fn e_search_document_for(height: u64) -> CertificateDocument {
    let (points, scanned) = crate::curves::naive_point_search_counted(height);
    e_search_document(height, &points, scanned)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn documents_round_trip() {
        let witness = forward_to_ad(&crate::descent::FourApCandidate::degenerate()).unwrap();
        let docs = vec![
            witness_document(
                &["1".into(), "1".into(), "1".into(), "1".into()],
                &witness,
                true,
            ),
            congruent_exhausted_document(&int(1), &int(100)),
            torsion_documents().pop().unwrap(),
            e_search_document_for(5),
        ];
        for doc in docs {
            let line = to_json_line(&doc);
            let parsed = parse_line(&line).unwrap();
            assert_eq!(parsed, doc);
            assert_eq!(to_json_line(&parsed), line);
        }
    }

    #[test]
    fn check_accepts_emitted_documents() {
        let witness = forward_to_ad(&crate::descent::FourApCandidate::degenerate()).unwrap();
        let doc = witness_document(
            &["1".into(), "1".into(), "1".into(), "1".into()],
            &witness,
            false,
        );
        check_document(&doc).unwrap();

        let inputs: Vec<String> = ["1", "9", "17", "25"].iter().map(|s| s.to_string()).collect();
        let parsed: Vec<Rational> = inputs.iter().map(|s| parse_rational(s).unwrap()).collect();
        let refutation = run_window_pipeline(&parsed).unwrap().unwrap_err();
        let doc = window_refutation_document(&inputs, &refutation);
        check_document(&doc).unwrap();

        let doc = congruent_exhausted_document(&int(1), &int(100));
        check_document(&doc).unwrap();

        for doc in torsion_documents() {
            check_document(&doc).unwrap();
        }
    }

    #[test]
    fn check_rejects_tampered_documents() {
        let witness = forward_to_ad(&crate::descent::FourApCandidate::degenerate()).unwrap();
        let mut doc = witness_document(
            &["1".into(), "1".into(), "1".into(), "1".into()],
            &witness,
            false,
        );
        if let Body::FourApWitness(w) = &mut doc.body {
            w.a = "3".into();
        }
        assert!(check_document(&doc).is_err());

        // k = 5 certifies below 100: the exhaustion claim is false
        let mut doc = congruent_exhausted_document(&int(5), &int(100));
        assert!(check_document(&doc).is_err());
        doc.schema_version = "0".into();
        assert!(check_document(&doc).is_err());
    }
}
