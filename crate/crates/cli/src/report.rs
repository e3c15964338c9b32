//! JSON report shapes. Big integers and rationals are decimal strings;
//! elements of Z[sqrt2] are `{"a": .., "b": ..}` for `a + b sqrt2`.

use std::collections::BTreeMap;

use aszeta::lfun::{Curve, LFunctionReport, MultiplicitySet, PeriodReport, SignResolution};
use aszeta::ZSqrt2;
use num_bigint::BigInt;
use serde::Serialize;

use crate::spec::to_hex;

#[derive(Debug, Clone, Serialize)]
pub struct Z2 {
    pub a: String,
    pub b: String,
}

impl From<&ZSqrt2> for Z2 {
    fn from(x: &ZSqrt2) -> Self {
        Z2 {
            a: x.a.to_string(),
            b: x.b.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveEcho {
    pub m: usize,
    pub field_modulus: String,
    #[serde(rename = "R")]
    pub r: Vec<String>,
    pub d: usize,
    pub genus: usize,
}

impl From<&Curve> for CurveEcho {
    fn from(c: &Curve) -> Self {
        CurveEcho {
            m: c.m(),
            field_modulus: to_hex(c.spec().field_modulus),
            r: c.spec().r_coeffs.iter().map(|&x| to_hex(x)).collect(),
            d: c.d(),
            genus: c.genus(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodJson {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "N_odd")]
    pub n_odd: u64,
    pub a: u32,
    #[serde(rename = "D")]
    pub period: u64,
    pub case_tag: &'static str,
    pub c_table: BTreeMap<u64, usize>,
    pub eps_table: BTreeMap<u64, i8>,
}

impl From<&PeriodReport> for PeriodJson {
    fn from(p: &PeriodReport) -> Self {
        PeriodJson {
            n: p.n_split,
            n_odd: p.n_odd,
            a: p.a,
            period: p.period,
            case_tag: p.case.tag(),
            c_table: p.c_table.clone(),
            eps_table: p.eps_table.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum MultRecord {
    Whole { l: u64, m: u64 },
    Split { l: u64, m_plus: u64, m_minus: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct SolvedUnknowns {
    #[serde(rename = "M_plus")]
    pub m_plus: BTreeMap<u64, String>,
    #[serde(rename = "M_minus")]
    pub m_minus: BTreeMap<u64, String>,
}

fn rationals(map: &BTreeMap<u64, num_rational::BigRational>) -> BTreeMap<u64, String> {
    map.iter().map(|(&l, x)| (l, x.to_string())).collect()
}

pub fn mult_records(mults: &MultiplicitySet) -> Vec<MultRecord> {
    let mut out: Vec<(u64, MultRecord)> = mults
        .whole
        .iter()
        .map(|(&l, &m)| (l, MultRecord::Whole { l, m }))
        .chain(mults.split.iter().map(|(&l, &(p, q))| {
            (
                l,
                MultRecord::Split {
                    l,
                    m_plus: p,
                    m_minus: q,
                },
            )
        }))
        .collect();
    out.sort_by_key(|(l, _)| *l);
    out.into_iter().map(|(_, r)| r).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SignJson {
    pub convention: &'static str,
    pub n: u64,
    #[serde(rename = "S_adopted")]
    pub s_adopted: String,
    #[serde(rename = "S_alternative")]
    pub s_alternative: String,
    #[serde(rename = "S_reference")]
    pub s_reference: String,
    pub reference: &'static str,
    pub adopted_matches: bool,
    pub alternative_matches: bool,
    #[serde(rename = "M_minus_adopted")]
    pub m_minus_adopted: BTreeMap<u64, String>,
    #[serde(rename = "M_minus_alternative")]
    pub m_minus_alternative: BTreeMap<u64, String>,
}

pub const SIGN_CONVENTION: &str = "S_n* = -(sum_l M+_l c_l(n) + sum_l M-_l sigma_l(n)); \
the M- system is solved with right-hand side -S_n*. S_alternative is S_n rebuilt from the \
same system with right-hand side +S_n*.";

impl From<&SignResolution> for SignJson {
    fn from(s: &SignResolution) -> Self {
        SignJson {
            convention: SIGN_CONVENTION,
            n: s.n,
            s_adopted: s.s_adopted.to_string(),
            s_alternative: s.s_alternative.to_string(),
            s_reference: s.s_reference.to_string(),
            reference: s.reference,
            adopted_matches: s.adopted_matches(),
            alternative_matches: s.alternative_matches(),
            m_minus_adopted: rationals(&s.m_minus_adopted),
            m_minus_alternative: rationals(&s.m_minus_alternative),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub curve: CurveEcho,
    #[serde(flatten)]
    pub period: PeriodJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct LFunctionJson {
    pub curve: CurveEcho,
    #[serde(flatten)]
    pub period: PeriodJson,
    pub multiplicities: Vec<MultRecord>,
    pub solved: SolvedUnknowns,
    #[serde(rename = "Lstar")]
    pub lstar: Vec<Z2>,
    #[serde(rename = "L")]
    pub l: Vec<String>,
    pub point_counts: BTreeMap<u64, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_resolution: Option<SignJson>,
}

impl LFunctionJson {
    pub fn new(curve: &Curve, r: &LFunctionReport, counts: &BTreeMap<u64, BigInt>) -> Self {
        LFunctionJson {
            curve: curve.into(),
            period: (&r.period).into(),
            multiplicities: mult_records(&r.mults),
            solved: SolvedUnknowns {
                m_plus: rationals(&r.mults.m_plus),
                m_minus: rationals(&r.mults.m_minus),
            },
            lstar: r.lstar.coeffs().iter().map(Z2::from).collect(),
            l: r.l.coeffs().iter().map(|c| c.to_string()).collect(),
            point_counts: counts.iter().map(|(&n, c)| (n, c.to_string())).collect(),
            sign_resolution: r.sign.as_ref().map(SignJson::from),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub curve: CurveEcho,
    pub point_counts: BTreeMap<u64, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub kind: &'static str,
    pub n: u64,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationBlock {
    pub brute_bound: usize,
    pub dim_ceiling: usize,
    pub prediction_range: u64,
    pub comparisons_run: usize,
    pub mismatches: usize,
    pub passed: bool,
    pub warnings: Vec<String>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub curve: CurveEcho,
    #[serde(flatten)]
    pub period: PeriodJson,
    #[serde(rename = "L")]
    pub l: Vec<String>,
    pub verification: VerificationBlock,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_resolution: Option<SignJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuzukiRow {
    pub n: u64,
    pub epsilon: i8,
    pub c: u64,
    #[serde(rename = "S_n")]
    pub s_n: String,
    pub count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumerated: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_epsilon: Option<i8>,
    #[serde(rename = "generic_S_n", skip_serializing_if = "Option::is_none")]
    pub generic_s_n: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuzukiReport {
    pub h: u32,
    pub q0: u64,
    pub q: u64,
    pub cross_checked: bool,
    pub enumeration_bound: usize,
    pub mismatches: usize,
    pub passed: bool,
    pub rows: Vec<SuzukiRow>,
}
