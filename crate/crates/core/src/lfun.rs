//! The L-polynomial of `y^2 + y = x R(x)` over F_(2^m).
//!
//! Pipeline: splitting degree `N` and radical dimensions, the invariants
//! `epsilon_n` for `n | 2N`, the period `D`, the cyclotomic multiplicities
//! from divisor-indexed linear systems, then `L*` and `L(T) = L*(√2^m T)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{self, chi, divisors, ramanujan, sigma_sum, totient};
use crate::error::{invariant, Error, Result};
use crate::fieldtower::{default_modulus, FieldCtx};
use crate::linearized::{radical_profile, AdditivePoly};
use crate::linsolve;
use crate::quadform::{self, classify_trace_form, QuadClassification};
use crate::zsqrt2::{cyclo_rev, cyclo_split};
use crate::{IntPoly, PolyZSqrt2, QSqrt2, ZSqrt2};

/// Largest quadratic-form dimension the pipeline will classify by default.
pub const DEFAULT_DIM_CEILING: usize = 4096;

/// `m`, the modulus of F_(2^m) and the coefficients `a_0..a_d` of `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    pub m: usize,
    pub field_modulus: u64,
    pub r_coeffs: Vec<u64>,
}

impl CurveSpec {
    pub fn new(m: usize, field_modulus: u64, r_coeffs: Vec<u64>) -> Self {
        CurveSpec {
            m,
            field_modulus,
            r_coeffs,
        }
    }

    /// Spec over the default presentation of F_(2^m).
    pub fn with_default_modulus(m: usize, r_coeffs: Vec<u64>) -> Self {
        CurveSpec::new(m, default_modulus(m.clamp(1, 63)), r_coeffs)
    }

    /// The curve `y^2 + y = x^(q0+1) + x^(2 q0 + 1)` over F_2, `q0 = 2^h`,
    /// which carries the trace form of `x^q0 (x^q + x)`.
    pub fn suzuki(h: usize) -> Self {
        let mut coeffs = vec![0u64; h + 2];
        coeffs[h] = 1;
        coeffs[h + 1] = 1;
        CurveSpec::with_default_modulus(1, coeffs)
    }
}

/// A validated curve.
#[derive(Clone, Debug)]
pub struct Curve {
    spec: CurveSpec,
    base: FieldCtx,
    r: AdditivePoly,
}

impl Curve {
    pub fn new(spec: &CurveSpec) -> Result<Self> {
        let base = FieldCtx::new_base(spec.m, Some(spec.field_modulus))?;
        if spec.r_coeffs.len() < 2 {
            return Err(Error::InvalidCurve(
                "R must have 2-degree d >= 1 (genus 2^(d-1))".into(),
            ));
        }
        let r = AdditivePoly::new(&base, spec.r_coeffs.clone())
            .map_err(|e| Error::InvalidCurve(e.to_string()))?;
        Ok(Curve {
            spec: spec.clone(),
            base,
            r,
        })
    }

    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn r(&self) -> &AdditivePoly {
        &self.r
    }

    pub fn m(&self) -> usize {
        self.spec.m
    }

    pub fn d(&self) -> usize {
        self.r.degree2()
    }

    pub fn genus(&self) -> usize {
        1 << (self.d() - 1)
    }
}

/// The four shapes of the period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// `epsilon_N = -1`, `D = N`
    I,
    /// `epsilon_N = +1`, `D = 2N`
    II,
    /// `epsilon_N = 0`, `epsilon_2N = -1`, `D = 2N`
    IIIa,
    /// `epsilon_N = 0`, `epsilon_2N = +1`, `D = 4N`
    IIIb,
}

impl Case {
    pub fn tag(self) -> &'static str {
        match self {
            Case::I => "i",
            Case::II => "ii",
            Case::IIIa => "iiia",
            Case::IIIb => "iiib",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub m: usize,
    pub n_split: u64,
    pub n_odd: u64,
    pub a: u32,
    /// `c_n` for `n | 2N`
    pub c_table: BTreeMap<u64, usize>,
    /// `epsilon_n` for `n | 2N`
    pub eps_table: BTreeMap<u64, i8>,
    pub eps_n: i8,
    pub eps_2n: i8,
    pub period: u64,
    pub case: Case,
}

impl PeriodReport {
    /// `c_n = c_gcd(n, N)`.
    pub fn c_of(&self, n: u64) -> usize {
        self.c_table[&n.gcd(&self.n_split)]
    }

    fn eps(&self, n: u64) -> i8 {
        self.eps_table[&n]
    }
}

/// Pipeline limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// largest form dimension `mn` classified
    pub dim_ceiling: usize,
    /// largest `mn` enumerated by the brute-force oracles
    pub brute_bound: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            dim_ceiling: DEFAULT_DIM_CEILING,
            brute_bound: quadform::DEFAULT_BRUTE_BOUND,
        }
    }
}

/// `S_n* = epsilon_n (√2)^(c_n)` for a classified form.
pub fn modified_from(cls: QuadClassification) -> ZSqrt2 {
    let mag = ZSqrt2::sqrt2_pow(cls.c as u64);
    match cls.epsilon {
        0 => ZSqrt2::zero(),
        1 => mag,
        _ => -mag,
    }
}

/// `S_n* = (√2)^(-mn) S_n`, by classifying the form over F_(2^(mn)).
pub fn modified_sum(curve: &Curve, n: u64, cfg: &Config) -> Result<ZSqrt2> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let dim = curve.m() as u64 * n;
    if dim > cfg.dim_ceiling as u64 {
        return Err(Error::Infeasible {
            what: format!("S_{n}*"),
            needed: dim.min(usize::MAX as u64) as usize,
            ceiling: cfg.dim_ceiling,
        });
    }
    Ok(modified_from(classify_trace_form(curve.r(), n as usize)?))
}

/// Splitting degree, `c`- and `epsilon`-tables on the divisors of `2N`, and
/// the period.
pub fn determine_period(curve: &Curve, cfg: &Config) -> Result<PeriodReport> {
    let profile = radical_profile(curve.r())?;
    let n_split = profile.n_split;
    let m = curve.m();
    let needed = 2 * m as u64 * n_split;
    if needed > cfg.dim_ceiling as u64 {
        return Err(Error::Infeasible {
            what: format!("epsilon table up to 2N = {}", 2 * n_split),
            needed: needed as usize,
            ceiling: cfg.dim_ceiling,
        });
    }
    let divs = divisors(2 * n_split)?;
    let classes: Vec<QuadClassification> = divs
        .par_iter()
        .map(|&n| classify_trace_form(curve.r(), n as usize))
        .collect::<Result<_>>()?;
    let mut eps_table = BTreeMap::new();
    for (&n, cls) in divs.iter().zip(&classes) {
        invariant!(
            cls.c == profile.c[&n],
            "radical of q_{n} has dimension {}, gcd computation gives {}",
            cls.c,
            profile.c[&n]
        );
        invariant!(
            (m as u64 * n + cls.c as u64).is_multiple_of(2),
            "mn + c_n is odd for n = {n}"
        );
        if n.trailing_zeros() > profile.a {
            invariant!(cls.epsilon != 0, "epsilon_{n} = 0 although v2(n) > v2(N)");
        }
        eps_table.insert(n, cls.epsilon);
    }
    let eps_n = eps_table[&n_split];
    let eps_2n = eps_table[&(2 * n_split)];
    let (case, period) = match (eps_n, eps_2n) {
        (-1, _) => (Case::I, n_split),
        (1, e) => {
            invariant!(e == -1, "epsilon_N = 1 forces epsilon_2N = -1, found {e}");
            (Case::II, 2 * n_split)
        }
        (0, -1) => (Case::IIIa, 2 * n_split),
        (0, 1) => (Case::IIIb, 4 * n_split),
        (e, f) => {
            return Err(Error::Invariant(format!(
                "impossible invariants epsilon_N = {e}, epsilon_2N = {f}"
            )))
        }
    };
    Ok(PeriodReport {
        m,
        n_split,
        n_odd: profile.n_odd,
        a: profile.a,
        c_table: profile.c,
        eps_table,
        eps_n,
        eps_2n,
        period,
        case,
    })
}

/// `epsilon_n` for any `n >= 1` from the table on the divisors of `2N`.
pub fn predict_epsilon(report: &PeriodReport, n: u64) -> i8 {
    assert!(n >= 1, "n must be >= 1");
    if report.m % 2 == 1 && n % 2 == 1 {
        let g = n.gcd(&report.n_odd);
        let sign = if chi(n * g % 8).unwrap() == 1 { 1 } else { -1 };
        return sign * report.eps(g);
    }
    let a = report.a;
    let v = n.trailing_zeros();
    let g1 = n.gcd(&report.n_split);
    let g2 = n.gcd(&(2 * report.n_split));
    match report.case {
        Case::I => report.eps(g1),
        Case::IIIa => report.eps(g2),
        Case::II => {
            if v < a {
                0
            } else if v == a {
                report.eps(g1)
            } else {
                -report.eps(g1)
            }
        }
        Case::IIIb => {
            if v <= a {
                0
            } else if v == a + 1 {
                report.eps(g2)
            } else {
                -report.eps(g2)
            }
        }
    }
}

/// `S_n*` for any `n >= 1` from the predicted invariant.
pub fn predicted_modified_sum(report: &PeriodReport, n: u64) -> ZSqrt2 {
    modified_from(QuadClassification {
        c: report.c_of(n),
        epsilon: predict_epsilon(report, n),
    })
}

/// `S_n*` from the classified table when `n | 2N`, predicted otherwise.
fn table_modified_sum(report: &PeriodReport, n: u64) -> ZSqrt2 {
    match report.eps_table.get(&n) {
        Some(&epsilon) => modified_from(QuadClassification {
            c: report.c_table[&n],
            epsilon,
        }),
        None => predicted_modified_sum(report, n),
    }
}

/// Exponents of the factors of `L*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicitySet {
    pub odd_m: bool,
    /// exponent of `Φ_l` (every `l` for even `m`, `v2(l) <= 2` for odd `m`);
    /// zero entries omitted
    pub whole: BTreeMap<u64, u64>,
    /// exponents `(m+, m-)` of `Φ_l^+`, `Φ_l^-` (odd `m`, `v2(l) >= 3`);
    /// pairs of zeros omitted
    pub split: BTreeMap<u64, (u64, u64)>,
    /// solved unknowns: `m_l` for even `m`, `M_l^+` for odd `m`
    pub m_plus: BTreeMap<u64, BigRational>,
    /// solved `M_l^-` (odd `m` only)
    pub m_minus: BTreeMap<u64, BigRational>,
}

impl MultiplicitySet {
    /// `sum m deg` over all factors.
    pub fn total_degree(&self) -> u64 {
        let whole: u64 = self
            .whole
            .iter()
            .map(|(&l, &k)| k * totient(l).unwrap())
            .sum();
        let split: u64 = self
            .split
            .iter()
            .map(|(&l, &(p, q))| (p + q) * totient(l).unwrap() / 2)
            .sum();
        whole + split
    }

    /// Every `l` with a nonzero exponent.
    pub fn support(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.whole.keys().chain(self.split.keys()).copied().collect();
        out.sort_unstable();
        out
    }

    /// A deliberately wrong copy with one extra factor `1 - T`, used to
    /// exercise the verification harness.
    pub fn corrupted(&self) -> MultiplicitySet {
        let mut out = self.clone();
        *out.whole.entry(1).or_insert(0) += 1;
        *out.m_plus.entry(1).or_insert_with(BigRational::zero) += BigRational::one();
        out
    }

    /// `S_n* = -[sum M_l^+ c_l(n) + sum M_l^- sigma_l(n)]`, valid for every `n`.
    pub fn modified_sum(&self, n: u64) -> ZSqrt2 {
        modified_sum_from(&self.m_plus, &self.m_minus, n)
    }
}

fn modified_sum_from(
    m_plus: &BTreeMap<u64, BigRational>,
    m_minus: &BTreeMap<u64, BigRational>,
    n: u64,
) -> ZSqrt2 {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for (&l, mult) in m_plus {
        if !mult.is_zero() {
            a += mult * BigRational::from_integer(ramanujan(l, n).unwrap().into());
        }
    }
    for (&l, mult) in m_minus {
        if !mult.is_zero() {
            let s = sigma_sum(l, n).unwrap();
            a += mult * BigRational::from_integer(s.a);
            b += mult * BigRational::from_integer(s.b);
        }
    }
    assert!(
        a.is_integer() && b.is_integer(),
        "S_{n}* from multiplicities is not in Z[sqrt2]"
    );
    ZSqrt2::new(-a.to_integer(), -b.to_integer())
}

fn to_q(x: &ZSqrt2) -> QSqrt2 {
    QSqrt2::new(
        BigRational::from_integer(x.a.clone()),
        BigRational::from_integer(x.b.clone()),
    )
}

fn q_int(x: i64) -> QSqrt2 {
    QSqrt2::from_base(BigRational::from_integer(x.into()))
}

/// Solves `scale * A(n) x = rhs` for the unknowns indexed by the divisors
/// `l | n`, returning `(index, x)`; every `x` must be rational.
fn solve_divisor_system(n: u64, scale: i64, rhs: &[ZSqrt2]) -> Result<Vec<(u64, BigRational)>> {
    let a = arith::matrix_a(n)?;
    let mat: Vec<Vec<QSqrt2>> = a
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| q_int(scale) * QSqrt2::from_base(BigRational::from_integer(x.clone())))
                .collect()
        })
        .collect();
    let rhs: Vec<QSqrt2> = rhs.iter().map(to_q).collect();
    let x = linsolve::solve(&mat, &rhs)
        .ok_or_else(|| Error::Invariant(format!("A({n}) is singular")))?;
    a.index
        .iter()
        .zip(x)
        .map(|(&l, v)| {
            invariant!(v.b.is_zero(), "multiplicity for l = {l} is irrational");
            Ok((l, v.a))
        })
        .collect()
}

/// The unknowns of the `c_l`-system (the `m_l` for even `m`, the `M_l^+`
/// for odd `m`), from the case-by-case divisor systems. For odd `m` the
/// right-hand side at odd indices is 0, since the `c_l`-part of `S_n*`
/// vanishes for odd `n`.
fn solve_plus(report: &PeriodReport, s: &dyn Fn(u64) -> ZSqrt2) -> Result<BTreeMap<u64, BigRational>> {
    let odd_m = report.m % 2 == 1;
    let rhs_full = |d: u64| {
        if odd_m && d % 2 == 1 {
            ZSqrt2::zero()
        } else {
            -s(d)
        }
    };
    let n = report.n_split;
    let n_odd = report.n_odd;
    let a = report.a;
    let sol: Vec<(u64, BigRational)> = match report.case {
        Case::I => {
            let rhs: Vec<ZSqrt2> = divisors(n)?.into_iter().map(rhs_full).collect();
            solve_divisor_system(n, 1, &rhs)?
        }
        Case::IIIa => {
            let rhs: Vec<ZSqrt2> = divisors(2 * n)?.into_iter().map(rhs_full).collect();
            solve_divisor_system(2 * n, 1, &rhs)?
        }
        Case::II => {
            let rhs: Vec<ZSqrt2> = divisors(n_odd)?.into_iter().map(|d| s(d << a)).collect();
            solve_divisor_system(n_odd, 1 << a, &rhs)?
                .into_iter()
                .map(|(l, x)| (l << (a + 1), x))
                .collect()
        }
        Case::IIIb => {
            let rhs: Vec<ZSqrt2> = divisors(n_odd)?
                .into_iter()
                .map(|d| s(d << (a + 1)))
                .collect();
            solve_divisor_system(n_odd, 1 << (a + 1), &rhs)?
                .into_iter()
                .map(|(l, x)| (l << (a + 2), x))
                .collect()
        }
    };
    Ok(sol.into_iter().collect())
}

/// The `M_(8l')^-`, `l' | N'`, from `sum M_l^- sigma_l(n) = sign * S_n*`
/// for `n | N'`. Zero unless `8 | D`.
fn solve_minus(report: &PeriodReport, s: &dyn Fn(u64) -> ZSqrt2, sign: i64) -> Result<BTreeMap<u64, BigRational>> {
    let mut out = BTreeMap::new();
    if !report.period.is_multiple_of(8) {
        return Ok(out);
    }
    let idx = divisors(report.n_odd)?;
    let mat: Vec<Vec<QSqrt2>> = idx
        .iter()
        .map(|&n| {
            idx.iter()
                .map(|&l| sigma_sum(8 * l, n).map(|x| to_q(&x)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rhs: Vec<QSqrt2> = idx.iter().map(|&n| to_q(&s(n)) * q_int(sign)).collect();
    let x = linsolve::solve(&mat, &rhs)
        .ok_or_else(|| Error::Invariant("sigma system is singular".into()))?;
    for (&l, v) in idx.iter().zip(x) {
        invariant!(v.b.is_zero(), "M^- for l = {} is irrational", 8 * l);
        out.insert(8 * l, v.a);
    }
    Ok(out)
}

fn to_count(x: &BigRational, what: &str) -> Result<u64> {
    invariant!(
        x.is_integer() && !x.is_negative(),
        "{what} = {x} is not a nonnegative integer"
    );
    x.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Invariant(format!("{what} = {x} is too large")))
}

fn finish(report: &PeriodReport, d: usize, m_plus: BTreeMap<u64, BigRational>, m_minus: BTreeMap<u64, BigRational>) -> Result<MultiplicitySet> {
    let odd_m = report.m % 2 == 1;
    let mut whole = BTreeMap::new();
    let mut split = BTreeMap::new();
    for (&l, mp) in &m_plus {
        if odd_m && l % 8 == 0 {
            let mm = m_minus.get(&l).cloned().unwrap_or_else(BigRational::zero);
            let p = to_count(&(mp + &mm), &format!("m_{l}^+"))?;
            let q = to_count(&(mp - &mm), &format!("m_{l}^-"))?;
            if p + q > 0 {
                split.insert(l, (p, q));
            }
        } else {
            let k = to_count(mp, &format!("m_{l}"))?;
            if k > 0 {
                whole.insert(l, k);
            }
        }
    }
    for (l, mm) in &m_minus {
        invariant!(
            m_plus.contains_key(l) || mm.is_zero(),
            "M_{l}^- = {mm} without a matching M_{l}^+"
        );
    }
    let set = MultiplicitySet {
        odd_m,
        whole,
        split,
        m_plus,
        m_minus,
    };
    let total = set.total_degree();
    invariant!(total == 1 << d, "factors of L* have total degree {total}, expected {}", 1u64 << d);
    for l in set.support() {
        invariant!(report.period.is_multiple_of(l), "root order {l} does not divide D = {}", report.period);
        let want = match report.case {
            Case::II => Some(report.a + 1),
            Case::IIIb => Some(report.a + 2),
            _ => None,
        };
        if let Some(v) = want {
            invariant!(
                l.trailing_zeros() == v,
                "root order {l} must have dyadic valuation {v} in case {}",
                report.case
            );
        }
    }
    for &n in report.eps_table.keys() {
        let s = table_modified_sum(report, n);
        invariant!(
            set.modified_sum(n) == s,
            "multiplicities reproduce S_{n}* = {}, classification gives {s}",
            set.modified_sum(n)
        );
    }
    Ok(set)
}

/// Multiplicities of the `Φ_l` for even `m`.
pub fn solve_mults_even(curve: &Curve, report: &PeriodReport) -> Result<MultiplicitySet> {
    if !curve.m().is_multiple_of(2) {
        return Err(Error::InvalidArgument("solve_mults_even needs even m".into()));
    }
    let s = |n: u64| table_modified_sum(report, n);
    let m_plus = solve_plus(report, &s)?;
    finish(report, curve.d(), m_plus, BTreeMap::new())
}

/// Multiplicities of the `Φ_l` and `Φ_l^±` for odd `m`.
pub fn solve_mults_odd(curve: &Curve, report: &PeriodReport) -> Result<MultiplicitySet> {
    if curve.m() % 2 != 1 {
        return Err(Error::InvalidArgument("solve_mults_odd needs odd m".into()));
    }
    let s = |n: u64| table_modified_sum(report, n);
    let m_plus = solve_plus(report, &s)?;
    let m_minus = solve_minus(report, &s, -1)?;
    finish(report, curve.d(), m_plus, m_minus)
}

/// Which sign of the `σ`-system reproduces a directly computed `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignResolution {
    /// the odd index used for the comparison
    pub n: u64,
    /// `S_n` from the right-hand side `-S_n*` (adopted)
    pub s_adopted: BigInt,
    /// `S_n` from the right-hand side `+S_n*`
    pub s_alternative: BigInt,
    /// reference value of `S_n`
    pub s_reference: BigInt,
    /// `"brute_force"` or `"classification"`
    pub reference: &'static str,
    pub m_minus_adopted: BTreeMap<u64, BigRational>,
    pub m_minus_alternative: BTreeMap<u64, BigRational>,
}

impl SignResolution {
    pub fn adopted_matches(&self) -> bool {
        self.s_adopted == self.s_reference
    }

    pub fn alternative_matches(&self) -> bool {
        self.s_alternative == self.s_reference
    }
}

fn scale_sqrt2(x: &ZSqrt2, k: u64) -> Result<BigInt> {
    let y = x.clone() * ZSqrt2::sqrt2_pow(k);
    invariant!(y.b.is_zero(), "(sqrt2)^{k} S* = {y} is not an integer");
    Ok(y.a)
}

fn resolve_sign(curve: &Curve, report: &PeriodReport, mults: &MultiplicitySet, cfg: &Config) -> Result<Option<SignResolution>> {
    if report.m.is_multiple_of(2) || !report.period.is_multiple_of(8) {
        return Ok(None);
    }
    let s = |n: u64| table_modified_sum(report, n);
    let alt = solve_minus(report, &s, 1)?;
    let n = 1u64;
    let m = curve.m() as u64;
    let s_adopted = scale_sqrt2(&mults.modified_sum(n), m)?;
    let s_alternative = scale_sqrt2(&modified_sum_from(&mults.m_plus, &alt, n), m)?;
    let (s_reference, reference) = if curve.m() <= cfg.brute_bound {
        (quadform::brute_sum(curve.r(), 1, cfg.brute_bound)?, "brute_force")
    } else {
        (scale_sqrt2(&modified_sum(curve, 1, cfg)?, m)?, "classification")
    };
    let res = SignResolution {
        n,
        s_adopted,
        s_alternative,
        s_reference,
        reference,
        m_minus_adopted: mults.m_minus.clone(),
        m_minus_alternative: alt,
    };
    invariant!(
        res.adopted_matches(),
        "adopted sign gives S_1 = {}, reference {}",
        res.s_adopted,
        res.s_reference
    );
    Ok(Some(res))
}

#[derive(Clone, Debug)]
pub struct LFunctionReport {
    pub spec: CurveSpec,
    pub d: usize,
    pub period: PeriodReport,
    pub mults: MultiplicitySet,
    /// `L*(T) = L(T / √2^m)`
    pub lstar: PolyZSqrt2,
    pub l: IntPoly,
    pub sign: Option<SignResolution>,
}

impl LFunctionReport {
    /// `S_n* ` from the factorization, for any `n >= 1`.
    pub fn modified_sum(&self, n: u64) -> ZSqrt2 {
        self.mults.modified_sum(n)
    }

    /// `S_n = (√2)^(mn) S_n*`.
    pub fn exp_sum(&self, n: u64) -> Result<BigInt> {
        scale_sqrt2(&self.modified_sum(n), self.spec.m as u64 * n)
    }

    /// `#C(F_(2^(mn))) = 1 + 2^(mn) + S_n`.
    pub fn point_count(&self, n: u64) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be >= 1".into()));
        }
        let mn = self.spec.m as u64 * n;
        let mn = usize::try_from(mn).map_err(|_| Error::InvalidArgument("mn too large".into()))?;
        Ok(BigInt::one() + (BigInt::one() << mn) + self.exp_sum(n)?)
    }

    pub fn point_counts(&self, ns: impl IntoIterator<Item = u64>) -> Result<BTreeMap<u64, BigInt>> {
        ns.into_iter().map(|n| Ok((n, self.point_count(n)?))).collect()
    }
}

/// `L*` as the product of its cyclotomic factors.
pub fn lstar_from(mults: &MultiplicitySet) -> Result<PolyZSqrt2> {
    let mut acc = PolyZSqrt2::one();
    for (&l, &k) in &mults.whole {
        acc = &acc * &cyclo_rev(l)?.to_zsqrt2().pow(k as usize);
    }
    for (&l, &(p, q)) in &mults.split {
        let (plus, minus) = cyclo_split(l)?;
        acc = &(&acc * &plus.pow(p as usize)) * &minus.pow(q as usize);
    }
    Ok(acc)
}

/// `L(T) = L*(√2^m T)`, which must have integer coefficients.
pub fn l_from_lstar(lstar: &PolyZSqrt2, m: usize) -> Result<IntPoly> {
    let coeffs = lstar
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| scale_sqrt2(c, (m * k) as u64))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

/// Assembles the report from already solved multiplicities.
pub fn assemble_from(curve: &Curve, period: PeriodReport, mults: MultiplicitySet, sign: Option<SignResolution>) -> Result<LFunctionReport> {
    let lstar = lstar_from(&mults)?;
    let l = l_from_lstar(&lstar, curve.m())?;
    Ok(LFunctionReport {
        spec: curve.spec().clone(),
        d: curve.d(),
        period,
        mults,
        lstar,
        l,
        sign,
    })
}

/// Full pipeline.
pub fn assemble(curve: &Curve, cfg: &Config) -> Result<LFunctionReport> {
    let period = determine_period(curve, cfg)?;
    let mults = if curve.m().is_multiple_of(2) {
        solve_mults_even(curve, &period)?
    } else {
        solve_mults_odd(curve, &period)?
    };
    let sign = resolve_sign(curve, &period, &mults, cfg)?;
    let report = assemble_from(curve, period, mults, sign)?;
    let deg = 1usize << curve.d();
    invariant!(
        report.l.degree() == Some(deg) && report.lstar.degree() == Some(deg),
        "L has degree {:?}, expected {deg}",
        report.l.degree()
    );
    invariant!(report.l.coeff(0).is_one(), "L(0) != 1");
    if curve.m().is_multiple_of(2) {
        invariant!(
            report.lstar.coeffs().iter().all(|c| c.b.is_zero()),
            "L* has irrational coefficients for even m"
        );
    }
    Ok(report)
}

/// Random valid specs: `a_0..a_(d-1)` uniform in F_(2^m), `a_d` uniform
/// and nonzero.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, m: usize, d: usize) -> CurveSpec {
    let mask = (1u64 << m) - 1;
    let mut coeffs: Vec<u64> = (0..d).map(|_| rng.gen::<u64>() & mask).collect();
    coeffs.push(rng.gen_range(1..=mask));
    CurveSpec::with_default_modulus(m, coeffs)
}

/// `count` specs with `m` and `d` drawn from the given lists, reproducible
/// from `seed`.
pub fn random_corpus(seed: u64, count: usize, ms: &[usize], ds: &[usize]) -> Vec<CurveSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = ms[rng.gen_range(0..ms.len())];
            let d = ds[rng.gen_range(0..ds.len())];
            random_spec(&mut rng, m, d)
        })
        .collect()
}

/// `#C(F_(2^(mn)))` by counting the solutions `(x, y)` of
/// `y^2 + y = x R(x)` plus the point at infinity.
pub fn exhaustive_curve_count(curve: &Curve, n: usize, bound: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let mn = curve.m() * n;
    if mn > bound || mn > 32 {
        return Err(Error::BruteBoundExceeded { mn, bound });
    }
    let ctx = if n == 1 {
        curve.base().clone()
    } else {
        curve.base().extension(n)?
    };
    let size: u64 = 1 << mn;
    // hits[t] = #{y : y^2 + y = t}
    let mut hits = vec![0u8; size as usize];
    for i in 0..size {
        let y = ctx.from_index(i);
        let t = &y.square() + &y;
        hits[t.to_index() as usize] += 1;
    }
    let affine: u64 = (0..size)
        .into_par_iter()
        .map(|i| {
            let x = ctx.from_index(i);
            let f = &x * &curve.r().eval(&x).expect("same base field");
            hits[f.to_index() as usize] as u64
        })
        .sum();
    Ok(BigInt::from(affine + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn suzuki(h: usize) -> Curve {
        Curve::new(&CurveSpec::suzuki(h)).unwrap()
    }

    #[test]
    fn suzuki_period() {
        let p = determine_period(&suzuki(1), &Config::default()).unwrap();
        assert_eq!((p.n_split, p.n_odd, p.a), (6, 3, 1));
        assert_eq!((p.eps_n, p.eps_2n), (0, 1));
        assert_eq!(p.case, Case::IIIb);
        assert_eq!(p.period, 24);
    }

    #[test]
    fn suzuki_modified_sums() {
        let c = suzuki(1);
        let cfg = Config::default();
        assert_eq!(modified_sum(&c, 1, &cfg).unwrap(), ZSqrt2::from_i64(0, 1));
        assert_eq!(modified_sum(&c, 4, &cfg).unwrap(), ZSqrt2::from_i64(-2, 0));
        assert_eq!(modified_sum(&c, 12, &cfg).unwrap(), ZSqrt2::from_i64(4, 0));
    }

    #[test]
    fn suzuki_predictions() {
        let p = determine_period(&suzuki(1), &Config::default()).unwrap();
        assert_eq!(predict_epsilon(&p, 5), -1);
        assert_eq!(predict_epsilon(&p, 2), 0);
        assert_eq!(predict_epsilon(&p, 8), 1);
    }

    #[test]
    fn suzuki_l_function() {
        let rep = assemble(&suzuki(1), &Config::default()).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(rep.mults.m_plus[&24], half);
        assert_eq!(rep.mults.m_minus[&24], -half.clone());
        assert_eq!(rep.mults.m_plus[&8], BigRational::zero());
        assert!(rep.mults.whole.is_empty());
        assert_eq!(rep.mults.split, [(24, (0, 1))].into_iter().collect());
        assert_eq!(
            rep.lstar,
            PolyZSqrt2::new(vec![
                ZSqrt2::from_i64(1, 0),
                ZSqrt2::from_i64(0, 1),
                ZSqrt2::from_i64(1, 0),
                ZSqrt2::from_i64(0, 1),
                ZSqrt2::from_i64(1, 0),
            ])
        );
        assert_eq!(rep.l, IntPoly::from_i64s(&[1, 2, 2, 4, 4]));
        let counts: Vec<BigInt> = (1..=4).map(|n| rep.point_count(n).unwrap()).collect();
        assert_eq!(counts, [5, 5, 17, 9].map(BigInt::from).to_vec());
        let sign = rep.sign.unwrap();
        assert_eq!(sign.s_reference, BigInt::from(2));
        assert!(sign.adopted_matches());
        assert!(!sign.alternative_matches());
    }

    #[test]
    fn exhaustive_counts_suzuki() {
        let c = suzuki(1);
        let counts: Vec<BigInt> = (1..=4)
            .map(|n| exhaustive_curve_count(&c, n, 24).unwrap())
            .collect();
        assert_eq!(counts, [5, 5, 17, 9].map(BigInt::from).to_vec());
    }

    #[test]
    fn x_squared_over_f4() {
        let spec = CurveSpec::with_default_modulus(2, vec![0, 1]);
        let c = Curve::new(&spec).unwrap();
        let rep = assemble(&c, &Config::default()).unwrap();
        assert_eq!(rep.period.n_split, 1);
        assert!(rep.period.period <= 4);
        assert_eq!(rep.l.degree(), Some(2));
        for n in 1..=3 {
            assert_eq!(
                rep.point_count(n).unwrap(),
                exhaustive_curve_count(&c, n as usize, 24).unwrap()
            );
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(
            Curve::new(&CurveSpec::with_default_modulus(1, vec![1])),
            Err(Error::InvalidCurve(_))
        ));
        assert!(matches!(
            Curve::new(&CurveSpec::new(2, 0b101, vec![0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
        assert!(Curve::new(&CurveSpec::with_default_modulus(1, vec![1, 0])).is_err());
    }

    #[test]
    fn ceiling_refusal() {
        let cfg = Config {
            dim_ceiling: 8,
            ..Config::default()
        };
        assert!(matches!(
            determine_period(&suzuki(1), &cfg),
            Err(Error::Infeasible { needed: 12, ceiling: 8, .. })
        ));
    }
}
