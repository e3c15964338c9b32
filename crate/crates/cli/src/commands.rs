use aszeta::lfun::{
    self, assemble, determine_period, exhaustive_curve_count, predict_epsilon, Config,
    Curve, CurveSpec, LFunctionReport,
};
use aszeta::quadform::{brute_sum, classify_trace_form};
use aszeta::suzuki::{
    suzuki_c, suzuki_curve_count, suzuki_epsilon, suzuki_exhaustive_count, suzuki_sum,
    SuzukiParams,
};
use aszeta::Error;
use num_bigint::BigInt;

use crate::report::*;
use crate::spec::SpecFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

/// Default `mn` bound for the brute-force oracles of `verify` and `suzuki`.
pub const DEFAULT_CLI_BRUTE_BOUND: usize = 16;

/// Largest `mn` the exhaustive curve count will enumerate.
const EXHAUSTIVE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible { .. } | Error::BruteBoundExceeded { .. } => EXIT_INFEASIBLE,
            Error::Invariant(_) => EXIT_MISMATCH,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<crate::spec::SpecError> for CliError {
    fn from(e: crate::spec::SpecError) -> Self {
        CliError::input(e.0)
    }
}

/// A finished command: JSON for stdout, notes for stderr and the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: String,
    pub warnings: Vec<String>,
    pub code: i32,
}

fn render<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn ok<T: serde::Serialize>(value: &T) -> Outcome {
    Outcome {
        json: render(value),
        warnings: Vec::new(),
        code: EXIT_OK,
    }
}

pub type CmdResult = Result<Outcome, CliError>;

/// Inclusive range of extension degrees from `--n` (`k` or `a..b`) and
/// `--n-max` (`1..=k`).
pub fn n_range(n: Option<&str>, n_max: Option<u64>, default_max: u64) -> Result<(u64, u64), CliError> {
    let (lo, hi) = match (n, n_max) {
        (Some(_), Some(_)) => return Err(CliError::input("give either --n or --n-max, not both")),
        (Some(s), None) => match s.split_once("..") {
            Some((a, b)) => (parse_n(a)?, parse_n(b.trim_start_matches('='))?),
            None => {
                let k = parse_n(s)?;
                (k, k)
            }
        },
        (None, Some(k)) => (1, k),
        (None, None) => (1, default_max),
    };
    if lo == 0 || hi == 0 {
        return Err(CliError::input("extension degree n must be >= 1"));
    }
    if lo > hi {
        return Err(CliError::input(format!("empty range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

fn parse_n(s: &str) -> Result<u64, CliError> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| CliError::input(format!("invalid extension degree {s:?}")))
}

pub fn load_curve(text: &str) -> Result<Curve, CliError> {
    let spec = crate::spec::parse_spec(text)?;
    Ok(Curve::new(&spec)?)
}

pub fn analyze(curve: &Curve, cfg: &Config) -> CmdResult {
    let period = determine_period(curve, cfg)?;
    Ok(ok(&AnalyzeReport {
        curve: curve.into(),
        period: (&period).into(),
    }))
}

pub fn lfunction(curve: &Curve, cfg: &Config, n_max: u64) -> CmdResult {
    let r = assemble(curve, cfg)?;
    let counts = r.point_counts(1..=n_max)?;
    Ok(ok(&LFunctionJson::new(curve, &r, &counts)))
}

pub fn count(curve: &Curve, cfg: &Config, lo: u64, hi: u64) -> CmdResult {
    let r = assemble(curve, cfg)?;
    let counts = r.point_counts(lo..=hi)?;
    Ok(ok(&CountReport {
        curve: curve.into(),
        point_counts: counts.iter().map(|(&n, c)| (n, c.to_string())).collect(),
    }))
}

fn check(kind: &'static str, n: u64, expected: String, actual: Result<String, Error>) -> Check {
    match actual {
        Ok(a) => Check {
            kind,
            n,
            pass: a == expected,
            expected,
            actual: a,
        },
        Err(e) => Check {
            kind,
            n,
            expected,
            actual: format!("error: {e}"),
            pass: false,
        },
    }
}

/// Runs every oracle comparison within the bounds. With `corrupt` the
/// multiplicities are perturbed before comparison.
pub fn verify(curve: &Curve, cfg: &Config, n_max: Option<u64>, corrupt: bool) -> CmdResult {
    let mut report: LFunctionReport = assemble(curve, cfg)?;
    if corrupt {
        report.mults = report.mults.corrupted();
    }
    let m = curve.m() as u64;
    let mut warnings = Vec::new();
    let mut checks = Vec::new();

    let brute_top = cfg.brute_bound as u64 / m;
    if brute_top == 0 {
        warnings.push(format!(
            "brute bound {} admits no extension degree for m = {m}; no brute-force comparisons were run",
            cfg.brute_bound
        ));
    }
    for n in 1..=brute_top {
        let want = brute_sum(curve.r(), n as usize, cfg.brute_bound)?;
        checks.push(check(
            "exp_sum_vs_brute_force",
            n,
            want.to_string(),
            report.exp_sum(n).map(|s| s.to_string()),
        ));
    }
    let count_top = cfg.brute_bound.min(EXHAUSTIVE_CAP) as u64 / m;
    for n in 1..=count_top {
        let want = exhaustive_curve_count(curve, n as usize, cfg.brute_bound)?;
        checks.push(check(
            "point_count_vs_enumeration",
            n,
            want.to_string(),
            report.point_count(n).map(|c| c.to_string()),
        ));
    }

    let mut top = (3 * report.period.period).min(cfg.dim_ceiling as u64 / m);
    if let Some(k) = n_max {
        top = top.min(k);
    }
    for n in 1..=top {
        let cls = classify_trace_form(curve.r(), n as usize)?;
        checks.push(check(
            "epsilon_prediction_vs_classification",
            n,
            cls.epsilon.to_string(),
            Ok(predict_epsilon(&report.period, n).to_string()),
        ));
        let want = lfun::modified_from(cls);
        checks.push(check(
            "modified_sum_vs_classification",
            n,
            want.to_string(),
            Ok(report.modified_sum(n).to_string()),
        ));
    }
    if let Some(sign) = &report.sign {
        checks.push(check(
            "sign_convention_vs_reference",
            sign.n,
            sign.s_reference.to_string(),
            Ok(sign.s_adopted.to_string()),
        ));
    }

    let mismatches = checks.iter().filter(|c| !c.pass).count();
    let out = VerifyReport {
        curve: curve.into(),
        period: (&report.period).into(),
        l: report.l.coeffs().iter().map(|c| c.to_string()).collect(),
        verification: VerificationBlock {
            brute_bound: cfg.brute_bound,
            dim_ceiling: cfg.dim_ceiling,
            prediction_range: top,
            comparisons_run: checks.len(),
            mismatches,
            passed: mismatches == 0,
            warnings: warnings.clone(),
            checks,
        },
        sign_resolution: report.sign.as_ref().map(SignJson::from),
    };
    Ok(Outcome {
        json: render(&out),
        warnings,
        code: if mismatches == 0 { EXIT_OK } else { EXIT_MISMATCH },
    })
}

/// The Suzuki closed forms for `n` in `lo..=hi`, with enumeration up to
/// the brute bound and, if asked, the generic pipeline alongside.
pub fn suzuki(h: u32, lo: u64, hi: u64, cross_check: bool, cfg: &Config) -> CmdResult {
    let p = SuzukiParams::new(h).map_err(CliError::from)?;
    let generic = if cross_check {
        let curve = Curve::new(&CurveSpec::suzuki(h as usize))?;
        Some(assemble(&curve, cfg)?)
    } else {
        None
    };
    let bound = cfg.brute_bound.min(EXHAUSTIVE_CAP);
    let mut rows = Vec::new();
    for n in lo..=hi {
        let s_n = suzuki_sum(p, n);
        let count = suzuki_curve_count(p, n);
        let enumerated = if n as usize <= bound {
            Some(suzuki_exhaustive_count(p, n, bound as u64)?)
        } else {
            None
        };
        let eps = suzuki_epsilon(p, n);
        let (generic_epsilon, generic_s): (Option<i8>, Option<BigInt>) = match &generic {
            Some(r) => (Some(predict_epsilon(&r.period, n)), Some(r.exp_sum(n)?)),
            None => (None, None),
        };
        let pass = enumerated.as_ref().is_none_or(|e| *e == count)
            && generic_epsilon.is_none_or(|e| e == eps)
            && generic_s.as_ref().is_none_or(|s| *s == s_n);
        rows.push(SuzukiRow {
            n,
            epsilon: eps,
            c: suzuki_c(p, n),
            s_n: s_n.to_string(),
            count: count.to_string(),
            enumerated: enumerated.map(|e| e.to_string()),
            generic_epsilon,
            generic_s_n: generic_s.map(|s| s.to_string()),
            pass,
        });
    }
    let mismatches = rows.iter().filter(|r| !r.pass).count();
    let out = SuzukiReport {
        h,
        q0: p.q0(),
        q: p.q(),
        cross_checked: cross_check,
        enumeration_bound: bound,
        mismatches,
        passed: mismatches == 0,
        rows,
    };
    Ok(Outcome {
        json: render(&out),
        warnings: Vec::new(),
        code: if mismatches == 0 { EXIT_OK } else { EXIT_MISMATCH },
    })
}

/// `count` random valid specs with `m` and `d` drawn from the lists.
pub fn seed_corpus(seed: u64, count: usize, ms: &[usize], ds: &[usize]) -> CmdResult {
    if ms.is_empty() || ds.is_empty() {
        return Err(CliError::input("--m and --d need at least one value"));
    }
    if let Some(&m) = ms.iter().find(|&&m| m == 0 || m > 63) {
        return Err(CliError::input(format!("m must lie in 1..=63, got {m}")));
    }
    if ds.contains(&0) {
        return Err(CliError::input("d must be >= 1"));
    }
    let specs: Vec<SpecFile> = lfun::random_corpus(seed, count, ms, ds)
        .iter()
        .map(SpecFile::from_curve_spec)
        .collect();
    Ok(ok(&specs))
}
