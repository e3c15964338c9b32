//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use aszeta::arith::{self, chi, matrix_a, matrix_b, matrix_delta, ramanujan, sigma_sum, totient};
use aszeta::lfun::{
    assemble, exhaustive_curve_count, predict_epsilon, random_corpus, Case, Config, Curve,
    CurveSpec, LFunctionReport,
};
use aszeta::linsolve::{determinant, mat_mul};
use aszeta::quadform::{brute_sum, classify_trace_form, exp_sum};
use aszeta::suzuki::{suzuki_curve_count, suzuki_epsilon, suzuki_exhaustive_count, SuzukiParams};
use aszeta::zsqrt2::{cyclo_rev, cyclo_split, CycloRing};
use aszeta::{IntPoly, ZSqrt2};
use aszeta_cli::spec::parse_spec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 50;
const ORACLE_BOUND: usize = 16;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:.2?}, limit {limit:?}");
    Ok(took)
}

/// `L` from `S_1..S_2g` by Newton's identities: `k c_k = sum_i S_i c_(k-i)`
/// with `S_i` minus the power sums of the inverse roots.
fn l_from_sums(s: &[BigInt], degree: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for k in 1..=degree {
        let acc: BigInt = (1..=k).map(|i| &s[i - 1] * &c[k - i]).sum();
        assert!((&acc % BigInt::from(k)).is_zero());
        c.push(acc / BigInt::from(k));
    }
    c
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let spec = parse_spec("m=1\nfield_modulus=3\nR=0,1,1\n").map_err(|e| e.to_string())?;
    let curve = Curve::new(&spec).map_err(|e| e.to_string())?;
    let r = assemble(&curve, &Config::default()).map_err(|e| e.to_string())?;
    ensure!(r.period.n_split == 6, "N = {}", r.period.n_split);
    ensure!(r.period.period == 24, "D = {}", r.period.period);
    ensure!(r.period.case == Case::IIIb, "case {}", r.period.case);
    ensure!(r.mults.whole.is_empty(), "unexpected factors {:?}", r.mults.whole);
    let want_split: BTreeMap<u64, (u64, u64)> = [(24, (0, 1))].into();
    ensure!(r.mults.split == want_split, "split factors {:?}", r.mults.split);
    let want_l = IntPoly::from_i64s(&[1, 2, 2, 4, 4]);
    ensure!(r.l == want_l, "L = {:?}", r.l);
    let mut sums = Vec::new();
    for n in 1..=4u64 {
        let count = r.point_count(n).map_err(|e| e.to_string())?;
        let enumerated = exhaustive_curve_count(&curve, n as usize, 16).map_err(|e| e.to_string())?;
        ensure!(count == enumerated, "n = {n}: pipeline {count}, enumeration {enumerated}");
        sums.push(enumerated - 1 - (BigInt::one() << n as usize));
    }
    ensure!(
        [5, 5, 17, 9].iter().zip(1..).all(|(&c, n)| r.point_count(n).unwrap() == BigInt::from(c)),
        "point counts differ from 5, 5, 17, 9"
    );
    let newton = l_from_sums(&sums, 4);
    ensure!(newton == want_l.coeffs(), "L from enumerated counts: {newton:?}");
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!("N=6 D=24 iiib m24-=1 L=1+2T+2T^2+4T^3+4T^4 counts 5,5,17,9 ({took:.2?})"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for h in 1..=2u32 {
        let p = SuzukiParams::new(h).map_err(|e| e.to_string())?;
        let curve = Curve::new(&CurveSpec::suzuki(h as usize)).map_err(|e| e.to_string())?;
        let r = assemble(&curve, &Config::default()).map_err(|e| e.to_string())?;
        for n in 1..=100u64 {
            let generic = predict_epsilon(&r.period, n);
            let closed = suzuki_epsilon(p, n);
            ensure!(generic == closed, "h = {h}, n = {n}: pipeline {generic}, closed form {closed}");
        }
    }
    let p = SuzukiParams::new(1).unwrap();
    for n in 1..=4u64 {
        let closed = suzuki_curve_count(p, n);
        let enumerated = suzuki_exhaustive_count(p, n, 16).map_err(|e| e.to_string())?;
        ensure!(closed == enumerated, "n = {n}: closed form {closed}, enumeration {enumerated}");
    }
    let took = within(Duration::from_secs(10), start)?;
    Ok(format!("epsilon for h=1,2 and n<=100; Suzuki counts n<=4 ({took:.2?})"))
}

fn corpus() -> Result<Vec<(Curve, LFunctionReport)>, String> {
    random_corpus(CORPUS_SEED, CORPUS_SIZE, &[1, 2], &[1, 2, 3])
        .iter()
        .map(|spec| {
            let curve = Curve::new(spec).map_err(|e| e.to_string())?;
            let r = assemble(&curve, &Config::default()).map_err(|e| format!("{spec:?}: {e}"))?;
            Ok((curve, r))
        })
        .collect()
}

fn criterion_3(corpus: &[(Curve, LFunctionReport)], build: Duration) -> Outcome {
    let start = Instant::now() - build;
    let mut comparisons = 0;
    for (curve, r) in corpus {
        let m = curve.m();
        for n in 1..=ORACLE_BOUND / m {
            let closed = exp_sum(curve.r(), n).map_err(|e| e.to_string())?;
            let brute = brute_sum(curve.r(), n, ORACLE_BOUND).map_err(|e| e.to_string())?;
            ensure!(
                closed.b.is_zero() && closed.a == brute,
                "{:?}, n = {n}: exp_sum {closed}, brute force {brute}",
                curve.spec()
            );
            let count = r.point_count(n as u64).map_err(|e| e.to_string())?;
            let enumerated = exhaustive_curve_count(curve, n, ORACLE_BOUND).map_err(|e| e.to_string())?;
            ensure!(
                count == enumerated,
                "{:?}, n = {n}: L gives {count}, enumeration {enumerated}",
                curve.spec()
            );
            comparisons += 2;
        }
    }
    let took = within(Duration::from_secs(300), start)?;
    Ok(format!("{} specs, {comparisons} oracle comparisons with mn<=16 ({took:.2?})", corpus.len()))
}

fn criterion_4(corpus: &[(Curve, LFunctionReport)]) -> Outcome {
    for (curve, r) in corpus {
        let spec = curve.spec();
        let deg = 1usize << curve.d();
        ensure!(r.l.degree() == Some(deg), "{spec:?}: deg L = {:?}", r.l.degree());
        ensure!(r.l.coeff(0).is_one(), "{spec:?}: L(0) = {}", r.l.coeff(0));
        ensure!(r.lstar.degree() == Some(deg), "{spec:?}: deg L* = {:?}", r.lstar.degree());
        for (&l, x) in &r.mults.m_plus {
            let minus = r.mults.m_minus.get(&l).cloned().unwrap_or_else(Zero::zero);
            let parts = if curve.m() % 2 == 1 && l % 8 == 0 {
                vec![x + &minus, x - &minus]
            } else {
                vec![x.clone()]
            };
            for p in parts {
                ensure!(
                    p.is_integer() && p >= Zero::zero(),
                    "{spec:?}: multiplicity {p} at l = {l}"
                );
            }
        }
        let mut total = 0u64;
        for (&l, &k) in &r.mults.whole {
            total += k * totient(l).unwrap();
        }
        for (&l, &(p, q)) in &r.mults.split {
            total += (p + q) * totient(l).unwrap() / 2;
        }
        ensure!(total == deg as u64, "{spec:?}: sum of m deg = {total}");
        let big_n = r.period.n_split;
        let d = r.period.period;
        ensure!([big_n, 2 * big_n, 4 * big_n].contains(&d), "{spec:?}: D = {d}, N = {big_n}");
        for l in r.mults.support() {
            ensure!(d % l == 0, "{spec:?}: l = {l} does not divide D = {d}");
            let v = match r.period.case {
                Case::II => Some(r.period.a + 1),
                Case::IIIb => Some(r.period.a + 2),
                _ => None,
            };
            if let Some(v) = v {
                ensure!(l.trailing_zeros() == v, "{spec:?}: v2({l}) != {v} in case {}", r.period.case);
            }
        }
    }
    let cases: std::collections::BTreeSet<&str> = corpus.iter().map(|(_, r)| r.period.case.tag()).collect();
    Ok(format!("{} specs, cases seen {:?}", corpus.len(), cases))
}

/// `(sum zeta^(n i), sum chi(i) zeta^(n i))` over units mod `l`.
fn root_sums(ring: &CycloRing, n: u64) -> (IntPoly, IntPoly) {
    let l = ring.order();
    let mut plain = IntPoly::zero();
    let mut twisted = IntPoly::zero();
    for i in (1..=l).filter(|&i| num_gcd(i, l) == 1) {
        let z = ring.zeta_pow(((n % l) * i % l) as i64);
        plain = plain + z.clone();
        if l.is_multiple_of(8) {
            twisted = if chi(i).unwrap() == 1 { twisted + z } else { twisted - z };
        }
    }
    (ring.reduce(&plain), ring.reduce(&twisted))
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    for n in 1..=60u64 {
        let a = matrix_a(n).map_err(|e| e.to_string())?;
        let prod = a.index.iter().fold(BigInt::one(), |acc, &d| acc * d);
        ensure!(determinant(&a.entries) == prod, "det A({n})");
    }
    for l in 1..=120u64 {
        let ring = CycloRing::new(l).unwrap();
        for n in 1..=120u64 {
            let (plain, twisted) = root_sums(&ring, n);
            ensure!(
                ring.as_integer(&plain) == Some(BigInt::from(ramanujan(l, n).unwrap())),
                "c_{l}({n})"
            );
            if l % 8 == 0 {
                ensure!(ring.as_zsqrt2(&twisted) == Some(sigma_sum(l, n).unwrap()), "sigma_{l}({n})");
            }
        }
    }
    for n in 1..=48u64 {
        let a = matrix_a(n).unwrap();
        let v = arith::v2(n).unwrap();
        let odd = arith::odd_part(n);
        let base = matrix_a(odd).unwrap().entries;
        let scaled = |k: i64| -> Vec<Vec<BigInt>> {
            base.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
        };
        for i in 0..=v {
            for j in 0..=v {
                let want = if j == 0 {
                    scaled(1)
                } else if i + 2 <= j {
                    scaled(0)
                } else if i + 1 == j {
                    scaled(-(1 << i))
                } else {
                    scaled(1 << (j - 1))
                };
                ensure!(a.block(i, j) == want, "A({n}) block ({i}, {j})");
            }
        }
        if n % 8 == 0 {
            let b = matrix_b(n).unwrap();
            let delta = matrix_delta(odd).unwrap().entries;
            let dad = mat_mul(&mat_mul(&delta, &base), &delta);
            for i in 0..=v {
                for j in 0..=v {
                    let want: Vec<Vec<ZSqrt2>> = dad
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|x| {
                                    if j == i + 3 {
                                        ZSqrt2::new(BigInt::zero(), x << (i + 1) as usize)
                                    } else {
                                        ZSqrt2::zero()
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    ensure!(b.block(i, j) == want, "B({n}) block ({i}, {j})");
                }
            }
        }
    }
    for l in (8..=120u64).step_by(8) {
        let (plus, minus) = cyclo_split(l).map_err(|e| e.to_string())?;
        ensure!((&plus * &minus).to_int_poly() == Some(cyclo_rev(l).unwrap()), "Phi_{l}+ Phi_{l}-");
        ensure!(plus.conj() == minus && minus.conj() == plus, "conjugation swap at l = {l}");
    }
    let took = within(Duration::from_secs(30), start)?;
    Ok(format!("det A, c_l and sigma_l vs root sums, block forms, Phi_l splits ({took:.2?})"))
}

fn criterion_6(corpus: &[(Curve, LFunctionReport)]) -> Outcome {
    let ceiling = Config::default().dim_ceiling as u64;
    let mut checked = 0;
    for (curve, r) in corpus {
        let m = curve.m() as u64;
        let top = (3 * r.period.period).min(ceiling / m);
        for n in 1..=top {
            let cls = classify_trace_form(curve.r(), n as usize).map_err(|e| e.to_string())?;
            let predicted = predict_epsilon(&r.period, n);
            ensure!(
                predicted == cls.epsilon,
                "{:?}, n = {n}: predicted {predicted}, classified {}",
                curve.spec(),
                cls.epsilon
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} (spec, n) pairs with n <= min(3D, ceiling/m)"))
}

fn criterion_7() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("suzuki1.txt");
    std::fs::write(&path, "m=1\nfield_modulus=3\nR=0,1,1\n").map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_aszeta"))
        .arg("verify")
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.code() == Some(0), "verify exited with {:?}", out.status.code());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let sign = &json["sign_resolution"];
    ensure!(sign["reference"] == "brute_force", "reference {}", sign["reference"]);
    ensure!(sign["S_reference"] == "2", "brute-force S_1 = {}", sign["S_reference"]);
    ensure!(sign["S_adopted"] == "2", "adopted convention gives S_1 = {}", sign["S_adopted"]);
    ensure!(sign["adopted_matches"] == true, "adopted convention does not match");
    ensure!(
        sign["alternative_matches"] == false && sign["S_alternative"] != "2",
        "alternative sign also matches: {}",
        sign["S_alternative"]
    );
    ensure!(
        sign["convention"].as_str().is_some_and(|s| s.contains("-S_n*")),
        "convention not documented"
    );
    ensure!(json["verification"]["passed"] == true, "verification block failed");
    Ok(format!(
        "S_1: adopted {}, alternative {}, brute force {}",
        sign["S_adopted"], sign["S_alternative"], sign["S_reference"]
    ))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let mut out = std::io::stdout().lock();
    match &result {
        Ok(detail) => writeln!(out, "criterion {name}: PASS  {detail}").unwrap(),
        Err(detail) => writeln!(out, "criterion {name}: FAIL  {detail}").unwrap(),
    }
    result.is_ok()
}

fn main() {
    let mut ok = true;
    ok &= run("1 (Suzuki h=1 end-to-end)", criterion_1);
    ok &= run("2 (Suzuki closed forms)", criterion_2);
    let build_start = Instant::now();
    let corpus = corpus();
    let build = build_start.elapsed();
    let with_corpus = |f: fn(&[(Curve, LFunctionReport)]) -> Outcome| {
        let c = corpus.clone();
        move || f(&c?)
    };
    ok &= run("3 (oracle equivalence corpus)", || criterion_3(&corpus.clone()?, build));
    ok &= run("4 (structural invariants)", with_corpus(criterion_4));
    ok &= run("5 (arithmetic identities)", criterion_5);
    ok &= run("6 (invariant propagation)", with_corpus(criterion_6));
    ok &= run("7 (sign-resolution record)", criterion_7);
    if !ok {
        std::process::exit(1);
    }
}
