//! Closed forms for the Suzuki family `f(x) = x^q0 (x^q + x)` over F_2 with
//! `q0 = 2^h`, `q = 2^(2h+1)`, and point counts of the Suzuki curve
//! `y^q + y = x^q0 (x^q + x)`.
//!
//! Nothing here calls the generic pipeline; only the field tower is shared.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fieldtower::FieldCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuzukiParams {
    pub h: u32,
}

impl SuzukiParams {
    pub fn new(h: u32) -> Result<Self> {
        if h == 0 || h > 20 {
            return Err(Error::InvalidArgument(format!(
                "Suzuki parameter h must lie in 1..=20, got {h}"
            )));
        }
        Ok(SuzukiParams { h })
    }

    pub fn q0(&self) -> u64 {
        1 << self.h
    }

    pub fn q(&self) -> u64 {
        1 << (2 * self.h + 1)
    }

    /// `2h + 1`
    pub fn k(&self) -> u64 {
        2 * self.h as u64 + 1
    }

    /// Coefficients `a_0..a_(h+1)` of `R(x) = x^(2 q0) + x^q0`.
    pub fn r_coeffs(&self) -> Vec<u64> {
        let mut c = vec![0u64; self.h as usize + 2];
        c[self.h as usize] = 1;
        c[self.h as usize + 1] = 1;
        c
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn chi(k: u64) -> i8 {
    match k % 8 {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => panic!("chi of an even number"),
    }
}

/// `epsilon_n(f)`: `chi(n gcd(n, 2h+1))` for odd `n`; for even `n`, 0 when
/// `v2(n) = 1`, `chi((2h+1) gcd(n, 2h+1))` when `v2(n) = 2`, its negative
/// when `v2(n) >= 3`.
pub fn suzuki_epsilon(p: SuzukiParams, n: u64) -> i8 {
    assert!(n >= 1);
    let k = p.k();
    let g = gcd(n, k);
    if n % 2 == 1 {
        return chi(n % 8 * (g % 8));
    }
    match n.trailing_zeros() {
        1 => 0,
        2 => chi(k % 8 * (g % 8)),
        _ => -chi(k % 8 * (g % 8)),
    }
}

/// `c_n(f)`: `gcd(n, 2h+1)` for odd `n`, `gcd(n, 2h+1) + 1` for even `n`.
pub fn suzuki_c(p: SuzukiParams, n: u64) -> u64 {
    assert!(n >= 1);
    gcd(n, p.k()) + n.is_multiple_of(2) as u64
}

/// `S_n(f) = epsilon_n 2^((n + c_n)/2)` over F_(2^n).
pub fn suzuki_sum(p: SuzukiParams, n: u64) -> BigInt {
    let e = (n + suzuki_c(p, n)) / 2;
    BigInt::from(suzuki_epsilon(p, n)) << e as usize
}

/// `#S_h(F_(2^n)) = 2^n + 1 + (2^gcd(n, 2h+1) - 1) S_n(f)`.
pub fn suzuki_curve_count(p: SuzukiParams, n: u64) -> BigInt {
    assert!(n >= 1);
    let g = gcd(n, p.k());
    (BigInt::one() << n as usize)
        + BigInt::one()
        + ((BigInt::one() << g as usize) - BigInt::one()) * suzuki_sum(p, n)
}

fn field(n: u64, bound: u64) -> Result<FieldCtx> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if n > bound || n > 24 {
        return Err(Error::BruteBoundExceeded {
            mn: n as usize,
            bound: bound as usize,
        });
    }
    let base = FieldCtx::new_base(1, None)?;
    if n == 1 {
        Ok(base)
    } else {
        base.extension(n as usize)
    }
}

/// `S_n(f)` by summing `(-1)^Tr(x^q0 (x^q + x))` over F_(2^n).
pub fn suzuki_brute_sum(p: SuzukiParams, n: u64, bound: u64) -> Result<BigInt> {
    let ctx = field(n, bound)?;
    let size = 1u64 << n;
    let odd = (0..size)
        .into_par_iter()
        .filter(|&i| {
            let x = ctx.from_index(i);
            let inner = &x.pow_u64(p.q()) + &x;
            (&x.pow_u64(p.q0()) * &inner).abs_trace()
        })
        .count() as u64;
    Ok(BigInt::from(size) - BigInt::from(2 * odd))
}

/// Affine solutions of `y^q + y = x^q0 (x^q + x)` in F_(2^n)^2, plus one
/// point at infinity. `y^q + y` is evaluated literally.
pub fn suzuki_exhaustive_count(p: SuzukiParams, n: u64, bound: u64) -> Result<BigInt> {
    let ctx = field(n, bound)?;
    let size = 1u64 << n;
    let mut hits = vec![0u32; size as usize];
    for i in 0..size {
        let y = ctx.from_index(i);
        let t = &y.pow_u64(p.q()) + &y;
        hits[t.to_index() as usize] += 1;
    }
    let affine: u64 = (0..size)
        .into_par_iter()
        .map(|i| {
            let x = ctx.from_index(i);
            let f = &x.pow_u64(p.q0()) * &(&x.pow_u64(p.q()) + &x);
            hits[f.to_index() as usize] as u64
        })
        .sum();
    Ok(BigInt::from(affine + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(h: u32) -> SuzukiParams {
        SuzukiParams::new(h).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(suzuki_epsilon(p(1), 1), 1);
        assert_eq!(suzuki_epsilon(p(1), 4), -1);
        assert_eq!(suzuki_epsilon(p(2), 2), 0);
        assert_eq!(suzuki_epsilon(p(1), 5), -1);
        assert_eq!(suzuki_epsilon(p(1), 8), 1);
    }

    #[test]
    fn c_examples() {
        assert_eq!(suzuki_c(p(1), 3), 3);
        assert_eq!(suzuki_c(p(1), 6), 4);
        assert_eq!(suzuki_c(p(2), 1), 1);
        assert_eq!(suzuki_c(p(1), 4), 2);
    }

    #[test]
    fn counts() {
        let got: Vec<BigInt> = (1..=3).map(|n| suzuki_curve_count(p(1), n)).collect();
        assert_eq!(got, [5, 5, 65].map(BigInt::from).to_vec());
        for n in 1..=4 {
            assert_eq!(
                suzuki_exhaustive_count(p(1), n, 24).unwrap(),
                suzuki_curve_count(p(1), n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn sums_match_enumeration() {
        for h in 1..=2 {
            for n in 1..=12 {
                assert_eq!(
                    suzuki_brute_sum(p(h), n, 24).unwrap(),
                    suzuki_sum(p(h), n),
                    "h = {h}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn rejects_h_zero() {
        assert!(SuzukiParams::new(0).is_err());
    }
}
