//! Arithmetic functions on small integers and the divisor-indexed matrices
//! built from them.
//!
//! Every divisor list is ascending, and every divisor-indexed object carries
//! its index list.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invariant, Error, Result};
use crate::linsolve;
use crate::ZSqrt2;

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(format!("{what} is defined for n >= 1")))
    } else {
        Ok(())
    }
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn moebius(n: u64) -> Result<i64> {
    require_positive(n, "moebius")?;
    let mut mu = 1;
    for (_, e) in factorize(n) {
        if e > 1 {
            return Ok(0);
        }
        mu = -mu;
    }
    Ok(mu)
}

pub fn totient(n: u64) -> Result<u64> {
    require_positive(n, "totient")?;
    Ok(factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// Ascending list of the divisors of `n`.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    require_positive(n, "divisors")?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Dyadic valuation.
pub fn v2(n: u64) -> Result<u32> {
    require_positive(n, "v2")?;
    Ok(n.trailing_zeros())
}

/// Odd part `n / 2^v2(n)`.
pub fn odd_part(n: u64) -> u64 {
    n >> n.trailing_zeros()
}

/// The character modulo 8 with kernel {+1, -1}: `chi(k) = +1` for
/// `k = ±1 (mod 8)` and `-1` for `k = ±3 (mod 8)`. Defined on odd `k` only.
pub fn chi(k: u64) -> Result<i64> {
    if k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "chi is evaluated on odd integers, got {k}"
        )));
    }
    Ok(match k % 8 {
        1 | 7 => 1,
        _ => -1,
    })
}

/// Ramanujan sum `c_l(n)` through von Sterneck's formula
/// `mu(l/g) phi(l) / phi(l/g)` with `g = gcd(l, n)`.
pub fn ramanujan(l: u64, n: u64) -> Result<i64> {
    require_positive(l, "ramanujan")?;
    require_positive(n, "ramanujan")?;
    let g = l.gcd(&n);
    let q = l / g;
    let mu = moebius(q)?;
    if mu == 0 {
        return Ok(0);
    }
    Ok(mu * (totient(l)? / totient(q)?) as i64)
}

/// The twisted sum `sigma_l(n) = sum_{i in (Z/l)^*} chi(i) zeta_l^(n i)`,
/// for `8 | l`. With `l = 2^k l'` it equals
/// `chi(l' n') 2^(k-2) sqrt2 c_l'(n')` when `n = 2^(k-3) n'`, `n'` odd, and
/// vanishes otherwise.
pub fn sigma_sum(l: u64, n: u64) -> Result<ZSqrt2> {
    require_positive(l, "sigma_sum")?;
    require_positive(n, "sigma_sum")?;
    let k = l.trailing_zeros();
    if k < 3 {
        return Err(Error::InvalidArgument(format!(
            "sigma_l(n) needs 8 | l, got l = {l}"
        )));
    }
    if n.trailing_zeros() != k - 3 {
        return Ok(ZSqrt2::zero());
    }
    let l_odd = odd_part(l);
    let n_odd = odd_part(n);
    let coeff = chi(l_odd * n_odd % 8)? * ramanujan(l_odd, n_odd)?;
    Ok(ZSqrt2::new(
        BigInt::zero(),
        BigInt::from(coeff) << (k - 2) as usize,
    ))
}

/// A square matrix whose rows and columns are indexed by the divisors of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorMatrix<T> {
    pub n: u64,
    /// ascending divisors; the row index list and the column index list
    pub index: Vec<u64>,
    pub entries: Vec<Vec<T>>,
}

impl<T: Clone> DivisorMatrix<T> {
    pub fn from_fn(n: u64, mut entry: impl FnMut(u64, u64) -> Result<T>) -> Result<Self> {
        let index = divisors(n)?;
        let entries = index
            .iter()
            .map(|&row| index.iter().map(|&col| entry(row, col)).collect())
            .collect::<Result<Vec<Vec<T>>>>()?;
        Ok(DivisorMatrix { n, index, entries })
    }

    pub fn size(&self) -> usize {
        self.index.len()
    }

    pub fn get(&self, row: u64, col: u64) -> Option<&T> {
        let i = self.index.binary_search(&row).ok()?;
        let j = self.index.binary_search(&col).ok()?;
        Some(&self.entries[i][j])
    }

    /// Sub-block with rows of dyadic valuation `i` and columns of valuation `j`.
    pub fn block(&self, i: u32, j: u32) -> Vec<Vec<T>> {
        let rows: Vec<usize> = (0..self.size())
            .filter(|&r| self.index[r].trailing_zeros() == i)
            .collect();
        let cols: Vec<usize> = (0..self.size())
            .filter(|&c| self.index[c].trailing_zeros() == j)
            .collect();
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.entries[r][c].clone()).collect())
            .collect()
    }
}

/// `A(n) = (c_l(d))`, rows `d | n`, columns `l | n`. Its determinant is
/// checked against the product of the divisors of `n`.
pub fn matrix_a(n: u64) -> Result<DivisorMatrix<BigInt>> {
    let a = DivisorMatrix::from_fn(n, |d, l| Ok(BigInt::from(ramanujan(l, d)?)))?;
    let det = linsolve::determinant(&a.entries);
    let expected = a
        .index
        .iter()
        .fold(BigInt::one(), |acc, &d| acc * BigInt::from(d));
    invariant!(det == expected, "det A({n}) = {det}, expected {expected}");
    Ok(a)
}

/// `Delta(n')`: diagonal matrix of `chi(l)`, `l | n'`, for odd `n'`.
pub fn matrix_delta(n_odd: u64) -> Result<DivisorMatrix<BigInt>> {
    if n_odd.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "Delta is indexed by an odd integer, got {n_odd}"
        )));
    }
    DivisorMatrix::from_fn(n_odd, |d, l| {
        Ok(if d == l {
            BigInt::from(chi(l)?)
        } else {
            BigInt::zero()
        })
    })
}

/// `B(n) = (sigma_l(d))`, rows `d | n`, columns `l | n`, for `8 | n`; the
/// entries with `8 ∤ l` are zero. Used for validation only.
pub fn matrix_b(n: u64) -> Result<DivisorMatrix<ZSqrt2>> {
    DivisorMatrix::from_fn(n, |d, l| {
        if l % 8 == 0 {
            sigma_sum(l, d)
        } else {
            Ok(ZSqrt2::zero())
        }
    })
}
