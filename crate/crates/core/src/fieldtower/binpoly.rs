//! Packed polynomials over F_2 and the base field F_(2^m) = F_2[t]/(M(t)).
//!
//! Bit `i` of a word is the coefficient of `t^i`.

use crate::error::{Error, Result};

/// Largest supported base degree; the modulus must fit in a `u64`.
pub const MAX_BASE_DEGREE: usize = 63;

/// Carry-less product of two packed F_2 polynomials.
#[inline]
pub fn clmul(a: u64, b: u64) -> u128 {
    let (mut small, big) = if a.count_ones() < b.count_ones() {
        (a, b as u128)
    } else {
        (b, a as u128)
    };
    let mut acc = 0u128;
    while small != 0 {
        acc ^= big << small.trailing_zeros();
        small &= small - 1;
    }
    acc
}

#[inline]
fn deg128(x: u128) -> Option<usize> {
    (x != 0).then(|| 127 - x.leading_zeros() as usize)
}

#[inline]
pub fn degree(x: u64) -> Option<usize> {
    (x != 0).then(|| 63 - x.leading_zeros() as usize)
}

/// Remainder of `x` modulo `modulus` (degree `m >= 1`).
#[inline]
pub fn reduce(mut x: u128, modulus: u64, m: usize) -> u64 {
    let wide = modulus as u128;
    while let Some(d) = deg128(x) {
        if d < m {
            break;
        }
        x ^= wide << (d - m);
    }
    x as u64
}

/// Euclid in F_2[t].
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let db = degree(b).unwrap();
        while let Some(da) = degree(a) {
            if da < db {
                break;
            }
            a ^= b << (da - db);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree `m` is irreducible iff `t^(2^m) = t (mod f)`
/// and `gcd(t^(2^(m/r)) - t, f) = 1` for every prime `r | m`.
pub fn is_irreducible(f: u64) -> bool {
    let Some(m) = degree(f) else { return false };
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let t = 2u64;
    // frob[j] = t^(2^j) mod f
    let mut frob = Vec::with_capacity(m + 1);
    let mut cur = t;
    frob.push(cur);
    for _ in 0..m {
        cur = reduce(clmul(cur, cur), f, m);
        frob.push(cur);
    }
    if frob[m] != t {
        return false;
    }
    prime_divisors(m)
        .into_iter()
        .all(|r| gcd(frob[m / r] ^ t, f) == 1)
}

/// Lexicographically smallest irreducible of degree `m`, ordering monic
/// polynomials by their packed integer value. For `m = 1` the prime field is
/// presented as F_2[t]/(t+1).
pub fn default_modulus(m: usize) -> u64 {
    if m == 1 {
        return 0b11;
    }
    let top = 1u64 << m;
    (0..top)
        .map(|low| top | low)
        .find(|&f| is_irreducible(f))
        .expect("irreducible polynomials exist in every degree")
}

pub(crate) fn hex(x: u64) -> String {
    format!("{x:x}")
}

/// The field F_(2^m) as packed residues modulo an irreducible `M(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseField {
    m: usize,
    modulus: u64,
    /// bit j set iff Tr(t^j) = 1
    trace_mask: u64,
}

impl BaseField {
    pub fn new(m: usize, modulus: u64) -> Result<Self> {
        if m == 0 || m > MAX_BASE_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "base degree must lie in 1..={MAX_BASE_DEGREE}, got {m}"
            )));
        }
        let found = degree(modulus).unwrap_or(0);
        if found != m {
            return Err(Error::ModulusDegree {
                poly: hex(modulus),
                expected: m,
                found,
            });
        }
        if !is_irreducible(modulus) {
            return Err(Error::ReducibleModulus {
                poly: hex(modulus),
                field: "F_2".into(),
            });
        }
        let mut field = BaseField {
            m,
            modulus,
            trace_mask: 0,
        };
        // Tr(t^j) is the trace of multiplication by t^j on the basis 1, t, ..., t^(m-1).
        let t = field.generator();
        let mut powers = Vec::with_capacity(2 * m);
        let mut cur = 1u64;
        for _ in 0..2 * m {
            powers.push(cur);
            cur = field.mul(cur, t);
        }
        for j in 0..m {
            let bit = (0..m).fold(0u64, |acc, i| acc ^ ((powers[i + j] >> i) & 1));
            field.trace_mask |= bit << j;
        }
        Ok(field)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// The class of `t`.
    pub fn generator(&self) -> u64 {
        reduce(2, self.modulus, self.m)
    }

    /// Field order minus one.
    pub fn unit_order(&self) -> u64 {
        self.mask()
    }

    #[inline]
    pub fn contains(&self, a: u64) -> bool {
        a & !self.mask() == 0
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            return a & b;
        }
        reduce(clmul(a, b), self.modulus, self.m)
    }

    #[inline]
    pub fn reduce_wide(&self, x: u128) -> u64 {
        if self.m == 1 {
            return (x & 1) as u64;
        }
        reduce(x, self.modulus, self.m)
    }

    #[inline]
    pub fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `a^(2^k)`.
    pub fn frobenius(&self, mut a: u64, k: usize) -> u64 {
        for _ in 0..k % self.m {
            a = self.square(a);
        }
        a
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.unit_order() - 1))
    }

    /// Absolute trace to F_2.
    #[inline]
    pub fn trace(&self, a: u64) -> bool {
        (a & self.trace_mask).count_ones() & 1 == 1
    }
}
