//! Dense univariate polynomials over the base field F_(2^m).

use super::binpoly::BaseField;

/// Coefficients over F_(2^m), constant term first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BasePoly {
    coeffs: Vec<u64>,
}

impl BasePoly {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        BasePoly { coeffs }
    }

    pub fn zero() -> Self {
        BasePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        BasePoly { coeffs: vec![1] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        BasePoly { coeffs: vec![0, 1] }
    }

    pub fn monomial(coeff: u64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = coeff;
        BasePoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &BasePoly) -> BasePoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        BasePoly::new((0..len).map(|i| self.coeff(i) ^ other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &BasePoly, f: &BaseField) -> BasePoly {
        if self.is_zero() || other.is_zero() {
            return BasePoly::zero();
        }
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] ^= super::binpoly::clmul(a, b);
            }
        }
        BasePoly::new(out.into_iter().map(|c| f.reduce_wide(c)).collect())
    }

    /// `p^2`, using that squaring is additive in characteristic two.
    pub fn square(&self, f: &BaseField) -> BasePoly {
        let mut out = vec![0u64; (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[2 * i] = f.square(c);
        }
        BasePoly::new(out)
    }

    pub fn scale(&self, c: u64, f: &BaseField) -> BasePoly {
        BasePoly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &BasePoly, f: &BaseField) -> (BasePoly, BasePoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (BasePoly::zero(), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[k - dd] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                if dc != 0 {
                    rem[k - dd + j] ^= f.mul(q, dc);
                }
            }
        }
        rem.truncate(dd);
        (BasePoly::new(quot), BasePoly::new(rem))
    }

    pub fn rem(&self, divisor: &BasePoly, f: &BaseField) -> BasePoly {
        self.div_rem(divisor, f).1
    }

    pub fn monic(&self, f: &BaseField) -> BasePoly {
        match f.inv(self.leading()) {
            Some(inv) => self.scale(inv, f),
            None => BasePoly::zero(),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &BasePoly, f: &BaseField) -> BasePoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> BasePoly {
        BasePoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| if i % 2 == 1 { c } else { 0 })
                .collect(),
        )
    }

    pub fn eval(&self, x: u64, f: &BaseField) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| f.mul(acc, x) ^ c)
    }

    /// `self^(2^m) mod modulus`, i.e. one application of the base Frobenius.
    pub fn frobenius_mod(&self, modulus: &BasePoly, f: &BaseField) -> BasePoly {
        let mut cur = self.rem(modulus, f);
        for _ in 0..f.m() {
            cur = cur.square(f).rem(modulus, f);
        }
        cur
    }

    /// Ben-Or's test over F_(2^m): `p` of degree `n` is irreducible iff
    /// `gcd(x^(q^i) - x, p) = 1` for `1 <= i <= n/2`, where `q = 2^m`.
    /// Reducible inputs usually fail at a small `i`.
    pub fn is_irreducible(&self, f: &BaseField) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        if self.coeff(0) == 0 {
            return false;
        }
        let x = BasePoly::x();
        let mut cur = x.clone();
        for _ in 0..n / 2 {
            cur = cur.frobenius_mod(self, f);
            if cur.add(&x).gcd(self, f).degree() != Some(0) {
                return false;
            }
        }
        true
    }
}
