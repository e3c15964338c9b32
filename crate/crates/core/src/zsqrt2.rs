//! Exact arithmetic in Z[√2] and Q(√2), dense polynomials over any exact
//! ring, and the splitting of cyclotomic polynomials over Q(√2).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invariant, Error, Result};

/// An exact commutative ring with unit.
pub trait Ring: Clone + PartialEq + fmt::Debug + Zero + One + Sub<Output = Self> + Neg<Output = Self> {}

impl<T> Ring for T where T: Clone + PartialEq + fmt::Debug + Zero + One + Sub<Output = Self> + Neg<Output = Self> {}

/// `a + b√2` with `a, b` in a ring `T`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sqrt2Ext<T> {
    pub a: T,
    pub b: T,
}

impl<T: Ring> Sqrt2Ext<T> {
    pub fn new(a: T, b: T) -> Self {
        Sqrt2Ext { a, b }
    }

    pub fn from_base(a: T) -> Self {
        Sqrt2Ext { a, b: T::zero() }
    }

    pub fn sqrt2() -> Self {
        Sqrt2Ext {
            a: T::zero(),
            b: T::one(),
        }
    }

    /// `(√2)^k`.
    pub fn sqrt2_pow(k: u64) -> Self {
        let two = T::one() + T::one();
        let mut p = T::one();
        for _ in 0..k / 2 {
            p = p * two.clone();
        }
        if k.is_multiple_of(2) {
            Sqrt2Ext::from_base(p)
        } else {
            Sqrt2Ext::new(T::zero(), p)
        }
    }

    pub fn conj(&self) -> Self {
        Sqrt2Ext {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// `a^2 - 2 b^2`.
    pub fn norm(&self) -> T {
        let bb = self.b.clone() * self.b.clone();
        self.a.clone() * self.a.clone() - (bb.clone() + bb)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, c: &T) -> Self {
        Sqrt2Ext {
            a: self.a.clone() * c.clone(),
            b: self.b.clone() * c.clone(),
        }
    }
}

impl<T: Ring + Div<Output = T>> Sqrt2Ext<T> {
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Sqrt2Ext {
            a: c.a / n.clone(),
            b: c.b / n,
        })
    }
}

impl<T: Ring> Add for Sqrt2Ext<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Sqrt2Ext {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl<T: Ring> Sub for Sqrt2Ext<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Sqrt2Ext {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl<T: Ring> Mul for Sqrt2Ext<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let bd = self.b.clone() * rhs.b.clone();
        Sqrt2Ext {
            a: self.a.clone() * rhs.a.clone() + bd.clone() + bd,
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

impl<T: Ring + Div<Output = T>> Div for Sqrt2Ext<T> {
    type Output = Self;
    /// Panics on division by zero.
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in Q(sqrt2)")
    }
}

impl<T: Ring> Neg for Sqrt2Ext<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Sqrt2Ext {
            a: -self.a,
            b: -self.b,
        }
    }
}

macro_rules! ref_ops {
    ($ty:ident, $($tr:ident $method:ident),*) => {$(
        impl<'a, T: Ring> $tr<&'a $ty<T>> for &'a $ty<T> {
            type Output = $ty<T>;
            fn $method(self, rhs: &'a $ty<T>) -> $ty<T> {
                $tr::$method(self.clone(), rhs.clone())
            }
        }
    )*};
}

ref_ops!(Sqrt2Ext, Add add, Sub sub, Mul mul);

impl<T: Ring> Zero for Sqrt2Ext<T> {
    fn zero() -> Self {
        Sqrt2Ext::from_base(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<T: Ring> One for Sqrt2Ext<T> {
    fn one() -> Self {
        Sqrt2Ext::from_base(T::one())
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Sqrt2Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt2", self.b),
            (false, false) => write!(f, "{} + {}*sqrt2", self.a, self.b),
        }
    }
}

impl Sqrt2Ext<BigInt> {
    pub fn from_i64(a: i64, b: i64) -> Self {
        Sqrt2Ext::new(BigInt::from(a), BigInt::from(b))
    }

    /// Exact division by `√2`, if the quotient stays in Z[√2].
    pub fn div_sqrt2(&self) -> Option<Self> {
        // (a + b√2)/√2 = b + (a/2)√2
        let two = BigInt::from(2);
        if (&self.a % &two).is_zero() {
            Some(Sqrt2Ext::new(self.b.clone(), &self.a / &two))
        } else {
            None
        }
    }

    /// Exact division by an integer, if the quotient stays in Z[√2].
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        ((&self.a % d).is_zero() && (&self.b % d).is_zero())
            .then(|| Sqrt2Ext::new(&self.a / d, &self.b / d))
    }
}

/// Dense polynomial, constant term first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: T, deg: usize) -> Self {
        let mut coeffs = vec![T::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Division by a polynomial with unit leading coefficient one.
    pub fn div_rem_monic(&self, divisor: &Poly<T>) -> (Poly<T>, Poly<T>) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        assert!(divisor.coeffs[dd].is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = rem[k].clone();
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].clone() - q.clone() * c.clone();
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }
}

impl<T: Ring> Add for Poly<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Sub for Poly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Mul for Poly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Ring> Neg for Poly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

ref_ops!(Poly, Add add, Sub sub, Mul mul);

impl<T: Ring> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Poly<T> {
    fn one() -> Self {
        Poly::constant(T::one())
    }
}

impl Poly<Sqrt2Ext<BigInt>> {
    /// Coefficient-wise √2-conjugate.
    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }

    /// The integer polynomial, if every coefficient is rational.
    pub fn to_int_poly(&self) -> Option<Poly<BigInt>> {
        self.coeffs
            .iter()
            .all(|c| c.b.is_zero())
            .then(|| self.map(|c| c.a.clone()))
    }
}

impl Poly<BigInt> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_zsqrt2(&self) -> Poly<Sqrt2Ext<BigInt>> {
        self.map(|c| Sqrt2Ext::from_base(c.clone()))
    }
}

/// The standard (monic) cyclotomic polynomial `Φ_l`, by dividing `y^l - 1`
/// by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic(l: u64) -> Result<Poly<BigInt>> {
    if l == 0 {
        return Err(Error::InvalidArgument("cyclotomic index must be >= 1".into()));
    }
    let mut num = Poly::monomial(BigInt::one(), l as usize) - Poly::one();
    for d in crate::arith::divisors(l)? {
        if d == l {
            break;
        }
        let (q, r) = num.div_rem_monic(&cyclotomic(d)?);
        invariant!(r.is_zero(), "Phi_{d} does not divide y^{l} - 1");
        num = q;
    }
    Ok(num)
}

/// `∏ (1 - ζ T)` over the primitive `l`-th roots of unity: `1 - T` for
/// `l = 1`, `1 + T` for `l = 2`, and `Φ_l(T)` (self-reciprocal) otherwise.
pub fn cyclo_rev(l: u64) -> Result<Poly<BigInt>> {
    match l {
        0 => Err(Error::InvalidArgument("cyclotomic index must be >= 1".into())),
        1 => Ok(Poly::from_i64s(&[1, -1])),
        2 => Ok(Poly::from_i64s(&[1, 1])),
        _ => cyclotomic(l),
    }
}

/// The ring Z[y]/(Φ_l(y)) with `y` a primitive `l`-th root of unity.
#[derive(Clone, Debug)]
pub struct CycloRing {
    l: u64,
    modulus: Poly<BigInt>,
}

impl CycloRing {
    pub fn new(l: u64) -> Result<Self> {
        Ok(CycloRing {
            l,
            modulus: cyclotomic(l)?,
        })
    }

    pub fn order(&self) -> u64 {
        self.l
    }

    pub fn reduce(&self, p: &Poly<BigInt>) -> Poly<BigInt> {
        p.div_rem_monic(&self.modulus).1
    }

    /// `ζ^k` for any integer exponent.
    pub fn zeta_pow(&self, k: i64) -> Poly<BigInt> {
        let e = k.rem_euclid(self.l as i64) as usize;
        self.reduce(&Poly::monomial(BigInt::one(), e))
    }

    pub fn mul(&self, a: &Poly<BigInt>, b: &Poly<BigInt>) -> Poly<BigInt> {
        self.reduce(&(a * b))
    }

    /// `√2 = ζ_8 + ζ_8^7`, available when `8 | l`.
    pub fn sqrt2(&self) -> Option<Poly<BigInt>> {
        self.l.is_multiple_of(8).then(|| {
            let e = (self.l / 8) as i64;
            self.zeta_pow(e) + self.zeta_pow(7 * e)
        })
    }

    /// Reads a reduced element as an integer, if it is one.
    pub fn as_integer(&self, x: &Poly<BigInt>) -> Option<BigInt> {
        match x.degree() {
            None => Some(BigInt::zero()),
            Some(0) => Some(x.coeff(0)),
            _ => None,
        }
    }

    /// Reads a reduced element as `u + v√2`, if it lies in Z[√2].
    pub fn as_zsqrt2(&self, x: &Poly<BigInt>) -> Option<Sqrt2Ext<BigInt>> {
        let s = match self.sqrt2() {
            Some(s) => s,
            None => return self.as_integer(x).map(Sqrt2Ext::from_base),
        };
        let j = (1..s.coeffs().len()).find(|&j| !s.coeff(j).is_zero())?;
        let sj = s.coeff(j);
        let xj = x.coeff(j);
        if !(&xj % &sj).is_zero() {
            return None;
        }
        let v = &xj / &sj;
        let u = self.as_integer(&(x.clone() - s.scale(&v)))?;
        Some(Sqrt2Ext::new(u, v))
    }
}

/// `Φ_l = Φ_l^+ Φ_l^-` over Q(√2) for `8 | l`, with `Φ_l^±` the product of
/// `1 - ζ^i T` over the primitive `i` with `chi(i) = ±1`.
pub fn cyclo_split(
    l: u64,
) -> Result<(Poly<Sqrt2Ext<BigInt>>, Poly<Sqrt2Ext<BigInt>>)> {
    if !l.is_multiple_of(8) || l == 0 {
        return Err(Error::InvalidArgument(format!(
            "Phi_{l} splits over Q(sqrt2) only when 8 | l"
        )));
    }
    let ring = CycloRing::new(l)?;
    let mut plus: Vec<Poly<BigInt>> = vec![Poly::one()];
    for i in 1..l {
        if num_integer::gcd(i, l) != 1 || crate::arith::chi(i)? != 1 {
            continue;
        }
        // multiply the polynomial in T by (1 - ζ^i T)
        let root = ring.zeta_pow(i as i64);
        let mut next = vec![Poly::zero(); plus.len() + 1];
        for (k, c) in plus.iter().enumerate() {
            next[k] = &next[k] + c;
            next[k + 1] = &next[k + 1] - &ring.mul(c, &root);
        }
        plus = next;
    }
    let coeffs = plus
        .iter()
        .map(|c| {
            ring.as_zsqrt2(c).ok_or_else(|| {
                Error::Invariant(format!("coefficient of Phi_{l}^+ outside Z[sqrt2]"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let phi_plus = Poly::new(coeffs);
    let phi_minus = phi_plus.conj();
    let whole = cyclo_rev(l)?;
    invariant!(
        (&phi_plus * &phi_minus).to_int_poly().as_ref() == Some(&whole),
        "Phi_{l}^+ Phi_{l}^- differs from Phi_{l}"
    );
    Ok((phi_plus, phi_minus))
}
