//! Additive polynomials `R = sum a_i x^(2^i)`, the kernel polynomial `R~`
//! and the dimensions `c_n` of its root space over F_(2^(mn)).

use std::collections::BTreeMap;

use crate::arith;
use crate::error::{invariant, Error, Result};
use crate::fieldtower::{BaseField, BasePoly, FieldCtx, FieldElem, Level};

/// `sum_{i=0}^{d} a_i x^(2^i)` over a base field, with `a_d != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivePoly {
    ctx: FieldCtx,
    coeffs: Vec<u64>,
}

impl AdditivePoly {
    pub fn new(ctx: &FieldCtx, coeffs: Vec<u64>) -> Result<Self> {
        if ctx.level() != Level::Base {
            return Err(Error::InvalidArgument(
                "additive polynomials live over a base-level context".into(),
            ));
        }
        let f = ctx.base_field();
        if let Some(bad) = coeffs.iter().find(|&&c| !f.contains(c)) {
            return Err(Error::InvalidArgument(format!(
                "coefficient {bad:x} does not lie in F_2^{}",
                f.m()
            )));
        }
        if coeffs.last().copied().unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument(
                "leading coefficient a_d must be nonzero".into(),
            ));
        }
        Ok(AdditivePoly {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// The 2-degree `d`.
    pub fn degree2(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluation at an element of any extension of the base field.
    pub fn eval(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.ctx().base() != self.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &FieldElem) -> FieldElem {
        let mut cur = x.clone();
        let mut acc = x.scale(self.coeffs[0]);
        for &a in &self.coeffs[1..] {
            cur = cur.square();
            if a != 0 {
                acc = &acc + &cur.scale(a);
            }
        }
        acc
    }

    /// Evaluation on raw coefficient vectors of `ctx`.
    pub(crate) fn eval_raw(&self, ctx: &FieldCtx, x: &[u64]) -> Vec<u64> {
        let mut cur = x.to_vec();
        let mut acc = ctx.raw_scale(x, self.coeffs[0]);
        for &a in &self.coeffs[1..] {
            cur = ctx.raw_square(&cur);
            if a != 0 {
                for (o, s) in acc.iter_mut().zip(ctx.raw_scale(&cur, a)) {
                    *o ^= s;
                }
            }
        }
        acc
    }

    /// The same polynomial as an ordinary polynomial of degree `2^d`.
    pub fn to_base_poly(&self) -> BasePoly {
        let mut c = vec![0u64; (1usize << self.degree2()) + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[1 << i] = a;
        }
        BasePoly::new(c)
    }
}

/// `R~ = sum_i a_i^(2^d) x^(2^(d+i)) + a_i^(2^(d-i)) x^(2^(d-i))`, of 2-degree `2d`.
pub fn kernel_poly(r: &AdditivePoly) -> AdditivePoly {
    let f = r.ctx.base_field();
    let d = r.degree2();
    let mut out = vec![0u64; 2 * d + 1];
    for (i, &a) in r.coeffs.iter().enumerate() {
        out[d + i] ^= f.frobenius(a, d);
        out[d - i] ^= f.frobenius(a, d - i);
    }
    AdditivePoly {
        ctx: r.ctx.clone(),
        coeffs: out,
    }
}

/// `x^(2^(mn)) mod p`.
pub fn frobenius_power_mod(p: &BasePoly, f: &BaseField, n: usize) -> BasePoly {
    assert!(p.degree().unwrap_or(0) >= 1, "modulus must be nonconstant");
    let mut cur = BasePoly::x().rem(p, f);
    for _ in 0..n {
        cur = cur.frobenius_mod(p, f);
    }
    cur
}

/// The orbit `x, x^q, x^(q^2), ...` modulo `R~` (with `q = 2^m`), which is
/// periodic of exact period `N`.
#[derive(Clone, Debug)]
pub struct FrobeniusOrbit {
    field: BaseField,
    modulus: BasePoly,
    /// powers[j] = x^(q^j) mod R~ for 0 <= j < N
    powers: Vec<BasePoly>,
}

impl FrobeniusOrbit {
    pub fn new(rt: &BasePoly, f: &BaseField) -> Result<Self> {
        let deg = rt.degree().unwrap_or(0);
        if deg < 2 {
            return Err(Error::InvalidArgument(
                "kernel polynomial must have degree >= 2".into(),
            ));
        }
        // the Frobenius acts linearly on the roots, an F_2-space of dimension
        // log2(deg), so its order is below deg
        let cap = deg;
        let x = BasePoly::x().rem(rt, f);
        let mut powers = vec![x.clone()];
        loop {
            let next = powers.last().unwrap().frobenius_mod(rt, f);
            if next == x {
                break;
            }
            invariant!(
                powers.len() < cap,
                "Frobenius orbit of x modulo a separable additive polynomial exceeds {cap}"
            );
            powers.push(next);
        }
        Ok(FrobeniusOrbit {
            field: *f,
            modulus: rt.clone(),
            powers,
        })
    }

    pub fn splitting_degree(&self) -> usize {
        self.powers.len()
    }

    /// `x^(q^n) mod R~`.
    pub fn power(&self, n: usize) -> &BasePoly {
        &self.powers[n % self.powers.len()]
    }

    pub fn radical_dim(&self, n: usize) -> Result<usize> {
        radical_dim_from_power(self.power(n), &self.modulus, &self.field)
    }
}

fn radical_dim_from_power(xq: &BasePoly, rt: &BasePoly, f: &BaseField) -> Result<usize> {
    let g = xq.add(&BasePoly::x()).gcd(rt, f);
    let deg = g.degree().unwrap_or(0);
    invariant!(
        deg.is_power_of_two(),
        "gcd degree {deg} of R~ with x^(q^n) + x is not a power of two"
    );
    Ok(deg.trailing_zeros() as usize)
}

/// Least `n >= 1` with `x^(2^(mn)) = x (mod R~)`.
pub fn splitting_degree(rt: &BasePoly, f: &BaseField) -> Result<usize> {
    Ok(FrobeniusOrbit::new(rt, f)?.splitting_degree())
}

/// `c_n = log2 deg gcd(R~, x^(2^(mn)) + x)`, the F_2-dimension of the roots
/// of `R~` in F_(2^(mn)).
pub fn radical_dim(rt: &BasePoly, f: &BaseField, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    radical_dim_from_power(&frobenius_power_mod(rt, f, n), rt, f)
}

/// `N = 2^a N'` and `c_n` for every divisor `n` of `2N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalProfile {
    pub n_split: u64,
    pub n_odd: u64,
    pub a: u32,
    pub c: BTreeMap<u64, usize>,
}

impl RadicalProfile {
    /// `c_n` for any `n >= 1`, through `c_n = c_gcd(n, N)`.
    pub fn c_of(&self, n: u64) -> usize {
        self.c[&num_integer::gcd(n, self.n_split)]
    }
}

pub fn radical_profile(r: &AdditivePoly) -> Result<RadicalProfile> {
    let f = r.ctx().base_field();
    let rt = kernel_poly(r).to_base_poly();
    let orbit = FrobeniusOrbit::new(&rt, f)?;
    let n_split = orbit.splitting_degree() as u64;
    let mut c = BTreeMap::new();
    for n in arith::divisors(2 * n_split)? {
        c.insert(n, orbit.radical_dim(n as usize)?);
    }
    let d = r.degree2();
    invariant!(
        c[&n_split] == 2 * d && c[&(2 * n_split)] == 2 * d,
        "R~ does not split over F_(2^(mN))"
    );
    Ok(RadicalProfile {
        n_split,
        n_odd: arith::odd_part(n_split),
        a: n_split.trailing_zeros(),
        c,
    })
}
