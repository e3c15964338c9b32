//! Exact arithmetic in F_(2^m) and in its extensions F_(2^(mn)).
//!
//! An extension is always built over the base field, as F_(2^m)[u]/(p(u)),
//! so base-field constants embed coefficient-wise. Contexts are immutable and
//! cheap to clone; elements carry a handle to their context.

mod binpoly;
mod poly;

use std::fmt;
use std::ops::{Add, Mul};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

pub use binpoly::{clmul, default_modulus, is_irreducible as is_irreducible_gf2, BaseField, MAX_BASE_DEGREE};
pub use poly::BasePoly;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Base,
    Extension,
}

/// Handle to F_(2^m) or to a degree-`n` extension of it.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

struct Inner {
    base: BaseField,
    ext: Option<Extension>,
}

struct Extension {
    base_ctx: FieldCtx,
    n: usize,
    modulus: BasePoly,
    /// nonzero coefficients of the modulus below its leading term
    tail: Vec<(usize, u64)>,
    /// Tr(u^k) down to F_(2^m) for k < 2n - 1
    power_sums: Vec<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.ext {
            None => write!(f, "F_2^{}[{:x}]", self.m(), self.base_modulus()),
            Some(e) => write!(
                f,
                "F_2^{}[{:x}] / ({:x?})",
                self.m(),
                self.base_modulus(),
                e.modulus.coeffs()
            ),
        }
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        self.0.base == other.0.base
            && match (&self.0.ext, &other.0.ext) {
                (None, None) => true,
                (Some(a), Some(b)) => a.modulus == b.modulus,
                _ => false,
            }
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Context for F_(2^m). Without a modulus the smallest irreducible of
    /// degree `m` is used (and `t + 1` for the prime field).
    pub fn new_base(m: usize, modulus: Option<u64>) -> Result<FieldCtx> {
        if m == 0 || m > MAX_BASE_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "base degree must lie in 1..={MAX_BASE_DEGREE}, got {m}"
            )));
        }
        let modulus = modulus.unwrap_or_else(|| default_modulus(m));
        let base = BaseField::new(m, modulus)?;
        Ok(FieldCtx(Arc::new(Inner { base, ext: None })))
    }

    /// Degree-`n` extension of a base context, presented modulo the
    /// smallest monic irreducible of degree `n` over F_(2^m) (coefficients
    /// packed base-`2^m` with the constant term least significant).
    /// Contexts are memoized per base modulus and degree.
    pub fn extension(&self, n: usize) -> Result<FieldCtx> {
        if self.level() != Level::Base {
            return Err(Error::InvalidArgument(
                "extensions are built over a base-level context".into(),
            ));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let f = self.0.base;
        let key = (f.m(), f.modulus(), n);
        static CACHE: OnceLock<Mutex<HashMap<(usize, u64, usize), FieldCtx>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(ctx) = cache.lock().unwrap().get(&key) {
            return Ok(ctx.clone());
        }
        let m = f.m();
        let mut counter: u128 = 0;
        let modulus = loop {
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut rest = counter;
            for _ in 0..n {
                coeffs.push((rest & f.mask() as u128) as u64);
                rest >>= m;
            }
            coeffs.push(1);
            let cand = BasePoly::new(coeffs);
            if rest == 0 && cand.is_irreducible(&f) {
                break cand;
            }
            counter += 1;
        };
        let ctx = self.extension_with_modulus(modulus)?;
        cache.lock().unwrap().entry(key).or_insert_with(|| ctx.clone());
        Ok(ctx)
    }

    /// Extension modulo a caller-supplied monic irreducible polynomial.
    pub fn extension_with_modulus(&self, modulus: BasePoly) -> Result<FieldCtx> {
        if self.level() != Level::Base {
            return Err(Error::InvalidArgument(
                "extensions are built over a base-level context".into(),
            ));
        }
        let f = self.0.base;
        let n = modulus.degree().unwrap_or(0);
        if n == 0 || modulus.leading() != 1 {
            return Err(Error::InvalidArgument(
                "extension modulus must be monic of positive degree".into(),
            ));
        }
        if !modulus.is_irreducible(&f) {
            return Err(Error::ReducibleModulus {
                poly: format!("{:x?}", modulus.coeffs()),
                field: format!("F_2^{}", f.m()),
            });
        }
        let tail: Vec<(usize, u64)> = modulus.coeffs()[..n]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c))
            .collect();
        let mut ext = Extension {
            base_ctx: self.clone(),
            n,
            modulus,
            tail,
            power_sums: Vec::new(),
        };
        // Tr(u^k) = trace of multiplication by u^k on the basis 1, u, ..., u^(n-1).
        let mut powers: Vec<Vec<u64>> = Vec::with_capacity(3 * n);
        let mut cur = vec![0u64; n];
        cur[0] = 1;
        for _ in 0..3 * n - 1 {
            powers.push(cur.clone());
            cur = ext.times_u(&cur, &f);
        }
        ext.power_sums = (0..2 * n - 1)
            .map(|k| (0..n).fold(0u64, |acc, j| acc ^ powers[k + j][j]))
            .collect();
        Ok(FieldCtx(Arc::new(Inner { base: f, ext: Some(ext) })))
    }

    pub fn level(&self) -> Level {
        if self.0.ext.is_some() {
            Level::Extension
        } else {
            Level::Base
        }
    }

    pub fn m(&self) -> usize {
        self.0.base.m()
    }

    /// Degree over the base field (1 for the base itself).
    pub fn n(&self) -> usize {
        self.0.ext.as_ref().map_or(1, |e| e.n)
    }

    /// Dimension over F_2.
    pub fn abs_degree(&self) -> usize {
        self.m() * self.n()
    }

    pub fn base_field(&self) -> &BaseField {
        &self.0.base
    }

    pub fn base_modulus(&self) -> u64 {
        self.0.base.modulus()
    }

    /// The base context (the context itself at base level).
    pub fn base(&self) -> FieldCtx {
        match &self.0.ext {
            None => self.clone(),
            Some(e) => e.base_ctx.clone(),
        }
    }

    pub fn ext_modulus(&self) -> Option<&BasePoly> {
        self.0.ext.as_ref().map(|e| &e.modulus)
    }

    /// Order of the multiplicative group.
    pub fn unit_order(&self) -> BigUint {
        (BigUint::one() << self.abs_degree()) - 1u32
    }

    /// Number of `u64` words in an element's coefficient vector.
    pub fn width(&self) -> usize {
        self.n()
    }

    fn wrap(&self, coeffs: Vec<u64>) -> FieldElem {
        FieldElem {
            ctx: self.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.wrap(vec![0; self.width()])
    }

    pub fn one(&self) -> FieldElem {
        self.embed(1)
    }

    /// `t` at base level, `u` for an extension.
    pub fn generator(&self) -> FieldElem {
        match &self.0.ext {
            None => self.wrap(vec![self.0.base.generator()]),
            Some(e) => {
                let mut c = vec![0; e.n];
                if e.n == 1 {
                    // u = -p(0) when p is linear
                    c[0] = e.modulus.coeff(0);
                } else {
                    c[1] = 1;
                }
                self.wrap(c)
            }
        }
    }

    /// Constant embedding of a packed base-field element.
    pub fn embed(&self, a: u64) -> FieldElem {
        debug_assert!(self.0.base.contains(a));
        let mut c = vec![0; self.width()];
        c[0] = a;
        self.wrap(c)
    }

    pub fn from_coeffs(&self, coeffs: Vec<u64>) -> Result<FieldElem> {
        if coeffs.len() != self.width() || !coeffs.iter().all(|&c| self.0.base.contains(c)) {
            return Err(Error::InvalidArgument(format!(
                "coefficient vector {coeffs:x?} does not describe an element of {self:?}"
            )));
        }
        Ok(self.wrap(coeffs))
    }

    /// Element whose F_2 coordinates are the bits of `index`
    /// (coefficient `j` occupies bits `j*m .. (j+1)*m`).
    pub fn from_index(&self, index: u64) -> FieldElem {
        self.wrap(self.raw_from_index(index))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        let mask = self.0.base.mask();
        self.wrap((0..self.width()).map(|_| rng.gen::<u64>() & mask).collect())
    }

    // ---- raw kernels on coefficient slices ------------------------------

    pub(crate) fn raw_from_index(&self, index: u64) -> Vec<u64> {
        let m = self.m();
        let mask = self.0.base.mask();
        (0..self.width())
            .map(|j| if j * m >= 64 { 0 } else { (index >> (j * m)) & mask })
            .collect()
    }

    pub(crate) fn raw_index(&self, a: &[u64]) -> u64 {
        let m = self.m();
        a.iter()
            .enumerate()
            .fold(0u64, |acc, (j, &c)| acc | (c << (j * m)))
    }

    pub(crate) fn raw_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = &self.0.base;
        match &self.0.ext {
            None => vec![f.mul(a[0], b[0])],
            Some(e) => {
                let n = e.n;
                let mut wide = vec![0u128; 2 * n - 1];
                for (i, &ai) in a.iter().enumerate() {
                    if ai == 0 {
                        continue;
                    }
                    for (j, &bj) in b.iter().enumerate() {
                        wide[i + j] ^= clmul(ai, bj);
                    }
                }
                let mut out: Vec<u64> = wide.into_iter().map(|w| f.reduce_wide(w)).collect();
                e.reduce_in_place(&mut out, f);
                out
            }
        }
    }

    pub(crate) fn raw_square(&self, a: &[u64]) -> Vec<u64> {
        let f = &self.0.base;
        match &self.0.ext {
            None => vec![f.square(a[0])],
            Some(e) => {
                let mut out = vec![0u64; 2 * e.n - 1];
                for (i, &c) in a.iter().enumerate() {
                    out[2 * i] = f.square(c);
                }
                e.reduce_in_place(&mut out, f);
                out
            }
        }
    }

    pub(crate) fn raw_scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        let f = &self.0.base;
        a.iter().map(|&x| f.mul(x, c)).collect()
    }

    /// Relative trace down to F_(2^m), as a packed base element.
    pub(crate) fn raw_rel_trace(&self, a: &[u64]) -> u64 {
        let f = &self.0.base;
        match &self.0.ext {
            None => a[0],
            Some(e) => a
                .iter()
                .zip(&e.power_sums)
                .fold(0u64, |acc, (&x, &s)| acc ^ f.mul(x, s)),
        }
    }

    pub(crate) fn raw_abs_trace(&self, a: &[u64]) -> bool {
        self.0.base.trace(self.raw_rel_trace(a))
    }

    /// Tr(u^k) for k < 2n - 1 (k = 0 only at base level).
    pub(crate) fn power_sums(&self) -> &[u64] {
        match &self.0.ext {
            None => &[1],
            Some(e) => &e.power_sums,
        }
    }

    fn check(&self, other: &FieldCtx) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

impl Extension {
    fn times_u(&self, a: &[u64], f: &BaseField) -> Vec<u64> {
        let n = self.n;
        if n == 1 {
            // p = u + p0, so u = p0 in characteristic two
            return vec![f.mul(a[0], self.modulus.coeff(0))];
        }
        let top = a[n - 1];
        let mut out = vec![0u64; n];
        out[1..].copy_from_slice(&a[..n - 1]);
        if top != 0 {
            for &(j, pj) in &self.tail {
                out[j] ^= f.mul(top, pj);
            }
        }
        out
    }

    fn reduce_in_place(&self, wide: &mut Vec<u64>, f: &BaseField) {
        let n = self.n;
        for k in (n..wide.len()).rev() {
            let c = wide[k];
            if c == 0 {
                continue;
            }
            for &(j, pj) in &self.tail {
                wide[k - n + j] ^= f.mul(c, pj);
            }
        }
        wide.truncate(n);
    }
}

/// Context for F_(2^m); see [`FieldCtx::new_base`].
pub fn build_base_field(m: usize, modulus: Option<u64>) -> Result<FieldCtx> {
    FieldCtx::new_base(m, modulus)
}

/// Context for F_(2^(mn)) over the base context; see [`FieldCtx::extension`].
pub fn build_extension(base: &FieldCtx, n: usize) -> Result<FieldCtx> {
    base.extension(n)
}

/// An element of a [`FieldCtx`].
#[derive(Clone)]
pub struct FieldElem {
    ctx: FieldCtx,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x?}", self.coeffs)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ctx == other.ctx
    }
}

impl Eq for FieldElem {}

impl FieldElem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Coefficients over F_(2^m) (a single packed word at base level).
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Packed F_2 coordinates; requires `mn <= 64`.
    pub fn to_index(&self) -> u64 {
        debug_assert!(self.ctx.abs_degree() <= 64);
        self.ctx.raw_index(&self.coeffs)
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.ctx.check(&other.ctx)?;
        Ok(self.ctx.wrap(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a ^ b)
                .collect(),
        ))
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.ctx.check(&other.ctx)?;
        Ok(self.ctx.wrap(self.ctx.raw_mul(&self.coeffs, &other.coeffs)))
    }

    pub fn square(&self) -> FieldElem {
        self.ctx.wrap(self.ctx.raw_square(&self.coeffs))
    }

    /// `self^(2^k)`.
    pub fn frobenius(&self, k: usize) -> FieldElem {
        let mut c = self.coeffs.clone();
        for _ in 0..k {
            c = self.ctx.raw_square(&c);
        }
        self.ctx.wrap(c)
    }

    /// `self^(2^m)`, the generator of Gal(F_(2^(mn)) / F_(2^m)).
    pub fn frobenius_base(&self) -> FieldElem {
        self.frobenius(self.ctx.m())
    }

    pub fn pow(&self, e: &BigUint) -> FieldElem {
        let mut acc = self.ctx.one();
        for i in (0..e.bits()).rev() {
            acc = acc.square();
            if e.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    pub fn pow_u64(&self, e: u64) -> FieldElem {
        self.pow(&BigUint::from(e))
    }

    pub fn inv(&self) -> Option<FieldElem> {
        (!self.is_zero()).then(|| self.pow(&(self.ctx.unit_order() - 1u32)))
    }

    /// Multiply by a packed base-field constant.
    pub fn scale(&self, c: u64) -> FieldElem {
        self.ctx.wrap(self.ctx.raw_scale(&self.coeffs, c))
    }

    /// Trace down to F_(2^m), as a base-level element.
    pub fn relative_trace(&self) -> FieldElem {
        let base = self.ctx.base();
        base.embed(self.ctx.raw_rel_trace(&self.coeffs))
    }

    /// Absolute trace Tr_(F_(2^(mn)) / F_2), computed as the base-field
    /// trace of the relative trace.
    pub fn abs_trace(&self) -> bool {
        self.ctx.raw_abs_trace(&self.coeffs)
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;

    /// Panics when the operands live in different contexts; use
    /// [`FieldElem::try_add`] to get an error instead.
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.try_add(rhs).expect("field addition across contexts")
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;

    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.try_mul(rhs).expect("field multiplication across contexts")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn naive_trace(x: &FieldElem) -> FieldElem {
        let mut acc = x.ctx().zero();
        let mut cur = x.clone();
        for _ in 0..x.ctx().abs_degree() {
            acc = &acc + &cur;
            cur = cur.square();
        }
        acc
    }

    #[test]
    fn prime_field_uses_t_plus_one() {
        let f2 = FieldCtx::new_base(1, None).unwrap();
        assert_eq!(f2.base_modulus(), 0b11);
        let one = f2.one();
        assert!((&one + &one).is_zero());
        assert_eq!(&one * &one, one);
    }

    #[test]
    fn f4_reduction() {
        let f4 = FieldCtx::new_base(2, Some(0b111)).unwrap();
        let t = f4.generator();
        assert_eq!((&t * &t).coeffs(), &[0b11]);
        assert!(matches!(
            FieldCtx::new_base(2, Some(0b101)),
            Err(Error::ReducibleModulus { .. })
        ));
    }

    #[test]
    fn f8_as_extension_of_f2() {
        let f2 = FieldCtx::new_base(1, None).unwrap();
        let f8 = f2.extension(3).unwrap();
        assert_eq!(f8.ext_modulus().unwrap().coeffs(), &[1, 1, 0, 1]);
        assert_eq!(f8.unit_order(), BigUint::from(7u32));
        let u = f8.generator();
        let u2 = u.square();
        // u * u^2 = u^3 = u + 1
        assert_eq!((&u * &u2).coeffs(), &[1, 1, 0]);
    }

    #[test]
    fn degree_one_extension_is_the_base() {
        let f4 = FieldCtx::new_base(2, None).unwrap();
        let e = f4.extension(1).unwrap();
        assert_eq!(e.abs_degree(), 2);
        let t = e.embed(0b10);
        assert_eq!((&t * &t).coeffs(), &[0b11]);
        assert!(e.embed(0b10).abs_trace());
    }

    #[test]
    fn order_of_u_in_f64() {
        let f64_ = FieldCtx::new_base(1, None).unwrap().extension(6).unwrap();
        let u = f64_.generator();
        assert!(u.pow_u64(63).is_one());
        for k in [1u64, 3, 7, 9, 21] {
            assert!(!u.pow_u64(k).is_one(), "u^{k} = 1");
        }
    }

    #[test]
    fn random_units_have_the_right_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (m, n) in [(1, 5), (2, 3), (3, 4), (5, 2), (2, 7)] {
            let ctx = FieldCtx::new_base(m, None).unwrap().extension(n).unwrap();
            for _ in 0..5 {
                let x = ctx.random(&mut rng);
                if !x.is_zero() {
                    assert!(x.pow(&ctx.unit_order()).is_one());
                    assert_eq!(&x * &x.inv().unwrap(), ctx.one());
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        let f4 = FieldCtx::new_base(2, None).unwrap();
        assert!(!f4.zero().abs_trace());
        // Tr(t) = t + t^2 = 1
        assert!(f4.generator().abs_trace());
        for k in 1..=8 {
            let (m, n) = if k % 2 == 0 { (2, k / 2) } else { (1, k) };
            let ctx = FieldCtx::new_base(m, None).unwrap().extension(n).unwrap();
            assert_eq!(ctx.one().abs_trace(), k % 2 == 1, "Tr(1) in F_2^{k}");
        }
    }

    #[test]
    fn trace_agrees_with_frobenius_sum_exhaustively() {
        for (m, n) in [(1, 1), (1, 4), (1, 7), (2, 1), (2, 3), (2, 6), (3, 2), (3, 4), (4, 3), (6, 2), (12, 1)] {
            let ctx = FieldCtx::new_base(m, None).unwrap().extension(n).unwrap();
            let k = m * n;
            let mut ones = 0u64;
            for idx in 0..(1u64 << k) {
                let x = ctx.from_index(idx);
                let naive = naive_trace(&x);
                assert!(naive.coeffs()[0] <= 1 && naive.coeffs()[1..].iter().all(|&c| c == 0));
                assert_eq!(naive.coeffs()[0] == 1, x.abs_trace(), "m={m} n={n} x={x:?}");
                // transitivity through the relative trace
                let rel = x.relative_trace();
                assert_eq!(rel.abs_trace(), x.abs_trace());
                ones += x.abs_trace() as u64;
            }
            // surjective and balanced
            assert_eq!(ones, 1u64 << (k - 1), "m={m} n={n}");
        }
    }

    #[test]
    fn relative_trace_is_frobenius_orbit_sum() {
        let ctx = FieldCtx::new_base(3, None).unwrap().extension(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = ctx.random(&mut rng);
            let mut acc = ctx.zero();
            let mut cur = x.clone();
            for _ in 0..4 {
                acc = &acc + &cur;
                cur = cur.frobenius_base();
            }
            assert_eq!(acc, ctx.embed(x.relative_trace().coeffs()[0]));
            assert_eq!(cur, x, "frobenius_base has order dividing n");
        }
    }

    #[test]
    fn extension_is_reproducible() {
        let f4 = FieldCtx::new_base(2, None).unwrap();
        let a = f4.extension(5).unwrap();
        let b = FieldCtx::new_base(2, None).unwrap().extension(5).unwrap();
        assert_eq!(a.ext_modulus(), b.ext_modulus());
        assert_eq!(a, b);
    }

    #[test]
    fn mixed_contexts_are_rejected() {
        let f4 = FieldCtx::new_base(2, None).unwrap();
        let f16 = f4.extension(2).unwrap();
        assert_eq!(f4.one().try_mul(&f16.one()), Err(Error::ContextMismatch));
        assert_eq!(f4.one().try_add(&f16.one()), Err(Error::ContextMismatch));
    }

    #[test]
    fn frobenius_is_base_linear() {
        let ctx = FieldCtx::new_base(2, None).unwrap().extension(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = ctx.embed(0b10);
        for _ in 0..10 {
            let x = ctx.random(&mut rng);
            assert_eq!((&c * &x).frobenius_base(), &c * &x.frobenius_base());
        }
    }
}
