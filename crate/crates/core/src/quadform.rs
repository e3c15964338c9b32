//! The trace forms `q_n(x) = Tr(x R(x))` on F_(2^(mn)) seen as quadratic
//! forms over F_2: Gram matrix, radical, the invariant `epsilon_n` and the
//! exponential sums `S_n`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::bitmatrix::{dot, get_bit, set_bit, unit_vector, words_for, xor_into, BitMatrix};
use crate::error::{invariant, Error, Result};
use crate::fieldtower::{FieldCtx, FieldElem};
use crate::linearized::AdditivePoly;
use crate::ZSqrt2;

/// Largest `mn` accepted by [`brute_sum`] unless the caller raises it.
pub const DEFAULT_BRUTE_BOUND: usize = 24;

/// A quadratic form on F_2^k given by its polar form and its diagonal.
#[derive(Clone, Debug)]
pub struct QuadraticSpace {
    dim: usize,
    /// the field F_(2^(mn)) when the form comes from a curve; basis vector
    /// `e_(a + m b)` is `t^a u^b`
    ctx: Option<FieldCtx>,
    gram: BitMatrix,
    diag: Vec<u64>,
    /// strict upper triangle of `gram`, row by row
    upper: Vec<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadClassification {
    /// dimension of the radical of the polar form
    pub c: usize,
    /// -1, 0 or +1
    pub epsilon: i8,
}

impl QuadraticSpace {
    /// Form with the given polar matrix and diagonal `q(e_i)`. The matrix
    /// must be symmetric with zero diagonal.
    pub fn new(gram: BitMatrix, diag: Vec<u64>) -> Result<Self> {
        Self::with_ctx(gram, diag, None)
    }

    fn with_ctx(gram: BitMatrix, diag: Vec<u64>, ctx: Option<FieldCtx>) -> Result<Self> {
        let k = gram.rows();
        invariant!(
            gram.cols() == k && diag.len() == words_for(k),
            "gram is {}x{}, diagonal has {} words",
            gram.rows(),
            gram.cols(),
            diag.len()
        );
        invariant!(gram.is_symmetric(), "polar form is not symmetric");
        invariant!(
            (0..k).all(|i| !gram.get(i, i)),
            "polar form is not alternate"
        );
        let upper = (0..k)
            .map(|i| {
                let mut row = gram.row(i).to_vec();
                for j in 0..=i {
                    set_bit(&mut row, j, false);
                }
                row
            })
            .collect();
        Ok(QuadraticSpace {
            dim: k,
            ctx,
            gram,
            diag,
            upper,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &BitMatrix {
        &self.gram
    }

    pub fn diag(&self) -> &[u64] {
        &self.diag
    }

    pub fn ctx(&self) -> Option<&FieldCtx> {
        self.ctx.as_ref()
    }

    /// `q(v) = sum v_i q(e_i) + sum_(i<j) v_i v_j b(e_i, e_j)`.
    pub fn q(&self, v: &[u64]) -> bool {
        let mut acc = dot(v, &self.diag);
        for (i, row) in self.upper.iter().enumerate() {
            if get_bit(v, i) {
                acc ^= dot(row, v);
            }
        }
        acc
    }

    pub fn b(&self, x: &[u64], y: &[u64]) -> bool {
        dot(&self.gram.mul_vec(x), y)
    }

    /// The field element `sum v_i e_i` (forms built from a curve only).
    pub fn to_elem(&self, v: &[u64]) -> Option<FieldElem> {
        let ctx = self.ctx.as_ref()?;
        let m = ctx.m();
        let f = ctx.base_field();
        let t = f.generator();
        let mut coeffs = vec![0u64; ctx.width()];
        for i in 0..self.dim {
            if get_bit(v, i) {
                coeffs[i / m] ^= f.pow(t, (i % m) as u64);
            }
        }
        ctx.from_coeffs(coeffs).ok()
    }

    /// Change of basis: the form `v -> q(P v)`, where column `j` of `P` is
    /// the new `j`-th basis vector.
    pub fn transform(&self, p: &BitMatrix) -> Result<Self> {
        let k = self.dim;
        let cols: Vec<Vec<u64>> = (0..k)
            .map(|j| {
                let mut v = vec![0u64; words_for(k)];
                for i in 0..k {
                    set_bit(&mut v, i, p.get(i, j));
                }
                v
            })
            .collect();
        let images: Vec<Vec<u64>> = cols.iter().map(|c| self.gram.mul_vec(c)).collect();
        let gram = BitMatrix::from_fn(k, k, |i, j| dot(&images[i], &cols[j]));
        let mut diag = vec![0u64; words_for(k)];
        for (j, c) in cols.iter().enumerate() {
            set_bit(&mut diag, j, self.q(c));
        }
        Self::with_ctx(gram, diag, None)
    }
}

fn extension_ctx(r: &AdditivePoly, n: usize) -> Result<FieldCtx> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if n == 1 {
        Ok(r.ctx().clone())
    } else {
        r.ctx().extension(n)
    }
}

/// The form `q_n` on F_(2^(mn)) in the basis `t^a u^b`.
///
/// With `V[j][i] = Tr(e_i R(e_j))` the polar form is `V + V^T` and
/// `q_n(e_j) = V[j][j]`. Each row needs one evaluation of `R` and the
/// relative traces `Tr(u^b w) = sum_g w_g Tr(u^(b+g))`.
pub fn build_space(r: &AdditivePoly, n: usize) -> Result<QuadraticSpace> {
    let ctx = extension_ctx(r, n)?;
    let f = *ctx.base_field();
    let m = f.m();
    let k = m * n;
    let t = f.generator();
    // trace_of_power[j] = Tr(t^j) for j < 2m - 1
    let trace_of_power: Vec<bool> = (0..2 * m - 1).map(|j| f.trace(f.pow(t, j as u64))).collect();
    // Tr(t^a z) = parity(z & masks[a])
    let masks: Vec<u64> = (0..m)
        .map(|a| (0..m).fold(0u64, |acc, i| acc | ((trace_of_power[a + i] as u64) << i)))
        .collect();
    let sums = ctx.power_sums().to_vec();
    let t_pows: Vec<u64> = (0..m).map(|a| f.pow(t, a as u64)).collect();

    let rows: Vec<Vec<u64>> = (0..k)
        .into_par_iter()
        .map(|j| {
            let mut e = vec![0u64; n];
            e[j / m] = t_pows[j % m];
            let w = r.eval_raw(&ctx, &e);
            let mut row = vec![0u64; words_for(k)];
            for beta in 0..n {
                let z = w
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (g, &wg)| acc ^ f.mul(wg, sums[beta + g]));
                for (a, &mask) in masks.iter().enumerate() {
                    if (z & mask).count_ones() & 1 == 1 {
                        set_bit(&mut row, a + m * beta, true);
                    }
                }
            }
            row
        })
        .collect();

    let mut diag = vec![0u64; words_for(k)];
    let mut gram = BitMatrix::zeros(k, k);
    for (j, row) in rows.iter().enumerate() {
        set_bit(&mut diag, j, get_bit(row, j));
        for i in 0..k {
            if get_bit(row, i) {
                // V[j][i] contributes to gram[j][i] and gram[i][j]
                gram.set(j, i, !gram.get(j, i));
                gram.set(i, j, !gram.get(i, j));
            }
        }
    }
    QuadraticSpace::with_ctx(gram, diag, Some(ctx))
}

/// Radical dimension and invariant of a quadratic form.
///
/// The radical of the polar form is computed by elimination; if `q` does
/// not vanish on it the invariant is 0. Otherwise hyperbolic pairs are split
/// off one at a time, always pivoting on the lowest-index remaining vector
/// outside the radical, and the invariant is `(-1)^Arf` with
/// `Arf = sum q(a_i) q(b_i)`.
pub fn classify(space: &QuadraticSpace) -> Result<QuadClassification> {
    let k = space.dim;
    let g = &space.gram;
    let nullity = k - g.rank();

    let mut work: Vec<Vec<u64>> = (0..k).map(|i| unit_vector(k, i)).collect();
    let mut alive = vec![true; k];
    let mut radical = Vec::new();
    let mut arf = false;
    let mut scan = 0;
    loop {
        // lowest-index remaining vector with a nonzero polar row
        let mut pivot = None;
        while scan < k {
            if alive[scan] {
                let image = g.mul_vec(&work[scan]);
                if image.iter().any(|&w| w != 0) {
                    pivot = Some((scan, image));
                    break;
                }
                alive[scan] = false;
                radical.push(scan);
            }
            scan += 1;
        }
        let Some((ia, ga)) = pivot else { break };
        let ib = (ia + 1..k)
            .find(|&i| alive[i] && dot(&work[i], &ga))
            .ok_or_else(|| Error::Invariant("no hyperbolic partner found".into()))?;
        alive[ia] = false;
        alive[ib] = false;
        let a = work[ia].clone();
        let b = work[ib].clone();
        let gb = g.mul_vec(&b);
        arf ^= space.q(&a) & space.q(&b);
        for i in ia + 1..k {
            if !alive[i] {
                continue;
            }
            let w = &mut work[i];
            let (wa, wb) = (dot(w, &ga), dot(w, &gb));
            if wb {
                xor_into(w, &a);
            }
            if wa {
                xor_into(w, &b);
            }
        }
    }
    invariant!(
        radical.len() == nullity,
        "symplectic reduction left {} radical vectors, nullspace has dimension {nullity}",
        radical.len()
    );
    let q_rad: Vec<bool> = radical.iter().map(|&i| space.q(&work[i])).collect();
    if let Some((&r0, &q0)) = radical.first().zip(q_rad.first()) {
        for (&ri, &qi) in radical.iter().zip(&q_rad).skip(1) {
            let mut sum = work[r0].clone();
            xor_into(&mut sum, &work[ri]);
            invariant!(
                space.q(&sum) == q0 ^ qi,
                "q is not additive on the radical"
            );
        }
    }
    let epsilon = if q_rad.iter().any(|&x| x) {
        0
    } else if arf {
        -1
    } else {
        1
    };
    Ok(QuadClassification {
        c: nullity,
        epsilon,
    })
}

/// `(c_n, epsilon_n)` for the trace form over F_(2^(mn)).
pub fn classify_trace_form(r: &AdditivePoly, n: usize) -> Result<QuadClassification> {
    classify(&build_space(r, n)?)
}

/// `S_n = epsilon_n 2^((mn + c_n)/2)`.
pub fn exp_sum(r: &AdditivePoly, n: usize) -> Result<ZSqrt2> {
    let cls = classify_trace_form(r, n)?;
    Ok(exp_sum_from(r.ctx().m() * n, cls))
}

/// `epsilon (√2)^(k + c)` for a form of dimension `k`.
pub fn exp_sum_from(k: usize, cls: QuadClassification) -> ZSqrt2 {
    let mag = ZSqrt2::sqrt2_pow((k + cls.c) as u64);
    match cls.epsilon {
        0 => ZSqrt2::from_i64(0, 0),
        1 => mag,
        _ => -mag,
    }
}

/// `sum_(x in F_(2^(mn))) (-1)^Tr(x R(x))` by enumeration, refused when
/// `mn` exceeds `bound`.
pub fn brute_sum(r: &AdditivePoly, n: usize, bound: usize) -> Result<BigInt> {
    let ctx = extension_ctx(r, n)?;
    let mn = ctx.abs_degree();
    if mn > bound || mn > 40 {
        return Err(Error::BruteBoundExceeded { mn, bound });
    }
    let total: u64 = 1 << mn;
    let chunk = (total / 64).max(1);
    let odd: u64 = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let start = c * chunk;
            let end = (start + chunk).min(total);
            (start..end)
                .filter(|&i| {
                    let x = ctx.from_index(i);
                    let fx = &x * &r.eval_unchecked(&x);
                    fx.abs_trace()
                })
                .count() as u64
        })
        .sum();
    Ok(BigInt::from(total) - BigInt::from(2 * odd))
}
