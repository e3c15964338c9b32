//! Arithmetic-function identities checked against direct sums of roots of
//! unity computed in Z[y]/(Φ_l(y)).

use aszeta::arith::{self, chi, matrix_a, matrix_b, matrix_delta, ramanujan, sigma_sum};
use aszeta::linsolve::{determinant, mat_mul};
use aszeta::zsqrt2::{cyclo_rev, cyclo_split, CycloRing};
use aszeta::{IntPoly, ZSqrt2};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `(sum zeta^(n i), sum chi(i) zeta^(n i))` over the units mod `l`.
fn direct_sums(ring: &CycloRing, n: u64) -> (IntPoly, IntPoly) {
    let l = ring.order();
    let mut plain = IntPoly::zero();
    let mut twisted = IntPoly::zero();
    for i in 1..=l {
        if i.gcd(&l) != 1 {
            continue;
        }
        let z = ring.zeta_pow(((n % l) * i % l) as i64);
        plain = plain + z.clone();
        if l.is_multiple_of(8) {
            twisted = if chi(i).unwrap() == 1 { twisted + z } else { twisted - z };
        }
    }
    (ring.reduce(&plain), ring.reduce(&twisted))
}

#[test]
fn von_sterneck_and_sigma_match_direct_sums() {
    for l in 1..=120u64 {
        let ring = CycloRing::new(l).unwrap();
        for n in 1..=120u64 {
            let (plain, twisted) = direct_sums(&ring, n);
            let c = ring.as_integer(&plain).expect("Ramanujan sum is an integer");
            assert_eq!(c, BigInt::from(ramanujan(l, n).unwrap()), "c_{l}({n})");
            if l % 8 == 0 {
                let s = ring.as_zsqrt2(&twisted).expect("sigma lies in Z[sqrt2]");
                assert_eq!(s, sigma_sum(l, n).unwrap(), "sigma_{l}({n})");
            }
        }
    }
}

#[test]
fn determinant_of_a_is_product_of_divisors() {
    for n in 1..=60u64 {
        let a = matrix_a(n).unwrap();
        let prod = a.index.iter().fold(BigInt::one(), |acc, &d| acc * d);
        assert_eq!(determinant(&a.entries), prod, "n = {n}");
    }
}

fn scaled(m: &[Vec<BigInt>], k: i64) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|x| x * BigInt::from(k)).collect())
        .collect()
}

fn zeros_like(rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    vec![vec![BigInt::zero(); cols]; rows]
}

#[test]
fn block_structure_of_a() {
    for n in 1..=48u64 {
        let a = matrix_a(n).unwrap();
        let v = arith::v2(n).unwrap();
        let n_odd = arith::odd_part(n);
        let base = matrix_a(n_odd).unwrap().entries;
        let s = base.len();
        for i in 0..=v {
            for j in 0..=v {
                let want = if j == 0 {
                    base.clone()
                } else if i + 2 <= j {
                    zeros_like(s, s)
                } else if i + 1 == j {
                    scaled(&base, -(1i64 << i))
                } else {
                    scaled(&base, 1i64 << (j - 1))
                };
                assert_eq!(a.block(i, j), want, "n = {n}, block ({i}, {j})");
            }
        }
    }
}

#[test]
fn block_structure_of_b() {
    for n in (8..=48u64).step_by(8) {
        let b = matrix_b(n).unwrap();
        let v = arith::v2(n).unwrap();
        let n_odd = arith::odd_part(n);
        let delta = matrix_delta(n_odd).unwrap().entries;
        let dad = mat_mul(&mat_mul(&delta, &matrix_a(n_odd).unwrap().entries), &delta);
        let s = dad.len();
        for i in 0..=v {
            for j in 0..=v {
                let block = b.block(i, j);
                let want: Vec<Vec<ZSqrt2>> = if j == i + 3 {
                    dad.iter()
                        .map(|r| {
                            r.iter()
                                .map(|x| ZSqrt2::new(BigInt::zero(), x << (i + 1) as usize))
                                .collect()
                        })
                        .collect()
                } else {
                    vec![vec![ZSqrt2::zero(); s]; s]
                };
                assert_eq!(block, want, "n = {n}, block ({i}, {j})");
            }
        }
    }
}

#[test]
fn cyclotomic_split_over_q_sqrt2() {
    for l in (8..=120u64).step_by(8) {
        let (plus, minus) = cyclo_split(l).unwrap();
        let whole = cyclo_rev(l).unwrap();
        assert_eq!((&plus * &minus).to_int_poly(), Some(whole), "l = {l}");
        assert_eq!(plus.conj(), minus);
        assert_eq!(minus.conj(), plus);
        let half = arith::totient(l).unwrap() as usize / 2;
        assert_eq!(plus.degree(), Some(half));
        assert_eq!(minus.degree(), Some(half));
        assert!(plus.coeff(0).is_one());
        // T-coefficient is minus the sum of the roots in each half
        let c = BigInt::from(ramanujan(l, 1).unwrap());
        let s = sigma_sum(l, 1).unwrap();
        let total_plus = ZSqrt2::from_base(c.clone()) + s.clone();
        let total_minus = ZSqrt2::from_base(c) - s;
        assert_eq!(
            -plus.coeff(1),
            total_plus.div_exact(&BigInt::from(2)).unwrap(),
            "l = {l}"
        );
        assert_eq!(
            -minus.coeff(1),
            total_minus.div_exact(&BigInt::from(2)).unwrap(),
            "l = {l}"
        );
    }
}

#[test]
fn split_rejects_non_multiples_of_eight() {
    for l in [1u64, 2, 4, 12, 20] {
        assert!(cyclo_split(l).is_err());
    }
}
