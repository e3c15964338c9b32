//! Dense matrices over F_2, row-packed into 64-bit words.

use rand::Rng;

#[inline]
pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub fn get_bit(v: &[u64], i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub fn set_bit(v: &mut [u64], i: usize, bit: bool) {
    let w = &mut v[i / 64];
    let mask = 1u64 << (i % 64);
    if bit {
        *w |= mask;
    } else {
        *w &= !mask;
    }
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Parity of the popcount of `a & b`, i.e. the dot product over F_2.
#[inline]
pub fn dot(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones())
        & 1
        == 1
}

pub fn unit_vector(len: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; words_for(len)];
    set_bit(&mut v, i, true);
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![vec![0u64; words_for(cols)]; rows],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = BitMatrix::zeros(k, k);
        for i in 0..k {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, rng.gen());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        get_bit(&self.data[i], j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        set_bit(&mut self.data[i], j, bit)
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|&w| w == 0))
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// `self * v` for a packed column vector `v`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; words_for(self.rows)];
        for (i, row) in self.data.iter().enumerate() {
            if dot(row, v) {
                set_bit(&mut out, i, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    xor_into(&mut out.data[i], &other.data[k]);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (d, s) in out.data.iter_mut().zip(&other.data) {
            xor_into(d, s);
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, col)) else {
                continue;
            };
            self.data.swap(r, p);
            let pivot_row = self.data[r].clone();
            for i in 0..self.rows {
                if i != r && self.get(i, col) {
                    xor_into(&mut self.data[i], &pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&free| !is_pivot[free])
            .map(|free| {
                let mut v = unit_vector(self.cols, free);
                for (r, &p) in pivots.iter().enumerate() {
                    if m.get(r, free) {
                        set_bit(&mut v, p, true);
                    }
                }
                v
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_and_nullspace() {
        let m = BitMatrix::from_fn(3, 3, |i, j| [[1, 1, 0], [0, 1, 1], [1, 0, 1]][i][j] == 1);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], 0b111);
        assert_eq!(BitMatrix::identity(70).rank(), 70);
    }

    #[test]
    fn rank_nullity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rows = rng.gen_range(1..90);
            let cols = rng.gen_range(1..90);
            let m = BitMatrix::random(rows, cols, &mut rng);
            let ns = m.nullspace();
            assert_eq!(m.rank() + ns.len(), cols);
            for v in &ns {
                assert!(m.mul_vec(v).iter().all(|&w| w == 0));
            }
            assert_eq!(m.transpose().rank(), m.rank());
        }
    }

    #[test]
    fn product_associates_with_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = BitMatrix::random(40, 70, &mut rng);
        let b = BitMatrix::random(70, 65, &mut rng);
        let v: Vec<u64> = (0..words_for(65)).map(|_| rng.gen()).collect::<Vec<_>>();
        let mut v = v;
        v[1] &= 1;
        assert_eq!(a.mul(&b).mul_vec(&v), a.mul_vec(&b.mul_vec(&v)));
    }
}
