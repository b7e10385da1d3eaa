//! Dense linear algebra over GF(2).
//!
//! Rows are packed into `u64` words. The only consumer that needs more than
//! elimination is ℤ₂-symmetry search, which asks for null spaces of the
//! (column-swapped) symplectic check matrix of a Hamiltonian.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Concatenates two masks of `n` bits each into a `2n`-bit vector `[lo | hi]`.
    pub fn from_mask_pair(n: usize, lo: u64, hi: u64) -> Self {
        let mut v = Self::zeros(2 * n);
        for q in 0..n {
            v.set(q, (lo >> q) & 1 == 1);
            v.set(n + q, (hi >> q) & 1 == 1);
        }
        v
    }

    /// Splits a `2n`-bit vector back into its two `n`-bit halves.
    pub fn to_mask_pair(&self) -> (u64, u64) {
        let n = self.len / 2;
        let mut lo = 0u64;
        let mut hi = 0u64;
        for q in 0..n {
            if self.get(q) {
                lo |= 1 << q;
            }
            if self.get(n + q) {
                hi |= 1 << q;
            }
        }
        (lo, hi)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Gf2Vec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Reduced row echelon form. Returns the nonzero reduced rows and their pivot columns.
pub fn rref(rows: &[Gf2Vec], n_cols: usize) -> (Vec<Gf2Vec>, Vec<usize>) {
    let mut m: Vec<Gf2Vec> = rows.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(found) = (rank..m.len()).find(|&r| m[r].get(col)) else {
            continue;
        };
        m.swap(rank, found);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    (m, pivots)
}

pub fn rank(rows: &[Gf2Vec], n_cols: usize) -> usize {
    rref(rows, n_cols).1.len()
}

/// Basis of `{v : r·v = 0 for every row r}`.
///
/// Every row must have length `n_cols`. An empty row set yields the unit basis of the
/// whole space.
pub fn kernel(rows: &[Gf2Vec], n_cols: usize) -> Vec<Gf2Vec> {
    let (reduced, pivots) = rref(rows, n_cols);
    let mut is_pivot = vec![false; n_cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::with_capacity(n_cols - pivots.len());
    for free in (0..n_cols).filter(|&c| !is_pivot[c]) {
        let mut v = Gf2Vec::unit(n_cols, free);
        for (row, &p) in reduced.iter().zip(&pivots) {
            if row.get(free) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}
