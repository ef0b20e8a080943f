//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors pack 64 coordinates to a machine word. Linear maps use the row
//! convention: row `i` of a matrix is the image of the `i`-th source basis
//! vector, so the image of a map is its row space, composition is matrix
//! multiplication, and applying a map to a vector is an XOR of rows.
//!
//! Reduced row echelon form with leftmost-pivot selection is the single
//! canonicalization primitive; every rank, kernel and quotient computation
//! in the crate funnels through it, which keeps all outputs bit-reproducible.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0u64; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    /// Flip bit `i`.
    pub fn toggle(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// XOR `other` into this vector starting at bit `offset`.
    pub fn xor_shifted(&mut self, other: &BitVec, offset: usize) {
        debug_assert!(offset + other.len <= self.len);
        let word_off = offset / WORD;
        let bit_off = offset % WORD;
        if bit_off == 0 {
            for (k, &w) in other.words.iter().enumerate() {
                self.words[word_off + k] ^= w;
            }
        } else {
            for (k, &w) in other.words.iter().enumerate() {
                self.words[word_off + k] ^= w << bit_off;
                let hi = w >> (WORD - bit_off);
                if hi != 0 {
                    self.words[word_off + k + 1] ^= hi;
                }
            }
        }
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD + b)
                }
            })
        })
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A matrix over GF(2), stored as a list of bit rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: (0..rows).map(|_| BitVec::zeros(cols)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zero(n, n);
        for i in 0..n {
            m.data[i].set(i, true);
        }
        m
    }

    pub fn from_rows(data: Vec<BitVec>, cols: usize) -> Self {
        debug_assert!(data.iter().all(|r| r.len() == cols));
        BitMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.data[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut BitVec {
        &mut self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    /// Row vector times matrix: XOR of the rows selected by `v`.
    pub fn apply(&self, v: &BitVec) -> BitVec {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = BitVec::zeros(self.cols);
        for i in v.iter_ones() {
            out.xor_assign(&self.data[i]);
        }
        out
    }

    /// Matrix product `self * rhs` (row convention: apply `self`, then `rhs`).
    pub fn compose(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "composition shape mismatch");
        let data = self.data.iter().map(|r| rhs.apply(r)).collect();
        BitMatrix::from_rows(data, rhs.cols)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        BitMatrix::from_rows(data, self.cols)
    }

    /// Entrywise XOR (matrix addition over GF(2)).
    pub fn xor_assign(&mut self, other: &BitMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in self.data[i].iter_ones() {
                out.set(i, j, true);
            }
        }
        for i in 0..other.rows {
            for j in other.data[i].iter_ones() {
                out.set(self.rows + i, self.cols + j, true);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.cols, self.data.iter().cloned()).dim()
    }

    /// Basis (in reduced echelon form) of `{v : v * self = 0}`.
    pub fn left_kernel(&self) -> Echelon {
        // Eliminate on the matrix while mirroring every row operation on an
        // identity block; rows whose matrix part hits zero record kernel
        // vectors in the mirror block.
        let mut placed: Vec<(usize, BitVec, BitVec)> = Vec::new(); // (pivot, row, mirror)
        let mut kernel = Echelon::new(self.rows);
        for i in 0..self.rows {
            let mut row = self.data[i].clone();
            let mut mir = BitVec::unit(self.rows, i);
            loop {
                match row.first_one() {
                    None => {
                        kernel.insert(mir);
                        break;
                    }
                    Some(p) => {
                        if let Some((_, prow, pmir)) = placed.iter().find(|(pc, _, _)| *pc == p) {
                            row.xor_assign(prow);
                            mir.xor_assign(pmir);
                        } else {
                            placed.push((p, row, mir));
                            break;
                        }
                    }
                }
            }
        }
        kernel
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {:?}", r)?;
        }
        Ok(())
    }
}

/// A subspace of GF(2)^cols kept in reduced row echelon form.
///
/// Pivot columns are strictly increasing and each pivot column is zero in
/// every other stored row, so membership tests, canonical representatives
/// modulo the subspace, and coordinates of members are all direct reads.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = BitVec>) -> Self {
        let mut e = Echelon::new(cols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// Columns that are not pivots; the classes of their unit vectors form a
    /// basis of the quotient by this subspace.
    pub fn nonpivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cols - self.pivots.len());
        let mut it = self.pivots.iter().peekable();
        for j in 0..self.cols {
            if it.peek() == Some(&&j) {
                it.next();
            } else {
                out.push(j);
            }
        }
        out
    }

    /// Add a vector to the span. Returns true if the dimension grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let v = self.reduce_ref(v);
        let pivot = match v.first_one() {
            None => return false,
            Some(p) => p,
        };
        // clear the new pivot column from existing rows
        for r in self.rows.iter_mut() {
            if r.get(pivot) {
                r.xor_assign(&v);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, v);
        true
    }

    fn reduce_ref(&self, mut v: BitVec) -> BitVec {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(r);
            }
        }
        v
    }

    /// Canonical representative of `v` modulo the subspace.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        self.reduce_ref(v.clone())
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the echelon basis, or None if not in the span.
    pub fn coords_in_span(&self, v: &BitVec) -> Option<BitVec> {
        if !self.contains(v) {
            return None;
        }
        let mut coords = BitVec::zeros(self.rows.len());
        for (i, &p) in self.pivots.iter().enumerate() {
            if v.get(p) {
                coords.set(i, true);
            }
        }
        Some(coords)
    }

    pub fn into_matrix(self) -> BitMatrix {
        let cols = self.cols;
        BitMatrix::from_rows(self.rows, cols)
    }
}

/// Quotient of an ambient GF(2)^n by an echelon subspace, with a canonical
/// basis given by the classes of the non-pivot unit vectors.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    space: Echelon,
    nonpivots: Vec<usize>,
}

impl QuotientMap {
    pub fn new(space: Echelon) -> Self {
        let nonpivots = space.nonpivots();
        QuotientMap { space, nonpivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.cols()
    }

    pub fn dim(&self) -> usize {
        self.nonpivots.len()
    }

    pub fn nonpivots(&self) -> &[usize] {
        &self.nonpivots
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn project(&self, v: &BitVec) -> BitVec {
        let reduced = self.space.reduce(v);
        let mut out = BitVec::zeros(self.nonpivots.len());
        for (k, &j) in self.nonpivots.iter().enumerate() {
            if reduced.get(j) {
                out.set(k, true);
            }
        }
        out
    }

    /// Ambient representative of the `k`-th quotient basis vector.
    pub fn representative(&self, k: usize) -> BitVec {
        BitVec::unit(self.space.cols(), self.nonpivots[k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[u8]]) -> BitMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                let mut v = BitVec::zeros(cols);
                for (j, &b) in r.iter().enumerate() {
                    if b != 0 {
                        v.set(j, true);
                    }
                }
                v
            })
            .collect();
        BitMatrix::from_rows(data, cols)
    }

    #[test]
    fn bitvec_basics() {
        let mut v = BitVec::zeros(130);
        assert!(v.is_zero());
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.first_one(), Some(0));
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        v.toggle(0);
        assert_eq!(v.first_one(), Some(64));
    }

    #[test]
    fn rank_and_rref() {
        let m = mat(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2); // third row is the sum of the first two
        assert_eq!(BitMatrix::identity(5).rank(), 5);
        assert_eq!(BitMatrix::zero(3, 4).rank(), 0);
    }

    #[test]
    fn left_kernel_matches_rank() {
        let m = mat(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        let k = m.left_kernel();
        assert_eq!(k.dim() + m.rank(), m.rows());
        for row in k.rows() {
            assert!(m.apply(row).is_zero());
        }
    }

    #[test]
    fn compose_and_apply_agree() {
        let a = mat(&[&[1, 0, 1], &[0, 1, 1]]);
        let b = mat(&[&[1, 1], &[0, 1], &[1, 0]]);
        let ab = a.compose(&b);
        let v = BitVec::from_indices(2, &[0, 1]);
        assert_eq!(ab.apply(&v), b.apply(&a.apply(&v)));
    }

    #[test]
    fn quotient_map_coords() {
        // subspace spanned by (1,1,0) and (0,0,1) in F2^3
        let e = Echelon::from_rows(
            3,
            vec![
                BitVec::from_indices(3, &[0, 1]),
                BitVec::from_indices(3, &[2]),
            ],
        );
        let q = QuotientMap::new(e);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.nonpivots(), &[1]);
        // class of e0 equals class of e1
        let p0 = q.project(&BitVec::unit(3, 0));
        let p1 = q.project(&BitVec::unit(3, 1));
        assert_eq!(p0, p1);
        assert!(!p0.is_zero());
        assert!(q.project(&BitVec::unit(3, 2)).is_zero());
    }

    #[test]
    fn echelon_membership_and_coords() {
        let mut e = Echelon::new(4);
        assert!(e.insert(BitVec::from_indices(4, &[0, 2])));
        assert!(e.insert(BitVec::from_indices(4, &[1, 2, 3])));
        assert!(!e.insert(BitVec::from_indices(4, &[0, 1, 3]))); // sum of the two
        let v = BitVec::from_indices(4, &[0, 1, 3]);
        let coords = e.coords_in_span(&v).unwrap();
        assert_eq!(coords.iter_ones().collect::<Vec<_>>(), vec![0, 1]);
        assert!(e.coords_in_span(&BitVec::unit(4, 3)).is_none());
    }

    #[test]
    fn randomized_rank_nullity() {
        // splitmix64-driven random matrices: rank + kernel dim == rows
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        for _ in 0..20 {
            let rows = 1 + (next() % 40) as usize;
            let cols = 1 + (next() % 40) as usize;
            let data: Vec<BitVec> = (0..rows)
                .map(|_| {
                    let mut v = BitVec::zeros(cols);
                    for j in 0..cols {
                        if next() & 1 == 1 {
                            v.set(j, true);
                        }
                    }
                    v
                })
                .collect();
            let m = BitMatrix::from_rows(data, cols);
            assert_eq!(m.rank() + m.left_kernel().dim(), rows);
        }
    }
}
