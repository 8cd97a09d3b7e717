//! Bit-parallel linear algebra over GF(2).
//!
//! Vectors and square matrices of dimension 1..=64 are packed into machine
//! words: a vector is one `u64`, a matrix is one `u64` per row. Vector bit 1
//! is the most significant fractional digit, so the packed word of an m-bit
//! vector is exactly the fixed-point coordinate integer in `[0, 2^m)`.
//! All sums are mod 2 (XOR), all products are AND.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported dimension; one row fits a machine word.
pub const MAX_DIM: usize = 64;

/// Errors from GF(2) linear algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    /// The matrix has rank < m and cannot be inverted.
    #[error("matrix is singular")]
    Singular,
    /// Some leading principal minor is zero; no unitriangular LU factorization exists.
    #[error("matrix is not progressive (leading principal minor {0} is zero)")]
    NotProgressive(usize),
    /// Dimension outside 1..=64.
    #[error("dimension {0} outside supported range 1..={MAX_DIM}")]
    InvalidDimension(usize),
    /// Malformed text representation.
    #[error("parse error: {0}")]
    Parse(String),
}

fn dim_mask(m: usize) -> u64 {
    debug_assert!((1..=MAX_DIM).contains(&m));
    u64::MAX >> (64 - m)
}

/// Column vector over GF(2) with bits indexed 1..=m, bit 1 most significant.
///
/// The packed word equals the m-bit integer `sum_i bit_i * 2^(m-i)`, i.e. the
/// numerator of the fixed-point fraction `0.b_1 b_2 ... b_m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: u64,
    m: u8,
}

impl BitVector {
    /// The zero vector of dimension `m`.
    pub fn zero(m: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&m), "dimension {m} out of range");
        BitVector {
            bits: 0,
            m: m as u8,
        }
    }

    /// Vector from its packed integer value (must fit in `m` bits).
    pub fn from_int(value: u64, m: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&m), "dimension {m} out of range");
        assert!(
            m == 64 || value < (1u64 << m),
            "value {value} does not fit in {m} bits"
        );
        BitVector {
            bits: value,
            m: m as u8,
        }
    }

    /// The index vector S_i: integer bit k of `i` lands at vector position k+1.
    ///
    /// Enumerating i = 0, 1, 2, ... yields (0,..,0), (1,0,..,0), (0,1,0,..,0), ...
    pub fn from_index(i: u64, m: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&m), "dimension {m} out of range");
        assert!(
            m == 64 || i < (1u64 << m),
            "index {i} out of range for m={m}"
        );
        BitVector {
            bits: i.reverse_bits() >> (64 - m),
            m: m as u8,
        }
    }

    pub fn dim(&self) -> usize {
        self.m as usize
    }

    /// Packed integer value (the fixed-point numerator).
    pub fn value(&self) -> u64 {
        self.bits
    }

    /// Bit at 1-based position `i` (1 = most significant).
    pub fn get(&self, i: usize) -> bool {
        assert!((1..=self.dim()).contains(&i));
        (self.bits >> (self.dim() - i)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!((1..=self.dim()).contains(&i));
        let pos = self.dim() - i;
        if value {
            self.bits |= 1 << pos;
        } else {
            self.bits &= !(1 << pos);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Truncation to the leading `k` bits (a new k-dimensional vector).
    pub fn truncate(&self, k: usize) -> BitVector {
        assert!((1..=self.dim()).contains(&k));
        BitVector {
            bits: self.bits >> (self.dim() - k),
            m: k as u8,
        }
    }
}

impl std::ops::BitXor for BitVector {
    type Output = BitVector;
    fn bitxor(self, rhs: BitVector) -> BitVector {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        BitVector {
            bits: self.bits ^ rhs.bits,
            m: self.m,
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.dim() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Gf2Error> {
        let s = s.trim();
        if s.is_empty() || s.len() > MAX_DIM {
            return Err(Gf2Error::Parse(format!("bad vector length {}", s.len())));
        }
        let mut v = BitVector::zero(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i + 1, true),
                _ => return Err(Gf2Error::Parse(format!("bad character {c:?}"))),
            }
        }
        Ok(v)
    }
}

/// Square matrix over GF(2), row i packed like a [`BitVector`] (column 1 most
/// significant). Row 1 produces the most significant output bit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<u64>,
    m: u8,
}

/// Unitriangular LU factorization: `lower * upper` reproduces the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LuDecomposition {
    /// Lower unitriangular factor.
    pub lower: BitMatrix,
    /// Upper unitriangular factor.
    pub upper: BitMatrix,
}

impl BitMatrix {
    pub fn zero(m: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&m), "dimension {m} out of range");
        BitMatrix {
            rows: vec![0; m],
            m: m as u8,
        }
    }

    pub fn identity(m: usize) -> Self {
        let mut a = BitMatrix::zero(m);
        for i in 0..m {
            a.rows[i] = 1 << (m - 1 - i);
        }
        a
    }

    /// Anti-diagonal matrix J: entry (i, j) = 1 iff i + j = m + 1 (1-based).
    pub fn anti_diagonal(m: usize) -> Self {
        let mut a = BitMatrix::zero(m);
        for i in 0..m {
            a.rows[i] = 1 << i;
        }
        a
    }

    /// Binary Pascal matrix: entry (i, j) = binom(j-1, i-1) mod 2 (1-based).
    ///
    /// By Lucas' theorem the entry is 1 iff the bits of i-1 are a subset of
    /// the bits of j-1, so no binomials are actually computed.
    pub fn pascal(m: usize) -> Self {
        let mut a = BitMatrix::zero(m);
        for i in 0..m as u64 {
            for j in 0..m as u64 {
                if i & j == i {
                    a.rows[i as usize] |= 1 << (m as u64 - 1 - j);
                }
            }
        }
        a
    }

    pub fn from_rows(rows: &[BitVector]) -> Self {
        let m = rows.len();
        assert!((1..=MAX_DIM).contains(&m), "dimension {m} out of range");
        assert!(
            rows.iter().all(|r| r.dim() == m),
            "rows must have dimension {m}"
        );
        BitMatrix {
            rows: rows.iter().map(|r| r.value()).collect(),
            m: m as u8,
        }
    }

    pub fn dim(&self) -> usize {
        self.m as usize
    }

    /// Entry at 0-based (row, col); row 0 / col 0 correspond to index 1 in
    /// the 1-based a_{ij} convention.
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.dim() && col < self.dim());
        (self.rows[row] >> (self.dim() - 1 - col)) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.dim() && col < self.dim());
        let pos = self.dim() - 1 - col;
        if value {
            self.rows[row] |= 1 << pos;
        } else {
            self.rows[row] &= !(1 << pos);
        }
    }

    pub fn row(&self, row: usize) -> BitVector {
        assert!(row < self.dim());
        BitVector {
            bits: self.rows[row],
            m: self.m,
        }
    }

    pub fn column(&self, col: usize) -> BitVector {
        assert!(col < self.dim());
        let m = self.dim();
        let mut bits = 0u64;
        for (i, &r) in self.rows.iter().enumerate() {
            bits |= ((r >> (m - 1 - col)) & 1) << (m - 1 - i);
        }
        BitVector { bits, m: self.m }
    }

    pub fn set_column(&mut self, col: usize, v: BitVector) {
        assert_eq!(v.dim(), self.dim(), "dimension mismatch");
        for i in 0..self.dim() {
            self.set(i, col, v.get(i + 1));
        }
    }

    /// Matrix product over GF(2). Panics on dimension mismatch.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.m, other.m, "dimension mismatch");
        let m = self.dim();
        let mut out = BitMatrix::zero(m);
        for i in 0..m {
            let mut acc = 0u64;
            let mut row = self.rows[i];
            while row != 0 {
                let k = m - 1 - row.trailing_zeros() as usize;
                acc ^= other.rows[k];
                row &= row - 1;
            }
            out.rows[i] = acc;
        }
        out
    }

    /// Matrix-vector product: one AND plus a parity per row.
    pub fn mul_vec(&self, v: BitVector) -> BitVector {
        assert_eq!(self.m, v.m, "dimension mismatch");
        let m = self.dim();
        let mut bits = 0u64;
        for (i, &r) in self.rows.iter().enumerate() {
            bits |= (((r & v.bits).count_ones() & 1) as u64) << (m - 1 - i);
        }
        BitVector { bits, m: self.m }
    }

    pub fn transpose(&self) -> BitMatrix {
        let m = self.dim();
        let mut out = BitMatrix::zero(m);
        for i in 0..m {
            for j in 0..m {
                if self.get(i, j) {
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    /// Leading principal k x k submatrix.
    pub fn leading(&self, k: usize) -> BitMatrix {
        assert!((1..=self.dim()).contains(&k));
        let shift = self.dim() - k;
        BitMatrix {
            rows: self.rows[..k].iter().map(|r| r >> shift).collect(),
            m: k as u8,
        }
    }

    pub fn is_invertible(&self) -> bool {
        let mut rows = self.rows.clone();
        rows_invertible(&mut rows, self.dim())
    }

    /// Inverse by Gauss-Jordan elimination with first-nonzero-row pivoting.
    pub fn inverse(&self) -> Result<BitMatrix, Gf2Error> {
        let m = self.dim();
        let mut a = self.rows.clone();
        let mut inv = BitMatrix::identity(m).rows;
        for col in 0..m {
            let bit = 1u64 << (m - 1 - col);
            let pivot = (col..m)
                .find(|&r| a[r] & bit != 0)
                .ok_or(Gf2Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..m {
                if r != col && a[r] & bit != 0 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Ok(BitMatrix {
            rows: inv,
            m: self.m,
        })
    }

    /// Unitriangular LU factorization (exists iff the matrix is progressive).
    pub fn lu(&self) -> Result<LuDecomposition, Gf2Error> {
        let m = self.dim();
        let mut a = self.rows.clone();
        let mut lower = BitMatrix::identity(m);
        for k in 0..m {
            let bit = 1u64 << (m - 1 - k);
            if a[k] & bit == 0 {
                return Err(Gf2Error::NotProgressive(k + 1));
            }
            for i in k + 1..m {
                if a[i] & bit != 0 {
                    a[i] ^= a[k];
                    lower.rows[i] |= bit;
                }
            }
        }
        Ok(LuDecomposition {
            lower,
            upper: BitMatrix { rows: a, m: self.m },
        })
    }

    /// True iff every leading principal minor is 1, i.e. [`Self::lu`] succeeds.
    pub fn is_progressive(&self) -> bool {
        let m = self.dim();
        let mut a = self.rows.clone();
        for k in 0..m {
            let bit = 1u64 << (m - 1 - k);
            if a[k] & bit == 0 {
                return false;
            }
            let pivot = a[k];
            for row in a.iter_mut().skip(k + 1) {
                if *row & bit != 0 {
                    *row ^= pivot;
                }
            }
        }
        true
    }

    /// Determinant over GF(2), computed by elimination.
    pub fn determinant(&self) -> bool {
        self.is_invertible()
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        let m = self.dim();
        (0..m).all(|i| {
            let above = if i + 1 < m { dim_mask(m - 1 - i) } else { 0 };
            self.get(i, i) && self.rows[i] & above == 0
        })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        let m = self.dim();
        (0..m).all(|i| self.get(i, i) && self.rows[i] >> (m - i) == 0)
    }
}

/// In-place invertibility test on raw packed rows of the given dimension.
/// Shared by the hybrid-matrix checks which assemble rows from two matrices.
pub(crate) fn rows_invertible(rows: &mut [u64], dim: usize) -> bool {
    debug_assert_eq!(rows.len(), dim);
    for col in 0..dim {
        let bit = 1u64 << (dim - 1 - col);
        let Some(pivot) = (col..dim).find(|&r| rows[r] & bit != 0) else {
            return false;
        };
        rows.swap(col, pivot);
        let pivot_row = rows[col];
        for row in rows.iter_mut().skip(col + 1) {
            if *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
    }
    true
}

impl fmt::Display for BitMatrix {
    /// Matrix text format: m lines of m characters in {0,1}, row 1 first,
    /// column 1 leftmost.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix(m={})", self.dim())?;
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BitMatrix {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Gf2Error> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let m = lines.len();
        if !(1..=MAX_DIM).contains(&m) {
            return Err(Gf2Error::InvalidDimension(m));
        }
        let mut rows = Vec::with_capacity(m);
        for line in lines {
            if line.len() != m {
                return Err(Gf2Error::Parse(format!(
                    "row {line:?} has length {} in a {m}x{m} matrix",
                    line.len()
                )));
            }
            let v: BitVector = line.parse()?;
            rows.push(v);
        }
        Ok(BitMatrix::from_rows(&rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Per-entry triple-loop product, the independent oracle for `mul`.
    fn naive_mul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
        let m = a.dim();
        let mut out = BitMatrix::zero(m);
        for i in 0..m {
            for j in 0..m {
                let mut e = false;
                for k in 0..m {
                    e ^= a.get(i, k) & b.get(k, j);
                }
                out.set(i, j, e);
            }
        }
        out
    }

    /// Cofactor-expansion determinant, oracle for small dimensions.
    fn cofactor_det(a: &BitMatrix) -> bool {
        let m = a.dim();
        if m == 1 {
            return a.get(0, 0);
        }
        let mut det = false;
        for j in 0..m {
            if !a.get(0, j) {
                continue;
            }
            let mut minor = BitMatrix::zero(m - 1);
            for i in 1..m {
                let mut cc = 0;
                for c in 0..m {
                    if c != j {
                        minor.set(i - 1, cc, a.get(i, c));
                        cc += 1;
                    }
                }
            }
            det ^= cofactor_det(&minor);
        }
        det
    }

    fn random_matrix(m: usize, rng: &mut impl Rng) -> BitMatrix {
        let mut a = BitMatrix::zero(m);
        for i in 0..m {
            a.rows[i] = rng.gen::<u64>() & dim_mask(m);
        }
        a
    }

    fn all_matrices(m: usize) -> impl Iterator<Item = BitMatrix> {
        let cells = m * m;
        (0u64..1 << cells).map(move |code| {
            let mut a = BitMatrix::zero(m);
            for t in 0..cells {
                if (code >> t) & 1 == 1 {
                    a.set(t / m, t % m, true);
                }
            }
            a
        })
    }

    #[test]
    fn identity_times_identity() {
        for m in [1, 2, 7, 8, 33, 64] {
            let i = BitMatrix::identity(m);
            assert_eq!(i.mul(&i), i);
        }
    }

    #[test]
    fn pascal_is_self_inverse_at_8() {
        let p = BitMatrix::pascal(8);
        assert_eq!(p.mul(&p), BitMatrix::identity(8));
        assert_eq!(p.inverse().unwrap(), p);
    }

    #[test]
    fn mul_matches_naive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let a = random_matrix(8, &mut rng);
            let b = random_matrix(8, &mut rng);
            assert_eq!(a.mul(&b), naive_mul(&a, &b));
        }
    }

    #[test]
    fn mul_vec_basics() {
        let v = BitVector::from_int(0b1011, 4);
        assert_eq!(BitMatrix::identity(4).mul_vec(v), v);

        // J reverses coordinates: (1,0,0,0) -> (0,0,0,1).
        let j = BitMatrix::anti_diagonal(4);
        let e1 = BitVector::from_int(0b1000, 4);
        assert_eq!(j.mul_vec(e1), BitVector::from_int(0b0001, 4));

        // Column 2 of P(4) is (1,1,0,0).
        let p = BitMatrix::pascal(4);
        let e2 = BitVector::from_int(0b0100, 4);
        assert_eq!(p.mul_vec(e2), BitVector::from_int(0b1100, 4));
    }

    #[test]
    fn mul_vec_matches_per_entry() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let a = random_matrix(9, &mut rng);
            let v = BitVector::from_int(rng.gen::<u64>() & dim_mask(9), 9);
            let want = {
                let mut w = BitVector::zero(9);
                for i in 0..9 {
                    let mut e = false;
                    for k in 0..9 {
                        e ^= a.get(i, k) & v.get(k + 1);
                    }
                    w.set(i + 1, e);
                }
                w
            };
            assert_eq!(a.mul_vec(v), want);
        }
    }

    #[test]
    fn invert_identity_and_pascal() {
        assert_eq!(
            BitMatrix::identity(6).inverse().unwrap(),
            BitMatrix::identity(6)
        );
        let p = BitMatrix::pascal(8);
        assert_eq!(p.inverse().unwrap(), p);
    }

    #[test]
    fn invertible_4x4_count_is_20160() {
        // (2^4-1)(2^4-2)(2^4-4)(2^4-8) = 20160 nonsingular 4x4 matrices.
        let mut count = 0u32;
        for a in all_matrices(4) {
            if a.is_invertible() {
                count += 1;
                let inv = a.inverse().unwrap();
                assert_eq!(a.mul(&inv), BitMatrix::identity(4));
            } else {
                assert_eq!(a.inverse(), Err(Gf2Error::Singular));
            }
        }
        assert_eq!(count, 20160);
    }

    #[test]
    fn lu_identity() {
        let i = BitMatrix::identity(5);
        let lu = i.lu().unwrap();
        assert_eq!(lu.lower, i);
        assert_eq!(lu.upper, i);
    }

    #[test]
    fn lu_of_pj_is_jpj_times_p() {
        // PJ = JPJ * P, with JPJ lower and P upper unitriangular; by
        // uniqueness the factorization must return exactly these factors.
        let m = 8;
        let p = BitMatrix::pascal(m);
        let j = BitMatrix::anti_diagonal(m);
        let pj = p.mul(&j);
        let lu = pj.lu().unwrap();
        assert_eq!(lu.lower, j.mul(&p).mul(&j));
        assert_eq!(lu.upper, p);
    }

    #[test]
    fn lu_round_trip_and_uniqueness() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let m = 5;
            // Random progressive matrix built as L*U.
            let l = crate::constructions::random_lower_unitriangular(m, &mut rng);
            let u = crate::constructions::random_upper_unitriangular(m, &mut rng);
            let a = l.mul(&u);
            assert!(a.is_progressive());
            let lu = a.lu().unwrap();
            assert!(lu.lower.is_lower_unitriangular());
            assert!(lu.upper.is_upper_unitriangular());
            assert_eq!(lu.lower.mul(&lu.upper), a);
            // Unique factors: recover the generators bit for bit.
            assert_eq!(lu.lower, l);
            assert_eq!(lu.upper, u);
        }
    }

    #[test]
    fn pascal_matches_printed_8x8_block() {
        let want = "11111111\n\
                    01010101\n\
                    00110011\n\
                    00010001\n\
                    00001111\n\
                    00000101\n\
                    00000011\n\
                    00000001";
        assert_eq!(BitMatrix::pascal(8), want.parse().unwrap());
        assert_eq!(BitMatrix::pascal(1), "1".parse().unwrap());
        // Leading-submatrix consistency.
        assert_eq!(BitMatrix::pascal(8).leading(4), BitMatrix::pascal(4));
    }

    #[test]
    fn anti_diagonal_basics() {
        let j2 = BitMatrix::anti_diagonal(2);
        assert_eq!(j2, "01\n10".parse().unwrap());
        for m in [1, 2, 3, 8, 17] {
            let j = BitMatrix::anti_diagonal(m);
            assert_eq!(j.mul(&j), BitMatrix::identity(m));
            let jpj = j.mul(&BitMatrix::pascal(m)).mul(&j);
            assert!(jpj.is_lower_unitriangular());
        }
    }

    #[test]
    fn pascal_identities_up_to_32() {
        for m in 1..=32 {
            let p = BitMatrix::pascal(m);
            let j = BitMatrix::anti_diagonal(m);
            let i = BitMatrix::identity(m);
            assert_eq!(p.mul(&p), i, "P^2 != I at m={m}");
            let pj = p.mul(&j);
            assert_eq!(pj.mul(&pj).mul(&pj), i, "(PJ)^3 != I at m={m}");
            assert_eq!(p.mul(&j).mul(&p), j.mul(&p).mul(&j), "PJP != JPJ at m={m}");
        }
    }

    #[test]
    fn progressive_iff_leading_minors_nonzero() {
        // Cross-check against the cofactor-expansion determinant oracle.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..300 {
            let m = rng.gen_range(1..=6);
            let a = random_matrix(m, &mut rng);
            let by_minors = (1..=m).all(|k| cofactor_det(&a.leading(k)));
            assert_eq!(a.is_progressive(), by_minors);
            assert_eq!(a.lu().is_ok(), by_minors);
            assert_eq!(a.is_invertible(), cofactor_det(&a));
        }
    }

    #[test]
    fn progressive_examples() {
        assert!(BitMatrix::identity(4).is_progressive());
        assert!(!BitMatrix::anti_diagonal(2).is_progressive());
        assert!(!BitMatrix::anti_diagonal(8).is_progressive());
        assert!(BitMatrix::identity(1).is_progressive());
    }

    #[test]
    fn index_vector_order() {
        // (0,..,0), (1,0,..,0), (0,1,..,0), (1,1,0,..,0), ...
        assert_eq!(BitVector::from_index(0, 3).to_string(), "000");
        assert_eq!(BitVector::from_index(1, 3).to_string(), "100");
        assert_eq!(BitVector::from_index(2, 3).to_string(), "010");
        assert_eq!(BitVector::from_index(3, 3).to_string(), "110");
        assert_eq!(BitVector::from_index(7, 3).to_string(), "111");
    }

    #[test]
    fn display_parse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in [1, 2, 8, 31, 64] {
            let a = random_matrix(m, &mut rng);
            let b: BitMatrix = a.to_string().parse().unwrap();
            assert_eq!(a, b);
        }
        assert!("10\n011".parse::<BitMatrix>().is_err());
        assert!("1x\n01".parse::<BitMatrix>().is_err());
    }

    proptest! {
        #[test]
        fn prop_mul_matches_naive(rows_a in prop::array::uniform4(0u64..16), rows_b in prop::array::uniform4(0u64..16)) {
            let a = BitMatrix { rows: rows_a.to_vec(), m: 4 };
            let b = BitMatrix { rows: rows_b.to_vec(), m: 4 };
            prop_assert_eq!(a.mul(&b), naive_mul(&a, &b));
        }

        #[test]
        fn prop_inverse_round_trip(rows in prop::array::uniform6(0u64..64)) {
            let a = BitMatrix { rows: rows.to_vec(), m: 6 };
            if let Ok(inv) = a.inverse() {
                prop_assert_eq!(a.mul(&inv), BitMatrix::identity(6));
                prop_assert_eq!(inv.mul(&a), BitMatrix::identity(6));
            } else {
                prop_assert!(!a.is_invertible());
            }
        }
    }
}
