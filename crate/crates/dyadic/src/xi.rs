//! Self-similar xi-sequences: seeded by their second point, satisfying
//! p_{4i} = p_i / 2, generated by five shift-XOR operations per seed and a
//! 16-step loop per sample.
//!
//! The fast path works in 32-bit fixed point (a `u32` is the fraction
//! `0.b31 b30 ...` with the most significant bit first); the matrix path via
//! [`xi_pair`] supports any dimension up to 64 and is used for
//! cross-validation.

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::pairs::{GeneratorPair, Point};

/// The constant xi = 0.01101000100000001... as a 32-bit fraction; fractional
/// bit p is set exactly when p = 2^k + 1.
pub const XI: u32 = 0x6880_8000;

/// xi+ = xi XOR 0.1 (the same constant with the leading half added).
pub const XI_PLUS: u32 = 0xE880_8000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XiError {
    /// Seed coordinates must lie in [1/2, 1): the leading bit must be 1.
    #[error("invalid seed: leading bit of both coordinates must be 1")]
    InvalidSeed,
    /// Lookup tables cover 1, 4 or 8 base-4 digits per step.
    #[error("invalid lookup level {0}; supported levels are 1, 4 and 8")]
    InvalidLookupLevel(u32),
}

/// Carryless multiplication by 2*xi, the seeding kernel: exactly five
/// shift-and-XOR operations.
#[inline]
pub fn carryless_xi_mul(a: u32) -> u32 {
    let mut b = a >> 1;
    b ^= a >> 2;
    b ^= a >> 4;
    b ^= a >> 8;
    b ^= a >> 16;
    b
}

/// A xi-sequence, compressed to its four anchor points p_0 = (0,0),
/// p_1 = (X, Y), p_2 = (xi(X), xi+(Y)), p_3 = p_1 + p_2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XiSeed {
    anchors: [(u32, u32); 4],
    /// The anchors with y- and x-bits interleaved (y first), for Morton
    /// generation and inversion.
    anchors_z: [u64; 4],
}

/// Build a seed from the coordinates of the second point.
///
/// Both coordinates must have their leading bit set. The four anchors are
/// checked to land in distinct quadrants, which inversion relies on; this
/// holds for every valid seed.
pub fn seed(x: u32, y: u32) -> Result<XiSeed, XiError> {
    if x & 0x8000_0000 == 0 || y & 0x8000_0000 == 0 {
        return Err(XiError::InvalidSeed);
    }
    let b = carryless_xi_mul(x);
    let b_plus = carryless_xi_mul(y) ^ y;
    let anchors = [(0, 0), (x, y), (b, b_plus), (x ^ b, y ^ b_plus)];
    let anchors_z = anchors.map(|(px, py)| shuffle(px, py));
    let mut quadrants = [false; 4];
    for z in anchors_z {
        quadrants[(z >> 62) as usize] = true;
    }
    if quadrants != [true; 4] {
        return Err(XiError::InvalidSeed);
    }
    Ok(XiSeed { anchors, anchors_z })
}

impl XiSeed {
    pub fn x(&self) -> u32 {
        self.anchors[1].0
    }

    pub fn y(&self) -> u32 {
        self.anchors[1].1
    }

    pub fn p1(&self) -> Point {
        Point::new(self.anchors[1].0 as u64, self.anchors[1].1 as u64, 32)
    }

    pub fn p2(&self) -> Point {
        Point::new(self.anchors[2].0 as u64, self.anchors[2].1 as u64, 32)
    }

    pub fn p3(&self) -> Point {
        Point::new(self.anchors[3].0 as u64, self.anchors[3].1 as u64, 32)
    }

    /// Sample retrieval: XOR one anchor per base-4 digit of `seq_no`, each
    /// level shifted one bit further down.
    #[inline]
    pub fn get_sample(&self, seq_no: u32) -> Point {
        let (x, y) = self.sample_xy(seq_no);
        Point::new(x as u64, y as u64, 32)
    }

    /// The raw sample kernel, without the [`Point`] wrapper.
    #[inline]
    pub fn sample_xy(&self, seq_no: u32) -> (u32, u32) {
        let (mut x, mut y) = (0u32, 0u32);
        let mut s = seq_no;
        for depth in 0..16 {
            let (px, py) = self.anchors[(s & 3) as usize];
            x ^= px >> depth;
            y ^= py >> depth;
            s >>= 2;
        }
        (x, y)
    }

    /// The sample as a Morton index z = 0.y0 x0 y1 x1 ..., generated
    /// directly from pre-shuffled anchors.
    #[inline]
    pub fn get_sample_morton(&self, seq_no: u32) -> u64 {
        let mut z = 0u64;
        let mut s = seq_no;
        for depth in 0..16 {
            z ^= self.anchors_z[(s & 3) as usize] >> (2 * depth);
            s >>= 2;
        }
        z
    }

    /// Invert the Morton map: given the leading `bits` bits of a sample's
    /// Morton index (a stratum), return the sequence number of the first
    /// sample inside that stratum.
    ///
    /// With `bits = 64` this is the exact inverse of
    /// [`Self::get_sample_morton`].
    pub fn invert(&self, z: u64, bits: u32) -> u32 {
        let bits = bits.min(64);
        let mut z = if bits == 0 {
            0
        } else {
            z & (!0u64 << (64 - bits))
        };
        let digits = self.anchors_z.map(|a| (a >> 62) as u32);
        let mut s = 0u32;
        let full = (bits / 2).min(16);
        for i in 0..full {
            let want = (z >> 62) as u32;
            let q = (0..4).find(|&q| digits[q as usize] == want).unwrap();
            s |= q << (2 * i);
            z = (z ^ self.anchors_z[q as usize]) << 2;
        }
        if bits % 2 == 1 && full < 16 {
            // Half a digit: only the y-bit of the next level is constrained;
            // two anchors match it, and the smaller index comes first.
            let want = (z >> 63) as u32;
            let q = (0..4)
                .filter(|&q| digits[q as usize] >> 1 == want)
                .min()
                .unwrap();
            s |= q << (2 * full);
        }
        s
    }

    /// Expand the seed into a table of the first 4^level samples, for
    /// retrieval in 16/level loop iterations.
    pub fn build_lookup(&self, level: u32) -> Result<XiLookupTable, XiError> {
        if !matches!(level, 1 | 4 | 8) {
            return Err(XiError::InvalidLookupLevel(level));
        }
        let table: Vec<(u32, u32)> = (0..1u32 << (2 * level))
            .map(|q| {
                let p = self.get_sample(q);
                (p.x as u32, p.y as u32)
            })
            .collect();
        Ok(XiLookupTable { level, table })
    }
}

/// Precomputed sample table consuming `level` base-4 digits per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiLookupTable {
    level: u32,
    table: Vec<(u32, u32)>,
}

impl XiLookupTable {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn entries(&self) -> usize {
        self.table.len()
    }

    /// Bit-exact equivalent of [`XiSeed::get_sample`] with 16/level
    /// iterations.
    #[inline]
    pub fn get_sample(&self, seq_no: u32) -> Point {
        let (x, y) = self.sample_xy(seq_no);
        Point::new(x as u64, y as u64, 32)
    }

    /// The raw table kernel, without the [`Point`] wrapper.
    #[inline]
    pub fn sample_xy(&self, seq_no: u32) -> (u32, u32) {
        // Dispatch to a constant level so the loop unrolls and the masked
        // index provably stays in bounds.
        match self.level {
            1 => self.sample_steps::<1>(seq_no),
            4 => self.sample_steps::<4>(seq_no),
            _ => self.sample_steps::<8>(seq_no),
        }
    }

    #[inline]
    fn sample_steps<const LEVEL: u32>(&self, seq_no: u32) -> (u32, u32) {
        let table: &[(u32, u32)] = &self.table[..1 << (2 * LEVEL)];
        let (mut x, mut y) = (0u32, 0u32);
        let mut s = seq_no;
        let mask = (1u32 << (2 * LEVEL)) - 1;
        let mut shift = 0;
        for _ in 0..16 / LEVEL {
            let (px, py) = table[(s & mask) as usize];
            x ^= px >> shift;
            y ^= py >> shift;
            s >>= 2 * LEVEL;
            shift += LEVEL;
        }
        (x, y)
    }
}

/// Interleave two 32-bit fractions into the Morton fraction
/// 0.y0 x0 y1 x1 ... (y contributes the leading bit).
#[inline]
pub fn shuffle(x: u32, y: u32) -> u64 {
    (spread(y) << 1) | spread(x)
}

/// Split a Morton fraction back into (x, y).
#[inline]
pub fn unshuffle(z: u64) -> (u32, u32) {
    (compact(z), compact(z >> 1))
}

/// Place bit k of the input at bit 2k.
#[inline]
fn spread(v: u32) -> u64 {
    let mut x = v as u64;
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Inverse of [`spread`]: collect the even-position bits.
#[inline]
fn compact(z: u64) -> u32 {
    let mut x = z & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x >> 4)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x >> 8)) & 0x0000_ffff_0000_ffff;
    x = (x | (x >> 16)) & 0x0000_0000_ffff_ffff;
    x as u32
}

/// Carryless multiplication by 2*xi at vector width, the m-bit analog of
/// [`carryless_xi_mul`].
pub fn xi_of_vector(a: BitVector) -> BitVector {
    let m = a.dim();
    let mut bits = 0u64;
    for shift in [1usize, 2, 4, 8, 16, 32] {
        if shift < m {
            bits ^= a.value() >> shift;
        }
    }
    BitVector::from_int(bits, m)
}

/// The self-similar matrix with first column `a` and second column `b`:
/// columns 2j-1 and 2j carry a and b pushed down j-1 rows.
///
/// Progressive exactly when b is xi(a) or xi+(a); see
/// [`build_xi_matrix_plus`] for those two cases.
pub fn staggered_matrix(a: BitVector, b: BitVector) -> BitMatrix {
    let m = a.dim();
    let mut c = BitMatrix::zero(m);
    for col in 0..m {
        let (src, down) = if col % 2 == 0 {
            (a, col / 2)
        } else {
            (b, col / 2)
        };
        for row in down..m {
            if src.get(row - down + 1) {
                c.set(row, col, true);
            }
        }
    }
    c
}

/// The progressive self-similar matrix C_{xi(a)} for a seed vector starting
/// with bit 1.
pub fn build_xi_matrix(a: BitVector) -> Result<BitMatrix, XiError> {
    build_xi_matrix_plus(a, false)
}

/// Same with the xi+ variant of the second column (b_0 flipped).
pub fn build_xi_matrix_plus(a: BitVector, plus: bool) -> Result<BitMatrix, XiError> {
    if !a.get(1) {
        return Err(XiError::InvalidSeed);
    }
    let mut b = xi_of_vector(a);
    if plus {
        b = b ^ a;
    }
    Ok(staggered_matrix(a, b))
}

/// The progressive pair (C_{xi(x)}, C_{xi+(y)}) generating the xi-sequence
/// with second point (x, y); the matrix-path counterpart of [`seed`].
pub fn xi_pair(x: BitVector, y: BitVector) -> Result<GeneratorPair, XiError> {
    Ok(GeneratorPair::new(
        build_xi_matrix_plus(x, false)?,
        build_xi_matrix_plus(y, true)?,
    ))
}
