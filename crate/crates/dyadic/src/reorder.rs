//! Reordering: turn a digital dyadic net into a digital dyadic sequence, and
//! recover a generator pair from a raw point set when one exists.

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::pairs::{is_dyadic_pair, GeneratorPair, Point, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReorderError {
    /// Some hybrid matrix of the input pair is singular.
    #[error("input pair is not a dyadic pair")]
    NotDyadic,
    /// The point set admits no digital-sequence construction.
    #[error("point set is not a digital dyadic net: {0}")]
    NotDigital(NotDigitalReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotDigitalReason {
    /// The x-coordinates are not a complete residue system mod 2^m.
    DuplicateX,
    /// Some point disagrees with the candidate generator columns.
    PointMismatch,
    /// The candidate pair fails the hybrid-matrix condition.
    NotDyadic,
}

impl std::fmt::Display for NotDigitalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NotDigitalReason::DuplicateX => "duplicate_x",
            NotDigitalReason::PointMismatch => "point_mismatch",
            NotDigitalReason::NotDyadic => "not_dyadic",
        })
    }
}

/// Reorder a digital dyadic net into a digital dyadic sequence generating the
/// same point set.
///
/// With C the characteristic matrix and C J = L U, the returned pair is
/// (J U^{-1} P J, L P J). It is progressive and has the same characteristic
/// as the input; affine offsets are carried through unchanged.
pub fn net_to_sequence(pair: &GeneratorPair) -> Result<GeneratorPair, ReorderError> {
    if !is_dyadic_pair(&pair.cx, &pair.cy) {
        return Err(ReorderError::NotDyadic);
    }
    let m = pair.dim();
    // cx is invertible: it is the r = 0 hybrid matrix.
    let c = pair
        .cy
        .mul(&pair.cx.inverse().expect("dyadic pair has invertible cx"));
    let j = BitMatrix::anti_diagonal(m);
    let p = BitMatrix::pascal(m);
    let lu = c.mul(&j).lu().expect("C J of a dyadic pair is progressive");
    let u_inv = lu.upper.inverse().expect("unitriangular is invertible");
    let cx_new = j.mul(&u_inv).mul(&p).mul(&j);
    let cy_new = lu.lower.mul(&p).mul(&j);
    Ok(GeneratorPair::with_offsets(
        cx_new,
        cy_new,
        pair.offset_x,
        pair.offset_y,
    ))
}

/// Recover a digital dyadic sequence generating a given point set, if the
/// set is a digital dyadic net (up to an XOR offset).
///
/// Orders the points along x with C_x = J, reads the candidate C_y columns
/// off the points at power-of-two indices, validates every point against the
/// construction, checks the hybrid-matrix condition, and reorders the result
/// into sequence order.
pub fn pointset_to_sequence(ps: &PointSet) -> Result<GeneratorPair, ReorderError> {
    let n = ps.len();
    assert!(n.is_power_of_two(), "point count must be a power of two");
    let m = n.trailing_zeros() as usize;
    assert!(
        m >= 1 && m == ps.precision(),
        "need 2^m points at m-bit precision"
    );

    // A digital net ordered by C_x = J has every x value exactly once.
    let mut by_x: Vec<Option<Point>> = vec![None; n];
    for p in &ps.points {
        let slot = &mut by_x[p.x as usize];
        if slot.is_some() {
            return Err(ReorderError::NotDigital(NotDigitalReason::DuplicateX));
        }
        *slot = Some(*p);
    }
    let sorted: Vec<Point> = by_x.into_iter().map(|p| p.unwrap()).collect();

    // A nonzero y at x = 0 can only come from an XOR offset; strip it and
    // recover the linear part. (The paper's algorithm covers the linear
    // case; this reduction extends it to affine inputs.)
    let y0 = sorted[0].y;
    let ys: Vec<u64> = sorted.iter().map(|p| p.y ^ y0).collect();

    let mut cy = BitMatrix::zero(m);
    for k in 0..m {
        cy.set_column(k, BitVector::from_int(ys[1 << k], m));
    }
    // One pass through all points: y must be the XOR of the columns picked
    // by the bits of the index.
    let cols: Vec<u64> = (0..m).map(|k| ys[1 << k]).collect();
    for (i, &y) in ys.iter().enumerate() {
        let mut want = 0u64;
        let mut bits = i;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            want ^= cols[k];
            bits &= bits - 1;
        }
        if want != y {
            return Err(ReorderError::NotDigital(NotDigitalReason::PointMismatch));
        }
    }
    let j = BitMatrix::anti_diagonal(m);
    if !is_dyadic_pair(&j, &cy) {
        return Err(ReorderError::NotDigital(NotDigitalReason::NotDyadic));
    }
    let net = GeneratorPair::with_offsets(j, cy, BitVector::zero(m), BitVector::from_int(y0, m));
    net_to_sequence(&net).map_err(|_| ReorderError::NotDigital(NotDigitalReason::NotDyadic))
}
