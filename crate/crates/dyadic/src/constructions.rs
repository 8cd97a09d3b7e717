//! Factories for the named generator pairs, uniform random sampling of the
//! net/sequence design spaces, and exhaustive enumeration with the
//! closed-form counts.

use num_bigint::BigUint;
use rand::Rng;
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::pairs::GeneratorPair;
use crate::reorder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    /// The requested construction is only defined for certain dimensions.
    #[error("construction not defined for m={0}")]
    UnsupportedDimension(usize),
    /// Exhaustive enumeration would be astronomically large.
    #[error("design space at m={m} is infeasible to enumerate (limit m<={limit})")]
    InfeasibleSize { m: usize, limit: usize },
}

/// Sobol pair (I, P); the canonical digital dyadic sequence.
pub fn sobol(m: usize) -> GeneratorPair {
    GeneratorPair::new(BitMatrix::identity(m), BitMatrix::pascal(m))
}

/// Hammersley net pair (J, I).
pub fn hammersley_net(m: usize) -> GeneratorPair {
    GeneratorPair::new(BitMatrix::anti_diagonal(m), BitMatrix::identity(m))
}

/// Hammersley point set in sequence order: the pair (JPJ, PJ).
pub fn hammersley_sequence(m: usize) -> GeneratorPair {
    let p = BitMatrix::pascal(m);
    let j = BitMatrix::anti_diagonal(m);
    GeneratorPair::new(j.mul(&p).mul(&j), p.mul(&j))
}

/// Upper triangular all-ones matrix used by the LP net.
pub fn lp_upper(m: usize) -> BitMatrix {
    let mut u = BitMatrix::zero(m);
    for i in 0..m {
        for j in i..m {
            u.set(i, j, true);
        }
    }
    u
}

/// Lower unitriangular LP matrix: first row/column are e_1, and the trailing
/// block holds binom(i-2, j-2) mod 2.
pub fn lp_lower(m: usize) -> BitMatrix {
    let mut l = BitMatrix::zero(m);
    l.set(0, 0, true);
    for i in 1..m as u64 {
        for j in 1..=i {
            // Lucas: binom(i-1, j-1) is odd iff (j-1) is a submask of (i-1).
            if (j - 1) & (i - 1) == j - 1 {
                l.set(i as usize, j as usize, true);
            }
        }
    }
    l
}

/// Larcher-Pillichshammer net pair (J, U_LP).
pub fn lp_net(m: usize) -> GeneratorPair {
    GeneratorPair::new(BitMatrix::anti_diagonal(m), lp_upper(m))
}

/// LP point set in sequence order: the pair (L_LP, PJ).
///
/// Generates the same point set as [`lp_net`] when m is a power of two.
pub fn lp_sequence(m: usize) -> GeneratorPair {
    let p = BitMatrix::pascal(m);
    let j = BitMatrix::anti_diagonal(m);
    GeneratorPair::new(lp_lower(m), p.mul(&j))
}

/// Gray net pair (J, C') for even m: C' is block diagonal with a lower
/// all-ones block acting on the first m/2 columns and an upper bidiagonal
/// block on the rest.
pub fn gray_net(m: usize) -> Result<GeneratorPair, ConstructionError> {
    if m == 0 || !m.is_multiple_of(2) {
        return Err(ConstructionError::UnsupportedDimension(m));
    }
    let h = m / 2;
    let mut c = BitMatrix::zero(m);
    for i in 0..h {
        for j in 0..=i {
            c.set(i, j, true);
        }
    }
    for i in h..m {
        c.set(i, i, true);
        if i + 1 < m {
            c.set(i, i + 1, true);
        }
    }
    Ok(GeneratorPair::new(BitMatrix::anti_diagonal(m), c))
}

/// Gray point set in sequence order, obtained by reordering the Gray net.
pub fn gray_sequence(m: usize) -> Result<GeneratorPair, ConstructionError> {
    let net = gray_net(m)?;
    Ok(reorder::net_to_sequence(&net).expect("gray net is a dyadic pair"))
}

/// XOR-scramble: replace the pair's affine offsets with (x0, y0).
pub fn scramble(pair: &GeneratorPair, x0: BitVector, y0: BitVector) -> GeneratorPair {
    GeneratorPair::with_offsets(pair.cx.clone(), pair.cy.clone(), x0, y0)
}

/// Uniformly random lower unitriangular matrix.
pub fn random_lower_unitriangular(m: usize, rng: &mut impl Rng) -> BitMatrix {
    let mut a = BitMatrix::identity(m);
    for i in 1..m {
        for j in 0..i {
            if rng.gen() {
                a.set(i, j, true);
            }
        }
    }
    a
}

/// Uniformly random upper unitriangular matrix.
pub fn random_upper_unitriangular(m: usize, rng: &mut impl Rng) -> BitMatrix {
    let mut a = BitMatrix::identity(m);
    for i in 0..m {
        for j in i + 1..m {
            if rng.gen() {
                a.set(i, j, true);
            }
        }
    }
    a
}

/// Uniformly random invertible matrix, built column by column: draw a
/// nonzero vector, reject it if it lies in the span of the previous columns.
pub fn random_invertible(m: usize, rng: &mut impl Rng) -> BitMatrix {
    let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut a = BitMatrix::zero(m);
    // Row-echelon basis of the columns chosen so far, keyed by leading bit.
    let mut basis: Vec<u64> = Vec::with_capacity(m);
    for col in 0..m {
        loop {
            let v = rng.gen::<u64>() & mask;
            let mut reduced = v;
            for b in &basis {
                if reduced != 0 && b.leading_zeros() == reduced.leading_zeros() {
                    reduced ^= b;
                }
            }
            if reduced == 0 {
                continue; // zero or already in the span
            }
            let pos = basis.partition_point(|b| b.leading_zeros() < reduced.leading_zeros());
            basis.insert(pos, reduced);
            a.set_column(col, BitVector::from_int(v, m));
            break;
        }
    }
    a
}

/// Random GFaure pair (L_x, L_y P).
pub fn random_gfaure(m: usize, rng: &mut impl Rng) -> GeneratorPair {
    let p = BitMatrix::pascal(m);
    GeneratorPair::new(
        random_lower_unitriangular(m, rng),
        random_lower_unitriangular(m, rng).mul(&p),
    )
}

/// Random digital dyadic sequence pair (L_x U, L_y P U), uniform over the
/// parametrization.
pub fn random_sequence(m: usize, rng: &mut impl Rng) -> GeneratorPair {
    let p = BitMatrix::pascal(m);
    let u = random_upper_unitriangular(m, rng);
    GeneratorPair::new(
        random_lower_unitriangular(m, rng).mul(&u),
        random_lower_unitriangular(m, rng).mul(&p).mul(&u),
    )
}

/// Random digital dyadic net pair (M, L U J M), uniform over the
/// parametrization.
pub fn random_net(m: usize, rng: &mut impl Rng) -> GeneratorPair {
    let j = BitMatrix::anti_diagonal(m);
    let mm = random_invertible(m, rng);
    let l = random_lower_unitriangular(m, rng);
    let u = random_upper_unitriangular(m, rng);
    GeneratorPair::new(mm.clone(), l.mul(&u).mul(&j).mul(&mm))
}

/// The enumerable design spaces of Table-style closed-form size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignSpace {
    /// All ordered digital dyadic nets (M, L U J M).
    NetsOrdered,
    /// Distinct net point sets, one canonical pair (I, L U J) per characteristic.
    NetsUnordered,
    /// All ordered digital dyadic sequences (L_x U, L_y P U).
    SequencesOrdered,
    /// Distinct sequence point sets, one GFaure pair (L_x, L_y P) per characteristic.
    SequencesUnordered,
    /// Ordered nets with XOR offsets.
    AffineNetsOrdered,
    /// Ordered sequences with XOR offsets.
    AffineSequencesOrdered,
}

impl DesignSpace {
    pub const ALL: [DesignSpace; 6] = [
        DesignSpace::NetsOrdered,
        DesignSpace::NetsUnordered,
        DesignSpace::SequencesOrdered,
        DesignSpace::SequencesUnordered,
        DesignSpace::AffineNetsOrdered,
        DesignSpace::AffineSequencesOrdered,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DesignSpace::NetsOrdered => "nets_ordered",
            DesignSpace::NetsUnordered => "nets_unordered",
            DesignSpace::SequencesOrdered => "sequences_ordered",
            DesignSpace::SequencesUnordered => "sequences_unordered",
            DesignSpace::AffineNetsOrdered => "affine_nets_ordered",
            DesignSpace::AffineSequencesOrdered => "affine_sequences_ordered",
        }
    }
}

fn pow2(bits: usize) -> BigUint {
    BigUint::from(1u8) << bits
}

/// Number of invertible m x m matrices: 2^{m(m-1)/2} (2^1-1)(2^2-1)...(2^m-1).
fn invertible_count(m: usize) -> BigUint {
    let mut n = pow2(m * (m - 1) / 2);
    for i in 1..=m {
        n *= pow2(i) - 1u8;
    }
    n
}

/// Closed-form size of a design space.
pub fn count_design_space(m: usize, kind: DesignSpace) -> BigUint {
    match kind {
        DesignSpace::NetsOrdered => pow2(m * (m - 1)) * invertible_count(m),
        DesignSpace::NetsUnordered => pow2(m * (m - 1)),
        DesignSpace::SequencesOrdered => pow2(3 * m * (m - 1) / 2),
        DesignSpace::SequencesUnordered => pow2(m * (m - 1)),
        DesignSpace::AffineNetsOrdered => pow2(m * (m - 1) + 2 * m) * invertible_count(m),
        DesignSpace::AffineSequencesOrdered => pow2(m * (3 * m + 1) / 2),
    }
}

/// All lower unitriangular matrices of dimension m, in index order over the
/// strictly-lower bits.
pub fn enumerate_lower_unitriangular(m: usize) -> impl Iterator<Item = BitMatrix> {
    let free = m * (m - 1) / 2;
    (0u64..1 << free).map(move |code| {
        let mut a = BitMatrix::identity(m);
        let mut t = 0;
        for i in 1..m {
            for j in 0..i {
                if (code >> t) & 1 == 1 {
                    a.set(i, j, true);
                }
                t += 1;
            }
        }
        a
    })
}

/// All upper unitriangular matrices of dimension m.
pub fn enumerate_upper_unitriangular(m: usize) -> impl Iterator<Item = BitMatrix> {
    let free = m * (m - 1) / 2;
    (0u64..1 << free).map(move |code| {
        let mut a = BitMatrix::identity(m);
        let mut t = 0;
        for i in 0..m {
            for j in i + 1..m {
                if (code >> t) & 1 == 1 {
                    a.set(i, j, true);
                }
                t += 1;
            }
        }
        a
    })
}

fn enumerate_invertible(m: usize) -> Vec<BitMatrix> {
    let cells = m * m;
    (0u64..1 << cells)
        .filter_map(|code| {
            let mut a = BitMatrix::zero(m);
            for t in 0..cells {
                if (code >> t) & 1 == 1 {
                    a.set(t / m, t % m, true);
                }
            }
            a.is_invertible().then_some(a)
        })
        .collect()
}

fn enumerate_offsets(m: usize) -> Vec<BitVector> {
    (0..1u64 << m).map(|v| BitVector::from_int(v, m)).collect()
}

/// Exhaustively enumerate a design space; each construction is yielded
/// exactly once and the total equals [`count_design_space`].
///
/// Only desk-scale sizes are allowed: m <= 3 for ordered kinds, m <= 4 for
/// unordered kinds.
pub fn enumerate_design_space(
    m: usize,
    kind: DesignSpace,
) -> Result<Box<dyn Iterator<Item = GeneratorPair>>, ConstructionError> {
    let limit = match kind {
        DesignSpace::NetsUnordered | DesignSpace::SequencesUnordered => 4,
        _ => 3,
    };
    if m > limit {
        return Err(ConstructionError::InfeasibleSize { m, limit });
    }
    let p = BitMatrix::pascal(m);
    let j = BitMatrix::anti_diagonal(m);
    let lowers: Vec<BitMatrix> = enumerate_lower_unitriangular(m).collect();
    let uppers: Vec<BitMatrix> = enumerate_upper_unitriangular(m).collect();
    let it: Box<dyn Iterator<Item = GeneratorPair>> =
        match kind {
            DesignSpace::NetsOrdered => {
                let ms = enumerate_invertible(m);
                Box::new(product3(ms, lowers, uppers).map(move |(mm, l, u)| {
                    GeneratorPair::new(mm.clone(), l.mul(&u).mul(&j).mul(&mm))
                }))
            }
            DesignSpace::NetsUnordered => {
                let i = BitMatrix::identity(m);
                Box::new(
                    product2(lowers, uppers)
                        .map(move |(l, u)| GeneratorPair::new(i.clone(), l.mul(&u).mul(&j))),
                )
            }
            DesignSpace::SequencesOrdered => Box::new(
                product3(lowers.clone(), lowers, uppers)
                    .map(move |(lx, ly, u)| GeneratorPair::new(lx.mul(&u), ly.mul(&p).mul(&u))),
            ),
            DesignSpace::SequencesUnordered => Box::new(
                product2(lowers.clone(), lowers)
                    .map(move |(lx, ly)| GeneratorPair::new(lx.clone(), ly.mul(&p))),
            ),
            DesignSpace::AffineNetsOrdered => {
                let base: Vec<GeneratorPair> =
                    enumerate_design_space(m, DesignSpace::NetsOrdered)?.collect();
                Box::new(with_offsets(base, m))
            }
            DesignSpace::AffineSequencesOrdered => {
                let base: Vec<GeneratorPair> =
                    enumerate_design_space(m, DesignSpace::SequencesOrdered)?.collect();
                Box::new(with_offsets(base, m))
            }
        };
    Ok(it)
}

fn product2<T: Clone + 'static>(a: Vec<T>, b: Vec<T>) -> impl Iterator<Item = (T, T)> {
    a.into_iter()
        .flat_map(move |x| b.clone().into_iter().map(move |y| (x.clone(), y)))
}

fn product3<T: Clone + 'static>(
    a: Vec<T>,
    b: Vec<T>,
    c: Vec<T>,
) -> impl Iterator<Item = (T, T, T)> {
    a.into_iter().flat_map(move |x| {
        let c = c.clone();
        b.clone().into_iter().flat_map(move |y| {
            let x = x.clone();
            c.clone()
                .into_iter()
                .map(move |z| (x.clone(), y.clone(), z))
        })
    })
}

fn with_offsets(base: Vec<GeneratorPair>, m: usize) -> impl Iterator<Item = GeneratorPair> {
    let offsets = enumerate_offsets(m);
    base.into_iter().flat_map(move |pair| {
        let offsets_y = offsets.clone();
        offsets.clone().into_iter().flat_map(move |x0| {
            let pair = pair.clone();
            offsets_y
                .clone()
                .into_iter()
                .map(move |y0| scramble(&pair, x0, y0))
        })
    })
}
