//! Dyadic and progressive pairs: the digital construction, hybrid-matrix
//! predicates, characteristic matrices, and the geometric point-level
//! verifiers everything else is validated against.
//!
//! The verifiers use exact integer bucket arithmetic only; no floating point
//! is involved anywhere in verification.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gf2::{rows_invertible, BitMatrix, BitVector, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    /// C_x is singular; the characteristic matrix does not exist.
    #[error("x generator matrix is singular")]
    SingularCx,
    /// Malformed point-set text.
    #[error("point set parse error: {0}")]
    Parse(String),
}

/// Generator pair (C_x, C_y) plus an optional affine offset (X_0, Y_0).
///
/// Point i of the generated set is (C_x S_i + X_0, C_y S_i + Y_0) where S_i
/// runs through the index vectors and the sums are XOR.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorPair {
    pub cx: BitMatrix,
    pub cy: BitMatrix,
    pub offset_x: BitVector,
    pub offset_y: BitVector,
}

impl GeneratorPair {
    /// Linear pair with zero offsets.
    pub fn new(cx: BitMatrix, cy: BitMatrix) -> Self {
        assert_eq!(cx.dim(), cy.dim(), "dimension mismatch");
        let m = cx.dim();
        GeneratorPair {
            cx,
            cy,
            offset_x: BitVector::zero(m),
            offset_y: BitVector::zero(m),
        }
    }

    /// Affine pair with the given XOR offsets.
    pub fn with_offsets(cx: BitMatrix, cy: BitMatrix, x0: BitVector, y0: BitVector) -> Self {
        assert_eq!(cx.dim(), cy.dim(), "dimension mismatch");
        assert_eq!(cx.dim(), x0.dim(), "dimension mismatch");
        assert_eq!(cx.dim(), y0.dim(), "dimension mismatch");
        GeneratorPair {
            cx,
            cy,
            offset_x: x0,
            offset_y: y0,
        }
    }

    pub fn dim(&self) -> usize {
        self.cx.dim()
    }
}

/// 2D sample in [0,1)^2 stored as a pair of fixed-point fractions with `m`
/// fractional bits; `x` and `y` are the numerators, in [0, 2^m).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    pub x: u64,
    pub y: u64,
    pub m: u8,
}

impl Point {
    pub fn new(x: u64, y: u64, m: usize) -> Self {
        debug_assert!((1..=64).contains(&m));
        debug_assert!(m == 64 || (x < 1 << m && y < 1 << m));
        Point { x, y, m: m as u8 }
    }

    pub fn x_f64(&self) -> f64 {
        self.x as f64 * f64::powi(2.0, -(self.m as i32))
    }

    pub fn y_f64(&self) -> f64 {
        self.y as f64 * f64::powi(2.0, -(self.m as i32))
    }

    /// Keep the leading `k` bits of both coordinates.
    pub fn truncate(&self, k: usize) -> Point {
        assert!(k >= 1 && k <= self.m as usize);
        let shift = self.m as usize - k;
        Point {
            x: self.x >> shift,
            y: self.y >> shift,
            m: k as u8,
        }
    }
}

/// Ordered list of points sharing one precision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    pub points: Vec<Point>,
    pub m: u8,
}

impl PointSet {
    pub fn new(points: Vec<Point>, m: usize) -> Self {
        assert!(points.iter().all(|p| p.m as usize == m), "mixed precision");
        PointSet { points, m: m as u8 }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn precision(&self) -> usize {
        self.m as usize
    }

    /// The first `n` points as a new set.
    pub fn prefix(&self, n: usize) -> PointSet {
        PointSet {
            points: self.points[..n].to_vec(),
            m: self.m,
        }
    }
}

impl fmt::Display for PointSet {
    /// Text format: header `m=<m> n=<count>`, then one `x y` pair of
    /// integers in [0, 2^m) per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={} n={}", self.m, self.points.len())?;
        for p in &self.points {
            writeln!(f, "{} {}", p.x, p.y)?;
        }
        Ok(())
    }
}

impl FromStr for PointSet {
    type Err = PairError;

    fn from_str(s: &str) -> Result<Self, PairError> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| PairError::Parse("empty input".into()))?;
        let mut m = None;
        let mut n = None;
        for field in header.split_whitespace() {
            if let Some(v) = field.strip_prefix("m=") {
                m = v.parse::<usize>().ok();
            } else if let Some(v) = field.strip_prefix("n=") {
                n = v.parse::<usize>().ok();
            }
        }
        let (m, n) = match (m, n) {
            (Some(m), Some(n)) if (1..=64).contains(&m) => (m, n),
            _ => return Err(PairError::Parse(format!("bad header {header:?}"))),
        };
        let limit = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut points = Vec::with_capacity(n);
        for line in lines {
            let mut it = line.split_whitespace();
            let (Some(xs), Some(ys), None) = (it.next(), it.next(), it.next()) else {
                return Err(PairError::Parse(format!("bad point line {line:?}")));
            };
            let x: u64 = xs
                .parse()
                .map_err(|_| PairError::Parse(format!("bad x {xs:?}")))?;
            let y: u64 = ys
                .parse()
                .map_err(|_| PairError::Parse(format!("bad y {ys:?}")))?;
            if x > limit || y > limit {
                return Err(PairError::Parse(format!(
                    "coordinate out of range in {line:?}"
                )));
            }
            points.push(Point::new(x, y, m));
        }
        if points.len() != n {
            return Err(PairError::Parse(format!(
                "header says n={n} but found {} points",
                points.len()
            )));
        }
        Ok(PointSet::new(points, m))
    }
}

/// All 2^m points of the digital construction, in index order.
pub fn generate(pair: &GeneratorPair) -> PointSet {
    let m = pair.dim();
    assert!(
        m <= 28,
        "point set of 2^{m} points is too large to materialize"
    );
    generate_prefix(pair, 1usize << m)
}

/// The first `count` points of the digital construction.
pub fn generate_prefix(pair: &GeneratorPair, count: usize) -> PointSet {
    let m = pair.dim();
    assert!(
        m == 64 || (count as u128) <= 1u128 << m,
        "count exceeds 2^m"
    );
    let colx: Vec<u64> = (0..m).map(|j| pair.cx.column(j).value()).collect();
    let coly: Vec<u64> = (0..m).map(|j| pair.cy.column(j).value()).collect();
    let mut points = Vec::with_capacity(count);
    if count == 0 {
        return PointSet::new(points, m);
    }
    // points[i >> 1] has already accumulated the columns for the high bits
    // of i, so each new point costs a single XOR.
    points.push(Point::new(pair.offset_x.value(), pair.offset_y.value(), m));
    for i in 1..count as u64 {
        let t = i.trailing_zeros() as usize;
        let prev = points[(i & (i - 1)) as usize];
        points.push(Point::new(prev.x ^ colx[t], prev.y ^ coly[t], m));
    }
    PointSet::new(points, m)
}

/// Exact stratification check: `ps` holds 2^k points (k = log2 of the count)
/// and each of the k+1 dyadic stratifications has one point per stratum.
///
/// The precision may exceed k; bucketing uses the leading bits, so checking a
/// truncated block equals checking the block at full precision.
pub fn is_dyadic_net(ps: &PointSet) -> bool {
    is_net_block(&ps.points, ps.precision())
}

fn is_net_block(points: &[Point], m: usize) -> bool {
    let n = points.len();
    assert!(n.is_power_of_two(), "point count must be a power of two");
    let k = n.trailing_zeros() as usize;
    assert!(k <= m, "2^{k} points need at least {k} bits of precision");
    let mut seen = vec![false; n];
    for r in 0..=k {
        seen.iter_mut().for_each(|s| *s = false);
        for p in points {
            let xb = p.x >> (m - r);
            let yb = p.y >> (m - (k - r));
            let bucket = ((xb << (k - r)) | yb) as usize;
            if seen[bucket] {
                return false;
            }
            seen[bucket] = true;
        }
    }
    true
}

/// Sequence check per the block definition: for every k and every aligned
/// block of 2^k consecutive points, the block truncated to k bits is a
/// dyadic net.
pub fn is_dyadic_sequence(ps: &PointSet) -> bool {
    let n = ps.len();
    assert!(n.is_power_of_two(), "point count must be a power of two");
    let m = ps.precision();
    let levels = n.trailing_zeros() as usize;
    for k in 1..=levels {
        let block = 1usize << k;
        for start in (0..n).step_by(block) {
            if !is_net_block(&ps.points[start..start + block], m) {
                return false;
            }
        }
    }
    true
}

fn hybrid_invertible(
    cx: &BitMatrix,
    cy: &BitMatrix,
    k: usize,
    r: usize,
    scratch: &mut Vec<u64>,
) -> bool {
    let m = cx.dim();
    let shift = m - k;
    scratch.clear();
    for i in 0..k - r {
        scratch.push(cx.row(i).value() >> shift);
    }
    for i in 0..r {
        scratch.push(cy.row(i).value() >> shift);
    }
    rows_invertible(scratch, k)
}

/// True iff all m+1 hybrid matrices H_r (first m-r rows of `cx` over the
/// first r rows of `cy`) are invertible; equivalently the pair generates a
/// digital dyadic net.
pub fn is_dyadic_pair(cx: &BitMatrix, cy: &BitMatrix) -> bool {
    assert_eq!(cx.dim(), cy.dim(), "dimension mismatch");
    let m = cx.dim();
    let mut scratch = Vec::with_capacity(m);
    (0..=m).all(|r| hybrid_invertible(cx, cy, m, r, &mut scratch))
}

/// True iff all hybrid matrices H_{k,r} over the leading k x k blocks are
/// invertible for 0 <= r <= k <= m; equivalently the pair generates a
/// digital dyadic sequence.
pub fn is_progressive_pair(cx: &BitMatrix, cy: &BitMatrix) -> bool {
    assert_eq!(cx.dim(), cy.dim(), "dimension mismatch");
    let m = cx.dim();
    let mut scratch = Vec::with_capacity(m);
    for k in 1..=m {
        for r in 0..=k {
            if !hybrid_invertible(cx, cy, k, r, &mut scratch) {
                return false;
            }
        }
    }
    true
}

/// The characteristic matrix C = C_y C_x^{-1}.
///
/// Two pairs with zero offsets generate equal point sets iff their
/// characteristic matrices are equal.
pub fn characteristic(pair: &GeneratorPair) -> Result<BitMatrix, PairError> {
    let inv = pair.cx.inverse().map_err(|e| match e {
        Gf2Error::Singular => PairError::SingularCx,
        other => PairError::Parse(other.to_string()),
    })?;
    Ok(pair.cy.mul(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(m: usize, rng: &mut impl Rng) -> BitMatrix {
        let mut a = BitMatrix::zero(m);
        for i in 0..m {
            for j in 0..m {
                a.set(i, j, rng.gen());
            }
        }
        a
    }

    #[test]
    fn generate_sobol_pair_m2() {
        // Hand-multiplied: (I, P) at m=2 gives (0,0), (1/2,1/2), (1/4,3/4), (3/4,1/4).
        let pair = GeneratorPair::new(BitMatrix::identity(2), BitMatrix::pascal(2));
        let ps = generate(&pair);
        let got: Vec<(u64, u64)> = ps.points.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(got, vec![(0, 0), (2, 2), (1, 3), (3, 1)]);
    }

    #[test]
    fn generate_index_zero_is_offset() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let m = 6;
        let pair = GeneratorPair::with_offsets(
            random_matrix(m, &mut rng),
            random_matrix(m, &mut rng),
            BitVector::from_int(0b101010, m),
            BitVector::from_int(0b000111, m),
        );
        let ps = generate(&pair);
        assert_eq!((ps.points[0].x, ps.points[0].y), (0b101010, 0b000111));
    }

    #[test]
    fn generate_matches_direct_mat_vec() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = 7;
        let pair = GeneratorPair::new(random_matrix(m, &mut rng), random_matrix(m, &mut rng));
        let ps = generate(&pair);
        for (i, p) in ps.points.iter().enumerate() {
            let s = BitVector::from_index(i as u64, m);
            assert_eq!(p.x, pair.cx.mul_vec(s).value());
            assert_eq!(p.y, pair.cy.mul_vec(s).value());
        }
    }

    #[test]
    fn hammersley_net_is_dyadic() {
        let m = 8;
        let pair = GeneratorPair::new(BitMatrix::anti_diagonal(m), BitMatrix::identity(m));
        let ps = generate(&pair);
        assert!(is_dyadic_net(&ps));
        // x-coordinates come out in increasing order under C_x = J.
        for (i, p) in ps.points.iter().enumerate() {
            assert_eq!(p.x, i as u64);
        }
    }

    #[test]
    fn repeated_point_is_not_a_net() {
        let ps = PointSet::new(vec![Point::new(0, 0, 2); 4], 2);
        assert!(!is_dyadic_net(&ps));
    }

    #[test]
    fn sobol_generates_net_and_sequence() {
        let m = 8;
        let pair = GeneratorPair::new(BitMatrix::identity(m), BitMatrix::pascal(m));
        let ps = generate(&pair);
        assert!(is_dyadic_net(&ps));
        assert!(is_dyadic_sequence(&ps));
    }

    #[test]
    fn hammersley_order_is_not_a_sequence() {
        let m = 4;
        let pair = GeneratorPair::new(BitMatrix::anti_diagonal(m), BitMatrix::identity(m));
        let ps = generate(&pair);
        assert!(is_dyadic_net(&ps));
        assert!(!is_dyadic_sequence(&ps));
    }

    #[test]
    fn single_point_is_a_sequence() {
        let ps = PointSet::new(vec![Point::new(3, 1, 2)], 2);
        assert!(is_dyadic_sequence(&ps));
    }

    #[test]
    fn dyadic_pair_examples() {
        let m = 4;
        let j = BitMatrix::anti_diagonal(m);
        let i = BitMatrix::identity(m);
        let p = BitMatrix::pascal(m);
        assert!(is_dyadic_pair(&j, &i));
        assert!(!is_dyadic_pair(&i, &i));
        assert!(is_progressive_pair(&i, &p));
        assert!(!is_progressive_pair(&j, &i));
    }

    #[test]
    fn progressive_pair_jpj_pj() {
        let m = 8;
        let p = BitMatrix::pascal(m);
        let j = BitMatrix::anti_diagonal(m);
        let jpj = j.mul(&p).mul(&j);
        let pj = p.mul(&j);
        assert!(is_progressive_pair(&jpj, &pj));
    }

    #[test]
    fn dyadic_pairs_at_m2_number_24() {
        // Exhaustive oracle for the ordered-net count at m = 2.
        let mut count = 0;
        for ca in 0u64..16 {
            for cb in 0u64..16 {
                let a = matrix_from_code(ca, 2);
                let b = matrix_from_code(cb, 2);
                if is_dyadic_pair(&a, &b) {
                    count += 1;
                    assert!(is_dyadic_net(&generate(&GeneratorPair::new(a, b))));
                }
            }
        }
        assert_eq!(count, 24);
    }

    fn matrix_from_code(code: u64, m: usize) -> BitMatrix {
        let mut a = BitMatrix::zero(m);
        for t in 0..m * m {
            if (code >> t) & 1 == 1 {
                a.set(t / m, t % m, true);
            }
        }
        a
    }

    #[test]
    fn characteristic_examples() {
        let m = 5;
        let i = BitMatrix::identity(m);
        let p = BitMatrix::pascal(m);
        let j = BitMatrix::anti_diagonal(m);
        assert_eq!(
            characteristic(&GeneratorPair::new(i.clone(), p.clone())).unwrap(),
            p
        );
        assert_eq!(
            characteristic(&GeneratorPair::new(j.clone(), i.clone())).unwrap(),
            j
        );
        let singular = GeneratorPair::new(BitMatrix::zero(m), i);
        assert_eq!(characteristic(&singular), Err(PairError::SingularCx));
    }

    #[test]
    fn characteristic_count_m3_dyadic() {
        // Distinct characteristics over all dyadic pairs at m=3: 2^{m(m-1)} = 64.
        use std::collections::HashSet;
        let mut chars = HashSet::new();
        for ca in 0u64..512 {
            let a = matrix_from_code(ca, 3);
            if !a.is_invertible() {
                continue;
            }
            for cb in 0u64..512 {
                let b = matrix_from_code(cb, 3);
                if is_dyadic_pair(&a, &b) {
                    chars.insert(characteristic(&GeneratorPair::new(a.clone(), b)).unwrap());
                }
            }
        }
        assert_eq!(chars.len(), 64);
    }

    #[test]
    fn theorem_equivalences_exhaustive_m2() {
        // Progressive pair <=> generated order is a dyadic sequence, and
        // dyadic pair <=> generated set is a dyadic net; all 256 pairs.
        for ca in 0u64..16 {
            for cb in 0u64..16 {
                let a = matrix_from_code(ca, 2);
                let b = matrix_from_code(cb, 2);
                let ps = generate(&GeneratorPair::new(a.clone(), b.clone()));
                assert_eq!(is_progressive_pair(&a, &b), is_dyadic_sequence(&ps));
                assert_eq!(is_dyadic_pair(&a, &b), is_dyadic_net(&ps));
            }
        }
    }

    #[test]
    fn dyadic_invariant_under_right_multiplication() {
        // (C_x M, C_y M) stays dyadic for invertible M.
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let m = 6;
        for _ in 0..100 {
            let pair = crate::constructions::random_net(m, &mut rng);
            let mm = crate::constructions::random_invertible(m, &mut rng);
            assert!(is_dyadic_pair(&pair.cx.mul(&mm), &pair.cy.mul(&mm)));
        }
    }

    #[test]
    fn progressive_invariant_under_unitriangular_sandwich() {
        // (L_x C_x U, L_y C_y U) stays progressive.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let m = 6;
        for _ in 0..100 {
            let pair = crate::constructions::random_sequence(m, &mut rng);
            let lx = crate::constructions::random_lower_unitriangular(m, &mut rng);
            let ly = crate::constructions::random_lower_unitriangular(m, &mut rng);
            let u = crate::constructions::random_upper_unitriangular(m, &mut rng);
            assert!(is_progressive_pair(
                &lx.mul(&pair.cx).mul(&u),
                &ly.mul(&pair.cy).mul(&u)
            ));
        }
    }

    #[test]
    fn xor_scrambling_preserves_net_and_sequence() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let m = 6;
        for _ in 0..50 {
            let seq = crate::constructions::random_sequence(m, &mut rng);
            let net = crate::constructions::random_net(m, &mut rng);
            let x0 = BitVector::from_int(rng.gen::<u64>() & 0x3f, m);
            let y0 = BitVector::from_int(rng.gen::<u64>() & 0x3f, m);
            let seq = crate::constructions::scramble(&seq, x0, y0);
            let net = crate::constructions::scramble(&net, x0, y0);
            assert!(is_dyadic_sequence(&generate(&seq)));
            assert!(is_dyadic_net(&generate(&net)));
        }
    }

    #[test]
    fn upper_unitriangular_reordering_preserves_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let m = 6;
        for _ in 0..50 {
            let pair = crate::constructions::random_sequence(m, &mut rng);
            let u = crate::constructions::random_upper_unitriangular(m, &mut rng);
            let reordered = GeneratorPair::new(pair.cx.mul(&u), pair.cy.mul(&u));
            assert!(is_dyadic_sequence(&generate(&reordered)));
        }
    }

    #[test]
    fn only_upper_unitriangular_reorderings_preserve_all_sequences_m3() {
        // Converse direction, checked exhaustively at m=3: a reordering M
        // that maps every progressive pair to a progressive pair must be
        // upper unitriangular.
        let m = 3;
        let mut good = Vec::new();
        for code in 0u64..512 {
            let mm = matrix_from_code(code, m);
            if !mm.is_invertible() {
                continue;
            }
            let all_stay_progressive = crate::constructions::enumerate_design_space(
                m,
                crate::constructions::DesignSpace::SequencesOrdered,
            )
            .unwrap()
            .all(|pair| is_progressive_pair(&pair.cx.mul(&mm), &pair.cy.mul(&mm)));
            if all_stay_progressive {
                good.push(mm);
            }
        }
        assert_eq!(
            good.len(),
            8,
            "exactly the 2^{{m(m-1)/2}} upper unitriangular matrices"
        );
        assert!(good.iter().all(|mm| mm.is_upper_unitriangular()));
    }

    #[test]
    fn lemma_injectivity_m3() {
        // (L_x, L_y) -> L_y P L_x^{-1} is injective over unitriangular pairs.
        use std::collections::HashSet;
        let m = 3;
        let p = BitMatrix::pascal(m);
        let lowers: Vec<BitMatrix> =
            crate::constructions::enumerate_lower_unitriangular(m).collect();
        assert_eq!(lowers.len(), 8);
        let mut seen = HashSet::new();
        for lx in &lowers {
            for ly in &lowers {
                seen.insert(ly.mul(&p).mul(&lx.inverse().unwrap()));
            }
        }
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn point_set_text_round_trip() {
        let pair = GeneratorPair::new(BitMatrix::identity(5), BitMatrix::pascal(5));
        let ps = generate(&pair);
        let text = ps.to_string();
        let back: PointSet = text.parse().unwrap();
        assert_eq!(ps, back);
        assert_eq!(text, back.to_string());
    }
}
