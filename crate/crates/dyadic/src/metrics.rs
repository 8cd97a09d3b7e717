//! Exact quality measures on point sets: star discrepancy over the critical
//! grid, minimum pairwise distance, and average nearest-neighbor distance.

use thiserror::Error;

use crate::pairs::PointSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    /// Distance metrics need at least two points.
    #[error("need at least two points")]
    TooFewPoints,
    /// Prefix-ratio inputs must be permutations of one another.
    #[error("point sets are not permutations of the same set")]
    SetMismatch,
}

/// Distance metric on the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMode {
    /// Wrap-around Euclidean metric on the unit torus.
    #[default]
    Toroidal,
    /// Plain Euclidean metric.
    Euclidean,
}

/// Exact star discrepancy: sup over anchored boxes [0,x) x [0,y) of
/// |area - fraction of points|.
///
/// The supremum over all real (x, y) is attained on the critical grid built
/// from the point coordinates and their closures, evaluating each grid
/// corner with both open (strict) and closed (non-strict) point counts. The
/// sweep costs O(n^2) after sorting.
pub fn star_discrepancy(ps: &PointSet) -> f64 {
    assert!(!ps.is_empty(), "empty point set");
    let n = ps.len() as f64;
    let scale = f64::powi(2.0, -(ps.precision() as i32));
    let full = if ps.precision() == 64 {
        u64::MAX
    } else {
        1u64 << ps.precision()
    };

    // Distinct coordinate values plus the right edge (x = 1 means every
    // point is counted whatever the boundary convention).
    let mut xs: Vec<u64> = ps.points.iter().map(|p| p.x).collect();
    xs.push(full);
    xs.sort_unstable();
    xs.dedup();
    let mut ys: Vec<u64> = ps.points.iter().map(|p| p.y).collect();
    ys.push(full);
    ys.sort_unstable();
    ys.dedup();

    let y_rank = |y: u64| ys.partition_point(|&v| v < y);
    let mut pts: Vec<(u64, usize)> = ps.points.iter().map(|p| (p.x, y_rank(p.y))).collect();
    pts.sort_unstable();

    // Counts of seen points per y rank; `lt` holds points with px < x,
    // `le` those with px <= x for the current grid column.
    let mut lt = vec![0u32; ys.len()];
    let mut le = vec![0u32; ys.len()];
    let (mut next_lt, mut next_le) = (0usize, 0usize);
    let mut best = 0f64;
    for &x in &xs {
        while next_lt < pts.len() && pts[next_lt].0 < x {
            lt[pts[next_lt].1] += 1;
            next_lt += 1;
        }
        while next_le < pts.len() && pts[next_le].0 <= x {
            le[pts[next_le].1] += 1;
            next_le += 1;
        }
        let xf = x as f64 * scale;
        let mut n_open = 0u32;
        let mut n_closed = 0u32;
        for (j, &y) in ys.iter().enumerate() {
            // Points with py < y have rank < j.
            n_closed += le[j];
            let area = xf * (y as f64 * scale);
            best = best.max(area - n_open as f64 / n);
            best = best.max(n_closed as f64 / n - area);
            n_open += lt[j];
        }
    }
    best
}

/// Scale factor of the densest packing: the largest possible minimum
/// distance of n points on the unit torus is about sqrt(2 / (n sqrt(3))).
pub fn hex_bound(n: usize) -> f64 {
    (2.0 / (n as f64 * 3f64.sqrt())).sqrt()
}

fn dist2(a: (f64, f64), b: (f64, f64), mode: DistanceMode) -> f64 {
    let mut dx = (a.0 - b.0).abs();
    let mut dy = (a.1 - b.1).abs();
    if mode == DistanceMode::Toroidal {
        dx = dx.min(1.0 - dx);
        dy = dy.min(1.0 - dy);
    }
    dx * dx + dy * dy
}

fn nn_distances(ps: &PointSet, mode: DistanceMode) -> Result<Vec<f64>, MetricError> {
    let n = ps.len();
    if n < 2 {
        return Err(MetricError::TooFewPoints);
    }
    let coords: Vec<(f64, f64)> = ps.points.iter().map(|p| (p.x_f64(), p.y_f64())).collect();
    let mut nearest = vec![f64::INFINITY; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = dist2(coords[i], coords[j], mode);
            if d < nearest[i] {
                nearest[i] = d;
            }
            if d < nearest[j] {
                nearest[j] = d;
            }
        }
    }
    Ok(nearest.into_iter().map(f64::sqrt).collect())
}

/// Minimum pairwise distance.
pub fn min_distance(ps: &PointSet, mode: DistanceMode) -> Result<f64, MetricError> {
    Ok(nn_distances(ps, mode)?
        .into_iter()
        .fold(f64::INFINITY, f64::min))
}

/// Average distance to the nearest neighbor.
pub fn avg_nn_distance(ps: &PointSet, mode: DistanceMode) -> Result<f64, MetricError> {
    let d = nn_distances(ps, mode)?;
    Ok(d.iter().sum::<f64>() / d.len() as f64)
}

/// Both distance statistics in one O(n^2) pass.
pub fn distance_stats(ps: &PointSet, mode: DistanceMode) -> Result<(f64, f64), MetricError> {
    let d = nn_distances(ps, mode)?;
    let min = d.iter().copied().fold(f64::INFINITY, f64::min);
    let avg = d.iter().sum::<f64>() / d.len() as f64;
    Ok((min, avg))
}

/// Star-discrepancy ratios of growing prefixes: D*(first N of `candidate`) /
/// D*(first N of `reference`) for N = step, 2 step, ..., up to the full set.
///
/// Both orderings must hold the same points; the final ratio is exactly 1
/// since full-set discrepancy is permutation invariant.
pub fn discrepancy_prefix_ratio(
    candidate: &PointSet,
    reference: &PointSet,
    step: usize,
) -> Result<Vec<(usize, f64)>, MetricError> {
    if candidate.len() != reference.len() || candidate.precision() != reference.precision() {
        return Err(MetricError::SetMismatch);
    }
    let key = |ps: &PointSet| {
        let mut v: Vec<(u64, u64)> = ps.points.iter().map(|p| (p.x, p.y)).collect();
        v.sort_unstable();
        v
    };
    if key(candidate) != key(reference) {
        return Err(MetricError::SetMismatch);
    }
    assert!(step >= 1 && step <= candidate.len());
    let mut out = Vec::new();
    let mut n = step;
    while n <= candidate.len() {
        let a = star_discrepancy(&candidate.prefix(n));
        let b = star_discrepancy(&reference.prefix(n));
        out.push((n, a / b));
        n += step;
    }
    Ok(out)
}
