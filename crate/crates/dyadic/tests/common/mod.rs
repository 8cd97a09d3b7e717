//! Shared test oracles, independent of the library's computation paths.

use dyadic_nets::pairs::PointSet;

/// Brute-force star discrepancy on a dense 2^grid_bits x 2^grid_bits grid of
/// corner evaluations with both open and closed counts, via a summed-area
/// table. Exact up to the grid spacing when every coordinate lies on the
/// grid, i.e. for precisions up to grid_bits.
pub fn dense_grid_star_discrepancy(ps: &PointSet, grid_bits: u32) -> f64 {
    let r = 1usize << grid_bits;
    let m = ps.precision() as u32;
    assert!(m <= grid_bits, "coordinates must lie on the oracle grid");
    assert!(ps.len() < u16::MAX as usize);
    let shift = grid_bits - m;
    let stride = r + 1;
    let mut sat = vec![0u16; stride * stride];
    for p in &ps.points {
        let cx = (p.x << shift) as usize;
        let cy = (p.y << shift) as usize;
        sat[(cx + 1) * stride + (cy + 1)] += 1;
    }
    for i in 1..stride {
        for j in 1..stride {
            sat[i * stride + j] =
                sat[i * stride + j] + sat[(i - 1) * stride + j] + sat[i * stride + j - 1]
                    - sat[(i - 1) * stride + j - 1];
        }
    }
    let n = ps.len() as f64;
    let inv_r = 1.0 / r as f64;
    let mut best = 0.0f64;
    for i in 0..stride {
        let x = i as f64 * inv_r;
        let closed_i = (i + 1).min(r);
        for j in 0..stride {
            let area = x * (j as f64 * inv_r);
            let n_open = sat[i * stride + j] as f64;
            let n_closed = sat[closed_i * stride + (j + 1).min(r)] as f64;
            best = best.max(area - n_open / n).max(n_closed / n - area);
        }
    }
    best
}
