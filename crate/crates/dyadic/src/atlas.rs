//! Exhaustive scan of the xi-sequence design space: every admissible second
//! point at a given resolution, with quality metrics per cell.

use rayon::prelude::*;
use thiserror::Error;

use crate::metrics::{distance_stats, hex_bound, star_discrepancy, DistanceMode};
use crate::pairs::PointSet;
use crate::xi;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    /// The grid would exceed 2^24 cells.
    #[error("atlas with res_bits={0} exceeds the 2^24-cell limit")]
    InfeasibleSize(u32),
    /// Seed resolution must leave room for the forced leading bit.
    #[error("res_bits={0} outside supported range 1..=12")]
    InvalidResolution(u32),
    /// Net size exponent must produce at least 2 and at most 2^16 points.
    #[error("m={0} outside supported range 1..=16")]
    InvalidNetSize(u32),
}

/// Quality record of one xi-sequence, identified by its second point.
///
/// Metrics are computed twice: on the raw 32-bit samples and on samples
/// truncated to m bits. Distances use the toroidal metric; values are raw
/// (unnormalized).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtlasRecord {
    pub seed_x: u32,
    pub seed_y: u32,
    pub min_dist: f64,
    pub avg_nn: f64,
    pub star_disc: f64,
    pub min_dist_trunc: f64,
    pub avg_nn_trunc: f64,
    pub star_disc_trunc: f64,
}

/// Scan result: one record per admissible second-point position, in
/// row-major order (seed y outer, seed x inner, both ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct AtlasGrid {
    pub m: u32,
    pub res_bits: u32,
    pub records: Vec<AtlasRecord>,
}

/// Metric selector for ranking and heatmaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtlasMetric {
    MinDist,
    AvgNn,
    StarDisc,
}

impl AtlasMetric {
    pub fn name(&self) -> &'static str {
        match self {
            AtlasMetric::MinDist => "mindist",
            AtlasMetric::AvgNn => "avgnn",
            AtlasMetric::StarDisc => "star_disc",
        }
    }

    /// Larger-is-better for distances, smaller-is-better for discrepancy.
    fn higher_is_better(&self) -> bool {
        !matches!(self, AtlasMetric::StarDisc)
    }

    pub fn of(&self, r: &AtlasRecord, truncated: bool) -> f64 {
        match (self, truncated) {
            (AtlasMetric::MinDist, false) => r.min_dist,
            (AtlasMetric::AvgNn, false) => r.avg_nn,
            (AtlasMetric::StarDisc, false) => r.star_disc,
            (AtlasMetric::MinDist, true) => r.min_dist_trunc,
            (AtlasMetric::AvgNn, true) => r.avg_nn_trunc,
            (AtlasMetric::StarDisc, true) => r.star_disc_trunc,
        }
    }
}

/// Number of seed values per axis: the leading bit is forced to 1, the
/// remaining res_bits - 1 bits are free.
pub fn grid_width(res_bits: u32) -> usize {
    1usize << (res_bits - 1)
}

/// Evaluate one cell: build the seed, draw the first 2^m samples, and
/// measure them at full precision and at m-bit truncation.
pub fn evaluate_cell(m: u32, seed_x: u32, seed_y: u32) -> AtlasRecord {
    let seed = xi::seed(seed_x, seed_y).expect("grid seeds carry the leading bit");
    let n = 1usize << m;
    let points: Vec<crate::pairs::Point> = (0..n).map(|i| seed.get_sample(i as u32)).collect();
    let full = PointSet::new(points, 32);
    let truncated = PointSet::new(
        full.points.iter().map(|p| p.truncate(m as usize)).collect(),
        m as usize,
    );
    let (min_dist, avg_nn) = distance_stats(&full, DistanceMode::Toroidal).expect("n >= 2");
    let (min_dist_trunc, avg_nn_trunc) =
        distance_stats(&truncated, DistanceMode::Toroidal).expect("n >= 2");
    AtlasRecord {
        seed_x,
        seed_y,
        min_dist,
        avg_nn,
        star_disc: star_discrepancy(&full),
        min_dist_trunc,
        avg_nn_trunc,
        star_disc_trunc: star_discrepancy(&truncated),
    }
}

fn check_params(m: u32, res_bits: u32) -> Result<(), AtlasError> {
    if !(1..=16).contains(&m) {
        return Err(AtlasError::InvalidNetSize(m));
    }
    if !(1..=12).contains(&res_bits) {
        return Err(AtlasError::InvalidResolution(res_bits));
    }
    if 2 * (res_bits - 1) > 24 {
        return Err(AtlasError::InfeasibleSize(res_bits));
    }
    Ok(())
}

/// Seed value for grid column `g`: the res_bits-wide window (1, g) placed at
/// the top of the 32-bit fraction, covering [1/2, 1) uniformly.
pub fn grid_seed(res_bits: u32, g: u32) -> u32 {
    ((1 << (res_bits - 1)) | g) << (32 - res_bits)
}

/// Exhaustive deterministic scan of all grid_width^2 xi-sequences.
///
/// Cells are evaluated independently (in parallel) and written into a fixed
/// row-major layout, so the result is identical regardless of scheduling.
pub fn scan(m: u32, res_bits: u32) -> Result<AtlasGrid, AtlasError> {
    check_params(m, res_bits)?;
    let w = grid_width(res_bits);
    let records: Vec<AtlasRecord> = (0..w * w)
        .into_par_iter()
        .map(|cell| {
            let gx = (cell % w) as u32;
            let gy = (cell / w) as u32;
            evaluate_cell(m, grid_seed(res_bits, gx), grid_seed(res_bits, gy))
        })
        .collect();
    Ok(AtlasGrid {
        m,
        res_bits,
        records,
    })
}

/// Serial reference scan; bit-identical to [`scan`].
pub fn scan_serial(m: u32, res_bits: u32) -> Result<AtlasGrid, AtlasError> {
    check_params(m, res_bits)?;
    let w = grid_width(res_bits);
    let records: Vec<AtlasRecord> = (0..w * w)
        .map(|cell| {
            let gx = (cell % w) as u32;
            let gy = (cell / w) as u32;
            evaluate_cell(m, grid_seed(res_bits, gx), grid_seed(res_bits, gy))
        })
        .collect();
    Ok(AtlasGrid {
        m,
        res_bits,
        records,
    })
}

/// Optional filter for [`AtlasGrid::best`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AtlasConstraint {
    /// Keep only cells whose truncated minimum distance, normalized by the
    /// hexagonal bound for 2^m points, exceeds the threshold.
    MinDistNormalizedAbove(f64),
}

impl AtlasGrid {
    /// Top-k records under a metric, best first, optionally filtered.
    pub fn best(
        &self,
        metric: AtlasMetric,
        truncated: bool,
        k: usize,
        constraint: Option<AtlasConstraint>,
    ) -> Vec<&AtlasRecord> {
        let bound = hex_bound(1usize << self.m);
        let mut rows: Vec<&AtlasRecord> = self
            .records
            .iter()
            .filter(|r| match constraint {
                None => true,
                Some(AtlasConstraint::MinDistNormalizedAbove(t)) => r.min_dist_trunc / bound > t,
            })
            .collect();
        rows.sort_by(|a, b| {
            let (va, vb) = (metric.of(a, truncated), metric.of(b, truncated));
            if metric.higher_is_better() {
                vb.total_cmp(&va)
            } else {
                va.total_cmp(&vb)
            }
        });
        rows.truncate(k);
        rows
    }

    /// The record for an exact seed pair, if it lies on the grid.
    pub fn find(&self, seed_x: u32, seed_y: u32) -> Option<&AtlasRecord> {
        self.records
            .iter()
            .find(|r| r.seed_x == seed_x && r.seed_y == seed_y)
    }

    /// CSV with one row per cell. The metric columns hold either the
    /// full-precision or the m-bit truncated variants.
    pub fn to_csv(&self, truncated: bool) -> String {
        let mut out = String::from("seed_x_hex,seed_y_hex,mindist,avgnn,star_disc\n");
        for r in &self.records {
            let (md, nn, sd) = if truncated {
                (r.min_dist_trunc, r.avg_nn_trunc, r.star_disc_trunc)
            } else {
                (r.min_dist, r.avg_nn, r.star_disc)
            };
            out.push_str(&format!(
                "{:08x},{:08x},{},{},{}\n",
                r.seed_x, r.seed_y, md, nn, sd
            ));
        }
        out
    }

    /// Binary PGM heatmap of one metric, 255 = best. Row 0 is the top of
    /// the [1/2,1)^2 square (largest seed y), matching image conventions.
    pub fn to_pgm(&self, metric: AtlasMetric, truncated: bool) -> Vec<u8> {
        let w = grid_width(self.res_bits);
        let values: Vec<f64> = self
            .records
            .iter()
            .map(|r| metric.of(r, truncated))
            .collect();
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let span = if hi > lo { hi - lo } else { 1.0 };
        let mut out = format!("P5\n{w} {w}\n255\n").into_bytes();
        for row in 0..w {
            let gy = w - 1 - row;
            for gx in 0..w {
                let v = values[gy * w + gx];
                let mut t = (v - lo) / span;
                if !metric.higher_is_better() {
                    t = 1.0 - t;
                }
                out.push((t * 255.0).round() as u8);
            }
        }
        out
    }
}
