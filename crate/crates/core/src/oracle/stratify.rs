//! Dyadic stratification of boxes around the coordinate subspaces where the
//! kernel weight is singular: each axis of `(0, r)` is split into the scales
//! `(r 2^{-j-1}, r 2^{-j}]` for `j < J` plus the core `(0, r 2^{-J}]`, so the
//! weight varies boundedly on every cell.

/// Per-axis dyadic decomposition of `(0, r)` into `depth + 1` intervals.
#[derive(Debug, Clone, Copy)]
pub struct AxisScales {
    pub r: f64,
    pub depth: usize,
}

impl AxisScales {
    /// Interval `idx` of the axis, `idx <= depth`; the last index is the
    /// core interval touching zero.
    pub fn interval(&self, idx: usize) -> (f64, f64) {
        debug_assert!(idx <= self.depth);
        let hi = self.r * 0.5f64.powi(idx as i32);
        let lo = if idx == self.depth { 0.0 } else { hi * 0.5 };
        (lo, hi)
    }

    pub fn count(&self) -> usize {
        self.depth + 1
    }
}

/// Tensor grid of dyadic cells over `(0, r)^n`, enumerated in a fixed
/// mixed-radix order so reductions are reproducible.
#[derive(Debug, Clone)]
pub struct DyadicGrid {
    pub axis: AxisScales,
    pub dim: usize,
}

impl DyadicGrid {
    pub fn new(dim: usize, r: f64, depth: usize) -> Self {
        DyadicGrid { axis: AxisScales { r, depth }, dim }
    }

    pub fn num_cells(&self) -> u64 {
        (self.axis.count() as u64).pow(self.dim as u32)
    }

    /// Lower and upper corners of cell `id`.
    pub fn cell(&self, id: u64) -> (Vec<f64>, Vec<f64>) {
        let base = self.axis.count() as u64;
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        let mut rest = id;
        for _ in 0..self.dim {
            let idx = (rest % base) as usize;
            rest /= base;
            let (l, h) = self.axis.interval(idx);
            lo.push(l);
            hi.push(h);
        }
        (lo, hi)
    }

    pub fn volume(lo: &[f64], hi: &[f64]) -> f64 {
        lo.iter().zip(hi).map(|(l, h)| h - l).product()
    }

    pub fn center(lo: &[f64], hi: &[f64]) -> Vec<f64> {
        lo.iter().zip(hi).map(|(l, h)| 0.5 * (l + h)).collect()
    }
}

/// Signed dyadic grid over `(-r, r)^n` minus the coordinate hyperplanes:
/// every axis interval additionally carries a sign.
#[derive(Debug, Clone)]
pub struct SignedDyadicGrid {
    pub axis: AxisScales,
    pub dim: usize,
}

impl SignedDyadicGrid {
    pub fn new(dim: usize, r: f64, depth: usize) -> Self {
        SignedDyadicGrid { axis: AxisScales { r, depth }, dim }
    }

    pub fn num_cells(&self) -> u64 {
        (2 * self.axis.count() as u64).pow(self.dim as u32)
    }

    /// Signed corners of cell `id`: returns (lo, hi) with `lo < hi`
    /// componentwise; each axis interval lies entirely on one side of zero.
    pub fn cell(&self, id: u64) -> (Vec<f64>, Vec<f64>) {
        let base = 2 * self.axis.count() as u64;
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        let mut rest = id;
        for _ in 0..self.dim {
            let code = (rest % base) as usize;
            rest /= base;
            let idx = code / 2;
            let negative = code % 2 == 1;
            let (l, h) = self.axis.interval(idx);
            if negative {
                lo.push(-h);
                hi.push(-l);
            } else {
                lo.push(l);
                hi.push(h);
            }
        }
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_intervals_tile_the_axis() {
        let a = AxisScales { r: 0.5, depth: 4 };
        let mut hi_prev = None;
        for idx in (0..a.count()).rev() {
            let (lo, hi) = a.interval(idx);
            if let Some(h) = hi_prev {
                assert_eq!(lo, h);
            } else {
                assert_eq!(lo, 0.0);
            }
            hi_prev = Some(hi);
        }
        assert_eq!(hi_prev, Some(0.5));
    }

    #[test]
    fn grid_volumes_sum_to_box() {
        let g = DyadicGrid::new(2, 0.5, 6);
        let mut vol = 0.0;
        for id in 0..g.num_cells() {
            let (lo, hi) = g.cell(id);
            vol += DyadicGrid::volume(&lo, &hi);
        }
        assert!((vol - 0.25).abs() < 1e-12);
    }

    #[test]
    fn signed_grid_covers_both_sides() {
        let g = SignedDyadicGrid::new(1, 1.0, 3);
        let mut vol = 0.0;
        let mut saw_negative = false;
        for id in 0..g.num_cells() {
            let (lo, hi) = g.cell(id);
            assert!(lo[0] < hi[0]);
            vol += hi[0] - lo[0];
            if lo[0] < 0.0 {
                saw_negative = true;
            }
        }
        assert!(saw_negative);
        assert!((vol - 2.0).abs() < 1e-12);
    }
}
