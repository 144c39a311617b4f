//! Deterministic low-discrepancy point generation: Halton sequences with
//! Cranley-Patterson shifts derived from a splitmix64 hash of (seed, box id).

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// splitmix64: cheap, well-mixed, and identical on every platform.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Hash a (seed, index, lane) triple into a unit-interval shift.
pub fn unit_shift(seed: u64, index: u64, lane: u64) -> f64 {
    let h = splitmix64(seed ^ splitmix64(index ^ splitmix64(lane.wrapping_add(0xA5A5_A5A5))));
    // 53 high bits -> [0, 1)
    (h >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Radical inverse of `index` in the given base.
pub fn radical_inverse(base: u64, mut index: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut x = 0.0;
    while index > 0 {
        x += (index % base) as f64 * f;
        index /= base;
        f *= inv;
    }
    x
}

/// Point `k` of the plain Halton sequence in `dim` dimensions (no shift).
pub fn halton_point(dim: usize, k: u64) -> Vec<f64> {
    (0..dim).map(|d| radical_inverse(PRIMES[d], k)).collect()
}

/// Shifted Halton points for one stratification cell: the shift mixes the
/// seed with the cell id, so every cell sees a different rotation of the
/// same sequence and rerunning with the same seed is bit-identical.
pub struct CellSampler {
    dim: usize,
    shifts: Vec<f64>,
}

impl CellSampler {
    pub fn new(dim: usize, seed: u64, cell_id: u64) -> Self {
        assert!(dim <= PRIMES.len());
        let shifts = (0..dim).map(|d| unit_shift(seed, cell_id, d as u64)).collect();
        CellSampler { dim, shifts }
    }

    /// `k`-th point in `[0, 1)^dim`.
    pub fn point(&self, k: u64, out: &mut [f64]) {
        for d in 0..self.dim {
            let x = radical_inverse(PRIMES[d], k + 1) + self.shifts[d];
            out[d] = x - x.floor();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_inverse_base2() {
        assert_eq!(radical_inverse(2, 1), 0.5);
        assert_eq!(radical_inverse(2, 2), 0.25);
        assert_eq!(radical_inverse(2, 3), 0.75);
    }

    #[test]
    fn shifts_are_deterministic_and_distinct() {
        let a = unit_shift(7, 11, 0);
        let b = unit_shift(7, 11, 0);
        assert_eq!(a, b);
        assert_ne!(unit_shift(7, 11, 0), unit_shift(7, 12, 0));
        assert!((0.0..1.0).contains(&a));
    }

    #[test]
    fn sampler_points_in_unit_cube() {
        let s = CellSampler::new(3, 42, 9);
        let mut p = [0.0; 3];
        for k in 0..100 {
            s.point(k, &mut p);
            assert!(p.iter().all(|&x| (0.0..1.0).contains(&x)));
        }
    }
}
