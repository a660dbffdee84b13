use crate::ring::RingTable;
use crate::util::{checked_pow, decode_point, encode_point};
use crate::{Error, Result};
use num_complex::Complex64;
use std::sync::Arc;

/// Largest supported grid, `m^d` points.
pub const MAX_GRID_POINTS: usize = 10_000_000;

/// A complex-valued function on `R^d`, stored densely. Point indices use
/// the mixed-radix encoding with the first coordinate least significant.
#[derive(Debug, Clone)]
pub struct GridFunction {
    ring: Arc<RingTable>,
    d: usize,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn zero(ring: Arc<RingTable>, d: usize) -> Result<Self> {
        let len = grid_len(&ring, d)?;
        Ok(GridFunction {
            ring,
            d,
            values: vec![Complex64::ZERO; len],
        })
    }

    pub fn constant(ring: Arc<RingTable>, d: usize, value: Complex64) -> Result<Self> {
        let len = grid_len(&ring, d)?;
        Ok(GridFunction {
            ring,
            d,
            values: vec![value; len],
        })
    }

    pub fn from_fn(
        ring: Arc<RingTable>,
        d: usize,
        mut f: impl FnMut(usize, &[u16]) -> Complex64,
    ) -> Result<Self> {
        let len = grid_len(&ring, d)?;
        let m = ring.size();
        let mut coords = vec![0u16; d];
        let values = (0..len)
            .map(|idx| {
                decode_point(idx, m, d, &mut coords);
                f(idx, &coords)
            })
            .collect();
        Ok(GridFunction { ring, d, values })
    }

    pub fn from_values(ring: Arc<RingTable>, d: usize, values: Vec<Complex64>) -> Result<Self> {
        let len = grid_len(&ring, d)?;
        if values.len() != len {
            return Err(Error::argument(format!(
                "grid needs {len} values, got {}",
                values.len()
            )));
        }
        Ok(GridFunction { ring, d, values })
    }

    /// Indicator function of a set of point indices.
    pub fn indicator(ring: Arc<RingTable>, d: usize, points: &[usize]) -> Result<Self> {
        let mut g = GridFunction::zero(ring, d)?;
        for &p in points {
            if p >= g.values.len() {
                return Err(Error::argument(format!("point index {p} out of range")));
            }
            g.values[p] = Complex64::ONE;
        }
        Ok(g)
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn value(&self, index: usize) -> Complex64 {
        self.values[index]
    }

    pub fn point_index(&self, coords: &[u16]) -> usize {
        encode_point(coords, self.ring.size())
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    /// `sqrt(sum |f(x)|^2)`.
    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &GridFunction) -> Result<Complex64> {
        if !self.compatible(other) {
            return Err(Error::argument(
                "grid mismatch in inner product".to_string(),
            ));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    /// Mean-zero certificate: `|sum f| <= 1e-9 * ||f||_2 * m^(d/2)`.
    pub fn is_mean_zero(&self) -> bool {
        let scale = (self.values.len() as f64).sqrt();
        self.sum().norm() <= 1e-9 * self.l2_norm() * scale
    }

    pub fn compatible(&self, other: &GridFunction) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.d == other.d
    }
}

fn grid_len(ring: &RingTable, d: usize) -> Result<usize> {
    if d == 0 {
        return Err(Error::argument("grid dimension must be >= 1".to_string()));
    }
    match checked_pow(ring.size(), d) {
        Some(len) if len <= MAX_GRID_POINTS => Ok(len),
        _ => Err(Error::scale(format!(
            "grid {}^{d} exceeds {MAX_GRID_POINTS} points",
            ring.size()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring_spec;

    fn ring(text: &str) -> Arc<RingTable> {
        Arc::new(parse_ring_spec(text).unwrap().build().unwrap())
    }

    #[test]
    fn norm_of_ones() {
        let r = ring("zmod(4)");
        let f = GridFunction::constant(r, 2, Complex64::ONE).unwrap();
        assert_eq!(f.len(), 16);
        assert!((f.l2_norm() - 4.0).abs() < 1e-12);
        assert!(!f.is_mean_zero());
    }

    #[test]
    fn indicator_counts() {
        let r = ring("gf(3)");
        let f = GridFunction::indicator(r, 2, &[0, 4, 8]).unwrap();
        assert!((f.sum().re - 3.0).abs() < 1e-12);
        assert!((f.l2_norm() - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn grid_scale_guard() {
        let r = ring("zmod(100)");
        assert!(GridFunction::zero(r, 4).is_err());
    }
}
