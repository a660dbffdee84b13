use super::grid::GridFunction;
use super::pairing::Pairing;
use crate::util::decode_point;
use crate::{Error, Result};
use num_complex::Complex64;

/// Direct summation keeps transforms at desk scale; the spectral solver
/// never calls this, so correctness wins over speed.
const MAX_TRANSFORM_POINTS: usize = 65536;

/// Normalized Fourier coefficients: `fhat(a) = m^-d * sum_x f(x) chi_a(x)`,
/// indexed by the dual point `a` in the same mixed-radix encoding as the
/// grid. Phases come from exact rational arithmetic.
pub fn fourier_transform(pairing: &Pairing, f: &GridFunction) -> Result<Vec<Complex64>> {
    if !std::sync::Arc::ptr_eq(pairing.ring(), f.ring()) {
        return Err(Error::argument(
            "pairing and function rings differ".to_string(),
        ));
    }
    let n = f.len();
    if n > MAX_TRANSFORM_POINTS {
        return Err(Error::scale(format!(
            "direct transform supports up to {MAX_TRANSFORM_POINTS} points, got {n}"
        )));
    }
    let m = pairing.ring().size();
    let d = f.dimension();
    let denom = pairing.denom();
    let scale = 1.0 / n as f64;
    let mut dual_coords = vec![0u16; d];
    let mut point_coords = vec![0u16; d];
    let mut out = Vec::with_capacity(n);
    for dual in 0..n {
        decode_point(dual, m, d, &mut dual_coords);
        let mut acc = Complex64::ZERO;
        for x in 0..n {
            decode_point(x, m, d, &mut point_coords);
            let mut phase = 0u64;
            for (&a, &c) in dual_coords.iter().zip(&point_coords) {
                phase = (phase + pairing.beta_num(a, c)) % denom;
            }
            acc += f.value(x) * pairing.root(phase);
        }
        out.push(acc * scale);
    }
    Ok(out)
}

/// Inverse of [`fourier_transform`]: `f(x) = sum_a fhat(a) conj(chi_a(x))`.
pub fn inverse_fourier(pairing: &Pairing, coeffs: &[Complex64], d: usize) -> Result<GridFunction> {
    let m = pairing.ring().size();
    let n =
        crate::util::checked_pow(m, d).ok_or_else(|| Error::scale("grid too large".to_string()))?;
    if coeffs.len() != n {
        return Err(Error::argument(format!(
            "expected {n} coefficients, got {}",
            coeffs.len()
        )));
    }
    if n > MAX_TRANSFORM_POINTS {
        return Err(Error::scale(format!(
            "direct transform supports up to {MAX_TRANSFORM_POINTS} points, got {n}"
        )));
    }
    let denom = pairing.denom();
    let mut dual_coords = vec![0u16; d];
    GridFunction::from_fn(pairing.ring().clone(), d, |_, coords| {
        let mut acc = Complex64::ZERO;
        for (dual, &coeff) in coeffs.iter().enumerate() {
            decode_point(dual, m, d, &mut dual_coords);
            let mut phase = 0u64;
            for (&a, &c) in dual_coords.iter().zip(coords) {
                phase = (phase + pairing.beta_num(a, c)) % denom;
            }
            acc += coeff * pairing.root(phase).conj();
        }
        acc
    })
}
