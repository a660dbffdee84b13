//! Additive characters of `R^d` realized through an explicit nondegenerate
//! pairing, complex-valued functions on the point grid, and the normalized
//! Fourier transform.
//!
//! Phases live in exact rational arithmetic (numerators over the additive
//! exponent) until the final complex exponentiation, so character sums
//! cancel exactly.

mod fourier;
mod grid;
mod pairing;

pub use fourier::{fourier_transform, inverse_fourier};
pub use grid::GridFunction;
pub use pairing::Pairing;

use crate::ring::QuotientMap;
use crate::util::decode_point;
use crate::{Error, Result};
use num_complex::Complex64;
use std::sync::Arc;

/// An additive character of `R^d`, stored as its dual element: the vector
/// `a` with `chi(x) = exp(2 pi i * sum_i beta(a_i, x_i))`. Serializes as
/// its dual index vector: `{"dual": [i1, ..., id]}`.
#[derive(Debug, Clone)]
pub struct Character {
    pairing: Arc<Pairing>,
    dual: Vec<u16>,
}

impl serde::Serialize for Character {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Character", 1)?;
        s.serialize_field("dual", &self.dual)?;
        s.end()
    }
}

impl Character {
    pub fn new(pairing: Arc<Pairing>, dual: Vec<u16>) -> Result<Self> {
        let m = pairing.ring().size() as u16;
        if dual.is_empty() {
            return Err(Error::argument(
                "character needs dimension >= 1".to_string(),
            ));
        }
        if dual.iter().any(|&a| a >= m) {
            return Err(Error::argument("dual component out of range".to_string()));
        }
        Ok(Character { pairing, dual })
    }

    pub fn trivial(pairing: Arc<Pairing>, d: usize) -> Self {
        let zero = pairing.ring().zero();
        Character {
            pairing,
            dual: vec![zero; d],
        }
    }

    pub fn pairing(&self) -> &Arc<Pairing> {
        &self.pairing
    }

    pub fn dual(&self) -> &[u16] {
        &self.dual
    }

    pub fn dimension(&self) -> usize {
        self.dual.len()
    }

    /// Trivial iff the dual vector is zero (by nondegeneracy).
    pub fn is_trivial(&self) -> bool {
        let zero = self.pairing.ring().zero();
        self.dual.iter().all(|&a| a == zero)
    }

    /// Exact phase numerator over the pairing denominator.
    pub fn phase_at(&self, coords: &[u16]) -> u64 {
        debug_assert_eq!(coords.len(), self.dual.len());
        let denom = self.pairing.denom();
        let mut acc = 0u64;
        for (&a, &x) in self.dual.iter().zip(coords) {
            acc = (acc + self.pairing.beta_num(a, x)) % denom;
        }
        acc
    }

    /// Evaluate at a point given by coordinates.
    pub fn eval(&self, coords: &[u16]) -> Result<Complex64> {
        if coords.len() != self.dual.len() {
            return Err(Error::argument(format!(
                "dimension mismatch: character has d={}, point has d={}",
                self.dual.len(),
                coords.len()
            )));
        }
        Ok(self.pairing.root(self.phase_at(coords)))
    }

    /// Materialize as a dense grid function.
    pub fn to_grid(&self) -> Result<GridFunction> {
        let ring = self.pairing.ring().clone();
        let d = self.dual.len();
        GridFunction::from_fn(ring, d, |_, coords| {
            self.pairing.root(self.phase_at(coords))
        })
    }
}

/// The witness character of a matrix ring: evaluates a fixed nontrivial
/// character of the base field on the sum of upper-left entries of the
/// coordinates. Its dual is `(E11, ..., E11)`.
pub fn matrix_witness_character(pairing: &Arc<Pairing>, d: usize) -> Result<Character> {
    use crate::ring::RingSpec;
    let ring = pairing.ring();
    match &ring.spec {
        Some(RingSpec::Mat { .. }) => {}
        _ => {
            return Err(Error::argument(format!(
                "witness character requires a matrix ring, got {}",
                ring.name()
            )));
        }
    }
    if d < 1 {
        return Err(Error::argument("dimension must be >= 1".to_string()));
    }
    // E11 is the element whose single nonzero entry is a field 1 in the
    // least significant slot, i.e. ring index 1.
    let e11 = 1u16;
    let chi = Character::new(pairing.clone(), vec![e11; d])?;
    assert!(!chi.is_trivial());
    Ok(chi)
}

/// Pull a character of the quotient back along the projection: the result
/// satisfies `chi(x) = chi_tilde(p(x))` at every point, verified
/// exhaustively for grids up to 65536 points.
pub fn pullback_character(
    base: &Arc<Pairing>,
    map: &QuotientMap,
    chi_tilde: &Character,
) -> Result<Character> {
    if !Arc::ptr_eq(chi_tilde.pairing().ring(), &map.quotient) {
        return Err(Error::argument(
            "character is not defined on the quotient of this projection".to_string(),
        ));
    }
    if base.ring().size() != map.projection.len() {
        return Err(Error::argument(
            "projection does not match the base ring".to_string(),
        ));
    }
    let m = base.ring().size();
    let bd = base.denom();
    let quot = chi_tilde.pairing();
    let qd = quot.denom();

    // Per coordinate: x -> beta_q(a~, p(x)) is an additive character of R,
    // so nondegeneracy gives a unique base dual element realizing it; find
    // it by scan, comparing phases as exact rationals.
    let mut dual = Vec::with_capacity(chi_tilde.dual().len());
    for &at in chi_tilde.dual() {
        let mut found = None;
        'search: for a in 0..m as u16 {
            for x in 0..m as u16 {
                let lhs = base.beta_num(a, x) as u128 * qd as u128;
                let rhs = quot.beta_num(at, map.project(x)) as u128 * bd as u128;
                if lhs != rhs {
                    continue 'search;
                }
            }
            found = Some(a);
            break;
        }
        dual.push(found.ok_or_else(|| {
            Error::construction("no dual element realizes the pulled-back character".to_string())
        })?);
    }
    let chi = Character::new(base.clone(), dual)?;

    let d = chi.dimension();
    if let Some(points) = crate::util::checked_pow(m, d) {
        if points <= 65536 {
            let mut coords = vec![0u16; d];
            let mut proj = vec![0u16; d];
            for idx in 0..points {
                decode_point(idx, m, d, &mut coords);
                for (p, &c) in proj.iter_mut().zip(&coords) {
                    *p = map.project(c);
                }
                let lhs = chi.phase_at(&coords) as u128 * qd as u128;
                let rhs = chi_tilde.phase_at(&proj) as u128 * bd as u128;
                assert_eq!(lhs, rhs, "pullback disagrees at point {idx}");
            }
        }
    }
    assert_eq!(chi.is_trivial(), chi_tilde.is_trivial());
    Ok(chi)
}
