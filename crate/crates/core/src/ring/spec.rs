use crate::{Error, Result};

/// A finite-field constructor: `GF(p^k)` with an explicit or default
/// irreducible modulus over `Z/p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GfSpec {
    pub p: u64,
    pub k: u32,
    /// Little-endian coefficients, length `k + 1`, monic. `None` selects
    /// the built-in default for `(p, k)`.
    pub modulus: Option<Vec<u64>>,
}

/// Symbolic description of a finite ring.
///
/// Constructors compose: products and matrix rings cover the semisimple
/// rings, while `Zmod` of a prime power and `Trunc` supply rings with a
/// nontrivial Jacobson radical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// `Z/n` for `n >= 2`.
    Zmod { n: u64 },
    /// The field with `p^k` elements.
    Gf(GfSpec),
    /// `n x n` matrices over a finite field.
    Mat { n: u32, base: GfSpec },
    /// Direct product of rings, componentwise operations.
    Prod { factors: Vec<RingSpec> },
    /// `F_q[eps]/(eps^k)` for `k >= 2`.
    Trunc { base: GfSpec, k: u32 },
}

/// Default irreducible moduli over `Z/p`, little-endian with the leading 1
/// included. Fixed published (Conway) polynomials so that `gf(p,k)` means
/// the same table in every build. Irreducibility is re-verified at
/// construction time, so a table error cannot pass silently.
const DEFAULT_MODULI: &[(u64, u32, &[u64])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
];

pub(crate) fn default_modulus(p: u64, k: u32) -> Option<Vec<u64>> {
    DEFAULT_MODULI
        .iter()
        .find(|&&(dp, dk, _)| dp == p && dk == k)
        .map(|&(_, _, coeffs)| coeffs.to_vec())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Factor `q` as `p^k` with `p` prime, if possible.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut k = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            return if rest == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

impl GfSpec {
    pub fn new(p: u64, k: u32) -> Self {
        GfSpec {
            p,
            k,
            modulus: None,
        }
    }

    /// `gf(q)` sugar: factor `q = p^k`.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, k) =
            prime_power(q).ok_or_else(|| Error::semantic(format!("{q} is not a prime power")))?;
        Ok(GfSpec {
            p,
            k,
            modulus: None,
        })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k)
    }

    /// The modulus actually used: the explicit one, or the default.
    pub fn resolved_modulus(&self) -> Result<Vec<u64>> {
        match &self.modulus {
            Some(m) => Ok(m.clone()),
            None => default_modulus(self.p, self.k).ok_or_else(|| {
                Error::construction(format!(
                    "no default modulus for gf({},{}); supply one explicitly",
                    self.p, self.k
                ))
            }),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::semantic(format!(
                "gf characteristic {} is not prime",
                self.p
            )));
        }
        if self.k < 1 {
            return Err(Error::semantic("gf degree must be at least 1".to_string()));
        }
        if let Some(m) = &self.modulus {
            if m.len() != self.k as usize + 1 {
                return Err(Error::semantic(format!(
                    "gf modulus must have {} coefficients, got {}",
                    self.k + 1,
                    m.len()
                )));
            }
            if m[self.k as usize] % self.p != 1 {
                return Err(Error::semantic("gf modulus must be monic".to_string()));
            }
            if m.iter().any(|&c| c >= self.p) {
                return Err(Error::semantic(format!(
                    "gf modulus coefficients must be reduced mod {}",
                    self.p
                )));
            }
        }
        Ok(())
    }

    fn canonical(&self) -> String {
        match &self.modulus {
            None => format!("gf({},{})", self.p, self.k),
            Some(m) => {
                let coeffs: Vec<String> = m.iter().map(|c| c.to_string()).collect();
                format!("gf({},{},[{}])", self.p, self.k, coeffs.join(","))
            }
        }
    }
}

impl RingSpec {
    pub fn zmod(n: u64) -> Self {
        RingSpec::Zmod { n }
    }

    pub fn gf(p: u64, k: u32) -> Self {
        RingSpec::Gf(GfSpec::new(p, k))
    }

    pub fn mat(n: u32, base: GfSpec) -> Self {
        RingSpec::Mat { n, base }
    }

    pub fn prod(factors: Vec<RingSpec>) -> Self {
        RingSpec::Prod { factors }
    }

    pub fn trunc(base: GfSpec, k: u32) -> Self {
        RingSpec::Trunc { base, k }
    }

    /// Element count implied by the description.
    pub fn size(&self) -> u64 {
        match self {
            RingSpec::Zmod { n } => *n,
            RingSpec::Gf(g) => g.order(),
            RingSpec::Mat { n, base } => base.order().pow(n * n),
            RingSpec::Prod { factors } => factors.iter().map(|f| f.size()).product(),
            RingSpec::Trunc { base, k } => base.order().pow(*k),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::Zmod { n } => {
                if *n < 2 {
                    return Err(Error::argument(format!(
                        "zmod modulus must be >= 2, got {n}"
                    )));
                }
            }
            RingSpec::Gf(g) => g.validate()?,
            RingSpec::Mat { n, base } => {
                if *n < 1 {
                    return Err(Error::argument("mat dimension must be >= 1".to_string()));
                }
                base.validate()?;
            }
            RingSpec::Prod { factors } => {
                if factors.is_empty() {
                    return Err(Error::argument(
                        "prod needs at least one factor".to_string(),
                    ));
                }
                for f in factors {
                    f.validate()?;
                }
            }
            RingSpec::Trunc { base, k } => {
                if *k < 2 {
                    return Err(Error::argument("trunc exponent must be >= 2".to_string()));
                }
                base.validate()?;
            }
        }
        Ok(())
    }

    /// Canonical text form: whitespace-free, sugar expanded. Used as the
    /// stable identity of a ring in reports and cache keys.
    pub fn canonical(&self) -> String {
        match self {
            RingSpec::Zmod { n } => format!("zmod({n})"),
            RingSpec::Gf(g) => g.canonical(),
            RingSpec::Mat { n, base } => format!("mat({},{})", n, base.canonical()),
            RingSpec::Prod { factors } => {
                let parts: Vec<String> = factors.iter().map(|f| f.canonical()).collect();
                format!("prod({})", parts.join(","))
            }
            RingSpec::Trunc { base, k } => format!("trunc({},{})", base.canonical(), k),
        }
    }

    /// Whether the constructor shape guarantees a field.
    pub fn is_field_shape(&self) -> bool {
        match self {
            RingSpec::Zmod { n } => is_prime(*n),
            RingSpec::Gf(_) => true,
            RingSpec::Mat { n, .. } => *n == 1,
            _ => false,
        }
    }

    /// Whether the constructor shape guarantees a semisimple ring
    /// (a product of matrix rings over fields). `zmod(n)` qualifies
    /// exactly when `n` is squarefree.
    pub fn is_semisimple_shape(&self) -> bool {
        match self {
            RingSpec::Zmod { n } => {
                let mut rest = *n;
                let mut d = 2;
                while d * d <= rest {
                    if rest.is_multiple_of(d) {
                        rest /= d;
                        if rest.is_multiple_of(d) {
                            return false;
                        }
                    }
                    d += 1;
                }
                true
            }
            RingSpec::Gf(_) | RingSpec::Mat { .. } => true,
            RingSpec::Prod { factors } => factors.iter().all(|f| f.is_semisimple_shape()),
            RingSpec::Trunc { .. } => false,
        }
    }
}

impl std::fmt::Display for RingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.canonical())
    }
}
