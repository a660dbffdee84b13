use super::spec::{GfSpec, RingSpec};
use crate::util::SplitMix64;
use crate::{Error, Result};

/// Largest supported element count. Tables are dense `m x m` index arrays;
/// beyond this the constructor refuses rather than degrade.
pub const MAX_RING_SIZE: usize = 4096;

/// Exhaustive axiom checks run up to this size; larger tables get a seeded
/// 1e5-triple spot check instead.
const EXHAUSTIVE_AXIOM_LIMIT: usize = 64;
const RANDOM_TRIPLES: usize = 100_000;

/// Materialized arithmetic of a finite ring: dense index tables for
/// addition and multiplication, the unit set with inverses, and one label
/// per element. Immutable after construction; share via `Arc` for
/// concurrent readers.
#[derive(Debug, Clone)]
pub struct RingTable {
    /// The symbolic description this table was built from; `None` for
    /// tables produced by quotient construction.
    pub spec: Option<RingSpec>,
    m: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: u16,
    one: u16,
    units: Vec<u16>,
    inv: Vec<Option<u16>>,
    labels: Vec<String>,
    commutative: bool,
    add_exponent: u64,
}

impl RingSpec {
    /// Materialize the ring: build tables, enumerate units, verify the ring
    /// axioms (exhaustively at small size, by seeded spot check above).
    pub fn build(&self) -> Result<RingTable> {
        self.validate()?;
        let size = self.size();
        if size as usize > MAX_RING_SIZE {
            return Err(Error::scale(format!(
                "ring {} has {} elements; tables support at most {}",
                self.canonical(),
                size,
                MAX_RING_SIZE
            )));
        }
        let ctor = Constructor::prepare(self)?;
        let m = ctor.size();
        if m != size as usize {
            return Err(Error::construction(format!(
                "size mismatch for {}: spec says {}, materialization has {}",
                self.canonical(),
                size,
                m
            )));
        }
        let mut add = vec![0u16; m * m];
        let mut mul = vec![0u16; m * m];
        for a in 0..m {
            for b in 0..m {
                add[a * m + b] = ctor.add(a, b) as u16;
                mul[a * m + b] = ctor.mul(a, b) as u16;
            }
        }
        let labels = (0..m).map(|i| ctor.label(i)).collect();
        let table = RingTable::finish(Some(self.clone()), m, add, mul, ctor.one(), labels)?;
        // A single matrix ring over a field keeps at least a quarter of its
        // elements invertible. (Not true of products: F_2^3 has one unit.)
        let single_matrix_ring = matches!(
            self,
            RingSpec::Gf(_) | RingSpec::Mat { .. } | RingSpec::Zmod { n: _ } if self.is_field_shape()
        ) || matches!(self, RingSpec::Mat { .. });
        if single_matrix_ring && table.units.len() * 4 < m {
            return Err(Error::construction(format!(
                "{}: matrix ring but only {} of {} elements are units",
                self.canonical(),
                table.units.len(),
                m
            )));
        }
        Ok(table)
    }
}

impl RingTable {
    /// Derive zero/neg/units/exponent from raw tables and validate the ring
    /// axioms. Shared by spec construction and quotient construction.
    pub(crate) fn finish(
        spec: Option<RingSpec>,
        m: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        one: usize,
        labels: Vec<String>,
    ) -> Result<Self> {
        if m < 2 {
            return Err(Error::construction("ring must have 1 != 0".to_string()));
        }
        let zero = 0u16;
        if (0..m).any(|x| add[x] as usize != x || add[x * m] as usize != x) {
            return Err(Error::construction(
                "element 0 is not the additive identity".to_string(),
            ));
        }
        let mut neg = vec![0u16; m];
        for a in 0..m {
            let mut found = None;
            for b in 0..m {
                if add[a * m + b] == zero {
                    found = Some(b as u16);
                    break;
                }
            }
            neg[a] =
                found.ok_or_else(|| Error::construction(format!("element {a} has no negative")))?;
        }

        let mut inv = vec![None; m];
        let mut units = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if mul[a * m + b] as usize == one && mul[b * m + a] as usize == one {
                    inv[a] = Some(b as u16);
                    units.push(a as u16);
                    break;
                }
            }
        }

        let commutative = (0..m).all(|a| (0..m).all(|b| mul[a * m + b] == mul[b * m + a]));

        let mut add_exponent = 1u64;
        for a in 0..m {
            let mut acc = a;
            let mut order = 1u64;
            while acc != 0 {
                acc = add[acc * m + a] as usize;
                order += 1;
            }
            add_exponent = lcm(add_exponent, order);
        }

        let table = RingTable {
            spec,
            m,
            add,
            mul,
            neg,
            zero,
            one: one as u16,
            units,
            inv,
            labels,
            commutative,
            add_exponent,
        };
        table.validate_axioms()?;
        Ok(table)
    }

    fn validate_axioms(&self) -> Result<()> {
        let m = self.m;
        let fail = |what: &str| Err(Error::construction(format!("ring axiom violated: {what}")));

        for x in 0..m as u16 {
            if self.mul(self.one, x) != x || self.mul(x, self.one) != x {
                return fail("1*x = x*1 = x");
            }
            if self.add(x, self.neg(x)) != self.zero {
                return fail("x + (-x) = 0");
            }
        }
        if self.one == self.zero {
            return fail("1 != 0");
        }
        for &u in &self.units {
            let v = self.inv(u).expect("unit has inverse");
            if self.mul(u, v) != self.one || self.mul(v, u) != self.one {
                return fail("u * u^-1 = u^-1 * u = 1");
            }
        }

        let check_triple = |a: u16, b: u16, c: u16| -> Result<()> {
            if self.add(a, b) != self.add(b, a) {
                return fail("a + b = b + a");
            }
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return fail("(a + b) + c = a + (b + c)");
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return fail("(a * b) * c = a * (b * c)");
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return fail("a * (b + c) = a*b + a*c");
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                return fail("(a + b) * c = a*c + b*c");
            }
            Ok(())
        };

        if m <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in 0..m as u16 {
                for b in 0..m as u16 {
                    for c in 0..m as u16 {
                        check_triple(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(0x5eed_7ab1e);
            for _ in 0..RANDOM_TRIPLES {
                let a = rng.next_below(m as u64) as u16;
                let b = rng.next_below(m as u64) as u16;
                let c = rng.next_below(m as u64) as u16;
                check_triple(a, b, c)?;
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.m + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.m + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn zero(&self) -> u16 {
        self.zero
    }

    pub fn one(&self) -> u16 {
        self.one
    }

    /// Unit indices, sorted ascending.
    pub fn units(&self) -> &[u16] {
        &self.units
    }

    pub fn is_unit(&self, a: u16) -> bool {
        self.inv[a as usize].is_some()
    }

    pub fn inv(&self, a: u16) -> Option<u16> {
        self.inv[a as usize]
    }

    pub fn label(&self, a: u16) -> &str {
        &self.labels[a as usize]
    }

    /// Find an element by its label.
    pub fn element_by_label(&self, label: &str) -> Option<u16> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as u16)
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// True fields: commutative and every nonzero element a unit.
    pub fn is_field(&self) -> bool {
        self.commutative && self.units.len() == self.m - 1
    }

    /// Exponent of the additive group (lcm of additive orders).
    pub fn additive_exponent(&self) -> u64 {
        self.add_exponent
    }

    /// Canonical spec string, or a placeholder for quotient-built tables.
    pub fn name(&self) -> String {
        match &self.spec {
            Some(s) => s.canonical(),
            None => format!("quotient[{}]", self.m),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Per-constructor element codecs and arithmetic used to fill the tables.
enum Constructor {
    Zmod { n: usize },
    Gf(GfTable),
    Mat { n: usize, base: GfTable },
    Prod { factors: Vec<RingTable> },
    Trunc { base: GfTable, k: usize },
}

impl Constructor {
    fn prepare(spec: &RingSpec) -> Result<Self> {
        Ok(match spec {
            RingSpec::Zmod { n } => Constructor::Zmod { n: *n as usize },
            RingSpec::Gf(g) => Constructor::Gf(GfTable::new(g)?),
            RingSpec::Mat { n, base } => Constructor::Mat {
                n: *n as usize,
                base: GfTable::new(base)?,
            },
            RingSpec::Prod { factors } => {
                let tables: Result<Vec<RingTable>> = factors.iter().map(|f| f.build()).collect();
                Constructor::Prod { factors: tables? }
            }
            RingSpec::Trunc { base, k } => Constructor::Trunc {
                base: GfTable::new(base)?,
                k: *k as usize,
            },
        })
    }

    fn size(&self) -> usize {
        match self {
            Constructor::Zmod { n } => *n,
            Constructor::Gf(f) => f.q,
            Constructor::Mat { n, base } => base.q.pow((n * n) as u32),
            Constructor::Prod { factors } => factors.iter().map(|f| f.size()).product(),
            Constructor::Trunc { base, k } => base.q.pow(*k as u32),
        }
    }

    fn one(&self) -> usize {
        match self {
            Constructor::Zmod { .. } => 1,
            Constructor::Gf(_) => 1,
            Constructor::Mat { n, base } => {
                // Identity matrix, entries row-major with the first entry
                // least significant.
                let mut idx = 0usize;
                for pos in (0..n * n).rev() {
                    let (r, c) = (pos / n, pos % n);
                    idx = idx * base.q + usize::from(r == c);
                }
                idx
            }
            Constructor::Prod { factors } => {
                let mut idx = 0usize;
                for f in factors.iter().rev() {
                    idx = idx * f.size() + f.one() as usize;
                }
                idx
            }
            Constructor::Trunc { .. } => 1,
        }
    }

    fn add(&self, a: usize, b: usize) -> usize {
        match self {
            Constructor::Zmod { n } => (a + b) % n,
            Constructor::Gf(f) => f.add(a, b),
            Constructor::Mat { n, base } => zip_digits(a, b, base.q, n * n, |x, y| base.add(x, y)),
            Constructor::Prod { factors } => {
                zip_mixed(a, b, factors, |f, x, y| f.add(x as u16, y as u16) as usize)
            }
            Constructor::Trunc { base, k } => zip_digits(a, b, base.q, *k, |x, y| base.add(x, y)),
        }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Constructor::Zmod { n } => (a * b) % n,
            Constructor::Gf(f) => f.mul(a, b),
            Constructor::Mat { n, base } => {
                let n = *n;
                let av = digits(a, base.q, n * n);
                let bv = digits(b, base.q, n * n);
                let mut out = vec![0usize; n * n];
                for r in 0..n {
                    for c in 0..n {
                        let mut acc = 0usize;
                        for k in 0..n {
                            acc = base.add(acc, base.mul(av[r * n + k], bv[k * n + c]));
                        }
                        out[r * n + c] = acc;
                    }
                }
                undigits(&out, base.q)
            }
            Constructor::Prod { factors } => {
                zip_mixed(a, b, factors, |f, x, y| f.mul(x as u16, y as u16) as usize)
            }
            Constructor::Trunc { base, k } => {
                let k = *k;
                let av = digits(a, base.q, k);
                let bv = digits(b, base.q, k);
                let mut out = vec![0usize; k];
                for i in 0..k {
                    for j in 0..k - i {
                        out[i + j] = base.add(out[i + j], base.mul(av[i], bv[j]));
                    }
                }
                undigits(&out, base.q)
            }
        }
    }

    fn label(&self, a: usize) -> String {
        match self {
            Constructor::Zmod { .. } => a.to_string(),
            Constructor::Gf(f) => f.label(a),
            Constructor::Mat { n, base } => {
                let v = digits(a, base.q, n * n);
                let rows: Vec<String> = (0..*n)
                    .map(|r| {
                        let entries: Vec<String> =
                            (0..*n).map(|c| base.label(v[r * n + c])).collect();
                        format!("[{}]", entries.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            Constructor::Prod { factors } => {
                let mut rest = a;
                let parts: Vec<String> = factors
                    .iter()
                    .map(|f| {
                        let idx = rest % f.size();
                        rest /= f.size();
                        f.label(idx as u16).to_string()
                    })
                    .collect();
                format!("({})", parts.join(","))
            }
            Constructor::Trunc { base, k } => {
                let v = digits(a, base.q, *k);
                poly_label(&v, "e", |c| base.label(c))
            }
        }
    }
}

fn digits(mut value: usize, radix: usize, count: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(value % radix);
        value /= radix;
    }
    out
}

fn undigits(digits: &[usize], radix: usize) -> usize {
    let mut value = 0usize;
    for &d in digits.iter().rev() {
        value = value * radix + d;
    }
    value
}

fn zip_digits(
    a: usize,
    b: usize,
    radix: usize,
    count: usize,
    f: impl Fn(usize, usize) -> usize,
) -> usize {
    let av = digits(a, radix, count);
    let bv = digits(b, radix, count);
    let out: Vec<usize> = av.iter().zip(&bv).map(|(&x, &y)| f(x, y)).collect();
    undigits(&out, radix)
}

fn zip_mixed(
    a: usize,
    b: usize,
    factors: &[RingTable],
    f: impl Fn(&RingTable, usize, usize) -> usize,
) -> usize {
    let mut ra = a;
    let mut rb = b;
    let mut out = Vec::with_capacity(factors.len());
    for t in factors {
        out.push(f(t, ra % t.size(), rb % t.size()));
        ra /= t.size();
        rb /= t.size();
    }
    let mut value = 0usize;
    for (t, &d) in factors.iter().zip(&out).rev() {
        value = value * t.size() + d;
    }
    value
}

/// Polynomial-basis field arithmetic used by the gf, mat, and trunc
/// constructors. Elements are indices whose base-p digits are the
/// coefficients, constant term least significant.
struct GfTable {
    p: usize,
    k: usize,
    q: usize,
    /// Little-endian modulus, reduced mod p, length k+1, monic.
    modulus: Vec<usize>,
}

impl GfTable {
    fn new(spec: &GfSpec) -> Result<Self> {
        spec.validate()?;
        let modulus: Vec<usize> = spec
            .resolved_modulus()?
            .iter()
            .map(|&c| (c % spec.p) as usize)
            .collect();
        let table = GfTable {
            p: spec.p as usize,
            k: spec.k as usize,
            q: spec.order() as usize,
            modulus,
        };
        table.check_irreducible(spec)?;
        Ok(table)
    }

    /// Full trial division by all monic polynomials of degree 1..=k/2.
    fn check_irreducible(&self, spec: &GfSpec) -> Result<()> {
        if self.k == 1 {
            return Ok(());
        }
        for deg in 1..=self.k / 2 {
            // All monic polynomials of this degree, little-endian.
            for low in 0..self.p.pow(deg as u32) {
                let mut divisor = digits(low, self.p, deg);
                divisor.push(1);
                if self.divides(&divisor) {
                    return Err(Error::construction(format!(
                        "gf({},{}) modulus {:?} is reducible (degree-{} factor found)",
                        spec.p, spec.k, self.modulus, deg
                    )));
                }
            }
        }
        Ok(())
    }

    /// Does `divisor` (monic, little-endian) divide the modulus over Z/p?
    fn divides(&self, divisor: &[usize]) -> bool {
        let mut rem = self.modulus.clone();
        let dd = divisor.len() - 1;
        while rem.len() > dd {
            let lead = *rem.last().unwrap();
            if lead != 0 {
                let shift = rem.len() - 1 - dd;
                for (i, &dc) in divisor.iter().enumerate() {
                    let pos = shift + i;
                    rem[pos] = (rem[pos] + self.p - lead * dc % self.p) % self.p;
                }
            }
            rem.pop();
        }
        rem.iter().all(|&c| c == 0)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0usize;
        let mut mult = 1usize;
        let (mut ra, mut rb) = (a, b);
        for _ in 0..self.k {
            out += (ra % self.p + rb % self.p) % self.p * mult;
            ra /= self.p;
            rb /= self.p;
            mult *= self.p;
        }
        out
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let av = digits(a, self.p, self.k);
        let bv = digits(b, self.p, self.k);
        let mut prod = vec![0usize; 2 * self.k - 1];
        for (i, &x) in av.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in bv.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Fold x^k = -(c_0 + ... + c_{k-1} x^{k-1}) repeatedly.
        for i in (self.k..prod.len()).rev() {
            let lead = prod[i];
            if lead == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.k {
                let fold = (self.p - self.modulus[j] % self.p) % self.p;
                prod[i - self.k + j] = (prod[i - self.k + j] + lead * fold) % self.p;
            }
        }
        undigits(&prod[..self.k], self.p)
    }

    fn label(&self, a: usize) -> String {
        if self.k == 1 {
            return a.to_string();
        }
        let v = digits(a, self.p, self.k);
        poly_label(&v, "a", |c| c.to_string())
    }
}

/// Print a polynomial with the given variable, highest power first.
/// Coefficient text containing '+' is parenthesized.
fn poly_label(coeffs: &[usize], var: &str, coeff_label: impl Fn(usize) -> String) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let cl = coeff_label(c);
        let cl = if cl.contains('+') {
            format!("({cl})")
        } else {
            cl
        };
        let term = match i {
            0 => cl,
            1 if cl == "1" => var.to_string(),
            1 => format!("{cl}{var}"),
            _ if cl == "1" => format!("{var}^{i}"),
            _ => format!("{cl}{var}^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring_spec;

    fn build(text: &str) -> RingTable {
        parse_ring_spec(text).unwrap().build().unwrap()
    }

    #[test]
    fn zmod4_units_are_odd_residues() {
        let r = build("zmod(4)");
        assert_eq!(r.size(), 4);
        assert_eq!(r.units(), &[1, 3]);
        assert_eq!(r.one(), 1);
    }

    #[test]
    fn mat2_gf2_has_six_units() {
        let r = build("mat(2,gf(2))");
        assert_eq!(r.size(), 16);
        assert_eq!(r.units().len(), 6);
        assert!(!r.is_commutative());
    }

    #[test]
    fn gf9_is_a_field() {
        let r = build("gf(9)");
        assert_eq!(r.size(), 9);
        assert_eq!(r.units().len(), 8);
        assert!(r.is_field());
        assert_eq!(r.additive_exponent(), 3);
    }

    #[test]
    fn gf8_field_structure() {
        let r = build("gf(8)");
        assert!(r.is_field());
        // Multiplicative group is cyclic of order 7: every non-identity
        // unit has order 7.
        let g = 2u16; // the generator 'a'
        let mut acc = r.one();
        let mut order = 0;
        loop {
            acc = r.mul(acc, g);
            order += 1;
            if acc == r.one() {
                break;
            }
        }
        assert_eq!(order, 7);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 factors over F_2 as (x+1)^2.
        let err = parse_ring_spec("gf(2,2,[1,0,1])")
            .unwrap()
            .build()
            .unwrap_err();
        assert!(err.to_string().contains("reducible"), "{err}");
    }

    #[test]
    fn zmod_too_small_rejected() {
        assert!(parse_ring_spec("zmod(1)").is_err());
    }

    #[test]
    fn oversize_ring_refused() {
        let err = parse_ring_spec("zmod(5000)").unwrap().build().unwrap_err();
        assert!(matches!(err, Error::Scale(_)));
    }

    #[test]
    fn prod_units_multiply() {
        let a = build("gf(2)");
        let b = build("gf(3)");
        let p = build("prod(gf(2),gf(3))");
        assert_eq!(p.units().len(), a.units().len() * b.units().len());
        assert!(p.is_commutative());
        assert_eq!(p.additive_exponent(), 6);
    }

    #[test]
    fn trunc_units_have_nonzero_constant_term() {
        let r = build("trunc(gf(3),2)");
        assert_eq!(r.size(), 9);
        // Units are a0 + a1*eps with a0 != 0: 6 of them.
        assert_eq!(r.units().len(), 6);
        assert!(!r.is_field());
    }

    #[test]
    fn labels_read_naturally() {
        let f = build("gf(4)");
        assert_eq!(f.label(0), "0");
        assert_eq!(f.label(1), "1");
        assert_eq!(f.label(2), "a");
        assert_eq!(f.label(3), "a+1");

        let t = build("trunc(gf(2),2)");
        assert_eq!(t.label(2), "e");
        assert_eq!(t.label(3), "e+1");

        let m = build("mat(2,gf(2))");
        assert_eq!(m.label(m.one()), "[[1,0],[0,1]]");
    }

    #[test]
    fn element_lookup_by_label() {
        let r = build("zmod(6)");
        assert_eq!(r.element_by_label("5"), Some(5));
        assert_eq!(r.element_by_label("6"), None);
    }

    #[test]
    fn mat1_matches_base_field() {
        let m = build("mat(1,gf(5))");
        let f = build("gf(5)");
        assert_eq!(m.size(), f.size());
        for a in 0..5u16 {
            for b in 0..5u16 {
                assert_eq!(m.mul(a, b), f.mul(a, b));
                assert_eq!(m.add(a, b), f.add(a, b));
            }
        }
    }
}
