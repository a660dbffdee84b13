use super::table::RingTable;
use super::RingSpec;
use crate::util::SplitMix64;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Which multiplications an ideal absorbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// A verified ideal of a ring: sorted member indices, closed under addition
/// and the claimed-side multiplication, containing zero.
#[derive(Debug, Clone)]
pub struct Ideal {
    members: Vec<u16>,
    side: Side,
    ring_size: usize,
}

impl Ideal {
    /// Verify closure properties and wrap. Members are sorted and deduped.
    pub fn new(ring: &RingTable, mut members: Vec<u16>, side: Side) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let set: BTreeSet<u16> = members.iter().copied().collect();
        if !set.contains(&ring.zero()) {
            return Err(Error::argument("ideal must contain zero".to_string()));
        }
        for &a in &members {
            for &b in &members {
                if !set.contains(&ring.add(a, b)) {
                    return Err(Error::argument(
                        "ideal not closed under addition".to_string(),
                    ));
                }
            }
        }
        let absorb_left = matches!(side, Side::Left | Side::TwoSided);
        let absorb_right = matches!(side, Side::Right | Side::TwoSided);
        for r in 0..ring.size() as u16 {
            for &a in &members {
                if absorb_left && !set.contains(&ring.mul(r, a)) {
                    return Err(Error::argument(
                        "ideal not closed under left multiplication".to_string(),
                    ));
                }
                if absorb_right && !set.contains(&ring.mul(a, r)) {
                    return Err(Error::argument(
                        "ideal not closed under right multiplication".to_string(),
                    ));
                }
            }
        }
        Ok(Ideal {
            members,
            side,
            ring_size: ring.size(),
        })
    }

    pub fn members(&self) -> &[u16] {
        &self.members
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: u16) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    /// Proper means not the whole ring.
    pub fn is_proper(&self) -> bool {
        self.members.len() < self.ring_size
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }
}

/// A quotient ring together with the projection that defines it.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub quotient: std::sync::Arc<RingTable>,
    /// Element index in the base ring -> coset index in the quotient.
    pub projection: Vec<u16>,
}

impl QuotientMap {
    #[inline]
    pub fn project(&self, a: u16) -> u16 {
        self.projection[a as usize]
    }
}

impl RingTable {
    /// Brute-force Jacobson radical: the set of `s` such that `1 + r*s` is
    /// a unit for every `r`. The symmetric condition (`1 + s*r` a unit) is
    /// asserted on the result, and the returned ideal is verified two-sided.
    pub fn jacobson_radical(&self) -> Ideal {
        let m = self.size() as u16;
        let one = self.one();
        let mut members = Vec::new();
        'candidates: for s in 0..m {
            for r in 0..m {
                if !self.is_unit(self.add(one, self.mul(r, s))) {
                    continue 'candidates;
                }
            }
            members.push(s);
        }
        for &s in &members {
            for r in 0..m {
                assert!(
                    self.is_unit(self.add(one, self.mul(s, r))),
                    "radical member {s} fails the symmetric unit condition"
                );
            }
        }
        Ideal::new(self, members, Side::TwoSided).expect("the radical is a two-sided ideal")
    }

    /// Quotient by a proper two-sided ideal. Cosets are indexed by their
    /// minimal representative, in ascending order; the projection is
    /// verified to be a surjective ring homomorphism (on all pairs up to
    /// size 256, by seeded spot check above).
    pub fn quotient(&self, ideal: &Ideal) -> Result<QuotientMap> {
        if ideal.side() != Side::TwoSided {
            return Err(Error::argument(
                "quotient requires a two-sided ideal".to_string(),
            ));
        }
        if !ideal.is_proper() {
            return Err(Error::argument(
                "quotient by the whole ring is not a ring".to_string(),
            ));
        }
        let m = self.size();
        let unassigned = u16::MAX;
        let mut coset_of = vec![unassigned; m];
        let mut reps: Vec<u16> = Vec::new();
        for a in 0..m as u16 {
            if coset_of[a as usize] != unassigned {
                continue;
            }
            let c = reps.len() as u16;
            reps.push(a);
            for &j in ideal.members() {
                coset_of[self.add(a, j) as usize] = c;
            }
        }
        let qm = reps.len();
        if qm * ideal.len() != m {
            return Err(Error::construction(
                "cosets do not partition the ring evenly".to_string(),
            ));
        }

        let mut add = vec![0u16; qm * qm];
        let mut mul = vec![0u16; qm * qm];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * qm + j] = coset_of[self.add(a, b) as usize];
                mul[i * qm + j] = coset_of[self.mul(a, b) as usize];
            }
        }
        let labels = reps.iter().map(|&r| self.label(r).to_string()).collect();
        let one = coset_of[self.one() as usize] as usize;
        let quotient = RingTable::finish(None, qm, add, mul, one, labels)?;

        let projection = coset_of;
        let check_pair = |a: u16, b: u16| -> Result<()> {
            let pa = projection[a as usize];
            let pb = projection[b as usize];
            let ok = projection[self.add(a, b) as usize] == quotient.add(pa, pb)
                && projection[self.mul(a, b) as usize] == quotient.mul(pa, pb);
            if ok {
                Ok(())
            } else {
                Err(Error::construction(
                    "quotient projection is not a ring homomorphism".to_string(),
                ))
            }
        };
        if m <= 256 {
            for a in 0..m as u16 {
                for b in 0..m as u16 {
                    check_pair(a, b)?;
                }
            }
        } else {
            let mut rng = SplitMix64::new(0x900d_cafe);
            for _ in 0..100_000 {
                let a = rng.next_below(m as u64) as u16;
                let b = rng.next_below(m as u64) as u16;
                check_pair(a, b)?;
            }
        }
        Ok(QuotientMap {
            quotient: std::sync::Arc::new(quotient),
            projection,
        })
    }

    /// An isomorphism onto the opposite ring, when the constructor provides
    /// one: the identity for commutative rings, the transpose for matrix
    /// rings, componentwise for products. `None` when no map is available.
    /// The returned permutation satisfies `phi(xy) = phi(y)phi(x)` and is an
    /// involution (verified exhaustively up to size 256).
    pub fn opposite_iso(&self) -> Option<Vec<u16>> {
        let map = self.opposite_iso_unchecked()?;
        let m = self.size();
        if m <= 256 {
            for x in 0..m as u16 {
                assert_eq!(
                    map[map[x as usize] as usize], x,
                    "opposite map is not an involution"
                );
                for y in 0..m as u16 {
                    assert_eq!(
                        map[self.mul(x, y) as usize],
                        self.mul(map[y as usize], map[x as usize]),
                        "opposite map does not reverse multiplication"
                    );
                    assert_eq!(
                        map[self.add(x, y) as usize],
                        self.add(map[x as usize], map[y as usize]),
                        "opposite map is not additive"
                    );
                }
            }
        }
        Some(map)
    }

    fn opposite_iso_unchecked(&self) -> Option<Vec<u16>> {
        if self.is_commutative() {
            return Some((0..self.size() as u16).collect());
        }
        match &self.spec {
            Some(RingSpec::Mat { n, base }) => {
                let n = *n as usize;
                let q = base.order() as usize;
                let map = (0..self.size())
                    .map(|idx| {
                        // Transpose the row-major entry vector.
                        let mut entries = vec![0usize; n * n];
                        let mut rest = idx;
                        for e in entries.iter_mut() {
                            *e = rest % q;
                            rest /= q;
                        }
                        let mut out = 0usize;
                        for pos in (0..n * n).rev() {
                            let (r, c) = (pos / n, pos % n);
                            out = out * q + entries[c * n + r];
                        }
                        out as u16
                    })
                    .collect();
                Some(map)
            }
            Some(RingSpec::Prod { factors }) => {
                let tables: Vec<RingTable> = factors
                    .iter()
                    .map(|f| f.build().ok())
                    .collect::<Option<_>>()?;
                let maps: Vec<Vec<u16>> = tables
                    .iter()
                    .map(|t| t.opposite_iso())
                    .collect::<Option<_>>()?;
                let map = (0..self.size())
                    .map(|idx| {
                        let mut rest = idx;
                        let mut comps = Vec::with_capacity(tables.len());
                        for (t, phi) in tables.iter().zip(&maps) {
                            comps.push(phi[rest % t.size()] as usize);
                            rest /= t.size();
                        }
                        let mut out = 0usize;
                        for (t, &c) in tables.iter().zip(&comps).rev() {
                            out = out * t.size() + c;
                        }
                        out as u16
                    })
                    .collect();
                Some(map)
            }
            _ => None,
        }
    }

    /// All distinct principal left ideals `R*x`, each verified closed,
    /// sorted by size then members.
    pub fn principal_left_ideals(&self) -> Vec<Ideal> {
        let m = self.size() as u16;
        let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
        for x in 0..m {
            let mut members: Vec<u16> = (0..m).map(|r| self.mul(r, x)).collect();
            members.sort_unstable();
            members.dedup();
            seen.insert(members);
        }
        let mut ideals: Vec<Ideal> = seen
            .into_iter()
            .map(|members| Ideal::new(self, members, Side::Left).expect("R*x is a left ideal"))
            .collect();
        ideals.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.members().cmp(b.members()))
        });
        ideals
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
    fn radical_of_zmod4() {
        let r = build("zmod(4)");
        assert_eq!(r.jacobson_radical().members(), &[0, 2]);
    }

    #[test]
    fn radical_of_matrix_ring_is_zero() {
        let r = build("mat(2,gf(2))");
        assert_eq!(r.jacobson_radical().members(), &[0]);
    }

    #[test]
    fn radical_of_dual_numbers() {
        // F_2[e]/(e^2): radical is {0, e}.
        let r = build("trunc(gf(2),2)");
        let j = r.jacobson_radical();
        assert_eq!(j.members().len(), 2);
        assert!(j.contains(r.element_by_label("e").unwrap()));
    }

    #[test]
    fn radical_of_semisimple_rings_is_zero() {
        for text in ["gf(7)", "prod(gf(2),gf(3))", "zmod(6)"] {
            let r = build(text);
            assert!(r.jacobson_radical().is_zero(), "{text}");
        }
    }

    #[test]
    fn quotient_zmod4_by_radical_is_f2() {
        let r = build("zmod(4)");
        let j = r.jacobson_radical();
        let q = r.quotient(&j).unwrap();
        assert_eq!(q.quotient.size(), 2);
        assert!(q.quotient.is_field());
        assert_eq!(q.project(0), q.project(2));
        assert_eq!(q.project(1), q.project(3));
        assert_ne!(q.project(0), q.project(1));
    }

    #[test]
    fn quotient_by_zero_is_isomorphic_copy() {
        let r = build("zmod(4)");
        let zero = Ideal::new(&r, vec![0], Side::TwoSided).unwrap();
        let q = r.quotient(&zero).unwrap();
        assert_eq!(q.quotient.size(), 4);
        for a in 0..4u16 {
            for b in 0..4u16 {
                assert_eq!(q.quotient.add(a, b), r.add(a, b));
                assert_eq!(q.quotient.mul(a, b), r.mul(a, b));
            }
        }
    }

    #[test]
    fn quotient_trunc_gf3_matches_gf3() {
        let r = build("trunc(gf(3),2)");
        let j = r.jacobson_radical();
        assert_eq!(j.len(), 3);
        let q = r.quotient(&j).unwrap();
        let f3 = build("gf(3)");
        assert_eq!(q.quotient.size(), 3);
        // Coset reps are 0,1,2 (the constant polynomials), so the tables
        // must agree entrywise with F_3.
        for a in 0..3u16 {
            for b in 0..3u16 {
                assert_eq!(q.quotient.mul(a, b), f3.mul(a, b));
                assert_eq!(q.quotient.add(a, b), f3.add(a, b));
            }
        }
    }

    #[test]
    fn improper_quotient_rejected() {
        let r = build("zmod(4)");
        let whole = Ideal::new(&r, (0..4).collect(), Side::TwoSided).unwrap();
        assert!(r.quotient(&whole).is_err());
    }

    #[test]
    fn one_sided_quotient_rejected() {
        let r = build("mat(2,gf(2))");
        let left = r
            .principal_left_ideals()
            .into_iter()
            .find(|i| i.len() == 4)
            .unwrap();
        assert!(r.quotient(&left).is_err());
    }

    #[test]
    fn opposite_of_commutative_is_identity() {
        let r = build("zmod(6)");
        let phi = r.opposite_iso().unwrap();
        assert!(phi.iter().enumerate().all(|(i, &p)| i == p as usize));
    }

    #[test]
    fn opposite_of_matrix_ring_is_transpose() {
        let r = build("mat(2,gf(2))");
        let phi = r.opposite_iso().unwrap();
        // Not the identity (the ring is noncommutative), but an involution
        // reversing products; those properties are asserted inside
        // opposite_iso. Spot-check one transposition: E12 <-> E21.
        let e12 = r.element_by_label("[[0,1],[0,0]]").unwrap();
        let e21 = r.element_by_label("[[0,0],[1,0]]").unwrap();
        assert_eq!(phi[e12 as usize], e21);
        assert_eq!(phi[e21 as usize], e12);
    }

    #[test]
    fn principal_ideals_of_a_field_are_trivial() {
        let r = build("gf(5)");
        let ideals = r.principal_left_ideals();
        let sizes: Vec<usize> = ideals.iter().map(|i| i.len()).collect();
        assert_eq!(sizes, vec![1, 5]);
    }

    #[test]
    fn principal_ideals_of_zmod4() {
        let r = build("zmod(4)");
        let sizes: Vec<usize> = r.principal_left_ideals().iter().map(|i| i.len()).collect();
        assert_eq!(sizes, vec![1, 2, 4]);
    }

    #[test]
    fn matrix_ring_has_a_rank_one_left_ideal() {
        let r = build("mat(2,gf(2))");
        let ideals = r.principal_left_ideals();
        assert!(ideals.iter().any(|i| i.len() == 4));
    }

    #[test]
    fn radical_of_quotient_is_zero() {
        for text in [
            "zmod(4)",
            "zmod(8)",
            "zmod(9)",
            "trunc(gf(2),2)",
            "trunc(gf(3),2)",
        ] {
            let r = build(text);
            let j = r.jacobson_radical();
            let q = r.quotient(&j).unwrap();
            assert!(q.quotient.jacobson_radical().is_zero(), "{text}");
        }
    }

    #[test]
    fn prod_radical_is_componentwise() {
        let r = build("prod(gf(2),gf(3))");
        assert!(r.jacobson_radical().is_zero());

        let r = build("prod(gf(2),gf(2),gf(2))");
        assert!(r.jacobson_radical().is_zero());

        // Nontrivial factors: the radical of the product decomposes as the
        // product of the factor radicals, checked by index decomposition.
        let zmod4 = build("zmod(4)");
        let trunc = build("trunc(gf(3),2)");
        let prod = build("prod(zmod(4),trunc(gf(3),2))");
        let j4: Vec<u16> = zmod4.jacobson_radical().members().to_vec();
        let jt: Vec<u16> = trunc.jacobson_radical().members().to_vec();
        let mut expected: Vec<u16> = j4
            .iter()
            .flat_map(|&a| jt.iter().map(move |&b| a + 4 * b))
            .collect();
        expected.sort_unstable();
        assert_eq!(prod.jacobson_radical().members(), expected.as_slice());
    }

    #[test]
    fn nakayama_divisibility() {
        // If J != 0 and R/J = F_q then q divides |J|.
        for text in [
            "zmod(4)",
            "zmod(9)",
            "zmod(25)",
            "trunc(gf(2),2)",
            "trunc(gf(3),2)",
        ] {
            let r = build(text);
            let j = r.jacobson_radical();
            assert!(!j.is_zero(), "{text}");
            let q = r.quotient(&j).unwrap();
            assert!(q.quotient.is_field(), "{text}");
            assert_eq!(j.len() % q.quotient.size(), 0, "{text}");
        }
    }
}
