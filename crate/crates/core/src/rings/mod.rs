//! Finite coefficient rings and their two-sided ideals.
//!
//! Every ring element is stored as an [`Elem`], an index into a canonical
//! enumeration of the ring. Two elements are equal iff their indices are
//! equal, so the index doubles as the canonical byte encoding used for
//! hashing matrices.

mod ideal;
mod parse;
mod quotient;
mod trunc;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{budget, Error, Result};
use crate::numberfields::{Lattice, QuadIdeal, QuadOrder};
use crate::Budgets;

pub use ideal::{ideal_combine, ideal_contains, ideal_span, Ideal, IdealOp};
pub use quotient::{quotient_ring, Projection};

use quotient::QuotientData;
use trunc::TruncAlg;

/// Description of a finite ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    /// `Z/m`.
    Residue { modulus: u64 },
    /// A quadratic order modulo an ideal given in factored form.
    QuadQuotient(QuadIdeal),
    /// Free associative algebra over `Z/modulus` in `vars` variables with
    /// every monomial of degree `>= degree` set to zero.
    TruncFree { modulus: u64, vars: u32, degree: u32 },
    /// Commutative counterpart of [`RingSpec::TruncFree`].
    TruncPoly { modulus: u64, vars: u32, degree: u32 },
    /// `parent / (gens)`, produced by [`quotient_ring`].
    Quotient { parent: Box<RingSpec>, gens: Vec<String> },
}

impl RingSpec {
    /// Short human tag, used in matrix text forms and reports.
    pub fn tag(&self) -> String {
        match self {
            RingSpec::Residue { modulus } => format!("Z/{modulus}"),
            RingSpec::QuadQuotient(ideal) => format!("{}/{}", ideal.order().name(), ideal),
            RingSpec::TruncFree { modulus, vars, degree } => {
                format!("Z/{modulus}<{}>_{{<{degree}}}", trunc::var_names(*vars).join(","))
            }
            RingSpec::TruncPoly { modulus, vars, degree } => {
                format!("Z/{modulus}[{}]_{{<{degree}}}", trunc::var_names(*vars).join(","))
            }
            RingSpec::Quotient { parent, gens } => format!("({})/({})", parent.tag(), gens.join(",")),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// A ring element: its index in the ring's canonical enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(transparent)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub fn index(self) -> u32 {
        self.0
    }
}

/// A finite unital ring. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct Ring(Arc<Inner>);

struct Inner {
    spec: RingSpec,
    kind: Kind,
    card: u32,
    commutative: bool,
    budgets: Budgets,
    tables: Option<Tables>,
}

enum Kind {
    Residue { m: u32 },
    Quad { order: QuadOrder, lattice: Lattice },
    Trunc(TruncAlg),
    Quotient(QuotientData),
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// Rings at most this large get precomputed operation tables.
const TABLE_LIMIT: u32 = 1 << 10;

/// Builds a ring from its spec with default budgets.
pub fn ring_make(spec: RingSpec, budgets: &Budgets) -> Result<Ring> {
    let kind = match &spec {
        RingSpec::Residue { modulus } => {
            if *modulus < 2 {
                return Err(Error::InvalidSpec(format!("modulus {modulus} < 2")));
            }
            if *modulus as u128 > budgets.ring as u128 {
                return Err(budget("ring", *modulus, budgets.ring as u64));
            }
            Kind::Residue { m: *modulus as u32 }
        }
        RingSpec::QuadQuotient(ideal) => {
            let lattice = ideal.lattice();
            let norm = lattice.index();
            if norm as u128 > budgets.ring as u128 {
                return Err(budget("ring", norm, budgets.ring as u64));
            }
            Kind::Quad { order: ideal.order(), lattice }
        }
        RingSpec::TruncFree { modulus, vars, degree } => {
            Kind::Trunc(TruncAlg::new(*modulus, *vars, *degree, false, budgets.ring)?)
        }
        RingSpec::TruncPoly { modulus, vars, degree } => {
            Kind::Trunc(TruncAlg::new(*modulus, *vars, *degree, true, budgets.ring)?)
        }
        RingSpec::Quotient { .. } => {
            return Err(Error::InvalidSpec(
                "quotient rings are built with quotient_ring".into(),
            ))
        }
    };
    Ok(Ring::from_kind(spec, kind, *budgets))
}

impl Ring {
    /// Builds a ring with [`Budgets::default`].
    pub fn new(spec: RingSpec) -> Result<Ring> {
        ring_make(spec, &Budgets::default())
    }

    fn from_kind(spec: RingSpec, kind: Kind, budgets: Budgets) -> Ring {
        let card = match &kind {
            Kind::Residue { m } => *m,
            Kind::Quad { lattice, .. } => lattice.index() as u32,
            Kind::Trunc(t) => t.card(),
            Kind::Quotient(q) => q.card(),
        };
        let mut inner = Inner {
            spec,
            kind,
            card,
            commutative: true,
            budgets,
            tables: None,
        };
        let probe = Ring(Arc::new(inner));
        let commutative = probe.compute_commutative();
        inner = Arc::try_unwrap(probe.0).ok().expect("fresh ring has one owner");
        inner.commutative = commutative;
        if !matches!(inner.kind, Kind::Residue { .. }) && card <= TABLE_LIMIT {
            let probe = Ring(Arc::new(inner));
            let tables = probe.build_tables();
            inner = Arc::try_unwrap(probe.0).ok().expect("fresh ring has one owner");
            inner.tables = Some(tables);
        }
        Ring(Arc::new(inner))
    }

    fn build_tables(&self) -> Tables {
        let c = self.0.card as usize;
        let mut add = Vec::with_capacity(c * c);
        let mut mul = Vec::with_capacity(c * c);
        for a in 0..c as u32 {
            for b in 0..c as u32 {
                add.push(self.add_slow(Elem(a), Elem(b)).0);
                mul.push(self.mul_slow(Elem(a), Elem(b)).0);
            }
        }
        let neg = (0..c as u32).map(|a| self.neg_slow(Elem(a)).0).collect();
        Tables { add, mul, neg }
    }

    fn compute_commutative(&self) -> bool {
        let gens = self.additive_gens();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul_slow(a, b) == self.mul_slow(b, a)))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn budgets(&self) -> &Budgets {
        &self.0.budgets
    }

    pub fn cardinality(&self) -> usize {
        self.0.card as usize
    }

    pub fn is_commutative(&self) -> bool {
        self.0.commutative
    }

    /// Same underlying ring (pointer or spec equality).
    pub fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.card).map(Elem)
    }

    /// Element with the given canonical index, if in range.
    pub fn elem(&self, index: u32) -> Option<Elem> {
        (index < self.0.card).then_some(Elem(index))
    }

    /// The image of the integer `k` under `Z -> R`.
    pub fn from_int(&self, k: i64) -> Elem {
        match &self.0.kind {
            Kind::Residue { m } => Elem(k.rem_euclid(*m as i64) as u32),
            Kind::Quad { lattice, .. } => Elem(lattice.reduce_index(k, 0)),
            Kind::Trunc(t) => t.from_int(k),
            Kind::Quotient(q) => q.project(q.parent.from_int(k)),
        }
    }

    /// Additive generators of `R` as an abelian group.
    pub fn additive_gens(&self) -> Vec<Elem> {
        match &self.0.kind {
            Kind::Residue { .. } => vec![self.from_int(1)],
            Kind::Quad { lattice, .. } => {
                vec![Elem(lattice.reduce_index(1, 0)), Elem(lattice.reduce_index(0, 1))]
            }
            Kind::Trunc(t) => t.monomial_elems(),
            Kind::Quotient(q) => {
                let mut g: Vec<Elem> = q.parent.additive_gens().into_iter().map(|e| q.project(e)).collect();
                g.sort();
                g.dedup();
                g
            }
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match (&self.0.kind, &self.0.tables) {
            (Kind::Residue { m }, _) => {
                let s = a.0 + b.0;
                Elem(if s >= *m { s - m } else { s })
            }
            (_, Some(t)) => Elem(t.add[(a.0 * self.0.card + b.0) as usize]),
            _ => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match (&self.0.kind, &self.0.tables) {
            (Kind::Residue { m }, _) => Elem(if a.0 == 0 { 0 } else { m - a.0 }),
            (_, Some(t)) => Elem(t.neg[a.0 as usize]),
            _ => self.neg_slow(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match (&self.0.kind, &self.0.tables) {
            (Kind::Residue { m }, _) => Elem(((a.0 as u64 * b.0 as u64) % *m as u64) as u32),
            (_, Some(t)) => Elem(t.mul[(a.0 * self.0.card + b.0) as usize]),
            _ => self.mul_slow(a, b),
        }
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.kind {
            Kind::Residue { m } => Elem(((a.0 as u64 + b.0 as u64) % *m as u64) as u32),
            Kind::Quad { lattice, .. } => {
                let (x1, y1) = lattice.coords(a.0);
                let (x2, y2) = lattice.coords(b.0);
                Elem(lattice.reduce_index(x1 + x2, y1 + y2))
            }
            Kind::Trunc(t) => t.add(a, b),
            Kind::Quotient(q) => q.project(q.parent.add(q.rep(a), q.rep(b))),
        }
    }

    fn neg_slow(&self, a: Elem) -> Elem {
        match &self.0.kind {
            Kind::Residue { m } => Elem((*m - a.0) % *m),
            Kind::Quad { lattice, .. } => {
                let (x, y) = lattice.coords(a.0);
                Elem(lattice.reduce_index(-x, -y))
            }
            Kind::Trunc(t) => t.neg(a),
            Kind::Quotient(q) => q.project(q.parent.neg(q.rep(a))),
        }
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.kind {
            Kind::Residue { m } => Elem(((a.0 as u64 * b.0 as u64) % *m as u64) as u32),
            Kind::Quad { order, lattice } => {
                let (x, y) = order.mul(lattice.coords(a.0), lattice.coords(b.0));
                Elem(lattice.reduce_index(x, y))
            }
            Kind::Trunc(t) => t.mul(a, b),
            Kind::Quotient(q) => q.project(q.parent.mul(q.rep(a), q.rep(b))),
        }
    }

    /// `k * a` for an integer `k`.
    pub fn scale(&self, k: i64, a: Elem) -> Elem {
        self.mul(self.from_int(k), a)
    }

    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        (0..k).fold(self.one(), |acc, _| self.mul(acc, a))
    }

    /// For quadratic quotients: the class of `x + yω`.
    pub fn quad_element(&self, x: i64, y: i64) -> Option<Elem> {
        match &self.0.kind {
            Kind::Quad { lattice, .. } => Some(Elem(lattice.reduce_index(x, y))),
            _ => None,
        }
    }

    /// Named generators usable in element expressions.
    pub fn variable(&self, name: &str) -> Option<Elem> {
        match &self.0.kind {
            Kind::Residue { .. } => None,
            Kind::Quad { order, lattice } => {
                (name == "w" || (name == "i" && *order == QuadOrder::Gauss))
                    .then(|| Elem(lattice.reduce_index(0, 1)))
            }
            Kind::Trunc(t) => t.variable(name),
            Kind::Quotient(q) => q.parent.variable(name).map(|e| q.project(e)),
        }
    }

    /// Parses an element expression such as `3`, `x*y + 2*y^2` or `1+w`.
    pub fn parse(&self, text: &str) -> Result<Elem> {
        parse::parse_elem(self, text)
    }

    /// Canonical printable form.
    pub fn format(&self, a: Elem) -> String {
        match &self.0.kind {
            Kind::Residue { .. } => a.0.to_string(),
            Kind::Quad { lattice, .. } => {
                let (x, y) = lattice.coords(a.0);
                match (x, y) {
                    (x, 0) => x.to_string(),
                    (0, 1) => "w".into(),
                    (0, y) => format!("{y}*w"),
                    (x, 1) => format!("{x}+w"),
                    (x, y) => format!("{x}+{y}*w"),
                }
            }
            Kind::Trunc(t) => t.format(a),
            Kind::Quotient(q) => q.parent.format(q.rep(a)),
        }
    }

    fn quotient_data(&self) -> Option<&QuotientData> {
        match &self.0.kind {
            Kind::Quotient(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.spec.tag())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn residue(m: u64) -> Ring {
        Ring::new(RingSpec::Residue { modulus: m }).unwrap()
    }

    fn free(m: u64, v: u32, d: u32) -> Ring {
        Ring::new(RingSpec::TruncFree { modulus: m, vars: v, degree: d }).unwrap()
    }

    #[test]
    fn residue_basics() {
        let r = residue(8);
        assert_eq!(r.cardinality(), 8);
        assert_eq!(r.add(r.one(), r.from_int(7)), r.zero());
        assert_eq!(r.from_int(-1), r.from_int(7));
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(
            Ring::new(RingSpec::Residue { modulus: 1 }),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            Ring::new(RingSpec::TruncFree { modulus: 2, vars: 2, degree: 0 }),
            Err(Error::InvalidSpec(_))
        ));
        let tiny = Budgets { ring: 100, ..Budgets::default() };
        assert!(matches!(
            ring_make(RingSpec::TruncFree { modulus: 2, vars: 2, degree: 3 }, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn free_algebra_cardinality_and_noncommutativity() {
        let r = free(2, 2, 3);
        // monomials 1, x, y, xx, xy, yx, yy
        assert_eq!(r.cardinality(), 1 << 7);
        let x = r.variable("x").unwrap();
        let y = r.variable("y").unwrap();
        assert_ne!(r.mul(x, y), r.mul(y, x));
        assert!(!r.is_commutative());
        assert_eq!(r.mul(r.mul(x, y), x), r.zero());
        assert_eq!(r.format(r.add(r.mul(x, y), r.one())), "1+x*y");
    }

    #[test]
    fn poly_quotient_is_commutative() {
        let r = Ring::new(RingSpec::TruncPoly { modulus: 2, vars: 2, degree: 3 }).unwrap();
        // 1, x, y, x^2, xy, y^2
        assert_eq!(r.cardinality(), 1 << 6);
        assert!(r.is_commutative());
    }

    #[test]
    fn parse_round_trip() {
        let r = free(4, 2, 3);
        let e = r.parse("3*x*y - y^2 + 2").unwrap();
        assert_eq!(r.parse(&r.format(e)).unwrap(), e);
        assert!(r.parse("q").is_err());
        let z = residue(12);
        assert_eq!(z.parse("-5").unwrap(), z.from_int(7));
    }

    fn ring_laws(r: &Ring, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = r.cardinality() as u32;
        for _ in 0..200 {
            let a = Elem(rng.gen_range(0..n));
            let b = Elem(rng.gen_range(0..n));
            let c = Elem(rng.gen_range(0..n));
            assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
            assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
            assert_eq!(r.mul(r.add(a, b), c), r.add(r.mul(a, c), r.mul(b, c)));
            assert_eq!(r.mul(r.one(), a), a);
            assert_eq!(r.mul(a, r.one()), a);
            assert_eq!(r.add(a, r.neg(a)), r.zero());
        }
    }

    #[test]
    fn ring_laws_hold_for_every_variant() {
        use crate::numberfields::QuadIdeal;
        let rings = [
            residue(36),
            free(2, 2, 3),
            free(3, 2, 3),
            Ring::new(RingSpec::TruncPoly { modulus: 4, vars: 2, degree: 3 }).unwrap(),
            Ring::new(RingSpec::QuadQuotient(QuadIdeal::parse("gauss", "p2:4").unwrap())).unwrap(),
            Ring::new(RingSpec::QuadQuotient(QuadIdeal::parse("minus7", "p2a:2,p2b:1,p3:1").unwrap()))
                .unwrap(),
        ];
        for (k, r) in rings.iter().enumerate() {
            ring_laws(r, k as u64);
        }
        let base = free(2, 2, 3);
        let x = base.variable("x").unwrap();
        let (q, _) = quotient_ring(&base, &ideal_span(&base, &[x]).unwrap()).unwrap();
        ring_laws(&q, 99);
    }
}
