//! The Gaussian integers `Z[i]` and the order `Z[ω]`, `ω = (1+√-7)/2`.
//!
//! Elements are pairs `(x, y)` meaning `x + yω`. Ideals are given in factored
//! form over prime ideal ids produced by [`prime_split`] (`p3` for an inert
//! or ramified prime, `p2a`/`p2b` for the two primes above a split `p`).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{budget, Error, Result};
use crate::rings::RingSpec;
use crate::Budgets;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadOrder {
    /// `Z[i]`.
    Gauss,
    /// `Z[(1+√-7)/2]`.
    Minus7,
}

impl QuadOrder {
    pub fn name(self) -> &'static str {
        match self {
            QuadOrder::Gauss => "gauss",
            QuadOrder::Minus7 => "minus7",
        }
    }

    pub fn parse(s: &str) -> Result<QuadOrder> {
        match s {
            "gauss" => Ok(QuadOrder::Gauss),
            "minus7" => Ok(QuadOrder::Minus7),
            _ => Err(Error::Parse(format!("unknown order `{s}` (expected gauss or minus7)"))),
        }
    }

    /// `|μ(R)|`, the number of roots of unity.
    pub fn unit_roots(self) -> u64 {
        match self {
            QuadOrder::Gauss => 4,
            QuadOrder::Minus7 => 2,
        }
    }

    /// `(t, n)` with `ω² + tω + n = 0`.
    fn min_poly(self) -> (i64, i64) {
        match self {
            QuadOrder::Gauss => (0, 1),
            QuadOrder::Minus7 => (-1, 2),
        }
    }

    pub fn discriminant(self) -> i64 {
        let (t, n) = self.min_poly();
        t * t - 4 * n
    }

    pub fn mul(self, (x1, y1): (i64, i64), (x2, y2): (i64, i64)) -> (i64, i64) {
        let (t, n) = self.min_poly();
        let yy = y1 * y2;
        (x1 * x2 - n * yy, x1 * y2 + x2 * y1 - t * yy)
    }

    pub fn norm(self, (x, y): (i64, i64)) -> i64 {
        let (t, n) = self.min_poly();
        x * x - t * x * y + n * y * y
    }
}

impl fmt::Display for QuadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = egcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    egcd(a, b).0
}

/// A full-rank sublattice of `Z²` in Hermite normal form, spanned by
/// `(a, 0)` and `(b, c)` with `0 <= b < a`, `c > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    a: i64,
    b: i64,
    c: i64,
}

impl Lattice {
    pub fn unit() -> Lattice {
        Lattice { a: 1, b: 0, c: 1 }
    }

    /// HNF of the lattice spanned by `vecs`, which must have full rank.
    pub fn from_vectors(vecs: &[(i64, i64)]) -> Option<Lattice> {
        // Collapse the second coordinates onto one vector with y = gcd.
        let mut pivot = (0i64, 0i64);
        let mut rest = Vec::new();
        for &(x, y) in vecs {
            if y == 0 {
                rest.push(x);
                continue;
            }
            let (g, s, t) = egcd(pivot.1, y);
            // (s, t) combination has second coordinate g; the other
            // unimodular combination kills it.
            let new_pivot = (s * pivot.0 + t * x, g);
            let killed = (y / g) * pivot.0 - (pivot.1 / g) * x;
            rest.push(killed);
            pivot = new_pivot;
        }
        let a = rest.into_iter().fold(0, gcd);
        if a == 0 || pivot.1 == 0 {
            return None;
        }
        Some(Lattice { a, b: pivot.0.rem_euclid(a), c: pivot.1 })
    }

    pub fn index(&self) -> u64 {
        (self.a * self.c) as u64
    }

    pub fn basis(&self) -> [(i64, i64); 2] {
        [(self.a, 0), (self.b, self.c)]
    }

    pub fn reduce(&self, x: i64, y: i64) -> (i64, i64) {
        let k = y.div_euclid(self.c);
        let y = y.rem_euclid(self.c);
        ((x - k * self.b).rem_euclid(self.a), y)
    }

    /// Canonical index in `[0, index)` of the class of `(x, y)`.
    pub fn reduce_index(&self, x: i64, y: i64) -> u32 {
        let (x, y) = self.reduce(x, y);
        (x + self.a * y) as u32
    }

    pub fn coords(&self, idx: u32) -> (i64, i64) {
        let i = idx as i64;
        (i % self.a, i / self.a)
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        self.reduce(x, y) == (0, 0)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let [u, v] = self.basis();
        let [p, q] = other.basis();
        Lattice::from_vectors(&[u, v, p, q]).expect("sum of full-rank lattices")
    }

    /// Ideal product: span of pairwise products of Z-bases.
    pub fn product(&self, other: &Lattice, order: QuadOrder) -> Lattice {
        let mut vecs = Vec::with_capacity(4);
        for u in self.basis() {
            for v in other.basis() {
                vecs.push(order.mul(u, v));
            }
        }
        Lattice::from_vectors(&vecs).expect("product of nonzero ideals")
    }
}

/// A prime ideal above a rational prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub id: String,
    pub p: u64,
    /// Ramification index.
    pub e: u32,
    /// Residue degree.
    pub f: u32,
    /// Root of the minimal polynomial mod `p` (`None` when inert).
    root: Option<i64>,
}

impl PrimeIdeal {
    pub fn norm(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn lattice(&self, order: QuadOrder) -> Lattice {
        let p = self.p as i64;
        match self.root {
            None => Lattice::from_vectors(&[(p, 0), (0, p)]).unwrap(),
            Some(r) => {
                let g = (-r, 1);
                Lattice::from_vectors(&[(p, 0), (0, p), g, order.mul(g, (0, 1))]).unwrap()
            }
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime ideals above `p`, with ramification and residue degrees.
pub fn prime_split(order: QuadOrder, p: u64) -> Result<Vec<PrimeIdeal>> {
    if !is_prime(p) || p > 1_000_000 {
        return Err(Error::NotPrime(p));
    }
    let (t, n) = order.min_poly();
    let pi = p as i64;
    let roots: Vec<i64> = (0..pi)
        .filter(|&r| (r * r + t * r + n).rem_euclid(pi) == 0)
        .collect();
    let prime = |suffix: &str, e, f, root| PrimeIdeal { id: format!("p{p}{suffix}"), p, e, f, root };
    Ok(match roots.as_slice() {
        [] => vec![prime("", 1, 2, None)],
        [r] => vec![prime("", 2, 1, Some(*r))],
        [r, s] => vec![prime("a", 1, 1, Some(*r)), prime("b", 1, 1, Some(*s))],
        _ => unreachable!("quadratic has at most two roots mod a prime"),
    })
}

/// Looks up a prime id such as `p2`, `p2a`, `p7`.
pub fn prime_by_id(order: QuadOrder, id: &str) -> Result<PrimeIdeal> {
    let digits: String = id.strip_prefix('p').unwrap_or("").chars().take_while(char::is_ascii_digit).collect();
    let p: u64 = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad prime ideal id `{id}`")))?;
    prime_split(order, p)?
        .into_iter()
        .find(|q| q.id == id)
        .ok_or_else(|| Error::Parse(format!("`{id}` is not a prime ideal id of {order}")))
}

/// A nonzero ideal of a quadratic order in factored form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuadIdealRepr", into = "QuadIdealRepr")]
pub struct QuadIdeal {
    order: QuadOrder,
    /// Prime id -> exponent, exponents positive.
    factors: BTreeMap<String, u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadIdealRepr {
    order: QuadOrder,
    #[serde(default)]
    primes: Vec<(String, u32)>,
}

impl TryFrom<QuadIdealRepr> for QuadIdeal {
    type Error = Error;

    fn try_from(r: QuadIdealRepr) -> Result<QuadIdeal> {
        QuadIdeal::new(r.order, r.primes)
    }
}

impl From<QuadIdeal> for QuadIdealRepr {
    fn from(i: QuadIdeal) -> QuadIdealRepr {
        QuadIdealRepr { order: i.order, primes: i.factors.into_iter().collect() }
    }
}

impl QuadIdeal {
    pub fn new(order: QuadOrder, primes: impl IntoIterator<Item = (String, u32)>) -> Result<QuadIdeal> {
        let mut factors = BTreeMap::new();
        for (id, e) in primes {
            if e == 0 {
                return Err(Error::InvalidSpec(format!("exponent of {id} must be >= 1")));
            }
            prime_by_id(order, &id)?;
            *factors.entry(id).or_insert(0) += e;
        }
        Ok(QuadIdeal { order, factors })
    }

    pub fn unit(order: QuadOrder) -> QuadIdeal {
        QuadIdeal { order, factors: BTreeMap::new() }
    }

    /// Parses `"p2:4,p3:1"`; an empty string is the unit ideal.
    pub fn parse(order: &str, primes: &str) -> Result<QuadIdeal> {
        let order = QuadOrder::parse(order)?;
        let mut list = Vec::new();
        for item in primes.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (id, e) = item.split_once(':').unwrap_or((item, "1"));
            let e: u32 = e
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{item}`")))?;
            list.push((id.trim().to_string(), e));
        }
        QuadIdeal::new(order, list)
    }

    pub fn order(&self) -> QuadOrder {
        self.order
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> {
        self.factors.iter().map(|(k, &v)| (k.as_str(), v))
    }

    fn primes(&self) -> Vec<(PrimeIdeal, u32)> {
        self.factors
            .iter()
            .map(|(id, &e)| (prime_by_id(self.order, id).expect("validated id"), e))
            .collect()
    }

    pub fn norm(&self) -> u128 {
        self.primes()
            .iter()
            .map(|(q, e)| (q.norm() as u128).pow(*e))
            .product()
    }

    /// The ideal as a lattice in `Z²`.
    pub fn lattice(&self) -> Lattice {
        let mut acc = Lattice::unit();
        for (q, e) in self.primes() {
            let l = q.lattice(self.order);
            for _ in 0..e {
                acc = acc.product(&l, self.order);
            }
        }
        acc
    }

    pub fn mul(&self, other: &QuadIdeal) -> Result<QuadIdeal> {
        self.same_order(other)?;
        let mut factors = self.factors.clone();
        for (id, &e) in &other.factors {
            *factors.entry(id.clone()).or_insert(0) += e;
        }
        Ok(QuadIdeal { order: self.order, factors })
    }

    /// `A + B`, the gcd: minimum exponents.
    pub fn sum(&self, other: &QuadIdeal) -> Result<QuadIdeal> {
        self.same_order(other)?;
        let factors = self
            .factors
            .iter()
            .filter_map(|(id, &e)| other.factors.get(id).map(|&f| (id.clone(), e.min(f))))
            .collect();
        Ok(QuadIdeal { order: self.order, factors })
    }

    fn same_order(&self, other: &QuadIdeal) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::Mismatch(format!("ideals of {} and {}", self.order, other.order)))
        }
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("(1)");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(id, &e)| if e == 1 { id.clone() } else { format!("{id}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Exponent of `prime_id` in `ideal`.
pub fn valuation(order: QuadOrder, prime_id: &str, ideal: &QuadIdeal) -> Result<u32> {
    prime_by_id(order, prime_id)?;
    Ok(ideal.factors.get(prime_id).copied().unwrap_or(0))
}

fn p_adic_valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Per rational prime `p`: the exponent `v_p(|SK_1(R, I)|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sk1Term {
    pub p: u64,
    /// `floor(min_𝔭 (v_𝔭(I)/e_𝔭 - 1/(p-1)))` before clamping.
    pub floor: i64,
    pub exponent: u32,
}

/// Evaluates the Bass–Milnor–Serre order formula term by term.
pub fn sk1_terms(order: QuadOrder, ideal: &QuadIdeal) -> Result<Vec<Sk1Term>> {
    if order != ideal.order {
        return Err(Error::Mismatch(format!("ideal of {} used with {order}", ideal.order)));
    }
    let mu = order.unit_roots();
    let mut ps: Vec<u64> = ideal.primes().iter().map(|(q, _)| q.p).collect();
    ps.sort_unstable();
    ps.dedup();
    let mut out = Vec::new();
    for p in ps {
        // min over primes above p of (v(p-1) - e) / (e(p-1)), floored
        let mut best: Option<(i64, i64)> = None;
        for q in prime_split(order, p)? {
            let v = ideal.factors.get(&q.id).copied().unwrap_or(0) as i64;
            let e = q.e as i64;
            let num = v * (p as i64 - 1) - e;
            let den = e * (p as i64 - 1);
            best = Some(match best {
                Some((n0, d0)) if n0 * den <= num * d0 => (n0, d0),
                _ => (num, den),
            });
        }
        let (num, den) = best.expect("every prime has a prime above it");
        let floor = num.div_euclid(den);
        let cap = p_adic_valuation(mu, p) as i64;
        out.push(Sk1Term { p, floor, exponent: floor.clamp(0, cap) as u32 });
    }
    Ok(out)
}

/// `|SK_1(R, I)|`.
pub fn sk1_order(order: QuadOrder, ideal: &QuadIdeal) -> Result<u64> {
    Ok(sk1_terms(order, ideal)?.iter().map(|t| t.p.pow(t.exponent)).product())
}

/// The finite ring `R/I` as a ring spec, after a size check.
pub fn quotient_finite(order: QuadOrder, ideal: &QuadIdeal, budgets: &Budgets) -> Result<RingSpec> {
    if order != ideal.order {
        return Err(Error::Mismatch(format!("ideal of {} used with {order}", ideal.order)));
    }
    let norm = ideal.norm();
    if norm > budgets.ring as u128 {
        return Err(budget("ring", norm, budgets.ring as u64));
    }
    Ok(RingSpec::QuadQuotient(ideal.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma16Report {
    /// `|A / A(A+B)|`.
    pub a_quotient: u64,
    /// `|B / B(A+B)|`.
    pub b_quotient: u64,
    /// `|R / (A+B)|`.
    pub r_quotient: u64,
    pub all_equal: bool,
}

/// Compares the three quotient cardinalities through lattice indices.
pub fn check_lemma16(order: QuadOrder, a: &QuadIdeal, b: &QuadIdeal) -> Result<Lemma16Report> {
    if a.order != order || b.order != order {
        return Err(Error::Mismatch(format!("ideals must belong to {order}")));
    }
    let la = a.lattice();
    let lb = b.lattice();
    let s = la.sum(&lb);
    let a_quotient = la.product(&s, order).index() / la.index();
    let b_quotient = lb.product(&s, order).index() / lb.index();
    let r_quotient = s.index();
    Ok(Lemma16Report {
        a_quotient,
        b_quotient,
        r_quotient,
        all_equal: a_quotient == b_quotient && b_quotient == r_quotient,
    })
}
