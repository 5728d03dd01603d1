use std::fmt;
use std::sync::Arc;

use super::{Elem, Ring};
use crate::error::{budget, Error, Result};

/// A two-sided ideal with its full element set materialised.
#[derive(Clone)]
pub struct Ideal(Arc<IdealInner>);

struct IdealInner {
    ring: Ring,
    name: Option<String>,
    generators: Vec<Elem>,
    /// Additive generators: the ideal is their Z-span.
    basis: Vec<Elem>,
    elements: Vec<Elem>,
    member: Vec<bool>,
}

/// The binary and unary ideal operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
    /// `A∘B = AB + BA`.
    Symmetrised,
    /// `A^k = (..((A·A)·A)..)·A`.
    Power(u32),
}

/// Additive closure of `seeds`, returned as (sorted elements, membership, basis).
fn additive_closure(ring: &Ring, seeds: &[Elem], limit: usize) -> Result<(Vec<Elem>, Vec<bool>, Vec<Elem>)> {
    let mut member = vec![false; ring.cardinality()];
    let mut list = vec![ring.zero()];
    member[ring.zero().0 as usize] = true;
    let mut basis = Vec::new();
    for &g in seeds {
        if member[g.0 as usize] {
            continue;
        }
        basis.push(g);
        // H + <g> is the union of the cosets H + kg.
        let h = list.len();
        let mut x = g;
        while !member[x.0 as usize] {
            if list.len() + h > limit {
                return Err(budget("ideal", (list.len() + h) as u64, limit as u64));
            }
            for k in 0..h {
                let e = ring.add(list[k], x);
                member[e.0 as usize] = true;
                list.push(e);
            }
            x = ring.add(x, g);
        }
    }
    list.sort_unstable();
    Ok((list, member, basis))
}

impl Ideal {
    fn from_seeds(ring: &Ring, generators: Vec<Elem>, seeds: &[Elem]) -> Result<Ideal> {
        let (elements, member, basis) = additive_closure(ring, seeds, ring.budgets().ideal)?;
        Ok(Ideal(Arc::new(IdealInner {
            ring: ring.clone(),
            name: None,
            generators,
            basis,
            elements,
            member,
        })))
    }

    pub fn zero(ring: &Ring) -> Ideal {
        ideal_span(ring, &[]).expect("zero ideal fits any budget")
    }

    pub fn unit(ring: &Ring) -> Result<Ideal> {
        ideal_span(ring, &[ring.one()])
    }

    pub fn with_name(&self, name: impl Into<String>) -> Ideal {
        let inner = &self.0;
        Ideal(Arc::new(IdealInner {
            ring: inner.ring.clone(),
            name: Some(name.into()),
            generators: inner.generators.clone(),
            basis: inner.basis.clone(),
            elements: inner.elements.clone(),
            member: inner.member.clone(),
        }))
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.0.generators
    }

    pub fn additive_basis(&self) -> &[Elem] {
        &self.0.basis
    }

    /// All elements in increasing canonical order.
    pub fn elements(&self) -> &[Elem] {
        &self.0.elements
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0.elements.iter().copied().filter(|e| e.0 != 0)
    }

    pub fn len(&self) -> usize {
        self.0.elements.len()
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_unit(&self) -> bool {
        self.contains(self.0.ring.one())
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.0.member.get(e.0 as usize).copied().unwrap_or(false)
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.elements().iter().all(|&e| other.contains(e))
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring().same(other.ring()) {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "ideals over {:?} and {:?}",
                self.ring(),
                other.ring()
            )))
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let seeds: Vec<Elem> = self.additive_basis().iter().chain(other.additive_basis()).copied().collect();
        Ideal::from_seeds(self.ring(), seeds.clone(), &seeds)
    }

    /// `AB`: additive span of all products `ab`.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let r = self.ring();
        let seeds: Vec<Elem> = self
            .additive_basis()
            .iter()
            .flat_map(|&a| other.additive_basis().iter().map(move |&b| r.mul(a, b)))
            .collect();
        Ideal::from_seeds(r, seeds.clone(), &seeds)
    }

    pub fn symmetrised(&self, other: &Ideal) -> Result<Ideal> {
        self.product(other)?.sum(&other.product(self)?)
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let common: Vec<Elem> = self.elements().iter().copied().filter(|&e| other.contains(e)).collect();
        Ideal::from_seeds(self.ring(), Vec::new(), &common).map(|i| {
            let basis = i.additive_basis().to_vec();
            let mut inner = Arc::try_unwrap(i.0).ok().expect("fresh ideal");
            inner.generators = basis;
            Ideal(Arc::new(inner))
        })
    }

    pub fn power(&self, k: u32) -> Result<Ideal> {
        if k == 0 {
            return Err(Error::InvalidSpec("ideal power needs k >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }
}

/// The two-sided ideal generated by `gens`: the additive span of `r·g·s`.
pub fn ideal_span(ring: &Ring, gens: &[Elem]) -> Result<Ideal> {
    // r·g·s is biadditive in (r, s), so additive generators of R suffice.
    let adds = ring.additive_gens();
    let mut seeds = Vec::with_capacity(gens.len() * adds.len() * adds.len());
    for &g in gens {
        for &r in &adds {
            let rg = ring.mul(r, g);
            for &s in &adds {
                seeds.push(ring.mul(rg, s));
            }
        }
    }
    Ideal::from_seeds(ring, gens.to_vec(), &seeds)
}

pub fn ideal_contains(ideal: &Ideal, e: Elem) -> bool {
    ideal.contains(e)
}

/// Applies `op` to `args`. Binary operations fold left over two or more
/// arguments; `Power` takes exactly one.
pub fn ideal_combine(op: IdealOp, args: &[&Ideal]) -> Result<Ideal> {
    let (first, rest) = args
        .split_first()
        .ok_or_else(|| Error::InvalidSpec("ideal_combine needs at least one argument".into()))?;
    match op {
        IdealOp::Power(k) => {
            if !rest.is_empty() {
                return Err(Error::InvalidSpec("power takes one ideal".into()));
            }
            first.power(k)
        }
        _ => {
            if rest.is_empty() {
                return Err(Error::InvalidSpec(format!("{op:?} takes at least two ideals")));
            }
            let mut acc = (*first).clone();
            for b in rest {
                acc = match op {
                    IdealOp::Sum => acc.sum(b)?,
                    IdealOp::Product => acc.product(b)?,
                    IdealOp::Intersection => acc.intersection(b)?,
                    IdealOp::Symmetrised => acc.symmetrised(b)?,
                    IdealOp::Power(_) => unreachable!(),
                };
            }
            Ok(acc)
        }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Ideal) -> bool {
        self.ring().same(other.ring()) && self.elements() == other.elements()
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({}, |I|={})", self, self.len())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.name() {
            return f.write_str(n);
        }
        let r = self.ring();
        let gens: Vec<String> = if self.generators().is_empty() {
            vec!["0".into()]
        } else {
            self.generators().iter().map(|&g| r.format(g)).collect()
        };
        write!(f, "({})", gens.join(","))
    }
}
