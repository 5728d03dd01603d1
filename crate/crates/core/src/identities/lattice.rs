//! The lattice of `H(r) = [E(n,I^r), E(n,I^(m-r))]` over `Z/p^(m+1)`,
//! `I = (p)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Ctx, Verdict};
use crate::error::{Error, Result};
use crate::group::{compare, Closure, ClosureSummary, Engine, Membership, Relation};
use crate::matgl::{gens_family, Family, Gl, ParamRange};
use crate::numberfields::{gcd, is_prime};
use crate::rings::{ideal_span, ring_make, Ideal, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRow {
    pub r: usize,
    pub order: usize,
}

/// A failed assertion with a generator of the smaller side as witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFailure {
    pub assertion: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeTable {
    pub p: u64,
    pub m: usize,
    pub n: usize,
    pub modulus: u64,
    pub rows: Vec<LatticeRow>,
    /// `relations[r][s]` compares `H(r)` with `H(s)`.
    pub relations: Vec<Vec<Relation>>,
    /// `generic[r][s]`: `gcd(s,m)` divides `gcd(r,m)`, so `H(r) ≤ H(s)` is
    /// asserted.
    pub generic: Vec<Vec<bool>>,
    /// Order of `E(n,R,I^m)`.
    pub level_order: usize,
    /// Equalities `H(r) = H(s)` seen beyond the generic pattern.
    pub extra_equalities: Vec<(usize, usize)>,
    pub failures: Vec<LatticeFailure>,
    #[serde(skip)]
    pub closures: Vec<ClosureSummary>,
}

impl LatticeTable {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn included(gl: &Gl, what: String, x: &Closure, y: &Closure, out: &mut Vec<LatticeFailure>) {
    if let Some(g) = x.gens().iter().find(|g| y.member(g.mat()) != Membership::In) {
        out.push(LatticeFailure { assertion: what, witness: gl.format(g.mat()) });
    }
}

/// Builds every `H(r)`, compares them pairwise and checks the generic
/// inclusions, the symmetry `H(r) = H(m-r)` and `E(n,R,I^m) ≤ H(r)`.
pub fn lattice_experiment(engine: &Engine, p: u64, m: usize, n: usize, budget: usize) -> Result<LatticeTable> {
    if m < 2 {
        return Err(Error::InvalidSpec(format!("lattice needs m >= 2, got {m}")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let modulus = (p as u128)
        .checked_pow(m as u32 + 1)
        .filter(|&q| q <= u64::MAX as u128)
        .ok_or_else(|| Error::InvalidSpec(format!("{p}^{} is too large", m + 1)))? as u64;
    let ring = ring_make(RingSpec::Residue { modulus }, engine.budgets())?;
    let gl = Gl::new(ring.clone(), n)?;
    let i = ideal_span(&ring, &[ring.from_int(p as i64)])?;
    let pow = |k: usize| -> Result<Ideal> {
        if k == 0 {
            Ideal::unit(&ring)
        } else {
            i.power(k as u32)
        }
    };
    let e = |a: &Ideal| gens_family(&gl, &Family::Unrelative(a.clone()), ParamRange::Additive);
    let mut closures = Vec::new();
    let mut hs: Vec<Arc<Closure>> = Vec::new();
    for r in 0..=m {
        let h = engine.mutual_commutator(&e(&pow(r)?)?, &e(&pow(m - r)?)?, budget)?;
        closures.push(h.summary(format!("H({r})")));
        if !h.is_complete() {
            return Err(Error::Incomplete(format!("H({r}) exceeded the closure budget of {budget}")));
        }
        hs.push(h);
    }
    let top = pow(m)?;
    let rel = gens_family(&gl, &Family::Relative(top), ParamRange::All)?;
    let level = engine.close(&rel, budget);
    closures.push(level.summary(format!("E({n},R,I^{m})")));
    if !level.is_complete() {
        return Err(Error::Incomplete(format!("E(n,R,I^{m}) exceeded the closure budget of {budget}")));
    }
    let g = |k: usize| gcd(k as i64, m as i64) as usize;
    let generic: Vec<Vec<bool>> = (0..=m).map(|r| (0..=m).map(|s| g(r) % g(s) == 0).collect()).collect();
    let relations: Vec<Vec<Relation>> = (0..=m).map(|r| (0..=m).map(|s| compare(&hs[r], &hs[s])).collect()).collect();
    let mut failures = Vec::new();
    let mut extra = Vec::new();
    for r in 0..=m {
        included(&gl, format!("E(n,R,I^{m}) ≤ H({r})"), &level, &hs[r], &mut failures);
        for s in 0..=m {
            if generic[r][s] {
                included(&gl, format!("H({r}) ≤ H({s})"), &hs[r], &hs[s], &mut failures);
            }
            if r < s && relations[r][s] == Relation::Equal && !(generic[r][s] && generic[s][r]) {
                extra.push((r, s));
            }
        }
        included(&gl, format!("H({r}) = H({})", m - r), &hs[r], &hs[m - r], &mut failures);
    }
    Ok(LatticeTable {
        p,
        m,
        n,
        modulus,
        rows: hs.iter().enumerate().map(|(r, h)| LatticeRow { r, order: h.order() }).collect(),
        relations,
        generic,
        level_order: level.order(),
        extra_equalities: extra,
        failures,
        closures,
    })
}

pub(super) fn claim(ctx: &mut Ctx) -> Result<Verdict> {
    let p = ctx.params.p.unwrap_or(2);
    let m = ctx.params.m.unwrap_or(4);
    let n = ctx.n();
    if n < 3 {
        return Err(Error::HypothesisViolated(format!("lattice needs n >= 3, got {n}")));
    }
    let table = lattice_experiment(ctx.engine, p, m, n, ctx.budget)?;
    ctx.closures.extend(table.closures.iter().cloned());
    ctx.counts.evaluated = ((m + 1) * (m + 1)) as u64;
    ctx.counts.space = ctx.counts.evaluated;
    ctx.note(format!("built over Z/{}, I = ({p})", table.modulus));
    for (r, s) in &table.extra_equalities {
        ctx.note(format!("observed H({r}) = H({s}) beyond the generic pattern"));
    }
    let orders: Vec<String> = table.rows.iter().map(|row| format!("|H({})| = {}", row.r, row.order)).collect();
    ctx.note(orders.join(", "));
    Ok(match table.failures.first() {
        None => Verdict::Pass,
        Some(f) => Verdict::Fail { witness: f.witness.clone(), context: f.assertion.clone() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Budgets;

    #[test]
    fn lattice_m2_over_z8() {
        let e = Engine::new(Budgets::default());
        let t = lattice_experiment(&e, 2, 2, 3, 1 << 21).unwrap();
        assert!(t.passed(), "{:?}", t.failures);
        assert_eq!(t.relations[0][2], Relation::Equal);
        assert!(matches!(t.relations[0][1], Relation::Equal | Relation::LeftInRight));
        assert_eq!(t.rows.len(), 3);
    }

    #[test]
    fn lattice_rejects_bad_input() {
        let e = Engine::new(Budgets::default());
        assert!(lattice_experiment(&e, 4, 2, 3, 1 << 21).is_err());
        assert!(lattice_experiment(&e, 2, 1, 3, 1 << 21).is_err());
    }

    #[test]
    fn generic_pattern_is_the_divisor_lattice() {
        let e = Engine::new(Budgets::default());
        let t = lattice_experiment(&e, 2, 3, 3, 1 << 21).unwrap();
        // gcd(1,3) = gcd(2,3) = 1, gcd(0,3) = gcd(3,3) = 3
        assert!(t.generic[1][2] && t.generic[2][1]);
        assert!(t.generic[0][1] && !t.generic[1][0]);
        assert!(t.passed());
    }
}
