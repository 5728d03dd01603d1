//! Elementary commutators `y_ij(a,b)` as symbols with values in
//! `[E(n,A),E(n,B)] / E(n,R,A∘B)`.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Ctx, Verdict};
use crate::error::{Error, Result};
use crate::group::{Closure, ClosureSummary, Engine};
use crate::matgl::{gens_family, Family, Gl, GlElem, Mat, ParamRange};
use crate::rings::{Elem, Ideal};

/// Tuples per relation family beyond which relations are sampled.
const RELATION_LIMIT: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolEntry {
    pub a: String,
    pub b: String,
    pub coset: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolViolation {
    pub relation: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolTable {
    pub commutator_order: usize,
    pub level_order: usize,
    /// `|[E(n,A),E(n,B)] : E(n,R,A∘B)|`.
    pub quotient_order: usize,
    /// Distinct cosets hit by some `y_12(a,b)`.
    pub image_size: usize,
    pub map: Vec<SymbolEntry>,
    pub pair_independent: bool,
    pub violations: Vec<SymbolViolation>,
    /// Relation tuples evaluated.
    pub evaluated: u64,
    pub sampled: bool,
    #[serde(skip)]
    pub closures: Vec<ClosureSummary>,
}

impl SymbolTable {
    pub fn well_defined(&self) -> bool {
        self.pair_independent && self.violations.is_empty()
    }
}

struct Cosets<'a> {
    group: &'a Closure,
    ids: Vec<u32>,
}

impl Cosets<'_> {
    fn of(&self, g: &Mat) -> Option<u32> {
        self.group.position(g).map(|k| self.ids[k])
    }
}

fn coset_table<'a>(gl: &Gl, group: &'a Closure, sub: &Closure) -> Result<(Cosets<'a>, usize)> {
    let mut ids = vec![u32::MAX; group.order()];
    let mut next = 0u32;
    for k in 0..group.order() {
        if ids[k] != u32::MAX {
            continue;
        }
        let g = group.element(k).expect("in range");
        for h in sub.elements() {
            let pos = group
                .position(&gl.mul(g, h))
                .ok_or_else(|| Error::NotSubgroup("E(n,R,A∘B) is not inside [E(n,A),E(n,B)]".into()))?;
            ids[pos] = next;
        }
        next += 1;
    }
    Ok((Cosets { group, ids }, next as usize))
}

/// Index tuples: all of them, or `RELATION_LIMIT` seeded samples.
fn tuples(dims: &[usize], rng: &mut ChaCha8Rng, sampled: &mut bool) -> Vec<Vec<usize>> {
    let total = dims.iter().fold(1usize, |a, &d| a.saturating_mul(d));
    if total <= RELATION_LIMIT {
        let mut out = Vec::with_capacity(total);
        for mut k in 0..total {
            let mut t = vec![0; dims.len()];
            for (slot, &d) in t.iter_mut().zip(dims).rev() {
                *slot = k % d;
                k /= d;
            }
            out.push(t);
        }
        out
    } else {
        *sampled = true;
        (0..RELATION_LIMIT).map(|_| dims.iter().map(|&d| rng.gen_range(0..d)).collect()).collect()
    }
}

/// Computes the coset map `(a,b) ↦ y_12(a,b)·E(n,R,A∘B)` and checks
/// index-pair independence, biadditivity, inverses and absorption at the
/// level of cosets.
pub fn symbol_table(engine: &Engine, gl: &Gl, a: &Ideal, b: &Ideal, budget: usize, seed: u64) -> Result<SymbolTable> {
    if gl.degree() < 3 {
        return Err(Error::HypothesisViolated(format!("symbol table needs n >= 3, got {}", gl.degree())));
    }
    let r = gl.ring();
    let ea = gens_family(gl, &Family::Unrelative(a.clone()), ParamRange::Additive)?;
    let eb = gens_family(gl, &Family::Unrelative(b.clone()), ParamRange::Additive)?;
    let m = engine.mutual_commutator(&ea, &eb, budget)?;
    let level = a.symmetrised(b)?;
    let k = engine.close(&gens_family(gl, &Family::Relative(level), ParamRange::All)?, budget);
    let closures = vec![m.summary("[E(n,A),E(n,B)]"), k.summary("E(n,R,A∘B)")];
    for (c, name) in [(&m, "[E(n,A),E(n,B)]"), (&k, "E(n,R,A∘B)")] {
        if !c.is_complete() {
            return Err(Error::Incomplete(format!("{name} exceeded the closure budget of {budget}")));
        }
    }
    let (cosets, quotient_order) = coset_table(gl, &m, &k)?;
    let mut violations = Vec::new();
    let mut evaluated = 0u64;
    let mut sampled = false;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (va, vb) = (a.elements(), b.elements());
    let y = |i: usize, j: usize, x: Elem, z: Elem| gl.elem_comm(i, j, x, z);
    let coset = |g: &GlElem, what: &dyn Fn() -> String, out: &mut Vec<SymbolViolation>| -> Option<u32> {
        let c = cosets.of(g.mat());
        if c.is_none() {
            out.push(SymbolViolation { relation: format!("{} outside [E(n,A),E(n,B)]", what()), witness: gl.format(g.mat()) });
        }
        c
    };
    let identity = cosets.of(&gl.identity()).expect("identity is in every closure");

    let mut map = Vec::with_capacity(va.len() * vb.len());
    let mut pair_independent = true;
    for &x in va {
        for &z in vb {
            let base = y(1, 2, x, z)?;
            let Some(c) = coset(&base, &|| format!("y_12({},{})", r.format(x), r.format(z)), &mut violations) else {
                continue;
            };
            map.push(SymbolEntry { a: r.format(x), b: r.format(z), coset: c });
            for (i, j) in gl.positions() {
                evaluated += 1;
                let other = y(i, j, x, z)?;
                if cosets.of(other.mat()) != Some(c) {
                    pair_independent = false;
                    violations.push(SymbolViolation {
                        relation: format!("y_{i}{j}({0},{1}) ≢ y_12({0},{1})", r.format(x), r.format(z)),
                        witness: gl.format(other.mat()),
                    });
                }
            }
        }
    }
    let mut image: Vec<u32> = map.iter().map(|e| e.coset).collect();
    image.sort_unstable();
    image.dedup();

    let mut expect = |lhs: &GlElem, rhs: Option<u32>, what: String, out: &mut Vec<SymbolViolation>| {
        evaluated += 1;
        let l = cosets.of(lhs.mat());
        if l.is_none() || l != rhs {
            out.push(SymbolViolation { relation: what, witness: gl.format(lhs.mat()) });
        }
    };
    for t in tuples(&[va.len(), va.len(), vb.len()], &mut rng, &mut sampled) {
        let (a1, a2, z) = (va[t[0]], va[t[1]], vb[t[2]]);
        let prod = gl.mul_elem(&y(1, 2, a1, z)?, &y(1, 2, a2, z)?);
        let rhs = cosets.of(prod.mat());
        let what = format!("y(a1+a2,b) with a1={}, a2={}, b={}", r.format(a1), r.format(a2), r.format(z));
        expect(&y(1, 2, r.add(a1, a2), z)?, rhs, what, &mut violations);
    }
    for t in tuples(&[va.len(), vb.len(), vb.len()], &mut rng, &mut sampled) {
        let (x, b1, b2) = (va[t[0]], vb[t[1]], vb[t[2]]);
        let prod = gl.mul_elem(&y(1, 2, x, b1)?, &y(1, 2, x, b2)?);
        let rhs = cosets.of(prod.mat());
        let what = format!("y(a,b1+b2) with a={}, b1={}, b2={}", r.format(x), r.format(b1), r.format(b2));
        expect(&y(1, 2, x, r.add(b1, b2))?, rhs, what, &mut violations);
    }
    for &x in va {
        for &z in vb {
            let inv = y(1, 2, x, z)?.inverse();
            let rhs = cosets.of(inv.mat());
            let ctx = format!("a={}, b={}", r.format(x), r.format(z));
            expect(&y(1, 2, r.neg(x), z)?, rhs, format!("y(-a,b) vs y(a,b)⁻¹, {ctx}"), &mut violations);
            expect(&y(1, 2, x, r.neg(z))?, rhs, format!("y(a,-b) vs y(a,b)⁻¹, {ctx}"), &mut violations);
        }
    }
    for t in tuples(&[va.len(), va.len(), vb.len(), vb.len()], &mut rng, &mut sampled) {
        let (a1, a2, b1, b2) = (va[t[0]], va[t[1]], vb[t[2]], vb[t[3]]);
        let ctx = format!("a1={}, a2={}, b1={}, b2={}", r.format(a1), r.format(a2), r.format(b1), r.format(b2));
        let e = Some(identity);
        expect(&y(1, 2, r.mul(a1, b1), b2)?, e, format!("y(a1·b1,b2) ≢ e, {ctx}"), &mut violations);
        expect(&y(1, 2, a1, r.mul(a2, b1))?, e, format!("y(a1,a2·b1) ≢ e, {ctx}"), &mut violations);
        expect(&y(1, 2, r.mul(a1, a2), b1)?, e, format!("y(a1·a2,b1) ≢ e, {ctx}"), &mut violations);
        expect(&y(1, 2, a1, r.mul(b1, b2))?, e, format!("y(a1,b1·b2) ≢ e, {ctx}"), &mut violations);
    }
    Ok(SymbolTable {
        commutator_order: m.order(),
        level_order: k.order(),
        quotient_order,
        image_size: image.len(),
        map,
        pair_independent,
        violations,
        evaluated,
        sampled,
        closures,
    })
}

pub(super) fn claim(ctx: &mut Ctx) -> Result<Verdict> {
    let (a, b) = (ctx.ideal(0).clone(), ctx.ideal(1).clone());
    let seed = ctx.rng.gen();
    let t = symbol_table(ctx.engine, &ctx.gl, &a, &b, ctx.budget, seed)?;
    ctx.closures.extend(t.closures.iter().cloned());
    ctx.counts.evaluated += t.evaluated;
    ctx.counts.space += t.evaluated;
    ctx.counts.sampled |= t.sampled;
    ctx.note(format!("quotient order {}, image size {}", t.quotient_order, t.image_size));
    Ok(match t.violations.first() {
        None => Verdict::Pass,
        Some(v) => Verdict::Fail { witness: v.witness.clone(), context: v.relation.clone() },
    })
}
