//! Named checkers. Each claim id evaluates one commutator identity,
//! congruence, generation statement or subgroup relation on a concrete
//! instance and returns a [`CheckResult`].
//!
//! Congruences modulo `E(n,R,L)` become membership tests in the closure of
//! the `z`-generators of level `L`; when `L = 0` they become exact matrix
//! identities and no closure is built. Inclusions into a subgroup that is
//! normal in `E(n,R)` are decided on generators of the left side.

mod arith;
mod exact;
mod generation;
mod lattice;
mod subgroups;
mod symbols;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Closure, ClosureSummary, Engine, Membership};
use crate::matgl::{gens_family, Family, GenSet, Gl, GlElem, Mat, ParamRange};
use crate::numberfields::QuadOrder;
use crate::rings::{Elem, Ideal, IdealOp, Ring, RingSpec};

pub use lattice::{lattice_experiment, LatticeRow, LatticeTable};
pub use symbols::{symbol_table, SymbolTable};

/// Parameter tuples are enumerated exhaustively up to this many.
pub const EXHAUSTIVE_LIMIT: u128 = 4096;
/// Seeded samples drawn above [`EXHAUSTIVE_LIMIT`].
pub const DEFAULT_SAMPLES: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// `witness` is the offending matrix; `context` the parameters that
    /// produced it.
    Fail { witness: String, context: String },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    /// Parameter tuples (or group elements) evaluated.
    pub evaluated: u64,
    /// Size of the parameter space, saturating.
    pub space: u64,
    /// True iff some parameter grid was sampled rather than exhausted.
    pub sampled: bool,
}

/// Optional claim parameters; which ones a claim reads is listed in
/// [`claims`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClaimParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// 1-based matrix indices, e.g. `[i, j, h]` for `theorem1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// A fixed ring element, in the ring's text syntax.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<QuadOrder>,
    /// Prime factorisation such as `"p2:4,p3:1"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<ParamRange>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDesc {
    pub role: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: Vec<String>,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub ring: RingSpec,
    pub degree: usize,
    pub ideals: Vec<IdealDesc>,
    pub params: ClaimParams,
    pub seed: u64,
    pub budget: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub claim: String,
    pub instance: Instance,
    pub verdict: Verdict,
    pub counts: Counts,
    pub closures: Vec<ClosureSummary>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for CheckResult {
    /// Ignores `elapsed`.
    fn eq(&self, o: &Self) -> bool {
        self.claim == o.claim
            && self.instance == o.instance
            && self.verdict == o.verdict
            && self.counts == o.counts
            && self.closures == o.closures
            && self.notes == o.notes
    }
}

/// One check to run.
#[derive(Clone, Debug)]
pub struct ClaimRequest {
    pub claim: String,
    pub ring: Ring,
    pub degree: usize,
    /// Positional: bound to the roles `A`, `B`, `C`, `D` in order.
    pub ideals: Vec<Ideal>,
    pub params: ClaimParams,
    pub seed: u64,
    /// Closure budget; the engine default when `None`.
    pub budget: Option<usize>,
}

impl ClaimRequest {
    pub fn new(claim: impl Into<String>, ring: &Ring, degree: usize, ideals: Vec<Ideal>) -> ClaimRequest {
        ClaimRequest {
            claim: claim.into(),
            ring: ring.clone(),
            degree,
            ideals,
            params: ClaimParams::default(),
            seed: 0,
            budget: None,
        }
    }

    pub fn params(mut self, params: ClaimParams) -> Self {
        self.params = params;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimInfo {
    pub id: &'static str,
    /// Number of ideal roles, bound positionally as `A, B, C, D`.
    pub ideals: usize,
    pub hypotheses: &'static str,
    pub anchor: &'static str,
}

const fn info(id: &'static str, ideals: usize, hypotheses: &'static str, anchor: &'static str) -> ClaimInfo {
    ClaimInfo { id, ideals, hypotheses, anchor }
}

static CLAIMS: &[ClaimInfo] = &[
    info("hall-witt", 0, "n >= 2; params: trials", "Hall-Witt identity"),
    info("chevalley", 0, "n >= 2; params: samples", "Steinberg relations for t_ij"),
    info("theorem1", 3, "n >= 3; params: indices [i,j,h], samples", "Theorem 1"),
    info("theoremA", 2, "n >= 3; params: indices [i,j,k,l], c, samples", "Theorem A"),
    info("lemma14-conjugation", 2, "n >= 3; params: indices [i,j], samples", "Lemma 14"),
    info("lemma15-additivity", 2, "n >= 3; params: indices [i,j], samples", "Lemma 15, additivity"),
    info("lemma15-inverse", 2, "n >= 3; params: indices [i,j], samples", "Lemma 15, inverses"),
    info("lemma15-absorption", 2, "n >= 3; params: indices [i,j], samples", "Lemma 15, absorption"),
    info("lemma2", 1, "n >= 3", "Lemma 2"),
    info("lemma3", 2, "n >= 3", "Lemma 3"),
    info("lemma7", 2, "n >= 2", "Lemma 7"),
    info("lemma9", 0, "n >= 2; params: m", "Lemma 9"),
    info("lemma11", 1, "n >= 3", "Lemma 11"),
    info("lemma12", 1, "n >= 3; params: indices [i,j,h]", "Lemma 12"),
    info("theorem2", 2, "n >= 3", "Theorem 2"),
    info("theorem3", 1, "n >= 3; params: m", "Theorem 3"),
    info("lemma4", 2, "n >= 3", "Lemma 4"),
    info("lemma5", 2, "n >= 3", "Lemma 5"),
    info("lemma6", 2, "n >= 3; A + B = R", "Lemma 6"),
    info("lemma8", 4, "n >= 3", "Lemma 8"),
    info("lemma10", 2, "n >= 3; params: m, samples", "Lemma 10"),
    info("lemma13", 1, "n >= 3; params: samples", "Lemma 13"),
    info("lemma17", 3, "n >= 3", "Lemma 17"),
    info("lemma18-inclusion", 4, "n >= 4 (n = 3: search only); one-sided inclusion", "Lemma 18"),
    info("prop-AS", 2, "n >= 3", "E(n,R,A∘B) ≤ E(n,B,A) ∩ E(n,A,B)"),
    info("prop-tripleswap", 3, "n >= 3", "Proposition 1"),
    info("prop-quadruple", 4, "n >= 3", "Proposition 2"),
    info("prop-powers", 1, "n >= 3; params: indices [r,s,t]", "Proposition 3"),
    info("theorem4-spans", 3, "n >= 3", "Theorem 4"),
    info("theorem5-stable", 2, "n >= 3; params: samples", "Theorem 5"),
    info("theorem6-threeideals", 3, "n >= 3", "Theorem 6"),
    info("prop-sum-intersection", 2, "n >= 3", "Proposition 4"),
    info("lattice", 0, "ring Z/p^(m+1); params: p, m (also lattice-m<k>)", "Theorem 7, divisor lattice"),
    info("symbol-table", 2, "n >= 3", "elementary commutators as symbols"),
    info("sk1", 0, "params: order, primes, expect", "Bass-Milnor-Serre order formula for SK_1"),
    info("lemma16", 0, "params: order, primes, primes_b", "Lemma 16"),
];

/// Every supported claim id with its hypotheses and anchor.
pub fn claims() -> &'static [ClaimInfo] {
    CLAIMS
}

/// Resolves a claim id; `lattice-m<k>` maps to `lattice` with `m = k`.
pub fn claim_info(id: &str) -> Result<(&'static ClaimInfo, Option<usize>)> {
    if let Some(k) = id.strip_prefix("lattice-m") {
        let m = k.parse::<usize>().map_err(|_| Error::UnknownClaim(id.into()))?;
        let info = CLAIMS.iter().find(|c| c.id == "lattice").expect("lattice registered");
        return Ok((info, Some(m)));
    }
    CLAIMS
        .iter()
        .find(|c| c.id == id)
        .map(|c| (c, None))
        .ok_or_else(|| Error::UnknownClaim(id.into()))
}

const ROLES: [&str; 4] = ["A", "B", "C", "D"];

/// Runs one claim. Budget overruns yield `Inconclusive`; unmet
/// hypotheses and malformed requests are errors.
pub fn run_claim(engine: &Engine, req: &ClaimRequest) -> Result<CheckResult> {
    let start = Instant::now();
    let (info, lattice_m) = claim_info(&req.claim)?;
    if req.ideals.len() != info.ideals {
        return Err(Error::InvalidSpec(format!(
            "claim `{}` takes {} ideal(s), got {}",
            req.claim,
            info.ideals,
            req.ideals.len()
        )));
    }
    for i in &req.ideals {
        if !i.ring().same(&req.ring) {
            return Err(Error::Mismatch(format!("ideal {i} is not an ideal of {}", req.ring.spec().tag())));
        }
    }
    let budget = req.budget.unwrap_or(engine.budgets().closure);
    let mut params = req.params.clone();
    if lattice_m.is_some() {
        params.m = lattice_m;
    }
    let mut ctx = Ctx {
        engine,
        ring: req.ring.clone(),
        gl: Gl::new(req.ring.clone(), req.degree)?,
        ideals: req.ideals.clone(),
        params: params.clone(),
        rng: ChaCha8Rng::seed_from_u64(req.seed),
        budget,
        closures: Vec::new(),
        notes: Vec::new(),
        counts: Counts::default(),
    };
    let outcome = match info.id {
        "hall-witt" => exact::hall_witt(&mut ctx),
        "chevalley" => exact::chevalley(&mut ctx),
        "theorem1" => exact::theorem1(&mut ctx),
        "theoremA" => exact::theorem_a(&mut ctx),
        "lemma14-conjugation" => exact::lemma14(&mut ctx),
        "lemma15-additivity" => exact::lemma15_additivity(&mut ctx),
        "lemma15-inverse" => exact::lemma15_inverse(&mut ctx),
        "lemma15-absorption" => exact::lemma15_absorption(&mut ctx),
        "lemma10" => exact::lemma10(&mut ctx),
        "lemma13" => exact::lemma13(&mut ctx),
        "lemma2" => generation::lemma2(&mut ctx),
        "lemma3" => generation::lemma3(&mut ctx),
        "lemma7" => generation::lemma7(&mut ctx),
        "lemma9" => generation::lemma9(&mut ctx),
        "lemma11" => generation::lemma11(&mut ctx),
        "lemma12" => generation::lemma12(&mut ctx),
        "theorem2" => generation::theorem2(&mut ctx),
        "theorem3" => generation::theorem3(&mut ctx),
        "lemma4" => subgroups::lemma4(&mut ctx),
        "lemma5" => subgroups::lemma5(&mut ctx),
        "lemma6" => subgroups::lemma6(&mut ctx),
        "lemma8" => subgroups::lemma8(&mut ctx),
        "lemma17" => subgroups::lemma17(&mut ctx),
        "lemma18-inclusion" => subgroups::lemma18(&mut ctx),
        "prop-AS" => subgroups::prop_as(&mut ctx),
        "prop-tripleswap" => subgroups::prop_tripleswap(&mut ctx),
        "prop-quadruple" => subgroups::prop_quadruple(&mut ctx),
        "prop-powers" => subgroups::prop_powers(&mut ctx),
        "theorem4-spans" => subgroups::theorem4_spans(&mut ctx),
        "theorem5-stable" => subgroups::theorem5_stable(&mut ctx),
        "theorem6-threeideals" => subgroups::theorem6_three_ideals(&mut ctx),
        "prop-sum-intersection" => subgroups::prop_sum_intersection(&mut ctx),
        "lattice" => lattice::claim(&mut ctx),
        "symbol-table" => symbols::claim(&mut ctx),
        "sk1" => arith::sk1(&mut ctx),
        "lemma16" => arith::lemma16(&mut ctx),
        other => Err(Error::UnknownClaim(other.into())),
    };
    let verdict = match outcome {
        Ok(v) => v,
        Err(Error::Incomplete(reason)) => Verdict::Inconclusive { reason },
        Err(e @ Error::BudgetExceeded { .. }) => Verdict::Inconclusive { reason: e.to_string() },
        Err(e) => return Err(e),
    };
    let ideals = req
        .ideals
        .iter()
        .zip(ROLES)
        .map(|(i, role)| IdealDesc {
            role: role.into(),
            name: i.name().map(str::to_string),
            generators: i.generators().iter().map(|&g| req.ring.format(g)).collect(),
            order: i.len(),
        })
        .collect();
    Ok(CheckResult {
        claim: req.claim.clone(),
        instance: Instance {
            ring: req.ring.spec().clone(),
            degree: req.degree,
            ideals,
            params,
            seed: req.seed,
            budget,
        },
        verdict,
        counts: ctx.counts,
        closures: ctx.closures,
        notes: ctx.notes,
        elapsed: start.elapsed(),
    })
}

/// Returns early from a checker unless the verdict is `Pass`.
macro_rules! require {
    ($v:expr) => {
        match $v {
            $crate::identities::Verdict::Pass => {}
            other => return Ok(other),
        }
    };
}
pub(crate) use require;

/// A subgroup to test membership in: trivial when its level is zero.
pub(crate) enum Target {
    Trivial,
    Group(Arc<Closure>),
}

impl Target {
    pub(crate) fn contains(&self, gl: &Gl, g: &Mat) -> bool {
        match self {
            Target::Trivial => gl.is_identity(g),
            Target::Group(c) => c.member(g) == Membership::In,
        }
    }
}

/// Mixed-radix enumeration or seeded sampling of parameter tuples.
pub(crate) struct Grid {
    dims: Vec<usize>,
}

impl Grid {
    pub(crate) fn new(dims: &[usize]) -> Grid {
        Grid { dims: dims.to_vec() }
    }

    fn total(&self) -> u128 {
        self.dims.iter().fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
    }

    fn decode(&self, mut k: u128) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = (k % d as u128) as usize;
            k /= d as u128;
        }
        out
    }
}

pub(crate) struct Ctx<'a> {
    pub engine: &'a Engine,
    pub ring: Ring,
    pub gl: Gl,
    pub ideals: Vec<Ideal>,
    pub params: ClaimParams,
    pub rng: ChaCha8Rng,
    pub budget: usize,
    pub closures: Vec<ClosureSummary>,
    pub notes: Vec<String>,
    pub counts: Counts,
}

impl Ctx<'_> {
    pub(crate) fn ideal(&self, k: usize) -> &Ideal {
        &self.ideals[k]
    }

    pub(crate) fn n(&self) -> usize {
        self.gl.degree()
    }

    pub(crate) fn need_degree(&self, min: usize, claim: &str) -> Result<()> {
        if self.n() < min {
            Err(Error::HypothesisViolated(format!("{claim} needs n >= {min}, got n = {}", self.n())))
        } else {
            Ok(())
        }
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Parameter tuples to evaluate under the sampling policy.
    pub(crate) fn points(&mut self, dims: &[usize]) -> Vec<Vec<usize>> {
        let grid = Grid::new(dims);
        let total = grid.total();
        let exhaustive = match self.params.samples {
            Some(s) => total <= s as u128,
            None => total <= EXHAUSTIVE_LIMIT,
        };
        self.counts.space = self.counts.space.saturating_add(total.min(u64::MAX as u128) as u64);
        self.counts.sampled |= !exhaustive;
        if exhaustive {
            (0..total).map(|k| grid.decode(k)).collect()
        } else {
            let s = self.params.samples.unwrap_or(DEFAULT_SAMPLES);
            (0..s)
                .map(|_| dims.iter().map(|&d| self.rng.gen_range(0..d)).collect())
                .collect()
        }
    }

    pub(crate) fn tick(&mut self) {
        self.counts.evaluated += 1;
    }

    pub(crate) fn range(&self) -> ParamRange {
        self.params.range.unwrap_or_default()
    }

    pub(crate) fn unit(&self) -> Result<Ideal> {
        Ok(Ideal::unit(&self.ring)?.with_name("R"))
    }

    pub(crate) fn combine(&self, op: IdealOp, args: &[&Ideal]) -> Result<Ideal> {
        crate::rings::ideal_combine(op, args)
    }

    pub(crate) fn family(&self, f: Family) -> Result<GenSet> {
        gens_family(&self.gl, &f, self.range())
    }

    /// `E(n,A)` from additive generators of `A`; `t_ij` is additive.
    pub(crate) fn e(&self, a: &Ideal) -> Result<GenSet> {
        gens_family(&self.gl, &Family::Unrelative(a.clone()), ParamRange::Additive)
    }

    /// `E(n,R,A)` by its `z`-generators.
    pub(crate) fn e_rel(&self, a: &Ideal) -> Result<GenSet> {
        self.family(Family::Relative(a.clone()))
    }

    fn record(&mut self, name: &str, c: Arc<Closure>) -> Result<Arc<Closure>> {
        self.closures.push(c.summary(name));
        if c.is_complete() {
            Ok(c)
        } else {
            Err(Error::Incomplete(format!("{name} exceeded the closure budget of {}", self.budget)))
        }
    }

    pub(crate) fn close(&mut self, name: &str, gens: &GenSet) -> Result<Arc<Closure>> {
        let c = self.engine.close(gens, self.budget);
        self.record(name, c)
    }

    pub(crate) fn normal(&mut self, name: &str, seed: &GenSet, conj: &GenSet) -> Result<Arc<Closure>> {
        let c = self.engine.normal_closure(seed, conj, self.budget)?;
        self.record(name, c)
    }

    pub(crate) fn mutual(&mut self, name: &str, f: &GenSet, h: &GenSet) -> Result<Arc<Closure>> {
        let c = self.engine.mutual_commutator(f, h, self.budget)?;
        self.record(name, c)
    }

    /// `[E(n,A), E(n,B)]`.
    pub(crate) fn comm(&mut self, a: &Ideal, b: &Ideal) -> Result<Arc<Closure>> {
        let name = format!("[E({0},{a}),E({0},{b})]", self.n());
        let (ea, eb) = (self.e(a)?, self.e(b)?);
        self.mutual(&name, &ea, &eb)
    }

    /// `E(n,R,L)` as a membership target; trivial without closure when
    /// `L = 0`.
    pub(crate) fn level_target(&mut self, level: &Ideal) -> Result<Target> {
        if level.is_zero() {
            self.note(format!("level {level} is zero: congruences are exact identities"));
            return Ok(Target::Trivial);
        }
        let name = format!("E({},R,{level})", self.n());
        let gens = self.e_rel(level)?;
        Ok(Target::Group(self.close(&name, &gens)?))
    }

    pub(crate) fn fail(&self, g: &Mat, context: impl Into<String>) -> Verdict {
        Verdict::Fail { witness: self.gl.format(g), context: context.into() }
    }

    pub(crate) fn fmt(&self, e: Elem) -> String {
        self.ring.format(e)
    }

    pub(crate) fn fmt_mat(&self, g: &Mat) -> String {
        self.gl.format(g)
    }

    pub(crate) fn random_elem(&mut self) -> Elem {
        let k = self.rng.gen_range(0..self.ring.cardinality() as u32);
        self.ring.elem(k).expect("in range")
    }

    /// Product of `len` random transvections with arbitrary parameters.
    pub(crate) fn random_word(&mut self, len: usize) -> Result<GlElem> {
        let pos = self.gl.positions();
        let mut w = self.gl.identity_elem();
        for _ in 0..len {
            let (i, j) = pos[self.rng.gen_range(0..pos.len())];
            let c = self.random_elem();
            w = self.gl.mul_elem(&w, &self.gl.transvection(i, j, c)?);
        }
        Ok(w)
    }

    /// Fixed index tuple from `params.indices`, validated.
    pub(crate) fn indices(&self, len: usize, default: &[usize]) -> Result<Vec<usize>> {
        let v = self.params.indices.clone().unwrap_or_else(|| default.to_vec());
        if v.len() != len {
            return Err(Error::InvalidSpec(format!("expected {len} indices, got {}", v.len())));
        }
        let n = self.n();
        if let Some(&bad) = v.iter().find(|&&k| k == 0 || k > n) {
            return Err(Error::Index { i: bad, j: bad, n });
        }
        Ok(v)
    }

    /// Generators of `left` are in the complete closure `right`.
    pub(crate) fn included(&mut self, lname: &str, left: &Closure, rname: &str, right: &Closure) -> Verdict {
        for g in left.gens() {
            self.tick();
            if right.member(g.mat()) != Membership::In {
                return self.fail(g.mat(), format!("generator of {lname} outside {rname}"));
            }
        }
        Verdict::Pass
    }

    pub(crate) fn equal(&mut self, lname: &str, left: &Closure, rname: &str, right: &Closure) -> Verdict {
        let v = self.included(lname, left, rname, right);
        if !v.is_pass() {
            return v;
        }
        let v = self.included(rname, right, lname, left);
        if v.is_pass() && left.order() != right.order() {
            return Verdict::Inconclusive { reason: format!("{lname} and {rname} differ in order") };
        }
        v
    }

    /// Every `[f, h]` lies in `right`, which must be normalised by `⟨F ∪ H⟩`
    /// for this to decide `[⟨F⟩, ⟨H⟩] ≤ right`.
    pub(crate) fn commutators_in(&mut self, f: &GenSet, h: &GenSet, rname: &str, right: &Target) -> Verdict {
        for x in f.elems() {
            for y in h.elems() {
                self.tick();
                let c = self.gl.commutator(x, y);
                if !right.contains(&self.gl, c.mat()) {
                    let ctx = format!(
                        "[{}, {}] outside {rname}",
                        self.fmt_mat(x.mat()),
                        self.fmt_mat(y.mat())
                    );
                    return self.fail(c.mat(), ctx);
                }
            }
        }
        Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::ideal_span;
    use crate::Budgets;

    pub(crate) fn z(m: u64) -> Ring {
        Ring::new(RingSpec::Residue { modulus: m }).unwrap()
    }

    pub(crate) fn ideal(r: &Ring, k: i64) -> Ideal {
        ideal_span(r, &[r.from_int(k)]).unwrap()
    }

    #[test]
    fn registry_is_consistent() {
        assert!(claims().len() >= 20);
        let mut ids: Vec<&str> = claims().iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), claims().len());
        assert_eq!(claim_info("theorem1").unwrap().0.anchor, "Theorem 1");
        assert_eq!(claim_info("lattice-m4").unwrap().1, Some(4));
        assert!(matches!(claim_info("lemma99"), Err(Error::UnknownClaim(_))));
        assert!(claim_info("lattice-mx").is_err());
    }

    #[test]
    fn grid_decoding_is_mixed_radix() {
        let g = Grid::new(&[2, 3]);
        let all: Vec<Vec<usize>> = (0..g.total()).map(|k| g.decode(k)).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn wrong_ideal_count_is_rejected() {
        let r = z(8);
        let e = Engine::new(Budgets::default());
        let req = ClaimRequest::new("theorem1", &r, 3, vec![ideal(&r, 2)]);
        assert!(matches!(run_claim(&e, &req), Err(Error::InvalidSpec(_))));
        let other = z(16);
        let req = ClaimRequest::new("lemma2", &r, 3, vec![ideal(&other, 2)]);
        assert!(matches!(run_claim(&e, &req), Err(Error::Mismatch(_))));
    }

    #[test]
    fn small_budget_is_inconclusive() {
        let r = z(8);
        let e = Engine::new(Budgets::default());
        let mut req = ClaimRequest::new("lemma2", &r, 3, vec![ideal(&r, 2)]);
        req.budget = Some(16);
        let res = run_claim(&e, &req).unwrap();
        assert!(matches!(res.verdict, Verdict::Inconclusive { .. }), "{:?}", res.verdict);
    }

    #[test]
    fn results_serialise_without_elapsed() {
        let r = z(8);
        let e = Engine::new(Budgets::default());
        let req = ClaimRequest::new("lemma7", &r, 3, vec![ideal(&r, 2), ideal(&r, 4)]);
        let res = run_claim(&e, &req).unwrap();
        let v = serde_json::to_value(&res).unwrap();
        assert!(v.get("elapsed").is_none());
        assert_eq!(v["verdict"]["status"], "pass");
        let back: CheckResult = serde_json::from_value(v).unwrap();
        assert_eq!(back, res);
    }
}
