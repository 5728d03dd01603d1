//! Acceptance suite: one PASS/FAIL line per criterion, each under its time
//! bound. Run with `cargo test --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use elemlab::group::{close, Engine, Membership, Relation};
use elemlab::identities::{lattice_experiment, run_claim, symbol_table, ClaimParams, ClaimRequest, Verdict};
use elemlab::matgl::{gens_family, Family, GenSet, Gl, ParamRange};
use elemlab::numberfields::{sk1_order, QuadIdeal, QuadOrder};
use elemlab::rings::{ideal_span, Ideal, Ring, RingSpec};
use elemlab::Budgets;

type Outcome = Result<String, String>;

fn z(m: u64) -> Ring {
    Ring::new(RingSpec::Residue { modulus: m }).unwrap()
}

fn principal(r: &Ring, k: i64) -> Ideal {
    ideal_span(r, &[r.from_int(k)]).unwrap()
}

fn trunc_free() -> Ring {
    Ring::new(RingSpec::TruncFree { modulus: 2, vars: 2, degree: 3 }).unwrap()
}

fn var_ideal(r: &Ring, v: &str) -> Ideal {
    ideal_span(r, &[r.variable(v).unwrap()]).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pass(engine: &Engine, req: ClaimRequest) -> Result<elemlab::identities::CheckResult, String> {
    let id = req.claim.clone();
    let res = run_claim(engine, &req).map_err(|e| format!("{id}: {e}"))?;
    ensure(res.verdict == Verdict::Pass, || format!("{id}: {:?}", res.verdict))?;
    Ok(res)
}

/// Plain integer 3x3 matrices mod `m`, independent of the library.
mod naive {
    pub type M = [[i64; 3]; 3];

    pub fn id() -> M {
        let mut a = [[0; 3]; 3];
        for (k, row) in a.iter_mut().enumerate() {
            row[k] = 1;
        }
        a
    }

    pub fn mul(a: &M, b: &M, m: i64) -> M {
        let mut c = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<i64>().rem_euclid(m);
            }
        }
        c
    }

    pub fn t(i: usize, j: usize, c: i64, m: i64) -> M {
        let mut a = id();
        a[i][j] = c.rem_euclid(m);
        a
    }

    /// `[t_ij(a), t_ji(b)]`; inverses of transvections negate the entry.
    pub fn y(i: usize, j: usize, a: i64, b: i64, m: i64) -> M {
        let x = mul(&t(i, j, a, m), &t(j, i, b, m), m);
        let x = mul(&x, &t(i, j, -a, m), m);
        mul(&x, &t(j, i, -b, m), m)
    }

    pub fn det(a: &M) -> i64 {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }
}

fn index_triples() -> Vec<[usize; 3]> {
    let mut v = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            for h in 1..=3 {
                if i != j && j != h && i != h {
                    v.push([i, j, h]);
                }
            }
        }
    }
    v
}

fn c1_sk1() -> Outcome {
    let cases = [
        (QuadOrder::Minus7, "p2a:2", 1),
        (QuadOrder::Minus7, "p2a:2,p2b:2", 2),
        (QuadOrder::Gauss, "p2:4", 2),
    ];
    let mut got = Vec::new();
    for (order, primes, want) in cases {
        let ideal = QuadIdeal::parse(order.name(), primes).map_err(|e| e.to_string())?;
        let v = sk1_order(order, &ideal).map_err(|e| e.to_string())?;
        ensure(v == want, || format!("{} {primes}: got {v}, want {want}", order.name()))?;
        got.push(format!("{}[{primes}]={v}", order.name()));
    }
    Ok(got.join(" "))
}

fn c2_theorem1_degenerate() -> Outcome {
    let engine = Engine::new(Budgets::default());
    let r = z(16);
    let (a, b, c) = (principal(&r, 2), principal(&r, 4), principal(&r, 2));
    let mut evaluated = 0;
    for ix in index_triples() {
        let p = ClaimParams { indices: Some(ix.to_vec()), ..Default::default() };
        let req = ClaimRequest::new("theorem1", &r, 3, vec![a.clone(), b.clone(), c.clone()]).params(p);
        let res = pass(&engine, req)?;
        ensure(!res.counts.sampled && res.counts.evaluated == 8 * 4 * 8, || format!("Z/16 counts {:?}", res.counts))?;
        ensure(res.closures.is_empty(), || "Z/16 degenerate case built a closure".into())?;
        evaluated += res.counts.evaluated;
        // Independent evaluation of every parameter triple.
        let [i, j, h] = ix.map(|k| k - 1);
        for x in (0..16).step_by(2) {
            for y in (0..16).step_by(4) {
                for w in (0..16).step_by(2) {
                    let d = naive::mul(
                        &naive::mul(&naive::y(i, j, x * y, w, 16), &naive::y(j, h, w * x, y, 16), 16),
                        &naive::y(h, i, y * w, x, 16),
                        16,
                    );
                    ensure(d == naive::id(), || format!("oracle: a={x} b={y} c={w} {ix:?}"))?;
                }
            }
        }
    }
    let t = trunc_free();
    let (x, y) = (var_ideal(&t, "x"), var_ideal(&t, "y"));
    let res = pass(&engine, ClaimRequest::new("theorem1", &t, 3, vec![x.clone(), y, x]))?;
    ensure(res.closures.is_empty(), || "truncated algebra case built a closure".into())?;
    Ok(format!("Z/16: {evaluated} products over 6 index triples; TruncFree(2,2,3): {} products", res.counts.evaluated))
}

fn c3_theorem1_membership() -> Outcome {
    let engine = Engine::new(Budgets::default());
    let r = z(32);
    let two = principal(&r, 2);
    let p = ClaimParams { samples: Some(256), ..Default::default() };
    let req = ClaimRequest::new("theorem1", &r, 3, vec![two.clone(), two.clone(), two]).params(p).seed(1);
    let res = pass(&engine, req)?;
    ensure(res.counts.evaluated == 256, || format!("evaluated {}", res.counts.evaluated))?;
    let k = res.closures.first().ok_or("no level closure recorded")?;
    ensure(k.complete && k.order <= 1 << 18, || format!("closure {k:?}"))?;
    Ok(format!("256 seeded triples, |E(3,Z/32,(8))| = {}", k.order))
}

fn c4_generation() -> Outcome {
    let engine = Engine::new(Budgets::default());
    let r = z(8);
    let (two, four) = (principal(&r, 2), principal(&r, 4));
    let mut n = 0;
    for (id, ideals) in [
        ("lemma2", vec![two.clone()]),
        ("lemma2", vec![four.clone()]),
        ("lemma7", vec![two.clone(), four.clone()]),
        ("theorem2", vec![two.clone(), four.clone()]),
        ("theorem2", vec![four.clone(), two.clone()]),
    ] {
        pass(&engine, ClaimRequest::new(id, &r, 3, ideals))?;
        n += 1;
    }
    for ideal in [&two, &four] {
        for m in [1, 2] {
            let p = ClaimParams { m: Some(m), ..Default::default() };
            pass(&engine, ClaimRequest::new("theorem3", &r, 3, vec![ideal.clone()]).params(p))?;
            n += 1;
        }
    }
    Ok(format!("{n} equalities"))
}

fn c5_commutator_formulas() -> Outcome {
    let engine = Engine::new(Budgets::default());
    let (z8, z12, z16, z32, z36) = (z(8), z(12), z(16), z(32), z(36));
    let cases = [
        ("lemma4", &z16, vec![2, 4]),
        ("lemma5", &z16, vec![2, 4]),
        ("lemma6", &z12, vec![2, 3]),
        ("lemma17", &z32, vec![2, 2, 2]),
        ("theorem5-stable", &z8, vec![2, 4]),
        ("theorem6-threeideals", &z32, vec![2, 4, 2]),
        ("prop-sum-intersection", &z36, vec![4, 6]),
    ];
    let mut out = Vec::new();
    for (id, r, gens) in cases {
        let ideals = gens.iter().map(|&g| principal(r, g)).collect();
        let start = Instant::now();
        pass(&engine, ClaimRequest::new(id, r, 3, ideals))?;
        out.push(format!("{id} {:.1}s", start.elapsed().as_secs_f64()));
    }
    Ok(out.join(", "))
}

fn c6_lattice() -> Outcome {
    let engine = Engine::new(Budgets::default());
    let t = lattice_experiment(&engine, 2, 4, 3, 1 << 21).map_err(|e| e.to_string())?;
    ensure(t.modulus == 32, || format!("modulus {}", t.modulus))?;
    ensure(t.passed(), || format!("{:?}", t.failures))?;
    let rel = |r: usize, s: usize| t.relations[r][s];
    ensure(matches!(rel(2, 1), Relation::Equal | Relation::LeftInRight), || format!("H(2) vs H(1): {:?}", rel(2, 1)))?;
    ensure(rel(1, 3) == Relation::Equal, || format!("H(1) vs H(3): {:?}", rel(1, 3)))?;
    // E(3,R,(16)) ≤ H(2), rechecked from scratch on the z-generators.
    let r = z(32);
    let gl = Gl::new(r.clone(), 3).unwrap();
    let e = |k: i64| gens_family(&gl, &Family::Unrelative(principal(&r, k)), ParamRange::Additive).unwrap();
    let h2 = engine.mutual_commutator(&e(4), &e(4), 1 << 21).map_err(|e| e.to_string())?;
    let zgens = gens_family(&gl, &Family::Relative(principal(&r, 16)), ParamRange::All).unwrap();
    let bad = zgens.elems().iter().find(|g| h2.member(g.mat()) != Membership::In);
    ensure(bad.is_none(), || "E(3,R,(16)) not inside H(2)".into())?;
    let orders: Vec<String> = t.rows.iter().map(|row| format!("|H({})|={}", row.r, row.order)).collect();
    Ok(orders.join(" "))
}

fn c7_exact_identities() -> Outcome {
    let engine = Engine::new(Budgets::default());
    let trials = |k| ClaimParams { trials: Some(k), ..Default::default() };
    let z8 = z(8);
    let t = trunc_free();
    let a = pass(&engine, ClaimRequest::new("hall-witt", &z8, 3, vec![]).params(trials(1000)))?;
    let b = pass(&engine, ClaimRequest::new("hall-witt", &t, 3, vec![]).params(trials(200)))?;
    ensure(a.counts.evaluated == 1000 && b.counts.evaluated == 200, || "trial counts".into())?;
    let c = pass(&engine, ClaimRequest::new("chevalley", &z(4), 3, vec![]))?;
    ensure(!c.counts.sampled, || "Z/4 Chevalley grid was sampled".into())?;
    let d = pass(&engine, ClaimRequest::new("chevalley", &t, 3, vec![]))?;
    ensure(d.counts.sampled, || "TruncFree Chevalley grid should be sampled".into())?;
    Ok(format!("Hall-Witt 1000+200, Chevalley {} exhaustive + {} sampled", c.counts.evaluated, d.counts.evaluated))
}

fn c8_congruences() -> Outcome {
    let engine = Engine::new(Budgets::default());
    let ids = ["lemma14-conjugation", "lemma15-additivity", "lemma15-inverse", "lemma15-absorption"];
    let (z16, z8) = (z(16), z(8));
    for id in ids {
        pass(&engine, ClaimRequest::new(id, &z16, 3, vec![principal(&z16, 2), principal(&z16, 4)]))?;
        let res = pass(&engine, ClaimRequest::new(id, &z8, 3, vec![principal(&z8, 2), principal(&z8, 4)]))?;
        ensure(res.closures.is_empty(), || format!("{id}: degenerate Z/8 case built a closure"))?;
    }
    let gl = Gl::new(z16.clone(), 3).unwrap();
    let t = symbol_table(&engine, &gl, &principal(&z16, 2), &principal(&z16, 4), 1 << 21, 0).map_err(|e| e.to_string())?;
    ensure(t.pair_independent, || "coset depends on the index pair".into())?;
    ensure(t.violations.is_empty(), || format!("{:?}", t.violations.first()))?;
    Ok(format!("symbol map: quotient order {}, image {}", t.quotient_order, t.image_size))
}

fn c9_engine() -> Outcome {
    let r = z(2);
    let gl = Gl::new(r.clone(), 3).unwrap();
    let gens = gens_family(&gl, &Family::Unrelative(Ideal::unit(&r).unwrap()), ParamRange::All).unwrap();
    let c = close(&gens, 1 << 12);
    let mut brute = 0;
    for bits in 0u32..512 {
        let mut a = [[0i64; 3]; 3];
        for k in 0..9 {
            a[k / 3][k % 3] = ((bits >> k) & 1) as i64;
        }
        brute += (naive::det(&a).rem_euclid(2) == 1) as usize;
    }
    ensure(brute == 168 && c.order() == 168 && c.is_complete(), || format!("brute {brute}, closure {}", c.order()))?;
    let mut rev: Vec<_> = gens.elems().to_vec();
    rev.reverse();
    let d = close(&GenSet::new("reversed", &gl, rev), 1 << 12);
    let mut x: Vec<_> = c.elements().map(|m| m.encode()).collect();
    let mut y: Vec<_> = d.elements().map(|m| m.encode()).collect();
    x.sort();
    y.sort();
    ensure(x == y, || "permuted generators give a different set".into())?;
    Ok("168 = brute force, permutation invariant".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("1 sk1 order formula", 1, c1_sk1),
        ("2 theorem1 exact degenerate", 30, c2_theorem1_degenerate),
        ("3 theorem1 membership", 300, c3_theorem1_membership),
        ("4 generation", 300, c4_generation),
        ("5 commutator formulas", 600, c5_commutator_formulas),
        ("6 lattice p=2 m=4", 600, c6_lattice),
        ("7 exact identities", 60, c7_exact_identities),
        ("8 congruences and symbols", 300, c8_congruences),
        ("9 engine sanity", 60, c9_engine),
    ];
    let mut failed = 0;
    for (name, secs, f) in criteria {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let out = match out {
            Ok(_) if took > Duration::from_secs(secs) => Err(format!("took {took:.2?}, bound {secs}s")),
            o => o,
        };
        match out {
            Ok(detail) => println!("PASS  criterion {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({took:.2?}): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
