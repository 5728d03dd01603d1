//! Generating sets: the closure of a claimed generator family equals the
//! subgroup built from its definition.

use std::sync::Arc;

use super::{require, Ctx, Verdict};
use crate::error::{Error, Result};
use crate::group::{Closure, Membership};
use crate::matgl::{Family, GenSet, GlElem};
use crate::rings::{Elem, Ideal};

/// `E(n,R,A)` by definition: the normal closure of `E(n,A)` in `E(n,R)`.
fn e_rel_def(ctx: &mut Ctx, a: &Ideal) -> Result<Arc<Closure>> {
    let unit = ctx.unit()?;
    let (ea, er) = (ctx.e(a)?, ctx.e(&unit)?);
    ctx.normal(&format!("E({},{a})^E({},R)", ctx.n(), ctx.n()), &ea, &er)
}

fn gens_of(ctx: &Ctx, name: &str, c: &Closure) -> GenSet {
    GenSet::new(name, &ctx.gl, c.gens().iter().cloned())
}

pub(super) fn lemma2(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(3, "lemma2")?;
    let a = ctx.ideal(0).clone();
    let z = ctx.e_rel(&a)?;
    let left = ctx.close(z.name(), &z)?;
    let right = e_rel_def(ctx, &a)?;
    Ok(ctx.equal(z.name(), &left, "normal closure of E(n,A)", &right))
}

pub(super) fn lemma3(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(3, "lemma3")?;
    let (a, b) = (ctx.ideal(0).clone(), ctx.ideal(1).clone());
    let fam = ctx.family(Family::MixedComm(a.clone(), b.clone()))?;
    let left = ctx.close(fam.name(), &fam)?;
    let ra = e_rel_def(ctx, &a)?;
    let rb = e_rel_def(ctx, &b)?;
    let (ga, gb) = (gens_of(ctx, "E(n,R,A)", &ra), gens_of(ctx, "E(n,R,B)", &rb));
    let right = ctx.mutual("[E(n,R,A),E(n,R,B)]", &ga, &gb)?;
    ctx.note("y-generators use the single pair (1,2)");
    Ok(ctx.equal(fam.name(), &left, "[E(n,R,A),E(n,R,B)]", &right))
}

pub(super) fn lemma7(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(2, "lemma7")?;
    let (a, b) = (ctx.ideal(0).clone(), ctx.ideal(1).clone());
    let union = ctx.e(&a)?.union(&ctx.e(&b)?, "E(n,A) ∪ E(n,B)");
    let left = ctx.close(union.name(), &union)?;
    let sum = a.sum(&b)?;
    let es = ctx.e(&sum)?;
    let right = ctx.close(es.name(), &es)?;
    Ok(ctx.equal(union.name(), &left, es.name(), &right))
}

fn parabolic_indices(ctx: &Ctx) -> Result<Vec<usize>> {
    let n = ctx.n();
    match ctx.params.m {
        Some(m) if (1..n).contains(&m) => Ok(vec![m]),
        Some(m) => Err(Error::InvalidSpec(format!("m = {m} outside 1..{n}"))),
        None => Ok((1..n).collect()),
    }
}

pub(super) fn lemma9(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(2, "lemma9")?;
    let unit = ctx.unit()?;
    let er = ctx.e(&unit)?;
    let right = ctx.close(er.name(), &er)?;
    for m in parabolic_indices(ctx)? {
        let up = ctx.family(Family::Unipotent { m, lower: false, level: unit.clone() })?;
        let lo = ctx.family(Family::Unipotent { m, lower: true, level: unit.clone() })?;
        let name = format!("<U_{m}, U_{m}^->");
        let left = ctx.close(&name, &up.union(&lo, name.clone()))?;
        require!(ctx.equal(&name, &left, er.name(), &right));
    }
    Ok(Verdict::Pass)
}

pub(super) fn lemma11(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(3, "lemma11")?;
    let a = ctx.ideal(0).clone();
    let fam = ctx.family(Family::LastColumn(a.clone()))?;
    let left = ctx.close(fam.name(), &fam)?;
    let right = e_rel_def(ctx, &a)?;
    Ok(ctx.equal(fam.name(), &left, "E(n,R,A)", &right))
}

/// Both items: from `z_ih, z_jh` (or `z_hi, z_hj`) over `E(n,A)`, the
/// closure contains `z_ij` and `z_ji`.
pub(super) fn lemma12(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(3, "lemma12")?;
    let ix = ctx.indices(3, &[1, 2, 3])?;
    let (i, j, h) = (ix[0], ix[1], ix[2]);
    if i == j || j == h || i == h {
        return Err(Error::InvalidSpec(format!("indices {ix:?} must be pairwise distinct")));
    }
    let a = ctx.ideal(0).clone();
    let gl = ctx.gl.clone();
    let rs: Vec<Elem> = ctx.ring.elements().collect();
    let family = |pairs: &[(usize, usize)], params: &[Elem]| -> Result<Vec<GlElem>> {
        let mut v = Vec::new();
        for &(p, q) in pairs {
            for &x in params {
                for &d in &rs {
                    v.push(gl.stv(p, q, x, d)?);
                }
            }
        }
        Ok(v)
    };
    let nonzero: Vec<Elem> = a.nonzero_elements().collect();
    let wanted = family(&[(i, j), (j, i)], a.elements())?;
    let ea = ctx.e(&a)?;
    for (item, given) in [("first", [(i, h), (j, h)]), ("second", [(h, i), (h, j)])] {
        let gens = GenSet::new(format!("E(n,A) and z_{}{}, z_{}{}", given[0].0, given[0].1, given[1].0, given[1].1), &gl, family(&given, &nonzero)?);
        let hgroup = ctx.close(gens.name(), &ea.union(&gens, gens.name()))?;
        for w in &wanted {
            ctx.tick();
            if hgroup.member(w.mat()) != Membership::In {
                return Ok(ctx.fail(w.mat(), format!("{item} item: z not generated by {}", gens.name())));
            }
        }
    }
    Ok(Verdict::Pass)
}

pub(super) fn theorem2(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(3, "theorem2")?;
    let (a, b) = (ctx.ideal(0).clone(), ctx.ideal(1).clone());
    let fam = ctx.family(Family::Partial { level: a.clone(), conj: b.clone() })?;
    let left = ctx.close(fam.name(), &fam)?;
    let (ea, eb) = (ctx.e(&a)?, ctx.e(&b)?);
    let right = ctx.normal("E(n,A)^E(n,B)", &ea, &eb)?;
    Ok(ctx.equal(fam.name(), &left, "E(n,A)^E(n,B)", &right))
}

pub(super) fn theorem3(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(3, "theorem3")?;
    let a = ctx.ideal(0).clone();
    let right = e_rel_def(ctx, &a)?;
    for m in parabolic_indices(ctx)? {
        let fam = ctx.family(Family::Parabolic { m, level: a.clone() })?;
        let left = ctx.close(fam.name(), &fam)?;
        require!(ctx.equal(fam.name(), &left, "E(n,R,A)", &right));
    }
    Ok(Verdict::Pass)
}
