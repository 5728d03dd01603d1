//! Matrix identities and congruences decided element by element.

use super::{Ctx, Verdict};
use crate::error::{Error, Result};
use crate::matgl::{congruence_enumerate, embed_stable, in_unipotent, unipotent_elements, Gl, GlElem};
use crate::rings::{Elem, IdealOp};

/// Left-normed `[x, y, z] = [[x, y], z]`.
fn comm3(gl: &Gl, x: &GlElem, y: &GlElem, z: &GlElem) -> GlElem {
    gl.commutator(&gl.commutator(x, y), z)
}

pub(super) fn hall_witt(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(2, "hall-witt")?;
    let trials = ctx.params.trials.unwrap_or(super::DEFAULT_SAMPLES);
    ctx.counts.space = trials as u64;
    ctx.counts.sampled = true;
    let gl = ctx.gl.clone();
    for _ in 0..trials {
        let x = ctx.random_word(8)?;
        let y = ctx.random_word(8)?;
        let z = ctx.random_word(8)?;
        // [x,y⁻¹,z⁻¹]^x · [z,x⁻¹,y⁻¹]^z · [y,z⁻¹,x⁻¹]^y
        let term = |a: &GlElem, b: &GlElem, c: &GlElem| {
            gl.conj_right(&comm3(&gl, a, &b.inverse(), &c.inverse()), a)
        };
        let p = gl.product([&term(&x, &y, &z), &term(&z, &x, &y), &term(&y, &z, &x)]);
        ctx.tick();
        if !gl.is_identity(p.mat()) {
            let c = format!("x={} y={} z={}", ctx.fmt_mat(x.mat()), ctx.fmt_mat(y.mat()), ctx.fmt_mat(z.mat()));
            return Ok(ctx.fail(p.mat(), c));
        }
    }
    Ok(Verdict::Pass)
}

pub(super) fn chevalley(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(2, "chevalley")?;
    let gl = ctx.gl.clone();
    let r = ctx.ring.clone();
    let elems: Vec<Elem> = r.elements().collect();
    let pos = gl.positions();
    for p in ctx.points(&[elems.len(), elems.len()]) {
        let (a, b) = (elems[p[0]], elems[p[1]]);
        ctx.tick();
        for &(i, j) in &pos {
            let ta = gl.transvection(i, j, a)?;
            let sum = gl.mul_elem(&ta, &gl.transvection(i, j, b)?);
            if sum != gl.transvection(i, j, r.add(a, b))? {
                return Ok(ctx.fail(sum.mat(), format!("t_{i}{j}({})·t_{i}{j}({})", ctx.fmt(a), ctx.fmt(b))));
            }
            for &(k, l) in &pos {
                let c = gl.commutator(&ta, &gl.transvection(k, l, b)?);
                let expect = if j == k && i != l {
                    gl.transvection(i, l, r.mul(a, b))?
                } else if j != k && i != l {
                    gl.identity_elem()
                } else {
                    continue;
                };
                if c != expect {
                    let s = format!("[t_{i}{j}({}), t_{k}{l}({})]", ctx.fmt(a), ctx.fmt(b));
                    return Ok(ctx.fail(c.mat(), s));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

fn distinct(v: &[usize]) -> Result<()> {
    for (k, a) in v.iter().enumerate() {
        if v[k + 1..].contains(a) {
            return Err(Error::InvalidSpec(format!("indices {v:?} must be pairwise distinct")));
        }
    }
    Ok(())
}

pub(super) fn theorem1(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(3, "theorem1")?;
    let ix = ctx.indices(3, &[1, 2, 3])?;
    distinct(&ix)?;
    let (i, j, h) = (ix[0], ix[1], ix[2]);
    let (a, b, c) = (ctx.ideal(0).clone(), ctx.ideal(1).clone(), ctx.ideal(2).clone());
    let abc = ctx.combine(IdealOp::Product, &[&a, &b, &c])?;
    let bca = ctx.combine(IdealOp::Product, &[&b, &c, &a])?;
    let cab = ctx.combine(IdealOp::Product, &[&c, &a, &b])?;
    let level = ctx.combine(IdealOp::Sum, &[&abc, &bca, &cab])?;
    let target = ctx.level_target(&level)?;
    let r = ctx.ring.clone();
    let gl = ctx.gl.clone();
    let (ea, eb, ec) = (a.elements(), b.elements(), c.elements());
    for p in ctx.points(&[ea.len(), eb.len(), ec.len()]) {
        let (x, y, z) = (ea[p[0]], eb[p[1]], ec[p[2]]);
        let d = gl.product([
            &gl.elem_comm(i, j, r.mul(x, y), z)?,
            &gl.elem_comm(j, h, r.mul(z, x), y)?,
            &gl.elem_comm(h, i, r.mul(y, z), x)?,
        ]);
        ctx.tick();
        if !target.contains(&gl, d.mat()) {
            let s = format!("a={} b={} c={} (i,j,h)=({i},{j},{h}), level {level}", ctx.fmt(x), ctx.fmt(y), ctx.fmt(z));
            return Ok(ctx.fail(d.mat(), s));
        }
    }
    Ok(Verdict::Pass)
}

pub(super) fn theorem_a(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(3, "theoremA")?;
    let ix = ctx.indices(4, &[1, 2, 2, 3])?;
    let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
    if i == j || k == l {
        return Err(Error::InvalidSpec(format!("index pairs ({i},{j}), ({k},{l}) must be off-diagonal")));
    }
    let (a, b) = (ctx.ideal(0).clone(), ctx.ideal(1).clone());
    let level = a.symmetrised(&b)?;
    let target = ctx.level_target(&level)?;
    let r = ctx.ring.clone();
    let gl = ctx.gl.clone();
    let cs: Vec<Elem> = match &ctx.params.c {
        Some(text) => vec![r.parse(text)?],
        None => r.elements().collect(),
    };
    let (ea, eb) = (a.elements(), b.elements());
    for p in ctx.points(&[ea.len(), eb.len(), cs.len()]) {
        let (x, y, c) = (ea[p[0]], eb[p[1]], cs[p[2]]);
        let lhs = gl.elem_comm(i, j, r.mul(x, c), y)?;
        let rhs = gl.elem_comm(k, l, x, r.mul(c, y))?;
        let d = gl.mul_elem(&lhs, &rhs.inverse());
        ctx.tick();
        if !target.contains(&gl, d.mat()) {
            let s = format!("a={} b={} c={} y_{i}{j}(ac,b)·y_{k}{l}(a,cb)⁻¹", ctx.fmt(x), ctx.fmt(y), ctx.fmt(c));
            return Ok(ctx.fail(d.mat(), s));
        }
    }
    Ok(Verdict::Pass)
}

/// Index pairs for the Lemma 14/15 families: fixed or all.
fn pairs(ctx: &Ctx) -> Result<Vec<(usize, usize)>> {
    if ctx.params.indices.is_some() {
        let v = ctx.indices(2, &[1, 2])?;
        if v[0] == v[1] {
            return Err(Error::InvalidSpec("index pair must be off-diagonal".into()));
        }
        Ok(vec![(v[0], v[1])])
    } else {
        Ok(ctx.gl.positions())
    }
}

/// Runs `defects` on every sampled tuple; each defect must lie in
/// `E(n,R,A∘B)`.
fn congruence_family(
    ctx: &mut Ctx,
    dims: &[usize],
    mut defects: impl FnMut(&mut Ctx, &[usize]) -> Result<Vec<(GlElem, String)>>,
) -> Result<Verdict> {
    ctx.need_degree(3, "Lemma 14/15 congruences")?;
    let (a, b) = (ctx.ideal(0).clone(), ctx.ideal(1).clone());
    let level = a.symmetrised(&b)?;
    let target = ctx.level_target(&level)?;
    let gl = ctx.gl.clone();
    for p in ctx.points(dims) {
        ctx.tick();
        for (d, s) in defects(ctx, &p)? {
            if !target.contains(&gl, d.mat()) {
                return Ok(ctx.fail(d.mat(), format!("{s} modulo E(n,R,{level})")));
            }
        }
    }
    Ok(Verdict::Pass)
}

pub(super) fn lemma14(ctx: &mut Ctx) -> Result<Verdict> {
    let pos = pairs(ctx)?;
    let (a, b) = (ctx.ideal(0).clone(), ctx.ideal(1).clone());
    let gl = ctx.gl.clone();
    let (ea, eb) = (a.elements().to_vec(), b.elements().to_vec());
    congruence_family(ctx, &[pos.len(), ea.len(), eb.len()], |ctx, p| {
        let (i, j) = pos[p[0]];
        let (x, y) = (ea[p[1]], eb[p[2]]);
        let w = ctx.random_word(6)?;
        let yv = gl.elem_comm(i, j, x, y)?;
        let d = gl.mul_elem(&gl.conj(&w, &yv), &yv.inverse());
        let s = format!("ˣy_{i}{j}({},{})·y⁻¹ with x={}", ctx.fmt(x), ctx.fmt(y), ctx.fmt_mat(w.mat()));
        Ok(vec![(d, s)])
    })
}

pub(super) fn lemma15_additivity(ctx: &mut Ctx) -> Result<Verdict> {
    let pos = pairs(ctx)?;
    let (a, b) = (ctx.ideal(0).clone(), ctx.ideal(1).clone());
    let gl = ctx.gl.clone();
    let r = ctx.ring.clone();
    let (ea, eb) = (a.elements().to_vec(), b.elements().to_vec());
    ctx.note("additivity in the first argument uses y(a1,b)·y(a2,b)");
    congruence_family(ctx, &[pos.len(), ea.len(), ea.len(), eb.len(), eb.len()], |ctx, p| {
        let (i, j) = pos[p[0]];
        let (a1, a2, b1, b2) = (ea[p[1]], ea[p[2]], eb[p[3]], eb[p[4]]);
        let y = |x: Elem, z: Elem| gl.elem_comm(i, j, x, z);
        let first = gl.mul_elem(&y(r.add(a1, a2), b1)?, &gl.mul_elem(&y(a1, b1)?, &y(a2, b1)?).inverse());
        let second = gl.mul_elem(&y(a1, r.add(b1, b2))?, &gl.mul_elem(&y(a1, b1)?, &y(a1, b2)?).inverse());
        let (fa1, fa2, fb1, fb2) = (ctx.fmt(a1), ctx.fmt(a2), ctx.fmt(b1), ctx.fmt(b2));
        Ok(vec![
            (first, format!("y_{i}{j}({fa1}+{fa2},{fb1}) vs y_{i}{j}({fa1},{fb1})·y_{i}{j}({fa2},{fb1})")),
            (second, format!("y_{i}{j}({fa1},{fb1}+{fb2}) vs y_{i}{j}({fa1},{fb1})·y_{i}{j}({fa1},{fb2})")),
        ])
    })
}

pub(super) fn lemma15_inverse(ctx: &mut Ctx) -> Result<Verdict> {
    let pos = pairs(ctx)?;
    let (a, b) = (ctx.ideal(0).clone(), ctx.ideal(1).clone());
    let gl = ctx.gl.clone();
    let r = ctx.ring.clone();
    let (ea, eb) = (a.elements().to_vec(), b.elements().to_vec());
    congruence_family(ctx, &[pos.len(), ea.len(), eb.len()], |ctx, p| {
        let (i, j) = pos[p[0]];
        let (x, y) = (ea[p[1]], eb[p[2]]);
        let base = gl.elem_comm(i, j, x, y)?;
        // y⁻¹ ≡ y' iff y·y' lies in the normal subgroup
        let neg_a = gl.mul_elem(&base, &gl.elem_comm(i, j, r.neg(x), y)?);
        let neg_b = gl.mul_elem(&base, &gl.elem_comm(i, j, x, r.neg(y))?);
        let (fx, fy) = (ctx.fmt(x), ctx.fmt(y));
        Ok(vec![
            (neg_a, format!("y_{i}{j}({fx},{fy})·y_{i}{j}(-{fx},{fy})")),
            (neg_b, format!("y_{i}{j}({fx},{fy})·y_{i}{j}({fx},-{fy})")),
        ])
    })
}

pub(super) fn lemma15_absorption(ctx: &mut Ctx) -> Result<Verdict> {
    let pos = pairs(ctx)?;
    let (a, b) = (ctx.ideal(0).clone(), ctx.ideal(1).clone());
    let gl = ctx.gl.clone();
    let r = ctx.ring.clone();
    let (ea, eb) = (a.elements().to_vec(), b.elements().to_vec());
    congruence_family(ctx, &[pos.len(), ea.len(), ea.len(), eb.len(), eb.len()], |ctx, p| {
        let (i, j) = pos[p[0]];
        let (a1, a2, b1, b2) = (ea[p[1]], ea[p[2]], eb[p[3]], eb[p[4]]);
        let y = |x: Elem, z: Elem| gl.elem_comm(i, j, x, z);
        let (fa1, fa2, fb1, fb2) = (ctx.fmt(a1), ctx.fmt(a2), ctx.fmt(b1), ctx.fmt(b2));
        Ok(vec![
            (y(r.mul(a1, b1), b2)?, format!("y_{i}{j}({fa1}·{fb1},{fb2})")),
            (y(a1, r.mul(a2, b1))?, format!("y_{i}{j}({fa1},{fa2}·{fb1})")),
            (y(r.mul(a1, a2), b1)?, format!("y_{i}{j}({fa1}·{fa2},{fb1})")),
            (y(a1, r.mul(b1, b2))?, format!("y_{i}{j}({fa1},{fb1}·{fb2})")),
        ])
    })
}

fn parabolic_indices(ctx: &Ctx) -> Vec<usize> {
    match ctx.params.m {
        Some(m) => vec![m],
        None => (1..ctx.n()).collect(),
    }
}

/// `[GL(m,R,A), U_m(C)] ≤ U_m(AC)` and `[GL(m,R,A), U_m^-(C)] ≤ U_m^-(CA)`,
/// with `GL(m)` as the upper-left Levi block. Exact.
pub(super) fn lemma10(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(3, "lemma10")?;
    let (a, c) = (ctx.ideal(0).clone(), ctx.ideal(1).clone());
    let ac = a.product(&c)?;
    let ca = c.product(&a)?;
    let gl = ctx.gl.clone();
    for m in parabolic_indices(ctx) {
        let small = Gl::new(ctx.ring.clone(), m)?;
        let levi: Vec<GlElem> =
            congruence_enumerate(&small, &a)?.iter().map(|g| embed_stable(&gl, g)).collect::<Result<_>>()?;
        let upper = unipotent_elements(&gl, m, false, &c)?;
        let lower = unipotent_elements(&gl, m, true, &c)?;
        for p in ctx.points(&[levi.len(), upper.len(), lower.len()]) {
            let g = &levi[p[0]];
            ctx.tick();
            let cu = gl.commutator(g, &upper[p[1]]);
            if !in_unipotent(&gl, m, false, &ac, cu.mat()) {
                let s = format!("[g, u], g={}, u={}, m={m}, outside U_m({ac})", ctx.fmt_mat(g.mat()), ctx.fmt_mat(upper[p[1]].mat()));
                return Ok(ctx.fail(cu.mat(), s));
            }
            let cl = gl.commutator(g, &lower[p[2]]);
            if !in_unipotent(&gl, m, true, &ca, cl.mat()) {
                let s = format!("[g, v], g={}, v={}, m={m}, outside U_m^-({ca})", ctx.fmt_mat(g.mat()), ctx.fmt_mat(lower[p[2]].mat()));
                return Ok(ctx.fail(cl.mat(), s));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// `ˣg ≡ g (mod E(n,R,A))` for `g ∈ GL(n-1,R,A)`, `x ∈ E(n,R)`.
pub(super) fn lemma13(ctx: &mut Ctx) -> Result<Verdict> {
    ctx.need_degree(3, "lemma13")?;
    let a = ctx.ideal(0).clone();
    let target = ctx.level_target(&a)?;
    let gl = ctx.gl.clone();
    let small = Gl::new(ctx.ring.clone(), ctx.n() - 1)?;
    let stable: Vec<GlElem> =
        congruence_enumerate(&small, &a)?.iter().map(|g| embed_stable(&gl, g)).collect::<Result<_>>()?;
    let words = ctx.params.trials.unwrap_or(4);
    for p in ctx.points(&[stable.len()]) {
        let g = &stable[p[0]];
        for _ in 0..words {
            let x = ctx.random_word(6)?;
            let d = gl.mul_elem(&gl.conj(&x, g), &g.inverse());
            ctx.tick();
            if !target.contains(&gl, d.mat()) {
                let s = format!("ˣg·g⁻¹ with g={}, x={}", ctx.fmt_mat(g.mat()), ctx.fmt_mat(x.mat()));
                return Ok(ctx.fail(d.mat(), s));
            }
        }
    }
    Ok(Verdict::Pass)
}
