//! Claims about quadratic orders.

use super::{Ctx, Verdict};
use crate::error::{Error, Result};
use crate::numberfields::{check_lemma16, sk1_order, sk1_terms, QuadIdeal, QuadOrder};

fn order_and_ideal(ctx: &Ctx, primes: &Option<String>, what: &str) -> Result<(QuadOrder, QuadIdeal)> {
    let order = ctx.params.order.ok_or_else(|| Error::InvalidSpec(format!("{what} needs params.order")))?;
    let primes = primes.as_deref().ok_or_else(|| Error::InvalidSpec(format!("{what} needs prime exponents")))?;
    Ok((order, QuadIdeal::parse(order.name(), primes)?))
}

pub(super) fn sk1(ctx: &mut Ctx) -> Result<Verdict> {
    let (order, ideal) = order_and_ideal(ctx, &ctx.params.primes, "sk1")?;
    let value = sk1_order(order, &ideal)?;
    for t in sk1_terms(order, &ideal)? {
        ctx.note(format!("p = {}: floor {} clamped to exponent {}", t.p, t.floor, t.exponent));
    }
    ctx.note(format!("|SK_1({}, {ideal})| = {value}", order.name()));
    ctx.tick();
    Ok(match ctx.params.expect {
        Some(want) if want != value => Verdict::Fail {
            witness: value.to_string(),
            context: format!("expected |SK_1| = {want}"),
        },
        _ => Verdict::Pass,
    })
}

pub(super) fn lemma16(ctx: &mut Ctx) -> Result<Verdict> {
    let (order, a) = order_and_ideal(ctx, &ctx.params.primes, "lemma16")?;
    let (_, b) = order_and_ideal(ctx, &ctx.params.primes_b, "lemma16")?;
    let rep = check_lemma16(order, &a, &b)?;
    ctx.tick();
    ctx.note(format!(
        "|A/A(A+B)| = {}, |B/B(A+B)| = {}, |R/(A+B)| = {}",
        rep.a_quotient, rep.b_quotient, rep.r_quotient
    ));
    Ok(if rep.all_equal {
        Verdict::Pass
    } else {
        Verdict::Fail {
            witness: format!("{} {} {}", rep.a_quotient, rep.b_quotient, rep.r_quotient),
            context: format!("A = {a}, B = {b}"),
        }
    })
}
