use elemlab::group::{close, compare, index, Membership, Relation};
use elemlab::matgl::{gens_family, Family, GenSet, Gl, GlElem, ParamRange};
use elemlab::rings::{ideal_span, Elem, Ring, RingSpec};
use proptest::prelude::*;

fn gl(m: u64) -> Gl {
    Gl::new(Ring::new(RingSpec::Residue { modulus: m }).unwrap(), 3).unwrap()
}

fn elem(r: &Ring, k: u32) -> Elem {
    r.elem(k % r.cardinality() as u32).unwrap()
}

/// A transvection word from `(i, j, c)` triples.
fn word(gl: &Gl, steps: &[(usize, usize, u32)]) -> GlElem {
    let r = gl.ring().clone();
    let ts: Vec<GlElem> = steps
        .iter()
        .filter(|(i, j, _)| i != j)
        .map(|&(i, j, c)| gl.transvection(i, j, elem(&r, c)).unwrap())
        .collect();
    gl.product(ts.iter())
}

fn steps() -> impl Strategy<Value = Vec<(usize, usize, u32)>> {
    prop::collection::vec((1usize..=3, 1usize..=3, any::<u32>()), 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(x in steps(), y in steps(), z in steps()) {
        let g = gl(8);
        let (x, y, z) = (word(&g, &x), word(&g, &y), word(&g, &z));
        prop_assert_eq!(g.mul_elem(&g.mul_elem(&x, &y), &z), g.mul_elem(&x, &g.mul_elem(&y, &z)));
        prop_assert!(g.is_identity(g.mul_elem(&x, &x.inverse()).mat()));
        prop_assert_eq!(g.try_invert(x.mat()).unwrap(), x.clone());
    }

    #[test]
    fn hall_witt(x in steps(), y in steps(), z in steps()) {
        let g = gl(9);
        let (x, y, z) = (word(&g, &x), word(&g, &y), word(&g, &z));
        let c3 = |a: &GlElem, b: &GlElem, c: &GlElem| g.commutator(&g.commutator(a, b), c);
        let t1 = g.conj_right(&c3(&x, &y.inverse(), &z.inverse()), &x);
        let t2 = g.conj_right(&c3(&z, &x.inverse(), &y.inverse()), &z);
        let t3 = g.conj_right(&c3(&y, &z.inverse(), &x.inverse()), &y);
        prop_assert!(g.is_identity(g.product([&t1, &t2, &t3]).mat()));
    }

    #[test]
    fn steinberg_relations(a in any::<u32>(), b in any::<u32>(), i in 1usize..=3, j in 1usize..=3, l in 1usize..=3) {
        prop_assume!(i != j && j != l && i != l);
        let g = gl(16);
        let r = g.ring().clone();
        let (a, b) = (elem(&r, a), elem(&r, b));
        let t = |p, q, c| g.transvection(p, q, c).unwrap();
        prop_assert_eq!(g.mul_elem(&t(i, j, a), &t(i, j, b)), t(i, j, r.add(a, b)));
        prop_assert_eq!(g.commutator(&t(i, j, a), &t(j, l, b)), t(i, l, r.mul(a, b)));
        prop_assert!(g.is_identity(g.commutator(&t(i, j, a), &t(i, l, b)).mat()));
    }

    #[test]
    fn closures_are_subgroups(x in steps(), y in steps()) {
        let g = gl(4);
        let gens = GenSet::new("H", &g, [word(&g, &x), word(&g, &y)]);
        let h = close(&gens, 1 << 16);
        prop_assert!(h.is_complete());
        let all = close(&gens_family(&g, &Family::Unrelative(elemlab::rings::Ideal::unit(g.ring()).unwrap()), ParamRange::All).unwrap(), 1 << 16);
        // Lagrange inside SL(3, Z/4).
        prop_assert_eq!(all.order() % h.order(), 0);
        prop_assert!(matches!(compare(&h, &all), Relation::LeftInRight | Relation::Equal));
        prop_assert_eq!(index(&all, &h).unwrap() * h.order(), all.order());
        let els: Vec<_> = h.elements().take(24).cloned().collect();
        for a in &els {
            for b in &els {
                prop_assert_eq!(h.member(&g.mul(a, b)), Membership::In);
            }
        }
    }

    #[test]
    fn closure_ignores_generator_order(x in steps(), y in steps(), z in steps()) {
        let g = gl(4);
        let ws = [word(&g, &x), word(&g, &y), word(&g, &z)];
        let a = close(&GenSet::new("a", &g, ws.iter().cloned()), 1 << 16);
        let b = close(&GenSet::new("b", &g, ws.iter().rev().cloned()), 1 << 16);
        prop_assert_eq!(compare(&a, &b), Relation::Equal);
    }

    #[test]
    fn relative_groups_are_congruence(k in prop::sample::select(vec![2i64, 4])) {
        let g = gl(8);
        let r = g.ring().clone();
        let level = ideal_span(&r, &[r.from_int(k)]).unwrap();
        let e = close(&gens_family(&g, &Family::Relative(level.clone()), ParamRange::All).unwrap(), 1 << 20);
        prop_assert!(e.elements().all(|m| elemlab::matgl::congruence_test(&g, &level, m)));
    }
}
