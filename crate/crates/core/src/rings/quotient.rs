use super::{Elem, Ideal, Kind, Ring, RingSpec};
use crate::error::{Error, Result};

/// Coset tables of `parent / I`. Quotient element `k` is the `k`-th coset in
/// order of its least parent index; that least index is the canonical
/// representative.
pub(crate) struct QuotientData {
    pub(crate) parent: Ring,
    proj: Vec<u32>,
    reps: Vec<u32>,
}

impl QuotientData {
    pub(crate) fn card(&self) -> u32 {
        self.reps.len() as u32
    }

    pub(crate) fn project(&self, e: Elem) -> Elem {
        Elem(self.proj[e.0 as usize])
    }

    pub(crate) fn rep(&self, e: Elem) -> Elem {
        Elem(self.reps[e.0 as usize])
    }
}

/// The reduction map `R -> R/I`.
#[derive(Clone, Debug)]
pub struct Projection {
    source: Ring,
    target: Ring,
}

impl Projection {
    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn apply(&self, e: Elem) -> Elem {
        self.target.quotient_data().expect("quotient target").project(e)
    }

    /// Canonical lift of a quotient element.
    pub fn lift(&self, e: Elem) -> Elem {
        self.target.quotient_data().expect("quotient target").rep(e)
    }
}

/// Builds `R/I` together with its projection.
pub fn quotient_ring(ring: &Ring, ideal: &Ideal) -> Result<(Ring, Projection)> {
    if !ideal.ring().same(ring) {
        return Err(Error::Mismatch(format!("ideal of {:?} used with {:?}", ideal.ring(), ring)));
    }
    let n = ring.cardinality();
    let mut proj = vec![u32::MAX; n];
    let mut reps = Vec::with_capacity(n / ideal.len());
    for a in 0..n as u32 {
        if proj[a as usize] != u32::MAX {
            continue;
        }
        let k = reps.len() as u32;
        reps.push(a);
        for &i in ideal.elements() {
            proj[ring.add(Elem(a), i).0 as usize] = k;
        }
    }
    let gens = if ideal.generators().is_empty() {
        vec!["0".to_string()]
    } else {
        ideal.generators().iter().map(|&g| ring.format(g)).collect()
    };
    let spec = RingSpec::Quotient { parent: Box::new(ring.spec().clone()), gens };
    let data = QuotientData { parent: ring.clone(), proj, reps };
    let target = Ring::from_kind(spec, Kind::Quotient(data), *ring.budgets());
    Ok((target.clone(), Projection { source: ring.clone(), target }))
}
