//! Budgeted exhaustive closure of matrix groups over finite rings.
//!
//! Closures are built coset by coset: when a generator `s` enlarges the
//! current group `H`, the new group is assembled from right cosets `H·r`,
//! with new representatives found by multiplying known ones by every
//! accepted generator. Insertion order depends only on the generator order.

use std::collections::{HashMap, VecDeque};
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use indexmap::IndexSet;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matgl::{GenSet, Gl, GlElem, Mat};
use crate::Budgets;

/// Cosets at least this large are multiplied out in parallel.
const PAR_COSET: usize = 4096;

/// The finite element set of a generated subgroup.
#[derive(Clone, Debug)]
pub struct Closure {
    gl: Gl,
    elements: IndexSet<Mat, FxBuildHasher>,
    /// Generators that enlarged the group; together they generate it.
    gens: Vec<GlElem>,
    complete: bool,
    budget: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    In,
    Out,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    LeftInRight,
    RightInLeft,
    Incomparable,
    Unknown,
}

/// What reports show about a closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSummary {
    pub name: String,
    pub order: usize,
    pub complete: bool,
    pub generators: usize,
    pub budget: usize,
}

impl Closure {
    pub fn gl(&self) -> &Gl {
        &self.gl
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn gens(&self) -> &[GlElem] {
        &self.gens
    }

    /// Elements in insertion order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = &Mat> {
        self.elements.iter()
    }

    pub fn element(&self, k: usize) -> Option<&Mat> {
        self.elements.get_index(k)
    }

    pub fn position(&self, g: &Mat) -> Option<usize> {
        self.elements.get_index_of(g)
    }

    pub fn member(&self, g: &Mat) -> Membership {
        if self.elements.contains(g) {
            Membership::In
        } else if self.complete {
            Membership::Out
        } else {
            Membership::Unknown
        }
    }

    pub fn summary(&self, name: impl Into<String>) -> ClosureSummary {
        ClosureSummary {
            name: name.into(),
            order: self.order(),
            complete: self.complete,
            generators: self.gens.len(),
            budget: self.budget,
        }
    }

    /// Some(true) iff every generator of `self` lies in `other`.
    fn contained_in(&self, other: &Closure) -> Option<bool> {
        let mut unknown = !self.complete;
        for g in &self.gens {
            match other.member(g.mat()) {
                Membership::In => {}
                Membership::Out => return Some(false),
                Membership::Unknown => unknown = true,
            }
        }
        if unknown {
            None
        } else {
            Some(true)
        }
    }
}

struct Builder<'a> {
    gl: &'a Gl,
    elements: IndexSet<Mat, FxBuildHasher>,
    gens: Vec<GlElem>,
    complete: bool,
    budget: usize,
}

impl<'a> Builder<'a> {
    fn new(gl: &'a Gl, budget: usize) -> Self {
        let mut elements = IndexSet::with_hasher(FxBuildHasher);
        elements.insert(gl.identity());
        Builder { gl, elements, gens: Vec::new(), complete: true, budget }
    }

    /// Adds `H·x` where `H` is the first `h_len` elements.
    fn add_coset(&mut self, h_len: usize, x: &Mat) -> bool {
        if self.elements.len() + h_len > self.budget {
            self.complete = false;
            return false;
        }
        let gl = self.gl;
        if h_len >= PAR_COSET {
            let base = &self.elements;
            let new: Vec<Mat> = (0..h_len)
                .into_par_iter()
                .map(|i| gl.mul(&base[i], x))
                .collect();
            self.elements.extend(new);
        } else {
            for i in 0..h_len {
                let m = gl.mul(&self.elements[i], x);
                self.elements.insert(m);
            }
        }
        true
    }

    /// Extends the group by `s`; true iff `s` was new.
    fn add_gen(&mut self, s: &GlElem) -> bool {
        if !self.complete || self.elements.contains(s.mat()) {
            return false;
        }
        self.gens.push(s.clone());
        let h_len = self.elements.len();
        let mut reps = vec![self.gl.identity(), s.mat().clone()];
        if !self.add_coset(h_len, s.mat()) {
            return true;
        }
        let mut k = 1;
        while k < reps.len() {
            for g in 0..self.gens.len() {
                let x = self.gl.mul(&reps[k], self.gens[g].mat());
                if !self.elements.contains(&x) {
                    if !self.add_coset(h_len, &x) {
                        return true;
                    }
                    reps.push(x);
                }
            }
            k += 1;
        }
        true
    }

    /// Adds `seeds` and saturates under conjugation by `conj`.
    fn saturate(&mut self, seeds: impl IntoIterator<Item = GlElem>, conj: &[GlElem]) {
        let mut queue = VecDeque::new();
        for s in seeds {
            queue.push_back(s);
            while let Some(g) = queue.pop_front() {
                if !self.complete {
                    return;
                }
                if self.add_gen(&g) {
                    for t in conj {
                        queue.push_back(self.gl.conj(t, &g));
                    }
                }
            }
        }
    }

    fn finish(self) -> Closure {
        Closure {
            gl: self.gl.clone(),
            elements: self.elements,
            gens: self.gens,
            complete: self.complete,
            budget: self.budget,
        }
    }
}

fn check_same(a: &Gl, b: &Gl) -> Result<()> {
    if a.same(b) {
        Ok(())
    } else {
        Err(Error::Mismatch(format!(
            "GL({}, {:?}) vs GL({}, {:?})",
            a.degree(),
            a.ring(),
            b.degree(),
            b.ring()
        )))
    }
}

/// `⟨gens⟩`, exhaustively, up to `budget` elements.
pub fn close(gens: &GenSet, budget: usize) -> Closure {
    let mut b = Builder::new(gens.gl(), budget);
    for g in gens.elems() {
        b.add_gen(g);
        if !b.complete {
            break;
        }
    }
    b.finish()
}

/// Smallest subgroup containing `seed` and normalised by `⟨conjugators⟩`.
pub fn normal_closure(seed: &GenSet, conjugators: &GenSet, budget: usize) -> Result<Closure> {
    check_same(seed.gl(), conjugators.gl())?;
    let mut b = Builder::new(seed.gl(), budget);
    b.saturate(seed.elems().iter().cloned(), conjugators.elems());
    Ok(b.finish())
}

/// `[⟨F⟩, ⟨H⟩]`: generator commutators, saturated under `F ∪ H`.
pub fn mutual_commutator(f: &GenSet, h: &GenSet, budget: usize) -> Result<Closure> {
    check_same(f.gl(), h.gl())?;
    let gl = f.gl();
    let conj: Vec<GlElem> = f.elems().iter().chain(h.elems()).cloned().collect();
    let mut b = Builder::new(gl, budget);
    const CHUNK: usize = 1 << 12;
    let pairs: Vec<(usize, usize)> = (0..f.len()).flat_map(|i| (0..h.len()).map(move |j| (i, j))).collect();
    for chunk in pairs.chunks(CHUNK) {
        let seeds: Vec<GlElem> = chunk
            .par_iter()
            .map(|&(i, j)| gl.commutator(&f.elems()[i], &h.elems()[j]))
            .collect();
        b.saturate(seeds.into_iter().filter(|c| !gl.is_identity(c.mat())), &conj);
        if !b.complete {
            break;
        }
    }
    Ok(b.finish())
}

pub fn member(c: &Closure, g: &Mat) -> Membership {
    c.member(g)
}

/// Compares by testing each side's generators against the other side.
pub fn compare(x: &Closure, y: &Closure) -> Relation {
    if !x.gl.same(&y.gl) {
        return Relation::Incomparable;
    }
    match (x.contained_in(y), y.contained_in(x)) {
        (Some(true), Some(true)) => Relation::Equal,
        (Some(true), Some(false)) => Relation::LeftInRight,
        (Some(false), Some(true)) => Relation::RightInLeft,
        (Some(false), Some(false)) => Relation::Incomparable,
        (Some(true), None) => Relation::LeftInRight,
        (None, Some(true)) => Relation::RightInLeft,
        _ => Relation::Unknown,
    }
}

/// `|G : H|` for complete closures with `H ≤ G`.
pub fn index(g: &Closure, h: &Closure) -> Result<usize> {
    if !g.complete || !h.complete {
        return Err(Error::Incomplete("index needs complete closures".into()));
    }
    if h.contained_in(g) != Some(true) {
        return Err(Error::NotSubgroup("H is not contained in G".into()));
    }
    if !g.order().is_multiple_of(h.order()) {
        return Err(Error::NotSubgroup(format!("{} does not divide {}", h.order(), g.order())));
    }
    Ok(g.order() / h.order())
}

/// Closure cache counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub memory_hits: u64,
    pub disk_hits: u64,
    pub computed: u64,
    pub disk_writes: u64,
}

type Slot = Arc<OnceLock<Arc<Closure>>>;

/// Memoising front end for closures, optionally backed by a directory of
/// content-addressed files.
pub struct Engine {
    budgets: Budgets,
    disk: Option<PathBuf>,
    slots: Mutex<HashMap<[u8; 32], Slot>>,
    stats: Mutex<CacheStats>,
}

const MAGIC: &[u8; 8] = b"ELABCL01";

#[derive(Clone, Copy)]
enum Op {
    Close,
    Normal,
    Mutual,
}

impl Engine {
    pub fn new(budgets: Budgets) -> Engine {
        Engine { budgets, disk: None, slots: Mutex::new(HashMap::new()), stats: Mutex::new(CacheStats::default()) }
    }

    /// Persists closures under `dir` (created if missing).
    pub fn with_disk_cache(mut self, dir: impl Into<PathBuf>) -> io::Result<Engine> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        self.disk = Some(dir);
        Ok(self)
    }

    pub fn budgets(&self) -> &Budgets {
        &self.budgets
    }

    pub fn stats(&self) -> CacheStats {
        *self.stats.lock().expect("stats lock")
    }

    pub fn close(&self, gens: &GenSet, budget: usize) -> Arc<Closure> {
        self.cached(Op::Close, &[gens], budget, || close(gens, budget))
    }

    pub fn normal_closure(&self, seed: &GenSet, conj: &GenSet, budget: usize) -> Result<Arc<Closure>> {
        check_same(seed.gl(), conj.gl())?;
        Ok(self.cached(Op::Normal, &[seed, conj], budget, || {
            normal_closure(seed, conj, budget).expect("checked degrees")
        }))
    }

    pub fn mutual_commutator(&self, f: &GenSet, h: &GenSet, budget: usize) -> Result<Arc<Closure>> {
        check_same(f.gl(), h.gl())?;
        Ok(self.cached(Op::Mutual, &[f, h], budget, || {
            mutual_commutator(f, h, budget).expect("checked degrees")
        }))
    }

    fn key(op: Op, sets: &[&GenSet], budget: usize) -> [u8; 32] {
        let gl = sets[0].gl();
        let mut h = Sha256::new();
        h.update(MAGIC);
        h.update([op as u8, gl.degree() as u8]);
        h.update(format!("{:?}", gl.ring().spec()).as_bytes());
        h.update((budget as u64).to_le_bytes());
        for s in sets {
            h.update((s.len() as u64).to_le_bytes());
            for g in s.elems() {
                h.update(g.mat().encode());
            }
        }
        h.finalize().into()
    }

    fn cached(&self, op: Op, sets: &[&GenSet], budget: usize, compute: impl FnOnce() -> Closure) -> Arc<Closure> {
        let key = Engine::key(op, sets, budget);
        let slot = self.slots.lock().expect("slot lock").entry(key).or_default().clone();
        let mut fresh = false;
        let value = slot
            .get_or_init(|| {
                fresh = true;
                let gl = sets[0].gl();
                if let Some(c) = self.disk.as_ref().and_then(|d| read_cache(&d.join(file_name(&key)), gl).ok()) {
                    self.stats.lock().expect("stats lock").disk_hits += 1;
                    return Arc::new(c);
                }
                let c = compute();
                let mut st = self.stats.lock().expect("stats lock");
                st.computed += 1;
                if let Some(d) = &self.disk {
                    if write_cache(&d.join(file_name(&key)), &c).is_ok() {
                        st.disk_writes += 1;
                    }
                }
                Arc::new(c)
            })
            .clone();
        if !fresh {
            self.stats.lock().expect("stats lock").memory_hits += 1;
        }
        value
    }
}

fn file_name(key: &[u8; 32]) -> String {
    let mut s: String = key.iter().map(|b| format!("{b:02x}")).collect();
    s.push_str(".bin");
    s
}

fn put_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_le_bytes());
}

fn put_mat(out: &mut Vec<u8>, m: &Mat) {
    for e in m.entries() {
        put_u32(out, e.index());
    }
}

fn write_cache(path: &Path, c: &Closure) -> io::Result<()> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.push(c.gl.degree() as u8);
    out.push(c.complete as u8);
    out.extend_from_slice(&(c.budget as u64).to_le_bytes());
    put_u32(&mut out, c.gens.len() as u32);
    for g in &c.gens {
        put_mat(&mut out, g.mat());
        put_mat(&mut out, g.inv());
    }
    put_u32(&mut out, c.elements.len() as u32);
    for m in &c.elements {
        put_mat(&mut out, m);
    }
    let tmp = path.with_extension("tmp");
    fs::File::create(&tmp)?.write_all(&out)?;
    fs::rename(tmp, path)
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

fn corrupt() -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, "corrupt closure cache file")
}

impl<'a> Cursor<'a> {
    fn take(&mut self, k: usize) -> io::Result<&'a [u8]> {
        let s = self.buf.get(self.pos..self.pos + k).ok_or_else(corrupt)?;
        self.pos += k;
        Ok(s)
    }

    fn u32(&mut self) -> io::Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn mat(&mut self, gl: &Gl) -> io::Result<Mat> {
        let n = gl.degree();
        let card = gl.ring().cardinality() as u32;
        let mut v = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            let x = self.u32()?;
            if x >= card {
                return Err(corrupt());
            }
            v.push(gl.ring().elem(x).ok_or_else(corrupt)?);
        }
        Ok(Mat::from_raw(n, v))
    }
}

fn read_cache(path: &Path, gl: &Gl) -> io::Result<Closure> {
    let mut buf = Vec::new();
    fs::File::open(path)?.read_to_end(&mut buf)?;
    let mut cur = Cursor { buf: &buf, pos: 0 };
    if cur.take(8)? != MAGIC {
        return Err(corrupt());
    }
    let hdr = cur.take(2)?;
    let (n, complete) = (hdr[0] as usize, hdr[1] != 0);
    if n != gl.degree() {
        return Err(corrupt());
    }
    let budget = u64::from_le_bytes(cur.take(8)?.try_into().expect("8 bytes")) as usize;
    let ng = cur.u32()? as usize;
    let mut gens = Vec::with_capacity(ng);
    for _ in 0..ng {
        let m = cur.mat(gl)?;
        let i = cur.mat(gl)?;
        gens.push(GlElem::from_parts(m, i));
    }
    let ne = cur.u32()? as usize;
    let mut elements = IndexSet::with_capacity_and_hasher(ne, FxBuildHasher);
    for _ in 0..ne {
        elements.insert(cur.mat(gl)?);
    }
    if cur.pos != buf.len() || elements.len() != ne {
        return Err(corrupt());
    }
    Ok(Closure { gl: gl.clone(), elements, gens, complete, budget })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgl::{congruence_enumerate, congruence_test, gens_family, Family, ParamRange};
    use crate::rings::{ideal_span, Elem, Ideal, Ring, RingSpec};
    use rand::seq::SliceRandom;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const B: usize = 1 << 21;

    fn z(m: u64) -> Ring {
        Ring::new(RingSpec::Residue { modulus: m }).unwrap()
    }

    fn ideal(r: &Ring, k: i64) -> Ideal {
        ideal_span(r, &[r.from_int(k)]).unwrap()
    }

    fn fam(gl: &Gl, f: Family) -> GenSet {
        gens_family(gl, &f, ParamRange::All).unwrap()
    }

    #[test]
    fn gl3_f2_has_168_elements() {
        let r = z(2);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let c = close(&fam(&gl, Family::Unrelative(ideal(&r, 1))), B);
        assert!(c.is_complete());
        assert_eq!(c.order(), 168);
        let brute = congruence_enumerate(&gl, &ideal(&r, 1)).unwrap();
        assert_eq!(brute.len(), 168);
        assert!(brute.iter().all(|g| c.member(g.mat()) == Membership::In));
        let triv = close(&GenSet::empty("e", &gl), B);
        assert_eq!(index(&c, &triv).unwrap(), 168);
        assert_eq!(index(&c, &c).unwrap(), 1);
    }

    #[test]
    fn empty_and_trivial() {
        let r = z(8);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let e = close(&GenSet::empty("e", &gl), B);
        assert_eq!(e.order(), 1);
        assert!(e.is_complete());
        assert_eq!(e.member(&gl.identity()), Membership::In);
        let any = fam(&gl, Family::Unrelative(ideal(&r, 2)));
        let n = normal_closure(&GenSet::empty("e", &gl), &any, B).unwrap();
        assert_eq!(n.order(), 1);
        let m = mutual_commutator(&any, &GenSet::empty("e", &gl), B).unwrap();
        assert_eq!(m.order(), 1);
        assert_eq!(compare(&e, &close(&any, B)), Relation::LeftInRight);
        assert_eq!(compare(&e, &e), Relation::Equal);
    }

    fn det3(gl: &Gl, m: &Mat) -> Elem {
        let r = gl.ring();
        let e = |i: usize, j: usize| m.get(i, j);
        let minor = |i: usize, j: usize, k: usize, l: usize| r.sub(r.mul(e(i, j), e(k, l)), r.mul(e(i, l), e(k, j)));
        let a = r.mul(e(0, 0), minor(1, 1, 2, 2));
        let b = r.mul(e(0, 1), minor(1, 0, 2, 2));
        let c = r.mul(e(0, 2), minor(1, 0, 2, 1));
        r.add(r.sub(a, b), c)
    }

    #[test]
    fn relative_level_two_over_z4_is_the_special_congruence_group() {
        let r = z(4);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let c = close(&fam(&gl, Family::Relative(ideal(&r, 2))), B);
        let brute = congruence_enumerate(&gl, &ideal(&r, 2)).unwrap();
        assert_eq!(brute.len(), 512);
        let special: Vec<&GlElem> = brute.iter().filter(|g| det3(&gl, g.mat()) == r.one()).collect();
        assert_eq!(special.len(), 256);
        assert_eq!(c.order(), 256);
        assert!(special.iter().all(|g| c.member(g.mat()) == Membership::In));
    }

    #[test]
    fn membership_outside_level() {
        let r = z(8);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let c = close(&fam(&gl, Family::Unrelative(ideal(&r, 4))), B);
        let t = gl.transvection(1, 2, r.from_int(2)).unwrap();
        assert_eq!(c.member(t.mat()), Membership::Out);
        let full = close(&fam(&gl, Family::Unrelative(ideal(&r, 1))), B);
        let tiny = close(&fam(&gl, Family::Unrelative(ideal(&r, 1))), 10);
        assert!(!tiny.is_complete());
        let missing = full.elements().find(|g| !tiny.elements().any(|h| h == *g)).unwrap();
        assert_eq!(tiny.member(missing), Membership::Unknown);
        assert!(index(&tiny, &tiny).is_err());
    }

    #[test]
    fn normal_closure_matches_relative_generators() {
        let r = z(8);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let four = ideal(&r, 4);
        let n = normal_closure(
            &fam(&gl, Family::Unrelative(four.clone())),
            &fam(&gl, Family::Unrelative(ideal(&r, 1))),
            B,
        )
        .unwrap();
        let z = close(&fam(&gl, Family::Relative(four)), B);
        assert_eq!(compare(&n, &z), Relation::Equal);
        assert_eq!(n.order(), z.order());
    }

    #[test]
    fn comaximal_commutator_over_z12() {
        let r = z(12);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let m = mutual_commutator(
            &fam(&gl, Family::Unrelative(ideal(&r, 2))),
            &fam(&gl, Family::Unrelative(ideal(&r, 3))),
            B,
        )
        .unwrap();
        let rel = close(&fam(&gl, Family::Relative(ideal(&r, 6))), B);
        assert_eq!(compare(&m, &rel), Relation::Equal);
        let six = ideal(&r, 6);
        assert!(m.elements().all(|g| congruence_test(&gl, &six, g)));
    }

    #[test]
    fn commutator_of_level_four_over_z8_is_trivial() {
        let r = z(8);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let e4 = fam(&gl, Family::Unrelative(ideal(&r, 4)));
        assert_eq!(mutual_commutator(&e4, &e4, B).unwrap().order(), 1);
    }

    #[test]
    fn lemma5_direction_over_z32() {
        let r = z(32);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let rel16 = close(&fam(&gl, Family::Relative(ideal(&r, 16))), B);
        let m = mutual_commutator(
            &fam(&gl, Family::Unrelative(ideal(&r, 2))),
            &fam(&gl, Family::Unrelative(ideal(&r, 8))),
            B,
        )
        .unwrap();
        assert!(matches!(compare(&rel16, &m), Relation::LeftInRight | Relation::Equal));
        assert_eq!(m.order() % rel16.order(), 0);
    }

    #[test]
    fn generator_order_does_not_matter() {
        let r = z(4);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let gs = fam(&gl, Family::Unrelative(ideal(&r, 1)));
        let base = close(&gs, B);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..3 {
            let mut v = gs.elems().to_vec();
            v.shuffle(&mut rng);
            let c = close(&GenSet::new("shuffled", &gl, v), B);
            assert_eq!(c.order(), base.order());
            assert!(c.elements().all(|g| base.member(g) == Membership::In));
        }
    }

    #[test]
    fn mutual_commutator_is_symmetric_and_normalised() {
        let r = z(16);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let f = fam(&gl, Family::Unrelative(ideal(&r, 2)));
        let h = fam(&gl, Family::Unrelative(ideal(&r, 4)));
        let fh = mutual_commutator(&f, &h, B).unwrap();
        let hf = mutual_commutator(&h, &f, B).unwrap();
        assert_eq!(fh.order(), hf.order());
        assert_eq!(compare(&fh, &hf), Relation::Equal);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let elems: Vec<&Mat> = fh.elements().collect();
        for _ in 0..100 {
            let g = elems[rng.gen_range(0..elems.len())];
            let t = &f.elems()[rng.gen_range(0..f.len())];
            let c = gl.mul(&gl.mul(t.mat(), g), t.inv());
            assert_eq!(fh.member(&c), Membership::In);
        }
    }

    #[test]
    fn closures_are_closed_under_products() {
        let r = z(8);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let c = close(&fam(&gl, Family::Unrelative(ideal(&r, 2))), B);
        assert!(c.is_complete());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = c.element(rng.gen_range(0..c.order())).unwrap();
            let b = c.element(rng.gen_range(0..c.order())).unwrap();
            assert_eq!(c.member(&gl.mul(a, b)), Membership::In);
        }
    }

    #[test]
    fn engine_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("elemlab-cache-test-{}", std::process::id()));
        let r = z(8);
        let gl = Gl::new(r.clone(), 3).unwrap();
        let gs = fam(&gl, Family::Unrelative(ideal(&r, 2)));
        let cold = Engine::new(Budgets::default()).with_disk_cache(&dir).unwrap();
        let a = cold.close(&gs, B);
        let again = cold.close(&gs, B);
        assert!(Arc::ptr_eq(&a, &again));
        assert_eq!(cold.stats().computed, 1);
        assert_eq!(cold.stats().memory_hits, 1);
        let warm = Engine::new(Budgets::default()).with_disk_cache(&dir).unwrap();
        let b = warm.close(&gs, B);
        assert_eq!(warm.stats().disk_hits, 1);
        assert_eq!(a.order(), b.order());
        assert!(a.elements().zip(b.elements()).all(|(x, y)| x == y));
        assert_eq!(a.gens(), b.gens());
        fs::remove_dir_all(&dir).ok();
    }
}
