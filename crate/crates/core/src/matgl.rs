//! Matrices over finite rings and the generator families of elementary
//! subgroups.
//!
//! Index arguments of [`Gl::transvection`], [`Gl::stv`] and
//! [`Gl::elem_comm`] are 1-based, as in the usual `t_ij(c)` notation.
//! [`Mat::get`] is 0-based.

use std::fmt;

use rustc_hash::FxHashSet;

use crate::error::{budget, Error, Result};
use crate::rings::{Elem, Ideal, Projection, Ring};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 6;

/// An `n × n` matrix, row-major. Equality and hashing are on entries only;
/// the ring lives in the owning [`Gl`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: u8,
    entries: Box<[Elem]>,
}

impl Mat {
    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn get(&self, row: usize, col: usize) -> Elem {
        self.entries[row * self.n as usize + col]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    /// Canonical byte encoding: the degree, then each entry index as
    /// little-endian `u32`.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + 4 * self.entries.len());
        out.push(self.n);
        for e in self.entries.iter() {
            out.extend_from_slice(&e.index().to_le_bytes());
        }
        out
    }

    pub(crate) fn from_raw(n: usize, entries: Vec<Elem>) -> Mat {
        debug_assert_eq!(entries.len(), n * n);
        Mat { n: n as u8, entries: entries.into_boxed_slice() }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{:?}", self.entries.iter().map(|e| e.index()).collect::<Vec<_>>())
    }
}

/// A matrix together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlElem {
    mat: Mat,
    inv: Mat,
}

impl GlElem {
    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn inv(&self) -> &Mat {
        &self.inv
    }

    pub fn inverse(&self) -> GlElem {
        GlElem { mat: self.inv.clone(), inv: self.mat.clone() }
    }

    pub fn into_parts(self) -> (Mat, Mat) {
        (self.mat, self.inv)
    }

    pub(crate) fn from_parts(mat: Mat, inv: Mat) -> GlElem {
        GlElem { mat, inv }
    }
}

/// `GL(n, R)` for a fixed ring and degree.
#[derive(Clone, Debug)]
pub struct Gl {
    ring: Ring,
    n: usize,
}

impl Gl {
    pub fn new(ring: Ring, n: usize) -> Result<Gl> {
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(Error::InvalidSpec(format!("degree {n} outside 1..={MAX_DEGREE}")));
        }
        Ok(Gl { ring, n })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// True for the same ring and degree.
    pub fn same(&self, other: &Gl) -> bool {
        self.n == other.n && self.ring.same(&other.ring)
    }

    pub fn identity(&self) -> Mat {
        let r = &self.ring;
        let n = self.n;
        Mat::from_raw(n, (0..n * n).map(|k| if k % (n + 1) == 0 { r.one() } else { r.zero() }).collect())
    }

    pub fn identity_elem(&self) -> GlElem {
        GlElem { mat: self.identity(), inv: self.identity() }
    }

    /// Builds a matrix from rows of elements.
    pub fn from_rows(&self, rows: &[Vec<Elem>]) -> Result<Mat> {
        if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::InvalidSpec(format!("expected {0}×{0} rows", self.n)));
        }
        Ok(Mat::from_raw(self.n, rows.concat()))
    }

    /// Parses rows of element expressions, e.g. `[["1","2"],["0","1"]]`.
    pub fn parse_rows(&self, rows: &[Vec<String>]) -> Result<Mat> {
        let parsed: Result<Vec<Vec<Elem>>> = rows
            .iter()
            .map(|r| r.iter().map(|s| self.ring.parse(s)).collect())
            .collect();
        self.from_rows(&parsed?)
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        let r = &self.ring;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let row = &a.entries[i * n..(i + 1) * n];
            for j in 0..n {
                let mut acc = r.zero();
                for (k, &x) in row.iter().enumerate() {
                    if x.index() != 0 {
                        let y = b.entries[k * n + j];
                        if y.index() != 0 {
                            acc = r.add(acc, r.mul(x, y));
                        }
                    }
                }
                out.push(acc);
            }
        }
        Mat::from_raw(n, out)
    }

    pub fn mul_elem(&self, a: &GlElem, b: &GlElem) -> GlElem {
        GlElem { mat: self.mul(&a.mat, &b.mat), inv: self.mul(&b.inv, &a.inv) }
    }

    /// Product of a sequence, left to right.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a GlElem>) -> GlElem {
        factors
            .into_iter()
            .fold(self.identity_elem(), |acc, f| self.mul_elem(&acc, f))
    }

    pub fn is_identity(&self, a: &Mat) -> bool {
        let n = self.n;
        let one = self.ring.one();
        a.entries
            .iter()
            .enumerate()
            .all(|(k, &e)| if k % (n + 1) == 0 { e == one } else { e.index() == 0 })
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i == j || i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::Index { i, j, n: self.n });
        }
        Ok(())
    }

    fn raw_transvection(&self, i: usize, j: usize, c: Elem) -> Mat {
        let mut m = self.identity();
        m.entries[(i - 1) * self.n + (j - 1)] = c;
        m
    }

    /// `t_ij(c) = e + c·e_ij`.
    pub fn transvection(&self, i: usize, j: usize, c: Elem) -> Result<GlElem> {
        self.check_pair(i, j)?;
        Ok(GlElem {
            mat: self.raw_transvection(i, j, c),
            inv: self.raw_transvection(i, j, self.ring.neg(c)),
        })
    }

    /// `z_ij(a,c) = t_ji(c)·t_ij(a)·t_ji(-c)`.
    pub fn stv(&self, i: usize, j: usize, a: Elem, c: Elem) -> Result<GlElem> {
        let t = self.transvection(j, i, c)?;
        let u = self.transvection(i, j, a)?;
        Ok(self.conj(&t, &u))
    }

    /// `y_ij(a,b) = [t_ij(a), t_ji(b)]`.
    pub fn elem_comm(&self, i: usize, j: usize, a: Elem, b: Elem) -> Result<GlElem> {
        let x = self.transvection(i, j, a)?;
        let y = self.transvection(j, i, b)?;
        Ok(self.commutator(&x, &y))
    }

    /// `[x,y] = x·y·x⁻¹·y⁻¹`.
    pub fn commutator(&self, x: &GlElem, y: &GlElem) -> GlElem {
        let xy = self.mul(&x.mat, &y.mat);
        let yx = self.mul(&y.mat, &x.mat);
        let xiyi = self.mul(&x.inv, &y.inv);
        let yixi = self.mul(&y.inv, &x.inv);
        GlElem { mat: self.mul(&xy, &xiyi), inv: self.mul(&yx, &yixi) }
    }

    /// Left conjugate `ˣg = x·g·x⁻¹`.
    pub fn conj(&self, x: &GlElem, g: &GlElem) -> GlElem {
        GlElem {
            mat: self.mul(&self.mul(&x.mat, &g.mat), &x.inv),
            inv: self.mul(&self.mul(&x.mat, &g.inv), &x.inv),
        }
    }

    /// Right conjugate `gˣ = x⁻¹·g·x`.
    pub fn conj_right(&self, g: &GlElem, x: &GlElem) -> GlElem {
        self.conj(&x.inverse(), g)
    }

    /// Certifies invertibility of `m` by powering until the identity
    /// recurs; returns `None` for singular matrices.
    pub fn try_invert(&self, m: &Mat) -> Option<GlElem> {
        let mut seen = FxHashSet::default();
        let mut prev = self.identity();
        let mut cur = m.clone();
        loop {
            if self.is_identity(&cur) {
                return Some(GlElem { mat: m.clone(), inv: prev });
            }
            if !seen.insert(cur.clone()) {
                return None;
            }
            prev = cur;
            cur = self.mul(&prev, m);
        }
    }

    /// Deterministic text form, e.g. `M3[Z/8](1 0 2; 0 1 0; 0 0 1)`.
    pub fn format(&self, m: &Mat) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.ring.format(m.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("M{}[{}]({})", self.n, self.ring.spec().tag(), rows.join("; "))
    }

    /// All ordered pairs `(i, j)`, `i ≠ j`, 1-based.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (1..=n)
            .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect()
    }
}

/// True iff `g ≡ e` modulo `level`, i.e. `g ∈ GL(n, R, A)`.
pub fn congruence_test(gl: &Gl, level: &Ideal, g: &Mat) -> bool {
    let n = gl.degree();
    let r = gl.ring();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let e = g.get(i, j);
            let d = if i == j { r.sub(e, r.one()) } else { e };
            level.contains(d)
        })
    })
}

/// Enumerates `GL(n, R, A)` as all invertible `e + M`, `M ∈ M(n, A)`.
pub fn congruence_enumerate(gl: &Gl, level: &Ideal) -> Result<Vec<GlElem>> {
    let n = gl.degree();
    let r = gl.ring();
    let cells = n * n;
    let base = level.len() as u128;
    let count = base.checked_pow(cells as u32).unwrap_or(u128::MAX);
    let limit = r.budgets().enumerate;
    if count > limit as u128 {
        return Err(budget("congruence enumeration", count, limit as u64));
    }
    let elems = level.elements();
    let mut digits = vec![0usize; cells];
    let mut out = Vec::new();
    loop {
        let entries: Vec<Elem> = (0..cells)
            .map(|k| {
                let e = elems[digits[k]];
                if k % (n + 1) == 0 {
                    r.add(r.one(), e)
                } else {
                    e
                }
            })
            .collect();
        if let Some(g) = gl.try_invert(&Mat::from_raw(n, entries)) {
            out.push(g);
        }
        // odometer, last cell fastest
        let mut k = cells;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < elems.len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Entry-wise image of `g` under `R → R/I`.
pub fn reduce_mat(g: &Mat, proj: &Projection) -> Mat {
    Mat::from_raw(g.degree(), g.entries().iter().map(|&e| proj.apply(e)).collect())
}

/// `g ↦ diag(g, e)` from degree `m` into `target`'s degree.
pub fn embed_stable(target: &Gl, g: &GlElem) -> Result<GlElem> {
    let m = g.mat.degree();
    let n = target.degree();
    if m > n {
        return Err(Error::InvalidSpec(format!("cannot embed degree {m} into {n}")));
    }
    let embed = |x: &Mat| {
        let mut out = target.identity();
        for i in 0..m {
            for j in 0..m {
                out.entries[i * n + j] = x.get(i, j);
            }
        }
        out
    };
    Ok(GlElem { mat: embed(&g.mat), inv: embed(&g.inv) })
}

/// True iff `g` lies in `U_m(A)` (upper) or `U_m^-(A)` (lower): identity
/// diagonal blocks, zero opposite block, the remaining block over `A`.
pub fn in_unipotent(gl: &Gl, m: usize, lower: bool, level: &Ideal, g: &Mat) -> bool {
    let n = gl.degree();
    let r = gl.ring();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let e = g.get(i, j);
            let top_i = i < m;
            let top_j = j < m;
            if top_i == top_j {
                e == if i == j { r.one() } else { r.zero() }
            } else if (top_i && !top_j) != lower {
                level.contains(e)
            } else {
                e.index() == 0
            }
        })
    })
}

/// Every element of `U_m(A)` or `U_m^-(A)`.
pub fn unipotent_elements(gl: &Gl, m: usize, lower: bool, level: &Ideal) -> Result<Vec<GlElem>> {
    let cells = unipotent_cells(gl.degree(), m, lower)?;
    let count = (level.len() as u128).checked_pow(cells.len() as u32).unwrap_or(u128::MAX);
    let limit = gl.ring().budgets().generators;
    if count > limit as u128 {
        return Err(budget("unipotent elements", count, limit as u64));
    }
    let mut out = vec![gl.identity_elem()];
    // The block is abelian: U = ∏ t_ij(a) over its cells.
    for &(i, j) in &cells {
        let mut next = Vec::with_capacity(out.len() * level.len());
        for u in &out {
            for &a in level.elements() {
                next.push(gl.mul_elem(u, &gl.transvection(i, j, a)?));
            }
        }
        out = next;
    }
    Ok(out)
}

fn unipotent_cells(n: usize, m: usize, lower: bool) -> Result<Vec<(usize, usize)>> {
    if m == 0 || m >= n {
        return Err(Error::InvalidSpec(format!("parabolic index m={m} outside 1..{n}")));
    }
    let mut cells = Vec::new();
    for i in 1..=m {
        for j in m + 1..=n {
            cells.push(if lower { (j, i) } else { (i, j) });
        }
    }
    Ok(cells)
}

/// How ideal-valued parameters of a family are ranged over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamRange {
    /// Every element of the ideal.
    #[default]
    All,
    /// Additive generators only, where the family is additive in that
    /// parameter.
    Additive,
}

/// Generator families of the subgroups under study.
#[derive(Clone, Debug)]
pub enum Family {
    /// `E(n,A)`: `t_ij(a)`.
    Unrelative(Ideal),
    /// `E(n,R,A)`: `z_ij(a,c)`, `c ∈ R`.
    Relative(Ideal),
    /// `E(n,B,A)` by `z_ij(a,b)`, `a ∈ A`, `b ∈ B`.
    Partial { level: Ideal, conj: Ideal },
    /// `[E(n,R,A),E(n,R,B)]`: `z_ij(ab,c)`, `z_ij(ba,c)` and `y_12(a,b)`.
    MixedComm(Ideal, Ideal),
    /// `U_m(A)` or `U_m^-(A)` via their transvections.
    Unipotent { m: usize, lower: bool, level: Ideal },
    /// `U_m^-(A)` together with `u·v·u⁻¹`, `v ∈ U_m(A)`, `u ∈ U_m^-`.
    Parabolic { m: usize, level: Ideal },
    /// `E(n,A)` together with `z_in(a,d)`, `i < n`.
    LastColumn(Ideal),
}

/// A finite, deduplicated list of non-identity generators.
#[derive(Clone, Debug)]
pub struct GenSet {
    name: String,
    gl: Gl,
    elems: Vec<GlElem>,
}

impl GenSet {
    pub fn new(name: impl Into<String>, gl: &Gl, elems: impl IntoIterator<Item = GlElem>) -> GenSet {
        let mut seen = FxHashSet::default();
        let elems = elems
            .into_iter()
            .filter(|g| !gl.is_identity(&g.mat) && seen.insert(g.mat.clone()))
            .collect();
        GenSet { name: name.into(), gl: gl.clone(), elems }
    }

    pub fn empty(name: impl Into<String>, gl: &Gl) -> GenSet {
        GenSet { name: name.into(), gl: gl.clone(), elems: Vec::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gl(&self) -> &Gl {
        &self.gl
    }

    pub fn elems(&self) -> &[GlElem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn union(&self, other: &GenSet, name: impl Into<String>) -> GenSet {
        GenSet::new(name, &self.gl, self.elems.iter().chain(&other.elems).cloned())
    }

    pub fn renamed(mut self, name: impl Into<String>) -> GenSet {
        self.name = name.into();
        self
    }
}

fn ideal_params(i: &Ideal, range: ParamRange) -> Vec<Elem> {
    match range {
        ParamRange::All => i.nonzero_elements().collect(),
        ParamRange::Additive => i.additive_basis().to_vec(),
    }
}

fn check_count(gl: &Gl, count: usize) -> Result<()> {
    let limit = gl.ring().budgets().generators;
    if count > limit {
        Err(budget("generators", count as u64, limit as u64))
    } else {
        Ok(())
    }
}

fn label(i: &Ideal) -> String {
    i.to_string()
}

/// Builds the generator list of `family` in `gl`.
pub fn gens_family(gl: &Gl, family: &Family, range: ParamRange) -> Result<GenSet> {
    let n = gl.degree();
    let r = gl.ring();
    let pos = gl.positions();
    let all_r: Vec<Elem> = r.elements().collect();
    let need3 = |what: &str| -> Result<()> {
        if n < 3 {
            Err(Error::HypothesisViolated(format!("{what} needs n >= 3, got {n}")))
        } else {
            Ok(())
        }
    };
    Ok(match family {
        Family::Unrelative(a) => {
            let ps = ideal_params(a, range);
            check_count(gl, pos.len() * ps.len())?;
            let mut v = Vec::new();
            for &(i, j) in &pos {
                for &x in &ps {
                    v.push(gl.transvection(i, j, x)?);
                }
            }
            GenSet::new(format!("E({n},{})", label(a)), gl, v)
        }
        Family::Relative(a) => {
            need3("E(n,R,A)")?;
            let ps = ideal_params(a, range);
            check_count(gl, pos.len() * ps.len() * all_r.len())?;
            let mut v = Vec::new();
            for &(i, j) in &pos {
                for &x in &ps {
                    for &c in &all_r {
                        v.push(gl.stv(i, j, x, c)?);
                    }
                }
            }
            GenSet::new(format!("E({n},R,{}) via z", label(a)), gl, v)
        }
        Family::Partial { level, conj } => {
            need3("E(n,B,A)")?;
            let ps = ideal_params(level, range);
            let cs: Vec<Elem> = conj.elements().to_vec();
            check_count(gl, pos.len() * ps.len() * cs.len())?;
            let mut v = Vec::new();
            for &(i, j) in &pos {
                for &x in &ps {
                    for &c in &cs {
                        v.push(gl.stv(i, j, x, c)?);
                    }
                }
            }
            GenSet::new(format!("E({n},{},{}) via z", label(conj), label(level)), gl, v)
        }
        Family::MixedComm(a, b) => {
            need3("mixed commutator generators")?;
            let mut prods: Vec<Elem> = match range {
                ParamRange::All => {
                    let mut p = Vec::new();
                    for &x in a.elements() {
                        for &y in b.elements() {
                            p.push(r.mul(x, y));
                            p.push(r.mul(y, x));
                        }
                    }
                    p
                }
                // z is additive in its first argument, so A∘B's additive
                // generators give the same group.
                ParamRange::Additive => a.symmetrised(b)?.additive_basis().to_vec(),
            };
            prods.sort_unstable();
            prods.dedup();
            prods.retain(|e| e.index() != 0);
            let ya: Vec<Elem> = a.nonzero_elements().collect();
            let yb: Vec<Elem> = b.nonzero_elements().collect();
            check_count(gl, pos.len() * prods.len() * all_r.len() + ya.len() * yb.len())?;
            let mut v = Vec::new();
            for &(i, j) in &pos {
                for &x in &prods {
                    for &c in &all_r {
                        v.push(gl.stv(i, j, x, c)?);
                    }
                }
            }
            for &x in &ya {
                for &y in &yb {
                    v.push(gl.elem_comm(1, 2, x, y)?);
                }
            }
            GenSet::new(format!("[E({n},R,{}),E({n},R,{})] via z,y", label(a), label(b)), gl, v)
        }
        Family::Unipotent { m, lower, level } => {
            let cells = unipotent_cells(n, *m, *lower)?;
            let ps = ideal_params(level, range);
            check_count(gl, cells.len() * ps.len())?;
            let mut v = Vec::new();
            for &(i, j) in &cells {
                for &x in &ps {
                    v.push(gl.transvection(i, j, x)?);
                }
            }
            let sign = if *lower { "^-" } else { "" };
            GenSet::new(format!("U_{m}{sign}({})", label(level)), gl, v)
        }
        Family::Parabolic { m, level } => {
            need3("parabolic generators")?;
            let unit = Ideal::unit(r)?;
            let lower_a = unipotent_elements(gl, *m, true, level)?;
            let upper_a = unipotent_elements(gl, *m, false, level)?;
            let lower_r = unipotent_elements(gl, *m, true, &unit)?;
            check_count(gl, lower_a.len() + upper_a.len() * lower_r.len())?;
            let mut v = lower_a;
            for u in &lower_r {
                for w in &upper_a {
                    v.push(gl.conj(u, w));
                }
            }
            GenSet::new(format!("U_{m}^-({0}) and uvu^-1, v in U_{m}({0})", label(level)), gl, v)
        }
        Family::LastColumn(a) => {
            need3("E(n,A) with z_in")?;
            let ps = ideal_params(a, range);
            check_count(gl, pos.len() * ps.len() + (n - 1) * ps.len() * all_r.len())?;
            let mut v = Vec::new();
            for &(i, j) in &pos {
                for &x in &ps {
                    v.push(gl.transvection(i, j, x)?);
                }
            }
            for i in 1..n {
                for &x in &ps {
                    for &d in &all_r {
                        v.push(gl.stv(i, n, x, d)?);
                    }
                }
            }
            GenSet::new(format!("E({n},{0}) and z_in({0},R)", label(a)), gl, v)
        }
    })
}
