use super::Elem;
use crate::error::{budget, Error, Result};

const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

pub(crate) fn var_names(vars: u32) -> Vec<String> {
    (0..vars as usize)
        .map(|k| NAMES.get(k).map(|s| s.to_string()).unwrap_or_else(|| format!("x{k}")))
        .collect()
}

/// Truncated free (or commutative polynomial) algebra over `Z/modulus`.
///
/// Monomials are words over the variables of length `< degree`, in
/// degree-then-lexicographic order; for the commutative variant only
/// non-decreasing words are kept. An element is its coefficient vector read
/// as a mixed-radix number, least significant digit = constant term.
pub(crate) struct TruncAlg {
    modulus: u32,
    names: Vec<String>,
    monomials: Vec<Vec<u8>>,
    /// `mono_mul[i * len + j]` = index of monomial i*j, or `u16::MAX` if truncated.
    mono_mul: Vec<u16>,
    card: u32,
}

impl TruncAlg {
    pub(crate) fn new(modulus: u64, vars: u32, degree: u32, commutative: bool, limit: usize) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidSpec(format!("modulus {modulus} < 2")));
        }
        if vars < 1 {
            return Err(Error::InvalidSpec("variable count must be >= 1".into()));
        }
        if degree < 1 {
            return Err(Error::InvalidSpec("degree cap must be >= 1".into()));
        }
        let mut monomials: Vec<Vec<u8>> = vec![vec![]];
        let mut layer: Vec<Vec<u8>> = vec![vec![]];
        for _ in 1..degree {
            let mut next = Vec::new();
            for w in &layer {
                for v in 0..vars as u8 {
                    if commutative && w.last().is_some_and(|&l| l > v) {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push(v);
                    next.push(w2);
                }
            }
            if next.len() + monomials.len() > 64 {
                return Err(budget("monomials", (next.len() + monomials.len()) as u64, 64u64));
            }
            monomials.extend(next.iter().cloned());
            layer = next;
        }
        let card = (modulus as u128).checked_pow(monomials.len() as u32).unwrap_or(u128::MAX);
        if card > limit as u128 {
            return Err(budget("ring", card, limit as u64));
        }
        let len = monomials.len();
        let mut mono_mul = vec![u16::MAX; len * len];
        for (i, a) in monomials.iter().enumerate() {
            for (j, b) in monomials.iter().enumerate() {
                if a.len() + b.len() >= degree as usize {
                    continue;
                }
                let mut w = a.clone();
                w.extend_from_slice(b);
                if commutative {
                    w.sort_unstable();
                }
                let k = monomials.iter().position(|m| *m == w).expect("product monomial listed");
                mono_mul[i * len + j] = k as u16;
            }
        }
        Ok(TruncAlg {
            modulus: modulus as u32,
            names: var_names(vars),
            monomials,
            mono_mul,
            card: card as u32,
        })
    }

    pub(crate) fn card(&self) -> u32 {
        self.card
    }

    fn decode(&self, a: Elem) -> Vec<u32> {
        let mut x = a.0;
        let mut out = Vec::with_capacity(self.monomials.len());
        for _ in 0..self.monomials.len() {
            out.push(x % self.modulus);
            x /= self.modulus;
        }
        out
    }

    fn encode(&self, coeffs: &[u32]) -> Elem {
        Elem(coeffs.iter().rev().fold(0, |acc, &c| acc * self.modulus + c))
    }

    pub(crate) fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.modulus as i64) as u32)
    }

    pub(crate) fn monomial_elems(&self) -> Vec<Elem> {
        (0..self.monomials.len())
            .map(|k| Elem(self.modulus.pow(k as u32)))
            .collect()
    }

    pub(crate) fn variable(&self, name: &str) -> Option<Elem> {
        let v = self.names.iter().position(|n| n == name)?;
        let k = self.monomials.iter().position(|m| m.as_slice() == [v as u8])?;
        Some(Elem(self.modulus.pow(k as u32)))
    }

    pub(crate) fn add(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(p, q)| (p + q) % self.modulus).collect();
        self.encode(&s)
    }

    pub(crate) fn neg(&self, a: Elem) -> Elem {
        let s: Vec<u32> = self
            .decode(a)
            .into_iter()
            .map(|c| (self.modulus - c) % self.modulus)
            .collect();
        self.encode(&s)
    }

    pub(crate) fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.decode(a), self.decode(b));
        let len = self.monomials.len();
        let m = self.modulus as u64;
        let mut out = vec![0u64; len];
        for (i, &p) in x.iter().enumerate().filter(|(_, p)| **p != 0) {
            for (j, &q) in y.iter().enumerate().filter(|(_, q)| **q != 0) {
                let k = self.mono_mul[i * len + j];
                if k != u16::MAX {
                    out[k as usize] = (out[k as usize] + p as u64 * q as u64) % m;
                }
            }
        }
        let out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        self.encode(&out)
    }

    pub(crate) fn format(&self, a: Elem) -> String {
        let coeffs = self.decode(a);
        let mut terms = Vec::new();
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let word: Vec<&str> = self.monomials[k].iter().map(|&v| self.names[v as usize].as_str()).collect();
            let word = word.join("*");
            terms.push(match (c, word.is_empty()) {
                (c, true) => c.to_string(),
                (1, false) => word,
                (c, false) => format!("{c}*{word}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}
