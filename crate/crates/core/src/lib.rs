//! Exact elementary subgroups of `GL(n, R)` over finite rings.
//!
//! The crate is layered bottom-up:
//!
//! * [`rings`]: residue rings, truncated free and polynomial algebras,
//!   quotients of quadratic orders, and two-sided ideal arithmetic with
//!   fully materialised element sets.
//! * [`numberfields`]: the Gaussian integers and `Z[(1+√-7)/2]`, prime
//!   splitting, ideal lattices and the relative `SK_1` order formula.
//! * [`matgl`]: matrices, transvections `t_ij(c)`, the conjugates
//!   `z_ij(a,c)`, elementary commutators `y_ij(a,b)`, generator families and
//!   congruence subgroups.
//! * [`group`]: budgeted exhaustive closure of finitely generated matrix
//!   groups, normal closures and mutual commutator subgroups.
//! * [`identities`]: named checkers that evaluate each commutator identity,
//!   congruence or subgroup relation on a concrete instance.
//!
//! ```
//! use elemlab::rings::{Ring, RingSpec};
//! use elemlab::matgl::Gl;
//!
//! let ring = Ring::new(RingSpec::Residue { modulus: 8 }).unwrap();
//! let gl = Gl::new(ring.clone(), 3).unwrap();
//! let t = gl.transvection(1, 2, ring.from_int(3)).unwrap();
//! let u = gl.transvection(1, 2, ring.from_int(5)).unwrap();
//! assert!(gl.is_identity(&gl.mul(t.mat(), u.mat())));
//! ```

pub mod budget;
pub mod error;
pub mod group;
pub mod identities;
pub mod matgl;
pub mod numberfields;
pub mod rings;

pub use budget::Budgets;
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/closures.md")]
    mod closures {}
    #[doc = include_str!("../../../book/src/checks.md")]
    mod checks {}
    #[doc = include_str!("../../../book/src/sk1.md")]
    mod sk1 {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
