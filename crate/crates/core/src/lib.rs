//! Exact stability computations for sheaves on root stacks and gerbes over
//! smooth projective curves.
//!
//! Everything is computed with exact rationals: modified Hilbert polynomials
//! relative to a generating sheaf, Gieseker (semi)stability,
//! Harder–Narasimhan and Jordan–Hölder filtrations over finite subobject
//! lattices, eigensheaf splittings on gerbes, and the numerical bounds and
//! weights that enter the GIT construction of moduli.
//!
//! ```
//! use stackstab::{modified_hilbert, DecomposableSheaf, GeneratingSheaf, OrbiLineBundle, QPoly, StackyCurve};
//!
//! let curve = StackyCurve::projective_line(vec![2]);
//! let e = GeneratingSheaf::balanced(&curve);
//! let o = DecomposableSheaf::from_lines(vec![OrbiLineBundle::structure_sheaf(&curve)]);
//! assert_eq!(modified_hilbert(&o, &e, &curve)?, QPoly::from_ints(&[1, 2]));
//! # Ok::<(), stackstab::Error>(())
//! ```

pub mod error;
pub mod exactnum;
pub mod filtration;
pub mod gerbe;
pub mod gitbounds;
pub mod reptheory;
pub mod rootcurve;

pub use error::{Error, Result};
pub use exactnum::{gen_binomial, int_binomial, QPoly, Rational};
pub use filtration::{build_lattice, s_equivalent, Filtration, GradedPiece, JordanHolder, SubobjectLattice};
pub use gerbe::{GerbeSheaf, SplitEntry};
pub use reptheory::{CharacterRep, PointObject, PointTable, TwistList};
pub use rootcurve::{
    modified_hilbert, DecomposableSheaf, GeneratingSheaf, OrbiLineBundle, PointLocation, Stability, StackyCurve,
    Summand, TorsionSummand,
};

// Guide chapters, compiled as doctests so their snippets stay current.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/point-tables.md")]
    mod point_tables {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/parabolic.md")]
    mod parabolic {}
    #[doc = include_str!("../../../book/src/gerbes.md")]
    mod gerbes {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
