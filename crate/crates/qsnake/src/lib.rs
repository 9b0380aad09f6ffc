//! Exact combinatorics of q-deformed rationals.
//!
//! A positive rational `x` is carried through a chain of equivalent encodings:
//! its even continued fraction `a`, the binary word `W(a)`, the q-rational
//! `[x]_q`, admissible digit sequences for `a`, order ideals of the fence
//! poset `F(W(a))`, and perfect matchings of the snake graph `G(θ(W(a)))`.
//! The three enumerative statistics (digit sum, ideal size, matching area)
//! all reproduce the numerator and denominator of `[x]_q`.

pub mod cf;
pub mod error;
pub mod fence;
pub mod markoff;
pub mod numeration;
pub mod polytope;
pub mod qpoly;
pub mod render;
pub mod snake;
pub mod verify;
pub mod words;

pub use cf::{cf_even, cf_odd, word_of, CfExpansion, Rational};
pub use error::Error;
pub use qpoly::{q_rational, LaurentPoly, QMat2, QRational};
pub use words::BinaryWord;
