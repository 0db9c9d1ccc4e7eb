//! Exact calculus of rational tangles.
//!
//! Tangle expressions ([`TangleExpr`]) are evaluated to fractions on the
//! projective line ([`Fraction`]), reduced to standard and canonical
//! continued fraction forms, colored by integers, and reached by the
//! two-move square dance.

pub mod arith;
pub mod cf;
pub mod coloring;
pub mod dance;
pub mod error;
pub mod tangle;
pub mod textio;

pub use arith::Fraction;
pub use cf::{CFMatrix, CFVector};
pub use coloring::{ColorMatrix, ColoredTangle, HararyInstance, Twist};
pub use dance::{DanceState, Move, MoveWord, SL2Matrix};
pub use error::{Error, Result, SourceSpan, SyntaxError};
pub use tangle::{CanonicalTangle, StandardFormTangle, TangleExpr, VectorTransform};
pub use textio::{parse_fraction, parse_tangle, parse_tangle_arg, print_tangle};
