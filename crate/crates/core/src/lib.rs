//! Twisted Alexander polynomials of finitely presented groups.
//!
//! The pipeline: parse a [`Presentation`], pick an [`AbelianizationMap`] onto
//! `Z = <t>` and a linear [`Representation`], take Fox derivatives of the
//! relators, map them into matrices of Laurent polynomials and divide the gcd
//! of the maximal minors by `det Phi(x_j - 1)`.
//!
//! On top of that, [`rep_search`] enumerates every representation of a group
//! into `SL(2, F_p)` and [`obstruction`] uses the divisibility of twisted
//! polynomials under surjections to rule out epimorphisms between knot groups.

pub mod error;
pub mod formats;
pub mod group_ring;
pub mod knots;
pub mod laurent;
pub mod matrix;
pub mod obstruction;
pub mod polymatrix;
pub mod presentation;
pub mod rep_search;
pub mod ring;
pub mod twisted;

pub use error::{Error, Result};
pub use group_ring::{fox_derivative, GroupRingElem};
pub use laurent::LaurentPoly;
pub use matrix::Matrix;
pub use polymatrix::PolyMatrix;
pub use presentation::{AbelianizationMap, Letter, Presentation, PresentationFile, Word};
pub use ring::{CoeffRing, Integers, PrimeField, Rationals, Ring};
pub use twisted::{Representation, TwistedAlexPoly};
