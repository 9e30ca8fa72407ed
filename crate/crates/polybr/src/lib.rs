//! Lambda-polycyclic Bruck-Reilly extensions of finite monoids.
//!
//! Given a finite monoid with a homomorphism into its own unit group and
//! a finite alphabet, the extension multiplies pairs of a monoid element
//! and a reduced polycyclic fraction `u^{-1}·v`, with one absorbing zero.
//! The crate provides:
//!
//! - the free-monoid word machinery ([`word`]);
//! - the polycyclic monoid in normal form with division solvers
//!   ([`polycyclic`]);
//! - Cayley-table monoids with Green's relations and validated
//!   homomorphisms ([`monoid`]);
//! - the extension product and one decision procedure per structural
//!   characterization ([`brx`]);
//! - brute-force verification suites with structured reports
//!   ([`verify`]);
//! - text forms for words, elements, and product expressions
//!   ([`grammar`]).

pub mod brx;
pub mod grammar;
pub mod monoid;
pub mod polycyclic;
pub mod verify;
pub mod word;

pub use brx::{BrxContext, BrxElem, BrxError, Fragment, SliceMetric};
pub use monoid::{FiniteMonoid, GreenRel, MonoidError, Theta};
pub use polycyclic::{PElem, PPair};
pub use word::{Alphabet, Word};
