//! Exact computation of average element orders, maximum orders, and order
//! distributions of wreath products of finite groups.
//!
//! The crate is organized around small, independently testable pieces:
//!
//! - [`numtheory`] — factorization, divisors, Möbius μ, and τ(n) = ∏(1−p);
//! - [`exact`] — arbitrary-precision rationals, budgeted powers, decimal
//!   rendering;
//! - [`groups`] — Cayley-table groups, a constructor catalog, and wreath
//!   products;
//! - [`spectra`] — order spectra d_n, torsion counts s_m, averages, and the
//!   p-group cumulative distribution r_{A,k};
//! - [`formulas`] — the closed forms and recursions for a(A≀B), r_{A≀B,k},
//!   ψ(A,B), towers, and limit sequences;
//! - [`oracle`] — brute-force and orbit-structure enumeration used to
//!   cross-validate every formula.
//!
//! All results are exact `BigRational`s; nothing is ever rounded unless the
//! caller asks for a decimal rendering or the explicitly unguaranteed float
//! tower mode.

pub mod error;
pub mod exact;
pub mod formulas;
pub mod groups;
pub mod numtheory;
pub mod oracle;
pub mod spectra;

pub use error::{Error, Result};
pub use exact::BitBudget;
pub use groups::{FiniteGroup, WreathElement};
pub use num::bigint::{BigInt, BigUint};
pub use num::rational::BigRational;
pub use spectra::{CumulativeOrderDistribution, OrderSpectrum};
