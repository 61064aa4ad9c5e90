//! Exact computational toolkit for the dyadic piecewise-linear group on [0,1],
//! its Koopman action on L²[0,1] in Haar-type and rotated bases, restricted-unitary
//! diagnostics (Hilbert-Schmidt blocks, Fredholm index, matrix logarithms), truncated
//! fermionic Fock/CAR representations with implementer construction, and numerical
//! evaluation of the lifting-obstruction map Ψ(M) ∈ S¹×S¹.
//!
//! The exact layer works over ℤ[√2][1/2]: every matrix entry of the Koopman action
//! in the Hadamard-rotated basis lies in that ring, so unitarity, commutation and
//! Hilbert-Schmidt norms are decided without floating point. A complex f64 layer
//! backs general U(2) rotations.

pub mod dgr;
pub mod error;
pub mod exact;
pub mod fock;
pub mod koopman;
pub mod modes;
pub mod psi;
pub mod reference;
pub mod restricted;
pub mod step;
pub mod thompson;
pub mod tol;

pub use error::CoreError;
pub use exact::{Dyadic, ExactScalar};
pub use modes::{Family, ModeIndex};
pub use step::StepFunction;
pub use thompson::{DplMap, Gen, GroupWord};
