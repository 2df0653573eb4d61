//! Local building blocks for GL(2) period computations: exact residue-ring
//! arithmetic and characters, Gauss sums and root numbers, Whittaker/Kirillov
//! values with their zeta integrals, the dual Kirillov model and matrix
//! coefficients of classical vectors, Harish-Chandra spherical functions,
//! SU(2)/SO(2) isotypic calculus, and the exact min-max exponent optimizer.
//!
//! Every closed form ships next to an independent brute-force oracle; the
//! [`verify`] module bundles the cross-checks behind one report.

pub mod amplify;
pub mod dualkirillov;
pub mod gauss;
pub mod laurent;
pub mod localfield;
pub mod quad;
pub mod spherical;
pub mod su2;
pub mod verify;
pub mod whittaker;
