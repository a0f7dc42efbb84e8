//! Spectral theory of the inverse-square Hamiltonians on the half-line and of
//! their rank-one toy counterparts: closed-form spectra, renormalization-group
//! flows, Hankel and Mellin transforms, resolvents, Møller operators, and
//! independent numerical oracles that cross-check them.

pub mod cli;
pub mod common;
pub mod homogeneous;
pub mod oracle;
pub mod scattering;
pub mod toy;
pub mod special;
pub mod transforms;
