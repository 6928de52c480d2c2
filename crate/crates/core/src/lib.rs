//! Semidefinite upper bounds on the size of q-ary codes, built from the
//! symmetry-reduced quadruple SDP.
//!
//! The pipeline is: the `S_q` representative basis ([`basis`]) and tableau
//! combinatorics ([`young`]) feed the exact polynomial engine ([`poly`]);
//! monomials are mapped to orbits of codes ([`orbit`]); the block assembler
//! ([`block`]) turns all of it into an [`block::SdpProblem`], which
//! [`sdpa`] writes out, hands to an external solver and turns into a
//! rounded bound. [`oracle`] rebuilds the unreduced objects at toy sizes.

pub mod basis;
pub mod block;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod orbit;
pub mod pattern;
pub mod poly;
pub mod sdpa;
pub mod young;

pub use error::{Error, Result};
