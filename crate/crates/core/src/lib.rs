//! Particle-hole formfactors of one-dimensional Luttinger liquids.
//!
//! The crate evaluates the Cauchy-determinant formfactors of chiral vertex
//! operators, checks their sum rules and the correlator they resum to, and
//! tests the prefactor/formfactor scaling relations against the exactly
//! solvable XX chain.
//!
//! | module | contents |
//! |---|---|
//! | [`params`] | `xi`, `u`, zero-mode energies |
//! | [`states`] | particle-hole configurations by level |
//! | [`formfactor`] | `F(p_i, q_i)` and branch weights |
//! | [`series`] | sum rules and correlator reconstruction |
//! | [`boson_oracle`] | brute-force vertex operator in a truncated Fock space |
//! | [`scaling`] | correlator models, scaling relations, prefactor fits |
//! | [`xx_oracle`] | free-fermion and exact-diagonalisation XX chain |
//! | [`pipeline`] | the XX validation steps built from the two above |
//! | [`cli`] | command-line front end and report writers |

pub mod boson_oracle;
pub mod cli;
pub mod error;
pub mod formfactor;
pub mod gamma;
pub mod params;
pub mod pipeline;
pub mod scaling;
pub mod series;
pub mod states;
pub mod xx_oracle;

pub use error::{Error, Result};
pub use formfactor::{FormFactorValue, OperatorKind, VertexWeight};
pub use params::{LuttingerParams, SectorCharge};
pub use states::{ChiralState, ExcitedState};
