use thiserror::Error;

/// Errors raised by the library. Every variant maps onto one CLI exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the formula holds.
    #[error("domain error: {0}")]
    Domain(String),

    /// A particle-hole configuration violates the ordering or exclusion rules.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// A configured size cap was exceeded.
    #[error("resource cap exceeded: {what} = {requested} > {cap}")]
    Resource {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    /// Evaluation at a singular point.
    #[error("singularity: {0}")]
    Singular(String),

    /// The requested ground state is not unique.
    #[error("degenerate Fermi shell: {count} minimising momentum sets")]
    Degeneracy {
        count: usize,
        /// Every minimising set, as doubled momentum indices `j` with `k = pi j / L`.
        minimizers: Vec<Vec<i64>>,
    },

    /// Least-squares fit could not be carried out.
    #[error("fit error: {0}")]
    Fit(String),

    /// A scaling relation implied a negative square.
    #[error("inconsistent relation: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
