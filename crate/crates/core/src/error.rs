use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree {degree} exceeds the supported ceiling of {limit}")]
    DegreeLimit { degree: usize, limit: usize },

    #[error("parameter `{name}` = {value} is singular: {reason}")]
    SingularParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("parameter `{name}` = {value} violates bound: {bound}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        bound: String,
    },

    #[error("requested tail tolerance {requested:e} unreachable within cutoff {cutoff} (achieved {achieved:e})")]
    Truncation {
        requested: f64,
        achieved: f64,
        cutoff: usize,
    },

    #[error("method `{method}` is not available for state `{state}`: {reason}")]
    Capability {
        method: &'static str,
        state: &'static str,
        reason: &'static str,
    },

    #[error("integral diverges for xi = {xi}: requires {bound}")]
    Divergence { xi: f64, bound: String },

    #[error("nbar = 0 has no Laguerre form; use the coherent-state closed form")]
    UseCoherentForm,

    #[error("pole at nbar*xi = -1 (nbar = {nbar}, xi = {xi})")]
    Pole { nbar: f64, xi: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, bound: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            value,
            bound: bound.into(),
        }
    }
}
