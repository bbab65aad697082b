use thiserror::Error;

use crate::roots::RootSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("capacity exceeded: {what} is {got}, limit {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("family spec out of domain: {0}")]
    SpecDomain(String),

    #[error("invalid k-tree script: {0}")]
    InvalidScript(String),

    #[error("degree of the zero polynomial is undefined")]
    UndefinedDegree,

    #[error("method {method} does not apply to {subject}")]
    MethodNotApplicable { method: String, subject: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("root finder did not converge after {iterations} iterations")]
    Convergence {
        iterations: usize,
        partial: Box<RootSet>,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
