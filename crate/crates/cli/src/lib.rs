//! Command-line front end for the `helion` solver.
//!
//! Exit codes: `0` success, `2` bad configuration, `3` solver failure,
//! `4` entropy pipeline failure.

pub mod artifact;
pub mod commands;
pub mod config;

use std::fmt;

/// An error tagged with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn config(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: 2,
            error: error.into(),
        }
    }

    pub fn solver(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: 3,
            error: error.into(),
        }
    }

    pub fn pipeline(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: 4,
            error: error.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

pub type Outcome<T> = Result<T, Failure>;
