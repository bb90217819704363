//! Finite combinatorial machinery for presented simplicial sets, the pointed
//! finite set calculus, 1-categorical operad models with their monoidal
//! envelopes, the simplicial Grothendieck construction, and the simplex
//! taxonomy / filtration sweeps used to verify pushout and ordering claims by
//! exhaustive enumeration at bounded size.
//!
//! Everything in this crate is exact and deterministic: values are immutable
//! after construction, enumeration order is fixed, and all verification
//! routines report witnesses on failure.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod finstar;
pub mod groth;
pub mod kanext;
pub mod nerve;
pub mod operad;
pub mod report;
pub mod simplicial;

pub use error::{Error, Result};
pub use report::{CheckEntry, Report, Status};

/// Hard ceilings for enumerative constructions.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of nondegenerate generators a single construction may
    /// produce before aborting with [`Error::ResourceCeiling`].
    pub max_generators: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_generators: 500_000,
        }
    }
}

impl Limits {
    pub fn new(max_generators: usize) -> Self {
        Limits { max_generators }
    }

    pub fn charge(&self, used: &mut usize, extra: usize) -> Result<()> {
        *used += extra;
        if *used > self.max_generators {
            return Err(Error::ResourceCeiling {
                need: *used,
                limit: self.max_generators,
            });
        }
        Ok(())
    }
}
