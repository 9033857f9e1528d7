pub mod amalgam;
pub mod autgrp;
pub mod error;
pub mod fp;
pub mod geometry;
pub mod graphsym;
pub mod group;
pub mod grpid;
pub mod hom;
pub mod io;
pub mod perm;
pub mod report;

pub use error::{Error, Result};
pub use group::{PermGroup, StabChain};
pub use perm::Permutation;
