// SPDX-License-Identifier: Apache-2.0

pub mod error;
pub mod gf;
pub mod linalg;
pub mod multiset;
pub mod parallel;
pub mod privacy;
pub mod protocol;
pub mod rm;
pub mod superset;
pub mod tables;
pub mod cli;

pub use error::{Error, Result};
pub use gf::{Fe, Field};
pub use linalg::Matrix;
pub use multiset::IndexMultiset;
pub use rm::{RmCode, Reconstructor};
