//! Exact computations in the symplectic reflection algebra
//! H_{1,ν}(I_2(n)) for odd n: normal forms, κ-traces, generating
//! functions of their moments and the kernels of the degenerate forms.

pub mod algebra;
pub mod cli;
pub mod dihedral;
pub mod error;
pub mod exactnum;
pub mod genfun;
pub mod ideal;
pub mod linalg;
pub mod trace;

pub use error::{Error, Result};
