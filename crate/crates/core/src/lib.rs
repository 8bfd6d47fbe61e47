pub mod canonical;
pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod fuzz;
pub mod io;
pub mod linalg;
pub mod moebius;
pub mod pencil;
pub mod state;

pub use error::{Error, Result};
