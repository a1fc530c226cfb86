//! Support varieties over Koszul DG algebras, complete-intersection
//! detection and proxy-smallness witnesses, all over finite prime fields.

pub mod algebra;
pub mod ci;
pub mod complex;
pub mod dg;
pub mod error;
pub mod ext;
pub mod io;

pub use error::{Error, Result};
