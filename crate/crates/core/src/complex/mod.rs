//! Free complexes over graded rings and the standard constructions on them.

pub mod cone;
pub mod free;
pub mod homology;
pub mod koszul;
pub mod minimize;

pub use cone::{mapping_cone, ChainMap};
pub use free::FreeComplex;
pub use homology::{complex_homology, complex_support, homology_presentation, minimize_presentation, SupportSet};
pub use koszul::{koszul_complex, tensor_koszul};
pub use minimize::minimize_complex;
