//! The Koszul DG algebra `E`, strict DG `E`-modules and their resolutions.

pub mod algebra;
pub mod module;
pub mod presented;
pub mod resolution;
pub mod u;

pub use algebra::KoszulAlgebra;
pub use module::{dg_module_verify, koszul_action, BasisLabel, DGEModule, DividedPowerIndex, LabelData, VerifyReport};
pub use presented::PresentedComplex;
pub use resolution::{e_free_resolution, EFreeResolution};
pub use u::{c_tilde, u_construction, UModule};
