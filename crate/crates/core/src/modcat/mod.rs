//! Finite-dimensional right modules: the main instance of the category interface.

pub mod bimodule;
pub mod category;
pub mod homological;
pub mod module;
pub mod modules;

pub use bimodule::{Bimodule, HomModule, Tensor};
pub use category::{AbelianCategory, Iso, Verdict};
pub use homological::{ExtSpace, Resolution, ShortExact, UniversalExtension};
pub use module::{DirectSum, ModuleMap, RightModule};
pub use modules::{Cells, InjectiveEnvelope, IsoDecision, ModCat, ProjectiveCover};
