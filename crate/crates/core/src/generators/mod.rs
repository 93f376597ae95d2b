//! Hard-instance families as reproducible fixtures.

mod appendix;
mod family;
mod kcover;
mod linear;
mod unbounded;

pub use appendix::{gen_appendix_family, gen_appendix_family_with_coins};
pub use family::{Coin, FamilyMeta, GeneratedFamily, NamedMetric};
pub use kcover::{canonicalize, gen_kcover_family, KCoverInput};
pub use linear::{gen_linear_family, linear_blocks};
pub use unbounded::{gen_unbounded_family, gen_unbounded_family_replicated, unbounded_blocks};
