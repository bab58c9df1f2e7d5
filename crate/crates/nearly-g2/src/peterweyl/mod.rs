mod block;
mod bundles;
mod cache;
mod hom;
mod identities;
mod irrep;
mod lie;
mod op;
mod operators;
mod spectral;
mod weights;

pub use block::*;
pub use bundles::*;
pub use cache::*;
pub use hom::*;
pub use identities::*;
pub use irrep::*;
pub use lie::*;
pub use op::*;
pub use operators::*;
pub use spectral::*;
pub use weights::*;
