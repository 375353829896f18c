//! ℤ₂-homology covers, fiber walls and the walling conditions on relators.

mod cover;
mod functions;
mod lacunary;
mod properness;
mod walls;

pub use cover::{girth_boost, z2_cover, CompositeCover, CoverError, CoveringMap, CoveringViolation, MAX_RANK};
pub use functions::{FunctionError, Monotone};
pub use lacunary::{
    lacunary_check, measured_phi, Bullet, BulletResult, RelatorCertificate, RelatorWalling, WallingCertificate,
    WallingParams,
};
pub use properness::{properness_check, PairMargin, ProperReport};
pub use walls::{fiber_walls, separation_profile, wall_metric, Scope, SeparationProfile, WallError, WallSides, WallSystem};
