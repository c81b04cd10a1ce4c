//! Two continuous loops in floating point: the Möbius addition on the unit
//! disk, and positive definite Hermitian 2×2 matrices under
//! `A ⊙ B = (AB²A)^{1/2}`. Identities are checked by residuals.
//!
//! Tolerances: `1e-9` for interior disk points (`|z| ≤ 0.99`), `1e-7` on the
//! circle `|z| = 0.999`, `1e-8` for matrix identities and `1e-10` for
//! `τ(M) = (M*)⁻¹`. Closer to the circle, left division by `x ⊕ y` cancels
//! about `1/(1 − |x ⊕ y|²)` digits.

mod disk;
mod polar;

pub use disk::{
    circle_samples, disk_add, disk_gyr, disk_identity_residuals, disk_inner_map,
    disk_left_divide, disk_samples, DiskPoint, DiskResiduals, BOUNDARY_GUARD,
};
pub use polar::{
    pd_sqrt, polar_decompose, polar_identity_residuals, polar_l, polar_op, polar_tau,
    random_matrix, random_pdh2, Mat2, Pdh2, PolarResiduals,
};

pub use num_complex::Complex64;

/// Radius of the interior sampling disk.
pub const INTERIOR_RADIUS: f64 = 0.99;
/// Radius of the near-boundary sampling circle.
pub const BOUNDARY_RADIUS: f64 = 0.999;
pub const DISK_TOLERANCE: f64 = 1e-9;
pub const DISK_BOUNDARY_TOLERANCE: f64 = 1e-7;
pub const POLAR_TOLERANCE: f64 = 1e-8;
pub const TAU_TOLERANCE: f64 = 1e-10;
/// `ε` in the `XX* + εI` samples.
pub const PDH2_SHIFT: f64 = 1e-3;
