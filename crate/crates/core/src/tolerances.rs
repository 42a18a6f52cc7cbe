//! Numerical tolerances shared by the library, its tests and its docs.

/// Maximum `‖QᵀQ − I‖_F` accepted for a matrix to count as orthonormal.
pub const ORTHONORMALITY: f64 = 1e-10;

/// Relative reconstruction accuracy promised by QR and SVD.
pub const RECONSTRUCTION: f64 = 1e-12;

/// Slack for `sin² + cos² = 1` in angle sets.
pub const ANGLE_IDENTITY: f64 = 1e-12;

/// A diagonal entry of a triangular factor below `RANK_DROP · max|R_ii|`
/// marks the factor as singular.
pub const RANK_DROP: f64 = 1e-13;

/// Default relative-change threshold for stagnation detection.
pub const STAGNATION_REL_CHANGE: f64 = 1e-14;

/// Default window length (steps) for stagnation detection.
pub const STAGNATION_WINDOW: usize = 20;

/// Lower clamp for log-scale plots.
pub const PLOT_FLOOR: f64 = 1e-16;

/// Relative slack when auditing the one-step and p/q inequalities.
pub const INEQUALITY_REL_SLACK: f64 = 1e-9;

/// Multiple of machine epsilon times `‖X_*‖_F` treated as the rounding floor
/// of an error norm. Inequalities between squared errors get
/// `(ROUNDOFF_FACTOR · ε · ‖X_*‖_F)²` of absolute slack on top of the
/// relative slack.
pub const ROUNDOFF_FACTOR: f64 = 100.0;
