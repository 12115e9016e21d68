//! Numerical thresholds shared by the floating-point modules.

/// Matrix identities (homomorphism, quandle axiom, unitarity).
pub const TOL_REP: f64 = 1e-8;
/// Rank decisions, relative to the largest singular value.
pub const TOL_RANK: f64 = 1e-7;
/// Character comparisons.
pub const TOL_CHAR: f64 = 1e-6;
/// Snapping scalars to roots of unity and comparing character values.
pub const TOL_SNAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rep: f64,
    pub rank: f64,
    pub character: f64,
    pub snap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rep: TOL_REP,
            rank: TOL_RANK,
            character: TOL_CHAR,
            snap: TOL_SNAP,
        }
    }
}
