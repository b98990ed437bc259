//! Optimized helium (`Z = 2`) exponents for `1sns` states.
//!
//! Values come from seeded simplex runs of [`super::optimize_exponents_with`].
//! Excited states were optimized at `ω = 10` in double-double arithmetic,
//! where their overlap matrices are still well conditioned, and are reused at
//! larger `ω`.

use super::SpinSymmetry;

use SpinSymmetry::{Singlet, Triplet};

/// `(spin, n, ω, α, β)`.
const TABLE: &[(SpinSymmetry, usize, u32, f64, f64)] = &[
    (Singlet, 1, 5, 2.0339730814, 2.1556065686),
    (Singlet, 1, 6, 2.3816206404, 2.1825244200),
    (Singlet, 1, 7, 2.6644509833, 2.2023195158),
    (Singlet, 1, 8, 2.6038433244, 2.3707919370),
    (Singlet, 1, 15, 2.9467254901, 3.1691353892),
    (Singlet, 2, 10, 2.3066021565, 1.0300925642),
    (Singlet, 3, 10, 2.0152846779, 0.6541783311),
    (Singlet, 4, 10, 2.3304558649, 0.4075628979),
    (Singlet, 5, 10, 2.2577840078, 0.2953996714),
    (Singlet, 6, 10, 2.1711878168, 0.2235792266),
    (Triplet, 2, 10, 2.2367409209, 1.0081580974),
    (Triplet, 3, 10, 1.9018334848, 0.6377108868),
    (Triplet, 4, 10, 2.0146786953, 0.4575643784),
    (Triplet, 5, 10, 1.8583788030, 0.3265143288),
    (Triplet, 6, 10, 1.9973034084, 0.2583530699),
];

/// Stored exponents for the state, taken from the entry closest in `ω`.
pub fn preset_exponents(spin: SpinSymmetry, n: usize, omega: u32) -> Option<(f64, f64)> {
    TABLE
        .iter()
        .filter(|e| e.0 == spin && e.1 == n)
        .min_by_key(|e| (e.2.abs_diff(omega), std::cmp::Reverse(e.2)))
        .map(|e| (e.3, e.4))
}

/// Starting point for a fresh optimization: a bare `1s` orbital and an
/// `ns` orbital of hydrogenic size.
pub fn seed_exponents(spin: SpinSymmetry, n: usize) -> (f64, f64) {
    match (spin, n) {
        (Singlet, 1) => (2.0, 2.0),
        _ => (2.2, 2.0 / n as f64),
    }
}
