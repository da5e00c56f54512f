//! cos² on the dyadic angle lattice.

use std::f64::consts::PI;

/// cos²(π·numer / 2^level), reduced in exact integer arithmetic before the
/// single trigonometric call.
///
/// Guarantees beyond plain `f64::cos`:
/// - exact 1.0, 0.5, 0.0 at multiples of π/4 on the lattice;
/// - exact symmetry under `numer → -numer` and `numer → 2^level − numer`;
/// - exact complement: `cos2(d) + cos2(d + 2^(level−1)) == 1.0` bitwise,
///   because the two calls reduce to the same octant angle and the larger
///   one is returned as `1.0 - p`.
pub(crate) fn dyadic_cos2(numer: i64, level: u32) -> f64 {
    debug_assert!((1..=25).contains(&level));
    let full = 1i64 << level; // one half-turn, π
    let half = full >> 1; // quarter turn, π/2
    let mut r = numer.rem_euclid(full);
    if r > half {
        // cos²(π − x) = cos²(x)
        r = full - r;
    }
    // r ∈ [0, half]: angle in [0, π/2]
    if 2 * r < half {
        let c = (PI * (r as f64) / (full as f64)).cos();
        c * c
    } else if 2 * r == half {
        0.5
    } else {
        // cos²(x) = 1 − cos²(π/2 − x), evaluated below π/4
        let c = (PI * ((half - r) as f64) / (full as f64)).cos();
        1.0 - c * c
    }
}

#[cfg(test)]
mod tests {
    use super::dyadic_cos2;

    #[test]
    fn lattice_points_are_exact() {
        assert_eq!(dyadic_cos2(0, 3), 1.0);
        assert_eq!(dyadic_cos2(4, 3), 0.0); // π/2
        assert_eq!(dyadic_cos2(2, 3), 0.5); // π/4
        assert_eq!(dyadic_cos2(8, 3), 1.0); // π
    }

    #[test]
    fn matches_plain_cosine() {
        for level in 1..=12u32 {
            let full = 1i64 << level;
            for j in 0..full {
                let direct = (std::f64::consts::PI * j as f64 / full as f64).cos().powi(2);
                let reduced = dyadic_cos2(j, level);
                assert!(
                    (direct - reduced).abs() < 1e-15,
                    "level {level} j {j}: {direct} vs {reduced}"
                );
            }
        }
    }

    #[test]
    fn complement_is_exact() {
        for level in 1..=12u32 {
            let full = 1i64 << level;
            let half = full >> 1;
            for j in 0..full {
                let sum = dyadic_cos2(j, level) + dyadic_cos2(j + half, level);
                assert_eq!(sum, 1.0, "level {level} j {j}");
            }
        }
    }

    #[test]
    fn symmetry_is_exact() {
        for level in 1..=10u32 {
            let full = 1i64 << level;
            for j in 1..full {
                assert_eq!(dyadic_cos2(j, level), dyadic_cos2(full - j, level));
                assert_eq!(dyadic_cos2(j, level), dyadic_cos2(-j, level));
            }
        }
    }
}
