//! Sign-vector symmetrization and a second-difference convexity checker.
//!
//! Averaging a convex function of a±-signed combination over every sign
//! vector restores convexity that the raw path functional lacks; these
//! helpers evaluate such symmetrized sums on grids so the convexity can be
//! verified numerically.

use super::tree::SignVectorSet;
use super::OracleError;

/// Verdict of a numeric convexity probe via second differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityCheck {
    pub pass: bool,
    /// Most negative second difference encountered.
    pub worst_second_difference: f64,
    /// Grid index where it occurred.
    pub worst_index: usize,
}

/// Check convexity of `values` sampled on an evenly spaced grid: every
/// second difference v[i−1] − 2v[i] + v[i+1] must be ≥ −tol.
pub fn convexity_check(values: &[f64], tol: f64) -> ConvexityCheck {
    assert!(
        values.len() >= 3,
        "convexity check needs at least 3 grid points"
    );
    let mut worst = f64::INFINITY;
    let mut worst_index = 1;
    for i in 1..values.len() - 1 {
        let second = values[i - 1] - 2.0 * values[i] + values[i + 1];
        if second < worst {
            worst = second;
            worst_index = i;
        }
    }
    ConvexityCheck {
        pass: worst >= -tol,
        worst_second_difference: worst,
        worst_index,
    }
}

pub type ScalarFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Evaluate h(u) = Σ_{p ∈ {−1,1}^m} φ(a + b·u + Σᵢ pᵢ·gᵢ(u)) on `u_grid`.
///
/// For convex φ and nonnegative convex gᵢ the result is convex in u even
/// though each single summand need not be; `m = g.len()` is capped at 20.
pub fn symmetrize_h(
    phi: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    g: &[ScalarFn],
    u_grid: &[f64],
) -> Result<Vec<f64>, OracleError> {
    let signs = SignVectorSet::new(g.len())?;
    let mut out = Vec::with_capacity(u_grid.len());
    for &u in u_grid {
        let g_vals: Vec<f64> = g.iter().map(|gi| gi(u)).collect();
        let mut h = 0.0;
        for p in signs.iter() {
            let arg = a
                + b * u
                + g_vals
                    .iter()
                    .enumerate()
                    .map(|(i, gv)| p.sign(i) * gv)
                    .sum::<f64>();
            h += phi(arg);
        }
        out.push(h);
    }
    Ok(out)
}

/// Multivariate variant: h(u) = Σ_{p ∈ {−1,1}^m} φ(p₁·g₁(u), …, pₘ·gₘ(u))
/// for a supermodular convex φ, convex in u for nonnegative convex gᵢ.
pub fn symmetrize_supermodular(
    phi: impl Fn(&[f64]) -> f64,
    g: &[ScalarFn],
    u_grid: &[f64],
) -> Result<Vec<f64>, OracleError> {
    let signs = SignVectorSet::new(g.len())?;
    let mut args = vec![0.0; g.len()];
    let mut out = Vec::with_capacity(u_grid.len());
    for &u in u_grid {
        let g_vals: Vec<f64> = g.iter().map(|gi| gi(u)).collect();
        let mut h = 0.0;
        for p in signs.iter() {
            for i in 0..g.len() {
                args[i] = p.sign(i) * g_vals[i];
            }
            h += phi(&args);
        }
        out.push(h);
    }
    Ok(out)
}

/// Evenly spaced grid helper for the probes.
pub fn even_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2);
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(|i| lo + step * i as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convexity_check_on_parabolas() {
        let grid = even_grid(-1.0, 1.0, 21);
        let convex: Vec<f64> = grid.iter().map(|&x| x * x).collect();
        assert!(convexity_check(&convex, 1e-12).pass);

        let concave: Vec<f64> = grid.iter().map(|&x| -x * x).collect();
        let c = convexity_check(&concave, 1e-12);
        assert!(!c.pass);
        // second difference of −x² is −2h² for spacing h
        let h = grid[1] - grid[0];
        assert!((c.worst_second_difference + 2.0 * h * h).abs() < 1e-12);
    }

    #[test]
    fn no_sign_vectors_is_plain_composition() {
        let grid = even_grid(-2.0, 2.0, 33);
        let h = symmetrize_h(|x| x * x, 0.5, 1.5, &[], &grid).unwrap();
        for (i, &u) in grid.iter().enumerate() {
            let expect = (0.5 + 1.5 * u) * (0.5 + 1.5 * u);
            assert!((h[i] - expect).abs() < 1e-12);
        }
        assert!(convexity_check(&h, 1e-9).pass);
    }

    #[test]
    fn single_g_with_square_phi_doubles_the_square() {
        // φ(x) = x², a = b = 0, one g: h(u) = (g)² + (−g)² = 2g(u)²
        let grid = even_grid(-2.0, 2.0, 33);
        let g: Vec<ScalarFn> = vec![Box::new(|u: f64| u * u + 0.3)];
        let h = symmetrize_h(|x| x * x, 0.0, 0.0, &g, &grid).unwrap();
        for (i, &u) in grid.iter().enumerate() {
            let gv = u * u + 0.3;
            assert!((h[i] - 2.0 * gv * gv).abs() < 1e-12);
        }
        assert!(convexity_check(&h, 1e-9).pass);
    }

    #[test]
    fn sign_count_guard() {
        let g: Vec<ScalarFn> = (0..21).map(|_| Box::new(|u: f64| u * u) as ScalarFn).collect();
        assert!(symmetrize_h(|x| x, 0.0, 0.0, &g, &[0.0, 1.0]).is_err());
    }

    #[test]
    fn multivariate_symmetrized_sums_are_convex() {
        // randomized probes: supermodular convex φ(y) = ((c·y − k)⁺)^q with
        // c ≥ 0 and q ∈ {1, 2}, nonnegative convex gᵢ; the sign-averaged
        // sum must be convex in u
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let grid = even_grid(-2.0, 2.0, 41);
        for case in 0..50 {
            let m = 1 + (rng.random::<u64>() % 5) as usize;
            let weights: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
            let k = 2.0 * rng.random::<f64>() - 1.0;
            let squared = rng.random::<f64>() < 0.5;
            let phi = move |y: &[f64]| {
                let t: f64 = y.iter().zip(&weights).map(|(v, w)| v * w).sum::<f64>() - k;
                let h = t.max(0.0);
                if squared {
                    h * h
                } else {
                    h
                }
            };
            let g: Vec<ScalarFn> = (0..m)
                .map(|_| {
                    let q = 1.5 * rng.random::<f64>();
                    let c = rng.random::<f64>();
                    let kk = 2.0 * rng.random::<f64>() - 1.0;
                    let w = rng.random::<f64>();
                    Box::new(move |u: f64| q * u * u + c + w * (u - kk).max(0.0)) as ScalarFn
                })
                .collect();
            let h = symmetrize_supermodular(phi, &g, &grid).unwrap();
            let check = convexity_check(&h, 1e-9);
            assert!(
                check.pass,
                "case {case}: worst second difference {}",
                check.worst_second_difference
            );
        }
    }
}
