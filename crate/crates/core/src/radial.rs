//! Radial 1-D quadrature engine.
//!
//! Computes integrals of radial profiles over 4-dimensional annuli in the
//! Euclidean chart,
//!
//! ```text
//!   int_{a <= |x| <= b} phi(|x|) dx  =  2 pi^2  int_a^b phi(r) r^3 dr,
//! ```
//!
//! using composite Gauss–Legendre panels. Panels can be geometrically
//! (logarithmically) graded, which resolves `1/r`-type integrands over many
//! decades — the regime the logarithmic cutoff profiles live in — to near
//! machine precision with a handful of panels per decade.

use crate::error::{QcError, Result};
use crate::S3_AREA;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, computed by Newton iteration
/// on the Legendre recurrence (standard construction; converges to machine
/// precision in a few steps from the Chebyshev initial guess).
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1);
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m {
        // Initial guess: Chebyshev-like approximation to the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Evaluate P_m(x) and P'_m(x) via the three-term recurrence.
            let (mut p0, mut p1) = (1.0_f64, x);
            for j in 2..=m {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { x } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            let dpm = m as f64 * (x * pm - pm1) / (x * x - 1.0);
            let dx = pm / dpm;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        // Recompute derivative at the converged node for the weight.
        let (mut p0, mut p1) = (1.0_f64, x);
        for j in 2..=m {
            let jf = j as f64;
            let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
            p0 = p1;
            p1 = p2;
        }
        let pm = if m == 1 { x } else { p1 };
        let pm1 = if m == 1 { 1.0 } else { p0 };
        let dpm = m as f64 * (x * pm - pm1) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dpm * dpm);
    }
    // The construction above fills roots descending; sort ascending for sanity.
    let mut pairs: Vec<(f64, f64)> = nodes.into_iter().zip(weights).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pairs.into_iter().unzip()
}

/// Composite Gauss–Legendre quadrature rule for radial integrals on `[a, b]`.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    /// Weights including the `2 pi^2 r^3` measure factor.
    weights: Vec<f64>,
    points_per_panel: usize,
}

impl RadialGrid {
    /// Rule with `panels` equal-width panels of `points` Gauss nodes each.
    pub fn uniform(a: f64, b: f64, panels: usize, points: usize) -> Result<Self> {
        if !(a >= 0.0 && b > a) || panels == 0 || points == 0 {
            return Err(QcError::InvalidParameter(format!(
                "invalid radial grid: [{a}, {b}], {panels} panels x {points} points"
            )));
        }
        let edges: Vec<f64> = (0..=panels)
            .map(|i| a + (b - a) * i as f64 / panels as f64)
            .collect();
        Ok(Self::from_edges(&edges, points))
    }

    /// Rule with geometrically graded panels (`panels_per_decade` per factor of
    /// 10) between `a > 0` and `b`.
    pub fn log_graded(a: f64, b: f64, panels_per_decade: usize, points: usize) -> Result<Self> {
        if !(a > 0.0 && b > a) || panels_per_decade == 0 || points == 0 {
            return Err(QcError::InvalidParameter(format!(
                "invalid log-graded radial grid: [{a}, {b}]"
            )));
        }
        let decades = (b / a).log10();
        let panels = (decades * panels_per_decade as f64).ceil().max(1.0) as usize;
        let ratio = (b / a).powf(1.0 / panels as f64);
        let mut edges = Vec::with_capacity(panels + 1);
        let mut e = a;
        for _ in 0..panels {
            edges.push(e);
            e *= ratio;
        }
        edges.push(b);
        Ok(Self::from_edges(&edges, points))
    }

    /// Rule from an explicit, strictly increasing list of panel edges.
    pub fn from_edges(edges: &[f64], points: usize) -> Self {
        let (gx, gw) = gauss_legendre(points);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for w in edges.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for (x, wt) in gx.iter().zip(&gw) {
                let r = mid + half * x;
                nodes.push(r);
                weights.push(S3_AREA * wt * half * r * r * r);
            }
        }
        RadialGrid {
            nodes,
            weights,
            points_per_panel: points,
        }
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[inline]
    pub fn points_per_panel(&self) -> usize {
        self.points_per_panel
    }

    /// `2 pi^2 int phi(r) r^3 dr` over this rule's support.
    pub fn integrate<F: Fn(f64) -> f64>(&self, phi: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&r, &w)| w * phi(r))
            .sum()
    }

    /// As [`integrate`](Self::integrate) but from tabulated values at the nodes.
    pub fn integrate_values(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.nodes.len());
        values
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| v * w)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_and_weights_are_positive_and_symmetric() {
        let (x, w) = gauss_legendre(12);
        assert!(w.iter().all(|&wi| wi > 0.0));
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        for i in 0..12 {
            assert!((x[i] + x[11 - i]).abs() < 1e-14);
        }
    }

    #[test]
    fn unit_ball_volume() {
        // 2 pi^2 int_0^1 r^3 dr = pi^2 / 2, the volume of the unit 4-ball.
        let grid = RadialGrid::uniform(0.0, 1.0, 4, 8).unwrap();
        let vol = grid.integrate(|_| 1.0);
        let expect = std::f64::consts::PI.powi(2) / 2.0;
        assert!((vol - expect).abs() / expect < 1e-12);
    }

    #[test]
    fn inverse_fourth_power_over_annulus() {
        // int_{lambda <= |x| <= sqrt(lambda)} |x|^-4 dx = 2 pi^2 * (1/2) log(1/lambda)
        //                                               = pi^2 log(1/lambda).
        let lambda = 1e-4_f64;
        let grid = RadialGrid::log_graded(lambda, lambda.sqrt(), 6, 16).unwrap();
        let val = grid.integrate(|r| r.powi(-4));
        let expect = std::f64::consts::PI.powi(2) * (1.0 / lambda).ln();
        assert!((val - expect).abs() / expect < 1e-12, "val={val} expect={expect}");
    }

    #[test]
    fn polynomial_exactness_to_rule_order() {
        // A panel rule with m points integrates polynomials of degree <= 2m-1
        // exactly; with the r^3 measure factor, profiles of degree <= 2m-4.
        let m = 10;
        let grid = RadialGrid::uniform(0.3, 1.7, 3, m).unwrap();
        for deg in 0..=(2 * m - 4) {
            let val = grid.integrate(|r| r.powi(deg as i32));
            let p = deg as f64 + 4.0;
            let expect = S3_AREA * (1.7_f64.powf(p) - 0.3_f64.powf(p)) / p;
            assert!(
                (val - expect).abs() / expect.abs() < 1e-12,
                "degree {deg}: val={val} expect={expect}"
            );
        }
    }

    #[test]
    fn weights_positive() {
        let grid = RadialGrid::log_graded(1e-6, 1.0, 4, 12).unwrap();
        assert!(grid.weights.iter().all(|&w| w > 0.0));
    }
}
