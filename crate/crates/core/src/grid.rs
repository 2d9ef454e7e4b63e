//! Periodic 4-D grid and scalar fields.
//!
//! The domain is the flat torus `[0, 2*pi)^4` sampled on `n` equispaced points
//! per axis (`n` even, `n >= 8`). Values are stored row-major with the **last
//! axis fastest**: flat index `((i0*n + i1)*n + i2)*n + i3`. All integrals use
//! the normalized measure, so `int u dV` is the plain mean over grid points
//! (the trapezoid rule is exact-to-rounding for periodic sampling).

use crate::error::{QcError, Result};

/// Grid resolution descriptor: `n` points per axis on `[0, 2*pi)^4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    n: usize,
}

impl GridSpec {
    /// Create a spec. `n` must be even and at least 8.
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || n % 2 != 0 {
            return Err(QcError::InvalidGridSize { n });
        }
        Ok(GridSpec { n })
    }

    /// Points per axis.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of grid points, `n^4`.
    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n * self.n * self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing `2*pi/n`.
    #[inline]
    pub fn spacing(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.n as f64
    }

    /// Coordinates of the point with per-axis indices `idx`.
    #[inline]
    pub fn point(&self, idx: [usize; 4]) -> [f64; 4] {
        let h = self.spacing();
        [
            idx[0] as f64 * h,
            idx[1] as f64 * h,
            idx[2] as f64 * h,
            idx[3] as f64 * h,
        ]
    }

    /// Flat index of per-axis indices (row-major, last axis fastest).
    #[inline]
    pub fn flat(&self, idx: [usize; 4]) -> usize {
        ((idx[0] * self.n + idx[1]) * self.n + idx[2]) * self.n + idx[3]
    }

    /// Per-axis indices of a flat index.
    #[inline]
    pub fn unflat(&self, flat: usize) -> [usize; 4] {
        let n = self.n;
        let i3 = flat % n;
        let r = flat / n;
        let i2 = r % n;
        let r = r / n;
        let i1 = r % n;
        let i0 = r / n;
        [i0, i1, i2, i3]
    }

    /// Signed integer frequency for spectral bin `i` (`0..n`): `i` for
    /// `i <= n/2`, else `i - n`. The Nyquist bin `n/2` maps to `+n/2`.
    #[inline]
    pub fn freq(&self, i: usize) -> i64 {
        if i <= self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Squared distance from `x` to `y` on the torus (shortest images per axis).
    pub fn torus_dist2(&self, x: [f64; 4], y: [f64; 4]) -> f64 {
        let period = 2.0 * std::f64::consts::PI;
        let mut d2 = 0.0;
        for a in 0..4 {
            let mut d = (x[a] - y[a]).rem_euclid(period);
            if d > period / 2.0 {
                d = period - d;
            }
            d2 += d * d;
        }
        d2
    }
}

/// A real scalar field sampled on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    spec: GridSpec,
    values: Vec<f64>,
}

impl ScalarField {
    /// Zero field.
    pub fn zeros(spec: GridSpec) -> Self {
        ScalarField {
            spec,
            values: vec![0.0; spec.len()],
        }
    }

    /// Constant field.
    pub fn constant(spec: GridSpec, c: f64) -> Self {
        ScalarField {
            spec,
            values: vec![c; spec.len()],
        }
    }

    /// Wrap an existing value vector. Length must equal `spec.len()`.
    pub fn from_values(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(QcError::ShapeMismatch(format!(
                "expected {} values, got {}",
                spec.len(),
                values.len()
            )));
        }
        Ok(ScalarField { spec, values })
    }

    #[inline]
    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    #[inline]
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Mean over grid points = integral against the normalized measure.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Mean of the pointwise product, `int u v dV`.
    pub fn mean_dot(&self, other: &ScalarField) -> f64 {
        debug_assert_eq!(self.spec, other.spec);
        let n = self.values.len() as f64;
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / n
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Max-norm.
    pub fn norm_inf(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: f64, other: &ScalarField) {
        debug_assert_eq!(self.spec, other.spec);
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
    }

    /// `self *= c`.
    pub fn scale(&mut self, c: f64) {
        for a in &mut self.values {
            *a *= c;
        }
    }

    /// Pointwise product into a new field.
    pub fn pointwise_mul(&self, other: &ScalarField) -> ScalarField {
        debug_assert_eq!(self.spec, other.spec);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        ScalarField {
            spec: self.spec,
            values,
        }
    }

    /// New field `self - other`.
    pub fn sub(&self, other: &ScalarField) -> ScalarField {
        debug_assert_eq!(self.spec, other.spec);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        ScalarField {
            spec: self.spec,
            values,
        }
    }

    /// `exp(scale * u)` with an overflow guard: errors if `scale * max(u) > 700`.
    pub fn exp_scaled(&self, scale: f64) -> Result<ScalarField> {
        let four_max = scale * self.max();
        if four_max > 700.0 {
            return Err(QcError::Overflow {
                four_max_u: four_max,
            });
        }
        let values = self.values.iter().map(|v| (scale * v).exp()).collect();
        Ok(ScalarField {
            spec: self.spec,
            values,
        })
    }
}

/// Sample a function of the coordinates onto the grid. Errors (naming the flat
/// index) if any sampled value is non-finite.
pub fn sample<F: Fn([f64; 4]) -> f64>(spec: GridSpec, f: F) -> Result<ScalarField> {
    let n = spec.n();
    let h = spec.spacing();
    let mut values = Vec::with_capacity(spec.len());
    for i0 in 0..n {
        let x0 = i0 as f64 * h;
        for i1 in 0..n {
            let x1 = i1 as f64 * h;
            for i2 in 0..n {
                let x2 = i2 as f64 * h;
                for i3 in 0..n {
                    let v = f([x0, x1, x2, i3 as f64 * h]);
                    values.push(v);
                }
            }
        }
    }
    for (index, &value) in values.iter().enumerate() {
        if !value.is_finite() {
            return Err(QcError::NonFinite { index, value });
        }
    }
    Ok(ScalarField { spec, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(GridSpec::new(6).is_err());
        assert!(GridSpec::new(9).is_err());
        assert!(GridSpec::new(8).is_ok());
    }

    #[test]
    fn index_round_trip() {
        let spec = GridSpec::new(8).unwrap();
        for flat in [0usize, 1, 7, 8, 511, 4095] {
            assert_eq!(spec.flat(spec.unflat(flat)), flat);
        }
    }

    #[test]
    fn mean_of_sin_squared_half_angle() {
        // mean over the torus of sin^2(x1/2) = (1 - cos x1)/2 is exactly 1/2.
        let spec = GridSpec::new(8).unwrap();
        let u = sample(spec, |x| (x[0] / 2.0).sin().powi(2)).unwrap();
        assert!((u.mean() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn sample_rejects_non_finite() {
        let spec = GridSpec::new(8).unwrap();
        let r = sample(spec, |x| {
            if x[0] == 0.0 && x[1] == 0.0 && x[2] == 0.0 && x[3] > 0.7 && x[3] < 0.8 {
                f64::NAN
            } else {
                1.0
            }
        });
        match r {
            Err(QcError::NonFinite { index: 1, .. }) => {}
            other => panic!("expected NonFinite at index 1, got {other:?}"),
        }
    }

    #[test]
    fn overflow_guard_triggers() {
        let spec = GridSpec::new(8).unwrap();
        let u = ScalarField::constant(spec, 200.0);
        assert!(matches!(u.exp_scaled(4.0), Err(QcError::Overflow { .. })));
        let v = ScalarField::constant(spec, 1.0);
        assert!(v.exp_scaled(4.0).is_ok());
    }

    #[test]
    fn torus_distance_wraps() {
        let spec = GridSpec::new(8).unwrap();
        let d2 = spec.torus_dist2([0.1, 0.0, 0.0, 0.0], [2.0 * std::f64::consts::PI - 0.1, 0.0, 0.0, 0.0]);
        assert!((d2 - 0.04).abs() < 1e-12);
    }
}
