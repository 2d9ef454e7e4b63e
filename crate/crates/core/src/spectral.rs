//! Spectral (Fourier) operations on the periodic grid.
//!
//! Integer wavenumbers `k` with `|k_i| <= n/2` diagonalize constant-coefficient
//! operators: the Laplacian has symbol `-|k|^2`, the bilaplacian `|k|^4`.
//! Transforms are full complex FFTs along each axis; real fields stay real
//! because every symbol used here is even in `k`.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{QcError, Result};
use crate::grid::{GridSpec, ScalarField};

/// Complex spectral coefficients of a field (unnormalized FFT; divide by `n^4`
/// when synthesizing).
pub struct SpectralRep {
    pub spec: GridSpec,
    pub coeffs: Vec<Complex64>,
}

fn fft_all_axes(spec: GridSpec, data: &mut [Complex64], inverse: bool) {
    let n = spec.n();
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    // Last axis: contiguous lines.
    for chunk in data.chunks_exact_mut(n) {
        fft.process(chunk);
    }
    // Remaining axes: gather strided lines into a scratch buffer.
    let mut line = vec![Complex64::default(); n];
    for axis in 0..3usize {
        let stride = n.pow(3 - axis as u32);
        // Iterate over all line starts: indices with a zero component on `axis`.
        let block = stride * n; // span of one full line set along this axis
        let nlines = spec.len() / n;
        for l in 0..nlines {
            // Decompose l into (outer, inner): outer picks which block, inner the offset.
            let outer = l / stride;
            let inner = l % stride;
            let base = outer * block + inner;
            for (j, slot) in line.iter_mut().enumerate() {
                *slot = data[base + j * stride];
            }
            fft.process(&mut line);
            for (j, slot) in line.iter().enumerate() {
                data[base + j * stride] = *slot;
            }
        }
    }
}

/// Forward transform of a real field.
pub fn to_spectral(u: &ScalarField) -> SpectralRep {
    let spec = u.spec();
    let mut coeffs: Vec<Complex64> = u
        .values()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    fft_all_axes(spec, &mut coeffs, false);
    SpectralRep { spec, coeffs }
}

/// Inverse transform, taking the real part and dividing by `n^4`.
pub fn from_spectral(mut rep: SpectralRep) -> ScalarField {
    fft_all_axes(rep.spec, &mut rep.coeffs, true);
    let scale = 1.0 / rep.spec.len() as f64;
    let values = rep.coeffs.iter().map(|c| c.re * scale).collect();
    ScalarField::from_values(rep.spec, values).expect("length preserved")
}

/// A real, even Fourier symbol `m(k)` tabulated over the grid's wavenumber
/// lattice, with the zero mode tracked separately (mean handling).
pub struct FourierMultiplier {
    spec: GridSpec,
    symbol: Vec<f64>,
    zero_mode: f64,
}

impl FourierMultiplier {
    /// Build from a symbol function of the integer wavenumber. The symbol must
    /// be even (`m(k) = m(-k)`) so that real fields map to real fields; this is
    /// checked on construction.
    pub fn from_fn<F: Fn([i64; 4]) -> f64>(spec: GridSpec, m: F) -> Result<Self> {
        let n = spec.n();
        let mut symbol = Vec::with_capacity(spec.len());
        for i0 in 0..n {
            for i1 in 0..n {
                for i2 in 0..n {
                    for i3 in 0..n {
                        let k = [spec.freq(i0), spec.freq(i1), spec.freq(i2), spec.freq(i3)];
                        symbol.push(m(k));
                    }
                }
            }
        }
        // Evenness check: m(k) == m(-k). The map i -> (n - i) mod n negates the
        // frequency (Nyquist maps to itself).
        for i0 in 0..n {
            for i1 in 0..n {
                for i2 in 0..n {
                    for i3 in 0..n {
                        let a = spec.flat([i0, i1, i2, i3]);
                        let b = spec.flat([
                            (n - i0) % n,
                            (n - i1) % n,
                            (n - i2) % n,
                            (n - i3) % n,
                        ]);
                        if (symbol[a] - symbol[b]).abs() > 1e-12 * (1.0 + symbol[a].abs()) {
                            return Err(QcError::InvalidParameter(format!(
                                "multiplier symbol is not even: m(k) = {} vs m(-k) = {}",
                                symbol[a], symbol[b]
                            )));
                        }
                        if !symbol[a].is_finite() {
                            return Err(QcError::NonFinite {
                                index: a,
                                value: symbol[a],
                            });
                        }
                    }
                }
            }
        }
        let zero_mode = symbol[0];
        Ok(FourierMultiplier {
            spec,
            symbol,
            zero_mode,
        })
    }

    /// Laplacian symbol `-|k|^2`.
    pub fn laplacian(spec: GridSpec) -> Self {
        Self::from_fn(spec, |k| {
            -((k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + k[3] * k[3]) as f64)
        })
        .expect("even symbol")
    }

    /// Bilaplacian symbol `|k|^4`.
    pub fn bilaplacian(spec: GridSpec) -> Self {
        Self::from_fn(spec, |k| {
            let k2 = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + k[3] * k[3]) as f64;
            k2 * k2
        })
        .expect("even symbol")
    }

    #[inline]
    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    /// Symbol value at the zero mode.
    #[inline]
    pub fn zero_mode(&self) -> f64 {
        self.zero_mode
    }

    /// Symbol value at wavenumber `k` (looked up on the lattice).
    pub fn at(&self, k: [i64; 4]) -> f64 {
        let n = self.spec.n() as i64;
        let wrap = |ki: i64| -> usize { ki.rem_euclid(n) as usize };
        self.symbol[self
            .spec
            .flat([wrap(k[0]), wrap(k[1]), wrap(k[2]), wrap(k[3])])]
    }
}

/// Apply a Fourier multiplier to a field.
pub fn apply_multiplier(u: &ScalarField, m: &FourierMultiplier) -> Result<ScalarField> {
    if u.spec() != m.spec {
        return Err(QcError::ShapeMismatch(
            "multiplier and field use different grids".into(),
        ));
    }
    let mut rep = to_spectral(u);
    for (c, &s) in rep.coeffs.iter_mut().zip(&m.symbol) {
        *c *= s;
    }
    Ok(from_spectral(rep))
}

/// Solve `Lap^2 v = rhs` with `mean(v) = 0`. The right-hand side must be
/// numerically mean-free: `|mean(rhs)| < 1e-10`, else a compatibility error.
pub fn solve_bilaplacian_meanzero(rhs: &ScalarField) -> Result<ScalarField> {
    let mean = rhs.mean();
    if mean.abs() >= 1e-10 {
        return Err(QcError::Compatibility { mean });
    }
    let spec = rhs.spec();
    let mut rep = to_spectral(rhs);
    let n = spec.n();
    let mut idx = 0usize;
    for i0 in 0..n {
        let k0 = spec.freq(i0);
        for i1 in 0..n {
            let k1 = spec.freq(i1);
            for i2 in 0..n {
                let k2 = spec.freq(i2);
                for i3 in 0..n {
                    let k3 = spec.freq(i3);
                    let k2sum = (k0 * k0 + k1 * k1 + k2 * k2 + k3 * k3) as f64;
                    if k2sum == 0.0 {
                        rep.coeffs[idx] = Complex64::default();
                    } else {
                        rep.coeffs[idx] /= k2sum * k2sum;
                    }
                    idx += 1;
                }
            }
        }
    }
    Ok(from_spectral(rep))
}

/// Spectral partial derivative along `axis`. The Nyquist plane is zeroed (the
/// standard convention for odd-order derivatives of real fields).
pub fn partial_derivative(u: &ScalarField, axis: usize) -> ScalarField {
    assert!(axis < 4);
    let spec = u.spec();
    let n = spec.n();
    let mut rep = to_spectral(u);
    let mut idx = 0usize;
    for i0 in 0..n {
        for i1 in 0..n {
            for i2 in 0..n {
                for i3 in 0..n {
                    let i_axis = [i0, i1, i2, i3][axis];
                    let k = if 2 * i_axis == n {
                        0 // Nyquist
                    } else {
                        spec.freq(i_axis)
                    };
                    let c = rep.coeffs[idx];
                    rep.coeffs[idx] = Complex64::new(-c.im, c.re) * k as f64; // i*k*c
                    idx += 1;
                }
            }
        }
    }
    from_spectral(rep)
}

/// Fraction of spectral energy (mean removed) carried by wavenumbers with
/// `max_i |k_i| > n/3` — the aliasing monitor. Returns 0 for constants.
pub fn tail_energy_fraction(u: &ScalarField) -> f64 {
    let spec = u.spec();
    let n = spec.n();
    let rep = to_spectral(u);
    let cutoff = (n / 3) as i64;
    let mut total = 0.0;
    let mut tail = 0.0;
    let mut idx = 0usize;
    for i0 in 0..n {
        let k0 = spec.freq(i0);
        for i1 in 0..n {
            let k1 = spec.freq(i1);
            for i2 in 0..n {
                let k2 = spec.freq(i2);
                for i3 in 0..n {
                    let k3 = spec.freq(i3);
                    if (k0, k1, k2, k3) != (0, 0, 0, 0) {
                        let e = rep.coeffs[idx].norm_sqr();
                        total += e;
                        let kmax = k0.abs().max(k1.abs()).max(k2.abs()).max(k3.abs());
                        if kmax > cutoff {
                            tail += e;
                        }
                    }
                    idx += 1;
                }
            }
        }
    }
    if total == 0.0 {
        0.0
    } else {
        tail / total
    }
}

/// Trigonometric interpolation: evaluates the band-limited interpolant of a
/// sampled field at arbitrary points. Modes with negligible coefficients are
/// dropped once at construction to keep evaluation affordable.
pub struct SpectralInterpolator {
    modes: Vec<([i64; 4], Complex64)>,
}

impl SpectralInterpolator {
    pub fn new(u: &ScalarField) -> Self {
        let spec = u.spec();
        let n = spec.n();
        let rep = to_spectral(u);
        let scale = 1.0 / spec.len() as f64;
        let max_mag = rep
            .coeffs
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.norm_sqr()))
            .sqrt();
        let threshold = max_mag * 1e-16;
        let mut modes = Vec::new();
        let mut idx = 0usize;
        for i0 in 0..n {
            let k0 = spec.freq(i0);
            for i1 in 0..n {
                let k1 = spec.freq(i1);
                for i2 in 0..n {
                    let k2 = spec.freq(i2);
                    for i3 in 0..n {
                        let k3 = spec.freq(i3);
                        let c = rep.coeffs[idx];
                        if c.norm() > threshold {
                            modes.push(([k0, k1, k2, k3], c * scale));
                        }
                        idx += 1;
                    }
                }
            }
        }
        SpectralInterpolator { modes }
    }

    /// Evaluate at a point (coordinates in `[0, 2*pi)`; any reals accepted).
    /// For a real field the real part of the one-sided sum is the standard
    /// trigonometric interpolant.
    pub fn eval(&self, x: [f64; 4]) -> f64 {
        let mut acc = 0.0;
        for &(k, c) in &self.modes {
            let phase = k[0] as f64 * x[0]
                + k[1] as f64 * x[1]
                + k[2] as f64 * x[2]
                + k[3] as f64 * x[3];
            acc += c.re * phase.cos() - c.im * phase.sin();
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::sample;

    fn spec() -> GridSpec {
        GridSpec::new(8).unwrap()
    }

    #[test]
    fn laplacian_of_cos_mode() {
        let u = sample(spec(), |x| x[0].cos()).unwrap();
        let lap = apply_multiplier(&u, &FourierMultiplier::laplacian(spec())).unwrap();
        let expect = sample(spec(), |x| -x[0].cos()).unwrap();
        let err = lap.sub(&expect).norm_inf();
        assert!(err < 1e-12, "err = {err}");
    }

    #[test]
    fn bilaplacian_solve_divides_by_symbol() {
        // rhs = cos(2 x1) has |k|^4 = 16, so the mean-zero solution is cos(2 x1)/16.
        let rhs = sample(spec(), |x| (2.0 * x[0]).cos()).unwrap();
        let v = solve_bilaplacian_meanzero(&rhs).unwrap();
        let expect = sample(spec(), |x| (2.0 * x[0]).cos() / 16.0).unwrap();
        assert!(v.sub(&expect).norm_inf() < 1e-13);
    }

    #[test]
    fn bilaplacian_solve_rejects_nonzero_mean() {
        let rhs = ScalarField::constant(spec(), 0.5);
        assert!(matches!(
            solve_bilaplacian_meanzero(&rhs),
            Err(QcError::Compatibility { .. })
        ));
    }

    #[test]
    fn multiplier_then_solve_is_identity_on_meanzero() {
        let u = sample(spec(), |x| {
            0.3 * x[0].cos() + 0.2 * (x[1] + 0.4).cos() * (2.0 * x[2]).cos()
        })
        .unwrap();
        let lap = FourierMultiplier::laplacian(spec());
        let l2u = apply_multiplier(&apply_multiplier(&u, &lap).unwrap(), &lap).unwrap();
        let back = solve_bilaplacian_meanzero(&l2u).unwrap();
        assert!(back.sub(&u).norm_inf() < 1e-12);
    }

    #[test]
    fn parseval_identity() {
        let u = sample(spec(), |x| 0.7 * x[0].cos() + 0.1 * (x[2] * 3.0).sin()).unwrap();
        let v = sample(spec(), |x| -0.2 * x[0].cos() + 0.5 * (x[3] * 2.0).cos()).unwrap();
        let phys = u.mean_dot(&v);
        let (ru, rv) = (to_spectral(&u), to_spectral(&v));
        let n8 = (u.spec().len() as f64) * (u.spec().len() as f64);
        let spectral: f64 = ru
            .coeffs
            .iter()
            .zip(&rv.coeffs)
            .map(|(a, b)| (a * b.conj()).re)
            .sum::<f64>()
            / n8;
        assert!((phys - spectral).abs() < 1e-12);
    }

    #[test]
    fn derivative_is_skew_adjoint() {
        let u = sample(spec(), |x| (x[0] + 0.3).cos() * (2.0 * x[1]).cos()).unwrap();
        let v = sample(spec(), |x| (x[1] - 0.2).sin() + 0.4 * x[0].cos()).unwrap();
        let lhs = partial_derivative(&u, 0).mean_dot(&v);
        let rhs = -u.mean_dot(&partial_derivative(&v, 0));
        assert!((lhs - rhs).abs() < 1e-13);
    }

    #[test]
    fn tail_fraction_flags_high_modes() {
        let smooth = sample(spec(), |x| x[0].cos()).unwrap();
        assert!(tail_energy_fraction(&smooth) < 1e-12);
        let rough = sample(spec(), |x| (3.0 * x[0]).cos()).unwrap();
        assert!(tail_energy_fraction(&rough) > 0.99);
    }

    #[test]
    fn interpolator_matches_band_limited_function() {
        let f = |x: [f64; 4]| 0.4 + 0.3 * x[0].cos() + 0.2 * (x[1] * 2.0).cos() * x[3].sin();
        let u = sample(spec(), f).unwrap();
        let interp = SpectralInterpolator::new(&u);
        for p in [
            [0.13, 0.87, 2.31, 4.02],
            [3.7, 0.0, 1.1, 5.9],
            [6.0, 6.1, 0.2, 0.3],
        ] {
            assert!((interp.eval(p) - f(p)).abs() < 1e-12);
        }
    }
}
