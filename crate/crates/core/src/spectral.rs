//! Orthonormal DCT-II/DCT-III pair, spectral energy accounting, and the
//! SNR estimate that drives adaptive filtering.
//!
//! Forward transform (DCT-II, orthonormal scaling):
//!
//! ```text
//! c_k = s_k * sum_t x_t * cos(pi * (2t + 1) * k / (2N))
//! s_0 = sqrt(1/N),  s_k = sqrt(2/N) for k >= 1
//! ```
//!
//! With this scaling the transform matrix is orthogonal: the inverse is its
//! transpose (DCT-III) and energy is conserved, `sum x_t^2 = sum c_k^2`,
//! which is what makes the high-band energy ratio meaningful. The transform
//! is a direct O(N^2) matrix product; sequences here are at most a few
//! hundred frames, so there is nothing to gain from an FFT path.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("series is empty")]
    EmptySeries,
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },
    #[error("series has length {actual}, plan expects {expected}")]
    PlanLengthMismatch { expected: usize, actual: usize },
}

/// DCT coefficients of one channel, index 0 = DC.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpectrum {
    coeffs: Vec<f64>,
    source_len: usize,
}

impl ChannelSpectrum {
    /// Wraps raw coefficients; the source length always equals the
    /// coefficient count (full-length transform, no truncation). Every
    /// coefficient must be finite — this also catches a forward transform
    /// overflowing on extreme input magnitudes.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Result<Self, SpectralError> {
        if coeffs.is_empty() {
            return Err(SpectralError::EmptySpectrum);
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(SpectralError::NonFinite { index: i });
        }
        let source_len = coeffs.len();
        Ok(ChannelSpectrum { coeffs, source_len })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Energy at indices >= k0.
    pub fn high_band_energy(&self, k0: usize) -> f64 {
        self.coeffs.iter().skip(k0).map(|c| c * c).sum()
    }
}

/// Precomputed N x N orthonormal DCT-II basis, reused across the channels
/// of one sequence.
#[derive(Debug, Clone)]
pub struct DctPlan {
    n: usize,
    /// Row-major: basis[k * n + t] = s_k * cos(pi (2t+1) k / (2n)).
    basis: Vec<f64>,
}

impl DctPlan {
    pub fn new(n: usize) -> Result<Self, SpectralError> {
        if n == 0 {
            return Err(SpectralError::EmptySeries);
        }
        let mut basis = vec![0.0; n * n];
        let norm0 = (1.0 / n as f64).sqrt();
        let norm = (2.0 / n as f64).sqrt();
        for k in 0..n {
            let s = if k == 0 { norm0 } else { norm };
            for t in 0..n {
                basis[k * n + t] =
                    s * (std::f64::consts::PI * (2 * t + 1) as f64 * k as f64 / (2 * n) as f64)
                        .cos();
            }
        }
        Ok(DctPlan { n, basis })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dct(&self, series: &[f64]) -> Result<ChannelSpectrum, SpectralError> {
        if series.len() != self.n {
            return Err(SpectralError::PlanLengthMismatch {
                expected: self.n,
                actual: series.len(),
            });
        }
        if let Some(i) = series.iter().position(|v| !v.is_finite()) {
            return Err(SpectralError::NonFinite { index: i });
        }
        let coeffs = (0..self.n)
            .map(|k| {
                let row = &self.basis[k * self.n..(k + 1) * self.n];
                row.iter().zip(series).map(|(b, x)| b * x).sum()
            })
            .collect();
        ChannelSpectrum::from_coeffs(coeffs)
    }

    /// Inverse transform; the basis is orthogonal, so this is the transpose
    /// product.
    pub fn idct(&self, spectrum: &ChannelSpectrum) -> Result<Vec<f64>, SpectralError> {
        if spectrum.len() != self.n {
            return Err(SpectralError::PlanLengthMismatch {
                expected: self.n,
                actual: spectrum.len(),
            });
        }
        let series: Vec<f64> = (0..self.n)
            .map(|t| (0..self.n).map(|k| self.basis[k * self.n + t] * spectrum.coeffs[k]).sum())
            .collect();
        if let Some(i) = series.iter().position(|v| !v.is_finite()) {
            return Err(SpectralError::NonFinite { index: i });
        }
        Ok(series)
    }
}

/// One-shot forward transform.
pub fn dct(series: &[f64]) -> Result<ChannelSpectrum, SpectralError> {
    if series.is_empty() {
        return Err(SpectralError::EmptySeries);
    }
    DctPlan::new(series.len())?.dct(series)
}

/// One-shot inverse transform.
pub fn idct(spectrum: &ChannelSpectrum) -> Result<Vec<f64>, SpectralError> {
    if spectrum.is_empty() {
        return Err(SpectralError::EmptySpectrum);
    }
    DctPlan::new(spectrum.len())?.idct(spectrum)
}

/// Fraction of spectral energy at or above the cutoff:
/// `rho = E_high / (E_total + epsilon)`.
///
/// With `include_dc = false` the DC term is dropped from both sums, keeping
/// the result in [0, 1) unconditionally. A cutoff at or past the end gives
/// 0; a zero-energy channel gives 0 via the epsilon guard.
pub fn high_freq_ratio(
    spectrum: &ChannelSpectrum,
    k0: usize,
    include_dc: bool,
    epsilon: f64,
) -> f64 {
    debug_assert!(epsilon > 0.0);
    let lo = usize::from(!include_dc);
    let denom: f64 = spectrum.coeffs.iter().skip(lo).map(|c| c * c).sum();
    let num: f64 = spectrum.coeffs.iter().skip(k0.max(lo)).map(|c| c * c).sum();
    num / (denom + epsilon)
}

/// SNR proxy `(1 - rho) / (rho + epsilon)`: 0 for pure noise, ~1/epsilon
/// for a clean channel.
pub fn estimate_snr(rho: f64, epsilon: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&rho) && epsilon > 0.0);
    (1.0 - rho) / (rho + epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    const EPS: f64 = 1e-8;

    fn random_series(n: usize, seed: u64) -> Vec<f64> {
        let mut r = SplitMix64::new(seed);
        (0..n).map(|_| r.next_normal()).collect()
    }

    #[test]
    fn constant_signal_is_pure_dc() {
        let s = dct(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(s.coeffs()[0], 2.0);
        for &c in &s.coeffs()[1..] {
            assert!(c.abs() < 1e-12, "leak {c}");
        }
        let back = idct(&ChannelSpectrum::from_coeffs(vec![2.0, 0.0, 0.0, 0.0]).unwrap()).unwrap();
        for v in back {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_maps_to_zero_both_ways() {
        let s = dct(&[0.0; 6]).unwrap();
        assert!(s.coeffs().iter().all(|&c| c == 0.0));
        assert!(idct(&s).unwrap().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn roundtrip_length_64() {
        let x = random_series(64, 11);
        let back = idct(&dct(&x).unwrap()).unwrap();
        let worst = x.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-10, "max abs err {worst}");
    }

    #[test]
    fn parseval_length_128() {
        let x = random_series(128, 12);
        let ex: f64 = x.iter().map(|v| v * v).sum();
        let ec = dct(&x).unwrap().energy();
        assert!((ex - ec).abs() / ex < 1e-9);
    }

    #[test]
    fn linearity() {
        let (x, y) = (random_series(40, 13), random_series(40, 14));
        let (a, b) = (1.7, -0.3);
        let combined: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
        let lhs = dct(&combined).unwrap();
        let (cx, cy) = (dct(&x).unwrap(), dct(&y).unwrap());
        for k in 0..40 {
            let rhs = a * cx.coeffs()[k] + b * cy.coeffs()[k];
            assert!((lhs.coeffs()[k] - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn basis_is_orthonormal_up_to_64() {
        for n in [1usize, 2, 3, 5, 8, 16, 33, 64] {
            let plan = DctPlan::new(n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let dot: f64 = (0..n)
                        .map(|t| plan.basis[i * n + t] * plan.basis[j * n + t])
                        .sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - want).abs() < 1e-10, "n={n} gram[{i}][{j}]={dot}");
                }
            }
        }
    }

    #[test]
    fn ratio_fixtures() {
        let sp = |c: &[f64]| ChannelSpectrum::from_coeffs(c.to_vec()).unwrap();
        assert_eq!(high_freq_ratio(&sp(&[1.0, 0.0, 0.0, 0.0]), 2, true, EPS), 0.0);
        let all_high = high_freq_ratio(&sp(&[0.0, 0.0, 1.0, 1.0]), 2, true, EPS);
        assert!((all_high - 2.0 / (2.0 + EPS)).abs() < 1e-15);
        let split = high_freq_ratio(&sp(&[1.0, 1.0, 1.0, 1.0]), 2, true, EPS);
        assert!((split - 2.0 / (4.0 + EPS)).abs() < 1e-15);
    }

    #[test]
    fn ratio_edge_cases() {
        let sp = ChannelSpectrum::from_coeffs(vec![3.0, 1.0, 2.0]).unwrap();
        // cutoff at or past the end: no high band
        assert_eq!(high_freq_ratio(&sp, 3, true, EPS), 0.0);
        assert_eq!(high_freq_ratio(&sp, 7, true, EPS), 0.0);
        // zero-energy channel guarded by epsilon
        let zero = ChannelSpectrum::from_coeffs(vec![0.0; 4]).unwrap();
        assert_eq!(high_freq_ratio(&zero, 2, true, EPS), 0.0);
        // excluding DC drops it from numerator and denominator alike
        let r = high_freq_ratio(&sp, 0, false, EPS);
        assert!((r - 5.0 / (5.0 + EPS)).abs() < 1e-15);
        assert!(r < 1.0);
    }

    #[test]
    fn snr_fixtures() {
        let snr_half = estimate_snr(0.5, EPS);
        assert!((snr_half - 1.0).abs() < 1e-7);
        let snr_clean = estimate_snr(0.0, EPS);
        assert!((snr_clean - 1e8).abs() / 1e8 < 1e-12);
        assert_eq!(estimate_snr(1.0, EPS), 0.0);
    }

    #[test]
    fn plan_rejects_wrong_length() {
        let plan = DctPlan::new(8).unwrap();
        assert!(matches!(
            plan.dct(&[0.0; 7]),
            Err(SpectralError::PlanLengthMismatch { expected: 8, actual: 7 })
        ));
    }

    #[test]
    fn dct_rejects_empty_and_nonfinite() {
        assert_eq!(dct(&[]), Err(SpectralError::EmptySeries));
        assert_eq!(dct(&[1.0, f64::NAN]), Err(SpectralError::NonFinite { index: 1 }));
    }
}
