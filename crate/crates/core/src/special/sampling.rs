//! Reproducible random streams and the samplers used to generate replicates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A reproducible random stream identified by `(master_seed, stream_index)`.
///
/// The generator is ChaCha8 keyed from the master seed with the stream index
/// selecting the ChaCha stream, so distinct indices never overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeededStream {
    master_seed: u64,
    stream_index: u64,
}

impl SeededStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self { master_seed, stream_index }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Sibling stream `by` positions further along; `offset(0)` is `self`.
    pub fn offset(&self, by: u64) -> Self {
        Self::new(self.master_seed, self.stream_index.wrapping_add(by))
    }

    /// Child stream for replicate `index`.
    ///
    /// Depends only on `(self, index)`, never on how many replicates or
    /// workers exist.
    pub fn replicate(&self, index: u64) -> Self {
        let key = splitmix64(self.master_seed ^ splitmix64(self.stream_index));
        Self::new(key, index)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return domain("sample size must be at least 1");
    }
    Ok(())
}

/// `n` independent draws from `N(mu, sigma)`.
pub fn sample_normal(stream: &SeededStream, mu: f64, sigma: f64, n: usize) -> Result<Vec<f64>> {
    check_count(n)?;
    if !(sigma > 0.0 && sigma.is_finite()) || !mu.is_finite() {
        return domain(format!("normal requires finite mu and sigma > 0 (mu = {mu}, sigma = {sigma})"));
    }
    let mut rng = stream.rng();
    Ok((0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            mu + sigma * z
        })
        .collect())
}

/// `n` independent 0/1 indicators with success probability `p`.
pub fn sample_bernoulli(stream: &SeededStream, p: f64, n: usize) -> Result<Vec<f64>> {
    check_count(n)?;
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("Bernoulli rate {p} is outside [0, 1]"));
    }
    let mut rng = stream.rng();
    Ok((0..n).map(|_| if rng.random::<f64>() < p { 1.0 } else { 0.0 }).collect())
}

/// Bernoulli draws rescaled to take `target_mean / p` with probability `p`
/// and zero otherwise, so the population mean is `target_mean`.
pub fn sample_scaled_bernoulli(
    stream: &SeededStream,
    p: f64,
    target_mean: f64,
    n: usize,
) -> Result<Vec<f64>> {
    check_count(n)?;
    if !(p > 0.0 && p <= 1.0) {
        return domain(format!("scaled Bernoulli requires 0 < p <= 1, got {p}"));
    }
    if !(target_mean > 0.0 && target_mean.is_finite()) {
        return domain(format!("scaled Bernoulli mean must be positive, got {target_mean}"));
    }
    let high = target_mean / p;
    let mut rng = stream.rng();
    Ok((0..n).map(|_| if rng.random::<f64>() < p { high } else { 0.0 }).collect())
}

/// Population skewness of the scaled Bernoulli, `(1 - 2p) / √(p(1-p))`.
///
/// Scaling does not change skewness, so this is the Bernoulli value.
pub fn scaled_bernoulli_skewness(p: f64) -> f64 {
    (1.0 - 2.0 * p) / (p * (1.0 - p)).sqrt()
}

/// Validates Gaussian mixture parameters.
pub fn check_mixture(weights: &[f64], mus: &[f64], sigmas: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return domain("mixture needs at least one component");
    }
    if weights.len() != mus.len() || weights.len() != sigmas.len() {
        return domain(format!(
            "mixture component lists differ in length ({} weights, {} means, {} sigmas)",
            weights.len(),
            mus.len(),
            sigmas.len()
        ));
    }
    if weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
        return domain("mixture weights must lie in [0, 1]");
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return domain(format!("mixture weights sum to {total}, not 1"));
    }
    if sigmas.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
        return domain("mixture sigmas must be positive");
    }
    if mus.iter().any(|m| !m.is_finite()) {
        return domain("mixture means must be finite");
    }
    Ok(())
}

/// `n` independent draws from `Σ w_j N(mu_j, sigma_j)`.
///
/// A single component delegates to [`sample_normal`] and reproduces it exactly.
pub fn sample_mixture(
    stream: &SeededStream,
    weights: &[f64],
    mus: &[f64],
    sigmas: &[f64],
    n: usize,
) -> Result<Vec<f64>> {
    check_count(n)?;
    check_mixture(weights, mus, sigmas)?;
    if weights.len() == 1 {
        return sample_normal(stream, mus[0], sigmas[0], n);
    }
    let mut cumulative = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for w in weights {
        acc += w;
        cumulative.push(acc);
    }
    let last_live = weights.iter().rposition(|w| *w > 0.0).unwrap_or(0);
    let mut rng = stream.rng();
    Ok((0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let j = cumulative.iter().position(|c| u < *c).unwrap_or(last_live).min(last_live);
            let z: f64 = rng.sample(StandardNormal);
            mus[j] + sigmas[j] * z
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const BIG: usize = 1_000_000;

    fn mean(v: &[f64]) -> f64 {
        v.iter().sum::<f64>() / v.len() as f64
    }

    #[test]
    fn normal_mean_within_clt_bound() {
        let xs = sample_normal(&SeededStream::new(17, 0), 0.0, 1.0, BIG).unwrap();
        assert!(mean(&xs).abs() <= 0.005);
    }

    #[test]
    fn replay_is_identical() {
        let s = SeededStream::new(99, 3);
        assert_eq!(sample_normal(&s, 1.0, 2.0, 100).unwrap(), sample_normal(&s, 1.0, 2.0, 100).unwrap());
        assert_eq!(sample_bernoulli(&s, 0.3, 100).unwrap(), sample_bernoulli(&s, 0.3, 100).unwrap());
    }

    #[test]
    fn location_scale() {
        let s = SeededStream::new(5, 8);
        let z = sample_normal(&s, 0.0, 1.0, 64).unwrap();
        let x = sample_normal(&s, 4.0, 3.0, 64).unwrap();
        for (zi, xi) in z.iter().zip(&x) {
            assert_eq!(*xi, 4.0 + 3.0 * zi);
        }
    }

    #[test]
    fn distinct_streams_differ() {
        let a = sample_normal(&SeededStream::new(1, 0), 0.0, 1.0, 8).unwrap();
        let b = sample_normal(&SeededStream::new(1, 1), 0.0, 1.0, 8).unwrap();
        let c = sample_normal(&SeededStream::new(1, 0).replicate(0), 0.0, 1.0, 8).unwrap();
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(SeededStream::new(4, 2).offset(0), SeededStream::new(4, 2));
    }

    #[test]
    fn bernoulli_extremes_and_rate() {
        let s = SeededStream::new(11, 0);
        assert!(sample_bernoulli(&s, 0.0, 1000).unwrap().iter().all(|x| *x == 0.0));
        assert!(sample_bernoulli(&s, 1.0, 1000).unwrap().iter().all(|x| *x == 1.0));
        let xs = sample_bernoulli(&s, 0.5, BIG).unwrap();
        assert!((mean(&xs) - 0.5).abs() <= 0.0025);
        assert!(sample_bernoulli(&s, 1.5, 10).is_err());
        assert!(sample_bernoulli(&s, 0.5, 0).is_err());
    }

    #[test]
    fn scaled_bernoulli_support_mean_and_skewness() {
        let s = SeededStream::new(23, 0);
        let xs = sample_scaled_bernoulli(&s, 0.5, 2.0, 1000).unwrap();
        assert!(xs.iter().all(|x| *x == 0.0 || *x == 4.0));
        let xs = sample_scaled_bernoulli(&s, 0.2, 2.0, BIG).unwrap();
        assert!(xs.iter().all(|x| *x == 0.0 || *x == 10.0));
        // population sd of the p = 0.2 family is 10·√(0.16) = 4
        let se = 4.0 / (BIG as f64).sqrt();
        assert!((mean(&xs) - 2.0).abs() <= 5.0 * se);

        assert_eq!(scaled_bernoulli_skewness(0.5), 0.0);
        assert!((scaled_bernoulli_skewness(0.2) - 1.5).abs() < 1e-12);
        assert!((scaled_bernoulli_skewness(0.05) - 4.129).abs() < 5e-4);
        assert!(sample_scaled_bernoulli(&s, 0.0, 2.0, 5).is_err());
    }

    #[test]
    fn mixture_behaviour() {
        let s = SeededStream::new(31, 2);
        assert_eq!(
            sample_mixture(&s, &[1.0], &[4.0], &[3.0], 50).unwrap(),
            sample_normal(&s, 4.0, 3.0, 50).unwrap()
        );
        let xs = sample_mixture(&s, &[0.5, 0.5], &[4.0, 5.0], &[3.0, 1.5], BIG).unwrap();
        assert!((mean(&xs) - 4.5).abs() <= 0.012);
        // weights (1, 0): every draw from the first component, which here is
        // far from the second
        let xs = sample_mixture(&s, &[1.0, 0.0], &[-100.0, 100.0], &[1.0, 1.0], 10_000).unwrap();
        assert!(xs.iter().all(|x| *x < 0.0));
        assert!(sample_mixture(&s, &[0.5, 0.6], &[0.0, 1.0], &[1.0, 1.0], 5).is_err());
        assert!(sample_mixture(&s, &[0.5, 0.5], &[0.0], &[1.0, 1.0], 5).is_err());
    }
}
