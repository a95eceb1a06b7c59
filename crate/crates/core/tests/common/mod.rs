//! Reference values computed independently (SciPy / mpmath enumeration over
//! the binomial support) before the implementation existed.
#![allow(dead_code)]

/// Jeffreys posterior, n = 10: `sup_α (α - S(α))` on the 1001-point grid.
pub const JEFFREYS_N10_DEFICIT: [(f64, f64); 5] = [
    (0.1, 0.206_678_440_10),
    (0.2, 0.148_809_638_40),
    (0.3, 0.129_610_718_40),
    (0.4, 0.124_103_257_60),
    (0.5, 0.122_046_875_00),
];

/// Chebyshev UCL, scaled Bernoulli p = 0.2, mean 2, n = 5: coverage at α = 0.95
/// (every sample with a success covers, so `1 - 0.8^5`).
pub const CHEBYSHEV_P020_N5_COVERAGE: f64 = 0.67232;

/// Chebyshev UCL, scaled Bernoulli p = 0.05, mean 2, n = 30: deficit at α = 0.95.
pub const CHEBYSHEV_P005_N30_DEFICIT: f64 = 0.164_638_763_942_937_75;

/// Clopper-Pearson at θ0 = 0.4: area between the band curves, n = 10, 50, 250.
pub const CP_AREA: [(usize, f64); 3] = [(10, 0.17998), (50, 0.08127), (250, 0.03640)];

/// Scaled c-box at θ0 = 0.4, n = 20: area between the band curves.
pub const SCALED_CBOX_AREA: [(f64, f64); 3] = [(0.5, 0.0646), (1.0, 0.12804), (3.0, 0.36230)];

/// Gaussian-mixture scenario used by the predictive checks.
pub const MIXTURE: ([f64; 2], [f64; 2], [f64; 2]) = ([0.5, 0.5], [4.0, 5.0], [3.0, 1.5]);
