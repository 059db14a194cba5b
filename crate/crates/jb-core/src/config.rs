/// Numerical policy knobs shared by the kernel.
///
/// All thresholds are explicit so that tests can pin them.
#[derive(Debug, Clone)]
pub struct JpConfig {
    /// Hard cap on dim V^+ at construction time.
    pub max_dim: usize,
    /// Singular values below `rank_tol * sigma_max` count as zero.
    pub rank_tol: f64,
    /// Singular values in `[rank_tol, rank_band] * sigma_max` trigger an
    /// "ambiguous rank" report instead of a silent decision.
    pub rank_band: f64,
    /// Tolerance for idempotent residuals `|Q_e e' - e|`.
    pub idem_tol: f64,
    /// Eigenvalues of D_{e,e'} must lie within this distance of {0,1,2}.
    pub cluster_tol: f64,
    /// Number of homotopy steps for the pair-determinant root continuation.
    pub det_steps: usize,
    /// Condition-number cap for Bergman inversion in quasi-inverse formulas.
    pub bergman_cond_cap: f64,
}

impl Default for JpConfig {
    fn default() -> Self {
        JpConfig {
            max_dim: 64,
            rank_tol: 1e-8,
            rank_band: 1e-6,
            idem_tol: 1e-8,
            cluster_tol: 1e-7,
            det_steps: 64,
            bergman_cond_cap: 1e12,
        }
    }
}
