//! Exact discrete information measures for the sum channel `V = Y + Z`.
//!
//! Everything here is base-2: entropies and mutual informations are in bits,
//! with the convention `0 log 0 = 0` implemented by skipping zero terms, not
//! by flooring. The sum PMF follows the two-branch convolution over a shared
//! level support, where `Y` and `Z` both live on the same `N` levels and `V`
//! on the `2N - 1` pairwise sums.

use crate::error::{Error, Result};
use crate::pmf::Pmf;

const LOG2_E: f64 = std::f64::consts::LOG2_E;

/// Base-2 entropy of a PMF, in bits. Zero-probability entries contribute
/// exactly zero.
pub fn entropy(p: &Pmf) -> f64 {
    entropy_of_probs(p.probs())
}

pub(crate) fn entropy_of_probs(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&q| q > 0.0)
        .map(|&q| q * q.log2())
        .sum::<f64>()
}

/// Support of `V = Y + Z` when both live on the same `N` levels: the
/// `2N - 1` values `2*level(0) + m*step` computed as pairwise sums.
pub(crate) fn sum_support(support: &[f64]) -> Vec<f64> {
    let n = support.len();
    (0..2 * n - 1)
        .map(|m| {
            if m < n {
                support[0] + support[m]
            } else {
                support[m - n + 1] + support[n - 1]
            }
        })
        .collect()
}

/// Two-branch convolution: `pv[m] = sum_k py[m - k] * pz[k]` over the valid
/// index band.
pub(crate) fn convolve(py: &[f64], pz: &[f64], out: &mut Vec<f64>) {
    let n = py.len();
    out.clear();
    out.resize(2 * n - 1, 0.0);
    for (k, &z) in pz.iter().enumerate() {
        if z == 0.0 {
            continue;
        }
        for (j, &y) in py.iter().enumerate() {
            out[j + k] += y * z;
        }
    }
}

fn check_shared_support(p_y: &Pmf, p_z: &Pmf) -> Result<()> {
    if !p_y.same_support(p_z) {
        return Err(Error::SupportMismatch);
    }
    Ok(())
}

/// PMF of `V = Y + Z` for independent `Y` and `Z` on a shared level support.
pub fn sum_pmf(p_y: &Pmf, p_z: &Pmf) -> Result<Pmf> {
    check_shared_support(p_y, p_z)?;
    let mut probs = Vec::new();
    convolve(p_y.probs(), p_z.probs(), &mut probs);
    Pmf::new(sum_support(p_y.support()), probs)
}

/// The privacy objective `I[Y+Z; Y] = H[V] - H[Z]`, in bits.
pub fn mi_objective(p_y: &Pmf, p_z: &Pmf) -> Result<f64> {
    let p_v = sum_pmf(p_y, p_z)?;
    Ok(entropy(&p_v) - entropy(p_z))
}

/// Mutual information `I[V; Y]` computed directly from the enumerated joint
/// distribution of `(V, Y)` and its marginals. Serves as an independent
/// check of [`mi_objective`]; the two agree up to rounding.
pub fn mi_joint_direct(p_y: &Pmf, p_z: &Pmf) -> Result<f64> {
    let joint = JointPmf::of_sum(p_y, p_z)?;
    Ok(joint.mutual_information())
}

/// Gradient of `H[V] - H[Z]` with respect to the noise probabilities, in
/// bits per unit probability. Defined only at interior points: any
/// nonpositive noise probability is an error because the `-H[Z]` term has
/// unbounded slope at the simplex boundary.
pub fn mi_gradient(p_y: &Pmf, p_z: &Pmf) -> Result<Vec<f64>> {
    check_shared_support(p_y, p_z)?;
    let pz = p_z.probs();
    for (k, &z) in pz.iter().enumerate() {
        if z <= 0.0 {
            return Err(Error::GradientAtBoundary { index: k, value: z });
        }
    }
    let py = p_y.probs();
    let mut pv = Vec::new();
    convolve(py, pz, &mut pv);
    let n = py.len();
    let grad = (0..n)
        .map(|k| {
            let mut g = pz[k].log2() + LOG2_E;
            for (j, &y) in py.iter().enumerate() {
                if y > 0.0 {
                    g -= y * (pv[j + k].log2() + LOG2_E);
                }
            }
            g
        })
        .collect();
    Ok(grad)
}

/// Total mutual information of independent per-sensor pairs: the sum of the
/// per-sensor objectives, which equals the joint vector mutual information
/// when sensors are independent.
pub fn decoupled_mi(pairs: &[(&Pmf, &Pmf)]) -> Result<f64> {
    let mut total = 0.0;
    for (p_y, p_z) in pairs {
        total += mi_objective(p_y, p_z)?;
    }
    Ok(total)
}

/// The convexity decomposition of the objective:
/// `I[Y+Z; Y] = H[Y] + f_v - f_z - f_y`, where `f_v` drops the first and
/// last terms of `H[V]` and `f_z`, `f_y` drop the matching corner products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityParts {
    pub f_v: f64,
    pub f_z: f64,
    pub f_y: f64,
    /// `f_v - f_z - f_y`; the objective minus the constant `H[Y]`.
    pub f_total: f64,
}

pub fn convexity_parts(p_y: &Pmf, p_z: &Pmf) -> Result<ConvexityParts> {
    check_shared_support(p_y, p_z)?;
    let py = p_y.probs();
    let pz = p_z.probs();
    let n = py.len();
    let mut pv = Vec::new();
    convolve(py, pz, &mut pv);

    // f_v = -sum_{m=1}^{2n-3} pv_m log pv_m  (drops the two extreme terms)
    let f_v = if n >= 2 {
        -pv[1..2 * n - 2]
            .iter()
            .filter(|&&q| q > 0.0)
            .map(|&q| q * q.log2())
            .sum::<f64>()
    } else {
        0.0
    };
    let plogp = |q: f64| if q > 0.0 { q * q.log2() } else { 0.0 };
    // f_z = H[Z] + py_0 pz_0 log pz_0 + py_{n-1} pz_{n-1} log pz_{n-1}
    let f_z = entropy_of_probs(pz) + py[0] * plogp(pz[0]) + py[n - 1] * plogp(pz[n - 1]);
    let f_y = entropy_of_probs(py) + pz[0] * plogp(py[0]) + pz[n - 1] * plogp(py[n - 1]);
    Ok(ConvexityParts {
        f_v,
        f_z,
        f_y,
        f_total: f_v - f_z - f_y,
    })
}

/// A joint PMF of two discrete variables on ordered real supports.
#[derive(Debug, Clone)]
pub struct JointPmf {
    row_support: Vec<f64>,
    col_support: Vec<f64>,
    /// Row-major matrix, rows x cols.
    probs: Vec<f64>,
}

impl JointPmf {
    pub fn new(row_support: Vec<f64>, col_support: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != row_support.len() * col_support.len() {
            return Err(Error::InvalidPmf(format!(
                "joint matrix has {} entries, expected {} x {}",
                probs.len(),
                row_support.len(),
                col_support.len()
            )));
        }
        let mut total = 0.0;
        for &q in &probs {
            if !q.is_finite() || q < 0.0 {
                return Err(Error::InvalidPmf(format!(
                    "joint probability {q} is invalid"
                )));
            }
            total += q;
        }
        if (total - 1.0).abs() > crate::pmf::PROB_SUM_TOL {
            return Err(Error::InvalidPmf(format!(
                "joint probabilities sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            row_support,
            col_support,
            probs,
        })
    }

    /// Exact joint of `(V, Y)` for `V = Y + Z` with independent `Y`, `Z` on
    /// a shared support: `p(v_m, y_j) = py_j * pz_{m-j}`.
    pub fn of_sum(p_y: &Pmf, p_z: &Pmf) -> Result<Self> {
        check_shared_support(p_y, p_z)?;
        let py = p_y.probs();
        let pz = p_z.probs();
        let n = py.len();
        let rows = 2 * n - 1;
        let mut probs = vec![0.0; rows * n];
        for (j, &y) in py.iter().enumerate() {
            for (k, &z) in pz.iter().enumerate() {
                probs[(j + k) * n + j] += y * z;
            }
        }
        Self::new(sum_support(p_y.support()), p_y.support().to_vec(), probs)
    }

    pub fn row_support(&self) -> &[f64] {
        &self.row_support
    }

    pub fn col_support(&self) -> &[f64] {
        &self.col_support
    }

    pub fn prob(&self, row: usize, col: usize) -> f64 {
        self.probs[row * self.col_support.len() + col]
    }

    pub fn row_marginal(&self) -> Vec<f64> {
        let cols = self.col_support.len();
        self.probs.chunks(cols).map(|r| r.iter().sum()).collect()
    }

    pub fn col_marginal(&self) -> Vec<f64> {
        let cols = self.col_support.len();
        let mut out = vec![0.0; cols];
        for row in self.probs.chunks(cols) {
            for (o, &q) in out.iter_mut().zip(row) {
                *o += q;
            }
        }
        out
    }

    /// Mutual information between the two variables, in bits, straight from
    /// the definition `sum p(x,y) log p(x,y) / (p(x) p(y))`.
    pub fn mutual_information(&self) -> f64 {
        let rows = self.row_support.len();
        let cols = self.col_support.len();
        let pr = self.row_marginal();
        let pc = self.col_marginal();
        let mut mi = 0.0;
        for r in 0..rows {
            for c in 0..cols {
                let q = self.probs[r * cols + c];
                if q > 0.0 {
                    mi += q * (q / (pr[r] * pc[c])).log2();
                }
            }
        }
        mi
    }
}
