//! Numerical ground truth. Linear Gaussian systems generated over a
//! regression graph give every graph-level verdict a checkable number:
//! implied independences must show vanishing partial correlations for every
//! parameter draw, edges present must show substantial ones for some draw.
//! Exact joint tables over a few binary variables do the same job without
//! tolerances.

use crate::bits::NodeSet;
use crate::graph::{Block, NodeId, RegressionGraph, Subclass};
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("SingularConditioningBlock: the conditioning block of the covariance is singular")]
    SingularConditioningBlock,
    #[error("SingularMarginalizedBlock: the marginalized block of the concentration is singular")]
    SingularMarginalizedBlock,
    #[error("PreconditionDependenceTooWeak: {0}")]
    PreconditionDependenceTooWeak(String),
    #[error("GraphTooLarge: {0} nodes exceed what the exact table supports")]
    GraphTooLarge(usize),
    #[error("InvalidConditional: {0}")]
    InvalidConditional(String),
    #[error("SubclassMismatch: expected {expected}, got {found}")]
    SubclassMismatch {
        expected: &'static str,
        found: Subclass,
    },
    #[error("SamplingFailed: no well-conditioned system found")]
    SamplingFailed,
}

/// Tolerances used throughout: asserted zeros, asserted nonzeros, and
/// algebraic identities.
pub const TOL_ZERO: f64 = 1e-10;
pub const TOL_NONZERO: f64 = 1e-6;
pub const TOL_IDENTITY: f64 = 1e-12;

// ── Gaussian systems over regression graphs ──────────────────────────────────

/// A triangular linear system generated over a regression graph: one
/// coefficient per arrow, residual covariances per response block with zeros
/// exactly at missing dashed lines, and a context concentration with zeros
/// exactly at missing full lines.
#[derive(Clone, Debug)]
pub struct GaussianSystem {
    graph: RegressionGraph,
    /// Coefficient of arrow `tail -> head`, keyed `(head, tail)`.
    pub coeffs: BTreeMap<(usize, usize), f64>,
    /// Residual covariance in node-id order (block diagonal; the context
    /// block holds the context covariance).
    pub noise_cov: DMatrix<f64>,
    /// Implied joint covariance in node-id order.
    pub sigma: DMatrix<f64>,
}

impl GaussianSystem {
    pub fn graph(&self) -> &RegressionGraph {
        &self.graph
    }

    pub fn coeff(&self, tail: usize, head: usize) -> f64 {
        self.coeffs.get(&(head, tail)).copied().unwrap_or(0.0)
    }
}

fn ridge_to_spd(m: &mut DMatrix<f64>, margin: f64) {
    let eig = m.clone().symmetric_eigen();
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min < margin {
        let bump = margin - min;
        for i in 0..m.nrows() {
            m[(i, i)] += bump;
        }
    }
}

fn condition_number(m: &DMatrix<f64>) -> f64 {
    let eig = m.clone().symmetric_eigen();
    let max = eig.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

fn signed_magnitude(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    let mag = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        mag
    } else {
        -mag
    }
}

/// Draw a generating system over `g`, deterministic in `seed`. Coefficients
/// have magnitude in `[0.3, 1.0]`, residual variances in `[0.5, 1.5]`, and
/// draws are rejected until the joint covariance has condition number below
/// `1e6`, so every edge carries a substantial parameter.
pub fn sample_system(g: &RegressionGraph, seed: u64) -> Result<GaussianSystem, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.node_count();

    for _attempt in 0..1000 {
        let mut coeffs = BTreeMap::new();
        for (_, _, c) in g.pairs() {
            if let Some((t, h)) = c.arrow {
                coeffs.insert((h, t), signed_magnitude(&mut rng, 0.3, 1.0));
            }
        }

        let mut noise = DMatrix::<f64>::zeros(n, n);
        // response blocks: covariance with zeros at missing dashed lines
        for block in g.response_blocks() {
            let ids = block.clone();
            let k = ids.len();
            let mut w = DMatrix::<f64>::zeros(k, k);
            for i in 0..k {
                w[(i, i)] = rng.gen_range(0.5..1.5);
            }
            for i in 0..k {
                for j in i + 1..k {
                    if g.components(ids[i], ids[j]).dashed {
                        let r = signed_magnitude(&mut rng, 0.3, 0.7)
                            * (w[(i, i)] * w[(j, j)]).sqrt();
                        w[(i, j)] = r;
                        w[(j, i)] = r;
                    }
                }
            }
            ridge_to_spd(&mut w, 0.1);
            for i in 0..k {
                for j in 0..k {
                    noise[(ids[i], ids[j])] = w[(i, j)];
                }
            }
        }
        // context: concentration with zeros at missing full lines
        let ctx = g.context().to_vec();
        if !ctx.is_empty() {
            let k = ctx.len();
            let mut con = DMatrix::<f64>::zeros(k, k);
            for i in 0..k {
                con[(i, i)] = rng.gen_range(0.5..1.5);
            }
            for i in 0..k {
                for j in i + 1..k {
                    if g.components(ctx[i], ctx[j]).full {
                        let r = signed_magnitude(&mut rng, 0.3, 0.7)
                            * (con[(i, i)] * con[(j, j)]).sqrt();
                        con[(i, j)] = r;
                        con[(j, i)] = r;
                    }
                }
            }
            ridge_to_spd(&mut con, 0.1);
            let cov = con
                .clone()
                .try_inverse()
                .ok_or(OracleError::SamplingFailed)?;
            for i in 0..k {
                for j in 0..k {
                    noise[(ctx[i], ctx[j])] = cov[(i, j)];
                }
            }
        }

        // future-first permutation makes the coefficient matrix triangular
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&v| (g.rank_of(v), v));
        let mut pos = vec![0usize; n];
        for (p, &v) in perm.iter().enumerate() {
            pos[v] = p;
        }
        let mut a = DMatrix::<f64>::identity(n, n);
        for (&(h, t), &c) in &coeffs {
            a[(pos[h], pos[t])] = -c;
        }
        let mut w_perm = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                w_perm[(pos[i], pos[j])] = noise[(i, j)];
            }
        }
        let a_inv = a.try_inverse().ok_or(OracleError::SamplingFailed)?;
        let sigma_perm = &a_inv * &w_perm * a_inv.transpose();
        let mut sigma = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                sigma[(i, j)] = sigma_perm[(pos[i], pos[j])];
            }
        }

        if condition_number(&sigma) < 1e6 {
            return Ok(GaussianSystem {
                graph: g.clone(),
                coeffs,
                noise_cov: noise,
                sigma,
            });
        }
    }
    Err(OracleError::SamplingFailed)
}

// ── Covariance and concentration arithmetic ──────────────────────────────────

fn submatrix(m: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// Conditional covariance block `Sigma_{rows,cols | given}` via the Schur
/// complement.
pub fn cond_cov_block(
    sigma: &DMatrix<f64>,
    rows: &[usize],
    cols: &[usize],
    given: &[usize],
) -> Result<DMatrix<f64>, OracleError> {
    let base = submatrix(sigma, rows, cols);
    if given.is_empty() {
        return Ok(base);
    }
    let gg = submatrix(sigma, given, given);
    let chol = gg
        .cholesky()
        .ok_or(OracleError::SingularConditioningBlock)?;
    let gc = submatrix(sigma, given, cols);
    let solved = chol.solve(&gc);
    let rg = submatrix(sigma, rows, given);
    Ok(base - rg * solved)
}

/// Conditional covariance `sigma_{ik|given}`; for one conditioning node this
/// is `sigma_ik - sigma_ig sigma_kg / sigma_gg`.
pub fn cond_cov(
    sigma: &DMatrix<f64>,
    i: usize,
    k: usize,
    given: &[usize],
) -> Result<f64, OracleError> {
    Ok(cond_cov_block(sigma, &[i], &[k], given)?[(0, 0)])
}

/// Partial correlation of `i, k` given a set.
pub fn partial_correlation(
    sigma: &DMatrix<f64>,
    i: usize,
    k: usize,
    given: &[usize],
) -> Result<f64, OracleError> {
    let block = cond_cov_block(sigma, &[i, k], &[i, k], given)?;
    let denom = (block[(0, 0)] * block[(1, 1)]).sqrt();
    if denom <= 0.0 || denom.is_nan() {
        return Err(OracleError::SingularConditioningBlock);
    }
    Ok(block[(0, 1)] / denom)
}

/// Concentration of `i, k` after marginalizing over `over`: the Schur
/// complement `K_rr - K_ro K_oo^{-1} K_or` evaluated at `(i, k)`.
pub fn marg_con(
    conc: &DMatrix<f64>,
    i: usize,
    k: usize,
    over: &[usize],
) -> Result<f64, OracleError> {
    if over.contains(&i) || over.contains(&k) {
        return Err(OracleError::SingularMarginalizedBlock);
    }
    if over.is_empty() {
        return Ok(conc[(i, k)]);
    }
    let oo = submatrix(conc, over, over);
    let chol = oo
        .cholesky()
        .ok_or(OracleError::SingularMarginalizedBlock)?;
    let ok = submatrix(conc, over, &[k]);
    let solved = chol.solve(&ok);
    let io = submatrix(conc, &[i], over);
    Ok(conc[(i, k)] - (io * solved)[(0, 0)])
}

/// Population least-squares coefficient of `regressor` when regressing
/// `response` on `regressor` and `given` jointly.
pub fn regress_coeff(
    sigma: &DMatrix<f64>,
    response: usize,
    regressor: usize,
    given: &[usize],
) -> Result<f64, OracleError> {
    let num = cond_cov(sigma, response, regressor, given)?;
    let den = cond_cov(sigma, regressor, regressor, given)?;
    if den.abs() < 1e-300 {
        return Err(OracleError::SingularConditioningBlock);
    }
    Ok(num / den)
}

/// Draw a random symmetric positive-definite matrix with moderate condition
/// number; used to exercise the parameter identities.
pub fn random_spd(n: usize, rng: &mut StdRng) -> DMatrix<f64> {
    loop {
        let l = DMatrix::<f64>::from_fn(n, n, |i, j| {
            if i > j {
                rng.gen_range(-1.0..1.0)
            } else if i == j {
                rng.gen_range(0.4..1.6)
            } else {
                0.0
            }
        });
        let mut m = &l * l.transpose();
        ridge_to_spd(&mut m, 0.05);
        if condition_number(&m) < 1e6 {
            return m;
        }
    }
}

// ── Exact binary tables over directed acyclic graphs ────────────────────────

/// Exact joint probability table over at most five binary variables,
/// indexed by bit patterns (bit `v` is the value of variable `v`).
#[derive(Clone, Debug)]
pub struct JointTable {
    pub labels: Vec<String>,
    pub probs: Vec<f64>,
}

impl JointTable {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.probs.iter().all(|&p| p > 0.0)
    }

    fn prob_of(&self, fixed: &[(usize, bool)]) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(cfg, _)| fixed.iter().all(|&(v, val)| ((cfg >> v) & 1 == 1) == val))
            .map(|(_, &p)| p)
            .sum()
    }

    /// Exact conditional independence of variable sets `a` and `b` given `c`:
    /// `p(a,b,c) p(c) = p(a,c) p(b,c)` for every configuration.
    pub fn ci(&self, a: &[usize], b: &[usize], c: &[usize], tol: f64) -> bool {
        self.ci_deviation(a, b, c) <= tol
    }

    /// Largest deviation from the factorization identity over configurations.
    pub fn ci_deviation(&self, a: &[usize], b: &[usize], c: &[usize]) -> f64 {
        let mut worst: f64 = 0.0;
        let assignments = |vars: &[usize]| 1usize << vars.len();
        for ca in 0..assignments(a) {
            for cb in 0..assignments(b) {
                for cc in 0..assignments(c) {
                    let mut abc: Vec<(usize, bool)> = Vec::new();
                    for (x, &v) in a.iter().enumerate() {
                        abc.push((v, (ca >> x) & 1 == 1));
                    }
                    for (x, &v) in b.iter().enumerate() {
                        abc.push((v, (cb >> x) & 1 == 1));
                    }
                    let mut cs: Vec<(usize, bool)> = Vec::new();
                    for (x, &v) in c.iter().enumerate() {
                        cs.push((v, (cc >> x) & 1 == 1));
                    }
                    let mut ac = abc[..a.len()].to_vec();
                    ac.extend_from_slice(&cs);
                    let mut bc = abc[a.len()..].to_vec();
                    bc.extend_from_slice(&cs);
                    let mut all = abc.clone();
                    all.extend_from_slice(&cs);
                    let lhs = self.prob_of(&all) * self.prob_of(&cs);
                    let rhs = self.prob_of(&ac) * self.prob_of(&bc);
                    worst = worst.max((lhs - rhs).abs());
                }
            }
        }
        worst
    }

    /// Covariance matrix of the indicator values.
    pub fn covariance_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut mean = vec![0.0; n];
        for (cfg, &p) in self.probs.iter().enumerate() {
            for (v, m) in mean.iter_mut().enumerate() {
                if (cfg >> v) & 1 == 1 {
                    *m += p;
                }
            }
        }
        let mut cov = DMatrix::<f64>::zeros(n, n);
        for (cfg, &p) in self.probs.iter().enumerate() {
            for i in 0..n {
                let xi = ((cfg >> i) & 1) as f64 - mean[i];
                for j in 0..n {
                    let xj = ((cfg >> j) & 1) as f64 - mean[j];
                    cov[(i, j)] += p * xi * xj;
                }
            }
        }
        cov
    }
}

/// Exact joint table over a binary DAG by the chain-rule product. The
/// conditional table of node `v` lists `P(X_v = 1 | parents)` indexed by the
/// parent bits in ascending parent-id order.
pub fn dag_binary_table(
    g: &RegressionGraph,
    conditionals: &BTreeMap<usize, Vec<f64>>,
) -> Result<JointTable, OracleError> {
    if g.classify() != Subclass::Dag {
        return Err(OracleError::SubclassMismatch {
            expected: "arrows-only DAG",
            found: g.classify(),
        });
    }
    let n = g.node_count();
    if n > 5 {
        return Err(OracleError::GraphTooLarge(n));
    }
    for v in 0..n {
        let parents = g.parents_of(v).to_vec();
        let table = conditionals
            .get(&v)
            .ok_or_else(|| OracleError::InvalidConditional(format!("missing table for node {v}")))?;
        if table.len() != 1 << parents.len() {
            return Err(OracleError::InvalidConditional(format!(
                "node {v} needs {} entries, got {}",
                1 << parents.len(),
                table.len()
            )));
        }
        if table.iter().any(|&p| !(p > 0.0 && p < 1.0)) {
            return Err(OracleError::InvalidConditional(format!(
                "node {v} has entries outside (0, 1)"
            )));
        }
    }
    let mut probs = vec![0.0; 1 << n];
    for (cfg, slot) in probs.iter_mut().enumerate() {
        let mut p = 1.0;
        for v in 0..n {
            let parents = g.parents_of(v).to_vec();
            let mut idx = 0usize;
            for (x, &pa) in parents.iter().enumerate() {
                if (cfg >> pa) & 1 == 1 {
                    idx |= 1 << x;
                }
            }
            let p1 = conditionals[&v][idx];
            p *= if (cfg >> v) & 1 == 1 { p1 } else { 1.0 - p1 };
        }
        *slot = p;
    }
    Ok(JointTable {
        labels: g.labels().to_vec(),
        probs,
    })
}

// ── Distribution-level property checks ───────────────────────────────────────

/// A distribution the property checks can interrogate: a Gaussian covariance
/// or an exact binary table.
#[derive(Clone, Copy, Debug)]
pub enum Dist<'a> {
    Gaussian(&'a DMatrix<f64>),
    Binary(&'a JointTable),
}

impl<'a> Dist<'a> {
    /// Does `a` independent of `b` given `c` hold in this distribution?
    pub fn independent(&self, a: &[usize], b: &[usize], c: &[usize]) -> bool {
        self.dependence_measure(a, b, c) <= match self {
            Dist::Gaussian(_) => TOL_ZERO,
            Dist::Binary(_) => TOL_IDENTITY,
        }
    }

    /// Scale of the dependence between `a` and `b` given `c`: the largest
    /// partial correlation (Gaussian) or factorization deviation (binary).
    pub fn dependence_measure(&self, a: &[usize], b: &[usize], c: &[usize]) -> f64 {
        match self {
            Dist::Gaussian(sigma) => {
                let mut worst: f64 = 0.0;
                for &i in a {
                    for &k in b {
                        let r = partial_correlation(sigma, i, k, c).unwrap_or(1.0);
                        worst = worst.max(r.abs());
                    }
                }
                worst
            }
            Dist::Binary(t) => t.ci_deviation(a, b, c),
        }
    }
}

/// Evaluation of the upward and downward combination of pairwise
/// independences for three variables in one distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinationReport {
    pub i_indep_h: bool,
    pub i_indep_k: bool,
    pub i_indep_hk: bool,
    pub i_indep_h_given_k: bool,
    pub i_indep_k_given_h: bool,
    /// `(i indep h and i indep k) => i indep (h,k) => (i indep h|k and i indep k|h)`.
    pub upward_holds: bool,
    /// `(i indep h|k and i indep k|h) => i indep (h,k) => (i indep h and i indep k)`.
    pub downward_holds: bool,
}

/// Check the upward (composition) and downward (intersection) combination of
/// pairwise independences on one distribution.
pub fn check_combination_properties(
    dist: Dist<'_>,
    i: usize,
    h: usize,
    k: usize,
) -> CombinationReport {
    let i_indep_h = dist.independent(&[i], &[h], &[]);
    let i_indep_k = dist.independent(&[i], &[k], &[]);
    let i_indep_hk = dist.independent(&[i], &[h, k], &[]);
    let i_indep_h_given_k = dist.independent(&[i], &[h], &[k]);
    let i_indep_k_given_h = dist.independent(&[i], &[k], &[h]);
    let implies = |p: bool, q: bool| !p || q;
    let upward_holds = implies(i_indep_h && i_indep_k, i_indep_hk)
        && implies(i_indep_hk, i_indep_h_given_k && i_indep_k_given_h);
    let downward_holds = implies(i_indep_h_given_k && i_indep_k_given_h, i_indep_hk)
        && implies(i_indep_hk, i_indep_h && i_indep_k);
    CombinationReport {
        i_indep_h,
        i_indep_k,
        i_indep_hk,
        i_indep_h_given_k,
        i_indep_k_given_h,
        upward_holds,
        downward_holds,
    }
}

/// Result of a singleton-transitivity check: when both members of a pair
/// depend on the inner variable, at most one of the pair's marginal and
/// conditional independences can hold.
#[derive(Clone, Debug)]
pub struct SingletonReport {
    /// Dependence scale of the pair given nothing.
    pub marginal_measure: f64,
    /// Dependence scale of the pair given the inner node.
    pub conditional_measure: f64,
    /// Both statements hold at tolerance: the impossible constellation.
    pub violated: bool,
    /// How far the distribution is from an exact double independence
    /// (the larger of the two measures; small values are near-violations).
    pub distance_from_violation: f64,
}

/// Verify singleton transitivity for `(i, k)` with common neighbour `inner`.
/// Errs when the precondition `i` depends on `inner` and `k` depends on
/// `inner` does not hold beyond `precondition_tol`.
pub fn check_singleton_transitivity(
    dist: Dist<'_>,
    i: usize,
    k: usize,
    inner: usize,
    precondition_tol: f64,
) -> Result<SingletonReport, OracleError> {
    let dep_i = dist.dependence_measure(&[i], &[inner], &[]);
    let dep_k = dist.dependence_measure(&[k], &[inner], &[]);
    if dep_i <= precondition_tol || dep_k <= precondition_tol {
        return Err(OracleError::PreconditionDependenceTooWeak(format!(
            "dependence on the inner variable is {dep_i:.3e} and {dep_k:.3e}"
        )));
    }
    let marginal_measure = dist.dependence_measure(&[i], &[k], &[]);
    let conditional_measure = dist.dependence_measure(&[i], &[k], &[inner]);
    let zero_tol = match dist {
        Dist::Gaussian(_) => TOL_ZERO,
        Dist::Binary(_) => TOL_IDENTITY,
    };
    Ok(SingletonReport {
        marginal_measure,
        conditional_measure,
        violated: marginal_measure <= zero_tol && conditional_measure <= zero_tol,
        distance_from_violation: marginal_measure.max(conditional_measure),
    })
}

// ── Pairwise defining statements of a regression graph ───────────────────────

/// The pairwise statement a node pair carries: its conditioning set per the
/// block reading, and whether the pair is coupled (dependence expected) or
/// uncoupled (independence implied).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairwiseStatement {
    pub i: NodeId,
    pub k: NodeId,
    pub given: NodeSet,
    pub edge_present: bool,
}

/// Defining pairwise statements of a regression graph: a full-line pair is
/// read given the remaining context, a dashed pair given the past of its
/// block, an arrow pair given the past of the response except the regressor.
pub fn pairwise_statements(g: &RegressionGraph) -> Vec<PairwiseStatement> {
    let n = g.node_count();
    let context: NodeSet = g.context().iter().copied().collect();
    let mut out = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            let given = if g.block_of(i) == Block::Context && g.block_of(k) == Block::Context {
                context.without(i).without(k)
            } else {
                // the node in the more recent block is the response
                let (fut, past) = if g.rank_of(i) <= g.rank_of(k) {
                    (i, k)
                } else {
                    (k, i)
                };
                g.past_of(fut).without(past)
            };
            out.push(PairwiseStatement {
                i: NodeId(i),
                k: NodeId(k),
                given,
                edge_present: g.coupled(i, k),
            });
        }
    }
    out
}
