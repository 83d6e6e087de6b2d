//! Generic PGD driver: greedy rank-one enrichment with an alternating
//! direction fixed point per mode.
//!
//! The spatial direction is kept unseparated behind the [`SpatialSolver`]
//! boundary; parametric directions are collocated, so their mass matrices are
//! diagonal and each parametric step is a pointwise solve. The solver
//! interface is deliberately narrow: besides assembling and solving the
//! weighted spatial system it only has to report the spatial inner products
//! uᵀ S_q v that the parametric steps need — the part of the algorithm that
//! cannot be fully non-intrusive.

use crate::error::Error;
use crate::linalg::{axpy, dot, DenseVector};
use crate::separated::{
    normalize_mode, weighted_inner, weighted_spatial_norm, Mode, ParameterAxis, SeparatedSolution,
};

/// Boundary between the PGD driver and an existing spatial field solver.
///
/// `solve` must be deterministic: identical weights and right-hand sides
/// return identical vectors. Solutions live on the full node set with zeros
/// at Dirichlet nodes; the lift carries the inhomogeneous boundary values.
pub trait SpatialSolver {
    fn n_nodes(&self) -> usize;

    /// Number of separated coefficient terms (n_sigma).
    fn n_terms(&self) -> usize;

    /// Fixed field satisfying the inhomogeneous Dirichlet data, or None when
    /// the data is homogeneous.
    fn lift(&self) -> Option<&[f64]>;

    /// Whether any Dirichlet nodes exist (an empty set plus an empty RHS is
    /// an empty problem).
    fn has_dirichlet(&self) -> bool;

    /// Dual-volume weights defining the discrete spatial L2 norm.
    fn spatial_weights(&self) -> &[f64];

    /// Solves (Σ_q w_q S_q) u = rhs on the free nodes and embeds the result
    /// with zeros at Dirichlet nodes. `rhs` is a full-length vector; only its
    /// free entries enter the reduced system.
    fn solve(&mut self, term_weights: &[f64], rhs: &[f64]) -> Result<DenseVector, Error>;

    /// S_q · u on the full node set.
    fn apply_term(&self, q: usize, u: &[f64]) -> DenseVector;

    /// uᵀ S_q v on the full node set.
    fn inner_term(&self, q: usize, u: &[f64], v: &[f64]) -> f64;

    /// Zeroes the Dirichlet entries of a full vector (projection onto the
    /// homogeneous trial space).
    fn project_free(&self, u: &[f64]) -> DenseVector;
}

/// Run configuration for one enrichment.
#[derive(Debug, Clone, PartialEq)]
pub struct PgdConfig {
    /// Relative fixed-point tolerance on Δ^(k)/‖u^{m,k}‖.
    pub tol_fp: f64,
    /// Relative enrichment tolerance on ‖u^m‖/‖u^1‖.
    pub tol_pgd: f64,
    pub max_modes: usize,
    pub max_fp_iters: usize,
    /// Visit order of the parameter axes within one sweep (the spatial
    /// direction always comes first). None means declaration order.
    pub sweep_order: Option<Vec<usize>>,
}

impl PgdConfig {
    pub fn new(tol_fp: f64, tol_pgd: f64, max_modes: usize, max_fp_iters: usize) -> Self {
        PgdConfig {
            tol_fp,
            tol_pgd,
            max_modes,
            max_fp_iters,
            sweep_order: None,
        }
    }

    pub fn validate(&self, n_axes: usize) -> Result<(), Error> {
        if !(self.tol_fp > 0.0 && self.tol_fp < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "tol_fp must be in (0,1), got {}",
                self.tol_fp
            )));
        }
        if !(self.tol_pgd > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tol_pgd must be positive, got {}",
                self.tol_pgd
            )));
        }
        if self.max_modes == 0 {
            return Err(Error::InvalidConfig("max_modes must be >= 1".into()));
        }
        if self.max_fp_iters == 0 {
            return Err(Error::InvalidConfig("max_fp_iters must be >= 1".into()));
        }
        if let Some(order) = &self.sweep_order {
            let mut seen = vec![false; n_axes];
            if order.len() != n_axes {
                return Err(Error::InvalidConfig(
                    "sweep_order must list every parameter axis exactly once".into(),
                ));
            }
            for &p in order {
                if p >= n_axes || seen[p] {
                    return Err(Error::InvalidConfig(
                        "sweep_order must be a permutation of the axis indices".into(),
                    ));
                }
                seen[p] = true;
            }
        }
        Ok(())
    }
}

/// Per-mode convergence telemetry.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeReport {
    /// ‖u^m‖ after finalization (0.0 for a null direction).
    pub magnitude: f64,
    pub fp_iterations: usize,
    pub spatial_calls: usize,
    /// Δ^(k) per fixed-point iteration.
    pub delta_trace: Vec<f64>,
    /// Δ^(k)/‖u^{m,k}‖ per iteration (the stopping quantity).
    pub rel_delta_trace: Vec<f64>,
    /// Fixed point reached tol_fp before max_fp_iters.
    pub converged: bool,
    /// Mode kept in the solution (false: rejected by tol_pgd or null).
    pub accepted: bool,
}

/// Convergence telemetry for a whole enrichment run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PgdReport {
    pub modes: Vec<ModeReport>,
    pub total_spatial_calls: usize,
    pub accepted_modes: usize,
}

/// Direction selector: the unseparated spatial block or one parameter axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Spatial,
    Parametric(usize),
}

/// Scalar couplings α_{q,p}^{i,j} = (u_p^i)ᵀ M_{q,p} u_p^j for all separated
/// directions, indexed by (term, direction, solution i, solution j).
///
/// Solution index 0 is the lift (parametric factors ≡ 1), 1..=n_frozen the
/// frozen modes, and the last index the mode currently being computed.
/// Entries among frozen solutions are constant across fixed-point iterations;
/// only the current mode's row changes.
#[derive(Debug, Clone)]
pub struct AlphaTable {
    n_terms: usize,
    n_dirs: usize,
    n_sols: usize,
    data: Vec<f64>,
}

impl AlphaTable {
    fn zeros(n_terms: usize, n_dirs: usize, n_sols: usize) -> Self {
        AlphaTable {
            n_terms,
            n_dirs,
            n_sols,
            data: vec![0.0; n_terms * n_dirs * n_sols * n_sols],
        }
    }

    #[inline]
    fn idx(&self, q: usize, dir: usize, i: usize, j: usize) -> usize {
        debug_assert!(q < self.n_terms && dir < self.n_dirs && i < self.n_sols && j < self.n_sols);
        ((q * self.n_dirs + dir) * self.n_sols + i) * self.n_sols + j
    }

    pub fn get(&self, q: usize, dir: Direction, i: usize, j: usize) -> f64 {
        let d = match dir {
            Direction::Spatial => 0,
            Direction::Parametric(p) => p + 1,
        };
        self.data[self.idx(q, d, i, j)]
    }

    fn set_sym(&mut self, q: usize, dir: usize, i: usize, j: usize, v: f64) {
        let a = self.idx(q, dir, i, j);
        self.data[a] = v;
        let b = self.idx(q, dir, j, i);
        self.data[b] = v;
    }
}

/// Outcome of one mode's fixed-point iteration.
#[derive(Debug, Clone)]
pub struct FixedPointOutcome {
    pub magnitude: f64,
    pub iterations: usize,
    pub delta_trace: Vec<f64>,
    pub rel_delta_trace: Vec<f64>,
    pub converged: bool,
}

/// Workspace of the alternating-direction fixed point for one mode.
///
/// One iteration k is: spatial step first, then every parametric direction in
/// sweep order, each followed by a normalization that moves the factor scales
/// into the spatial vector.
pub struct FixedPoint<'a, S: SpatialSolver> {
    solver: &'a mut S,
    axes: &'a [ParameterAxis],
    coeff_factors: &'a [Vec<Vec<f64>>],
    rhs_terms: &'a [Mode],
    frozen: &'a [Mode],
    lift_full: DenseVector,
    spatial_weights: DenseVector,
    ones_factors: Vec<Vec<f64>>,
    /// Current iterate; parametric factors unit-norm after each parametric step.
    pub mode: Mode,
    alpha: AlphaTable,
    /// Parametric couplings of the RHS terms to the current mode: Σ_j w_j g_{r,p,j} u_{p,j}^m.
    rhs_beta: Vec<Vec<f64>>,
    /// Spatial couplings b_rᵀ u_1^m.
    rhs_spatial: Vec<f64>,
    spatial_calls: usize,
}

impl<'a, S: SpatialSolver> FixedPoint<'a, S> {
    pub fn new(
        solver: &'a mut S,
        axes: &'a [ParameterAxis],
        coeff_factors: &'a [Vec<Vec<f64>>],
        rhs_terms: &'a [Mode],
        frozen: &'a [Mode],
    ) -> Self {
        let n_nodes = solver.n_nodes();
        let n_terms = solver.n_terms();
        assert_eq!(coeff_factors.len(), n_terms, "coefficient term count");
        for cf in coeff_factors {
            assert_eq!(cf.len(), axes.len(), "coefficient axis count");
            for (f, ax) in cf.iter().zip(axes) {
                assert_eq!(f.len(), ax.len(), "coefficient factor length");
            }
        }
        let lift_full = solver
            .lift()
            .map(|l| l.to_vec())
            .unwrap_or_else(|| vec![0.0; n_nodes]);
        let spatial_weights = solver.spatial_weights().to_vec();
        let ones_factors: Vec<Vec<f64>> = axes.iter().map(|ax| vec![1.0; ax.len()]).collect();

        // all-ones parametric init, unit weighted norm
        let factors: Vec<Vec<f64>> = axes
            .iter()
            .map(|ax| {
                let norm = ax.weighted_norm(&vec![1.0; ax.len()]);
                vec![1.0 / norm; ax.len()]
            })
            .collect();
        let mode = Mode::new(vec![0.0; n_nodes], factors);

        let n_sols = frozen.len() + 2;
        let alpha = AlphaTable::zeros(n_terms, axes.len() + 1, n_sols);
        let rhs_beta = vec![vec![0.0; axes.len()]; rhs_terms.len()];
        let rhs_spatial = vec![0.0; rhs_terms.len()];

        let mut fp = FixedPoint {
            solver,
            axes,
            coeff_factors,
            rhs_terms,
            frozen,
            lift_full,
            spatial_weights,
            ones_factors,
            mode,
            alpha,
            rhs_beta,
            rhs_spatial,
            spatial_calls: 0,
        };
        fp.fill_alpha();
        fp
    }

    fn n_sols(&self) -> usize {
        self.frozen.len() + 2
    }

    fn current(&self) -> usize {
        self.n_sols() - 1
    }

    fn solution_factor(&self, s: usize, axis: usize) -> &[f64] {
        if s == 0 {
            &self.ones_factors[axis]
        } else if s <= self.frozen.len() {
            &self.frozen[s - 1].factors[axis]
        } else {
            &self.mode.factors[axis]
        }
    }

    fn solution_spatial(&self, s: usize) -> &[f64] {
        if s == 0 {
            &self.lift_full
        } else if s <= self.frozen.len() {
            &self.frozen[s - 1].spatial
        } else {
            &self.mode.spatial
        }
    }

    /// Fills the whole table (frozen-frozen entries stay constant afterwards).
    fn fill_alpha(&mut self) {
        let n_sols = self.n_sols();
        for q in 0..self.coeff_factors.len() {
            for d in 0..self.axes.len() {
                for i in 0..n_sols {
                    for j in i..n_sols {
                        let v = weighted_inner(
                            &self.axes[d],
                            &self.coeff_factors[q][d],
                            self.solution_factor(i, d),
                            self.solution_factor(j, d),
                        );
                        self.alpha.set_sym(q, d + 1, i, j, v);
                    }
                }
            }
            for i in 0..n_sols {
                for j in i..n_sols {
                    let v = self
                        .solver
                        .inner_term(q, self.solution_spatial(i), self.solution_spatial(j));
                    self.alpha.set_sym(q, 0, i, j, v);
                }
            }
        }
        for r in 0..self.rhs_terms.len() {
            for d in 0..self.axes.len() {
                self.rhs_beta[r][d] = self.rhs_coupling(r, d);
            }
            self.rhs_spatial[r] = dot(&self.rhs_terms[r].spatial, &self.mode.spatial);
        }
    }

    fn rhs_coupling(&self, r: usize, axis: usize) -> f64 {
        let ax = &self.axes[axis];
        let g = &self.rhs_terms[r].factors[axis];
        let u = &self.mode.factors[axis];
        let mut acc = 0.0;
        for j in 0..ax.len() {
            acc += ax.weights()[j] * g[j] * u[j];
        }
        acc
    }

    /// Recomputes the couplings of the given direction with the current mode
    /// (only entries involving the changed direction and the current mode).
    pub fn update_alpha(&mut self, dir: Direction) {
        let m = self.current();
        let n_sols = self.n_sols();
        match dir {
            Direction::Spatial => {
                for q in 0..self.coeff_factors.len() {
                    for s in 0..n_sols {
                        let v = self.solver.inner_term(
                            q,
                            &self.mode.spatial,
                            self.solution_spatial(s),
                        );
                        self.alpha.set_sym(q, 0, m, s, v);
                    }
                }
                for r in 0..self.rhs_terms.len() {
                    self.rhs_spatial[r] = dot(&self.rhs_terms[r].spatial, &self.mode.spatial);
                }
            }
            Direction::Parametric(p) => {
                for q in 0..self.coeff_factors.len() {
                    for s in 0..n_sols {
                        let v = weighted_inner(
                            &self.axes[p],
                            &self.coeff_factors[q][p],
                            &self.mode.factors[p],
                            self.solution_factor(s, p),
                        );
                        self.alpha.set_sym(q, p + 1, m, s, v);
                    }
                }
                for r in 0..self.rhs_terms.len() {
                    self.rhs_beta[r][p] = self.rhs_coupling(r, p);
                }
            }
        }
    }

    pub fn alpha(&self) -> &AlphaTable {
        &self.alpha
    }

    pub fn spatial_calls(&self) -> usize {
        self.spatial_calls
    }

    /// Product of the current mode's parametric couplings with solution `s`
    /// over all parameter directions except `skip`.
    fn parametric_product(&self, q: usize, s: usize, skip: Option<usize>) -> f64 {
        let m = self.current();
        let mut prod = 1.0;
        for d in 0..self.axes.len() {
            if Some(d) == skip {
                continue;
            }
            prod *= self.alpha.get(q, Direction::Parametric(d), m, s);
        }
        prod
    }

    fn rhs_product(&self, r: usize, skip: Option<usize>) -> f64 {
        let mut prod = 1.0;
        for d in 0..self.axes.len() {
            if Some(d) == skip {
                continue;
            }
            prod *= self.rhs_beta[r][d];
        }
        prod
    }

    /// Solves the weighted spatial system for the current mode and updates
    /// the spatial couplings. Signals `ZeroMode` when all operator weights
    /// vanish or the solve returns a null vector.
    pub fn spatial_step(&mut self) -> Result<(), Error> {
        let m = self.current();
        let n_terms = self.coeff_factors.len();
        let weights: Vec<f64> = (0..n_terms)
            .map(|q| self.parametric_product(q, m, None))
            .collect();
        if weights.iter().all(|w| *w == 0.0) {
            return Err(Error::ZeroMode);
        }

        let mut rhs = vec![0.0; self.solver.n_nodes()];
        for r in 0..self.rhs_terms.len() {
            let d = self.rhs_product(r, None);
            if d != 0.0 {
                axpy(d, &self.rhs_terms[r].spatial, &mut rhs);
            }
        }
        for q in 0..n_terms {
            for s in 0..m {
                let c = self.parametric_product(q, s, None);
                if c != 0.0 {
                    let su = self.solver.apply_term(q, self.solution_spatial(s));
                    axpy(-c, &su, &mut rhs);
                }
            }
        }

        let u = self.solver.solve(&weights, &rhs)?;
        self.spatial_calls += 1;
        self.mode.spatial = u;
        self.update_alpha(Direction::Spatial);
        if weighted_spatial_norm(&self.mode.spatial, &self.spatial_weights) == 0.0 {
            return Err(Error::ZeroMode);
        }
        Ok(())
    }

    /// Pointwise solve on axis `p`'s collocation grid, followed by mode
    /// normalization and coupling updates.
    pub fn parametric_step(&mut self, p: usize) -> Result<(), Error> {
        let m = self.current();
        let n_terms = self.coeff_factors.len();
        let ax = &self.axes[p];
        let n_pts = ax.len();

        // collapse spatial and other-direction couplings into scalars
        let mut diag_c = vec![0.0; n_terms]; // for the current mode
        let mut hist_c = vec![vec![0.0; m]; n_terms]; // for lift and frozen modes
        for q in 0..n_terms {
            diag_c[q] =
                self.alpha.get(q, Direction::Spatial, m, m) * self.parametric_product(q, m, Some(p));
            for s in 0..m {
                hist_c[q][s] = self.alpha.get(q, Direction::Spatial, m, s)
                    * self.parametric_product(q, s, Some(p));
            }
        }
        let rhs_c: Vec<f64> = (0..self.rhs_terms.len())
            .map(|r| self.rhs_spatial[r] * self.rhs_product(r, Some(p)))
            .collect();

        let mut values = vec![0.0; n_pts];
        for j in 0..n_pts {
            let mut denom = 0.0;
            let mut numer = 0.0;
            for q in 0..n_terms {
                let coeff_j = self.coeff_factors[q][p][j];
                denom += diag_c[q] * coeff_j;
                for s in 0..m {
                    numer -= hist_c[q][s] * coeff_j * self.solution_factor(s, p)[j];
                }
            }
            for (r, c) in rhs_c.iter().enumerate() {
                numer += c * self.rhs_terms[r].factors[p][j];
            }
            if denom == 0.0 {
                return Err(Error::DegenerateCoefficient { axis: p, point: j });
            }
            values[j] = numer / denom;
        }
        self.mode.factors[p] = values;

        normalize_mode(&mut self.mode, self.axes, &self.spatial_weights)?;
        self.update_alpha(Direction::Parametric(p));
        self.update_alpha(Direction::Spatial);
        Ok(())
    }

    /// Residual of the spatial direction's equation with the current factors,
    /// projected onto the homogeneous (free-node) space.
    pub fn spatial_residual(&self) -> DenseVector {
        let m = self.current();
        let mut r = vec![0.0; self.solver.n_nodes()];
        for q in 0..self.coeff_factors.len() {
            for s in 0..=m {
                let c = self.parametric_product(q, s, None);
                if c != 0.0 {
                    let su = self.solver.apply_term(q, self.solution_spatial(s));
                    axpy(c, &su, &mut r);
                }
            }
        }
        for t in 0..self.rhs_terms.len() {
            let d = self.rhs_product(t, None);
            if d != 0.0 {
                axpy(-d, &self.rhs_terms[t].spatial, &mut r);
            }
        }
        self.solver.project_free(&r)
    }

    /// Residual of direction `p`'s pointwise equation with the current factors.
    pub fn parametric_residual(&self, p: usize) -> Vec<f64> {
        let m = self.current();
        let n_terms = self.coeff_factors.len();
        let ax = &self.axes[p];
        (0..ax.len())
            .map(|j| {
                let mut acc = 0.0;
                for q in 0..n_terms {
                    let coeff_j = self.coeff_factors[q][p][j];
                    for s in 0..=m {
                        let c = self.alpha.get(q, Direction::Spatial, m, s)
                            * self.parametric_product(q, s, Some(p));
                        acc += c * coeff_j * self.solution_factor(s, p)[j];
                    }
                }
                for r in 0..self.rhs_terms.len() {
                    let c = self.rhs_spatial[r] * self.rhs_product(r, Some(p));
                    acc -= c * self.rhs_terms[r].factors[p][j];
                }
                acc
            })
            .collect()
    }

    /// One full sweep; returns (Δ^(k), Δ^(k)/‖u^{m,k}‖).
    fn iterate(&mut self, sweep: &[usize]) -> Result<(f64, f64), Error> {
        let old_spatial = self.mode.spatial.clone();
        let old_factors = self.mode.factors.clone();

        self.spatial_step()?;
        for &p in sweep {
            self.parametric_step(p)?;
        }

        let mut diff = old_spatial;
        for (d, new) in diff.iter_mut().zip(&self.mode.spatial) {
            *d = new - *d;
        }
        let mut delta = weighted_spatial_norm(&diff, &self.spatial_weights);
        for (d, (old, ax)) in old_factors.iter().zip(self.axes).enumerate() {
            let fdiff: Vec<f64> = self.mode.factors[d]
                .iter()
                .zip(old)
                .map(|(n, o)| n - o)
                .collect();
            delta *= ax.weighted_norm(&fdiff);
        }
        let magnitude = weighted_spatial_norm(&self.mode.spatial, &self.spatial_weights);
        Ok((delta, delta / magnitude))
    }

    /// Runs the fixed point to tol_fp or max_fp_iters.
    pub fn run(&mut self, config: &PgdConfig) -> Result<FixedPointOutcome, Error> {
        if self.axes.is_empty() {
            // degenerate direction set: one spatial solve is the fixed point
            self.spatial_step()?;
            return Ok(FixedPointOutcome {
                magnitude: weighted_spatial_norm(&self.mode.spatial, &self.spatial_weights),
                iterations: 1,
                delta_trace: vec![0.0],
                rel_delta_trace: vec![0.0],
                converged: true,
            });
        }
        let sweep: Vec<usize> = config
            .sweep_order
            .clone()
            .unwrap_or_else(|| (0..self.axes.len()).collect());

        let mut delta_trace = Vec::new();
        let mut rel_delta_trace = Vec::new();
        let mut converged = false;
        let mut iterations = 0;
        for _k in 1..=config.max_fp_iters {
            let (delta, rel) = self.iterate(&sweep)?;
            iterations += 1;
            delta_trace.push(delta);
            rel_delta_trace.push(rel);
            if rel <= config.tol_fp {
                converged = true;
                break;
            }
        }
        Ok(FixedPointOutcome {
            magnitude: weighted_spatial_norm(&self.mode.spatial, &self.spatial_weights),
            iterations,
            delta_trace,
            rel_delta_trace,
            converged,
        })
    }
}

/// Greedy mode enrichment.
///
/// Modes are added until the relative magnitude ‖u^m‖/‖u^1‖ drops to tol_pgd
/// (the triggering mode is rejected and recorded in the report), a null
/// direction appears, or max_modes is reached.
pub fn enrich<S: SpatialSolver>(
    solver: &mut S,
    coeff_factors: &[Vec<Vec<f64>>],
    rhs_terms: &[Mode],
    axes: &[ParameterAxis],
    config: &PgdConfig,
) -> Result<(SeparatedSolution, PgdReport), Error> {
    config.validate(axes.len())?;
    if !solver.has_dirichlet() && rhs_terms.is_empty() {
        return Err(Error::EmptyProblem);
    }
    for t in rhs_terms {
        assert_eq!(t.spatial.len(), solver.n_nodes(), "rhs term spatial length");
        assert_eq!(t.factors.len(), axes.len(), "rhs term axis count");
    }

    let lift = solver.lift().map(|l| l.to_vec());
    let mut solution = SeparatedSolution::new(axes.to_vec(), lift, solver.n_nodes());
    let mut report = PgdReport::default();
    let mut first_magnitude: Option<f64> = None;

    for _m in 1..=config.max_modes {
        let mut fp = FixedPoint::new(solver, axes, coeff_factors, rhs_terms, &solution.modes);
        let outcome = match fp.run(config) {
            Ok(o) => o,
            Err(Error::ZeroMode) => {
                // null enrichment direction: the residual is resolved
                report.modes.push(ModeReport {
                    magnitude: 0.0,
                    fp_iterations: 0,
                    spatial_calls: fp.spatial_calls(),
                    delta_trace: Vec::new(),
                    rel_delta_trace: Vec::new(),
                    converged: true,
                    accepted: false,
                });
                report.total_spatial_calls += fp.spatial_calls();
                break;
            }
            Err(e) => return Err(e),
        };
        let mode = fp.mode.clone();
        let calls = fp.spatial_calls();
        drop(fp);

        let mut entry = ModeReport {
            magnitude: outcome.magnitude,
            fp_iterations: outcome.iterations,
            spatial_calls: calls,
            delta_trace: outcome.delta_trace,
            rel_delta_trace: outcome.rel_delta_trace,
            converged: outcome.converged,
            accepted: true,
        };
        report.total_spatial_calls += calls;

        if let Some(first) = first_magnitude {
            if outcome.magnitude <= config.tol_pgd * first {
                entry.accepted = false;
                report.modes.push(entry);
                break;
            }
        } else {
            first_magnitude = Some(outcome.magnitude);
        }
        report.modes.push(entry);
        solution.push_mode(mode);
    }
    report.accepted_modes = solution.n_modes();
    debug_assert_eq!(
        report.total_spatial_calls,
        report.modes.iter().map(|m| m.spatial_calls).sum::<usize>()
    );
    Ok((solution, report))
}
