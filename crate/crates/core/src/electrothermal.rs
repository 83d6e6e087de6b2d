//! Electrothermal problem definitions and the FIT-backed spatial solver.
//!
//! The electrokinetic and thermal subproblems share the same left-hand-side
//! structure; they differ in the material coefficient and the right-hand
//! side. The coupling is one-directional: the electric solution generates a
//! separated Joule-loss source for the thermal solve.

use crate::error::Error;
use crate::linalg::{cg_solve, direct_solve, DenseVector, SparseMatrix, CG_DEFAULT_TOL};
use crate::mesh::{
    assemble_full_stiffness, edge_material, joule_rhs, reduce_stiffness, BoundaryCondition,
    CellField, DirichletMap, MaterialAveraging, TensorGrid,
};
use crate::pgd::{enrich, PgdConfig, PgdReport, SpatialSolver};
use crate::separated::{Mode, ParameterAxis, SeparatedCoefficient, SeparatedSolution};

/// Electrokinetic subproblem: -div(sigma grad phi) = 0 with Dirichlet data in volts.
#[derive(Debug, Clone)]
pub struct ElectrokineticProblem {
    pub grid: TensorGrid,
    pub sigma: SeparatedCoefficient,
    pub bc: BoundaryCondition,
    pub axes: Vec<ParameterAxis>,
    pub averaging: MaterialAveraging,
}

/// Thermal subproblem: -div(lambda grad T) = Q with Dirichlet data in kelvin
/// and a separated source (usually the Joule losses of the electric solve).
#[derive(Debug, Clone)]
pub struct ThermalProblem {
    pub grid: TensorGrid,
    pub lambda: SeparatedCoefficient,
    pub bc: BoundaryCondition,
    pub axes: Vec<ParameterAxis>,
    pub source: SeparatedRhs,
    pub averaging: MaterialAveraging,
}

/// Right-hand side in separated form: nodal load vectors (watts) times one
/// collocated factor per parameter axis.
#[derive(Debug, Clone, Default)]
pub struct SeparatedRhs {
    pub terms: Vec<Mode>,
}

impl SeparatedRhs {
    pub fn empty() -> Self {
        SeparatedRhs { terms: Vec::new() }
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Evaluates the source as a plain nodal vector at one collocation tuple.
    pub fn at_grid_point(&self, n_nodes: usize, indices: &[usize]) -> DenseVector {
        let mut out = vec![0.0; n_nodes];
        for t in &self.terms {
            let factor: f64 = t.factors.iter().zip(indices).map(|(f, &j)| f[j]).product();
            if factor != 0.0 {
                for (o, s) in out.iter_mut().zip(&t.spatial) {
                    *o += factor * s;
                }
            }
        }
        out
    }
}

/// Linear solver used for the reduced spatial systems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolverKind {
    /// Banded Cholesky (default; exact up to rounding).
    Direct,
    /// Jacobi-preconditioned conjugate gradients.
    Cg { tol: f64, max_iter: usize },
}

impl Default for SolverKind {
    fn default() -> Self {
        SolverKind::Direct
    }
}

/// FIT-backed implementation of the [`SpatialSolver`] boundary.
///
/// Holds one reduced stiffness matrix per separated coefficient term (all on
/// one sparsity pattern) and the per-term edge conductances. `apply_term` and
/// `inner_term` work edge-wise — differences first, then conductances — so a
/// constant field has exactly zero stiffness action; the constant lift of a
/// uniform-Dirichlet problem then contributes exactly nothing to enrichment.
pub struct FitSolver {
    grid: TensorGrid,
    term_conductances: Vec<Vec<f64>>,
    reduced_terms: Vec<SparseMatrix>,
    map: DirichletMap,
    lift: Option<DenseVector>,
    kind: SolverKind,
    calls: usize,
}

impl FitSolver {
    pub fn new(
        grid: &TensorGrid,
        coeff: &SeparatedCoefficient,
        bc: &BoundaryCondition,
        averaging: MaterialAveraging,
        kind: SolverKind,
    ) -> Result<Self, Error> {
        let map = DirichletMap::new(grid, bc);
        let mut term_conductances = Vec::with_capacity(coeff.n_terms());
        let mut reduced_terms = Vec::with_capacity(coeff.n_terms());
        for term in coeff.terms() {
            term_conductances.push(edge_material(grid, &term.spatial, averaging));
            let full = assemble_full_stiffness(grid, &term.spatial, averaging);
            let (reduced, _) = reduce_stiffness(&full, &map);
            reduced_terms.push(reduced);
        }
        let lift = match bc.uniform_value() {
            Some(v) if v != 0.0 => Some(vec![v; grid.n_nodes()]),
            Some(_) => None,
            None => Some(bc.nodal_values(grid)),
        };
        Ok(FitSolver {
            grid: grid.clone(),
            term_conductances,
            reduced_terms,
            map,
            lift,
            kind,
            calls: 0,
        })
    }

    /// Number of reduced solves performed so far.
    pub fn calls(&self) -> usize {
        self.calls
    }

    pub fn map(&self) -> &DirichletMap {
        &self.map
    }
}

impl SpatialSolver for FitSolver {
    fn n_nodes(&self) -> usize {
        self.grid.n_nodes()
    }

    fn n_terms(&self) -> usize {
        self.reduced_terms.len()
    }

    fn lift(&self) -> Option<&[f64]> {
        self.lift.as_deref()
    }

    fn has_dirichlet(&self) -> bool {
        self.map.n_free() < self.grid.n_nodes()
    }

    fn spatial_weights(&self) -> &[f64] {
        self.grid.dual_volumes()
    }

    fn solve(&mut self, term_weights: &[f64], rhs: &[f64]) -> Result<DenseVector, Error> {
        assert_eq!(term_weights.len(), self.reduced_terms.len());
        let a = SparseMatrix::linear_combination(&self.reduced_terms, term_weights);
        for (fi, d) in a.diagonal().iter().enumerate() {
            if *d == 0.0 {
                return Err(Error::SingularSystem(format!(
                    "zero diagonal at free node {} for the weighted operator",
                    self.map.free_nodes()[fi]
                )));
            }
        }
        let b = self.map.restrict(rhs);
        let x = match self.kind {
            SolverKind::Direct => direct_solve(&a, &b)?,
            SolverKind::Cg { tol, max_iter } => cg_solve(&a, &b, tol, max_iter)?,
        };
        self.calls += 1;
        Ok(self.map.embed(&x))
    }

    fn apply_term(&self, q: usize, u: &[f64]) -> DenseVector {
        assert_eq!(u.len(), self.grid.n_nodes());
        let mut y = vec![0.0; self.grid.n_nodes()];
        for (edge, g) in self.grid.edges().iter().zip(&self.term_conductances[q]) {
            let flux = g * (u[edge.head] - u[edge.tail]);
            y[edge.head] += flux;
            y[edge.tail] -= flux;
        }
        y
    }

    fn inner_term(&self, q: usize, u: &[f64], v: &[f64]) -> f64 {
        assert_eq!(u.len(), self.grid.n_nodes());
        assert_eq!(v.len(), self.grid.n_nodes());
        let mut acc = 0.0;
        for (edge, g) in self.grid.edges().iter().zip(&self.term_conductances[q]) {
            let du = u[edge.head] - u[edge.tail];
            let dv = v[edge.head] - v[edge.tail];
            acc += g * (du * dv);
        }
        acc
    }

    fn project_free(&self, u: &[f64]) -> DenseVector {
        assert_eq!(u.len(), self.grid.n_nodes());
        u.iter()
            .enumerate()
            .map(|(i, x)| if self.map.is_free(i) { *x } else { 0.0 })
            .collect()
    }
}

/// Parametric factor arrays of a separated coefficient in the layout the
/// enrichment driver expects ([term][axis][point]).
fn coefficient_factors(coeff: &SeparatedCoefficient) -> Vec<Vec<Vec<f64>>> {
    coeff
        .terms()
        .iter()
        .map(|t| t.factors.clone())
        .collect()
}

const POSITIVITY_CHECK_BUDGET: usize = 100_000;

fn validate_coefficient(
    coeff: &SeparatedCoefficient,
    axes: &[ParameterAxis],
) -> Result<(), Error> {
    let total: usize = axes.iter().map(|a| a.len()).product();
    if total <= POSITIVITY_CHECK_BUDGET {
        coeff.validate_positivity(axes)?;
    }
    Ok(())
}

/// Solves the electrokinetic subproblem by PGD enrichment (zero RHS, the
/// Dirichlet lift carries the boundary excitation).
pub fn solve_electric(
    problem: &ElectrokineticProblem,
    config: &PgdConfig,
) -> Result<(SeparatedSolution, PgdReport), Error> {
    validate_coefficient(&problem.sigma, &problem.axes)?;
    let mut solver = FitSolver::new(
        &problem.grid,
        &problem.sigma,
        &problem.bc,
        problem.averaging,
        SolverKind::Direct,
    )?;
    let factors = coefficient_factors(&problem.sigma);
    enrich(&mut solver, &factors, &[], &problem.axes, config)
}

/// Solves the thermal subproblem with its separated source.
pub fn solve_thermal(
    problem: &ThermalProblem,
    config: &PgdConfig,
) -> Result<(SeparatedSolution, PgdReport), Error> {
    validate_coefficient(&problem.lambda, &problem.axes)?;
    let mut solver = FitSolver::new(
        &problem.grid,
        &problem.lambda,
        &problem.bc,
        problem.averaging,
        SolverKind::Direct,
    )?;
    let factors = coefficient_factors(&problem.lambda);
    enrich(
        &mut solver,
        &factors,
        &problem.source.terms,
        &problem.axes,
        config,
    )
}

/// Expands the resistive losses of a separated electric solution into a
/// separated right-hand side.
///
/// The expansion runs over all pairs (i, j) of the full representation —
/// the lift enters as index 0 with parametric factors ≡ 1 — and over the
/// separated terms of sigma. Spatial factors come from the edge-based Joule
/// rule; parametric factors are pointwise products sigma_q,p · u_p^i · u_p^j.
/// Symmetric pairs are merged with a factor of 2 on the spatial vector.
/// Output order is lexicographic in (q, i, j).
pub fn build_joule_source(
    grid: &TensorGrid,
    sigma: &SeparatedCoefficient,
    electric: &SeparatedSolution,
    averaging: MaterialAveraging,
) -> SeparatedRhs {
    build_joule_source_with_cutoff(grid, sigma, electric, averaging, 0.0)
}

/// [`build_joule_source`] with a relative magnitude cutoff: terms whose
/// product of factor norms falls below `rel_cutoff` times the largest are
/// dropped. A cutoff of 0.0 keeps everything.
pub fn build_joule_source_with_cutoff(
    grid: &TensorGrid,
    sigma: &SeparatedCoefficient,
    electric: &SeparatedSolution,
    averaging: MaterialAveraging,
    rel_cutoff: f64,
) -> SeparatedRhs {
    let axes = &electric.axes;
    let ones: Vec<Vec<f64>> = axes.iter().map(|ax| vec![1.0; ax.len()]).collect();
    // full representation: lift (factors ≡ 1) plus modes
    let mut reps: Vec<(&[f64], &[Vec<f64>])> = Vec::new();
    if let Some(l) = &electric.lift {
        reps.push((l.as_slice(), ones.as_slice()));
    }
    for m in &electric.modes {
        reps.push((m.spatial.as_slice(), m.factors.as_slice()));
    }

    let mut terms = Vec::new();
    for sigma_term in sigma.terms() {
        for i in 0..reps.len() {
            for j in i..reps.len() {
                let mut spatial = joule_rhs(grid, &sigma_term.spatial, averaging, reps[i].0, reps[j].0);
                if i != j {
                    for v in spatial.iter_mut() {
                        *v *= 2.0;
                    }
                }
                let factors: Vec<Vec<f64>> = (0..axes.len())
                    .map(|p| {
                        sigma_term.factors[p]
                            .iter()
                            .zip(&reps[i].1[p])
                            .zip(&reps[j].1[p])
                            .map(|((s, a), b)| s * (a * b))
                            .collect()
                    })
                    .collect();
                terms.push(Mode::new(spatial, factors));
            }
        }
    }

    if rel_cutoff > 0.0 && !terms.is_empty() {
        let weights = grid.dual_volumes();
        let magnitude = |t: &Mode| -> f64 {
            let mut m = crate::separated::weighted_spatial_norm(&t.spatial, weights);
            for (f, ax) in t.factors.iter().zip(axes) {
                m *= ax.weighted_norm(f);
            }
            m
        };
        let mags: Vec<f64> = terms.iter().map(magnitude).collect();
        let max = mags.iter().fold(0.0f64, |a, b| a.max(*b));
        let kept: Vec<Mode> = terms
            .into_iter()
            .zip(&mags)
            .filter(|(_, m)| **m >= rel_cutoff * max)
            .map(|(t, _)| t)
            .collect();
        return SeparatedRhs { terms: kept };
    }
    SeparatedRhs { terms }
}

/// Result of the full one-directionally coupled pipeline.
#[derive(Debug, Clone)]
pub struct ElectrothermalSolution {
    pub electric: SeparatedSolution,
    pub electric_report: PgdReport,
    pub thermal: SeparatedSolution,
    pub thermal_report: PgdReport,
}

/// Runs electric PGD, expands the Joule source, then runs thermal PGD.
/// Any source already present on `thermal` is replaced.
pub fn solve_electrothermal(
    electric_problem: &ElectrokineticProblem,
    thermal_problem: &ThermalProblem,
    config: &PgdConfig,
) -> Result<ElectrothermalSolution, Error> {
    let (electric, electric_report) = solve_electric(electric_problem, config)?;
    let source = build_joule_source(
        &electric_problem.grid,
        &electric_problem.sigma,
        &electric,
        electric_problem.averaging,
    );
    let mut thermal_with_source = thermal_problem.clone();
    thermal_with_source.source = source;
    let (thermal, thermal_report) = solve_thermal(&thermal_with_source, config)?;
    Ok(ElectrothermalSolution {
        electric,
        electric_report,
        thermal,
        thermal_report,
    })
}

/// The two-material rod of the 1D validation problem: sigma = lambda = mu on
/// (0, L), 1 on (L, 2L), phi in {0, 1} and T = 20 at the ends, mu in [0.2, 1].
pub fn model_problem_1d(
    length: f64,
    cells: usize,
    mu_points: usize,
) -> Result<(ElectrokineticProblem, ThermalProblem), Error> {
    if cells < 2 || cells % 2 != 0 {
        return Err(Error::InvalidConfig(
            "model problem needs an even cell count >= 2 so the material interface lies on a node"
                .into(),
        ));
    }
    let grid = TensorGrid::uniform(&[(0.0, 2.0 * length, cells)])?;
    let axis = ParameterAxis::uniform(0.2, 1.0, mu_points)?;
    let axes = vec![axis.clone()];

    let left = CellField::from_cell_centers(&grid, |x| if x[0] < length { 1.0 } else { 0.0 });
    let right = CellField::from_cell_centers(&grid, |x| if x[0] < length { 0.0 } else { 1.0 });
    let coeff = SeparatedCoefficient::new(
        vec![
            crate::separated::CoefficientTerm {
                spatial: left,
                factors: vec![axis.points().to_vec()],
            },
            crate::separated::CoefficientTerm {
                spatial: right,
                factors: vec![vec![1.0; axis.len()]],
            },
        ],
        &axes,
    );

    let last = grid.n_nodes() - 1;
    let electric_bc = BoundaryCondition::from_nodes(&grid, &[(0, 0.0), (last, 1.0)])?;
    let thermal_bc = BoundaryCondition::from_nodes(&grid, &[(0, 20.0), (last, 20.0)])?;

    let electric = ElectrokineticProblem {
        grid: grid.clone(),
        sigma: coeff.clone(),
        bc: electric_bc,
        axes: axes.clone(),
        averaging: MaterialAveraging::Arithmetic,
    };
    let thermal = ThermalProblem {
        grid,
        lambda: coeff,
        bc: thermal_bc,
        axes,
        source: SeparatedRhs::empty(),
        averaging: MaterialAveraging::Arithmetic,
    };
    Ok((electric, thermal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Side;
    use crate::separated::CoefficientTerm;

    fn paper_config() -> PgdConfig {
        PgdConfig::new(1e-7, 1e-2, 25, 50)
    }

    #[test]
    fn uniform_sigma_reproduces_linear_ramp() {
        let grid = TensorGrid::uniform(&[(0.0, 2.0, 20)]).unwrap();
        let axis = ParameterAxis::uniform(0.2, 1.0, 15).unwrap();
        let coeff = SeparatedCoefficient::new(
            vec![CoefficientTerm {
                spatial: CellField::constant(&grid, 3.0),
                factors: vec![vec![1.0; 15]],
            }],
            std::slice::from_ref(&axis),
        );
        let last = grid.n_nodes() - 1;
        let bc = BoundaryCondition::from_nodes(&grid, &[(0, 0.0), (last, 1.0)]).unwrap();
        let problem = ElectrokineticProblem {
            grid: grid.clone(),
            sigma: coeff,
            bc,
            axes: vec![axis],
            averaging: MaterialAveraging::Arithmetic,
        };
        let (sol, report) = solve_electric(&problem, &paper_config()).unwrap();
        assert!(sol.n_modes() <= 1, "modes: {}", sol.n_modes());
        let field = sol.evaluate(&[0.6]).unwrap();
        for i in 0..grid.n_nodes() {
            let exact = grid.node_coords(i)[0] / 2.0;
            assert!((field[i] - exact).abs() <= 1e-10, "{} vs {exact}", field[i]);
        }
        assert_eq!(report.accepted_modes, sol.n_modes());
    }

    #[test]
    fn zero_source_uniform_dirichlet_gives_constant_lift_and_zero_modes() {
        let grid = TensorGrid::uniform(&[(0.0, 2.0, 16)]).unwrap();
        let axis = ParameterAxis::uniform(0.2, 1.0, 11).unwrap();
        let coeff = SeparatedCoefficient::new(
            vec![CoefficientTerm {
                spatial: CellField::constant(&grid, 1.0),
                factors: vec![axis.points().to_vec()],
            }],
            std::slice::from_ref(&axis),
        );
        let last = grid.n_nodes() - 1;
        let bc = BoundaryCondition::from_nodes(&grid, &[(0, 20.0), (last, 20.0)]).unwrap();
        let problem = ThermalProblem {
            grid,
            lambda: coeff,
            bc,
            axes: vec![axis],
            source: SeparatedRhs::empty(),
            averaging: MaterialAveraging::Arithmetic,
        };
        let (sol, _report) = solve_thermal(&problem, &paper_config()).unwrap();
        assert_eq!(sol.n_modes(), 0);
        let field = sol.evaluate(&[0.5]).unwrap();
        for v in field {
            assert_eq!(v, 20.0);
        }
    }

    #[test]
    fn joule_source_empty_for_zero_electric_solution() {
        let grid = TensorGrid::uniform(&[(0.0, 1.0, 4)]).unwrap();
        let axis = ParameterAxis::uniform(0.0, 1.0, 3).unwrap();
        let sigma = SeparatedCoefficient::new(
            vec![CoefficientTerm {
                spatial: CellField::constant(&grid, 1.0),
                factors: vec![vec![1.0; 3]],
            }],
            std::slice::from_ref(&axis),
        );
        let sol = SeparatedSolution::new(vec![axis], None, grid.n_nodes());
        let rhs = build_joule_source(&grid, &sigma, &sol, MaterialAveraging::Arithmetic);
        assert_eq!(rhs.n_terms(), 0);
    }

    #[test]
    fn joule_source_total_power_matches_quadratic_form() {
        // parameter-independent linear potential on a uniform rod
        let grid = TensorGrid::uniform(&[(0.0, 2.0, 10)]).unwrap();
        let axis = ParameterAxis::uniform(0.2, 1.0, 7).unwrap();
        let sigma = SeparatedCoefficient::new(
            vec![CoefficientTerm {
                spatial: CellField::constant(&grid, 1.0),
                factors: vec![vec![1.0; 7]],
            }],
            std::slice::from_ref(&axis),
        );
        let phi: Vec<f64> = (0..grid.n_nodes())
            .map(|i| grid.node_coords(i)[0] / 2.0)
            .collect();
        let mut sol = SeparatedSolution::new(vec![axis.clone()], Some(phi.clone()), grid.n_nodes());
        let _ = &mut sol;
        let rhs = build_joule_source(&grid, &sigma, &sol, MaterialAveraging::Arithmetic);
        assert_eq!(rhs.n_terms(), 1);
        let evaluated = rhs.at_grid_point(grid.n_nodes(), &[3]);
        let total: f64 = evaluated.iter().sum();
        // sigma (dphi/dx)^2 * measure = 1 * 0.25 * 2
        assert!((total - 0.5).abs() < 1e-13, "{total}");
    }

    #[test]
    fn joule_source_merges_symmetric_pairs() {
        let grid = TensorGrid::uniform(&[(0.0, 1.0, 4)]).unwrap();
        let axis = ParameterAxis::uniform(0.0, 1.0, 3).unwrap();
        let sigma = SeparatedCoefficient::new(
            vec![CoefficientTerm {
                spatial: CellField::constant(&grid, 2.0),
                factors: vec![vec![1.0; 3]],
            }],
            std::slice::from_ref(&axis),
        );
        let lift: Vec<f64> = (0..5).map(|i| i as f64 * 0.25).collect();
        let mut sol = SeparatedSolution::new(vec![axis.clone()], Some(lift), grid.n_nodes());
        sol.push_mode(Mode::new(
            (0..5).map(|i| ((i * i) as f64 * 0.1).sin()).collect(),
            vec![vec![0.5, 1.0, 1.5]],
        ));
        let rhs = build_joule_source(&grid, &sigma, &sol, MaterialAveraging::Arithmetic);
        // one sigma term, reps {lift, mode}: pairs (0,0), (0,1), (1,1)
        assert_eq!(rhs.n_terms(), 3);

        // reconstructed total power equals the quadratic form of the summed field
        let mu_idx = 2;
        let field = sol.evaluate_at_indices(&[mu_idx]);
        let material = CellField::constant(&grid, 2.0);
        let direct = joule_rhs(
            &grid,
            &material,
            MaterialAveraging::Arithmetic,
            &field,
            &field,
        );
        let expanded = rhs.at_grid_point(grid.n_nodes(), &[mu_idx]);
        for (a, b) in expanded.iter().zip(&direct) {
            assert!((a - b).abs() <= 1e-13 * b.abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn joule_cutoff_inert_at_default_and_drops_below_threshold() {
        let grid = TensorGrid::uniform(&[(0.0, 1.0, 4)]).unwrap();
        let axis = ParameterAxis::uniform(0.0, 1.0, 3).unwrap();
        let sigma = SeparatedCoefficient::new(
            vec![CoefficientTerm {
                spatial: CellField::constant(&grid, 1.0),
                factors: vec![vec![1.0; 3]],
            }],
            std::slice::from_ref(&axis),
        );
        let mut sol = SeparatedSolution::new(
            vec![axis.clone()],
            Some((0..5).map(|i| i as f64).collect()),
            grid.n_nodes(),
        );
        sol.push_mode(Mode::new(vec![1e-9; 5], vec![vec![1e-9; 3]]));
        let all = build_joule_source(&grid, &sigma, &sol, MaterialAveraging::Arithmetic);
        assert_eq!(all.n_terms(), 3);
        let cut = build_joule_source_with_cutoff(
            &grid,
            &sigma,
            &sol,
            MaterialAveraging::Arithmetic,
            1e-14,
        );
        assert!(cut.n_terms() < all.n_terms());
    }

    #[test]
    fn one_directional_coupling_electric_unaffected_by_lambda() {
        let (e_prob, t_prob) = model_problem_1d(1.0, 20, 9).unwrap();
        let config = paper_config();
        let first = solve_electrothermal(&e_prob, &t_prob, &config).unwrap();

        // perturb lambda strongly; electric output must be bitwise identical
        let mut t2 = t_prob.clone();
        t2.lambda = SeparatedCoefficient::new(
            vec![CoefficientTerm {
                spatial: CellField::constant(&t_prob.grid, 17.0),
                factors: vec![vec![1.0; 9]],
            }],
            &t_prob.axes,
        );
        let second = solve_electrothermal(&e_prob, &t2, &config).unwrap();
        assert_eq!(first.electric, second.electric);
        assert_eq!(first.electric_report, second.electric_report);
        assert_ne!(first.thermal, second.thermal);
    }

    #[test]
    fn block_coefficients_validate() {
        // 2D sanity pass over the region-table style construction
        let grid = TensorGrid::uniform(&[(0.0, 1.0, 4), (0.0, 1.0, 4)]).unwrap();
        let ax1 = ParameterAxis::uniform(0.2, 1.0, 5).unwrap();
        let ax2 = ParameterAxis::uniform(0.2, 1.0, 5).unwrap();
        let axes = vec![ax1.clone(), ax2.clone()];
        let background = CellField::constant(&grid, 1.0);
        let bridge = CellField::from_cell_centers(&grid, |x| {
            if x[0] > 0.25 && x[0] < 0.75 && x[1] < 0.5 {
                5.0
            } else {
                0.0
            }
        });
        let coeff = SeparatedCoefficient::new(
            vec![
                CoefficientTerm {
                    spatial: background,
                    factors: vec![vec![1.0; 5], vec![1.0; 5]],
                },
                CoefficientTerm {
                    spatial: bridge,
                    factors: vec![ax1.points().to_vec(), vec![1.0; 5]],
                },
            ],
            &axes,
        );
        coeff.validate_positivity(&axes).unwrap();
        let bc = BoundaryCondition::from_faces(&grid, &[(0, Side::Min, 0.0), (0, Side::Max, 1.0)])
            .unwrap();
        let problem = ElectrokineticProblem {
            grid,
            sigma: coeff,
            bc,
            axes,
            averaging: MaterialAveraging::Arithmetic,
        };
        let (sol, report) = solve_electric(&problem, &paper_config()).unwrap();
        assert!(sol.n_modes() >= 1);
        assert!(report.total_spatial_calls > 0);
    }
}
