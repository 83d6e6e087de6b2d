//! Separated (rank-one-sum) representations over space × parameters.
//!
//! A solution is a list of modes, each a spatial nodal vector times one
//! factor per parameter axis. Parameter axes are discretized by point
//! collocation with trapezoidal quadrature, so the parametric mass matrices
//! are diagonal and every parametric solve is pointwise.
//!
//! Normalization convention: parametric factors carry unit weighted L2 norm,
//! the mode magnitude lives in the spatial factor.

use crate::error::Error;
use crate::linalg::DenseVector;
use crate::mesh::CellField;

/// One parameter interval with collocation points and trapezoid weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterAxis {
    lo: f64,
    hi: f64,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl ParameterAxis {
    /// Builds an axis from strictly increasing points spanning [lo, hi].
    pub fn new(points: Vec<f64>) -> Result<Self, Error> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "parameter axis needs at least 2 points, got {}",
                points.len()
            )));
        }
        for w in points.windows(2) {
            if !(w[1] > w[0]) || !w[0].is_finite() || !w[1].is_finite() {
                return Err(Error::InvalidParameter(
                    "parameter points must be strictly increasing and finite".into(),
                ));
            }
        }
        let n = points.len();
        let mut weights = vec![0.0; n];
        for i in 0..n - 1 {
            let h = points[i + 1] - points[i];
            weights[i] += h / 2.0;
            weights[i + 1] += h / 2.0;
        }
        Ok(ParameterAxis {
            lo: points[0],
            hi: points[n - 1],
            points,
            weights,
        })
    }

    /// Uniformly spaced collocation points on [lo, hi].
    pub fn uniform(lo: f64, hi: f64, n_points: usize) -> Result<Self, Error> {
        if !(hi > lo) {
            return Err(Error::InvalidParameter(format!(
                "interval [{lo}, {hi}] is empty"
            )));
        }
        let pts = (0..n_points)
            .map(|i| {
                if i + 1 == n_points {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n_points - 1) as f64
                }
            })
            .collect();
        Self::new(pts)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weighted L2 norm of a collocated factor.
    pub fn weighted_norm(&self, a: &[f64]) -> f64 {
        assert_eq!(a.len(), self.points.len(), "weighted_norm: length mismatch");
        a.iter()
            .zip(&self.weights)
            .map(|(x, w)| w * x * x)
            .sum::<f64>()
            .sqrt()
    }

    /// Linear interpolation of a collocated factor; exact at grid points,
    /// no extrapolation.
    pub fn interp(&self, factor: &[f64], mu: f64) -> Result<f64, Error> {
        assert_eq!(factor.len(), self.points.len(), "interp: length mismatch");
        if !(mu >= self.lo && mu <= self.hi) {
            return Err(Error::OutOfRange {
                axis: 0,
                value: mu,
                lo: self.lo,
                hi: self.hi,
            });
        }
        let j = match self
            .points
            .binary_search_by(|p| p.partial_cmp(&mu).unwrap())
        {
            Ok(exact) => return Ok(factor[exact]),
            Err(ins) => ins - 1, // mu > points[0] here since mu >= lo and not equal
        };
        let t = (mu - self.points[j]) / (self.points[j + 1] - self.points[j]);
        Ok(factor[j] + t * (factor[j + 1] - factor[j]))
    }
}

/// Σ_j w_j · coeff_j · a_j · b_j — the diagonal parametric bilinear form.
pub fn weighted_inner(axis: &ParameterAxis, coeff: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let n = axis.len();
    assert_eq!(coeff.len(), n, "weighted_inner: coeff length mismatch");
    assert_eq!(a.len(), n, "weighted_inner: a length mismatch");
    assert_eq!(b.len(), n, "weighted_inner: b length mismatch");
    let mut acc = 0.0;
    for j in 0..n {
        acc += axis.weights()[j] * coeff[j] * (a[j] * b[j]);
    }
    acc
}

/// One term of a separated material coefficient: a spatial cell field times
/// one collocated factor per parameter axis.
#[derive(Debug, Clone)]
pub struct CoefficientTerm {
    pub spatial: CellField,
    pub factors: Vec<Vec<f64>>,
}

/// Material coefficient as a sum of rank-one space × parameter terms.
#[derive(Debug, Clone)]
pub struct SeparatedCoefficient {
    terms: Vec<CoefficientTerm>,
}

impl SeparatedCoefficient {
    pub fn new(terms: Vec<CoefficientTerm>, axes: &[ParameterAxis]) -> Self {
        assert!(!terms.is_empty(), "SeparatedCoefficient: needs >= 1 term");
        for t in &terms {
            assert_eq!(
                t.factors.len(),
                axes.len(),
                "SeparatedCoefficient: factor count must match axes"
            );
            for (f, ax) in t.factors.iter().zip(axes) {
                assert_eq!(
                    f.len(),
                    ax.len(),
                    "SeparatedCoefficient: factor length must match axis points"
                );
            }
        }
        SeparatedCoefficient { terms }
    }

    pub fn terms(&self) -> &[CoefficientTerm] {
        &self.terms
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Evaluates the coefficient as a plain cell array at one parameter tuple
    /// given by collocation indices.
    pub fn at_grid_point(&self, indices: &[usize]) -> Vec<f64> {
        let n_cells = self.terms[0].spatial.values().len();
        let mut out = vec![0.0; n_cells];
        for term in &self.terms {
            let factor: f64 = term
                .factors
                .iter()
                .zip(indices)
                .map(|(f, &j)| f[j])
                .product();
            for (o, s) in out.iter_mut().zip(term.spatial.values()) {
                *o += factor * s;
            }
        }
        out
    }

    /// Checks strict positivity of the reconstructed coefficient on the full
    /// cell × parameter-grid product (coercivity requirement).
    pub fn validate_positivity(&self, axes: &[ParameterAxis]) -> Result<(), Error> {
        let sizes: Vec<usize> = axes.iter().map(|a| a.len()).collect();
        let total: usize = sizes.iter().product();
        let mut indices = vec![0usize; axes.len()];
        for flat in 0..total.max(1) {
            let mut rem = flat;
            for (d, s) in sizes.iter().enumerate() {
                indices[d] = rem % s;
                rem /= s;
            }
            let cells = self.at_grid_point(&indices);
            if let Some((c, v)) = cells.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
                return Err(Error::InvalidConfig(format!(
                    "coefficient not positive: value {v} at cell {c}, parameter indices {indices:?}"
                )));
            }
        }
        Ok(())
    }
}

/// One rank-one mode: a spatial nodal vector and one factor per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub spatial: DenseVector,
    pub factors: Vec<Vec<f64>>,
}

impl Mode {
    pub fn new(spatial: DenseVector, factors: Vec<Vec<f64>>) -> Self {
        Mode { spatial, factors }
    }
}

/// Product of factor norms ‖u^m‖ := Π_p ‖u_p^m‖ (spatial factor in the grid's
/// discrete L2, parametric factors in weighted L2).
pub fn mode_magnitude(mode: &Mode, axes: &[ParameterAxis], spatial_weights: &[f64]) -> f64 {
    let mut mag = weighted_spatial_norm(&mode.spatial, spatial_weights);
    for (f, ax) in mode.factors.iter().zip(axes) {
        mag *= ax.weighted_norm(f);
    }
    mag
}

/// Discrete L2 norm of a nodal vector under the given dual-volume weights.
pub fn weighted_spatial_norm(u: &[f64], weights: &[f64]) -> f64 {
    assert_eq!(u.len(), weights.len(), "spatial norm: length mismatch");
    u.iter()
        .zip(weights)
        .map(|(x, w)| w * x * x)
        .sum::<f64>()
        .sqrt()
}

/// Rescales every parametric factor to unit weighted L2 norm, folding the
/// removed scales into the spatial factor. Returns the mode magnitude.
///
/// Fails with `ZeroMode` when a parametric factor has zero norm; a zero
/// spatial factor is reported as magnitude 0.0 instead (the caller decides).
pub fn normalize_mode(
    mode: &mut Mode,
    axes: &[ParameterAxis],
    spatial_weights: &[f64],
) -> Result<f64, Error> {
    assert_eq!(mode.factors.len(), axes.len(), "normalize_mode: axis count");
    let mut scale = 1.0;
    for (f, ax) in mode.factors.iter_mut().zip(axes) {
        let norm = ax.weighted_norm(f);
        if norm == 0.0 {
            return Err(Error::ZeroMode);
        }
        if norm != 1.0 {
            let inv = 1.0 / norm;
            for v in f.iter_mut() {
                *v *= inv;
            }
            scale *= norm;
        }
    }
    if scale != 1.0 {
        for v in mode.spatial.iter_mut() {
            *v *= scale;
        }
    }
    Ok(weighted_spatial_norm(&mode.spatial, spatial_weights))
}

/// Separated solution: optional lift (parametric factors ≡ 1, excluded from
/// the mode count) plus a list of finalized modes.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatedSolution {
    pub axes: Vec<ParameterAxis>,
    pub lift: Option<DenseVector>,
    pub modes: Vec<Mode>,
    n_nodes: usize,
}

impl SeparatedSolution {
    pub fn new(axes: Vec<ParameterAxis>, lift: Option<DenseVector>, n_nodes: usize) -> Self {
        if let Some(l) = &lift {
            assert_eq!(l.len(), n_nodes, "lift length mismatch");
        }
        SeparatedSolution {
            axes,
            lift,
            modes: Vec::new(),
            n_nodes,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn push_mode(&mut self, mode: Mode) {
        assert_eq!(mode.spatial.len(), self.n_nodes, "mode spatial length");
        assert_eq!(mode.factors.len(), self.axes.len(), "mode factor count");
        for (f, ax) in mode.factors.iter().zip(&self.axes) {
            assert_eq!(f.len(), ax.len(), "mode factor length");
        }
        self.modes.push(mode);
    }

    /// Reconstructs the nodal field at a parameter tuple: lift plus the sum
    /// of modes with linearly interpolated parametric factors.
    pub fn evaluate(&self, mu: &[f64]) -> Result<DenseVector, Error> {
        self.evaluate_truncated(mu, self.modes.len())
    }

    /// Same as [`evaluate`](Self::evaluate) using only the first `m` modes.
    pub fn evaluate_truncated(&self, mu: &[f64], m: usize) -> Result<DenseVector, Error> {
        assert!(m <= self.modes.len(), "truncation level exceeds mode count");
        assert_eq!(mu.len(), self.axes.len(), "evaluate: parameter count");
        let mut out = match &self.lift {
            Some(l) => l.clone(),
            None => vec![0.0; self.n_nodes],
        };
        for mode in &self.modes[..m] {
            let mut factor = 1.0;
            for (d, (f, ax)) in mode.factors.iter().zip(&self.axes).enumerate() {
                factor *= ax.interp(f, mu[d]).map_err(|e| match e {
                    Error::OutOfRange { value, lo, hi, .. } => Error::OutOfRange {
                        axis: d,
                        value,
                        lo,
                        hi,
                    },
                    other => other,
                })?;
            }
            if factor != 0.0 {
                for (o, s) in out.iter_mut().zip(&mode.spatial) {
                    *o += factor * s;
                }
            }
        }
        Ok(out)
    }

    /// Evaluates at a collocation grid point given by per-axis indices
    /// (no interpolation).
    pub fn evaluate_at_indices(&self, indices: &[usize]) -> DenseVector {
        self.evaluate_at_indices_truncated(indices, self.modes.len())
    }

    pub fn evaluate_at_indices_truncated(&self, indices: &[usize], m: usize) -> DenseVector {
        assert!(m <= self.modes.len());
        assert_eq!(indices.len(), self.axes.len());
        let mut out = match &self.lift {
            Some(l) => l.clone(),
            None => vec![0.0; self.n_nodes],
        };
        for mode in &self.modes[..m] {
            let mut factor = 1.0;
            for (f, &j) in mode.factors.iter().zip(indices) {
                factor *= f[j];
            }
            if factor != 0.0 {
                for (o, s) in out.iter_mut().zip(&mode.spatial) {
                    *o += factor * s;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn axis01(n: usize) -> ParameterAxis {
        ParameterAxis::uniform(0.0, 1.0, n).unwrap()
    }

    #[test]
    fn trapezoid_weights_sum_to_measure() {
        let ax = ParameterAxis::uniform(0.2, 1.0, 100).unwrap();
        let sum: f64 = ax.weights().iter().sum();
        assert!((sum - 0.8).abs() <= 1e-13 * 0.8);
        assert_eq!(ax.points()[0], 0.2);
        assert_eq!(ax.points()[99], 1.0);
        assert!(ax.weights().iter().all(|w| *w > 0.0));
    }

    #[test]
    fn weighted_inner_unit_measure() {
        let ax = axis01(11);
        let ones = vec![1.0; 11];
        let v = weighted_inner(&ax, &ones, &ones, &ones);
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn weighted_inner_linear_integrand_is_exact() {
        let ax = ParameterAxis::uniform(0.2, 1.0, 100).unwrap();
        let mu: Vec<f64> = ax.points().to_vec();
        let ones = vec![1.0; ax.len()];
        let v = weighted_inner(&ax, &mu, &ones, &ones);
        assert!((v - 0.48).abs() < 1e-12, "{v}"); // trapezoid exact for linear
    }

    #[test]
    fn weighted_inner_symmetry_cancellation() {
        let ax = ParameterAxis::uniform(-1.0, 1.0, 21).unwrap();
        let anti: Vec<f64> = ax.points().to_vec();
        let sym: Vec<f64> = ax.points().iter().map(|x| x * x).collect();
        let coeff = vec![1.0; 21];
        let v = weighted_inner(&ax, &coeff, &anti, &sym);
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn weighted_inner_bitwise_symmetric() {
        let ax = axis01(17);
        let a: Vec<f64> = (0..17).map(|i| (i as f64 * 0.3).sin()).collect();
        let b: Vec<f64> = (0..17).map(|i| (i as f64 * 0.11).cos()).collect();
        let c: Vec<f64> = (0..17).map(|i| 1.0 + (i % 3) as f64).collect();
        assert_eq!(weighted_inner(&ax, &c, &a, &b), weighted_inner(&ax, &c, &b, &a));
    }

    #[test]
    #[should_panic(expected = "length mismatch")]
    fn weighted_inner_length_mismatch_panics() {
        let ax = axis01(5);
        weighted_inner(&ax, &[1.0; 5], &[1.0; 4], &[1.0; 5]);
    }

    #[test]
    fn interp_exact_at_grid_points_and_between() {
        let ax = ParameterAxis::new(vec![0.0, 0.5, 2.0]).unwrap();
        let f = vec![1.0, 3.0, -1.0];
        assert_eq!(ax.interp(&f, 0.0).unwrap(), 1.0);
        assert_eq!(ax.interp(&f, 0.5).unwrap(), 3.0);
        assert_eq!(ax.interp(&f, 2.0).unwrap(), -1.0);
        assert!((ax.interp(&f, 0.25).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(ax.interp(&f, -0.1), Err(Error::OutOfRange { .. })));
        assert!(matches!(ax.interp(&f, 2.1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn evaluate_lift_only() {
        let sol = SeparatedSolution::new(vec![axis01(5)], Some(vec![1.0, 2.0, 3.0]), 3);
        let out = sol.evaluate(&[0.7]).unwrap();
        assert_eq!(out, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn evaluate_unit_factor_returns_spatial() {
        let mut sol = SeparatedSolution::new(vec![axis01(4)], None, 2);
        sol.push_mode(Mode::new(vec![2.0, -1.0], vec![vec![1.0; 4]]));
        let out = sol.evaluate(&[0.3]).unwrap();
        assert_eq!(out, vec![2.0, -1.0]);
    }

    #[test]
    fn normalize_mode_zero_factor_signals() {
        let ax = axis01(4);
        let weights = vec![1.0; 3];
        let mut mode = Mode::new(vec![1.0, 1.0, 1.0], vec![vec![0.0; 4]]);
        assert!(matches!(
            normalize_mode(&mut mode, &[ax], &weights),
            Err(Error::ZeroMode)
        ));
    }

    #[test]
    fn normalize_mode_already_unit_norm() {
        let ax = axis01(3); // weights (0.25, 0.5, 0.25)
        let f = vec![1.0, 1.0, 1.0]; // weighted norm 1
        let weights = vec![0.5, 1.0, 0.5];
        let mut mode = Mode::new(vec![3.0, 0.0, 0.0], vec![f.clone()]);
        let mag = normalize_mode(&mut mode, &[ax], &weights).unwrap();
        assert_eq!(mode.factors[0], f);
        assert_eq!(mode.spatial, vec![3.0, 0.0, 0.0]);
        assert!((mag - (0.5f64 * 9.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn normalize_scaling_invariance() {
        let ax = axis01(6);
        let weights = vec![0.3; 4];
        let spatial = vec![1.0, -2.0, 0.5, 3.0];
        let factor: Vec<f64> = (0..6).map(|i| 1.0 + i as f64).collect();
        let mut a = Mode::new(spatial.iter().map(|v| v / 4.0).collect(), vec![factor.iter().map(|v| 4.0 * v).collect()]);
        let mut b = Mode::new(spatial.clone(), vec![factor.clone()]);
        let ma = normalize_mode(&mut a, std::slice::from_ref(&ax), &weights).unwrap();
        let mb = normalize_mode(&mut b, std::slice::from_ref(&ax), &weights).unwrap();
        assert!((ma - mb).abs() <= 1e-15 * mb.abs());
        for (x, y) in a.factors[0].iter().zip(&b.factors[0]) {
            assert!((x - y).abs() <= 1e-15 * y.abs().max(1.0));
        }
        for (x, y) in a.spatial.iter().zip(&b.spatial) {
            assert!((x - y).abs() <= 1e-14 * y.abs().max(1.0));
        }
    }

    proptest! {
        // evaluate() is unchanged by normalization, checked at random mu.
        #[test]
        fn normalize_preserves_evaluation(seed in 0u64..500) {
            let mut state = seed.wrapping_add(99);
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
            };
            let ax = ParameterAxis::uniform(0.0, 1.0, 9).unwrap();
            let n = 5;
            let spatial: Vec<f64> = (0..n).map(|_| next() * 4.0).collect();
            let factor: Vec<f64> = (0..9).map(|_| next() * 2.0 + 0.1).collect();
            let weights = vec![0.2; n];

            let mut before = SeparatedSolution::new(vec![ax.clone()], None, n);
            before.push_mode(Mode::new(spatial.clone(), vec![factor.clone()]));
            let mut mode = Mode::new(spatial, vec![factor]);
            normalize_mode(&mut mode, std::slice::from_ref(&ax), &weights).unwrap();
            let mut after = SeparatedSolution::new(vec![ax.clone()], None, n);
            after.push_mode(mode);

            for k in 0..20 {
                let mu = (k as f64 + next().abs()) / 20.5;
                let a = before.evaluate(&[mu]).unwrap();
                let b = after.evaluate(&[mu]).unwrap();
                for (x, y) in a.iter().zip(&b) {
                    let scale = x.abs().max(1.0);
                    prop_assert!((x - y).abs() <= 1e-13 * scale);
                }
            }
        }

        // normalize is idempotent to within one ulp-scale tolerance.
        #[test]
        fn normalize_idempotent(seed in 0u64..500) {
            let mut state = seed.wrapping_add(7);
            let mut next = move || {
                state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
                ((state >> 11) as f64 / (1u64 << 53) as f64) + 0.05
            };
            let ax = ParameterAxis::uniform(-1.0, 2.0, 7).unwrap();
            let weights = vec![0.7; 4];
            let mut mode = Mode::new(
                (0..4).map(|_| next()).collect(),
                vec![(0..7).map(|_| next()).collect()],
            );
            normalize_mode(&mut mode, std::slice::from_ref(&ax), &weights).unwrap();
            let once = mode.clone();
            normalize_mode(&mut mode, std::slice::from_ref(&ax), &weights).unwrap();
            for (x, y) in once.factors[0].iter().zip(&mode.factors[0]) {
                prop_assert!((x - y).abs() <= 1e-15 * y.abs().max(1.0));
            }
            for (x, y) in once.spatial.iter().zip(&mode.spatial) {
                prop_assert!((x - y).abs() <= 1e-15 * y.abs().max(1.0));
            }
        }

        // evaluate is multilinear: scaling one factor of a mode scales that
        // mode's contribution linearly.
        #[test]
        fn evaluate_multilinear(c in -4.0f64..4.0, seed in 0u64..200) {
            let mut state = seed.wrapping_add(3);
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
            };
            let ax = ParameterAxis::uniform(0.0, 1.0, 6).unwrap();
            let n = 4;
            let spatial: Vec<f64> = (0..n).map(|_| next()).collect();
            let factor: Vec<f64> = (0..6).map(|_| next()).collect();

            let mut base = SeparatedSolution::new(vec![ax.clone()], None, n);
            base.push_mode(Mode::new(spatial.clone(), vec![factor.clone()]));
            let mut scaled = SeparatedSolution::new(vec![ax.clone()], None, n);
            scaled.push_mode(Mode::new(
                spatial.clone(),
                vec![factor.iter().map(|v| c * v).collect()],
            ));

            let mu = [0.37];
            let a = base.evaluate(&mu).unwrap();
            let b = scaled.evaluate(&mu).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((c * x - y).abs() <= 1e-13 * (c * x).abs().max(1.0));
            }
        }
    }

    #[test]
    fn coefficient_positivity_validation() {
        use crate::mesh::TensorGrid;
        let grid = TensorGrid::uniform(&[(0.0, 2.0, 2)]).unwrap();
        let ax = ParameterAxis::uniform(0.2, 1.0, 5).unwrap();
        // sigma = mu on the left cell, 1 on the right cell
        let left = CellField::new(&grid, vec![1.0, 0.0]);
        let right = CellField::new(&grid, vec![0.0, 1.0]);
        let coeff = SeparatedCoefficient::new(
            vec![
                CoefficientTerm {
                    spatial: left.clone(),
                    factors: vec![ax.points().to_vec()],
                },
                CoefficientTerm {
                    spatial: right,
                    factors: vec![vec![1.0; 5]],
                },
            ],
            std::slice::from_ref(&ax),
        );
        coeff.validate_positivity(std::slice::from_ref(&ax)).unwrap();

        // dropping the right-hand term leaves zero coefficient there
        let bad = SeparatedCoefficient::new(
            vec![CoefficientTerm {
                spatial: left,
                factors: vec![ax.points().to_vec()],
            }],
            std::slice::from_ref(&ax),
        );
        assert!(bad.validate_positivity(std::slice::from_ref(&ax)).is_err());
    }

    #[test]
    fn coefficient_at_grid_point() {
        use crate::mesh::TensorGrid;
        let grid = TensorGrid::uniform(&[(0.0, 2.0, 2)]).unwrap();
        let ax = ParameterAxis::uniform(0.0, 1.0, 3).unwrap();
        let coeff = SeparatedCoefficient::new(
            vec![CoefficientTerm {
                spatial: CellField::new(&grid, vec![2.0, 4.0]),
                factors: vec![vec![1.0, 2.0, 3.0]],
            }],
            std::slice::from_ref(&ax),
        );
        assert_eq!(coeff.at_grid_point(&[0]), vec![2.0, 4.0]);
        assert_eq!(coeff.at_grid_point(&[2]), vec![6.0, 12.0]);
    }
}
