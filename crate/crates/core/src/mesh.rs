//! Tensor-product grids and FIT operators.
//!
//! The spatial problems are discretized on staggered tensor grids: potentials
//! live on primal nodes, fluxes on primal edges, materials on primal cells.
//! The nodal div-grad operator is S = Gᵀ D G where G is the node-to-edge
//! incidence and D holds per-edge conductances (averaged material times dual
//! facet area over edge length). Numbering is lexicographic with x fastest.

use crate::error::Error;
use crate::linalg::{DenseVector, SparseMatrix};

/// How cell materials are averaged onto primal edges.
///
/// Arithmetic dual-facet-weighted averaging is the default; harmonic
/// averaging is provided as the equally defensible alternative for
/// layered materials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaterialAveraging {
    #[default]
    Arithmetic,
    Harmonic,
}

/// One primal edge: oriented from `tail` to `head` along `axis`.
#[derive(Debug, Clone)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub axis: usize,
    pub length: f64,
    /// Multi-index of the tail node (unused trailing dims are zero).
    pub tail_index: [usize; 3],
}

/// Tensor-product spatial mesh with cached FIT metric data.
#[derive(Debug, Clone)]
pub struct TensorGrid {
    axes: Vec<Vec<f64>>,
    dual_lengths: Vec<Vec<f64>>,
    edges: Vec<Edge>,
    dual_volumes: Vec<f64>,
}

impl TensorGrid {
    /// Builds a grid from per-axis node coordinates (1 to 3 axes, each with
    /// at least two strictly increasing points).
    pub fn new(axes: Vec<Vec<f64>>) -> Result<Self, Error> {
        if axes.is_empty() || axes.len() > 3 {
            return Err(Error::InvalidGrid(format!(
                "expected 1 to 3 axes, got {}",
                axes.len()
            )));
        }
        for (d, ax) in axes.iter().enumerate() {
            if ax.len() < 2 {
                return Err(Error::InvalidGrid(format!(
                    "axis {d} needs at least 2 points, got {}",
                    ax.len()
                )));
            }
            for w in ax.windows(2) {
                if !(w[1] > w[0]) || !w[0].is_finite() || !w[1].is_finite() {
                    return Err(Error::InvalidGrid(format!(
                        "axis {d} coordinates must be strictly increasing and finite"
                    )));
                }
            }
        }

        let dual_lengths: Vec<Vec<f64>> = axes
            .iter()
            .map(|ax| {
                let n = ax.len();
                (0..n)
                    .map(|i| {
                        let left = if i > 0 { (ax[i] - ax[i - 1]) / 2.0 } else { 0.0 };
                        let right = if i + 1 < n { (ax[i + 1] - ax[i]) / 2.0 } else { 0.0 };
                        left + right
                    })
                    .collect()
            })
            .collect();

        let mut grid = TensorGrid {
            axes,
            dual_lengths,
            edges: Vec::new(),
            dual_volumes: Vec::new(),
        };
        grid.edges = grid.enumerate_edges();
        grid.dual_volumes = (0..grid.n_nodes())
            .map(|i| {
                let mi = grid.node_multi_index(i);
                (0..grid.dim()).map(|d| grid.dual_lengths[d][mi[d]]).product()
            })
            .collect();
        Ok(grid)
    }

    /// Uniform grid helper: `cells` equal cells per axis over [lo, hi].
    pub fn uniform(ranges: &[(f64, f64, usize)]) -> Result<Self, Error> {
        let axes = ranges
            .iter()
            .map(|&(lo, hi, cells)| {
                let n = cells + 1;
                (0..n)
                    .map(|i| {
                        if i == cells {
                            hi
                        } else {
                            lo + (hi - lo) * i as f64 / cells as f64
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(axes)
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axis_points(&self, d: usize) -> &[f64] {
        &self.axes[d]
    }

    pub fn node_counts(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len()).collect()
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len() - 1).collect()
    }

    pub fn n_nodes(&self) -> usize {
        self.axes.iter().map(|a| a.len()).product()
    }

    pub fn n_cells(&self) -> usize {
        self.axes.iter().map(|a| a.len() - 1).product()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Dual cell volume per node, the discrete L2 weight of nodal fields.
    pub fn dual_volumes(&self) -> &[f64] {
        &self.dual_volumes
    }

    /// Weighted discrete L2 norm of a nodal vector.
    pub fn spatial_norm(&self, u: &[f64]) -> f64 {
        assert_eq!(u.len(), self.n_nodes(), "spatial_norm: length mismatch");
        u.iter()
            .zip(&self.dual_volumes)
            .map(|(ui, w)| w * ui * ui)
            .sum::<f64>()
            .sqrt()
    }

    pub fn node_index(&self, mi: &[usize]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for d in 0..self.dim() {
            debug_assert!(mi[d] < self.axes[d].len());
            idx += mi[d] * stride;
            stride *= self.axes[d].len();
        }
        idx
    }

    pub fn node_multi_index(&self, mut idx: usize) -> [usize; 3] {
        let mut mi = [0usize; 3];
        for d in 0..self.dim() {
            let n = self.axes[d].len();
            mi[d] = idx % n;
            idx /= n;
        }
        mi
    }

    pub fn node_coords(&self, idx: usize) -> Vec<f64> {
        let mi = self.node_multi_index(idx);
        (0..self.dim()).map(|d| self.axes[d][mi[d]]).collect()
    }

    pub fn cell_index(&self, mi: &[usize]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for d in 0..self.dim() {
            debug_assert!(mi[d] + 1 < self.axes[d].len());
            idx += mi[d] * stride;
            stride *= self.axes[d].len() - 1;
        }
        idx
    }

    pub fn cell_multi_index(&self, mut idx: usize) -> [usize; 3] {
        let mut mi = [0usize; 3];
        for d in 0..self.dim() {
            let n = self.axes[d].len() - 1;
            mi[d] = idx % n;
            idx /= n;
        }
        mi
    }

    pub fn cell_center(&self, idx: usize) -> Vec<f64> {
        let mi = self.cell_multi_index(idx);
        (0..self.dim())
            .map(|d| (self.axes[d][mi[d]] + self.axes[d][mi[d] + 1]) / 2.0)
            .collect()
    }

    pub fn cell_volume(&self, idx: usize) -> f64 {
        let mi = self.cell_multi_index(idx);
        (0..self.dim())
            .map(|d| self.axes[d][mi[d] + 1] - self.axes[d][mi[d]])
            .product()
    }

    /// Node indices of one boundary face of the grid.
    pub fn face_nodes(&self, axis: usize, side: Side) -> Vec<usize> {
        assert!(axis < self.dim(), "face_nodes: axis out of range");
        let fixed = match side {
            Side::Min => 0,
            Side::Max => self.axes[axis].len() - 1,
        };
        let mut nodes = Vec::new();
        for i in 0..self.n_nodes() {
            if self.node_multi_index(i)[axis] == fixed {
                nodes.push(i);
            }
        }
        nodes
    }

    fn enumerate_edges(&self) -> Vec<Edge> {
        let dim = self.dim();
        let counts = self.node_counts();
        let mut edges = Vec::new();
        for d in 0..dim {
            // lexicographic over nodes with index[d] < n_d - 1, x fastest
            let mut limits = counts.clone();
            limits[d] -= 1;
            let total: usize = limits.iter().product();
            for flat in 0..total {
                let mut rem = flat;
                let mut mi = [0usize; 3];
                for (t, &lim) in limits.iter().enumerate() {
                    mi[t] = rem % lim;
                    rem /= lim;
                }
                let tail = self.node_index(&mi[..dim]);
                let mut head_mi = mi;
                head_mi[d] += 1;
                let head = self.node_index(&head_mi[..dim]);
                edges.push(Edge {
                    tail,
                    head,
                    axis: d,
                    length: self.axes[d][mi[d] + 1] - self.axes[d][mi[d]],
                    tail_index: mi,
                });
            }
        }
        edges
    }

    /// Visits the cells adjacent to an edge with the portion of the edge's
    /// dual facet area that lies in each cell.
    fn for_each_adjacent_cell(&self, edge: &Edge, mut visit: impl FnMut(usize, f64)) {
        let dim = self.dim();
        let transverse: Vec<usize> = (0..dim).filter(|&t| t != edge.axis).collect();
        let n_combo = 1usize << transverse.len();
        for combo in 0..n_combo {
            let mut cell_mi = edge.tail_index;
            let mut area = 1.0;
            let mut valid = true;
            for (bit, &t) in transverse.iter().enumerate() {
                let i = edge.tail_index[t];
                if combo & (1 << bit) == 0 {
                    // cell below the node along axis t
                    if i == 0 {
                        valid = false;
                        break;
                    }
                    cell_mi[t] = i - 1;
                    area *= (self.axes[t][i] - self.axes[t][i - 1]) / 2.0;
                } else {
                    if i + 1 >= self.axes[t].len() {
                        valid = false;
                        break;
                    }
                    cell_mi[t] = i;
                    area *= (self.axes[t][i + 1] - self.axes[t][i]) / 2.0;
                }
            }
            if valid {
                visit(self.cell_index(&cell_mi[..dim]), area);
            }
        }
    }
}

/// Face selector for boundary conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Min,
    Max,
}

/// Per-cell material values (conductivities or their spatial factors).
#[derive(Debug, Clone, PartialEq)]
pub struct CellField {
    values: Vec<f64>,
}

impl CellField {
    /// Panics when the length does not match the grid or a value is negative;
    /// indicator fields (zeros) are allowed.
    pub fn new(grid: &TensorGrid, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.n_cells(), "CellField: length mismatch");
        assert!(
            values.iter().all(|v| *v >= 0.0 && v.is_finite()),
            "CellField: values must be finite and non-negative"
        );
        CellField { values }
    }

    pub fn constant(grid: &TensorGrid, value: f64) -> Self {
        Self::new(grid, vec![value; grid.n_cells()])
    }

    /// Builds a field by evaluating `f` at each cell center.
    pub fn from_cell_centers(grid: &TensorGrid, f: impl Fn(&[f64]) -> f64) -> Self {
        let values = (0..grid.n_cells())
            .map(|c| f(&grid.cell_center(c)))
            .collect();
        Self::new(grid, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Dirichlet data on a set of boundary nodes; everything else is treated as
/// homogeneous Neumann.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCondition {
    nodes: Vec<usize>,
    values: Vec<f64>,
}

impl BoundaryCondition {
    /// Builds Dirichlet data from explicit (node, value) pairs. The node set
    /// must be non-empty (the reduced system would be singular otherwise) and
    /// duplicated nodes must agree on the value.
    pub fn from_nodes(grid: &TensorGrid, pairs: &[(usize, f64)]) -> Result<Self, Error> {
        if pairs.is_empty() {
            return Err(Error::InvalidConfig(
                "Dirichlet node set must be non-empty".into(),
            ));
        }
        let mut sorted: Vec<(usize, f64)> = pairs.to_vec();
        sorted.sort_by_key(|&(n, _)| n);
        let mut nodes: Vec<usize> = Vec::new();
        let mut values = Vec::new();
        for (n, v) in sorted {
            if n >= grid.n_nodes() {
                return Err(Error::InvalidConfig(format!(
                    "Dirichlet node {n} out of range"
                )));
            }
            if nodes.last() == Some(&n) {
                if *values.last().unwrap() != v {
                    return Err(Error::InvalidConfig(format!(
                        "conflicting Dirichlet values at node {n}"
                    )));
                }
            } else {
                nodes.push(n);
                values.push(v);
            }
        }
        Ok(BoundaryCondition { nodes, values })
    }

    /// Dirichlet data over whole grid faces, e.g. `[(0, Side::Min, 0.0), (0, Side::Max, 1.0)]`.
    pub fn from_faces(grid: &TensorGrid, faces: &[(usize, Side, f64)]) -> Result<Self, Error> {
        let mut pairs = Vec::new();
        for &(axis, side, value) in faces {
            if axis >= grid.dim() {
                return Err(Error::InvalidConfig(format!(
                    "boundary face axis {axis} out of range for dim {}",
                    grid.dim()
                )));
            }
            for n in grid.face_nodes(axis, side) {
                pairs.push((n, value));
            }
        }
        Self::from_nodes(grid, &pairs)
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// True when every Dirichlet value is zero.
    pub fn is_homogeneous(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    /// All Dirichlet values equal (the lift can then be a constant field).
    pub fn uniform_value(&self) -> Option<f64> {
        let v = self.values[0];
        self.values.iter().all(|x| *x == v).then_some(v)
    }

    /// Full-length vector with the Dirichlet values at their nodes, zero elsewhere.
    pub fn nodal_values(&self, grid: &TensorGrid) -> DenseVector {
        let mut out = vec![0.0; grid.n_nodes()];
        for (n, v) in self.nodes.iter().zip(&self.values) {
            out[*n] = *v;
        }
        out
    }
}

const NOT_FREE: usize = usize::MAX;

/// Free/Dirichlet node bookkeeping shared by all operators on one grid.
#[derive(Debug, Clone)]
pub struct DirichletMap {
    free_nodes: Vec<usize>,
    node_to_free: Vec<usize>,
    bc_full: DenseVector,
}

impl DirichletMap {
    pub fn new(grid: &TensorGrid, bc: &BoundaryCondition) -> Self {
        let n = grid.n_nodes();
        let bc_full = bc.nodal_values(grid);
        let mut node_to_free = vec![NOT_FREE; n];
        let mut free_nodes = Vec::with_capacity(n - bc.nodes().len());
        let mut is_dir = vec![false; n];
        for &d in bc.nodes() {
            is_dir[d] = true;
        }
        for (i, dir) in is_dir.iter().enumerate() {
            if !dir {
                node_to_free[i] = free_nodes.len();
                free_nodes.push(i);
            }
        }
        DirichletMap {
            free_nodes,
            node_to_free,
            bc_full,
        }
    }

    pub fn n_free(&self) -> usize {
        self.free_nodes.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.node_to_free.len()
    }

    pub fn free_nodes(&self) -> &[usize] {
        &self.free_nodes
    }

    pub fn is_free(&self, node: usize) -> bool {
        self.node_to_free[node] != NOT_FREE
    }

    fn free_index(&self, node: usize) -> usize {
        let f = self.node_to_free[node];
        debug_assert_ne!(f, NOT_FREE);
        f
    }

    /// Dirichlet values as a full-length vector (zero at free nodes).
    pub fn bc_values(&self) -> &[f64] {
        &self.bc_full
    }

    pub fn restrict(&self, full: &[f64]) -> DenseVector {
        assert_eq!(full.len(), self.node_to_free.len());
        self.free_nodes.iter().map(|&i| full[i]).collect()
    }

    /// Embeds a free-node vector into a full vector with zeros at Dirichlet nodes.
    pub fn embed(&self, free: &[f64]) -> DenseVector {
        assert_eq!(free.len(), self.free_nodes.len());
        let mut full = vec![0.0; self.node_to_free.len()];
        for (f, &i) in free.iter().zip(&self.free_nodes) {
            full[i] = *f;
        }
        full
    }
}

/// Per-edge conductances: averaged material times dual facet area over edge
/// length. Deterministic in edge enumeration order.
pub fn edge_material(
    grid: &TensorGrid,
    material: &CellField,
    averaging: MaterialAveraging,
) -> Vec<f64> {
    let vals = material.values();
    assert_eq!(vals.len(), grid.n_cells());
    grid.edges()
        .iter()
        .map(|edge| {
            let mut area = 0.0;
            let mut weighted = 0.0; // arithmetic: sum sigma*portion; harmonic: sum portion/sigma
            let mut zero_cell = false;
            grid.for_each_adjacent_cell(edge, |cell, portion| {
                area += portion;
                match averaging {
                    MaterialAveraging::Arithmetic => weighted += vals[cell] * portion,
                    MaterialAveraging::Harmonic => {
                        if vals[cell] == 0.0 {
                            zero_cell = true;
                        } else {
                            weighted += portion / vals[cell];
                        }
                    }
                }
            });
            match averaging {
                MaterialAveraging::Arithmetic => weighted / edge.length,
                MaterialAveraging::Harmonic => {
                    if zero_cell || weighted == 0.0 {
                        0.0
                    } else {
                        // harmonic mean area/weighted, times area over length
                        area * area / weighted / edge.length
                    }
                }
            }
        })
        .collect()
}

/// Full (unreduced) stiffness matrix S = Gᵀ D G on all nodes. Entries where
/// the material vanishes are kept as explicit zeros so that matrices of all
/// coefficient terms share one sparsity pattern.
pub fn assemble_full_stiffness(
    grid: &TensorGrid,
    material: &CellField,
    averaging: MaterialAveraging,
) -> SparseMatrix {
    let cond = edge_material(grid, material, averaging);
    let n = grid.n_nodes();
    let mut triplets = Vec::with_capacity(4 * grid.n_edges() + n);
    // explicit diagonal so isolated nodes keep a stored (zero) entry
    for i in 0..n {
        triplets.push((i, i, 0.0));
    }
    for (edge, g) in grid.edges().iter().zip(&cond) {
        triplets.push((edge.tail, edge.tail, *g));
        triplets.push((edge.head, edge.head, *g));
        triplets.push((edge.tail, edge.head, -*g));
        triplets.push((edge.head, edge.tail, -*g));
    }
    SparseMatrix::from_triplets(n, n, triplets)
}

/// Reduces a full stiffness matrix by Dirichlet row/column elimination.
///
/// Returns the free-node submatrix and the lifting vector
/// l = S[free, dirichlet] · u_dirichlet, which must be subtracted from the
/// reduced right-hand side.
pub fn reduce_stiffness(full: &SparseMatrix, map: &DirichletMap) -> (SparseMatrix, DenseVector) {
    let nf = map.n_free();
    let mut triplets = Vec::new();
    let mut lift = vec![0.0; nf];
    for (fi, &i) in map.free_nodes().iter().enumerate() {
        let (cols, vals) = full.row(i);
        for (c, v) in cols.iter().zip(vals) {
            if map.is_free(*c) {
                triplets.push((fi, map.free_index(*c), *v));
            } else {
                lift[fi] += v * map.bc_values()[*c];
            }
        }
    }
    (SparseMatrix::from_triplets(nf, nf, triplets), lift)
}

/// Reduced SPD operator plus Dirichlet lifting data.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub matrix: SparseMatrix,
    /// S[free, dirichlet] · u_dirichlet; subtract from the reduced RHS.
    pub lift_rhs: DenseVector,
    pub map: DirichletMap,
}

/// Assembles the reduced stiffness system for one material field.
///
/// Fails with `SingularSystem` when some free node has a zero diagonal, i.e.
/// the material vanishes on a component that contains no Dirichlet node.
pub fn assemble_stiffness(
    grid: &TensorGrid,
    material: &CellField,
    bc: &BoundaryCondition,
    averaging: MaterialAveraging,
) -> Result<AssembledSystem, Error> {
    let full = assemble_full_stiffness(grid, material, averaging);
    let map = DirichletMap::new(grid, bc);
    let (matrix, lift_rhs) = reduce_stiffness(&full, &map);
    for (fi, d) in matrix.diagonal().iter().enumerate() {
        if *d == 0.0 {
            return Err(Error::SingularSystem(format!(
                "zero material around node {} (no Dirichlet connection)",
                map.free_nodes()[fi]
            )));
        }
    }
    Ok(AssembledSystem {
        matrix,
        lift_rhs,
        map,
    })
}

/// Edge-based Joule-loss load vector.
///
/// Per edge the power p = g · Δu_i · Δu_j (g the edge conductance) is split
/// half and half onto the endpoint nodes, so the nodal sum equals uᵀ S u for
/// u_i = u_j = u and the matching material.
pub fn joule_rhs(
    grid: &TensorGrid,
    material: &CellField,
    averaging: MaterialAveraging,
    u_i: &[f64],
    u_j: &[f64],
) -> DenseVector {
    assert_eq!(u_i.len(), grid.n_nodes(), "joule_rhs: u_i length mismatch");
    assert_eq!(u_j.len(), grid.n_nodes(), "joule_rhs: u_j length mismatch");
    let cond = edge_material(grid, material, averaging);
    let mut rhs = vec![0.0; grid.n_nodes()];
    for (edge, g) in grid.edges().iter().zip(&cond) {
        let di = u_i[edge.head] - u_i[edge.tail];
        let dj = u_j[edge.head] - u_j[edge.tail];
        let p = g * (di * dj);
        rhs[edge.tail] += p / 2.0;
        rhs[edge.head] += p / 2.0;
    }
    rhs
}
