//! Finite ordered graphs in the dart (half-edge) representation, their
//! chain complex, homology and cohomology bases, and the edge pairing.
//!
//! Every geometric edge is a pair of mutually inverse darts `{e, ē}`
//! swapped by the twin involution; loops and parallel edges are allowed,
//! as are isolated vertices and the empty graph. Vertices and edges are
//! keyed by string labels and stored sorted, so all derived coordinates
//! (matrix rows and columns, homology bases) are deterministic.
//!
//! The degree-one chain space is the span of the darts modulo `e = -ē`;
//! chains are stored in the coordinates of the canonical orientation
//! (the forward dart of each edge), which makes the antisymmetry
//! structural rather than checked.

use crate::linalg::{Matrix, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

static NEXT_GRAPH_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertexId(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdgeId(String),
    #[error("unknown vertex id {0:?}")]
    UnknownVertexId(String),
    #[error("unknown edge id {0:?}")]
    UnknownEdgeId(String),
    #[error("unknown dart id {0:?} (expected an edge id followed by '+' or '-')")]
    UnknownDartId(String),
    #[error("value belongs to a different graph")]
    GraphMismatch,
    #[error("walk is empty")]
    EmptyWalk,
    #[error("walk is not connected at step {position}: target of one dart is not the source of the next")]
    WalkNotConnected { position: usize },
    #[error("walk is not closed: it ends at a vertex different from its start")]
    WalkNotClosed,
    #[error("expected a vector of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// Opaque identity of a [`Graph`] value, used to detect cross-graph misuse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphId(u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }

    pub(crate) fn from_index(i: usize) -> VertexId {
        VertexId(i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(usize);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A dart (ordered edge). Dart `2i` is the forward dart of edge `i`
/// (source to destination as declared), dart `2i + 1` its twin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DartId(usize);

impl DartId {
    pub fn index(self) -> usize {
        self.0
    }

    #[cfg(test)]
    pub(crate) fn from_index(i: usize) -> DartId {
        DartId(i)
    }

    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 / 2)
    }

    pub fn twin(self) -> DartId {
        DartId(self.0 ^ 1)
    }

    pub fn is_forward(self) -> bool {
        self.0 & 1 == 0
    }
}

#[derive(Debug, Clone)]
struct EdgeRec {
    label: String,
    src: VertexId,
    dst: VertexId,
}

/// Description of one edge for [`Graph::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, src: impl Into<String>, dst: impl Into<String>) -> Self {
        EdgeSpec {
            id: id.into(),
            src: src.into(),
            dst: dst.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    id: GraphId,
    vertex_labels: Vec<String>,
    edges: Vec<EdgeRec>,
}

impl Graph {
    /// Builds a graph from vertex labels and edge descriptions. Labels are
    /// sorted, so the same data always produces the same coordinates.
    pub fn new(
        vertices: impl IntoIterator<Item = String>,
        edges: impl IntoIterator<Item = EdgeSpec>,
    ) -> Result<Graph, GraphError> {
        let mut vertex_labels: Vec<String> = vertices.into_iter().collect();
        vertex_labels.sort();
        if let Some(dup) = vertex_labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertexId(dup[0].clone()));
        }
        let lookup: BTreeMap<&str, VertexId> = vertex_labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), VertexId(i)))
            .collect();
        let mut specs: Vec<EdgeSpec> = edges.into_iter().collect();
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(dup) = specs.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(GraphError::DuplicateEdgeId(dup[0].id.clone()));
        }
        let edges = specs
            .into_iter()
            .map(|spec| {
                let src = *lookup
                    .get(spec.src.as_str())
                    .ok_or_else(|| GraphError::UnknownVertexId(spec.src.clone()))?;
                let dst = *lookup
                    .get(spec.dst.as_str())
                    .ok_or_else(|| GraphError::UnknownVertexId(spec.dst.clone()))?;
                Ok(EdgeRec {
                    label: spec.id,
                    src,
                    dst,
                })
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        Ok(Graph {
            id: GraphId(NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed)),
            vertex_labels,
            edges,
        })
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn darts(&self) -> impl Iterator<Item = DartId> {
        (0..self.dart_count()).map(DartId)
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertex_labels[v.0]
    }

    pub fn edge_label(&self, e: EdgeId) -> &str {
        &self.edges[e.0].label
    }

    pub fn dart_label(&self, d: DartId) -> String {
        let sign = if d.is_forward() { '+' } else { '-' };
        format!("{}{}", self.edges[d.0 / 2].label, sign)
    }

    pub fn vertex_by_label(&self, label: &str) -> Result<VertexId, GraphError> {
        self.vertex_labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map(VertexId)
            .map_err(|_| GraphError::UnknownVertexId(label.to_string()))
    }

    pub fn edge_by_label(&self, label: &str) -> Result<EdgeId, GraphError> {
        self.edges
            .binary_search_by(|e| e.label.as_str().cmp(label))
            .map(EdgeId)
            .map_err(|_| GraphError::UnknownEdgeId(label.to_string()))
    }

    /// Parses a dart label: an edge id followed by `+` (forward) or `-`.
    pub fn dart_by_label(&self, label: &str) -> Result<DartId, GraphError> {
        let (edge_label, forward) = match label.char_indices().last() {
            Some((i, '+')) => (&label[..i], true),
            Some((i, '-')) => (&label[..i], false),
            _ => return Err(GraphError::UnknownDartId(label.to_string())),
        };
        let e = self
            .edge_by_label(edge_label)
            .map_err(|_| GraphError::UnknownDartId(label.to_string()))?;
        Ok(if forward {
            self.forward_dart(e)
        } else {
            self.forward_dart(e).twin()
        })
    }

    pub fn forward_dart(&self, e: EdgeId) -> DartId {
        DartId(2 * e.0)
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.edges[e.0].src, self.edges[e.0].dst)
    }

    pub fn dart_src(&self, d: DartId) -> VertexId {
        let edge = &self.edges[d.0 / 2];
        if d.is_forward() {
            edge.src
        } else {
            edge.dst
        }
    }

    pub fn dart_dst(&self, d: DartId) -> VertexId {
        self.dart_src(d.twin())
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.edges[e.0].src == self.edges[e.0].dst
    }

    /// Number of connected components (isolated vertices count).
    pub fn connected_components(&self) -> usize {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, e.src.0);
            let b = find(&mut parent, e.dst.0);
            if a != b {
                parent[a] = b;
            }
        }
        (0..n).filter(|&v| find(&mut parent, v) == v).count()
    }

    /// First Betti number `|E| - |V| + c`, the dimension the kernel of the
    /// boundary map must have.
    pub fn betti1(&self) -> usize {
        self.edge_count() + self.connected_components() - self.vertex_count()
    }

    /// The canonical orientation: for each edge, the smallest dart label of
    /// the pair, which is always the forward dart (`+` sorts before `-`).
    pub fn canonical_orientation(&self) -> Orientation {
        Orientation {
            graph: self.id,
            representatives: self.edges().map(|e| self.forward_dart(e)).collect(),
        }
    }

    /// The boundary map `d`: dart `e` goes to `t(e) - s(e)`. One column per
    /// edge in the orientation's representative coordinates; loop columns
    /// are zero.
    pub fn boundary_matrix(&self, orientation: &Orientation) -> Result<Matrix, GraphError> {
        if orientation.graph != self.id {
            return Err(GraphError::GraphMismatch);
        }
        let mut m = Matrix::zeros(self.vertex_count(), self.edge_count());
        for (col, &rep) in orientation.representatives.iter().enumerate() {
            let s = self.dart_src(rep);
            let t = self.dart_dst(rep);
            if s != t {
                m.set(t.0, col, Rational::one());
                m.set(s.0, col, -Rational::one());
            }
        }
        Ok(m)
    }

    /// The coboundary map `δ`: vertex `v` goes to the sum of the darts with
    /// target `v`. Equals the transpose of [`Graph::boundary_matrix`].
    pub fn coboundary_matrix(&self, orientation: &Orientation) -> Result<Matrix, GraphError> {
        if orientation.graph != self.id {
            return Err(GraphError::GraphMismatch);
        }
        let mut m = Matrix::zeros(self.edge_count(), self.vertex_count());
        for (row, &rep) in orientation.representatives.iter().enumerate() {
            let s = self.dart_src(rep);
            let t = self.dart_dst(rep);
            if s != t {
                m.set(row, t.0, Rational::one());
                m.set(row, s.0, -Rational::one());
            }
        }
        Ok(m)
    }

    /// Deterministic basis of the cycle space `Ker(d)`.
    pub fn h1_basis(&self) -> H1Basis {
        let orientation = self.canonical_orientation();
        let basis = self
            .boundary_matrix(&orientation)
            .expect("orientation belongs to this graph")
            .kernel_basis();
        H1Basis {
            graph: self.id,
            orientation,
            basis,
        }
    }

    /// Representatives of a basis of `Coker(δ)`, normalized to be dual to
    /// [`Graph::h1_basis`] under the edge pairing: the Gram matrix of the
    /// pairing between the two bases is the identity.
    ///
    /// The kernel of `d` is a complement of the image of `δ` (the pairing
    /// restricted to it is positive definite over the rationals), so the
    /// columns of `B (BᵀB)⁻¹` represent a cohomology basis.
    pub fn h1_cohom_classes(&self) -> H1CohomClasses {
        let h1 = self.h1_basis();
        let b = &h1.basis;
        let gram = b
            .transpose()
            .mul(b)
            .expect("dimensions agree by construction");
        let inv = gram
            .inverse()
            .expect("gram matrix is square")
            .expect("gram matrix of independent columns is invertible");
        let representatives = b.mul(&inv).expect("dimensions agree by construction");
        H1CohomClasses {
            graph: self.id,
            orientation: h1.orientation,
            representatives,
        }
    }

    /// Interprets a closed walk as a degree-one chain, one `+1` per
    /// traversed dart (repeats accumulate). The result lies in `Ker(d)`.
    pub fn cycle_to_chain(&self, cycle: &Cycle) -> Result<Chain1, GraphError> {
        if cycle.graph != self.id {
            return Err(GraphError::GraphMismatch);
        }
        let mut chain = Chain1::zero(self);
        for &d in &cycle.darts {
            chain.add_dart(d, &Rational::one())?;
        }
        Ok(chain)
    }

    /// Applies the boundary map to a chain. Used to check cycle membership.
    pub fn boundary_of(&self, chain: &Chain1) -> Result<Chain0, GraphError> {
        if chain.graph != self.id {
            return Err(GraphError::GraphMismatch);
        }
        let mut out = Chain0::zero(self);
        for e in self.edges() {
            let coeff = chain.edge_coeff(e);
            if coeff.is_zero() {
                continue;
            }
            let rep = self.forward_dart(e);
            let s = self.dart_src(rep);
            let t = self.dart_dst(rep);
            out.coeffs[t.0] += coeff;
            out.coeffs[s.0] -= coeff;
        }
        Ok(out)
    }
}

/// A choice of one representative dart per edge.
#[derive(Debug, Clone)]
pub struct Orientation {
    graph: GraphId,
    representatives: Vec<DartId>,
}

impl Orientation {
    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn representative(&self, e: EdgeId) -> DartId {
        self.representatives[e.index()]
    }
}

/// Rational vertex chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain0 {
    graph: GraphId,
    coeffs: Vec<Rational>,
}

impl Chain0 {
    pub fn zero(g: &Graph) -> Chain0 {
        Chain0 {
            graph: g.id,
            coeffs: vec![Rational::zero(); g.vertex_count()],
        }
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn coeff(&self, v: VertexId) -> &Rational {
        &self.coeffs[v.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Rational edge chain in the space spanned by darts modulo `e = -ē`.
/// Stored in forward-dart coordinates; `coeff` of a backward dart is the
/// negated edge coordinate, so the antisymmetry holds by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain1 {
    graph: GraphId,
    coeffs: Vec<Rational>,
}

impl Chain1 {
    pub fn zero(g: &Graph) -> Chain1 {
        Chain1 {
            graph: g.id,
            coeffs: vec![Rational::zero(); g.edge_count()],
        }
    }

    /// Builds a chain from its forward-dart coordinate vector.
    pub fn from_edge_vector(g: &Graph, coeffs: Vec<Rational>) -> Result<Chain1, GraphError> {
        if coeffs.len() != g.edge_count() {
            return Err(GraphError::WrongLength {
                expected: g.edge_count(),
                got: coeffs.len(),
            });
        }
        Ok(Chain1 {
            graph: g.id,
            coeffs,
        })
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of a dart: the edge coordinate for a forward dart, its
    /// negation for the twin.
    pub fn coeff(&self, d: DartId) -> Rational {
        let c = &self.coeffs[d.index() / 2];
        if d.is_forward() {
            c.clone()
        } else {
            -c.clone()
        }
    }

    pub fn edge_coeff(&self, e: EdgeId) -> &Rational {
        &self.coeffs[e.index()]
    }

    /// Adds `amount * d` to the chain.
    pub fn add_dart(&mut self, d: DartId, amount: &Rational) -> Result<(), GraphError> {
        let edge = d.index() / 2;
        if edge >= self.coeffs.len() {
            return Err(GraphError::UnknownDartId(format!("#{}", d.index())));
        }
        if d.is_forward() {
            self.coeffs[edge] += amount;
        } else {
            self.coeffs[edge] -= amount;
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn edge_vector(&self) -> &[Rational] {
        &self.coeffs
    }
}

/// The bilinear pairing on edge chains: `<e1, e2>` is 1 when `e1 = e2`,
/// 0 when `e1` is neither `e2` nor its twin, extended bilinearly (so
/// `<e, ē> = -1`). In representative coordinates this is the dot product.
pub fn pairing(x: &Chain1, y: &Chain1) -> Result<Rational, GraphError> {
    if x.graph != y.graph {
        return Err(GraphError::GraphMismatch);
    }
    let mut acc = Rational::zero();
    for (a, b) in x.coeffs.iter().zip(&y.coeffs) {
        acc += a * b;
    }
    Ok(acc)
}

/// A nonempty closed walk: consecutive darts are joined head to tail and
/// the last dart returns to the start of the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    graph: GraphId,
    darts: Vec<DartId>,
}

impl Cycle {
    pub fn new(g: &Graph, darts: Vec<DartId>) -> Result<Cycle, GraphError> {
        if darts.is_empty() {
            return Err(GraphError::EmptyWalk);
        }
        for (i, &d) in darts.iter().enumerate() {
            if d.index() >= g.dart_count() {
                return Err(GraphError::UnknownDartId(format!("#{}", d.index())));
            }
            let next = darts[(i + 1) % darts.len()];
            if g.dart_dst(d) != g.dart_src(next) {
                if i + 1 == darts.len() {
                    return Err(GraphError::WalkNotClosed);
                }
                return Err(GraphError::WalkNotConnected { position: i });
            }
        }
        Ok(Cycle {
            graph: g.id,
            darts,
        })
    }

    pub fn from_dart_labels(g: &Graph, labels: &[&str]) -> Result<Cycle, GraphError> {
        let darts = labels
            .iter()
            .map(|l| g.dart_by_label(l))
            .collect::<Result<Vec<_>, _>>()?;
        Cycle::new(g, darts)
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn darts(&self) -> &[DartId] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dart_labels(&self, g: &Graph) -> Vec<String> {
        self.darts.iter().map(|&d| g.dart_label(d)).collect()
    }
}

/// Deterministic basis of the cycle space, columns in forward-dart
/// coordinates.
#[derive(Debug, Clone)]
pub struct H1Basis {
    graph: GraphId,
    orientation: Orientation,
    basis: Matrix,
}

impl H1Basis {
    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn chain(&self, g: &Graph, column: usize) -> Result<Chain1, GraphError> {
        if g.id() != self.graph {
            return Err(GraphError::GraphMismatch);
        }
        Chain1::from_edge_vector(g, self.basis.column(column))
    }
}

/// Chain representatives of a basis of the cokernel of `δ`, dual to the
/// [`H1Basis`] under the pairing.
#[derive(Debug, Clone)]
pub struct H1CohomClasses {
    graph: GraphId,
    orientation: Orientation,
    representatives: Matrix,
}

impl H1CohomClasses {
    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.representatives
    }

    pub fn chain(&self, g: &Graph, column: usize) -> Result<Chain1, GraphError> {
        if g.id() != self.graph {
            return Err(GraphError::GraphMismatch);
        }
        Chain1::from_edge_vector(g, self.representatives.column(column))
    }
}

/// Gram matrix of the pairing between an `H1Basis` and a set of cohomology
/// representatives; entry `(i, j)` is `<basis_i, representative_j>`.
pub fn gram_matrix(g: &Graph, basis: &H1Basis, classes: &H1CohomClasses) -> Result<Matrix, GraphError> {
    if basis.graph != g.id() || classes.graph != g.id() {
        return Err(GraphError::GraphMismatch);
    }
    let n = basis.dim();
    let m = classes.dim();
    let mut out = Matrix::zeros(n, m);
    for i in 0..n {
        let bi = basis.chain(g, i)?;
        for j in 0..m {
            let cj = classes.chain(g, j)?;
            out.set(i, j, pairing(&bi, &cj)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::integer;
    use proptest::prelude::*;

    fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
        Graph::new(
            vertices.iter().map(|s| s.to_string()),
            edges
                .iter()
                .map(|(id, src, dst)| EdgeSpec::new(*id, *src, *dst)),
        )
        .unwrap()
    }

    fn loop_graph() -> Graph {
        graph(&["v"], &[("l", "v", "v")])
    }

    fn path_graph() -> Graph {
        graph(&["v1", "v2"], &[("e", "v1", "v2")])
    }

    fn theta_graph() -> Graph {
        graph(
            &["u", "v"],
            &[("A", "u", "v"), ("B", "u", "v"), ("C", "u", "v")],
        )
    }

    #[test]
    fn boundary_of_loop_is_zero() {
        let g = loop_graph();
        let d = g.boundary_matrix(&g.canonical_orientation()).unwrap();
        assert_eq!(d.rows(), 1);
        assert_eq!(d.cols(), 1);
        assert!(d.is_zero());
    }

    #[test]
    fn boundary_of_path() {
        let g = path_graph();
        let d = g.boundary_matrix(&g.canonical_orientation()).unwrap();
        assert_eq!(*d.at(0, 0), integer(-1));
        assert_eq!(*d.at(1, 0), integer(1));
    }

    #[test]
    fn boundary_of_theta() {
        // darts enumerated by hand: each edge points u -> v, so every
        // column is (-1, 1) with vertices ordered u, v
        let g = theta_graph();
        let d = g.boundary_matrix(&g.canonical_orientation()).unwrap();
        assert_eq!((d.rows(), d.cols()), (2, 3));
        for c in 0..3 {
            assert_eq!(*d.at(0, c), integer(-1));
            assert_eq!(*d.at(1, c), integer(1));
        }
    }

    #[test]
    fn coboundary_is_transpose_on_examples() {
        for g in [loop_graph(), path_graph(), theta_graph()] {
            let o = g.canonical_orientation();
            let d = g.boundary_matrix(&o).unwrap();
            let delta = g.coboundary_matrix(&o).unwrap();
            assert_eq!(delta, d.transpose());
        }
    }

    #[test]
    fn coboundary_of_path_signs() {
        let g = path_graph();
        let delta = g.coboundary_matrix(&g.canonical_orientation()).unwrap();
        // δ(v2) = +e, δ(v1) = -e
        assert_eq!(*delta.at(0, 0), integer(-1));
        assert_eq!(*delta.at(0, 1), integer(1));
    }

    #[test]
    fn orientation_mismatch_is_rejected() {
        let g = loop_graph();
        let other = loop_graph();
        let err = g.boundary_matrix(&other.canonical_orientation()).unwrap_err();
        assert_eq!(err, GraphError::GraphMismatch);
    }

    #[test]
    fn h1_dimensions() {
        assert_eq!(loop_graph().h1_basis().dim(), 1);
        let tree = graph(
            &["a", "b", "c", "d"],
            &[("x", "a", "b"), ("y", "b", "c"), ("z", "b", "d")],
        );
        assert_eq!(tree.h1_basis().dim(), 0);
        assert_eq!(tree.h1_cohom_classes().dim(), 0);
        // b1 = 3 - 2 + 1
        assert_eq!(theta_graph().h1_basis().dim(), 2);
    }

    #[test]
    fn betti1_examples() {
        assert_eq!(loop_graph().betti1(), 1);
        assert_eq!(path_graph().betti1(), 0);
        assert_eq!(theta_graph().betti1(), 2);
    }

    #[test]
    fn loop_cohom_class_pairs_to_one() {
        let g = loop_graph();
        let basis = g.h1_basis();
        let classes = g.h1_cohom_classes();
        assert_eq!(classes.dim(), 1);
        let b = basis.chain(&g, 0).unwrap();
        let c = classes.chain(&g, 0).unwrap();
        assert_eq!(pairing(&b, &c).unwrap(), integer(1));
    }

    #[test]
    fn theta_gram_matrix_is_invertible() {
        let g = theta_graph();
        let gram = gram_matrix(&g, &g.h1_basis(), &g.h1_cohom_classes()).unwrap();
        assert_eq!((gram.rows(), gram.cols()), (2, 2));
        assert!(!gram.determinant().unwrap().is_zero());
        // dual normalization makes it the identity
        assert!(gram.is_identity());
    }

    #[test]
    fn pairing_on_single_darts() {
        let g = theta_graph();
        let a = g.dart_by_label("A+").unwrap();
        let mut e = Chain1::zero(&g);
        e.add_dart(a, &integer(1)).unwrap();
        let mut ebar = Chain1::zero(&g);
        ebar.add_dart(a.twin(), &integer(1)).unwrap();
        assert_eq!(pairing(&e, &e).unwrap(), integer(1));
        assert_eq!(pairing(&e, &ebar).unwrap(), integer(-1));

        // <e1 + 2 e2, e2> = 2
        let b = g.dart_by_label("B+").unwrap();
        let mut x = Chain1::zero(&g);
        x.add_dart(a, &integer(1)).unwrap();
        x.add_dart(b, &integer(2)).unwrap();
        let mut y = Chain1::zero(&g);
        y.add_dart(b, &integer(1)).unwrap();
        assert_eq!(pairing(&x, &y).unwrap(), integer(2));
    }

    #[test]
    fn pairing_rejects_mixed_graphs() {
        let g = loop_graph();
        let h = loop_graph();
        let err = pairing(&Chain1::zero(&g), &Chain1::zero(&h)).unwrap_err();
        assert_eq!(err, GraphError::GraphMismatch);
    }

    #[test]
    fn cycle_to_chain_examples() {
        let g = loop_graph();
        let l = g.dart_by_label("l+").unwrap();
        let once = Cycle::new(&g, vec![l]).unwrap();
        let chain = g.cycle_to_chain(&once).unwrap();
        assert_eq!(chain.coeff(l), integer(1));

        let twice = Cycle::new(&g, vec![l, l]).unwrap();
        assert_eq!(g.cycle_to_chain(&twice).unwrap().coeff(l), integer(2));

        // back and forth cancels
        let g2 = path_graph();
        let e = g2.dart_by_label("e+").unwrap();
        let back_forth = Cycle::new(&g2, vec![e, e.twin()]).unwrap();
        assert!(g2.cycle_to_chain(&back_forth).unwrap().is_zero());
    }

    #[test]
    fn cycle_validation() {
        let g = theta_graph();
        let a = g.dart_by_label("A+").unwrap();
        let b = g.dart_by_label("B+").unwrap();
        assert_eq!(Cycle::new(&g, vec![]).unwrap_err(), GraphError::EmptyWalk);
        // A+ then B+ both leave u: broken at step 0
        assert_eq!(
            Cycle::new(&g, vec![a, b]).unwrap_err(),
            GraphError::WalkNotConnected { position: 0 }
        );
        // A+ alone ends at v instead of u
        assert_eq!(Cycle::new(&g, vec![a]).unwrap_err(), GraphError::WalkNotClosed);
        // A+ then B- is a closed 2-gon walk
        let c = Cycle::new(&g, vec![a, b.twin()]).unwrap();
        let chain = g.cycle_to_chain(&c).unwrap();
        assert!(g.boundary_of(&chain).unwrap().is_zero());
    }

    #[test]
    fn chain_antisymmetry_accessor() {
        let g = theta_graph();
        let a = g.dart_by_label("A+").unwrap();
        let mut x = Chain1::zero(&g);
        x.add_dart(a, &integer(3)).unwrap();
        x.add_dart(a.twin(), &integer(1)).unwrap();
        assert_eq!(x.coeff(a), integer(2));
        assert_eq!(x.coeff(a.twin()), integer(-2));
    }

    #[test]
    fn empty_graph_and_isolated_vertices() {
        let empty = graph(&[], &[]);
        assert_eq!(empty.betti1(), 0);
        assert_eq!(empty.h1_basis().dim(), 0);
        assert_eq!(empty.connected_components(), 0);

        let isolated = graph(&["a", "b"], &[]);
        assert_eq!(isolated.connected_components(), 2);
        assert_eq!(isolated.betti1(), 0);
        assert_eq!(isolated.h1_basis().dim(), 0);
    }

    #[test]
    fn duplicate_and_dangling_ids_rejected() {
        assert_eq!(
            Graph::new(
                ["v".to_string(), "v".to_string()],
                std::iter::empty::<EdgeSpec>()
            )
            .unwrap_err(),
            GraphError::DuplicateVertexId("v".into())
        );
        assert_eq!(
            Graph::new(
                ["v".to_string()],
                [EdgeSpec::new("e", "v", "w")]
            )
            .unwrap_err(),
            GraphError::UnknownVertexId("w".into())
        );
        assert_eq!(
            Graph::new(
                ["v".to_string()],
                [EdgeSpec::new("e", "v", "v"), EdgeSpec::new("e", "v", "v")]
            )
            .unwrap_err(),
            GraphError::DuplicateEdgeId("e".into())
        );
    }

    #[test]
    fn dart_label_round_trip() {
        let g = theta_graph();
        for d in g.darts() {
            let label = g.dart_label(d);
            assert_eq!(g.dart_by_label(&label).unwrap(), d);
        }
        assert!(g.dart_by_label("A").is_err());
        assert!(g.dart_by_label("Z+").is_err());
    }

    pub(crate) fn arbitrary_graph(
        max_vertices: usize,
        max_edges: usize,
    ) -> impl Strategy<Value = Graph> {
        (1..=max_vertices).prop_flat_map(move |nv| {
            proptest::collection::vec((0..nv, 0..nv), 0..=max_edges).prop_map(move |pairs| {
                let vertices: Vec<String> = (0..nv).map(|i| format!("v{i:02}")).collect();
                let edges = pairs
                    .into_iter()
                    .enumerate()
                    .map(|(i, (a, b))| {
                        EdgeSpec::new(
                            format!("e{i:02}"),
                            vertices[a].clone(),
                            vertices[b].clone(),
                        )
                    })
                    .collect::<Vec<_>>();
                Graph::new(vertices, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn coboundary_is_transpose(g in arbitrary_graph(8, 16)) {
            let o = g.canonical_orientation();
            prop_assert_eq!(
                g.coboundary_matrix(&o).unwrap(),
                g.boundary_matrix(&o).unwrap().transpose()
            );
        }

        #[test]
        fn kernel_dimension_matches_euler_count(g in arbitrary_graph(8, 16)) {
            prop_assert_eq!(g.h1_basis().dim(), g.betti1());
        }

        #[test]
        fn gram_matrix_is_invertible(g in arbitrary_graph(8, 16)) {
            let basis = g.h1_basis();
            let classes = g.h1_cohom_classes();
            prop_assert_eq!(basis.dim(), classes.dim());
            let gram = gram_matrix(&g, &basis, &classes).unwrap();
            prop_assert!(!gram.determinant().unwrap().is_zero());
        }

        #[test]
        fn basis_columns_are_cycles(g in arbitrary_graph(8, 16)) {
            let basis = g.h1_basis();
            for j in 0..basis.dim() {
                let chain = basis.chain(&g, j).unwrap();
                prop_assert!(g.boundary_of(&chain).unwrap().is_zero());
            }
        }

        #[test]
        fn random_closed_walks_lie_in_the_kernel(g in arbitrary_graph(6, 12), steps in proptest::collection::vec(0usize..64, 40)) {
            // random-walk until some vertex repeats, then close up the loop
            if g.edge_count() == 0 {
                return Ok(());
            }
            let start = g.dart_src(DartId(steps[0] % g.dart_count()));
            let mut at = start;
            let mut walk: Vec<DartId> = Vec::new();
            let mut seen: Vec<(VertexId, usize)> = vec![(start, 0)];
            for &step in &steps[1..] {
                let options: Vec<DartId> = g.darts().filter(|&d| g.dart_src(d) == at).collect();
                if options.is_empty() {
                    return Ok(());
                }
                let d = options[step % options.len()];
                walk.push(d);
                at = g.dart_dst(d);
                if let Some(&(_, first)) = seen.iter().find(|(v, _)| *v == at) {
                    let cycle = Cycle::new(&g, walk[first..].to_vec()).unwrap();
                    let chain = g.cycle_to_chain(&cycle).unwrap();
                    prop_assert!(g.boundary_of(&chain).unwrap().is_zero());
                    return Ok(());
                }
                seen.push((at, walk.len()));
            }
        }
    }
}
