//! Finite flat graph morphisms: axiom validation, cycle images and
//! degrees, the constructive cycle-lifting pullback, and transfer matrices
//! on homology and cohomology.
//!
//! A finite flat morphism of degree `n` carries surjective vertex and dart
//! maps compatible with sources and targets, together with positive
//! multiplicities `n_v`, `n_e` whose fiberwise sums over any target dart
//! equal `n` globally and `n_v` at each source vertex of the fiber.
//!
//! The dart map is stored edge-wise (target edge plus a flip bit), so twin
//! compatibility `φ(ē) = φ(e)̄` and `n_e = n_ē` hold by construction;
//! everything else is checked by [`FiniteFlatMorphism::validate`].

use crate::graph::{Chain1, Cycle, DartId, EdgeId, Graph, GraphError, VertexId};
use crate::linalg::{Matrix, Rational};
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

/// Image of one source edge: a target edge, flipped or not. `flip` means
/// the forward dart of the source edge maps to the backward dart of `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeImage {
    pub to: EdgeId,
    pub flip: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("malformed morphism data: {0}")]
    Malformed(String),
    #[error("morphism violates the finite flatness axioms:\n{0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
    #[error("image of the cycle is not a whole number of traversals of the base cycle")]
    ImageNotPowerOfBase,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// One named axiom violation, pointing at the offending dart or vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonPositiveDegree,
    NonPositiveVertexMultiplicity {
        vertex: String,
    },
    NonPositiveEdgeMultiplicity {
        edge: String,
    },
    VertexMapNotSurjective {
        target_vertex: String,
    },
    DartMapNotSurjective {
        target_dart: String,
    },
    IncidenceMismatch {
        dart: String,
    },
    FiberSumMismatch {
        target_dart: String,
        sum: u64,
        degree: u64,
    },
    VertexFiberSumMismatch {
        target_dart: String,
        vertex: String,
        sum: u64,
        expected: u64,
    },
    FiberSourceNotSurjective {
        target_dart: String,
        vertex: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositiveDegree => write!(f, "degree n must be positive"),
            Violation::NonPositiveVertexMultiplicity { vertex } => {
                write!(f, "vertex multiplicity n_v must be positive at vertex {vertex}")
            }
            Violation::NonPositiveEdgeMultiplicity { edge } => {
                write!(f, "edge multiplicity n_e must be positive at edge {edge}")
            }
            Violation::VertexMapNotSurjective { target_vertex } => {
                write!(f, "vertex map is not surjective: target vertex {target_vertex} has empty fiber")
            }
            Violation::DartMapNotSurjective { target_dart } => {
                write!(f, "dart map is not surjective: target dart {target_dart} has empty fiber")
            }
            Violation::IncidenceMismatch { dart } => {
                write!(f, "vertex map and dart map are incompatible at source dart {dart}: phi_V(s(e)) != s(phi_E(e))")
            }
            Violation::FiberSumMismatch { target_dart, sum, degree } => {
                write!(f, "fiber sum over target dart {target_dart} is {sum}, expected degree {degree}")
            }
            Violation::VertexFiberSumMismatch { target_dart, vertex, sum, expected } => {
                write!(f, "fiber sum over target dart {target_dart} restricted to source vertex {vertex} is {sum}, expected n_v = {expected}")
            }
            Violation::FiberSourceNotSurjective { target_dart, vertex } => {
                write!(f, "s is not surjective from the fiber over target dart {target_dart}: source vertex {vertex} has no dart in the fiber")
            }
        }
    }
}

/// Outcome of [`FiniteFlatMorphism::validate`]: empty means every axiom holds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "- {v}")?;
        }
        Ok(())
    }
}

/// Deterministic or seeded tie-breaking for [`FiniteFlatMorphism::lift_cycles`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Smallest dart id first; fully reproducible.
    Deterministic,
    /// Candidate darts are shuffled by a seeded generator. Different seeds
    /// may produce different lift decompositions, but their summed chain is
    /// always the same.
    Seeded(u64),
}

#[derive(Debug, Clone)]
pub struct FiniteFlatMorphism {
    source: Graph,
    target: Graph,
    vertex_map: Vec<VertexId>,
    edge_map: Vec<EdgeImage>,
    dart_map: Vec<DartId>,
    vertex_mult: Vec<u64>,
    edge_mult: Vec<u64>,
    degree: u64,
}

impl FiniteFlatMorphism {
    /// Assembles a morphism from index-based maps. Lengths and index ranges
    /// are checked here; the flatness axioms are checked by `validate`.
    pub fn new(
        source: Graph,
        target: Graph,
        vertex_map: Vec<VertexId>,
        edge_map: Vec<EdgeImage>,
        vertex_mult: Vec<u64>,
        edge_mult: Vec<u64>,
        degree: u64,
    ) -> Result<FiniteFlatMorphism, MorphismError> {
        if vertex_map.len() != source.vertex_count() {
            return Err(MorphismError::Malformed(format!(
                "vertex map has {} entries for {} source vertices",
                vertex_map.len(),
                source.vertex_count()
            )));
        }
        if edge_map.len() != source.edge_count() {
            return Err(MorphismError::Malformed(format!(
                "edge map has {} entries for {} source edges",
                edge_map.len(),
                source.edge_count()
            )));
        }
        if vertex_mult.len() != source.vertex_count() || edge_mult.len() != source.edge_count() {
            return Err(MorphismError::Malformed(
                "multiplicity tables must cover every source vertex and edge".into(),
            ));
        }
        if let Some(v) = vertex_map.iter().find(|v| v.index() >= target.vertex_count()) {
            return Err(MorphismError::Malformed(format!(
                "vertex map image #{} outside the target graph",
                v.index()
            )));
        }
        if let Some(e) = edge_map.iter().find(|e| e.to.index() >= target.edge_count()) {
            return Err(MorphismError::Malformed(format!(
                "edge map image #{} outside the target graph",
                e.to.index()
            )));
        }
        let dart_map = edge_map
            .iter()
            .flat_map(|img| {
                let fwd = target.forward_dart(img.to);
                let image = if img.flip { fwd.twin() } else { fwd };
                [image, image.twin()]
            })
            .collect();
        Ok(FiniteFlatMorphism {
            source,
            target,
            vertex_map,
            edge_map,
            dart_map,
            vertex_mult,
            edge_mult,
            degree,
        })
    }

    /// Assembles a morphism from label-keyed maps, as they appear in the
    /// JSON schema: one entry per source vertex and edge, targets named by
    /// label, edge images as (target edge, flip).
    pub fn from_label_maps(
        source: Graph,
        target: Graph,
        vertex_map: &std::collections::BTreeMap<String, String>,
        edge_map: &std::collections::BTreeMap<String, (String, bool)>,
        vertex_mult: &std::collections::BTreeMap<String, u64>,
        edge_mult: &std::collections::BTreeMap<String, u64>,
        degree: u64,
    ) -> Result<FiniteFlatMorphism, MorphismError> {
        fn check_totality<V>(
            field: &str,
            map: &std::collections::BTreeMap<String, V>,
            expected: &[&str],
        ) -> Result<(), MorphismError> {
            for key in map.keys() {
                if !expected.iter().any(|l| l == key) {
                    return Err(MorphismError::Malformed(format!(
                        "{field} mentions unknown source id {key:?}"
                    )));
                }
            }
            for label in expected {
                if !map.contains_key(*label) {
                    return Err(MorphismError::Malformed(format!(
                        "{field} is missing an entry for source id {label:?}"
                    )));
                }
            }
            Ok(())
        }
        let vertex_labels: Vec<&str> = source.vertices().map(|v| source.vertex_label(v)).collect();
        let edge_labels: Vec<&str> = source.edges().map(|e| source.edge_label(e)).collect();
        check_totality("vertex_map", vertex_map, &vertex_labels)?;
        check_totality("vertex_mult", vertex_mult, &vertex_labels)?;
        check_totality("edge_map", edge_map, &edge_labels)?;
        check_totality("edge_mult", edge_mult, &edge_labels)?;
        let vertices = source
            .vertices()
            .map(|v| {
                let image = &vertex_map[source.vertex_label(v)];
                target.vertex_by_label(image).map_err(|_| {
                    MorphismError::Malformed(format!(
                        "vertex_map image {image:?} not in the target graph"
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let edges = source
            .edges()
            .map(|e| {
                let (image, flip) = &edge_map[source.edge_label(e)];
                let to = target.edge_by_label(image).map_err(|_| {
                    MorphismError::Malformed(format!(
                        "edge_map image {image:?} not in the target graph"
                    ))
                })?;
                Ok(EdgeImage { to, flip: *flip })
            })
            .collect::<Result<Vec<_>, MorphismError>>()?;
        let vertex_mults = source
            .vertices()
            .map(|v| vertex_mult[source.vertex_label(v)])
            .collect();
        let edge_mults = source
            .edges()
            .map(|e| edge_mult[source.edge_label(e)])
            .collect();
        FiniteFlatMorphism::new(source, target, vertices, edges, vertex_mults, edge_mults, degree)
    }

    /// The identity morphism of a graph, degree 1, all multiplicities 1.
    pub fn identity(g: &Graph) -> FiniteFlatMorphism {
        FiniteFlatMorphism::new(
            g.clone(),
            g.clone(),
            g.vertices().collect(),
            g.edges().map(|e| EdgeImage { to: e, flip: false }).collect(),
            vec![1; g.vertex_count()],
            vec![1; g.edge_count()],
            1,
        )
        .expect("identity data is well formed")
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn map_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.index()]
    }

    pub fn map_dart(&self, d: DartId) -> DartId {
        self.dart_map[d.index()]
    }

    pub fn map_edge(&self, e: EdgeId) -> EdgeImage {
        self.edge_map[e.index()]
    }

    pub fn vertex_mult(&self, v: VertexId) -> u64 {
        self.vertex_mult[v.index()]
    }

    pub fn edge_mult(&self, e: EdgeId) -> u64 {
        self.edge_mult[e.index()]
    }

    /// `n_e` of a dart; equal for the two darts of an edge by construction.
    pub fn dart_mult(&self, d: DartId) -> u64 {
        self.edge_mult[d.index() / 2]
    }

    /// Checks every finite-flatness axiom and reports all violations, each
    /// naming the axiom and the offending dart or vertex.
    ///
    /// Twin compatibility of the dart map and `n_e = n_ē` hold structurally
    /// (the dart map is derived from an edge-level map). Target-side
    /// conditions (the `t` analogues) are covered because every target dart
    /// is inspected, including the twin of each.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.degree == 0 {
            violations.push(Violation::NonPositiveDegree);
        }
        for v in self.source.vertices() {
            if self.vertex_mult[v.index()] == 0 {
                violations.push(Violation::NonPositiveVertexMultiplicity {
                    vertex: self.source.vertex_label(v).to_string(),
                });
            }
        }
        for e in self.source.edges() {
            if self.edge_mult[e.index()] == 0 {
                violations.push(Violation::NonPositiveEdgeMultiplicity {
                    edge: self.source.edge_label(e).to_string(),
                });
            }
        }
        // surjectivity of the vertex map
        let mut vertex_hit = vec![false; self.target.vertex_count()];
        for v in self.source.vertices() {
            vertex_hit[self.map_vertex(v).index()] = true;
        }
        for (i, hit) in vertex_hit.iter().enumerate() {
            if !hit {
                violations.push(Violation::VertexMapNotSurjective {
                    target_vertex: self.target.vertex_label(VertexId::from_index(i)).to_string(),
                });
            }
        }
        // incidence: phi_V(s(e)) = s(phi_E(e)) for every dart; the target
        // analogue is this condition at the twin dart
        for d in self.source.darts() {
            if self.map_vertex(self.source.dart_src(d)) != self.target.dart_src(self.map_dart(d)) {
                violations.push(Violation::IncidenceMismatch {
                    dart: self.source.dart_label(d),
                });
            }
        }
        // fiberwise conditions over every target dart
        for td in self.target.darts() {
            let label = self.target.dart_label(td);
            let fiber: Vec<DartId> = self
                .source
                .darts()
                .filter(|&d| self.map_dart(d) == td)
                .collect();
            if fiber.is_empty() {
                violations.push(Violation::DartMapNotSurjective {
                    target_dart: label.clone(),
                });
            }
            let sum: u64 = fiber.iter().map(|&d| self.dart_mult(d)).sum();
            if sum != self.degree {
                violations.push(Violation::FiberSumMismatch {
                    target_dart: label.clone(),
                    sum,
                    degree: self.degree,
                });
            }
            let base = self.target.dart_src(td);
            for v in self.source.vertices() {
                if self.map_vertex(v) != base {
                    continue;
                }
                let local: Vec<&DartId> =
                    fiber.iter().filter(|&&d| self.source.dart_src(d) == v).collect();
                if local.is_empty() {
                    violations.push(Violation::FiberSourceNotSurjective {
                        target_dart: label.clone(),
                        vertex: self.source.vertex_label(v).to_string(),
                    });
                }
                let vsum: u64 = local.iter().map(|&&d| self.dart_mult(d)).sum();
                if vsum != self.vertex_mult[v.index()] {
                    violations.push(Violation::VertexFiberSumMismatch {
                        target_dart: label.clone(),
                        vertex: self.source.vertex_label(v).to_string(),
                        sum: vsum,
                        expected: self.vertex_mult[v.index()],
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    fn ensure_valid(&self) -> Result<(), MorphismError> {
        let report = self.validate();
        if report.is_ok() {
            Ok(())
        } else {
            Err(MorphismError::Invalid(report))
        }
    }

    /// Maps a cycle termwise through the dart map. Incidence compatibility
    /// makes the image a closed walk again.
    pub fn image_cycle(&self, r: &Cycle) -> Result<Cycle, MorphismError> {
        if r.graph_id() != self.source.id() {
            return Err(MorphismError::Graph(GraphError::GraphMismatch));
        }
        let darts = r.darts().iter().map(|&d| self.map_dart(d)).collect();
        Ok(Cycle::new(&self.target, darts)?)
    }

    /// The multiplicity `deg(R/R')`: how many times the image of `r` wraps
    /// `r'`. The image must be `r'` repeated a whole number of times, up to
    /// a single cyclic rotation.
    pub fn degree_over(&self, r: &Cycle, r_prime: &Cycle) -> Result<u64, MorphismError> {
        if r_prime.graph_id() != self.target.id() {
            return Err(MorphismError::Graph(GraphError::GraphMismatch));
        }
        let image = self.image_cycle(r)?;
        let k = r_prime.len();
        if image.len() % k != 0 {
            return Err(MorphismError::ImageNotPowerOfBase);
        }
        let matches_with_offset = |offset: usize| {
            image
                .darts()
                .iter()
                .enumerate()
                .all(|(i, &d)| d == r_prime.darts()[(i + offset) % k])
        };
        if (0..k).any(matches_with_offset) {
            Ok((image.len() / k) as u64)
        } else {
            Err(MorphismError::ImageNotPowerOfBase)
        }
    }

    /// Decomposes the full preimage of a base cycle into lifted cycles.
    ///
    /// Each returned cycle maps onto `r_prime` traversed `deg(R_i/R')`
    /// times; across all lifts every source dart over a dart of `r_prime`
    /// is traversed exactly `n_e` times (per occurrence in the base cycle),
    /// and the lift degrees sum to the morphism degree.
    ///
    /// The walk starts at the smallest source vertex over the start of
    /// `r_prime` with remaining multiplicity, repeatedly picks a dart over
    /// the next base dart with remaining multiplicity (smallest first, or
    /// seeded-random), and closes at the first return to the start vertex
    /// at a position divisible by the base length. A dead end backtracks to
    /// the last choice point; the flatness axioms keep the remaining
    /// multiplicities balanced, so the decomposition always completes.
    pub fn lift_cycles(
        &self,
        r_prime: &Cycle,
        tie_break: TieBreak,
    ) -> Result<Vec<Cycle>, MorphismError> {
        self.ensure_valid()?;
        if r_prime.graph_id() != self.target.id() {
            return Err(MorphismError::Graph(GraphError::GraphMismatch));
        }
        let k = r_prime.len();
        let nd = self.source.dart_count();
        // remaining traversals per (position in base cycle, source dart)
        let mut budget = vec![0u64; k * nd];
        let mut fibers: Vec<Vec<DartId>> = vec![Vec::new(); k];
        for (j, &base_dart) in r_prime.darts().iter().enumerate() {
            for d in self.source.darts() {
                if self.map_dart(d) == base_dart {
                    budget[j * nd + d.index()] = self.dart_mult(d);
                    fibers[j].push(d);
                }
            }
        }
        let mut rng = match tie_break {
            TieBreak::Seeded(seed) => Some(SplitMix64::new(seed)),
            TieBreak::Deterministic => None,
        };
        let mut lifts = Vec::new();
        loop {
            let start = fibers[0]
                .iter()
                .filter(|d| budget[d.index()] > 0)
                .map(|&d| self.source.dart_src(d))
                .min();
            let Some(start) = start else { break };
            let darts = self.walk_lift(start, k, nd, &mut budget, &fibers, &mut rng)?;
            lifts.push(Cycle::new(&self.source, darts)?);
        }
        if budget.iter().any(|&b| b != 0) {
            return Err(MorphismError::Internal(
                "lifting finished with unconsumed multiplicities".into(),
            ));
        }
        // conservation recheck: at every base position, the traversals just
        // distributed must add up to n_e per dart and to n in total
        let mut traversed = vec![0u64; k * nd];
        for lift in &lifts {
            for (pos, &d) in lift.darts().iter().enumerate() {
                traversed[(pos % k) * nd + d.index()] += 1;
            }
        }
        for (j, fiber) in fibers.iter().enumerate() {
            let mut total = 0u64;
            for &d in fiber {
                let count = traversed[j * nd + d.index()];
                if count != self.dart_mult(d) {
                    return Err(MorphismError::Internal(format!(
                        "dart {} was traversed {count} times over base position {j}, expected {}",
                        self.source.dart_label(d),
                        self.dart_mult(d)
                    )));
                }
                total += count;
            }
            if total != self.degree {
                return Err(MorphismError::Internal(format!(
                    "traversals over base position {j} sum to {total}, expected degree {}",
                    self.degree
                )));
            }
        }
        let total_degree: u64 = lifts.iter().map(|c| (c.len() / k) as u64).sum();
        if total_degree != self.degree {
            return Err(MorphismError::Internal(format!(
                "lift degrees sum to {total_degree}, expected {}",
                self.degree
            )));
        }
        Ok(lifts)
    }

    fn walk_lift(
        &self,
        start: VertexId,
        k: usize,
        nd: usize,
        budget: &mut [u64],
        fibers: &[Vec<DartId>],
        rng: &mut Option<SplitMix64>,
    ) -> Result<Vec<DartId>, MorphismError> {
        // one frame per step: the candidate darts at that step and the
        // index of the one currently taken
        let mut frames: Vec<(Vec<DartId>, usize)> = Vec::new();
        let mut current = start;
        let mut pending: Option<(Vec<DartId>, usize)> = None;
        loop {
            if pending.is_none() {
                if !frames.is_empty() && current == start && frames.len().is_multiple_of(k) {
                    return Ok(frames.iter().map(|(cands, i)| cands[*i]).collect());
                }
                let j = frames.len() % k;
                let mut cands: Vec<DartId> = fibers[j]
                    .iter()
                    .copied()
                    .filter(|d| self.source.dart_src(*d) == current && budget[j * nd + d.index()] > 0)
                    .collect();
                if let Some(rng) = rng {
                    shuffle(&mut cands, rng);
                }
                pending = Some((cands, 0));
            }
            let (cands, idx) = pending.take().expect("pending was just set");
            if idx < cands.len() {
                let d = cands[idx];
                let j = frames.len() % k;
                budget[j * nd + d.index()] -= 1;
                frames.push((cands, idx));
                current = self.source.dart_dst(d);
            } else {
                // dead end: undo the previous step and try its next candidate
                let Some((prev_cands, prev_idx)) = frames.pop() else {
                    return Err(MorphismError::Internal(
                        "cycle lifting dead-ended at the start vertex".into(),
                    ));
                };
                let d = prev_cands[prev_idx];
                let j = frames.len() % k;
                budget[j * nd + d.index()] += 1;
                current = self.source.dart_src(d);
                pending = Some((prev_cands, prev_idx + 1));
            }
        }
    }

    /// Closed-form pullback of a base cycle: the chain `Σ n_e · e` over all
    /// source darts lying above the darts of `r_prime`, oriented along it.
    /// Equals the summed chain of any lift decomposition and lies in the
    /// kernel of the source boundary map.
    pub fn pullback_chain(&self, r_prime: &Cycle) -> Result<Chain1, MorphismError> {
        self.ensure_valid()?;
        if r_prime.graph_id() != self.target.id() {
            return Err(MorphismError::Graph(GraphError::GraphMismatch));
        }
        let mut out = Chain1::zero(&self.source);
        for &base_dart in r_prime.darts() {
            for d in self.source.darts() {
                if self.map_dart(d) == base_dart {
                    out.add_dart(d, &Rational::from_integer(self.dart_mult(d).into()))?;
                }
            }
        }
        Ok(out)
    }

    /// Chain-level pushforward `e ↦ φ(e)`, the linear extension of the
    /// cycle image.
    pub fn pushforward_of_chain(&self, x: &Chain1) -> Result<Chain1, MorphismError> {
        if x.graph_id() != self.source.id() {
            return Err(MorphismError::Graph(GraphError::GraphMismatch));
        }
        let mut out = Chain1::zero(&self.target);
        for e in self.source.edges() {
            let coeff = x.edge_coeff(e);
            if coeff.is_zero() {
                continue;
            }
            out.add_dart(self.map_dart(self.source.forward_dart(e)), coeff)?;
        }
        Ok(out)
    }

    /// Chain-level pullback `e' ↦ Σ_{e over e'} n_e · e`, the linear
    /// extension of [`FiniteFlatMorphism::pullback_chain`]. The flatness
    /// axioms make it commute with the boundary maps, so kernels pull back
    /// to kernels.
    pub fn pullback_of_chain(&self, y: &Chain1) -> Result<Chain1, MorphismError> {
        if y.graph_id() != self.target.id() {
            return Err(MorphismError::Graph(GraphError::GraphMismatch));
        }
        let mut out = Chain1::zero(&self.source);
        for e in self.source.edges() {
            let d = self.source.forward_dart(e);
            let image_coeff = y.coeff(self.map_dart(d));
            if image_coeff.is_zero() {
                continue;
            }
            let mult = Rational::from_integer(self.dart_mult(d).into());
            out.add_dart(d, &(mult * image_coeff))?;
        }
        Ok(out)
    }

    /// Matrix of the pushforward on the cycle space, in the deterministic
    /// kernel bases of source and target.
    pub fn pushforward_h1(&self) -> Result<Matrix, MorphismError> {
        self.ensure_valid()?;
        let source_basis = self.source.h1_basis();
        let target_basis = self.target.h1_basis();
        let mut columns = Vec::with_capacity(source_basis.dim());
        for j in 0..source_basis.dim() {
            let chain = source_basis.chain(&self.source, j)?;
            let pushed = self.pushforward_of_chain(&chain)?;
            let coords = target_basis
                .matrix()
                .solve(pushed.edge_vector())
                .map_err(|e| MorphismError::Internal(e.to_string()))?
                .ok_or_else(|| {
                    MorphismError::Internal(
                        "pushed cycle is not in the span of the target kernel basis".into(),
                    )
                })?;
            columns.push(coords);
        }
        Matrix::from_columns(target_basis.dim(), columns)
            .map_err(|e| MorphismError::Internal(e.to_string()))
    }

    /// Matrix of the pullback on the cycle space, in the deterministic
    /// kernel bases of target and source.
    pub fn pullback_h1(&self) -> Result<Matrix, MorphismError> {
        self.ensure_valid()?;
        let source_basis = self.source.h1_basis();
        let target_basis = self.target.h1_basis();
        let mut columns = Vec::with_capacity(target_basis.dim());
        for j in 0..target_basis.dim() {
            let chain = target_basis.chain(&self.target, j)?;
            let pulled = self.pullback_of_chain(&chain)?;
            let coords = source_basis
                .matrix()
                .solve(pulled.edge_vector())
                .map_err(|e| MorphismError::Internal(e.to_string()))?
                .ok_or_else(|| {
                    MorphismError::Internal(
                        "pulled cycle is not in the span of the source kernel basis".into(),
                    )
                })?;
            columns.push(coords);
        }
        Matrix::from_columns(source_basis.dim(), columns)
            .map_err(|e| MorphismError::Internal(e.to_string()))
    }

    /// Pushforward on cohomology: the dual of the pullback on homology,
    /// converted through the pairing Gram matrices of the two graphs.
    pub fn pushforward_h1_cohom(&self) -> Result<Matrix, MorphismError> {
        let pull = self.pullback_h1()?;
        let (g_source, g_target) = self.gram_matrices()?;
        let inv = g_target
            .inverse()
            .map_err(|e| MorphismError::Internal(e.to_string()))?
            .ok_or_else(|| MorphismError::Internal("target gram matrix is singular".into()))?;
        inv.mul(&pull.transpose())
            .and_then(|m| m.mul(&g_source))
            .map_err(|e| MorphismError::Internal(e.to_string()))
    }

    /// Pullback on cohomology: the dual of the pushforward on homology,
    /// converted through the pairing Gram matrices of the two graphs.
    pub fn pullback_h1_cohom(&self) -> Result<Matrix, MorphismError> {
        let push = self.pushforward_h1()?;
        let (g_source, g_target) = self.gram_matrices()?;
        let inv = g_source
            .inverse()
            .map_err(|e| MorphismError::Internal(e.to_string()))?
            .ok_or_else(|| MorphismError::Internal("source gram matrix is singular".into()))?;
        inv.mul(&push.transpose())
            .and_then(|m| m.mul(&g_target))
            .map_err(|e| MorphismError::Internal(e.to_string()))
    }

    /// Pairing Gram matrices of (h1 basis, cohomology representatives) for
    /// the source and target graphs.
    pub fn gram_matrices(&self) -> Result<(Matrix, Matrix), MorphismError> {
        let gs = crate::graph::gram_matrix(
            &self.source,
            &self.source.h1_basis(),
            &self.source.h1_cohom_classes(),
        )?;
        let gt = crate::graph::gram_matrix(
            &self.target,
            &self.target.h1_basis(),
            &self.target.h1_cohom_classes(),
        )?;
        Ok((gs, gt))
    }
}

struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

fn shuffle<T>(items: &mut [T], rng: &mut SplitMix64) {
    for i in (1..items.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}
