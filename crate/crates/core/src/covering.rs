//! Combinatorial semi-stable coverings of wide open curves, the dual-graph
//! triple they generate, weight-graded dimension reports for the first
//! cohomology, and functoriality of the graded transfer maps under finite
//! flat morphisms of coverings.
//!
//! A covering is described by its components (with the genus of the
//! compactified reduction), the connecting annuli between components, and
//! the boundary annuli toward the wide open ends. The three graphs are:
//!
//! * `gamma` — one vertex per component, one edge per connecting annulus;
//! * `gamma_prime` — `gamma` plus one leaf vertex per end;
//! * `gamma_tilde` — `gamma_prime` plus a single star vertex joined to
//!   every end vertex.
//!
//! The first cohomology of the curve then decomposes by weight: weight 0
//! has the dimension of `H^1(gamma)`, weight 1 contributes `2g` per
//! component, and weight 2 has the dimension of `H_1(gamma_tilde)` (the
//! Tate-twisted piece, tracked as a label only).

use crate::graph::{DartId, EdgeSpec, Graph, GraphError, VertexId};
use crate::linalg::{is_scaled_identity, Matrix, Rational};
use crate::morphism::{EdgeImage, FiniteFlatMorphism, MorphismError, ValidationReport};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoveringError {
    #[error("covering has no components")]
    NoComponents,
    #[error("duplicate component id {0:?}")]
    DuplicateComponentId(String),
    #[error("duplicate annulus id {0:?}")]
    DuplicateAnnulusId(String),
    #[error("duplicate end id {0:?}")]
    DuplicateEndId(String),
    #[error("annulus {annulus:?} references unknown component {component:?}")]
    UnknownComponentInAnnulus { annulus: String, component: String },
    #[error("end {end:?} references unknown component {component:?}")]
    UnknownComponentInEnd { end: String, component: String },
    #[error("covering is not connected: the graph on components and annuli has {components} connected pieces")]
    NotConnected { components: usize },
    #[error("covering has no ends; a wide open curve has at least one")]
    NoEnds,
    #[error("morphism references unknown {kind} id {id:?}")]
    UnknownMorphismRef { kind: &'static str, id: String },
    #[error("{kind} map is missing an entry for {id:?}")]
    MissingMorphismEntry { kind: &'static str, id: String },
    #[error("induced morphism on {level} violates the finite flatness axioms:\n{report}")]
    InvalidGraphMorphism {
        level: &'static str,
        report: ValidationReport,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// One component of the covering: a basic wide open pair, carrying only
/// the genus of its compactified reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub genus: u64,
}

/// A connecting annulus between two components (possibly the same one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annulus {
    pub id: String,
    pub a: String,
    pub b: String,
}

/// A boundary annulus toward a wide open end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct End {
    pub id: String,
    pub component: String,
}

/// Validated combinatorial description of a semi-stable covering of a
/// connected wide open curve: connected component graph, at least one end.
#[derive(Debug, Clone)]
pub struct CoveringDescription {
    components: Vec<Component>,
    annuli: Vec<Annulus>,
    ends: Vec<End>,
}

impl CoveringDescription {
    pub fn new(
        components: Vec<Component>,
        annuli: Vec<Annulus>,
        ends: Vec<End>,
    ) -> Result<CoveringDescription, CoveringError> {
        if components.is_empty() {
            return Err(CoveringError::NoComponents);
        }
        let mut components = components;
        components.sort_by(|x, y| x.id.cmp(&y.id));
        if let Some(w) = components.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(CoveringError::DuplicateComponentId(w[0].id.clone()));
        }
        let mut annuli = annuli;
        annuli.sort_by(|x, y| x.id.cmp(&y.id));
        if let Some(w) = annuli.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(CoveringError::DuplicateAnnulusId(w[0].id.clone()));
        }
        let mut ends = ends;
        ends.sort_by(|x, y| x.id.cmp(&y.id));
        if let Some(w) = ends.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(CoveringError::DuplicateEndId(w[0].id.clone()));
        }
        let index: BTreeMap<&str, usize> = components
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.as_str(), i))
            .collect();
        for annulus in &annuli {
            for endpoint in [&annulus.a, &annulus.b] {
                if !index.contains_key(endpoint.as_str()) {
                    return Err(CoveringError::UnknownComponentInAnnulus {
                        annulus: annulus.id.clone(),
                        component: endpoint.clone(),
                    });
                }
            }
        }
        for end in &ends {
            if !index.contains_key(end.component.as_str()) {
                return Err(CoveringError::UnknownComponentInEnd {
                    end: end.id.clone(),
                    component: end.component.clone(),
                });
            }
        }
        if ends.is_empty() {
            return Err(CoveringError::NoEnds);
        }
        let covering = CoveringDescription {
            components,
            annuli,
            ends,
        };
        let pieces = covering.build_gamma().connected_components();
        if pieces != 1 {
            return Err(CoveringError::NotConnected { components: pieces });
        }
        Ok(covering)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn annuli(&self) -> &[Annulus] {
        &self.annuli
    }

    pub fn ends(&self) -> &[End] {
        &self.ends
    }

    fn build_gamma(&self) -> Graph {
        Graph::new(
            self.components.iter().map(|c| component_vertex(&c.id)),
            self.annuli.iter().map(|a| {
                EdgeSpec::new(
                    annulus_edge(&a.id),
                    component_vertex(&a.a),
                    component_vertex(&a.b),
                )
            }),
        )
        .expect("component and annulus ids were validated")
    }

    /// Builds the dual graph, the dual graph with end vertices, and the
    /// extended graph with the star vertex. Vertex and edge ids are derived
    /// from the input ids, so the construction is deterministic.
    pub fn build_graphs(&self) -> GraphTriple {
        let gamma = self.build_gamma();
        let prime_vertices = self
            .components
            .iter()
            .map(|c| component_vertex(&c.id))
            .chain(self.ends.iter().map(|e| end_vertex(&e.id)));
        let prime_edges = self
            .annuli
            .iter()
            .map(|a| {
                EdgeSpec::new(
                    annulus_edge(&a.id),
                    component_vertex(&a.a),
                    component_vertex(&a.b),
                )
            })
            .chain(self.ends.iter().map(|e| {
                EdgeSpec::new(
                    end_edge(&e.id),
                    component_vertex(&e.component),
                    end_vertex(&e.id),
                )
            }))
            .collect::<Vec<_>>();
        let gamma_prime = Graph::new(prime_vertices.clone(), prime_edges.clone())
            .expect("ids were validated");
        let tilde_vertices = prime_vertices.chain(std::iter::once(STAR_VERTEX.to_string()));
        let tilde_edges = prime_edges.into_iter().chain(self.ends.iter().map(|e| {
            EdgeSpec::new(star_edge(&e.id), end_vertex(&e.id), STAR_VERTEX.to_string())
        }));
        let gamma_tilde = Graph::new(tilde_vertices, tilde_edges).expect("ids were validated");
        let star_vertex = gamma_tilde
            .vertex_by_label(STAR_VERTEX)
            .expect("star vertex was just added");
        let gamma_in_prime = inclusion(&gamma, &gamma_prime);
        let prime_in_tilde = inclusion(&gamma_prime, &gamma_tilde);
        GraphTriple {
            gamma,
            gamma_prime,
            gamma_tilde,
            star_vertex,
            gamma_in_prime,
            prime_in_tilde,
        }
    }

    /// Weight-graded dimensions of the first cohomology of the curve.
    pub fn dimension_report(&self) -> DimensionReport {
        let triple = self.build_graphs();
        let w0 = triple.gamma.betti1();
        let w1 = self.components.iter().map(|c| 2 * c.genus).sum::<u64>() as usize;
        let w2 = triple.gamma_tilde.betti1();
        DimensionReport {
            h0: 1,
            w0,
            w1,
            w2,
            h1_special: w0 + w1,
            h1_total: w0 + w1 + w2,
        }
    }
}

const STAR_VERTEX: &str = "*";

fn component_vertex(id: &str) -> String {
    format!("c:{id}")
}

fn end_vertex(id: &str) -> String {
    format!("e:{id}")
}

fn annulus_edge(id: &str) -> String {
    format!("a:{id}")
}

fn end_edge(id: &str) -> String {
    format!("end:{id}")
}

fn star_edge(id: &str) -> String {
    format!("star:{id}")
}

/// Label-preserving inclusion of one graph into a larger one.
#[derive(Debug, Clone)]
pub struct InclusionMap {
    pub vertices: Vec<VertexId>,
    pub darts: Vec<DartId>,
}

fn inclusion(small: &Graph, big: &Graph) -> InclusionMap {
    let vertices = small
        .vertices()
        .map(|v| {
            big.vertex_by_label(small.vertex_label(v))
                .expect("inclusion preserves labels")
        })
        .collect();
    let darts = small
        .darts()
        .map(|d| {
            let edge = big
                .edge_by_label(small.edge_label(d.edge()))
                .expect("inclusion preserves labels");
            let fwd = big.forward_dart(edge);
            if d.is_forward() {
                fwd
            } else {
                fwd.twin()
            }
        })
        .collect();
    InclusionMap { vertices, darts }
}

/// The dual graph, its end-extended variant, and the star-extended variant,
/// with the inclusion maps between them.
#[derive(Debug, Clone)]
pub struct GraphTriple {
    pub gamma: Graph,
    pub gamma_prime: Graph,
    pub gamma_tilde: Graph,
    pub star_vertex: VertexId,
    pub gamma_in_prime: InclusionMap,
    pub prime_in_tilde: InclusionMap,
}

/// Weight-graded dimensions of the first cohomology of a wide open curve
/// with the given covering. `w2` is the Tate-twisted piece; the twist is a
/// label, never arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub h0: usize,
    pub w0: usize,
    pub w1: usize,
    pub w2: usize,
    pub h1_special: usize,
    pub h1_total: usize,
}

/// A morphism of coverings: component, annulus and end maps with
/// multiplicities, and a global degree.
#[derive(Debug, Clone)]
pub struct CoveringMorphism {
    source: CoveringDescription,
    target: CoveringDescription,
    /// per source component: (target component index, multiplicity)
    component_map: Vec<(usize, u64)>,
    /// per source annulus: (target annulus index, flip, multiplicity)
    annulus_map: Vec<(usize, bool, u64)>,
    /// per source end: (target end index, multiplicity)
    end_map: Vec<(usize, u64)>,
    degree: u64,
}

/// Label-level description of one map entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEntry {
    pub to: String,
    pub mult: u64,
    pub flip: bool,
}

impl CoveringMorphism {
    /// Resolves label-level maps against the source and target coverings.
    /// Every source component, annulus and end must have exactly one entry.
    pub fn from_label_maps(
        source: CoveringDescription,
        target: CoveringDescription,
        component_map: &BTreeMap<String, MapEntry>,
        annulus_map: &BTreeMap<String, MapEntry>,
        end_map: &BTreeMap<String, MapEntry>,
        degree: u64,
    ) -> Result<CoveringMorphism, CoveringError> {
        fn resolve<T, U>(
            kind: &'static str,
            source_items: &[T],
            target_items: &[U],
            source_id: impl Fn(&T) -> &str,
            target_id: impl Fn(&U) -> &str,
            map: &BTreeMap<String, MapEntry>,
        ) -> Result<Vec<(usize, bool, u64)>, CoveringError> {
            for key in map.keys() {
                if !source_items.iter().any(|i| source_id(i) == key) {
                    return Err(CoveringError::UnknownMorphismRef {
                        kind,
                        id: key.clone(),
                    });
                }
            }
            source_items
                .iter()
                .map(|item| {
                    let entry = map.get(source_id(item)).ok_or_else(|| {
                        CoveringError::MissingMorphismEntry {
                            kind,
                            id: source_id(item).to_string(),
                        }
                    })?;
                    let index = target_items
                        .iter()
                        .position(|t| target_id(t) == entry.to)
                        .ok_or_else(|| CoveringError::UnknownMorphismRef {
                            kind,
                            id: entry.to.clone(),
                        })?;
                    Ok((index, entry.flip, entry.mult))
                })
                .collect()
        }

        let components = resolve(
            "component",
            &source.components,
            &target.components,
            |c: &Component| &c.id,
            |c: &Component| &c.id,
            component_map,
        )?;
        let annuli = resolve(
            "annulus",
            &source.annuli,
            &target.annuli,
            |a: &Annulus| &a.id,
            |a: &Annulus| &a.id,
            annulus_map,
        )?;
        let ends = resolve(
            "end",
            &source.ends,
            &target.ends,
            |e: &End| &e.id,
            |e: &End| &e.id,
            end_map,
        )?;
        Ok(CoveringMorphism {
            source,
            target,
            component_map: components.into_iter().map(|(i, _, m)| (i, m)).collect(),
            annulus_map: annuli,
            end_map: ends.into_iter().map(|(i, _, m)| (i, m)).collect(),
            degree,
        })
    }

    pub fn source(&self) -> &CoveringDescription {
        &self.source
    }

    pub fn target(&self) -> &CoveringDescription {
        &self.target
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Assembles the induced graph morphisms on the dual graph, its
    /// end-extended variant and its star-extended variant, and validates
    /// all three. The star vertex maps to the star vertex with `n_v = n`;
    /// each star edge inherits the multiplicity of its end.
    pub fn build_graph_morphism(&self) -> Result<CoveringGraphMorphisms, CoveringError> {
        let source_triple = self.source.build_graphs();
        let target_triple = self.target.build_graphs();

        let vertex_image = |label: &str| -> String {
            if label == STAR_VERTEX {
                STAR_VERTEX.to_string()
            } else if let Some(id) = label.strip_prefix("c:") {
                let i = self
                    .source
                    .components
                    .iter()
                    .position(|c| c.id == id)
                    .expect("vertex labels come from the covering");
                component_vertex(&self.target.components[self.component_map[i].0].id)
            } else {
                let id = label.strip_prefix("e:").expect("vertex kinds are c:, e:, *");
                let i = self
                    .source
                    .ends
                    .iter()
                    .position(|e| e.id == id)
                    .expect("vertex labels come from the covering");
                end_vertex(&self.target.ends[self.end_map[i].0].id)
            }
        };
        let vertex_mult_of = |label: &str| -> u64 {
            if label == STAR_VERTEX {
                self.degree
            } else if let Some(id) = label.strip_prefix("c:") {
                let i = self
                    .source
                    .components
                    .iter()
                    .position(|c| c.id == id)
                    .expect("vertex labels come from the covering");
                self.component_map[i].1
            } else {
                let id = label.strip_prefix("e:").expect("vertex kinds are c:, e:, *");
                let i = self
                    .source
                    .ends
                    .iter()
                    .position(|e| e.id == id)
                    .expect("vertex labels come from the covering");
                self.end_map[i].1
            }
        };
        let edge_image = |label: &str| -> (String, bool, u64) {
            if let Some(id) = label.strip_prefix("a:") {
                let i = self
                    .source
                    .annuli
                    .iter()
                    .position(|a| a.id == id)
                    .expect("edge labels come from the covering");
                let (t, flip, mult) = self.annulus_map[i];
                (annulus_edge(&self.target.annuli[t].id), flip, mult)
            } else if let Some(id) = label.strip_prefix("end:") {
                let i = self
                    .source
                    .ends
                    .iter()
                    .position(|e| e.id == id)
                    .expect("edge labels come from the covering");
                let (t, mult) = self.end_map[i];
                (end_edge(&self.target.ends[t].id), false, mult)
            } else {
                let id = label
                    .strip_prefix("star:")
                    .expect("edge kinds are a:, end:, star:");
                let i = self
                    .source
                    .ends
                    .iter()
                    .position(|e| e.id == id)
                    .expect("edge labels come from the covering");
                let (t, mult) = self.end_map[i];
                (star_edge(&self.target.ends[t].id), false, mult)
            }
        };

        let assemble = |source: &Graph, target: &Graph| -> Result<FiniteFlatMorphism, CoveringError> {
            let vertex_map = source
                .vertices()
                .map(|v| Ok(target.vertex_by_label(&vertex_image(source.vertex_label(v)))?))
                .collect::<Result<Vec<_>, CoveringError>>()?;
            let vertex_mult = source
                .vertices()
                .map(|v| vertex_mult_of(source.vertex_label(v)))
                .collect();
            let mut edge_map = Vec::with_capacity(source.edge_count());
            let mut edge_mult = Vec::with_capacity(source.edge_count());
            for e in source.edges() {
                let (image_label, flip, mult) = edge_image(source.edge_label(e));
                edge_map.push(EdgeImage {
                    to: target.edge_by_label(&image_label)?,
                    flip,
                });
                edge_mult.push(mult);
            }
            Ok(FiniteFlatMorphism::new(
                source.clone(),
                target.clone(),
                vertex_map,
                edge_map,
                vertex_mult,
                edge_mult,
                self.degree,
            )?)
        };

        let gamma = assemble(&source_triple.gamma, &target_triple.gamma)?;
        let gamma_prime = assemble(&source_triple.gamma_prime, &target_triple.gamma_prime)?;
        let gamma_tilde = assemble(&source_triple.gamma_tilde, &target_triple.gamma_tilde)?;
        for (level, morphism) in [
            ("gamma", &gamma),
            ("gamma'", &gamma_prime),
            ("gamma~", &gamma_tilde),
        ] {
            let report = morphism.validate();
            if !report.is_ok() {
                return Err(CoveringError::InvalidGraphMorphism { level, report });
            }
        }
        Ok(CoveringGraphMorphisms {
            gamma,
            gamma_prime,
            gamma_tilde,
        })
    }

    /// Graded transfer maps and their composition checks: pushforward and
    /// pullback on weight 0 (cohomology of the dual graph) and on weight 2
    /// (homology of the star-extended graph), with dimension reports for
    /// both sides attached.
    pub fn functorial_report(&self) -> Result<FunctorialReport, CoveringError> {
        let morphisms = self.build_graph_morphism()?;
        let weight0_pushforward = morphisms.gamma.pushforward_h1_cohom()?;
        let weight0_pullback = morphisms.gamma.pullback_h1_cohom()?;
        let weight2_pushforward = morphisms.gamma_tilde.pushforward_h1()?;
        let weight2_pullback = morphisms.gamma_tilde.pullback_h1()?;
        let n = Rational::from_integer(self.degree.into());
        let weight0_push_pull_is_n_id = is_scaled_identity(
            &weight0_pushforward
                .mul(&weight0_pullback)
                .map_err(MorphismError::from)?,
            &n,
        );
        let weight2_push_pull_is_n_id = is_scaled_identity(
            &weight2_pushforward
                .mul(&weight2_pullback)
                .map_err(MorphismError::from)?,
            &n,
        );
        Ok(FunctorialReport {
            degree: self.degree,
            source_dims: self.source.dimension_report(),
            target_dims: self.target.dimension_report(),
            weight0_pushforward,
            weight0_pullback,
            weight2_pushforward,
            weight2_pullback,
            weight0_push_pull_is_n_id,
            weight2_push_pull_is_n_id,
        })
    }
}

/// The induced finite flat morphisms on the three graphs of the triple.
#[derive(Debug, Clone)]
pub struct CoveringGraphMorphisms {
    pub gamma: FiniteFlatMorphism,
    pub gamma_prime: FiniteFlatMorphism,
    pub gamma_tilde: FiniteFlatMorphism,
}

/// Graded transfer matrices of a covering morphism and the `push ∘ pull =
/// n · id` checks on the target graded pieces.
#[derive(Debug, Clone)]
pub struct FunctorialReport {
    pub degree: u64,
    pub source_dims: DimensionReport,
    pub target_dims: DimensionReport,
    pub weight0_pushforward: Matrix,
    pub weight0_pullback: Matrix,
    pub weight2_pushforward: Matrix,
    pub weight2_pullback: Matrix,
    pub weight0_push_pull_is_n_id: bool,
    pub weight2_push_pull_is_n_id: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn covering(
        components: &[(&str, u64)],
        annuli: &[(&str, &str, &str)],
        ends: &[(&str, &str)],
    ) -> Result<CoveringDescription, CoveringError> {
        CoveringDescription::new(
            components
                .iter()
                .map(|(id, genus)| Component {
                    id: id.to_string(),
                    genus: *genus,
                })
                .collect(),
            annuli
                .iter()
                .map(|(id, a, b)| Annulus {
                    id: id.to_string(),
                    a: a.to_string(),
                    b: b.to_string(),
                })
                .collect(),
            ends.iter()
                .map(|(id, c)| End {
                    id: id.to_string(),
                    component: c.to_string(),
                })
                .collect(),
        )
    }

    fn entry(to: &str, mult: u64) -> MapEntry {
        MapEntry {
            to: to.to_string(),
            mult,
            flip: false,
        }
    }

    /// Degree-2 cyclic covering morphism: two components in a 2-cycle of
    /// annuli with one end each, over one component with a self-annulus and
    /// one end.
    fn cyclic_degree2() -> CoveringMorphism {
        let source = covering(
            &[("Y1", 0), ("Y2", 0)],
            &[("B1", "Y1", "Y2"), ("B2", "Y2", "Y1")],
            &[("F1", "Y1"), ("F2", "Y2")],
        )
        .unwrap();
        let target = covering(&[("X", 0)], &[("A", "X", "X")], &[("E", "X")]).unwrap();
        let component_map: BTreeMap<String, MapEntry> = [
            ("Y1".to_string(), entry("X", 1)),
            ("Y2".to_string(), entry("X", 1)),
        ]
        .into();
        let annulus_map: BTreeMap<String, MapEntry> = [
            ("B1".to_string(), entry("A", 1)),
            ("B2".to_string(), entry("A", 1)),
        ]
        .into();
        let end_map: BTreeMap<String, MapEntry> = [
            ("F1".to_string(), entry("E", 1)),
            ("F2".to_string(), entry("E", 1)),
        ]
        .into();
        CoveringMorphism::from_label_maps(
            source,
            target,
            &component_map,
            &annulus_map,
            &end_map,
            2,
        )
        .unwrap()
    }

    #[test]
    fn smallest_covering_builds_a_path() {
        let c = covering(&[("P", 0)], &[], &[("E", "P")]).unwrap();
        let triple = c.build_graphs();
        assert_eq!(triple.gamma.vertex_count(), 1);
        assert_eq!(triple.gamma.edge_count(), 0);
        assert_eq!(triple.gamma_prime.vertex_count(), 2);
        assert_eq!(triple.gamma_prime.edge_count(), 1);
        assert_eq!(triple.gamma_tilde.vertex_count(), 3);
        assert_eq!(triple.gamma_tilde.edge_count(), 2);
        assert_eq!(
            triple.gamma_tilde.vertex_label(triple.star_vertex),
            STAR_VERTEX
        );
    }

    #[test]
    fn two_component_covering_counts() {
        let c = covering(
            &[("P", 1), ("Q", 2)],
            &[("A1", "P", "Q"), ("A2", "P", "Q")],
            &[("E1", "P"), ("E2", "Q")],
        )
        .unwrap();
        let triple = c.build_graphs();
        assert_eq!(triple.gamma.vertex_count(), 2);
        assert_eq!(triple.gamma.edge_count(), 2);
        assert_eq!(triple.gamma_prime.vertex_count(), 4);
        assert_eq!(triple.gamma_prime.edge_count(), 4);
        assert_eq!(triple.gamma_tilde.vertex_count(), 5);
        assert_eq!(triple.gamma_tilde.edge_count(), 6);
    }

    #[test]
    fn self_annulus_covering_counts() {
        let c = covering(&[("P", 0)], &[("A", "P", "P")], &[("E1", "P"), ("E2", "P")]).unwrap();
        let triple = c.build_graphs();
        assert_eq!(triple.gamma.vertex_count(), 1);
        assert_eq!(triple.gamma.edge_count(), 1);
        assert_eq!(triple.gamma_tilde.vertex_count(), 4);
        assert_eq!(triple.gamma_tilde.edge_count(), 5);
    }

    #[test]
    fn dimension_report_examples() {
        let r = covering(&[("P", 0)], &[], &[("E", "P")])
            .unwrap()
            .dimension_report();
        assert_eq!((r.h0, r.w0, r.w1, r.w2, r.h1_total), (1, 0, 0, 0, 0));

        let r = covering(
            &[("P", 1), ("Q", 2)],
            &[("A1", "P", "Q"), ("A2", "P", "Q")],
            &[("E1", "P"), ("E2", "Q")],
        )
        .unwrap()
        .dimension_report();
        assert_eq!((r.w0, r.w1, r.w2, r.h1_total), (1, 6, 2, 9));
        assert_eq!(r.h1_special, 7);

        let r = covering(&[("P", 0)], &[("A", "P", "P")], &[("E1", "P"), ("E2", "P")])
            .unwrap()
            .dimension_report();
        assert_eq!((r.w0, r.w1, r.w2, r.h1_total), (1, 0, 2, 3));
    }

    #[test]
    fn invalid_coverings_are_rejected() {
        assert_eq!(
            covering(&[("P", 0), ("Q", 0)], &[], &[("E", "P")]).unwrap_err(),
            CoveringError::NotConnected { components: 2 }
        );
        assert_eq!(
            covering(&[("P", 0)], &[], &[]).unwrap_err(),
            CoveringError::NoEnds
        );
        assert_eq!(covering(&[], &[], &[]).unwrap_err(), CoveringError::NoComponents);
        assert!(matches!(
            covering(&[("P", 0)], &[("A", "P", "Z")], &[("E", "P")]).unwrap_err(),
            CoveringError::UnknownComponentInAnnulus { .. }
        ));
    }

    #[test]
    fn betti_relations_on_the_triple() {
        for c in [
            covering(&[("P", 0)], &[], &[("E", "P")]).unwrap(),
            covering(
                &[("P", 1), ("Q", 2)],
                &[("A1", "P", "Q"), ("A2", "P", "Q")],
                &[("E1", "P"), ("E2", "Q")],
            )
            .unwrap(),
            covering(&[("P", 0)], &[("A", "P", "P")], &[("E1", "P"), ("E2", "P")]).unwrap(),
        ] {
            let triple = c.build_graphs();
            // end edges are bridges
            assert_eq!(triple.gamma_prime.betti1(), triple.gamma.betti1());
            // each star edge beyond the first closes one cycle
            assert_eq!(
                triple.gamma_tilde.betti1(),
                triple.gamma_prime.betti1() + c.ends().len() - 1
            );
        }
    }

    #[test]
    fn identity_covering_morphism() {
        let target = covering(&[("X", 1)], &[("A", "X", "X")], &[("E", "X")]).unwrap();
        let component_map: BTreeMap<String, MapEntry> = [("X".to_string(), entry("X", 1))].into();
        let annulus_map: BTreeMap<String, MapEntry> = [("A".to_string(), entry("A", 1))].into();
        let end_map: BTreeMap<String, MapEntry> = [("E".to_string(), entry("E", 1))].into();
        let f = CoveringMorphism::from_label_maps(
            target.clone(),
            target,
            &component_map,
            &annulus_map,
            &end_map,
            1,
        )
        .unwrap();
        let morphisms = f.build_graph_morphism().unwrap();
        assert_eq!(morphisms.gamma_tilde.degree(), 1);
        let report = f.functorial_report().unwrap();
        assert!(report.weight0_pushforward.is_identity());
        assert!(report.weight0_pullback.is_identity());
        assert!(report.weight2_pushforward.is_identity());
        assert!(report.weight2_pullback.is_identity());
        assert!(report.weight0_push_pull_is_n_id);
        assert!(report.weight2_push_pull_is_n_id);
    }

    #[test]
    fn cyclic_degree2_is_valid_and_functorial() {
        let f = cyclic_degree2();
        let morphisms = f.build_graph_morphism().unwrap();
        assert!(morphisms.gamma.validate().is_ok());
        assert!(morphisms.gamma_prime.validate().is_ok());
        assert!(morphisms.gamma_tilde.validate().is_ok());

        let report = f.functorial_report().unwrap();
        assert_eq!((report.source_dims.w0, report.source_dims.w2), (1, 2));
        assert_eq!((report.target_dims.w0, report.target_dims.w2), (1, 1));
        assert!(report.weight0_push_pull_is_n_id);
        assert!(report.weight2_push_pull_is_n_id);
        // the target weight-2 piece is one-dimensional
        assert_eq!(report.weight2_pushforward.rows(), 1);
        assert_eq!(report.weight2_pullback.cols(), 1);
    }

    #[test]
    fn missing_end_breaks_surjectivity() {
        // same cyclic cover but the source has a single end: the fiber over
        // the target star edge of the missing end is empty on gamma~
        let source = covering(
            &[("Y1", 0), ("Y2", 0)],
            &[("B1", "Y1", "Y2"), ("B2", "Y2", "Y1")],
            &[("F1", "Y1")],
        )
        .unwrap();
        let target = covering(&[("X", 0)], &[("A", "X", "X")], &[("E", "X")]).unwrap();
        let component_map: BTreeMap<String, MapEntry> = [
            ("Y1".to_string(), entry("X", 1)),
            ("Y2".to_string(), entry("X", 1)),
        ]
        .into();
        let annulus_map: BTreeMap<String, MapEntry> = [
            ("B1".to_string(), entry("A", 1)),
            ("B2".to_string(), entry("A", 1)),
        ]
        .into();
        let end_map: BTreeMap<String, MapEntry> = [("F1".to_string(), entry("E", 1))].into();
        let f = CoveringMorphism::from_label_maps(
            source,
            target,
            &component_map,
            &annulus_map,
            &end_map,
            2,
        )
        .unwrap();
        let err = f.build_graph_morphism().unwrap_err();
        match err {
            CoveringError::InvalidGraphMorphism { report, .. } => {
                let text = report.to_string();
                assert!(text.contains("fiber sum") || text.contains("not surjective"));
            }
            other => panic!("expected InvalidGraphMorphism, got {other:?}"),
        }
    }

    #[test]
    fn flipped_annulus_breaks_incidence() {
        // identity on a two-component covering, except the annulus is
        // flipped: endpoint images disagree with the component map
        let c = covering(
            &[("P", 0), ("Q", 0)],
            &[("A", "P", "Q")],
            &[("E1", "P"), ("E2", "Q")],
        )
        .unwrap();
        let component_map: BTreeMap<String, MapEntry> =
            [("P".to_string(), entry("P", 1)), ("Q".to_string(), entry("Q", 1))].into();
        let annulus_map: BTreeMap<String, MapEntry> = [(
            "A".to_string(),
            MapEntry {
                to: "A".to_string(),
                mult: 1,
                flip: true,
            },
        )]
        .into();
        let end_map: BTreeMap<String, MapEntry> =
            [("E1".to_string(), entry("E1", 1)), ("E2".to_string(), entry("E2", 1))].into();
        let f = CoveringMorphism::from_label_maps(
            c.clone(),
            c,
            &component_map,
            &annulus_map,
            &end_map,
            1,
        )
        .unwrap();
        let err = f.build_graph_morphism().unwrap_err();
        assert!(err.to_string().contains("incompatible"), "{err}");
    }

    #[test]
    fn mutated_multiplicity_is_named() {
        let f = cyclic_degree2();
        let mut broken = f.clone();
        broken.end_map[0].1 = 2;
        let err = broken.build_graph_morphism().unwrap_err();
        assert!(matches!(err, CoveringError::InvalidGraphMorphism { .. }));
        assert!(err.to_string().contains("fiber sum"));
    }
}
