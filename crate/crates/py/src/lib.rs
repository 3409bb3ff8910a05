//! Python bindings for the widegraph toolkit.
//!
//! Exposes graphs with their homology over exact rationals, finite flat
//! graph morphisms with cycle lifting and transfer matrices, and coverings
//! with their dual-graph triples and weight-graded dimension reports.
//! Rational numbers cross the boundary as exact strings like `"-2/3"`;
//! feed them to `fractions.Fraction` on the Python side when arithmetic
//! is needed.
//!
//! Usage:
//!
//!     from widegraph import Graph, Morphism, Covering
//!     theta = Graph(["u", "v"], [("A", "u", "v"), ("B", "u", "v"), ("C", "u", "v")])
//!     assert theta.betti1() == 2

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::collections::BTreeMap;
use std::path::Path;
use widegraph_core as core;
use widegraph_core::io;
use widegraph_core::{Matrix, TieBreak};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.entry_strings()
}

fn chain_entries(g: &core::Graph, chain: &core::Chain1) -> BTreeMap<String, String> {
    let zero = core::integer(0);
    g.edges()
        .filter(|&e| *chain.edge_coeff(e) != zero)
        .map(|e| (g.edge_label(e).to_string(), chain.edge_coeff(e).to_string()))
        .collect()
}

fn parse_cycle(g: &core::Graph, darts: &[String]) -> PyResult<core::Cycle> {
    let labels: Vec<&str> = darts.iter().map(|s| s.as_str()).collect();
    core::Cycle::from_dart_labels(g, &labels).map_err(value_error)
}

/// A finite graph with ordered edges (darts), loops and parallel edges
/// allowed. Edges are (id, src, dst) triples; darts are written as the
/// edge id followed by "+" or "-".
#[pyclass]
struct Graph {
    inner: core::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> PyResult<Self> {
        let inner = core::Graph::new(
            vertices,
            edges
                .into_iter()
                .map(|(id, src, dst)| core::EdgeSpec::new(id, src, dst)),
        )
        .map_err(value_error)?;
        Ok(Graph { inner })
    }

    /// Loads a graph from a JSON file.
    #[staticmethod]
    fn from_json(path: &str) -> PyResult<Self> {
        Ok(Graph {
            inner: io::load_graph(Path::new(path)).map_err(value_error)?,
        })
    }

    fn vertex_labels(&self) -> Vec<String> {
        self.inner
            .vertices()
            .map(|v| self.inner.vertex_label(v).to_string())
            .collect()
    }

    fn edge_labels(&self) -> Vec<String> {
        self.inner
            .edges()
            .map(|e| self.inner.edge_label(e).to_string())
            .collect()
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn connected_components(&self) -> usize {
        self.inner.connected_components()
    }

    fn betti1(&self) -> usize {
        self.inner.betti1()
    }

    /// Boundary matrix (vertices x edges) as exact rational strings.
    fn boundary_matrix(&self) -> Vec<Vec<String>> {
        let o = self.inner.canonical_orientation();
        matrix_strings(&self.inner.boundary_matrix(&o).expect("own orientation"))
    }

    /// Coboundary matrix (edges x vertices), the transpose of the boundary.
    fn coboundary_matrix(&self) -> Vec<Vec<String>> {
        let o = self.inner.canonical_orientation();
        matrix_strings(&self.inner.coboundary_matrix(&o).expect("own orientation"))
    }

    /// Cycle-space basis (edges x classes) as exact rational strings.
    fn h1_basis(&self) -> Vec<Vec<String>> {
        matrix_strings(self.inner.h1_basis().matrix())
    }

    /// Cohomology representatives dual to the basis under the pairing.
    fn h1_cohom_representatives(&self) -> Vec<Vec<String>> {
        matrix_strings(self.inner.h1_cohom_classes().matrix())
    }

    /// Nonzero edge coefficients of the chain of a closed walk.
    fn cycle_to_chain(&self, darts: Vec<String>) -> PyResult<BTreeMap<String, String>> {
        let cycle = parse_cycle(&self.inner, &darts)?;
        let chain = self.inner.cycle_to_chain(&cycle).map_err(value_error)?;
        Ok(chain_entries(&self.inner, &chain))
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={}, betti1={})",
            self.inner.vertex_count(),
            self.inner.edge_count(),
            self.inner.betti1()
        )
    }
}

/// A finite flat morphism between graphs, with multiplicities and degree.
#[pyclass]
struct Morphism {
    inner: core::FiniteFlatMorphism,
}

#[pymethods]
impl Morphism {
    /// Builds a morphism from label-keyed maps. `edge_map` sends a source
    /// edge id to `(target edge id, flip)`.
    #[new]
    fn new(
        source: &Graph,
        target: &Graph,
        vertex_map: BTreeMap<String, String>,
        edge_map: BTreeMap<String, (String, bool)>,
        vertex_mult: BTreeMap<String, u64>,
        edge_mult: BTreeMap<String, u64>,
        degree: u64,
    ) -> PyResult<Self> {
        let inner = core::FiniteFlatMorphism::from_label_maps(
            source.inner.clone(),
            target.inner.clone(),
            &vertex_map,
            &edge_map,
            &vertex_mult,
            &edge_mult,
            degree,
        )
        .map_err(value_error)?;
        Ok(Morphism { inner })
    }

    /// Loads a morphism from a JSON file (graph references are resolved
    /// relative to the file).
    #[staticmethod]
    fn from_json(path: &str) -> PyResult<Self> {
        Ok(Morphism {
            inner: io::load_morphism(Path::new(path)).map_err(value_error)?,
        })
    }

    fn degree(&self) -> u64 {
        self.inner.degree()
    }

    fn source(&self) -> Graph {
        Graph {
            inner: self.inner.source().clone(),
        }
    }

    fn target(&self) -> Graph {
        Graph {
            inner: self.inner.target().clone(),
        }
    }

    /// All finite-flatness axiom violations, one message per violation.
    fn validate(&self) -> Vec<String> {
        self.inner
            .validate()
            .violations()
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    fn is_valid(&self) -> bool {
        self.inner.validate().is_ok()
    }

    /// Termwise image of a closed walk, as dart labels in the target.
    fn image_cycle(&self, darts: Vec<String>) -> PyResult<Vec<String>> {
        let cycle = parse_cycle(self.inner.source(), &darts)?;
        let image = self.inner.image_cycle(&cycle).map_err(value_error)?;
        Ok(image.dart_labels(self.inner.target()))
    }

    /// How many times the image of `cycle` wraps `base`.
    fn degree_over(&self, cycle: Vec<String>, base: Vec<String>) -> PyResult<u64> {
        let r = parse_cycle(self.inner.source(), &cycle)?;
        let r_prime = parse_cycle(self.inner.target(), &base)?;
        self.inner.degree_over(&r, &r_prime).map_err(value_error)
    }

    /// Lifts a target cycle; returns one dart-label list per lifted cycle.
    /// Passing a seed randomizes tie-breaking (the summed chain of the
    /// lifts does not depend on it).
    #[pyo3(signature = (cycle, seed=None))]
    fn lift_cycles(&self, cycle: Vec<String>, seed: Option<u64>) -> PyResult<Vec<Vec<String>>> {
        let base = parse_cycle(self.inner.target(), &cycle)?;
        let tie_break = match seed {
            Some(s) => TieBreak::Seeded(s),
            None => TieBreak::Deterministic,
        };
        let lifts = self
            .inner
            .lift_cycles(&base, tie_break)
            .map_err(value_error)?;
        Ok(lifts
            .iter()
            .map(|c| c.dart_labels(self.inner.source()))
            .collect())
    }

    /// Closed-form pullback of a target cycle as nonzero edge coefficients.
    fn pullback_chain(&self, cycle: Vec<String>) -> PyResult<BTreeMap<String, String>> {
        let base = parse_cycle(self.inner.target(), &cycle)?;
        let chain = self.inner.pullback_chain(&base).map_err(value_error)?;
        Ok(chain_entries(self.inner.source(), &chain))
    }

    fn pushforward_h1(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(matrix_strings(
            &self.inner.pushforward_h1().map_err(value_error)?,
        ))
    }

    fn pullback_h1(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(matrix_strings(
            &self.inner.pullback_h1().map_err(value_error)?,
        ))
    }

    fn pushforward_h1_cohom(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(matrix_strings(
            &self.inner.pushforward_h1_cohom().map_err(value_error)?,
        ))
    }

    fn pullback_h1_cohom(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(matrix_strings(
            &self.inner.pullback_h1_cohom().map_err(value_error)?,
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "Morphism(degree={}, valid={})",
            self.inner.degree(),
            self.inner.validate().is_ok()
        )
    }
}

fn dims_dict(r: &core::covering::DimensionReport) -> BTreeMap<String, usize> {
    [
        ("h0".to_string(), r.h0),
        ("w0".to_string(), r.w0),
        ("w1".to_string(), r.w1),
        ("w2".to_string(), r.w2),
        ("h1_special".to_string(), r.h1_special),
        ("h1_total".to_string(), r.h1_total),
    ]
    .into()
}

/// A combinatorial semi-stable covering of a connected wide open curve:
/// components with genus, connecting annuli, and at least one end.
#[pyclass]
struct Covering {
    inner: core::CoveringDescription,
}

#[pymethods]
impl Covering {
    #[new]
    fn new(
        components: Vec<(String, u64)>,
        annuli: Vec<(String, String, String)>,
        ends: Vec<(String, String)>,
    ) -> PyResult<Self> {
        let inner = core::CoveringDescription::new(
            components
                .into_iter()
                .map(|(id, genus)| core::covering::Component { id, genus })
                .collect(),
            annuli
                .into_iter()
                .map(|(id, a, b)| core::covering::Annulus { id, a, b })
                .collect(),
            ends.into_iter()
                .map(|(id, component)| core::covering::End { id, component })
                .collect(),
        )
        .map_err(value_error)?;
        Ok(Covering { inner })
    }

    #[staticmethod]
    fn from_json(path: &str) -> PyResult<Self> {
        Ok(Covering {
            inner: io::load_covering(Path::new(path)).map_err(value_error)?,
        })
    }

    /// Weight-graded dimensions: h0, w0, w1, w2, h1_special, h1_total.
    fn dimension_report(&self) -> BTreeMap<String, usize> {
        dims_dict(&self.inner.dimension_report())
    }

    /// The dual graph, its end-extended variant, and the star-extended
    /// variant.
    fn graphs(&self) -> (Graph, Graph, Graph) {
        let triple = self.inner.build_graphs();
        (
            Graph {
                inner: triple.gamma,
            },
            Graph {
                inner: triple.gamma_prime,
            },
            Graph {
                inner: triple.gamma_tilde,
            },
        )
    }

    fn __repr__(&self) -> String {
        let r = self.inner.dimension_report();
        format!(
            "Covering(components={}, annuli={}, ends={}, h1_total={})",
            self.inner.components().len(),
            self.inner.annuli().len(),
            self.inner.ends().len(),
            r.h1_total
        )
    }
}

/// A finite flat morphism between coverings with its graded transfer maps.
#[pyclass]
struct CoveringMorphism {
    inner: core::CoveringMorphism,
}

#[pymethods]
impl CoveringMorphism {
    #[staticmethod]
    fn from_json(path: &str) -> PyResult<Self> {
        Ok(CoveringMorphism {
            inner: io::load_covering_morphism(Path::new(path)).map_err(value_error)?,
        })
    }

    fn degree(&self) -> u64 {
        self.inner.degree()
    }

    /// The induced finite flat morphisms on the dual graph, the
    /// end-extended graph, and the star-extended graph. Raises ValueError
    /// when any of the three violates a flatness axiom.
    fn graph_morphisms(&self) -> PyResult<(Morphism, Morphism, Morphism)> {
        let m = self.inner.build_graph_morphism().map_err(value_error)?;
        Ok((
            Morphism { inner: m.gamma },
            Morphism {
                inner: m.gamma_prime,
            },
            Morphism {
                inner: m.gamma_tilde,
            },
        ))
    }

    /// Graded transfer maps and checks as a dict: degree, source/target
    /// dimension reports, the four weight-0/weight-2 matrices, and the
    /// push-pull composition check results.
    fn functorial_report(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = self.inner.functorial_report().map_err(value_error)?;
        let dict = pyo3::types::PyDict::new(py);
        dict.set_item("degree", report.degree)?;
        dict.set_item("source_dimensions", dims_dict(&report.source_dims))?;
        dict.set_item("target_dimensions", dims_dict(&report.target_dims))?;
        dict.set_item(
            "weight0_pushforward",
            matrix_strings(&report.weight0_pushforward),
        )?;
        dict.set_item("weight0_pullback", matrix_strings(&report.weight0_pullback))?;
        dict.set_item(
            "weight2_pushforward",
            matrix_strings(&report.weight2_pushforward),
        )?;
        dict.set_item("weight2_pullback", matrix_strings(&report.weight2_pullback))?;
        dict.set_item(
            "weight0_push_pull_is_n_id",
            report.weight0_push_pull_is_n_id,
        )?;
        dict.set_item(
            "weight2_push_pull_is_n_id",
            report.weight2_push_pull_is_n_id,
        )?;
        Ok(dict.into_any().unbind())
    }

    fn __repr__(&self) -> String {
        format!("CoveringMorphism(degree={})", self.inner.degree())
    }
}

#[pymodule]
fn widegraph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Graph>()?;
    m.add_class::<Morphism>()?;
    m.add_class::<Covering>()?;
    m.add_class::<CoveringMorphism>()?;
    Ok(())
}
