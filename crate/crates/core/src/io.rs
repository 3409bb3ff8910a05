//! JSON schemas and file loading for graphs, graph morphisms, coverings
//! and covering morphisms.
//!
//! All inputs are plain JSON with strict schemas (unknown fields are
//! rejected). Morphism files reference their source and target files by
//! path, resolved relative to the referencing file's directory. Darts are
//! written as an edge id followed by `+` or `-`.

use crate::covering::{
    Annulus, Component, CoveringDescription, CoveringError, CoveringMorphism, End, MapEntry,
};
use crate::graph::{EdgeSpec, Graph, GraphError};
use crate::morphism::{FiniteFlatMorphism, MorphismError};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: malformed JSON at line {line}, column {column}: {message}")]
    Json {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: schema violation: {message}")]
    Schema { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Graph {
        path: PathBuf,
        source: GraphError,
    },
    #[error("{path}: {source}")]
    Covering {
        path: PathBuf,
        source: CoveringError,
    },
    #[error("{path}: {source}")]
    Morphism {
        path: PathBuf,
        source: MorphismError,
    },
    #[error("{path}: cannot tell the file kind: expected one of the keys \"vertices\", \"components\", \"edge_map\", \"annulus_map\" at the top level")]
    UnknownKind { path: PathBuf },
}

impl IoError {
    /// True when the underlying problem is a mathematical invariant of the
    /// data (covering connectivity, ends) rather than malformed input.
    pub fn is_validation_failure(&self) -> bool {
        matches!(
            self,
            IoError::Covering {
                source: CoveringError::NotConnected { .. } | CoveringError::NoEnds,
                ..
            }
        )
    }
}

/// The four input schemas, detected from distinguishing top-level keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Graph,
    Covering,
    GraphMorphism,
    CoveringMorphism,
}

impl FileKind {
    pub fn name(self) -> &'static str {
        match self {
            FileKind::Graph => "graph",
            FileKind::Covering => "covering",
            FileKind::GraphMorphism => "graph-morphism",
            FileKind::CoveringMorphism => "covering-morphism",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<GraphFileEdge>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFileEdge {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: String,
    pub target: String,
    pub degree: u64,
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, EdgeMapEntry>,
    pub vertex_mult: BTreeMap<String, u64>,
    pub edge_mult: BTreeMap<String, u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeMapEntry {
    pub to: String,
    #[serde(default)]
    pub flip: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringFile {
    pub components: Vec<CoveringFileComponent>,
    pub annuli: Vec<CoveringFileAnnulus>,
    pub ends: Vec<CoveringFileEnd>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringFileComponent {
    pub id: String,
    pub genus: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringFileAnnulus {
    pub id: String,
    pub a: String,
    pub b: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringFileEnd {
    pub id: String,
    pub component: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringMorphismFile {
    pub source: String,
    pub target: String,
    pub degree: u64,
    pub component_map: BTreeMap<String, PlainMapEntry>,
    pub annulus_map: BTreeMap<String, FlippableMapEntry>,
    pub end_map: BTreeMap<String, PlainMapEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlainMapEntry {
    pub to: String,
    pub mult: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlippableMapEntry {
    pub to: String,
    pub mult: u64,
    #[serde(default)]
    pub flip: bool,
}

fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| {
        if e.classify() == serde_json::error::Category::Data {
            IoError::Schema {
                path: path.to_path_buf(),
                message: e.to_string(),
            }
        } else {
            IoError::Json {
                path: path.to_path_buf(),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        }
    })
}

/// Detects which schema a file uses from its top-level keys.
pub fn detect_kind(path: &Path) -> Result<FileKind, IoError> {
    let text = read_file(path)?;
    let value: serde_json::Value = parse(path, &text)?;
    let Some(object) = value.as_object() else {
        return Err(IoError::UnknownKind {
            path: path.to_path_buf(),
        });
    };
    if object.contains_key("vertices") {
        Ok(FileKind::Graph)
    } else if object.contains_key("components") {
        Ok(FileKind::Covering)
    } else if object.contains_key("edge_map") {
        Ok(FileKind::GraphMorphism)
    } else if object.contains_key("annulus_map") {
        Ok(FileKind::CoveringMorphism)
    } else {
        Err(IoError::UnknownKind {
            path: path.to_path_buf(),
        })
    }
}

pub fn load_graph(path: &Path) -> Result<Graph, IoError> {
    let text = read_file(path)?;
    let file: GraphFile = parse(path, &text)?;
    Graph::new(
        file.vertices,
        file.edges
            .into_iter()
            .map(|e| EdgeSpec::new(e.id, e.src, e.dst)),
    )
    .map_err(|source| IoError::Graph {
        path: path.to_path_buf(),
        source,
    })
}

fn resolve_ref(base: &Path, reference: &str) -> PathBuf {
    let referenced = Path::new(reference);
    if referenced.is_absolute() {
        referenced.to_path_buf()
    } else {
        base.parent().unwrap_or_else(|| Path::new(".")).join(referenced)
    }
}

/// Checks that a label map covers exactly the labels of `expected`.
fn check_totality<V>(
    path: &Path,
    field: &str,
    map: &BTreeMap<String, V>,
    expected: &[&str],
) -> Result<(), IoError> {
    for key in map.keys() {
        if !expected.iter().any(|l| l == key) {
            return Err(IoError::Schema {
                path: path.to_path_buf(),
                message: format!("{field} mentions unknown source id {key:?}"),
            });
        }
    }
    for label in expected {
        if !map.contains_key(*label) {
            return Err(IoError::Schema {
                path: path.to_path_buf(),
                message: format!("{field} is missing an entry for source id {label:?}"),
            });
        }
    }
    Ok(())
}

pub fn load_morphism(path: &Path) -> Result<FiniteFlatMorphism, IoError> {
    let text = read_file(path)?;
    let file: MorphismFile = parse(path, &text)?;
    let source = load_graph(&resolve_ref(path, &file.source))?;
    let target = load_graph(&resolve_ref(path, &file.target))?;
    let edge_map = file
        .edge_map
        .into_iter()
        .map(|(k, v)| (k, (v.to, v.flip)))
        .collect();
    FiniteFlatMorphism::from_label_maps(
        source,
        target,
        &file.vertex_map,
        &edge_map,
        &file.vertex_mult,
        &file.edge_mult,
        file.degree,
    )
    .map_err(|e| match e {
        MorphismError::Malformed(message) => IoError::Schema {
            path: path.to_path_buf(),
            message,
        },
        source => IoError::Morphism {
            path: path.to_path_buf(),
            source,
        },
    })
}

pub fn load_covering(path: &Path) -> Result<CoveringDescription, IoError> {
    let text = read_file(path)?;
    let file: CoveringFile = parse(path, &text)?;
    CoveringDescription::new(
        file.components
            .into_iter()
            .map(|c| Component {
                id: c.id,
                genus: c.genus,
            })
            .collect(),
        file.annuli
            .into_iter()
            .map(|a| Annulus {
                id: a.id,
                a: a.a,
                b: a.b,
            })
            .collect(),
        file.ends
            .into_iter()
            .map(|e| End {
                id: e.id,
                component: e.component,
            })
            .collect(),
    )
    .map_err(|source| IoError::Covering {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_covering_morphism(path: &Path) -> Result<CoveringMorphism, IoError> {
    let text = read_file(path)?;
    let file: CoveringMorphismFile = parse(path, &text)?;
    let source = load_covering(&resolve_ref(path, &file.source))?;
    let target = load_covering(&resolve_ref(path, &file.target))?;

    let component_ids: Vec<&str> = source.components().iter().map(|c| c.id.as_str()).collect();
    let annulus_ids: Vec<&str> = source.annuli().iter().map(|a| a.id.as_str()).collect();
    let end_ids: Vec<&str> = source.ends().iter().map(|e| e.id.as_str()).collect();
    check_totality(path, "component_map", &file.component_map, &component_ids)?;
    check_totality(path, "annulus_map", &file.annulus_map, &annulus_ids)?;
    check_totality(path, "end_map", &file.end_map, &end_ids)?;

    let component_map = file
        .component_map
        .iter()
        .map(|(k, v)| {
            (
                k.clone(),
                MapEntry {
                    to: v.to.clone(),
                    mult: v.mult,
                    flip: false,
                },
            )
        })
        .collect();
    let annulus_map = file
        .annulus_map
        .iter()
        .map(|(k, v)| {
            (
                k.clone(),
                MapEntry {
                    to: v.to.clone(),
                    mult: v.mult,
                    flip: v.flip,
                },
            )
        })
        .collect();
    let end_map = file
        .end_map
        .iter()
        .map(|(k, v)| {
            (
                k.clone(),
                MapEntry {
                    to: v.to.clone(),
                    mult: v.mult,
                    flip: false,
                },
            )
        })
        .collect();
    CoveringMorphism::from_label_maps(
        source,
        target,
        &component_map,
        &annulus_map,
        &end_map,
        file.degree,
    )
    .map_err(|source| IoError::Covering {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(name: &str, contents: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("widegraph-io-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn graph_round_trip() {
        let path = write_temp(
            "theta.json",
            r#"{"vertices": ["u", "v"],
                "edges": [{"id": "A", "src": "u", "dst": "v"},
                          {"id": "B", "src": "u", "dst": "v"},
                          {"id": "C", "src": "u", "dst": "v"}]}"#,
        );
        let g = load_graph(&path).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(detect_kind(&path).unwrap(), FileKind::Graph);
    }

    #[test]
    fn malformed_json_reports_position() {
        let path = write_temp("broken.json", "{\n  \"vertices\": [,]\n}");
        match load_graph(&path).unwrap_err() {
            IoError::Json { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected Json error, got {other}"),
        }
    }

    #[test]
    fn unknown_field_is_schema_error() {
        let path = write_temp(
            "extra.json",
            r#"{"vertices": [], "edges": [], "color": "blue"}"#,
        );
        match load_graph(&path).unwrap_err() {
            IoError::Schema { message, .. } => assert!(message.contains("color")),
            other => panic!("expected Schema error, got {other}"),
        }
    }

    #[test]
    fn morphism_totality_is_checked() {
        let loop_path = write_temp(
            "loop.json",
            r#"{"vertices": ["v"], "edges": [{"id": "l", "src": "v", "dst": "v"}]}"#,
        );
        let loop_name = loop_path.file_name().unwrap().to_str().unwrap().to_string();
        let path = write_temp(
            "partial.json",
            &format!(
                r#"{{"source": "{loop_name}", "target": "{loop_name}", "degree": 1,
                     "vertex_map": {{}}, "edge_map": {{"l": {{"to": "l"}}}},
                     "vertex_mult": {{"v": 1}}, "edge_mult": {{"l": 1}}}}"#
            ),
        );
        match load_morphism(&path).unwrap_err() {
            IoError::Schema { message, .. } => {
                assert!(message.contains("vertex_map"));
                assert!(message.contains("missing"));
            }
            other => panic!("expected Schema error, got {other}"),
        }
    }

    #[test]
    fn morphism_loads_and_validates() {
        let loop_path = write_temp(
            "loop2.json",
            r#"{"vertices": ["v"], "edges": [{"id": "l", "src": "v", "dst": "v"}]}"#,
        );
        let loop_name = loop_path.file_name().unwrap().to_str().unwrap().to_string();
        let path = write_temp(
            "squared.json",
            &format!(
                r#"{{"source": "{loop_name}", "target": "{loop_name}", "degree": 2,
                     "vertex_map": {{"v": "v"}}, "edge_map": {{"l": {{"to": "l"}}}},
                     "vertex_mult": {{"v": 2}}, "edge_mult": {{"l": 2}}}}"#
            ),
        );
        let phi = load_morphism(&path).unwrap();
        assert!(phi.validate().is_ok());
        assert_eq!(phi.degree(), 2);
        assert_eq!(detect_kind(&path).unwrap(), FileKind::GraphMorphism);
    }

    #[test]
    fn covering_loads() {
        let path = write_temp(
            "covering.json",
            r#"{"components": [{"id": "P", "genus": 1}],
                "annuli": [{"id": "A", "a": "P", "b": "P"}],
                "ends": [{"id": "E", "component": "P"}]}"#,
        );
        let c = load_covering(&path).unwrap();
        assert_eq!(c.dimension_report().w1, 2);
        assert_eq!(detect_kind(&path).unwrap(), FileKind::Covering);
    }

    #[test]
    fn disconnected_covering_is_validation_failure() {
        let path = write_temp(
            "disconnected.json",
            r#"{"components": [{"id": "P", "genus": 0}, {"id": "Q", "genus": 0}],
                "annuli": [],
                "ends": [{"id": "E", "component": "P"}]}"#,
        );
        let err = load_covering(&path).unwrap_err();
        assert!(err.is_validation_failure());
        assert!(err.to_string().contains("not connected"));
    }
}
