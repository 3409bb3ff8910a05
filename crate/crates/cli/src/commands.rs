//! One function per subcommand. Each builds a serializable report and a
//! text rendering of the same numbers, and returns the process exit code:
//! 0 for success, 1 for a mathematical validation failure, 2 for input or
//! parse errors (handled by the caller).

use crate::render::{render_checks, Check, MatrixReport};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;
use widegraph_core::covering::DimensionReport;
use widegraph_core::io::{self, FileKind, IoError};
use widegraph_core::{
    is_scaled_identity, Chain1, CoveringMorphism, Cycle, Graph, Matrix, MorphismError, Rational,
    TieBreak,
};

pub enum CommandError {
    /// Input could not be read or parsed (exit 2).
    Input(String),
    /// The data is well formed but violates a mathematical axiom (exit 1).
    Validation(String),
}

impl From<IoError> for CommandError {
    fn from(e: IoError) -> Self {
        if e.is_validation_failure() {
            CommandError::Validation(e.to_string())
        } else {
            CommandError::Input(e.to_string())
        }
    }
}

impl From<widegraph_core::GraphError> for CommandError {
    fn from(e: widegraph_core::GraphError) -> Self {
        CommandError::Input(e.to_string())
    }
}

impl From<MorphismError> for CommandError {
    fn from(e: MorphismError) -> Self {
        match e {
            MorphismError::Invalid(report) => CommandError::Validation(report.to_string()),
            other => CommandError::Input(other.to_string()),
        }
    }
}

pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub exit_code: i32,
}

fn output<T: Serialize>(report: &T, text: String, exit_code: i32) -> Result<Output, CommandError> {
    Ok(Output {
        text,
        json: serde_json::to_value(report)
            .map_err(|e| CommandError::Input(format!("cannot serialize report: {e}")))?,
        exit_code,
    })
}

// ---------------------------------------------------------------------------
// validate

#[derive(Serialize)]
struct ValidateReport {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    annuli: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ends: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<u64>,
    status: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<String>,
}

impl ValidateReport {
    fn new(kind: &'static str) -> Self {
        ValidateReport {
            kind,
            vertices: None,
            edges: None,
            components: None,
            annuli: None,
            ends: None,
            degree: None,
            status: "ok",
            violations: Vec::new(),
        }
    }

    fn render(&self) -> String {
        let mut out = format!("kind: {}\n", self.kind);
        if let Some(v) = self.vertices {
            out.push_str(&format!("vertices: {v}\n"));
        }
        if let Some(e) = self.edges {
            out.push_str(&format!("edges: {e}\n"));
        }
        if let Some(c) = self.components {
            out.push_str(&format!("components: {c}\n"));
        }
        if let Some(a) = self.annuli {
            out.push_str(&format!("annuli: {a}\n"));
        }
        if let Some(e) = self.ends {
            out.push_str(&format!("ends: {e}\n"));
        }
        if let Some(d) = self.degree {
            out.push_str(&format!("degree: {d}\n"));
        }
        out.push_str(&format!("status: {}\n", self.status));
        if !self.violations.is_empty() {
            out.push_str("violations:\n");
            for v in &self.violations {
                out.push_str(&format!("  - {v}\n"));
            }
        }
        out
    }
}

pub fn validate(input: &Path) -> Result<Output, CommandError> {
    let kind = io::detect_kind(input)?;
    let mut report = ValidateReport::new(kind.name());
    match kind {
        FileKind::Graph => {
            let g = io::load_graph(input)?;
            report.vertices = Some(g.vertex_count());
            report.edges = Some(g.edge_count());
        }
        FileKind::Covering => {
            let c = io::load_covering(input)?;
            report.components = Some(c.components().len());
            report.annuli = Some(c.annuli().len());
            report.ends = Some(c.ends().len());
        }
        FileKind::GraphMorphism => {
            let phi = io::load_morphism(input)?;
            report.degree = Some(phi.degree());
            let validation = phi.validate();
            if !validation.is_ok() {
                report.status = "invalid";
                report.violations = validation
                    .violations()
                    .iter()
                    .map(|v| v.to_string())
                    .collect();
            }
        }
        FileKind::CoveringMorphism => {
            let f = io::load_covering_morphism(input)?;
            report.degree = Some(f.degree());
            if let Err(e) = f.build_graph_morphism() {
                report.status = "invalid";
                report.violations = vec![e.to_string()];
            }
        }
    }
    let code = if report.status == "ok" { 0 } else { 1 };
    let text = report.render();
    output(&report, text, code)
}

// ---------------------------------------------------------------------------
// homology

#[derive(Serialize)]
struct HomologyReport {
    vertices: usize,
    edges: usize,
    connected_components: usize,
    betti1: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    h1_basis: Option<MatrixReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h1_cohom_representatives: Option<MatrixReport>,
}

pub fn homology(input: &Path, with_matrices: bool) -> Result<Output, CommandError> {
    let g = io::load_graph(input)?;
    let edge_labels: Vec<String> = g.edges().map(|e| g.edge_label(e).to_string()).collect();
    let report = HomologyReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        connected_components: g.connected_components(),
        betti1: g.betti1(),
        h1_basis: with_matrices.then(|| {
            MatrixReport::with_row_labels(g.h1_basis().matrix(), edge_labels.clone())
        }),
        h1_cohom_representatives: with_matrices.then(|| {
            MatrixReport::with_row_labels(g.h1_cohom_classes().matrix(), edge_labels.clone())
        }),
    };
    let mut text = format!(
        "vertices: {}\nedges: {}\nconnected components: {}\nbetti1: {}\n",
        report.vertices, report.edges, report.connected_components, report.betti1
    );
    if let Some(m) = &report.h1_basis {
        m.render("h1 basis (rows = edges, columns = cycles)", &mut text);
    }
    if let Some(m) = &report.h1_cohom_representatives {
        m.render(
            "h1 cohomology representatives (rows = edges, columns = classes)",
            &mut text,
        );
    }
    output(&report, text, 0)
}

// ---------------------------------------------------------------------------
// dims

#[derive(Serialize)]
struct GraphSize {
    vertices: usize,
    edges: usize,
    betti1: usize,
}

#[derive(Serialize)]
struct DimsReport {
    components: usize,
    annuli: usize,
    ends: usize,
    gamma: GraphSize,
    gamma_prime: GraphSize,
    gamma_tilde: GraphSize,
    dimensions: DimensionReport,
}

fn graph_size(g: &Graph) -> GraphSize {
    GraphSize {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        betti1: g.betti1(),
    }
}

pub fn dims(input: &Path) -> Result<Output, CommandError> {
    let c = io::load_covering(input)?;
    let triple = c.build_graphs();
    let report = DimsReport {
        components: c.components().len(),
        annuli: c.annuli().len(),
        ends: c.ends().len(),
        gamma: graph_size(&triple.gamma),
        gamma_prime: graph_size(&triple.gamma_prime),
        gamma_tilde: graph_size(&triple.gamma_tilde),
        dimensions: c.dimension_report(),
    };
    let d = &report.dimensions;
    let text = format!(
        "components: {}\nannuli: {}\nends: {}\n\
         gamma: {} vertices, {} edges, betti1 {}\n\
         gamma': {} vertices, {} edges, betti1 {}\n\
         gamma~: {} vertices, {} edges, betti1 {}\n\
         h0: {}\n\
         w0 (weight 0, H^1 of dual graph): {}\n\
         w1 (weight 1, sum of 2g over components): {}\n\
         w2 (weight 2, H_1 of extended dual graph, twist (-1)): {}\n\
         h1 of special fiber (w0 + w1): {}\n\
         h1 total (w0 + w1 + w2): {}\n",
        report.components,
        report.annuli,
        report.ends,
        report.gamma.vertices,
        report.gamma.edges,
        report.gamma.betti1,
        report.gamma_prime.vertices,
        report.gamma_prime.edges,
        report.gamma_prime.betti1,
        report.gamma_tilde.vertices,
        report.gamma_tilde.edges,
        report.gamma_tilde.betti1,
        d.h0,
        d.w0,
        d.w1,
        d.w2,
        d.h1_special,
        d.h1_total
    );
    output(&report, text, 0)
}

// ---------------------------------------------------------------------------
// push / pull

#[derive(Serialize)]
struct TransferReport {
    degree: u64,
    source_h1_dim: usize,
    target_h1_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    h1: Option<MatrixReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h1_cohom: Option<MatrixReport>,
}

pub fn push(input: &Path, with_matrices: bool) -> Result<Output, CommandError> {
    transfer(input, with_matrices, true)
}

pub fn pull(input: &Path, with_matrices: bool) -> Result<Output, CommandError> {
    transfer(input, with_matrices, false)
}

fn transfer(input: &Path, with_matrices: bool, forward: bool) -> Result<Output, CommandError> {
    let phi = io::load_morphism(input)?;
    let (h1, h1_cohom) = if forward {
        (phi.pushforward_h1()?, phi.pushforward_h1_cohom()?)
    } else {
        (phi.pullback_h1()?, phi.pullback_h1_cohom()?)
    };
    let direction = if forward { "pushforward" } else { "pullback" };
    let report = TransferReport {
        degree: phi.degree(),
        source_h1_dim: phi.source().betti1(),
        target_h1_dim: phi.target().betti1(),
        h1: with_matrices.then(|| MatrixReport::new(&h1)),
        h1_cohom: with_matrices.then(|| MatrixReport::new(&h1_cohom)),
    };
    let mut text = format!(
        "degree: {}\nsource h1 dimension: {}\ntarget h1 dimension: {}\n",
        report.degree, report.source_h1_dim, report.target_h1_dim
    );
    if let Some(m) = &report.h1 {
        m.render(&format!("{direction} on H_1"), &mut text);
    }
    if let Some(m) = &report.h1_cohom {
        m.render(&format!("{direction} on H^1"), &mut text);
    }
    output(&report, text, 0)
}

// ---------------------------------------------------------------------------
// lift

#[derive(Serialize)]
struct LiftEntry {
    degree: u64,
    darts: Vec<String>,
}

#[derive(Serialize)]
struct LiftReport {
    degree: u64,
    base_cycle: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    lift_count: usize,
    lifts: Vec<LiftEntry>,
    degree_sum: u64,
    summed_chain: BTreeMap<String, String>,
    matches_closed_form_pullback: bool,
}

pub fn lift(input: &Path, cycle: &str, seed: Option<u64>) -> Result<Output, CommandError> {
    let phi = io::load_morphism(input)?;
    let labels: Vec<&str> = cycle
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .collect();
    let base = Cycle::from_dart_labels(phi.target(), &labels)?;
    let tie_break = match seed {
        Some(s) => TieBreak::Seeded(s),
        None => TieBreak::Deterministic,
    };
    let lifts = phi.lift_cycles(&base, tie_break)?;
    let k = base.len();
    let mut summed = Chain1::zero(phi.source());
    let mut entries = Vec::new();
    for lifted in &lifts {
        let chain = phi.source().cycle_to_chain(lifted)?;
        for e in phi.source().edges() {
            summed.add_dart(phi.source().forward_dart(e), &chain.edge_coeff(e).clone())?;
        }
        entries.push(LiftEntry {
            degree: (lifted.len() / k) as u64,
            darts: lifted.dart_labels(phi.source()),
        });
    }
    let closed_form = phi.pullback_chain(&base)?;
    let zero = widegraph_core::integer(0);
    let mut summed_chain = BTreeMap::new();
    for e in phi.source().edges() {
        let coeff = summed.edge_coeff(e);
        if *coeff != zero {
            summed_chain.insert(phi.source().edge_label(e).to_string(), coeff.to_string());
        }
    }
    let report = LiftReport {
        degree: phi.degree(),
        base_cycle: labels.iter().map(|s| s.to_string()).collect(),
        seed,
        lift_count: lifts.len(),
        degree_sum: entries.iter().map(|e| e.degree).sum(),
        lifts: entries,
        summed_chain,
        matches_closed_form_pullback: summed == closed_form,
    };
    let mut text = format!(
        "degree: {}\nbase cycle: {}\n",
        report.degree,
        report.base_cycle.join(",")
    );
    if let Some(s) = report.seed {
        text.push_str(&format!("seed: {s}\n"));
    }
    text.push_str(&format!("lifts: {}\n", report.lift_count));
    for (i, entry) in report.lifts.iter().enumerate() {
        text.push_str(&format!(
            "lift {}: degree {}, darts {}\n",
            i + 1,
            entry.degree,
            entry.darts.join(",")
        ));
    }
    text.push_str(&format!("sum of lift degrees: {}\n", report.degree_sum));
    text.push_str("summed chain:\n");
    if report.summed_chain.is_empty() {
        text.push_str("  (zero chain)\n");
    }
    for (edge, coeff) in &report.summed_chain {
        text.push_str(&format!("  {edge}: {coeff}\n"));
    }
    text.push_str(&format!(
        "matches closed-form pullback: {}\n",
        if report.matches_closed_form_pullback {
            "yes"
        } else {
            "NO"
        }
    ));
    let code = if report.matches_closed_form_pullback { 0 } else { 1 };
    output(&report, text, code)
}

// ---------------------------------------------------------------------------
// morphism-check

#[derive(Serialize)]
struct MorphismCheckReport {
    degree: u64,
    status: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source_h1_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target_h1_dim: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pushforward_h1: Option<MatrixReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pullback_h1: Option<MatrixReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pushforward_h1_cohom: Option<MatrixReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pullback_h1_cohom: Option<MatrixReport>,
}

pub fn morphism_check(input: &Path, with_matrices: bool) -> Result<Output, CommandError> {
    let phi = io::load_morphism(input)?;
    let validation = phi.validate();
    if !validation.is_ok() {
        let report = MorphismCheckReport {
            degree: phi.degree(),
            status: "invalid",
            violations: validation
                .violations()
                .iter()
                .map(|v| v.to_string())
                .collect(),
            source_h1_dim: None,
            target_h1_dim: None,
            checks: Vec::new(),
            pushforward_h1: None,
            pullback_h1: None,
            pushforward_h1_cohom: None,
            pullback_h1_cohom: None,
        };
        let mut text = format!("degree: {}\nstatus: invalid\nviolations:\n", report.degree);
        for v in &report.violations {
            text.push_str(&format!("  - {v}\n"));
        }
        return output(&report, text, 1);
    }

    let push = phi.pushforward_h1()?;
    let pull = phi.pullback_h1()?;
    let push_cohom = phi.pushforward_h1_cohom()?;
    let pull_cohom = phi.pullback_h1_cohom()?;
    let (gram_source, gram_target) = phi.gram_matrices()?;
    let n = Rational::from_integer(phi.degree().into());
    let checks = vec![
        Check {
            name: "push_pull_h1_is_n_id",
            ok: is_scaled_identity(&matmul(&push, &pull)?, &n),
        },
        Check {
            name: "push_pull_h1_cohom_is_n_id",
            ok: is_scaled_identity(&matmul(&push_cohom, &pull_cohom)?, &n),
        },
        Check {
            name: "adjoint_gram_push",
            ok: matmul(&gram_target, &push)? == matmul(&pull_cohom.transpose(), &gram_source)?,
        },
        Check {
            name: "adjoint_gram_pull",
            ok: matmul(&gram_source, &pull)? == matmul(&push_cohom.transpose(), &gram_target)?,
        },
    ];
    let all_ok = checks.iter().all(|c| c.ok);
    let report = MorphismCheckReport {
        degree: phi.degree(),
        status: if all_ok { "ok" } else { "failed" },
        violations: Vec::new(),
        source_h1_dim: Some(phi.source().betti1()),
        target_h1_dim: Some(phi.target().betti1()),
        checks,
        pushforward_h1: with_matrices.then(|| MatrixReport::new(&push)),
        pullback_h1: with_matrices.then(|| MatrixReport::new(&pull)),
        pushforward_h1_cohom: with_matrices.then(|| MatrixReport::new(&push_cohom)),
        pullback_h1_cohom: with_matrices.then(|| MatrixReport::new(&pull_cohom)),
    };
    let mut text = format!(
        "degree: {}\nstatus: {}\nsource h1 dimension: {}\ntarget h1 dimension: {}\n",
        report.degree,
        report.status,
        report.source_h1_dim.unwrap(),
        report.target_h1_dim.unwrap()
    );
    render_checks(&report.checks, &mut text);
    if let Some(m) = &report.pushforward_h1 {
        m.render("pushforward on H_1", &mut text);
    }
    if let Some(m) = &report.pullback_h1 {
        m.render("pullback on H_1", &mut text);
    }
    if let Some(m) = &report.pushforward_h1_cohom {
        m.render("pushforward on H^1", &mut text);
    }
    if let Some(m) = &report.pullback_h1_cohom {
        m.render("pullback on H^1", &mut text);
    }
    let code = if all_ok { 0 } else { 1 };
    output(&report, text, code)
}

fn matmul(a: &Matrix, b: &Matrix) -> Result<Matrix, CommandError> {
    a.mul(b)
        .map_err(|e| CommandError::Input(format!("internal matrix mismatch: {e}")))
}

// ---------------------------------------------------------------------------
// functorial-check

#[derive(Serialize)]
struct FunctorialCheckReport {
    degree: u64,
    status: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source_dimensions: Option<DimensionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target_dimensions: Option<DimensionReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight0_pushforward: Option<MatrixReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight0_pullback: Option<MatrixReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight2_pushforward: Option<MatrixReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight2_pullback: Option<MatrixReport>,
}

pub fn functorial_check(input: &Path, with_matrices: bool) -> Result<Output, CommandError> {
    let f: CoveringMorphism = io::load_covering_morphism(input)?;
    match f.functorial_report() {
        Err(widegraph_core::CoveringError::InvalidGraphMorphism { level, report }) => {
            let out = FunctorialCheckReport {
                degree: f.degree(),
                status: "invalid",
                violations: report
                    .violations()
                    .iter()
                    .map(|v| format!("[{level}] {v}"))
                    .collect(),
                source_dimensions: None,
                target_dimensions: None,
                checks: Vec::new(),
                weight0_pushforward: None,
                weight0_pullback: None,
                weight2_pushforward: None,
                weight2_pullback: None,
            };
            let mut text = format!("degree: {}\nstatus: invalid\nviolations:\n", out.degree);
            for v in &out.violations {
                text.push_str(&format!("  - {v}\n"));
            }
            output(&out, text, 1)
        }
        Err(e) => Err(CommandError::Input(e.to_string())),
        Ok(report) => {
            let checks = vec![
                Check {
                    name: "weight0_push_pull_is_n_id",
                    ok: report.weight0_push_pull_is_n_id,
                },
                Check {
                    name: "weight2_push_pull_is_n_id",
                    ok: report.weight2_push_pull_is_n_id,
                },
            ];
            let all_ok = checks.iter().all(|c| c.ok);
            let out = FunctorialCheckReport {
                degree: report.degree,
                status: if all_ok { "ok" } else { "failed" },
                violations: Vec::new(),
                source_dimensions: Some(report.source_dims),
                target_dimensions: Some(report.target_dims),
                checks,
                weight0_pushforward: with_matrices
                    .then(|| MatrixReport::new(&report.weight0_pushforward)),
                weight0_pullback: with_matrices
                    .then(|| MatrixReport::new(&report.weight0_pullback)),
                weight2_pushforward: with_matrices
                    .then(|| MatrixReport::new(&report.weight2_pushforward)),
                weight2_pullback: with_matrices
                    .then(|| MatrixReport::new(&report.weight2_pullback)),
            };
            let mut text = format!("degree: {}\nstatus: {}\n", out.degree, out.status);
            let sd = out.source_dimensions.as_ref().unwrap();
            let td = out.target_dimensions.as_ref().unwrap();
            text.push_str(&format!(
                "source dimensions: h0={} w0={} w1={} w2={} total={}\n",
                sd.h0, sd.w0, sd.w1, sd.w2, sd.h1_total
            ));
            text.push_str(&format!(
                "target dimensions: h0={} w0={} w1={} w2={} total={}\n",
                td.h0, td.w0, td.w1, td.w2, td.h1_total
            ));
            render_checks(&out.checks, &mut text);
            if let Some(m) = &out.weight0_pushforward {
                m.render("weight 0 pushforward on H^1(gamma)", &mut text);
            }
            if let Some(m) = &out.weight0_pullback {
                m.render("weight 0 pullback on H^1(gamma)", &mut text);
            }
            if let Some(m) = &out.weight2_pushforward {
                m.render("weight 2 pushforward on H_1(gamma~)", &mut text);
            }
            if let Some(m) = &out.weight2_pullback {
                m.render("weight 2 pullback on H_1(gamma~)", &mut text);
            }
            let code = if all_ok { 0 } else { 1 };
            output(&out, text, code)
        }
    }
}

