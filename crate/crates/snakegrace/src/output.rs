//! Output documents: tuple text, JSON, and DOT renderings of labelled
//! graphs plus their verification reports.
//!
//! Snake documents use the schema
//! `{cycles: [{length, labels, cut_index}], string, m, classification,
//! alpha_boundary}` where `cut_index` is the position of the cut shared
//! with the previous cycle (null on the first). Graphs that are not snakes
//! (the graft construction) use `{vertices, edges, labels, ...}` instead.

use serde::{Deserialize, Serialize};

use crate::error::TopologyError;
use crate::topology::{recover_string, LabelledGraph};
use crate::verifier::{Classification, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Tuple,
    Json,
    Dot,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tuple" => Ok(OutputFormat::Tuple),
            "json" => Ok(OutputFormat::Json),
            "dot" => Ok(OutputFormat::Dot),
            other => Err(format!("unknown format {other:?} (tuple|json|dot)")),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CycleDoc {
    pub length: usize,
    pub labels: Vec<u64>,
    pub cut_index: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SnakeDoc {
    pub cycles: Vec<CycleDoc>,
    pub string: Vec<u64>,
    pub m: u64,
    pub classification: Classification,
    pub alpha_boundary: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<u64>,
    pub m: u64,
    pub classification: Classification,
    pub alpha_boundary: Option<u64>,
}

/// The report view pinned by the external interface: m, classification,
/// alpha_boundary, violations.
pub fn report_json(report: &VerificationReport) -> serde_json::Value {
    serde_json::json!({
        "m": report.m,
        "classification": report.classification,
        "alpha_boundary": report.alpha_boundary,
        "violations": report.violations,
    })
}

/// A labelled graph plus its report, renderable in any output format.
pub struct OutputDocument {
    pub graph: LabelledGraph,
    pub report: VerificationReport,
}

impl OutputDocument {
    pub fn new(graph: LabelledGraph, report: VerificationReport) -> Self {
        OutputDocument { graph, report }
    }

    fn is_snake(&self) -> bool {
        !self.graph.cycles().is_empty() && recover_string(&self.graph).is_ok()
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, TopologyError> {
        match format {
            OutputFormat::Tuple => {
                let tuples = crate::topology::emit_tuple_form(&self.graph)?;
                Ok(format!(
                    "{tuples}\n{}",
                    serde_json::to_string(&report_json(&self.report)).unwrap()
                ))
            }
            OutputFormat::Json => {
                let value = self.to_json()?;
                Ok(serde_json::to_string_pretty(&value).unwrap())
            }
            OutputFormat::Dot => Ok(self.to_dot()),
        }
    }

    pub fn to_json(&self) -> Result<serde_json::Value, TopologyError> {
        if self.is_snake() {
            let string = recover_string(&self.graph)?;
            let cut_of = |i: usize| -> Option<usize> {
                if i == 0 {
                    return None;
                }
                let cut = self.graph.cut_vertices()[i - 1];
                self.graph.cycles()[i].iter().position(|&v| v == cut)
            };
            let cycles = self
                .graph
                .cycles()
                .iter()
                .enumerate()
                .map(|(i, ids)| CycleDoc {
                    length: ids.len(),
                    labels: ids.iter().map(|&v| self.graph.label(v).unwrap()).collect(),
                    cut_index: cut_of(i),
                })
                .collect();
            let doc = SnakeDoc {
                cycles,
                string,
                m: self.report.m,
                classification: self.report.classification,
                alpha_boundary: self.report.alpha_boundary,
            };
            Ok(serde_json::to_value(doc).unwrap())
        } else {
            let doc = GraphDoc {
                vertices: self.graph.vertex_count(),
                edges: self.graph.edges().to_vec(),
                labels: (0..self.graph.vertex_count())
                    .map(|v| self.graph.label(v).unwrap_or(0))
                    .collect(),
                m: self.report.m,
                classification: self.report.classification,
                alpha_boundary: self.report.alpha_boundary,
            };
            Ok(serde_json::to_value(doc).unwrap())
        }
    }

    /// Undirected DOT graph, vertices named by their labels, edges
    /// annotated with induced labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("graph snake {\n");
        out.push_str(&format!(
            "  // m = {}, classification = {}\n",
            self.report.m, self.report.classification
        ));
        for &(u, v) in self.graph.edges() {
            let (fu, fv) = (
                self.graph.label(u).unwrap_or(0),
                self.graph.label(v).unwrap_or(0),
            );
            out.push_str(&format!(
                "  \"{fu}\" -- \"{fv}\" [label={}];\n",
                fu.abs_diff(fv)
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Rebuilds a labelled graph from either JSON document form.
pub fn graph_from_json(text: &str) -> Result<LabelledGraph, TopologyError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| TopologyError::MalformedTuple(format!("invalid JSON: {e}")))?;
    if value.get("cycles").is_some() {
        let doc: SnakeDoc = serde_json::from_value(value)
            .map_err(|e| TopologyError::MalformedTuple(format!("invalid snake document: {e}")))?;
        snake_from_doc(&doc)
    } else if value.get("edges").is_some() {
        let doc: GraphDoc = serde_json::from_value(value)
            .map_err(|e| TopologyError::MalformedTuple(format!("invalid graph document: {e}")))?;
        let mut g = LabelledGraph::from_edges(doc.vertices, &doc.edges);
        if doc.labels.len() != doc.vertices {
            return Err(TopologyError::MalformedTuple(
                "label list length does not match vertex count".into(),
            ));
        }
        for (v, &l) in doc.labels.iter().enumerate() {
            g.set_label(v, l);
        }
        Ok(g)
    } else {
        Err(TopologyError::MalformedTuple(
            "JSON document has neither \"cycles\" nor \"edges\"".into(),
        ))
    }
}

fn snake_from_doc(doc: &SnakeDoc) -> Result<LabelledGraph, TopologyError> {
    let mut joins = Vec::new();
    for (i, cyc) in doc.cycles.iter().enumerate() {
        if cyc.labels.len() != cyc.length {
            return Err(TopologyError::MalformedTuple(format!(
                "cycle {} declares length {} but lists {} labels",
                i + 1,
                cyc.length,
                cyc.labels.len()
            )));
        }
        if i == 0 {
            continue;
        }
        let entry = cyc.cut_index.ok_or_else(|| {
            TopologyError::CutMismatch(format!("cycle {} is missing cut_index", i + 1))
        })?;
        let cut_label = *cyc.labels.get(entry).ok_or_else(|| {
            TopologyError::CutMismatch(format!("cycle {} cut_index out of range", i + 1))
        })?;
        let exit = doc.cycles[i - 1]
            .labels
            .iter()
            .position(|&l| l == cut_label)
            .ok_or_else(|| {
                TopologyError::CutMismatch(format!(
                    "cycle {} cut label {cut_label} not present in cycle {i}",
                    i + 1
                ))
            })?;
        joins.push((exit, entry));
    }
    let labels: Vec<Vec<u64>> = doc.cycles.iter().map(|c| c.labels.clone()).collect();
    LabelledGraph::from_cycle_labels(&labels, &joins)
}
