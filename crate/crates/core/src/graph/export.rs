use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicInteger;
use crate::error::{Error, Result};
use crate::index::bit_string;

use super::CayleyGraph;

/// Version of the JSON export layout.
pub const EXPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExportFormat {
    Dot,
    Graphml,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "graphml" => Ok(ExportFormat::Graphml),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::Precondition(format!("unknown export format {s:?}"))),
        }
    }
}

/// `Full` keeps every pair (and the loops when `f(0) != 0`); `Modified`
/// drops the weight-0 edges and all loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExportVariant {
    Full,
    Modified,
}

impl FromStr for ExportVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ExportVariant::Full),
            "modified" => Ok(ExportVariant::Modified),
            _ => Err(Error::Precondition(format!("unknown export variant {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportNode {
    pub id: usize,
    /// The vertex as a bit string, `x1` first.
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportEdge {
    pub source: usize,
    pub target: usize,
    /// Additive weight `f(source + target)`.
    pub weight: u32,
    /// The multiplicative weight `zeta^weight` in the power basis, e.g. `-z`.
    pub zeta_power: String,
}

/// A materialized Cayley graph, ready to be written out. Nodes are in table
/// order and edges in lexicographic `(source, target)` order with
/// `source <= target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub schema_version: u32,
    pub n: u32,
    pub k: u32,
    pub variant: ExportVariant,
    pub nodes: Vec<ExportNode>,
    pub edges: Vec<ExportEdge>,
}

impl CayleyGraph {
    pub fn to_export(&self, variant: ExportVariant) -> Result<GraphExport> {
        let n = self.f.n();
        self.limits.check_export(n)?;
        let k = self.f.k();
        let powers: Vec<String> = (0..self.q())
            .map(|a| CyclotomicInteger::root_unchecked(a, k).to_string())
            .collect();
        let nodes = (0..self.order())
            .map(|id| ExportNode {
                id,
                label: bit_string(id, n),
            })
            .collect();
        let mut edges = Vec::new();
        for source in 0..self.order() {
            for target in source..self.order() {
                let weight = self.weight(source, target);
                let keep = match variant {
                    ExportVariant::Full => source != target || weight != 0,
                    ExportVariant::Modified => source != target && weight != 0,
                };
                if keep {
                    edges.push(ExportEdge {
                        source,
                        target,
                        weight,
                        zeta_power: powers[weight as usize].clone(),
                    });
                }
            }
        }
        Ok(GraphExport {
            schema_version: EXPORT_SCHEMA_VERSION,
            n,
            k,
            variant,
            nodes,
            edges,
        })
    }

    pub fn export(&self, format: ExportFormat, variant: ExportVariant) -> Result<String> {
        let graph = self.to_export(variant)?;
        Ok(match format {
            ExportFormat::Dot => graph.to_dot(),
            ExportFormat::Graphml => graph.to_graphml(),
            ExportFormat::Json => graph.to_json(),
        })
    }
}

impl GraphExport {
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let name = match self.variant {
            ExportVariant::Full => "cayley",
            ExportVariant::Modified => "cayley_modified",
        };
        writeln!(out, "graph {name} {{").unwrap();
        writeln!(out, "  // n={} k={}", self.n, self.k).unwrap();
        for node in &self.nodes {
            writeln!(out, "  {} [label=\"{}\"];", node.id, node.label).unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "  {} -- {} [weight={}, zeta_power=\"{}\"];",
                e.source, e.target, e.weight, e.zeta_power
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_graphml(&self) -> String {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
        out.push_str("  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n");
        out.push_str("  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n");
        out.push_str(
            "  <key id=\"zeta_power\" for=\"edge\" attr.name=\"zeta_power\" attr.type=\"string\"/>\n",
        );
        writeln!(out, "  <graph id=\"G\" edgedefault=\"undirected\">").unwrap();
        for node in &self.nodes {
            writeln!(
                out,
                "    <node id=\"n{}\"><data key=\"label\">{}</data></node>",
                node.id, node.label
            )
            .unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "    <edge source=\"n{}\" target=\"n{}\"><data key=\"weight\">{}</data><data key=\"zeta_power\">{}</data></edge>",
                e.source, e.target, e.weight, e.zeta_power
            )
            .unwrap();
        }
        out.push_str("  </graph>\n</graphml>\n");
        out
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let graph: GraphExport = serde_json::from_str(text).map_err(|e| Error::Format {
            line: e.line(),
            msg: e.to_string(),
        })?;
        if graph.schema_version != EXPORT_SCHEMA_VERSION {
            return Err(Error::Format {
                line: 1,
                msg: format!("unsupported schema_version {}", graph.schema_version),
            });
        }
        Ok(graph)
    }
}
