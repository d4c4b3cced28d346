//! JSON wire formats and CSV emission.
//!
//! Object files carry a `type` tag:
//! - `{"type":"graph","n":..,"edges":[[u,v],..]}`
//! - `{"type":"hypergraph","n":..,"edges":[{"verts":[..],"w":..},..]}`
//! - `{"type":"homsum","d":..,"n":..,"terms":[{"verts":[..],"q":..},..]}`
//! - `{"type":"partition","blocks":[[..],..],"vprime":[..]?}`
//! - `{"type":"support","d":..,"n":..,"tuples":[[..],..]}`
//!
//! CSV floats are printed with 17 significant digits so a round trip is
//! lossless.

use serde::{Deserialize, Serialize};

use crate::constructions::SupportSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::homsum::HomogeneousSum;
use crate::hypergraph::WeightedHypergraph;
use crate::spectral::SpectralReport;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedEdgeJson {
    pub verts: Vec<u32>,
    pub w: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub verts: Vec<u32>,
    pub q: f64,
}

/// Any object the CLI reads or writes, distinguished by the `type` tag.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ObjectJson {
    Graph {
        n: usize,
        edges: Vec<(u32, u32)>,
    },
    Hypergraph {
        n: usize,
        edges: Vec<WeightedEdgeJson>,
    },
    Homsum {
        d: usize,
        n: usize,
        terms: Vec<TermJson>,
    },
    Partition {
        blocks: Vec<Vec<u32>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        vprime: Option<Vec<u32>>,
    },
    Support {
        d: usize,
        n: usize,
        tuples: Vec<Vec<u32>>,
    },
}

impl From<&Graph> for ObjectJson {
    fn from(g: &Graph) -> Self {
        ObjectJson::Graph {
            n: g.n_vertices(),
            edges: g.edges().to_vec(),
        }
    }
}

impl From<&WeightedHypergraph> for ObjectJson {
    fn from(h: &WeightedHypergraph) -> Self {
        ObjectJson::Hypergraph {
            n: h.n_vertices(),
            edges: h
                .edges()
                .iter()
                .map(|(verts, w)| WeightedEdgeJson {
                    verts: verts.clone(),
                    w: *w,
                })
                .collect(),
        }
    }
}

impl From<&HomogeneousSum> for ObjectJson {
    fn from(z: &HomogeneousSum) -> Self {
        ObjectJson::Homsum {
            d: z.order(),
            n: z.n_vertices(),
            terms: z
                .terms()
                .iter()
                .map(|(verts, q)| TermJson {
                    verts: verts.clone(),
                    q: *q,
                })
                .collect(),
        }
    }
}

impl From<&SupportSet> for ObjectJson {
    fn from(s: &SupportSet) -> Self {
        ObjectJson::Support {
            d: s.d,
            n: s.n,
            tuples: s.tuples.clone(),
        }
    }
}

impl ObjectJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("malformed object JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("object serialization")
    }

    pub fn into_graph(self) -> Result<Graph> {
        match self {
            ObjectJson::Graph { n, edges } => Graph::new(n, &edges),
            other => Err(Error::InvalidInput(format!(
                "expected a graph object, found {}",
                other.kind()
            ))),
        }
    }

    pub fn into_hypergraph(self) -> Result<WeightedHypergraph> {
        match self {
            ObjectJson::Hypergraph { n, edges } => {
                let edges: Vec<(Vec<u32>, f64)> =
                    edges.into_iter().map(|e| (e.verts, e.w)).collect();
                WeightedHypergraph::new(n, &edges)
            }
            other => Err(Error::InvalidInput(format!(
                "expected a hypergraph object, found {}",
                other.kind()
            ))),
        }
    }

    pub fn into_homsum(self) -> Result<HomogeneousSum> {
        match self {
            ObjectJson::Homsum { d, n, terms } => {
                let terms: Vec<(Vec<u32>, f64)> =
                    terms.into_iter().map(|t| (t.verts, t.q)).collect();
                HomogeneousSum::from_terms(d, n, &terms)
            }
            // A graph is a d = 2, q = 1 sum.
            ObjectJson::Graph { n, edges } => {
                Ok(HomogeneousSum::from_graph(&Graph::new(n, &edges)?))
            }
            other => Err(Error::InvalidInput(format!(
                "expected a homsum object, found {}",
                other.kind()
            ))),
        }
    }

    pub fn into_partition(self, n: usize) -> Result<(Partition, Option<Vec<u32>>)> {
        match self {
            ObjectJson::Partition { blocks, vprime } => Ok((Partition::new(n, blocks)?, vprime)),
            other => Err(Error::InvalidInput(format!(
                "expected a partition object, found {}",
                other.kind()
            ))),
        }
    }

    pub fn into_support(self) -> Result<SupportSet> {
        match self {
            ObjectJson::Support { d, n, tuples } => Ok(SupportSet { d, n, tuples }),
            ObjectJson::Homsum { d, n, terms } => {
                let terms: Vec<(Vec<u32>, f64)> =
                    terms.into_iter().map(|t| (t.verts, t.q)).collect();
                let z = HomogeneousSum::from_terms(d, n, &terms)?;
                Ok(crate::combdim::homsum_support(&z))
            }
            ObjectJson::Graph { n, edges } => {
                let g = Graph::new(n, &edges)?;
                Ok(crate::combdim::homsum_support(&HomogeneousSum::from_graph(
                    &g,
                )))
            }
            other => Err(Error::InvalidInput(format!(
                "expected a support object, found {}",
                other.kind()
            ))),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ObjectJson::Graph { .. } => "graph",
            ObjectJson::Hypergraph { .. } => "hypergraph",
            ObjectJson::Homsum { .. } => "homsum",
            ObjectJson::Partition { .. } => "partition",
            ObjectJson::Support { .. } => "support",
        }
    }
}

/// Format a float with 17 significant digits (lossless round trip).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// SpectralReport CSV: index, eigenvalue, group_value, multiplicity.
pub fn spectral_csv(report: &SpectralReport) -> String {
    let mut out = String::from("index,eigenvalue,group_value,multiplicity\n");
    let mut group_idx = 0;
    let mut within = 0;
    for (i, ev) in report.eigenvalues.iter().enumerate() {
        let (gv, mult) = report.groups[group_idx];
        out.push_str(&format!(
            "{},{},{},{}\n",
            i,
            fmt_f64(*ev),
            fmt_f64(gv),
            mult
        ));
        within += 1;
        if within == mult {
            group_idx += 1;
            within = 0;
        }
    }
    out
}
