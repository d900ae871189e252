//! JSON and DOT formats for lattices and digraphs.
//!
//! Lattices: `{"n": 5, "covers": [[0,1], ...], "labels": {"1": "a", ...}}`.
//! Digraphs: `{"v": 3, "arcs": [[0,0], [0,1], ...], "mdfips": [[1,3], ...]}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::digraph::Digraph;
use crate::duality::Mdfip;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Labels>,
}

/// Element labels, either as a map from element to label or as a full list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Labels {
    Map(BTreeMap<String, String>),
    List(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphJson {
    pub v: usize,
    pub arcs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mdfips: Option<Vec<[usize; 2]>>,
}

impl LatticeJson {
    pub fn from_lattice(l: &FiniteLattice) -> Self {
        let labels = l
            .labels()
            .map(|names| Labels::Map(names.iter().enumerate().map(|(x, s)| (x.to_string(), s.clone())).collect()));
        LatticeJson {
            n: l.len(),
            covers: l.cover_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            labels,
        }
    }

    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        let covers: Vec<_> = self.covers.iter().map(|&[a, b]| (a, b)).collect();
        let l = FiniteLattice::from_covers(self.n, &covers)?;
        let names = match &self.labels {
            None => return Ok(l),
            Some(Labels::List(names)) => names.clone(),
            Some(Labels::Map(map)) => {
                let mut names: Vec<String> = (0..self.n).map(|x| x.to_string()).collect();
                for (key, label) in map {
                    let x: usize = key
                        .parse()
                        .map_err(|_| Error::Parse(format!("label key `{key}` is not an element")))?;
                    if x >= self.n {
                        return Err(Error::OutOfRange { index: x, size: self.n });
                    }
                    names[x] = label.clone();
                }
                names
            }
        };
        l.with_labels(names)
    }
}

/// A digraph read from JSON, with the vertices whose loop had to be added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedDigraph {
    pub digraph: Digraph,
    pub added_loops: Vec<usize>,
}

impl DigraphJson {
    /// The writer always lists loops explicitly.
    pub fn from_digraph(g: &Digraph) -> Self {
        DigraphJson {
            v: g.vertex_count(),
            arcs: g.arcs().into_iter().map(|(x, y)| [x, y]).collect(),
            mdfips: g.labels().map(|ls| ls.iter().map(|m| [m.a, m.b]).collect()),
        }
    }

    pub fn to_digraph(&self) -> Result<LoadedDigraph> {
        let arcs: Vec<_> = self.arcs.iter().map(|&[x, y]| (x, y)).collect();
        let exact = Digraph::from_arcs_exact(self.v, &arcs)?;
        let added_loops: Vec<usize> = exact.vertices().filter(|&x| !exact.has_arc(x, x)).collect();
        let mut digraph = Digraph::from_arcs(self.v, &arcs)?;
        if let Some(ms) = &self.mdfips {
            if ms.len() != self.v {
                return Err(Error::Parse(format!(
                    "{} mdfips given for {} vertices",
                    ms.len(),
                    self.v
                )));
            }
            digraph = digraph.with_labels(ms.iter().map(|&[a, b]| Mdfip::new(a, b)).collect());
        }
        Ok(LoadedDigraph { digraph, added_loops })
    }
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice> {
    serde_json::from_str::<LatticeJson>(text)?.to_lattice()
}

pub fn parse_digraph(text: &str) -> Result<LoadedDigraph> {
    serde_json::from_str::<DigraphJson>(text)?.to_digraph()
}

/// Either kind of input, told apart by its `n` or `v` key.
#[derive(Debug, Clone)]
pub enum Structure {
    Lattice(FiniteLattice),
    Digraph(LoadedDigraph),
}

pub fn parse_structure(text: &str) -> Result<Structure> {
    let value: Value = serde_json::from_str(text)?;
    let has = |k: &str| value.get(k).is_some();
    match (has("n"), has("v")) {
        (true, false) => Ok(Structure::Lattice(
            serde_json::from_value::<LatticeJson>(value)?.to_lattice()?,
        )),
        (false, true) => Ok(Structure::Digraph(
            serde_json::from_value::<DigraphJson>(value)?.to_digraph()?,
        )),
        _ => Err(Error::Parse(
            "expected a lattice (key \"n\") or a digraph (key \"v\")".into(),
        )),
    }
}

pub fn lattice_to_json(l: &FiniteLattice) -> String {
    serde_json::to_string(&LatticeJson::from_lattice(l)).expect("lattice JSON serializes")
}

pub fn lattice_to_json_pretty(l: &FiniteLattice) -> String {
    serde_json::to_string_pretty(&LatticeJson::from_lattice(l)).expect("lattice JSON serializes")
}

pub fn digraph_to_json(g: &Digraph) -> String {
    serde_json::to_string(&DigraphJson::from_digraph(g)).expect("digraph JSON serializes")
}

pub fn digraph_to_json_pretty(g: &Digraph) -> String {
    serde_json::to_string_pretty(&DigraphJson::from_digraph(g)).expect("digraph JSON serializes")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering without loops; a pair of opposite arcs becomes one
/// `dir=both` edge.
pub fn digraph_to_dot(g: &Digraph) -> String {
    let mut out = String::from("digraph G {\n");
    for x in g.vertices() {
        writeln!(out, "  {x} [label={}];", quote(&g.name(x))).unwrap();
    }
    for (x, y) in g.non_loop_arcs() {
        if g.has_arc(y, x) {
            if x < y {
                writeln!(out, "  {x} -> {y} [dir=both];").unwrap();
            }
        } else {
            writeln!(out, "  {x} -> {y};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram, drawn bottom to top.
pub fn lattice_to_dot(l: &FiniteLattice) -> String {
    let mut out = String::from("digraph L {\n  rankdir=BT;\n  edge [arrowhead=none];\n");
    for x in l.elements() {
        writeln!(out, "  {x} [label={}];", quote(&l.name(x))).unwrap();
    }
    for (a, b) in l.cover_pairs() {
        writeln!(out, "  {a} -> {b};").unwrap();
    }
    out.push_str("}\n");
    out
}
