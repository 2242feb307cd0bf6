//! Interaction digraphs: which qubit controls which, and with what weight.

use serde::{Deserialize, Serialize};

use crate::qstate::RegisterLayout;
use crate::{Error, Result};

const PROB_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub control: usize,
    pub target: usize,
}

impl Edge {
    pub fn new(control: usize, target: usize) -> Self {
        Edge { control, target }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InteractionDigraph {
    layout: RegisterLayout,
    edges: Vec<Edge>,
    probabilities: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassTag {
    Koenig,
    EnvStronglyConnected,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigraphClass {
    pub tag: ClassTag,
    pub e_binding_count: usize,
}

impl InteractionDigraph {
    /// Validates edges and probabilities. `None` means uniform weights.
    pub fn new(layout: RegisterLayout, edges: Vec<Edge>, probabilities: Option<Vec<f64>>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::invalid("edges", "digraph has no edges"));
        }
        for (i, e) in edges.iter().enumerate() {
            layout.check_qubit(e.control)?;
            layout.check_qubit(e.target)?;
            if e.control == e.target {
                return Err(Error::invalid("edges", format!("self-loop on qubit {}", e.control)));
            }
            if layout.is_system(e.target) {
                return Err(Error::invalid(
                    "edges",
                    format!("system qubit {} cannot be a target", e.target),
                ));
            }
            if edges[..i].contains(e) {
                return Err(Error::invalid(
                    "edges",
                    format!("duplicate edge {} -> {}", e.control, e.target),
                ));
            }
        }
        let probabilities = match probabilities {
            None => vec![1.0 / edges.len() as f64; edges.len()],
            Some(p) => {
                if p.len() != edges.len() {
                    return Err(Error::invalid(
                        "probabilities",
                        format!("{} weights for {} edges", p.len(), edges.len()),
                    ));
                }
                if p.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
                    return Err(Error::invalid("probabilities", "every weight must be positive"));
                }
                let s: f64 = p.iter().sum();
                if (s - 1.0).abs() > PROB_TOL {
                    return Err(Error::invalid("probabilities", format!("weights sum to {s}")));
                }
                p
            }
        };
        Ok(InteractionDigraph { layout, edges, probabilities })
    }

    /// Every system qubit controls every environment qubit, uniform weights.
    pub fn koenig(layout: RegisterLayout) -> Result<Self> {
        if layout.n() == 0 {
            return Err(Error::invalid("n", "at least one environment qubit is required"));
        }
        let edges = (0..layout.k())
            .flat_map(|s| (0..layout.n()).map(move |j| (s, j)))
            .map(|(s, j)| Edge::new(s, layout.env_qubit(j)))
            .collect();
        Self::new(layout, edges, None)
    }

    /// [`Self::koenig`] plus every ordered pair of environment qubits.
    pub fn complete_env(layout: RegisterLayout) -> Result<Self> {
        let g = Self::koenig(layout)?;
        let n = layout.n();
        let extra: Vec<Edge> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .map(|(a, b)| Edge::new(layout.env_qubit(a), layout.env_qubit(b)))
            .collect();
        g.with_env_bindings(&extra, None)
    }

    /// Adds environment-environment edges; weights become uniform unless given.
    pub fn with_env_bindings(&self, extra: &[Edge], probabilities: Option<Vec<f64>>) -> Result<Self> {
        for e in extra {
            if self.layout.is_system(e.control) || self.layout.is_system(e.target) {
                return Err(Error::invalid(
                    "extra",
                    format!("{} -> {} is not an environment binding", e.control, e.target),
                ));
            }
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(extra);
        Self::new(self.layout, edges, probabilities)
    }

    pub fn with_probabilities(&self, probabilities: Vec<f64>) -> Result<Self> {
        Self::new(self.layout, self.edges.clone(), Some(probabilities))
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn env_bindings(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(|e| !self.layout.is_system(e.control))
    }

    /// Every system qubit controls every environment qubit.
    pub fn has_full_system_fanout(&self) -> bool {
        let l = self.layout;
        (0..l.k()).all(|s| (0..l.n()).all(|j| self.edges.contains(&Edge::new(s, l.env_qubit(j)))))
    }

    pub fn classify(&self) -> DigraphClass {
        let l = self.layout;
        let n = l.n();
        let mut adj = vec![Vec::new(); n];
        let mut radj = vec![Vec::new(); n];
        for e in self.env_bindings() {
            let (a, b) = (e.control - l.k(), e.target - l.k());
            adj[a].push(b);
            radj[b].push(a);
        }
        let e_binding_count = adj.iter().map(Vec::len).sum();
        let tag = if e_binding_count == 0 {
            ClassTag::Koenig
        } else if reaches_all(&adj) && reaches_all(&radj) {
            ClassTag::EnvStronglyConnected
        } else {
            ClassTag::Other
        };
        DigraphClass { tag, e_binding_count }
    }
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}
