use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::attractor::Parity;
use crate::qstate::{partial_trace, pointer_shannon_entropy, von_neumann_entropy, DensityMatrix};
use crate::{Error, Result};

pub const DEFAULT_DELTA: f64 = 0.01;
pub const DEFAULT_PLATEAU_SLACK: f64 = 1e-6;
/// Below this the classical entropy counts as zero and ratios are undefined.
pub const H_CLASS_FLOOR: f64 = 1e-12;

/// Order in which environment qubits are removed when shrinking the fragment.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "OrderRepr", into = "OrderRepr")]
pub enum TraceOrder {
    /// Remove the last environment qubit first, so `E_L` is qubits `0..L`.
    #[default]
    RightToLeft,
    /// Removal order as environment indices `0..n`; must be a permutation.
    Explicit(Vec<usize>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum OrderRepr {
    Named(NamedOrder),
    Explicit(Vec<usize>),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum NamedOrder {
    RightToLeft,
}

impl From<OrderRepr> for TraceOrder {
    fn from(r: OrderRepr) -> Self {
        match r {
            OrderRepr::Named(NamedOrder::RightToLeft) => TraceOrder::RightToLeft,
            OrderRepr::Explicit(v) => TraceOrder::Explicit(v),
        }
    }
}

impl From<TraceOrder> for OrderRepr {
    fn from(t: TraceOrder) -> Self {
        match t {
            TraceOrder::RightToLeft => OrderRepr::Named(NamedOrder::RightToLeft),
            TraceOrder::Explicit(v) => OrderRepr::Explicit(v),
        }
    }
}

impl TraceOrder {
    pub fn validate(&self, n: usize) -> Result<()> {
        if let TraceOrder::Explicit(p) = self {
            let mut seen = vec![false; n];
            if p.len() != n {
                return Err(Error::invalid("trace_order", format!("{} entries for n = {n}", p.len())));
            }
            for &q in p {
                if q >= n || seen[q] {
                    return Err(Error::invalid("trace_order", "not a permutation of the environment qubits"));
                }
                seen[q] = true;
            }
        }
        Ok(())
    }

    /// Environment indices (`0..n`) that survive in a fragment of size `l`, ascending.
    pub fn kept(&self, n: usize, l: usize) -> Result<Vec<usize>> {
        self.validate(n)?;
        if l > n {
            return Err(Error::invalid("L", format!("{l} exceeds n = {n}")));
        }
        let mut v: Vec<usize> = match self {
            TraceOrder::RightToLeft => (0..l).collect(),
            TraceOrder::Explicit(p) => p[n - l..].to_vec(),
        };
        v.sort_unstable();
        Ok(v)
    }
}

/// Entropies in bits and `I = H_S + H_E - H_SE` for one fragment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MutualInformation {
    pub h_s: f64,
    pub h_e: f64,
    pub h_se: f64,
    pub i: f64,
}

fn s_qubits(rho: &DensityMatrix) -> Vec<usize> {
    (0..rho.layout().k()).collect()
}

fn entropies(rho: &DensityMatrix, h_s: f64, l: usize, order: &TraceOrder) -> Result<MutualInformation> {
    let lay = rho.layout();
    let (k, n) = (lay.k(), lay.n());
    if l == 0 || l > n {
        return Err(Error::invalid("L", format!("{l} is outside 1..={n}")));
    }
    let env: Vec<usize> = order.kept(n, l)?.into_iter().map(|j| lay.env_qubit(j)).collect();
    let h_e = von_neumann_entropy(&partial_trace(rho, &env)?)?;
    let mut se: Vec<usize> = (0..k).collect();
    se.extend_from_slice(&env);
    let h_se = von_neumann_entropy(&partial_trace(rho, &se)?)?;
    Ok(MutualInformation { h_s, h_e, h_se, i: h_s + h_e - h_se })
}

/// `I(S : E_L)` for the fragment of size `l` picked by `order`.
pub fn mutual_information(rho: &DensityMatrix, l: usize, order: &TraceOrder) -> Result<MutualInformation> {
    let h_s = von_neumann_entropy(&partial_trace(rho, &s_qubits(rho))?)?;
    entropies(rho, h_s, l, order)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipRow {
    pub l: usize,
    pub f: f64,
    pub h_s: f64,
    pub h_e: f64,
    pub h_se: f64,
    pub i: f64,
    /// `I / H(S_class)`; `None` when the classical entropy vanishes.
    pub ratio: Option<f64>,
}

/// Partial information plot: one row per fragment size `L = 1..n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipTable {
    pub h_s_class: f64,
    pub trace_order: TraceOrder,
    pub parity: Option<Parity>,
    pub model: String,
    pub rows: Vec<PipRow>,
}

impl PipTable {
    pub fn ratios(&self) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.ratio).collect()
    }

    pub fn has_classical_entropy(&self) -> bool {
        self.h_s_class > H_CLASS_FLOOR
    }
}

/// Builds the full table; `H(S_class)` comes from the output system populations.
pub fn pip(rho: &DensityMatrix, order: &TraceOrder) -> Result<PipTable> {
    let n = rho.layout().n();
    order.validate(n)?;
    let rho_s = partial_trace(rho, &s_qubits(rho))?;
    let h_class = pointer_shannon_entropy(&rho_s);
    let h_s = von_neumann_entropy(&rho_s)?;
    let mut rows = Vec::with_capacity(n);
    for l in 1..=n {
        let mi = entropies(rho, h_s, l, order)?;
        rows.push(PipRow {
            l,
            f: l as f64 / n as f64,
            h_s: mi.h_s,
            h_e: mi.h_e,
            h_se: mi.h_se,
            i: mi.i,
            ratio: (h_class > H_CLASS_FLOOR).then(|| mi.i / h_class),
        });
    }
    Ok(PipTable { h_s_class: h_class, trace_order: order.clone(), parity: None, model: String::new(), rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RedundancyReport {
    pub delta: f64,
    pub f_star: Option<f64>,
    pub r: Option<f64>,
    pub plateau_found: bool,
}

/// First fragment whose information reaches `(1 - delta) H(S_class)`; `R = 1/f*`.
pub fn redundancy(t: &PipTable, delta: f64) -> Result<RedundancyReport> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::invalid("delta", format!("{delta} is outside (0, 0.5)")));
    }
    let hit = if t.has_classical_entropy() {
        t.rows.iter().find(|r| r.i >= (1.0 - delta) * t.h_s_class)
    } else {
        None
    };
    Ok(match hit {
        Some(r) => RedundancyReport { delta, f_star: Some(r.f), r: Some(1.0 / r.f), plateau_found: true },
        None => RedundancyReport { delta, f_star: None, r: None, plateau_found: false },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlateauMargin {
    pub l: usize,
    pub ratio: Option<f64>,
    /// `H_E - H_SE`; nonnegative is sufficient for the plateau.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlateauReport {
    pub holds: bool,
    pub margins: Vec<PlateauMargin>,
}

/// `ratio >= 1 - slack` for every `L` in the range.
pub fn plateau_condition(t: &PipTable, range: RangeInclusive<usize>, slack: f64) -> Result<PlateauReport> {
    let n = t.rows.len();
    if range.is_empty() || *range.start() == 0 || *range.end() > n {
        return Err(Error::invalid("L range", format!("{range:?} is not inside 1..={n}")));
    }
    let margins: Vec<PlateauMargin> = t.rows[range.start() - 1..*range.end()]
        .iter()
        .map(|r| PlateauMargin { l: r.l, ratio: r.ratio, margin: r.h_e - r.h_se })
        .collect();
    let holds = margins.iter().all(|m| m.ratio.is_some_and(|x| x >= 1.0 - slack));
    Ok(PlateauReport { holds, margins })
}
