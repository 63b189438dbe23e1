//! JSON ledger of an illumination run. Rationals are stored as strings.

use diffuse_core::regions::{Condition, IlluminationResult};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerDocument {
    pub n: usize,
    pub source: [String; 2],
    pub bound_k: usize,
    pub terminated_at: usize,
    pub steps: Vec<StepEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepEntry {
    pub k: usize,
    pub mu: usize,
    pub lambda: usize,
    pub critical: bool,
    /// `"A"`, `"B"` or `"none"`.
    pub condition: String,
    pub windows: Vec<WindowEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowEntry {
    /// Index of the reflex vertex.
    pub a: usize,
    pub b_edge: usize,
    pub b_param: String,
    pub saturated: bool,
}

impl LedgerDocument {
    pub fn from_result(res: &IlluminationResult) -> Self {
        let steps = res
            .ledger
            .steps
            .iter()
            .map(|st| {
                let windows = res.windows_per_step[st.k]
                    .iter()
                    .zip(&st.saturated)
                    .map(|(w, &saturated)| WindowEntry {
                        a: w.a_index,
                        b_edge: w.b.edge.0,
                        b_param: w.b.param.to_string(),
                        saturated,
                    })
                    .collect();
                StepEntry {
                    k: st.k,
                    mu: st.mu,
                    lambda: st.lambda,
                    critical: st.critical,
                    condition: match st.condition {
                        Some(Condition::A) => "A",
                        Some(Condition::B) => "B",
                        None => "none",
                    }
                    .to_string(),
                    windows,
                }
            })
            .collect();
        LedgerDocument {
            n: res.polygon.n(),
            source: [res.source.x.to_string(), res.source.y.to_string()],
            bound_k: res.bound_k,
            terminated_at: res.terminated_at,
            steps,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("ledger serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
