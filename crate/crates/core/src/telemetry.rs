//! Per-stage telemetry records, serialized as JSON lines.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: String,
    pub n: usize,
    pub m: usize,
    pub cycles_emitted: usize,
    pub leftover_edges: usize,
    /// The bound the stage is measured against (pieces or edges, per stage).
    pub budget: f64,
    pub violated: bool,
}

impl StageRecord {
    pub fn new(stage: &str, n: usize, m: usize) -> Self {
        StageRecord {
            stage: stage.to_string(),
            n,
            m,
            cycles_emitted: 0,
            leftover_edges: 0,
            budget: 0.0,
            violated: false,
        }
    }

    /// Sets the budget and flags a violation when `measured` exceeds it.
    pub fn against(mut self, measured: f64, budget: f64) -> Self {
        self.budget = budget;
        self.violated = measured > budget;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    /// Outer iterations of the pipeline (degree-reduction rounds, ladder rounds).
    pub rounds: usize,
    pub stages: Vec<StageRecord>,
}

impl RunTrace {
    pub fn push(&mut self, rec: StageRecord) {
        self.stages.push(rec);
    }

    pub fn extend(&mut self, other: RunTrace) {
        self.stages.extend(other.stages);
    }

    pub fn violations(&self) -> usize {
        self.stages.iter().filter(|s| s.violated).count()
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.stages {
            out.push_str(&serde_json::to_string(s).expect("stage record serializes"));
            out.push('\n');
        }
        out
    }
}
