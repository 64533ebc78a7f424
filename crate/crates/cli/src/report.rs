//! Report documents. Field order, condition order and expression printing
//! are fixed, so identical input yields identical bytes in both renderings.

use std::fmt::Write as _;

use gcrf_core::cohomology::{CohomologyTable, SpectralTables};
use gcrf_core::scalar::Patch;
use gcrf_core::structures::{CheckReport, Condition};
use serde::Serialize;

pub const TOOL: &str = concat!("gcrf ", env!("CARGO_PKG_VERSION"));

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct WitnessEntry {
    pub args: Vec<String>,
    pub value: String,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct ConditionEntry {
    pub id: String,
    pub description: String,
    pub verdict: String,
    /// Failing argument tuples found; at most a few are listed as witnesses.
    pub failures: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessEntry>,
}

impl ConditionEntry {
    pub fn from_condition(c: &Condition, patch: &Patch) -> Self {
        Self {
            id: c.id.clone(),
            description: c.description.clone(),
            verdict: c.verdict.as_str().to_string(),
            failures: c.failures,
            witnesses: c
                .witnesses
                .iter()
                .map(|w| WitnessEntry {
                    args: w.args.iter().map(|a| a.display(patch).to_string()).collect(),
                    value: w.value.display(patch).to_string(),
                })
                .collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub max_degree: u32,
    /// `dim χ^k` with coefficients of degree `≤ max_degree`.
    pub dims: Vec<usize>,
    /// Rank of `d_π` on `χ^k`.
    pub ranks: Vec<usize>,
    pub betti: Vec<usize>,
}

impl From<&CohomologyTable> for BettiTable {
    fn from(t: &CohomologyTable) -> Self {
        Self { max_degree: t.max_deg, dims: t.dims.clone(), ranks: t.ranks.clone(), betti: t.betti.clone() }
    }
}

/// `e1[i][j]` is `dim E₁^{ij}` with `i` the `P`-degree and `j` the `Q`-degree.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct SpectralEntry {
    pub q_rank: usize,
    pub p_rank: usize,
    pub max_degree: u32,
    pub e1: Vec<Vec<usize>>,
    pub e2: Vec<Vec<usize>>,
    pub e3: Vec<Vec<usize>>,
    /// `(i, j, rank)` of the map induced by `σ′` on `E₂^{ij}`.
    pub sigma_prime_ranks: Vec<(usize, usize, usize)>,
    pub ann_p_dims: Vec<usize>,
}

impl From<&SpectralTables> for SpectralEntry {
    fn from(t: &SpectralTables) -> Self {
        Self {
            q_rank: t.q_rank,
            p_rank: t.p_rank,
            max_degree: t.max_deg,
            e1: t.e1.clone(),
            e2: t.e2.clone(),
            e3: t.e3.clone(),
            sigma_prime_ranks: t.sigma_prime_ranks.iter().map(|(&(i, j), &r)| (i, j, r)).collect(),
            ann_p_dims: t.ann_p_dims.clone(),
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq, Default)]
pub struct Tables {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<BettiTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralEntry>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct ReportDocument {
    pub tool: String,
    pub command: String,
    pub instance: String,
    pub digest: String,
    /// `pass`, `fail` or `error`.
    pub verdict: String,
    /// Conditions deciding the verdict.
    pub conditions: Vec<ConditionEntry>,
    /// Cross-checks and related properties that do not affect the verdict.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub informational: Vec<ConditionEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables: Option<Tables>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>, instance: impl Into<String>, digest: impl Into<String>) -> Self {
        Self {
            tool: TOOL.to_string(),
            command: command.into(),
            instance: instance.into(),
            digest: digest.into(),
            verdict: "pass".into(),
            conditions: Vec::new(),
            informational: Vec::new(),
            notes: Vec::new(),
            tables: None,
            error: None,
        }
    }

    pub fn add(&mut self, r: &CheckReport, patch: &Patch) {
        self.conditions.extend(r.conditions.iter().map(|c| ConditionEntry::from_condition(c, patch)));
        self.notes.extend(r.notes.iter().cloned());
        self.settle();
    }

    pub fn add_informational(&mut self, r: &CheckReport, patch: &Patch) {
        self.informational.extend(r.conditions.iter().map(|c| ConditionEntry::from_condition(c, patch)));
        self.notes.extend(r.notes.iter().cloned());
    }

    pub fn set_error(&mut self, msg: impl Into<String>) {
        self.error = Some(msg.into());
        self.verdict = "error".into();
    }

    fn settle(&mut self) {
        if self.error.is_none() {
            let ok = self.conditions.iter().all(ConditionEntry::passed);
            self.verdict = if ok { "pass" } else { "fail" }.into();
        }
    }

    pub fn condition(&self, id: &str) -> Option<&ConditionEntry> {
        self.conditions.iter().chain(&self.informational).find(|c| c.id == id)
    }

    /// 0 on pass, 1 on fail, 2 on error.
    pub fn exit_code(&self) -> i32 {
        match self.verdict.as_str() {
            "pass" => 0,
            "fail" => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} | {} | {} | {}", self.tool, self.command, self.instance, self.digest);
        let _ = writeln!(s, "verdict: {}", self.verdict);
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        write_conditions(&mut s, &self.conditions);
        if !self.informational.is_empty() {
            let _ = writeln!(s, "informational:");
            write_conditions(&mut s, &self.informational);
        }
        if let Some(t) = &self.tables {
            if let Some(b) = &t.cohomology {
                let _ = writeln!(s, "truncated Poisson cohomology, coefficient degree <= {}:", b.max_degree);
                let _ = writeln!(s, "  {:>3} {:>8} {:>8} {:>8}", "k", "dim", "rank d", "H^k");
                for k in 0..b.dims.len() {
                    let _ = writeln!(s, "  {:>3} {:>8} {:>8} {:>8}", k, b.dims[k], b.ranks[k], b.betti[k]);
                }
            }
            if let Some(sp) = &t.spectral {
                let _ = writeln!(s, "spectral terms, rank Q = {}, rank P = {}, degree <= {}:", sp.q_rank, sp.p_rank, sp.max_degree);
                for (label, tab) in [("E1", &sp.e1), ("E2", &sp.e2), ("E3", &sp.e3)] {
                    let _ = writeln!(s, "  {label} (rows: P-degree, columns: Q-degree)");
                    for row in tab {
                        let cells: Vec<String> = row.iter().map(|d| format!("{d:>6}")).collect();
                        let _ = writeln!(s, "   {}", cells.join(""));
                    }
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

fn write_conditions(s: &mut String, cs: &[ConditionEntry]) {
    for c in cs {
        let _ = writeln!(s, "  {:<4}  {:<36} {}", c.verdict, c.id, c.description);
        for w in &c.witnesses {
            let _ = writeln!(s, "          at ({}): {}", w.args.join(", "), w.value);
        }
        if c.failures > c.witnesses.len() {
            let _ = writeln!(s, "          ... {} failing tuples in total", c.failures);
        }
    }
}
