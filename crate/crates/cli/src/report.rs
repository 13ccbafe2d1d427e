//! Machine-readable run reports: JSON documents on stdout by default,
//! flat CSV rows for batch campaigns with `--csv`.

use cohloc_core::entanglement::{TheoremId, TheoremReport};
use cohloc_core::io::MatrixJson;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaPairEntry {
    pub pair: [usize; 2],
    pub lambda1: f64,
    pub lambda2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measures {
    pub d_l1: f64,
    pub d_frob: f64,
    pub d_f: f64,
    pub d_fl: f64,
    /// Qubit-only closed forms; omitted for dim > 2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_l_qubit: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_avg_qubit: Option<f64>,
    pub lambda_pairs: Vec<LambdaPairEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub command: String,
    pub version: String,
    pub input: String,
    pub dim: usize,
    pub measures: Measures,
    /// Concurrence of any purification of the input.
    pub concurrence: f64,
    pub timings_ms: f64,
}

impl CoherenceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d_l1,d_frob,d_f,d_fl,d_l_qubit,min_avg_qubit,concurrence\n");
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            self.measures.d_l1,
            self.measures.d_frob,
            self.measures.d_f,
            self.measures.d_fl,
            self.measures.d_l_qubit.map_or(String::new(), |v| v.to_string()),
            self.measures.min_avg_qubit.map_or(String::new(), |v| v.to_string()),
            self.concurrence,
        ));
        out
    }
}

/// One verified check inside a trial; `check` distinguishes the identity,
/// search, bound, and purification flavors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub check: String,
    #[serde(flatten)]
    pub report: TheoremReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub command: String,
    pub version: String,
    pub theorem: TheoremId,
    pub dims: [usize; 2],
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub passed: bool,
    pub failures: usize,
    pub max_residual: f64,
    /// The failing or worst-residual record.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<TrialRecord>,
    pub timings_ms: f64,
}

pub fn verify_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from("trial,theorem,check,kind,lhs,rhs,residual,passed\n");
    for r in records {
        out.push_str(&format!(
            "{},{:?},{},{:?},{},{},{},{}\n",
            r.trial, r.report.theorem, r.check, r.report.kind, r.report.lhs, r.report.rhs,
            r.report.residual, r.report.passed,
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub objective: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<[usize; 2]>,
    pub closed_min: f64,
    pub closed_max: f64,
    pub sampled_min: f64,
    pub sampled_max: f64,
    pub best_min: f64,
    pub best_max: f64,
    pub reach_error: f64,
    pub bracket_ok: bool,
    pub refine_steps: usize,
    pub samples: usize,
    pub argmin_isometry: MatrixJson,
    pub argmax_isometry: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub command: String,
    pub version: String,
    pub input: String,
    pub dim: usize,
    pub seed: u64,
    pub samples: usize,
    pub m: usize,
    pub searches: Vec<SearchRecord>,
    pub timings_ms: f64,
}

impl OracleReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "objective,pair_k,pair_l,closed_min,closed_max,sampled_min,sampled_max,best_min,best_max,reach_error,bracket_ok,refine_steps\n",
        );
        for s in &self.searches {
            let (k, l) = s.pair.map_or((String::new(), String::new()), |p| {
                (p[0].to_string(), p[1].to_string())
            });
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                s.objective, k, l, s.closed_min, s.closed_max, s.sampled_min, s.sampled_max,
                s.best_min, s.best_max, s.reach_error, s.bracket_ok, s.refine_steps,
            ));
        }
        out
    }
}
