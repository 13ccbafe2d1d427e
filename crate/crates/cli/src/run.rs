//! Command implementations.
//!
//! Exit-code contract: 0 success, 2 parse/usage error, 3 validation
//! error, 4 verification failure (the report is still emitted).

use std::fs;
use std::path::Path;
use std::time::Instant;

use cohloc_core::coherence::{
    coherence_vectors, d_f, d_fl, d_frob, d_l1, localizable_coherence_qubit,
    min_avg_coherence_qubit, qubit_lambda,
};
use cohloc_core::entanglement::{
    concurrence_from_reduced, theorem2_check, theorem4_check, theorem5_check, TheoremId,
    TheoremReport,
};
use cohloc_core::io::MatrixJson;
use cohloc_core::oracle::{
    closed_extremes, search_extremes, verify_thompson, CoherenceObjective, ThompsonConfig,
};
use cohloc_core::states::{random_density, random_pure};
use cohloc_core::DensityMatrix;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::{
    verify_csv, CoherenceReport, LambdaPairEntry, Measures, OracleReport, SearchRecord,
    TrialRecord, VerifyReport,
};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_VERIFICATION: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self { code: EXIT_VALIDATION, message: message.into() }
    }
}

/// Rendered report body plus the exit code (0 or 4).
pub struct CommandOutput {
    pub body: String,
    pub exit: u8,
}

fn json_body<T: serde::Serialize>(report: &T) -> String {
    let mut body = serde_json::to_string_pretty(report).expect("report serializes");
    body.push('\n');
    body
}

fn load_density(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let parsed: MatrixJson = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("cannot parse {}: {e}", path.display())))?;
    let matrix = parsed
        .to_matrix()
        .map_err(|e| CliError::usage(format!("bad matrix layout in {}: {e}", path.display())))?;
    DensityMatrix::new(&matrix).map_err(|e| CliError::validation(e.to_string()))
}

pub fn coherence(input: &Path, csv: bool) -> Result<CommandOutput, CliError> {
    let start = Instant::now();
    let rho = load_density(input)?;
    let dim = rho.dim();

    let (d_l_qubit, min_avg_qubit) = if dim == 2 {
        (Some(localizable_coherence_qubit(&rho)), Some(min_avg_coherence_qubit(&rho)))
    } else {
        (None, None)
    };
    let vectors = coherence_vectors(&rho);
    let lambda_pairs = if dim == 2 {
        let pair = qubit_lambda(&rho);
        vec![LambdaPairEntry { pair: [0, 1], lambda1: pair.lambda1, lambda2: pair.lambda2 }]
    } else {
        let wmin = vectors.weighted_min();
        let wmax = vectors.weighted_max();
        vectors
            .pairs
            .iter()
            .enumerate()
            .map(|(j, &(k, l))| LambdaPairEntry {
                pair: [k, l],
                lambda1: 0.5 * (wmax[j] + wmin[j]),
                lambda2: 0.5 * (wmax[j] - wmin[j]),
            })
            .collect()
    };

    let report = CoherenceReport {
        command: "coherence".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        input: input.display().to_string(),
        dim,
        measures: Measures {
            d_l1: d_l1(&rho),
            d_frob: d_frob(&rho),
            d_f: d_f(&rho),
            d_fl: d_fl(&rho),
            d_l_qubit,
            min_avg_qubit,
            lambda_pairs,
        },
        concurrence: concurrence_from_reduced(&rho),
        timings_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let body = if csv { report.to_csv() } else { json_body(&report) };
    Ok(CommandOutput { body, exit: 0 })
}

pub struct VerifyArgs {
    pub theorem: u8,
    pub dims: (usize, usize),
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub samples: usize,
    pub m: Option<usize>,
    pub csv: bool,
}

pub fn verify(args: &VerifyArgs) -> Result<CommandOutput, CliError> {
    let (n1, n2) = args.dims;
    let theorem = match args.theorem {
        1 => TheoremId::T1,
        2 => TheoremId::T2,
        4 => TheoremId::T4,
        5 => TheoremId::T5,
        other => {
            return Err(CliError::usage(format!(
                "--theorem must be one of 1, 2, 4, 5 (got {other})"
            )))
        }
    };
    if matches!(theorem, TheoremId::T1 | TheoremId::T2) && n1 != 2 {
        return Err(CliError::usage(format!(
            "theorem {} needs dims 2xB, got {n1}x{n2}",
            args.theorem
        )));
    }
    if args.trials == 0 {
        return Err(CliError::usage("--trials must be >= 1"));
    }

    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut records: Vec<TrialRecord> = Vec::new();
    let push = |records: &mut Vec<TrialRecord>, trial, check: &str, report: TheoremReport| {
        records.push(TrialRecord { trial, check: check.into(), report });
    };

    for trial in 0..args.trials {
        match theorem {
            TheoremId::T1 => {
                let rank = 1 + trial % 2;
                let rho = random_density(2, rank, &mut rng)
                    .map_err(|e| CliError::validation(e.to_string()))?;
                let lambda = qubit_lambda(&rho);
                let identity = TheoremReport::identity(
                    TheoremId::T1,
                    lambda.difference(),
                    d_l1(&rho),
                    args.tolerance,
                );
                push(&mut records, trial, "identity", identity);
                if args.samples > 0 {
                    let config = ThompsonConfig {
                        m_values: args.m.map(|m| vec![m]).unwrap_or_default(),
                        n_samples: args.samples,
                        ..ThompsonConfig::default()
                    };
                    let thompson = verify_thompson(&rho, &config, &mut rng)
                        .map_err(|e| CliError::validation(e.to_string()))?;
                    push(&mut records, trial, "thompson", thompson);
                }
            }
            TheoremId::T2 => {
                let psi = random_pure(n1 * n2, &mut rng)
                    .with_split((n1, n2))
                    .map_err(|e| CliError::validation(e.to_string()))?;
                let report = theorem2_check(&psi, args.tolerance)
                    .map_err(|e| CliError::validation(e.to_string()))?;
                push(&mut records, trial, "identity", report);
            }
            TheoremId::T4 => {
                let psi = random_pure(n1 * n2, &mut rng)
                    .with_split((n1, n2))
                    .map_err(|e| CliError::validation(e.to_string()))?;
                let report = theorem4_check(&psi, args.tolerance)
                    .map_err(|e| CliError::validation(e.to_string()))?;
                push(&mut records, trial, "identity", report);
            }
            TheoremId::T5 => {
                let dim = n1 * n2;
                let rank = 1 + trial % dim;
                let rho = random_density(dim, rank, &mut rng)
                    .map_err(|e| CliError::validation(e.to_string()))?;
                let report = theorem5_check(&rho, (n1, n2), args.tolerance)
                    .map_err(|e| CliError::validation(e.to_string()))?;
                push(&mut records, trial, "bound", report.inequality);
                push(&mut records, trial, "purification", report.purification);
            }
            TheoremId::T3 => unreachable!("not reachable from the CLI"),
        }
    }

    let failures = records.iter().filter(|r| !r.report.passed).count();
    let worst = records
        .iter()
        .max_by(|a, b| a.report.residual.partial_cmp(&b.report.residual).unwrap())
        .cloned();
    let max_residual = worst.as_ref().map_or(0.0, |w| w.report.residual);
    let report = VerifyReport {
        command: "verify".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        theorem,
        dims: [n1, n2],
        trials: args.trials,
        seed: args.seed,
        tolerance: args.tolerance,
        samples: (args.samples > 0).then_some(args.samples),
        m: args.m,
        passed: failures == 0,
        failures,
        max_residual,
        worst,
        timings_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let body = if args.csv { verify_csv(&records) } else { json_body(&report) };
    Ok(CommandOutput { body, exit: if failures == 0 { 0 } else { EXIT_VERIFICATION } })
}

pub struct OracleArgs {
    pub samples: usize,
    pub m: Option<usize>,
    pub seed: u64,
    pub csv: bool,
}

pub fn oracle(input: &Path, args: &OracleArgs) -> Result<CommandOutput, CliError> {
    let start = Instant::now();
    let rho = load_density(input)?;
    let dim = rho.dim();
    if dim < 2 {
        return Err(CliError::validation("oracle needs dim >= 2"));
    }
    let rank = rho.rank();
    let m = args.m.unwrap_or(2 * rank);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    // One search per objective: the single qubit objective at dim 2,
    // every pair subspace plus the shared-ensemble vector otherwise.
    let mut objectives: Vec<(String, Option<[usize; 2]>, CoherenceObjective)> = Vec::new();
    if dim == 2 {
        objectives.push(("qubit_l1".into(), Some([0, 1]), CoherenceObjective::QubitL1));
    } else {
        for (j, proj) in cohloc_core::coherence::pair_projectors(dim)
            .map_err(|e| CliError::validation(e.to_string()))?
            .iter()
            .enumerate()
        {
            let (k, l) = proj.pair();
            objectives.push(("subspace".into(), Some([k, l]), CoherenceObjective::Subspace(j)));
        }
        objectives.push(("weighted_vector".into(), None, CoherenceObjective::WeightedVector));
    }

    let mut searches = Vec::with_capacity(objectives.len());
    for (name, pair, objective) in objectives {
        let res = search_extremes(&rho, objective, m, args.samples, &mut rng)
            .map_err(|e| CliError::validation(e.to_string()))?;
        let (closed_min, closed_max) =
            closed_extremes(&rho, objective).map_err(|e| CliError::validation(e.to_string()))?;
        searches.push(SearchRecord {
            objective: name,
            pair,
            closed_min,
            closed_max,
            sampled_min: res.sampled_min,
            sampled_max: res.sampled_max,
            best_min: res.best_min,
            best_max: res.best_max,
            reach_error: res.reach_error(),
            bracket_ok: res.bracket_ok(cohloc_core::tol::BOUND_SLACK),
            refine_steps: res.refine_steps,
            samples: res.samples,
            argmin_isometry: MatrixJson::from_matrix(&res.argmin_isometry),
            argmax_isometry: MatrixJson::from_matrix(&res.argmax_isometry),
        });
    }

    let report = OracleReport {
        command: "oracle".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        input: input.display().to_string(),
        dim,
        seed: args.seed,
        samples: args.samples,
        m,
        searches,
        timings_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let body = if args.csv { report.to_csv() } else { json_body(&report) };
    Ok(CommandOutput { body, exit: 0 })
}
