//! Batch front end behind the CLI subcommands.
//!
//! Every command is a pure function from an input stream of line records to
//! an output stream plus a summary; records are independent and processed in
//! input order, and identical inputs with identical options produce
//! byte-identical output (`bench` excepted, since it reports wall time).

mod generate;
mod record;

pub use generate::{sample_with_case, CaseMix};
pub use record::{
    BenchRow, BlockPair, CertResiduals, ErrorRecord, InstanceRecord, ProjectionRecord,
    VerifyFailure,
};

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cone::moreau_certificate;
use crate::error::Error;
use crate::point::{AmbientPoint, ConeDims};
use crate::projector::{classify, general_pair, project_l, CaseTag, ProjectionResult};
use crate::psi::{solve, PsiProblem, SolveMethod, SolveStatus, SolverConfig};

fn write_line<T: serde::Serialize>(out: &mut impl Write, value: &T) -> Result<(), Error> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub struct ProjectSummary {
    pub records: usize,
    pub failures: usize,
}

/// Projects every input record, writing one result or error record per line.
pub fn cmd_project(
    input: impl BufRead,
    mut output: impl Write,
    cfg: &SolverConfig,
) -> Result<ProjectSummary, Error> {
    let mut records = 0;
    let mut failures = 0;
    for (index, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = index + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        records += 1;
        match project_line(trimmed, cfg) {
            Ok(rec) => write_line(&mut output, &rec)?,
            Err((id, error)) => {
                failures += 1;
                write_line(
                    &mut output,
                    &ErrorRecord {
                        id,
                        line: lineno,
                        status: "error".into(),
                        error,
                    },
                )?;
            }
        }
    }
    output.flush()?;
    Ok(ProjectSummary { records, failures })
}

fn project_line(line: &str, cfg: &SolverConfig) -> Result<ProjectionRecord, (Option<String>, String)> {
    let inst: InstanceRecord =
        serde_json::from_str(line).map_err(|e| (None, format!("malformed record: {e}")))?;
    let id = inst.id.clone();
    let point = inst.point().map_err(|e| (id.clone(), e.to_string()))?;
    let result = project_l(&point, cfg).map_err(|e| (id.clone(), e.to_string()))?;
    Ok(projection_record(id, &point, &result))
}

fn projection_record(
    id: Option<String>,
    point: &AmbientPoint,
    result: &ProjectionResult,
) -> ProjectionRecord {
    let cert = &result.certificate;
    ProjectionRecord {
        id,
        p: point.z().len(),
        q: point.w().len(),
        z: point.z().to_vec(),
        w: point.w().to_vec(),
        case: result.case.index(),
        lambda: result.lambda,
        proj_l: BlockPair {
            z: result.proj_l.z().to_vec(),
            w: result.proj_l.w().to_vec(),
        },
        proj_m_neg: BlockPair {
            z: result.proj_m_neg.z().to_vec(),
            w: result.proj_m_neg.w().to_vec(),
        },
        iters: result.iterations(),
        psi_residual: result.psi_residual(),
        cert: CertResiduals {
            decomposition: cert.decomposition_residual,
            orthogonality: cert.orthogonality_residual,
            primal_feasibility: cert.primal_feasibility,
            dual_feasibility: cert.dual_feasibility,
        },
        status: "ok".into(),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GenOptions {
    pub dims: ConeDims,
    pub count: usize,
    pub mix: CaseMix,
    pub seed: u64,
}

/// Writes a deterministic stream of instances; the same options always
/// produce byte-identical output.
pub fn cmd_gen(opts: &GenOptions, mut output: impl Write) -> Result<(), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for index in 0..opts.count {
        let target = opts.mix.target(&mut rng);
        let point = sample_with_case(&mut rng, opts.dims, target)?;
        let (z, w) = point.into_parts();
        let rec = InstanceRecord {
            id: Some(format!("gen-{}-{:06}", opts.seed, index)),
            p: opts.dims.p(),
            q: opts.dims.q(),
            z,
            w,
            expected_case: Some(target.index()),
        };
        write_line(&mut output, &rec)?;
    }
    output.flush()?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub methods: Vec<SolveMethod>,
    pub cfg: SolverConfig,
}

#[derive(Debug, Clone, Default)]
pub struct BenchSummary {
    pub records: usize,
    pub failures: usize,
    pub rows: usize,
    /// Records satisfying Picard's precondition `sum|z| < ||w||`.
    pub picard_applicable: usize,
    /// Largest iteration count among converged rows, per method.
    pub max_iterations: BTreeMap<&'static str, usize>,
}

impl BenchSummary {
    pub fn picard_fraction(&self) -> f64 {
        if self.records == 0 {
            0.0
        } else {
            self.picard_applicable as f64 / self.records as f64
        }
    }
}

/// Runs each requested scalar method on every instance and emits one row per
/// instance and method. Method precondition failures become rows with a
/// status, not errors; only unreadable records count as failures.
pub fn cmd_bench(
    input: impl BufRead,
    mut output: impl Write,
    opts: &BenchOptions,
) -> Result<BenchSummary, Error> {
    let mut summary = BenchSummary::default();
    for (index, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = index + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let parsed: Result<(InstanceRecord, AmbientPoint), String> =
            serde_json::from_str::<InstanceRecord>(trimmed)
                .map_err(|e| format!("malformed record: {e}"))
                .and_then(|inst| {
                    let point = inst.point().map_err(|e| e.to_string())?;
                    Ok((inst, point))
                });
        let (inst, point) = match parsed {
            Ok(pair) => pair,
            Err(error) => {
                summary.failures += 1;
                write_line(
                    &mut output,
                    &ErrorRecord {
                        id: None,
                        line: lineno,
                        status: "error".into(),
                        error,
                    },
                )?;
                continue;
            }
        };
        summary.records += 1;
        let id = inst.id.clone().unwrap_or_else(|| format!("line-{lineno}"));

        let wnorm = point.w_norm();
        let sum_abs: f64 = point.z().iter().map(|v| v.abs()).sum();
        if sum_abs < wnorm {
            summary.picard_applicable += 1;
        }

        if classify(&point) != CaseTag::General {
            // Nothing to solve; one direct projection supplies the certificate.
            let started = Instant::now();
            let cert = project_l(&point, &opts.cfg)
                .ok()
                .map(|r| r.certificate.max_residual());
            let wall = started.elapsed().as_nanos() as u64;
            for &method in &opts.methods {
                summary.rows += 1;
                write_line(
                    &mut output,
                    &BenchRow {
                        id: id.clone(),
                        method: method.as_str().into(),
                        status: "skipped_closed_form".into(),
                        iterations: 0,
                        lambda: 0.0,
                        psi_residual: 0.0,
                        certificate_max_residual: cert,
                        wall_time_ns: wall,
                    },
                )?;
            }
            continue;
        }

        let prob = match PsiProblem::from_point(&point) {
            Ok(p) => p,
            Err(e) => {
                summary.failures += 1;
                write_line(
                    &mut output,
                    &ErrorRecord {
                        id: Some(id),
                        line: lineno,
                        status: "error".into(),
                        error: e.to_string(),
                    },
                )?;
                continue;
            }
        };
        for &method in &opts.methods {
            let mcfg = SolverConfig {
                method,
                ..opts.cfg.clone()
            };
            let started = Instant::now();
            let trace = solve(&prob, &mcfg);
            let wall = started.elapsed().as_nanos() as u64;
            let converged = trace.status == SolveStatus::Converged;
            let cert = if converged {
                let (primal, dual) = general_pair(&point, trace.solution);
                Some(moreau_certificate(&point, &primal, &dual)?.max_residual())
            } else {
                None
            };
            if converged {
                let slot = summary.max_iterations.entry(method.as_str()).or_insert(0);
                *slot = (*slot).max(trace.iterations);
            }
            summary.rows += 1;
            write_line(
                &mut output,
                &BenchRow {
                    id: id.clone(),
                    method: method.as_str().into(),
                    status: trace.status.as_str().into(),
                    iterations: trace.iterations,
                    lambda: if converged { trace.solution } else { 0.0 },
                    psi_residual: if converged { trace.solution_psi.abs() } else { 0.0 },
                    certificate_max_residual: cert,
                    wall_time_ns: wall,
                },
            )?;
        }
    }
    output.flush()?;
    Ok(summary)
}

#[derive(Debug, Clone, Copy)]
pub struct VerifySummary {
    pub records: usize,
    pub failures: usize,
}

/// Recomputes all four certificate residuals of each projection record from
/// scratch and lists every record that misses `tol * (1 + ||a||)`.
pub fn cmd_verify(
    input: impl BufRead,
    mut output: impl Write,
    tol: f64,
) -> Result<VerifySummary, Error> {
    let mut records = 0;
    let mut failures = 0;
    for (index, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = index + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        records += 1;
        match verify_line(trimmed, tol) {
            Ok(None) => {}
            Ok(Some((id, cert))) => {
                failures += 1;
                write_line(
                    &mut output,
                    &VerifyFailure {
                        id,
                        line: lineno,
                        status: "fail".into(),
                        error: None,
                        cert: Some(cert),
                    },
                )?;
            }
            Err(error) => {
                failures += 1;
                write_line(
                    &mut output,
                    &VerifyFailure {
                        id: None,
                        line: lineno,
                        status: "fail".into(),
                        error: Some(error),
                        cert: None,
                    },
                )?;
            }
        }
    }
    output.flush()?;
    Ok(VerifySummary { records, failures })
}

type VerifyOutcome = Option<(Option<String>, CertResiduals)>;

fn verify_line(line: &str, tol: f64) -> Result<VerifyOutcome, String> {
    let rec: ProjectionRecord = match serde_json::from_str(line) {
        Ok(rec) => rec,
        Err(parse_err) => {
            if let Ok(er) = serde_json::from_str::<ErrorRecord>(line) {
                return Err(format!("input is an error record: {}", er.error));
            }
            return Err(format!("malformed record: {parse_err}"));
        }
    };
    if rec.status != "ok" {
        return Err(format!("record status is {:?}", rec.status));
    }
    let original =
        AmbientPoint::new(rec.z.clone(), rec.w.clone()).map_err(|e| e.to_string())?;
    let primal = AmbientPoint::new(rec.proj_l.z.clone(), rec.proj_l.w.clone())
        .map_err(|e| format!("PL: {e}"))?;
    let dual = AmbientPoint::new(rec.proj_m_neg.z.clone(), rec.proj_m_neg.w.clone())
        .map_err(|e| format!("PM_neg: {e}"))?;
    let cert = moreau_certificate(&original, &primal, &dual).map_err(|e| e.to_string())?;
    if cert.passes(tol) {
        Ok(None)
    } else {
        Ok(Some((
            rec.id,
            CertResiduals {
                decomposition: cert.decomposition_residual,
                orthogonality: cert.orthogonality_residual,
                primal_feasibility: cert.primal_feasibility,
                dual_feasibility: cert.dual_feasibility,
            },
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projector::CERT_TOL;

    fn gen_lines(p: usize, q: usize, count: usize, mix: CaseMix, seed: u64) -> Vec<u8> {
        let opts = GenOptions {
            dims: ConeDims::new(p, q).unwrap(),
            count,
            mix,
            seed,
        };
        let mut buf = Vec::new();
        cmd_gen(&opts, &mut buf).unwrap();
        buf
    }

    #[test]
    fn gen_is_deterministic() {
        let a = gen_lines(2, 3, 25, CaseMix::Uniform, 42);
        let b = gen_lines(2, 3, 25, CaseMix::Uniform, 42);
        assert_eq!(a, b);
        let c = gen_lines(2, 3, 25, CaseMix::Uniform, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn gen_case3_only_classifies_case3() {
        let buf = gen_lines(4, 2, 40, CaseMix::Case3, 7);
        for line in String::from_utf8(buf).unwrap().lines() {
            let rec: InstanceRecord = serde_json::from_str(line).unwrap();
            assert_eq!(rec.expected_case, Some(3));
            assert_eq!(classify(&rec.point().unwrap()), CaseTag::General);
        }
    }

    #[test]
    fn project_then_verify_round_trips() {
        let input = gen_lines(3, 2, 30, CaseMix::Uniform, 5);
        let mut projected = Vec::new();
        let summary = cmd_project(input.as_slice(), &mut projected, &SolverConfig::default())
            .unwrap();
        assert_eq!(summary.records, 30);
        assert_eq!(summary.failures, 0);

        let mut report = Vec::new();
        let verify = cmd_verify(projected.as_slice(), &mut report, CERT_TOL).unwrap();
        assert_eq!(verify.records, 30);
        assert_eq!(verify.failures, 0);
        assert!(report.is_empty());
    }

    #[test]
    fn project_reports_malformed_lines() {
        let input = b"{\"p\":1,\"q\":1,\"z\":[0.0],\"w\":[1.0]}\nnot json\n{\"p\":2,\"q\":1,\"z\":[0.0],\"w\":[1.0]}\n";
        let mut out = Vec::new();
        let summary = cmd_project(&input[..], &mut out, &SolverConfig::default()).unwrap();
        assert_eq!(summary.records, 3);
        assert_eq!(summary.failures, 2);
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].contains("\"status\":\"error\""));
        assert!(lines[2].contains("expected length 2"));
    }

    #[test]
    fn verify_flags_perturbed_projection() {
        let input = gen_lines(2, 2, 5, CaseMix::Case3, 9);
        let mut projected = Vec::new();
        cmd_project(input.as_slice(), &mut projected, &SolverConfig::default()).unwrap();
        let mut lines: Vec<String> = String::from_utf8(projected)
            .unwrap()
            .lines()
            .map(String::from)
            .collect();
        let mut rec: ProjectionRecord = serde_json::from_str(&lines[0]).unwrap();
        rec.proj_l.w[0] += 1e-3;
        lines[0] = serde_json::to_string(&rec).unwrap();
        let joined = lines.join("\n");

        let mut report = Vec::new();
        let verify = cmd_verify(joined.as_bytes(), &mut report, CERT_TOL).unwrap();
        assert_eq!(verify.failures, 1);
        let failure: VerifyFailure =
            serde_json::from_str(String::from_utf8(report).unwrap().lines().next().unwrap())
                .unwrap();
        let cert = failure.cert.unwrap();
        assert!(cert.max() > 1e-4);
    }

    #[test]
    fn bench_records_statuses_instead_of_crashing() {
        // One case-1 record and one case-3 record whose z has too much mass
        // for Picard.
        let input = b"{\"p\":2,\"q\":1,\"z\":[2.0,3.0],\"w\":[1.0]}\n{\"p\":2,\"q\":1,\"z\":[0.9,-0.3],\"w\":[1.0]}\n";
        let opts = BenchOptions {
            methods: vec![SolveMethod::Newton, SolveMethod::Picard],
            cfg: SolverConfig::default(),
        };
        let mut out = Vec::new();
        let summary = cmd_bench(&input[..], &mut out, &opts).unwrap();
        assert_eq!(summary.records, 2);
        assert_eq!(summary.rows, 4);
        assert_eq!(summary.picard_applicable, 0);
        let text = String::from_utf8(out).unwrap();
        let rows: Vec<BenchRow> = text
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(rows[0].status, "skipped_closed_form");
        assert_eq!(rows[2].status, "converged");
        assert_eq!(rows[2].method, "newton");
        assert_eq!(rows[3].status, "contraction_violated");
    }
}
