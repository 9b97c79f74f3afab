use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use ssplab::cartier::{cm_entries, igusa_separability_scan, CmReport, SeparabilityReport};
use ssplab::lauricella::{cm_via_hypergeometric, normalization_constant, truncated_series, SupportSummary};
use ssplab::locus::{check_expectation, verify_multiplicity_one, ExpectationReport, LocusReport};
use ssplab::pde::{verify_annihilation, verify_contiguity, ContiguityReport, PdeReport};
use ssplab::PrimeModulus;

use crate::config::{ConfigError, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Invalid,
    Incomplete,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Invalid => 2,
            Status::Incomplete => 3,
        }
    }
}

#[derive(Debug)]
pub enum CmdError {
    Config(ConfigError),
    /// A computation that should always succeed returned an error.
    Computation(String),
}

impl From<ConfigError> for CmdError {
    fn from(e: ConfigError) -> Self {
        CmdError::Config(e)
    }
}

impl From<ssplab::Error> for CmdError {
    fn from(e: ssplab::Error) -> Self {
        CmdError::Computation(e.to_string())
    }
}

/// A finished run in every output format.
pub struct Outcome {
    pub status: Status,
    pub json: Value,
    pub csv: String,
    pub text: String,
}

fn envelope<T: Serialize>(command: &str, pass: bool, results: &T) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "pass": pass,
        "results": results,
    })
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn per_prime<T: Send>(
    primes: &[PrimeModulus],
    f: impl Fn(PrimeModulus) -> ssplab::Result<T> + Sync,
) -> Result<Vec<T>, CmdError> {
    Ok(primes.par_iter().map(|&p| f(p)).collect::<ssplab::Result<Vec<T>>>()?)
}

fn pass_status(pass: bool) -> Status {
    if pass {
        Status::Ok
    } else {
        Status::Failed
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn hasse(max_p: u64) -> Result<Outcome, CmdError> {
    if max_p < 3 {
        return Err(ConfigError(format!("--max-p {max_p} leaves no odd primes")).into());
    }
    let r: SeparabilityReport = igusa_separability_scan(max_p);
    let text = r
        .primes
        .iter()
        .map(|e| {
            let extra = e.repeated_factor.as_deref().map(|f| format!(" repeated factor {f}")).unwrap_or_default();
            format!("p={} degree={} {}{extra}\n", e.p, e.degree, if e.separable { "separable" } else { "not separable" })
        })
        .collect::<String>()
        + &format!("{} primes up to {}: {}\n", r.primes.len(), max_p, mark(r.all_separable));
    Ok(Outcome {
        status: pass_status(r.all_separable),
        json: envelope("hasse", r.all_separable, &r),
        csv: csv_table(
            &["p", "degree", "separable"],
            r.primes.iter().map(|e| vec![e.p.to_string(), e.degree.to_string(), e.separable.to_string()]),
        ),
        text,
    })
}

pub fn cm(cfg: &RunConfig, genus: u32) -> Result<Outcome, CmdError> {
    let reports: Vec<CmReport> = per_prime(&cfg.primes, |p| Ok(cm_entries(p, genus)?.report()))?;
    let rows: Vec<Vec<String>> = reports
        .iter()
        .flat_map(|r| r.entries.iter().map(move |(k, v)| vec![r.p.to_string(), r.g.to_string(), k.clone(), v.clone()]))
        .collect();
    let text = rows.iter().map(|r| format!("p={} g={} {} = {}\n", r[0], r[1], r[2], r[3])).collect();
    Ok(Outcome {
        status: Status::Ok,
        json: envelope("cm", true, &reports),
        csv: csv_table(&["p", "g", "entry", "poly"], rows),
        text,
    })
}

#[derive(Debug, Serialize)]
struct LauricellaResult {
    #[serde(flatten)]
    support: SupportSummary,
    normalization_constant: u32,
    series: String,
    reconstruction: String,
    matches_cm: bool,
}

pub fn lauricella(cfg: &RunConfig, i: Option<usize>, j: Option<usize>) -> Result<Outcome, CmdError> {
    let pick = |v: Option<usize>, name: &str| -> Result<Vec<usize>, ConfigError> {
        match v {
            None => Ok(vec![1, 2]),
            Some(x @ 1..=2) => Ok(vec![x]),
            Some(x) => Err(ConfigError(format!("-{name} must be 1 or 2, got {x}"))),
        }
    };
    let (is, js) = (pick(i, "i")?, pick(j, "j")?);
    let results: Vec<Vec<LauricellaResult>> = per_prime(&cfg.primes, |p| {
        let cm = cm_entries(p, 2)?;
        let mut out = Vec::new();
        for &i in &is {
            for &j in &js {
                let series = truncated_series(p, i, j)?;
                let rebuilt = cm_via_hypergeometric(p, i, j)?;
                out.push(LauricellaResult {
                    support: series.support.summary(),
                    normalization_constant: normalization_constant(p, i, j)?.value(),
                    series: series.poly.to_text(),
                    matches_cm: &rebuilt == cm.entry(i, j),
                    reconstruction: rebuilt.to_text(),
                });
            }
        }
        Ok(out)
    })?;
    let results: Vec<LauricellaResult> = results.into_iter().flatten().collect();
    let pass = results.iter().all(|r| r.matches_cm);
    let text = results
        .iter()
        .map(|r| {
            let s = &r.support;
            format!(
                "p={} (i,j)=({},{}) d'={} support={} constant={} matches c_{{ip-j}}: {}\n",
                s.p, s.i, s.j, s.d_prime, s.size, r.normalization_constant, mark(r.matches_cm)
            )
        })
        .collect();
    let csv = csv_table(
        &["p", "i", "j", "d_prime", "size", "normalization_constant", "matches_cm", "series"],
        results.iter().map(|r| {
            let s = &r.support;
            vec![
                s.p.to_string(),
                s.i.to_string(),
                s.j.to_string(),
                s.d_prime.to_string(),
                s.size.to_string(),
                r.normalization_constant.to_string(),
                r.matches_cm.to_string(),
                r.series.clone(),
            ]
        }),
    );
    Ok(Outcome { status: pass_status(pass), json: envelope("lauricella", pass, &results), csv, text })
}

pub fn verify_pde(cfg: &RunConfig) -> Result<Outcome, CmdError> {
    let reports: Vec<PdeReport> = per_prime(&cfg.primes, verify_annihilation)?;
    let pass = reports.iter().all(PdeReport::pass);
    let mut text = String::new();
    for r in &reports {
        text += &format!(
            "p={} operators: {} ({} residuals, {} nonzero) gauss: {}\n",
            r.p,
            mark(r.operators.pass),
            r.operators.checked,
            r.operators.residuals.len(),
            mark(r.gauss.pass)
        );
        for res in &r.operators.residuals {
            text += &format!("  {} {}: {}\n", res.relation, res.target, res.residual);
        }
    }
    let csv = csv_table(
        &["p", "operators_pass", "checked", "nonzero", "gauss_pass"],
        reports.iter().map(|r| {
            vec![
                r.p.to_string(),
                r.operators.pass.to_string(),
                r.operators.checked.to_string(),
                r.operators.residuals.len().to_string(),
                r.gauss.pass.to_string(),
            ]
        }),
    );
    Ok(Outcome { status: pass_status(pass), json: envelope("verify-pde", pass, &reports), csv, text })
}

pub fn verify_contiguity_cmd(cfg: &RunConfig) -> Result<Outcome, CmdError> {
    let reports: Vec<ContiguityReport> = per_prime(&cfg.primes, verify_contiguity)?;
    let pass = reports.iter().all(ContiguityReport::pass);
    let mut text = String::new();
    for r in &reports {
        text += &format!("p={} contiguity: {} predicted: {}\n", r.p, mark(r.contiguity.pass), mark(r.predicted.pass));
        for res in r.contiguity.residuals.iter().chain(&r.predicted.residuals) {
            text += &format!("  {} {}: {}\n", res.relation, res.target, res.residual);
        }
    }
    let csv = csv_table(
        &["p", "contiguity_pass", "predicted_pass"],
        reports.iter().map(|r| vec![r.p.to_string(), r.contiguity.pass.to_string(), r.predicted.pass.to_string()]),
    );
    Ok(Outcome { status: pass_status(pass), json: envelope("verify-contiguity", pass, &reports), csv, text })
}

fn point_table(reports: &[LocusReport]) -> String {
    csv_table(
        &["p", "k", "lambda1", "lambda2", "lambda3", "rank"],
        reports.iter().flat_map(|r| {
            r.points.iter().map(move |pt| {
                let [a, b, c] = pt.lambda.clone();
                vec![r.p.to_string(), r.k.to_string(), a, b, c, pt.rank.to_string()]
            })
        }),
    )
}

#[derive(Debug, Serialize)]
struct LocusPointView<'a> {
    lambda: &'a [String; 3],
    rank: usize,
    branch_points_ok: bool,
}

#[derive(Debug, Serialize)]
struct LocusView<'a> {
    p: u32,
    extension_degrees: &'a [usize],
    k: usize,
    modulus: &'a str,
    complete: bool,
    point_count: usize,
    branch_points_ok: bool,
    points: Vec<LocusPointView<'a>>,
}

pub fn locus(cfg: &RunConfig) -> Result<Outcome, CmdError> {
    let reports: Vec<LocusReport> = per_prime(&cfg.primes, |p| verify_multiplicity_one(p, &cfg.schedule))?;
    let views: Vec<LocusView> = reports
        .iter()
        .map(|r| LocusView {
            p: r.p,
            extension_degrees: &r.extension_degrees,
            k: r.k,
            modulus: &r.modulus,
            complete: r.counts_match,
            point_count: r.point_count,
            branch_points_ok: r.branch_points_ok,
            points: r
                .points
                .iter()
                .map(|pt| LocusPointView { lambda: &pt.lambda, rank: pt.rank, branch_points_ok: pt.branch_points_ok })
                .collect(),
        })
        .collect();
    let branch_ok = reports.iter().all(|r| r.branch_points_ok);
    let complete = reports.iter().all(|r| r.counts_match);
    let status = if !branch_ok {
        Status::Failed
    } else if !complete {
        Status::Incomplete
    } else {
        Status::Ok
    };
    let text = reports
        .iter()
        .map(|r| {
            format!(
                "p={} k={} modulus {}: {} points{}\n",
                r.p,
                r.k,
                r.modulus,
                r.point_count,
                if r.counts_match { "" } else { " (enumeration incomplete)" }
            )
        })
        .collect();
    Ok(Outcome {
        status,
        json: envelope("locus", branch_ok && complete, &views),
        csv: point_table(&reports),
        text,
    })
}

pub fn verify_mult_one(cfg: &RunConfig) -> Result<Outcome, CmdError> {
    let reports: Vec<LocusReport> = per_prime(&cfg.primes, |p| verify_multiplicity_one(p, &cfg.schedule))?;
    let checks_ok = reports.iter().all(|r| {
        r.radical && r.ranks_all_three && r.pair_ranks_ok && r.branch_points_ok && r.contiguity_dependencies_ok
    });
    let complete = reports.iter().all(|r| r.counts_match);
    let status = if !checks_ok {
        Status::Failed
    } else if !complete {
        Status::Incomplete
    } else {
        Status::Ok
    };
    let text = reports
        .iter()
        .map(|r| {
            format!(
                "p={} quotient_dim={} points={} (k={}) radical={} rank3={} pairs={} branch={} counts_match={}: {}\n",
                r.p,
                r.quotient_dim,
                r.point_count,
                r.k,
                r.radical,
                r.ranks_all_three,
                r.pair_ranks_ok,
                r.branch_points_ok,
                r.counts_match,
                mark(r.pass())
            )
        })
        .collect();
    Ok(Outcome {
        status,
        json: envelope("verify-mult-one", checks_ok && complete, &reports),
        csv: point_table(&reports),
        text,
    })
}

/// Exits 0 whenever the run completes; the verdict lives in the payload.
pub fn check_expectation_cmd(cfg: &RunConfig) -> Result<Outcome, CmdError> {
    let reports: Vec<ExpectationReport> = per_prime(&cfg.primes, |p| check_expectation(p, &cfg.schedule))?;
    let pass = reports.iter().all(|r| r.pass);
    let text = reports
        .iter()
        .map(|r| {
            format!(
                "p={} k={} points={} failures={} complete={}: {}\n",
                r.p,
                r.k,
                r.point_count,
                r.failures,
                r.complete,
                mark(r.pass)
            )
        })
        .collect();
    let csv = csv_table(
        &["p", "k", "lambda1", "lambda2", "lambda3", "value1", "value2", "value3", "pass"],
        reports.iter().flat_map(|r| {
            r.points.iter().map(move |pt| {
                let mut row = vec![r.p.to_string(), r.k.to_string()];
                row.extend(pt.lambda.iter().cloned());
                row.extend(pt.values.iter().cloned());
                row.push(pt.pass.to_string());
                row
            })
        }),
    );
    Ok(Outcome { status: Status::Ok, json: envelope("check-expectation", pass, &reports), csv, text })
}
