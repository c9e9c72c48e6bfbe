//! `origami`: command line front end.
//!
//! Exit codes: 0 success or valid, 1 error, 2 threshold not met, 3 validation failure.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use toric_origami::certify::{
    certify_non_origami, lemma_consistency_audit, lift_certificate, validate_certificate,
    Certificate, CertifyError, CertifyOptions,
};
use toric_origami::metric::{
    estimate_lipschitz, format_sig, isoperimetric_constants, parse_rational, subdivided_tetrahedron,
};
use toric_origami::poset::{is_cell_sphere, PosetJson, SimplexId};
use toric_origami::surgery::{fatness_bruteforce, FatnessOptions};
use toric_origami::template::{
    facet_classes, orbit_poset_glued, orbit_posets_agree, render_template_svg, validate_template,
    OrigamiTemplate,
};
use toric_origami::weighted::{CharacteristicFunction, CharacteristicJson};
use toric_origami::SimplicialPoset;

const THRESHOLD_NOT_MET: u8 = 2;
const VALIDATION_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "origami",
    version,
    about = "Toric origami templates and non-origami certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fatness of a 1- or 2-sphere by exhaustive search.
    Fatness {
        sphere: PathBuf,
        /// Longest cycle considered, in vertices.
        #[arg(long)]
        budget_len: Option<usize>,
        /// Time limit in seconds.
        #[arg(long)]
        budget_time: Option<f64>,
        /// Ignore both budgets.
        #[arg(long)]
        exact: bool,
    },
    /// Writes the subdivided tetrahedron boundary L_(q).
    Subdivide {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        out: PathBuf,
        /// Also write barycentric coordinates of the vertices.
        #[arg(long)]
        coords: Option<PathBuf>,
    },
    /// Samples the central projection of L_(q) and prints the estimate.
    Lipschitz {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 16)]
        depth: u32,
    },
    /// Prints the isoperimetric constants A, B and the threshold.
    Constants {
        #[arg(long = "N", default_value_t = 8)]
        n: u64,
        #[arg(long, default_value = "3")]
        c2: String,
        #[arg(long, default_value = "1/3")]
        c3: String,
    },
    /// Emits a non-origami certificate for L_(q).
    Certify {
        #[arg(long = "N", default_value_t = 8)]
        n: u64,
        #[arg(long, default_value_t = 88)]
        q: u32,
        #[arg(long)]
        c2: Option<String>,
        #[arg(long)]
        c3: Option<String>,
        /// Use c2 = 3 and c3 = 1/3, overriding --c2 and --c3.
        #[arg(long)]
        paper_constants: bool,
        /// Sampling depth of the empirical check of c2 and c3; 0 skips it.
        #[arg(long, default_value_t = 16)]
        corroborate_depth: u32,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-checks a certificate from scratch.
    Validate { certificate: PathBuf },
    /// Suspends a certified weighted sphere k times.
    Lift {
        certificate: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Exact fatness against twice the number of characteristic values.
    Audit {
        sphere: PathBuf,
        lambda: PathBuf,
        #[arg(long)]
        budget_time: Option<f64>,
        /// Ignore the time budget.
        #[arg(long)]
        exact: bool,
    },
    /// Validates an origami template and, for trees, builds its orbit poset.
    CheckTemplate { template: PathBuf },
    /// Draws a 2-dimensional template as SVG.
    RenderTemplate {
        template: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_sphere(path: &Path) -> Result<(SimplicialPoset, HashMap<u64, SimplexId>)> {
    let doc: PosetJson = serde_json::from_str(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(SimplicialPoset::from_json_mapped(&doc)?)
}

fn print(v: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn budget(secs: Option<f64>) -> Result<Option<Duration>> {
    secs.map(|s| Duration::try_from_secs_f64(s).context("invalid time budget"))
        .transpose()
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Fatness {
            sphere,
            budget_len,
            budget_time,
            exact,
        } => {
            let (s, map) = read_sphere(&sphere)?;
            let back: HashMap<SimplexId, u64> = map.iter().map(|(&d, &i)| (i, d)).collect();
            let mut opts = FatnessOptions::default();
            if !exact {
                opts.max_cycle_len = budget_len.unwrap_or(usize::MAX);
                opts.time_budget = budget(budget_time)?;
            }
            let res = match fatness_bruteforce(&s, &opts) {
                Ok(r) => r,
                Err(toric_origami::surgery::SurgeryError::BudgetExceeded { partial }) => *partial,
                Err(e) => return Err(e.into()),
            };
            let mut out = serde_json::to_value(res.to_json())?;
            let cycles: Vec<Vec<u64>> = res
                .best_cycles
                .iter()
                .map(|c| c.iter().map(|x| back[x]).collect())
                .collect();
            out["best_cycles"] = json!(cycles);
            print(&out)?;
            Ok(0)
        }
        Command::Subdivide { q, out, coords } => {
            if q == 0 {
                bail!("q must be at least 1");
            }
            let t = subdivided_tetrahedron(q);
            fs::write(&out, t.sphere.to_json_string())?;
            if let Some(c) = coords {
                fs::write(&c, serde_json::to_string(&t.digest_json())?)?;
            }
            print(&json!({
                "q": q,
                "vertices": t.vertex_count(),
                "triangles": t.triangle_count(),
                "euler_characteristic": t.sphere.euler_characteristic(),
                "out": out.display().to_string(),
            }))?;
            Ok(0)
        }
        Command::Lipschitz { q, depth } => {
            if q == 0 {
                bail!("q must be at least 1");
            }
            print(&estimate_lipschitz(&subdivided_tetrahedron(q), depth)?)?;
            Ok(0)
        }
        Command::Constants { n, c2, c3 } => {
            let k = isoperimetric_constants(n, &parse_rational(&c2)?, &parse_rational(&c3)?)?;
            let mut v = serde_json::to_value(k.to_json())?;
            v["A_10sig"] = json!(format_sig(k.a.to_f64(), 10));
            v["threshold_10sig"] = json!(format_sig(k.threshold.to_f64(), 10));
            v["minimal_q"] = json!(k.minimal_q());
            print(&v)?;
            Ok(0)
        }
        Command::Certify {
            n,
            q,
            c2,
            c3,
            paper_constants,
            corroborate_depth,
            out,
        } => {
            let mut opts = CertifyOptions {
                n,
                q,
                ..CertifyOptions::default()
            };
            opts.corroborate_depth = (corroborate_depth > 0).then_some(corroborate_depth);
            if !paper_constants {
                if let Some(c) = c2 {
                    opts.c2 = parse_rational(&c)?;
                }
                if let Some(c) = c3 {
                    opts.c3 = parse_rational(&c)?;
                }
            }
            match certify_non_origami(&opts) {
                Ok(cert) => {
                    let text = serde_json::to_string_pretty(&cert)?;
                    match &out {
                        Some(p) => fs::write(p, &text)?,
                        None => print(&cert)?,
                    }
                    eprintln!("certified: {}", cert.chain.join("; "));
                    eprintln!("{}", cert.verdict);
                    Ok(0)
                }
                Err(e @ CertifyError::ThresholdNotMet { .. }) => {
                    eprintln!("{e}");
                    if let CertifyError::ThresholdNotMet {
                        q,
                        vertex_count,
                        threshold,
                        q_min,
                    } = e
                    {
                        print(&json!({
                            "error": "ThresholdNotMet",
                            "q": q,
                            "vertex_count": vertex_count,
                            "threshold": threshold,
                            "q_min": q_min,
                        }))?;
                    }
                    Ok(THRESHOLD_NOT_MET)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Validate { certificate } => {
            let cert: Certificate =
                serde_json::from_str(&read(&certificate)?).context("parsing certificate")?;
            let report = validate_certificate(&cert);
            print(&report)?;
            Ok(if report.valid { 0 } else { VALIDATION_FAILURE })
        }
        Command::Lift { certificate, k } => {
            let cert: Certificate =
                serde_json::from_str(&read(&certificate)?).context("parsing certificate")?;
            match lift_certificate(&cert, k) {
                Ok(l) => {
                    let mut v = serde_json::to_value(&l)?;
                    // the base certificate is the input file
                    v.as_object_mut().expect("object").remove("base");
                    print(&v)?;
                    Ok(0)
                }
                Err(CertifyError::InvalidCertificate(reason)) => {
                    eprintln!("certificate is not valid: {reason}");
                    Ok(VALIDATION_FAILURE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Audit {
            sphere,
            lambda,
            budget_time,
            exact,
        } => {
            let (s, map) = read_sphere(&sphere)?;
            let doc: CharacteristicJson =
                serde_json::from_str(&read(&lambda)?).context("parsing lambda")?;
            let mut remapped = CharacteristicJson {
                n: doc.n,
                values: Default::default(),
            };
            for (k, v) in doc.values {
                let raw: u64 = k.parse().with_context(|| format!("vertex key {k}"))?;
                let id = map
                    .get(&raw)
                    .with_context(|| format!("lambda names unknown vertex {raw}"))?;
                remapped.values.insert(id.to_string(), v);
            }
            let l = CharacteristicFunction::from_json(&remapped)?;
            let opts = FatnessOptions {
                time_budget: if exact { None } else { budget(budget_time)? },
                ..FatnessOptions::default()
            };
            print(&lemma_consistency_audit(&s, &l, &opts)?)?;
            Ok(0)
        }
        Command::CheckTemplate { template } => {
            let t = OrigamiTemplate::from_json_str(&read(&template)?)?;
            let report = validate_template(&t);
            let mut v = json!({
                "report": report,
                "problems": report.problems(),
                "facet_classes": facet_classes(&t),
            });
            if report.valid && report.is_tree {
                let o = orbit_poset_glued(&t)?;
                let agree = orbit_posets_agree(&t)?;
                let sphere = is_cell_sphere(&o.sphere).map(|r| r.is_sphere()).ok();
                v["orbit_poset"] = json!({
                    "f_vector": o.sphere.f_vector(),
                    "is_sphere": sphere,
                    "agrees_with_connected_sum": agree,
                });
            }
            print(&v)?;
            Ok(if report.valid { 0 } else { VALIDATION_FAILURE })
        }
        Command::RenderTemplate { template, svg } => {
            let t = OrigamiTemplate::from_json_str(&read(&template)?)?;
            fs::write(&svg, render_template_svg(&t)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
