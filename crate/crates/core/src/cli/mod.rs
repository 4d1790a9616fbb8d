//! Command-line front end: subcommand dispatch, JSON report documents and
//! chart-file emission for constructions.

pub mod dsl;
mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::batch;
use crate::chartgeom::{ChartRef, KForm, VectorField};
use crate::constructions::{
    cartan_prolongation, cartan_prolongation_second, contact_darboux_model, engel_darboux_model,
    engel_model_forms, gray_vector_field, lorentzian_tube, prolongation_overlap_check, reeb_field,
    verify_chart_equivalence, verify_distribution_equivalence, ContactChart, EngelChart,
    FormFamily, ModelVariant,
};
use crate::distribution::{
    annihilator, anticanonical_volume, check_contact, check_engel, check_even_contact, derived,
    derived_flag, find_witness, kernel_by_brackets, kernel_line_field, oneill_tensor, CheckReport,
    Distribution, DEFAULT_WITNESS_RADIUS,
};
use crate::error::{Error, Result};
use crate::symcore::squarefree_part;
use crate::symcore::text::{poly_to_text, ratfun_to_text};
use dsl::{ChartFile, Mode};
use report::{document, failure_json, holds, report_json};

#[derive(Parser, Debug)]
#[command(
    name = "engelkit",
    version,
    about = "Exact checks of contact, even-contact and Engel structures on polynomial charts"
)]
struct Cli {
    /// Worker threads for independent objects (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Report wall-clock time in `timing_ms`.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Property {
    Contact,
    EvenContact,
    Engel,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Paper,
    Corrected,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generic property check of forms or distributions.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        /// Comma-separated names, or `all`.
        #[arg(long, default_value = "all")]
        object: String,
    },
    /// Derived flag of a distribution.
    Flag {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        object: String,
    },
    /// Characteristic line field of an even-contact structure (rank 3), or of
    /// the derived distribution of a rank-2 distribution.
    Kernel {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        object: String,
        /// Defining form of E; defaults to its annihilator.
        #[arg(long)]
        form: Option<String>,
    },
    /// Bracket classes [Dᵢ, Dⱼ] mod D.
    Oneill {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        object: String,
    },
    /// Reeb field of a contact form.
    Reeb {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        object: String,
    },
    /// Gray vector field of a one-parameter family of contact forms.
    Gray {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        object: String,
        /// Family parameter; defaults to the chart's only parameter.
        #[arg(long)]
        param: Option<String>,
    },
    /// Cartan prolongation of a 3-dimensional contact structure.
    Prolong {
        file: PathBuf,
        /// A contact form or a corank-1 distribution.
        #[arg(long)]
        object: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also build the chart at the other end of the fiber and compare.
        #[arg(long)]
        both_charts: bool,
        #[arg(long)]
        out_second: Option<PathBuf>,
    },
    /// Engel structure on the tube over a 3-dimensional frame.
    Tube {
        file: PathBuf,
        /// Three field names `V1,V2,V3`.
        #[arg(long)]
        frame: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Anticanonical volume det(ℓ, d, [ℓ, d], [d, [ℓ, d]]).
    Volume {
        file: PathBuf,
        /// Two field names `l,d`.
        #[arg(long)]
        object: String,
    },
    /// Whether a polynomial map carries one structure onto another.
    Equiv {
        file: PathBuf,
        #[arg(long)]
        map: String,
        /// Source and target `A,B`, both forms or both distributions.
        #[arg(long)]
        object: String,
    },
    /// Emit a Darboux model chart.
    Model {
        #[arg(long, value_enum, conflicts_with = "contact_n")]
        variant: Option<Variant>,
        #[arg(long)]
        contact_n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Flag { .. } => "flag",
            Command::Kernel { .. } => "kernel",
            Command::Oneill { .. } => "oneill",
            Command::Reeb { .. } => "reeb",
            Command::Gray { .. } => "gray",
            Command::Prolong { .. } => "prolong",
            Command::Tube { .. } => "tube",
            Command::Volume { .. } => "volume",
            Command::Equiv { .. } => "equiv",
            Command::Model { .. } => "model",
        }
    }

    fn file(&self) -> Option<&Path> {
        match self {
            Command::Check { file, .. }
            | Command::Flag { file, .. }
            | Command::Kernel { file, .. }
            | Command::Oneill { file, .. }
            | Command::Reeb { file, .. }
            | Command::Gray { file, .. }
            | Command::Prolong { file, .. }
            | Command::Tube { file, .. }
            | Command::Volume { file, .. }
            | Command::Equiv { file, .. } => Some(file),
            Command::Model { .. } => None,
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Executed {
    reports: Vec<Value>,
    /// Chart files to write, after the computation succeeded.
    emitted: Vec<(PathBuf, String)>,
}

/// Runs one command line (including the program name) in-process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => usage_failure(text),
            };
        }
    };
    let start = Instant::now();
    let input = match cli.command.file().map(load).transpose() {
        Ok(input) => input,
        Err(e) => return error_outcome(&e),
    };
    let (file, digest) = match input {
        Some((f, d)) => (Some(f), Some(d)),
        None => (None, None),
    };
    let command = &cli.command;
    let executed = batch::with_jobs(cli.jobs, || execute(command, file.as_ref()));
    let executed = match executed {
        Ok(x) => x,
        Err(e) => return error_outcome(&e),
    };
    for (path, text) in &executed.emitted {
        if let Err(e) = std::fs::write(path, text) {
            return usage_failure(format!("engelkit: cannot write {}: {e}\n", path.display()));
        }
    }
    let all_hold = executed.reports.iter().all(holds);
    let timing = cli.timing.then(|| start.elapsed().as_millis());
    let doc = document(command.name(), digest, executed.reports, timing);
    let mut stdout = serde_json::to_string_pretty(&doc).expect("serializable");
    stdout.push('\n');
    Outcome {
        code: if all_hold { 0 } else { 2 },
        stdout,
        stderr: String::new(),
    }
}

fn usage_failure(stderr: String) -> Outcome {
    Outcome {
        code: 1,
        stdout: String::new(),
        stderr,
    }
}

fn error_outcome(e: &Error) -> Outcome {
    usage_failure(format!("engelkit: error: {e}\n"))
}

fn load(path: &Path) -> Result<(ChartFile, String)> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| Error::Usage(format!("{} is not UTF-8", path.display())))?;
    let file = dsl::parse(text)?;
    Ok((file, report::digest(&bytes)))
}

/// Domain failures become a failed report (exit 2); anything else aborts.
fn verdict_or(
    result: Result<Value>,
    object: &str,
    chart: &ChartRef,
    property: &str,
) -> Result<Value> {
    match result {
        Err(Error::NotContact(m)) | Err(Error::NotEvenContact(m)) | Err(Error::Degenerate(m)) => {
            Ok(failure_json(Some(object), chart, property, &m))
        }
        other => other,
    }
}

enum Object<'a> {
    Form(&'a KForm),
    Dist(Distribution),
}

fn object<'a>(file: &'a ChartFile, name: &str) -> Result<Object<'a>> {
    if let Some(f) = file.form(name) {
        return Ok(Object::Form(f));
    }
    if let Some(d) = file.distribution(name) {
        return Ok(Object::Dist(d));
    }
    Err(Error::Usage(format!(
        "no form or distribution named `{name}`"
    )))
}

fn field<'a>(file: &'a ChartFile, name: &str) -> Result<&'a VectorField> {
    file.field(name)
        .ok_or_else(|| Error::Usage(format!("no field named `{name}`")))
}

fn form<'a>(file: &'a ChartFile, name: &str) -> Result<&'a KForm> {
    file.form(name)
        .ok_or_else(|| Error::Usage(format!("no form named `{name}`")))
}

fn dist(file: &ChartFile, name: &str) -> Result<Distribution> {
    file.distribution(name)
        .ok_or_else(|| Error::Usage(format!("no distribution named `{name}`")))
}

fn split_names(spec: &str) -> Vec<String> {
    spec.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Object names from `--object`, with `all` meaning every candidate in
/// declaration order.
fn selection<'a>(spec: &str, all: impl Iterator<Item = &'a str>) -> Result<Vec<String>> {
    let names = if spec.trim() == "all" {
        all.map(str::to_string).collect()
    } else {
        split_names(spec)
    };
    if names.is_empty() {
        return Err(Error::Usage("no objects selected".into()));
    }
    Ok(names)
}

fn exactly<const N: usize>(spec: &str, what: &str) -> Result<[String; N]> {
    split_names(spec)
        .try_into()
        .map_err(|_| Error::Usage(format!("expected {N} comma-separated {what}")))
}

/// Runs `f` over `names` (in parallel when allowed), keeping input order and
/// returning the first error.
fn per_object<F>(names: &[String], f: F) -> Result<Vec<Value>>
where
    F: Fn(&str) -> Result<Value> + Sync + Send,
{
    batch::map(names, |n| f(n)).into_iter().collect()
}

fn single_annihilator(d: &Distribution) -> Result<KForm> {
    let mut forms = annihilator(d)?;
    if forms.len() != 1 {
        return Err(Error::Rank(format!(
            "expected a corank-1 distribution, got corank {}",
            forms.len()
        )));
    }
    Ok(forms.remove(0))
}

fn execute(command: &Command, file: Option<&ChartFile>) -> Result<Executed> {
    let reports_only = |reports| {
        Ok(Executed {
            reports,
            emitted: Vec::new(),
        })
    };
    let Some(file) = file else {
        let Command::Model {
            variant,
            contact_n,
            out,
        } = command
        else {
            unreachable!("every other command reads a file")
        };
        return model(*variant, *contact_n, out.as_deref());
    };
    let chart = file.chart();
    match command {
        Command::Check {
            property, object, ..
        } => {
            let names = match property {
                Property::Engel => selection(object, file.distributions())?,
                _ => selection(object, file.forms())?,
            };
            reports_only(per_object(&names, |n| check(file, n, *property))?)
        }
        Command::Flag { object, .. } => {
            let names = selection(object, file.distributions())?;
            reports_only(per_object(&names, |n| flag(file, n))?)
        }
        Command::Kernel { object, form, .. } => {
            let names = selection(object, file.distributions())?;
            reports_only(per_object(&names, |n| {
                verdict_or(kernel(file, n, form.as_deref()), n, chart, "kernel")
            })?)
        }
        Command::Oneill { object, .. } => {
            let names = selection(object, file.distributions())?;
            reports_only(per_object(&names, |n| oneill(file, n))?)
        }
        Command::Reeb { object, .. } => {
            let names = selection(object, file.forms())?;
            reports_only(per_object(&names, |n| {
                verdict_or(reeb(file, n), n, chart, "reeb")
            })?)
        }
        Command::Gray { object, param, .. } => {
            let names = selection(object, file.forms())?;
            let param = match param {
                Some(p) => p.clone(),
                None => match chart.params() {
                    [p] => p.clone(),
                    _ => {
                        return Err(Error::Usage(
                            "pass --param: the chart does not have exactly one parameter".into(),
                        ))
                    }
                },
            };
            reports_only(per_object(&names, |n| {
                verdict_or(gray(file, n, &param), n, chart, "gray")
            })?)
        }
        Command::Prolong {
            object,
            out,
            both_charts,
            out_second,
            ..
        } => prolong(
            file,
            object,
            out.as_deref(),
            *both_charts || out_second.is_some(),
            out_second.as_deref(),
        ),
        Command::Tube { frame, out, .. } => tube(file, frame, out.as_deref()),
        Command::Volume { object, .. } => reports_only(vec![volume(file, object)?]),
        Command::Equiv { map, object, .. } => reports_only(vec![equiv(file, map, object)?]),
        Command::Model { .. } => unreachable!("model reads no file"),
    }
}

fn check(file: &ChartFile, name: &str, property: Property) -> Result<Value> {
    let report = match (property, object(file, name)?) {
        (Property::Engel, Object::Dist(d)) => check_engel(&d)?.0,
        (Property::Engel, Object::Form(_)) => {
            return Err(Error::Usage(format!(
                "`{name}` is a form; the Engel check takes a distribution"
            )))
        }
        (p, obj) => {
            let theta = match obj {
                Object::Form(f) => f.clone(),
                Object::Dist(d) => single_annihilator(&d)?,
            };
            match p {
                Property::Contact => check_contact(&theta)?,
                _ => check_even_contact(&theta)?,
            }
        }
    };
    Ok(report_json(Some(name), &report))
}

fn flag(file: &ChartFile, name: &str) -> Result<Value> {
    let d = dist(file, name)?;
    let chart = d.chart();
    let flag = derived_flag(&d, chart.dim())?;
    let names = chart.ring_names();
    let mut report = CheckReport::new(chart, "bracket-generating");
    report.holds_generically = flag.is_bracket_generating(chart.dim());
    report.ranks = flag.ranks.clone();
    report.degeneracy = flag.degeneracy.clone();
    report.witness = find_witness(chart.nvars(), DEFAULT_WITNESS_RADIUS, |pt| {
        for (step, &r) in flag.steps.iter().zip(&flag.ranks) {
            if step.rank_at(pt)? != r {
                return Ok(false);
            }
        }
        Ok(true)
    });
    let steps: Vec<Value> = flag
        .step_bases
        .iter()
        .zip(&flag.step_loci)
        .map(|(basis, locus)| {
            json!({
                "basis": basis.iter().map(VectorField::to_text).collect::<Vec<_>>(),
                "locus": locus.as_ref().map(|p| poly_to_text(p, &names)),
            })
        })
        .collect();
    report.details.insert("steps".into(), Value::Array(steps));
    Ok(report_json(Some(name), &report))
}

fn kernel(file: &ChartFile, name: &str, form_name: Option<&str>) -> Result<Value> {
    let d = dist(file, name)?;
    let chart = d.chart();
    let (e, d_in) = match d.generic_rank()? {
        2 => (derived(&d)?, Some(&d)),
        _ => (d.clone(), None),
    };
    let e = Distribution::new(chart, e.basis()?)?;
    let theta = match form_name {
        Some(f) => form(file, f)?.clone(),
        None => single_annihilator(&e)?,
    };
    let l = kernel_line_field(&e, &theta)?;
    let by_brackets = kernel_by_brackets(&e, &theta)?;
    let agree = Distribution::new(chart, vec![l.clone(), by_brackets])?.generic_rank()? == 1;
    let mut report = CheckReport::new(chart, "kernel");
    report.holds_generically = true;
    report.ranks = vec![e.generators().len(), 1];
    report.witness = find_witness(chart.nvars(), DEFAULT_WITNESS_RADIUS, |pt| {
        Ok(theta.eval(pt).is_ok() && l.eval(pt)?.iter().any(|c| !c.is_zero()))
    });
    report.kernel = Some(l.clone());
    report.details.insert("form".into(), json!(theta.to_text()));
    report
        .details
        .insert("kernel_cross_check".into(), json!(agree));
    if let Some(d) = d_in {
        report
            .details
            .insert("kernel_in_d".into(), json!(d.contains(&l)?));
    }
    Ok(report_json(Some(name), &report))
}

fn oneill(file: &ChartFile, name: &str) -> Result<Value> {
    let d = dist(file, name)?;
    let chart = d.chart();
    let table = oneill_tensor(&d)?;
    let names = chart.ring_names();
    let mut report = CheckReport::new(chart, "oneill");
    report.holds_generically = !table.is_zero();
    report.ranks = vec![table.basis.len()];
    let entries = table
        .entries
        .iter()
        .map(|(i, j, beta)| {
            Ok(json!({
                "pair": [i, j],
                "class": table.class_field(beta)?.to_text(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    report.details.insert(
        "basis".into(),
        json!(table
            .basis
            .iter()
            .map(VectorField::to_text)
            .collect::<Vec<_>>()),
    );
    report.details.insert(
        "complement".into(),
        json!(table
            .complement
            .iter()
            .map(|&k| format!("d/d{}", names[k]))
            .collect::<Vec<_>>()),
    );
    report
        .details
        .insert("entries".into(), Value::Array(entries));
    Ok(report_json(Some(name), &report))
}

fn reeb(file: &ChartFile, name: &str) -> Result<Value> {
    let theta = form(file, name)?;
    let chart = theta.chart();
    let r = reeb_field(theta)?;
    let names = chart.ring_names();
    let pairing = theta.interior(&r)?;
    let unit = pairing.coefficient(&[]).sub(&chart.constant(1))?;
    let contracted = theta.d()?.interior(&r)?;
    let mut report = CheckReport::new(chart, "reeb");
    report.holds_generically = unit.is_zero() && contracted.is_zero();
    report.details.insert("reeb".into(), json!(r.to_text()));
    report.details.insert(
        "residual_pairing".into(),
        json!(ratfun_to_text(&unit, &names)),
    );
    report
        .details
        .insert("residual_contraction".into(), json!(contracted.to_text()));
    Ok(report_json(Some(name), &report))
}

fn gray(file: &ChartFile, name: &str, param: &str) -> Result<Value> {
    let theta = form(file, name)?;
    let family = FormFamily::new(theta.clone(), param)?;
    let sol = gray_vector_field(&family)?;
    let chart = theta.chart();
    let names = chart.ring_names();
    let mut report = CheckReport::new(chart, "gray");
    report.holds_generically = sol.residual.is_zero();
    report.details.insert("param".into(), json!(param));
    report
        .details
        .insert("field".into(), json!(sol.v.to_text()));
    report
        .details
        .insert("reeb".into(), json!(sol.reeb.to_text()));
    report
        .details
        .insert("h".into(), json!(ratfun_to_text(&sol.h, &names)));
    report
        .details
        .insert("residual".into(), json!(sol.residual.to_text()));
    Ok(report_json(Some(name), &report))
}

/// Name not yet used by the chart or the file.
fn free_name(file: &ChartFile, base: &str) -> String {
    let mut name = base.to_string();
    while file.chart().index_of(&name).is_some() || file.items().iter().any(|i| i.name() == name) {
        name.push('_');
    }
    name
}

fn parse_err(e: dsl::ParseError) -> Error {
    Error::Parse(e)
}

/// Chart file with `D`'s generators, the bracket completing `E`, the
/// characteristic line `L` and the defining form of `E`.
fn emit_engel(engel: &EngelChart, theta: &KForm, mode: Mode) -> Result<String> {
    let chart = engel.chart();
    let mut out = ChartFile::new(chart, mode).map_err(parse_err)?;
    let gens = engel.d.generators();
    let x1 = free_name(&out, "X1");
    out.add_field(&x1, gens[0].clone()).map_err(parse_err)?;
    let x2 = free_name(&out, "X2");
    out.add_field(&x2, gens[1].clone()).map_err(parse_err)?;
    let bracket = gens[0].lie_bracket(&gens[1])?.cleared()?;
    let y = free_name(&out, "Y");
    out.add_field(&y, bracket).map_err(parse_err)?;
    let l = free_name(&out, "L");
    out.add_field(&l, engel.flag.l.cleared()?)
        .map_err(parse_err)?;
    let d = free_name(&out, "D");
    out.add_dist(&d, &[&x1, &x2]).map_err(parse_err)?;
    let e = free_name(&out, "E");
    out.add_dist(&e, &[&x1, &x2, &y]).map_err(parse_err)?;
    let th = free_name(&out, "theta");
    out.add_form(&th, theta.clone()).map_err(parse_err)?;
    Ok(out.to_text())
}

fn construction_json(object: &str, report: &CheckReport, emitted: &str) -> Value {
    let mut r = report.clone();
    r.details.insert("emitted_chart".into(), json!(emitted));
    report_json(Some(object), &r)
}

fn contact_input(file: &ChartFile, name: &str) -> Result<ContactChart> {
    match object(file, name)? {
        Object::Form(f) => ContactChart::from_form(f.clone()),
        Object::Dist(d) => ContactChart::new(single_annihilator(&d)?, d),
    }
}

fn prolong(
    file: &ChartFile,
    name: &str,
    out: Option<&Path>,
    both: bool,
    out_second: Option<&Path>,
) -> Result<Executed> {
    let chart = file.chart();
    let contact = match contact_input(file, name) {
        Ok(c) => c,
        Err(e) => {
            let failed = verdict_or(Err(e), name, chart, "engel")?;
            return Ok(Executed {
                reports: vec![failed],
                emitted: Vec::new(),
            });
        }
    };
    let mut reports = Vec::new();
    let mut emitted = Vec::new();
    let (first, report) = cartan_prolongation(&contact)?;
    let text = emit_engel(&first, &first.flag.theta, file.mode())?;
    reports.push(construction_json(name, &report, &text));
    if let Some(p) = out {
        emitted.push((p.to_path_buf(), text));
    }
    if both {
        let (second, report2) = cartan_prolongation_second(&contact)?;
        let text2 = emit_engel(&second, &second.flag.theta, file.mode())?;
        reports.push(construction_json(name, &report2, &text2));
        if let Some(p) = out_second {
            emitted.push((p.to_path_buf(), text2));
        }
        let overlap = prolongation_overlap_check(&first, &second)?;
        let mut r = CheckReport::new(first.chart(), "prolongation-overlap");
        r.holds_generically = overlap.holds;
        r.details
            .insert("samples".into(), json!(overlap.samples.len()));
        reports.push(report_json(Some(name), &r));
    }
    Ok(Executed { reports, emitted })
}

fn tube(file: &ChartFile, frame: &str, out: Option<&Path>) -> Result<Executed> {
    let [a, b, c] = exactly::<3>(frame, "frame fields")?;
    let (v1, v2, v3) = (field(file, &a)?, field(file, &b)?, field(file, &c)?);
    let label = format!("{a},{b},{c}");
    let (tube, report) = match lorentzian_tube(v1, v2, v3) {
        Ok(x) => x,
        Err(e) => {
            let failed = verdict_or(Err(e), &label, file.chart(), "engel")?;
            return Ok(Executed {
                reports: vec![failed],
                emitted: Vec::new(),
            });
        }
    };
    let text = emit_engel(&tube.engel, &tube.theta, file.mode())?;
    let names = tube.chart().ring_names();
    let mut report = report;
    report
        .details
        .insert("tube_form".into(), json!(tube.theta.to_text()));
    report
        .details
        .insert("theta_dtheta".into(), json!(tube.theta_dtheta()?.to_text()));
    report.details.insert(
        "coframe_coefficients".into(),
        json!(tube
            .coframe_coefficients()?
            .iter()
            .map(|c| ratfun_to_text(c, &names))
            .collect::<Vec<_>>()),
    );
    let base_names = file.chart().ring_names();
    report.details.insert(
        "frame_locus".into(),
        json!(tube
            .frame_locus
            .as_ref()
            .map(|p| poly_to_text(p, &base_names))),
    );
    let value = construction_json(&label, &report, &text);
    Ok(Executed {
        reports: vec![value],
        emitted: out.map(|p| (p.to_path_buf(), text)).into_iter().collect(),
    })
}

fn volume(file: &ChartFile, spec: &str) -> Result<Value> {
    let [a, b] = exactly::<2>(spec, "fields")?;
    let (l, d) = (field(file, &a)?, field(file, &b)?);
    let vol = anticanonical_volume(l, d)?;
    let chart = file.chart();
    let names = chart.ring_names();
    let mut report = CheckReport::new(chart, "anticanonical-volume");
    report.holds_generically = !vol.is_zero();
    if report.holds_generically && !vol.numerator().is_constant() {
        report.degeneracy = vec![squarefree_part(vol.numerator())];
    }
    report
        .details
        .insert("volume".into(), json!(ratfun_to_text(&vol, &names)));
    Ok(report_json(Some(&format!("{a},{b}")), &report))
}

fn equiv(file: &ChartFile, map: &str, spec: &str) -> Result<Value> {
    let [a, b] = exactly::<2>(spec, "objects")?;
    let phi = file
        .map(map)
        .ok_or_else(|| Error::Usage(format!("no map named `{map}`")))?;
    let report = match (object(file, &a)?, object(file, &b)?) {
        (Object::Form(s), Object::Form(t)) => {
            verify_chart_equivalence(phi, std::slice::from_ref(s), std::slice::from_ref(t))?
        }
        (Object::Dist(s), Object::Dist(t)) => verify_distribution_equivalence(phi, &s, &t)?,
        _ => {
            return Err(Error::Usage(
                "equivalence needs two forms or two distributions".into(),
            ))
        }
    };
    Ok(report_json(Some(&format!("{a},{b}")), &report))
}

fn model(
    variant: Option<Variant>,
    contact_n: Option<usize>,
    out: Option<&Path>,
) -> Result<Executed> {
    let (report, text, label) = match (variant, contact_n) {
        (Some(v), None) => {
            let v = match v {
                Variant::Paper => ModelVariant::Paper,
                Variant::Corrected => ModelVariant::Corrected,
            };
            let (d, report, _) = engel_darboux_model(v)?;
            let (chart, forms) = engel_model_forms(v)?;
            let mut f = ChartFile::new(&chart, Mode::Rational).map_err(parse_err)?;
            f.add_field("X1", d.generators()[0].clone())
                .map_err(parse_err)?;
            f.add_field("X2", d.generators()[1].clone())
                .map_err(parse_err)?;
            f.add_dist("D", &["X1", "X2"]).map_err(parse_err)?;
            f.add_form("alpha", forms[0].clone()).map_err(parse_err)?;
            f.add_form("beta", forms[1].clone()).map_err(parse_err)?;
            (report, f.to_text(), "D")
        }
        (None, Some(n)) => {
            let c = contact_darboux_model(n)?;
            let report = check_contact(c.theta())?;
            let mut f = ChartFile::new(c.chart(), Mode::Rational).map_err(parse_err)?;
            let mut gens = Vec::new();
            for (k, g) in c.kernel().generators().iter().enumerate() {
                let name = format!("F{}", k + 1);
                f.add_field(&name, g.clone()).map_err(parse_err)?;
                gens.push(name);
            }
            let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
            f.add_dist("F", &refs).map_err(parse_err)?;
            f.add_form("theta", c.theta().clone()).map_err(parse_err)?;
            (report, f.to_text(), "theta")
        }
        _ => {
            return Err(Error::Usage(
                "model needs exactly one of --variant or --contact-n".into(),
            ))
        }
    };
    Ok(Executed {
        reports: vec![construction_json(label, &report, &text)],
        emitted: out.map(|p| (p.to_path_buf(), text)).into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> String {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    #[test]
    fn contact_verdicts_and_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let f = write(
            dir.path(),
            "c.chart",
            "chart c { vars x y z; }\nform theta = dx - y*dz;\nform fol = dz;\n",
        );
        let ok = run([
            "engelkit",
            "check",
            &f,
            "--property",
            "contact",
            "--object",
            "theta",
        ]);
        assert_eq!(ok.code, 0, "{}", ok.stderr);
        assert!(ok.stdout.contains("\"holds_generically\": true"));
        let bad = run([
            "engelkit",
            "check",
            &f,
            "--property",
            "contact",
            "--object",
            "fol",
        ]);
        assert_eq!(bad.code, 2);
        let missing = run([
            "engelkit",
            "check",
            &f,
            "--property",
            "contact",
            "--object",
            "nope",
        ]);
        assert_eq!(missing.code, 1);
        assert!(missing.stderr.contains("nope"));
        assert_eq!(run(["engelkit", "frobnicate"]).code, 1);
    }

    #[test]
    fn model_round_trips_through_check() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("m.chart");
        let out_s = out.to_string_lossy().into_owned();
        let r = run([
            "engelkit",
            "model",
            "--variant",
            "corrected",
            "--out",
            &out_s,
        ]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let again = run([
            "engelkit",
            "check",
            &out_s,
            "--property",
            "engel",
            "--object",
            "D",
        ]);
        assert_eq!(again.code, 0, "{}", again.stderr);
        assert!(again
            .stdout
            .contains("\"ranks\": [\n        2,\n        3,\n        4\n      ]"));
    }

    #[test]
    fn tube_emits_an_engel_chart() {
        let dir = tempfile::tempdir().unwrap();
        let f = write(
            dir.path(),
            "frame.chart",
            "chart frame { vars x1 x2 x3; }\n\
             field V1 = (1, 0, 0);\nfield V2 = (0, 1, 0);\nfield V3 = (0, 0, 1);\n",
        );
        let out = dir.path().join("tube.chart");
        let out_s = out.to_string_lossy().into_owned();
        let r = run([
            "engelkit", "tube", &f, "--frame", "V1,V2,V3", "--out", &out_s,
        ]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let again = run([
            "engelkit",
            "check",
            &out_s,
            "--property",
            "engel",
            "--object",
            "D",
        ]);
        assert_eq!(again.code, 0, "{}", again.stderr);
    }
}
