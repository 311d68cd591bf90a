//! Command-line driver.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::contract::{contract, flatness_check, parameter_limit};
use crate::derive::{convention_scan, GeneratorMatrix, SignConvention};
use crate::error::{Error, Result};
use crate::morphisms::{coaction_check, transform_presentation};
use crate::presentations::{
    confluence_check, hilbert_dims, orient_relations, quotient_set_generator, rewriting_to_degree, Presentation,
};
use crate::report::{CheckReport, Outcome};

use super::catalog::{Catalog, Payload, RMatrixEntry};
use super::io::{to_json, BasisMapFile, CoactionFile, PresentationFile, RMatrixFile, SchemeFile};
use super::parse::ParseContext;
use super::pipelines::{
    compare, derive_group, derive_space, group_convention, run_pipeline, space_convention, ybe_check, PipelineReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ANOMALY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qplane", version, about = "Exact checks for quantum (super)planes and their groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Catalog id of the input.
    #[arg(long, conflicts_with = "file")]
    catalog: Option<String>,
    /// JSON file holding the input.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Degree bound.
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, value_enum)]
    convention: Option<ConventionArg>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Print only the final result line.
    #[arg(long)]
    quiet: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConventionArg {
    Ungraded,
    Graded,
    GradedT1,
    GradedT2,
}

impl From<ConventionArg> for SignConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Ungraded => SignConvention::Ungraded,
            ConventionArg::Graded => SignConvention::Graded,
            ConventionArg::GradedT1 => SignConvention::GradedT1,
            ConventionArg::GradedT2 => SignConvention::GradedT2,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Target {
    Space,
    Group,
    Scan,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the (graded) Yang-Baxter equation for an R-matrix.
    VerifyYbe {
        #[command(flatten)]
        common: Common,
    },
    /// Derive space or group relations from an R-matrix.
    Derive {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "space")]
        target: Target,
        /// Presentation to compare against (catalog id or file).
        #[arg(long)]
        against: Option<String>,
    },
    /// Apply a change of generators.
    Transform {
        #[command(flatten)]
        common: Common,
        /// Source presentation, when the map comes from a file.
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        against: Option<String>,
    },
    /// Contract a presentation.
    Contract {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        against: Option<String>,
    },
    /// Set an even parameter to zero.
    Limit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        param: String,
        #[arg(long)]
        against: Option<String>,
    },
    /// Check that a coaction respects the relations.
    Coact {
        #[command(flatten)]
        common: Common,
    },
    /// Confluence and dimension table.
    Pbw {
        #[command(flatten)]
        common: Common,
    },
    /// Confluence of the oriented relations.
    Confluence {
        #[command(flatten)]
        common: Common,
    },
    /// Ideal equality of two presentations.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        with: String,
    },
    /// Set an even generator to a scalar, as in `x=1`.
    Quotient {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        set: String,
        #[arg(long)]
        against: Option<String>,
    },
    /// List catalog entries or show one.
    Catalog {
        id: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        quiet: bool,
    },
    /// Run a scripted pipeline, or `all`.
    Pipeline {
        name: String,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        quiet: bool,
    },
}

/// Outcome of one invocation.
#[derive(Debug)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

/// Catalog id, or a presentation file when the id is unknown and the path exists.
fn load_presentation(c: &Catalog, s: &str) -> Result<Presentation> {
    match c.presentation(s) {
        Ok(p) => Ok(p),
        Err(_) if Path::new(s).is_file() => PresentationFile::parse(&read(Path::new(s))?)?.to_presentation(),
        Err(e) => Err(e),
    }
}

fn input_presentation(c: &Catalog, common: &Common) -> Result<Presentation> {
    match (&common.catalog, &common.file) {
        (Some(id), _) => c.presentation(id),
        (None, Some(f)) => PresentationFile::parse(&read(f)?)?.to_presentation(),
        _ => Err(Error::Input("one of --catalog or --file is required".into())),
    }
}

fn input_rmatrix(c: &Catalog, common: &Common) -> Result<(String, RMatrixEntry)> {
    match (&common.catalog, &common.file) {
        (Some(id), _) => Ok((id.clone(), c.rmatrix(id)?)),
        (None, Some(f)) => Ok((f.display().to_string(), RMatrixFile::parse(&read(f)?)?.to_entry()?)),
        _ => Err(Error::Input("one of --catalog or --file is required".into())),
    }
}

/// Default group generators `t11..tnn` for matrices read from files.
fn with_group(mut r: RMatrixEntry) -> Result<RMatrixEntry> {
    if r.group.is_none() {
        let n = r.parities.len();
        let names: Vec<Vec<String>> = (1..=n).map(|i| (1..=n).map(|j| format!("t{i}{j}")).collect()).collect();
        let rows: Vec<Vec<&str>> = names.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
        let refs: Vec<&[&str]> = rows.iter().map(Vec::as_slice).collect();
        let gm = GeneratorMatrix::new(&refs, &r.parities)?;
        let prec = names.iter().flatten().rev().cloned().collect();
        r.group = Some((gm, prec));
    }
    Ok(r)
}

fn against(
    c: &Catalog,
    rep: &mut PipelineReport,
    label: &str,
    out: &Presentation,
    id: Option<&str>,
    d: usize,
) -> Result<()> {
    if let Some(id) = id {
        rep.check(compare(label, out, &load_presentation(c, id)?, d)?);
    }
    Ok(())
}

fn exit_code(o: Outcome) -> i32 {
    match o {
        Outcome::Pass => EXIT_PASS,
        Outcome::Fail => EXIT_FAIL,
        Outcome::Anomaly => EXIT_ANOMALY,
    }
}

fn render(reports: &[PipelineReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!("== {} ({})\n", r.name, r.result));
        for c in &r.checks {
            s.push_str(&c.to_string());
        }
        for (label, p) in &r.outputs {
            s.push_str(&format!(
                "-- {label}: {} <{}>\n",
                p.name,
                p.generators
                    .iter()
                    .map(|g| if g.parity.is_odd() { format!("{}(odd)", g.name) } else { g.name.clone() })
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            for rel in &p.relations {
                s.push_str(&format!("    {rel} = 0\n"));
            }
        }
    }
    s
}

fn single(name: &str, check: CheckReport) -> PipelineReport {
    let mut rep = PipelineReport::new(name);
    rep.check(check);
    rep
}

fn execute(c: &Catalog, cmd: &Command) -> Result<Vec<PipelineReport>> {
    Ok(match cmd {
        Command::VerifyYbe { common } => {
            let (id, r) = input_rmatrix(c, common)?;
            vec![single("verify-ybe", ybe_check(&id, &r)?)]
        }
        Command::Derive { common, target, against: ag } => {
            let (id, r) = input_rmatrix(c, common)?;
            let r = with_group(r)?;
            let mut rep = PipelineReport::new("derive");
            match target {
                Target::Space => {
                    let conv = common.convention.map_or_else(|| space_convention(&r), Into::into);
                    let p = derive_space(&r, &id, conv)?;
                    rep.output("space", &p);
                    against(c, &mut rep, &format!("space for {id}"), &p, ag.as_deref(), common.degree.unwrap_or(3))?;
                }
                Target::Group => {
                    let conv = common.convention.map_or_else(|| group_convention(&r), Into::into);
                    let p = derive_group(&r, &id, conv)?;
                    rep.output("group", &p);
                    against(c, &mut rep, &format!("RTT for {id}"), &p, ag.as_deref(), common.degree.unwrap_or(2))?;
                }
                Target::Scan => {
                    let ag = ag.as_deref().ok_or_else(|| Error::Input("--target scan needs --against".into()))?;
                    let t = load_presentation(c, ag)?;
                    let (gm, _) = r.group.clone().expect("group set");
                    let (mut scan, outcomes) = convention_scan(&r.params, &r.matrix, &gm, &t)?;
                    for o in outcomes.iter().filter(|o| !o.matches) {
                        scan.note(format!("{}: {}", o.convention, o.detail));
                    }
                    // A scan reports; it fails only when no convention matches.
                    scan.result = if outcomes.iter().any(|o| o.matches) { Outcome::Pass } else { Outcome::Fail };
                    rep.check(scan);
                }
            }
            vec![rep]
        }
        Command::Transform { common, source, against: ag } => {
            let (map, src, expected) = match (&common.catalog, &common.file) {
                (Some(id), _) => {
                    let m = c.map(id)?;
                    let src = match source {
                        Some(s) => load_presentation(c, s)?,
                        None => c.presentation(&m.source)?,
                    };
                    (m.map, src, ag.clone().or(m.expected))
                }
                (None, Some(f)) => {
                    let m = BasisMapFile::parse(&read(f)?)?.to_map()?;
                    let s = source.as_deref().ok_or_else(|| Error::Input("--file needs --source".into()))?;
                    (m, load_presentation(c, s)?, ag.clone())
                }
                _ => return Err(Error::Input("one of --catalog or --file is required".into())),
            };
            let out = transform_presentation(&src, &map, &format!("{} via {}", src.name, map.name))?;
            let mut rep = PipelineReport::new("transform");
            rep.output("image", &out);
            against(c, &mut rep, &map.name, &out, expected.as_deref(), common.degree.unwrap_or(3))?;
            vec![rep]
        }
        Command::Contract { common, source, against: ag } => {
            let (scheme, src, expected) = match (&common.catalog, &common.file) {
                (Some(id), _) => {
                    let ce = c.contraction(id)?;
                    let src = load_presentation(c, source.as_deref().unwrap_or(&ce.source))?;
                    (ce.scheme, src, Some(ag.clone().unwrap_or(ce.expected)))
                }
                (None, Some(f)) => {
                    let s = SchemeFile::parse(&read(f)?)?.to_scheme()?;
                    let src = source.as_deref().ok_or_else(|| Error::Input("--file needs --source".into()))?;
                    (s, load_presentation(c, src)?, ag.clone())
                }
                _ => return Err(Error::Input("one of --catalog or --file is required".into())),
            };
            let (out, cr) = contract(&src, &scheme)?;
            let mut rep = PipelineReport::new("contract");
            rep.output("contracted", &out);
            let mut vals = CheckReport::new("contraction", &[&src.name]);
            for r in &cr.relations {
                vals.note(format!("`{}` has valuation {} and contracts to `{}`", r.source, r.valuation, r.contracted));
            }
            rep.check(vals);
            against(c, &mut rep, "contracted ideal", &out, expected.as_deref(), 3)?;
            rep.check(flatness_check(&src, &out, common.degree.unwrap_or(4))?);
            vec![rep]
        }
        Command::Limit { common, param, against: ag } => {
            let p = input_presentation(c, common)?;
            let out = parameter_limit(&p, param)?;
            let mut rep = PipelineReport::new("limit");
            rep.output("limit", &out);
            against(c, &mut rep, "limit", &out, ag.as_deref(), common.degree.unwrap_or(3))?;
            vec![rep]
        }
        Command::Coact { common } => {
            let spec = match (&common.catalog, &common.file) {
                (Some(id), _) => c.coaction(id)?,
                (None, Some(f)) => CoactionFile::parse(&read(f)?)?.resolve(|s| load_presentation(c, s))?,
                _ => return Err(Error::Input("one of --catalog or --file is required".into())),
            };
            vec![single("coact", coaction_check(&spec)?)]
        }
        Command::Pbw { common } => {
            let p = input_presentation(c, common)?;
            let d = common.degree.unwrap_or(4);
            let rs = rewriting_to_degree(&p, d)?;
            let mut chk = confluence_check(&rs, d);
            chk.check = "pbw".into();
            let dims = hilbert_dims(&rs, d);
            chk.note(format!("dimensions {:?}", dims.dims));
            vec![single("pbw", chk)]
        }
        Command::Confluence { common } => {
            let p = input_presentation(c, common)?;
            let rs = orient_relations(&p)?;
            vec![single("confluence", confluence_check(&rs, common.degree.unwrap_or(3)))]
        }
        Command::Compare { common, with } => {
            let a = input_presentation(c, common)?;
            let b = load_presentation(c, with)?;
            vec![single("compare", compare("presentations", &a, &b, common.degree.unwrap_or(3))?)]
        }
        Command::Quotient { common, set, against: ag } => {
            let p = input_presentation(c, common)?;
            let (g, v) = set.split_once('=').ok_or_else(|| Error::Input(format!("expected GEN=VALUE, got `{set}`")))?;
            let value = ParseContext::scalars(p.params.clone()).parse_scalar(v.trim())?;
            let (out, info) = quotient_set_generator(&p, g.trim(), &value)?;
            let mut rep = PipelineReport::new("quotient");
            let mut chk = CheckReport::new("quotient", &[&p.name]);
            for n in &info.notes {
                chk.note(n.clone());
            }
            if info.collapsing {
                chk.note("the quotient is not a flat specialisation");
            }
            rep.check(chk);
            rep.output("quotient", &out);
            against(c, &mut rep, "quotient", &out, ag.as_deref(), common.degree.unwrap_or(3))?;
            vec![rep]
        }
        Command::Catalog { .. } | Command::Pipeline { .. } => unreachable!(),
    })
}

fn catalog_text(c: &Catalog, id: Option<&str>) -> Result<(String, serde_json::Value)> {
    let Some(id) = id else {
        let mut s = String::new();
        let mut list = Vec::new();
        for e in c.entries() {
            s.push_str(&format!("{:<24} {:<13} {}\n", e.id, e.payload.kind(), e.title));
            list.push(serde_json::json!({ "id": e.id, "kind": e.payload.kind(), "title": e.title }));
        }
        return Ok((s, serde_json::Value::Array(list)));
    };
    let e = c.get(id)?;
    let mut s = format!("{} ({})\n{}\n", e.id, e.payload.kind(), e.title);
    for n in &e.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    let payload = match &e.payload {
        Payload::RMatrix(r) => {
            s.push_str(&r.matrix.to_string());
            serde_json::to_value(RMatrixFile::from_matrix(&r.matrix, &r.params, &r.parities))
        }
        Payload::Presentation(p) => {
            s.push_str(&p.to_string());
            serde_json::to_value(PresentationFile::from_presentation(p))
        }
        Payload::Map(m) => {
            s.push_str(&format!("source: {}\n", m.source));
            for (g, img) in &m.map.images {
                s.push_str(&format!("    {g} -> {img}\n"));
            }
            serde_json::to_value(BasisMapFile::from_map(&m.map))
        }
        Payload::Coaction(spec) => {
            s.push_str(&format!("group: {}\nspace: {}\n", spec.group.name, spec.space.name));
            for row in &spec.matrix {
                s.push_str(&format!("    [{}]\n", row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")));
            }
            Ok(serde_json::json!({
                "group": spec.group.name,
                "space": spec.space.name,
                "matrix": spec.matrix.iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }))
        }
        Payload::Contraction(ce) => {
            s.push_str(&format!("source: {}\nexpected: {}\n", ce.source, ce.expected));
            serde_json::to_value(SchemeFile::from_scheme(&ce.scheme))
        }
        Payload::Pipeline => Ok(serde_json::Value::Null),
    }
    .expect("serializable");
    Ok((
        s,
        serde_json::json!({ "id": e.id, "kind": e.payload.kind(), "title": e.title, "notes": e.notes, "payload": payload }),
    ))
}

fn write_json(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

/// Parse `argv` (program name first) and run the command.
pub fn run_command<I, S>(argv: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Run { code, stdout: text, stderr: String::new() }
            } else {
                Run { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => Run { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cmd: &Command) -> Result<Run> {
    let c = Catalog::builtin()?;
    if let Command::Catalog { id, json, quiet } = cmd {
        let (text, value) = catalog_text(&c, id.as_deref())?;
        if let Some(path) = json {
            write_json(path, &to_json(&value))?;
        }
        return Ok(Run { code: EXIT_PASS, stdout: if *quiet { String::new() } else { text }, stderr: String::new() });
    }
    let (reports, json, quiet) = match cmd {
        Command::Pipeline { name, json, quiet } => (run_pipeline(&c, name)?, json.clone(), *quiet),
        other => {
            let common = common_of(other);
            (execute(&c, other)?, common.json.clone(), common.quiet)
        }
    };
    let result = reports.iter().fold(Outcome::Pass, |acc, r| super::pipelines::worst(acc, r.result));
    if let Some(path) = json {
        write_json(&path, &to_json(&reports))?;
    }
    let mut stdout = if quiet { String::new() } else { render(&reports) };
    stdout.push_str(&format!("result: {result}\n"));
    Ok(Run { code: exit_code(result), stdout, stderr: String::new() })
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::VerifyYbe { common }
        | Command::Derive { common, .. }
        | Command::Transform { common, .. }
        | Command::Contract { common, .. }
        | Command::Limit { common, .. }
        | Command::Coact { common }
        | Command::Pbw { common }
        | Command::Confluence { common }
        | Command::Compare { common, .. }
        | Command::Quotient { common, .. } => common,
        Command::Catalog { .. } | Command::Pipeline { .. } => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Run {
        run_command(std::iter::once("qplane").chain(args.iter().copied()))
    }

    #[test]
    fn ybe_exit_codes() {
        assert_eq!(run(&["verify-ybe", "--catalog", "R.glq2"]).code, EXIT_PASS);
        assert_eq!(run(&["verify-ybe", "--catalog", "nosuch"]).code, EXIT_USAGE);
        assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    }

    #[test]
    fn derive_group_matches() {
        let r = run(&["derive", "--catalog", "R.glq2", "--target", "group", "--against", "pres.eq6"]);
        assert_eq!(r.code, EXIT_PASS, "{}", r.stdout);
    }

    #[test]
    fn quotient_of_flag_superspace() {
        let r = run(&["quotient", "--catalog", "pres.eq24", "--set", "x=1", "--against", "pres.eq25"]);
        assert_eq!(r.code, EXIT_PASS, "{}{}", r.stdout, r.stderr);
    }

    #[test]
    fn default_group_names() {
        let r = with_group(
            RMatrixFile::parse(
                r#"{"dim":4,"entries":[["q","0","0","0"],["0","1","0","0"],["0","q-1/q","1","0"],["0","0","0","q"]]}"#,
            )
            .unwrap()
            .to_entry()
            .unwrap(),
        )
        .unwrap();
        let (gm, prec) = r.group.unwrap();
        assert_eq!(gm.name(1, 0), "t21");
        assert_eq!(prec[0], "t22");
    }
}
