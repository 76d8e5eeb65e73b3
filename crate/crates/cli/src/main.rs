use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use greymark::io::{load_counts_csv, load_scale_file, load_scores_csv};
use greymark::report::{
    fmt2, render_equivalence_text, render_standings_text, render_text, EquivalenceJson, ReportJson,
};
use greymark::{
    assess, check_equivalence, compare_groups, scores_to_distribution, AssessmentReport, CalcError,
    GradeDistribution, GradeScale, ScaleFileError, Whitening,
};

/// Grey-number assessment of linguistic grades, and a grey-number calculator.
#[derive(Debug, Parser)]
#[command(name = "greymark", version, about)]
struct Cli {
    /// Grade scale file (`<label> <lower> <upper>` per line); defaults to A/B/C/D/F over 0-100
    #[arg(long, global = true, value_name = "FILE")]
    scale: Option<PathBuf>,

    /// Whitening weight t in [0, 1]
    #[arg(long = "t", global = true, default_value_t = 0.5, value_parser = parse_t)]
    t: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Also run the triangular fuzzy number cross-check
    #[arg(long, global = true)]
    check_tfn: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Assess groups from grade counts or from raw scores
    Assess(AssessArgs),
    /// Rank groups by whitened mean performance
    Compare(CompareArgs),
    /// Check a grade scale file
    ValidateScale {
        /// Scale file to check; defaults to --scale or the built-in scale
        file: Option<PathBuf>,
    },
    /// Evaluate a grey-number expression such as `([85,100] + [75,84]) / 2`
    Calc {
        #[arg(required = true, allow_hyphen_values = true, trailing_var_arg = true)]
        expr: Vec<String>,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["counts", "scores"])))]
struct AssessArgs {
    /// CSV with header `group,grade,count`
    #[arg(long, value_name = "FILE")]
    counts: Option<PathBuf>,

    /// CSV with header `subject,score`; all scores are pooled into one group
    #[arg(long, value_name = "FILE")]
    scores: Option<PathBuf>,

    /// With --scores, also assess each subject on its own
    #[arg(long, requires = "scores")]
    per_subject: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).multiple(true).args(["counts", "scores"])))]
struct CompareArgs {
    /// CSV with header `group,grade,count`; each group is compared
    #[arg(long, value_name = "FILE")]
    counts: Option<PathBuf>,

    /// Score sheets, each pooled into one group named after the file
    #[arg(long, value_name = "FILE", num_args = 1..)]
    scores: Vec<PathBuf>,
}

fn parse_t(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    Whitening::new(t)
        .map(Whitening::value)
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let t = Whitening::new(cli.t)?;
    match &cli.command {
        Command::ValidateScale { file } => validate_scale(cli, file.as_deref()),
        Command::Calc { expr } => calc(cli, &expr.join(" ")),
        Command::Assess(args) => {
            let scale = active_scale(cli)?;
            run_assess(cli, args, &scale, t)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare(args) => {
            let scale = active_scale(cli)?;
            run_compare(cli, args, &scale, t)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn active_scale(cli: &Cli) -> Result<GradeScale> {
    match &cli.scale {
        Some(path) => Ok(load_scale_file(path)?),
        None => Ok(GradeScale::default_scale()),
    }
}

#[derive(Serialize)]
struct AssessJson {
    reports: Vec<ReportJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    raw_mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    raw_minus_whitened: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    tfn_check: Vec<EquivalenceJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    per_subject: Vec<ReportJson>,
}

fn group_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn run_assess(cli: &Cli, args: &AssessArgs, scale: &GradeScale, t: Whitening) -> Result<()> {
    let mut groups: Vec<(String, GradeDistribution)> = Vec::new();
    let mut raw_mean = None;
    let mut per_subject = Vec::new();

    if let Some(path) = &args.counts {
        groups = load_counts_csv(path, scale)?;
    } else if let Some(path) = &args.scores {
        let sheet = load_scores_csv(path, scale)?;
        groups.push((group_name(path), scores_to_distribution(&sheet, scale)?));
        raw_mean = Some(sheet.raw_mean()?);
        if args.per_subject {
            for (subject, _) in sheet.subjects() {
                let own = sheet.subject(subject).expect("subject from this sheet");
                let dist = scores_to_distribution(&own, scale)?;
                per_subject.push(assess(subject, &dist, scale, t)?);
            }
        }
    }

    let reports = groups
        .iter()
        .map(|(g, d)| assess(g, d, scale, t))
        .collect::<greymark::Result<Vec<_>>>()?;
    let tfn = if cli.check_tfn {
        groups
            .iter()
            .map(|(g, d)| Ok((g.clone(), check_equivalence(d, scale)?)))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let pooled_w = reports.first().map(|r| r.whitened);

    match cli.format {
        Format::Json => {
            let doc = AssessJson {
                reports: reports.iter().map(ReportJson::from).collect(),
                raw_mean,
                raw_minus_whitened: raw_mean.zip(pooled_w).map(|(m, w)| m - w),
                tfn_check: tfn
                    .iter()
                    .map(|(g, e)| EquivalenceJson::new(g, e))
                    .collect(),
                per_subject: per_subject.iter().map(ReportJson::from).collect(),
            };
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                out.push_str(&render_text(r));
            }
            if let (Some(m), Some(w)) = (raw_mean, pooled_w) {
                out.push_str(&format!("raw mean: {}\n", fmt2(m)));
                out.push_str(&format!("raw mean - w: {}\n", fmt2(m - w)));
            }
            for (g, e) in &tfn {
                out.push_str(&render_equivalence_text(g, e));
            }
            if !per_subject.is_empty() {
                out.push_str("per subject:\n");
                for r in &per_subject {
                    out.push_str(&render_text(r));
                }
            }
            print!("{out}");
        }
    }

    if tfn.iter().any(|(_, e)| !e.pass) {
        bail!("TFN equivalence check failed");
    }
    Ok(())
}

#[derive(Serialize)]
struct StandingJson {
    rank: usize,
    tied: bool,
    #[serde(flatten)]
    report: ReportJson,
}

fn run_compare(cli: &Cli, args: &CompareArgs, scale: &GradeScale, t: Whitening) -> Result<()> {
    let mut reports: Vec<AssessmentReport> = Vec::new();
    if let Some(path) = &args.counts {
        for (g, d) in load_counts_csv(path, scale)? {
            reports.push(assess(&g, &d, scale, t)?);
        }
    }
    for path in &args.scores {
        let sheet = load_scores_csv(path, scale)?;
        let dist = scores_to_distribution(&sheet, scale)?;
        reports.push(assess(&group_name(path), &dist, scale, t)?);
    }
    let standings = compare_groups(&reports)?;

    match cli.format {
        Format::Json => {
            let doc: Vec<StandingJson> = standings
                .iter()
                .map(|s| StandingJson {
                    rank: s.rank,
                    tied: s.tied,
                    report: ReportJson::from(&s.report),
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Text => print!("{}", render_standings_text(&standings)),
    }
    Ok(())
}

#[derive(Serialize)]
struct ScaleCheckJson {
    valid: bool,
    violations: Vec<String>,
}

fn validate_scale(cli: &Cli, file: Option<&Path>) -> Result<ExitCode> {
    let (source, parsed) = match file.or(cli.scale.as_deref()) {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            (path.display().to_string(), GradeScale::parse(&text))
        }
        None => (
            "built-in scale".to_string(),
            Ok(GradeScale::default_scale()),
        ),
    };

    let violations: Vec<String> = match &parsed {
        Ok(scale) => scale.validate().iter().map(ToString::to_string).collect(),
        Err(ScaleFileError::Invalid(v)) => v.iter().map(ToString::to_string).collect(),
        Err(syntax) => vec![syntax.to_string()],
    };

    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&ScaleCheckJson {
                valid: violations.is_empty(),
                violations: violations.clone(),
            })?
        ),
        Format::Text if violations.is_empty() => {
            let scale = parsed.as_ref().expect("valid scale");
            println!(
                "{source}: valid, {} grades over {}",
                scale.grades().len(),
                scale.domain()
            );
            print!("{scale}");
        }
        Format::Text => {
            for v in &violations {
                println!("{source}: {v}");
            }
        }
    }
    Ok(if violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct CalcJson {
    expr: String,
    lower: f64,
    upper: f64,
}

fn calc(cli: &Cli, text: &str) -> Result<ExitCode> {
    let tree = match greymark::parse_expr(text) {
        Ok(tree) => tree,
        Err(err) => {
            eprintln!("error: {err}");
            eprintln!("  {text}");
            let col = text
                .get(..err.offset)
                .map_or(err.offset, |s| s.chars().count());
            eprintln!("  {}^", " ".repeat(col));
            return Ok(ExitCode::from(1));
        }
    };
    let value = tree.eval().map_err(CalcError::from)?;
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&CalcJson {
                expr: tree.to_string(),
                lower: value.lower(),
                upper: value.upper(),
            })?
        ),
        Format::Text => println!("{value}"),
    }
    Ok(ExitCode::SUCCESS)
}
