use std::fmt::Display;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use twistalex::formats::{HomFile, RepFile};
use twistalex::knots::{self, BUNDLED_HOMS, FIGURE_EIGHT_REP_MOD_7};
use twistalex::obstruction::{
    surjection_obstruction, verify_homomorphism, HomCandidate, RelatorFailure,
};
use twistalex::rep_search::{enumerate_sl2_reps, numerator_census, RepFilter, SearchOptions};
use twistalex::ring::{is_prime, Integers, PrimeField, Ring};
use twistalex::twisted::{twisted_alexander, Representation, TwistedAlexPoly};
use twistalex::{AbelianizationMap, PresentationFile};

const MAX_DEFAULT_PRIME: u64 = 97;

#[derive(Parser)]
#[command(name = "twistalex", version, about = "Twisted Alexander polynomials of knot groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Twisted Alexander polynomial of one presentation and representation.
    Compute(ComputeArgs),
    /// Distinct numerators over all SL(2, F_p) representations.
    Census(CensusArgs),
    /// Try to rule out a surjection between two knot groups.
    Scan(ScanArgs),
    /// Check a homomorphism candidate against all SL(2, F_p) representations
    /// of its target (a necessary condition only).
    Verify(VerifyArgs),
    /// Bundled knot presentations.
    Knots {
        #[command(subcommand)]
        action: KnotsAction,
    },
}

#[derive(Subcommand)]
enum KnotsAction {
    List,
    Show { id: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    NonabelianImage,
    Irreducible,
}

impl From<FilterArg> for RepFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => RepFilter::All,
            FilterArg::NonabelianImage => RepFilter::NonabelianImage,
            FilterArg::Irreducible => RepFilter::Irreducible,
        }
    }
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Allow primes above 97.
    #[arg(long)]
    allow_large_prime: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "all")]
    filter: FilterArg,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    node_budget: Option<u64>,
}

impl SearchArgs {
    fn options(&self, prime: u64) -> SearchOptions {
        let mut o = SearchOptions::new(prime)
            .with_filter(self.filter.into())
            .with_parallel_width(self.jobs);
        o.node_budget = self.node_budget;
        o
    }
}

#[derive(Args)]
struct ComputeArgs {
    /// Presentation file, or the id of a bundled knot.
    #[arg(long)]
    presentation: String,
    /// Representation file.
    #[arg(long, conflicts_with = "trivial_rep", required_unless_present = "trivial_rep")]
    rep: Option<String>,
    /// Use the trivial 1-dimensional representation (over Z unless --prime).
    #[arg(long)]
    trivial_rep: bool,
    #[arg(long)]
    prime: Option<u64>,
    /// Generator whose block column is removed (1-based).
    #[arg(long)]
    column: Option<usize>,
    /// Cancel common factors of numerator and denominator.
    #[arg(long)]
    reduce: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    presentation: String,
    #[arg(long)]
    prime: u64,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    /// May be given several times; one report per prime.
    #[arg(long, required = true)]
    prime: Vec<u64>,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Candidate file, or the name of a bundled candidate.
    #[arg(long)]
    hom: String,
    /// Overrides the `source:` header of the candidate file.
    #[arg(long)]
    source: Option<String>,
    /// Overrides the `target:` header of the candidate file.
    #[arg(long)]
    target: Option<String>,
    #[arg(long, default_value_t = 7)]
    prime: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    node_budget: Option<u64>,
    #[command(flatten)]
    common: Common,
}

fn check_prime(p: u64, common: &Common) -> Result<()> {
    if !is_prime(p) {
        bail!("{p} is not prime");
    }
    if p > MAX_DEFAULT_PRIME && !common.allow_large_prime {
        bail!("prime {p} is above {MAX_DEFAULT_PRIME}; pass --allow-large-prime to use it");
    }
    Ok(())
}

/// A path to an existing file, else a bundled id (a trailing `.pres` is
/// ignored).
fn load_presentation(input: &str) -> Result<PresentationFile> {
    if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
        let mut f = PresentationFile::parse(&text).with_context(|| format!("parsing {input}"))?;
        if f.name.is_none() {
            f.name = Path::new(input).file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        return Ok(f);
    }
    let id = input.strip_suffix(".pres").unwrap_or(input);
    let id = Path::new(id).file_name().map_or(id.to_string(), |s| s.to_string_lossy().into_owned());
    if knots::bundled_text(&id).is_some() {
        return Ok(knots::load_bundled(&id)?);
    }
    bail!("no such file or bundled knot: {input}")
}

fn read_text(input: &str, bundled: &[(&str, &str)]) -> Result<String> {
    if Path::new(input).is_file() {
        return std::fs::read_to_string(input).with_context(|| format!("reading {input}"));
    }
    let name = Path::new(input).file_name().map_or(input.to_string(), |s| s.to_string_lossy().into_owned());
    bundled
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| anyhow!("no such file or bundled data: {input}"))
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn emit(format: Format, text: impl Display, value: serde_json::Value) -> Result<()> {
    match format {
        Format::Text => out(&format!("{text}\n")),
        Format::Json => out(&format!("{}\n", serde_json::to_string_pretty(&value)?)),
    }
}

fn compute_with<R: Ring>(
    args: &ComputeArgs,
    file: &PresentationFile,
    rep: &Representation<R>,
    alpha: &AbelianizationMap,
) -> Result<()>
where
    twistalex::LaurentPoly<R>: Display,
{
    let d: TwistedAlexPoly<R> = twisted_alexander(&file.presentation, rep, alpha, args.column)?;
    let d = if args.reduce { d.reduced() } else { d };
    let ring = rep.ring().kind().to_string();
    let text = format!(
        "presentation: {}\nring:         {}\ncolumn:       {}\nnumerator:    {}\ndenominator:  {}{}",
        file.display_name(),
        ring,
        d.column,
        d.numerator,
        d.denominator,
        if d.deficient { "\nnote:         fewer than u-1 relators, numerator is 0" } else { "" }
    );
    let value = json!({
        "presentation": file.display_name(),
        "ring": ring,
        "column": d.column,
        "numerator": d.numerator.to_string(),
        "denominator": d.denominator.to_string(),
        "reduced": args.reduce,
        "deficient": d.deficient,
    });
    emit(args.common.format, text, value)
}

fn cmd_compute(args: &ComputeArgs) -> Result<()> {
    let file = load_presentation(&args.presentation)?;
    let alpha = file.alpha_or_default();
    let u = file.presentation.generator_count();
    if args.trivial_rep {
        return match args.prime {
            None => compute_with(args, &file, &Representation::trivial(&Integers, u), &alpha),
            Some(p) => {
                check_prime(p, &args.common)?;
                let f = PrimeField::new(p)?;
                compute_with(args, &file, &Representation::trivial(&f, u), &alpha)
            }
        };
    }
    let input = args.rep.as_deref().expect("clap requires --rep without --trivial-rep");
    let text = read_text(input, &[("4_1_rho.rep", FIGURE_EIGHT_REP_MOD_7)])?;
    let rep_file = RepFile::parse(&text).with_context(|| format!("parsing {input}"))?;
    if let Some(p) = args.prime {
        if p != rep_file.prime {
            bail!("--prime {p} disagrees with the representation file (prime {})", rep_file.prime);
        }
    }
    check_prime(rep_file.prime, &args.common)?;
    let rep = rep_file.to_representation(&file.presentation).with_context(|| format!("validating {input}"))?;
    compute_with(args, &file, &rep, &alpha)
}

fn cmd_census(args: &CensusArgs) -> Result<()> {
    check_prime(args.prime, &args.common)?;
    let file = load_presentation(&args.presentation)?;
    let census = numerator_census(&file.presentation, &file.alpha_or_default(), &args.search.options(args.prime))?;
    let report = census.report(&file.display_name());
    let mut text = format!(
        "presentation:    {}\nprime:           {}\nfilter:          {}\nrepresentations: {}\nskipped:         {}\nfiltered out:    {}\ndistinct:        {}",
        report.presentation,
        report.prime,
        report.filter,
        report.representations,
        report.skipped,
        report.filtered_out,
        report.distinct
    );
    for e in &report.polynomials {
        text.push_str(&format!("\n{:>8}  {}", e.multiplicity, e.polynomial));
    }
    emit(args.common.format, text, serde_json::to_value(&report)?)
}

fn cmd_scan(args: &ScanArgs) -> Result<()> {
    for &p in &args.prime {
        check_prime(p, &args.common)?;
    }
    let source = load_presentation(&args.source)?;
    let target = load_presentation(&args.target)?;
    let mut reports = Vec::new();
    for &p in &args.prime {
        reports.push(surjection_obstruction(&source, &target, &args.search.options(p))?);
    }
    let text: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
    let value = serde_json::to_value(reports.iter().map(|r| r.record()).collect::<Vec<_>>())?;
    emit(args.common.format, text.join("\n\n"), value)
}

/// Returns whether the candidate passed.
fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    check_prime(args.prime, &args.common)?;
    let text = read_text(&args.hom, BUNDLED_HOMS)?;
    let file = HomFile::parse(&text).with_context(|| format!("parsing {}", args.hom))?;
    let source_input = args
        .source
        .clone()
        .or_else(|| file.source.clone())
        .ok_or_else(|| anyhow!("candidate has no `source:` header; pass --source"))?;
    let target_input = args
        .target
        .clone()
        .or_else(|| file.target.clone())
        .ok_or_else(|| anyhow!("candidate has no `target:` header; pass --target"))?;
    let source = load_presentation(&source_input)?;
    let target = load_presentation(&target_input)?;
    let h = HomCandidate::from_file(&file, source.presentation.clone(), target.presentation.clone())?;
    let mut opts = SearchOptions::new(args.prime).with_parallel_width(args.jobs);
    opts.node_budget = args.node_budget;
    let battery = enumerate_sl2_reps(&target.presentation, &opts)?;
    let report = verify_homomorphism(&h, &battery, &target.alpha_or_default())?;

    let mut lines = vec![
        format!("source:  {}", source.display_name()),
        format!("target:  {}", target.display_name()),
        format!("battery: all {} representations into SL(2, F_{})", battery.len(), args.prime),
    ];
    for r in 1..=report.relators {
        let fails: Vec<&RelatorFailure> = report
            .failures
            .iter()
            .filter(|f| matches!(f, RelatorFailure::Abelian { relator, .. } | RelatorFailure::Representation { relator, .. } if *relator == r))
            .collect();
        if fails.is_empty() {
            lines.push(format!("relator {r}: ok (exponent sum 0, identity under every battery representation)"));
        }
        for f in fails {
            match f {
                RelatorFailure::Abelian { weighted_sum, .. } => {
                    lines.push(format!("relator {r}: FAIL abelianized image has exponent sum {weighted_sum}"))
                }
                RelatorFailure::Representation { representation, .. } => {
                    lines.push(format!("relator {r}: FAIL not the identity under battery representation {representation}:"));
                    let rendered = RepFile::render(None, &target.presentation, &battery[*representation]);
                    lines.extend(rendered.lines().map(|l| format!("    {l}")));
                }
            }
        }
    }
    if report.covers_target_generators {
        lines.push("images contain every target generator".into());
    } else {
        lines.push(format!("target generators missing from images: {}", report.missing_target_generators.join(", ")));
    }
    lines.push("note: a pass is a necessary condition only; the word problem is not decided".into());
    lines.push(format!("result: {}", if report.passed { "pass" } else { "fail" }));

    let mut value = serde_json::to_value(&report)?;
    value["source"] = json!(source.display_name());
    value["target"] = json!(target.display_name());
    value["prime"] = json!(args.prime);
    emit(args.common.format, lines.join("\n"), value)?;
    Ok(report.passed)
}

fn cmd_knots(action: &KnotsAction) -> Result<()> {
    match action {
        KnotsAction::List => {
            let mut text = String::new();
            for id in knots::bundled_ids() {
                let f = knots::load_bundled(id)?;
                text += &format!(
                    "{id:<8} {} generators, {} relators\n",
                    f.presentation.generator_count(),
                    f.presentation.relator_count()
                );
            }
            out(&text)?;
        }
        KnotsAction::Show { id } => {
            let id = id.strip_suffix(".pres").unwrap_or(id);
            let text = knots::bundled_text(id).ok_or_else(|| anyhow!("no bundled knot `{id}`"))?;
            out(text)?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Compute(a) => cmd_compute(a)?,
        Command::Census(a) => cmd_census(a)?,
        Command::Scan(a) => cmd_scan(a)?,
        Command::Verify(a) => {
            if !cmd_verify(a)? {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Knots { action } => cmd_knots(action)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
