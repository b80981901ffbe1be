use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hydra_core::catalog::{self, Identity, Scale, VerificationReport};
use hydra_core::hydra::{self, Heads};
use hydra_core::json::{to_json, JsonCoefficient};
use hydra_core::languages::{build_language, LanguageKind};
use hydra_core::oracle::count_table;
use hydra_core::qseries::{closed_form, umbral_within, ClosedForm, ZQSeries};
use hydra_core::trees::{insertion_tree, preorder_word, validate_tree, Verdict};
use hydra_core::{Error, Rational, Series, SetSpec, TPoly, TruncationWindow};

const DEFAULT_L: usize = 5;
const DEFAULT_K: i32 = 14;
const DEFAULT_Q: i64 = 20;

/// Exact noncommutative series, shift-plethysm and q-series identity checks.
#[derive(Parser)]
#[command(name = "hydra", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the truncation of a named series.
    Expand {
        #[command(flatten)]
        series: SeriesArgs,
        /// Maximum word length.
        #[arg(long = "L", default_value_t = DEFAULT_L)]
        max_len: usize,
        /// Maximum letter index.
        #[arg(long = "K", default_value_t = DEFAULT_K)]
        max_letter: i32,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Text)]
        format: SeriesFormat,
    },
    /// Check catalogued identities; exit 1 if any fails.
    Verify {
        /// Identity id, or a family name matching every `family:` id.
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        id: Option<String>,
        /// Run every acceptance identity.
        #[arg(long)]
        all: bool,
        /// Override the word-length (or z-degree) bound.
        #[arg(long = "L")]
        max_len: Option<usize>,
        /// Override the letter (or q-degree) bound.
        #[arg(long = "K")]
        max_letter: Option<i32>,
        /// Override the enumeration weight bound.
        #[arg(long = "Q")]
        weight: Option<u32>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Print the (z, t, q) coefficient table of a closed form or of the
    /// umbral image of a named series.
    Qtable {
        /// Closed form: pm, cm, rm, hydra-a, ps, cshat, local-minima.
        #[arg(long, conflicts_with = "series")]
        form: Option<String>,
        #[command(flatten)]
        series: OptionalSeriesArgs,
        /// Maximum z-degree.
        #[arg(long = "L", default_value_t = DEFAULT_L)]
        zmax: usize,
        /// Maximum q-degree.
        #[arg(long = "Q", default_value_t = DEFAULT_Q)]
        qmax: i64,
        #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
        format: TableFormat,
    },
    /// Build the insertion tree of a composition and read it back.
    Bijection {
        /// Comma-separated positive parts, e.g. 3,5,7,7,4,5.
        #[arg(long, value_delimiter = ',', required = true)]
        composition: Vec<i32>,
    },
    /// Compare the words of a language, counted by length and weight, with
    /// brute-force enumeration.
    OracleCompare {
        #[command(flatten)]
        series: SeriesArgs,
        /// Maximum number of parts.
        #[arg(long = "L", default_value_t = DEFAULT_L)]
        max_len: usize,
        /// Maximum total weight.
        #[arg(long = "Q", default_value_t = DEFAULT_K as u32)]
        weight: u32,
    },
    /// List the catalogued identities with their default scales.
    ListIdentities {
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Args)]
struct SeriesArgs {
    /// compositions, carlitz, repeated-letter, sigma, pi, pi-upper, p, p-s,
    /// c, c-shat, hydra-R, hydra-A, local-minima.
    #[arg(long)]
    series: String,
    #[command(flatten)]
    params: SeriesParams,
}

#[derive(Args)]
struct OptionalSeriesArgs {
    /// Named series whose umbral image is tabulated.
    #[arg(long)]
    series: Option<String>,
    #[command(flatten)]
    params: SeriesParams,
}

#[derive(Args)]
struct SeriesParams {
    /// Integer parameter; omitted means infinity where that makes sense.
    #[arg(long)]
    m: Option<u32>,
    /// Set specification such as `odd`, `2..`, `1..3`, `{2}`, `1 mod 3`.
    #[arg(long = "set")]
    set: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Tsv,
    Json,
}

/// Outcome of a subcommand: success, or a failed comparison.
enum Status {
    Ok,
    Mismatch,
}

enum Failure {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<Status, Failure>;
type Out<'a> = &'a mut dyn Write;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut buffered = BufWriter::new(stdout.lock());
    let out: Out = &mut buffered;
    let result = match cli.command {
        Command::Expand { series, max_len, max_letter, format } => expand(out, &series, max_len, max_letter, format),
        Command::Verify { id, all, max_len, max_letter, weight, format } => {
            verify(out, id.as_deref(), all, (max_len, max_letter, weight), format)
        }
        Command::Qtable { form, series, zmax, qmax, format } => {
            qtable(out, form.as_deref(), &series, zmax, qmax, format)
        }
        Command::Bijection { composition } => bijection(out, &composition),
        Command::OracleCompare { series, max_len, weight } => oracle_compare(out, &series, max_len, weight),
        Command::ListIdentities { format } => list_identities(out, format),
    };
    let result = result.and_then(|status| {
        buffered.flush()?;
        Ok(status)
    });
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(1),
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            if catalog::is_usage_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn need_m(name: &str, m: Option<u32>) -> Result<u32, Error> {
    m.ok_or_else(|| Error::InvalidParam(format!("series {name} needs --m")))
}

fn need_set(name: &str, set: &Option<String>) -> Result<SetSpec, Error> {
    set.as_deref().ok_or_else(|| Error::InvalidParam(format!("series {name} needs --set")))?.parse()
}

fn heads(m: Option<u32>) -> Heads {
    m.map_or(Heads::Infinite, Heads::Finite)
}

/// A named series resolved to a language family or a derived construction.
enum Named {
    Language(LanguageKind),
    HydraR(Heads),
    HydraA(Heads),
    LocalMinima,
}

fn resolve(name: &str, p: &SeriesParams) -> Result<Named, Error> {
    let m = || need_m(name, p.m);
    Ok(match name {
        "compositions" => Named::Language(LanguageKind::Compositions),
        "carlitz" => Named::Language(LanguageKind::Carlitz),
        "repeated-letter" => Named::Language(LanguageKind::RepeatedLetter),
        "sigma" => Named::Language(LanguageKind::Sigma(need_set(name, &p.set)?)),
        "pi" => Named::Language(p.m.map_or(LanguageKind::PiInf, |m| LanguageKind::PiM(m.into()))),
        "pi-upper" => Named::Language(p.m.map_or(LanguageKind::PiUpperInf, |m| LanguageKind::PiUpperM(m.into()))),
        "p" => Named::Language(LanguageKind::PM(m()?.into())),
        "p-s" => Named::Language(LanguageKind::PS(need_set(name, &p.set)?)),
        "c" => Named::Language(LanguageKind::CM(m()?.into())),
        "c-shat" => Named::Language(LanguageKind::CShat(need_set(name, &p.set)?)),
        "hydra-R" | "hydra-r" => Named::HydraR(heads(p.m)),
        "hydra-A" | "hydra-a" => Named::HydraA(heads(p.m)),
        "local-minima" => Named::LocalMinima,
        other => return Err(Error::InvalidParam(format!("unknown series {other:?}"))),
    })
}

fn build(named: &Named, window: &TruncationWindow) -> Result<Series, Error> {
    match named {
        Named::Language(kind) => build_language(kind, window),
        Named::HydraR(Heads::Infinite) => Err(Error::InvalidParam("hydra-R needs --m".into())),
        Named::HydraR(h) => hydra::hydra_r(*h, window),
        Named::HydraA(h) => hydra::partition_trees(*h, window),
        Named::LocalMinima => unreachable!("t-marked series is handled separately"),
    }
}

fn print_series<C: JsonCoefficient>(out: Out, s: &Series<C>, format: SeriesFormat) -> io::Result<()> {
    match format {
        SeriesFormat::Json => writeln!(out, "{}", to_json(s)),
        SeriesFormat::Text => {
            writeln!(out, "# window {}", s.window())?;
            for (w, c) in s.sorted_terms() {
                writeln!(out, "X{w}\t{c}")?;
            }
            Ok(())
        }
    }
}

fn expand(out: Out, args: &SeriesArgs, max_len: usize, max_letter: i32, format: SeriesFormat) -> CmdResult {
    let window = TruncationWindow::checked(max_len, max_letter, 0)?;
    let named = resolve(&args.series, &args.params)?;
    if let Named::LocalMinima = named {
        print_series(out, &hydra::compositions_by_minima(&window)?, format)?;
    } else {
        print_series(out, &build(&named, &window)?, format)?;
    }
    Ok(Status::Ok)
}

fn verify(
    out: Out,
    id: Option<&str>,
    all: bool,
    overrides: (Option<usize>, Option<i32>, Option<u32>),
    format: ReportFormat,
) -> CmdResult {
    let identities: Vec<Identity> = if all {
        catalog::catalog().into_iter().filter(|i| i.criterion > 0).collect()
    } else {
        let pattern = id.expect("clap requires --id without --all");
        let found = catalog::find(pattern);
        if found.is_empty() {
            return Err(Error::InvalidParam(format!("no identity matches {pattern:?}; see list-identities")).into());
        }
        found
    };
    let (max_len, max_letter, weight) = overrides;
    let scale_for = |i: &Identity| Scale {
        max_len: max_len.unwrap_or(i.defaults.max_len),
        max_letter: max_letter.unwrap_or(i.defaults.max_letter),
        weight: weight.unwrap_or(i.defaults.weight),
    };
    let reports: Vec<VerificationReport> = if overrides == (None, None, None) {
        catalog::verify_all(&identities).into_iter().collect::<Result<_, _>>()?
    } else {
        identities.iter().map(|i| i.verify_at(&scale_for(i))).collect::<Result<_, _>>()?
    };
    match format {
        ReportFormat::Text => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
        }
        ReportFormat::Json => {
            let values: Vec<serde_json::Value> = reports.iter().map(serde_json::Value::from).collect();
            writeln!(out, "{}", serde_json::Value::Array(values))?;
        }
    }
    Ok(if reports.iter().all(|r| r.passed) { Status::Ok } else { Status::Mismatch })
}

fn parse_form(name: &str, p: &SeriesParams) -> Result<ClosedForm, Error> {
    let m = || need_m(name, p.m);
    Ok(match name {
        "pm" => ClosedForm::Pm(m()?),
        "cm" => ClosedForm::Cm(m()?),
        "rm" => ClosedForm::Rm(m()?),
        "hydra-a" => ClosedForm::HydraA(m()?),
        "ps" => ClosedForm::PS(need_set(name, &p.set)?),
        "cshat" => ClosedForm::CShat(need_set(name, &p.set)?),
        "local-minima" => ClosedForm::LocalMinima,
        other => return Err(Error::InvalidParam(format!("unknown closed form {other:?}"))),
    })
}

fn print_table(out: Out, t: &ZQSeries, format: TableFormat) -> io::Result<()> {
    match format {
        TableFormat::Tsv => write!(out, "{}", t.to_tsv()),
        TableFormat::Json => writeln!(out, "{}", t.to_json()),
    }
}

fn qtable(
    out: Out,
    form: Option<&str>,
    series: &OptionalSeriesArgs,
    zmax: usize,
    qmax: i64,
    format: TableFormat,
) -> CmdResult {
    let table = match (form, &series.series) {
        (Some(f), _) => closed_form(&parse_form(f, &series.params)?, zmax, qmax)?,
        (None, Some(name)) => {
            let max_letter =
                i32::try_from(qmax).map_err(|_| Error::InvalidParam(format!("--Q {qmax} out of range")))?;
            let window = TruncationWindow::checked(zmax, max_letter, 0)?;
            match resolve(name, &series.params)? {
                Named::LocalMinima => umbral_within(&hydra::compositions_by_minima(&window)?, zmax, qmax)?,
                named => umbral_within(&build(&named, &window)?, zmax, qmax)?,
            }
        }
        (None, None) => return Err(Error::InvalidParam("qtable needs --form or --series".into()).into()),
    };
    print_table(out, &table, format)?;
    Ok(Status::Ok)
}

fn bijection(out: Out, kappa: &[i32]) -> CmdResult {
    let factors = hydra::local_minima_factor(kappa)?;
    let pi_inf = LanguageKind::PiInf.linked()?.expect("linked family");
    let mut ok = true;
    for block in (0..factors.len()).map(|i| {
        let mut w = vec![factors.minima[i]];
        w.extend_from_slice(&factors.blocks[i]);
        w
    }) {
        let tree = insertion_tree(&block)?;
        let back = preorder_word(&tree);
        let valid = validate_tree(&tree, &pi_inf, block[0]) == Verdict::Valid;
        let round_trip = back[..] == block[..];
        ok &= valid && round_trip;
        writeln!(out, "{tree}")?;
        writeln!(
            out,
            "  preorder {back}: round trip {}, Pi-infinity-enriched {}",
            if round_trip { "ok" } else { "FAILED" },
            if valid { "yes" } else { "no" }
        )?;
    }
    if factors.len() > 1 {
        writeln!(out, "{} cyclic blocks, cut before each local minimum", factors.len())?;
    }
    Ok(if ok { Status::Ok } else { Status::Mismatch })
}

fn oracle_compare(out: Out, args: &SeriesArgs, max_len: usize, weight: u32) -> CmdResult {
    let Named::Language(kind) = resolve(&args.series, &args.params)? else {
        return Err(Error::InvalidParam(format!("no enumerator for {}", args.series)).into());
    };
    let oracle = catalog::oracle_for(&kind).ok_or_else(|| Error::InvalidParam(format!("no enumerator for {kind}")))?;
    let table = count_table(&oracle, weight)?;
    let lang = kind.linked()?.expect("enumerable families are linked");
    let qmax = i64::from(weight);
    let mut lhs = ZQSeries::zero(max_len, 0, qmax);
    let one = TPoly::constant(Rational::one());
    for w in lang.words_up_to_weight(max_len, qmax) {
        lhs.add_term(w.len(), w.weight(), &one);
    }
    match catalog::compare_table(&lhs, &table, max_len, weight.into()) {
        None => {
            writeln!(out, "PASS {kind}: counts match enumeration for <= {max_len} parts, weight <= {weight}")?;
            Ok(Status::Ok)
        }
        Some(witness) => {
            writeln!(out, "FAIL {kind}: {witness}")?;
            Ok(Status::Mismatch)
        }
    }
}

fn list_identities(out: Out, format: ReportFormat) -> CmdResult {
    let all = catalog::catalog();
    match format {
        ReportFormat::Text => {
            for i in &all {
                let tag = if i.criterion > 0 { format!("C{:02}", i.criterion) } else { "sup".into() };
                writeln!(out, "{}\t{tag}\t{}\t{}", i.id, i.defaults, i.summary)?;
            }
        }
        ReportFormat::Json => {
            let values: Vec<serde_json::Value> = all
                .iter()
                .map(|i| {
                    serde_json::json!({
                        "id": i.id,
                        "criterion": i.criterion,
                        "summary": i.summary,
                        "max_len": i.defaults.max_len,
                        "max_letter": i.defaults.max_letter,
                        "weight": i.defaults.weight,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(values))?;
        }
    }
    Ok(Status::Ok)
}
