use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dispersed_dyck::closed_forms::Family;
use dispersed_dyck::expand::{self, ExpandError, Mode, Source, TSpec};
use dispersed_dyck::verify::{self, Config};
use dispersed_dyck::DEFAULT_ORDER;

/// Dispersed Dyck path statistics: series expansion, b-files and
/// verification.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of a series.
    Expand {
        #[command(flatten)]
        series: SeriesArgs,
        /// `keep` or a rational value to substitute for t.
        #[arg(long, default_value = "keep")]
        t: TSpec,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print `n a(n)` lines for a series evaluated at a rational t.
    Bfile {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        t: TSpec,
    },
    /// Cross-check brute force, DP and closed forms.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_families)]
        family: Families,
        #[arg(long, default_value_t = 12)]
        oracle_max: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    family: Family,
    /// closed, meander, level:<j>[:<layer>], marks-closed or marks-meander.
    #[arg(long, default_value = "closed")]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_ORDER, value_parser = parse_order)]
    order: usize,
    #[arg(long, default_value = "auto")]
    source: Source,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone)]
struct Families(Vec<Family>);

fn parse_families(s: &str) -> Result<Families, String> {
    if s == "all" {
        return Ok(Families(Family::ALL.to_vec()));
    }
    s.split(',')
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map(Families)
}

fn parse_order(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("order must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(err) => Err(err.to_string()),
    }
}

fn fail(err: &ExpandError) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(if err.is_usage() { 2 } else { 1 })
}

fn emit(text: &str) -> ExitCode {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(_) => ExitCode::FAILURE,
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Expand { series, t, format } => {
            let s = match expand::series(series.family, series.mode, series.order, series.source) {
                Ok(s) => s,
                Err(err) => return fail(&err),
            };
            match format {
                Format::Text => emit(&expand::format_text(&s, &t)),
                Format::Json => {
                    let v = expand::format_json(series.family, series.mode, &s, &t);
                    emit(&format!("{v}\n"))
                }
            }
        }
        Command::Bfile { series, t } => {
            let text = expand::series(series.family, series.mode, series.order, series.source)
                .and_then(|s| expand::format_bfile(&s, &t));
            match text {
                Ok(text) => emit(&text),
                Err(err) => fail(&err),
            }
        }
        Command::Verify {
            family,
            oracle_max,
            order,
            format,
        } => {
            let reports = match verify::run(&Config::new(family.0, oracle_max, order)) {
                Ok(r) => r,
                Err(err) => {
                    eprintln!("error: {err}");
                    return ExitCode::from(2);
                }
            };
            for r in &reports {
                match format {
                    Format::Text => eprintln!("{r}"),
                    Format::Json => eprintln!("{}", r.to_json()),
                }
            }
            let failed = reports.iter().filter(|r| !r.status.is_pass()).count();
            eprintln!("{} checks, {failed} failed", reports.len());
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
