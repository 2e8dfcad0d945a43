use clap::{Parser, Subcommand, ValueEnum};

use invseq::recurrence::one_free_nonconstant_series;
use invseq::rules::dp::counted_levels;
use invseq::rules::{info, RuleId};
use invseq::series::gf::{
    class_010_102_series, class_201_210_series, commit_multiplicity_series,
    jump_multiplicity_series,
};
use invseq::series::{BivariateSeries, PowerSeries};

use invseq_cli::dispatch::{self, parse_class, patterns_of, Method};
use invseq_cli::oeis::{match_prefix, OeisClient};
use invseq_cli::render::{render_tree, TreeFormat};
use invseq_cli::verify::{run_suite, Suite};
use invseq_cli::CliError;

#[derive(Parser)]
#[command(
    name = "invseq",
    version,
    about = "Exact counts of pattern-avoiding inversion sequences: \
             generating trees, succession rules, recurrences, algebraic series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count class members of each size up to --n with a chosen engine.
    Count {
        /// Pattern set ("201,210"), rule name ("011"), or empty for the
        /// unrestricted class.
        #[arg(long)]
        class: String,
        #[arg(long, value_enum)]
        method: Method,
        /// Largest size to count.
        #[arg(long)]
        n: usize,
        /// Machine format: JSON object with counts as decimal strings.
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Machine format: one "n,count" row per size.
        #[arg(long)]
        csv: bool,
    },
    /// Re-derive stated facts and print one pass/fail line per check.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Override the suite's default size/order bound.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Print coefficients of a named generating function.
    Series {
        #[arg(long, value_enum)]
        gf: GfId,
        /// Truncation order (largest exponent printed).
        #[arg(long)]
        order: usize,
        /// Machine format: JSON array of decimal strings.
        #[arg(long)]
        json: bool,
    },
    /// Render the generating tree of a class.
    Tree {
        /// Pattern set; empty for the unrestricted tree. Must be closed
        /// under leftmost-entry deletion, or exactly "010,102".
        #[arg(long, default_value = "")]
        class: String,
        /// Deepest level to render.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TreeFormat::Text)]
        format: TreeFormat,
    },
    /// Fetch an OEIS b-file (cached on disk) and cross-check local counts.
    Oeis {
        /// Sequence id, e.g. A000110.
        #[arg(long)]
        id: String,
        /// Serve only the on-disk cache; never touch the network.
        #[arg(long)]
        offline: bool,
        /// Largest number of terms to keep.
        #[arg(long, default_value_t = 16)]
        max_terms: usize,
    },
    /// Inspect the succession-rule catalog.
    Rules {
        #[command(subcommand)]
        action: RulesAction,
    },
}

#[derive(Subcommand)]
enum RulesAction {
    /// One block per rule: name, class, label meaning, counting filter,
    /// OEIS id.
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GfId {
    /// Closed form counting the class avoiding 201 and 210.
    #[value(name = "201-210")]
    Pair201210,
    /// Cubic-equation solution counting the class avoiding 010 and 102.
    #[value(name = "010-102")]
    Pair010102,
    /// Level totals of the three-statistic recurrence, Σ bₙ tⁿ.
    OneFree,
    /// Bivariate edge multiplicities of the committed 120 rule.
    Commit,
    /// Bivariate edge multiplicities of the long-jump 120 rule.
    Jump,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = execute(cli.command) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Count {
            class,
            method,
            n,
            json,
            csv,
        } => {
            let report = dispatch::run_count(&class, method, n)?;
            let body = if json {
                report.to_json()
            } else if csv {
                report.to_csv()
            } else {
                report.to_text()
            };
            print!("{body}");
            Ok(())
        }
        Command::Verify { suite, n } => {
            let lines = run_suite(suite, n)?;
            for line in &lines {
                println!("{}", line.render());
            }
            let failed = lines.iter().filter(|l| !l.passed).count();
            println!("\n{} checks, {} failed", lines.len(), failed);
            if failed > 0 {
                return Err(CliError::Failed(format!(
                    "{failed} of {} checks failed",
                    lines.len()
                )));
            }
            Ok(())
        }
        Command::Series { gf, order, json } => {
            print!("{}", series_output(gf, order, json)?);
            Ok(())
        }
        Command::Tree { class, n, format } => {
            let patterns = patterns_of(&parse_class(&class)?);
            print!("{}", render_tree(&patterns, n, format)?);
            Ok(())
        }
        Command::Oeis {
            id,
            offline,
            max_terms,
        } => {
            let mut client = OeisClient::from_env();
            if offline {
                client = client.forced_offline();
            }
            run_oeis(&client, &id, max_terms)
        }
        Command::Rules { action } => {
            match action {
                RulesAction::List => print!("{}", rules_listing()),
            }
            Ok(())
        }
    }
}

fn series_output(gf: GfId, order: usize, json: bool) -> Result<String, CliError> {
    let univariate = |series: Result<PowerSeries, invseq::series::SeriesError>| {
        let series = series.map_err(|e| CliError::Failed(e.to_string()))?;
        let coeffs: Vec<String> = series.coeffs().iter().map(ToString::to_string).collect();
        Ok::<String, CliError>(if json {
            let mut body =
                serde_json::to_string_pretty(&coeffs).expect("strings serialize");
            body.push('\n');
            body
        } else {
            let mut body = String::new();
            for (n, c) in coeffs.iter().enumerate() {
                body.push_str(&format!("{n}: {c}\n"));
            }
            body
        })
    };
    let bivariate = |series: Result<BivariateSeries, invseq::series::SeriesError>| {
        let series = series.map_err(|e| CliError::Failed(e.to_string()))?;
        let rows: Vec<Vec<String>> = (0..=series.t_order())
            .map(|l| {
                (0..=series.u_order())
                    .map(|k| series.coeff(l, k).to_string())
                    .collect()
            })
            .collect();
        Ok::<String, CliError>(if json {
            let mut body = serde_json::to_string_pretty(&rows).expect("strings serialize");
            body.push('\n');
            body
        } else {
            let mut body = String::new();
            for (l, row) in rows.iter().enumerate() {
                body.push_str(&format!("l={l}: {}\n", row.join(" ")));
            }
            body
        })
    };
    match gf {
        GfId::Pair201210 => univariate(class_201_210_series(order)),
        GfId::Pair010102 => univariate(class_010_102_series(order)),
        GfId::OneFree => univariate(Ok(one_free_nonconstant_series(order))),
        GfId::Commit => bivariate(commit_multiplicity_series(order, order)),
        GfId::Jump => bivariate(jump_multiplicity_series(order, order)),
    }
}

fn run_oeis(client: &OeisClient, id: &str, max_terms: usize) -> Result<(), CliError> {
    let sequence = client.fetch(id, max_terms)?;
    println!("{} (source: {})", sequence.id, sequence.source);
    for (index, value) in &sequence.terms {
        println!("{index} {value}");
    }

    let local_rule = RuleId::catalog()
        .into_iter()
        .find(|rule| info(*rule).oeis == Some(id));
    match local_rule {
        None => {
            println!("no catalog rule carries this id; nothing to cross-check");
            Ok(())
        }
        Some(rule) => {
            let counts = counted_levels(rule, 9)
                .map_err(|e| CliError::Failed(e.to_string()))?;
            match match_prefix(counts.totals(), &sequence) {
                Some(found) => {
                    println!(
                        "local counts for rule {} (sizes ≤ 9) match at offset {} over {} terms",
                        info(rule).name,
                        found.offset,
                        found.compared
                    );
                    Ok(())
                }
                None => Err(CliError::Failed(format!(
                    "local counts for rule {} do not match {} under offsets 0, -1, +1",
                    info(rule).name,
                    id
                ))),
            }
        }
    }
}

fn rules_listing() -> String {
    let mut out = String::new();
    for rule in RuleId::catalog() {
        let meta = info(rule);
        let class = match &meta.patterns {
            None => "(unrestricted)".to_owned(),
            Some(patterns) => patterns
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", "),
        };
        out.push_str(&format!("{}\n", meta.name));
        out.push_str(&format!("  class:   {class}\n"));
        out.push_str(&format!("  labels:  {}\n", meta.label_meaning));
        out.push_str(&format!(
            "  counted: {}\n",
            meta.counted_filter.unwrap_or("all labels")
        ));
        out.push_str(&format!("  oeis:    {}\n\n", meta.oeis.unwrap_or("—")));
    }
    out
}
