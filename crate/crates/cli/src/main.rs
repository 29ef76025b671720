use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fusslog::catalan::CoeffTable;
use fusslog::multisets::enumerate_multisets;
use fusslog::paths::{enumerate_minimal_paths, enumerate_ornaments, enumerate_paths};
use fusslog::render::render;
use fusslog::structure::{Structure, Target};
use fusslog::trees::{enumerate_cycle_rooted, enumerate_minimal_trees, enumerate_trees};
use fusslog::verify::{verify, Suite, VerifyOptions};
use fusslog::{Error, DEFAULT_CAP};

#[derive(Parser)]
#[command(name = "fusslog", version, about = "Exact coefficients, enumerations and bijections for log G_k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StructureKind {
    Paths,
    MinimalPaths,
    Ornaments,
    Trees,
    MinimalTrees,
    CycleTrees,
    Multisets,
    RootedMultisets,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form coefficients of log^power G_k, optionally checked against series arithmetic
    Coeff {
        /// k, or a comma-separated list
        #[arg(long, value_parser = parse_k_list)]
        k: KList,
        #[arg(long = "max-n", visible_alias = "n")]
        max_n: u64,
        #[arg(long, default_value_t = 1)]
        power: u64,
        /// Also print the series value and whether it matches
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump every structure of one kind on [n], one JSON object per line
    Enumerate {
        #[arg(long, value_enum)]
        structure: StructureKind,
        #[arg(long, value_parser = parse_k_list)]
        k: KList,
        #[arg(long)]
        n: u32,
        /// Lift the enumeration cap
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites; exit 1 if any check fails
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_parser = parse_k_list)]
        k: KList,
        #[arg(long = "max-n", visible_alias = "n")]
        max_n: u32,
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Map structures (JSON on stdin or --input) to another kind
    Map {
        #[arg(long)]
        target: String,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Draw paths as grids and trees as indented listings
    Render {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone)]
struct KList(Vec<u32>);

fn parse_k_list(s: &str) -> Result<KList, String> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(KList)
}

/// Failures that map to exit code 2.
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<io::Error> for UsageError {
    fn from(e: io::Error) -> Self {
        UsageError(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn read_input(path: &Option<PathBuf>) -> Result<String, UsageError> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), UsageError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = out.write_all(text.as_bytes());
            let _ = out.flush();
            Ok(())
        }
    }
}

/// All structures in the input: a single JSON value or a JSONL stream.
/// Enumeration summary lines are skipped.
fn parse_structures(text: &str) -> Result<Vec<Structure>, UsageError> {
    let mut out = Vec::new();
    for value in serde_json::Deserializer::from_str(text).into_iter::<Value>() {
        let value = value.map_err(|e| UsageError(Error::Parse(e.to_string()).to_string()))?;
        if value.get("kind").and_then(Value::as_str) == Some("summary") {
            continue;
        }
        out.push(Structure::from_json_value(value)?);
    }
    if out.is_empty() {
        return Err(usage("no input structures"));
    }
    Ok(out)
}

fn cmd_coeff(ks: &[u32], max_n: u64, power: u64, check: bool, format: Format) -> Result<(String, u8), UsageError> {
    let tables = ks
        .iter()
        .map(|&k| CoeffTable::build(k as u64, max_n, power))
        .collect::<Result<Vec<_>, _>>()?;
    let row_json = |t: &CoeffTable| -> Vec<Value> {
        t.rows
            .iter()
            .map(|r| {
                let mut v = json!({"k": t.k, "power": t.power, "n": r.n, "closed_form": r.closed_form.to_string()});
                if check {
                    v["series_value"] = json!(r.series_value.to_string());
                    v["match"] = json!(r.matches);
                }
                v
            })
            .collect()
    };
    let mut out = String::new();
    match format {
        Format::Table => {
            for t in &tables {
                out.push_str(&format!("k={} power={}\n", t.k, t.power));
                let mut rows = vec![if check {
                    vec!["n".to_string(), "closed_form".into(), "series_value".into(), "match".into()]
                } else {
                    vec!["n".to_string(), "closed_form".into()]
                }];
                for r in &t.rows {
                    let mut row = vec![r.n.to_string(), r.closed_form.to_string()];
                    if check {
                        row.push(r.series_value.to_string());
                        row.push(r.matches.to_string());
                    }
                    rows.push(row);
                }
                let widths: Vec<usize> = (0..rows[0].len())
                    .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap())
                    .collect();
                for row in rows {
                    let line: Vec<String> = row.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
                    out.push_str(line.join("  ").trim_end());
                    out.push('\n');
                }
            }
        }
        Format::Csv => {
            out.push_str(if check { "k,power,n,closed_form,series_value,match\n" } else { "k,power,n,closed_form\n" });
            for t in &tables {
                for r in &t.rows {
                    out.push_str(&format!("{},{},{},{}", t.k, t.power, r.n, r.closed_form));
                    if check {
                        out.push_str(&format!(",{},{}", r.series_value, r.matches));
                    }
                    out.push('\n');
                }
            }
        }
        Format::Json => {
            let v: Vec<Value> = tables
                .iter()
                .map(|t| json!({"k": t.k, "power": t.power, "rows": row_json(t).into_iter().map(|mut r| {
                    let obj = r.as_object_mut().unwrap();
                    obj.remove("k");
                    obj.remove("power");
                    r
                }).collect::<Vec<_>>()}))
                .collect();
            let v = if v.len() == 1 { v.into_iter().next().unwrap() } else { Value::Array(v) };
            out = serde_json::to_string_pretty(&v).unwrap() + "\n";
        }
        Format::Jsonl => {
            for t in &tables {
                for r in row_json(t) {
                    out.push_str(&r.to_string());
                    out.push('\n');
                }
            }
        }
    }
    let code = if check && !tables.iter().all(CoeffTable::all_match) { 1 } else { 0 };
    Ok((out, code))
}

fn enumerate(kind: StructureKind, k: u32, n: u32, cap: Option<u64>) -> Result<Vec<Structure>, Error> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    if n < 1 {
        return Err(Error::InvalidArgument(format!("n must be at least 1, got {n}")));
    }
    let labels: Vec<u32> = (1..=n).collect();
    fn wrap<T: Into<Structure>>(v: Vec<T>) -> Vec<Structure> {
        v.into_iter().map(Into::into).collect()
    }
    Ok(match kind {
        StructureKind::Paths => wrap(enumerate_paths(k, &labels, cap)?),
        StructureKind::MinimalPaths => wrap(enumerate_minimal_paths(k, &labels, cap)?),
        StructureKind::Ornaments => wrap(enumerate_ornaments(k, n, cap)?),
        StructureKind::Trees => wrap(enumerate_trees(k, &labels, cap)?),
        StructureKind::MinimalTrees => wrap(enumerate_minimal_trees(k, &labels, cap)?),
        StructureKind::CycleTrees => wrap(enumerate_cycle_rooted(k, n, cap)?),
        StructureKind::Multisets => wrap(enumerate_multisets(k, n, false, cap)?),
        StructureKind::RootedMultisets => wrap(enumerate_multisets(k, n, true, cap)?),
    })
}

fn cmd_enumerate(kind: StructureKind, ks: &[u32], n: u32, force: bool, format: Format) -> Result<String, UsageError> {
    let cap = if force { None } else { Some(DEFAULT_CAP) };
    let name = kind.to_possible_value().unwrap().get_name().to_string();
    let mut out = String::new();
    let mut groups = Vec::new();
    for &k in ks {
        let items = enumerate(kind, k, n, cap)?;
        let summary = json!({"kind": "summary", "structure": name, "k": k, "n": n, "count": items.len()});
        match format {
            Format::Jsonl => {
                for s in &items {
                    out.push_str(&s.to_json());
                    out.push('\n');
                }
                out.push_str(&summary.to_string());
                out.push('\n');
            }
            Format::Json => {
                let mut group = summary;
                group["items"] = Value::Array(items.iter().map(Structure::to_json_value).collect());
                groups.push(group);
            }
            Format::Table => {
                for s in &items {
                    out.push_str(&render(s));
                    out.push('\n');
                }
                out.push_str(&format!("{} {name} for k={k}, n={n}\n", items.len()));
            }
            Format::Csv => return Err(usage("enumerate supports --format jsonl, json or table")),
        }
    }
    if format == Format::Json {
        out = serde_json::to_string_pretty(&Value::Array(groups)).unwrap() + "\n";
    }
    Ok(out)
}

fn cmd_verify(suite: &str, ks: &[u32], max_n: u32, opts: &VerifyOptions, format: Format) -> Result<(String, u8), UsageError> {
    let suite: Suite = suite.parse()?;
    let report = verify(suite, ks, max_n, opts)?;
    let text = match format {
        Format::Table => report.to_text(),
        Format::Json => serde_json::to_string_pretty(&report).unwrap() + "\n",
        Format::Jsonl => {
            let mut s: String = report
                .points
                .iter()
                .map(|p| serde_json::to_string(p).unwrap() + "\n")
                .collect();
            s.push_str(&json!({"suite": report.suite, "overall": report.overall}).to_string());
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("suite,k,n,checks,pass,message\n");
            for p in &report.points {
                s.push_str(&format!("{},{},{},{},{},\"{}\"\n", p.suite, p.k, p.n, p.checks, p.pass, p.message.replace('"', "\"\"")));
            }
            s
        }
    };
    Ok((text, if report.overall { 0 } else { 1 }))
}

fn cmd_map(target: &str, input: &Option<PathBuf>) -> Result<String, UsageError> {
    let target: Target = target.parse()?;
    let mut out = String::new();
    for s in parse_structures(&read_input(input)?)? {
        out.push_str(&s.map_to(target)?.to_json());
        out.push('\n');
    }
    Ok(out)
}

fn cmd_render(input: &Option<PathBuf>) -> Result<String, UsageError> {
    let pictures: Vec<String> = parse_structures(&read_input(input)?)?.iter().map(render).collect();
    Ok(pictures.join("\n"))
}

fn run(cli: Cli) -> Result<u8, UsageError> {
    match cli.command {
        Command::Coeff { k, max_n, power, check, format, output } => {
            let (text, code) = cmd_coeff(&k.0, max_n, power, check, format)?;
            write_output(&output, &text)?;
            Ok(code)
        }
        Command::Enumerate { structure, k, n, force, format, output } => {
            write_output(&output, &cmd_enumerate(structure, &k.0, n, force, format)?)?;
            Ok(0)
        }
        Command::Verify { suite, k, max_n, force, format, output, inject_fault } => {
            let opts = VerifyOptions {
                cap: if force { None } else { Some(DEFAULT_CAP) },
                inject_fault,
            };
            let (text, code) = cmd_verify(&suite, &k.0, max_n, &opts, format)?;
            write_output(&output, &text)?;
            Ok(code)
        }
        Command::Map { target, input, output } => {
            write_output(&output, &cmd_map(&target, &input)?)?;
            Ok(0)
        }
        Command::Render { input, output } => {
            write_output(&output, &cmd_render(&input)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors by itself
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
