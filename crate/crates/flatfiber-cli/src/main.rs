//! Command-line analyzer for crystallographic space groups and their
//! flat orbifold fibration invariants.
//!
//! Exit codes: 0 success, 1 verification failure, 2 I/O or parse error,
//! 3 precondition violation.

use clap::{Parser, Subcommand};
use flatfiber::catalog::{
    all_tables, builtin_source, builtin_with_normal, fixtures, parse_group_file, table1,
    verify_table1_row, verify_table_row, word_in, RowOutcome,
};
use flatfiber::classify::gl2z_finite_order_class;
use flatfiber::exact::{parse_rat, Mat, Rat};
use flatfiber::isometry::AffineIso;
use flatfiber::report::{fiber_report, group_report, Json};
use flatfiber::spacegroup::SpaceGroup;
use flatfiber::Error;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "flatfiber", about = "space-group fibration analyzer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// emit the machine-readable JSON tree instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Group-level invariants: point group, lattice, Betti number, center
    Analyze {
        /// builtin name (p1..p6m, it5, ...) or a group file path
        group: String,
    },
    /// Full fibration analysis of (group, normal subgroup)
    Fiber {
        group: String,
        /// "builtin" for the catalogued normal block, a path, or
        /// semicolon-separated generator words like "g1 g2^-1; g3"
        #[arg(long)]
        normal: String,
    },
    /// Re-verify the classification table rows against the catalogue
    VerifyTables {
        /// 1..18, or all tables when omitted
        #[arg(long)]
        table: Option<u32>,
    },
    /// Conjugacy class of a finite-order integer matrix "a,b;c,d"
    Conjclass { matrix: String },
}

fn load_group(spec: &str) -> Result<(String, SpaceGroup, Option<Vec<AffineIso>>), Error> {
    if builtin_source(spec).is_ok() {
        let (g, n) = builtin_with_normal(spec)?;
        return Ok((spec.to_string(), g, n));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::Parse { line: 0, msg: format!("{spec}: {e}") })?;
    let name = std::path::Path::new(spec)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    let (g, n) = parse_group_file(&text)?;
    Ok((name, g, n))
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Parse { .. } | Error::UnknownBuiltin(_) | Error::UnknownTable(_) => {
            ExitCode::from(2)
        }
        _ => ExitCode::from(3),
    }
}

fn emit(json: bool, tree: &Json) {
    if json {
        println!("{}", tree.render());
    } else {
        print!("{}", tree.render_text());
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Analyze { group } => {
            let (name, g, _) = load_group(group)?;
            emit(cli.json, &group_report(&name, &g));
            Ok(ExitCode::SUCCESS)
        }
        Command::Fiber { group, normal } => {
            let (name, g, builtin_normal) = load_group(group)?;
            let n_gens: Vec<AffineIso> = if normal == "builtin" {
                builtin_normal.ok_or_else(|| {
                    Error::Unsupported("group has no catalogued normal subgroup".into())
                })?
            } else if std::path::Path::new(normal).exists() {
                let text = std::fs::read_to_string(normal)
                    .map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
                parse_group_file(&text)?
                    .1
                    .ok_or_else(|| Error::Parse { line: 0, msg: "file has no normal block".into() })?
            } else {
                normal
                    .split(';')
                    .map(|w| word_in(&g, w.trim()))
                    .collect::<Result<_, _>>()?
            };
            let tree = fiber_report(&name, &g, &n_gens)?;
            emit(cli.json, &tree);
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTables { table } => {
            let tables: Vec<u32> = match table {
                Some(1) => vec![1],
                Some(t) => {
                    if !all_tables().contains(t) {
                        return Err(Error::UnknownTable(*t));
                    }
                    vec![*t]
                }
                None => {
                    let mut v = vec![1];
                    v.extend(all_tables());
                    v
                }
            };
            let (mut pass, mut fail, mut skip) = (0u32, 0u32, 0u32);
            let mut rows = Vec::new();
            for t in tables {
                if t == 1 {
                    for row in table1() {
                        let outcome = verify_table1_row(&row);
                        rows.push((1u32, row.it, 1u32, outcome));
                    }
                } else {
                    for f in fixtures(t)? {
                        let outcome = verify_table_row(&f);
                        rows.push((f.table, f.it, f.occ, outcome));
                    }
                }
            }
            let mut json_rows = Vec::new();
            for (t, it, occ, outcome) in &rows {
                let status = match outcome {
                    RowOutcome::Pass => {
                        pass += 1;
                        "pass".to_string()
                    }
                    RowOutcome::Fail(m) => {
                        fail += 1;
                        format!("FAIL: {m}")
                    }
                    RowOutcome::Skipped(m) => {
                        skip += 1;
                        format!("skipped: {m}")
                    }
                };
                if !cli.json && !matches!(outcome, RowOutcome::Skipped(_)) {
                    println!("table {t} row {it}({occ}): {status}");
                }
                json_rows.push(Json::Obj(vec![
                    ("table".into(), Json::Int(*t as i64)),
                    ("it".into(), Json::Int(*it as i64)),
                    ("occurrence".into(), Json::Int(*occ as i64)),
                    ("status".into(), Json::Str(status)),
                ]));
            }
            let summary = Json::Obj(vec![
                ("rows".into(), Json::Arr(json_rows)),
                ("pass".into(), Json::Int(pass as i64)),
                ("fail".into(), Json::Int(fail as i64)),
                ("skipped".into(), Json::Int(skip as i64)),
            ]);
            if cli.json {
                println!("{}", summary.render());
            } else {
                println!("{pass} pass, {fail} fail, {skip} skipped");
            }
            Ok(if fail == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Conjclass { matrix } => {
            let rows: Vec<Vec<Rat>> = matrix
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|tok| {
                            parse_rat(tok.trim()).ok_or_else(|| Error::Parse {
                                line: 0,
                                msg: format!("bad entry {tok}"),
                            })
                        })
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
                return Err(Error::Parse { line: 0, msg: "expected a 2x2 matrix a,b;c,d".into() });
            }
            let m = Mat::from_rows(rows);
            let class = gl2z_finite_order_class(&m)?;
            let tree = Json::Obj(vec![
                ("class".into(), Json::Str(class.label().into())),
                ("order".into(), Json::Int(class.order() as i64)),
            ]);
            emit(cli.json, &tree);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
