//! Command implementations and output formatting.

use std::fmt::Display;
use std::io::{self, Read, Write};
use std::path::Path;

use dlogflow::algebra::{bernoulli_number, bernoulli_polynomial, from_biguint, parse_rational};
use dlogflow::coeffs::order_polynomial;
use dlogflow::flow;
use dlogflow::io::{series_vector_from_json, series_vector_to_value, JsonCoeff};
use dlogflow::trees::{enumerate_trees, trees_up_to};
use dlogflow::treeseries::p_script;
use dlogflow::verify::{run_suite, Suite, SuiteParams, VerdictReport};
use dlogflow::{CoeffTables, FormalMap, RatPoly, Rational, RootedTree, SeriesVector};
use serde_json::{json, Value};

use crate::config::Config;
use crate::{Cli, Command, Format, MapArgs, Status};

type CmdResult<T = ()> = Result<T, String>;

fn contract(context: &str) -> impl Fn(dlogflow::Error) -> String + '_ {
    move |e| format!("{context}: {e}")
}

pub fn run(cli: &Cli) -> CmdResult<Status> {
    let cfg = Config::load(cli.config.as_deref())?;
    let format_or = |default: Format| cli.format.or(cfg.format).unwrap_or(default);
    let tables_path = cli.tables.clone().or_else(|| cfg.tables.clone());
    let tables = match &tables_path {
        Some(p) => CoeffTables::load_or_new(p).map_err(contract("tables file"))?,
        None => CoeffTables::new(),
    };
    let mut out = io::stdout().lock();

    let status = match &cli.command {
        Command::Trees { count, list } => {
            trees(&mut out, format_or(Format::Text), *count, *list)?;
            Status::Ok
        }
        Command::PhiTable(args) => {
            let m = cfg.max_vertices(args.max_vertices);
            table(&mut out, format_or(Format::Csv), &tables, m, false)?;
            Status::Ok
        }
        Command::PsiTable(args) => {
            let m = cfg.max_vertices(args.max_vertices);
            table(&mut out, format_or(Format::Csv), &tables, m, true)?;
            Status::Ok
        }
        Command::OrderPoly { tree } => {
            let tree = parse_tree(tree)?;
            order_poly(&mut out, format_or(Format::Text), &tree)?;
            Status::Ok
        }
        Command::Bernoulli { n } => {
            bernoulli(&mut out, format_or(Format::Text), *n)?;
            Status::Ok
        }
        Command::Ptree { tree, system, trunc } => {
            let tree = parse_tree(tree)?;
            let h = read_series(system, cfg.trunc(*trunc))?;
            series(&mut out, format_or(Format::Json), &p_script(&tree, &h))?;
            Status::Ok
        }
        Command::Dlog { map, trees } => {
            let f = read_map(map, &cfg)?;
            let a = if *trees {
                flow::dlog_tree_sum(&f, &tables)
            } else {
                flow::dlog(&f).map_err(contract("D-Log"))?.a
            };
            series(&mut out, format_or(Format::Json), &a)?;
            Status::Ok
        }
        Command::Flow { map, time, symbolic } => {
            let f = read_map(map, &cfg)?;
            let format = format_or(Format::Json);
            if *symbolic {
                let ft = flow::flow_symbolic(&f).map_err(contract("flow"))?;
                series(&mut out, format, &ft)?;
            } else {
                let time = time.as_deref().expect("clap requires --t without --symbolic");
                let tau = parse_rational(time).map_err(contract("--t"))?;
                let ft = flow::flow_at(&f, &tau).map_err(contract("flow"))?;
                series(&mut out, format, &ft)?;
            }
            Status::Ok
        }
        Command::Invert { map, trees } => {
            let f = read_map(map, &cfg)?;
            let inv = if *trees {
                flow::inverse_tree(&f)
            } else {
                flow::inverse_solver(&f).map_err(contract("inverse"))?
            };
            series(&mut out, format_or(Format::Json), &inv)?;
            Status::Ok
        }
        Command::Verify {
            suite,
            max_vertices,
            trunc,
            seed,
        } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>().map_err(contract("--suite"))?]
            };
            let params = SuiteParams {
                max_vertices: cfg.max_vertices(*max_vertices),
                trunc: cfg.trunc(*trunc),
                seed: cfg.seed(*seed),
            };
            let reports: Vec<VerdictReport> = suites.iter().map(|&s| run_suite(s, &params, &tables)).collect();
            verdicts(&mut out, format_or(Format::Text), &reports)?;
            if reports.iter().all(VerdictReport::all_pass) {
                Status::Ok
            } else {
                Status::VerdictFailed
            }
        }
    };
    out.flush().map_err(io_err)?;
    if let Some(p) = tables_path {
        tables.save(&p).map_err(contract("tables file"))?;
    }
    Ok(status)
}

fn io_err(e: io::Error) -> String {
    format!("output: {e}")
}

fn parse_tree(code: &str) -> CmdResult<RootedTree> {
    code.parse().map_err(contract("--tree"))
}

fn read_text(path: &Path) -> CmdResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
    }
}

/// Reads a series vector and re-reads it at order `trunc` as an exact polynomial.
fn read_series(path: &Path, trunc: usize) -> CmdResult<SeriesVector> {
    let v: SeriesVector = series_vector_from_json(&read_text(path)?).map_err(contract("series JSON"))?;
    Ok(v.with_trunc(trunc))
}

fn read_map(args: &MapArgs, cfg: &Config) -> CmdResult<FormalMap> {
    let f = read_series(&args.map, cfg.trunc(args.trunc))?;
    FormalMap::new(f).map_err(contract("--map"))
}

fn print_json(out: &mut impl Write, v: &Value) -> CmdResult {
    let text = serde_json::to_string_pretty(v).expect("plain JSON values");
    writeln!(out, "{text}").map_err(io_err)
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::Writer::from_writer(out)
}

fn csv_err(e: csv::Error) -> String {
    format!("output: {e}")
}

fn strings<T: Display>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn trees(out: &mut impl Write, format: Format, m: usize, list: bool) -> CmdResult {
    let all = enumerate_trees(m);
    match format {
        Format::Json => {
            let mut doc = json!({ "vertices": m, "count": all.len() });
            if list {
                doc["trees"] = json!(strings(&all));
            }
            print_json(out, &doc)
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["tree", "v", "alpha"]).map_err(csv_err)?;
            for t in &all {
                w.write_record([t.to_string(), m.to_string(), t.aut_size().to_string()])
                    .map_err(csv_err)?;
            }
            w.flush().map_err(io_err)
        }
        Format::Text => {
            writeln!(out, "{}", all.len()).map_err(io_err)?;
            if list {
                for t in &all {
                    writeln!(out, "{t}").map_err(io_err)?;
                }
            }
            Ok(())
        }
    }
}

fn table(out: &mut impl Write, format: Format, tables: &CoeffTables, m: usize, with_psi: bool) -> CmdResult {
    let rows: Vec<(RootedTree, Rational, RatPoly)> = trees_up_to(m)
        .into_iter()
        .map(|t| {
            let phi = tables.phi(&t);
            let psi = if with_psi {
                tables.psi(&t)
            } else {
                RatPoly::from_coeffs(Vec::new())
            };
            (t, phi, psi)
        })
        .collect();
    match format {
        Format::Json => {
            let docs: Vec<Value> = rows
                .iter()
                .map(|(t, phi, psi)| {
                    let mut doc = json!({
                        "tree": t.encoding(),
                        "v": t.size(),
                        "alpha": t.aut_size().to_string(),
                        "phi": phi.to_string(),
                    });
                    if with_psi {
                        doc["psi"] = json!(strings(psi.coeffs()));
                    }
                    doc
                })
                .collect();
            print_json(out, &Value::Array(docs))
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            let mut header = vec!["tree", "v", "alpha", "phi"];
            if with_psi {
                header.push("psi");
            }
            w.write_record(&header).map_err(csv_err)?;
            for (t, phi, psi) in &rows {
                let mut rec = vec![
                    t.to_string(),
                    t.size().to_string(),
                    t.aut_size().to_string(),
                    phi.to_string(),
                ];
                if with_psi {
                    rec.push(strings(psi.coeffs()).join(" "));
                }
                w.write_record(&rec).map_err(csv_err)?;
            }
            w.flush().map_err(io_err)
        }
        Format::Text => {
            for (t, phi, psi) in &rows {
                if with_psi {
                    writeln!(out, "{t}\tphi = {phi}\tpsi = {psi}")
                } else {
                    writeln!(out, "{t}\tphi = {phi}")
                }
                .map_err(io_err)?;
            }
            Ok(())
        }
    }
}

fn order_poly(out: &mut impl Write, format: Format, tree: &RootedTree) -> CmdResult {
    let poly = order_polynomial(tree);
    let counts: Vec<String> = (0..=tree.size())
        .map(|n| tree.count_strict_maps(n).to_string())
        .collect();
    match format {
        Format::Json => print_json(
            out,
            &json!({ "tree": tree.encoding(), "poly": strings(poly.coeffs()), "counts": counts }),
        ),
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "count", "poly_value"]).map_err(csv_err)?;
            for (n, c) in counts.iter().enumerate() {
                let value = poly.eval(&from_biguint(&(n as u64).into()));
                w.write_record([n.to_string(), c.clone(), value.to_string()])
                    .map_err(csv_err)?;
            }
            w.flush().map_err(io_err)
        }
        Format::Text => {
            writeln!(out, "{poly}").map_err(io_err)?;
            writeln!(out, "counts n = 0..{}: {}", tree.size(), counts.join(" ")).map_err(io_err)
        }
    }
}

fn bernoulli(out: &mut impl Write, format: Format, n: usize) -> CmdResult {
    let number = bernoulli_number(n);
    let poly = bernoulli_polynomial(n);
    match format {
        Format::Json => print_json(
            out,
            &json!({ "n": n, "number": number.to_string(), "polynomial": strings(poly.coeffs()) }),
        ),
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "number", "polynomial"]).map_err(csv_err)?;
            w.write_record([n.to_string(), number.to_string(), strings(poly.coeffs()).join(" ")])
                .map_err(csv_err)?;
            w.flush().map_err(io_err)
        }
        Format::Text => {
            writeln!(out, "B_{n} = {number}").map_err(io_err)?;
            writeln!(out, "B_{n}(t) = {poly}").map_err(io_err)
        }
    }
}

fn coeff_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other
            .get("t_poly")
            .and_then(Value::as_array)
            .map(|cs| cs.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(" "))
            .unwrap_or_default(),
    }
}

fn series<C: JsonCoeff + Display>(out: &mut impl Write, format: Format, v: &SeriesVector<C>) -> CmdResult {
    match format {
        Format::Json => print_json(out, &series_vector_to_value(v)),
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["component", "exps", "coeff"]).map_err(csv_err)?;
            for (i, comp) in v.components().iter().enumerate() {
                for (exps, c) in comp.terms() {
                    w.write_record([(i + 1).to_string(), strings(exps).join(" "), coeff_cell(&c.to_json())])
                        .map_err(csv_err)?;
                }
            }
            w.flush().map_err(io_err)
        }
        Format::Text => writeln!(out, "{v}").map_err(io_err),
    }
}

fn verdicts(out: &mut impl Write, format: Format, reports: &[VerdictReport]) -> CmdResult {
    match format {
        Format::Json => {
            let v = if let [single] = reports {
                serde_json::to_value(single)
            } else {
                serde_json::to_value(reports)
            };
            print_json(out, &v.expect("reports are plain data"))
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["suite", "case", "pass", "witness"]).map_err(csv_err)?;
            for r in reports {
                for c in &r.cases {
                    w.write_record([
                        r.suite.name(),
                        &c.descriptor,
                        if c.pass { "true" } else { "false" },
                        c.witness.as_deref().unwrap_or(""),
                    ])
                    .map_err(csv_err)?;
                }
            }
            w.flush().map_err(io_err)
        }
        Format::Text => {
            for r in reports {
                for c in &r.cases {
                    let mark = if c.pass { "PASS" } else { "FAIL" };
                    write!(out, "{mark} {} {}", r.suite, c.descriptor).map_err(io_err)?;
                    if let Some(w) = &c.witness {
                        write!(out, " ({w})").map_err(io_err)?;
                    }
                    writeln!(out).map_err(io_err)?;
                }
                let seed = r.seed.map(|s| format!(", seed {s}")).unwrap_or_default();
                writeln!(out, "{}: {}/{} passed{seed}", r.suite, r.passed(), r.cases.len()).map_err(io_err)?;
            }
            Ok(())
        }
    }
}
