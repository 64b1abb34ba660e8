use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pfano_core::algebra::int;
use pfano_core::fano::{coned_triangulation, embedded_table, parse_table, FanoTableEntry, LatticePolytope};
use pfano_core::integration::integrate;
use pfano_core::invariants::{holonomic_rank, is_holonomic};
use pfano_core::parse::{names, parse_expression, Expression};
use pfano_core::pipeline::{
    approx_integration, fano_period_system_in, operator_terms, PipelineReport, DEFAULT_MAX_ORDER, REPORT_VERSION,
};
use pfano_core::stienstra::rank_lower_bound;
use pfano_core::weyl::WeylOperator;
use pfano_core::{annihilator::approx_ann, Error};

#[derive(Parser, Debug)]
#[command(name = "pfano", version, about = "Holonomic systems for rational integrands and Fano period integrals")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Approximate annihilator of a rational function.
    ApproxAnn {
        /// Comma separated variables, e.g. "t1,t2,x1,x2".
        #[arg(long)]
        vars: String,
        #[arg(long, default_value_t = 1)]
        order: u32,
        expr: String,
    },
    /// Integration ideal of operators, or approximate integration of a rational function.
    Integrate {
        /// Integration variables, a bar, then parameters: "t1,t2|x1,x2".
        #[arg(long)]
        vars: String,
        /// Annihilator order used for a rational function.
        #[arg(long, default_value_t = 1)]
        order: u32,
        /// Weight override, comma separated, positive entries first.
        #[arg(long)]
        weight: Option<String>,
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Holonomicity and holonomic rank of a left ideal.
    Rank {
        #[arg(long)]
        vars: String,
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Period system of a smooth Fano polytope.
    Fano {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        index: usize,
        /// Order cap; defaults to PFANO_MAX_ORDER or 3.
        #[arg(long)]
        max_order: Option<u32>,
        /// Replacement polytope table (JSON).
        #[arg(long)]
        polytopes: Option<String>,
    },
    /// The polytope table.
    Table {
        /// Also compute the rank lower bound of every row.
        #[arg(long)]
        bounds: bool,
        #[arg(long)]
        polytopes: Option<String>,
    },
    /// Per-stage timings of the period pipeline.
    Bench {
        /// Rows as dim/index, comma separated.
        #[arg(long, default_value = "2/0,3/0,3/9")]
        rows: String,
        /// Measured runs per row after one discarded warm-up.
        #[arg(long, default_value_t = 1)]
        repeat: u32,
        #[arg(long)]
        max_order: Option<u32>,
        #[arg(long)]
        polytopes: Option<String>,
    },
}

type CliResult<T> = Result<T, String>;

fn core<T>(r: pfano_core::Result<T>) -> CliResult<T> {
    r.map_err(|e: Error| e.to_string())
}

fn load_table(path: &Option<String>) -> CliResult<Vec<FanoTableEntry>> {
    match path {
        None => Ok(embedded_table().to_vec()),
        Some(p) => {
            let src = std::fs::read_to_string(p).map_err(|e| format!("{p}: {e}"))?;
            core(parse_table(&src))
        }
    }
}

fn max_order(flag: Option<u32>) -> CliResult<u32> {
    if let Some(m) = flag {
        return Ok(m);
    }
    match std::env::var("PFANO_MAX_ORDER") {
        Ok(v) => v.trim().parse().map_err(|_| format!("PFANO_MAX_ORDER: not an integer: {v}")),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn split_vars(spec: &str) -> CliResult<(Vec<String>, usize)> {
    let parts: Vec<&str> = spec.split('|').collect();
    let (all, m) = match parts.as_slice() {
        [one] => (names(one), 0),
        [left, right] => {
            let l = names(left);
            let m = l.len();
            let mut all = l;
            all.extend(names(right));
            (all, m)
        }
        _ => return Err("variables: at most one '|'".into()),
    };
    let mut seen = std::collections::HashSet::new();
    if let Some(d) = all.iter().find(|v| !seen.insert(v.as_str())) {
        return Err(format!("variables: duplicate name {d}"));
    }
    Ok((all, m))
}

fn parse_weight(s: &str) -> CliResult<Vec<i64>> {
    s.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| format!("weight: bad entry {t}"))).collect()
}

fn operators_json(ops: &[WeylOperator], vars: &[String]) -> Value {
    json!({
        "version": REPORT_VERSION,
        "variables": vars,
        "generators": ops.iter().map(|g| g.display(vars).to_string()).collect::<Vec<_>>(),
        "terms": ops.iter().map(operator_terms).collect::<Vec<_>>(),
    })
}

fn operators_text(ops: &[WeylOperator], vars: &[String]) -> String {
    if ops.is_empty() {
        return "<0>\n".into();
    }
    ops.iter().map(|g| format!("{}\n", g.display(vars))).collect()
}

fn report_text(r: &PipelineReport) -> String {
    let rank = r.rank.map(|k| k.to_string()).unwrap_or_else(|| "infinite".into());
    let mut s = format!(
        "polytope {}/{}\nstatus {}\norder {}\nrank {}\nlower bound {}\n",
        r.dim,
        r.index,
        r.status.as_str(),
        r.order_used,
        rank,
        r.lower_bound
    );
    s.push_str(&format!(
        "timings ann={:.3}s gb_w={:.3}s base={:.3}s gb={:.3}s\n",
        r.timings.ann, r.timings.gb_w, r.timings.base, r.timings.gb_final
    ));
    for g in &r.generators {
        s.push_str(g);
        s.push('\n');
    }
    s
}

fn run(cli: Cli) -> CliResult<String> {
    let json_out = cli.format == Format::Json;
    match cli.command {
        Command::ApproxAnn { vars, order, expr } => {
            let (v, _) = split_vars(&vars)?;
            let Expression::Rational(phi) = core(parse_expression(&expr, &v))? else {
                return Err("approx-ann expects a rational function".into());
            };
            let ann = core(approx_ann(&phi, order))?;
            Ok(if json_out {
                let mut j = operators_json(&ann.elements, &v);
                j["order"] = json!(order);
                format!("{:#}\n", j)
            } else {
                operators_text(&ann.elements, &v)
            })
        }
        Command::Integrate { vars, order, weight, exprs } => {
            let (v, m) = split_vars(&vars)?;
            let w = match weight {
                Some(s) => parse_weight(&s)?,
                None => {
                    if m == 0 {
                        return Err("integrate: mark integration variables with '|' or pass --weight".into());
                    }
                    (0..v.len()).map(|i| if i < m { 1 } else { 0 }).collect()
                }
            };
            if w.len() != v.len() {
                return Err(format!("weight has {} entries for {} variables", w.len(), v.len()));
            }
            let m = w.iter().take_while(|&&x| x > 0).count();
            let params = v[m..].to_vec();
            let parsed: Vec<Expression> = exprs.iter().map(|e| core(parse_expression(e, &v))).collect::<CliResult<_>>()?;
            let (ideal, holonomic, b) = match parsed.as_slice() {
                [Expression::Rational(phi)] => {
                    let r = core(approx_integration(phi, order, &w))?;
                    let b = r.integration.as_ref().map(|i| i.b_function.b.display(&["s".to_string()]).to_string());
                    (r.ideal.elements, r.holonomic, b)
                }
                _ => {
                    let ops: Vec<WeylOperator> = parsed
                        .into_iter()
                        .map(|e| match e {
                            Expression::Operator(p) => Ok(p),
                            Expression::Rational(f) if f.denominator().is_constant() => Ok(
                                WeylOperator::from_coefficient(f.numerator())
                                    .scale(&(int(1) / f.denominator().constant_value().unwrap())),
                            ),
                            Expression::Rational(_) => Err("integrate: mix of operators and rational functions".to_string()),
                        })
                        .collect::<CliResult<_>>()?;
                    let it = core(integrate(&ops, &w))?;
                    let b = it.b_function.b.display(&["s".to_string()]).to_string();
                    (it.ideal.elements, true, Some(b))
                }
            };
            Ok(if json_out {
                let mut j = operators_json(&ideal, &params);
                j["holonomic"] = json!(holonomic);
                j["b_function"] = json!(b);
                format!("{:#}\n", j)
            } else {
                let mut s = String::new();
                if let Some(b) = &b {
                    s.push_str(&format!("b(s) = {b}\n"));
                }
                if !holonomic {
                    s.push_str("annihilator not holonomic\n");
                }
                s + &operators_text(&ideal, &params)
            })
        }
        Command::Rank { vars, exprs } => {
            let (v, _) = split_vars(&vars)?;
            let ops: Vec<WeylOperator> = exprs
                .iter()
                .map(|e| match core(parse_expression(e, &v))? {
                    Expression::Operator(p) => Ok(p),
                    Expression::Rational(f) if f.denominator().is_constant() => {
                        Ok(WeylOperator::from_coefficient(f.numerator()))
                    }
                    Expression::Rational(_) => Err("rank expects operators".to_string()),
                })
                .collect::<CliResult<_>>()?;
            let hol = core(is_holonomic(&ops))?;
            let rank = core(holonomic_rank(&ops))?;
            Ok(if json_out {
                format!("{:#}\n", json!({"version": REPORT_VERSION, "holonomic": hol, "rank": rank}))
            } else {
                format!(
                    "holonomic {hol}\nrank {}\n",
                    rank.map(|k| k.to_string()).unwrap_or_else(|| "infinite".into())
                )
            })
        }
        Command::Fano { dim, index, max_order: cap, polytopes } => {
            let table = load_table(&polytopes)?;
            let report = core(fano_period_system_in(&table, dim, index, max_order(cap)?))?;
            Ok(if json_out { report.to_json() + "\n" } else { report_text(&report) })
        }
        Command::Table { bounds, polytopes } => {
            let table = load_table(&polytopes)?;
            let mut rows = Vec::new();
            for e in &table {
                let r = if bounds {
                    let p = core(LatticePolytope::new(e.vertices.clone()))?;
                    Some(core(rank_lower_bound(&p.a_matrix(), &core(coned_triangulation(&p))?))?.r)
                } else {
                    None
                };
                rows.push((e, r));
            }
            Ok(if json_out {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|(e, r)| {
                        let mut j = json!({"dim": e.dim, "index": e.index, "vertices": e.vertices});
                        if let Some(r) = r {
                            j["lower_bound"] = json!(r);
                        }
                        j
                    })
                    .collect();
                format!("{:#}\n", Value::Array(v))
            } else {
                rows.iter()
                    .map(|(e, r)| {
                        let verts: Vec<String> = e
                            .vertices
                            .iter()
                            .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                            .collect();
                        let b = r.map(|r| format!(" r={r}")).unwrap_or_default();
                        format!("{} {} {}{}\n", e.dim, e.index, verts.join(" "), b)
                    })
                    .collect()
            })
        }
        Command::Bench { rows, repeat, max_order: cap, polytopes } => {
            let table = load_table(&polytopes)?;
            let cap = max_order(cap)?;
            let mut out = Vec::new();
            for item in rows.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (d, i) = item.split_once('/').ok_or(format!("bench: bad row {item}"))?;
                let d: usize = d.parse().map_err(|_| format!("bench: bad row {item}"))?;
                let i: usize = i.parse().map_err(|_| format!("bench: bad row {item}"))?;
                core(fano_period_system_in(&table, d, i, cap))?;
                let mut acc = [0.0f64; 4];
                let mut last = None;
                for _ in 0..repeat.max(1) {
                    let r = core(fano_period_system_in(&table, d, i, cap))?;
                    acc[0] += r.timings.ann;
                    acc[1] += r.timings.gb_w;
                    acc[2] += r.timings.base;
                    acc[3] += r.timings.gb_final;
                    last = Some(r);
                }
                let k = repeat.max(1) as f64;
                out.push((d, i, acc.map(|x| x / k), last.unwrap()));
            }
            Ok(if json_out {
                let v: Vec<Value> = out
                    .iter()
                    .map(|(d, i, t, r)| {
                        json!({"dim": d, "index": i, "status": r.status, "order_used": r.order_used,
                               "timings": {"ann": t[0], "gb_w": t[1], "base": t[2], "gb_final": t[3]}})
                    })
                    .collect();
                format!("{:#}\n", Value::Array(v))
            } else {
                let mut s = format!("{:>3} {:>5} {:>10} {:>10} {:>10} {:>10} {}\n", "dim", "index", "AppAnn", "GB+b", "base", "GB", "status");
                for (d, i, t, r) in &out {
                    s.push_str(&format!(
                        "{:>3} {:>5} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {}\n",
                        d,
                        i,
                        t[0],
                        t[1],
                        t[2],
                        t[3],
                        r.status.as_str()
                    ));
                }
                s
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
