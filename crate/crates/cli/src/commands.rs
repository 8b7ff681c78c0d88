use hombound::boundary::{quotient_scan, region_scatter, sample_curve, scatter_csv, theorem_setup, TheoremSetup};
use hombound::constructions::{blowup, lex_density, lex_product, BlowupVector, LexMode, LexSpec};
use hombound::expr::parse_expression;
use hombound::forcing::truncation_residuals;
use hombound::random::{estimate_with, find_stringent, prime_failure_bound, sample_gnp, RngSeed, DEFAULT_ATTEMPT_CAP};
use hombound::scalar::{format_rational, format_real, rat};
use hombound::structure::{is_asymmetric, is_folding, is_homogeneous, is_prime, is_stringent};
use hombound::{density, weighted_density, Graph, LabeledGraph, Rational, Scalar};
use serde_json::{json, Value};

use crate::input::{self, FormatFlag};
use crate::{Command, Failure, Property, Report, Settings, SetupArgs};

fn scalar<S: Scalar>(x: &S) -> Value {
    if S::EXACT {
        Value::String(x.render())
    } else {
        json!(x.to_f64())
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialise")
}

fn exact_report(text: impl Into<String>, value: Value) -> Report {
    Report::new(text, json!({ "value": value, "exact": true }))
}

fn real_report(text: impl Into<String>, value: Value) -> Report {
    Report::new(text, json!({ "value": value, "exact": false }))
}

fn probability(flag: &str, p: &str) -> Result<Rational, Failure> {
    input::rational(flag, p)
}

pub fn dispatch(cmd: &Command, format: FormatFlag, json_mode: bool, settings: &Settings) -> Result<Report, Failure> {
    let seed = RngSeed(settings.seed);
    match cmd {
        Command::Density { pattern, target } => {
            let f = input::graph("--pattern", pattern, format)?;
            let g = input::graph("--target", target, format)?;
            let t = density(&f, &g)?;
            Ok(exact_report(format_rational(&t), scalar(&t)))
        }
        Command::Wdensity { pattern, target, backend } => {
            let f = input::graph("--pattern", pattern, format)?;
            if backend.float {
                wdensity::<f64>(&f, target, format)
            } else {
                wdensity::<Rational>(&f, target, format)
            }
        }
        Command::Eval { expr, target, pin, backend } => {
            if backend.float {
                eval::<f64>(expr, target, pin.as_deref(), format)
            } else {
                eval::<Rational>(expr, target, pin.as_deref(), format)
            }
        }
        Command::Check { property, graph, set } => {
            let g = input::graph("--graph", graph, format)?;
            let v = match property {
                Property::Prime => is_prime(&g),
                Property::Asymmetric => is_asymmetric(&g),
                Property::Stringent => is_stringent(&g),
                Property::Homogeneous => {
                    let set = set.as_deref().ok_or_else(|| Failure::Usage("homogeneous needs --set".into()))?;
                    let a = input::indices("--set", set)?;
                    if let Some(&v) = a.iter().find(|&&v| v >= g.order()) {
                        return Err(Failure::Usage(format!("--set: vertex {v} out of range for order {}", g.order())));
                    }
                    is_homogeneous(&g, &a)
                }
            };
            Ok(exact_report(v.to_string(), json!(v)))
        }
        Command::Fold { graph, onto, map } => {
            let g = input::graph("--graph", graph, format)?;
            let h = input::graph("--onto", onto, format)?;
            let phi = input::indices("--map", map)?;
            let v = is_folding(&phi, &g, &h)?;
            Ok(exact_report(v.to_string(), json!(v)))
        }
        Command::Sample { gnp, trials } => {
            let p = probability("--p", &gnp.p)?;
            let mut text = String::new();
            let mut records = Vec::new();
            for i in 0..*trials {
                let s = seed.trial(i);
                let g = sample_gnp(gnp.n, &p, s)?;
                text += &g.to_graph6();
                text.push('\n');
                records.push(json!({ "index": i, "seed": s.0, "graph6": g.to_graph6(), "edge_list": g.to_edge_list() }));
            }
            let mut r = exact_report(text, json!({ "n": gnp.n, "p": format_rational(&p), "trials": trials }));
            r.records = records;
            Ok(r)
        }
        Command::Rate { gnp, trials } => {
            let p = probability("--p", &gnp.p)?;
            let mut records = Vec::new();
            let est = estimate_with(gnp.n, &p, *trials, seed, |t| {
                if json_mode {
                    records.push(to_value(t));
                }
            })?;
            let rate = est.rate();
            let text = format!("{}/{} stringent, rate {}", est.passed, est.trials, format_rational(&rate));
            let value = json!({
                "trials": est.trials,
                "passed": est.passed,
                "rate": format_rational(&rate),
                "failures": est.failures,
            });
            let mut r = exact_report(text, value);
            r.records = records;
            Ok(r)
        }
        Command::Bound { n, p } => {
            let p = probability("--p", p)?;
            let b = prime_failure_bound(*n, &p)?;
            let mut r = exact_report(format_rational(&b), scalar(&b));
            r.summary.insert("approx".into(), json!(b.to_f64()));
            Ok(r)
        }
        Command::FindStringent { gnp, cap } => {
            let p = probability("--p", &gnp.p)?;
            let (g, attempts) = find_stringent(gnp.n, &p, seed, *cap)?;
            let value = json!({ "graph6": g.to_graph6(), "edge_list": g.to_edge_list(), "attempts": attempts });
            Ok(exact_report(g.to_graph6(), value))
        }
        Command::LexDensity { pattern, spec, truncate, backend } => {
            let h = input::graph("--pattern", pattern, format)?;
            let spec = input::text("--spec", spec)?;
            let mode = truncate.map_or(LexMode::Exact, LexMode::Truncated);
            if backend.float {
                lex::<f64>(&h, &spec, mode)
            } else {
                lex::<Rational>(&h, &spec, mode)
            }
        }
        Command::Blowup { graph, sizes } => {
            let g = input::graph("--graph", graph, format)?;
            let a = BlowupVector::new(input::indices("--sizes", sizes)?)?;
            let b = blowup(&g, &a)?;
            Ok(exact_report(b.to_edge_list(), json!({ "edge_list": b.to_edge_list(), "graph6": b.to_graph6() })))
        }
        Command::Product { left, right, backend } => {
            if backend.float {
                product::<f64>(left, right, format)
            } else {
                product::<Rational>(left, right, format)
            }
        }
        Command::Setup { setup } => {
            let s = build_setup(setup, settings)?;
            Ok(real_report(s.to_json(), to_value(&s)))
        }
        Command::Curve { setup, resolution, dyadic_level, svg } => {
            let s = build_setup(setup, settings)?;
            let series = sample_curve(&s, *resolution, settings.depth, *dyadic_level)?;
            let text = if *svg { series.to_svg() } else { series.to_csv() };
            Ok(real_report(text, to_value(&series)))
        }
        Command::Quotients { setup, j_min, j_max } => {
            let s = build_setup(setup, settings)?;
            let q = quotient_scan(&s, *j_min, *j_max, settings.depth)?;
            let mut text = String::from("j,h,max_quotient\n");
            for x in &q {
                text += &format!("{},{},{}\n", x.j, format_real(x.h), format_real(x.max_quotient));
            }
            Ok(real_report(text, to_value(&q)))
        }
        Command::Scatter { setup, count } => {
            let s = build_setup(setup, settings)?;
            let pts = region_scatter(&s, *count, settings.depth, seed)?;
            Ok(real_report(scatter_csv(&pts), to_value(&pts)))
        }
        Command::ForcingResidual { graph, mu, k, max_depth, .. } => {
            let f = match graph {
                Some(g) => input::labeled("--graph", g, format)?,
                None => LabeledGraph::fully_labeled(find_stringent(6, &rat(1, 2), seed, DEFAULT_ATTEMPT_CAP)?.0),
            };
            let mu = match mu {
                Some(m) => input::rationals("--mu", m)?,
                None => vec![rat(1, f.order() as i64); f.order()],
            };
            let rows = truncation_residuals(&f, &mu, *k, *max_depth)?;
            let mut text = String::from("depth,residual,residual_approx,lifted_residual\n");
            let mut values = Vec::new();
            for r in &rows {
                text += &format!(
                    "{},{},{},{}\n",
                    r.depth,
                    format_rational(&r.residual),
                    format_real(r.residual.to_f64()),
                    format_rational(&r.lifted_residual)
                );
                values.push(json!({
                    "depth": r.depth,
                    "residual": format_rational(&r.residual),
                    "lifted_residual": format_rational(&r.lifted_residual),
                }));
            }
            let mut r = exact_report(text, Value::Array(values));
            r.summary.insert("graph".into(), json!(f.graph().to_edge_list()));
            Ok(r)
        }
    }
}

fn build_setup(args: &SetupArgs, settings: &Settings) -> Result<TheoremSetup, Failure> {
    Ok(theorem_setup(args.n, RngSeed(settings.seed))?)
}

fn wdensity<S: Scalar>(f: &Graph, target: &str, format: FormatFlag) -> Result<Report, Failure> {
    let w = input::weighted::<S>("--target", target, format)?;
    let t = weighted_density(f, &w)?;
    Ok(Report::new(t.render(), json!({ "value": scalar(&t), "exact": S::EXACT })))
}

fn eval<S: Scalar>(expr: &str, target: &str, pin: Option<&str>, format: FormatFlag) -> Result<Report, Failure> {
    let text = input::text("--expr", expr)?;
    let q = parse_expression(&text).map_err(|e| Failure::Usage(format!("--expr: {e}")))?;
    let w = input::weighted::<S>("--target", target, format)?;
    let phi = pin.map(|p| input::pins("--pin", p)).transpose()?;
    let v = q.evaluate(phi.as_ref(), &w)?;
    Ok(Report::new(v.render(), json!({ "value": scalar(&v), "exact": S::EXACT, "expr": q.to_string() })))
}

fn lex<S: Scalar>(h: &Graph, spec: &str, mode: LexMode) -> Result<Report, Failure> {
    let spec = LexSpec::<S>::parse(spec).map_err(|e| Failure::Usage(format!("--spec: {e}")))?;
    let v = lex_density(h, &spec, mode)?;
    let text = match mode {
        LexMode::Exact => v.value.render(),
        LexMode::Truncated(_) => format!("{}\nerror_bound {}", v.value.render(), v.error_bound.render()),
    };
    let exact = S::EXACT && mode == LexMode::Exact;
    Ok(Report::new(text, json!({ "value": scalar(&v.value), "error_bound": scalar(&v.error_bound), "exact": exact })))
}

fn product<S: Scalar>(left: &str, right: &str, format: FormatFlag) -> Result<Report, Failure> {
    let a = input::weighted::<S>("--left", left, format)?;
    let b = input::weighted::<S>("--right", right, format)?;
    let p = lex_product(&a, &b)?;
    Ok(Report::new(p.to_text(), json!({ "value": p.to_text(), "exact": S::EXACT })))
}
