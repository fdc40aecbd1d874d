// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::{json, Value};

use fekete_core::condition::{mu_norm_at_roots, mu_norm_max, mu_norm_max_coeff, mu_norm_of_polynomial, ConditionReport};
use fekete_core::energy::{log_energy, EnergyReport};
use fekete_core::formats::{parse_points, parse_polynomial, write_sphere_points};
use fekete_core::inequalities::known_k;
use fekete_core::optimize::{kn_estimate, optimize, Objective, OptimizerConfig, Termination};
use fekete_core::verify::{run_suite, summarize, summary_csv, Suite, VerifyOptions};
use fekete_core::wire::json_f64;
use fekete_core::{Configuration, TwoFloat};

use crate::args::{EnergyArgs, Format, KnArgs, MuArgs, ObjectiveArg, OptimizeArgs, Precision, RouteArg, SuiteArg, VerifyArgs};
use crate::config::Defaults;
use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;
use crate::svg::line_plot;

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    CheckFailed,
    NoConvergence,
}

fn with_file<E: Into<fekete_core::Error>>(path: &Path) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::File {
        path: path.display().to_string(),
        source: e.into(),
    }
}

fn read_configuration(manifest: &mut RunManifest, path: &Path) -> CliResult<Configuration<f64>> {
    let text = manifest.read_input(path)?;
    parse_points(&text)
        .and_then(|p| p.into_configuration())
        .map_err(with_file(path))
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", path.display())))
}

fn print_json(mut value: Value, manifest: &mut RunManifest) {
    value["manifest"] = manifest.finish();
    println!("{}", serde_json::to_string_pretty(&value).expect("json"));
}

pub fn energy(args: &EnergyArgs, defaults: &Defaults) -> CliResult<Status> {
    let format = defaults.pick_enum(args.format, "format", Format::Json)?;
    let mut manifest = RunManifest::new("energy");
    let cfg = read_configuration(&mut manifest, &args.points)?;
    let value = log_energy(&cfg)?;
    let report = EnergyReport::new(value, cfg.len());
    match format {
        Format::Json => print_json(serde_json::to_value(&report).expect("json"), &mut manifest),
        Format::Csv => {
            println!("# manifest: {}", manifest.finish());
            println!("n,value,lower_bound,upper_bound_conjectured,gap_to_expansion");
            println!(
                "{},{:?},{:?},{:?},{:?}",
                report.n, report.value, report.lower_bound, report.upper_bound_conjectured, report.gap_to_expansion
            );
        }
    }
    Ok(Status::Success)
}

fn report_json(report: &ConditionReport<f64>) -> Value {
    report.to_json()
}

fn dd_report_json(report: &ConditionReport<TwoFloat>) -> Value {
    report.to_json()
}

pub fn mu(args: &MuArgs, defaults: &Defaults) -> CliResult<Status> {
    let mut manifest = RunManifest::new("mu");
    let default_route = if args.poly.is_some() { RouteArg::Coeff } else { RouteArg::Spherical };
    let route = defaults.pick_enum(args.route, "route", default_route)?;
    let precision = defaults.pick_enum(args.precision, "precision", Precision::Double)?;
    let dd = precision == Precision::DoubleDouble;
    let mut out = match (&args.poly, &args.points) {
        (Some(path), _) => {
            let text = manifest.read_input(path)?;
            let poly = parse_polynomial(&text).map_err(with_file(path))?;
            match (route, dd) {
                (RouteArg::Coeff, false) => report_json(&mu_norm_of_polynomial(&poly)?),
                (RouteArg::Coeff, true) => {
                    // roots from f64, condition numbers in double-double
                    let f64_report = mu_norm_of_polynomial(&poly)?;
                    if f64_report.per_root.iter().any(|r| r.root.is_none() || r.mu.is_infinite()) {
                        report_json(&f64_report)
                    } else {
                        let roots: Vec<_> = f64_report.per_root.iter().filter_map(|r| r.root.map(|z| z.cast())).collect();
                        dd_report_json(&mu_norm_at_roots(&poly.cast::<TwoFloat>(), &roots)?)
                    }
                }
                (RouteArg::Spherical, _) => {
                    let coeff = mu_norm_of_polynomial(&poly)?;
                    let points: Vec<_> = coeff
                        .per_root
                        .iter()
                        .map(|r| match r.root {
                            Some(z) => fekete_core::sphere::plane_to_sphere(z),
                            None => fekete_core::SpherePoint::north_pole(),
                        })
                        .collect();
                    report_json(&mu_norm_max(&Configuration::new(points)?))
                }
            }
        }
        (None, Some(path)) => {
            let cfg = read_configuration(&mut manifest, path)?;
            match (route, dd) {
                (RouteArg::Spherical, _) => report_json(&mu_norm_max(&cfg)),
                (RouteArg::Coeff, false) => report_json(&mu_norm_max_coeff(&cfg)?),
                (RouteArg::Coeff, true) => dd_report_json(&mu_norm_max_coeff(&cfg.cast::<TwoFloat>())?),
            }
        }
        (None, None) => return Err(CliError::Input("either --poly or --points is required".into())),
    };
    out["precision"] = json!(if dd { "double-double" } else { "double" });
    print_json(out, &mut manifest);
    Ok(Status::Success)
}

pub fn verify(args: &VerifyArgs, defaults: &Defaults) -> CliResult<Status> {
    let mut manifest = RunManifest::new("verify");
    let suite = match defaults.pick_enum(args.suite, "suite", SuiteArg::All)? {
        SuiteArg::All => Suite::All,
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Inequalities => Suite::Inequalities,
    };
    let base = VerifyOptions::default();
    let opts = VerifyOptions {
        suite,
        trials: defaults.pick(args.trials, "trials", base.trials)?,
        seed: defaults.pick(args.seed, "seed", base.seed)?,
        n_max: defaults.pick(args.n_max, "n_max", base.n_max)?,
        tolerance_override: args.inject_tolerance,
    };
    manifest.seed = Some(opts.seed);
    let records = run_suite(&opts)?;
    let manifest_json = manifest.finish();

    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    writeln!(out, "{}", json!({ "manifest": manifest_json }))?;
    for r in &records {
        writeln!(out, "{}", r.to_json())?;
    }
    out.flush()?;

    let rows = summarize(&records);
    let csv = format!("# manifest: {manifest_json}\n{}", summary_csv(&rows));
    match &args.summary {
        Some(path) => create(path)?.write_all(csv.as_bytes())?,
        None => eprint!("{csv}"),
    }
    let failed = rows.iter().any(|r| r.failed > 0);
    Ok(if failed { Status::CheckFailed } else { Status::Success })
}

pub fn optimize_cmd(args: &OptimizeArgs, defaults: &Defaults) -> CliResult<Status> {
    let mut manifest = RunManifest::new("optimize");
    let start = match &args.resume {
        Some(path) => Some(read_configuration(&mut manifest, path)?),
        None => None,
    };
    let n = match (args.n, &start) {
        (Some(n), _) => n,
        (None, Some(s)) => s.len(),
        (None, None) => return Err(CliError::Input("--n is required unless --resume is given".into())),
    };
    let objective = match defaults.pick_enum(args.objective, "objective", ObjectiveArg::E)? {
        ObjectiveArg::E => Objective::MinEnergy,
        ObjectiveArg::Q => Objective::MaxQuotient,
    };
    let mut opts = OptimizerConfig::new(n, objective);
    opts.restarts = defaults.pick(args.restarts, "restarts", 4)?;
    opts.seed = defaults.pick(args.seed, "seed", 0)?;
    opts.max_iters = defaults.pick(args.max_iters, "max_iters", opts.max_iters)?;
    opts.grad_tol = defaults.pick(args.grad_tol, "grad_tol", opts.grad_tol)?;
    manifest.seed = Some(opts.seed);

    let run = optimize(&opts, start.as_ref())?;
    let best = run.best();
    let manifest_json = manifest.finish();

    if let Some(path) = &args.out {
        let mut w = create(path)?;
        writeln!(w, "# fekete optimize: n = {n}, objective = {}, value = {:?}", objective.as_str(), best.final_value)?;
        writeln!(w, "# manifest: {manifest_json}")?;
        w.write_all(write_sphere_points(&best.final_config).as_bytes())?;
        w.flush()?;
    }
    if let Some(path) = &args.trace {
        let mut w = create(path)?;
        writeln!(w, "{}", json!({ "manifest": manifest_json }))?;
        for t in &run.traces {
            t.write_jsonl(&mut w)?;
        }
        w.flush()?;
    }
    let summary = json!({
        "n": n,
        "objective": objective.as_str(),
        "final_value": json_f64(best.final_value),
        "k_value": best.k_value().map(json_f64),
        "best_restart": run.best_index,
        "termination": best.termination,
        "iterations": best.iterations.len() - 1,
        "restart_values": run.finals().into_iter().map(json_f64).collect::<Vec<_>>(),
        "out": args.out.as_ref().map(|p| p.display().to_string()),
        "manifest": manifest_json,
    });
    println!("{}", serde_json::to_string_pretty(&summary).expect("json"));
    Ok(if best.termination == Termination::MaxIterations {
        Status::NoConvergence
    } else {
        Status::Success
    })
}

pub fn kn(args: &KnArgs, defaults: &Defaults) -> CliResult<Status> {
    let mut manifest = RunManifest::new("kn");
    let n_min = defaults.pick(args.n_min, "n_min", 2)?;
    let n_max = defaults.pick(args.n_max, "n_max", 4)?;
    if n_min < 2 || n_max > 16 || n_min > n_max {
        return Err(CliError::Input(format!("need 2 ≤ n-min ≤ n-max ≤ 16, got {n_min}..{n_max}")));
    }
    let format = defaults.pick_enum(args.format, "format", Format::Csv)?;
    let mut opts = OptimizerConfig::new(n_min, Objective::MaxQuotient);
    opts.restarts = defaults.pick(args.restarts, "restarts", 4)?;
    opts.seed = defaults.pick(args.seed, "seed", 0)?;
    manifest.seed = Some(opts.seed);
    let estimates = (n_min..=n_max).map(|n| kn_estimate(n, &opts)).collect::<Result<Vec<_>, _>>()?;
    let manifest_json = manifest.finish();

    match format {
        Format::Csv => {
            println!("# manifest: {manifest_json}");
            println!("n,k_value,closed_form,abs_error,spread,std_dev,agreeing,restarts");
            for e in &estimates {
                let (closed, err) = match known_k(e.n) {
                    Some(k) => (format!("{k:.10}"), format!("{:.3e}", (e.k_value - k).abs())),
                    None => (String::new(), String::new()),
                };
                println!(
                    "{},{:.10},{closed},{err},{:.3e},{:.3e},{},{}",
                    e.n, e.k_value, e.spread, e.std_dev, e.agreeing, e.restarts
                );
            }
        }
        Format::Json => {
            let rows: Vec<Value> = estimates
                .iter()
                .map(|e| {
                    let mut v = serde_json::to_value(e).expect("json");
                    v["closed_form"] = json!(known_k(e.n));
                    v
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&json!({ "estimates": rows, "manifest": manifest_json })).expect("json"));
        }
    }
    if let Some(path) = &args.svg {
        let points: Vec<(f64, f64)> = estimates.iter().map(|e| (e.n as f64, e.k_value)).collect();
        let mut w = create(path)?;
        writeln!(w, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>")?;
        writeln!(w, "<!-- manifest: {} -->", manifest_json.to_string().replace("--", "\\u002d\\u002d"))?;
        w.write_all(line_plot(&points, "Sharp quotient constant K_N", "N", "K_N").as_bytes())?;
        w.flush()?;
    }
    Ok(Status::Success)
}
