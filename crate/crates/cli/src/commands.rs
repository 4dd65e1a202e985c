use serde::Serialize;

use dit_core::arrival::{self, ArrivalMethod, CurrentSeries};
use dit_core::bohmian::{self, EnsembleSpec, IntegratorOptions, TrajectoryStatus};
use dit_core::observables::density as density_at;
use dit_core::{InitialState, Scenario, Wavefunction};

use crate::output::{self, Format, Num, Report, Result, Table};
use crate::CommonArgs;

/// Snapshot times: `--times`, else the points of `--grid-t`, else
/// `t_start` and five equal steps up to `t_max`.
fn snapshot_times(scenario: &Scenario, args: &CommonArgs) -> Result<Vec<f64>> {
    let times = if let Some(t) = &args.times {
        t.clone()
    } else if let Some(g) = scenario.t_grid {
        g.points()
    } else {
        std::iter::once(scenario.t_start)
            .chain((1..=5).map(|k| scenario.t_max * k as f64 / 5.0))
            .collect()
    };
    if let Some(&t) = times.iter().find(|&&t| !(t > 0.0 && t.is_finite())) {
        return Err(dit_core::Error::NonPositiveTime(t).into());
    }
    Ok(times)
}

fn file_name(stem: &str, format: Format) -> String {
    format!("{stem}.{}", format.extension())
}

pub fn density(scenario: &Scenario, args: &CommonArgs) -> Result<Report> {
    #[derive(Serialize)]
    struct Density<'a> {
        x_um: &'a [f64],
        t_ms: &'a [f64],
        /// One row per time, 1/um.
        rho_per_um: Vec<Vec<f64>>,
    }

    let times = snapshot_times(scenario, args)?;
    let xs = scenario.x_grid.points();
    let wf = Wavefunction::new(scenario);
    let rows = args
        .execution()
        .map(&xs, |&x| times.iter().map(|&t| wf.sample(x, t).map(|s| density_at(&s))).collect::<dit_core::Result<Vec<f64>>>())
        .into_iter()
        .collect::<dit_core::Result<Vec<_>>>()?;

    let name = file_name("density", args.format);
    let path = args.out.join(&name);
    match args.format {
        Format::Csv => {
            let header = std::iter::once("x_um".to_string()).chain(times.iter().map(|&t| format!("t={}ms", Num(t))));
            let mut table = Table::new(header);
            for (x, row) in xs.iter().zip(&rows) {
                let cells: Vec<Num> = std::iter::once(*x).chain(row.iter().copied()).map(Num).collect();
                let refs: Vec<&dyn std::fmt::Display> = cells.iter().map(|c| c as &dyn std::fmt::Display).collect();
                table.row(&refs);
            }
            output::write_text(&path, &table.into_string())?;
        }
        Format::Json => {
            let rho_per_um = (0..times.len()).map(|k| rows.iter().map(|r| r[k]).collect()).collect();
            output::write_json(&path, &Density { x_um: &xs, t_ms: &times, rho_per_um })?;
        }
    }
    Ok(Report {
        outputs: vec![name],
        ..Report::default()
    })
}

fn series_for(scenario: &Scenario, args: &CommonArgs) -> Result<CurrentSeries> {
    let times = scenario.time_grid().points();
    Ok(arrival::current_series(scenario, scenario.detector_x, &times, args.execution())?)
}

pub fn current(scenario: &Scenario, args: &CommonArgs) -> Result<Report> {
    #[derive(Serialize)]
    struct Current<'a> {
        detector_x_um: f64,
        t_ms: &'a [f64],
        j_per_ms: &'a [f64],
    }

    let series = series_for(scenario, args)?;
    let name = file_name("current", args.format);
    let path = args.out.join(&name);
    match args.format {
        Format::Csv => {
            let mut table = Table::new(["t_ms", "j_per_ms"]);
            for (t, j) in series.times.iter().zip(&series.j) {
                table.row(&[&Num(*t), &Num(*j)]);
            }
            output::write_text(&path, &table.into_string())?;
        }
        Format::Json => output::write_json(
            &path,
            &Current {
                detector_x_um: series.detector_x,
                t_ms: &series.times,
                j_per_ms: &series.j,
            },
        )?,
    }
    Ok(Report {
        outputs: vec![name],
        ..Report::default()
    })
}

pub fn trajectories(scenario: &Scenario, args: &CommonArgs) -> Result<Report> {
    #[derive(Serialize)]
    struct Path<'a> {
        trajectory_id: usize,
        x0_um: f64,
        status: TrajectoryStatus,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<&'a str>,
        t_ms: Vec<f64>,
        x_um: Vec<f64>,
        v_um_per_ms: Vec<f64>,
    }

    let spec = EnsembleSpec {
        count: args.count,
        seed: args.seed,
        mode: args.sampling(),
        t_end: scenario.t_max,
        options: IntegratorOptions::default(),
    };
    let ens = bohmian::ensemble(scenario, &spec, args.execution())?;
    let name = file_name("trajectories", args.format);
    let path = args.out.join(&name);
    match args.format {
        Format::Csv => {
            let mut table = Table::new(["trajectory_id", "t_ms", "x_um", "v_um_per_ms", "status"]);
            for (id, tr) in ens.trajectories.iter().enumerate() {
                let status = tr.status.as_str();
                for p in &tr.samples {
                    table.row(&[&id, &Num(p.t), &Num(p.x), &Num(p.v), &status]);
                }
            }
            output::write_text(&path, &table.into_string())?;
        }
        Format::Json => {
            let paths: Vec<Path> = ens
                .trajectories
                .iter()
                .enumerate()
                .map(|(id, tr)| Path {
                    trajectory_id: id,
                    x0_um: tr.x0,
                    status: tr.status,
                    reason: tr.reason.as_deref(),
                    t_ms: tr.samples.iter().map(|p| p.t).collect(),
                    x_um: tr.samples.iter().map(|p| p.x).collect(),
                    v_um_per_ms: tr.samples.iter().map(|p| p.v).collect(),
                })
                .collect();
            output::write_json(&path, &paths)?;
        }
    }
    let failures = ens
        .trajectories
        .iter()
        .enumerate()
        .filter(|(_, tr)| tr.status != TrajectoryStatus::Completed)
        .map(|(id, tr)| {
            format!(
                "trajectory {id} (x0 = {} um): {}: {}",
                tr.x0,
                tr.status.as_str(),
                tr.reason.as_deref().unwrap_or("")
            )
        })
        .collect();
    Ok(Report {
        outputs: vec![name],
        failures,
        seed: Some(args.seed),
    })
}

#[derive(Debug, Serialize)]
struct ArrivalSummary {
    n: Option<u32>,
    mean_ms: Option<f64>,
    detection_probability: Option<f64>,
    method: ArrivalMethod,
    single_signed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn arrival(scenario: &Scenario, args: &CommonArgs) -> Result<Report> {
    #[derive(Serialize)]
    struct Distribution<'a> {
        n: Option<u32>,
        method: ArrivalMethod,
        t_ms: &'a [f64],
        j_per_ms: &'a [f64],
        pi_per_ms: &'a [f64],
    }

    let method = args.arrival_method();
    let states: Vec<InitialState> = match &args.n_values {
        Some(ns) => ns.iter().map(|&n| InitialState::Eigenstate { n }).collect(),
        None => vec![scenario.state],
    };
    let mut report = Report::default();
    let mut summaries = Vec::new();
    for state in states {
        let s = Scenario {
            state,
            ..scenario.clone()
        };
        s.validate()?;
        let n = state.quantum_number();
        let series = series_for(&s, args)?;
        let last = series.times[series.len() - 1];
        let detection = arrival::detection_probability(&series, last)?;
        let mut summary = ArrivalSummary {
            n,
            mean_ms: None,
            detection_probability: Some(detection),
            method,
            single_signed: series.single_signed(),
            error: None,
        };
        match arrival::arrival(&series, method) {
            Ok(dist) => {
                summary.mean_ms = Some(dist.mean);
                let stem = match n {
                    Some(n) => format!("arrival_n{n}"),
                    None => "arrival".to_string(),
                };
                let name = file_name(&stem, args.format);
                let path = args.out.join(&name);
                match args.format {
                    Format::Csv => {
                        let mut table = Table::new(["t_ms", "j_per_ms", "pi_per_ms"]);
                        for ((t, j), p) in series.times.iter().zip(&series.j).zip(&dist.pi) {
                            table.row(&[&Num(*t), &Num(*j), &Num(*p)]);
                        }
                        output::write_text(&path, &table.into_string())?;
                    }
                    Format::Json => output::write_json(
                        &path,
                        &Distribution {
                            n,
                            method,
                            t_ms: &series.times,
                            j_per_ms: &series.j,
                            pi_per_ms: &dist.pi,
                        },
                    )?,
                }
                report.outputs.push(name);
            }
            Err(e) => {
                report.failures.push(format!("{state}: {e}"));
                summary.error = Some(e.to_string());
            }
        }
        summaries.push(summary);
    }
    let name = "arrival_summary.json".to_string();
    output::write_json(&args.out.join(&name), &summaries)?;
    report.outputs.push(name);
    Ok(report)
}
