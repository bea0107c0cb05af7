//! The analyses behind each subcommand. Every command renders its outputs in
//! memory first, so a failing run leaves no partial files behind.

use std::fs;
use std::path::{Path, PathBuf};

use phonon_core::dynamics::{
    crosstalk_experiment, evolve, IntegratorSettings, ModeSet, PulseEnvelope, PulseShape, RotationAngle, WaveState,
};
use phonon_core::error_model::{
    decoherence_error, optimal_coupling, optimal_error, purcell_corrections, purcell_ratio_bound,
    purcell_ratio_bound_at_volume_optimum, total_error, DecoherenceForm,
};
use phonon_core::feasibility::{feasibility_scan, Closure};
use phonon_core::params::{angular_to_hz, effective_min_detuning};
use phonon_core::protocol::{accumulate_decoherence, adjacent_pairing, build_step_schedule, Location, Role};
use phonon_core::volume::{closed_form_optimal_n, closed_form_volume_from, solve_balance, NRange, Regime};
use phonon_core::SystemParams;
use serde::Serialize;

use crate::config::{Command, ParamFile, PulseChoice, RegimeChoice, RunConfig};
use crate::error::{DesignerError, Result};

/// Detuning-to-coupling ratios swept by `simulate`.
pub const SIMULATE_RATIOS: [f64; 4] = [10.0, 20.0, 50.0, 100.0];

/// A rendered output file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub path: PathBuf,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    /// Human-readable digest for the terminal.
    pub summary: String,
}

/// Loads the parameter file, runs the command and writes its outputs.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let file = ParamFile::load(&cfg.params)?;
    let outcome = render(cfg, &file)?;
    for artifact in &outcome.artifacts {
        fs::write(&artifact.path, &artifact.bytes).map_err(|source| DesignerError::Write {
            path: artifact.path.clone(),
            source,
        })?;
    }
    Ok(outcome)
}

pub fn render(cfg: &RunConfig, file: &ParamFile) -> Result<Outcome> {
    match cfg.command {
        Command::Optimize => optimize(cfg, file),
        Command::Volume => volume(cfg, file),
        Command::Feasibility => feasibility(cfg, file),
        Command::Simulate => simulate(cfg, file),
        Command::Schedule => schedule(cfg, file),
    }
}

/// Shortest round-trip scientific notation.
fn num(x: f64) -> String {
    format!("{x:e}")
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Vec<u8> {
    w.into_inner().expect("writing to memory cannot fail")
}

/// Prefixes a `regime` column only when more than one regime is reported, so
/// that single-regime output does not depend on the regime's name.
fn labelled(regimes: &[RegimeChoice], regime: RegimeChoice, row: Vec<String>) -> Vec<String> {
    if regimes.len() > 1 {
        std::iter::once(regime.name().to_string()).chain(row).collect()
    } else {
        row
    }
}

fn header(regimes: &[RegimeChoice], cols: &[&str]) -> Vec<String> {
    let label = (regimes.len() > 1).then_some("regime");
    label
        .into_iter()
        .chain(cols.iter().copied())
        .map(String::from)
        .collect()
}

#[derive(Serialize)]
struct Labelled<'a, T: Serialize> {
    regime: &'a str,
    #[serde(flatten)]
    report: T,
}

#[derive(Serialize)]
struct Multi<'a, T: Serialize> {
    regimes: Vec<Labelled<'a, T>>,
}

fn json_reports<T: Serialize>(reports: Vec<(RegimeChoice, T)>) -> Vec<u8> {
    let mut bytes = if reports.len() == 1 {
        serde_json::to_vec_pretty(&reports[0].1)
    } else {
        let regimes = reports
            .into_iter()
            .map(|(r, report)| Labelled {
                regime: r.name(),
                report,
            })
            .collect();
        serde_json::to_vec_pretty(&Multi { regimes })
    }
    .expect("reports serialise to JSON");
    bytes.push(b'\n');
    bytes
}

fn optimize(cfg: &RunConfig, file: &ParamFile) -> Result<Outcome> {
    let range = cfg.n_range(file)?;
    let regimes = cfg.regimes();
    let mut w = csv::Writer::from_writer(Vec::new());
    let cols = [
        "n",
        "g_opt_rad_s",
        "g_opt_over_2pi_hz",
        "epsilon_opt_dimensionless",
        "epsilon_decoherence_dimensionless",
        "epsilon_crosstalk_dimensionless",
    ];
    write_row(&mut w, header(&regimes, &cols));
    let mut rows = 0;
    for &regime in &regimes {
        let base = file.system(regime)?;
        for n in range.iter() {
            let p = base.with_n_resonators(n)?;
            let g = optimal_coupling(&p)?;
            let parts = total_error(&p, g)?;
            let row = vec![
                n.to_string(),
                num(g),
                num(angular_to_hz(g)),
                num(optimal_error(&p)?),
                num(parts.decoherence),
                num(parts.crosstalk),
            ];
            write_row(&mut w, labelled(&regimes, regime, row));
            rows += 1;
        }
    }
    Ok(Outcome {
        artifacts: vec![Artifact {
            path: cfg.out.clone(),
            bytes: finish_csv(w),
        }],
        summary: format!("optimize: {rows} rows for N = {}..={}", range.min, range.max),
    })
}

fn write_row(w: &mut csv::Writer<Vec<u8>>, row: Vec<String>) {
    w.write_record(&row).expect("writing to memory cannot fail");
}

#[derive(Debug, Serialize)]
pub struct ParamsEcho {
    pub omega0_rad_s: f64,
    pub gamma_q_per_s: f64,
    pub gamma_r_per_s: f64,
    pub crosstalk_prefactor: f64,
    pub q_qubit: f64,
}

impl From<&SystemParams> for ParamsEcho {
    fn from(p: &SystemParams) -> Self {
        Self {
            omega0_rad_s: p.omega0(),
            gamma_q_per_s: p.gamma_q(),
            gamma_r_per_s: p.gamma_r(),
            crosstalk_prefactor: p.crosstalk_prefactor(),
            q_qubit: p.q_qubit(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClosedForms {
    pub volume_mechanical: f64,
    pub volume_microwave: f64,
    pub n_mechanical: f64,
}

#[derive(Debug, Serialize)]
pub struct PurcellReport {
    /// Register size at which the check is made (the integer optimum).
    pub n: u32,
    pub g_opt_rad_s: f64,
    pub excess_rate_per_s: f64,
    pub ratio: f64,
    pub ratio_bound: f64,
    pub ratio_bound_at_volume_optimum: f64,
}

#[derive(Debug, Serialize)]
pub struct VolumeReport {
    pub parameters: ParamsEcho,
    pub n_min: u32,
    pub n_max: u32,
    pub n_star: f64,
    pub n_best_integer: u32,
    pub volume_continuous: f64,
    pub volume_integer: f64,
    pub depth_at_n_star: f64,
    pub closed_form: ClosedForms,
    pub purcell: PurcellReport,
}

pub fn volume_report(p: &SystemParams, range: NRange) -> Result<VolumeReport> {
    let r = solve_balance(p, range)?;
    let (q, a) = (p.q_qubit(), p.crosstalk_prefactor());
    let at_best = p.with_n_resonators(r.n_best_integer)?;
    let g = optimal_coupling(&at_best)?;
    let purcell = purcell_corrections(&at_best, g)?;
    Ok(VolumeReport {
        parameters: p.into(),
        n_min: range.min,
        n_max: range.max,
        n_star: r.n_star,
        n_best_integer: r.n_best_integer,
        volume_continuous: r.volume_continuous,
        volume_integer: r.volume_integer,
        depth_at_n_star: r.depth_at_n_star,
        closed_form: ClosedForms {
            volume_mechanical: closed_form_volume_from(q, a, Regime::Mechanical)?,
            volume_microwave: closed_form_volume_from(q, a, Regime::Microwave)?,
            n_mechanical: closed_form_optimal_n(q, a)?,
        },
        purcell: PurcellReport {
            n: r.n_best_integer,
            g_opt_rad_s: g,
            excess_rate_per_s: purcell.excess_rate,
            ratio: purcell.ratio,
            ratio_bound: purcell_ratio_bound(f64::from(r.n_best_integer), a, q),
            ratio_bound_at_volume_optimum: purcell_ratio_bound_at_volume_optimum(a, q),
        },
    })
}

fn volume(cfg: &RunConfig, file: &ParamFile) -> Result<Outcome> {
    let range = cfg.n_range(file)?;
    let mut reports = Vec::new();
    let mut summary = String::new();
    for regime in cfg.regimes() {
        let report = volume_report(&file.system(regime)?, range)?;
        summary += &format!(
            "{}: n_star = {:.3}, volume = {:.2} (integer N = {}, volume {:.2})\n",
            regime.name(),
            report.n_star,
            report.volume_continuous,
            report.n_best_integer,
            report.volume_integer
        );
        reports.push((regime, report));
    }
    Ok(Outcome {
        artifacts: vec![Artifact {
            path: cfg.out.clone(),
            bytes: json_reports(reports),
        }],
        summary,
    })
}

const FEMTO: f64 = 1e15;

#[derive(Debug, Serialize)]
pub struct ClosureReport {
    pub n_min: u32,
    pub n_max: u32,
    /// `None` when the whole range is feasible.
    pub closure: Option<Closure>,
}

/// Sidecar for the feasibility closure: `<out>` with its extension replaced
/// by `closure.json`.
pub fn closure_path(out: &Path) -> PathBuf {
    out.with_extension("closure.json")
}

fn feasibility(cfg: &RunConfig, file: &ParamFile) -> Result<Outcome> {
    let range = cfg.n_range(file)?;
    let regimes = cfg.regimes();
    let profile = file.hardware()?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let cols = [
        "n",
        "lower_transmon_ff",
        "lower_couplers_ff",
        "upper_coupling_ff",
        "upper_anharmonicity_fixed_ff",
        "upper_anharmonicity_detuning_ff",
        "feasible_min_ff",
        "feasible_max_ff",
        "feasible_flag",
    ];
    write_row(&mut w, header(&regimes, &cols));
    let mut reports = Vec::new();
    let mut summary = String::new();
    for &regime in &regimes {
        let scan = feasibility_scan(&profile, &file.system(regime)?, range)?;
        for row in &scan.rows {
            let b = &row.bounds;
            let (lo, hi) = match b.feasible_interval {
                Some((lo, hi)) => (num(lo * FEMTO), num(hi * FEMTO)),
                None => (String::new(), String::new()),
            };
            let cells = vec![
                row.n.to_string(),
                num(b.lower_transmon * FEMTO),
                num(b.lower_couplers * FEMTO),
                num(b.upper_coupling * FEMTO),
                num(b.upper_anharmonicity_fixed * FEMTO),
                num(b.upper_anharmonicity_detuning * FEMTO),
                lo,
                hi,
                b.is_feasible().to_string(),
            ];
            write_row(&mut w, labelled(&regimes, regime, cells));
        }
        summary += &match scan.closure {
            Some(c) => format!(
                "{}: region closes at N = {} ({:?} floor meets {:?} ceiling)\n",
                regime.name(),
                c.first_infeasible_n,
                c.binding_lower,
                c.binding_upper
            ),
            None => format!(
                "{}: feasible for every N in {}..={}\n",
                regime.name(),
                range.min,
                range.max
            ),
        };
        reports.push((
            regime,
            ClosureReport {
                n_min: range.min,
                n_max: range.max,
                closure: scan.closure,
            },
        ));
    }
    Ok(Outcome {
        artifacts: vec![
            Artifact {
                path: cfg.out.clone(),
                bytes: finish_csv(w),
            },
            Artifact {
                path: closure_path(&cfg.out),
                bytes: json_reports(reports),
            },
        ],
        summary,
    })
}

fn pulse_shapes(choice: Option<PulseChoice>) -> Vec<PulseShape> {
    match choice {
        Some(PulseChoice::Rect) => vec![PulseShape::Rectangular],
        Some(PulseChoice::Cosine) => vec![PulseShape::raised_cosine()],
        None => vec![PulseShape::Rectangular, PulseShape::raised_cosine()],
    }
}

/// Mode counts for `simulate`: the command-line range if given, otherwise the
/// file's register size.
fn simulate_modes(cfg: &RunConfig, file: &ParamFile) -> Result<Vec<u32>> {
    let modes: Vec<u32> = if cfg.n_min.is_some() || cfg.n_max.is_some() {
        let lo = cfg.n_min.unwrap_or(file.n_resonators);
        let hi = cfg.n_max.unwrap_or(file.n_resonators);
        (lo..=hi).collect()
    } else {
        vec![file.n_resonators]
    };
    match modes.first() {
        None => Err(DesignerError::Config("empty mode range".into())),
        Some(&n) if n < 3 => Err(DesignerError::Config(format!(
            "simulate needs at least 3 modes (a target and two spectators), got {n}"
        ))),
        _ => Ok(modes),
    }
}

fn simulate(cfg: &RunConfig, file: &ParamFile) -> Result<Outcome> {
    let modes = simulate_modes(cfg, file)?;
    let base = file.system(cfg.regime.unwrap_or(RegimeChoice::Mechanical))?;
    let settings = IntegratorSettings::default();
    let mut w = csv::Writer::from_writer(Vec::new());
    write_row(
        &mut w,
        [
            "case",
            "pulse_shape",
            "n_modes",
            "delta_over_g_dimensionless",
            "g_rad_s",
            "analytic_bound_dimensionless",
            "leakage_dimensionless",
            "leakage_over_bound_dimensionless",
            "infidelity_dimensionless",
        ]
        .map(String::from)
        .to_vec(),
    );
    let mut summary = String::new();
    for shape in pulse_shapes(cfg.pulse) {
        let g = optimal_coupling(&base)?;
        let infidelity = resonant_swap_infidelity(g, shape, &settings)?;
        write_row(
            &mut w,
            vec![
                "resonant_swap".into(),
                shape.name().into(),
                "1".into(),
                String::new(),
                num(g),
                String::new(),
                String::new(),
                String::new(),
                num(infidelity),
            ],
        );
        for &n in &modes {
            let p = base.with_n_resonators(n)?;
            for ratio in SIMULATE_RATIOS {
                let g = effective_min_detuning(&p) / ratio;
                let out = crosstalk_experiment(&p, g, shape, &settings)?;
                write_row(
                    &mut w,
                    vec![
                        "crosstalk".into(),
                        shape.name().into(),
                        n.to_string(),
                        num(ratio),
                        num(g),
                        num(out.analytic_bound),
                        num(out.numerical_leakage),
                        num(out.numerical_leakage / out.analytic_bound),
                        String::new(),
                    ],
                );
            }
        }
        summary += &format!("{}: resonant swap infidelity {infidelity:.2e}\n", shape.name());
    }
    Ok(Outcome {
        artifacts: vec![Artifact {
            path: cfg.out.clone(),
            bytes: finish_csv(w),
        }],
        summary,
    })
}

/// `1 - P(|e0>) / <psi|psi>` after an area-normalised swap of a single
/// resonant mode.
pub fn resonant_swap_infidelity(g: f64, shape: PulseShape, settings: &IntegratorSettings) -> Result<f64> {
    let modes = ModeSet::new(vec![0.0], vec![g], Some(0))?;
    let pulse = PulseEnvelope::area_normalized(shape, g, RotationAngle::Swap)?;
    let out = evolve(&WaveState::mode_excited(1, 0), &modes, &pulse, settings)?;
    Ok(1.0 - out.state.qubit_population() / out.state.norm_sqr())
}

#[derive(Debug, Serialize)]
pub struct SegmentReport {
    pub kind: phonon_core::protocol::GateKind,
    pub resonator: usize,
    pub start_s: f64,
    pub duration_s: f64,
}

#[derive(Debug, Serialize)]
pub struct IntervalReport {
    pub location: Location,
    pub start_s: f64,
    pub end_s: f64,
}

#[derive(Debug, Serialize)]
pub struct ResonatorReport {
    pub index: usize,
    #[serde(flatten)]
    pub role: Role,
    pub residency: Vec<IntervalReport>,
    pub time_in_qubit_s: f64,
    pub time_in_resonator_s: f64,
    pub decoherence_error: f64,
}

#[derive(Debug, Serialize)]
pub struct PairReport {
    pub swapped: usize,
    pub partner: usize,
    pub pair_averaged_error: f64,
}

#[derive(Debug, Serialize)]
pub struct ScheduleReport {
    pub n_resonators: u32,
    pub g_rad_s: f64,
    pub swap_time_s: f64,
    pub duration_s: f64,
    /// `((2N - 3/2) Gamma_r + (3/2) Gamma_q) T_s`, for comparison with the pairs.
    pub exact_form_error: f64,
    pub segments: Vec<SegmentReport>,
    pub resonators: Vec<ResonatorReport>,
    pub pairs: Vec<PairReport>,
}

pub fn schedule_report(p: &SystemParams) -> Result<ScheduleReport> {
    let n = p.n_resonators();
    let g = optimal_coupling(p)?;
    let timeline = build_step_schedule(n, &adjacent_pairing(n), g)?;
    let tally = accumulate_decoherence(&timeline, p.gamma_q(), p.gamma_r());
    let tick = timeline.tick();
    let secs = |ticks: u64| ticks as f64 * tick;
    Ok(ScheduleReport {
        n_resonators: n,
        g_rad_s: g,
        swap_time_s: timeline.swap_time(),
        duration_s: timeline.duration(),
        exact_form_error: decoherence_error(p, g, DecoherenceForm::Exact)?,
        segments: timeline
            .segments()
            .iter()
            .map(|s| SegmentReport {
                kind: s.kind,
                resonator: s.resonator,
                start_s: secs(s.start_ticks),
                duration_s: secs(s.duration_ticks),
            })
            .collect(),
        resonators: (0..n as usize)
            .map(|k| ResonatorReport {
                index: k,
                role: timeline.roles()[k],
                residency: timeline
                    .residency(k)
                    .iter()
                    .map(|r| IntervalReport {
                        location: r.location,
                        start_s: secs(r.start_ticks),
                        end_s: secs(r.end_ticks),
                    })
                    .collect(),
                time_in_qubit_s: timeline.time_in(k, Location::Qubit),
                time_in_resonator_s: timeline.time_in(k, Location::Resonator),
                decoherence_error: tally.per_resonator[k],
            })
            .collect(),
        pairs: timeline
            .pairs()
            .iter()
            .zip(&tally.pair_averaged)
            .map(|(&(i, j), &e)| PairReport {
                swapped: i,
                partner: j,
                pair_averaged_error: e,
            })
            .collect(),
    })
}

fn schedule(cfg: &RunConfig, file: &ParamFile) -> Result<Outcome> {
    let mut reports = Vec::new();
    let mut summary = String::new();
    for regime in cfg.regimes() {
        let report = schedule_report(&file.system(regime)?)?;
        summary += &format!(
            "{}: {} gates, layer duration {:.4e} s\n",
            regime.name(),
            report.pairs.len(),
            report.duration_s
        );
        reports.push((regime, report));
    }
    Ok(Outcome {
        artifacts: vec![Artifact {
            path: cfg.out.clone(),
            bytes: json_reports(reports),
        }],
        summary,
    })
}
