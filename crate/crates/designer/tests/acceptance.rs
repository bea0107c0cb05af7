//! Acceptance criteria, one check per criterion. Runs without the libtest
//! harness so every line is printed whether it passes or not; exits non-zero
//! if any criterion fails.

mod common;

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{baseline_path, golden_section_log, rel};
use phonon_core::dynamics::{
    crosstalk_experiment, evolve, two_level_rabi, Complex64, IntegratorSettings, ModeSet, PulseEnvelope, PulseShape,
    RotationAngle, WaveState,
};
use phonon_core::error_model::{
    decoherence_error, optimal_coupling, purcell_corrections, purcell_ratio_bound, total_error, DecoherenceForm,
};
use phonon_core::feasibility::{calibrate_qeff, feasibility_scan, trk_coupling_bound, HardwareProfile};
use phonon_core::params::{effective_min_detuning, hz_to_angular, swap_time};
use phonon_core::protocol::{accumulate_decoherence, adjacent_pairing, build_step_schedule};
use phonon_core::volume::{closed_form_volume_from, solve_balance, NRange, Regime};
use phonon_core::SystemParams;
use phonon_designer::{ParamFile, RegimeChoice};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || {
        format!("took {:.3} s, limit {limit_s} s", elapsed.as_secs_f64())
    })
}

fn baseline(regime: RegimeChoice) -> SystemParams {
    ParamFile::load(&baseline_path()).unwrap().system(regime).unwrap()
}

fn volume_mechanical() -> Check {
    let start = Instant::now();
    let r = solve_balance(&baseline(RegimeChoice::Mechanical), NRange::default()).map_err(|e| e.to_string())?;
    within(start.elapsed(), 1.0)?;
    ensure((13.0..=17.0).contains(&r.n_star), || format!("n_star {}", r.n_star))?;
    ensure((198.0..=242.0).contains(&r.volume_continuous), || {
        format!("volume {}", r.volume_continuous)
    })?;
    Ok(format!("n_star = {:.3}, V = {:.2}", r.n_star, r.volume_continuous))
}

fn volume_microwave() -> Check {
    let start = Instant::now();
    let mw = solve_balance(&baseline(RegimeChoice::Microwave), NRange::default()).map_err(|e| e.to_string())?;
    let mech = solve_balance(&baseline(RegimeChoice::Mechanical), NRange::default()).map_err(|e| e.to_string())?;
    within(start.elapsed(), 1.0)?;
    let ratio = mech.volume_continuous / mw.volume_continuous;
    ensure((7.0..=10.0).contains(&mw.n_star), || format!("n_star {}", mw.n_star))?;
    ensure((2.5..=3.5).contains(&ratio), || format!("ratio {ratio}"))?;
    Ok(format!(
        "n_star = {:.3}, V = {:.2}, ratio = {ratio:.3}",
        mw.n_star, mw.volume_continuous
    ))
}

fn closed_forms() -> Check {
    let q = 1.25e6;
    let mech = closed_form_volume_from(q, 1.0, Regime::Mechanical).map_err(|e| e.to_string())?;
    let mw = closed_form_volume_from(q, 1.0, Regime::Microwave).map_err(|e| e.to_string())?;
    ensure((mech - 226.0).abs() <= 1.0, || format!("mechanical {mech}"))?;
    ensure((mw - 68.0).abs() <= 1.0, || format!("microwave {mw}"))?;
    for (regime, closed, label) in [
        (RegimeChoice::Mechanical, mech, "mechanical"),
        (RegimeChoice::Microwave, mw, "microwave"),
    ] {
        let solved = solve_balance(&baseline(regime), NRange::default()).map_err(|e| e.to_string())?;
        ensure(rel(closed, solved.volume_continuous) <= 0.15, || {
            format!("{label}: closed {closed} vs solved {}", solved.volume_continuous)
        })?;
    }
    Ok(format!("{mech:.2}, {mw:.2}"))
}

fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

fn optimizer_oracle() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let draws = 1000;
    let (mut worst_g, mut worst_balance) = (0.0f64, 0.0f64);
    for _ in 0..draws {
        let omega0 = hz_to_angular(log_uniform(&mut rng, 1e9, 1e10));
        let gamma_q = log_uniform(&mut rng, 1e2, 1e6);
        let gamma_r = if rng.random_bool(0.1) {
            0.0
        } else {
            log_uniform(&mut rng, 1e-2, 1e5)
        };
        let a = log_uniform(&mut rng, 0.1, 10.0);
        let n = rng.random_range(2..=500u32);
        let p = SystemParams::new(omega0, gamma_q, gamma_r, a, n).map_err(|e| e.to_string())?;

        let g_closed = optimal_coupling(&p).map_err(|e| e.to_string())?;
        let g_numeric = golden_section_log(|g| total_error(&p, g).unwrap().total, omega0 * 1e-9, omega0);
        worst_g = worst_g.max(rel(g_numeric, g_closed));

        let parts = total_error(&p, g_closed).map_err(|e| e.to_string())?;
        worst_balance = worst_balance.max(rel(parts.decoherence, 2.0 * parts.crosstalk));
    }
    within(start.elapsed(), 10.0)?;
    ensure(worst_g <= 1e-6, || format!("worst g* mismatch {worst_g:e}"))?;
    ensure(worst_balance <= 1e-9, || format!("worst balance {worst_balance:e}"))?;
    Ok(format!(
        "{draws} draws, worst g* {worst_g:.1e}, worst balance {worst_balance:.1e}"
    ))
}

fn protocol_validation() -> Check {
    let base = baseline(RegimeChoice::Mechanical);
    let mut worst = 0.0f64;
    for n in [2u32, 4, 10, 16, 50] {
        let p = base.with_n_resonators(n).map_err(|e| e.to_string())?;
        let g = optimal_coupling(&p).map_err(|e| e.to_string())?;
        let timeline = build_step_schedule(n, &adjacent_pairing(n), g).map_err(|e| e.to_string())?;
        let tally = accumulate_decoherence(&timeline, p.gamma_q(), p.gamma_r());
        let exact = decoherence_error(&p, g, DecoherenceForm::Exact).map_err(|e| e.to_string())?;
        for &e in &tally.pair_averaged {
            worst = worst.max(rel(e, exact));
        }
    }
    ensure(worst <= 1e-12, || format!("worst {worst:e}"))?;
    Ok(format!("worst relative deviation {worst:.1e}"))
}

fn trk_calibration() -> Check {
    let (g, c, w) = (hz_to_angular(10e6), 200e-15, hz_to_angular(2e9));
    let q = calibrate_qeff(g, c, w).map_err(|e| e.to_string())?;
    ensure((3.5e-21..=4.5e-21).contains(&q), || format!("q_eff {q:e}"))?;
    let profile = HardwareProfile::new(q, 1e-15, hz_to_angular(50e6), w).map_err(|e| e.to_string())?;
    let back = trk_coupling_bound(&profile, c).map_err(|e| e.to_string())?;
    ensure(rel(back, g) <= 1e-14, || format!("round trip {back} vs {g}"))?;
    Ok(format!("q_eff = {q:.3e} C"))
}

fn feasibility() -> Check {
    let file = ParamFile::load(&baseline_path()).unwrap();
    let profile = file.hardware().unwrap();
    let start = Instant::now();
    let scan = feasibility_scan(&profile, &baseline(RegimeChoice::Mechanical), NRange::default())
        .map_err(|e| e.to_string())?;
    within(start.elapsed(), 1.0)?;

    let row15 = scan.rows.iter().find(|r| r.n == 15).unwrap();
    let (lo, hi) = row15.bounds.feasible_interval.ok_or("N = 15 infeasible")?;
    let (lo_ff, hi_ff) = (lo * 1e15, hi * 1e15);
    ensure(rel(lo_ff, 40.0) <= 0.05 && rel(lo_ff, 38.7) <= 0.01, || {
        format!("floor {lo_ff} fF")
    })?;
    ensure(rel(hi_ff, 290.0) <= 0.01, || format!("ceiling {hi_ff} fF"))?;
    ensure(
        scan.rows.iter().filter(|r| r.n <= 150).all(|r| r.bounds.is_feasible()),
        || "infeasible below N = 150".into(),
    )?;
    let c = scan.closure.ok_or("region never closes")?;
    ensure((150..=450).contains(&c.first_infeasible_n), || {
        format!("closure at {}", c.first_infeasible_n)
    })?;
    Ok(format!(
        "N = 15: [{lo_ff:.1}, {hi_ff:.1}] fF; closes at N = {} ({:?} vs {:?})",
        c.first_infeasible_n, c.binding_lower, c.binding_upper
    ))
}

fn dynamics() -> Check {
    let settings = IntegratorSettings::default();
    let g = 1.0e7;
    let single = ModeSet::new(vec![0.0], vec![g], Some(0)).map_err(|e| e.to_string())?;
    let start_state = WaveState::mode_excited(1, 0);

    let swap =
        PulseEnvelope::area_normalized(PulseShape::Rectangular, g, RotationAngle::Swap).map_err(|e| e.to_string())?;
    let out = evolve(&start_state, &single, &swap, &settings)
        .map_err(|e| e.to_string())?
        .state;
    let swap_infidelity = 1.0 - out.qubit_population();
    ensure(swap_infidelity <= 1e-9, || {
        format!("swap infidelity {swap_infidelity:e}")
    })?;

    let phase =
        PulseEnvelope::area_normalized(PulseShape::Rectangular, g, RotationAngle::Phase).map_err(|e| e.to_string())?;
    let out = evolve(&start_state, &single, &phase, &settings)
        .map_err(|e| e.to_string())?
        .state;
    let minus = start_state.scaled(Complex64::new(-1.0, 0.0));
    let phase_err = 1.0 - minus.overlap(&out).re;
    ensure(phase_err <= 1e-9, || format!("phase gate error {phase_err:e}"))?;

    let delta = 10.0 * g;
    let t = swap_time(g).map_err(|e| e.to_string())?;
    let two = ModeSet::new(vec![delta], vec![g], None).map_err(|e| e.to_string())?;
    let pulse = PulseEnvelope::new(PulseShape::Rectangular, t).map_err(|e| e.to_string())?;
    let out = evolve(&WaveState::qubit_excited(1), &two, &pulse, &settings)
        .map_err(|e| e.to_string())?
        .state;
    let oracle = two_level_rabi(g, delta, t).map_err(|e| e.to_string())?;
    let rabi_err = (out.mode_population(0) - oracle).abs();
    ensure(rabi_err <= 1e-6, || {
        format!("spectator {} vs {oracle}", out.mode_population(0))
    })?;

    let timer = Instant::now();
    let mut worst_drift = 0.0f64;
    for m in [2usize, 5, 10, 20] {
        let modes = ModeSet::ladder(m, 20.0 * g, g).map_err(|e| e.to_string())?;
        let out = evolve(&WaveState::mode_excited(m, 0), &modes, &swap, &settings).map_err(|e| e.to_string())?;
        worst_drift = worst_drift.max((out.state.norm_sqr() - 1.0).abs());
    }
    within(timer.elapsed(), 5.0)?;
    ensure(worst_drift <= 1e-9, || format!("norm drift {worst_drift:e}"))?;
    Ok(format!(
        "swap {swap_infidelity:.1e}, phase {phase_err:.1e}, spectator {:.7} (oracle {oracle:.7}), drift {worst_drift:.1e}",
        out.mode_population(0)
    ))
}

fn crosstalk() -> Check {
    let settings = IntegratorSettings::default();
    let p = baseline(RegimeChoice::Mechanical).with_n_resonators(5).unwrap();
    let delta = effective_min_detuning(&p);
    let timer = Instant::now();
    let mut ratios = Vec::new();
    let mut rect_at_20 = None;
    for k in [10.0, 20.0, 50.0] {
        let out = crosstalk_experiment(&p, delta / k, PulseShape::Rectangular, &settings).map_err(|e| e.to_string())?;
        let ratio = out.numerical_leakage / out.analytic_bound;
        ensure((0.25..=4.0).contains(&ratio), || {
            format!("delta = {k} g: ratio {ratio}")
        })?;
        ratios.push(ratio);
        if k == 20.0 {
            rect_at_20 = Some(out.numerical_leakage);
        }
    }
    let rect = rect_at_20.unwrap();
    let smooth = crosstalk_experiment(&p, delta / 20.0, PulseShape::raised_cosine(), &settings)
        .map_err(|e| e.to_string())?
        .numerical_leakage;
    within(timer.elapsed(), 30.0)?;
    let suppression = smooth / rect;
    ensure(suppression <= 0.1, || {
        format!("raised cosine / rectangular = {suppression}")
    })?;
    Ok(format!(
        "leakage/bound {:.3} {:.3} {:.3}; raised cosine / rectangular at 20g = {suppression:.2e}",
        ratios[0], ratios[1], ratios[2]
    ))
}

fn purcell() -> Check {
    let p = baseline(RegimeChoice::Mechanical);
    let r = solve_balance(&p, NRange::default()).map_err(|e| e.to_string())?;
    let at = p.with_n_resonators(r.n_best_integer).unwrap();
    let g = optimal_coupling(&at).map_err(|e| e.to_string())?;
    let ratio = purcell_corrections(&at, g).map_err(|e| e.to_string())?.ratio;
    let bound = purcell_ratio_bound(f64::from(r.n_best_integer), p.crosstalk_prefactor(), p.q_qubit());
    ensure(ratio <= bound, || format!("ratio {ratio} above bound {bound}"))?;
    ensure(bound < 1e-2, || format!("bound {bound}"))?;
    Ok(format!(
        "N = {}: ratio {ratio:.3e} <= bound {bound:.3e}",
        r.n_best_integer
    ))
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let params = baseline_path();
    let runs: [(&str, &str, &[&str]); 5] = [
        ("optimize", "csv", &[]),
        ("volume", "json", &[]),
        ("feasibility", "csv", &[]),
        ("simulate", "csv", &["--n-min", "5", "--n-max", "5"]),
        ("schedule", "json", &[]),
    ];
    for (cmd, ext, extra) in runs {
        let mut outputs = Vec::new();
        for attempt in 0..2 {
            let out = dir.path().join(format!("{cmd}_{attempt}.{ext}"));
            let status = Command::new(env!("CARGO_BIN_EXE_designer"))
                .arg(cmd)
                .arg("--params")
                .arg(&params)
                .arg("--out")
                .arg(&out)
                .args(extra)
                .output()
                .map_err(|e| e.to_string())?
                .status;
            ensure(status.success(), || format!("{cmd} exited with {status}"))?;
            let mut bytes = fs::read(&out).map_err(|e| e.to_string())?;
            if cmd == "feasibility" {
                bytes.extend(fs::read(out.with_extension("closure.json")).map_err(|e| e.to_string())?);
            }
            outputs.push(bytes);
        }
        ensure(outputs[0] == outputs[1], || {
            format!("{cmd} output differs between runs")
        })?;
    }
    Ok("optimize, volume, feasibility, simulate, schedule byte-identical".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("quantum volume, mechanical", volume_mechanical),
        ("quantum volume, microwave", volume_microwave),
        ("closed-form volumes", closed_forms),
        ("optimal coupling vs numerical minimum", optimizer_oracle),
        ("protocol decoherence accounting", protocol_validation),
        ("coupling-charge calibration round trip", trk_calibration),
        ("capacitance feasibility region", feasibility),
        ("gate dynamics", dynamics),
        ("cross-talk leakage and pulse shaping", crosstalk),
        ("Purcell correction", purcell),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
