//! End-to-end acceptance checks. Runs as a plain binary so that every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use packetlab::constants::{ELECTRON_MASS, HBAR, PLANCK, SPEED_OF_LIGHT as C};
use packetlab::experiments::{
    cavity_profile, fringe_spacing, mach_zehnder_probabilities, resonance_check,
    two_laser_intensity, two_slit_intensity, visibility, CavityConfig, MachZehnderConfig,
    ScreenIntensity, TwoLaserConfig, TwoSlitConfig,
};
use packetlab::kinematics::{compton_wavelength, kinematic_state, wavelengths, ParticleState};
use packetlab::sampler::{goodness_of_fit, parallel_histogram, SeededStream};
use packetlab::wavepacket::{
    envelope_width_at, evaluate, make_massive_packet, make_photon_packet, wave_equation_residual,
};
use rand::Rng;

const X: [f64; 3] = [1.0, 0.0, 0.0];
const RED: f64 = 633e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

type Check = fn() -> Outcome;

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// The 1000 β values shared by the kinematic identities.
fn betas() -> Vec<f64> {
    let mut rng = SeededStream::new(2024, 0).rng();
    (0..1000).map(|_| rng.random_range(0.0..=0.999)).collect()
}

fn electron(beta: f64) -> ParticleState {
    ParticleState::from_beta(ELECTRON_MASS, beta).unwrap()
}

fn energy_partition() -> Outcome {
    let worst = betas()
        .into_iter()
        .map(|b| {
            let k = kinematic_state(&electron(b));
            let mc2 = k.relativistic_mass * C * C;
            (mc2 - k.internal_energy - k.kinetic_term).abs() / mc2
        })
        .fold(0.0, f64::max);
    outcome(
        worst < 1e-12,
        format!("max relative residual {worst:.3e} (< 1e-12)"),
    )
}

fn wavelength_identity() -> Outcome {
    let worst = betas()
        .into_iter()
        .filter(|&b| b > 0.0)
        .map(|b| {
            let w = wavelengths(&electron(b)).unwrap();
            rel(
                w.de_broglie.powi(-2) + w.compton.powi(-2),
                w.transformed_compton.powi(-2),
            )
        })
        .fold(0.0, f64::max);
    let compton = compton_wavelength(ELECTRON_MASS).unwrap();
    let direct = PLANCK / (ELECTRON_MASS * C);
    let pass = worst < 1e-12
        && (compton - 2.42631e-12).abs() <= 1e-16
        && (compton - direct).abs() <= 1e-16;
    outcome(
        pass,
        format!("max relative residual {worst:.3e} (< 1e-12); compton {compton:.6e} m"),
    )
}

fn phase_frequency_identity() -> Outcome {
    let worst = betas()
        .into_iter()
        .filter(|&b| b > 0.0)
        .map(|b| {
            let s = electron(b);
            let k = kinematic_state(&s);
            let p = make_massive_packet(&s, X, 1e-9).unwrap();
            let hbar_omega = HBAR * p.carrier_angular_frequency();
            let rest = ELECTRON_MASS * C * C;
            let split = s.speed() * k.momentum + rest * (1.0 - b * b).sqrt();
            rel(hbar_omega, k.gamma * rest).max(rel(hbar_omega, split))
        })
        .fold(0.0, f64::max);
    outcome(
        worst < 1e-12,
        format!("max relative residual {worst:.3e} (< 1e-12)"),
    )
}

fn nonrelativistic_limit() -> Outcome {
    let s = electron(1e-3);
    let p = make_massive_packet(&s, X, 1e-9).unwrap();
    let momentum = kinematic_state(&s).momentum;
    let shifted = p.carrier_angular_frequency() - ELECTRON_MASS * C * C / HBAR;
    let classical = momentum * momentum / (2.0 * ELECTRON_MASS * HBAR);
    let dev = rel(shifted, classical);
    outcome(
        dev <= 1e-5,
        format!("relative deviation {dev:.3e} (<= 1e-5)"),
    )
}

fn wave_equation() -> Outcome {
    // The residual bound is met by a narrow packet (σ = λ/16). At the default
    // width σ = 10λ the carrier dominates the normalized residual, so that
    // packet is checked for convergence order only.
    let narrow = make_photon_packet(C / RED, X, RED / 16.0).unwrap();
    let sigma = narrow.envelope_width();
    let r = wave_equation_residual(&narrow, sigma / 64.0, 6.0 * sigma).unwrap();
    let ratio = r.convergence_order.exp2();

    let wide = make_photon_packet(C / RED, X, 10.0 * RED).unwrap();
    let ws = wide.envelope_width();
    let w = wave_equation_residual(&wide, ws / 128.0, 4.0 * ws).unwrap();
    let wide_ratio = w.convergence_order.exp2();

    let ok = |q: f64| (3.5..=4.5).contains(&q);
    outcome(
        ok(ratio) && r.residual_norm < 1e-4 && ok(wide_ratio),
        format!(
            "σ=λ/16: ratio {ratio:.4}, residual {:.3e} at h=σ/64 (< 1e-4); \
             σ=10λ: ratio {wide_ratio:.4} at h=σ/128, residual {:.3e} (informational)",
            r.residual_norm, w.residual_norm
        ),
    )
}

fn non_spreading() -> Outcome {
    let p = make_photon_packet(C / RED, X, 10.0 * RED).unwrap();
    let sigma = p.envelope_width();
    let w0 = envelope_width_at(&p, 0.0, sigma / 16.0).unwrap();
    let w1 = envelope_width_at(&p, 1e6 * sigma / C, sigma / 16.0).unwrap();
    let width_dev = rel(w1, w0);

    let mut rng = SeededStream::new(6, 0).rng();
    let tau = sigma / C;
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let theta: f64 = rng.random_range(0.0..PI);
        let phi: f64 = rng.random_range(0.0..2.0 * PI);
        let n = [
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        ];
        let q = make_photon_packet(C / RED, n, sigma).unwrap();
        let r: [f64; 3] = std::array::from_fn(|_| rng.random_range(-20.0..20.0) * sigma);
        let t = rng.random_range(-50.0..50.0) * tau;
        let dt = rng.random_range(-100.0..100.0) * tau;
        let shift = C * dt;
        let moved = [
            r[0] + shift * n[0],
            r[1] + shift * n[1],
            r[2] + shift * n[2],
        ];
        let a = evaluate(&q, r, t).norm();
        let b = evaluate(&q, moved, t + dt).norm();
        worst = worst.max((a - b).abs());
    }
    outcome(
        width_dev < 1e-9 && worst < 1e-12,
        format!("width drift {width_dev:.3e} (< 1e-9); max |ΔB| {worst:.3e} (< 1e-12)"),
    )
}

fn reference_slits() -> TwoSlitConfig {
    TwoSlitConfig::new(RED, 0.25e-3, 40e-6, 1.0)
}

/// Seeds (out of 100) whose χ²/dof lands in [0.7, 1.5] for `n = 1e6` arrivals
/// in 256 bins, sampled over `parts` streams.
fn fitting_seeds(intensity: &ScreenIntensity, parts: usize) -> (usize, f64, f64) {
    let range = (intensity.lower(), intensity.upper());
    let stats: Vec<f64> = (0..100)
        .map(|seed| {
            let h = parallel_histogram(intensity, 1_000_000, parts, 256, range, seed).unwrap();
            goodness_of_fit(&h, intensity).unwrap().chi_square_per_dof
        })
        .collect();
    let inside = stats.iter().filter(|q| (0.7..=1.5).contains(*q)).count();
    let lo = stats.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = stats.iter().copied().fold(0.0, f64::max);
    (inside, lo, hi)
}

fn two_slit() -> Outcome {
    let cfg = reference_slits();
    let both = two_slit_intensity(&cfg).unwrap();
    let one = two_slit_intensity(&TwoSlitConfig {
        open_b: false,
        ..cfg
    })
    .unwrap();
    let spacing = fringe_spacing(&both).unwrap();
    let spacing_dev = rel(spacing, 2.532e-3);
    let half_period = 0.5 * cfg.fringe_period();
    let v_both = visibility(&both, half_period).unwrap();
    let v_one = visibility(&one, half_period).unwrap();
    let (inside, lo, hi) = fitting_seeds(&both, 1);
    outcome(
        spacing_dev <= 0.02 && v_both >= 0.99 && v_one <= 0.05 && inside >= 95,
        format!(
            "spacing {spacing:.4e} m ({:.2}% off, <= 2%); visibility {v_both:.4} / {v_one:.4}; \
             χ²/dof in range for {inside}/100 seeds (min {lo:.3}, max {hi:.3})",
            100.0 * spacing_dev
        ),
    )
}

fn mach_zehnder() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..=100 {
        let phase = 2.0 * PI * i as f64 / 100.0;
        let with = mach_zehnder_probabilities(&MachZehnderConfig {
            phase_difference: phase,
            second_beamsplitter_present: true,
        });
        let without = mach_zehnder_probabilities(&MachZehnderConfig {
            phase_difference: phase,
            second_beamsplitter_present: false,
        });
        worst = worst
            .max((with.p1 - (phase / 2.0).cos().powi(2)).abs())
            .max((without.p1 - 0.5).abs())
            .max((with.p1 + with.p2 - 1.0).abs())
            .max((without.p1 + without.p2 - 1.0).abs());
    }
    outcome(
        worst <= 1e-12,
        format!("max deviation {worst:.3e} (<= 1e-12)"),
    )
}

fn cavity() -> Outcome {
    let cfg = CavityConfig {
        cavity_length: 5.0 * RED / 2.0,
        wavelength: RED,
    };
    let r = resonance_check(cfg.cavity_length, cfg.wavelength, 1e-9);
    // 4101 points put a grid point on every node.
    let profile = cavity_profile(&cfg, 4101).unwrap();
    let peak = profile.peak();
    let worst = cfg
        .node_positions()
        .iter()
        .map(|&x| profile.density_at(x).max(cfg.relative_intensity(x) * peak) / peak)
        .fold(0.0, f64::max);
    let off = CavityConfig {
        cavity_length: 2.6 * RED / 2.0,
        ..cfg
    };
    let rejected = matches!(
        cavity_profile(&off, 4101),
        Err(packetlab::Error::Domain(ref m)) if m.contains("cavity not resonant")
    );
    outcome(
        r.resonant && r.mode_number == 5 && worst < 1e-12 && rejected,
        format!(
            "mode {}; max node density {worst:.3e} × peak (< 1e-12); off-resonance rejected: {rejected}",
            r.mode_number
        ),
    )
}

fn two_lasers() -> Outcome {
    let (d, l) = (0.25e-3, 1.0);
    let shot = two_laser_intensity(&TwoLaserConfig::new(RED, d, l, 0.7)).unwrap();
    let v = visibility(&shot, 0.5 * RED * l / d).unwrap();
    let shots: Vec<_> = (0..1000)
        .map(|k| {
            let phase = 2.0 * PI * k as f64 / 1000.0;
            two_laser_intensity(&TwoLaserConfig::new(RED, d, l, phase)).unwrap()
        })
        .collect();
    let avg = ScreenIntensity::average(&shots).unwrap();
    let mean = avg.density().iter().sum::<f64>() / avg.len() as f64;
    let spread = avg
        .density()
        .iter()
        .map(|&y| (y - mean).abs() / mean)
        .fold(0.0, f64::max);
    outcome(
        v >= 0.99 && spread < 1e-3,
        format!(
            "per-shot visibility {v:.4} (>= 0.99); ensemble non-uniformity {spread:.3e} (< 1e-3)"
        ),
    )
}

fn cli(args: &[&str], dir: &std::path::Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_packetlab"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn reproducibility() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &'static str| {
        vec![
            "two-slit",
            "--param",
            "wavelength=633e-9",
            "--param",
            "slit_separation=2.5e-4",
            "--param",
            "slit_width=4e-5",
            "--param",
            "screen_distance=1",
            "--samples",
            "1000000",
            "--bins",
            "256",
            "--seed",
            "42",
            "--out",
            out,
        ]
    };
    let read = |name: &str| std::fs::read(dir.path().join(name)).unwrap();
    let ok_runs = cli(&args("a"), dir.path()).status.success()
        && cli(&args("b"), dir.path()).status.success();
    let identical = ok_runs && read("a.csv") == read("b.csv") && read("a.json") == read("b.json");

    let summary: serde_json::Value = serde_json::from_slice(&read("a.json")).unwrap();
    std::fs::write(dir.path().join("echo.json"), summary["config"].to_string()).unwrap();
    let replay = cli(
        &["two-slit", "--config", "echo.json", "--out", "c"],
        dir.path(),
    );
    let round_trip = replay.status.success() && read("a.csv") == read("c.csv");

    let intensity = two_slit_intensity(&reference_slits()).unwrap();
    let (inside, lo, hi) = fitting_seeds(&intensity, 8);
    outcome(
        identical && round_trip && inside >= 95,
        format!(
            "repeat runs identical: {identical}; echoed config replays CSV: {round_trip}; \
             8-way χ²/dof in range for {inside}/100 seeds (min {lo:.3}, max {hi:.3})"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 11] = [
        ("energy partition", energy_partition),
        ("wavelength identity", wavelength_identity),
        ("phase-frequency identity", phase_frequency_identity),
        ("non-relativistic limit", nonrelativistic_limit),
        ("linear wave equation", wave_equation),
        ("non-spreading packet", non_spreading),
        ("two-slit pattern", two_slit),
        ("Mach-Zehnder", mach_zehnder),
        ("cavity", cavity),
        ("independent lasers", two_lasers),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {:>2} {name}: {} ({:.1} s)",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.pass);
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
