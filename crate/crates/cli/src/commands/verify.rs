use std::f64::consts::{PI, TAU};

use abcyl_core::currents::{
    chi, circular_current_mode, circular_current_mode_quadrature, packet_z_integrals, MomentumRule,
};
use abcyl_core::fermi::{persistent_compact, persistent_exact, persistent_linearized};
use abcyl_core::spectrum::{denergy_dbeta, energy_finite, enumerate_fermi_sea};
use abcyl_core::spinors::gamma::{clifford_error, GammaSet};
use abcyl_core::spinors::{
    hamiltonian_matrix_element, inner_product, k_eigen_residual, k_operator_apply, reduced_residual, AzimuthalTerm,
    Component, SeparableField, SpinorField, ZProfile,
};
use abcyl_core::{
    Complex, HalfOdd, MixedState, Mode, ModeSpec, PacketSpec, ParamKey, Params, Polarization, QuadratureRule,
    SeaCriterion,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{Fault, GlobalArgs, VerifyArgs};
use crate::context::Context;
use crate::error::CliError;
use crate::output::{num, Cell, Report, Table};

const DEFAULTS: [(ParamKey, f64); 4] = [
    (ParamKey::Mu, 1.0),
    (ParamKey::Nu, 1.0),
    (ParamKey::Beta, 0.3),
    (ParamKey::Alpha, 5.0),
];

/// Whether the measured figure must stay below or rise above the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bound {
    AtMost,
    AtLeast,
}

struct Suite {
    name: &'static str,
    tolerance: f64,
    bound: Bound,
    worst: f64,
}

impl Suite {
    fn at_most(name: &'static str, tolerance: f64, worst: f64) -> Self {
        Self {
            name,
            tolerance,
            bound: Bound::AtMost,
            worst,
        }
    }

    fn at_least(name: &'static str, tolerance: f64, worst: f64) -> Self {
        Self {
            name,
            tolerance,
            bound: Bound::AtLeast,
            worst,
        }
    }

    fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.worst <= self.tolerance,
            Bound::AtLeast => self.worst >= self.tolerance,
        }
    }
}

/// Shared state for the suites.
struct Env {
    d: Params,
    seed: u64,
    z_order: usize,
    fault: Option<Fault>,
}

impl Env {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }

    fn length(&self) -> f64 {
        self.d.length().expect("verify runs on a finite cylinder")
    }

    fn modes(&self, n_max: u32, lambda_max_twice: i64) -> Vec<ModeSpec> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            for tw in (-lambda_max_twice..=lambda_max_twice).step_by(2) {
                let l = HalfOdd::from_twice(tw).expect("odd");
                for s in Polarization::BOTH {
                    out.push(ModeSpec::finite(n, l, s).expect("n >= 1"));
                }
            }
        }
        out
    }
}

type SuiteResult = Result<Suite, CliError>;

fn clifford(_: &Env) -> SuiteResult {
    Ok(Suite::at_most(
        "clifford",
        1e-15,
        clifford_error(&GammaSet::<f64>::standard()),
    ))
}

fn orthonormality(env: &Env) -> SuiteResult {
    let mut worst = 0.0f64;
    for beta in [0.0, 0.3, 0.9] {
        let d = env.d.with_beta(beta);
        let rule = QuadratureRule::new(&d, 5, env.z_order, 32)?;
        let modes = env.modes(5, 9);
        for (i, a) in modes.iter().enumerate() {
            for b in &modes[i..] {
                let v = inner_product(a, b, &d, &rule)?;
                let expected = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((v - Complex::new(expected, 0.0)).norm());
            }
        }
    }
    Ok(Suite::at_most("orthonormality", 1e-10, worst))
}

fn residual_samples(env: &Env, stream: u64) -> Vec<f64> {
    let mut rng = env.rng(stream);
    let l = env.length();
    (0..32).map(|_| rng.gen_range(0.0..l)).collect()
}

fn dirac_residual(env: &Env) -> SuiteResult {
    let zs = residual_samples(env, 1);
    let mut worst = 0.0f64;
    for spec in env.modes(5, 9) {
        let e = spec.energy(&env.d)?;
        let mode = match env.fault {
            Some(Fault::EnergyOffBy1e3) => Mode::with_energy(&spec, &env.d, e * (1.0 + 1e-3))?,
            None => Mode::new(&spec, &env.d)?,
        };
        worst = worst.max(reduced_residual(&mode, &zs) / e);
    }
    Ok(Suite::at_most("dirac_residual", 1e-12, worst))
}

/// A 1% energy error must be visible well above the residual floor.
fn residual_sensitivity(env: &Env) -> SuiteResult {
    let zs = residual_samples(env, 2);
    let mut weakest = f64::INFINITY;
    for spec in env.modes(3, 5) {
        let e = spec.energy(&env.d)?;
        let mode = Mode::with_energy(&spec, &env.d, e * 1.01)?;
        weakest = weakest.min(reduced_residual(&mode, &zs) / e);
    }
    Ok(Suite::at_least("residual_sensitivity", 1e-3, weakest))
}

/// K is diagonal on stationary (k = 0) modes with eigenvalue ±λ; for k ≠ 0
/// one lower component picks up exactly −2κ times itself.
fn k_operator_structure(env: &Env) -> SuiteResult {
    let inf = env.d.with_nu(0.0);
    let mut rng = env.rng(3);
    let pts: Vec<(f64, f64)> = (0..8)
        .map(|_| (rng.gen_range(0.0..TAU), rng.gen_range(-3.0..3.0)))
        .collect();
    let mut worst = 0.0f64;
    for tw in (-7i64..=7).step_by(2) {
        let l = HalfOdd::from_twice(tw).expect("odd");
        for (s, sign) in [(Polarization::Up, 1.0), (Polarization::Down, -1.0)] {
            let kappa = sign * l.value::<f64>();
            let still = Mode::new(&ModeSpec::infinite(0.0, l, s), &inf)?;
            worst = worst.max(k_eigen_residual(&still, kappa, 0.0, &pts));

            let spec = ModeSpec::finite(2, l, s)?;
            let moving = Mode::new(&spec, &env.d)?;
            let odd = if s == Polarization::Up { 2 } else { 3 };
            for &(phi, zf) in &pts {
                let z = (zf + 3.0) / 6.0 * env.length();
                let psi = moving.value(0.0, phi, z);
                let diff = k_operator_apply(&moving, 0.0, phi, z) - psi.scale(Complex::new(kappa, 0.0));
                for c in 0..4 {
                    let expected = if c == odd {
                        psi.c[c] * (-2.0 * kappa)
                    } else {
                        Complex::new(0.0, 0.0)
                    };
                    worst = worst.max((diff.c[c] - expected).norm());
                }
            }
        }
    }
    Ok(Suite::at_most("k_operator_structure", 1e-12, worst))
}

/// sin-profile components vanish at both ends; the cos component does not.
fn boundary(env: &Env) -> SuiteResult {
    let l = env.length();
    let mut worst = 0.0f64;
    for spec in env.modes(5, 9) {
        let mode = Mode::new(&spec, &env.d)?;
        for z in [0.0, l] {
            let prof = mode.z_profile(z);
            for (c, comp) in mode.components.iter().enumerate() {
                let v = prof[c].norm();
                match comp.profile {
                    ZProfile::Sin(_) => worst = worst.max(v),
                    ZProfile::Cos(_) if v < 1e-3 * comp.amp.norm() => worst = f64::INFINITY,
                    _ => {}
                }
            }
        }
    }
    Ok(Suite::at_most("boundary", 1e-13, worst))
}

fn circular_current(env: &Env) -> SuiteResult {
    let mut worst = 0.0f64;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mixes = [
        (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)),
        (Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)),
        (Complex::new(s, 0.0), Complex::new(0.0, s)),
        (Complex::new(0.6, 0.0), Complex::new(-0.8, 0.0)),
    ];
    for beta in [0.0, 0.4] {
        let d = env.d.with_beta(beta);
        let rule = QuadratureRule::new(&d, 3, env.z_order, 32)?;
        for n in 1..=3u32 {
            for tw in (-5i64..=5).step_by(2) {
                let l = HalfOdd::from_twice(tw).expect("odd");
                let reference = chi(n, l, &d)? / TAU;
                for (cp, cm) in mixes {
                    let st = MixedState::new(n, l, cp, cm)?;
                    let closed = circular_current_mode(&st, &d)?;
                    if closed.to_bits() != reference.to_bits() {
                        worst = f64::INFINITY;
                    }
                    let quad = circular_current_mode_quadrature(&st, &d, &rule)?;
                    worst = worst.max((quad - closed).abs());
                }
            }
        }
    }
    Ok(Suite::at_most("circular_current", 1e-9, worst))
}

/// `∂E/∂β = χ` against a central difference.
fn derivative_identity(env: &Env) -> SuiteResult {
    let mut rng = env.rng(4);
    let mut worst = 0.0f64;
    let h = 1e-5;
    for _ in 0..50 {
        let n = rng.gen_range(1..=6u32);
        let l = HalfOdd::from_twice(2 * rng.gen_range(-6i64..=5) + 1).expect("odd");
        let beta = rng.gen_range(-1.0..1.0);
        let d = env.d.with_beta(beta);
        let spec = ModeSpec::finite(n, l, Polarization::Up)?;
        let fd =
            (energy_finite(n, l, &d.with_beta(beta + h))? - energy_finite(n, l, &d.with_beta(beta - h))?) / (2.0 * h);
        worst = worst.max((fd - chi(n, l, &d)?).abs());
        worst = worst.max((denergy_dbeta(&spec, &d)? - chi(n, l, &d)?).abs());
    }
    Ok(Suite::at_most("derivative_identity", 1e-6, worst))
}

/// χ → ±1 as |λ| grows and → 0 as n grows.
fn saturation(env: &Env) -> SuiteResult {
    let d = env.d.with_beta(0.0);
    let big = HalfOdd::from_twice(4001).expect("odd");
    let up = (chi(1, big, &d)? - 1.0).abs();
    let down = (chi(1, -big, &d)? + 1.0).abs();
    let far = chi(1_000_000, HalfOdd::HALF, &d)?.abs();
    Ok(Suite::at_most("saturation", 1e-5, up.max(down).max(far)))
}

/// The gap between the exact sum and its linear term shrinks like β³.
fn beta_expansion(env: &Env) -> SuiteResult {
    let gap = |beta: f64| -> Result<f64, CliError> {
        let d = env.d.with_beta(beta);
        Ok((persistent_exact(&d)?.value - persistent_linearized(&d)?.value).abs())
    };
    let ratio = gap(1e-2)? / gap(1e-3)?;
    Ok(Suite::at_most("beta_expansion", 100.0, (ratio - 1000.0).abs()))
}

fn random_field(rng: &mut ChaCha8Rng, k1: f64, lambda: f64) -> SeparableField<f64> {
    let mut comp = |winding: f64, sin: bool| {
        let m = rng.gen_range(1..=3) as f64;
        Component {
            amp: Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            profile: if sin {
                ZProfile::Sin(m * k1)
            } else {
                ZProfile::Cos(m * k1)
            },
            winding,
        }
    };
    let (lo, hi) = (lambda - 0.5, lambda + 0.5);
    SeparableField {
        components: [comp(lo, true), comp(hi, true), comp(lo, false), comp(hi, true)],
    }
}

fn hermiticity(env: &Env) -> SuiteResult {
    let mut rng = env.rng(5);
    let k1 = PI / env.length();
    let rule = QuadratureRule::new(&env.d, 4, env.z_order.min(32), 16)?;
    let mut worst = 0.0f64;
    for _ in 0..6 {
        let lambda = HalfOdd::from_twice(2 * rng.gen_range(-3i64..=2) + 1)
            .expect("odd")
            .value::<f64>();
        let a = random_field(&mut rng, k1, lambda);
        let b = random_field(&mut rng, k1, lambda);
        let ab = hamiltonian_matrix_element(&a, &b, &env.d, AzimuthalTerm::Symmetrized, &rule)?;
        let ba = hamiltonian_matrix_element(&b, &a, &env.d, AzimuthalTerm::Symmetrized, &rule)?;
        worst = worst.max((ab - ba.conj()).norm() / ab.norm().max(1.0));
    }
    Ok(Suite::at_most("hermiticity", 1e-10, worst))
}

fn packet_norm(env: &Env) -> SuiteResult {
    let d = env.d.with_nu(0.0);
    let one = Complex::new(1.0, 0.0);
    let spec = PacketSpec::gaussian(HalfOdd::HALF, 1.0, 0.5, one, Complex::new(0.0, 0.0));
    let mut worst = 0.0f64;
    for t in [0.0, 5.0, 20.0] {
        let r = packet_z_integrals(&spec, &d, t, None, &MomentumRule::default())?;
        worst = worst.max((r.norm - 1.0).abs());
    }
    Ok(Suite::at_most("packet_norm", 1e-6, worst))
}

fn persistent_antisymmetry(env: &Env) -> SuiteResult {
    let mut worst = 0.0f64;
    for beta in [1e-3, 0.05, 0.3, 0.45] {
        let plus = persistent_exact(&env.d.with_beta(beta))?.value;
        let minus = persistent_exact(&env.d.with_beta(-beta))?.value;
        worst = worst.max((plus + minus).abs() / plus.abs().max(1e-300));
    }
    Ok(Suite::at_most("persistent_antisymmetry", 1e-12, worst))
}

/// `N_e = Σ_n (2λ_n + 1)` for the flux-free sea.
fn electron_count_identity(env: &Env) -> SuiteResult {
    let mut worst = 0.0f64;
    for alpha in [0.7, 2.3, 5.0, 17.5, 60.0] {
        let sea = enumerate_fermi_sea(&env.d.with_alpha(alpha), SeaCriterion::Quadratic)?;
        let predicted = 2.0 * sea.sum_lambda_n() + sea.n_f() as f64;
        worst = worst.max((predicted - sea.electron_count() as f64).abs());
    }
    Ok(Suite::at_most("electron_count_identity", 0.0, worst))
}

/// Successive approximations stay close where they are meant to: a dense sea
/// with small flux.
fn method_ladder(env: &Env) -> SuiteResult {
    let d = env.d.with_alpha(50.0).with_beta(1e-3);
    let exact = persistent_exact(&d)?.value;
    let linear = persistent_linearized(&d)?.value;
    let compact = persistent_compact(&d)?.value;
    let worst = ((exact - linear) / linear)
        .abs()
        .max(((compact - linear) / linear).abs());
    Ok(Suite::at_most("method_ladder", 0.05, worst))
}

const SUITES: [fn(&Env) -> SuiteResult; 15] = [
    clifford,
    orthonormality,
    dirac_residual,
    residual_sensitivity,
    k_operator_structure,
    boundary,
    circular_current,
    derivative_identity,
    saturation,
    beta_expansion,
    hermiticity,
    packet_norm,
    persistent_antisymmetry,
    electron_count_identity,
    method_ladder,
];

pub fn run(g: &GlobalArgs, a: &VerifyArgs) -> Result<(Report, bool), CliError> {
    let ctx = Context::load(g, &DEFAULTS)?;
    if ctx.params.is_infinite() {
        return Err(CliError::regime("verify needs a finite cylinder (nu > 0)"));
    }
    let env = Env {
        d: ctx.params,
        seed: g.seed,
        z_order: g.quad_order.unwrap_or(abcyl_core::spinors::DEFAULT_Z_ORDER),
        fault: a.fault,
    };
    let suites = SUITES.iter().map(|s| s(&env)).collect::<Result<Vec<_>, _>>()?;
    let passed = suites.iter().all(Suite::passed);

    let mut table = Table::new(&["suite", "tolerance", "bound", "worst", "passed"]);
    let mut list: Vec<Value> = Vec::new();
    for s in &suites {
        let bound = match s.bound {
            Bound::AtMost => "at_most",
            Bound::AtLeast => "at_least",
        };
        // a failed check may report an unbounded figure
        let worst = if s.worst.is_finite() { s.worst } else { f64::MAX };
        table.push(vec![
            s.name.into(),
            Cell::Num(s.tolerance),
            bound.into(),
            Cell::Num(worst),
            Cell::Int(s.passed() as i64),
        ]);
        list.push(json!({
            "name": s.name,
            "tolerance": num(s.tolerance)?,
            "bound": bound,
            "worst": num(worst)?,
            "passed": s.passed(),
        }));
        if !s.passed() {
            eprintln!(
                "abcyl: suite {} failed: worst {:e} vs tolerance {:e}",
                s.name, s.worst, s.tolerance
            );
        }
    }
    let json = json!({
        "schema_version": crate::output::SCHEMA_VERSION,
        "command": "verify",
        "params": ctx.params_json()?,
        "seed": g.seed,
        "passed": passed,
        "suites": list,
    });
    Ok((Report { table, json }, passed))
}
