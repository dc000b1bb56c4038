//! Self-check suite: every closed-form identity of the model is evaluated
//! against an independent route and reported with its residual.

use std::fmt;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dyadic::{scale, Dyadic3, Vec3};
use crate::error::{Error, Result};
use crate::green::{
    duality_transform, mie_l1_full_sphere, scattering_green_composed,
    small_sphere_green_closed_form, sphere_scattering_bundle, wave_dyadic_sums,
    wavefunction_green_l1, BulkMedium, PointMedia, SphericalPoint, WaveContext, hankel1,
    hankel1_derivative,
};
use crate::potential::{
    london_limit, potential_bulk_closed_form, potential_ee, potential_total, potential_two_atoms,
    retarded_limit, Channel, Channels, MagneticRoute, ScenarioConfig, Screening, Target,
};
use crate::quadrature::QuadratureSpec;
use crate::response::{AtomModel, Medium, ResponseSpec};
use crate::scatterer::{
    clausius_mossotti_materials, sphere_in_cavity_excess, sphere_in_cavity_excess_direct,
    PolarizabilityPair, SphereAssembly,
};

/// Names accepted by [`VerifyOptions::only`].
pub const SUITES: [&str; 7] = [
    "decomposition",
    "waves",
    "duality",
    "polarizability",
    "closed-form",
    "limits",
    "reductions",
];

/// One identity with its measured residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<15} {:<52} {:>11} {:>11}  result",
            "suite", "check", "residual", "tolerance"
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<15} {:<52} {:>11.3e} {:>11.3e}  {}",
                c.suite,
                c.name,
                c.residual,
                c.tolerance,
                if c.passed { "PASS" } else { "FAIL" }
            )?;
            if let Some(note) = &c.note {
                writeln!(f, "{:<15} {}", "", note)?;
            }
        }
        write!(
            f,
            "{} checks, {} failed",
            self.checks.len(),
            self.failures()
        )
    }
}

/// Sample counts and filters for [`run_verification`].
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Replaces every check's own tolerance.
    pub tolerance: Option<f64>,
    /// Restrict to these suites (empty = all).
    pub only: Vec<String>,
    pub seed: u64,
    pub decomposition_samples: usize,
    pub wave_points: usize,
    pub duality_configs: usize,
    pub quadrature: QuadratureSpec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tolerance: None,
            only: Vec::new(),
            seed: 0x5eed,
            decomposition_samples: 1000,
            wave_points: 50,
            duality_configs: 100,
            quadrature: QuadratureSpec::default(),
        }
    }
}

struct Ctx<'a> {
    opts: &'a VerifyOptions,
    report: VerifyReport,
}

impl Ctx<'_> {
    fn push(&mut self, suite: &'static str, name: &str, residual: f64, tolerance: f64, note: Option<String>) {
        let tolerance = self.opts.tolerance.unwrap_or(tolerance);
        self.report.checks.push(Check {
            suite,
            name: name.to_string(),
            residual,
            tolerance,
            passed: residual.is_finite() && residual <= tolerance,
            note,
        });
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

/// Runs the selected suites.
pub fn run_verification(opts: &VerifyOptions) -> Result<VerifyReport> {
    for s in &opts.only {
        if !SUITES.contains(&s.as_str()) {
            return Err(Error::InvalidParameter {
                what: "suite",
                reason: format!("unknown suite {s:?}; known: {}", SUITES.join(", ")),
            });
        }
    }
    let selected = |s: &str| opts.only.is_empty() || opts.only.iter().any(|o| o == s);
    let mut ctx = Ctx {
        opts,
        report: VerifyReport::default(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    if selected("decomposition") {
        decomposition(&mut ctx, &mut rng)?;
    }
    if selected("waves") {
        waves(&mut ctx, &mut rng)?;
    }
    if selected("duality") {
        duality(&mut ctx, &mut rng)?;
    }
    if selected("polarizability") {
        polarizability(&mut ctx, &mut rng)?;
    }
    if selected("closed-form") {
        closed_form(&mut ctx)?;
    }
    if selected("limits") {
        limits(&mut ctx)?;
    }
    if selected("reductions") {
        reductions(&mut ctx)?;
    }
    Ok(ctx.report)
}

fn random_direction(rng: &mut ChaCha8Rng) -> Vec3<f64> {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).sqrt();
    [s * phi.cos(), s * phi.sin(), z]
}

/// Random wave context: imaginary frequency with real response, or real
/// frequency with weakly absorbing response.
fn random_context(rng: &mut ChaCha8Rng) -> WaveContext<f64> {
    let eps = rng.gen_range(1.0..10.0);
    let mu = rng.gen_range(1.0..5.0);
    let w = rng.gen_range(0.05..3.0);
    if rng.gen_bool(0.75) {
        WaveContext::imaginary(w, eps, mu)
    } else {
        WaveContext::real(
            w,
            Complex::new(eps, rng.gen_range(0.0..0.5)),
            Complex::new(mu, rng.gen_range(0.0..0.2)),
        )
    }
}

/// Max-norm difference scaled by the combined size of the electric and
/// magnetic parts, so that cancellation between them cannot inflate it.
fn split_residual(
    test: &Dyadic3<f64>,
    r: &Vec3<f64>,
    ctx: &WaveContext<f64>,
    alpha: Complex<f64>,
    beta: Complex<f64>,
) -> Result<f64> {
    let zero = Complex::new(0.0, 0.0);
    let e = small_sphere_green_closed_form(r, ctx, alpha, zero)?;
    let m = small_sphere_green_closed_form(r, ctx, zero, beta)?;
    Ok(test.max_abs_diff(&(e + m)) / (e.max_abs() + m.max_abs()))
}

fn decomposition(ctx: &mut Ctx, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut worst: f64 = 0.0;
    for _ in 0..ctx.opts.decomposition_samples {
        let wave = random_context(rng);
        let eps_s = Complex::from(rng.gen_range(1.0..50.0));
        let mu_s = Complex::from(rng.gen_range(1.0..5.0));
        let radius: f64 = rng.gen_range(1e-4..1e-2);
        let x: f64 = rng.gen_range(0.01..5.0);
        let dist = x / wave.k().norm();
        let r = scale(&random_direction(rng), dist.max(10.0 * radius));
        let r3 = radius.powi(3);
        let alpha = (eps_s - wave.eps) / (eps_s + wave.eps * 2.0) * r3;
        let beta = (mu_s - wave.mu) / (mu_s + wave.mu * 2.0) * r3;
        let composed = scattering_green_composed(&r, &r, &wave, alpha, beta)?;
        worst = worst.max(split_residual(&composed, &r, &wave, alpha, beta)?);
    }
    ctx.push(
        "decomposition",
        &format!("closed form vs Green-product route ({} samples)", ctx.opts.decomposition_samples),
        worst,
        1e-12,
        None,
    );
    Ok(())
}

fn waves(ctx: &mut Ctx, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut worst_sum: f64 = 0.0;
    let mut worst_green: f64 = 0.0;
    for _ in 0..ctx.opts.wave_points {
        let wave = random_context(rng);
        let radius = rng.gen_range(1e-3..1e-2);
        let eps_s = Complex::from(rng.gen_range(1.0..40.0));
        let mu_s = Complex::from(rng.gen_range(1.0..4.0));
        let dist = rng.gen_range(0.05..4.0) / wave.k().norm();
        let theta = rng.gen_range(0.0..std::f64::consts::PI);
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        let p = SphericalPoint::new(dist.max(10.0 * radius), theta, phi)?;

        let (mm, nn) = wave_dyadic_sums(&p, &wave)?;
        let x = wave.k() * p.r;
        let h = hankel1(x);
        let hd = hankel1_derivative(x) / x;
        let one = Complex::new(1.0, 0.0);
        let e = p.e_r();
        let transverse = Dyadic3::isotropic(one, -one, &e);
        let radial = Dyadic3::isotropic(Complex::new(0.0, 0.0), one, &e);
        let n_closed = radial.scale(h * h * 4.0 / (x * x)) + transverse.scale(hd * hd);
        worst_sum = worst_sum
            .max(mm.rel_diff(&transverse.scale(h * h)))
            .max(nn.rel_diff(&n_closed));

        let mie = mie_l1_full_sphere(&wave, radius, eps_s, mu_s)?;
        let assembled = wavefunction_green_l1(&p, &wave, mie.b_m, mie.b_n)?;
        let r3 = radius.powi(3);
        let alpha = (eps_s - wave.eps) / (eps_s + wave.eps * 2.0) * r3;
        let beta = (mu_s - wave.mu) / (mu_s + wave.mu * 2.0) * r3;
        worst_green = worst_green.max(split_residual(&assembled, &p.to_cartesian(), &wave, alpha, beta)?);
    }
    let n = ctx.opts.wave_points;
    ctx.push("waves", &format!("l=1 dyadic sums MM, NN ({n} points)"), worst_sum, 1e-12, None);
    ctx.push(
        "waves",
        &format!("l=1 wave expansion vs closed form ({n} points)"),
        worst_green,
        1e-12,
        None,
    );
    Ok(())
}

fn random_response(rng: &mut ChaCha8Rng, strength: f64) -> ResponseSpec<f64> {
    if rng.gen_bool(0.25) {
        return ResponseSpec::Vacuum;
    }
    ResponseSpec::lorentz(
        rng.gen_range(0.3..3.0),
        rng.gen_range(0.0..strength),
        rng.gen_range(0.0..0.5),
    )
    .expect("valid oscillator")
}

/// Random physical atom-sphere configuration with both responses active.
pub fn random_config(rng: &mut ChaCha8Rng) -> ScenarioConfig<f64> {
    let omega = rng.gen_range(0.5..2.0);
    let atom = AtomModel::two_level_magnetoelectric(
        omega,
        rng.gen_range(0.1..2.0),
        rng.gen_range(0.0..1.0),
    )
    .expect("valid atom");
    let host = Medium::new(random_response(rng, 2.0), random_response(rng, 1.5));
    let rc = rng.gen_range(0.005..0.05);
    let sphere_eps = random_response(rng, 8.0);
    let sphere_mu = random_response(rng, 3.0);
    let sphere = if rng.gen_bool(0.5) {
        SphereAssembly::new(rc, sphere_eps, sphere_mu)
    } else {
        SphereAssembly::from_ratio(rng.gen_range(0.1..1.0), rc, sphere_eps, sphere_mu)
    }
    .expect("valid sphere");
    let guard = sphere.effective_radius(&host) * 5.0;
    let separation = guard.max(0.05) * rng.gen_range(1.2..400.0);
    ScenarioConfig::new(atom, host, Target::Sphere(sphere), separation)
}

fn duality(ctx: &mut Ctx, rng: &mut ChaCha8Rng) -> Result<()> {
    // Green-tensor transformation rules against the dual environment.
    let mut worst_rules: f64 = 0.0;
    let mut worst_involution: f64 = 0.0;
    for _ in 0..ctx.opts.wave_points {
        let eps = rng.gen_range(1.0..10.0);
        let mu = rng.gen_range(1.0..5.0);
        let env = BulkMedium::new(Medium::new(
            ResponseSpec::constant(eps)?,
            ResponseSpec::constant(mu)?,
        ))?;
        let xi = rng.gen_range(0.05..3.0);
        let pair = PolarizabilityPair::new(rng.gen_range(-1e-4..1e-4), rng.gen_range(-1e-4..1e-4));
        let centre = scale(&random_direction(rng), rng.gen_range(0.0..0.3));
        let r = scale(&random_direction(rng), rng.gen_range(0.5..2.0));
        let r2 = if rng.gen_bool(0.5) {
            r
        } else {
            scale(&random_direction(rng), rng.gen_range(0.5..2.0))
        };
        let b = sphere_scattering_bundle(&env, &r, &r2, &centre, pair, xi)?;
        let media = PointMedia::uniform(Complex::from(eps), Complex::from(mu));
        let omega = Complex::new(0.0, xi);
        let transformed = duality_transform(&b, &media, omega);
        let dual = sphere_scattering_bundle(&env.dual(), &r, &r2, &centre, pair.swapped(), xi)?;
        worst_rules = worst_rules.max(transformed.max_rel_diff(&dual));
        let back = duality_transform(&transformed, &media.dual(), omega);
        worst_involution = worst_involution.max(back.max_rel_diff(&b));
    }
    ctx.push(
        "duality",
        "Green-tensor transformation rules, componentwise",
        worst_rules,
        1e-12,
        None,
    );
    ctx.push("duality", "transformation applied twice is identity", worst_involution, 1e-12, None);

    // Potential invariance, magnetic channels from the curls.
    let mut worst_total: f64 = 0.0;
    let mut worst_route: f64 = 0.0;
    let quad = ctx.opts.quadrature;
    for _ in 0..ctx.opts.duality_configs {
        let cfg = random_config(rng).with_route(MagneticRoute::Direct);
        let a = potential_total(&cfg, &quad)?;
        let b = potential_total(&cfg.dual(), &quad)?;
        let scale_sum: f64 = Channel::ALL
            .iter()
            .filter_map(|c| a.channel(*c))
            .map(|v| v.value.abs())
            .sum();
        worst_total = worst_total.max((a.total - b.total).abs() / scale_sum);
        let d = potential_total(&cfg.clone().with_route(MagneticRoute::Duality), &quad)?;
        for c in [Channel::Me, Channel::Mm] {
            let (x, y) = (a.channel(c).unwrap().value, d.channel(c).unwrap().value);
            if x != 0.0 || y != 0.0 {
                worst_route = worst_route.max((x - y).abs() / scale_sum);
            }
        }
    }
    let n = ctx.opts.duality_configs;
    ctx.push(
        "duality",
        &format!("total potential invariant under exchange ({n} configs)"),
        worst_total,
        1e-9,
        None,
    );
    ctx.push(
        "duality",
        &format!("magnetic-atom channels: curl route vs dual route ({n} configs)"),
        worst_route,
        1e-9,
        None,
    );
    Ok(())
}

fn polarizability(ctx: &mut Ctx, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut worst_forms: f64 = 0.0;
    let mut worst_full: f64 = 0.0;
    for _ in 0..ctx.opts.wave_points {
        let rc: f64 = rng.gen_range(0.01..1.0);
        let q = rng.gen_range(0.01..1.0);
        let eps_s = ResponseSpec::constant(rng.gen_range(1.0..50.0))?;
        let mu_s = ResponseSpec::constant(rng.gen_range(1.0..5.0))?;
        let (e, m) = (rng.gen_range(1.0..10.0), rng.gen_range(1.0..3.0));
        let s = SphereAssembly::from_ratio(q, rc, eps_s.clone(), mu_s.clone())?;
        let a = sphere_in_cavity_excess(&s, e, m, 0.0)?;
        let b = sphere_in_cavity_excess_direct(&s, e, m, 0.0)?;
        let scale = rc.powi(3);
        worst_forms = worst_forms
            .max((a.alpha - b.alpha).abs() / scale)
            .max((a.beta - b.beta).abs() / scale);
        let whole = SphereAssembly::with_cavity(rc, rc, eps_s.clone(), mu_s.clone())?;
        let full = SphereAssembly::new(rc, eps_s, mu_s)?;
        let x = whole.excess(e, m, 0.0)?;
        let y = full.excess(e, m, 0.0)?;
        worst_full = worst_full
            .max((x.alpha - y.alpha).abs() / scale)
            .max((x.beta - y.beta).abs() / scale);
    }
    ctx.push(
        "polarizability",
        "factored vs direct sphere-in-cavity response",
        worst_forms,
        1e-12,
        None,
    );
    ctx.push("polarizability", "R = R_C reduces to the full sphere", worst_full, 1e-13, None);
    Ok(())
}

/// Host, atom and sphere materials of the figure parameter set.
pub fn figure_host() -> Medium<f64> {
    Medium::new(
        ResponseSpec::lorentz(1.03, 0.1, 1e-3).expect("valid"),
        ResponseSpec::Vacuum,
    )
}

pub fn figure_sphere_eps() -> ResponseSpec<f64> {
    ResponseSpec::lorentz(1.0, 6.0, 1e-3).expect("valid")
}

fn closed_form(ctx: &mut Ctx) -> Result<()> {
    let quad = ctx.opts.quadrature;
    let atom = AtomModel::two_level(1.0, 1.0)?;
    let dense = Medium::new(ResponseSpec::lorentz(1.0, 2.0, 0.05)?, ResponseSpec::Vacuum);
    let mut worst_inverse: f64 = 0.0;
    let mut multiplier_min = f64::INFINITY;
    let mut multiplier_max: f64 = 0.0;
    for host in [figure_host(), dense] {
        for q in [0.25, 0.5, 1.0] {
            for r in [1.0, 3.0, 10.0] {
                let sphere = SphereAssembly::from_ratio(q, 0.02, figure_sphere_eps(), ResponseSpec::Vacuum)?;
                let cfg = ScenarioConfig::new(atom.clone(), host.clone(), Target::Sphere(sphere), r)
                    .with_channels(Channels::only(Channel::Ee));
                let general = potential_ee(&cfg, &quad)?.value;
                let inv = potential_bulk_closed_form(&cfg, Screening::Inverse, &quad)?.value;
                let mult = potential_bulk_closed_form(&cfg, Screening::Multiplier, &quad)?.value;
                worst_inverse = worst_inverse.max(rel(inv, general));
                multiplier_min = multiplier_min.min(rel(mult, general));
                multiplier_max = multiplier_max.max(rel(mult, general));
            }
        }
    }
    ctx.push(
        "closed-form",
        "bulk closed form (alpha*/eps screening) vs general route",
        worst_inverse,
        1e-10,
        Some(format!(
            "adopted screening: alpha*/eps; the alpha*·eps placement deviates by {multiplier_min:.3e} .. {multiplier_max:.3e} (relative)"
        )),
    );
    Ok(())
}

fn limits(ctx: &mut Ctx) -> Result<()> {
    let quad = ctx.opts.quadrature;
    let atom = AtomModel::two_level(1.0, 1.0)?;

    let sphere = SphereAssembly::new(0.01, figure_sphere_eps(), ResponseSpec::Vacuum)?;
    let r = 100.0;
    let cfg = ScenarioConfig::new(atom.clone(), Medium::vacuum(), Target::Sphere(sphere.clone()), r);
    let u = potential_total(&cfg, &quad)?.total;
    let k = retarded_limit(atom.polarizability_at(0.0)?, sphere.excess(1.0, 1.0, 0.0)?.alpha, 1.0);
    ctx.push(
        "limits",
        "retarded limit, atom-sphere, r = 100",
        (u * r.powi(7) / k - 1.0).abs(),
        1e-2,
        None,
    );

    let sphere = SphereAssembly::new(1e-5, figure_sphere_eps(), ResponseSpec::Vacuum)?;
    let r = 1e-3;
    let cfg = ScenarioConfig::new(atom.clone(), Medium::vacuum(), Target::Sphere(sphere.clone()), r);
    let u = potential_total(&cfg, &quad)?.total;
    let l = london_limit(&atom, |xi| Ok(sphere.excess(1.0, 1.0, xi)?.alpha), r, &quad)?.value;
    ctx.push("limits", "London limit, atom-sphere, r = 1e-3", rel(u, l), 5e-3, None);

    let b = AtomModel::two_level(1.3, 0.7)?;
    let u = potential_two_atoms(&atom, &b, &Medium::vacuum(), 100.0, &quad)?.total;
    let k = retarded_limit(1.0, 0.7, 100.0);
    ctx.push("limits", "retarded limit, two atoms, r = 100", rel(u, k), 1e-2, None);
    let u = potential_two_atoms(&atom, &b, &Medium::vacuum(), 1e-3, &quad)?.total;
    let l = london_limit(&atom, |xi| b.polarizability_at(xi), 1e-3, &quad)?.value;
    ctx.push("limits", "London limit, two atoms, r = 1e-3", rel(u, l), 5e-3, None);
    Ok(())
}

fn reductions(ctx: &mut Ctx) -> Result<()> {
    let quad = ctx.opts.quadrature;
    let atom = AtomModel::two_level(1.0, 1.0)?;
    let host = figure_host();

    let mut worst_full: f64 = 0.0;
    for r in [1.0, 3.0, 10.0] {
        let whole = SphereAssembly::with_cavity(0.02, 0.02, figure_sphere_eps(), ResponseSpec::Vacuum)?;
        let bare = SphereAssembly::new(0.02, figure_sphere_eps(), ResponseSpec::Vacuum)?;
        let a = potential_total(&ScenarioConfig::new(atom.clone(), host.clone(), Target::Sphere(whole), r), &quad)?;
        let b = potential_total(&ScenarioConfig::new(atom.clone(), host.clone(), Target::Sphere(bare), r), &quad)?;
        worst_full = worst_full.max(rel(a.total, b.total));
    }
    ctx.push("reductions", "R = R_C potential equals bare-sphere potential", worst_full, 1e-13, None);

    let mut worst_atom: f64 = 0.0;
    for (host, r) in [(host.clone(), 1.0), (host, 10.0), (Medium::vacuum(), 1.0), (Medium::vacuum(), 10.0)] {
        let u = single_atom_sphere_potential(&atom, &host, r, &quad)?;
        worst_atom = worst_atom.max(rel(u.0, u.1));
    }
    ctx.push(
        "reductions",
        "R << R_C with Clausius-Mossotti sphere vs two-atom potential",
        worst_atom,
        1e-3,
        None,
    );
    Ok(())
}

/// Sphere built from a single atom via the Clausius-Mossotti relation,
/// inside a much larger cavity, minus the empty-cavity contribution; and the
/// corresponding two-atom potential. Returns `(sphere route, two-atom)`.
pub fn single_atom_sphere_potential(
    atom: &AtomModel<f64>,
    host: &Medium<f64>,
    separation: f64,
    quad: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let (radius, cavity) = (1e-3f64, 0.05);
    let atom_b = AtomModel::two_level(1.0, 0.5 * radius.powi(3))?;
    let materials = clausius_mossotti_materials(&atom_b, radius)?;
    let filled = SphereAssembly::with_cavity(radius, cavity, materials.eps, materials.mu)?;
    let empty = SphereAssembly::with_cavity(radius, cavity, ResponseSpec::Vacuum, ResponseSpec::Vacuum)?;
    let with = potential_total(
        &ScenarioConfig::new(atom.clone(), host.clone(), Target::Sphere(filled), separation),
        quad,
    )?;
    let without = potential_total(
        &ScenarioConfig::new(atom.clone(), host.clone(), Target::Sphere(empty), separation),
        quad,
    )?;
    let two = potential_two_atoms(atom, &atom_b, host, separation, quad)?;
    Ok((with.total - without.total, two.total))
}
