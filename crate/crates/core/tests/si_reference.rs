//! Vacuum potentials evaluated entirely in SI units with a separate
//! quadrature, compared against the reduced-unit implementation.

use std::f64::consts::PI;

use cpsphere_core::potential::{potential_total, potential_two_atoms, ScenarioConfig, Target};
use cpsphere_core::quadrature::QuadratureSpec;
use cpsphere_core::response::{AtomModel, Medium, ResponseSpec, Transition};
use cpsphere_core::scatterer::SphereAssembly;
use cpsphere_core::units::{Units, EPSILON_0, HBAR, SPEED_OF_LIGHT};

const OMEGA: f64 = 2.0e15;
const DIPOLE: f64 = 2.5e-29;

fn alpha_atom_si(xi: f64) -> f64 {
    2.0 * OMEGA * DIPOLE * DIPOLE / (3.0 * HBAR * (OMEGA * OMEGA + xi * xi))
}

/// Casimir-Polder potential between two polarisable particles in vacuum.
fn casimir_polder_si(alpha_b: impl Fn(f64) -> f64, r: f64) -> f64 {
    // Trapezoid rule in ln(xi); the integrand decays at both ends.
    let (lo, hi, n) = (-25.0f64, 8.0f64, 40_000);
    let h = (hi - lo) / n as f64;
    let mut sum = 0.0;
    for i in 0..=n {
        let xi = OMEGA * (lo + i as f64 * h).exp();
        let x = xi * r / SPEED_OF_LIGHT;
        let g = (-2.0 * x).exp() * (3.0 + 6.0 * x + 5.0 * x * x + 2.0 * x.powi(3) + x.powi(4));
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        sum += w * xi * alpha_atom_si(xi) * alpha_b(xi) * g;
    }
    -HBAR / (16.0 * PI.powi(3) * EPSILON_0 * EPSILON_0 * r.powi(6)) * sum * h
}

fn reduced_atom(units: &Units) -> AtomModel<f64> {
    let t = Transition::new(
        units.frequency_to_reduced(OMEGA),
        units.dipole_strength_to_reduced(DIPOLE * DIPOLE),
    )
    .unwrap();
    AtomModel::new(vec![t], vec![]).unwrap()
}

#[test]
fn two_atoms_match_si_evaluation() {
    let units = Units::new(OMEGA).unwrap();
    let atom = reduced_atom(&units);
    for r_si in [1e-9, 5e-8, 3e-6] {
        let reduced = potential_two_atoms(
            &atom,
            &atom,
            &Medium::vacuum(),
            units.length_to_reduced(r_si),
            &QuadratureSpec::default(),
        )
        .unwrap()
        .total;
        let si = casimir_polder_si(alpha_atom_si, r_si);
        let ours = units.energy_to_si(reduced);
        assert!((ours / si - 1.0).abs() < 1e-9, "r = {r_si}: {ours} vs {si}");
    }
}

#[test]
fn atom_sphere_matches_si_evaluation() {
    let units = Units::new(OMEGA).unwrap();
    let (wt, wp, gamma) = (1.1 * OMEGA, 4.0 * OMEGA, 0.01 * OMEGA);
    let radius: f64 = 2e-9;
    let alpha_sphere = |xi: f64| {
        let eps = 1.0 + wp * wp / (wt * wt + xi * xi + xi * gamma);
        4.0 * PI * EPSILON_0 * radius.powi(3) * (eps - 1.0) / (eps + 2.0)
    };
    let f = |x: f64| units.frequency_to_reduced(x);
    let sphere = SphereAssembly::new(
        units.length_to_reduced(radius),
        ResponseSpec::lorentz(f(wt), f(wp), f(gamma)).unwrap(),
        ResponseSpec::Vacuum,
    )
    .unwrap();
    for r_si in [2e-8, 1e-6] {
        let cfg = ScenarioConfig::new(
            reduced_atom(&units),
            Medium::vacuum(),
            Target::Sphere(sphere.clone()),
            units.length_to_reduced(r_si),
        );
        let ours = units.energy_to_si(potential_total(&cfg, &QuadratureSpec::default()).unwrap().total);
        let si = casimir_polder_si(alpha_sphere, r_si);
        assert!((ours / si - 1.0).abs() < 1e-9, "r = {r_si}: {ours} vs {si}");
    }
}
