//! Run configuration: TOML schema, validation and conversion to the core
//! scenario types.
//!
//! Every error produced while building the scenario carries the dotted path
//! of the offending key.

use cpsphere_core::potential::{Channel, Channels, MagneticRoute, ScenarioConfig, Target};
use cpsphere_core::quadrature::{QuadratureSpec, TailPolicy};
use cpsphere_core::response::{AtomModel, LorentzOscillator, Medium, ResponseSpec, Transition};
use cpsphere_core::scatterer::SphereAssembly;
use cpsphere_core::units::Units;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
pub enum UnitChoice {
    #[default]
    #[serde(rename = "reduced")]
    #[value(name = "reduced")]
    Reduced,
    #[serde(rename = "SI")]
    #[value(name = "SI")]
    Si,
}

impl UnitChoice {
    pub fn label(self) -> &'static str {
        match self {
            UnitChoice::Reduced => "reduced",
            UnitChoice::Si => "SI",
        }
    }
}

/// Every key is optional; missing ones take the values shown by
/// `cpsphere print-config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// `reduced` (hbar = c = 1, frequencies in units of `omega_ref`) or `SI`.
    pub units: UnitChoice,
    /// Reference angular frequency in rad/s. Only used with SI units.
    pub omega_ref: f64,
    /// Atom-target centre distance.
    pub separation: f64,
    pub channels: Vec<String>,
    /// `duality` or `direct`.
    pub magnetic_route: String,
    pub bulk_consistency: bool,
    pub atom: AtomConfig,
    pub host: MediumConfig,
    /// Medium seen by the atom's local field; defaults to `host`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atom_host: Option<MediumConfig>,
    pub target: TargetConfig,
    pub quadrature: QuadratureConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomConfig {
    #[serde(default)]
    pub electric: Vec<TransitionConfig>,
    #[serde(default)]
    pub magnetic: Vec<TransitionConfig>,
}

/// A dipole transition given either by its strength `|d|^2` (`|m|^2`) or by
/// its contribution to the static response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionConfig {
    pub omega: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strength: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub static_response: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumConfig {
    pub eps: ResponseConfig,
    pub mu: ResponseConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
pub enum ResponseConfig {
    Vacuum,
    Constant { value: f64 },
    Lorentz { oscillators: Vec<OscillatorConfig> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorConfig {
    pub omega_t: f64,
    pub omega_p: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TargetConfig {
    /// Sphere of radius `radius`, optionally inside a vacuum cavity of radius
    /// `cavity_radius`. With a cavity, `q = R/R_C` may replace `radius`.
    Sphere {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cavity_radius: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<f64>,
        eps: ResponseConfig,
        mu: ResponseConfig,
    },
    /// Second atom in place of the sphere.
    Atom {
        #[serde(default)]
        electric: Vec<TransitionConfig>,
        #[serde(default)]
        magnetic: Vec<TransitionConfig>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// `extend` or `truncate`.
    pub tail: String,
    /// Explicit upper frequency cutoff; 0 selects the automatic one.
    pub xi_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParameter {
    #[serde(rename = "r_AS")]
    Separation,
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "R_C")]
    CavityRadius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    /// Number of grid points.
    pub steps: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl Default for RunConfig {
    /// Figure parameter set: a Lorentz sphere in a cavity of radius 0.02 in a
    /// weakly dispersive host, `q = 0.5`, `r = 1`.
    fn default() -> Self {
        let lorentz = |t, p, g| ResponseConfig::Lorentz {
            oscillators: vec![OscillatorConfig {
                omega_t: t,
                omega_p: p,
                gamma: g,
            }],
        };
        Self {
            units: UnitChoice::Reduced,
            omega_ref: 1.0,
            separation: 1.0,
            channels: Channel::ALL.iter().map(|c| c.name().to_string()).collect(),
            magnetic_route: "duality".into(),
            bulk_consistency: true,
            atom: AtomConfig {
                electric: vec![TransitionConfig {
                    omega: 1.0,
                    strength: Some(1.5),
                    static_response: None,
                }],
                magnetic: Vec::new(),
            },
            host: MediumConfig {
                eps: lorentz(1.03, 0.1, 1e-3),
                mu: ResponseConfig::Vacuum,
            },
            atom_host: None,
            target: TargetConfig::Sphere {
                radius: Some(0.01),
                cavity_radius: Some(0.02),
                q: None,
                eps: lorentz(1.0, 6.0, 1e-3),
                mu: ResponseConfig::Vacuum,
            },
            quadrature: QuadratureConfig::default(),
            sweep: Some(SweepConfig {
                parameter: SweepParameter::Q,
                from: 0.2,
                to: 1.0,
                steps: 50,
                spacing: Spacing::Log,
            }),
        }
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureSpec::default().into()
    }
}

impl From<QuadratureSpec> for QuadratureConfig {
    fn from(q: QuadratureSpec) -> Self {
        Self {
            rel_tol: q.rel_tol,
            abs_tol: q.abs_tol,
            max_subdivisions: q.max_subdivisions,
            tail: match q.tail {
                TailPolicy::Extend => "extend",
                TailPolicy::Truncate => "truncate",
            }
            .into(),
            xi_max: q.xi_max.unwrap_or(0.0),
        }
    }
}

fn at(path: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{path}: {e}"))
}

/// Parses TOML text. Unknown keys and type errors are reported with their
/// path.
pub fn parse(text: &str) -> Result<RunConfig, CliError> {
    let de = toml::Deserializer::new(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let msg = inner.message().trim().to_string();
        if path == "." {
            CliError::Config(msg)
        } else {
            CliError::Config(format!("{path}: {msg}"))
        }
    })
}

/// A scenario resolved to reduced units, ready to run.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub scenario: ScenarioConfig<f64>,
    pub quadrature: QuadratureSpec,
    pub units: Units,
    pub system: UnitChoice,
    /// Sphere geometry in reduced units: `(R, R_C or None, q or None)`.
    pub geometry: Option<SphereGeometry>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereGeometry {
    pub radius: f64,
    pub cavity_radius: Option<f64>,
}

impl SphereGeometry {
    /// `(q, R_C)` as reported in CSV rows. A bare sphere is the `q = 1`
    /// member of the cavity family.
    pub fn q_and_rc(&self) -> (f64, f64) {
        match self.cavity_radius {
            Some(rc) => (self.radius / rc, rc),
            None => (1.0, self.radius),
        }
    }
}

struct Conv {
    units: Units,
    si: bool,
}

impl Conv {
    fn freq(&self, x: f64) -> f64 {
        if self.si {
            self.units.frequency_to_reduced(x)
        } else {
            x
        }
    }

    fn length(&self, x: f64) -> f64 {
        if self.si {
            self.units.length_to_reduced(x)
        } else {
            x
        }
    }

    fn response(&self, path: &str, r: &ResponseConfig) -> Result<ResponseSpec<f64>, CliError> {
        match r {
            ResponseConfig::Vacuum => Ok(ResponseSpec::Vacuum),
            ResponseConfig::Constant { value } => {
                ResponseSpec::constant(*value).map_err(|e| at(&format!("{path}.value"), e))
            }
            ResponseConfig::Lorentz { oscillators } => oscillators
                .iter()
                .enumerate()
                .map(|(i, o)| {
                    LorentzOscillator::new(self.freq(o.omega_t), self.freq(o.omega_p), self.freq(o.gamma))
                        .map_err(|e| at(&format!("{path}.oscillators[{i}]"), e))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(ResponseSpec::Lorentz),
        }
    }

    fn medium(&self, path: &str, m: &MediumConfig) -> Result<Medium<f64>, CliError> {
        Ok(Medium::new(
            self.response(&format!("{path}.eps"), &m.eps)?,
            self.response(&format!("{path}.mu"), &m.mu)?,
        ))
    }

    fn transitions(
        &self,
        path: &str,
        list: &[TransitionConfig],
        magnetic: bool,
    ) -> Result<Vec<Transition<f64>>, CliError> {
        list.iter()
            .enumerate()
            .map(|(i, t)| {
                let p = format!("{path}[{i}]");
                let omega = self.freq(t.omega);
                // alpha(0) = 2 |d|^2 / (3 omega) in reduced units.
                let strength = match (t.strength, t.static_response) {
                    (Some(s), None) => match (self.si, magnetic) {
                        (false, _) => s,
                        (true, false) => self.units.dipole_strength_to_reduced(s),
                        (true, true) => self.units.magnetic_strength_to_reduced(s),
                    },
                    (None, Some(a)) => {
                        let a = match (self.si, magnetic) {
                            (false, _) => a,
                            (true, false) => self.units.polarizability_to_reduced(a),
                            (true, true) => self.units.magnetizability_to_reduced(a),
                        };
                        1.5 * a * omega
                    }
                    _ => {
                        return Err(at(&p, "give exactly one of `strength` and `static_response`"))
                    }
                };
                Transition::new(omega, strength).map_err(|e| at(&p, e))
            })
            .collect()
    }

    fn atom(
        &self,
        path: &str,
        electric: &[TransitionConfig],
        magnetic: &[TransitionConfig],
    ) -> Result<AtomModel<f64>, CliError> {
        let e = self.transitions(&format!("{path}.electric"), electric, false)?;
        let m = self.transitions(&format!("{path}.magnetic"), magnetic, true)?;
        AtomModel::new(e, m).map_err(|e| at(path, e))
    }
}

fn positive(path: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(at(path, format!("must be positive and finite, got {x}")))
    }
}

impl RunConfig {
    /// Applies a command-line unit override.
    pub fn with_units(mut self, units: Option<UnitChoice>) -> Self {
        if let Some(u) = units {
            self.units = u;
        }
        self
    }

    pub fn quadrature_spec(&self, units: &Units) -> Result<QuadratureSpec, CliError> {
        let q = &self.quadrature;
        let tail = match q.tail.as_str() {
            "extend" => TailPolicy::Extend,
            "truncate" => TailPolicy::Truncate,
            other => {
                return Err(at(
                    "quadrature.tail",
                    format!("expected `extend` or `truncate`, got `{other}`"),
                ))
            }
        };
        if !(q.xi_max >= 0.0 && q.xi_max.is_finite()) {
            return Err(at("quadrature.xi_max", format!("must be >= 0, got {}", q.xi_max)));
        }
        let xi_max = match (q.xi_max, self.units) {
            (x, _) if x == 0.0 => None,
            (x, UnitChoice::Si) => Some(units.frequency_to_reduced(x)),
            (x, UnitChoice::Reduced) => Some(x),
        };
        let spec = QuadratureSpec {
            rel_tol: q.rel_tol,
            abs_tol: q.abs_tol,
            max_subdivisions: q.max_subdivisions,
            tail,
            xi_max,
        };
        spec.validate().map_err(|e| at("quadrature", e))?;
        Ok(spec)
    }

    /// Validates every field and converts to reduced units.
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let si = self.units == UnitChoice::Si;
        let omega_ref = if si {
            positive("omega_ref", self.omega_ref)?
        } else {
            1.0
        };
        let units = Units::new(omega_ref).map_err(|e| at("omega_ref", e))?;
        let conv = Conv { units, si };

        let separation = conv.length(positive("separation", self.separation)?);
        let atom = conv.atom("atom", &self.atom.electric, &self.atom.magnetic)?;
        let host = conv.medium("host", &self.host)?;
        let atom_host = self
            .atom_host
            .as_ref()
            .map(|m| conv.medium("atom_host", m))
            .transpose()?;

        let (target, geometry) = match &self.target {
            TargetConfig::Sphere {
                radius,
                cavity_radius,
                q,
                eps,
                mu,
            } => {
                let eps = conv.response("target.eps", eps)?;
                let mu = conv.response("target.mu", mu)?;
                let rc = cavity_radius
                    .map(|x| positive("target.cavity_radius", x).map(|x| conv.length(x)))
                    .transpose()?;
                let r = match (radius, q, rc) {
                    (Some(r), None, _) => conv.length(positive("target.radius", *r)?),
                    (None, Some(q), Some(rc)) => positive("target.q", *q)? * rc,
                    (Some(_), Some(_), _) => {
                        return Err(at("target", "give `radius` or `q`, not both"))
                    }
                    (None, Some(_), None) => {
                        return Err(at("target.q", "requires `cavity_radius`"))
                    }
                    (None, None, _) => return Err(at("target.radius", "missing")),
                };
                let sphere = match rc {
                    Some(rc) => SphereAssembly::with_cavity(r, rc, eps, mu),
                    None => SphereAssembly::new(r, eps, mu),
                }
                .map_err(|e| at("target", e))?;
                (
                    Target::Sphere(sphere),
                    Some(SphereGeometry {
                        radius: r,
                        cavity_radius: rc,
                    }),
                )
            }
            TargetConfig::Atom { electric, magnetic } => {
                (Target::Atom(conv.atom("target", electric, magnetic)?), None)
            }
        };

        let mut channels = Channels::none();
        for (i, name) in self.channels.iter().enumerate() {
            let c = Channel::parse(name).map_err(|e| at(&format!("channels[{i}]"), e))?;
            channels = channels.with(c);
        }
        let route = match self.magnetic_route.as_str() {
            "duality" => MagneticRoute::Duality,
            "direct" => MagneticRoute::Direct,
            other => {
                return Err(at(
                    "magnetic_route",
                    format!("expected `duality` or `direct`, got `{other}`"),
                ))
            }
        };

        let scenario = ScenarioConfig {
            atom,
            atom_host,
            host,
            target,
            separation,
            channels,
            magnetic_route: route,
            bulk_consistency: self.bulk_consistency,
        };
        Ok(Resolved {
            scenario,
            quadrature: self.quadrature_spec(&units)?,
            units,
            system: self.units,
            geometry,
        })
    }

    /// Canonical TOML text (also the hashed form).
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration is always serialisable")
    }
}

/// Monotone grid of `steps` points from `from` to `to` with exact ends.
pub fn make_grid(
    path: &str,
    from: f64,
    to: f64,
    steps: usize,
    spacing: Spacing,
) -> Result<Vec<f64>, CliError> {
    if steps == 0 {
        return Err(at(&format!("{path}.steps"), "must be at least 1"));
    }
    for (name, v) in [("from", from), ("to", to)] {
        let ok = match spacing {
            Spacing::Linear => v.is_finite() && v >= 0.0,
            Spacing::Log => v.is_finite() && v > 0.0,
        };
        if !ok {
            return Err(at(&format!("{path}.{name}"), format!("out of range for this spacing: {v}")));
        }
    }
    if steps == 1 {
        return Ok(vec![from]);
    }
    Ok(match spacing {
        Spacing::Linear => {
            let n = steps - 1;
            (0..steps)
                .map(|i| {
                    if i == n {
                        to
                    } else {
                        from + (to - from) * i as f64 / n as f64
                    }
                })
                .collect()
        }
        Spacing::Log => cpsphere_core::potential::log_grid(from, to, steps),
    })
}

impl SweepConfig {
    /// Grid points in the configured unit system.
    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        for (name, v) in [("sweep.from", self.from), ("sweep.to", self.to)] {
            positive(name, v)?;
        }
        make_grid("sweep", self.from, self.to, self.steps, self.spacing)
    }
}

impl Resolved {
    /// Scenario at one sweep point (`value` in the configured units).
    pub fn at_sweep_point(
        &self,
        parameter: SweepParameter,
        value: f64,
    ) -> Result<(ScenarioConfig<f64>, Option<SphereGeometry>), CliError> {
        let conv_len = |x: f64| match self.system {
            UnitChoice::Si => self.units.length_to_reduced(x),
            UnitChoice::Reduced => x,
        };
        match parameter {
            SweepParameter::Separation => Ok((
                self.scenario.clone().with_separation(conv_len(value)),
                self.geometry,
            )),
            SweepParameter::Q | SweepParameter::CavityRadius => {
                let (Some(geom), Target::Sphere(sphere)) = (self.geometry, &self.scenario.target)
                else {
                    return Err(at("sweep.parameter", "q and R_C sweeps need a sphere target"));
                };
                let Some(rc) = geom.cavity_radius else {
                    return Err(at(
                        "sweep.parameter",
                        "q and R_C sweeps need `target.cavity_radius`",
                    ));
                };
                let (r, rc) = if parameter == SweepParameter::Q {
                    (value * rc, rc)
                } else {
                    let rc_new = conv_len(value);
                    (geom.radius / rc * rc_new, rc_new)
                };
                let s = SphereAssembly::with_cavity(r, rc, sphere.eps.clone(), sphere.mu.clone())
                    .map_err(|e| CliError::Config(format!("sweep point {value}: {e}")))?;
                let mut scenario = self.scenario.clone();
                scenario.target = Target::Sphere(s);
                Ok((
                    scenario,
                    Some(SphereGeometry {
                        radius: r,
                        cavity_radius: Some(rc),
                    }),
                ))
            }
        }
    }
}
