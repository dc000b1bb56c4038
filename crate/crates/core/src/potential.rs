//! Casimir-Polder potential of an atom near a small sphere (or a second
//! atom) in a homogeneous host, split into the four electric/magnetic
//! channels, together with the closed-form bulk expression and the London
//! and retarded limits.
//!
//! All quantities are reduced: the energy unit is `hbar omega_ref`, and the
//! prefactor `-hbar mu0^2 / 2 pi` becomes `-8 pi`.

use crate::dyadic::{neg, Dyadic3, Vec3};
use crate::error::{Error, Result, ValidityWarning};
use crate::green::{
    bulk_green, bulk_green_curl_both, bulk_green_curl_left, bulk_green_curl_right,
    check_separation, WaveContext,
};
use crate::quadrature::{integrate_semiinfinite_scaled, QuadratureSpec};
use crate::response::{local_field_electric, local_field_magnetic, AtomModel, Medium};
use crate::scalar::Real;
use crate::scatterer::SphereAssembly;

/// One of the four contributions: atom response (first letter) times
/// target response (second letter).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    Ee,
    Em,
    Me,
    Mm,
}

impl Channel {
    pub const ALL: [Channel; 4] = [Channel::Ee, Channel::Em, Channel::Me, Channel::Mm];

    pub fn name(self) -> &'static str {
        match self {
            Channel::Ee => "ee",
            Channel::Em => "em",
            Channel::Me => "me",
            Channel::Mm => "mm",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ee" => Ok(Channel::Ee),
            "em" => Ok(Channel::Em),
            "me" => Ok(Channel::Me),
            "mm" => Ok(Channel::Mm),
            _ => Err(Error::InvalidParameter {
                what: "channel",
                reason: format!("unknown channel {s:?} (expected ee, em, me or mm)"),
            }),
        }
    }

    /// Channel that this one maps onto under electric/magnetic exchange.
    pub fn dual(self) -> Self {
        match self {
            Channel::Ee => Channel::Mm,
            Channel::Em => Channel::Me,
            Channel::Me => Channel::Em,
            Channel::Mm => Channel::Ee,
        }
    }
}

/// Set of requested channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Channels {
    pub ee: bool,
    pub em: bool,
    pub me: bool,
    pub mm: bool,
}

impl Default for Channels {
    fn default() -> Self {
        Self::all()
    }
}

impl Channels {
    pub fn all() -> Self {
        Self {
            ee: true,
            em: true,
            me: true,
            mm: true,
        }
    }

    pub fn none() -> Self {
        Self {
            ee: false,
            em: false,
            me: false,
            mm: false,
        }
    }

    pub fn only(channel: Channel) -> Self {
        Self::none().with(channel)
    }

    pub fn with(mut self, channel: Channel) -> Self {
        match channel {
            Channel::Ee => self.ee = true,
            Channel::Em => self.em = true,
            Channel::Me => self.me = true,
            Channel::Mm => self.mm = true,
        }
        self
    }

    pub fn contains(&self, channel: Channel) -> bool {
        match channel {
            Channel::Ee => self.ee,
            Channel::Em => self.em,
            Channel::Me => self.me,
            Channel::Mm => self.mm,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Channel> + '_ {
        Channel::ALL.into_iter().filter(|c| self.contains(*c))
    }

    pub fn is_empty(&self) -> bool {
        self.iter().next().is_none()
    }

    pub fn dual(&self) -> Self {
        self.iter().fold(Self::none(), |acc, c| acc.with(c.dual()))
    }
}

/// How the `me` and `mm` channels are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MagneticRoute {
    /// As `em`/`ee` of the dual configuration.
    #[default]
    Duality,
    /// From the curls of the bulk Green tensor.
    Direct,
}

/// What the atom interacts with.
#[derive(Debug, Clone, PartialEq)]
pub enum Target<T> {
    Sphere(SphereAssembly<T>),
    /// A second atom, sitting in its own real cavity in the host.
    Atom(AtomModel<T>),
}

impl<T: Real> Target<T> {
    pub fn dual(&self) -> Self {
        match self {
            Target::Sphere(s) => Target::Sphere(s.dual()),
            Target::Atom(a) => Target::Atom(a.dual()),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Target::Sphere(s) => s.validate(),
            Target::Atom(a) => a.validate(),
        }
    }

    /// Effective electric (`alpha* eps`) and magnetic (`beta*/mu`) responses
    /// entering the channel integrands.
    fn effective_response(&self, eps: T, mu: T, xi: T) -> Result<(T, T)> {
        match self {
            Target::Sphere(s) => {
                let p = s.excess(eps, mu, xi)?;
                Ok((p.alpha * eps, p.beta / mu))
            }
            Target::Atom(b) => {
                let le = local_field_electric(eps)?;
                let lm = local_field_magnetic(mu)?;
                Ok((
                    b.polarizability_at(xi)? * le * le,
                    b.magnetizability_at(xi)? * lm * lm,
                ))
            }
        }
    }
}

/// A complete atom-target computation request.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig<T> {
    pub atom: AtomModel<T>,
    /// Medium entering the atom's local-field factors; `None` means `host`.
    pub atom_host: Option<Medium<T>>,
    /// Homogeneous host around the atom and the target.
    pub host: Medium<T>,
    pub target: Target<T>,
    /// Atom-target centre distance (reduced).
    pub separation: T,
    pub channels: Channels,
    pub magnetic_route: MagneticRoute,
    /// Reject an `atom_host` that differs from `host`.
    pub bulk_consistency: bool,
}

impl<T: Real> ScenarioConfig<T> {
    pub fn new(atom: AtomModel<T>, host: Medium<T>, target: Target<T>, separation: T) -> Self {
        Self {
            atom,
            atom_host: None,
            host,
            target,
            separation,
            channels: Channels::all(),
            magnetic_route: MagneticRoute::Duality,
            bulk_consistency: true,
        }
    }

    pub fn with_channels(mut self, channels: Channels) -> Self {
        self.channels = channels;
        self
    }

    pub fn with_route(mut self, route: MagneticRoute) -> Self {
        self.magnetic_route = route;
        self
    }

    pub fn with_separation(mut self, separation: T) -> Self {
        self.separation = separation;
        self
    }

    pub fn atom_host(&self) -> &Medium<T> {
        self.atom_host.as_ref().unwrap_or(&self.host)
    }

    fn hosts_agree(&self) -> bool {
        self.atom_host.as_ref().map_or(true, |m| *m == self.host)
    }

    /// Checks parameters and the separation guard; returns any warning.
    pub fn validate(&self) -> Result<Option<ValidityWarning>> {
        if !(self.separation > T::zero() && self.separation.is_finite()) {
            return Err(Error::Domain {
                what: "atom-target separation",
                value: self.separation.as_f64(),
            });
        }
        self.atom.validate()?;
        self.host.validate()?;
        if let Some(m) = &self.atom_host {
            m.validate()?;
        }
        self.target.validate()?;
        if self.bulk_consistency && !self.hosts_agree() {
            return Err(Error::InvalidParameter {
                what: "atom_host",
                reason: "bulk consistency requires the atom's local-field medium to equal the host"
                    .into(),
            });
        }
        if self.channels.is_empty() {
            return Err(Error::InvalidParameter {
                what: "channels",
                reason: "at least one channel must be requested".into(),
            });
        }
        match &self.target {
            Target::Sphere(s) => check_separation(
                self.separation.as_f64(),
                s.effective_radius(&self.host).as_f64(),
            ),
            Target::Atom(_) => Ok(None),
        }
    }

    /// Global electric/magnetic exchange of every input.
    pub fn dual(&self) -> Self {
        Self {
            atom: self.atom.dual(),
            atom_host: self.atom_host.as_ref().map(|m| m.dual()),
            host: self.host.dual(),
            target: self.target.dual(),
            separation: self.separation,
            channels: self.channels.dual(),
            magnetic_route: self.magnetic_route,
            bulk_consistency: self.bulk_consistency,
        }
    }
}

/// One channel's integral with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelValue<T> {
    pub value: T,
    pub error: T,
    pub evaluations: usize,
}

impl<T: Real> ChannelValue<T> {
    pub fn zero() -> Self {
        Self {
            value: T::zero(),
            error: T::zero(),
            evaluations: 0,
        }
    }
}

/// Potential split by channel. Channels that were not requested are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialResult<T> {
    pub ee: Option<ChannelValue<T>>,
    pub em: Option<ChannelValue<T>>,
    pub me: Option<ChannelValue<T>>,
    pub mm: Option<ChannelValue<T>>,
    pub total: T,
    /// Sum of the channel error estimates.
    pub error: T,
    pub warnings: Vec<ValidityWarning>,
}

impl<T: Real> PotentialResult<T> {
    pub fn channel(&self, channel: Channel) -> Option<&ChannelValue<T>> {
        match channel {
            Channel::Ee => self.ee.as_ref(),
            Channel::Em => self.em.as_ref(),
            Channel::Me => self.me.as_ref(),
            Channel::Mm => self.mm.as_ref(),
        }
    }

    /// Largest single-channel error estimate.
    pub fn max_error(&self) -> T {
        Channel::ALL
            .iter()
            .filter_map(|c| self.channel(*c))
            .fold(T::zero(), |m, v| m.max(v.error))
    }
}

fn axis<T: Real>(r: T) -> Vec3<T> {
    [T::zero(), T::zero(), r]
}

/// Trace entering each channel, at `omega = i xi`, for atom at `r e_z` and
/// target at the origin.
fn channel_trace<T: Real>(channel: Channel, ctx: &WaveContext<T>, r: T) -> Result<T> {
    let rho = axis(r);
    let back = neg(&rho);
    let product: Dyadic3<T> = match channel {
        Channel::Ee => bulk_green(&rho, ctx)?.dot(&bulk_green(&back, ctx)?),
        Channel::Em => bulk_green_curl_right(&rho, ctx)?.dot(&bulk_green_curl_left(&back, ctx)?),
        Channel::Me => bulk_green_curl_left(&rho, ctx)?.dot(&bulk_green_curl_right(&back, ctx)?),
        Channel::Mm => bulk_green_curl_both(&rho, ctx)?.dot(&bulk_green_curl_both(&back, ctx)?),
    };
    Ok(product.trace().re)
}

/// Integrand of `channel` evaluated from the curls (no duality shortcut).
fn direct_integrand<T: Real>(cfg: &ScenarioConfig<T>, channel: Channel, xi: T) -> Result<T> {
    let (eps, mu) = cfg.host.at_imaginary(xi)?;
    let (eps_a, mu_a) = cfg.atom_host().at_imaginary(xi)?;
    let (e_target, m_target) = cfg.target.effective_response(eps, mu, xi)?;
    let atom = match channel {
        Channel::Ee | Channel::Em => {
            let l = local_field_electric(eps_a)?;
            cfg.atom.polarizability_at(xi)? * l * l
        }
        Channel::Me | Channel::Mm => {
            let l = local_field_magnetic(mu_a)?;
            cfg.atom.magnetizability_at(xi)? * l * l
        }
    };
    let target = match channel {
        Channel::Ee | Channel::Me => e_target,
        Channel::Em | Channel::Mm => m_target,
    };
    if atom == T::zero() || target == T::zero() {
        return Ok(T::zero());
    }
    let xi_power = match channel {
        Channel::Ee => xi.powi(4),
        Channel::Em | Channel::Me => xi * xi,
        Channel::Mm => T::one(),
    };
    let ctx = WaveContext::imaginary(xi, eps, mu);
    let trace = channel_trace(channel, &ctx, cfg.separation)?;
    Ok(-T::lit(8.0) * T::PI() * xi_power * atom * target * trace)
}

fn integrate_channel<T: Real>(
    cfg: &ScenarioConfig<T>,
    channel: Channel,
    quad: &QuadratureSpec,
) -> Result<ChannelValue<T>> {
    let r = integrate_semiinfinite_scaled(
        |xi| direct_integrand(cfg, channel, xi),
        T::lit(2.0) * cfg.separation,
        quad,
    )?;
    Ok(ChannelValue {
        value: r.value,
        error: r.error,
        evaluations: r.evaluations,
    })
}

fn magnetic_atom_channel<T: Real>(
    cfg: &ScenarioConfig<T>,
    channel: Channel,
    quad: &QuadratureSpec,
) -> Result<ChannelValue<T>> {
    // The duality image uses the atom's own permeability in the dual
    // local-field factor, so it is exact only when that equals the host's.
    let use_dual = cfg.magnetic_route == MagneticRoute::Duality && cfg.hosts_agree();
    if use_dual {
        integrate_channel(&cfg.dual(), channel.dual(), quad)
    } else {
        integrate_channel(cfg, channel, quad)
    }
}

fn checked_channel<T: Real>(
    cfg: &ScenarioConfig<T>,
    channel: Channel,
    quad: &QuadratureSpec,
) -> Result<ChannelValue<T>> {
    cfg.validate()?;
    match channel {
        Channel::Ee | Channel::Em => integrate_channel(cfg, channel, quad),
        Channel::Me | Channel::Mm => magnetic_atom_channel(cfg, channel, quad),
    }
}

/// Electric atom, electric target response.
pub fn potential_ee<T: Real>(
    cfg: &ScenarioConfig<T>,
    quad: &QuadratureSpec,
) -> Result<ChannelValue<T>> {
    checked_channel(cfg, Channel::Ee, quad)
}

/// Electric atom, magnetic target response.
pub fn potential_em<T: Real>(
    cfg: &ScenarioConfig<T>,
    quad: &QuadratureSpec,
) -> Result<ChannelValue<T>> {
    checked_channel(cfg, Channel::Em, quad)
}

/// Magnetic atom, electric target response.
pub fn potential_me<T: Real>(
    cfg: &ScenarioConfig<T>,
    quad: &QuadratureSpec,
) -> Result<ChannelValue<T>> {
    checked_channel(cfg, Channel::Me, quad)
}

/// Magnetic atom, magnetic target response.
pub fn potential_mm<T: Real>(
    cfg: &ScenarioConfig<T>,
    quad: &QuadratureSpec,
) -> Result<ChannelValue<T>> {
    checked_channel(cfg, Channel::Mm, quad)
}

/// Sum over the requested channels.
pub fn potential_total<T: Real>(
    cfg: &ScenarioConfig<T>,
    quad: &QuadratureSpec,
) -> Result<PotentialResult<T>> {
    let warning = cfg.validate()?;
    let mut out = PotentialResult {
        ee: None,
        em: None,
        me: None,
        mm: None,
        total: T::zero(),
        error: T::zero(),
        warnings: warning.into_iter().collect(),
    };
    for channel in cfg.channels.iter() {
        let v = match channel {
            Channel::Ee | Channel::Em => integrate_channel(cfg, channel, quad)?,
            Channel::Me | Channel::Mm => magnetic_atom_channel(cfg, channel, quad)?,
        };
        out.total = out.total + v.value;
        out.error = out.error + v.error;
        match channel {
            Channel::Ee => out.ee = Some(v),
            Channel::Em => out.em = Some(v),
            Channel::Me => out.me = Some(v),
            Channel::Mm => out.mm = Some(v),
        }
    }
    Ok(out)
}

/// Local-field corrected potential between two atoms in a homogeneous host.
pub fn potential_two_atoms<T: Real>(
    atom_a: &AtomModel<T>,
    atom_b: &AtomModel<T>,
    host: &Medium<T>,
    separation: T,
    quad: &QuadratureSpec,
) -> Result<PotentialResult<T>> {
    let cfg = ScenarioConfig::new(
        atom_a.clone(),
        host.clone(),
        Target::Atom(atom_b.clone()),
        separation,
    );
    potential_total(&cfg, quad)
}

/// Placement of the host permittivity in the closed-form bulk expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Screening {
    /// `alpha* / eps`: what the Green-tensor traces give.
    #[default]
    Inverse,
    /// `alpha* eps`: the alternative placement, kept for comparison.
    Multiplier,
}

/// `g(x) = e^{-2x} (3 + 6x + 5x^2 + 2x^3 + x^4)`.
pub fn g_function<T: Real>(x: T) -> Result<T> {
    if !(x >= T::zero()) {
        return Err(Error::Domain {
            what: "g argument",
            value: x.as_f64(),
        });
    }
    let poly = T::lit(3.0) + x * (T::lit(6.0) + x * (T::lit(5.0) + x * (T::lit(2.0) + x)));
    Ok((-T::lit(2.0) * x).exp() * poly)
}

fn closed_form_restriction<T: Real>(cfg: &ScenarioConfig<T>) -> Result<()> {
    let restrict = |msg: &str| Err(Error::Restriction(msg.into()));
    if cfg.atom.is_magnetic() {
        return restrict("atom must be nonmagnetic");
    }
    if !cfg.host.mu.is_vacuum() {
        return restrict("host must be nonmagnetic");
    }
    if !cfg.hosts_agree() {
        return restrict("atom must sit in the bulk host");
    }
    match &cfg.target {
        Target::Sphere(s) if s.mu.is_vacuum() => Ok(()),
        Target::Sphere(_) => restrict("sphere must be nonmagnetic"),
        Target::Atom(_) => restrict("target must be a sphere"),
    }
}

/// Electric-electric potential of a nonmagnetic atom and a nonmagnetic
/// sphere in a nonmagnetic bulk host, from the one-dimensional closed form
/// `-(1/pi r^6) int [3eps/(2eps+1)]^2 alpha_A alpha* S(eps) g(sqrt(eps) xi r)`.
pub fn potential_bulk_closed_form<T: Real>(
    cfg: &ScenarioConfig<T>,
    screening: Screening,
    quad: &QuadratureSpec,
) -> Result<ChannelValue<T>> {
    closed_form_restriction(cfg)?;
    cfg.validate()?;
    let sphere = match &cfg.target {
        Target::Sphere(s) => s,
        Target::Atom(_) => unreachable!(),
    };
    let r = cfg.separation;
    let pref = -T::one() / (T::PI() * r.powi(6));
    let integrand = |xi: T| -> Result<T> {
        let (eps, _) = cfg.host.at_imaginary(xi)?;
        let alpha_star = sphere.excess(eps, T::one(), xi)?.alpha;
        let l = local_field_electric(eps)?;
        let s = match screening {
            Screening::Inverse => T::one() / eps,
            Screening::Multiplier => eps,
        };
        let g = g_function(eps.sqrt() * xi * r)?;
        Ok(pref * l * l * cfg.atom.polarizability_at(xi)? * alpha_star * s * g)
    };
    let res = integrate_semiinfinite_scaled(integrand, T::lit(2.0) * r, quad)?;
    Ok(ChannelValue {
        value: res.value,
        error: res.error,
        evaluations: res.evaluations,
    })
}

/// Nonretarded (London) potential `-(3/pi r^6) int alpha_A alpha_B` with the
/// partner polarisability supplied as a function of `xi`.
pub fn london_limit<T: Real, F: Fn(T) -> Result<T>>(
    atom: &AtomModel<T>,
    partner: F,
    separation: T,
    quad: &QuadratureSpec,
) -> Result<ChannelValue<T>> {
    let pref = -T::lit(3.0) / (T::PI() * separation.powi(6));
    let res = integrate_semiinfinite_scaled(
        |xi| Ok(pref * atom.polarizability_at(xi)? * partner(xi)?),
        T::lit(2.0) * separation,
        quad,
    )?;
    Ok(ChannelValue {
        value: res.value,
        error: res.error,
        evaluations: res.evaluations,
    })
}

/// Retarded potential `-(23/4 pi) alpha_A(0) alpha_B(0) / r^7`.
pub fn retarded_limit<T: Real>(alpha_a0: T, alpha_b0: T, separation: T) -> T {
    -T::lit(23.0) / (T::lit(4.0) * T::PI()) * alpha_a0 * alpha_b0 / separation.powi(7)
}

/// Least-squares slope of `ln|U|` against `ln r`.
pub fn asymptotic_power_fit<T: Real>(separations: &[T], potentials: &[T]) -> Result<T> {
    if separations.len() != potentials.len() || separations.len() < 2 {
        return Err(Error::InvalidParameter {
            what: "power fit",
            reason: "need at least two (r, U) pairs of equal length".into(),
        });
    }
    let mut pts = Vec::with_capacity(separations.len());
    for (&r, &u) in separations.iter().zip(potentials) {
        if !(r > T::zero()) || u == T::zero() || !u.is_finite() {
            return Err(Error::InvalidParameter {
                what: "power fit",
                reason: "separations must be positive and potentials finite and nonzero".into(),
            });
        }
        pts.push((r.ln(), u.abs().ln()));
    }
    let n = T::lit(pts.len() as f64);
    let (sx, sy) = pts
        .iter()
        .fold((T::zero(), T::zero()), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) = pts.iter().fold((T::zero(), T::zero()), |(a, b), p| {
        let dx = p.0 - mx;
        (a + dx * (p.1 - my), b + dx * dx)
    });
    if sxx == T::zero() {
        return Err(Error::InvalidParameter {
            what: "power fit",
            reason: "separations must not all coincide".into(),
        });
    }
    Ok(sxy / sxx)
}

/// Geometric grid of `n` points from `from` to `to` inclusive.
pub fn log_grid<T: Real>(from: T, to: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![from];
    }
    let (a, b) = (from.ln(), to.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                from
            } else if i == n - 1 {
                to
            } else {
                (a + (b - a) * T::lit(i as f64) / T::lit((n - 1) as f64)).exp()
            }
        })
        .collect()
}
