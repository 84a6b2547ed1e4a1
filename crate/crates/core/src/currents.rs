//! Circular currents of modes and mixed states, the saturation function χ, and
//! wave-packet currents on the infinite cylinder.
//!
//! All currents are the dimensionless product `R·I`.

use crate::error::{Error, Result};
use crate::params::DimensionlessParams;
use crate::quadrature::Rule1D;
use crate::scalar::{Complex, Real};
use crate::spectrum::{energy_infinite, HalfOdd, ModeSpec, Polarization};
use crate::spinors::{current_density, Combination, Mode, QuadratureRule, SpinorField, SpinorValue};
use crate::summation::NeumaierSum;

/// `χ = (λ+β) / sqrt(μ² + ν²n² + (λ+β)²)`.
pub fn chi<T: Real>(n: u32, lambda: HalfOdd, d: &DimensionlessParams<T>) -> Result<T> {
    if d.is_infinite() {
        return Err(Error::InfiniteGeometry);
    }
    let shift = lambda.value::<T>() + d.beta;
    let kn = d.nu * T::lit(n as f64);
    Ok(shift / (d.mu * d.mu + kn * kn + shift * shift).sqrt())
}

/// `c₊ U⁺_{n,λ} + c₋ U⁻_{n,λ}` with `|c₊|² + |c₋|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedState<T> {
    pub n: u32,
    pub lambda: HalfOdd,
    pub c_plus: Complex<T>,
    pub c_minus: Complex<T>,
}

impl<T: Real> MixedState<T> {
    pub fn new(n: u32, lambda: HalfOdd, c_plus: Complex<T>, c_minus: Complex<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: "longitudinal level must be >= 1".into(),
            });
        }
        let norm = c_plus.norm_sqr() + c_minus.norm_sqr();
        if (norm - T::one()).abs() > T::tol(1e-13) {
            return Err(Error::MixedNotNormalized { norm: norm.as_f64() });
        }
        Ok(Self {
            n,
            lambda,
            c_plus,
            c_minus,
        })
    }

    pub fn pure(n: u32, lambda: HalfOdd, sigma: Polarization) -> Result<Self> {
        let (one, zero) = (Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero()));
        match sigma {
            Polarization::Up => Self::new(n, lambda, one, zero),
            Polarization::Down => Self::new(n, lambda, zero, one),
        }
    }

    /// Polarization degree `λ(|c₊|² − |c₋|²)`.
    pub fn polarization(&self) -> T {
        self.lambda.value::<T>() * (self.c_plus.norm_sqr() - self.c_minus.norm_sqr())
    }

    pub fn field(&self, d: &DimensionlessParams<T>) -> Result<Combination<Mode<T>, T>> {
        let up = Mode::new(&ModeSpec::finite(self.n, self.lambda, Polarization::Up)?, d)?;
        let down = Mode::new(&ModeSpec::finite(self.n, self.lambda, Polarization::Down)?, d)?;
        Ok(Combination::new(vec![(self.c_plus, up), (self.c_minus, down)]))
    }
}

/// `R·I^c = χ/(2π)`. The mixing coefficients do not enter.
pub fn circular_current_mode<T: Real>(state: &MixedState<T>, d: &DimensionlessParams<T>) -> Result<T> {
    Ok(chi(state.n, state.lambda, d)? / T::TAU())
}

/// Quadrature of the azimuthal current density of the mixed-state spinor:
/// `∫₀^L dz ⟨j^φ⟩_φ` with the φ-average taken over the rule's φ nodes.
pub fn circular_current_mode_quadrature<T: Real>(
    state: &MixedState<T>,
    d: &DimensionlessParams<T>,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    let field = state.field(d)?;
    let zr = rule.z.as_ref().ok_or(Error::GeometryMismatch(
        "circular current of a finite mode needs a z-rule",
    ))?;
    let mut acc = NeumaierSum::new();
    let t = T::zero();
    for (&z, &wz) in zr.nodes.iter().zip(&zr.weights) {
        for (&p, &wp) in rule.phi.nodes.iter().zip(&rule.phi.weights) {
            let j = current_density(&field.value(t, p, z), p)?;
            acc.add(j.jphi * wz * wp);
        }
    }
    Ok(acc.value() / T::TAU())
}

/// Momentum amplitudes of a packet with fixed λ.
#[derive(Debug, Clone, PartialEq)]
pub enum Amplitude<T> {
    /// `a±(k) = weight± · g(k)`, `g = (2πw²)^{-1/4} exp(-(k-k0)²/(4w²))`.
    Gaussian {
        k0: T,
        w: T,
        weight_plus: Complex<T>,
        weight_minus: Complex<T>,
    },
    /// Samples on a strictly increasing momentum grid, integrated by the trapezoid rule.
    Tabulated {
        k: Vec<T>,
        a_plus: Vec<Complex<T>>,
        a_minus: Vec<Complex<T>>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PacketSpec<T> {
    pub lambda: HalfOdd,
    pub amplitude: Amplitude<T>,
    /// Rescale the discretized amplitudes to unit norm.
    pub normalize: bool,
}

impl<T: Real> PacketSpec<T> {
    pub fn gaussian(lambda: HalfOdd, k0: T, w: T, weight_plus: Complex<T>, weight_minus: Complex<T>) -> Self {
        Self {
            lambda,
            amplitude: Amplitude::Gaussian {
                k0,
                w,
                weight_plus,
                weight_minus,
            },
            normalize: false,
        }
    }

    pub fn normalized(mut self) -> Self {
        self.normalize = true;
        self
    }
}

/// Gauss–Legendre rule on `[k0 − window·w, k0 + window·w]` for Gaussian packets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumRule {
    pub window: f64,
    pub panels: usize,
    pub order: usize,
}

impl Default for MomentumRule {
    fn default() -> Self {
        Self {
            window: 8.0,
            panels: 16,
            order: 16,
        }
    }
}

/// Packet sampled on momentum nodes: `ψ = Σᵢ wᵢ [a₊(kᵢ) U⁺ + a₋(kᵢ) U⁻]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePacket<T> {
    pub lambda: HalfOdd,
    pub k: Vec<T>,
    pub weights: Vec<T>,
    pub a_plus: Vec<Complex<T>>,
    pub a_minus: Vec<Complex<T>>,
}

impl<T: Real> DiscretePacket<T> {
    /// `∫dk (|a₊|² + |a₋|²)`.
    pub fn norm(&self) -> T {
        self.moment(|_, p, m| p + m)
    }

    fn moment(&self, f: impl Fn(T, T, T) -> T) -> T {
        let mut acc = NeumaierSum::new();
        for i in 0..self.k.len() {
            acc.add(self.weights[i] * f(self.k[i], self.a_plus[i].norm_sqr(), self.a_minus[i].norm_sqr()));
        }
        acc.value()
    }

    /// Largest group velocity `|k|/E` on the grid.
    pub fn max_velocity(&self, d: &DimensionlessParams<T>) -> T {
        self.k
            .iter()
            .map(|&k| k.abs() / energy_infinite(k, self.lambda, d))
            .fold(T::zero(), T::max)
    }

    /// Largest gap between momentum nodes.
    pub fn max_spacing(&self) -> T {
        self.k.windows(2).map(|w| w[1] - w[0]).fold(T::zero(), T::max)
    }

    fn require_normalized(&self) -> Result<()> {
        let n = self.norm();
        if (n - T::one()).abs() > T::tol(1e-10) {
            return Err(Error::NotNormalized { norm: n.as_f64() });
        }
        Ok(())
    }
}

/// Samples the packet amplitudes. Gaussian packets use `rule`; tabulated ones their own grid.
pub fn discretize<T: Real>(p: &PacketSpec<T>, rule: &MomentumRule) -> Result<DiscretePacket<T>> {
    let (k, weights, a_plus, a_minus) = match &p.amplitude {
        Amplitude::Gaussian {
            k0,
            w,
            weight_plus,
            weight_minus,
        } => {
            if !(*w > T::zero()) {
                return Err(Error::InvalidParameter {
                    name: "w",
                    reason: "packet width must be positive".into(),
                });
            }
            let half = T::lit(rule.window) * *w;
            let r = Rule1D::composite_gauss_legendre(*k0 - half, *k0 + half, rule.panels, rule.order)?;
            let norm = (T::TAU() * *w * *w).powf(T::lit(-0.25));
            let g: Vec<T> = r
                .nodes
                .iter()
                .map(|&k| {
                    let x = (k - *k0) / *w;
                    norm * (-x * x / T::lit(4.0)).exp()
                })
                .collect();
            let ap = g.iter().map(|&g| *weight_plus * g).collect();
            let am = g.iter().map(|&g| *weight_minus * g).collect();
            (r.nodes, r.weights, ap, am)
        }
        Amplitude::Tabulated { k, a_plus, a_minus } => {
            if a_plus.len() != k.len() || a_minus.len() != k.len() {
                return Err(Error::InvalidParameter {
                    name: "amplitude",
                    reason: "tabulated amplitudes must match the momentum grid".into(),
                });
            }
            let r = Rule1D::trapezoid_on_grid(k)?;
            (r.nodes, r.weights, a_plus.clone(), a_minus.clone())
        }
    };
    let mut packet = DiscretePacket {
        lambda: p.lambda,
        k,
        weights,
        a_plus,
        a_minus,
    };
    if p.normalize {
        let n = packet.norm();
        if !(n > T::zero()) {
            return Err(Error::EmptyPacket);
        }
        let s = Complex::new(T::one() / n.sqrt(), T::zero());
        for a in packet.a_plus.iter_mut().chain(packet.a_minus.iter_mut()) {
            *a *= s;
        }
    }
    Ok(packet)
}

/// `R·I^c = (λ+β)/(2π) ∫dk (|a₊|² + |a₋|²)/(R·E_{k,λ})`.
pub fn circular_current_packet<T: Real>(
    p: &PacketSpec<T>,
    d: &DimensionlessParams<T>,
    rule: &MomentumRule,
) -> Result<T> {
    let dp = discretize(p, rule)?;
    dp.require_normalized()?;
    let shift = p.lambda.value::<T>() + d.beta;
    let inv = dp.moment(|k, ap, am| (ap + am) / energy_infinite(k, p.lambda, d));
    Ok(shift * inv / T::TAU())
}

/// `R·E_λ = ∫dk R·E_{k,λ} (|a₊|² + |a₋|²)`.
pub fn packet_energy<T: Real>(p: &PacketSpec<T>, d: &DimensionlessParams<T>, rule: &MomentumRule) -> Result<T> {
    let dp = discretize(p, rule)?;
    dp.require_normalized()?;
    Ok(dp.moment(|k, ap, am| energy_infinite(k, p.lambda, d) * (ap + am)))
}

/// `λ ∫dk (|a₊|² − |a₋|²)`.
pub fn packet_polarization<T: Real>(p: &PacketSpec<T>, rule: &MomentumRule) -> Result<T> {
    let dp = discretize(p, rule)?;
    dp.require_normalized()?;
    Ok(p.lambda.value::<T>() * dp.moment(|_, ap, am| ap - am))
}

/// Velocity expectation `∫dk (|a₊|² + |a₋|²) k/E`.
pub fn packet_velocity<T: Real>(p: &PacketSpec<T>, d: &DimensionlessParams<T>, rule: &MomentumRule) -> Result<T> {
    let dp = discretize(p, rule)?;
    dp.require_normalized()?;
    Ok(dp.moment(|k, ap, am| k / energy_infinite(k, p.lambda, d) * (ap + am)))
}

/// Fails unless the momentum spacing is at most `π/(4(|t|·v_max + |z|))`.
pub fn check_resolution<T: Real>(dp: &DiscretePacket<T>, d: &DimensionlessParams<T>, t: T, z: T) -> Result<()> {
    let reach = t.abs() * dp.max_velocity(d) + z.abs();
    if reach == T::zero() || dp.k.len() < 2 {
        return Ok(());
    }
    let allowed = T::PI() / (T::lit(4.0) * reach);
    let spacing = dp.max_spacing();
    if spacing > allowed {
        let span = dp.k[dp.k.len() - 1] - dp.k[0];
        let ratio = (spacing / allowed).ceil().as_f64();
        return Err(Error::Resolution {
            spacing: spacing.as_f64(),
            t: t.as_f64(),
            z: z.as_f64(),
            required_nodes: ((span / allowed).ceil().as_f64().max(ratio * dp.k.len() as f64)) as usize,
        });
    }
    Ok(())
}

/// Smallest number of Gauss–Legendre panels (doubling from `rule.panels`) that
/// resolves the packet phase up to `(t, z_reach)`.
pub fn resolving_rule<T: Real>(
    p: &PacketSpec<T>,
    d: &DimensionlessParams<T>,
    rule: &MomentumRule,
    t: T,
    z_reach: T,
) -> Result<MomentumRule> {
    let mut r = *rule;
    for _ in 0..24 {
        let dp = discretize(p, &r)?;
        if check_resolution(&dp, d, t, z_reach).is_ok() {
            return Ok(r);
        }
        r.panels *= 2;
    }
    let dp = discretize(p, &r)?;
    check_resolution(&dp, d, t, z_reach).map(|_| r)
}

/// Precomputed infinite-cylinder modes for each momentum node.
struct PacketModes<T> {
    up: Vec<Mode<T>>,
    down: Vec<Mode<T>>,
}

impl<T: Real> PacketModes<T> {
    fn new(dp: &DiscretePacket<T>, d: &DimensionlessParams<T>) -> Result<Self> {
        let d = d.with_nu(T::zero());
        let mut up = Vec::with_capacity(dp.k.len());
        let mut down = Vec::with_capacity(dp.k.len());
        for &k in &dp.k {
            up.push(Mode::new(&ModeSpec::infinite(k, dp.lambda, Polarization::Up), &d)?);
            down.push(Mode::new(&ModeSpec::infinite(k, dp.lambda, Polarization::Down), &d)?);
        }
        Ok(Self { up, down })
    }

    /// ψ at φ = 0; the φ-dependence of component c is `e^{i m_c φ}`.
    fn value(&self, dp: &DiscretePacket<T>, t: T, z: T) -> SpinorValue<T> {
        let mut re = [NeumaierSum::new(); 4];
        let mut im = [NeumaierSum::new(); 4];
        let zero = T::zero();
        for i in 0..dp.k.len() {
            let u = self.up[i].value(t, zero, z);
            let v = self.down[i].value(t, zero, z);
            let w = dp.weights[i];
            for c in 0..4 {
                let s = (dp.a_plus[i] * u.c[c] + dp.a_minus[i] * v.c[c]) * w;
                re[c].add(s.re);
                im[c].add(s.im);
            }
        }
        SpinorValue::new([0, 1, 2, 3].map(|c| Complex::new(re[c].value(), im[c].value())))
    }

    fn windings(&self) -> [T; 4] {
        self.up[0].windings()
    }
}

fn with_phases<T: Real>(psi: &SpinorValue<T>, windings: &[T; 4], phi: T) -> SpinorValue<T> {
    let mut out = *psi;
    for (v, &m) in out.c.iter_mut().zip(windings) {
        *v *= Complex::new(T::zero(), m * phi).exp();
    }
    out
}

/// φ nodes used for the azimuthal integrals of packet bilinears.
const PACKET_PHI_POINTS: usize = 16;

fn phi_integrated<T: Real>(psi: &SpinorValue<T>, windings: &[T; 4], phi_rule: &Rule1D<T>) -> Result<(T, T)> {
    let mut j0 = NeumaierSum::new();
    let mut j3 = NeumaierSum::new();
    for (&p, &w) in phi_rule.nodes.iter().zip(&phi_rule.weights) {
        let j = current_density(&with_phases(psi, windings, p), p)?;
        j0.add(j.j0 * w);
        j3.add(j.j3 * w);
    }
    Ok((j0.value(), j3.value()))
}

/// `R ∫₀^{2π}dφ ψ̄γ³ψ` at (t, z), with ψ built from the momentum quadrature.
pub fn longitudinal_current_packet_direct<T: Real>(
    p: &PacketSpec<T>,
    d: &DimensionlessParams<T>,
    t: T,
    z: T,
    rule: &MomentumRule,
) -> Result<T> {
    let dp = discretize(p, rule)?;
    dp.require_normalized()?;
    check_resolution(&dp, d, t, z)?;
    let modes = PacketModes::new(&dp, d)?;
    let phi_rule = Rule1D::periodic_trapezoid(PACKET_PHI_POINTS)?;
    Ok(phi_integrated(&modes.value(&dp, t, z), &modes.windings(), &phi_rule)?.1)
}

/// z-integrals of the packet at fixed time: norm `∫dz∫dφ ψ†ψ` and flux `∫dz I³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketIntegrals<T> {
    pub t: T,
    pub z_half_width: T,
    pub norm: T,
    pub flux: T,
}

/// Direct (φ, z) quadrature over `[-Z, Z]` with `Z = |t| + 12/w` (Gaussian) or
/// `z_half_width` if given. z is covered by 32-point Gauss–Legendre panels of
/// width at most `π/(2 k_max)`; the momentum rule is refined (panel doubling)
/// until it resolves the phase at the window edge.
pub fn packet_z_integrals<T: Real>(
    p: &PacketSpec<T>,
    d: &DimensionlessParams<T>,
    t: T,
    z_half_width: Option<T>,
    rule: &MomentumRule,
) -> Result<PacketIntegrals<T>> {
    let zmax = match (z_half_width, &p.amplitude) {
        (Some(z), _) => z,
        (None, Amplitude::Gaussian { w, .. }) => t.abs() + T::lit(12.0) / *w,
        (None, Amplitude::Tabulated { .. }) => {
            return Err(Error::InvalidParameter {
                name: "z_half_width",
                reason: "tabulated packets need an explicit z window".into(),
            })
        }
    };
    let rule = resolving_rule(p, d, rule, t, zmax)?;
    let dp = discretize(p, &rule)?;
    dp.require_normalized()?;
    let kmax = dp.k.iter().fold(T::one(), |m, k| m.max(k.abs()));
    let panel = T::PI() / (T::lit(2.0) * kmax);
    let panels = ((T::lit(2.0) * zmax / panel).ceil().as_f64() as usize).max(1);
    let zr = Rule1D::composite_gauss_legendre(-zmax, zmax, panels, 32)?;
    let modes = PacketModes::new(&dp, d)?;
    let windings = modes.windings();
    let phi_rule = Rule1D::periodic_trapezoid(PACKET_PHI_POINTS)?;
    let mut norm = NeumaierSum::new();
    let mut flux = NeumaierSum::new();
    for (&z, &w) in zr.nodes.iter().zip(&zr.weights) {
        let (j0, j3) = phi_integrated(&modes.value(&dp, t, z), &windings, &phi_rule)?;
        norm.add(j0 * w);
        flux.add(j3 * w);
    }
    Ok(PacketIntegrals {
        t,
        z_half_width: zmax,
        norm: norm.value(),
        flux: flux.value(),
    })
}

/// Double momentum integral formula for I³ on the infinite cylinder:
///
/// ```text
/// (1/4π) ∫dk dk' e^{it(E−E') − iz(k−k')} / sqrt(E E' (E+M)(E'+M))
///   × { [k E' + k' E + M(E + E')] (a₊*a₊' + a₋*a₋')
///       − i(λ+β)(E − E') (a₊*a₋' + a₋*a₊') }
/// ```
///
/// Kept for comparison with [`longitudinal_current_packet_direct`]; the two
/// differ (on the diagonal the bracket does not reduce to the flux `k/E`).
pub fn longitudinal_current_packet_formula<T: Real>(
    p: &PacketSpec<T>,
    d: &DimensionlessParams<T>,
    t: T,
    z: T,
    rule: &MomentumRule,
) -> Result<T> {
    let dp = discretize(p, rule)?;
    dp.require_normalized()?;
    check_resolution(&dp, d, t, z)?;
    let m = d.mu;
    let shift = p.lambda.value::<T>() + d.beta;
    let e: Vec<T> = dp.k.iter().map(|&k| energy_infinite(k, p.lambda, d)).collect();
    let i = Complex::new(T::zero(), T::one());
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for a in 0..dp.k.len() {
        let (k, ek) = (dp.k[a], e[a]);
        for (b, (&kp, &ekp)) in dp.k.iter().zip(&e).enumerate() {
            let phase = Complex::new(T::zero(), t * (ek - ekp) - z * (k - kp)).exp();
            let denom = (ek * ekp * (ek + m) * (ekp + m)).sqrt();
            let diag = dp.a_plus[a].conj() * dp.a_plus[b] + dp.a_minus[a].conj() * dp.a_minus[b];
            let cross = dp.a_plus[a].conj() * dp.a_minus[b] + dp.a_minus[a].conj() * dp.a_plus[b];
            let bracket = diag * (k * ekp + kp * ek + m * (ek + ekp)) - cross * i * (shift * (ek - ekp));
            let v = phase * bracket * (dp.weights[a] * dp.weights[b] / denom);
            re.add(v.re);
            im.add(v.im);
        }
    }
    let scale = T::one() / (T::lit(2.0) * T::TAU());
    let v = Complex::new(re.value(), im.value()) * scale;
    if v.im.abs() > T::tol(1e-10) * v.re.abs().max(T::one()) {
        return Err(Error::NonRealBilinear { imag: v.im.as_f64() });
    }
    Ok(v.re)
}
