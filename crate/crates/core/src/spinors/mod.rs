//! Mode spinors and the brute-force oracles built on them: quadrature inner
//! products, residuals of the reduced Dirac system, the K operator, current
//! densities and the restricted Hamiltonian.

pub mod gamma;
pub mod mode;

pub use gamma::{GammaSet, Mat4, SpinorValue};
pub use mode::{eval_mode, Component, Mode, ZProfile};

use crate::error::{Error, Result};
use crate::params::DimensionlessParams;
use crate::quadrature::Rule1D;
use crate::scalar::{Complex, Real};
use crate::spectrum::{Longitudinal, ModeSpec};
use crate::summation::NeumaierSum;

/// A spinor field with analytic first derivatives in φ and z.
pub trait SpinorField<T: Real> {
    fn value(&self, t: T, phi: T, z: T) -> SpinorValue<T>;
    fn d_phi(&self, t: T, phi: T, z: T) -> SpinorValue<T>;
    fn d_z(&self, t: T, phi: T, z: T) -> SpinorValue<T>;
}

impl<T: Real> SpinorField<T> for Mode<T> {
    fn value(&self, t: T, phi: T, z: T) -> SpinorValue<T> {
        self.eval_unchecked(t, phi, z)
    }

    fn d_phi(&self, t: T, phi: T, z: T) -> SpinorValue<T> {
        self.d_phi_unchecked(t, phi, z)
    }

    fn d_z(&self, t: T, phi: T, z: T) -> SpinorValue<T> {
        self.d_z_unchecked(t, phi, z)
    }
}

/// Finite linear combination `Σ cᵢ ψᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Combination<F, T> {
    pub terms: Vec<(Complex<T>, F)>,
}

impl<T: Real, F: SpinorField<T>> Combination<F, T> {
    pub fn new(terms: Vec<(Complex<T>, F)>) -> Self {
        Self { terms }
    }

    fn fold(&self, f: impl Fn(&F) -> SpinorValue<T>) -> SpinorValue<T> {
        self.terms
            .iter()
            .fold(SpinorValue::zero(), |acc, (c, field)| acc + f(field).scale(*c))
    }
}

impl<T: Real, F: SpinorField<T>> SpinorField<T> for Combination<F, T> {
    fn value(&self, t: T, phi: T, z: T) -> SpinorValue<T> {
        self.fold(|f| f.value(t, phi, z))
    }

    fn d_phi(&self, t: T, phi: T, z: T) -> SpinorValue<T> {
        self.fold(|f| f.d_phi(t, phi, z))
    }

    fn d_z(&self, t: T, phi: T, z: T) -> SpinorValue<T> {
        self.fold(|f| f.d_z(t, phi, z))
    }
}

/// Static field with one separable term per component, `a_c Z_c(z) e^{i m_c φ}`.
/// Used as a generic test spinor.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableField<T> {
    pub components: [Component<T>; 4],
}

impl<T: Real> SpinorField<T> for SeparableField<T> {
    fn value(&self, _t: T, phi: T, z: T) -> SpinorValue<T> {
        SpinorValue::new(
            self.components
                .map(|c| c.amp * c.profile.value(z) * phase(c.winding, phi)),
        )
    }

    fn d_phi(&self, _t: T, phi: T, z: T) -> SpinorValue<T> {
        SpinorValue::new(
            self.components
                .map(|c| c.amp * c.profile.value(z) * phase(c.winding, phi) * Complex::new(T::zero(), c.winding)),
        )
    }

    fn d_z(&self, _t: T, phi: T, z: T) -> SpinorValue<T> {
        SpinorValue::new(
            self.components
                .map(|c| c.amp * c.profile.derivative(z) * phase(c.winding, phi)),
        )
    }
}

fn phase<T: Real>(m: T, phi: T) -> Complex<T> {
    Complex::new(T::zero(), m * phi).exp()
}

/// Tensor-product rule for `∫₀^{2π}dφ ∫dz`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    /// `None` on the infinite cylinder.
    pub z: Option<Rule1D<T>>,
    pub phi: Rule1D<T>,
}

pub const DEFAULT_Z_ORDER: usize = 64;
pub const DEFAULT_PHI_POINTS: usize = 256;

impl<T: Real> QuadratureRule<T> {
    /// `panels` Gauss–Legendre panels of `order` points on [0, L].
    pub fn new(d: &DimensionlessParams<T>, panels: usize, order: usize, phi_points: usize) -> Result<Self> {
        let phi = Rule1D::periodic_trapezoid(phi_points)?;
        let z = if d.is_infinite() {
            None
        } else {
            Some(Rule1D::composite_gauss_legendre(
                T::zero(),
                d.length()?,
                panels.max(1),
                order,
            )?)
        };
        Ok(Self { z, phi })
    }

    /// One panel per unit of the highest level, 64 nodes each, 256 φ points.
    pub fn for_levels(d: &DimensionlessParams<T>, n_max: u32) -> Result<Self> {
        Self::new(d, n_max.max(1) as usize, DEFAULT_Z_ORDER, DEFAULT_PHI_POINTS)
    }
}

fn require_z<T: Real>(rule: &QuadratureRule<T>) -> Result<&Rule1D<T>> {
    rule.z.as_ref().ok_or(Error::GeometryMismatch(
        "quadrature rule has no z-domain (infinite cylinder)",
    ))
}

/// `R ∫dφ ∫dz ψ_a† ψ_b` at t = 0.
///
/// Finite cylinder: component-wise product of the φ and z quadratures (every
/// mode component is separable). Infinite cylinder: only `k = k'` is accepted
/// and the coefficient of `δ(k − k')` is returned.
pub fn inner_product<T: Real>(
    a: &ModeSpec<T>,
    b: &ModeSpec<T>,
    d: &DimensionlessParams<T>,
    rule: &QuadratureRule<T>,
) -> Result<Complex<T>> {
    if a.is_finite() != b.is_finite() {
        return Err(Error::GeometryMismatch(
            "inner product of a finite and an infinite mode",
        ));
    }
    let ma = Mode::new(a, d)?;
    let mb = Mode::new(b, d)?;
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    match (a.longitudinal, b.longitudinal) {
        (Longitudinal::Momentum(ka), Longitudinal::Momentum(kb)) => {
            if ka != kb {
                return Err(Error::DistributionalInnerProduct {
                    k_a: ka.as_f64(),
                    k_b: kb.as_f64(),
                });
            }
            for (ca, cb) in ma.components.iter().zip(&mb.components) {
                let phi_part = rule.phi.integrate_complex(|p| phase(cb.winding - ca.winding, p));
                let v = ca.amp.conj() * cb.amp * phi_part * T::TAU();
                re.add(v.re);
                im.add(v.im);
            }
        }
        _ => {
            let zr = require_z(rule)?;
            for (ca, cb) in ma.components.iter().zip(&mb.components) {
                let phi_part = rule.phi.integrate_complex(|p| phase(cb.winding - ca.winding, p));
                let z_part = zr.integrate_complex(|z| ca.profile.value(z).conj() * cb.profile.value(z));
                let v = ca.amp.conj() * cb.amp * phi_part * z_part;
                re.add(v.re);
                im.add(v.im);
            }
        }
    }
    Ok(Complex::new(re.value(), im.value()))
}

/// Full two-dimensional quadrature of `ψ_a†ψ_b` at time t.
pub fn inner_product_fields<T: Real, A: SpinorField<T>, B: SpinorField<T>>(
    a: &A,
    b: &B,
    t: T,
    rule: &QuadratureRule<T>,
) -> Result<Complex<T>> {
    let zr = require_z(rule)?;
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for (&z, &wz) in zr.nodes.iter().zip(&zr.weights) {
        for (&p, &wp) in rule.phi.nodes.iter().zip(&rule.phi.weights) {
            let v = a.value(t, p, z).dot(&b.value(t, p, z)) * (wz * wp);
            re.add(v.re);
            im.add(v.im);
        }
    }
    Ok(Complex::new(re.value(), im.value()))
}

/// Applies the reduced 4×4 system (entries `E∓M`, `±i∂z`, `±iΛ`) to the
/// z-profiles of `mode` and returns the largest component modulus over the samples.
pub fn reduced_residual<T: Real>(mode: &Mode<T>, z_samples: &[T]) -> T {
    let e = mode.energy;
    let m = mode.mu;
    let lam = mode.shift;
    let i = Complex::new(T::zero(), T::one());
    let mut worst = T::zero();
    for &z in z_samples {
        let [f1, f2, g1, g2] = mode.z_profile(z);
        let [df1, df2, dg1, dg2] = mode.z_profile_derivative(z);
        let rows = [
            f1 * (e - m) + i * dg1 + i * g2 * lam,
            f2 * (e - m) - i * g1 * lam - i * dg2,
            -i * df1 - i * f2 * lam - g1 * (e + m),
            i * f1 * lam + i * df2 - g2 * (e + m),
        ];
        for r in rows {
            worst = worst.max(r.norm());
        }
    }
    worst
}

/// [`reduced_residual`] for the mode described by `spec`.
pub fn dirac_residual<T: Real>(spec: &ModeSpec<T>, d: &DimensionlessParams<T>, z_samples: &[T]) -> Result<T> {
    Ok(reduced_residual(&Mode::new(spec, d)?, z_samples))
}

/// `K ψ` with `K = γ⁰(2 S₃ L₃ + ½)` and `L₃ = -i∂_φ` applied analytically.
pub fn k_operator_apply<T: Real, F: SpinorField<T>>(field: &F, t: T, phi: T, z: T) -> SpinorValue<T> {
    let psi = field.value(t, phi, z);
    let dphi = field.d_phi(t, phi, z);
    let s3 = GammaSet::<T>::standard().spin3();
    let g0 = [T::one(), T::one(), -T::one(), -T::one()];
    let minus_i = Complex::new(T::zero(), -T::one());
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let mut out = SpinorValue::zero();
    for c in 0..4 {
        let l3 = minus_i * dphi.c[c];
        out.c[c] = (l3 * (two * s3[c]) + psi.c[c] * half) * g0[c];
    }
    out
}

/// Largest componentwise `|Kψ − κψ|` over the given `(φ, z)` points at time t.
pub fn k_eigen_residual<T: Real, F: SpinorField<T>>(field: &F, eigenvalue: T, t: T, points: &[(T, T)]) -> T {
    let mut worst = T::zero();
    for &(phi, z) in points {
        let k = k_operator_apply(field, t, phi, z);
        let psi = field.value(t, phi, z);
        worst = worst.max((k - psi.scale(Complex::new(eigenvalue, T::zero()))).max_abs());
    }
    worst
}

/// `K` applied to a single mode at a point.
pub fn k_operator_apply_mode<T: Real>(
    spec: &ModeSpec<T>,
    d: &DimensionlessParams<T>,
    t: T,
    phi: T,
    z: T,
) -> Result<SpinorValue<T>> {
    let mode = Mode::new(spec, d)?;
    mode.eval(t, phi, z)?;
    Ok(k_operator_apply(&mode, t, phi, z))
}

/// Current density components `(j⁰, j^φ, j³)` at one point (R = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentDensity<T> {
    pub j0: T,
    pub jphi: T,
    pub j3: T,
}

/// `j⁰ = ψ†ψ`, `j^φ = ψ†γ⁰γ^φψ`, `j³ = ψ†γ⁰γ³ψ`. Fails when an imaginary part
/// exceeds `1e-10·max(1, j⁰)`.
pub fn current_density<T: Real>(psi: &SpinorValue<T>, phi: T) -> Result<CurrentDensity<T>> {
    let g = GammaSet::<T>::standard();
    let a_phi = gamma::matmul(&g.g0, &g.gamma_phi(phi));
    let a3 = gamma::matmul(&g.g0, &g.g3);
    let j0 = psi.norm_sqr();
    let jphi = gamma::bilinear(psi, &a_phi, psi);
    let j3 = gamma::bilinear(psi, &a3, psi);
    let limit = T::tol(1e-10) * j0.max(T::one());
    for v in [jphi, j3] {
        if v.im.abs() > limit {
            return Err(Error::NonRealBilinear { imag: v.im.as_f64() });
        }
    }
    Ok(CurrentDensity {
        j0,
        jphi: jphi.re,
        j3: j3.re,
    })
}

/// Which form of the azimuthal kinetic term to use in [`hamiltonian_apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AzimuthalTerm {
    /// Includes `(i/2)∂_φγ^φ`.
    Symmetrized,
    /// Drops it; not Hermitian.
    Bare,
}

/// `H ψ = γ⁰[Mψ − γ^φ(i∂_φ − β)ψ − (i/2)(∂_φγ^φ)ψ − iγ³∂_zψ]`, the generator of
/// time translations for the restricted operator.
pub fn hamiltonian_apply<T: Real, F: SpinorField<T>>(
    field: &F,
    d: &DimensionlessParams<T>,
    term: AzimuthalTerm,
    t: T,
    phi: T,
    z: T,
) -> SpinorValue<T> {
    let g = GammaSet::<T>::standard();
    let i = Complex::new(T::zero(), T::one());
    let psi = field.value(t, phi, z);
    let dphi = field.d_phi(t, phi, z);
    let dz = field.d_z(t, phi, z);
    let beta = Complex::new(d.beta, T::zero());
    let kinetic = dphi.scale(i) - psi.scale(beta);
    let mut inner = psi.scale(Complex::new(d.mu, T::zero()))
        - gamma::apply(&g.gamma_phi(phi), &kinetic)
        - gamma::apply(&g.g3, &dz.scale(i));
    if term == AzimuthalTerm::Symmetrized {
        inner = inner - gamma::apply(&g.d_gamma_phi(phi), &psi).scale(i * T::lit(0.5));
    }
    gamma::apply(&g.g0, &inner)
}

/// `R ∫dφ ∫dz ψ_a† (H ψ_b)` at t = 0 on the finite cylinder.
pub fn hamiltonian_matrix_element<T: Real, A: SpinorField<T>, B: SpinorField<T>>(
    a: &A,
    b: &B,
    d: &DimensionlessParams<T>,
    term: AzimuthalTerm,
    rule: &QuadratureRule<T>,
) -> Result<Complex<T>> {
    let zr = require_z(rule)?;
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    let t = T::zero();
    for (&z, &wz) in zr.nodes.iter().zip(&zr.weights) {
        for (&p, &wp) in rule.phi.nodes.iter().zip(&rule.phi.weights) {
            let hb = hamiltonian_apply(b, d, term, t, p, z);
            let v = a.value(t, p, z).dot(&hb) * (wz * wp);
            re.add(v.re);
            im.add(v.im);
        }
    }
    Ok(Complex::new(re.value(), im.value()))
}
