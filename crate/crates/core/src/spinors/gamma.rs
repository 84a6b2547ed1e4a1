//! Dirac matrices in the standard representation (diagonal γ⁰).
//!
//! ```text
//! γ⁰ = diag(1, 1, -1, -1)        γⁱ = [[0, σᵢ], [-σᵢ, 0]]
//! γ^φ(φ) = (-γ¹ sin φ + γ² cos φ) / R        (R = 1 here)
//! ```
//!
//! Every other module takes its matrices from [`GammaSet::standard`].

use std::ops::{Add, Mul, Sub};

use crate::scalar::{Complex, Real};

pub type Mat4<T> = [[Complex<T>; 4]; 4];

/// Four complex components of ψ at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorValue<T> {
    pub c: [Complex<T>; 4],
}

impl<T: Real> SpinorValue<T> {
    pub fn new(c: [Complex<T>; 4]) -> Self {
        Self { c }
    }

    pub fn zero() -> Self {
        Self {
            c: [Complex::new(T::zero(), T::zero()); 4],
        }
    }

    /// `ψ†ψ'`.
    pub fn dot(&self, other: &Self) -> Complex<T> {
        self.c
            .iter()
            .zip(&other.c)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
    }

    pub fn norm_sqr(&self) -> T {
        self.c.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            c: self.c.map(|z| z * s),
        }
    }

    /// Largest componentwise modulus.
    pub fn max_abs(&self) -> T {
        self.c.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<T: Real> Add for SpinorValue<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        Self { c }
    }
}

impl<T: Real> Sub for SpinorValue<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
        Self { c }
    }
}

impl<T: Real> Mul<SpinorValue<T>> for Complex<T> {
    type Output = SpinorValue<T>;

    fn mul(self, rhs: SpinorValue<T>) -> SpinorValue<T> {
        rhs.scale(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet<T> {
    pub g0: Mat4<T>,
    pub g1: Mat4<T>,
    pub g2: Mat4<T>,
    pub g3: Mat4<T>,
}

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

pub fn zero_matrix<T: Real>() -> Mat4<T> {
    [[c(0.0, 0.0); 4]; 4]
}

pub fn identity<T: Real>() -> Mat4<T> {
    let mut m = zero_matrix();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    m
}

/// `[[0, s], [-s, 0]]` for a 2×2 block `s`.
fn off_diagonal<T: Real>(s: [[Complex<T>; 2]; 2]) -> Mat4<T> {
    let mut m = zero_matrix();
    for i in 0..2 {
        for j in 0..2 {
            m[i][j + 2] = s[i][j];
            m[i + 2][j] = -s[i][j];
        }
    }
    m
}

impl<T: Real> GammaSet<T> {
    pub fn standard() -> Self {
        let mut g0 = zero_matrix();
        g0[0][0] = c(1.0, 0.0);
        g0[1][1] = c(1.0, 0.0);
        g0[2][2] = c(-1.0, 0.0);
        g0[3][3] = c(-1.0, 0.0);
        let sigma1 = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
        let sigma2 = [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]];
        let sigma3 = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];
        Self {
            g0,
            g1: off_diagonal(sigma1),
            g2: off_diagonal(sigma2),
            g3: off_diagonal(sigma3),
        }
    }

    /// γ^a for a = 0..=3.
    pub fn get(&self, a: usize) -> &Mat4<T> {
        match a {
            0 => &self.g0,
            1 => &self.g1,
            2 => &self.g2,
            3 => &self.g3,
            _ => panic!("gamma index {a} out of range"),
        }
    }

    /// `γ^φ(φ) = -γ¹ sin φ + γ² cos φ` (lengths in units of R).
    pub fn gamma_phi(&self, phi: T) -> Mat4<T> {
        combine(&self.g1, -phi.sin(), &self.g2, phi.cos())
    }

    /// `∂_φ γ^φ = -γ¹ cos φ - γ² sin φ`.
    pub fn d_gamma_phi(&self, phi: T) -> Mat4<T> {
        combine(&self.g1, -phi.cos(), &self.g2, -phi.sin())
    }

    /// `S₃ = diag(σ₃, σ₃)/2`.
    pub fn spin3(&self) -> [T; 4] {
        let h = T::lit(0.5);
        [h, -h, h, -h]
    }
}

fn combine<T: Real>(a: &Mat4<T>, sa: T, b: &Mat4<T>, sb: T) -> Mat4<T> {
    let mut m = zero_matrix();
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[i][j] * sa + b[i][j] * sb;
        }
    }
    m
}

pub fn matmul<T: Real>(a: &Mat4<T>, b: &Mat4<T>) -> Mat4<T> {
    let mut m = zero_matrix();
    for i in 0..4 {
        for j in 0..4 {
            let mut s = c(0.0, 0.0);
            for k in 0..4 {
                s += a[i][k] * b[k][j];
            }
            m[i][j] = s;
        }
    }
    m
}

pub fn apply<T: Real>(m: &Mat4<T>, v: &SpinorValue<T>) -> SpinorValue<T> {
    SpinorValue::new(m.map(|row| row.iter().zip(&v.c).fold(c(0.0, 0.0), |s, (a, b)| s + a * b)))
}

/// `ψ† M ψ'`.
pub fn bilinear<T: Real>(a: &SpinorValue<T>, m: &Mat4<T>, b: &SpinorValue<T>) -> Complex<T> {
    a.dot(&apply(m, b))
}

pub fn max_abs_diff<T: Real>(a: &Mat4<T>, b: &Mat4<T>) -> T {
    let mut worst = T::zero();
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

/// Largest entry of `{γ^a, γ^b} − 2η^{ab}` over all index pairs, η = diag(1, −1, −1, −1).
pub fn clifford_error<T: Real>(g: &GammaSet<T>) -> T {
    let eta = [1.0, -1.0, -1.0, -1.0];
    let mut worst = T::zero();
    for (a, &eta_a) in eta.iter().enumerate() {
        for b in 0..4 {
            let ab = matmul(g.get(a), g.get(b));
            let ba = matmul(g.get(b), g.get(a));
            let mut anti = zero_matrix();
            for i in 0..4 {
                for j in 0..4 {
                    anti[i][j] = ab[i][j] + ba[i][j];
                }
            }
            let mut expected = zero_matrix();
            if a == b {
                for (i, row) in expected.iter_mut().enumerate() {
                    row[i] = c(2.0 * eta_a, 0.0);
                }
            }
            worst = worst.max(max_abs_diff(&anti, &expected));
        }
    }
    worst
}
