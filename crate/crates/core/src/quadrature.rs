//! One-dimensional quadrature rules: Gauss–Legendre (plain and composite),
//! periodic trapezoid and trapezoid on a given grid.

use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};
use crate::summation::NeumaierSum;

/// Gauss–Legendre nodes and weights on [-1, 1], computed in `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the three-term Legendre recurrence.
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter {
                name: "order",
                reason: "Gauss-Legendre order must be at least 1".into(),
            });
        }
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self { nodes, weights })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<T: Real, F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        let half = (b - a) / T::lit(2.0);
        let mid = (a + b) / T::lit(2.0);
        let mut acc = NeumaierSum::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(T::lit(w) * f(mid + half * T::lit(x)));
        }
        acc.value() * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A concrete rule on an interval: nodes with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1D<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> Rule1D<T> {
    /// `panels` equal sub-intervals of [a, b], each with an `order`-point Gauss–Legendre rule.
    pub fn composite_gauss_legendre(a: T, b: T, panels: usize, order: usize) -> Result<Self> {
        if panels == 0 {
            return Err(Error::InvalidParameter {
                name: "panels",
                reason: "at least one panel is required".into(),
            });
        }
        if !(b > a) {
            return Err(Error::InvalidParameter {
                name: "interval",
                reason: format!("empty interval [{a}, {b}]"),
            });
        }
        let gl = GaussLegendre::new(order)?;
        let width = (b - a) / T::from_count(panels);
        let half = width / T::lit(2.0);
        let mut nodes = Vec::with_capacity(panels * order);
        let mut weights = Vec::with_capacity(panels * order);
        for p in 0..panels {
            let mid = a + width * (T::from_count(p) + T::lit(0.5));
            for (&x, &w) in gl.nodes().iter().zip(gl.weights()) {
                nodes.push(mid + half * T::lit(x));
                weights.push(half * T::lit(w));
            }
        }
        Ok(Self { nodes, weights })
    }

    /// Uniform trapezoid on [0, 2π) with `points` nodes; exact for trigonometric
    /// polynomials of degree below `points`.
    pub fn periodic_trapezoid(points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidParameter {
                name: "points",
                reason: "periodic rule needs at least one point".into(),
            });
        }
        let h = T::TAU() / T::from_count(points);
        let nodes = (0..points).map(|i| h * T::from_count(i)).collect();
        Ok(Self {
            nodes,
            weights: vec![h; points],
        })
    }

    /// Trapezoid weights on a strictly increasing grid.
    pub fn trapezoid_on_grid(grid: &[T]) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: "trapezoid rule needs at least two points".into(),
            });
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: "grid must be strictly increasing".into(),
            });
        }
        let n = grid.len();
        let half = T::lit(0.5);
        let weights = (0..n)
            .map(|i| {
                let left = if i > 0 { grid[i] - grid[i - 1] } else { T::zero() };
                let right = if i + 1 < n { grid[i + 1] - grid[i] } else { T::zero() };
                half * (left + right)
            })
            .collect();
        Ok(Self {
            nodes: grid.to_vec(),
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Sum of weights, i.e. the measure of the domain.
    pub fn total_weight(&self) -> T {
        let mut acc = NeumaierSum::new();
        for &w in &self.weights {
            acc.add(w);
        }
        acc.value()
    }

    /// Largest distance between neighbouring nodes.
    pub fn max_spacing(&self) -> T {
        self.nodes.windows(2).map(|w| w[1] - w[0]).fold(T::zero(), T::max)
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        let mut acc = NeumaierSum::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(x));
        }
        acc.value()
    }

    pub fn integrate_complex<F: FnMut(T) -> Complex<T>>(&self, mut f: F) -> Complex<T> {
        let mut re = NeumaierSum::new();
        let mut im = NeumaierSum::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(x) * w;
            re.add(v.re);
            im.add(v.im);
        }
        Complex::new(re.value(), im.value())
    }
}
