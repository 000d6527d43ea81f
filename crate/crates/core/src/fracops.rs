//! Left and right Riemann–Liouville derivatives on uniform grids.
//!
//! Derivatives use the unshifted Grünwald–Letnikov convolution
//!
//! ```text
//! left:  D_i = h^-α Σ_{k=0}^{i}   w_k f(x_{i-k})
//! right: D_i = h^-α Σ_{k=0}^{n-i} w_k f(x_{i+k})
//! ```
//!
//! which is first-order accurate for smooth `f` vanishing at the base point.
//! The continuous operator is generally unbounded at its base point, so the
//! base node (node 0 for the left operator, node n for the right one) is
//! filled with its neighbour's value. For α = 1 the left operator is the
//! backward difference and the right operator is minus the forward difference.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::specfun::{check_order, gamma, gl_weights};

/// Uniform partition of `[a, b]` into `n` intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    n: usize,
    h: f64,
}

impl Grid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Grid(format!("need finite a < b, got a = {a}, b = {b}")));
        }
        if n < 2 {
            return Err(Error::Grid(format!("need at least 2 intervals, got {n}")));
        }
        Ok(Grid { a, b, n, h: (b - a) / n as f64 })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Number of intervals.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, i: usize) -> f64 {
        if i == self.n {
            self.b
        } else {
            self.a + i as f64 * self.h
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n).map(|i| self.node(i))
    }

    /// Index of the node at `x`, if `x` falls on the grid.
    pub fn node_index(&self, x: f64) -> Option<usize> {
        let t = (x - self.a) / self.h;
        let i = t.round();
        if i < 0.0 || i > self.n as f64 || (t - i).abs() > 1e-9 {
            return None;
        }
        Some(i as usize)
    }

    /// The grid restricted to nodes `first..=last`, keeping this grid's step.
    pub fn subgrid(&self, first: usize, last: usize) -> Result<Grid> {
        if last > self.n || last < first + 2 {
            return Err(Error::SubgridAlignment(format!(
                "subgrid {first}..={last} of a {}-interval grid needs at least 2 intervals",
                self.n
            )));
        }
        Ok(Grid { a: self.node(first), b: self.node(last), n: last - first, h: self.h })
    }
}

/// Real values at the nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Grid(format!("{} values supplied for a grid with {} nodes", values.len(), grid.len())));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Grid(format!("non-finite value {} at node {i}", values[i])));
        }
        Ok(SampledFunction { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.nodes().map(f).collect())
    }

    pub fn zeros(grid: Grid) -> Self {
        SampledFunction { grid, values: vec![0.0; grid.len()] }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Restriction to nodes `first..=last`.
    pub fn restrict(&self, first: usize, last: usize) -> Result<SampledFunction> {
        let grid = self.grid.subgrid(first, last)?;
        Ok(SampledFunction { grid, values: self.values[first..=last].to_vec() })
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<SampledFunction> {
        Self::new(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    /// `mu * self + nu * other` on a shared grid.
    pub fn combine(&self, mu: f64, other: &SampledFunction, nu: f64) -> Result<SampledFunction> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("combining functions on different grids".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(f, g)| mu * f + nu * g).collect();
        Self::new(self.grid, values)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl std::ops::Index<usize> for SampledFunction {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Which end of the interval an operator is anchored at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `ₐDₓ^α`, memory of the past.
    Left,
    /// `ₓD_b^α`, memory of the future.
    Right,
}

/// The Grünwald–Letnikov operator as a linear map on node values, with its
/// transpose and its dense matrix. `left_rl` and `right_rl` apply it to a
/// sampled function; the solver assembles gradients and Hessians from it.
#[derive(Debug, Clone)]
pub struct FracOperator {
    side: Side,
    alpha: f64,
    n: usize,
    h: f64,
    scale: f64,
    weights: Vec<f64>,
}

impl FracOperator {
    pub fn new(side: Side, alpha: f64, grid: &Grid) -> Result<Self> {
        check_order(op_name(side), alpha)?;
        let weights = gl_weights(alpha, grid.n())?.weights().to_vec();
        Ok(FracOperator { side, alpha, n: grid.n(), h: grid.h(), scale: grid.h().powf(-alpha), weights })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn is_first_difference(&self) -> bool {
        self.alpha == 1.0
    }

    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        let n = self.n;
        assert_eq!(f.len(), n + 1, "operator applied to a vector of the wrong length");
        let mut out = vec![0.0; n + 1];
        match self.side {
            Side::Left => {
                for i in 1..=n {
                    out[i] = if self.is_first_difference() {
                        (f[i] - f[i - 1]) / self.h
                    } else {
                        let s: f64 = (0..=i).map(|k| self.weights[k] * f[i - k]).sum();
                        self.scale * s
                    };
                }
                out[0] = out[1];
            }
            Side::Right => {
                for i in 0..n {
                    out[i] = if self.is_first_difference() {
                        (f[i] - f[i + 1]) / self.h
                    } else {
                        let s: f64 = (0..=n - i).map(|k| self.weights[k] * f[i + k]).sum();
                        self.scale * s
                    };
                }
                out[n] = out[n - 1];
            }
        }
        out
    }

    /// Entry `(i, j)` of the operator matrix.
    fn entry(&self, i: usize, j: usize) -> f64 {
        let n = self.n;
        match self.side {
            Side::Left => {
                let row = i.max(1);
                if j > row {
                    0.0
                } else {
                    self.scale * self.weights[row - j]
                }
            }
            Side::Right => {
                let row = i.min(n - 1);
                if j < row {
                    0.0
                } else {
                    self.scale * self.weights[j - row]
                }
            }
        }
    }

    /// Transposed operator applied to `z`.
    pub fn apply_transpose(&self, z: &[f64]) -> Vec<f64> {
        let n = self.n;
        assert_eq!(z.len(), n + 1, "operator applied to a vector of the wrong length");
        let w = &self.weights;
        let mut out = vec![0.0; n + 1];
        match self.side {
            Side::Left => {
                // Rows 1..=n are the convolution; row 0 duplicates row 1.
                for (j, o) in out.iter_mut().enumerate() {
                    let s: f64 = (j.max(1)..=n).map(|i| w[i - j] * z[i]).sum();
                    let dup = if j <= 1 { w[1 - j] * z[0] } else { 0.0 };
                    *o = self.scale * (s + dup);
                }
            }
            Side::Right => {
                for (j, o) in out.iter_mut().enumerate() {
                    let s: f64 = (0..=j.min(n - 1)).map(|i| w[j - i] * z[i]).sum();
                    let dup = if j >= n - 1 { w[j - (n - 1)] * z[n] } else { 0.0 };
                    *o = self.scale * (s + dup);
                }
            }
        }
        out
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n + 1, self.n + 1, |i, j| self.entry(i, j))
    }
}

fn op_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left_rl",
        Side::Right => "right_rl",
    }
}

/// Left Riemann–Liouville derivative `ₐDₓ^α f` of order `alpha ∈ (0, 1]`.
///
/// Accuracy near `x = a` requires `f(a) = 0`; otherwise the continuous
/// derivative is unbounded there and the grid values only mimic it.
pub fn left_rl(f: &SampledFunction, alpha: f64) -> Result<SampledFunction> {
    let op = FracOperator::new(Side::Left, alpha, f.grid())?;
    Ok(SampledFunction { grid: *f.grid(), values: op.apply(f.values()) })
}

/// Right Riemann–Liouville derivative `ₓD_b^α f` of order `alpha ∈ (0, 1]`.
pub fn right_rl(f: &SampledFunction, alpha: f64) -> Result<SampledFunction> {
    let op = FracOperator::new(Side::Right, alpha, f.grid())?;
    Ok(SampledFunction { grid: *f.grid(), values: op.apply(f.values()) })
}

/// Apply one of the two derivatives by side.
pub fn rl_derivative(f: &SampledFunction, alpha: f64, side: Side) -> Result<SampledFunction> {
    match side {
        Side::Left => left_rl(f, alpha),
        Side::Right => right_rl(f, alpha),
    }
}

/// Closed form `ₐDₓ^α (x - a)^p = Γ(p+1)/Γ(p+1-α) (x - a)^(p-α)`.
pub fn power_rule_left(p: f64, alpha: f64, a: f64, x: f64) -> Result<f64> {
    power_rule(p, alpha, x - a)
}

/// Closed form `ₓD_b^α (b - x)^p = Γ(p+1)/Γ(p+1-α) (b - x)^(p-α)`.
pub fn power_rule_right(p: f64, alpha: f64, b: f64, x: f64) -> Result<f64> {
    power_rule(p, alpha, b - x)
}

fn power_rule(p: f64, alpha: f64, dist: f64) -> Result<f64> {
    check_order("power_rule", alpha)?;
    if !(p > -1.0) || !(p - alpha > -1.0) {
        return Err(Error::domain(
            "power_rule",
            format!("need p > -1 and p - alpha > -1, got p = {p}, alpha = {alpha}"),
        ));
    }
    if dist < 0.0 {
        return Err(Error::domain("power_rule", "evaluation point lies outside the interval"));
    }
    if dist == 0.0 && p - alpha < 0.0 {
        return Err(Error::domain("power_rule", "derivative is unbounded at the base point"));
    }
    let coef = gamma(p + 1.0)? / gamma(p + 1.0 - alpha)?;
    let power = if p - alpha == 0.0 { 1.0 } else { dist.powf(p - alpha) };
    Ok(coef * power)
}

/// Left Riemann–Liouville integral of order `1 - alpha`, the inner integral
/// of the derivative definition, by product trapezoidal quadrature (exact for
/// piecewise-linear `f`).
pub fn frac_integral_left(f: &SampledFunction, alpha: f64) -> Result<SampledFunction> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain("frac_integral_left", format!("order must lie in (0, 1), got {alpha}")));
    }
    let mu = 1.0 - alpha;
    let grid = *f.grid();
    let fv = f.values();
    let c = grid.h().powf(mu) / gamma(mu + 2.0)?;
    let p = |k: usize| (k as f64).powf(mu + 1.0);
    let mut out = vec![0.0; grid.len()];
    for (i, o) in out.iter_mut().enumerate().skip(1) {
        let fi = i as f64;
        let mut s = (p(i - 1) - (fi - 1.0 - mu) * fi.powf(mu)) * fv[0];
        for (j, fj) in fv.iter().enumerate().take(i).skip(1) {
            let d = i - j;
            s += (p(d + 1) - 2.0 * p(d) + p(d - 1)) * fj;
        }
        s += fv[i];
        *o = c * s;
    }
    SampledFunction::new(grid, out)
}

/// Trapezoid weights for integrating over nodes `first..=last`, zero elsewhere.
pub fn trapezoid_weights(grid: &Grid, first: usize, last: usize) -> Vec<f64> {
    let h = grid.h();
    let mut w = vec![0.0; grid.len()];
    for wi in &mut w[first..=last] {
        *wi = h;
    }
    w[first] = 0.5 * h;
    w[last] = 0.5 * h;
    w
}

/// Composite trapezoid rule over the whole grid.
pub fn integrate(f: &SampledFunction) -> f64 {
    let v = f.values();
    let h = f.grid().h();
    v.windows(2).map(|p| 0.5 * h * (p[0] + p[1])).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize) -> Grid {
        Grid::new(0.0, 1.0, n).unwrap()
    }

    #[test]
    fn grid_invariants() {
        let g = Grid::new(-1.0, 3.0, 8).unwrap();
        assert_eq!(g.h(), 0.5);
        assert_eq!(g.len(), 9);
        assert_eq!(g.node(8), 3.0);
        assert_eq!(g.node_index(0.5), Some(3));
        assert_eq!(g.node_index(0.6), None);
        assert!(Grid::new(1.0, 1.0, 4).is_err());
        assert!(Grid::new(0.0, 1.0, 1).is_err());
        let s = g.subgrid(2, 6).unwrap();
        assert_eq!((s.a(), s.b(), s.n(), s.h()), (0.0, 2.0, 4, 0.5));
        assert!(g.subgrid(3, 4).is_err());
    }

    #[test]
    fn sampled_function_rejects_bad_input() {
        let g = unit(4);
        assert!(SampledFunction::new(g, vec![0.0; 4]).is_err());
        assert!(SampledFunction::new(g, vec![0.0, 1.0, f64::NAN, 0.0, 0.0]).is_err());
    }

    #[test]
    fn left_half_derivative_of_identity_at_one() {
        let g = unit(4096);
        let f = SampledFunction::from_fn(g, |x| x).unwrap();
        let d = left_rl(&f, 0.5).unwrap();
        let exact = 2.0 / std::f64::consts::PI.sqrt();
        assert!((d[4096] - exact).abs() < 1e-3, "{}", d[4096]);
    }

    #[test]
    fn left_derivative_of_power_alpha_is_constant() {
        for alpha in [0.3, 0.5, 0.7] {
            let g = unit(1024);
            let f = SampledFunction::from_fn(g, |x| x.powf(alpha)).unwrap();
            let d = left_rl(&f, alpha).unwrap();
            let want = gamma(alpha + 1.0).unwrap();
            // The GL error of x^α decays like i^-(1+α) away from the left end.
            for i in 100..=1024 {
                assert!((d[i] - want).abs() < 2e-3 * want, "alpha={alpha} i={i}: {}", d[i]);
            }
        }
    }

    #[test]
    fn derivatives_are_linear() {
        let g = unit(200);
        let f1 = SampledFunction::from_fn(g, |x| x * x).unwrap();
        let f2 = SampledFunction::from_fn(g, |x| (3.0 * x).sin()).unwrap();
        let (mu, nu) = (1.5, -0.25);
        let mix = f1.combine(mu, &f2, nu).unwrap();
        for side in [Side::Left, Side::Right] {
            let d = rl_derivative(&mix, 0.6, side).unwrap();
            let parts = rl_derivative(&f1, 0.6, side)
                .unwrap()
                .combine(mu, &rl_derivative(&f2, 0.6, side).unwrap(), nu)
                .unwrap();
            for i in 0..=200 {
                assert!((d[i] - parts[i]).abs() <= 1e-12 * (1.0 + d[i].abs()));
            }
        }
    }

    #[test]
    fn right_half_derivative_of_reflected_identity() {
        let g = unit(4096);
        let f = SampledFunction::from_fn(g, |x| 1.0 - x).unwrap();
        let d = right_rl(&f, 0.5).unwrap();
        assert!((d[0] - 2.0 / std::f64::consts::PI.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn right_first_order_derivative_of_constant_vanishes() {
        let g = unit(16);
        let f = SampledFunction::from_fn(g, |_| 4.25).unwrap();
        assert!(right_rl(&f, 1.0).unwrap().values().iter().all(|&v| v == 0.0));
        assert!(left_rl(&f, 1.0).unwrap().values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn right_derivative_finite_when_vanishing_at_b() {
        let g = unit(512);
        let f = SampledFunction::from_fn(g, |x| x * (1.0 - x)).unwrap();
        let d = right_rl(&f, 0.5).unwrap();
        assert!(d.values().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn first_order_is_backward_difference() {
        let g = unit(10);
        let f = SampledFunction::from_fn(g, |x| x.exp()).unwrap();
        let d = left_rl(&f, 1.0).unwrap();
        for i in 1..=10 {
            assert_eq!(d[i], (f[i] - f[i - 1]) / g.h());
        }
        assert_eq!(d[0], d[1]);
        let r = right_rl(&f, 1.0).unwrap();
        for i in 0..10 {
            assert_eq!(r[i], -(f[i + 1] - f[i]) / g.h());
        }
    }

    #[test]
    fn mirror_symmetry() {
        let g = Grid::new(-0.5, 2.0, 300).unwrap();
        let f = SampledFunction::from_fn(g, |x| (x + 0.5).powi(2) * (2.0 - x).cos()).unwrap();
        let reflected = SampledFunction::new(g, f.values().iter().rev().copied().collect()).unwrap();
        for alpha in [0.2, 0.5, 0.9, 1.0] {
            let r = right_rl(&f, alpha).unwrap();
            let l = left_rl(&reflected, alpha).unwrap();
            for i in 0..=300 {
                let back = l[300 - i];
                assert!((r[i] - back).abs() <= 1e-12 * (1.0 + back.abs()), "alpha={alpha} i={i}");
            }
        }
    }

    #[test]
    fn transpose_matches_dense_matrix() {
        let g = unit(9);
        let z: Vec<f64> = (0..10).map(|i| (i as f64 * 0.7).sin() + 0.1).collect();
        for side in [Side::Left, Side::Right] {
            for alpha in [0.4, 1.0] {
                let op = FracOperator::new(side, alpha, &g).unwrap();
                let m = op.matrix();
                let zv = nalgebra::DVector::from_vec(z.clone());
                let direct = &m * &zv;
                let trans = m.transpose() * &zv;
                let applied = op.apply(&z);
                let applied_t = op.apply_transpose(&z);
                for i in 0..10 {
                    assert!((direct[i] - applied[i]).abs() < 1e-12);
                    assert!((trans[i] - applied_t[i]).abs() < 1e-12, "{side:?} {alpha} {i}");
                }
            }
        }
    }

    #[test]
    fn power_rule_values() {
        assert!((power_rule_left(1.0, 1.0, 0.0, 7.0).unwrap() - 1.0).abs() < 1e-15);
        let v = power_rule_left(0.5, 0.5, 0.0, 0.3).unwrap();
        assert!((v - 0.886_226_925_452_758).abs() < 1e-12);
        // (x^(α+2)) gives Γ(α+3)/Γ(3) x², so 2x^(α+2)/Γ(α+3) has derivative x².
        let alpha = 0.37;
        let x = 0.8;
        let d = 2.0 / gamma(alpha + 3.0).unwrap() * power_rule_left(alpha + 2.0, alpha, 0.0, x).unwrap();
        assert!((d - x * x).abs() < 1e-14);
        assert!(power_rule_left(-1.5, 0.5, 0.0, 1.0).is_err());
        assert!(power_rule_left(0.2, 0.5, 0.0, 0.0).is_err());
        assert!(power_rule_left(1.0, 0.5, 1.0, 0.0).is_err());
    }

    #[test]
    fn fractional_integral_cases() {
        let g = unit(64);
        let zero = SampledFunction::zeros(g);
        assert!(frac_integral_left(&zero, 0.5).unwrap().values().iter().all(|&v| v == 0.0));

        // Exact for piecewise-linear data: I^{1/2} x = x^{3/2}/Γ(5/2).
        let f = SampledFunction::from_fn(g, |x| x).unwrap();
        let i = frac_integral_left(&f, 0.5).unwrap();
        assert!((i[64] - 0.752_252_778_063_675).abs() < 1e-12);
        for k in 0..=64 {
            let want = g.node(k).powf(1.5) / gamma(2.5).unwrap();
            assert!((i[k] - want).abs() < 1e-13);
        }
        assert!(frac_integral_left(&f, 1.0).is_err());
    }

    #[test]
    fn derivative_is_derivative_of_fractional_integral() {
        let g = unit(1024);
        let f = SampledFunction::from_fn(g, |x| x * x).unwrap();
        let alpha = 0.5;
        let inner = frac_integral_left(&f, alpha).unwrap();
        let outer = left_rl(&inner, 1.0).unwrap();
        let d = left_rl(&f, alpha).unwrap();
        for i in 10..=1024 {
            assert!((outer[i] - d[i]).abs() < 5e-3, "i={i}");
        }
    }

    #[test]
    fn trapezoid_cases() {
        let f = SampledFunction::from_fn(unit(2), |x| x * x).unwrap();
        assert!((integrate(&f) - 0.375).abs() < 1e-15);
        assert_eq!(integrate(&SampledFunction::zeros(unit(8))), 0.0);
        let f = SampledFunction::from_fn(unit(2048), |x| 2.0 * x.powi(4)).unwrap();
        assert!((integrate(&f) - 0.4).abs() < 1e-6);
        let w = trapezoid_weights(&unit(4), 1, 3);
        assert_eq!(w, vec![0.0, 0.125, 0.25, 0.125, 0.0]);
    }
}
