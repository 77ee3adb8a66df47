use std::ops::{Add, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest accepted number of grid points.
pub const MIN_POINTS: usize = 64;
/// `|int |psi|^2 dx - 1|` allowed for a normalized grid function.
pub const GRID_NORM_TOL: f64 = 1e-8;

/// Uniform grid on `[-x_max, x_max]` including both end points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    x_max: f64,
    spacing: f64,
}

pub fn make_grid(n: usize, x_max: f64) -> Result<Grid> {
    if n < MIN_POINTS {
        return Err(Error::InvalidGrid(format!(
            "need at least {MIN_POINTS} points, got {n}"
        )));
    }
    if !(x_max.is_finite() && x_max > 0.0) {
        return Err(Error::InvalidGrid(format!("x_max must be positive, got {x_max}")));
    }
    Ok(Grid {
        n,
        x_max,
        spacing: 2.0 * x_max / (n - 1) as f64,
    })
}

// x_i = x_max (2i - (n-1)) / (n-1); exactly antisymmetric under i -> n-1-i
fn point(n: usize, x_max: f64, i: usize) -> f64 {
    let num = 2.0 * i as f64 - (n - 1) as f64;
    x_max * num / (n - 1) as f64
}

impl Grid {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn x(&self, i: usize) -> f64 {
        point(self.n, self.x_max, i)
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.x(i))
    }

    /// Same span, `factor` times as many intervals.
    pub fn refined(&self, factor: usize) -> Result<Grid> {
        make_grid((self.n - 1) * factor + 1, self.x_max)
    }
}

/// Complex samples of a function on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridWaveFunction {
    grid: Grid,
    samples: Vec<Complex64>,
}

impl GridWaveFunction {
    pub fn new(grid: Grid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.n() {
            return Err(Error::DimensionMismatch(grid.n(), samples.len()));
        }
        if let Some(i) = samples.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, samples })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = grid.points().map(f).collect();
        Self { grid, samples }
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Self {
        let samples = self
            .grid
            .points()
            .zip(&self.samples)
            .map(|(x, &z)| f(x, z))
            .collect();
        Self {
            grid: self.grid,
            samples,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|_, z| z * s)
    }

    /// Pointwise product, conjugating `self`.
    pub fn conj_mul(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a.conj() * b)
            .collect();
        Ok(Self {
            grid: self.grid,
            samples,
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn edge_abs(&self) -> f64 {
        let first = self.samples.first().map_or(0.0, |z| z.norm());
        let last = self.samples.last().map_or(0.0, |z| z.norm());
        first.max(last)
    }

    /// `max_i |self_i - other_i|`.
    pub fn sup_distance(&self, other: &Self) -> Result<f64> {
        self.check_grid(other)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn check_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }
}

impl<'a> Add<&'a GridWaveFunction> for &'a GridWaveFunction {
    type Output = GridWaveFunction;
    fn add(self, rhs: &'a GridWaveFunction) -> GridWaveFunction {
        assert_eq!(self.grid, rhs.grid, "grid mismatch in addition");
        let samples = self.samples.iter().zip(&rhs.samples).map(|(a, b)| a + b).collect();
        GridWaveFunction {
            grid: self.grid,
            samples,
        }
    }
}

impl<'a> Sub<&'a GridWaveFunction> for &'a GridWaveFunction {
    type Output = GridWaveFunction;
    fn sub(self, rhs: &'a GridWaveFunction) -> GridWaveFunction {
        assert_eq!(self.grid, rhs.grid, "grid mismatch in subtraction");
        let samples = self.samples.iter().zip(&rhs.samples).map(|(a, b)| a - b).collect();
        GridWaveFunction {
            grid: self.grid,
            samples,
        }
    }
}
