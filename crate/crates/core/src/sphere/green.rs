use num_complex::Complex64;

use super::point::{chordal_log, chordal_log_dz, chordal_log_in_chart, Chart, SpherePoint};
use super::SphereError;

/// `G_a(x, y) = κ·(L(x,y) − L(x,a) − L(y,a)) + offset` with `L` the log of
/// [`super::point::chordal_ratio`].
///
/// With `κ = 1` and `offset = 0` this solves `(2πi)⁻¹∂̄∂G = δ_Δ − P_Har` for
/// `P_Har = δ_a⊗1 + 1⊗δ_a`; the constants are certified by
/// [`super::green_pde_residual`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenKernel {
    pub base: SpherePoint,
    pub scale: f64,
    pub offset: f64,
}

impl GreenKernel {
    pub const SCALE: f64 = 1.0;
    pub const OFFSET: f64 = 0.0;

    pub fn new(base: SpherePoint) -> Self {
        GreenKernel { base, scale: Self::SCALE, offset: Self::OFFSET }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    fn singular(&self, x: &SpherePoint, y: &SpherePoint) -> SphereError {
        SphereError::Singular(format!("G at x={x:?}, y={y:?}, a={:?}", self.base))
    }

    pub fn eval(&self, x: &SpherePoint, y: &SpherePoint) -> Result<f64, SphereError> {
        let a = &self.base;
        let l = |p: &SpherePoint, q: &SpherePoint| chordal_log(p, q).ok_or_else(|| self.singular(x, y));
        let (lxy, lxa, lya) = (l(x, y)?, l(x, a)?, l(y, a)?);
        Ok(self.scale * (lxy - (lxa + lya)) + self.offset)
    }

    /// Same value computed from the coordinates of one chart only.
    pub fn eval_in_chart(&self, x: &SpherePoint, y: &SpherePoint, chart: Chart) -> Result<f64, SphereError> {
        let a = &self.base;
        let l = |p: &SpherePoint, q: &SpherePoint| chordal_log_in_chart(p, q, chart).ok_or_else(|| self.singular(x, y));
        let (lxy, lxa, lya) = (l(x, y)?, l(x, a)?, l(y, a)?);
        Ok(self.scale * (lxy - (lxa + lya)) + self.offset)
    }

    /// `∂G/∂x` at a finite `x`; `∂G/∂x̄` is its conjugate since `G` is real.
    pub fn dz_first(&self, x: Complex64, y: &SpherePoint) -> Complex64 {
        (chordal_log_dz(x, y) - chordal_log_dz(x, &self.base)) * self.scale
    }
}

/// [`GreenKernel::eval`] as a free function.
pub fn green_eval(kernel: &GreenKernel, x: &SpherePoint, y: &SpherePoint) -> Result<f64, SphereError> {
    kernel.eval(x, y)
}
