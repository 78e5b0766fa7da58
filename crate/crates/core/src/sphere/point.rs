use num_complex::Complex64;

/// Which stereographic coordinate a value is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    /// `z`, covering everything but ∞.
    Finite,
    /// `w = 1/z`, covering everything but 0.
    Inverted,
}

/// A point of the Riemann sphere ℂ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn new(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(*z),
            SpherePoint::Infinity => None,
        }
    }

    /// Coordinate in `chart`, `None` where the chart does not reach.
    pub fn coordinate(&self, chart: Chart) -> Option<Complex64> {
        match (self, chart) {
            (SpherePoint::Finite(z), Chart::Finite) => Some(*z),
            (SpherePoint::Infinity, Chart::Finite) => None,
            (SpherePoint::Finite(z), Chart::Inverted) => (*z != Complex64::new(0.0, 0.0)).then(|| z.inv()),
            (SpherePoint::Infinity, Chart::Inverted) => Some(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn from_coordinate(chart: Chart, c: Complex64) -> Self {
        match chart {
            Chart::Finite => SpherePoint::Finite(c),
            Chart::Inverted if c == Complex64::new(0.0, 0.0) => SpherePoint::Infinity,
            Chart::Inverted => SpherePoint::Finite(c.inv()),
        }
    }

    /// The chart in which the coordinate has modulus at most 1.
    pub fn preferred_chart(&self) -> Chart {
        match self {
            SpherePoint::Finite(z) if z.norm() <= 1.0 => Chart::Finite,
            _ => Chart::Inverted,
        }
    }

    /// Unit vector of the point on S² ⊂ ℝ³ (∞ is the north pole).
    pub fn unit_vector(&self) -> [f64; 3] {
        match self {
            SpherePoint::Infinity => [0.0, 0.0, 1.0],
            SpherePoint::Finite(z) => {
                let n = z.norm_sqr();
                [2.0 * z.re / (1.0 + n), 2.0 * z.im / (1.0 + n), (n - 1.0) / (1.0 + n)]
            }
        }
    }

    /// Chordal distance on the unit sphere.
    pub fn chordal(&self, other: &SpherePoint) -> f64 {
        (4.0 * chordal_ratio(self, other)).sqrt()
    }
}

/// `|x−y|² / ((1+|x|²)(1+|y|²))`, one quarter of the squared chordal distance.
pub fn chordal_ratio(x: &SpherePoint, y: &SpherePoint) -> f64 {
    match (x, y) {
        (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
            (*a - *b).norm_sqr() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr()))
        }
        (SpherePoint::Finite(a), SpherePoint::Infinity) | (SpherePoint::Infinity, SpherePoint::Finite(a)) => {
            1.0 / (1.0 + a.norm_sqr())
        }
        (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
    }
}

/// `log` of [`chordal_ratio`], evaluated so that swapping the arguments gives
/// a bitwise identical result. `None` on the diagonal.
pub fn chordal_log(x: &SpherePoint, y: &SpherePoint) -> Option<f64> {
    match (x, y) {
        (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
            let d = (*a - *b).norm_sqr();
            (d > 0.0).then(|| d.ln() - (a.norm_sqr().ln_1p() + b.norm_sqr().ln_1p()))
        }
        (SpherePoint::Finite(a), SpherePoint::Infinity) | (SpherePoint::Infinity, SpherePoint::Finite(a)) => {
            Some(-a.norm_sqr().ln_1p())
        }
        (SpherePoint::Infinity, SpherePoint::Infinity) => None,
    }
}

/// Same quantity computed from coordinates in one chart. The expression is
/// invariant under `z ↦ 1/z`, so both charts agree on the overlap.
pub fn chordal_log_in_chart(x: &SpherePoint, y: &SpherePoint, chart: Chart) -> Option<f64> {
    let (a, b) = (x.coordinate(chart)?, y.coordinate(chart)?);
    let d = (a - b).norm_sqr();
    (d > 0.0).then(|| d.ln() - (a.norm_sqr().ln_1p() + b.norm_sqr().ln_1p()))
}

/// `∂/∂x` of `chordal_log(x, y)` at a finite `x`.
pub fn chordal_log_dz(x: Complex64, y: &SpherePoint) -> Complex64 {
    let tail = -x.conj() / (1.0 + x.norm_sqr());
    match y {
        SpherePoint::Finite(b) => (x - *b).inv() + tail,
        SpherePoint::Infinity => tail,
    }
}
