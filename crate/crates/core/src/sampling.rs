//! Sample points, sampling domains and randomized zero testing.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::field::exact::{dyadic, Exact};
use crate::field::{ScalarField, Var};
use crate::scalar::Scalar;

/// A point in local coordinates `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Point3 { x, y, z }
    }

    pub fn coord(&self, v: Var) -> T {
        match v {
            Var::X => self.x,
            Var::Y => self.y,
            Var::Z => self.z,
        }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64_lossy(), self.y.to_f64_lossy(), self.z.to_f64_lossy()]
    }

    pub fn cast<U: Scalar>(&self) -> Point3<U> {
        let [x, y, z] = self.to_f64();
        Point3::new(U::lit(x), U::lit(y), U::lit(z))
    }
}

impl From<[f64; 3]> for Point3<f64> {
    fn from(a: [f64; 3]) -> Self {
        Point3::new(a[0], a[1], a[2])
    }
}

/// Closed coordinate interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

/// Coordinate box plus side conditions a sample point must satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub intervals: [Interval; 3],
    pub positive: Vec<ScalarField>,
    pub nonzero: Vec<ScalarField>,
}

/// Smallest magnitude accepted for a `nonzero` side condition.
const NONZERO_MARGIN: f64 = 1e-6;

impl Domain {
    pub fn new(x: Interval, y: Interval, z: Interval) -> Self {
        Domain { intervals: [x, y, z], positive: Vec::new(), nonzero: Vec::new() }
    }

    /// The box `[lo, hi]^3`.
    pub fn cube(lo: f64, hi: f64) -> Self {
        let i = Interval::new(lo, hi);
        Self::new(i, i, i)
    }

    pub fn require_positive(mut self, e: ScalarField) -> Self {
        self.positive.push(e);
        self
    }

    pub fn require_nonzero(mut self, e: ScalarField) -> Self {
        self.nonzero.push(e);
        self
    }

    pub fn contains(&self, p: &Point3<f64>) -> bool {
        p.to_f64().iter().zip(self.intervals.iter()).all(|(v, i)| i.contains(*v))
    }

    /// Whether `p` lies in the box and meets every side condition.
    pub fn admits(&self, p: &Point3<f64>) -> bool {
        self.contains(p)
            && self.positive.iter().all(|e| matches!(e.eval(p), Ok(v) if v > 0.0))
            && self.nonzero.iter().all(|e| matches!(e.eval(p), Ok(v) if v.abs() > NONZERO_MARGIN))
    }
}

/// Sampling parameters; the defaults are 64 points, seed 42, tolerance 1e-9.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig { samples: 64, seed: 42, tol: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SamplingError {
    NoSamples,
    NoValidPoint { attempts: usize, found: usize, wanted: usize },
}

impl fmt::Display for SamplingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplingError::NoSamples => write!(f, "sample count must be at least 1"),
            SamplingError::NoValidPoint { attempts, found, wanted } => {
                write!(f, "found only {found} of {wanted} admissible sample points after {attempts} attempts")
            }
        }
    }
}

impl std::error::Error for SamplingError {}

/// Deterministic admissible sample points of a domain.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub points: Vec<Point3<f64>>,
}

impl SampleSet {
    /// Draws `n` points uniformly from the box, rejecting points that fail
    /// the side conditions or at which any of `fields` cannot be evaluated.
    pub fn draw(domain: &Domain, n: usize, seed: u64, fields: &[&ScalarField]) -> Result<Self, SamplingError> {
        if n == 0 {
            return Err(SamplingError::NoSamples);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let budget = 50 * n + 1000;
        let mut points = Vec::with_capacity(n);
        let mut attempts = 0;
        while points.len() < n {
            if attempts == budget {
                return Err(SamplingError::NoValidPoint { attempts, found: points.len(), wanted: n });
            }
            attempts += 1;
            let mut c = [0.0; 3];
            for (k, iv) in domain.intervals.iter().enumerate() {
                c[k] = if iv.lo == iv.hi { iv.lo } else { rng.gen_range(iv.lo..=iv.hi) };
            }
            let p = Point3::from(c);
            if domain.admits(&p) && fields.iter().all(|e| e.eval_jet(&p, 3).is_ok()) {
                points.push(p);
            }
        }
        Ok(SampleSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A point where an identity failed, with the size of the failure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: [f64; 3],
    pub magnitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroVerdict {
    Zero,
    NonZero(Witness),
}

impl ZeroVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroVerdict::Zero)
    }

    pub fn witness(&self) -> Option<Witness> {
        match self {
            ZeroVerdict::Zero => None,
            ZeroVerdict::NonZero(w) => Some(*w),
        }
    }
}

/// Whether `|value| <= tol * (1 + scale)`.
pub fn within(value: f64, scale: f64, tol: f64) -> bool {
    value.is_finite() && value.abs() <= tol * (1.0 + scale.abs())
}

/// Tracks whether a family of pointwise residuals is zero, keeping the
/// worst offending point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals {
    tol: f64,
    worst: Option<Witness>,
    worst_ratio: f64,
    max_abs: f64,
}

impl Residuals {
    pub fn new(tol: f64) -> Self {
        Residuals { tol, worst: None, worst_ratio: 0.0, max_abs: 0.0 }
    }

    pub fn push(&mut self, p: &Point3<f64>, value: f64, scale: f64) {
        let mag = value.abs();
        if mag > self.max_abs || mag.is_nan() {
            self.max_abs = if mag.is_nan() { f64::INFINITY } else { mag };
        }
        if !within(value, scale, self.tol) {
            let ratio = if mag.is_finite() { mag / (1.0 + scale.abs()) } else { f64::INFINITY };
            if self.worst.is_none() || ratio > self.worst_ratio {
                self.worst_ratio = ratio;
                self.worst = Some(Witness { point: p.to_f64(), magnitude: if mag.is_nan() { f64::INFINITY } else { mag } });
            }
        }
    }

    pub fn verdict(&self) -> ZeroVerdict {
        match self.worst {
            None => ZeroVerdict::Zero,
            Some(w) => ZeroVerdict::NonZero(w),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.worst.is_none()
    }

    /// Largest absolute residual seen.
    pub fn max_abs(&self) -> f64 {
        self.max_abs
    }
}

/// Zero test on an explicit sample set. Points where `e` cannot be
/// evaluated count as failures.
pub fn zero_on(e: &ScalarField, samples: &SampleSet, tol: f64) -> ZeroVerdict {
    let mut acc = Residuals::new(tol);
    for p in &samples.points {
        match e.eval(p) {
            Ok(v) => {
                let (_, scale) = e.eval_scaled(p);
                acc.push(p, v, scale);
            }
            Err(_) => acc.push(p, f64::NAN, 0.0),
        }
    }
    acc.verdict()
}

/// Exact cross-check for rational expressions: `Some(true)` if `e` vanishes
/// exactly at every sample (rounded to a dyadic grid), `Some(false)` if it is
/// exactly nonzero somewhere, `None` when the exact route does not apply.
pub fn exact_zero_on(e: &ScalarField, samples: &SampleSet) -> Option<bool> {
    if !e.is_rational() {
        return None;
    }
    let mut any = false;
    for p in &samples.points {
        let q = p.to_f64().map(dyadic);
        match e.eval_exact(&q) {
            Exact::Value(v) => {
                any = true;
                if !num_traits::Zero::is_zero(&v) {
                    return Some(false);
                }
            }
            Exact::Undefined => {}
            Exact::NotRational => return None,
        }
    }
    any.then_some(true)
}

/// Randomized identically-zero test: ZERO when `|e(p)| <= tol (1 + scale(p))`
/// at every sample point, otherwise NONZERO with the worst point as witness.
pub fn is_identically_zero(e: &ScalarField, domain: &Domain, samples: usize, seed: u64, tol: f64) -> Result<ZeroVerdict, SamplingError> {
    let set = SampleSet::draw(domain, samples, seed, &[])?;
    Ok(zero_on(e, &set, tol))
}
