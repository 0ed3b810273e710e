//! The measure side: digit-set mask, transform evaluation as a truncated
//! infinite product with a certified tail bound, attractor point clouds,
//! level measures, zero-set explanation, similarity dimension and rendering.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::cyclo;
use crate::error::{Error, Result};
use crate::ratio::{self, Rational};
use crate::ratlat::{RatMatrix, RatVector};
use crate::system;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn unit_phase(exponent: f64) -> Complex64 {
    let th = TWO_PI * exponent;
    Complex64::new(th.cos(), th.sin())
}

/// Normalized exponential sum over the digit set:
/// `mask(t) = |B|^{-1} sum_b exp(2 pi i b.t)`.
#[derive(Clone, Debug)]
pub struct MaskEvaluator {
    b: Vec<RatVector>,
    b_f64: Vec<Vec<f64>>,
}

impl MaskEvaluator {
    pub fn new(b: &[RatVector]) -> Self {
        Self {
            b: b.to_vec(),
            b_f64: b.iter().map(RatVector::to_f64).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    pub fn digits(&self) -> &[RatVector] {
        &self.b
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        let mut acc = Complex64::zero();
        for b in &self.b_f64 {
            let dot: f64 = b.iter().zip(t).map(|(x, y)| x * y).sum();
            acc += unit_phase(dot);
        }
        acc / self.b.len() as f64
    }

    pub fn eval_rational(&self, t: &RatVector) -> Complex64 {
        let mut acc = Complex64::zero();
        for e in self.exponents(t) {
            acc += unit_phase(ratio::to_f64(&e));
        }
        acc / self.b.len() as f64
    }

    /// Phase exponents `frac(b.t)`, one per digit.
    pub fn exponents(&self, t: &RatVector) -> Vec<Rational> {
        self.b.iter().map(|b| ratio::frac_mod_1(&b.dot(t))).collect()
    }

    /// Exact root test: does the phase sum vanish as a cyclotomic integer?
    pub fn is_exact_root(&self, t: &RatVector) -> bool {
        cyclo::phases_sum_to_zero(&self.exponents(t))
    }

    /// Exact test for `mask(t) = 1`: every digit pairing is integral.
    pub fn is_exactly_one(&self, t: &RatVector) -> bool {
        self.exponents(t).iter().all(Zero::is_zero)
    }

    /// Largest 1-norm over the digits, exact.
    pub fn max_digit_norm1(&self) -> Rational {
        self.b
            .iter()
            .map(|b| -> Rational { b.iter().map(|e| e.abs()).sum() })
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// One evaluation of the transform.
#[derive(Clone, Copy, Debug)]
pub struct MuHatValue {
    pub value: Complex64,
    /// Bound on `|true - value|` from the truncation tail.
    pub bound: f64,
    /// Set when a factor of the product vanished exactly in the cyclotomic
    /// integers; the returned value is then exactly zero.
    pub exact_zero: bool,
    /// Depth at which the evaluation stopped.
    pub depth: usize,
}

/// Truncated-infinite-product evaluator of the transform, with a certified
/// tail bound `|muhat(s) - 1| <= C ||s||_inf` on the discarded factor.
#[derive(Clone, Debug)]
pub struct MuHatEvaluator {
    mask: MaskEvaluator,
    rstar_inv: RatMatrix,
    rstar_inv_f64: Vec<Vec<f64>>,
    eps_stop: f64,
    max_depth: usize,
    tail_constant: f64,
}

pub const DEFAULT_EPS_STOP: f64 = 1e-9;
pub const DEFAULT_MAX_DEPTH: usize = 256;

impl MuHatEvaluator {
    pub fn new(r: &RatMatrix, b: &[RatVector]) -> Result<Self> {
        let exp = system::expansivity(r)?;
        if !exp.expansive {
            return Err(Error::NotExpansive);
        }
        let rstar_inv = r
            .transpose()
            .inverse()
            .map_err(|_| Error::SingularMatrix)?;
        let mask = MaskEvaluator::new(b);
        let tail_constant = tail_constant(&rstar_inv, &mask)?;
        Ok(Self {
            rstar_inv_f64: rstar_inv.to_f64(),
            rstar_inv,
            mask,
            eps_stop: DEFAULT_EPS_STOP,
            max_depth: DEFAULT_MAX_DEPTH,
            tail_constant,
        })
    }

    pub fn with_params(mut self, eps_stop: f64, max_depth: usize) -> Self {
        assert!(eps_stop > 0.0 && max_depth > 0);
        self.eps_stop = eps_stop;
        self.max_depth = max_depth;
        self
    }

    pub fn mask(&self) -> &MaskEvaluator {
        &self.mask
    }

    pub fn rstar_inv(&self) -> &RatMatrix {
        &self.rstar_inv
    }

    pub fn tail_constant(&self) -> f64 {
        self.tail_constant
    }

    /// Floating-point evaluation along the contraction orbit.
    pub fn eval(&self, t: &[f64]) -> MuHatValue {
        let mut s = t.to_vec();
        let mut value = Complex64::one();
        let mut depth = 0;
        while depth < self.max_depth {
            let norm = s.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if norm <= self.eps_stop {
                break;
            }
            value *= self.mask.eval(&s);
            s = apply_f64(&self.rstar_inv_f64, &s);
            depth += 1;
        }
        let norm = s.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        MuHatValue {
            value,
            bound: value.norm() * self.tail_constant * norm + f64::EPSILON * depth as f64,
            exact_zero: false,
            depth,
        }
    }

    /// Exact-orbit evaluation: detects exact product roots in the
    /// cyclotomic integers and then reports a true zero with zero bound.
    pub fn eval_rational(&self, t: &RatVector) -> MuHatValue {
        let mut s = t.clone();
        let mut value = Complex64::one();
        let mut depth = 0;
        while depth < self.max_depth {
            let norm = ratio::to_f64(&s.norm_inf());
            if norm <= self.eps_stop {
                break;
            }
            let exponents = self.mask.exponents(&s);
            if cyclo::phases_sum_to_zero(&exponents) {
                return MuHatValue {
                    value: Complex64::zero(),
                    bound: 0.0,
                    exact_zero: true,
                    depth,
                };
            }
            let mut factor = Complex64::zero();
            for e in &exponents {
                factor += unit_phase(ratio::to_f64(e));
            }
            value *= factor / self.mask.order() as f64;
            s = self.rstar_inv.matvec(&s);
            depth += 1;
        }
        let norm = ratio::to_f64(&s.norm_inf());
        MuHatValue {
            value,
            bound: value.norm() * self.tail_constant * norm + f64::EPSILON * depth as f64,
            exact_zero: false,
            depth,
        }
    }

    /// `<e_s, e_t> = muhat(t - s)` for rational frequencies.
    pub fn inner_product(&self, s: &RatVector, t: &RatVector) -> MuHatValue {
        self.eval_rational(&t.sub(s))
    }

    /// Least depth `j` with `|mask((R*)^{-j} t)| < zero_tol`, if any. Stops
    /// early once the orbit is so small that the mask can no longer vanish.
    pub fn explain_zero(&self, t: &RatVector, zero_tol: f64) -> Option<usize> {
        let mut s = t.clone();
        let cushion = ratio::to_f64(&self.mask.max_digit_norm1()) * TWO_PI;
        for depth in 0..self.max_depth {
            let m = self.mask.eval_rational(&s).norm();
            if m < zero_tol {
                return Some(depth);
            }
            // |mask(s) - 1| <= 2 pi max|b|_1 ||s||_inf: once below 1/2 the
            // remaining factors are bounded away from zero
            if cushion * ratio::to_f64(&s.norm_inf()) < 0.5 {
                return None;
            }
            s = self.rstar_inv.matvec(&s);
        }
        None
    }
}

pub const DEFAULT_ZERO_TOL: f64 = 1e-8;

fn apply_f64(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// `C` such that `|muhat(s) - 1| <= C ||s||_inf`, from the geometric decay
/// of the orbit norms. Uses the smallest power of the contraction whose
/// exact induced max-norm drops below 1.
fn tail_constant(rstar_inv: &RatMatrix, mask: &MaskEvaluator) -> Result<f64> {
    let one = Rational::one();
    let mut partial = Rational::zero();
    let mut power = RatMatrix::identity(rstar_inv.n_rows());
    for _ in 0..128 {
        let norm = power.norm_inf();
        if norm < one && !partial.is_zero() {
            // sum_{i>=0} ||A^i s|| <= partial / (1 - ||A^m||) * ||s||
            let geo = &partial / (&one - &norm);
            return Ok(TWO_PI * ratio::to_f64(&(mask.max_digit_norm1() * geo)));
        }
        partial += norm;
        power = power.mul(rstar_inv);
    }
    Err(Error::NotExpansive)
}

/// Attractor approximation at a given depth: all digit-string sums
/// `sum_{i=0..k} R^{-i} b_i`, each carrying uniform weight.
#[derive(Clone, Debug)]
pub struct AttractorCloud {
    pub depth: usize,
    pub points: Vec<Vec<f64>>,
    pub weight: f64,
}

fn check_budget(n_digits: usize, depth: usize, budget: usize) -> Result<()> {
    let mut count: u128 = 1;
    let mut admissible = 0usize;
    let mut total: u128 = 1;
    for k in 0..=depth {
        total = total.saturating_mul(n_digits as u128);
        if total <= budget as u128 {
            admissible = k;
        }
        count = total;
    }
    if count > budget as u128 {
        return Err(Error::BudgetExceeded {
            requested: depth,
            points: count,
            admissible,
        });
    }
    Ok(())
}

pub const DEFAULT_POINT_BUDGET: usize = 4_000_000;

pub fn attractor_points(
    r: &RatMatrix,
    b: &[RatVector],
    depth: usize,
    budget: usize,
) -> Result<AttractorCloud> {
    check_budget(b.len(), depth, budget)?;
    let r_inv = r.inverse().map_err(|_| Error::SingularMatrix)?.to_f64();
    let digits: Vec<Vec<f64>> = b.iter().map(RatVector::to_f64).collect();
    let mut points = digits.clone();
    for _ in 0..depth {
        let mut next = Vec::with_capacity(points.len() * digits.len());
        for d in &digits {
            for p in &points {
                let contracted = apply_f64(&r_inv, p);
                next.push(d.iter().zip(&contracted).map(|(a, b)| a + b).collect());
            }
        }
        points = next;
    }
    let weight = (b.len() as f64).powi(-(depth as i32 + 1));
    Ok(AttractorCloud {
        depth,
        points,
        weight,
    })
}

/// Exact variant carrying the digit strings; intended for small depths.
pub fn attractor_points_exact(
    r: &RatMatrix,
    b: &[RatVector],
    depth: usize,
    budget: usize,
) -> Result<Vec<(Vec<usize>, RatVector)>> {
    check_budget(b.len(), depth, budget)?;
    let r_inv = r.inverse().map_err(|_| Error::SingularMatrix)?;
    let mut points: Vec<(Vec<usize>, RatVector)> = b
        .iter()
        .enumerate()
        .map(|(i, v)| (vec![i], v.clone()))
        .collect();
    for _ in 0..depth {
        let mut next = Vec::with_capacity(points.len() * b.len());
        for (i, d) in b.iter().enumerate() {
            for (string, p) in &points {
                let mut s = vec![i];
                s.extend(string);
                next.push((s, d.add(&r_inv.matvec(p))));
            }
        }
        points = next;
    }
    Ok(points)
}

/// Discrete approximation of the measure at a given depth.
#[derive(Clone, Debug)]
pub struct LevelMeasure {
    pub depth: usize,
    pub weight: f64,
    pub points: Vec<Vec<f64>>,
}

impl LevelMeasure {
    pub fn total_mass(&self) -> f64 {
        self.weight * self.points.len() as f64
    }

    /// Integral of `e_t` against the discrete measure.
    pub fn transform(&self, t: &[f64]) -> Complex64 {
        let mut acc = Complex64::zero();
        for p in &self.points {
            let dot: f64 = p.iter().zip(t).map(|(a, b)| a * b).sum();
            acc += unit_phase(dot);
        }
        acc * self.weight
    }
}

pub fn measure_level(
    r: &RatMatrix,
    b: &[RatVector],
    depth: usize,
    budget: usize,
) -> Result<LevelMeasure> {
    let cloud = attractor_points(r, b, depth, budget)?;
    Ok(LevelMeasure {
        depth,
        weight: cloud.weight,
        points: cloud.points,
    })
}

/// Similarity dimension `ln |B| / ln r` for matrices with `R^T R = r^2 I`.
pub fn fractal_dimension(r: &RatMatrix, b: &[RatVector]) -> Result<f64> {
    let gram = r.transpose().mul(r);
    let n = gram.n_rows();
    let rho = gram.at(0, 0).clone();
    for i in 0..n {
        for j in 0..n {
            let expected_diag = i == j;
            if expected_diag && gram.at(i, j) != &rho {
                return Err(Error::NotSimilarity);
            }
            if !expected_diag && !gram.at(i, j).is_zero() {
                return Err(Error::NotSimilarity);
            }
        }
    }
    if rho <= Rational::one() {
        return Err(Error::NotSimilarity);
    }
    // r = sqrt(rho), so ln r = ln(rho) / 2
    Ok((b.len() as f64).ln() / (ratio::to_f64(&rho).ln() / 2.0))
}

/// Grayscale raster of a point cloud.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

/// Bins the cloud into a pixel grid. One-dimensional clouds render as a
/// strip; three-dimensional clouds project orthographically onto the first
/// two coordinates.
pub fn render(
    cloud: &AttractorCloud,
    width: usize,
    height: usize,
    bbox: &[(f64, f64)],
) -> Result<Raster> {
    if width == 0 || height == 0 {
        return Err(Error::BadViewport);
    }
    let dim = cloud.points.first().map_or(1, Vec::len);
    if !(1..=3).contains(&dim) {
        return Err(Error::DimensionMismatch(format!(
            "rendering supports dimensions 1 to 3, got {dim}"
        )));
    }
    let planar = dim.min(2);
    if bbox.len() < planar {
        return Err(Error::BadViewport);
    }
    for &(lo, hi) in &bbox[..planar] {
        if !(hi - lo).is_finite() || hi <= lo {
            return Err(Error::BadViewport);
        }
    }
    let mut counts = vec![0u64; width * height];
    for p in &cloud.points {
        let (x0, x1) = bbox[0];
        let fx = (p[0] - x0) / (x1 - x0);
        if !(0.0..=1.0).contains(&fx) {
            continue;
        }
        let col = ((fx * width as f64) as usize).min(width - 1);
        if dim == 1 {
            for row in 0..height {
                counts[row * width + col] += 1;
            }
        } else {
            let (y0, y1) = bbox[1];
            let fy = (p[1] - y0) / (y1 - y0);
            if !(0.0..=1.0).contains(&fy) {
                continue;
            }
            // row 0 at the top of the viewport
            let row = (((1.0 - fy) * height as f64) as usize).min(height - 1);
            counts[row * width + col] += 1;
        }
    }
    let max = counts.iter().copied().max().unwrap_or(0);
    let pixels = counts
        .iter()
        .map(|&c| {
            if max == 0 || c == 0 {
                0u8
            } else {
                (255 * c / max).max(1) as u8
            }
        })
        .collect();
    Ok(Raster {
        width,
        height,
        pixels,
    })
}

/// Binary 8-bit PGM encoding, row-major.
pub fn write_pgm(raster: &Raster) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", raster.width, raster.height).into_bytes();
    out.extend_from_slice(&raster.pixels);
    out
}
