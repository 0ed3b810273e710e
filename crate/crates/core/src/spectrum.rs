//! Candidate spectra and their orthogonality: the lattice-shift family
//! `L + R* K0`, the iterated digit sums, Gram reports, maximality desk
//! checks, box-region inner products and totality diagnostics.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::{self, Rational};
use crate::ratlat::{self, Lattice, RatMatrix, RatVector};
use crate::system::AffineSystem;
use crate::transform::{self, MuHatEvaluator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Lambda,
    CalL,
    User,
}

/// A finite set of candidate frequencies, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumSet {
    pub provenance: Provenance,
    pub points: Vec<RatVector>,
}

impl SpectrumSet {
    pub fn user(points: Vec<RatVector>) -> Self {
        let set: BTreeSet<RatVector> = points.into_iter().collect();
        Self {
            provenance: Provenance::User,
            points: set.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, t: &RatVector) -> bool {
        self.points.binary_search(t).is_ok()
    }
}

/// All points `l + R* s` with `s` in the dual lattice and max-norm at most
/// `bound`.
pub fn lambda_set(
    l: &[RatVector],
    r: &RatMatrix,
    k_dual: &Lattice,
    bound: &Rational,
) -> SpectrumSet {
    let r_star = r.transpose();
    let shifted = Lattice::from_basis(r_star.mul(k_dual.canonical()))
        .expect("star image of a lattice basis stays nonsingular");
    let max_l = l
        .iter()
        .map(RatVector::norm_inf)
        .max()
        .unwrap_or_else(Rational::zero);
    let inner = ratlat::points_in_box(&shifted, &(bound + &max_l));
    let mut out = BTreeSet::new();
    for ell in l {
        for s in &inner {
            let p = ell.add(s);
            if p.norm_inf() <= *bound {
                out.insert(p);
            }
        }
    }
    SpectrumSet {
        provenance: Provenance::Lambda,
        points: out.into_iter().collect(),
    }
}

/// The iterated sums `l0 + R* l1 + ... + R*^m lm` up to the given degree,
/// with the digit-map injectivity verdict.
#[derive(Clone, Debug)]
pub struct CalL {
    pub degree: usize,
    pub set: SpectrumSet,
    /// Whether the map from trailing-normalized digit strings to sums is
    /// one-to-one at this degree (exact).
    pub injective: bool,
}

pub fn cal_l(l: &[RatVector], r: &RatMatrix, degree: usize) -> CalL {
    let r_star = r.transpose();
    let zero_digit = l
        .iter()
        .position(RatVector::is_zero)
        .expect("digit sets contain the origin");
    // strings of length degree+1 built inside-out
    let mut strings: Vec<(Vec<usize>, RatVector)> = l
        .iter()
        .enumerate()
        .map(|(i, v)| (vec![i], v.clone()))
        .collect();
    for _ in 0..degree {
        let mut next = Vec::with_capacity(strings.len() * l.len());
        for (i, ell) in l.iter().enumerate() {
            for (string, value) in &strings {
                let mut s = vec![i];
                s.extend(string);
                next.push((s, ell.add(&r_star.matvec(value))));
            }
        }
        strings = next;
    }
    // normalize by trimming trailing zero digits; the all-zero string
    // normalizes to the empty string
    let mut by_value: BTreeMap<RatVector, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for (string, value) in &strings {
        let mut norm = string.clone();
        while norm.last() == Some(&zero_digit) {
            norm.pop();
        }
        by_value.entry(value.clone()).or_default().insert(norm);
    }
    let injective = by_value.values().all(|set| set.len() == 1);
    CalL {
        degree,
        set: SpectrumSet {
            provenance: Provenance::CalL,
            points: by_value.into_keys().collect(),
        },
        injective,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaOrthoReport {
    pub pairs_tested: usize,
    pub exact_zeros: usize,
    /// Largest `|muhat|` over non-exact evaluations; 0 when all vanished
    /// exactly.
    pub max_residual: f64,
    pub max_bound: f64,
    pub worst: Option<(RatVector, RatVector, RatVector)>,
}

impl LambdaOrthoReport {
    pub fn all_exact(&self) -> bool {
        self.exact_zeros == self.pairs_tested
    }
}

/// Residuals of `muhat(l - l' + R* s)` over distinct `l, l'` and a window of
/// dual-lattice points.
pub fn check_lambda_orthogonality(
    sys: &AffineSystem,
    eval: &MuHatEvaluator,
    window: &Rational,
) -> Result<LambdaOrthoReport> {
    let k = sys.require_lattice()?;
    let r_star = sys.matrix_star();
    let duals = ratlat::points_in_box(&k.dual(), window);
    let l = sys.l_set();
    let mut report = LambdaOrthoReport {
        pairs_tested: 0,
        exact_zeros: 0,
        max_residual: 0.0,
        max_bound: 0.0,
        worst: None,
    };
    for (i, li) in l.iter().enumerate() {
        for (j, lj) in l.iter().enumerate() {
            if i == j {
                continue;
            }
            let base = li.sub(lj);
            for s in &duals {
                let arg = base.add(&r_star.matvec(s));
                let v = eval.eval_rational(&arg);
                report.pairs_tested += 1;
                if v.exact_zero {
                    report.exact_zeros += 1;
                } else {
                    let m = v.value.norm();
                    report.max_bound = report.max_bound.max(v.bound);
                    if m > report.max_residual {
                        report.max_residual = m;
                        report.worst = Some((li.clone(), lj.clone(), s.clone()));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub size: usize,
    pub max_offdiag: f64,
    pub max_bound: f64,
    pub exact_zeros: usize,
    pub pairs_tested: usize,
    pub worst_pair: Option<(RatVector, RatVector)>,
}

/// Full Gram matrix of the exponentials of a frequency set under the
/// transform inner product; reports the largest off-diagonal modulus.
pub fn check_mutual_orthogonality(points: &[RatVector], eval: &MuHatEvaluator) -> GramReport {
    let mut report = GramReport {
        size: points.len(),
        max_offdiag: 0.0,
        max_bound: 0.0,
        exact_zeros: 0,
        pairs_tested: 0,
        worst_pair: None,
    };
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let v = eval.inner_product(&points[i], &points[j]);
            report.pairs_tested += 1;
            if v.exact_zero {
                report.exact_zeros += 1;
                continue;
            }
            report.max_bound = report.max_bound.max(v.bound);
            let m = v.value.norm();
            if m > report.max_offdiag {
                report.max_offdiag = m;
                report.worst_pair = Some((points[i].clone(), points[j].clone()));
            }
        }
    }
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub candidate: RatVector,
    pub lambda: RatVector,
    pub value_modulus: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximalityReport {
    pub witness_tol: f64,
    pub degree: usize,
    pub witnesses: Vec<Witness>,
    /// Candidates with no witness at this degree. Only "not ruled out";
    /// never a proven violation.
    pub inconclusive: Vec<RatVector>,
    /// Candidates skipped because they already lie in the digit-sum set.
    pub skipped: Vec<RatVector>,
}

/// For each candidate outside the digit-sum set, looks for a member whose
/// inner product with the candidate stays above the witness tolerance.
pub fn check_maximality(
    eval: &MuHatEvaluator,
    cal: &CalL,
    candidates: &[RatVector],
    witness_tol: f64,
) -> MaximalityReport {
    let mut report = MaximalityReport {
        witness_tol,
        degree: cal.degree,
        witnesses: vec![],
        inconclusive: vec![],
        skipped: vec![],
    };
    for t in candidates {
        if cal.set.contains(t) {
            report.skipped.push(t.clone());
            continue;
        }
        let mut found = None;
        for lambda in &cal.set.points {
            let v = eval.eval_rational(&t.sub(lambda));
            if !v.exact_zero && v.value.norm() > witness_tol {
                found = Some(Witness {
                    candidate: t.clone(),
                    lambda: lambda.clone(),
                    value_modulus: v.value.norm(),
                });
                break;
            }
        }
        match found {
            Some(w) => report.witnesses.push(w),
            None => report.inconclusive.push(t.clone()),
        }
    }
    report
}

pub const DEFAULT_WITNESS_TOL: f64 = 1e-3;

/// Union of axis-aligned boxes with rational corners, pairwise disjoint up
/// to measure zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxRegion {
    boxes: Vec<(RatVector, RatVector)>,
}

impl BoxRegion {
    pub fn new(boxes: Vec<(RatVector, RatVector)>) -> Result<Self> {
        if boxes.is_empty() {
            return Err(Error::BadRegion);
        }
        let dim = boxes[0].0.dim();
        for (lo, hi) in &boxes {
            if lo.dim() != dim || hi.dim() != dim {
                return Err(Error::BadRegion);
            }
            for d in 0..dim {
                if hi.entry(d) <= lo.entry(d) {
                    return Err(Error::BadRegion);
                }
            }
        }
        for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                let overlap = (0..dim).all(|d| {
                    boxes[i].0.entry(d) < boxes[j].1.entry(d)
                        && boxes[j].0.entry(d) < boxes[i].1.entry(d)
                });
                if overlap {
                    return Err(Error::BadRegion);
                }
            }
        }
        Ok(Self { boxes })
    }

    /// One-dimensional helper: a union of intervals.
    pub fn intervals(segments: &[(Rational, Rational)]) -> Result<Self> {
        Self::new(
            segments
                .iter()
                .map(|(a, b)| {
                    (
                        RatVector::new(vec![a.clone()]),
                        RatVector::new(vec![b.clone()]),
                    )
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.boxes[0].0.dim()
    }

    pub fn boxes(&self) -> &[(RatVector, RatVector)] {
        &self.boxes
    }

    /// Exact total measure.
    pub fn measure(&self) -> Rational {
        self.boxes
            .iter()
            .map(|(lo, hi)| -> Rational {
                (0..self.dim()).map(|d| hi.entry(d) - lo.entry(d)).product()
            })
            .sum()
    }
}

/// Normalized inner product `m(region)^{-1} integral of e_{v-u}` over the
/// region, evaluated per box in closed form. Phase endpoints are exact
/// rationals; the result is floating point.
pub fn box_inner_product(region: &BoxRegion, u: &RatVector, v: &RatVector) -> Complex64 {
    let w = v.sub(u);
    if w.is_zero() {
        return Complex64::one();
    }
    let mut acc = Complex64::zero();
    for (lo, hi) in &region.boxes {
        let mut factor = Complex64::one();
        for d in 0..region.dim() {
            let wd = w.entry(d);
            if wd.is_zero() {
                factor *= Complex64::new(ratio::to_f64(&(hi.entry(d) - lo.entry(d))), 0.0);
            } else {
                // (e^{2 pi i w b} - e^{2 pi i w a}) / (2 pi i w)
                let phase_hi = phase_of(&(wd * hi.entry(d)));
                let phase_lo = phase_of(&(wd * lo.entry(d)));
                let denom = Complex64::new(0.0, 2.0 * std::f64::consts::PI * ratio::to_f64(wd));
                factor *= (phase_hi - phase_lo) / denom;
            }
        }
        acc += factor;
    }
    acc / ratio::to_f64(&region.measure())
}

fn phase_of(exponent: &Rational) -> Complex64 {
    let th = 2.0 * std::f64::consts::PI * ratio::to_f64(&ratio::frac_mod_1(exponent));
    Complex64::new(th.cos(), th.sin())
}

#[derive(Clone, Debug, Serialize)]
pub struct TotalityReport {
    /// `R(B)` lands in the lattice and distinct digits represent distinct
    /// cosets of the quotient by the lattice.
    pub b_residues_injective: bool,
    /// `L` lies in the dual lattice and is injective modulo its star image.
    pub l_residues_injective: bool,
    /// Attractor sample points at the probed depth stay pairwise
    /// non-congruent modulo the lattice.
    pub attractor_embeds: bool,
    pub attractor_depth: usize,
    /// These are necessary-condition diagnostics, not a density proof.
    pub heuristic: bool,
}

impl TotalityReport {
    pub fn all_pass(&self) -> bool {
        self.b_residues_injective && self.l_residues_injective && self.attractor_embeds
    }
}

pub fn totality_diagnostics(sys: &AffineSystem) -> Result<TotalityReport> {
    let k = sys.require_lattice()?;
    let r = sys.matrix();
    let b_in = sys.b_set().iter().all(|b| k.contains(&r.matvec(b)));
    let b_residues_injective = b_in && sys.coset_injective()?;

    let k_dual = k.dual();
    let star_image = Lattice::from_basis(sys.matrix_star().mul(k_dual.canonical()))
        .expect("star image of a lattice basis stays nonsingular");
    let l = sys.l_set();
    let mut l_residues_injective = l.iter().all(|x| k_dual.contains(x));
    'outer: for i in 0..l.len() {
        for j in i + 1..l.len() {
            if star_image.contains(&l[i].sub(&l[j])) {
                l_residues_injective = false;
                break 'outer;
            }
        }
    }

    // deepest level with at most 512 sample points
    let n_digits = sys.b_set().len().max(2);
    let mut depth = 0;
    while n_digits.pow(depth as u32 + 2) <= 512 {
        depth += 1;
    }
    let samples = transform::attractor_points_exact(r, sys.b_set(), depth, 1024)?;
    let mut attractor_embeds = true;
    'pairs: for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            let diff = samples[i].1.sub(&samples[j].1);
            if diff.is_zero() || k.contains(&diff) {
                attractor_embeds = false;
                break 'pairs;
            }
        }
    }
    Ok(TotalityReport {
        b_residues_injective,
        l_residues_injective,
        attractor_embeds,
        attractor_depth: depth,
        heuristic: true,
    })
}
