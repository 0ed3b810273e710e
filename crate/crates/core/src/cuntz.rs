//! The dual pair of operator families on exponentials: closed-form actions
//! of the adjoint scaling isometries, the frequency-shift isometries and the
//! multiplication operators, plus desk-scale verification of their
//! relations on truncated spans.
//!
//! Operators act symbolically: an exponential goes to an exponential with an
//! exactly tracked rational frequency, so the algebraic identities reduce to
//! exact statements about phases and frequencies. The transform enters only
//! through Gram-style residuals.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::{self, Rational};
use crate::ratlat::{self, Lattice, RatMatrix, RatVector};
use crate::spectrum;
use crate::system::AffineSystem;
use crate::transform::MuHatEvaluator;

/// Finite combination of exponentials with pairwise distinct rational
/// frequencies, kept in canonical (sorted) order.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpFunction {
    terms: Vec<(Complex64, RatVector)>,
}

impl ExpFunction {
    pub fn exponential(freq: RatVector) -> Self {
        Self {
            terms: vec![(Complex64::new(1.0, 0.0), freq)],
        }
    }

    pub fn from_terms(terms: Vec<(Complex64, RatVector)>) -> Self {
        let mut map: BTreeMap<RatVector, Complex64> = BTreeMap::new();
        for (c, f) in terms {
            *map.entry(f).or_insert_with(Complex64::zero) += c;
        }
        Self {
            terms: map
                .into_iter()
                .filter(|(_, c)| c.norm() != 0.0)
                .map(|(f, c)| (c, f))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Complex64, RatVector)] {
        &self.terms
    }

    pub fn add(&self, other: &ExpFunction) -> ExpFunction {
        let mut all = self.terms.clone();
        all.extend(other.terms.iter().cloned());
        ExpFunction::from_terms(all)
    }

    pub fn scale(&self, c: Complex64) -> ExpFunction {
        ExpFunction::from_terms(self.terms.iter().map(|(a, f)| (a * c, f.clone())).collect())
    }

    /// The single term, if the function is a scalar multiple of one
    /// exponential.
    pub fn single(&self) -> Option<(Complex64, &RatVector)> {
        match self.terms.as_slice() {
            [(c, f)] => Some((*c, f)),
            _ => None,
        }
    }

    pub fn approx_eq(&self, other: &ExpFunction, tol: f64) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms
            .iter()
            .zip(&other.terms)
            .all(|((c1, f1), (c2, f2))| f1 == f2 && (c1 - c2).norm() <= tol)
    }
}

fn unit_phase(exponent: &Rational) -> Complex64 {
    let th = 2.0 * std::f64::consts::PI * ratio::to_f64(exponent);
    Complex64::new(th.cos(), th.sin())
}

/// Operator actions for a fixed system carrying a lattice.
pub struct CuntzOps {
    r: RatMatrix,
    r_star: RatMatrix,
    r_star_inv: RatMatrix,
    b: Vec<RatVector>,
    l: Vec<RatVector>,
    k_dual: Lattice,
    scale: f64,
}

impl CuntzOps {
    pub fn new(sys: &AffineSystem) -> Result<Self> {
        let k = sys.require_lattice()?;
        let r_star = sys.matrix_star();
        Ok(Self {
            r: sys.matrix().clone(),
            r_star_inv: r_star.inverse().expect("system matrices are invertible"),
            r_star,
            b: sys.b_set().to_vec(),
            l: sys.l_set().to_vec(),
            k_dual: k.dual(),
            scale: (sys.b_set().len() as f64).powf(-0.5),
        })
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    pub fn dual_lattice(&self) -> &Lattice {
        &self.k_dual
    }

    /// Adjoint scaling isometry: termwise
    /// `e_t -> N^{-1/2} exp(2 pi i t.b) e_{R*^{-1} t}`.
    pub fn apply_s_star(&self, b: &RatVector, f: &ExpFunction) -> ExpFunction {
        ExpFunction::from_terms(
            f.terms
                .iter()
                .map(|(c, t)| {
                    let phase = unit_phase(&ratio::frac_mod_1(&t.dot(b)));
                    (c * phase * self.scale, self.r_star_inv.matvec(t))
                })
                .collect(),
        )
    }

    /// Frequency-shift isometry, defined on dual-lattice frequencies:
    /// termwise `e_s -> e_{R* s + l}`.
    pub fn apply_t(&self, l: &RatVector, f: &ExpFunction) -> Result<ExpFunction> {
        for (_, s) in &f.terms {
            if !self.k_dual.contains(s) {
                return Err(Error::DomainViolation(format!("{s}")));
            }
        }
        Ok(ExpFunction::from_terms(
            f.terms
                .iter()
                .map(|(c, s)| (*c, self.r_star.matvec(s).add(l)))
                .collect(),
        ))
    }

    /// Multiplication operator: termwise
    /// `e_t -> N^{-1/2} exp(2 pi i l.b) e_{t + R*^{-1} l}`.
    pub fn apply_m(&self, b: &RatVector, l: &RatVector, f: &ExpFunction) -> ExpFunction {
        let phase = unit_phase(&ratio::frac_mod_1(&l.dot(b))) * self.scale;
        ExpFunction::from_terms(
            f.terms
                .iter()
                .map(|(c, t)| (c * phase, t.add(&self.r_star_inv.matvec(l))))
                .collect(),
        )
    }

    /// Frequency reached by the shift composition
    /// `T_{l0} T_{l1} ... T_{lm}` applied to the constant exponential.
    pub fn compose_t(&self, digits: &[RatVector]) -> Result<RatVector> {
        let n = self.r.n_rows();
        let mut f = ExpFunction::exponential(RatVector::zeros(n));
        for l in digits.iter().rev() {
            f = self.apply_t(l, &f)?;
        }
        let (_, freq) = f.single().expect("shift composition keeps one term");
        Ok(freq.clone())
    }

    /// Adjoint of the frequency shift on a shifted-lattice frequency
    /// `t = l + R* s`: returns `(l index, s)` when the decomposition exists.
    pub fn t_star_decompose(&self, t: &RatVector) -> Vec<(usize, RatVector)> {
        let mut out = Vec::new();
        for (i, l) in self.l.iter().enumerate() {
            let s = self.r_star_inv.matvec(&t.sub(l));
            if self.k_dual.contains(&s) {
                out.push((i, s));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StWitness {
    pub b: RatVector,
    pub l: RatVector,
    pub s: RatVector,
    /// Fractional part of `s . Rb`; nonzero means the identity fails there.
    #[serde(serialize_with = "ser_rat")]
    pub phase_defect: Rational,
}

fn ser_rat<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio::format_rational(x))
}

#[derive(Clone, Debug, Serialize)]
pub struct StIdentityReport {
    pub checks: usize,
    pub pass: bool,
    pub witnesses: Vec<StWitness>,
}

/// Exact symbolic check that the composed operator `S_b* T_l` equals the
/// multiplication operator on every tested frequency. The two sides agree
/// exactly when `s . Rb` is integral.
pub fn verify_st_identity(sys: &AffineSystem, freqs: &[RatVector]) -> Result<StIdentityReport> {
    let ops = CuntzOps::new(sys)?;
    let mut report = StIdentityReport {
        checks: 0,
        pass: true,
        witnesses: vec![],
    };
    for b in sys.b_set() {
        for l in sys.l_set() {
            for s in freqs {
                report.checks += 1;
                let e_s = ExpFunction::exponential(s.clone());
                let lhs = ops.apply_s_star(b, &ops.apply_t(l, &e_s)?);
                let rhs = ops.apply_m(b, l, &e_s);
                let (_, f1) = lhs.single().expect("one term");
                let (_, f2) = rhs.single().expect("one term");
                debug_assert_eq!(f1, f2);
                // the coefficients differ by the phase exp(2 pi i s.Rb)
                let defect = ratio::frac_mod_1(&s.dot(&sys.matrix().matvec(b)));
                if !defect.is_zero() {
                    report.pass = false;
                    report.witnesses.push(StWitness {
                        b: b.clone(),
                        l: l.clone(),
                        s: s.clone(),
                        phase_defect: defect,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct TRelationsReport {
    pub isometry_points: usize,
    /// Every tested dual point had an exactly-unit mask after scaling.
    pub isometry_exact: bool,
    pub isometry_max_numeric_residual: f64,
    pub ortho_pairs: usize,
    pub ortho_exact_zeros: usize,
    pub ortho_max_residual: f64,
    pub ortho_max_bound: f64,
    pub completeness_points: usize,
    /// Every shifted-lattice frequency decomposed through exactly one digit.
    pub decomposition_unique: bool,
    /// Reconstruction defect of the completeness sum on the tested window;
    /// exactly zero whenever the decomposition is unique.
    pub completeness_max_residual: f64,
}

impl TRelationsReport {
    pub fn pass(&self, tol: f64) -> bool {
        self.isometry_exact
            && self.isometry_max_numeric_residual <= tol
            && self.ortho_max_residual <= tol
            && self.decomposition_unique
            && self.completeness_max_residual <= tol
    }
}

/// Verifies the isometry, mutual-orthogonality and completeness relations
/// of the frequency-shift family on a window of dual-lattice points.
pub fn verify_t_relations(
    sys: &AffineSystem,
    eval: &MuHatEvaluator,
    window: &Rational,
) -> Result<TRelationsReport> {
    let ops = CuntzOps::new(sys)?;
    let k_dual = ops.dual_lattice().clone();
    let duals = ratlat::points_in_box(&k_dual, window);
    let r_star = sys.matrix_star();
    let mask = eval.mask();

    // (a) isometry: <T e_s, T e_s'> = <e_s, e_s'> reduces to the mask being
    // exactly one on star images of dual points
    let mut isometry_exact = true;
    let mut isometry_max_numeric_residual = 0.0f64;
    for u in &duals {
        let ru = r_star.matvec(u);
        if !mask.is_exactly_one(&ru) {
            isometry_exact = false;
        }
        let lhs = eval.eval_rational(&ru);
        let rhs = eval.eval_rational(u);
        if !(lhs.exact_zero && rhs.exact_zero) {
            let resid = (lhs.value - rhs.value).norm();
            isometry_max_numeric_residual = isometry_max_numeric_residual.max(resid);
        }
    }

    // (b) mutual orthogonality across distinct digits
    let mut ortho_pairs = 0usize;
    let mut ortho_exact_zeros = 0usize;
    let mut ortho_max_residual = 0.0f64;
    let mut ortho_max_bound = 0.0f64;
    for (i, li) in sys.l_set().iter().enumerate() {
        for (j, lj) in sys.l_set().iter().enumerate() {
            if i == j {
                continue;
            }
            for u in &duals {
                ortho_pairs += 1;
                let arg = r_star.matvec(u).add(&lj.sub(li));
                let v = eval.eval_rational(&arg);
                if v.exact_zero {
                    ortho_exact_zeros += 1;
                } else {
                    ortho_max_residual = ortho_max_residual.max(v.value.norm());
                    ortho_max_bound = ortho_max_bound.max(v.bound);
                }
            }
        }
    }

    // (c) completeness through the unique digit decomposition of the
    // shifted-lattice window
    let lambda = spectrum::lambda_set(sys.l_set(), sys.matrix(), &k_dual, window);
    let mut decomposition_unique = true;
    let mut completeness_max_residual = 0.0f64;
    for t in &lambda.points {
        let decomps = ops.t_star_decompose(t);
        if decomps.len() != 1 {
            decomposition_unique = false;
            continue;
        }
        let (digit, s) = &decomps[0];
        // T_l T_l* e_t with the only surviving digit reconstructs e_t
        let rebuilt = ops.apply_t(&sys.l_set()[*digit], &ExpFunction::exponential(s.clone()))?;
        let (c, f) = rebuilt.single().expect("one term");
        if f != t {
            decomposition_unique = false;
        } else {
            completeness_max_residual = completeness_max_residual.max((c - 1.0).norm());
        }
    }

    Ok(TRelationsReport {
        isometry_points: duals.len(),
        isometry_exact,
        isometry_max_numeric_residual,
        ortho_pairs,
        ortho_exact_zeros,
        ortho_max_residual,
        ortho_max_bound,
        completeness_points: lambda.points.len(),
        decomposition_unique,
        completeness_max_residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SCompletenessReport {
    pub pairs: usize,
    pub max_residual: f64,
    pub max_bound: f64,
}

/// Weak matrix-element form of the scaling-family completeness: the
/// one-step factorization of the transform, tested on frequency pairs.
pub fn verify_s_completeness(
    sys: &AffineSystem,
    eval: &MuHatEvaluator,
    pairs: &[(Vec<f64>, Vec<f64>)],
) -> SCompletenessReport {
    let mask = eval.mask();
    let rstar_inv = eval.rstar_inv().to_f64();
    let mut report = SCompletenessReport {
        pairs: pairs.len(),
        max_residual: 0.0,
        max_bound: 0.0,
    };
    for (u, t) in pairs {
        assert_eq!(u.len(), sys.dim());
        assert_eq!(t.len(), sys.dim());
        let w: Vec<f64> = t.iter().zip(u).map(|(a, b)| a - b).collect();
        let contracted: Vec<f64> = rstar_inv
            .iter()
            .map(|row| row.iter().zip(&w).map(|(a, b)| a * b).sum())
            .collect();
        let lhs = eval.eval(&w);
        let rhs = eval.eval(&contracted);
        let resid = (lhs.value - mask.eval(&w) * rhs.value).norm();
        report.max_residual = report.max_residual.max(resid);
        report.max_bound = report.max_bound.max(lhs.bound + rhs.bound);
    }
    report
}

/// Deterministic quasi-random pair generator for completeness sweeps.
pub fn deterministic_pairs(dim: usize, count: usize, radius: f64, seed: u64) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut state = seed.max(1);
    let mut next = move || {
        // xorshift64
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state as f64 / u64::MAX as f64) * 2.0 * radius - radius
    };
    (0..count)
        .map(|_| {
            let u: Vec<f64> = (0..dim).map(|_| next()).collect();
            let t: Vec<f64> = (0..dim).map(|_| next()).collect();
            (u, t)
        })
        .collect()
}

/// Exact check of the shift-composition law for all digit strings up to the
/// given length: iterated application lands on the digit-weighted sum.
pub fn verify_composition(sys: &AffineSystem, max_len: usize) -> Result<bool> {
    let ops = CuntzOps::new(sys)?;
    let r_star = sys.matrix_star();
    let l = sys.l_set();
    let n = sys.dim();
    let mut strings: Vec<Vec<RatVector>> = vec![vec![]];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for s in &strings {
            if s.len() == len - 1 {
                for d in l {
                    let mut t = s.clone();
                    t.push(d.clone());
                    next.push(t);
                }
            }
        }
        for s in &next {
            // direct weighted sum sum_j R*^j l_j
            let mut expected = RatVector::zeros(n);
            let mut power = RatMatrix::identity(n);
            for d in s {
                expected = expected.add(&power.matvec(d));
                power = r_star.mul(&power);
            }
            if ops.compose_t(s)? != expected {
                return Ok(false);
            }
        }
        strings.extend(next);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};

    fn half_scale(k: Option<Lattice>) -> AffineSystem {
        AffineSystem::new(
            RatMatrix::from_i64(&[&[(4, 1)]]),
            vec![RatVector::from_i64(&[(0, 1)]), RatVector::from_i64(&[(1, 2)])],
            vec![RatVector::from_i64(&[(0, 1)]), RatVector::from_i64(&[(1, 1)])],
            k,
        )
        .unwrap()
    }

    fn v1(n: i64, d: i64) -> RatVector {
        RatVector::from_i64(&[(n, d)])
    }

    #[test]
    fn s_star_action() {
        let ops = CuntzOps::new(&half_scale(Some(Lattice::standard(1)))).unwrap();
        let inv_sqrt2 = 0.5f64.sqrt();

        // constant digit on the constant exponential: pure scaling
        let out = ops.apply_s_star(&v1(0, 1), &ExpFunction::exponential(v1(0, 1)));
        let (c, f) = out.single().unwrap();
        assert!((c - Complex64::new(inv_sqrt2, 0.0)).norm() < 1e-15);
        assert_eq!(f, &v1(0, 1));

        // digit 1/2 on frequency 1: phase -1, frequency 1/4
        let out = ops.apply_s_star(&v1(1, 2), &ExpFunction::exponential(v1(1, 1)));
        let (c, f) = out.single().unwrap();
        assert!((c - Complex64::new(-inv_sqrt2, 0.0)).norm() < 1e-15);
        assert_eq!(f, &v1(1, 4));
    }

    #[test]
    fn s_star_is_linear() {
        let ops = CuntzOps::new(&half_scale(Some(Lattice::standard(1)))).unwrap();
        let f = ExpFunction::from_terms(vec![
            (Complex64::new(2.0, 1.0), v1(1, 1)),
            (Complex64::new(0.0, -3.0), v1(5, 2)),
        ]);
        let b = v1(1, 2);
        let whole = ops.apply_s_star(&b, &f);
        let parts = ops
            .apply_s_star(&b, &ExpFunction::exponential(v1(1, 1)))
            .scale(Complex64::new(2.0, 1.0))
            .add(
                &ops.apply_s_star(&b, &ExpFunction::exponential(v1(5, 2)))
                    .scale(Complex64::new(0.0, -3.0)),
            );
        assert!(whole.approx_eq(&parts, 1e-14));
    }

    #[test]
    fn t_action_and_domain() {
        let ops = CuntzOps::new(&half_scale(Some(Lattice::standard(1)))).unwrap();
        // constant digit fixes the constant exponential
        let out = ops
            .apply_t(&v1(0, 1), &ExpFunction::exponential(v1(0, 1)))
            .unwrap();
        assert_eq!(out, ExpFunction::exponential(v1(0, 1)));

        // frequency 1 shifts to 4 * 1 + 1 = 5
        let out = ops
            .apply_t(&v1(1, 1), &ExpFunction::exponential(v1(1, 1)))
            .unwrap();
        assert_eq!(out, ExpFunction::exponential(v1(5, 1)));

        // non-lattice frequency rejected
        assert!(matches!(
            ops.apply_t(&v1(1, 1), &ExpFunction::exponential(v1(1, 2))),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn m_action() {
        let ops = CuntzOps::new(&half_scale(Some(Lattice::standard(1)))).unwrap();
        let inv_sqrt2 = 0.5f64.sqrt();
        // scaling by N^{-1/2} at the trivial pair
        let out = ops.apply_m(&v1(0, 1), &v1(0, 1), &ExpFunction::exponential(v1(3, 1)));
        let (c, f) = out.single().unwrap();
        assert!((c - Complex64::new(inv_sqrt2, 0.0)).norm() < 1e-15);
        assert_eq!(f, &v1(3, 1));

        // digit 1/2 with shift 1 on the constant: phase -1, frequency 1/4
        let out = ops.apply_m(&v1(1, 2), &v1(1, 1), &ExpFunction::exponential(v1(0, 1)));
        let (c, f) = out.single().unwrap();
        assert!((c - Complex64::new(-inv_sqrt2, 0.0)).norm() < 1e-15);
        assert_eq!(f, &v1(1, 4));
    }

    #[test]
    fn st_identity_exact_on_selfadjoint_system() {
        let s = half_scale(Some(Lattice::standard(1)));
        let freqs: Vec<RatVector> = [-2i64, -1, 0, 1, 2].iter().map(|&x| v1(x, 1)).collect();
        let rep = verify_st_identity(&s, &freqs).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.checks, 2 * 2 * 5);
    }

    #[test]
    fn st_identity_fails_with_oversized_lattice() {
        // with K = 4Z the image R(B) = {0, 2} escapes the lattice and dual
        // frequencies include 1/4
        let s = half_scale(Some(Lattice::scaled_standard(1, &int(4))));
        let freqs = vec![v1(1, 4)];
        let rep = verify_st_identity(&s, &freqs).unwrap();
        assert!(!rep.pass);
        let w = &rep.witnesses[0];
        assert_eq!(w.phase_defect, rat(1, 2));
    }

    #[test]
    fn t_relations_on_half_scale() {
        let s = half_scale(Some(Lattice::standard(1)));
        let eval = MuHatEvaluator::new(s.matrix(), s.b_set()).unwrap();
        let rep = verify_t_relations(&s, &eval, &int(10)).unwrap();
        assert!(rep.isometry_exact);
        assert!(rep.isometry_points >= 21);
        assert!(rep.isometry_max_numeric_residual < 1e-9);
        assert_eq!(rep.ortho_exact_zeros, rep.ortho_pairs);
        assert_eq!(rep.ortho_max_residual, 0.0);
        assert!(rep.decomposition_unique);
        assert_eq!(rep.completeness_max_residual, 0.0);
        assert!(rep.pass(1e-8));
    }

    #[test]
    fn t_relations_fail_for_non_hadamard_digits() {
        // L = {0, 2}: within one star coset, so orthogonality residuals stay
        // large
        let s = AffineSystem::new(
            RatMatrix::from_i64(&[&[(4, 1)]]),
            vec![v1(0, 1), v1(1, 2)],
            vec![v1(0, 1), v1(2, 1)],
            Some(Lattice::standard(1)),
        )
        .unwrap();
        let eval = MuHatEvaluator::new(s.matrix(), s.b_set()).unwrap();
        let rep = verify_t_relations(&s, &eval, &int(5)).unwrap();
        assert!(rep.ortho_max_residual > 1e-3, "{rep:?}");
        assert!(!rep.pass(1e-8));
    }

    #[test]
    fn s_completeness_functional_equation() {
        let s = half_scale(Some(Lattice::standard(1)));
        let eval = MuHatEvaluator::new(s.matrix(), s.b_set()).unwrap();
        let pairs = deterministic_pairs(1, 100, 8.0, 17);
        let rep = verify_s_completeness(&s, &eval, &pairs);
        assert_eq!(rep.pairs, 100);
        assert!(rep.max_residual < 1e-9, "{rep:?}");
    }

    #[test]
    fn composition_law_exact() {
        let s = half_scale(Some(Lattice::standard(1)));
        assert!(verify_composition(&s, 5).unwrap());
        // spot check one string by hand: T_1 T_0 T_1 e_0 = e_{1 + 0 + 16}
        let ops = CuntzOps::new(&s).unwrap();
        let freq = ops
            .compose_t(&[v1(1, 1), v1(0, 1), v1(1, 1)])
            .unwrap();
        assert_eq!(freq, v1(17, 1));
    }

    #[test]
    fn t_star_decomposition_unique_on_lambda() {
        let s = half_scale(Some(Lattice::standard(1)));
        let ops = CuntzOps::new(&s).unwrap();
        // 5 = 1 + 4 * 1: digit index 1, frequency 1
        let d = ops.t_star_decompose(&v1(5, 1));
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].0, 1);
        assert_eq!(d[0].1, v1(1, 1));
        // 1/2 is not in the shifted family
        assert!(ops.t_star_decompose(&v1(1, 2)).is_empty());
    }
}
