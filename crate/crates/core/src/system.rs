//! The affine quadruple `(R, B, L, K)` and its structural predicates:
//! expansivity, symmetry, selfadjointness, duality, coset injectivity,
//! irreducibility, lattice search and tensor products.
//!
//! Everything except expansivity is decided in exact rational arithmetic.
//! Expansivity needs eigenvalue moduli; it is computed numerically and
//! reports a certification margin, refusing to answer too close to the unit
//! circle.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hadamard::{self, PhaseMatrix};
use crate::ratio::{self, Rational};
use crate::ratlat::{self, Lattice, RatMatrix, RatVector};

/// A system: an invertible matrix, two finite point sets containing the
/// origin, and an optional lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSystem {
    n: usize,
    r: RatMatrix,
    b: Vec<RatVector>,
    l: Vec<RatVector>,
    k: Option<Lattice>,
}

impl AffineSystem {
    pub fn new(
        r: RatMatrix,
        b: Vec<RatVector>,
        l: Vec<RatVector>,
        k: Option<Lattice>,
    ) -> Result<Self> {
        if !r.is_square() {
            return Err(Error::InvalidSystem("matrix must be square".into()));
        }
        let n = r.n_rows();
        if n == 0 {
            return Err(Error::InvalidSystem("ambient dimension must be positive".into()));
        }
        if r.det() == Rational::from_integer(0.into()) {
            return Err(Error::InvalidSystem("matrix must be invertible".into()));
        }
        for (name, set) in [("B", &b), ("L", &l)] {
            if set.iter().any(|v| v.dim() != n) {
                return Err(Error::InvalidSystem(format!(
                    "every point of {name} must have dimension {n}"
                )));
            }
            if !set.iter().any(RatVector::is_zero) {
                return Err(Error::InvalidSystem(format!("{name} must contain the origin")));
            }
            for i in 0..set.len() {
                for j in i + 1..set.len() {
                    if set[i] == set[j] {
                        return Err(Error::InvalidSystem(format!(
                            "{name} contains a repeated point"
                        )));
                    }
                }
            }
        }
        if let Some(lat) = &k {
            if lat.dim() != n {
                return Err(Error::InvalidSystem(
                    "lattice dimension differs from the ambient dimension".into(),
                ));
            }
        }
        Ok(Self { n, r, b, l, k })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.r
    }

    /// Transpose of the system matrix.
    pub fn matrix_star(&self) -> RatMatrix {
        self.r.transpose()
    }

    pub fn b_set(&self) -> &[RatVector] {
        &self.b
    }

    pub fn l_set(&self) -> &[RatVector] {
        &self.l
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        self.k.as_ref()
    }

    pub fn require_lattice(&self) -> Result<&Lattice> {
        self.k.as_ref().ok_or(Error::MissingLattice)
    }

    /// Same system with another lattice (or none).
    pub fn with_lattice(&self, k: Option<Lattice>) -> Result<Self> {
        AffineSystem::new(self.r.clone(), self.b.clone(), self.l.clone(), k)
    }

    pub fn phase_table(&self) -> Result<PhaseMatrix> {
        hadamard::phase_table(&self.b, &self.l)
    }

    pub fn is_hadamard(&self) -> bool {
        self.phase_table()
            .map(|t| hadamard::is_generalized_hadamard(&t))
            .unwrap_or(false)
    }

    /// The dual system `(R*, -R*^{-1}(L), -R(B), K0)`.
    pub fn dual(&self) -> Result<AffineSystem> {
        let k = self.require_lattice()?;
        let r_star = self.matrix_star();
        let r_star_inv = r_star.inverse().expect("system matrices are invertible");
        let b_new: Vec<RatVector> = self.l.iter().map(|l| r_star_inv.matvec(l).neg()).collect();
        let l_new: Vec<RatVector> = self.b.iter().map(|b| self.r.matvec(b).neg()).collect();
        AffineSystem::new(r_star, b_new, l_new, Some(k.dual()))
    }

    /// Symmetry: `R(B)` inside `K` and `K` invariant under `R`.
    pub fn is_symmetric(&self) -> Result<bool> {
        let k = self.require_lattice()?;
        Ok(ratlat::in_lat(&self.r, k)
            && self.b.iter().all(|b| k.contains(&self.r.matvec(b))))
    }

    /// The three-condition selfadjointness test with per-condition diagnosis.
    pub fn selfadjointness(&self) -> Result<SelfadjointReport> {
        let k = self.require_lattice()?;
        let dual = k.dual();
        Ok(SelfadjointReport {
            lattice_invariant: ratlat::in_lat(&self.r, k),
            image_in_lattice: self.b.iter().all(|b| k.contains(&self.r.matvec(b))),
            dual_contains_l: self.l.iter().all(|l| dual.contains(l)),
        })
    }

    pub fn is_selfadjoint(&self) -> Result<bool> {
        Ok(self.selfadjointness()?.selfadjoint())
    }

    /// Distinct points of `B` represent distinct cosets modulo `K`.
    pub fn coset_injective(&self) -> Result<bool> {
        let k = self.require_lattice()?;
        for i in 0..self.b.len() {
            for j in i + 1..self.b.len() {
                if k.contains(&self.b[i].sub(&self.b[j])) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// No proper subspace contains `B` and is invariant under `R`:
    /// equivalently the iterates `R^j b` span.
    pub fn is_irreducible(&self) -> bool {
        let mut vectors = Vec::new();
        let mut power = RatMatrix::identity(self.n);
        for _ in 0..self.n {
            for b in &self.b {
                vectors.push(power.matvec(b));
            }
            power = self.r.mul(&power);
        }
        RatMatrix::from_cols(&vectors).rank() == self.n
    }

    /// Tensor product: block-diagonal matrix, Cartesian point sets, direct
    /// sum lattice when both factors carry one.
    pub fn tensor(s1: &AffineSystem, s2: &AffineSystem) -> AffineSystem {
        let r = RatMatrix::block_diag(&s1.r, &s2.r);
        let b = s1
            .b
            .iter()
            .flat_map(|b1| s2.b.iter().map(move |b2| b1.concat(b2)))
            .collect();
        let l = s1
            .l
            .iter()
            .flat_map(|l1| s2.l.iter().map(move |l2| l1.concat(l2)))
            .collect();
        let k = match (&s1.k, &s2.k) {
            (Some(k1), Some(k2)) => Some(
                Lattice::from_basis(RatMatrix::block_diag(k1.canonical(), k2.canonical()))
                    .expect("block diagonal of nonsingular bases"),
            ),
            _ => None,
        };
        AffineSystem::new(r, b, l, k).expect("tensor of valid systems is valid")
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SelfadjointReport {
    /// `K` is invariant under `R`.
    pub lattice_invariant: bool,
    /// `R(B)` lies inside `K`.
    pub image_in_lattice: bool,
    /// `L` lies inside the dual lattice.
    pub dual_contains_l: bool,
}

impl SelfadjointReport {
    pub fn selfadjoint(&self) -> bool {
        self.lattice_invariant && self.image_in_lattice && self.dual_contains_l
    }

    pub fn failed_conditions(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.lattice_invariant {
            out.push("lattice not invariant under the matrix");
        }
        if !self.image_in_lattice {
            out.push("matrix image of B escapes the lattice");
        }
        if !self.dual_contains_l {
            out.push("L escapes the dual lattice");
        }
        out
    }
}

/// Margin around the unit circle within which the eigenvalue-based
/// expansivity verdict is refused.
pub const EXPANSIVITY_CERTIFICATION_MARGIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Expansivity {
    pub expansive: bool,
    /// `min |eigenvalue| - 1`; positive means expansive.
    pub margin: f64,
}

/// Decides whether all eigenvalues lie outside the closed unit disk.
pub fn expansivity(r: &RatMatrix) -> Result<Expansivity> {
    assert!(r.is_square());
    let coeffs: Vec<f64> = r.char_poly().iter().map(ratio::to_f64).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Internal(
            "characteristic polynomial overflows f64".into(),
        ));
    }
    let roots = polyroots::durand_kerner(&coeffs);
    let min_modulus = roots
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    let margin = min_modulus - 1.0;
    if margin.abs() < EXPANSIVITY_CERTIFICATION_MARGIN {
        return Err(Error::Indeterminate { margin });
    }
    Ok(Expansivity {
        expansive: margin > 0.0,
        margin,
    })
}

pub fn is_expansive(r: &RatMatrix) -> Result<bool> {
    Ok(expansivity(r)?.expansive)
}

/// Result of the selfadjoint-lattice search.
#[derive(Clone, Debug)]
pub struct LatticeSearch {
    pub lattices: Vec<Lattice>,
    /// True when the returned list provably exhausts all admissible
    /// lattices; false for the bounded search used when `L` does not span.
    pub complete: bool,
}

/// Finds lattices `K` making `(R, B, L, K)` selfadjoint.
///
/// Every admissible lattice contains the minimal `R`-invariant lattice
/// generated by `R(B)`, and must keep `L` inside its dual. When `L` spans,
/// the admissible lattices are confined between that minimal lattice and the
/// dual of the lattice generated by `L`, so the search is exhaustive.
/// Otherwise candidates are enumerated up to `index_bound` over the minimal
/// lattice and the result is flagged incomplete.
pub fn selfadjoint_lattices(
    r: &RatMatrix,
    b: &[RatVector],
    l: &[RatVector],
    index_bound: u64,
) -> Result<LatticeSearch> {
    let exp = expansivity(r)?;
    if !exp.expansive {
        return Err(Error::NotExpansive);
    }
    let n = r.n_rows();
    let rb: Vec<RatVector> = b.iter().map(|v| r.matvec(v)).collect();
    let k_min = ratlat::minimal_invariant_lattice(r, &rb)?;
    // L inside the dual of the minimal lattice is necessary for any
    // candidate, because duals reverse inclusions.
    if !l.iter().all(|x| k_min.dual().contains(x)) {
        return Ok(LatticeSearch {
            lattices: vec![],
            complete: true,
        });
    }
    let spans = RatMatrix::from_cols(l).rank() == n;
    let accept = |k: &Lattice| -> bool {
        let dual = k.dual();
        ratlat::in_lat(r, k)
            && rb.iter().all(|v| k.contains(v))
            && l.iter().all(|x| dual.contains(x))
    };
    if spans {
        let k_max = Lattice::from_generators(n, l)?.dual();
        let candidates = ratlat::superlattices_between(&k_min, &k_max)?;
        Ok(LatticeSearch {
            lattices: candidates.into_iter().filter(|k| accept(k)).collect(),
            complete: true,
        })
    } else {
        let candidates = ratlat::superlattices_up_to_index(&k_min, index_bound);
        Ok(LatticeSearch {
            lattices: candidates.into_iter().filter(|k| accept(k)).collect(),
            complete: false,
        })
    }
}

mod polyroots {
    use num_complex::Complex64;

    /// Durand-Kerner simultaneous iteration on a monic real polynomial
    /// given by ascending coefficients (the leading 1 included).
    pub fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
        let n = coeffs.len() - 1;
        if n == 0 {
            return vec![];
        }
        let radius = 1.0
            + coeffs[..n]
                .iter()
                .map(|c| c.abs())
                .fold(0.0f64, f64::max);
        let mut roots: Vec<Complex64> = (0..n)
            .map(|k| {
                // deterministic non-symmetric start angles
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
                Complex64::from_polar(radius, theta)
            })
            .collect();
        let eval = |z: Complex64| -> Complex64 {
            let mut acc = Complex64::new(1.0, 0.0);
            for c in coeffs[..n].iter().rev() {
                acc = acc * z + Complex64::new(*c, 0.0);
            }
            acc
        };
        for _ in 0..500 {
            let mut max_step = 0.0f64;
            for k in 0..n {
                let zk = roots[k];
                let mut denom = Complex64::new(1.0, 0.0);
                for (j, zj) in roots.iter().enumerate() {
                    if j != k {
                        denom *= zk - zj;
                    }
                }
                if denom.norm() == 0.0 {
                    continue;
                }
                let step = eval(zk) / denom;
                roots[k] = zk - step;
                max_step = max_step.max(step.norm());
            }
            if max_step < 1e-14 * radius.max(1.0) {
                break;
            }
        }
        roots
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn roots_of_simple_polynomials() {
            // x^2 - 5x + 6 = (x-2)(x-3)
            let mut r: Vec<f64> = durand_kerner(&[6.0, -5.0, 1.0])
                .iter()
                .map(|z| z.re)
                .collect();
            r.sort_by(f64::total_cmp);
            assert!((r[0] - 2.0).abs() < 1e-9 && (r[1] - 3.0).abs() < 1e-9);

            // x^2 + 1 = (x-i)(x+i)
            let r = durand_kerner(&[1.0, 0.0, 1.0]);
            for z in r {
                assert!((z.norm() - 1.0).abs() < 1e-9);
                assert!(z.re.abs() < 1e-9);
            }
        }

        #[test]
        fn double_root_modulus_is_accurate_enough() {
            // (x-2)^2 = x^2 - 4x + 4
            let r = durand_kerner(&[4.0, -4.0, 1.0]);
            for z in r {
                assert!((z.norm() - 2.0).abs() < 1e-5);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};

    fn scalar_system(r: i64, b: &[(i64, i64)], l: &[(i64, i64)], k: Option<Lattice>) -> AffineSystem {
        AffineSystem::new(
            RatMatrix::from_i64(&[&[(r, 1)]]),
            b.iter().map(|&x| RatVector::from_i64(&[x])).collect(),
            l.iter().map(|&x| RatVector::from_i64(&[x])).collect(),
            k,
        )
        .unwrap()
    }

    fn half_scale_system() -> AffineSystem {
        scalar_system(4, &[(0, 1), (1, 2)], &[(0, 1), (1, 1)], Some(Lattice::standard(1)))
    }

    fn cantor_system(k: Option<Lattice>) -> AffineSystem {
        scalar_system(3, &[(0, 1), (2, 3)], &[(0, 1), (3, 4)], k)
    }

    fn shear_system() -> AffineSystem {
        AffineSystem::new(
            RatMatrix::from_i64(&[&[(2, 1), (1, 1)], &[(0, 1), (2, 1)]]),
            vec![
                RatVector::from_i64(&[(0, 1), (0, 1)]),
                RatVector::from_i64(&[(1, 2), (0, 1)]),
            ],
            vec![
                RatVector::from_i64(&[(0, 1), (0, 1)]),
                RatVector::from_i64(&[(1, 1), (0, 1)]),
            ],
            Some(Lattice::standard(2)),
        )
        .unwrap()
    }

    #[test]
    fn validation_catches_bad_input() {
        // missing origin
        assert!(AffineSystem::new(
            RatMatrix::from_i64(&[&[(4, 1)]]),
            vec![RatVector::from_i64(&[(1, 2)])],
            vec![RatVector::from_i64(&[(0, 1)])],
            None,
        )
        .is_err());
        // repeated point
        assert!(AffineSystem::new(
            RatMatrix::from_i64(&[&[(4, 1)]]),
            vec![
                RatVector::from_i64(&[(0, 1)]),
                RatVector::from_i64(&[(1, 2)]),
                RatVector::from_i64(&[(1, 2)]),
            ],
            vec![RatVector::from_i64(&[(0, 1)])],
            None,
        )
        .is_err());
        // singular matrix
        assert!(AffineSystem::new(
            RatMatrix::from_i64(&[&[(0, 1)]]),
            vec![RatVector::from_i64(&[(0, 1)])],
            vec![RatVector::from_i64(&[(0, 1)])],
            None,
        )
        .is_err());
    }

    #[test]
    fn expansivity_verdicts() {
        assert!(is_expansive(&RatMatrix::from_i64(&[&[(4, 1)]])).unwrap());
        assert!(is_expansive(&RatMatrix::from_i64(&[&[(2, 1), (1, 1)], &[(0, 1), (2, 1)]])).unwrap());
        assert!(!is_expansive(&RatMatrix::scalar(2, &rat(1, 2))).unwrap());
        // margin reporting
        let e = expansivity(&RatMatrix::from_i64(&[&[(4, 1)]])).unwrap();
        assert!((e.margin - 3.0).abs() < 1e-9);
        // rotation-like matrix with unit eigenvalues refuses to answer
        let rot = RatMatrix::from_i64(&[&[(0, 1), (-1, 1)], &[(1, 1), (0, 1)]]);
        assert!(matches!(expansivity(&rot), Err(Error::Indeterminate { .. })));
    }

    #[test]
    fn symmetry_and_selfadjointness() {
        let s = half_scale_system();
        assert!(s.is_symmetric().unwrap());
        assert!(s.is_selfadjoint().unwrap());

        // the ternary system is symmetric for K = 2Z but never selfadjoint
        let k2 = Lattice::scaled_standard(1, &int(2));
        let cantor = cantor_system(Some(k2));
        assert!(cantor.is_symmetric().unwrap());
        let rep = cantor.selfadjointness().unwrap();
        assert!(!rep.selfadjoint());
        assert!(rep.lattice_invariant && rep.image_in_lattice && !rep.dual_contains_l);

        // B escaping R^{-1}K breaks symmetry
        let bad = scalar_system(4, &[(0, 1), (1, 3)], &[(0, 1)], Some(Lattice::standard(1)));
        assert!(!bad.is_symmetric().unwrap());

        let missing = cantor_system(None);
        assert!(matches!(missing.is_symmetric(), Err(Error::MissingLattice)));
    }

    #[test]
    fn dual_system_of_half_scale() {
        let s = half_scale_system();
        let d = s.dual().unwrap();
        assert_eq!(d.matrix(), &RatMatrix::from_i64(&[&[(4, 1)]]));
        assert_eq!(
            d.b_set(),
            &[RatVector::from_i64(&[(0, 1)]), RatVector::from_i64(&[(-1, 4)])]
        );
        assert_eq!(
            d.l_set(),
            &[RatVector::from_i64(&[(0, 1)]), RatVector::from_i64(&[(-2, 1)])]
        );
        assert_eq!(d.lattice().unwrap(), &Lattice::standard(1));
    }

    #[test]
    fn dual_is_involution() {
        for s in [half_scale_system(), shear_system()] {
            let dd = s.dual().unwrap().dual().unwrap();
            assert_eq!(dd, s);
        }
    }

    #[test]
    fn selfadjointness_with_group2_lattice() {
        let b = vec![
            RatVector::from_i64(&[(0, 1), (0, 1)]),
            RatVector::from_i64(&[(1, 2), (0, 1)]),
            RatVector::from_i64(&[(0, 1), (1, 2)]),
        ];
        let l = vec![
            RatVector::from_i64(&[(0, 1), (0, 1)]),
            RatVector::from_i64(&[(2, 3), (-2, 3)]),
            RatVector::from_i64(&[(-2, 3), (2, 3)]),
        ];
        let k3 = Lattice::from_basis(RatMatrix::from_i64(&[
            &[(1, 1), (0, 1)],
            &[(1, 1), (3, 2)],
        ]))
        .unwrap();
        let s = AffineSystem::new(RatMatrix::scalar(2, &int(6)), b, l, Some(k3)).unwrap();
        assert!(s.is_selfadjoint().unwrap());
    }

    #[test]
    fn coset_injectivity() {
        assert!(half_scale_system().coset_injective().unwrap());
        let bad = scalar_system(4, &[(0, 1), (1, 1)], &[(0, 1)], Some(Lattice::standard(1)));
        assert!(!bad.coset_injective().unwrap());
    }

    #[test]
    fn irreducibility() {
        // the shear example keeps B on the x-axis
        assert!(!shear_system().is_irreducible());
        assert!(half_scale_system().is_irreducible());
        // one-dimensional with a nonzero digit
        assert!(scalar_system(3, &[(0, 1), (1, 2)], &[(0, 1)], None).is_irreducible());
    }

    #[test]
    fn lattice_invariance_dualizes() {
        // K in lat(R) iff K dual in lat(R transpose)
        let r = RatMatrix::from_i64(&[&[(2, 1), (1, 1)], &[(0, 1), (2, 1)]]);
        let rt = r.transpose();
        for basis in [
            RatMatrix::identity(2),
            RatMatrix::from_i64(&[&[(1, 1), (0, 1)], &[(0, 1), (2, 1)]]),
            RatMatrix::from_i64(&[&[(1, 1), (1, 2)], &[(0, 1), (1, 2)]]),
        ] {
            let k = Lattice::from_basis(basis).unwrap();
            assert_eq!(ratlat::in_lat(&r, &k), ratlat::in_lat(&rt, &k.dual()));
        }
    }

    #[test]
    fn lattice_search_half_scale_exact() {
        let s = half_scale_system();
        let found = selfadjoint_lattices(s.matrix(), s.b_set(), s.l_set(), 8).unwrap();
        assert!(found.complete);
        let expected = vec![
            Lattice::standard(1),
            Lattice::scaled_standard(1, &int(2)),
        ];
        assert_eq!(found.lattices.len(), 2);
        for e in &expected {
            assert!(found.lattices.contains(e));
        }
        // every returned lattice re-verifies
        for k in &found.lattices {
            assert!(s.with_lattice(Some(k.clone())).unwrap().is_selfadjoint().unwrap());
        }
    }

    #[test]
    fn lattice_search_ternary_empty() {
        let s = cantor_system(None);
        let found = selfadjoint_lattices(s.matrix(), s.b_set(), s.l_set(), 8).unwrap();
        assert!(found.lattices.is_empty());
        assert!(found.complete);
    }

    #[test]
    fn lattice_search_requires_expansive_matrix() {
        let r = RatMatrix::scalar(1, &rat(1, 2));
        let b = vec![RatVector::from_i64(&[(0, 1)]), RatVector::from_i64(&[(1, 2)])];
        let l = vec![RatVector::from_i64(&[(0, 1)])];
        assert!(matches!(
            selfadjoint_lattices(&r, &b, &l, 4),
            Err(Error::NotExpansive)
        ));
    }

    #[test]
    fn tensor_preserves_structure() {
        let s = half_scale_system();
        let trivial = scalar_system(2, &[(0, 1)], &[(0, 1)], Some(Lattice::standard(1)));
        let t = AffineSystem::tensor(&s, &trivial);
        assert!(t.is_selfadjoint().unwrap());

        let square = AffineSystem::tensor(&s, &s);
        assert_eq!(square.dim(), 2);
        assert_eq!(square.b_set().len(), 4);
        assert!(square.is_selfadjoint().unwrap());
        assert!(square.is_hadamard());
        let class = hadamard::classify_small(&square.phase_table().unwrap()).unwrap();
        assert!(class.matches_u(&int(0)));
    }

    #[test]
    fn selfadjointness_unrolls_to_symmetry_of_both_sides() {
        // selfadjoint means: the system and its dual are both symmetric
        let variants = [
            half_scale_system(),
            half_scale_system()
                .with_lattice(Some(Lattice::scaled_standard(1, &int(2))))
                .unwrap(),
            cantor_system(Some(Lattice::scaled_standard(1, &int(2)))),
            shear_system(),
        ];
        for s in variants {
            let selfadjoint = s.is_selfadjoint().unwrap();
            let both_symmetric =
                s.is_symmetric().unwrap() && s.dual().unwrap().is_symmetric().unwrap();
            assert_eq!(selfadjoint, both_symmetric, "{s:?}");
        }
    }

    #[test]
    fn selfadjoint_hadamard_systems_are_coset_injective() {
        // every selfadjoint lattice choice keeps distinct digits in
        // distinct cosets when the table is Hadamard
        let base = half_scale_system();
        let found = selfadjoint_lattices(base.matrix(), base.b_set(), base.l_set(), 8).unwrap();
        assert!(!found.lattices.is_empty());
        for k in found.lattices {
            let s = base.with_lattice(Some(k)).unwrap();
            assert!(s.is_hadamard());
            assert!(s.coset_injective().unwrap());
        }
    }

    #[test]
    fn selfadjoint_tensor_iff_both_factors() {
        let good = half_scale_system();
        let k2 = Lattice::scaled_standard(1, &int(2));
        let bad = cantor_system(Some(k2));
        for (s1, s2) in [(&good, &good), (&good, &bad), (&bad, &good), (&bad, &bad)] {
            let t = AffineSystem::tensor(s1, s2);
            assert_eq!(
                t.is_selfadjoint().unwrap(),
                s1.is_selfadjoint().unwrap() && s2.is_selfadjoint().unwrap()
            );
        }
    }
}
