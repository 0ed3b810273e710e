//! Cross-module properties exercised on every catalog system.

use num_complex::Complex64;
use sfl::catalog;
use sfl::ratlat::RatVector;
use sfl::transform::{MaskEvaluator, MuHatEvaluator};

fn deterministic_points(dim: usize, count: usize, radius: f64, mut state: u64) -> Vec<Vec<f64>> {
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state as f64 / u64::MAX as f64) * 2.0 * radius - radius
    };
    (0..count)
        .map(|_| (0..dim).map(|_| next()).collect())
        .collect()
}

#[test]
fn functional_equation_on_all_catalog_systems() {
    for id in catalog::IDS {
        let sys = catalog::get(id).unwrap().system;
        let eval = MuHatEvaluator::new(sys.matrix(), sys.b_set()).unwrap();
        let mask = MaskEvaluator::new(sys.b_set());
        let contraction = eval.rstar_inv().to_f64();
        for t in deterministic_points(sys.dim(), 1000, 9.0, 0x9e3779b97f4a7c15) {
            let contracted: Vec<f64> = contraction
                .iter()
                .map(|row| row.iter().zip(&t).map(|(a, b)| a * b).sum())
                .collect();
            let lhs = eval.eval(&t);
            let rhs = eval.eval(&contracted);
            let diff = (lhs.value - mask.eval(&t) * rhs.value).norm();
            assert!(
                diff <= lhs.bound + rhs.bound + 1e-11,
                "{id}: t={t:?} diff={diff}"
            );
        }
    }
}

#[test]
fn transform_is_hermitian_and_contractive_everywhere() {
    for id in catalog::IDS {
        let sys = catalog::get(id).unwrap().system;
        let eval = MuHatEvaluator::new(sys.matrix(), sys.b_set()).unwrap();
        for t in deterministic_points(sys.dim(), 300, 12.0, 0xdeadbeefdeadbeef) {
            let plus = eval.eval(&t);
            let neg: Vec<f64> = t.iter().map(|x| -x).collect();
            let minus = eval.eval(&neg);
            assert!(plus.value.norm() <= 1.0 + 1e-12, "{id}");
            assert!(
                (plus.value - minus.value.conj()).norm() <= plus.bound + minus.bound + 1e-12,
                "{id}"
            );
        }
    }
}

#[test]
fn star_orbit_invariance_on_dual_points_of_selfadjoint_systems() {
    for id in catalog::IDS {
        let sys = catalog::get(id).unwrap().system;
        let Some(k) = sys.lattice() else { continue };
        if !sys.is_selfadjoint().unwrap() {
            continue;
        }
        let eval = MuHatEvaluator::new(sys.matrix(), sys.b_set()).unwrap();
        let mask = MaskEvaluator::new(sys.b_set());
        let r_star = sys.matrix_star();
        let window = sfl::ratlat::points_in_box(&k.dual(), &sfl::ratio::int(3));
        for u in window {
            let ru = r_star.matvec(&u);
            // the defining integrality makes the mask exactly one there
            assert!(mask.is_exactly_one(&ru), "{id}: {u:?}");
            let a = eval.eval_rational(&ru);
            let b = eval.eval_rational(&u);
            if a.exact_zero || b.exact_zero {
                assert_eq!(a.exact_zero, b.exact_zero, "{id}: {u:?}");
            } else {
                assert!(
                    (a.value - b.value).norm() <= a.bound + b.bound + 1e-12,
                    "{id}: {u:?}"
                );
            }
        }
    }
}

#[test]
fn exact_zero_short_circuit_is_sound() {
    // whenever the exact-zero flag fires, an explicit factor vanishes, and
    // the float path agrees to its own tolerance
    for id in catalog::IDS {
        let sys = catalog::get(id).unwrap().system;
        let eval = MuHatEvaluator::new(sys.matrix(), sys.b_set()).unwrap();
        let dim = sys.dim();
        for k in -40i64..=40 {
            let mut coords = vec![(0i64, 1i64); dim];
            coords[0] = (k, 4);
            let t = RatVector::from_i64(&coords);
            let exact = eval.eval_rational(&t);
            let float = eval.eval(&t.to_f64());
            if exact.exact_zero {
                assert_eq!(exact.value, Complex64::new(0.0, 0.0));
                assert!(float.value.norm() <= float.bound + 1e-10, "{id}: k={k}");
            } else {
                assert!(
                    (exact.value - float.value).norm() <= exact.bound + float.bound + 1e-10,
                    "{id}: k={k}"
                );
            }
        }
    }
}

#[test]
fn level_measure_transform_converges_to_muhat() {
    // weak convergence at the rate of the contraction tail: the level-k
    // discrete transform is the k-step product truncation, so its defect is
    // bounded by the same tail constant applied to the orbit point
    for id in ["group1", "group2", "reducible2"] {
        let sys = catalog::get(id).unwrap().system;
        let eval = MuHatEvaluator::new(sys.matrix(), sys.b_set()).unwrap();
        let depth = if sys.dim() == 1 { 9 } else { 5 };
        let level =
            sfl::transform::measure_level(sys.matrix(), sys.b_set(), depth, 1_000_000).unwrap();
        let contraction = eval.rstar_inv().to_f64();
        for t in deterministic_points(sys.dim(), 20, 2.0, 0x1234567789abcdef) {
            let approx = level.transform(&t);
            let target = eval.eval(&t);
            let mut orbit = t.clone();
            for _ in 0..=depth {
                orbit = contraction
                    .iter()
                    .map(|row| row.iter().zip(&orbit).map(|(a, b)| a * b).sum())
                    .collect();
            }
            let tail = orbit.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let allowed = eval.tail_constant() * tail + target.bound + 1e-10;
            let diff = (approx - target.value).norm();
            assert!(diff <= allowed, "{id}: t={t:?} diff={diff} allowed={allowed}");
        }
    }
}
