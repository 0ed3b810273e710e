//! Built-in example systems with their known facts, used as fixtures by the
//! test suites and reachable from the command line as `catalog:<id>`.
//!
//! Expected facts are stored data; the test suites re-derive every one of
//! them through the corresponding library operation, so the catalog never
//! short-circuits a computation.

use crate::error::{Error, Result};
use crate::ratio::{rat, Rational};
use crate::ratlat::{Lattice, RatMatrix, RatVector};
use crate::spectrum::BoxRegion;
use crate::system::AffineSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectedClass {
    N2,
    N3,
    /// Order 4 with the given unimodular parameter, stated as a phase
    /// exponent which the classifier's parameter set must contain.
    N4 { u: Rational },
}

#[derive(Clone, Debug)]
pub enum LatticeExpectation {
    /// The listed lattices are exactly the admissible ones and the search
    /// is expected to be exhaustive.
    Exactly(Vec<Lattice>),
    /// The listed lattices must appear among the results; exhaustiveness is
    /// not asserted.
    Contains(Vec<Lattice>),
    /// Provably no admissible lattice.
    Empty,
    /// No stated expectation.
    Unspecified,
}

#[derive(Clone, Debug)]
pub struct Expected {
    pub order: usize,
    pub hadamard: bool,
    pub class: Option<ExpectedClass>,
    /// Selfadjointness verdict for the lattice stored on the system.
    pub selfadjoint: Option<bool>,
    pub lattices: LatticeExpectation,
    /// Similarity dimension as `ln a / ln b`.
    pub dimension_log_ratio: Option<(u64, u64)>,
    pub irreducible: bool,
    /// Whether the maximality desk check is expected to find candidates
    /// with no witness at any depth.
    pub maximality_counterexample: bool,
    /// Spectral-pair region for the classical picture, when known.
    pub omega: Option<BoxRegion>,
    pub notes: &'static str,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub system: AffineSystem,
    pub expected: Expected,
}

pub const IDS: [&str; 7] = [
    "group1",
    "cantor3",
    "group2",
    "group3",
    "sierpinski2",
    "quartic_u_i",
    "reducible2",
];

pub fn list() -> Vec<&'static str> {
    IDS.to_vec()
}

pub fn get(id: &str) -> Result<CatalogEntry> {
    match id {
        "group1" => Ok(group1()),
        "cantor3" => Ok(cantor3()),
        "group2" => Ok(group2()),
        "group3" => Ok(group3()),
        "sierpinski2" => Ok(sierpinski2()),
        "quartic_u_i" => Ok(quartic_u_i()),
        "reducible2" => Ok(reducible2()),
        other => Err(Error::NotFound(other.to_string())),
    }
}

fn v(coords: &[(i64, i64)]) -> RatVector {
    RatVector::from_i64(coords)
}

fn group1() -> CatalogEntry {
    let system = AffineSystem::new(
        RatMatrix::from_i64(&[&[(4, 1)]]),
        vec![v(&[(0, 1)]), v(&[(1, 2)])],
        vec![v(&[(0, 1)]), v(&[(1, 1)])],
        Some(Lattice::standard(1)),
    )
    .expect("catalog system is valid");
    let omega = BoxRegion::intervals(&[
        (rat(0, 1), rat(1, 4)),
        (rat(1, 2), rat(3, 4)),
    ])
    .expect("two disjoint intervals");
    CatalogEntry {
        id: "group1",
        system,
        expected: Expected {
            order: 2,
            hadamard: true,
            class: Some(ExpectedClass::N2),
            selfadjoint: Some(true),
            lattices: LatticeExpectation::Exactly(vec![
                Lattice::standard(1),
                Lattice::scaled_standard(1, &rat(2, 1)),
            ]),
            dimension_log_ratio: Some((2, 4)),
            irreducible: true,
            maximality_counterexample: false,
            omega: Some(omega),
            notes: "quarter-scaling line system; spectrum {0,1} + 4Z pairs with \
                    the union of two quarter-length intervals",
        },
    }
}

fn cantor3() -> CatalogEntry {
    let system = AffineSystem::new(
        RatMatrix::from_i64(&[&[(3, 1)]]),
        vec![v(&[(0, 1)]), v(&[(2, 3)])],
        vec![v(&[(0, 1)]), v(&[(3, 4)])],
        None,
    )
    .expect("catalog system is valid");
    CatalogEntry {
        id: "cantor3",
        system,
        expected: Expected {
            order: 2,
            hadamard: true,
            class: Some(ExpectedClass::N2),
            selfadjoint: None,
            lattices: LatticeExpectation::Empty,
            dimension_log_ratio: Some((2, 3)),
            irreducible: true,
            maximality_counterexample: false,
            omega: None,
            notes: "middle-third style digits; symmetric choices exist but no \
                    lattice closes the dual condition (3/4 never lands in the \
                    required dual)",
        },
    }
}

fn group2() -> CatalogEntry {
    let system = AffineSystem::new(
        RatMatrix::scalar(2, &rat(6, 1)),
        vec![
            v(&[(0, 1), (0, 1)]),
            v(&[(1, 2), (0, 1)]),
            v(&[(0, 1), (1, 2)]),
        ],
        vec![
            v(&[(0, 1), (0, 1)]),
            v(&[(2, 3), (-2, 3)]),
            v(&[(-2, 3), (2, 3)]),
        ],
        Some(Lattice::scaled_standard(2, &rat(3, 1))),
    )
    .expect("catalog system is valid");
    let known_lattices = vec![
        Lattice::scaled_standard(2, &rat(3, 1)),
        Lattice::from_basis(RatMatrix::from_i64(&[&[(3, 1), (0, 1)], &[(3, 1), (3, 2)]]))
            .expect("nonsingular"),
        Lattice::from_basis(RatMatrix::from_i64(&[&[(1, 1), (0, 1)], &[(1, 1), (3, 2)]]))
            .expect("nonsingular"),
    ];
    CatalogEntry {
        id: "group2",
        system,
        expected: Expected {
            order: 3,
            hadamard: true,
            class: Some(ExpectedClass::N3),
            selfadjoint: Some(true),
            lattices: LatticeExpectation::Contains(known_lattices),
            dimension_log_ratio: Some((3, 6)),
            irreducible: true,
            maximality_counterexample: false,
            omega: None,
            notes: "planar system scaling by six with three digits; the three \
                    listed lattices form a chain, and further admissible \
                    lattices exist since L spans only a line",
        },
    }
}

fn group3() -> CatalogEntry {
    let system = AffineSystem::new(
        RatMatrix::scalar(3, &rat(2, 1)),
        vec![
            v(&[(0, 1), (0, 1), (0, 1)]),
            v(&[(-1, 2), (0, 1), (0, 1)]),
            v(&[(0, 1), (-1, 2), (0, 1)]),
            v(&[(0, 1), (0, 1), (-1, 2)]),
        ],
        vec![
            v(&[(0, 1), (0, 1), (0, 1)]),
            v(&[(-1, 1), (-1, 1), (0, 1)]),
            v(&[(-1, 1), (0, 1), (-1, 1)]),
            v(&[(0, 1), (-1, 1), (-1, 1)]),
        ],
        Some(Lattice::standard(3)),
    )
    .expect("catalog system is valid");
    // columns of -(1/2)[[1,1,-1],[1,-1,1],[-1,1,1]]
    let max_lattice = Lattice::from_basis(RatMatrix::from_i64(&[
        &[(-1, 2), (-1, 2), (1, 2)],
        &[(-1, 2), (1, 2), (-1, 2)],
        &[(1, 2), (-1, 2), (-1, 2)],
    ]))
    .expect("nonsingular");
    CatalogEntry {
        id: "group3",
        system,
        expected: Expected {
            order: 4,
            hadamard: true,
            class: Some(ExpectedClass::N4 { u: rat(1, 2) }),
            selfadjoint: Some(true),
            lattices: LatticeExpectation::Exactly(vec![Lattice::standard(3), max_lattice]),
            dimension_log_ratio: Some((4, 2)),
            irreducible: true,
            maximality_counterexample: false,
            omega: None,
            notes: "doubling in three dimensions with negated half unit \
                    vectors; the standard lattice is minimal and selfdual, \
                    and the dual of the span of L is the unique maximum",
        },
    }
}

fn sierpinski2() -> CatalogEntry {
    let system = AffineSystem::new(
        RatMatrix::scalar(2, &rat(2, 1)),
        vec![
            v(&[(0, 1), (0, 1)]),
            v(&[(1, 2), (0, 1)]),
            v(&[(0, 1), (1, 2)]),
        ],
        vec![
            v(&[(0, 1), (0, 1)]),
            v(&[(2, 3), (-2, 3)]),
            v(&[(-2, 3), (2, 3)]),
        ],
        None,
    )
    .expect("catalog system is valid");
    CatalogEntry {
        id: "sierpinski2",
        system,
        expected: Expected {
            order: 3,
            hadamard: true,
            class: Some(ExpectedClass::N3),
            selfadjoint: None,
            lattices: LatticeExpectation::Empty,
            dimension_log_ratio: Some((3, 2)),
            irreducible: true,
            maximality_counterexample: false,
            omega: None,
            notes: "planar gasket digits under doubling; no lattice choice \
                    closes the dual condition",
        },
    }
}

fn quartic_u_i() -> CatalogEntry {
    let system = AffineSystem::new(
        RatMatrix::scalar(3, &rat(2, 1)),
        vec![
            v(&[(0, 1), (0, 1), (0, 1)]),
            v(&[(1, 2), (0, 1), (0, 1)]),
            v(&[(0, 1), (1, 2), (0, 1)]),
            v(&[(0, 1), (0, 1), (1, 2)]),
        ],
        vec![
            v(&[(0, 1), (0, 1), (0, 1)]),
            v(&[(1, 2), (1, 1), (3, 2)]),
            v(&[(1, 1), (0, 1), (1, 1)]),
            v(&[(3, 2), (1, 1), (1, 2)]),
        ],
        None,
    )
    .expect("catalog system is valid");
    CatalogEntry {
        id: "quartic_u_i",
        system,
        expected: Expected {
            order: 4,
            hadamard: true,
            class: Some(ExpectedClass::N4 { u: rat(1, 4) }),
            selfadjoint: None,
            lattices: LatticeExpectation::Empty,
            dimension_log_ratio: None,
            irreducible: true,
            maximality_counterexample: false,
            omega: None,
            notes: "three-dimensional realization of the order-4 table with a \
                    primitive fourth root; no admissible lattice",
        },
    }
}

fn reducible2() -> CatalogEntry {
    let system = AffineSystem::new(
        RatMatrix::from_i64(&[&[(2, 1), (1, 1)], &[(0, 1), (2, 1)]]),
        vec![v(&[(0, 1), (0, 1)]), v(&[(1, 2), (0, 1)])],
        vec![v(&[(0, 1), (0, 1)]), v(&[(1, 1), (0, 1)])],
        Some(Lattice::standard(2)),
    )
    .expect("catalog system is valid");
    CatalogEntry {
        id: "reducible2",
        system,
        expected: Expected {
            order: 2,
            hadamard: true,
            class: Some(ExpectedClass::N2),
            selfadjoint: Some(true),
            lattices: LatticeExpectation::Unspecified,
            dimension_log_ratio: None,
            irreducible: false,
            maximality_counterexample: true,
            omega: None,
            notes: "shear matrix keeps the digits on the x-axis: the measure \
                    is Lebesgue on a segment, the transform has the sinc \
                    closed form, and candidates with negative integer first \
                    coordinate defeat the maximality check",
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard;
    use crate::ratio::{rat, to_f64};
    use crate::system;
    use crate::transform;

    #[test]
    fn listing_and_lookup() {
        assert_eq!(list().len(), 7);
        for id in IDS {
            let e = get(id).unwrap();
            assert_eq!(e.id, id);
        }
        assert!(matches!(get("nope"), Err(Error::NotFound(_))));
    }

    #[test]
    fn expected_order_and_hadamard_rederived() {
        for id in IDS {
            let e = get(id).unwrap();
            assert_eq!(e.system.b_set().len(), e.expected.order, "{id}");
            assert_eq!(e.system.l_set().len(), e.expected.order, "{id}");
            let table = e.system.phase_table().unwrap();
            assert_eq!(
                hadamard::is_generalized_hadamard(&table),
                e.expected.hadamard,
                "{id}"
            );
            assert!(system::is_expansive(e.system.matrix()).unwrap(), "{id}");
            assert_eq!(e.system.is_irreducible(), e.expected.irreducible, "{id}");
        }
    }

    #[test]
    fn expected_classification_rederived() {
        for id in IDS {
            let e = get(id).unwrap();
            let Some(expected) = &e.expected.class else {
                continue;
            };
            let class = hadamard::classify_small(&e.system.phase_table().unwrap()).unwrap();
            match expected {
                ExpectedClass::N2 => assert_eq!(class, hadamard::HadamardClass::N2, "{id}"),
                ExpectedClass::N3 => {
                    assert!(matches!(class, hadamard::HadamardClass::N3 { .. }), "{id}")
                }
                ExpectedClass::N4 { u } => {
                    assert!(class.matches_u(u), "{id}: {class:?} lacks u={u}")
                }
            }
        }
    }

    #[test]
    fn expected_selfadjointness_rederived() {
        for id in IDS {
            let e = get(id).unwrap();
            match e.expected.selfadjoint {
                Some(want) => {
                    assert_eq!(e.system.is_selfadjoint().unwrap(), want, "{id}")
                }
                None => assert!(e.system.lattice().is_none(), "{id}"),
            }
        }
    }

    #[test]
    fn expected_lattices_rederived() {
        for id in IDS {
            let e = get(id).unwrap();
            let search = system::selfadjoint_lattices(
                e.system.matrix(),
                e.system.b_set(),
                e.system.l_set(),
                12,
            );
            let search = match (&e.expected.lattices, search) {
                (LatticeExpectation::Unspecified, Err(Error::RankDeficient)) => {
                    // reducible systems have no full-rank minimal anchor
                    assert!(!e.system.is_irreducible(), "{id}");
                    continue;
                }
                (_, Err(err)) => panic!("{id}: {err}"),
                (_, Ok(s)) => s,
            };
            match &e.expected.lattices {
                LatticeExpectation::Exactly(want) => {
                    assert!(search.complete, "{id}");
                    assert_eq!(search.lattices.len(), want.len(), "{id}: {search:?}");
                    for k in want {
                        assert!(search.lattices.contains(k), "{id}");
                    }
                }
                LatticeExpectation::Contains(want) => {
                    for k in want {
                        assert!(search.lattices.contains(k), "{id}: missing {k}");
                    }
                }
                LatticeExpectation::Empty => {
                    assert!(search.lattices.is_empty(), "{id}: {search:?}")
                }
                LatticeExpectation::Unspecified => {}
            }
            // every returned lattice re-verifies the three conditions
            for k in &search.lattices {
                let sys = e.system.with_lattice(Some(k.clone())).unwrap();
                assert!(sys.is_selfadjoint().unwrap(), "{id}");
            }
        }
    }

    #[test]
    fn expected_dimensions_rederived() {
        for id in IDS {
            let e = get(id).unwrap();
            match e.expected.dimension_log_ratio {
                Some((a, b)) => {
                    let d =
                        transform::fractal_dimension(e.system.matrix(), e.system.b_set()).unwrap();
                    assert_eq!(d, (a as f64).ln() / (b as f64).ln(), "{id}");
                }
                None => {
                    if id == "reducible2" {
                        assert!(transform::fractal_dimension(
                            e.system.matrix(),
                            e.system.b_set()
                        )
                        .is_err());
                    }
                }
            }
        }
    }

    #[test]
    fn group3_maximal_lattice_matches_inverse_of_l_span() {
        // the stated maximal lattice is the dual of the lattice generated by
        // L, whose matrix is the inverse of the (symmetric) L matrix
        let e = get("group3").unwrap();
        let l_lattice = Lattice::from_generators(3, e.system.l_set()).unwrap();
        let LatticeExpectation::Exactly(list) = &e.expected.lattices else {
            panic!("group3 stores an exact expectation")
        };
        assert!(list.contains(&l_lattice.dual()));
        // covolume 1/2 gives index 2 over the standard lattice
        assert_eq!(l_lattice.dual().covolume(), rat(1, 2));
        assert_eq!(
            Lattice::standard(3).index_in(&l_lattice.dual()).unwrap(),
            2.into()
        );
    }

    #[test]
    fn group1_spectral_region_measure() {
        let e = get("group1").unwrap();
        let omega = e.expected.omega.unwrap();
        assert_eq!(omega.measure(), rat(1, 2));
        assert_eq!(to_f64(&omega.measure()), 0.5);
        assert_eq!(omega.dim(), 1);
    }
}
