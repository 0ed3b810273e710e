//! Full-rank lattices with a canonical rational basis.
//!
//! A lattice is stored as the matrix whose columns generate it, together with
//! the unique column-Hermite representative of that column span. Equality,
//! ordering and hashing all go through the canonical form, so two lattices
//! compare equal exactly when they contain the same points.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::{self, Rational};
use crate::ratlat::hnf::{self, IntMatrix};
use crate::ratlat::{RatMatrix, RatVector};

#[derive(Clone)]
pub struct Lattice {
    basis: RatMatrix,
    canonical: RatMatrix,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}
impl Eq for Lattice {}

impl PartialOrd for Lattice {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Lattice {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical.cmp(&other.canonical)
    }
}
impl std::hash::Hash for Lattice {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical.hash(state)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice{:?}", self.canonical)
    }
}
impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical)
    }
}

impl Serialize for Lattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.canonical.serialize(s)
    }
}
impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = RatMatrix::deserialize(d)?;
        Lattice::from_basis(m).map_err(serde::de::Error::custom)
    }
}

impl Lattice {
    /// Canonicalizes a basis whose columns generate the lattice.
    pub fn from_basis(basis: RatMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "lattice basis must be square, got {}x{}",
                basis.n_rows(),
                basis.n_cols()
            )));
        }
        if basis.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let canonical = canonical_form(&basis);
        Ok(Self { basis, canonical })
    }

    /// Lattice generated by an arbitrary finite set of vectors; fails with
    /// `RankDeficient` if they do not span.
    pub fn from_generators(dim: usize, gens: &[RatVector]) -> Result<Self> {
        let nonzero: Vec<&RatVector> = gens.iter().filter(|g| !g.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::RankDeficient);
        }
        for g in &nonzero {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch(
                    "generator dimension differs from ambient dimension".into(),
                ));
            }
        }
        let all: Vec<Rational> = nonzero.iter().flat_map(|g| g.iter().cloned()).collect();
        let d = ratio::lcm_denominator(all.iter());
        let df = Rational::from_integer(d.clone());
        let int_cols: IntMatrix = (0..dim)
            .map(|i| {
                nonzero
                    .iter()
                    .map(|g| (g.entry(i) * &df).to_integer())
                    .collect()
            })
            .collect();
        let (h, rank) = hnf::column_hnf(&int_cols);
        if rank < dim {
            return Err(Error::RankDeficient);
        }
        let basis = RatMatrix::from_rows(
            h.iter()
                .map(|row| {
                    row.iter()
                        .map(|x| Rational::new(x.clone(), d.clone()))
                        .collect()
                })
                .collect(),
        );
        Lattice::from_basis(basis)
    }

    /// The standard integer lattice.
    pub fn standard(n: usize) -> Self {
        Lattice::from_basis(RatMatrix::identity(n)).expect("identity is nonsingular")
    }

    /// Scaled integer lattice `c * Z^n`.
    pub fn scaled_standard(n: usize, c: &Rational) -> Self {
        Lattice::from_basis(RatMatrix::scalar(n, c)).expect("nonzero scalar")
    }

    pub fn dim(&self) -> usize {
        self.canonical.n_rows()
    }

    /// The basis supplied at construction.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    /// The unique column-Hermite representative.
    pub fn canonical(&self) -> &RatMatrix {
        &self.canonical
    }

    /// Positive determinant of the canonical basis (the covolume).
    pub fn covolume(&self) -> Rational {
        self.canonical.det().abs()
    }

    /// The dual lattice: all `s` with integral `s . k` for every lattice
    /// point `k`. Its matrix is the inverse transpose.
    pub fn dual(&self) -> Lattice {
        let m = self
            .canonical
            .transpose()
            .inverse()
            .expect("lattice bases are nonsingular");
        Lattice::from_basis(m).expect("inverse of nonsingular basis is nonsingular")
    }

    /// Exact membership test.
    pub fn contains(&self, v: &RatVector) -> bool {
        if v.dim() != self.dim() {
            return false;
        }
        let inv = self
            .canonical
            .inverse()
            .expect("lattice bases are nonsingular");
        inv.matvec(v).is_integral()
    }

    /// If `self` is a sublattice of `other`, returns the integral factor `M`
    /// with `self_basis = other_basis * M`.
    pub fn factor_through(&self, other: &Lattice) -> Option<RatMatrix> {
        if self.dim() != other.dim() {
            return None;
        }
        let m = other
            .canonical
            .inverse()
            .expect("lattice bases are nonsingular")
            .mul(&self.canonical);
        m.is_integral().then_some(m)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.factor_through(other).is_some()
    }

    /// Group index `[other : self]`; requires `self` to be a sublattice.
    pub fn index_in(&self, other: &Lattice) -> Result<BigInt> {
        let m = self.factor_through(other).ok_or(Error::NotSublattice)?;
        Ok(m.det().abs().to_integer())
    }
}

fn canonical_form(basis: &RatMatrix) -> RatMatrix {
    let n = basis.n_rows();
    let d = ratio::lcm_denominator((0..n).flat_map(|i| (0..n).map(move |j| basis.at(i, j))));
    let df = Rational::from_integer(d.clone());
    let int_mat: IntMatrix = (0..n)
        .map(|i| (0..n).map(|j| (basis.at(i, j) * &df).to_integer()).collect())
        .collect();
    let (h, rank) = hnf::column_hnf(&int_mat);
    debug_assert_eq!(rank, n);
    RatMatrix::from_rows(
        h.iter()
            .map(|row| {
                row.iter()
                    .map(|x| Rational::new(x.clone(), d.clone()))
                    .collect()
            })
            .collect(),
    )
}

/// True when `R` maps the lattice into itself, i.e. the conjugated matrix
/// is integral.
pub fn in_lat(r: &RatMatrix, k: &Lattice) -> bool {
    let kb = k.canonical();
    let conj = kb
        .inverse()
        .expect("lattice bases are nonsingular")
        .mul(r)
        .mul(kb);
    conj.is_integral()
}

/// Representatives of the finite group `R^{-1}(K) / K`, exactly
/// `|det R|` of them. Requires `K` invariant under `R`.
pub fn coset_reps(r: &RatMatrix, k: &Lattice) -> Result<Vec<RatVector>> {
    if !in_lat(r, k) {
        return Err(Error::NotInvariant);
    }
    let kb = k.canonical();
    // A = R^{-1} K contains K; the transition matrix is conj = A_basis^{-1} K_basis
    let a_basis = r.inverse().map_err(|_| Error::SingularMatrix)?.mul(kb);
    let m = a_basis
        .inverse()
        .expect("nonsingular")
        .mul(kb);
    debug_assert!(m.is_integral());
    let int_m: IntMatrix = (0..m.n_rows())
        .map(|i| (0..m.n_cols()).map(|j| m.at(i, j).to_integer()).collect())
        .collect();
    let snf = hnf::smith_normal_form(&int_m);
    let p_inv = int_inverse(&snf.p);
    let adapted = a_basis.mul(&int_to_rat(&p_inv));
    let diag: Vec<u64> = (0..m.n_rows())
        .map(|i| snf.d[i][i].to_u64().expect("index fits in u64"))
        .collect();
    let mut reps = Vec::new();
    let mut counter = vec![0u64; diag.len()];
    loop {
        let coeffs = RatVector::new(counter.iter().map(|&c| ratio::int(c as i64)).collect());
        reps.push(adapted.matvec(&coeffs));
        let mut p = 0;
        loop {
            if p == counter.len() {
                reps.sort();
                return Ok(reps);
            }
            counter[p] += 1;
            if counter[p] < diag[p] {
                break;
            }
            counter[p] = 0;
            p += 1;
        }
    }
}

fn int_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    let rm = RatMatrix::from_rows(
        m.iter()
            .map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect(),
    );
    let inv = rm.inverse().expect("unimodular matrices are invertible");
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = inv.at(i, j);
                    debug_assert!(e.denom().is_one());
                    e.to_integer()
                })
                .collect()
        })
        .collect()
}

fn int_to_rat(m: &IntMatrix) -> RatMatrix {
    RatMatrix::from_rows(
        m.iter()
            .map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect(),
    )
}

/// Smallest `R`-invariant lattice containing the generators. Needs an
/// integral characteristic polynomial (otherwise no invariant lattice can
/// exist); the generators together with their first `n-1` iterates must span.
pub fn minimal_invariant_lattice(r: &RatMatrix, gens: &[RatVector]) -> Result<Lattice> {
    let n = r.n_rows();
    let cp = r.char_poly();
    if !cp.iter().all(ratio::is_integer) {
        return Err(Error::NoInvariantLattice);
    }
    let mut all = Vec::new();
    let mut powers = RatMatrix::identity(n);
    for _ in 0..n {
        for g in gens {
            all.push(powers.matvec(g));
        }
        powers = r.mul(&powers);
    }
    let k = Lattice::from_generators(n, &all)?;
    // Cayley-Hamilton makes this invariant; check anyway.
    if !in_lat(r, &k) {
        return Err(Error::Internal(
            "generated lattice failed the invariance check".into(),
        ));
    }
    Ok(k)
}

/// All lattices between `lo` and `hi` inclusive, via the subgroups of the
/// finite quotient `hi / lo`.
pub fn superlattices_between(lo: &Lattice, hi: &Lattice) -> Result<Vec<Lattice>> {
    let m = lo.factor_through(hi).ok_or(Error::NotSublattice)?;
    let n = lo.dim();
    let int_m: IntMatrix = (0..n)
        .map(|i| (0..n).map(|j| m.at(i, j).to_integer()).collect())
        .collect();
    let snf = hnf::smith_normal_form(&int_m);
    let p_inv = int_inverse(&snf.p);
    // hi = adapted * Z^n and lo = adapted * diag(d) * Z^n
    let adapted = hi.canonical().mul(&int_to_rat(&p_inv));
    let diag: Vec<u64> = (0..n)
        .map(|i| snf.d[i][i].to_u64().expect("index fits in u64"))
        .collect();
    let order: u64 = diag.iter().product();
    if order > 100_000 {
        return Err(Error::Internal(format!(
            "quotient of order {order} too large to enumerate"
        )));
    }
    let lo_cols = lo.canonical().cols();
    let mut out = BTreeSet::new();
    for subgroup in subgroups_of_product(&diag) {
        let mut gens = lo_cols.clone();
        for elem in &subgroup {
            let coeffs =
                RatVector::new(elem.iter().map(|&c| ratio::int(c as i64)).collect());
            gens.push(adapted.matvec(&coeffs));
        }
        out.insert(Lattice::from_generators(n, &gens)?);
    }
    Ok(out.into_iter().collect())
}

/// All subgroups of `Z/d1 x ... x Z/dn`, each returned as its full element
/// set. Intended for small quotients.
fn subgroups_of_product(diag: &[u64]) -> Vec<BTreeSet<Vec<u64>>> {
    let zero = vec![0u64; diag.len()];
    let elements = {
        let mut out = vec![];
        let mut counter = zero.clone();
        'outer: loop {
            out.push(counter.clone());
            let mut p = 0;
            loop {
                if p == counter.len() {
                    break 'outer;
                }
                counter[p] += 1;
                if counter[p] < diag[p] {
                    break;
                }
                counter[p] = 0;
                p += 1;
            }
        }
        out
    };
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(diag)
            .map(|((x, y), d)| if *d == 0 { 0 } else { (x + y) % d })
            .collect()
    };
    let closure = |seed: &BTreeSet<Vec<u64>>| -> BTreeSet<Vec<u64>> {
        let mut set = seed.clone();
        let mut frontier: Vec<Vec<u64>> = set.iter().cloned().collect();
        while let Some(g) = frontier.pop() {
            for h in set.clone() {
                let s = add(&g, &h);
                if set.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        set
    };
    let trivial: BTreeSet<Vec<u64>> = [zero].into_iter().collect();
    let mut found: BTreeSet<BTreeSet<Vec<u64>>> = [trivial.clone()].into_iter().collect();
    let mut frontier = vec![trivial];
    while let Some(s) = frontier.pop() {
        for g in &elements {
            if s.contains(g) {
                continue;
            }
            let mut seed = s.clone();
            seed.insert(g.clone());
            let t = closure(&seed);
            if found.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    found.into_iter().collect()
}

/// All sublattices of the given index.
pub fn sublattices_of_index(l: &Lattice, index: u64) -> Vec<Lattice> {
    let n = l.dim();
    hnf::hnf_matrices_of_det(n, index)
        .into_iter()
        .map(|h| {
            let basis = l.canonical().mul(&int_to_rat(&h));
            Lattice::from_basis(basis).expect("nonsingular by construction")
        })
        .collect()
}

/// All superlattices of index at most `bound`, sorted and deduplicated.
pub fn superlattices_up_to_index(l: &Lattice, bound: u64) -> Vec<Lattice> {
    let dual = l.dual();
    let mut out = BTreeSet::new();
    for m in 1..=bound.max(1) {
        for sub in sublattices_of_index(&dual, m) {
            out.insert(sub.dual());
        }
    }
    out.into_iter().collect()
}

/// All lattice points with max-norm at most `bound`, sorted.
pub fn points_in_box(l: &Lattice, bound: &Rational) -> Vec<RatVector> {
    if bound.is_negative() {
        return vec![];
    }
    let n = l.dim();
    let inv_norm = l
        .canonical()
        .inverse()
        .expect("lattice bases are nonsingular")
        .norm_inf();
    let c = ratio::ceil_to_i64(&(inv_norm * bound));
    let mut out = Vec::new();
    let mut counter = vec![-c; n];
    'outer: loop {
        let coeffs = RatVector::new(counter.iter().map(|&x| ratio::int(x)).collect());
        let pt = l.canonical().matvec(&coeffs);
        if pt.norm_inf() <= *bound {
            out.push(pt);
        }
        let mut p = 0;
        loop {
            if p == n {
                break 'outer;
            }
            counter[p] += 1;
            if counter[p] <= c {
                break;
            }
            counter[p] = -c;
            p += 1;
        }
    }
    out.sort();
    out
}
