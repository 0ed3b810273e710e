//! Exact arithmetic with roots of unity: cyclotomic polynomials and two
//! independent decision procedures for whether an integer combination of
//! unit roots vanishes.
//!
//! The polynomial route reduces the exponent polynomial modulo the d-th
//! cyclotomic polynomial and is complete for moderate common denominators d.
//! The prime-tower route descends through the subfield chain one prime at a
//! time; its cost scales with the number of terms and the number of prime
//! factors of d rather than with phi(d), so it stays exact for the very
//! large smooth denominators that arise along transform orbits.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::ratio::{self, Rational};

/// Coefficients (ascending) of the d-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(d: u64) -> Vec<BigInt> {
    assert!(d >= 1);
    let divisors: Vec<u64> = (1..=d).filter(|e| d.is_multiple_of(*e)).collect();
    let mut memo: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for &e in &divisors {
        // x^e - 1 divided by the cyclotomic polynomials of proper divisors
        let mut num = vec![BigInt::zero(); (e + 1) as usize];
        num[0] = -BigInt::one();
        num[e as usize] = BigInt::one();
        for (&f, phi) in memo.iter() {
            if e % f == 0 && f < e {
                num = poly_div_exact(&num, phi);
            }
        }
        memo.insert(e, num);
    }
    memo.remove(&d).expect("d divides itself")
}

/// Remainder of `poly` modulo the d-th cyclotomic polynomial.
pub fn reduce_mod_cyclotomic(poly: &[BigInt], d: u64) -> Vec<BigInt> {
    poly_rem(poly, &cyclotomic_polynomial(d))
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Exact division by a monic divisor; panics on a nonzero remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let (q, r) = poly_div_rem(num, den);
    assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
    q
}

fn poly_rem(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    poly_div_rem(num, den).1
}

/// Division with remainder by a monic divisor.
fn poly_div_rem(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let den = trim(den.to_vec());
    assert!(den.last().is_some_and(One::is_one), "divisor must be monic");
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    while rem.len() > dd {
        let lead = rem.last().expect("nonempty").clone();
        let shift = rem.len() - 1 - dd;
        quot[shift] = lead.clone();
        for (i, c) in den.iter().enumerate() {
            let s = &lead * c;
            rem[shift + i] -= s;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    (quot, rem)
}

/// Normalizes terms `(coeff, exponent)` to exponents in `[0,1)` with equal
/// exponents merged and zero coefficients dropped.
fn normalize(terms: &[(BigInt, Rational)]) -> Vec<(BigInt, Rational)> {
    let mut map: BTreeMap<Rational, BigInt> = BTreeMap::new();
    for (c, e) in terms {
        if c.is_zero() {
            continue;
        }
        let key = ratio::frac_mod_1(e);
        *map.entry(key).or_default() += c;
    }
    map.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (c, e))
        .collect()
}

/// Decides `sum of c_k * exp(2 pi i e_k) == 0` by cyclotomic reduction.
/// Complete; requires the common denominator to stay moderate.
pub fn vanishes_by_cyclotomic_reduction(terms: &[(BigInt, Rational)]) -> bool {
    let terms = normalize(terms);
    if terms.is_empty() {
        return true;
    }
    let d = ratio::lcm_denominator(terms.iter().map(|(_, e)| e))
        .to_u64()
        .expect("denominator too large for cyclotomic reduction");
    assert!(d <= 100_000, "denominator too large for cyclotomic reduction");
    let mut poly = vec![BigInt::zero(); d as usize];
    for (c, e) in &terms {
        let k = (e * Rational::from_integer(BigInt::from(d))).to_integer();
        let k = k.to_u64().expect("exponent index fits") as usize;
        poly[k] += c;
    }
    reduce_mod_cyclotomic(&poly, d).iter().all(Zero::is_zero)
}

const TRIAL_PRIME_BOUND: u64 = 1_000_000;

fn smallest_prime_factor(d: &BigInt) -> Option<BigInt> {
    if d.is_one() {
        return None;
    }
    let two = BigInt::from(2);
    if (d % &two).is_zero() {
        return Some(two);
    }
    let mut p = 3u64;
    while p <= TRIAL_PRIME_BOUND {
        let bp = BigInt::from(p);
        if (&bp * &bp) > *d {
            return Some(d.clone());
        }
        if (d % &bp).is_zero() {
            return Some(bp);
        }
        p += 2;
    }
    None
}

/// Decides `sum of c_k * exp(2 pi i e_k) == 0` by descending the prime
/// tower of subfields. Exact for denominators whose prime factors are below
/// the trial-division bound; returns `false` (no vanishing certified) when a
/// factor cannot be extracted, so a `true` answer is always sound.
pub fn vanishes_by_prime_tower(terms: &[(BigInt, Rational)]) -> bool {
    tower_is_zero(&normalize(terms))
}

fn tower_is_zero(terms: &[(BigInt, Rational)]) -> bool {
    if terms.is_empty() {
        return true;
    }
    let d = ratio::lcm_denominator(terms.iter().map(|(_, e)| e));
    if d.is_one() {
        // a single combined constant term; normalize() removed zeros
        return false;
    }
    let Some(p) = smallest_prime_factor(&d) else {
        return false;
    };
    let m = &d / &p;
    let p_usize = match p.to_usize() {
        // a prime class count beyond usize cannot be enumerated; give up
        Some(v) if v <= 1 << 20 => v,
        _ => return false,
    };
    // digit classes: zeta_d^k = zeta_m^q * zeta_d^r with k = q p + r
    let mut classes: Vec<Vec<(BigInt, Rational)>> = vec![Vec::new(); p_usize];
    if (&m % &p).is_zero() {
        // p^2 | d: {zeta_d^r} is a power basis over the subfield,
        // so every class must vanish separately
        for (c, e) in terms {
            let k = (e * Rational::from_integer(d.clone())).to_integer();
            let (q, r) = k.div_rem(&p);
            classes[r.to_usize().expect("r < p")]
                .push((c.clone(), Rational::new(q, m.clone())));
        }
        classes
            .iter()
            .all(|cls| tower_is_zero(&normalize(cls)))
    } else {
        // p exactly divides d: zeta_d^k = zeta_p^{ka} * zeta_m^{kb};
        // the sum vanishes iff all p class sums agree in the subfield
        let a = mod_inverse(&m, &p);
        let b = mod_inverse(&p, &m);
        for (c, e) in terms {
            let k = (e * Rational::from_integer(d.clone())).to_integer();
            let r = (&k * &a).mod_floor(&p);
            let q = (&k * &b).mod_floor(&m);
            classes[r.to_usize().expect("r < p")]
                .push((c.clone(), Rational::new(q, m.clone())));
        }
        let base = classes[0].clone();
        classes.iter().skip(1).all(|cls| {
            let mut diff = cls.clone();
            diff.extend(base.iter().map(|(c, e)| (-c, e.clone())));
            tower_is_zero(&normalize(&diff))
        })
    }
}

fn mod_inverse(x: &BigInt, modulus: &BigInt) -> BigInt {
    let eg = x.mod_floor(modulus).extended_gcd(modulus);
    assert!(eg.gcd.is_one(), "arguments must be coprime");
    eg.x.mod_floor(modulus)
}

/// Exact test of `sum of exp(2 pi i e_k) == 0` for plain unit coefficients.
pub fn phases_sum_to_zero(exponents: &[Rational]) -> bool {
    let terms: Vec<(BigInt, Rational)> = exponents
        .iter()
        .map(|e| (BigInt::one(), e.clone()))
        .collect();
    vanishes_by_prime_tower(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};
    use proptest::prelude::*;

    fn ones(exps: &[Rational]) -> Vec<(BigInt, Rational)> {
        exps.iter().map(|e| (BigInt::one(), e.clone())).collect()
    }

    fn coeffs(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), coeffs(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), coeffs(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), coeffs(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), coeffs(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), coeffs(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), coeffs(&[1, 0, -1, 0, 1]));
        // degree is Euler phi
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
    }

    #[test]
    fn vanishing_pairs_and_triples() {
        for vanish in [
            vec![int(0), rat(1, 2)],
            vec![int(0), rat(1, 3), rat(2, 3)],
            vec![rat(1, 4), rat(3, 4)],
            vec![int(0), rat(1, 4), rat(1, 2), rat(3, 4)],
            vec![int(0), rat(1, 5), rat(2, 5), rat(3, 5), rat(4, 5)],
            // rotated cube roots
            vec![rat(1, 6), rat(1, 2), rat(5, 6)],
            // two antipodal pairs
            vec![rat(1, 8), rat(5, 8), rat(1, 3), rat(5, 6)],
        ] {
            assert!(vanishes_by_cyclotomic_reduction(&ones(&vanish)), "{vanish:?}");
            assert!(vanishes_by_prime_tower(&ones(&vanish)), "{vanish:?}");
        }
        for nonzero in [
            vec![int(0)],
            vec![int(0), rat(1, 3)],
            vec![int(0), rat(1, 6)],
            vec![int(0), rat(1, 2), rat(1, 2)],
            vec![rat(1, 7), rat(2, 7), rat(3, 7)],
        ] {
            assert!(!vanishes_by_cyclotomic_reduction(&ones(&nonzero)), "{nonzero:?}");
            assert!(!vanishes_by_prime_tower(&ones(&nonzero)), "{nonzero:?}");
        }
    }

    #[test]
    fn tower_handles_huge_smooth_denominators() {
        // an antipodal pair at denominator 2 * 4^40
        let tiny = Rational::new(BigInt::one(), BigInt::from(2) * BigInt::from(4).pow(40));
        let shifted = &tiny + rat(1, 2);
        assert!(vanishes_by_prime_tower(&ones(&[tiny.clone(), shifted])));
        assert!(!vanishes_by_prime_tower(&ones(&[tiny, rat(1, 2)])));
    }

    #[test]
    fn integer_coefficients_cancel() {
        // 2 * zeta_3 + 2 * zeta_3^2 + 2 = 0
        let terms = vec![
            (BigInt::from(2), rat(1, 3)),
            (BigInt::from(2), rat(2, 3)),
            (BigInt::from(2), int(0)),
        ];
        assert!(vanishes_by_cyclotomic_reduction(&terms));
        assert!(vanishes_by_prime_tower(&terms));
        // same exponent accumulating to zero
        let terms = vec![(BigInt::from(2), rat(1, 5)), (BigInt::from(-2), rat(6, 5))];
        assert!(vanishes_by_prime_tower(&terms));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        // the two decision procedures agree on random small inputs
        #[test]
        fn reduction_and_tower_agree(
            nums in proptest::collection::vec((0i64..60, 1i64..13), 1..7),
        ) {
            let exps: Vec<Rational> = nums.iter().map(|&(n, d)| rat(n, d)).collect();
            let terms = ones(&exps);
            prop_assert_eq!(
                vanishes_by_cyclotomic_reduction(&terms),
                vanishes_by_prime_tower(&terms)
            );
        }

        // numerically cross-check the verdict
        #[test]
        fn verdict_matches_float_sum(
            nums in proptest::collection::vec((0i64..24, 1i64..9), 1..6),
        ) {
            let exps: Vec<Rational> = nums.iter().map(|&(n, d)| rat(n, d)).collect();
            let sum: (f64, f64) = exps.iter().fold((0.0, 0.0), |(re, im), e| {
                let th = 2.0 * std::f64::consts::PI * crate::ratio::to_f64(e);
                (re + th.cos(), im + th.sin())
            });
            let is_zero = (sum.0 * sum.0 + sum.1 * sum.1).sqrt() < 1e-9;
            prop_assert_eq!(phases_sum_to_zero(&exps), is_zero);
        }
    }
}
