//! Univariate exact polynomial arithmetic and real-root isolation.
//!
//! Polynomials are dense `Vec<Rat>` coefficient vectors, constant term
//! first. Isolation works on the square-free part with Descartes' rule and
//! bisection; Sturm sequences serve as the independent uniqueness check.

use crate::rat::{rat, Rat};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub type UniPoly = Vec<Rat>;

pub fn trim(mut p: UniPoly) -> UniPoly {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

pub fn degree(p: &UniPoly) -> usize {
    let p = p;
    let mut d = p.len();
    while d > 1 && p[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

pub fn is_zero_poly(p: &UniPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn eval(p: &UniPoly, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative(p: &UniPoly) -> UniPoly {
    if p.len() <= 1 {
        return vec![Rat::zero()];
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect(),
    )
}

pub fn add(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn neg(a: &UniPoly) -> UniPoly {
    a.iter().map(|c| -c.clone()).collect()
}

pub fn mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if is_zero_poly(a) || is_zero_poly(b) {
        return vec![Rat::zero()];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    trim(out)
}

/// Euclidean division: returns `(quotient, remainder)`.
pub fn div_rem(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    let b = trim(b.clone());
    assert!(!is_zero_poly(&b), "division by zero polynomial");
    let mut rem = trim(a.clone());
    let db = degree(&b);
    let lead = b[db].clone();
    if degree(&rem) < db || is_zero_poly(&rem) {
        return (vec![Rat::zero()], rem);
    }
    let mut quo = vec![Rat::zero(); degree(&rem) - db + 1];
    while !is_zero_poly(&rem) && degree(&rem) >= db {
        let dr = degree(&rem);
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        quo[shift] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[i + shift] -= t;
        }
        rem = trim(rem);
        if dr == 0 {
            break;
        }
    }
    (trim(quo), rem)
}

/// Monic gcd.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut x = trim(a.clone());
    let mut y = trim(b.clone());
    while !is_zero_poly(&y) {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    let d = degree(&x);
    if x[d].is_zero() {
        return vec![Rat::zero()];
    }
    let lead = x[d].clone();
    x.iter().map(|c| c / &lead).collect()
}

/// Square-free part `p / gcd(p, p')`, made monic.
pub fn square_free(p: &UniPoly) -> UniPoly {
    let p = trim(p.clone());
    if degree(&p) == 0 {
        return vec![Rat::one()];
    }
    let g = gcd(&p, &derivative(&p));
    if degree(&g) == 0 {
        let lead = p[degree(&p)].clone();
        return p.iter().map(|c| c / &lead).collect();
    }
    let (q, r) = div_rem(&p, &g);
    debug_assert!(is_zero_poly(&r));
    let q = trim(q);
    let lead = q[degree(&q)].clone();
    q.iter().map(|c| c / &lead).collect()
}

/// Sturm sequence of a square-free polynomial.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![trim(p.clone()), derivative(p)];
    loop {
        let n = seq.len();
        if is_zero_poly(&seq[n - 1]) {
            seq.pop();
            return seq;
        }
        if degree(&seq[n - 1]) == 0 {
            return seq;
        }
        let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
        if is_zero_poly(&r) {
            return seq;
        }
        seq.push(neg(&r));
    }
}

fn sign_changes(values: impl Iterator<Item = Rat>) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for v in values {
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                changes += 1;
            }
        }
        last = Some(s);
    }
    changes
}

/// Number of distinct real roots of square-free `p` in the half-open
/// interval `(lo, hi]`, by Sturm's theorem.
pub fn sturm_count(seq: &[UniPoly], lo: &Rat, hi: &Rat) -> usize {
    let at = |x: &Rat| sign_changes(seq.iter().map(|q| eval(q, x)));
    at(lo) - at(hi)
}

/// Descartes' bound for the number of positive roots (counts sign changes
/// of the coefficient sequence).
pub fn descartes_positive_bound(p: &UniPoly) -> usize {
    sign_changes(p.iter().cloned())
}

/// A Cauchy-style bound: every real root has |x| <= 1 + max |a_i / a_n|.
pub fn root_bound(p: &UniPoly) -> Rat {
    let p = trim(p.clone());
    let d = degree(&p);
    let lead = p[d].abs();
    let mut m = Rat::zero();
    for c in &p[..d] {
        let q = c.abs() / &lead;
        if q > m {
            m = q;
        }
    }
    m + rat(1)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RootError {
    #[error("expected exactly one positive real root, found {0}")]
    PositiveRootCount(usize),
    #[error("polynomial is constant")]
    Constant,
}

/// An isolating interval `[lo, hi]` for a single simple real root of the
/// (square-free) polynomial `poly`; `p(lo)` and `p(hi)` have opposite signs
/// unless the root is rational and the interval has collapsed onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub poly: UniPoly,
    pub lo: Rat,
    pub hi: Rat,
}

impl IsolatedRoot {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Halves the interval until its width is at most `eps`.
    pub fn refine_to(&mut self, eps: &Rat) {
        while !self.is_exact() && self.width() > *eps {
            let mid = (&self.lo + &self.hi) / rat(2);
            let v = eval(&self.poly, &mid);
            if v.is_zero() {
                self.lo = mid.clone();
                self.hi = mid;
                return;
            }
            let at_lo = eval(&self.poly, &self.lo);
            if at_lo.is_positive() == v.is_positive() {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }

    /// True if the closed interval contains `x`.
    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

/// Isolates the unique positive real root of `p`.
///
/// The positive-root count of the square-free part is verified to be exactly
/// one by a Sturm count on `(0, bound]`; anything else is an error. The
/// returned interval is narrowed below `1e-12`.
pub fn isolate_unique_positive_root(p: &UniPoly) -> Result<IsolatedRoot, RootError> {
    let sf = square_free(p);
    if degree(&sf) == 0 {
        return Err(RootError::Constant);
    }
    let seq = sturm_sequence(&sf);
    let bound = root_bound(&sf);
    let count = sturm_count(&seq, &Rat::zero(), &bound);
    if count != 1 {
        return Err(RootError::PositiveRootCount(count));
    }
    // Bisect (0, bound] down to a sign-change bracket.
    let lo = Rat::zero();
    let mut hi = bound;
    // Ensure hi is strictly beyond the root so p(hi) != 0.
    while eval(&sf, &hi).is_zero() {
        hi += Rat::one();
    }
    let target = Rat::new(1.into(), num_bigint::BigInt::from(10u8).pow(12));
    let mut root = IsolatedRoot {
        poly: sf.clone(),
        lo: lo.clone(),
        hi: hi.clone(),
    };
    // First find an interval with a strict sign change (p(0) may be zero:
    // then 0 is a root but not the positive one we want).
    if eval(&sf, &lo).is_zero() {
        // step just right of zero: positive root stays inside (d, bound]
        let mut d = Rat::new(1.into(), 2.into());
        while sturm_count(&seq, &d, &root.hi) != 1 {
            d /= rat(2);
        }
        root.lo = d;
    }
    root.refine_to(&target);
    // The endpoints of an inexact interval must bracket with opposite signs.
    if !root.is_exact() {
        debug_assert!(
            eval(&sf, &root.lo).is_negative() != eval(&sf, &root.hi).is_negative()
        );
    }
    Ok(root)
}

/// Exact sign of `p` at `x`: -1, 0, +1.
pub fn sign_at(p: &UniPoly, x: &Rat) -> Ordering {
    eval(p, x).cmp(&Rat::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn p(coeffs: &[i64]) -> UniPoly {
        coeffs.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = div_rem(&a, &b);
        assert_eq!(q, p(&[1, 1]));
        assert!(is_zero_poly(&r));
        let g = gcd(&a, &p(&[1, 1]));
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn square_free_strips_multiplicity() {
        // (x-2)^2 (x+1) = x^3 - 3x^2 + 4
        let q = p(&[4, 0, -3, 1]);
        let sf = square_free(&q);
        // (x-2)(x+1) = x^2 - x - 2
        assert_eq!(sf, p(&[-2, -1, 1]));
    }

    #[test]
    fn sturm_counts_roots() {
        // x^3 - x has roots -1, 0, 1
        let q = p(&[0, -1, 0, 1]);
        let seq = sturm_sequence(&q);
        assert_eq!(sturm_count(&seq, &rat(-2), &rat(2)), 3);
        assert_eq!(sturm_count(&seq, &rat(0), &rat(2)), 1);
    }

    #[test]
    fn isolates_rational_root_exactly_or_tightly() {
        // x^2 - 1: unique positive root 1
        let root = isolate_unique_positive_root(&p(&[-1, 0, 1])).unwrap();
        assert!(root.contains(&rat(1)));
        assert!(root.width() <= Rat::new(1.into(), num_bigint::BigInt::from(10u8).pow(12)) || root.is_exact());
    }

    #[test]
    fn rejects_zero_or_many_positive_roots() {
        // x^2 + 1: none
        assert_eq!(
            isolate_unique_positive_root(&p(&[1, 0, 1])),
            Err(RootError::PositiveRootCount(0))
        );
        // (x-1)(x-2) = x^2 - 3x + 2: two
        assert_eq!(
            isolate_unique_positive_root(&p(&[2, -3, 1])),
            Err(RootError::PositiveRootCount(2))
        );
    }

    #[test]
    fn isolates_gamma5_quartic() {
        // -9x^4 + 12x^3 - 36x^2 + 12x + 5, root 0.6247798071 to ten digits
        let q = p(&[5, 12, -36, 12, -9]);
        let root = isolate_unique_positive_root(&q).unwrap();
        let printed = ratio(6247798071, 10000000000);
        let ulp = ratio(1, 10000000000);
        assert!(root.lo > &printed - &ulp);
        assert!(root.hi < &printed + &ulp);
        assert!(root.width() <= ratio(1, 1_000_000_000) / rat(1000));
    }

    #[test]
    fn descartes_bound_counts_changes() {
        assert_eq!(descartes_positive_bound(&p(&[5, 12, -36, 12, -9])), 3);
        assert_eq!(descartes_positive_bound(&p(&[-1, 0, 1])), 1);
    }
}
