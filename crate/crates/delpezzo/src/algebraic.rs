//! Real algebraic numbers and certified sign determination.
//!
//! An [`AlgebraicNumber`] is a square-free defining polynomial together with
//! an isolating rational interval containing exactly one of its real roots.
//! Signs of expressions in the number are decided by reducing modulo the
//! defining polynomial and then evaluating with exact rational interval
//! arithmetic, bisecting the isolating interval until the sign is certain.

use crate::rat::{rat, Rat};
use crate::roots::{
    self, degree, div_rem, is_zero_poly, isolate_unique_positive_root, square_free,
    sturm_count, sturm_sequence, trim, IsolatedRoot, RootError, UniPoly,
};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// A closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_negative() {
            RatInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RatInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

/// Evaluates a polynomial over an interval by Horner steps in interval
/// arithmetic (a valid enclosure, not the tightest one).
pub fn eval_on_interval(p: &UniPoly, iv: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for c in p.iter().rev() {
        acc = acc.mul(iv).add(&RatInterval::point(c.clone()));
    }
    acc
}

/// A real algebraic number: square-free defining polynomial plus an
/// isolating interval containing exactly one of its real roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicNumber {
    root: IsolatedRoot,
}

impl AlgebraicNumber {
    /// The unique positive real root of `p` (error if the positive-root
    /// count of the square-free part differs from one).
    pub fn unique_positive_root(p: &UniPoly) -> Result<Self, RootError> {
        Ok(AlgebraicNumber {
            root: isolate_unique_positive_root(p)?,
        })
    }

    pub fn from_rational(x: Rat) -> Self {
        AlgebraicNumber {
            root: IsolatedRoot {
                poly: vec![-x.clone(), Rat::one()],
                lo: x.clone(),
                hi: x,
            },
        }
    }

    pub fn defining_poly(&self) -> &UniPoly {
        &self.root.poly
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.root.lo.clone(), self.root.hi.clone())
    }

    pub fn degree_bound(&self) -> usize {
        degree(&self.root.poly)
    }

    /// Returns a copy whose isolating interval is at most `eps` wide.
    pub fn refined(&self, eps: &Rat) -> Self {
        let mut r = self.root.clone();
        r.refine_to(eps);
        AlgebraicNumber { root: r }
    }

    /// True if the isolating interval contains `x`.
    pub fn interval_contains(&self, x: &Rat) -> bool {
        self.root.contains(x)
    }

    /// Certified sign of `expr(self)` for a univariate `expr`.
    ///
    /// The expression is first reduced modulo the defining polynomial. A
    /// zero remainder, or a nonzero remainder sharing the root (detected by
    /// a gcd with a Sturm count on the isolating interval), certifies sign
    /// zero; otherwise interval evaluation with on-demand bisection decides.
    pub fn sign_of(&self, expr: &UniPoly) -> Ordering {
        let p = &self.root.poly;
        let (_, r) = div_rem(expr, p);
        if is_zero_poly(&r) {
            return Ordering::Equal;
        }
        if self.root.is_exact() {
            return roots::sign_at(&r, &self.root.lo);
        }
        // The root may satisfy a proper factor of the defining polynomial.
        let g = roots::gcd(&r, p);
        if degree(&g) > 0 {
            let seq = sturm_sequence(&square_free(&g));
            // endpoints of an inexact isolating interval are not roots of p,
            // hence not of g either
            if sturm_count(&seq, &self.root.lo, &self.root.hi) == 1 {
                return Ordering::Equal;
            }
        }
        // Now r(root) != 0: bisect until the interval enclosure decides.
        let mut cur = self.root.clone();
        loop {
            let enclosure = eval_on_interval(&r, &RatInterval::new(cur.lo.clone(), cur.hi.clone()));
            if let Some(s) = enclosure.sign() {
                if s != Ordering::Equal {
                    return s;
                }
            }
            if cur.is_exact() {
                return roots::sign_at(&r, &cur.lo);
            }
            let half = cur.width() / rat(2);
            cur.refine_to(&half);
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        self.sign_of(&vec![-x.clone(), Rat::one()])
    }

    /// Evaluates `expr(self)` to an enclosing interval of width `<= eps`.
    pub fn eval_enclosure(&self, expr: &UniPoly, eps: &Rat) -> RatInterval {
        let (_, r) = div_rem(expr, &self.root.poly);
        let mut cur = self.root.clone();
        loop {
            let enc = eval_on_interval(&r, &RatInterval::new(cur.lo.clone(), cur.hi.clone()));
            if &enc.hi - &enc.lo <= *eps || cur.is_exact() {
                return enc;
            }
            let half = cur.width() / rat(2);
            cur.refine_to(&half);
        }
    }

    /// `expr(self)` as a reduced residue mod the defining polynomial.
    pub fn reduce(&self, expr: &UniPoly) -> UniPoly {
        let (_, r) = div_rem(expr, &self.root.poly);
        trim(r)
    }

    /// Multiplicative inverse of `expr(self)` as a polynomial residue, via
    /// the extended Euclidean algorithm. Errors if `expr(self) == 0`.
    pub fn invert(&self, expr: &UniPoly) -> Result<UniPoly, RootError> {
        if self.sign_of(expr) == Ordering::Equal {
            return Err(RootError::Constant);
        }
        let r = self.reduce(expr);
        // Extended gcd of r and the defining polynomial p: u*r + v*p = g.
        let p = self.root.poly.clone();
        let (mut r0, mut r1) = (p.clone(), r.clone());
        let (mut u0, mut u1) = (vec![Rat::zero()], vec![Rat::one()]);
        while !is_zero_poly(&r1) {
            let (q, rem) = div_rem(&r0, &r1);
            let next_u = roots::add(&u0, &roots::neg(&roots::mul(&q, &u1)));
            r0 = r1;
            r1 = rem;
            u0 = u1;
            u1 = next_u;
        }
        // r0 = gcd; since expr(root) != 0 the gcd is coprime to the factor
        // carrying our root, but it may be a nontrivial factor of p. In that
        // case 1/expr(root) is not a polynomial in the root over p; the
        // callers here always use irreducible-enough data, so insist on a
        // constant gcd.
        if degree(&r0) != 0 {
            return Err(RootError::Constant);
        }
        let c = r0[0].clone();
        let inv: UniPoly = u0.iter().map(|x| x / &c).collect();
        Ok(self.reduce(&inv))
    }
}

/// Sign of the supremum of an affine function over the polytope
/// `{v >= 0, w . v >= c}`.
///
/// `residual` is `(constant, [(coefficient, weight)] )` per variable; every
/// variable coefficient must be `<= 0` and every weight `>= 0` with at least
/// one weight positive. Under those conditions the supremum is attained at a
/// vertex `(c / w_j) e_j`, so it equals
/// `max_j { constant + coeff_j * c / w_j : w_j > 0 }` when `c > 0`, and the
/// constant itself when `c <= 0`.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ResidualError {
    #[error("variable `{0}` has a positive coefficient; vertex bound inapplicable")]
    PositiveCoefficient(String),
    #[error("no positive weight in the constraint")]
    NoPositiveWeight,
}

pub struct AffineResidual {
    pub constant: Rat,
    /// (name, coefficient in the residual, weight in the constraint)
    pub vars: Vec<(String, Rat, Rat)>,
    /// right-hand side of `w . v >= c`
    pub bound: Rat,
}

impl AffineResidual {
    /// Exact supremum over the polytope (see module docs), with the vertex
    /// values that realize the candidates.
    pub fn supremum(&self) -> Result<(Rat, Vec<(String, Rat)>), ResidualError> {
        for (name, coeff, weight) in &self.vars {
            if coeff.is_positive() {
                return Err(ResidualError::PositiveCoefficient(name.clone()));
            }
            if weight.is_negative() {
                return Err(ResidualError::PositiveCoefficient(name.clone()));
            }
        }
        if !self.bound.is_positive() {
            // constraint inactive; supremum at the origin
            return Ok((self.constant.clone(), vec![("origin".into(), self.constant.clone())]));
        }
        let mut best: Option<Rat> = None;
        let mut vertices = Vec::new();
        for (name, coeff, weight) in &self.vars {
            if weight.is_positive() {
                let value = &self.constant + coeff * (&self.bound / weight);
                vertices.push((name.clone(), value.clone()));
                best = Some(match best {
                    None => value,
                    Some(b) => b.max(value),
                });
            }
        }
        match best {
            Some(b) => Ok((b, vertices)),
            None => Err(ResidualError::NoPositiveWeight),
        }
    }

    /// Sign of the supremum; `Less` certifies the residual negative on the
    /// whole region.
    pub fn supremum_sign(&self) -> Result<Ordering, ResidualError> {
        Ok(self.supremum()?.0.cmp(&Rat::zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn p(coeffs: &[i64]) -> UniPoly {
        coeffs.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn sign_of_defining_poly_is_zero() {
        let g = AlgebraicNumber::unique_positive_root(&p(&[5, 12, -36, 12, -9])).unwrap();
        assert_eq!(g.sign_of(&p(&[5, 12, -36, 12, -9])), Ordering::Equal);
    }

    #[test]
    fn gamma5_is_below_one() {
        let g = AlgebraicNumber::unique_positive_root(&p(&[5, 12, -36, 12, -9])).unwrap();
        // gamma - 1 < 0
        assert_eq!(g.sign_of(&p(&[-1, 1])), Ordering::Less);
        assert_eq!(g.cmp_rat(&rat(1)), Ordering::Less);
        assert_eq!(g.cmp_rat(&ratio(62477, 100000)), Ordering::Greater);
    }

    #[test]
    fn appendix_coefficient_witness_sign() {
        // 6g - 1 - 3g^2 > 0 at the root of -9x^4+12x^3-36x^2+12x+5
        let g = AlgebraicNumber::unique_positive_root(&p(&[5, 12, -36, 12, -9])).unwrap();
        assert_eq!(g.sign_of(&p(&[-1, 6, -3])), Ordering::Greater);
    }

    #[test]
    fn rational_roots_collapse() {
        let one = AlgebraicNumber::unique_positive_root(&p(&[-1, 0, 1])).unwrap();
        assert!(one.interval_contains(&rat(1)));
        assert_eq!(one.cmp_rat(&rat(1)), Ordering::Equal);
        assert_eq!(one.sign_of(&p(&[-3, 2, 1])), Ordering::Equal); // x^2+2x-3 = (x-1)(x+3)
    }

    #[test]
    fn sign_handles_shared_factor() {
        // defining poly (x^2-2)(x^2-3) is square-free but reducible; the
        // isolated root of interest is sqrt(2). x^2 - 2 vanishes there even
        // though it is not divisible by the defining polynomial.
        let f = p(&[6, 0, -5, 0, 1]);
        let mut r = isolate_unique_positive_root(&p(&[-2, 0, 1])).unwrap();
        r.poly = f;
        r.refine_to(&ratio(1, 1_000_000));
        let a = AlgebraicNumber { root: r };
        assert_eq!(a.sign_of(&p(&[-2, 0, 1])), Ordering::Equal);
        assert_eq!(a.sign_of(&p(&[-3, 0, 1])), Ordering::Less);
    }

    #[test]
    fn inverse_of_residue() {
        // 1 / (3 - 6x^2) at the positive root of -4x^4+2x^3-18x^2+8x+5
        let a = AlgebraicNumber::unique_positive_root(&p(&[5, 8, -18, 2, -4])).unwrap();
        let d = p(&[3, 0, -6]);
        let inv = a.invert(&d).unwrap();
        let prod = roots::mul(&d, &inv);
        assert_eq!(a.sign_of(&roots::add(&prod, &p(&[-1]))), Ordering::Equal);
    }

    #[test]
    fn residual_vertex_bound() {
        // R = 1 - x on {x >= 2}: supremum -1
        let r = AffineResidual {
            constant: rat(1),
            vars: vec![("x".into(), rat(-1), rat(1))],
            bound: rat(2),
        };
        assert_eq!(r.supremum().unwrap().0, rat(-1));
        assert_eq!(r.supremum_sign().unwrap(), Ordering::Less);

        // R = -1 with inactive constraint
        let r = AffineResidual {
            constant: rat(-1),
            vars: vec![("x".into(), rat(0), rat(1))],
            bound: rat(0),
        };
        assert_eq!(r.supremum_sign().unwrap(), Ordering::Less);

        // spec example from the d=4 rational-shift lemma
        let r = AffineResidual {
            constant: ratio(265178, 390625),
            vars: vec![
                ("a1".into(), ratio(-1120738, 15625), rat(1)),
                ("s2".into(), ratio(-770852, 15625), rat(2)),
                ("s3".into(), ratio(-385426, 15625), rat(1)),
            ],
            bound: ratio(4, 25),
        };
        assert_eq!(r.supremum_sign().unwrap(), Ordering::Less);

        // positive coefficient is rejected
        let r = AffineResidual {
            constant: rat(1),
            vars: vec![("x".into(), rat(1), rat(1))],
            bound: rat(2),
        };
        assert!(r.supremum().is_err());
    }
}
