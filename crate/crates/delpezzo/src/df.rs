//! The slope and flopped Donaldson-Futaki invariants, and the sign quantity
//! `D = (3/2) * DFhat(mu) * L^2`, both as exact numbers and as symbolic
//! family polynomials in the ample-cone coordinates.
//!
//! The slope test configuration centred at a curve `Z` has invariant
//! `DF(lambda) = (2/3) nu (lambda^3 Z^2 - 3 lambda^2 L.Z)
//!             + lambda^2 (2 - 2g) + 2 lambda L.Z`,
//! and flopping the contracted curves adds
//! `(2/3) nu sum (lambda - L.C_i)^3`.

use crate::lattice::{canonical_class, DivisorClass};
use crate::polarization::PolarizationKind;
use crate::poly::MultiPoly;
use crate::rat::{rat, ratio, Rat};
use crate::thresholds::FlopSetup;
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DfError {
    #[error("self-intersection of L vanishes")]
    ZeroSquare,
    #[error("adjunction genus {0} is not a non-negative integer")]
    BadGenus(String),
    #[error("unsupported family polynomial combination: degree {degree}, {kind}, case {case:?}")]
    UnsupportedFamily {
        degree: i64,
        kind: PolarizationKind,
        case: Option<String>,
    },
}

/// Everything needed to evaluate the DF invariants at a centre curve.
#[derive(Debug, Clone)]
pub struct DFContext {
    /// `-K.L`
    pub minus_k_dot_l: Rat,
    /// `L^2`
    pub l_squared: Rat,
    /// slope `nu = -K.L / L^2`
    pub nu: Rat,
    /// adjunction genus of the centre curve
    pub genus: Rat,
    /// `L.Z`
    pub lz: Rat,
    /// `Z^2`
    pub z2: Rat,
    /// `L.C_i` over the flopped curves (empty for the plain slope test)
    pub curve_intersections: Vec<Rat>,
}

impl DFContext {
    /// Builds the context from the ambient divisor and centre curve class,
    /// verifying the adjunction genus is a non-negative integer.
    pub fn new(
        l: &DivisorClass,
        z: &DivisorClass,
        curve_intersections: Vec<Rat>,
    ) -> Result<Self, DfError> {
        let k = canonical_class(l.model());
        let l_squared = l.self_intersection();
        if l_squared.is_zero() {
            return Err(DfError::ZeroSquare);
        }
        let minus_k_dot_l = k.neg().dot(l);
        let nu = &minus_k_dot_l / &l_squared;
        let z2 = z.self_intersection();
        let kz = k.dot(z);
        let genus = (rat(2) + &z2 + kz) / rat(2);
        if !genus.denom().is_one() || genus.is_negative() {
            return Err(DfError::BadGenus(crate::rat::format_rat(&genus)));
        }
        Ok(DFContext {
            minus_k_dot_l,
            l_squared,
            nu,
            genus,
            lz: l.dot(z),
            z2,
            curve_intersections,
        })
    }

    pub fn from_flop_setup(l: &DivisorClass, fs: &FlopSetup) -> Result<Self, DfError> {
        Self::new(
            l,
            &fs.z.cls,
            fs.curves.iter().map(|(_, lc)| lc.clone()).collect(),
        )
    }

    /// The slope test configuration invariant at `lambda`.
    pub fn slope_df(&self, lambda: &Rat) -> Rat {
        let l2 = lambda * lambda;
        let l3 = &l2 * lambda;
        ratio(2, 3) * &self.nu * (&l3 * &self.z2 - rat(3) * &l2 * &self.lz)
            + &l2 * (rat(2) - rat(2) * &self.genus)
            + rat(2) * lambda * &self.lz
    }

    /// The flopped invariant: the slope invariant plus the flop correction.
    pub fn flop_df(&self, lambda: &Rat) -> Rat {
        let mut corr = Rat::zero();
        for lc in &self.curve_intersections {
            let t = lambda - lc;
            corr += &t * &t * &t;
        }
        self.slope_df(lambda) + ratio(2, 3) * &self.nu * corr
    }

    /// `D = (-K.L)(-mu^3 - 3 mu^2 L.Z + sum (mu - L.C_i)^3)
    ///    + 3 mu^2 L^2 + 3 mu L^2 L.Z`,
    /// the sign-normalized quantity; it equals `(3/2) flop_df(mu) L^2`
    /// whenever the centre is a (-1)-curve (genus zero, `Z^2 = -1`).
    pub fn d_quantity(&self, mu: &Rat) -> Rat {
        let m2 = mu * mu;
        let m3 = &m2 * mu;
        let mut cubes = Rat::zero();
        for lc in &self.curve_intersections {
            let t = mu - lc;
            cubes += &t * &t * &t;
        }
        &self.minus_k_dot_l * (-&m3 - rat(3) * &m2 * &self.lz + cubes)
            + rat(3) * &m2 * &self.l_squared
            + rat(3) * mu * &self.l_squared * &self.lz
    }
}

/// One sign branch of a family polynomial: valid where `guard >= 0`
/// (no guard means everywhere).
#[derive(Debug, Clone)]
pub struct FamilyBranch {
    pub guard: Option<MultiPoly>,
    pub poly: MultiPoly,
}

/// The quantity `D` as a polynomial in the ample-cone coordinates for a
/// fixed `(degree, kind, case)` family.
#[derive(Debug, Clone)]
pub struct FamilyPolynomial {
    pub degree: i64,
    pub kind: PolarizationKind,
    pub case: Option<String>,
    pub vars: Vec<String>,
    pub branches: Vec<FamilyBranch>,
}

impl FamilyPolynomial {
    /// Picks the branch whose guard is satisfied at the point and
    /// evaluates it (point order matches `vars`).
    pub fn eval(&self, point: &[Rat]) -> Rat {
        for b in &self.branches {
            match &b.guard {
                None => return b.poly.eval(point),
                Some(g) => {
                    if !g.eval(point).is_negative() {
                        return b.poly.eval(point);
                    }
                }
            }
        }
        self.branches
            .last()
            .expect("family has at least one branch")
            .poly
            .eval(point)
    }
}

/// Variable names for a family: `a1..am` plus `b` for the conic types.
pub fn family_vars(degree: i64, kind: PolarizationKind) -> Vec<String> {
    let m = crate::polarization::TypedPolarization::coord_count(degree, kind);
    let mut v: Vec<String> = (1..=m).map(|i| format!("a{i}")).collect();
    if kind != PolarizationKind::P2 {
        v.push("b".to_string());
    }
    v
}

struct SymbolicBuilder {
    vars: Vec<String>,
}

impl SymbolicBuilder {
    fn names(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    fn constant(&self, c: Rat) -> MultiPoly {
        MultiPoly::constant(&self.names(), c)
    }

    /// `c0 + sum coeff * a_i + coeff_b * b`
    fn linear(&self, c0: Rat, terms: &[(usize, Rat)], b_coeff: Rat) -> MultiPoly {
        let mut p = self.constant(c0);
        for (i, c) in terms {
            p.add_term(&[(&format!("a{i}"), 1)], c.clone()).unwrap();
        }
        if !b_coeff.is_zero() {
            p.add_term(&[("b", 1)], b_coeff).unwrap();
        }
        p
    }

    fn a(&self, i: usize) -> MultiPoly {
        MultiPoly::var(&self.names(), &format!("a{i}")).unwrap()
    }
}

/// `D = mkl (-mu^3 - 3 mu^2 lz + sum (mu - lc_i)^3) + 3 mu^2 l2
///    + 3 mu l2 lz`, assembled symbolically.
fn build_d_poly(
    mkl: &MultiPoly,
    l2: &MultiPoly,
    lz: &MultiPoly,
    mu: &MultiPoly,
    lcs: &[MultiPoly],
) -> MultiPoly {
    let three = |p: &MultiPoly| p.scale(&rat(3));
    let mu2 = mu * mu;
    let mu3 = &mu2 * mu;
    let mut cubes = mu.scale(&Rat::zero());
    for lc in lcs {
        let t = mu - lc;
        cubes = &cubes + &(&(&t * &t) * &t);
    }
    let inner = &(&-&mu3 - &three(&(&mu2 * lz))) + &cubes;
    &(&(mkl * &inner) + &three(&(&mu2 * l2))) + &three(&(&(mu * l2) * lz))
}

/// Contraction data (all linear in the coordinates) for one family case.
struct CaseData {
    mu: MultiPoly,
    lz: MultiPoly,
    lcs: Vec<MultiPoly>,
    guard: Option<MultiPoly>,
}

/// Generates `D` for the `(degree, kind, case)` family symbolically from
/// the contraction data of the applicable case analysis. Cases: degree 4
/// quadric `"a"`/`"b"`, degree 3 quadric `"a"`/`"b"`, degrees 1 and 2
/// quadric `"a"`..`"f"`; all other supported combinations take no case.
/// Degrees 6 and 7 use the fixed toric centres instead of `Z = E1`.
pub fn family_polynomial(
    degree: i64,
    kind: PolarizationKind,
    case: Option<&str>,
) -> Result<FamilyPolynomial, DfError> {
    let unsupported = || DfError::UnsupportedFamily {
        degree,
        kind,
        case: case.map(|s| s.to_string()),
    };
    if !(1..=7).contains(&degree) {
        return Err(unsupported());
    }
    let vars = family_vars(degree, kind);
    let b = SymbolicBuilder { vars: vars.clone() };
    let m = crate::polarization::TypedPolarization::coord_count(degree, kind);
    let r = (9 - degree) as usize;

    // -K.L and L^2 in the normalized coordinates
    let (mkl, l2) = {
        let d = rat(degree);
        let all: Vec<(usize, Rat)> = (1..=m).map(|i| (i, rat(1))).collect();
        let twice: Vec<(usize, Rat)> = (1..=m).map(|i| (i, rat(2))).collect();
        let (b_lin, b_quad) = if kind == PolarizationKind::P2 {
            (rat(0), rat(0))
        } else {
            (rat(2), rat(4))
        };
        let mkl = b.linear(d.clone(), &all, b_lin);
        let mut l2 = b.linear(d, &twice, b_quad);
        for i in 1..=m {
            let ai = b.a(i);
            l2 = &l2 - &(&ai * &ai);
        }
        (mkl, l2)
    };

    let lin = |c0: i64, terms: &[(usize, i64)], bc: i64| {
        b.linear(
            rat(c0),
            &terms.iter().map(|&(i, c)| (i, rat(c))).collect::<Vec<_>>(),
            rat(bc),
        )
    };
    let e1_lz = lin(1, &[(1, -1)], 0);
    let cases: Vec<CaseData> = match (degree, kind, case) {
        (7, PolarizationKind::P2, None) => vec![CaseData {
            // Z = L12, C = {E1, E2}, sigma on the plane = 3
            mu: lin(3, &[], 0),
            lz: lin(1, &[(1, 1), (2, 1)], 0),
            lcs: vec![lin(1, &[(1, -1)], 0), lin(1, &[(2, -1)], 0)],
            guard: None,
        }],
        (7, PolarizationKind::F1, None) => vec![CaseData {
            mu: lin(3, &[], 1),
            lz: lin(1, &[(1, 1)], 0),
            lcs: vec![lin(1, &[(1, -1)], 0), lin(1, &[], 1)],
            guard: None,
        }],
        (7, PolarizationKind::P1xP1, None) => vec![CaseData {
            mu: lin(3, &[(1, 1)], 1),
            lz: lin(1, &[(1, -1)], 0),
            lcs: vec![lin(1, &[(1, 1)], 0), lin(1, &[(1, 1)], 1)],
            guard: None,
        }],
        (6, PolarizationKind::P2, None) => vec![CaseData {
            // Z = L12, C = {E1, E2}, contracted surface F1, sigma = 2 + a3
            mu: lin(2, &[(3, 1)], 0),
            lz: lin(1, &[(1, 1), (2, 1)], 0),
            lcs: vec![lin(1, &[(1, -1)], 0), lin(1, &[(2, -1)], 0)],
            guard: None,
        }],
        (6, PolarizationKind::F1, None) => vec![CaseData {
            // Z = L13, C = {E1, E3}, sigma = 2 + b + a2
            mu: lin(2, &[(2, 1)], 1),
            lz: lin(1, &[(1, 1)], 0),
            lcs: vec![lin(1, &[(1, -1)], 0), lin(1, &[], 1)],
            guard: None,
        }],
        (6, PolarizationKind::P1xP1, None) => vec![CaseData {
            // Z = E1, C = {L13, L12}, sigma = 2 + b + a1 + a2
            mu: lin(2, &[(1, 1), (2, 1)], 1),
            lz: e1_lz.clone(),
            lcs: vec![lin(1, &[(1, 1)], 0), lin(1, &[(1, 1)], 1)],
            guard: None,
        }],
        (1..=5, PolarizationKind::P2, None) => vec![CaseData {
            mu: lin(2, &[(1, 1)], 0),
            lz: e1_lz.clone(),
            lcs: (2..=r).map(|i| lin(1, &[(1, 1), (i, 1)], 0)).collect(),
            guard: None,
        }],
        (1..=5, PolarizationKind::F1, None) => {
            let mut lcs = vec![lin(1, &[(1, 1)], 0)];
            lcs.extend((2..=r - 1).map(|i| lin(1, &[(1, 1), (i, 1)], 1)));
            vec![CaseData {
                mu: lin(2, &[(1, 1)], 1),
                lz: e1_lz.clone(),
                lcs,
                guard: None,
            }]
        }
        (5, PolarizationKind::P1xP1, None) => vec![CaseData {
            mu: lin(2, &[(1, 1), (2, 1)], 1),
            lz: e1_lz.clone(),
            lcs: vec![
                lin(1, &[(1, 1)], 0),
                lin(1, &[(1, 1)], 1),
                lin(1, &[(1, 1), (2, 1), (3, 1)], 1),
            ],
            guard: None,
        }],
        (4, PolarizationKind::P1xP1, Some("a")) => vec![CaseData {
            // a3 + a4 >= 1 + a2: k = 4
            mu: lin(2, &[(1, 1), (2, 1)], 1),
            lz: e1_lz.clone(),
            lcs: vec![
                lin(1, &[(1, 1)], 0),
                lin(1, &[(1, 1)], 1),
                lin(1, &[(1, 1), (2, 1), (3, 1)], 1),
                lin(1, &[(1, 1), (2, 1), (4, 1)], 1),
            ],
            guard: None,
        }],
        (4, PolarizationKind::P1xP1, Some("b")) => {
            // a3 + a4 <= 1 + a2: k = 5 with the conic, contract to the plane
            let half = ratio(1, 2);
            let mu = b.linear(
                ratio(3, 2),
                &[(1, rat(1)), (2, half.clone()), (3, half.clone()), (4, half)],
                rat(1),
            );
            vec![CaseData {
                mu,
                lz: e1_lz.clone(),
                lcs: vec![
                    lin(1, &[(1, 1)], 0),
                    lin(1, &[(1, 1)], 1),
                    lin(1, &[(1, 1), (2, 1), (3, 1)], 1),
                    lin(1, &[(1, 1), (2, 1), (4, 1)], 1),
                    lin(1, &[(1, 1), (3, 1), (4, 1)], 1),
                ],
                guard: None,
            }]
        }
        (3, PolarizationKind::P1xP1, Some("b")) => vec![CaseData {
            // a3 + a4 + a5 >= 2 + a2: k = 5, mu = 2 + b + a1 + a2
            mu: lin(2, &[(1, 1), (2, 1)], 1),
            lz: e1_lz.clone(),
            lcs: vec![
                lin(1, &[(1, 1)], 0),
                lin(1, &[(1, 1)], 1),
                lin(1, &[(1, 1), (2, 1), (3, 1)], 1),
                lin(1, &[(1, 1), (2, 1), (4, 1)], 1),
                lin(1, &[(1, 1), (2, 1), (5, 1)], 1),
            ],
            guard: None,
        }],
        (3, PolarizationKind::P1xP1, Some("a")) => {
            // a3 + a4 + a5 <= 2 + a2: averaged mu, and the fifth curve
            // depends on the sign of a3 + a4 - a2 - a5
            let half = ratio(1, 2);
            let mu = b.linear(
                rat(1),
                &[
                    (1, rat(1)),
                    (2, half.clone()),
                    (3, half.clone()),
                    (4, half.clone()),
                    (5, half),
                ],
                rat(1),
            );
            let base = vec![
                lin(1, &[(1, 1)], 0),
                lin(1, &[(1, 1)], 1),
                lin(1, &[(1, 1), (2, 1), (3, 1)], 1),
                lin(1, &[(1, 1), (2, 1), (4, 1)], 1),
            ];
            let guard = lin(0, &[(3, 1), (4, 1), (2, -1), (5, -1)], 0);
            let mut with_l15 = base.clone();
            with_l15.push(lin(1, &[(1, 1), (2, 1), (5, 1)], 1));
            let mut with_conic = base;
            with_conic.push(lin(1, &[(1, 1), (3, 1), (4, 1)], 1));
            vec![
                CaseData {
                    mu: mu.clone(),
                    lz: e1_lz.clone(),
                    lcs: with_l15,
                    guard: Some(guard.clone()),
                },
                CaseData {
                    mu,
                    lz: e1_lz.clone(),
                    lcs: with_conic,
                    guard: Some(-&guard),
                },
            ]
        }
        (1 | 2, PolarizationKind::P1xP1, Some(tag @ ("a" | "b" | "c" | "d" | "e" | "f"))) => {
            let half = ratio(1, 2);
            let mu_half = b.linear(
                half.clone(),
                &[
                    (1, rat(1)),
                    (2, half.clone()),
                    (3, half.clone()),
                    (4, half.clone()),
                    (5, half.clone()),
                    (6, half),
                ],
                rat(1),
            );
            let mu_lin = lin(1, &[(1, 1), (2, 1), (6, 1)], 1);
            let l1r = lin(1, &[(1, 1)], 0);
            let l12 = lin(1, &[(1, 1)], 1);
            let l13 = lin(1, &[(1, 1), (2, 1), (3, 1)], 1);
            let l14 = lin(1, &[(1, 1), (2, 1), (4, 1)], 1);
            let l15 = lin(1, &[(1, 1), (2, 1), (5, 1)], 1);
            let conic = lin(1, &[(1, 1), (3, 1), (4, 1)], 1);
            let (mu, lcs) = match tag {
                "a" => (mu_half, vec![l1r, l12]),
                "b" => (mu_half, vec![l1r, l12, l13]),
                "c" => (mu_half, vec![l1r, l12, l13, l14]),
                "d" => (mu_half, vec![l1r, l12, l13, l14, l15]),
                "e" => (mu_lin, vec![l1r, l12, l13, l14, l15]),
                "f" => (mu_half, vec![l1r, l12, l13, l14, conic]),
                _ => unreachable!(),
            };
            vec![CaseData {
                mu,
                lz: e1_lz.clone(),
                lcs,
                guard: None,
            }]
        }
        _ => return Err(unsupported()),
    };

    let branches = cases
        .into_iter()
        .map(|c| FamilyBranch {
            poly: build_d_poly(&mkl, &l2, &c.lz, &c.mu, &c.lcs),
            guard: c.guard,
        })
        .collect();
    Ok(FamilyPolynomial {
        degree,
        kind,
        case: case.map(|s| s.to_string()),
        vars,
        branches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SurfaceModel;

    fn hirzebruch_ctx(a_e: Rat, b_f: Rat, z: &[i64; 2], curves: &[[i64; 2]]) -> DFContext {
        let m = SurfaceModel::Hirzebruch;
        let e = DivisorClass::from_ints(m, &[1, 0]);
        let f = DivisorClass::from_ints(m, &[0, 1]);
        let l = canonical_class(m)
            .neg()
            .add(&e.scale(&a_e))
            .add(&f.scale(&b_f));
        let zc = DivisorClass::from_ints(m, z);
        let lcs = curves
            .iter()
            .map(|c| l.dot(&DivisorClass::from_ints(m, c)))
            .collect();
        DFContext::new(&l, &zc, lcs).unwrap()
    }

    #[test]
    fn slope_df_vanishes_at_zero() {
        let ctx = hirzebruch_ctx(ratio(1, 3), rat(0), &[1, 0], &[]);
        assert_eq!(ctx.slope_df(&rat(0)), rat(0));
    }

    #[test]
    fn hirzebruch_slope_closed_forms() {
        // L = -K + a e, Z = e, lambda = 2 + a: (4/3)(a^3+3a^2-4)/(4-a)
        for a in [rat(0), ratio(1, 2), ratio(3, 7), ratio(9, 10)] {
            let ctx = hirzebruch_ctx(a.clone(), rat(0), &[1, 0], &[]);
            let lam = rat(2) + &a;
            let expect = ratio(4, 3) * (&a * &a * &a + rat(3) * &a * &a - rat(4)) / (rat(4) - &a);
            assert_eq!(ctx.slope_df(&lam), expect);
        }
        // a = 0 pins -4/3
        let ctx = hirzebruch_ctx(rat(0), rat(0), &[1, 0], &[]);
        assert_eq!(ctx.slope_df(&rat(2)), ratio(-4, 3));

        // L = -K + b f, Z = e, lambda = 2: -(8/3)(1+b)/(2+b)
        for b in [rat(0), rat(1), ratio(5, 3)] {
            let ctx = hirzebruch_ctx(rat(0), b.clone(), &[1, 0], &[]);
            let expect = ratio(-8, 3) * (rat(1) + &b) / (rat(2) + &b);
            assert_eq!(ctx.slope_df(&rat(2)), expect);
        }
    }

    #[test]
    fn hirzebruch_flop_closed_forms() {
        // Z = f, C1 = e, L = -K + a e, lambda = 3: (2/3)(a^3+3a^2-4)/(4-a)
        for a in [rat(0), ratio(1, 4), ratio(2, 3)] {
            let ctx = hirzebruch_ctx(a.clone(), rat(0), &[0, 1], &[[1, 0]]);
            let expect = ratio(2, 3) * (&a * &a * &a + rat(3) * &a * &a - rat(4)) / (rat(4) - &a);
            assert_eq!(ctx.flop_df(&rat(3)), expect);
        }
        let ctx = hirzebruch_ctx(rat(0), rat(0), &[0, 1], &[[1, 0]]);
        assert_eq!(ctx.flop_df(&rat(3)), ratio(-2, 3));

        // L = -K + b f, lambda = 3 + b: -(4/3)(1+b)/(2+b)
        for b in [rat(0), ratio(1, 2), rat(4)] {
            let ctx = hirzebruch_ctx(rat(0), b.clone(), &[0, 1], &[[1, 0]]);
            let lam = rat(3) + &b;
            let expect = ratio(-4, 3) * (rat(1) + &b) / (rat(2) + &b);
            assert_eq!(ctx.flop_df(&lam), expect);
        }
    }

    #[test]
    fn flop_reduces_to_slope_without_curves() {
        let ctx = hirzebruch_ctx(ratio(1, 5), ratio(2, 7), &[1, 0], &[]);
        for lam in [ratio(1, 3), rat(1), ratio(7, 4)] {
            assert_eq!(ctx.flop_df(&lam), ctx.slope_df(&lam));
        }
    }

    #[test]
    fn d_quantity_is_dual_path() {
        let ctx = hirzebruch_ctx(ratio(2, 5), ratio(1, 7), &[1, 0], &[[0, 1]]);
        for mu in [ratio(3, 2), ratio(11, 5)] {
            assert_eq!(
                ctx.d_quantity(&mu),
                ratio(3, 2) * ctx.flop_df(&mu) * &ctx.l_squared
            );
        }
    }

    #[test]
    fn genus_validation() {
        let m = SurfaceModel::BlowUp { r: 3 };
        let l = canonical_class(m).neg();
        // (l - E1)^2 = 0, K.(l - E1) = -2: genus 0, fine
        let fiber = DivisorClass::from_ints(m, &[1, 1, 0, 0]);
        assert!(DFContext::new(&l, &fiber, vec![]).is_ok());
        // a fractional class has no integral adjunction genus
        let bad = DivisorClass::new(m, vec![ratio(1, 2), rat(0), rat(0), rat(0)]);
        assert!(DFContext::new(&l, &bad, vec![]).is_err());
    }

    #[test]
    fn family_constants_at_origin() {
        // D(0) = 5 for (5, P1xP1) and (1, P2)
        let f = family_polynomial(5, PolarizationKind::P1xP1, None).unwrap();
        let zero = vec![rat(0); f.vars.len()];
        assert_eq!(f.eval(&zero), rat(5));
        let f = family_polynomial(1, PolarizationKind::P2, None).unwrap();
        let zero = vec![rat(0); f.vars.len()];
        assert_eq!(f.eval(&zero), rat(5));
    }

    #[test]
    fn family_d5_b2_coefficient() {
        let f = family_polynomial(5, PolarizationKind::P1xP1, None).unwrap();
        let names: Vec<&str> = f.vars.iter().map(|s| s.as_str()).collect();
        let groups = f.branches[0].poly.coefficients_by(&["b"]).unwrap();
        let b2 = groups.iter().find(|(e, _)| e[0] == 2).unwrap();
        let expect = MultiPoly::parse(&names, "3*a1^2 + 3 - 3*a2^2 - 3*a3^2").unwrap();
        assert_eq!(b2.1, expect);
    }

    #[test]
    fn family_b2_coefficient_is_general_formula() {
        // A = 3 a1^2 + 3r - 9 - 3(a2^2 + ... + a_{r-1}^2)
        for (degree, kind) in [
            (5, PolarizationKind::F1),
            (4, PolarizationKind::F1),
            (3, PolarizationKind::F1),
            (2, PolarizationKind::F1),
            (1, PolarizationKind::F1),
            (5, PolarizationKind::P1xP1),
        ] {
            let f = family_polynomial(degree, kind, None).unwrap();
            let names: Vec<&str> = f.vars.iter().map(|s| s.as_str()).collect();
            let r = 9 - degree;
            let mut expect = MultiPoly::parse(&names, &format!("3*a1^2 + {}", 3 * r - 9)).unwrap();
            for i in 2..r {
                expect = &expect - &MultiPoly::parse(&names, &format!("3*a{i}^2")).unwrap();
            }
            for branch in &f.branches {
                let groups = branch.poly.coefficients_by(&["b"]).unwrap();
                let b2 = groups.iter().find(|(e, _)| e[0] == 2).unwrap();
                assert_eq!(b2.1, expect, "degree {degree} {kind}");
            }
        }
    }

    #[test]
    fn p2_family_specializes_down_in_degree() {
        // pinning the trailing coordinates of the degree-1 family to 1
        // reproduces the degree-5 family exactly
        let full = family_polynomial(1, PolarizationKind::P2, None).unwrap();
        let five = family_polynomial(5, PolarizationKind::P2, None).unwrap();
        let mut spec = full.branches[0].poly.clone();
        for i in 5..=8 {
            spec = spec.substitute_const(&format!("a{i}"), &rat(1)).unwrap();
        }
        let five_names: Vec<&str> = five.vars.iter().map(|s| s.as_str()).collect();
        let spec = spec.rename_vars(&five_names).unwrap();
        assert_eq!(spec, five.branches[0].poly);
    }

    #[test]
    fn f1_family_specializes_down_in_degree() {
        let full = family_polynomial(1, PolarizationKind::F1, None).unwrap();
        let four = family_polynomial(4, PolarizationKind::F1, None).unwrap();
        let mut spec = full.branches[0].poly.clone();
        for i in 5..=7 {
            spec = spec.substitute_const(&format!("a{i}"), &rat(1)).unwrap();
        }
        let names: Vec<&str> = four.vars.iter().map(|s| s.as_str()).collect();
        let spec = spec.rename_vars(&names).unwrap();
        assert_eq!(spec, four.branches[0].poly);
    }

    #[test]
    fn quadric_low_degree_specializes() {
        for tag in ["a", "b", "c", "d", "e", "f"] {
            let d1 = family_polynomial(1, PolarizationKind::P1xP1, Some(tag)).unwrap();
            let d2 = family_polynomial(2, PolarizationKind::P1xP1, Some(tag)).unwrap();
            let spec = d1.branches[0].poly.substitute_const("a7", &rat(1)).unwrap();
            let names: Vec<&str> = d2.vars.iter().map(|s| s.as_str()).collect();
            let spec = spec.rename_vars(&names).unwrap();
            assert_eq!(spec, d2.branches[0].poly, "case {tag}");
        }
    }
}
