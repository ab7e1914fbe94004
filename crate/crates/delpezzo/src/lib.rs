//! Exact-arithmetic K-instability certificates for polarized smooth del
//! Pezzo surfaces.
//!
//! The library decides instability of a pair `(S, L)` — a del Pezzo surface
//! with an ample Q-divisor — by building a flopped slope test configuration
//! centred at a (-1)-curve and certifying that its Donaldson-Futaki
//! invariant is negative. Every computation is exact: divisor classes,
//! thresholds, Zariski decompositions and the final sign all live over
//! arbitrary-precision rationals, and the sign certificates for the
//! quartic negativity lemmas are carried out in `Q[gamma]` for isolated
//! algebraic numbers `gamma`.
//!
//! ```
//! use delpezzo::lattice::{canonical_class, SurfaceModel};
//! use delpezzo::rat::rat;
//!
//! let s = SurfaceModel::blow_up_of_degree(5).unwrap();
//! let k = canonical_class(s);
//! assert_eq!(k.self_intersection(), rat(5));
//! ```

pub mod algebraic;
pub mod appendix;
pub mod certify;
pub mod df;



pub mod lattice;
pub mod polarization;
pub mod poly;
pub mod rat;
pub mod roots;
pub mod simplex;
pub mod thresholds;
