//! Exact-arithmetic toolkit for F_q-linear sets on the projective line PG(1,q^n).
//!
//! The crate builds small finite-field towers F_p ⊂ F_q ⊂ F_{q^n} with a
//! deterministic modulus, the algebra of reduced q-polynomials, and linear
//! sets of rank n on PG(1,q^n). On top of that it implements intersection
//! criteria for pairs of linear sets (norm tests, trace conditions, and
//! Hasse-Weil-style genus bounds), each cross-checked against brute-force
//! enumeration oracles, plus zero-divisor scans for presemifields of the
//! shape x∘y = L1(x)L2(y) − xy.

pub mod bitset;
pub mod criteria;
pub mod curve_bounds;
pub mod error;
pub mod field;
pub mod linset;
pub mod qpoly;
pub mod rng;
pub mod semifield;
pub mod sweeps;

pub use error::{Error, Result};
pub use field::{make_field, make_field_with_cap, Elt, FieldCtx, DEFAULT_FIELD_CAP};
pub use qpoly::{QPoly, QPolyIndices, ShiftMode};
pub use linset::{Classification, ClassKind, LinearSet, ProjPoint};
pub use criteria::{BinomialParams, ClubParams, CriterionVerdict, IffFamily, SufficientFamily, Verdict};
pub use curve_bounds::{GenusFamily, GenusReport, ValuationProfile};
pub use semifield::{BelPair, SemifieldReport};
