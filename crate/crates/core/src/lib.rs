//! Exact tools for checking Laurent polynomials as weak Landau-Ginzburg
//! models of Fano threefolds: constant-term series, D3 operators, toric
//! invariants of Newton polytopes and modular coefficient search.

pub mod catalog;
pub mod cli;
pub mod dseries;
pub mod laurent;
pub mod linalg;
pub mod polytope;
pub mod ring;
pub mod search;
pub mod text;

pub use catalog::FanoRecord;
pub use dseries::{fit_operator, solve_series, verify_weak_lg, DOperator, VerificationReport};
pub use laurent::{constant_term_series, constant_term_series_mitm, LaurentPoly, Monomial, PowerSeries};
pub use polytope::{convex_hull, invariant_report, newton_polytope, LatticePolytope};
pub use search::{search, SearchConfig, SupportAnsatz};
