//! Exact computer algebra for the super Yangian of gl(1|1) over fields of
//! odd prime characteristic p.
//!
//! The crate covers, with no floating point anywhere:
//!
//! * arithmetic in F_{p^m} and truncated series in u^{-1} over any exact
//!   coefficient ring ([`series::Tail`]);
//! * a PBW normal-form engine for the Drinfeld presentation (generators
//!   d_1, d_2, e, f) with the block order f < d_1 < d_2 < e ([`pbw`]);
//! * the RTT generating series, Gauss decomposition, Hopf structure
//!   (coproduct, counit, antipode) and the p-center series b_1(u), b_2(u)
//!   ([`rtt`], [`pbw::center`]);
//! * finite-dimensional super modules: evaluation modules, tensor products
//!   with Koszul signs, highest-weight extraction, irreducibility testing,
//!   twists, duals, and the Drinfeld-polynomial classification ([`module`]);
//! * truncated shifted quotients: pyramids, tableaux, the modules V(A) and
//!   their simple quotients L(A) ([`shifted`]).
//!
//! Containers are generic over the [`scalar::Scalar`] coefficient ring;
//! the concrete instantiations used throughout are aliased below.

pub mod cli;
pub mod error;
pub mod field;
pub mod hopf;
pub mod matrix;
pub mod module;
pub mod pbw;
pub mod poly;
pub mod report;
pub mod rtt;
pub mod scalar;
pub mod series;
pub mod shifted;
pub mod tensor;

pub use cli::run;

pub use error::{Error, Result};
pub use field::{FieldDesc, Fq};
pub use scalar::Scalar;

/// Coefficient field elements as used everywhere downstream.
pub type Coeff = Fq;

/// Scalar-valued truncated series in u^{-1}.
pub type ScalarTail = series::Tail<Fq>;

/// Series whose coefficients are polynomials over the base field.
pub type PolyTail = series::Tail<poly::Poly>;

/// Series whose coefficients are PBW normal forms, e.g. the generating
/// series d_i(u), e(u), f(u) and the p-center series b_i(u).
pub type SymbolicTail = series::Tail<pbw::Element<Fq>>;
