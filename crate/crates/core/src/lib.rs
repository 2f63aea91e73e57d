pub mod expr;
pub mod grassmann;
pub mod ideal;
pub mod jet;
pub mod linalg;
pub mod morphism;
pub mod scalar;
pub mod spectrum;
pub mod structure;
pub mod verdict;

pub use expr::{Func, SmoothExpr};
pub use grassmann::{Grassmann, MultiIndex, Parity, SuperElement};
pub use scalar::{Rational, Scalar};
