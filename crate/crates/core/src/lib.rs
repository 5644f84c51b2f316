//! Arithmetic in GF(2^n), the quadratic tower GF(2^m) ⊂ GF(2^(2m)), and
//! tools for constructing, verifying and searching permutation trinomials
//! x + x^(s(2^m-1)+1) + x^(t(2^m-1)+1).
//!
//! ```
//! use niho::{permcheck, NihoPair, TowerCtx};
//!
//! let tower = TowerCtx::with_m(4).unwrap();
//! let pair = NihoPair::new(4, 3, -1);
//! assert!(permcheck::unit_circle_check(&tower, &pair).is_permutation);
//! ```

pub mod cli;
pub mod error;
pub mod gf;
pub mod gf2x;
pub mod loweq;
pub mod modarith;
pub mod niho;
pub mod permcheck;
pub mod poly;
pub mod survey;
pub mod tower;

pub use error::{Error, Result};
pub use gf::{make_field, FieldCtx, FieldElement};
pub use niho::{NihoPair, Fraction};
pub use permcheck::PermReport;
pub use poly::{SparsePoly, TrinomialSpec};
pub use survey::SearchRow;
pub use tower::TowerCtx;
