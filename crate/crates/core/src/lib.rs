//! Two-sided localization of finite bimodules at Gabriel filters.

pub mod abelian;
pub mod corpus;
pub mod dual;
pub mod error;
pub mod filter;
pub mod ideal;
pub mod iso;
pub mod limits;
pub mod localization;
pub mod module;
pub mod picard;
pub mod ring;
pub(crate) mod search;
pub mod subset;
pub mod tensor;

pub use error::{Axiom, Error, Result};
pub use subset::ElemSet;
