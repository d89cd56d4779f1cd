//! Partial difference sets with Denniston parameters in the additive group
//! of F_{q^m} × F_{q^{2m}}, built from cyclotomic classes and the elliptic
//! quadratic form Tr_{q^m/q}(x^(q^m+1)), together with exact verifiers.
//!
//! ```
//! use pds_core::{construction, cyclotomy, verify, FieldTable};
//!
//! let table = FieldTable::build(2, 1, 2).unwrap();
//! let r = cyclotomy::default_subspace(&table, 1).unwrap();
//! let set = construction::build_denniston(&table, &r).unwrap();
//! assert_eq!(set.claimed().to_string(), "(64, 18, 2, 6)");
//!
//! let report = verify::verify(&table, &set, Default::default()).unwrap();
//! assert_eq!(report.verdict, "PDS");
//! ```

pub mod construction;
pub mod cycint;
pub mod cyclotomy;
pub mod error;
pub mod export;
pub mod gf_tower;
pub mod group;
pub mod params;
mod poly;
pub mod quad_form;
pub mod verify;

pub use construction::PdsSet;
pub use cycint::CycInt;
pub use error::{Error, Result};
pub use gf_tower::{FieldElem, FieldSpec, FieldTable};
pub use group::{GroupElem, GroupKind};
pub use params::ParamSet;
