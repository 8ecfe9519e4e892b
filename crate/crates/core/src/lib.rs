//! Exact decision procedures for S-n-absorbing ideals of finite commutative
//! rings with identity.
//!
//! Rings are compiled to dense operation tables over canonical element
//! indices; ideals and multiplicative sets are bitsets over those indices.
//!
//! ```
//! use snabs_core::{classify, dsl, ideal::Ideal};
//!
//! let ring = dsl::parse_ring("Z/12").unwrap();
//! let zero = Ideal::zero(&ring);
//! let set = dsl::parse_mult("mult(1)", &ring).unwrap();
//! assert_eq!(classify::omega(&zero, &set).unwrap().value, 3);
//! ```

pub mod amalgam;
pub mod classify;
pub mod dsl;
pub mod error;
pub mod ideal;
pub mod mult;
pub mod ring;
pub mod set;
pub mod verdict;

pub use error::{Error, Result};
pub use ideal::{all_ideals, Ideal, IdealLattice, IdealOp};
pub use mult::{extend_ideal, localize, mult_closure, sat_ideal, Localization, MultSet};
pub use ring::{FiniteRing, RingElement, RingHom};
pub use set::ElemSet;
pub use verdict::{with_time_cap, Check, Verdict};
