//! Exact toolkit for lattice simplices: Hermite and Smith normal forms, the
//! finite abelian group attached to a simplex, Gorenstein certificates with
//! dual reflexive simplices, explicit families with closed-form predictions,
//! and brute-force catalogs to check those predictions against.

pub mod error;
pub mod exact;
pub mod families;
pub mod gorenstein;
pub mod oracle;
pub mod serial;
pub mod simplex;

pub use error::{Error, Result};
