//! Finite nilpotent groups of class two: amalgam embeddability in every
//! subvariety `(m, n)`, dominions, root adjunction and amalgamation bases,
//! each decided by a closed criterion and cross-checkable against explicit
//! coproducts.

pub mod abelian;
pub mod amalgam;
pub mod arith;
pub mod bases;
pub mod catalog;
pub mod budget;
mod classes;
pub mod construct;
pub mod coproduct;
pub mod dominion;
pub mod error;
pub mod group;
pub mod hom;
pub mod par;
pub mod pc;
pub mod roots;
pub mod subgroup;
pub mod variety;
pub mod verdict;

pub use amalgam::Amalgam;
pub use coproduct::{coproduct_mn, AmalgamatedCoproduct, Coproduct};
pub use error::{Error, Result};
pub use group::{Elem, Group};
pub use hom::Hom;
pub use pc::{PcBuilder, PcPresentation};
pub use subgroup::Subgroup;
pub use variety::Variety;
pub use verdict::{Verdict, Witness};
