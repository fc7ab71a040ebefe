//! Refined canonical stable Grothendieck polynomials `G_λ(x; a, b)`, their
//! duals `g_λ(x; a, b)`, and the determinantal and combinatorial formulas
//! relating them, computed exactly over the integers.

pub mod error;
pub mod ring;

pub use error::{Error, Result};
pub use ring::{det, exact_divide, Assignment, Context, Family, FamilyRule, Monomial, Subst, TruncPoly, VarId};
pub mod shapes;
pub mod symfunc;
pub mod grothendieck;
pub mod tableaux;
pub mod lgv;
pub mod format;
