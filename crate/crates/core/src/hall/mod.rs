//! Hall algebra of nilpotent representations of the cyclic quiver, computed
//! by counting over finite fields and interpolating.

pub mod algebra;
pub mod canonical;
pub mod count;
pub mod field;
pub mod nilrep;

pub use algebra::{m_form, orbit_dimension, HallAlgebra, HallElement, DEFAULT_RANK_BOUND};
pub use canonical::{
    canonical_basis, crystal_from_canonical, CanonicalBasis, CanonicalElement, CrystalCheck, Word,
};
pub use count::{hall_polynomials, Validation};
pub use field::Field;
