//! The algebra H_{1,ν}(I_2(n)): normal forms, multiplication and the
//! singlet subalgebra.
//!
//! A normal word is an ordered monomial in a⁰ < a¹ < b⁰ < b¹ followed by
//! one group factor L_p or Q_p. Products are reduced by moving letters
//! into order with the commutation relations and pushing group factors
//! to the right with the transport rules.

mod element;
mod engine;
pub(crate) mod int;
mod parse;
mod special;
pub mod word;

pub use element::AlgebraElement;
pub use engine::{add_to as add_into, RatVec, Sra};
pub use parse::parse_element;
pub use special::{
    h0_basis, singlet, singlet_factor, t_element, t_elements, verify_singlet_relations, H0Element,
};
pub use word::{NormalWord, A0, A1, B0, B1};
