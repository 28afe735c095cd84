//! Exact differential algebra over matrix-valued derivations.
//!
//! The base field is `Q(t1..tm)` with a configurable derivation. On top of
//! it sit differential polynomials in `Y_{ij}` and the ring `F{Y}[X]` where
//! the derivation acts by `D(X) = A X`.

pub mod darboux;
pub mod det;
pub mod diffring;
pub mod error;
pub mod gl2;
pub mod linalg;
pub mod matring;
pub mod scalar;
pub mod tpoly;
pub mod wronskian;
pub mod zpoly;

pub use darboux::{
    classify_darboux, darboux_cofactor, enumerate_darboux, enumerate_darboux_generic,
    fuzz_darboux_diffring, is_constant,
};
pub use det::{bareiss_det, cofactor_det, cofactor_det_bounded, dodgson_det, Condensed, DetRing};
pub use diffring::{DiffMonomial, DiffPoly, DiffVar};
pub use error::{AlgebraError, Result};
pub use gl2::{
    abcdefgh, abcdefgh_expanded, ah_consistency, expansion_discrepancies, find_linear_darboux,
    m_closed_form, m_closed_form_unsquared, m_det, m_det_spec, m_from_wronskian, theta_constant,
    w1_factorization_check, Abcdefgh, Discrepancy, LinearDarboux, Theta, ThetaRejection,
    W1Factorization,
};
pub use linalg::Matrix;
pub use matring::{
    coeff_in_derivative, derivation_from_basis, det_x, divide_reduce, leading_power_product,
    specialize, DerivationKind, DerivationSpec, RPoly, XMonomial,
};
pub use scalar::{FieldConfig, Scalar};
pub use tpoly::{TMonomial, TPoly};
pub use wronskian::{
    check_specialization, wronskian_det, wronskian_det_checked, wronskian_matrix, DetMethod,
    MonomialBasis, WronskianReport,
};
pub use zpoly::ZPoly;
