//! Exact computation of Jones polynomials of rational (two-bridge) knots.
//!
//! The library evaluates the Jones polynomial of `K_{p/q}` by three
//! independent routes over exact Laurent-polynomial arithmetic, implements
//! sequence moves on continued-fraction presentations that preserve the
//! polynomial, and runs a determinant-bounded census that groups knots by
//! identical Jones polynomial and tries to explain each group by a move.
//!
//! Integer sequences are always in display order: `(n_k, ..., n_1)` with the
//! outermost twist box first, evaluating to
//! `n_k - 1/(n_{k-1} - 1/(... - 1/n_1))`.

pub mod census;
pub mod cli;
pub mod error;
pub mod jones;
pub mod rational;
pub mod ring;
pub mod tangle;
pub mod template;

pub use error::{Error, Result};
pub use jones::{
    det_of, equal_up_to_unit, jones_even, jones_general, jones_knot, jones_span, jones_subsets,
    product_identity_witness, subset_expansion, MSeq,
};
pub use rational::{
    even_cf, eval_cf, make_q_even, mirror_class, schubert_canonical, IntSeq, KnotClass, Rat,
};
pub use ring::{qnumber, GaussInt, LaurentT, LaurentU, UnitFactor};
pub use tangle::{
    b_matrix, b_product, bracket_vector, c0_recognize, c_form_verify, tangle_type_of, writhe_vector,
    CForm, Mat2U, TangleType, WritheVec,
};
pub use template::{
    pivot_check, pivot_generate, seq_star, template_one, template_pivot, template_two, ArrowFlag,
    StarFlag, TemplateInstance,
};
