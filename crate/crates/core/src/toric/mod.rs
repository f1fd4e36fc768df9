//! Toric ideals of neural codes: structural matrix tests, kernel
//! enumeration, binomial Groebner machinery, and universal bases.

mod binomial;
mod graver;
mod groebner;
mod ideal;

pub use binomial::{divides, monomial_lcm, total_degree, Binomial, WeightOrder};
pub use graver::{degree_census, graver, GraverBasis};
pub use groebner::{
    initial_ideal, initial_ideal_from_weight, is_groebner_basis, reduce, reduced_gb, spair,
    ugb, ugb_via_state_polytope, weight_order_from_ints, GroebnerBasis, MonomialIdeal,
    UgbResult, UgbRoute,
};
pub use ideal::{
    claimed_ugb_pair, claimed_ugb_star, code_matrix, fiber, has_consecutive_ones, ideal_is_zero,
    is_homogeneous, is_lawrence_shaped, is_totally_unimodular, lawrence, row_transform_star,
};
