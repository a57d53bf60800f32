//! The diagonal reduction algebra `Z_n`: elements, ordering rules, the
//! rewriting engine, the relation system, basis changes, Zhelobenko
//! automorphisms, involutions and central elements.

mod auto;
mod element;
mod hat;
mod normal;
mod relations;
mod rules;
mod verify;

pub use element::{word_weight, Basis, ZElement, ZWord};
pub use normal::{measure, normal_order, normal_order_with, star, NormalOrderOptions, RewriteStats, Strategy, STEP_CAP_ENV};
pub use rules::{derive_ordering_rules, derive_rules_with, oracle_normal_form, ordered_words, product_matrix, OrderingRule, RuleSet};
pub use hat::{change_basis, hat_letter_in_plain, plain_letter_in_hat, t_in_tring, to_plain, tring_in_t, zhat_factor, Direction};
pub use relations::{build_family, build_relations, Family, Relation};
pub use auto::{
    central_elements, epsilon, involution, inversion_rhs, linear_central_in_tring, longest_closed_form, longest_word, omega,
    q_generator, q_inverse_generator, reduced_word, sigma_square_sign, zhelobenko, zhelobenko_inverse, zhelobenko_longest, zhelobenko_word, Involution,
};
pub use verify::{verify_weight_block, WeightBlockReport, DENOMINATOR_SHIFT_BOUND};
