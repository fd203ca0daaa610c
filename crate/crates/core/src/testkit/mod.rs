//! Instance generators and exhaustive oracles used to check the recognizer
//! on small inputs.

mod generators;
mod oracle;

pub use generators::{
    gen_line_distance, gen_shuffled_robinson, gen_toeplitz, gen_ultrametric, generate, perturb, GeneratorKind,
    GeneratorSpec, Instance,
};
pub use oracle::{
    all_compatible_orders, brute_force_compatible_order, count_compatible_orders, enumerate_mmodules, flat_law_holds,
    triple_check, OracleError, BRUTE_LIMIT, ENUMERATION_LIMIT,
};
