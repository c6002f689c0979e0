//! Executable replays of the injectivity arguments: the counterexample, the
//! product-expansion recursion, and the odd and even certification pipelines.

pub mod counterexample;
pub mod even;
pub mod expand;
pub mod instances;
pub mod odd;

pub use counterexample::reproduce_counterexample;
pub use even::{certify_even_triviality, EvenInstance, EvenOutcome};
pub use expand::{expand_product_coefficients, verify_expand_lemma};
pub use odd::{certify_odd_injectivity, OddInstance, OddOutcome};
