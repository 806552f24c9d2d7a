//! Word statistics for binary words: the complexity functional Σ (sum of squared
//! factor occurrence counts), the power functional Λ, and an eventual-periodicity
//! classifier built on the limit of Σ(x₁⋯xₙ)/n³.

pub mod asymptotics;
pub mod automaton;
pub mod error;
pub mod lambda;
pub mod reproduce;
pub mod sigma;
pub mod suffix_array;
pub mod word;

pub use error::{Error, Result};
pub use lambda::{lambda, lambda_naive, runs, PowerWitness, Run};
pub use sigma::{sigma, sigma_naive, BigCount, CheckpointScheme, Profile};
pub use word::{GeneratorKind, GeneratorSpec, Ratio, Word};
