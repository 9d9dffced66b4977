//! Automata generating shifts `f(i + c)` of the Fibonacci word from the
//! Zeckendorf representation of `i`, read in either direction.
//!
//! Exact arithmetic in `Q(√5)` drives everything: points `{nφ}` on the
//! circle, the interval partitions they cut, and the builders on top.

pub mod builders;
pub mod dfao;
pub mod error;
pub mod fibword;
pub mod golden;
pub mod oracle;
pub mod partitions;
pub mod zeckendorf;

pub use builders::{build_lsd, build_msd, builder_by_name, builders, msd_state_bound, predicted_lsd_states, ShiftBuilder};
pub use dfao::{Dfao, Order, State};
pub use error::{Error, Result};
pub use fibword::{shifted, FibWordMethod, FibWordOracle};
pub use golden::{CircInterval, FracPoint, QuadNum};
pub use oracle::{brute_min_dfao, brute_min_dfao_stable, check_lemma, SequenceOracle};
pub use partitions::GoldenPartition;
