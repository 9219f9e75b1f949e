//! Complete simple games with two types of voters.
//!
//! A complete game whose voters fall into two classes `N1 > N2` is
//! determined up to isomorphism by the class sizes `(n1, n2)` and the
//! δ-minimal winning profiles, listed with strictly decreasing first
//! component. This crate
//!
//! * validates and materializes such descriptions ([`model`], [`analysis`]),
//! * recovers them from explicit games ([`analysis::parametrize`]),
//! * streams all of them for a given number of voters ([`enumeration`]),
//! * counts them exactly, `H(n) = F(n+6) - (n^2+4n+8)` ([`counting`]),
//! * and checks the count against a brute-force census of all simple games
//!   on up to five voters ([`oracle`]).
//!
//! ```
//! use two_type_games::{analysis, model};
//!
//! let spec = model::validate_spec(2, 3, "2,0;0,3".parse::<model::MatrixM>()?.rows().to_vec())?;
//! let game = analysis::realize(&spec);
//! assert_eq!(game.minimal_winning().len(), 8);
//! assert_eq!(analysis::parametrize(&game)?, spec);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod analysis;
pub mod cli;
pub mod counting;
pub mod enumeration;
pub mod model;
pub mod oracle;

pub use analysis::{classify, parametrize, realize};
pub use counting::{count_h_formula, count_h_sum, fib, BigCount};
pub use enumeration::{enumerate_all, enumerate_split};
pub use model::{CompleteGameSpec, MatrixM, Profile, SimpleGame};
