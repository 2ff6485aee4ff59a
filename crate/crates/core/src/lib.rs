//! Choice-free division by `N` for finite sets.
//!
//! Given an injection `A x N -> B x N`, the card game in [`engine`] plays
//! simultaneous Shape Up / Ship Out rounds to a fixed point and reads off an
//! injection `A x (N-1) -> B x (N-1)`. [`division`] repeats this down to an
//! injection `A -> B`. The result depends only on the input map, never on
//! how players or pictures are named or ordered.
//!
//! ```
//! use pan_galactic_division::division::divide;
//! use pan_galactic_division::model::{Card, InjectionMap, PlayerId};
//!
//! let f = InjectionMap::new(2, [(PlayerId::from("a"), vec![Card::new("x", 0), Card::new("y", 1)])]).unwrap();
//! let report = divide(&f).unwrap();
//! assert_eq!(report.result[&PlayerId::from("a")].as_str(), "x");
//! ```

pub mod cli;
pub mod division;
pub mod engine;
pub mod model;
pub mod oracle;
