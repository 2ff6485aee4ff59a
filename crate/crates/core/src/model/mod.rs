//! Domain types: cards, hands, table positions, finite injections and game
//! traces.

mod card;
mod injection;
mod instance;
mod table;
mod trace;

pub use card::{Card, CardDisplay, PictureId, PlayerId, Spot, Suit};
pub use injection::{InjectionMap, Pair, ValidationError};
pub use instance::{validate_instance, CheckedInstance, Instance};
pub use table::{new_table, Location, Slot, TableError, TableSnapshot, TableState};
pub use trace::{CardSource, GameEvent, GameTrace, Phase, Round};
