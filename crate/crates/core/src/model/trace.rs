use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::card::{Card, PlayerId, Spot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    ShapeUp,
    ShipOut,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::ShapeUp => "shape up",
            Phase::ShipOut => "ship out",
        })
    }
}

/// Where a requested card was found when it was shipped in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "location", rename_all = "snake_case")]
pub enum CardSource {
    Deck,
    OwnHand { spot: Spot },
    Hand { player: PlayerId, spot: Spot },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GameEvent {
    /// The leftmost spade at `from_spot` traded places with the card in spot 0.
    ShapeUp {
        player: PlayerId,
        from_spot: Spot,
        spade: Card,
        displaced: Card,
    },
    /// The leftmost bad spade at `spot` was exchanged for `requested`.
    ShipOut {
        player: PlayerId,
        spot: Spot,
        bad_spade: Card,
        requested: Card,
        source: CardSource,
    },
}

impl GameEvent {
    pub fn player(&self) -> &PlayerId {
        match self {
            GameEvent::ShapeUp { player, .. } | GameEvent::ShipOut { player, .. } => player,
        }
    }

    pub fn phase(&self) -> Phase {
        match self {
            GameEvent::ShapeUp { .. } => Phase::ShapeUp,
            GameEvent::ShipOut { .. } => Phase::ShipOut,
        }
    }

    pub fn display(&self, n_suits: usize) -> String {
        match self {
            GameEvent::ShapeUp {
                player,
                spade,
                displaced,
                ..
            } => format!(
                "{player}: shape up, {} <-> {}",
                spade.display(n_suits),
                displaced.display(n_suits)
            ),
            GameEvent::ShipOut {
                player,
                bad_spade,
                requested,
                source,
                ..
            } => {
                let from = match source {
                    CardSource::Deck => "the deck".to_owned(),
                    CardSource::OwnHand { spot } => format!("own spot {}", spot.0),
                    CardSource::Hand { player, spot } => format!("{player} spot {}", spot.0),
                };
                format!(
                    "{player}: ship out, {} -> {} (from {from})",
                    bad_spade.display(n_suits),
                    requested.display(n_suits)
                )
            }
        }
    }
}

/// One simultaneous round. Events are listed in seat order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub round: usize,
    pub phase: Phase,
    pub events: Vec<GameEvent>,
}

/// The rounds of a game in play order, alternating shape up / ship out.
/// The final silent round pair that confirms stability is not recorded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GameTrace {
    pub rounds: Vec<Round>,
}

impl GameTrace {
    pub fn events(&self) -> impl Iterator<Item = &GameEvent> {
        self.rounds.iter().flat_map(|r| r.events.iter())
    }

    /// Number of recorded (shape up, ship out) pairs.
    pub fn round_pairs(&self) -> usize {
        self.rounds.len().div_ceil(2)
    }

    /// One JSON object per line, newline terminated.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for round in &self.rounds {
            out.push_str(&serde_json::to_string(round).expect("round serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<GameTrace, serde_json::Error> {
        let rounds = text
            .lines()
            .filter(|line| !line.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<_, _>>()?;
        Ok(GameTrace { rounds })
    }

    /// Hex SHA-256 of the JSON-lines form.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_jsonl().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn event_json_shape() {
        let event = GameEvent::ShipOut {
            player: "you".into(),
            spot: Spot(3),
            bad_spade: Card::new("Two", 3),
            requested: Card::new("Chicken", 0),
            source: CardSource::Deck,
        };
        assert_eq!(
            serde_json::to_string(&event).unwrap(),
            r#"{"kind":"ship_out","player":"you","spot":3,"bad_spade":["Two",3],"requested":["Chicken",0],"source":{"location":"deck"}}"#
        );
        assert_eq!(event.display(4), "you: ship out, Two♠ -> Chicken♣ (from the deck)");
    }

    #[test]
    fn empty_trace_digest_is_sha256_of_nothing() {
        assert_eq!(
            GameTrace::default().digest(),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
