use std::fmt;

use serde::{Deserialize, Serialize};

/// A player, i.e. an element of the domain set `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlayerId(String);

/// A card picture, i.e. an element of the codomain set `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PictureId(String);

macro_rules! string_id {
    ($ty:ident) => {
        impl $ty {
            pub fn new(id: impl Into<String>) -> Self {
                $ty(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $ty {
            fn from(s: &str) -> Self {
                $ty(s.to_owned())
            }
        }

        impl From<String> for $ty {
            fn from(s: String) -> Self {
                $ty(s)
            }
        }
    };
}

string_id!(PlayerId);
string_id!(PictureId);

/// Suit index in `0..n`. Suit `n - 1` is the spade suit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Suit(pub usize);

impl Suit {
    pub fn spade(n_suits: usize) -> Suit {
        Suit(n_suits - 1)
    }

    pub fn is_spade(self, n_suits: usize) -> bool {
        self.0 + 1 == n_suits
    }

    /// The spot whose name is this suit.
    pub fn home_spot(self, n_suits: usize) -> Spot {
        Spot(n_suits - 1 - self.0)
    }
}

/// Position within a hand; spot 0 is leftmost.
///
/// Spot `j` is named by suit `n - 1 - j`, so the leftmost spot is the spade
/// spot. With four suits the spots read spades, hearts, diamonds, clubs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spot(pub usize);

impl Spot {
    pub const LEFTMOST: Spot = Spot(0);

    pub fn named_suit(self, n_suits: usize) -> Suit {
        Suit(n_suits - 1 - self.0)
    }
}

/// A card of the deck `B x N`: a picture together with a suit.
///
/// Serialized as a two-element array `["picture", suit]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(PictureId, Suit)", into = "(PictureId, Suit)")]
pub struct Card {
    pub picture: PictureId,
    pub suit: Suit,
}

impl Card {
    pub fn new(picture: impl Into<PictureId>, suit: usize) -> Card {
        Card {
            picture: picture.into(),
            suit: Suit(suit),
        }
    }

    pub fn is_spade(&self, n_suits: usize) -> bool {
        self.suit.is_spade(n_suits)
    }

    /// Human-readable form. Classic suit symbols are used only for four suits.
    pub fn display(&self, n_suits: usize) -> CardDisplay<'_> {
        CardDisplay {
            card: self,
            n_suits,
        }
    }
}

impl From<(PictureId, Suit)> for Card {
    fn from((picture, suit): (PictureId, Suit)) -> Self {
        Card { picture, suit }
    }
}

impl From<Card> for (PictureId, Suit) {
    fn from(card: Card) -> Self {
        (card.picture, card.suit)
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.picture, self.suit.0)
    }
}

pub struct CardDisplay<'a> {
    card: &'a Card,
    n_suits: usize,
}

const CLASSIC_SUITS: [char; 4] = ['♣', '♦', '♥', '♠'];

impl fmt::Display for CardDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_suits == 4 && self.card.suit.0 < 4 {
            write!(f, "{}{}", self.card.picture, CLASSIC_SUITS[self.card.suit.0])
        } else {
            write!(f, "{}/{}", self.card.picture, self.card.suit.0)
        }
    }
}
