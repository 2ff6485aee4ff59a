use std::collections::{HashMap, HashSet};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::card::{Card, PictureId, PlayerId, Spot, Suit};
use super::injection::InjectionMap;
use super::instance::CheckedInstance;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("unknown player {0}")]
    UnknownPlayer(PlayerId),
    #[error("table invariant violated: {0}")]
    Corrupt(String),
}

/// A hand slot, addressed by the player's seat (position in the declared
/// player list) and the spot within the hand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub seat: usize,
    pub spot: Spot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Hand(Slot),
    Deck,
}

/// A full game position: every player's hand of `n_suits` cards plus the
/// undealt deck. Hand cards and deck together are exactly `pictures x n_suits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableState {
    n_suits: usize,
    players: Vec<PlayerId>,
    pictures: Vec<PictureId>,
    hands: Vec<Vec<Card>>,
    deck: HashSet<Card>,
    seats: HashMap<PlayerId, usize>,
    slots: HashMap<Card, Slot>,
}

/// Serializable view of a [`TableState`], hands in seat order and deck in
/// declared picture order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSnapshot {
    pub n_suits: usize,
    pub pictures: Vec<PictureId>,
    pub hands: IndexMap<PlayerId, Vec<Card>>,
    pub deck: Vec<Card>,
}

/// Lays the deal out on the table: slot `(a, j)` holds `deal(a, j)` and the
/// deck holds every other card of `pictures x N`.
pub fn new_table(inst: &CheckedInstance) -> TableState {
    TableState::from_injection(inst.deal(), inst.pictures().to_vec())
}

/// Picture of the leftmost spade in `hand`, if any.
fn leftmost_spade_picture(hand: &[Card], n_suits: usize) -> Option<&PictureId> {
    hand.iter()
        .find(|card| card.is_spade(n_suits))
        .map(|card| &card.picture)
}

impl TableState {
    /// Builds the table for `deal` over the given picture list. Every image
    /// picture must appear in `pictures`.
    pub fn from_injection(deal: &InjectionMap, pictures: Vec<PictureId>) -> TableState {
        let n_suits = deal.n_indices();
        let players: Vec<PlayerId> = deal.players().cloned().collect();
        let hands: Vec<Vec<Card>> = deal.rows().map(|(_, row)| row.to_vec()).collect();
        let seats = players
            .iter()
            .enumerate()
            .map(|(seat, p)| (p.clone(), seat))
            .collect();
        let mut slots = HashMap::with_capacity(players.len() * n_suits);
        for (seat, hand) in hands.iter().enumerate() {
            for (j, card) in hand.iter().enumerate() {
                slots.insert(card.clone(), Slot { seat, spot: Spot(j) });
            }
        }
        let deck = pictures
            .iter()
            .flat_map(|b| (0..n_suits).map(move |s| Card::new(b.clone(), s)))
            .filter(|card| !slots.contains_key(card))
            .collect();
        let state = TableState {
            n_suits,
            players,
            pictures,
            hands,
            deck,
            seats,
            slots,
        };
        debug_assert!(state.check_invariants().is_ok());
        state
    }

    pub fn n_suits(&self) -> usize {
        self.n_suits
    }

    pub fn players(&self) -> &[PlayerId] {
        &self.players
    }

    pub fn pictures(&self) -> &[PictureId] {
        &self.pictures
    }

    pub fn seat(&self, player: &PlayerId) -> Result<usize, TableError> {
        self.seats
            .get(player)
            .copied()
            .ok_or_else(|| TableError::UnknownPlayer(player.clone()))
    }

    pub fn hand(&self, player: &PlayerId) -> Result<&[Card], TableError> {
        self.seat(player).map(|seat| self.hand_at(seat))
    }

    pub fn hand_at(&self, seat: usize) -> &[Card] {
        &self.hands[seat]
    }

    /// `(player, hand)` pairs in seat order.
    pub fn hands(&self) -> impl Iterator<Item = (&PlayerId, &[Card])> {
        self.players
            .iter()
            .zip(self.hands.iter().map(Vec::as_slice))
    }

    pub fn deck(&self) -> &HashSet<Card> {
        &self.deck
    }

    pub fn card_at(&self, slot: Slot) -> &Card {
        &self.hands[slot.seat][slot.spot.0]
    }

    /// Where `card` currently lies; `None` if it is not part of this table.
    pub fn locate(&self, card: &Card) -> Option<Location> {
        if let Some(slot) = self.slots.get(card) {
            Some(Location::Hand(*slot))
        } else if self.deck.contains(card) {
            Some(Location::Deck)
        } else {
            None
        }
    }

    pub(crate) fn swap_slots(&mut self, a: Slot, b: Slot) {
        if a == b {
            return;
        }
        let card_a = self.hands[a.seat][a.spot.0].clone();
        let card_b = self.hands[b.seat][b.spot.0].clone();
        self.slots.insert(card_a.clone(), b);
        self.slots.insert(card_b.clone(), a);
        self.hands[a.seat][a.spot.0] = card_b;
        self.hands[b.seat][b.spot.0] = card_a;
    }

    /// Puts `incoming` (taken from the deck) into `slot`; the displaced card
    /// goes to the deck and is returned.
    pub(crate) fn exchange_with_deck(&mut self, slot: Slot, incoming: &Card) -> Card {
        let removed = self.deck.remove(incoming);
        debug_assert!(removed, "{incoming} is not in the deck");
        let outgoing = std::mem::replace(&mut self.hands[slot.seat][slot.spot.0], incoming.clone());
        self.slots.remove(&outgoing);
        self.slots.insert(incoming.clone(), slot);
        self.deck.insert(outgoing.clone());
        outgoing
    }

    /// Name of the hand: the picture of its leftmost spade. Once the hand is
    /// shaped this is the spade in spot 0. Spadeless hands are unnamed.
    pub fn hand_name(&self, player: &PlayerId) -> Result<Option<&PictureId>, TableError> {
        let hand = self.hand(player)?;
        Ok(leftmost_spade_picture(hand, self.n_suits))
    }

    /// Number of spots `j` holding the card (hand name, suit named by `j`);
    /// zero for an unnamed hand.
    pub fn quality(&self, player: &PlayerId) -> Result<usize, TableError> {
        let hand = self.hand(player)?;
        let Some(name) = leftmost_spade_picture(hand, self.n_suits) else {
            return Ok(0);
        };
        Ok(hand
            .iter()
            .enumerate()
            .filter(|(j, card)| card.picture == *name && card.suit == Spot(*j).named_suit(self.n_suits))
            .count())
    }

    /// Full re-check of the card accounting invariants.
    pub fn check_invariants(&self) -> Result<(), TableError> {
        let corrupt = |msg: String| Err(TableError::Corrupt(msg));
        let mut seen = HashSet::new();
        for (seat, hand) in self.hands.iter().enumerate() {
            if hand.len() != self.n_suits {
                return corrupt(format!("hand of {} has {} cards", self.players[seat], hand.len()));
            }
            for (j, card) in hand.iter().enumerate() {
                if !seen.insert(card) {
                    return corrupt(format!("{card} appears twice"));
                }
                if self.slots.get(card) != Some(&Slot { seat, spot: Spot(j) }) {
                    return corrupt(format!("slot index is stale for {card}"));
                }
            }
        }
        for card in &self.deck {
            if !seen.insert(card) {
                return corrupt(format!("{card} is both dealt and in the deck"));
            }
        }
        let pictures: HashSet<&PictureId> = self.pictures.iter().collect();
        if seen.len() != self.pictures.len() * self.n_suits {
            return corrupt(format!(
                "{} cards on the table, expected {}",
                seen.len(),
                self.pictures.len() * self.n_suits
            ));
        }
        if let Some(card) = seen
            .iter()
            .find(|c| !pictures.contains(&c.picture) || c.suit >= Suit(self.n_suits))
        {
            return corrupt(format!("{card} is not part of the deck"));
        }
        Ok(())
    }

    pub fn snapshot(&self) -> TableSnapshot {
        let deck = self
            .pictures
            .iter()
            .flat_map(|b| (0..self.n_suits).map(move |s| Card::new(b.clone(), s)))
            .filter(|card| self.deck.contains(card))
            .collect();
        TableSnapshot {
            n_suits: self.n_suits,
            pictures: self.pictures.clone(),
            hands: self.hands().map(|(p, h)| (p.clone(), h.to_vec())).collect(),
            deck,
        }
    }
}
