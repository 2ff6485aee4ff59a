//! The game itself: simultaneous Shape Up and Ship Out rounds, fixed-point
//! detection and extraction of the reduced injection.
//!
//! Every round reads all of its swaps from the frozen pre-round position and
//! then applies them together. Shape Up swaps stay inside single hands. Ship
//! Out swaps pair a bad spade with a non-spade card named by a distinct hand,
//! so the transpositions of one round are pairwise disjoint; this is checked
//! rather than assumed.

use std::collections::{HashMap, HashSet};

use indexmap::IndexMap;
use thiserror::Error;

use crate::model::{
    Card, CardSource, GameEvent, GameTrace, InjectionMap, Location, Phase,
    PictureId, PlayerId, Round, Slot, Spot, TableError, TableState,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unknown player {0}")]
    UnknownPlayer(PlayerId),
    #[error("hand of {0} holds a spade but spot 0 is not a spade")]
    UnshapedHand(PlayerId),
    #[error("{first} and {second} both request {card}")]
    RequestConflict {
        card: Card,
        first: PlayerId,
        second: PlayerId,
    },
    #[error("requested card {0} is nowhere on the table")]
    RequestedCardMissing(Card),
    #[error("two exchanges in one round touch the same slot (seat {}, spot {})", .0.seat, .0.spot.0)]
    OverlappingExchange(Slot),
    #[error("no fixed point within {0} round pairs")]
    RoundLimitExceeded(usize),
    #[error("position is not stable")]
    NotStable,
    #[error("extraction needs at least 2 suits, got {0}")]
    TooFewSuits(usize),
    #[error(transparent)]
    Table(TableError),
}

impl From<TableError> for EngineError {
    fn from(err: TableError) -> Self {
        match err {
            TableError::UnknownPlayer(p) => EngineError::UnknownPlayer(p),
            other => EngineError::Table(other),
        }
    }
}

/// Result of one round: the new position and what happened.
#[derive(Clone, Debug)]
pub struct RoundOutcome {
    pub state: TableState,
    pub events: Vec<GameEvent>,
    pub changed: bool,
}

impl RoundOutcome {
    fn new(state: TableState, events: Vec<GameEvent>) -> Self {
        let changed = !events.is_empty();
        RoundOutcome {
            state,
            events,
            changed,
        }
    }
}

/// Default round-pair cap for a game with `n_players` hands of `n_suits`.
pub fn default_round_cap(n_suits: usize, n_players: usize) -> usize {
    2 * n_suits * n_players + 2
}

pub fn hand_name(state: &TableState, player: &PlayerId) -> Result<Option<PictureId>, EngineError> {
    Ok(state.hand_name(player)?.cloned())
}

fn leftmost_spade_spot(hand: &[Card], n_suits: usize) -> Option<Spot> {
    hand.iter().position(|c| c.is_spade(n_suits)).map(Spot)
}

pub fn shape_up_round(state: &TableState) -> RoundOutcome {
    let n = state.n_suits();
    let mut next = state.clone();
    let mut events = Vec::new();
    for (seat, (player, hand)) in state.hands().enumerate() {
        match leftmost_spade_spot(hand, n) {
            Some(Spot(0)) | None => {}
            Some(from_spot) => {
                events.push(GameEvent::ShapeUp {
                    player: player.clone(),
                    from_spot,
                    spade: hand[from_spot.0].clone(),
                    displaced: hand[0].clone(),
                });
                next.swap_slots(
                    Slot { seat, spot: Spot::LEFTMOST },
                    Slot { seat, spot: from_spot },
                );
            }
        }
    }
    RoundOutcome::new(next, events)
}

fn bad_spade_in(hand: &[Card], n_suits: usize, player: &PlayerId) -> Result<Option<Spot>, EngineError> {
    match leftmost_spade_spot(hand, n_suits) {
        None => Ok(None),
        Some(Spot(0)) => Ok(hand
            .iter()
            .skip(1)
            .position(|c| c.is_spade(n_suits))
            .map(|k| Spot(k + 1))),
        Some(_) => Err(EngineError::UnshapedHand(player.clone())),
    }
}

/// Smallest spot `j >= 1` holding a spade in a named, shaped hand.
pub fn leftmost_bad_spade(state: &TableState, player: &PlayerId) -> Result<Option<Spot>, EngineError> {
    let hand = state.hand(player)?;
    bad_spade_in(hand, state.n_suits(), player)
}

fn request_for(hand: &[Card], n_suits: usize, player: &PlayerId) -> Result<Option<(Spot, Card)>, EngineError> {
    let Some(spot) = bad_spade_in(hand, n_suits, player)? else {
        return Ok(None);
    };
    let name = hand[0].picture.clone();
    Ok(Some((
        spot,
        Card {
            picture: name,
            suit: spot.named_suit(n_suits),
        },
    )))
}

/// The card a player asks for in Ship Out: the hand's name in the suit that
/// names the spot of the leftmost bad spade.
pub fn requested_card(state: &TableState, player: &PlayerId) -> Result<Option<Card>, EngineError> {
    let hand = state.hand(player)?;
    Ok(request_for(hand, state.n_suits(), player)?.map(|(_, card)| card))
}

struct Request {
    seat: usize,
    spot: Spot,
    target: Location,
    requested: Card,
}

pub fn ship_out_round(state: &TableState) -> Result<RoundOutcome, EngineError> {
    let n = state.n_suits();
    let mut requests = Vec::new();
    let mut asked_by: HashMap<Card, usize> = HashMap::new();
    for (seat, (player, hand)) in state.hands().enumerate() {
        let Some((spot, requested)) = request_for(hand, n, player)? else {
            continue;
        };
        if let Some(&other) = asked_by.get(&requested) {
            return Err(EngineError::RequestConflict {
                card: requested,
                first: state.players()[other].clone(),
                second: player.clone(),
            });
        }
        asked_by.insert(requested.clone(), seat);
        let target = state
            .locate(&requested)
            .ok_or_else(|| EngineError::RequestedCardMissing(requested.clone()))?;
        requests.push(Request {
            seat,
            spot,
            target,
            requested,
        });
    }

    let mut touched = HashSet::with_capacity(2 * requests.len());
    let mut touch = |slot: Slot| {
        if touched.insert(slot) {
            Ok(())
        } else {
            Err(EngineError::OverlappingExchange(slot))
        }
    };
    for req in &requests {
        touch(Slot { seat: req.seat, spot: req.spot })?;
        if let Location::Hand(slot) = req.target {
            touch(slot)?;
        }
    }

    let mut next = state.clone();
    let mut events = Vec::with_capacity(requests.len());
    for req in requests {
        let own = Slot { seat: req.seat, spot: req.spot };
        let player = state.players()[req.seat].clone();
        let source = match req.target {
            Location::Deck => {
                next.exchange_with_deck(own, &req.requested);
                CardSource::Deck
            }
            Location::Hand(slot) => {
                next.swap_slots(own, slot);
                if slot.seat == req.seat {
                    CardSource::OwnHand { spot: slot.spot }
                } else {
                    CardSource::Hand {
                        player: state.players()[slot.seat].clone(),
                        spot: slot.spot,
                    }
                }
            }
        };
        events.push(GameEvent::ShipOut {
            player,
            spot: req.spot,
            bad_spade: state.card_at(own).clone(),
            requested: req.requested,
            source,
        });
    }
    Ok(RoundOutcome::new(next, events))
}

/// True when no spade sits outside spot 0 of any hand.
pub fn is_stable(state: &TableState) -> bool {
    let n = state.n_suits();
    state
        .hands()
        .all(|(_, hand)| hand.iter().skip(1).all(|c| !c.is_spade(n)))
}

/// Plays alternating round pairs until a pair changes nothing.
///
/// The pair that confirms stability counts against `max_round_pairs` but is
/// not recorded in the trace.
pub fn run_to_stability(
    state: &TableState,
    max_round_pairs: usize,
) -> Result<(TableState, GameTrace), EngineError> {
    let mut current = state.clone();
    let mut trace = GameTrace::default();
    for _ in 0..max_round_pairs {
        let shaped = shape_up_round(&current);
        let shipped = ship_out_round(&shaped.state)?;
        if !shaped.changed && !shipped.changed {
            debug_assert!(is_stable(&current));
            return Ok((current, trace));
        }
        let index = trace.rounds.len();
        trace.rounds.push(Round {
            round: index + 1,
            phase: Phase::ShapeUp,
            events: shaped.events,
        });
        trace.rounds.push(Round {
            round: index + 2,
            phase: Phase::ShipOut,
            events: shipped.events,
        });
        current = shipped.state;
    }
    Err(EngineError::RoundLimitExceeded(max_round_pairs))
}

/// Reads the non-left spots of a stable position as an injection
/// `A x (N-1) -> B x (N-1)`: entry `(a, j-1)` is the card in spot `j`.
pub fn extract(state: &TableState) -> Result<InjectionMap, EngineError> {
    let n = state.n_suits();
    if n < 2 {
        return Err(EngineError::TooFewSuits(n));
    }
    if !is_stable(state) {
        return Err(EngineError::NotStable);
    }
    let rows: IndexMap<PlayerId, Vec<Card>> = state
        .hands()
        .map(|(player, hand)| (player.clone(), hand[1..].to_vec()))
        .collect();
    Ok(InjectionMap::from_checked_rows(n - 1, rows))
}
