use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::model::{Card, CardSource, GameEvent, GameTrace, Phase, PictureId, PlayerId, Round, Spot, Suit, TableSnapshot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// Rounds out of order, misnumbered, or a silent pair recorded.
    PhaseOrder,
    /// Recorded events differ from what the rules prescribe.
    EventMismatch,
    /// A hand held a spade outside spot 0 at the start of a Ship Out round.
    UnshapedAtShipOut,
    /// Two players asked for the same card.
    RequestConflict,
    /// Two exchanges of one round touch the same slot.
    OverlappingExchange,
    /// A recorded event does not fit the position it is applied to.
    ReplayFailed,
    /// Cards duplicated, lost, or a hand of the wrong size.
    CardAccounting,
    /// A spade that had reached spot 0 moved or took part in an event.
    LeftmostSpadeMoved,
    RepeatedShapeUp,
    QualityDecreased,
    /// A Ship Out did not raise the shipper's quality by exactly one.
    ShipOutGain,
    FinalMismatch,
    NotStable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1-based round number; 0 for checks on the initial or final position.
    pub round: usize,
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "round {}: {:?}: {}", self.round, self.kind, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct GameAudit {
    pub violations: Vec<Violation>,
    /// Position reached by replaying the trace, if replay got that far.
    pub replayed: Option<TableSnapshot>,
    /// Quality of every hand after each round, starting with the initial position.
    pub quality_history: Vec<Vec<usize>>,
}

impl GameAudit {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// Working copy of a position: hands by seat plus the deck.
#[derive(Clone, PartialEq, Eq)]
struct Position {
    n: usize,
    players: Vec<PlayerId>,
    hands: Vec<Vec<Card>>,
    deck: HashSet<Card>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Place {
    Hand(usize, usize),
    Deck,
}

impl Position {
    fn from_snapshot(s: &TableSnapshot) -> Position {
        Position {
            n: s.n_suits,
            players: s.hands.keys().cloned().collect(),
            hands: s.hands.values().cloned().collect(),
            deck: s.deck.iter().cloned().collect(),
        }
    }

    fn to_snapshot(&self, pictures: &[PictureId]) -> TableSnapshot {
        let deck = pictures
            .iter()
            .flat_map(|b| (0..self.n).map(move |s| Card::new(b.clone(), s)))
            .filter(|c| self.deck.contains(c))
            .collect();
        TableSnapshot {
            n_suits: self.n,
            pictures: pictures.to_vec(),
            hands: self.players.iter().cloned().zip(self.hands.iter().cloned()).collect(),
            deck,
        }
    }

    fn is_spade(&self, c: &Card) -> bool {
        c.suit.0 == self.n - 1
    }

    fn first_spade(&self, seat: usize) -> Option<usize> {
        self.hands[seat].iter().position(|c| self.is_spade(c))
    }

    fn quality(&self, seat: usize) -> usize {
        let hand = &self.hands[seat];
        let Some(f) = self.first_spade(seat) else {
            return 0;
        };
        let name = &hand[f].picture;
        (0..self.n)
            .filter(|&j| hand[j].picture == *name && hand[j].suit.0 == self.n - 1 - j)
            .count()
    }

    fn places(&self) -> HashMap<&Card, Place> {
        let mut at = HashMap::new();
        for (seat, hand) in self.hands.iter().enumerate() {
            for (j, c) in hand.iter().enumerate() {
                at.insert(c, Place::Hand(seat, j));
            }
        }
        for c in &self.deck {
            at.insert(c, Place::Deck);
        }
        at
    }

    fn all_cards(&self) -> Vec<&Card> {
        self.hands.iter().flatten().chain(self.deck.iter()).collect()
    }
}

fn violation(round: usize, kind: ViolationKind, detail: impl Into<String>) -> Violation {
    Violation {
        round,
        kind,
        detail: detail.into(),
    }
}

/// The events the rules prescribe for a round of `phase` played from `pos`.
fn prescribed_events(pos: &Position, phase: Phase, round: usize) -> Result<Vec<GameEvent>, Violation> {
    let mut events = Vec::new();
    match phase {
        Phase::ShapeUp => {
            for seat in 0..pos.hands.len() {
                if let Some(f) = pos.first_spade(seat).filter(|&f| f > 0) {
                    events.push(GameEvent::ShapeUp {
                        player: pos.players[seat].clone(),
                        from_spot: Spot(f),
                        spade: pos.hands[seat][f].clone(),
                        displaced: pos.hands[seat][0].clone(),
                    });
                }
            }
        }
        Phase::ShipOut => {
            let places = pos.places();
            for seat in 0..pos.hands.len() {
                let hand = &pos.hands[seat];
                match pos.first_spade(seat) {
                    None => continue,
                    Some(0) => {}
                    Some(f) => {
                        return Err(violation(
                            round,
                            ViolationKind::UnshapedAtShipOut,
                            format!("{} has its leftmost spade in spot {f}", pos.players[seat]),
                        ))
                    }
                }
                let Some(bad) = (1..pos.n).find(|&j| pos.is_spade(&hand[j])) else {
                    continue;
                };
                let requested = Card {
                    picture: hand[0].picture.clone(),
                    suit: Suit(pos.n - 1 - bad),
                };
                let source = match places.get(&requested) {
                    Some(Place::Deck) => CardSource::Deck,
                    Some(&Place::Hand(holder, k)) if holder == seat => CardSource::OwnHand { spot: Spot(k) },
                    Some(&Place::Hand(holder, k)) => CardSource::Hand {
                        player: pos.players[holder].clone(),
                        spot: Spot(k),
                    },
                    None => {
                        return Err(violation(
                            round,
                            ViolationKind::CardAccounting,
                            format!("requested card {requested} is not on the table"),
                        ))
                    }
                };
                events.push(GameEvent::ShipOut {
                    player: pos.players[seat].clone(),
                    spot: Spot(bad),
                    bad_spade: hand[bad].clone(),
                    requested,
                    source,
                });
            }
        }
    }
    Ok(events)
}

/// Applies the recorded events of one round simultaneously: every swap reads
/// from `pre` and writes into a copy.
fn apply_round(pre: &Position, round: &Round) -> Result<Position, Violation> {
    let r = round.round;
    let seat_of: HashMap<&PlayerId, usize> = pre.players.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let seat = |p: &PlayerId| {
        seat_of
            .get(p)
            .copied()
            .ok_or_else(|| violation(r, ViolationKind::ReplayFailed, format!("unknown player {p}")))
    };
    let card_at = |s: usize, j: usize| pre.hands[s].get(j);
    let mismatch = |what: String| violation(r, ViolationKind::ReplayFailed, what);

    let mut next = pre.clone();
    let mut touched: HashSet<Place> = HashSet::new();
    let mut touch = |p: Place| {
        if touched.insert(p) {
            Ok(())
        } else {
            Err(violation(r, ViolationKind::OverlappingExchange, format!("{p:?} touched twice")))
        }
    };
    for event in &round.events {
        if event.phase() != round.phase {
            return Err(violation(r, ViolationKind::PhaseOrder, "event of the wrong phase"));
        }
        match event {
            GameEvent::ShapeUp {
                player,
                from_spot,
                spade,
                displaced,
            } => {
                let s = seat(player)?;
                if card_at(s, from_spot.0) != Some(spade) || card_at(s, 0) != Some(displaced) {
                    return Err(mismatch(format!("shape up of {player} does not match its hand")));
                }
                touch(Place::Hand(s, 0))?;
                touch(Place::Hand(s, from_spot.0))?;
                next.hands[s].swap(0, from_spot.0);
            }
            GameEvent::ShipOut {
                player,
                spot,
                bad_spade,
                requested,
                source,
            } => {
                let s = seat(player)?;
                if card_at(s, spot.0) != Some(bad_spade) {
                    return Err(mismatch(format!("{player} has no {bad_spade} in spot {}", spot.0)));
                }
                touch(Place::Hand(s, spot.0))?;
                let (hs, hj) = match source {
                    CardSource::Deck => {
                        if !pre.deck.contains(requested) {
                            return Err(mismatch(format!("{requested} is not in the deck")));
                        }
                        next.deck.remove(requested);
                        next.deck.insert(bad_spade.clone());
                        next.hands[s][spot.0] = requested.clone();
                        continue;
                    }
                    CardSource::OwnHand { spot: k } => (s, k.0),
                    CardSource::Hand { player: holder, spot: k } => (seat(holder)?, k.0),
                };
                if card_at(hs, hj) != Some(requested) {
                    return Err(mismatch(format!("{requested} is not where the event says")));
                }
                touch(Place::Hand(hs, hj))?;
                next.hands[s][spot.0] = requested.clone();
                next.hands[hs][hj] = bad_spade.clone();
            }
        }
    }
    Ok(next)
}

fn check_accounting(pos: &Position, universe: &HashSet<Card>, round: usize) -> Option<Violation> {
    if let Some((seat, hand)) = pos.hands.iter().enumerate().find(|(_, h)| h.len() != pos.n) {
        return Some(violation(
            round,
            ViolationKind::CardAccounting,
            format!("{} holds {} cards", pos.players[seat], hand.len()),
        ));
    }
    let cards = pos.all_cards();
    let distinct: HashSet<&Card> = cards.iter().copied().collect();
    if distinct.len() != cards.len() {
        return Some(violation(round, ViolationKind::CardAccounting, "a card appears twice"));
    }
    if distinct.len() != universe.len() || !distinct.iter().all(|c| universe.contains(*c)) {
        return Some(violation(round, ViolationKind::CardAccounting, "the set of cards changed"));
    }
    None
}

/// Replays `trace` from `initial` without judging it against the rules,
/// checking only that every recorded swap fits the position.
pub fn replay(initial: &TableSnapshot, trace: &GameTrace) -> Result<TableSnapshot, Violation> {
    let mut pos = Position::from_snapshot(initial);
    for round in &trace.rounds {
        pos = apply_round(&pos, round)?;
    }
    Ok(pos.to_snapshot(&initial.pictures))
}

/// Re-derives the whole game from `initial` by the rules and checks the
/// recorded trace and final position against it.
///
/// Checks, round by round: phase order; recorded events equal the prescribed
/// ones; requested cards are distinct; exchanges are disjoint; cards are
/// conserved with no duplicates; spades that reached spot 0 never move; each
/// player shapes up at most once; quality never drops and rises by exactly one
/// per own Ship Out. Finally the replayed position must equal `final_state`
/// and be stable.
pub fn audit_game(initial: &TableSnapshot, trace: &GameTrace, final_state: &TableSnapshot) -> GameAudit {
    let mut violations = Vec::new();
    let mut pos = Position::from_snapshot(initial);
    let universe: HashSet<Card> = pos.all_cards().into_iter().cloned().collect();
    if let Some(v) = check_accounting(&pos, &universe, 0) {
        violations.push(v);
    }
    let mut anchors: Vec<Option<Card>> = vec![None; pos.hands.len()];
    let mut shape_ups = vec![0usize; pos.hands.len()];
    let mut quality: Vec<usize> = (0..pos.hands.len()).map(|s| pos.quality(s)).collect();
    let mut quality_history = vec![quality.clone()];

    let anchor = |pos: &Position, anchors: &mut Vec<Option<Card>>, round: usize, out: &mut Vec<Violation>| {
        for (seat, slot) in anchors.iter_mut().enumerate() {
            let left = &pos.hands[seat][0];
            match slot {
                Some(card) if card != left => out.push(violation(
                    round,
                    ViolationKind::LeftmostSpadeMoved,
                    format!("{} lost {card} from spot 0", pos.players[seat]),
                )),
                Some(_) => {}
                None if pos.is_spade(left) => *slot = Some(left.clone()),
                None => {}
            }
        }
    };
    anchor(&pos, &mut anchors, 0, &mut violations);

    if trace.rounds.len() % 2 == 1 {
        violations.push(violation(0, ViolationKind::PhaseOrder, "trace ends in the middle of a round pair"));
    }

    for (idx, round) in trace.rounds.iter().enumerate() {
        let r = idx + 1;
        let expected_phase = if idx % 2 == 0 { Phase::ShapeUp } else { Phase::ShipOut };
        if round.round != r || round.phase != expected_phase {
            violations.push(violation(r, ViolationKind::PhaseOrder, format!("expected {expected_phase} as round {r}")));
            break;
        }
        if round.phase == Phase::ShipOut && round.events.is_empty() && trace.rounds[idx - 1].events.is_empty() {
            violations.push(violation(r, ViolationKind::PhaseOrder, "silent round pair recorded"));
        }

        match prescribed_events(&pos, round.phase, r) {
            Err(v) => {
                violations.push(v);
                break;
            }
            Ok(expected) if expected != round.events => {
                violations.push(violation(
                    r,
                    ViolationKind::EventMismatch,
                    format!("recorded {} events, rules prescribe {}", round.events.len(), expected.len()),
                ));
                break;
            }
            Ok(_) => {}
        }

        let mut requested_seen = HashSet::new();
        for event in &round.events {
            let GameEvent::ShipOut { requested, .. } = event else { continue };
            if !requested_seen.insert(requested) {
                violations.push(violation(r, ViolationKind::RequestConflict, format!("{requested} requested twice")));
            }
        }

        let seat_of: HashMap<&PlayerId, usize> = pos.players.iter().enumerate().map(|(i, p)| (p, i)).collect();
        for event in &round.events {
            let mut involved: Vec<(usize, Vec<&Card>)> = Vec::new();
            match event {
                GameEvent::ShapeUp { player, spade, displaced, .. } => {
                    involved.push((seat_of[player], vec![spade, displaced]));
                    shape_ups[seat_of[player]] += 1;
                    if shape_ups[seat_of[player]] > 1 {
                        violations.push(violation(r, ViolationKind::RepeatedShapeUp, format!("{player} shaped up again")));
                    }
                }
                GameEvent::ShipOut { player, bad_spade, requested, source, .. } => {
                    involved.push((seat_of[player], vec![bad_spade, requested]));
                    if let CardSource::Hand { player: holder, .. } = source {
                        involved.push((seat_of[holder], vec![bad_spade, requested]));
                    }
                }
            }
            for (seat, cards) in involved {
                if let Some(anchored) = &anchors[seat] {
                    if cards.contains(&anchored) {
                        violations.push(violation(
                            r,
                            ViolationKind::LeftmostSpadeMoved,
                            format!("{anchored} of {} appears in an event", pos.players[seat]),
                        ));
                    }
                }
            }
        }

        let next = match apply_round(&pos, round) {
            Ok(next) => next,
            Err(v) => {
                violations.push(v);
                break;
            }
        };
        if let Some(v) = check_accounting(&next, &universe, r) {
            violations.push(v);
        }
        anchor(&next, &mut anchors, r, &mut violations);

        let after: Vec<usize> = (0..next.hands.len()).map(|s| next.quality(s)).collect();
        for seat in 0..after.len() {
            if after[seat] < quality[seat] {
                violations.push(violation(
                    r,
                    ViolationKind::QualityDecreased,
                    format!("{} went from {} to {}", next.players[seat], quality[seat], after[seat]),
                ));
            }
        }
        for event in &round.events {
            if let GameEvent::ShipOut { player, .. } = event {
                let s = seat_of[player];
                if after[s] != quality[s] + 1 {
                    violations.push(violation(
                        r,
                        ViolationKind::ShipOutGain,
                        format!("{player} shipped out and went from {} to {}", quality[s], after[s]),
                    ));
                }
            }
        }
        quality = after;
        quality_history.push(quality.clone());
        pos = next;
    }

    let replayed = if violations.iter().any(|v| v.kind == ViolationKind::EventMismatch || v.kind == ViolationKind::ReplayFailed) {
        None
    } else {
        let snap = pos.to_snapshot(&initial.pictures);
        let target = Position::from_snapshot(final_state);
        if pos != target {
            violations.push(violation(0, ViolationKind::FinalMismatch, "replayed position differs from the final position"));
        }
        let unstable = pos
            .hands
            .iter()
            .enumerate()
            .find(|(_, h)| h.iter().skip(1).any(|c| pos.is_spade(c)));
        if let Some((seat, _)) = unstable {
            violations.push(violation(0, ViolationKind::NotStable, format!("{} holds a bad spade", pos.players[seat])));
        }
        Some(snap)
    };

    GameAudit {
        violations,
        replayed,
        quality_history,
    }
}
