use indexmap::IndexMap;
use serde::Serialize;

use crate::model::{CardSource, GameEvent, GameTrace, PlayerId};

/// Event counts for one player over a whole game.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PlayerStats {
    pub shape_up_count: usize,
    pub ship_out_count: usize,
    /// Spades received because another player called one of this hand's cards.
    pub ship_in_count: usize,
    /// Non-spade cards taken from this hand by another player's request.
    pub called_away_count: usize,
    /// Number of times the hand changed: shape ups, own ship outs and passive
    /// exchanges. A passive exchange both calls a card away and ships a spade
    /// in, so it is counted once.
    pub total_touches: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TraceStats {
    pub players: IndexMap<PlayerId, PlayerStats>,
    /// Recorded (shape up, ship out) pairs.
    pub round_pairs_used: usize,
}

impl TraceStats {
    pub fn max_total_touches(&self) -> usize {
        self.players.values().map(|s| s.total_touches).max().unwrap_or(0)
    }

    pub fn max_shape_ups(&self) -> usize {
        self.players.values().map(|s| s.shape_up_count).max().unwrap_or(0)
    }
}

/// Counts every event of `trace` per player, for the given player list.
pub fn trace_stats(trace: &GameTrace, players: &[PlayerId]) -> TraceStats {
    let mut per: IndexMap<PlayerId, PlayerStats> = players
        .iter()
        .map(|p| (p.clone(), PlayerStats::default()))
        .collect();
    for event in trace.events() {
        match event {
            GameEvent::ShapeUp { player, .. } => {
                per.entry(player.clone()).or_default().shape_up_count += 1;
            }
            GameEvent::ShipOut { player, source, .. } => {
                per.entry(player.clone()).or_default().ship_out_count += 1;
                if let CardSource::Hand { player: holder, .. } = source {
                    let holder = per.entry(holder.clone()).or_default();
                    holder.called_away_count += 1;
                    holder.ship_in_count += 1;
                }
            }
        }
    }
    for s in per.values_mut() {
        debug_assert_eq!(s.ship_in_count, s.called_away_count);
        s.total_touches = s.shape_up_count + s.ship_out_count + s.ship_in_count;
    }
    TraceStats {
        players: per,
        round_pairs_used: trace.round_pairs(),
    }
}
