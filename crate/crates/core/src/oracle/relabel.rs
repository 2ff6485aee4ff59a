use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use indexmap::IndexMap;
use rand::seq::SliceRandom;
use rand::Rng;

use super::OracleError;
use crate::model::{Card, CardSource, GameEvent, GameTrace, Instance, PictureId, PlayerId, Round};

/// A pair of bijections renaming players and pictures.
#[derive(Clone, Debug, Default)]
pub struct Relabeling {
    pub players: HashMap<PlayerId, PlayerId>,
    pub pictures: HashMap<PictureId, PictureId>,
}

fn is_bijection_on<'a, T: Eq + Hash + 'a>(map: &HashMap<T, T>, domain: impl IntoIterator<Item = &'a T>) -> bool {
    let mut images = HashSet::new();
    domain
        .into_iter()
        .all(|x| map.get(x).is_some_and(|y| images.insert(y)))
}

impl Relabeling {
    /// Fresh random names for the players and pictures of `inst`: a random
    /// permutation of the labels `"{tag}a{i}"` / `"{tag}b{i}"`.
    pub fn random<R: Rng>(inst: &Instance, tag: &str, rng: &mut R) -> Relabeling {
        let mut player_names: Vec<usize> = (0..inst.players.len()).collect();
        let mut picture_names: Vec<usize> = (0..inst.pictures.len()).collect();
        player_names.shuffle(rng);
        picture_names.shuffle(rng);
        Relabeling {
            players: inst
                .players
                .iter()
                .zip(player_names)
                .map(|(p, i)| (p.clone(), PlayerId::new(format!("{tag}a{i}"))))
                .collect(),
            pictures: inst
                .pictures
                .iter()
                .zip(picture_names)
                .map(|(b, i)| (b.clone(), PictureId::new(format!("{tag}b{i}"))))
                .collect(),
        }
    }

    pub fn player(&self, p: &PlayerId) -> PlayerId {
        self.players[p].clone()
    }

    pub fn picture(&self, b: &PictureId) -> PictureId {
        self.pictures[b].clone()
    }

    pub fn card(&self, card: &Card) -> Card {
        Card {
            picture: self.picture(&card.picture),
            suit: card.suit,
        }
    }

    pub fn event(&self, event: &GameEvent) -> GameEvent {
        match event {
            GameEvent::ShapeUp {
                player,
                from_spot,
                spade,
                displaced,
            } => GameEvent::ShapeUp {
                player: self.player(player),
                from_spot: *from_spot,
                spade: self.card(spade),
                displaced: self.card(displaced),
            },
            GameEvent::ShipOut {
                player,
                spot,
                bad_spade,
                requested,
                source,
            } => GameEvent::ShipOut {
                player: self.player(player),
                spot: *spot,
                bad_spade: self.card(bad_spade),
                requested: self.card(requested),
                source: match source {
                    CardSource::Hand { player, spot } => CardSource::Hand {
                        player: self.player(player),
                        spot: *spot,
                    },
                    other => other.clone(),
                },
            },
        }
    }

    pub fn trace(&self, trace: &GameTrace) -> GameTrace {
        GameTrace {
            rounds: trace
                .rounds
                .iter()
                .map(|r| Round {
                    round: r.round,
                    phase: r.phase,
                    events: r.events.iter().map(|e| self.event(e)).collect(),
                })
                .collect(),
        }
    }

    pub fn assignment(&self, map: &IndexMap<PlayerId, PictureId>) -> IndexMap<PlayerId, PictureId> {
        map.iter()
            .map(|(p, b)| (self.player(p), self.picture(b)))
            .collect()
    }
}

/// Renames every player and picture of `inst`. Declared list orders are
/// carried through the bijections position by position.
pub fn relabel(inst: &Instance, relabeling: &Relabeling) -> Result<Instance, OracleError> {
    if !is_bijection_on(&relabeling.players, &inst.players)
        || !inst.deal.keys().all(|p| relabeling.players.contains_key(p))
    {
        return Err(OracleError::NotBijective("players"));
    }
    let deal_pictures = inst.deal.values().flatten().map(|c| &c.picture);
    if !is_bijection_on(&relabeling.pictures, &inst.pictures)
        || !deal_pictures.into_iter().all(|b| relabeling.pictures.contains_key(b))
    {
        return Err(OracleError::NotBijective("pictures"));
    }
    Ok(Instance {
        n_suits: inst.n_suits,
        players: inst.players.iter().map(|p| relabeling.player(p)).collect(),
        pictures: inst.pictures.iter().map(|b| relabeling.picture(b)).collect(),
        deal: inst
            .deal
            .iter()
            .map(|(p, row)| (relabeling.player(p), row.iter().map(|c| relabeling.card(c)).collect()))
            .collect(),
    })
}
