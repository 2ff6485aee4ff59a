//! Seeded instance generation.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64(seed)`)
//! driving a Fisher-Yates shuffle (`rand::seq::SliceRandom::shuffle`, rand
//! 0.8). Both are portable and pinned through `Cargo.lock`, so a seed names
//! the same instance on every platform.
//!
//! Cards are listed picture-major (`b0` suit 0, `b0` suit 1, ...), shuffled,
//! and the first `players * suits` are dealt in order: player `p{i}` receives
//! cards `i*N .. (i+1)*N` in spot order. This samples injective deals
//! uniformly.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Card, Instance, PictureId, PlayerId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("cannot deal {players} players into {pictures} pictures")]
    Infeasible { players: usize, pictures: usize },
    #[error("the suit count must be at least 1")]
    NoSuits,
}

pub fn generate(
    num_players: usize,
    num_pictures: usize,
    n_suits: usize,
    seed: u64,
) -> Result<Instance, GenerateError> {
    if n_suits == 0 {
        return Err(GenerateError::NoSuits);
    }
    if num_players > num_pictures {
        return Err(GenerateError::Infeasible {
            players: num_players,
            pictures: num_pictures,
        });
    }
    let players: Vec<PlayerId> = (0..num_players).map(|i| PlayerId::new(format!("p{i}"))).collect();
    let pictures: Vec<PictureId> = (0..num_pictures).map(|i| PictureId::new(format!("b{i}"))).collect();
    let mut cards: Vec<Card> = pictures
        .iter()
        .flat_map(|b| (0..n_suits).map(move |s| Card::new(b.clone(), s)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cards.shuffle(&mut rng);
    let deal = players
        .iter()
        .zip(cards.chunks(n_suits))
        .map(|(p, row)| (p.clone(), row.to_vec()))
        .collect();
    Ok(Instance {
        n_suits,
        players,
        pictures,
        deal,
    })
}
