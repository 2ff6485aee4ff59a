use itertools::{Itertools, Permutations};
use std::ops::Range;

use super::OracleError;
use crate::model::{Card, Instance, PictureId, PlayerId};

/// Largest number of instances [`enumerate_instances`] will produce.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// Number of injections from a `k`-set into an `n`-set.
pub fn injection_count(k: usize, n: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    (0..k).try_fold(1u128, |acc, i| acc.checked_mul((n - i) as u128))
}

/// Every injective deal of `num_players` players into `num_pictures x n_suits`,
/// exactly once, in lexicographic order of card indices.
///
/// Players are named `p0, p1, ...`, pictures `b0, b1, ...`, and cards are
/// indexed picture-major: card `i` is `(b{i / n}, i % n)`.
pub struct InstanceIter {
    players: Vec<PlayerId>,
    pictures: Vec<PictureId>,
    n_suits: usize,
    inner: Permutations<Range<usize>>,
}

impl Iterator for InstanceIter {
    type Item = Instance;

    fn next(&mut self) -> Option<Instance> {
        let perm = self.inner.next()?;
        let n = self.n_suits;
        let deal = self
            .players
            .iter()
            .zip(perm.chunks(n.max(1)))
            .map(|(player, chunk)| {
                let row = chunk
                    .iter()
                    .map(|&i| Card::new(self.pictures[i / n].clone(), i % n))
                    .collect();
                (player.clone(), row)
            })
            .collect();
        Some(Instance {
            n_suits: n,
            players: self.players.clone(),
            pictures: self.pictures.clone(),
            deal,
        })
    }
}

pub fn enumerate_instances(
    num_players: usize,
    num_pictures: usize,
    n_suits: usize,
) -> Result<InstanceIter, OracleError> {
    if n_suits == 0 {
        return Err(OracleError::NoSuits);
    }
    let slots = num_players * n_suits;
    let cards = num_pictures * n_suits;
    match injection_count(slots, cards) {
        Some(count) if count <= ENUMERATION_LIMIT => {}
        count => return Err(OracleError::TooLarge { count }),
    }
    Ok(InstanceIter {
        players: (0..num_players).map(|i| PlayerId::new(format!("p{i}"))).collect(),
        pictures: (0..num_pictures).map(|i| PictureId::new(format!("b{i}"))).collect(),
        n_suits,
        inner: (0..cards).permutations(slots),
    })
}
