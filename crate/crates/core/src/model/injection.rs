use std::collections::{HashMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::card::{Card, PictureId, PlayerId};

/// An element `(player, index)` of a product `A x N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pair {
    pub player: PlayerId,
    pub index: usize,
}

impl Pair {
    pub fn new(player: impl Into<PlayerId>, index: usize) -> Pair {
        Pair {
            player: player.into(),
            index,
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.player, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("the suit count must be at least 1")]
    NoSuits,
    #[error("player {0} is declared more than once")]
    DuplicatePlayer(PlayerId),
    #[error("picture {0} is declared more than once")]
    DuplicatePicture(PictureId),
    #[error("deal mentions undeclared player {0}")]
    UnknownPlayer(PlayerId),
    #[error("map is not total: ({0}, {1}) has no image")]
    NotTotal(PlayerId, usize),
    #[error("player {0} has more than {1} images")]
    ExtraIndex(PlayerId, usize),
    #[error("card {0} has an undeclared picture")]
    UnknownPicture(Card),
    #[error("card {0} has a suit out of range")]
    SuitOutOfRange(Card),
    #[error("card {card} is the image of both {first} and {second}")]
    DuplicateImage { card: Card, first: Pair, second: Pair },
}

/// Checks rows of a would-be injection `A x n -> B x n` in the given order and
/// reports the first violation found.
pub(crate) fn check_rows<'a>(
    n_indices: usize,
    rows: impl IntoIterator<Item = (&'a PlayerId, &'a [Card])>,
    pictures: Option<&HashSet<&PictureId>>,
) -> Result<(), ValidationError> {
    if n_indices == 0 {
        return Err(ValidationError::NoSuits);
    }
    let mut seen: HashMap<&Card, Pair> = HashMap::new();
    for (player, row) in rows {
        if row.len() < n_indices {
            return Err(ValidationError::NotTotal(player.clone(), row.len()));
        }
        if row.len() > n_indices {
            return Err(ValidationError::ExtraIndex(player.clone(), n_indices));
        }
        for (index, card) in row.iter().enumerate() {
            if card.suit.0 >= n_indices {
                return Err(ValidationError::SuitOutOfRange(card.clone()));
            }
            if let Some(known) = pictures {
                if !known.contains(&card.picture) {
                    return Err(ValidationError::UnknownPicture(card.clone()));
                }
            }
            let here = Pair::new(player.clone(), index);
            if let Some(first) = seen.get(card) {
                return Err(ValidationError::DuplicateImage {
                    card: card.clone(),
                    first: first.clone(),
                    second: here,
                });
            }
            seen.insert(card, here);
        }
    }
    Ok(())
}

/// A finite, total, injective map `A x n -> B x n`.
///
/// Rows are kept in insertion order, which is the order used for every
/// iteration and for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInjection", into = "RawInjection")]
pub struct InjectionMap {
    n_indices: usize,
    rows: IndexMap<PlayerId, Vec<Card>>,
}

#[derive(Serialize, Deserialize)]
struct RawInjection {
    n_indices: usize,
    entries: IndexMap<PlayerId, Vec<Card>>,
}

impl TryFrom<RawInjection> for InjectionMap {
    type Error = ValidationError;

    fn try_from(raw: RawInjection) -> Result<Self, Self::Error> {
        InjectionMap::new(raw.n_indices, raw.entries)
    }
}

impl From<InjectionMap> for RawInjection {
    fn from(map: InjectionMap) -> Self {
        RawInjection {
            n_indices: map.n_indices,
            entries: map.rows,
        }
    }
}

impl InjectionMap {
    pub fn new(
        n_indices: usize,
        rows: impl IntoIterator<Item = (PlayerId, Vec<Card>)>,
    ) -> Result<InjectionMap, ValidationError> {
        let mut collected: IndexMap<PlayerId, Vec<Card>> = IndexMap::new();
        for (player, row) in rows {
            if collected.contains_key(&player) {
                return Err(ValidationError::DuplicatePlayer(player));
            }
            collected.insert(player, row);
        }
        check_rows(
            n_indices,
            collected.iter().map(|(p, r)| (p, r.as_slice())),
            None,
        )?;
        Ok(InjectionMap {
            n_indices,
            rows: collected,
        })
    }

    pub fn empty(n_indices: usize) -> InjectionMap {
        assert!(n_indices >= 1, "an injection needs at least one index");
        InjectionMap {
            n_indices,
            rows: IndexMap::new(),
        }
    }

    /// Builds a map whose validity the caller has already established.
    pub(crate) fn from_checked_rows(n_indices: usize, rows: IndexMap<PlayerId, Vec<Card>>) -> Self {
        debug_assert!(check_rows(n_indices, rows.iter().map(|(p, r)| (p, r.as_slice())), None).is_ok());
        InjectionMap { n_indices, rows }
    }

    pub fn n_indices(&self) -> usize {
        self.n_indices
    }

    /// Number of players in the domain.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn players(&self) -> impl Iterator<Item = &PlayerId> {
        self.rows.keys()
    }

    pub fn row(&self, player: &PlayerId) -> Option<&[Card]> {
        self.rows.get(player).map(Vec::as_slice)
    }

    pub fn get(&self, player: &PlayerId, index: usize) -> Option<&Card> {
        self.rows.get(player).and_then(|row| row.get(index))
    }

    pub fn rows(&self) -> impl Iterator<Item = (&PlayerId, &[Card])> {
        self.rows.iter().map(|(p, r)| (p, r.as_slice()))
    }

    /// All `((player, index), image)` entries in row order.
    pub fn entries(&self) -> impl Iterator<Item = (Pair, &Card)> {
        self.rows.iter().flat_map(|(player, row)| {
            row.iter()
                .enumerate()
                .map(move |(index, card)| (Pair::new(player.clone(), index), card))
        })
    }

    /// Distinct pictures of the image, in order of first appearance.
    pub fn image_pictures(&self) -> Vec<PictureId> {
        let mut seen = HashSet::new();
        self.rows
            .values()
            .flatten()
            .filter(|card| seen.insert(&card.picture))
            .map(|card| card.picture.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(player: &str, cards: &[(&str, usize)]) -> (PlayerId, Vec<Card>) {
        (
            PlayerId::new(player),
            cards.iter().map(|&(p, s)| Card::new(p, s)).collect(),
        )
    }

    #[test]
    fn accepts_valid_map() {
        let m = InjectionMap::new(2, [row("a", &[("x", 0), ("y", 1)])]).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(&"a".into(), 1), Some(&Card::new("y", 1)));
        assert_eq!(m.image_pictures(), vec![PictureId::new("x"), PictureId::new("y")]);
    }

    #[test]
    fn rejects_duplicate_image() {
        let err = InjectionMap::new(2, [row("p0", &[("x", 1), ("x", 1)])]).unwrap_err();
        assert_eq!(
            err,
            ValidationError::DuplicateImage {
                card: Card::new("x", 1),
                first: Pair::new("p0", 0),
                second: Pair::new("p0", 1),
            }
        );
    }

    #[test]
    fn rejects_short_and_long_rows() {
        let err = InjectionMap::new(3, [row("a", &[("x", 0)])]).unwrap_err();
        assert_eq!(err, ValidationError::NotTotal("a".into(), 1));
        let err = InjectionMap::new(1, [row("a", &[("x", 0), ("y", 0)])]).unwrap_err();
        assert_eq!(err, ValidationError::ExtraIndex("a".into(), 1));
    }

    #[test]
    fn rejects_suit_out_of_range() {
        let err = InjectionMap::new(2, [row("a", &[("x", 0), ("x", 2)])]).unwrap_err();
        assert_eq!(err, ValidationError::SuitOutOfRange(Card::new("x", 2)));
    }

    #[test]
    fn serde_revalidates() {
        let json = r#"{"n_indices":1,"entries":{"a":[["x",0]],"b":[["x",0]]}}"#;
        assert!(serde_json::from_str::<InjectionMap>(json).is_err());
        let json = r#"{"n_indices":1,"entries":{"a":[["x",0]],"b":[["y",0]]}}"#;
        let m: InjectionMap = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), json);
    }
}
