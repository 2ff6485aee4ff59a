use std::collections::HashSet;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::card::{Card, PictureId, PlayerId};
use super::injection::{check_rows, InjectionMap, ValidationError};

/// A problem statement: players `A`, pictures `B`, suit count `N` and an
/// initial deal `A x N -> B x N` given in spot order.
///
/// This is the unchecked, on-disk form. Use [`validate_instance`] to obtain a
/// [`CheckedInstance`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub n_suits: usize,
    pub players: Vec<PlayerId>,
    pub pictures: Vec<PictureId>,
    pub deal: IndexMap<PlayerId, Vec<Card>>,
}

/// An instance whose deal is known to be a total injection on `players x N`
/// with every card drawn from `pictures x N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedInstance {
    instance: Instance,
    deal: InjectionMap,
}

impl CheckedInstance {
    pub fn n_suits(&self) -> usize {
        self.instance.n_suits
    }

    pub fn players(&self) -> &[PlayerId] {
        &self.instance.players
    }

    pub fn pictures(&self) -> &[PictureId] {
        &self.instance.pictures
    }

    /// The deal, with rows in declared player order.
    pub fn deal(&self) -> &InjectionMap {
        &self.deal
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn into_instance(self) -> Instance {
        self.instance
    }
}

impl Instance {
    /// Wraps an injection as an instance over the given picture list.
    pub fn from_injection(map: &InjectionMap, pictures: Vec<PictureId>) -> Instance {
        Instance {
            n_suits: map.n_indices(),
            players: map.players().cloned().collect(),
            pictures,
            deal: map.rows().map(|(p, r)| (p.clone(), r.to_vec())).collect(),
        }
    }
}

pub fn validate_instance(inst: Instance) -> Result<CheckedInstance, ValidationError> {
    if inst.n_suits == 0 {
        return Err(ValidationError::NoSuits);
    }
    let mut players = HashSet::new();
    for p in &inst.players {
        if !players.insert(p) {
            return Err(ValidationError::DuplicatePlayer(p.clone()));
        }
    }
    let mut pictures = HashSet::new();
    for b in &inst.pictures {
        if !pictures.insert(b) {
            return Err(ValidationError::DuplicatePicture(b.clone()));
        }
    }
    if let Some(stranger) = inst.deal.keys().find(|p| !players.contains(p)) {
        return Err(ValidationError::UnknownPlayer(stranger.clone()));
    }

    let empty: Vec<Card> = Vec::new();
    let rows = inst
        .players
        .iter()
        .map(|p| (p, inst.deal.get(p).unwrap_or(&empty).as_slice()));
    check_rows(inst.n_suits, rows, Some(&pictures))?;

    let ordered = inst
        .players
        .iter()
        .map(|p| (p.clone(), inst.deal[p].clone()))
        .collect();
    let deal = InjectionMap::from_checked_rows(inst.n_suits, ordered);
    Ok(CheckedInstance {
        instance: inst,
        deal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::injection::Pair;

    fn instance(n: usize, players: &[&str], pictures: &[&str], deal: &[(&str, &[(&str, usize)])]) -> Instance {
        Instance {
            n_suits: n,
            players: players.iter().map(|&p| p.into()).collect(),
            pictures: pictures.iter().map(|&b| b.into()).collect(),
            deal: deal
                .iter()
                .map(|(p, cards)| {
                    (
                        PlayerId::new(*p),
                        cards.iter().map(|&(b, s)| Card::new(b, s)).collect(),
                    )
                })
                .collect(),
        }
    }

    #[test]
    fn smallest_instance_is_valid() {
        let checked = validate_instance(instance(1, &["p0"], &["x"], &[("p0", &[("x", 0)])])).unwrap();
        assert_eq!(checked.deal().len(), 1);
    }

    #[test]
    fn duplicate_image_is_rejected() {
        let err = validate_instance(instance(2, &["p0"], &["x"], &[("p0", &[("x", 1), ("x", 1)])]))
            .unwrap_err();
        assert!(matches!(
            err,
            ValidationError::DuplicateImage { ref card, ref first, ref second }
                if *card == Card::new("x", 1) && *first == Pair::new("p0", 0) && *second == Pair::new("p0", 1)
        ));
    }

    #[test]
    fn four_distinct_cards_are_valid() {
        let inst = instance(
            4,
            &["p0"],
            &["Ape", "Chicken", "Bolt", "Two"],
            &[("p0", &[("Ape", 0), ("Chicken", 3), ("Bolt", 2), ("Two", 3)])],
        );
        assert!(validate_instance(inst).is_ok());
    }

    #[test]
    fn missing_player_is_not_total() {
        let inst = instance(1, &["p0", "p1"], &["x", "y"], &[("p0", &[("x", 0)])]);
        assert_eq!(
            validate_instance(inst).unwrap_err(),
            ValidationError::NotTotal("p1".into(), 0)
        );
    }

    #[test]
    fn unknown_picture_and_suit() {
        let inst = instance(2, &["p0"], &["x"], &[("p0", &[("x", 0), ("z", 1)])]);
        assert_eq!(
            validate_instance(inst).unwrap_err(),
            ValidationError::UnknownPicture(Card::new("z", 1))
        );
        let inst = instance(2, &["p0"], &["x"], &[("p0", &[("x", 0), ("x", 2)])]);
        assert_eq!(
            validate_instance(inst).unwrap_err(),
            ValidationError::SuitOutOfRange(Card::new("x", 2))
        );
    }

    #[test]
    fn undeclared_player_in_deal() {
        let inst = instance(1, &[], &["x"], &[("ghost", &[("x", 0)])]);
        assert_eq!(
            validate_instance(inst).unwrap_err(),
            ValidationError::UnknownPlayer("ghost".into())
        );
    }

    #[test]
    fn deal_rows_follow_declared_order() {
        let inst = instance(1, &["b", "a"], &["x", "y"], &[("a", &[("x", 0)]), ("b", &[("y", 0)])]);
        let checked = validate_instance(inst).unwrap();
        let order: Vec<&str> = checked.deal().players().map(PlayerId::as_str).collect();
        assert_eq!(order, vec!["b", "a"]);
    }
}
