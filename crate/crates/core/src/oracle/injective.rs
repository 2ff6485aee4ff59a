use std::fmt::Debug;

/// Two domain elements sharing an image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision<K, V> {
    pub first: K,
    pub second: K,
    pub image: V,
}

/// Checks that no two entries share an image, by direct pairwise comparison.
///
/// On failure the witness is the earliest colliding pair: the smallest second
/// position, then the smallest first position.
pub fn check_injective<K: Clone, V: Clone + PartialEq>(
    entries: impl IntoIterator<Item = (K, V)>,
) -> Result<(), Collision<K, V>> {
    let entries: Vec<(K, V)> = entries.into_iter().collect();
    for j in 0..entries.len() {
        for i in 0..j {
            if entries[i].1 == entries[j].1 {
                return Err(Collision {
                    first: entries[i].0.clone(),
                    second: entries[j].0.clone(),
                    image: entries[j].1.clone(),
                });
            }
        }
    }
    Ok(())
}
