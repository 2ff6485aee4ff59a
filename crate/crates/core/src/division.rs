//! Division by `N`: one game turns an injection `A x k -> B x k` into one on
//! `A x (k-1)`, and repeating until `k = 1` yields an injection `A -> B`.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::engine::{default_round_cap, extract, run_to_stability, EngineError};
use crate::model::{GameTrace, InjectionMap, PictureId, PlayerId, TableSnapshot, TableState};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionStep {
    /// Suit count of the game played in this step.
    pub n_suits: usize,
    /// Recorded rounds (the confirming silent pair excluded).
    pub rounds_used: usize,
    /// SHA-256 of the step's trace in JSON-lines form.
    pub trace_digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionReport {
    pub steps: Vec<DivisionStep>,
    pub result: IndexMap<PlayerId, PictureId>,
}

/// One played game: where it started, what happened, where it stopped.
#[derive(Clone, Debug)]
pub struct GameRecord {
    pub initial: TableSnapshot,
    pub trace: GameTrace,
    pub final_state: TableSnapshot,
}

/// A division together with everything needed to audit it.
#[derive(Clone, Debug)]
pub struct DivisionRun {
    pub report: DivisionReport,
    /// Input injection of each step, then the final one-index map.
    pub inputs: Vec<InjectionMap>,
    pub games: Vec<GameRecord>,
}

fn play(f: &InjectionMap, max_round_pairs: Option<usize>) -> Result<(TableState, TableState, GameTrace), EngineError> {
    let k = f.n_indices();
    if k < 2 {
        return Err(EngineError::TooFewSuits(k));
    }
    let table = TableState::from_injection(f, f.image_pictures());
    let cap = max_round_pairs.unwrap_or_else(|| default_round_cap(k, f.len()));
    let (stable, trace) = run_to_stability(&table, cap)?;
    Ok((table, stable, trace))
}

/// Plays one game on `f` and extracts the reduced injection, returning the
/// game's trace alongside.
///
/// The deck is built from the pictures appearing in `f`; cards of other
/// pictures can never be requested, so they do not affect the game.
pub fn divide_once_traced(
    f: &InjectionMap,
    max_round_pairs: Option<usize>,
) -> Result<(InjectionMap, GameTrace), EngineError> {
    let (_, stable, trace) = play(f, max_round_pairs)?;
    Ok((extract(&stable)?, trace))
}

pub fn divide_once(f: &InjectionMap) -> Result<InjectionMap, EngineError> {
    divide_once_traced(f, None).map(|(map, _)| map)
}

pub fn divide_traced(f: &InjectionMap, max_round_pairs: Option<usize>) -> Result<DivisionRun, EngineError> {
    let mut current = f.clone();
    let mut inputs = Vec::with_capacity(f.n_indices());
    let mut games = Vec::with_capacity(f.n_indices() - 1);
    let mut steps = Vec::with_capacity(f.n_indices() - 1);
    while current.n_indices() > 1 {
        let (start, stable, trace) = play(&current, max_round_pairs)?;
        let next = extract(&stable)?;
        steps.push(DivisionStep {
            n_suits: current.n_indices(),
            rounds_used: trace.rounds.len(),
            trace_digest: trace.digest(),
        });
        games.push(GameRecord {
            initial: start.snapshot(),
            trace,
            final_state: stable.snapshot(),
        });
        inputs.push(std::mem::replace(&mut current, next));
    }
    let result = current
        .rows()
        .map(|(player, row)| (player.clone(), row[0].picture.clone()))
        .collect();
    inputs.push(current);
    Ok(DivisionRun {
        report: DivisionReport { steps, result },
        inputs,
        games,
    })
}

/// Full division: applies [`divide_once`] `N - 1` times and strips the last
/// index, giving the canonical injection `A -> B`.
pub fn divide(f: &InjectionMap) -> Result<DivisionReport, EngineError> {
    divide_traced(f, None).map(|run| run.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Card;

    fn map(n: usize, rows: &[(&str, &[(&str, usize)])]) -> InjectionMap {
        InjectionMap::new(
            n,
            rows.iter().map(|(p, cards)| {
                (
                    PlayerId::from(*p),
                    cards.iter().map(|&(b, s)| Card::new(b, s)).collect(),
                )
            }),
        )
        .unwrap()
    }

    #[test]
    fn two_suits_with_spade_on_the_right() {
        // [(x,0), (y,1)] shapes up to [(y,1), (x,0)] and is then stable.
        let f = map(2, &[("a", &[("x", 0), ("y", 1)])]);
        assert_eq!(divide_once(&f).unwrap(), map(1, &[("a", &[("x", 0)])]));
    }

    #[test]
    fn two_suits_already_stable() {
        let f = map(2, &[("a", &[("x", 1), ("y", 0)])]);
        let (out, trace) = divide_once_traced(&f, None).unwrap();
        assert_eq!(out, map(1, &[("a", &[("y", 0)])]));
        assert!(trace.rounds.is_empty());
    }

    #[test]
    fn empty_domain() {
        for k in 1..5 {
            let report = divide(&InjectionMap::empty(k)).unwrap();
            assert!(report.result.is_empty());
            assert_eq!(report.steps.len(), k - 1);
        }
        assert!(divide_once(&InjectionMap::empty(3)).unwrap().is_empty());
    }

    #[test]
    fn base_case_strips_index() {
        let report = divide(&map(1, &[("a", &[("x", 0)])])).unwrap();
        assert!(report.steps.is_empty());
        assert_eq!(report.result[&PlayerId::from("a")], PictureId::from("x"));
    }

    #[test]
    fn one_step_for_two_suits() {
        let report = divide(&map(2, &[("a", &[("x", 0), ("y", 1)])])).unwrap();
        assert_eq!(report.steps.len(), 1);
        assert_eq!(report.steps[0].n_suits, 2);
        assert_eq!(report.steps[0].rounds_used, 2);
        assert_eq!(report.result[&PlayerId::from("a")], PictureId::from("x"));
    }

    #[test]
    fn divide_once_rejects_single_suit() {
        assert_eq!(
            divide_once(&map(1, &[("a", &[("x", 0)])])),
            Err(EngineError::TooFewSuits(1))
        );
    }
}
