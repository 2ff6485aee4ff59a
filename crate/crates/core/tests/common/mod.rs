#![allow(dead_code)]

use std::path::PathBuf;

use indexmap::IndexMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pan_galactic_division::cli::generate;
use pan_galactic_division::division::{divide_traced, DivisionRun};
use pan_galactic_division::engine::default_round_cap;
use pan_galactic_division::model::{validate_instance, Instance, PictureId, PlayerId};
use pan_galactic_division::oracle::{audit_game, check_injective, trace_stats, Violation};

pub const SUIT_CHOICES: [usize; 5] = [1, 2, 3, 4, 6];

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Random-size instance for seed `seed`: N cycles through [`SUIT_CHOICES`],
/// |A| is in 0..=200 and |B| is either |A| or in |A|..=250.
pub fn corpus_instance(seed: u64) -> Instance {
    let n = SUIT_CHOICES[(seed % SUIT_CHOICES.len() as u64) as usize];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0fc0_ffee);
    let players = rng.gen_range(0..=200);
    let pictures = if rng.gen_bool(0.3) {
        players
    } else {
        rng.gen_range(players..=250)
    };
    generate(players, pictures, n, seed).expect("players never exceed pictures")
}

#[derive(Clone, Debug)]
pub struct GameSummary {
    pub n_suits: usize,
    pub n_players: usize,
    /// Recorded pairs plus the confirming silent pair.
    pub pairs_played: usize,
    pub cap: usize,
    pub max_touches: usize,
    pub max_shape_ups: usize,
    pub violations: Vec<Violation>,
}

#[derive(Debug)]
pub struct DivisionCheck {
    pub result: IndexMap<PlayerId, PictureId>,
    pub run: Option<DivisionRun>,
    pub games: Vec<GameSummary>,
    /// Engine errors and injectivity failures; audit findings live in `games`.
    pub failures: Vec<String>,
}

impl DivisionCheck {
    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.games.iter().flat_map(|g| g.violations.iter())
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.violations().next().is_none()
    }
}

/// Divides `inst` with full tracing, audits every game and checks that every
/// intermediate and final map is injective.
pub fn check_division(inst: &Instance) -> DivisionCheck {
    let mut check = DivisionCheck {
        result: IndexMap::new(),
        run: None,
        games: Vec::new(),
        failures: Vec::new(),
    };
    let checked = match validate_instance(inst.clone()) {
        Ok(c) => c,
        Err(e) => {
            check.failures.push(format!("invalid instance: {e}"));
            return check;
        }
    };
    let run = match divide_traced(checked.deal(), None) {
        Ok(run) => run,
        Err(e) => {
            check.failures.push(format!("divide failed: {e}"));
            return check;
        }
    };
    for (step, map) in run.inputs.iter().enumerate() {
        if let Err(c) = check_injective(map.entries()) {
            check.failures.push(format!("step {step} map not injective: {c:?}"));
        }
    }
    if let Err(c) = check_injective(run.report.result.iter()) {
        check.failures.push(format!("result not injective: {c:?}"));
    }
    if run.report.result.len() != inst.players.len() {
        check.failures.push("result is not total".to_string());
    }
    for game in &run.games {
        let audit = audit_game(&game.initial, &game.trace, &game.final_state);
        let players: Vec<PlayerId> = game.initial.hands.keys().cloned().collect();
        let stats = trace_stats(&game.trace, &players);
        check.games.push(GameSummary {
            n_suits: game.initial.n_suits,
            n_players: players.len(),
            pairs_played: game.trace.round_pairs() + 1,
            cap: default_round_cap(game.initial.n_suits, players.len()),
            max_touches: stats.max_total_touches(),
            max_shape_ups: stats.max_shape_ups(),
            violations: audit.violations,
        });
    }
    check.result = run.report.result.clone();
    check.run = Some(run);
    check
}
