//! Seeded random instances: integer games, semi-algebras and full-span
//! families. Used by the test suite and handy for experiments; all
//! output is a pure function of the supplied generator.

use std::collections::BTreeSet;

use rand::Rng;

use crate::model::{Coalition, CoalitionFamily, Game, PlayerSet};
use crate::rational::Rational;
use crate::structure;

/// A game on `family` with integer values drawn uniformly from
/// `lo..=hi`.
pub fn random_game<R: Rng>(family: &CoalitionFamily, rng: &mut R, lo: i64, hi: i64) -> Game {
    Game::from_fn(family.clone(), |_| {
        Rational::from_integer(rng.gen_range(lo..=hi))
    })
}

/// A random semi-algebra: the grand coalition plus up to `max_pairs`
/// complement pairs of proper nonempty subsets.
pub fn random_semi_algebra<R: Rng>(
    players: PlayerSet,
    rng: &mut R,
    max_pairs: usize,
) -> CoalitionFamily {
    let n = players.len();
    let full = players.grand_coalition().bits();
    let mut picked: BTreeSet<u64> = BTreeSet::new();
    picked.insert(full);
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=max_pairs) {
            let s = rng.gen_range(1..full);
            picked.insert(s);
            picked.insert(!s & full);
        }
    }
    let coalitions = picked
        .into_iter()
        .map(|b| Coalition::from_bits(b).expect("nonempty by construction"))
        .collect();
    CoalitionFamily::new(players, coalitions).expect("contains the grand coalition")
}

/// A random family whose meet games form a basis. Rejection-samples
/// small random families and falls back to a semi-algebra, which always
/// has full span.
pub fn random_full_span_family<R: Rng>(players: PlayerSet, rng: &mut R) -> CoalitionFamily {
    let n = players.len();
    let full = players.grand_coalition().bits();
    for _ in 0..64 {
        let target = rng.gen_range(1..=(2 * n).min(full as usize));
        let mut picked: BTreeSet<u64> = BTreeSet::new();
        while picked.len() < target {
            picked.insert(rng.gen_range(1..=full));
        }
        if picked.iter().fold(0, |acc, b| acc | b) != full {
            picked.insert(full);
        }
        let coalitions = picked
            .into_iter()
            .map(|b| Coalition::from_bits(b).expect("nonempty by construction"))
            .collect();
        let family =
            CoalitionFamily::new(players.clone(), coalitions).expect("covers all players");
        if structure::has_full_span(&family).unwrap_or(false) {
            return family;
        }
    }
    random_semi_algebra(players, rng, 3)
}
