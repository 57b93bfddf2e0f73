//! Facility representations of games: build the minimal one, evaluate
//! the game an assignment induces, expand a representation trivially and
//! reduce any representation back to the minimal one.
//!
//! An assignment `(ψ, γ)` represents a game when the total cost of the
//! facilities visited by each coalition reproduces its value and every
//! full user set belongs to the family. Up to zero-cost facilities and
//! replica splits, that representation is unique.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Assignment, Coalition, CoalitionFamily, Facility, Game};
use crate::rational::Rational;
use crate::structure;

/// The share of a single facility in the induced game: its cost on every
/// coalition its users meet, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGame {
    facility_id: String,
    game: Game,
}

impl LocalGame {
    pub fn facility_id(&self) -> &str {
        &self.facility_id
    }

    pub fn game(&self) -> &Game {
        &self.game
    }
}

/// The unique representation with the fewest facilities: one facility
/// per coalition with a nonzero meet-game coefficient, carrying that
/// coefficient as its cost. Facility ids are the canonical coalition
/// labels.
pub fn minimal_representation(game: &Game) -> Result<Assignment> {
    let Some(coefficients) = structure::span_coefficients(game)? else {
        return Err(Error::NotRepresentable);
    };
    let players = game.family().players();
    let facilities = game
        .family()
        .coalitions()
        .iter()
        .zip(coefficients)
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| Facility::new(s.label(players), *s, c))
        .collect();
    Assignment::new(players.clone(), facilities)
}

fn check_players(assignment: &Assignment, family: &CoalitionFamily) -> Result<()> {
    if assignment.players() != family.players() {
        return Err(Error::PlayerSetMismatch);
    }
    Ok(())
}

fn check_measurable(assignment: &Assignment, family: &CoalitionFamily) -> Result<()> {
    for f in assignment.facilities() {
        if !family.contains(f.users()) {
            return Err(Error::Unmeasurable {
                id: f.id().to_string(),
                users: f.users().label(assignment.players()),
            });
        }
    }
    Ok(())
}

/// `v(S)` = total cost of the facilities visited by members of `S`,
/// i.e. of the facilities whose user set meets `S`.
fn induced_values(assignment: &Assignment, family: &CoalitionFamily) -> Vec<Rational> {
    family
        .coalitions()
        .iter()
        .map(|s| {
            assignment
                .facilities()
                .iter()
                .filter(|f| f.users().meets(s))
                .map(Facility::cost)
                .sum()
        })
        .collect()
}

/// The game induced by an assignment on the family. Fails when some
/// facility's user set lies outside the family (the measurability
/// condition) or the player sets differ.
pub fn induced_game(assignment: &Assignment, family: &CoalitionFamily) -> Result<Game> {
    check_players(assignment, family)?;
    check_measurable(assignment, family)?;
    let values = induced_values(assignment, family);
    Ok(Game::new(
        family.clone(),
        family.coalitions().iter().copied().zip(values).collect(),
    )
    .expect("one value per coalition"))
}

/// One local game per facility; they sum coalition-wise to the induced
/// game, and each equals the facility cost times the meet game of its
/// user set.
pub fn local_games(assignment: &Assignment, family: &CoalitionFamily) -> Result<Vec<LocalGame>> {
    check_players(assignment, family)?;
    check_measurable(assignment, family)?;
    Ok(assignment
        .facilities()
        .iter()
        .map(|f| LocalGame {
            facility_id: f.id().to_string(),
            game: Game::from_fn(family.clone(), |t| {
                if f.users().meets(t) {
                    f.cost().clone()
                } else {
                    Rational::zero()
                }
            }),
        })
        .collect())
}

/// One reason an assignment fails to represent a game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepresentationViolation {
    /// The assignment and game are built over different player sets.
    PlayerMismatch,
    /// A facility's full user set is not a coalition of the family.
    Unmeasurable { facility: String, users: String },
    /// The induced value of a coalition differs from the game's value.
    ValueMismatch {
        coalition: String,
        induced: Rational,
        expected: Rational,
    },
}

impl fmt::Display for RepresentationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepresentationViolation::PlayerMismatch => {
                write!(f, "assignment and game use different player sets")
            }
            RepresentationViolation::Unmeasurable { facility, users } => {
                write!(f, "facility `{facility}` has user set {users} outside the family")
            }
            RepresentationViolation::ValueMismatch {
                coalition,
                induced,
                expected,
            } => write!(f, "mismatch at {coalition}: {induced} != {expected}"),
        }
    }
}

/// Outcome of checking an assignment against a game.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepresentationReport {
    pub violations: Vec<RepresentationViolation>,
}

impl RepresentationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for RepresentationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks both representation conditions: measurability of every user
/// set, and value-for-value agreement of the induced game with `game`.
/// Mismatches are listed in canonical coalition order.
pub fn validate_representation(assignment: &Assignment, game: &Game) -> RepresentationReport {
    let mut violations = Vec::new();
    let family = game.family();
    if assignment.players() != family.players() {
        return RepresentationReport {
            violations: vec![RepresentationViolation::PlayerMismatch],
        };
    }
    for f in assignment.facilities() {
        if !family.contains(f.users()) {
            violations.push(RepresentationViolation::Unmeasurable {
                facility: f.id().to_string(),
                users: f.users().label(assignment.players()),
            });
        }
    }
    let induced = induced_values(assignment, family);
    for ((coalition, induced), expected) in family
        .coalitions()
        .iter()
        .zip(induced)
        .zip(game.values())
    {
        if induced != *expected {
            violations.push(RepresentationViolation::ValueMismatch {
                coalition: coalition.label(family.players()),
                induced,
                expected: expected.clone(),
            });
        }
    }
    RepresentationReport { violations }
}

fn claim_id(used: &mut HashSet<String>, candidate: String) -> String {
    let mut id = candidate;
    while !used.insert(id.clone()) {
        id.push('+');
    }
    id
}

/// A seeded trivial expansion: first adds `zero_facilities` facilities of
/// cost zero with user sets drawn from the family, then splits each
/// facility into 1..=`max_replicas` replicas with integer cost offsets
/// that sum exactly to the original cost. The induced game and the
/// equitable solution are unchanged by construction.
pub fn trivial_expansion(
    assignment: &Assignment,
    seed: u64,
    zero_facilities: usize,
    max_replicas: usize,
    family: &CoalitionFamily,
) -> Result<Assignment> {
    check_players(assignment, family)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_replicas = max_replicas.max(1);

    let mut widened: Vec<Facility> = assignment.facilities().to_vec();
    let mut used: HashSet<String> = widened.iter().map(|f| f.id().to_string()).collect();
    for k in 0..zero_facilities {
        let users = family.coalitions()[rng.gen_range(0..family.len())];
        let id = claim_id(&mut used, format!("zero-{}", k + 1));
        widened.push(Facility::new(id, users, Rational::zero()));
    }

    let mut out: Vec<Facility> = Vec::new();
    let mut taken: HashSet<String> = HashSet::new();
    for f in widened {
        let replicas = rng.gen_range(1..=max_replicas);
        if replicas == 1 {
            let id = claim_id(&mut taken, f.id().to_string());
            out.push(Facility::new(id, *f.users(), f.cost().clone()));
            continue;
        }
        let mut remaining = f.cost().clone();
        for j in 1..=replicas {
            let cost = if j == replicas {
                remaining.clone()
            } else {
                let part = Rational::from_integer(rng.gen_range(-9..=9));
                remaining -= &part;
                part
            };
            let id = claim_id(&mut taken, format!("{}.{}", f.id(), j));
            out.push(Facility::new(id, *f.users(), cost));
        }
    }
    Assignment::new(assignment.players().clone(), out)
}

/// Groups facilities by their full user set, sums the costs within each
/// group and drops groups that total zero. On a full-span family this
/// recovers exactly `minimal_representation(induced_game(assignment))`.
pub fn reduce_to_minimal(assignment: &Assignment, family: &CoalitionFamily) -> Result<Assignment> {
    check_players(assignment, family)?;
    check_measurable(assignment, family)?;
    let mut groups: HashMap<u64, Rational> = HashMap::new();
    for f in assignment.facilities() {
        let entry = groups.entry(f.users().bits()).or_insert_with(Rational::zero);
        *entry += f.cost();
    }
    let players = assignment.players();
    let facilities = family
        .coalitions()
        .iter()
        .filter_map(|s| {
            let total = groups.remove(&s.bits())?;
            if total.is_zero() {
                None
            } else {
                Some(Facility::new(s.label(players), *s, total))
            }
        })
        .collect();
    Assignment::new(players.clone(), facilities)
}
