//! Domain types: players, coalitions, coalition families, games,
//! facilities, assignments and allocations.
//!
//! Player identifiers are strings mapped to dense indices once; all set
//! operations run on `u64` bitsets, which bounds the player count at 64.
//! Every type is immutable after construction and checks its invariants
//! up front, so downstream modules can assume well-formed inputs.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::guard;
use crate::rational::Rational;

/// An ordered set of distinct player names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PlayerSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::NoPlayers);
        }
        if names.len() > 64 {
            return Err(Error::TooManyPlayers(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyPlayerName);
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicatePlayer(name.clone()));
            }
        }
        Ok(PlayerSet { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPlayer(name.to_string()))
    }

    /// The coalition containing every player.
    pub fn grand_coalition(&self) -> Coalition {
        Coalition::from_bits(low_mask(self.len())).expect("player set is nonempty")
    }
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A nonempty set of player indices, stored as a bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coalition(u64);

impl Coalition {
    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits == 0 {
            return Err(Error::EmptyCoalition);
        }
        Ok(Coalition(bits))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut bits = 0u64;
        for i in indices {
            if i >= 64 {
                return Err(Error::PlayerOutOfRange {
                    index: i,
                    players: 64,
                });
            }
            bits |= 1 << i;
        }
        Coalition::from_bits(bits)
    }

    pub fn singleton(index: usize) -> Result<Self> {
        Coalition::from_indices([index])
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, index: usize) -> bool {
        index < 64 && self.0 & (1 << index) != 0
    }

    /// True when the two coalitions intersect; its negation is "misses".
    pub fn meets(&self, other: &Coalition) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(&self, other: &Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    /// `self ∪ {index}`.
    pub fn with(&self, index: usize) -> Result<Coalition> {
        if index >= 64 {
            return Err(Error::PlayerOutOfRange {
                index,
                players: 64,
            });
        }
        Ok(Coalition(self.0 | (1 << index)))
    }

    /// `self ∖ {index}`, or an error when that leaves the empty set.
    pub fn without(&self, index: usize) -> Result<Coalition> {
        if index >= 64 {
            return Ok(*self);
        }
        Coalition::from_bits(self.0 & !(1u64 << index))
    }

    /// Complement within the first `n` players; errors when `self` covers
    /// all of them.
    pub fn complement(&self, n: usize) -> Result<Coalition> {
        Coalition::from_bits(!self.0 & low_mask(n))
    }

    /// Ascending member indices.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(|i| self.contains(*i))
    }

    pub fn member_names<'a>(&self, players: &'a PlayerSet) -> Vec<&'a str> {
        self.members().map(|i| players.name(i)).collect()
    }

    /// Sorted member names joined by `+`; used for facility ids and
    /// diagnostics.
    pub fn label(&self, players: &PlayerSet) -> String {
        self.member_names(players).join("+")
    }

    /// Ascending cardinality, ties broken lexicographically on the sorted
    /// member indices.
    pub fn canonical_cmp(&self, other: &Coalition) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.members().cmp(other.members()))
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Sorts coalitions into the canonical order used for matrix indexing:
/// ascending cardinality, lexicographic tiebreak on member indices.
/// Total and idempotent; duplicates stay adjacent.
pub fn canonical_order(coalitions: &[Coalition]) -> Vec<Coalition> {
    let mut out = coalitions.to_vec();
    out.sort_by(Coalition::canonical_cmp);
    out
}

/// One violated family invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyViolation {
    /// A coalition names a player index outside the player set.
    MemberOutOfRange { coalition: String, index: usize },
    /// The same coalition appears twice.
    DuplicateCoalition { coalition: String },
    /// A player belongs to no coalition, so the union misses them.
    UncoveredPlayer { player: String },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::MemberOutOfRange { coalition, index } => {
                write!(f, "coalition {coalition} has member index {index} out of range")
            }
            FamilyViolation::DuplicateCoalition { coalition } => {
                write!(f, "duplicate coalition {coalition}")
            }
            FamilyViolation::UncoveredPlayer { player } => {
                write!(f, "player `{player}` is covered by no coalition")
            }
        }
    }
}

/// Outcome of validating a coalition family against its invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyReport {
    pub violations: Vec<FamilyViolation>,
}

impl FamilyReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FamilyReport {
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

/// Checks the family invariants on raw parts: members in range, no
/// duplicate coalitions, and every player covered by some coalition.
/// (Coalitions are nonempty by construction.)
pub fn validate_family(players: &PlayerSet, coalitions: &[Coalition]) -> FamilyReport {
    let mut violations = Vec::new();
    let n = players.len();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut covered = 0u64;
    for c in coalitions {
        if let Some(index) = c.members().find(|&i| i >= n) {
            violations.push(FamilyViolation::MemberOutOfRange {
                coalition: format!("{c:?}"),
                index,
            });
            continue;
        }
        if !seen.insert(c.bits()) {
            violations.push(FamilyViolation::DuplicateCoalition {
                coalition: c.label(players),
            });
        }
        covered |= c.bits();
    }
    for i in 0..n {
        if covered & (1 << i) == 0 {
            violations.push(FamilyViolation::UncoveredPlayer {
                player: players.name(i).to_string(),
            });
        }
    }
    FamilyReport { violations }
}

/// A valid family of distinct coalitions whose union is the whole player
/// set, held in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalitionFamily {
    players: PlayerSet,
    coalitions: Vec<Coalition>,
    position: HashMap<u64, usize>,
}

impl CoalitionFamily {
    pub fn new(players: PlayerSet, coalitions: Vec<Coalition>) -> Result<Self> {
        let report = validate_family(&players, &coalitions);
        if !report.is_ok() {
            return Err(Error::InvalidFamily(report));
        }
        let coalitions = canonical_order(&coalitions);
        let position = coalitions
            .iter()
            .enumerate()
            .map(|(i, c)| (c.bits(), i))
            .collect();
        Ok(CoalitionFamily {
            players,
            coalitions,
            position,
        })
    }

    /// The family of all `2^n - 1` nonempty subsets of the player set.
    pub fn canonical(players: PlayerSet) -> Result<Self> {
        Self::canonical_with_guard(players, guard::MAX_ENUMERATION_PLAYERS)
    }

    pub fn canonical_with_guard(players: PlayerSet, max_players: usize) -> Result<Self> {
        let n = players.len();
        if n > max_players {
            return Err(Error::EnumerationGuard {
                n,
                guard: max_players,
            });
        }
        let coalitions = (1..=low_mask(n))
            .map(|bits| Coalition(bits))
            .collect();
        CoalitionFamily::new(players, coalitions)
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    /// Coalitions in canonical order.
    pub fn coalitions(&self) -> &[Coalition] {
        &self.coalitions
    }

    pub fn len(&self) -> usize {
        self.coalitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coalitions.is_empty()
    }

    pub fn contains(&self, c: &Coalition) -> bool {
        self.position.contains_key(&c.bits())
    }

    pub fn position(&self, c: &Coalition) -> Option<usize> {
        self.position.get(&c.bits()).copied()
    }

    /// True when the family is all of the nonempty subsets of the player
    /// set.
    pub fn is_canonical(&self) -> bool {
        let n = self.players.len();
        n <= 64 && low_mask(n) != u64::MAX && self.coalitions.len() as u64 == low_mask(n)
    }
}

/// A game: one exact value per coalition of its family. The empty
/// coalition is excluded by convention and implicitly worth zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    family: CoalitionFamily,
    values: Vec<Rational>,
}

impl Game {
    /// Builds a game from explicit (coalition, value) pairs. Every
    /// coalition of the family must receive exactly one value.
    pub fn new(family: CoalitionFamily, entries: Vec<(Coalition, Rational)>) -> Result<Self> {
        let mut values: Vec<Option<Rational>> = vec![None; family.len()];
        for (c, v) in entries {
            let Some(i) = family.position(&c) else {
                return Err(Error::ValueOutsideFamily(c.label(family.players())));
            };
            if values[i].is_some() {
                return Err(Error::DuplicateGameValue(c.label(family.players())));
            }
            values[i] = Some(v);
        }
        let mut out = Vec::with_capacity(family.len());
        for (i, v) in values.into_iter().enumerate() {
            match v {
                Some(v) => out.push(v),
                None => {
                    return Err(Error::MissingGameValue(
                        family.coalitions()[i].label(family.players()),
                    ))
                }
            }
        }
        Ok(Game {
            family,
            values: out,
        })
    }

    pub fn from_fn(family: CoalitionFamily, mut f: impl FnMut(&Coalition) -> Rational) -> Self {
        let values = family.coalitions().iter().map(|c| f(c)).collect();
        Game { family, values }
    }

    pub fn zero(family: CoalitionFamily) -> Self {
        Game::from_fn(family, |_| Rational::zero())
    }

    pub fn family(&self) -> &CoalitionFamily {
        &self.family
    }

    /// Values aligned with `family().coalitions()`.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, c: &Coalition) -> Option<&Rational> {
        self.family.position(c).map(|i| &self.values[i])
    }

    pub fn value_at(&self, index: usize) -> &Rational {
        &self.values[index]
    }

    /// Coalition-wise sum; the families must agree.
    pub fn add(&self, other: &Game) -> Result<Game> {
        if self.family != other.family {
            return Err(Error::PlayerSetMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Game {
            family: self.family.clone(),
            values,
        })
    }

    pub fn scale(&self, c: &Rational) -> Game {
        Game {
            family: self.family.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
}

/// A facility with its full user set and constant cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facility {
    id: String,
    users: Coalition,
    cost: Rational,
}

impl Facility {
    pub fn new(id: impl Into<String>, users: Coalition, cost: Rational) -> Self {
        Facility {
            id: id.into(),
            users,
            cost,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn users(&self) -> &Coalition {
        &self.users
    }

    pub fn cost(&self) -> &Rational {
        &self.cost
    }
}

/// An assignment of players to the facilities they must use, given as the
/// facilities with their full user sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    players: PlayerSet,
    facilities: Vec<Facility>,
}

impl Assignment {
    pub fn new(players: PlayerSet, facilities: Vec<Facility>) -> Result<Self> {
        let mut ids = HashSet::with_capacity(facilities.len());
        let n = players.len();
        for f in &facilities {
            if !ids.insert(f.id.clone()) {
                return Err(Error::DuplicateFacilityId(f.id.clone()));
            }
            if let Some(index) = f.users.members().find(|&i| i >= n) {
                return Err(Error::PlayerOutOfRange { index, players: n });
            }
        }
        Ok(Assignment {
            players,
            facilities,
        })
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn facilities(&self) -> &[Facility] {
        &self.facilities
    }

    /// The facilities player `index` must use.
    pub fn facilities_of(&self, index: usize) -> impl Iterator<Item = &Facility> + '_ {
        self.facilities.iter().filter(move |f| f.users.contains(index))
    }

    pub fn total_cost(&self) -> Rational {
        self.facilities.iter().map(Facility::cost).sum()
    }
}

/// A per-player payoff vector with a conserved total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Allocation {
    players: PlayerSet,
    payoffs: Vec<Rational>,
    total: Rational,
}

impl Allocation {
    /// Rejects any payoff vector whose sum differs from the declared
    /// total.
    pub fn new(players: PlayerSet, payoffs: Vec<Rational>, total: Rational) -> Result<Self> {
        if payoffs.len() != players.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} payoffs for {} players",
                payoffs.len(),
                players.len()
            )));
        }
        let sum: Rational = payoffs.iter().sum();
        if sum != total {
            return Err(Error::UnbalancedAllocation {
                declared: total,
                sum,
            });
        }
        Ok(Allocation {
            players,
            payoffs,
            total,
        })
    }

    /// Builds an allocation whose total is the payoff sum.
    pub fn from_payoffs(players: PlayerSet, payoffs: Vec<Rational>) -> Result<Self> {
        let total = payoffs.iter().sum();
        Allocation::new(players, payoffs, total)
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn payoffs(&self) -> &[Rational] {
        &self.payoffs
    }

    pub fn payoff(&self, index: usize) -> &Rational {
        &self.payoffs[index]
    }

    pub fn payoff_of(&self, name: &str) -> Result<&Rational> {
        Ok(&self.payoffs[self.players.index_of(name)?])
    }

    pub fn total(&self) -> &Rational {
        &self.total
    }
}
