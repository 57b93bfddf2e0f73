//! Allocations and game diagnostics.
//!
//! The centerpiece is the equitable solution: split each facility's cost
//! equally over its full user set and sum per player. On full-span
//! families it is invariant across representations, and on the canonical
//! family it coincides with the Shapley value, which makes it an
//! extension of the value to games with infeasible coalitions.
//!
//! The module also carries the canonical Shapley value itself, the
//! equivalent canonical game construction, the unanimity (dividend)
//! decomposition with its equal-split allocation, dual games, and the
//! symmetry / dummy / superadditivity diagnostics.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::{self, LinearSolution, RationalMatrix, RationalVector};
use crate::guard;
use crate::model::{
    Allocation, Assignment, Coalition, CoalitionFamily, Facility, Game, PlayerSet,
};
use crate::rational::Rational;
use crate::representation::minimal_representation;
use crate::structure;

/// Splits each facility's cost equally over its full user set and sums
/// the shares per player. The total is the sum of all facility costs.
pub fn equitable_solution(assignment: &Assignment) -> Allocation {
    let players = assignment.players().clone();
    let mut payoffs = vec![Rational::zero(); players.len()];
    for f in assignment.facilities() {
        let share = f.cost() / &Rational::from_integer(f.users().len() as i64);
        for i in f.users().members() {
            payoffs[i] += &share;
        }
    }
    Allocation::from_payoffs(players, payoffs).expect("total is defined as the payoff sum")
}

/// The equitable solution of the game: the equitable solution of its
/// minimal representation. On a full-span family every representation
/// gives this same allocation.
pub fn chi(game: &Game) -> Result<Allocation> {
    Ok(equitable_solution(&minimal_representation(game)?))
}

/// The Shapley value on the canonical family of all nonempty subsets,
/// computed from the subset sum of weighted marginal contributions with
/// exact factorial weights.
pub fn shapley(game: &Game) -> Result<Allocation> {
    shapley_with_guard(game, guard::MAX_ENUMERATION_PLAYERS)
}

pub fn shapley_with_guard(game: &Game, max_players: usize) -> Result<Allocation> {
    let family = game.family();
    let players = family.players();
    let n = players.len();
    if !family.is_canonical() {
        return Err(Error::NotCanonicalFamily);
    }
    if n > max_players {
        return Err(Error::EnumerationGuard {
            n,
            guard: max_players,
        });
    }

    let mut factorial = vec![BigInt::one(); n + 1];
    for k in 1..=n {
        factorial[k] = &factorial[k - 1] * BigInt::from(k);
    }
    // weight(|S|) = |S|! (n - 1 - |S|)! / n!
    let weights: Vec<Rational> = (0..n)
        .map(|s| {
            Rational::from_big(&factorial[s] * &factorial[n - 1 - s], factorial[n].clone())
                .expect("n! is nonzero")
        })
        .collect();

    let full = players.grand_coalition().bits();
    let mut payoffs = Vec::with_capacity(n);
    for p in 0..n {
        let others = full & !(1u64 << p);
        let mut acc = Rational::zero();
        let mut sub = 0u64;
        loop {
            let with_p = Coalition::from_bits(sub | (1 << p)).expect("contains p");
            let v_with = game.value(&with_p).expect("canonical family");
            // v of the empty coalition is zero by convention.
            let marginal = if sub == 0 {
                v_with.clone()
            } else {
                let without = Coalition::from_bits(sub).expect("nonempty");
                v_with - game.value(&without).expect("canonical family")
            };
            if !marginal.is_zero() {
                let term = &weights[sub.count_ones() as usize] * &marginal;
                acc += &term;
            }
            sub = sub.wrapping_sub(others) & others;
            if sub == 0 {
                break;
            }
        }
        payoffs.push(acc);
    }
    Allocation::from_payoffs(players.clone(), payoffs)
}

/// Extends a full-span game to the canonical family so that its Shapley
/// value reproduces the equitable solution: expand the game in the meet
/// basis and re-evaluate each meet game on every subset.
pub fn equivalent_game(game: &Game) -> Result<Game> {
    equivalent_game_with_guard(game, guard::MAX_ENUMERATION_PLAYERS)
}

pub fn equivalent_game_with_guard(game: &Game, max_players: usize) -> Result<Game> {
    if !structure::has_full_span(game.family())? {
        return Err(Error::NotFullSpan);
    }
    let coefficients =
        structure::span_coefficients(game)?.expect("full-span families span every game");
    let terms: Vec<(Coalition, Rational)> = game
        .family()
        .coalitions()
        .iter()
        .copied()
        .zip(coefficients)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let canonical =
        CoalitionFamily::canonical_with_guard(game.family().players().clone(), max_players)?;
    Ok(Game::from_fn(canonical, |t| {
        terms
            .iter()
            .filter(|(s, _)| s.meets(t))
            .map(|(_, c)| c)
            .sum()
    }))
}

/// Extends a game to the canonical family by assigning zero to every
/// absent coalition. This is the tempting but wrong extension: its
/// Shapley value totals the extension's value of the grand coalition,
/// usually nothing like the equitable solution's total.
pub fn naive_zero_extension(game: &Game) -> Result<Game> {
    naive_zero_extension_with_guard(game, guard::MAX_ENUMERATION_PLAYERS)
}

pub fn naive_zero_extension_with_guard(game: &Game, max_players: usize) -> Result<Game> {
    let canonical =
        CoalitionFamily::canonical_with_guard(game.family().players().clone(), max_players)?;
    Ok(Game::from_fn(canonical, |t| {
        game.value(t).cloned().unwrap_or_else(Rational::zero)
    }))
}

/// The unanimity game of `s` restricted to the family: worth 1 exactly
/// on the supersets of `s`.
pub fn unanimity_game(family: &CoalitionFamily, s: &Coalition) -> Result<Game> {
    if !family.contains(s) {
        return Err(Error::CoalitionNotInFamily(s.label(family.players())));
    }
    Ok(Game::from_fn(family.clone(), |t| {
        if s.is_subset_of(t) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// Coefficients of a game in the restricted unanimity games of its
/// family, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnanimityDecomposition {
    pub coefficients: Vec<(Coalition, Rational)>,
}

impl UnanimityDecomposition {
    pub fn coefficient(&self, c: &Coalition) -> Option<&Rational> {
        self.coefficients
            .iter()
            .find(|(s, _)| s == c)
            .map(|(_, d)| d)
    }
}

/// Expands the game in the restricted unanimity games: `sum d_S v_S = v`.
/// Returns one particular expansion when several exist (it is unique
/// when the unanimity games are independent, in particular on the
/// canonical family) and `None` when the game lies outside their span.
pub fn unanimity_decomposition(game: &Game) -> Result<Option<UnanimityDecomposition>> {
    let family = game.family();
    let size = family.len();
    if size > guard::MAX_MATRIX_FAMILY {
        return Err(Error::MatrixGuard {
            size,
            guard: guard::MAX_MATRIX_FAMILY,
        });
    }
    let coalitions = family.coalitions();
    let mut m = RationalMatrix::zeros(size, size);
    for (row, t) in coalitions.iter().enumerate() {
        for (col, s) in coalitions.iter().enumerate() {
            if s.is_subset_of(t) {
                m.set(row, col, Rational::one());
            }
        }
    }
    let rhs = RationalVector::new(game.values().to_vec());
    let coefficients = match exactlin::solve(&m, &rhs)? {
        LinearSolution::Unique(d) => d.into_entries(),
        LinearSolution::Infinite { particular, .. } => particular.into_entries(),
        LinearSolution::NoSolution => return Ok(None),
    };
    Ok(Some(UnanimityDecomposition {
        coefficients: coalitions.iter().copied().zip(coefficients).collect(),
    }))
}

/// Splits each unanimity coefficient equally over its coalition and sums
/// per player. On the canonical family this is the Shapley value; on
/// curtailed families it is a distinct, discriminatory-facility
/// allocation and deliberately not the equitable solution.
pub fn harsanyi_allocation(game: &Game) -> Result<Option<Allocation>> {
    let Some(decomposition) = unanimity_decomposition(game)? else {
        return Ok(None);
    };
    let players = game.family().players().clone();
    let mut payoffs = vec![Rational::zero(); players.len()];
    for (s, d) in &decomposition.coefficients {
        if d.is_zero() {
            continue;
        }
        let share = d / &Rational::from_integer(s.len() as i64);
        for i in s.members() {
            payoffs[i] += &share;
        }
    }
    Ok(Some(Allocation::from_payoffs(players, payoffs)?))
}

/// The dual game `v*(S) = v(N) - v(N \ S)`, defined on semi-algebras so
/// the complements exist; `v(∅)` is zero by convention, so the grand
/// coalition keeps its value.
pub fn dual_game(game: &Game) -> Result<Game> {
    let family = game.family();
    if !structure::is_semi_algebra(family) {
        return Err(Error::NotSemiAlgebra);
    }
    let n = family.players().len();
    let grand = family.players().grand_coalition();
    let total = game.value(&grand).expect("semi-algebra contains N").clone();
    Ok(Game::from_fn(family.clone(), |s| {
        if *s == grand {
            total.clone()
        } else {
            let complement = s.complement(n).expect("proper member");
            &total - game.value(&complement).expect("semi-algebra is complement-closed")
        }
    }))
}

fn check_player(game: &Game, index: usize) -> Result<()> {
    let n = game.family().players().len();
    if index >= n {
        return Err(Error::PlayerOutOfRange { index, players: n });
    }
    Ok(())
}

/// True when swapping `i` and `j` changes neither membership in the
/// family nor any value: for every coalition containing exactly one of
/// them, the mirrored coalition is feasible and equally valued.
pub fn is_symmetric(game: &Game, i: usize, j: usize) -> Result<bool> {
    check_player(game, i)?;
    check_player(game, j)?;
    if i == j {
        return Err(Error::PlayersNotDistinct);
    }
    let family = game.family();
    for (index, s) in family.coalitions().iter().enumerate() {
        let (from, to) = match (s.contains(i), s.contains(j)) {
            (true, false) => (i, j),
            (false, true) => (j, i),
            _ => continue,
        };
        let mirrored = Coalition::from_bits(s.bits() & !(1u64 << from) | (1u64 << to))
            .expect("swap keeps the coalition nonempty");
        match family.position(&mirrored) {
            Some(m) if game.value_at(m) == game.value_at(index) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// True when `i` is irrelevant to the game: the singleton `{i}` is worth
/// zero if feasible, and adding or removing `i` changes neither
/// membership in the family nor any value.
pub fn is_dummy(game: &Game, i: usize) -> Result<bool> {
    check_player(game, i)?;
    let family = game.family();
    for (index, s) in family.coalitions().iter().enumerate() {
        if s.contains(i) {
            if s.len() == 1 {
                if !game.value_at(index).is_zero() {
                    return Ok(false);
                }
                continue;
            }
            let rest = Coalition::from_bits(s.bits() & !(1u64 << i)).expect("|s| > 1");
            match family.position(&rest) {
                Some(m) if game.value_at(m) == game.value_at(index) => {}
                _ => return Ok(false),
            }
        } else {
            let joined = Coalition::from_bits(s.bits() | (1u64 << i)).expect("nonempty");
            match family.position(&joined) {
                Some(m) if game.value_at(m) == game.value_at(index) => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// Advances a restricted growth string to the next set partition.
fn next_partition(rgs: &mut [usize]) -> bool {
    for i in (1..rgs.len()).rev() {
        let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
        if rgs[i] <= prefix_max {
            rgs[i] += 1;
            rgs[i + 1..].fill(0);
            return true;
        }
    }
    false
}

/// True when no coalition can be split into feasible parts worth more in
/// total: `v(S) >= v(S_1) + ... + v(S_l)` for every partition of every
/// `S` in the family into family members. Checked by exhaustive set
/// partition enumeration, so coalition size is guarded.
pub fn is_superadditive(game: &Game) -> Result<bool> {
    let family = game.family();
    for (index, s) in family.coalitions().iter().enumerate() {
        let members: Vec<usize> = s.members().collect();
        if members.len() > guard::MAX_PARTITION_COALITION {
            return Err(Error::PartitionGuard {
                size: members.len(),
                guard: guard::MAX_PARTITION_COALITION,
            });
        }
        if members.len() == 1 {
            continue;
        }
        let mut rgs = vec![0usize; members.len()];
        loop {
            let blocks = rgs.iter().max().copied().unwrap_or(0) + 1;
            if blocks >= 2 {
                let mut parts = vec![0u64; blocks];
                for (member, block) in members.iter().zip(&rgs) {
                    parts[*block] |= 1u64 << member;
                }
                let mut total = Some(Rational::zero());
                for bits in parts {
                    let part = Coalition::from_bits(bits).expect("blocks are nonempty");
                    match (family.position(&part), total) {
                        (Some(p), Some(mut acc)) => {
                            acc += game.value_at(p);
                            total = Some(acc);
                        }
                        _ => {
                            total = None;
                            break;
                        }
                    }
                }
                if let Some(total) = total {
                    if *game.value_at(index) < total {
                        return Ok(false);
                    }
                }
            }
            if !next_partition(&mut rgs) {
                break;
            }
        }
    }
    Ok(true)
}

/// Feasible bundlings of the players: one or more partitions of the
/// player set, each atom carrying the value it earns under that
/// partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionScenario {
    players: PlayerSet,
    partitions: Vec<Vec<(Coalition, Rational)>>,
}

impl PartitionScenario {
    pub fn new(
        players: PlayerSet,
        partitions: Vec<Vec<(Coalition, Rational)>>,
    ) -> Result<Self> {
        let full = players.grand_coalition().bits();
        for (index, atoms) in partitions.iter().enumerate() {
            let mut covered = 0u64;
            for (atom, _) in atoms {
                if atom.bits() & !full != 0 {
                    return Err(Error::InvalidPartition {
                        index,
                        reason: "atom names a player outside the set".into(),
                    });
                }
                if covered & atom.bits() != 0 {
                    return Err(Error::InvalidPartition {
                        index,
                        reason: format!("atoms overlap at {}", atom.label(&players)),
                    });
                }
                covered |= atom.bits();
            }
            if covered != full {
                return Err(Error::InvalidPartition {
                    index,
                    reason: "atoms do not cover the player set".into(),
                });
            }
        }
        Ok(PartitionScenario {
            players,
            partitions,
        })
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn partitions(&self) -> &[Vec<(Coalition, Rational)>] {
        &self.partitions
    }
}

/// Builds the game a set of feasible partitions generates: close each
/// partition under unions with additive values, pool the resulting
/// algebras, and give every coalition the minimum of its values across
/// the algebras containing it. The pooled family is a semi-algebra.
pub fn partition_game(scenario: &PartitionScenario) -> Result<Game> {
    let mut best: HashMap<u64, Rational> = HashMap::new();
    for atoms in scenario.partitions() {
        let m = atoms.len();
        if m > guard::MAX_ENUMERATION_PLAYERS {
            return Err(Error::EnumerationGuard {
                n: m,
                guard: guard::MAX_ENUMERATION_PLAYERS,
            });
        }
        for mask in 1u64..(1u64 << m) {
            let mut bits = 0u64;
            let mut value = Rational::zero();
            for (j, (atom, atom_value)) in atoms.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    bits |= atom.bits();
                    value += atom_value;
                }
            }
            match best.entry(bits) {
                Entry::Occupied(mut slot) => {
                    if value < *slot.get() {
                        slot.insert(value);
                    }
                }
                Entry::Vacant(slot) => {
                    slot.insert(value);
                }
            }
        }
    }
    let coalitions: Vec<Coalition> = best
        .keys()
        .map(|&bits| Coalition::from_bits(bits).expect("unions of atoms are nonempty"))
        .collect();
    let family = CoalitionFamily::new(scenario.players().clone(), coalitions)?;
    Game::new(
        family,
        best.into_iter()
            .map(|(bits, v)| (Coalition::from_bits(bits).expect("nonempty"), v))
            .collect(),
    )
}

/// Convenience used in diagnostics: the two single-facility assignments
/// demonstrating that without full span, representations of the same
/// game can disagree.
pub fn single_facility(players: &PlayerSet, users: Coalition, cost: Rational) -> Assignment {
    Assignment::new(players.clone(), vec![Facility::new(users.label(players), users, cost)])
        .expect("one facility id")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::tests::{nested_game, spectrum_game};
    use crate::representation::{induced_game, validate_representation};
    use crate::sample;
    use crate::structure::tests::{coalition, degenerate_family, nested_family, players};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    /// Independent oracle: average marginal contributions over all
    /// player orderings.
    pub(crate) fn shapley_by_orderings(game: &Game) -> Vec<Rational> {
        let n = game.family().players().len();
        let mut order: Vec<usize> = (0..n).collect();
        let mut sums = vec![Rational::zero(); n];
        let mut count = 0i64;
        permute(&mut order, 0, &mut |order| {
            let mut bits = 0u64;
            let mut previous = Rational::zero();
            for &p in order {
                bits |= 1 << p;
                let current = game
                    .value(&Coalition::from_bits(bits).unwrap())
                    .unwrap()
                    .clone();
                let marginal = &current - &previous;
                sums[p] += &marginal;
                previous = current;
            }
            count += 1;
        });
        let count = Rational::from_integer(count);
        sums.into_iter().map(|s| s / count.clone()).collect()
    }

    fn permute(order: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == order.len() {
            visit(order);
            return;
        }
        for i in k..order.len() {
            order.swap(k, i);
            permute(order, k + 1, visit);
            order.swap(k, i);
        }
    }

    #[test]
    fn equitable_solution_of_the_spectrum_representation() {
        let game = spectrum_game();
        let rep = minimal_representation(&game).unwrap();
        let alloc = equitable_solution(&rep);
        assert_eq!(
            alloc.payoffs(),
            &[r(-3), r(-7), r(-4), r(-6), r(-2)]
        );
        assert_eq!(alloc.total(), &r(-22));
    }

    #[test]
    fn equitable_solution_of_the_nested_representation() {
        // -2/1 + 1/3, -3/2 + 1/3, -3/2 + 1/3: conserves the -4 total.
        let game = nested_game();
        let rep = minimal_representation(&game).unwrap();
        let alloc = equitable_solution(&rep);
        assert_eq!(alloc.payoffs(), &[q(-5, 3), q(-7, 6), q(-7, 6)]);
        assert_eq!(alloc.total(), &r(-4));
        assert_eq!(alloc.total(), &rep.total_cost());
    }

    #[test]
    fn single_facility_splits_evenly() {
        let p = players(&["1", "2", "3"]);
        let a = single_facility(&p, p.grand_coalition(), r(5));
        let alloc = equitable_solution(&a);
        assert_eq!(alloc.payoffs(), &[q(5, 3), q(5, 3), q(5, 3)]);
    }

    #[test]
    fn chi_matches_the_direct_computation() {
        let game = spectrum_game();
        let alloc = chi(&game).unwrap();
        assert_eq!(alloc.payoffs(), &[r(-3), r(-7), r(-4), r(-6), r(-2)]);

        // c · w_S pays c/|S| inside S and nothing outside.
        let fam = game.family();
        let s = coalition(fam.players(), &["b", "c", "d"]);
        let scaled = structure::mm_game(fam, &s).unwrap().scale(&r(6));
        let alloc = chi(&scaled).unwrap();
        assert_eq!(alloc.payoffs(), &[r(0), r(2), r(2), r(2), r(0)]);

        let zero = chi(&Game::zero(fam.clone())).unwrap();
        assert!(zero.payoffs().iter().all(Rational::is_zero));
    }

    #[test]
    fn shapley_small_games() {
        let p = players(&["1", "2"]);
        let fam = CoalitionFamily::canonical(p.clone()).unwrap();
        let game = Game::new(
            fam.clone(),
            vec![
                (coalition(&p, &["1"]), r(0)),
                (coalition(&p, &["2"]), r(0)),
                (coalition(&p, &["1", "2"]), r(1)),
            ],
        )
        .unwrap();
        assert_eq!(shapley(&game).unwrap().payoffs(), &[q(1, 2), q(1, 2)]);

        // Averaging the two orderings: (1, 3) and (2, 2) -> (3/2, 5/2).
        let game = Game::new(
            fam,
            vec![
                (coalition(&p, &["1"]), r(1)),
                (coalition(&p, &["2"]), r(2)),
                (coalition(&p, &["1", "2"]), r(4)),
            ],
        )
        .unwrap();
        let alloc = shapley(&game).unwrap();
        assert_eq!(alloc.payoffs(), &[q(3, 2), q(5, 2)]);
        assert_eq!(alloc.payoffs(), shapley_by_orderings(&game).as_slice());
        assert_eq!(alloc.total(), &r(4));

        let p1 = players(&["solo"]);
        let fam1 = CoalitionFamily::canonical(p1.clone()).unwrap();
        let game1 = Game::from_fn(fam1, |_| r(7));
        assert_eq!(shapley(&game1).unwrap().payoffs(), &[r(7)]);
    }

    #[test]
    fn shapley_matches_the_ordering_oracle_on_random_games() {
        let p = players(&["1", "2", "3", "4"]);
        let fam = CoalitionFamily::canonical(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let game = sample::random_game(&fam, &mut rng, -20, 20);
            assert_eq!(
                shapley(&game).unwrap().payoffs(),
                shapley_by_orderings(&game).as_slice()
            );
        }
    }

    #[test]
    fn shapley_rejects_non_canonical_families_and_oversize_sets() {
        let game = spectrum_game();
        assert!(matches!(shapley(&game), Err(Error::NotCanonicalFamily)));

        let p = players(&["1", "2", "3"]);
        let fam = CoalitionFamily::canonical(p).unwrap();
        let game = Game::zero(fam);
        assert!(matches!(
            shapley_with_guard(&game, 2),
            Err(Error::EnumerationGuard { n: 3, guard: 2 })
        ));
    }

    #[test]
    fn equivalent_game_reproduces_the_equitable_solution() {
        let game = spectrum_game();
        let extended = equivalent_game(&game).unwrap();
        let p = game.family().players();
        assert_eq!(
            extended.value(&p.grand_coalition()).unwrap(),
            &r(-22)
        );
        assert_eq!(
            extended.value(&coalition(p, &["a"])).unwrap(),
            &r(-6)
        );
        assert_eq!(shapley(&extended).unwrap(), chi(&game).unwrap());
    }

    #[test]
    fn equivalent_game_of_a_meet_game_is_its_canonical_meet_game() {
        let fam = nested_family();
        let p = fam.players().clone();
        let s = coalition(&p, &["2", "3"]);
        let extended = equivalent_game(&structure::mm_game(&fam, &s).unwrap()).unwrap();
        let canonical = CoalitionFamily::canonical(p).unwrap();
        let expected = Game::from_fn(canonical, |t| {
            if s.meets(t) {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        assert_eq!(extended, expected);
    }

    #[test]
    fn equivalent_game_requires_full_span() {
        let fam = degenerate_family();
        let game = Game::zero(fam);
        assert!(matches!(equivalent_game(&game), Err(Error::NotFullSpan)));
    }

    #[test]
    fn naive_zero_extension_loses_the_total() {
        let game = spectrum_game();
        let extended = naive_zero_extension(&game).unwrap();
        let p = game.family().players();
        assert_eq!(extended.value(&p.grand_coalition()).unwrap(), &r(0));
        let alloc = shapley(&extended).unwrap();
        assert_eq!(alloc.total(), &r(0));

        // Already-canonical games are unchanged; the zero game stays zero.
        let p = players(&["1", "2"]);
        let fam = CoalitionFamily::canonical(p).unwrap();
        let game = Game::from_fn(fam.clone(), |t| r(t.len() as i64));
        assert_eq!(naive_zero_extension(&game).unwrap(), game);
        let zero = Game::zero(nested_family());
        let extended = naive_zero_extension(&zero).unwrap();
        assert!(extended.values().iter().all(Rational::is_zero));
    }

    #[test]
    fn unanimity_decomposition_of_the_nested_game() {
        let game = nested_game();
        let p = game.family().players().clone();
        let d = unanimity_decomposition(&game).unwrap().unwrap();
        assert_eq!(d.coefficient(&coalition(&p, &["1"])), Some(&r(-1)));
        assert_eq!(d.coefficient(&coalition(&p, &["2", "3"])), Some(&r(-2)));
        assert_eq!(d.coefficient(&coalition(&p, &["1", "2", "3"])), Some(&r(-1)));

        // A restricted unanimity game expands with a unit coefficient.
        let v_s = unanimity_game(game.family(), &coalition(&p, &["2", "3"])).unwrap();
        let d = unanimity_decomposition(&v_s).unwrap().unwrap();
        assert_eq!(
            d.coefficients.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>(),
            vec![r(0), r(1), r(0)]
        );
    }

    #[test]
    fn unanimity_decomposition_on_canonical_families_is_the_moebius_transform() {
        let p = players(&["1", "2", "3", "4"]);
        let fam = CoalitionFamily::canonical(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let game = sample::random_game(&fam, &mut rng, -12, 12);
            let d = unanimity_decomposition(&game).unwrap().unwrap();
            for (s, got) in &d.coefficients {
                // d_S = sum over nonempty T ⊆ S of (-1)^(|S| - |T|) v(T).
                let mut expected = Rational::zero();
                let bits = s.bits();
                let mut sub = bits;
                loop {
                    if sub != 0 {
                        let t = Coalition::from_bits(sub).unwrap();
                        let sign_flip = (s.len() - t.len()) % 2 == 1;
                        let v = game.value(&t).unwrap();
                        if sign_flip {
                            expected -= v;
                        } else {
                            expected += v;
                        }
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & bits;
                }
                assert_eq!(got, &expected);
            }
        }
    }

    #[test]
    fn harsanyi_allocation_examples() {
        let game = nested_game();
        let alloc = harsanyi_allocation(&game).unwrap().unwrap();
        assert_eq!(alloc.payoffs(), &[q(-4, 3), q(-4, 3), q(-4, 3)]);
        // Distinct from the equitable solution on this family.
        assert_ne!(alloc, chi(&game).unwrap());

        // c · v_S pays c/|S| to each member of S.
        let fam = game.family().clone();
        let p = fam.players().clone();
        let s = coalition(&p, &["2", "3"]);
        let scaled = unanimity_game(&fam, &s).unwrap().scale(&r(5));
        let alloc = harsanyi_allocation(&scaled).unwrap().unwrap();
        assert_eq!(alloc.payoffs(), &[r(0), q(5, 2), q(5, 2)]);
    }

    #[test]
    fn harsanyi_equals_shapley_on_canonical_families() {
        for n in 2..=5 {
            let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let fam = CoalitionFamily::canonical(PlayerSet::new(names).unwrap()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..5 {
                let game = sample::random_game(&fam, &mut rng, -15, 15);
                let harsanyi = harsanyi_allocation(&game).unwrap().unwrap();
                assert_eq!(harsanyi, shapley(&game).unwrap());
                assert_eq!(
                    harsanyi.payoffs(),
                    shapley_by_orderings(&game).as_slice()
                );
            }
        }
    }

    #[test]
    fn dual_game_of_the_nested_game() {
        let game = nested_game();
        let dual = dual_game(&game).unwrap();
        // Canonical order {1}, {2,3}, {1,2,3}.
        assert_eq!(dual.values(), &[r(-2), r(-3), r(-4)]);
        assert_eq!(dual_game(&dual).unwrap(), game);
        assert!(matches!(
            dual_game(&spectrum_game()),
            Err(Error::NotSemiAlgebra)
        ));
    }

    #[test]
    fn duality_swaps_meet_and_unanimity_games() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for seed in 0..15 {
            let names: Vec<String> = (0..(3 + seed % 4)).map(|i| format!("p{i}")).collect();
            let fam = sample::random_semi_algebra(
                PlayerSet::new(names).unwrap(),
                &mut rng,
                4,
            );
            for s in fam.coalitions() {
                let w = structure::mm_game(&fam, s).unwrap();
                let v = unanimity_game(&fam, s).unwrap();
                assert_eq!(dual_game(&w).unwrap(), v);
                assert_eq!(dual_game(&v).unwrap(), w);
            }
            let game = sample::random_game(&fam, &mut rng, -9, 9);
            assert_eq!(dual_game(&dual_game(&game).unwrap()).unwrap(), game);
        }
    }

    /// Exhaustive scan over all T ⊆ N ∖ {i,j}, as in the definition.
    fn symmetric_by_scan(game: &Game, i: usize, j: usize) -> bool {
        let family = game.family();
        let n = family.players().len();
        let full = family.players().grand_coalition().bits();
        let rest = full & !(1u64 << i) & !(1u64 << j);
        let mut sub = 0u64;
        loop {
            let with_i = Coalition::from_bits(sub | (1 << i)).unwrap();
            let with_j = Coalition::from_bits(sub | (1 << j)).unwrap();
            match (game.value(&with_i), game.value(&with_j)) {
                (Some(a), Some(b)) if a == b => {}
                (None, None) => {}
                _ => return false,
            }
            sub = sub.wrapping_sub(rest) & rest;
            if sub == 0 {
                break;
            }
        }
        let _ = n;
        true
    }

    #[test]
    fn symmetry_examples_and_scan_agreement() {
        let game = nested_game();
        assert!(is_symmetric(&game, 1, 2).unwrap());
        assert!(!is_symmetric(&game, 0, 1).unwrap());
        assert!(matches!(
            is_symmetric(&game, 1, 1),
            Err(Error::PlayersNotDistinct)
        ));

        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..20 {
            let p = players(&["1", "2", "3", "4"]);
            let fam = sample::random_full_span_family(p, &mut rng);
            let game = sample::random_game(&fam, &mut rng, -3, 3);
            for i in 0..4 {
                for j in 0..4 {
                    if i == j {
                        continue;
                    }
                    let fast = is_symmetric(&game, i, j).unwrap();
                    assert_eq!(fast, symmetric_by_scan(&game, i, j));
                    assert_eq!(fast, is_symmetric(&game, j, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn dummy_examples() {
        let p = players(&["1", "2"]);
        let fam = CoalitionFamily::new(
            p.clone(),
            vec![coalition(&p, &["1"]), coalition(&p, &["1", "2"])],
        )
        .unwrap();
        let game = Game::new(
            fam,
            vec![
                (coalition(&p, &["1"]), r(5)),
                (coalition(&p, &["1", "2"]), r(5)),
            ],
        )
        .unwrap();
        assert!(is_dummy(&game, 1).unwrap());
        assert!(!is_dummy(&game, 0).unwrap());

        let nested = nested_game();
        assert!(!is_dummy(&nested, 0).unwrap());

        // A feasible singleton with nonzero value is never a dummy.
        let p = players(&["1"]);
        let fam = CoalitionFamily::new(p.clone(), vec![coalition(&p, &["1"])]).unwrap();
        let game = Game::new(fam, vec![(coalition(&p, &["1"]), r(3))]).unwrap();
        assert!(!is_dummy(&game, 0).unwrap());
    }

    #[test]
    fn superadditivity_examples() {
        // {1} ∪ {2,3} partitions {1,2,3}: -4 < -1 + -2.
        assert!(!is_superadditive(&nested_game()).unwrap());
        // No coalition of the spectrum family splits into members.
        assert!(is_superadditive(&spectrum_game()).unwrap());

        let p = players(&["1", "2", "3"]);
        let fam = CoalitionFamily::new(
            p.clone(),
            vec![coalition(&p, &["1", "2"]), coalition(&p, &["2", "3"])],
        )
        .unwrap();
        // No feasible proper partitions at all: vacuously superadditive.
        let game = Game::from_fn(fam, |_| r(-100));
        assert!(is_superadditive(&game).unwrap());

        // Raising v(N) to the partition sum restores superadditivity.
        let fam = nested_family();
        let p = fam.players().clone();
        let game = Game::new(
            fam,
            vec![
                (coalition(&p, &["1"]), r(-1)),
                (coalition(&p, &["2", "3"]), r(-2)),
                (coalition(&p, &["1", "2", "3"]), r(-3)),
            ],
        )
        .unwrap();
        assert!(is_superadditive(&game).unwrap());
    }

    #[test]
    fn partition_game_worked_example() {
        let p = players(&["1", "2", "3"]);
        let scenario = PartitionScenario::new(
            p.clone(),
            vec![
                vec![
                    (coalition(&p, &["1"]), r(1)),
                    (coalition(&p, &["2", "3"]), r(2)),
                ],
                vec![
                    (coalition(&p, &["1", "2"]), r(2)),
                    (coalition(&p, &["3"]), r(2)),
                ],
            ],
        )
        .unwrap();
        let game = partition_game(&scenario).unwrap();
        assert_eq!(game.family().len(), 5);
        assert!(structure::is_semi_algebra(game.family()));
        assert_eq!(game.value(&p.grand_coalition()).unwrap(), &r(3));
        assert_eq!(game.value(&coalition(&p, &["1"])).unwrap(), &r(1));
        assert_eq!(game.value(&coalition(&p, &["1", "2"])).unwrap(), &r(2));
    }

    #[test]
    fn partition_game_single_partition_is_additive() {
        let p = players(&["1", "2", "3"]);
        let scenario = PartitionScenario::new(
            p.clone(),
            vec![vec![
                (coalition(&p, &["1"]), r(4)),
                (coalition(&p, &["2"]), r(-1)),
                (coalition(&p, &["3"]), r(2)),
            ]],
        )
        .unwrap();
        let game = partition_game(&scenario).unwrap();
        assert_eq!(game.family().len(), 7);
        assert_eq!(game.value(&coalition(&p, &["1", "3"])).unwrap(), &r(6));
        assert_eq!(game.value(&p.grand_coalition()).unwrap(), &r(5));
    }

    #[test]
    fn partition_game_min_of_equal_values_is_that_value() {
        let p = players(&["1", "2"]);
        let scenario = PartitionScenario::new(
            p.clone(),
            vec![
                vec![
                    (coalition(&p, &["1"]), r(1)),
                    (coalition(&p, &["2"]), r(1)),
                ],
                vec![(coalition(&p, &["1", "2"]), r(2))],
            ],
        )
        .unwrap();
        let game = partition_game(&scenario).unwrap();
        assert_eq!(game.value(&p.grand_coalition()).unwrap(), &r(2));
    }

    #[test]
    fn partition_scenario_rejects_bad_partitions() {
        let p = players(&["1", "2"]);
        let overlap = PartitionScenario::new(
            p.clone(),
            vec![vec![
                (coalition(&p, &["1", "2"]), r(1)),
                (coalition(&p, &["2"]), r(1)),
            ]],
        );
        assert!(matches!(overlap, Err(Error::InvalidPartition { .. })));
        let uncovered =
            PartitionScenario::new(p.clone(), vec![vec![(coalition(&p, &["1"]), r(1))]]);
        assert!(matches!(uncovered, Err(Error::InvalidPartition { .. })));
    }

    #[test]
    fn without_full_span_representations_can_disagree() {
        let fam = degenerate_family();
        let p = fam.players().clone();
        let game = Game::new(
            fam.clone(),
            vec![
                (coalition(&p, &["1"]), r(1)),
                (coalition(&p, &["1", "2"]), r(1)),
            ],
        )
        .unwrap();
        let narrow = single_facility(&p, coalition(&p, &["1"]), r(1));
        let wide = single_facility(&p, coalition(&p, &["1", "2"]), r(1));
        assert!(validate_representation(&narrow, &game).is_ok());
        assert!(validate_representation(&wide, &game).is_ok());
        assert_eq!(induced_game(&narrow, &fam).unwrap(), game);
        assert_eq!(induced_game(&wide, &fam).unwrap(), game);
        assert_eq!(equitable_solution(&narrow).payoffs(), &[r(1), r(0)]);
        assert_eq!(equitable_solution(&wide).payoffs(), &[q(1, 2), q(1, 2)]);
    }
}
