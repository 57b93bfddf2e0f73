//! Structural analysis of a coalition family: meet/miss games, the
//! meet matrix, full span, semi-algebras and hierarchies.
//!
//! A family has *full span* when its meet games form a basis of the game
//! space, equivalently when the 0/1 meet matrix is invertible. Every
//! semi-algebra is hierarchical and every hierarchical family has full
//! span; the constructions here follow those implications.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactlin::{self, LinearSolution, RationalMatrix, RationalVector};
use crate::guard;
use crate::model::{Coalition, CoalitionFamily, Game};
use crate::rational::Rational;

/// True when the two coalitions intersect ("meet"); otherwise they
/// "miss" each other.
pub fn meets(s: &Coalition, t: &Coalition) -> bool {
    s.meets(t)
}

/// The meet game of `s`: worth 1 on every coalition that `s` meets and 0
/// on every coalition it misses.
pub fn mm_game(family: &CoalitionFamily, s: &Coalition) -> Result<Game> {
    if !family.contains(s) {
        return Err(Error::CoalitionNotInFamily(s.label(family.players())));
    }
    Ok(Game::from_fn(family.clone(), |t| {
        if s.meets(t) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// The square 0/1 matrix whose rows and columns are indexed by the
/// family in canonical order; the column of `S` is the meet game of `S`.
pub fn mm_matrix(family: &CoalitionFamily) -> Result<RationalMatrix> {
    let size = family.len();
    if size > guard::MAX_MATRIX_FAMILY {
        return Err(Error::MatrixGuard {
            size,
            guard: guard::MAX_MATRIX_FAMILY,
        });
    }
    let mut m = RationalMatrix::zeros(size, size);
    let coalitions = family.coalitions();
    for (row, t) in coalitions.iter().enumerate() {
        for (col, s) in coalitions.iter().enumerate() {
            if s.meets(t) {
                m.set(row, col, Rational::one());
            }
        }
    }
    Ok(m)
}

/// True when the meet games span the whole game space, i.e. the meet
/// matrix is invertible. Decided by exact rank, never by a determinant
/// magnitude.
pub fn has_full_span(family: &CoalitionFamily) -> Result<bool> {
    exactlin::is_invertible(&mm_matrix(family)?)
}

/// True when the family contains the grand coalition and the complement
/// of each of its proper members.
pub fn is_semi_algebra(family: &CoalitionFamily) -> bool {
    let n = family.players().len();
    let grand = family.players().grand_coalition();
    if !family.contains(&grand) {
        return false;
    }
    family.coalitions().iter().all(|s| {
        *s == grand
            || s.complement(n)
                .map(|sc| family.contains(&sc))
                .unwrap_or(false)
    })
}

/// An ordering of the whole family in which coalitions can be rejected
/// one by one from the back: every later coalition is met by the first
/// one, and carries a witness that misses it while meeting everything
/// placed before it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hierarchy {
    /// All coalitions of the family, in rejection order (final survivor
    /// first).
    pub sequence: Vec<Coalition>,
    /// `witnesses[k]` rejects `sequence[k + 1]`.
    pub witnesses: Vec<Coalition>,
}

/// The constructive hierarchy of a semi-algebra: the grand coalition
/// first, the rest in descending cardinality (canonical order within a
/// size class), each witnessed by its own complement.
pub fn semi_algebra_hierarchy(family: &CoalitionFamily) -> Result<Hierarchy> {
    if !is_semi_algebra(family) {
        return Err(Error::NotSemiAlgebra);
    }
    let n = family.players().len();
    let grand = family.players().grand_coalition();
    let mut rest: Vec<Coalition> = family
        .coalitions()
        .iter()
        .copied()
        .filter(|s| *s != grand)
        .collect();
    rest.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.members().cmp(b.members())));

    let mut sequence = vec![grand];
    let mut witnesses = Vec::with_capacity(rest.len());
    for s in rest {
        witnesses.push(s.complement(n).expect("proper member has a complement"));
        sequence.push(s);
    }
    Ok(Hierarchy {
        sequence,
        witnesses,
    })
}

/// Checks that `h` is a permutation of the family satisfying both
/// hierarchy conditions. Recorded witnesses are tried first; if one
/// fails, any member of the family may stand in for it.
pub fn validate_hierarchy(family: &CoalitionFamily, h: &Hierarchy) -> bool {
    let l = h.sequence.len();
    if l != family.len() {
        return false;
    }
    let distinct: HashSet<u64> = h.sequence.iter().map(Coalition::bits).collect();
    if distinct.len() != l || !h.sequence.iter().all(|s| family.contains(s)) {
        return false;
    }
    let first = &h.sequence[0];
    for k in 1..l {
        let current = &h.sequence[k];
        if !first.meets(current) {
            return false;
        }
        let placed = &h.sequence[..k];
        let admissible =
            |t: &Coalition| !t.meets(current) && placed.iter().all(|s| t.meets(s));
        let recorded = h.witnesses.get(k - 1);
        let ok = match recorded {
            Some(t) if family.contains(t) && admissible(t) => true,
            _ => family.coalitions().iter().any(|t| admissible(t)),
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Searches for a hierarchy. Semi-algebras take the constructive fast
/// path; otherwise a depth-first search over positions runs with
/// canonical choice order, memoizing failed position sets on a bitmask
/// for families of up to [`guard::MEMOIZED_HIERARCHY_SEARCH`] coalitions.
///
/// The first element of any hierarchy must meet every member of the
/// family, and no coalition met by everything can appear later (its
/// witness would have to miss it). So the search only branches on the
/// order of the remaining coalitions.
pub fn find_hierarchy(family: &CoalitionFamily) -> Result<Option<Hierarchy>> {
    if is_semi_algebra(family) {
        return Ok(Some(semi_algebra_hierarchy(family)?));
    }
    let l = family.len();
    if l > guard::MAX_HIERARCHY_SEARCH {
        return Err(Error::HierarchySearchGuard {
            size: l,
            guard: guard::MAX_HIERARCHY_SEARCH,
        });
    }
    let coalitions = family.coalitions();
    if l == 1 {
        return Ok(Some(Hierarchy {
            sequence: vec![coalitions[0]],
            witnesses: Vec::new(),
        }));
    }

    let meets_all: Vec<usize> = (0..l)
        .filter(|&i| coalitions.iter().all(|t| coalitions[i].meets(t)))
        .collect();
    let [first] = meets_all.as_slice() else {
        // Zero candidates leave no survivor; two or more make at least
        // one of them unwitnessable at any later position.
        return Ok(None);
    };

    let mut search = HierarchySearch {
        coalitions,
        memoize: l <= guard::MEMOIZED_HIERARCHY_SEARCH,
        dead: HashSet::new(),
        sequence: vec![coalitions[*first]],
        witnesses: Vec::new(),
    };
    if search.extend(1u64 << first) {
        Ok(Some(Hierarchy {
            sequence: search.sequence,
            witnesses: search.witnesses,
        }))
    } else {
        Ok(None)
    }
}

struct HierarchySearch<'a> {
    coalitions: &'a [Coalition],
    memoize: bool,
    dead: HashSet<u64>,
    sequence: Vec<Coalition>,
    witnesses: Vec<Coalition>,
}

impl HierarchySearch<'_> {
    /// Extends the partial sequence covering the `placed` index set.
    /// Whether a continuation exists depends only on that set.
    fn extend(&mut self, placed: u64) -> bool {
        let l = self.coalitions.len();
        if self.sequence.len() == l {
            return true;
        }
        if self.memoize && self.dead.contains(&placed) {
            return false;
        }
        for i in 0..l {
            if placed & (1 << i) != 0 {
                continue;
            }
            let next = self.coalitions[i];
            let witness = self
                .coalitions
                .iter()
                .find(|t| !t.meets(&next) && self.sequence.iter().all(|s| t.meets(s)))
                .copied();
            let Some(witness) = witness else {
                continue;
            };
            self.sequence.push(next);
            self.witnesses.push(witness);
            if self.extend(placed | (1 << i)) {
                return true;
            }
            self.sequence.pop();
            self.witnesses.pop();
        }
        if self.memoize {
            self.dead.insert(placed);
        }
        false
    }
}

/// Expands a game in the meet games of its family: coefficients `c`
/// with `sum_S c_S · w_S = v`, aligned with the family's canonical
/// order. Returns one particular expansion when several exist and
/// `None` when the game lies outside the span.
pub fn span_coefficients(game: &Game) -> Result<Option<Vec<Rational>>> {
    let matrix = mm_matrix(game.family())?;
    let rhs = RationalVector::new(game.values().to_vec());
    Ok(match exactlin::solve(&matrix, &rhs)? {
        LinearSolution::Unique(c) => Some(c.into_entries()),
        LinearSolution::Infinite { particular, .. } => Some(particular.into_entries()),
        LinearSolution::NoSolution => None,
    })
}
