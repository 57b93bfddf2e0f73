//! Desk-scale ceilings. Operations that would otherwise enumerate or
//! eliminate without bound fail fast with a clear error instead of
//! silently grinding.

/// Largest player set for which all `2^n - 1` coalitions may be enumerated.
/// The command line can override this via `COALITION_FORGE_GUARD_N`.
pub const MAX_ENUMERATION_PLAYERS: usize = 20;

/// Largest family admitted to matrix construction and linear solves.
pub const MAX_MATRIX_FAMILY: usize = 4096;

/// Largest family admitted to the generic hierarchy search.
pub const MAX_HIERARCHY_SEARCH: usize = 24;

/// Hierarchy searches on families up to this size memoize failed
/// position sets; larger families fall back to plain backtracking.
pub const MEMOIZED_HIERARCHY_SEARCH: usize = 20;

/// Largest coalition admitted to exhaustive partition enumeration.
pub const MAX_PARTITION_COALITION: usize = 12;
