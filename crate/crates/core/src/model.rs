//! Profiles, the δ-ordering, the matrix invariant and explicit games.
//!
//! A complete game with two classes of voters `N1 > N2` is described up to
//! isomorphism by its class sizes `(n1, n2)` and the list of winning profiles
//! that are minimal under the δ-ordering. [`CompleteGameSpec`] holds that
//! description; [`SimpleGame`] holds an explicit family of winning
//! coalitions over labeled voters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound on the number of voters of an explicit [`SimpleGame`].
///
/// Explicit games keep a winning table with `2^n` entries.
pub const MAX_VOTERS: usize = 20;

/// Number of voters of each type present in a coalition.
///
/// The derived ordering is the lexicographic one: first component, then
/// second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct Profile {
    pub m1: u32,
    pub m2: u32,
}

impl Profile {
    pub const fn new(m1: u32, m2: u32) -> Self {
        Profile { m1, m2 }
    }

    /// Total number of voters in the profile.
    pub const fn size(self) -> u32 {
        self.m1 + self.m2
    }

    /// `self δ other`: comparison of partial sums.
    pub fn delta_dominates(self, other: Profile) -> bool {
        delta_dominates(self, other)
    }

    /// Componentwise `≤`.
    pub fn le_componentwise(self, other: Profile) -> bool {
        self.m1 <= other.m1 && self.m2 <= other.m2
    }
}

impl From<(u32, u32)> for Profile {
    fn from((m1, m2): (u32, u32)) -> Self {
        Profile { m1, m2 }
    }
}

impl From<Profile> for (u32, u32) {
    fn from(p: Profile) -> Self {
        (p.m1, p.m2)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m1, self.m2)
    }
}

/// `p δ q` iff `p.m1 >= q.m1` and `p.m1 + p.m2 >= q.m1 + q.m2`.
pub fn delta_dominates(p: Profile, q: Profile) -> bool {
    p.m1 >= q.m1 && p.size() >= q.size()
}

/// Strict lexicographic comparison of profiles.
pub fn lex_greater(p: Profile, q: Profile) -> bool {
    p.m1 > q.m1 || (p.m1 == q.m1 && p.m2 > q.m2)
}

/// All profiles of the `(n1 + 1) x (n2 + 1)` rectangle, in lexicographic order.
pub fn rectangle(n1: u32, n2: u32) -> impl Iterator<Item = Profile> {
    (0..=n1).flat_map(move |m1| (0..=n2).map(move |m2| Profile::new(m1, m2)))
}

/// Reasons a matrix fails the parametrization conditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("class sizes must be positive (n1 >= 1 and n2 >= 1), got ({n1},{n2})")]
    EmptyClass { n1: u32, n2: u32 },
    #[error("matrix must have at least one row")]
    NoRows,
    #[error("row {row} entry {profile} is outside 0 <= m_{{i,1}} <= {n1}, 0 <= m_{{i,2}} <= {n2}")]
    OutOfRange {
        row: usize,
        profile: Profile,
        n1: u32,
        n2: u32,
    },
    #[error("single-row matrix violates m_{{1,1}}>0 (got {0})")]
    SingleRowZeroFirst(Profile),
    #[error("single-row matrix violates m_{{1,2}}<n2 (got {profile}, n2 = {n2})")]
    SingleRowFullSecond { profile: Profile, n2: u32 },
    #[error(
        "rows {row} and {next} violate m_{{i,1}}>m_{{j,1}} (first components must strictly decrease): {a} then {b}"
    )]
    NotDecreasing {
        row: usize,
        next: usize,
        a: Profile,
        b: Profile,
    },
    #[error(
        "rows {row} and {next} violate m_{{i,1}}+m_{{i,2}}<m_{{j,1}}+m_{{j,2}} (row sums must strictly increase): {a} then {b}"
    )]
    SumNotIncreasing {
        row: usize,
        next: usize,
        a: Profile,
        b: Profile,
    },
    #[error("malformed matrix text {0:?}: expected rows like \"2,0;0,3\"")]
    Parse(String),
}

/// The δ-minimal winning profiles of a game, in canonical row order.
///
/// Rows have strictly decreasing first components and strictly increasing
/// sums. Any other row order is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MatrixM(Vec<Profile>);

impl MatrixM {
    pub fn new(rows: Vec<Profile>) -> Result<Self, SpecError> {
        if rows.is_empty() {
            return Err(SpecError::NoRows);
        }
        for (i, pair) in rows.windows(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            if a.m1 <= b.m1 {
                return Err(SpecError::NotDecreasing {
                    row: i + 1,
                    next: i + 2,
                    a,
                    b,
                });
            }
            if a.size() >= b.size() {
                return Err(SpecError::SumNotIncreasing {
                    row: i + 1,
                    next: i + 2,
                    a,
                    b,
                });
            }
        }
        Ok(MatrixM(rows))
    }

    pub fn rows(&self) -> &[Profile] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Profile {
        self.0[0]
    }

    pub fn last(&self) -> Profile {
        self.0[self.0.len() - 1]
    }
}

impl fmt::Display for MatrixM {
    /// Writes the text form `"2,0;0,3"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{},{}", p.m1, p.m2)?;
        }
        Ok(())
    }
}

/// Parses the text form `"2,0;0,3"` into rows, without validating them.
pub fn parse_rows(text: &str) -> Result<Vec<Profile>, SpecError> {
    let bad = || SpecError::Parse(text.to_string());
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(SpecError::NoRows);
    }
    trimmed
        .split(';')
        .map(|row| {
            let mut it = row.split(',').map(|x| x.trim().parse::<u32>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(m1)), Some(Ok(m2)), None) => Ok(Profile::new(m1, m2)),
                _ => Err(bad()),
            }
        })
        .collect()
}

impl FromStr for MatrixM {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MatrixM::new(parse_rows(s)?)
    }
}

/// Class sizes and matrix of a complete game with two nonempty classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct CompleteGameSpec {
    n1: u32,
    n2: u32,
    matrix: MatrixM,
}

#[derive(Deserialize)]
struct RawSpec {
    n1: u32,
    n2: u32,
    matrix: Vec<Profile>,
}

impl TryFrom<RawSpec> for CompleteGameSpec {
    type Error = SpecError;

    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        validate_spec(raw.n1, raw.n2, raw.matrix)
    }
}

impl CompleteGameSpec {
    pub fn n1(&self) -> u32 {
        self.n1
    }

    pub fn n2(&self) -> u32 {
        self.n2
    }

    /// Total number of voters.
    pub fn n(&self) -> u32 {
        self.n1 + self.n2
    }

    pub fn matrix(&self) -> &MatrixM {
        &self.matrix
    }

    pub fn rows(&self) -> &[Profile] {
        self.matrix.rows()
    }

    /// Whether `p` δ-dominates some row.
    pub fn is_winning_profile(&self, p: Profile) -> bool {
        self.rows().iter().any(|&row| delta_dominates(p, row))
    }

    /// Single-line JSON form `{"n1":..,"n2":..,"matrix":[[..],..]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialization cannot fail")
    }
}

impl fmt::Display for CompleteGameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},[{}])", self.n1, self.n2, self.matrix)
    }
}

/// Checks class sizes and rows against the parametrization conditions.
///
/// Rows must already be in canonical order.
pub fn validate_spec(n1: u32, n2: u32, rows: Vec<Profile>) -> Result<CompleteGameSpec, SpecError> {
    if n1 < 1 || n2 < 1 {
        return Err(SpecError::EmptyClass { n1, n2 });
    }
    if rows.is_empty() {
        return Err(SpecError::NoRows);
    }
    for (i, &p) in rows.iter().enumerate() {
        if p.m1 > n1 || p.m2 > n2 {
            return Err(SpecError::OutOfRange {
                row: i + 1,
                profile: p,
                n1,
                n2,
            });
        }
    }
    if let [p] = rows[..] {
        if p.m1 == 0 {
            return Err(SpecError::SingleRowZeroFirst(p));
        }
        if p.m2 >= n2 {
            return Err(SpecError::SingleRowFullSecond { profile: p, n2 });
        }
    }
    let matrix = MatrixM::new(rows)?;
    Ok(CompleteGameSpec { n1, n2, matrix })
}

/// A set of voters, voter `i` stored at bit `i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(pub u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    /// The grand coalition `{1, .., n}`.
    pub fn grand(n: usize) -> Self {
        Coalition(low_bits(n))
    }

    pub fn from_voters<I: IntoIterator<Item = u32>>(voters: I) -> Self {
        Coalition(voters.into_iter().fold(0, |acc, v| acc | 1 << (v - 1)))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, voter: u32) -> bool {
        (1..=32).contains(&voter) && self.0 & (1 << (voter - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Coalition) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn with(self, voter: u32) -> Self {
        Coalition(self.0 | 1 << (voter - 1))
    }

    pub fn without(self, voter: u32) -> Self {
        Coalition(self.0 & !(1 << (voter - 1)))
    }

    /// Members in increasing order, 1-based.
    pub fn voters(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            Some(v + 1)
        })
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.voters().collect()
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.voters().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn low_bits(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("number of voters must be in 1..={MAX_VOTERS}, got {0}")]
    VoterCount(usize),
    #[error("voter {voter} is not in 1..={n}")]
    InvalidVoter { voter: u32, n: usize },
    #[error("the family of minimal winning coalitions is empty (the grand coalition must win)")]
    NoWinning,
    #[error("the empty coalition cannot be winning")]
    EmptyWinning,
    #[error("minimal winning coalitions are not an antichain: {0} contains {1}")]
    NotAntichain(Coalition, Coalition),
    #[error("compared a voter with itself ({0})")]
    SameVoter(u32),
}

/// An explicit simple game on voters `1..=n`.
///
/// Stored as its antichain of minimal winning coalitions together with a
/// lookup table of all winning coalitions.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGame {
    n: usize,
    minimal_winning: Vec<Coalition>,
    winning: Vec<bool>,
}

impl fmt::Debug for SimpleGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGame")
            .field("n", &self.n)
            .field("minimal_winning", &self.minimal_winning_sorted())
            .finish()
    }
}

impl SimpleGame {
    /// Builds a game from its minimal winning coalitions.
    ///
    /// The family must be a nonempty antichain of nonempty coalitions over
    /// `1..=n`.
    pub fn new(n: usize, minimal_winning: Vec<Coalition>) -> Result<Self, GameError> {
        if n == 0 || n > MAX_VOTERS {
            return Err(GameError::VoterCount(n));
        }
        let grand = low_bits(n);
        for c in &minimal_winning {
            if c.0 & !grand != 0 {
                let voter = (c.0 & !grand).trailing_zeros() + 1;
                return Err(GameError::InvalidVoter { voter, n });
            }
            if c.is_empty() {
                return Err(GameError::EmptyWinning);
            }
        }
        if minimal_winning.is_empty() {
            return Err(GameError::NoWinning);
        }
        let mut minimal_winning = minimal_winning;
        minimal_winning.sort_unstable();
        minimal_winning.dedup();

        let mut winning = vec![false; 1 << n];
        for c in &minimal_winning {
            winning[c.0 as usize] = true;
        }
        upward_close(&mut winning, n);

        // Antichain: dropping any member of a generator must lose.
        for &c in &minimal_winning {
            for v in c.voters() {
                let below = c.without(v);
                if winning[below.0 as usize] {
                    let inner = *minimal_winning
                        .iter()
                        .find(|m| m.is_subset(below))
                        .expect("a winning coalition contains a generator");
                    return Err(GameError::NotAntichain(c, inner));
                }
            }
        }
        Ok(SimpleGame {
            n,
            minimal_winning,
            winning,
        })
    }

    /// Builds a game from member lists (1-based voters).
    pub fn from_lists(n: usize, lists: &[Vec<u32>]) -> Result<Self, GameError> {
        let mut coalitions = Vec::with_capacity(lists.len());
        for list in lists {
            for &v in list {
                if v == 0 || v as usize > n {
                    return Err(GameError::InvalidVoter { voter: v, n });
                }
            }
            coalitions.push(Coalition::from_voters(list.iter().copied()));
        }
        SimpleGame::new(n, coalitions)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Minimal winning coalitions, ordered by mask.
    pub fn minimal_winning(&self) -> &[Coalition] {
        &self.minimal_winning
    }

    /// Minimal winning coalitions as member lists, in lexicographic order.
    pub fn minimal_winning_sorted(&self) -> Vec<Vec<u32>> {
        let mut lists: Vec<Vec<u32>> = self.minimal_winning.iter().map(|c| c.to_vec()).collect();
        lists.sort();
        lists
    }

    pub fn is_winning(&self, c: Coalition) -> bool {
        self.winning[c.0 as usize]
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.n)
    }

    pub fn voters(&self) -> std::ops::RangeInclusive<u32> {
        1..=self.n as u32
    }

    pub(crate) fn check_voter(&self, voter: u32) -> Result<(), GameError> {
        if voter == 0 || voter as usize > self.n {
            Err(GameError::InvalidVoter { voter, n: self.n })
        } else {
            Ok(())
        }
    }

    /// The same game with voter `v` renamed to `perm[v - 1]`.
    ///
    /// `perm` must be a permutation of `1..=n`.
    pub fn relabel(&self, perm: &[u32]) -> SimpleGame {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let mapped = self
            .minimal_winning
            .iter()
            .map(|c| Coalition::from_voters(c.voters().map(|v| perm[v as usize - 1])))
            .collect();
        SimpleGame::new(self.n, mapped).expect("relabeling preserves validity")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("game serialization cannot fail")
    }
}

/// Closes a membership table upward under adding single voters.
pub(crate) fn upward_close(table: &mut [bool], n: usize) {
    for bit in 0..n {
        let b = 1usize << bit;
        for mask in 0..table.len() {
            if mask & b != 0 && table[mask ^ b] {
                table[mask] = true;
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawGame {
    n: usize,
    minimal_winning: Vec<Vec<u32>>,
}

impl Serialize for SimpleGame {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawGame {
            n: self.n,
            minimal_winning: self.minimal_winning_sorted(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimpleGame {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawGame::deserialize(deserializer)?;
        SimpleGame::from_lists(raw.n, &raw.minimal_winning).map_err(serde::de::Error::custom)
    }
}
