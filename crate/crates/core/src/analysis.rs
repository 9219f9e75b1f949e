//! Desirability, completeness and the two directions of the matrix
//! parametrization: [`realize`] (spec to game) and [`parametrize`]
//! (game to spec).

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    delta_dominates, low_bits, rectangle, validate_spec, Coalition, CompleteGameSpec, GameError,
    Profile, SimpleGame, SpecError, MAX_VOTERS,
};

/// How voter `i` compares with voter `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Desirability {
    StrictlyMore,
    Equally,
    StrictlyLess,
    Incomparable,
}

impl Desirability {
    pub fn reversed(self) -> Self {
        match self {
            Desirability::StrictlyMore => Desirability::StrictlyLess,
            Desirability::StrictlyLess => Desirability::StrictlyMore,
            other => other,
        }
    }
}

/// Ordered classes `N1 > N2 > ... > Nt` of equally desirable voters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TypePartition {
    classes: Vec<Vec<u32>>,
}

impl TypePartition {
    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Two incomparable voters.
///
/// `s ∪ {i}` wins while `s ∪ {j}` loses, and `t ∪ {j}` wins while
/// `t ∪ {i}` loses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: u32,
    pub j: u32,
    pub s: Vec<u32>,
    pub t: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Complete(TypePartition),
    Incomplete(Witness),
}

impl Classification {
    pub fn is_complete(&self) -> bool {
        matches!(self, Classification::Complete(_))
    }

    pub fn partition(&self) -> Option<&TypePartition> {
        match self {
            Classification::Complete(p) => Some(p),
            Classification::Incomplete(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Classification::Complete(_) => None,
            Classification::Incomplete(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParametrizeError {
    #[error("game is not complete: voters {} and {} are incomparable", .0.i, .0.j)]
    NotComplete(Witness),
    #[error("game has {0} types of voters, expected exactly 2")]
    TypeCount(usize),
    #[error("extracted matrix is invalid: {0}")]
    Invalid(#[from] SpecError),
}

/// First coalition `S ⊆ N \ {i, j}` with `S ∪ {i}` winning and `S ∪ {j}`
/// losing, if any.
fn advantage(game: &SimpleGame, i: u32, j: u32) -> Option<Coalition> {
    let rest = low_bits(game.n()) & !(1 << (i - 1)) & !(1 << (j - 1));
    // Subsets of `rest` in increasing mask order.
    let mut s = 0u32;
    loop {
        let c = Coalition(s);
        if game.is_winning(c.with(i)) && !game.is_winning(c.with(j)) {
            return Some(c);
        }
        if s == rest {
            return None;
        }
        s = (s.wrapping_sub(rest)) & rest;
    }
}

/// `i ≿ j`: for every `S ⊆ N \ {i, j}`, `S ∪ {j}` winning implies
/// `S ∪ {i}` winning.
pub fn more_desirable(game: &SimpleGame, i: u32, j: u32) -> Result<bool, GameError> {
    game.check_voter(i)?;
    game.check_voter(j)?;
    if i == j {
        return Err(GameError::SameVoter(i));
    }
    Ok(advantage(game, j, i).is_none())
}

pub fn compare(game: &SimpleGame, i: u32, j: u32) -> Result<Desirability, GameError> {
    let ij = more_desirable(game, i, j)?;
    let ji = more_desirable(game, j, i)?;
    Ok(match (ij, ji) {
        (true, true) => Desirability::Equally,
        (true, false) => Desirability::StrictlyMore,
        (false, true) => Desirability::StrictlyLess,
        (false, false) => Desirability::Incomparable,
    })
}

/// `relation[i][j]` is `i+1 ≿ j+1`.
fn desirability_table(game: &SimpleGame) -> Vec<Vec<bool>> {
    let n = game.n() as u32;
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| i == j || advantage(game, j, i).is_none())
                .collect()
        })
        .collect()
}

/// Classes of the equivalence `≈`, each sorted, ordered by smallest member.
///
/// Defined for every game, complete or not.
pub fn equality_classes(game: &SimpleGame) -> Vec<Vec<u32>> {
    let table = desirability_table(game);
    let n = game.n();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for a in 0..n {
        if seen[a] {
            continue;
        }
        let class: Vec<u32> = (a..n)
            .filter(|&b| table[a][b] && table[b][a])
            .inspect(|&b| seen[b] = true)
            .map(|b| b as u32 + 1)
            .collect();
        classes.push(class);
    }
    classes
}

/// Decides whether `≿` is a complete preorder and, if so, returns its
/// classes from most to least desirable.
pub fn classify(game: &SimpleGame) -> Classification {
    let table = desirability_table(game);
    let n = game.n();
    for (a, row) in table.iter().enumerate() {
        for b in a + 1..n {
            if !row[b] && !table[b][a] {
                let (i, j) = (a as u32 + 1, b as u32 + 1);
                let s = advantage(game, i, j).expect("i not below j");
                let t = advantage(game, j, i).expect("j not below i");
                return Classification::Incomplete(Witness {
                    i,
                    j,
                    s: s.to_vec(),
                    t: t.to_vec(),
                });
            }
        }
    }
    // In a complete preorder, a voter dominating more voters sits in a
    // higher class.
    let score: Vec<usize> = table
        .iter()
        .map(|row| row.iter().filter(|&&x| x).count())
        .collect();
    let mut levels: Vec<usize> = score.clone();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();
    let classes = levels
        .iter()
        .map(|&lvl| {
            (0..n)
                .filter(|&v| score[v] == lvl)
                .map(|v| v as u32 + 1)
                .collect()
        })
        .collect();
    Classification::Complete(TypePartition { classes })
}

/// Voters `1..=n1` as a mask.
fn type1_mask(spec: &CompleteGameSpec) -> u32 {
    low_bits(spec.n1() as usize)
}

fn profile_of(c: Coalition, type1: u32) -> Profile {
    Profile::new((c.0 & type1).count_ones(), (c.0 & !type1).count_ones())
}

/// Profiles of the rectangle that δ-dominate some matrix row, in
/// lexicographic order.
pub fn winning_profiles(spec: &CompleteGameSpec) -> Vec<Profile> {
    rectangle(spec.n1(), spec.n2())
        .filter(|&p| spec.is_winning_profile(p))
        .collect()
}

/// Winning profiles that are minimal under componentwise `≤`.
pub fn min_winning_profiles(spec: &CompleteGameSpec) -> Vec<Profile> {
    let winning = winning_profiles(spec);
    let set: BTreeSet<Profile> = winning.iter().copied().collect();
    winning
        .into_iter()
        .filter(|p| {
            let below1 = p.m1 > 0 && set.contains(&Profile::new(p.m1 - 1, p.m2));
            let below2 = p.m2 > 0 && set.contains(&Profile::new(p.m1, p.m2 - 1));
            !below1 && !below2
        })
        .collect()
}

/// Losing profiles that are maximal under componentwise `≤`.
pub fn max_losing_profiles(spec: &CompleteGameSpec) -> Vec<Profile> {
    let (n1, n2) = (spec.n1(), spec.n2());
    rectangle(n1, n2)
        .filter(|&p| !spec.is_winning_profile(p))
        .filter(|p| {
            let up1 = p.m1 < n1 && !spec.is_winning_profile(Profile::new(p.m1 + 1, p.m2));
            let up2 = p.m2 < n2 && !spec.is_winning_profile(Profile::new(p.m1, p.m2 + 1));
            !up1 && !up2
        })
        .collect()
}

/// Profiles that do not δ-dominate any other profile of the set, in
/// canonical row order (decreasing first component).
pub fn delta_minimal(profiles: &[Profile]) -> Vec<Profile> {
    let mut rows: Vec<Profile> = profiles
        .iter()
        .copied()
        .filter(|&p| !profiles.iter().any(|&q| q != p && delta_dominates(p, q)))
        .collect();
    rows.sort_unstable_by(|a, b| b.m1.cmp(&a.m1).then(a.m2.cmp(&b.m2)));
    rows.dedup();
    rows
}

/// The explicit game of a spec: voters `1..=n1` form the first class and
/// `n1+1..=n` the second. A coalition wins iff its profile δ-dominates some
/// matrix row.
///
/// Panics if `n1 + n2` exceeds [`MAX_VOTERS`].
pub fn realize(spec: &CompleteGameSpec) -> SimpleGame {
    let n = spec.n() as usize;
    assert!(n <= MAX_VOTERS, "cannot materialize a game with {n} voters");
    let minimal: BTreeSet<Profile> = min_winning_profiles(spec).into_iter().collect();
    let type1 = type1_mask(spec);
    let coalitions = (0..1u32 << n)
        .map(Coalition)
        .filter(|&c| minimal.contains(&profile_of(c, type1)))
        .collect();
    SimpleGame::new(n, coalitions).expect("minimal winning profiles give an antichain")
}

/// Recovers `(n1, n2)` and the matrix of a complete game with exactly two
/// classes.
pub fn parametrize(game: &SimpleGame) -> Result<CompleteGameSpec, ParametrizeError> {
    let partition = match classify(game) {
        Classification::Incomplete(w) => return Err(ParametrizeError::NotComplete(w)),
        Classification::Complete(p) => p,
    };
    if partition.len() != 2 {
        return Err(ParametrizeError::TypeCount(partition.len()));
    }
    let top = Coalition::from_voters(partition.classes()[0].iter().copied()).mask();
    let n1 = partition.classes()[0].len() as u32;
    let n2 = partition.classes()[1].len() as u32;

    let winning: BTreeSet<Profile> = (0..1u32 << game.n())
        .map(Coalition)
        .filter(|&c| game.is_winning(c))
        .map(|c| profile_of(c, top))
        .collect();
    let winning: Vec<Profile> = winning.into_iter().collect();
    Ok(validate_spec(n1, n2, delta_minimal(&winning))?)
}

/// Isomorphism of two games.
///
/// Complete games with two classes are compared through their matrix
/// invariant. Otherwise the permutation scan of [`crate::oracle`] is used
/// when the games are small enough, and the parametrization error is
/// returned when they are not.
pub fn are_isomorphic(g1: &SimpleGame, g2: &SimpleGame) -> Result<bool, ParametrizeError> {
    if g1.n() != g2.n() {
        return Ok(false);
    }
    match (parametrize(g1), parametrize(g2)) {
        (Ok(a), Ok(b)) => Ok(a == b),
        (Err(e), _) | (_, Err(e)) => {
            if g1.n() <= crate::oracle::MAX_CANONICAL_VOTERS {
                let k1 = crate::oracle::canonical_form(g1).expect("within cap");
                let k2 = crate::oracle::canonical_form(g2).expect("within cap");
                Ok(k1 == k2)
            } else {
                Err(e)
            }
        }
    }
}

/// Voters that belong to no minimal winning coalition.
pub fn null_voters(game: &SimpleGame) -> Vec<u32> {
    let used = game
        .minimal_winning()
        .iter()
        .fold(0u32, |acc, c| acc | c.mask());
    game.voters()
        .filter(|&v| used & (1 << (v - 1)) == 0)
        .collect()
}

/// Losing coalitions whose every proper superset wins, ordered by mask.
pub fn maximal_losing(game: &SimpleGame) -> Vec<Coalition> {
    let grand = game.grand();
    (0..=grand.mask())
        .map(Coalition)
        .filter(|&c| !game.is_winning(c))
        .filter(|&c| {
            game.voters()
                .filter(|&v| !c.contains(v))
                .all(|v| game.is_winning(c.with(v)))
        })
        .collect()
}
