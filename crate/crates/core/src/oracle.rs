//! Brute-force ground truth for small `n`.
//!
//! Every simple game on `n` labeled voters is enumerated as an antichain of
//! minimal winning coalitions, games are bucketed into isomorphism classes
//! by scanning all `n!` relabelings, and each class is classified with the
//! desirability scans of [`crate::analysis`]. Nothing here goes through the
//! matrix parametrization.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::analysis::{classify, equality_classes, realize};
use crate::counting::count_h_formula;
use crate::enumeration::enumerate_all;
use crate::model::{Coalition, SimpleGame};

/// Largest `n` for [`enumerate_all_simple_games`] and [`census`].
pub const MAX_CENSUS_VOTERS: usize = 5;
/// Largest `n` for [`canonical_form`].
pub const MAX_CANONICAL_VOTERS: usize = 8;
/// Largest `n` for the lattice sweep (`2^(2^n)` families).
pub const MAX_SWEEP_VOTERS: usize = 4;
/// Largest `n` for the enumeration leg of [`cross_check`].
pub const MAX_ENUMERATION_VOTERS: u32 = 16;
/// Largest `n` for the realized-distinctness leg of [`cross_check`].
pub const MAX_DISTINCT_VOTERS: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("n = {n} is outside the supported range 1..={cap}")]
    OutOfRange { n: usize, cap: usize },
}

fn check_range(n: usize, cap: usize) -> Result<(), CensusError> {
    if n == 0 || n > cap {
        Err(CensusError::OutOfRange { n, cap })
    } else {
        Ok(())
    }
}

/// Nonempty antichains of nonempty coalitions, extended in increasing mask
/// order. Each node of the extension tree is yielded once.
#[derive(Debug, Clone)]
pub struct Antichains {
    n: usize,
    chosen: Vec<u32>,
    started: bool,
}

impl Antichains {
    fn limit(&self) -> u32 {
        1 << self.n
    }

    fn compatible(&self, c: u32, upto: usize) -> bool {
        self.chosen[..upto]
            .iter()
            .all(|&s| s & c != s && s & c != c)
    }

    /// Smallest coalition `>= from` incomparable with the first `upto` chosen.
    fn candidate(&self, from: u32, upto: usize) -> Option<u32> {
        (from..self.limit()).find(|&c| self.compatible(c, upto))
    }
}

impl Iterator for Antichains {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if !self.started {
            self.started = true;
            self.chosen.push(self.candidate(1, 0)?);
            return Some(self.chosen.clone());
        }
        let last = *self.chosen.last()?;
        if let Some(c) = self.candidate(last + 1, self.chosen.len()) {
            self.chosen.push(c);
            return Some(self.chosen.clone());
        }
        while let Some(cur) = self.chosen.pop() {
            if let Some(c) = self.candidate(cur + 1, self.chosen.len()) {
                self.chosen.push(c);
                return Some(self.chosen.clone());
            }
        }
        None
    }
}

/// Every simple game on `n` labeled voters, exactly once.
pub fn enumerate_all_simple_games(
    n: usize,
) -> Result<impl Iterator<Item = SimpleGame>, CensusError> {
    check_range(n, MAX_CENSUS_VOTERS)?;
    let antichains = Antichains {
        n,
        chosen: Vec::new(),
        started: false,
    };
    Ok(antichains.map(move |a| {
        SimpleGame::new(n, a.into_iter().map(Coalition).collect())
            .expect("antichain is a valid game")
    }))
}

/// Every simple game on `n` labeled voters, found by testing each of the
/// `2^(2^n)` coalition families for monotonicity.
pub fn simple_games_by_sweep(n: usize) -> Result<Vec<SimpleGame>, CensusError> {
    check_range(n, MAX_SWEEP_VOTERS)?;
    let size = 1usize << n;
    let grand = size - 1;
    let families: u64 = 1 << size;
    let mut games = Vec::new();
    for family in 0..families {
        let member = |c: usize| family >> c & 1 == 1;
        if member(0) || !member(grand) {
            continue;
        }
        let monotone = (0..size).all(|c| !member(c) || (0..n).all(|v| member(c | 1 << v)));
        if !monotone {
            continue;
        }
        let minimal = (0..size)
            .filter(|&c| member(c) && (0..n).all(|v| c & 1 << v == 0 || !member(c & !(1 << v))))
            .map(|c| Coalition(c as u32))
            .collect();
        games.push(SimpleGame::new(n, minimal).expect("minimal elements form an antichain"));
    }
    Ok(games)
}

/// Isomorphism-invariant key: the least sorted list of coalition masks over
/// all relabelings of the voters.
pub fn canonical_form(game: &SimpleGame) -> Result<Vec<u32>, CensusError> {
    let n = game.n();
    check_range(n, MAX_CANONICAL_VOTERS)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u32>> = None;
    let mut key = Vec::with_capacity(game.minimal_winning().len());
    loop {
        key.clear();
        key.extend(game.minimal_winning().iter().map(|c| {
            let mut image = 0u32;
            let mut bits = c.mask();
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                image |= 1 << perm[v];
                bits &= bits - 1;
            }
            image
        }));
        key.sort_unstable();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.expect("at least the identity permutation"))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Isomorphism classes of all simple games on `n` voters, bucketed by
/// completeness and number of equal-desirability classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub labeled_games: u64,
    pub total_iso_classes: u64,
    /// `(is_complete, number_of_types) -> isomorphism classes`
    pub by_type_count: BTreeMap<(bool, usize), u64>,
}

impl CensusReport {
    pub fn bucket(&self, complete: bool, types: usize) -> u64 {
        self.by_type_count
            .get(&(complete, types))
            .copied()
            .unwrap_or(0)
    }

    pub fn complete_one_type(&self) -> u64 {
        self.bucket(true, 1)
    }

    pub fn complete_two_types(&self) -> u64 {
        self.bucket(true, 2)
    }
}

pub fn census(n: usize) -> Result<CensusReport, CensusError> {
    let mut labeled_games = 0;
    let mut classes: BTreeMap<Vec<u32>, SimpleGame> = BTreeMap::new();
    for game in enumerate_all_simple_games(n)? {
        labeled_games += 1;
        let key = canonical_form(&game)?;
        classes.entry(key).or_insert(game);
    }
    let mut by_type_count = BTreeMap::new();
    for game in classes.values() {
        let complete = classify(game).is_complete();
        let types = equality_classes(game).len();
        *by_type_count.entry((complete, types)).or_insert(0) += 1;
    }
    Ok(CensusReport {
        n,
        labeled_games,
        total_iso_classes: classes.len() as u64,
        by_type_count,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("n_max = {0} is outside 2..={MAX_ENUMERATION_VOTERS}")]
    OutOfRange(u32),
    #[error(transparent)]
    Census(#[from] CensusError),
}

/// One row of the verification table. Census columns are absent above
/// [`MAX_CENSUS_VOTERS`], where the two-type count comes from enumeration
/// alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyRow {
    pub n: u32,
    pub labeled_games: Option<u64>,
    pub iso_classes: Option<u64>,
    pub complete_one_type: Option<u64>,
    pub complete_two_types: u64,
    pub enumerated: u64,
    pub h_formula: BigInt,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: u32,
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {}: {}", self.n, self.check, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |x: Option<u64>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
        writeln!(
            f,
            "{:>3} {:>9} {:>12} {:>11} {:>11} {:>10} {:>8}",
            "n", "labeled", "iso_classes", "complete_1", "complete_2", "H_formula", "status"
        )?;
        for row in &self.rows {
            writeln!(
                f,
                "{:>3} {:>9} {:>12} {:>11} {:>11} {:>10} {:>8}",
                row.n,
                opt(row.labeled_games),
                opt(row.iso_classes),
                opt(row.complete_one_type),
                row.complete_two_types,
                row.h_formula,
                if row.ok { "OK" } else { "MISMATCH" }
            )?;
        }
        for m in &self.mismatches {
            writeln!(f, "mismatch: {m}")?;
        }
        Ok(())
    }
}

/// [`cross_check_with`] against `F(n+6) - (n^2+4n+8)`.
pub fn cross_check(n_max: u32) -> Result<VerifyReport, VerifyError> {
    cross_check_with(n_max, &|n| BigInt::from(count_h_formula(n)))
}

/// Compares `formula` with the census (`n <= 5`) and with the enumeration
/// stream (`n <= n_max`), and checks that the realized games of every
/// enumerated spec (`n <= 8`) are pairwise non-isomorphic.
pub fn cross_check_with(
    n_max: u32,
    formula: &dyn Fn(u64) -> BigInt,
) -> Result<VerifyReport, VerifyError> {
    if !(2..=MAX_ENUMERATION_VOTERS).contains(&n_max) {
        return Err(VerifyError::OutOfRange(n_max));
    }
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for n in 2..=n_max {
        let expected = formula(n as u64);
        let before = mismatches.len();

        let census = if n as usize <= MAX_CENSUS_VOTERS {
            Some(census(n as usize)?)
        } else {
            None
        };
        if let Some(c) = &census {
            if BigInt::from(c.complete_two_types()) != expected {
                mismatches.push(Mismatch {
                    n,
                    check: "census complete 2-type",
                    detail: format!("census {} vs formula {}", c.complete_two_types(), expected),
                });
            }
            if c.complete_one_type() != n as u64 {
                mismatches.push(Mismatch {
                    n,
                    check: "census complete 1-type",
                    detail: format!("census {} vs n {}", c.complete_one_type(), n),
                });
            }
        }

        let enumerated = enumerate_all(n).count() as u64;
        if BigInt::from(enumerated) != expected {
            mismatches.push(Mismatch {
                n,
                check: "enumeration count",
                detail: format!("stream {} vs formula {}", enumerated, expected),
            });
        }

        if n <= MAX_DISTINCT_VOTERS {
            let mut seen: BTreeMap<Vec<u32>, String> = BTreeMap::new();
            for spec in enumerate_all(n) {
                let key = canonical_form(&realize(&spec))?;
                if let Some(prev) = seen.insert(key, spec.to_json()) {
                    mismatches.push(Mismatch {
                        n,
                        check: "realized games distinct",
                        detail: format!("{} is isomorphic to {}", spec.to_json(), prev),
                    });
                    break;
                }
            }
        }

        rows.push(VerifyRow {
            n,
            labeled_games: census.as_ref().map(|c| c.labeled_games),
            iso_classes: census.as_ref().map(|c| c.total_iso_classes),
            complete_one_type: census.as_ref().map(|c| c.complete_one_type()),
            complete_two_types: census
                .as_ref()
                .map_or(enumerated, |c| c.complete_two_types()),
            enumerated,
            h_formula: expected,
            ok: mismatches.len() == before,
        });
    }
    Ok(VerifyReport { rows, mismatches })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn game(n: usize, lists: &[&[u32]]) -> SimpleGame {
        let lists: Vec<Vec<u32>> = lists.iter().map(|l| l.to_vec()).collect();
        SimpleGame::from_lists(n, &lists).unwrap()
    }

    #[test]
    fn two_voter_games() {
        let mut all: Vec<Vec<Vec<u32>>> = enumerate_all_simple_games(2)
            .unwrap()
            .map(|g| g.minimal_winning_sorted())
            .collect();
        all.sort();
        let expected: Vec<Vec<Vec<u32>>> = vec![
            vec![vec![1]],
            vec![vec![1], vec![2]],
            vec![vec![1, 2]],
            vec![vec![2]],
        ];
        assert_eq!(all, expected);
    }

    #[test]
    fn labeled_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_all_simple_games(n).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 4, 18, 166, 7579]);
        assert!(enumerate_all_simple_games(6).is_err());
        assert!(enumerate_all_simple_games(0).is_err());
    }

    #[test]
    fn sweep_agrees_with_extension() {
        for n in 1..=4 {
            let a: BTreeSet<Vec<Coalition>> = enumerate_all_simple_games(n)
                .unwrap()
                .map(|g| g.minimal_winning().to_vec())
                .collect();
            let b: Vec<Vec<Coalition>> = simple_games_by_sweep(n)
                .unwrap()
                .iter()
                .map(|g| g.minimal_winning().to_vec())
                .collect();
            assert_eq!(a.len(), b.len());
            assert_eq!(a, b.into_iter().collect());
        }
        assert_eq!(simple_games_by_sweep(4).unwrap().len(), 166);
    }

    #[test]
    fn canonical_examples() {
        let k = |g: &SimpleGame| canonical_form(g).unwrap();
        assert_eq!(k(&game(2, &[&[1]])), k(&game(2, &[&[2]])));
        assert_ne!(k(&game(2, &[&[1, 2]])), k(&game(2, &[&[1]])));
        let ex = game(
            5,
            &[
                &[1, 2],
                &[1, 3, 4],
                &[1, 3, 5],
                &[1, 4, 5],
                &[2, 3, 4],
                &[2, 3, 5],
                &[2, 4, 5],
                &[3, 4, 5],
            ],
        );
        assert_eq!(k(&ex), k(&ex.relabel(&[3, 4, 1, 2, 5])));
        assert!(canonical_form(&game(9, &[&[1]])).is_err());
    }

    #[test]
    fn next_permutation_counts() {
        let mut p: Vec<usize> = (0..5).collect();
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 120);
        assert_eq!(p, vec![4, 3, 2, 1, 0]);
    }

    #[test]
    fn census_small() {
        let c = census(2).unwrap();
        assert_eq!(c.labeled_games, 4);
        assert_eq!(c.total_iso_classes, 3);
        assert_eq!(c.complete_two_types(), 1);
        assert_eq!(c.complete_one_type(), 2);
        let c = census(3).unwrap();
        assert_eq!(c.complete_two_types(), 5);
        assert_eq!(c.complete_one_type(), 3);
        assert_eq!(c.by_type_count.values().sum::<u64>(), c.total_iso_classes);
    }

    #[test]
    fn cross_check_ranges() {
        assert_eq!(cross_check(1), Err(VerifyError::OutOfRange(1)));
        assert_eq!(cross_check(17), Err(VerifyError::OutOfRange(17)));
    }

    #[test]
    fn cross_check_four() {
        let report = cross_check(4).unwrap();
        assert!(report.all_ok(), "{report}");
        assert_eq!(report.rows.len(), 3);
        let table = report.to_string();
        assert_eq!(table.lines().filter(|l| l.ends_with(" OK")).count(), 3);
    }

    #[test]
    fn mutated_formula_is_caught() {
        let shifted =
            |n: u64| BigInt::from(crate::counting::fib(n + 5)) - BigInt::from(n * n + 4 * n + 8);
        let report = cross_check_with(3, &shifted).unwrap();
        assert!(!report.all_ok());
        assert_eq!(report.first_mismatch().unwrap().n, 2);
    }
}
