//! Streams every valid [`CompleteGameSpec`] for a split `(n1, n2)` or a
//! total `n`.
//!
//! Order is depth-first over row sequences. At every depth candidate rows are
//! tried by decreasing first component, then increasing second component.
//! A matrix is yielded before any of its extensions. First rows range over
//! `m1 = n1..=1` and `m2 = 0..n2`; a first row with `m1 = 0` or `m2 = n2`
//! is invalid on its own and has no valid extension either.
//!
//! The stream keeps only the current row sequence, so memory is `O(r)`.

use crate::model::{validate_spec, CompleteGameSpec, Profile};

/// Depth-first cursor over the matrices of one split.
#[derive(Debug, Clone)]
pub struct EnumerationCursor {
    n1: u32,
    n2: u32,
    rows: Vec<Profile>,
    started: bool,
}

impl EnumerationCursor {
    pub fn new(n1: u32, n2: u32) -> Self {
        EnumerationCursor {
            n1,
            n2,
            rows: Vec::new(),
            started: false,
        }
    }

    pub fn split(&self) -> (u32, u32) {
        (self.n1, self.n2)
    }

    /// Rows of the most recently yielded matrix.
    pub fn partial_matrix(&self) -> &[Profile] {
        &self.rows
    }

    fn first_candidate(&self, parent: Option<Profile>) -> Option<Profile> {
        match parent {
            None => (self.n1 >= 1 && self.n2 >= 1).then(|| Profile::new(self.n1, 0)),
            Some(p) => {
                let m1 = p.m1.checked_sub(1)?;
                self.lowest_m2(p, m1).map(|m2| Profile::new(m1, m2))
            }
        }
    }

    /// Smallest admissible second entry below `parent` with first entry `m1`.
    fn lowest_m2(&self, parent: Profile, m1: u32) -> Option<u32> {
        let m2 = (parent.size() + 1).saturating_sub(m1);
        (m2 <= self.n2).then_some(m2)
    }

    fn next_candidate(&self, parent: Option<Profile>, cur: Profile) -> Option<Profile> {
        match parent {
            None => {
                if cur.m2 + 1 < self.n2 {
                    Some(Profile::new(cur.m1, cur.m2 + 1))
                } else if cur.m1 > 1 {
                    Some(Profile::new(cur.m1 - 1, 0))
                } else {
                    None
                }
            }
            Some(p) => {
                if cur.m2 < self.n2 {
                    return Some(Profile::new(cur.m1, cur.m2 + 1));
                }
                let mut m1 = cur.m1;
                while m1 > 0 {
                    m1 -= 1;
                    if let Some(m2) = self.lowest_m2(p, m1) {
                        return Some(Profile::new(m1, m2));
                    }
                }
                None
            }
        }
    }

    fn current(&self) -> CompleteGameSpec {
        validate_spec(self.n1, self.n2, self.rows.clone())
            .expect("enumerated prefixes satisfy the matrix conditions")
    }
}

impl Iterator for EnumerationCursor {
    type Item = CompleteGameSpec;

    fn next(&mut self) -> Option<CompleteGameSpec> {
        if !self.started {
            self.started = true;
            let first = self.first_candidate(None)?;
            self.rows.push(first);
            return Some(self.current());
        }
        let last = *self.rows.last()?;
        if let Some(child) = self.first_candidate(Some(last)) {
            self.rows.push(child);
            return Some(self.current());
        }
        while let Some(cur) = self.rows.pop() {
            let parent = self.rows.last().copied();
            if let Some(sibling) = self.next_candidate(parent, cur) {
                self.rows.push(sibling);
                return Some(self.current());
            }
        }
        None
    }
}

/// Every valid spec with class sizes `(n1, n2)`, each exactly once.
///
/// Empty when either class is empty.
pub fn enumerate_split(n1: u32, n2: u32) -> EnumerationCursor {
    EnumerationCursor::new(n1, n2)
}

/// Every valid spec on `n` voters: the splits `(1, n-1), (2, n-2), ...`
/// in turn. Empty for `n < 2`.
pub fn enumerate_all(n: u32) -> impl Iterator<Item = CompleteGameSpec> {
    (1..n).flat_map(move |a| enumerate_split(a, n - a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{count_g, count_h_formula};
    use num_bigint::BigUint;

    fn text(specs: impl Iterator<Item = CompleteGameSpec>) -> Vec<String> {
        specs.map(|s| s.matrix().to_string()).collect()
    }

    #[test]
    fn small_splits() {
        assert_eq!(text(enumerate_split(1, 1)), vec!["1,0"]);
        assert_eq!(text(enumerate_split(1, 2)), vec!["1,0", "1,0;0,2", "1,1"]);
        assert_eq!(text(enumerate_split(2, 1)), vec!["2,0", "1,0"]);
        assert!(enumerate_split(2, 3).any(|s| s.matrix().to_string() == "2,0;0,3"));
        assert_eq!(enumerate_split(0, 3).count(), 0);
        assert_eq!(enumerate_split(3, 0).count(), 0);
    }

    #[test]
    fn totals() {
        assert_eq!(enumerate_all(0).count(), 0);
        assert_eq!(enumerate_all(1).count(), 0);
        assert_eq!(enumerate_all(2).count(), 1);
        assert_eq!(enumerate_all(3).count(), 5);
        assert_eq!(enumerate_all(6).count(), 76);
    }

    #[test]
    fn per_split_counts_match_closed_form() {
        for a in 1..=10u32 {
            for b in 1..=10u32 {
                let len = enumerate_split(a, b).count();
                assert_eq!(BigUint::from(len), count_g(a as u64, b as u64), "({a},{b})");
            }
        }
    }

    #[test]
    fn totals_match_formula() {
        for n in 2..=12u32 {
            assert_eq!(
                BigUint::from(enumerate_all(n).count()),
                count_h_formula(n as u64)
            );
        }
    }

    #[test]
    fn prefix_is_yielded_before_extension() {
        let all: Vec<Vec<Profile>> = enumerate_split(3, 4).map(|s| s.rows().to_vec()).collect();
        for (idx, rows) in all.iter().enumerate() {
            if rows.len() > 1 {
                let prefix = &rows[..rows.len() - 1];
                let at = all
                    .iter()
                    .position(|r| r == prefix)
                    .expect("prefix enumerated");
                assert!(at < idx);
            }
        }
    }
}
