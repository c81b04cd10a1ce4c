use rand::seq::SliceRandom;
use rand::Rng;

use super::FiniteLeftLoop;
use crate::error::{Error, Result};

/// Largest order accepted by [`enumerate_left_loops`].
pub const EXHAUSTIVE_LOOP_LIMIT: usize = 6;

/// `((n-1)!)^(n-1)`, the number of left loops on `{0..n-1}` with identity 0.
/// `None` once it overflows `u128` (from order 10).
pub fn left_loop_count(n: usize) -> Option<u128> {
    if n <= 1 {
        return Some(1);
    }
    let f = (1..n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))?;
    f.checked_pow(u32::try_from(n - 1).ok()?)
}

/// Lazily yields every left loop of order `n` (identity 0), rows varying
/// like an odometer with the last row fastest and each row in
/// lexicographic order.
pub struct LeftLoopIter {
    n: usize,
    // candidate rows (columns 1..n) for each row index 1..n
    options: Vec<Vec<Vec<usize>>>,
    choice: Vec<usize>,
    done: bool,
}

impl Iterator for LeftLoopIter {
    type Item = FiniteLeftLoop;

    fn next(&mut self) -> Option<FiniteLeftLoop> {
        if self.done {
            return None;
        }
        let n = self.n;
        let mut table = Vec::with_capacity(n * n);
        table.extend(0..n);
        for (r, &c) in self.choice.iter().enumerate() {
            table.push(r + 1);
            table.extend_from_slice(&self.options[r][c]);
        }
        let mut pos = self.choice.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.choice[pos] += 1;
            if self.choice[pos] < self.options[pos].len() {
                break;
            }
            self.choice[pos] = 0;
        }
        Some(FiniteLeftLoop::from_flat_unchecked(n, table))
    }
}

fn lex_permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.clone();
        rest.remove(i);
        for mut tail in lex_permutations(rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every left loop of order `n`, for `1 <= n <` [`EXHAUSTIVE_LOOP_LIMIT`]` + 1`.
/// The count is [`left_loop_count`]; beyond order 5 it is only practical to
/// consume a prefix.
pub fn enumerate_left_loops(n: usize) -> Result<LeftLoopIter> {
    if n == 0 {
        return Err(Error::InvalidArgument("loop order must be positive".into()));
    }
    if n > EXHAUSTIVE_LOOP_LIMIT {
        return Err(Error::TooLarge {
            what: "exhaustive left-loop enumeration",
            size: n,
            limit: EXHAUSTIVE_LOOP_LIMIT,
        });
    }
    let options = (1..n)
        .map(|r| lex_permutations((0..n).filter(|&v| v != r).collect()))
        .collect();
    Ok(LeftLoopIter {
        n,
        options,
        choice: vec![0; n - 1],
        done: false,
    })
}

/// A uniformly random left loop of order `n` with identity 0.
pub fn random_left_loop<R: Rng + ?Sized>(n: usize, rng: &mut R) -> FiniteLeftLoop {
    assert!(n > 0, "loop order must be positive");
    let mut table: Vec<usize> = (0..n).collect();
    for r in 1..n {
        let mut row: Vec<usize> = (0..n).filter(|&v| v != r).collect();
        row.shuffle(rng);
        table.push(r);
        table.extend(row);
    }
    FiniteLeftLoop::from_flat_unchecked(n, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_left_loops(1).unwrap().count(), 1);
        assert_eq!(enumerate_left_loops(2).unwrap().count(), 1);
        assert_eq!(enumerate_left_loops(3).unwrap().count(), 4);
        assert_eq!(enumerate_left_loops(4).unwrap().count(), 216);
        assert_eq!(left_loop_count(5), Some(331_776));
        assert_eq!(left_loop_count(9), Some(40_320u128.pow(8)));
        assert_eq!(left_loop_count(10), None);
        assert!(matches!(enumerate_left_loops(7), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn order_two_is_z2() {
        let only = enumerate_left_loops(2).unwrap().next().unwrap();
        assert_eq!(only.rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn order_three_contents() {
        let all: Vec<FiniteLeftLoop> = enumerate_left_loops(3).unwrap().collect();
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(all.iter().any(|b| b.rows() == z3));
        assert!(all.iter().any(|b| !b.is_right_loop()));
        for b in &all {
            assert!(FiniteLeftLoop::validate(b.rows()).is_ok());
        }
        let mut rows: Vec<_> = all.iter().map(|b| b.rows()).collect();
        rows.dedup();
        assert_eq!(rows.len(), 4);
    }

    #[test]
    fn order_six_prefix_is_lazy() {
        let first: Vec<FiniteLeftLoop> = enumerate_left_loops(6).unwrap().take(3).collect();
        assert_eq!(first.len(), 3);
        assert_ne!(first[0], first[1]);
    }

    #[test]
    fn random_loops_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for n in 1..9 {
            let b = random_left_loop(n, &mut rng);
            assert!(FiniteLeftLoop::validate(b.rows()).is_ok());
        }
    }
}
