//! Exact rational linear algebra.

use num_traits::{One, Zero};

use crate::Rational;

/// Solves `Σ x_k·columns[k] = rhs`. Returns `None` unless the solution
/// exists and is unique.
pub(crate) fn solve_unique(columns: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<Rational>> {
    let unknowns = columns.len();
    let rows = rhs.len();
    debug_assert!(columns.iter().all(|c| c.len() == rows));
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            columns
                .iter()
                .map(|c| Rational::from_integer(c[r]))
                .chain(std::iter::once(Rational::from_integer(rhs[r])))
                .collect()
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..unknowns {
        let Some(found) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            // Free variable.
            return None;
        };
        m.swap(pivot_row, found);
        let inv = Rational::one() / m[pivot_row][col];
        for v in m[pivot_row].iter_mut() {
            *v *= inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col];
                for k in col..=unknowns {
                    let delta = factor * m[pivot_row][k];
                    m[r][k] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    Some((0..unknowns).map(|k| m[k][unknowns]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_solution() {
        // x + y = 3, x - y = 1
        let cols = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(
            solve_unique(&cols, &[3, 1]),
            Some(vec![Rational::from_integer(2), Rational::from_integer(1)])
        );
    }

    #[test]
    fn fractional_solution() {
        let cols = vec![vec![2, 0, 0]];
        assert_eq!(solve_unique(&cols, &[1, 0, 0]), Some(vec![Rational::new(1, 2)]));
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        assert_eq!(solve_unique(&[vec![1, 0]], &[1, 1]), None);
        assert_eq!(solve_unique(&[vec![1, 1], vec![2, 2]], &[1, 1]), None);
    }
}
