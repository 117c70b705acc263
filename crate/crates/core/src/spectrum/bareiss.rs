//! Fraction-free Gaussian elimination over arbitrary-precision integers.

use num_bigint::BigInt;

/// Rank of an integer matrix given row-major, exact.
///
/// Bareiss elimination keeps every intermediate entry an integer minor, so
/// the only division is exact. Columns without a pivot are skipped.
pub fn bareiss_rank(rows: usize, cols: usize, data: &[i64]) -> usize {
    assert_eq!(data.len(), rows * cols);
    let mut m: Vec<BigInt> = data.iter().map(|&x| BigInt::from(x)).collect();
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| m[r * cols + col] != zero) else {
            continue;
        };
        if p != rank {
            for c in 0..cols {
                m.swap(p * cols + c, rank * cols + c);
            }
        }
        let pivot = m[rank * cols + col].clone();
        for r in rank + 1..rows {
            let lead = m[r * cols + col].clone();
            for c in col + 1..cols {
                let v = &pivot * &m[r * cols + c] - &lead * &m[rank * cols + c];
                m[r * cols + c] = v / &prev;
            }
            m[r * cols + col] = zero.clone();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(bareiss_rank(2, 2, &[1, 2, 2, 4]), 1);
        assert_eq!(bareiss_rank(2, 2, &[0, 0, 0, 0]), 0);
        assert_eq!(bareiss_rank(3, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 5]), 3);
        assert_eq!(bareiss_rank(2, 3, &[0, 1, 2, 0, 2, 4]), 1);
        // A zero column forces the pivot search to move on.
        assert_eq!(bareiss_rank(3, 3, &[0, 1, 1, 0, 1, 2, 0, 3, 4]), 2);
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = i64::MAX / 3;
        assert_eq!(bareiss_rank(2, 2, &[big, big - 1, big - 1, big - 2]), 2);
        assert_eq!(bareiss_rank(2, 2, &[big, big, big, big]), 1);
    }
}
