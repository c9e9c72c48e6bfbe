//! Small exact integer linear algebra: determinants and Smith invariants.

use num_integer::Integer;

/// Determinant of a square matrix by fraction-free Bareiss elimination.
pub fn determinant(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Smith invariants `s_1 | s_2 | … | s_k` of the `k × n` matrix whose rows are
/// `vectors`, computed from determinantal divisors (gcd of `i × i` minors).
/// A zero entry means the rank is smaller than `k`.
pub fn smith_invariants(vectors: &[Vec<i64>]) -> Vec<i128> {
    let k = vectors.len();
    let n = vectors.first().map_or(0, Vec::len);
    let mut divisors = vec![1i128];
    for i in 1..=k.min(n) {
        let mut g = 0i128;
        for rows in combinations(k, i) {
            for cols in combinations(n, i) {
                let minor: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| vectors[r][c]).collect())
                    .collect();
                g = g.gcd(&determinant(&minor));
                if g == 1 {
                    break;
                }
            }
            if g == 1 {
                break;
            }
        }
        divisors.push(g);
    }
    let mut inv: Vec<i128> = (1..divisors.len())
        .map(|i| {
            if divisors[i] == 0 {
                0
            } else {
                divisors[i] / divisors[i - 1]
            }
        })
        .collect();
    inv.resize(k, 0);
    inv
}

/// Whether the vectors span a direct summand of `Z^n` of rank `vectors.len()`.
pub fn spans_direct_summand(vectors: &[Vec<i64>]) -> bool {
    smith_invariants(vectors).iter().all(|&s| s == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_determinants() {
        assert_eq!(
            determinant(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]),
            1
        );
        assert_eq!(
            determinant(&[vec![1, 0, 0], vec![0, 1, 0], vec![2, 1, 0]]),
            0
        );
        assert_eq!(determinant(&[vec![0, -1], vec![2, 1]]), 2);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(
            determinant(&[
                vec![2, 0, 1, 3],
                vec![1, 1, 0, 0],
                vec![0, 4, 1, 1],
                vec![3, 0, 0, 2]
            ]),
            6
        );
    }

    #[test]
    fn smith_of_partial_frames() {
        assert_eq!(smith_invariants(&[vec![1, 1, 1]]), vec![1]);
        assert_eq!(smith_invariants(&[vec![2, 0, 0]]), vec![2]);
        assert_eq!(
            smith_invariants(&[vec![1, 1, 0], vec![1, -1, 0]]),
            vec![1, 2]
        );
        assert_eq!(smith_invariants(&[vec![1, 0], vec![2, 0]]), vec![1, 0]);
        assert!(spans_direct_summand(&[vec![1, 0, 0], vec![1, 1, 1]]));
    }
}
