//! Dense matrices over the prime field `F_p`.

pub(crate) fn reduce(x: i64, p: u32) -> u64 {
    x.rem_euclid(p as i64) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Rank of a matrix over `F_p` (entries already reduced), by row reduction.
pub(crate) fn rank(mut rows: Vec<Vec<u64>>, p: u32) -> usize {
    let p = p as u64;
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in c..ncols {
                    let sub = f * rows[r][j] % p;
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

pub(crate) fn identity(n: usize) -> Vec<Vec<u64>> {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

pub(crate) fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u32) -> Vec<Vec<u64>> {
    let p = p as u64;
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = (out[i][j] + x * bk[j]) % p;
            }
        }
    }
    out
}

/// Dimension of `{x : (g - 1) x = 0 for every g}` for square matrices `gs`.
pub(crate) fn common_fixed_dim(gs: &[Vec<Vec<u64>>], n: usize, p: u32) -> usize {
    let pp = p as u64;
    let mut rows = Vec::with_capacity(gs.len() * n);
    for g in gs {
        for i in 0..n {
            let mut row = g[i].clone();
            row[i] = (row[i] + pp - 1) % pp;
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return n;
    }
    n - rank(rows, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small() {
        assert_eq!(rank(vec![vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank(vec![vec![1, 2], vec![2, 4]], 3), 1);
        assert_eq!(rank(vec![vec![1, 1], vec![1, 2]], 2), 2);
        assert_eq!(rank(vec![vec![0, 0]], 7), 0);
    }

    #[test]
    fn fixed_space_of_swap() {
        let swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(common_fixed_dim(std::slice::from_ref(&swap), 2, 2), 1);
        assert_eq!(common_fixed_dim(&[swap], 2, 3), 1);
        assert_eq!(common_fixed_dim(&[], 3, 3), 3);
        assert_eq!(reduce(-1, 3), 2);
    }
}
