//! Integer column reduction for sublattices of `ℤᵏ`.

/// Column echelon form `H = A·U` with `U` unimodular. Returns `(H, U, rank)`;
/// columns `rank..` of `H` are zero, so the matching columns of `U` span the
/// integer kernel of `A`.
pub fn column_hermite(a: &[Vec<i128>], cols: usize) -> (Vec<Vec<i128>>, Vec<Vec<i128>>, usize) {
    let rows = a.len();
    let mut h: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();
    let swap = |m: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    // col_j -= q * col_i
    let axpy = |m: &mut Vec<Vec<i128>>, j: usize, i: usize, q: i128| {
        for row in m.iter_mut() {
            row[j] -= q * row[i];
        }
    };
    let mut c = 0;
    for r in 0..rows {
        if c == cols {
            break;
        }
        loop {
            // Column in c.. with the smallest nonzero |entry| in row r becomes the pivot.
            let Some(p) = (c..cols).filter(|&j| h[r][j] != 0).min_by_key(|&j| h[r][j].abs()) else { break };
            swap(&mut h, c, p);
            swap(&mut u, c, p);
            let mut done = true;
            for j in c + 1..cols {
                if h[r][j] != 0 {
                    let q = h[r][j].div_euclid(h[r][c]);
                    axpy(&mut h, j, c, q);
                    axpy(&mut u, j, c, q);
                    if h[r][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][c] != 0 {
            if h[r][c] < 0 {
                for row in h.iter_mut() {
                    row[c] = -row[c];
                }
                for row in u.iter_mut() {
                    row[c] = -row[c];
                }
            }
            c += 1;
        }
    }
    (h, u, c)
}

/// Basis of `{x ∈ ℤᵐ : A x = 0}` for `A` with `cols` columns.
pub fn integer_kernel(a: &[Vec<i128>], cols: usize) -> Vec<Vec<i128>> {
    let (_, u, rank) = column_hermite(a, cols);
    (rank..cols).map(|j| u.iter().map(|row| row[j]).collect()).collect()
}

/// An integer solution of `A x = t`, if one exists.
pub fn integer_solve(a: &[Vec<i128>], cols: usize, t: &[i128]) -> Option<Vec<i128>> {
    let (h, u, rank) = column_hermite(a, cols);
    let rows = a.len();
    let mut y = vec![0i128; cols];
    let mut r = 0;
    for j in 0..rank {
        while r < rows && h[r][j] == 0 {
            r += 1;
        }
        let partial: i128 = (0..j).map(|i| h[r][i] * y[i]).sum();
        let rest = t[r] - partial;
        if rest % h[r][j] != 0 {
            return None;
        }
        y[j] = rest / h[r][j];
        r += 1;
    }
    for (row, &target) in h.iter().zip(t) {
        let v: i128 = row.iter().zip(&y).map(|(a, b)| a * b).sum();
        if v != target {
            return None;
        }
    }
    Some((0..cols).map(|i| (0..cols).map(|j| u[i][j] * y[j]).sum()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(a: &[Vec<i128>], x: &[i128]) -> Vec<i128> {
        a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
    }

    #[test]
    fn kernel_of_dependent_generators() {
        // Generators 2, 3 of ℤ: relation 3·(2) − 2·(3) = 0.
        let a = vec![vec![2, 3]];
        let k = integer_kernel(&a, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(apply(&a, &k[0]), vec![0]);
        assert_eq!(k[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![3, 2]);
    }

    #[test]
    fn lattice_membership() {
        // Lattice spanned by (2,0), (1,1) in ℤ².
        let a = vec![vec![2, 1], vec![0, 1]];
        let x = integer_solve(&a, 2, &[3, 1]).unwrap();
        assert_eq!(apply(&a, &x), vec![3, 1]);
        assert!(integer_solve(&a, 2, &[1, 0]).is_none());
        let b = vec![vec![4, 6]];
        assert!(integer_solve(&b, 2, &[2]).is_some());
        assert!(integer_solve(&b, 2, &[3]).is_none());
    }
}
