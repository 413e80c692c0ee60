//! Exact linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_big(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..ncols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    rank(&m)
}

/// Solves `sum_j x_j * columns[j] = rhs`. Returns `None` when inconsistent;
/// free variables (if any) are set to zero.
pub fn solve_columns(columns: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = columns.len();
    let dim = rhs.len();
    let mut aug: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rat> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

/// Basis of the right null space `{x : rows * x = 0}`.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant of an integer matrix (fraction-free Bareiss elimination).
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Lattice basis of `{x in Z^n : a * x = 0}` in row Hermite normal form.
pub fn integer_kernel_hnf(a: &[Vec<i64>], n: usize) -> Vec<Vec<BigInt>> {
    // Column reduction a * u = h with u unimodular; the columns of u that
    // end up opposite zero columns of h span the integer kernel.
    let mut h: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut u: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut pivot_col = 0;
    for row in 0..h.len() {
        if pivot_col == n {
            break;
        }
        for c in pivot_col + 1..n {
            if h[row][c].is_zero() {
                continue;
            }
            let (g, x, y) = ext_gcd(&h[row][pivot_col], &h[row][c]);
            let p = &h[row][pivot_col] / &g;
            let q = &h[row][c] / &g;
            // [col_pivot, col_c] <- [x*col_pivot + y*col_c, -q*col_pivot + p*col_c]
            combine_columns(&mut h, pivot_col, c, &x, &y, &q, &p);
            combine_columns(&mut u, pivot_col, c, &x, &y, &q, &p);
        }
        if !h[row][pivot_col].is_zero() {
            pivot_col += 1;
        }
    }
    let kernel: Vec<Vec<BigInt>> = (pivot_col..n).map(|c| (0..n).map(|i| u[i][c].clone()).collect()).collect();
    hermite_rows(kernel)
}

fn combine_columns(m: &mut [Vec<BigInt>], a: usize, b: usize, x: &BigInt, y: &BigInt, q: &BigInt, p: &BigInt) {
    for row in m.iter_mut() {
        let ca = row[a].clone();
        let cb = row[b].clone();
        row[a] = x * &ca + y * &cb;
        row[b] = p * &cb - q * &ca;
    }
}

/// Extended gcd with `g = x*a + y*b`, `g > 0` unless both are zero.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row Hermite normal form of a full-row-rank integer matrix.
pub fn hermite_rows(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let k = b.len();
    let n = b.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        if r == k {
            break;
        }
        for i in r + 1..k {
            if b[i][c].is_zero() {
                continue;
            }
            if b[r][c].is_zero() {
                b.swap(r, i);
                continue;
            }
            let (g, x, y) = ext_gcd(&b[r][c], &b[i][c]);
            let p = &b[r][c] / &g;
            let q = &b[i][c] / &g;
            let top: Vec<BigInt> = (0..n).map(|j| &x * &b[r][j] + &y * &b[i][j]).collect();
            let bottom: Vec<BigInt> = (0..n).map(|j| &p * &b[i][j] - &q * &b[r][j]).collect();
            b[r] = top;
            b[i] = bottom;
        }
        if b[r][c].is_zero() {
            continue;
        }
        if b[r][c].is_negative() {
            for x in b[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let f = b[i][c].div_floor(&b[r][c]);
            if !f.is_zero() {
                for j in 0..n {
                    let d = &f * &b[r][j];
                    b[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&big(&[&[2, -1], &[-1, 2]])), BigInt::from(3));
        assert_eq!(determinant(&big(&[&[2, -2], &[-2, 2]])), BigInt::from(0));
        assert_eq!(determinant(&big(&[&[2, -2], &[-3, 2]])), BigInt::from(-2));
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&big(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])), BigInt::from(4));
    }

    #[test]
    fn kernel_of_affine_a1() {
        let k = integer_kernel_hnf(&[vec![2, -2], vec![-2, 2]], 2);
        assert_eq!(k, big(&[&[1, 1]]));
        assert!(integer_kernel_hnf(&[vec![2, -1], vec![-1, 2]], 2).is_empty());
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 4z = 0 has kernel lattice basis with determinant-one index.
        let k = integer_kernel_hnf(&[vec![2, 4, 8]], 3);
        assert_eq!(k.len(), 2);
        for row in &k {
            let dot: BigInt = row[0].clone() * 2 + row[1].clone() * 4 + row[2].clone() * 8;
            assert!(dot.is_zero());
        }
        // (2,-1,0) and (0,2,-1) generate the kernel; reduced above the
        // second pivot the first row becomes (2,1,-1).
        assert_eq!(k, big(&[&[2, 1, -1], &[0, 2, -1]]));
    }

    #[test]
    fn solve_and_nullspace() {
        let cols = vec![vec![rat(2), rat(-1)], vec![rat(-1), rat(2)]];
        let x = solve_columns(&cols, &[rat(1), rat(0)]).unwrap();
        assert_eq!(x, vec![Rat::new(2.into(), 3.into()), Rat::new(1.into(), 3.into())]);
        let inconsistent = vec![vec![rat(1), rat(1)]];
        assert!(solve_columns(&inconsistent, &[rat(1), rat(0)]).is_none());
        let ns = nullspace(&[vec![rat(1), rat(-1)]], 2);
        assert_eq!(ns, vec![vec![rat(1), rat(1)]]);
    }
}
