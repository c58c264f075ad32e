//! Exact elimination: Bareiss determinants and rational row reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::upoly::primitive_vec;
use crate::Rat;

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Bareiss determinant in `i128`; `None` on overflow.
pub(crate) fn det_i128<const N: usize>(mut m: [[i128; N]; N]) -> Option<i128> {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..N.saturating_sub(1) {
        if m[k][k] == 0 {
            match (k + 1..N).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..N {
            for j in k + 1..N {
                let v = m[i][j]
                    .checked_mul(m[k][k])?
                    .checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    if N == 0 {
        return Some(1);
    }
    sign.checked_mul(m[N - 1][N - 1])
}

/// Reduced row echelon form over `Q`.
#[derive(Clone, Debug)]
pub(crate) struct Rref {
    pub rows: Vec<Vec<Rat>>,
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    pub cols: usize,
}

impl Rref {
    pub fn new(matrix: &[Vec<BigInt>], cols: usize) -> Rref {
        let mut rows: Vec<Vec<Rat>> = matrix
            .iter()
            .map(|r| r.iter().cloned().map(Rat::from_integer).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pr);
            let lead = rows[rank][col].clone();
            for v in rows[rank].iter_mut() {
                *v /= &lead;
            }
            for r in 0..rows.len() {
                if r != rank && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    for c in 0..cols {
                        let delta = &factor * &rows[rank][c];
                        rows[r][c] -= delta;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        let free = (0..cols).filter(|c| !pivots.contains(c)).collect();
        Rref {
            rows,
            pivots,
            free,
            cols,
        }
    }

    /// The solution determined by values of the free variables.
    pub fn solution(&self, free_values: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.cols];
        for (&c, v) in self.free.iter().zip(free_values) {
            out[c] = v.clone();
        }
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let mut acc = Rat::zero();
            for (&c, v) in self.free.iter().zip(free_values) {
                acc -= &row[c] * v;
            }
            out[pc] = acc;
        }
        out
    }

    /// Primitive integer basis of the nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        (0..self.free.len())
            .map(|i| {
                let unit: Vec<Rat> = (0..self.free.len())
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect();
                clear_denominators(&self.solution(&unit))
            })
            .collect()
    }
}

/// Scales a rational vector to a primitive integer vector (sign untouched).
pub(crate) fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
        .collect();
    primitive_vec(&ints)
}
