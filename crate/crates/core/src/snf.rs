//! Smith normal form and the integer lattice routines built on it.
//!
//! Pivoting always takes the entry of least absolute value, then clears the
//! pivot row and column with Euclidean steps. Work happens in the caller's
//! ring with checked arithmetic; the convenience entry points retry in
//! [`BigInt`] when a fixed-width ring overflows.

use num_bigint::BigInt;

use crate::matrix::Matrix;
use crate::scalar::{Overflow, Ring};

/// Invariant factors of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub divisors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Divisors exceeding one, i.e. the torsion they produce in a cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| **d != BigInt::from(1)).cloned().collect()
    }
}

/// `left * m * right = diag(diagonal)` with `left`, `right` unimodular.
#[derive(Clone)]
pub struct Decomposition<T> {
    pub left: Matrix<T>,
    pub right: Matrix<T>,
    pub diagonal: Vec<T>,
}

impl<T: Ring> Decomposition<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Reduced<T> {
    diagonal: Vec<T>,
    left: Option<Matrix<T>>,
    right: Option<Matrix<T>>,
}

fn min_abs_entry<T: Ring>(
    a: &Matrix<T>,
    rows: impl Iterator<Item = usize> + Clone,
    cols: impl Iterator<Item = usize> + Clone,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            let better = match &best {
                None => true,
                Some((_, _, b)) => av < *b,
            };
            if better {
                let unit = av.is_one();
                best = Some((i, j, av));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn reduce<T: Ring>(mut a: Matrix<T>, track: bool) -> Result<Reduced<T>, Overflow> {
    let (r, c) = a.shape();
    let mut left = track.then(|| Matrix::<T>::identity(r));
    let mut right = track.then(|| Matrix::<T>::identity(c));
    let mut diagonal = Vec::new();

    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_abs_entry(&a, t..r, t..c) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some(p) = left.as_mut() {
            p.swap_rows(t, pi);
        }
        if let Some(q) = right.as_mut() {
            q.swap_cols(t, pj);
        }

        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.row_sub_mul(i, t, &q)?;
                if let Some(p) = left.as_mut() {
                    p.row_sub_mul(i, t, &q)?;
                }
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.col_sub_mul(j, t, &q)?;
                if let Some(m) = right.as_mut() {
                    m.col_sub_mul(j, t, &q)?;
                }
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }

            if !clean {
                // a remainder is now smaller than the pivot; bring it in
                let col_min = min_abs_entry(&a, t..r, t..t + 1);
                let row_min = min_abs_entry(&a, t..t + 1, t..c);
                let pick = match (col_min, row_min) {
                    (Some(x), Some(y)) => {
                        if a[x].abs() <= a[y].abs() {
                            x
                        } else {
                            y
                        }
                    }
                    (Some(x), None) | (None, Some(x)) => x,
                    (None, None) => unreachable!("pivot is nonzero"),
                };
                a.swap_rows(t, pick.0);
                a.swap_cols(t, pick.1);
                if let Some(p) = left.as_mut() {
                    p.swap_rows(t, pick.0);
                }
                if let Some(q) = right.as_mut() {
                    q.swap_cols(t, pick.1);
                }
                continue;
            }

            // pivot must divide everything remaining
            let piv = a[(t, t)].clone();
            if piv.abs().is_one() {
                break;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let minus_one = -T::one();
                    a.row_sub_mul(t, i, &minus_one)?;
                    if let Some(p) = left.as_mut() {
                        p.row_sub_mul(t, i, &minus_one)?;
                    }
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some(p) = left.as_mut() {
                p.negate_row(t);
            }
        }
        diagonal.push(a[(t, t)].clone());
        t += 1;
    }

    Ok(Reduced {
        diagonal,
        left,
        right,
    })
}

/// Invariant factors of `m`, exact for every input.
pub fn smith_normal_form<T: Ring>(m: &Matrix<T>) -> SmithForm {
    let divisors = match reduce(m.clone(), false) {
        Ok(red) => red.diagonal.iter().map(Ring::to_big).collect(),
        Err(Overflow) => reduce(m.to_big(), false)
            .expect("big integers do not overflow")
            .diagonal,
    };
    SmithForm { divisors }
}

/// Rank of `m` over the rationals.
pub fn rank<T: Ring>(m: &Matrix<T>) -> usize {
    smith_normal_form(m).rank()
}

/// Full decomposition with transformation matrices.
pub fn decompose<T: Ring>(m: &Matrix<T>) -> Result<Decomposition<T>, Overflow> {
    let red = reduce(m.clone(), true)?;
    Ok(Decomposition {
        left: red.left.expect("tracked"),
        right: red.right.expect("tracked"),
        diagonal: red.diagonal,
    })
}

/// Columns form a basis of the (saturated) integer kernel of `m`.
pub fn kernel_basis<T: Ring>(m: &Matrix<T>) -> Result<Matrix<T>, Overflow> {
    let dec = decompose(m)?;
    let idx: Vec<usize> = (dec.rank()..m.cols()).collect();
    Ok(dec.right.select_columns(&idx))
}

/// Solves `m x = v` over the integers using a precomputed decomposition.
#[derive(Clone)]
pub struct LatticeSolver<T> {
    dec: Decomposition<T>,
    rows: usize,
    cols: usize,
}

impl<T: Ring> LatticeSolver<T> {
    pub fn new(m: &Matrix<T>) -> Result<Self, Overflow> {
        Ok(Self {
            dec: decompose(m)?,
            rows: m.rows(),
            cols: m.cols(),
        })
    }

    /// Some integer solution, or `None` when `v` is not in the image lattice.
    pub fn solve(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.rows);
        let pv = self.dec.left.apply(v);
        let rank = self.dec.rank();
        if pv[rank..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![T::zero(); self.cols];
        for (i, d) in self.dec.diagonal.iter().enumerate() {
            let (q, rem) = pv[i].div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
        Some(self.dec.right.apply(&y))
    }
}
