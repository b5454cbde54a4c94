//! Exhaustive horn filling.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::FinSimplicialSet;
use crate::error::{Error, Result};

/// Default cap on the number of horn maps enumerated per `k`.
pub const DEFAULT_HORN_BOUND: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornCount {
    pub k: usize,
    pub horns: usize,
    pub fillable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KanReport {
    pub n: usize,
    pub per_horn: Vec<HornCount>,
}

impl KanReport {
    pub fn horns(&self) -> usize {
        self.per_horn.iter().map(|h| h.horns).sum()
    }

    pub fn fillable(&self) -> usize {
        self.per_horn.iter().map(|h| h.fillable).sum()
    }

    pub fn unfillable(&self) -> usize {
        self.horns() - self.fillable()
    }
}

/// Enumerates every map `Lambda^k[n] -> X` for `k = 0..=n` and counts
/// those that extend over `Delta[n]`.
///
/// A horn map is a tuple `(x_i)_{i != k}` of `(n-1)`-simplices with
/// `d_i x_j = d_{j-1} x_i` for `i < j`.
pub fn kan_check(x: &FinSimplicialSet, n: usize, bound: usize) -> Result<KanReport> {
    if !x.has_degeneracies() {
        return Err(Error::NotApplicable("horn filling needs degeneracies".into()));
    }
    if n == 0 || n > x.truncation() {
        return Err(Error::Range(format!("horn dimension {n} outside 1..={}", x.truncation())));
    }
    let below = x.size(n - 1);
    let per_horn = (0..=n)
        .map(|k| {
            let fillers: HashSet<Vec<usize>> = (0..x.size(n))
                .map(|y| (0..=n).filter(|&i| i != k).map(|i| x.face(n, i, y)).collect())
                .collect();
            let slots: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
            let seen = AtomicUsize::new(0);
            let counts = (0..below)
                .into_par_iter()
                .map(|first| {
                    let mut tuple = vec![first];
                    let (mut horns, mut fill) = (0usize, 0usize);
                    extend(x, n, &slots, &mut tuple, &mut |t| {
                        horns += 1;
                        if seen.fetch_add(1, Ordering::Relaxed) >= bound {
                            return false;
                        }
                        if fillers.contains(t) {
                            fill += 1;
                        }
                        true
                    });
                    (horns, fill)
                })
                .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
            if seen.load(Ordering::Relaxed) > bound {
                return Err(Error::Bound(format!("more than {bound} horn maps for k = {k}")));
            }
            Ok(HornCount {
                k,
                horns: counts.0,
                fillable: counts.1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KanReport { n, per_horn })
}

/// Depth-first extension of a partial compatible tuple; `visit` returns
/// `false` to stop.
fn extend(
    x: &FinSimplicialSet,
    n: usize,
    slots: &[usize],
    tuple: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if tuple.len() == slots.len() {
        return visit(tuple);
    }
    let j = slots[tuple.len()];
    for cand in 0..x.size(n - 1) {
        let ok = tuple.iter().zip(slots).all(|(&xi, &i)| {
            // i < j: d_i x_j = d_{j-1} x_i, both in level n - 2.
            n < 2 || x.face(n - 1, i, cand) == x.face(n - 1, j - 1, xi)
        });
        if ok {
            tuple.push(cand);
            let go_on = extend(x, n, slots, tuple, visit);
            tuple.pop();
            if !go_on {
                return false;
            }
        }
    }
    true
}
