//! Kauffman bracket state sums and the normalized invariants built from it.
//!
//! At `X[a,b,c,d]` the A-smoothing joins `a` with `b` and `c` with `d`; the
//! B-smoothing joins `a` with `d` and `b` with `c`. A word is a bit mask over
//! the crossing list with bit `k` set for a B-smoothing at crossing `k`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::laurent::Variable;
use crate::link::LinkDiagram;
use crate::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Smoothing {
    A,
    B,
}

/// The circles of one smoothing of every crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketState {
    word: u64,
    crossings: usize,
    loop_of_arc: Vec<usize>,
    loops: usize,
}

impl BracketState {
    pub fn word(&self) -> Vec<Smoothing> {
        (0..self.crossings)
            .map(|k| {
                if self.word >> k & 1 == 1 {
                    Smoothing::B
                } else {
                    Smoothing::A
                }
            })
            .collect()
    }

    pub fn bits(&self) -> u64 {
        self.word
    }

    pub fn b_count(&self) -> usize {
        self.word.count_ones() as usize
    }

    /// `||S||`, free circles included.
    pub fn loop_count(&self) -> usize {
        self.loops
    }

    /// Loop index of arc `label`. Loops are numbered by their smallest arc
    /// label; free circles come last.
    pub fn loop_of_arc(&self, label: usize) -> usize {
        self.loop_of_arc[label - 1]
    }
}

/// Pairs of arc labels joined by smoothing crossing `x`.
pub(crate) fn smoothing_pairs(x: &[usize; 4], s: Smoothing) -> [(usize, usize); 2] {
    let [a, b, c, d] = *x;
    match s {
        Smoothing::A => [(a, b), (c, d)],
        Smoothing::B => [(a, d), (b, c)],
    }
}

pub(crate) fn resolve_bits(d: &LinkDiagram, word: u64) -> BracketState {
    let arcs = d.arc_count();
    let mut uf = UnionFind::<usize>::new(arcs);
    for (k, x) in d.crossings().iter().enumerate() {
        let s = if word >> k & 1 == 1 {
            Smoothing::B
        } else {
            Smoothing::A
        };
        for (p, q) in smoothing_pairs(x, s) {
            uf.union(p - 1, q - 1);
        }
    }
    let mut id = vec![usize::MAX; arcs];
    let mut loop_of_arc = Vec::with_capacity(arcs);
    let mut next = 0;
    for l in 0..arcs {
        let r = uf.find(l);
        if id[r] == usize::MAX {
            id[r] = next;
            next += 1;
        }
        loop_of_arc.push(id[r]);
    }
    BracketState {
        word,
        crossings: d.crossing_count(),
        loop_of_arc,
        loops: next + d.free_circles(),
    }
}

pub fn resolve_state(d: &LinkDiagram, word: &[Smoothing]) -> Result<BracketState> {
    if word.len() != d.crossing_count() {
        return Err(Error::LengthMismatch {
            expected: d.crossing_count(),
            got: word.len(),
        });
    }
    let bits = word
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Smoothing::B)
        .fold(0u64, |acc, (k, _)| acc | 1 << k);
    Ok(resolve_bits(d, bits))
}

/// Number of states with each `(#B, ||S||)`, over all `2^n` words.
pub fn state_histogram(d: &LinkDiagram) -> BTreeMap<(usize, usize), u64> {
    let n = d.crossing_count();
    assert!(n < 32, "state enumeration limited to 31 crossings");
    (0..1u64 << n)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, w| {
            let s = resolve_bits(d, w);
            *acc.entry((s.b_count(), s.loop_count())).or_insert(0u64) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

fn poly(var: Variable, terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(var, terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
}

/// `-A^2 - A^-2`, the value of a lone circle.
pub fn delta() -> LaurentPoly {
    poly(Variable::A, &[(2, -1), (-2, -1)])
}

/// `q + q^-1`.
pub fn circle_q() -> LaurentPoly {
    poly(Variable::Q, &[(1, 1), (-1, 1)])
}

fn sum_states(
    d: &LinkDiagram,
    base: LaurentPoly,
    term: impl Fn(usize) -> LaurentPoly,
) -> LaurentPoly {
    let mut total = LaurentPoly::zero(base.var());
    for ((b, loops), count) in state_histogram(d) {
        let t = &term(b) * &base.pow(loops as u32);
        total = &total + &t.scale(&BigInt::from(count));
    }
    total
}

/// `<K> = sum_S A^(#A - #B) delta^||S||`.
pub fn bracket_a(d: &LinkDiagram) -> LaurentPoly {
    let n = d.crossing_count() as i64;
    sum_states(d, delta(), |b| {
        poly(Variable::A, &[(n - 2 * b as i64, 1)])
    })
}

/// `sum_S (-q)^#B (q + q^-1)^||S||`, i.e. `A^-n <K>` with `A^2 = -q^-1`.
pub fn bracket_q(d: &LinkDiagram) -> LaurentPoly {
    sum_states(d, circle_q(), |b| {
        let c = if b % 2 == 0 { 1 } else { -1 };
        poly(Variable::Q, &[(b as i64, c)])
    })
}

/// `J = (-1)^n_minus q^(n_plus - 2 n_minus) <K>_q`.
pub fn jones_j(d: &LinkDiagram) -> LaurentPoly {
    let (p, m) = d.crossing_signs();
    let sign = if m % 2 == 0 { 1 } else { -1 };
    &poly(Variable::Q, &[(p as i64 - 2 * m as i64, sign)]) * &bracket_q(d)
}

/// `f = (-A^3)^(-writhe) <K> / delta`.
pub fn normalized_f(d: &LinkDiagram) -> LaurentPoly {
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let twisted = &poly(Variable::A, &[(-3 * w, sign)]) * &bracket_a(d);
    twisted
        .div_exact(&delta())
        .expect("every bracket is divisible by the circle value")
}

/// `V(t) = f(t^(-1/4))`, exponents counted in quarters of `t`.
pub fn jones_v(d: &LinkDiagram) -> LaurentPoly {
    normalized_f(d).substitute(Variable::QuarterT, -1, &BigInt::from(1))
}
