//! Words in the face and degeneracy operators, reduced with the simplicial
//! identities to `s_{i_t} ... s_{i_1} d_{j_1} ... d_{j_s}` with
//! `i_t > ... > i_1` and `j_1 < ... < j_s`.
//!
//! Words are written left to right as composites, so `[D(i), S(j)]` is
//! `d_i s_j` and applies `s_j` first.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    D(usize),
    S(usize),
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::D(i) => write!(f, "d{i}"),
            Op::S(i) => write!(f, "s{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Op>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `other` as a composite: `other` applies first.
    pub fn then(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Net change in dimension.
    pub fn degree(&self) -> i64 {
        self.0
            .iter()
            .map(|op| match op {
                Op::D(_) => -1,
                Op::S(_) => 1,
            })
            .sum()
    }

    /// Operators in application order (rightmost first).
    pub fn applied(&self) -> impl Iterator<Item = Op> + '_ {
        self.0.iter().rev().copied()
    }

    pub fn normalize(&self) -> Word {
        let mut w = self.0.clone();
        'outer: loop {
            for k in 0..w.len().saturating_sub(1) {
                let rewrite: Option<Vec<Op>> = match (w[k], w[k + 1]) {
                    (Op::D(i), Op::S(j)) if i < j => Some(vec![Op::S(j - 1), Op::D(i)]),
                    (Op::D(i), Op::S(j)) if i == j || i == j + 1 => Some(vec![]),
                    (Op::D(i), Op::S(j)) => Some(vec![Op::S(j), Op::D(i - 1)]),
                    (Op::S(i), Op::S(j)) if i <= j => Some(vec![Op::S(j + 1), Op::S(i)]),
                    (Op::D(i), Op::D(j)) if i >= j => Some(vec![Op::D(j), Op::D(i + 1)]),
                    _ => None,
                };
                if let Some(r) = rewrite {
                    w.splice(k..k + 2, r);
                    continue 'outer;
                }
            }
            return Word(w);
        }
    }

    pub fn is_normal(&self) -> bool {
        let split = self.0.iter().position(|op| matches!(op, Op::D(_))).unwrap_or(self.0.len());
        let (s, d) = self.0.split_at(split);
        let s_ok = s.windows(2).all(|p| matches!(p, [Op::S(a), Op::S(b)] if a > b));
        let d_ok = d.iter().all(|op| matches!(op, Op::D(_)))
            && d.windows(2).all(|p| matches!(p, [Op::D(a), Op::D(b)] if a < b));
        s_ok && d_ok
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.0.iter().map(Op::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Integer combination of operator words applied to named atoms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicChain {
    terms: BTreeMap<(Word, String), i64>,
}

impl SymbolicChain {
    pub fn atom(name: &str) -> Self {
        Self::term(1, Word::identity(), name)
    }

    pub fn term(coeff: i64, word: Word, atom: &str) -> Self {
        let mut c = Self::default();
        c.add_term(coeff, word, atom);
        c
    }

    pub fn add_term(&mut self, coeff: i64, word: Word, atom: &str) {
        let key = (word.normalize(), atom.to_string());
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self, scale: i64) -> Self {
        let mut out = self.clone();
        for ((w, a), c) in &other.terms {
            out.add_term(scale * c, w.clone(), a);
        }
        out
    }

    /// Applies `op` on the left of every term.
    pub fn apply(&self, op: Op) -> Self {
        let mut out = Self::default();
        for ((w, a), c) in &self.terms {
            out.add_term(*c, Word(vec![op]).then(w), a);
        }
        out
    }

    /// `sum_i (-1)^i d_i` in dimension `n`.
    pub fn boundary(&self, n: usize) -> Self {
        let mut out = Self::default();
        for i in 0..=n {
            out = out.add(&self.apply(Op::D(i)), if i % 2 == 0 { 1 } else { -1 });
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &str, i64)> {
        self.terms.iter().map(|((w, a), c)| (w, a.as_str(), *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for SymbolicChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((w, a), c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if k == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            if w.is_identity() {
                write!(f, "{a}")?;
            } else {
                let ops: Vec<String> = w.0.iter().map(Op::to_string).collect();
                write!(f, "{}{a}", ops.join(""))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(ops: &[Op]) -> Word {
        Word(ops.to_vec())
    }

    #[test]
    fn basic_rewrites() {
        use Op::*;
        assert_eq!(w(&[D(1), S(1)]).normalize(), Word::identity());
        assert_eq!(w(&[D(2), S(1)]).normalize(), Word::identity());
        assert_eq!(w(&[D(0), S(1)]).normalize(), w(&[S(0), D(0)]));
        assert_eq!(w(&[D(2), S(0)]).normalize(), w(&[S(0), D(1)]));
        assert_eq!(w(&[S(0), S(0)]).normalize(), w(&[S(1), S(0)]));
        assert_eq!(w(&[D(1), D(0)]).normalize(), w(&[D(0), D(2)]));
    }

    #[test]
    fn degenerate_square_boundary() {
        use Op::*;
        let x = SymbolicChain::term(1, w(&[S(0), S(0)]), "x");
        assert_eq!(x.boundary(2), SymbolicChain::term(1, w(&[S(0)]), "x"));
    }

    /// Evaluates a word on a monotone sequence, the standard simplex model.
    fn eval(word: &Word, seq: &[usize]) -> Option<Vec<usize>> {
        let mut v = seq.to_vec();
        for op in word.applied() {
            match op {
                Op::D(i) if i < v.len() && v.len() > 1 => {
                    v.remove(i);
                }
                Op::S(i) if i < v.len() => {
                    let x = v[i];
                    v.insert(i, x);
                }
                _ => return None,
            }
        }
        Some(v)
    }

    proptest! {
        #[test]
        fn normal_form_acts_like_the_word(
            ops in prop::collection::vec((any::<bool>(), 0usize..4), 0..7),
            seq in prop::collection::vec(0usize..4, 4..6),
        ) {
            let mut seq = seq;
            seq.sort();
            let word = Word(ops.into_iter().map(|(d, i)| if d { Op::D(i) } else { Op::S(i) }).collect());
            let n = word.normalize();
            prop_assert!(n.is_normal());
            prop_assert_eq!(n.normalize(), n.clone());
            if let Some(v) = eval(&word, &seq) {
                prop_assert_eq!(eval(&n, &seq), Some(v));
            }
        }
    }
}
