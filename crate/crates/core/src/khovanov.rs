//! The Khovanov complex of enhanced states.
//!
//! An enhanced state is a bracket state with a label `1` or `x` on each
//! loop. Its gradings are `i = #B`, `lambda = #1 - #x` and `j = i + lambda`.
//! Tensor factors follow the loop order of [`BracketState`]: by smallest arc
//! label, free circles last. Labels are stored as a bit mask with bit `l`
//! set when loop `l` carries `x`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::bracket::{resolve_bits, BracketState};
use crate::error::{Error, Result};
use crate::homology::{BigradedHomology, ChainComplex};
use crate::laurent::Variable;
use crate::link::LinkDiagram;
use crate::matrix::Matrix;
use crate::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    One,
    X,
}

impl Label {
    fn from_bit(bit: bool) -> Self {
        if bit {
            Label::X
        } else {
            Label::One
        }
    }

    fn bit(self) -> u64 {
        match self {
            Label::One => 0,
            Label::X => 1,
        }
    }
}

/// `A = Z[x]/(x^2)` with basis `(1, x)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FrobeniusAlgebra;

impl FrobeniusAlgebra {
    pub fn unit(self) -> Label {
        Label::One
    }

    /// `eps(1) = 0`, `eps(x) = 1`.
    pub fn counit(self, a: Label) -> i64 {
        a.bit() as i64
    }

    pub fn multiply(self, a: Label, b: Label) -> Option<Label> {
        match (a, b) {
            (Label::One, Label::One) => Some(Label::One),
            (Label::X, Label::X) => None,
            _ => Some(Label::X),
        }
    }

    pub fn comultiply(self, a: Label) -> Vec<(Label, Label)> {
        match a {
            Label::One => vec![(Label::One, Label::X), (Label::X, Label::One)],
            Label::X => vec![(Label::X, Label::X)],
        }
    }

    /// `m: A (x) A -> A` on the basis `1(x)1, 1(x)x, x(x)1, x(x)x`.
    pub fn m_matrix(self) -> Matrix<i64> {
        let mut m = Matrix::zeros(2, 4);
        for a in [Label::One, Label::X] {
            for b in [Label::One, Label::X] {
                if let Some(c) = self.multiply(a, b) {
                    m[(c.bit() as usize, (2 * a.bit() + b.bit()) as usize)] += 1;
                }
            }
        }
        m
    }

    pub fn delta_matrix(self) -> Matrix<i64> {
        let mut m = Matrix::zeros(4, 2);
        for a in [Label::One, Label::X] {
            for (b, c) in self.comultiply(a) {
                m[((2 * b.bit() + c.bit()) as usize, a.bit() as usize)] += 1;
            }
        }
        m
    }

    /// `Delta m = (m (x) id)(id (x) Delta) = (id (x) m)(Delta (x) id)`.
    pub fn is_frobenius(self) -> bool {
        let id = Matrix::<i64>::identity(2);
        let (m, d) = (self.m_matrix(), self.delta_matrix());
        let lhs = d.mul(&m);
        let right = m.kron(&id).mul(&id.kron(&d));
        let left = id.kron(&m).mul(&d.kron(&id));
        lhs == right && lhs == left
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedState {
    pub word: u64,
    pub labels: u64,
    pub crossings: usize,
    pub loops: usize,
}

impl EnhancedState {
    pub fn i(&self) -> i64 {
        self.word.count_ones() as i64
    }

    pub fn lambda(&self) -> i64 {
        self.loops as i64 - 2 * self.labels.count_ones() as i64
    }

    pub fn j(&self) -> i64 {
        self.i() + self.lambda()
    }

    pub fn label(&self, l: usize) -> Label {
        Label::from_bit(self.labels >> l & 1 == 1)
    }
}

/// Sign rule for the edge that changes crossing `c` from A to B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `(-1)^(number of B-smoothings at crossings before c)`.
    #[default]
    Standard,
    /// Every sign `+1`; breaks `d^2 = 0`, used as a negative control.
    Unsigned,
}

impl SignConvention {
    pub fn sign(self, word: u64, c: usize) -> i64 {
        match self {
            SignConvention::Standard => {
                if (word & ((1u64 << c) - 1)).count_ones().is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
            SignConvention::Unsigned => 1,
        }
    }
}

/// Resolutions of every word, indexed by the word.
pub(crate) fn all_states(d: &LinkDiagram) -> Vec<BracketState> {
    let n = d.crossing_count();
    assert!(n < 31, "state enumeration limited to 30 crossings");
    (0..1u64 << n)
        .into_par_iter()
        .map(|w| resolve_bits(d, w))
        .collect()
}

/// Image of the labelling `labels` of `src` under the unsigned edge map that
/// changes crossing `c` from A to B, as `(target labels, coefficient)`.
pub(crate) fn edge_map(
    d: &LinkDiagram,
    src: &BracketState,
    tgt: &BracketState,
    c: usize,
    labels: u64,
) -> Vec<(u64, i64)> {
    let alg = FrobeniusAlgebra;
    let [a, b, _, dd] = d.crossings()[c];
    let circles = d.free_circles();
    let (src_arc_loops, tgt_arc_loops) = (src.loop_count() - circles, tgt.loop_count() - circles);
    let (la, lc) = (src.loop_of_arc(a), src.loop_of_arc(dd));
    let (ma, mb) = (tgt.loop_of_arc(a), tgt.loop_of_arc(b));
    let mut base = 0u64;
    let mut seen = vec![false; tgt.loop_count()];
    seen[ma] = true;
    seen[mb] = true;
    for arc in 1..=d.arc_count() {
        let t = tgt.loop_of_arc(arc);
        if !std::mem::replace(&mut seen[t], true) {
            base |= (labels >> src.loop_of_arc(arc) & 1) << t;
        }
    }
    for f in 0..circles {
        base |= (labels >> (src_arc_loops + f) & 1) << (tgt_arc_loops + f);
    }
    let lab = |l: usize| Label::from_bit(labels >> l & 1 == 1);
    if la != lc {
        match alg.multiply(lab(la), lab(lc)) {
            Some(x) => vec![(base | x.bit() << ma, 1)],
            None => vec![],
        }
    } else {
        alg.comultiply(lab(la))
            .into_iter()
            .map(|(x, y)| (base | x.bit() << ma | y.bit() << mb, 1))
            .collect()
    }
}

/// Bigraded cochain complex `C^(i,j)` with `d: C^(i,j) -> C^(i+1,j)`.
#[derive(Debug, Clone)]
pub struct KhovanovComplex {
    pub crossings: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    basis: BTreeMap<(i64, i64), Vec<EnhancedState>>,
    differential: BTreeMap<(i64, i64), Matrix<i64>>,
    edges: usize,
}

/// Enhanced states grouped by `(i, j)`, each group ordered by word, then
/// labels.
pub fn enumerate_enhanced(d: &LinkDiagram) -> BTreeMap<(i64, i64), Vec<EnhancedState>> {
    enhanced_from(d, &all_states(d))
}

fn enhanced_from(d: &LinkDiagram, states: &[BracketState]) -> BTreeMap<(i64, i64), Vec<EnhancedState>> {
    let mut out: BTreeMap<(i64, i64), Vec<EnhancedState>> = BTreeMap::new();
    for s in states {
        for labels in 0..1u64 << s.loop_count() {
            let e = EnhancedState {
                word: s.bits(),
                labels,
                crossings: d.crossing_count(),
                loops: s.loop_count(),
            };
            out.entry((e.i(), e.j())).or_default().push(e);
        }
    }
    out
}

impl KhovanovComplex {
    pub fn build(d: &LinkDiagram) -> Result<Self> {
        Self::build_with(d, SignConvention::Standard)
    }

    /// Assembles the complex and verifies `d^2 = 0` in every bidegree.
    pub fn build_with(d: &LinkDiagram, signs: SignConvention) -> Result<Self> {
        let n = d.crossing_count();
        let states = all_states(d);
        let basis = enhanced_from(d, &states);
        let index: HashMap<(u64, u64), usize> = basis
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(k, e)| ((e.word, e.labels), k)))
            .collect();
        let blocks: Vec<((i64, i64), Matrix<i64>, usize)> = basis
            .par_iter()
            .map(|(&(i, j), src)| {
                let rows = basis.get(&(i + 1, j)).map_or(0, Vec::len);
                let mut m = Matrix::zeros(rows, src.len());
                let mut edges = 0;
                for (col, e) in src.iter().enumerate() {
                    for c in (0..n).filter(|c| e.word >> c & 1 == 0) {
                        let w2 = e.word | 1 << c;
                        let sign = signs.sign(e.word, c);
                        for (l2, coeff) in edge_map(d, &states[e.word as usize], &states[w2 as usize], c, e.labels) {
                            let t = EnhancedState {
                                word: w2,
                                labels: l2,
                                crossings: n,
                                loops: states[w2 as usize].loop_count(),
                            };
                            if t.j() != j {
                                return Err(Error::NonZeroSquare(format!(
                                    "edge from ({i},{j}) lands in quantum degree {}",
                                    t.j()
                                )));
                            }
                            m[(index[&(w2, l2)], col)] += sign * coeff;
                            edges += 1;
                        }
                    }
                }
                Ok(((i, j), m, edges))
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = blocks.iter().map(|b| b.2).sum();
        let differential: BTreeMap<(i64, i64), Matrix<i64>> =
            blocks.into_iter().map(|(k, m, _)| (k, m)).collect();
        let (n_plus, n_minus) = d.crossing_signs();
        let cx = Self {
            crossings: n,
            n_plus,
            n_minus,
            basis,
            differential,
            edges,
        };
        cx.check_square()?;
        Ok(cx)
    }

    fn check_square(&self) -> Result<()> {
        let bad: Vec<(i64, i64)> = self
            .differential
            .par_iter()
            .filter_map(|(&(i, j), m)| {
                let next = self.differential.get(&(i + 1, j))?;
                let prod = next.to_big().mul(&m.to_big());
                (!prod.is_zero()).then_some((i, j))
            })
            .collect();
        match bad.first() {
            None => Ok(()),
            Some((i, j)) => Err(Error::NonZeroSquare(format!(
                "Khovanov differential at ({i},{j})"
            ))),
        }
    }

    pub fn basis(&self) -> &BTreeMap<(i64, i64), Vec<EnhancedState>> {
        &self.basis
    }

    pub fn dim(&self, i: i64, j: i64) -> usize {
        self.basis.get(&(i, j)).map_or(0, Vec::len)
    }

    /// `C^(i,j) -> C^(i+1,j)`.
    pub fn differential(&self, i: i64, j: i64) -> Matrix<i64> {
        self.differential
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(i + 1, j), self.dim(i, j)))
    }

    /// Number of nonzero structure-constant terms assembled.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn quantum_degrees(&self) -> Vec<i64> {
        let mut js: Vec<i64> = self.basis.keys().map(|k| k.1).collect();
        js.sort_unstable();
        js.dedup();
        js
    }

    /// The strand `C^(*,j)` as a chain complex in degree `-i`.
    pub fn strand(&self, j: i64) -> ChainComplex<i64> {
        let n = self.crossings as i64;
        let boundaries = (0..=n).rev().map(|i| self.differential(i, j)).collect();
        ChainComplex::new(-n, boundaries).expect("shapes agree by construction")
    }

    /// `sum (-1)^i q^j dim C^(i,j)`.
    pub fn graded_euler(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            Variable::Q,
            self.basis.iter().map(|(&(i, j), v)| {
                let s = if i % 2 == 0 { 1 } else { -1 };
                (j, BigInt::from(s * v.len() as i64))
            }),
        )
    }

    /// Homology in every bidegree that carries chains, unshifted.
    pub fn homology(&self) -> Result<BigradedHomology> {
        let per_j = self
            .quantum_degrees()
            .into_par_iter()
            .map(|j| Ok((j, self.strand(j).homology()?)))
            .collect::<Result<Vec<_>>>()?;
        let mut groups = BTreeMap::new();
        for (j, h) in per_j {
            for (deg, g) in h {
                let i = -deg;
                if self.dim(i, j) > 0 {
                    groups.insert((i, j), g);
                }
            }
        }
        Ok(BigradedHomology {
            n_plus: self.n_plus,
            n_minus: self.n_minus,
            groups,
        })
    }
}

/// Khovanov homology of `d` by the direct route.
pub fn khovanov_homology(d: &LinkDiagram) -> Result<BigradedHomology> {
    KhovanovComplex::build(d)?.homology()
}
