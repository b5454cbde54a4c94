//! Truncated simplicial sets and simplicial modules.
//!
//! Every object stores levels `0..=N`. Faces are stored on levels `1..=N`
//! and degeneracies on levels `0..N`, so identities are checked wherever
//! both sides land inside the truncation. Homology read off a truncated
//! object is reliable in degrees below `N`.

mod kan;
pub(crate) mod module;
pub mod word;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::ChainComplex;
use crate::matrix::Matrix;
use crate::scalar::sign;

pub use kan::{kan_check, KanReport, DEFAULT_HORN_BOUND};
pub use module::{
    random_module, FinSimplicialModule, HomologousWitness,
};
pub use word::{Op, SymbolicChain, Word};

/// One failed instance of a simplicial identity.
///
/// Families are numbered as usual:
/// 1. `d_i d_j = d_{j-1} d_i` for `i < j`;
/// 2. `s_i s_j = s_{j+1} s_i` for `i <= j`;
/// 3. `d_i s_j = s_{j-1} d_i` for `i < j`;
/// 4. `d_j s_j = d_{j+1} s_j = id`;
/// 5. `d_i s_j = s_j d_{i-1}` for `i > j + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub family: usize,
    pub level: usize,
    pub i: usize,
    pub j: usize,
    pub simplex: String,
    pub lhs: String,
    pub rhs: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "family {} at level {} (i = {}, j = {}) on {}: {} != {}",
            self.family, self.level, self.i, self.j, self.simplex, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: usize,
    /// First violation found in each family, by family number minus one.
    pub first: [Option<Violation>; 5],
    pub failures: [usize; 5],
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.iter().all(|&f| f == 0)
    }

    pub fn violated_families(&self) -> Vec<usize> {
        (1..=5).filter(|f| self.failures[f - 1] > 0).collect()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.first.iter().flatten().next()
    }

    fn merge(mut self, other: Self) -> Self {
        self.checks += other.checks;
        for f in 0..5 {
            self.failures[f] += other.failures[f];
            if self.first[f].is_none() {
                self.first[f] = other.first[f].clone();
            }
        }
        self
    }
}

/// Every index instance `(family, i, j, lhs, rhs)` of the identities acting
/// on level `n`, keeping only those inside truncation `top`.
pub(crate) fn identity_instances(n: usize, top: usize) -> Vec<(usize, usize, usize, Word, Word)> {
    use Op::{D, S};
    let mut out = Vec::new();
    if n >= 2 {
        for j in 1..=n {
            for i in 0..j {
                out.push((1, i, j, Word(vec![D(i), D(j)]), Word(vec![D(j - 1), D(i)])));
            }
        }
    }
    if n + 2 <= top {
        for j in 0..=n {
            for i in 0..=j {
                out.push((2, i, j, Word(vec![S(i), S(j)]), Word(vec![S(j + 1), S(i)])));
            }
        }
    }
    if n < top {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = Word(vec![D(i), S(j)]);
                if i < j {
                    out.push((3, i, j, lhs, Word(vec![S(j - 1), D(i)])));
                } else if i == j || i == j + 1 {
                    out.push((4, i, j, lhs, Word::identity()));
                } else if n >= 1 {
                    out.push((5, i, j, lhs, Word(vec![S(j), D(i - 1)])));
                }
            }
        }
    }
    out
}

/// Runs every identity instance, comparing values produced by `eval`.
pub(crate) fn check_with<V, F>(top: usize, faces_only: bool, size: impl Fn(usize) -> usize + Sync, eval: F, show: impl Fn(usize, &V) -> String + Sync, name: impl Fn(usize, usize) -> String + Sync) -> IdentityReport
where
    V: PartialEq + Send,
    F: Fn(&Word, usize, usize) -> V + Sync,
{
    (0..=top)
        .into_par_iter()
        .map(|n| {
            let mut rep = IdentityReport::default();
            for (family, i, j, lhs, rhs) in identity_instances(n, top) {
                if faces_only && family != 1 {
                    continue;
                }
                let out_level = (n as i64 + lhs.degree()) as usize;
                for x in 0..size(n) {
                    rep.checks += 1;
                    let l = eval(&lhs, n, x);
                    let r = eval(&rhs, n, x);
                    if l != r {
                        rep.failures[family - 1] += 1;
                        if rep.first[family - 1].is_none() {
                            rep.first[family - 1] = Some(Violation {
                                family,
                                level: n,
                                i,
                                j,
                                simplex: name(n, x),
                                lhs: format!("{lhs} = {}", show(out_level, &l)),
                                rhs: format!("{rhs} = {}", show(out_level, &r)),
                            });
                        }
                    }
                }
            }
            rep
        })
        .reduce(IdentityReport::default, IdentityReport::merge)
}

/// Eilenberg-Zilber decomposition `x = s_{i_t} ... s_{i_1} g` with `g`
/// nondegenerate and `i_t > ... > i_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    /// `[i_t, ..., i_1]`.
    pub degeneracies: Vec<usize>,
    pub base_level: usize,
    pub base: usize,
}

/// Face and degeneracy tables of a truncated simplicial set.
/// A face or degeneracy acting on elements, `(element, index) -> element`.
pub type Operator<'a, E> = dyn Fn(&E, usize) -> E + 'a;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSimplicialSet {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Option<Vec<Vec<Vec<usize>>>>,
}

impl FinSimplicialSet {
    /// `faces[n][i][x]` for `n >= 1` (`faces[0]` empty) and, when present,
    /// `degeneracies[n][i][x]` for `n < N`.
    pub fn from_tables(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Option<Vec<Vec<Vec<usize>>>>,
    ) -> Result<Self> {
        let top = names.len().checked_sub(1).ok_or_else(|| Error::Range("no levels".into()))?;
        let bad = |what: &str| Err(Error::Range(format!("malformed {what} table")));
        if faces.len() != top + 1 || !faces[0].is_empty() {
            return bad("face");
        }
        for n in 1..=top {
            if faces[n].len() != n + 1
                || faces[n].iter().any(|f| f.len() != names[n].len() || f.iter().any(|&y| y >= names[n - 1].len()))
            {
                return bad("face");
            }
        }
        if let Some(deg) = &degeneracies {
            if deg.len() != top {
                return bad("degeneracy");
            }
            for n in 0..top {
                if deg[n].len() != n + 1
                    || deg[n].iter().any(|s| s.len() != names[n].len() || s.iter().any(|&y| y >= names[n + 1].len()))
                {
                    return bad("degeneracy");
                }
            }
        }
        Ok(Self {
            names,
            faces,
            degeneracies,
        })
    }

    /// Builds from explicit elements per level and the operator actions on
    /// them. Elements are sorted and deduplicated; operator images must be
    /// elements of the adjacent level.
    #[allow(clippy::needless_range_loop)]
    pub fn from_elements<E: Ord + Clone>(
        levels: Vec<Vec<E>>,
        face: impl Fn(&E, usize) -> E,
        degeneracy: Option<&Operator<'_, E>>,
        name: impl Fn(&E) -> String,
    ) -> Result<Self> {
        let levels: Vec<Vec<E>> = levels
            .into_iter()
            .map(|l| l.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        let index: Vec<BTreeMap<E, usize>> = levels
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect())
            .collect();
        let top = levels.len().checked_sub(1).ok_or_else(|| Error::Range("no levels".into()))?;
        let find = |n: usize, e: &E| {
            index[n]
                .get(e)
                .copied()
                .ok_or_else(|| Error::Range(format!("operator image {} missing from level {n}", name(e))))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let mut per = Vec::new();
            for i in 0..=n {
                per.push(levels[n].iter().map(|e| find(n - 1, &face(e, i))).collect::<Result<Vec<_>>>()?);
            }
            faces.push(per);
        }
        let degeneracies = match degeneracy {
            Some(s) => {
                let mut all = Vec::new();
                for n in 0..top {
                    let mut per = Vec::new();
                    for i in 0..=n {
                        per.push(levels[n].iter().map(|e| find(n + 1, &s(e, i))).collect::<Result<Vec<_>>>()?);
                    }
                    all.push(per);
                }
                Some(all)
            }
            None => None,
        };
        let names = levels.iter().map(|l| l.iter().map(&name).collect()).collect();
        Self::from_tables(names, faces, degeneracies)
    }

    pub fn truncation(&self) -> usize {
        self.names.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, Vec::len)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn name(&self, n: usize, x: usize) -> &str {
        &self.names[n][x]
    }

    pub fn names(&self, n: usize) -> &[String] {
        &self.names[n]
    }

    pub fn find(&self, n: usize, name: &str) -> Option<usize> {
        self.names.get(n)?.iter().position(|s| s == name)
    }

    pub fn has_degeneracies(&self) -> bool {
        self.degeneracies.is_some()
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    /// `s_i x` for `x` in level `n < N`; `None` without degeneracies.
    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> Option<usize> {
        self.degeneracies.as_ref().map(|d| d[n][i][x])
    }

    /// Replaces one degeneracy value, for building negative controls.
    pub fn with_degeneracy(mut self, n: usize, i: usize, x: usize, target: usize) -> Result<Self> {
        let top = self.truncation();
        let deg = self
            .degeneracies
            .as_mut()
            .ok_or_else(|| Error::NotApplicable("no degeneracies".into()))?;
        if n >= top || i > n || x >= deg[n][i].len() || target >= self.names[n + 1].len() {
            return Err(Error::Range(format!("s_{i} on level {n}")));
        }
        deg[n][i][x] = target;
        Ok(self)
    }

    /// Applies a word to `x` in level `n`; `None` when it leaves the
    /// truncation or needs missing degeneracies.
    pub fn apply(&self, word: &Word, n: usize, x: usize) -> Option<(usize, usize)> {
        let (mut n, mut x) = (n, x);
        for op in word.applied() {
            match op {
                Op::D(i) if n >= 1 && i <= n => {
                    x = self.faces[n][i][x];
                    n -= 1;
                }
                Op::S(i) if n < self.truncation() && i <= n => {
                    x = self.degeneracy(n, i, x)?;
                    n += 1;
                }
                _ => return None,
            }
        }
        Some((n, x))
    }

    /// Checks all five identity families. Without degeneracies only the
    /// face family applies.
    pub fn check_identities(&self) -> IdentityReport {
        check_with(
            self.truncation(),
            !self.has_degeneracies(),
            |n| self.size(n),
            |w, n, x| self.apply(w, n, x),
            |_, v| match v {
                Some((m, y)) => self.names[*m][*y].clone(),
                None => "undefined".into(),
            },
            |n, x| self.names[n][x].clone(),
        )
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        n > 0 && (0..n).any(|i| self.degeneracy(n - 1, i, self.faces[n][i][x]) == Some(x))
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.size(n)).filter(|&x| !self.is_degenerate(n, x)).collect()
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.truncation()).map(|n| self.nondegenerate(n).len()).collect()
    }

    /// Peels off the largest `i` with `x = s_i d_i x` until nothing is left.
    pub fn normal_form(&self, n: usize, x: usize) -> NormalForm {
        let (mut m, mut y) = (n, x);
        let mut degeneracies = Vec::new();
        while let Some(i) = (0..m).rev().find(|&i| m > 0 && self.degeneracy(m - 1, i, self.faces[m][i][y]) == Some(y)) {
            degeneracies.push(i);
            y = self.faces[m][i][y];
            m -= 1;
        }
        NormalForm {
            degeneracies,
            base_level: m,
            base: y,
        }
    }

    pub fn recompose(&self, nf: &NormalForm) -> Option<usize> {
        let word = Word(nf.degeneracies.iter().map(|&i| Op::S(i)).collect());
        self.apply(&word, nf.base_level, nf.base).map(|(_, x)| x)
    }

    /// `C_n = Z[X_n]` with `sum_k (-1)^k d_k`.
    pub fn chain_complex(&self) -> ChainComplex<i64> {
        let ranks = self.sizes();
        let maps = (1..=self.truncation())
            .map(|n| {
                let mut m = Matrix::zeros(ranks[n - 1], ranks[n]);
                for i in 0..=n {
                    for x in 0..ranks[n] {
                        m[(self.faces[n][i][x], x)] += sign::<i64>(i);
                    }
                }
                m
            })
            .collect();
        ChainComplex::from_maps(0, &ranks, maps).expect("shapes are consistent by construction")
    }

    /// Level-by-level listing of simplices with their face and degeneracy
    /// images.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for n in 0..=self.truncation() {
            writeln!(out, "level {n}: {} simplices", self.size(n)).unwrap();
            for x in 0..self.size(n) {
                write!(out, "  {}", self.names[n][x]).unwrap();
                if n > 0 {
                    let f: Vec<&str> = (0..=n).map(|i| self.names[n - 1][self.faces[n][i][x]].as_str()).collect();
                    write!(out, " d: {}", f.join(" ")).unwrap();
                }
                if n < self.truncation() {
                    if let Some(d) = &self.degeneracies {
                        let s: Vec<&str> = (0..=n).map(|i| self.names[n + 1][d[n][i][x]].as_str()).collect();
                        write!(out, " s: {}", s.join(" ")).unwrap();
                    }
                }
                if self.has_degeneracies() && !self.is_degenerate(n, x) {
                    write!(out, " *").unwrap();
                }
                out.push('\n');
            }
        }
        out
    }
}

pub(crate) fn seq_name(v: &[usize]) -> String {
    let sep = if v.iter().any(|&x| x > 9) { "," } else { "" };
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("⟨{}⟩", parts.join(sep))
}

/// Weakly increasing sequences of length `m + 1` in `0..=n`.
pub(crate) fn monotone(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn go(n: usize, len: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(n, len, v, cur, out);
            cur.pop();
        }
    }
    go(n, m + 1, 0, &mut cur, &mut out);
    out
}

fn delete(v: &[usize], i: usize) -> Vec<usize> {
    let mut w = v.to_vec();
    w.remove(i);
    w
}

fn repeat(v: &[usize], i: usize) -> Vec<usize> {
    let mut w = v.to_vec();
    w.insert(i, v[i]);
    w
}

/// Simplices of `Delta[n]` whose vertex sets lie inside one of `facets`.
pub fn generated_subset(n: usize, facets: &[Vec<usize>], truncation: usize) -> Result<FinSimplicialSet> {
    if facets.iter().flatten().any(|&v| v > n) {
        return Err(Error::Range(format!("vertex outside [{n}]")));
    }
    let sets: Vec<BTreeSet<usize>> = facets.iter().map(|f| f.iter().copied().collect()).collect();
    let levels = (0..=truncation)
        .map(|m| {
            monotone(n, m)
                .into_iter()
                .filter(|v| sets.iter().any(|s| v.iter().all(|x| s.contains(x))))
                .collect()
        })
        .collect();
    FinSimplicialSet::from_elements(levels, |v: &Vec<usize>, i| delete(v, i), Some(&|v: &Vec<usize>, i| repeat(v, i)), |v| seq_name(v))
}

/// `Delta[n]` truncated at `truncation`: weakly increasing sequences.
pub fn standard_simplex(n: usize, truncation: usize) -> Result<FinSimplicialSet> {
    generated_subset(n, &[(0..=n).collect()], truncation)
}

/// `nabla[n]`: strictly increasing sequences and no degeneracies.
pub fn presimplex(n: usize) -> Result<FinSimplicialSet> {
    let levels = (0..=n)
        .map(|m| monotone(n, m).into_iter().filter(|v| v.windows(2).all(|p| p[0] < p[1])).collect())
        .collect();
    FinSimplicialSet::from_elements(levels, |v: &Vec<usize>, i| delete(v, i), None, |v| seq_name(v))
}

/// The horn `Lambda^k[n]`, generated by the faces `d_i <0..n>` for `i != k`.
pub fn horn(n: usize, k: usize, truncation: usize) -> Result<FinSimplicialSet> {
    if k > n || n == 0 {
        return Err(Error::Range(format!("horn {k} of Delta[{n}]")));
    }
    let facets: Vec<Vec<usize>> = (0..=n).filter(|&i| i != k).map(|i| (0..=n).filter(|&v| v != i).collect()).collect();
    generated_subset(n, &facets, truncation)
}

/// `Delta[n] / boundary`: the sequences hitting every vertex, plus one
/// base simplex per level.
pub fn sphere(n: usize, truncation: usize) -> Result<FinSimplicialSet> {
    let onto = |v: &Vec<usize>| (0..=n).all(|x| v.contains(&x));
    let levels = (0..=truncation)
        .map(|m| {
            let mut l: Vec<Option<Vec<usize>>> = monotone(n, m).into_iter().filter(|v| onto(v)).map(Some).collect();
            l.push(None);
            l
        })
        .collect();
    let collapse = move |v: Vec<usize>| if onto(&v) { Some(v) } else { None };
    FinSimplicialSet::from_elements(
        levels,
        |e: &Option<Vec<usize>>, i| e.as_ref().and_then(|v| collapse(delete(v, i))),
        Some(&|e: &Option<Vec<usize>>, i| e.as_ref().map(|v| repeat(v, i))),
        |e| e.as_ref().map_or("*".to_string(), |v| seq_name(v)),
    )
}

/// Level-wise product. Simplex `(x, y)` in level `n` has index
/// `x * |Y_n| + y`.
pub fn product(x: &FinSimplicialSet, y: &FinSimplicialSet) -> Result<FinSimplicialSet> {
    if x.truncation() != y.truncation() {
        return Err(Error::LengthMismatch {
            expected: x.truncation(),
            got: y.truncation(),
        });
    }
    if x.has_degeneracies() != y.has_degeneracies() {
        return Err(Error::NotApplicable("one factor lacks degeneracies".into()));
    }
    let top = x.truncation();
    let levels: Vec<Vec<(usize, usize)>> = (0..=top)
        .map(|n| (0..x.size(n)).flat_map(|a| (0..y.size(n)).map(move |b| (a, b))).collect())
        .collect();
    // Operators act on (level, x, y); encode the level so the closures know it.
    let tagged: Vec<Vec<(usize, usize, usize)>> =
        levels.iter().enumerate().map(|(n, l)| l.iter().map(|&(a, b)| (n, a, b)).collect()).collect();
    let degen = |e: &(usize, usize, usize), i: usize| {
        let (n, a, b) = *e;
        (n + 1, x.degeneracy(n, i, a).unwrap(), y.degeneracy(n, i, b).unwrap())
    };
    FinSimplicialSet::from_elements(
        tagged,
        |&(n, a, b), i| (n - 1, x.face(n, i, a), y.face(n, i, b)),
        x.has_degeneracies().then_some(&degen as &dyn Fn(&(usize, usize, usize), usize) -> (usize, usize, usize)),
        |&(n, a, b)| format!("({},{})", x.name(n, a), y.name(n, b)),
    )
}

/// The nerve `BG` of a group given by its multiplication table, with
/// identity element found from the table.
pub fn classifying_space(table: &[Vec<usize>], truncation: usize) -> Result<FinSimplicialSet> {
    let g = table.len();
    if g == 0 || table.iter().any(|r| r.len() != g || r.iter().any(|&v| v >= g)) {
        return Err(Error::Category("multiplication table must be square over 0..|G|".into()));
    }
    for a in 0..g {
        for b in 0..g {
            for c in 0..g {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::Category(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
    }
    let e = (0..g)
        .find(|&e| (0..g).all(|a| table[e][a] == a && table[a][e] == a))
        .ok_or_else(|| Error::Category("no identity element".into()))?;
    if (0..g).any(|a| !(0..g).any(|b| table[a][b] == e)) {
        return Err(Error::Category("some element has no inverse".into()));
    }
    let mut levels: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    for n in 1..=truncation {
        let prev = &levels[n - 1];
        levels.push(prev.iter().flat_map(|t| (0..g).map(move |x| [t.clone(), vec![x]].concat())).collect());
    }
    FinSimplicialSet::from_elements(
        levels,
        |t: &Vec<usize>, i| {
            let n = t.len();
            if i == 0 {
                t[1..].to_vec()
            } else if i == n {
                t[..n - 1].to_vec()
            } else {
                let mut v = t[..i - 1].to_vec();
                v.push(table[t[i - 1]][t[i]]);
                v.extend_from_slice(&t[i + 1..]);
                v
            }
        },
        Some(&|t: &Vec<usize>, i| {
            let mut v = t.clone();
            v.insert(i, e);
            v
        }),
        |t| {
            let parts: Vec<String> = t.iter().map(usize::to_string).collect();
            format!("({})", parts.join(","))
        },
    )
}

/// Multiplication table of the cyclic group of order `m`.
pub fn cyclic_group(m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::HomologyGroup;
    use proptest::prelude::*;

    fn names(x: &FinSimplicialSet, n: usize, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| x.name(n, i).to_string()).collect()
    }

    #[test]
    fn small_simplices() {
        let d1 = standard_simplex(1, 3).unwrap();
        assert_eq!(d1.names(1), ["⟨00⟩", "⟨01⟩", "⟨11⟩"]);
        assert_eq!(d1.names(2), ["⟨000⟩", "⟨001⟩", "⟨011⟩", "⟨111⟩"]);
        let d0 = standard_simplex(0, 4).unwrap();
        for k in 0..=4 {
            assert_eq!(d0.size(k), 1);
            assert_eq!(d0.name(k, 0), format!("⟨{}⟩", "0".repeat(k + 1)));
            assert_eq!(d0.is_degenerate(k, 0), k > 0);
        }
    }

    #[test]
    fn delta_two_passes_identities() {
        let d2 = standard_simplex(2, 4).unwrap();
        let rep = d2.check_identities();
        assert!(rep.ok(), "{:?}", rep.first_violation());
        assert!(rep.checks > 0);
        let w = Word(vec![Op::D(1), Op::S(1)]);
        for n in 1..4 {
            for x in 0..d2.size(n) {
                assert_eq!(d2.apply(&w, n, x), Some((n, x)));
            }
        }
    }

    #[test]
    fn corrupted_degeneracy_is_reported() {
        let d1 = standard_simplex(1, 2).unwrap();
        let one = d1.find(0, "⟨1⟩").unwrap();
        let wrong = d1.find(1, "⟨01⟩").unwrap();
        let bad = d1.with_degeneracy(0, 0, one, wrong).unwrap();
        let rep = bad.check_identities();
        assert!(!rep.ok());
        assert!(rep.violated_families().contains(&3));
        let v = rep.first[2].as_ref().unwrap();
        assert_eq!((v.i, v.j, v.level), (0, 1, 1));
    }

    #[test]
    fn horn_cells() {
        let h = horn(2, 1, 3).unwrap();
        let cells: Vec<String> = (0..=2).flat_map(|n| names(&h, n, &h.nondegenerate(n))).collect();
        assert_eq!(cells, ["⟨0⟩", "⟨1⟩", "⟨2⟩", "⟨01⟩", "⟨12⟩"]);
        assert!(h.check_identities().ok());
        assert!(horn(2, 3, 3).is_err());
    }

    #[test]
    fn chain_boundaries() {
        let d2 = standard_simplex(2, 2).unwrap();
        let c = d2.chain_complex();
        c.check().unwrap();
        let top = d2.find(2, "⟨012⟩").unwrap();
        let col = c.boundary(2).column(top);
        let mut got: Vec<(String, i64)> =
            col.iter().enumerate().filter(|(_, v)| **v != 0).map(|(k, v)| (d2.name(1, k).to_string(), *v)).collect();
        got.sort();
        assert_eq!(got, [("⟨01⟩".to_string(), 1), ("⟨02⟩".to_string(), -1), ("⟨12⟩".to_string(), 1)]);
        let d3 = standard_simplex(3, 3).unwrap().chain_complex();
        assert!(d3.boundary(2).mul(&d3.boundary(3)).is_zero());
    }

    #[test]
    fn simplices_are_acyclic() {
        for n in 0..=3 {
            let h = standard_simplex(n, 4).unwrap().chain_complex().homology().unwrap();
            assert_eq!(h[&0], HomologyGroup::free(1));
            for k in 1..4 {
                assert!(h[&k].is_zero(), "Delta[{n}] H_{k}");
            }
        }
    }

    #[test]
    fn sphere_homology() {
        let s = sphere(2, 4).unwrap();
        assert!(s.check_identities().ok());
        let h = s.chain_complex().homology().unwrap();
        assert_eq!(h[&0], HomologyGroup::free(1));
        assert!(h[&1].is_zero());
        assert_eq!(h[&2], HomologyGroup::free(1));
        assert!(h[&3].is_zero());
    }

    #[test]
    fn prisms() {
        let d1 = standard_simplex(1, 2).unwrap();
        let sq = product(&d1, &d1).unwrap();
        assert_eq!(sq.nondegenerate(2).len(), 2);
        for n in 0..=3 {
            let top = n + 1;
            let p = product(&standard_simplex(n, top).unwrap(), &standard_simplex(1, top).unwrap()).unwrap();
            assert_eq!(p.nondegenerate(top).len(), n + 1, "n = {n}");
            assert!(p.check_identities().ok());
        }
    }

    #[test]
    fn projections_are_simplicial() {
        let a = standard_simplex(2, 3).unwrap();
        let b = horn(2, 0, 3).unwrap();
        let p = product(&a, &b).unwrap();
        for n in 0..=3 {
            for e in 0..p.size(n) {
                let (x, y) = (e / b.size(n), e % b.size(n));
                for i in 0..=n {
                    if n > 0 {
                        let f = p.face(n, i, e);
                        assert_eq!((f / b.size(n - 1), f % b.size(n - 1)), (a.face(n, i, x), b.face(n, i, y)));
                    }
                    if n < 3 {
                        let s = p.degeneracy(n, i, e).unwrap();
                        let want = (a.degeneracy(n, i, x).unwrap(), b.degeneracy(n, i, y).unwrap());
                        assert_eq!((s / b.size(n + 1), s % b.size(n + 1)), want);
                    }
                }
            }
        }
    }

    #[test]
    fn classifying_spaces() {
        let bz2 = classifying_space(&cyclic_group(2), 4).unwrap();
        assert_eq!(bz2.sizes(), [1, 2, 4, 8, 16]);
        assert!(bz2.check_identities().ok());
        let h = bz2.chain_complex().homology().unwrap();
        assert_eq!(h[&1].to_string(), "Z/2");
        assert!(h[&2].is_zero());
        let trivial = classifying_space(&cyclic_group(1), 4).unwrap();
        assert_eq!(trivial.sizes(), [1; 5]);
        let ht = trivial.chain_complex().homology().unwrap();
        assert!((1..4).all(|k| ht[&k].is_zero()));
        let bad = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 1, 0]];
        assert!(matches!(classifying_space(&bad, 2), Err(Error::Category(_))));
    }

    #[test]
    fn presimplex_has_no_degeneracies() {
        let p = presimplex(2).unwrap();
        assert_eq!(p.sizes(), [3, 3, 1]);
        assert!(!p.has_degeneracies());
        assert!(p.check_identities().ok());
    }

    #[test]
    fn dump_lists_operators() {
        let d = standard_simplex(1, 1).unwrap().dump();
        assert!(d.contains("level 1: 3 simplices"));
        assert!(d.contains("⟨01⟩ d: ⟨1⟩ ⟨0⟩ *"));
        assert!(d.contains("⟨0⟩ s: ⟨00⟩ *"));
    }

    fn arb_set() -> impl Strategy<Value = FinSimplicialSet> {
        prop_oneof![
            (0usize..4, 1usize..4).prop_map(|(n, t)| standard_simplex(n, t).unwrap()),
            (1usize..4, 0usize..4, 1usize..4).prop_map(|(n, k, t)| horn(n, k.min(n), t).unwrap()),
            (1usize..3, 1usize..4).prop_map(|(n, t)| sphere(n, t).unwrap()),
            (1usize..4, 1usize..4).prop_map(|(g, t)| classifying_space(&cyclic_group(g), t).unwrap()),
            (0usize..2, 0usize..2, 1usize..3).prop_map(|(a, b, t)| {
                product(&standard_simplex(a, t).unwrap(), &standard_simplex(b, t).unwrap()).unwrap()
            }),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn identities_and_normal_forms(x in arb_set()) {
            prop_assert!(x.check_identities().ok());
            for n in 0..=x.truncation() {
                for s in 0..x.size(n) {
                    let nf = x.normal_form(n, s);
                    prop_assert!(nf.degeneracies.windows(2).all(|p| p[0] > p[1]));
                    prop_assert!(!x.is_degenerate(nf.base_level, nf.base));
                    prop_assert_eq!(x.recompose(&nf), Some(s));
                }
            }
        }
    }
}
