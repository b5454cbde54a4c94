//! Truncated simplicial modules: free abelian groups per level with integer
//! face and degeneracy matrices.

use std::collections::BTreeMap;

use rand::Rng;

use super::word::{Op, SymbolicChain, Word};
use super::{check_with, generated_subset, FinSimplicialSet, IdentityReport};
use crate::error::{Error, Result};
use crate::homology::ChainComplex;
use crate::matrix::Matrix;
use crate::scalar::sign;
use crate::snf::{kernel_basis, LatticeSolver};
use crate::ZMatrix;

pub(crate) fn overflow(_: crate::scalar::Overflow) -> Error {
    Error::Bound("integer overflow in simplicial linear algebra".into())
}

/// Expresses the columns of `image` in the basis given by the columns of
/// `basis`.
pub(crate) fn coordinates(basis: &ZMatrix, image: &ZMatrix) -> Result<ZMatrix> {
    let solver = LatticeSolver::new(basis).map_err(overflow)?;
    let cols = (0..image.cols())
        .map(|c| {
            solver
                .solve(&image.column(c))
                .ok_or_else(|| Error::Identity("image leaves the submodule".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(basis.cols(), &cols))
}

#[derive(Debug, Clone)]
pub struct FinSimplicialModule {
    ranks: Vec<usize>,
    faces: Vec<Vec<ZMatrix>>,
    degeneracies: Vec<Vec<ZMatrix>>,
    generators: Option<Vec<Vec<usize>>>,
}

impl FinSimplicialModule {
    /// `faces[n][i]` maps level `n` to `n - 1` (`faces[0]` empty);
    /// `degeneracies[n][i]` maps level `n < N` to `n + 1`.
    pub fn from_matrices(ranks: Vec<usize>, faces: Vec<Vec<ZMatrix>>, degeneracies: Vec<Vec<ZMatrix>>) -> Result<Self> {
        let top = ranks.len().checked_sub(1).ok_or_else(|| Error::Range("no levels".into()))?;
        let shape_err = |what: &str, n: usize| Err(Error::Range(format!("{what} matrices on level {n}")));
        if faces.len() != top + 1 || !faces[0].is_empty() || degeneracies.len() != top {
            return shape_err("operator", top);
        }
        for n in 1..=top {
            if faces[n].len() != n + 1 || faces[n].iter().any(|m| m.shape() != (ranks[n - 1], ranks[n])) {
                return shape_err("face", n);
            }
        }
        for n in 0..top {
            if degeneracies[n].len() != n + 1 || degeneracies[n].iter().any(|m| m.shape() != (ranks[n + 1], ranks[n])) {
                return shape_err("degeneracy", n);
            }
        }
        Ok(Self {
            ranks,
            faces,
            degeneracies,
            generators: None,
        })
    }

    /// `Z[X]`, basis the simplices of `X` including degenerate ones.
    pub fn free(x: &FinSimplicialSet) -> Result<Self> {
        if !x.has_degeneracies() {
            return Err(Error::NotApplicable("free module needs degeneracies".into()));
        }
        let top = x.truncation();
        let ranks = x.sizes();
        let perm = |rows: usize, cols: usize, f: &dyn Fn(usize) -> usize| {
            let mut m = Matrix::zeros(rows, cols);
            for c in 0..cols {
                m[(f(c), c)] = 1;
            }
            m
        };
        let faces = (0..=top)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n).map(|i| perm(ranks[n - 1], ranks[n], &|c| x.face(n, i, c))).collect()
            })
            .collect();
        let degeneracies = (0..top)
            .map(|n| (0..=n).map(|i| perm(ranks[n + 1], ranks[n], &|c| x.degeneracy(n, i, c).unwrap())).collect())
            .collect();
        let mut m = Self::from_matrices(ranks, faces, degeneracies)?;
        m.generators = Some((0..=top).map(|n| x.nondegenerate(n)).collect());
        Ok(m)
    }

    /// The constant module at `Z^rank`: every operator is the identity.
    pub fn constant(rank: usize, truncation: usize) -> Self {
        let id = Matrix::identity(rank);
        Self {
            ranks: vec![rank; truncation + 1],
            faces: (0..=truncation).map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] }).collect(),
            degeneracies: (0..truncation).map(|n| vec![id.clone(); n + 1]).collect(),
            generators: None,
        }
    }

    pub fn truncation(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn face(&self, n: usize, i: usize) -> &ZMatrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &ZMatrix {
        &self.degeneracies[n][i]
    }

    /// Indices of nondegenerate basis simplices, for modules built from a
    /// simplicial set.
    pub fn generators(&self, n: usize) -> Option<&[usize]> {
        self.generators.as_ref().map(|g| g[n].as_slice())
    }

    pub fn apply(&self, word: &Word, n: usize, v: &[i64]) -> Option<(usize, Vec<i64>)> {
        let (mut n, mut v) = (n, v.to_vec());
        for op in word.applied() {
            match op {
                Op::D(i) if n >= 1 && i <= n => {
                    v = self.faces[n][i].apply(&v);
                    n -= 1;
                }
                Op::S(i) if n < self.truncation() && i <= n => {
                    v = self.degeneracies[n][i].apply(&v);
                    n += 1;
                }
                _ => return None,
            }
        }
        Some((n, v))
    }

    fn unit(&self, n: usize, x: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank(n)];
        v[x] = 1;
        v
    }

    /// The identities as matrix equations, checked column by column.
    pub fn check_identities(&self) -> IdentityReport {
        check_with(
            self.truncation(),
            false,
            |n| self.rank(n),
            |w, n, x| self.apply(w, n, &self.unit(n, x)),
            |_, v| format!("{v:?}"),
            |n, x| format!("e{x} in level {n}"),
        )
    }

    /// `sum_k (-1)^k d_k` on every level.
    pub fn chain_complex(&self) -> ChainComplex<i64> {
        let maps = (1..=self.truncation())
            .map(|n| {
                (0..=n).fold(Matrix::zeros(self.rank(n - 1), self.rank(n)), |acc, i| {
                    acc.add(&self.faces[n][i].scale(&sign::<i64>(i)))
                })
            })
            .collect();
        ChainComplex::from_maps(0, &self.ranks, maps).expect("shapes are consistent by construction")
    }

    /// Basis (as columns) of `N_n = intersection of ker d_k for k < n`.
    pub fn moore_basis(&self, n: usize) -> Result<ZMatrix> {
        if n == 0 {
            return Ok(Matrix::identity(self.rank(0)));
        }
        let blocks: Vec<&ZMatrix> = self.faces[n][..n].iter().collect();
        kernel_basis(&Matrix::vstack(self.rank(n), &blocks)).map_err(overflow)
    }

    /// `N_n` with the last face `d_n` as boundary.
    pub fn moore_complex(&self) -> Result<ChainComplex<i64>> {
        let bases = (0..=self.truncation()).map(|n| self.moore_basis(n)).collect::<Result<Vec<_>>>()?;
        let ranks: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = (1..=self.truncation())
            .map(|n| coordinates(&bases[n - 1], &self.faces[n][n].mul(&bases[n])))
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::from_maps(0, &ranks, maps)
    }

    /// `(PA)_n = A_{n+1}` with `d_i = d_{i+1}` and `s_i = s_{i+1}`.
    pub fn path_space(&self) -> Result<Self> {
        let top = self.truncation();
        if top < 2 {
            return Err(Error::Range("path space needs truncation at least 2".into()));
        }
        let faces = (0..top)
            .map(|n| if n == 0 { vec![] } else { (0..=n).map(|i| self.faces[n + 1][i + 1].clone()).collect() })
            .collect();
        let degeneracies = (0..top - 1)
            .map(|n| (0..=n).map(|i| self.degeneracies[n + 1][i + 1].clone()).collect())
            .collect();
        Self::from_matrices(self.ranks[1..].to_vec(), faces, degeneracies)
    }

    /// Kernel of `d_0: PA -> A`, with operators restricted from `PA`.
    pub fn loop_space(&self) -> Result<Self> {
        let path = self.path_space()?;
        let top = path.truncation();
        let bases = (0..=top)
            .map(|n| kernel_basis(&self.faces[n + 1][0]).map_err(overflow))
            .collect::<Result<Vec<_>>>()?;
        let ranks = bases.iter().map(Matrix::cols).collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            faces.push(
                (0..=n)
                    .map(|i| coordinates(&bases[n - 1], &path.faces[n][i].mul(&bases[n])))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let degeneracies = (0..top)
            .map(|n| {
                (0..=n)
                    .map(|i| coordinates(&bases[n + 1], &path.degeneracies[n][i].mul(&bases[n])))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrices(ranks, faces, degeneracies)
    }

    /// Underlying simplicial set of the reduction mod `p`: all vectors of
    /// `(Z/p)^rank` on each level. Refuses levels with more than `bound`
    /// elements.
    pub fn underlying_set(&self, p: i64, bound: usize) -> Result<FinSimplicialSet> {
        if p < 2 {
            return Err(Error::Range(format!("modulus {p}")));
        }
        let sizes = self
            .ranks
            .iter()
            .map(|&r| (p as usize).checked_pow(r as u32).filter(|&s| s <= bound))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Bound(format!("more than {bound} elements on some level")))?;
        let decode = |n: usize, x: usize| -> Vec<i64> {
            let mut v = Vec::with_capacity(self.rank(n));
            let mut x = x;
            for _ in 0..self.rank(n) {
                v.push((x % p as usize) as i64);
                x /= p as usize;
            }
            v
        };
        let encode = |v: Vec<i64>| v.iter().rev().fold(0usize, |acc, c| acc * p as usize + c.rem_euclid(p) as usize);
        let top = self.truncation();
        let names = (0..=top)
            .map(|n| {
                (0..sizes[n])
                    .map(|x| {
                        let parts: Vec<String> = decode(n, x).iter().map(i64::to_string).collect();
                        format!("({})", parts.join(","))
                    })
                    .collect()
            })
            .collect();
        let faces = (0..=top)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n)
                    .map(|i| (0..sizes[n]).map(|x| encode(self.faces[n][i].apply(&decode(n, x)))).collect())
                    .collect()
            })
            .collect();
        let degeneracies = (0..top)
            .map(|n| {
                (0..=n)
                    .map(|i| (0..sizes[n]).map(|x| encode(self.degeneracies[n][i].apply(&decode(n, x)))).collect())
                    .collect()
            })
            .collect();
        FinSimplicialSet::from_tables(names, faces, Some(degeneracies))
    }

    /// Conjugates every level by a change of basis `P_n`, given with its
    /// inverse.
    pub fn change_basis(&self, p: &[(ZMatrix, ZMatrix)]) -> Result<Self> {
        if p.len() != self.ranks.len() || p.iter().zip(&self.ranks).any(|((a, b), &r)| a.shape() != (r, r) || b.shape() != (r, r)) {
            return Err(Error::Range("change of basis does not match ranks".into()));
        }
        let faces = (0..=self.truncation())
            .map(|n| self.faces[n].iter().map(|d| p[n - 1].0.mul(d).mul(&p[n].1)).collect())
            .collect();
        let degeneracies = (0..self.truncation())
            .map(|n| self.degeneracies[n].iter().map(|s| p[n + 1].0.mul(s).mul(&p[n].1)).collect())
            .collect();
        Self::from_matrices(self.ranks.clone(), faces, degeneracies)
    }

    /// Direct sum, level by level.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.truncation() != other.truncation() {
            return Err(Error::LengthMismatch {
                expected: self.truncation(),
                got: other.truncation(),
            });
        }
        let block = |a: &ZMatrix, b: &ZMatrix| {
            let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    m[(i, j)] = a[(i, j)];
                }
            }
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m[(a.rows() + i, a.cols() + j)] = b[(i, j)];
                }
            }
            m
        };
        let ranks = self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect();
        let faces = self.faces.iter().zip(&other.faces).map(|(x, y)| x.iter().zip(y).map(|(a, b)| block(a, b)).collect()).collect();
        let degeneracies = self
            .degeneracies
            .iter()
            .zip(&other.degeneracies)
            .map(|(x, y)| x.iter().zip(y).map(|(a, b)| block(a, b)).collect())
            .collect();
        Self::from_matrices(ranks, faces, degeneracies)
    }

    /// `gamma - s0 s0 d0 b - s0 s0 d1 a` with `gamma = s0 a + s1 b`, whose
    /// boundary is `a + b - [a+b]` once `d1 gamma` is read as the single
    /// element `[a+b]`.
    pub fn homologous_witness(&self, a: &[i64], b: &[i64]) -> Result<HomologousWitness> {
        use Op::{D, S};
        if self.truncation() < 2 {
            return Err(Error::Range("witness needs truncation at least 2".into()));
        }
        for v in [a, b] {
            if v.len() != self.rank(1) {
                return Err(Error::LengthMismatch {
                    expected: self.rank(1),
                    got: v.len(),
                });
            }
        }
        let w = |ops: &[Op]| Word(ops.to_vec());
        let gamma = SymbolicChain::term(1, w(&[S(0)]), "a").add(&SymbolicChain::term(1, w(&[S(1)]), "b"), 1);
        let correction =
            SymbolicChain::term(1, w(&[S(0), S(0), D(0)]), "b").add(&SymbolicChain::term(1, w(&[S(0), S(0), D(1)]), "a"), 1);
        let chain = gamma.add(&correction, -1);

        let faces: Vec<SymbolicChain> = (0..3).map(|i| gamma.apply(D(i))).collect();
        let atoms_ab = SymbolicChain::atom("a").add(&SymbolicChain::atom("b"), 1);
        let expect = [
            SymbolicChain::atom("a").add(&SymbolicChain::term(1, w(&[S(0), D(0)]), "b"), 1),
            atoms_ab.clone(),
            SymbolicChain::term(1, w(&[S(0), D(1)]), "a").add(&SymbolicChain::atom("b"), 1),
        ];
        if faces[..] != expect[..] {
            return Err(Error::Identity("face computation of gamma".into()));
        }
        let boundary = faces[0]
            .add(&SymbolicChain::atom("[a+b]"), -1)
            .add(&faces[2], 1)
            .add(&correction.boundary(2), -1);
        if boundary != atoms_ab.add(&SymbolicChain::atom("[a+b]"), -1) {
            return Err(Error::Identity(format!("symbolic boundary came out as {boundary}")));
        }

        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let atoms: BTreeMap<&str, &[i64]> = [("a", a), ("b", b), ("[a+b]", &sum[..])].into_iter().collect();
        let eval = |c: &SymbolicChain, n: usize| -> Result<Vec<i64>> {
            let mut out = vec![0; self.rank(n)];
            for (word, atom, coeff) in c.terms() {
                let (m, v) = self
                    .apply(word, 1, atoms[atom])
                    .ok_or_else(|| Error::Range(format!("{word} leaves the truncation")))?;
                debug_assert_eq!(m, n);
                for (o, x) in out.iter_mut().zip(v) {
                    *o += coeff * x;
                }
            }
            Ok(out)
        };
        let g = eval(&gamma, 2)?;
        for (i, f) in faces.iter().enumerate() {
            if self.faces[2][i].apply(&g) != eval(f, 1)? {
                return Err(Error::Identity(format!("d{i} gamma in the module")));
            }
        }
        if self.faces[2][1].apply(&g) != sum {
            return Err(Error::Identity("d1 gamma differs from a + b".into()));
        }
        let vectors = chain
            .terms()
            .map(|(word, atom, coeff)| Ok((coeff, format!("{word} {atom}"), eval(&SymbolicChain::term(1, word.clone(), atom), 2)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut formal: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (v, c) in [(a.to_vec(), 1), (b.to_vec(), 1), (sum, -1)] {
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            *formal.entry(v).or_insert(0) += c;
        }
        formal.retain(|_, c| *c != 0);
        Ok(HomologousWitness {
            chain,
            boundary,
            vectors,
            formal,
        })
    }
}

/// Output of [`FinSimplicialModule::homologous_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologousWitness {
    /// The level-2 chain in operator notation.
    pub chain: SymbolicChain,
    /// Its boundary, `a + b - [a+b]`.
    pub boundary: SymbolicChain,
    /// Each chain term evaluated in the module: coefficient, label, vector.
    pub vectors: Vec<(i64, String, Vec<i64>)>,
    /// The boundary as a combination of distinct nonzero elements of level 1.
    pub formal: BTreeMap<Vec<i64>, i64>,
}

/// Unimodular `n x n` matrix with small entries, and its inverse.
pub(crate) fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> (ZMatrix, ZMatrix) {
    let mut p = Matrix::identity(n);
    let mut q = Matrix::identity(n);
    if n < 2 {
        return (p, q);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        // Row op on p: row_i += c row_j. Column op on q keeps p q = I.
        for k in 0..n {
            let v = p[(j, k)];
            p[(i, k)] += c * v;
        }
        for k in 0..n {
            let v = q[(k, i)];
            q[(k, j)] -= c * v;
        }
    }
    (p, q)
}

/// Free module on a random subcomplex of `Delta[3]`, in a random basis.
pub fn random_module(rng: &mut impl Rng, truncation: usize) -> FinSimplicialModule {
    let facets: Vec<Vec<usize>> = (0..rng.gen_range(1..4))
        .map(|_| {
            let mut f: Vec<usize> = (0..=3).filter(|_| rng.gen_bool(0.6)).collect();
            if f.is_empty() {
                f.push(rng.gen_range(0..=3));
            }
            f
        })
        .collect();
    let set = generated_subset(3, &facets, truncation).expect("vertices lie in [3]");
    let free = FinSimplicialModule::free(&set).expect("subsets of a simplex carry degeneracies");
    let p: Vec<(ZMatrix, ZMatrix)> = free.ranks().iter().map(|&r| random_unimodular(rng, r, 2 * r)).collect();
    free.change_basis(&p).expect("ranks match")
}

#[cfg(test)]
mod tests {
    use super::super::{classifying_space, cyclic_group, kan_check, sphere, standard_simplex, DEFAULT_HORN_BOUND};
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn free(x: &FinSimplicialSet) -> FinSimplicialModule {
        FinSimplicialModule::free(x).unwrap()
    }

    #[test]
    fn moore_of_interval() {
        let m = free(&standard_simplex(1, 3).unwrap());
        let n = m.moore_complex().unwrap();
        assert_eq!((n.rank(0), n.rank(1), n.rank(2)), (2, 1, 0));
        // ker d0 on <00>,<01>,<11>: coefficient of <00> vanishes, the others cancel.
        let k = m.moore_basis(1).unwrap();
        let v: Vec<i64> = k.column(0);
        assert_eq!(v[0], 0);
        assert_eq!(v[1] + v[2], 0);
    }

    #[test]
    fn constant_module() {
        let c = FinSimplicialModule::constant(3, 4);
        assert!(c.check_identities().ok());
        let n = c.moore_complex().unwrap();
        assert_eq!(n.rank(0), 3);
        assert!((1..=4).all(|k| n.rank(k) == 0));
        let p = c.path_space().unwrap();
        assert!(p.ranks().iter().all(|&r| r == 3));
        assert!(p.face(1, 0) == &Matrix::identity(3));
    }

    #[test]
    fn path_space_shifts() {
        let a = free(&standard_simplex(2, 4).unwrap());
        let p = a.path_space().unwrap();
        assert_eq!(p.rank(0), a.rank(1));
        assert_eq!(p.face(2, 1), a.face(3, 2));
        assert!(p.check_identities().ok());
    }

    #[test]
    fn loop_space_shifts_homotopy() {
        let a = free(&sphere(2, 4).unwrap());
        let l = a.loop_space().unwrap();
        assert!(l.check_identities().ok());
        let ha = a.moore_complex().unwrap().homology().unwrap();
        let hl = l.moore_complex().unwrap().homology().unwrap();
        for k in 0..2 {
            assert_eq!(hl[&k], ha[&(k + 1)], "degree {k}");
        }
        assert_eq!(hl[&1].to_string(), "Z");
    }

    #[test]
    fn normalization_on_classifying_space() {
        let a = free(&classifying_space(&cyclic_group(3), 4).unwrap());
        let h = a.chain_complex().homology().unwrap();
        let hn = a.moore_complex().unwrap().homology().unwrap();
        for k in 0..4 {
            assert_eq!(h[&k], hn[&k]);
        }
        assert_eq!(h[&1].to_string(), "Z/3");
    }

    #[test]
    fn witness_on_interval() {
        let m = free(&standard_simplex(1, 2).unwrap());
        let a = vec![1, -2, 0];
        let b = vec![0, 3, 1];
        let w = m.homologous_witness(&a, &b).unwrap();
        assert_eq!(w.boundary.to_string(), "-[a+b] + a + b");
        assert_eq!(w.formal.len(), 3);
        assert_eq!(w.formal[&vec![1, 1, 1]], -1);

        let same = m.homologous_witness(&a, &a).unwrap();
        assert_eq!(same.formal, BTreeMap::from([(a.clone(), 2), (vec![2, -4, 0], -1)]));

        let zero = m.homologous_witness(&[0, 0, 0], &b).unwrap();
        assert!(zero.formal.is_empty());
    }

    #[test]
    fn witness_boundary_symbols() {
        let m = free(&standard_simplex(1, 2).unwrap());
        let w = m.homologous_witness(&[1, 0, 0], &[0, 1, 0]).unwrap();
        let terms: Vec<(String, String, i64)> =
            w.boundary.terms().map(|(wd, a, c)| (wd.to_string(), a.to_string(), c)).collect();
        assert_eq!(
            terms,
            [("id".into(), "[a+b]".into(), -1), ("id".into(), "a".into(), 1), ("id".into(), "b".into(), 1)]
        );
        assert_eq!(w.chain.to_string(), "s0a + s1b - s1s0d0b - s1s0d1a");
    }

    #[test]
    fn simplicial_groups_are_kan() {
        let m = free(&standard_simplex(1, 3).unwrap());
        let set = m.underlying_set(2, 1 << 12).unwrap();
        assert!(set.check_identities().ok());
        for n in 1..=3 {
            let r = kan_check(&set, n, DEFAULT_HORN_BOUND).unwrap();
            assert!(r.horns() > 0);
            assert_eq!(r.unfillable(), 0, "n = {n}");
        }
    }

    #[test]
    fn change_of_basis_keeps_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (p, q) = random_unimodular(&mut rng, 5, 20);
        assert_eq!(p.mul(&q), Matrix::identity(5));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn random_modules_normalize(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_module(&mut rng, 3);
            prop_assert!(m.check_identities().ok());
            let h = m.chain_complex().homology().unwrap();
            let hn = m.moore_complex().unwrap().homology().unwrap();
            for k in 0..3 {
                prop_assert_eq!(&h[&k], &hn[&k]);
            }
        }

        #[test]
        fn witness_on_random_vectors(a in prop::collection::vec(-3i64..4, 3), b in prop::collection::vec(-3i64..4, 3)) {
            let m = free(&standard_simplex(1, 2).unwrap());
            let w = m.homologous_witness(&a, &b).unwrap();
            let total: i64 = w.formal.values().sum();
            let zeros = [&a, &b].iter().filter(|v| v.iter().all(|&x| x == 0)).count() as i64;
            let sum_zero = a.iter().zip(&b).all(|(x, y)| x + y == 0) as i64;
            prop_assert_eq!(total, 1 - zeros + sum_zero);
        }
    }
}
