//! Integer homology of finite free chain complexes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::Variable;
use crate::matrix::Matrix;
use crate::scalar::Ring;
use crate::snf::{rank, smith_normal_form};
use crate::{LaurentPoly, PoincarePoly};

/// A chain complex of free modules, lowering degree by one.
///
/// `boundary(n)` maps `C_n -> C_{n-1}` and has `rank(n - 1)` rows.
#[derive(Clone, Debug)]
pub struct ChainComplex<T: Ring = i64> {
    min_degree: i64,
    ranks: Vec<usize>,
    boundaries: Vec<Matrix<T>>,
    augmentation: Option<Matrix<T>>,
}

impl<T: Ring> ChainComplex<T> {
    /// Degrees `min_degree ..` with the given boundary matrices, one per
    /// degree; the first must have zero rows.
    pub fn new(min_degree: i64, boundaries: Vec<Matrix<T>>) -> Result<Self> {
        let ranks: Vec<usize> = boundaries.iter().map(Matrix::cols).collect();
        for (k, b) in boundaries.iter().enumerate() {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            if b.rows() != below {
                return Err(Error::LengthMismatch {
                    expected: below,
                    got: b.rows(),
                });
            }
        }
        Ok(Self {
            min_degree,
            ranks,
            boundaries,
            augmentation: None,
        })
    }

    /// Builds from ranks and the boundaries `C_n -> C_{n-1}` for
    /// `n = min_degree + 1, ..`.
    pub fn from_maps(min_degree: i64, ranks: &[usize], maps: Vec<Matrix<T>>) -> Result<Self> {
        if maps.len() + 1 != ranks.len().max(1) {
            return Err(Error::LengthMismatch {
                expected: ranks.len().saturating_sub(1),
                got: maps.len(),
            });
        }
        let mut boundaries = vec![Matrix::zeros(0, ranks.first().copied().unwrap_or(0))];
        boundaries.extend(maps);
        if ranks.is_empty() {
            boundaries.clear();
        }
        Self::new(min_degree, boundaries)
    }

    /// Adds `eps: C_0 -> Z`, given as a `1 x rank(0)` matrix.
    pub fn with_augmentation(mut self, eps: Matrix<T>) -> Result<Self> {
        if eps.shape() != (1, self.rank(0)) {
            return Err(Error::LengthMismatch {
                expected: self.rank(0),
                got: eps.cols(),
            });
        }
        self.augmentation = Some(eps);
        Ok(self)
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.min_degree..=self.max_degree()
    }

    pub fn rank(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.ranks[k])
    }

    fn index(&self, n: i64) -> Option<usize> {
        let k = n - self.min_degree;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    /// `C_n -> C_{n-1}`; zero outside the stored range.
    pub fn boundary(&self, n: i64) -> Matrix<T> {
        match self.index(n) {
            Some(k) => self.boundaries[k].clone(),
            None => Matrix::zeros(self.rank(n - 1), self.rank(n)),
        }
    }

    pub fn augmentation(&self) -> Option<&Matrix<T>> {
        self.augmentation.as_ref()
    }

    /// Checks `d_{n-1} d_n = 0` and `eps d_1 = 0`.
    pub fn check(&self) -> Result<()> {
        for n in self.degrees() {
            let prod = self
                .boundary(n - 1)
                .to_big()
                .mul(&self.boundary(n).to_big());
            if !prod.is_zero() {
                return Err(Error::NonZeroSquare(format!("degree {n}")));
            }
        }
        if let Some(eps) = &self.augmentation {
            if !eps.to_big().mul(&self.boundary(1).to_big()).is_zero() {
                return Err(Error::NonZeroSquare("augmentation".into()));
            }
        }
        Ok(())
    }

    pub fn to_big(&self) -> ChainComplex<BigInt> {
        ChainComplex {
            min_degree: self.min_degree,
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.iter().map(Matrix::to_big).collect(),
            augmentation: self.augmentation.as_ref().map(Matrix::to_big),
        }
    }

    /// Homology in every stored degree; checks `d^2 = 0` first.
    pub fn homology(&self) -> Result<BTreeMap<i64, HomologyGroup>> {
        self.check()?;
        let ranks: Vec<usize> = self.degrees().map(|n| rank(&self.boundary(n))).collect();
        let groups = self
            .degrees()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|n| {
                let incoming = smith_normal_form(&self.boundary(n + 1));
                let k = (n - self.min_degree) as usize;
                let mut cycles = self.rank(n) - ranks[k];
                if n == 0 {
                    if let Some(eps) = &self.augmentation {
                        cycles -= rank(eps);
                    }
                }
                HomologyGroup {
                    free_rank: cycles - incoming.rank(),
                    torsion: incoming.torsion(),
                }
            })
            .collect::<Vec<_>>();
        Ok(self.degrees().zip(groups).collect())
    }

    /// `sum (-1)^n rank C_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(n) as i64)
            .sum()
    }
}

/// A finitely generated abelian group `Z^r + sum Z/d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// Elementary divisors above one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn latex(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(r"\mathbb{Z}".to_string()),
            r => parts.push(format!(r"\mathbb{{Z}}^{{{r}}}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!(r"\mathbb{{Z}}/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(r" \oplus ")
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Bigraded homology with cohomological degree `i` (number of B-smoothings)
/// and quantum degree `j`, before the writhe shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedHomology {
    pub n_plus: usize,
    pub n_minus: usize,
    pub groups: BTreeMap<(i64, i64), HomologyGroup>,
}

impl BigradedHomology {
    /// `(i - n_minus, j + n_plus - 2 n_minus)`.
    pub fn shift(&self, i: i64, j: i64) -> (i64, i64) {
        let (p, m) = (self.n_plus as i64, self.n_minus as i64);
        (i - m, j + p - 2 * m)
    }

    /// Groups in shifted gradings, including every bidegree with chains.
    pub fn shifted(&self) -> BTreeMap<(i64, i64), HomologyGroup> {
        self.groups
            .iter()
            .map(|(&(i, j), g)| (self.shift(i, j), g.clone()))
            .collect()
    }

    /// Shifted groups that are nonzero.
    pub fn nonzero_shifted(&self) -> BTreeMap<(i64, i64), HomologyGroup> {
        self.shifted()
            .into_iter()
            .filter(|(_, g)| !g.is_zero())
            .collect()
    }

    /// `P(t, q) = sum t^(i - n_minus) q^(j + n_plus - 2 n_minus) rank H^(i,j)`.
    pub fn poincare(&self) -> PoincarePoly {
        let mut p = PoincarePoly::new();
        for ((i, j), g) in self.shifted() {
            p.add_term(i, j, BigInt::from(g.free_rank));
        }
        p
    }

    /// `sum_j q^j chi(H^(*,j))`, unshifted.
    pub fn euler(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            Variable::Q,
            self.groups.iter().map(|(&(i, j), g)| {
                let s = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                (j, BigInt::from(s * g.free_rank as i64))
            }),
        )
    }

    pub fn to_json(&self, jones: &LaurentPoly) -> String {
        #[derive(Serialize)]
        struct Group {
            i: i64,
            j: i64,
            free_rank: usize,
            torsion: Vec<u64>,
        }
        #[derive(Serialize)]
        struct Doc {
            schema: &'static str,
            n_plus: usize,
            n_minus: usize,
            groups: Vec<Group>,
            poincare: String,
            #[serde(rename = "jones_J")]
            jones_j: String,
        }
        let doc = Doc {
            schema: "kh/1",
            n_plus: self.n_plus,
            n_minus: self.n_minus,
            groups: self
                .nonzero_shifted()
                .into_iter()
                .map(|((i, j), g)| Group {
                    i,
                    j,
                    free_rank: g.free_rank,
                    torsion: g.torsion.iter().map(|d| d.to_u64().expect("small torsion")).collect(),
                })
                .collect(),
            poincare: self.poincare().to_string(),
            jones_j: jones.to_string(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    /// Table with rows `j` (descending) and columns `i`, in shifted gradings.
    pub fn to_latex(&self, jones: &LaurentPoly) -> String {
        let groups = self.nonzero_shifted();
        let mut out = String::new();
        out.push_str("% schema kh/1\n");
        out.push_str(&format!("% n_plus = {}, n_minus = {}\n", self.n_plus, self.n_minus));
        if groups.is_empty() {
            out.push_str("\\begin{tabular}{c}\n$0$\n\\end{tabular}\n");
        } else {
            let is: Vec<i64> = {
                let lo = groups.keys().map(|k| k.0).min().unwrap();
                let hi = groups.keys().map(|k| k.0).max().unwrap();
                (lo..=hi).collect()
            };
            let mut js: Vec<i64> = groups.keys().map(|k| k.1).collect();
            js.sort_unstable();
            js.dedup();
            js.reverse();
            out.push_str(&format!("\\begin{{tabular}}{{r|{}}}\n", "c".repeat(is.len())));
            out.push_str("$j \\backslash i$");
            for i in &is {
                out.push_str(&format!(" & ${i}$"));
            }
            out.push_str(" \\\\\n\\hline\n");
            for j in js {
                out.push_str(&format!("${j}$"));
                for &i in &is {
                    match groups.get(&(i, j)) {
                        Some(g) => out.push_str(&format!(" & ${}$", g.latex())),
                        None => out.push_str(" &"),
                    }
                }
                out.push_str(" \\\\\n");
            }
            out.push_str("\\end{tabular}\n");
        }
        out.push_str(&format!("% P(t,q) = {}\n", self.poincare()));
        out.push_str(&format!("% J(q) = {}\n", jones));
        out
    }

    pub fn to_text(&self, jones: &LaurentPoly) -> String {
        let mut out = format!("n+ = {}, n- = {}\n", self.n_plus, self.n_minus);
        for ((i, j), g) in self.nonzero_shifted() {
            out.push_str(&format!("H^({i},{j}) = {g}\n"));
        }
        out.push_str(&format!("P = {}\n", self.poincare()));
        out.push_str(&format!("J = {}\n", jones));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> Matrix<i64> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn single_z() {
        let c = ChainComplex::<i64>::from_maps(0, &[1], vec![]).unwrap();
        assert_eq!(c.homology().unwrap()[&0], HomologyGroup::free(1));
    }

    #[test]
    fn multiplication_by_two() {
        let c = ChainComplex::from_maps(0, &[1, 1], vec![m(&[vec![2]])]).unwrap();
        let h = c.homology().unwrap();
        assert_eq!(h[&0].torsion, vec![BigInt::from(2)]);
        assert_eq!(h[&0].free_rank, 0);
        assert!(h[&1].is_zero());
        assert_eq!(h[&0].to_string(), "Z/2");
    }

    #[test]
    fn augmented_interval() {
        let c = ChainComplex::from_maps(0, &[2, 1], vec![m(&[vec![-1], vec![1]])])
            .unwrap()
            .with_augmentation(m(&[vec![1, 1]]))
            .unwrap();
        let h = c.homology().unwrap();
        assert!(h[&0].is_zero() && h[&1].is_zero());
    }

    #[test]
    fn nonzero_square_is_rejected() {
        let c = ChainComplex::from_maps(0, &[1, 1, 1], vec![m(&[vec![1]]), m(&[vec![1]])]).unwrap();
        assert!(matches!(c.homology(), Err(Error::NonZeroSquare(_))));
    }

    #[test]
    fn shifted_poincare() {
        let h = BigradedHomology {
            n_plus: 0,
            n_minus: 3,
            groups: BTreeMap::from([
                ((0, 5), HomologyGroup::free(1)),
                ((0, 3), HomologyGroup::free(1)),
                ((1, 3), HomologyGroup::default()),
            ]),
        };
        assert_eq!(h.poincare().to_string(), "t^-3q^-3 + t^-3q^-1");
        assert_eq!(h.nonzero_shifted().len(), 2);
        assert_eq!(h.shifted().len(), 3);
    }

    /// Complexes `C_0 <- C_1 <- C_2` with `d_1 d_2 = 0` by construction:
    /// `d_2 = K x` for a kernel basis `K` of `d_1`.
    fn arb_complex() -> impl Strategy<Value = (Matrix<i64>, Matrix<i64>)> {
        (1usize..4, 1usize..4, 1usize..4).prop_flat_map(|(r0, r1, r2)| {
            (
                proptest::collection::vec(-3i64..4, r0 * r1),
                proptest::collection::vec(-3i64..4, r1 * r2),
            )
                .prop_map(move |(a, b)| {
                    let d1 = Matrix::from_rows(r0, r1, a);
                    let k = crate::snf::kernel_basis(&d1).unwrap();
                    let x = Matrix::from_rows(k.cols(), r2, b[..k.cols() * r2].to_vec());
                    (d1, k.mul(&x))
                })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_euler((d1, d2) in arb_complex()) {
            let ranks = [d1.rows(), d1.cols(), d2.cols()];
            let c = ChainComplex::from_maps(0, &ranks, vec![d1.clone(), d2.clone()]).unwrap();
            let h = c.homology().unwrap();
            let chi_h: i64 = h.iter().map(|(n, g)| if n % 2 == 0 { 1 } else { -1 } * g.free_rank as i64).sum();
            prop_assert_eq!(chi_h, c.euler_characteristic());
            let r1 = rank(&d1);
            let r2 = rank(&d2);
            prop_assert_eq!(h[&1].free_rank, d1.cols() - r1 - r2);
        }

        #[test]
        fn reordering_bases_keeps_homology((d1, d2) in arb_complex(), seed in 0u64..1000) {
            let c = ChainComplex::from_maps(0, &[d1.rows(), d1.cols(), d2.cols()], vec![d1.clone(), d2.clone()]).unwrap();
            let n1 = d1.cols();
            let perm: Vec<usize> = (0..n1).map(|k| (k + seed as usize) % n1).collect();
            let p1 = d1.select_columns(&perm);
            let p2 = d2.select_rows(&perm);
            let c2 = ChainComplex::from_maps(0, &[d1.rows(), n1, d2.cols()], vec![p1, p2]).unwrap();
            prop_assert_eq!(c.homology().unwrap(), c2.homology().unwrap());
        }
    }
}
