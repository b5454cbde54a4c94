//! Chain complexes to simplicial modules and back.
//!
//! `Gamma(C)_n` is the module of chain maps `D[n] -> C`, where `D[n]` is a
//! chain-complex model of the `n`-simplex. Faces and degeneracies are
//! precomposition with the maps `D[n-1] -> D[n]` and `D[n+1] -> D[n]`
//! induced by cofaces `delta_i` and codegeneracies `sigma_i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::{ChainComplex, HomologyGroup};
use crate::matrix::Matrix;
use crate::scalar::sign;
use crate::simplicial::module::{coordinates, overflow};
use crate::simplicial::{monotone, seq_name, standard_simplex, FinSimplicialModule};
use crate::snf::{kernel_basis, smith_normal_form};
use crate::ZMatrix;

/// Largest simplex accepted by [`moore_of_simplex`].
pub const MAX_SIMPLEX_MODEL: usize = 5;
/// Largest truncation accepted by [`gamma`].
pub const MAX_GAMMA_TRUNCATION: usize = 4;

/// Which chain complex stands in for the `n`-simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaModel {
    /// The Moore complex of `Z Delta[n]`.
    #[default]
    Moore,
    /// Normalized chains: nondegenerate simplices with the alternating
    /// boundary, degenerate images set to zero.
    Normalized,
}

/// `D[n]` in degrees `0..=n`, with enough data to push simplicial
/// operators through it.
struct SimplexModel {
    model: GammaModel,
    complex: ChainComplex<i64>,
    /// Degree-`k` basis as columns over all monotone `k`-sequences
    /// (Moore model only).
    bases: Vec<ZMatrix>,
    /// Position of each sequence in its level.
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// Sequences of each level, in basis order for the normalized model.
    levels: Vec<Vec<Vec<usize>>>,
}

impl SimplexModel {
    fn new(n: usize, model: GammaModel) -> Result<Self> {
        if n > MAX_SIMPLEX_MODEL {
            return Err(Error::Bound(format!("simplex model of dimension {n} is too large")));
        }
        match model {
            GammaModel::Moore => {
                let set = standard_simplex(n, n)?;
                let module = FinSimplicialModule::free(&set)?;
                let bases = (0..=n).map(|k| module.moore_basis(k)).collect::<Result<Vec<_>>>()?;
                let levels: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| monotone(n, k)).collect();
                // Reorder the sequences to match the simplicial set's numbering.
                let levels = levels
                    .into_iter()
                    .enumerate()
                    .map(|(k, l)| {
                        let mut slots = vec![Vec::new(); l.len()];
                        for s in l {
                            let at = set.find(k, &seq_name(&s)).expect("monotone sequence");
                            slots[at] = s;
                        }
                        slots
                    })
                    .collect::<Vec<_>>();
                Ok(Self {
                    model,
                    complex: module.moore_complex()?,
                    bases,
                    index: index_levels(&levels),
                    levels,
                })
            }
            GammaModel::Normalized => {
                let levels: Vec<Vec<Vec<usize>>> = (0..=n)
                    .map(|k| monotone(n, k).into_iter().filter(|s| strictly_increasing(s)).collect())
                    .collect();
                let index = index_levels(&levels);
                let ranks: Vec<usize> = levels.iter().map(Vec::len).collect();
                let maps = (1..=n)
                    .map(|k| {
                        let mut m = Matrix::zeros(ranks[k - 1], ranks[k]);
                        for (c, s) in levels[k].iter().enumerate() {
                            for i in 0..=k {
                                let mut t = s.clone();
                                t.remove(i);
                                m[(index[k - 1][&t], c)] += sign::<i64>(i);
                            }
                        }
                        m
                    })
                    .collect();
                Ok(Self {
                    model,
                    complex: ChainComplex::from_maps(0, &ranks, maps)?,
                    bases: Vec::new(),
                    index,
                    levels,
                })
            }
        }
    }

    fn rank(&self, k: usize) -> usize {
        self.complex.rank(k as i64)
    }

    /// Degree-`k` matrix of the chain map `self -> target` induced by the
    /// vertex map `phi`.
    fn induced(&self, target: &SimplexModel, phi: &[usize], k: usize) -> Result<ZMatrix> {
        let rows = target.rank(k);
        if self.rank(k) == 0 || rows == 0 {
            return Ok(Matrix::zeros(rows, self.rank(k)));
        }
        let push = |s: &Vec<usize>| -> Vec<usize> { s.iter().map(|&v| phi[v]).collect() };
        match self.model {
            GammaModel::Moore => {
                let mut on_simplices = Matrix::zeros(target.levels[k].len(), self.levels[k].len());
                for (c, s) in self.levels[k].iter().enumerate() {
                    on_simplices[(target.index[k][&push(s)], c)] = 1;
                }
                coordinates(&target.bases[k], &on_simplices.mul(&self.bases[k]))
            }
            GammaModel::Normalized => {
                let mut m = Matrix::zeros(rows, self.rank(k));
                for (c, s) in self.levels[k].iter().enumerate() {
                    let t = push(s);
                    if strictly_increasing(&t) {
                        m[(target.index[k][&t], c)] = 1;
                    }
                }
                Ok(m)
            }
        }
    }
}

fn strictly_increasing(s: &[usize]) -> bool {
    s.windows(2).all(|p| p[0] < p[1])
}

fn index_levels(levels: &[Vec<Vec<usize>>]) -> Vec<HashMap<Vec<usize>, usize>> {
    levels.iter().map(|l| l.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect()).collect()
}

fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|v| if v >= i { v + 1 } else { v }).collect()
}

fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..=n + 1).map(|v| if v > i { v - 1 } else { v }).collect()
}

/// `Delta-bar[n]`, the Moore complex of `Z Delta[n]`, in degrees `0..=n`.
pub fn moore_of_simplex(n: usize) -> Result<ChainComplex<i64>> {
    Ok(SimplexModel::new(n, GammaModel::Moore)?.complex)
}

/// `Gamma(C)` on levels `0..=N`.
#[derive(Debug, Clone)]
pub struct TruncatedGamma {
    pub model: GammaModel,
    pub source: ChainComplex<i64>,
    /// Level-`n` basis of chain maps `D[n] -> C`, one column per map,
    /// flattened degree by degree in row-major order.
    pub bases: Vec<ZMatrix>,
    pub module: FinSimplicialModule,
}

impl TruncatedGamma {
    pub fn truncation(&self) -> usize {
        self.module.truncation()
    }

    /// `rank Gamma(C)_n = sum_k binom(n, k) rank C_k`.
    pub fn expected_rank(&self, n: usize) -> usize {
        (0..=n).map(|k| binomial(n, k) * self.source.rank(k as i64)).sum()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Offsets of the blocks `f_k : D_k -> C_k` inside a flattened chain map.
fn block_offsets(d: &SimplexModel, c: &ChainComplex<i64>, n: usize) -> Vec<usize> {
    let mut o = vec![0];
    for k in 0..=n {
        o.push(o[k] + c.rank(k as i64) * d.rank(k));
    }
    o
}

/// Integer basis of chain maps `D -> C`: `d^C f_k = f_{k-1} d^D` for
/// `k = 1..=n`.
fn chain_maps(d: &SimplexModel, c: &ChainComplex<i64>, n: usize) -> Result<ZMatrix> {
    let off = block_offsets(d, c, n);
    let rows: usize = (1..=n).map(|k| c.rank(k as i64 - 1) * d.rank(k)).sum();
    let mut eq = Matrix::zeros(rows, off[n + 1]);
    let mut row = 0;
    for k in 1..=n {
        let (dc, dd) = (c.boundary(k as i64), d.complex.boundary(k as i64));
        let (ck, ck1, dk, dk1) = (c.rank(k as i64), c.rank(k as i64 - 1), d.rank(k), d.rank(k - 1));
        for r in 0..ck1 {
            for col in 0..dk {
                for t in 0..ck {
                    eq[(row, off[k] + t * dk + col)] += dc[(r, t)];
                }
                for t in 0..dk1 {
                    eq[(row, off[k - 1] + r * dk1 + t)] -= dd[(t, col)];
                }
                row += 1;
            }
        }
    }
    kernel_basis(&eq).map_err(overflow)
}

/// Precomposes every flattened chain map `D -> C` (columns of `maps`) with
/// the chain map `E -> D` given degreewise by `along`.
fn precompose(
    maps: &ZMatrix,
    c: &ChainComplex<i64>,
    (d, dn): (&SimplexModel, usize),
    (e, en): (&SimplexModel, usize),
    along: &[ZMatrix],
) -> ZMatrix {
    let (od, oe) = (block_offsets(d, c, dn), block_offsets(e, c, en));
    let mut out = Matrix::zeros(oe[en + 1], maps.cols());
    for m in 0..maps.cols() {
        for k in 0..=en.min(dn) {
            let (ck, dk, ek) = (c.rank(k as i64), d.rank(k), e.rank(k));
            for r in 0..ck {
                for col in 0..ek {
                    let v: i64 = (0..dk).map(|t| maps[(od[k] + r * dk + t, m)] * along[k][(t, col)]).sum();
                    out[(oe[k] + r * ek + col, m)] = v;
                }
            }
        }
    }
    out
}

/// `Gamma(C)` truncated at level `truncation`.
pub fn gamma(c: &ChainComplex<i64>, truncation: usize, model: GammaModel) -> Result<TruncatedGamma> {
    if truncation > MAX_GAMMA_TRUNCATION {
        return Err(Error::Bound(format!("Gamma truncation {truncation} exceeds {MAX_GAMMA_TRUNCATION}")));
    }
    if c.degrees().any(|k| k < 0 && c.rank(k) > 0) {
        return Err(Error::NotApplicable("chain complex has nonzero negative degrees".into()));
    }
    c.check()?;
    let models = (0..=truncation + 1)
        .into_par_iter()
        .map(|n| SimplexModel::new(n, model))
        .collect::<Result<Vec<_>>>()?;
    let bases = (0..=truncation)
        .into_par_iter()
        .map(|n| chain_maps(&models[n], c, n))
        .collect::<Result<Vec<_>>>()?;
    let ranks: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    // Level n operators: faces Gamma_n -> Gamma_{n-1}, degeneracies
    // Gamma_n -> Gamma_{n+1}.
    let operators = (0..=truncation)
        .into_par_iter()
        .map(|n| -> Result<(Vec<ZMatrix>, Vec<ZMatrix>)> {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let along = (0..n)
                            .map(|k| models[n - 1].induced(&models[n], &coface(n, i), k))
                            .collect::<Result<Vec<_>>>()?;
                        let image = precompose(&bases[n], c, (&models[n], n), (&models[n - 1], n - 1), &along);
                        coordinates(&bases[n - 1], &image)
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let degeneracies = if n == truncation {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let along = (0..=n + 1)
                            .map(|k| models[n + 1].induced(&models[n], &codegeneracy(n, i), k))
                            .collect::<Result<Vec<_>>>()?;
                        let image = precompose(&bases[n], c, (&models[n], n), (&models[n + 1], n + 1), &along);
                        coordinates(&bases[n + 1], &image)
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            Ok((faces, degeneracies))
        })
        .collect::<Result<Vec<_>>>()?;
    let (faces, mut degeneracies): (Vec<_>, Vec<_>) = operators.into_iter().unzip();
    degeneracies.pop();
    let module = FinSimplicialModule::from_matrices(ranks, faces, degeneracies)?;
    Ok(TruncatedGamma {
        model,
        source: c.clone(),
        bases,
        module,
    })
}

/// One degree of a roundtrip comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripRow {
    pub degree: usize,
    pub rank_c: usize,
    pub rank_n: usize,
    /// Smith divisors of the boundary leaving this degree.
    pub snf_c: Vec<BigInt>,
    pub snf_n: Vec<BigInt>,
    /// Homology, for degrees below the truncation.
    pub homology: Option<(HomologyGroup, HomologyGroup)>,
}

impl RoundtripRow {
    pub fn ok(&self) -> bool {
        self.rank_c == self.rank_n
            && self.snf_c == self.snf_n
            && self.homology.as_ref().is_none_or(|(a, b)| a == b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripReport {
    pub model: GammaModel,
    pub truncation: usize,
    pub rows: Vec<RoundtripRow>,
    pub identities_ok: bool,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.identities_ok && self.rows.iter().all(RoundtripRow::ok)
    }
}

fn divisors(v: &[BigInt]) -> String {
    if v.is_empty() {
        return "()".into();
    }
    format!("({})", v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(", "))
}

impl fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "model {:?}, truncation {}, identities {}", self.model, self.truncation, if self.identities_ok { "ok" } else { "FAIL" })?;
        for r in &self.rows {
            write!(f, "degree {}: rank {} vs {}, snf {} vs {}", r.degree, r.rank_c, r.rank_n, divisors(&r.snf_c), divisors(&r.snf_n))?;
            if let Some((a, b)) = &r.homology {
                write!(f, ", H {a} vs {b}")?;
            }
            writeln!(f, " {}", if r.ok() { "ok" } else { "MISMATCH" })?;
        }
        Ok(())
    }
}

/// Builds `Gamma(C)`, normalizes it, and compares `N(Gamma(C))` with `C`
/// degree by degree up to the truncation.
pub fn roundtrip_check(c: &ChainComplex<i64>, truncation: usize, model: GammaModel) -> Result<RoundtripReport> {
    let g = gamma(c, truncation, model)?;
    let n = g.module.moore_complex()?;
    let hc = c.homology()?;
    let hn = n.homology()?;
    let get = |h: &BTreeMap<i64, HomologyGroup>, k: i64| h.get(&k).cloned().unwrap_or_else(|| HomologyGroup::free(0));
    let rows = (0..=truncation)
        .map(|k| {
            let d = k as i64;
            RoundtripRow {
                degree: k,
                rank_c: c.rank(d),
                rank_n: n.rank(d),
                snf_c: smith_normal_form(&c.boundary(d)).divisors,
                snf_n: smith_normal_form(&n.boundary(d)).divisors,
                homology: (k < truncation).then(|| (get(&hc, d), get(&hn, d))),
            }
        })
        .collect();
    Ok(RoundtripReport {
        model,
        truncation,
        rows,
        identities_ok: g.module.check_identities().ok(),
    })
}

/// A free complex in degrees `0..=length` with ranks at most `max_rank`.
/// Each boundary is a kernel basis of the previous one times a random
/// matrix, so `d^2 = 0` and torsion shows up.
pub fn random_complex(rng: &mut impl Rng, length: usize, max_rank: usize) -> Result<ChainComplex<i64>> {
    let ranks: Vec<usize> = (0..=length).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut maps: Vec<ZMatrix> = Vec::new();
    let mut previous: ZMatrix = Matrix::zeros(0, ranks[0]);
    for &rank in &ranks[1..] {
        let ker = kernel_basis(&previous).map_err(overflow)?;
        let coeffs = Matrix::from_rows(ker.cols(), rank, (0..ker.cols() * rank).map(|_| rng.gen_range(-3..=3)).collect());
        let d = ker.mul(&coeffs);
        previous = d.clone();
        maps.push(d);
    }
    ChainComplex::from_maps(0, &ranks, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn single(degree: usize, rank: usize) -> ChainComplex<i64> {
        let mut ranks = vec![0; degree + 1];
        ranks[degree] = rank;
        let maps = (1..=degree).map(|k| Matrix::zeros(ranks[k - 1], ranks[k])).collect();
        ChainComplex::from_maps(0, &ranks, maps).unwrap()
    }

    #[test]
    fn simplex_models() {
        let d0 = moore_of_simplex(0).unwrap();
        assert_eq!((d0.rank(0), d0.rank(1)), (1, 0));
        let d1 = moore_of_simplex(1).unwrap();
        assert_eq!((d1.rank(0), d1.rank(1)), (2, 1));
        for n in 0..=4 {
            for model in [GammaModel::Moore, GammaModel::Normalized] {
                let d = SimplexModel::new(n, model).unwrap();
                let ranks: Vec<usize> = (0..=n).map(|k| d.rank(k)).collect();
                let faces: Vec<usize> = (0..=n).map(|k| binomial(n + 1, k + 1)).collect();
                assert_eq!(ranks, faces);
                let h = d.complex.homology().unwrap();
                assert_eq!(h[&0], HomologyGroup::free(1));
                assert!((1..=n as i64).all(|k| h[&k].is_zero()));
            }
        }
        assert!(moore_of_simplex(6).is_err());
    }

    #[test]
    fn induced_maps_are_chain_maps() {
        for model in [GammaModel::Moore, GammaModel::Normalized] {
            let models: Vec<SimplexModel> = (0..=3).map(|n| SimplexModel::new(n, model).unwrap()).collect();
            for n in 1..=3 {
                for i in 0..=n {
                    let m: Vec<ZMatrix> = (0..n).map(|k| models[n - 1].induced(&models[n], &coface(n, i), k).unwrap()).collect();
                    for k in 1..n {
                        let lhs = models[n].complex.boundary(k as i64).mul(&m[k]);
                        let rhs = m[k - 1].mul(&models[n - 1].complex.boundary(k as i64));
                        assert_eq!(lhs, rhs, "{model:?} delta_{i} into level {n}, degree {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn constant_complex_gives_constant_module() {
        let g = gamma(&single(0, 1), 4, GammaModel::Moore).unwrap();
        assert_eq!(g.module.ranks(), [1, 1, 1, 1, 1]);
        for n in 1..=4 {
            for i in 0..=n {
                assert_eq!(g.module.face(n, i), &Matrix::identity(1));
            }
        }
        assert!(g.module.check_identities().ok());
    }

    /// Brute force over small integer images: every chain map found lies in
    /// the computed lattice, and together they span the same rank.
    #[test]
    fn degree_one_chain_maps_match_brute_force() {
        let c = single(1, 1);
        let d = SimplexModel::new(1, GammaModel::Moore).unwrap();
        let basis = chain_maps(&d, &c, 1).unwrap();
        let unknowns = basis.rows();
        assert_eq!(unknowns, 1);
        let g = gamma(&c, 2, GammaModel::Moore).unwrap();
        assert_eq!(g.module.rank(1), 1);
        // C_0 = 0 forces f_0 = 0, and then every f_1 commutes with the boundaries.
        let found: Vec<Vec<i64>> = (-3i64..=3).map(|f1| vec![f1]).collect();
        let span = Matrix::from_columns(unknowns, &found);
        assert_eq!(smith_normal_form(&span).rank(), basis.cols());
        let solver = crate::snf::LatticeSolver::new(&basis).unwrap();
        assert!(found.iter().all(|v| solver.solve(v).is_some()));
    }

    #[test]
    fn chain_maps_match_brute_force_on_a_small_complex() {
        // C = Z --2--> Z in degrees 1, 0; maps from D[1] (ranks 2, 1).
        let c = ChainComplex::from_maps(0, &[1, 1], vec![Matrix::from_rows(1, 1, vec![2])]).unwrap();
        let d = SimplexModel::new(1, GammaModel::Moore).unwrap();
        let basis = chain_maps(&d, &c, 1).unwrap();
        let (dc, dd) = (c.boundary(1), d.complex.boundary(1));
        let mut found = Vec::new();
        let box_ = -2i64..=2;
        for a in box_.clone() {
            for b in box_.clone() {
                for x in box_.clone() {
                    // f_0 = (a b), f_1 = (x); need dc * f_1 = f_0 * dd.
                    let lhs = dc[(0, 0)] * x;
                    let rhs = a * dd[(0, 0)] + b * dd[(1, 0)];
                    if lhs == rhs {
                        found.push(vec![a, b, x]);
                    }
                }
            }
        }
        let span = Matrix::from_columns(3, &found);
        assert_eq!(smith_normal_form(&span).rank(), basis.cols());
        assert_eq!(basis.cols(), 2);
        let solver = crate::snf::LatticeSolver::new(&basis).unwrap();
        assert!(found.iter().all(|v| solver.solve(v).is_some()));
    }

    #[test]
    fn times_two_roundtrip() {
        let c = ChainComplex::from_maps(0, &[1, 1], vec![Matrix::from_rows(1, 1, vec![2])]).unwrap();
        for model in [GammaModel::Moore, GammaModel::Normalized] {
            let r = roundtrip_check(&c, 3, model).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!((r.rows[0].rank_n, r.rows[1].rank_n), (1, 1));
            assert_eq!(r.rows[1].snf_n, vec![BigInt::from(2)]);
            assert_eq!(r.rows[0].homology.as_ref().unwrap().1.to_string(), "Z/2");
        }
    }

    #[test]
    fn zero_complex_roundtrip() {
        let c = ChainComplex::from_maps(0, &[0], vec![]).unwrap();
        let r = roundtrip_check(&c, 3, GammaModel::Moore).unwrap();
        assert!(r.passed());
        assert!(r.rows.iter().all(|row| row.rank_n == 0));
    }

    #[test]
    fn negative_degrees_rejected() {
        let c = ChainComplex::from_maps(-1, &[1], vec![]).unwrap();
        assert!(matches!(gamma(&c, 2, GammaModel::Moore), Err(Error::NotApplicable(_))));
        assert!(gamma(&single(0, 1), 5, GammaModel::Moore).is_err());
    }

    #[test]
    fn random_complexes_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..6 {
            let c = random_complex(&mut rng, 3, 3).unwrap();
            c.check().unwrap();
            for model in [GammaModel::Moore, GammaModel::Normalized] {
                let g = gamma(&c, 4, model).unwrap();
                assert!((0..=4).all(|n| g.module.rank(n) == g.expected_rank(n)));
                let r = roundtrip_check(&c, 4, model).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn gamma_is_simplicial(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_complex(&mut rng, 2, 2).unwrap();
            let g = gamma(&c, 3, GammaModel::Moore).unwrap();
            prop_assert!(g.module.check_identities().ok());
            let h = g.module.chain_complex().homology().unwrap();
            let hc = c.homology().unwrap();
            for k in 0..3i64 {
                let expect = hc.get(&k).cloned().unwrap_or_else(|| HomologyGroup::free(0));
                prop_assert_eq!(h.get(&k).cloned().unwrap_or_else(|| HomologyGroup::free(0)), expect);
            }
        }
    }
}
