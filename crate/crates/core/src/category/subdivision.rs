//! Barycentric subdivision of a simplex and the three computations of
//! `H_*(Cat[n]; F)`: the nerve, the subdivision, and the faces of the
//! simplex itself.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;

use super::{face_name, functor_homology, simplex_category, simplex_faces, vertices, ModuleFunctor, SmallCategory};
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, HomologyGroup};
use crate::matrix::Matrix;
use crate::scalar::sign;
use crate::simplicial::FinSimplicialSet;
use crate::ZMatrix;

/// Largest simplex dimension accepted by [`barycentric_subdivision`].
pub const MAX_SUBDIVISION: usize = 5;

/// Strictly decreasing chains `sigma_0 > ... > sigma_k` of nonempty faces.
fn chains(n: usize, k: usize) -> Vec<Vec<u32>> {
    let faces = simplex_faces(n);
    let mut level: Vec<Vec<u32>> = faces.iter().map(|&f| vec![f]).collect();
    for _ in 0..k {
        level = level
            .iter()
            .flat_map(|c| {
                let last = *c.last().unwrap();
                faces.iter().filter(move |&&f| f != last && f & !last == 0).map(move |&f| {
                    let mut c2 = c.clone();
                    c2.push(f);
                    c2
                })
            })
            .collect();
    }
    level
}

fn chain_name(c: &[u32]) -> String {
    c.iter().map(|&m| face_name(m)).collect::<Vec<_>>().join(">")
}

/// `Subdiv(nabla[n])`: chains of `k + 1` nested faces in level `k`, face
/// maps deleting an entry; no degeneracies.
pub fn barycentric_subdivision(n: usize) -> Result<FinSimplicialSet> {
    if n > MAX_SUBDIVISION {
        return Err(Error::Bound(format!("subdivision of a {n}-simplex is too large")));
    }
    let levels = (0..=n).map(|k| chains(n, k)).collect();
    FinSimplicialSet::from_elements(
        levels,
        |c: &Vec<u32>, i| {
            let mut c2 = c.clone();
            c2.remove(i);
            c2
        },
        None,
        |c| chain_name(c),
    )
}

fn check_simplex_functor(n: usize, c: &SmallCategory, f: &ModuleFunctor) -> Result<()> {
    if c.object_count() != (1 << (n + 1)) - 1 || f.ranks().len() != c.object_count() {
        return Err(Error::LengthMismatch {
            expected: (1 << (n + 1)) - 1,
            got: f.ranks().len(),
        });
    }
    Ok(())
}

/// Basis elements of `F(object)` of degree `grade` (all when `None`).
fn graded_basis(f: &ModuleFunctor, object: usize, grade: Option<i64>) -> Vec<usize> {
    match (grade, f.grading()) {
        (Some(j), Some(g)) => (0..f.rank(object)).filter(|&b| g[object][b] == j).collect(),
        _ => (0..f.rank(object)).collect(),
    }
}

/// `F(nabla[n])`: `C_k = sum over k-faces of F(sigma)` with
/// `sum_i (-1)^i F(d_i)`, optionally restricted to one degree of a graded
/// functor.
pub fn face_complex(n: usize, c: &SmallCategory, f: &ModuleFunctor, grade: Option<i64>) -> Result<ChainComplex<i64>> {
    check_simplex_functor(n, c, f)?;
    let faces = simplex_faces(n);
    let by_mask: HashMap<u32, usize> = faces.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let bases: Vec<Vec<usize>> = (0..faces.len()).map(|o| graded_basis(f, o, grade)).collect();
    let mut offset = vec![0usize; faces.len()];
    let mut ranks = vec![0usize; n + 1];
    for (o, &m) in faces.iter().enumerate() {
        let k = m.count_ones() as usize - 1;
        offset[o] = ranks[k];
        ranks[k] += bases[o].len();
    }
    let mut maps: Vec<ZMatrix> = (1..=n).map(|k| Matrix::zeros(ranks[k - 1], ranks[k])).collect();
    for (o, &m) in faces.iter().enumerate() {
        let k = m.count_ones() as usize - 1;
        if k == 0 || bases[o].is_empty() {
            continue;
        }
        for (i, &v) in vertices(m).iter().enumerate() {
            let t = by_mask[&(m & !(1 << v))];
            if bases[t].is_empty() {
                continue;
            }
            let g = f.map(c, c.unique_arrow(o, t).expect("face map"));
            let s: i64 = sign(i);
            for (cc, &col) in bases[o].iter().enumerate() {
                for (rr, &row) in bases[t].iter().enumerate() {
                    maps[k - 1][(offset[t] + rr, offset[o] + cc)] += s * g[(row, col)];
                }
            }
        }
    }
    ChainComplex::from_maps(0, &ranks, maps)
}

/// `F(Subdiv(nabla[n]))`: a chain `sigma_0 > ... > sigma_k` carries
/// `F(sigma_0)`; `d_0` pushes along `F(sigma_0 -> sigma_1)`.
pub fn subdivision_complex(n: usize, c: &SmallCategory, f: &ModuleFunctor) -> Result<ChainComplex<i64>> {
    check_simplex_functor(n, c, f)?;
    let faces = simplex_faces(n);
    let by_mask: HashMap<u32, usize> = faces.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let levels: Vec<Vec<Vec<u32>>> = (0..=n).map(|k| chains(n, k)).collect();
    let index: Vec<HashMap<&Vec<u32>, usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(k, ch)| (ch, k)).collect()).collect();
    let offsets: Vec<Vec<usize>> = levels
        .iter()
        .map(|l| {
            let mut o = vec![0usize];
            for ch in l {
                o.push(o.last().unwrap() + f.rank(by_mask[&ch[0]]));
            }
            o
        })
        .collect();
    let ranks: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let mut maps: Vec<ZMatrix> = (1..=n).map(|k| Matrix::zeros(ranks[k - 1], ranks[k])).collect();
    for k in 1..=n {
        for (e, ch) in levels[k].iter().enumerate() {
            let src = by_mask[&ch[0]];
            for i in 0..=k {
                let mut t = ch.clone();
                t.remove(i);
                let te = index[k - 1][&t];
                let s: i64 = sign(i);
                if i == 0 {
                    let g = f.map(c, c.unique_arrow(src, by_mask[&ch[1]]).expect("face map"));
                    for col in 0..g.cols() {
                        for row in 0..g.rows() {
                            maps[k - 1][(offsets[k - 1][te] + row, offsets[k][e] + col)] += s * g[(row, col)];
                        }
                    }
                } else {
                    for l in 0..f.rank(src) {
                        maps[k - 1][(offsets[k - 1][te] + l, offsets[k][e] + l)] += s;
                    }
                }
            }
        }
    }
    ChainComplex::from_maps(0, &ranks, maps)
}

/// The three homologies, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionReport {
    pub n: usize,
    /// `(degree, nerve, subdivision, faces)`.
    pub rows: Vec<(i64, HomologyGroup, HomologyGroup, HomologyGroup)>,
}

impl SubdivisionReport {
    pub fn agree(&self) -> bool {
        self.rows.iter().all(|(_, a, b, c)| a == b && b == c)
    }

    pub fn mismatches(&self) -> Vec<i64> {
        self.rows.iter().filter(|(_, a, b, c)| !(a == b && b == c)).map(|r| r.0).collect()
    }
}

impl fmt::Display for SubdivisionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a, b, c) in &self.rows {
            let mark = if a == b && b == c { "ok" } else { "MISMATCH" };
            writeln!(f, "H_{k}: nerve {a}, subdivision {b}, faces {c} {mark}")?;
        }
        Ok(())
    }
}

/// Computes `H_*(Cat[n]; F)` from the nerve (truncated one level above
/// `n`), from `F(Subdiv(nabla[n]))` and from `F(nabla[n])`, and compares
/// them in degrees `0..=n`.
pub fn subdivision_theorem_check(n: usize, f: &ModuleFunctor) -> Result<SubdivisionReport> {
    let c = simplex_category(n)?;
    check_simplex_functor(n, &c, f)?;
    let a = functor_homology(&c, f, n + 1)?;
    let b = subdivision_complex(n, &c, f)?.homology()?;
    let cc = face_complex(n, &c, f, None)?.homology()?;
    let get = |h: &BTreeMap<i64, HomologyGroup>, k: i64| h.get(&k).cloned().unwrap_or_else(|| HomologyGroup::free(0));
    let rows = (0..=n as i64).map(|k| (k, get(&a, k), get(&b, k), get(&cc, k))).collect();
    Ok(SubdivisionReport { n, rows })
}

/// Shapes of random functors on Cat[n].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctorKind {
    /// `Z^rank` everywhere; removing vertex `v` acts by `a_v + b_v R` for
    /// one fixed matrix `R`, so the maps commute.
    Scalar { rank: usize },
    /// `Z^(vertices of sigma)`; removing `v` drops coordinate `v` and scales
    /// coordinate `u` by `c(u, v)`.
    VertexProjection,
}

/// A random functor on `c = Cat[n]` with small entries.
pub fn random_functor(c: &SmallCategory, n: usize, kind: FunctorKind, rng: &mut impl Rng) -> Result<ModuleFunctor> {
    let faces = simplex_faces(n);
    if c.object_count() != faces.len() {
        return Err(Error::LengthMismatch {
            expected: faces.len(),
            got: c.object_count(),
        });
    }
    let removed = |g: usize| {
        let m = c.morphism(g);
        (faces[m.source] & !faces[m.target]).trailing_zeros() as usize
    };
    let mut small = || rng.gen_range(-2i64..=2);
    match kind {
        FunctorKind::Scalar { rank } => {
            let r = Matrix::from_rows(rank, rank, (0..rank * rank).map(|_| small()).collect());
            let per_vertex: Vec<ZMatrix> = (0..=n)
                .map(|_| {
                    let (a, b) = (small(), small());
                    Matrix::identity(rank).scale(&a).add(&r.scale(&b))
                })
                .collect();
            let maps = c.generators().iter().map(|&g| (g, per_vertex[removed(g)].clone())).collect();
            ModuleFunctor::new(c, vec![rank; faces.len()], maps)
        }
        FunctorKind::VertexProjection => {
            let scale: Vec<Vec<i64>> = (0..=n).map(|_| (0..=n).map(|_| small()).collect()).collect();
            let ranks: Vec<usize> = faces.iter().map(|m| m.count_ones() as usize).collect();
            let maps = c
                .generators()
                .iter()
                .map(|&g| {
                    let m = c.morphism(g);
                    let v = removed(g);
                    let (src, tgt) = (vertices(faces[m.source]), vertices(faces[m.target]));
                    let mut mat = Matrix::zeros(tgt.len(), src.len());
                    for (row, u) in tgt.iter().enumerate() {
                        let col = src.iter().position(|x| x == u).unwrap();
                        mat[(row, col)] = scale[*u][v];
                    }
                    (g, mat)
                })
                .collect();
            ModuleFunctor::new(c, ranks, maps)
        }
    }
}
