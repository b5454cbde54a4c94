//! The cube of smoothings, its embedding in Cat[n], and Khovanov homology
//! computed from the face complex of the embedded functor.
//!
//! A cube object is a word with bit `c` set when crossing `c` is
//! B-smoothed. The embedding sends a word to the face of `<0 1 ... n>`
//! made of vertex 0 and vertex `c + 1` for every A at crossing `c`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::subdivision::face_complex;
use super::{simplex_category, simplex_faces, ModuleFunctor, SmallCategory};
use crate::bracket::BracketState;
use crate::error::{Error, Result};
use crate::homology::BigradedHomology;
use crate::khovanov::{all_states, edge_map};
use crate::link::LinkDiagram;
use crate::matrix::Matrix;
use crate::ZMatrix;

const MAX_CUBE: usize = 10;

fn word_name(n: usize, w: usize) -> String {
    (0..n).map(|c| if w >> c & 1 == 1 { 'B' } else { 'A' }).collect()
}

/// `{A, B}^n` with an arrow `v -> w` whenever every B of `v` is a B of `w`.
/// Object `w` has index `w`.
pub fn cube_category(n: usize) -> Result<SmallCategory> {
    if n > MAX_CUBE {
        return Err(Error::Bound(format!("{n}-cube is too large")));
    }
    let objects = (0..1usize << n).map(|w| word_name(n, w)).collect();
    SmallCategory::from_poset(
        objects,
        |x, y| x & !y == 0,
        |x, y| {
            if x == y {
                format!("1{}", word_name(n, x))
            } else {
                format!("{}>{}", word_name(n, x), word_name(n, y))
            }
        },
    )
}

/// Face mask of `<0 1 ... n>` assigned to cube word `w`.
pub fn face_of_word(n: usize, w: usize) -> u32 {
    (0..n).filter(|c| w >> c & 1 == 0).fold(1u32, |m, c| m | 1 << (c + 1))
}

/// The cube category, Cat[n], and the functor between them.
#[derive(Debug, Clone)]
pub struct CubeEmbedding {
    pub n: usize,
    pub cube: SmallCategory,
    pub simplex: SmallCategory,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
    /// Cat[n] object index to cube word, for faces containing vertex 0.
    words: HashMap<usize, usize>,
}

pub fn embed_cube(n: usize) -> Result<CubeEmbedding> {
    let cube = cube_category(n)?;
    let simplex = simplex_category(n)?;
    let faces = simplex_faces(n);
    let by_mask: HashMap<u32, usize> = faces.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let objects: Vec<usize> = (0..1usize << n).map(|w| by_mask[&face_of_word(n, w)]).collect();
    let morphisms = cube
        .morphisms()
        .iter()
        .map(|m| {
            simplex
                .unique_arrow(objects[m.source], objects[m.target])
                .ok_or_else(|| Error::Category(format!("no face map for {}", m.name)))
        })
        .collect::<Result<Vec<_>>>()?;
    let words = objects.iter().enumerate().map(|(w, &o)| (o, w)).collect();
    Ok(CubeEmbedding {
        n,
        cube,
        simplex,
        objects,
        morphisms,
        words,
    })
}

impl CubeEmbedding {
    pub fn object(&self, w: usize) -> usize {
        self.objects[w]
    }

    pub fn morphism(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    /// Cube word of a Cat[n] object, for faces containing vertex 0.
    pub fn word(&self, object: usize) -> Option<usize> {
        self.words.get(&object).copied()
    }

    /// `<*AAB>` notation for a cube word.
    pub fn star_name(&self, w: usize) -> String {
        format!("⟨*{}⟩", word_name(self.n, w))
    }

    /// Removing vertex `v` from the face of `w`: vertex 0 leaves the image
    /// (`None`), vertex `c + 1` turns the A at crossing `c` into a B.
    pub fn vertex_face(&self, w: usize, v: usize) -> Option<usize> {
        if v == 0 || v > self.n || w >> (v - 1) & 1 == 1 {
            return None;
        }
        Some(w | 1 << (v - 1))
    }

    /// Injective on objects, generators to generators, and compatible with
    /// composition on every composable pair.
    pub fn check(&self) -> Result<()> {
        let mut seen = self.objects.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.objects.len() {
            return Err(Error::Functoriality("embedding is not injective on objects".into()));
        }
        for &g in self.cube.generators() {
            if !self.simplex.generators().contains(&self.morphisms[g]) {
                return Err(Error::Functoriality(format!("{} is not sent to a face map", self.cube.morphism(g).name)));
            }
        }
        let by_source = self.cube.by_source();
        for f in 0..self.cube.morphism_count() {
            for &g in &by_source[self.cube.morphism(f).target] {
                let gf = self.cube.compose(g, f).expect("composable");
                if self.simplex.compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[gf]) {
                    return Err(Error::Functoriality(format!(
                        "composite {} . {}",
                        self.cube.morphism(g).name,
                        self.cube.morphism(f).name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Generating squares `(w, c1, c2)` with `c1 < c2` both A in `w`.
    pub fn squares(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        (0..1usize << n)
            .flat_map(|w| {
                (0..n).flat_map(move |c1| (c1 + 1..n).map(move |c2| (w, c1, c2)))
            })
            .filter(|&(w, c1, c2)| w >> c1 & 1 == 0 && w >> c2 & 1 == 0)
            .collect()
    }

    /// Every square of the cube still commutes after embedding.
    pub fn squares_commute(&self) -> bool {
        self.squares().iter().all(|&(w, c1, c2)| {
            let arrow = |x: usize, y: usize| self.cube.unique_arrow(x, y).map(|f| self.morphisms[f]);
            let (a, b, top) = (w | 1 << c1, w | 1 << c2, w | 1 << c1 | 1 << c2);
            let via_a = self.simplex.compose(arrow(a, top).unwrap(), arrow(w, a).unwrap());
            let via_b = self.simplex.compose(arrow(b, top).unwrap(), arrow(w, b).unwrap());
            via_a.is_some() && via_a == via_b
        })
    }
}

fn generator_crossing(cube: &SmallCategory, g: usize) -> (usize, usize, usize) {
    let m = cube.morphism(g);
    let c = (m.source ^ m.target).trailing_zeros() as usize;
    (m.source, m.target, c)
}

fn edge_matrix(d: &LinkDiagram, states: &[BracketState], w: usize, c: usize) -> ZMatrix {
    let (src, tgt) = (&states[w], &states[w | 1 << c]);
    let mut m = Matrix::zeros(1 << tgt.loop_count(), 1 << src.loop_count());
    for labels in 0..1u64 << src.loop_count() {
        for (l2, coeff) in edge_map(d, src, tgt, c, labels) {
            m[(l2 as usize, labels as usize)] += coeff;
        }
    }
    m
}

fn state_grading(states: &[BracketState], w: usize) -> Vec<i64> {
    let s = &states[w];
    (0..1u64 << s.loop_count())
        .map(|labels| s.b_count() as i64 + s.loop_count() as i64 - 2 * labels.count_ones() as i64)
        .collect()
}

/// The state functor on the cube: `V^(loops)` at each state, the Frobenius
/// multiplication or comultiplication on each edge. Graded by `j`.
pub fn state_functor(d: &LinkDiagram, cube: &SmallCategory) -> Result<ModuleFunctor> {
    let n = d.crossing_count();
    if cube.object_count() != 1 << n {
        return Err(Error::LengthMismatch {
            expected: 1 << n,
            got: cube.object_count(),
        });
    }
    let states = all_states(d);
    let ranks = states.iter().map(|s| 1usize << s.loop_count()).collect();
    let maps: HashMap<usize, ZMatrix> = cube
        .generators()
        .par_iter()
        .map(|&g| {
            let (w, _, c) = generator_crossing(cube, g);
            (g, edge_matrix(d, &states, w, c))
        })
        .collect();
    let grading = (0..1 << n).map(|w| state_grading(&states, w)).collect();
    ModuleFunctor::new(cube, ranks, maps)?.with_grading(grading)
}

/// Every generating square of the cube commutes under `f`.
pub fn check_cube_squares(emb: &CubeEmbedding, f: &ModuleFunctor) -> Result<()> {
    let bad = emb.squares().into_par_iter().find_any(|&(w, c1, c2)| {
        let arrow = |x: usize, y: usize| f.map(&emb.cube, emb.cube.unique_arrow(x, y).unwrap());
        let (a, b, top) = (w | 1 << c1, w | 1 << c2, w | 1 << c1 | 1 << c2);
        arrow(a, top).mul(&arrow(w, a)) != arrow(b, top).mul(&arrow(w, b))
    });
    match bad {
        Some((w, c1, c2)) => Err(Error::Functoriality(format!(
            "square at {} through crossings {c1}, {c2}",
            emb.star_name(w)
        ))),
        None => Ok(()),
    }
}

/// The state functor moved onto Cat[n] along the embedding, zero on faces
/// without vertex 0.
pub fn khovanov_simplex_functor(d: &LinkDiagram, emb: &CubeEmbedding) -> Result<ModuleFunctor> {
    if emb.n != d.crossing_count() {
        return Err(Error::LengthMismatch {
            expected: emb.n,
            got: d.crossing_count(),
        });
    }
    let cube_f = state_functor(d, &emb.cube)?;
    check_cube_squares(emb, &cube_f)?;
    let objects = emb.simplex.object_count();
    let ranks: Vec<usize> = (0..objects).map(|o| emb.word(o).map_or(0, |w| cube_f.rank(w))).collect();
    let grading: Vec<Vec<i64>> = (0..objects)
        .map(|o| emb.word(o).map_or_else(Vec::new, |w| cube_f.grading().unwrap()[w].clone()))
        .collect();
    let maps: HashMap<usize, ZMatrix> = emb
        .simplex
        .generators()
        .iter()
        .map(|&g| {
            let m = emb.simplex.morphism(g);
            let mat = match (emb.word(m.source), emb.word(m.target)) {
                (Some(v), Some(w)) => cube_f.map(&emb.cube, emb.cube.unique_arrow(v, w).unwrap()),
                _ => Matrix::zeros(ranks[m.target], ranks[m.source]),
            };
            (g, mat)
        })
        .collect();
    ModuleFunctor::new(&emb.simplex, ranks, maps)?.with_grading(grading)
}

/// Largest crossing number accepted by [`khovanov_homology_via_nerve`].
pub const MAX_NERVE_CROSSINGS: usize = 8;

/// Khovanov homology as the homology of the face complex of the embedded
/// state functor, one quantum degree at a time. Face-complex degree `k`
/// (the number of A-smoothings) is homological degree `i = n - k`.
pub fn khovanov_homology_via_nerve(d: &LinkDiagram) -> Result<BigradedHomology> {
    let n = d.crossing_count();
    if n > MAX_NERVE_CROSSINGS {
        return Err(Error::Bound(format!(
            "{n} crossings exceed the nerve route limit of {MAX_NERVE_CROSSINGS}"
        )));
    }
    let emb = embed_cube(n)?;
    emb.check()?;
    let f = khovanov_simplex_functor(d, &emb)?;
    let mut js: Vec<i64> = f.grading().unwrap().iter().flatten().copied().collect();
    js.sort_unstable();
    js.dedup();
    let per_j = js
        .into_par_iter()
        .map(|j| {
            let cx = face_complex(n, &emb.simplex, &f, Some(j))?;
            let h = cx.homology()?;
            Ok(h.into_iter()
                .filter(|(k, _)| cx.rank(*k) > 0)
                .map(|(k, g)| ((n as i64 - k, j), g))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let groups: BTreeMap<(i64, i64), _> = per_j.into_iter().flatten().collect();
    let (n_plus, n_minus) = d.crossing_signs();
    Ok(BigradedHomology {
        n_plus,
        n_minus,
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khovanov::khovanov_homology;
    use crate::link::catalog;

    #[test]
    fn cube_counts() {
        for n in 1..=4usize {
            let c = cube_category(n).unwrap();
            assert_eq!(c.morphism_count(), 3usize.pow(n as u32));
            assert_eq!(c.generators().len(), n << (n - 1));
            let e = embed_cube(n).unwrap();
            let squares = if n >= 2 { n * (n - 1) / 2 * (1 << (n - 2)) } else { 0 };
            assert_eq!(e.squares().len(), squares);
        }
    }

    #[test]
    fn embedding_rules() {
        let e = embed_cube(3).unwrap();
        e.check().unwrap();
        assert!(e.squares_commute());
        assert_eq!(e.squares().len(), 6);
        let top = e.object(0);
        assert_eq!(e.simplex.objects()[top], "⟨0123⟩");
        assert_eq!(e.star_name(0), "⟨*AAA⟩");
        let bba = 0b011;
        assert_eq!(e.vertex_face(bba, 3).map(|w| e.star_name(w)), Some("⟨*BBB⟩".to_string()));
        assert_eq!(e.vertex_face(0, 1).map(|w| e.star_name(w)), Some("⟨*BAA⟩".to_string()));
        assert_eq!(e.vertex_face(0, 0), None);
        let gen_images: std::collections::BTreeSet<usize> =
            e.cube.generators().iter().map(|&g| e.morphism(g)).collect();
        assert_eq!(gen_images.len(), e.cube.generators().len());
    }

    #[test]
    fn state_functor_commutes() {
        for d in [catalog::trefoil(), catalog::figure_eight(), catalog::hopf()] {
            let e = embed_cube(d.crossing_count()).unwrap();
            let f = state_functor(&d, &e.cube).unwrap();
            check_cube_squares(&e, &f).unwrap();
        }
        let e = embed_cube(3).unwrap();
        let f = khovanov_simplex_functor(&catalog::trefoil(), &e).unwrap();
        f.check(&e.simplex).unwrap();
    }

    #[test]
    fn nerve_route_matches_direct() {
        for d in [
            catalog::unknot(),
            catalog::curl_positive(),
            catalog::curl_negative(),
            catalog::hopf(),
            catalog::trefoil(),
            catalog::figure_eight(),
        ] {
            let direct = khovanov_homology(&d).unwrap();
            let nerve = khovanov_homology_via_nerve(&d).unwrap();
            assert_eq!(direct.nonzero_shifted(), nerve.nonzero_shifted(), "{d}");
        }
        let u = khovanov_homology_via_nerve(&catalog::unknot()).unwrap();
        let keys: Vec<(i64, i64)> = u.nonzero_shifted().keys().copied().collect();
        assert_eq!(keys, [(0, -1), (0, 1)]);
    }
}
