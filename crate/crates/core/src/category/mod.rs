//! Finite categories, module-valued functors on them, and nerves.

mod cube;
mod subdivision;

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::HomologyGroup;
use crate::matrix::Matrix;
use crate::simplicial::{FinSimplicialModule, FinSimplicialSet};
use crate::simplicial::word::{Op, Word};
use crate::ZMatrix;

pub use cube::{
    cube_category, embed_cube, khovanov_homology_via_nerve, khovanov_simplex_functor, state_functor,
    CubeEmbedding,
};
pub use subdivision::{
    barycentric_subdivision, face_complex, random_functor, subdivision_complex, subdivision_theorem_check,
    FunctorKind, SubdivisionReport,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category with an explicit composition table.
#[derive(Debug, Clone)]
pub struct SmallCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    generators: Vec<usize>,
    factors: Vec<Option<Vec<usize>>>,
    hom: HashMap<(usize, usize), Vec<usize>>,
}

impl SmallCategory {
    /// `compose[(g, f)] = g . f` for every pair with `target(f) = source(g)`.
    /// Checks typing, identity laws and associativity.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let c = Self::assemble(objects, morphisms, identities, compose)?;
        c.validate()?;
        Ok(c)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let nobj = objects.len();
        if identities.len() != nobj
            || morphisms.iter().any(|m| m.source >= nobj || m.target >= nobj)
            || identities.iter().any(|&i| i >= morphisms.len())
        {
            return Err(Error::Category("objects, morphisms and identities disagree".into()));
        }
        let mut c = Self {
            objects,
            morphisms,
            identities,
            compose,
            generators: Vec::new(),
            factors: Vec::new(),
            hom: HashMap::new(),
        };
        for (k, m) in c.morphisms.iter().enumerate() {
            c.hom.entry((m.source, m.target)).or_default().push(k);
        }
        c.find_generators();
        Ok(c)
    }

    /// The poset category with a morphism `x -> y` whenever `arrow(x, y)`.
    pub fn from_poset(
        objects: Vec<String>,
        arrow: impl Fn(usize, usize) -> bool,
        name: impl Fn(usize, usize) -> String,
    ) -> Result<Self> {
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                if arrow(x, y) {
                    index.insert((x, y), morphisms.len());
                    morphisms.push(Morphism {
                        name: name(x, y),
                        source: x,
                        target: y,
                    });
                }
            }
        }
        let identities = (0..n)
            .map(|x| index.get(&(x, x)).copied().ok_or_else(|| Error::Category("relation is not reflexive".into())))
            .collect::<Result<Vec<_>>>()?;
        let mut compose = HashMap::new();
        for (&(x, y), &f) in &index {
            for z in 0..n {
                if let Some(&g) = index.get(&(y, z)) {
                    let h = index
                        .get(&(x, z))
                        .ok_or_else(|| Error::Category("relation is not transitive".into()))?;
                    compose.insert((g, f), *h);
                }
            }
        }
        Self::assemble(objects, morphisms, identities, compose)
    }

    /// Composition typing, identity laws and associativity.
    pub fn validate(&self) -> Result<()> {
        let ids = &self.identities;
        for (o, &i) in ids.iter().enumerate() {
            let m = &self.morphisms[i];
            if m.source != o || m.target != o {
                return Err(Error::Category(format!("identity of {} is not an endomorphism", self.objects[o])));
            }
        }
        let by_source = self.by_source();
        for (f, mf) in self.morphisms.iter().enumerate() {
            for &g in &by_source[mf.target] {
                let h = self.compose.get(&(g, f)).ok_or_else(|| {
                    Error::Category(format!("missing composite {} . {}", self.morphisms[g].name, mf.name))
                })?;
                let mh = &self.morphisms[*h];
                if mh.source != mf.source || mh.target != self.morphisms[g].target {
                    return Err(Error::Category(format!("composite {} has the wrong type", mh.name)));
                }
            }
            if self.compose[&(ids[mf.target], f)] != f || self.compose[&(f, ids[mf.source])] != f {
                return Err(Error::Category(format!("identity is not neutral on {}", mf.name)));
            }
        }
        let bad = (0..self.morphisms.len()).into_par_iter().find_any(|&f| {
            let mf = &self.morphisms[f];
            by_source[mf.target].iter().any(|&g| {
                let gf = self.compose[&(g, f)];
                by_source[self.morphisms[g].target].iter().any(|&h| {
                    self.compose[&(h, gf)] != self.compose[&(self.compose[&(h, g)], f)]
                })
            })
        });
        match bad {
            Some(f) => Err(Error::Category(format!("composition not associative at {}", self.morphisms[f].name))),
            None => Ok(()),
        }
    }

    fn by_source(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for (k, m) in self.morphisms.iter().enumerate() {
            out[m.source].push(k);
        }
        out
    }

    /// Generators are the non-identity morphisms that are not composites of
    /// two non-identity morphisms; every morphism reachable from them gets a
    /// shortest factorization.
    fn find_generators(&mut self) {
        let is_id: Vec<bool> = {
            let mut v = vec![false; self.morphisms.len()];
            for &i in &self.identities {
                v[i] = true;
            }
            v
        };
        let mut composite = vec![false; self.morphisms.len()];
        for (&(g, f), &h) in &self.compose {
            if !is_id[g] && !is_id[f] {
                composite[h] = true;
            }
        }
        self.generators = (0..self.morphisms.len()).filter(|&m| !is_id[m] && !composite[m]).collect();
        let mut factors: Vec<Option<Vec<usize>>> = vec![None; self.morphisms.len()];
        let mut queue = VecDeque::new();
        for &i in &self.identities {
            factors[i] = Some(Vec::new());
            queue.push_back(i);
        }
        let mut gens_from = vec![Vec::new(); self.objects.len()];
        for &g in &self.generators {
            gens_from[self.morphisms[g].source].push(g);
        }
        while let Some(m) = queue.pop_front() {
            for &g in &gens_from[self.morphisms[m].target] {
                let Some(&h) = self.compose.get(&(g, m)) else {
                    continue;
                };
                if factors[h].is_none() {
                    let mut w = factors[m].clone().unwrap();
                    w.push(g);
                    factors[h] = Some(w);
                    queue.push_back(h);
                }
            }
        }
        self.factors = factors;
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    /// `g . f`, when defined.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    /// The morphism `x -> y`, when there is exactly one.
    pub fn unique_arrow(&self, x: usize, y: usize) -> Option<usize> {
        match self.hom.get(&(x, y))?.as_slice() {
            [f] => Some(*f),
            _ => None,
        }
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.hom.get(&(x, y)).map_or(&[], Vec::as_slice)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Generators whose composite (first applied first) is `f`.
    pub fn factorization(&self, f: usize) -> Option<&[usize]> {
        self.factors[f].as_deref()
    }

    /// An object receiving exactly one morphism from every object.
    pub fn terminal(&self) -> Option<usize> {
        (0..self.objects.len()).find(|&t| (0..self.objects.len()).all(|x| self.hom(x, t).len() == 1))
    }

    /// Composable sequences `<f_0, ..., f_{n-1}>` with `f_k: A_k -> A_{k+1}`;
    /// level 0 lists the objects.
    pub fn composable(&self, n: usize) -> Vec<NerveSimplex> {
        let by_source = self.by_source();
        let mut level: Vec<NerveSimplex> = (0..self.objects.len())
            .map(|o| NerveSimplex {
                start: o,
                arrows: Vec::new(),
            })
            .collect();
        for _ in 0..n {
            level = level
                .iter()
                .flat_map(|s| {
                    let end = s.end(self);
                    by_source[end].iter().map(move |&f| {
                        let mut arrows = s.arrows.clone();
                        arrows.push(f);
                        NerveSimplex { start: s.start, arrows }
                    })
                })
                .collect();
        }
        level
    }
}

/// A nerve simplex: its first object and its arrows.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NerveSimplex {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl NerveSimplex {
    pub fn end(&self, c: &SmallCategory) -> usize {
        self.arrows.last().map_or(self.start, |&f| c.morphisms[f].target)
    }

    /// `A_k`.
    pub fn object(&self, c: &SmallCategory, k: usize) -> usize {
        if k == 0 {
            self.start
        } else {
            c.morphisms[self.arrows[k - 1]].target
        }
    }

    pub fn face(&self, c: &SmallCategory, k: usize) -> NerveSimplex {
        let n = self.arrows.len();
        let mut arrows = self.arrows.clone();
        if k == 0 {
            let f = arrows.remove(0);
            NerveSimplex {
                start: c.morphisms[f].target,
                arrows,
            }
        } else if k == n {
            arrows.pop();
            NerveSimplex {
                start: self.start,
                arrows,
            }
        } else {
            let g = arrows.remove(k);
            arrows[k - 1] = c.compose[&(g, self.arrows[k - 1])];
            NerveSimplex {
                start: self.start,
                arrows,
            }
        }
    }

    /// Inserts the identity of `A_k` at position `k`, for `0 <= k <= n`.
    pub fn degeneracy(&self, c: &SmallCategory, k: usize) -> NerveSimplex {
        let mut arrows = self.arrows.clone();
        arrows.insert(k, c.identities[self.object(c, k)]);
        NerveSimplex {
            start: self.start,
            arrows,
        }
    }

    pub fn name(&self, c: &SmallCategory) -> String {
        if self.arrows.is_empty() {
            return c.objects[self.start].clone();
        }
        let parts: Vec<&str> = self.arrows.iter().map(|&f| c.morphisms[f].name.as_str()).collect();
        format!("⟨{}⟩", parts.join(","))
    }
}

/// The nerve truncated at `truncation`, as a simplicial set.
pub fn nerve(c: &SmallCategory, truncation: usize) -> Result<FinSimplicialSet> {
    if truncation < 1 {
        return Err(Error::Range("nerve needs truncation at least 1".into()));
    }
    let levels = (0..=truncation).map(|n| c.composable(n)).collect();
    FinSimplicialSet::from_elements(
        levels,
        |s: &NerveSimplex, k| s.face(c, k),
        Some(&|s: &NerveSimplex, k| s.degeneracy(c, k)),
        |s| s.name(c),
    )
}

/// A functor to free abelian groups: a rank per object and matrices on
/// morphisms. Maps not given explicitly are composed along the category's
/// generator factorization.
#[derive(Debug, Clone)]
pub struct ModuleFunctor {
    ranks: Vec<usize>,
    maps: HashMap<usize, ZMatrix>,
    grading: Option<Vec<Vec<i64>>>,
}

impl ModuleFunctor {
    pub fn new(c: &SmallCategory, ranks: Vec<usize>, maps: HashMap<usize, ZMatrix>) -> Result<Self> {
        if ranks.len() != c.object_count() {
            return Err(Error::LengthMismatch {
                expected: c.object_count(),
                got: ranks.len(),
            });
        }
        for (&f, m) in &maps {
            let mf = c.morphism(f);
            if m.shape() != (ranks[mf.target], ranks[mf.source]) {
                return Err(Error::Functoriality(format!("matrix of {} has the wrong shape", mf.name)));
            }
        }
        for f in 0..c.morphism_count() {
            if !maps.contains_key(&f) && c.factorization(f).is_none() {
                return Err(Error::Functoriality(format!("no matrix for {}", c.morphism(f).name)));
            }
        }
        Ok(Self {
            ranks,
            maps,
            grading: None,
        })
    }

    /// The functor with every object sent to `Z^rank` and every morphism to
    /// the identity.
    pub fn constant(c: &SmallCategory, rank: usize) -> Self {
        let maps = (0..c.morphism_count()).map(|f| (f, Matrix::identity(rank))).collect();
        Self {
            ranks: vec![rank; c.object_count()],
            maps,
            grading: None,
        }
    }

    /// Attaches a degree to every basis element of every object. Maps must
    /// preserve degree.
    pub fn with_grading(mut self, grading: Vec<Vec<i64>>) -> Result<Self> {
        if grading.len() != self.ranks.len() || grading.iter().zip(&self.ranks).any(|(g, &r)| g.len() != r) {
            return Err(Error::LengthMismatch {
                expected: self.ranks.len(),
                got: grading.len(),
            });
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn rank(&self, object: usize) -> usize {
        self.ranks[object]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn grading(&self) -> Option<&[Vec<i64>]> {
        self.grading.as_deref()
    }

    pub fn map(&self, c: &SmallCategory, f: usize) -> ZMatrix {
        if let Some(m) = self.maps.get(&f) {
            return m.clone();
        }
        let mf = c.morphism(f);
        let word = c.factorization(f).expect("checked on construction");
        word.iter().fold(Matrix::identity(self.ranks[mf.source]), |acc, &g| self.map(c, g).mul(&acc))
    }

    /// `F(1) = 1` and `F(g . f) = F(g) F(f)` on every composable pair, and
    /// degree preservation when graded.
    pub fn check(&self, c: &SmallCategory) -> Result<()> {
        let maps: Vec<ZMatrix> = (0..c.morphism_count()).into_par_iter().map(|f| self.map(c, f)).collect();
        for o in 0..c.object_count() {
            if maps[c.identity(o)] != Matrix::identity(self.ranks[o]) {
                return Err(Error::Functoriality(format!("identity of {}", c.objects()[o])));
            }
        }
        let bad = c.compose.par_iter().find_any(|(&(g, f), &h)| maps[g].mul(&maps[f]) != maps[h]);
        if let Some((&(g, f), _)) = bad {
            return Err(Error::Functoriality(format!("F({} . {})", c.morphism(g).name, c.morphism(f).name)));
        }
        if let Some(gr) = &self.grading {
            for (f, m) in maps.iter().enumerate() {
                let mf = c.morphism(f);
                for (r, c2) in (0..m.rows()).flat_map(|r| (0..m.cols()).map(move |c2| (r, c2))) {
                    if m[(r, c2)] != 0 && gr[mf.target][r] != gr[mf.source][c2] {
                        return Err(Error::Functoriality(format!("{} does not preserve degree", mf.name)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Z F(Nerve C)`: basis pairs `(gamma, lambda)` with `lambda` a basis
/// element of `F(A_0)`. `d_0` pushes `lambda` along `F(f_0)`; the other
/// operators act on `gamma` alone.
pub fn nerve_module(c: &SmallCategory, f: &ModuleFunctor, truncation: usize) -> Result<FinSimplicialModule> {
    let levels: Vec<Vec<NerveSimplex>> = (0..=truncation).map(|n| c.composable(n)).collect();
    let index: Vec<HashMap<&NerveSimplex, usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(k, s)| (s, k)).collect()).collect();
    let offsets: Vec<Vec<usize>> = levels
        .iter()
        .map(|l| {
            let mut o = vec![0usize];
            for s in l {
                o.push(o.last().unwrap() + f.rank(s.start));
            }
            o
        })
        .collect();
    let ranks: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let maps: Vec<ZMatrix> = (0..c.morphism_count()).map(|m| f.map(c, m)).collect();
    let place = |n: usize, op: Op| -> ZMatrix {
        let (m, rows) = match op {
            Op::D(_) => (n - 1, ranks[n - 1]),
            Op::S(_) => (n + 1, ranks[n + 1]),
        };
        let mut out = Matrix::zeros(rows, ranks[n]);
        for (k, s) in levels[n].iter().enumerate() {
            let (t, push) = match op {
                Op::D(i) => (s.face(c, i), i == 0),
                Op::S(i) => (s.degeneracy(c, i), false),
            };
            let tk = index[m][&t];
            let r = f.rank(s.start);
            for l in 0..r {
                let col = offsets[n][k] + l;
                if push {
                    let g = &maps[s.arrows[0]];
                    for row in 0..g.rows() {
                        out[(offsets[m][tk] + row, col)] += g[(row, l)];
                    }
                } else {
                    out[(offsets[m][tk] + l, col)] += 1;
                }
            }
        }
        out
    };
    let faces = (0..=truncation)
        .map(|n| if n == 0 { Vec::new() } else { (0..=n).map(|i| place(n, Op::D(i))).collect() })
        .collect();
    let degeneracies = (0..truncation).map(|n| (0..=n).map(|i| place(n, Op::S(i))).collect()).collect();
    FinSimplicialModule::from_matrices(ranks, faces, degeneracies)
}

/// `H_*(C; F)` from `Z F(Nerve C)` truncated at `truncation`; degrees
/// `0..truncation` are returned.
pub fn functor_homology(
    c: &SmallCategory,
    f: &ModuleFunctor,
    truncation: usize,
) -> Result<BTreeMap<i64, HomologyGroup>> {
    f.check(c)?;
    let mut h = nerve_module(c, f, truncation)?.chain_complex().homology()?;
    h.retain(|&k, _| k < truncation as i64);
    Ok(h)
}

/// Cat[n]: the nonempty faces of `<0 ... n>` with the face maps and their
/// composites. A morphism is named by its face word in normal form,
/// indices relative to the source.
pub fn simplex_category(n: usize) -> Result<SmallCategory> {
    if n > 10 {
        return Err(Error::Bound(format!("Cat[{n}] is too large")));
    }
    let faces = simplex_faces(n);
    let names = faces.iter().map(|&m| face_name(m)).collect();
    SmallCategory::from_poset(
        names,
        |x, y| faces[y] & !faces[x] == 0,
        |x, y| {
            if x == y {
                return format!("1{}", face_name(faces[x]));
            }
            let removed: Vec<Op> = vertices(faces[x])
                .iter()
                .enumerate()
                .filter(|(_, &v)| faces[y] >> v & 1 == 0)
                .map(|(pos, _)| Op::D(pos))
                .collect();
            let w = Word(removed).normalize();
            w.0.iter().map(Op::to_string).collect::<Vec<_>>().join("")
        },
    )
}

/// Nonempty subsets of `0..=n` as bitmasks, by dimension then
/// lexicographically.
pub(crate) fn simplex_faces(n: usize) -> Vec<u32> {
    let mut faces: Vec<u32> = (1..1u32 << (n + 1)).collect();
    faces.sort_by_key(|&m| (m.count_ones(), vertices(m)));
    faces
}

pub(crate) fn vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|v| mask >> v & 1 == 1).collect()
}

pub(crate) fn face_name(mask: u32) -> String {
    let v = vertices(mask);
    let sep = if v.iter().any(|&x| x > 9) { "," } else { "" };
    format!("⟨{}⟩", v.iter().map(usize::to_string).collect::<Vec<_>>().join(sep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{standard_simplex, FinSimplicialModule};
    use std::collections::BTreeSet;

    fn chain_poset(k: usize) -> SmallCategory {
        SmallCategory::from_poset((0..k).map(|i| i.to_string()).collect(), |x, y| x <= y, |x, y| format!("{x}{y}"))
            .unwrap()
    }

    #[test]
    fn poset_categories_validate() {
        let c = chain_poset(3);
        c.validate().unwrap();
        assert_eq!(c.morphism_count(), 6);
        assert_eq!(c.generators().len(), 2);
        assert_eq!(c.terminal(), Some(2));
    }

    #[test]
    fn broken_composition_is_rejected() {
        let c = chain_poset(3);
        let mut table = c.compose.clone();
        let (f01, f12, f00) = (
            c.unique_arrow(0, 1).unwrap(),
            c.unique_arrow(1, 2).unwrap(),
            c.unique_arrow(0, 0).unwrap(),
        );
        table.insert((f12, f01), f00);
        let bad = SmallCategory::new(c.objects.clone(), c.morphisms.clone(), c.identities.clone(), table);
        assert!(matches!(bad, Err(Error::Category(_))));
        let mut missing = c.compose.clone();
        missing.remove(&(f12, f01));
        let bad = SmallCategory::new(c.objects.clone(), c.morphisms.clone(), c.identities.clone(), missing);
        assert!(matches!(bad, Err(Error::Category(_))));
    }

    #[test]
    fn nerve_of_chain_is_a_simplex() {
        // The nerve of 0 < 1 < 2 is Delta[2].
        let x = nerve(&chain_poset(3), 4).unwrap();
        let d2 = standard_simplex(2, 4).unwrap();
        assert_eq!(x.sizes(), d2.sizes());
        assert_eq!(x.nondegenerate_counts(), d2.nondegenerate_counts());
        assert!(x.check_identities().ok());
    }

    #[test]
    fn identity_five_on_chain_nerve() {
        let c = chain_poset(3);
        let x = nerve(&c, 8).unwrap();
        let lhs = Word(vec![Op::D(5), Op::S(3)]);
        let rhs = Word(vec![Op::S(3), Op::D(4)]);
        for g in 0..x.size(7) {
            assert_eq!(x.apply(&lhs, 7, g), x.apply(&rhs, 7, g));
        }
    }

    #[test]
    fn trivial_category_nerve() {
        let c = SmallCategory::from_poset(vec!["*".into()], |_, _| true, |_, _| "1".into()).unwrap();
        let x = nerve(&c, 4).unwrap();
        assert_eq!(x.sizes(), [1; 5]);
        assert_eq!(x.nondegenerate_counts(), [1, 0, 0, 0, 0]);
        let h = functor_homology(&c, &ModuleFunctor::constant(&c, 1), 4).unwrap();
        assert_eq!(h[&0], HomologyGroup::free(1));
        assert!((1..4).all(|k| h[&k].is_zero()));
    }

    #[test]
    fn simplex_categories() {
        let c0 = simplex_category(0).unwrap();
        assert_eq!((c0.object_count(), c0.morphism_count()), (1, 1));
        let c2 = simplex_category(2).unwrap();
        c2.validate().unwrap();
        assert_eq!(c2.object_count(), 7);
        assert_eq!(c2.generators().len(), 9);
        let top = c2.object_index("⟨012⟩").unwrap();
        let c2 = &c2;
        let pairs: BTreeSet<(String, String)> = c2
            .generators()
            .iter()
            .filter(|&&f| c2.morphism(f).source == top)
            .flat_map(|&f| {
                c2.generators()
                    .iter()
                    .filter(move |&&g| c2.morphism(g).source == c2.morphism(f).target)
                    .map(move |&g| (c2.morphism(f).name.clone(), c2.morphism(g).name.clone()))
            })
            .collect();
        let expected: BTreeSet<(String, String)> = [("d0", "d0"), ("d1", "d0"), ("d1", "d1"), ("d2", "d1"), ("d2", "d0"), ("d0", "d1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(pairs, expected);
        let f = c2.unique_arrow(top, c2.object_index("⟨1⟩").unwrap()).unwrap();
        assert_eq!(c2.morphism(f).name, "d0d2");
    }

    #[test]
    fn nerve_of_cat_one() {
        let c1 = simplex_category(1).unwrap();
        let x = nerve(&c1, 3).unwrap();
        assert!(x.check_identities().ok());
        let mut names: Vec<&str> = x.nondegenerate(1).iter().map(|&k| x.name(1, k)).collect();
        names.sort();
        assert_eq!(names, ["⟨d0⟩", "⟨d1⟩"]);
        assert_eq!(x.nondegenerate_counts(), [3, 2, 0, 0]);
    }

    #[test]
    fn constant_coefficients_on_cat_two() {
        let c2 = simplex_category(2).unwrap();
        let h = functor_homology(&c2, &ModuleFunctor::constant(&c2, 1), 4).unwrap();
        assert_eq!(h[&0], HomologyGroup::free(1));
        assert!((1..4).all(|k| h[&k].is_zero()));
    }

    #[test]
    fn nerve_module_is_simplicial() {
        let c1 = simplex_category(1).unwrap();
        let mut maps = HashMap::new();
        for f in c1.generators() {
            maps.insert(*f, Matrix::from_i64_rows(&[vec![2, 0], vec![1, 1]]));
        }
        let f = ModuleFunctor::new(&c1, vec![2; 3], maps).unwrap();
        f.check(&c1).unwrap();
        let m: FinSimplicialModule = nerve_module(&c1, &f, 3).unwrap();
        assert!(m.check_identities().ok());
    }

    #[test]
    fn non_functor_is_rejected() {
        let c = chain_poset(3);
        let mut maps = HashMap::new();
        for x in 0..3 {
            for y in x + 1..3 {
                maps.insert(c.unique_arrow(x, y).unwrap(), Matrix::from_i64_rows(&[vec![2]]));
            }
        }
        let f = ModuleFunctor::new(&c, vec![1; 3], maps).unwrap();
        assert!(matches!(functor_homology(&c, &f, 3), Err(Error::Functoriality(_))));
    }
}
