//! Seeded corpora for randomized checks. The seed alone determines every
//! output.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::link::{catalog, LinkDiagram};
use crate::moves::{apply_move, enumerate_moves, Move, MoveKind};
use crate::simplicial::{generated_subset, FinSimplicialSet};

/// Crossing limit for generated diagrams.
pub const MAX_FUZZ_CROSSINGS: usize = 8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Moves applicable to `d` whose result stays within `max` crossings.
fn moves_within(d: &LinkDiagram, max: usize) -> Vec<Move> {
    enumerate_moves(d)
        .into_iter()
        .filter(|m| d.crossing_count() as i64 + m.crossing_delta() <= max as i64)
        .collect()
}

/// A catalog diagram, possibly mirrored, followed by a short random walk of
/// Reidemeister moves.
pub fn random_diagram(rng: &mut impl Rng, max_crossings: usize) -> LinkDiagram {
    let seeds: Vec<LinkDiagram> = catalog::seeds().into_iter().filter(|d| d.crossing_count() <= max_crossings).collect();
    let mut d = seeds.choose(rng).expect("the unknot is always small enough").clone();
    if rng.gen_bool(0.5) {
        d = d.mirror();
    }
    for _ in 0..rng.gen_range(0..6) {
        let options = moves_within(&d, max_crossings);
        let Some(m) = options.choose(rng) else { break };
        d = apply_move(&d, m).expect("enumerated moves apply");
    }
    d
}

pub fn diagram_corpus(seed: u64, count: usize, max_crossings: usize) -> Vec<LinkDiagram> {
    let mut r = rng(seed);
    (0..count).map(|_| random_diagram(&mut r, max_crossings)).collect()
}

/// A diagram, a move of the requested kind, and the result.
#[derive(Debug, Clone)]
pub struct MovePair {
    pub before: LinkDiagram,
    pub movement: Move,
    pub after: LinkDiagram,
}

/// `count` move pairs cycling through R1, R2 and R3. Diagrams are drawn
/// until one admits a move of the wanted kind.
pub fn move_pairs(seed: u64, count: usize, max_crossings: usize) -> Vec<MovePair> {
    let mut r = rng(seed);
    let kinds = [MoveKind::R1, MoveKind::R2, MoveKind::R3];
    (0..count)
        .map(|k| {
            let want = kinds[k % 3];
            loop {
                let d = random_diagram(&mut r, max_crossings);
                let options: Vec<Move> = moves_within(&d, max_crossings).into_iter().filter(|m| m.kind() == want).collect();
                if let Some(m) = options.choose(&mut r) {
                    let after = apply_move(&d, m).expect("enumerated moves apply");
                    break MovePair {
                        before: d,
                        movement: *m,
                        after,
                    };
                }
            }
        })
        .collect()
}

/// A subcomplex of `Delta[n]` generated by a few random faces, `n <= 3`.
pub fn random_presentation(rng: &mut impl Rng, truncation: usize) -> FinSimplicialSet {
    let n = rng.gen_range(0..=3);
    let facets: Vec<Vec<usize>> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut f: Vec<usize> = (0..=n).filter(|_| rng.gen_bool(0.6)).collect();
            if f.is_empty() {
                f.push(rng.gen_range(0..=n));
            }
            f
        })
        .collect();
    generated_subset(n, &facets, truncation).expect("vertices lie in [n]")
}
