//! Reidemeister moves on PD diagrams.
//!
//! Before a move every label `l` is scaled to the key `16 * l`; arcs created
//! by splitting `l` receive keys `16 * l + 1`, `16 * l + 2` in orientation
//! order, and arcs merged by a removal keep the smallest key. Canonical
//! relabelling afterwards preserves the crossing order, so adding and then
//! removing at the matching site restores the diagram exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::link::{canonicalize, opposite, LinkDiagram, Sign};

const SCALE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    /// Adds a kink on `arc`, or on a free circle when `arc` is `None`.
    R1Add {
        arc: Option<usize>,
        positive: bool,
        under_first: bool,
    },
    /// Removes the kink whose loop is `arc`.
    R1Remove { arc: usize },
    /// Pushes `over` across `under` through the first face they share.
    R2Add { over: usize, under: usize },
    /// Removes the bigon bounded by `over` and `under`.
    R2Remove { over: usize, under: usize },
    /// Slides across the triangle bounded by the three arcs.
    R3 {
        under: usize,
        middle: usize,
        over: usize,
    },
}

/// Coarse move type, for coverage accounting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1,
    R2,
    R3,
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Add { .. } | Move::R1Remove { .. } => MoveKind::R1,
            Move::R2Add { .. } | Move::R2Remove { .. } => MoveKind::R2,
            Move::R3 { .. } => MoveKind::R3,
        }
    }

    pub fn crossing_delta(&self) -> i64 {
        match self {
            Move::R1Add { .. } => 1,
            Move::R1Remove { .. } => -1,
            Move::R2Add { .. } => 2,
            Move::R2Remove { .. } => -2,
            Move::R3 { .. } => 0,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::R1Add {
                arc,
                positive,
                under_first,
            } => {
                let s = if positive { '+' } else { '-' };
                let first = if under_first { "under" } else { "over" };
                match arc {
                    Some(a) => write!(f, "R1{s} add on {a} ({first} first)"),
                    None => write!(f, "R1{s} add on circle ({first} first)"),
                }
            }
            Move::R1Remove { arc } => write!(f, "R1 remove loop {arc}"),
            Move::R2Add { over, under } => write!(f, "R2 add {over} over {under}"),
            Move::R2Remove { over, under } => write!(f, "R2 remove {over} over {under}"),
            Move::R3 {
                under,
                middle,
                over,
            } => write!(f, "R3 on ({under},{middle},{over})"),
        }
    }
}

fn scaled(d: &LinkDiagram) -> Vec<[usize; 4]> {
    d.crossings()
        .iter()
        .map(|x| x.map(|l| SCALE * l))
        .collect()
}

fn set_slot(raw: &mut [[usize; 4]], s: usize, key: usize) {
    raw[s / 4][s % 4] = key;
}

fn check_label(d: &LinkDiagram, l: usize) -> Result<()> {
    if l == 0 || l > d.arc_count() {
        Err(Error::SiteNotFound(format!("no arc {l}")))
    } else {
        Ok(())
    }
}

/// Tuple for a kink; `x` enters, `y` is the loop, `z` leaves.
fn kink(x: usize, y: usize, z: usize, positive: bool, under_first: bool) -> [usize; 4] {
    match (under_first, positive) {
        (true, true) => [x, z, y, y],
        (true, false) => [x, y, y, z],
        (false, true) => [y, y, z, x],
        (false, false) => [y, x, z, y],
    }
}

/// Reads `(positive, under_first)` from the positions of a kink's loop.
fn kink_type(p: usize, q: usize) -> Option<(bool, bool)> {
    match (p.min(q), p.max(q)) {
        (2, 3) => Some((true, true)),
        (1, 2) => Some((false, true)),
        (0, 1) => Some((true, false)),
        (0, 3) => Some((false, false)),
        _ => None,
    }
}

/// Deletes crossings and merges the arcs joined through them. Returns the
/// new raw crossings, the new circle count and the merged key of each
/// removed or surviving key.
fn remove_crossings(
    raw: &[[usize; 4]],
    circles: usize,
    removed: &BTreeSet<usize>,
) -> (Vec<[usize; 4]>, usize, BTreeMap<usize, usize>) {
    let keys: Vec<usize> = raw
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<usize, usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut uf = UnionFind::<usize>::new(keys.len());
    for &k in removed {
        let [a, b, c, d] = raw[k];
        uf.union(index[&a], index[&c]);
        uf.union(index[&b], index[&d]);
    }
    let mut rep: BTreeMap<usize, usize> = BTreeMap::new();
    for &k in &keys {
        let root = uf.find(index[&k]);
        let e = rep.entry(root).or_insert(k);
        *e = (*e).min(k);
    }
    let merged: BTreeMap<usize, usize> = keys
        .iter()
        .map(|&k| (k, rep[&uf.find(index[&k])]))
        .collect();
    let kept: Vec<[usize; 4]> = raw
        .iter()
        .enumerate()
        .filter(|(k, _)| !removed.contains(k))
        .map(|(_, x)| x.map(|l| merged[&l]))
        .collect();
    let touched: BTreeSet<usize> = kept.iter().flatten().copied().collect();
    let closed = rep.values().filter(|k| !touched.contains(k)).count();
    (kept, circles + closed, merged)
}

/// A face side: the arc and whether walking the face agrees with the arc's
/// orientation.
fn sides(d: &LinkDiagram, face: &[usize]) -> Vec<(usize, bool)> {
    face.iter()
        .map(|&s| {
            let l = d.label_at(s);
            (l, d.head_slot(l) == s)
        })
        .collect()
}

/// Ccw compass tuple `[W, S, E, N]` for a crossing whose under strand lies
/// on the W-E axis, started at the incoming under slot.
fn crossing_from_compass(wsen: [usize; 4], under_points_east: bool) -> [usize; 4] {
    let [w, s, e, n] = wsen;
    if under_points_east {
        [w, s, e, n]
    } else {
        [e, n, w, s]
    }
}

/// Applies `m`, returning the canonical result.
pub fn apply_move(d: &LinkDiagram, m: &Move) -> Result<LinkDiagram> {
    apply_with_inverse(d, m).map(|(r, _)| r)
}

/// Applies `m` and also returns a move that undoes it up to relabelling,
/// addressed in the labels of the result. Removing a bigon whose arcs close
/// into free circles has no such inverse.
pub fn apply_with_inverse(d: &LinkDiagram, m: &Move) -> Result<(LinkDiagram, Option<Move>)> {
    match *m {
        Move::R1Add {
            arc,
            positive,
            under_first,
        } => r1_add(d, arc, positive, under_first),
        Move::R1Remove { arc } => r1_remove(d, arc),
        Move::R2Add { over, under } => r2_add(d, over, under),
        Move::R2Remove { over, under } => r2_remove(d, over, under),
        Move::R3 {
            under,
            middle,
            over,
        } => r3(d, under, middle, over),
    }
}

fn r1_add(
    d: &LinkDiagram,
    arc: Option<usize>,
    positive: bool,
    under_first: bool,
) -> Result<(LinkDiagram, Option<Move>)> {
    let mut raw = scaled(d);
    let mut circles = d.free_circles();
    let (x, y, z) = match arc {
        Some(l) => {
            check_label(d, l)?;
            let x = SCALE * l;
            set_slot(&mut raw, d.head_slot(l), x + 2);
            (x, x + 1, x + 2)
        }
        None => {
            if circles == 0 {
                return Err(Error::SiteNotFound("no free circle".into()));
            }
            circles -= 1;
            let x = SCALE * (d.arc_count() + 1);
            (x, x + 1, x)
        }
    };
    raw.push(kink(x, y, z, positive, under_first));
    let (out, map) = canonicalize(&raw, circles)?;
    Ok((out, Some(Move::R1Remove { arc: map[&y] })))
}

fn r1_remove(d: &LinkDiagram, arc: usize) -> Result<(LinkDiagram, Option<Move>)> {
    check_label(d, arc)?;
    let (h, t) = (d.head_slot(arc), d.tail_slot(arc));
    let kind = if h / 4 == t / 4 {
        kink_type(h % 4, t % 4)
    } else {
        None
    };
    let (positive, under_first) =
        kind.ok_or_else(|| Error::PatternMismatch(format!("arc {arc} is not a kink loop")))?;
    let raw = scaled(d);
    let removed = BTreeSet::from([h / 4]);
    let (kept, circles, merged) = remove_crossings(&raw, d.free_circles(), &removed);
    let rep = merged[&(SCALE * arc)];
    let still_arc = kept.iter().flatten().any(|&k| k == rep);
    let (out, map) = canonicalize(&kept, circles)?;
    let inv = Move::R1Add {
        arc: still_arc.then(|| map[&rep]),
        positive,
        under_first,
    };
    Ok((out, Some(inv)))
}

fn r2_add(d: &LinkDiagram, over: usize, under: usize) -> Result<(LinkDiagram, Option<Move>)> {
    check_label(d, over)?;
    check_label(d, under)?;
    if over == under {
        return Err(Error::SiteNotFound("R2 needs two distinct arcs".into()));
    }
    let (p_agrees, u_agrees) = d
        .faces()
        .iter()
        .find_map(|f| {
            let sd = sides(d, f);
            let p = sd.iter().find(|(l, _)| *l == over)?;
            let u = sd.iter().find(|(l, _)| *l == under)?;
            Some((p.1, u.1))
        })
        .ok_or_else(|| Error::SiteNotFound(format!("arcs {over} and {under} share no face")))?;
    // Local model: `under` along y = 0, `over` along y = 1, the face between.
    // The face lies right of the walk, so the walk runs west on `under` and
    // east on `over`.
    let u_east = !u_agrees;
    let p_east = p_agrees;
    let (uk, pk) = (SCALE * under, SCALE * over);
    let [u1, u2, u3] = if u_east {
        [uk, uk + 1, uk + 2]
    } else {
        [uk + 2, uk + 1, uk]
    };
    let [p1, p2, p3] = if p_east {
        [pk, pk + 1, pk + 2]
    } else {
        [pk + 2, pk + 1, pk]
    };
    let mut raw = scaled(d);
    set_slot(&mut raw, d.head_slot(under), uk + 2);
    set_slot(&mut raw, d.head_slot(over), pk + 2);
    raw.push(crossing_from_compass([u1, p2, u2, p1], u_east));
    raw.push(crossing_from_compass([u2, p2, u3, p3], u_east));
    let (out, map) = canonicalize(&raw, d.free_circles())?;
    let inv = Move::R2Remove {
        over: map[&(pk + 1)],
        under: map[&(uk + 1)],
    };
    Ok((out, Some(inv)))
}

fn r2_remove(d: &LinkDiagram, over: usize, under: usize) -> Result<(LinkDiagram, Option<Move>)> {
    check_label(d, over)?;
    check_label(d, under)?;
    let ends = |l: usize| (d.tail_slot(l), d.head_slot(l));
    let (pt, ph) = ends(over);
    let (ut, uh) = ends(under);
    let is_over = |s: usize| s % 2 == 1;
    let pattern = is_over(pt) && is_over(ph) && !is_over(ut) && !is_over(uh) && pt / 4 != ph / 4;
    let joined = BTreeSet::from([pt / 4, ph / 4]) == BTreeSet::from([ut / 4, uh / 4]);
    let bigon = d.faces().iter().any(|f| {
        f.len() == 2 && {
            let ls: BTreeSet<usize> = f.iter().map(|&s| d.label_at(s)).collect();
            ls == BTreeSet::from([over, under])
        }
    });
    if !(pattern && joined && bigon) {
        return Err(Error::PatternMismatch(format!(
            "arcs {over} and {under} do not bound a removable bigon"
        )));
    }
    let raw = scaled(d);
    let removed = BTreeSet::from([pt / 4, ph / 4]);
    let (kept, circles, merged) = remove_crossings(&raw, d.free_circles(), &removed);
    let (pr, ur) = (merged[&(SCALE * over)], merged[&(SCALE * under)]);
    let (out, map) = canonicalize(&kept, circles)?;
    let inv = match (map.get(&pr), map.get(&ur)) {
        (Some(&o), Some(&u)) => Some(Move::R2Add { over: o, under: u }),
        _ => None,
    };
    Ok((out, inv))
}

struct Strand {
    first: usize,
    second: usize,
    incoming: usize,
    mid: usize,
    outgoing: usize,
}

fn r3(d: &LinkDiagram, under: usize, middle: usize, over: usize) -> Result<(LinkDiagram, Option<Move>)> {
    for l in [under, middle, over] {
        check_label(d, l)?;
    }
    let want = BTreeSet::from([under, middle, over]);
    let mismatch = || {
        Error::PatternMismatch(format!(
            "arcs ({under},{middle},{over}) do not bound an R3 triangle"
        ))
    };
    let triangle = d.faces().into_iter().any(|f| {
        f.len() == 3 && f.iter().map(|&s| d.label_at(s)).collect::<BTreeSet<_>>() == want
    });
    if !triangle || want.len() != 3 {
        return Err(mismatch());
    }
    let over_ends = |l: usize| {
        [d.tail_slot(l), d.head_slot(l)]
            .iter()
            .filter(|&&s| s % 2 == 1)
            .count()
    };
    if (over_ends(under), over_ends(middle), over_ends(over)) != (0, 1, 2) {
        return Err(mismatch());
    }
    let strand = |l: usize| {
        let (t, h) = (d.tail_slot(l), d.head_slot(l));
        Strand {
            first: t / 4,
            second: h / 4,
            incoming: SCALE * d.label_at(opposite(t)),
            mid: SCALE * l,
            outgoing: SCALE * d.label_at(opposite(h)),
        }
    };
    let strands = [strand(under), strand(middle), strand(over)];
    let crossings: BTreeSet<usize> = strands.iter().flat_map(|s| [s.first, s.second]).collect();
    if crossings.len() != 3 {
        return Err(mismatch());
    }
    let mut raw = scaled(d);
    for &k in &crossings {
        let through: Vec<&Strand> = strands
            .iter()
            .filter(|s| s.first == k || s.second == k)
            .collect();
        // the earlier role in (under, middle, over) passes under here
        let (lo, hi) = (through[0], through[1]);
        let swap_order = |s: &Strand| {
            if s.first == k {
                (s.mid, s.outgoing)
            } else {
                (s.incoming, s.mid)
            }
        };
        let (ui, uo) = swap_order(lo);
        let (oi, oo) = swap_order(hi);
        raw[k] = match d.signs()[k] {
            Sign::Positive => [ui, oo, uo, oi],
            Sign::Negative => [ui, oi, uo, oo],
        };
    }
    let (out, map) = canonicalize(&raw, d.free_circles())?;
    let inv = Move::R3 {
        under: map[&strands[0].mid],
        middle: map[&strands[1].mid],
        over: map[&strands[2].mid],
    };
    Ok((out, Some(inv)))
}

/// Every move applicable to `d`, in a deterministic order.
pub fn enumerate_moves(d: &LinkDiagram) -> Vec<Move> {
    let mut out = BTreeSet::new();
    let r1_sites: Vec<Option<usize>> = (1..=d.arc_count())
        .map(Some)
        .chain((d.free_circles() > 0).then_some(None))
        .collect();
    for arc in r1_sites {
        for positive in [true, false] {
            for under_first in [true, false] {
                out.insert(Move::R1Add {
                    arc,
                    positive,
                    under_first,
                });
            }
        }
    }
    for l in 1..=d.arc_count() {
        let (h, t) = (d.head_slot(l), d.tail_slot(l));
        if h / 4 == t / 4 && kink_type(h % 4, t % 4).is_some() {
            out.insert(Move::R1Remove { arc: l });
        }
    }
    for f in d.faces() {
        let labels: BTreeSet<usize> = f.iter().map(|&s| d.label_at(s)).collect();
        for &p in &labels {
            for &u in &labels {
                if p != u {
                    out.insert(Move::R2Add { over: p, under: u });
                }
            }
        }
        if f.len() == 2 {
            let (a, b) = (d.label_at(f[0]), d.label_at(f[1]));
            for (p, u) in [(a, b), (b, a)] {
                let m = Move::R2Remove { over: p, under: u };
                if r2_remove(d, p, u).is_ok() {
                    out.insert(m);
                }
            }
        }
        if f.len() == 3 {
            let ls: Vec<usize> = f.iter().map(|&s| d.label_at(s)).collect();
            for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                let (u, m, o) = (ls[perm[0]], ls[perm[1]], ls[perm[2]]);
                if r3(d, u, m, o).is_ok() {
                    out.insert(Move::R3 {
                        under: u,
                        middle: m,
                        over: o,
                    });
                }
            }
        }
    }
    out.into_iter().collect()
}
