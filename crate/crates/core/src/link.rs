//! Planar diagrams of oriented links in PD notation.
//!
//! A crossing `X[a,b,c,d]` lists its four arcs counterclockwise starting at
//! the incoming under-arc, so the under strand runs `a -> c` and the over
//! strand joins `b` and `d`. Components with no crossings are kept as a
//! separate count of free circles.
//!
//! Slots are numbered `4 * k + p` for position `p` of crossing `k`.

use std::collections::BTreeMap;
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }
}

/// A validated diagram with canonical labels `1..=2n`.
///
/// Labels increase consecutively along each oriented component; components
/// are ordered by their smallest label.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<[usize; 4]>,
    circles: usize,
    head: Vec<usize>,
    tail: Vec<usize>,
    component: Vec<usize>,
    signs: Vec<Sign>,
}

pub(crate) fn slot(k: usize, p: usize) -> usize {
    4 * k + p
}

pub(crate) fn opposite(s: usize) -> usize {
    4 * (s / 4) + (s % 4 + 2) % 4
}

fn ccw_next(s: usize) -> usize {
    4 * (s / 4) + (s % 4 + 1) % 4
}

impl LinkDiagram {
    /// `count` disjoint unknotted circles.
    pub fn circles(count: usize) -> Result<Self> {
        Self::from_raw(Vec::new(), count)
    }

    /// Validates crossings with arbitrary positive labels and relabels them
    /// canonically.
    pub fn from_raw(crossings: Vec<[usize; 4]>, circles: usize) -> Result<Self> {
        canonicalize(&crossings, circles).map(|(d, _)| d)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    /// Number of components without crossings.
    pub fn free_circles(&self) -> usize {
        self.circles
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len()
    }

    /// Total number of link components, free circles included.
    pub fn component_count(&self) -> usize {
        self.component.iter().max().map_or(0, |c| c + 1) + self.circles
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// `(n_plus, n_minus)`.
    pub fn crossing_signs(&self) -> (usize, usize) {
        let plus = self.signs.iter().filter(|s| s.is_positive()).count();
        (plus, self.signs.len() - plus)
    }

    pub fn writhe(&self) -> i64 {
        let (p, m) = self.crossing_signs();
        p as i64 - m as i64
    }

    pub(crate) fn label_at(&self, s: usize) -> usize {
        self.crossings[s / 4][s % 4]
    }

    /// Slot where arc `label` enters a crossing.
    pub(crate) fn head_slot(&self, label: usize) -> usize {
        self.head[label - 1]
    }

    /// Slot where arc `label` leaves a crossing.
    pub(crate) fn tail_slot(&self, label: usize) -> usize {
        self.tail[label - 1]
    }

    /// The other end of the arc at slot `s`.
    pub(crate) fn partner(&self, s: usize) -> usize {
        let l = self.label_at(s);
        if self.head[l - 1] == s {
            self.tail[l - 1]
        } else {
            self.head[l - 1]
        }
    }

    /// Faces of the planar embedding. Each face is the cycle of slots at
    /// which its boundary arrives at a crossing, with the face on the right.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let total = 4 * self.crossings.len();
        let mut seen = vec![false; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                face.push(s);
                s = self.partner(ccw_next(s));
            }
            faces.push(face);
        }
        faces
    }

    /// Reflection in the plane; exchanges the roles of the two crossing
    /// types and keeps orientations.
    pub fn mirror(&self) -> Self {
        let raw = self
            .crossings
            .iter()
            .map(|&[a, b, c, d]| [a, d, c, b])
            .collect();
        Self::from_raw(raw, self.circles).expect("reflection preserves validity")
    }

    /// Exchanges over and under strands at crossing `k`.
    pub fn switch_crossing(&self, k: usize) -> Result<Self> {
        if k >= self.crossings.len() {
            return Err(Error::Range(format!("crossing {k}")));
        }
        let mut raw = self.crossings.clone();
        let [a, b, c, d] = raw[k];
        raw[k] = match self.signs[k] {
            Sign::Positive => [d, a, b, c],
            Sign::Negative => [b, c, d, a],
        };
        Self::from_raw(raw, self.circles)
    }
}

/// Validates, orients and relabels. Returns the map from input labels to
/// canonical labels.
pub(crate) fn canonicalize(
    raw: &[[usize; 4]],
    circles: usize,
) -> Result<(LinkDiagram, BTreeMap<usize, usize>)> {
    let n = raw.len();
    if n == 0 && circles == 0 {
        return Err(Error::InvalidDiagram("empty diagram".into()));
    }
    let mut occ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, x) in raw.iter().enumerate() {
        for (p, &l) in x.iter().enumerate() {
            if l == 0 {
                return Err(Error::InvalidDiagram("arc label 0".into()));
            }
            occ.entry(l).or_default().push(slot(k, p));
        }
    }
    let mut partner = vec![0; 4 * n];
    for (l, slots) in &occ {
        match slots.len() {
            1 => {
                return Err(Error::InvalidDiagram(format!(
                    "arc {l} appears once; unclosed component"
                )))
            }
            2 => {
                partner[slots[0]] = slots[1];
                partner[slots[1]] = slots[0];
            }
            m => return Err(Error::InvalidDiagram(format!("arc {l} appears {m} times"))),
        }
    }

    let walk = |first_head: usize| {
        let mut seq = vec![first_head];
        let mut h = partner[opposite(first_head)];
        while h != first_head {
            seq.push(h);
            h = partner[opposite(h)];
        }
        seq
    };

    let mut visited = vec![false; 4 * n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for slots in occ.values() {
        if visited[slots[0]] {
            continue;
        }
        let mut seq = walk(slots[0]);
        let forward = seq.iter().filter(|&&h| h % 4 == 0).count();
        let backward = seq.iter().filter(|&&h| h % 4 == 2).count();
        let reverse = if forward > 0 && backward > 0 {
            return Err(Error::InvalidDiagram(format!(
                "inconsistent orientation on the component through arc {}",
                raw[slots[0] / 4][slots[0] % 4]
            )));
        } else if forward + backward > 0 {
            backward > 0
        } else if seq.len() >= 3 {
            let key = |s: usize| raw[s / 4][s % 4];
            key(seq[1]) > key(seq[seq.len() - 1])
        } else {
            false
        };
        if reverse {
            seq = walk(slots[1]);
        }
        for &h in &seq {
            visited[h] = true;
            visited[partner[h]] = true;
        }
        components.push(seq);
    }

    let mut relabel = BTreeMap::new();
    let mut head = Vec::with_capacity(2 * n);
    let mut tail = Vec::with_capacity(2 * n);
    let mut component = Vec::with_capacity(2 * n);
    for (ci, seq) in components.iter().enumerate() {
        for &h in seq {
            relabel.insert(raw[h / 4][h % 4], head.len() + 1);
            head.push(h);
            tail.push(partner[h]);
            component.push(ci);
        }
    }
    let crossings: Vec<[usize; 4]> = raw
        .iter()
        .map(|x| [relabel[&x[0]], relabel[&x[1]], relabel[&x[2]], relabel[&x[3]]])
        .collect();
    let signs = (0..n)
        .map(|k| {
            let d = crossings[k][3];
            if head[d - 1] == slot(k, 3) {
                Sign::Positive
            } else {
                Sign::Negative
            }
        })
        .collect();
    let diagram = LinkDiagram {
        crossings,
        circles,
        head,
        tail,
        component,
        signs,
    };
    check_planar(&diagram)?;
    Ok((diagram, relabel))
}

/// A connected 4-valent plane graph with `n` vertices has `n + 2` faces.
fn check_planar(d: &LinkDiagram) -> Result<()> {
    let n = d.crossings.len();
    if n == 0 {
        return Ok(());
    }
    let mut uf = UnionFind::<usize>::new(n);
    for s in 0..4 * n {
        uf.union(s / 4, d.partner(s) / 4);
    }
    let mut reps: Vec<usize> = (0..n).map(|k| uf.find(k)).collect();
    reps.sort_unstable();
    reps.dedup();
    let faces = d.faces().len();
    if faces == n + 2 * reps.len() {
        Ok(())
    } else {
        Err(Error::InvalidDiagram(format!(
            "not planar: {faces} faces for {n} crossings in {} pieces",
            reps.len()
        )))
    }
}

/// Parses `item (";" item)*` with `item := "O" | "X[" int "," int "," int "," int "]"`.
/// Whitespace is ignored.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut crossings = Vec::new();
    let mut circles = 0;
    for item in compact.split(';') {
        if item == "O" {
            circles += 1;
            continue;
        }
        let body = item
            .strip_prefix("X[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("malformed item `{item}`")))?;
        let labels = body
            .split(',')
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad arc label `{t}` in `{item}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let tuple: [usize; 4] = labels.try_into().map_err(|v: Vec<usize>| {
            Error::Parse(format!("crossing `{item}` has {} entries, expected 4", v.len()))
        })?;
        crossings.push(tuple);
    }
    LinkDiagram::from_raw(crossings, circles)
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self
            .crossings
            .iter()
            .map(|[a, b, c, d]| format!("X[{a},{b},{c},{d}]"))
            .collect();
        items.extend(std::iter::repeat_n("O".to_string(), self.circles));
        write!(f, "{}", items.join(";"))
    }
}

impl fmt::Debug for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinkDiagram({self})")
    }
}

/// Standard small diagrams.
pub mod catalog {
    use super::{parse_pd, LinkDiagram};

    pub fn unknot() -> LinkDiagram {
        parse_pd("O").unwrap()
    }

    /// Positive kink on a circle.
    pub fn curl_positive() -> LinkDiagram {
        parse_pd("X[1,1,2,2]").unwrap()
    }

    /// Negative kink on a circle.
    pub fn curl_negative() -> LinkDiagram {
        parse_pd("X[1,2,2,1]").unwrap()
    }

    pub fn hopf() -> LinkDiagram {
        parse_pd("X[4,1,3,2];X[2,3,1,4]").unwrap()
    }

    /// Left-handed trefoil.
    pub fn trefoil() -> LinkDiagram {
        parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]").unwrap()
    }

    pub fn figure_eight() -> LinkDiagram {
        parse_pd("X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]").unwrap()
    }

    pub fn cinquefoil() -> LinkDiagram {
        parse_pd("X[1,6,2,7];X[3,8,4,9];X[5,10,6,1];X[7,2,8,3];X[9,4,10,5]").unwrap()
    }

    pub fn three_twist() -> LinkDiagram {
        parse_pd("X[1,4,2,5];X[3,8,4,9];X[5,10,6,1];X[9,6,10,7];X[7,2,8,3]").unwrap()
    }

    pub fn stevedore() -> LinkDiagram {
        parse_pd("X[1,4,2,5];X[7,10,8,11];X[3,9,4,8];X[9,3,10,2];X[5,12,6,1];X[11,6,12,7]")
            .unwrap()
    }

    /// Diagrams used as seeds for randomized testing.
    pub fn seeds() -> Vec<LinkDiagram> {
        vec![
            unknot(),
            curl_positive(),
            curl_negative(),
            hopf(),
            trefoil(),
            figure_eight(),
            cinquefoil(),
            three_twist(),
            stevedore(),
        ]
    }
}
