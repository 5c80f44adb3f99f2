//! Framed link diagrams as Morse words read bottom to top, with blackboard framing.
//!
//! Events act on strand slots: a cup inserts two slots at `pos`, a cap joins slots `pos` and
//! `pos + 1`, and a crossing exchanges slots `pos` and `pos + 1`. At a crossing, strand A runs
//! from bottom slot `pos` to top slot `pos + 1` and strand B from bottom `pos + 1` to top `pos`.
//! Components are numbered by their lowest cup, and each is oriented so that the left leg of
//! that cup points up.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("diagram does not close: {0} strands left open")]
    OpenStrand(usize),
    #[error("event {event} at position {pos} exceeds width {width}")]
    WidthUnderflow { event: usize, pos: usize, width: usize },
    #[error("invalid component {0}")]
    InvalidComponent(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A Morse event with crossings recorded by sign under the traced orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MorseEvent {
    Cup(usize),
    Cap(usize),
    Crossing { pos: usize, sign: i8 },
}

impl MorseEvent {
    pub fn pos(&self) -> usize {
        match *self {
            MorseEvent::Cup(p) | MorseEvent::Cap(p) => p,
            MorseEvent::Crossing { pos, .. } => pos,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            MorseEvent::Cup(_) => "cup",
            MorseEvent::Cap(_) => "cap",
            MorseEvent::Crossing { sign, .. } if *sign > 0 => "x+",
            MorseEvent::Crossing { .. } => "x-",
        }
    }
}

/// A Morse event with crossings recorded geometrically: `a_over` means strand A passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeoEvent {
    Cup(usize),
    Cap(usize),
    Crossing { pos: usize, a_over: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug)]
struct SegInfo {
    bottom: (usize, Role),
    top: (usize, Role),
}

/// One step of a component traversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Incidence {
    /// Passing through a crossing on strand A (`strand_a`) or B, moving up or down.
    Crossing { event: usize, strand_a: bool, over: bool, up: bool },
    /// Turning at a cup or cap; `ccw` gives the sense of rotation.
    Extremum { event: usize, cup: bool, ccw: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingData {
    pub matrix: Vec<Vec<i64>>,
    pub b_minus: usize,
}

#[derive(Clone, Debug)]
pub struct LinkDiagram {
    events: Vec<MorseEvent>,
    /// levels[k] lists the segment at each slot after k events.
    levels: Vec<Vec<usize>>,
    seg_comp: Vec<usize>,
    seg_up: Vec<bool>,
    a_over: Vec<Option<bool>>,
    first_cup: Vec<usize>,
    traversals: Vec<Vec<Incidence>>,
}

struct Traced {
    levels: Vec<Vec<usize>>,
    seg_comp: Vec<usize>,
    seg_up: Vec<bool>,
    first_cup: Vec<usize>,
    traversals: Vec<Vec<Incidence>>,
    /// (sA, sB) direction products per crossing event, as +1 / -1.
    strand_dirs: Vec<Option<(i8, i8)>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let n = parent[c];
        parent[c] = r;
        c = n;
    }
    r
}

enum Shape {
    Cup(usize),
    Cap(usize),
    Crossing(usize),
}

fn trace(shapes: &[Shape]) -> Result<Traced, LinkError> {
    let mut cur: Vec<usize> = Vec::new();
    let mut levels = vec![Vec::new()];
    let mut segs: Vec<SegInfo> = Vec::new();
    let mut event_segs: Vec<[usize; 4]> = Vec::new();
    let open = (usize::MAX, Role::Left);
    for (e, sh) in shapes.iter().enumerate() {
        let w = cur.len();
        let mut es = [usize::MAX; 4];
        match *sh {
            Shape::Cup(p) => {
                if p > w {
                    return Err(LinkError::WidthUnderflow { event: e, pos: p, width: w });
                }
                let s = segs.len();
                segs.push(SegInfo { bottom: (e, Role::Left), top: open });
                segs.push(SegInfo { bottom: (e, Role::Right), top: open });
                cur.insert(p, s + 1);
                cur.insert(p, s);
                es[0] = s;
                es[1] = s + 1;
            }
            Shape::Cap(p) => {
                if p + 1 >= w {
                    return Err(LinkError::WidthUnderflow { event: e, pos: p, width: w });
                }
                let (l, r) = (cur[p], cur[p + 1]);
                segs[l].top = (e, Role::Left);
                segs[r].top = (e, Role::Right);
                cur.drain(p..p + 2);
                es[0] = l;
                es[1] = r;
            }
            Shape::Crossing(p) => {
                if w < 2 || p + 1 > w - 1 {
                    return Err(LinkError::WidthUnderflow { event: e, pos: p, width: w });
                }
                let (bl, br) = (cur[p], cur[p + 1]);
                segs[bl].top = (e, Role::Left);
                segs[br].top = (e, Role::Right);
                let s = segs.len();
                segs.push(SegInfo { bottom: (e, Role::Left), top: open });
                segs.push(SegInfo { bottom: (e, Role::Right), top: open });
                cur[p] = s;
                cur[p + 1] = s + 1;
                es = [bl, br, s, s + 1];
            }
        }
        event_segs.push(es);
        levels.push(cur.clone());
    }
    if !cur.is_empty() {
        return Err(LinkError::OpenStrand(cur.len()));
    }
    let mut parent: Vec<usize> = (0..segs.len()).collect();
    for (e, sh) in shapes.iter().enumerate() {
        let es = event_segs[e];
        let pairs: Vec<(usize, usize)> = match sh {
            Shape::Cup(_) | Shape::Cap(_) => vec![(es[0], es[1])],
            // A: bottom-left to top-right; B: bottom-right to top-left
            Shape::Crossing(_) => vec![(es[0], es[3]), (es[1], es[2])],
        };
        for (a, b) in pairs {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut comp_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut first_cup = Vec::new();
    for (e, sh) in shapes.iter().enumerate() {
        if let Shape::Cup(_) = sh {
            let r = find(&mut parent, event_segs[e][0]);
            if !comp_of_root.contains_key(&r) {
                comp_of_root.insert(r, first_cup.len());
                first_cup.push(e);
            }
        }
    }
    let seg_comp: Vec<usize> = (0..segs.len()).map(|s| comp_of_root[&find(&mut parent, s)]).collect();
    let mut seg_up = vec![false; segs.len()];
    let mut traversals = Vec::new();
    let mut strand_dirs: Vec<Option<(i8, i8)>> = vec![None; shapes.len()];
    for &fc in &first_cup {
        let mut inc = Vec::new();
        let mut s = event_segs[fc][0];
        let mut up = true;
        loop {
            seg_up[s] = up;
            if up {
                let (e, role) = segs[s].top;
                match shapes[e] {
                    Shape::Cap(_) => {
                        inc.push(Incidence::Extremum { event: e, cup: false, ccw: role == Role::Right });
                        s = if role == Role::Left { event_segs[e][1] } else { event_segs[e][0] };
                        up = false;
                    }
                    Shape::Crossing(_) => {
                        let strand_a = role == Role::Left;
                        inc.push(Incidence::Crossing { event: e, strand_a, over: false, up: true });
                        s = if strand_a { event_segs[e][3] } else { event_segs[e][2] };
                    }
                    Shape::Cup(_) => unreachable!("segment top is never a cup"),
                }
            } else {
                let (e, role) = segs[s].bottom;
                match shapes[e] {
                    Shape::Cup(_) => {
                        inc.push(Incidence::Extremum { event: e, cup: true, ccw: role == Role::Left });
                        if e == fc {
                            break;
                        }
                        s = if role == Role::Left { event_segs[e][1] } else { event_segs[e][0] };
                        up = true;
                    }
                    Shape::Crossing(_) => {
                        // top-right belongs to A, top-left to B
                        let strand_a = role == Role::Right;
                        inc.push(Incidence::Crossing { event: e, strand_a, over: false, up: false });
                        s = if strand_a { event_segs[e][0] } else { event_segs[e][1] };
                    }
                    Shape::Cap(_) => unreachable!("segment bottom is never a cap"),
                }
            }
        }
        traversals.push(inc);
    }
    for (e, sh) in shapes.iter().enumerate() {
        if let Shape::Crossing(_) = sh {
            let es = event_segs[e];
            let d = |s: usize| if seg_up[s] { 1i8 } else { -1 };
            strand_dirs[e] = Some((d(es[0]), d(es[1])));
        }
    }
    Ok(Traced { levels, seg_comp, seg_up, first_cup, traversals, strand_dirs })
}

impl LinkDiagram {
    pub fn new(events: Vec<MorseEvent>) -> Result<LinkDiagram, LinkError> {
        let shapes: Vec<Shape> = events
            .iter()
            .map(|e| match *e {
                MorseEvent::Cup(p) => Shape::Cup(p),
                MorseEvent::Cap(p) => Shape::Cap(p),
                MorseEvent::Crossing { pos, .. } => Shape::Crossing(pos),
            })
            .collect();
        let t = trace(&shapes)?;
        let a_over: Vec<Option<bool>> = events
            .iter()
            .enumerate()
            .map(|(e, ev)| match ev {
                MorseEvent::Crossing { sign, .. } => {
                    let (sa, sb) = t.strand_dirs[e].expect("crossing directions");
                    Some(*sign == sa * sb)
                }
                _ => None,
            })
            .collect();
        Ok(Self::assemble(events, t, a_over))
    }

    pub fn from_geometric(events: &[GeoEvent]) -> Result<LinkDiagram, LinkError> {
        let shapes: Vec<Shape> = events
            .iter()
            .map(|e| match *e {
                GeoEvent::Cup(p) => Shape::Cup(p),
                GeoEvent::Cap(p) => Shape::Cap(p),
                GeoEvent::Crossing { pos, .. } => Shape::Crossing(pos),
            })
            .collect();
        let t = trace(&shapes)?;
        let signed: Vec<MorseEvent> = events
            .iter()
            .enumerate()
            .map(|(e, ev)| match *ev {
                GeoEvent::Cup(p) => MorseEvent::Cup(p),
                GeoEvent::Cap(p) => MorseEvent::Cap(p),
                GeoEvent::Crossing { pos, a_over } => {
                    let (sa, sb) = t.strand_dirs[e].expect("crossing directions");
                    MorseEvent::Crossing { pos, sign: if a_over { sa * sb } else { -sa * sb } }
                }
            })
            .collect();
        let a_over = events
            .iter()
            .map(|ev| match ev {
                GeoEvent::Crossing { a_over, .. } => Some(*a_over),
                _ => None,
            })
            .collect();
        Ok(Self::assemble(signed, t, a_over))
    }

    fn assemble(events: Vec<MorseEvent>, t: Traced, a_over: Vec<Option<bool>>) -> LinkDiagram {
        let traversals = t
            .traversals
            .into_iter()
            .map(|tr| {
                tr.into_iter()
                    .map(|inc| match inc {
                        Incidence::Crossing { event, strand_a, up, .. } => {
                            let ao = a_over[event].expect("crossing");
                            Incidence::Crossing { event, strand_a, over: ao == strand_a, up }
                        }
                        other => other,
                    })
                    .collect()
            })
            .collect();
        LinkDiagram {
            events,
            levels: t.levels,
            seg_comp: t.seg_comp,
            seg_up: t.seg_up,
            a_over,
            first_cup: t.first_cup,
            traversals,
        }
    }

    pub fn empty() -> LinkDiagram {
        LinkDiagram::new(vec![]).expect("empty diagram")
    }

    pub fn events(&self) -> &[MorseEvent] {
        &self.events
    }

    pub fn geometric_events(&self) -> Vec<GeoEvent> {
        self.events
            .iter()
            .enumerate()
            .map(|(e, ev)| match *ev {
                MorseEvent::Cup(p) => GeoEvent::Cup(p),
                MorseEvent::Cap(p) => GeoEvent::Cap(p),
                MorseEvent::Crossing { pos, .. } => GeoEvent::Crossing { pos, a_over: self.a_over[e].unwrap() },
            })
            .collect()
    }

    pub fn num_components(&self) -> usize {
        self.first_cup.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, MorseEvent::Crossing { .. })).count()
    }

    pub fn max_width(&self) -> usize {
        self.levels.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    /// Event index of the lowest cup of each component.
    pub fn first_cups(&self) -> &[usize] {
        &self.first_cup
    }

    /// Traversal of a component from the left leg of its first cup, ending with that cup.
    pub fn traversal(&self, comp: usize) -> &[Incidence] {
        &self.traversals[comp]
    }

    /// Whether strand A passes over at the crossing with this event index.
    pub fn a_over(&self, event: usize) -> Option<bool> {
        self.a_over[event]
    }

    /// (component, pointing up) for each slot after `k` events.
    pub fn level(&self, k: usize) -> Vec<(usize, bool)> {
        self.levels[k].iter().map(|&s| (self.seg_comp[s], self.seg_up[s])).collect()
    }

    /// Rotation number of each component: (counterclockwise − clockwise extrema) / 2.
    pub fn whitney_degrees(&self) -> Vec<i64> {
        self.traversals
            .iter()
            .map(|tr| {
                let mut d = 0i64;
                for inc in tr {
                    if let Incidence::Extremum { ccw, .. } = inc {
                        d += if *ccw { 1 } else { -1 };
                    }
                }
                d / 2
            })
            .collect()
    }

    /// Component of each strand at crossing `event`: (strand A, strand B).
    fn crossing_comps(&self, event: usize) -> (usize, usize) {
        let p = self.events[event].pos();
        let below = &self.levels[event];
        (self.seg_comp[below[p]], self.seg_comp[below[p + 1]])
    }

    pub fn linking_data(&self) -> LinkingData {
        let n = self.num_components();
        let mut twice = vec![vec![0i64; n]; n];
        for (e, ev) in self.events.iter().enumerate() {
            if let MorseEvent::Crossing { sign, .. } = ev {
                let (a, b) = self.crossing_comps(e);
                if a == b {
                    twice[a][a] += 2 * *sign as i64;
                } else {
                    twice[a][b] += *sign as i64;
                    twice[b][a] += *sign as i64;
                }
            }
        }
        let matrix: Vec<Vec<i64>> = twice.iter().map(|r| r.iter().map(|v| v / 2).collect()).collect();
        let b_minus = negative_index(&matrix);
        LinkingData { matrix, b_minus }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ev: Vec<serde_json::Value> =
            self.events.iter().map(|e| serde_json::json!({"kind": e.kind(), "pos": e.pos()})).collect();
        serde_json::json!({ "events": ev })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LinkDiagram, LinkError> {
        #[derive(Deserialize)]
        struct Ev {
            kind: String,
            pos: usize,
        }
        #[derive(Deserialize)]
        struct Doc {
            events: Vec<Ev>,
        }
        let doc: Doc = serde_json::from_value(v.clone()).map_err(|e| LinkError::Parse(e.to_string()))?;
        let events = doc
            .events
            .into_iter()
            .map(|e| event_from_kind(&e.kind, e.pos))
            .collect::<Result<Vec<_>, _>>()?;
        LinkDiagram::new(events)
    }

    /// Parse JSON or the one-event-per-line text form (`cup 0`, `x+ 1`, `#` comments).
    pub fn parse(text: &str) -> Result<LinkDiagram, LinkError> {
        let t = text.trim_start();
        if t.starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(t).map_err(|e| LinkError::Parse(e.to_string()))?;
            return LinkDiagram::from_json(&v);
        }
        let mut events = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let kind = parts.next().unwrap_or("");
            let pos = parts
                .next()
                .and_then(|p| p.parse::<usize>().ok())
                .ok_or_else(|| LinkError::Parse(format!("line {}: expected `<kind> <pos>`", ln + 1)))?;
            if parts.next().is_some() {
                return Err(LinkError::Parse(format!("line {}: trailing input", ln + 1)));
            }
            events.push(event_from_kind(kind, pos)?);
        }
        LinkDiagram::new(events)
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{} {}", e.kind(), e.pos())?;
        }
        Ok(())
    }
}

fn event_from_kind(kind: &str, pos: usize) -> Result<MorseEvent, LinkError> {
    Ok(match kind {
        "cup" => MorseEvent::Cup(pos),
        "cap" => MorseEvent::Cap(pos),
        "x+" => MorseEvent::Crossing { pos, sign: 1 },
        "x-" => MorseEvent::Crossing { pos, sign: -1 },
        other => return Err(LinkError::Parse(format!("unknown event kind `{other}`"))),
    })
}

/// Number of negative eigenvalues of a symmetric integer matrix, by congruence
/// diagonalization over the rationals.
pub fn negative_index(m: &[Vec<i64>]) -> usize {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut neg = 0;
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // row/column i += row/column j makes a[i][i] = 2 a[i][j]
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let p = a[piv][piv].clone();
        if p.is_negative() {
            neg += 1;
        }
        active.retain(|&i| i != piv);
        for &i in &active {
            let f = &a[i][piv] / &p;
            if f.is_zero() {
                continue;
            }
            for &k in &active {
                let v = &f * &a[piv][k];
                a[i][k] -= v;
            }
        }
        for &i in &active {
            a[i][piv] = BigRational::zero();
            a[piv][i] = BigRational::zero();
        }
    }
    neg
}

/// Insert `count` kinks of the given sign on the right leg of the component's first cup.
pub fn add_kinks(l: &LinkDiagram, comp: usize, count: usize, sign: i8) -> Result<LinkDiagram, LinkError> {
    if comp >= l.num_components() {
        return Err(LinkError::InvalidComponent(comp));
    }
    let fc = l.first_cups()[comp];
    let p = l.events[fc].pos();
    let mut ev = l.events.clone();
    let kink = [MorseEvent::Cup(p + 2), MorseEvent::Crossing { pos: p + 1, sign }, MorseEvent::Cap(p + 2)];
    for _ in 0..count {
        ev.splice(fc + 1..fc + 1, kink);
    }
    LinkDiagram::new(ev)
}

pub fn unknot(framing: i64) -> LinkDiagram {
    let base = LinkDiagram::new(vec![MorseEvent::Cup(0), MorseEvent::Cap(0)]).expect("unknot");
    add_kinks(&base, 0, framing.unsigned_abs() as usize, if framing < 0 { -1 } else { 1 }).expect("unknot")
}

fn with_framings(l: LinkDiagram, framings: &[i64]) -> LinkDiagram {
    let mut out = l;
    for (c, &f) in framings.iter().enumerate() {
        out = add_kinks(&out, c, f.unsigned_abs() as usize, if f < 0 { -1 } else { 1 }).expect("kinks");
    }
    out
}

/// Hopf link with linking number +1 and the given framings.
pub fn hopf_link(f1: i64, f2: i64) -> LinkDiagram {
    use MorseEvent::*;
    let base = LinkDiagram::new(vec![
        Cup(0),
        Cup(2),
        Crossing { pos: 1, sign: 1 },
        Crossing { pos: 1, sign: 1 },
        Cap(0),
        Cap(0),
    ])
    .expect("hopf link");
    with_framings(base, &[f1, f2])
}

/// Linear chain of `k` unknots, consecutive ones linked once, with the given framings
/// (missing framings are 0).
pub fn chain(k: usize, framings: &[i64]) -> LinkDiagram {
    use MorseEvent::*;
    if k == 0 {
        return LinkDiagram::empty();
    }
    let mut ev = vec![Cup(0)];
    for _ in 1..k {
        ev.extend([Cup(2), Crossing { pos: 1, sign: 1 }, Crossing { pos: 1, sign: 1 }, Cap(0)]);
    }
    ev.push(Cap(0));
    let base = LinkDiagram::new(ev).expect("chain");
    let mut f = framings.to_vec();
    f.resize(k, 0);
    with_framings(base, &f)
}

/// Closure of the two-strand braid with three crossings of the given sign (blackboard
/// framing ±3).
pub fn trefoil(sign: i8) -> LinkDiagram {
    use MorseEvent::*;
    let x = Crossing { pos: 0, sign };
    LinkDiagram::new(vec![Cup(0), Cup(1), x, x, x, Cap(1), Cap(0)]).expect("trefoil")
}

/// Append a distant unknot with framing `sign` (±1).
pub fn stabilize(l: &LinkDiagram, sign: i8) -> LinkDiagram {
    disjoint_union(l, &unknot(sign as i64))
}

pub fn disjoint_union(a: &LinkDiagram, b: &LinkDiagram) -> LinkDiagram {
    let mut ev = a.events.clone();
    ev.extend_from_slice(&b.events);
    LinkDiagram::new(ev).expect("union of closed diagrams")
}

/// Result of a handle slide: the new diagram and where each old component went.
#[derive(Clone, Debug)]
pub struct Slide {
    pub diagram: LinkDiagram,
    pub component_map: Vec<usize>,
}

pub fn handle_slide(l: &LinkDiagram, i: usize, j: usize) -> Result<LinkDiagram, LinkError> {
    handle_slide_mapped(l, i, j).map(|s| s.diagram)
}

/// Slide component `i` over component `j`: band-sum `i` with the blackboard push-off of `j`,
/// oriented parallel to `j`.
pub fn handle_slide_mapped(l: &LinkDiagram, i: usize, j: usize) -> Result<Slide, LinkError> {
    let n = l.num_components();
    if i >= n {
        return Err(LinkError::InvalidComponent(i));
    }
    if j >= n || i == j {
        return Err(LinkError::InvalidComponent(j));
    }
    let (ev, cup_index, copy_cup) = double_component(l, j);
    let d = LinkDiagram::from_geometric(&ev)?;
    let comp_of_cup = |e: usize| d.seg_comp[d.levels[e + 1][d.events[e].pos()]];
    let ci = comp_of_cup(cup_index[i]);
    let cj = comp_of_cup(copy_cup);
    let present = |c: usize, k: usize| d.levels[k].iter().any(|&s| d.seg_comp[s] == c);
    let slot_of = |c: usize, k: usize, near: usize| {
        (0..d.levels[k].len())
            .filter(|&s| d.seg_comp[d.levels[k][s]] == c)
            .min_by_key(|&s| s.abs_diff(near))
            .expect("component present")
    };
    let up_at = |k: usize, s: usize| d.seg_up[d.levels[k][s]];

    // insertions before a given doubled-event index, and doubled events to drop
    let mut inserts: BTreeMap<usize, Vec<GeoEvent>> = BTreeMap::new();
    let mut skip = None;
    let mut i_rep_insert: Option<(usize, usize)> = None;
    let common = (0..=ev.len()).find(|&k| present(ci, k) && present(cj, k));
    if let Some(k) = common {
        let (a, b) = d.levels[k]
            .iter()
            .enumerate()
            .filter(|(_, &s)| d.seg_comp[s] == ci)
            .map(|(a, _)| (a, slot_of(cj, k, a)))
            .min_by_key(|&(a, b)| a.abs_diff(b))
            .expect("slid component present");
        let (pre, post, _) = band(a, b, up_at(k, a) == up_at(k, b));
        inserts.insert(k, [pre, post].concat());
    } else {
        let k = copy_cup + 1;
        let first_i = cup_index[i];
        if first_i < copy_cup {
            // the slid component lies entirely below the push-off: carry its top cap up
            let ec = (0..ev.len()).rev().find(|&e| present(ci, e)).expect("slid component");
            let a = ev_pos(&ev[ec]);
            let w = d.levels[ec].len();
            let mut mv = Vec::new();
            for t in a..w - 2 {
                mv.push(GeoEvent::Crossing { pos: t + 1, a_over: true });
                mv.push(GeoEvent::Crossing { pos: t, a_over: true });
            }
            inserts.insert(ec, mv);
            skip = Some(ec);
            let width = d.levels[k].len();
            let b = slot_of(cj, k, width);
            let (pre, post, a_s) = band(width, b, d.seg_up[d.levels[ec][a]] == up_at(k, b));
            inserts.insert(k, [pre, vec![GeoEvent::Cap(a_s)], post].concat());
        } else {
            // the slid component lies entirely above: start it with a cup beside the push-off
            let es = first_i;
            let a = ev_pos(&ev[es]);
            let width = d.levels[k].len();
            let b = slot_of(cj, k, width);
            let (pre, post, _) = band(width, b, up_at(k, b));
            inserts.insert(k, [vec![GeoEvent::Cup(width)], pre, post].concat());
            i_rep_insert = Some((k, 0));
            let w = d.levels[es].len();
            let mut mv = Vec::new();
            for t in (a + 1..=w).rev() {
                mv.push(GeoEvent::Crossing { pos: t - 1, a_over: false });
                mv.push(GeoEvent::Crossing { pos: t, a_over: false });
            }
            inserts.entry(es).or_default().extend(mv);
            skip = Some(es);
        }
    }
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; ev.len()];
    let mut insert_start = BTreeMap::new();
    for idx in 0..=ev.len() {
        if let Some(ins) = inserts.get(&idx) {
            insert_start.insert(idx, out.len());
            out.extend_from_slice(ins);
        }
        if idx < ev.len() && skip != Some(idx) {
            map[idx] = out.len();
            out.push(ev[idx]);
        }
    }
    let res = LinkDiagram::from_geometric(&out)?;
    let comp_at = |e: usize| res.seg_comp[res.levels[e + 1][res.events[e].pos()]];
    let component_map = (0..n)
        .map(|c| match i_rep_insert {
            Some((k, off)) if c == i => comp_at(insert_start[&k] + off),
            _ => comp_at(map[cup_index[c]]),
        })
        .collect();
    Ok(Slide { diagram: res, component_map })
}

fn ev_pos(e: &GeoEvent) -> usize {
    match *e {
        GeoEvent::Cup(p) | GeoEvent::Cap(p) => p,
        GeoEvent::Crossing { pos, .. } => pos,
    }
}

/// Band a strand at slot `a` to a strand at slot `b` of another component, routing a finger
/// of the latter over everything in between. When both run the same way, a zigzag first
/// provides a piece running against the strand at `a`. Returns the events up to the moment
/// the finger is back in place, the closing events of the zigzag, and the slot of the strand
/// from `a` in between.
fn band(a: usize, b: usize, same_direction: bool) -> (Vec<GeoEvent>, Vec<GeoEvent>, usize) {
    let mut pre = Vec::new();
    let mut post = Vec::new();
    let (a, m) = if same_direction {
        pre.push(GeoEvent::Cup(b));
        post.push(GeoEvent::Cap(b + 1));
        (if a > b { a + 2 } else { a }, b + 1)
    } else {
        (a, b)
    };
    if m > a {
        for p in (a + 1..m).rev() {
            pre.push(GeoEvent::Crossing { pos: p, a_over: false });
        }
        pre.extend([GeoEvent::Cap(a), GeoEvent::Cup(a)]);
        for p in a + 1..m {
            pre.push(GeoEvent::Crossing { pos: p, a_over: true });
        }
    } else {
        for p in m..a - 1 {
            pre.push(GeoEvent::Crossing { pos: p, a_over: true });
        }
        pre.extend([GeoEvent::Cap(a - 1), GeoEvent::Cup(a - 1)]);
        for p in (m..a - 1).rev() {
            pre.push(GeoEvent::Crossing { pos: p, a_over: false });
        }
    }
    (pre, post, a)
}

/// Replace component `j` by two blackboard-parallel copies. Returns the new events, the new
/// index of each old component's first cup, and the index of the push-off's first cup.
fn double_component(l: &LinkDiagram, j: usize) -> (Vec<GeoEvent>, Vec<usize>, usize) {
    let geo = l.geometric_events();
    let mut out = Vec::new();
    let mut new_index = vec![0usize; geo.len()];
    let mut copy_cup = usize::MAX;
    for (e, ev) in geo.iter().enumerate() {
        let below = l.level(e);
        let width = |s: usize| if below[s].0 == j { 2 } else { 1 };
        let start = |p: usize| (0..p).map(width).sum::<usize>();
        new_index[e] = out.len();
        match *ev {
            GeoEvent::Cup(p) => {
                let above = l.level(e + 1);
                let q: usize = (0..p).map(|s| if above[s].0 == j { 2 } else { 1 }).sum();
                if above[p].0 == j {
                    out.push(GeoEvent::Cup(q));
                    // the push-off lies to the right of travel; on an up-going left leg that is the inner cup
                    if e == l.first_cups()[j] {
                        copy_cup = out.len();
                    }
                    out.push(GeoEvent::Cup(q + 1));
                } else {
                    out.push(GeoEvent::Cup(q));
                }
            }
            GeoEvent::Cap(p) => {
                let q = start(p);
                if below[p].0 == j {
                    out.push(GeoEvent::Cap(q + 1));
                    out.push(GeoEvent::Cap(q));
                } else {
                    out.push(GeoEvent::Cap(q));
                }
            }
            GeoEvent::Crossing { pos, a_over } => {
                let q = start(pos);
                let (wa, wb) = (width(pos), width(pos + 1));
                for ai in (0..wa).rev() {
                    for kk in 0..wb {
                        out.push(GeoEvent::Crossing { pos: q + ai + kk, a_over });
                    }
                }
            }
        }
    }
    let old_cups = l.first_cups().iter().map(|&e| new_index[e]).collect();
    (out, old_cups, copy_cup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use MorseEvent::*;

    #[test]
    fn unknot_and_kink() {
        let u = LinkDiagram::new(vec![Cup(0), Cap(0)]).unwrap();
        assert_eq!(u.num_components(), 1);
        assert_eq!(u.linking_data().matrix, vec![vec![0]]);
        assert_eq!(u.whitney_degrees(), vec![-1]);
        let k = LinkDiagram::new(vec![Cup(0), Crossing { pos: 0, sign: 1 }, Cap(0)]).unwrap();
        assert_eq!(k.linking_data().matrix, vec![vec![1]]);
        assert_eq!(k.linking_data().b_minus, 0);
        assert_eq!(unknot(-1).linking_data().b_minus, 1);
        for f in -3..=3 {
            assert_eq!(unknot(f).linking_data().matrix, vec![vec![f]]);
        }
    }

    #[test]
    fn rotation_of_circles() {
        assert_eq!(unknot(0).whitney_degrees(), vec![-1]);
        // a single curl turns a clockwise circle into a figure eight
        assert_eq!(unknot(1).whitney_degrees(), vec![0]);
        assert_eq!(unknot(-2).whitney_degrees(), vec![1]);
    }

    #[test]
    fn errors() {
        assert_eq!(LinkDiagram::new(vec![Cup(0)]).unwrap_err(), LinkError::OpenStrand(2));
        assert!(matches!(LinkDiagram::new(vec![Cap(0)]), Err(LinkError::WidthUnderflow { .. })));
        assert!(matches!(LinkDiagram::new(vec![Cup(3), Cap(0)]), Err(LinkError::WidthUnderflow { .. })));
        assert!(LinkDiagram::parse("cup 0\nwiggle 0\n").is_err());
    }

    #[test]
    fn hopf_and_chain() {
        let h = hopf_link(0, 0);
        let ld = h.linking_data();
        assert_eq!(ld.matrix, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(ld.b_minus, 1);
        let c = chain(3, &[]);
        assert_eq!(c.num_components(), 3);
        assert_eq!(c.max_width(), 4);
        assert_eq!(c.linking_data().matrix, vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]);
        assert_eq!(trefoil(1).num_components(), 1);
        assert_eq!(trefoil(1).linking_data().matrix, vec![vec![3]]);
    }

    #[test]
    fn negative_index_cases() {
        assert_eq!(negative_index(&[vec![0, 1], vec![1, 0]]), 1);
        assert_eq!(negative_index(&[vec![-1, 0], vec![0, -2]]), 2);
        assert_eq!(negative_index(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(negative_index(&[vec![1, 2], vec![2, 1]]), 1);
        assert_eq!(negative_index(&[]), 0);
    }

    #[test]
    fn round_trips() {
        let h = hopf_link(1, -2);
        let again = LinkDiagram::parse(&h.to_json().to_string()).unwrap();
        assert_eq!(again.events(), h.events());
        let again = LinkDiagram::parse(&h.to_string()).unwrap();
        assert_eq!(again.events(), h.events());
        let geo = LinkDiagram::from_geometric(&h.geometric_events()).unwrap();
        assert_eq!(geo.events(), h.events());
    }

    #[test]
    fn self_slide_rejected() {
        assert_eq!(handle_slide(&hopf_link(0, 0), 1, 1).unwrap_err(), LinkError::InvalidComponent(1));
        assert_eq!(handle_slide(&hopf_link(0, 0), 0, 2).unwrap_err(), LinkError::InvalidComponent(2));
    }
}
