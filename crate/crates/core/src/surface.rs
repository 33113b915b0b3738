//! Marked ribbon surfaces: ∘-points with their fans of arc ends, the boundary
//! order, elementary polygons and the universal-cover coordinates used for
//! all curve geometry.
//!
//! An arc `v` has two ends `2v` and `2v + 1`. The fan of a ∘-point lists the
//! ends incident to it; consecutive ends `e_j, e_{j+1}` form a corner, which
//! is an arrow `v(e_j) -> v(e_{j+1})`. The polygon on the successor side of
//! an end `h` is traced by `h -> other(succ(h))`; when `h` is last in its fan
//! the polygon meets the boundary segment from `point(h)` to the next ∘-point.
//!
//! On the annulus, every point is lifted to the strip as `(point, k)`. The
//! first boundary component is drawn as the lower line and the second as the
//! upper line; lifting an arc at translate `t` puts end 0 at `t` and end 1 at
//! `t + offset`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{GentlePresentation, Quiver};
use crate::error::{AlgebraError, SurfaceError};
use crate::linalg::{Matrix, Q};

pub type End = usize;

pub fn arc_of(e: End) -> usize {
    e / 2
}

pub fn other(e: End) -> End {
    e ^ 1
}

fn sign(e: End) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Topology {
    Disk,
    Annulus,
    Other { genus: usize, boundary: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenPoint {
    pub id: String,
    pub component: usize,
    pub index: usize,
    pub fan: Vec<End>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenArc {
    pub id: String,
    pub ends: [usize; 2],
    pub offset: i64,
}

/// A face of the arc system, traced from its boundary edge (if any).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    /// the polygon lies on the successor side of each of these ends
    pub states: Vec<End>,
    /// lift of the point of each state, relative to the first corner
    pub state_k: Vec<i64>,
    /// arc edges in trace order
    pub arcs: Vec<usize>,
    /// ∘-corners with relative lifts; the first is the start of the trace
    pub corners: Vec<(usize, i64)>,
    /// the ∘-point after which the boundary edge starts, and its lift
    pub boundary: Option<(usize, i64)>,
}

impl Polygon {
    pub fn is_digon(&self) -> bool {
        self.boundary.is_some() && self.arcs.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryPolygon {
    /// arc ids in cyclic order
    pub edges: Vec<String>,
    pub arc_edges: usize,
    pub boundary_edge: bool,
    /// true when the boundary edge lies on an unmarked boundary component
    pub unmarked: bool,
}

impl ElementaryPolygon {
    pub fn total_edges(&self) -> usize {
        self.arc_edges + usize::from(self.boundary_edge)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeometricDimension {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    /// a ∘-point
    Marked,
    /// the •-point following a ∘-point on the boundary
    Closed,
}

/// A boundary point in the universal cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lifted {
    pub kind: PointKind,
    pub point: usize,
    pub k: i64,
}

impl Lifted {
    pub fn marked(point: usize, k: i64) -> Self {
        Lifted { kind: PointKind::Marked, point, k }
    }

    pub fn closed(point: usize, k: i64) -> Self {
        Lifted { kind: PointKind::Closed, point, k }
    }

    pub fn shift(self, by: i64) -> Self {
        Lifted { k: self.k + by, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedRibbonSurface {
    pub points: Vec<OpenPoint>,
    /// ∘-points of each boundary component, in boundary order
    pub components: Vec<Vec<usize>>,
    pub arcs: Vec<OpenArc>,
    /// per end: the grade of the corner starting at it (0 when there is none)
    pub corner_grades: Vec<i64>,
    /// per end: the arrow id of the corner starting at it, if named
    pub corner_labels: Vec<Option<String>>,
    /// per end: sort key of its corner among the arrows of the algebra
    pub corner_order: Vec<usize>,
    polygons: Vec<Polygon>,
    poly_of_state: Vec<usize>,
    pos_in_fan: Vec<usize>,
    point_of_end: Vec<usize>,
    topology: Topology,
}

struct Trace {
    states: Vec<End>,
    state_k: Vec<i64>,
    arcs: Vec<usize>,
    corners: Vec<(usize, i64)>,
    end: Option<(usize, i64)>,
    /// sum of signed offsets along the trace, as coefficients per arc
    flow: Vec<(usize, i64)>,
}

fn fan_maps(points: &[Vec<End>], n_ends: usize) -> Result<(Vec<usize>, Vec<usize>), SurfaceError> {
    let mut pos = vec![usize::MAX; n_ends];
    let mut pt = vec![usize::MAX; n_ends];
    for (p, fan) in points.iter().enumerate() {
        for (i, &e) in fan.iter().enumerate() {
            if e >= n_ends || pt[e] != usize::MAX {
                return Err(SurfaceError::Invariant(format!("end {e} appears in more than one fan position")));
            }
            pos[e] = i;
            pt[e] = p;
        }
    }
    if let Some(e) = pt.iter().position(|&p| p == usize::MAX) {
        return Err(SurfaceError::Invariant(format!("end {e} of arc {} is not attached to a point", arc_of(e))));
    }
    Ok((pos, pt))
}

fn succ_in(fans: &[Vec<End>], pos: &[usize], pt: &[usize], h: End) -> Option<End> {
    fans[pt[h]].get(pos[h] + 1).copied()
}

/// Traces the polygon starting on the predecessor side of `first`, with the
/// arc offsets `offset` (zero while they are still unknown).
fn trace(fans: &[Vec<End>], pos: &[usize], pt: &[usize], first: End, offset: &[i64]) -> Trace {
    let x = pt[first];
    let mut corners = vec![(x, 0i64)];
    let mut k = sign(first) * offset[arc_of(first)];
    let mut h = other(first);
    let mut t = Trace { states: vec![], state_k: vec![], arcs: vec![arc_of(first)], corners: vec![], end: None, flow: vec![(arc_of(first), sign(first))] };
    loop {
        t.states.push(h);
        t.state_k.push(k);
        corners.push((pt[h], k));
        match succ_in(fans, pos, pt, h) {
            Some(h2) => {
                k += sign(h2) * offset[arc_of(h2)];
                t.arcs.push(arc_of(h2));
                t.flow.push((arc_of(h2), sign(h2)));
                h = other(h2);
            }
            None => {
                t.end = Some((pt[h], k));
                break;
            }
        }
    }
    t.corners = corners;
    t
}

/// Closed trace through `start` (a state whose successor chain never reaches
/// the end of a fan).
fn trace_closed(fans: &[Vec<End>], pos: &[usize], pt: &[usize], start: End, offset: &[i64]) -> Trace {
    let mut t = Trace { states: vec![], state_k: vec![], arcs: vec![], corners: vec![], end: None, flow: vec![] };
    let mut h = start;
    let mut k = 0;
    loop {
        t.states.push(h);
        t.state_k.push(k);
        t.corners.push((pt[h], k));
        let h2 = succ_in(fans, pos, pt, h).expect("closed trace");
        k += sign(h2) * offset[arc_of(h2)];
        t.arcs.push(arc_of(h2));
        t.flow.push((arc_of(h2), sign(h2)));
        h = other(h2);
        if h == start {
            break;
        }
    }
    t
}

impl MarkedRibbonSurface {
    /// Builds a surface from fans. `boundary`, when given, fixes the boundary
    /// order (and is checked against the faces); otherwise it is read off the
    /// faces. Offsets, when given, are checked; otherwise they are solved for.
    pub fn from_fans(
        point_ids: Vec<String>,
        fans: Vec<Vec<End>>,
        arc_ids: Vec<String>,
        boundary: Option<Vec<Vec<usize>>>,
        offsets: Option<Vec<i64>>,
    ) -> Result<Self, SurfaceError> {
        let n_arcs = arc_ids.len();
        let n_ends = 2 * n_arcs;
        if let Some(p) = fans.iter().position(Vec::is_empty) {
            return Err(SurfaceError::Invariant(format!("marked point {} has no arc", point_ids[p])));
        }
        let (pos, pt) = fan_maps(&fans, n_ends)?;
        let zero = vec![0i64; n_arcs];
        let mut traces: Vec<Trace> = Vec::new();
        let mut seen = vec![false; n_ends];
        let mut bnext: Vec<Option<usize>> = vec![None; fans.len()];
        for (x, fan) in fans.iter().enumerate() {
            let t = trace(&fans, &pos, &pt, fan[0], &zero);
            for &s in &t.states {
                if seen[s] {
                    return Err(SurfaceError::Invariant("inconsistent fans: a face is traced twice".into()));
                }
                seen[s] = true;
            }
            let (y, _) = t.end.expect("open trace ends at the boundary");
            if bnext[y].is_some() {
                return Err(SurfaceError::Invariant(format!("point {} ends two faces", point_ids[y])));
            }
            bnext[y] = Some(x);
            traces.push(t);
        }
        let open_faces = traces.len();
        for s in 0..n_ends {
            if !seen[s] {
                let t = trace_closed(&fans, &pos, &pt, s, &zero);
                for &h in &t.states {
                    seen[h] = true;
                }
                traces.push(t);
            }
        }
        let components = match boundary {
            Some(b) => {
                for comp in &b {
                    for (i, &y) in comp.iter().enumerate() {
                        let x = comp[(i + 1) % comp.len()];
                        if bnext[y] != Some(x) {
                            return Err(SurfaceError::Invariant(format!(
                                "the face after point {} does not have exactly one boundary edge",
                                point_ids[y]
                            )));
                        }
                    }
                }
                if b.iter().map(Vec::len).sum::<usize>() != fans.len() {
                    return Err(SurfaceError::Invariant("boundary does not list every marked point once".into()));
                }
                b
            }
            None => {
                let mut comps = Vec::new();
                let mut done = vec![false; fans.len()];
                for s in 0..fans.len() {
                    if done[s] {
                        continue;
                    }
                    let mut comp = vec![];
                    let mut y = s;
                    while !done[y] {
                        done[y] = true;
                        comp.push(y);
                        y = bnext[y].expect("every point ends a face");
                    }
                    comps.push(comp);
                }
                comps
            }
        };
        let mut points: Vec<OpenPoint> = point_ids
            .into_iter()
            .zip(fans.iter())
            .map(|(id, fan)| OpenPoint { id, component: usize::MAX, index: 0, fan: fan.clone() })
            .collect();
        for (c, comp) in components.iter().enumerate() {
            for (i, &p) in comp.iter().enumerate() {
                points[p].component = c;
                points[p].index = i;
            }
        }
        let unmarked = traces.len() - open_faces;
        let boundary_count = components.len() + unmarked;
        let chi = open_faces as i64 - n_arcs as i64;
        let genus2 = 2 - boundary_count as i64 - chi;
        if genus2 < 0 || genus2 % 2 != 0 {
            return Err(SurfaceError::Invariant(format!("impossible Euler characteristic {chi}")));
        }
        let topology = match (genus2 / 2, components.len(), unmarked) {
            (0, 1, 0) => Topology::Disk,
            (0, 2, 0) => Topology::Annulus,
            (g, _, _) => Topology::Other { genus: g as usize, boundary: boundary_count },
        };
        let carry = |y: usize| -> i64 {
            let p = &points[y];
            if topology != Topology::Annulus || p.index + 1 != components[p.component].len() {
                0
            } else if p.component == 0 {
                1
            } else {
                -1
            }
        };
        let offsets = match (topology, offsets) {
            (Topology::Annulus, None) => solve_offsets(&traces, n_arcs, &carry, &pt)?,
            (Topology::Annulus, Some(o)) => o,
            _ => zero.clone(),
        };
        // retrace with offsets to obtain lifts, checking closure
        let mut polygons = Vec::with_capacity(traces.len());
        let mut poly_of_state = vec![0; n_ends];
        for (i, t0) in traces.iter().enumerate() {
            let t = if i < open_faces {
                trace(&fans, &pos, &pt, fans[t0.corners[0].0][0], &offsets)
            } else {
                trace_closed(&fans, &pos, &pt, t0.states[0], &offsets)
            };
            let closure = match t.end {
                Some((y, k)) => k + carry(y),
                None => t.flow.iter().map(|&(a, s)| s * offsets[a]).sum(),
            };
            if closure != 0 {
                return Err(SurfaceError::Invariant("arc offsets do not close up a face".into()));
            }
            for &s in &t.states {
                poly_of_state[s] = i;
            }
            polygons.push(Polygon { states: t.states, state_k: t.state_k, arcs: t.arcs, corners: t.corners, boundary: t.end });
        }
        let arcs = arc_ids
            .into_iter()
            .enumerate()
            .map(|(v, id)| OpenArc { id, ends: [pt[2 * v], pt[2 * v + 1]], offset: offsets[v] })
            .collect();
        Ok(MarkedRibbonSurface {
            points,
            components,
            arcs,
            corner_grades: vec![0; n_ends],
            corner_labels: vec![None; n_ends],
            corner_order: (0..n_ends).collect(),
            polygons,
            poly_of_state,
            pos_in_fan: pos,
            point_of_end: pt,
            topology,
        })
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn point_of(&self, e: End) -> usize {
        self.point_of_end[e]
    }

    pub fn succ(&self, h: End) -> Option<End> {
        self.points[self.point_of_end[h]].fan.get(self.pos_in_fan[h] + 1).copied()
    }

    pub fn pred(&self, h: End) -> Option<End> {
        let p = self.pos_in_fan[h];
        if p == 0 {
            None
        } else {
            Some(self.points[self.point_of_end[h]].fan[p - 1])
        }
    }

    pub fn fan_position(&self, h: End) -> usize {
        self.pos_in_fan[h]
    }

    /// The polygon on the successor side of `h`.
    pub fn polygon_of(&self, h: End) -> usize {
        self.poly_of_state[h]
    }

    pub fn arc_index(&self, id: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a.id == id)
    }

    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    /// Extra points: the •-points lying in digons, indexed by the ∘-point
    /// they follow.
    pub fn extra_points(&self) -> Vec<usize> {
        let mut e: Vec<usize> = self.polygons.iter().filter(|p| p.is_digon()).map(|p| p.boundary.unwrap().0).collect();
        e.sort();
        e
    }

    pub fn is_extra(&self, point: usize) -> bool {
        self.polygons.iter().any(|p| p.is_digon() && p.boundary.map(|b| b.0) == Some(point))
    }

    pub fn bnext(&self, p: usize) -> usize {
        let c = &self.components[self.points[p].component];
        c[(self.points[p].index + 1) % c.len()]
    }

    pub fn bprev(&self, p: usize) -> usize {
        let c = &self.components[self.points[p].component];
        c[(self.points[p].index + c.len() - 1) % c.len()]
    }

    /// Position of a lifted boundary point in the linear order of the strip
    /// boundary: the lower line left to right, then the upper line right to
    /// left.
    pub fn position(&self, x: Lifted) -> (u8, i64) {
        let p = &self.points[x.point];
        let len = self.components[p.component].len() as i64;
        let half = i64::from(x.kind == PointKind::Closed);
        let base = 2 * p.index as i64 + half;
        if p.component == 0 {
            (0, base + 2 * x.k * len)
        } else {
            (1, base - 2 * x.k * len)
        }
    }

    /// The next ∘-point against the boundary order (the positive direction
    /// for endpoint rotation), from a ∘- or •-point.
    pub fn rotate_point(&self, x: Lifted) -> Lifted {
        match x.kind {
            PointKind::Closed => Lifted::marked(x.point, x.k),
            PointKind::Marked => {
                let p = &self.points[x.point];
                let prev = self.bprev(x.point);
                let wraps = p.index == 0;
                let dk = match (self.topology, wraps, p.component) {
                    (Topology::Annulus, true, 0) => -1,
                    (Topology::Annulus, true, _) => 1,
                    _ => 0,
                };
                Lifted::marked(prev, x.k + dk)
            }
        }
    }

    /// Endpoints of arc `v` lifted at translate `t`.
    pub fn arc_lift(&self, v: usize, t: i64) -> (Lifted, Lifted) {
        let a = &self.arcs[v];
        (Lifted::marked(a.ends[0], t), Lifted::marked(a.ends[1], t + a.offset))
    }

    /// Lift of the point of end `e` when its arc is lifted at translate `t`.
    pub fn end_lift(&self, e: End, t: i64) -> Lifted {
        let (a, b) = self.arc_lift(arc_of(e), t);
        if e % 2 == 0 {
            a
        } else {
            b
        }
    }

    /// Translate at which arc `arc_of(e)` has end `e` at lift `k`.
    pub fn translate_for_end(&self, e: End, k: i64) -> i64 {
        if e % 2 == 0 {
            k
        } else {
            k - self.arcs[arc_of(e)].offset
        }
    }

    /// Shift taking relative lifts of polygon `poly_of(h)` to absolute ones,
    /// given that the point of `h` sits at lift `k`.
    pub fn polygon_shift(&self, h: End, k: i64) -> i64 {
        let poly = &self.polygons[self.poly_of_state[h]];
        let i = poly.states.iter().position(|&s| s == h).expect("state of its own polygon");
        k - poly.state_k[i]
    }

    /// The dual •-arc of `v` lifted at translate `t`: it joins the •-points of
    /// the two polygons on either side of `v`.
    pub fn dual_arc_lift(&self, v: usize, t: i64) -> Option<(Lifted, Lifted)> {
        let mut ends = [None, None];
        for side in 0..2 {
            let h = 2 * v + side;
            let poly = &self.polygons[self.poly_of_state[h]];
            let (y, ky) = poly.boundary?;
            let shift = self.polygon_shift(h, self.end_lift(h, t).k);
            ends[side] = Some(Lifted::closed(y, ky + shift));
        }
        Some((ends[0]?, ends[1]?))
    }

    pub fn elementary_polygons(&self) -> Vec<ElementaryPolygon> {
        self.polygons
            .iter()
            .map(|p| ElementaryPolygon {
                edges: p.arcs.iter().map(|&a| self.arcs[a].id.clone()).collect(),
                arc_edges: p.arcs.len(),
                boundary_edge: true,
                unmarked: p.boundary.is_none(),
            })
            .collect()
    }

    /// Maximal number of arc edges of an elementary polygon, minus one;
    /// infinite when a polygon contains an unmarked boundary component.
    pub fn global_dimension(&self) -> GeometricDimension {
        if self.polygons.iter().any(|p| p.boundary.is_none()) {
            return GeometricDimension::Infinite;
        }
        GeometricDimension::Finite(self.polygons.iter().map(|p| p.arcs.len()).max().unwrap_or(1) - 1)
    }

    /// The graded bound quiver of the arc system: one vertex per arc, one arrow
    /// per corner, and a relation for each pair of consecutive corners of a
    /// polygon.
    pub fn algebra(&self) -> Result<GentlePresentation, SurfaceError> {
        let n_ends = 2 * self.arcs.len();
        let mut arrow_id: Vec<Option<String>> = vec![None; n_ends];
        let mut triples = Vec::new();
        let mut grades = BTreeMap::new();
        let mut order: Vec<End> = (0..n_ends).collect();
        order.sort_by_key(|&h| (self.corner_order[h], h));
        for h in order {
            if let Some(h2) = self.succ(h) {
                let id = self.corner_labels[h].clone().unwrap_or_else(|| {
                    format!("{}>{}@{}", self.arcs[arc_of(h)].id, self.arcs[arc_of(h2)].id, self.points[self.point_of(h)].id)
                });
                triples.push((id.clone(), self.arcs[arc_of(h)].id.clone(), self.arcs[arc_of(h2)].id.clone()));
                grades.insert(id.clone(), self.corner_grades[h]);
                arrow_id[h] = Some(id);
            }
        }
        let quiver = Quiver::new(self.arcs.iter().map(|a| a.id.clone()), triples)?;
        let mut relations = Vec::new();
        for poly in &self.polygons {
            let r = poly.states.len();
            for i in 0..r {
                let h = poly.states[i];
                let Some(h2) = self.succ(h) else { continue };
                let next = other(h2);
                let closing = i + 1 == r;
                if closing && poly.boundary.is_some() {
                    continue;
                }
                if self.succ(next).is_some() {
                    relations.push((arrow_id[h].clone().unwrap(), arrow_id[next].clone().unwrap()));
                }
            }
        }
        let p = GentlePresentation::new(quiver, relations, &grades)?;
        let diag = p.validate_gentle();
        if !diag.is_ok() {
            return Err(SurfaceError::Algebra(AlgebraError::Internal(format!("surface algebra is not gentle: {:?}", diag.violations))));
        }
        Ok(p)
    }
}

/// Solves the lift offsets of an annulus: every face closes up in the cover,
/// and the first arc joining the two boundary components has offset 0.
fn solve_offsets(
    traces: &[Trace],
    n_arcs: usize,
    carry: &dyn Fn(usize) -> i64,
    pt: &[usize],
) -> Result<Vec<i64>, SurfaceError> {
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for t in traces {
        let mut row = vec![Q::int(0); n_arcs + 1];
        for &(a, s) in &t.flow {
            row[a] += &Q::int(s);
        }
        let c = t.end.map_or(0, |(y, _)| carry(y));
        row[n_arcs] = Q::int(-c);
        rows.push(row);
    }
    let bridging = (0..n_arcs).find(|&v| pt[2 * v] != pt[2 * v + 1] && component_differs(traces, pt, v));
    let gauge = bridging.ok_or_else(|| SurfaceError::Invariant("annulus without an arc joining its boundary components".into()))?;
    let mut g = vec![Q::int(0); n_arcs + 1];
    g[gauge] = Q::int(1);
    rows.push(g);
    let m = Matrix::from_rows(rows.iter().map(|r| r[..n_arcs].to_vec()).collect(), n_arcs);
    let b: Vec<Q> = rows.iter().map(|r| r[n_arcs].clone()).collect();
    let x = m.solve(&b).ok_or_else(|| SurfaceError::Invariant("faces cannot be lifted consistently".into()))?;
    if m.rank() != n_arcs {
        return Err(SurfaceError::Invariant("arc offsets are not determined by the faces".into()));
    }
    x.iter()
        .map(|q| match q {
            Q::Small(n, 1) => Ok(*n),
            _ => Err(SurfaceError::Invariant("non-integral arc offset".into())),
        })
        .collect()
}

/// Whether the endpoints of `v` lie on different boundary components.
fn component_differs(traces: &[Trace], pt: &[usize], v: usize) -> bool {
    let n_points = pt.iter().copied().max().map_or(0, |m| m + 1);
    let mut bnext = vec![usize::MAX; n_points];
    for t in traces {
        if let Some((y, _)) = t.end {
            bnext[y] = t.corners[0].0;
        }
    }
    let (a, b) = (pt[2 * v], pt[2 * v + 1]);
    let mut y = a;
    for _ in 0..n_points {
        if y == b {
            return false;
        }
        y = bnext[y];
        if y == usize::MAX {
            return true;
        }
    }
    true
}

/// The marked ribbon surface of a connected gentle algebra: ∘-points are the
/// maximal paths without relations (including trivial ones), and the fan of a
/// point lists the vertices along its path.
pub fn surface_from_algebra(p: &GentlePresentation) -> Result<MarkedRibbonSurface, SurfaceError> {
    let diag = p.validate_gentle();
    if !diag.is_ok() {
        return Err(SurfaceError::Algebra(AlgebraError::NotGentle));
    }
    if p.vertex_count() == 0 || p.component_vertex_sets().len() != 1 {
        return Err(SurfaceError::Algebra(AlgebraError::NotConnected));
    }
    if !p.is_finite_dimensional() {
        return Err(SurfaceError::Algebra(AlgebraError::NotFiniteDimensional));
    }
    let q = p.quiver();
    let n = p.vertex_count();
    // threads as vertex sequences, with the arrow between consecutive entries
    let mut threads: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for a in 0..q.arrow_count() {
        if p.free_predecessor(a).is_some() {
            continue;
        }
        let mut verts = vec![q.arrow(a).source, q.arrow(a).target];
        let mut arrows = vec![a];
        let mut cur = a;
        while let Some(b) = p.free_successor(cur) {
            verts.push(q.arrow(b).target);
            arrows.push(b);
            cur = b;
        }
        threads.push((verts, arrows));
    }
    let mut occurrences = vec![0usize; n];
    for (verts, _) in &threads {
        for &v in verts {
            occurrences[v] += 1;
        }
    }
    for v in 0..n {
        if occurrences[v] > 2 {
            return Err(SurfaceError::Invariant(format!("vertex {} lies on more than two threads", q.vertices()[v])));
        }
        for _ in occurrences[v]..2 {
            threads.push((vec![v], vec![]));
        }
    }
    threads.sort();
    let mut used = vec![0usize; n];
    let mut fans = Vec::with_capacity(threads.len());
    let mut labels: Vec<Option<String>> = vec![None; 2 * n];
    let mut grades = vec![0i64; 2 * n];
    let mut corner_order: Vec<usize> = (0..2 * n).map(|h| q.arrow_count() + h).collect();
    for (verts, arrows) in &threads {
        let fan: Vec<End> = verts
            .iter()
            .map(|&v| {
                let e = 2 * v + used[v];
                used[v] += 1;
                e
            })
            .collect();
        for (i, &a) in arrows.iter().enumerate() {
            labels[fan[i]] = Some(q.arrow(a).id.clone());
            grades[fan[i]] = p.grade(a);
            corner_order[fan[i]] = a;
        }
        fans.push(fan);
    }
    let ids = (0..fans.len()).map(|i| format!("o{i}")).collect();
    let mut s = MarkedRibbonSurface::from_fans(ids, fans, q.vertices().to_vec(), None, None)?;
    s.corner_labels = labels;
    s.corner_grades = grades;
    s.corner_order = corner_order;
    Ok(s)
}

/// Surfaces of each connected component.
pub fn surfaces_from_algebra(p: &GentlePresentation) -> Result<Vec<MarkedRibbonSurface>, SurfaceError> {
    p.connected_components().iter().map(surface_from_algebra).collect()
}

/// Geometric global dimension of a possibly disconnected gentle algebra.
pub fn global_dimension_geometric(p: &GentlePresentation) -> Result<GeometricDimension, SurfaceError> {
    Ok(surfaces_from_algebra(p)?.iter().map(|s| s.global_dimension()).max().unwrap_or(GeometricDimension::Finite(0)))
}

// ---- serialisation ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub color: String,
    pub id: String,
    #[serde(default)]
    pub extra: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub id: String,
    pub endpoints: [String; 2],
    /// position of the arc in the fan at each endpoint
    pub fan: [usize; 2],
    #[serde(default)]
    pub winding: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grade: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerJson {
    pub point: String,
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub grade: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceJson {
    pub topology: Topology,
    pub boundary: Vec<Vec<PointJson>>,
    pub open_arcs: Vec<ArcJson>,
    pub closed_arcs: Vec<ArcJson>,
    pub corners: Vec<CornerJson>,
}

impl MarkedRibbonSurface {
    fn closed_id(&self, p: usize) -> String {
        format!("{}*", self.points[p].id)
    }

    pub fn to_json(&self) -> SurfaceJson {
        let boundary = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .flat_map(|&p| {
                        [
                            PointJson { color: "open".into(), id: self.points[p].id.clone(), extra: false },
                            PointJson { color: "closed".into(), id: self.closed_id(p), extra: self.is_extra(p) },
                        ]
                    })
                    .collect()
            })
            .collect();
        let open_arcs = self
            .arcs
            .iter()
            .enumerate()
            .map(|(v, a)| ArcJson {
                id: a.id.clone(),
                endpoints: [self.points[a.ends[0]].id.clone(), self.points[a.ends[1]].id.clone()],
                fan: [self.pos_in_fan[2 * v], self.pos_in_fan[2 * v + 1]],
                winding: a.offset,
                grade: None,
            })
            .collect();
        let closed_arcs = (0..self.arcs.len())
            .filter_map(|v| {
                let (a, b) = self.dual_arc_lift(v, 0)?;
                Some(ArcJson {
                    id: format!("{}*", self.arcs[v].id),
                    endpoints: [self.closed_id(a.point), self.closed_id(b.point)],
                    fan: [0, 0],
                    winding: b.k - a.k,
                    grade: Some(0),
                })
            })
            .collect();
        let mut order: Vec<End> = (0..2 * self.arcs.len()).collect();
        order.sort_by_key(|&h| (self.corner_order[h], h));
        let corners = order
            .into_iter()
            .filter_map(|h| {
                let h2 = self.succ(h)?;
                Some(CornerJson {
                    point: self.points[self.point_of(h)].id.clone(),
                    from: self.arcs[arc_of(h)].id.clone(),
                    to: self.arcs[arc_of(h2)].id.clone(),
                    label: self.corner_labels[h].clone(),
                    grade: self.corner_grades[h],
                })
            })
            .collect();
        SurfaceJson { topology: self.topology, boundary, open_arcs, closed_arcs, corners }
    }

    pub fn from_json(j: &SurfaceJson) -> Result<Self, SurfaceError> {
        let mut point_ids = Vec::new();
        let mut boundary = Vec::new();
        for comp in &j.boundary {
            let mut c = Vec::new();
            let mut expect_open = true;
            for pj in comp {
                let open = pj.color == "open";
                if open != expect_open {
                    return Err(SurfaceError::Invariant("∘- and •-points do not alternate".into()));
                }
                expect_open = !expect_open;
                if open {
                    c.push(point_ids.len());
                    point_ids.push(pj.id.clone());
                }
            }
            if !expect_open {
                return Err(SurfaceError::Invariant("boundary component ends on a ∘-point".into()));
            }
            boundary.push(c);
        }
        let pidx = |id: &str| point_ids.iter().position(|p| p == id).ok_or_else(|| SurfaceError::Invariant(format!("unknown point {id}")));
        let mut slots: Vec<BTreeMap<usize, End>> = vec![BTreeMap::new(); point_ids.len()];
        let mut arc_ids = Vec::new();
        let mut offsets = Vec::new();
        for (v, a) in j.open_arcs.iter().enumerate() {
            for side in 0..2 {
                let p = pidx(&a.endpoints[side])?;
                if slots[p].insert(a.fan[side], 2 * v + side).is_some() {
                    return Err(SurfaceError::Invariant(format!("two arcs share fan position {} at {}", a.fan[side], a.endpoints[side])));
                }
            }
            arc_ids.push(a.id.clone());
            offsets.push(a.winding);
        }
        let fans: Vec<Vec<End>> = slots.into_iter().map(|m| m.into_values().collect()).collect();
        let mut s = MarkedRibbonSurface::from_fans(point_ids, fans, arc_ids, Some(boundary), Some(offsets))?;
        for (i, c) in j.corners.iter().enumerate() {
            let from = s.arc_index(&c.from).ok_or_else(|| SurfaceError::Invariant(format!("unknown arc {}", c.from)))?;
            let p = s.point_index(&c.point).ok_or_else(|| SurfaceError::Invariant(format!("unknown point {}", c.point)))?;
            let h = [2 * from, 2 * from + 1]
                .into_iter()
                .find(|&h| s.point_of(h) == p && s.succ(h).map(|h2| s.arcs[arc_of(h2)].id == c.to).unwrap_or(false))
                .ok_or_else(|| SurfaceError::Invariant(format!("no corner {} -> {} at {}", c.from, c.to, c.point)))?;
            s.corner_grades[h] = c.grade;
            s.corner_labels[h] = c.label.clone();
            s.corner_order[h] = i;
        }
        for (mine, theirs) in s.to_json().boundary.iter().flatten().zip(j.boundary.iter().flatten()) {
            if mine.extra != theirs.extra {
                return Err(SurfaceError::Invariant(format!("extra-point flag of {} disagrees with the digons", theirs.id)));
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(v: &[&str], a: &[(&str, &str, &str)], r: &[(&str, &str)]) -> GentlePresentation {
        GentlePresentation::build(v, a, r).unwrap()
    }

    #[test]
    fn single_vertex_is_a_disk_with_two_digons() {
        let s = surface_from_algebra(&build(&["1"], &[], &[])).unwrap();
        assert_eq!(s.topology(), Topology::Disk);
        assert_eq!(s.point_count(), 2);
        assert_eq!(s.arc_count(), 1);
        assert_eq!(s.elementary_polygons().iter().map(|p| p.arc_edges).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(s.global_dimension(), GeometricDimension::Finite(0));
        assert_eq!(s.extra_points().len(), 2);
    }

    #[test]
    fn a2_surface() {
        let p = build(&["1", "2"], &[("a", "1", "2")], &[]);
        let s = surface_from_algebra(&p).unwrap();
        assert_eq!(s.topology(), Topology::Disk);
        assert_eq!(s.point_count(), 3);
        let shared = s.arcs[0].ends.iter().filter(|e| s.arcs[1].ends.contains(e)).count();
        assert_eq!(shared, 1);
        assert_eq!(s.algebra().unwrap(), p);
        assert_eq!(s.global_dimension(), GeometricDimension::Finite(1));
    }

    #[test]
    fn relation_fan_gives_triangle_free_polygon() {
        let p = build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[("a", "b")]);
        let s = surface_from_algebra(&p).unwrap();
        assert_eq!(s.point_count(), 4);
        assert_eq!(s.elementary_polygons().iter().map(|p| p.arc_edges).max(), Some(3));
        assert_eq!(s.global_dimension(), GeometricDimension::Finite(2));
        let back = s.algebra().unwrap();
        assert_eq!(back.relations().len(), 1);
        assert!(back.is_isomorphic(&p));
    }

    #[test]
    fn kronecker_is_an_annulus() {
        let p = build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[]);
        let s = surface_from_algebra(&p).unwrap();
        assert_eq!(s.topology(), Topology::Annulus);
        assert_eq!(s.components.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1]);
        assert!(s.algebra().unwrap().is_isomorphic(&p));
        let json = s.to_json();
        let back = MarkedRibbonSurface::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn json_round_trip_disk() {
        let p = build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")], &[]);
        let s = surface_from_algebra(&p).unwrap();
        let j = s.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back = MarkedRibbonSurface::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(back.algebra().unwrap().is_isomorphic(&p));
    }

    #[test]
    fn oriented_cycle_with_relations_has_unmarked_boundary() {
        let p = build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[("a", "b"), ("b", "a")]);
        let s = surface_from_algebra(&p).unwrap();
        assert_eq!(s.global_dimension(), GeometricDimension::Infinite);
        assert!(s.algebra().unwrap().is_isomorphic(&p));
    }
}
