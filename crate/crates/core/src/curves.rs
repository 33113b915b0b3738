//! Permissible curves and the string/band module dictionary.
//!
//! A curve crossing arcs `a^1, ..., a^m` is stored as the ends `g_1, ..., g_m`
//! with `g_i` an end of `a^i` whose successor side is the polygon entered at
//! the `i`-th crossing. Consecutive crossings turn around a shared ∘-corner:
//! either `succ(g_i) = g_{i+1}` (a direct letter) or
//! `succ(other(g_{i+1})) = other(g_i)` (an inverse letter).

use serde::{Deserialize, Serialize};

use crate::algebra::GentlePresentation;
use crate::error::CurveError;
use crate::linalg::{Matrix, Q};
use crate::oracle::Representation;
use crate::surface::{arc_of, other, surface_from_algebra, End, Lifted, MarkedRibbonSurface, PointKind};

/// One letter of a string: an arrow read forwards or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

/// A walk in the quiver: the starting vertex and the letters read from it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringWalk {
    pub start: usize,
    pub letters: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermissibleCurve {
    pub ends: Vec<End>,
    /// endpoints in the cover, with `a^1` lifted at translate 0
    pub start: Lifted,
    pub end: Lifted,
}

impl PermissibleCurve {
    pub fn crossing_count(&self) -> usize {
        self.ends.len()
    }

    pub fn arcs(&self) -> Vec<usize> {
        self.ends.iter().map(|&e| arc_of(e)).collect()
    }

    pub fn winding(&self) -> i64 {
        self.end.k - self.start.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedCurve {
    pub ends: Vec<End>,
    pub winding: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandData {
    pub eigenvalue: Q,
    pub size: usize,
}

/// Result of checking a raw crossing list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Permissibility {
    pub permissible: bool,
    /// crossing positions of the first pair without a common ∘-endpoint
    pub violation: Option<(usize, usize)>,
    pub reason: Option<String>,
}

/// Which end of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Start,
    End,
}

/// A surface with its algebra and the correspondence between corners and
/// arrows.
#[derive(Clone, Debug)]
pub struct StringModel {
    pub surface: MarkedRibbonSurface,
    pub pres: GentlePresentation,
    corner_arrow: Vec<Option<usize>>,
    arrow_corner: Vec<End>,
}

impl StringModel {
    pub fn new(surface: MarkedRibbonSurface) -> Result<Self, CurveError> {
        let pres = surface.algebra()?;
        let n_ends = 2 * surface.arc_count();
        let mut order: Vec<End> = (0..n_ends).filter(|&h| surface.succ(h).is_some()).collect();
        order.sort_by_key(|&h| (surface.corner_order[h], h));
        let mut corner_arrow = vec![None; n_ends];
        for (a, &h) in order.iter().enumerate() {
            corner_arrow[h] = Some(a);
        }
        let arrow_corner = order;
        Ok(StringModel { surface, pres, corner_arrow, arrow_corner })
    }

    pub fn from_algebra(p: &GentlePresentation) -> Result<Self, CurveError> {
        StringModel::new(surface_from_algebra(p)?)
    }

    pub fn corner_of_arrow(&self, a: usize) -> End {
        self.arrow_corner[a]
    }

    pub fn arrow_of_corner(&self, h: End) -> Option<usize> {
        self.corner_arrow[h]
    }

    // ---- lifting ----

    /// Translates of the crossed arcs, with the first at 0.
    pub fn translates(&self, ends: &[End]) -> Vec<i64> {
        let mut ts = Vec::with_capacity(ends.len());
        let mut t = 0;
        for (i, &g) in ends.iter().enumerate() {
            ts.push(t);
            if let Some(&g2) = ends.get(i + 1) {
                t = self.next_translate(g, t, other(g2));
            }
        }
        ts
    }

    fn next_translate(&self, g: End, t: i64, f: End) -> i64 {
        let s = &self.surface;
        let shift = s.polygon_shift(g, s.end_lift(g, t).k);
        let poly = &s.polygons()[s.polygon_of(g)];
        let j = poly.states.iter().position(|&x| x == f).expect("leaving edge of the entered polygon");
        s.translate_for_end(f, poly.state_k[j] + shift)
    }

    /// Endpoint in the polygon on the successor side of `f`, away from the
    /// edge of `f`, with `arc_of(f)` lifted at translate `t`.
    fn endpoint(&self, f: End, t: i64) -> Result<Lifted, CurveError> {
        let s = &self.surface;
        let poly = &s.polygons()[s.polygon_of(f)];
        let shift = s.polygon_shift(f, s.end_lift(f, t).k);
        let Some((y, ky)) = poly.boundary else {
            return Err(CurveError::Ambiguous("curve ends in a polygon around an unmarked boundary".into()));
        };
        if poly.arcs.len() == 1 {
            return Ok(Lifted::closed(y, ky + shift));
        }
        let j = poly.states.iter().position(|&x| x == f).unwrap();
        let free: Vec<&(usize, i64)> = poly.corners.iter().enumerate().filter(|(i, _)| *i != j && *i != j + 1).map(|(_, c)| c).collect();
        match free.as_slice() {
            [c] => Ok(Lifted::marked(c.0, c.1 + shift)),
            _ => Err(CurveError::Ambiguous(format!("end polygon has {} free corners", free.len()))),
        }
    }

    fn is_step(&self, g: End, g2: End) -> bool {
        let s = &self.surface;
        s.succ(g) == Some(g2) || s.succ(other(g2)) == Some(other(g))
    }

    /// The possible next ends after `g`.
    pub fn steps(&self, g: End) -> Vec<End> {
        let s = &self.surface;
        let mut out = Vec::with_capacity(2);
        if let Some(g2) = s.succ(g) {
            out.push(g2);
        }
        if let Some(p) = s.pred(other(g)) {
            out.push(other(p));
        }
        out
    }

    /// Builds the curve through the given ends, checking permissibility and
    /// placing its endpoints.
    pub fn curve(&self, ends: Vec<End>) -> Result<PermissibleCurve, CurveError> {
        if ends.is_empty() {
            return Err(CurveError::ZeroModule);
        }
        let n_ends = 2 * self.surface.arc_count();
        if let Some(&e) = ends.iter().find(|&&e| e >= n_ends) {
            return Err(CurveError::UnknownArc(format!("#{}", arc_of(e))));
        }
        for w in ends.windows(2) {
            if !self.is_step(w[0], w[1]) {
                return Err(CurveError::NotPermissible(format!(
                    "arcs {} and {} are not consecutive at a common marked point",
                    self.surface.arcs[arc_of(w[0])].id,
                    self.surface.arcs[arc_of(w[1])].id
                )));
            }
        }
        let ts = self.translates(&ends);
        let start = self.endpoint(other(ends[0]), 0)?;
        let m = ends.len();
        let end = self.endpoint(ends[m - 1], ts[m - 1])?;
        Ok(PermissibleCurve { ends, start, end })
    }

    pub fn reverse(&self, c: &PermissibleCurve) -> PermissibleCurve {
        let ends: Vec<End> = c.ends.iter().rev().map(|&e| other(e)).collect();
        self.curve(ends).expect("reverse of a permissible curve")
    }

    /// The representative of `c` up to orientation with the smaller encoding.
    pub fn canonical(&self, c: &PermissibleCurve) -> PermissibleCurve {
        let r: Vec<End> = c.ends.iter().rev().map(|&e| other(e)).collect();
        if r < c.ends {
            self.reverse(c)
        } else {
            c.clone()
        }
    }

    pub fn equivalent(&self, a: &PermissibleCurve, b: &PermissibleCurve) -> bool {
        self.canonical(a).ends == self.canonical(b).ends
    }

    /// `c_simp(a)`: the curve crossing only arc `v`.
    pub fn simple_curve(&self, v: usize) -> PermissibleCurve {
        self.curve(vec![2 * v]).expect("single crossing")
    }

    /// Resolves a raw crossing list (arc indices) to curves, optionally
    /// filtered by winding.
    pub fn resolve(&self, arcs: &[usize], winding: Option<i64>) -> Result<Vec<PermissibleCurve>, CurveError> {
        let n = self.surface.arc_count();
        if let Some(&a) = arcs.iter().find(|&&a| a >= n) {
            return Err(CurveError::UnknownArc(format!("#{a}")));
        }
        if arcs.is_empty() {
            return Err(CurveError::ZeroModule);
        }
        let mut partial: Vec<Vec<End>> = vec![vec![2 * arcs[0]], vec![2 * arcs[0] + 1]];
        for &a in &arcs[1..] {
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    let last = *p.last().unwrap();
                    self.steps(last).into_iter().filter(|&g| arc_of(g) == a).map(move |g| {
                        let mut q = p.clone();
                        q.push(g);
                        q
                    })
                })
                .collect();
        }
        let mut out: Vec<PermissibleCurve> = Vec::new();
        for p in partial {
            let Ok(c) = self.curve(p) else { continue };
            if winding.map_or(true, |w| w == c.winding() || w == -c.winding()) {
                let c = self.canonical(&c);
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }

    /// Checks a raw crossing list for the permissibility conditions.
    pub fn is_permissible(&self, arcs: &[usize]) -> Result<Permissibility, CurveError> {
        let n = self.surface.arc_count();
        if let Some(&a) = arcs.iter().find(|&&a| a >= n) {
            return Err(CurveError::UnknownArc(format!("#{a}")));
        }
        let shares = |a: usize, b: usize| {
            [2 * a, 2 * a + 1].into_iter().any(|g| self.steps(g).into_iter().any(|g2| arc_of(g2) == b))
        };
        for (i, w) in arcs.windows(2).enumerate() {
            if !shares(w[0], w[1]) {
                return Ok(Permissibility {
                    permissible: false,
                    violation: Some((i, i + 1)),
                    reason: Some(format!(
                        "{} and {} are not consecutive at a common marked point",
                        self.surface.arcs[w[0]].id, self.surface.arcs[w[1]].id
                    )),
                });
            }
        }
        if arcs.is_empty() {
            return Ok(Permissibility { permissible: true, violation: None, reason: None });
        }
        match self.resolve(arcs, None) {
            Ok(cs) if !cs.is_empty() => Ok(Permissibility { permissible: true, violation: None, reason: None }),
            Ok(_) => Ok(Permissibility {
                permissible: false,
                violation: None,
                reason: Some("no consistent sequence of turns through the crossings".into()),
            }),
            Err(e) => Ok(Permissibility { permissible: false, violation: None, reason: Some(e.to_string()) }),
        }
    }

    // ---- strings ----

    pub fn walk(&self, c: &PermissibleCurve) -> StringWalk {
        StringWalk { start: arc_of(c.ends[0]), letters: self.letters(&c.ends, false) }
    }

    fn letters(&self, ends: &[End], cyclic: bool) -> Vec<Letter> {
        let s = &self.surface;
        let m = ends.len();
        let count = if cyclic { m } else { m.saturating_sub(1) };
        (0..count)
            .map(|i| {
                let (g, g2) = (ends[i], ends[(i + 1) % m]);
                if s.succ(g) == Some(g2) {
                    Letter { arrow: self.corner_arrow[g].unwrap(), inverse: false }
                } else {
                    Letter { arrow: self.corner_arrow[other(g2)].unwrap(), inverse: true }
                }
            })
            .collect()
    }

    /// Vertices visited by a walk, or an error if the letters do not chain.
    pub fn walk_vertices(&self, w: &StringWalk) -> Result<Vec<usize>, CurveError> {
        let q = self.pres.quiver();
        if w.start >= q.vertex_count() {
            return Err(CurveError::NotAString(format!("unknown vertex #{}", w.start)));
        }
        let mut vs = vec![w.start];
        for l in &w.letters {
            if l.arrow >= q.arrow_count() {
                return Err(CurveError::NotAString(format!("unknown arrow #{}", l.arrow)));
            }
            let a = q.arrow(l.arrow);
            let (from, to) = if l.inverse { (a.target, a.source) } else { (a.source, a.target) };
            if *vs.last().unwrap() != from {
                return Err(CurveError::NotAString(format!("letter {} does not start at {}", a.id, q.vertices()[*vs.last().unwrap()])));
            }
            vs.push(to);
        }
        Ok(vs)
    }

    fn ends_of_walk(&self, w: &StringWalk) -> Result<Vec<End>, CurveError> {
        self.walk_vertices(w)?;
        let s = &self.surface;
        let mut ends: Vec<Option<End>> = vec![None; w.letters.len() + 1];
        for (i, l) in w.letters.iter().enumerate() {
            let h = self.arrow_corner[l.arrow];
            let h2 = s.succ(h).unwrap();
            let (gi, gj) = if l.inverse { (other(h2), other(h)) } else { (h, h2) };
            for (slot, want) in [(i, gi), (i + 1, gj)] {
                match ends[slot] {
                    Some(e) if e != want => {
                        return Err(CurveError::NotAString(format!("letters {} and {} meet in a relation or cancel", slot, slot + 1)))
                    }
                    _ => ends[slot] = Some(want),
                }
            }
        }
        Ok(ends.into_iter().map(|e| e.unwrap_or(2 * w.start)).collect())
    }

    /// The curve of a string module.
    pub fn curve_of_walk(&self, w: &StringWalk) -> Result<PermissibleCurve, CurveError> {
        let ends = self.ends_of_walk(w)?;
        Ok(self.canonical(&self.curve(ends)?))
    }

    /// The string module of a curve: one basis vector per crossing, and each
    /// letter acting as the identity between its two positions.
    pub fn module_of_curve(&self, c: &PermissibleCurve) -> Result<Representation, CurveError> {
        if c.ends.is_empty() {
            return Err(CurveError::ZeroModule);
        }
        Ok(self.string_rep(&c.ends, &self.letters(&c.ends, false), None))
    }

    fn string_rep(&self, ends: &[End], letters: &[Letter], band: Option<&BandData>) -> Representation {
        let q = self.pres.quiver();
        let k = band.map_or(1, |b| b.size);
        let mut dims = vec![0usize; q.vertex_count()];
        let mut offset = Vec::with_capacity(ends.len());
        for &g in ends {
            offset.push(dims[arc_of(g)]);
            dims[arc_of(g)] += k;
        }
        let mut maps: Vec<Matrix> = q.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        let m = ends.len();
        for (i, l) in letters.iter().enumerate() {
            let j = (i + 1) % m;
            let (from, to) = if l.inverse { (j, i) } else { (i, j) };
            let last = band.is_some() && i + 1 == letters.len();
            for r in 0..k {
                for c in 0..k {
                    let x = match (last, band) {
                        (true, Some(b)) if r == c => b.eigenvalue.clone(),
                        (true, Some(_)) if c == r + 1 => Q::int(1),
                        _ if r == c => Q::int(1),
                        _ => continue,
                    };
                    maps[l.arrow].set(offset[to] + r, offset[from] + c, x);
                }
            }
        }
        Representation { dims, maps }
    }

    /// Positions of `c` in the top and in the socle of its module.
    pub fn top_socle_positions(&self, c: &PermissibleCurve) -> (Vec<usize>, Vec<usize>) {
        let l = self.letters(&c.ends, false);
        let m = c.ends.len();
        let into = |i: usize| (i > 0 && !l[i - 1].inverse) || (i + 1 < m && l[i].inverse);
        let out = |i: usize| (i > 0 && l[i - 1].inverse) || (i + 1 < m && !l[i].inverse);
        ((0..m).filter(|&i| !into(i)).collect(), (0..m).filter(|&i| !out(i)).collect())
    }

    /// Arcs of `c` in the top and in the socle.
    pub fn top_socle_arcs(&self, c: &PermissibleCurve) -> (Vec<usize>, Vec<usize>) {
        let (t, s) = self.top_socle_positions(c);
        (t.iter().map(|&i| arc_of(c.ends[i])).collect(), s.iter().map(|&i| arc_of(c.ends[i])).collect())
    }

    /// `c_proj(a)`: the maximal paths without relations leaving `v`, glued at
    /// `v`.
    pub fn projective_curve(&self, v: usize) -> PermissibleCurve {
        let s = &self.surface;
        let mut left = Vec::new();
        let mut h = 2 * v + 1;
        while let Some(h2) = s.succ(h) {
            left.push(other(h2));
            h = h2;
        }
        left.reverse();
        left.push(2 * v);
        let mut h = 2 * v;
        while let Some(h2) = s.succ(h) {
            left.push(h2);
            h = h2;
        }
        self.canonical(&self.curve(left).expect("projective curve is permissible"))
    }

    /// The arc left of the arc of `f` at the point of `f`, inside the polygon
    /// on the successor side of `f`.
    pub fn left_arc_at(&self, f: End) -> Option<usize> {
        self.surface.succ(f).map(arc_of)
    }

    /// `←a^1` (at the start) or `←a^m` (at the end) of a curve.
    pub fn left_arc(&self, c: &PermissibleCurve, side: Side) -> Option<usize> {
        match side {
            Side::Start => self.left_arc_at(other(c.ends[0])),
            Side::End => self.left_arc_at(*c.ends.last().unwrap()),
        }
    }

    // ---- enumeration ----

    /// All curves with between 1 and `max_crossings` crossings, one per
    /// equivalence class.
    pub fn curves_up_to(&self, max_crossings: usize) -> Vec<PermissibleCurve> {
        let mut out = Vec::new();
        let n_ends = 2 * self.surface.arc_count();
        let mut stack: Vec<Vec<End>> = (0..n_ends).map(|e| vec![e]).collect();
        while let Some(p) = stack.pop() {
            let r: Vec<End> = p.iter().rev().map(|&e| other(e)).collect();
            if p <= r {
                if let Ok(c) = self.curve(p.clone()) {
                    out.push(c);
                }
            }
            if p.len() < max_crossings {
                for g in self.steps(*p.last().unwrap()) {
                    let mut q = p.clone();
                    q.push(g);
                    stack.push(q);
                }
            }
        }
        out.sort_by(|a, b| (a.ends.len(), &a.ends).cmp(&(b.ends.len(), &b.ends)));
        out
    }

    /// Whether the surface has finitely many curves, i.e. the string set is
    /// finite.
    pub fn is_string_finite(&self) -> bool {
        let n = 2 * self.surface.arc_count();
        self.curves_up_to(n + 2).iter().all(|c| c.ends.len() <= n)
    }

    // ---- closed curves and bands ----

    pub fn closed_curve(&self, ends: Vec<End>) -> Result<ClosedCurve, CurveError> {
        let m = ends.len();
        if m == 0 {
            return Err(CurveError::ZeroModule);
        }
        for i in 0..m {
            if !self.is_step(ends[i], ends[(i + 1) % m]) {
                return Err(CurveError::NotPermissible("closed crossing sequence is not cyclically permissible".into()));
            }
        }
        let mut t = 0;
        for i in 0..m {
            t = self.next_translate(ends[i], t, other(ends[(i + 1) % m]));
        }
        if t == 0 {
            return Err(CurveError::NotPermissible("closed curve is contractible".into()));
        }
        Ok(ClosedCurve { ends, winding: t })
    }

    /// Primitive closed curves with at most `max_crossings` crossings, one per
    /// class under rotation and inversion.
    pub fn closed_curves_up_to(&self, max_crossings: usize) -> Vec<ClosedCurve> {
        let mut out: Vec<ClosedCurve> = Vec::new();
        let n_ends = 2 * self.surface.arc_count();
        let mut stack: Vec<Vec<End>> = (0..n_ends).map(|e| vec![e]).collect();
        while let Some(p) = stack.pop() {
            if is_canonical_cycle(&p) {
                if let Ok(c) = self.closed_curve(p.clone()) {
                    out.push(c);
                }
            }
            if p.len() < max_crossings {
                for g in self.steps(*p.last().unwrap()) {
                    if g >= p[0] {
                        let mut q = p.clone();
                        q.push(g);
                        stack.push(q);
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn band_module(&self, b: &ClosedCurve, d: &BandData) -> Result<Representation, CurveError> {
        if d.eigenvalue.is_zero() {
            return Err(CurveError::ZeroEigenvalue);
        }
        if d.size == 0 {
            return Err(CurveError::NotAString("band size must be positive".into()));
        }
        Ok(self.string_rep(&b.ends, &self.letters(&b.ends, true), Some(d)))
    }

    // ---- serialisation ----

    pub fn curve_to_json(&self, c: &PermissibleCurve) -> CurveJson {
        CurveJson {
            start: Some(self.endpoint_json(c.start)),
            crossings: c.arcs().iter().map(|&a| self.surface.arcs[a].id.clone()).collect(),
            end: Some(self.endpoint_json(c.end)),
            winding: c.winding(),
        }
    }

    pub fn closed_to_json(&self, c: &ClosedCurve) -> CurveJson {
        CurveJson {
            start: None,
            crossings: c.ends.iter().map(|&e| self.surface.arcs[arc_of(e)].id.clone()).collect(),
            end: None,
            winding: c.winding,
        }
    }

    fn endpoint_json(&self, x: Lifted) -> EndpointJson {
        EndpointJson {
            kind: match x.kind {
                PointKind::Marked => "marked".into(),
                PointKind::Closed => "extra".into(),
            },
            point: self.surface.points[x.point].id.clone(),
        }
    }

    fn arc_ids(&self, ids: &[String]) -> Result<Vec<usize>, CurveError> {
        ids.iter().map(|id| self.surface.arc_index(id).ok_or_else(|| CurveError::UnknownArc(id.clone()))).collect()
    }

    pub fn curve_from_json(&self, j: &CurveJson) -> Result<PermissibleCurve, CurveError> {
        let arcs = self.arc_ids(&j.crossings)?;
        let found = self.resolve(&arcs, Some(j.winding))?;
        let wanted = |c: &PermissibleCurve| {
            let fits = |x: Lifted, e: &Option<EndpointJson>| e.as_ref().map_or(true, |e| *e == self.endpoint_json(x));
            (fits(c.start, &j.start) && fits(c.end, &j.end)) || {
                let r = self.reverse(c);
                fits(r.start, &j.start) && fits(r.end, &j.end)
            }
        };
        let mut hits: Vec<PermissibleCurve> = found.into_iter().filter(wanted).collect();
        match hits.len() {
            0 => Err(CurveError::NotPermissible(format!("no permissible curve crosses {:?}", j.crossings))),
            1 => Ok(hits.pop().unwrap()),
            k => Err(CurveError::Ambiguous(format!("{k} curves match the crossing list"))),
        }
    }

    pub fn closed_from_json(&self, j: &CurveJson) -> Result<ClosedCurve, CurveError> {
        let arcs = self.arc_ids(&j.crossings)?;
        let mut hits = Vec::new();
        for first in [2 * arcs[0], 2 * arcs[0] + 1] {
            let mut partial = vec![vec![first]];
            for &a in &arcs[1..] {
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        self.steps(*p.last().unwrap()).into_iter().filter(|&g| arc_of(g) == a).map(move |g| {
                            let mut q = p.clone();
                            q.push(g);
                            q
                        })
                    })
                    .collect();
            }
            for p in partial {
                if let Ok(c) = self.closed_curve(p) {
                    if c.winding == j.winding {
                        hits.push(c);
                    }
                }
            }
        }
        match hits.len() {
            0 => Err(CurveError::NotPermissible("no closed curve matches".into())),
            1 => Ok(hits.pop().unwrap()),
            k => Err(CurveError::Ambiguous(format!("{k} closed curves match the crossing list"))),
        }
    }
}

/// Smallest rotation of itself, of the inverse cycle, and not a proper power.
fn is_canonical_cycle(p: &[End]) -> bool {
    let m = p.len();
    let inv: Vec<End> = p.iter().rev().map(|&e| other(e)).collect();
    for r in 0..m {
        let rot: Vec<End> = (0..m).map(|i| p[(i + r) % m]).collect();
        if r > 0 && rot.as_slice() <= p {
            return false;
        }
        let irot: Vec<End> = (0..m).map(|i| inv[(i + r) % m]).collect();
        if irot.as_slice() < p {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointJson {
    pub kind: String,
    pub point: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<EndpointJson>,
    pub crossings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end: Option<EndpointJson>,
    #[serde(default)]
    pub winding: i64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::PathAlgebra;

    fn model(v: &[&str], a: &[(&str, &str, &str)]) -> StringModel {
        StringModel::from_algebra(&GentlePresentation::build(v, a, &[]).unwrap()).unwrap()
    }

    #[test]
    fn simple_and_projective_curves_over_a2() {
        let m = model(&["1", "2"], &[("a", "1", "2")]);
        let alg = PathAlgebra::new(&m.pres);
        let s1 = m.simple_curve(0);
        assert!(alg.modules_isomorphic(&m.module_of_curve(&s1).unwrap(), &alg.simple(0)).unwrap());
        let p1 = m.projective_curve(0);
        assert_eq!(p1.arcs().len(), 2);
        assert!(alg.modules_isomorphic(&m.module_of_curve(&p1).unwrap(), &alg.projective(0)).unwrap());
        assert_eq!(m.projective_curve(1).ends.len(), 1);
        assert_eq!(m.top_socle_arcs(&p1), (vec![0], vec![1]));
        assert_eq!(m.top_socle_arcs(&s1), (vec![0], vec![0]));
        assert_eq!(m.curves_up_to(5).len(), 3);
    }

    #[test]
    fn zigzag_top_and_socle() {
        let m = model(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]);
        let c = m.resolve(&[0, 1, 2], None).unwrap();
        assert_eq!(c.len(), 1);
        let (mut t, s) = m.top_socle_arcs(&c[0]);
        t.sort();
        assert_eq!((t, s), (vec![0, 2], vec![1]));
        assert_eq!(m.module_of_curve(&c[0]).unwrap().dims, vec![1, 1, 1]);
        let p = m.is_permissible(&[0, 2]).unwrap();
        assert!(!p.permissible);
        assert_eq!(p.violation, Some((0, 1)));
    }

    #[test]
    fn walk_round_trip() {
        let m = model(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]);
        let alg = PathAlgebra::new(&m.pres);
        for c in m.curves_up_to(3) {
            let w = m.walk(&c);
            let back = m.curve_of_walk(&w).unwrap();
            assert_eq!(back.ends, m.canonical(&c).ends);
            let ma = m.module_of_curve(&c).unwrap();
            let mb = m.module_of_curve(&back).unwrap();
            assert!(alg.modules_isomorphic(&ma, &mb).unwrap());
        }
        assert_eq!(m.curves_up_to(6).len(), 6);
    }

    #[test]
    fn kronecker_band() {
        let m = model(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]);
        let bands = m.closed_curves_up_to(4);
        assert_eq!(bands.len(), 1);
        assert_eq!(bands[0].winding.abs(), 1);
        let alg = PathAlgebra::new(&m.pres);
        let b = m.band_module(&bands[0], &BandData { eigenvalue: Q::int(1), size: 2 }).unwrap();
        assert_eq!(b.dims, vec![2, 2]);
        alg.validate(&b).unwrap();
        assert!(m.band_module(&bands[0], &BandData { eigenvalue: Q::int(0), size: 1 }).is_err());
        let json = m.closed_to_json(&bands[0]);
        assert_eq!(m.closed_from_json(&json).unwrap(), bands[0]);
    }

    #[test]
    fn curve_json_round_trip_on_annulus() {
        let m = model(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]);
        for c in m.curves_up_to(5) {
            let j = m.curve_to_json(&c);
            let text = serde_json::to_string(&j).unwrap();
            let back = m.curve_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back.ends, m.canonical(&c).ends);
        }
    }
}
