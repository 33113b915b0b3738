//! Projective presentations read off curves, the rotation `c -> c^↺` of end
//! segments, and the graded curves (homotopy strings) that realise minimal
//! projective presentations in the perfect derived category.
//!
//! In the universal cover every curve is homotopic, relative to its
//! endpoints, to the chord between its lifted endpoints. A graded ∘-curve is
//! read through its crossings with the lifted •-arcs: crossing the dual of
//! arc `v` contributes `P(v)`, and two consecutive crossings are joined by
//! the path in the fan of the ∘-point they surround.

use serde::{Deserialize, Serialize};

use crate::algebra::Path;
use crate::curves::{PermissibleCurve, Side, StringModel};
use crate::error::{CurveError, OracleError};
use crate::linalg::Q;
use crate::oracle::{PathAlgebra, ProjMap, TwoTermComplex};
use crate::surface::{arc_of, other, End, Lifted, PointKind, Topology};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EndCase {
    /// ∘-endpoint with an arc left of the first crossing
    CaseI,
    /// ∘-endpoint with nothing left of the first crossing
    CaseII,
    /// extra endpoint in a digon
    CaseIII,
}

/// A curve with ∘-endpoints in the cover, given by its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub start: Lifted,
    pub end: Lifted,
}

/// One letter of a homotopy string: a nonzero path, read forwards (direct)
/// or backwards (inverse).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomotopyLetter {
    pub arrows: Vec<usize>,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomotopyString {
    pub vertices: Vec<usize>,
    pub letters: Vec<HomotopyLetter>,
    pub degrees: Vec<i64>,
}

/// A graded ∘-curve: the chord, its •-crossings `(vertex, translate)` in
/// order, and the degree at each crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleCurve {
    pub chord: Chord,
    pub crossings: Vec<(usize, i64)>,
    pub degrees: Vec<i64>,
}

/// Projective cover and kernel summands of a string module, as curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCurves {
    pub cover: Vec<PermissibleCurve>,
    pub left: Option<PermissibleCurve>,
    pub core: Vec<PermissibleCurve>,
    pub right: Option<PermissibleCurve>,
}

fn interleaves(p: (u8, i64), q: (u8, i64), r: (u8, i64), s: (u8, i64)) -> bool {
    let (a, b) = if p < q { (p, q) } else { (q, p) };
    let inside = |x: (u8, i64)| a < x && x < b;
    inside(r) != inside(s)
}

impl StringModel {
    pub fn end_segment_case(&self, c: &PermissibleCurve, side: Side) -> EndCase {
        let x = match side {
            Side::Start => c.start,
            Side::End => c.end,
        };
        if x.kind == PointKind::Closed {
            EndCase::CaseIII
        } else if self.left_arc(c, side).is_some() {
            EndCase::CaseI
        } else {
            EndCase::CaseII
        }
    }

    /// The chord of `c` itself.
    pub fn chord(&self, c: &PermissibleCurve) -> Chord {
        Chord { start: c.start, end: c.end }
    }

    /// `c^↺`: endpoints of Case II or III move to the next ∘-point in the
    /// positive direction; everything else stays.
    pub fn rotate_curve(&self, c: &PermissibleCurve) -> Chord {
        let s = &self.surface;
        let mv = |x: Lifted, side: Side| match self.end_segment_case(c, side) {
            EndCase::CaseI => x,
            _ => s.rotate_point(x),
        };
        Chord { start: mv(c.start, Side::Start), end: mv(c.end, Side::End) }
    }

    /// Lifted •-arcs crossing a chord, ordered from its start to its end.
    pub fn dual_crossings(&self, ch: &Chord) -> Vec<(usize, i64)> {
        let s = &self.surface;
        let p = s.position(ch.start);
        let q = s.position(ch.end);
        let ts: Vec<i64> = if s.topology() == Topology::Annulus {
            let spread = (0..s.arc_count())
                .filter_map(|v| s.dual_arc_lift(v, 0))
                .map(|(a, b)| a.k.abs().max(b.k.abs()))
                .max()
                .unwrap_or(0);
            let lo = ch.start.k.min(ch.end.k) - spread - 2;
            let hi = ch.start.k.max(ch.end.k) + spread + 2;
            (lo..=hi).collect()
        } else {
            vec![0]
        };
        let fwd = |x: (u8, i64)| (x <= p, x);
        let mut hits: Vec<((bool, (u8, i64)), (bool, (u8, i64)), usize, i64)> = Vec::new();
        for v in 0..s.arc_count() {
            for &t in &ts {
                let Some((a, b)) = s.dual_arc_lift(v, t) else { continue };
                let (pa, pb) = (s.position(a), s.position(b));
                if !interleaves(p, q, pa, pb) {
                    continue;
                }
                let (r, o) = if fwd(pa) < fwd(q) { (pa, pb) } else { (pb, pa) };
                hits.push((fwd(r), fwd(o), v, t));
            }
        }
        hits.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        hits.into_iter().map(|h| (h.2, h.3)).collect()
    }

    /// The fan path between consecutive •-crossings: the ∘-point shared by
    /// the two lifted arcs, and the corners between their ends there.
    fn fan_letter(&self, a: (usize, i64), b: (usize, i64)) -> Result<HomotopyLetter, CurveError> {
        let s = &self.surface;
        let ends_at = |(v, t): (usize, i64)| -> [(End, Lifted); 2] {
            let (x, y) = s.arc_lift(v, t);
            [(2 * v, x), (2 * v + 1, y)]
        };
        let shared = ends_at(a)
            .into_iter()
            .flat_map(|(ea, la)| ends_at(b).into_iter().filter(move |(_, lb)| *lb == la).map(move |(eb, _)| (ea, eb)))
            .next()
            .ok_or_else(|| CurveError::NotPermissible("consecutive •-crossings do not surround a common ∘-point".into()))?;
        let (ea, eb) = shared;
        let (from, to, inverse) = if s.fan_position(ea) < s.fan_position(eb) { (ea, eb, false) } else { (eb, ea, true) };
        let mut arrows = Vec::new();
        let mut h = from;
        while h != to {
            arrows.push(self.arrow_of_corner(h).expect("corner inside a fan"));
            h = s.succ(h).expect("fan path");
        }
        Ok(HomotopyLetter { arrows, inverse })
    }

    /// The homotopy string of a chord, with degrees forced by the letters and
    /// normalised to a maximum of 0.
    pub fn homotopy_string(&self, ch: &Chord) -> Result<(Vec<(usize, i64)>, HomotopyString), CurveError> {
        let xs = self.dual_crossings(ch);
        if xs.is_empty() {
            return Err(CurveError::ZeroModule);
        }
        let mut letters = Vec::with_capacity(xs.len() - 1);
        for w in xs.windows(2) {
            letters.push(self.fan_letter(w[0], w[1])?);
        }
        let mut degrees = vec![0i64];
        for l in &letters {
            let d = *degrees.last().unwrap();
            degrees.push(if l.inverse { d + 1 } else { d - 1 });
        }
        let top = *degrees.iter().max().unwrap();
        degrees.iter_mut().for_each(|d| *d -= top);
        let vertices = xs.iter().map(|x| x.0).collect();
        Ok((xs, HomotopyString { vertices, letters, degrees }))
    }

    /// The graded curve `c^↺` attached to a permissible curve.
    pub fn embed_curve(&self, c: &PermissibleCurve) -> Result<AdmissibleCurve, CurveError> {
        let chord = self.rotate_curve(c);
        let (crossings, hs) = self.homotopy_string(&chord)?;
        Ok(AdmissibleCurve { chord, crossings, degrees: hs.degrees })
    }

    /// The homotopy string of a graded curve, checking the grading.
    pub fn homotopy_string_of(&self, ac: &AdmissibleCurve) -> Result<HomotopyString, CurveError> {
        if ac.crossings.len() != ac.degrees.len() {
            return Err(CurveError::InconsistentGrading("one degree per crossing is required".into()));
        }
        let mut letters = Vec::new();
        for (i, w) in ac.crossings.windows(2).enumerate() {
            let l = self.fan_letter(w[0], w[1])?;
            let want = if l.inverse { ac.degrees[i] + 1 } else { ac.degrees[i] - 1 };
            if ac.degrees[i + 1] != want {
                return Err(CurveError::InconsistentGrading(format!("degrees {} and {} do not fit letter {}", ac.degrees[i], ac.degrees[i + 1], i)));
            }
            letters.push(l);
        }
        Ok(HomotopyString { vertices: ac.crossings.iter().map(|x| x.0).collect(), letters, degrees: ac.degrees.clone() })
    }

    /// The 2-term complex of a graded curve whose degrees lie in {-1, 0}.
    pub fn complex_of_admissible(&self, alg: &PathAlgebra, ac: &AdmissibleCurve) -> Result<TwoTermComplex, CurveError> {
        let hs = self.homotopy_string_of(ac)?;
        complex_of_string(alg, &hs)
    }

    // ---- presentations from curve combinatorics ----

    pub fn projective_cover_curve(&self, c: &PermissibleCurve) -> CoverCurves {
        let (tops, socs) = self.top_socle_positions(c);
        let m = c.ends.len();
        let cover = tops.iter().map(|&i| self.projective_curve(arc_of(c.ends[i]))).collect();
        let core = socs.iter().filter(|&&j| j > 0 && j + 1 < m).map(|&j| self.projective_curve(arc_of(c.ends[j]))).collect();
        CoverCurves {
            cover,
            left: self.left_arc(c, Side::Start).map(|v| self.projective_curve(v)),
            core,
            right: self.left_arc(c, Side::End).map(|v| self.projective_curve(v)),
        }
    }

    /// `0 -> Q_L + Q + Q_R -> cover -> M(c) -> 0` as a 2-term complex.
    pub fn projective_presentation_curve(&self, alg: &PathAlgebra, c: &PermissibleCurve) -> Result<TwoTermComplex, CurveError> {
        if c.ends.is_empty() {
            return Err(CurveError::ZeroModule);
        }
        let w = self.walk(c);
        let vs = self.walk_vertices(&w)?;
        let l = &w.letters;
        let m = vs.len();
        let (tops, socs) = self.top_socle_positions(c);
        let p0: Vec<usize> = tops.iter().map(|&i| vs[i]).collect();
        // (top position, path arrows, sign) per kernel summand
        let mut kernel: Vec<(usize, Vec<(usize, Vec<usize>, i64)>)> = Vec::new();
        if let Some(u) = self.left_arc(c, Side::Start) {
            let t0 = tops[0];
            let mut arrows: Vec<usize> = (0..t0).rev().map(|i| l[i].arrow).collect();
            arrows.push(self.arrow_of_corner(other(c.ends[0])).unwrap());
            kernel.push((u, vec![(t0, arrows, 1)]));
        }
        for &j in socs.iter().filter(|&&j| j > 0 && j + 1 < m) {
            let left = *tops.iter().filter(|&&t| t < j).max().unwrap();
            let right = *tops.iter().filter(|&&t| t > j).min().unwrap();
            let down: Vec<usize> = (left..j).map(|i| l[i].arrow).collect();
            let up: Vec<usize> = (j..right).rev().map(|i| l[i].arrow).collect();
            kernel.push((vs[j], vec![(left, down, 1), (right, up, -1)]));
        }
        if let Some(u) = self.left_arc(c, Side::End) {
            let t1 = *tops.last().unwrap();
            let mut arrows: Vec<usize> = (t1..m - 1).map(|i| l[i].arrow).collect();
            arrows.push(self.arrow_of_corner(*c.ends.last().unwrap()).unwrap());
            kernel.push((u, vec![(t1, arrows, 1)]));
        }
        let p1: Vec<usize> = kernel.iter().map(|k| k.0).collect();
        let mut d = ProjMap::zero(alg, &p0, &p1);
        for (j, (u, terms)) in kernel.iter().enumerate() {
            for (t, arrows, sign) in terms {
                let i = tops.iter().position(|x| x == t).unwrap();
                let path = Path { start: p0[i], end: *u, arrows: arrows.clone() };
                let k = alg
                    .path_index(&path)
                    .ok_or_else(|| CurveError::NotAString(format!("kernel path {} vanishes", alg.presentation().path_label(&path))))?;
                d.e[i][j][k] += &Q::int(*sign);
            }
        }
        Ok(TwoTermComplex { p1, p0, d })
    }
}

/// The complex of a homotopy string concentrated in degrees -1 and 0.
pub fn complex_of_string(alg: &PathAlgebra, hs: &HomotopyString) -> Result<TwoTermComplex, CurveError> {
    if hs.degrees.iter().any(|&d| d != 0 && d != -1) {
        return Err(CurveError::InconsistentGrading(format!("degrees {:?} leave the window [-1, 0]", hs.degrees)));
    }
    let pos0: Vec<usize> = (0..hs.vertices.len()).filter(|&i| hs.degrees[i] == 0).collect();
    let pos1: Vec<usize> = (0..hs.vertices.len()).filter(|&i| hs.degrees[i] == -1).collect();
    let p0: Vec<usize> = pos0.iter().map(|&i| hs.vertices[i]).collect();
    let p1: Vec<usize> = pos1.iter().map(|&i| hs.vertices[i]).collect();
    let mut d = ProjMap::zero(alg, &p0, &p1);
    for (i, l) in hs.letters.iter().enumerate() {
        let (hi, lo) = if l.inverse { (i + 1, i) } else { (i, i + 1) };
        let path = Path { start: hs.vertices[hi], end: hs.vertices[lo], arrows: l.arrows.clone() };
        let k = alg
            .path_index(&path)
            .ok_or_else(|| CurveError::InconsistentGrading(format!("letter {} is not a nonzero path", alg.presentation().path_label(&path))))?;
        let r = pos0.iter().position(|&x| x == hi).unwrap();
        let s = pos1.iter().position(|&x| x == lo).unwrap();
        d.e[r][s][k] += &Q::int(1);
    }
    Ok(TwoTermComplex { p1, p0, d })
}

/// Shifts a graded curve's degrees.
pub fn shift_degrees(ac: &AdmissibleCurve, by: i64) -> AdmissibleCurve {
    AdmissibleCurve { degrees: ac.degrees.iter().map(|d| d + by).collect(), ..ac.clone() }
}

// ---- serialisation ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub path: Vec<String>,
    pub coef: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    #[serde(rename = "P1")]
    pub p1: Vec<String>,
    #[serde(rename = "P0")]
    pub p0: Vec<String>,
    /// `d[i][j]`: the component from `P1[j]` to `P0[i]`, as a sum of paths
    /// from `P0[i]` to `P1[j]`
    pub d: Vec<Vec<Vec<TermJson>>>,
}

pub fn complex_to_json(alg: &PathAlgebra, c: &TwoTermComplex) -> ComplexJson {
    let q = alg.presentation().quiver();
    let d = (0..c.p0.len())
        .map(|i| {
            (0..c.p1.len())
                .map(|j| {
                    alg.paths(c.p0[i], c.p1[j])
                        .iter()
                        .zip(&c.d.e[i][j])
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(p, x)| TermJson { path: p.arrows.iter().map(|&a| q.arrow(a).id.clone()).collect(), coef: x.clone() })
                        .collect()
                })
                .collect()
        })
        .collect();
    let name = |v: &usize| q.vertices()[*v].clone();
    ComplexJson { p1: c.p1.iter().map(name).collect(), p0: c.p0.iter().map(name).collect(), d }
}

pub fn complex_from_json(alg: &PathAlgebra, j: &ComplexJson) -> Result<TwoTermComplex, OracleError> {
    let q = alg.presentation().quiver();
    let vertex = |id: &String| q.vertex_index(id).ok_or_else(|| OracleError::InvalidComplex(format!("unknown vertex {id}")));
    let p0 = j.p0.iter().map(vertex).collect::<Result<Vec<_>, _>>()?;
    let p1 = j.p1.iter().map(vertex).collect::<Result<Vec<_>, _>>()?;
    if j.d.len() != p0.len() || j.d.iter().any(|r| r.len() != p1.len()) {
        return Err(OracleError::InvalidComplex("differential shape does not match P0 x P1".into()));
    }
    let mut d = ProjMap::zero(alg, &p0, &p1);
    for (i, row) in j.d.iter().enumerate() {
        for (k, terms) in row.iter().enumerate() {
            for t in terms {
                let arrows = t
                    .path
                    .iter()
                    .map(|a| q.arrow_index(a).ok_or_else(|| OracleError::InvalidComplex(format!("unknown arrow {a}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let path = Path { start: p0[i], end: p1[k], arrows };
                let idx = alg
                    .path_index(&path)
                    .ok_or_else(|| OracleError::InvalidComplex(format!("{:?} is not a nonzero path from P0[{i}] to P1[{k}]", t.path)))?;
                d.e[i][k][idx] += &t.coef;
            }
        }
    }
    let c = TwoTermComplex { p1, p0, d };
    alg.validate_complex(&c)?;
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyLetterJson {
    pub path: Vec<String>,
    pub sign: i8,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyStringJson {
    pub start: String,
    pub start_degree: i64,
    pub letters: Vec<HomotopyLetterJson>,
}

pub fn homotopy_string_to_json(alg: &PathAlgebra, hs: &HomotopyString) -> HomotopyStringJson {
    let q = alg.presentation().quiver();
    HomotopyStringJson {
        start: q.vertices()[hs.vertices[0]].clone(),
        start_degree: hs.degrees[0],
        letters: hs
            .letters
            .iter()
            .enumerate()
            .map(|(i, l)| HomotopyLetterJson {
                path: l.arrows.iter().map(|&a| q.arrow(a).id.clone()).collect(),
                sign: if l.inverse { -1 } else { 1 },
                degree: hs.degrees[i + 1],
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GentlePresentation;

    fn setup(v: &[&str], a: &[(&str, &str, &str)]) -> (StringModel, PathAlgebra) {
        let p = GentlePresentation::build(v, a, &[]).unwrap();
        let m = StringModel::from_algebra(&p).unwrap();
        let alg = PathAlgebra::new(&m.pres);
        (m, alg)
    }

    #[test]
    fn simple_over_a2_embeds_as_p2_to_p1() {
        let (m, alg) = setup(&["1", "2"], &[("a", "1", "2")]);
        let s1 = m.simple_curve(0);
        let ac = m.embed_curve(&s1).unwrap();
        assert_eq!(ac.degrees.len(), 2);
        let hs = m.homotopy_string_of(&ac).unwrap();
        assert_eq!(hs.letters.len(), 1);
        let c = m.complex_of_admissible(&alg, &ac).unwrap();
        assert_eq!((c.p1.clone(), c.p0.clone()), (vec![1], vec![0]));
        assert!(alg.complexes_isomorphic(&c, &alg.min_projective_presentation(&alg.simple(0))));
        let lemma = m.projective_presentation_curve(&alg, &s1).unwrap();
        assert!(alg.complexes_isomorphic(&lemma, &c));
    }

    #[test]
    fn projective_curve_embeds_as_stalk() {
        let (m, alg) = setup(&["1", "2"], &[("a", "1", "2")]);
        let p1 = m.projective_curve(0);
        let c = m.complex_of_admissible(&alg, &m.embed_curve(&p1).unwrap()).unwrap();
        assert!(alg.complexes_isomorphic(&c, &TwoTermComplex::stalk(&alg, 0)));
        let cov = m.projective_cover_curve(&p1);
        assert_eq!(cov.cover.len(), 1);
        assert!(cov.left.is_none() && cov.right.is_none() && cov.core.is_empty());
    }

    #[test]
    fn zigzag_presentation() {
        let (m, alg) = setup(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]);
        let c = &m.resolve(&[0, 1, 2], None).unwrap()[0];
        let pres = m.projective_presentation_curve(&alg, c).unwrap();
        assert_eq!(pres.p1, vec![1]);
        let oracle = alg.min_projective_presentation(&m.module_of_curve(c).unwrap());
        assert!(alg.complexes_isomorphic(&pres, &oracle));
        let emb = m.complex_of_admissible(&alg, &m.embed_curve(c).unwrap()).unwrap();
        assert!(alg.complexes_isomorphic(&emb, &oracle));
    }

    #[test]
    fn embedding_matches_oracle_on_kronecker() {
        let (m, alg) = setup(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]);
        for c in m.curves_up_to(5) {
            let oracle = alg.min_projective_presentation(&m.module_of_curve(&c).unwrap());
            let emb = m.complex_of_admissible(&alg, &m.embed_curve(&c).unwrap()).unwrap();
            assert!(alg.complexes_isomorphic(&emb, &oracle), "{:?}", c.ends);
            let lemma = m.projective_presentation_curve(&alg, &c).unwrap();
            assert!(alg.complexes_isomorphic(&lemma, &oracle), "{:?}", c.ends);
        }
    }

    #[test]
    fn complex_json_round_trip() {
        let (m, alg) = setup(&["1", "2"], &[("a", "1", "2")]);
        let c = m.projective_presentation_curve(&alg, &m.simple_curve(0)).unwrap();
        let j = complex_to_json(&alg, &c);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"P1":["2"],"P0":["1"],"d":[[[{"path":["a"],"coef":1}]]]}"#);
        assert_eq!(complex_from_json(&alg, &serde_json::from_str(&text).unwrap()).unwrap(), c);
    }
}
