//! Quivers, gentle presentations and hereditary-type classification.
//!
//! Vertex and arrow ids are opaque strings. Internally everything is indexed by
//! position in the lexicographically sorted id lists, so iteration order is
//! reproducible regardless of how the input listed things.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Arrow of a quiver, with endpoints stored as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from ids. Vertices and arrows are sorted by id.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, AlgebraError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut vs: Vec<String> = vertices.into_iter().map(Into::into).collect();
        vs.sort();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(AlgebraError::DuplicateVertex(w[0].clone()));
            }
        }
        let index: BTreeMap<&str, usize> =
            vs.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut raw: Vec<(String, String, String)> = arrows.into_iter().collect();
        raw.sort();
        let mut out = Vec::with_capacity(raw.len());
        for (i, (id, s, t)) in raw.iter().enumerate() {
            if i > 0 && raw[i - 1].0 == *id {
                return Err(AlgebraError::DuplicateArrow(id.clone()));
            }
            let source = *index
                .get(s.as_str())
                .ok_or_else(|| AlgebraError::UnknownVertex { arrow: id.clone(), vertex: s.clone() })?;
            let target = *index
                .get(t.as_str())
                .ok_or_else(|| AlgebraError::UnknownVertex { arrow: id.clone(), vertex: t.clone() })?;
            out.push(Arrow { id: id.clone(), source, target });
        }
        Ok(Quiver { vertices: vs, arrows: out })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(id)).ok()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.binary_search_by(|a| a.id.as_str().cmp(id)).ok()
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v).map(|(i, _)| i)
    }
}

/// A quiver with length-two monomial relations and integer arrow grades.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GentlePresentation {
    quiver: Quiver,
    relations: BTreeSet<(usize, usize)>,
    grades: Vec<i64>,
}

/// A gentle axiom violation together with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    G1,
    G2,
    G3,
    G4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::G1 => "G1",
            Axiom::G2 => "G2",
            Axiom::G3 => "G3",
            Axiom::G4 => "G4",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub violations: Vec<Violation>,
}

impl Diagnostics {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Orientation of one edge of a type A quiver, read from vertex 1 to vertex n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// points toward the higher index
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum HereditaryType {
    /// Path graph on `n` vertices; `path` lists vertex ids in order and
    /// `orientation[i]` is the edge between `path[i]` and `path[i+1]`.
    TypeA { n: usize, path: Vec<String>, orientation: Vec<Orientation> },
    /// Acyclically oriented cycle on `n` vertices with `p` arrows pointing in
    /// one rotational sense and `q` in the other (normalised so `p >= q`).
    TypeATilde { n: usize, p: usize, q: usize, cycle: Vec<String> },
}

impl HereditaryType {
    pub fn vertex_count(&self) -> usize {
        match self {
            HereditaryType::TypeA { n, .. } | HereditaryType::TypeATilde { n, .. } => *n,
        }
    }

    pub fn is_type_a(&self) -> bool {
        matches!(self, HereditaryType::TypeA { .. })
    }

    pub fn orientation_word(&self) -> Option<String> {
        match self {
            HereditaryType::TypeA { orientation, .. } => Some(
                orientation
                    .iter()
                    .map(|o| match o {
                        Orientation::Right => '→',
                        Orientation::Left => '←',
                    })
                    .collect(),
            ),
            _ => None,
        }
    }
}

/// A nonzero path: a start vertex and a composable arrow sequence avoiding relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl GentlePresentation {
    /// Structural constructor. Relations are given as arrow id pairs `(a, b)`
    /// meaning the composite "first a, then b". Missing grades default to 0.
    pub fn new(
        quiver: Quiver,
        relations: impl IntoIterator<Item = (String, String)>,
        grades: &BTreeMap<String, i64>,
    ) -> Result<Self, AlgebraError> {
        let mut rels = BTreeSet::new();
        for (a, b) in relations {
            let ia = quiver.arrow_index(&a).ok_or_else(|| AlgebraError::UnknownArrow(a.clone()))?;
            let ib = quiver.arrow_index(&b).ok_or_else(|| AlgebraError::UnknownArrow(b.clone()))?;
            if quiver.arrows[ia].target != quiver.arrows[ib].source {
                return Err(AlgebraError::NotComposable(a, b));
            }
            rels.insert((ia, ib));
        }
        for k in grades.keys() {
            if quiver.arrow_index(k).is_none() {
                return Err(AlgebraError::UnknownArrow(k.clone()));
            }
        }
        let grades = quiver.arrows.iter().map(|a| grades.get(&a.id).copied().unwrap_or(0)).collect();
        Ok(GentlePresentation { quiver, relations: rels, grades })
    }

    /// Convenience constructor used by fixtures and tests:
    /// arrows as `(id, source, target)` string triples, relations as id pairs.
    pub fn build(vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[(&str, &str)]) -> Result<Self, AlgebraError> {
        let q = Quiver::new(
            vertices.iter().map(|s| s.to_string()),
            arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
        )?;
        GentlePresentation::new(
            q,
            relations.iter().map(|(a, b)| (a.to_string(), b.to_string())),
            &BTreeMap::new(),
        )
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn relations(&self) -> &BTreeSet<(usize, usize)> {
        &self.relations
    }

    pub fn is_relation(&self, a: usize, b: usize) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn grade(&self, a: usize) -> i64 {
        self.grades[a]
    }

    pub fn grades(&self) -> &[i64] {
        &self.grades
    }

    pub fn with_zero_grades(&self) -> Self {
        let mut p = self.clone();
        p.grades.iter_mut().for_each(|g| *g = 0);
        p
    }

    /// Checks the four gentle axioms.
    pub fn validate_gentle(&self) -> Diagnostics {
        let q = &self.quiver;
        let mut violations = Vec::new();
        for (v, name) in q.vertices.iter().enumerate() {
            let out = q.outgoing(v).count();
            let inc = q.incoming(v).count();
            if out > 2 {
                violations.push(Violation { axiom: Axiom::G1, witness: format!("vertex {name} is the source of {out} arrows") });
            }
            if inc > 2 {
                violations.push(Violation { axiom: Axiom::G1, witness: format!("vertex {name} is the target of {inc} arrows") });
            }
        }
        for (ia, a) in q.arrows.iter().enumerate() {
            let after: Vec<usize> = q.outgoing(a.target).collect();
            let before: Vec<usize> = q.incoming(a.source).collect();
            let rel_after: Vec<usize> = after.iter().copied().filter(|&b| self.is_relation(ia, b)).collect();
            let free_after: Vec<usize> = after.iter().copied().filter(|&b| !self.is_relation(ia, b)).collect();
            let rel_before: Vec<usize> = before.iter().copied().filter(|&b| self.is_relation(b, ia)).collect();
            let free_before: Vec<usize> = before.iter().copied().filter(|&b| !self.is_relation(b, ia)).collect();
            let ids = |xs: &[usize]| xs.iter().map(|&b| q.arrows[b].id.clone()).collect::<Vec<_>>().join(",");
            if rel_after.len() > 1 {
                violations.push(Violation { axiom: Axiom::G2, witness: format!("{} followed by {{{}}} in I", a.id, ids(&rel_after)) });
            }
            if rel_before.len() > 1 {
                violations.push(Violation { axiom: Axiom::G2, witness: format!("{{{}}} followed by {} in I", ids(&rel_before), a.id) });
            }
            if free_after.len() > 1 {
                violations.push(Violation { axiom: Axiom::G3, witness: format!("{} followed by {{{}}} outside I", a.id, ids(&free_after)) });
            }
            if free_before.len() > 1 {
                violations.push(Violation { axiom: Axiom::G3, witness: format!("{{{}}} followed by {} outside I", ids(&free_before), a.id) });
            }
        }
        for &(a, b) in &self.relations {
            if q.arrows[a].target != q.arrows[b].source {
                violations.push(Violation { axiom: Axiom::G4, witness: format!("relation ({},{}) is not a path", q.arrows[a].id, q.arrows[b].id) });
            }
        }
        Diagnostics { violations }
    }

    /// The unique arrow continuing `a` outside the ideal, if any (gentle only).
    pub fn free_successor(&self, a: usize) -> Option<usize> {
        let t = self.quiver.arrows[a].target;
        self.quiver.outgoing(t).find(|&b| !self.is_relation(a, b))
    }

    pub fn free_predecessor(&self, a: usize) -> Option<usize> {
        let s = self.quiver.arrows[a].source;
        self.quiver.incoming(s).find(|&b| !self.is_relation(b, a))
    }

    /// True iff there is no oriented cycle avoiding the relations.
    pub fn is_finite_dimensional(&self) -> bool {
        // On gentle input each arrow has at most one free successor, so an
        // infinite path is a cycle in the free-successor function.
        let m = self.quiver.arrow_count();
        for start in 0..m {
            let mut a = start;
            for _ in 0..=m {
                match self.free_successor(a) {
                    Some(b) => a = b,
                    None => break,
                }
                if a == start {
                    return false;
                }
            }
        }
        true
    }

    /// All nonzero paths starting at `v` (including the trivial one), in
    /// breadth-first order. Requires finite dimensionality.
    pub fn paths_from(&self, v: usize) -> Vec<Path> {
        let mut out = vec![Path::trivial(v)];
        let mut i = 0;
        while i < out.len() {
            let p = out[i].clone();
            i += 1;
            for b in self.quiver.outgoing(p.end) {
                if let Some(&last) = p.arrows.last() {
                    if self.is_relation(last, b) {
                        continue;
                    }
                }
                let mut arrows = p.arrows.clone();
                arrows.push(b);
                out.push(Path { start: v, end: self.quiver.arrows[b].target, arrows });
                assert!(out.len() < 100_000, "path enumeration diverged: algebra is not finite dimensional");
            }
        }
        out
    }

    pub fn paths_between(&self, v: usize, w: usize) -> Vec<Path> {
        self.paths_from(v).into_iter().filter(|p| p.end == w).collect()
    }

    pub fn dimension(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.paths_from(v).len()).sum()
    }

    /// Concatenates two paths; `None` when the product is zero in the algebra.
    pub fn compose(&self, first: &Path, second: &Path) -> Option<Path> {
        if first.end != second.start {
            return None;
        }
        if let (Some(&a), Some(&b)) = (first.arrows.last(), second.arrows.first()) {
            if self.is_relation(a, b) {
                return None;
            }
        }
        let mut arrows = first.arrows.clone();
        arrows.extend_from_slice(&second.arrows);
        Some(Path { start: first.start, end: second.end, arrows })
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.quiver.vertices[p.start])
        } else {
            p.arrows.iter().map(|&a| self.quiver.arrows[a].id.as_str()).collect::<Vec<_>>().join("·")
        }
    }

    /// Vertex sets of the connected components of the underlying graph,
    /// ordered by smallest vertex index.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for a in &self.quiver.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![];
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    /// Restriction to a set of vertices (arrows and relations among them).
    pub fn induced(&self, vertices: &[usize]) -> GentlePresentation {
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        let arrows: Vec<usize> = (0..self.quiver.arrow_count())
            .filter(|&a| keep.contains(&self.quiver.arrows[a].source) && keep.contains(&self.quiver.arrows[a].target))
            .collect();
        self.sub_presentation(&keep, &arrows)
    }

    fn sub_presentation(&self, keep: &BTreeSet<usize>, arrows: &[usize]) -> GentlePresentation {
        let q = &self.quiver;
        let quiver = Quiver::new(
            keep.iter().map(|&v| q.vertices[v].clone()),
            arrows.iter().map(|&a| {
                let ar = &q.arrows[a];
                (ar.id.clone(), q.vertices[ar.source].clone(), q.vertices[ar.target].clone())
            }),
        )
        .expect("sub-presentation of a valid presentation is valid");
        let arrow_set: BTreeSet<usize> = arrows.iter().copied().collect();
        let map = |a: usize| quiver.arrow_index(&q.arrows[a].id).expect("kept arrow");
        let relations = self
            .relations
            .iter()
            .filter(|(a, b)| arrow_set.contains(a) && arrow_set.contains(b))
            .map(|&(a, b)| (map(a), map(b)))
            .collect();
        let mut grades = vec![0; quiver.arrow_count()];
        for &a in arrows {
            grades[map(a)] = self.grades[a];
        }
        GentlePresentation { quiver, relations, grades }
    }

    pub fn connected_components(&self) -> Vec<GentlePresentation> {
        self.component_vertex_sets().iter().map(|c| self.induced(c)).collect()
    }

    /// Removes every arrow of nonzero grade; surviving relations are the
    /// length-two relations whose arrows both survive.
    pub fn delete_nonzero_graded_arrows(&self) -> Result<GentlePresentation, AlgebraError> {
        let keep: BTreeSet<usize> = (0..self.vertex_count()).collect();
        let arrows: Vec<usize> = (0..self.quiver.arrow_count()).filter(|&a| self.grades[a] == 0).collect();
        let out = self.sub_presentation(&keep, &arrows);
        let diag = out.validate_gentle();
        if !diag.is_ok() {
            return Err(AlgebraError::Internal(format!("degree-zero part is not gentle: {:?}", diag.violations)));
        }
        Ok(out)
    }

    /// Classifies a connected relation-free gentle presentation as type A or Ã.
    pub fn classify_hereditary_type(&self) -> Result<HereditaryType, AlgebraError> {
        if !self.relations.is_empty() {
            return Err(AlgebraError::NotHereditary);
        }
        if !self.validate_gentle().is_ok() {
            return Err(AlgebraError::NotGentle);
        }
        let n = self.vertex_count();
        if n == 0 || self.component_vertex_sets().len() != 1 {
            return Err(AlgebraError::NotConnected);
        }
        let q = &self.quiver;
        let m = q.arrow_count();
        let mut degree = vec![0usize; n];
        for a in &q.arrows {
            degree[a.source] += 1;
            degree[a.target] += 1;
        }
        if degree.iter().any(|&d| d > 2) {
            return Err(AlgebraError::NotHereditaryGentleType);
        }
        if m + 1 == n {
            // path: walk from an endpoint, choosing the lexicographically smaller end
            let ends: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
            let start = *ends.iter().min().expect("a path has endpoints");
            let mut path = vec![start];
            let mut orientation = Vec::new();
            let mut used = vec![false; m];
            let mut cur = start;
            while path.len() < n {
                let (a, next, dir) = q
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !used[*i])
                    .find_map(|(i, a)| {
                        if a.source == cur {
                            Some((i, a.target, Orientation::Right))
                        } else if a.target == cur {
                            Some((i, a.source, Orientation::Left))
                        } else {
                            None
                        }
                    })
                    .expect("path is connected");
                used[a] = true;
                path.push(next);
                orientation.push(dir);
                cur = next;
            }
            Ok(HereditaryType::TypeA { n, path: path.iter().map(|&v| q.vertices[v].clone()).collect(), orientation })
        } else if m == n {
            // a single cycle (n = 1 would be a loop: infinite dimensional)
            let mut cycle = vec![0usize];
            let mut used = vec![false; m];
            let mut cw = 0;
            let mut ccw = 0;
            let mut cur = 0;
            for _ in 0..m {
                let (a, next, forward) = q
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !used[*i])
                    .find_map(|(i, a)| {
                        if a.source == cur {
                            Some((i, a.target, true))
                        } else if a.target == cur {
                            Some((i, a.source, false))
                        } else {
                            None
                        }
                    })
                    .expect("cycle is connected");
                used[a] = true;
                if forward {
                    cw += 1;
                } else {
                    ccw += 1;
                }
                cur = next;
                if cycle.len() < n {
                    cycle.push(next);
                }
            }
            if cw == 0 || ccw == 0 {
                return Err(AlgebraError::NotFiniteDimensional);
            }
            let (p, qn) = if cw >= ccw { (cw, ccw) } else { (ccw, cw) };
            Ok(HereditaryType::TypeATilde { n, p, q: qn, cycle: cycle.iter().map(|&v| q.vertices[v].clone()).collect() })
        } else {
            Err(AlgebraError::NotHereditaryGentleType)
        }
    }

    /// Canonical form: the lexicographically smallest encoding over all vertex
    /// relabelings compatible with a degree-based refinement. Two presentations
    /// are isomorphic (ignoring ids) iff their canonical forms are equal.
    pub fn canonical_form(&self) -> CanonicalForm {
        crate::canon::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &GentlePresentation) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.quiver.arrow_count() == other.quiver.arrow_count()
            && self.relations.len() == other.relations.len()
            && self.canonical_form() == other.canonical_form()
    }

    pub fn to_json(&self) -> AlgebraJson {
        let q = &self.quiver;
        AlgebraJson {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .enumerate()
                .map(|(i, a)| ArrowJson {
                    id: a.id.clone(),
                    source: q.vertices[a.source].clone(),
                    target: q.vertices[a.target].clone(),
                    grade: if self.grades[i] == 0 { None } else { Some(self.grades[i]) },
                })
                .collect(),
            relations: self.relations.iter().map(|&(a, b)| [q.arrows[a].id.clone(), q.arrows[b].id.clone()]).collect(),
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self, AlgebraError> {
        let quiver = Quiver::new(
            j.vertices.iter().cloned(),
            j.arrows.iter().map(|a| (a.id.clone(), a.source.clone(), a.target.clone())),
        )?;
        let grades = j.arrows.iter().filter_map(|a| a.grade.map(|g| (a.id.clone(), g))).collect();
        GentlePresentation::new(quiver, j.relations.iter().map(|[a, b]| (a.clone(), b.clone())), &grades)
    }
}

/// Serialized form: `{"vertices":[...],"arrows":[{"id","source","target","grade"}],"relations":[["a1","a2"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grade: Option<i64>,
}

pub use crate::canon::CanonicalForm;

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> GentlePresentation {
        GentlePresentation::build(&["1", "2"], &[("a", "1", "2")], &[]).unwrap()
    }

    fn kronecker() -> GentlePresentation {
        GentlePresentation::build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[]).unwrap()
    }

    #[test]
    fn single_arrow_is_gentle() {
        assert!(a2().validate_gentle().is_ok());
        assert!(kronecker().validate_gentle().is_ok());
    }

    #[test]
    fn g3_violation_reports_witness() {
        let p = GentlePresentation::build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "2", "3")], &[]).unwrap();
        let d = p.validate_gentle();
        assert!(!d.is_ok());
        assert!(d.violations.iter().any(|v| v.axiom == Axiom::G3 && v.witness.contains('a')));
    }

    #[test]
    fn structural_errors_are_not_axiom_violations() {
        let e = GentlePresentation::build(&["1"], &[("a", "1", "9")], &[]);
        assert!(matches!(e, Err(AlgebraError::UnknownVertex { .. })));
        let e = GentlePresentation::build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[("a", "b")]);
        assert!(matches!(e, Err(AlgebraError::NotComposable(..))));
    }

    #[test]
    fn classify_examples() {
        match a2().classify_hereditary_type().unwrap() {
            HereditaryType::TypeA { n, orientation, .. } => {
                assert_eq!(n, 2);
                assert_eq!(orientation, vec![Orientation::Right]);
            }
            other => panic!("{other:?}"),
        }
        match kronecker().classify_hereditary_type().unwrap() {
            HereditaryType::TypeATilde { n, p, q, .. } => assert_eq!((n, p, q), (2, 1, 1)),
            other => panic!("{other:?}"),
        }
        let star = GentlePresentation::build(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "3", "2"), ("c", "2", "4")], &[]).unwrap();
        assert!(star.classify_hereditary_type().is_err());
        let cyclic = GentlePresentation::build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[]).unwrap();
        assert!(matches!(cyclic.classify_hereditary_type(), Err(AlgebraError::NotFiniteDimensional)));
        let rel = GentlePresentation::build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[("a", "b")]).unwrap();
        assert!(matches!(rel.classify_hereditary_type(), Err(AlgebraError::NotHereditary)));
    }

    #[test]
    fn components() {
        let p = GentlePresentation::build(&["1", "2", "3"], &[("a", "1", "2")], &[]).unwrap();
        let cs = p.connected_components();
        assert_eq!(cs.iter().map(|c| c.vertex_count()).collect::<Vec<_>>(), vec![2, 1]);
        let kk = GentlePresentation::build(&["1", "2"], &[], &[]).unwrap();
        assert_eq!(kk.connected_components().len(), 2);
        assert_eq!(a2().connected_components(), vec![a2()]);
    }

    #[test]
    fn delete_graded() {
        assert_eq!(a2().delete_nonzero_graded_arrows().unwrap(), a2());
        let mut g = BTreeMap::new();
        g.insert("a".to_string(), 1);
        let p = GentlePresentation::new(a2().quiver().clone(), std::iter::empty(), &g).unwrap();
        let d = p.delete_nonzero_graded_arrows().unwrap();
        assert_eq!(d.quiver().arrow_count(), 0);
        assert_eq!(d.connected_components().len(), 2);
        assert_eq!(d.delete_nonzero_graded_arrows().unwrap(), d);
    }

    #[test]
    fn paths_respect_relations() {
        let rel = GentlePresentation::build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[("a", "b")]).unwrap();
        assert_eq!(rel.dimension(), 5);
        let free = GentlePresentation::build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[]).unwrap();
        assert_eq!(free.dimension(), 6);
    }

    #[test]
    fn json_roundtrip_and_default_grade() {
        let text = r#"{"vertices":["1","2"],"arrows":[{"id":"a","source":"1","target":"2"}],"relations":[]}"#;
        let j: AlgebraJson = serde_json::from_str(text).unwrap();
        let p = GentlePresentation::from_json(&j).unwrap();
        assert_eq!(p.grade(0), 0);
        assert_eq!(p.to_json(), j);
    }
}
