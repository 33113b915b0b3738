//! Support τ-tilting pairs and 2-term silting objects over hereditary gentle
//! algebras: enumeration and mutation, triangulations and their rotated arc
//! systems, endomorphism algebras computed geometrically and linearly, and the
//! global dimension verifier.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraJson, GentlePresentation, HereditaryType, Quiver};
use crate::canon::CanonicalForm;
use crate::curves::{CurveJson, PermissibleCurve, StringModel};
use crate::embed::Chord;
use crate::error::SiltingError;
use crate::linalg::{complement_indices, is_zero_vec, rank_of, Matrix, Q};
use crate::oracle::{ChainMap, GlobalDimension, HomSpace, PathAlgebra, Representation, TwoTermComplex};
use crate::surface::{arc_of, GeometricDimension, Lifted, MarkedRibbonSurface, PointKind, Topology};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_DEPTH: usize = 8;
pub const DEFAULT_STRING_BOUND: usize = 12;
const GLDIM_CAP: usize = 6;

/// How support τ-tilting pairs are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    /// breadth-first mutation from `(A, 0)`; strings have at most
    /// `string_bound` letters
    MutationDepth { depth: usize, string_bound: usize },
}

impl Mode {
    pub fn depth(depth: usize) -> Self {
        Mode::MutationDepth { depth, string_bound: DEFAULT_STRING_BOUND }
    }
}

/// An indecomposable summand of a pair: a string module or a shifted
/// projective `P(v)[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Summand {
    Module(PermissibleCurve),
    Shifted(usize),
}

/// `(M, P)` with `M` given by canonical curves and `P` by vertices, both sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportTauTiltingPair {
    pub modules: Vec<PermissibleCurve>,
    pub projectives: Vec<usize>,
}

impl SupportTauTiltingPair {
    pub fn len(&self) -> usize {
        self.modules.len() + self.projectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Summands in slot order: modules first, then shifted projectives.
    pub fn summands(&self) -> Vec<Summand> {
        self.modules.iter().cloned().map(Summand::Module).chain(self.projectives.iter().map(|&v| Summand::Shifted(v))).collect()
    }
}

/// Curves of the module part together with the co-arcs standing for the
/// projective part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub curves: Vec<PermissibleCurve>,
    pub co_arcs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermSiltingObject {
    pub summands: Vec<TwoTermComplex>,
}

/// The rotated arc system of a triangulation: one ∘-chord per summand with
/// the degrees of its first and last •-crossing, and the graded surface they
/// cut out.
#[derive(Clone, Debug)]
pub struct RotatedSystem {
    pub summands: Vec<Summand>,
    pub chords: Vec<Chord>,
    pub degrees: Vec<(i64, i64)>,
    pub surface: MarkedRibbonSurface,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "Ã")]
    ATilde,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentShape {
    pub shape: Shape,
    pub vertices: usize,
}

/// Structural form of a silted algebra: `form` is 1 or 2 over type A and 1
/// to 4 over type Ã.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub form: u8,
    pub components: Vec<ComponentShape>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub modules: Vec<CurveJson>,
    pub projectives: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectRecord {
    pub index: usize,
    pub pair: PairJson,
    pub endo: AlgebraJson,
    /// exact global dimension of the endomorphism algebra
    pub gldim_linear: Option<usize>,
    /// global dimension of the endomorphism algebra read off its own surface
    pub gldim_geometric: Option<usize>,
    /// max C(Δ(Γ^↺)) - 1
    pub gldim_bound: Option<usize>,
    pub max_arc_edges: usize,
    pub max_total_edges: usize,
    pub classification: Option<Classification>,
    pub endo_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub object: Option<usize>,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub algebra_id: String,
    pub algebra: AlgebraJson,
    pub mode: Mode,
    pub count: usize,
    /// mutations whose completion lies beyond the string bound
    pub bound_exceeded: usize,
    pub max_gldim_linear: Option<usize>,
    pub max_gldim_bound: Option<usize>,
    pub exchange_edges: Vec<[usize; 2]>,
    pub records: Vec<ObjectRecord>,
    pub failures: Vec<Failure>,
    pub reproducer: Option<PairJson>,
    pub verdict: Verdict,
}

/// Pairs found by an enumeration, as sorted summand-index sets, with the
/// mutation edges between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub sets: Vec<Vec<usize>>,
    pub edges: Vec<[usize; 2]>,
    pub bound_exceeded: usize,
}

struct Entry {
    summand: Summand,
    complex: TwoTermComplex,
    module: Option<Representation>,
    tau: Option<Representation>,
    /// chord of the summand in the triangulation
    chord: Chord,
    /// chord after rotation, with end degrees
    rotated: Chord,
    degrees: (i64, i64),
    rigid: bool,
    /// H⁰ of the complex recovers the summand
    air_ok: bool,
}

struct HomData {
    space: HomSpace,
    maps: Vec<ChainMap>,
}

/// Cached pipeline over one hereditary gentle algebra.
pub struct SiltingEngine {
    pub model: StringModel,
    pub alg: PathAlgebra,
    pub ambient: HereditaryType,
    entries: Vec<Entry>,
    index: HashMap<Summand, usize>,
    compat: HashMap<(usize, usize), bool>,
    tau_hom: HashMap<(usize, usize), bool>,
    crossing: HashMap<(usize, usize, bool), bool>,
    homs: HashMap<(usize, usize), Rc<HomData>>,
    comps: HashMap<(usize, usize, usize), Rc<Vec<Vec<Vec<Q>>>>>,
    dims: HashMap<CanonicalForm, (GlobalDimension, GeometricDimension)>,
}

fn interleaves(p: (u8, i64), q: (u8, i64), r: (u8, i64), s: (u8, i64)) -> bool {
    if r == p || r == q || s == p || s == q {
        return false;
    }
    let (a, b) = if p < q { (p, q) } else { (q, p) };
    let inside = |x: (u8, i64)| a < x && x < b;
    inside(r) != inside(s)
}

/// Whether two chords cross in the interior, up to deck transformations.
/// With `same`, the chords are translates of one curve and the identity
/// translate is skipped.
pub fn chords_cross(s: &MarkedRibbonSurface, a: &Chord, b: &Chord, same: bool) -> bool {
    let ts: Vec<i64> = if s.topology() == Topology::Annulus {
        let lo = a.start.k.min(a.end.k) - b.start.k.max(b.end.k) - 2;
        let hi = a.start.k.max(a.end.k) - b.start.k.min(b.end.k) + 2;
        (lo..=hi).collect()
    } else {
        vec![0]
    };
    let (p, q) = (s.position(a.start), s.position(a.end));
    ts.into_iter()
        .filter(|&t| !(same && t == 0))
        .any(|t| interleaves(p, q, s.position(b.start.shift(t)), s.position(b.end.shift(t))))
}

/// Hom(M, τM) = 0 and Hom(P, M) = 0, with `M` and `P` given by their
/// indecomposable summands.
pub fn is_tau_rigid_pair(alg: &PathAlgebra, m: &[Representation], p: &[usize]) -> Result<bool, SiltingError> {
    let taus: Vec<Representation> = m.iter().map(|x| alg.ar_translate(x)).collect();
    for x in m {
        for t in &taus {
            if alg.hom_dim(x, t)? != 0 {
                return Ok(false);
            }
        }
        if p.iter().any(|&v| x.dims[v] != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Presilting with `|Q_0|` pairwise non-isomorphic summands.
pub fn is_2term_silting(alg: &PathAlgebra, s: &TwoTermSiltingObject) -> bool {
    let xs = &s.summands;
    if xs.len() != alg.vertex_count() {
        return false;
    }
    for x in xs {
        for y in xs {
            if alg.hom_complexes_dim(x, y, 1) != 0 {
                return false;
            }
        }
    }
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if alg.complexes_isomorphic(&xs[i], &xs[j]) {
                return false;
            }
        }
    }
    true
}

/// Shape census of a silted algebra relative to the ambient hereditary type.
pub fn classify_with(b: &GentlePresentation, ambient: &HereditaryType, gldim: GlobalDimension) -> Result<Classification, SiltingError> {
    match gldim {
        GlobalDimension::Finite(d) if d <= 2 => {}
        other => return Err(SiltingError::ClassificationViolation(format!("global dimension {other:?} exceeds 2"))),
    }
    let q = b.quiver();
    let mut components = Vec::new();
    for comp in b.component_vertex_sets() {
        let arrows = q.arrows().iter().filter(|a| comp.contains(&a.source)).count();
        let shape = match (arrows + 1).checked_sub(comp.len()) {
            Some(0) => Shape::A,
            Some(1) => Shape::ATilde,
            _ => return Err(SiltingError::ClassificationViolation(format!("component with {} vertices and {arrows} arrows", comp.len()))),
        };
        components.push(ComponentShape { shape, vertices: comp.len() });
    }
    let total: usize = components.iter().map(|c| c.vertices).sum();
    if total != ambient.vertex_count() {
        return Err(SiltingError::ClassificationViolation(format!("component sizes sum to {total}, not {}", ambient.vertex_count())));
    }
    let tilde = components.iter().filter(|c| c.shape == Shape::ATilde).count();
    let k = components.len();
    let form = match (ambient.is_type_a(), k, tilde) {
        (true, 1, 0) => 1,
        (true, _, 0) => 2,
        (false, 1, 1) => 1,
        (false, 1, 0) => 2,
        (false, _, 0) => 3,
        (false, _, 1) => 4,
        _ => return Err(SiltingError::ClassificationViolation(format!("{tilde} components of type Ã in {k} components"))),
    };
    Ok(Classification { form, components })
}

/// Classifies `B` by component shapes, computing its global dimension.
pub fn classify_silted(b: &GentlePresentation, ambient: &HereditaryType) -> Result<Classification, SiltingError> {
    classify_with(b, ambient, PathAlgebra::new(b).global_dimension(GLDIM_CAP))
}

fn linear_combination(coeffs: &[Q], vecs: &[Vec<Q>], len: usize) -> Vec<Q> {
    let mut out = vec![Q::int(0); len];
    for (c, v) in coeffs.iter().zip(vecs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += &(c * x);
        }
    }
    out
}

fn unit(len: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::int(0); len];
    v[i] = Q::int(1);
    v
}

fn summand_label(i: usize) -> String {
    format!("X{}", i + 1)
}

fn catch(f: &mut Vec<Failure>, object: usize, check: &str, detail: impl Into<String>) {
    f.push(Failure { object: Some(object), check: check.into(), detail: detail.into() });
}

fn gldim_value(g: GlobalDimension) -> Option<usize> {
    match g {
        GlobalDimension::Finite(d) => Some(d),
        GlobalDimension::Exceeds(_) => None,
    }
}

fn geometric_value(g: GeometricDimension) -> Option<usize> {
    match g {
        GeometricDimension::Finite(d) => Some(d),
        GeometricDimension::Infinite => None,
    }
}

/// Arrows of the endomorphism quiver coming from irreducible maps `X_i -> X_j`.
struct Family {
    i: usize,
    j: usize,
    rad2: Vec<Vec<Q>>,
    reps: Vec<Vec<Q>>,
}

impl SiltingEngine {
    pub fn new(p: &GentlePresentation) -> Result<Self, SiltingError> {
        let ambient = p.classify_hereditary_type()?;
        Ok(SiltingEngine {
            model: StringModel::from_algebra(p)?,
            alg: PathAlgebra::new(p),
            ambient,
            entries: Vec::new(),
            index: HashMap::new(),
            compat: HashMap::new(),
            tau_hom: HashMap::new(),
            crossing: HashMap::new(),
            homs: HashMap::new(),
            comps: HashMap::new(),
            dims: HashMap::new(),
        })
    }

    pub fn presentation(&self) -> &GentlePresentation {
        self.alg.presentation()
    }

    pub fn vertex_count(&self) -> usize {
        self.alg.vertex_count()
    }

    pub fn summand(&self, i: usize) -> &Summand {
        &self.entries[i].summand
    }

    pub fn complex(&self, i: usize) -> &TwoTermComplex {
        &self.entries[i].complex
    }

    /// Index of a summand, computing its data on first use.
    pub fn register(&mut self, s: Summand) -> Result<usize, SiltingError> {
        let s = match s {
            Summand::Module(c) => Summand::Module(self.model.canonical(&c)),
            x => x,
        };
        if let Some(&i) = self.index.get(&s) {
            return Ok(i);
        }
        let alg = &self.alg;
        let entry = match &s {
            Summand::Module(c) => {
                let m = self.model.module_of_curve(c)?;
                let complex = alg.min_projective_presentation(&m);
                let tau = alg.ar_translate(&m);
                let ac = self.model.embed_curve(c)?;
                let degrees = (ac.degrees[0], *ac.degrees.last().expect("nonempty grading"));
                let air_ok = alg.modules_isomorphic(&alg.h0(&complex), &m)?;
                let rigid = alg.hom_complexes_dim(&complex, &complex, 1) == 0;
                Entry { summand: s.clone(), complex, module: Some(m), tau: Some(tau), chord: self.model.chord(c), rotated: ac.chord, degrees, rigid, air_ok }
            }
            Summand::Shifted(v) => {
                if *v >= alg.vertex_count() {
                    return Err(SiltingError::InvalidPair(format!("no vertex {v}")));
                }
                let complex = TwoTermComplex::shifted_stalk(alg, *v);
                let (a, b) = self.model.surface.arc_lift(*v, 0);
                let chord = Chord { start: a, end: b };
                let air_ok = alg.h0(&complex).is_zero();
                let rigid = alg.hom_complexes_dim(&complex, &complex, 1) == 0;
                Entry { summand: s.clone(), complex, module: None, tau: None, chord: chord.clone(), rotated: chord, degrees: (-1, -1), rigid, air_ok }
            }
        };
        self.entries.push(entry);
        let i = self.entries.len() - 1;
        self.index.insert(s, i);
        Ok(i)
    }

    /// Hom(X, Y[1]) = 0 = Hom(Y, X[1]) for the complexes of two summands.
    pub fn compatible(&mut self, i: usize, j: usize) -> bool {
        if i == j {
            return self.entries[i].rigid;
        }
        let key = (i.min(j), i.max(j));
        if let Some(&b) = self.compat.get(&key) {
            return b;
        }
        let (x, y) = (&self.entries[i].complex, &self.entries[j].complex);
        let b = self.alg.hom_complexes_dim(x, y, 1) == 0 && self.alg.hom_complexes_dim(y, x, 1) == 0;
        self.compat.insert(key, b);
        b
    }

    /// τ-rigidity of two summands taken together, checked on modules.
    fn tau_compatible(&mut self, i: usize, j: usize) -> Result<bool, SiltingError> {
        let key = (i.min(j), i.max(j));
        if let Some(&b) = self.tau_hom.get(&key) {
            return Ok(b);
        }
        let (x, y) = (&self.entries[key.0], &self.entries[key.1]);
        let b = match (&x.module, &y.module, &x.summand, &y.summand) {
            (Some(m), Some(n), _, _) => {
                let (tm, tn) = (x.tau.as_ref().unwrap(), y.tau.as_ref().unwrap());
                self.alg.hom_dim(m, tn)? == 0 && self.alg.hom_dim(n, tm)? == 0 && self.alg.hom_dim(m, tm)? == 0 && self.alg.hom_dim(n, tn)? == 0
            }
            (Some(m), None, _, Summand::Shifted(v)) | (None, Some(m), Summand::Shifted(v), _) => m.dims[*v] == 0,
            _ => true,
        };
        self.tau_hom.insert(key, b);
        Ok(b)
    }

    /// Whether the chords of two summands cross, in the triangulation or
    /// after rotation.
    pub fn crosses(&mut self, i: usize, j: usize, rotated: bool) -> bool {
        let key = (i.min(j), i.max(j), rotated);
        if let Some(&b) = self.crossing.get(&key) {
            return b;
        }
        let (x, y) = (&self.entries[key.0], &self.entries[key.1]);
        let (a, b) = if rotated { (&x.rotated, &y.rotated) } else { (&x.chord, &y.chord) };
        let r = chords_cross(&self.model.surface, a, b, i == j);
        self.crossing.insert(key, r);
        r
    }

    /// Rigid candidates: shifted projectives, then string modules with at
    /// most `string_bound` letters in increasing length and canonical order.
    pub fn pool(&mut self, string_bound: usize) -> Result<Vec<usize>, SiltingError> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            out.push(self.register(Summand::Shifted(v))?);
        }
        for c in self.model.curves_up_to(string_bound + 1) {
            let i = self.register(Summand::Module(c))?;
            if self.entries[i].rigid {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn set_of(&mut self, pair: &SupportTauTiltingPair) -> Result<Vec<usize>, SiltingError> {
        let mut set = pair.summands().into_iter().map(|s| self.register(s)).collect::<Result<Vec<_>, _>>()?;
        set.sort();
        Ok(set)
    }

    pub fn pair_of(&self, set: &[usize]) -> SupportTauTiltingPair {
        let mut modules = Vec::new();
        let mut projectives = Vec::new();
        for &i in set {
            match &self.entries[i].summand {
                Summand::Module(c) => modules.push(c.clone()),
                Summand::Shifted(v) => projectives.push(*v),
            }
        }
        modules.sort();
        projectives.sort();
        SupportTauTiltingPair { modules, projectives }
    }

    /// Checks the support τ-tilting conditions on modules.
    pub fn validate_set(&mut self, set: &[usize]) -> Result<(), SiltingError> {
        if set.len() != self.vertex_count() {
            return Err(SiltingError::InvalidPair(format!("{} summands for {} vertices", set.len(), self.vertex_count())));
        }
        for (a, &i) in set.iter().enumerate() {
            for &j in &set[a..] {
                if !self.tau_compatible(i, j)? {
                    return Err(SiltingError::InvalidPair("Hom(M, τM) or Hom(P, M) is nonzero".into()));
                }
            }
        }
        let mut sorted = set.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != set.len() {
            return Err(SiltingError::InvalidPair("repeated summand".into()));
        }
        Ok(())
    }

    pub fn is_tau_rigid(&mut self, pair: &SupportTauTiltingPair) -> Result<bool, SiltingError> {
        let set = self.set_of(pair)?;
        for (a, &i) in set.iter().enumerate() {
            for &j in &set[a..] {
                if !self.tau_compatible(i, j)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    // ---- enumeration and mutation ----

    /// Completions of `set` without slot `slot` among `pool`, other than the
    /// removed summand.
    fn completions(&mut self, set: &[usize], slot: usize, pool: &[usize]) -> Vec<usize> {
        let removed = set[slot];
        let rest: Vec<usize> = set.iter().copied().filter(|&x| x != removed).collect();
        let mut out = Vec::new();
        for &c in pool {
            if c == removed || rest.contains(&c) || !self.compatible(c, c) {
                continue;
            }
            if rest.iter().all(|&r| self.compatible(c, r)) {
                out.push(c);
            }
        }
        out
    }

    fn mutate_set(&mut self, set: &[usize], slot: usize, pool: &[usize]) -> Result<Option<Vec<usize>>, SiltingError> {
        let found = self.completions(set, slot, pool);
        match found.len() {
            0 => Ok(None),
            1 => {
                let mut next: Vec<usize> = set.iter().copied().filter(|&x| x != set[slot]).collect();
                next.push(found[0]);
                next.sort();
                Ok(Some(next))
            }
            k => Err(SiltingError::Internal(format!("{k} other completions of an almost complete pair"))),
        }
    }

    /// Exchanges the summand in slot `index` (modules first, then
    /// projectives) for the other completion.
    pub fn mutate_pair(&mut self, pair: &SupportTauTiltingPair, index: usize, string_bound: usize) -> Result<SupportTauTiltingPair, SiltingError> {
        let set = self.set_of(pair)?;
        self.validate_set(&set)?;
        let target = pair.summands().get(index).cloned().ok_or_else(|| SiltingError::InvalidPair(format!("no slot {index}")))?;
        let t = self.register(target)?;
        let slot = set.iter().position(|&x| x == t).expect("slot in set");
        let bound = if self.ambient.is_type_a() { self.vertex_count() } else { string_bound };
        let pool = self.pool(bound)?;
        match self.mutate_set(&set, slot, &pool)? {
            Some(next) => Ok(self.pair_of(&next)),
            None => Err(SiltingError::BoundExceeded(bound)),
        }
    }

    pub fn initial_set(&mut self) -> Result<Vec<usize>, SiltingError> {
        let mut set = Vec::new();
        for v in 0..self.vertex_count() {
            let c = self.model.projective_curve(v);
            set.push(self.register(Summand::Module(c))?);
        }
        set.sort();
        Ok(set)
    }

    pub fn enumerate(&mut self, mode: Mode) -> Result<Enumeration, SiltingError> {
        match mode {
            Mode::Exhaustive => self.enumerate_exhaustive(),
            Mode::MutationDepth { depth, string_bound } => self.enumerate_depth(depth, string_bound),
        }
    }

    fn enumerate_exhaustive(&mut self) -> Result<Enumeration, SiltingError> {
        if !self.ambient.is_type_a() {
            return Err(SiltingError::InfiniteEnumeration);
        }
        let n = self.vertex_count();
        let pool = self.pool(n)?;
        let m = pool.len();
        let mut ok = vec![vec![false; m]; m];
        for a in 0..m {
            for b in a + 1..m {
                let c = self.compatible(pool[a], pool[b]);
                ok[a][b] = c;
                ok[b][a] = c;
            }
        }
        let mut sets = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        fn grow(ok: &[Vec<bool>], from: usize, n: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if stack.len() == n {
                out.push(stack.clone());
                return;
            }
            for c in from..ok.len() {
                if ok.len() - c < n - stack.len() {
                    break;
                }
                if stack.iter().all(|&s| ok[s][c]) {
                    stack.push(c);
                    grow(ok, c + 1, n, stack, out);
                    stack.pop();
                }
            }
        }
        let mut cliques = Vec::new();
        grow(&ok, 0, n, &mut stack, &mut cliques);
        for cl in cliques {
            let mut s: Vec<usize> = cl.iter().map(|&c| pool[c]).collect();
            s.sort();
            sets.push(s);
        }
        let mut by_facet: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (k, s) in sets.iter().enumerate() {
            for slot in 0..s.len() {
                let mut f = s.clone();
                f.remove(slot);
                by_facet.entry(f).or_default().push(k);
            }
        }
        let mut edges = Vec::new();
        for ks in by_facet.values() {
            match ks.as_slice() {
                [a, b] => edges.push([*a, *b]),
                [_] => {}
                _ => return Err(SiltingError::Internal("almost complete pair with more than two completions".into())),
            }
        }
        edges.sort();
        Ok(Enumeration { sets, edges, bound_exceeded: 0 })
    }

    fn enumerate_depth(&mut self, depth: usize, string_bound: usize) -> Result<Enumeration, SiltingError> {
        let bound = if self.ambient.is_type_a() { self.vertex_count() } else { string_bound };
        let pool = self.pool(bound)?;
        let start = self.initial_set()?;
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        seen.insert(start, 0);
        let mut queue = VecDeque::from([(0usize, 0usize)]);
        let mut edges = Vec::new();
        let mut bound_exceeded = 0;
        while let Some((k, d)) = queue.pop_front() {
            if d == depth {
                continue;
            }
            let set = sets[k].clone();
            for slot in 0..set.len() {
                match self.mutate_set(&set, slot, &pool)? {
                    None => bound_exceeded += 1,
                    Some(next) => {
                        let j = match seen.get(&next) {
                            Some(&j) => j,
                            None => {
                                sets.push(next.clone());
                                seen.insert(next, sets.len() - 1);
                                queue.push_back((sets.len() - 1, d + 1));
                                sets.len() - 1
                            }
                        };
                        edges.push([k.min(j), k.max(j)]);
                    }
                }
            }
        }
        edges.sort();
        edges.dedup();
        Ok(Enumeration { sets, edges, bound_exceeded })
    }

    pub fn enumerate_stau_tilt(&mut self, mode: Mode) -> Result<Vec<SupportTauTiltingPair>, SiltingError> {
        let e = self.enumerate(mode)?;
        Ok(e.sets.iter().map(|s| self.pair_of(s)).collect())
    }

    // ---- the bijections ----

    pub fn silting_of_pair(&mut self, pair: &SupportTauTiltingPair) -> Result<TwoTermSiltingObject, SiltingError> {
        let set = self.set_of(pair)?;
        self.validate_set(&set)?;
        let mut summands = Vec::new();
        for s in pair.summands() {
            let i = self.register(s)?;
            summands.push(self.entries[i].complex.clone());
        }
        Ok(TwoTermSiltingObject { summands })
    }

    /// Summand of a 2-term complex read off its H⁰.
    pub fn summand_of_complex(&mut self, c: &TwoTermComplex) -> Result<Summand, SiltingError> {
        let c = self.alg.minimize(c);
        let m = self.alg.h0(&c);
        if m.is_zero() {
            return match (c.p0.as_slice(), c.p1.as_slice()) {
                ([], [v]) => Ok(Summand::Shifted(*v)),
                _ => Err(SiltingError::InvalidPair("complex with zero H⁰ is not a shifted indecomposable projective".into())),
            };
        }
        for e in &self.entries {
            if let Some(n) = &e.module {
                if n.dims == m.dims && self.alg.modules_isomorphic(n, &m)? {
                    return Ok(e.summand.clone());
                }
            }
        }
        let size = m.total_dim();
        for curve in self.model.curves_up_to(size) {
            if curve.crossing_count() != size {
                continue;
            }
            let n = self.model.module_of_curve(&curve)?;
            if n.dims == m.dims && self.alg.modules_isomorphic(&n, &m)? {
                return Ok(Summand::Module(curve));
            }
        }
        Err(SiltingError::InvalidPair("H⁰ is not an indecomposable string module".into()))
    }

    pub fn h0_of_silting(&mut self, s: &TwoTermSiltingObject) -> Result<SupportTauTiltingPair, SiltingError> {
        let mut set = Vec::new();
        for c in &s.summands {
            let x = self.summand_of_complex(c)?;
            set.push(self.register(x)?);
        }
        set.sort();
        Ok(self.pair_of(&set))
    }

    fn non_crossing(&mut self, set: &[usize], rotated: bool) -> Result<(), SiltingError> {
        for (a, &i) in set.iter().enumerate() {
            for &j in &set[a..] {
                if self.crosses(i, j, rotated) {
                    return Err(SiltingError::Internal(format!("chords of summands {i} and {j} cross")));
                }
            }
        }
        Ok(())
    }

    pub fn triangulation_of_pair(&mut self, pair: &SupportTauTiltingPair) -> Result<Triangulation, SiltingError> {
        let set = self.set_of(pair)?;
        self.non_crossing(&set, false)?;
        Ok(Triangulation { curves: pair.modules.clone(), co_arcs: pair.projectives.clone() })
    }

    pub fn pair_of_triangulation(&mut self, t: &Triangulation) -> Result<SupportTauTiltingPair, SiltingError> {
        let pair = SupportTauTiltingPair { modules: t.curves.clone(), projectives: t.co_arcs.clone() };
        let set = self.set_of(&pair)?;
        self.non_crossing(&set, false)?;
        Ok(self.pair_of(&set))
    }
}

impl SiltingEngine {
    // ---- rotated arc systems ----

    /// Γ^↺ for a set of summands: the rotated chords, the fans they form at
    /// the ∘-points, and corner grades from the end degrees.
    pub fn ffas_rotate(&mut self, set: &[usize]) -> Result<RotatedSystem, SiltingError> {
        let s = &self.model.surface;
        let mut at: Vec<Vec<(usize, (bool, (u8, i64)))>> = vec![Vec::new(); s.point_count()];
        let chords: Vec<Chord> = set.iter().map(|&i| self.entries[i].rotated.clone()).collect();
        for (i, ch) in chords.iter().enumerate() {
            for (end, here, there) in [(2 * i, ch.start, ch.end), (2 * i + 1, ch.end, ch.start)] {
                if here.kind != PointKind::Marked {
                    return Err(SiltingError::Internal("rotated chord ends at a •-point".into()));
                }
                let p = s.position(Lifted::marked(here.point, 0));
                let o = s.position(there.shift(-here.k));
                at[here.point].push((end, (o <= p, o)));
            }
        }
        let fans: Vec<Vec<usize>> = at
            .into_iter()
            .map(|mut f| {
                f.sort_by(|a, b| b.1.cmp(&a.1));
                f.into_iter().map(|x| x.0).collect()
            })
            .collect();
        let point_ids = s.points.iter().map(|p| p.id.clone()).collect();
        let arc_ids = (0..set.len()).map(summand_label).collect();
        let offsets = chords.iter().map(|c| c.end.k - c.start.k).collect();
        let mut surface = MarkedRibbonSurface::from_fans(point_ids, fans, arc_ids, Some(s.components.clone()), Some(offsets))?;
        if surface.topology() != s.topology() {
            return Err(SiltingError::Internal(format!("rotated arcs cut out {:?}", surface.topology())));
        }
        let degrees: Vec<(i64, i64)> = set.iter().map(|&i| self.entries[i].degrees).collect();
        let deg = |e: usize| if e % 2 == 0 { degrees[arc_of(e)].0 } else { degrees[arc_of(e)].1 };
        for h in 0..2 * set.len() {
            if let Some(h2) = surface.succ(h) {
                surface.corner_grades[h] = deg(h) - deg(h2);
            }
        }
        let summands = set.iter().map(|&i| self.entries[i].summand.clone()).collect();
        Ok(RotatedSystem { summands, chords, degrees, surface })
    }

    /// The graded algebra of Γ^↺ and its degree-zero part.
    pub fn endo_geometric(&self, rs: &RotatedSystem) -> Result<(GentlePresentation, GentlePresentation), SiltingError> {
        let graded = rs.surface.algebra()?;
        let h0 = graded.delete_nonzero_graded_arrows()?;
        Ok((graded, h0))
    }

    // ---- endomorphism algebras from the oracle ----

    fn hom(&mut self, i: usize, j: usize) -> Rc<HomData> {
        if let Some(h) = self.homs.get(&(i, j)) {
            return h.clone();
        }
        let space = self.alg.hom_space_complexes(&self.entries[i].complex, &self.entries[j].complex);
        let maps = (0..space.dim()).map(|t| space.element(&self.alg, t)).collect();
        let h = Rc::new(HomData { space, maps });
        self.homs.insert((i, j), h.clone());
        h
    }

    /// `[a][b]`: coordinates of `b ∘ a` for basis maps `a: X_i -> X_k` and
    /// `b: X_k -> X_j`.
    fn comp(&mut self, i: usize, k: usize, j: usize) -> Rc<Vec<Vec<Vec<Q>>>> {
        if let Some(c) = self.comps.get(&(i, k, j)) {
            return c.clone();
        }
        let (a, b, c) = (self.hom(i, k), self.hom(k, j), self.hom(i, j));
        let table: Vec<Vec<Vec<Q>>> = a
            .maps
            .iter()
            .map(|f| b.maps.iter().map(|g| c.space.reduce(&self.alg.compose_chain(g, f).coords())).collect())
            .collect();
        let t = Rc::new(table);
        self.comps.insert((i, k, j), t.clone());
        t
    }

    /// `b ∘ a` for `a ∈ Hom(X_i, X_k)` and `b ∈ Hom(X_k, X_j)` in coordinates.
    fn compose(&mut self, i: usize, k: usize, j: usize, a: &[Q], b: &[Q]) -> Vec<Q> {
        let t = self.comp(i, k, j);
        let len = self.hom(i, j).space.dim();
        let mut out = vec![Q::int(0); len];
        for (x, ax) in a.iter().enumerate() {
            if ax.is_zero() {
                continue;
            }
            for (y, by) in b.iter().enumerate() {
                if by.is_zero() {
                    continue;
                }
                let c = ax * by;
                for (o, v) in out.iter_mut().zip(&t[x][y]) {
                    *o += &(&c * v);
                }
            }
        }
        out
    }

    /// Kernel conditions on `Hom(X_i, X_j)`: for each arrow composable with
    /// a map `X_i -> X_j`, the subspace of maps whose composite vanishes.
    fn conditions(&mut self, set: &[usize], fams: &[Family], f: usize) -> (Vec<Vec<Vec<Q>>>, Vec<Vec<Vec<Q>>>) {
        let (i, j) = (fams[f].i, fams[f].j);
        let d = self.hom(set[i], set[j]).space.dim();
        let mut pre = Vec::new();
        let mut post = Vec::new();
        for g in fams {
            // maps X_l -> X_i composed before, and X_j -> X_m after
            for r in &g.reps {
                if g.j == i {
                    let cols: Vec<Vec<Q>> = (0..d).map(|t| self.compose(set[g.i], set[i], set[j], r, &unit(d, t))).collect();
                    post.push(cols);
                }
                if g.i == j {
                    let cols: Vec<Vec<Q>> = (0..d).map(|t| self.compose(set[i], set[j], set[g.j], &unit(d, t), r)).collect();
                    pre.push(cols);
                }
            }
        }
        let kernel = |cols: &Vec<Vec<Q>>| -> Option<Vec<Vec<Q>>> {
            let out_len = cols.first().map_or(0, Vec::len);
            if out_len == 0 || cols.iter().all(|c| is_zero_vec(c)) {
                return None;
            }
            let m = Matrix::from_rows((0..out_len).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect(), d);
            Some(m)
                .map(|m| m.nullspace())
                .filter(|k| !k.is_empty())
                .map(|k| k.into_iter().map(|v| v.into_iter().collect()).collect())
        };
        let pre = pre.iter().filter_map(kernel).collect();
        let post = post.iter().filter_map(kernel).collect();
        (pre, post)
    }

    /// Chooses arrow representatives of a family so that as many composites
    /// with neighbouring arrows vanish as possible.
    fn adapt(&mut self, set: &[usize], fams: &mut [Family], f: usize) {
        let (pre, post) = self.conditions(set, fams, f);
        if pre.is_empty() && post.is_empty() {
            return;
        }
        let d = self.hom(set[fams[f].i], set[fams[f].j]).space.dim();
        let meet = |a: &[Vec<Q>], b: &[Vec<Q>]| -> Vec<Vec<Q>> {
            // intersection of two subspaces given by bases
            let mut cols: Vec<Vec<Q>> = a.to_vec();
            cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<Q>>()));
            let m = Matrix::from_rows((0..d).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect(), cols.len());
            m.nullspace().into_iter().map(|x| linear_combination(&x[..a.len()], a, d)).filter(|v| !is_zero_vec(v)).collect()
        };
        let mut cands: Vec<Vec<Vec<Q>>> = Vec::new();
        for a in &pre {
            for b in &post {
                cands.push(meet(a, b));
            }
        }
        cands.extend(pre.iter().cloned());
        cands.extend(post.iter().cloned());
        cands.push((0..d).map(|t| unit(d, t)).collect());
        let want = fams[f].reps.len();
        let mut chosen: Vec<Vec<Q>> = Vec::new();
        let mut base = fams[f].rad2.clone();
        for cand in cands {
            for v in cand {
                if chosen.len() == want {
                    break;
                }
                let r = rank_of(&base, d);
                base.push(v.clone());
                if rank_of(&base, d) > r {
                    chosen.push(v);
                } else {
                    base.pop();
                }
            }
        }
        fams[f].reps = chosen;
    }

    /// End(⊕ X_i) as a bound quiver: an arrow `j -> i` for each irreducible
    /// map `X_i -> X_j`, zero relations for vanishing composites, certified
    /// by checking that path images form a basis of every Hom space.
    pub fn endo_algebraic(&mut self, set: &[usize]) -> Result<GentlePresentation, SiltingError> {
        let n = set.len();
        let ids: Vec<String> = (0..n).map(summand_label).collect();
        let mut dim = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                dim[i][j] = self.hom(set[i], set[j]).space.dim();
            }
            if dim[i][i] != 1 {
                return Err(SiltingError::Internal(format!("summand {} has a {}-dimensional endomorphism ring", ids[i], dim[i][i])));
            }
        }
        let mut fams = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let d = dim[i][j];
                if i == j || d == 0 {
                    continue;
                }
                let mut span = Vec::new();
                for k in (0..n).filter(|&k| k != i && k != j && dim[i][k] > 0 && dim[k][j] > 0) {
                    let t = self.comp(set[i], set[k], set[j]);
                    span.extend(t.iter().flatten().filter(|v| !is_zero_vec(v)).cloned());
                }
                let rad2 = if span.is_empty() { span } else { Matrix::from_rows(span, d).row_basis() };
                let units: Vec<Vec<Q>> = (0..d).map(|t| unit(d, t)).collect();
                let reps: Vec<Vec<Q>> = complement_indices(&rad2, &units, d).into_iter().map(|t| units[t].clone()).collect();
                if !reps.is_empty() {
                    fams.push(Family { i, j, rad2, reps });
                }
            }
        }
        let ambiguous: Vec<usize> = (0..fams.len()).filter(|&f| !fams[f].rad2.is_empty() || fams[f].reps.len() > 1).collect();
        for _ in 0..3 {
            for &f in &ambiguous {
                self.adapt(set, &mut fams, f);
            }
        }
        let mut arrows = Vec::new();
        let mut maps = Vec::new();
        for f in &fams {
            for r in &f.reps {
                let id = format!("x{}", arrows.len() + 1);
                arrows.push((id, ids[f.j].clone(), ids[f.i].clone()));
                maps.push((f.i, f.j, r.clone()));
            }
        }
        let mut relations = Vec::new();
        for (a, (i, j, f)) in maps.iter().enumerate() {
            for (b, (l, i2, g)) in maps.iter().enumerate() {
                if i2 == i && is_zero_vec(&self.compose(set[*l], set[*i], set[*j], g, f)) {
                    relations.push((arrows[a].0.clone(), arrows[b].0.clone()));
                }
            }
        }
        let quiver = Quiver::new(ids.clone(), arrows.clone())?;
        let b = GentlePresentation::new(quiver, relations, &BTreeMap::new())?;
        if !b.validate_gentle().is_ok() || !b.is_finite_dimensional() {
            return Err(SiltingError::Internal("endomorphism quiver with relations is not a finite-dimensional gentle algebra".into()));
        }
        // certification: images of paths from each vertex form a basis
        let q = b.quiver();
        let summand_of: Vec<usize> = (0..n).map(|u| ids.iter().position(|x| *x == q.vertices()[u]).unwrap()).collect();
        let map_of: Vec<usize> = (0..q.arrow_count()).map(|a| arrows.iter().position(|x| x.0 == q.arrow(a).id).unwrap()).collect();
        for u in 0..n {
            let x = summand_of[u];
            let mut images: Vec<Vec<Vec<Q>>> = vec![Vec::new(); n];
            for p in b.paths_from(u) {
                let mut cur = self.hom(set[x], set[x]).space.reduce(&ChainMap::identity(&self.alg, &self.entries[set[x]].complex).coords());
                let mut end = x;
                for &a in &p.arrows {
                    let (l, c, g) = &maps[map_of[a]];
                    debug_assert_eq!(*c, end);
                    cur = self.compose(set[*l], set[end], set[x], g, &cur);
                    end = *l;
                }
                images[end].push(cur);
            }
            for (w, im) in images.iter().enumerate() {
                if im.len() != dim[w][x] || rank_of(im, dim[w][x]) != im.len() {
                    return Err(SiltingError::Internal(format!(
                        "paths {} -> {} do not map to a basis of Hom({}, {})",
                        ids[x], ids[w], ids[w], ids[x]
                    )));
                }
            }
        }
        Ok(b)
    }

    fn dimensions(&mut self, b: &GentlePresentation) -> Result<(GlobalDimension, GeometricDimension), SiltingError> {
        let key = b.canonical_form();
        if let Some(&d) = self.dims.get(&key) {
            return Ok(d);
        }
        let d = (PathAlgebra::new(b).global_dimension(GLDIM_CAP), crate::surface::global_dimension_geometric(b)?);
        self.dims.insert(key, d);
        Ok(d)
    }

    // ---- the verifier ----

    pub fn pair_to_json(&self, pair: &SupportTauTiltingPair) -> PairJson {
        let vs = self.presentation().quiver().vertices();
        PairJson {
            modules: pair.modules.iter().map(|c| self.model.curve_to_json(c)).collect(),
            projectives: pair.projectives.iter().map(|&v| vs[v].clone()).collect(),
        }
    }

    pub fn pair_from_json(&self, j: &PairJson) -> Result<SupportTauTiltingPair, SiltingError> {
        let q = self.presentation().quiver();
        let mut modules = j.modules.iter().map(|c| self.model.curve_from_json(c).map(|c| self.model.canonical(&c))).collect::<Result<Vec<_>, _>>()?;
        let mut projectives = j
            .projectives
            .iter()
            .map(|v| q.vertex_index(v).ok_or_else(|| SiltingError::InvalidPair(format!("unknown vertex {v}"))))
            .collect::<Result<Vec<_>, _>>()?;
        modules.sort();
        projectives.sort();
        Ok(SupportTauTiltingPair { modules, projectives })
    }

    /// Runs every check on one silting object.
    pub fn analyze(&mut self, set: &[usize], index: usize) -> (ObjectRecord, Vec<Failure>) {
        let mut set = set.to_vec();
        set.sort_by(|&a, &b| self.entries[a].summand.cmp(&self.entries[b].summand));
        let set = &set[..];
        let mut fail = Vec::new();
        let pair = self.pair_of(set);
        if let Err(e) = self.validate_set(set) {
            catch(&mut fail, index, "tau_rigid", e.to_string());
        }
        for (a, &i) in set.iter().enumerate() {
            if !self.entries[i].air_ok {
                catch(&mut fail, index, "air_round_trip", format!("H⁰ of summand {} does not recover it", summand_label(a)));
            }
            for &j in &set[a..] {
                if !self.compatible(i, j) {
                    catch(&mut fail, index, "presilting", format!("Hom between summands {i} and {j} in degree 1"));
                }
            }
        }
        if let Err(e) = self.non_crossing(set, false) {
            catch(&mut fail, index, "triangulation", e.to_string());
        }
        if let Err(e) = self.non_crossing(set, true) {
            catch(&mut fail, index, "ffas_crossing", e.to_string());
        }
        let mut record = ObjectRecord {
            index,
            pair: self.pair_to_json(&pair),
            endo: AlgebraJson { vertices: vec![], arrows: vec![], relations: vec![] },
            gldim_linear: None,
            gldim_geometric: None,
            gldim_bound: None,
            max_arc_edges: 0,
            max_total_edges: 0,
            classification: None,
            endo_agree: false,
        };
        let geometric = match self.ffas_rotate(set) {
            Ok(rs) => {
                let polys = rs.surface.elementary_polygons();
                record.max_arc_edges = polys.iter().map(|p| p.arc_edges).max().unwrap_or(0);
                record.max_total_edges = polys.iter().map(|p| p.total_edges()).max().unwrap_or(0);
                record.gldim_bound = geometric_value(rs.surface.global_dimension());
                if polys.iter().any(|p| p.unmarked) {
                    catch(&mut fail, index, "ffas", "a polygon of Γ^↺ has no marked boundary edge");
                }
                if record.max_arc_edges > 3 || record.max_total_edges > 4 {
                    catch(&mut fail, index, "polygon_bound", format!("{} arc edges, {} edges", record.max_arc_edges, record.max_total_edges));
                }
                match record.gldim_bound {
                    Some(d) if d <= 2 => {}
                    other => catch(&mut fail, index, "gldim_bound", format!("{other:?}")),
                }
                match self.endo_geometric(&rs) {
                    Ok((_, h0)) => Some(h0),
                    Err(e) => {
                        catch(&mut fail, index, "endo_geometric", e.to_string());
                        None
                    }
                }
            }
            Err(e) => {
                catch(&mut fail, index, "ffas", e.to_string());
                None
            }
        };
        let algebraic = match self.endo_algebraic(set) {
            Ok(b) => Some(b),
            Err(e) => {
                catch(&mut fail, index, "endo_algebraic", e.to_string());
                None
            }
        };
        if let (Some(g), Some(a)) = (&geometric, &algebraic) {
            record.endo_agree = g.is_isomorphic(a);
            if !record.endo_agree {
                catch(&mut fail, index, "endo_agree", format!("geometric {:?} vs algebraic {:?}", g.to_json(), a.to_json()));
            }
        }
        if let Some(b) = algebraic.or(geometric) {
            record.endo = b.to_json();
            match self.dimensions(&b) {
                Ok((lin, geo)) => {
                    record.gldim_linear = gldim_value(lin);
                    record.gldim_geometric = geometric_value(geo);
                    if record.gldim_linear != record.gldim_geometric {
                        catch(&mut fail, index, "gldim_formula", format!("linear {lin:?}, geometric {geo:?}"));
                    }
                    match classify_with(&b, &self.ambient, lin) {
                        Ok(c) => record.classification = Some(c),
                        Err(e) => catch(&mut fail, index, "classification", e.to_string()),
                    }
                }
                Err(e) => catch(&mut fail, index, "gldim", e.to_string()),
            }
        }
        (record, fail)
    }

    pub fn algebra_id(&self) -> String {
        match &self.ambient {
            HereditaryType::TypeA { n, .. } => {
                let q = self.presentation().quiver();
                let mut word = String::new();
                for i in 1..*n {
                    let (a, b) = (q.vertex_index(&i.to_string()), q.vertex_index(&(i + 1).to_string()));
                    let right = q.arrows().iter().any(|x| Some(x.source) == a && Some(x.target) == b);
                    word.push(if right { 'r' } else { 'l' });
                }
                if q.vertex_index("1").is_some() {
                    format!("A{n}:{word}")
                } else {
                    format!("A{n}")
                }
            }
            HereditaryType::TypeATilde { p, q, .. } => format!("Ã{p},{q}"),
        }
    }

    /// The full pipeline over every enumerated pair.
    pub fn verify(&mut self, mode: Mode) -> Result<VerificationReport, SiltingError> {
        let e = self.enumerate(mode)?;
        let results: Vec<(ObjectRecord, Vec<Failure>)> = e.sets.iter().enumerate().map(|(k, set)| self.analyze(set, k)).collect();
        Ok(self.assemble(mode, e, results))
    }

    fn assemble(&self, mode: Mode, e: Enumeration, mut results: Vec<(ObjectRecord, Vec<Failure>)>) -> VerificationReport {
        results.sort_by_key(|r| r.0.index);
        let mut records = Vec::new();
        let mut failures = Vec::new();
        let mut reproducer = None;
        for (r, f) in results {
            if !f.is_empty() && reproducer.is_none() {
                reproducer = Some(r.pair.clone());
            }
            records.push(r);
            failures.extend(f);
        }
        let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            algebra_id: self.algebra_id(),
            algebra: self.presentation().to_json(),
            mode,
            count: records.len(),
            bound_exceeded: e.bound_exceeded,
            max_gldim_linear: records.iter().filter_map(|r| r.gldim_linear).max(),
            max_gldim_bound: records.iter().filter_map(|r| r.gldim_bound).max(),
            exchange_edges: e.edges,
            records,
            failures,
            reproducer,
            verdict,
        }
    }
}

/// Runs the verifier on a hereditary gentle algebra.
pub fn verify_no_strictly_shod(p: &GentlePresentation, mode: Mode) -> Result<VerificationReport, SiltingError> {
    SiltingEngine::new(p)?.verify(mode)
}

/// The verifier with per-pair analysis spread over `jobs` worker threads,
/// each with its own caches. The report does not depend on `jobs`.
pub fn verify_with_jobs(p: &GentlePresentation, mode: Mode, jobs: usize) -> Result<VerificationReport, SiltingError> {
    let mut e = SiltingEngine::new(p)?;
    if jobs <= 1 {
        return e.verify(mode);
    }
    let en = e.enumerate(mode)?;
    let pairs: Vec<SupportTauTiltingPair> = en.sets.iter().map(|s| e.pair_of(s)).collect();
    let parts = std::thread::scope(|sc| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let pairs = &pairs;
                sc.spawn(move || -> Result<Vec<(ObjectRecord, Vec<Failure>)>, SiltingError> {
                    let mut e = SiltingEngine::new(p)?;
                    let mut out = Vec::new();
                    for k in (w..pairs.len()).step_by(jobs) {
                        let set = e.set_of(&pairs[k])?;
                        out.push(e.analyze(&set, k));
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker thread panicked")).collect::<Vec<_>>()
    });
    let mut results = Vec::new();
    for part in parts {
        results.extend(part?);
    }
    Ok(e.assemble(mode, en, results))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The exchange graph of a report: one node per pair, one edge per mutation.
pub fn exchange_graph_dot(r: &VerificationReport) -> String {
    let mut out = format!("graph \"{}\" {{\n", dot_escape(&r.algebra_id));
    for rec in &r.records {
        let gl = rec.gldim_linear.map_or("?".to_string(), |d| d.to_string());
        out.push_str(&format!("  n{} [label=\"{} (gl.dim {})\"];\n", rec.index, rec.index, gl));
    }
    for [a, b] in &r.exchange_edges {
        out.push_str(&format!("  n{a} -- n{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// A bound quiver in DOT, relations drawn as dashed edges between arrows.
pub fn quiver_dot(name: &str, j: &AlgebraJson) -> String {
    let mut out = format!("digraph \"{}\" {{\n", dot_escape(name));
    for v in &j.vertices {
        out.push_str(&format!("  \"{}\";\n", dot_escape(v)));
    }
    for a in &j.arrows {
        out.push_str(&format!("  \"{}\" -> \"{}\" [label=\"{}\"];\n", dot_escape(&a.source), dot_escape(&a.target), dot_escape(&a.id)));
    }
    for [a, b] in &j.relations {
        out.push_str(&format!("  // relation {} {}\n", dot_escape(a), dot_escape(b)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::BandData;
    use crate::fixtures::{kronecker, type_a, type_a_linear, type_a_orientations, type_a_tilde};

    fn a2() -> SiltingEngine {
        SiltingEngine::new(&type_a_linear(2)).unwrap()
    }

    fn pair(e: &SiltingEngine, modules: &[PermissibleCurve], projectives: &[usize]) -> SupportTauTiltingPair {
        let mut modules: Vec<PermissibleCurve> = modules.iter().map(|c| e.model.canonical(c)).collect();
        modules.sort();
        SupportTauTiltingPair { modules, projectives: projectives.to_vec() }
    }

    fn free(e: &SiltingEngine) -> SupportTauTiltingPair {
        let ps: Vec<PermissibleCurve> = (0..e.vertex_count()).map(|v| e.model.projective_curve(v)).collect();
        pair(e, &ps, &[])
    }

    #[test]
    fn enumeration_counts() {
        let mut e = SiltingEngine::new(&type_a_linear(1)).unwrap();
        assert_eq!(e.enumerate_stau_tilt(Mode::Exhaustive).unwrap().len(), 2);
        for (n, c) in [(2, 5), (3, 14), (4, 42)] {
            for w in type_a_orientations(n) {
                let mut e = SiltingEngine::new(&type_a(&w)).unwrap();
                assert_eq!(e.enumerate_stau_tilt(Mode::Exhaustive).unwrap().len(), c, "{w}");
            }
        }
    }

    #[test]
    fn exhaustive_rejected_for_tilde() {
        let mut e = SiltingEngine::new(&kronecker()).unwrap();
        assert!(matches!(e.enumerate(Mode::Exhaustive), Err(SiltingError::InfiniteEnumeration)));
    }

    #[test]
    fn tau_rigid_examples() {
        let e = a2();
        let alg = &e.alg;
        let a = [alg.projective(0), alg.projective(1)];
        assert!(is_tau_rigid_pair(alg, &a, &[]).unwrap());
        assert!(is_tau_rigid_pair(alg, &[alg.simple(0)], &[1]).unwrap());
        assert!(!is_tau_rigid_pair(alg, &[alg.simple(1)], &[1]).unwrap());
        let k = SiltingEngine::new(&kronecker()).unwrap();
        let band = &k.model.closed_curves_up_to(2)[0];
        let r = k.model.band_module(band, &BandData { eigenvalue: Q::int(1), size: 1 }).unwrap();
        assert!(!is_tau_rigid_pair(&k.alg, &[r], &[]).unwrap());
    }

    #[test]
    fn silting_of_simple_pair() {
        let mut e = a2();
        let p = pair(&e, &[e.model.simple_curve(0)], &[1]);
        let s = e.silting_of_pair(&p).unwrap();
        let expected = crate::embed::complex_from_json(
            &e.alg,
            &serde_json::from_str(r#"{"P1":["2"],"P0":["1"],"d":[[[{"path":["a1"],"coef":1}]]]}"#).unwrap(),
        )
        .unwrap();
        assert!(e.alg.complexes_isomorphic(&s.summands[0], &expected));
        assert_eq!(s.summands[1], TwoTermComplex::shifted_stalk(&e.alg, 1));
        assert!(is_2term_silting(&e.alg, &s));
        assert_eq!(e.h0_of_silting(&s).unwrap(), p);
    }

    #[test]
    fn trivial_bijections() {
        let mut e = a2();
        let a = free(&e);
        let s = e.silting_of_pair(&a).unwrap();
        assert!(s.summands.iter().all(|c| c.p1.is_empty() && c.p0.len() == 1));
        assert_eq!(e.h0_of_silting(&s).unwrap(), a);
        let shifted = pair(&e, &[], &[0, 1]);
        let s = e.silting_of_pair(&shifted).unwrap();
        assert!(s.summands.iter().all(|c| c.p0.is_empty()));
        assert_eq!(e.h0_of_silting(&s).unwrap(), shifted);
    }

    #[test]
    fn free_plus_shift_is_not_silting() {
        for p in [type_a_linear(2), type_a("lr"), kronecker()] {
            let alg = PathAlgebra::new(&p);
            let mut summands: Vec<TwoTermComplex> = (0..alg.vertex_count()).map(|v| TwoTermComplex::stalk(&alg, v)).collect();
            summands.extend((0..alg.vertex_count()).map(|v| TwoTermComplex::shifted_stalk(&alg, v)));
            let shift: Vec<TwoTermComplex> = summands.split_off(alg.vertex_count());
            let nonzero = summands.iter().any(|x| shift.iter().any(|y| alg.hom_complexes_dim(y, x, 1) != 0));
            assert!(nonzero);
            summands.extend(shift);
            assert!(!is_2term_silting(&alg, &TwoTermSiltingObject { summands }));
        }
    }

    #[test]
    fn mutation_examples() {
        let mut e = a2();
        let a = free(&e);
        let slot = a.summands().iter().position(|s| *s == Summand::Module(e.model.canonical(&e.model.projective_curve(1)))).unwrap();
        let m = e.mutate_pair(&a, slot, DEFAULT_STRING_BOUND).unwrap();
        assert_eq!(m, pair(&e, &[e.model.projective_curve(0), e.model.simple_curve(0)], &[]));
        let back = m.summands().iter().position(|s| *s == Summand::Module(e.model.canonical(&e.model.simple_curve(0)))).unwrap();
        assert_eq!(e.mutate_pair(&m, back, DEFAULT_STRING_BOUND).unwrap(), a);
    }

    #[test]
    fn kronecker_preprojective_walk() {
        let mut e = SiltingEngine::new(&kronecker()).unwrap();
        let mut seen = vec![free(&e)];
        let mut cur = seen[0].clone();
        for step in 0..5 {
            // exchange the summand of smaller dimension
            let slot = (0..2)
                .min_by_key(|&i| match &cur.summands()[i] {
                    Summand::Module(c) => c.crossing_count(),
                    Summand::Shifted(_) => 0,
                })
                .unwrap();
            let next = e.mutate_pair(&cur, slot, DEFAULT_STRING_BOUND).unwrap();
            assert!(!seen.contains(&next), "step {step}");
            assert!(next.projectives.is_empty());
            seen.push(next.clone());
            cur = next;
        }
    }

    #[test]
    fn triangulation_examples() {
        let mut e = a2();
        let a = free(&e);
        let t = e.triangulation_of_pair(&a).unwrap();
        assert_eq!(t.curves.len(), 2);
        assert_eq!(e.pair_of_triangulation(&t).unwrap(), a);
        let t = e.triangulation_of_pair(&pair(&e, &[], &[0, 1])).unwrap();
        assert_eq!(t.co_arcs, vec![0, 1]);
        let p = pair(&e, &[e.model.simple_curve(0)], &[1]);
        let t = e.triangulation_of_pair(&p).unwrap();
        assert_eq!(t.curves, vec![e.model.canonical(&e.model.simple_curve(0))]);
        assert_eq!(t.co_arcs, vec![1]);
    }

    #[test]
    fn rotation_of_shifted_projectives_is_the_dissection() {
        for p in [type_a("rl"), type_a("rrl"), type_a_tilde(2, 1), kronecker()] {
            let mut e = SiltingEngine::new(&p).unwrap();
            let n = e.vertex_count();
            let set = e.set_of(&pair(&e, &[], &(0..n).collect::<Vec<_>>())).unwrap();
            let rs = e.ffas_rotate(&set).unwrap();
            let s = &e.model.surface;
            for (x, pt) in s.points.iter().enumerate() {
                let orig: Vec<usize> = pt.fan.iter().map(|&h| h).collect();
                let rot: Vec<usize> = rs.surface.points[x].fan.iter().map(|&h| 2 * set[arc_of(h)] + h % 2).collect();
                assert_eq!(rot, orig);
            }
            let (_, h0) = e.endo_geometric(&rs).unwrap();
            assert!(h0.is_isomorphic(&p));
        }
    }

    #[test]
    fn endomorphism_examples() {
        let mut e = a2();
        let a = free(&e);
        let set = e.set_of(&a).unwrap();
        assert!(e.endo_algebraic(&set).unwrap().is_isomorphic(e.presentation()));
        let set = e.set_of(&pair(&e, &[e.model.simple_curve(0)], &[1])).unwrap();
        let b = e.endo_algebraic(&set).unwrap();
        assert!(b.is_isomorphic(&type_a_linear(2)));
        let set = e.set_of(&pair(&e, &[e.model.projective_curve(1)], &[0])).unwrap();
        let b = e.endo_algebraic(&set).unwrap();
        assert_eq!((b.vertex_count(), b.quiver().arrow_count()), (2, 0));
        let rs = e.ffas_rotate(&set).unwrap();
        let (_, h0) = e.endo_geometric(&rs).unwrap();
        assert!(h0.is_isomorphic(&b));
    }

    #[test]
    fn classification_examples() {
        let a2 = type_a_linear(2);
        let amb = a2.classify_hereditary_type().unwrap();
        assert_eq!(classify_silted(&a2, &amb).unwrap().form, 1);
        let kk = GentlePresentation::build(&["1", "2"], &[], &[]).unwrap();
        let c = classify_silted(&kk, &amb).unwrap();
        assert_eq!(c.form, 2);
        assert_eq!(c.components.iter().map(|x| x.vertices).collect::<Vec<_>>(), vec![1, 1]);
        let k = kronecker();
        let amb = k.classify_hereditary_type().unwrap();
        assert_eq!(classify_silted(&k, &amb).unwrap().form, 1);
        assert_eq!(classify_silted(&kk, &amb).unwrap().form, 3);
        let a3 = type_a_linear(3);
        assert!(matches!(classify_silted(&a3, &amb), Err(SiltingError::ClassificationViolation(_))));
    }

    #[test]
    fn verify_small_cases() {
        let r = verify_no_strictly_shod(&type_a_linear(2), Mode::Exhaustive).unwrap();
        assert_eq!((r.count, r.verdict), (5, Verdict::Pass));
        assert!(r.records.iter().all(|x| x.gldim_linear.unwrap() <= 1));
        assert_eq!(r.exchange_edges.len(), 5);
        for w in type_a_orientations(3) {
            let r = verify_no_strictly_shod(&type_a(&w), Mode::Exhaustive).unwrap();
            assert_eq!((r.count, r.verdict), (14, Verdict::Pass));
            assert!(r.records.iter().all(|x| x.max_total_edges <= 4));
        }
        let r = verify_no_strictly_shod(&type_a_linear(3), Mode::Exhaustive).unwrap();
        assert_eq!(r.max_gldim_linear, Some(2));
        let r = verify_no_strictly_shod(&kronecker(), Mode::depth(6)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.max_gldim_linear.unwrap() <= 2);
    }
}
