//! Canonical forms of gentle presentations by individualisation-refinement.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::GentlePresentation;

/// Id-free encoding of a presentation. Equal iff the presentations are
/// isomorphic as graded bound quivers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub vertices: usize,
    /// (source, target, grade), sorted
    pub arrows: Vec<(usize, usize, i64)>,
    /// pairs of positions into `arrows`, sorted
    pub relations: Vec<(usize, usize)>,
}

type Signature = (usize, Vec<(usize, i64, bool, bool)>, Vec<(usize, i64, bool, bool)>);

fn refine(p: &GentlePresentation, colors: &mut Vec<usize>) {
    let q = p.quiver();
    let n = q.vertex_count();
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|v| {
                let mut out: Vec<_> = q
                    .outgoing(v)
                    .map(|a| {
                        let has_rel_after = p.relations().iter().any(|&(x, _)| x == a);
                        let has_rel_before = p.relations().iter().any(|&(_, y)| y == a);
                        (colors[q.arrow(a).target], p.grade(a), has_rel_after, has_rel_before)
                    })
                    .collect();
                out.sort();
                let mut inc: Vec<_> = q
                    .incoming(v)
                    .map(|a| {
                        let has_rel_after = p.relations().iter().any(|&(x, _)| x == a);
                        let has_rel_before = p.relations().iter().any(|&(_, y)| y == a);
                        (colors[q.arrow(a).source], p.grade(a), has_rel_after, has_rel_before)
                    })
                    .collect();
                inc.sort();
                (colors[v], out, inc)
            })
            .collect();
        let mut distinct: Vec<&Signature> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let rank: BTreeMap<&Signature, usize> = distinct.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let new: Vec<usize> = sigs.iter().map(|s| rank[s]).collect();
        let old_classes = {
            let mut c = colors.clone();
            c.sort();
            c.dedup();
            c.len()
        };
        let stable = distinct.len() == old_classes;
        *colors = new;
        if stable {
            return;
        }
    }
}

fn encode(p: &GentlePresentation, order: &[usize]) -> CanonicalForm {
    let q = p.quiver();
    let m = q.arrow_count();
    let mut keyed: Vec<((usize, usize, i64), usize)> = (0..m)
        .map(|a| ((order[q.arrow(a).source], order[q.arrow(a).target], p.grade(a)), a))
        .collect();
    keyed.sort();
    // parallel arrows with identical keys may be permuted freely
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < keyed.len() {
        let mut j = i + 1;
        while j < keyed.len() && keyed[j].0 == keyed[i].0 {
            j += 1;
        }
        if j - i > 1 {
            groups.push((i, j));
        }
        i = j;
    }
    let arrows: Vec<(usize, usize, i64)> = keyed.iter().map(|k| k.0).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut perm: Vec<usize> = keyed.iter().map(|k| k.1).collect();
    permute_groups(&groups, 0, &mut perm, &mut |perm| {
        let mut pos = vec![0usize; m];
        for (i, &a) in perm.iter().enumerate() {
            pos[a] = i;
        }
        let mut rels: Vec<(usize, usize)> = p.relations().iter().map(|&(a, b)| (pos[a], pos[b])).collect();
        rels.sort();
        if best.as_ref().map_or(true, |b| rels < *b) {
            best = Some(rels);
        }
    });
    CanonicalForm { vertices: q.vertex_count(), arrows, relations: best.unwrap_or_default() }
}

fn permute_groups(groups: &[(usize, usize)], k: usize, perm: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if k == groups.len() {
        visit(perm);
        return;
    }
    let (lo, hi) = groups[k];
    heap_permutations(perm, lo, hi, hi - lo, &mut |perm| permute_groups(groups, k + 1, perm, visit));
}

fn heap_permutations(v: &mut Vec<usize>, lo: usize, hi: usize, k: usize, visit: &mut dyn FnMut(&mut Vec<usize>)) {
    if k <= 1 {
        visit(v);
        return;
    }
    for i in 0..k {
        heap_permutations(v, lo, hi, k - 1, visit);
        if k % 2 == 0 {
            v.swap(lo + i, lo + k - 1);
        } else {
            v.swap(lo, lo + k - 1);
        }
    }
}

fn search(p: &GentlePresentation, colors: Vec<usize>, best: &mut Option<CanonicalForm>) {
    let n = colors.len();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &colors {
        *counts.entry(c).or_default() += 1;
    }
    let Some((&target, _)) = counts.iter().find(|(_, &k)| k > 1) else {
        let form = encode(p, &colors);
        if best.as_ref().map_or(true, |b| form < *b) {
            *best = Some(form);
        }
        return;
    };
    for v in 0..n {
        if colors[v] != target {
            continue;
        }
        // individualise v: it becomes the first element of its class
        let mut c: Vec<usize> = colors.iter().map(|&x| 2 * x + 1).collect();
        c[v] = 2 * target;
        refine(p, &mut c);
        search(p, c, best);
    }
}

pub fn canonical_form(p: &GentlePresentation) -> CanonicalForm {
    let mut colors = vec![0; p.vertex_count()];
    refine(p, &mut colors);
    let mut best = None;
    search(p, colors, &mut best);
    best.unwrap_or(CanonicalForm { vertices: 0, arrows: vec![], relations: vec![] })
}
