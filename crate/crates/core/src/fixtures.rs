//! Standard hereditary gentle algebras: type A paths and type Ã cycles.

use crate::algebra::GentlePresentation;

/// `A_n` with orientation word over `{'r', 'l'}`: the edge between `i` and
/// `i+1` is `i -> i+1` for `'r'` and `i+1 -> i` for `'l'`. Vertices are
/// `1..=n` and arrows `a1, a2, ...`.
pub fn type_a(word: &str) -> GentlePresentation {
    let n = word.chars().count() + 1;
    let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = word
        .chars()
        .enumerate()
        .map(|(i, c)| {
            let (s, t) = if c == 'r' { (i, i + 1) } else { (i + 1, i) };
            (format!("a{}", i + 1), vs[s].clone(), vs[t].clone())
        })
        .collect();
    build(&vs, &arrows)
}

/// Linearly oriented `A_n`.
pub fn type_a_linear(n: usize) -> GentlePresentation {
    type_a(&"r".repeat(n - 1))
}

fn reflect(word: &str) -> String {
    word.chars().rev().map(|c| if c == 'r' { 'l' } else { 'r' }).collect()
}

/// All orientation words of `A_n`, one per reflection class.
pub fn type_a_orientations(n: usize) -> Vec<String> {
    let k = n.saturating_sub(1);
    (0..1usize << k)
        .map(|bits| (0..k).map(|i| if bits >> (k - 1 - i) & 1 == 0 { 'r' } else { 'l' }).collect::<String>())
        .filter(|w| *w <= reflect(w))
        .collect()
}

/// `Ã_{p,q}`: a cycle on `p + q` vertices with `p` arrows `i -> i+1` and `q`
/// arrows pointing back.
pub fn type_a_tilde(p: usize, q: usize) -> GentlePresentation {
    let n = p + q;
    let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let (s, t) = if i < p { (i, j) } else { (j, i) };
            (format!("a{}", i + 1), vs[s].clone(), vs[t].clone())
        })
        .collect();
    build(&vs, &arrows)
}

/// The Kronecker quiver `Ã_{1,1}`.
pub fn kronecker() -> GentlePresentation {
    type_a_tilde(1, 1)
}

/// The type Ã fixtures used throughout the tests.
pub const TILDE_FIXTURES: [(usize, usize); 4] = [(1, 1), (2, 1), (2, 2), (3, 1)];

fn build(vs: &[String], arrows: &[(String, String, String)]) -> GentlePresentation {
    let v: Vec<&str> = vs.iter().map(String::as_str).collect();
    let a: Vec<(&str, &str, &str)> = arrows.iter().map(|(x, y, z)| (x.as_str(), y.as_str(), z.as_str())).collect();
    GentlePresentation::build(&v, &a, &[]).expect("fixture is a valid presentation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::HereditaryType;

    #[test]
    fn orientation_counts() {
        assert_eq!(type_a_orientations(1).len(), 1);
        assert_eq!(type_a_orientations(3).len(), 3);
        assert_eq!(type_a_orientations(7).len(), 36);
    }

    #[test]
    fn tilde_types() {
        for (p, q) in TILDE_FIXTURES {
            match type_a_tilde(p, q).classify_hereditary_type().unwrap() {
                HereditaryType::TypeATilde { p: pp, q: qq, .. } => assert_eq!((pp, qq), (p, q)),
                other => panic!("{other:?}"),
            }
        }
    }
}
