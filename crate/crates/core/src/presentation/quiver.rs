use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Build a quiver from vertex labels and `(label, source, target)` triples
    /// naming declared vertices.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        let mut seen = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (label, s, t) in arrows {
            if index.contains_key(&label) || seen.insert(label.clone(), ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate label {label}")));
            }
            let source = *index.get(&s).ok_or_else(|| Error::InvalidQuiver(format!("undeclared vertex {s}")))?;
            let target = *index.get(&t).ok_or_else(|| Error::InvalidQuiver(format!("undeclared vertex {t}")))?;
            out.push(Arrow { label, source, target });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub(crate) fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Self {
        Quiver { vertices, arrows }
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
    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Every arrow turned around; labels and indices are kept.
    pub fn reversed(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// Path from an arrow word written right-to-left, e.g. `["beta", "alpha"]`
    /// for `beta*alpha` (alpha acts first).
    pub fn path_from_written(&self, word: &[&str]) -> Result<Path> {
        let mut arrows = Vec::with_capacity(word.len());
        for w in word.iter().rev() {
            let a = self.arrow_index(w).ok_or_else(|| Error::InvalidRelation(format!("undeclared arrow {w}")))?;
            arrows.push(a);
        }
        Path::from_arrows(self, arrows)
    }
}

/// A path; `arrows` are listed in the order they act (first arrow first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidRelation("empty arrow word".into()));
        };
        for w in arrows.windows(2) {
            if q.arrow(w[0]).target != q.arrow(w[1]).source {
                return Err(Error::InvalidRelation(format!(
                    "{} then {} do not compose",
                    q.arrow(w[0]).label,
                    q.arrow(w[1]).label
                )));
            }
        }
        let last = *arrows.last().unwrap();
        Ok(Path { source: q.arrow(first).source, target: q.arrow(last).target, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`, if they compose.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(&next.arrows);
        Some(Path { source: self.source, target: next.target, arrows })
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }

    /// Written form with the last-acting arrow leftmost, `e_v` for trivial paths.
    pub fn written(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", q.vertices()[self.source]);
        }
        self.arrows.iter().rev().map(|&a| q.arrow(a).label.as_str()).collect::<Vec<_>>().join("*")
    }

    /// Canonical order: length, then lexicographic on written arrow labels;
    /// trivial paths by vertex.
    pub fn canonical_cmp(&self, other: &Path, q: &Quiver) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            if self.is_trivial() {
                return self.source.cmp(&other.source);
            }
            let a = self.arrows.iter().rev().map(|&i| q.arrow(i).label.as_str());
            let b = other.arrows.iter().rev().map(|&i| q.arrow(i).label.as_str());
            a.cmp(b)
        })
    }
}

/// All paths of length at most `max_len` in canonical order.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut level: Vec<Path> = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &level {
            for (ai, a) in q.arrows().iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|x, y| x.canonical_cmp(y, q));
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// A linear combination of parallel paths, read as the relation `Σ c·p = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationElem<F: Field> {
    terms: Vec<(F::Elem, Path)>,
}

impl<F: Field> RelationElem<F> {
    /// Merges repeated paths and drops zero coefficients. Fails when the terms
    /// are not parallel or nothing survives.
    pub fn new(field: &F, terms: Vec<(F::Elem, Path)>) -> Result<Self> {
        let mut merged: Vec<(F::Elem, Path)> = Vec::new();
        for (c, p) in terms {
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some(slot) => slot.0 = field.add(&slot.0, &c),
                None => merged.push((c, p)),
            }
        }
        merged.retain(|(c, _)| !field.is_zero(c));
        let Some((_, first)) = merged.first() else {
            return Err(Error::InvalidRelation("relation has no nonzero term".into()));
        };
        let (s, t) = (first.source, first.target);
        if merged.iter().any(|(_, p)| p.source != s || p.target != t) {
            return Err(Error::InvalidRelation("relation terms are not parallel".into()));
        }
        Ok(RelationElem { terms: merged })
    }

    pub fn terms(&self) -> &[(F::Elem, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn reversed(&self) -> Self {
        RelationElem { terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect() }
    }

    pub fn written(&self, field: &F, q: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(c, p)| {
                if field.is_one(c) {
                    p.written(q)
                } else {
                    format!("{}*{}", field.fmt_elem(c), p.written(q))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> Quiver {
        Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("alpha".into(), "1".into(), "2".into()), ("beta".into(), "2".into(), "1".into())],
        )
        .unwrap()
    }

    #[test]
    fn no_arrows_only_trivial_paths() {
        let q = Quiver::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        let ps = enumerate_paths(&q, 3);
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().all(Path::is_trivial));
    }

    #[test]
    fn two_cycle_paths_to_length_two() {
        let q = two_cycle();
        let ps: Vec<String> = enumerate_paths(&q, 2).iter().map(|p| p.written(&q)).collect();
        assert_eq!(ps, vec!["e1", "e2", "alpha", "beta", "alpha*beta", "beta*alpha"]);
    }

    #[test]
    fn three_cycle_paths_to_length_one() {
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("alpha".into(), "1".into(), "2".into()),
                ("beta".into(), "2".into(), "3".into()),
                ("gamma".into(), "3".into(), "1".into()),
            ],
        )
        .unwrap();
        assert_eq!(enumerate_paths(&q, 1).len(), 6);
    }

    #[test]
    fn written_word_composes_right_to_left() {
        let q = two_cycle();
        let p = q.path_from_written(&["beta", "alpha"]).unwrap();
        assert_eq!((p.source, p.target), (0, 0));
        assert_eq!(p.arrows, vec![0, 1]);
        assert!(q.path_from_written(&["alpha", "alpha"]).is_err());
    }

    #[test]
    fn duplicate_and_undeclared_rejected() {
        assert!(Quiver::new(vec!["1".into(), "1".into()], vec![]).is_err());
        assert!(Quiver::new(vec!["1".into()], vec![("a".into(), "1".into(), "9".into())]).is_err());
    }
}
