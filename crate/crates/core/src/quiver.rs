//! Finite quivers and paths. Paths compose left to right.

use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("duplicate {kind} label `{label}`")]
    DuplicateLabel { kind: &'static str, label: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows `{0}` and `{1}` do not compose")]
    NotComposable(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vindex: HashMap<String, usize>,
    aindex: HashMap<String, usize>,
}

/// A path given by arrow indices; trivial when `arrows` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: vec![] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation `self` then `other`, if the endpoints match.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    /// Ordering key used everywhere a deterministic path order is needed:
    /// length first, then arrow indices lexicographically, then endpoints.
    pub fn order_key(&self) -> (usize, &[usize], usize) {
        (self.arrows.len(), &self.arrows, self.source)
    }
}

impl Quiver {
    pub fn build<V, A>(vertices: V, arrows: A) -> Result<Quiver, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateLabel { kind: "vertex", label: v.clone() });
            }
        }
        let mut out = Vec::new();
        let mut aindex = HashMap::new();
        for (label, s, t) in arrows {
            let find = |v: &String| {
                vindex.get(v).copied().ok_or_else(|| QuiverError::DanglingEndpoint {
                    arrow: label.clone(),
                    vertex: v.clone(),
                })
            };
            let (source, target) = (find(&s)?, find(&t)?);
            if aindex.insert(label.clone(), out.len()).is_some() {
                return Err(QuiverError::DuplicateLabel { kind: "arrow", label });
            }
            out.push(Arrow { label, source, target });
        }
        Ok(Quiver { vertices, arrows: out, vindex, aindex })
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver, QuiverError> {
        Quiver::build(
            vertices.iter().copied(),
            arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
        )
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

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize, QuiverError> {
        self.vindex.get(label).copied().ok_or_else(|| QuiverError::UnknownVertex(label.into()))
    }

    pub fn arrow_index(&self, label: &str) -> Result<usize, QuiverError> {
        self.aindex.get(label).copied().ok_or_else(|| QuiverError::UnknownArrow(label.into()))
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }

    /// Same vertices, every arrow reversed, labels kept.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows, vindex: self.vindex.clone(), aindex: self.aindex.clone() }
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let ar = &self.arrows[a];
        Path { source: ar.source, target: ar.target, arrows: vec![a] }
    }

    /// Path from a sequence of arrow labels, checking composability.
    pub fn path_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Path, QuiverError> {
        let mut idx = Vec::with_capacity(labels.len());
        for l in labels {
            idx.push(self.arrow_index(l.as_ref())?);
        }
        self.path_from_indices(&idx)
    }

    pub fn path_from_indices(&self, idx: &[usize]) -> Result<Path, QuiverError> {
        assert!(!idx.is_empty());
        for w in idx.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(QuiverError::NotComposable(
                    self.arrows[w[0]].label.clone(),
                    self.arrows[w[1]].label.clone(),
                ));
            }
        }
        Ok(Path {
            source: self.arrows[idx[0]].source,
            target: self.arrows[*idx.last().unwrap()].target,
            arrows: idx.to_vec(),
        })
    }

    /// All paths of length < `l`: trivial paths first, then by length, then
    /// lexicographically by arrow order.
    pub fn paths_up_to(&self, l: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        if l <= 1 {
            return out;
        }
        let mut layer: Vec<Path> = (0..self.arrows.len()).map(|a| self.arrow_path(a)).collect();
        for _ in 1..l {
            if layer.is_empty() {
                break;
            }
            out.extend(layer.iter().cloned());
            let mut next = Vec::new();
            for p in &layer {
                for a in self.out_arrows(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path { source: p.source, target: self.arrows[a].target, arrows });
                }
            }
            layer = next;
        }
        out
    }

    pub fn path_display(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices {}; arrows ", self.vertices.join(" "))?;
        let parts: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}:{}->{}", a.label, self.vertices[a.source], self.vertices[a.target]))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::from_strs(&["1", "2"], &[("a", "1", "2")]).unwrap()
    }

    fn loop_q() -> Quiver {
        Quiver::from_strs(&["v"], &[("x", "v", "v")]).unwrap()
    }

    #[test]
    fn build_and_errors() {
        assert_eq!(a2().arrow_count(), 1);
        assert_eq!(loop_q().arrow(0).source, loop_q().arrow(0).target);
        let err = Quiver::from_strs(&["1", "2"], &[("a", "1", "3")]).unwrap_err();
        assert!(matches!(err, QuiverError::DanglingEndpoint { .. }));
        let dup = Quiver::from_strs(&["1", "1"], &[]).unwrap_err();
        assert!(matches!(dup, QuiverError::DuplicateLabel { .. }));
    }

    #[test]
    fn opposite_is_involution() {
        let q = a2();
        let op = q.opposite();
        assert_eq!(op.arrow(0).source, 1);
        assert_eq!(op.opposite(), q);
        assert_eq!(loop_q().opposite(), loop_q());
    }

    #[test]
    fn paths_enumeration() {
        let show = |q: &Quiver, l| -> Vec<String> { q.paths_up_to(l).iter().map(|p| q.path_display(p)).collect() };
        assert_eq!(show(&a2(), 2), ["e_1", "e_2", "a"]);
        assert_eq!(show(&a2(), 1), ["e_1", "e_2"]);
        assert_eq!(show(&loop_q(), 3), ["e_v", "x", "x*x"]);
        assert_eq!(a2().paths_up_to(10).len(), 3);
    }

    #[test]
    fn composition_checked() {
        let q = Quiver::from_strs(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        assert!(q.path_from_labels(&["a", "b"]).is_ok());
        assert!(matches!(q.path_from_labels(&["b", "a"]), Err(QuiverError::NotComposable(..))));
    }
}
