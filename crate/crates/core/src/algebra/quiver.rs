//! Quivers, relations, and the path basis of `kQ/I`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// A path; `vertex` is its source (the trivial path there when the word is empty). Words are written
/// left-to-right as composites, so `[a, b]` means "b, then a".
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub vertex: usize,
    pub word: Vec<usize>,
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidModule(format!("duplicate vertex name {v}")));
            }
        }
        for a in &arrows {
            if !seen.insert(a.name.clone()) {
                return Err(Error::InvalidModule(format!("duplicate name {}", a.name)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::UnknownName(format!("endpoint of arrow {}", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn source(&self, p: &Path) -> usize {
        p.word.last().map_or(p.vertex, |&a| self.arrows[a].source)
    }

    pub fn target(&self, p: &Path) -> usize {
        p.word.first().map_or(p.vertex, |&a| self.arrows[a].target)
    }

    /// The path for a nonempty word, if composable.
    pub fn word_path(&self, word: &[usize]) -> Option<Path> {
        for w in word.windows(2) {
            if self.arrows[w[0]].source != self.arrows[w[1]].target {
                return None;
            }
        }
        let vertex = self.arrows[*word.last()?].source;
        Some(Path { vertex, word: word.to_vec() })
    }

    /// `p·q` (q first), or `None` when the endpoints do not match.
    pub fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.source(p) != self.target(q) {
            return None;
        }
        let mut word = p.word.clone();
        word.extend_from_slice(&q.word);
        Some(Path { vertex: q.vertex, word })
    }

    pub fn label(&self, p: &Path) -> String {
        if p.word.is_empty() {
            format!("e{}", self.vertices[p.vertex])
        } else {
            p.word.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    /// All paths of length exactly `len`.
    fn paths_of_length(&self, len: usize, shorter: &[Path]) -> Vec<Path> {
        if len == 0 {
            return (0..self.vertices.len()).map(|v| Path { vertex: v, word: vec![] }).collect();
        }
        let mut out = vec![];
        for p in shorter.iter().filter(|p| p.word.len() == len - 1) {
            for (ai, a) in self.arrows.iter().enumerate() {
                if a.source == self.target(p) {
                    let mut word = vec![ai];
                    word.extend_from_slice(&p.word);
                    out.push(Path { vertex: self.source(p), word });
                }
            }
        }
        out
    }
}

/// The compiled path basis: basis paths, the truncation length `N` with `J^N ⊆ I`, and
/// normal forms of every path shorter than `N`.
#[derive(Clone, Debug)]
pub struct PathBasis {
    pub basis: Vec<Path>,
    pub nilpotency: usize,
    normal: HashMap<Path, Vec<(usize, Scalar)>>,
}

impl PathBasis {
    /// Normal form of a path over the basis; paths of length at least `N` vanish.
    pub fn normal_form(&self, p: &Path) -> Vec<(usize, Scalar)> {
        if p.word.len() >= self.nilpotency {
            return vec![];
        }
        self.normal.get(p).cloned().unwrap_or_default()
    }
}

/// Largest number of paths considered before giving up.
pub const PATH_LIMIT: usize = 20_000;

pub fn validate_relations(quiver: &Quiver, relations: &[Relation], field: &Field) -> Result<()> {
    for (ri, r) in relations.iter().enumerate() {
        let mut ends = None;
        let mut nonzero = false;
        for (c, word) in &r.terms {
            if word.len() < 2 {
                return Err(Error::Admissibility(format!("relation {} has a term of length {}", ri + 1, word.len())));
            }
            let p = quiver
                .word_path(word)
                .ok_or_else(|| Error::Admissibility(format!("relation {} contains a non-composable word", ri + 1)))?;
            let e = (quiver.source(&p), quiver.target(&p));
            if *ends.get_or_insert(e) != e {
                return Err(Error::Admissibility(format!("relation {} combines non-parallel paths", ri + 1)));
            }
            nonzero |= !field.is_zero(c);
        }
        if !nonzero {
            return Err(Error::Admissibility(format!("relation {} is zero", ri + 1)));
        }
    }
    Ok(())
}

/// Computes `kQ/(I + J^N)` for increasing `N` until the dimension stabilises, which certifies
/// `J^N ⊆ I + J^{N+1}` and hence (by nilpotency of `J` modulo `J^{N+1}`) `J^N ⊆ I`.
pub fn build_path_basis(field: &Field, quiver: &Quiver, relations: &[Relation], cap: usize) -> Result<PathBasis> {
    validate_relations(quiver, relations, field)?;
    let rel_paths: Vec<Vec<(Scalar, Path)>> = relations
        .iter()
        .map(|r| r.terms.iter().map(|(c, w)| (c.clone(), quiver.word_path(w).unwrap())).collect())
        .collect();
    let mut paths: Vec<Path> = quiver.paths_of_length(0, &[]);
    let mut len = 0;
    let mut previous: Option<PathBasis> = None;
    for n in 1..=cap + 1 {
        // paths of length < n
        while len + 1 < n {
            len += 1;
            let next = quiver.paths_of_length(len, &paths);
            paths.extend(next);
            if paths.len() > PATH_LIMIT {
                return Err(Error::NilpotencyCap { cap });
            }
        }
        let current = truncated_quotient(field, quiver, &rel_paths, &paths, n);
        if let Some(prev) = previous {
            if prev.basis.len() == current.basis.len() {
                return Ok(prev);
            }
        }
        if n == cap + 1 {
            break;
        }
        previous = Some(current);
    }
    Err(Error::NilpotencyCap { cap })
}

fn truncated_quotient(field: &Field, quiver: &Quiver, rels: &[Vec<(Scalar, Path)>], paths: &[Path], n: usize) -> PathBasis {
    // columns: longest paths first so that pivots (eliminated paths) are long
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by(|&i, &j| paths[j].word.len().cmp(&paths[i].word.len()).then(paths[i].cmp(&paths[j])));
    let col_of: HashMap<&Path, usize> = order.iter().enumerate().map(|(c, &i)| (&paths[i], c)).collect();
    let mut rows: Vec<Vec<Scalar>> = vec![];
    for rel in rels {
        let min_len = rel.iter().map(|(_, p)| p.word.len()).min().unwrap_or(0);
        let (s, t) = (quiver.source(&rel[0].1), quiver.target(&rel[0].1));
        for left in paths.iter().filter(|p| quiver.source(p) == t) {
            for right in paths.iter().filter(|q| quiver.target(q) == s) {
                if left.word.len() + right.word.len() + min_len >= n {
                    continue;
                }
                let mut row = vec![field.zero(); paths.len()];
                for (c, p) in rel {
                    let full = quiver.concat(left, &quiver.concat(p, right).unwrap()).unwrap();
                    if full.word.len() < n {
                        let col = col_of[&full];
                        row[col] = field.add(&row[col], c);
                    }
                }
                rows.push(row);
            }
        }
    }
    let ech = if rows.is_empty() {
        None
    } else {
        Some(Matrix::from_rows(field, rows).expect("rectangular rows").echelon())
    };
    let pivots: Vec<usize> = ech.as_ref().map_or(vec![], |e| e.pivots.clone());
    let mut basis_cols: Vec<usize> = (0..paths.len()).filter(|c| !pivots.contains(c)).collect();
    basis_cols.sort_by(|&a, &b| {
        let (p, q) = (&paths[order[a]], &paths[order[b]]);
        p.word.len().cmp(&q.word.len()).then(p.cmp(q))
    });
    let basis: Vec<Path> = basis_cols.iter().map(|&c| paths[order[c]].clone()).collect();
    let index_of_col: HashMap<usize, usize> = basis_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut normal = HashMap::new();
    for (i, &c) in basis_cols.iter().enumerate() {
        normal.insert(paths[order[c]].clone(), vec![(i, field.one())]);
    }
    if let Some(e) = ech {
        for (r, &pc) in e.pivots.iter().enumerate() {
            let mut nf = vec![];
            for (&c, &i) in &index_of_col {
                let v = e.rref.get(r, c);
                if !field.is_zero(v) {
                    nf.push((i, field.neg(v)));
                }
            }
            nf.sort_by_key(|t| t.0);
            normal.insert(paths[order[pc]].clone(), nf);
        }
    }
    PathBasis { basis, nilpotency: n, normal }
}
