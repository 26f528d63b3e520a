//! Finitely generated subgroups of F as folded (Stallings) core graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::algebra::Element;
use crate::words::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgroupError {
    #[error("word {0} is not in the subgroup")]
    NotMember(String),
}

/// A folded core graph with base vertex 0.
///
/// Vertices are numbered in breadth-first order from the base, exploring
/// letters as `a, a^-1, b, b^-1, ...`; the same traversal fixes the spanning
/// tree and therefore the free basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedGraph {
    out: Vec<BTreeMap<usize, usize>>,
    inc: Vec<BTreeMap<usize, usize>>,
    tree_path: Vec<Word>,
    basis: Vec<Word>,
    /// `(source, generator)` of each non-tree edge, to basis index
    edge_index: HashMap<(usize, usize), usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let next = self.0[y];
            self.0[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller root so the base stays at 0
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

/// Folds the bouquet of the given words into the core graph of the subgroup
/// they generate.
pub fn fold(generators: &[Word]) -> FoldedGraph {
    let mut vertex_count = 1;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for w in generators.iter().filter(|w| !w.is_identity()) {
        let mut cur = 0;
        for (i, l) in w.letters().iter().enumerate() {
            let next = if i + 1 == w.len() {
                0
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            if l.is_inverse() {
                edges.push((next, l.generator(), cur));
            } else {
                edges.push((cur, l.generator(), next));
            }
            cur = next;
        }
    }

    // Identify vertices until no vertex has two equally labelled edges
    // leaving or entering it.
    let mut uf = UnionFind((0..vertex_count).collect());
    loop {
        let mut merged = false;
        let mut out: HashMap<(usize, usize), usize> = HashMap::new();
        let mut inc: HashMap<(usize, usize), usize> = HashMap::new();
        for &(s, g, t) in &edges {
            let (s, t) = (uf.find(s), uf.find(t));
            if let Some(&t2) = out.get(&(s, g)) {
                merged |= uf.union(t, t2);
            } else {
                out.insert((s, g), t);
            }
            let (s, t) = (uf.find(s), uf.find(t));
            if let Some(&s2) = inc.get(&(t, g)) {
                merged |= uf.union(s, s2);
            } else {
                inc.insert((t, g), s);
            }
        }
        if !merged {
            break;
        }
    }
    let mut edge_set: BTreeSet<(usize, usize, usize)> =
        edges.iter().map(|&(s, g, t)| (uf.find(s), g, uf.find(t))).collect();

    // Prune hanging trees so every vertex other than the base has degree >= 2.
    loop {
        let mut degree: HashMap<usize, usize> = HashMap::new();
        for &(s, _, t) in &edge_set {
            *degree.entry(s).or_default() += 1;
            *degree.entry(t).or_default() += 1;
        }
        let leaves: BTreeSet<usize> =
            degree.iter().filter(|&(&v, &d)| v != 0 && d <= 1).map(|(&v, _)| v).collect();
        if leaves.is_empty() {
            break;
        }
        edge_set.retain(|(s, _, t)| !leaves.contains(s) && !leaves.contains(t));
    }

    FoldedGraph::from_edges(&edge_set)
}

impl FoldedGraph {
    fn from_edges(edges: &BTreeSet<(usize, usize, usize)>) -> FoldedGraph {
        let mut out: HashMap<usize, BTreeMap<usize, usize>> = HashMap::new();
        let mut inc: HashMap<usize, BTreeMap<usize, usize>> = HashMap::new();
        for &(s, g, t) in edges {
            out.entry(s).or_default().insert(g, t);
            inc.entry(t).or_default().insert(g, s);
        }
        let step = |v: usize, l: Letter| -> Option<usize> {
            let map = if l.is_inverse() { inc.get(&v) } else { out.get(&v) };
            map.and_then(|m| m.get(&l.generator()).copied())
        };
        let max_gen = edges.iter().map(|e| e.1).max().map_or(0, |g| g + 1);
        let letters: Vec<Letter> =
            (0..max_gen).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();

        // breadth-first renumbering and spanning tree
        let mut order: HashMap<usize, usize> = HashMap::new();
        let mut tree_path = vec![Word::identity()];
        let mut tree_edges: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        order.insert(0, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &l in &letters {
                let Some(t) = step(v, l) else { continue };
                if order.contains_key(&t) {
                    continue;
                }
                order.insert(t, order.len());
                tree_path.push(tree_path[order[&v]].mul(&Word::letter(l)));
                tree_edges.insert(if l.is_inverse() {
                    (t, l.generator(), v)
                } else {
                    (v, l.generator(), t)
                });
                queue.push_back(t);
            }
        }

        let n = order.len();
        let mut g = FoldedGraph {
            out: vec![BTreeMap::new(); n],
            inc: vec![BTreeMap::new(); n],
            tree_path,
            basis: Vec::new(),
            edge_index: HashMap::new(),
        };
        let mut cotree: Vec<(Word, usize, usize)> = Vec::new();
        for &(s, gen, t) in edges {
            let (s2, t2) = (order[&s], order[&t]);
            g.out[s2].insert(gen, t2);
            g.inc[t2].insert(gen, s2);
            if !tree_edges.contains(&(s, gen, t)) {
                let w = g.tree_path[s2].mul(&Word::generator(gen)).mul(&g.tree_path[t2].inverse());
                cotree.push((w, s2, gen));
            }
        }
        cotree.sort();
        for (i, (w, s, gen)) in cotree.into_iter().enumerate() {
            g.edge_index.insert((s, gen), i);
            g.basis.push(w);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(BTreeMap::len).sum()
    }

    /// Rank of the subgroup, `E - V + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Free basis read off the spanning tree, in shortlex order.
    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    /// Labelled edges `(source, generator, target)`.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (s, m) in self.out.iter().enumerate() {
            for (&g, &t) in m {
                out.push((s, g, t));
            }
        }
        out
    }

    fn step(&self, v: usize, l: Letter) -> Option<usize> {
        let map = if l.is_inverse() { &self.inc[v] } else { &self.out[v] };
        map.get(&l.generator()).copied()
    }

    pub fn contains(&self, w: &Word) -> bool {
        let mut v = 0;
        for &l in w.letters() {
            match self.step(v, l) {
                Some(t) => v = t,
                None => return false,
            }
        }
        v == 0
    }

    /// Expresses a member word in the free basis: generator `i` of the
    /// result stands for `basis()[i]`.
    pub fn rewrite(&self, w: &Word) -> Result<Word, SubgroupError> {
        let mut v = 0;
        let mut letters = Vec::new();
        for &l in w.letters() {
            let t = self.step(v, l).ok_or_else(|| SubgroupError::NotMember(w.to_string()))?;
            let key = if l.is_inverse() { (t, l.generator()) } else { (v, l.generator()) };
            if let Some(&i) = self.edge_index.get(&key) {
                letters.push(Letter::new(i, l.is_inverse()));
            }
            v = t;
        }
        if v != 0 {
            return Err(SubgroupError::NotMember(w.to_string()));
        }
        Ok(Word::from_letters(letters))
    }

    /// Substitutes basis words for the generators of a rewritten word.
    pub fn expand(&self, w: &Word) -> Word {
        w.letters().iter().fold(Word::identity(), |acc, l| {
            let b = &self.basis[l.generator()];
            acc.mul(&if l.is_inverse() { b.inverse() } else { b.clone() })
        })
    }

    pub fn rewrite_element(&self, u: &Element) -> Result<Element, SubgroupError> {
        let mut out = Element::zero();
        for (w, c) in u.terms() {
            out.add_term(self.rewrite(w)?, c.clone());
        }
        Ok(out)
    }

    pub fn expand_element(&self, u: &Element) -> Element {
        u.map_words(|w| self.expand(w))
    }
}

/// Basis and rewriting map of a folded graph.
pub fn basis_and_rewrite(g: &FoldedGraph) -> (Vec<Word>, impl Fn(&Word) -> Result<Word, SubgroupError> + '_) {
    (g.basis().to_vec(), move |w: &Word| g.rewrite(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s, 3).unwrap()
    }

    #[test]
    fn fold_examples() {
        let g = fold(&[w("ab"), w("ba")]);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.basis(), &[w("ab"), w("ba")]);
        let g = fold(&[w("a^2"), w("a^3")]);
        assert_eq!(g.rank(), 1);
        assert_eq!(g.basis(), &[w("a")]);
        let g = fold(&[]);
        assert_eq!(g.rank(), 0);
        assert!(g.basis().is_empty());
        assert_eq!(g.vertex_count(), 1);
    }

    #[test]
    fn membership() {
        let g = fold(&[w("a^2"), w("b")]);
        assert!(g.contains(&w("a^2b")));
        assert!(!g.contains(&w("a")));
        assert!(g.contains(&Word::identity()));
        assert!(fold(&[]).contains(&Word::identity()));
    }

    #[test]
    fn rewriting() {
        let g = fold(&[w("ab"), w("ba")]);
        let (basis, rewrite) = basis_and_rewrite(&g);
        assert_eq!(basis, vec![w("ab"), w("ba")]);
        assert_eq!(rewrite(&w("abab")).unwrap(), w("a^2"));
        assert_eq!(rewrite(&w("abBA")).unwrap(), Word::identity());
        let g = fold(&[w("a^2"), w("a^3")]);
        assert_eq!(g.rewrite(&w("a^2")).unwrap(), w("a^2"));
        assert!(matches!(g.rewrite(&w("b")), Err(SubgroupError::NotMember(_))));
        let g = fold(&[w("aba^-1"), w("b^2c")]);
        let x = w("aba^-1b^2cab^-1a^-1");
        assert!(g.contains(&x));
        assert_eq!(g.expand(&g.rewrite(&x).unwrap()), x);
    }

    #[test]
    fn hanging_trees_are_pruned() {
        // a b a^-1 folds to a loop b at a vertex reached by a
        let g = fold(&[w("aba^-1")]);
        assert_eq!(g.rank(), 1);
        assert_eq!(g.vertex_count(), 2);
        assert!(g.contains(&w("ab^3a^-1")));
        assert!(!g.contains(&w("b")));
    }
}
