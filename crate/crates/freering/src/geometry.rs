//! Word metric, geodesics, Stallings-folding subgroup membership, the free
//! basis test, and bounded quasiconvexity/malnormality probes.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::words::{reduce, words_of_length, Word, WordError};

#[derive(Debug, Error, PartialEq, Clone)]
pub enum GeometryError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
}

/// Folded core graph of a finitely generated subgroup. Vertex 0 is the base;
/// edges are `(source, target, generator label)` with labels in `1..=rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreGraph {
    rank: u32,
    num_vertices: usize,
    /// `out[v][label-1]` and `inc[v][label-1]`: at most one edge per label
    /// per direction once folded.
    out: Vec<Vec<Option<usize>>>,
    inc: Vec<Vec<Option<usize>>>,
}

impl CoreGraph {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Edges as sorted `(source, target, label)` triples.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut e = Vec::new();
        for (v, row) in self.out.iter().enumerate() {
            for (l, tgt) in row.iter().enumerate() {
                if let Some(t) = tgt {
                    e.push((v, *t, l as u32 + 1));
                }
            }
        }
        e.sort();
        e
    }

    /// Follows a reduced word from the base; `Some(v)` is the endpoint.
    fn trace(&self, w: &Word) -> Option<usize> {
        let mut v = 0usize;
        for &l in w.letters() {
            let idx = (l.unsigned_abs() - 1) as usize;
            v = if l > 0 {
                self.out[v][idx]?
            } else {
                self.inc[v][idx]?
            };
        }
        Some(v)
    }

    /// `true` iff the reduced word traces a closed loop at the base.
    pub fn accepts(&self, w: &Word) -> bool {
        self.trace(w) == Some(0)
    }

    /// Is this the rose: one vertex with a loop for every generator?
    pub fn is_rose(&self) -> bool {
        self.num_vertices == 1
            && (0..self.rank as usize).all(|l| self.out[0][l] == Some(0))
    }
}

/// Wedges a loop per generator word at the base and folds to termination,
/// then trims non-base degree-1 vertices.
pub fn fold(rank: u32, generators: &[Word]) -> Result<CoreGraph, GeometryError> {
    for g in generators {
        if g.rank() != rank {
            return Err(GeometryError::RankMismatch(g.rank(), rank));
        }
    }
    // Build the wedge with explicit edge list, then fold by merging vertices.
    // parent[] provides union-find with path compression.
    let mut parent: Vec<usize> = vec![0];
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    for g in generators {
        let mut v = 0usize;
        let n = g.len();
        for (i, &l) in g.letters().iter().enumerate() {
            let next = if i + 1 == n {
                0
            } else {
                parent.push(parent.len());
                parent.len() - 1
            };
            if l > 0 {
                edges.push((v, next, l as u32));
            } else {
                edges.push((next, v, (-l) as u32));
            }
            v = next;
        }
    }

    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    // Fold: while two distinct edges share a source and label (or a target
    // and label), identify their endpoints.
    loop {
        let mut by_src: HashMap<(usize, u32), usize> = HashMap::new();
        let mut by_tgt: HashMap<(usize, u32), usize> = HashMap::new();
        let mut merged = false;
        for &(s, t, l) in &edges {
            let s = find(&mut parent, s);
            let t = find(&mut parent, t);
            if let Some(&other) = by_src.get(&(s, l)) {
                if other != t {
                    let (a, b) = (find(&mut parent, other), t);
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                        merged = true;
                        break;
                    }
                }
            } else {
                by_src.insert((s, l), t);
            }
            if let Some(&other) = by_tgt.get(&(t, l)) {
                if other != s {
                    let (a, b) = (find(&mut parent, other), s);
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                        merged = true;
                        break;
                    }
                }
            } else {
                by_tgt.insert((t, l), s);
            }
        }
        if !merged {
            break;
        }
    }

    // Collect folded vertices and edges.
    let mut dedup: HashSet<(usize, usize, u32)> = HashSet::new();
    for &(s, t, l) in &edges {
        let s = find(&mut parent, s);
        let t = find(&mut parent, t);
        dedup.insert((s, t, l));
    }
    let base = find(&mut parent, 0);

    // Trim non-base vertices of degree < 2 until stable.
    let mut alive: HashSet<usize> = HashSet::new();
    alive.insert(base);
    for &(s, t, _) in &dedup {
        alive.insert(s);
        alive.insert(t);
    }
    loop {
        let mut degree: HashMap<usize, usize> = HashMap::new();
        for &(s, t, _) in &dedup {
            if alive.contains(&s) && alive.contains(&t) {
                *degree.entry(s).or_insert(0) += 1;
                *degree.entry(t).or_insert(0) += 1;
            }
        }
        let dead: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&v| v != base && degree.get(&v).copied().unwrap_or(0) < 2)
            .collect();
        if dead.is_empty() {
            break;
        }
        for v in dead {
            alive.remove(&v);
        }
    }
    let final_edges: Vec<(usize, usize, u32)> = dedup
        .into_iter()
        .filter(|&(s, t, _)| alive.contains(&s) && alive.contains(&t))
        .collect();

    // Canonical renumbering by BFS from the base, labels in ascending order,
    // outgoing before incoming.
    let mut adj: HashMap<usize, Vec<(u32, bool, usize)>> = HashMap::new();
    for &(s, t, l) in &final_edges {
        adj.entry(s).or_default().push((l, true, t));
        adj.entry(t).or_default().push((l, false, s));
    }
    for v in adj.values_mut() {
        v.sort();
    }
    let mut number: HashMap<usize, usize> = HashMap::new();
    number.insert(base, 0);
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        if let Some(nbrs) = adj.get(&v) {
            for &(_, _, u) in nbrs {
                if !number.contains_key(&u) {
                    number.insert(u, number.len());
                    queue.push_back(u);
                }
            }
        }
    }
    let n = number.len();
    let mut out = vec![vec![None; rank as usize]; n];
    let mut inc = vec![vec![None; rank as usize]; n];
    for (s, t, l) in final_edges {
        let (s, t) = (number[&s], number[&t]);
        let idx = (l - 1) as usize;
        out[s][idx] = Some(t);
        inc[t][idx] = Some(s);
    }
    Ok(CoreGraph {
        rank,
        num_vertices: n,
        out,
        inc,
    })
}

/// Membership in the subgroup generated by `generators`.
pub fn member(h: &Word, generators: &[Word]) -> Result<bool, GeometryError> {
    let graph = fold(h.rank(), generators)?;
    Ok(graph.accepts(h))
}

/// Distance in the word metric: the length of `reduce(g^{-1} h)`.
pub fn word_metric(g: &Word, h: &Word) -> Result<usize, GeometryError> {
    if g.rank() != h.rank() {
        return Err(GeometryError::RankMismatch(g.rank(), h.rank()));
    }
    Ok(g.inv().mul(h)?.len())
}

/// The unique geodesic from `g` to `h` as a letter sequence.
pub fn geodesic(g: &Word, h: &Word) -> Result<Vec<i32>, GeometryError> {
    if g.rank() != h.rank() {
        return Err(GeometryError::RankMismatch(g.rank(), h.rank()));
    }
    Ok(g.inv().mul(h)?.letters().to_vec())
}

/// `true` iff the words are a free basis: right count and the folded graph
/// is the rose.
pub fn is_free_basis(rank: u32, generators: &[Word]) -> Result<bool, GeometryError> {
    if generators.len() != rank as usize {
        return Ok(false);
    }
    Ok(fold(rank, generators)?.is_rose())
}

/// Outcome of a bounded probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    Satisfied,
    ViolatedAt(Word),
    Inconclusive,
}

/// Cap on enumerated candidates inside the probes.
const PROBE_CAP: usize = 200_000;

/// Subgroup elements of word length at most `radius`: non-backtracking loops
/// at the base of the folded graph, in shortlex order.
fn subgroup_elements(graph: &CoreGraph, radius: usize) -> Vec<Word> {
    let rank = graph.rank();
    let mut out = Vec::new();
    // BFS over (vertex, word) states by length; the graph is folded, so
    // reduced words trace uniquely and loops are exactly the members.
    let mut frontier: Vec<(usize, Vec<i32>)> = vec![(0, Vec::new())];
    out.push(Word::identity(rank));
    for _ in 0..radius {
        let mut next = Vec::new();
        for (v, letters) in &frontier {
            for l in (1..=rank as i32).flat_map(|i| [i, -i]) {
                if letters.last() == Some(&-l) {
                    continue;
                }
                let idx = (l.unsigned_abs() - 1) as usize;
                let tgt = if l > 0 {
                    graph.out[*v][idx]
                } else {
                    graph.inc[*v][idx]
                };
                if let Some(t) = tgt {
                    let mut w = letters.clone();
                    w.push(l);
                    if t == 0 {
                        out.push(reduce(rank, &w).expect("valid letters"));
                    }
                    next.push((t, w));
                }
            }
        }
        frontier = next;
    }
    out.sort_by(|a, b| a.shortlex_cmp(b));
    out.dedup();
    out
}

/// Checks that every geodesic prefix of every subgroup element of length at
/// most `radius` stays within word distance `k` of the subgroup. A bounded
/// probe: `Satisfied` only certifies the inspected window.
pub fn quasiconvexity_probe(
    rank: u32,
    generators: &[Word],
    k: usize,
    radius: usize,
) -> Result<ProbeOutcome, GeometryError> {
    let graph = fold(rank, generators)?;
    let elements = subgroup_elements(&graph, radius);
    if elements.len() > PROBE_CAP {
        return Ok(ProbeOutcome::Inconclusive);
    }
    // Words within distance k of the subgroup: prefix * ball(k) member test.
    let ball_k: Vec<Word> = {
        let mut v = Vec::new();
        for len in 0..=k {
            v.extend(words_of_length(rank, len));
        }
        v
    };
    for h in &elements {
        for cut in 0..h.len() {
            let prefix = reduce(rank, &h.letters()[..cut]).expect("valid letters");
            let near = ball_k
                .iter()
                .any(|w| graph.accepts(&prefix.mul(w).expect("same rank")));
            if !near {
                return Ok(ProbeOutcome::ViolatedAt(h.clone()));
            }
        }
    }
    Ok(ProbeOutcome::Satisfied)
}

/// Looks for `g` outside the subgroup and nontrivial `h` inside with
/// `g h g^{-1}` inside, both within the radius. Bounded probe semantics.
pub fn malnormality_probe(
    rank: u32,
    generators: &[Word],
    radius: usize,
) -> Result<ProbeOutcome, GeometryError> {
    let graph = fold(rank, generators)?;
    let elements = subgroup_elements(&graph, radius);
    let mut candidates: Vec<Word> = Vec::new();
    for len in 0..=radius {
        candidates.extend(words_of_length(rank, len));
    }
    if candidates.len() * elements.len() > PROBE_CAP {
        return Ok(ProbeOutcome::Inconclusive);
    }
    candidates.sort_by(|a, b| a.shortlex_cmp(b));
    for g in &candidates {
        if graph.accepts(g) {
            continue;
        }
        for h in &elements {
            if h.is_identity() {
                continue;
            }
            let conj = g
                .mul(h)
                .and_then(|w| w.mul(&g.inv()))
                .expect("same rank");
            if graph.accepts(&conj) {
                return Ok(ProbeOutcome::ViolatedAt(g.clone()));
            }
        }
    }
    Ok(ProbeOutcome::Satisfied)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::ball;

    fn w(letters: &[i32]) -> Word {
        reduce(2, letters).unwrap()
    }

    #[test]
    fn metric_examples() {
        let e = Word::identity(2);
        assert_eq!(word_metric(&e, &w(&[1, 2, -1])).unwrap(), 3);
        let g = w(&[1, 2]);
        assert_eq!(word_metric(&g, &g).unwrap(), 0);
        assert_eq!(word_metric(&w(&[1]), &w(&[2])).unwrap(), 2);
    }

    #[test]
    fn metric_axioms_on_ball() {
        let b = ball(2, 2);
        for g in &b {
            for h in &b {
                let d = word_metric(g, h).unwrap();
                assert_eq!(d == 0, g == h);
                assert_eq!(d, word_metric(h, g).unwrap());
                for t in &b {
                    assert!(
                        word_metric(g, t).unwrap() <= d + word_metric(h, t).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn metric_left_invariance() {
        let b = ball(2, 2);
        for g in b.iter().take(8) {
            for h in b.iter().take(8) {
                for t in b.iter().take(8) {
                    assert_eq!(
                        word_metric(&t.mul(g).unwrap(), &t.mul(h).unwrap()).unwrap(),
                        word_metric(g, h).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn geodesic_composes() {
        let g = w(&[1, 2]);
        let h = w(&[2, -1]);
        let path = geodesic(&g, &h).unwrap();
        assert_eq!(path.len(), word_metric(&g, &h).unwrap());
        let step = reduce(2, &path).unwrap();
        assert_eq!(g.mul(&step).unwrap(), h);
    }

    #[test]
    fn member_examples() {
        assert!(member(&w(&[1, 1]), &[w(&[1, 1]), w(&[2])]).unwrap());
        assert!(!member(&w(&[1]), &[w(&[1, 1])]).unwrap());
    }

    #[test]
    fn member_agrees_with_product_enumeration() {
        // closure of products inside a padded ball, restricted afterwards
        let gens = [w(&[1, 1]), w(&[2, 1])];
        let graph = fold(2, &gens).unwrap();
        let mut closure: HashSet<Word> = HashSet::new();
        closure.insert(Word::identity(2));
        let pad = 5 + 2 * 2;
        loop {
            let mut grew = false;
            let items: Vec<Word> = closure.iter().cloned().collect();
            for x in items {
                for g in gens.iter().flat_map(|g| [g.clone(), g.inv()]) {
                    let y = x.mul(&g).unwrap();
                    if y.len() <= pad && closure.insert(y) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        for h in ball(2, 5) {
            assert_eq!(
                graph.accepts(&h),
                closure.contains(&h),
                "disagreement at {h:?}"
            );
        }
    }

    #[test]
    fn basis_examples() {
        assert!(is_free_basis(2, &[w(&[1]), w(&[2])]).unwrap());
        assert!(is_free_basis(2, &[w(&[1]), w(&[1, 2, -1])]).unwrap());
        assert!(!is_free_basis(2, &[w(&[1, 1]), w(&[2])]).unwrap());
        assert!(!is_free_basis(2, &[w(&[1, 2]), w(&[2, 1])]).unwrap());
        assert!(!is_free_basis(2, &[w(&[1])]).unwrap());
    }

    #[test]
    fn basis_invariant_under_permutation_and_inversion() {
        let y = [w(&[1]), w(&[1, 2, -1])];
        assert!(is_free_basis(2, &[y[1].clone(), y[0].clone()]).unwrap());
        assert!(is_free_basis(2, &[y[0].inv(), y[1].clone()]).unwrap());
        assert!(is_free_basis(2, &[y[1].inv(), y[0].inv()]).unwrap());
    }

    #[test]
    fn folding_produces_core_graph() {
        let gens = [w(&[1, 2, -1]), w(&[1, 1])];
        let graph = fold(2, &gens).unwrap();
        // every non-base vertex has degree >= 2
        let mut degree = vec![0usize; graph.num_vertices()];
        for (s, t, _) in graph.edges() {
            degree[s] += 1;
            degree[t] += 1;
        }
        for (v, d) in degree.iter().enumerate().skip(1) {
            assert!(*d >= 2, "vertex {v} has degree {d}");
        }
        // folded: the out/inc tables enforce this structurally
        assert!(graph.accepts(&w(&[1, 2, -1])));
        assert!(graph.accepts(&w(&[1, 1])));
        assert!(!graph.accepts(&w(&[2])));
    }

    #[test]
    fn quasiconvexity_examples() {
        assert_eq!(
            quasiconvexity_probe(2, &[w(&[1])], 0, 6).unwrap(),
            ProbeOutcome::Satisfied
        );
        match quasiconvexity_probe(2, &[w(&[1, 1, 2, 2])], 0, 8).unwrap() {
            ProbeOutcome::ViolatedAt(_) => {}
            other => panic!("expected violation, got {other:?}"),
        }
        assert_eq!(
            quasiconvexity_probe(2, &[w(&[1, 1, 2, 2])], 0, 0).unwrap(),
            ProbeOutcome::Satisfied
        );
    }

    #[test]
    fn malnormality_examples() {
        assert_eq!(
            malnormality_probe(2, &[w(&[1])], 4).unwrap(),
            ProbeOutcome::Satisfied
        );
        assert_eq!(
            malnormality_probe(2, &[w(&[1, 1])], 4).unwrap(),
            ProbeOutcome::ViolatedAt(w(&[1]))
        );
        assert_eq!(
            malnormality_probe(2, &[w(&[1]), w(&[2])], 3).unwrap(),
            ProbeOutcome::Satisfied
        );
    }

    #[test]
    fn member_invariant_under_nielsen_moves() {
        let y1 = [w(&[1, 1]), w(&[2, 1])];
        // Nielsen moves: swap, invert, multiply
        let y2 = [w(&[2, 1]), w(&[1, 1])];
        let y3 = [w(&[1, 1]).inv(), w(&[2, 1])];
        let y4 = [w(&[1, 1]), w(&[2, 1]).mul(&w(&[1, 1])).unwrap()];
        let g1 = fold(2, &y1).unwrap();
        for y in [y2, y3, y4] {
            let g = fold(2, &y).unwrap();
            for h in ball(2, 4) {
                assert_eq!(g1.accepts(&h), g.accepts(&h), "at {h:?}");
            }
        }
    }
}
