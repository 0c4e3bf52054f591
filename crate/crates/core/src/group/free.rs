//! Stallings graphs of finitely generated subgroups of free groups.
//!
//! Every edge carries a weight: a word in the subgroup generators `y₁, …, y_m`.
//! Folding keeps the invariant that the weight of any closed path at the base
//! vertex, evaluated at `yⱼ ↦ hⱼ`, equals the word the path reads. Reading a
//! word along the folded graph therefore decides membership and rewrites
//! members in the subgroup generators.

use std::collections::VecDeque;

use crate::group::word::Word;

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub generator: usize,
    pub weight: Word,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StallingsGraph {
    rank: usize,
    subgroup_generators: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
}

/// The base vertex.
pub const BASE: usize = 0;

impl StallingsGraph {
    /// Folded graph of `⟨generators⟩ ≤ F(rank)`.
    pub fn build(rank: usize, generators: &[Word]) -> Self {
        let mut vertex_count = 1;
        let mut edges: Vec<Edge> = Vec::new();
        for (j, h) in generators.iter().enumerate() {
            let steps: Vec<(usize, i64)> = h.unit_letters().collect();
            let mut cur = BASE;
            for (i, &(g, e)) in steps.iter().enumerate() {
                let last = i + 1 == steps.len();
                let next = if last {
                    BASE
                } else {
                    vertex_count += 1;
                    vertex_count - 1
                };
                let weight = if last { Word::generator(j) } else { Word::identity() };
                if e > 0 {
                    edges.push(Edge { from: cur, to: next, generator: g, weight });
                } else {
                    edges.push(Edge { from: next, to: cur, generator: g, weight: weight.inverse() });
                }
                cur = next;
            }
        }
        let mut graph = StallingsGraph { rank, subgroup_generators: generators.len(), vertex_count, edges };
        graph.fold();
        graph.compact();
        graph
    }

    fn repotential(&mut self, v: usize, q: &Word) {
        for e in &mut self.edges {
            if e.to == v {
                e.weight = e.weight.mul(q);
            }
            if e.from == v {
                e.weight = q.inverse().mul(&e.weight);
            }
        }
    }

    fn merge_into(&mut self, keep: usize, gone: usize) {
        for e in &mut self.edges {
            if e.from == gone {
                e.from = keep;
            }
            if e.to == gone {
                e.to = keep;
            }
        }
    }

    fn find_fold(&self) -> Option<(usize, usize, bool)> {
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                let (a, b) = (&self.edges[i], &self.edges[j]);
                if a.generator != b.generator {
                    continue;
                }
                if a.from == b.from {
                    return Some((i, j, true));
                }
                if a.to == b.to {
                    return Some((i, j, false));
                }
            }
        }
        None
    }

    fn fold(&mut self) {
        while let Some((i, j, outgoing)) = self.find_fold() {
            let (w1, w2) = (self.edges[i].weight.clone(), self.edges[j].weight.clone());
            let (v1, v2) = if outgoing { (self.edges[i].to, self.edges[j].to) } else { (self.edges[i].from, self.edges[j].from) };
            if v1 != v2 {
                // Re-potential one far endpoint so that both weights agree, then identify.
                let (keep, gone) = if v2 != BASE { (v1, v2) } else { (v2, v1) };
                let q = match (outgoing, gone == v2) {
                    (true, true) => w2.inverse().mul(&w1),
                    (true, false) => w1.inverse().mul(&w2),
                    (false, true) => w2.mul(&w1.inverse()),
                    (false, false) => w1.mul(&w2.inverse()),
                };
                self.repotential(gone, &q);
                self.merge_into(keep, gone);
            }
            self.edges.remove(j);
        }
    }

    fn compact(&mut self) {
        let mut used = vec![false; self.vertex_count];
        used[BASE] = true;
        for e in &self.edges {
            used[e.from] = true;
            used[e.to] = true;
        }
        let mut index = vec![usize::MAX; self.vertex_count];
        let mut n = 0;
        for v in 0..self.vertex_count {
            if used[v] {
                index[v] = n;
                n += 1;
            }
        }
        for e in &mut self.edges {
            e.from = index[e.from];
            e.to = index[e.to];
        }
        self.vertex_count = n;
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Rank of the subgroup as a free group: `E − V + 1`.
    pub fn subgroup_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    /// The given generators form a free basis of the subgroup they generate.
    pub fn generators_are_free_basis(&self) -> bool {
        self.subgroup_rank() == self.subgroup_generators
    }

    /// Every vertex has an outgoing and an incoming edge for each letter, i.e.
    /// the subgroup has finite index equal to the vertex count.
    pub fn is_complete(&self) -> bool {
        let mut out = vec![vec![false; self.rank]; self.vertex_count];
        let mut inc = vec![vec![false; self.rank]; self.vertex_count];
        for e in &self.edges {
            out[e.from][e.generator] = true;
            inc[e.to][e.generator] = true;
        }
        out.iter().chain(&inc).all(|row| row.iter().all(|&b| b))
    }

    pub fn index(&self) -> Option<usize> {
        self.is_complete().then_some(self.vertex_count)
    }

    /// One step from `v` along `(generator, ±1)`: target vertex and path weight.
    pub fn step(&self, v: usize, generator: usize, sign: i64) -> Option<(usize, &Word, bool)> {
        self.edges.iter().find_map(|e| {
            if e.generator != generator {
                return None;
            }
            if sign > 0 && e.from == v {
                Some((e.to, &e.weight, false))
            } else if sign < 0 && e.to == v {
                Some((e.from, &e.weight, true))
            } else {
                None
            }
        })
    }

    /// Reads `w` from vertex `v`; returns the end vertex and the accumulated
    /// weight, or `None` if the path leaves the graph.
    pub fn read(&self, v: usize, w: &Word) -> Option<(usize, Word)> {
        let mut cur = v;
        let mut weight = Word::identity();
        for (g, e) in w.unit_letters() {
            let (next, wt, inverted) = self.step(cur, g, e)?;
            weight = weight.mul(&if inverted { wt.inverse() } else { wt.clone() });
            cur = next;
        }
        Some((cur, weight))
    }

    /// Membership test with rewriting: `Some(u)` with `u` a word in the
    /// subgroup generators representing `w`, or `None` if `w` is not a member.
    pub fn rewrite(&self, w: &Word) -> Option<Word> {
        match self.read(BASE, w) {
            Some((BASE, weight)) => Some(weight),
            _ => None,
        }
    }

    /// Word read along a breadth-first spanning tree from the base to each vertex.
    pub fn tree_words(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.vertex_count];
        words[BASE] = Some(Word::identity());
        let mut queue = VecDeque::from([BASE]);
        while let Some(v) = queue.pop_front() {
            for g in 0..self.rank {
                for sign in [1, -1] {
                    if let Some((t, _, _)) = self.step(v, g, sign) {
                        if words[t].is_none() {
                            words[t] = Some(words[v].clone().expect("visited").mul(&Word::power_of(g, sign)));
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
        words.into_iter().map(|w| w.expect("folded graph is connected")).collect()
    }
}
