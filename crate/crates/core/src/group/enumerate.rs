//! Coset enumeration over the trivial subgroup (HLT strategy with coincidence
//! processing), producing the multiplication table of a finite presentation.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::table::FiniteTable;
use crate::group::{Family, Group};

struct CosetTable {
    /// `rows[c][2i]` is `c·sᵢ`, `rows[c][2i+1]` is `c·sᵢ⁻¹`.
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    live: usize,
    cap: usize,
}

fn inv_col(x: usize) -> usize {
    x ^ 1
}

impl CosetTable {
    fn new(cols: usize, cap: usize) -> Self {
        CosetTable { rows: vec![vec![None; cols]], parent: vec![0], live: 1, cap }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize> {
        if self.live >= self.cap {
            return Err(Error::CapExceeded { cap: self.cap });
        }
        let d = self.rows.len();
        self.rows.push(vec![None; self.rows[0].len()]);
        self.parent.push(d);
        self.live += 1;
        self.rows[c][x] = Some(d);
        self.rows[d][inv_col(x)] = Some(c);
        Ok(d)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
            self.live -= 1;
            queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(g) = queue.pop_front() {
            for x in 0..self.rows[g].len() {
                let Some(d) = self.rows[g][x] else { continue };
                if self.rows[d][inv_col(x)] == Some(g) {
                    self.rows[d][inv_col(x)] = None;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if let Some(t) = self.rows[mu][x] {
                    self.merge(nu, t, &mut queue);
                } else if let Some(t) = self.rows[nu][inv_col(x)] {
                    self.merge(mu, t, &mut queue);
                } else {
                    self.rows[mu][x] = Some(nu);
                    self.rows[nu][inv_col(x)] = Some(mu);
                }
            }
        }
    }

    /// Scans `word` (as columns) from coset `c`, defining new cosets to
    /// complete the scan and recording deductions or coincidences.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<()> {
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        loop {
            while i <= j {
                match self.rows[f][word[i as usize]] {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                match self.rows[b][inv_col(word[j as usize])] {
                    Some(prev) => {
                        b = prev;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = word[i as usize];
                self.rows[f][x] = Some(b);
                self.rows[b][inv_col(x)] = Some(f);
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }
}

/// Enumerates the group of a presentation (or any group whose relators are
/// known) to a finite multiplication table, failing with `CapExceeded` once
/// more than `cap` live cosets are needed.
pub fn enumerate_finite(group: &Group, cap: usize) -> Result<Group> {
    if cap == 0 {
        return Err(Error::PreconditionFailed("enumeration cap must be at least 1".into()));
    }
    if let Family::FiniteTable(_) = group.family() {
        return Ok(group.clone());
    }
    let k = group.generator_count();
    let relators = group.relators();
    let rel_cols: Vec<Vec<usize>> = relators
        .iter()
        .map(|r| r.unit_letters().map(|(g, e)| 2 * g + usize::from(e < 0)).collect())
        .collect();
    let cols = 2 * k;
    let mut t = CosetTable::new(cols, cap);
    let mut c = 0usize;
    while c < t.rows.len() {
        if t.is_live(c) {
            for r in &rel_cols {
                if !t.is_live(c) {
                    break;
                }
                t.scan_and_fill(c, r)?;
            }
            for x in 0..cols {
                if !t.is_live(c) {
                    break;
                }
                if t.rows[c][x].is_none() {
                    t.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    // Compact the live cosets.
    let live: Vec<usize> = (0..t.rows.len()).filter(|&c| t.is_live(c)).collect();
    let mut index = vec![usize::MAX; t.rows.len()];
    for (i, &c) in live.iter().enumerate() {
        index[c] = i;
    }
    let n = live.len();
    let step: Vec<Vec<usize>> = live
        .iter()
        .map(|&c| (0..cols).map(|x| index[t.rep(t.rows[c][x].expect("complete table"))]).collect())
        .collect();
    // Spanning tree from coset 0: each coset is reached from `prev` along column `last`.
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut order = vec![0usize];
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut head = 0;
    while head < order.len() {
        let a = order[head];
        head += 1;
        for x in 0..cols {
            let b = step[a][x];
            if !reached[b] {
                reached[b] = true;
                prev[b] = Some((a, x));
                order.push(b);
            }
        }
    }
    debug_assert_eq!(order.len(), n);
    // mul[a][b] = a·(word of b), built along the spanning tree.
    let mut columns = vec![vec![0usize; n]; n];
    for &b in &order {
        match prev[b] {
            None => (0..n).for_each(|a| columns[b][a] = a),
            Some((p, x)) => (0..n).for_each(|a| columns[b][a] = step[columns[p][a]][x]),
        }
    }
    let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| columns[b][a]).collect()).collect();
    let generators: Vec<usize> = (0..k).map(|g| step[0][2 * g]).collect();
    let mut table = FiniteTable::trusted(mul, 0, generators, Some(relators))?;
    table.label_elements(group.names());
    Group::finite(table).with_names(group.names().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Word;
    use std::collections::{BTreeMap, BTreeSet};

    /// Independent oracle: breadth-first search over freely reduced words,
    /// identifying words by their action on a faithful permutation model.
    fn bfs_order(perms: &[Vec<usize>]) -> usize {
        let n = perms[0].len();
        let id: Vec<usize> = (0..n).collect();
        let mut seen = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for s in perms {
                let q: Vec<usize> = (0..n).map(|i| s[p[i]]).collect();
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        seen.len()
    }

    fn check_table(g: &Group) {
        let t = g.table().unwrap();
        for r in g.relators() {
            assert_eq!(t.evaluate(&r).unwrap(), t.identity());
        }
        let n = t.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn cyclic_of_order_three() {
        let p = Group::presentation(1, vec![Word::power_of(0, 3)]).unwrap();
        let g = enumerate_finite(&p, 10).unwrap();
        assert_eq!(g.order(), Some(3));
        assert_eq!(bfs_order(&[vec![1, 2, 0]]), 3);
        check_table(&g);
    }

    #[test]
    fn symmetric_group_of_order_six() {
        let ab = Word::from_letters([(0, 1), (1, 1)]);
        let p = Group::presentation(2, vec![Word::power_of(0, 2), Word::power_of(1, 2), ab.pow(3)]).unwrap();
        let g = enumerate_finite(&p, 10).unwrap();
        assert_eq!(g.order(), Some(6));
        assert_eq!(bfs_order(&[vec![1, 0, 2], vec![0, 2, 1]]), 6);
        check_table(&g);
        assert_eq!(g.is_abelian(), Some(false));
    }

    #[test]
    fn infinite_group_exceeds_cap() {
        let p = Group::presentation(1, vec![]).unwrap();
        assert_eq!(enumerate_finite(&p, 100), Err(Error::CapExceeded { cap: 100 }));
    }

    #[test]
    fn larger_presentations() {
        // Quaternion group ⟨i, j | i⁴, i²j⁻², j⁻¹iji⟩ of order 8.
        let i = Word::generator(0);
        let j = Word::generator(1);
        let rels = vec![i.pow(4), i.pow(2).mul(&j.pow(-2)), j.inverse().mul(&i).mul(&j).mul(&i)];
        let g = enumerate_finite(&Group::presentation(2, rels).unwrap(), 100).unwrap();
        assert_eq!(g.order(), Some(8));
        check_table(&g);
        // A₅ = ⟨a, b | a², b³, (ab)⁵⟩.
        let a = Word::generator(0);
        let b = Word::generator(1);
        let rels = vec![a.pow(2), b.pow(3), a.mul(&b).pow(5)];
        let g = enumerate_finite(&Group::presentation(2, rels).unwrap(), 5000).unwrap();
        assert_eq!(g.order(), Some(60));
        // Count elements by their order as a sanity check: A₅ has 15 involutions.
        let t = g.table().unwrap();
        let mut orders = BTreeMap::new();
        for x in 0..60 {
            let o = (1..=60).find(|&k| t.power(x, k) == t.identity()).unwrap();
            *orders.entry(o).or_insert(0) += 1;
        }
        assert_eq!(orders[&2], 15);
        assert_eq!(orders[&5], 24);
    }

    #[test]
    fn enumerated_heisenberg_quotient_is_rejected_by_cap() {
        let h = Group::heisenberg();
        assert!(matches!(enumerate_finite(&h, 50), Err(Error::CapExceeded { .. })));
    }
}
