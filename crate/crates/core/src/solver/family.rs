//! Largest sets of pairwise crossing edges.

use std::collections::BTreeMap;

use crate::edgeorder::dist;
use crate::wheelgeom::{combinatorial_cross, EdgeId, WheelModel};

const DEFAULT_BUDGET: u64 = 2_000_000;

struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn has(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                (x != 0).then(|| {
                    let b = x.trailing_zeros() as usize;
                    x &= x - 1;
                    w * 64 + b
                })
            })
        })
    }
}

pub fn is_crossing_family(model: &WheelModel, edges: &[EdgeId]) -> bool {
    edges
        .iter()
        .enumerate()
        .all(|(i, &e)| edges[i + 1..].iter().all(|&f| combinatorial_cross(model, e, f)))
}

/// A maximum crossing family; see [`max_crossing_family_with_budget`].
pub fn max_crossing_family(model: &WheelModel) -> Vec<EdgeId> {
    max_crossing_family_with_budget(model, DEFAULT_BUDGET).0
}

/// Branch and bound for a maximum clique of the crossing graph. Returns the
/// best family found and whether the search finished within `budget` nodes.
/// The result is sorted by edge.
pub fn max_crossing_family_with_budget(model: &WheelModel, budget: u64) -> (Vec<EdgeId>, bool) {
    let edges: Vec<EdgeId> = model.edges().collect();
    let n = edges.len();
    let mut adj: Vec<Bits> = (0..n).map(|_| Bits::empty(n)).collect();
    let mut any = Bits::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if combinatorial_cross(model, edges[i], edges[j]) {
                adj[i].set(j);
                adj[j].set(i);
            }
        }
        any.set(i);
    }
    let mut clique = Clique { adj: &adj, best: seed(model, &edges), nodes: 0, budget };
    if clique.best.is_empty() {
        clique.best.push(0);
    }
    let complete = clique.expand(&mut Vec::new(), any);
    let mut out: Vec<EdgeId> = clique.best.iter().map(|&i| edges[i]).collect();
    out.sort();
    (out, complete)
}

/// Same-distance edges between two groups, kept greedily while they cross.
fn seed(model: &WheelModel, edges: &[EdgeId]) -> Vec<usize> {
    let mut buckets: BTreeMap<(usize, usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        if let Ok(d) = dist(model, e) {
            let (ga, gb) = (model.group_of(e.a), model.group_of(e.b));
            buckets.entry((ga.min(gb), ga.max(gb), d)).or_default().push(i);
        }
    }
    let mut best = Vec::new();
    for cands in buckets.values() {
        let mut fam: Vec<usize> = Vec::new();
        for &i in cands {
            if fam.iter().all(|&j| combinatorial_cross(model, edges[i], edges[j])) {
                fam.push(i);
            }
        }
        if fam.len() > best.len() {
            best = fam;
        }
    }
    best
}

struct Clique<'a> {
    adj: &'a [Bits],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Clique<'_> {
    /// Greedy coloring of `cand`: vertices in color order with their color numbers.
    fn color_order(&self, cand: &Bits) -> Vec<(usize, usize)> {
        let mut left: Vec<usize> = cand.ones().collect();
        let mut out = Vec::with_capacity(left.len());
        let mut color = 0;
        while !left.is_empty() {
            color += 1;
            let mut class: Vec<usize> = Vec::new();
            left.retain(|&v| {
                if class.iter().all(|&u| !self.adj[u].has(v)) {
                    class.push(v);
                    false
                } else {
                    true
                }
            });
            out.extend(class.into_iter().map(|v| (v, color)));
        }
        out
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: Bits) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let order = self.color_order(&cand);
        for &(v, bound) in order.iter().rev() {
            if current.len() + bound <= self.best.len() {
                return true;
            }
            current.push(v);
            let next = cand.and(&self.adj[v]);
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else if !self.expand(current, next) {
                current.pop();
                return false;
            }
            current.pop();
            cand.clear(v);
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_models() {
        let t = WheelModel::generalized(&[1, 1, 1]).unwrap();
        let (f, exact) = max_crossing_family_with_budget(&t, 1000);
        assert!(exact);
        assert_eq!(f.len(), 1);
        let bw = WheelModel::bumpy(3, 3).unwrap();
        let f = max_crossing_family(&bw);
        assert!(f.len() >= 3);
        assert!(is_crossing_family(&bw, &f));
    }
}
