//! Backtracking edge coloring with forward checking.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use crate::dsu::RollbackDsu;
use crate::partition::Mode;
use crate::wheelgeom::{combinatorial_cross, EdgeId, WheelModel};

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub(crate) fn fnv_step(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(FNV_PRIME)
}

/// Fixed data shared by every subtree of one solve.
pub(crate) struct Problem {
    pub points: usize,
    pub edges: Vec<EdgeId>,
    pub m: usize,
    pub mode: Mode,
    pub class_size: bool,
    pub triangle: bool,
    pub symmetry: bool,
    pub target: usize,
    cross: Vec<Vec<u16>>,
    pair: Vec<u16>,
    pub order: Vec<usize>,
    pub initial: Vec<u32>,
    pub fixed: Vec<(usize, usize)>,
}

impl Problem {
    pub fn new(model: &WheelModel, m: usize, mode: Mode, class_size: bool, triangle: bool, symmetry: bool) -> Self {
        let points = model.point_count();
        let edges: Vec<EdgeId> = model.edges().collect();
        let ne = edges.len();
        let mut cross = vec![Vec::new(); ne];
        for i in 0..ne {
            for j in i + 1..ne {
                if combinatorial_cross(model, edges[i], edges[j]) {
                    cross[i].push(j as u16);
                    cross[j].push(i as u16);
                }
            }
        }
        let mut pair = vec![u16::MAX; points * points];
        for (i, e) in edges.iter().enumerate() {
            pair[e.a * points + e.b] = i as u16;
            pair[e.b * points + e.a] = i as u16;
        }
        let mut order: Vec<usize> = (0..ne).collect();
        order.sort_by(|&a, &b| cross[b].len().cmp(&cross[a].len()).then(a.cmp(&b)));
        let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
        Problem {
            points,
            edges,
            m,
            mode,
            class_size: class_size || mode != Mode::Subgraph,
            triangle,
            symmetry,
            target: points - 1,
            cross,
            pair,
            order,
            initial: vec![full; ne],
            fixed: Vec::new(),
        }
    }

    fn tree(&self) -> bool {
        self.mode != Mode::Subgraph
    }

    fn edge_between(&self, u: usize, v: usize) -> usize {
        self.pair[u * self.points + v] as usize
    }

    /// Put `prefix` at the front of the branching order.
    pub fn promote(&mut self, prefix: &[usize]) {
        let rest: Vec<usize> = self.order.iter().copied().filter(|e| !prefix.contains(e)).collect();
        self.order = prefix.iter().copied().chain(rest).collect();
    }
}

#[derive(Clone, Copy)]
enum Trail {
    Dom(u16, u32),
    Assign(u16),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Stop {
    Node,
    Time,
    Cancelled,
}

pub(crate) struct Limits<'a> {
    pub nodes: u64,
    pub deadline: Option<Instant>,
    /// Index of the earliest subtree known to hold a solution.
    pub first_sat: Option<(&'a AtomicUsize, usize)>,
}

pub(crate) struct Search<'p> {
    p: &'p Problem,
    dom: Vec<u32>,
    color: Vec<i8>,
    size: Vec<u16>,
    cnt: Vec<u16>,
    vcnt: Vec<u16>,
    deg: Vec<u16>,
    internal: Vec<u8>,
    dsu: Vec<RollbackDsu>,
    trail: Vec<Trail>,
    queue: Vec<u16>,
    assigned: usize,
    pub nodes: u64,
    pub max_depth: usize,
    pub fingerprint: u64,
    pub solutions: Vec<Vec<usize>>,
}

pub(crate) enum Outcome {
    Sat,
    Unsat,
    Stopped(Stop),
}

impl<'p> Search<'p> {
    /// Fresh state with initial domains and fixed edges applied; `None` if
    /// that already fails.
    pub fn new(p: &'p Problem) -> Option<Self> {
        let ne = p.edges.len();
        let m = p.m;
        let mut s = Search {
            p,
            dom: p.initial.clone(),
            color: vec![-1; ne],
            size: vec![0; m],
            cnt: vec![0; m],
            vcnt: vec![0; m * p.points],
            deg: vec![0; m * p.points],
            internal: vec![0; m],
            dsu: (0..m).map(|_| RollbackDsu::new(p.points)).collect(),
            trail: Vec::new(),
            queue: Vec::new(),
            assigned: 0,
            nodes: 0,
            max_depth: 0,
            fingerprint: FNV_OFFSET,
            solutions: Vec::new(),
        };
        for (i, e) in p.edges.iter().enumerate() {
            let mut bits = s.dom[i];
            while bits != 0 {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                s.cnt[c] += 1;
                s.vcnt[c * p.points + e.a] += 1;
                s.vcnt[c * p.points + e.b] += 1;
            }
        }
        if !s.counts_feasible() {
            return None;
        }
        for &(e, c) in &p.fixed {
            if s.color[e] >= 0 {
                if s.color[e] as usize != c {
                    return None;
                }
                continue;
            }
            if s.dom[e] & (1 << c) == 0 || !s.assign(e, c) || !s.propagate() {
                return None;
            }
        }
        for i in 0..ne {
            if s.color[i] < 0 && s.dom[i].count_ones() == 1 {
                s.queue.push(i as u16);
            }
        }
        if !s.propagate() || !s.connected() {
            return None;
        }
        s.trail.clear();
        Some(s)
    }

    fn counts_feasible(&self) -> bool {
        if self.dom.iter().any(|&d| d == 0) {
            return false;
        }
        if self.p.class_size && self.cnt.iter().any(|&c| (c as usize) < self.p.target) {
            return false;
        }
        !self.p.tree() || self.vcnt.iter().all(|&c| c > 0)
    }

    fn remove(&mut self, f: usize, c: usize) -> bool {
        let bit = 1u32 << c;
        if self.dom[f] & bit == 0 {
            return true;
        }
        self.trail.push(Trail::Dom(f as u16, self.dom[f]));
        self.dom[f] &= !bit;
        let e = self.p.edges[f];
        let pts = self.p.points;
        self.cnt[c] -= 1;
        self.vcnt[c * pts + e.a] -= 1;
        self.vcnt[c * pts + e.b] -= 1;
        if self.dom[f] == 0 {
            return false;
        }
        if self.p.class_size && (self.cnt[c] as usize) < self.p.target {
            return false;
        }
        if self.p.tree() && (self.vcnt[c * pts + e.a] == 0 || self.vcnt[c * pts + e.b] == 0) {
            return false;
        }
        if self.color[f] < 0 && self.dom[f].count_ones() == 1 {
            self.queue.push(f as u16);
        }
        true
    }

    fn assign(&mut self, e: usize, c: usize) -> bool {
        let others = self.dom[e] & !(1u32 << c);
        let mut bits = others;
        while bits != 0 {
            let d = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if !self.remove(e, d) {
                return false;
            }
        }
        let p = self.p;
        let ed = p.edges[e];
        let pts = p.points;
        self.color[e] = c as i8;
        self.assigned += 1;
        self.size[c] += 1;
        self.deg[c * pts + ed.a] += 1;
        self.deg[c * pts + ed.b] += 1;
        for v in [ed.a, ed.b] {
            if self.deg[c * pts + v] == 2 {
                self.internal[c] += 1;
            }
        }
        self.trail.push(Trail::Assign(e as u16));

        if p.class_size && self.size[c] as usize > p.target {
            return false;
        }
        for i in 0..p.cross[e].len() {
            let f = p.cross[e][i] as usize;
            if !self.remove(f, c) {
                return false;
            }
        }
        if p.tree() {
            if !self.dsu[c].union(ed.a, ed.b) {
                return false;
            }
            for f in 0..p.edges.len() {
                if self.color[f] < 0 && self.dom[f] & (1 << c) != 0 {
                    let g = p.edges[f];
                    if self.dsu[c].same(g.a, g.b) && !self.remove(f, c) {
                        return false;
                    }
                }
            }
        }
        if p.class_size && self.size[c] as usize == p.target {
            for f in 0..p.edges.len() {
                if self.color[f] < 0 && !self.remove(f, c) {
                    return false;
                }
            }
        }
        if p.triangle && !self.triangle_prune(ed, c) {
            return false;
        }
        if p.mode == Mode::DoubleStar && !self.double_star_prune(c) {
            return false;
        }
        true
    }

    fn triangle_prune(&mut self, ed: EdgeId, c: usize) -> bool {
        let p = self.p;
        for w in 0..p.points {
            if w == ed.a || w == ed.b {
                continue;
            }
            let (aw, bw) = (p.edge_between(ed.a, w), p.edge_between(ed.b, w));
            if self.color[aw] == c as i8 && !self.remove(bw, c) {
                return false;
            }
            if self.color[bw] == c as i8 && !self.remove(aw, c) {
                return false;
            }
        }
        true
    }

    fn double_star_prune(&mut self, c: usize) -> bool {
        let p = self.p;
        let pts = p.points;
        match self.internal[c] {
            0 | 1 => true,
            2 => {
                let hubs: Vec<usize> = (0..pts).filter(|&v| self.deg[c * pts + v] >= 2).collect();
                let spine = p.edge_between(hubs[0], hubs[1]);
                if self.dom[spine] & (1 << c) == 0 {
                    return false;
                }
                for f in 0..p.edges.len() {
                    let g = p.edges[f];
                    if self.color[f] < 0 && !hubs.contains(&g.a) && !hubs.contains(&g.b) && !self.remove(f, c) {
                        return false;
                    }
                }
                true
            }
            _ => false,
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(f) = self.queue.pop() {
            let f = f as usize;
            if self.color[f] >= 0 {
                continue;
            }
            let d = self.dom[f];
            if d == 0 || !self.assign(f, d.trailing_zeros() as usize) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    /// Every color can still reach every vertex.
    fn connected(&self) -> bool {
        if !self.p.tree() {
            return true;
        }
        let pts = self.p.points;
        let mut parent: Vec<usize> = Vec::with_capacity(pts);
        for c in 0..self.p.m {
            parent.clear();
            parent.extend(0..pts);
            let mut parts = pts;
            let find = |parent: &mut Vec<usize>, mut v: usize| {
                while parent[v] != v {
                    parent[v] = parent[parent[v]];
                    v = parent[v];
                }
                v
            };
            for (f, e) in self.p.edges.iter().enumerate() {
                if self.dom[f] & (1 << c) != 0 {
                    let (x, y) = (find(&mut parent, e.a), find(&mut parent, e.b));
                    if x != y {
                        parent[x] = y;
                        parts -= 1;
                    }
                }
            }
            if parts != 1 {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        let pts = self.p.points;
        while self.trail.len() > len {
            match self.trail.pop().expect("non-empty") {
                Trail::Dom(f, old) => {
                    let f = f as usize;
                    let e = self.p.edges[f];
                    let mut bits = old & !self.dom[f];
                    while bits != 0 {
                        let c = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        self.cnt[c] += 1;
                        self.vcnt[c * pts + e.a] += 1;
                        self.vcnt[c * pts + e.b] += 1;
                    }
                    self.dom[f] = old;
                }
                Trail::Assign(f) => {
                    let f = f as usize;
                    let c = self.color[f] as usize;
                    let e = self.p.edges[f];
                    for v in [e.a, e.b] {
                        if self.deg[c * pts + v] == 2 {
                            self.internal[c] -= 1;
                        }
                        self.deg[c * pts + v] -= 1;
                    }
                    self.size[c] -= 1;
                    self.color[f] = -1;
                    self.assigned -= 1;
                }
            }
        }
    }

    fn snapshot(&self) -> (usize, Vec<usize>) {
        (self.trail.len(), self.dsu.iter().map(RollbackDsu::time).collect())
    }

    fn restore(&mut self, snap: &(usize, Vec<usize>)) {
        self.undo_to(snap.0);
        for (d, &t) in self.dsu.iter_mut().zip(&snap.1) {
            d.rollback(t);
        }
    }

    /// Apply a branching decision with propagation; false on conflict.
    pub fn decide(&mut self, e: usize, c: usize) -> bool {
        self.dom[e] & (1 << c) != 0 && self.assign(e, c) && self.propagate() && self.connected()
    }

    pub fn colors(&self) -> Vec<usize> {
        self.color.iter().map(|&c| c as usize).collect()
    }

    fn next_edge(&self) -> Option<usize> {
        self.p.order.iter().copied().find(|&e| self.color[e] < 0)
    }

    /// Colors to try at a branch point, ascending.
    fn choices(&self, e: usize) -> Vec<usize> {
        let mut d = self.dom[e];
        if self.p.symmetry {
            let used: u32 = (0..self.p.m).filter(|&c| self.size[c] > 0).fold(0, |acc, c| acc | 1 << c);
            let fresh = d & !used;
            d = (d & used) | (fresh & fresh.wrapping_neg());
        }
        let mut out = Vec::with_capacity(d.count_ones() as usize);
        while d != 0 {
            out.push(d.trailing_zeros() as usize);
            d &= d - 1;
        }
        out
    }

    fn check_stop(&self, limits: &Limits) -> Option<Stop> {
        if self.nodes >= limits.nodes {
            return Some(Stop::Node);
        }
        if self.nodes % 1024 == 0 {
            if let Some(t) = limits.deadline {
                if Instant::now() >= t {
                    return Some(Stop::Time);
                }
            }
            if let Some((flag, me)) = limits.first_sat {
                if flag.load(Ordering::Relaxed) < me {
                    return Some(Stop::Cancelled);
                }
            }
        }
        None
    }

    /// Depth-first search below the current state. With `all`, every
    /// solution is recorded and the search continues.
    pub fn dfs(&mut self, depth: usize, all: bool, limits: &Limits) -> Outcome {
        self.max_depth = self.max_depth.max(depth);
        let Some(e) = self.next_edge() else {
            self.solutions.push(self.colors());
            return if all { Outcome::Unsat } else { Outcome::Sat };
        };
        for c in self.choices(e) {
            if let Some(stop) = self.check_stop(limits) {
                return Outcome::Stopped(stop);
            }
            self.nodes += 1;
            self.fingerprint = fnv_step(self.fingerprint, ((e as u64) << 8) | c as u64);
            let snap = self.snapshot();
            if self.decide(e, c) {
                match self.dfs(depth + 1, all, limits) {
                    Outcome::Unsat => {}
                    other => {
                        self.restore(&snap);
                        return other;
                    }
                }
            }
            self.restore(&snap);
        }
        Outcome::Unsat
    }

    /// Enumerate decision prefixes of length `depth` (or shorter ones that
    /// complete the coloring), in search order.
    pub fn frontier(&mut self, depth: usize, prefix: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        self.max_depth = self.max_depth.max(prefix.len());
        if prefix.len() == depth {
            out.push(prefix.clone());
            return;
        }
        let Some(e) = self.next_edge() else {
            out.push(prefix.clone());
            return;
        };
        for c in self.choices(e) {
            self.nodes += 1;
            self.fingerprint = fnv_step(self.fingerprint, ((e as u64) << 8) | c as u64);
            let snap = self.snapshot();
            if self.decide(e, c) {
                prefix.push((e, c));
                self.frontier(depth, prefix, out);
                prefix.pop();
            }
            self.restore(&snap);
        }
    }
}
