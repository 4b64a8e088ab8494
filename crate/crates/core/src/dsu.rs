//! Union-find with union by size and undo, for use inside backtracking.

#[derive(Clone, Debug)]
pub struct RollbackDsu {
    parent: Vec<u32>,
    size: Vec<u32>,
    history: Vec<(u32, u32)>,
}

impl RollbackDsu {
    pub fn new(n: usize) -> Self {
        RollbackDsu { parent: (0..n as u32).collect(), size: vec![1; n], history: Vec::new() }
    }

    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] as usize != v {
            v = self.parent[v] as usize;
        }
        v
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn component_size(&self, v: usize) -> usize {
        self.size[self.find(v)] as usize
    }

    /// Current history length, to pass to [`RollbackDsu::rollback`].
    pub fn time(&self) -> usize {
        self.history.len()
    }

    /// Merge the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut x, mut y) = (self.find(a), self.find(b));
        if x == y {
            return false;
        }
        if self.size[x] < self.size[y] {
            std::mem::swap(&mut x, &mut y);
        }
        self.history.push((y as u32, x as u32));
        self.parent[y] = x as u32;
        self.size[x] += self.size[y];
        true
    }

    pub fn rollback(&mut self, t: usize) {
        while self.history.len() > t {
            let (y, x) = self.history.pop().expect("non-empty history");
            self.parent[y as usize] = y;
            self.size[x as usize] -= self.size[y as usize];
        }
    }
}
