use serde::{Deserialize, Serialize};

use super::GeomError;

/// Vertex id: `0` is the center, `1..=hull_count` are hull vertices in clockwise order.
pub type Vertex = usize;

/// The center vertex.
pub const CENTER: Vertex = 0;

/// Combinatorial description of a (generalized) wheel.
///
/// Groups are indexed from `0` in clockwise order; group `0` starts at hull
/// vertex `1` and group `k - 1` ends at the last hull vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ModelJson", into = "ModelJson")]
pub struct WheelModel {
    sizes: Vec<usize>,
    starts: Vec<Vertex>,
    group_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    k: usize,
    sizes: Vec<usize>,
}

impl TryFrom<ModelJson> for WheelModel {
    type Error = GeomError;

    fn try_from(raw: ModelJson) -> Result<Self, Self::Error> {
        if raw.k != raw.sizes.len() {
            return Err(GeomError::InvalidModel(format!(
                "k = {} but {} group sizes given",
                raw.k,
                raw.sizes.len()
            )));
        }
        WheelModel::generalized(&raw.sizes)
    }
}

impl From<WheelModel> for ModelJson {
    fn from(m: WheelModel) -> Self {
        ModelJson { k: m.k(), sizes: m.sizes }
    }
}

impl WheelModel {
    /// Bumpy wheel `BW_{k,l}`: `k` groups of `l` vertices each.
    pub fn bumpy(k: usize, l: usize) -> Result<Self, GeomError> {
        if k < 3 || k % 2 == 0 {
            return Err(GeomError::InvalidModel(format!("k must be odd and >= 3, got {k}")));
        }
        if l == 0 || l % 2 == 0 {
            return Err(GeomError::InvalidModel(format!("l must be odd and >= 1, got {l}")));
        }
        Self::generalized(&vec![l; k])
    }

    /// Generalized wheel with the given group sizes in clockwise order.
    /// Requires an odd number of groups (at least 3) and an odd hull total,
    /// so that the point count is even.
    pub fn generalized(sizes: &[usize]) -> Result<Self, GeomError> {
        let model = Self::from_groups(sizes)?;
        if model.hull_count() % 2 == 0 {
            return Err(GeomError::InvalidModel(format!(
                "hull total {} must be odd",
                model.hull_count()
            )));
        }
        Ok(model)
    }

    /// Like [`WheelModel::generalized`] but without the parity requirement on
    /// the hull total. Canonicalization of arbitrary one-interior-point sets
    /// produces such models.
    pub fn from_groups(sizes: &[usize]) -> Result<Self, GeomError> {
        let k = sizes.len();
        if k < 3 || k % 2 == 0 {
            return Err(GeomError::InvalidModel(format!(
                "group count must be odd and >= 3, got {k}"
            )));
        }
        if let Some(pos) = sizes.iter().position(|&s| s == 0) {
            return Err(GeomError::InvalidModel(format!("group {pos} is empty")));
        }
        let mut starts = Vec::with_capacity(k);
        let mut group_of = vec![usize::MAX];
        let mut next = 1;
        for (g, &s) in sizes.iter().enumerate() {
            starts.push(next);
            group_of.extend(std::iter::repeat(g).take(s));
            next += s;
        }
        Ok(WheelModel { sizes: sizes.to_vec(), starts, group_of })
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `(k - 1) / 2`, the number of groups strictly on each side of a group's axis.
    pub fn half_k(&self) -> usize {
        (self.k() - 1) / 2
    }

    pub fn hull_count(&self) -> usize {
        self.group_of.len() - 1
    }

    pub fn point_count(&self) -> usize {
        self.group_of.len()
    }

    /// Half the point count, i.e. the number of color classes of a partition
    /// into spanning trees.
    pub fn n(&self) -> usize {
        self.point_count() / 2
    }

    pub fn edge_count(&self) -> usize {
        let p = self.point_count();
        p * (p - 1) / 2
    }

    /// `Some(l)` when every group has the same odd size `l`.
    pub fn bumpy_params(&self) -> Option<(usize, usize)> {
        let l = self.sizes[0];
        (l % 2 == 1 && self.sizes.iter().all(|&s| s == l)).then_some((self.k(), l))
    }

    pub fn is_hull(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.hull_count()
    }

    /// Group index of a hull vertex.
    pub fn group_of(&self, v: Vertex) -> usize {
        debug_assert!(self.is_hull(v));
        self.group_of[v]
    }

    /// Group index taken modulo `k` (accepts any integer offset).
    pub fn group_mod(&self, g: isize) -> usize {
        g.rem_euclid(self.k() as isize) as usize
    }

    pub fn first(&self, g: usize) -> Vertex {
        self.starts[g]
    }

    pub fn last(&self, g: usize) -> Vertex {
        self.starts[g] + self.sizes[g] - 1
    }

    pub fn members(&self, g: usize) -> std::ops::RangeInclusive<Vertex> {
        self.first(g)..=self.last(g)
    }

    /// Zero-based position of a hull vertex inside its group.
    pub fn position(&self, v: Vertex) -> usize {
        v - self.starts[self.group_of(v)]
    }

    /// Middle vertex of an odd-size group.
    pub fn center_of(&self, g: usize) -> Option<Vertex> {
        let s = self.sizes[g];
        (s % 2 == 1).then(|| self.starts[g] + s / 2)
    }

    /// Hull vertex `steps` positions clockwise from `v`.
    pub fn cw(&self, v: Vertex, steps: isize) -> Vertex {
        let h = self.hull_count() as isize;
        ((v as isize - 1 + steps).rem_euclid(h) + 1) as Vertex
    }

    /// Number of clockwise steps from hull vertex `a` to hull vertex `b`.
    pub fn cw_steps(&self, a: Vertex, b: Vertex) -> usize {
        let h = self.hull_count();
        (b + h - a) % h
    }

    /// True if `v` lies strictly inside the clockwise arc from `from` to `to`.
    pub fn strictly_between(&self, from: Vertex, to: Vertex, v: Vertex) -> bool {
        let s = self.cw_steps(from, v);
        s > 0 && s < self.cw_steps(from, to)
    }

    /// Number of vertices in groups `start, start+1, .., start+len-1` (mod k).
    pub fn family_size(&self, start: usize, len: usize) -> usize {
        (0..len).map(|i| self.sizes[(start + i) % self.k()]).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        all_edges(self.point_count())
    }

    pub fn edge_index(&self, e: EdgeId) -> usize {
        e.index(self.point_count())
    }

    pub fn edge_at(&self, idx: usize) -> EdgeId {
        EdgeId::from_index(idx, self.point_count())
    }
}

/// Unordered vertex pair, normalized so that `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct EdgeId {
    pub a: Vertex,
    pub b: Vertex,
}

impl From<[usize; 2]> for EdgeId {
    fn from(p: [usize; 2]) -> Self {
        EdgeId::new(p[0], p[1])
    }
}

impl From<EdgeId> for [usize; 2] {
    fn from(e: EdgeId) -> Self {
        [e.a, e.b]
    }
}

impl std::fmt::Display for EdgeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{v{},v{}}}", self.a, self.b)
    }
}

impl EdgeId {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "an edge needs two distinct endpoints");
        if u < v {
            EdgeId { a: u, b: v }
        } else {
            EdgeId { a: v, b: u }
        }
    }

    pub fn is_radial(&self) -> bool {
        self.a == CENTER
    }

    pub fn shares_endpoint(&self, other: &EdgeId) -> bool {
        self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint other than `v`.
    pub fn other(&self, v: Vertex) -> Vertex {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    /// Position in the lexicographic order of all pairs on `points` vertices.
    pub fn index(&self, points: usize) -> usize {
        let (a, b) = (self.a, self.b);
        a * points - a * (a + 1) / 2 + (b - a - 1)
    }

    pub fn from_index(mut idx: usize, points: usize) -> Self {
        let mut a = 0;
        loop {
            let row = points - a - 1;
            if idx < row {
                return EdgeId { a, b: a + 1 + idx };
            }
            idx -= row;
            a += 1;
        }
    }
}

/// All pairs `(a, b)`, `a < b < points`, in lexicographic order.
pub fn all_edges(points: usize) -> impl Iterator<Item = EdgeId> {
    (0..points).flat_map(move |a| (a + 1..points).map(move |b| EdgeId { a, b }))
}
