//! Dissimilarity spaces, orders over their points and the Robinson check.

use std::fmt;

use thiserror::Error;

/// Index of a point, `0..n`.
pub type PointId = usize;

/// An exact dissimilarity value.
///
/// Values are stored as integers in units of `10^-scale`, where the scale is
/// fixed per space by the parser. Comparisons are plain integer comparisons.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(i64);

impl Value {
    pub const ZERO: Value = Value(0);

    pub const fn from_units(units: i64) -> Value {
        Value(units)
    }

    pub const fn units(self) -> i64 {
        self.0
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value(i64::from(v))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("diagonal entry ({0}, {0}) is not zero")]
    NonzeroDiagonal(usize),
    #[error("negative entry at ({0}, {1})")]
    NegativeEntry(usize, usize),
    #[error("subset is empty")]
    EmptySubset,
    #[error("point {point} is out of bounds for a space of {n} points")]
    OutOfBounds { point: PointId, n: usize },
    #[error("point {0} appears twice")]
    Duplicate(PointId),
    #[error("order has {len} entries, expected {n}")]
    WrongLength { len: usize, n: usize },
}

/// A finite set of points with a symmetric, nonnegative, zero-diagonal
/// dissimilarity. Immutable once built.
///
/// Cells hold the rank of their value among the distinct values of the
/// space, in the narrowest integer type that fits. Ranks compare like the
/// values they stand for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DissimilaritySpace {
    n: usize,
    levels: Vec<Value>,
    cells: Cells,
    scale: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Cells {
    U8(Vec<u8>),
    U16(Vec<u16>),
    U32(Vec<u32>),
}

impl Cells {
    /// Ranks of `dist` against the sorted distinct values `levels`.
    fn encode(dist: &[Value], levels: &[Value]) -> Cells {
        let rank = |v: &Value| levels.binary_search(v).expect("value is a level");
        if levels.len() <= 1 << 8 {
            Cells::U8(dist.iter().map(|v| rank(v) as u8).collect())
        } else if levels.len() <= 1 << 16 {
            Cells::U16(dist.iter().map(|v| rank(v) as u16).collect())
        } else {
            Cells::U32(dist.iter().map(|v| rank(v) as u32).collect())
        }
    }
}

/// One row of a space, indexable by point.
#[derive(Clone, Copy)]
pub struct Row<'a> {
    levels: &'a [Value],
    cells: RowCells<'a>,
}

#[derive(Clone, Copy)]
enum RowCells<'a> {
    U8(&'a [u8]),
    U16(&'a [u16]),
    U32(&'a [u32]),
}

impl<'a> Row<'a> {
    /// Rank of `d(x, y)` among the distinct values of the space.
    #[inline]
    pub fn rank(&self, y: PointId) -> u32 {
        match self.cells {
            RowCells::U8(c) => u32::from(c[y]),
            RowCells::U16(c) => u32::from(c[y]),
            RowCells::U32(c) => c[y],
        }
    }

    pub fn len(&self) -> usize {
        match self.cells {
            RowCells::U8(c) => c.len(),
            RowCells::U16(c) => c.len(),
            RowCells::U32(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Value> + 'a {
        let row = *self;
        (0..row.len()).map(move |y| row[y])
    }

    /// Writes the rank of each cell `y` to `out[pos[y]]`.
    fn scatter(&self, pos: &[usize], out: &mut [u32]) {
        match self.cells {
            RowCells::U8(c) => c.iter().zip(pos).for_each(|(&v, &i)| out[i] = u32::from(v)),
            RowCells::U16(c) => c.iter().zip(pos).for_each(|(&v, &i)| out[i] = u32::from(v)),
            RowCells::U32(c) => c.iter().zip(pos).for_each(|(&v, &i)| out[i] = v),
        }
    }
}

impl std::ops::Index<PointId> for Row<'_> {
    type Output = Value;

    #[inline]
    fn index(&self, y: PointId) -> &Value {
        &self.levels[self.rank(y) as usize]
    }
}

impl DissimilaritySpace {
    /// Checks a square grid cell by cell in row-major order and reports the
    /// first cell that breaks an invariant.
    pub fn validate(raw: Vec<Vec<Value>>) -> Result<Self, SpaceError> {
        let n = raw.len();
        for (row, r) in raw.iter().enumerate() {
            if r.len() != n {
                return Err(SpaceError::NotSquare { row, len: r.len(), n });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let v = raw[i][j];
                if v < Value::ZERO {
                    return Err(SpaceError::NegativeEntry(i, j));
                }
                if i == j && v != Value::ZERO {
                    return Err(SpaceError::NonzeroDiagonal(i));
                }
                if v != raw[j][i] {
                    return Err(SpaceError::Asymmetric(i.min(j), i.max(j)));
                }
            }
        }
        let dist: Vec<Value> = raw.into_iter().flatten().collect();
        Ok(Self::from_dense(n, &dist, 0))
    }

    /// Builds a space from its strict upper triangle; `f(i, j)` is called once
    /// for every `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(PointId, PointId) -> Value) -> Result<Self, SpaceError> {
        let mut dist = vec![Value::ZERO; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                if v < Value::ZERO {
                    return Err(SpaceError::NegativeEntry(i, j));
                }
                dist[i * n + j] = v;
                dist[j * n + i] = v;
            }
        }
        Ok(Self::from_dense(n, &dist, 0))
    }

    fn from_dense(n: usize, dist: &[Value], scale: u32) -> Self {
        let mut levels = dist.to_vec();
        levels.sort_unstable();
        levels.dedup();
        let cells = Cells::encode(dist, &levels);
        DissimilaritySpace { n, levels, cells, scale }
    }

    /// Convenience constructor for integer matrices given as rows.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, SpaceError> {
        Self::validate(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| Value(v)).collect())
                .collect(),
        )
    }

    /// Number of fractional decimal digits the integer units stand for.
    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn with_scale(mut self, scale: u32) -> Self {
        self.scale = scale;
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn d(&self, x: PointId, y: PointId) -> Value {
        self.levels[self.rank(x, y) as usize]
    }

    /// Rank of `d(x, y)` among the distinct values of the space: equal
    /// ranks mean equal values and the order of ranks is the order of values.
    #[inline]
    pub fn rank(&self, x: PointId, y: PointId) -> u32 {
        let k = x * self.n + y;
        match &self.cells {
            Cells::U8(c) => u32::from(c[k]),
            Cells::U16(c) => u32::from(c[k]),
            Cells::U32(c) => c[k],
        }
    }

    pub fn row(&self, x: PointId) -> Row<'_> {
        let r = x * self.n..(x + 1) * self.n;
        let cells = match &self.cells {
            Cells::U8(c) => RowCells::U8(&c[r]),
            Cells::U16(c) => RowCells::U16(&c[r]),
            Cells::U32(c) => RowCells::U32(&c[r]),
        };
        Row { levels: &self.levels, cells }
    }

    pub fn points(&self) -> std::ops::Range<PointId> {
        0..self.n
    }

    pub fn restrict(&self, subset: &SubsetView) -> DissimilaritySpace {
        let m = &subset.members;
        let k = m.len();
        let mut dist = Vec::with_capacity(k * k);
        for &x in m {
            let row = self.row(x);
            dist.extend(m.iter().map(|&y| row[y]));
        }
        Self::from_dense(k, &dist, self.scale)
    }

    pub fn diameter(&self, subset: &[PointId]) -> Result<Value, SpaceError> {
        if subset.is_empty() {
            return Err(SpaceError::EmptySubset);
        }
        let mut best = Value::ZERO;
        for (i, &x) in subset.iter().enumerate() {
            for &y in &subset[i + 1..] {
                best = best.max(self.d(x, y));
            }
        }
        Ok(best)
    }

    /// Permutes rows and columns so that row `i` of the result is point
    /// `order[i]`.
    pub fn permuted(&self, order: &Order) -> DissimilaritySpace {
        self.restrict(&SubsetView { members: order.0.clone() })
    }

    pub fn is_robinson_order(&self, order: &Order) -> bool {
        self.first_violation(order).is_none()
    }

    /// Scans each row of the permuted matrix outward from the diagonal, in
    /// both directions, and returns the first decrease found. Rows are read
    /// in storage order and laid out by position in a buffer first.
    pub fn first_violation(&self, order: &Order) -> Option<Violation> {
        let o = order.as_slice();
        let pos = order.positions();
        let mut buf = vec![0u32; o.len()];
        for (i, &row) in o.iter().enumerate() {
            self.row(row).scatter(&pos, &mut buf);
            if let Some(j) = (i..o.len().saturating_sub(1)).find(|&j| buf[j] > buf[j + 1]) {
                return Some(Violation { row, near: o[j], far: o[j + 1] });
            }
            if let Some(j) = (1..=i).rev().find(|&j| buf[j] > buf[j - 1]) {
                return Some(Violation { row, near: o[j], far: o[j - 1] });
            }
        }
        None
    }
}

/// A decrease in the permuted matrix: `far` lies farther from `row` than
/// `near` in the order, yet `d(row, far) < d(row, near)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub row: PointId,
    pub near: PointId,
    pub far: PointId,
}

/// A permutation of the points of a space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Order(Vec<PointId>);

impl Order {
    pub fn new(seq: Vec<PointId>, n: usize) -> Result<Order, SpaceError> {
        if seq.len() != n {
            return Err(SpaceError::WrongLength { len: seq.len(), n });
        }
        check_distinct(&seq, n)?;
        Ok(Order(seq))
    }

    pub fn identity(n: usize) -> Order {
        Order((0..n).collect())
    }

    /// Wraps a sequence already known to be a permutation.
    pub(crate) fn from_vec_unchecked(seq: Vec<PointId>) -> Order {
        Order(seq)
    }

    pub fn as_slice(&self) -> &[PointId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<PointId> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Order {
        Order(self.0.iter().rev().copied().collect())
    }

    /// `pos[x]` is the position of point `x`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            pos[x] = i;
        }
        pos
    }

    /// The order induced on `subset`, relabelled to `0..subset.len()` in the
    /// numbering of `subset`.
    pub fn induced(&self, subset: &SubsetView) -> Order {
        let pos = self.positions();
        let mut local: Vec<PointId> = (0..subset.members.len()).collect();
        local.sort_by_key(|&i| pos[subset.members[i]]);
        Order(local)
    }
}

/// A set of distinct points of some parent space, in a chosen order. Local
/// point `i` of a restriction stands for `members[i]` of the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetView {
    members: Vec<PointId>,
}

impl SubsetView {
    pub fn new(members: Vec<PointId>, n: usize) -> Result<SubsetView, SpaceError> {
        check_distinct(&members, n)?;
        Ok(SubsetView { members })
    }

    pub fn members(&self) -> &[PointId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn parent_of(&self, local: PointId) -> PointId {
        self.members[local]
    }
}

fn check_distinct(seq: &[PointId], n: usize) -> Result<(), SpaceError> {
    let mut seen = vec![false; n];
    for &x in seq {
        if x >= n {
            return Err(SpaceError::OutOfBounds { point: x, n });
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(SpaceError::Duplicate(x));
        }
    }
    Ok(())
}
