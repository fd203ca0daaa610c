//! Mmodules: point sets that every outside point sees at a single distance.
//!
//! Everything here is diagnostic and runs in polynomial time above `O(n²)`;
//! the recognizer does not depend on it.
//!
//! # Tree syntax
//!
//! ```text
//! tree  := leaf | "(" label tree+ ")"
//! label := "U" | "I"
//! leaf  := positive integer (1-based point id)
//! ```
//!
//! `U` marks a union node, whose children are the maximal mmodules of its
//! leaf set. `I` marks an intersection node, whose children are the
//! complements of those maximal mmodules. Tokens are separated by
//! whitespace; children are printed by increasing smallest leaf. A node with
//! exactly two children is always printed as `U`, since both labels stand for
//! the same sets there.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::refinement::copoint_partition;
use crate::space::{DissimilaritySpace, PointId, SubsetView};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MModuleError {
    #[error("{n} points is beyond the limit of {limit} for this operation")]
    TooLarge { n: usize, limit: usize },
    #[error("tree text: {0}")]
    Syntax(String),
}

pub fn is_mmodule(space: &DissimilaritySpace, m: &[PointId]) -> bool {
    let Some(&first) = m.first() else {
        return true;
    };
    let mut inside = vec![false; space.len()];
    for &x in m {
        inside[x] = true;
    }
    space.points().filter(|&z| !inside[z]).all(|z| {
        let row = space.row(z);
        m.iter().all(|&x| row[x] == row[first])
    })
}

/// Points that tell `u` and `v` apart.
pub fn interval(space: &DissimilaritySpace, u: PointId, v: PointId) -> Vec<PointId> {
    let (ru, rv) = (space.row(u), space.row(v));
    space.points().filter(|&x| ru[x] != rv[x]).collect()
}

/// The smallest mmodule containing `a`, by closing `a` under intervals.
pub fn mconv(space: &DissimilaritySpace, a: &[PointId]) -> Vec<PointId> {
    let mut inside = vec![false; space.len()];
    let mut members: Vec<PointId> = Vec::new();
    for &x in a {
        if !std::mem::replace(&mut inside[x], true) {
            members.push(x);
        }
    }
    // Every new member is paired once with every member before it.
    let mut next = 1;
    while next < members.len() {
        let w = members[next];
        for i in 0..next {
            for x in interval(space, members[i], w) {
                if !std::mem::replace(&mut inside[x], true) {
                    members.push(x);
                }
            }
        }
        next += 1;
    }
    members.sort_unstable();
    members
}

/// Refines `initial` until, for any two classes, every point of one sees
/// all points of the other at one distance.
pub fn stable_partition(space: &DissimilaritySpace, initial: &[Vec<PointId>]) -> Vec<Vec<PointId>> {
    let mut out = Vec::new();
    let mut inside = vec![false; space.len()];
    for b in initial {
        for &x in b {
            inside[x] = true;
        }
        let rest: Vec<PointId> = space.points().filter(|&x| !inside[x]).collect();
        for &x in b {
            inside[x] = false;
        }
        let mut stack: Vec<(Vec<PointId>, Vec<PointId>)> = vec![(b.clone(), rest)];
        while let Some((block, mut pivots)) = stack.pop() {
            if pivots.is_empty() {
                out.push(block);
                continue;
            }
            let q = pivots.remove(0);
            let parts = crate::refinement::refine_unchecked(space, q, &block);
            for i in 0..parts.len() {
                let mut z: Vec<PointId> = Vec::new();
                for (j, part) in parts.iter().enumerate() {
                    if j != i {
                        z.extend_from_slice(part);
                    }
                }
                z.extend_from_slice(&pivots);
                stack.push((parts[i].clone(), z));
            }
        }
    }
    for b in &mut out {
        b.sort_unstable();
    }
    out.sort();
    out
}

/// Whether the maximal mmodules are pairwise disjoint or their complements
/// are.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Partition,
    Copartition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalMModules {
    /// Sorted sets, sorted by smallest member.
    pub sets: Vec<Vec<PointId>>,
    pub regime: Regime,
}

/// The inclusion-maximal mmodules other than the whole space. Each is a
/// copoint of some point, and a `p`-copoint `M` is maximal unless the
/// copoint of some other outside point `q` that contains `M` is bigger.
pub fn maximal_mmodules(space: &DissimilaritySpace) -> MaximalMModules {
    let n = space.len();
    // For every q: the index of each point's q-copoint, and copoint sizes.
    let parts: Vec<Vec<Vec<PointId>>> = space.points().map(|p| copoint_partition(space, p).copoints.into_blocks()).collect();
    let mut block_of = vec![vec![usize::MAX; n]; n];
    for (q, blocks) in parts.iter().enumerate() {
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[q][x] = i;
            }
        }
    }
    let mut found: BTreeSet<Vec<PointId>> = BTreeSet::new();
    for (p, blocks) in parts.iter().enumerate() {
        for m in blocks {
            let mut inside = vec![false; n];
            m.iter().for_each(|&x| inside[x] = true);
            let maximal = (0..n).all(|q| q == p || inside[q] || parts[q][block_of[q][m[0]]].len() <= m.len());
            if maximal {
                let mut m = m.clone();
                m.sort_unstable();
                found.insert(m);
            }
        }
    }
    let mut sets: Vec<Vec<PointId>> = found.into_iter().collect();
    sets.sort_by_key(|s| s[0]);
    let total: usize = sets.iter().map(Vec::len).sum();
    let regime = if total == n { Regime::Partition } else { Regime::Copartition };
    MaximalMModules { sets, regime }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Union,
    Intersection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MModuleTree {
    Leaf(PointId),
    Node { label: Label, children: Vec<MModuleTree> },
}

impl MModuleTree {
    pub fn leaves(&self) -> Vec<PointId> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<PointId>) {
        match self {
            MModuleTree::Leaf(x) => out.push(*x),
            MModuleTree::Node { children, .. } => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    fn min_leaf(&self) -> PointId {
        match self {
            MModuleTree::Leaf(x) => *x,
            MModuleTree::Node { children, .. } => children.iter().map(MModuleTree::min_leaf).min().unwrap(),
        }
    }

    /// Sorts children by smallest leaf and relabels two-child nodes as unions.
    pub fn normalize(&mut self) {
        if let MModuleTree::Node { label, children } = self {
            children.iter_mut().for_each(MModuleTree::normalize);
            children.sort_by_key(MModuleTree::min_leaf);
            if children.len() == 2 {
                *label = Label::Union;
            }
        }
    }

    /// Parses the 1-based text form.
    pub fn parse(text: &str) -> Result<MModuleTree, MModuleError> {
        let spaced = text.replace('(', " ( ").replace(')', " ) ");
        let mut tokens = spaced.split_whitespace().peekable();
        let tree = parse_tree(&mut tokens)?;
        if let Some(t) = tokens.next() {
            return Err(MModuleError::Syntax(format!("unexpected {t:?} after the tree")));
        }
        Ok(tree)
    }
}

fn parse_tree<'a>(tokens: &mut std::iter::Peekable<impl Iterator<Item = &'a str>>) -> Result<MModuleTree, MModuleError> {
    let syntax = |m: String| MModuleError::Syntax(m);
    match tokens.next() {
        None => Err(syntax("unexpected end of input".into())),
        Some("(") => {
            let label = match tokens.next() {
                Some("U") => Label::Union,
                Some("I") => Label::Intersection,
                other => return Err(syntax(format!("expected U or I, found {other:?}"))),
            };
            let mut children = Vec::new();
            while tokens.peek() != Some(&")") {
                if tokens.peek().is_none() {
                    return Err(syntax("missing )".into()));
                }
                children.push(parse_tree(tokens)?);
            }
            tokens.next();
            if children.is_empty() {
                return Err(syntax("node without children".into()));
            }
            Ok(MModuleTree::Node { label, children })
        }
        Some(t) => match t.parse::<usize>() {
            Ok(id) if id >= 1 => Ok(MModuleTree::Leaf(id - 1)),
            _ => Err(syntax(format!("bad leaf {t:?}"))),
        },
    }
}

impl fmt::Display for MModuleTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MModuleTree::Leaf(x) => write!(f, "{}", x + 1),
            MModuleTree::Node { label, children } => {
                f.write_str(match label {
                    Label::Union => "(U",
                    Label::Intersection => "(I",
                })?;
                for c in children {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

pub fn mmodule_tree(space: &DissimilaritySpace) -> MModuleTree {
    let mut tree = build_tree(space, (0..space.len()).collect());
    tree.normalize();
    tree
}

fn build_tree(space: &DissimilaritySpace, set: Vec<PointId>) -> MModuleTree {
    match set.len() {
        0 => MModuleTree::Node { label: Label::Union, children: Vec::new() },
        1 => MModuleTree::Leaf(set[0]),
        _ => {
            let view = SubsetView::new(set.clone(), space.len()).expect("tree sets are sets");
            let sub = space.restrict(&view);
            let max = maximal_mmodules(&sub);
            let lift = |local: &[PointId]| local.iter().map(|&x| set[x]).collect::<Vec<_>>();
            let (label, child_sets): (Label, Vec<Vec<PointId>>) = match max.regime {
                Regime::Partition => (Label::Union, max.sets.iter().map(|m| lift(m)).collect()),
                Regime::Copartition => {
                    let complements = max
                        .sets
                        .iter()
                        .map(|m| {
                            let mut inside = vec![false; set.len()];
                            m.iter().for_each(|&x| inside[x] = true);
                            (0..set.len()).filter(|&x| !inside[x]).map(|x| set[x]).collect()
                        })
                        .collect();
                    (Label::Intersection, complements)
                }
            };
            let children = child_sets.into_iter().map(|c| build_tree(space, c)).collect();
            MModuleTree::Node { label, children }
        }
    }
}

pub const FAMILY_LIMIT: usize = 20;

/// All sets the tree stands for: the empty set, the leaf set of every node,
/// and, below an intersection node, the union of any proper subset of its
/// children. Each set is sorted.
pub fn represented_family(tree: &MModuleTree) -> Result<BTreeSet<Vec<PointId>>, MModuleError> {
    let n = tree.leaves().len();
    if n > FAMILY_LIMIT {
        return Err(MModuleError::TooLarge { n, limit: FAMILY_LIMIT });
    }
    let mut family = BTreeSet::new();
    family.insert(Vec::new());
    add_represented(tree, &mut family);
    Ok(family)
}

fn add_represented(tree: &MModuleTree, family: &mut BTreeSet<Vec<PointId>>) {
    let mut leaves = tree.leaves();
    leaves.sort_unstable();
    family.insert(leaves);
    if let MModuleTree::Node { label, children } = tree {
        children.iter().for_each(|c| add_represented(c, family));
        if *label == Label::Intersection {
            let k = children.len();
            let child_leaves: Vec<Vec<PointId>> = children.iter().map(MModuleTree::leaves).collect();
            for mask in 1u64..(1 << k) - 1 {
                let mut set: Vec<PointId> =
                    (0..k).filter(|&i| mask >> i & 1 == 1).flat_map(|i| child_leaves[i].iter().copied()).collect();
                set.sort_unstable();
                family.insert(set);
            }
        }
    }
}
