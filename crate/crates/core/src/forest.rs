//! Plane binary forests: indexed, nested, and marked nested.
//!
//! Marked nested forests form the augmented Thompson monoid: the product
//! F * G identifies the i-th leaf of F with the i-th unmarked root of G
//! (every childless node counts as a leaf, marked trivial trees included).
//! Generators are the wedge at position i and the marked trivial tree
//! inserted before position i; indexed forests are the mark-free part, with
//! normal form 1^{c_1} 2^{c_2} ... recorded by the code.

use crate::ops::t_op;
use crate::poly::MultiPoly;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ForestError {
    Parse { pos: usize, msg: String },
    /// Structural invariant broken (crossing blocks, bad sizes, unmarked
    /// nested root, ...).
    Invalid(String),
    /// Enumeration or search asked for beyond its supported bound.
    BoundExceeded { n: usize, bound: usize },
    /// trim_at at a position that is not a terminal left leaf.
    NotTrimmable { i: usize },
}

impl fmt::Display for ForestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForestError::Parse { pos, msg } => write!(f, "forest parse error at byte {pos}: {msg}"),
            ForestError::Invalid(msg) => write!(f, "invalid forest: {msg}"),
            ForestError::BoundExceeded { n, bound } => {
                write!(f, "n = {n} exceeds the supported bound {bound}")
            }
            ForestError::NotTrimmable { i } => {
                write!(f, "position {i} is not a terminal left leaf")
            }
        }
    }
}

impl std::error::Error for ForestError {}

/// Plane binary tree shape.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum TreeShape {
    Leaf,
    Node(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    pub fn wedge() -> Self {
        TreeShape::Node(Box::new(TreeShape::Leaf), Box::new(TreeShape::Leaf))
    }

    pub fn num_leaves(&self) -> usize {
        match self {
            TreeShape::Leaf => 1,
            TreeShape::Node(l, r) => l.num_leaves() + r.num_leaves(),
        }
    }

    pub fn num_internal(&self) -> usize {
        match self {
            TreeShape::Leaf => 0,
            TreeShape::Node(l, r) => 1 + l.num_internal() + r.num_internal(),
        }
    }

    /// Replaces the k-th leaf (0-based, left to right) by a wedge.
    fn grow_leaf(&self, k: usize) -> TreeShape {
        fn go(t: &TreeShape, k: usize) -> (TreeShape, usize) {
            match t {
                TreeShape::Leaf => {
                    if k == 0 {
                        (TreeShape::wedge(), usize::MAX)
                    } else {
                        (TreeShape::Leaf, k - 1)
                    }
                }
                TreeShape::Node(l, r) => {
                    let (nl, k) = go(l, k);
                    if k == usize::MAX {
                        (TreeShape::Node(Box::new(nl), r.clone()), usize::MAX)
                    } else {
                        let (nr, k) = go(r, k);
                        (TreeShape::Node(Box::new(nl), Box::new(nr)), k)
                    }
                }
            }
        }
        let (t, rest) = go(self, k);
        assert!(rest == usize::MAX, "leaf index out of range");
        t
    }

    /// All shapes with the given number of leaves, in a fixed order.
    pub fn enumerate(nleaves: usize) -> Vec<TreeShape> {
        assert!(nleaves >= 1);
        if nleaves == 1 {
            return vec![TreeShape::Leaf];
        }
        let mut out = Vec::new();
        for left in 1..nleaves {
            for l in TreeShape::enumerate(left) {
                for r in TreeShape::enumerate(nleaves - left) {
                    out.push(TreeShape::Node(Box::new(l.clone()), Box::new(r.clone())));
                }
            }
        }
        out
    }

    /// Preorder string: `^` for an internal node, `.` for a leaf.
    pub fn parse(s: &str) -> Result<TreeShape, ForestError> {
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let t = TreeShape::parse_at(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(ForestError::Parse { pos, msg: "trailing shape characters".into() });
        }
        Ok(t)
    }

    fn parse_at(bytes: &[u8], pos: &mut usize) -> Result<TreeShape, ForestError> {
        match bytes.get(*pos) {
            Some(b'.') => {
                *pos += 1;
                Ok(TreeShape::Leaf)
            }
            Some(b'^') => {
                *pos += 1;
                let l = TreeShape::parse_at(bytes, pos)?;
                let r = TreeShape::parse_at(bytes, pos)?;
                Ok(TreeShape::Node(Box::new(l), Box::new(r)))
            }
            _ => Err(ForestError::Parse { pos: *pos, msg: "expected ^ or .".into() }),
        }
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeShape::Leaf => write!(f, "."),
            TreeShape::Node(l, r) => write!(f, "^{l}{r}"),
        }
    }
}

/// Forest of trees on consecutive leaf positions 1, 2, ...; trailing trivial
/// trees are implicit. Equal iff the codes are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct IndexedForest {
    trees: Vec<TreeShape>, // trailing Leaf entries trimmed
}

impl IndexedForest {
    pub fn empty() -> Self {
        IndexedForest { trees: Vec::new() }
    }

    pub fn new(mut trees: Vec<TreeShape>) -> Self {
        while trees.last() == Some(&TreeShape::Leaf) {
            trees.pop();
        }
        IndexedForest { trees }
    }

    /// Single wedge whose leaves are i, i+1.
    pub fn wedge_at(i: usize) -> Self {
        assert!(i >= 1);
        let mut trees = vec![TreeShape::Leaf; i - 1];
        trees.push(TreeShape::wedge());
        IndexedForest { trees }
    }

    pub fn trees(&self) -> &[TreeShape] {
        &self.trees
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Number of internal nodes.
    pub fn size(&self) -> usize {
        self.trees.iter().map(|t| t.num_internal()).sum()
    }

    /// Number of leaves covered by the stored trees.
    pub fn num_leaves(&self) -> usize {
        self.trees.iter().map(|t| t.num_leaves()).sum()
    }

    /// Largest leaf position belonging to a nontrivial tree; 0 if empty.
    pub fn max_nontrivial_leaf(&self) -> usize {
        let mut pos = 0;
        let mut best = 0;
        for t in &self.trees {
            let n = t.num_leaves();
            if n > 1 {
                best = pos + n;
            }
            pos += n;
        }
        best
    }

    /// The code: c_i = number of internal nodes whose leftmost leaf
    /// descendant is i. Trailing zeros trimmed.
    pub fn code(&self) -> Vec<u32> {
        let mut code: Vec<u32> = Vec::new();
        let mut leaf = 1usize; // next global leaf position
        fn go(t: &TreeShape, start: usize, code: &mut Vec<u32>) -> usize {
            match t {
                TreeShape::Leaf => 1,
                TreeShape::Node(l, r) => {
                    if code.len() < start {
                        code.resize(start, 0);
                    }
                    code[start - 1] += 1;
                    let ln = go(l, start, code);
                    let rn = go(r, start + ln, code);
                    ln + rn
                }
            }
        }
        for t in &self.trees {
            leaf += go(t, leaf, &mut code);
        }
        while code.last() == Some(&0) {
            code.pop();
        }
        code
    }

    /// Inverse of `code`: the forest 1^{c_1} 2^{c_2} ... as a generator
    /// product.
    pub fn from_code(code: &[u32]) -> Self {
        let mut f = MarkedNestedForest::empty();
        for (i, &c) in code.iter().enumerate() {
            for _ in 0..c {
                f = f.mul_wedge(i + 1);
            }
        }
        f.to_indexed().expect("mark-free products of wedges are indexed")
    }

    /// Monoid product: graft the trees of `other` under the leaves of `self`.
    pub fn product(&self, other: &IndexedForest) -> IndexedForest {
        self.to_marked()
            .product(&other.to_marked())
            .to_indexed()
            .expect("product of indexed forests is indexed")
    }

    /// Left leaves of terminal nodes (both children leaves), as global
    /// positions.
    pub fn qdes(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut pos = 1usize;
        fn go(t: &TreeShape, start: usize, out: &mut BTreeSet<usize>) -> usize {
            match t {
                TreeShape::Leaf => 1,
                TreeShape::Node(l, r) => {
                    if **l == TreeShape::Leaf && **r == TreeShape::Leaf {
                        out.insert(start);
                        return 2;
                    }
                    let ln = go(l, start, out);
                    let rn = go(r, start + ln, out);
                    ln + rn
                }
            }
        }
        for t in &self.trees {
            pos += go(t, pos, &mut out);
        }
        out
    }

    /// Removes the terminal node whose left leaf is i, merging leaves i and
    /// i+1. Errors unless i is in qdes.
    pub fn trim_at(&self, i: usize) -> Result<IndexedForest, ForestError> {
        if !self.qdes().contains(&i) {
            return Err(ForestError::NotTrimmable { i });
        }
        fn go(t: &TreeShape, start: usize, i: usize) -> TreeShape {
            match t {
                TreeShape::Leaf => TreeShape::Leaf,
                TreeShape::Node(l, r) => {
                    if **l == TreeShape::Leaf && **r == TreeShape::Leaf && start == i {
                        return TreeShape::Leaf;
                    }
                    let ln = l.num_leaves();
                    TreeShape::Node(
                        Box::new(go(l, start, i)),
                        Box::new(go(r, start + ln, i)),
                    )
                }
            }
        }
        let mut trees = Vec::with_capacity(self.trees.len());
        let mut pos = 1usize;
        for t in &self.trees {
            trees.push(go(t, pos, i));
            pos += t.num_leaves();
        }
        Ok(IndexedForest::new(trees))
    }

    pub fn to_nested(&self) -> NestedForest {
        let mut blocks = Vec::new();
        let mut pos = 1usize;
        for t in &self.trees {
            let n = t.num_leaves();
            if n > 1 {
                blocks.push(((pos..pos + n).collect(), t.clone()));
            }
            pos += n;
        }
        NestedForest::new(blocks).expect("interval blocks are valid")
    }

    pub fn to_marked(&self) -> MarkedNestedForest {
        MarkedNestedForest::with_marks(self.to_nested(), BTreeSet::new())
            .expect("indexed forests have no nested trees")
    }

    /// Parses the textual form `c=(c1,c2,...)`.
    pub fn parse(s: &str) -> Result<IndexedForest, ForestError> {
        let t = s.trim();
        let inner = t
            .strip_prefix("c=(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or(ForestError::Parse { pos: 0, msg: "expected c=(...)".into() })?;
        let mut code = Vec::new();
        if !inner.trim().is_empty() {
            for part in inner.split(',') {
                let v: u32 = part.trim().parse().map_err(|_| ForestError::Parse {
                    pos: 0,
                    msg: format!("bad code entry {part:?}"),
                })?;
                code.push(v);
            }
        }
        Ok(IndexedForest::from_code(&code))
    }
}

impl fmt::Display for IndexedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let code = self.code();
        write!(f, "c=(")?;
        for (i, c) in code.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Forest of trees with pairwise disjoint, noncrossing leaf supports.
/// Positions not covered by a block hold trivial trees.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct NestedForest {
    // (sorted support, shape) sorted by least leaf; |support| >= 2
    blocks: Vec<(Vec<usize>, TreeShape)>,
}

fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    // sorted disjoint supports cross iff the merged origin sequence
    // alternates at least a b a b; an a b a pattern is nesting
    let mut merged: Vec<(usize, bool)> = a.iter().map(|&v| (v, false)).collect();
    merged.extend(b.iter().map(|&v| (v, true)));
    merged.sort();
    let mut runs = 0usize;
    let mut last = None;
    for (_, which) in merged {
        if last != Some(which) {
            runs += 1;
            last = Some(which);
        }
    }
    runs >= 4
}

impl NestedForest {
    pub fn empty() -> Self {
        NestedForest { blocks: Vec::new() }
    }

    pub fn new(mut blocks: Vec<(Vec<usize>, TreeShape)>) -> Result<Self, ForestError> {
        for (supp, shape) in &mut blocks {
            supp.sort_unstable();
            supp.dedup();
            if supp.len() < 2 {
                return Err(ForestError::Invalid("blocks need at least two leaves".into()));
            }
            if supp[0] == 0 {
                return Err(ForestError::Invalid("leaf positions are 1-indexed".into()));
            }
            if shape.num_leaves() != supp.len() {
                return Err(ForestError::Invalid(format!(
                    "shape has {} leaves but support has {}",
                    shape.num_leaves(),
                    supp.len()
                )));
            }
        }
        blocks.sort();
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                let (a, b) = (&blocks[i].0, &blocks[j].0);
                if a.iter().any(|v| b.contains(v)) {
                    return Err(ForestError::Invalid("blocks overlap".into()));
                }
                if blocks_cross(a, b) {
                    return Err(ForestError::Invalid(format!(
                        "blocks {a:?} and {b:?} cross"
                    )));
                }
            }
        }
        Ok(NestedForest { blocks })
    }

    pub fn blocks(&self) -> &[(Vec<usize>, TreeShape)] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of internal nodes.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(|(_, t)| t.num_internal()).sum()
    }

    pub fn max_leaf(&self) -> usize {
        self.blocks.iter().map(|(s, _)| *s.last().unwrap()).max().unwrap_or(0)
    }

    /// Indices of blocks lying strictly inside the span of another block.
    pub fn nested_block_ids(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| {
                let (s, _) = &self.blocks[i];
                self.blocks.iter().enumerate().any(|(j, (o, _))| {
                    j != i && o[0] < s[0] && *s.last().unwrap() < *o.last().unwrap()
                })
            })
            .collect()
    }

    /// Positions inside some block's span that belong to no block (their
    /// trivial trees are nested).
    pub fn nested_trivial_positions(&self) -> Vec<usize> {
        let covered: BTreeSet<usize> =
            self.blocks.iter().flat_map(|(s, _)| s.iter().copied()).collect();
        let mut out = Vec::new();
        for (s, _) in &self.blocks {
            for p in s[0] + 1..*s.last().unwrap() {
                if !covered.contains(&p) && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Every support is an interval and nothing is nested.
    pub fn to_indexed(&self) -> Option<IndexedForest> {
        for (s, _) in &self.blocks {
            if s.last().unwrap() - s[0] + 1 != s.len() {
                return None;
            }
        }
        let mut trees = Vec::new();
        let mut pos = 1usize;
        for (s, t) in &self.blocks {
            while pos < s[0] {
                trees.push(TreeShape::Leaf);
                pos += 1;
            }
            trees.push(t.clone());
            pos += s.len();
        }
        Some(IndexedForest::new(trees))
    }

    /// Marks exactly the nested roots (the minimal legal marking).
    pub fn with_minimal_marks(&self) -> MarkedNestedForest {
        let mut marks = BTreeSet::new();
        for i in self.nested_block_ids() {
            marks.insert(self.blocks[i].0[0]);
        }
        for p in self.nested_trivial_positions() {
            marks.insert(p);
        }
        MarkedNestedForest::with_marks(self.clone(), marks).expect("minimal marking is legal")
    }

    /// Parses a space separated block list like `{1,4}:^.. {2,3}:^..`, or
    /// `{}` for the empty forest. Stars are not allowed here.
    pub fn parse(s: &str) -> Result<NestedForest, ForestError> {
        let (forest, marks) = parse_block_list(s)?;
        if !marks.is_empty() {
            return Err(ForestError::Parse {
                pos: 0,
                msg: "marks are not allowed on an unmarked nested forest".into(),
            });
        }
        Ok(forest)
    }
}

impl fmt::Display for NestedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "{{}}");
        }
        let mut first = true;
        for (s, t) in &self.blocks {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{{")?;
            for (i, p) in s.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "}}:{t}")?;
        }
        Ok(())
    }
}

fn parse_block_list(s: &str) -> Result<(NestedForest, BTreeSet<usize>), ForestError> {
    let trimmed = s.trim();
    if trimmed == "{}" {
        return Ok((NestedForest::empty(), BTreeSet::new()));
    }
    let mut blocks = Vec::new();
    let mut marks = BTreeSet::new();
    let mut singles: Vec<(usize, bool)> = Vec::new();
    for tok in trimmed.split_whitespace() {
        let rest = tok.strip_prefix('{').ok_or(ForestError::Parse {
            pos: 0,
            msg: format!("expected {{...}} block, got {tok:?}"),
        })?;
        let close = rest.find('}').ok_or(ForestError::Parse {
            pos: 0,
            msg: "unterminated block".into(),
        })?;
        let mut supp: Vec<usize> = Vec::new();
        for part in rest[..close].split(',') {
            let v: usize = part.trim().parse().map_err(|_| ForestError::Parse {
                pos: 0,
                msg: format!("bad leaf position {part:?}"),
            })?;
            supp.push(v);
        }
        let mut tail = &rest[close + 1..];
        let marked = if let Some(t) = tail.strip_prefix('*') {
            tail = t;
            true
        } else {
            false
        };
        let shape_str = tail.strip_prefix(':').ok_or(ForestError::Parse {
            pos: 0,
            msg: "expected : and a tree shape after the block".into(),
        })?;
        let shape = TreeShape::parse(shape_str)?;
        if supp.len() == 1 {
            if shape != TreeShape::Leaf {
                return Err(ForestError::Invalid("singleton block must be trivial".into()));
            }
            singles.push((supp[0], marked));
        } else {
            if marked {
                marks.insert(*supp.iter().min().unwrap());
            }
            blocks.push((supp, shape));
        }
    }
    for (p, marked) in singles {
        if marked {
            marks.insert(p);
        }
    }
    Ok((NestedForest::new(blocks)?, marks))
}

/// Nested forest together with a set of marked roots; every nested root must
/// be marked. Marks are keyed by the least leaf of the marked tree; a mark at
/// a position outside every block is a marked trivial tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct MarkedNestedForest {
    forest: NestedForest,
    marks: BTreeSet<usize>,
}

impl MarkedNestedForest {
    pub fn empty() -> Self {
        MarkedNestedForest::default()
    }

    pub fn with_marks(forest: NestedForest, marks: BTreeSet<usize>) -> Result<Self, ForestError> {
        // a mark must sit on a tree root: a block minimum or a trivial position
        for &m in &marks {
            if m == 0 {
                return Err(ForestError::Invalid("marks are 1-indexed".into()));
            }
            let in_block = forest.blocks.iter().any(|(s, _)| s.contains(&m));
            let is_min = forest.blocks.iter().any(|(s, _)| s[0] == m);
            if in_block && !is_min {
                return Err(ForestError::Invalid(format!(
                    "mark at {m} is not a tree root"
                )));
            }
        }
        for i in forest.nested_block_ids() {
            let root = forest.blocks[i].0[0];
            if !marks.contains(&root) {
                return Err(ForestError::Invalid(format!(
                    "nested root at {root} must be marked"
                )));
            }
        }
        for p in forest.nested_trivial_positions() {
            if !marks.contains(&p) {
                return Err(ForestError::Invalid(format!(
                    "nested trivial tree at {p} must be marked"
                )));
            }
        }
        Ok(MarkedNestedForest { forest, marks })
    }

    pub fn forest(&self) -> &NestedForest {
        &self.forest
    }

    pub fn marks(&self) -> &BTreeSet<usize> {
        &self.marks
    }

    pub fn forget_marks(&self) -> NestedForest {
        self.forest.clone()
    }

    /// Number of internal nodes.
    pub fn size(&self) -> usize {
        self.forest.size()
    }

    pub fn to_indexed(&self) -> Option<IndexedForest> {
        if !self.marks.is_empty() {
            return None;
        }
        self.forest.to_indexed()
    }

    fn max_position(&self) -> usize {
        self.forest.max_leaf().max(self.marks.iter().next_back().copied().unwrap_or(0))
    }

    /// Right multiplication by the generator "wedge at i": the i-th leaf
    /// gets two children.
    pub fn mul_wedge(&self, i: usize) -> MarkedNestedForest {
        assert!(i >= 1);
        let shift = |v: usize| if v > i { v + 1 } else { v };
        let mut blocks = Vec::with_capacity(self.forest.blocks.len());
        let mut grown = false;
        for (s, t) in &self.forest.blocks {
            if let Some(k) = s.iter().position(|&v| v == i) {
                let mut ns: Vec<usize> = s.iter().map(|&v| shift(v)).collect();
                ns.insert(k + 1, i + 1);
                blocks.push((ns, t.grow_leaf(k)));
                grown = true;
            } else {
                blocks.push((s.iter().map(|&v| shift(v)).collect(), t.clone()));
            }
        }
        if !grown {
            blocks.push((vec![i, i + 1], TreeShape::wedge()));
        }
        let marks = self.marks.iter().map(|&m| shift(m)).collect();
        let forest = NestedForest::new(blocks).expect("wedge growth keeps blocks legal");
        MarkedNestedForest::with_marks(forest, marks).expect("wedge growth keeps marks legal")
    }

    /// Right multiplication by the generator "marked trivial tree before
    /// position i": inserts a marked leaf at position i.
    pub fn mul_mark(&self, i: usize) -> MarkedNestedForest {
        assert!(i >= 1);
        let shift = |v: usize| if v >= i { v + 1 } else { v };
        let blocks = self
            .forest
            .blocks
            .iter()
            .map(|(s, t)| (s.iter().map(|&v| shift(v)).collect(), t.clone()))
            .collect();
        let mut marks: BTreeSet<usize> = self.marks.iter().map(|&m| shift(m)).collect();
        marks.insert(i);
        let forest = NestedForest::new(blocks).expect("insertion keeps blocks legal");
        MarkedNestedForest::with_marks(forest, marks).expect("insertion keeps marks legal")
    }

    /// Augmented code: entry i is (mark flag, number of internal nodes whose
    /// leftmost leaf descendant is i). Trailing (false, 0) trimmed.
    pub fn aug_code(&self) -> Vec<(bool, u32)> {
        let maxpos = self.max_position();
        let mut c = vec![0u32; maxpos];
        fn go(t: &TreeShape, supp: &[usize], local: usize, c: &mut [u32]) -> usize {
            match t {
                TreeShape::Leaf => 1,
                TreeShape::Node(l, r) => {
                    c[supp[local] - 1] += 1;
                    let ln = go(l, supp, local, c);
                    let rn = go(r, supp, local + ln, c);
                    ln + rn
                }
            }
        }
        for (s, t) in &self.forest.blocks {
            go(t, s, 0, &mut c);
        }
        let mut out: Vec<(bool, u32)> = (1..=maxpos)
            .map(|i| (self.marks.contains(&i), c[i - 1]))
            .collect();
        while out.last() == Some(&(false, 0)) {
            out.pop();
        }
        out
    }

    /// Inverse of `aug_code`: the generator product
    /// 1o^{e_1} 1^{c_1} 2o^{e_2} 2^{c_2} ...
    pub fn from_aug_code(code: &[(bool, u32)]) -> MarkedNestedForest {
        let mut f = MarkedNestedForest::empty();
        for (i, &(eps, c)) in code.iter().enumerate() {
            if eps {
                f = f.mul_mark(i + 1);
            }
            for _ in 0..c {
                f = f.mul_wedge(i + 1);
            }
        }
        f
    }

    /// Monoid product: the i-th leaf of self is identified with the i-th
    /// unmarked root of other; marked trees of other stay put.
    pub fn product(&self, other: &MarkedNestedForest) -> MarkedNestedForest {
        // materialize self's trees in position order
        let top_max = self.max_position();
        #[derive(Clone)]
        struct Entry {
            supp: Vec<usize>,
            shape: TreeShape,
            marked: bool,
        }
        let mut top: Vec<Entry> = Vec::new();
        {
            let mut p = 1usize;
            while p <= top_max {
                if let Some((s, t)) = self.forest.blocks.iter().find(|(s, _)| s[0] == p) {
                    top.push(Entry { supp: s.clone(), shape: t.clone(), marked: self.marks.contains(&p) });
                    // advance past the smallest uncovered position
                } else if self.forest.blocks.iter().all(|(s, _)| !s.contains(&p)) {
                    top.push(Entry {
                        supp: vec![p],
                        shape: TreeShape::Leaf,
                        marked: self.marks.contains(&p),
                    });
                }
                p += 1;
            }
        }
        let top_leaves: usize = top_max;

        // materialize enough of other's trees to serve top_leaves unmarked
        // roots; everything in other beyond the served prefix passes through
        let mut bottom: Vec<Entry> = Vec::new();
        {
            let bot_max = other.max_position();
            let mut p = 1usize;
            let mut unmarked = 0usize;
            let mut fresh = bot_max + 1;
            loop {
                if p <= bot_max {
                    if let Some((s, t)) = other.forest.blocks.iter().find(|(s, _)| s[0] == p) {
                        let marked = other.marks.contains(&p);
                        bottom.push(Entry { supp: s.clone(), shape: t.clone(), marked });
                        if !marked {
                            unmarked += 1;
                        }
                    } else if other.forest.blocks.iter().all(|(s, _)| !s.contains(&p)) {
                        let marked = other.marks.contains(&p);
                        bottom.push(Entry { supp: vec![p], shape: TreeShape::Leaf, marked });
                        if !marked {
                            unmarked += 1;
                        }
                    }
                    p += 1;
                } else {
                    if unmarked >= top_leaves {
                        break;
                    }
                    bottom.push(Entry { supp: vec![fresh], shape: TreeShape::Leaf, marked: false });
                    fresh += 1;
                    unmarked += 1;
                }
            }
        }

        // graft: the j-th leaf position of self consumes the j-th unmarked
        // bottom tree, so a top tree draws the pool entries at its own leaf
        // positions (supports interleave when trees are nested)
        fn graft(shape: &TreeShape, parts: &mut Vec<(Vec<usize>, TreeShape)>) -> (Vec<usize>, TreeShape) {
            match shape {
                TreeShape::Leaf => parts.remove(0),
                TreeShape::Node(l, r) => {
                    let (ls, lt) = graft(l, parts);
                    let (rs, rt) = graft(r, parts);
                    let mut supp = ls;
                    supp.extend(rs);
                    (supp, TreeShape::Node(Box::new(lt), Box::new(rt)))
                }
            }
        }

        let mut result: Vec<Entry> = Vec::new();
        let mut unmarked_pool: Vec<(Vec<usize>, TreeShape)> = Vec::new();
        let mut marked_passthrough: Vec<Entry> = Vec::new();
        for e in &bottom {
            if e.marked {
                marked_passthrough.push(e.clone());
            } else {
                unmarked_pool.push((e.supp.clone(), e.shape.clone()));
            }
        }
        for e in &top {
            let mut parts: Vec<(Vec<usize>, TreeShape)> =
                e.supp.iter().map(|&p| unmarked_pool[p - 1].clone()).collect();
            let (supp, shape) = graft(&e.shape, &mut parts);
            assert!(parts.is_empty());
            result.push(Entry { supp, shape, marked: e.marked });
        }
        // unmarked bottom trees not under any top leaf pass through
        for (k, (supp, shape)) in unmarked_pool.into_iter().enumerate() {
            if k >= top_leaves {
                result.push(Entry { supp, shape, marked: false });
            }
        }
        result.extend(marked_passthrough);

        let mut blocks = Vec::new();
        let mut marks = BTreeSet::new();
        for e in result {
            if e.marked {
                marks.insert(*e.supp.iter().min().unwrap());
            }
            if e.supp.len() >= 2 {
                blocks.push((e.supp, e.shape));
            }
        }
        let forest = NestedForest::new(blocks).expect("graft product keeps blocks noncrossing");
        MarkedNestedForest::with_marks(forest, marks).expect("graft product keeps marks legal")
    }

    /// Parses a block list where marked blocks carry a star: `{2,3}*:^..`.
    pub fn parse(s: &str) -> Result<MarkedNestedForest, ForestError> {
        let (forest, marks) = parse_block_list(s)?;
        MarkedNestedForest::with_marks(forest, marks)
    }
}

impl fmt::Display for MarkedNestedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covered: BTreeSet<usize> = self
            .forest
            .blocks
            .iter()
            .flat_map(|(s, _)| s.iter().copied())
            .collect();
        let mut items: Vec<(usize, String)> = Vec::new();
        for (s, t) in &self.forest.blocks {
            let star = if self.marks.contains(&s[0]) { "*" } else { "" };
            let supp: Vec<String> = s.iter().map(|p| p.to_string()).collect();
            items.push((s[0], format!("{{{}}}{}:{}", supp.join(","), star, t)));
        }
        for &m in &self.marks {
            if !covered.contains(&m) {
                items.push((m, format!("{{{m}}}*:.")));
            }
        }
        items.sort();
        if items.is_empty() {
            return write!(f, "{{}}");
        }
        let strs: Vec<String> = items.into_iter().map(|(_, s)| s).collect();
        write!(f, "{}", strs.join(" "))
    }
}

/// Applies T_F = T_1^{c_1} ... T_k^{c_k} (rightmost factor first).
pub fn apply_forest(forest: &IndexedForest, f: &MultiPoly) -> MultiPoly {
    let code = forest.code();
    let mut acc = f.clone();
    for i in (1..=code.len()).rev() {
        for _ in 0..code[i - 1] {
            acc = t_op(i, &acc);
            if acc.is_zero() {
                return acc;
            }
        }
    }
    acc
}

/// Indexed forests whose nontrivial trees have all leaves in 1..=n, sorted by
/// code in lexicographic order.
pub fn enumerate_suppfor(n: usize, bound: usize) -> Result<Vec<IndexedForest>, ForestError> {
    if n > bound {
        return Err(ForestError::BoundExceeded { n, bound });
    }
    fn go(start: usize, n: usize, acc: &mut Vec<TreeShape>, out: &mut Vec<IndexedForest>) {
        out.push(IndexedForest::new(acc.clone()));
        // place the next nontrivial tree on leaves [a..=b] for start <= a < b <= n
        for a in start..=n {
            for b in (a + 1)..=n {
                for shape in TreeShape::enumerate(b - a + 1) {
                    let mut next = acc.clone();
                    while next.iter().map(|t| t.num_leaves()).sum::<usize>() < a - 1 {
                        next.push(TreeShape::Leaf);
                    }
                    next.push(shape);
                    go(b + 1, n, &mut next, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    go(1, n, &mut acc, &mut out);
    out.sort_by(|a, b| a.code().cmp(&b.code()));
    out.dedup();
    Ok(out)
}

/// Nested forests supported in 1..=n (all later leaves trivial), in a fixed
/// deterministic order.
pub fn enumerate_nsuppfor(n: usize, bound: usize) -> Result<Vec<NestedForest>, ForestError> {
    if n > bound {
        return Err(ForestError::BoundExceeded { n, bound });
    }
    // noncrossing families of disjoint blocks of size >= 2 on the ordered
    // ground set, then all shapes per block
    fn families(ground: &[usize]) -> Vec<Vec<Vec<usize>>> {
        if ground.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        // first element unused
        for mut fam in families(&ground[1..]) {
            fam.sort();
            out.push(fam);
        }
        // first element in a block: choose the rest of its support
        let first = ground[0];
        let rest = &ground[1..];
        for mask in 1u32..(1 << rest.len()) {
            let chosen: Vec<usize> = (0..rest.len()).filter(|&k| mask & (1 << k) != 0).map(|k| rest[k]).collect();
            let mut block = vec![first];
            block.extend(&chosen);
            // segments between consecutive chosen block elements and after
            let mut segments: Vec<Vec<usize>> = Vec::new();
            let mut cur: Vec<usize> = Vec::new();
            for &g in rest {
                if block.contains(&g) {
                    segments.push(std::mem::take(&mut cur));
                } else {
                    cur.push(g);
                }
            }
            segments.push(cur);
            // cartesian product of families over the segments
            let mut combined: Vec<Vec<Vec<usize>>> = vec![vec![block.clone()]];
            for seg in &segments {
                let subs = families(seg);
                let mut next = Vec::new();
                for base in &combined {
                    for sub in &subs {
                        let mut fam = base.clone();
                        fam.extend(sub.iter().cloned());
                        next.push(fam);
                    }
                }
                combined = next;
            }
            for mut fam in combined {
                fam.sort();
                out.push(fam);
            }
        }
        out.sort();
        out.dedup();
        out
    }
    let ground: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    for fam in families(&ground) {
        let mut choices: Vec<Vec<(Vec<usize>, TreeShape)>> = vec![Vec::new()];
        for block in &fam {
            let shapes = TreeShape::enumerate(block.len());
            let mut next = Vec::new();
            for base in &choices {
                for sh in &shapes {
                    let mut b = base.clone();
                    b.push((block.clone(), sh.clone()));
                    next.push(b);
                }
            }
            choices = next;
        }
        for blocks in choices {
            out.push(NestedForest::new(blocks).expect("enumerated blocks are valid"));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Constant term of the trimming functional of the nested forest F applied
/// to the monomial x^c: 0 unless the length-c_i upward paths from the leaves
/// exist and partition the internal nodes, in which case it is (-1)^m where
/// m counts path edges arriving at a right child.
pub fn ct_monomial(forest: &NestedForest, c: &[u32]) -> i64 {
    // per-block: parent chains. Node ids are (block, preorder index).
    struct NodeInfo {
        parent: Option<usize>,
        is_right_child: bool,
    }
    let mut total_internal = 0usize;
    let mut visited_count = 0usize;
    let mut sign_edges = 0usize;

    // leaf position -> (block id, ancestor chain node ids bottom-up)
    let mut used: Vec<Vec<bool>> = Vec::new();
    let mut leaf_chain: std::collections::BTreeMap<usize, (usize, Vec<(usize, bool)>)> =
        std::collections::BTreeMap::new();

    for (bi, (supp, shape)) in forest.blocks().iter().enumerate() {
        let mut nodes: Vec<NodeInfo> = Vec::new();
        // assign ids in preorder; record for each leaf its chain of
        // ancestors with the flag "this step arrives from a right child"
        fn walk(
            t: &TreeShape,
            parent: Option<usize>,
            is_right: bool,
            supp: &[usize],
            local: usize,
            nodes: &mut Vec<NodeInfo>,
            chains: &mut Vec<(usize, Vec<(usize, bool)>)>,
        ) -> usize {
            match t {
                TreeShape::Leaf => {
                    // chain: walk up via parents
                    let mut chain = Vec::new();
                    let mut cur = parent;
                    let mut from_right = is_right;
                    while let Some(p) = cur {
                        chain.push((p, from_right));
                        from_right = nodes[p].is_right_child;
                        cur = nodes[p].parent;
                    }
                    chains.push((supp[local], chain));
                    1
                }
                TreeShape::Node(l, r) => {
                    let id = nodes.len();
                    nodes.push(NodeInfo { parent, is_right_child: is_right });
                    let ln = walk(l, Some(id), false, supp, local, nodes, chains);
                    let rn = walk(r, Some(id), true, supp, local + ln, nodes, chains);
                    ln + rn
                }
            }
        }
        let mut chains = Vec::new();
        walk(shape, None, false, supp, 0, &mut nodes, &mut chains);
        total_internal += nodes.len();
        used.push(vec![false; nodes.len()]);
        for (pos, chain) in chains {
            leaf_chain.insert(pos, (bi, chain));
        }
    }

    for (idx, &ci) in c.iter().enumerate() {
        if ci == 0 {
            continue;
        }
        let pos = idx + 1;
        let Some((bi, chain)) = leaf_chain.get(&pos) else {
            return 0; // trivial leaf cannot absorb a positive exponent
        };
        if chain.len() < ci as usize {
            return 0;
        }
        for step in 0..ci as usize {
            let (node, from_right) = chain[step];
            if used[*bi][node] {
                return 0; // paths must be disjoint
            }
            used[*bi][node] = true;
            visited_count += 1;
            if from_right {
                sign_edges += 1;
            }
        }
    }
    if visited_count != total_internal {
        return 0; // paths must cover every internal node
    }
    if sign_edges % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::ct;
    use crate::poly::{MultiPoly, Ring, Scalar};

    #[test]
    fn shape_parse_display() {
        for s in [".", "^..", "^^...", "^.^..", "^^..^.."] {
            let t = TreeShape::parse(s).unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert!(TreeShape::parse("^.").is_err());
        assert!(TreeShape::parse("..").is_err());
        assert_eq!(TreeShape::enumerate(3).len(), 2);
        assert_eq!(TreeShape::enumerate(4).len(), 5);
    }

    #[test]
    fn code_round_trip() {
        let f = IndexedForest::wedge_at(2);
        assert_eq!(f.code(), vec![0, 1]);
        assert_eq!(IndexedForest::from_code(&[0, 1]), f);
        let left_comb = IndexedForest::from_code(&[2]);
        assert_eq!(left_comb.trees().len(), 1);
        assert_eq!(left_comb.trees()[0].to_string(), "^^...");
        let right_comb = IndexedForest::from_code(&[1, 1]);
        assert_eq!(right_comb.trees()[0].to_string(), "^.^..");
        for code in [vec![], vec![1], vec![2, 1], vec![0, 3, 0, 1], vec![1, 0, 2]] {
            assert_eq!(IndexedForest::from_code(&code).code(), code);
        }
    }

    #[test]
    fn forest_text_forms() {
        let f = IndexedForest::from_code(&[2, 0, 1]);
        assert_eq!(f.to_string(), "c=(2,0,1)");
        assert_eq!(IndexedForest::parse("c=(2,0,1)").unwrap(), f);
        assert_eq!(IndexedForest::parse("c=()").unwrap(), IndexedForest::empty());
        assert!(IndexedForest::parse("(2,1)").is_err());

        let nested = NestedForest::new(vec![
            (vec![1, 4], TreeShape::wedge()),
            (vec![2, 3], TreeShape::wedge()),
        ])
        .unwrap();
        assert_eq!(nested.to_string(), "{1,4}:^.. {2,3}:^..");
        assert_eq!(NestedForest::parse("{1,4}:^.. {2,3}:^..").unwrap(), nested);
        assert_eq!(NestedForest::parse("{}").unwrap(), NestedForest::empty());

        let marked = nested.with_minimal_marks();
        assert_eq!(marked.to_string(), "{1,4}:^.. {2,3}*:^..");
        assert_eq!(MarkedNestedForest::parse("{1,4}:^.. {2,3}*:^..").unwrap(), marked);
        let with_trivial = MarkedNestedForest::parse("{1,3}:^.. {2}*:.").unwrap();
        assert_eq!(with_trivial.to_string(), "{1,3}:^.. {2}*:.");
    }

    #[test]
    fn crossing_blocks_rejected() {
        assert!(NestedForest::new(vec![
            (vec![1, 3], TreeShape::wedge()),
            (vec![2, 4], TreeShape::wedge()),
        ])
        .is_err());
        // nesting is fine
        assert!(NestedForest::new(vec![
            (vec![1, 4], TreeShape::wedge()),
            (vec![2, 3], TreeShape::wedge()),
        ])
        .is_ok());
        // unmarked nested root rejected at the marked level
        let nested = NestedForest::new(vec![
            (vec![1, 4], TreeShape::wedge()),
            (vec![2, 3], TreeShape::wedge()),
        ])
        .unwrap();
        assert!(MarkedNestedForest::with_marks(nested.clone(), BTreeSet::new()).is_err());
        assert!(MarkedNestedForest::with_marks(nested, BTreeSet::from([2])).is_ok());
        // trivial tree inside a span must be marked
        let gap = NestedForest::new(vec![(vec![1, 3], TreeShape::wedge())]).unwrap();
        assert!(MarkedNestedForest::with_marks(gap.clone(), BTreeSet::new()).is_err());
        assert!(MarkedNestedForest::with_marks(gap, BTreeSet::from([2])).is_ok());
    }

    #[test]
    fn qdes_and_trim() {
        // left comb on 1..3 and wedge at 5
        let f = IndexedForest::from_code(&[2, 0, 0, 0, 1]);
        assert_eq!(f.qdes(), BTreeSet::from([1, 5]));
        let trimmed = f.trim_at(1).unwrap();
        assert_eq!(trimmed.code(), vec![1, 0, 0, 1]);
        assert!(f.trim_at(2).is_err());
        // trimming undoes the wedge generator: F = (F/i) * wedge_i
        let g = IndexedForest::from_code(&[1, 2]);
        for i in g.qdes() {
            let trimmed = g.trim_at(i).unwrap();
            assert_eq!(trimmed.product(&IndexedForest::wedge_at(i)), g);
        }
    }

    #[test]
    fn monoid_relations_indexed() {
        let f = IndexedForest::from_code(&[1, 0, 1]);
        let fm = f.to_marked();
        for j in 1..5usize {
            for i in (j + 1)..6usize {
                let a = fm.mul_wedge(i).mul_wedge(j);
                let b = fm.mul_wedge(j).mul_wedge(i + 1);
                assert_eq!(a, b, "wedge relation at ({i},{j})");
            }
        }
    }

    #[test]
    fn monoid_relations_marked() {
        let base = MarkedNestedForest::empty()
            .mul_wedge(2)
            .mul_mark(2)
            .mul_wedge(1);
        for j in 1..4usize {
            for i in j..5usize {
                // i . j_o = j_o . (i+1), i >= j
                let a = base.mul_wedge(i).mul_mark(j);
                let b = base.mul_mark(j).mul_wedge(i + 1);
                assert_eq!(a, b, "wedge then mark at ({i},{j})");
                // i_o . j_o = j_o . (i+1)_o, i >= j
                let a = base.mul_mark(i).mul_mark(j);
                let b = base.mul_mark(j).mul_mark(i + 1);
                assert_eq!(a, b, "mark mark at ({i},{j})");
                if i > j {
                    // i_o . j = j . (i+1)_o, i > j
                    let a = base.mul_mark(i).mul_wedge(j);
                    let b = base.mul_wedge(j).mul_mark(i + 1);
                    assert_eq!(a, b, "mark then wedge at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn aug_code_round_trip() {
        let f = MarkedNestedForest::empty()
            .mul_mark(1)
            .mul_wedge(1)
            .mul_wedge(3)
            .mul_mark(2)
            .mul_wedge(2);
        let code = f.aug_code();
        assert_eq!(MarkedNestedForest::from_aug_code(&code), f);
        // the generator-word normal form matches the code directly
        let g = MarkedNestedForest::empty()
            .mul_mark(1)
            .mul_wedge(1)
            .mul_wedge(1)
            .mul_wedge(2);
        assert_eq!(g.aug_code(), vec![(true, 2), (false, 1)]);
        // a bare marked trivial tree
        let h = MarkedNestedForest::empty().mul_mark(3);
        assert_eq!(h.aug_code(), vec![(false, 0), (false, 0), (true, 0)]);
    }

    #[test]
    fn product_matches_generator_fold() {
        let gens: Vec<MarkedNestedForest> = vec![
            MarkedNestedForest::empty().mul_wedge(1).mul_mark(2).mul_wedge(2),
            MarkedNestedForest::empty().mul_mark(1).mul_wedge(3),
            MarkedNestedForest::empty().mul_wedge(2).mul_wedge(1),
            MarkedNestedForest::empty(),
        ];
        for a in &gens {
            for b in &gens {
                // fold b's augmented code into right multiplications
                let mut folded = a.clone();
                for (i, &(eps, c)) in b.aug_code().iter().enumerate() {
                    if eps {
                        folded = folded.mul_mark(i + 1);
                    }
                    for _ in 0..c {
                        folded = folded.mul_wedge(i + 1);
                    }
                }
                assert_eq!(a.product(b), folded, "product mismatch");
            }
        }
    }

    #[test]
    fn product_identifies_leaves_with_unmarked_roots() {
        // bottom: marked trivial at 1, wedge on {2,3}; top: wedge at 1.
        // the top wedge grafts onto the bottom wedge (first unmarked root),
        // and the marked trivial tree stays in front.
        let bottom = MarkedNestedForest::empty().mul_mark(1).mul_wedge(2);
        let top = MarkedNestedForest::empty().mul_wedge(1);
        let prod = top.product(&bottom);
        assert_eq!(prod.to_string(), "{1}*:. {2,3,4}:^^...");
        // right multiplication by a generator forest is mul_wedge
        let gen1 = MarkedNestedForest::empty().mul_wedge(1);
        assert_eq!(bottom.product(&gen1), bottom.mul_wedge(1));
        let gen3 = MarkedNestedForest::empty().mul_mark(3);
        assert_eq!(bottom.product(&gen3), bottom.mul_mark(3));
    }

    #[test]
    fn suppfor_counts() {
        let f3 = enumerate_suppfor(3, 8).unwrap();
        assert_eq!(f3.len(), 5);
        let by_size = |forests: &[IndexedForest], k: usize| {
            forests.iter().filter(|f| f.size() == k).count()
        };
        assert_eq!(by_size(&f3, 0), 1);
        assert_eq!(by_size(&f3, 1), 2);
        assert_eq!(by_size(&f3, 2), 2);
        let f4 = enumerate_suppfor(4, 8).unwrap();
        assert_eq!(f4.len(), 14);
        assert!(enumerate_suppfor(9, 8).is_err());
        // codes are sorted and unique
        let codes: Vec<Vec<u32>> = f3.iter().map(|f| f.code()).collect();
        let mut sorted = codes.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(codes, sorted);
    }

    #[test]
    fn nsuppfor_counts() {
        // N(1) = 1 (empty), N(2) = 2, N(3): blocks on [1..3]
        assert_eq!(enumerate_nsuppfor(1, 8).unwrap().len(), 1);
        assert_eq!(enumerate_nsuppfor(2, 8).unwrap().len(), 2);
        let n3 = enumerate_nsuppfor(3, 8).unwrap();
        // families: {}, {12}, {13}, {23}, {123} with 2 shapes
        assert_eq!(n3.len(), 1 + 3 + 2);
        // block families biject with noncrossing partitions (add singletons),
        // so n = 4 has 14 families: 1 empty + 6 pairs + 2 disjoint pair
        // choices + 4 triples (2 shapes each) + 1 quadruple (5 shapes)
        assert_eq!(enumerate_nsuppfor(4, 8).unwrap().len(), 1 + 6 + 2 + 8 + 5);
        // every indexed forest appears among nested ones
        let f3 = enumerate_suppfor(3, 8).unwrap();
        for f in &f3 {
            assert!(n3.contains(&f.to_nested()), "{f} missing");
        }
    }

    #[test]
    fn ct_monomial_anchors() {
        let wedge1 = IndexedForest::wedge_at(1).to_nested();
        assert_eq!(ct_monomial(&wedge1, &[1]), 1);
        assert_eq!(ct_monomial(&wedge1, &[0, 1]), -1);
        assert_eq!(ct_monomial(&wedge1, &[2]), 0);
        assert_eq!(ct_monomial(&wedge1, &[0]), 0);
        assert_eq!(ct_monomial(&wedge1, &[1, 1]), 0);
    }

    #[test]
    fn ct_monomial_matches_operator_calculus() {
        // oracle: ct T_F x^c computed through the operators, for indexed F
        let forests = enumerate_suppfor(4, 8).unwrap();
        let mut exps: Vec<Vec<u32>> = Vec::new();
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..2u32 {
                    for d in 0..2u32 {
                        exps.push(vec![a, b, c, d]);
                    }
                }
            }
        }
        for f in &forests {
            let nested = f.to_nested();
            for e in &exps {
                let mono = MultiPoly::monomial(Ring::Int, e.clone(), Scalar::one());
                let via_ops = ct(&apply_forest(f, &mono));
                let via_paths = Scalar::from_int(ct_monomial(&nested, e));
                assert_eq!(
                    via_ops, via_paths,
                    "forest {f} monomial {e:?}"
                );
            }
        }
    }

    #[test]
    fn apply_forest_matches_word() {
        use crate::ops::{apply_word, Letter, RTWord};
        let f = IndexedForest::from_code(&[1, 1]);
        let poly = MultiPoly::parse("x1^2*x2 + x3*x2 - x1").unwrap();
        let word = RTWord::new(vec![Letter::T(1), Letter::T(2)]);
        assert_eq!(apply_forest(&f, &poly), apply_word(&word, &poly));
    }
}
