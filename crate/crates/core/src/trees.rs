//! Rooted trees with unlabeled leaves and no bivalent vertices.
//!
//! A [`Tree`] is the subtree hanging from the root edge: either a leaf or an
//! internal vertex with at least two children. The univalent root vertex is
//! left implicit. Children are stored in canonical order so isomorphic trees
//! have identical [`Tree::key`]s.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::{multiplicities, multisets, partitions, set_partitions};
use crate::error::{domain, Result};
use crate::numerics::factorial;

#[derive(Debug)]
struct Node {
    children: Vec<Tree>,
    leaves: usize,
    key: String,
    aut: BigInt,
}

/// Unordered rooted tree. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Tree(Arc<Node>);

impl Tree {
    pub fn leaf() -> Tree {
        Tree(Arc::new(Node {
            children: Vec::new(),
            leaves: 1,
            key: "L".to_string(),
            aut: BigInt::one(),
        }))
    }

    /// Internal vertex over `children`, which may be given in any order.
    pub fn node(mut children: Vec<Tree>) -> Result<Tree> {
        if children.len() < 2 {
            return Err(domain(format!(
                "internal vertices need at least two children, got {}",
                children.len()
            )));
        }
        children.sort_by(|a, b| a.key().cmp(b.key()));
        let leaves = children.iter().map(Tree::leaf_count).sum();
        let mut key = String::from("(");
        for c in &children {
            key.push_str(c.key());
        }
        key.push(')');
        let keys: Vec<&str> = children.iter().map(Tree::key).collect();
        let aut = multiplicities(&keys)
            .into_iter()
            .fold(BigInt::one(), |acc, m| acc * factorial(m))
            * children
                .iter()
                .fold(BigInt::one(), |acc, c| acc * c.aut_order());
        Ok(Tree(Arc::new(Node {
            children,
            leaves,
            key,
            aut,
        })))
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    pub fn children(&self) -> &[Tree] {
        &self.0.children
    }

    pub fn leaf_count(&self) -> usize {
        self.0.leaves
    }

    /// Canonical encoding: `L` for a leaf, otherwise the sorted child
    /// encodings in parentheses.
    pub fn key(&self) -> &str {
        &self.0.key
    }

    /// `|Aut(T)|`.
    pub fn aut_order(&self) -> &BigInt {
        &self.0.aut
    }

    pub fn internal_count(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self
                .children()
                .iter()
                .map(Tree::internal_count)
                .sum::<usize>()
        }
    }

    /// One entry per internal vertex, in preorder from the root side.
    pub fn vertex_data(&self) -> Vec<VertexInfo> {
        let mut out = Vec::new();
        self.collect_vertices(&mut out);
        out
    }

    fn collect_vertices(&self, out: &mut Vec<VertexInfo>) {
        if self.is_leaf() {
            return;
        }
        out.push(VertexInfo {
            leaf_number: self.leaf_count(),
            valency: self.children().len() + 1,
            movable: self.children().iter().all(Tree::is_leaf),
            child_leaf_numbers: self.children().iter().map(Tree::leaf_count).collect(),
        });
        for c in self.children() {
            c.collect_vertices(out);
        }
    }

    /// Parses the canonical encoding back into a tree.
    pub fn parse(s: &str) -> Result<Tree> {
        fn go(b: &[u8], pos: &mut usize) -> Result<Tree> {
            match b.get(*pos) {
                Some(b'L') => {
                    *pos += 1;
                    Ok(Tree::leaf())
                }
                Some(b'(') => {
                    *pos += 1;
                    let mut kids = Vec::new();
                    while b.get(*pos) != Some(&b')') {
                        if *pos >= b.len() {
                            return Err(domain("unbalanced tree encoding"));
                        }
                        kids.push(go(b, pos)?);
                    }
                    *pos += 1;
                    Tree::node(kids)
                }
                _ => Err(domain(format!("unexpected byte at {pos} in tree encoding"))),
            }
        }
        let mut pos = 0;
        let t = go(s.as_bytes(), &mut pos)?;
        if pos != s.len() {
            return Err(domain("trailing characters in tree encoding"));
        }
        Ok(t)
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Tree {}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Per-vertex data used by the tree formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexInfo {
    /// Number of leaves above the vertex.
    pub leaf_number: usize,
    /// Children plus the outgoing edge.
    pub valency: usize,
    /// No internal vertex lies above this one.
    pub movable: bool,
    pub child_leaf_numbers: Vec<usize>,
}

fn tree_cache() -> &'static Mutex<Vec<Arc<Vec<Tree>>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<Vec<Tree>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Arc::new(Vec::new()), Arc::new(vec![Tree::leaf()])]))
}

/// One representative of every isomorphism class of trees with `d` leaves,
/// sorted by canonical key.
pub fn enumerate_trees(d: usize) -> Result<Arc<Vec<Tree>>> {
    if d == 0 {
        return Err(domain("trees need at least one leaf"));
    }
    let mut cache = tree_cache().lock().expect("tree cache poisoned");
    while cache.len() <= d {
        let n = cache.len();
        let level = trees_of_size(n, &cache);
        cache.push(Arc::new(level));
    }
    Ok(cache[d].clone())
}

fn trees_of_size(n: usize, smaller: &[Arc<Vec<Tree>>]) -> Vec<Tree> {
    let mut found: BTreeMap<String, Tree> = BTreeMap::new();
    for parts in partitions(n).into_iter().filter(|p| p.len() >= 2) {
        // For each distinct part size s with multiplicity m, choose a
        // multiset of m trees with s leaves.
        let mut groups: Vec<Vec<Vec<Tree>>> = Vec::new();
        let mut idx = 0;
        for m in multiplicities(&parts) {
            let pool = &smaller[parts[idx]];
            groups.push(
                multisets(pool.len(), m)
                    .into_iter()
                    .map(|sel| sel.into_iter().map(|i| pool[i].clone()).collect())
                    .collect(),
            );
            idx += m;
        }
        let mut combos: Vec<Vec<Tree>> = vec![Vec::new()];
        for g in &groups {
            combos = combos
                .iter()
                .flat_map(|prefix| {
                    g.iter().map(move |choice| {
                        let mut v = prefix.clone();
                        v.extend(choice.iter().cloned());
                        v
                    })
                })
                .collect();
        }
        for kids in combos {
            let t = Tree::node(kids).expect("at least two parts");
            found.entry(t.key().to_string()).or_insert(t);
        }
    }
    found.into_values().collect()
}

/// `|T^or_d| = sum over T of d!/|Aut(T)|`.
pub fn ordered_count(d: usize) -> Result<BigInt> {
    let total = factorial(d);
    let mut acc = BigInt::zero();
    for t in enumerate_trees(d)?.iter() {
        let (q, r) = (&total / t.aut_order(), &total % t.aut_order());
        debug_assert!(r.is_zero(), "|Aut| must divide d!");
        acc += q;
    }
    Ok(acc)
}

/// Rooted tree whose leaves carry distinct labels `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderedTree {
    Leaf(usize),
    Node(Vec<OrderedTree>),
}

impl OrderedTree {
    pub fn internal_count(&self) -> usize {
        match self {
            OrderedTree::Leaf(_) => 0,
            OrderedTree::Node(kids) => {
                1 + kids.iter().map(OrderedTree::internal_count).sum::<usize>()
            }
        }
    }

    pub fn leaf_labels(&self) -> Vec<usize> {
        match self {
            OrderedTree::Leaf(l) => vec![*l],
            OrderedTree::Node(kids) => kids.iter().flat_map(OrderedTree::leaf_labels).collect(),
        }
    }

    /// The underlying unordered tree.
    pub fn shape(&self) -> Tree {
        match self {
            OrderedTree::Leaf(_) => Tree::leaf(),
            OrderedTree::Node(kids) => {
                Tree::node(kids.iter().map(OrderedTree::shape).collect()).expect("valid node")
            }
        }
    }
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderedTree::Leaf(l) => write!(f, "{}", l + 1),
            OrderedTree::Node(kids) => {
                write!(f, "(")?;
                for (n, k) in kids.iter().enumerate() {
                    if n > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{k}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// One representative of every isomorphism class of trees with leaves
/// labeled `0..k`. A tree on a label set is a leaf, or a vertex whose
/// children split the set into at least two blocks.
pub fn enumerate_ordered_trees(k: usize) -> Result<Vec<OrderedTree>> {
    if k == 0 {
        return Err(domain("trees need at least one leaf"));
    }
    if k > 20 {
        return Err(domain("ordered tree enumeration is limited to 20 leaves"));
    }
    fn on_set(
        labels: &[usize],
        memo: &mut HashMap<Vec<usize>, Vec<OrderedTree>>,
    ) -> Vec<OrderedTree> {
        if let [l] = labels {
            return vec![OrderedTree::Leaf(*l)];
        }
        if let Some(v) = memo.get(labels) {
            return v.clone();
        }
        let mut out = Vec::new();
        for blocks in set_partitions(labels).into_iter().filter(|b| b.len() >= 2) {
            let options: Vec<Vec<OrderedTree>> = blocks.iter().map(|b| on_set(b, memo)).collect();
            let mut combos: Vec<Vec<OrderedTree>> = vec![Vec::new()];
            for opt in &options {
                combos = combos
                    .iter()
                    .flat_map(|prefix| {
                        opt.iter().map(move |t| {
                            let mut v = prefix.clone();
                            v.push(t.clone());
                            v
                        })
                    })
                    .collect();
            }
            out.extend(combos.into_iter().map(OrderedTree::Node));
        }
        memo.insert(labels.to_vec(), out.clone());
        out
    }
    let labels: Vec<usize> = (0..k).collect();
    Ok(on_set(&labels, &mut HashMap::new()))
}
