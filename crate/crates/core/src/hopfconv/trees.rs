//! The Connes-Kreimer Hopf algebra of rooted forests, truncated by vertex
//! count.
//!
//! A tree is written as brackets around its children: `[]` is a single
//! vertex, `[[]]` the two-vertex ladder, `[[][]]` the cherry. Children and
//! the trees of a forest are kept sorted, so every forest has one text
//! form, the concatenation of its trees. The empty forest is `1`.

use std::collections::BTreeMap;

use num_traits::One;

use super::coalgebra::{Coalgebra, ProductTable};
use crate::error::{Result, RotaError};
use crate::exactalg::{FreeVector, Key, Rational, TensorKey};

/// Largest supported vertex count.
pub const MAX_TREE_DEGREE: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tree(Vec<Tree>);

impl Tree {
    fn new(mut children: Vec<Tree>) -> Tree {
        children.sort();
        Tree(children)
    }

    pub fn vertices(&self) -> usize {
        1 + self.0.iter().map(Tree::vertices).sum::<usize>()
    }

    fn encode(&self, out: &mut String) {
        out.push('[');
        for c in &self.0 {
            c.encode(out);
        }
        out.push(']');
    }

    /// All `(pruned forest, trunk)` pairs over admissible cuts, including
    /// the empty cut. The trunk always keeps the root.
    fn cuts(&self) -> Vec<(Vec<Tree>, Tree)> {
        let mut acc: Vec<(Vec<Tree>, Vec<Tree>)> = vec![(Vec::new(), Vec::new())];
        for child in &self.0 {
            let inner = child.cuts();
            let mut next = Vec::with_capacity(acc.len() * (inner.len() + 1));
            for (pruned, kept) in &acc {
                let mut p = pruned.clone();
                p.push(child.clone());
                next.push((p, kept.clone()));
                for (cp, trunk) in &inner {
                    let mut p = pruned.clone();
                    p.extend(cp.iter().cloned());
                    let mut k = kept.clone();
                    k.push(trunk.clone());
                    next.push((p, k));
                }
            }
            acc = next;
        }
        acc.into_iter().map(|(p, k)| (p, Tree::new(k))).collect()
    }
}

/// A sorted multiset of trees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Forest(Vec<Tree>);

impl Forest {
    pub fn new(mut trees: Vec<Tree>) -> Forest {
        trees.sort();
        Forest(trees)
    }

    pub fn trees(&self) -> &[Tree] {
        &self.0
    }

    pub fn vertices(&self) -> usize {
        self.0.iter().map(Tree::vertices).sum()
    }

    pub fn key(&self) -> Key {
        if self.0.is_empty() {
            return Key::name("1");
        }
        let mut s = String::new();
        for t in &self.0 {
            t.encode(&mut s);
        }
        Key::name(s)
    }

    pub fn union(&self, other: &Forest) -> Forest {
        Forest::new(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Parses the text form written by [`Forest::key`].
    pub fn parse(s: &str) -> Result<Forest> {
        let s = s.trim();
        if s == "1" {
            return Ok(Forest(Vec::new()));
        }
        let bad = || RotaError::Invalid(format!("`{s}` is not a bracket-encoded forest"));
        let mut stack: Vec<Vec<Tree>> = vec![Vec::new()];
        for ch in s.chars() {
            match ch {
                '[' => stack.push(Vec::new()),
                ']' => {
                    let children = stack.pop().ok_or_else(bad)?;
                    stack.last_mut().ok_or_else(bad)?.push(Tree::new(children));
                }
                _ => return Err(bad()),
            }
        }
        match stack.pop() {
            Some(trees) if stack.is_empty() && !trees.is_empty() => Ok(Forest::new(trees)),
            _ => Err(bad()),
        }
    }

    fn coproduct(&self) -> FreeVector<(Forest, Forest)> {
        let mut acc: FreeVector<(Forest, Forest)> = FreeVector::basis((Forest(Vec::new()), Forest(Vec::new())));
        for t in &self.0 {
            let mut next = FreeVector::zero();
            let dt = tree_coproduct(t);
            for ((a, b), c) in acc.iter() {
                for ((x, y), e) in dt.iter() {
                    next.add_term((a.union(x), b.union(y)), c * e);
                }
            }
            acc = next;
        }
        acc
    }
}

fn tree_coproduct(t: &Tree) -> FreeVector<(Forest, Forest)> {
    let mut d = FreeVector::zero();
    for (pruned, trunk) in t.cuts() {
        d.add_term((Forest::new(pruned), Forest(vec![trunk])), Rational::one());
    }
    d.add_term((Forest(vec![t.clone()]), Forest(Vec::new())), Rational::one());
    d
}

/// Every tree with exactly `n` vertices, sorted.
fn trees_of_size(n: usize, memo: &mut BTreeMap<usize, Vec<Tree>>) -> Vec<Tree> {
    if let Some(t) = memo.get(&n) {
        return t.clone();
    }
    let out: Vec<Tree> = forests_of_size(n - 1, memo).into_iter().map(|f| Tree::new(f.0)).collect();
    memo.insert(n, out.clone());
    out
}

/// Every forest with exactly `n` vertices, sorted.
fn forests_of_size(n: usize, memo: &mut BTreeMap<usize, Vec<Tree>>) -> Vec<Forest> {
    let mut pool: Vec<Tree> = (1..=n).flat_map(|k| trees_of_size(k, memo)).collect();
    pool.sort();
    let mut out = Vec::new();
    fill(&pool, 0, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

// Multisets as non-decreasing index sequences into `pool`.
fn fill(pool: &[Tree], from: usize, left: usize, current: &mut Vec<Tree>, out: &mut Vec<Forest>) {
    if left == 0 {
        out.push(Forest::new(current.clone()));
        return;
    }
    for i in from..pool.len() {
        let v = pool[i].vertices();
        if v <= left {
            current.push(pool[i].clone());
            fill(pool, i, left - v, current, out);
            current.pop();
        }
    }
}

/// All forests with at most `max_degree` vertices, by degree then key.
pub fn forests_up_to(max_degree: usize) -> Result<Vec<Forest>> {
    if max_degree > MAX_TREE_DEGREE {
        return Err(RotaError::DegreeTooLarge { requested: max_degree, max: MAX_TREE_DEGREE });
    }
    let mut memo = BTreeMap::new();
    Ok((0..=max_degree).flat_map(|n| forests_of_size(n, &mut memo)).collect())
}

/// Rooted forests with at most `max_degree` vertices: disjoint union as
/// product, admissible cuts as coproduct, graded by vertex count. Products
/// above the bound are left out of the table.
pub fn rooted_tree_hopf(max_degree: usize) -> Result<Coalgebra> {
    let forests = forests_up_to(max_degree)?;
    let basis: Vec<Key> = forests.iter().map(Forest::key).collect();
    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    let mut grading = BTreeMap::new();
    let mut table = BTreeMap::new();
    for f in &forests {
        let d = f.coproduct().map_keys(|(a, b)| TensorKey::new(a.key(), b.key()));
        coproduct.insert(f.key(), d);
        counit.insert(f.key(), if f.0.is_empty() { Rational::one() } else { Rational::from_integer(0.into()) });
        grading.insert(f.key(), f.vertices());
        for g in &forests {
            if f.vertices() + g.vertices() <= max_degree {
                table.insert((f.key(), g.key()), FreeVector::basis(f.union(g).key()));
            }
        }
    }
    let unit = Forest(Vec::new()).key();
    Coalgebra::new(&format!("rooted-trees-{max_degree}"), basis, coproduct, counit)?
        .with_product(ProductTable { unit, table })?
        .with_grading(grading)
}

/// The keys of the single trees making up a forest key.
pub fn forest_trees(k: &Key) -> Result<Vec<Key>> {
    Ok(Forest::parse(&k.to_string())?.0.into_iter().map(|t| Forest(vec![t]).key()).collect())
}

/// Number of rooted trees with `n` vertices.
#[cfg(test)]
pub(crate) fn tree_count(n: usize) -> usize {
    trees_of_size(n, &mut BTreeMap::new()).len()
}
