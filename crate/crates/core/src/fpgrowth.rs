//! FP-tree based frequent itemset mining.
//!
//! [`frequent_itemsets`] is classic FP-growth; [`maximal_itemsets`] is the
//! FPMax variant that reports only itemsets with no frequent superset.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

struct Node {
    item: u32,
    count: usize,
    parent: usize,
    children: Vec<usize>,
}

const ROOT: usize = 0;

struct FpTree {
    nodes: Vec<Node>,
    /// Frequent items ordered by descending support, with node lists.
    header: Vec<(u32, usize, Vec<usize>)>,
}

impl FpTree {
    fn build(base: &[(Vec<u32>, usize)], min_support: usize) -> FpTree {
        let mut support: HashMap<u32, usize> = HashMap::new();
        for (items, count) in base {
            for &item in items {
                *support.entry(item).or_default() += count;
            }
        }
        let mut frequent: Vec<(u32, usize)> = support.into_iter().filter(|&(_, s)| s >= min_support).collect();
        frequent.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let rank: HashMap<u32, usize> = frequent.iter().enumerate().map(|(r, &(item, _))| (item, r)).collect();

        let mut tree = FpTree {
            nodes: vec![Node { item: u32::MAX, count: 0, parent: ROOT, children: Vec::new() }],
            header: frequent.iter().map(|&(i, s)| (i, s, Vec::new())).collect(),
        };
        let mut ordered = Vec::new();
        for (items, count) in base {
            ordered.clear();
            ordered.extend(items.iter().filter_map(|i| rank.get(i).map(|&r| (r, *i))));
            ordered.sort_unstable();
            ordered.dedup();
            let mut cur = ROOT;
            for &(r, item) in &ordered {
                let existing = tree.nodes[cur].children.iter().copied().find(|&c| tree.nodes[c].item == item);
                cur = match existing {
                    Some(c) => c,
                    None => {
                        let id = tree.nodes.len();
                        tree.nodes.push(Node { item, count: 0, parent: cur, children: Vec::new() });
                        tree.nodes[cur].children.push(id);
                        tree.header[r].2.push(id);
                        id
                    }
                };
                tree.nodes[cur].count += count;
            }
        }
        tree
    }

    fn single_path(&self) -> Option<Vec<u32>> {
        let mut path = Vec::new();
        let mut cur = ROOT;
        loop {
            match self.nodes[cur].children.as_slice() {
                [] => return Some(path),
                [only] => {
                    cur = *only;
                    path.push(self.nodes[cur].item);
                }
                _ => return None,
            }
        }
    }

    fn conditional_base(&self, node_ids: &[usize]) -> Vec<(Vec<u32>, usize)> {
        node_ids
            .iter()
            .filter_map(|&id| {
                let mut prefix = Vec::new();
                let mut cur = self.nodes[id].parent;
                while cur != ROOT {
                    prefix.push(self.nodes[cur].item);
                    cur = self.nodes[cur].parent;
                }
                (!prefix.is_empty()).then(|| (prefix, self.nodes[id].count))
            })
            .collect()
    }
}

struct Interner<I> {
    items: Vec<I>,
    ids: HashMap<I, u32>,
}

impl<I: Clone + Eq + Hash> Interner<I> {
    fn new() -> Self {
        Interner { items: Vec::new(), ids: HashMap::new() }
    }

    fn id(&mut self, item: &I) -> u32 {
        if let Some(&id) = self.ids.get(item) {
            return id;
        }
        let id = self.items.len() as u32;
        self.items.push(item.clone());
        self.ids.insert(item.clone(), id);
        id
    }

    fn encode(&mut self, transactions: &[Vec<I>]) -> Vec<(Vec<u32>, usize)> {
        transactions.iter().map(|t| (t.iter().map(|i| self.id(i)).collect(), 1)).collect()
    }

    fn decode(&self, ids: impl IntoIterator<Item = u32>) -> Vec<I> {
        ids.into_iter().map(|id| self.items[id as usize].clone()).collect()
    }
}

/// All itemsets whose support is at least `min_support`, with supports.
///
/// Itemsets are returned with items in first-seen order and the list is
/// sorted by that encoding, so results are deterministic.
pub fn frequent_itemsets<I>(transactions: &[Vec<I>], min_support: usize) -> Vec<(Vec<I>, usize)>
where
    I: Clone + Eq + Hash,
{
    let min_support = min_support.max(1);
    let mut interner = Interner::new();
    let base = interner.encode(transactions);
    let mut found = Vec::new();
    grow(&base, min_support, &mut Vec::new(), &mut found);
    let mut found: Vec<(Vec<u32>, usize)> = found
        .into_iter()
        .map(|(mut set, s)| {
            set.sort_unstable();
            (set, s)
        })
        .collect();
    found.sort();
    found.into_iter().map(|(set, s)| (interner.decode(set), s)).collect()
}

fn grow(base: &[(Vec<u32>, usize)], min_support: usize, suffix: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, usize)>) {
    let tree = FpTree::build(base, min_support);
    for (item, support, nodes) in tree.header.iter().rev() {
        suffix.push(*item);
        out.push((suffix.clone(), *support));
        let cond = tree.conditional_base(nodes);
        if !cond.is_empty() {
            grow(&cond, min_support, suffix, out);
        }
        suffix.pop();
    }
}

/// Maximal frequent itemsets (no frequent proper superset), FPMax style.
pub fn maximal_itemsets<I>(transactions: &[Vec<I>], min_support: usize) -> Vec<Vec<I>>
where
    I: Clone + Eq + Hash,
{
    let min_support = min_support.max(1);
    let mut interner = Interner::new();
    let base = interner.encode(transactions);
    let mut found: Vec<BTreeSet<u32>> = Vec::new();
    fpmax(&base, min_support, &BTreeSet::new(), &mut found);
    let mut found: Vec<Vec<u32>> = found.into_iter().map(|s| s.into_iter().collect()).collect();
    found.sort();
    found.into_iter().map(|set| interner.decode(set)).collect()
}

fn record_maximal(candidate: BTreeSet<u32>, found: &mut Vec<BTreeSet<u32>>) {
    if candidate.is_empty() || found.iter().any(|m| candidate.is_subset(m)) {
        return;
    }
    found.retain(|m| !m.is_subset(&candidate));
    found.push(candidate);
}

fn fpmax(base: &[(Vec<u32>, usize)], min_support: usize, head: &BTreeSet<u32>, found: &mut Vec<BTreeSet<u32>>) {
    let tree = FpTree::build(base, min_support);
    if let Some(path) = tree.single_path() {
        let mut candidate = head.clone();
        candidate.extend(path);
        record_maximal(candidate, found);
        return;
    }
    for (item, _, nodes) in tree.header.iter().rev() {
        let mut next_head = head.clone();
        next_head.insert(*item);
        let cond = tree.conditional_base(nodes);
        // Prune when head plus every item that could still join is already covered.
        let mut reach = next_head.clone();
        reach.extend(cond.iter().flat_map(|(items, _)| items.iter().copied()));
        if found.iter().any(|m| reach.is_subset(m)) {
            continue;
        }
        fpmax(&cond, min_support, &next_head, found);
    }
}
