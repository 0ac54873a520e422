//! Reducibility, weak reducibility, normal forms and hypergraph adjacency
//! tensors.
//!
//! A set `I` is *reducing* when every row in `I` vanishes on tuples whose
//! trailing indices all lie outside `I`, and *weakly reducing* when every
//! row in `I` vanishes on tuples with at least one trailing index outside
//! `I`. Both are searched for structurally, then re-checked literally.

use std::collections::HashSet;

use itertools::Itertools;

use crate::blocked::{
    compositions, diagonal_blocks, pattern_holds, BlockKind, Partition, MAX_ENUM_DIM,
};
use crate::error::{Error, Result};
use crate::graph;
use crate::tensor::{IndexSet, Permutation, Tensor};

/// Largest dimension for the exhaustive first-type search.
pub const MAX_FIRST_TYPE_DIM: usize = 6;

/// Literal check of the reducing-set condition for a proper nonempty `I`.
pub fn is_reducing_set(a: &Tensor, set: &IndexSet) -> bool {
    if set.dim() != a.dim() || !set.is_proper() {
        return false;
    }
    let inside = set.mask();
    a.entries()
        .all(|(idx, _)| !inside[idx[0]] || idx[1..].iter().any(|&j| inside[j]))
}

/// Literal check of the weakly-reducing-set condition for a proper nonempty `I`.
pub fn is_weakly_reducing_set(a: &Tensor, set: &IndexSet) -> bool {
    if set.dim() != a.dim() || !set.is_proper() {
        return false;
    }
    let inside = set.mask();
    a.entries()
        .all(|(idx, _)| !inside[idx[0]] || idx[1..].iter().all(|&j| inside[j]))
}

/// Smallest superset of `{seed}` closed under
/// `R(J) = { i : some nonzero a_{i i2…im} has all of i2…im in J }`.
fn closure(a: &Tensor, seed: usize) -> Vec<bool> {
    let mut inside = vec![false; a.dim()];
    inside[seed] = true;
    loop {
        let mut grew = false;
        for (idx, _) in a.entries() {
            if !inside[idx[0]] && idx[1..].iter().all(|&j| inside[j]) {
                inside[idx[0]] = true;
                grew = true;
            }
        }
        if !grew {
            return inside;
        }
    }
}

/// A reducing set, or `None` when `a` is irreducible.
pub fn find_reducing_set(a: &Tensor) -> Option<IndexSet> {
    let n = a.dim();
    (0..n).find_map(|seed| {
        let inside = closure(a, seed);
        if inside.iter().all(|&b| b) {
            None
        } else {
            let set = IndexSet::new(n, (0..n).filter(|&i| !inside[i])).ok()?;
            debug_assert!(is_reducing_set(a, &set));
            Some(set)
        }
    })
}

/// Dimension-1 tensors are irreducible.
pub fn is_irreducible(a: &Tensor) -> bool {
    find_reducing_set(a).is_none()
}

/// Edge `i -> j` whenever `j` occurs among the trailing indices of a nonzero
/// entry in row `i`; this is the digraph of `G(|A|)`.
fn representation_digraph(a: &Tensor) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); a.dim()];
    for (idx, _) in a.entries() {
        adj[idx[0]].extend_from_slice(&idx[1..]);
    }
    for out in &mut adj {
        out.sort_unstable();
        out.dedup();
    }
    adj
}

/// The sink strongly connected component with the smallest member.
fn first_sink(adj: &[Vec<usize>]) -> Vec<usize> {
    graph::sink_components(adj)
        .into_iter()
        .min_by_key(|c| c[0])
        .expect("a finite digraph has a sink component")
}

/// A weakly reducing set, or `None` when `a` is weakly irreducible.
///
/// The returned set is a sink component of the representation digraph: its
/// rows only reference indices inside it.
pub fn find_weakly_reducing_set(a: &Tensor) -> Option<IndexSet> {
    let n = a.dim();
    let sink = first_sink(&representation_digraph(a));
    if sink.len() == n {
        return None;
    }
    let set = IndexSet::new(n, sink).ok()?;
    debug_assert!(is_weakly_reducing_set(a, &set));
    Some(set)
}

/// Dimension-1 tensors are weakly irreducible.
pub fn is_weakly_irreducible(a: &Tensor) -> bool {
    a.dim() <= 1 || graph::is_strongly_connected(&representation_digraph(a))
}

/// Moves `Ī` to the leading positions and `I` to the trailing ones, keeping
/// relative order inside each part. With `weak` the result is
/// `(k, n-k)`-UTB1, otherwise `(k, n-k)`-UTB3, where `k = |Ī|`.
pub fn reducing_to_utb(a: &Tensor, set: &IndexSet, weak: bool) -> Result<(Permutation, Tensor)> {
    let valid = if weak {
        is_weakly_reducing_set(a, set)
    } else {
        is_reducing_set(a, set)
    };
    if !valid {
        return Err(Error::NotReducingSet);
    }
    let order: Vec<usize> = set
        .complement()
        .members()
        .iter()
        .chain(set.members())
        .copied()
        .collect();
    let sigma = permutation_from_order(&order);
    let b = a.permute_similar(&sigma)?;
    Ok((sigma, b))
}

/// `σ(order[p]) = p`.
fn permutation_from_order(order: &[usize]) -> Permutation {
    let mut image = vec![0; order.len()];
    for (p, &i) in order.iter().enumerate() {
        image[i] = p;
    }
    Permutation::new(image).expect("order lists every index once")
}

/// A permutation-similar blocked form whose diagonal blocks are weakly
/// irreducible (`Utb1`/`Utb2`) or irreducible (`Utb3`).
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub sigma: Permutation,
    pub partition: Partition,
    pub kind: BlockKind,
    pub blocks: Vec<Tensor>,
}

impl NormalForm {
    /// Re-checks every invariant against the source tensor.
    pub fn verify(&self, a: &Tensor) -> bool {
        let n = a.dim();
        if self.sigma.dim() != n || self.partition.n() != n {
            return false;
        }
        let Ok(b) = a.permute_similar(&self.sigma) else {
            return false;
        };
        if !pattern_holds(&b, &self.partition, self.kind) {
            return false;
        }
        match diagonal_blocks(&b, &self.partition) {
            Ok(blocks) if blocks == self.blocks => {}
            _ => return false,
        }
        self.blocks.iter().all(|block| match self.kind {
            BlockKind::Utb3 => is_irreducible(block),
            _ => is_weakly_irreducible(block),
        })
    }

    /// The permuted tensor `P A P^T`.
    pub fn permuted(&self, a: &Tensor) -> Result<Tensor> {
        a.permute_similar(&self.sigma)
    }

    fn build(a: &Tensor, groups: Vec<Vec<usize>>, kind: BlockKind) -> NormalForm {
        let order: Vec<usize> = groups.iter().flatten().copied().collect();
        let sigma = permutation_from_order(&order);
        let partition =
            Partition::new(groups.iter().map(Vec::len).collect()).expect("groups are nonempty");
        let b = a
            .permute_similar(&sigma)
            .expect("sigma has the tensor dimension");
        let blocks = diagonal_blocks(&b, &partition).expect("partition covers the dimension");
        NormalForm {
            sigma,
            partition,
            kind,
            blocks,
        }
    }
}

fn subtensor_on(a: &Tensor, members: &[usize]) -> Tensor {
    let set = IndexSet::new(a.dim(), members.iter().copied()).expect("members are in range");
    a.principal_subtensor(&set).expect("members are nonempty")
}

fn third_type_groups(a: &Tensor, members: Vec<usize>) -> Vec<Vec<usize>> {
    let sub = subtensor_on(a, &members);
    match find_reducing_set(&sub) {
        None => vec![members],
        Some(local) => {
            let pick = |set: &IndexSet| -> Vec<usize> {
                set.members().iter().map(|&i| members[i]).collect()
            };
            let mut groups = third_type_groups(a, pick(&local.complement()));
            groups.extend(third_type_groups(a, pick(&local)));
            groups
        }
    }
}

/// A third-type normal form.
///
/// First tries the direct recursion: split along a reducing set, recurse on
/// both sides, and glue. Gluing can break the pattern when a later row has
/// trailing indices spread over both sides, so the result is verified and,
/// on failure, replaced by an exhaustive search for a chain of closed index
/// sets with irreducible differences. Some tensors admit no such chain.
pub fn normal_form_3rd(a: &Tensor) -> Result<NormalForm> {
    a.require_order(2)?;
    let groups = third_type_groups(a, (0..a.dim()).collect());
    let nf = NormalForm::build(a, groups, BlockKind::Utb3);
    if nf.verify(a) {
        return Ok(nf);
    }
    let n = a.dim();
    if n > MAX_ENUM_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: MAX_ENUM_DIM,
        });
    }
    let groups = closed_chain(a).ok_or(Error::NoThirdTypeNormalForm)?;
    let nf = NormalForm::build(a, groups, BlockKind::Utb3);
    assert!(nf.verify(a), "searched normal form failed verification");
    Ok(nf)
}

fn members_of(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

/// No row outside `mask` has a nonzero whose trailing indices all lie inside.
fn is_closed(a: &Tensor, mask: u32) -> bool {
    let inside = |i: usize| mask & (1 << i) != 0;
    a.entries()
        .all(|(idx, _)| inside(idx[0]) || !idx[1..].iter().all(|&j| inside(j)))
}

/// Index groups `G_1, …, G_r` whose prefix unions are all closed and whose
/// principal subtensors are irreducible; smaller, then lexicographically
/// smaller, groups are tried first.
fn closed_chain(a: &Tensor) -> Option<Vec<Vec<usize>>> {
    fn dfs(a: &Tensor, used: u32, full: u32, dead: &mut HashSet<u32>) -> Option<Vec<Vec<usize>>> {
        if used == full {
            return Some(Vec::new());
        }
        if dead.contains(&used) {
            return None;
        }
        let n = a.dim();
        let rest = full & !used;
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        let mut d = rest;
        while d != 0 {
            let group = members_of(d, n);
            if is_closed(a, used | d) && is_irreducible(&subtensor_on(a, &group)) {
                candidates.push(group);
            }
            d = (d - 1) & rest;
        }
        candidates.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        for group in candidates {
            let mask = group.iter().fold(0u32, |m, &i| m | (1 << i));
            if let Some(mut tail) = dfs(a, used | mask, full, dead) {
                tail.insert(0, group);
                return Some(tail);
            }
        }
        dead.insert(used);
        None
    }
    let full = (1u32 << a.dim()) - 1;
    dfs(a, 0, full, &mut HashSet::new())
}

/// A second-type normal form by peeling sink components of the
/// representation digraph from the bottom up.
pub fn normal_form_2nd(a: &Tensor) -> NormalForm {
    let mut remaining: Vec<usize> = (0..a.dim()).collect();
    let mut peeled = Vec::new();
    while !remaining.is_empty() {
        let sub = subtensor_on(a, &remaining);
        let sink = first_sink(&representation_digraph(&sub));
        let comp: Vec<usize> = sink.iter().map(|&i| remaining[i]).collect();
        remaining.retain(|i| !comp.contains(i));
        peeled.push(comp);
    }
    peeled.reverse();
    let nf = NormalForm::build(a, peeled, BlockKind::Utb2);
    assert!(nf.verify(a), "second-type normal form failed verification");
    nf
}

/// Exhaustive search for `σ` and a partition with at least two blocks making
/// `P A P^T` first-type blocked with weakly irreducible diagonal blocks.
///
/// Permutations are tried in lexicographic order of their image arrays and
/// partitions in lexicographic order, so the first witness is canonical.
pub fn exists_first_type_normal_form(a: &Tensor) -> Result<Option<(Permutation, Partition)>> {
    a.require_order(2)?;
    let n = a.dim();
    if n > MAX_FIRST_TYPE_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: MAX_FIRST_TYPE_DIM,
        });
    }
    let partitions: Vec<Partition> = compositions(n)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|c| Partition::new(c).expect("positive parts"))
        .collect();
    for image in (0..n).permutations(n) {
        let sigma = Permutation::new(image).expect("itertools yields permutations");
        let b = a.permute_similar(&sigma)?;
        for p in &partitions {
            if pattern_holds(&b, p, BlockKind::Utb1)
                && diagonal_blocks(&b, p)?.iter().all(is_weakly_irreducible)
            {
                return Ok(Some((sigma, p.clone())));
            }
        }
    }
    Ok(None)
}

/// A `k`-uniform hypergraph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidHypergraph(format!("uniformity {k} < 2")));
        }
        if n < 1 {
            return Err(Error::InvalidHypergraph("no vertices".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in &edges {
            if e.len() != k {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {e:?} does not have {k} vertices"
                )));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::IndexOutOfRange { index: v, dim: n });
            }
            let mut sorted = e.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != k {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {e:?} repeats a vertex"
                )));
            }
            if !seen.insert(sorted) {
                return Err(Error::InvalidHypergraph(format!("duplicate edge {e:?}")));
            }
        }
        Ok(Hypergraph { k, n, edges })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Order-`k` tensor with `1/(k-1)!` at every ordering of every edge.
    pub fn adjacency_tensor(&self) -> Tensor {
        let weight = 1.0 / (1..self.k).map(|i| i as f64).product::<f64>();
        let entries = self
            .edges
            .iter()
            .flat_map(|e| e.iter().copied().permutations(self.k))
            .map(|idx| (idx, weight));
        Tensor::new(self.k, self.n, entries).expect("validated edges give distinct tuples")
    }

    /// Connected components, ordered by smallest vertex; isolated vertices
    /// are singletons.
    pub fn connected_components(&self) -> Vec<IndexSet> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for e in &self.edges {
            for w in &e[1..] {
                let (ra, rb) = (find(&mut parent, e[0]), find(&mut parent, *w));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.n {
            let root = find(&mut parent, v);
            groups.entry(root).or_default().push(v);
        }
        let mut comps: Vec<IndexSet> = groups
            .into_values()
            .map(|g| IndexSet::new(self.n, g).expect("vertices in range"))
            .collect();
        comps.sort_by_key(|c| c.members()[0]);
        comps
    }

    /// The sub-hypergraph induced on one component, re-indexed in order.
    pub fn restrict(&self, comp: &IndexSet) -> Hypergraph {
        let mut position = vec![usize::MAX; self.n];
        for (p, &v) in comp.members().iter().enumerate() {
            position[v] = p;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| position[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| position[v]).collect())
            .collect();
        Hypergraph {
            k: self.k,
            n: comp.len(),
            edges,
        }
    }
}
