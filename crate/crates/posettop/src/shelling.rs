//! Shellability machinery: shelling verification and search, EL-labelings,
//! decreasing chains, rank selection, recursive atom orderings, and NBC
//! bases of geometric lattices.
//!
//! Conventions: a facet order F_1, ..., F_t is a shelling when for every
//! k >= 2 the complex generated by the earlier facets meets <F_k> in a
//! pure subcomplex of dimension |F_k| - 2. Labels are integer tuples
//! compared lexicographically. An increasing chain has a strictly
//! increasing label word; a decreasing chain has a weakly decreasing one
//! (a strict variant is provided for the swapped convention).

use crate::complex::{order_complex, proper_part_complex, SimplicialComplex};
use crate::poset::{Derived, Poset, PosetError};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ShellingError {
    #[error("facet order is not a permutation of the facets")]
    NotAPermutation,
    #[error("cover pair ({0}, {1}) has no label")]
    MissingLabel(usize, usize),
    #[error("labeling is not an EL-labeling")]
    NotEl,
    #[error("poset is not pure")]
    NotPure,
    #[error("rank set must lie strictly between 0 and the length")]
    BadRankSet,
    #[error("certificate does not match the poset: {0}")]
    BadCertificate(String),
    #[error("poset is not a lattice")]
    NotLattice,
    #[error("atom order is not a permutation of the atoms")]
    BadAtomOrder,
    #[error("{0} atoms exceed the NBC enumeration bound of {1}")]
    TooManyAtoms(usize, usize),
    #[error("no atom generates the cover ({0}, {1})")]
    NotAtomGenerated(usize, usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Map from cover pairs to integer-tuple labels under lexicographic
/// order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeLabeling {
    labels: HashMap<(usize, usize), Vec<i64>>,
}

impl EdgeLabeling {
    pub fn new() -> Self {
        EdgeLabeling::default()
    }

    pub fn set(&mut self, x: usize, y: usize, label: Vec<i64>) {
        self.labels.insert((x, y), label);
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&[i64]> {
        self.labels.get(&(x, y)).map(|v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Edges with labels, sorted for deterministic output.
    pub fn sorted_edges(&self) -> Vec<(usize, usize, Vec<i64>)> {
        let mut out: Vec<_> = self
            .labels
            .iter()
            .map(|(&(x, y), l)| (x, y, l.clone()))
            .collect();
        out.sort();
        out
    }

    /// Check that every cover edge of the poset carries a label.
    pub fn validate_total(&self, p: &Poset) -> Result<(), ShellingError> {
        for &(x, y) in p.covers() {
            if !self.labels.contains_key(&(x, y)) {
                return Err(ShellingError::MissingLabel(x, y));
            }
        }
        Ok(())
    }

    /// Label word along a saturated chain.
    pub fn word(&self, chain: &[usize]) -> Result<Vec<Vec<i64>>, ShellingError> {
        chain
            .windows(2)
            .map(|w| {
                self.labels
                    .get(&(w[0], w[1]))
                    .cloned()
                    .ok_or(ShellingError::MissingLabel(w[0], w[1]))
            })
            .collect()
    }
}

/// Outcome of checking one facet order.
#[derive(Clone, Debug)]
pub struct ShellingReport {
    pub is_shelling: bool,
    /// index into the order of the first facet violating the condition
    pub first_violation: Option<usize>,
    /// restriction (minimal new face) of each facet, in order
    pub restrictions: Vec<Vec<usize>>,
    /// facets whose restriction is the whole facet
    pub homology_facets: Vec<bool>,
    /// homology facet counts by dimension; for a shelling these are the
    /// Betti numbers of the complex
    pub sphere_counts: BTreeMap<i64, usize>,
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_sub_sorted(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Does adding facet `f` after the facets in `earlier` satisfy the
/// shelling condition?
fn shelling_step_ok(facets: &[Vec<usize>], earlier: &[usize], f: usize) -> bool {
    let fk = &facets[f];
    for &i in earlier {
        let g = intersect_sorted(&facets[i], fk);
        let ok = earlier.iter().any(|&j| {
            let h = intersect_sorted(&facets[j], fk);
            h.len() + 1 == fk.len() && is_sub_sorted(&g, &h)
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Check a facet order for the shelling condition and compute the
/// restriction faces and homology-facet data.
pub fn is_shelling(
    c: &SimplicialComplex,
    facet_order: &[usize],
) -> Result<ShellingReport, ShellingError> {
    let facets = c.facets();
    let mut sorted: Vec<usize> = facet_order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..facets.len()).collect::<Vec<_>>() {
        return Err(ShellingError::NotAPermutation);
    }
    let mut first_violation = None;
    let mut earlier: Vec<usize> = Vec::new();
    for (k, &f) in facet_order.iter().enumerate() {
        if k > 0 && first_violation.is_none() && !shelling_step_ok(facets, &earlier, f) {
            first_violation = Some(k);
        }
        earlier.push(f);
    }
    // restriction face: vertices whose deletion lands in an earlier facet
    let mut restrictions = Vec::with_capacity(facet_order.len());
    let mut homology_facets = Vec::with_capacity(facet_order.len());
    let mut sphere_counts: BTreeMap<i64, usize> = BTreeMap::new();
    for (k, &f) in facet_order.iter().enumerate() {
        let fk = &facets[f];
        let r: Vec<usize> = fk
            .iter()
            .copied()
            .filter(|&v| {
                let without: Vec<usize> = fk.iter().copied().filter(|&w| w != v).collect();
                facet_order[..k]
                    .iter()
                    .any(|&i| is_sub_sorted(&without, &facets[i]))
            })
            .collect();
        let full = r.len() == fk.len();
        if full {
            *sphere_counts.entry(fk.len() as i64 - 1).or_insert(0) += 1;
        }
        restrictions.push(r);
        homology_facets.push(full);
    }
    Ok(ShellingReport {
        is_shelling: first_violation.is_none(),
        first_violation,
        restrictions,
        homology_facets,
        sphere_counts,
    })
}

/// Result of a shelling search.
#[derive(Clone, Debug)]
pub enum ShellingSearch {
    Found(Vec<usize>, ShellingReport),
    /// exhaustive: no facet order is a shelling
    None,
    /// search budget exceeded before an answer was reached
    Indeterminate,
}

pub const MAX_SEARCH_FACETS: usize = 24;
const DEFAULT_SEARCH_NODES: usize = 2_000_000;

/// Backtracking search for a shelling order, lexicographically first by
/// facet index. Failed facet sets are memoized, so "none" is an
/// exhaustive answer when the budget is not exceeded.
pub fn find_shelling(c: &SimplicialComplex) -> Result<ShellingSearch, ShellingError> {
    find_shelling_with_budget(c, DEFAULT_SEARCH_NODES)
}

pub fn find_shelling_with_budget(
    c: &SimplicialComplex,
    node_budget: usize,
) -> Result<ShellingSearch, ShellingError> {
    let facets = c.facets();
    let m = facets.len();
    if m > MAX_SEARCH_FACETS {
        return Ok(ShellingSearch::Indeterminate);
    }
    if m == 0 {
        return Ok(ShellingSearch::Found(
            Vec::new(),
            is_shelling(c, &[])?,
        ));
    }

    enum Outcome {
        Found(Vec<usize>),
        Exhausted,
        Budget,
    }

    struct Search<'a> {
        facets: &'a [Vec<usize>],
        failed: HashSet<u64>,
        nodes: usize,
        budget: usize,
    }

    impl Search<'_> {
        fn run(&mut self, used_mask: u64, order: &mut Vec<usize>) -> Outcome {
            if order.len() == self.facets.len() {
                return Outcome::Found(order.clone());
            }
            if self.failed.contains(&used_mask) {
                return Outcome::Exhausted;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Outcome::Budget;
            }
            for f in 0..self.facets.len() {
                if used_mask >> f & 1 == 1 {
                    continue;
                }
                if !order.is_empty() && !shelling_step_ok(self.facets, order, f) {
                    continue;
                }
                order.push(f);
                match self.run(used_mask | 1 << f, order) {
                    Outcome::Found(o) => return Outcome::Found(o),
                    Outcome::Budget => return Outcome::Budget,
                    Outcome::Exhausted => {}
                }
                order.pop();
            }
            self.failed.insert(used_mask);
            Outcome::Exhausted
        }
    }

    let mut search = Search {
        facets,
        failed: HashSet::new(),
        nodes: 0,
        budget: node_budget,
    };
    match search.run(0, &mut Vec::new()) {
        Outcome::Found(order) => {
            let report = is_shelling(c, &order)?;
            Ok(ShellingSearch::Found(order, report))
        }
        Outcome::Exhausted => Ok(ShellingSearch::None),
        Outcome::Budget => Ok(ShellingSearch::Indeterminate),
    }
}

/// Maximal chains of the closed interval [x, y], each starting at x and
/// ending at y.
fn maximal_chains_of_interval(p: &Poset, x: usize, y: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![x];
    fn dfs(p: &Poset, y: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let cur = *stack.last().expect("nonempty stack");
        if cur == y {
            out.push(stack.clone());
            return;
        }
        for &z in p.up_covers(cur) {
            if p.leq(z, y) {
                stack.push(z);
                dfs(p, y, stack, out);
                stack.pop();
            }
        }
    }
    dfs(p, y, &mut stack, &mut out);
    out
}

/// Verify the EL property: every closed interval has exactly one maximal
/// chain with a strictly increasing label word, and that chain's word
/// strictly lexicographically precedes every other maximal chain's word.
pub fn verify_el_labeling(p: &Poset, labeling: &EdgeLabeling) -> Result<bool, ShellingError> {
    if !p.is_bounded() {
        return Err(ShellingError::Poset(PosetError::NotBounded));
    }
    labeling.validate_total(p)?;
    for x in 0..p.len() {
        for y in 0..p.len() {
            if !p.lt(x, y) {
                continue;
            }
            let chains = maximal_chains_of_interval(p, x, y);
            let mut increasing: Option<Vec<Vec<i64>>> = None;
            let mut words = Vec::with_capacity(chains.len());
            for c in &chains {
                let w = labeling.word(c)?;
                let strict_inc = w.windows(2).all(|pair| pair[0] < pair[1]);
                if strict_inc {
                    if increasing.is_some() {
                        return Ok(false);
                    }
                    increasing = Some(w.clone());
                }
                words.push(w);
            }
            let Some(inc) = increasing else {
                return Ok(false);
            };
            // strict lexicographic precedence over every other chain
            let mut seen_self = false;
            for w in &words {
                if *w == inc {
                    if seen_self {
                        return Ok(false);
                    }
                    seen_self = true;
                } else if *w < inc {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn weakly_decreasing(w: &[Vec<i64>]) -> bool {
    w.windows(2).all(|pair| pair[0] >= pair[1])
}

fn strictly_decreasing(w: &[Vec<i64>]) -> bool {
    w.windows(2).all(|pair| pair[0] > pair[1])
}

/// Maximal chains of the bounded poset whose label word is weakly
/// decreasing.
pub fn decreasing_chains(
    p: &Poset,
    labeling: &EdgeLabeling,
) -> Result<Vec<Vec<usize>>, ShellingError> {
    chains_with(p, labeling, weakly_decreasing)
}

/// The swapped convention: strictly decreasing label words.
pub fn decreasing_chains_strict(
    p: &Poset,
    labeling: &EdgeLabeling,
) -> Result<Vec<Vec<usize>>, ShellingError> {
    chains_with(p, labeling, strictly_decreasing)
}

fn chains_with(
    p: &Poset,
    labeling: &EdgeLabeling,
    pred: fn(&[Vec<i64>]) -> bool,
) -> Result<Vec<Vec<usize>>, ShellingError> {
    let bottom = p.bottom().ok_or(ShellingError::Poset(PosetError::NotBounded))?;
    let top = p.top().ok_or(ShellingError::Poset(PosetError::NotBounded))?;
    if bottom == top {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for c in maximal_chains_of_interval(p, bottom, top) {
        let w = labeling.word(&c)?;
        if pred(&w) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Betti numbers of the proper part from a verified EL-labeling: a
/// decreasing maximal chain with t elements (bounds included)
/// contributes one sphere of dimension t - 3.
pub fn betti_from_el(
    p: &Poset,
    labeling: &EdgeLabeling,
) -> Result<BTreeMap<i64, usize>, ShellingError> {
    if !verify_el_labeling(p, labeling)? {
        return Err(ShellingError::NotEl);
    }
    betti_from_el_unchecked(p, labeling)
}

/// Same as `betti_from_el` without re-verifying the EL property.
pub fn betti_from_el_unchecked(
    p: &Poset,
    labeling: &EdgeLabeling,
) -> Result<BTreeMap<i64, usize>, ShellingError> {
    let mut out = BTreeMap::new();
    for c in decreasing_chains(p, labeling)? {
        *out.entry(c.len() as i64 - 3).or_insert(0) += 1;
    }
    Ok(out)
}

/// Order complex of the proper part together with its facets sorted by
/// the label words of the corresponding full maximal chains (ties broken
/// by the chain itself). For an EL-labeling this order is a shelling.
pub fn lex_facet_order(
    p: &Poset,
    labeling: &EdgeLabeling,
) -> Result<(SimplicialComplex, Vec<usize>), ShellingError> {
    let bottom = p.bottom().ok_or(ShellingError::Poset(PosetError::NotBounded))?;
    let top = p.top().ok_or(ShellingError::Poset(PosetError::NotBounded))?;
    let (complex, derived) = proper_part_complex(p);
    let mut into_prop: HashMap<usize, usize> = HashMap::new();
    for (new, src) in derived.source_ids.iter().enumerate() {
        if let Some(s) = src {
            into_prop.insert(*s, new);
        }
    }
    let facet_index: HashMap<Vec<usize>, usize> = complex
        .facets()
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();
    let mut keyed: Vec<(Vec<Vec<i64>>, Vec<usize>, usize)> = Vec::new();
    for chain in maximal_chains_of_interval(p, bottom, top) {
        let w = labeling.word(&chain)?;
        let mut face: Vec<usize> = chain[1..chain.len() - 1]
            .iter()
            .map(|&v| into_prop[&v])
            .collect();
        face.sort_unstable();
        let idx = *facet_index
            .get(&face)
            .expect("interior of a maximal chain is a facet of the proper part");
        keyed.push((w, chain, idx));
    }
    keyed.sort();
    let order: Vec<usize> = keyed.into_iter().map(|(_, _, i)| i).collect();
    Ok((complex, order))
}

/// Induced subposet of a pure bounded poset on the elements whose rank
/// lies in R (necessarily a subset of the proper ranks).
pub fn rank_selected(p: &Poset, ranks: &BTreeSet<usize>) -> Result<Derived, ShellingError> {
    if !p.is_bounded() {
        return Err(ShellingError::Poset(PosetError::NotBounded));
    }
    if !p.is_pure() {
        return Err(ShellingError::NotPure);
    }
    let rank = p.rank_function()?;
    let length = p.length();
    if ranks.iter().any(|&r| r == 0 || r as i64 >= length) {
        return Err(ShellingError::BadRankSet);
    }
    let keep: Vec<usize> = (0..p.len()).filter(|&x| ranks.contains(&rank[x])).collect();
    Ok(p.induced_subposet(&keep)?)
}

/// Number of maximal chains whose descent set is exactly R. The descent
/// set of a chain with label word w_1, ..., w_l is
/// {i : w_i >= w_{i+1}}.
pub fn descent_count(
    p: &Poset,
    labeling: &EdgeLabeling,
    ranks: &BTreeSet<usize>,
) -> Result<usize, ShellingError> {
    let bottom = p.bottom().ok_or(ShellingError::Poset(PosetError::NotBounded))?;
    let top = p.top().ok_or(ShellingError::Poset(PosetError::NotBounded))?;
    let length = p.length();
    if ranks.iter().any(|&r| r == 0 || r as i64 >= length) {
        return Err(ShellingError::BadRankSet);
    }
    if bottom == top {
        return Ok(usize::from(ranks.is_empty()));
    }
    let mut count = 0;
    for c in maximal_chains_of_interval(p, bottom, top) {
        let w = labeling.word(&c)?;
        let des: BTreeSet<usize> = (1..w.len())
            .filter(|&i| w[i - 1] >= w[i])
            .collect();
        if des == *ranks {
            count += 1;
        }
    }
    Ok(count)
}

/// Atom orderings for the recursion tree of a recursive atom ordering:
/// the root holds the atom order of the whole poset and children[j] the
/// certificate of the interval above the j-th atom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecursiveAtomCertificate {
    pub atom_order: Vec<usize>,
    pub children: Vec<RecursiveAtomCertificate>,
}

/// Condition (ii) for the last atom of the prefix against all earlier
/// ones: whenever an earlier atom and the new atom share an upper bound
/// y, some atom z of the new atom's upper interval satisfies
/// a_k < z <= y for an earlier a_k.
fn rao_pair_condition(p: &Poset, prefix: &[usize]) -> bool {
    let j = prefix.len() - 1;
    let aj = prefix[j];
    let zs = p.up_covers(aj);
    let z_ok: Vec<bool> = zs
        .iter()
        .map(|&z| prefix[..j].iter().any(|&ak| p.lt(ak, z)))
        .collect();
    for &ai in &prefix[..j] {
        for y in 0..p.len() {
            if p.lt(ai, y) && p.lt(aj, y) {
                let witnessed = zs
                    .iter()
                    .zip(&z_ok)
                    .any(|(&z, &ok)| ok && p.leq(z, y));
                if !witnessed {
                    return false;
                }
            }
        }
    }
    true
}

fn rao_early_set(p: &Poset, prefix: &[usize], aj: usize) -> BTreeSet<usize> {
    p.up_covers(aj)
        .iter()
        .copied()
        .filter(|&z| prefix.iter().any(|&ai| p.leq(ai, z)))
        .collect()
}

fn rao_verify_node(
    p: &Poset,
    x: usize,
    cert: &RecursiveAtomCertificate,
    early: &BTreeSet<usize>,
) -> Result<bool, ShellingError> {
    let atoms: BTreeSet<usize> = p.up_covers(x).iter().copied().collect();
    let given: BTreeSet<usize> = cert.atom_order.iter().copied().collect();
    if given != atoms || given.len() != cert.atom_order.len() {
        return Err(ShellingError::BadCertificate(format!(
            "atom order at element {} does not list its atoms",
            x
        )));
    }
    if cert.children.len() != cert.atom_order.len() {
        return Err(ShellingError::BadCertificate(format!(
            "missing interval certificates below element {}",
            x
        )));
    }
    // condition (i): the externally required atoms form a prefix
    if !cert.atom_order[..early.len().min(cert.atom_order.len())]
        .iter()
        .all(|a| early.contains(a))
    {
        return Ok(false);
    }
    for j in 1..cert.atom_order.len() {
        if !rao_pair_condition(p, &cert.atom_order[..=j]) {
            return Ok(false);
        }
    }
    for (j, child) in cert.children.iter().enumerate() {
        let aj = cert.atom_order[j];
        let early_j = rao_early_set(p, &cert.atom_order[..j], aj);
        if !rao_verify_node(p, aj, child, &early_j)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verify a recursive atom ordering certificate against a bounded poset.
pub fn verify_recursive_atom_ordering(
    p: &Poset,
    cert: &RecursiveAtomCertificate,
) -> Result<bool, ShellingError> {
    let bottom = p.bottom().ok_or(ShellingError::Poset(PosetError::NotBounded))?;
    p.top().ok_or(ShellingError::Poset(PosetError::NotBounded))?;
    rao_verify_node(p, bottom, cert, &BTreeSet::new())
}

fn rao_search_node(p: &Poset, x: usize, early: &BTreeSet<usize>) -> Option<RecursiveAtomCertificate> {
    let atoms: Vec<usize> = p.up_covers(x).to_vec();
    if atoms.is_empty() {
        return Some(RecursiveAtomCertificate::default());
    }

    fn extend(
        p: &Poset,
        remaining_early: &BTreeSet<usize>,
        remaining_rest: &BTreeSet<usize>,
        prefix: &mut Vec<usize>,
        children: &mut Vec<RecursiveAtomCertificate>,
    ) -> bool {
        if remaining_early.is_empty() && remaining_rest.is_empty() {
            return true;
        }
        // early atoms must be exhausted before the others
        let pool: Vec<usize> = if remaining_early.is_empty() {
            remaining_rest.iter().copied().collect()
        } else {
            remaining_early.iter().copied().collect()
        };
        for a in pool {
            prefix.push(a);
            let pair_ok = prefix.len() == 1 || rao_pair_condition(p, prefix);
            if pair_ok {
                let early_child = rao_early_set(p, &prefix[..prefix.len() - 1], a);
                if let Some(child) = rao_search_node(p, a, &early_child) {
                    children.push(child);
                    let mut ne = remaining_early.clone();
                    let mut nr = remaining_rest.clone();
                    ne.remove(&a);
                    nr.remove(&a);
                    if extend(p, &ne, &nr, prefix, children) {
                        return true;
                    }
                    children.pop();
                }
            }
            prefix.pop();
        }
        false
    }

    let early_set: BTreeSet<usize> = early.clone();
    let rest: BTreeSet<usize> = atoms
        .iter()
        .copied()
        .filter(|a| !early_set.contains(a))
        .collect();
    let mut prefix = Vec::new();
    let mut children = Vec::new();
    if extend(p, &early_set, &rest, &mut prefix, &mut children) {
        Some(RecursiveAtomCertificate {
            atom_order: prefix,
            children,
        })
    } else {
        None
    }
}

/// Exhaustive backtracking search for a recursive atom ordering.
pub fn search_recursive_atom_ordering(
    p: &Poset,
) -> Result<Option<RecursiveAtomCertificate>, ShellingError> {
    let bottom = p.bottom().ok_or(ShellingError::Poset(PosetError::NotBounded))?;
    p.top().ok_or(ShellingError::Poset(PosetError::NotBounded))?;
    Ok(rao_search_node(p, bottom, &BTreeSet::new()))
}

/// Is the lattice geometric: semimodular (x ∨ y covers y whenever x
/// covers x ∧ y) and atomic (every element is a join of atoms)?
pub fn is_geometric_lattice(p: &Poset) -> Result<bool, ShellingError> {
    if !p.is_lattice() {
        return Err(ShellingError::NotLattice);
    }
    let bottom = p.bottom().expect("a finite lattice is bounded");
    // semimodularity
    for x in 0..p.len() {
        for y in 0..p.len() {
            let m = p.meet(x, y).expect("lattice");
            if p.up_covers(m).contains(&x) {
                let j = p.join(x, y).expect("lattice");
                if j != y && !p.up_covers(y).contains(&j) {
                    return Ok(false);
                }
            }
        }
    }
    // atomicity
    let atoms = p.atoms()?;
    for x in 0..p.len() {
        let mut acc = bottom;
        for &a in &atoms {
            if p.leq(a, x) {
                acc = p.join(acc, a).expect("lattice");
            }
        }
        if acc != x {
            return Ok(false);
        }
    }
    Ok(true)
}

const MAX_NBC_ATOMS: usize = 20;

/// NBC bases of a geometric lattice for a given atom order: maximal
/// independent atom sets containing no broken circuit.
pub fn nbc_bases(p: &Poset, atom_order: &[usize]) -> Result<Vec<Vec<usize>>, ShellingError> {
    use itertools::Itertools;
    if !p.is_lattice() {
        return Err(ShellingError::NotLattice);
    }
    let atoms: BTreeSet<usize> = p.atoms()?.into_iter().collect();
    let given: BTreeSet<usize> = atom_order.iter().copied().collect();
    if atoms != given || given.len() != atom_order.len() {
        return Err(ShellingError::BadAtomOrder);
    }
    let t = atom_order.len();
    if t > MAX_NBC_ATOMS {
        return Err(ShellingError::TooManyAtoms(t, MAX_NBC_ATOMS));
    }
    let rank = p.rank_function()?;
    let l = p.length() as usize;
    let join_rank = |s: &[usize]| -> usize {
        let mut acc = p.bottom().expect("bounded lattice");
        for &pos in s {
            acc = p.join(acc, atom_order[pos]).expect("lattice");
        }
        rank[acc]
    };
    // circuits: minimal dependent sets of atom positions
    let mut circuits: Vec<BTreeSet<usize>> = Vec::new();
    for size in 2..=(l + 1).min(t) {
        for combo in (0..t).combinations(size) {
            let set: BTreeSet<usize> = combo.iter().copied().collect();
            if circuits.iter().any(|c| c.is_subset(&set)) {
                continue;
            }
            if join_rank(&combo) < size {
                circuits.push(set);
            }
        }
    }
    let broken: Vec<BTreeSet<usize>> = circuits
        .iter()
        .map(|c| {
            let min = *c.iter().next().expect("circuits have size >= 2");
            c.iter().copied().filter(|&x| x != min).collect()
        })
        .collect();
    let mut bases = Vec::new();
    for combo in (0..t).combinations(l) {
        let set: BTreeSet<usize> = combo.iter().copied().collect();
        if broken.iter().any(|b| b.is_subset(&set)) {
            continue;
        }
        if join_rank(&combo) == l {
            bases.push(combo.iter().map(|&pos| atom_order[pos]).collect());
        }
    }
    Ok(bases)
}

/// The minimal-atom EL-labeling of a geometric lattice: a cover x ⋖ y is
/// labeled by the first atom position i with x ∨ a_i = y.
pub fn geometric_lattice_labeling(
    p: &Poset,
    atom_order: &[usize],
) -> Result<EdgeLabeling, ShellingError> {
    if !p.is_lattice() {
        return Err(ShellingError::NotLattice);
    }
    let atoms: BTreeSet<usize> = p.atoms()?.into_iter().collect();
    let given: BTreeSet<usize> = atom_order.iter().copied().collect();
    if atoms != given || given.len() != atom_order.len() {
        return Err(ShellingError::BadAtomOrder);
    }
    let mut labeling = EdgeLabeling::new();
    for &(x, y) in p.covers() {
        let pos = atom_order
            .iter()
            .position(|&a| p.join(x, a).expect("lattice") == y)
            .ok_or(ShellingError::NotAtomGenerated(x, y))?;
        labeling.set(x, y, vec![pos as i64 + 1]);
    }
    Ok(labeling)
}

/// Convenience for tests and callers: Betti numbers of the proper part
/// computed by homology, for comparison with `betti_from_el`.
pub fn betti_by_homology(p: &Poset) -> BTreeMap<i64, usize> {
    let complex = order_complex(&p.proper_part().poset);
    crate::homology::homology(&complex)
        .dims
        .into_iter()
        .map(|(i, d)| (i, d.betti))
        .collect()
}
