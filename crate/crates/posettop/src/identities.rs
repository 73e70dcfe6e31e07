//! Cross-checks between independently computed invariants: Euler
//! characteristic against Möbius numbers, homology of dual or derived
//! objects against each other, and fiber-style comparison theorems.
//! Every check computes both sides through disjoint code paths and
//! reports whether they agree; hypothesis violations are errors, not
//! disagreements.

use std::collections::{BTreeMap, BTreeSet};

use num::BigInt;
use thiserror::Error;

use crate::complex::{order_complex, ComplexError, SimplicialComplex};
use crate::families::{inflation, FamilyError};
use crate::homology::{
    betti_open_interval, cm_checks, cohomology, homology, HomologyError, HomologyResult,
};
use crate::poset::{Poset, PosetError};

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("the map has {got} entries, but the poset has {want} elements")]
    WrongLength { got: usize, want: usize },
    #[error("map value {0} is out of range")]
    ValueOutOfRange(usize),
    #[error("the map is not order-preserving")]
    NotOrderPreserving,
    #[error("the action is not a permutation of the elements")]
    NotAPermutation,
    #[error("the poset has no bottom element")]
    MissingBottom,
    #[error("the ambient order complex is not a homology sphere: {0}")]
    NotASphere(String),
    #[error("the poset is not semipure: {0}")]
    NotSemipure(String),
    #[error("the order complex is not sequentially Cohen-Macaulay over the rationals")]
    NotCohenMacaulay,
    #[error("the fiber over element {q} has nonzero rational homology in degree {degree}")]
    FiberNotAcyclic { q: usize, degree: i64 },
    #[error("the complex is empty or disconnected; the inflation identity needs a connected complex")]
    Disconnected,
    #[error("the poset is not a bounded lattice")]
    NotLattice,
    #[error("not a closure operator: {0}")]
    NotClosure(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// An order-preserving map between two posets, validated on construction.
pub struct PosetMap {
    source: Poset,
    target: Poset,
    map: Vec<usize>,
}

impl PosetMap {
    pub fn new(source: Poset, target: Poset, map: Vec<usize>) -> Result<PosetMap, IdentityError> {
        if map.len() != source.len() {
            return Err(IdentityError::WrongLength {
                got: map.len(),
                want: source.len(),
            });
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.len()) {
            return Err(IdentityError::ValueOutOfRange(v));
        }
        if !source.is_order_preserving(&target, &map) {
            return Err(IdentityError::NotOrderPreserving);
        }
        Ok(PosetMap {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

/// A single group element acting on a poset: an order-preserving
/// permutation of the element ids. For a finite poset such a bijection is
/// automatically an automorphism (its inverse is order-preserving too).
pub struct GroupElementAction {
    perm: Vec<usize>,
}

impl GroupElementAction {
    pub fn new(p: &Poset, perm: Vec<usize>) -> Result<GroupElementAction, IdentityError> {
        if perm.len() != p.len() {
            return Err(IdentityError::WrongLength {
                got: perm.len(),
                want: p.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &v in &perm {
            if v >= perm.len() || seen[v] {
                return Err(IdentityError::NotAPermutation);
            }
            seen[v] = true;
        }
        if !p.is_order_preserving(p, &perm) {
            return Err(IdentityError::NotOrderPreserving);
        }
        Ok(GroupElementAction { perm })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
}

/// Nonzero reduced Betti numbers of a homology result, as a map.
fn betti_ranks(h: &HomologyResult) -> BTreeMap<i64, usize> {
    h.dims
        .iter()
        .filter(|(_, d)| d.betti > 0)
        .map(|(&i, d)| (i, d.betti))
        .collect()
}

/// Nonzero reduced Betti numbers of a poset's order complex.
fn poset_betti(p: &Poset) -> BTreeMap<i64, usize> {
    betti_ranks(&homology(&order_complex(p)))
}

/// Betti numbers together with torsion, keyed by dimension, trivial
/// entries dropped.
fn homology_profile(h: &HomologyResult) -> BTreeMap<i64, (usize, Vec<BigInt>)> {
    h.dims
        .iter()
        .filter(|(_, d)| d.betti > 0 || !d.torsion.is_empty())
        .map(|(&i, d)| (i, (d.betti, d.torsion.clone())))
        .collect()
}

/// The Möbius number of the bounded extension against the reduced Euler
/// characteristic of the order complex. The first is computed by the
/// Möbius recursion, the second by counting chains; they must agree for
/// every finite poset. Returns (Möbius number, Euler characteristic,
/// equal).
pub fn philip_hall_check(p: &Poset) -> (BigInt, BigInt, bool) {
    let mu = p.mobius_of_bounded_extension();
    let chi = order_complex(p).reduced_euler_characteristic();
    let equal = mu == chi;
    (mu, chi, equal)
}

/// Alexander duality inside a poset whose order complex triangulates a
/// homology n-sphere: for an induced subposet Q with complement C,
/// reduced H_i of Q matches reduced cohomology of C in degree n-i-1,
/// torsion included. `sub` lists the element ids of Q. The degenerate
/// slices run through the usual conventions: if Q is everything, C is
/// empty and its complex {∅} carries rank one in degree -1, matching the
/// sphere's own top class.
pub fn alexander_duality_check(ambient: &Poset, sub: &[usize]) -> Result<bool, IdentityError> {
    let amb = homology(&order_complex(ambient));
    let mut sphere_dim: Option<i64> = None;
    for (&i, d) in &amb.dims {
        if d.betti == 0 && d.torsion.is_empty() {
            continue;
        }
        if !d.torsion.is_empty() {
            return Err(IdentityError::NotASphere(format!(
                "torsion in degree {i}"
            )));
        }
        if d.betti != 1 || sphere_dim.is_some() {
            return Err(IdentityError::NotASphere(
                "more than one nonzero reduced Betti number".into(),
            ));
        }
        sphere_dim = Some(i);
    }
    let Some(n) = sphere_dim else {
        return Err(IdentityError::NotASphere(
            "all reduced homology vanishes".into(),
        ));
    };
    let mut in_sub = vec![false; ambient.len()];
    for &x in sub {
        if x >= ambient.len() {
            return Err(IdentityError::Poset(PosetError::InvalidElement(x)));
        }
        in_sub[x] = true;
    }
    let sub_ids: Vec<usize> = (0..ambient.len()).filter(|&x| in_sub[x]).collect();
    let comp_ids: Vec<usize> = (0..ambient.len()).filter(|&x| !in_sub[x]).collect();
    let q = ambient.induced_subposet(&sub_ids)?;
    let c = ambient.induced_subposet(&comp_ids)?;
    let hq = homology(&order_complex(&q.poset));
    let hc = cohomology(&order_complex(&c.poset));
    let mut degrees: BTreeSet<i64> = hq.dims.keys().copied().collect();
    for &j in hc.dims.keys() {
        degrees.insert(n - j - 1);
    }
    for i in degrees {
        if hq.betti(i) != hc.betti(n - i - 1) || hq.torsion(i) != hc.torsion(n - i - 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which product-style homology identity `kunneth_checks` verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KunnethKind {
    /// Reduced homology of the join of the two order complexes against
    /// the convolution with a degree shift of one.
    Join,
    /// Both posets must have bottom elements. Checks the product with
    /// the common bottom removed (shift one); when both posets also have
    /// tops, additionally checks the proper part of the product against
    /// the proper parts (shift two).
    ReducedProduct,
    /// Unreduced homology of the order complex of the direct product
    /// against the ordinary convolution.
    OrdinaryProduct,
}

/// Convolution check over rational ranks: does lhs_r equal the sum of
/// a_i * b_{r-i-shift}?
fn convolution_matches(lhs: &HomologyResult, a: &HomologyResult, b: &HomologyResult, shift: i64) -> bool {
    let am = betti_ranks(a);
    let bm = betti_ranks(b);
    let mut rhs: BTreeMap<i64, usize> = BTreeMap::new();
    for (&i, &ai) in &am {
        for (&j, &bj) in &bm {
            *rhs.entry(i + j + shift).or_insert(0) += ai * bj;
        }
    }
    rhs.retain(|_, v| *v > 0);
    betti_ranks(lhs) == rhs
}

/// Unreduced Betti numbers of a poset's order complex. The empty poset
/// gives the empty space, where every unreduced group vanishes.
fn unreduced_betti(p: &Poset) -> BTreeMap<i64, usize> {
    let mut m = poset_betti(p);
    m.remove(&-1);
    if !p.is_empty() {
        *m.entry(0).or_insert(0) += 1;
    }
    m
}

/// Künneth-style rank identities for joins and direct products of
/// posets. All three forms compare rational ranks; see `KunnethKind` for
/// the exact statement each one checks.
pub fn kunneth_checks(p: &Poset, q: &Poset, kind: KunnethKind) -> Result<bool, IdentityError> {
    match kind {
        KunnethKind::Join => {
            let a = order_complex(p);
            let b = order_complex(q);
            let joined = homology(&a.join(&b));
            Ok(convolution_matches(&joined, &homology(&a), &homology(&b), 1))
        }
        KunnethKind::ReducedProduct => {
            let (Some(pb), Some(qb)) = (p.bottom(), q.bottom()) else {
                return Err(IdentityError::MissingBottom);
            };
            let prod = p.direct_product(q)?;
            let prod_bottom = prod.bottom().expect("product of bounded-below posets");
            let keep: Vec<usize> = (0..prod.len()).filter(|&x| x != prod_bottom).collect();
            let lhs = homology(&order_complex(
                &prod.induced_subposet(&keep)?.poset,
            ));
            let p_keep: Vec<usize> = (0..p.len()).filter(|&x| x != pb).collect();
            let q_keep: Vec<usize> = (0..q.len()).filter(|&x| x != qb).collect();
            let hp = homology(&order_complex(&p.induced_subposet(&p_keep)?.poset));
            let hq = homology(&order_complex(&q.induced_subposet(&q_keep)?.poset));
            let mut ok = convolution_matches(&lhs, &hp, &hq, 1);
            if p.top().is_some() && q.top().is_some() {
                let lhs_bar = homology(&order_complex(&prod.proper_part().poset));
                let hp_bar = homology(&order_complex(&p.proper_part().poset));
                let hq_bar = homology(&order_complex(&q.proper_part().poset));
                ok = ok && convolution_matches(&lhs_bar, &hp_bar, &hq_bar, 2);
            }
            Ok(ok)
        }
        KunnethKind::OrdinaryProduct => {
            let prod = p.direct_product(q)?;
            let up = unreduced_betti(p);
            let uq = unreduced_betti(q);
            let mut rhs: BTreeMap<i64, usize> = BTreeMap::new();
            for (&i, &ai) in &up {
                for (&j, &bj) in &uq {
                    *rhs.entry(i + j).or_insert(0) += ai * bj;
                }
            }
            rhs.retain(|_, v| *v > 0);
            Ok(unreduced_betti(&prod) == rhs)
        }
    }
}

/// Quillen's fiber comparison: if every fiber f^{-1}(target_{<= q}) has
/// vanishing reduced rational homology, the source and target order
/// complexes share all rational Betti numbers. A non-acyclic fiber
/// (including an empty one, which carries rank one in degree -1) is a
/// hypothesis violation reported as an error; only after all fibers pass
/// is the rank comparison performed and its outcome returned.
pub fn quillen_fiber_check(f: &PosetMap) -> Result<bool, IdentityError> {
    for q in 0..f.target.len() {
        let fiber: Vec<usize> = (0..f.source.len())
            .filter(|&x| f.target.leq(f.map[x], q))
            .collect();
        let h = homology(&order_complex(&f.source.induced_subposet(&fiber)?.poset));
        if let Some((&deg, _)) = h.dims.iter().find(|(_, d)| d.betti > 0) {
            return Err(IdentityError::FiberNotAcyclic { q, degree: deg });
        }
    }
    Ok(poset_betti(&f.source) == poset_betti(&f.target))
}

/// The general fiber formula: when each closed fiber f^{-1}(target_{<=q})
/// has vanishing rational homology up to the length of the open fiber
/// f^{-1}(target_{<q}) (length -2 for an empty open fiber, making the
/// condition vacuous), the source Betti numbers decompose as
///
///   b_r(source) = b_r(target)
///     + sum over q, i of b_i(fiber_q) * b_{r-i-1}(target_{>q}).
///
/// The hypothesis is checked through rational homology only; it is a
/// weaker shadow of the connectivity hypothesis of the underlying
/// theorem, which a rank computation cannot see. A violation reports the
/// offending target element and degree.
pub fn general_fiber_betti_check(f: &PosetMap) -> Result<bool, IdentityError> {
    let source = &f.source;
    let target = &f.target;
    let mut rhs = poset_betti(target);
    for t in 0..target.len() {
        let closed: Vec<usize> = (0..source.len())
            .filter(|&x| target.leq(f.map[x], t))
            .collect();
        let open: Vec<usize> = (0..source.len())
            .filter(|&x| f.map[x] != t && target.leq(f.map[x], t))
            .collect();
        let ell = if open.is_empty() {
            -2
        } else {
            source.induced_subposet(&open)?.poset.length()
        };
        let h_fiber = homology(&order_complex(
            &source.induced_subposet(&closed)?.poset,
        ));
        for (&i, d) in &h_fiber.dims {
            if d.betti > 0 && i <= ell {
                return Err(IdentityError::FiberNotAcyclic { q: t, degree: i });
            }
        }
        let h_upper = poset_betti(&target.upper_set(t, true)?.poset);
        for (&i, d) in &h_fiber.dims {
            if d.betti == 0 {
                continue;
            }
            for (&j, &bj) in &h_upper {
                *rhs.entry(i + j + 1).or_insert(0) += d.betti * bj;
            }
        }
    }
    rhs.retain(|_, v| *v > 0);
    Ok(poset_betti(source) == rhs)
}

/// Betti numbers of an inflated complex against the wedge decomposition:
/// for connected input, each nonempty face F whose vertices all have
/// multiplicity above one contributes copies of the link homology of F,
/// shifted up by |F|. Inflating a disconnected or empty complex is
/// unsupported and reported as an error.
pub fn inflation_betti_check(
    delta: &SimplicialComplex,
    multiplicities: &[usize],
) -> Result<bool, IdentityError> {
    let h_delta = homology(delta);
    if delta.is_degenerate() || delta.faces_of_dim(0).is_empty() || h_delta.betti(0) != 0 {
        return Err(IdentityError::Disconnected);
    }
    let inflated = inflation(delta, multiplicities)?;
    let lhs = betti_ranks(&homology(&inflated));
    let mut rhs = betti_ranks(&h_delta);
    for d in 0..=delta.dim() {
        for face in delta.faces_of_dim(d) {
            let nu: usize = face.iter().map(|&v| multiplicities[v] - 1).product();
            if nu == 0 {
                continue;
            }
            let h_link = homology(&delta.link(&face)?);
            let size = face.len() as i64;
            for (&i, dh) in &h_link.dims {
                if dh.betti > 0 {
                    *rhs.entry(i + size).or_insert(0) += nu * dh.betti;
                }
            }
        }
    }
    rhs.retain(|_, v| *v > 0);
    Ok(lhs == rhs)
}

/// Signed interval sums for a semipure poset with a bottom element: each
/// element x contributes (-1)^{m(x)+r(x)} times the reduced Betti number
/// in degree r(x)-2 of the open interval below it, collected at degree
/// m(x)-1, where r is the rank and m(x) is the number of covers along
/// the longest chain through x. For sequentially Cohen-Macaulay input
/// these sums are the Betti numbers of the poset minus its bottom; pass
/// `verify_cm: true` to confirm that hypothesis homologically first, or
/// `false` to assert it from the caller's side. Semipurity is exactly
/// what makes the rank function well defined, so its failure is the
/// error surfaced.
pub fn whitney_betti(
    p: &Poset,
    verify_cm: bool,
) -> Result<BTreeMap<i64, BigInt>, IdentityError> {
    let Some(bottom) = p.bottom() else {
        return Err(IdentityError::MissingBottom);
    };
    let ranks = p
        .rank_function()
        .map_err(|e| IdentityError::NotSemipure(e.to_string()))?;
    if verify_cm && !cm_checks(&order_complex(p)).is_sequentially_cm_over_q {
        return Err(IdentityError::NotCohenMacaulay);
    }
    let order: Vec<usize> = p.linear_extension().to_vec();
    let mut down = vec![0usize; p.len()];
    for &x in &order {
        for &c in p.down_covers(x) {
            down[x] = down[x].max(down[c] + 1);
        }
    }
    let mut up = vec![0usize; p.len()];
    for &x in order.iter().rev() {
        for &c in p.up_covers(x) {
            up[x] = up[x].max(up[c] + 1);
        }
    }
    let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
    for x in 0..p.len() {
        let m = (down[x] + up[x]) as i64;
        let r = ranks[x] as i64;
        let entry = out.entry(m - 1).or_insert_with(|| BigInt::from(0));
        let beta = betti_open_interval(p, bottom, x)?.betti(r - 2);
        if beta == 0 {
            continue;
        }
        let sign = if (m + r) % 2 == 0 { 1 } else { -1 };
        *entry += BigInt::from(sign) * BigInt::from(beta);
    }
    Ok(out)
}

/// Hopf trace against the Möbius number of the fixed subposet. For an
/// order-preserving permutation, a chain mapped to itself setwise is
/// fixed pointwise, so the alternating fixed-chain count is the reduced
/// Euler characteristic of the fixed subposet's order complex; the right
/// side is the Möbius number of that subposet's bounded extension,
/// computed by the recursion. Returns (trace, Möbius number, equal). An
/// empty fixed subposet gives -1 on both sides.
pub fn fixed_point_lefschetz(
    p: &Poset,
    g: &GroupElementAction,
) -> Result<(BigInt, BigInt, bool), IdentityError> {
    if g.perm.len() != p.len() {
        return Err(IdentityError::WrongLength {
            got: g.perm.len(),
            want: p.len(),
        });
    }
    let fixed: Vec<usize> = (0..p.len()).filter(|&x| g.perm[x] == x).collect();
    let sub = p.induced_subposet(&fixed)?;
    let lhs = order_complex(&sub.poset).reduced_euler_characteristic();
    let rhs = sub.poset.mobius_of_bounded_extension();
    let equal = lhs == rhs;
    Ok((lhs, rhs, equal))
}

/// Crosscut comparison for a bounded lattice: the complex whose vertices
/// are the coatoms and whose faces are the coatom sets with meet above
/// the bottom has the same homology as the proper part. Both Betti
/// numbers and torsion are compared. Coatom subsets are enumerated
/// explicitly, so the coatom count is capped.
pub fn crosscut_check(l: &Poset) -> Result<bool, IdentityError> {
    if !l.is_bounded() || !l.is_lattice() {
        return Err(IdentityError::NotLattice);
    }
    let bottom = l.bottom().expect("bounded lattice");
    let top = l.top().expect("bounded lattice");
    let coatoms = l.coatoms()?;
    let k = coatoms.len();
    if k > 20 {
        return Err(IdentityError::OutOfRange(format!(
            "crosscut check enumerates coatom subsets, and {k} coatoms exceed the bound of 20"
        )));
    }
    // Depth-first search over subsets with nonzero meet. Meets only drop
    // as a set grows, so pruning at the first zero meet is sound, and a
    // face is maximal exactly when no further coatom keeps the meet
    // nonzero.
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn extend(
        l: &Poset,
        coatoms: &[usize],
        bottom: usize,
        start: usize,
        meet_so_far: usize,
        chosen: &mut Vec<usize>,
        facets: &mut Vec<Vec<usize>>,
    ) {
        if !chosen.is_empty() {
            let maximal = (0..coatoms.len()).all(|t| {
                chosen.contains(&t)
                    || l.meet(meet_so_far, coatoms[t]).expect("lattice meet") == bottom
            });
            if maximal {
                facets.push(chosen.clone());
            }
        }
        for t in start..coatoms.len() {
            let m = l.meet(meet_so_far, coatoms[t]).expect("lattice meet");
            if m != bottom {
                chosen.push(t);
                extend(l, coatoms, bottom, t + 1, m, chosen, facets);
                chosen.pop();
            }
        }
    }
    extend(l, &coatoms, bottom, 0, top, &mut chosen, &mut facets);
    let gamma = if facets.is_empty() {
        SimplicialComplex::empty(k)
    } else {
        SimplicialComplex::from_facets(k, facets)?
    };
    let h_gamma = homology(&gamma);
    let h_proper = homology(&order_complex(&l.proper_part().poset));
    Ok(homology_profile(&h_gamma) == homology_profile(&h_proper))
}

/// A closure operator (inflationary, idempotent, and order-preserving)
/// does not change the rational homology of the order complex: the poset
/// and its image of closed elements share all Betti numbers. The
/// order-preservation requirement is part of being a closure operator
/// here; without it the comparison can genuinely fail, since the
/// underlying argument treats the closure as a poset map.
pub fn closure_check(p: &Poset, cl: &[usize]) -> Result<bool, IdentityError> {
    if cl.len() != p.len() {
        return Err(IdentityError::WrongLength {
            got: cl.len(),
            want: p.len(),
        });
    }
    for x in 0..p.len() {
        if cl[x] >= p.len() {
            return Err(IdentityError::ValueOutOfRange(cl[x]));
        }
        if !p.leq(x, cl[x]) {
            return Err(IdentityError::NotClosure(format!(
                "cl({x}) does not lie above {x}"
            )));
        }
        if cl[cl[x]] != cl[x] {
            return Err(IdentityError::NotClosure(format!(
                "cl is not idempotent at {x}"
            )));
        }
    }
    if !p.is_order_preserving(p, cl) {
        return Err(IdentityError::NotClosure("cl is not order-preserving".into()));
    }
    let image: Vec<usize> = (0..p.len()).filter(|&x| cl[x] == x).collect();
    let sub = p.induced_subposet(&image)?;
    Ok(poset_betti(p) == poset_betti(&sub.poset))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        boolean, chessboard_complex, graph_property_poset, matching_complex, partition_lattice,
        word_poset, block_restricted_partition_poset, GraphPredicate, SizeSpec, WordKind,
    };
    use crate::oracles::{betti_gf, derangements, euler_number, BettiGfFamily};

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    fn chain(n: usize) -> Poset {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_covers(names(n), &covers).unwrap()
    }

    fn antichain(n: usize) -> Poset {
        Poset::from_covers(names(n), &[]).unwrap()
    }

    #[test]
    fn philip_hall_on_small_posets() {
        let (mu, chi, ok) = philip_hall_check(&partition_lattice(4).unwrap().proper_part().poset);
        assert!(ok);
        assert_eq!(mu, BigInt::from(-6));
        assert_eq!(chi, BigInt::from(-6));

        let (mu, chi, ok) = philip_hall_check(&boolean(3).unwrap().proper_part().poset);
        assert!(ok);
        assert_eq!(mu, BigInt::from(-1));
        assert_eq!(chi, BigInt::from(-1));

        let empty = Poset::from_covers(Vec::new(), &[]).unwrap();
        let (mu, chi, ok) = philip_hall_check(&empty);
        assert!(ok);
        assert_eq!(mu, BigInt::from(-1));
        assert_eq!(chi, BigInt::from(-1));
    }

    #[test]
    fn philip_hall_on_seeded_random_posets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260819);
        for _ in 0..12 {
            let n = rng.gen_range(1..=8);
            let mut covers = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_ratio(1, 3) {
                        covers.push((i, j));
                    }
                }
            }
            let p = Poset::from_covers(names(n), &covers).unwrap();
            let (_, _, ok) = philip_hall_check(&p);
            assert!(ok);
        }
    }

    /// Vertex pairs of the complete graph on four nodes, in the edge
    /// order used by the graph posets.
    const K4_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

    fn k4_components(mask: usize) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..4).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for (t, &(a, b)) in K4_EDGES.iter().enumerate() {
            if mask >> t & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..4 {
            let r = find(&mut parent, v);
            blocks.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = blocks.into_values().collect();
        out.sort_by_key(|b| b[0]);
        out
    }

    fn partition_label(blocks: &[Vec<usize>]) -> String {
        blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|v| (v + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Parse a graph label like "{12,14}" back into an edge mask.
    fn graph_mask(label: &str) -> usize {
        let inner = label.trim_start_matches('{').trim_end_matches('}');
        let mut mask = 0usize;
        if inner.is_empty() {
            return mask;
        }
        for item in inner.split(',') {
            let bytes = item.as_bytes();
            let a = (bytes[0] - b'1') as usize;
            let b = (bytes[1] - b'1') as usize;
            let t = K4_EDGES.iter().position(|&e| e == (a, b)).unwrap();
            mask |= 1 << t;
        }
        mask
    }

    /// The map sending a nonempty disconnected graph on four nodes to
    /// the partition of its components, as a poset map between the
    /// proper parts.
    fn components_map() -> PosetMap {
        let src = graph_property_poset(4, &GraphPredicate::Disconnected)
            .unwrap()
            .proper_part();
        let tgt = partition_lattice(4).unwrap().proper_part();
        let f: Vec<usize> = (0..src.poset.len())
            .map(|x| {
                let mask = graph_mask(src.poset.label(x));
                let label = partition_label(&k4_components(mask));
                (0..tgt.poset.len())
                    .find(|&y| tgt.poset.label(y) == label)
                    .unwrap()
            })
            .collect();
        PosetMap::new(src.poset, tgt.poset, f).unwrap()
    }

    #[test]
    fn quillen_fibers_of_the_components_map() {
        let f = components_map();
        assert_eq!(f.source().len(), 25);
        assert_eq!(f.target().len(), 13);
        assert!(quillen_fiber_check(&f).unwrap());
        assert_eq!(poset_betti(f.source()), BTreeMap::from([(1, 6)]));
    }

    #[test]
    fn quillen_identity_map_and_hypothesis_failure() {
        let p = partition_lattice(3).unwrap();
        let id: Vec<usize> = (0..p.len()).collect();
        let f = PosetMap::new(p.clone(), p, id).unwrap();
        assert!(quillen_fiber_check(&f).unwrap());

        // Two incomparable points both mapping into a chain: the fiber
        // over the upper chain element is the whole antichain, which is
        // not acyclic.
        let f = PosetMap::new(antichain(2), chain(2), vec![0, 1]).unwrap();
        match quillen_fiber_check(&f) {
            Err(IdentityError::FiberNotAcyclic { q: 1, degree: 0 }) => {}
            other => panic!("expected a non-acyclic fiber, got {other:?}"),
        }
    }

    #[test]
    fn general_fiber_formula_on_an_inflated_poset() {
        // Double every element of the three-element poset a < b, a < c.
        // The fibers are two-point antichains and the formula must
        // reproduce the three extra one-cycles.
        let target = Poset::from_covers(names(3), &[(0, 1), (0, 2)]).unwrap();
        let source = Poset::from_covers(
            names(6),
            &[(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5)],
        )
        .unwrap();
        let f = PosetMap::new(source.clone(), target.clone(), vec![0, 0, 1, 1, 2, 2]).unwrap();
        assert_eq!(poset_betti(&source), BTreeMap::from([(1, 3)]));
        assert!(general_fiber_betti_check(&f).unwrap());

        // A constant map from a contractible source.
        let f = PosetMap::new(chain(3), chain(1), vec![0, 0, 0]).unwrap();
        assert!(general_fiber_betti_check(&f).unwrap());

        // Contractible fibers reduce the formula to rank equality.
        assert!(general_fiber_betti_check(&components_map()).unwrap());
    }

    #[test]
    fn alexander_duality_in_a_boolean_sphere() {
        // The proper part of B_4 triangulates a two-sphere; take the
        // four singletons as the subposet.
        let ambient = boolean(4).unwrap().proper_part().poset;
        let singletons: Vec<usize> = (0..ambient.len())
            .filter(|&x| !ambient.label(x).contains(','))
            .collect();
        assert_eq!(singletons.len(), 4);
        assert!(alexander_duality_check(&ambient, &singletons).unwrap());

        // The whole poset against the empty complement.
        let everything: Vec<usize> = (0..ambient.len()).collect();
        assert!(alexander_duality_check(&ambient, &everything).unwrap());

        // A non-sphere ambient poset is rejected.
        let flat = antichain(3);
        assert!(matches!(
            alexander_duality_check(&flat, &[0]),
            Err(IdentityError::NotASphere(_))
        ));
    }

    #[test]
    fn alexander_duality_for_graph_complements() {
        // Proper nonempty graphs on four nodes form the proper part of
        // B_6, a four-sphere; disconnected graphs sit inside it with the
        // connected ones as complement.
        let ambient = boolean(6).unwrap().proper_part();
        let src = graph_property_poset(4, &GraphPredicate::Disconnected).unwrap();
        let disconnected_masks: std::collections::HashSet<usize> = (0..src.len())
            .map(|x| graph_mask(src.label(x)))
            .filter(|&m| m != 0)
            .collect();
        let sub: Vec<usize> = (0..ambient.poset.len())
            .filter(|&x| disconnected_masks.contains(&ambient.source_ids[x].unwrap()))
            .collect();
        assert_eq!(sub.len(), 25);
        assert!(alexander_duality_check(&ambient.poset, &sub).unwrap());
    }

    #[test]
    fn kunneth_join_identities() {
        // Join of two two-point antichains: a circle.
        let a2 = antichain(2);
        assert!(kunneth_checks(&a2, &a2, KunnethKind::Join).unwrap());
        let joined = order_complex(&a2).join(&order_complex(&a2));
        assert_eq!(homology(&joined).betti(1), 1);

        // Joins with wedges of circles on both sides.
        let pi3 = partition_lattice(3).unwrap().proper_part().poset;
        let pi4 = partition_lattice(4).unwrap().proper_part().poset;
        assert!(kunneth_checks(&pi4, &pi4, KunnethKind::Join).unwrap());
        assert!(kunneth_checks(&pi4, &a2, KunnethKind::Join).unwrap());
        assert!(kunneth_checks(&pi3, &chain(2), KunnethKind::Join).unwrap());

        // Joining with the order complex of the empty poset changes
        // nothing.
        let empty = Poset::from_covers(Vec::new(), &[]).unwrap();
        assert!(kunneth_checks(&pi4, &empty, KunnethKind::Join).unwrap());
    }

    #[test]
    fn kunneth_product_identities() {
        let b2 = boolean(2).unwrap();
        let pi3 = partition_lattice(3).unwrap();
        let c3 = chain(3);

        // Bounded inputs exercise both reduced product identities.
        assert!(kunneth_checks(&b2, &b2, KunnethKind::ReducedProduct).unwrap());
        assert!(kunneth_checks(&b2, &pi3, KunnethKind::ReducedProduct).unwrap());
        assert!(kunneth_checks(&pi3, &c3, KunnethKind::ReducedProduct).unwrap());

        for p in [&b2, &pi3, &c3] {
            for q in [&b2, &pi3, &c3] {
                assert!(kunneth_checks(p, q, KunnethKind::OrdinaryProduct).unwrap());
            }
        }
        let a2 = antichain(2);
        assert!(kunneth_checks(&a2, &a2, KunnethKind::OrdinaryProduct).unwrap());
        assert!(kunneth_checks(&a2, &c3, KunnethKind::OrdinaryProduct).unwrap());

        assert!(matches!(
            kunneth_checks(&a2, &b2, KunnethKind::ReducedProduct),
            Err(IdentityError::MissingBottom)
        ));
    }

    #[test]
    fn inflation_betti_identities() {
        // Doubling both endpoints of an edge gives a circle.
        let edge = SimplicialComplex::from_facets(2, vec![vec![0, 1]]).unwrap();
        assert!(inflation_betti_check(&edge, &[2, 2]).unwrap());
        assert_eq!(
            homology(&inflation(&edge, &[2, 2]).unwrap()).betti(1),
            1
        );

        // Trivial multiplicities and a doubled six-cycle.
        let m23 = chessboard_complex(2, 3).unwrap();
        assert!(inflation_betti_check(&m23, &[1; 6]).unwrap());
        assert!(inflation_betti_check(&m23, &[2; 6]).unwrap());
        assert!(inflation_betti_check(&m23, &[2, 1, 3, 1, 2, 1]).unwrap());

        // Two disjoint edges are disconnected, which is unsupported.
        let m22 = matching_complex(4).unwrap();
        assert!(matches!(
            inflation_betti_check(&m22, &[2; 6]),
            Err(IdentityError::Disconnected)
        ));
    }

    #[test]
    fn whitney_sums_match_homology_for_block_size_bounds() {
        // Partitions of [6] with all blocks of size at least three,
        // ordered dually so the one-block partition is the bottom.
        let p = block_restricted_partition_poset(6, &SizeSpec::AtLeast(3)).unwrap();
        assert_eq!(p.len(), 11);
        let dual = p.dual().poset;
        let sums = whitney_betti(&dual, true).unwrap();
        assert_eq!(sums, BTreeMap::from([(0, BigInt::from(9))]));

        // The same numbers from the generating-function oracle and from
        // the boundary-matrix homology of the poset minus its extremes.
        let table = betti_gf(&BettiGfFamily::AtLeastK { n: 6, k: 3 }).unwrap();
        assert_eq!(table, BTreeMap::from([(0, BigInt::from(9))]));
        assert_eq!(
            poset_betti(&p.proper_part().poset),
            BTreeMap::from([(0, 9)])
        );
    }

    #[test]
    fn whitney_sums_match_tangent_numbers_for_even_blocks() {
        // Partitions with all blocks even, dualized. The answers are the
        // tangent numbers E_3 = 2 and E_7 = 272.
        let p4 = block_restricted_partition_poset(4, &SizeSpec::Divisible(2)).unwrap();
        let sums = whitney_betti(&p4.dual().poset, true).unwrap();
        assert_eq!(sums, BTreeMap::from([(0, BigInt::from(2))]));
        assert_eq!(BigInt::from(2), euler_number(3));

        let p8 = block_restricted_partition_poset(8, &SizeSpec::Divisible(2)).unwrap();
        assert_eq!(p8.len(), 379);
        let sums = whitney_betti(&p8.dual().poset, false).unwrap();
        assert_eq!(sums, BTreeMap::from([(2, euler_number(7))]));
    }

    #[test]
    fn whitney_sums_on_truncated_boolean_lattices() {
        // B_4 minus its top is pure with a bottom; the alternating sums
        // put a single class in the top degree, matching the sphere left
        // by deleting the maximum.
        let b4 = boolean(4).unwrap();
        let keep: Vec<usize> = (0..b4.len()).filter(|&x| x != b4.top().unwrap()).collect();
        let trunc = b4.induced_subposet(&keep).unwrap().poset;
        let sums = whitney_betti(&trunc, true).unwrap();
        assert_eq!(sums, BTreeMap::from([(2, BigInt::from(1))]));
        assert_eq!(poset_betti(&trunc.proper_part().poset), BTreeMap::from([(2, 1)]));

        // The full Boolean lattice keeps its top, everything cancels.
        let sums = whitney_betti(&b4, true).unwrap();
        assert_eq!(sums, BTreeMap::from([(3, BigInt::from(0))]));

        // A poset whose covers jump ranks is rejected.
        let jagged = Poset::from_covers(
            names(5),
            &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)],
        )
        .unwrap();
        assert!(matches!(
            whitney_betti(&jagged, false),
            Err(IdentityError::NotSemipure(_))
        ));
    }

    /// The permutation of proper-part ids of B_n induced by a
    /// permutation of the ground set [n].
    fn boolean_action(derived: &crate::poset::Derived, n: usize, sigma: &[usize]) -> Vec<usize> {
        let mut by_mask = vec![usize::MAX; 1 << n];
        for x in 0..derived.poset.len() {
            by_mask[derived.source_ids[x].unwrap()] = x;
        }
        (0..derived.poset.len())
            .map(|x| {
                let mask = derived.source_ids[x].unwrap();
                let image = (0..n)
                    .filter(|&b| mask >> b & 1 == 1)
                    .fold(0usize, |acc, b| acc | 1 << sigma[b]);
                by_mask[image]
            })
            .collect()
    }

    #[test]
    fn fixed_points_in_boolean_lattices() {
        let derived = boolean(4).unwrap().proper_part();
        let p = &derived.poset;

        // A four-cycle on the ground set fixes no proper nonempty
        // subset, so both sides see the empty poset.
        let cycle = boolean_action(&derived, 4, &[1, 2, 3, 0]);
        let g = GroupElementAction::new(p, cycle).unwrap();
        let (lhs, rhs, ok) = fixed_point_lefschetz(p, &g).unwrap();
        assert!(ok);
        assert_eq!(lhs, BigInt::from(-1));
        assert_eq!(rhs, BigInt::from(-1));

        // A transposition fixes the subsets built from its orbits, a
        // copy of the proper part of B_3: a circle.
        let swap = boolean_action(&derived, 4, &[1, 0, 2, 3]);
        let g = GroupElementAction::new(p, swap).unwrap();
        let (lhs, _, ok) = fixed_point_lefschetz(p, &g).unwrap();
        assert!(ok);
        assert_eq!(lhs, BigInt::from(-1));

        // The identity recovers the Euler characteristic of the sphere.
        let ident: Vec<usize> = (0..p.len()).collect();
        let g = GroupElementAction::new(p, ident).unwrap();
        let (lhs, _, ok) = fixed_point_lefschetz(p, &g).unwrap();
        assert!(ok);
        assert_eq!(lhs, BigInt::from(1));

        // A non-permutation and a non-order-preserving permutation are
        // both rejected.
        assert!(matches!(
            GroupElementAction::new(p, vec![0; p.len()]),
            Err(IdentityError::NotAPermutation)
        ));
        let mut bad: Vec<usize> = (0..p.len()).collect();
        bad.swap(0, p.len() - 1);
        assert!(matches!(
            GroupElementAction::new(p, bad),
            Err(IdentityError::NotOrderPreserving)
        ));
    }

    /// The permutation of word-poset ids induced by a permutation of the
    /// letters 1..=n (labels are digit strings).
    fn word_action(p: &Poset, sigma: &[usize]) -> Vec<usize> {
        (0..p.len())
            .map(|x| {
                let image: String = p
                    .label(x)
                    .bytes()
                    .map(|b| {
                        let letter = (b - b'1') as usize;
                        char::from(b'1' + sigma[letter] as u8)
                    })
                    .collect();
                (0..p.len()).find(|&y| p.label(y) == image).unwrap()
            })
            .collect()
    }

    #[test]
    fn fixed_points_in_word_posets() {
        // Normal words of length at most two on three letters: a
        // transposition leaves only the one fixed letter, and a word of
        // two equal letters is not normal, so the trace is zero.
        let p = word_poset(3, 2, WordKind::Normal).unwrap();
        let g = GroupElementAction::new(&p, word_action(&p, &[1, 0, 2])).unwrap();
        let (lhs, rhs, ok) = fixed_point_lefschetz(&p, &g).unwrap();
        assert!(ok);
        assert_eq!(lhs, BigInt::from(0));
        assert_eq!(rhs, BigInt::from(0));

        // Injective words on [n]: the trace of a permutation with f
        // fixed letters is the f-th derangement number up to the parity
        // of the deleted letters.
        for (n, sigma, f) in [
            (3usize, vec![1usize, 0, 2], 1usize),
            (3, vec![1, 2, 0], 0),
            (3, vec![0, 1, 2], 3),
            (4, vec![1, 0, 3, 2], 0),
            (4, vec![0, 1, 3, 2], 2),
            (4, vec![0, 1, 2, 3], 4),
        ] {
            let p = word_poset(n, n, WordKind::Injective).unwrap();
            let g = GroupElementAction::new(&p, word_action(&p, &sigma)).unwrap();
            let (lhs, _, ok) = fixed_point_lefschetz(&p, &g).unwrap();
            assert!(ok);
            let sign = if f % 2 == 1 { 1 } else { -1 };
            assert_eq!(lhs, BigInt::from(sign) * derangements(f));
        }
    }

    #[test]
    fn crosscut_complexes_match_proper_parts() {
        assert!(crosscut_check(&boolean(3).unwrap()).unwrap());
        assert!(crosscut_check(&boolean(4).unwrap()).unwrap());
        assert!(crosscut_check(&partition_lattice(4).unwrap()).unwrap());
        // A two-element chain: the single coatom is the bottom, so the
        // crosscut complex is empty, like the proper part.
        assert!(crosscut_check(&chain(2)).unwrap());
        assert!(matches!(
            crosscut_check(&antichain(2)),
            Err(IdentityError::NotLattice)
        ));
    }

    #[test]
    fn closure_operators_preserve_betti_numbers() {
        // Nonempty subsets of [3], closed by adding the element 3. The
        // closed sets form a copy of B_2, and everything is contractible.
        let b3 = boolean(3).unwrap();
        let keep: Vec<usize> = (1..b3.len()).collect();
        let derived = b3.induced_subposet(&keep).unwrap();
        let p = &derived.poset;
        let cl: Vec<usize> = (0..p.len())
            .map(|x| {
                let mask = derived.source_ids[x].unwrap() | 0b100;
                (0..p.len())
                    .find(|&y| derived.source_ids[y].unwrap() == mask)
                    .unwrap()
            })
            .collect();
        assert!(closure_check(p, &cl).unwrap());

        // The closure is also a poset map with contractible fibers.
        let image: Vec<usize> = (0..p.len()).filter(|&x| cl[x] == x).collect();
        let sub = p.induced_subposet(&image).unwrap();
        let f: Vec<usize> = (0..p.len())
            .map(|x| sub.source_ids.iter().position(|&s| s == Some(cl[x])).unwrap())
            .collect();
        let map = PosetMap::new(p.clone(), sub.poset, f).unwrap();
        assert!(quillen_fiber_check(&map).unwrap());

        // Inflationary and idempotent but not order-preserving: rejected.
        let v = Poset::from_covers(names(3), &[(0, 1), (0, 2)]).unwrap();
        assert!(matches!(
            closure_check(&v, &[1, 1, 2]),
            Err(IdentityError::NotClosure(_))
        ));
        // Not idempotent: rejected.
        let c3 = chain(3);
        assert!(matches!(
            closure_check(&c3, &[1, 2, 2]),
            Err(IdentityError::NotClosure(_))
        ));
    }
}
