//! Consistency suites behind `posettop check`.
//!
//! Every item recomputes an invariant along two independent routes and
//! compares the results. Items carry a size so `--max-size` can bound
//! the work; skipped items still appear on the scoreboard.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num::BigInt;
use rand::{Rng, SeedableRng};

use posettop::arrangements::{
    builtin_arrangement, goresky_macpherson_betti, intersection_semilattice, orlik_solomon_betti,
    zaslavsky, BuiltinArrangement,
};
use posettop::complex::{order_complex, SimplicialComplex};
use posettop::families::{
    block_restricted_partition_poset, boolean, boolean_with_labeling, chessboard_complex,
    graph_property_poset, k_equal_with_labeling, matching_complex, noncrossing,
    noncrossing_with_labeling, partition_lattice, partition_lattice_with_labeling,
    type_b_partition_lattice, word_poset, GraphPredicate, PartitionLabelKind, SizeSpec, WordKind,
};
use posettop::homology::{
    betti_open_interval, homology, laplacian_betti, laplacian_spectrum_multiplicities,
    ChainComplex, HomologyResult,
};
use posettop::identities::{
    alexander_duality_check, closure_check, crosscut_check, fixed_point_lefschetz,
    general_fiber_betti_check, inflation_betti_check, kunneth_checks, philip_hall_check,
    quillen_fiber_check, whitney_betti, GroupElementAction, IdentityError, KunnethKind, PosetMap,
};
use posettop::oracles::{
    betti_gf, bouc_betti, catalan, derangements, descent_class, double_factorial, euler_number,
    factorial, laplacian_spectrum_candidates, BettiGfFamily,
};
use posettop::poset::Poset;
use posettop::shelling::{
    betti_from_el, decreasing_chains, is_shelling, rank_selected, search_recursive_atom_ordering,
    verify_el_labeling, verify_recursive_atom_ordering, EdgeLabeling, RecursiveAtomCertificate,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub suite: &'static str,
    pub size: usize,
    pub status: Status,
    pub detail: String,
}

struct CheckItem {
    name: &'static str,
    suite: &'static str,
    size: usize,
    run: fn() -> Result<String, String>,
}

const SUITES: [&str; 4] = ["families", "shelling", "identities", "arrangements"];

/// Run one suite (or `all`, or a single item by name). Items whose size
/// exceeds `max_size` are reported as skipped.
pub fn run_suite(selector: &str, max_size: usize) -> Result<Vec<CheckOutcome>, String> {
    let all = items();
    let selected: Vec<CheckItem> = if selector == "all" {
        all
    } else if SUITES.contains(&selector) {
        all.into_iter().filter(|i| i.suite == selector).collect()
    } else {
        let picked: Vec<CheckItem> = all.into_iter().filter(|i| i.name == selector).collect();
        if picked.is_empty() {
            return Err(format!(
                "unknown suite or check name `{selector}`; suites are all, families, shelling, identities, arrangements"
            ));
        }
        picked
    };

    let outcomes: Vec<CheckOutcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|item| {
                if item.size > max_size {
                    None
                } else {
                    Some(scope.spawn(item.run))
                }
            })
            .collect();
        selected
            .iter()
            .zip(handles)
            .map(|(item, handle)| {
                let (status, detail) = match handle {
                    None => (Status::Skip, format!("needs --max-size {}", item.size)),
                    Some(h) => match h.join() {
                        Ok(Ok(detail)) => (Status::Pass, detail),
                        Ok(Err(detail)) => (Status::Fail, detail),
                        Err(payload) => (Status::Fail, format!("panicked: {}", panic_text(&payload))),
                    },
                };
                CheckOutcome {
                    name: item.name,
                    suite: item.suite,
                    size: item.size,
                    status,
                    detail,
                }
            })
            .collect()
    });
    Ok(outcomes)
}

fn panic_text(payload: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "opaque panic payload".to_string()
    }
}

fn items() -> Vec<CheckItem> {
    macro_rules! item {
        ($name:literal, $suite:literal, $size:literal, $f:expr) => {
            CheckItem { name: $name, suite: $suite, size: $size, run: $f }
        };
    }
    vec![
        item!("partition-betti-3", "families", 3, || partition_top(3)),
        item!("partition-betti-4", "families", 4, || partition_top(4)),
        item!("partition-betti-5", "families", 5, || partition_top(5)),
        item!("partition-betti-6", "families", 6, || partition_top(6)),
        item!("type-b-betti-2", "families", 2, || type_b_top(2)),
        item!("type-b-betti-3", "families", 3, || type_b_top(3)),
        item!("type-b-betti-4", "families", 4, || type_b_top(4)),
        item!("even-blocks-4", "families", 4, || even_blocks(4)),
        item!("even-blocks-6", "families", 6, || even_blocks(6)),
        item!("odd-blocks-5", "families", 5, odd_blocks_5),
        item!("at-least-6-3", "families", 6, at_least_6_3),
        item!("k-equal-6-3", "families", 6, k_equal_6_3),
        item!("injective-words-3", "families", 3, || injective_words(3)),
        item!("injective-words-4", "families", 4, || injective_words(4)),
        item!("normal-words-3", "families", 3, normal_words_3),
        item!("normal-words-4", "families", 4, normal_words_4),
        item!("noncrossing-4", "families", 4, noncrossing_4),
        item!("chessboard-5-5", "families", 5, chessboard_5_5),
        item!("matching-bouc-4", "families", 4, || matching_bouc(4)),
        item!("matching-bouc-5", "families", 5, || matching_bouc(5)),
        item!("matching-bouc-6", "families", 6, || matching_bouc(6)),
        item!("matching-bouc-7", "families", 7, || matching_bouc(7)),
        item!("rank-selection-4", "families", 4, rank_selection_4),
        item!("simplex-facet-orders", "shelling", 3, simplex_facet_orders),
        item!("disjoint-edges", "shelling", 3, disjoint_edges),
        item!("el-labelings-4", "shelling", 4, el_labelings_4),
        item!("rao-boolean-4", "shelling", 4, rao_boolean_4),
        item!("rao-partition-4", "shelling", 4, rao_partition_4),
        item!("rao-crosswise", "shelling", 3, rao_crosswise),
        item!("philip-hall-random", "identities", 3, philip_hall_random),
        item!("boundary-squares", "identities", 3, boundary_squares),
        item!("euler-poincare", "identities", 3, euler_poincare),
        item!("kunneth-pairs", "identities", 3, kunneth_pairs),
        item!("alexander-boolean-4", "identities", 4, alexander_boolean_4),
        item!("alexander-graphs-4", "identities", 4, alexander_graphs_4),
        item!("quillen-components-4", "identities", 4, quillen_components_4),
        item!("quillen-hypothesis", "identities", 3, quillen_hypothesis),
        item!("general-fiber-3", "identities", 3, general_fiber_3),
        item!("fixed-point-boolean-3", "identities", 3, || fixed_point_boolean(3)),
        item!("fixed-point-boolean-4", "identities", 4, || fixed_point_boolean(4)),
        item!("fixed-point-boolean-5", "identities", 5, || fixed_point_boolean(5)),
        item!("fixed-point-words-3", "identities", 3, fixed_point_words_3),
        item!("whitney-even-4", "identities", 4, whitney_even_4),
        item!("whitney-truncated-4", "identities", 4, whitney_truncated_4),
        item!("crosscut-4", "identities", 4, crosscut_4),
        item!("closure-3", "identities", 3, closure_3),
        item!("inflation-3", "identities", 3, inflation_3),
        item!("braid-lattice-2", "arrangements", 2, || braid_lattice(2)),
        item!("braid-lattice-3", "arrangements", 3, || braid_lattice(3)),
        item!("braid-lattice-4", "arrangements", 4, || braid_lattice(4)),
        item!("braid-lattice-5", "arrangements", 5, || braid_lattice(5)),
        item!("region-counts-2", "arrangements", 2, region_counts_2),
        item!("orlik-solomon-braid-3", "arrangements", 3, orlik_solomon_braid_3),
        item!("gm-k-equal-4-3", "arrangements", 4, gm_k_equal_4_3),
    ]
}

// ---- shared helpers ----

fn es(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn chain(n: usize) -> Poset {
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_covers(names(n), &covers).unwrap()
}

fn antichain(n: usize) -> Poset {
    Poset::from_covers(names(n), &[]).unwrap()
}

/// Nonzero reduced Betti numbers together with torsion, keyed by dimension.
fn profile(h: &HomologyResult) -> BTreeMap<i64, (usize, Vec<BigInt>)> {
    h.dims
        .iter()
        .filter(|(_, d)| d.betti > 0 || !d.torsion.is_empty())
        .map(|(&i, d)| (i, (d.betti, d.torsion.clone())))
        .collect()
}

fn proper_homology(p: &Poset) -> HomologyResult {
    homology(&order_complex(&p.proper_part().poset))
}

/// Expect homology concentrated in one dimension, torsion-free, with the
/// given rank.
fn expect_top(h: &HomologyResult, dim: i64, rank: &BigInt, what: &str) -> Result<String, String> {
    let want: BTreeMap<i64, (usize, Vec<BigInt>)> = match usize::try_from(rank.clone()) {
        Ok(0) => BTreeMap::new(),
        Ok(r) => BTreeMap::from([(dim, (r, Vec::new()))]),
        Err(_) => return Err(format!("{what}: expected rank {rank} does not fit in usize")),
    };
    let got = profile(h);
    if got == want {
        Ok(format!("{what}: homology is free of rank {rank} in dimension {dim} and zero elsewhere"))
    } else {
        Err(format!("{what}: expected {want:?}, got {got:?}"))
    }
}

fn betti_map(h: &HomologyResult) -> BTreeMap<i64, BigInt> {
    h.dims
        .iter()
        .filter(|(_, d)| d.betti > 0)
        .map(|(&i, d)| (i, BigInt::from(d.betti)))
        .collect()
}

// ---- families ----

fn partition_top(n: usize) -> Result<String, String> {
    let p = partition_lattice(n).map_err(es)?;
    let h = proper_homology(&p);
    expect_top(&h, n as i64 - 3, &factorial(n - 1), &format!("partition lattice on [{n}]"))
}

fn type_b_top(n: usize) -> Result<String, String> {
    let p = type_b_partition_lattice(n).map_err(es)?;
    let h = proper_homology(&p);
    expect_top(&h, n as i64 - 2, &double_factorial(2 * n - 1), &format!("type B partition lattice, n = {n}"))
}

fn even_blocks(n: usize) -> Result<String, String> {
    let p = block_restricted_partition_poset(n, &SizeSpec::Divisible(2)).map_err(es)?;
    let h = proper_homology(&p);
    let dim = n as i64 / 2 - 2;
    let tangent = euler_number(n - 1);
    expect_top(&h, dim, &tangent, &format!("even block sizes on [{n}]"))?;
    let gf = betti_gf(&BettiGfFamily::ZeroModD { n: n / 2, d: 2 }).map_err(es)?;
    let want: BTreeMap<i64, BigInt> = if tangent == BigInt::from(0) {
        BTreeMap::new()
    } else {
        BTreeMap::from([(dim, tangent.clone())])
    };
    if gf != want {
        return Err(format!("generating function table {gf:?} disagrees with {want:?}"));
    }
    Ok(format!("top Betti number {tangent} matches the tangent number and the generating function"))
}

fn odd_blocks_5() -> Result<String, String> {
    let p = block_restricted_partition_poset(5, &SizeSpec::Congruent { r: 1, d: 2 }).map_err(es)?;
    let proper = p.proper_part();
    if proper.poset.len() != 10 || !proper.poset.covers().is_empty() {
        return Err("expected the proper part to be a ten-element antichain".to_string());
    }
    let h = homology(&order_complex(&proper.poset));
    expect_top(&h, 0, &BigInt::from(9), "odd block sizes on [5]")?;
    let gf = betti_gf(&BettiGfFamily::OneModD { n: 2, d: 2 }).map_err(es)?;
    if gf != BTreeMap::from([(0, BigInt::from(9))]) {
        return Err(format!("generating function table {gf:?} is not β_0 = 9"));
    }
    Ok("ten-element antichain with β_0 = 9, matching the compositional inverse".to_string())
}

fn at_least_6_3() -> Result<String, String> {
    let p = block_restricted_partition_poset(6, &SizeSpec::AtLeast(3)).map_err(es)?;
    let snf = betti_map(&proper_homology(&p));
    let gf = betti_gf(&BettiGfFamily::AtLeastK { n: 6, k: 3 }).map_err(es)?;
    if snf != gf {
        return Err(format!("matrix homology {snf:?} disagrees with the generating function {gf:?}"));
    }
    let whitney = whitney_betti(&p.dual().poset, true).map_err(es)?;
    if whitney != gf {
        return Err(format!("Whitney sums {whitney:?} disagree with {gf:?}"));
    }
    if gf != BTreeMap::from([(0, BigInt::from(9))]) {
        return Err(format!("expected β_0 = 9, got {gf:?}"));
    }
    Ok("β_0 = 9 three ways: matrices, generating function, Whitney sums on the dual".to_string())
}

fn k_equal_6_3() -> Result<String, String> {
    let (p, lab) = k_equal_with_labeling(6, 3).map_err(es)?;
    let snf = betti_map(&proper_homology(&p));
    let want: BTreeMap<i64, BigInt> = [(1, BigInt::from(10)), (2, BigInt::from(10))].into();
    if snf != want {
        return Err(format!("matrix homology gave {snf:?}, expected {want:?}"));
    }
    let el: BTreeMap<i64, BigInt> = betti_from_el(&p, &lab)
        .map_err(es)?
        .into_iter()
        .map(|(i, b)| (i, BigInt::from(b)))
        .filter(|(_, b)| *b != BigInt::from(0))
        .collect();
    if el != want {
        return Err(format!("falling chain counts gave {el:?}, expected {want:?}"));
    }
    Ok("β_1 = β_2 = 10 from matrices and from falling chains".to_string())
}

fn injective_words(n: usize) -> Result<String, String> {
    let p = word_poset(n, n, WordKind::Injective).map_err(es)?;
    let h = homology(&order_complex(&p));
    expect_top(&h, n as i64 - 1, &derangements(n), &format!("injective words, n = {n}"))
}

fn normal_words(n: usize, k: usize) -> Result<String, String> {
    let p = word_poset(n, k, WordKind::Normal).map_err(es)?;
    let h = homology(&order_complex(&p));
    let want = BigInt::from(n - 1).pow(k as u32);
    expect_top(&h, k as i64 - 1, &want, &format!("normal words, n = {n}, k = {k}"))
}

fn normal_words_3() -> Result<String, String> {
    normal_words(3, 2)?;
    normal_words(3, 3)
}

fn normal_words_4() -> Result<String, String> {
    normal_words(4, 2)
}

fn noncrossing_4() -> Result<String, String> {
    let nc = noncrossing(4).map_err(es)?;
    let mu = nc.mobius_invariant().map_err(es)?;
    if mu != -catalan(3) {
        return Err(format!("Möbius invariant {mu}, expected -5"));
    }
    expect_top(&proper_homology(&nc), 1, &catalan(3), "noncrossing partitions of [4]")?;
    let (ncl, lab) = noncrossing_with_labeling(4).map_err(es)?;
    let falling = decreasing_chains(&ncl, &lab).map_err(es)?;
    if falling.len() != 5 {
        return Err(format!("{} falling chains, expected 5", falling.len()));
    }
    Ok("|μ| = β_1 = falling chain count = 5".to_string())
}

fn chessboard_5_5() -> Result<String, String> {
    let c = chessboard_complex(5, 5).map_err(es)?;
    let h = homology(&c);
    if h.betti(2) != 0 || h.torsion(2) != vec![BigInt::from(3)] {
        return Err(format!(
            "degree 2 gave rank {} and torsion {:?}, expected pure 3-torsion",
            h.betti(2),
            h.torsion(2)
        ));
    }
    Ok("the 5 by 5 chessboard complex has three-torsion and rank zero in degree 2".to_string())
}

fn matching_bouc(n: usize) -> Result<String, String> {
    let c = matching_complex(n).map_err(es)?;
    let h = homology(&c);
    for i in -1..=c.dim() {
        let want = bouc_betti(n, i);
        if BigInt::from(h.betti(i)) != want {
            return Err(format!("β_{i} = {} but the rank formula says {want}", h.betti(i)));
        }
    }
    if n <= 6 {
        for i in -1..=c.dim() {
            let lap = laplacian_betti(&c, i);
            if lap != h.betti(i) {
                return Err(format!("Laplacian kernel rank {lap} in degree {i}, matrices say {}", h.betti(i)));
            }
        }
        let candidates = laplacian_spectrum_candidates(n);
        for i in 0..=c.dim() {
            let spec = laplacian_spectrum_multiplicities(&c, i, &candidates).map_err(es)?;
            if spec.is_none() {
                return Err(format!("degree {i} Laplacian spectrum escapes the predicted eigenvalues"));
            }
        }
        return Ok(format!("matching complex M_{n}: ranks, Laplacian kernels, and spectra all agree"));
    }
    Ok(format!("matching complex M_{n}: every Betti number matches the rank formula"))
}

fn rank_selection_4() -> Result<String, String> {
    let b4 = boolean(4).map_err(es)?;
    for mask in 0..8usize {
        let r: BTreeSet<usize> = (1..=3).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let sel = rank_selected(&b4, &r).map_err(es)?;
        let h = homology(&order_complex(&sel.poset));
        let top = r.len() as i64 - 1;
        let want = descent_class(4, &r);
        expect_top(&h, top, &want, &format!("rank selection {r:?}"))?;
    }
    Ok("all eight rank selections of the rank 4 Boolean lattice match descent class sizes".to_string())
}

// ---- shelling ----

fn simplex_facet_orders() -> Result<String, String> {
    let facets: Vec<Vec<usize>> = (0..4usize).combinations(3).collect();
    let c = SimplicialComplex::from_facets(4, facets).map_err(es)?;
    for order in (0..4usize).permutations(4) {
        let report = is_shelling(&c, &order).map_err(es)?;
        if !report.is_shelling {
            return Err(format!("facet order {order:?} rejected"));
        }
        if report.sphere_counts != BTreeMap::from([(2, 1)]) {
            return Err(format!("order {order:?} gave sphere counts {:?}", report.sphere_counts));
        }
    }
    Ok("all 24 facet orders of the boundary of the 3-simplex shell, one homology facet each".to_string())
}

fn disjoint_edges() -> Result<String, String> {
    let c = SimplicialComplex::from_facets(4, vec![vec![0, 1], vec![2, 3]]).map_err(es)?;
    for order in [[0usize, 1], [1, 0]] {
        if is_shelling(&c, &order).map_err(es)?.is_shelling {
            return Err(format!("two disjoint edges reported shellable under {order:?}"));
        }
    }
    Ok("both facet orders of two disjoint edges fail the shelling condition".to_string())
}

fn el_pipeline(p: &Poset, lab: &EdgeLabeling, what: &str) -> Result<(), String> {
    if !verify_el_labeling(p, lab).map_err(es)? {
        return Err(format!("{what}: labeling is not EL"));
    }
    let el: BTreeMap<i64, usize> = betti_from_el(p, lab)
        .map_err(es)?
        .into_iter()
        .filter(|&(_, b)| b != 0)
        .collect();
    let snf: BTreeMap<i64, usize> = proper_homology(p)
        .dims
        .iter()
        .filter(|(_, d)| d.betti > 0)
        .map(|(&i, d)| (i, d.betti))
        .collect();
    if el != snf {
        return Err(format!("{what}: falling chains {el:?} disagree with matrices {snf:?}"));
    }
    Ok(())
}

fn el_labelings_4() -> Result<String, String> {
    let (p, lab) = partition_lattice_with_labeling(4, PartitionLabelKind::MaxOfMins).map_err(es)?;
    el_pipeline(&p, &lab, "partition lattice, max-of-mins")?;
    let (p, lab) = partition_lattice_with_labeling(4, PartitionLabelKind::MaxOfUnion).map_err(es)?;
    el_pipeline(&p, &lab, "partition lattice, max-of-union")?;
    let (p, lab) = boolean_with_labeling(4).map_err(es)?;
    el_pipeline(&p, &lab, "Boolean lattice")?;
    let (p, lab) = noncrossing_with_labeling(4).map_err(es)?;
    el_pipeline(&p, &lab, "noncrossing partition lattice")?;
    Ok("four EL labelings verified; falling chain counts equal matrix homology".to_string())
}

/// Build a certificate whose root order is `order`, expanding children by
/// listing the atoms that cover an earlier atom first.
fn rao_cert(p: &Poset, order: Vec<usize>) -> RecursiveAtomCertificate {
    let children = (0..order.len())
        .map(|j| {
            let ups = p.up_covers(order[j]);
            let early: Vec<usize> = ups
                .iter()
                .copied()
                .filter(|&z| order[..j].iter().any(|&b| p.leq(b, z)))
                .collect();
            let mut child: Vec<usize> = early.clone();
            child.extend(ups.iter().copied().filter(|z| !early.contains(z)));
            rao_cert(p, child)
        })
        .collect();
    RecursiveAtomCertificate { atom_order: order, children }
}

fn rao_all_root_orders(p: &Poset, what: &str) -> Result<String, String> {
    let atoms = p.atoms().map_err(es)?;
    let mut count = 0usize;
    for order in atoms.iter().copied().permutations(atoms.len()) {
        let cert = rao_cert(p, order.clone());
        if !verify_recursive_atom_ordering(p, &cert).map_err(es)? {
            return Err(format!("{what}: root atom order {order:?} rejected"));
        }
        count += 1;
    }
    if search_recursive_atom_ordering(p).map_err(es)?.is_none() {
        return Err(format!("{what}: search found no recursive atom ordering"));
    }
    Ok(format!("{what}: all {count} root atom orders verified and the search succeeds"))
}

fn rao_boolean_4() -> Result<String, String> {
    rao_all_root_orders(&boolean(4).map_err(es)?, "Boolean lattice of rank 4")
}

fn rao_partition_4() -> Result<String, String> {
    rao_all_root_orders(&partition_lattice(4).map_err(es)?, "partition lattice of [4]")
}

fn rao_crosswise() -> Result<String, String> {
    let covers = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 5), (3, 6), (4, 6), (5, 7), (6, 7)];
    let p = Poset::from_covers(names(8), &covers).map_err(es)?;
    match search_recursive_atom_ordering(&p).map_err(es)? {
        None => Ok("the crosswise bounded poset admits no recursive atom ordering".to_string()),
        Some(c) => Err(format!("search produced a certificate {c:?} on a non-CL poset")),
    }
}

// ---- identities ----

fn philip_hall_random() -> Result<String, String> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260819);
    for trial in 0..100 {
        let n = rng.gen_range(1..=10);
        let mut covers = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_ratio(1, 3) {
                    covers.push((i, j));
                }
            }
        }
        let p = Poset::from_covers(names(n), &covers).map_err(es)?;
        let (mu, chi, ok) = philip_hall_check(&p);
        if !ok {
            return Err(format!("trial {trial}: μ = {mu} but reduced Euler characteristic {chi}"));
        }
    }
    Ok("Möbius equals the reduced Euler characteristic on 100 seeded random posets".to_string())
}

fn corpus() -> Result<Vec<(String, SimplicialComplex)>, String> {
    Ok(vec![
        ("matching complex M_5".to_string(), matching_complex(5).map_err(es)?),
        ("chessboard complex M_{3,4}".to_string(), chessboard_complex(3, 4).map_err(es)?),
        (
            "order complex of the proper partition lattice of [4]".to_string(),
            order_complex(&partition_lattice(4).map_err(es)?.proper_part().poset),
        ),
        (
            "boundary of the 3-simplex".to_string(),
            SimplicialComplex::from_facets(4, (0..4usize).combinations(3).collect()).map_err(es)?,
        ),
        ("two disjoint edges".to_string(), SimplicialComplex::from_facets(4, vec![vec![0, 1], vec![2, 3]]).map_err(es)?),
    ])
}

fn boundary_squares() -> Result<String, String> {
    for (what, c) in corpus()? {
        let cc = ChainComplex::from_complex(&c).map_err(es)?;
        if !cc.boundary_square_is_zero() {
            return Err(format!("{what}: composing consecutive boundary maps is nonzero"));
        }
    }
    Ok("the boundary operator squares to zero on the whole corpus".to_string())
}

fn euler_poincare() -> Result<String, String> {
    for (what, c) in corpus()? {
        let chi = c.reduced_euler_characteristic();
        let h = homology(&c);
        let mut alt = BigInt::from(0);
        for (&i, d) in &h.dims {
            let term = BigInt::from(d.betti);
            if i.rem_euclid(2) == 0 {
                alt += term;
            } else {
                alt -= term;
            }
        }
        if chi != alt {
            return Err(format!("{what}: face count χ = {chi}, homology χ = {alt}"));
        }
    }
    Ok("alternating face counts equal alternating Betti sums on the corpus".to_string())
}

fn kunneth_pairs() -> Result<String, String> {
    let base = vec![
        ("B_2", boolean(2).map_err(es)?),
        ("Π_3", partition_lattice(3).map_err(es)?),
        ("two-element antichain", antichain(2)),
        ("three-element chain", chain(3)),
    ];
    for (na, a) in &base {
        for (nb, b) in &base {
            if !kunneth_checks(a, b, KunnethKind::Join).map_err(es)? {
                return Err(format!("join of {na} and {nb} fails the convolution identity"));
            }
            if !kunneth_checks(a, b, KunnethKind::OrdinaryProduct).map_err(es)? {
                return Err(format!("product of {na} and {nb} fails the unreduced identity"));
            }
            let bounded = a.bottom().is_some() && b.bottom().is_some();
            if bounded {
                if !kunneth_checks(a, b, KunnethKind::ReducedProduct).map_err(es)? {
                    return Err(format!("reduced product of {na} and {nb} fails"));
                }
            } else {
                match kunneth_checks(a, b, KunnethKind::ReducedProduct) {
                    Err(IdentityError::MissingBottom) => {}
                    other => return Err(format!("reduced product of {na} and {nb} gave {other:?} without bottoms")),
                }
            }
        }
    }
    Ok("join and product convolution identities hold on all base pairs".to_string())
}

fn alexander_boolean_4() -> Result<String, String> {
    let ambient = boolean(4).map_err(es)?.proper_part().poset;
    let singletons: Vec<usize> = (0..ambient.len()).filter(|&x| !ambient.label(x).contains(',')).collect();
    if !alexander_duality_check(&ambient, &singletons).map_err(es)? {
        return Err("the four singletons fail duality inside the 2-sphere".to_string());
    }
    let everything: Vec<usize> = (0..ambient.len()).collect();
    if !alexander_duality_check(&ambient, &everything).map_err(es)? {
        return Err("the full poset against the empty complement fails".to_string());
    }
    Ok("duality holds for the singleton subposet and for the whole sphere".to_string())
}

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
        .map(|b| b.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

fn alexander_graphs_4() -> Result<String, String> {
    let derived = boolean(6).map_err(es)?.proper_part();
    let ambient = &derived.poset;
    let sub: Vec<usize> = (0..ambient.len())
        .filter(|&x| {
            let mask = derived.source_ids[x].unwrap();
            k4_components(mask).len() > 1
        })
        .collect();
    if !alexander_duality_check(ambient, &sub).map_err(es)? {
        return Err("the disconnected-graph subposet fails duality in the edge sphere".to_string());
    }
    Ok(format!(
        "duality holds for the {} disconnected graphs inside the sphere of edge subsets",
        sub.len()
    ))
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

fn components_map() -> Result<PosetMap, String> {
    let src = graph_property_poset(4, &GraphPredicate::Disconnected).map_err(es)?.proper_part();
    let tgt = partition_lattice(4).map_err(es)?.proper_part();
    let f: Vec<usize> = (0..src.poset.len())
        .map(|x| {
            let mask = graph_mask(src.poset.label(x));
            let label = partition_label(&k4_components(mask));
            (0..tgt.poset.len()).find(|&y| tgt.poset.label(y) == label).unwrap()
        })
        .collect();
    PosetMap::new(src.poset, tgt.poset, f).map_err(es)
}

fn quillen_components_4() -> Result<String, String> {
    let f = components_map()?;
    if !quillen_fiber_check(&f).map_err(es)? {
        return Err("acyclic fibers but mismatched homology".to_string());
    }
    Ok("the components map from disconnected graphs to partitions has acyclic fibers and preserves homology".to_string())
}

fn quillen_hypothesis() -> Result<String, String> {
    let f = PosetMap::new(antichain(2), chain(2), vec![0, 1]).map_err(es)?;
    match quillen_fiber_check(&f) {
        Err(IdentityError::FiberNotAcyclic { q: 1, degree: 0 }) => {
            Ok("a non-acyclic fiber is reported with its witness degree".to_string())
        }
        other => Err(format!("expected a non-acyclic fiber at the top of the chain, got {other:?}")),
    }
}

fn general_fiber_3() -> Result<String, String> {
    let target = Poset::from_covers(names(3), &[(0, 1), (0, 2)]).map_err(es)?;
    let source = Poset::from_covers(
        names(6),
        &[(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5)],
    )
    .map_err(es)?;
    let f = PosetMap::new(source, target, vec![0, 0, 1, 1, 2, 2]).map_err(es)?;
    if !general_fiber_betti_check(&f).map_err(es)? {
        return Err("doubled three-element poset fails the fiber formula".to_string());
    }
    let f = PosetMap::new(chain(3), chain(1), vec![0, 0, 0]).map_err(es)?;
    if !general_fiber_betti_check(&f).map_err(es)? {
        return Err("constant map from a chain fails the fiber formula".to_string());
    }
    if !general_fiber_betti_check(&components_map()?).map_err(es)? {
        return Err("components map fails the fiber formula".to_string());
    }
    Ok("the fiber formula reproduces source homology on three maps".to_string())
}

/// The permutation of proper-part indices induced by permuting the ground
/// set of a Boolean lattice.
fn boolean_action(derived: &posettop::poset::Derived, sigma: &[usize]) -> Vec<usize> {
    let n = sigma.len();
    (0..derived.poset.len())
        .map(|x| {
            let mask = derived.source_ids[x].unwrap();
            let mut image = 0usize;
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    image |= 1 << sigma[i];
                }
            }
            (0..derived.poset.len())
                .find(|&y| derived.source_ids[y] == Some(image))
                .unwrap()
        })
        .collect()
}

fn fixed_point_boolean(n: usize) -> Result<String, String> {
    let derived = boolean(n).map_err(es)?.proper_part();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    for i in 0..n - 1 {
        let mut s: Vec<usize> = (0..n).collect();
        s.swap(i, i + 1);
        perms.push(s);
    }
    perms.push((0..n).map(|i| (i + 1) % n).collect());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n as u64);
    for _ in 0..20 {
        let mut s: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            s.swap(i, rng.gen_range(0..=i));
        }
        perms.push(s);
    }
    let count = perms.len();
    for sigma in perms {
        let g = GroupElementAction::new(&derived.poset, boolean_action(&derived, &sigma)).map_err(es)?;
        let (lhs, rhs, ok) = fixed_point_lefschetz(&derived.poset, &g).map_err(es)?;
        if !ok {
            return Err(format!("σ = {sigma:?}: equivariant characteristic {lhs} but fixed subposet Möbius {rhs}"));
        }
    }
    Ok(format!("Lefschetz traces match fixed-point Möbius numbers for {count} permutations, n = {n}"))
}

fn fixed_point_words_3() -> Result<String, String> {
    let p = word_poset(3, 2, WordKind::Normal).map_err(es)?;
    let sigma = [1usize, 0, 2];
    let perm: Vec<usize> = (0..p.len())
        .map(|x| {
            let image: String = p
                .label(x)
                .chars()
                .map(|ch| {
                    let letter = ch.to_digit(10).unwrap() as usize - 1;
                    char::from_digit(sigma[letter] as u32 + 1, 10).unwrap()
                })
                .collect();
            (0..p.len()).find(|&y| p.label(y) == image).unwrap()
        })
        .collect();
    let g = GroupElementAction::new(&p, perm).map_err(es)?;
    let (lhs, rhs, ok) = fixed_point_lefschetz(&p, &g).map_err(es)?;
    if !ok {
        return Err(format!("letter swap on normal words: {lhs} versus {rhs}"));
    }
    Ok("swapping two letters of the normal word poset satisfies the fixed-point identity".to_string())
}

fn whitney_even_4() -> Result<String, String> {
    let p = block_restricted_partition_poset(4, &SizeSpec::Divisible(2)).map_err(es)?;
    let w = whitney_betti(&p.dual().poset, true).map_err(es)?;
    let want: BTreeMap<i64, BigInt> = [(0, euler_number(3))].into();
    if w != want {
        return Err(format!("Whitney sums gave {w:?}, expected β_0 = 2"));
    }
    Ok("Whitney sums on the dual even-block poset give the tangent number 2".to_string())
}

fn whitney_truncated_4() -> Result<String, String> {
    let b4 = boolean(4).map_err(es)?;
    let top = b4.top().ok_or("missing top")?;
    let keep: Vec<usize> = (0..b4.len()).filter(|&x| x != top).collect();
    let p = b4.induced_subposet(&keep).map_err(es)?.poset;
    let w = whitney_betti(&p, true).map_err(es)?;
    let snf = betti_map(&homology(&order_complex(&p.proper_part().poset)));
    if w != snf {
        return Err(format!("Whitney sums {w:?} disagree with matrices {snf:?}"));
    }
    if w != BTreeMap::from([(2, BigInt::from(1))]) {
        return Err(format!("expected the 2-sphere profile, got {w:?}"));
    }
    Ok("the truncated Boolean lattice gives β_2 = 1 by Whitney sums and by matrices".to_string())
}

fn crosscut_4() -> Result<String, String> {
    for (what, l) in [
        ("Boolean lattice of rank 4", boolean(4).map_err(es)?),
        ("partition lattice of [4]", partition_lattice(4).map_err(es)?),
    ] {
        if !crosscut_check(&l).map_err(es)? {
            return Err(format!("{what}: the coatom crosscut complex has different homology"));
        }
    }
    Ok("coatom crosscut complexes match proper parts on both lattices".to_string())
}

fn closure_3() -> Result<String, String> {
    let b3 = boolean(3).map_err(es)?;
    let keep: Vec<usize> = (1..b3.len()).collect();
    let derived = b3.induced_subposet(&keep).map_err(es)?;
    let p = &derived.poset;
    let cl: Vec<usize> = (0..p.len())
        .map(|x| {
            let mask = derived.source_ids[x].unwrap() | 0b100;
            (0..p.len()).find(|&y| derived.source_ids[y].unwrap() == mask).unwrap()
        })
        .collect();
    if !closure_check(p, &cl).map_err(es)? {
        return Err("closing subsets of [3] under adding a point changes homology".to_string());
    }
    match closure_check(&Poset::from_covers(names(3), &[(0, 1), (0, 2)]).map_err(es)?, &[1, 1, 2]) {
        Err(IdentityError::NotClosure(_)) => {}
        other => return Err(format!("a non-monotone map was accepted: {other:?}")),
    }
    Ok("a closure operator preserves homology and a non-monotone map is rejected".to_string())
}

fn inflation_3() -> Result<String, String> {
    let edge = SimplicialComplex::from_facets(2, vec![vec![0, 1]]).map_err(es)?;
    if !inflation_betti_check(&edge, &[2, 2]).map_err(es)? {
        return Err("doubling both vertices of an edge fails the wedge formula".to_string());
    }
    if !inflation_betti_check(&edge, &[3, 1]).map_err(es)? {
        return Err("tripling one vertex of an edge fails the wedge formula".to_string());
    }
    let path = SimplicialComplex::from_facets(3, vec![vec![0, 1], vec![1, 2]]).map_err(es)?;
    if !inflation_betti_check(&path, &[2, 2, 2]).map_err(es)? {
        return Err("doubling a path fails the wedge formula".to_string());
    }
    Ok("inflation Betti numbers match the wedge formula on edges and paths".to_string())
}

// ---- arrangements ----

fn braid_lattice(n: usize) -> Result<String, String> {
    let a = builtin_arrangement(&BuiltinArrangement::Braid { n }).map_err(es)?;
    let l = intersection_semilattice(&a).map_err(es)?;
    let pi = partition_lattice(n).map_err(es)?;
    if l.poset.len() != pi.len() {
        return Err(format!("{} intersections but {} partitions", l.poset.len(), pi.len()));
    }

    // Identify each flat with the partition of coordinates it forces
    // equal, then check the bijection preserves covers both ways.
    let zero = num::BigRational::from(BigInt::from(0));
    let one = num::BigRational::from(BigInt::from(1));
    let to_partition: Vec<usize> = (0..l.poset.len())
        .map(|x| {
            let s = &l.elements[x];
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            'coord: for i in 0..n {
                for blk in blocks.iter_mut() {
                    let j = blk[0];
                    let mut coeffs = vec![zero.clone(); n];
                    coeffs[j] = one.clone();
                    coeffs[i] = -one.clone();
                    let h = posettop::arrangements::AffineSubspace::hyperplane(&coeffs, zero.clone())
                        .expect("hyperplane");
                    if h.contains(s) {
                        blk.push(i);
                        continue 'coord;
                    }
                }
                blocks.push(vec![i]);
            }
            let label = partition_label(&blocks);
            (0..pi.len())
                .find(|&y| pi.label(y) == label)
                .unwrap_or_else(|| panic!("no partition labeled {label}"))
        })
        .collect();
    let mut seen: Vec<usize> = to_partition.clone();
    seen.sort_unstable();
    if seen != (0..pi.len()).collect::<Vec<_>>() {
        return Err("flats do not biject onto partitions".to_string());
    }
    let flat_covers: BTreeSet<(usize, usize)> = l
        .poset
        .covers()
        .iter()
        .map(|&(x, y)| (to_partition[x], to_partition[y]))
        .collect();
    let pi_covers: BTreeSet<(usize, usize)> = pi.covers().iter().copied().collect();
    if flat_covers != pi_covers {
        return Err("the flat bijection does not preserve cover relations".to_string());
    }

    let (regions, bounded) = zaslavsky(&a).map_err(es)?;
    if regions != factorial(n) || bounded != BigInt::from(0) {
        return Err(format!("Zaslavsky gave ({regions}, {bounded}), expected ({}, 0)", factorial(n)));
    }
    Ok(format!(
        "the intersection lattice is the partition lattice and the {regions} regions match the factorial"
    ))
}

fn region_counts_2() -> Result<String, String> {
    let cases: [(BuiltinArrangement, i64, i64, &str); 4] = [
        (BuiltinArrangement::TypeBBraid { n: 2 }, 8, 0, "type B braid, n = 2"),
        (BuiltinArrangement::Coordinate { n: 3 }, 8, 0, "coordinate, n = 3"),
        (BuiltinArrangement::TypeBCoordinate { n: 2 }, 9, 1, "shifted coordinate, n = 2"),
        (BuiltinArrangement::Braid { n: 4 }, 24, 0, "braid, n = 4"),
    ];
    for (spec, r, b, what) in cases {
        let a = builtin_arrangement(&spec).map_err(es)?;
        let (regions, bounded) = zaslavsky(&a).map_err(es)?;
        if regions != BigInt::from(r) || bounded != BigInt::from(b) {
            return Err(format!("{what}: got ({regions}, {bounded}), expected ({r}, {b})"));
        }
    }
    Ok("region and bounded-region counts agree on four arrangements".to_string())
}

fn orlik_solomon_braid_3() -> Result<String, String> {
    let a = builtin_arrangement(&BuiltinArrangement::Braid { n: 3 }).map_err(es)?;
    let os = orlik_solomon_betti(&a).map_err(es)?;
    let want: BTreeMap<i64, BigInt> = [(0, 1), (1, 3), (2, 2)].map(|(i, v)| (i, BigInt::from(v))).into();
    if os != want {
        return Err(format!("Orlik-Solomon ranks {os:?}, expected {want:?}"));
    }
    Ok("complexified braid complement has Poincaré polynomial 1 + 3t + 2t²".to_string())
}

fn gm_k_equal_4_3() -> Result<String, String> {
    let a = builtin_arrangement(&BuiltinArrangement::KEqual { n: 4, k: 3 }).map_err(es)?;
    let gm = goresky_macpherson_betti(&a).map_err(es)?;
    let want: BTreeMap<i64, usize> = [(1, 7)].into();
    if gm != want {
        return Err(format!("Goresky-MacPherson ranks {gm:?}, expected {want:?}"));
    }

    // Rebuild the same ranks from interval homology in the flat poset.
    let l = intersection_semilattice(&a).map_err(es)?;
    let bottom = l.poset.bottom().ok_or("flat poset has no bottom")?;
    let mut direct: BTreeMap<i64, usize> = BTreeMap::new();
    for x in 0..l.poset.len() {
        if x == bottom {
            continue;
        }
        let codim = l.elements[x].codim() as i64;
        let h = betti_open_interval(&l.poset, bottom, x).map_err(es)?;
        for (&j, d) in &h.dims {
            if d.betti > 0 {
                *direct.entry(codim - 2 - j).or_insert(0) += d.betti;
            }
        }
    }
    direct.retain(|_, v| *v > 0);
    if direct != want {
        return Err(format!("interval homology sums {direct:?} disagree with {want:?}"));
    }
    Ok("complement cohomology rank 7 in degree 1, from the formula and from intervals".to_string())
}
