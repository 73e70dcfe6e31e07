//! JSON encodings for posets, complexes, labelings, homology results,
//! arrangements, and atom-ordering certificates, plus a plain-text
//! triplet export for sparse matrices. Writers are deterministic: map
//! keys and cover lists come out sorted, so equal inputs produce equal
//! bytes.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangements::{AffineSubspace, Arrangement, ArrangementError};
use crate::complex::{ComplexError, SimplicialComplex};
use crate::homology::{DimHomology, HomologyResult, SparseIntMatrix};
use crate::poset::{Poset, PosetError};
use crate::shelling::{EdgeLabeling, RecursiveAtomCertificate};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error("invalid data: {0}")]
    Invalid(String),
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializing to a string cannot fail");
    s.push('\n');
    s
}

/// Poset file: labels plus covering pairs. The reader rebuilds the
/// order through the usual constructor, so redundant pairs are reduced
/// away and cycles rejected; the writer emits the reduced cover set in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub labels: Vec<String>,
    pub covers: Vec<(usize, usize)>,
}

impl PosetJson {
    pub fn from_poset(p: &Poset) -> PosetJson {
        let mut covers = p.covers().to_vec();
        covers.sort_unstable();
        PosetJson {
            labels: p.labels().to_vec(),
            covers,
        }
    }

    pub fn to_poset(&self) -> Result<Poset, IoError> {
        Ok(Poset::from_covers(self.labels.clone(), &self.covers)?)
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    pub fn from_json(s: &str) -> Result<PosetJson, IoError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Complex file: a vertex count and the facet list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vertex_count: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexJson {
    pub fn from_complex(c: &SimplicialComplex) -> ComplexJson {
        ComplexJson {
            vertex_count: c.vertex_count(),
            facets: c.facets().to_vec(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, IoError> {
        Ok(SimplicialComplex::from_facets(
            self.vertex_count,
            self.facets.clone(),
        )?)
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    pub fn from_json(s: &str) -> Result<ComplexJson, IoError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Edge labeling file: one entry per labeled cover, as [x, y, [labels]].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingJson {
    pub edges: Vec<(usize, usize, Vec<i64>)>,
}

impl LabelingJson {
    pub fn from_labeling(l: &EdgeLabeling) -> LabelingJson {
        LabelingJson {
            edges: l.sorted_edges(),
        }
    }

    pub fn to_labeling(&self) -> Result<EdgeLabeling, IoError> {
        let mut seen = std::collections::HashSet::new();
        let mut out = EdgeLabeling::new();
        for (x, y, word) in &self.edges {
            if !seen.insert((*x, *y)) {
                return Err(IoError::Invalid(format!(
                    "edge ({x}, {y}) appears more than once"
                )));
            }
            out.set(*x, *y, word.clone());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    pub fn from_json(s: &str) -> Result<LabelingJson, IoError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// One homology group in a report: free rank and invariant factors
/// above one, the latter as decimal strings so arbitrarily large factors
/// survive the trip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimJson {
    pub betti: usize,
    pub torsion: Vec<String>,
}

/// Homology report keyed by dimension. Keys are the dimensions as
/// strings (JSON objects cannot key on integers), sorted by the map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomologyJson {
    pub dims: BTreeMap<String, DimJson>,
}

impl HomologyJson {
    pub fn from_result(h: &HomologyResult) -> HomologyJson {
        let dims = h
            .dims
            .iter()
            .map(|(&i, d)| {
                (
                    i.to_string(),
                    DimJson {
                        betti: d.betti,
                        torsion: d.torsion.iter().map(|t| t.to_string()).collect(),
                    },
                )
            })
            .collect();
        HomologyJson { dims }
    }

    pub fn to_result(&self) -> Result<HomologyResult, IoError> {
        let mut out = HomologyResult::default();
        for (key, d) in &self.dims {
            let dim: i64 = key
                .parse()
                .map_err(|_| IoError::Invalid(format!("bad dimension key {key:?}")))?;
            let mut torsion = Vec::with_capacity(d.torsion.len());
            for t in &d.torsion {
                let v = BigInt::from_str(t)
                    .map_err(|_| IoError::Invalid(format!("bad torsion value {t:?}")))?;
                torsion.push(v);
            }
            out.dims.insert(
                dim,
                DimHomology {
                    betti: d.betti,
                    torsion,
                },
            );
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    pub fn from_json(s: &str) -> Result<HomologyJson, IoError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// One affine subspace as constraint rows: coefficient matrix and right
/// hand side, rationals written as strings like "2", "-1", or "3/4".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub b: Vec<String>,
}

/// Arrangement file: ambient dimension and the subspace list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementJson {
    pub dim: usize,
    pub subspaces: Vec<SubspaceJson>,
}

fn parse_rational(s: &str) -> Result<BigRational, IoError> {
    BigRational::from_str(s).map_err(|_| IoError::Invalid(format!("bad rational {s:?}")))
}

impl ArrangementJson {
    pub fn from_arrangement(arr: &Arrangement) -> ArrangementJson {
        let subspaces = arr
            .subspaces()
            .iter()
            .map(|s| {
                let (a, b) = s.constraints();
                SubspaceJson {
                    a: a.iter()
                        .map(|row| row.iter().map(|v| v.to_string()).collect())
                        .collect(),
                    b: b.iter().map(|v| v.to_string()).collect(),
                }
            })
            .collect();
        ArrangementJson {
            dim: arr.ambient_dim(),
            subspaces,
        }
    }

    pub fn to_arrangement(&self) -> Result<Arrangement, IoError> {
        let mut subspaces = Vec::with_capacity(self.subspaces.len());
        for s in &self.subspaces {
            let mut a = Vec::with_capacity(s.a.len());
            for row in &s.a {
                let parsed: Result<Vec<BigRational>, IoError> =
                    row.iter().map(|v| parse_rational(v)).collect();
                a.push(parsed?);
            }
            let b: Result<Vec<BigRational>, IoError> =
                s.b.iter().map(|v| parse_rational(v)).collect();
            subspaces.push(AffineSubspace::new(self.dim, &a, &b?)?);
        }
        Ok(Arrangement::new(self.dim, subspaces)?)
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    pub fn from_json(s: &str) -> Result<ArrangementJson, IoError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Recursive atom ordering certificate, mirroring the recursion tree:
/// the atom order at this node and one child certificate per atom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub atom_order: Vec<usize>,
    pub children: Vec<CertificateJson>,
}

impl CertificateJson {
    pub fn from_certificate(c: &RecursiveAtomCertificate) -> CertificateJson {
        CertificateJson {
            atom_order: c.atom_order.clone(),
            children: c.children.iter().map(Self::from_certificate).collect(),
        }
    }

    pub fn to_certificate(&self) -> RecursiveAtomCertificate {
        RecursiveAtomCertificate {
            atom_order: self.atom_order.clone(),
            children: self.children.iter().map(|c| c.to_certificate()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    pub fn from_json(s: &str) -> Result<CertificateJson, IoError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Sparse matrix as plain text, one "row col value" line per nonzero
/// entry, in column-major order. Intended for checking boundary
/// matrices with external tools.
pub fn sparse_triplets_text(m: &SparseIntMatrix) -> String {
    let mut out = String::new();
    for (r, c, v) in m.triplets() {
        out.push_str(&format!("{r} {c} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::builtin_arrangement;
    use crate::arrangements::BuiltinArrangement;
    use crate::families::{boolean_with_labeling, matching_complex, partition_lattice};
    use crate::homology::{homology, ChainComplex};
    use crate::shelling::search_recursive_atom_ordering;

    #[test]
    fn poset_roundtrip_reduces_and_sorts() {
        let p = partition_lattice(4).unwrap();
        let j = PosetJson::from_poset(&p);
        let back = j.to_poset().unwrap();
        assert_eq!(back.labels(), p.labels());
        assert_eq!(back.covers(), p.covers());
        let twice = PosetJson::from_poset(&back);
        assert_eq!(j.to_json(), twice.to_json());

        // A redundant pair in the file disappears on the way through.
        let text = r#"{"labels":["a","b","c"],"covers":[[0,1],[1,2],[0,2]]}"#;
        let parsed = PosetJson::from_json(text).unwrap();
        let poset = parsed.to_poset().unwrap();
        assert_eq!(poset.covers(), &[(0, 1), (1, 2)]);

        // Cycles and dangling ids are rejected by the constructor.
        let cyclic = PosetJson {
            labels: vec!["a".into(), "b".into()],
            covers: vec![(0, 1), (1, 0)],
        };
        assert!(cyclic.to_poset().is_err());
        let dangling = PosetJson {
            labels: vec!["a".into()],
            covers: vec![(0, 5)],
        };
        assert!(dangling.to_poset().is_err());
        assert!(PosetJson::from_json(r#"{"labels":[],"covers":[],"extra":1}"#).is_err());
    }

    #[test]
    fn complex_roundtrip_is_canonical() {
        let c = matching_complex(5).unwrap();
        let j = ComplexJson::from_complex(&c);
        assert_eq!(j.vertex_count, 10);
        let back = j.to_complex().unwrap();
        assert_eq!(back.facets(), c.facets());
        assert_eq!(j.to_json(), ComplexJson::from_complex(&back).to_json());

        // Subsumed faces and duplicate vertices are normalized away.
        let text = r#"{"vertex_count":3,"facets":[[2,0,1],[0,1]]}"#;
        let parsed = ComplexJson::from_json(text).unwrap().to_complex().unwrap();
        assert_eq!(parsed.facets(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn labeling_roundtrip_and_duplicate_rejection() {
        let (_, lab) = boolean_with_labeling(3).unwrap();
        let j = LabelingJson::from_labeling(&lab);
        let back = j.to_labeling().unwrap();
        assert_eq!(lab.sorted_edges(), back.sorted_edges());

        let dup = LabelingJson {
            edges: vec![(0, 1, vec![1]), (0, 1, vec![2])],
        };
        assert!(matches!(dup.to_labeling(), Err(IoError::Invalid(_))));
    }

    #[test]
    fn homology_json_carries_torsion() {
        let h = homology(&matching_complex(7).unwrap());
        let j = HomologyJson::from_result(&h);
        assert_eq!(j.dims["1"].torsion, vec!["3".to_string()]);
        assert_eq!(j.dims["2"].betti, 20);
        let back = j.to_result().unwrap();
        assert_eq!(back, h);

        let bad = HomologyJson::from_json(r#"{"dims":{"x":{"betti":1,"torsion":[]}}}"#).unwrap();
        assert!(matches!(bad.to_result(), Err(IoError::Invalid(_))));
        let bad = HomologyJson::from_json(r#"{"dims":{"1":{"betti":1,"torsion":["q"]}}}"#).unwrap();
        assert!(matches!(bad.to_result(), Err(IoError::Invalid(_))));
    }

    #[test]
    fn arrangement_roundtrip_preserves_the_lattice() {
        let arr = builtin_arrangement(&BuiltinArrangement::Braid { n: 4 }).unwrap();
        let j = ArrangementJson::from_arrangement(&arr);
        assert_eq!(j.dim, 4);
        assert_eq!(j.subspaces.len(), 6);
        let back = j.to_arrangement().unwrap();
        assert_eq!(back.subspaces(), arr.subspaces());
        assert_eq!(j.to_json(), ArrangementJson::from_arrangement(&back).to_json());

        let bad = ArrangementJson {
            dim: 2,
            subspaces: vec![SubspaceJson {
                a: vec![vec!["1".into(), "1/0".into()]],
                b: vec!["0".into()],
            }],
        };
        assert!(matches!(bad.to_arrangement(), Err(IoError::Invalid(_))));
        let inconsistent = ArrangementJson {
            dim: 2,
            subspaces: vec![SubspaceJson {
                a: vec![vec!["0".into(), "0".into()]],
                b: vec!["1".into()],
            }],
        };
        assert!(matches!(
            inconsistent.to_arrangement(),
            Err(IoError::Arrangement(_))
        ));
    }

    #[test]
    fn certificate_roundtrip() {
        let (b3, _) = boolean_with_labeling(3).unwrap();
        let cert = search_recursive_atom_ordering(&b3).unwrap().unwrap();
        let j = CertificateJson::from_certificate(&cert);
        assert_eq!(j.to_certificate(), cert);
        let back = CertificateJson::from_json(&j.to_json()).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn sparse_triplet_text_lists_boundary_entries() {
        // A single edge: the boundary drops the tail and adds the head.
        let c = SimplicialComplex::from_facets(2, vec![vec![0, 1]]).unwrap();
        let chain = ChainComplex::from_complex(&c).unwrap();
        let d1 = chain.boundary(0);
        assert_eq!(sparse_triplets_text(&d1), "0 0 1\n0 1 1\n");
        let d0 = chain.boundary(1);
        assert_eq!(sparse_triplets_text(&d0), "0 0 -1\n1 0 1\n");
    }
}
