//! JSON formats. Indices are 1-based on the wire and 0-based in memory.
//!
//! Tensor: `{"order": m, "dim": n, "entries": [{"i": [i1, …, im], "v": x}, …]}`.
//! Omitted entries are zero. Matrices use order 2.
//!
//! Hypergraph: `{"k": 3, "n": 6, "edges": [[1, 2, 3], [4, 5, 6]]}`.

use serde::{Deserialize, Serialize};

use crate::blocked::{BlockKind, Partition};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::structure::{Hypergraph, NormalForm};
use crate::tensor::{Permutation, Tensor};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub i: Vec<usize>,
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorJson {
    pub order: usize,
    pub dim: usize,
    pub entries: Vec<EntryJson>,
}

impl From<&Tensor> for TensorJson {
    fn from(t: &Tensor) -> Self {
        TensorJson {
            order: t.order(),
            dim: t.dim(),
            entries: t
                .entries()
                .map(|(idx, v)| EntryJson {
                    i: idx.iter().map(|i| i + 1).collect(),
                    v,
                })
                .collect(),
        }
    }
}

impl TryFrom<TensorJson> for Tensor {
    type Error = Error;

    fn try_from(j: TensorJson) -> Result<Tensor> {
        Tensor::from_one_based(j.order, j.dim, j.entries.into_iter().map(|e| (e.i, e.v)))
    }
}

fn parse<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::InvalidJson(e.to_string()))
}

fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

pub fn tensor_from_json(s: &str) -> Result<Tensor> {
    Tensor::try_from(parse::<TensorJson>(s)?)
}

pub fn tensor_to_json(t: &Tensor) -> String {
    render(&TensorJson::from(t))
}

pub fn matrix_from_json(s: &str) -> Result<Matrix> {
    Matrix::from_tensor(&tensor_from_json(s)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphJson {
    pub k: usize,
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl From<&Hypergraph> for HypergraphJson {
    fn from(h: &Hypergraph) -> Self {
        HypergraphJson {
            k: h.k(),
            n: h.n(),
            edges: h
                .edges()
                .iter()
                .map(|e| e.iter().map(|v| v + 1).collect())
                .collect(),
        }
    }
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = Error;

    fn try_from(j: HypergraphJson) -> Result<Hypergraph> {
        let mut edges = Vec::with_capacity(j.edges.len());
        for e in j.edges {
            let mut out = Vec::with_capacity(e.len());
            for v in e {
                if v == 0 || v > j.n {
                    return Err(Error::IndexOutOfRange { index: v, dim: j.n });
                }
                out.push(v - 1);
            }
            edges.push(out);
        }
        Hypergraph::new(j.k, j.n, edges)
    }
}

pub fn hypergraph_from_json(s: &str) -> Result<Hypergraph> {
    Hypergraph::try_from(parse::<HypergraphJson>(s)?)
}

pub fn hypergraph_to_json(h: &Hypergraph) -> String {
    render(&HypergraphJson::from(h))
}

/// `sigma` is the 1-based image array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalFormJson {
    pub sigma: Vec<usize>,
    pub partition: Vec<usize>,
    pub kind: String,
    pub blocks: Vec<TensorJson>,
}

impl From<&NormalForm> for NormalFormJson {
    fn from(nf: &NormalForm) -> Self {
        NormalFormJson {
            sigma: nf.sigma.image().iter().map(|i| i + 1).collect(),
            partition: nf.partition.parts().to_vec(),
            kind: nf.kind.as_str().to_string(),
            blocks: nf.blocks.iter().map(TensorJson::from).collect(),
        }
    }
}

impl TryFrom<NormalFormJson> for NormalForm {
    type Error = Error;

    fn try_from(j: NormalFormJson) -> Result<NormalForm> {
        let image = j
            .sigma
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation("indices are 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NormalForm {
            sigma: Permutation::new(image)?,
            partition: Partition::new(j.partition)?,
            kind: j
                .kind
                .parse::<BlockKind>()
                .map_err(|_| Error::InvalidArgument(format!("unknown kind {}", j.kind)))?,
            blocks: j
                .blocks
                .into_iter()
                .map(Tensor::try_from)
                .collect::<Result<_>>()?,
        })
    }
}

pub fn normal_form_to_json(nf: &NormalForm) -> String {
    render(&NormalFormJson::from(nf))
}

pub fn normal_form_from_json(s: &str) -> Result<NormalForm> {
    NormalForm::try_from(parse::<NormalFormJson>(s)?)
}
