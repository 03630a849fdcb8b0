//! JSON persistence for planes, hypergraphs and partite graphs.
//!
//! Every file is an object `{"format_version": 1, "kind": ..., ...}`. Graphs
//! store the data they were generated from (kept line ids and per-line class
//! labels), never the edge list.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::plane::{ClassId, LineId, TruncatedPlane};
use crate::spartite::{LinePartition, PartiteLineGraph};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtifactKind {
    TruncatedPlane,
    Hypergraph,
    PartiteGraph,
}

impl ArtifactKind {
    pub fn tag(self) -> &'static str {
        match self {
            ArtifactKind::TruncatedPlane => "truncated_plane",
            ArtifactKind::Hypergraph => "hypergraph",
            ArtifactKind::PartiteGraph => "partite_graph",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        [ArtifactKind::TruncatedPlane, ArtifactKind::Hypergraph, ArtifactKind::PartiteGraph]
            .into_iter()
            .find(|k| k.tag() == tag)
    }
}

#[derive(Serialize, Deserialize)]
struct PlaneFile {
    q: u32,
    removed_class: ClassId,
}

#[derive(Serialize, Deserialize)]
struct HyperFile {
    q: u32,
    removed_class: ClassId,
    keep_prob: f64,
    seed: u64,
    kept: Vec<LineId>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    q: u32,
    s: usize,
    removed_class: ClassId,
    keep_prob: f64,
    hyper_seed: u64,
    partition_seed: u64,
    kept: Vec<LineId>,
    /// `labels[i]` belongs to `kept[i]`, parallel to its sorted points.
    labels: Vec<Vec<u16>>,
}

/// Objects that can be written as a versioned artifact.
pub trait Artifact: Sized {
    const KIND: ArtifactKind;

    fn to_value(&self) -> Value;
    fn from_value(v: Value) -> Result<Self>;

    fn to_json(&self) -> String {
        let mut obj = serde_json::Map::new();
        obj.insert("format_version".into(), FORMAT_VERSION.into());
        obj.insert("kind".into(), Self::KIND.tag().into());
        if let Value::Object(body) = self.to_value() {
            obj.extend(body);
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("artifact values serialise");
        s.push('\n');
        s
    }

    fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| format_err(Self::KIND, e))?;
        let obj = v.as_object().ok_or_else(|| Error::Format {
            what: Self::KIND.tag().into(),
            detail: "top level is not an object".into(),
        })?;
        let version = obj.get("format_version").ok_or_else(|| missing(Self::KIND, "format_version"))?;
        let version = version.as_u64().ok_or_else(|| Error::Format {
            what: Self::KIND.tag().into(),
            detail: format!("field `format_version` is not an unsigned integer: {version}"),
        })?;
        if version != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion { found: version, expected: FORMAT_VERSION });
        }
        let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| missing(Self::KIND, "kind"))?;
        if ArtifactKind::from_tag(kind) != Some(Self::KIND) {
            return Err(Error::Format {
                what: Self::KIND.tag().into(),
                detail: format!("file holds kind `{kind}`, expected `{}`", Self::KIND.tag()),
            });
        }
        Self::from_value(v)
    }

    fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()).map_err(|source| Error::Io { path: path.into(), source })
    }

    fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
        Self::from_json(&text)
    }
}

/// The `kind` tag of an artifact document, without parsing the rest.
pub fn peek_kind(text: &str) -> Result<ArtifactKind> {
    #[derive(Deserialize)]
    struct Head {
        kind: String,
    }
    let head: Head = serde_json::from_str(text)
        .map_err(|e| Error::Format { what: "artifact".into(), detail: e.to_string() })?;
    ArtifactKind::from_tag(&head.kind)
        .ok_or_else(|| Error::Format { what: "artifact".into(), detail: format!("unknown kind `{}`", head.kind) })
}

fn missing(kind: ArtifactKind, field: &str) -> Error {
    Error::Format { what: kind.tag().into(), detail: format!("missing field `{field}`") }
}

fn format_err(kind: ArtifactKind, e: serde_json::Error) -> Error {
    Error::Format { what: kind.tag().into(), detail: e.to_string() }
}

fn body<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("artifact bodies serialise")
}

fn parse<T: DeserializeOwned>(kind: ArtifactKind, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| format_err(kind, e))
}

impl Artifact for TruncatedPlane {
    const KIND: ArtifactKind = ArtifactKind::TruncatedPlane;

    fn to_value(&self) -> Value {
        body(&PlaneFile { q: self.q(), removed_class: self.removed_class() })
    }

    fn from_value(v: Value) -> Result<Self> {
        let f: PlaneFile = parse(Self::KIND, v)?;
        TruncatedPlane::new(f.q, f.removed_class)
    }
}

impl Artifact for Hypergraph {
    const KIND: ArtifactKind = ArtifactKind::Hypergraph;

    fn to_value(&self) -> Value {
        body(&HyperFile {
            q: self.q(),
            removed_class: self.base().removed_class(),
            keep_prob: self.keep_prob(),
            seed: self.seed(),
            kept: self.kept().to_vec(),
        })
    }

    fn from_value(v: Value) -> Result<Self> {
        let f: HyperFile = parse(Self::KIND, v)?;
        let tp = TruncatedPlane::new(f.q, f.removed_class)?;
        Hypergraph::from_kept(&tp, f.kept, f.keep_prob, f.seed)
    }
}

impl Artifact for PartiteLineGraph {
    const KIND: ArtifactKind = ArtifactKind::PartiteGraph;

    fn to_value(&self) -> Value {
        let h = self.hypergraph();
        let (hyper_seed, partition_seed) = self.provenance();
        body(&GraphFile {
            q: h.q(),
            s: self.s(),
            removed_class: h.base().removed_class(),
            keep_prob: h.keep_prob(),
            hyper_seed,
            partition_seed,
            kept: h.kept().to_vec(),
            labels: self.partitions().iter().map(|p| p.labels.clone()).collect(),
        })
    }

    fn from_value(v: Value) -> Result<Self> {
        let f: GraphFile = parse(Self::KIND, v)?;
        if f.labels.len() != f.kept.len() {
            return Err(Error::Format {
                what: Self::KIND.tag().into(),
                detail: format!("{} label rows for {} kept lines", f.labels.len(), f.kept.len()),
            });
        }
        if f.kept.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format {
                what: Self::KIND.tag().into(),
                detail: "`kept` must be strictly increasing".into(),
            });
        }
        let tp = TruncatedPlane::new(f.q, f.removed_class)?;
        let h = Hypergraph::from_kept(&tp, f.kept, f.keep_prob, f.hyper_seed)?;
        let partitions = h
            .kept()
            .iter()
            .zip(f.labels)
            .map(|(&line_id, labels)| LinePartition { line_id, labels })
            .collect();
        PartiteLineGraph::from_partitions(&h, f.s, partitions, f.partition_seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn version_and_kind_are_checked() {
        let tp = TruncatedPlane::new(5, ClassId::Vertical).unwrap();
        let text = tp.to_json();
        assert_eq!(TruncatedPlane::from_json(&text).unwrap(), tp);
        let v2 = text.replace("\"format_version\": 1", "\"format_version\": 2");
        assert!(matches!(TruncatedPlane::from_json(&v2), Err(Error::UnsupportedVersion { found: 2, expected: 1 })));
        assert!(matches!(Hypergraph::from_json(&text), Err(Error::Format { .. })));
    }

    #[test]
    fn missing_field_is_named() {
        let tp = TruncatedPlane::new(5, ClassId::Slope(2)).unwrap();
        let h = Hypergraph::sample(&tp, 0.5, 3).unwrap();
        let mut v: Value = serde_json::from_str(&h.to_json()).unwrap();
        v.as_object_mut().unwrap().remove("kept");
        let err = Hypergraph::from_json(&v.to_string()).unwrap_err().to_string();
        assert!(err.contains("missing field `kept`"), "{err}");
    }
}
