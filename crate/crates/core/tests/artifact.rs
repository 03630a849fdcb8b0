use affine_ks::artifact::{peek_kind, Artifact, ArtifactKind};
use affine_ks::hypergraph::Hypergraph;
use affine_ks::plane::{ClassId, TruncatedPlane};
use affine_ks::spartite::PartiteLineGraph;
use affine_ks::Error;
use serde_json::Value;

#[test]
fn plane_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plane.json");
    let tp = TruncatedPlane::new(7, ClassId::Slope(3)).unwrap();
    tp.save(&path).unwrap();
    assert_eq!(TruncatedPlane::load(&path).unwrap(), tp);
    assert_eq!(peek_kind(&std::fs::read_to_string(&path).unwrap()).unwrap(), ArtifactKind::TruncatedPlane);
}

#[test]
fn hypergraph_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let tp = TruncatedPlane::new(5, ClassId::Vertical).unwrap();
    let h = Hypergraph::sample(&tp, 0.5, 12).unwrap();
    h.save(&path).unwrap();
    let back = Hypergraph::load(&path).unwrap();
    assert_eq!(back.kept(), h.kept());
    assert_eq!(back, h);
}

#[test]
fn graph_round_trip_keeps_edges() {
    let tp = TruncatedPlane::new(11, ClassId::Vertical).unwrap();
    let h = Hypergraph::sample(&tp, 0.4, 2).unwrap();
    let g = PartiteLineGraph::build(&h, 4, 9).unwrap();
    let text = g.to_json();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["kind"], "partite_graph");
    assert!(v.get("edges").is_none());
    let back = PartiteLineGraph::from_json(&text).unwrap();
    assert_eq!(back, g);
    assert_eq!(back.graph(), g.graph());
    assert_eq!(back.provenance(), (2, 9));
}

#[test]
fn truncated_file_names_missing_field() {
    let tp = TruncatedPlane::new(5, ClassId::Vertical).unwrap();
    let h = Hypergraph::sample(&tp, 0.5, 1).unwrap();
    let g = PartiteLineGraph::build(&h, 3, 1).unwrap();
    let mut v: Value = serde_json::from_str(&g.to_json()).unwrap();
    v.as_object_mut().unwrap().remove("labels");
    let err = PartiteLineGraph::from_json(&v.to_string()).unwrap_err();
    assert!(err.to_string().contains("missing field `labels`"), "{err}");

    let text = g.to_json();
    let cut = &text[..text.len() / 2];
    assert!(matches!(PartiteLineGraph::from_json(cut), Err(Error::Format { .. })));
}

#[test]
fn version_and_kind_mismatch() {
    let tp = TruncatedPlane::new(5, ClassId::Vertical).unwrap();
    let h = Hypergraph::sample(&tp, 0.5, 1).unwrap();
    let mut v: Value = serde_json::from_str(&h.to_json()).unwrap();
    v["format_version"] = 7.into();
    assert!(matches!(
        Hypergraph::from_json(&v.to_string()),
        Err(Error::UnsupportedVersion { found: 7, expected: 1 })
    ));
    assert!(matches!(PartiteLineGraph::from_json(&h.to_json()), Err(Error::Format { .. })));
    assert!(peek_kind(r#"{"kind": "teapot"}"#).is_err());
}

#[test]
fn bad_graph_contents_are_rejected() {
    let tp = TruncatedPlane::new(5, ClassId::Vertical).unwrap();
    let h = Hypergraph::sample(&tp, 0.6, 3).unwrap();
    let g = PartiteLineGraph::build(&h, 3, 1).unwrap();
    let base: Value = serde_json::from_str(&g.to_json()).unwrap();

    let mut v = base.clone();
    v["labels"].as_array_mut().unwrap().pop();
    assert!(PartiteLineGraph::from_json(&v.to_string()).is_err());

    let mut v = base.clone();
    v["labels"][0][0] = 9.into();
    assert!(PartiteLineGraph::from_json(&v.to_string()).is_err());

    let mut v = base.clone();
    v["kept"][0] = 9999.into();
    assert!(PartiteLineGraph::from_json(&v.to_string()).is_err());

    let mut v = base;
    v["q"] = 6.into();
    assert!(matches!(PartiteLineGraph::from_json(&v.to_string()), Err(Error::NotPrime(6))));

    let missing = tempfile::tempdir().unwrap().path().join("nope.json");
    assert!(matches!(Hypergraph::load(missing), Err(Error::Io { .. })));
}
