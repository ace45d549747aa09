//! JSON file formats and DOT export.
//!
//! Poset files look like
//!
//! ```json
//! {"n": 4, "cover": [[0, 1], [0, 2], [1, 3], [2, 3]],
//!  "rotation": {"0": [1, 2], "1": [3, 0], "2": [0, 3], "3": [2, 1]},
//!  "anchor": {"vertex": 0, "after": 2}, "outer_face": [0, 1, 3, 2],
//!  "pairs": [[1, 2]]}
//! ```
//!
//! Rotations list neighbours clockwise. The anchor dart sits right after
//! the named neighbour in clockwise order. `rotation`, `anchor`,
//! `outer_face` and `pairs` are optional; the outer face, when present,
//! is checked against the face that holds the anchor.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::embed::{Anchor, PlaneGraph};
use crate::error::{Error, Result};
use crate::poset::{build_poset, Covering, LinearExtension, Pair, Poset, Realizer};

/// On-disk form of a poset with an optional embedding and pair set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub n: usize,
    pub cover: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Anchor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A parsed poset file.
#[derive(Clone, Debug)]
pub struct PosetInput {
    pub poset: Poset,
    pub plane: Option<PlaneGraph>,
    pub pairs: Option<Vec<Pair>>,
    pub labels: Option<Vec<String>>,
}

impl PosetInput {
    /// The requested pairs, or every incomparable pair.
    pub fn pairs_or_all(&self) -> Vec<Pair> {
        self.pairs.clone().unwrap_or_else(|| self.poset.incomparable_pairs())
    }

    /// The embedding, or a `BadParameter` error naming `what`.
    pub fn require_plane(&self, what: &str) -> Result<&PlaneGraph> {
        self.plane.as_ref().ok_or_else(|| Error::BadParameter(format!("{what} needs a rotation system")))
    }
}

impl PosetFile {
    /// Serializable form of a poset, its embedding and its pairs.
    pub fn from_parts(poset: &Poset, plane: Option<&PlaneGraph>, pairs: Option<&[Pair]>) -> PosetFile {
        let mut file = PosetFile {
            n: poset.n(),
            cover: poset.covers().iter().map(|&(lo, hi)| [lo, hi]).collect(),
            pairs: pairs.map(|ps| ps.iter().map(|p| [p.a, p.b]).collect()),
            ..PosetFile::default()
        };
        if let Some(plane) = plane {
            let rot = plane.neighbour_rotation();
            file.rotation = Some(rot.into_iter().enumerate().map(|(v, list)| (v.to_string(), list)).collect());
            file.anchor = Some(plane.anchor_spec());
            let face = &plane.faces()[plane.outer_face()];
            file.outer_face = Some(face.boundary.iter().map(|&d| plane.tail(d)).collect());
        }
        file
    }

    /// Builds the poset and validates the embedding.
    pub fn to_parts(&self) -> Result<PosetInput> {
        let covers: Vec<(usize, usize)> = self.cover.iter().map(|c| (c[0], c[1])).collect();
        let poset = build_poset(self.n, &covers)?;
        let plane = match &self.rotation {
            None => {
                if self.anchor.is_some() || self.outer_face.is_some() {
                    return Err(Error::Parse("anchor or outer_face given without rotation".into()));
                }
                None
            }
            Some(map) => {
                let mut rotation = vec![Vec::new(); self.n];
                for (key, list) in map {
                    let v: usize = key.parse().map_err(|_| Error::Parse(format!("rotation key {key:?} is not an id")))?;
                    if v >= self.n {
                        return Err(Error::OutOfRange(v, self.n));
                    }
                    rotation[v] = list.clone();
                }
                let anchor = self.anchor.ok_or_else(|| Error::Parse("rotation given without anchor".into()))?;
                Some(PlaneGraph::new(self.n, poset.covers(), &rotation, anchor, self.outer_face.as_deref())?)
            }
        };
        let pairs = match &self.pairs {
            None => None,
            Some(list) => {
                let pairs: Vec<Pair> = list.iter().map(|p| Pair::new(p[0], p[1])).collect();
                poset.check_pairs(&pairs)?;
                Some(pairs)
            }
        };
        if let Some(labels) = &self.labels {
            if labels.len() != self.n {
                return Err(Error::Parse(format!("{} labels for {} elements", labels.len(), self.n)));
            }
        }
        Ok(PosetInput { poset, plane, pairs, labels: self.labels.clone() })
    }
}

fn to_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses a poset file.
pub fn parse_poset(text: &str) -> Result<PosetInput> {
    parse_json::<PosetFile>(text)?.to_parts()
}

/// Writes a poset file as one JSON line.
pub fn write_poset(poset: &Poset, plane: Option<&PlaneGraph>, pairs: Option<&[Pair]>, labels: Option<&[String]>) -> String {
    let mut file = PosetFile::from_parts(poset, plane, pairs);
    file.labels = labels.map(<[String]>::to_vec);
    to_line(&file)
}

#[derive(Serialize, Deserialize)]
struct RealizerFile {
    extensions: Vec<Vec<usize>>,
}

/// Parses a realizer file.
pub fn parse_realizer(text: &str) -> Result<Realizer> {
    let file: RealizerFile = parse_json(text)?;
    Ok(Realizer { extensions: file.extensions.into_iter().map(|order| LinearExtension { order }).collect() })
}

/// Writes a realizer file as one JSON line.
pub fn write_realizer(r: &Realizer) -> String {
    to_line(&RealizerFile { extensions: r.extensions.iter().map(|e| e.order.clone()).collect() })
}

#[derive(Serialize, Deserialize)]
struct CoveringClass {
    pairs: Vec<[usize; 2]>,
    provenance: String,
}

#[derive(Serialize, Deserialize)]
struct CoveringFile {
    classes: Vec<CoveringClass>,
}

/// Parses a covering file.
pub fn parse_covering(text: &str) -> Result<Covering> {
    let file: CoveringFile = parse_json(text)?;
    let mut c = Covering::new();
    for class in file.classes {
        c.push(class.pairs.into_iter().map(|p| Pair::new(p[0], p[1])).collect(), class.provenance);
    }
    Ok(c)
}

/// JSON value of a covering, each class with its provenance.
pub fn covering_value(c: &Covering) -> serde_json::Value {
    let file = CoveringFile {
        classes: c
            .classes
            .iter()
            .zip(&c.provenance)
            .map(|(class, label)| CoveringClass { pairs: class.iter().map(|p| [p.a, p.b]).collect(), provenance: label.clone() })
            .collect(),
    };
    serde_json::to_value(file).expect("serializable")
}

/// Writes a covering file as one JSON line.
pub fn write_covering(c: &Covering) -> String {
    to_line(&covering_value(c))
}

/// Pair list as JSON arrays.
pub fn pairs_value(pairs: &[Pair]) -> serde_json::Value {
    serde_json::Value::Array(pairs.iter().map(|p| serde_json::json!([p.a, p.b])).collect())
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The cover graph in Graphviz form, edges pointing upward.
pub fn cover_dot(poset: &Poset, labels: Option<&[String]>) -> String {
    let mut s = String::from("digraph cover {\n");
    for v in 0..poset.n() {
        let label = labels.map_or_else(|| v.to_string(), |l| escape(&l[v]));
        let _ = writeln!(s, "  n{v} [label=\"{label}\"];");
    }
    for &(lo, hi) in poset.covers() {
        let _ = writeln!(s, "  n{lo} -> n{hi};");
    }
    s.push_str("}\n");
    s
}
