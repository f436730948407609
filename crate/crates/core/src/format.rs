//! JSON files for spaces, topologies, posets, sieves and presheaves.
//!
//! ```json
//! {"points": ["a","b"], "connecteds": [["a"],["a","b"]], "mode": "closed"}
//! {"points": ["o","c"], "opens": [["o"]], "mode": "subbase"}
//! {"elements": ["x","y"], "leq": [["x","y"]]}
//! {"target": ["a","b"], "domain": [["a"],[]]}
//! {"base": "space.json", "values": {"{a}": ["p"]}, "restrictions": {"{a}->{}": {"p": "*"}}}
//! ```
//!
//! Malformed JSON or a missing field is [`Error::Parse`]; everything else
//! (unknown labels, unclosed families, non-functorial maps) is reported by
//! the constructor that rejects it.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::connectivity::ConnectivitySpace;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::sheaf::{FinitePresheaf, Site, SiteBase};
use crate::sieve::Sieve;
use crate::subset::{GroundSet, Subset, SubsetFamily};
use crate::topology::FiniteTopology;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyMode {
    #[default]
    Closed,
    Generators,
    Subbase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub connecteds: Vec<Vec<String>>,
    #[serde(default)]
    pub mode: FamilyMode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
    #[serde(default)]
    pub mode: FamilyMode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SieveFile {
    pub target: Vec<String>,
    pub domain: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafFile {
    /// A path (relative to the presheaf file) or an inline space or poset.
    pub base: Value,
    pub values: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub restrictions: BTreeMap<String, BTreeMap<String, String>>,
}

/// A parsed file of any supported kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Space(ConnectivitySpace),
    Topology(FiniteTopology),
    Poset(Poset),
    Presheaf(FinitePresheaf),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Space(_) => "connectivity-space",
            Document::Topology(_) => "topology",
            Document::Poset(_) => "poset",
            Document::Presheaf(_) => "presheaf",
        }
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

fn family(ground: &GroundSet, sets: &[Vec<String>]) -> Result<SubsetFamily> {
    sets.iter().map(|s| ground.subset(s.iter())).collect()
}

impl SpaceFile {
    pub fn build(&self) -> Result<ConnectivitySpace> {
        let ground = GroundSet::new(self.points.iter())?;
        let fam = family(&ground, &self.connecteds)?;
        match self.mode {
            FamilyMode::Closed => ConnectivitySpace::from_closed(ground, fam),
            FamilyMode::Generators => ConnectivitySpace::generated(ground, &fam),
            FamilyMode::Subbase => Err(Error::Parse(
                "mode `subbase` applies to topologies; spaces use `closed` or `generators`".into(),
            )),
        }
    }

    pub fn of(space: &ConnectivitySpace) -> Self {
        SpaceFile {
            points: space.ground().names().to_vec(),
            connecteds: labelled_family(space.ground(), space.connecteds()),
            mode: FamilyMode::Closed,
        }
    }
}

impl TopologyFile {
    pub fn build(&self) -> Result<FiniteTopology> {
        let ground = GroundSet::new(self.points.iter())?;
        let fam = family(&ground, &self.opens)?;
        match self.mode {
            FamilyMode::Closed => FiniteTopology::from_opens(ground, fam),
            FamilyMode::Subbase => FiniteTopology::from_subbase(ground, &fam),
            FamilyMode::Generators => Err(Error::Parse(
                "mode `generators` applies to spaces; topologies use `closed` or `subbase`".into(),
            )),
        }
    }

    pub fn of(t: &FiniteTopology) -> Self {
        TopologyFile {
            points: t.ground().names().to_vec(),
            opens: labelled_family(t.ground(), t.opens()),
            mode: FamilyMode::Closed,
        }
    }
}

impl PosetFile {
    pub fn build(&self) -> Result<Poset> {
        Poset::from_labels(self.elements.clone(), &self.leq)
    }

    /// Elements with the cover relation only.
    pub fn of(p: &Poset) -> Self {
        PosetFile {
            elements: p.labels().to_vec(),
            leq: p
                .covers()
                .into_iter()
                .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect(),
        }
    }
}

impl SieveFile {
    pub fn build(&self, space: &ConnectivitySpace) -> Result<Sieve> {
        let ground = space.ground();
        Sieve::new(
            space,
            ground.subset(self.target.iter())?,
            family(ground, &self.domain)?,
        )
    }

    pub fn of(space: &ConnectivitySpace, sieve: &Sieve) -> Self {
        SieveFile {
            target: space.ground().labels_of(sieve.target()),
            domain: sieve
                .domain()
                .iter()
                .map(|s| space.ground().labels_of(s))
                .collect(),
        }
    }
}

impl PresheafFile {
    /// Builds the presheaf; a string `base` is read relative to `dir`.
    pub fn build(&self, dir: Option<&Path>) -> Result<FinitePresheaf> {
        let base = match &self.base {
            Value::String(path) => {
                let full: PathBuf = dir
                    .map(|d| d.join(path))
                    .unwrap_or_else(|| PathBuf::from(path));
                read_document(&full)?
            }
            inline @ Value::Object(_) => document_from_value(inline.clone(), dir)?,
            _ => return Err(Error::Parse("`base` must be a path or an object".into())),
        };
        let site = match base {
            Document::Space(s) => Site::of_space(&s)?,
            Document::Poset(p) => Site::of_poset(&p),
            other => {
                return Err(Error::KindMismatch {
                    expected: "connectivity-space or poset".into(),
                    found: other.kind().into(),
                })
            }
        };
        let values: Vec<(&str, Vec<&str>)> = self
            .values
            .iter()
            .map(|(k, v)| (k.as_str(), v.iter().map(String::as_str).collect()))
            .collect();
        let mut restrictions = Vec::with_capacity(self.restrictions.len());
        for (key, map) in &self.restrictions {
            let (from, to) = key.split_once("->").ok_or_else(|| {
                Error::Parse(format!("restriction key `{key}` is not of the form A->B"))
            })?;
            let pairs = map.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
            restrictions.push((from.trim(), to.trim(), pairs));
        }
        FinitePresheaf::from_labels(site, &values, &restrictions)
    }

    /// Inline base, every value set, and restrictions along covers.
    pub fn of(f: &FinitePresheaf) -> Self {
        let site = f.site();
        let base = match site.base() {
            SiteBase::Space(s) => serde_json::to_value(SpaceFile::of(s)),
            SiteBase::Poset(p) => serde_json::to_value(PosetFile::of(p)),
        }
        .expect("plain data serializes");
        let values = (0..site.len())
            .map(|a| (site.label(a).to_string(), f.values(a).to_vec()))
            .collect();
        let restrictions = f
            .cover_restrictions()
            .into_iter()
            .map(|(a, b, map)| {
                let pairs = map
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| (f.values(a)[x].clone(), f.values(b)[y].clone()))
                    .collect();
                (format!("{}->{}", site.label(a), site.label(b)), pairs)
            })
            .collect();
        PresheafFile {
            base,
            values,
            restrictions,
        }
    }
}

fn labelled_family(ground: &GroundSet, fam: &SubsetFamily) -> Vec<Vec<String>> {
    fam.iter()
        .filter(|s| *s != Subset::EMPTY)
        .map(|s| ground.labels_of(s))
        .collect()
}

/// Decides the kind of a file by its keys: `connecteds`, `opens`,
/// `elements` or `values`.
pub fn document_from_value(v: Value, dir: Option<&Path>) -> Result<Document> {
    let Value::Object(map) = &v else {
        return Err(Error::Parse("expected a JSON object".into()));
    };
    if map.contains_key("values") {
        Ok(Document::Presheaf(
            from_value::<PresheafFile>(v)?.build(dir)?,
        ))
    } else if map.contains_key("connecteds") {
        Ok(Document::Space(from_value::<SpaceFile>(v)?.build()?))
    } else if map.contains_key("opens") {
        Ok(Document::Topology(from_value::<TopologyFile>(v)?.build()?))
    } else if map.contains_key("elements") {
        Ok(Document::Poset(from_value::<PosetFile>(v)?.build()?))
    } else {
        Err(Error::Parse(
            "unrecognised file: expected `connecteds`, `opens`, `elements` or `values`".into(),
        ))
    }
}

pub fn parse_document(text: &str, dir: Option<&Path>) -> Result<Document> {
    document_from_value(parse_json(text)?, dir)
}

pub fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text, path.parent())
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn document_to_json(doc: &Document) -> String {
    match doc {
        Document::Space(s) => to_json_string(&SpaceFile::of(s)),
        Document::Topology(t) => to_json_string(&TopologyFile::of(t)),
        Document::Poset(p) => to_json_string(&PosetFile::of(p)),
        Document::Presheaf(f) => to_json_string(&PresheafFile::of(f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BORROMEAN: &str =
        r#"{"points": ["x1","x2","x3"], "connecteds": [["x1"],["x2"],["x3"],["x1","x2","x3"]]}"#;

    #[test]
    fn detects_kinds() {
        assert_eq!(
            parse_document(BORROMEAN, None).unwrap().kind(),
            "connectivity-space"
        );
        let t = r#"{"points": ["o","c"], "opens": [["o"],["o","c"]]}"#;
        assert_eq!(parse_document(t, None).unwrap().kind(), "topology");
        let p = r#"{"elements": ["x","y"], "leq": [["x","y"]]}"#;
        assert_eq!(parse_document(p, None).unwrap().kind(), "poset");
    }

    #[test]
    fn parse_versus_validation_errors() {
        assert!(matches!(parse_document("{", None), Err(Error::Parse(_))));
        assert!(matches!(parse_document("[]", None), Err(Error::Parse(_))));
        assert!(matches!(
            parse_document(r#"{"points": ["a"]}"#, None),
            Err(Error::Parse(_))
        ));
        let unclosed = r#"{"points": ["a","b","c"], "connecteds": [["a","b"],["b","c"]]}"#;
        assert_eq!(
            parse_document(unclosed, None),
            Err(Error::NotClosed {
                missing: "{a,b,c}".into()
            })
        );
        let unknown = r#"{"points": ["a"], "connecteds": [["z"]]}"#;
        assert!(matches!(
            parse_document(unknown, None),
            Err(Error::UnknownPoint(_))
        ));
    }

    #[test]
    fn generator_and_subbase_modes() {
        let g = r#"{"points": ["a","b","c"], "connecteds": [["a","b"],["b","c"]], "mode": "generators"}"#;
        let Document::Space(s) = parse_document(g, None).unwrap() else {
            panic!()
        };
        assert!(s.is_connected(s.ground().full()));
        let t = r#"{"points": ["a","b"], "opens": [["a"]], "mode": "subbase"}"#;
        let Document::Topology(t) = parse_document(t, None).unwrap() else {
            panic!()
        };
        assert_eq!(t.opens().len(), 3);
    }

    #[test]
    fn round_trips() {
        for text in [
            BORROMEAN,
            r#"{"points": ["o","c"], "opens": [["o"],["o","c"]]}"#,
            r#"{"elements": ["x","y","z"], "leq": [["x","y"],["y","z"],["x","z"]]}"#,
        ] {
            let doc = parse_document(text, None).unwrap();
            let again = parse_document(&document_to_json(&doc), None).unwrap();
            assert_eq!(doc, again);
        }
    }

    #[test]
    fn presheaf_with_inline_base() {
        let text = format!(
            r#"{{"base": {BORROMEAN},
                "values": {{"{{}}": ["*"], "{{x1}}": ["*"], "{{x2}}": ["*"], "{{x3}}": ["*"], "{{x1,x2,x3}}": ["*"]}},
                "restrictions": {{"{{x1}}->{{}}": {{"*": "*"}}, "{{x2}}->{{}}": {{"*": "*"}}, "{{x3}}->{{}}": {{"*": "*"}},
                                  "{{x1,x2,x3}}->{{x1}}": {{"*": "*"}}, "{{x1,x2,x3}}->{{x2}}": {{"*": "*"}},
                                  "{{x1,x2,x3}}->{{x3}}": {{"*": "*"}}}}}}"#
        );
        let doc = parse_document(&text, None).unwrap();
        let Document::Presheaf(f) = &doc else {
            panic!()
        };
        assert_eq!(f.site().len(), 5);
        assert_eq!(parse_document(&document_to_json(&doc), None).unwrap(), doc);
    }

    #[test]
    fn sieve_files() {
        let Document::Space(s) = parse_document(BORROMEAN, None).unwrap() else {
            panic!()
        };
        let file: SieveFile = serde_json::from_str(
            r#"{"target": ["x1","x2","x3"], "domain": [["x1"],["x2"],["x3"],[]]}"#,
        )
        .unwrap();
        let sieve = file.build(&s).unwrap();
        assert!(!sieve.is_covering(&s));
        assert_eq!(SieveFile::of(&s, &sieve).build(&s).unwrap(), sieve);
    }
}
