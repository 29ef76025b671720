//! JSON interchange for every combinatorial structure, and the `map`
//! conversions between them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::enumerate::Label;
use crate::error::{Error, Result};
use crate::multisets::{pi_decode, pi_encode, tau_decode, tau_encode, CyclicMultiset};
use crate::paths::{decompose, recompose, to_ornament, GoodPath, MinimalField, Ornament};
use crate::trees::{
    cycle_to_min, forest_to_tree, is_root_minimal, min_to_cycle, tree_to_forest, CycleRootedTree,
    PlaneTree, RootMinimalForest, Slots,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Path(GoodPath),
    Field(MinimalField),
    Ornament(Ornament),
    Tree(PlaneTree),
    Forest(RootMinimalForest),
    CycleTree(CycleRootedTree),
    Multiset(CyclicMultiset),
}

// Wire format. The tag comes first in the serialized object.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Dto {
    Path(PathDto),
    Field { parts: Vec<Dto> },
    Ornament(PathDto),
    Tree(TreeDto),
    Forest { parts: Vec<Dto> },
    CycleTree(CycleDto),
    Multiset(MultisetDto),
}

#[derive(Serialize, Deserialize)]
struct PathDto {
    k: u32,
    steps: String,
    labels: Vec<Label>,
}

#[derive(Serialize, Deserialize)]
struct TreeDto {
    k: u32,
    root: Label,
    #[serde(with = "label_keys")]
    slots: Slots,
}

#[derive(Serialize, Deserialize)]
struct CycleDto {
    k: u32,
    cycle: Vec<Label>,
    #[serde(with = "label_keys")]
    slots: Slots,
}

#[derive(Serialize, Deserialize)]
struct MultisetDto {
    k: u32,
    cycle: Vec<Label>,
    #[serde(with = "label_keys")]
    f: BTreeMap<Label, Vec<u32>>,
}

// Object keys are label strings. Internally tagged enums buffer their
// content, which loses serde_json's string-to-integer key coercion.
mod label_keys {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::enumerate::Label;

    pub fn serialize<V: Serialize, S: Serializer>(map: &BTreeMap<Label, V>, s: S) -> Result<S::Ok, S::Error> {
        map.serialize(s)
    }

    pub fn deserialize<'de, V: Deserialize<'de>, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Label, V>, D::Error> {
        BTreeMap::<String, V>::deserialize(d)?
            .into_iter()
            .map(|(key, v)| {
                key.parse::<Label>()
                    .map(|l| (l, v))
                    .map_err(|_| D::Error::custom(format!("key {key:?} is not a label")))
            })
            .collect()
    }
}

impl PathDto {
    fn from(p: &GoodPath) -> Self {
        PathDto {
            k: p.k(),
            steps: p.word(),
            labels: p.labels().to_vec(),
        }
    }

    fn build(self) -> Result<GoodPath> {
        GoodPath::parse(self.k, &self.steps, self.labels)
    }
}

impl Dto {
    fn from(s: &Structure) -> Self {
        match s {
            Structure::Path(p) => Dto::Path(PathDto::from(p)),
            Structure::Field(f) => Dto::Field {
                parts: f.parts().iter().map(|p| Dto::Path(PathDto::from(p))).collect(),
            },
            Structure::Ornament(o) => Dto::Ornament(PathDto::from(o.rep())),
            Structure::Tree(t) => Dto::Tree(TreeDto {
                k: t.k(),
                root: t.root(),
                slots: t.slots().clone(),
            }),
            Structure::Forest(f) => Dto::Forest {
                parts: f.parts().iter().map(|t| Dto::from(&Structure::Tree(t.clone()))).collect(),
            },
            Structure::CycleTree(c) => Dto::CycleTree(CycleDto {
                k: c.k(),
                cycle: c.cycle().to_vec(),
                slots: c.slots().clone(),
            }),
            Structure::Multiset(m) => Dto::Multiset(MultisetDto {
                k: m.k(),
                cycle: m.cycle().to_vec(),
                f: m.f().clone(),
            }),
        }
    }

    fn build(self) -> Result<Structure> {
        Ok(match self {
            Dto::Path(p) => Structure::Path(p.build()?),
            Dto::Field { parts } => {
                let parts = parts
                    .into_iter()
                    .map(|d| match d.build()? {
                        Structure::Path(p) => Ok(p),
                        other => Err(Error::invariant("field", format!("part is a {}, not a path", other.kind()))),
                    })
                    .collect::<Result<_>>()?;
                Structure::Field(MinimalField::new(parts)?)
            }
            // any member of the class is accepted and canonicalized
            Dto::Ornament(p) => Structure::Ornament(to_ornament(&p.build()?)),
            Dto::Tree(t) => Structure::Tree(PlaneTree::new(t.k, t.root, t.slots)?),
            Dto::Forest { parts } => {
                let parts = parts
                    .into_iter()
                    .map(|d| match d.build()? {
                        Structure::Tree(t) => Ok(t),
                        other => Err(Error::invariant("forest", format!("part is a {}, not a tree", other.kind()))),
                    })
                    .collect::<Result<_>>()?;
                Structure::Forest(RootMinimalForest::new(parts)?)
            }
            Dto::CycleTree(c) => Structure::CycleTree(CycleRootedTree::new(c.k, c.cycle, c.slots)?),
            Dto::Multiset(m) => Structure::Multiset(CyclicMultiset::new(m.k, m.cycle, m.f)?),
        })
    }
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Path(_) => "path",
            Structure::Field(_) => "field",
            Structure::Ornament(_) => "ornament",
            Structure::Tree(_) => "tree",
            Structure::Forest(_) => "forest",
            Structure::CycleTree(_) => "cycle-tree",
            Structure::Multiset(_) => "multiset",
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(Dto::from(self)).expect("plain data serializes")
    }

    /// Compact single-line JSON, suitable for JSONL.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&Dto::from(self)).expect("plain data serializes")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let dto: Dto = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        dto.build()
    }

    /// Parses and validates; violations are reported by invariant name.
    pub fn from_json(text: &str) -> Result<Self> {
        let dto: Dto = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        dto.build()
    }

    pub fn map_to(&self, target: Target) -> Result<Structure> {
        map(self, target)
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

macro_rules! structure_from {
    ($($variant:ident($ty:ty)),*) => {$(
        impl From<$ty> for Structure {
            fn from(x: $ty) -> Self {
                Structure::$variant(x)
            }
        }
    )*};
}

structure_from!(
    Path(GoodPath),
    Field(MinimalField),
    Ornament(Ornament),
    Tree(PlaneTree),
    Forest(RootMinimalForest),
    CycleTree(CycleRootedTree),
    Multiset(CyclicMultiset)
);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Path,
    MinimalField,
    Ornament,
    Multiset,
    CycleTree,
    Tree,
    MinimalTree,
    Forest,
}

impl Target {
    pub const ALL: [Target; 8] = [
        Target::Path,
        Target::MinimalField,
        Target::Ornament,
        Target::Multiset,
        Target::CycleTree,
        Target::Tree,
        Target::MinimalTree,
        Target::Forest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Path => "path",
            Target::MinimalField => "minimal-field",
            Target::Ornament => "ornament",
            Target::Multiset => "multiset",
            Target::CycleTree => "cycle-tree",
            Target::Tree => "tree",
            Target::MinimalTree => "minimal-tree",
            Target::Forest => "forest",
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "field" => Ok(Target::MinimalField),
            _ => Target::ALL
                .into_iter()
                .find(|t| t.name() == s)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown map target {s:?}"))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn root_minimal(t: &PlaneTree) -> Result<PlaneTree> {
    if is_root_minimal(t) {
        Ok(t.clone())
    } else {
        Err(Error::invariant("tree", "root is not the minimal label on its rightmost branch"))
    }
}

/// Converts along the chains of bijections:
/// path ⇄ minimal field, path → ornament ⇄ multiset ⇄ cycle-tree ⇄
/// root-minimal tree, and tree ⇄ forest.
pub fn map(s: &Structure, target: Target) -> Result<Structure> {
    use Structure as S;
    use Target as T;
    let out: Structure = match (s, target) {
        (S::Path(p), T::Path) => p.clone().into(),
        (S::Path(p), T::MinimalField) => decompose(p).into(),
        (S::Path(p), T::Ornament) => to_ornament(p).into(),
        (S::Path(p), T::Multiset) => pi_encode(&to_ornament(p)).into(),
        (S::Path(p), T::CycleTree) => tau_decode(&pi_encode(&to_ornament(p)))?.into(),

        (S::Field(f), T::MinimalField) => f.clone().into(),
        (S::Field(f), T::Path) => recompose(f).into(),
        (S::Field(f), T::Ornament) => to_ornament(&recompose(f)).into(),

        (S::Ornament(o), T::Ornament) => o.clone().into(),
        (S::Ornament(o), T::Path) => o.rep().clone().into(),
        (S::Ornament(o), T::MinimalField) => decompose(o.rep()).into(),
        (S::Ornament(o), T::Multiset) => pi_encode(o).into(),
        (S::Ornament(o), T::CycleTree) => tau_decode(&pi_encode(o))?.into(),
        (S::Ornament(o), T::Tree | T::MinimalTree) => cycle_to_min(&tau_decode(&pi_encode(o))?).into(),

        (S::Multiset(m), T::Multiset) => m.clone().into(),
        (S::Multiset(m), T::Ornament) => pi_decode(m)?.into(),
        (S::Multiset(m), T::Path) => pi_decode(m)?.rep().clone().into(),
        (S::Multiset(m), T::CycleTree) => tau_decode(m)?.into(),
        (S::Multiset(m), T::Tree | T::MinimalTree) => cycle_to_min(&tau_decode(m)?).into(),

        (S::CycleTree(c), T::CycleTree) => c.clone().into(),
        (S::CycleTree(c), T::Multiset) => tau_encode(c).into(),
        (S::CycleTree(c), T::Ornament) => pi_decode(&tau_encode(c))?.into(),
        (S::CycleTree(c), T::Path) => pi_decode(&tau_encode(c))?.rep().clone().into(),
        (S::CycleTree(c), T::Tree | T::MinimalTree) => cycle_to_min(c).into(),

        (S::Tree(t), T::Tree) => t.clone().into(),
        (S::Tree(t), T::Forest) => tree_to_forest(t).into(),
        (S::Tree(t), T::MinimalTree) => root_minimal(t)?.into(),
        (S::Tree(t), T::CycleTree) => min_to_cycle(t)?.into(),
        (S::Tree(t), T::Multiset) => tau_encode(&min_to_cycle(t)?).into(),
        (S::Tree(t), T::Ornament) => pi_decode(&tau_encode(&min_to_cycle(t)?))?.into(),

        (S::Forest(f), T::Forest) => f.clone().into(),
        (S::Forest(f), T::Tree) => forest_to_tree(f).into(),

        (s, t) => {
            return Err(Error::InvalidArgument(format!(
                "no map from a {} to a {t}",
                s.kind()
            )))
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate_paths;
    use serde_json::json;

    fn parse(v: serde_json::Value) -> Result<Structure> {
        Structure::from_json(&v.to_string())
    }

    #[test]
    fn wire_format() {
        let p = Structure::Path(GoodPath::parse(2, "RURU", vec![1, 2]).unwrap());
        assert_eq!(p.to_json(), r#"{"kind":"path","k":2,"steps":"RURU","labels":[1,2]}"#);
        let m = parse(json!({"kind":"multiset","k":2,"cycle":[2,1],"f":{"1":[2],"2":[0]}})).unwrap();
        assert_eq!(m.to_json(), r#"{"kind":"multiset","k":2,"cycle":[1,2],"f":{"1":[2],"2":[0]}}"#);
        let t = parse(json!({"kind":"tree","k":2,"root":2,"slots":{"2":[null,1],"1":[null,null]}})).unwrap();
        assert_eq!(t.to_json(), r#"{"kind":"tree","k":2,"root":2,"slots":{"1":[null,null],"2":[null,1]}}"#);
        let c = parse(json!({"kind":"cycle-tree","k":2,"cycle":[3,1],"slots":{"1":[null,null],"3":[null,null]}})).unwrap();
        assert_eq!(c.to_json(), r#"{"kind":"cycle-tree","k":2,"cycle":[1,3],"slots":{"1":[null,null],"3":[null,null]}}"#);
    }

    #[test]
    fn roundtrip_through_json() {
        for p in enumerate_paths(3, &[1, 2, 3], None).unwrap() {
            for target in Target::ALL {
                if let Ok(s) = map(&Structure::Path(p.clone()), target) {
                    assert_eq!(Structure::from_json(&s.to_json()).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn diagnostics() {
        let err = parse(json!({"kind":"path","k":2,"steps":"URRU","labels":[1,2]})).unwrap_err();
        assert!(err.to_string().contains("rises above the diagonal"), "{err}");
        assert!(matches!(Structure::from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(parse(json!({"kind":"blob"})), Err(Error::Parse(_))));
        let err = parse(json!({"kind":"multiset","k":2,"cycle":[1,2],"f":{"1":[1],"2":[0]}})).unwrap_err();
        assert!(err.to_string().contains("invalid multiset"), "{err}");
        let err = parse(json!({"kind":"field","parts":[{"kind":"path","k":2,"steps":"RURU","labels":[2,1]}]})).unwrap_err();
        assert!(err.to_string().contains("label-minimal"), "{err}");
    }

    #[test]
    fn map_examples() {
        let p = parse(json!({"kind":"path","k":2,"steps":"RURU","labels":[2,1]})).unwrap();
        let Structure::Field(f) = map(&p, Target::MinimalField).unwrap() else { panic!() };
        assert_eq!(f.parts().len(), 2);
        assert!(f.parts().iter().all(|q| q.word() == "RU"));

        let o = parse(json!({"kind":"ornament","k":2,"steps":"RRUU","labels":[1,2]})).unwrap();
        let Structure::CycleTree(c) = map(&o, Target::CycleTree).unwrap() else { panic!() };
        assert_eq!(c.cycle(), [1]);
        assert_eq!(c.slots()[&1], [Some(2), None]);

        let t = parse(json!({"kind":"tree","k":2,"root":2,"slots":{"2":[null,1],"1":[null,null]}})).unwrap();
        assert_eq!(map(&t, Target::Tree).unwrap(), t);
        assert!(map(&t, Target::MinimalTree).is_err());
        assert!(map(&t, Target::CycleTree).is_err());
        assert!(map(&Structure::Forest(tree_to_forest(&PlaneTree::leaf(2, 1))), Target::Multiset).is_err());
    }

    #[test]
    fn map_chain_closes() {
        for p in enumerate_paths(3, &[1, 2, 3], None).unwrap() {
            let s = Structure::Path(p);
            let o = map(&s, Target::Ornament).unwrap();
            let m = map(&o, Target::Multiset).unwrap();
            let c = map(&m, Target::CycleTree).unwrap();
            let t = map(&c, Target::MinimalTree).unwrap();
            let back = map(&map(&t, Target::CycleTree).unwrap(), Target::Multiset).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn target_names() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert_eq!("field".parse::<Target>().unwrap(), Target::MinimalField);
        assert!("nope".parse::<Target>().is_err());
    }
}
