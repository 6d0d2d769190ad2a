//! Input files: `{"kind": ..., "payload": {...}}`.

use serde::Deserialize;
use stackstab::gerbe::GerbeSheaf;
use stackstab::gitbounds::{SubspacePair, WeightDecomposition};
use stackstab::reptheory::{PointObject, TwistList};
use stackstab::{DecomposableSheaf, Error, GeneratingSheaf, OrbiLineBundle, QPoly, Rational, Result, StackyCurve};

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum ProblemFile {
    PointTable(PointTablePayload),
    Rootcurve(RootcurvePayload),
    Gerbe(GerbeSheaf),
    Git(GitPayload),
    Bounds(BoundsPayload),
}

impl ProblemFile {
    pub fn kind(&self) -> &'static str {
        match self {
            ProblemFile::PointTable(_) => "point_table",
            ProblemFile::Rootcurve(_) => "rootcurve",
            ProblemFile::Gerbe(_) => "gerbe",
            ProblemFile::Git(_) => "git",
            ProblemFile::Bounds(_) => "bounds",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointTablePayload {
    pub points: Vec<PointObject>,
    pub twists: TwistList,
}

/// `"balanced"`, `"parabolic"`, `"trivial"`, or an explicit list of summands.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GeneratingSpec {
    Named(String),
    Explicit { summands: Vec<OrbiLineBundle> },
}

impl GeneratingSpec {
    pub fn resolve(spec: Option<&GeneratingSpec>, curve: &StackyCurve) -> Result<GeneratingSheaf> {
        match spec {
            None => Ok(GeneratingSheaf::balanced(curve)),
            Some(GeneratingSpec::Named(name)) => match name.as_str() {
                "balanced" => Ok(GeneratingSheaf::balanced(curve)),
                "parabolic" => Ok(GeneratingSheaf::parabolic(curve)),
                "trivial" => Ok(GeneratingSheaf::trivial(curve)),
                other => Err(Error::InvalidInput(format!(
                    "unknown generating sheaf {other:?}; use balanced, parabolic, trivial or {{\"summands\": [...]}}"
                ))),
            },
            Some(GeneratingSpec::Explicit { summands }) => {
                let e = GeneratingSheaf { summands: summands.clone() };
                if e.summands.is_empty() {
                    return Err(Error::InvalidInput("generating sheaf needs at least one summand".into()));
                }
                e.summands.iter().try_for_each(|s| s.check_shape(curve))?;
                Ok(e)
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootcurvePayload {
    pub curve: StackyCurve,
    pub sheaf: DecomposableSheaf,
    #[serde(default)]
    pub generating: Option<GeneratingSpec>,
    /// Second sheaf, for `sequiv`.
    #[serde(default)]
    pub other: Option<DecomposableSheaf>,
}

impl RootcurvePayload {
    pub fn setup(&self) -> Result<GeneratingSheaf> {
        self.curve.validate()?;
        GeneratingSpec::resolve(self.generating.as_ref(), &self.curve)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GitPayload {
    #[serde(default)]
    pub weights: Option<WeightDecomposition>,
    /// Total dimension `N` for `git-check`.
    #[serde(default)]
    pub dim: Option<u64>,
    #[serde(default)]
    pub hilbert: Option<QPoly>,
    #[serde(default)]
    pub pairs: Vec<SubspacePair>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsPayload {
    #[serde(default)]
    pub curve: Option<StackyCurve>,
    #[serde(default)]
    pub sheaf: Option<DecomposableSheaf>,
    #[serde(default)]
    pub generating: Option<GeneratingSpec>,
    /// α-side and (b)-side lists for `regularity`.
    #[serde(default)]
    pub a: Option<Vec<Rational>>,
    #[serde(default)]
    pub b: Option<Vec<Rational>>,
}

pub fn require<T>(field: Option<T>, name: &str, kind: &str) -> Result<T> {
    field.ok_or_else(|| Error::InvalidInput(format!("payload of kind {kind} needs the field {name:?}")))
}

pub fn schema_hint(kind: &str) -> &'static str {
    match kind {
        "point_table" => {
            r#"{"kind":"point_table","payload":{"points":[{"label":"P(2)","rep":{"modulus":2,"chars":[0]}}],"twists":[0,1,2]}}"#
        }
        "rootcurve" => {
            r#"{"kind":"rootcurve","payload":{"curve":{"genus":0,"polarization_degree":1,"stacky_points":[2]},"sheaf":{"lines":[{"base_degree":0,"exponents":[0]}],"torsion":[]},"generating":"balanced"}}"#
        }
        "gerbe" => {
            r#"{"kind":"gerbe","payload":{"band_order":2,"base":{"genus":0,"polarization_degree":1},"twists":[0,1],"components":{"0":{"lines":[{"base_degree":0}]}}}}"#
        }
        "git" => {
            r#"{"kind":"git","payload":{"weights":[{"weight":-1,"dim":1,"hilbert":[1,1]}],"dim":2,"hilbert":[2,2],"pairs":[{"dim":1,"hilbert":[1,1]}]}}"#
        }
        "bounds" => {
            r#"{"kind":"bounds","payload":{"curve":{"genus":0,"polarization_degree":1,"stacky_points":[2]},"sheaf":{"lines":[{"base_degree":0,"exponents":[0]}]},"a":[1,1],"b":[2,3]}}"#
        }
        _ => r#"{"kind":"point_table|rootcurve|gerbe|git|bounds","payload":{...}}"#,
    }
}
