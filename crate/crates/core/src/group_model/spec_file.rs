//! The `group-spec v1` JSON format.

use serde::{Deserialize, Serialize};

use super::{build_from_descriptor, EssUnramDescriptor, GaloisAction, GroupModel, RootDatum};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub const SCHEMA_V1: &str = "group-spec v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDatum {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple_indices: Vec<usize>,
    #[serde(default)]
    pub inertia_gens: Vec<Vec<Vec<i64>>>,
    /// Defaults to the identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<Vec<Vec<i64>>>,
    /// Defaults to the sum of the positive roots.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_rho: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<EssUnramDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<RawDatum>,
}

fn matrix(rows: &[Vec<i64>], n: usize, what: &str) -> Result<IntMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("{what} must be a {n}x{n} matrix")));
    }
    Ok(IntMatrix::from_rows(rows, n))
}

impl GroupSpec {
    pub fn from_preset(label: &str, preset: EssUnramDescriptor) -> Self {
        GroupSpec { schema: SCHEMA_V1.into(), label: Some(label.into()), preset: Some(preset), raw: None }
    }

    /// Builds the model. Preset models are fully built (and so satisfy the
    /// invariants by construction); raw models are only shape-checked.
    pub fn to_model(&self) -> Result<GroupModel> {
        if self.schema != SCHEMA_V1 {
            return Err(Error::Parse(format!("unsupported schema {:?}, expected {SCHEMA_V1:?}", self.schema)));
        }
        let mut model = match (&self.preset, &self.raw) {
            (Some(p), None) => build_from_descriptor(p)?,
            (None, Some(r)) => {
                let n = r.rank;
                let datum = RootDatum::from_parts(
                    n,
                    r.roots.clone(),
                    r.coroots.clone(),
                    r.simple_indices.clone(),
                    r.two_rho.clone(),
                )
                .map_err(|e| Error::Parse(e.to_string()))?;
                let inertia = r
                    .inertia_gens
                    .iter()
                    .map(|g| matrix(g, n, "inertia generator"))
                    .collect::<Result<Vec<_>>>()?;
                let frob = match &r.frobenius {
                    Some(f) => matrix(f, n, "frobenius")?,
                    None => IntMatrix::identity(n),
                };
                GroupModel::new("raw", datum, GaloisAction::new(n, inertia, frob))
            }
            _ => return Err(Error::Parse("exactly one of \"preset\" and \"raw\" must be given".into())),
        };
        if let Some(l) = &self.label {
            model.label = l.clone();
        }
        Ok(model)
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupModel> {
    let spec: GroupSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    spec.to_model()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_round_trip() {
        let text = r#"{"schema": "group-spec v1", "label": "GL2",
            "preset": {"factors": [{"cartan_type": "A1", "isogeny": "gl", "e": 1, "f": 1,
                                    "frobenius_diagram_aut": [0]}]}}"#;
        let m = parse_group_spec(text).unwrap();
        assert_eq!(m.label, "GL2");
        assert_eq!(m.datum.rank, 2);
        let spec = GroupSpec::from_preset("GL2", m.preset.clone().unwrap());
        let again = parse_group_spec(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn raw_datum() {
        let text = r#"{"schema": "group-spec v1", "raw": {"rank": 2, "roots": [[1,-1],[-1,1]],
            "coroots": [[1,-1],[-1,1]], "simple_indices": [0], "two_rho": [0, 0]}}"#;
        let m = parse_group_spec(text).unwrap();
        assert_eq!(m.datum.two_rho, vec![0, 0]);
        assert!(!super::super::validate(&m).is_valid());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_group_spec("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_group_spec(r#"{"schema": "group-spec v2", "raw": {"rank":1,"roots":[],"coroots":[],"simple_indices":[]}}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_group_spec(r#"{"schema": "group-spec v1", "raw": {"rank":2,"roots":[[1]],"coroots":[[1]],"simple_indices":[0]}}"#),
            Err(Error::Parse(_))
        ));
    }
}
