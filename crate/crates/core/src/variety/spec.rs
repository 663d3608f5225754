//! Model files and the built-in model library.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::parse::variables_used;
use crate::ffpoly::{parse_poly, Field, MultiPoly, Rationals};

/// On-disk description of a projective variety `X ⊂ P^ambient`.
///
/// ```json
/// { "name": "quadric-surface", "ambient": 3, "dim": 2,
///   "forms": ["z0*z3 - z1*z2"],
///   "parametrization": ["z0*z2", "z0*z3", "z1*z2", "z1*z3"] }
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub name: String,
    pub ambient: usize,
    pub dim: usize,
    pub forms: Vec<String>,
    #[serde(default)]
    pub parametrization: Option<Vec<String>>,
}

/// A [`ModelSpec`] parsed and validated over `Q`.
#[derive(Debug, Clone)]
pub struct RationalModel {
    pub spec: ModelSpec,
    pub forms: Vec<MultiPoly<Rationals>>,
    pub parametrization: Option<Vec<MultiPoly<Rationals>>>,
}

pub const BUILTIN_NAMES: &[&str] = &[
    "conic",
    "hyperplane-p2",
    "hyperplane-p3",
    "quadric-surface",
    "cubic-surface",
    "quartic-surface",
    "sextic-surface",
    "nodal-cubic",
    "twisted-cubic",
    "veronese-surface",
    "segre-p1p2",
    "ci-two-quadrics",
];

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

impl ModelSpec {
    pub fn new(name: &str, ambient: usize, dim: usize, forms: &[&str], parametrization: Option<&[&str]>) -> Self {
        ModelSpec {
            name: name.to_string(),
            ambient,
            dim,
            forms: strings(forms),
            parametrization: parametrization.map(strings),
        }
    }

    /// The Fermat hypersurface `z0^d + ... + zN^d`.
    pub fn fermat(degree: u32, ambient: usize) -> Self {
        let terms: Vec<String> = (0..=ambient).map(|i| format!("z{i}^{degree}")).collect();
        ModelSpec {
            name: format!("fermat-d{degree}-p{ambient}"),
            ambient,
            dim: ambient - 1,
            forms: vec![terms.join(" + ")],
            parametrization: None,
        }
    }

    /// The hyperplane `z0 = 0`.
    pub fn hyperplane(ambient: usize) -> Self {
        ModelSpec { name: format!("hyperplane-p{ambient}"), ambient, dim: ambient - 1, forms: strings(&["z0"]), parametrization: None }
    }

    /// Looks up a model by name. Besides [`BUILTIN_NAMES`], any `fermat-d{d}-p{N}` resolves.
    pub fn builtin(name: &str) -> Result<Self> {
        let spec = match name {
            "conic" => ModelSpec::new(name, 2, 1, &["z0*z2 - z1^2"], Some(&["z0^2", "z0*z1", "z1^2"])),
            "hyperplane-p2" => ModelSpec::hyperplane(2),
            "hyperplane-p3" => ModelSpec::hyperplane(3),
            "quadric-surface" => {
                ModelSpec::new(name, 3, 2, &["z0*z3 - z1*z2"], Some(&["z0*z2", "z0*z3", "z1*z2", "z1*z3"]))
            }
            "cubic-surface" => ModelSpec { name: name.into(), ..ModelSpec::fermat(3, 3) },
            "quartic-surface" => ModelSpec { name: name.into(), ..ModelSpec::fermat(4, 3) },
            "sextic-surface" => ModelSpec { name: name.into(), ..ModelSpec::fermat(6, 3) },
            "nodal-cubic" => ModelSpec::new(name, 2, 1, &["z2^2*z0 - z1^2*(z1 + z0)"], None),
            "twisted-cubic" => ModelSpec::new(
                name,
                3,
                1,
                &["z0*z2 - z1^2", "z0*z3 - z1*z2", "z1*z3 - z2^2"],
                Some(&["z0^3", "z0^2*z1", "z0*z1^2", "z1^3"]),
            ),
            "veronese-surface" => ModelSpec::new(
                name,
                5,
                2,
                &[
                    "z0*z3 - z1^2",
                    "z0*z4 - z1*z2",
                    "z1*z4 - z2*z3",
                    "z0*z5 - z2^2",
                    "z1*z5 - z2*z4",
                    "z3*z5 - z4^2",
                ],
                Some(&["z0^2", "z0*z1", "z0*z2", "z1^2", "z1*z2", "z2^2"]),
            ),
            "segre-p1p2" => ModelSpec::new(
                name,
                5,
                3,
                &["z0*z4 - z1*z3", "z0*z5 - z2*z3", "z1*z5 - z2*z4"],
                Some(&["z0*z2", "z0*z3", "z0*z4", "z1*z2", "z1*z3", "z1*z4"]),
            ),
            "ci-two-quadrics" => ModelSpec::new(
                name,
                5,
                3,
                &["z0*z5 - z1*z4 + z2*z3", "z0^2 + z1*z2 + z3*z5 + z4^2 + z0*z4"],
                None,
            ),
            other => return parse_fermat_name(other).ok_or_else(|| Error::InvalidModel(format!("unknown built-in model {other:?}"))),
        };
        Ok(spec)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Resolves `builtin:NAME` or a file path.
    pub fn resolve(reference: &str, base_dir: Option<&Path>) -> Result<Self> {
        if let Some(name) = reference.strip_prefix("builtin:") {
            return Self::builtin(name);
        }
        let path = match base_dir {
            Some(dir) if Path::new(reference).is_relative() => dir.join(reference),
            _ => Path::new(reference).to_path_buf(),
        };
        Self::load(&path)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model specs always serialize")
    }

    /// Parses every polynomial and checks the model invariants over `Q`.
    pub fn validate(&self) -> Result<RationalModel> {
        if self.ambient == 0 {
            return Err(Error::InvalidModel("ambient dimension must be at least 1".into()));
        }
        if self.dim > self.ambient {
            return Err(Error::InvalidModel(format!("dim {} exceeds ambient {}", self.dim, self.ambient)));
        }
        let nvars = self.ambient + 1;
        let mut forms = Vec::with_capacity(self.forms.len());
        for (i, text) in self.forms.iter().enumerate() {
            let f = parse_poly(text, Some(nvars))?;
            if f.is_zero() {
                return Err(Error::InvalidModel(format!("form {i} is zero")));
            }
            if !f.is_homogeneous() {
                return Err(Error::InvalidModel(format!("form {i} ({text}) is not homogeneous")));
            }
            forms.push(f);
        }
        if forms.is_empty() && self.dim != self.ambient {
            return Err(Error::InvalidModel("a model without forms must have dim = ambient".into()));
        }
        let parametrization = match &self.parametrization {
            None => None,
            Some(p) => Some(self.check_parametrization(p, &forms)?),
        };
        Ok(RationalModel { spec: self.clone(), forms, parametrization })
    }

    fn check_parametrization(&self, texts: &[String], forms: &[MultiPoly<Rationals>]) -> Result<Vec<MultiPoly<Rationals>>> {
        if texts.len() != self.ambient + 1 {
            return Err(Error::InvalidModel(format!(
                "parametrization has {} components, expected {}",
                texts.len(),
                self.ambient + 1
            )));
        }
        let mut source = 0;
        for t in texts {
            source = source.max(variables_used(t)?);
        }
        if source < 1 {
            return Err(Error::InvalidModel("parametrization uses no variables".into()));
        }
        let comps = texts.iter().map(|t| parse_poly(t, Some(source))).collect::<Result<Vec<_>>>()?;
        let degree = comps[0].homogeneous_degree();
        if degree.is_none() || comps.iter().any(|c| c.homogeneous_degree() != degree) {
            return Err(Error::InvalidModel("parametrization components must be homogeneous of one degree".into()));
        }
        for (i, f) in forms.iter().enumerate() {
            if !f.compose(&comps)?.is_zero() {
                return Err(Error::InvalidModel(format!("form {i} does not vanish on the parametrization")));
            }
        }
        Ok(comps)
    }
}

fn parse_fermat_name(name: &str) -> Option<ModelSpec> {
    let rest = name.strip_prefix("fermat-d")?;
    let (d, n) = rest.split_once("-p")?;
    let (d, n): (u32, usize) = (d.parse().ok()?, n.parse().ok()?);
    (d >= 1 && n >= 1).then(|| ModelSpec::fermat(d, n))
}

impl RationalModel {
    pub fn max_degree(&self) -> u32 {
        self.forms.iter().filter_map(|f| f.total_degree()).max().unwrap_or(1)
    }

    pub fn reduce_forms<F: Field>(&self, field: &F) -> Result<Vec<MultiPoly<F>>> {
        self.forms.iter().map(|f| f.reduce(field)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_validates() {
        for name in BUILTIN_NAMES {
            let spec = ModelSpec::builtin(name).unwrap();
            spec.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert_eq!(ModelSpec::builtin("fermat-d5-p4").unwrap().forms.len(), 1);
        assert!(ModelSpec::builtin("no-such-model").is_err());
    }

    #[test]
    fn json_round_trip() {
        let spec = ModelSpec::builtin("veronese-surface").unwrap();
        assert_eq!(ModelSpec::from_json(&spec.to_json()).unwrap(), spec);
        let bare = r#"{"name":"c","ambient":2,"dim":1,"forms":["z0*z2 - z1^2"]}"#;
        assert!(ModelSpec::from_json(bare).unwrap().parametrization.is_none());
    }

    #[test]
    fn rejects_bad_models() {
        let inhom = ModelSpec::new("x", 2, 1, &["z0^2 - z1"], None);
        assert!(matches!(inhom.validate(), Err(Error::InvalidModel(_))));
        let wrong_param = ModelSpec::new("x", 2, 1, &["z0*z2 - z1^2"], Some(&["z0", "z1", "z0"]));
        assert!(matches!(wrong_param.validate(), Err(Error::InvalidModel(_))));
        let out_of_range = ModelSpec::new("x", 2, 1, &["z3"], None);
        assert!(matches!(out_of_range.validate(), Err(Error::Parse { .. })));
    }
}
