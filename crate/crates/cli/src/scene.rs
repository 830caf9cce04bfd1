//! The scene schema: one JSON document describing the geometry a command
//! operates on. Unknown fields are rejected so schema drift surfaces as exit
//! code 2 instead of silent misreads.

use std::collections::BTreeMap;

use multiplank::geom::{Fan, Halfspace, Point, PolytopeBody, Tolerance};
use multiplank::multiplank::MultiPlank;
use multiplank::normed::Gauge;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub dim: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generating_sets: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub translations: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bodies: BTreeMap<String, BodyDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fans: Vec<FanDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<GaugeDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<ToleranceDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sharpness: Option<SharpnessDto>,
}

fn default_seed() -> u64 {
    42
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<Vec<HalfspaceDto>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfspaceDto {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDto {
    pub apex: Vec<f64>,
    pub m: usize,
    #[serde(default)]
    pub rotation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeDto {
    pub polygon: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_geom: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_opt: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharpnessDto {
    pub n_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
}

fn to_point(coords: &[f64], dim: usize, what: &str) -> Result<Point, CliError> {
    if coords.len() != dim {
        return Err(CliError::input(format!(
            "{what}: expected {dim} coordinates, got {}",
            coords.len()
        )));
    }
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(CliError::input(format!("{what}: non-finite coordinate")));
    }
    Ok(Point::from_slice(coords))
}

impl Scene {
    pub fn from_json(bytes: &[u8]) -> Result<Self, CliError> {
        let scene: Scene = serde_json::from_slice(bytes)
            .map_err(|e| CliError::input(format!("scene does not match the schema: {e}")))?;
        if !(2..=3).contains(&scene.dim) {
            return Err(CliError::input(format!("dim must be 2 or 3, got {}", scene.dim)));
        }
        Ok(scene)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    /// Generating sets as point lists.
    pub fn point_sets(&self) -> Result<Vec<Vec<Point>>, CliError> {
        self.generating_sets
            .iter()
            .enumerate()
            .map(|(i, set)| {
                set.iter()
                    .map(|c| to_point(c, self.dim, &format!("generating_sets[{i}]")))
                    .collect()
            })
            .collect()
    }

    /// Translation for set `i`, defaulting to the origin.
    pub fn translation(&self, i: usize) -> Result<Point, CliError> {
        match self.translations.get(i) {
            Some(t) => to_point(t, self.dim, &format!("translations[{i}]")),
            None => Ok(Point::zero(self.dim)),
        }
    }

    /// Multi-planks: each generating set centered, then translated.
    pub fn planks(&self, closed: bool, tol: &Tolerance) -> Result<Vec<MultiPlank>, CliError> {
        let sets = self.point_sets()?;
        sets.into_iter()
            .enumerate()
            .map(|(i, pts)| {
                let plank = MultiPlank::from_points(&pts, closed, tol)
                    .map_err(|e| CliError::input(format!("generating_sets[{i}]: {e}")))?;
                plank
                    .translated(self.translation(i)?)
                    .map_err(|e| CliError::input(format!("translations[{i}]: {e}")))
            })
            .collect()
    }

    pub fn body(&self, name: &str, tol: &Tolerance) -> Result<Option<PolytopeBody>, CliError> {
        let Some(dto) = self.bodies.get(name) else { return Ok(None) };
        Ok(Some(dto.build(self.dim, tol, name)?))
    }

    pub fn required_body(&self, name: &str, tol: &Tolerance) -> Result<PolytopeBody, CliError> {
        self.body(name, tol)?
            .ok_or_else(|| CliError::input(format!("scene is missing the body \"{name}\"")))
    }

    pub fn fan_list(&self) -> Result<Vec<Fan>, CliError> {
        self.fans
            .iter()
            .enumerate()
            .map(|(i, dto)| {
                let apex = to_point(&dto.apex, 2, &format!("fans[{i}].apex"))?;
                Fan::new(apex, dto.m, dto.rotation)
                    .ok_or_else(|| CliError::input(format!("fans[{i}] is invalid (m >= 2?)")))
            })
            .collect()
    }

    pub fn gauge_polygon(&self, tol: &Tolerance) -> Result<Option<Gauge>, CliError> {
        let Some(dto) = &self.gauge else { return Ok(None) };
        let verts: Vec<Point> = dto
            .polygon
            .iter()
            .map(|c| to_point(c, 2, "gauge.polygon"))
            .collect::<Result<_, _>>()?;
        Gauge::new(verts, tol).map(Some).map_err(|e| CliError::input(format!("gauge: {e}")))
    }

    pub fn tolerance(&self, eps_geom: Option<f64>, eps_opt: Option<f64>) -> Result<Tolerance, CliError> {
        let base = Tolerance::default();
        let g = eps_geom
            .or(self.tolerance.as_ref().and_then(|t| t.eps_geom))
            .unwrap_or(base.eps_geom);
        let o = eps_opt
            .or(self.tolerance.as_ref().and_then(|t| t.eps_opt))
            .unwrap_or(base.eps_opt);
        Tolerance::new(g, o)
            .ok_or_else(|| CliError::input("tolerances must satisfy 0 < eps_geom < eps_opt < 1"))
    }
}

impl BodyDto {
    fn build(&self, dim: usize, tol: &Tolerance, name: &str) -> Result<PolytopeBody, CliError> {
        match (&self.polygon, &self.halfspaces) {
            (Some(poly), None) => {
                if dim != 2 {
                    return Err(CliError::input(format!(
                        "body \"{name}\": polygon bodies are 2D"
                    )));
                }
                let verts: Vec<Point> = poly
                    .iter()
                    .map(|c| to_point(c, 2, &format!("body \"{name}\" polygon")))
                    .collect::<Result<_, _>>()?;
                PolytopeBody::polygon(verts, tol)
                    .map_err(|e| CliError::input(format!("body \"{name}\": {e}")))
            }
            (None, Some(hs)) => {
                let halfspaces: Vec<Halfspace> = hs
                    .iter()
                    .map(|h| {
                        Ok(Halfspace::new(
                            to_point(&h.normal, dim, &format!("body \"{name}\" halfspace"))?,
                            h.offset,
                        ))
                    })
                    .collect::<Result<_, CliError>>()?;
                PolytopeBody::from_halfspaces(dim, halfspaces)
                    .map_err(|e| CliError::input(format!("body \"{name}\": {e}")))
            }
            _ => Err(CliError::input(format!(
                "body \"{name}\" needs exactly one of polygon, halfspaces"
            ))),
        }
    }
}
