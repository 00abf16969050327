//! Run configuration: TOML file merged with command-line overrides.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct RunConfig {
    #[serde(default)]
    pub model: ModelSection,
    #[serde(default)]
    pub numerics: NumericsSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSection {
    #[serde(default = "defaults::g")]
    pub g: f64,
    #[serde(default = "defaults::delta")]
    pub delta: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self { g: 0.7, delta: 0.4 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NumericsSection {
    /// series / comparison tolerance
    #[serde(default = "defaults::tol")]
    pub tol: f64,
    /// quadrature profile: "accurate", "fast" or "zeta"
    #[serde(default = "defaults::quadrature")]
    pub quadrature: String,
    /// tensor Gauss–Legendre orders per simplex dimension (overrides the
    /// profile when non-empty)
    #[serde(default)]
    pub gl_orders: Vec<usize>,
    /// deterministic lattice budget for higher dimensions (0 = profile)
    #[serde(default)]
    pub lattice_points: usize,
    /// Hankel contour circle radius (< π)
    #[serde(default = "defaults::contour_radius")]
    pub contour_radius: f64,
    /// hard cutoff for the contour rays
    #[serde(default = "defaults::contour_max_w")]
    pub contour_max_w: f64,
    /// contour node counts: circle panels × order
    #[serde(default = "defaults::contour_circle_panels")]
    pub contour_circle_panels: usize,
    #[serde(default = "defaults::contour_circle_order")]
    pub contour_circle_order: usize,
    /// truncated-Fock oracle dimension
    #[serde(default = "defaults::oracle_m")]
    pub oracle_m: usize,
}

impl Default for NumericsSection {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            quadrature: "accurate".into(),
            gl_orders: Vec::new(),
            lattice_points: 0,
            contour_radius: 1.0,
            contour_max_w: 200.0,
            contour_circle_panels: 8,
            contour_circle_order: 12,
            oracle_m: 400,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputSection {
    /// "csv" or "json"
    #[serde(default = "defaults::format")]
    pub format: String,
    /// output path; stdout when empty
    #[serde(default)]
    pub path: String,
    /// significant digits for numeric cells
    #[serde(default = "defaults::precision")]
    pub precision: usize,
}

mod defaults {
    pub fn g() -> f64 {
        0.7
    }
    pub fn delta() -> f64 {
        0.4
    }
    pub fn tol() -> f64 {
        1e-10
    }
    pub fn quadrature() -> String {
        "accurate".into()
    }
    pub fn contour_radius() -> f64 {
        1.0
    }
    pub fn contour_max_w() -> f64 {
        200.0
    }
    pub fn contour_circle_panels() -> usize {
        8
    }
    pub fn contour_circle_order() -> usize {
        12
    }
    pub fn oracle_m() -> usize {
        400
    }
    pub fn format() -> String {
        "json".into()
    }
    pub fn precision() -> usize {
        17
    }
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { format: "json".into(), path: String::new(), precision: 17 }
    }
}

impl RunConfig {
    pub fn load(path: Option<&str>) -> Result<Self, String> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| format!("cannot read config {p}: {e}"))?;
                toml::from_str(&text).map_err(|e| format!("bad config {p}: {e}"))
            }
        }
    }

    pub fn scheme(&self) -> Result<qrm::numerics::QuadratureScheme, String> {
        let mut scheme = match self.numerics.quadrature.as_str() {
            "accurate" => qrm::numerics::QuadratureScheme::accurate(),
            "fast" => qrm::numerics::QuadratureScheme::fast(),
            "zeta" => qrm::numerics::QuadratureScheme::zeta(),
            other => return Err(format!("unknown quadrature profile '{other}'")),
        };
        if !self.numerics.gl_orders.is_empty() {
            scheme.gl_orders = self.numerics.gl_orders.clone();
        }
        if self.numerics.lattice_points > 0 {
            scheme.lattice_points = self.numerics.lattice_points;
        }
        Ok(scheme)
    }

    pub fn contour(&self) -> qrm::partition_zeta::HankelContour {
        let mut c = qrm::partition_zeta::HankelContour::default();
        c.radius = self.numerics.contour_radius;
        c.max_w = self.numerics.contour_max_w;
        c.circle_panels = self.numerics.contour_circle_panels;
        c.circle_order = self.numerics.contour_circle_order;
        c
    }

    pub fn params(&self) -> Result<qrm::ModelParams, qrm::QrmError> {
        qrm::ModelParams::new(self.model.g, self.model.delta)
    }
}
