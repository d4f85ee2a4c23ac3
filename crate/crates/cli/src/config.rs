//! Run configuration: TOML parsing, length normalization and the echo that
//! goes into output headers.

use std::fmt;
use std::path::PathBuf;

use ebound::materials::Material;
use ebound::numerics::{linspace, logspace, QuadratureSpec};
use ebound::regions::DesignRegion;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::CliError;
use crate::plot::PlotSpec;

/// A length as written in a config: a bare number is in units of λ, strings
/// take a `lam`, `nm` or `m` suffix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Len {
    Lambda(f64),
    Meters(f64),
}

impl Len {
    pub fn parse(s: &str) -> Result<Self, String> {
        let t = s.trim();
        // dividing by the exact 1e9 rounds "1550nm" to the double nearest 1.55e-6
        let (num, per, metric) = if let Some(n) = t.strip_suffix("lam") {
            (n, 1.0, false)
        } else if let Some(n) = t.strip_suffix("nm") {
            (n, 1e9, true)
        } else if let Some(n) = t.strip_suffix('m') {
            (n, 1.0, true)
        } else {
            (t, 1.0, false)
        };
        let v: f64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad length {s:?}: expected a number with suffix lam, nm or m"))?;
        Ok(if metric { Len::Meters(v / per) } else { Len::Lambda(v) })
    }

    fn normalize(&mut self, lambda_m: Option<f64>, what: &str) -> Result<(), CliError> {
        if let Len::Meters(v) = *self {
            let lam = lambda_m.ok_or_else(|| {
                CliError::Config(format!("{what} is given in meters but parameters.wavelength is not set"))
            })?;
            *self = Len::Lambda(v / lam);
        }
        Ok(())
    }

    /// Value in λ. Lengths are normalized at parse time.
    pub fn lam(&self) -> f64 {
        match *self {
            Len::Lambda(v) => v,
            Len::Meters(_) => unreachable!("lengths are normalized when the config is loaded"),
        }
    }

    pub fn meters(&self) -> Option<f64> {
        match *self {
            Len::Meters(v) => Some(v),
            Len::Lambda(_) => None,
        }
    }
}

impl fmt::Display for Len {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Len::Lambda(v) => write!(f, "{v}lam"),
            Len::Meters(v) => write!(f, "{v:e}m"),
        }
    }
}

impl Serialize for Len {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Len::Lambda(v) => s.serialize_f64(v),
            Len::Meters(_) => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Len {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            F(f64),
            I(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::F(v) => Ok(Len::Lambda(v)),
            Raw::I(v) => Ok(Len::Lambda(v as f64)),
            Raw::S(s) => Len::parse(&s).map_err(de::Error::custom),
        }
    }
}

/// Grid axis: an explicit list or `{ from, to, n, log }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Axis<T> {
    Values(Vec<T>),
    Range(Range<T>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range<T> {
    pub from: T,
    pub to: T,
    pub n: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub log: bool,
}

fn expand(from: f64, to: f64, n: usize, log: bool, what: &str) -> Result<Vec<f64>, CliError> {
    if n == 0 {
        return Err(CliError::Config(format!("{what}: n must be at least 1")));
    }
    if !(from.is_finite() && to.is_finite()) {
        return Err(CliError::Config(format!("{what}: range ends must be finite")));
    }
    if log {
        if !(from > 0.0 && to > 0.0) {
            return Err(CliError::Config(format!("{what}: a log range needs positive ends")));
        }
        Ok(logspace(from.log10(), to.log10(), n))
    } else {
        Ok(linspace(from, to, n))
    }
}

impl Axis<f64> {
    pub fn values(&self, what: &str) -> Result<Vec<f64>, CliError> {
        match self {
            Axis::Values(v) if v.is_empty() => Err(CliError::Config(format!("{what}: empty list"))),
            Axis::Values(v) => Ok(v.clone()),
            Axis::Range(r) => expand(r.from, r.to, r.n, r.log, what),
        }
    }
}

impl Axis<Len> {
    fn normalize(&mut self, lambda_m: Option<f64>, what: &str) -> Result<(), CliError> {
        match self {
            Axis::Values(v) => v.iter_mut().try_for_each(|l| l.normalize(lambda_m, what)),
            Axis::Range(r) => {
                r.from.normalize(lambda_m, what)?;
                r.to.normalize(lambda_m, what)
            }
        }
    }

    pub fn values(&self, what: &str) -> Result<Vec<f64>, CliError> {
        match self {
            Axis::Values(v) if v.is_empty() => Err(CliError::Config(format!("{what}: empty list"))),
            Axis::Values(v) => Ok(v.iter().map(Len::lam).collect()),
            Axis::Range(r) => expand(r.from.lam(), r.to.lam(), r.n, r.log, what),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    HalfSpace,
    TwoSidedSlot,
    CylinderExterior,
    Annulus,
}

/// Region shape; `d` may be left out when a sweep supplies it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    pub kind: RegionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Len>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duty: Option<f64>,
    /// Outer radius of an annulus. A d sweep keeps the thickness d2 − d of
    /// the starting shape.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<Len>,
}

impl RegionSpec {
    fn normalize(&mut self, lambda_m: Option<f64>) -> Result<(), CliError> {
        if let Some(d) = &mut self.d {
            d.normalize(lambda_m, "region.d")?;
        }
        if let Some(d2) = &mut self.d2 {
            d2.normalize(lambda_m, "region.d2")?;
        }
        Ok(())
    }

    /// The region at its own `d`.
    pub fn at(&self) -> Result<DesignRegion, CliError> {
        let d = self.d.ok_or_else(|| CliError::Config("region.d is required".into()))?;
        self.build(d.lam())
    }

    /// Starting shape of a d sweep: its own `d` if set, else `first`.
    pub fn base(&self, first: f64) -> Result<DesignRegion, CliError> {
        self.build(self.d.map_or(first, |d| d.lam()))
    }

    fn build(&self, d: f64) -> Result<DesignRegion, CliError> {
        if self.duty.is_some() && self.kind != RegionKind::TwoSidedSlot {
            return Err(CliError::Config("region.duty only applies to two_sided_slot".into()));
        }
        if self.d2.is_some() && self.kind != RegionKind::Annulus {
            return Err(CliError::Config("region.d2 only applies to annulus".into()));
        }
        let r = match self.kind {
            RegionKind::HalfSpace => DesignRegion::HalfSpace { d },
            RegionKind::TwoSidedSlot => DesignRegion::TwoSidedSlot {
                d,
                duty: self.duty.ok_or_else(|| CliError::Config("two_sided_slot needs region.duty".into()))?,
            },
            RegionKind::CylinderExterior => DesignRegion::CylinderExterior { d },
            RegionKind::Annulus => DesignRegion::Annulus {
                d,
                d2: self.d2.ok_or_else(|| CliError::Config("annulus needs region.d2".into()))?.lam(),
            },
        };
        r.validate().map_err(CliError::config)?;
        Ok(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandName {
    GeoMap,
    Bound,
    BoundSweep,
    HollowCoreScan,
    MetalHoleScan,
    ImportedMode,
    Spectrum,
    Neff,
    Lmax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    /// Plot settings for `format = "svg"`; per-command defaults otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plot: Option<PlotSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub relative_tolerance: f64,
    pub absolute_floor: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        let s = QuadratureSpec::default();
        Self {
            relative_tolerance: s.relative_tolerance,
            absolute_floor: s.absolute_floor,
            max_subdivisions: s.max_subdivisions,
        }
    }
}

impl QuadratureConfig {
    pub fn spec(&self) -> Result<QuadratureSpec, CliError> {
        QuadratureSpec::new(self.relative_tolerance, self.absolute_floor, self.max_subdivisions).map_err(CliError::config)
    }
}

fn default_length() -> Len {
    Len::Lambda(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeoMapParams {
    pub region: RegionSpec,
    pub beta: Axis<f64>,
    pub d: Axis<Len>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Len>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength: Option<Len>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundParams {
    pub material: Material,
    pub region: RegionSpec,
    pub beta: f64,
    #[serde(default = "default_length")]
    pub length: Len,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Len>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength: Option<Len>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundSweepParams {
    pub material: Material,
    pub region: RegionSpec,
    pub beta: Axis<f64>,
    pub d: Axis<Len>,
    #[serde(default = "default_length")]
    pub length: Len,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength: Option<Len>,
}

/// Either `reference = true` or explicit `chi`, `d`, `n_d2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HollowCoreParams {
    #[serde(default)]
    pub reference: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Axis<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Axis<Len>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_d2: Option<usize>,
    #[serde(default)]
    pub all_roots: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength: Option<Len>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetalHoleParams {
    #[serde(default)]
    pub reference: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Axis<Len>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_p: Option<Axis<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength: Option<Len>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImportedModeParams {
    /// Mode-profile file, relative to the config file.
    pub profile: PathBuf,
    pub electron_position: [Len; 2],
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<Material>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength: Option<Len>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub omega_m: f64,
    pub gamma_d: f64,
    pub g_m_sq: f64,
    pub u0: f64,
    pub k_m: f64,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeakSpec {
    pub index: usize,
    pub delta_omega: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumParams {
    pub v: f64,
    pub omega: Axis<f64>,
    pub modes: Vec<ModeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub peak: Option<PeakSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NeffParams {
    pub k0: f64,
    pub omega0: f64,
    pub v_g: f64,
    #[serde(default)]
    pub d2w_dk2: f64,
    #[serde(default)]
    pub d3w_dk3: f64,
    pub v: f64,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LmaxParams {
    pub beta: f64,
    pub sigma: Len,
    pub d: Len,
    pub wavelength: Len,
    /// With both set, the bound at L = L_max is reported too.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<Material>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    GeoMap(GeoMapParams),
    Bound(BoundParams),
    BoundSweep(BoundSweepParams),
    HollowCoreScan(HollowCoreParams),
    MetalHoleScan(MetalHoleParams),
    ImportedMode(ImportedModeParams),
    Spectrum(SpectrumParams),
    Neff(NeffParams),
    Lmax(LmaxParams),
}

/// The on-disk shape. `parameters` is interpreted according to `command`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    command: CommandName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parallelism: Option<usize>,
    #[serde(default)]
    parameters: toml::Table,
    #[serde(default)]
    output: OutputSpec,
    #[serde(default)]
    quadrature: QuadratureConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandName,
    /// Worker-count hint; `--workers` and the environment override it.
    pub parallelism: Option<usize>,
    pub params: Params,
    pub output: OutputSpec,
    pub quadrature: QuadratureConfig,
}

fn wavelength_m(w: &Option<Len>) -> Result<Option<f64>, CliError> {
    match w {
        None => Ok(None),
        Some(Len::Meters(v)) if *v > 0.0 && v.is_finite() => Ok(Some(*v)),
        Some(l) => Err(CliError::Config(format!("wavelength must be a positive metric length, got {l}"))),
    }
}

fn typed<T: serde::de::DeserializeOwned>(t: toml::Table) -> Result<T, CliError> {
    toml::Value::Table(t)
        .try_into()
        .map_err(|e| CliError::Config(format!("parameters: {e}")))
}

fn untyped<T: Serialize>(p: &T) -> toml::Table {
    toml::Table::try_from(p).expect("parameter structs serialize to a table")
}

impl Params {
    fn from_table(cmd: CommandName, t: toml::Table) -> Result<Self, CliError> {
        let mut p = match cmd {
            CommandName::GeoMap => Params::GeoMap(typed(t)?),
            CommandName::Bound => Params::Bound(typed(t)?),
            CommandName::BoundSweep => Params::BoundSweep(typed(t)?),
            CommandName::HollowCoreScan => Params::HollowCoreScan(typed(t)?),
            CommandName::MetalHoleScan => Params::MetalHoleScan(typed(t)?),
            CommandName::ImportedMode => Params::ImportedMode(typed(t)?),
            CommandName::Spectrum => Params::Spectrum(typed(t)?),
            CommandName::Neff => Params::Neff(typed(t)?),
            CommandName::Lmax => Params::Lmax(typed(t)?),
        };
        p.normalize()?;
        Ok(p)
    }

    fn to_table(&self) -> toml::Table {
        match self {
            Params::GeoMap(p) => untyped(p),
            Params::Bound(p) => untyped(p),
            Params::BoundSweep(p) => untyped(p),
            Params::HollowCoreScan(p) => untyped(p),
            Params::MetalHoleScan(p) => untyped(p),
            Params::ImportedMode(p) => untyped(p),
            Params::Spectrum(p) => untyped(p),
            Params::Neff(p) => untyped(p),
            Params::Lmax(p) => untyped(p),
        }
    }

    /// Converts every metric length to λ. The wavelength itself stays metric.
    fn normalize(&mut self) -> Result<(), CliError> {
        match self {
            Params::GeoMap(p) => {
                let lam = wavelength_m(&p.wavelength)?;
                p.region.normalize(lam)?;
                p.d.normalize(lam, "d")?;
                if let Some(s) = &mut p.sigma {
                    s.normalize(lam, "sigma")?;
                }
            }
            Params::Bound(p) => {
                let lam = wavelength_m(&p.wavelength)?;
                p.region.normalize(lam)?;
                p.length.normalize(lam, "length")?;
                if let Some(s) = &mut p.sigma {
                    s.normalize(lam, "sigma")?;
                }
            }
            Params::BoundSweep(p) => {
                let lam = wavelength_m(&p.wavelength)?;
                p.region.normalize(lam)?;
                p.d.normalize(lam, "d")?;
                p.length.normalize(lam, "length")?;
            }
            Params::HollowCoreScan(p) => {
                let lam = wavelength_m(&p.wavelength)?;
                if let Some(d) = &mut p.d {
                    d.normalize(lam, "d")?;
                }
            }
            Params::MetalHoleScan(p) => {
                let lam = wavelength_m(&p.wavelength)?;
                if let Some(d) = &mut p.d {
                    d.normalize(lam, "d")?;
                }
            }
            Params::ImportedMode(p) => {
                let lam = wavelength_m(&p.wavelength)?;
                for x in &mut p.electron_position {
                    x.normalize(lam, "electron_position")?;
                }
                if let Some(r) = &mut p.region {
                    r.normalize(lam)?;
                }
            }
            Params::Lmax(p) => {
                let lam = wavelength_m(&Some(p.wavelength))?;
                p.sigma.normalize(lam, "sigma")?;
                p.d.normalize(lam, "d")?;
                if let Some(r) = &mut p.region {
                    r.normalize(lam)?;
                }
            }
            Params::Spectrum(_) | Params::Neff(_) => {}
        }
        Ok(())
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))?;
        Ok(Self {
            command: raw.command,
            parallelism: raw.parallelism,
            params: Params::from_table(raw.command, raw.parameters)?,
            output: raw.output,
            quadrature: raw.quadrature,
        })
    }

    fn raw(&self) -> RawConfig {
        RawConfig {
            command: self.command,
            parallelism: self.parallelism,
            parameters: self.params.to_table(),
            output: self.output.clone(),
            quadrature: self.quadrature,
        }
    }

    /// The effective configuration as TOML; parses back to `self`.
    pub fn to_toml(&self) -> String {
        toml::to_string(&self.raw()).expect("config serializes")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.raw()).expect("config serializes")
    }
}
