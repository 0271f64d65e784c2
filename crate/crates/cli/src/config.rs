use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use dtm_core::{BoundarySpec, CatalogModel, GridSpec};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Pretty,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelChoice {
    Catalog(CatalogModel),
    Custom(BoundarySpec),
}

impl ModelChoice {
    pub fn id(&self) -> &str {
        match self {
            ModelChoice::Catalog(m) => m.id(),
            ModelChoice::Custom(_) => "custom",
        }
    }

    pub fn default_order(&self) -> usize {
        match self {
            ModelChoice::Catalog(m) => m.default_order(),
            ModelChoice::Custom(_) => 36,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub model: ModelChoice,
    pub order: usize,
    pub format: OutputFormat,
    pub grid: (usize, usize),
    pub emit_spectrum: bool,
    pub convergence_orders: Option<Vec<usize>>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn grid_spec(&self) -> GridSpec {
        GridSpec::rect(self.grid.0, self.grid.1).expect("validated grid")
    }
}

/// Settings as they appear in a config file; every field is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub model: Option<String>,
    pub order: Option<usize>,
    pub custom_bc: Option<BoundarySpec>,
    pub format: Option<OutputFormat>,
    pub grid: Option<String>,
    pub emit_spectrum: Option<bool>,
    pub convergence_orders: Option<Vec<usize>>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_owned(),
            source: e,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Command-line overrides; `None` leaves the file value (or default) alone.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub example: Option<String>,
    pub order: Option<usize>,
    pub format: Option<OutputFormat>,
    pub grid: Option<String>,
    pub emit_spectrum: bool,
    pub convergence_orders: Option<Vec<usize>>,
    pub out: Option<PathBuf>,
}

fn field(name: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{name}: {msg}"))
}

/// `"21x21"` or `"21"`.
pub fn parse_grid(s: &str) -> Result<(usize, usize), CliError> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .ok()
            .filter(|&k| k >= 1)
            .ok_or_else(|| field("grid", format!("expected KxK with K >= 1, got {s:?}")))
    };
    match s.split_once(['x', 'X']) {
        Some((a, b)) => Ok((parse(a)?, parse(b)?)),
        None => {
            let k = parse(s)?;
            Ok((k, k))
        }
    }
}

fn parse_model(s: &str, name: &str) -> Result<Option<CatalogModel>, CliError> {
    if s.trim().eq_ignore_ascii_case("custom") {
        return Ok(None);
    }
    s.parse::<CatalogModel>().map(Some).map_err(|e| field(name, e))
}

pub fn build(file: FileConfig, flags: Overrides) -> Result<RunConfig, CliError> {
    let (catalog, source) = match (&flags.example, &file.model) {
        (Some(k), _) => (parse_model(k, "example")?, "example"),
        (None, Some(m)) => (parse_model(m, "model")?, "model"),
        (None, None) if file.custom_bc.is_some() => (None, "model"),
        (None, None) => return Err(field("model", "give --example <1..4> or a config file naming a model")),
    };
    let model = match (catalog, file.custom_bc) {
        (Some(m), None) => ModelChoice::Catalog(m),
        (Some(m), Some(_)) => {
            return Err(field(
                "custom_bc",
                format!("only allowed with model custom, not {m} (from {source})"),
            ));
        }
        (None, Some(bc)) => ModelChoice::Custom(bc),
        (None, None) => return Err(field("custom_bc", "required when model is custom")),
    };

    let order = flags.order.or(file.order).unwrap_or_else(|| model.default_order());
    let grid = match flags.grid.or(file.grid) {
        Some(g) => parse_grid(&g)?,
        None => (21, 21),
    };
    let convergence_orders = flags.convergence_orders.or(file.convergence_orders);
    if let Some(orders) = &convergence_orders {
        if orders.is_empty() {
            return Err(field("convergence_orders", "must list at least one order"));
        }
        if orders.windows(2).any(|w| w[0] >= w[1]) {
            return Err(field(
                "convergence_orders",
                format!("must be strictly increasing, got {orders:?}"),
            ));
        }
    }

    Ok(RunConfig {
        model,
        order,
        format: flags.format.or(file.format).unwrap_or_default(),
        grid,
        emit_spectrum: flags.emit_spectrum || file.emit_spectrum.unwrap_or(false),
        convergence_orders,
        out: flags.out.or(file.out),
    })
}
