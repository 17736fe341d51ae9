use crate::error::{Error, Result};

pub const DEGREE_ENV: &str = "COBINV_DEGREE";

/// Degree window shared by every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest 𝕃-weight tracked in series and in ℳ (`D`).
    pub degree: usize,
    /// Series order `T`: coefficients through `x^{T-1}`.
    pub series_order: usize,
    /// Largest `n` for the shipped 𝒳ₙ.
    pub catalog_max: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config::with_degree(8)
    }
}

impl Config {
    pub fn with_degree(d: usize) -> Self {
        Config {
            degree: d,
            series_order: d + 2,
            catalog_max: d,
        }
    }

    /// Default config, with `D` taken from `COBINV_DEGREE` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(DEGREE_ENV) {
            Ok(s) => {
                let d: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{DEGREE_ENV}={s} is not a degree")))?;
                let c = Config::with_degree(d);
                c.validate()?;
                Ok(c)
            }
            Err(_) => Ok(Config::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::Invalid("degree bound must be positive".into()));
        }
        if self.series_order < self.degree + 1 {
            return Err(Error::Invalid("series order must be at least D+1".into()));
        }
        if self.catalog_max > self.degree {
            return Err(Error::Invalid("catalog_max must not exceed D".into()));
        }
        Ok(())
    }

    /// Largest 𝕃-weight the series caches reach.
    pub fn series_weight(&self) -> usize {
        self.series_order - 2
    }

    /// Largest weight of ambient classes (lattice bases are built lazily up to here).
    pub fn lattice_cap(&self) -> usize {
        3 * self.degree + 3
    }
}
