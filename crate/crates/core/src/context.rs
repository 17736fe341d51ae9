//! Per-configuration state: alphabets, the formal group law and every
//! cache that the higher layers share. Built lazily, read-only afterwards.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{Alphabet, GradedPoly, LaurentSeries};
use crate::chow::Variety;
use crate::config::Config;
use crate::error::Result;
use crate::fgl::Fgl;
use crate::lazard::Lazard;
use crate::symbols::{MSymbols, XSymbols};

pub struct Context {
    config: Config,
    sy: MSymbols,
    xs: XSymbols,
    lazard: Lazard,
    fgl: OnceLock<Result<Fgl>>,
    pub(crate) proj_classes: Mutex<HashMap<u32, GradedPoly>>,
    pub(crate) gamma_monomials: Mutex<HashMap<(i32, Vec<u32>), LaurentSeries<GradedPoly>>>,
    pub(crate) delta_lattices: Mutex<HashMap<u32, Arc<crate::mring::DeltaLattice>>>,
    pub(crate) x_cache: Mutex<HashMap<u32, Arc<crate::equivariant::XGenerator>>>,
    pub(crate) fixture_data: Mutex<HashMap<String, Arc<crate::equivariant::FixtureData>>>,
    /// `(y_d, a_d)` rewritten in the x-generators, index `d-1`.
    pub(crate) x_levels: Mutex<Vec<(GradedPoly, GradedPoly)>>,
    /// `v`, `y1..yK`, `a1..aK`: ℳ-classes in generator coordinates.
    pub(crate) ya: Arc<Alphabet>,
}

impl Context {
    pub fn new(config: Config) -> Result<Self> {
        config.validate()?;
        let cap = config.lattice_cap();
        let sy = MSymbols::new(cap);
        Ok(Context {
            xs: XSymbols::new(2 * cap + 1),
            lazard: Lazard::new(sy.clone()),
            sy,
            config,
            fgl: OnceLock::new(),
            proj_classes: Mutex::new(HashMap::new()),
            gamma_monomials: Mutex::new(HashMap::new()),
            delta_lattices: Mutex::new(HashMap::new()),
            x_cache: Mutex::new(HashMap::new()),
            fixture_data: Mutex::new(HashMap::new()),
            x_levels: Mutex::new(Vec::new()),
            ya: ya_alphabet(cap)?,
        })
    }

    pub fn with_degree(d: usize) -> Result<Self> {
        Self::new(Config::with_degree(d))
    }

    pub fn from_env() -> Result<Self> {
        Self::new(Config::from_env()?)
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn degree(&self) -> usize {
        self.config.degree
    }

    pub fn symbols(&self) -> &MSymbols {
        &self.sy
    }

    pub fn xsymbols(&self) -> &XSymbols {
        &self.xs
    }

    pub fn lazard(&self) -> &Lazard {
        &self.lazard
    }

    pub fn fgl(&self) -> Result<&Fgl> {
        self.fgl
            .get_or_init(|| Fgl::new(&self.sy, self.config.series_order))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Largest coefficient weight carried by the series layer.
    pub fn series_weight(&self) -> usize {
        self.config.series_weight()
    }

    /// `⟦ℙ^n⟧`.
    pub fn projective_class(&self, n: u32) -> Result<GradedPoly> {
        if let Some(p) = self.proj_classes.lock().expect("lock").get(&n) {
            return Ok(p.clone());
        }
        let p = self.lazard.class_of(&Variety::projective_space(n))?;
        self.proj_classes.lock().expect("lock").insert(n, p.clone());
        Ok(p)
    }
}

fn ya_alphabet(cap: usize) -> Result<Arc<Alphabet>> {
    let mut syms = vec![("v".to_string(), -1, true)];
    for k in 1..=cap {
        syms.push((format!("y{k}"), -(k as i32), false));
    }
    for k in 1..=cap {
        syms.push((format!("a{k}"), -(k as i32), false));
    }
    Alphabet::from_triples(syms)
}
