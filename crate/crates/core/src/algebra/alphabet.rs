use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub degree: i32,
    pub laurent: bool,
}

/// Ordered list of symbols. Polynomials refer to symbols by position.
#[derive(Debug)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: HashMap<String, usize>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new(symbols: Vec<Symbol>) -> Result<Arc<Self>> {
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.name.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate symbol {}", s.name)));
            }
        }
        if symbols.len() > u16::MAX as usize {
            return Err(Error::Parse("alphabet too large".into()));
        }
        Ok(Arc::new(Alphabet { symbols, index }))
    }

    pub fn from_triples<I, S>(items: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (S, i32, bool)>,
        S: Into<String>,
    {
        Self::new(
            items
                .into_iter()
                .map(|(n, d, l)| Symbol {
                    name: n.into(),
                    degree: d,
                    laurent: l,
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, i: usize) -> &Symbol {
        &self.symbols[i]
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn expect(&self, name: &str) -> usize {
        match self.get(name) {
            Some(i) => i,
            None => panic!("symbol {name} not in alphabet"),
        }
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.symbols[i].degree
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.symbols[i].laurent
    }
}

pub(crate) fn same(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
