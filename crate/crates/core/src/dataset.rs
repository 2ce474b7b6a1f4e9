use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::vector::NumericVector;

/// A named qualitative character. Codes are compared by exact equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterColumn {
    name: String,
    codes: Vec<String>,
    levels: Partition,
}

impl CharacterColumn {
    pub fn new<S: Into<String>>(name: impl Into<String>, codes: Vec<S>) -> Result<Self> {
        let name = name.into();
        let codes: Vec<String> = codes.into_iter().map(Into::into).collect();
        if codes.is_empty() {
            return Err(Error::EmptyCharacter(name));
        }
        let levels = Partition::from_codes(&codes)?;
        Ok(Self { name, codes, levels })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn codes(&self) -> &[String] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// The partition into equal-code classes.
    pub fn levels(&self) -> &Partition {
        &self.levels
    }

    fn select(&self, rows: &[usize]) -> Result<Self> {
        Self::new(
            self.name.clone(),
            rows.iter().map(|&i| self.codes[i].clone()).collect(),
        )
    }
}

pub fn partition_from_column(col: &CharacterColumn) -> Partition {
    col.levels.clone()
}

/// Refines `p` by the classes of `col`.
pub fn refine(p: &Partition, col: &CharacterColumn) -> Result<Partition> {
    p.product(&col.levels)
}

/// A numeric target plus an ordered list of characters over the same population.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    target: NumericVector,
    characters: Vec<CharacterColumn>,
}

impl Dataset {
    pub fn new(target: NumericVector, characters: Vec<CharacterColumn>) -> Result<Self> {
        let mut names = HashSet::new();
        for col in &characters {
            if col.len() != target.len() {
                return Err(Error::LengthMismatch {
                    expected: target.len(),
                    found: col.len(),
                });
            }
            if !names.insert(col.name()) {
                return Err(Error::DuplicateCharacter(col.name().to_owned()));
            }
        }
        Ok(Self { target, characters })
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn target(&self) -> &NumericVector {
        &self.target
    }

    pub fn characters(&self) -> &[CharacterColumn] {
        &self.characters
    }

    pub fn names(&self) -> Vec<&str> {
        self.characters.iter().map(|c| c.name()).collect()
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.characters
            .iter()
            .position(|c| c.name() == name)
            .ok_or_else(|| Error::UnknownCharacter(name.to_owned()))
    }

    pub fn character(&self, name: &str) -> Result<&CharacterColumn> {
        Ok(&self.characters[self.position(name)?])
    }

    /// Resolves a list of names to column positions, rejecting unknown or repeated names.
    pub fn positions<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        let mut seen = HashSet::new();
        names
            .iter()
            .map(|name| {
                let name = name.as_ref();
                let pos = self.position(name)?;
                if !seen.insert(pos) {
                    return Err(Error::DuplicateCharacter(name.to_owned()));
                }
                Ok(pos)
            })
            .collect()
    }

    /// Same rows, keeping only the characters at `positions` in that order.
    pub fn with_characters(&self, positions: &[usize]) -> Result<Self> {
        Self::new(
            self.target.clone(),
            positions.iter().map(|&i| self.characters[i].clone()).collect(),
        )
    }

    /// Same characters, keeping only the given rows in that order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let target = NumericVector::new(rows.iter().map(|&i| self.target.values()[i]).collect())?;
        let characters = self
            .characters
            .iter()
            .map(|c| c.select(rows))
            .collect::<Result<_>>()?;
        Self::new(target, characters)
    }

    /// Product partition of the characters at `positions`.
    pub fn joint_partition(&self, positions: &[usize]) -> Result<Partition> {
        positions
            .iter()
            .try_fold(Partition::trivial(self.len())?, |p, &i| {
                refine(&p, &self.characters[i])
            })
    }
}
