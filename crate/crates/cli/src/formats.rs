//! Input files: lattices given by Gram matrices and sets of vectors, with
//! every rational written as a string `"p/q"`.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use parzono_core::exact_core::{format_rational, parse_rational, QMatrix, QVector};
use parzono_core::lattice_core::Lattice;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub name: String,
    pub dim: usize,
    pub gram: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Primal,
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorSetFile {
    pub basis: Basis,
    pub vectors: Vec<Vec<String>>,
}

pub fn rational_strings(v: &[parzono_core::exact_core::Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_row(row: &[String], field: &str) -> Result<QVector> {
    row.iter()
        .enumerate()
        .map(|(j, s)| parse_rational(s).map_err(|_| anyhow!("{field}[{j}]: invalid rational {s:?}")))
        .collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
}

impl LatticeFile {
    pub fn from_lattice(name: &str, lat: &Lattice) -> LatticeFile {
        LatticeFile {
            name: name.to_string(),
            dim: lat.dim(),
            gram: lat.gram().to_rows().iter().map(|r| rational_strings(r)).collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        if self.gram.len() != self.dim {
            bail!("gram: expected {} rows, found {}", self.dim, self.gram.len());
        }
        let mut rows = Vec::with_capacity(self.dim);
        for (i, r) in self.gram.iter().enumerate() {
            if r.len() != self.dim {
                bail!("gram[{i}]: expected {} entries, found {}", self.dim, r.len());
            }
            rows.push(parse_row(r, &format!("gram[{i}]"))?);
        }
        let g = QMatrix::from_rows(rows);
        Lattice::new(g, Some(self.name.clone())).map_err(|e| anyhow!("gram: {e}"))
    }
}

impl VectorSetFile {
    pub fn rows(&self) -> Result<Vec<QVector>> {
        let rows: Vec<QVector> =
            self.vectors.iter().enumerate().map(|(i, r)| parse_row(r, &format!("vectors[{i}]"))).collect::<Result<_>>()?;
        if let Some(first) = rows.first() {
            if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != first.len()) {
                bail!("vectors[{i}]: expected {} entries, found {}", first.len(), r.len());
            }
        }
        Ok(rows)
    }

    /// Vectors in dual coordinates of `lat`.
    pub fn dual_rows(&self, lat: &Lattice) -> Result<Vec<QVector>> {
        let rows = self.rows()?;
        if let Some((i, _)) = rows.iter().enumerate().find(|(_, r)| r.len() != lat.dim()) {
            bail!("vectors[{i}]: dimension differs from the lattice dimension {}", lat.dim());
        }
        Ok(match self.basis {
            Basis::Dual => rows,
            Basis::Primal => rows.iter().map(|r| lat.gram().mul_vec(r)).collect(),
        })
    }
}

/// A lattice from a JSON file, or a built-in lattice when `arg` names one
/// and no such file exists.
pub fn load_lattice(arg: &str) -> Result<(String, Lattice)> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Ok(lat) = Lattice::builtin(arg) {
            return Ok((arg.to_string(), lat));
        }
    }
    let f: LatticeFile = read_json(path)?;
    let lat = f.to_lattice().with_context(|| format!("{}", path.display()))?;
    Ok((f.name, lat))
}

pub fn load_vectors(path: &Path) -> Result<VectorSetFile> {
    let f: VectorSetFile = read_json(path)?;
    f.rows().with_context(|| format!("{}", path.display()))?;
    Ok(f)
}

pub fn load_subsets(path: &Path) -> Result<Vec<Vec<usize>>> {
    read_json(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_round_trip() {
        for name in ["E6", "E6*", "A3", "D4", "Z2"] {
            let lat = Lattice::builtin(name).unwrap();
            let f = LatticeFile::from_lattice(name, &lat);
            let text = serde_json::to_string(&f).unwrap();
            let back: LatticeFile = serde_json::from_str(&text).unwrap();
            assert_eq!(back, f);
            assert_eq!(back.to_lattice().unwrap().gram(), lat.gram());
        }
    }

    #[test]
    fn rationals_in_lowest_terms() {
        let f = LatticeFile { name: "x".into(), dim: 1, gram: vec![vec!["4/6".into()]] };
        let lat = f.to_lattice().unwrap();
        assert_eq!(LatticeFile::from_lattice("x", &lat).gram, vec![vec!["2/3".to_string()]]);
    }

    #[test]
    fn errors_name_the_field() {
        let f = LatticeFile { name: "x".into(), dim: 2, gram: vec![vec!["1".into(), "0".into()], vec!["0".into(), "a".into()]] };
        let e = f.to_lattice().unwrap_err().to_string();
        assert!(e.contains("gram[1][1]"), "{e}");
        let f = LatticeFile { name: "x".into(), dim: 2, gram: vec![vec!["1".into(), "2".into()], vec!["2".into(), "1".into()]] };
        assert!(f.to_lattice().is_err());
        let v = VectorSetFile { basis: Basis::Dual, vectors: vec![vec!["1".into()], vec!["1".into(), "2".into()]] };
        assert!(v.rows().unwrap_err().to_string().contains("vectors[1]"));
    }
}
