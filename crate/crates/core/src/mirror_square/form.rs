use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::MirrorError;

/// On-disk form: 1-based sparse entries `[i, j, k, t]`; the symmetric
/// closure is applied on load.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FormFile {
    pub dim: usize,
    #[serde(default)]
    pub basis: Vec<String>,
    pub entries: Vec<[i64; 4]>,
    #[serde(default, rename = "Dbar", skip_serializing_if = "Option::is_none")]
    pub dbar: Option<Vec<i64>>,
    #[serde(default, rename = "Dbar_cube", skip_serializing_if = "Option::is_none")]
    pub dbar_cube: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// A symmetric trilinear form on a free module of rank `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    labels: Vec<String>,
    /// keyed by ascending index triples
    values: BTreeMap<[usize; 3], i64>,
    dbar: Option<Vec<i64>>,
    provenance: Option<String>,
}

fn key(i: usize, j: usize, k: usize) -> [usize; 3] {
    let mut t = [i, j, k];
    t.sort_unstable();
    t
}

impl IntersectionForm {
    /// Builds a form from 0-based entries, rejecting conflicting permutations.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, i64)>) -> Result<Self, MirrorError> {
        let mut values = BTreeMap::new();
        for (i, j, k, t) in entries {
            for index in [i, j, k] {
                if index >= dim {
                    return Err(MirrorError::IndexOutOfRange { index, dim });
                }
            }
            match values.insert(key(i, j, k), t) {
                Some(old) if old != t => return Err(MirrorError::Asymmetric(i + 1, j + 1, k + 1)),
                _ => {}
            }
        }
        values.retain(|_, t| *t != 0);
        let labels = (1..=dim).map(|i| format!("D{i}")).collect();
        Ok(Self { labels, values, dbar: None, provenance: None })
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_entries(dim, []).expect("empty form")
    }

    /// The rank-one form `t(1,1,1) = cube` with its generator distinguished.
    pub fn rank_one(cube: i64) -> Self {
        let mut f = Self::from_entries(1, [(0, 0, 0, cube)]).expect("rank-one form");
        f.labels = vec!["H".into()];
        f.dbar = Some(vec![1]);
        f
    }

    pub fn from_file(file: FormFile) -> Result<Self, MirrorError> {
        let dim = file.dim;
        let mut entries = Vec::with_capacity(file.entries.len());
        for [i, j, k, t] in file.entries {
            let idx = |x: i64| -> Result<usize, MirrorError> {
                if x < 1 || x as usize > dim {
                    return Err(MirrorError::IndexOutOfRange { index: x.max(0) as usize, dim });
                }
                Ok(x as usize - 1)
            };
            entries.push((idx(i)?, idx(j)?, idx(k)?, t));
        }
        let mut f = Self::from_entries(dim, entries)?;
        if !file.basis.is_empty() {
            if file.basis.len() != dim {
                return Err(MirrorError::DimensionMismatch(format!("{} basis labels for dimension {dim}", file.basis.len())));
            }
            f.labels = file.basis;
        }
        if let Some(d) = file.dbar {
            if d.len() != dim {
                return Err(MirrorError::DimensionMismatch(format!("D̄ has {} coordinates for dimension {dim}", d.len())));
            }
            f.dbar = Some(d);
        }
        if let (Some(declared), Some(computed)) = (file.dbar_cube, f.distinguished_cube()) {
            if declared != computed {
                return Err(MirrorError::CubeMismatch { declared, computed });
            }
        }
        f.provenance = file.provenance;
        Ok(f)
    }

    pub fn from_json(text: &str) -> Result<Self, MirrorError> {
        let file: FormFile = serde_json::from_str(text).map_err(|e| MirrorError::File(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn to_file(&self) -> FormFile {
        FormFile {
            dim: self.dim(),
            basis: self.labels.clone(),
            entries: self.values.iter().map(|(k, &t)| [k[0] as i64 + 1, k[1] as i64 + 1, k[2] as i64 + 1, t]).collect(),
            dbar: self.dbar.clone(),
            dbar_cube: self.distinguished_cube(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    /// `t(i, j, k)` with 0-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.values.get(&key(i, j, k)).copied().unwrap_or(0)
    }

    /// `t(u, v, w)` for integer coordinate vectors.
    pub fn contract(&self, u: &[i64], v: &[i64], w: &[i64]) -> i64 {
        let mut total = 0;
        for (k, &t) in &self.values {
            let [a, b, c] = *k;
            // sum over the distinct permutations of the stored triple
            let mut perms = vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
            perms.sort_unstable();
            perms.dedup();
            for [i, j, l] in perms {
                total += t * u[i] * v[j] * w[l];
            }
        }
        total
    }

    pub fn distinguished(&self) -> Option<&[i64]> {
        self.dbar.as_deref()
    }

    /// `D̄³`, when a distinguished class is present.
    pub fn distinguished_cube(&self) -> Option<i64> {
        self.dbar.as_ref().map(|d| self.contract(d, d, d))
    }

    /// The form in a new basis: `t'(i,j,k) = t(P e_i, P e_j, P e_k)` where the
    /// columns of `p` are the new basis vectors.
    pub fn change_basis(&self, p: &[Vec<i64>]) -> Self {
        let r = self.dim();
        let col = |i: usize| -> Vec<i64> { (0..r).map(|row| p[row][i]).collect() };
        let cols: Vec<Vec<i64>> = (0..r).map(col).collect();
        let mut entries = Vec::new();
        for i in 0..r {
            for j in i..r {
                for k in j..r {
                    entries.push((i, j, k, self.contract(&cols[i], &cols[j], &cols[k])));
                }
            }
        }
        Self::from_entries(r, entries).expect("contractions are symmetric")
    }
}

pub fn load_intersection_form(path: &Path) -> Result<IntersectionForm, MirrorError> {
    let text = std::fs::read_to_string(path).map_err(|e| MirrorError::File(format!("{}: {e}", path.display())))?;
    IntersectionForm::from_json(&text)
}
