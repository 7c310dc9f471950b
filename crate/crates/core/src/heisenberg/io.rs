//! Raw little-endian `f64` field files with a JSON sidecar `{N, kind}`.
//!
//! Values are written in index order (`k_t` fastest). Complex fields store
//! `re, im` interleaved per point. The sidecar lives next to the data file as
//! `<file>.json`.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::{ComplexField, RealField};
use super::grid::make_grid;
use super::FieldError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Real,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    #[serde(rename = "N")]
    pub n: usize,
    pub kind: FieldKind,
}

#[derive(Clone, Debug)]
pub enum AnyField {
    Real(RealField),
    Complex(ComplexField),
}

impl AnyField {
    pub fn n(&self) -> usize {
        match self {
            AnyField::Real(f) => f.grid().n(),
            AnyField::Complex(f) => f.grid().n(),
        }
    }

    pub fn into_real(self) -> Result<RealField, FieldError> {
        match self {
            AnyField::Real(f) => Ok(f),
            AnyField::Complex(_) => Err(FieldError::Format("expected a real field".into())),
        }
    }

    /// Real fields are promoted.
    pub fn into_complex(self) -> ComplexField {
        match self {
            AnyField::Real(f) => f.to_complex(),
            AnyField::Complex(f) => f,
        }
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn write_raw(path: &Path, floats: impl Iterator<Item = f64>, sidecar: &Sidecar) -> Result<(), FieldError> {
    let bytes: Vec<u8> = floats.flat_map(f64::to_le_bytes).collect();
    fs::write(path, bytes)?;
    let meta = serde_json::to_string(sidecar).map_err(|e| FieldError::Format(e.to_string()))?;
    fs::write(sidecar_path(path), meta)?;
    Ok(())
}

pub fn write_real(path: &Path, field: &RealField) -> Result<(), FieldError> {
    let sidecar = Sidecar { n: field.grid().n(), kind: FieldKind::Real };
    write_raw(path, field.values().iter().copied(), &sidecar)
}

pub fn write_complex(path: &Path, field: &ComplexField) -> Result<(), FieldError> {
    let sidecar = Sidecar { n: field.grid().n(), kind: FieldKind::Complex };
    write_raw(path, field.values().iter().flat_map(|z| [z.re, z.im]), &sidecar)
}

pub fn read_field(path: &Path) -> Result<AnyField, FieldError> {
    let meta = fs::read_to_string(sidecar_path(path))?;
    let sidecar: Sidecar = serde_json::from_str(&meta).map_err(|e| FieldError::Format(e.to_string()))?;
    let grid = make_grid(sidecar.n)?;
    let bytes = fs::read(path)?;
    if bytes.len() % 8 != 0 {
        return Err(FieldError::Format(format!("{} bytes is not a whole number of f64 values", bytes.len())));
    }
    let floats: Vec<f64> =
        bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk"))).collect();
    match sidecar.kind {
        FieldKind::Real => Ok(AnyField::Real(RealField::new(grid, floats)?)),
        FieldKind::Complex => {
            if !floats.len().is_multiple_of(2) {
                return Err(FieldError::Format("odd number of values for a complex field".into()));
            }
            let values = floats.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect();
            Ok(AnyField::Complex(ComplexField::new(grid, values)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_real_and_complex() {
        let dir = tempfile::tempdir().unwrap();
        let g = make_grid(4).unwrap();
        let f = RealField::from_fn(&g, |x, y, t| x - 2.0 * y + t * t);
        let p = dir.path().join("f.bin");
        write_real(&p, &f).unwrap();
        assert_eq!(fs::read_to_string(sidecar_path(&p)).unwrap(), r#"{"N":4,"kind":"real"}"#);
        let back = read_field(&p).unwrap().into_real().unwrap();
        assert_eq!(back.values(), f.values());

        let z = ComplexField::from_fn(&g, |x, y, _| Complex64::new(x, -y));
        let q = dir.path().join("z.bin");
        write_complex(&q, &z).unwrap();
        let back = read_field(&q).unwrap();
        assert!(back.clone().into_real().is_err());
        assert_eq!(back.into_complex().values(), z.values());
        assert_eq!(fs::metadata(&q).unwrap().len(), (g.len() * 16) as u64);
    }

    #[test]
    fn truncated_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.bin");
        fs::write(&p, [0u8; 12]).unwrap();
        fs::write(sidecar_path(&p), r#"{"N":4,"kind":"real"}"#).unwrap();
        assert!(read_field(&p).is_err());
    }
}
