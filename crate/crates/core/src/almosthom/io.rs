//! Files for windows and almost homomorphisms.
//!
//! A hom file is `{"window": W, "mode": "rank"|"jordan", "images": I}` where
//! `W` is a window object or a path to a window file, and `I` maps element
//! labels to matrix objects or matrix file paths (an array in window order is
//! accepted too). Relative paths are resolved against the hom file's
//! directory.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use super::group::GroupWindow;
use super::hom::{AlmostHom, LengthMode};
use crate::error::{Error, Result};
use crate::matspace::{matrix_from_json, matrix_to_json, Matrix};

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn resolve(base: &Path, v: &Value) -> Result<Value> {
    match v {
        Value::String(p) => read_json(&base.join(p)),
        _ => Ok(v.clone()),
    }
}

pub fn read_window(path: &Path) -> Result<GroupWindow> {
    GroupWindow::from_json(&read_json(path)?)
}

/// Parses a hom document, loading referenced files relative to `base`.
pub fn hom_from_json(v: &Value, base: &Path) -> Result<AlmostHom> {
    let obj = v.as_object().ok_or_else(|| Error::Input("hom file must be a JSON object".into()))?;
    let window = GroupWindow::from_json(&resolve(
        base,
        obj.get("window").ok_or_else(|| Error::Input("hom file needs a `window`".into()))?,
    )?)?;
    let mode = match obj.get("mode") {
        None => LengthMode::Rank,
        Some(m) => LengthMode::parse(m.as_str().ok_or_else(|| Error::Input("`mode` must be a string".into()))?)?,
    };
    let images_v = obj.get("images").ok_or_else(|| Error::Input("hom file needs `images`".into()))?;
    let images: Vec<Matrix> = match images_v {
        Value::Array(items) => {
            if items.len() != window.len() {
                return Err(Error::Input(format!("{} images for {} window elements", items.len(), window.len())));
            }
            items.iter().map(|m| matrix_from_json(&resolve(base, m)?)).collect::<Result<_>>()?
        }
        Value::Object(map) => window
            .labels()
            .iter()
            .map(|l| {
                let m = map.get(l).ok_or_else(|| Error::Input(format!("no image for element {l}")))?;
                matrix_from_json(&resolve(base, m)?)
            })
            .collect::<Result<_>>()?,
        _ => return Err(Error::Input("`images` must be an object or array".into())),
    };
    AlmostHom::new(window, images, mode)
}

pub fn read_hom(path: &Path) -> Result<AlmostHom> {
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    hom_from_json(&read_json(path)?, &base)
}

/// Self-contained hom document with everything inline.
pub fn hom_to_json(hom: &AlmostHom) -> Value {
    let images: Map<String, Value> =
        hom.window.labels().iter().zip(&hom.images).map(|(l, m)| (l.clone(), matrix_to_json(m))).collect();
    json!({"window": hom.window.to_json(), "mode": hom.mode.name(), "images": images})
}

/// Writes `path` plus a window file and one matrix file per element next to
/// it, named after the stem of `path`. Returns every file written.
pub fn write_hom(path: &Path, hom: &AlmostHom) -> Result<Vec<PathBuf>> {
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("hom").to_string();
    let mut written = Vec::new();
    let window_name = format!("{stem}.window.json");
    write_json(&dir.join(&window_name), &hom.window.to_json())?;
    written.push(dir.join(&window_name));
    let mut images = Map::new();
    for (g, m) in hom.images.iter().enumerate() {
        let name = format!("{stem}.m{g}.json");
        write_json(&dir.join(&name), &matrix_to_json(m))?;
        written.push(dir.join(&name));
        images.insert(hom.window.label(g).to_string(), json!(name));
    }
    write_json(path, &json!({"window": window_name, "mode": hom.mode.name(), "images": images}))?;
    written.push(path.to_path_buf());
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almosthom::group::FiniteGroup;
    use crate::almosthom::hom::hom_from_exact_rep;
    use crate::exactfield::Field;

    fn sample() -> AlmostHom {
        let qf = Field::rationals();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(2));
        hom_from_exact_rep(&w, &[(1, Matrix::diag(&qf, &[qf.from_int(-1), qf.one()]))], LengthMode::Jordan).unwrap()
    }

    #[test]
    fn inline_round_trip() {
        let hom = sample();
        assert_eq!(hom_from_json(&hom_to_json(&hom), Path::new(".")).unwrap(), hom);
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("linsofic-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let hom = sample();
        let path = dir.join("c2.json");
        let files = write_hom(&path, &hom).unwrap();
        assert_eq!(files.len(), 4);
        assert_eq!(read_hom(&path).unwrap(), hom);
        fs::remove_dir_all(&dir).unwrap();
    }
}
