use std::path::Path;
use std::sync::Arc;

use super::{RootDatum, RootDatumSpec};
use crate::error::{Error, Result};

/// Environment variable naming a directory of preset JSON files.
pub const DATA_ENV_VAR: &str = "HECKE_SPRINGER_DATA";

const BUILTIN: &[(&str, &str)] = &[
    ("GL1", include_str!("../../data/presets/GL1.json")),
    ("GL2", include_str!("../../data/presets/GL2.json")),
    ("GL3", include_str!("../../data/presets/GL3.json")),
    ("GL4", include_str!("../../data/presets/GL4.json")),
    ("SL2", include_str!("../../data/presets/SL2.json")),
    ("PGL2", include_str!("../../data/presets/PGL2.json")),
];

pub fn preset_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

/// Loads a root datum by name.
///
/// Lookup order: `<dir>/<name>.json` when `dir` is given, then the directory
/// in `HECKE_SPRINGER_DATA`, then the compiled-in presets. Names of the form
/// `GL(m1,m2,...)` build the block-diagonal Levi of `GL_{m1+m2+...}`.
pub fn load_datum(name: &str, dir: Option<&Path>) -> Result<Arc<RootDatum>> {
    let env_dir = std::env::var_os(DATA_ENV_VAR);
    for d in dir.into_iter().chain(env_dir.as_deref().map(Path::new)) {
        let path = d.join(format!("{name}.json"));
        if path.exists() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let spec: RootDatumSpec =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            return Ok(Arc::new(RootDatum::new(spec)?));
        }
    }
    if let Some((_, text)) = BUILTIN.iter().find(|(n, _)| *n == name) {
        let spec: RootDatumSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(Arc::new(RootDatum::new(spec)?));
    }
    if let Some(inner) = name.strip_prefix("GL(").and_then(|s| s.strip_suffix(')')) {
        let parts: Vec<usize> = inner
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| Error::UnknownDatum(name.to_string())))
            .collect::<Result<_>>()?;
        return Ok(Arc::new(RootDatum::new(gl_levi_spec(&parts)?)?));
    }
    if let Some(n) = name.strip_prefix("GL").and_then(|s| s.parse::<usize>().ok()) {
        return Ok(Arc::new(RootDatum::new(gl_levi_spec(&[n])?)?));
    }
    Err(Error::UnknownDatum(name.to_string()))
}

/// Root datum of the block-diagonal Levi `GL_{m1} × ⋯ × GL_{mk}` inside
/// `GL_n`, with cocharacters `Z^n`.
pub fn gl_levi_spec(blocks: &[usize]) -> Result<RootDatumSpec> {
    let n: usize = blocks.iter().sum();
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(Error::BadComposition(blocks.to_vec(), n));
    }
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };
    let mut roots = Vec::new();
    let mut dom = Vec::new();
    let mut omega = Vec::new();
    let mut start = 0;
    for &m in blocks {
        omega.push(unit(start));
        for i in start..start + m - 1 {
            roots.push(unit(i).iter().zip(unit(i + 1)).map(|(a, b)| a - b).collect::<Vec<i64>>());
            // e_start + ... + e_i pairs only with e_i - e_{i+1} inside the block
            dom.push((0..n).map(|k| i64::from(k >= start && k <= i)).collect());
        }
        start += m;
    }
    let cartan: Vec<Vec<i64>> = roots
        .iter()
        .map(|a| roots.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
        .collect();
    let name = if blocks.len() == 1 {
        format!("GL{n}")
    } else {
        format!("GL({})", blocks.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","))
    };
    Ok(RootDatumSpec {
        name,
        cochar_rank: n,
        cartan_matrix: cartan,
        simple_roots: roots.clone(),
        simple_coroots: roots,
        dominant_generators: dom,
        omega_translations: omega,
    })
}
