//! CSV emission for [`CurveResult`]s.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use mmwave_link::coverage::CurveResult;

use crate::error::CliError;

/// Column-name fragment: lowercase, with anything outside `[a-z0-9]` folded
/// to `_` so headers stay a single token.
fn token(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect()
}

pub fn render_csv(curve: &CurveResult) -> String {
    let mut out = format!(
        "x_{}_{},y_{}_{}",
        token(&curve.x_name),
        token(&curve.x_unit),
        token(&curve.y_name),
        token(&curve.y_unit)
    );
    if curve.ci95.is_some() {
        out.push_str(",ci95");
    }
    if curve.labels.is_some() {
        out.push_str(",label");
    }
    out.push('\n');
    for (i, (x, y)) in curve.points.iter().enumerate() {
        write!(out, "{x:.9e},{y:.9e}").unwrap();
        if let Some(ci) = &curve.ci95 {
            write!(out, ",{:.9e}", ci[i]).unwrap();
        }
        if let Some(labels) = &curve.labels {
            write!(out, ",{}", labels[i]).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Writes `contents` next to `path` and renames it into place, so readers
/// never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    let result = fs::File::create(&tmp)
        .and_then(|mut f| {
            f.write_all(contents)?;
            f.sync_all()
        })
        .and_then(|_| fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::io(path, e));
    }
    Ok(())
}

pub fn emit_csv(curve: &CurveResult, path: &Path) -> Result<(), CliError> {
    write_atomic(path, render_csv(curve).as_bytes())
}
