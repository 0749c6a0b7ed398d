use std::fmt::Write as _;
use std::path::Path;

use super::quadint::QuadInt;
use super::ray::Ray;
use super::system::RaySystem;
use crate::error::{Error, Result};

/// Coefficients are bounded so that exact products cannot overflow.
const MAX_COEFF: i64 = 1 << 24;

#[derive(Clone, Debug)]
pub struct LoadedRays {
    pub system: RaySystem,
    /// Rays that canonicalized onto an earlier line.
    pub duplicates: usize,
}

/// Parses the text format: a `dim d` header, then one ray per line as
/// `2d` integers `a1 b1 ... ad bd` for coordinates `ai + bi√2`. Blank lines
/// and lines starting with `#` are ignored.
pub fn parse_rays(text: &str) -> Result<LoadedRays> {
    let mut dim = None;
    let mut rays = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        let err = |message: String| Error::Parse { line: lineno, message };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(d) = dim else {
            let d = line
                .strip_prefix("dim")
                .and_then(|rest| rest.trim().parse::<usize>().ok())
                .ok_or_else(|| err(format!("expected `dim d` header, found `{line}`")))?;
            dim = Some(d);
            continue;
        };
        let ints = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| err(format!("`{t}` is not an integer"))))
            .collect::<Result<Vec<_>>>()?;
        if ints.len() != 2 * d {
            return Err(err(format!("expected {} integers for dimension {d}, found {}", 2 * d, ints.len())));
        }
        if ints.iter().any(|x| x.abs() > MAX_COEFF) {
            return Err(err(format!("coefficient exceeds {MAX_COEFF}")));
        }
        let coords = ints.chunks(2).map(|c| QuadInt::new(c[0], c[1])).collect();
        rays.push(Ray::new(coords).map_err(|e| err(e.to_string()))?);
    }
    let dim = dim.ok_or(Error::Parse { line: 0, message: "missing `dim d` header".into() })?;
    let (system, duplicates) = RaySystem::new(dim, rays)?;
    Ok(LoadedRays { system, duplicates })
}

pub fn write_rays(sys: &RaySystem) -> String {
    let mut out = format!("# {} rays, {} bases\ndim {}\n", sys.len(), sys.bases().len(), sys.dim());
    for ray in sys.rays() {
        let fields: Vec<String> = ray.coords().iter().flat_map(|q| [q.a.to_string(), q.b.to_string()]).collect();
        writeln!(out, "{}", fields.join(" ")).expect("writing to a String");
    }
    out
}

pub fn load_rays(path: impl AsRef<Path>) -> Result<LoadedRays> {
    parse_rays(&std::fs::read_to_string(path)?)
}

pub fn save_rays(sys: &RaySystem, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_rays(sys))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ks::generate_peres;

    #[test]
    fn roundtrip() {
        let p = generate_peres();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.rays");
        save_rays(&p, &path).unwrap();
        let back = load_rays(&path).unwrap();
        assert_eq!(back.system, p);
        assert_eq!(back.duplicates, 0);
    }

    #[test]
    fn malformed_line_is_named() {
        let e = parse_rays("dim 3\n1 0 0 0 0 0\n1 0 x 0 0 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_rays("dim 3\n1 0 0 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn duplicates_are_counted() {
        let l = parse_rays("dim 3\n# axes\n1 0 0 0 0 0\n-1 0 0 0 0 0\n0 1 0 1 0 0\n").unwrap();
        assert_eq!(l.system.len(), 2);
        assert_eq!(l.duplicates, 1);
    }
}
