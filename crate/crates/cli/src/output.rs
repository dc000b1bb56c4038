//! CSV emission with a `#` metadata header, written atomically.

use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const SWEEP_COLUMNS: [&str; 9] = [
    "r_AS",
    "q",
    "R_C",
    "U_ee",
    "U_em",
    "U_me",
    "U_mm",
    "U_total",
    "quad_error_max",
];

pub const POLARIZABILITY_COLUMNS: [&str; 5] =
    ["xi", "alpha_star", "beta_star", "alpha_free", "alpha_cavity"];

pub fn config_hash(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// 17 significant digits, enough to round-trip an f64.
pub fn number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:.16e}")
    }
}

pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&'static str], config_hash: &str, units: &str) -> Self {
        Self {
            metadata: vec![
                ("generator".into(), format!("cpsphere {}", env!("CARGO_PKG_VERSION"))),
                ("config_sha256".into(), config_hash.into()),
                ("units".into(), units.into()),
            ],
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.metadata {
            s.push_str(&format!("# {k} = {v}\n"));
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| number(*x)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    /// Writes to a temporary file next to `path` and renames it into place,
    /// so a failed run never leaves a partial file.
    pub fn write_atomic(&self, path: &Path) -> Result<(), CliError> {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(self.render().as_bytes())?;
        tmp.flush()?;
        tmp.persist(path).map_err(|e| CliError::from(e.error))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(number(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(number(f64::NAN), "nan");
    }

    #[test]
    fn render_has_header_and_rows() {
        let mut t = Table::new(&POLARIZABILITY_COLUMNS, "abc", "reduced");
        t.rows.push(vec![0.0, 1.0, 2.0, 3.0, f64::NAN]);
        let s = t.render();
        let lines: Vec<_> = s.lines().collect();
        assert!(lines[0].starts_with("# generator = cpsphere"));
        assert_eq!(lines[1], "# config_sha256 = abc");
        assert_eq!(lines[2], "# units = reduced");
        assert_eq!(lines[3], "xi,alpha_star,beta_star,alpha_free,alpha_cavity");
        assert_eq!(lines[4].split(',').count(), 5);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.csv");
        std::fs::write(&p, "old").unwrap();
        let t = Table::new(&SWEEP_COLUMNS, "h", "SI");
        t.write_atomic(&p).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), t.render());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(config_hash("x"), config_hash("x"));
        assert_ne!(config_hash("x"), config_hash("y"));
        assert_eq!(config_hash("").len(), 64);
    }
}
