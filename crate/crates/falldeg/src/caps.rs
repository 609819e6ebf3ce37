//! Resource caps for desk-scale computations.
//!
//! Defaults can be overridden through the `FALLDEG_CAPS` environment variable,
//! a comma-separated list like `matrix_cols=50000,enum_points=65536`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of monomial columns in one echelon matrix.
    pub matrix_cols: usize,
    /// Maximum number of points scanned by brute-force solution enumeration.
    pub enum_points: u64,
    /// Maximum number of S-pair reductions in one Gröbner basis run.
    pub gb_pairs: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { matrix_cols: 200_000, enum_points: 1 << 24, gb_pairs: 500_000 }
    }
}

impl Caps {
    /// Defaults overridden by `FALLDEG_CAPS` when set.
    pub fn from_env() -> Caps {
        let mut caps = Caps::default();
        if let Ok(s) = std::env::var("FALLDEG_CAPS") {
            for part in s.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                if let Some((key, val)) = part.split_once('=') {
                    match (key.trim(), val.trim().parse::<u64>()) {
                        ("matrix_cols", Ok(v)) => caps.matrix_cols = v as usize,
                        ("enum_points", Ok(v)) => caps.enum_points = v,
                        ("gb_pairs", Ok(v)) => caps.gb_pairs = v as usize,
                        _ => {}
                    }
                }
            }
        }
        caps
    }
}
