//! Grid serialization: CSV with a versioned header and ASCII PGM heatmaps.
//!
//! CSV layout: one header line, then `2N` data lines indexed by momentum
//! `p`, each holding `2N` comma-separated values indexed by position `q`,
//! printed with 17 significant digits so the round trip is exact:
//!
//! ```text
//! # dwigner v1 N=<N> rows=p cols=q
//! W(0,0),W(1,0),...,W(2N-1,0)
//! ...
//! ```
//!
//! PGM heatmaps are plain `P2`, `2N x 2N`, maxval 255, pixel
//! `round(255 (W - Wmin) / (Wmax - Wmin))`. The raw range is embedded in
//! comments so values stay recoverable, and the top image row is the
//! highest momentum (`p = 2N - 1`).

use std::fs;
use std::io::Write;
use std::path::Path;

use dwigner::wigner::WignerGrid;

/// Data-level errors while reading or writing grids; these map to the
/// numerical-failure exit code, not the usage one.
#[derive(Debug)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for FormatError {}

impl From<std::io::Error> for FormatError {
    fn from(e: std::io::Error) -> Self {
        FormatError(e.to_string())
    }
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn grid_to_csv(grid: &WignerGrid) -> String {
    let side = grid.side();
    let mut out = format!("# dwigner v1 N={} rows=p cols=q\n", grid.n());
    for p in 0..side {
        let row: Vec<String> = (0..side).map(|q| fmt17(grid.value(q, p))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_grid_csv(text: &str) -> Result<WignerGrid, FormatError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| FormatError("empty grid file".into()))?;
    let rest = header
        .strip_prefix("# dwigner v1 N=")
        .ok_or_else(|| FormatError(format!("bad header: {header:?}")))?;
    let n: usize = rest
        .split_whitespace()
        .next()
        .and_then(|tok| tok.parse().ok())
        .ok_or_else(|| FormatError(format!("bad header: {header:?}")))?;
    let side = 2 * n;
    let mut values = vec![0.0f64; side * side];
    let mut rows = 0;
    for (p, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        if p >= side {
            return Err(FormatError(format!("too many data rows (expected {side})")));
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != side {
            return Err(FormatError(format!(
                "row {p} has {} columns, expected {side}",
                cells.len()
            )));
        }
        for (q, cell) in cells.iter().enumerate() {
            let v: f64 = cell
                .trim()
                .parse()
                .map_err(|_| FormatError(format!("bad value at row {p}, column {q}: {cell:?}")))?;
            values[q * side + p] = v;
        }
        rows += 1;
    }
    if rows != side {
        return Err(FormatError(format!("found {rows} data rows, expected {side}")));
    }
    WignerGrid::from_values(n, values).map_err(|e| FormatError(e.to_string()))
}

pub fn grid_to_pgm(grid: &WignerGrid) -> String {
    let side = grid.side();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in grid.values() {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let range = hi - lo;
    let mut out = String::from("P2\n");
    out.push_str(&format!("# wmin={}\n# wmax={}\n", fmt17(lo), fmt17(hi)));
    out.push_str(&format!("{side} {side}\n255\n"));
    for row in 0..side {
        let p = side - 1 - row; // top of the image is high momentum
        let pixels: Vec<String> = (0..side)
            .map(|q| {
                let v = grid.value(q, p);
                let level = if range > 0.0 {
                    (255.0 * (v - lo) / range).round() as u32
                } else {
                    0
                };
                level.to_string()
            })
            .collect();
        out.push_str(&pixels.join(" "));
        out.push('\n');
    }
    out
}

/// Writes via a temp file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), FormatError> {
    let file_name = path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp_name = format!(".{file_name}.tmp");
    let tmp = match path.parent().filter(|d| !d.as_os_str().is_empty()) {
        Some(d) => d.join(&tmp_name),
        None => std::path::PathBuf::from(&tmp_name),
    };
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_grid(path: &Path) -> Result<WignerGrid, FormatError> {
    parse_grid_csv(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dwigner::linalg::StateVector;
    use dwigner::wigner::wigner_of_state;

    #[test]
    fn csv_round_trip_is_exact() {
        let w = wigner_of_state(&StateVector::superposition(5, 1, 4).unwrap()).unwrap();
        let text = grid_to_csv(&w);
        let back = parse_grid_csv(&text).unwrap();
        assert_eq!(back.n(), 5);
        for q in 0..10 {
            for p in 0..10 {
                assert_eq!(w.value(q, p).to_bits(), back.value(q, p).to_bits(), "({q},{p})");
            }
        }
    }

    #[test]
    fn csv_header_and_shape() {
        let w = wigner_of_state(&StateVector::computational(2, 0).unwrap()).unwrap();
        let text = grid_to_csv(&w);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "# dwigner v1 N=2 rows=p cols=q");
        assert_eq!(lines.count(), 4);
        // row p=1 column q=2 carries the oscillating mirror strip value -1/4
        let row1 = text.lines().nth(2).unwrap();
        let cells: Vec<&str> = row1.split(',').collect();
        assert_eq!(cells.len(), 4);
        assert!((cells[2].parse::<f64>().unwrap() + 0.25).abs() < 1e-15);
    }

    #[test]
    fn csv_rejects_malformed_input() {
        assert!(parse_grid_csv("").is_err());
        assert!(parse_grid_csv("# wrong header\n1,2\n3,4\n").is_err());
        let w = wigner_of_state(&StateVector::computational(2, 0).unwrap()).unwrap();
        let text = grid_to_csv(&w);
        let truncated: String = text.lines().take(3).collect::<Vec<_>>().join("\n");
        assert!(parse_grid_csv(&truncated).is_err());
    }

    #[test]
    fn pgm_shape_and_determinism() {
        let w = wigner_of_state(&StateVector::computational(2, 0).unwrap()).unwrap();
        let pgm = grid_to_pgm(&w);
        let lines: Vec<&str> = pgm.lines().collect();
        assert_eq!(lines[0], "P2");
        assert!(lines[1].starts_with("# wmin="));
        assert!(lines[2].starts_with("# wmax="));
        assert_eq!(lines[3], "4 4");
        assert_eq!(lines[4], "255");
        assert_eq!(lines.len(), 5 + 4);
        // the positive strip q=0 is at max brightness in every row
        for row in &lines[5..] {
            assert_eq!(row.split(' ').next().unwrap(), "255");
        }
        assert_eq!(pgm, grid_to_pgm(&w));
    }
}
