//! Self-describing output records for the CLI: CSV for field/kernel dumps
//! (streamable, plot-friendly), JSON for structured reports. CSV floats are
//! printed with 17 significant digits; JSON keeps exact values through
//! serde_json's round-trip float encoding.

use crate::clifford::Blade;
use crate::error::Result;
use crate::spectral::MultivectorField;
use crate::verify::GridInfo;
use serde::Serialize;
use serde_json::json;
use std::fmt::Write as _;

/// 17-significant-digit float formatting for CSV cells.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Human-readable blade label: "s" for the scalar unit, else "e" followed by
/// the 1-based generator indices ("e1", "e12", ...).
pub fn blade_label(mask: u32) -> String {
    if mask == 0 {
        return "s".to_string();
    }
    let mut label = String::from("e");
    for j in 0..32 {
        if mask & (1 << j) != 0 {
            let _ = write!(label, "{}", j + 1);
        }
    }
    label
}

/// One kernel evaluation row; the query is echoed so each record stands on
/// its own.
#[derive(Debug, Clone, Serialize)]
pub struct KernelRecord {
    pub r: f64,
    pub re_k: f64,
    pub im_k: f64,
    pub method: &'static str,
    pub est_error: f64,
    pub alpha: f64,
    pub n: u32,
    pub tau_re: f64,
    pub tau_im: f64,
}

pub const KERNEL_CSV_HEADER: &str = "r,re_k,im_k,method,est_error,alpha,n,tau_re,tau_im";

impl KernelRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            fmt_f64(self.r),
            fmt_f64(self.re_k),
            fmt_f64(self.im_k),
            self.method,
            fmt_f64(self.est_error),
            fmt_f64(self.alpha),
            self.n,
            fmt_f64(self.tau_re),
            fmt_f64(self.tau_im),
        )
    }
}

/// CSV dump of a field: coordinate columns then one re/im pair per blade.
pub fn field_to_csv(field: &MultivectorField, header_comment: &str) -> String {
    let grid = field.grid();
    let n = grid.dimension() as usize;
    let n_blades = 1usize << grid.dimension();
    let mut out = String::new();
    if !header_comment.is_empty() {
        let _ = writeln!(out, "# {header_comment}");
    }
    let mut cols: Vec<String> = (1..=n).map(|a| format!("x{a}")).collect();
    for mask in 0..n_blades {
        let label = blade_label(mask as u32);
        cols.push(format!("re_{label}"));
        cols.push(format!("im_{label}"));
    }
    let _ = writeln!(out, "{}", cols.join(","));
    for i in 0..grid.len() {
        let x = grid.point(i);
        let mut cells: Vec<String> = x[..n].iter().map(|&v| fmt_f64(v)).collect();
        for mask in 0..n_blades {
            let c = field.value(i).coeff(Blade::from_mask(mask as u32));
            cells.push(fmt_f64(c.re));
            cells.push(fmt_f64(c.im));
        }
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

/// JSON dump of a field including the grid header.
pub fn field_to_json(
    field: &MultivectorField,
    inputs: serde_json::Value,
) -> Result<String> {
    let grid = field.grid();
    let n = grid.dimension() as usize;
    let n_blades = 1usize << grid.dimension();
    let values: Vec<serde_json::Value> = (0..grid.len())
        .map(|i| {
            let x = grid.point(i);
            let mut coeffs = serde_json::Map::new();
            for mask in 0..n_blades {
                let c = field.value(i).coeff(Blade::from_mask(mask as u32));
                coeffs.insert(blade_label(mask as u32), json!([c.re, c.im]));
            }
            json!({ "x": &x[..n], "coeffs": coeffs })
        })
        .collect();
    let doc = json!({
        "inputs": inputs,
        "grid": GridInfo::from(grid),
        "values": values,
    });
    serde_json::to_string_pretty(&doc).map_err(|e| crate::error::Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;
    use num_complex::Complex64;

    #[test]
    fn float_formatting_has_17_significant_digits() {
        let s = fmt_f64(std::f64::consts::PI);
        assert_eq!(s, "3.1415926535897931e0");
        assert_eq!(s.parse::<f64>().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn blade_labels() {
        assert_eq!(blade_label(0), "s");
        assert_eq!(blade_label(0b1), "e1");
        assert_eq!(blade_label(0b110), "e23");
    }

    #[test]
    fn field_csv_is_self_describing_and_deterministic() {
        let g = GridSpec::new(1, 4, 2.0).unwrap();
        let f = MultivectorField::from_scalar_fn(g, |x| Complex64::new(x[0], -x[0]));
        let a = field_to_csv(&f, "test");
        let b = field_to_csv(&f, "test");
        assert_eq!(a, b);
        assert!(a.starts_with("# test\nx1,re_s,im_s,re_e1,im_e1\n"));
        assert_eq!(a.lines().count(), 2 + 4);
    }

    #[test]
    fn field_json_includes_grid_header() {
        let g = GridSpec::new(1, 4, 2.0).unwrap();
        let f = MultivectorField::from_scalar_fn(g, |_| Complex64::new(1.0, 0.0));
        let doc = field_to_json(&f, serde_json::json!({"t": 0.5})).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&doc).unwrap();
        assert_eq!(parsed["grid"]["points_per_axis"], 4);
        assert_eq!(parsed["values"].as_array().unwrap().len(), 4);
    }
}
