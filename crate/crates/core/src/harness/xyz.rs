//! Standard XYZ export: atom count, comment line, one atom per line.
//!
//! Every bead is written as element C with fixed 6-decimal coordinates; the
//! residue letter and 1-based bead index ride in a trailing `#` comment that
//! standard XYZ readers ignore.

use crate::energy::AminoAcid;
use crate::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

pub fn format_xyz(coords: &[[f64; 3]], labels: &[AminoAcid], comment: &str) -> Result<String> {
    if coords.len() != labels.len() {
        return Err(Error::Config(format!(
            "xyz export: {} coordinates but {} residue labels",
            coords.len(),
            labels.len()
        )));
    }
    let single_line: String = comment
        .chars()
        .map(|c| if c == '\n' || c == '\r' { ' ' } else { c })
        .collect();
    let mut out = String::new();
    writeln!(out, "{}", coords.len()).expect("write to string");
    writeln!(out, "{single_line}").expect("write to string");
    for (i, (c, aa)) in coords.iter().zip(labels).enumerate() {
        writeln!(
            out,
            "C {:.6} {:.6} {:.6} # {}{}",
            c[0],
            c[1],
            c[2],
            aa.code(),
            i + 1
        )
        .expect("write to string");
    }
    Ok(out)
}

pub fn write_xyz(
    path: &Path,
    coords: &[[f64; 3]],
    labels: &[AminoAcid],
    comment: &str,
) -> Result<()> {
    std::fs::write(path, format_xyz(coords, labels, comment)?)?;
    Ok(())
}
