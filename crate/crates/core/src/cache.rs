//! On-disk cache of subset homology classes, one text file per complex,
//! variant and coefficient choice.
//!
//! ```text
//! uberdh-subset-cache 1
//! hash <sha256 of the facet set>
//! m <vertices> reduced <bool> coeffs <z|q|f2|fp:p>
//! <mask hex> <degree> <free rank> <torsion, comma separated, or ->
//! ```
//!
//! Only nonzero groups get a record. A header that does not match the
//! request, or any unreadable line, is a miss.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;

use crate::exactla::{AbelianGroupClass, Coeffs};
use crate::homology::{subset_homology_classes, GradedGroup, SubsetClassTable};
use crate::scomplex::SimplicialComplex;
use crate::Result;

const MAGIC: &str = "uberdh-subset-cache 1";

pub fn cache_file(dir: &Path, k: &SimplicialComplex, reduced: bool, coeffs: Coeffs) -> PathBuf {
    let variant = if reduced { "reduced" } else { "unreduced" };
    let coeffs = coeffs.to_string().replace(':', "");
    dir.join(format!("{}-{variant}-{coeffs}.txt", k.content_hash()))
}

fn header(k: &SimplicialComplex, reduced: bool, coeffs: Coeffs) -> String {
    format!("{MAGIC}\nhash {}\nm {} reduced {reduced} coeffs {coeffs}\n", k.content_hash(), k.m())
}

pub fn serialise(k: &SimplicialComplex, table: &SubsetClassTable) -> String {
    let mut out = header(k, table.reduced, table.coeffs);
    for (bits, groups) in table.entries.iter().enumerate() {
        for (d, g) in groups.iter() {
            let torsion = if g.torsion().is_empty() {
                "-".to_string()
            } else {
                g.torsion().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
            };
            out.push_str(&format!("{bits:x} {d} {} {torsion}\n", g.rank));
        }
    }
    out
}

/// `None` on any mismatch or malformed content.
pub fn deserialise(text: &str, k: &SimplicialComplex, reduced: bool, coeffs: Coeffs) -> Option<SubsetClassTable> {
    let expected = header(k, reduced, coeffs);
    let body = text.strip_prefix(expected.as_str())?;
    let mut entries = vec![GradedGroup::zero(coeffs); 1usize << k.m()];
    for line in body.lines() {
        let mut parts = line.split(' ');
        let bits = usize::from_str_radix(parts.next()?, 16).ok()?;
        let d: isize = parts.next()?.parse().ok()?;
        let rank: usize = parts.next()?.parse().ok()?;
        let torsion = match parts.next()? {
            "-" => Vec::new(),
            t => t.split(',').map(|x| x.parse::<BigUint>().ok()).collect::<Option<Vec<_>>>()?,
        };
        if parts.next().is_some() || bits >= entries.len() {
            return None;
        }
        let g = match coeffs {
            Coeffs::Z => AbelianGroupClass::integral(rank, torsion),
            field if torsion.is_empty() => AbelianGroupClass::free(field, rank),
            _ => return None,
        };
        entries[bits].set(d, g);
    }
    Some(SubsetClassTable { m: k.m(), reduced, coeffs, entries })
}

/// Subset classes, read from `dir` when present and written back after a
/// miss. Cache I/O problems only produce warnings.
pub fn subset_classes_cached(
    k: &SimplicialComplex,
    reduced: bool,
    coeffs: Coeffs,
    cap: usize,
    dir: Option<&Path>,
) -> Result<SubsetClassTable> {
    let Some(dir) = dir else {
        return subset_homology_classes(k, reduced, coeffs, cap);
    };
    let path = cache_file(dir, k, reduced, coeffs);
    if let Ok(text) = fs::read_to_string(&path) {
        match deserialise(&text, k, reduced, coeffs) {
            Some(t) => {
                log::debug!("cache hit {}", path.display());
                return Ok(t);
            }
            None => log::warn!("ignoring unreadable cache file {}", path.display()),
        }
    }
    let table = subset_homology_classes(k, reduced, coeffs, cap)?;
    if let Err(e) = fs::create_dir_all(dir).and_then(|_| fs::write(&path, serialise(k, &table))) {
        log::warn!("could not write cache file {}: {e}", path.display());
    }
    Ok(table)
}
