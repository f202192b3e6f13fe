//! On-disk persistence of period data.
//!
//! Computing the period matrix is the slow part of the numeric run, so
//! it can be written out once and reloaded.  The file is keyed by a
//! hash of the exact curve coefficients and by the quadrature budget;
//! a mismatch on either silently falls back to recomputation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curve::HyperellipticCurve;

use super::periods::RiemannData;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    curve_hash: String,
    data: RiemannData,
}

/// FNV-1a over the exact coefficient list; Display of a rational is
/// canonical (reduced, sign on the numerator).
fn curve_hash(c: &HyperellipticCurve) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for r in c.f().coeffs() {
        for b in format!("{r};").bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    }
    format!("{h:016x}")
}

pub fn save_riemann_data(
    path: &Path,
    c: &HyperellipticCurve,
    data: &RiemannData,
) -> std::io::Result<()> {
    let file = CacheFile {
        curve_hash: curve_hash(c),
        data: data.clone(),
    };
    let body = serde_json::to_string(&file).expect("period data serializes");
    std::fs::write(path, body)
}

/// Reload period data if the file exists, parses, and matches both the
/// curve and the requested quadrature budget.
pub fn load_riemann_data(
    path: &Path,
    c: &HyperellipticCurve,
    quad_points: usize,
) -> Option<RiemannData> {
    let body = std::fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&body).ok()?;
    if file.curve_hash != curve_hash(c) || file.data.quad_points != quad_points {
        return None;
    }
    Some(file.data)
}
