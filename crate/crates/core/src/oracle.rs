//! Brute-force reference implementations.
//!
//! Everything here works straight from the definitions: selections are
//! enumerated by depth-first assignment, the kernel is the union of their
//! values, and the Hall condition is checked over every subset of `X`. None
//! of it touches the partition machinery.

use crate::error::{Error, Result};
use crate::kernel::{KernelMapping, Selection};
use crate::mapping::FiniteMapping;
use crate::partition::HallViolation;
use crate::subset::{XSubset, YSubset};

/// Largest domain for which selections are enumerated.
pub const SELECTION_CAP: usize = 12;
/// Largest domain whose subsets are scanned for the Hall condition.
pub const SUBSET_SCAN_CAP: usize = 20;

/// Every alldifferent selection of `f`, in lexicographic order of the value
/// indices along `X`.
pub fn enumerate_selections(f: &FiniteMapping) -> Result<Vec<Selection>> {
    if f.x_len() > SELECTION_CAP {
        return Err(Error::TooLarge {
            what: "domain",
            size: f.x_len(),
            cap: SELECTION_CAP,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(f.x_len());
    assign(f, 0, YSubset::empty(), &mut current, &mut out);
    Ok(out)
}

fn assign(
    f: &FiniteMapping,
    x: usize,
    used: YSubset,
    current: &mut Vec<usize>,
    out: &mut Vec<Selection>,
) {
    if x == f.x_len() {
        out.push(Selection::new(current.clone()));
        return;
    }
    for y in (f.image(x) - used).iter() {
        current.push(y);
        assign(f, x + 1, used | YSubset::singleton(y), current, out);
        current.pop();
    }
}

/// `F*(x) = { s(x) : s an alldifferent selection }`.
pub fn oracle_kernel(f: &FiniteMapping) -> Result<KernelMapping> {
    let selections = enumerate_selections(f)?;
    let mut images = vec![YSubset::empty(); f.x_len()];
    for s in &selections {
        for (x, image) in images.iter_mut().enumerate() {
            image.insert(s.value(x));
        }
    }
    Ok(KernelMapping::new(f.clone(), images, None))
}

/// Scans all nonempty subsets of `X` by increasing size, then
/// lexicographically, and returns the first with `#F(W) < #W`.
pub fn oracle_hall_check(f: &FiniteMapping) -> Result<std::result::Result<(), HallViolation>> {
    if f.x_len() > SUBSET_SCAN_CAP {
        return Err(Error::TooLarge {
            what: "domain",
            size: f.x_len(),
            cap: SUBSET_SCAN_CAP,
        });
    }
    let domain = f.domain();
    for size in 1..=f.x_len() {
        for w in domain.combinations(size) {
            if f.image_of_set(w)?.len() < size {
                return Ok(Err(HallViolation { witness: w }));
            }
        }
    }
    Ok(Ok(()))
}

/// All critical sets of `f`, by exhaustive scan.
pub fn critical_sets(f: &FiniteMapping) -> Result<Vec<XSubset>> {
    if f.x_len() > SUBSET_SCAN_CAP {
        return Err(Error::TooLarge {
            what: "domain",
            size: f.x_len(),
            cap: SUBSET_SCAN_CAP,
        });
    }
    let mut out = Vec::new();
    for w in f.domain().subsets() {
        if f.is_critical(w)? {
            out.push(w);
        }
    }
    Ok(out)
}
