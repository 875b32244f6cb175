//! Set-valued mappings `F: X -> 2^Y` between finite labeled ground sets.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::{XSubset, YSubset, MAX_ELEMENTS};

/// Largest subset size for which exhaustive subset enumeration is attempted.
pub const SUBSET_ENUMERATION_CAP: usize = 24;

/// A set-valued mapping between two finite ground sets.
///
/// Elements are opaque string labels, stored in input order; every subset
/// refers to elements through their position in that order. Mappings built
/// through [`FiniteMapping::new`] have nonempty `X` and `Y`. Complement
/// mappings keep a nonempty domain but their codomain `Y \ Z` may be empty.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMapping {
    xs: Arc<[String]>,
    ys: Arc<[String]>,
    images: Vec<YSubset>,
}

fn check_labels(side: &str, labels: &[String]) -> Result<()> {
    if labels.len() > MAX_ELEMENTS {
        return Err(Error::TooLarge {
            what: if side == "X" { "domain" } else { "codomain" },
            size: labels.len(),
            cap: MAX_ELEMENTS,
        });
    }
    let mut seen = HashSet::new();
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::InvalidMapping(format!(
                "duplicate element {label} in {side}"
            )));
        }
    }
    Ok(())
}

impl FiniteMapping {
    pub fn new(xs: Vec<String>, ys: Vec<String>, images: Vec<YSubset>) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::InvalidMapping("X is empty".into()));
        }
        if ys.is_empty() {
            return Err(Error::InvalidMapping("Y is empty".into()));
        }
        check_labels("X", &xs)?;
        check_labels("Y", &ys)?;
        if images.len() != xs.len() {
            return Err(Error::InvalidMapping(format!(
                "{} images given for {} domain elements",
                images.len(),
                xs.len()
            )));
        }
        if let Some(i) = images.iter().position(|im| !im.is_within(ys.len())) {
            return Err(Error::InvalidMapping(format!(
                "image of {} is not a subset of Y",
                xs[i]
            )));
        }
        Ok(FiniteMapping {
            xs: xs.into(),
            ys: ys.into(),
            images,
        })
    }

    /// Mapping over `X = {1..=images.len()}` and `Y = {1..=y_len}`, with
    /// images given as index sets.
    pub fn numbered(y_len: usize, images: Vec<YSubset>) -> Result<Self> {
        let xs = (1..=images.len()).map(|i| i.to_string()).collect();
        let ys = (1..=y_len).map(|i| i.to_string()).collect();
        Self::new(xs, ys, images)
    }

    /// Builds a mapping from `(x, [y..])` label pairs. `Y` is the set of
    /// labels that occur in some image, in order of first appearance.
    pub fn from_pairs<X, Y>(pairs: &[(X, &[Y])]) -> Result<Self>
    where
        X: AsRef<str>,
        Y: AsRef<str>,
    {
        let mut ys: Vec<String> = Vec::new();
        let mut images = Vec::with_capacity(pairs.len());
        for (_, image) in pairs {
            let mut set = YSubset::empty();
            for y in image.iter() {
                let y = y.as_ref();
                let idx = match ys.iter().position(|l| l == y) {
                    Some(i) => i,
                    None => {
                        ys.push(y.to_owned());
                        ys.len() - 1
                    }
                };
                if idx >= MAX_ELEMENTS {
                    return Err(Error::TooLarge {
                        what: "codomain",
                        size: idx + 1,
                        cap: MAX_ELEMENTS,
                    });
                }
                set.insert(idx);
            }
            images.push(set);
        }
        let xs = pairs.iter().map(|(x, _)| x.as_ref().to_owned()).collect();
        Self::new(xs, ys, images)
    }

    pub(crate) fn shared_labels(&self) -> (Arc<[String]>, Arc<[String]>) {
        (self.xs.clone(), self.ys.clone())
    }

    pub fn x_len(&self) -> usize {
        self.xs.len()
    }

    pub fn y_len(&self) -> usize {
        self.ys.len()
    }

    pub fn x_labels(&self) -> &[String] {
        &self.xs
    }

    pub fn y_labels(&self) -> &[String] {
        &self.ys
    }

    pub fn x_label(&self, x: usize) -> &str {
        &self.xs[x]
    }

    pub fn y_label(&self, y: usize) -> &str {
        &self.ys[y]
    }

    pub fn x_index(&self, label: &str) -> Option<usize> {
        self.xs.iter().position(|l| l == label)
    }

    pub fn y_index(&self, label: &str) -> Option<usize> {
        self.ys.iter().position(|l| l == label)
    }

    /// The whole domain `X` as a subset.
    pub fn domain(&self) -> XSubset {
        XSubset::full(self.xs.len())
    }

    pub fn image(&self, x: usize) -> YSubset {
        self.images[x]
    }

    pub fn images(&self) -> &[YSubset] {
        &self.images
    }

    /// Labels of the members of `w`, formatted as `{a, b}`.
    pub fn format_x_set(&self, w: XSubset) -> String {
        format_labels(w.iter().map(|i| self.xs[i].as_str()))
    }

    pub fn format_y_set(&self, z: YSubset) -> String {
        format_labels(z.iter().map(|i| self.ys[i].as_str()))
    }

    pub fn x_subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<XSubset> {
        labels
            .iter()
            .map(|l| {
                self.x_index(l.as_ref())
                    .ok_or_else(|| Error::Domain(l.as_ref().to_owned()))
            })
            .collect()
    }

    pub fn y_subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<YSubset> {
        labels
            .iter()
            .map(|l| {
                self.y_index(l.as_ref())
                    .ok_or_else(|| Error::Domain(l.as_ref().to_owned()))
            })
            .collect()
    }

    fn check_x(&self, w: XSubset) -> Result<()> {
        if w.is_within(self.xs.len()) {
            Ok(())
        } else {
            let bad = w.iter().find(|&i| i >= self.xs.len()).unwrap_or_default();
            Err(Error::Domain(format!("#{bad} of X")))
        }
    }

    fn check_y(&self, z: YSubset) -> Result<()> {
        if z.is_within(self.ys.len()) {
            Ok(())
        } else {
            let bad = z.iter().find(|&i| i >= self.ys.len()).unwrap_or_default();
            Err(Error::Domain(format!("#{bad} of Y")))
        }
    }

    /// `F(W)`, the union of the images of the members of `w`.
    pub fn image_of_set(&self, w: XSubset) -> Result<YSubset> {
        self.check_x(w)?;
        Ok(self.union_of_images(w))
    }

    pub(crate) fn union_of_images(&self, w: XSubset) -> YSubset {
        w.iter().fold(YSubset::empty(), |acc, x| acc | self.images[x])
    }

    /// The complement mapping `F_{W,Z}` on `X \ W` with `F_{W,Z}(x) = F(x) \ Z`.
    ///
    /// The result is re-indexed: its ground sets are `X \ W` and `Y \ Z` in
    /// their original relative order.
    pub fn complement(&self, w: XSubset, z: YSubset) -> Result<FiniteMapping> {
        self.check_x(w)?;
        self.check_y(z)?;
        let keep_x = self.domain() - w;
        if keep_x.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let keep_y = YSubset::full(self.ys.len()) - z;
        let y_map: Vec<Option<usize>> = {
            let mut next = 0;
            (0..self.ys.len())
                .map(|y| {
                    keep_y.contains(y).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let xs: Vec<String> = keep_x.iter().map(|x| self.xs[x].clone()).collect();
        let ys: Vec<String> = keep_y.iter().map(|y| self.ys[y].clone()).collect();
        let images = keep_x
            .iter()
            .map(|x| {
                (self.images[x] - z)
                    .iter()
                    .map(|y| y_map[y].expect("kept value"))
                    .collect()
            })
            .collect();
        Ok(FiniteMapping {
            xs: xs.into(),
            ys: ys.into(),
            images,
        })
    }

    /// `F_W = F_{W, F(W)}`.
    pub fn residual(&self, w: XSubset) -> Result<FiniteMapping> {
        let z = self.image_of_set(w)?;
        self.complement(w, z)
    }

    /// Nonempty `w` with `#F(W) = #W`.
    pub fn is_critical(&self, w: XSubset) -> Result<bool> {
        self.check_x(w)?;
        Ok(!w.is_empty() && self.union_of_images(w).len() == w.len())
    }

    /// Nonempty `w` without a proper nonempty critical subset. Checked by
    /// exhaustive enumeration of the subsets of `w`.
    pub fn is_non_reducible(&self, w: XSubset) -> Result<bool> {
        self.check_x(w)?;
        if w.is_empty() {
            return Ok(false);
        }
        if w.len() > SUBSET_ENUMERATION_CAP {
            return Err(Error::TooLarge {
                what: "subset",
                size: w.len(),
                cap: SUBSET_ENUMERATION_CAP,
            });
        }
        Ok(w
            .subsets()
            .filter(|&v| !v.is_empty() && v != w)
            .all(|v| self.union_of_images(v).len() != v.len()))
    }

    /// `min { #F(x) : x in X }`.
    pub fn min_image_size(&self) -> usize {
        self.images.iter().map(|im| im.len()).min().unwrap_or(0)
    }

    /// Same mapping with the listed image replaced; used to derive submappings.
    pub fn with_images(&self, images: Vec<YSubset>) -> Result<FiniteMapping> {
        if images.len() != self.xs.len() {
            return Err(Error::InvalidMapping(format!(
                "{} images given for {} domain elements",
                images.len(),
                self.xs.len()
            )));
        }
        if let Some(i) = images.iter().position(|im| !im.is_within(self.ys.len())) {
            return Err(Error::InvalidMapping(format!(
                "image of {} is not a subset of Y",
                self.xs[i]
            )));
        }
        Ok(FiniteMapping {
            xs: self.xs.clone(),
            ys: self.ys.clone(),
            images,
        })
    }

    /// True when `other` has the same ground sets and `other(x) ⊆ self(x)`.
    pub fn is_submapping(&self, other: &FiniteMapping) -> bool {
        self.xs == other.xs
            && self.ys == other.ys
            && other
                .images
                .iter()
                .zip(&self.images)
                .all(|(sub, sup)| sub.is_subset(*sup))
    }
}

pub(crate) fn format_labels<'a>(labels: impl Iterator<Item = &'a str>) -> String {
    let mut out = String::from("{");
    for (i, l) in labels.enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(l);
    }
    out.push('}');
    out
}

impl fmt::Debug for FiniteMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (x, im) in self.xs.iter().zip(&self.images) {
            map.entry(x, &format_labels(im.iter().map(|y| self.ys[y].as_str())));
        }
        map.finish()
    }
}

impl fmt::Display for FiniteMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, im) in self.xs.iter().zip(&self.images) {
            write!(f, "{x}:")?;
            for y in im.iter() {
                write!(f, " {}", self.ys[y])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
