//! Text format for set-valued mappings.
//!
//! ```text
//! # comment
//! X: 1 2 3
//! Y: 1 2 3
//! 1 : 1 2
//! 2 : 1 2
//! 3 : 1 2 3
//! ```
//!
//! `X:` and `Y:` header lines are optional and may only appear before the
//! first image line. Without an `X:` header the domain is the list of image
//! lines; without a `Y:` header the codomain is every value named in an
//! image, in order of first appearance. An element with an empty image is
//! written `x :`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::error::Error;
use crate::mapping::FiniteMapping;
use crate::subset::YSubset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `<x> : <y> ...`")]
    Syntax { line: usize },

    #[error("line {line}: duplicate {what} {label}")]
    Duplicate {
        line: usize,
        what: &'static str,
        label: String,
    },

    #[error("line {line}: {label} is not a declared {what} element")]
    Undeclared {
        line: usize,
        what: &'static str,
        label: String,
    },

    #[error("line {line}: `{header}:` header after the first image line")]
    LateHeader { line: usize, header: char },

    #[error("declared element {0} has no image line")]
    MissingImage(String),

    #[error(transparent)]
    Mapping(#[from] Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MappingDocument {
    pub x_elements: Option<Vec<String>>,
    pub y_elements: Option<Vec<String>>,
    pub images: Vec<(String, Vec<String>)>,
}

fn split_tokens(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_owned).collect()
}

fn no_duplicates(
    line: usize,
    what: &'static str,
    labels: &[String],
) -> Result<(), ParseError> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(ParseError::Duplicate {
                line,
                what,
                label: l.clone(),
            });
        }
    }
    Ok(())
}

impl MappingDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut doc = MappingDocument::default();
        let mut seen_x = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (head, tail) = content
                .split_once(':')
                .ok_or(ParseError::Syntax { line })?;
            let head = head.trim();
            let tokens = split_tokens(tail);

            if head == "X" || head == "Y" {
                let header = head.chars().next().unwrap();
                if !doc.images.is_empty() {
                    return Err(ParseError::LateHeader { line, header });
                }
                let slot = if header == 'X' {
                    &mut doc.x_elements
                } else {
                    &mut doc.y_elements
                };
                if slot.is_some() {
                    return Err(ParseError::Duplicate {
                        line,
                        what: "header",
                        label: format!("{header}:"),
                    });
                }
                no_duplicates(line, if header == 'X' { "X" } else { "Y" }, &tokens)?;
                *slot = Some(tokens);
                continue;
            }

            if head.is_empty() || head.contains(char::is_whitespace) {
                return Err(ParseError::Syntax { line });
            }
            if !seen_x.insert(head.to_owned()) {
                return Err(ParseError::Duplicate {
                    line,
                    what: "X",
                    label: head.to_owned(),
                });
            }
            if let Some(xs) = &doc.x_elements {
                if !xs.iter().any(|x| x == head) {
                    return Err(ParseError::Undeclared {
                        line,
                        what: "X",
                        label: head.to_owned(),
                    });
                }
            }
            no_duplicates(line, "value in image of", &tokens)?;
            if let Some(ys) = &doc.y_elements {
                if let Some(bad) = tokens.iter().find(|t| !ys.contains(t)) {
                    return Err(ParseError::Undeclared {
                        line,
                        what: "Y",
                        label: bad.clone(),
                    });
                }
            }
            doc.images.push((head.to_owned(), tokens));
        }
        Ok(doc)
    }

    /// The mapping described by the document.
    pub fn to_mapping(&self) -> Result<FiniteMapping, ParseError> {
        let xs: Vec<String> = match &self.x_elements {
            Some(xs) => xs.clone(),
            None => self.images.iter().map(|(x, _)| x.clone()).collect(),
        };
        let ys: Vec<String> = match &self.y_elements {
            Some(ys) => ys.clone(),
            None => {
                let mut ys: Vec<String> = Vec::new();
                for (_, image) in &self.images {
                    for y in image {
                        if !ys.contains(y) {
                            ys.push(y.clone());
                        }
                    }
                }
                ys
            }
        };
        let mut images = Vec::with_capacity(xs.len());
        for x in &xs {
            let (_, image) = self
                .images
                .iter()
                .find(|(label, _)| label == x)
                .ok_or_else(|| ParseError::MissingImage(x.clone()))?;
            let mut set = YSubset::empty();
            for y in image {
                let idx = ys.iter().position(|l| l == y).ok_or_else(|| {
                    ParseError::Undeclared {
                        line: 0,
                        what: "Y",
                        label: y.clone(),
                    }
                })?;
                if idx >= crate::subset::MAX_ELEMENTS {
                    return Err(Error::TooLarge {
                        what: "codomain",
                        size: ys.len(),
                        cap: crate::subset::MAX_ELEMENTS,
                    }
                    .into());
                }
                set.insert(idx);
            }
            images.push(set);
        }
        Ok(FiniteMapping::new(xs, ys, images)?)
    }

    /// Document with both headers and one line per domain element.
    pub fn from_mapping(f: &FiniteMapping) -> Self {
        MappingDocument {
            x_elements: Some(f.x_labels().to_vec()),
            y_elements: Some(f.y_labels().to_vec()),
            images: (0..f.x_len())
                .map(|x| {
                    (
                        f.x_label(x).to_owned(),
                        f.image(x).iter().map(|y| f.y_label(y).to_owned()).collect(),
                    )
                })
                .collect(),
        }
    }
}

impl fmt::Display for MappingDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(xs) = &self.x_elements {
            writeln!(f, "X: {}", xs.join(" "))?;
        }
        if let Some(ys) = &self.y_elements {
            writeln!(f, "Y: {}", ys.join(" "))?;
        }
        for (x, image) in &self.images {
            if image.is_empty() {
                writeln!(f, "{x} :")?;
            } else {
                writeln!(f, "{x} : {}", image.join(" "))?;
            }
        }
        Ok(())
    }
}

pub fn parse_mapping(text: &str) -> Result<FiniteMapping, ParseError> {
    MappingDocument::parse(text)?.to_mapping()
}
