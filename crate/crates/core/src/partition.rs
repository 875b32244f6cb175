//! Hall partitions and the exhaustive calculation method that finds them.
//!
//! The method grows an ordered chain of blocks `W_1, W_2, ..`. Each block is
//! a smallest critical set of the residual mapping left after removing the
//! earlier blocks together with their images. Candidates are scanned by
//! increasing size and, within a size, lexicographically in element index.
//! The scan either
//!
//! * meets a set whose residual image is smaller than itself, in which case
//!   the Hall condition fails and that set joined with the earlier blocks is
//!   returned as a witness,
//! * finds a critical set, which becomes the next block, or
//! * exhausts all candidates, in which case the remaining elements form the
//!   final, non-critical block.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mapping::{FiniteMapping, SUBSET_ENUMERATION_CAP};
use crate::subset::{XSubset, YSubset};

/// How the method terminated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExitKind {
    /// Every block, including the last, is critical; `#F(X) = #X`.
    LastBlockCritical,
    /// No critical set remained; the last block is not critical and
    /// `#F(X) > #X`.
    LastBlockNonCritical,
}

impl fmt::Display for ExitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExitKind::LastBlockCritical => "LastBlockCritical",
            ExitKind::LastBlockNonCritical => "LastBlockNonCritical",
        })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct HallPartition {
    xs: Arc<[String]>,
    ys: Arc<[String]>,
    blocks: Vec<XSubset>,
    residual_images: Vec<YSubset>,
    exit_kind: ExitKind,
}

impl HallPartition {
    /// Assembles a candidate partition for `f`. Nothing is checked here;
    /// use [`verify_partition`].
    pub fn new(
        f: &FiniteMapping,
        blocks: Vec<XSubset>,
        residual_images: Vec<YSubset>,
        exit_kind: ExitKind,
    ) -> Self {
        let (xs, ys) = f.shared_labels();
        HallPartition {
            xs,
            ys,
            blocks,
            residual_images,
            exit_kind,
        }
    }

    pub fn blocks(&self) -> &[XSubset] {
        &self.blocks
    }

    pub fn residual_images(&self) -> &[YSubset] {
        &self.residual_images
    }

    pub fn exit_kind(&self) -> ExitKind {
        self.exit_kind
    }

    /// Number of blocks `m`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks as label sets, independent of element order.
    pub fn block_family(&self) -> BTreeSet<BTreeSet<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|x| self.xs[x].clone()).collect())
            .collect()
    }

    fn labeled_pairs(&self) -> BTreeSet<(BTreeSet<String>, BTreeSet<String>)> {
        self.blocks
            .iter()
            .zip(&self.residual_images)
            .map(|(b, r)| {
                (
                    b.iter().map(|x| self.xs[x].clone()).collect(),
                    r.iter().map(|y| self.ys[y].clone()).collect(),
                )
            })
            .collect()
    }

    pub fn block_labels(&self, i: usize) -> Vec<&str> {
        self.blocks[i].iter().map(|x| self.xs[x].as_str()).collect()
    }

    pub fn residual_labels(&self, i: usize) -> Vec<&str> {
        self.residual_images[i]
            .iter()
            .map(|y| self.ys[y].as_str())
            .collect()
    }
}

impl fmt::Debug for HallPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.blocks.len() {
            list.entry(&(self.block_labels(i), self.residual_labels(i)));
        }
        list.finish()?;
        write!(f, " {}", self.exit_kind)
    }
}

/// A subset `W` of `X` with `#F(W) < #W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HallViolation {
    pub witness: XSubset,
}

impl HallViolation {
    /// Checks the deficiency of the witness directly against `f`.
    pub fn is_valid_for(&self, f: &FiniteMapping) -> bool {
        f.image_of_set(self.witness)
            .map(|img| img.len() < self.witness.len())
            .unwrap_or(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HallOutcome {
    Partition(HallPartition),
    Violation(HallViolation),
}

impl HallOutcome {
    pub fn partition(&self) -> Option<&HallPartition> {
        match self {
            HallOutcome::Partition(p) => Some(p),
            HallOutcome::Violation(_) => None,
        }
    }

    pub fn violation(&self) -> Option<&HallViolation> {
        match self {
            HallOutcome::Partition(_) => None,
            HallOutcome::Violation(v) => Some(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodOptions {
    /// Skip candidate sizes below the smallest residual image size.
    pub prune: bool,
}

impl Default for MethodOptions {
    fn default() -> Self {
        MethodOptions { prune: true }
    }
}

/// Result of the method on a sub-view of a mapping, in base-mapping indices.
pub(crate) enum ViewOutcome {
    Partition {
        blocks: Vec<XSubset>,
        residuals: Vec<YSubset>,
        exit_kind: ExitKind,
    },
    Violation(XSubset),
}

/// Runs the calculation method on the mapping `x -> F(x) \ excluded` with
/// domain `domain ⊆ X`.
pub(crate) fn run_method_on_view(
    f: &FiniteMapping,
    domain: XSubset,
    excluded: YSubset,
    options: MethodOptions,
) -> Result<ViewOutcome> {
    let images = f.images();
    let residual_image = |w: XSubset, removed: YSubset| {
        w.iter()
            .fold(YSubset::empty(), |acc, x| acc | images[x])
            - removed
    };

    let mut placed = XSubset::empty();
    let mut removed = excluded;
    let mut blocks = Vec::new();
    let mut residuals = Vec::new();

    loop {
        let remaining = domain - placed;
        debug_assert!(!remaining.is_empty());
        if remaining.len() > SUBSET_ENUMERATION_CAP {
            return Err(Error::TooLarge {
                what: "remaining domain",
                size: remaining.len(),
                cap: SUBSET_ENUMERATION_CAP,
            });
        }

        let start = if options.prune {
            remaining
                .iter()
                .map(|x| (images[x] - removed).len())
                .min()
                .unwrap_or(0)
                .max(1)
        } else {
            1
        };

        let mut block = None;
        'scan: for size in start..=remaining.len() {
            for w in remaining.combinations(size) {
                let image = residual_image(w, removed);
                if image.len() < size {
                    return Ok(ViewOutcome::Violation(w | placed));
                }
                if image.len() == size {
                    block = Some((w, image));
                    break 'scan;
                }
            }
        }

        match block {
            Some((w, image)) => {
                blocks.push(w);
                residuals.push(image);
                placed = placed | w;
                removed = removed | image;
                if placed == domain {
                    return Ok(ViewOutcome::Partition {
                        blocks,
                        residuals,
                        exit_kind: ExitKind::LastBlockCritical,
                    });
                }
            }
            None => {
                blocks.push(remaining);
                residuals.push(residual_image(remaining, removed));
                return Ok(ViewOutcome::Partition {
                    blocks,
                    residuals,
                    exit_kind: ExitKind::LastBlockNonCritical,
                });
            }
        }
    }
}

/// Computes the Hall partition of `f`, or a violation witness when `f` fails
/// the Hall condition.
pub fn compute_hall_partition(f: &FiniteMapping) -> Result<HallOutcome> {
    compute_hall_partition_with(f, MethodOptions::default())
}

pub fn compute_hall_partition_with(
    f: &FiniteMapping,
    options: MethodOptions,
) -> Result<HallOutcome> {
    let outcome = run_method_on_view(f, f.domain(), YSubset::empty(), options)?;
    Ok(match outcome {
        ViewOutcome::Partition {
            blocks,
            residuals,
            exit_kind,
        } => HallOutcome::Partition(HallPartition::new(f, blocks, residuals, exit_kind)),
        ViewOutcome::Violation(witness) => HallOutcome::Violation(HallViolation { witness }),
    })
}

/// `Ok(())` when `f` satisfies the Hall condition.
pub fn check_hall(f: &FiniteMapping) -> Result<std::result::Result<(), HallViolation>> {
    Ok(match compute_hall_partition(f)? {
        HallOutcome::Partition(_) => Ok(()),
        HallOutcome::Violation(v) => Err(v),
    })
}

/// Re-checks every defining clause of a Hall partition against `f`:
/// the blocks partition `X`, each chained residual mapping has nonempty
/// images on its block, each block is non-reducible in it, and every block
/// but the last is critical in it. Also checks the stored residual images
/// and exit classification.
///
/// Works on explicitly constructed residual mappings, not on the method's
/// internal views.
pub fn verify_partition(f: &FiniteMapping, p: &HallPartition) -> Result<bool> {
    if p.xs.as_ref() != f.x_labels() || p.ys.as_ref() != f.y_labels() {
        return Ok(false);
    }
    let blocks = p.blocks();
    if blocks.is_empty() || p.residual_images().len() != blocks.len() {
        return Ok(false);
    }
    let mut union = XSubset::empty();
    for &b in blocks {
        if b.is_empty() || !b.is_within(f.x_len()) || !b.is_disjoint(union) {
            return Ok(false);
        }
        union = union | b;
    }
    if union != f.domain() {
        return Ok(false);
    }

    let m = blocks.len();
    let mut prefix = XSubset::empty();
    for (i, &block) in blocks.iter().enumerate() {
        let residual = f.residual(prefix)?;
        // positions of the block's elements inside the residual mapping
        let local: XSubset = block
            .iter()
            .map(|x| residual.x_index(f.x_label(x)).expect("block lies outside prefix"))
            .collect();

        if local.iter().any(|x| residual.image(x).is_empty()) {
            return Ok(false);
        }
        if !residual.is_non_reducible(local)? {
            return Ok(false);
        }
        let critical = residual.is_critical(local)?;
        if i + 1 < m && !critical {
            return Ok(false);
        }
        if i + 1 == m {
            let expected = if critical {
                ExitKind::LastBlockCritical
            } else {
                ExitKind::LastBlockNonCritical
            };
            if p.exit_kind() != expected {
                return Ok(false);
            }
        }

        let stored: BTreeSet<&str> = p.residual_images()[i]
            .iter()
            .map(|y| f.y_label(y))
            .collect();
        let actual = residual.image_of_set(local)?;
        let actual: BTreeSet<&str> = actual.iter().map(|y| residual.y_label(y)).collect();
        if stored != actual {
            return Ok(false);
        }
        prefix = prefix | block;
    }
    Ok(true)
}

/// True when both partitions have the same blocks (and residual images) as
/// unordered families of labeled sets.
pub fn partitions_equal_up_to_renumbering(p1: &HallPartition, p2: &HallPartition) -> bool {
    let same_x: BTreeSet<&String> = p1.xs.iter().collect();
    let other_x: BTreeSet<&String> = p2.xs.iter().collect();
    same_x == other_x && p1.len() == p2.len() && p1.labeled_pairs() == p2.labeled_pairs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m1() -> FiniteMapping {
        FiniteMapping::from_pairs(&[
            ("1", &["1", "2"][..]),
            ("2", &["1", "2"]),
            ("3", &["1", "2", "3"]),
        ])
        .unwrap()
    }

    fn permutation(n: usize) -> FiniteMapping {
        FiniteMapping::numbered(n, (0..n).map(YSubset::singleton).collect()).unwrap()
    }

    fn partition_of(f: &FiniteMapping) -> HallPartition {
        compute_hall_partition(f).unwrap().partition().unwrap().clone()
    }

    #[test]
    fn m1_partition() {
        let f = m1();
        let p = partition_of(&f);
        assert_eq!(p.block_labels(0), ["1", "2"]);
        assert_eq!(p.block_labels(1), ["3"]);
        assert_eq!(p.residual_labels(0), ["1", "2"]);
        assert_eq!(p.residual_labels(1), ["3"]);
        assert_eq!(p.exit_kind(), ExitKind::LastBlockCritical);
        assert!(verify_partition(&f, &p).unwrap());
    }

    #[test]
    fn single_noncritical_block() {
        let f = FiniteMapping::from_pairs(&[("1", &["1", "2"][..]), ("2", &["1", "2", "3"])])
            .unwrap();
        let p = partition_of(&f);
        assert_eq!(p.len(), 1);
        assert_eq!(p.block_labels(0), ["1", "2"]);
        assert_eq!(p.residual_labels(0), ["1", "2", "3"]);
        assert_eq!(p.exit_kind(), ExitKind::LastBlockNonCritical);
        assert_eq!(f.image_of_set(f.domain()).unwrap().len(), 3);
    }

    #[test]
    fn pigeonhole_violation() {
        let f = FiniteMapping::from_pairs(&[("1", &["1"][..]), ("2", &["1"])]).unwrap();
        let v = *compute_hall_partition(&f).unwrap().violation().unwrap();
        assert_eq!(v.witness, f.domain());
        assert!(v.is_valid_for(&f));
        assert_eq!(check_hall(&f).unwrap(), Err(v));
    }

    #[test]
    fn check_hall_examples() {
        assert_eq!(check_hall(&permutation(4)).unwrap(), Ok(()));

        // the empty image is the only defect
        let f = FiniteMapping::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                [0, 1].into_iter().collect(),
                YSubset::empty(),
                [0, 1, 2].into_iter().collect(),
            ],
        )
        .unwrap();
        let v = check_hall(&f).unwrap().unwrap_err();
        assert!(v.witness.contains(1));
        assert!(v.is_valid_for(&f));
    }

    #[test]
    fn permutation_has_singleton_blocks() {
        let f = permutation(5);
        let p = partition_of(&f);
        assert_eq!(p.len(), 5);
        assert!(p.blocks().iter().all(|b| b.len() == 1));
        assert_eq!(p.exit_kind(), ExitKind::LastBlockCritical);
    }

    #[test]
    fn verify_rejects_wrong_partitions() {
        let f = m1();
        let one = |l: &str| f.x_subset(&[l]).unwrap();
        let y = |ls: &[&str]| f.y_subset(ls).unwrap();

        let reversed = HallPartition::new(
            &f,
            vec![one("3"), f.x_subset(&["1", "2"]).unwrap()],
            vec![y(&["1", "2", "3"]), YSubset::empty()],
            ExitKind::LastBlockCritical,
        );
        assert!(!verify_partition(&f, &reversed).unwrap());

        let singles = HallPartition::new(
            &f,
            vec![one("1"), one("2"), one("3")],
            vec![y(&["1", "2"]), y(&[]), y(&["3"])],
            ExitKind::LastBlockCritical,
        );
        assert!(!verify_partition(&f, &singles).unwrap());

        let mut p = partition_of(&f);
        p.exit_kind = ExitKind::LastBlockNonCritical;
        assert!(!verify_partition(&f, &p).unwrap());
    }

    #[test]
    fn renumbering_equality() {
        let f = m1();
        let p = partition_of(&f);
        assert!(partitions_equal_up_to_renumbering(&p, &p));

        let reordered = FiniteMapping::from_pairs(&[
            ("3", &["3", "2", "1"][..]),
            ("2", &["2", "1"]),
            ("1", &["1", "2"]),
        ])
        .unwrap();
        assert!(partitions_equal_up_to_renumbering(
            &p,
            &partition_of(&reordered)
        ));

        let g = permutation(3);
        assert!(!partitions_equal_up_to_renumbering(&p, &partition_of(&g)));
    }

    #[test]
    fn pruning_does_not_change_blocks() {
        let f = m1();
        let pruned = compute_hall_partition_with(&f, MethodOptions { prune: true }).unwrap();
        let plain = compute_hall_partition_with(&f, MethodOptions { prune: false }).unwrap();
        assert_eq!(pruned, plain);
    }

    #[test]
    fn method_respects_cap() {
        let f = permutation(SUBSET_ENUMERATION_CAP + 1);
        assert!(matches!(
            compute_hall_partition(&f),
            Err(Error::TooLarge { .. })
        ));
    }
}
