//! The alldifferent kernel `F*`: for each `x`, the values taken at `x` by
//! some alldifferent selection of `F`. It is read off a Hall partition: the
//! kernel image of `x ∈ W_i` is `F(x) \ F(W_1 ∪ .. ∪ W_{i-1})`.

use std::fmt;

use crate::error::{Error, Result};
use crate::mapping::FiniteMapping;
use crate::partition::{
    compute_hall_partition, run_method_on_view, verify_partition, HallOutcome, HallPartition,
    HallViolation, MethodOptions, ViewOutcome,
};
use crate::subset::{XSubset, YSubset};

/// A submapping of `base` standing for its alldifferent kernel.
#[derive(Clone, PartialEq, Eq)]
pub struct KernelMapping {
    base: FiniteMapping,
    images: Vec<YSubset>,
    witness: Option<HallViolation>,
}

impl KernelMapping {
    pub(crate) fn new(
        base: FiniteMapping,
        images: Vec<YSubset>,
        witness: Option<HallViolation>,
    ) -> Self {
        KernelMapping {
            base,
            images,
            witness,
        }
    }

    pub fn base(&self) -> &FiniteMapping {
        &self.base
    }

    pub fn image(&self, x: usize) -> YSubset {
        self.images[x]
    }

    pub fn images(&self) -> &[YSubset] {
        &self.images
    }

    /// True when no alldifferent selection exists and every image is empty.
    pub fn is_empty(&self) -> bool {
        self.images.iter().all(|im| im.is_empty())
    }

    /// Violation found while computing the kernel, if any.
    pub fn witness(&self) -> Option<&HallViolation> {
        self.witness.as_ref()
    }

    /// The kernel as a mapping over the same ground sets.
    pub fn to_mapping(&self) -> FiniteMapping {
        self.base
            .with_images(self.images.clone())
            .expect("kernel images are subsets of the base images")
    }
}

impl fmt::Debug for KernelMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (x, im) in self.images.iter().enumerate() {
            map.entry(&self.base.x_label(x), &self.base.format_y_set(*im));
        }
        map.finish()
    }
}

/// An alldifferent selection, stored as the chosen value index per `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Selection {
    assignment: Vec<usize>,
}

impl Selection {
    pub fn new(assignment: Vec<usize>) -> Self {
        Selection { assignment }
    }

    pub fn value(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.assignment
    }

    /// `s(x) ∈ F(x)` for every `x`, and no value is used twice.
    pub fn is_valid_for(&self, f: &FiniteMapping) -> bool {
        if self.assignment.len() != f.x_len() {
            return false;
        }
        let mut used = YSubset::empty();
        for (x, &y) in self.assignment.iter().enumerate() {
            if !f.image(x).contains(y) || used.contains(y) {
                return false;
            }
            used.insert(y);
        }
        true
    }

    /// `(x, y)` label pairs in domain order.
    pub fn labeled<'a>(&'a self, f: &'a FiniteMapping) -> impl Iterator<Item = (&'a str, &'a str)> {
        self.assignment
            .iter()
            .enumerate()
            .map(move |(x, &y)| (f.x_label(x), f.y_label(y)))
    }
}

/// Chooses the point `x_i` of each block and its value `y_i` while a
/// selection is being built.
pub trait Picker {
    fn pick_x(&self, f: &FiniteMapping, block: XSubset) -> usize;
    fn pick_y(&self, f: &FiniteMapping, x: usize, candidates: YSubset) -> usize;
}

/// Least index for both the point and its value.
#[derive(Debug, Clone, Copy, Default)]
pub struct LeastIndex;

impl Picker for LeastIndex {
    fn pick_x(&self, _: &FiniteMapping, block: XSubset) -> usize {
        block.first().expect("blocks are nonempty")
    }

    fn pick_y(&self, _: &FiniteMapping, _: usize, candidates: YSubset) -> usize {
        candidates.first().expect("kernel images are nonempty")
    }
}

fn images_from_blocks(f: &FiniteMapping, blocks: &[XSubset]) -> Vec<YSubset> {
    let mut images = vec![YSubset::empty(); f.x_len()];
    let mut removed = YSubset::empty();
    for &block in blocks {
        for x in block.iter() {
            images[x] = f.image(x) - removed;
        }
        removed = removed | f.image_of_set(block).expect("block within X");
    }
    images
}

/// The submapping induced by a Hall partition of `f`.
pub fn kernel_from_partition(f: &FiniteMapping, p: &HallPartition) -> Result<KernelMapping> {
    if !verify_partition(f, p)? {
        return Err(Error::InvalidPartition(format!("{p:?}")));
    }
    Ok(KernelMapping::new(
        f.clone(),
        images_from_blocks(f, p.blocks()),
        None,
    ))
}

/// `F*`, computed from the Hall partition. When `f` has no alldifferent
/// selection every kernel image is empty and the violation is attached.
pub fn alldifferent_kernel(f: &FiniteMapping) -> Result<KernelMapping> {
    Ok(match compute_hall_partition(f)? {
        HallOutcome::Partition(p) => {
            KernelMapping::new(f.clone(), images_from_blocks(f, p.blocks()), None)
        }
        HallOutcome::Violation(v) => {
            KernelMapping::new(f.clone(), vec![YSubset::empty(); f.x_len()], Some(v))
        }
    })
}

/// Nonempty images and `F* = F`.
pub fn is_alldifferent(f: &FiniteMapping) -> Result<bool> {
    if f.images().iter().any(|im| im.is_empty()) {
        return Ok(false);
    }
    Ok(alldifferent_kernel(f)?.images() == f.images())
}

/// True when `f` has exactly one alldifferent selection, i.e. its Hall
/// partition has as many blocks as `F(X)` has values.
pub fn has_unique_selection(f: &FiniteMapping) -> Result<bool> {
    Ok(match compute_hall_partition(f)? {
        HallOutcome::Partition(p) => p.len() == f.image_of_set(f.domain())?.len(),
        HallOutcome::Violation(_) => false,
    })
}

/// One alldifferent selection, built with least-index choices.
pub fn extract_selection(f: &FiniteMapping) -> Result<std::result::Result<Selection, HallViolation>> {
    extract_selection_with(f, &LeastIndex)
}

/// Walks the Hall partition block by block: fixes a point and a value of
/// its residual image, then reruns the method on the rest of the block
/// with that value removed, until the block is exhausted.
pub fn extract_selection_with(
    f: &FiniteMapping,
    picker: &dyn Picker,
) -> Result<std::result::Result<Selection, HallViolation>> {
    let mut assignment = vec![usize::MAX; f.x_len()];
    match run_method_on_view(f, f.domain(), YSubset::empty(), MethodOptions::default())? {
        ViewOutcome::Violation(witness) => return Ok(Err(HallViolation { witness })),
        ViewOutcome::Partition { blocks, .. } => {
            let mut removed = YSubset::empty();
            for block in blocks {
                select_in_block(f, block, removed, picker, &mut assignment)?;
                removed = removed | f.image_of_set(block)?;
            }
        }
    }
    debug_assert!(assignment.iter().all(|&y| y != usize::MAX));
    Ok(Ok(Selection::new(assignment)))
}

/// `block` is a non-reducible set of `x -> F(x) \ removed` with nonempty
/// images, so puncturing it at any `(x, y)` keeps the Hall condition.
fn select_in_block(
    f: &FiniteMapping,
    block: XSubset,
    removed: YSubset,
    picker: &dyn Picker,
    assignment: &mut [usize],
) -> Result<()> {
    let x = picker.pick_x(f, block);
    let candidates = f.image(x) - removed;
    let y = picker.pick_y(f, x, candidates);
    assert!(candidates.contains(y), "picker chose a value outside the residual image");
    assignment[x] = y;

    let rest = block - XSubset::singleton(x);
    if rest.is_empty() {
        return Ok(());
    }
    let removed = removed | YSubset::singleton(y);
    match run_method_on_view(f, rest, removed, MethodOptions::default())? {
        ViewOutcome::Partition { blocks, .. } => {
            let mut inner_removed = removed;
            for inner in blocks {
                select_in_block(f, inner, inner_removed, picker, assignment)?;
                inner_removed = inner_removed | f.union_of_images(inner);
            }
            Ok(())
        }
        ViewOutcome::Violation(w) => unreachable!(
            "punctured non-reducible block lost the Hall condition at {}",
            f.format_x_set(w)
        ),
    }
}

/// `F_{{x},{y}}` for `y ∈ F(x)`.
pub fn punctured_mapping(f: &FiniteMapping, x: usize, y: usize) -> Result<FiniteMapping> {
    if x >= f.x_len() {
        return Err(Error::Domain(format!("#{x} of X")));
    }
    if !f.image(x).contains(y) {
        return Err(Error::Domain(format!(
            "{} is not in the image of {}",
            if y < f.y_len() { f.y_label(y) } else { "?" },
            f.x_label(x)
        )));
    }
    f.complement(XSubset::singleton(x), YSubset::singleton(y))
}
