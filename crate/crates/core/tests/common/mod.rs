#![allow(dead_code)]

use alldiff_kernel::oracle::enumerate_selections;
use alldiff_kernel::sudoku::SudokuGrid;
use alldiff_kernel::{FiniteMapping, YSubset};
use rand::seq::SliceRandom;
use rand::Rng;

/// All 512 mappings with `X = Y = {1, 2, 3}`.
pub fn universe3() -> Vec<FiniteMapping> {
    (0..512u64)
        .map(|code| {
            let images = (0..3)
                .map(|x| YSubset::from_bits(code >> (3 * x) & 0b111))
                .collect();
            FiniteMapping::numbered(3, images).unwrap()
        })
        .collect()
}

/// `#X` in `1..=max_x`, `#Y` in `1..=max_y`, and every pair present with a
/// probability drawn uniformly from `[0, 1]`.
pub fn random_mapping<R: Rng>(rng: &mut R, max_x: usize, max_y: usize) -> FiniteMapping {
    let nx = rng.gen_range(1..=max_x);
    let ny = rng.gen_range(1..=max_y);
    let density: f64 = rng.gen();
    let images = (0..nx)
        .map(|_| (0..ny).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    FiniteMapping::numbered(ny, images).unwrap()
}

/// Rejection-samples a mapping that has an alldifferent selection.
pub fn random_hall_mapping<R: Rng>(rng: &mut R, max_x: usize, max_y: usize) -> FiniteMapping {
    loop {
        let f = random_mapping(rng, max_x, max_y);
        if !enumerate_selections(&f).unwrap().is_empty() {
            return f;
        }
    }
}

/// The same mapping with `X` and `Y` listed in random orders.
pub fn relabel<R: Rng>(f: &FiniteMapping, rng: &mut R) -> FiniteMapping {
    let mut x_order: Vec<usize> = (0..f.x_len()).collect();
    let mut y_order: Vec<usize> = (0..f.y_len()).collect();
    x_order.shuffle(rng);
    y_order.shuffle(rng);
    let mut y_pos = vec![0; f.y_len()];
    for (new, &old) in y_order.iter().enumerate() {
        y_pos[old] = new;
    }
    let xs = x_order.iter().map(|&x| f.x_label(x).to_owned()).collect();
    let ys = y_order.iter().map(|&y| f.y_label(y).to_owned()).collect();
    let images = x_order
        .iter()
        .map(|&x| f.image(x).iter().map(|y| y_pos[y]).collect())
        .collect();
    FiniteMapping::new(xs, ys, images).unwrap()
}

/// Labels of the members of each image.
pub fn image_labels(f: &FiniteMapping, images: &[YSubset]) -> Vec<Vec<String>> {
    images
        .iter()
        .map(|im| im.iter().map(|y| f.y_label(y).to_owned()).collect())
        .collect()
}

/// value(r, c) = ((3 (r-1 mod 3) + floor((r-1)/3) + (c-1)) mod 9) + 1
pub fn canonical_line() -> String {
    let mut s = String::with_capacity(81);
    for r in 0..9 {
        for c in 0..9 {
            s.push((b'1' + ((3 * (r % 3) + r / 3 + c) % 9) as u8) as char);
        }
    }
    s
}

pub fn canonical_value(cell: usize) -> u8 {
    canonical_line().as_bytes()[cell] - b'0'
}

/// The canonical grid with `k` distinct random cells blanked.
pub fn blanked_canonical<R: Rng>(rng: &mut R, k: usize) -> (SudokuGrid, Vec<usize>) {
    let mut cells: Vec<usize> = (0..81).collect();
    cells.shuffle(rng);
    cells.truncate(k);
    let mut text: Vec<u8> = canonical_line().into_bytes();
    for &c in &cells {
        text[c] = b'.';
    }
    let grid = SudokuGrid::parse(std::str::from_utf8(&text).unwrap()).unwrap();
    (grid, cells)
}
