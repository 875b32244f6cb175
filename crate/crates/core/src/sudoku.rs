//! Sudoku as 27 alldifferent constraints.
//!
//! Every unpopulated cell carries a markup, the digits not excluded by a
//! given in its row, column or block. Propagation restricts each unit to its
//! unpopulated cells, computes the alldifferent kernel of the resulting
//! mapping and keeps only kernel values. Cells left with a single candidate
//! become givens. This repeats over all units until nothing changes.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::kernel::alldifferent_kernel;
use crate::mapping::FiniteMapping;
use crate::subset::YSubset;

pub const CELLS: usize = 81;

/// Digits 1..=9 as bits 1..=9.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Digits(u16);

impl Digits {
    pub const ALL: Digits = Digits(0b11_1111_1110);
    pub const NONE: Digits = Digits(0);

    pub fn single(d: u8) -> Digits {
        debug_assert!((1..=9).contains(&d));
        Digits(1 << d)
    }

    pub fn contains(self, d: u8) -> bool {
        self.0 >> d & 1 == 1
    }

    pub fn insert(&mut self, d: u8) {
        self.0 |= 1 << d;
    }

    pub fn remove(&mut self, d: u8) {
        self.0 &= !(1 << d);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Digits) -> bool {
        self.0 & !other.0 == 0
    }

    /// The digit when exactly one is present.
    pub fn only(self) -> Option<u8> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as u8)
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        (1..=9).filter(move |&d| self.contains(d))
    }
}

impl fmt::Debug for Digits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u8> for Digits {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut d = Digits::NONE;
        for x in iter {
            d.insert(x);
        }
        d
    }
}

pub fn row_of(cell: usize) -> usize {
    cell / 9
}

pub fn column_of(cell: usize) -> usize {
    cell % 9
}

pub fn block_of(cell: usize) -> usize {
    row_of(cell) / 3 * 3 + column_of(cell) / 3
}

/// Cell index from 1-based coordinates.
pub fn cell_at(row: usize, column: usize) -> usize {
    assert!((1..=9).contains(&row) && (1..=9).contains(&column));
    (row - 1) * 9 + (column - 1)
}

/// `(row,column)`, 1-based.
pub fn cell_label(cell: usize) -> String {
    format!("({},{})", row_of(cell) + 1, column_of(cell) + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnitKind {
    Row,
    Column,
    Block,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Unit {
    pub kind: UnitKind,
    /// 1-based; blocks are numbered row-major.
    pub index: usize,
    pub cells: [usize; 9],
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            UnitKind::Row => "row",
            UnitKind::Column => "column",
            UnitKind::Block => "block",
        };
        write!(f, "{kind} {}", self.index)
    }
}

/// Rows 1..9, then columns 1..9, then blocks 1..9.
pub fn units() -> &'static [Unit; 27] {
    static UNITS: OnceLock<[Unit; 27]> = OnceLock::new();
    UNITS.get_or_init(|| {
        std::array::from_fn(|u| {
            let (kind, i) = (u / 9, u % 9);
            let cells = std::array::from_fn(|k| match kind {
                0 => i * 9 + k,
                1 => k * 9 + i,
                _ => (i / 3 * 3 + k / 3) * 9 + i % 3 * 3 + k % 3,
            });
            let kind = [UnitKind::Row, UnitKind::Column, UnitKind::Block][kind];
            Unit {
                kind,
                index: i + 1,
                cells,
            }
        })
    })
}

/// The three units containing `cell`.
pub fn units_of(cell: usize) -> [&'static Unit; 3] {
    let all = units();
    [
        &all[row_of(cell)],
        &all[9 + column_of(cell)],
        &all[18 + block_of(cell)],
    ]
}

/// Cells sharing a unit with `cell`, excluding `cell` itself.
fn peers(cell: usize) -> impl Iterator<Item = usize> {
    units_of(cell)
        .into_iter()
        .flat_map(|u| u.cells)
        .filter(move |&c| c != cell)
}

/// Propagation reached an impossible state.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Contradiction {
    #[error("{} has no candidates left", cell_label(*.0))]
    EmptyCell(usize),

    #[error("{unit} admits no alldifferent assignment: cells {} share fewer digits", format_cells(.witness))]
    Unit { unit: Unit, witness: Vec<usize> },
}

fn format_cells(cells: &[usize]) -> String {
    let labels: Vec<String> = cells.iter().map(|&c| cell_label(c)).collect();
    format!("{{{}}}", labels.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("expected 81 cells, found {0}")]
    Length(usize),

    #[error("unexpected character {ch:?} at {}", cell_label(*.cell))]
    BadChar { cell: usize, ch: char },

    #[error("digit {digit} is given twice in {unit} (at {})", cell_label(*.cell))]
    DuplicateGiven { unit: Unit, digit: u8, cell: usize },

    #[error(transparent)]
    Contradiction(#[from] Contradiction),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("the grid has no solution")]
pub struct Unsolvable;

#[derive(Clone, PartialEq, Eq)]
pub struct SudokuGrid {
    givens: [Option<u8>; CELLS],
    candidates: [Digits; CELLS],
}

pub(crate) fn is_layout(c: char) -> bool {
    c.is_whitespace() || matches!(c, '|' | '-' | '+')
}

impl SudokuGrid {
    /// Reads 81 cells (`1`-`9` given, `.` or `0` blank), ignoring whitespace
    /// and the `|`, `-`, `+` separators of [`SudokuGrid::render`].
    pub fn parse(text: &str) -> std::result::Result<SudokuGrid, GridError> {
        let chars: Vec<char> = text.chars().filter(|&c| !is_layout(c)).collect();
        if chars.len() != CELLS {
            return Err(GridError::Length(chars.len()));
        }
        let mut givens = [None; CELLS];
        for (cell, &ch) in chars.iter().enumerate() {
            givens[cell] = match ch {
                '.' | '0' => None,
                '1'..='9' => Some(ch as u8 - b'0'),
                _ => return Err(GridError::BadChar { cell, ch }),
            };
        }
        Self::from_givens(givens)
    }

    pub fn from_givens(givens: [Option<u8>; CELLS]) -> std::result::Result<SudokuGrid, GridError> {
        for unit in units() {
            let mut seen = Digits::NONE;
            for &cell in &unit.cells {
                if let Some(d) = givens[cell] {
                    if seen.contains(d) {
                        return Err(GridError::DuplicateGiven {
                            unit: *unit,
                            digit: d,
                            cell,
                        });
                    }
                    seen.insert(d);
                }
            }
        }
        let grid = SudokuGrid {
            givens,
            candidates: [Digits::ALL; CELLS],
        };
        Ok(grid.compute_markups()?)
    }

    /// Recomputes every markup from the givens alone.
    pub fn compute_markups(&self) -> std::result::Result<SudokuGrid, Contradiction> {
        let mut candidates = [Digits::NONE; CELLS];
        for (cell, slot) in candidates.iter_mut().enumerate() {
            *slot = match self.givens[cell] {
                Some(d) => Digits::single(d),
                None => {
                    let mut markup = Digits::ALL;
                    for p in peers(cell) {
                        if let Some(d) = self.givens[p] {
                            markup.remove(d);
                        }
                    }
                    if markup.is_empty() {
                        return Err(Contradiction::EmptyCell(cell));
                    }
                    markup
                }
            };
        }
        Ok(SudokuGrid {
            givens: self.givens,
            candidates,
        })
    }

    pub fn given(&self, cell: usize) -> Option<u8> {
        self.givens[cell]
    }

    pub fn candidates(&self, cell: usize) -> Digits {
        self.candidates[cell]
    }

    /// Replaces the candidates of an unpopulated cell. Used to set up
    /// markups that are not implied by the givens alone.
    pub fn restrict_candidates(&mut self, cell: usize, digits: Digits) {
        assert!(self.givens[cell].is_none(), "cell is already given");
        self.candidates[cell] = self.candidates[cell] & digits;
    }

    pub fn unpopulated(&self) -> impl Iterator<Item = usize> + '_ {
        (0..CELLS).filter(|&c| self.givens[c].is_none())
    }

    pub fn is_solved(&self) -> bool {
        self.givens.iter().all(Option::is_some)
    }

    /// All 81 cells given and every unit holds each digit once.
    pub fn is_valid_solution(&self) -> bool {
        self.is_solved()
            && units().iter().all(|u| {
                u.cells.iter().filter_map(|&c| self.givens[c]).collect::<Digits>() == Digits::ALL
            })
    }

    /// The mapping `F|X` on the unpopulated cells `X` of `unit`, with `Y` the
    /// union of their candidates.
    pub fn unit_mapping(&self, unit: &Unit) -> Result<FiniteMapping> {
        let open: Vec<usize> = unit
            .cells
            .iter()
            .copied()
            .filter(|&c| self.givens[c].is_none())
            .collect();
        if open.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let union: Digits = open.iter().flat_map(|&c| self.candidates[c].iter()).collect();
        let digits: Vec<u8> = union.iter().collect();
        let images = open
            .iter()
            .map(|&c| {
                self.candidates[c]
                    .iter()
                    .map(|d| digits.iter().position(|&u| u == d).expect("digit in union"))
                    .collect::<YSubset>()
            })
            .collect();
        FiniteMapping::new(
            open.iter().map(|&c| cell_label(c)).collect(),
            digits.iter().map(|d| d.to_string()).collect(),
            images,
        )
    }

    /// Makes `digit` the given of `cell` and strikes it from every peer.
    pub fn assign(&mut self, cell: usize, digit: u8) -> std::result::Result<(), Contradiction> {
        if !self.candidates[cell].contains(digit) {
            return Err(Contradiction::EmptyCell(cell));
        }
        self.givens[cell] = Some(digit);
        self.candidates[cell] = Digits::single(digit);
        for p in peers(cell) {
            if self.givens[p] == Some(digit) {
                return Err(Contradiction::EmptyCell(p));
            }
            if self.givens[p].is_none() {
                self.candidates[p].remove(digit);
                if self.candidates[p].is_empty() {
                    return Err(Contradiction::EmptyCell(p));
                }
            }
        }
        Ok(())
    }

    fn promote_singletons(&mut self) -> std::result::Result<bool, Contradiction> {
        let mut changed = false;
        loop {
            let next = (0..CELLS).find(|&c| self.givens[c].is_none() && self.candidates[c].len() == 1);
            match next {
                Some(cell) => {
                    let d = self.candidates[cell].only().expect("singleton");
                    self.assign(cell, d)?;
                    changed = true;
                }
                None => return Ok(changed),
            }
        }
    }

    /// One pass over `order`: intersect each unit's markups with its
    /// alldifferent kernel and promote singletons. Returns whether anything
    /// changed.
    pub fn sweep(&mut self, order: &[Unit]) -> std::result::Result<bool, Contradiction> {
        let mut changed = self.promote_singletons()?;
        for unit in order {
            let mapping = match self.unit_mapping(unit) {
                Ok(m) => m,
                Err(Error::EmptyDomain) => continue,
                Err(e) => unreachable!("unit mapping is within bounds: {e}"),
            };
            let kernel = alldifferent_kernel(&mapping).expect("units have at most 9 cells");
            let open: Vec<usize> = unit
                .cells
                .iter()
                .copied()
                .filter(|&c| self.givens[c].is_none())
                .collect();
            if let Some(v) = kernel.witness() {
                return Err(Contradiction::Unit {
                    unit: *unit,
                    witness: v.witness.iter().map(|x| open[x]).collect(),
                });
            }
            for (x, &cell) in open.iter().enumerate() {
                let keep: Digits = kernel
                    .image(x)
                    .iter()
                    .map(|y| mapping.y_label(y).parse::<u8>().expect("digit label"))
                    .collect();
                let narrowed = self.candidates[cell] & keep;
                if narrowed != self.candidates[cell] {
                    if narrowed.is_empty() {
                        return Err(Contradiction::EmptyCell(cell));
                    }
                    self.candidates[cell] = narrowed;
                    changed = true;
                }
            }
            changed |= self.promote_singletons()?;
        }
        Ok(changed)
    }

    /// Sweeps rows, columns and blocks until a fixpoint.
    pub fn propagate(&self) -> std::result::Result<SudokuGrid, Contradiction> {
        self.propagate_in_order(units())
    }

    pub fn propagate_in_order(&self, order: &[Unit]) -> std::result::Result<SudokuGrid, Contradiction> {
        let mut grid = self.clone();
        while grid.sweep(order)? {}
        Ok(grid)
    }

    /// Propagation plus depth-first branching on a cell with the fewest
    /// candidates (first in row-major order), trying digits in increasing
    /// order.
    pub fn solve(&self) -> std::result::Result<SudokuGrid, Unsolvable> {
        let grid = self.propagate().map_err(|_| Unsolvable)?;
        if grid.is_solved() {
            return Ok(grid);
        }
        let cell = grid
            .unpopulated()
            .min_by_key(|&c| grid.candidates[c].len())
            .expect("unsolved grid has an open cell");
        for d in grid.candidates[cell].iter() {
            let mut branch = grid.clone();
            if branch.assign(cell, d).is_err() {
                continue;
            }
            if let Ok(solved) = branch.solve() {
                return Ok(solved);
            }
        }
        Err(Unsolvable)
    }

    /// 81 characters, `.` for unpopulated cells.
    pub fn to_line(&self) -> String {
        self.givens
            .iter()
            .map(|g| g.map_or('.', |d| (b'0' + d) as char))
            .collect()
    }

    /// 9x9 rendering with block separators.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in 0..9 {
            if r == 3 || r == 6 {
                out.push_str("------+-------+------\n");
            }
            for c in 0..9 {
                if c == 3 || c == 6 {
                    out.push_str(" |");
                }
                if c > 0 {
                    out.push(' ');
                }
                out.push(self.givens[r * 9 + c].map_or('.', |d| (b'0' + d) as char));
            }
            out.push('\n');
        }
        out
    }
}

impl std::ops::BitAnd for Digits {
    type Output = Digits;
    fn bitand(self, rhs: Digits) -> Digits {
        Digits(self.0 & rhs.0)
    }
}

impl fmt::Debug for SudokuGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}
