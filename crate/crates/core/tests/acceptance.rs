//! Acceptance criteria. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use alldiff_kernel::oracle::{critical_sets, enumerate_selections, oracle_hall_check, oracle_kernel};
use alldiff_kernel::partition::HallOutcome;
use alldiff_kernel::sudoku::{cell_at, units, Digits, SudokuGrid};
use alldiff_kernel::{
    alldifferent_kernel, check_hall, compute_hall_partition, compute_hall_partition_with,
    has_unique_selection, is_alldifferent, partitions_equal_up_to_renumbering, punctured_mapping,
    verify_partition, ExitKind, FiniteMapping, HallPartition, MethodOptions, XSubset, YSubset,
};
use common::{blanked_canonical, canonical_value, random_hall_mapping, random_mapping, relabel, universe3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The 512-instance universe followed by 10,000 random instances with
/// `#X, #Y <= 7`.
fn combined_universe() -> Vec<FiniteMapping> {
    let mut r = rng(2);
    let mut all = universe3();
    all.extend((0..10_000).map(|_| random_mapping(&mut r, 7, 7)));
    all
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let elapsed = start.elapsed();
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut discrepancies = 0;
    let mut satisfiable = 0;
    for f in universe3() {
        let hall = check_hall(&f).unwrap().is_ok();
        let partition = compute_hall_partition(&f).unwrap().partition().is_some();
        let selections = !enumerate_selections(&f).unwrap().is_empty();
        let oracle_hall = oracle_hall_check(&f).unwrap().is_ok();
        if !(hall == partition && partition == selections && selections == oracle_hall) {
            discrepancies += 1;
        }
        satisfiable += hall as usize;
    }
    within(Duration::from_secs(5), start)?;
    if discrepancies == 0 {
        Ok(format!("512 mappings, {satisfiable} with a selection, 0 discrepancies"))
    } else {
        Err(format!("{discrepancies} discrepancies"))
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let universe = combined_universe();
    let mut discrepancies = 0;
    for f in &universe {
        let kernel = alldifferent_kernel(f).unwrap();
        let oracle = oracle_kernel(f).unwrap();
        if kernel.images() != oracle.images() {
            discrepancies += 1;
        }
    }
    within(Duration::from_secs(60), start)?;
    if discrepancies == 0 {
        Ok(format!("{} mappings, 0 discrepancies", universe.len()))
    } else {
        Err(format!("{discrepancies} discrepancies"))
    }
}

fn partition_of(f: &FiniteMapping) -> HallPartition {
    compute_hall_partition(f)
        .unwrap()
        .partition()
        .cloned()
        .expect("Hall-satisfying mapping")
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut r = rng(3);
    let mut discrepancies = 0;
    for _ in 0..1_000 {
        let f = random_hall_mapping(&mut r, 7, 7);
        let p = partition_of(&f);
        for _ in 0..20 {
            let g = relabel(&f, &mut r);
            let q = partition_of(&g);
            if !partitions_equal_up_to_renumbering(&p, &q) || p.block_family() != q.block_family() {
                discrepancies += 1;
            }
        }
    }
    within(Duration::from_secs(60), start)?;
    if discrepancies == 0 {
        Ok("1000 instances x 20 relabelings, 0 discrepancies".into())
    } else {
        Err(format!("{discrepancies} discrepancies"))
    }
}

fn structural_failures(f: &FiniteMapping, p: &HallPartition) -> Vec<&'static str> {
    let mut failures = Vec::new();
    let residuals = p.residual_images();
    let total = f.image_of_set(f.domain()).unwrap().len();

    let mut union = YSubset::empty();
    let mut disjoint = true;
    for &r in residuals {
        disjoint &= r.is_disjoint(union);
        union = union | r;
    }
    if !disjoint {
        failures.push("residual images overlap");
    }
    if residuals.iter().map(|r| r.len()).sum::<usize>() != total {
        failures.push("residual sizes do not sum to #F(X)");
    }
    let mut prefix = XSubset::empty();
    for (i, &b) in p.blocks().iter().enumerate() {
        if i >= 1 && !f.is_critical(prefix).unwrap() {
            failures.push("prefix union not critical");
        }
        prefix = prefix | b;
    }
    let critical_exit = p.exit_kind() == ExitKind::LastBlockCritical;
    if critical_exit != (total == f.x_len()) {
        failures.push("exit kind disagrees with #F(X) = #X");
    }
    if !critical_exit && total <= f.x_len() {
        failures.push("non-critical exit without #F(X) > #X");
    }
    if !verify_partition(f, p).unwrap() {
        failures.push("verify_partition rejected");
    }
    failures
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut failures = BTreeSet::new();
    for f in combined_universe() {
        if let HallOutcome::Partition(p) = compute_hall_partition(&f).unwrap() {
            failures.extend(structural_failures(&f, &p));
            checked += 1;
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} partitions, 0 failures"))
    } else {
        Err(format!("{failures:?}"))
    }
}

fn criterion_5() -> Outcome {
    let mut discrepancies = 0;
    let mut unique = 0;
    for f in combined_universe() {
        let count = enumerate_selections(&f).unwrap().len();
        let claimed = has_unique_selection(&f).unwrap();
        if (count == 1) != claimed {
            discrepancies += 1;
        }
        if claimed {
            unique += 1;
            let p = partition_of(&f);
            if p.len() != f.x_len() || p.blocks().iter().any(|b| b.len() != 1) {
                discrepancies += 1;
            }
        }
    }
    if discrepancies == 0 {
        Ok(format!("{unique} mappings with a unique selection, 0 discrepancies"))
    } else {
        Err(format!("{discrepancies} discrepancies"))
    }
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut failures = 0;
    let mut pairs = 0usize;
    for _ in 0..1_000 {
        let f = random_hall_mapping(&mut r, 7, 7);
        let critical = critical_sets(&f).unwrap();
        for &v in &critical {
            for &w in &critical {
                pairs += 1;
                let (fv, fw) = (f.image_of_set(v).unwrap(), f.image_of_set(w).unwrap());
                let meet = v & w;
                let join = v | w;
                let meet_ok = meet.len() == f.image_of_set(meet).unwrap().len()
                    && meet.len() == (fv & fw).len();
                let join_ok = join.len() == f.image_of_set(join).unwrap().len()
                    && join.len() == (fv | fw).len();
                if !(meet_ok && join_ok) {
                    failures += 1;
                }
            }
        }
    }
    if failures == 0 {
        Ok(format!("{pairs} pairs of critical sets, 0 failures"))
    } else {
        Err(format!("{failures} failures"))
    }
}

fn clause_ii(f: &FiniteMapping) -> bool {
    if enumerate_selections(f).unwrap().is_empty() {
        return false;
    }
    critical_sets(f).unwrap().into_iter().all(|w| {
        let inside = f.image_of_set(w).unwrap();
        let outside = f.image_of_set(f.domain() - w).unwrap();
        inside.is_disjoint(outside)
    })
}

fn puncture_check(f: &FiniteMapping) -> bool {
    f.images().iter().all(|im| !im.is_empty())
        && (0..f.x_len()).all(|x| {
            f.image(x).iter().all(|y| {
                let g = punctured_mapping(f, x, y).unwrap();
                check_hall(&g).unwrap().is_ok()
            })
        })
}

fn criterion_7() -> Outcome {
    let mut discrepancies = 0;
    let mut alldifferent = 0;
    for f in universe3() {
        let a = is_alldifferent(&f).unwrap();
        let b = clause_ii(&f);
        let c = puncture_check(&f);
        if !(a == b && b == c) {
            discrepancies += 1;
        }
        alldifferent += a as usize;
    }
    if discrepancies == 0 {
        Ok(format!("512 mappings, {alldifferent} alldifferent, 0 discrepancies"))
    } else {
        Err(format!("{discrepancies} discrepancies"))
    }
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut discrepancies = 0;
    for _ in 0..1_000 {
        let f = random_mapping(&mut r, 6, 6);
        let pruned = compute_hall_partition_with(&f, MethodOptions { prune: true }).unwrap();
        let plain = compute_hall_partition_with(&f, MethodOptions { prune: false }).unwrap();
        let same = match (&pruned, &plain) {
            (HallOutcome::Partition(p), HallOutcome::Partition(q)) => {
                p.block_family() == q.block_family() && p == q
            }
            (HallOutcome::Violation(v), HallOutcome::Violation(w)) => v == w,
            _ => false,
        };
        if !same {
            discrepancies += 1;
        }
    }
    if discrepancies == 0 {
        Ok("1000 instances, 0 discrepancies".into())
    } else {
        Err(format!("{discrepancies} discrepancies"))
    }
}

fn sudoku_violations(grid: &SudokuGrid) -> Vec<String> {
    let mut out = Vec::new();
    let fixpoint = match grid.propagate() {
        Ok(g) => g,
        Err(c) => return vec![format!("unexpected contradiction: {c}")],
    };
    for cell in 0..81 {
        let truth = canonical_value(cell);
        let kept = match fixpoint.given(cell) {
            Some(d) => d == truth,
            None => fixpoint.candidates(cell).contains(truth),
        };
        if !kept {
            out.push(format!("true value removed at cell {cell}"));
        }
    }
    if fixpoint.propagate().as_ref() != Ok(&fixpoint) {
        out.push("fixpoint not idempotent".into());
    }
    for unit in units() {
        if let Ok(f) = fixpoint.unit_mapping(unit) {
            if check_hall(&f).unwrap().is_err() {
                out.push(format!("{unit} fails the Hall condition"));
            }
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut r = rng(9);
    let mut violations = Vec::new();
    for k in [20, 40, 55] {
        for _ in 0..100 {
            let (grid, _) = blanked_canonical(&mut r, k);
            violations.extend(sudoku_violations(&grid));
        }
    }
    within(Duration::from_secs(30), start)?;
    if violations.is_empty() {
        Ok("300 blanked grids, 0 violations".into())
    } else {
        Err(format!("{} violations, first: {}", violations.len(), violations[0]))
    }
}

/// Row 1 is `. . . 4 5 6 7 8 9`, and 3s at (4,1) and (7,2) leave
/// (1,1) and (1,2) with {1,2} while (1,3) keeps {1,2,3}.
pub fn naked_pair_grid() -> SudokuGrid {
    let mut text = vec![b'.'; 81];
    for (i, d) in (4..=9u8).enumerate() {
        text[3 + i] = b'0' + d;
    }
    text[cell_at(4, 1)] = b'3';
    text[cell_at(7, 2)] = b'3';
    SudokuGrid::parse(std::str::from_utf8(&text).unwrap()).unwrap()
}

fn criterion_10() -> Outcome {
    let mut grid = naked_pair_grid();
    let (a, b, c) = (cell_at(1, 1), cell_at(1, 2), cell_at(1, 3));
    let pair: Digits = [1, 2].into_iter().collect();
    let triple: Digits = [1, 2, 3].into_iter().collect();
    if grid.candidates(a) != pair || grid.candidates(b) != pair || grid.candidates(c) != triple {
        return Err(format!(
            "unexpected markups {:?} {:?} {:?}",
            grid.candidates(a),
            grid.candidates(b),
            grid.candidates(c)
        ));
    }
    grid.sweep(units()).map_err(|e| e.to_string())?;
    match grid.given(c) {
        Some(3) => Ok("(1,3) = 3 after one sweep".into()),
        other => Err(format!("(1,3) is {other:?}")),
    }
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("1 marriage-theorem equivalence (exhaustive 3x3)", criterion_1),
        ("2 kernel equals oracle kernel", criterion_2),
        ("3 partition unique up to renumbering", criterion_3),
        ("4 partition structural invariants", criterion_4),
        ("5 unique-selection criterion", criterion_5),
        ("6 critical-set intersection/union counts", criterion_6),
        ("7 alldifferent-predicate equivalences", criterion_7),
        ("8 pruning soundness", criterion_8),
        ("9 sudoku soundness", criterion_9),
        ("10 sudoku naked-pair deduction", criterion_10),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("criterion {name}: PASS ({detail}; {:.2?})", start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
