//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. Set `POLYFORMS_EXTENDED=1` to also run the
//! rectified cubic n = 10 tier.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use polyforms::canonical::{canonical_candidates, format_cells, parse_cells};
use polyforms::packing::{parse_instance, solve_pack, verify_solution, Instance, PackOptions, SearchMode, StopReason};
use polyforms::tiling::{checks, validate, BUILTIN_NAMES, DEFAULT_RADIUS};
use polyforms::{
    brute_oracle, builtin, canonical_form, enumerate_counts, AffineMap, EnumerateOptions, Point, SymmetryMode,
    TilingSpec,
};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn free_counts(name: &str, n: usize, opts: &EnumerateOptions) -> Result<Vec<u64>, String> {
    let spec = builtin(name).map_err(|e| e.to_string())?;
    enumerate_counts(&spec, SymmetryMode::Free, n, opts).map(|r| r.count_values()).map_err(|e| e.to_string())
}

fn table_row(name: &str, expected: &[u64], budget: Duration, opts: &EnumerateOptions) -> Outcome {
    let t = Instant::now();
    let got = free_counts(name, expected.len(), opts)?;
    let took = t.elapsed();
    ensure(got == expected, || format!("{name}: got {got:?}, expected {expected:?}"))?;
    ensure(took <= budget, || format!("{name}: {took:.1?} exceeds {budget:?}"))?;
    Ok(format!("{name} {got:?} in {took:.2?}"))
}

fn c1() -> Outcome {
    let single = EnumerateOptions { threads: Some(1), ..Default::default() };
    table_row("snub-trihexagonal", &[3, 3, 7, 23, 69, 228, 766], Duration::from_secs(10), &single)
}

fn c2() -> Outcome {
    let row = table_row("cubic", &[1, 1, 2, 7, 23, 112, 607], Duration::from_secs(60), &Default::default())?;
    let t = Instant::now();
    let ten = free_counts("cubic", 10, &Default::default())?;
    let took = t.elapsed();
    ensure(ten[9] == 178_083, || format!("cubic n=10: got {}", ten[9]))?;
    ensure(took <= Duration::from_secs(120), || format!("cubic n=10 took {took:.1?}"))?;
    Ok(format!("{row}; n=10 {} in {took:.2?}", ten[9]))
}

fn c3() -> Outcome {
    table_row("tet-oct", &[2, 1, 4, 9, 44, 195, 1186], Duration::from_secs(60), &Default::default())
}

fn c4() -> Outcome {
    table_row("rectified-cubic", &[2, 2, 9, 40, 290, 2529, 26629], Duration::from_secs(300), &Default::default())
}

fn c4_extended() -> Option<Outcome> {
    if std::env::var("POLYFORMS_EXTENDED").as_deref() != Ok("1") {
        return None;
    }
    let t = Instant::now();
    let opts = EnumerateOptions { pruned: true, ..Default::default() };
    Some(free_counts("rectified-cubic", 10, &opts).and_then(|c| {
        ensure(c[9] == 43_305_326, || format!("rectified-cubic n=10: got {}", c[9]))?;
        Ok(format!("rectified-cubic n=10 {} in {:.1?}", c[9], t.elapsed()))
    }))
}

fn c5() -> Outcome {
    table_row("truncated-octahedral", &[1, 2, 6, 35, 251, 2602, 30900], Duration::from_secs(300), &Default::default())
}

fn c6() -> Outcome {
    table_row("disphenoid", &[1, 1, 2, 5, 14, 47, 172], Duration::from_secs(60), &Default::default())
}

fn c7() -> Outcome {
    let mut out = Vec::new();
    for (name, n, expected) in [("cubic", 6, 166), ("truncated-octahedral", 4, 44), ("tet-oct", 4, 11)] {
        let spec = builtin(name).map_err(|e| e.to_string())?;
        let r = enumerate_counts(&spec, SymmetryMode::OneSided, n, &Default::default()).map_err(|e| e.to_string())?;
        let got = r.count(n).unwrap_or(0);
        ensure(got == expected, || format!("{name} one-sided n={n}: got {got}, expected {expected}"))?;
        out.push(format!("{name}({n})={got}"));
    }
    Ok(out.join(", "))
}

fn c8() -> Outcome {
    let spec = builtin("snub-trihexagonal").map_err(|e| e.to_string())?;
    let p = parse_cells("-10/21,8/21;0,0").map_err(|e| e.to_string())?;
    let candidates: Vec<String> = canonical_candidates(&spec, &p, SymmetryMode::Free)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|(_, c)| format_cells(&c))
        .collect();
    let expected =
        ["11/21,8/21;1,0", "19/21,10/21;1,0", "0,0;8/21,2/21", "0,1;10/21,13/21", "0,1;2/21,11/21", "13/21,19/21;1,1"];
    ensure(candidates == expected, || format!("candidates {candidates:?}"))?;
    let name = canonical_form(&spec, &p, SymmetryMode::Free).map_err(|e| e.to_string())?.to_string();
    ensure(name == "0,0;8/21,2/21", || format!("canonical name {name}"))?;
    let r =
        enumerate_counts(&spec, SymmetryMode::Free, 2, &EnumerateOptions { retain_forms: true, ..Default::default() })
            .map_err(|e| e.to_string())?;
    let level2: Vec<String> = r.levels[1].forms.as_ref().unwrap().iter().map(|f| f.to_string()).collect();
    let names = ["0,0;8/21,2/21", "2/21,11/21;1/3,1/3", "8/21,23/21;13/21,19/21"];
    ensure(level2 == names, || format!("level 2 names {level2:?}"))?;
    Ok(format!("6 candidates, canonical {name}, level 2 {level2:?}"))
}

/// Canonical invariance and idempotence, plus neighbor translation
/// equivariance, on deterministic random polyforms.
fn randomized(spec: &TilingSpec, cases: u32) -> Result<(), String> {
    let mut runner = TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let k = spec.orientations().len();
    let strategy = (
        common::polyform_strategy(spec.clone(), 7),
        0..k,
        proptest::collection::vec(-4i64..4, spec.dim()),
        proptest::sample::select(SymmetryMode::ALL.to_vec()),
    );
    runner
        .run(&strategy, |(cells, g, t, mode)| {
            let shift = Point::from_ints(&t);
            let g = &spec.orientations()[g];
            let allowed = spec.mode_orientations(mode).iter().any(|&j| spec.orientations()[j].equiv_mod_lattice(g));
            let moved: Vec<Point> = cells
                .iter()
                .map(|c| if allowed { g.apply(c).unwrap() } else { c.clone() }.add(&shift).unwrap())
                .collect();
            let a = canonical_form(spec, &cells, mode).unwrap();
            let b = canonical_form(spec, &moved, mode).unwrap();
            proptest::prop_assert_eq!(a.cells(), b.cells());
            let again = canonical_form(spec, a.cells(), mode).unwrap();
            proptest::prop_assert_eq!(again.cells(), a.cells());
            for p in &cells {
                let mut direct = spec.neighbors(&p.add(&shift).unwrap()).unwrap();
                let mut moved: Vec<Point> = spec.neighbors(p).unwrap().iter().map(|q| q.add(&shift).unwrap()).collect();
                direct.sort();
                moved.sort();
                proptest::prop_assert_eq!(direct, moved);
            }
            Ok(())
        })
        .map_err(|e| format!("{}: {e}", spec.name()))
}

fn c9() -> Outcome {
    let mut checked = 0;
    for name in BUILTIN_NAMES {
        let spec = builtin(name).map_err(|e| e.to_string())?;
        randomized(&spec, 1000)?;
        let report = validate(&spec, DEFAULT_RADIUS).map_err(|e| e.to_string())?;
        for check in [checks::ADJACENCY_SYMMETRY, checks::TOTALITY] {
            ensure(report.check(check).is_some_and(|c| c.passed), || format!("{name}: {check} failed"))?;
        }
        let order = spec.orientations().len() as u64;
        let mut per_mode = Vec::new();
        for mode in SymmetryMode::ALL {
            let oracle = brute_oracle(&spec, mode, 4).map_err(|e| e.to_string())?;
            let base = enumerate_counts(&spec, mode, 6, &Default::default()).map_err(|e| e.to_string())?.count_values();
            ensure(base[..4] == oracle[..], || format!("{name} {mode}: engine {base:?} vs oracle {oracle:?}"))?;
            let pruned = EnumerateOptions { pruned: true, ..Default::default() };
            let p = enumerate_counts(&spec, mode, 6, &pruned).map_err(|e| e.to_string())?.count_values();
            ensure(p == base, || format!("{name} {mode}: pruned {p:?} vs baseline {base:?}"))?;
            let forms = |threads| {
                let opts = EnumerateOptions { retain_forms: true, threads: Some(threads), ..Default::default() };
                enumerate_counts(&spec, mode, 5, &opts).map(|r| r.levels).map_err(|e| e.to_string())
            };
            ensure(forms(1)? == forms(4)?, || format!("{name} {mode}: thread counts disagree"))?;
            let mut os: Vec<AffineMap> = spec.orientations().to_vec();
            os[1..].reverse();
            let permuted = spec.with_orientations(os);
            let q =
                enumerate_counts(&permuted, mode, 5, &EnumerateOptions { retain_forms: true, ..Default::default() })
                    .map_err(|e| e.to_string())?;
            let r = enumerate_counts(&spec, mode, 5, &EnumerateOptions { retain_forms: true, ..Default::default() })
                .map_err(|e| e.to_string())?;
            ensure(q.levels == r.levels, || format!("{name} {mode}: orientation order changes forms"))?;
            per_mode.push(base);
        }
        let (free, one, fixed) = (&per_mode[0], &per_mode[1], &per_mode[2]);
        for i in 0..free.len() {
            ensure(free[i] <= one[i] && one[i] <= fixed[i] && fixed[i] <= order * free[i], || {
                format!("{name} n={}: free {} one-sided {} fixed {}", i + 1, free[i], one[i], fixed[i])
            })?;
        }
        checked += 1;
    }
    Ok(format!("{checked} tilings, 1000 random cases each"))
}

fn load_instance(name: &str) -> Result<Instance, String> {
    let path = common::instances_dir().join(name);
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    parse_instance(&text, path.parent().unwrap()).map_err(|e| e.to_string())
}

fn c10() -> Outcome {
    let inst = load_instance("pentomino-3x20.json")?;
    let t = Instant::now();
    let opts = PackOptions { modulo_symmetry: true, ..Default::default() };
    let r = solve_pack(&inst.spec, &inst.region, &inst.pieces, inst.group, &opts).map_err(|e| e.to_string())?;
    let pent_took = t.elapsed();
    ensure(r.complete() && r.raw_count == 8 && r.modulo_symmetry == Some(2), || {
        format!("pentomino: raw {} modulo {:?} complete {}", r.raw_count, r.modulo_symmetry, r.complete())
    })?;
    ensure(pent_took < Duration::from_secs(60), || format!("pentomino took {pent_took:.1?}"))?;
    let naive = common::naive_pack_count(&inst.spec, &inst.region, &inst.pieces, inst.group.mode());
    ensure(naive == 8, || format!("naive backtracker found {naive}"))?;
    for s in &r.solutions {
        verify_solution(&inst.spec, &inst.region, &inst.pieces, inst.group, s)?;
    }

    let splatt = load_instance("splatt-3x5x8.json")?;
    let t = Instant::now();
    let opts =
        PackOptions { search: SearchMode::First, time_limit: Some(Duration::from_secs(600)), ..Default::default() };
    let r = solve_pack(&splatt.spec, &splatt.region, &splatt.pieces, splatt.group, &opts).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    let splatt_msg = match r.stop {
        StopReason::TimeLimit => format!("splatt stopped cleanly at the limit after {took:.1?}"),
        _ => {
            let s = r.solutions.first().ok_or("splatt: solution count without a solution")?;
            verify_solution(&splatt.spec, &splatt.region, &splatt.pieces, splatt.group, s)?;
            format!("splatt solved and verified in {took:.2?}")
        }
    };
    Ok(format!("pentomino raw 8 / modulo 2, naive 8, {pent_took:.2?}; {splatt_msg}"))
}

fn c11() -> Outcome {
    for name in BUILTIN_NAMES {
        let report = validate(&builtin(name).map_err(|e| e.to_string())?, DEFAULT_RADIUS).map_err(|e| e.to_string())?;
        ensure(report.all_passed(), || format!("{report}"))?;
    }
    let spec = builtin("snub-trihexagonal").map_err(|e| e.to_string())?;
    let mut orbits = spec.orbits().to_vec();
    orbits[1].neighbor_points.remove(0);
    let dropped = validate(&spec.with_orbits(orbits), DEFAULT_RADIUS).map_err(|e| e.to_string())?;
    ensure(dropped.failing().contains(&checks::ADJACENCY_SYMMETRY), || format!("dropped neighbor: {dropped}"))?;
    let a3 = AffineMap::from_int_rows(&[&[-1, 0], &[0, -1]]).unwrap();
    let kept: Vec<AffineMap> = spec.orientations().iter().filter(|o| !o.equiv_mod_lattice(&a3)).cloned().collect();
    let removed = validate(&spec.with_orientations(kept), DEFAULT_RADIUS).map_err(|e| e.to_string())?;
    ensure(removed.failing().contains(&checks::CLOSURE), || format!("removed orientation: {removed}"))?;
    let mut os = spec.orientations().to_vec();
    os[1] = AffineMap::from_int_rows(&[&[2, 0], &[0, 1]]).unwrap();
    let det2 = validate(&spec.with_orientations(os), DEFAULT_RADIUS).map_err(|e| e.to_string())?;
    ensure(det2.failing().contains(&checks::UNIMODULAR), || format!("non-unimodular: {det2}"))?;
    Ok(format!(
        "{} built-ins pass; mutations fail {:?} / {:?} / {:?}",
        BUILTIN_NAMES.len(),
        dropped.failing(),
        removed.failing(),
        det2.failing()
    ))
}

fn main() -> ExitCode {
    // libtest flags such as `--list` or a name filter still reach this binary.
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let criteria: [Criterion; 11] = [
        ("1 snub trihexagonal free n<=7", c1),
        ("2 cubic free n<=7 and n=10", c2),
        ("3 tetrahedral-octahedral free n<=7", c3),
        ("4 rectified cubic free n<=7", c4),
        ("5 truncated octahedral free n<=7", c5),
        ("6 tetragonal disphenoid free n<=7", c6),
        ("7 one-sided checkpoints", c7),
        ("8 canonicalization example", c8),
        ("9 property suites", c9),
        ("10 packing", c10),
        ("11 validator", c11),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let took = t.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{took:.1?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} [{took:.1?}]: {why}");
            }
        }
        if name.starts_with("4 ") {
            match c4_extended() {
                None => println!(
                    "SKIP criterion 4 extended tier (rectified cubic n=10, non-blocking; set POLYFORMS_EXTENDED=1)"
                ),
                Some(Ok(d)) => println!("PASS criterion 4 extended tier: {d}"),
                Some(Err(e)) => println!("FAIL criterion 4 extended tier (non-blocking): {e}"),
            }
        }
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
