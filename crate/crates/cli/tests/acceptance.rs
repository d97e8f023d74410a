//! Acceptance suite: one PASS/FAIL line per criterion, then a single
//! assertion over all of them. Run with `--nocapture` to see the lines.

mod common;

use std::time::Instant;

use multireg_core::catalog::{degree_grid, line_grid, random_split, standard_catalog, RandomSpec};
use multireg_core::regularity::{
    aligned_k, beilinson_terms, block_regular_aligned, block_regularity_aligned, block_regularity_pn, cm_regularity,
    hw_block_equivalence, hw_block_transfer, hw_regular, monotonicity_check, resolution_class, VerdictValue,
};
use multireg_core::{
    aligned_window_dual, bott_cohomology, fundamental_collection, gram_matrix, helix_block, helix_window,
    FactorSheaf, K0Lattice, MultiDegree, SplitSheaf, Space,
};

type Outcome = Result<String, String>;

fn sp(d: &[u32]) -> Space {
    Space::new(d.to_vec()).unwrap()
}

fn monomials(vars: u32, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    if vars == 1 {
        return 1;
    }
    (0..=k).map(|e| monomials(vars - 1, k - e)).sum()
}

fn chi_line(n: u32, k: i64) -> i64 {
    let top = monomials(n + 1, -k - n as i64 - 1);
    monomials(n + 1, k) + if n % 2 == 0 { top } else { -top }
}

fn choose(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn bott_oracles() -> Outcome {
    let mut cases = 0;
    for n in 1..=4u32 {
        for p in 0..=n as i64 {
            for k in -12..=12i64 {
                let dims = |p: i64, k: i64| bott_cohomology(&FactorSheaf::omega(n, p, k).unwrap()).unwrap().dims();
                let h = dims(p, k);
                let chi: i64 = h.iter().enumerate().map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
                let oracle: i64 = (0..=p)
                    .map(|j| (if (p - j) % 2 == 0 { 1 } else { -1 }) * choose(n as i64 + 1, j) * chi_line(n, k - j))
                    .sum();
                let serre: Vec<u64> = dims(n as i64 - p, -k).into_iter().rev().collect();
                if h.iter().filter(|&&x| x != 0).count() > 1 || chi != oracle || h != serre {
                    return Err(format!("n={n} p={p} k={k}: h={h:?}, oracle chi {oracle}, Serre {serre:?}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn block_equals_cm() -> Outcome {
    let mut cases = 0;
    for n in 1..=3 {
        let x = sp(&[n]);
        let spec = RandomSpec { min_terms: 1, max_terms: 4, max_multiplicity: 2, salt: 200, ..RandomSpec::new(200, 1, 6) };
        for f in random_split(&x, &spec).unwrap() {
            let (b, c) = (block_regularity_pn(n, &f).unwrap().value(), cm_regularity(n, &f).unwrap().value());
            if b != c {
                return Err(format!("P{n} {f}: block {b:?}, cm {c:?}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} random sheaves on P1, P2, P3"))
}

fn helix_members() -> Outcome {
    let mut cases = 0;
    for n in 1..=3 {
        let x = sp(&[n]);
        for i in -10..=10 {
            let v = block_regularity_pn(n, &SplitSheaf::line(&x, &MultiDegree(vec![i])).unwrap()).unwrap().value();
            if v != Some(-i) {
                return Err(format!("P{n} O({i}): {v:?}"));
            }
            cases += 1;
        }
    }
    let x = sp(&[1, 1]);
    for i in -7..=7 {
        for a in helix_block(&x, i).members() {
            let VerdictValue::Aligned { m, lower_exclusive, .. } =
                block_regularity_aligned(&x, &SplitSheaf::line(&x, a).unwrap()).unwrap().value
            else {
                return Err(format!("O{a}: no aligned value"));
            };
            let exact_needed = aligned_k(&x, -i).is_some();
            if !(lower_exclusive < -i && -i <= m) || (exact_needed && m != -i) {
                return Err(format!("O{a} in block {i}: ({lower_exclusive}, {m}]"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} helix members"))
}

fn two_factor_catalogs() -> Vec<(Space, Vec<SplitSheaf>)> {
    [sp(&[1, 1]), sp(&[2, 1])].into_iter().map(|x| {
        let c = standard_catalog(&x, 4, 100).unwrap();
        (x, c)
    }).collect()
}

fn equivalence() -> Outcome {
    let mut cases = 0;
    for (x, catalog) in two_factor_catalogs() {
        for f in &catalog {
            let e = hw_block_equivalence(&x, f).unwrap();
            if !e.agree() {
                return Err(format!("{x} {f}: hw {:?}, block {:?}", e.hw, e.block));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} sheaves (81 lines + 100 sums per space)"))
}

fn transfer() -> Outcome {
    let mut implications = 0;
    for (x, catalog) in two_factor_catalogs() {
        for f in &catalog {
            let t = hw_block_transfer(&x, f).unwrap();
            if let Some(fail) = t.failure {
                return Err(format!("{x} {f}: {fail}"));
            }
            implications += t.checked;
        }
    }
    Ok(format!("{implications} implications"))
}

fn duals_and_gram() -> Outcome {
    let x = sp(&[1, 1]);
    let g = gram_matrix(&x, &fundamental_collection(&x)).unwrap();
    let want = [vec![1, 2, 2, 4], vec![0, 1, 0, 2], vec![0, 0, 1, 2], vec![0, 0, 0, 1]];
    if g.rows() != want {
        return Err(format!("P1xP1 Gram matrix {:?}", g.rows()));
    }
    let mut cases = 0;
    for x in [sp(&[1, 1]), sp(&[2, 1]), sp(&[3])] {
        let lattice = K0Lattice::new(&x).unwrap();
        let period = x.d() as i64 + 1;
        for k in -2..=2 {
            if !gram_matrix(&x, &helix_window(&x, k * period)).unwrap().is_unitriangular() {
                return Err(format!("{x} window k={k}: Gram matrix not unitriangular"));
            }
            let solved = lattice.left_dual_classes(k * period).unwrap();
            let closed: Vec<_> = aligned_window_dual(&x, k).unwrap().into_iter().rev().flatten().collect();
            for (s, c) in solved.iter().zip(&closed) {
                let cls = lattice.class_of_box(&c.dual).unwrap();
                if s.member != c.member || s.class != cls {
                    return Err(format!("{x} k={k} O{}: solve {} vs closed form {cls}", c.member, s.class));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} dual objects"))
}

fn beilinson() -> Outcome {
    let p2 = sp(&[2]);
    let terms = beilinson_terms(&p2, &SplitSheaf::line(&p2, &MultiDegree(vec![0])).unwrap(), 0).unwrap();
    let mults: Vec<Vec<u64>> = terms.iter().map(|t| t.summands.iter().map(|s| s.1).collect()).collect();
    if mults != [vec![0], vec![0], vec![1]] || terms[2].summands[0].0 != MultiDegree(vec![0]) {
        return Err(format!("P2, O, m=0: {terms:?}"));
    }
    let x = sp(&[1, 1]);
    let lattice = K0Lattice::new(&x).unwrap();
    let spec = RandomSpec { min_terms: 1, max_terms: 4, max_multiplicity: 2, salt: 50, ..RandomSpec::new(50, 1, 4) };
    for (i, f) in random_split(&x, &spec).unwrap().iter().enumerate() {
        let m = block_regularity_aligned(&x, f).unwrap().value().unwrap() + 3 * (i as i64 % 2);
        let terms = beilinson_terms(&x, f, m).map_err(|e| format!("{f} m={m}: {e}"))?;
        let got = resolution_class(&lattice, &terms).unwrap();
        let want = lattice.class_of_sheaf(f).unwrap();
        if got != want {
            return Err(format!("{f} m={m}: alternating sum {got}, class {want}"));
        }
    }
    Ok("P2 with O, and 50 random sheaves on P1xP1".into())
}

fn shifts_and_monotonicity() -> Outcome {
    let mut cases = 0;
    for (x, catalog) in two_factor_catalogs() {
        let offsets = degree_grid(&x, 2);
        for f in &catalog {
            for p in &offsets {
                let a = hw_regular(&x, f, p).unwrap().is_regular();
                let b = hw_regular(&x, &f.twist(p).unwrap(), &x.zero_degree()).unwrap().is_regular();
                if a != b {
                    return Err(format!("{x} {f}: hw at {p} {a}, twisted {b}"));
                }
            }
            for k in -2..=2 {
                let a = block_regular_aligned(&x, f, k).unwrap().is_regular();
                let twisted = f.twist(&x.anticanonical_power(k)).unwrap();
                if a != block_regular_aligned(&x, &twisted, 0).unwrap().is_regular() {
                    return Err(format!("{x} {f}: block at k={k} disagrees with the twist"));
                }
            }
            for m in -12..=12 {
                if let Some(d) = monotonicity_check(&x, f, m).unwrap() {
                    return Err(format!("{x} {f}: {d}"));
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} sheaves"))
}

fn cli() -> Outcome {
    for (stem, args, status) in common::GOLDEN {
        let (code, out, _) = common::run_cli(args);
        let want = std::fs::read(common::golden_path(stem)).map_err(|e| format!("{stem}: {e}"))?;
        if code != status || out != want {
            return Err(format!("{stem}: exit {code}, output differs: {}", out != want));
        }
    }
    for space in ["P1", "P2", "P3", "P1xP1", "P2xP1"] {
        let (code, out, _) = common::run_cli(&["verify", space, "--suite", "all"]);
        if code != 0 {
            return Err(format!("verify {space}: exit {code}\n{}", String::from_utf8_lossy(&out)));
        }
    }
    Ok(format!("{} golden files; verify all on 5 spaces", common::GOLDEN.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("cohomology of twisted forms matches the oracles", bott_oracles),
        ("block and CM regularity agree on P1, P2, P3", block_equals_cm),
        ("helix members have regularity minus their index", helix_members),
        ("staircase regular at the origin iff block regular at -d", equivalence),
        ("transfer bounds between staircase and block regularity", transfer),
        ("dual classes and Gram matrices", duals_and_gram),
        ("resolutions by the collection balance in K0", beilinson),
        ("twist laws and monotonicity", shifts_and_monotonicity),
        ("command line goldens and verify", cli),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(summary) => println!("PASS {} {name}: {summary} [{:.2?}]", i + 1, t.elapsed()),
            Err(detail) => {
                println!("FAIL {} {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!("acceptance finished in {:.2?}", start.elapsed());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
    assert!(start.elapsed().as_secs() < 60, "acceptance exceeded 60 seconds");
}

#[test]
fn line_grids_are_complete() {
    assert_eq!(line_grid(&sp(&[1, 1]), 4).len(), 81);
    assert_eq!(line_grid(&sp(&[2, 1]), 4).len(), 81);
}
