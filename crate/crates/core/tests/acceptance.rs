//! Acceptance run: one PASS/FAIL line per criterion, with the individual
//! checks listed underneath. Exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{
    basis_change_from_values, binom_at, box_count, oracle_count, q, random_points, rng,
    SimplexCover, Q,
};
use mixed_ehrhart::ehrhart::{ehrhart, hstar, multivariate_ehrhart};
use mixed_ehrhart::enumerate::count_points;
use mixed_ehrhart::lattice::LatticePolytope;
use mixed_ehrhart::mixed::{
    cube_reference, dmv, mixed_ehrhart, mixed_hstar, single_polytope_dmv, single_polytope_me,
    PolytopeCollection,
};
use mixed_ehrhart::poly::{rat, rat_frac, UnivariatePolynomial};
use mixed_ehrhart::roots::{
    convergence_report, eulerian, find_min_r, is_real_rooted, root_drift, sturm_real_root_count,
    CONVERGENCE_WINDOW,
};
use mixed_ehrhart::suite::{published_simplex_pair_formula, run_property_suite};
use num_bigint::BigInt;

struct Criterion {
    title: &'static str,
    checks: Vec<(bool, String)>,
}

impl Criterion {
    fn new(title: &'static str) -> Self {
        Self {
            title,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.checks.push((ok, what.into()));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.0)
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn copies(p: &LatticePolytope, k: usize) -> PolytopeCollection {
    PolytopeCollection::new(vec![p.clone(); k]).unwrap()
}

fn published_values() -> Criterion {
    let mut c = Criterion::new("published values reproduced exactly");
    let cube3 = LatticePolytope::cube(3, 1);
    let simplex3 = LatticePolytope::simplex(3, 1);

    let v = dmv(&copies(&cube3, 2)).unwrap();
    c.check(
        v == BigInt::from(12),
        format!("DMV(cube3, cube3) = {v}, expected 12"),
    );

    let me = mixed_ehrhart(&copies(&cube3, 2)).unwrap().polynomial;
    c.check(
        me == UnivariatePolynomial::from_ints(&[0, 0, 6, 6]),
        format!("ME(cube3, cube3) = {me}, expected 6n^3 + 6n^2"),
    );

    let h = hstar(&cube3).unwrap().entries;
    c.check(
        h == ints(&[1, 4, 1, 0]),
        format!("h*(cube3) = {h:?}, expected (1,4,1,0)"),
    );

    let h = mixed_hstar(&copies(&simplex3, 2)).unwrap().entries;
    c.check(
        h == ints(&[0, 3, 4, -1]),
        format!("h*(simplex3, simplex3) = {h:?}, expected (0,3,4,-1)"),
    );

    for m in 1..=6i64 {
        let computed = mixed_hstar(&copies(&LatticePolytope::simplex(3, m), 2))
            .unwrap()
            .entries;
        let published = ints(&published_simplex_pair_formula(m));
        // independent route: ME(n) = C(2mn+3,3) - 2 C(mn+3,3) + 1, in the basis C(n+3-j,3)
        let values: Vec<Q> = (0..=3)
            .map(|n| binom_at(2 * m * n + 3, 3) - binom_at(m * n + 3, 3) * q(2) + q(1))
            .collect();
        let oracle: Vec<BigInt> = basis_change_from_values(&values, 3)
            .iter()
            .map(|x| x.to_integer())
            .collect();
        c.check(
            computed == published,
            format!("h*({m}simplex3, {m}simplex3) = {computed:?}, published formula gives {published:?}, closed-form count gives {oracle:?}"),
        );
    }

    for d in 1..=4usize {
        for k in 1..=4usize {
            let got = mixed_ehrhart(&copies(&LatticePolytope::cube(d, 1), k))
                .unwrap()
                .coefficients;
            let want = cube_reference(d, k);
            let shown: Vec<String> = got.iter().map(ToString::to_string).collect();
            c.check(
                got == want,
                format!("cube collection d={d} k={k}: me = ({})", shown.join(",")),
            );
        }
    }

    for (name, p) in [
        ("cube3", cube3.clone()),
        ("simplex3", simplex3.clone()),
        ("2simplex3", LatticePolytope::simplex(3, 2)),
    ] {
        for k in 1..=3 {
            let col = copies(&p, k);
            let ie = mixed_ehrhart(&col).unwrap();
            let me = single_polytope_me(&p, k).unwrap();
            let dv = single_polytope_dmv(&p, k).unwrap();
            c.check(
                me == ie.polynomial && dv == ie.dmv,
                format!(
                    "single-polytope formulas for {name}, k={k}: ME {me} vs {}, DMV {dv} vs {}",
                    ie.polynomial, ie.dmv
                ),
            );
        }
    }
    c
}

fn identities() -> Criterion {
    let mut c = Criterion::new("identity suites on seeded random collections");
    let cases = 50;
    let ledger = run_property_suite(1, cases);
    let random = ledger
        .entries
        .iter()
        .filter(|e| e.id.starts_with("case"))
        .count();
    let complementary = ledger
        .entries
        .iter()
        .filter(|e| e.id.starts_with("complementary"))
        .count();
    c.check(
        random > 0 && complementary == 20,
        format!("{cases} random collections ({random} checks), {complementary} complementary-subspace cases"),
    );
    for family in [
        "me-agreement",
        "me-vanishing",
        "me-top",
        "me-second",
        "nonnegative",
        "hstar-round-trip",
        "hstar-zero",
        "hstar-one-is-dmv",
        "pure-monomial",
        "oracle",
    ] {
        let rows: Vec<_> = ledger
            .entries
            .iter()
            .filter(|e| e.id.ends_with(&format!("/{family}")))
            .collect();
        let failed: Vec<_> = rows.iter().filter(|e| !e.pass).collect();
        c.check(
            !rows.is_empty() && failed.is_empty(),
            format!("{family}: {} checks, {} failed", rows.len(), failed.len()),
        );
        for f in failed {
            c.check(false, format!("{}: {}", f.id, f.computed));
        }
    }
    let other: Vec<_> = ledger
        .failures()
        .filter(|e| e.id.ends_with("/no-error"))
        .collect();
    c.check(
        other.is_empty(),
        format!("{} cases raised errors", other.len()),
    );
    for o in &ledger.observations {
        println!("    note: {o}");
    }
    c
}

fn asymptotics() -> Criterion {
    let mut c = Criterion::new("asymptotic behaviour of dilated collections");
    let collections = [
        ("(cube3, cube3)", copies(&LatticePolytope::cube(3, 1), 2)),
        (
            "(simplex3, simplex3)",
            copies(&LatticePolytope::simplex(3, 1), 2),
        ),
        (
            "(simplex2, simplex2)",
            copies(&LatticePolytope::simplex(2, 1), 2),
        ),
        (
            "(cube2, simplex2)",
            PolytopeCollection::new(vec![
                LatticePolytope::cube(2, 1),
                LatticePolytope::simplex(2, 1),
            ])
            .unwrap(),
        ),
    ];
    for (name, col) in &collections {
        let r = convergence_report(col, &CONVERGENCE_WINDOW).unwrap();
        let dists: Vec<String> = r
            .distances
            .iter()
            .map(|(r, x)| format!("r={r}: {:.4}", rat_to_f64(x)))
            .collect();
        c.check(
            r.non_increasing && r.within_threshold,
            format!(
                "{name}: distances {} (non-increasing: {}), ratio at r=16 {:.4} < 0.25",
                dists.join(", "),
                r.non_increasing,
                rat_to_f64(&r.final_ratio)
            ),
        );
        match root_drift(col, 16) {
            Ok(Some(drift)) => c.check(
                drift < rat_frac(1, 10),
                format!(
                    "{name}: roots at r=16 within {:.4} of the roots of A_d (threshold 0.1)",
                    rat_to_f64(&drift)
                ),
            ),
            Ok(None) => c.check(
                false,
                format!("{name}: root counts differ from A_d at r=16"),
            ),
            Err(e) => c.check(false, format!("{name}: {e}")),
        }
    }

    let w = find_min_r(&collections[1].1, 10).unwrap();
    c.check(
        w == Some(3),
        format!("find_min_r((simplex3, simplex3), 10) = {w:?}, expected Some(3)"),
    );

    for d in 1..=8 {
        let a = eulerian(d).unwrap().polynomial;
        let rep = is_real_rooted(&a).unwrap();
        let bound = rat(1 << 12);
        let nonpositive = sturm_real_root_count(&a, &-bound.clone(), &rat(0)).unwrap();
        let positive = sturm_real_root_count(&a, &rat(0), &bound).unwrap();
        let at_zero = rep
            .intervals
            .iter()
            .filter(|i| i.lo < rat(0) && i.hi >= rat(0))
            .count();
        let ok = rep.real_rooted
            && rep.all_simple()
            && nonpositive == d
            && positive == 0
            && at_zero == 1;
        c.check(
            ok,
            format!("A_{d}: {nonpositive} distinct roots in (-4096, 0], {positive} positive, simple: {}", rep.all_simple()),
        );
    }
    c
}

fn rat_to_f64(x: &mixed_ehrhart::poly::Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn oracle_equivalence() -> Criterion {
    let mut c = Criterion::new("held-out interpolation and containment oracles");
    let mut r = rng(2024);
    let mut polytopes: Vec<LatticePolytope> = Vec::new();
    for d in 1..=3usize {
        for _ in 0..8 {
            let n = if d == 1 { 2 } else { 4 + polytopes.len() % 4 };
            polytopes
                .push(LatticePolytope::from_points(d, random_points(&mut r, d, n, 3)).unwrap());
        }
    }
    polytopes
        .push(LatticePolytope::new(vec![vec![0, 0, 0], vec![2, 1, 1], vec![1, 2, 3]]).unwrap());
    polytopes.push(LatticePolytope::new(vec![vec![-2, 1, 3], vec![2, -1, -3]]).unwrap());
    polytopes.push(
        LatticePolytope::new(vec![
            vec![1, 0, 2],
            vec![3, 1, 2],
            vec![2, 4, 2],
            vec![0, 3, 2],
        ])
        .unwrap(),
    );
    polytopes.push(LatticePolytope::from_points(3, vec![vec![1, 1, 1]]).unwrap());

    let mut held_out = 0;
    let mut decisions = 0usize;
    let mut mismatches = Vec::new();
    for p in &polytopes {
        match ehrhart(p) {
            Ok(e) => {
                let d = p.dim() as u64;
                for n in [d + 1, d + 2] {
                    let direct = box_count(&p.dilate(n));
                    held_out += 1;
                    if e.eval(n as i64) != rat(direct as i64) {
                        mismatches.push(format!("E at {n} for {:?}", p.vertices()));
                    }
                }
            }
            Err(err) => mismatches.push(format!("{err} for {:?}", p.vertices())),
        }
        let cover = SimplexCover::new(p.vertices());
        for z in common::box_points(&common::bounding_box(p, 1)) {
            decisions += 1;
            if cover.locate(&z) != p.contains(&z) {
                mismatches.push(format!("contains({z:?}) for {:?}", p.vertices()));
            }
        }
        if oracle_count(p) != count_points(p) {
            mismatches.push(format!("count for {:?}", p.vertices()));
        }
    }
    let pairs = [
        vec![LatticePolytope::cube(3, 1), LatticePolytope::simplex(3, 1)],
        vec![
            LatticePolytope::segment(2, 0, 2),
            LatticePolytope::simplex(2, 1),
        ],
        vec![
            polytopes[18].clone(),
            polytopes[20].clone(),
            polytopes[17].clone(),
        ],
    ];
    for ps in &pairs {
        if let Err(e) = multivariate_ehrhart(ps) {
            mismatches.push(format!("multivariate: {e}"));
        }
    }
    c.check(
        mismatches.is_empty(),
        format!(
            "{} polytopes, {held_out} held-out dilates, {decisions} containment decisions, {} multivariate fits",
            polytopes.len(),
            pairs.len()
        ),
    );
    for m in mismatches {
        c.check(false, m);
    }
    c
}

fn main() -> ExitCode {
    let mut all = true;
    for (i, run) in [
        published_values as fn() -> Criterion,
        identities,
        asymptotics,
        oracle_equivalence,
    ]
    .into_iter()
    .enumerate()
    {
        let start = Instant::now();
        let c = run();
        let tag = if c.passed() { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {}: {} ({:.1?})",
            i + 1,
            c.title,
            start.elapsed()
        );
        for (ok, what) in &c.checks {
            println!("    {} {what}", if *ok { "ok  " } else { "FAIL" });
        }
        all &= c.passed();
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
