//! Reference checks against published values, and a seeded random corpus
//! exercising the cross-module identities.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::ehrhart::{ehrhart, hstar, multivariate_ehrhart};
use crate::enumerate::count_points;
use crate::lattice::{LatticePolytope, Point};
use crate::mixed::{
    bernstein_mixed_volume, complementary_dmv_oracle, conjectured_bound_violations, cube_reference,
    dmv, me_from_multivariate, me_second, me_top, mixed_ehrhart, mixed_hstar, single_polytope_dmv,
    single_polytope_me, PolytopeCollection,
};
use crate::poly::{
    binomial_polynomial, interpolate_univariate, rat, to_binomial_basis, Rational,
    UnivariatePolynomial,
};
use crate::roots::{asymptotic_limit, eulerian, scan_dilates};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub citation: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationLedger {
    pub entries: Vec<LedgerEntry>,
    /// Findings that are recorded but do not fail the run.
    pub observations: Vec<String>,
}

impl VerificationLedger {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn get(&self, id: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    fn check(
        &mut self,
        id: impl Into<String>,
        expected: impl fmt::Display,
        computed: impl fmt::Display,
        citation: &str,
    ) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        self.entries.push(LedgerEntry {
            id: id.into(),
            pass: expected == computed,
            expected,
            computed,
            citation: citation.into(),
        });
    }

    fn check_with(
        &mut self,
        id: impl Into<String>,
        expected: impl fmt::Display,
        computed: Result<String>,
        citation: &str,
    ) {
        let computed = computed.unwrap_or_else(|e| format!("error: {e}"));
        self.check(id, expected, computed, citation);
    }

    fn assert(
        &mut self,
        id: impl Into<String>,
        holds: bool,
        detail: impl fmt::Display,
        citation: &str,
    ) {
        self.entries.push(LedgerEntry {
            id: id.into(),
            expected: "holds".into(),
            computed: if holds {
                "holds".into()
            } else {
                format!("fails: {detail}")
            },
            pass: holds,
            citation: citation.into(),
        });
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "entries": self.entries.iter().map(|e| json!({
                "id": e.id,
                "expected": e.expected,
                "computed": e.computed,
                "pass": e.pass,
                "citation": e.citation,
            })).collect::<Vec<_>>(),
            "observations": self.observations,
        })
    }
}

impl fmt::Display for VerificationLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let tag = if e.pass { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{tag} {}: expected {}, computed {} [{}]",
                e.id, e.expected, e.computed, e.citation
            )?;
        }
        for o in &self.observations {
            writeln!(f, "NOTE {o}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.entries.len(), failed)
    }
}

fn tuple(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn rtuple(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn ituple(v: &[i64]) -> String {
    tuple(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
}

fn copies(p: &LatticePolytope, k: usize) -> PolytopeCollection {
    PolytopeCollection::new(vec![p.clone(); k]).expect("nonempty")
}

/// h*(mΔ₃, mΔ₃) as published.
pub fn published_simplex_pair_formula(m: i64) -> [i64; 4] {
    [0, m.pow(3) + 2 * m, 4 * m.pow(3), m.pow(3) - 2 * m * m]
}

/// Every reference value with a published source, checked once.
pub fn run_paper_suite() -> VerificationLedger {
    let mut l = VerificationLedger::default();
    let cube3 = LatticePolytope::cube(3, 1);
    let simplex3 = LatticePolytope::simplex(3, 1);
    let cube_poly = UnivariatePolynomial::from_ints(&[1, 3, 3, 1]);
    let six = UnivariatePolynomial::from_ints(&[0, 0, 6, 6]);
    let pair_cubes = copies(&cube3, 2);
    let pair_simplices = copies(&simplex3, 2);

    let samples: Vec<(i64, Rational)> = (0..4i64).map(|n| (n, rat((n + 1).pow(3)))).collect();
    l.check_with(
        "interpolate-cube3-counts",
        &cube_poly,
        interpolate_univariate(&samples).map(|p| p.to_string()),
        "E(n) = (n+1)^d",
    );
    l.check_with(
        "ehrhart-cube3",
        &cube_poly,
        ehrhart(&cube3).map(|e| e.polynomial.to_string()),
        "E(n) = (n+1)^d",
    );
    l.check_with(
        "multivariate-ehrhart-cube3",
        &cube_poly,
        multivariate_ehrhart(std::slice::from_ref(&cube3)).map(|e| e.diagonal().to_string()),
        "E(n) = (n+1)^d",
    );
    l.check_with(
        "binomial-basis-cube3",
        "(1,4,1,0)",
        to_binomial_basis(&cube_poly, 3).map(|b| rtuple(b.entries())),
        "(1,4,1,0)",
    );
    l.check_with(
        "hstar-cube3",
        "(1,4,1,0)",
        hstar(&cube3).map(|h| tuple(&h.entries)),
        "(1,4,1,0)",
    );
    l.check_with(
        "dmv-cube3-pair",
        12,
        dmv(&pair_cubes).map(|v| v.to_string()),
        "= 12",
    );

    let with_point =
        PolytopeCollection::new(vec![simplex3.clone(), LatticePolytope::origin(3)]).expect("valid");
    l.check_with(
        "dmv-with-point",
        0,
        dmv(&with_point).map(|v| v.to_string()),
        "ME(n) = 0",
    );
    l.check_with(
        "mixed-ehrhart-with-point",
        UnivariatePolynomial::zero(),
        mixed_ehrhart(&with_point).map(|r| r.polynomial.to_string()),
        "ME(n) = 0",
    );
    l.check_with(
        "mixed-ehrhart-cube3-pair",
        &six,
        mixed_ehrhart(&pair_cubes).map(|r| r.polynomial.to_string()),
        "6t^3+6t^2",
    );

    for d in 1..=4usize {
        for k in 1..=4usize {
            let c = copies(&LatticePolytope::cube(d, 1), k);
            l.check_with(
                format!("cube-collection-d{d}-k{k}"),
                rtuple(&cube_reference(d, k)),
                mixed_ehrhart(&c).map(|r| rtuple(&r.coefficients)),
                "me_i = C(d,i) k! S(i,k)",
            );
        }
    }
    l.check(
        "cube-reference-d3-k2",
        "(0,0,6,6)",
        rtuple(&cube_reference(3, 2)),
        "6t^3+6t^2",
    );

    for (name, c) in [
        ("cube3-pair", &pair_cubes),
        ("simplex3-pair", &pair_simplices),
    ] {
        let low = me_from_multivariate(c).map(|me| {
            let k = c.len();
            if me[..k].iter().all(Zero::is_zero) {
                "0".to_string()
            } else {
                rtuple(&me[..k])
            }
        });
        l.check_with(format!("me-vanishing-{name}"), 0, low, "me_i = 0 for i < k");
    }
    l.check_with(
        "me-top-cube3-pair",
        6,
        me_top(&pair_cubes).map(|v| v.to_string()),
        "6t^3+6t^2",
    );
    l.check_with(
        "me-second-cube3-pair",
        6,
        me_second(&pair_cubes).map(|v| v.to_string()),
        "6t^3+6t^2",
    );

    l.check_with(
        "mixed-hstar-simplex3-pair",
        "(0,3,4,-1)",
        mixed_hstar(&pair_simplices).map(|h| tuple(&h.entries)),
        "(0,3,4,-1)",
    );
    for m in 1..=6i64 {
        let c = copies(&LatticePolytope::simplex(3, m), 2);
        l.check_with(
            format!("mixed-hstar-simplex3-pair-m{m}"),
            ituple(&published_simplex_pair_formula(m)),
            mixed_hstar(&c).map(|h| tuple(&h.entries)),
            "(0,m^3+2m,4m^3,m^3-2m^2)",
        );
    }
    for (name, c) in [
        ("cube3-pair", &pair_cubes),
        ("simplex3-pair", &pair_simplices),
    ] {
        let pair = mixed_hstar(c).and_then(|h| Ok((h.entries[1].clone(), dmv(c)?)));
        l.check_with(
            format!("mixed-hstar-h1-equals-dmv-{name}"),
            "equal",
            pair.map(|(a, b)| {
                if a == b {
                    "equal".into()
                } else {
                    format!("{a} vs {b}")
                }
            }),
            "h_1^*(P_1,P_2) = DMV(P_1,P_2)",
        );
    }

    l.check_with(
        "single-polytope-me-cube3-k2",
        &six,
        single_polytope_me(&cube3, 2).map(|p| p.to_string()),
        "6t^3+6t^2",
    );
    l.check_with(
        "single-polytope-dmv-cube3-k2",
        12,
        single_polytope_dmv(&cube3, 2).map(|v| v.to_string()),
        "= 12",
    );
    l.check_with(
        "eulerian-3",
        "(0,1,4,1)",
        eulerian(3).map(|a| rtuple(&a.polynomial.padded_coeffs(4))),
        "(0,1,4,1)",
    );
    l.check_with(
        "limit-scalar-cube3-pair",
        6,
        asymptotic_limit(&pair_cubes).map(|p| p.leading_coefficient().to_string()),
        "6t^3+6t^2",
    );

    match scan_dilates(&pair_simplices, 2) {
        Ok(reports) => {
            l.check(
                "scan-simplex3-pair-r1",
                "(0,3,4,-1) tail=false",
                format!(
                    "{} tail={}",
                    tuple(&reports[0].hstar.entries),
                    reports[0].positive_tail
                ),
                "(0,3,4,-1)",
            );
            l.check(
                "scan-simplex3-pair-r2",
                format!("{} tail=false", ituple(&published_simplex_pair_formula(2))),
                format!(
                    "{} tail={}",
                    tuple(&reports[1].hstar.entries),
                    reports[1].positive_tail
                ),
                "(0,m^3+2m,4m^3,m^3-2m^2)",
            );
        }
        Err(e) => l.check(
            "scan-simplex3-pair",
            "reports",
            format!("error: {e}"),
            "(0,3,4,-1)",
        ),
    }
    l
}

/// A lattice polytope spanned by `min..=max` uniform points of `{0..=side}^d`.
pub fn random_polytope(
    rng: &mut impl Rng,
    d: usize,
    side: i64,
    min: usize,
    max: usize,
) -> LatticePolytope {
    let n = rng.gen_range(min..=max);
    let points: Vec<Point> = (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(0..=side)).collect())
        .collect();
    LatticePolytope::from_points(d, points).expect("nonempty")
}

fn describe(c: &PolytopeCollection) -> String {
    let parts: Vec<String> = c
        .polytopes()
        .iter()
        .map(|p| format!("{:?}", p.vertices()))
        .collect();
    format!("[{}]", parts.join(", "))
}

/// `k` polytopes in independent coordinate blocks, each containing the
/// origin, then sheared by a common unimodular map.
pub fn random_complementary_collection(rng: &mut impl Rng) -> PolytopeCollection {
    let d = rng.gen_range(2..=3usize);
    let k = rng.gen_range(2..=d);
    // axis blocks: every member gets at least one axis
    let mut owner: Vec<usize> = (0..d).map(|i| i.min(k - 1)).collect();
    for o in owner.iter_mut().skip(k) {
        *o = rng.gen_range(0..k);
    }
    let shear: Vec<Vec<i64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        1
                    } else if j > i {
                        rng.gen_range(-1..=1)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let polytopes = (0..k)
        .map(|m| {
            let n = rng.gen_range(2..=4usize);
            let mut points: Vec<Point> = vec![vec![0; d]];
            for _ in 0..n {
                points.push(
                    (0..d)
                        .map(|a| {
                            if owner[a] == m {
                                rng.gen_range(0..=2)
                            } else {
                                0
                            }
                        })
                        .collect(),
                );
            }
            let sheared = points
                .iter()
                .map(|p| {
                    (0..d)
                        .map(|i| (0..d).map(|j| shear[i][j] * p[j]).sum())
                        .collect()
                })
                .collect();
            LatticePolytope::from_points(d, sheared).expect("nonempty")
        })
        .collect();
    PolytopeCollection::new(polytopes).expect("same dimension")
}

pub fn random_collection(rng: &mut impl Rng) -> PolytopeCollection {
    let d = rng.gen_range(1..=3usize);
    let k = rng.gen_range(1..=3usize);
    let polytopes = (0..k).map(|_| random_polytope(rng, d, 3, 4, 8)).collect();
    PolytopeCollection::new(polytopes).expect("same dimension")
}

/// Runs the identities on `cases` random collections plus twenty
/// complementary-subspace collections. Counterexamples name the vertices.
pub fn run_property_suite(seed: u64, cases: usize) -> VerificationLedger {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut l = VerificationLedger::default();
    for case in 0..cases {
        let c = random_collection(&mut rng);
        let shift: Vec<i64> = (0..c.ambient_dim())
            .map(|_| rng.gen_range(-2..=2))
            .collect();
        if let Err(e) = property_case(&mut l, case, &c, &shift) {
            l.assert(
                format!("case{case}/no-error"),
                false,
                format!("{e} on {}", describe(&c)),
                "",
            );
        }
    }
    for case in 0..20 {
        let c = random_complementary_collection(&mut rng);
        let id = format!("complementary{case}/oracle");
        match (complementary_dmv_oracle(&c), dmv(&c)) {
            (Ok(a), Ok(b)) => l.assert(
                id,
                a == b,
                format!("oracle {a} vs dmv {b} on {}", describe(&c)),
                "not contained in a subsum",
            ),
            (Err(e), _) | (_, Err(e)) => {
                l.assert(id, false, format!("{e} on {}", describe(&c)), "")
            }
        }
    }
    l
}

fn property_case(
    l: &mut VerificationLedger,
    case: usize,
    c: &PolytopeCollection,
    shift: &[i64],
) -> Result<()> {
    let id = |name: &str| format!("case{case}/{name}");
    let who = describe(c);
    let k = c.len();
    let d = c.ambient_dim();
    let me = mixed_ehrhart(c)?;
    let dmv_value = dmv(c)?;

    let mv = me_from_multivariate(c)?;
    l.assert(
        id("me-agreement"),
        mv == me.coefficients,
        format!("{} vs {} on {who}", rtuple(&mv), rtuple(&me.coefficients)),
        "sum over alpha >= 1",
    );
    if c.is_sum_full_dimensional() {
        let low = me.coefficients.iter().take(k).all(Zero::is_zero);
        l.assert(
            id("me-vanishing"),
            low,
            format!("{} on {who}", rtuple(&me.coefficients)),
            "me_i = 0 for i < k",
        );
        let top = me_top(c)?;
        l.assert(
            id("me-top"),
            top == me.coefficients[d],
            format!("{top} vs {} on {who}", me.coefficients[d]),
            "leading coefficient",
        );
        if k == d {
            let pure = bernstein_mixed_volume(c);
            l.assert(
                id("pure-monomial"),
                pure.is_ok(),
                format!("{pure:?} on {who}"),
                "d! MV n^d",
            );
        }
    }
    if c.all_full_dimensional() {
        let second = me_second(c)?;
        l.assert(
            id("me-second"),
            second == me.coefficients[d - 1],
            format!("{second} vs {} on {who}", me.coefficients[d - 1]),
            "facet sum",
        );
    }

    let values: Vec<Rational> = (1..=5).map(|n| me.polynomial.eval_int(n)).collect();
    l.assert(
        id("nonnegative"),
        !dmv_value.is_negative() && values.iter().all(|v| !v.is_negative()),
        format!("dmv {dmv_value}, ME(1..5) {} on {who}", rtuple(&values)),
        "DMV >= 0",
    );
    l.assert(
        id("dmv-is-me-at-one"),
        me.dmv == dmv_value,
        format!("{} vs {dmv_value} on {who}", me.dmv),
        "ME(1)",
    );

    let h = mixed_hstar(c)?;
    let rebuilt: UnivariatePolynomial = h
        .entries
        .iter()
        .enumerate()
        .map(|(i, hi)| {
            binomial_polynomial(c.sum_dim() as i64 - i as i64, c.sum_dim())
                .scale(&Rational::from(hi.clone()))
        })
        .sum();
    l.assert(
        id("hstar-round-trip"),
        rebuilt == me.polynomial,
        format!("{} on {who}", tuple(&h.entries)),
        "basis change",
    );
    l.assert(
        id("hstar-zero"),
        h.entries[0].is_zero(),
        format!("{} on {who}", tuple(&h.entries)),
        "h_0^* = 0",
    );
    if k == 2 && c.all_full_dimensional() {
        l.assert(
            id("hstar-one-is-dmv"),
            h.entries[1] == dmv_value,
            format!("{} vs {dmv_value} on {who}", h.entries[1]),
            "h_1^*(P_1,P_2) = DMV(P_1,P_2)",
        );
    }
    if c.all_full_dimensional() {
        let bad = conjectured_bound_violations(&h, k);
        if !bad.is_empty() {
            let note = if k > d {
                " (k > d, so ME vanishes)"
            } else {
                ""
            };
            l.observations.push(format!(
                "case{case}: h* {} falls below (-1)^(k+i) C(d,i) at i = {bad:?}{note} on {who}",
                tuple(&h.entries)
            ));
        }
    }

    if k == 1 {
        let count = count_points(&c.polytopes()[0]).total;
        l.assert(
            id("single-member"),
            dmv_value == BigInt::from(count) - 1,
            format!("dmv {dmv_value}, count {count} on {who}"),
            "|P| - 1",
        );
    }

    let mut reversed = c.polytopes().to_vec();
    reversed.reverse();
    reversed[0] = reversed[0].translate(shift)?;
    let moved = PolytopeCollection::new(reversed)?;
    let moved_me = mixed_ehrhart(&moved)?.polynomial;
    l.assert(
        id("symmetry"),
        moved_me == me.polynomial,
        format!(
            "{moved_me} vs {} after reversing and shifting by {shift:?} on {who}",
            me.polynomial
        ),
        "permutation and translation",
    );

    let mut with_point = c.polytopes().to_vec();
    with_point.push(LatticePolytope::origin(d).translate(shift)?);
    let zero = dmv(&PolytopeCollection::new(with_point)?)?;
    l.assert(
        id("point-member"),
        zero.is_zero(),
        format!("{zero} on {who} plus a point"),
        "ME(n) = 0",
    );

    let doubled = mixed_ehrhart(&c.dilate(2))?.polynomial;
    let substituted = me.polynomial.scale_variable(&rat(2));
    l.assert(
        id("dilation"),
        doubled == substituted,
        format!("{doubled} vs {substituted} on {who}"),
        "ME(2n)",
    );
    Ok(())
}
