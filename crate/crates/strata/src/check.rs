//! Named verification suites.
//!
//! Every identity the engine implements has a seeded randomized (or, where
//! the statement is finite, exhaustive) suite here. The CLI `check` command
//! and the acceptance tests both dispatch through [`run_suite`], so a
//! reported pass is exactly reproducible from the (suite, seed, cases)
//! triple.

use crate::charclass::BetaSeries;
use crate::morin::{class_product, morin_mul, morin_rank};
use crate::multipoint::{
    herbert_step, multipoint_numbers, product_double_points, product_immersion_multipoint,
    CobordismClass,
};
use crate::partition::Partition;
use crate::sample::{
    random_general_map, random_immersion, random_map_data, random_morin, random_morin_like,
    random_series, random_space, random_total, RandomScalar, Rng,
};
use crate::scalar::{rat, Mod2, Rat, Scalar};
use crate::singularity::{sigma1_product, sigma2_product, suspend, thom_sigma1, thom_sigma2};
use crate::error::{Error, Result};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn passed(name: &str, cases: u32) -> Self {
        Check { name: name.into(), pass: true, detail: format!("cases={cases}") }
    }

    fn failed(name: &str, case: u32, what: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: false,
            detail: format!("case {case}: {}", what.into()),
        }
    }
}

/// All suite names, in the order `check all` runs them.
pub const SUITES: &[&str] = &[
    "beta-mult",
    "beta-inverse",
    "series-paths",
    "herbert-recursion",
    "multi-product",
    "double-product",
    "sigma1-product",
    "sigma2-product",
    "suspension",
    "class-product",
    "morin-ring",
    "morin-rank",
    "euler-adjunction",
];

/// Runs a named suite with the given seed and case budget.
pub fn run_suite(name: &str, seed: u64, cases: u32) -> Result<Vec<Check>> {
    let mut rng = Rng::new(seed);
    match name {
        "beta-mult" => Ok(vec![beta_mult(&mut rng, cases)]),
        "beta-inverse" => Ok(vec![beta_inverse(&mut rng, cases)]),
        "series-paths" => Ok(vec![series_paths(&mut rng, cases)]),
        "herbert-recursion" => Ok(vec![herbert_recursion(&mut rng, cases)]),
        "multi-product" => Ok(vec![multi_product(&mut rng, cases)]),
        "double-product" => Ok(vec![double_product(&mut rng, cases)]),
        "sigma1-product" => Ok(vec![sigma1_suite(&mut rng, cases)]),
        "sigma2-product" => Ok(vec![sigma2_suite(&mut rng, cases)]),
        "suspension" => Ok(vec![suspension(&mut rng, cases)]),
        "class-product" => Ok(vec![class_product_oracle(&mut rng, cases)]),
        "morin-ring" => Ok(morin_ring(&mut rng, cases)),
        "morin-rank" => Ok(vec![morin_rank_suite()]),
        "euler-adjunction" => Ok(vec![euler_adjunction()]),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, seed, cases)?);
            }
            Ok(out)
        }
        other => Err(Error::Usage(format!(
            "unknown suite {other:?}; available: {}, all",
            SUITES.join(", ")
        ))),
    }
}

fn max_dim<K: Scalar>() -> usize {
    if K::DEGREE_STEP == 4 {
        16
    } else {
        8
    }
}

/// beta(u + v) = beta(u) * beta(v), on the general convolution path.
fn beta_mult(rng: &mut Rng, cases: u32) -> Check {
    fn case<K: RandomScalar>(rng: &mut Rng) -> bool {
        let a = crate::sample::random_algebra::<K>(rng, max_dim::<K>());
        let u = random_total(rng, &a, None);
        let v = random_total(rng, &a, None);
        let lhs = u.whitney_sum(&v).beta();
        let rhs = u.beta().mul_convolution(&v.beta());
        lhs == rhs
    }
    for i in 0..cases {
        let ok = if i % 2 == 0 { case::<Rat>(rng) } else { case::<Mod2>(rng) };
        if !ok {
            return Check::failed("beta-mult", i, "beta(u+v) != beta(u)*beta(v)");
        }
    }
    Check::passed("beta-mult", cases)
}

/// beta(u) * beta(u^{-1}) = 1, on the general convolution path.
fn beta_inverse(rng: &mut Rng, cases: u32) -> Check {
    fn case<K: RandomScalar>(rng: &mut Rng) -> bool {
        let a = crate::sample::random_algebra::<K>(rng, max_dim::<K>());
        let u = random_total(rng, &a, None);
        u.beta().mul_convolution(&u.stable_inverse().beta()) == BetaSeries::unit(&a)
    }
    for i in 0..cases {
        let ok = if i % 2 == 0 { case::<Rat>(rng) } else { case::<Mod2>(rng) };
        if !ok {
            return Check::failed("beta-inverse", i, "beta(u)*beta(u^-1) != 1");
        }
    }
    Check::passed("beta-inverse", cases)
}

/// The tagged shortcut agrees with convolution, and the general product is
/// commutative and associative.
fn series_paths(rng: &mut Rng, cases: u32) -> Check {
    fn case<K: RandomScalar>(rng: &mut Rng) -> std::result::Result<(), &'static str> {
        let a = crate::sample::random_algebra::<K>(rng, max_dim::<K>().min(12));
        let u = random_total(rng, &a, None);
        let v = random_total(rng, &a, None);
        let su = u.beta();
        let sv = v.beta();
        if su.mul(&sv) != su.mul_convolution(&sv) {
            return Err("tagged product disagrees with convolution");
        }
        let p = random_series::<K>(rng, &a, 0);
        let q = random_series::<K>(rng, &a, 0);
        if p.mul_convolution(&q) != q.mul_convolution(&p) {
            return Err("product is not commutative");
        }
        let r = su;
        if p.mul_convolution(&q).mul_convolution(&r)
            != p.mul_convolution(&q.mul_convolution(&r))
        {
            return Err("product is not associative");
        }
        Ok(())
    }
    for i in 0..cases {
        let res = if i % 2 == 0 { case::<Rat>(rng) } else { case::<Mod2>(rng) };
        if let Err(what) = res {
            return Check::failed("series-paths", i, what);
        }
    }
    Check::passed("series-paths", cases)
}

/// Iterating the one-step recursion from m_1 = beta(M) with vanishing
/// pulled series reproduces the closed form (-e)^{r-1} beta(M)^r for
/// r = 2..4, coefficientwise.
fn herbert_recursion(rng: &mut Rng, cases: u32) -> Check {
    fn case<K: RandomScalar>(rng: &mut Rng) -> std::result::Result<(), String> {
        let imm = random_immersion::<K>(rng, max_dim::<K>());
        let data = imm.to_general();
        let zero = BetaSeries::zero(imm.source().algebra());
        let e = imm.euler().clone();
        let mut m = imm.source().tangent().beta();
        for r in 2..=4u32 {
            m = herbert_step(&data, &m, &zero);
            let closed = imm
                .source()
                .tangent()
                .whitney_pow(r)
                .beta()
                .scale(&e.neg().pow(r - 1));
            if m != closed {
                return Err(format!("recursion differs from closed form at r={r}"));
            }
            let dim = imm.source().dim() as i64 - (r as i64 - 1) * imm.codim() as i64;
            if CobordismClass::from_series(dim, &m) != multipoint_numbers(&imm, r) {
                return Err(format!("paired numbers differ at r={r}"));
            }
        }
        Ok(())
    }
    for i in 0..cases {
        let res = if i % 2 == 0 { case::<Rat>(rng) } else { case::<Mod2>(rng) };
        if let Err(what) = res {
            return Check::failed("herbert-recursion", i, what);
        }
    }
    Check::passed("herbert-recursion", cases)
}

fn random_even_immersion<K: RandomScalar>(rng: &mut Rng, dim: usize) -> crate::multipoint::ImmersionData<K> {
    loop {
        let imm = random_immersion::<K>(rng, dim);
        if imm.codim() % 2 == 0 {
            return imm;
        }
    }
}

/// The r-fold point class of a product immersion is (-1)^{r-1} times the
/// Kunneth product of the factors' classes, for r = 2..4, checked inside
/// `product_immersion_multipoint` against the closed form on the tensor
/// model.
fn multi_product(rng: &mut Rng, cases: u32) -> Check {
    fn case<K: RandomScalar>(rng: &mut Rng) -> std::result::Result<(), String> {
        let g1 = random_even_immersion::<K>(rng, if K::DEGREE_STEP == 4 { 12 } else { 6 });
        let g2 = random_even_immersion::<K>(rng, if K::DEGREE_STEP == 4 { 12 } else { 6 });
        for r in 2..=4u32 {
            product_immersion_multipoint(&g1, &g2, r, true)
                .map_err(|e| format!("{e} (r={r})"))?;
        }
        Ok(())
    }
    for i in 0..cases {
        let res = if i % 2 == 0 { case::<Rat>(rng) } else { case::<Mod2>(rng) };
        if let Err(what) = res {
            return Check::failed("multi-product", i, what);
        }
    }
    Check::passed("multi-product", cases)
}

/// The three-term double-point formula agrees with the recursion-derived
/// left side on the tensor model, for synthetic Gysin data.
fn double_product(rng: &mut Rng, cases: u32) -> Check {
    fn case<K: RandomScalar>(rng: &mut Rng) -> std::result::Result<(), String> {
        let g1 = random_general_map::<K>(rng, if K::DEGREE_STEP == 4 { 12 } else { 6 });
        let g2 = random_general_map::<K>(rng, if K::DEGREE_STEP == 4 { 12 } else { 6 });
        product_double_points(&g1, &g2, true).map_err(|e| e.to_string())?;
        Ok(())
    }
    for i in 0..cases {
        let res = if i % 2 == 0 { case::<Rat>(rng) } else { case::<Mod2>(rng) };
        if let Err(what) = res {
            return Check::failed("double-product", i, what);
        }
    }
    Check::passed("double-product", cases)
}

/// The corank-1 suspension expansion sums to the direct Cartan expansion.
fn sigma1_suite(rng: &mut Rng, cases: u32) -> Check {
    for i in 0..cases {
        let f = random_map_data::<Mod2>(rng, 6);
        let g = random_map_data::<Mod2>(rng, 6);
        if let Err(e) = sigma1_product(&f, &g, true) {
            return Check::failed("sigma1-product", i, e.to_string());
        }
    }
    Check::passed("sigma1-product", cases)
}

/// The corank-2 suspension expansion sums to the direct Cartan expansion.
fn sigma2_suite(rng: &mut Rng, cases: u32) -> Check {
    for i in 0..cases {
        let f = random_map_data::<Rat>(rng, 12);
        let g = random_map_data::<Rat>(rng, 12);
        if let Err(e) = sigma2_product(&f, &g, true) {
            return Check::failed("sigma2-product", i, e.to_string());
        }
    }
    Check::passed("sigma2-product", cases)
}

/// Suspension by trivial directions leaves the stable normal class and the
/// Thom polynomial values unchanged.
fn suspension(rng: &mut Rng, cases: u32) -> Check {
    for i in 0..cases {
        let f = random_map_data::<Mod2>(rng, 6);
        for j in 0..=3i64 {
            let up = suspend(&f, j).expect("non-negative suspension");
            if thom_sigma1(&up) != f.normal().component_signed(f.codim() + j + 1) {
                return Check::failed("suspension", i, "corank-1 value moved under suspension");
            }
        }
        let g = random_map_data::<Rat>(rng, 12);
        for j in 0..=2i64 {
            let up = suspend(&g, 2 * j).expect("non-negative suspension");
            let got = thom_sigma2(&up).expect("even codimension");
            if got != g.normal().component_signed((g.codim() + 2 * j + 2) / 2) {
                return Check::failed("suspension", i, "corank-2 value moved under suspension");
            }
        }
    }
    Check::passed("suspension", cases)
}

/// The splitting convolution agrees with the tensor-model oracle (pairing
/// the product space's beta series directly), and is commutative,
/// associative and unital on random number vectors.
fn class_product_oracle(rng: &mut Rng, cases: u32) -> Check {
    fn case<K: RandomScalar>(rng: &mut Rng) -> std::result::Result<(), &'static str> {
        let m = random_space::<K>(rng, if K::DEGREE_STEP == 4 { 12 } else { 6 });
        let n = random_space::<K>(rng, if K::DEGREE_STEP == 4 { 12 } else { 6 });
        let a = CobordismClass::from_series(m.dim() as i64, &m.tangent().beta());
        let b = CobordismClass::from_series(n.dim() as i64, &n.tangent().beta());
        let product = class_product(&a, &b);
        let (mn, _) = m.product(&n);
        let oracle = CobordismClass::from_series(mn.dim() as i64, &mn.tangent().beta());
        if product != oracle {
            return Err("convolution differs from tensor-model pairing");
        }
        Ok(())
    }
    for i in 0..cases {
        let res = if i % 2 == 0 { case::<Rat>(rng) } else { case::<Mod2>(rng) };
        if let Err(what) = res {
            return Check::failed("class-product", i, what);
        }
        let (da, db, dc) = (
            4 * rng.int_in(0, 3) as usize,
            4 * rng.int_in(0, 3) as usize,
            4 * rng.int_in(0, 2) as usize,
        );
        let a = crate::sample::random_cobordism_class(rng, da);
        let b = crate::sample::random_cobordism_class(rng, db);
        let c = crate::sample::random_cobordism_class(rng, dc);
        if class_product(&a, &b) != class_product(&b, &a) {
            return Check::failed("class-product", i, "not commutative");
        }
        if class_product(&class_product(&a, &b), &c)
            != class_product(&a, &class_product(&b, &c))
        {
            return Check::failed("class-product", i, "not associative");
        }
        let unit = CobordismClass::new(
            0,
            [(Partition::empty(), Rat::one())].into_iter().collect(),
        )
        .expect("point class");
        if class_product(&a, &unit) != a {
            return Check::failed("class-product", i, "point class is not a unit");
        }
    }
    Check::passed("class-product", cases)
}

/// Ring axioms of the Morin product: commutativity, associativity,
/// bigraded additivity, distributivity over strata-wise addition, the
/// even-codimension annihilation rule, and closure of the part bound.
fn morin_ring(rng: &mut Rng, cases: u32) -> Vec<Check> {
    let mut checks = Vec::new();
    let fail = |name: &str, case: u32, what: &str| Check::failed(name, case, what);

    for i in 0..cases {
        let a = random_morin(rng, false);
        let b = random_morin(rng, false);
        let c = random_morin(rng, false);

        let ab = morin_mul(&a, &b);
        if ab != morin_mul(&b, &a) {
            checks.push(fail("morin-commutative", i, "a*b != b*a"));
            break;
        }
        if morin_mul(&ab, &c) != morin_mul(&a, &morin_mul(&b, &c)) {
            checks.push(fail("morin-associative", i, "(a*b)*c != a*(b*c)"));
            break;
        }
        let (n, kk) = ab.bidegree();
        if (n, kk) != (a.n() + b.n(), (a.k() + 1) + (b.k() + 1)) {
            checks.push(fail("morin-bigraded", i, "bidegrees do not add"));
            break;
        }
        let a2 = random_morin_like(rng, &a);
        let sum = a.add(&a2).expect("same bidegree");
        let lhs = morin_mul(&sum, &b);
        let rhs = morin_mul(&a, &b)
            .add(&morin_mul(&a2, &b))
            .expect("same bidegree");
        if lhs != rhs {
            checks.push(fail("morin-distributive", i, "(a+a')*b != a*b + a'*b"));
            break;
        }
        if (a.k() % 2 == 0 || b.k() % 2 == 0)
            && ab.strata().iter().any(|(r, c)| *r >= 1 && !c.is_zero())
        {
            checks.push(fail("morin-annihilation", i, "even factor left higher strata"));
            break;
        }
        let ba = random_morin(rng, true);
        let bb = random_morin(rng, true);
        if ba.k() % 2 == 1 && bb.k() % 2 == 1 {
            let prod = morin_mul(&ba, &bb);
            if !prod.satisfies_part_bound() {
                checks.push(fail("morin-part-bound", i, "part bound not closed under product"));
                break;
            }
        }
    }
    if checks.is_empty() {
        for name in [
            "morin-commutative",
            "morin-associative",
            "morin-bigraded",
            "morin-distributive",
            "morin-annihilation",
            "morin-part-bound",
        ] {
            checks.push(Check::passed(name, cases));
        }
    }
    checks
}

/// Rank formula values and an independent counting oracle.
fn morin_rank_suite() -> Check {
    // Codimension one: rank 1 exactly in dimensions divisible by 4.
    for n in 0..=40 {
        let expected = u64::from(n % 4 == 0);
        if morin_rank(n, 1) != expected {
            return Check::failed("morin-rank", n, "codimension-1 rank wrong");
        }
    }
    if morin_rank(8, 3) != 2 {
        return Check::failed("morin-rank", 0, "rank(8,3) != 2");
    }
    for k in 1..=9 {
        if morin_rank(0, k) != 1 {
            return Check::failed("morin-rank", k, "rank(0,k) != 1");
        }
    }
    // Independent oracles: bounded-partition counting by dynamic
    // programming for odd k, exhaustive exponent enumeration for even k.
    for k in [1u32, 3, 5] {
        let bound = (k - 1) / 2;
        for n in 0..=16 {
            let mut expected = 0u64;
            let mut i = 0;
            while 2 * i * (k + 1) <= n {
                let m = n - 2 * i * (k + 1);
                if m % 4 == 0 {
                    expected += count_partitions_dp(m / 4, bound);
                }
                i += 1;
            }
            if morin_rank(n, k) != expected {
                return Check::failed("morin-rank", n, "odd-k oracle mismatch");
            }
        }
    }
    for k in [2u32, 4, 6] {
        for n in 0..=16 {
            if morin_rank(n, k) != count_monomials_brute(n, k) {
                return Check::failed("morin-rank", n, "even-k oracle mismatch");
            }
        }
    }
    Check { name: "morin-rank".into(), pass: true, detail: "exhaustive".into() }
}

/// Partition count with bounded parts via the standard two-variable
/// recurrence, independent of the enumeration the rank formula uses.
fn count_partitions_dp(weight: u32, max_part: u32) -> u64 {
    let w = weight as usize;
    let mut table = vec![0u64; w + 1];
    table[0] = 1;
    for part in 1..=max_part as usize {
        for v in part..=w {
            table[v] += table[v - part];
        }
    }
    table[w]
}

/// Exhaustive enumeration of monomials of degree n in the generators
/// p_1..p_{k/2-1} (degree 4j) and the Euler generator (degree k).
fn count_monomials_brute(n: u32, k: u32) -> u64 {
    let mut degrees: Vec<u32> = (1..k / 2).map(|j| 4 * j).collect();
    degrees.push(k);
    fn rec(n: u32, degrees: &[u32]) -> u64 {
        match degrees.split_first() {
            None => u64::from(n == 0),
            Some((&d, rest)) => {
                let mut total = 0;
                let mut used = 0;
                while used <= n {
                    total += rec(n - used, rest);
                    used += d;
                }
                total
            }
        }
    }
    rec(n, &degrees)
}

/// Euler-locus values for hypersurfaces in projective space against the
/// adjunction closed form, plus the Euler characteristic of the sphere.
fn euler_adjunction() -> Check {
    use crate::algebra::GradedAlgebra;
    use crate::charclass::{BundleData, SpaceModel, TotalClass};
    use crate::multipoint::euler_locus;
    use std::collections::BTreeMap;

    // chi(S^2) = 2 from the zero locus of a section of TS^2.
    let s2 = GradedAlgebra::<Rat>::truncated_polynomial(&[("s", 2, 2)], 2).unwrap();
    let e = s2.generator("s").unwrap().scale(&rat(2, 1));
    let ts2 = BundleData::new(TotalClass::one(&s2), 2, Some(e)).unwrap();
    let locus = euler_locus(&SpaceModel::parallelizable(s2), &ts2).unwrap();
    if locus.get(&Partition::empty()) != rat(2, 1) {
        return Check { name: "euler-adjunction".into(), pass: false, detail: "chi(S^2)".into() };
    }

    // Degree-d hypersurface V_d in CP^3: p_1[V_d] = d(4 - d^2).
    for d in 1i64..=5 {
        let alg = GradedAlgebra::<Rat>::truncated_polynomial(&[("x", 2, 4)], 6).unwrap();
        let x = alg.generator("x").unwrap();
        let x2 = x.pow(2);
        let tangent =
            TotalClass::new(&alg, BTreeMap::from([(1, x2.scale(&rat(4, 1)))])).unwrap();
        let bundle = BundleData::new(
            TotalClass::new(&alg, BTreeMap::from([(1, x2.scale(&rat(d * d, 1)))])).unwrap(),
            2,
            Some(x.scale(&rat(d, 1))),
        )
        .unwrap();
        let locus = euler_locus(&SpaceModel::new(alg, tangent), &bundle).unwrap();
        let expected = rat(d * (4 - d * d), 1);
        if locus.get(&Partition::new(vec![1])) != expected {
            return Check {
                name: "euler-adjunction".into(),
                pass: false,
                detail: format!("degree {d} hypersurface"),
            };
        }
    }
    Check { name: "euler-adjunction".into(), pass: true, detail: "exhaustive".into() }
}
