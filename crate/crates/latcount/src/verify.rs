//! Identity-verification suites.
//!
//! Each suite runs a deterministic list of cases and reports one result
//! per case. The CLI `verify` subcommand and the acceptance test target
//! both execute these, so there is exactly one definition of what gets
//! checked. Randomized cases draw from a fixed-seed generator and are
//! reproducible byte for byte.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::numtheory::{gcd_i64, gcd_u64};
use crate::algebra::poly::{lagrange_interpolate, QPoly};
use crate::algebra::{rat, rat_u128, ratio, Rational};
use crate::counting::{
    count_closed_simplex, count_hpolytope, count_open_simplex, HPolytopeSpec, SimplexSpec,
};
use crate::dedekind::{dedekind_direct, dedekind_fast, dedekind_root_identity};
use crate::ehrhart::{
    codim2_closed_form, coefficient_from_residues, ehrhart_closed_residue, ehrhart_open_residue,
    hpolytope_count_series, reflect, residue_at_zero_checked, volume_coefficient,
};

/// Verification suites exposed through the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Residue-path closed polynomial vs interpolated brute-force counts,
    /// plus the structural coefficient facts.
    Oracle,
    /// Interior polynomial from its own residue pass vs the reflection of
    /// the closed one, and vs interior counts.
    Reciprocity,
    /// Origin residues of the power-k integrands, both evaluation routes.
    OriginResidues,
    /// Codimension-2 closed form vs interpolated coefficient.
    Codim2,
    /// Multivariate constant-term count vs box enumeration.
    MultiConstraint,
    /// Dedekind sums: three routes, reciprocity law, parity, denominators.
    DedekindIdentities,
}

impl Suite {
    /// Stable identifier used on the command line.
    pub fn id(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Reciprocity => "reciprocity",
            Suite::OriginResidues => "lemma4",
            Suite::Codim2 => "theorem7",
            Suite::MultiConstraint => "theorem8",
            Suite::DedekindIdentities => "dedekind-identities",
        }
    }

    pub fn all() -> [Suite; 6] {
        [
            Suite::Oracle,
            Suite::Reciprocity,
            Suite::OriginResidues,
            Suite::Codim2,
            Suite::MultiConstraint,
            Suite::DedekindIdentities,
        ]
    }

    pub fn from_id(id: &str) -> Option<Suite> {
        Suite::all().into_iter().find(|s| s.id() == id)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Largest simplex dimension in generated families.
    pub max_n: usize,
    /// Largest leg length in generated families.
    pub max_a: u64,
    /// Skip simplices whose leg product exceeds this.
    pub max_product: u128,
    /// Seed for the randomized Dedekind cases.
    pub seed: u64,
    /// Worker threads for independent cases.
    pub threads: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 3,
            max_a: 5,
            max_product: 2000,
            seed: 0x1a7c0547,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Failure explanation; empty on success.
    pub detail: String,
}

impl CheckResult {
    fn pass(name: String) -> Self {
        CheckResult {
            name,
            passed: true,
            detail: String::new(),
        }
    }

    fn from_outcome(name: String, outcome: Result<(), String>) -> Self {
        match outcome {
            Ok(()) => CheckResult::pass(name),
            Err(detail) => CheckResult {
                name,
                passed: false,
                detail,
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn counts(&self) -> (usize, usize) {
        let ok = self.checks.iter().filter(|c| c.passed).count();
        (ok, self.checks.len() - ok)
    }
}

/// All nondecreasing leg tuples with `1 <= n <= max_n`, entries in
/// `1..=max_a`, and leg product at most `max_product`.
pub fn leg_families(max_n: usize, max_a: u64, max_product: u128) -> Vec<Vec<u64>> {
    fn rec(
        n: usize,
        lo: u64,
        max_a: u64,
        max_product: u128,
        product: u128,
        acc: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for a in lo..=max_a {
            let p = product * a as u128;
            if p > max_product {
                break;
            }
            acc.push(a);
            rec(n, a, max_a, max_product, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        rec(n, 1, max_a, max_product, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// The fixed sample used for the origin-residue checks: every dimension
/// from 1 to 4, repeated legs (which force root poles), unit legs, and the
/// pairwise-coprime family, all small enough for the count oracles.
pub fn origin_residue_sample() -> Vec<Vec<u64>> {
    vec![
        vec![5],
        vec![1, 1],
        vec![2, 2],
        vec![2, 3],
        vec![3, 4],
        vec![1, 2, 3],
        vec![2, 2, 2],
        vec![2, 3, 5],
        vec![1, 1, 1, 1],
        vec![2, 3, 5, 7],
    ]
}

/// Fixed H-polytope sample: dimensions and row counts up to 3, entries up
/// to 4.
pub fn hpolytope_sample() -> Vec<Vec<Vec<u64>>> {
    vec![
        vec![vec![4]],
        vec![vec![3], vec![2]],
        vec![vec![2, 3]],
        vec![vec![2, 1], vec![1, 2]],
        vec![vec![3, 4], vec![4, 3]],
        vec![vec![1, 1], vec![2, 3]],
        vec![vec![2, 3], vec![3, 2], vec![4, 4]],
        vec![vec![4, 4], vec![2, 3]],
        vec![vec![2, 2, 2]],
        vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]],
        vec![vec![4, 2, 3], vec![3, 4, 2]],
        vec![vec![1, 2, 3], vec![3, 2, 1]],
    ]
}

fn legs_label(legs: &[u64]) -> String {
    let inner: Vec<String> = legs.iter().map(|a| a.to_string()).collect();
    format!("a=({})", inner.join(","))
}

fn rows_label(rows: &[Vec<u64>]) -> String {
    let inner: Vec<String> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("rows=[{}]", inner.join(";"))
}

fn interpolated_count_polynomial(s: &SimplexSpec) -> Result<QPoly, String> {
    let points: Result<Vec<(Rational, Rational)>, String> = (0..=s.dim() as u32)
        .map(|t| {
            count_closed_simplex(s, t)
                .map(|c| (rat(t as i64), rat_u128(c as u128)))
                .map_err(|e| e.to_string())
        })
        .collect();
    lagrange_interpolate(&points?).map_err(|e| e.to_string())
}

fn run_parallel<T: Send + Sync>(
    items: &[T],
    threads: usize,
    f: impl Fn(&T) -> CheckResult + Sync,
) -> Vec<CheckResult> {
    if threads <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let mut slots: Vec<Option<CheckResult>> = (0..items.len()).map(|_| None).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for _ in 0..threads.min(items.len()) {
            handles.push(scope.spawn(|| {
                let mut local = Vec::new();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= items.len() {
                        break;
                    }
                    local.push((i, f(&items[i])));
                }
                local
            }));
        }
        // report assembly is index-ordered regardless of completion order
        for handle in handles {
            for (i, r) in handle.join().expect("verification worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|s| s.expect("all indices claimed")).collect()
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> SuiteReport {
    let checks = match suite {
        Suite::Oracle => oracle_suite(cfg),
        Suite::Reciprocity => reciprocity_suite(cfg),
        Suite::OriginResidues => origin_residue_suite(cfg),
        Suite::Codim2 => codim2_suite(cfg),
        Suite::MultiConstraint => multi_constraint_suite(cfg),
        Suite::DedekindIdentities => dedekind_suite(cfg),
    };
    SuiteReport {
        suite: suite.id(),
        checks,
    }
}

fn oracle_case(legs: &[u64]) -> CheckResult {
    let name = legs_label(legs);
    let outcome = (|| -> Result<(), String> {
        let s = SimplexSpec::new(legs.to_vec()).map_err(|e| e.to_string())?;
        let oracle = interpolated_count_polynomial(&s)?;
        let (e, _) = ehrhart_closed_residue(&s).map_err(|e| e.to_string())?;
        if e.closed != oracle {
            return Err(format!(
                "residue path gives {} but interpolated counts give {}",
                e.closed.display_t(),
                oracle.display_t()
            ));
        }
        // structural facts, re-checked against the oracle polynomial
        if oracle.degree() != Some(s.dim()) {
            return Err(format!("degree {:?} != {}", oracle.degree(), s.dim()));
        }
        if oracle.coeff(0) != rat(1) {
            return Err(format!("constant coefficient {} != 1", oracle.coeff(0)));
        }
        if oracle.coeff(s.dim()) != volume_coefficient(&s) {
            return Err(format!(
                "leading coefficient {} != {}",
                oracle.coeff(s.dim()),
                volume_coefficient(&s)
            ));
        }
        Ok(())
    })();
    CheckResult::from_outcome(name, outcome)
}

fn oracle_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let families = leg_families(cfg.max_n, cfg.max_a, cfg.max_product);
    run_parallel(&families, cfg.threads, |legs| oracle_case(legs))
}

fn reciprocity_case(legs: &[u64]) -> CheckResult {
    let name = legs_label(legs);
    let outcome = (|| -> Result<(), String> {
        let s = SimplexSpec::new(legs.to_vec()).map_err(|e| e.to_string())?;
        let (e, _) = ehrhart_closed_residue(&s).map_err(|e| e.to_string())?;
        let open = ehrhart_open_residue(&s);
        let reflected = reflect(&e.closed, s.dim());
        if open != reflected {
            return Err(format!(
                "independent interior polynomial {} != reflected closed {}",
                open.display_t(),
                reflected.display_t()
            ));
        }
        for t in 1..=3u32 {
            let counted = count_open_simplex(&s, t).map_err(|e| e.to_string())?;
            let predicted = open.eval_rational(&rat(t as i64));
            if predicted != rat_u128(counted as u128) {
                return Err(format!(
                    "interior count at t={t}: polynomial {predicted} vs enumeration {counted}"
                ));
            }
        }
        Ok(())
    })();
    CheckResult::from_outcome(name, outcome)
}

fn reciprocity_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let families = leg_families(cfg.max_n, cfg.max_a, cfg.max_product);
    run_parallel(&families, cfg.threads, |legs| reciprocity_case(legs))
}

fn origin_residue_case(legs: &[u64]) -> CheckResult {
    let name = legs_label(legs);
    let outcome = (|| -> Result<(), String> {
        let s = SimplexSpec::new(legs.to_vec()).map_err(|e| e.to_string())?;
        let (e, _) = ehrhart_closed_residue(&s).map_err(|e| e.to_string())?;
        for k in 1..=s.dim() {
            for t in 1..=3u32 {
                residue_at_zero_checked(&s, k, t).map_err(|err| format!("k={k}, t={t}: {err}"))?;
            }
            let via_g = coefficient_from_residues(&s, k).map_err(|err| err.to_string())?;
            if via_g != e.closed.coeff(k) {
                return Err(format!(
                    "c_{k} from power residues {} != polynomial coefficient {}",
                    via_g,
                    e.closed.coeff(k)
                ));
            }
        }
        Ok(())
    })();
    CheckResult::from_outcome(name, outcome)
}

fn origin_residue_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let sample = origin_residue_sample();
    run_parallel(&sample, cfg.threads, |legs| origin_residue_case(legs))
}

/// Pairwise-coprime nondecreasing tuples with legs >= 2.
pub fn coprime_families(max_n: usize, max_a: u64, max_product: u128) -> Vec<Vec<u64>> {
    leg_families(max_n, max_a, max_product)
        .into_iter()
        .filter(|legs| {
            legs.len() >= 3
                && legs.iter().all(|&a| a >= 2)
                && legs
                    .iter()
                    .enumerate()
                    .all(|(i, &a)| legs[i + 1..].iter().all(|&b| gcd_u64(a, b) == 1))
        })
        .collect()
}

fn codim2_case(legs: &[u64]) -> CheckResult {
    let name = legs_label(legs);
    let outcome = (|| -> Result<(), String> {
        let s = SimplexSpec::new(legs.to_vec()).map_err(|e| e.to_string())?;
        let closed_form = codim2_closed_form(&s).map_err(|e| e.to_string())?;
        let oracle = interpolated_count_polynomial(&s)?;
        let expected = oracle.coeff(s.dim() - 2);
        if closed_form != expected {
            return Err(format!(
                "closed form {closed_form} != interpolated coefficient {expected}"
            ));
        }
        Ok(())
    })();
    CheckResult::from_outcome(name, outcome)
}

fn codim2_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let families = coprime_families(cfg.max_n.max(4), cfg.max_a.max(7), cfg.max_product);
    run_parallel(&families, cfg.threads, |legs| codim2_case(legs))
}

fn multi_constraint_case(rows: &[Vec<u64>]) -> CheckResult {
    let name = rows_label(rows);
    let outcome = (|| -> Result<(), String> {
        let h = HPolytopeSpec::new(rows.to_vec()).map_err(|e| e.to_string())?;
        for t in 1..=3u32 {
            let series = hpolytope_count_series(&h, t).map_err(|e| e.to_string())?;
            let boxed = count_hpolytope(&h, t).map_err(|e| e.to_string())?;
            if series != boxed {
                return Err(format!(
                    "t={t}: constant-term route {series} vs enumeration {boxed}"
                ));
            }
        }
        Ok(())
    })();
    CheckResult::from_outcome(name, outcome)
}

fn multi_constraint_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let sample = hpolytope_sample();
    run_parallel(&sample, cfg.threads, |rows| multi_constraint_case(rows))
}

fn dedekind_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();

    checks.push(CheckResult::from_outcome(
        "fast-vs-direct (500 random coprime pairs, b <= 10^4)".to_string(),
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut done = 0;
            while done < 500 {
                let b = rng.gen_range(1..=10_000u64);
                let a = rng.gen_range(-20_000..=20_000i64);
                if gcd_i64(a, b) != 1 {
                    continue;
                }
                let fast = dedekind_fast(a, b).map_err(|e| e.to_string())?;
                let direct = dedekind_direct(a, b).map_err(|e| e.to_string())?;
                if fast != direct {
                    return Err(format!("s({a},{b}): fast {fast} vs direct {direct}"));
                }
                done += 1;
            }
            Ok(())
        })(),
    ));

    checks.push(CheckResult::from_outcome(
        "reciprocity-law (1000 random coprime pairs)".to_string(),
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e3779b9);
            let mut done = 0;
            while done < 1000 {
                let a = rng.gen_range(1..=100_000u64);
                let b = rng.gen_range(1..=100_000u64);
                if gcd_u64(a, b) != 1 {
                    continue;
                }
                let (a_q, b_q) = (rat_u128(a as u128), rat_u128(b as u128));
                let lhs = dedekind_fast(a as i64, b).map_err(|e| e.to_string())?
                    + dedekind_fast(b as i64, a).map_err(|e| e.to_string())?
                    + ratio(1, 4);
                let rhs = (&a_q / &b_q + &b_q / &a_q + (&a_q * &b_q).recip()) / rat(12);
                if lhs != rhs {
                    return Err(format!("({a},{b}): {lhs} vs {rhs}"));
                }
                done += 1;
            }
            Ok(())
        })(),
    ));

    checks.push(CheckResult::from_outcome(
        "oddness-and-periodicity (200 random pairs)".to_string(),
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x51ed2705);
            let mut done = 0;
            while done < 200 {
                let b = rng.gen_range(2..=5000u64);
                let a = rng.gen_range(1..=3 * b as i64);
                if gcd_i64(a, b) != 1 {
                    continue;
                }
                let s = dedekind_fast(a, b).map_err(|e| e.to_string())?;
                if dedekind_fast(-a, b).map_err(|e| e.to_string())? != -s.clone() {
                    return Err(format!("s(-{a},{b}) != -s({a},{b})"));
                }
                if dedekind_fast(a + b as i64, b).map_err(|e| e.to_string())? != s {
                    return Err(format!("s({a}+{b},{b}) != s({a},{b})"));
                }
                done += 1;
            }
            Ok(())
        })(),
    ));

    checks.push(CheckResult::from_outcome(
        "root-identity (all coprime pairs, 2 <= b <= 30)".to_string(),
        (|| {
            for b in 2..=30u64 {
                for a in 1..b {
                    if gcd_u64(a, b) != 1 {
                        continue;
                    }
                    let via_roots = dedekind_root_identity(a as i64, b).map_err(|e| e.to_string())?;
                    let direct = dedekind_direct(a as i64, b).map_err(|e| e.to_string())?;
                    if via_roots != direct {
                        return Err(format!("s({a},{b}): roots {via_roots} vs direct {direct}"));
                    }
                }
            }
            Ok(())
        })(),
    ));

    checks.push(CheckResult::from_outcome(
        "denominator-divides-6b (300 random pairs)".to_string(),
        (|| {
            use num::One;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x2545f491);
            let mut done = 0;
            while done < 300 {
                let b = rng.gen_range(1..=5000u64);
                let a = rng.gen_range(1..=50_000i64);
                if gcd_i64(a, b) != 1 {
                    continue;
                }
                let s = dedekind_fast(a, b).map_err(|e| e.to_string())?;
                let scaled = s * rat_u128(6 * b as u128);
                if !scaled.denom().is_one() {
                    return Err(format!("6*{b}*s({a},{b}) = {scaled} is not integral"));
                }
                done += 1;
            }
            Ok(())
        })(),
    ));

    checks.push(CheckResult::from_outcome(
        "fast-evaluation-speed (b near 10^6, < 1 ms each)".to_string(),
        (|| {
            let mut pairs = Vec::new();
            let mut b = 1_000_000u64;
            while pairs.len() < 20 {
                let a = 987_654_321i64;
                if gcd_i64(a, b) == 1 {
                    pairs.push((a, b));
                }
                b -= 1;
            }
            let start = Instant::now();
            for &(a, b) in &pairs {
                dedekind_fast(a, b).map_err(|e| e.to_string())?;
            }
            let per_call = start.elapsed() / pairs.len() as u32;
            if per_call.as_micros() >= 1000 {
                return Err(format!("average {per_call:?} per evaluation"));
            }
            Ok(())
        })(),
    ));

    checks
}
