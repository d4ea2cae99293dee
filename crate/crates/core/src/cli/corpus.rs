//! Seeded random corpus verification of the reduction criteria.
//!
//! Each sampled map is tested at every prime up to the prime bound and at
//! every prime that could make a verdict differ from the generic one:
//! primes of the resultant, of the Wronskian content, and of the collision
//! integer of the ramification radical that are not explained by the branch
//! radical. A prime `p > 2d - 2` dividing neither the resultant nor the
//! Wronskian content has separable simple reduction, so a violation needs
//! colliding ramification points with a squarefree branch locus, and the
//! first of these forces `p` into that collision integer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::criteria::{wronskian_content, MapAnalysis, ReductionReport};
use crate::arith::factor::{factor_integer, primes_up_to};
use crate::arith::form::{collision_integer, IntBinaryForm};
use crate::arith::modp::Prime;
use crate::error::{Error, Result};
use crate::proj::map::{new_map, RationalMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    pub count: usize,
    pub seed: u64,
    pub deg_min: usize,
    pub deg_max: usize,
    pub coeff_bound: i64,
    pub prime_bound: u32,
    /// Not part of the report, which must not depend on it.
    #[serde(skip)]
    pub workers: usize,
    /// Count violations of the criterion with the separability hypothesis
    /// removed.
    pub skip_separability_guard: bool,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            count: 500,
            seed: 42,
            deg_min: 2,
            deg_max: 5,
            coeff_bound: 20,
            prime_bound: 50,
            workers: 1,
            skip_separability_guard: false,
        }
    }
}

impl CorpusConfig {
    pub fn validate(&self) -> Result<()> {
        if self.deg_min < 2 || self.deg_max < self.deg_min {
            return Err(Error::InvalidArgument("need 2 <= deg-min <= deg-max".into()));
        }
        if self.coeff_bound < 1 || self.prime_bound < 2 || self.workers < 1 {
            return Err(Error::InvalidArgument(
                "coeff-bound, prime-bound and workers must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Draws `count` maps. Pairs with a common factor are redrawn; the second
/// value is the number of rejected draws.
pub fn sample_maps(cfg: &CorpusConfig) -> (Vec<RationalMap>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let h = cfg.coeff_bound;
    let mut maps = Vec::with_capacity(cfg.count);
    let mut rejected = 0;
    while maps.len() < cfg.count {
        let d = rng.gen_range(cfg.deg_min..=cfg.deg_max);
        let mut draw = || {
            IntBinaryForm::new((0..=d).map(|_| BigInt::from(rng.gen_range(-h..=h))).collect())
        };
        let f = draw();
        let g = draw();
        match new_map(f, g) {
            Ok(m) => maps.push(m),
            Err(_) => rejected += 1,
        }
    }
    (maps, rejected)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub map: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Prime>,
    pub kind: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Everything learned about one map.
#[derive(Clone, Debug)]
pub struct MapOutcome {
    pub map: RationalMap,
    pub reports: Vec<ReductionReport>,
    pub violations: Vec<Violation>,
    /// Every candidate integer was fully factored.
    pub complete: bool,
    /// Primes of the ramification collision integer needing their own test.
    pub residual_primes: usize,
}

fn violation(map: &RationalMap, p: Option<&Prime>, kind: &str, detail: String) -> Violation {
    Violation {
        map: map.to_string(),
        p: p.cloned(),
        kind: kind.to_string(),
        detail,
    }
}

/// Removes from `n` every prime factor it shares with `m`.
fn strip_common(n: &mut BigInt, m: &BigInt) {
    loop {
        let g = n.gcd(m);
        if g.is_one() {
            return;
        }
        *n /= g;
    }
}

/// The primes at which a map is tested, and whether they were all found.
pub fn candidate_primes(a: &MapAnalysis, prime_bound: u32) -> Result<(Vec<Prime>, bool, usize)> {
    let d = a.degree();
    let small_bound = prime_bound.max(2 * d as u32 - 2);
    let mut primes: std::collections::BTreeSet<Prime> = primes_up_to(small_bound)
        .into_iter()
        .map(|p| Prime::from_u64(p as u64).expect("sieve output is prime"))
        .collect();
    let mut complete = true;
    let res = a.resultant().clone();
    let content = wronskian_content(a.map());
    for n in [&res, &content] {
        let f = factor_integer(n)?;
        complete &= f.is_complete();
        for p in f.distinct() {
            primes.insert(Prime::new(p)?);
        }
    }
    let core = a.ramification()?;
    let mut residual = collision_integer(&core.rad_w).abs();
    let primorial: BigInt = primes_up_to(small_bound).into_iter().map(BigInt::from).product();
    for m in [&collision_integer(&core.rad_b), &res, &content, &primorial] {
        strip_common(&mut residual, m);
    }
    let mut residual_primes = 0;
    if !residual.is_one() {
        let f = factor_integer(&residual)?;
        complete &= f.is_complete();
        for p in f.distinct() {
            residual_primes += 1;
            primes.insert(Prime::new(p)?);
        }
    }
    Ok((primes.into_iter().collect(), complete, residual_primes))
}

pub fn evaluate_map(map: &RationalMap, cfg: &CorpusConfig) -> MapOutcome {
    let a = MapAnalysis::new(map.clone());
    let mut out = MapOutcome {
        map: map.clone(),
        reports: Vec::new(),
        violations: Vec::new(),
        complete: true,
        residual_primes: 0,
    };
    match a.ramification() {
        Ok(core) => {
            let rh = core.decomposition.weighted_degree();
            if rh != 2 * a.degree() - 2 {
                out.violations.push(violation(
                    map,
                    None,
                    "riemann_hurwitz",
                    format!("sum of i*deg A_i is {rh}"),
                ));
            }
        }
        Err(e) => {
            out.violations.push(violation(map, None, "error", e.to_string()));
            return out;
        }
    }
    let primes = match candidate_primes(&a, cfg.prime_bound) {
        Ok((primes, complete, residual)) => {
            out.complete = complete;
            out.residual_primes = residual;
            primes
        }
        Err(e) => {
            out.complete = !matches!(e, Error::BudgetExceeded(_));
            out.violations.push(violation(map, None, "error", e.to_string()));
            return out;
        }
    };
    for p in &primes {
        match a.report_at(p) {
            Ok(r) => {
                let consistent = if cfg.skip_separability_guard {
                    r.unguarded_consistent()
                } else {
                    r.theorem1_consistent
                };
                if !consistent {
                    out.violations.push(violation(map, Some(p), "theorem1", String::new()));
                }
                if r.large_prime_consistent == Some(false) {
                    out.violations.push(violation(map, Some(p), "large_prime", String::new()));
                }
                if !r.lemma7_consistent() {
                    out.violations.push(violation(map, Some(p), "lemma7", String::new()));
                }
                out.reports.push(r);
            }
            Err(Error::Internal(msg)) => {
                out.violations.push(violation(map, Some(p), "two_path", msg));
            }
            Err(e) => {
                out.violations.push(violation(map, Some(p), "error", e.to_string()));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub pairs: u64,
    pub sgr: u64,
    pub cgr: u64,
    pub separable: u64,
    pub branch_nonsingular: u64,
    pub ram_nonsingular: u64,
    /// Keyed by `sgr/cgr/separable/branch_nonsingular` as `0`/`1` digits.
    pub combinations: BTreeMap<String, u64>,
}

impl VerdictCounts {
    fn add(&mut self, r: &ReductionReport) {
        self.pairs += 1;
        self.sgr += r.sgr as u64;
        self.cgr += r.cgr as u64;
        self.separable += r.separable as u64;
        self.branch_nonsingular += r.branch_nonsingular as u64;
        self.ram_nonsingular += r.ram_nonsingular as u64;
        let key: String = [r.sgr, r.cgr, r.separable, r.branch_nonsingular]
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        *self.combinations.entry(key).or_default() += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub config: CorpusConfig,
    pub maps: usize,
    pub rejected_draws: usize,
    pub by_degree: BTreeMap<usize, usize>,
    pub verdicts: VerdictCounts,
    /// Violations of the main consistency check.
    pub violation_count: usize,
    pub violations_by_kind: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
    /// Maps whose ramification collision integer had prime factors not
    /// shared with the branch collision integer or the resultant.
    pub maps_with_residual_primes: usize,
    pub complete: bool,
}

impl CorpusSummary {
    pub fn total_violations(&self) -> usize {
        self.violations.len()
    }
}

pub fn aggregate(cfg: &CorpusConfig, outcomes: &[MapOutcome], rejected: usize) -> CorpusSummary {
    let mut s = CorpusSummary {
        config: cfg.clone(),
        maps: outcomes.len(),
        rejected_draws: rejected,
        by_degree: BTreeMap::new(),
        verdicts: VerdictCounts::default(),
        violation_count: 0,
        violations_by_kind: BTreeMap::new(),
        violations: Vec::new(),
        maps_with_residual_primes: 0,
        complete: true,
    };
    for o in outcomes {
        *s.by_degree.entry(o.map.degree()).or_default() += 1;
        for r in &o.reports {
            s.verdicts.add(r);
        }
        for v in &o.violations {
            *s.violations_by_kind.entry(v.kind.clone()).or_default() += 1;
            if v.kind == "theorem1" {
                s.violation_count += 1;
            }
        }
        s.violations.extend(o.violations.iter().cloned());
        s.maps_with_residual_primes += (o.residual_primes > 0) as usize;
        s.complete &= o.complete;
    }
    s
}

/// Samples, evaluates on `cfg.workers` threads, and aggregates in sample order.
pub fn run_corpus(cfg: &CorpusConfig) -> Result<(CorpusSummary, Vec<MapOutcome>)> {
    cfg.validate()?;
    let (maps, rejected) = sample_maps(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    let outcomes: Vec<MapOutcome> =
        pool.install(|| maps.par_iter().map(|m| evaluate_map(m, cfg)).collect());
    Ok((aggregate(cfg, &outcomes, rejected), outcomes))
}
