//! Constructive solvers for the local problem: given four real-valued
//! functions on `Z_q^*` and a target residue `n`, produce units
//! `x1 + x2 + x3 + x4 ≡ n (mod q)` with
//! `f1(x1) + f2(x2) ≥ E(f1 + f2)` and `f3(x3) + f4(x4) ≥ E(f3 + f4)`,
//! where `E` averages over the unit group.
//!
//! Two routes are provided: an exhaustive search with a deterministic
//! lexicographic tie-break, and a structured solver that recurses on the
//! multiplicative structure of `q` (prime base case, prime-power lift by
//! progression averaging, coprime split via CRT). A bounded variant for
//! `[0,1]`-valued functions with strictly supercritical means additionally
//! guarantees a strict total `> 2` and nonvanishing values, handling
//! `3 | q` by an explicit two-element case analysis.
//!
//! Inequalities are exact floating-point comparisons with no tolerance;
//! randomized inputs keep them away from ties.

use crate::error::{Error, Result};
use crate::parallel;
use crate::residue::{crt_combine, factorize, gcd, units, UnitList};
use crate::rng::{stream_seed, SplitMix64};

/// A real-valued table on the unit group `Z_q^*`. Values are stored aligned
/// with the ascending unit enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueFunction {
    q: u64,
    units: Vec<u64>,
    values: Vec<f64>,
}

impl ResidueFunction {
    /// Builds a table from values aligned with `units(q)` in ascending order.
    pub fn from_values(q: u64, values: Vec<f64>) -> Self {
        let units = units(q).elements;
        assert_eq!(
            units.len(),
            values.len(),
            "value table must cover exactly the units of {q}"
        );
        ResidueFunction { q, units, values }
    }

    pub fn from_fn(q: u64, f: impl Fn(u64) -> f64) -> Self {
        let units = units(q).elements;
        let values = units.iter().map(|&x| f(x)).collect();
        ResidueFunction { q, units, values }
    }

    pub fn constant(q: u64, c: f64) -> Self {
        Self::from_fn(q, |_| c)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the unit `x`; panics if `x` is not a unit mod `q`.
    pub fn get(&self, x: u64) -> f64 {
        let idx = self
            .units
            .binary_search(&x)
            .unwrap_or_else(|_| panic!("{x} is not a unit mod {}", self.q));
        self.values[idx]
    }

    /// Average over the unit group.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// Average value of `f` over `Z_q^*`.
pub fn unit_mean(f: &ResidueFunction) -> f64 {
    f.mean()
}

/// One local problem: four tables on the same unit group plus a target.
#[derive(Debug, Clone)]
pub struct LocalInstance {
    pub q: u64,
    pub f: [ResidueFunction; 4],
    pub n: u64,
}

impl LocalInstance {
    pub fn new(q: u64, f: [ResidueFunction; 4], n: u64) -> Self {
        for t in &f {
            assert_eq!(t.q(), q, "all tables must live on Z_{q}^*");
        }
        LocalInstance { q, f, n: n % q.max(1) }
    }
}

/// A solved instance: the four units, their table values, and the two
/// unit-group means the pairwise sums must beat.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSolution {
    pub x: [u64; 4],
    pub v: [f64; 4],
    pub k1: f64,
    pub k2: f64,
}

fn admissible(q: u64) -> Result<()> {
    if gcd(q, 6) != 1 {
        return Err(Error::PreconditionViolated(format!(
            "modulus {q} shares a factor with 6"
        )));
    }
    Ok(())
}

fn solution_from(inst: &LocalInstance, x: [u64; 4]) -> LocalSolution {
    let v = [
        inst.f[0].get(x[0]),
        inst.f[1].get(x[1]),
        inst.f[2].get(x[2]),
        inst.f[3].get(x[3]),
    ];
    LocalSolution {
        x,
        v,
        k1: inst.f[0].mean() + inst.f[1].mean(),
        k2: inst.f[2].mean() + inst.f[3].mean(),
    }
}

/// Exhaustive solver. Scans `(x1, x2, x3)` in ascending lexicographic order
/// (the congruence forces `x4`) and returns the first tuple passing both
/// inequalities, which is the lexicographically smallest valid tuple.
pub fn solve_bruteforce(inst: &LocalInstance) -> Result<LocalSolution> {
    admissible(inst.q)?;
    if inst.q == 1 {
        return Ok(solution_from(inst, [0; 4]));
    }
    let q = inst.q;
    let us = &inst.f[0].units;
    let k1 = inst.f[0].mean() + inst.f[1].mean();
    let k2 = inst.f[2].mean() + inst.f[3].mean();
    // Dense residue -> table index, u32::MAX marking non-units.
    let mut idx_of = vec![u32::MAX; q as usize];
    for (i, &u) in us.iter().enumerate() {
        idx_of[u as usize] = i as u32;
    }
    let (f1, f2, f3, f4) = (
        &inst.f[0].values,
        &inst.f[1].values,
        &inst.f[2].values,
        &inst.f[3].values,
    );
    for (i1, &x1) in us.iter().enumerate() {
        for (i2, &x2) in us.iter().enumerate() {
            if f1[i1] + f2[i2] < k1 {
                continue;
            }
            for (i3, &x3) in us.iter().enumerate() {
                let x4 = (inst.n + 3 * q - x1 - x2 - x3) % q;
                let i4 = idx_of[x4 as usize];
                if i4 == u32::MAX {
                    continue;
                }
                if f3[i3] + f4[i4 as usize] >= k2 {
                    return Ok(solution_from(inst, [x1, x2, x3, x4]));
                }
            }
        }
    }
    Err(Error::InternalContradiction(format!(
        "no quadruple beats the means at q={q}, n={}",
        inst.n
    )))
}

/// Prime base case: index qualifying `(x1, x2)` pairs by their sum, then
/// scan qualifying `(x3, x4)` pairs for a matching complement.
fn solve_prime(p: u64, f: &[ResidueFunction; 4], n: u64) -> Result<[u64; 4]> {
    let us = &f[0].units;
    let k1 = f[0].mean() + f[1].mean();
    let k2 = f[2].mean() + f[3].mean();
    let mut first12: Vec<Option<(u64, u64)>> = vec![None; p as usize];
    for (i1, &x1) in us.iter().enumerate() {
        for (i2, &x2) in us.iter().enumerate() {
            if f[0].values[i1] + f[1].values[i2] >= k1 {
                let s = ((x1 + x2) % p) as usize;
                if first12[s].is_none() {
                    first12[s] = Some((x1, x2));
                }
            }
        }
    }
    for (i3, &x3) in us.iter().enumerate() {
        for (i4, &x4) in us.iter().enumerate() {
            if f[2].values[i3] + f[3].values[i4] >= k2 {
                let s = ((n + 2 * p - x3 - x4) % p) as usize;
                if let Some((x1, x2)) = first12[s] {
                    return Ok([x1, x2, x3, x4]);
                }
            }
        }
    }
    Err(Error::InternalContradiction(format!(
        "prime case empty at p={p}, n={n}"
    )))
}

/// Lift step over the full additive group `Z_m`: split the target as
/// `z1 + z2`, then pick each pair by maximizing the paired sum, which is at
/// least its average over the group.
fn solve_additive(m: u64, h: &[Vec<f64>; 4], target: u64) -> [u64; 4] {
    debug_assert!(h.iter().all(|t| t.len() == m as usize));
    let pick = |a: &[f64], b: &[f64], z: u64| -> u64 {
        let mut best = 0u64;
        let mut best_val = f64::NEG_INFINITY;
        for y in 0..m {
            let w = (z + m - y % m) % m;
            let val = a[y as usize] + b[w as usize];
            if val > best_val {
                best_val = val;
                best = y;
            }
        }
        best
    };
    let z1 = target % m;
    let z2 = 0u64;
    let y1 = pick(&h[0], &h[1], z1);
    let y2 = (z1 + m - y1) % m;
    let y3 = pick(&h[2], &h[3], z2);
    let y4 = (z2 + m - y3) % m;
    [y1, y2, y3, y4]
}

fn solve_structured_inner(q: u64, f: &[ResidueFunction; 4], n: u64) -> Result<[u64; 4]> {
    if q == 1 {
        return Ok([0; 4]);
    }
    let fac = factorize(q);
    if fac.factors.len() == 1 {
        let (p, e) = fac.factors[0];
        if e == 1 {
            return solve_prime(p, f, n % p);
        }
        // Prime power: average each table over the progressions x + jp to get
        // tables on Z_p^*, solve there, then lift through Z_{p^{e-1}}.
        let m = q / p;
        let g: [ResidueFunction; 4] = std::array::from_fn(|i| {
            ResidueFunction::from_fn(p, |x| {
                (0..m).map(|j| f[i].get(x + j * p)).sum::<f64>() / m as f64
            })
        });
        let base = solve_prime(p, &g, n % p)?;
        let s: u64 = base.iter().sum();
        let d = (n % q + 4 * q - s) % q;
        debug_assert_eq!(d % p, 0, "base solution must match n mod p");
        let target = d / p;
        let h: [Vec<f64>; 4] =
            std::array::from_fn(|i| (0..m).map(|y| f[i].get(base[i] + y * p)).collect());
        let lift = solve_additive(m, &h, target);
        return Ok(std::array::from_fn(|i| base[i] + lift[i] * p));
    }
    // Coprime split: peel off the smallest prime-power factor.
    let (p, e) = fac.factors[0];
    let q1 = p.pow(e);
    let q2 = q / q1;
    let g: [ResidueFunction; 4] = std::array::from_fn(|i| {
        let u2 = units(q2);
        ResidueFunction::from_fn(q1, |x| {
            u2.elements
                .iter()
                .map(|&y| f[i].get(crt_combine(x, y, q1, q2).expect("coprime")))
                .sum::<f64>()
                / u2.len() as f64
        })
    });
    let xs = solve_structured_inner(q1, &g, n % q1)?;
    let h: [ResidueFunction; 4] = std::array::from_fn(|i| {
        ResidueFunction::from_fn(q2, |y| {
            f[i].get(crt_combine(xs[i], y, q1, q2).expect("coprime"))
        })
    });
    let ys = solve_structured_inner(q2, &h, n % q2)?;
    Ok(std::array::from_fn(|i| {
        crt_combine(xs[i], ys[i], q1, q2).expect("coprime")
    }))
}

/// Structured solver: same contract as [`solve_bruteforce`], computed by
/// recursion on the multiplicative structure of `q` instead of exhaustion.
/// The returned tuple satisfies both mean inequalities but need not equal
/// the exhaustive solver's tuple.
pub fn solve_structured(inst: &LocalInstance) -> Result<LocalSolution> {
    admissible(inst.q)?;
    let x = solve_structured_inner(inst.q, &inst.f, inst.n)?;
    Ok(solution_from(inst, x))
}

/// Two-element case analysis on `Z_3^* = {1, 2}`: the lexicographically
/// smallest `(y1..y4)` with the right residue sum, total `> 2`, and no zero
/// values. Nonempty whenever both pair means strictly exceed 1.
fn solve_z3(f: &[[f64; 2]; 4], n3: u64) -> Result<[u64; 4]> {
    for code in 0..16u64 {
        // Counting in base 2 walks the tuples in lexicographic order.
        let tuple: [u64; 4] = std::array::from_fn(|i| 1 + (code >> (3 - i) & 1));
        if tuple.iter().sum::<u64>() % 3 != n3 % 3 {
            continue;
        }
        let vals: [f64; 4] = std::array::from_fn(|i| f[i][(tuple[i] - 1) as usize]);
        if vals.iter().any(|&v| v == 0.0) {
            continue;
        }
        if vals.iter().sum::<f64>() > 2.0 {
            return Ok(tuple);
        }
    }
    Err(Error::InternalContradiction(format!(
        "two-element case analysis empty at n≡{n3} (mod 3)"
    )))
}

fn bounded_admissible(q: u64, n: u64) -> Result<()> {
    let fac = factorize(q);
    if !fac.is_squarefree() {
        return Err(Error::HypothesisViolated(format!(
            "modulus {q} is not squarefree"
        )));
    }
    if q % 2 == 0 {
        if q % 4 == 0 {
            return Err(Error::HypothesisViolated(format!(
                "modulus {q} is divisible by 4"
            )));
        }
        if n % 2 != 0 {
            return Err(Error::HypothesisViolated(format!(
                "even modulus {q} requires an even target, got {n}"
            )));
        }
    }
    Ok(())
}

fn solve_bounded_inner(q: u64, f: &[ResidueFunction; 4], n: u64) -> Result<[u64; 4]> {
    if q == 1 {
        return Ok([0; 4]);
    }
    if q % 2 == 0 {
        // Every unit is 1 mod 2 and the target is even, so the Z_2 coordinate
        // is forced; solve on the odd part and lift.
        let m = q / 2;
        let g: [ResidueFunction; 4] = std::array::from_fn(|i| {
            ResidueFunction::from_fn(m, |y| f[i].get(crt_combine(1, y, 2, m).expect("coprime")))
        });
        let ys = solve_bounded_inner(m, &g, n % m.max(1))?;
        return Ok(std::array::from_fn(|i| {
            crt_combine(1, ys[i], 2, m).expect("coprime")
        }));
    }
    if q % 3 != 0 {
        return solve_structured_inner(q, f, n);
    }
    let q2 = q / 3;
    if q2 == 1 {
        let tables: [[f64; 2]; 4] = std::array::from_fn(|i| [f[i].get(1), f[i].get(2)]);
        return solve_z3(&tables, n % 3);
    }
    // Solve the prime-to-3 part on fiber averages, then settle the Z_3
    // coordinate by the two-element analysis on the restricted tables.
    let g: [ResidueFunction; 4] = std::array::from_fn(|i| {
        ResidueFunction::from_fn(q2, |x| {
            (1..=2u64)
                .map(|y| f[i].get(crt_combine(x, y, q2, 3).expect("coprime")))
                .sum::<f64>()
                / 2.0
        })
    });
    let xs = solve_structured_inner(q2, &g, n % q2)?;
    let tables: [[f64; 2]; 4] = std::array::from_fn(|i| {
        [
            f[i].get(crt_combine(xs[i], 1, q2, 3).expect("coprime")),
            f[i].get(crt_combine(xs[i], 2, q2, 3).expect("coprime")),
        ]
    });
    let ys = solve_z3(&tables, n % 3)?;
    Ok(std::array::from_fn(|i| {
        crt_combine(xs[i], ys[i], q2, 3).expect("coprime")
    }))
}

/// Bounded solver: tables into `[0, 1]` whose pair means strictly exceed 1
/// yield units summing to `n` with total value `> 2` and every value
/// nonzero. Admissible moduli are odd squarefree `q`, and additionally
/// `q = 2m` with `m` odd squarefree when `n` is even (the `Z_2` coordinate
/// of a unit quadruple is forced). `q = 1` returns the trivial solution with
/// vacuous inequalities.
pub fn solve_bounded(q: u64, f: &[ResidueFunction; 4], n: u64) -> Result<LocalSolution> {
    for t in f {
        assert_eq!(t.q(), q, "all tables must live on Z_{q}^*");
    }
    let n = n % q.max(1);
    if q == 1 {
        let inst = LocalInstance::new(q, f.clone(), n);
        return Ok(solution_from(&inst, [0; 4]));
    }
    bounded_admissible(q, n)?;
    for (i, t) in f.iter().enumerate() {
        if t.values().iter().any(|&v| !(0.0..=1.0).contains(&v)) {
            return Err(Error::HypothesisViolated(format!(
                "f{} takes a value outside [0, 1]",
                i + 1
            )));
        }
    }
    let m12 = f[0].mean() + f[1].mean();
    let m34 = f[2].mean() + f[3].mean();
    if !(m12 > 1.0) {
        return Err(Error::HypothesisViolated(format!(
            "mean(f1) + mean(f2) = {m12} is not > 1"
        )));
    }
    if !(m34 > 1.0) {
        return Err(Error::HypothesisViolated(format!(
            "mean(f3) + mean(f4) = {m34} is not > 1"
        )));
    }
    let x = solve_bounded_inner(q, f, n)?;
    let inst = LocalInstance::new(q, f.clone(), n);
    Ok(solution_from(&inst, x))
}

/// Value after `k` steps of the affine walk `x -> 1 - 2x` started at 1.
/// Equals `(1 - (-2)^(k+1)) / 3`; guarded against 64-bit overflow.
pub fn walk_value(k: u32) -> Result<i64> {
    if k > 62 {
        return Err(Error::WalkOverflow(k));
    }
    let mut t: i64 = 1;
    for _ in 0..k {
        t = 1 - 2 * t;
    }
    Ok(t)
}

/// The same walk evaluated mod `m`, usable for arbitrary `k`.
pub fn walk_value_mod(k: u64, m: u64) -> u64 {
    assert!(m >= 1);
    let mut t = 1 % m;
    for _ in 0..k {
        t = (1 + 2 * (m - t)) % m;
    }
    t
}

/// Full quadruple-sumset report: whether `A1 + A2 + A3 + A4` covers `Z_q`,
/// whether the pair-size hypotheses hold, and one witness per covered
/// residue.
#[derive(Debug, Clone)]
pub struct CoverReport {
    pub q: u64,
    pub sizes: [usize; 4],
    pub hypotheses_hold: bool,
    pub covers: bool,
    /// Indexed by `n in 0..q`; `None` marks residues outside the sumset.
    pub witnesses: Vec<Option<[u64; 4]>>,
    pub missing: Vec<u64>,
}

/// Computes the quadruple sumset of subsets of `Z_q^*` with witnesses.
/// Hypothesis failure (`|A1| + |A2| <= phi(q)` or likewise for the second
/// pair) is reported, not raised.
pub fn check_sumset_cover(q: u64, sets: &[Vec<u64>; 4]) -> CoverReport {
    let ul = units(q);
    for a in sets {
        for &x in a {
            assert!(ul.contains(x), "{x} is not a unit mod {q}");
        }
    }
    let phi = ul.len();
    let sizes = [sets[0].len(), sets[1].len(), sets[2].len(), sets[3].len()];
    let hypotheses_hold = sizes[0] + sizes[1] > phi && sizes[2] + sizes[3] > phi;

    let pair_table = |a: &[u64], b: &[u64]| -> Vec<Option<(u64, u64)>> {
        let mut t: Vec<Option<(u64, u64)>> = vec![None; q as usize];
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        for &x in &a {
            for &y in &b {
                let s = ((x + y) % q) as usize;
                if t[s].is_none() {
                    t[s] = Some((x, y));
                }
            }
        }
        t
    };
    let t12 = pair_table(&sets[0], &sets[1]);
    let t34 = pair_table(&sets[2], &sets[3]);

    let mut witnesses = vec![None; q as usize];
    let mut missing = Vec::new();
    for n in 0..q {
        let mut found = None;
        for s in 0..q {
            if let (Some((x1, x2)), Some((x3, x4))) =
                (t12[s as usize], t34[((n + q - s) % q) as usize])
            {
                found = Some([x1, x2, x3, x4]);
                break;
            }
        }
        if found.is_none() {
            missing.push(n);
        }
        witnesses[n as usize] = found;
    }
    let covers = missing.is_empty();
    CoverReport {
        q,
        sizes,
        hypotheses_hold,
        covers,
        witnesses,
        missing,
    }
}

/// Re-checks a solution against its instance from scratch: unit membership,
/// the congruence, recorded values, and both mean inequalities.
pub fn check_contract(inst: &LocalInstance, sol: &LocalSolution) -> std::result::Result<(), String> {
    let q = inst.q;
    let ul = units(q);
    for (i, &x) in sol.x.iter().enumerate() {
        if !ul.contains(x) {
            return Err(format!("x{} = {x} is not a unit mod {q}", i + 1));
        }
    }
    if q > 1 && sol.x.iter().sum::<u64>() % q != inst.n % q {
        return Err(format!("sum {:?} != n = {} (mod {q})", sol.x, inst.n));
    }
    for i in 0..4 {
        if sol.v[i] != inst.f[i].get(sol.x[i]) {
            return Err(format!("recorded v{} does not match the table", i + 1));
        }
    }
    let k1 = inst.f[0].mean() + inst.f[1].mean();
    let k2 = inst.f[2].mean() + inst.f[3].mean();
    if sol.k1 != k1 || sol.k2 != k2 {
        return Err("recorded means do not match the tables".into());
    }
    if sol.v[0] + sol.v[1] < k1 {
        return Err(format!("f1(x1)+f2(x2) = {} < K1 = {k1}", sol.v[0] + sol.v[1]));
    }
    if sol.v[2] + sol.v[3] < k2 {
        return Err(format!("f3(x3)+f4(x4) = {} < K2 = {k2}", sol.v[2] + sol.v[3]));
    }
    Ok(())
}

/// Re-checks the bounded solver's three conclusion clauses.
pub fn check_bounded_contract(
    q: u64,
    f: &[ResidueFunction; 4],
    n: u64,
    sol: &LocalSolution,
) -> std::result::Result<(), String> {
    if q == 1 {
        return Ok(());
    }
    let ul = units(q);
    for (i, &x) in sol.x.iter().enumerate() {
        if !ul.contains(x) {
            return Err(format!("x{} = {x} is not a unit mod {q}", i + 1));
        }
    }
    if sol.x.iter().sum::<u64>() % q != n % q {
        return Err(format!("sum {:?} != n = {n} (mod {q})", sol.x));
    }
    let total: f64 = (0..4).map(|i| f[i].get(sol.x[i])).sum();
    if !(total > 2.0) {
        return Err(format!("total value {total} is not > 2"));
    }
    for i in 0..4 {
        if f[i].get(sol.x[i]) == 0.0 {
            return Err(format!("f{}(x{}) vanishes", i + 1, i + 1));
        }
    }
    Ok(())
}

/// Outcome of a seeded verification sweep.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub runs: u64,
    pub passes: u64,
    /// First few failure descriptions, capped to keep reports small.
    pub failures: Vec<String>,
}

impl SweepOutcome {
    pub fn all_passed(&self) -> bool {
        self.passes == self.runs
    }
}

const FAILURE_CAP: usize = 20;

fn collect_outcomes(results: Vec<Option<String>>) -> SweepOutcome {
    let runs = results.len() as u64;
    let mut failures = Vec::new();
    let mut passes = 0;
    for r in results {
        match r {
            None => passes += 1,
            Some(msg) => {
                if failures.len() < FAILURE_CAP {
                    failures.push(msg);
                }
            }
        }
    }
    SweepOutcome { runs, passes, failures }
}

fn draw_tables(q: u64, rng: &mut SplitMix64) -> [ResidueFunction; 4] {
    let phi = units(q).len();
    std::array::from_fn(|_| {
        ResidueFunction::from_values(q, (0..phi).map(|_| rng.next_f64()).collect())
    })
}

/// Runs the chosen solver over every `n in Z_q` with `trials` seeded random
/// draws each, re-checking the contract; one sub-stream per `(n, trial)`.
pub fn verify_sweep(q: u64, trials: u64, seed: u64, structured: bool) -> Result<SweepOutcome> {
    admissible(q)?;
    let tasks = (q * trials) as usize;
    let results = parallel::map_indices(tasks, |t| {
        let n = t as u64 / trials;
        let trial = t as u64 % trials;
        let mut rng = SplitMix64::new(stream_seed(seed, n, trial));
        let inst = LocalInstance::new(q, draw_tables(q, &mut rng), n);
        let solved = if structured {
            solve_structured(&inst)
        } else {
            solve_bruteforce(&inst)
        };
        match solved {
            Ok(sol) => check_contract(&inst, &sol)
                .err()
                .map(|e| format!("q={q} n={n} trial={trial}: {e}")),
            Err(e) => Some(format!("q={q} n={n} trial={trial}: solver error: {e}")),
        }
    });
    Ok(collect_outcomes(results))
}

/// Draws `[0,1]`-valued tables until both pair means strictly exceed 1.
pub fn draw_supercritical_tables(q: u64, rng: &mut SplitMix64) -> [ResidueFunction; 4] {
    loop {
        let f = draw_tables(q, rng);
        if f[0].mean() + f[1].mean() > 1.0 && f[2].mean() + f[3].mean() > 1.0 {
            return f;
        }
    }
}

/// Seeded sweep for the bounded solver: hypothesis-satisfying draws for
/// every `n in Z_q`, re-checking all three conclusion clauses.
pub fn verify_bounded_sweep(q: u64, trials: u64, seed: u64) -> Result<SweepOutcome> {
    if q % 2 == 0 || !factorize(q).is_squarefree() {
        return Err(Error::PreconditionViolated(format!(
            "bounded sweep expects an odd squarefree modulus, got {q}"
        )));
    }
    let tasks = (q * trials) as usize;
    let results = parallel::map_indices(tasks, |t| {
        let n = t as u64 / trials;
        let trial = t as u64 % trials;
        let mut rng = SplitMix64::new(stream_seed(seed, n, trial));
        let f = draw_supercritical_tables(q, &mut rng);
        match solve_bounded(q, &f, n) {
            Ok(sol) => check_bounded_contract(q, &f, n, &sol)
                .err()
                .map(|e| format!("q={q} n={n} trial={trial}: {e}")),
            Err(e) => Some(format!("q={q} n={n} trial={trial}: solver error: {e}")),
        }
    });
    Ok(collect_outcomes(results))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(q: u64, vals: &[f64]) -> ResidueFunction {
        ResidueFunction::from_values(q, vals.to_vec())
    }

    #[test]
    fn unit_mean_examples() {
        assert_eq!(unit_mean(&ResidueFunction::constant(7, 0.5)), 0.5);
        assert_eq!(unit_mean(&rf(5, &[1.0, 0.0, 0.0, 0.0])), 0.25);
        // Independent re-summation oracle at q = 21.
        let mut rng = SplitMix64::new(21);
        let f = draw_tables(21, &mut rng);
        let direct: f64 = f[0].values().iter().sum::<f64>() / f[0].len() as f64;
        assert_eq!(unit_mean(&f[0]), direct);
    }

    #[test]
    fn bruteforce_all_slack() {
        // All constraints slack: the first congruent unit tuple wins.
        let inst = LocalInstance::new(
            5,
            std::array::from_fn(|_| ResidueFunction::constant(5, 0.0)),
            0,
        );
        let sol = solve_bruteforce(&inst).unwrap();
        assert_eq!(sol.x, [1, 1, 1, 2]);
        assert_eq!(sol.k1, 0.0);
        assert_eq!(sol.k2, 0.0);
        check_contract(&inst, &sol).unwrap();
    }

    #[test]
    fn bruteforce_indicator_pair() {
        let ind1 = ResidueFunction::from_fn(7, |x| if x == 1 { 1.0 } else { 0.0 });
        let one = ResidueFunction::constant(7, 1.0);
        let inst = LocalInstance::new(7, [ind1.clone(), ind1, one.clone(), one], 4);
        let sol = solve_bruteforce(&inst).unwrap();
        assert!((sol.k1 - 1.0 / 3.0).abs() < 1e-15);
        assert!(sol.x[0] == 1 || sol.x[1] == 1);
        check_contract(&inst, &sol).unwrap();
    }

    #[test]
    fn bruteforce_forced_coordinate() {
        let f1 = rf(5, &[4.0, 0.0, 0.0, 0.0]);
        let zero = ResidueFunction::constant(5, 0.0);
        let inst = LocalInstance::new(5, [f1, zero.clone(), zero.clone(), zero], 3);
        let sol = solve_bruteforce(&inst).unwrap();
        assert_eq!(sol.k1, 1.0);
        assert_eq!(sol.x[0], 1, "only x1 = 1 reaches K1 = 1");
        check_contract(&inst, &sol).unwrap();
    }

    #[test]
    fn bruteforce_rejects_bad_modulus() {
        let inst = LocalInstance::new(
            9,
            std::array::from_fn(|_| ResidueFunction::constant(9, 0.0)),
            0,
        );
        assert!(matches!(
            solve_bruteforce(&inst),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn structured_constant_prime_power() {
        let inst = LocalInstance::new(
            25,
            std::array::from_fn(|_| ResidueFunction::constant(25, 0.5)),
            7,
        );
        let sol = solve_structured(&inst).unwrap();
        check_contract(&inst, &sol).unwrap();
    }

    #[test]
    fn structured_matches_contract_on_random_instances() {
        for q in [5u64, 25, 35, 49, 125, 175, 385] {
            for trial in 0..10 {
                let mut rng = SplitMix64::new(stream_seed(99, q, trial));
                let n = rng.below(q);
                let inst = LocalInstance::new(q, draw_tables(q, &mut rng), n);
                let sol = solve_structured(&inst).unwrap();
                check_contract(&inst, &sol)
                    .unwrap_or_else(|e| panic!("q={q} trial={trial}: {e}"));
                if q <= 35 {
                    let bf = solve_bruteforce(&inst).unwrap();
                    check_contract(&inst, &bf).unwrap();
                }
            }
        }
    }

    #[test]
    fn shift_invariance_of_feasibility() {
        // Adding constants shifts the means and the values equally, so a
        // shifted solution is valid for the original instance.
        for trial in 0..20u64 {
            let q = 35;
            let mut rng = SplitMix64::new(stream_seed(7, trial, 0));
            let n = rng.below(q);
            let f = draw_tables(q, &mut rng);
            let shifts = [0.25, -0.5, 1.0, 2.0];
            let shifted: [ResidueFunction; 4] = std::array::from_fn(|i| {
                ResidueFunction::from_values(
                    q,
                    f[i].values().iter().map(|v| v + shifts[i]).collect(),
                )
            });
            let inst_shifted = LocalInstance::new(q, shifted, n);
            let sol = solve_bruteforce(&inst_shifted).unwrap();
            // Re-interpret against the original tables.
            let inst = LocalInstance::new(q, f, n);
            let k1 = inst.f[0].mean() + inst.f[1].mean();
            let k2 = inst.f[2].mean() + inst.f[3].mean();
            let v1 = inst.f[0].get(sol.x[0]) + inst.f[1].get(sol.x[1]);
            let v2 = inst.f[2].get(sol.x[2]) + inst.f[3].get(sol.x[3]);
            // Equality of float shifts is not exact, so allow the shifted
            // margin to absorb an ulp.
            assert!(v1 - k1 >= -1e-9, "pair 1 margin {v1} vs {k1}");
            assert!(v2 - k2 >= -1e-9, "pair 2 margin {v2} vs {k2}");
        }
    }

    #[test]
    fn bounded_z3_example() {
        let f1 = rf(3, &[0.0, 1.0]);
        let f2 = rf(3, &[1.0, 1.0]);
        let f3 = rf(3, &[1.0, 0.9]);
        let f4 = rf(3, &[1.0, 0.9]);
        let f = [f1, f2, f3, f4];
        let sol = solve_bounded(3, &f, 0).unwrap();
        assert_eq!(sol.x, [2, 1, 1, 2]);
        let total: f64 = sol.v.iter().sum();
        assert!((total - 3.9).abs() < 1e-12);
        check_bounded_contract(3, &f, 0, &sol).unwrap();
    }

    #[test]
    fn bounded_constant_q15() {
        let f: [ResidueFunction; 4] =
            std::array::from_fn(|_| ResidueFunction::constant(15, 0.6));
        let sol = solve_bounded(15, &f, 0).unwrap();
        check_bounded_contract(15, &f, 0, &sol).unwrap();
        let total: f64 = sol.v.iter().sum();
        assert!((total - 2.4).abs() < 1e-12);
    }

    #[test]
    fn bounded_boundary_mean_rejected() {
        // Means summing to exactly 1 must be rejected: the strict inequality
        // is what makes the conclusion attainable.
        let ind = ResidueFunction::from_fn(3, |x| if x == 1 { 1.0 } else { 0.0 });
        let f = [
            ind.clone(),
            ind,
            ResidueFunction::constant(3, 0.9),
            ResidueFunction::constant(3, 0.9),
        ];
        assert!(matches!(
            solve_bounded(3, &f, 0),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn bounded_even_extension() {
        let f: [ResidueFunction; 4] =
            std::array::from_fn(|_| ResidueFunction::constant(6, 0.75));
        let sol = solve_bounded(6, &f, 4).unwrap();
        assert!(sol.x.iter().all(|&x| x == 1 || x == 5));
        assert_eq!(sol.x.iter().sum::<u64>() % 6, 4);
        // Odd target with even modulus is inadmissible.
        assert!(matches!(
            solve_bounded(6, &f, 3),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn bounded_rejects_out_of_range_values() {
        let mut f: [ResidueFunction; 4] =
            std::array::from_fn(|_| ResidueFunction::constant(5, 0.75));
        f[2] = rf(5, &[0.5, 1.5, 0.5, 0.5]);
        assert!(matches!(
            solve_bounded(5, &f, 1),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn sumset_cover_examples() {
        let a = vec![1u64, 2, 3, 4];
        let rep = check_sumset_cover(7, &[a.clone(), a.clone(), a.clone(), a]);
        assert!(rep.hypotheses_hold);
        assert!(rep.covers);
        // Direct enumeration oracle.
        for n in 0..7u64 {
            let w = rep.witnesses[n as usize].unwrap();
            assert_eq!(w.iter().sum::<u64>() % 7, n);
            assert!(w.iter().all(|&x| (1..=4).contains(&x)));
        }

        let single = vec![1u64];
        let rep = check_sumset_cover(
            3,
            &[single.clone(), single.clone(), single.clone(), single],
        );
        assert!(!rep.hypotheses_hold);
        assert!(!rep.covers);
        assert_eq!(rep.missing, vec![0, 2]); // only 4 = 1 mod 3 is covered
    }

    #[test]
    fn walk_values() {
        let expect = [1i64, -1, 3, -5, 11, -21];
        for (k, &e) in expect.iter().enumerate() {
            assert_eq!(walk_value(k as u32).unwrap(), e);
        }
        assert_eq!(walk_value(10).unwrap(), 683);
        // Closed form across the guarded range.
        for k in 0..=62u32 {
            let closed = (1 - (-2i128).pow(k + 1)) / 3;
            assert_eq!(walk_value(k).unwrap() as i128, closed);
        }
        assert!(matches!(walk_value(63), Err(Error::WalkOverflow(63))));
    }

    #[test]
    fn walk_mod_matches_direct() {
        for m in [5u64, 7, 97] {
            for k in 0..40 {
                let direct = walk_value(k).unwrap();
                let reduced = direct.rem_euclid(m as i64) as u64;
                assert_eq!(walk_value_mod(k as u64, m), reduced);
            }
        }
    }

    #[test]
    fn sweep_small() {
        let out = verify_sweep(35, 3, 1, false).unwrap();
        assert!(out.all_passed(), "{:?}", out.failures);
        let out = verify_sweep(35, 3, 1, true).unwrap();
        assert!(out.all_passed(), "{:?}", out.failures);
        assert!(matches!(
            verify_sweep(9, 1, 1, false),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn bounded_sweep_small() {
        let out = verify_bounded_sweep(21, 3, 5).unwrap();
        assert!(out.all_passed(), "{:?}", out.failures);
    }
}
