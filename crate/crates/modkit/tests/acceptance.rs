//! End-to-end acceptance criteria. Prints one line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use modkit::explore;
use modkit_core::arith;
use modkit_core::catalog::{builtin_catalog, mutants, CatalogEntry};
use modkit_core::cyclo::CycNum;
use modkit_core::explorer::{self, DimensionSolution};
use modkit_core::ideals::{self, PrimeIdeal};
use modkit_core::mdata::{self, FusionRules};
use modkit_core::verify;
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog() -> Vec<CatalogEntry> {
    builtin_catalog()
}

fn admissibility_suite() -> Outcome {
    let start = Instant::now();
    let entries = catalog();
    ensure(entries.len() >= 6, || {
        format!("only {} catalog entries", entries.len())
    })?;
    for e in &entries {
        let r = verify::check_admissible(&e.datum);
        ensure(r.conditions.len() == 7, || {
            format!("{}: {} conditions", r.name, r.conditions.len())
        })?;
        ensure(r.passed(), || {
            format!("{} fails conditions {:?}", r.name, r.failed_ids())
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{} entries pass 7/7 in {secs:.2} s", entries.len()))
}

fn fusion_oracle() -> Outcome {
    for e in catalog() {
        let fr = mdata::verlinde_fusion(&e.datum).map_err(|x| x.to_string())?;
        ensure(fr == e.fusion, || {
            format!(
                "{}: Verlinde differs from hand-entered rules",
                e.datum.name()
            )
        })?;
    }
    let fib = modkit_core::catalog::fibonacci();
    ensure(
        fib.fusion.get(1, 1, 1) == 1 && fib.fusion.get(1, 1, 0) == 1,
        || String::from("Fibonacci tau x tau != 1 + tau"),
    )?;
    let ising = modkit_core::catalog::ising();
    let sigma2: Vec<u32> = (0..3).map(|k| ising.fusion.get(1, 1, k)).collect();
    ensure(sigma2 == [1, 0, 1], || {
        format!("Ising sigma x sigma = {sigma2:?}")
    })?;
    Ok(String::from("Verlinde reproduces every hand-entered table"))
}

fn single(set: &BTreeSet<PrimeIdeal>) -> Option<&PrimeIdeal> {
    (set.len() == 1).then(|| set.iter().next().unwrap())
}

fn cauchy_theorem() -> Outcome {
    for e in catalog() {
        let c = verify::cauchy_check(&e.datum).map_err(|x| x.to_string())?;
        ensure(c.passed, || format!("{}: supports differ", e.datum.name()))?;
    }
    // Fibonacci: the single ideal (5, x - 1) of Z[zeta_5]
    let fib = verify::cauchy_check(&modkit_core::catalog::fibonacci().datum).unwrap();
    let z_minus_1 = &CycNum::root_of_unity(5, 1) - &CycNum::one(5);
    for side in [&fib.d2_support, &fib.t_order_support] {
        let p = single(side).ok_or("Fibonacci support is not a single ideal")?;
        ensure(p.prime() == 5 && p.residue_degree() == 1, || {
            format!("Fibonacci ideal {p}")
        })?;
        ensure(ideals::contains(p, &z_minus_1).unwrap(), || {
            format!("{p} does not contain zeta - 1")
        })?;
    }
    // semion: (2, x + 1) in Z[i]
    let sem = verify::cauchy_check(&modkit_core::catalog::semion().datum).unwrap();
    let i_plus_1 = &CycNum::root_of_unity(4, 1) + &CycNum::one(4);
    for side in [&sem.d2_support, &sem.t_order_support] {
        let p = single(side).ok_or("semion support is not a single ideal")?;
        ensure(
            p.prime() == 2 && ideals::contains(p, &i_plus_1).unwrap(),
            || format!("semion ideal {p}"),
        )?;
    }
    // toric code: ord(T) = 2, so the ring is Z and the ideal is (2)
    let toric = verify::cauchy_check(&modkit_core::catalog::toric_code().datum).unwrap();
    for side in [&toric.d2_support, &toric.t_order_support] {
        let p = single(side).ok_or("toric code support is not a single ideal")?;
        ensure(
            p.prime() == 2 && p.conductor() == 2 && p.residue_degree() == 1,
            || format!("toric code ideal {p}"),
        )?;
    }
    Ok(String::from(
        "supp(D^2) = supp(N) everywhere; Fibonacci (5, x-1), semion (2, x+1), toric (2)",
    ))
}

fn fs_identities() -> Outcome {
    for e in catalog() {
        let md = &e.datum;
        let fr: &FusionRules = &e.fusion;
        let n = md.t_order() as u64;
        let m = md.conductor();
        let top = mdata::fs_indicators(md, fr, n).map_err(|x| x.to_string())?;
        ensure(top == md.dims(), || format!("{}: nu_N != d", md.name()))?;
        let first = mdata::fs_indicators(md, fr, 1).unwrap();
        for (k, v) in first.iter().enumerate() {
            let want = CycNum::from_integer(m, (k == 0) as i64);
            ensure(*v == want, || format!("{}: nu_1({k}) = {v}", md.name()))?;
        }
        let second = mdata::fs_indicators(md, fr, 2).unwrap();
        for (k, v) in second.iter().enumerate() {
            let x = v
                .to_integer()
                .ok_or_else(|| format!("{}: nu_2({k}) = {v}", md.name()))?;
            let self_dual = fr.dual(k) == k;
            let ok = if self_dual {
                x == 1.into() || x == (-1).into()
            } else {
                x == 0.into()
            };
            ensure(ok, || {
                format!("{}: nu_2({k}) = {x}, self-dual {self_dual}", md.name())
            })?;
        }
    }
    Ok(String::from(
        "nu_N = d, nu_1 = delta, nu_2 in {0, +-1} with 0 exactly off self-dual labels",
    ))
}

fn congruences() -> Outcome {
    let mut checked = 0;
    for e in catalog() {
        let md = &e.datum;
        let suite = verify::congruence_suite(md, 13).map_err(|x| x.to_string())?;
        let expected: Vec<u64> = arith::primes_up_to(13)
            .into_iter()
            .filter(|q| md.t_order() as u64 % q != 0)
            .collect();
        let got: Vec<u64> = suite.primes.iter().map(|p| p.q).collect();
        ensure(got == expected, || format!("{}: primes {got:?}", md.name()))?;
        for p in &suite.primes {
            ensure(p.indicators_integral, || {
                format!("{}: nu_{} not integral", md.name(), p.q)
            })?;
            ensure(p.p1.passed, || {
                format!("{}: p1 fails at q = {}", md.name(), p.q)
            })?;
            ensure(p.p2.passed, || {
                format!("{}: p2 fails at q = {}", md.name(), p.q)
            })?;
            checked += 1;
        }
        ensure(
            suite.units.len() == arith::units_mod(md.conductor() as u64).len(),
            || format!("{}: p3 skipped units", md.name()),
        )?;
        for (a, v) in &suite.units {
            ensure(v.passed, || format!("{}: p3 fails at a = {a}", md.name()))?;
        }
    }
    Ok(format!(
        "{checked} (datum, prime) pairs and all Galois units pass"
    ))
}

fn normalized_pairs() -> Outcome {
    for e in catalog() {
        let md = &e.datum;
        let pair = mdata::normalized_pair(md).map_err(|x| format!("{}: {x}", md.name()))?;
        let rel = mdata::pair_relations(md, &e.fusion, &pair);
        ensure(rel.all(), || format!("{}: {rel:?}", md.name()))?;
        let n_t = md.t_order();
        ensure(
            pair.order % n_t == 0 && (12 * n_t) % pair.order == 0,
            || format!("{}: n = {}", md.name(), pair.order),
        )?;
        let data = mdata::galois_data_with(md, &pair).map_err(|x| x.to_string())?;
        let v = mdata::galois_symmetry_violation(md, &pair, &data).map_err(|x| x.to_string())?;
        ensure(v.is_none(), || {
            format!("{}: Galois symmetry fails at {v:?}", md.name())
        })?;
    }
    Ok(String::from(
        "s^4 = 1, (st)^3 = s^2, s^2 = C, N | n | 12N, t Galois-symmetric",
    ))
}

fn galois_closure() -> Outcome {
    let mut count = 0;
    for e in catalog() {
        let md = &e.datum;
        for a in arith::units_mod(md.conductor() as u64) {
            let twisted = verify::galois_twist(md, a as i64).map_err(|x| x.to_string())?;
            let r = verify::check_admissible(&twisted);
            ensure(r.passed(), || {
                format!("{} fails {:?}", r.name, r.failed_ids())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} Galois conjugates admissible"))
}

fn mutation_tests() -> Outcome {
    let ms = mutants();
    ensure(ms.len() >= 5, || format!("only {} mutants", ms.len()))?;
    let mut summary = Vec::new();
    for m in &ms {
        let r = verify::check_admissible(&m.datum);
        let failed = r.failed_ids();
        ensure(!failed.is_empty(), || {
            format!("{} passes all seven", m.name)
        })?;
        for c in r.conditions.iter().filter(|c| !c.passed) {
            ensure(c.witness.is_some(), || {
                format!("{}: condition {} has no witness", m.name, c.id)
            })?;
        }
        summary.push(format!("{} -> {:?}", m.name, failed));
    }
    Ok(summary.join("; "))
}

fn bounds() -> Outcome {
    ensure(explorer::ord_t_bound(3) == BigUint::from(9216u32), || {
        String::from("ord_t_bound(3)")
    })?;
    ensure(explorer::ord_t_bound(6) == BigUint::from(331776u32), || {
        String::from("ord_t_bound(6)")
    })?;
    for e in catalog() {
        let md = &e.datum;
        ensure(
            BigUint::from(md.t_order()) <= explorer::ord_t_bound(md.rank()),
            || format!("{}: ord(T) above bound", md.name()),
        )?;
    }
    let b = explorer::evertse_bound(2).map_err(|x| x.to_string())?;
    let three_sig = |x: f64| {
        let e = x.log10().floor();
        (x / 10f64.powf(e - 2.0)).round() * 10f64.powf(e - 2.0)
    };
    ensure(three_sig(b.log2) == three_sig(8.15885e41), || {
        format!("log2 = {:e}", b.log2)
    })?;
    Ok(format!("9216, 331776; Evertse r = 2 is 2^{:.5e}", b.log2))
}

fn brute_force(primes: &[u64], b: u32) -> BTreeSet<(u128, u128)> {
    let exps: Vec<Vec<u32>> = primes.iter().fold(vec![vec![]], |acc, _| {
        acc.iter()
            .flat_map(|v| (0..=b).map(move |e| [v.as_slice(), &[e]].concat()))
            .collect()
    });
    let value = |e: &[u32]| -> u128 {
        primes
            .iter()
            .zip(e)
            .map(|(&p, &k)| (p as u128).pow(k))
            .product()
    };
    let mut out = BTreeSet::new();
    for x in &exps {
        for y in &exps {
            if value(x) == 1 + value(y) {
                out.insert((value(x), value(y)));
            }
        }
    }
    out
}

fn enumeration_oracle() -> Outcome {
    let cap = 10_000_000;
    let two = explore::enumerate(2, &[2], 10, cap, false).map_err(|x| x.to_string())?;
    let want = vec![DimensionSolution {
        d2: 2,
        dims_squared: vec![1],
        primes: vec![2],
    }];
    ensure(two.solutions == want && !two.partial, || {
        format!("{{2}}: {:?}", two.solutions)
    })?;
    let res = explore::enumerate(2, &[2, 3], 10, cap, false).map_err(|x| x.to_string())?;
    let got: BTreeSet<(u128, u128)> = res
        .solutions
        .iter()
        .map(|s| (s.d2, s.dims_squared[0]))
        .collect();
    let oracle = brute_force(&[2, 3], 10);
    ensure(got == oracle, || {
        format!("{{2,3}}: {got:?} vs brute force {oracle:?}")
    })?;
    // determinism across runs and thread schedules
    for (rank, primes, b) in [
        (2, vec![2, 3], 10),
        (4, vec![2, 3], 4),
        (5, vec![2, 3, 5], 2),
    ] {
        let base = explore::enumerate(rank, &primes, b, cap, false).unwrap();
        for threads in [1, 2, 3, 8] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let par = pool.install(|| explore::enumerate(rank, &primes, b, cap, true).unwrap());
            ensure(par == base, || {
                format!("rank {rank}: {threads} threads differ")
            })?;
        }
        let again = explore::enumerate(rank, &primes, b, cap, false).unwrap();
        ensure(again == base, || format!("rank {rank}: reruns differ"))?;
    }
    Ok(format!(
        "{{2}} -> [(2, 1)]; {{2,3}} matches brute force ({} solutions); schedule-independent",
        got.len()
    ))
}

fn max_norm_sandwich() -> Outcome {
    let mut labels = 0;
    for e in catalog() {
        let md = &e.datum;
        let fp = mdata::fp_dimensions(md, &e.fusion).map_err(|x| x.to_string())?;
        let r = md.rank() as f64;
        for a in 0..md.rank() {
            let max = e.fusion.max_entry(a) as f64;
            let d = fp.dims[a];
            ensure(max <= d + 1e-8 && d <= r * max + 1e-8, || {
                format!("{} label {a}: max {max}, FPdim {d}", md.name())
            })?;
            labels += 1;
        }
    }
    Ok(format!(
        "{labels} labels satisfy max N_a <= FPdim <= r max N_a"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("admissibility suite", admissibility_suite),
        ("fusion oracle equivalence", fusion_oracle),
        ("Cauchy support equality", cauchy_theorem),
        ("FS-exponent identities", fs_identities),
        ("congruence suite", congruences),
        ("normalized pair", normalized_pairs),
        ("Galois closure", galois_closure),
        ("mutation tests", mutation_tests),
        ("bounds", bounds),
        ("enumeration oracle", enumeration_oracle),
        ("max-norm sandwich", max_norm_sandwich),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("acceptance {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("acceptance {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
