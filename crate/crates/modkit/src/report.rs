//! JSON and human renderings of library results.

use std::fmt::Write as _;

use modkit_core::cyclo::CycNum;
use modkit_core::ideals::PrimeIdeal;
use modkit_core::mdata::{FusionRules, NormalizedPair, PairRelations};
use modkit_core::verify::{AdmissibilityReport, CauchyResult, CongruenceSuite, CongruenceVerdict};
use serde_json::{json, Value};

/// `x` to 15 significant digits.
pub fn decimal15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&magnitude) {
        return format!("{x:.14e}");
    }
    let places = (14 - magnitude).max(0) as usize;
    let s = format!("{x:.places$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Decimal approximation, dropping an imaginary part below `1e-12`.
pub fn approx(x: &CycNum) -> String {
    let z = x.to_complex();
    let scale = z.norm().max(1.0);
    if z.im.abs() <= 1e-12 * scale {
        decimal15(z.re)
    } else if z.re.abs() <= 1e-12 * scale {
        format!("{}i", decimal15(z.im))
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{} {sign} {}i", decimal15(z.re), decimal15(z.im.abs()))
    }
}

/// `exact ≈ approximation`, with the approximation omitted for integers.
pub fn human(x: &CycNum) -> String {
    match x.to_rational() {
        Some(q) if q.is_integer() => q.to_string(),
        _ => format!("{x} ~ {}", approx(x)),
    }
}

pub fn cyc_json(x: &CycNum) -> Value {
    let z = x.to_complex();
    json!({ "exact": x.render(), "re": z.re, "im": z.im })
}

pub fn admissibility_json(report: &AdmissibilityReport) -> Value {
    let conditions: Vec<Value> = report
        .conditions
        .iter()
        .map(|c| {
            let witness = c.witness.as_ref().map(|w| {
                let values: serde_json::Map<String, Value> = w
                    .values
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                    .collect();
                json!({ "indices": w.indices, "message": w.message, "values": values })
            });
            json!({
                "id": c.id,
                "title": c.title,
                "passed": c.passed,
                "witness": witness,
                "notes": c.notes,
                "elapsed_ms": c.elapsed.map(|d| d.as_secs_f64() * 1e3),
            })
        })
        .collect();
    json!({
        "name": report.name,
        "passed": report.passed(),
        "failed": report.failed_ids(),
        "conditions": conditions,
    })
}

pub fn admissibility_human(report: &AdmissibilityReport) -> String {
    let mut out = String::new();
    let passed = report.conditions.iter().filter(|c| c.passed).count();
    let verdict = if report.passed() {
        "admissible"
    } else {
        "NOT admissible"
    };
    writeln!(
        out,
        "{}: {verdict} ({passed}/{} conditions)",
        report.name,
        report.conditions.len()
    )
    .unwrap();
    for c in &report.conditions {
        let mark = if c.passed { "pass" } else { "FAIL" };
        let time = c
            .elapsed
            .map(|d| format!("  [{:.1} ms]", d.as_secs_f64() * 1e3))
            .unwrap_or_default();
        writeln!(out, "  {mark}  ({}) {}{time}", c.id, c.title).unwrap();
        if let Some(w) = &c.witness {
            writeln!(out, "        witness {:?}: {}", w.indices, w.message).unwrap();
            for (k, v) in &w.values {
                let shown = v
                    .parse::<CycNum>()
                    .map(|x| human(&x))
                    .unwrap_or_else(|_| v.clone());
                writeln!(out, "          {k} = {shown}").unwrap();
            }
        }
        for n in &c.notes {
            writeln!(out, "        note: {n}").unwrap();
        }
    }
    out
}

fn ideals_json(set: &std::collections::BTreeSet<PrimeIdeal>) -> Vec<String> {
    set.iter().map(|p| p.to_string()).collect()
}

pub fn cauchy_json(name: &str, c: &CauchyResult) -> Value {
    json!({
        "name": name,
        "conductor": c.conductor,
        "D2": cyc_json(&c.d2),
        "D2_support": ideals_json(&c.d2_support),
        "t_order_support": ideals_json(&c.t_order_support),
        "passed": c.passed,
    })
}

pub fn cauchy_human(name: &str, c: &CauchyResult) -> String {
    let list = |set: &std::collections::BTreeSet<PrimeIdeal>| {
        set.iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let verdict = if c.passed { "equal" } else { "DIFFERENT" };
    format!(
        "{name}: prime supports in Z[zeta_{n}]\n  D^2 = {}\n  supp(D^2) = {{{}}}\n  supp({n}) = {{{}}}\n  supports {verdict}\n",
        human(&c.d2),
        list(&c.d2_support),
        list(&c.t_order_support),
        n = c.conductor,
    )
}

pub fn fusion_json(name: &str, fr: &FusionRules) -> Value {
    let r = fr.rank();
    let n: Vec<Vec<Vec<u32>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..r).map(|k| fr.get(i, j, k)).collect())
                .collect()
        })
        .collect();
    json!({ "name": name, "rank": r, "duals": fr.duals(), "N": n })
}

pub fn fusion_human(name: &str, fr: &FusionRules) -> String {
    let r = fr.rank();
    let mut out = format!("{name}: fusion rules, rank {r}\n");
    let duals: Vec<String> = (0..r).map(|i| format!("{i}* = {}", fr.dual(i))).collect();
    writeln!(out, "  duals: {}", duals.join(", ")).unwrap();
    for i in 0..r {
        for j in i..r {
            writeln!(out, "  {}", fr.describe_product(i, j)).unwrap();
        }
    }
    out
}

pub fn indicators_json(name: &str, n: u64, values: &[CycNum]) -> Value {
    let v: Vec<Value> = values.iter().map(cyc_json).collect();
    json!({ "name": name, "n": n, "indicators": v })
}

pub fn indicators_human(name: &str, n: u64, values: &[CycNum]) -> String {
    let mut out = format!("{name}: Frobenius-Schur indicators nu_{n}\n");
    for (k, v) in values.iter().enumerate() {
        writeln!(out, "  nu_{n}({k}) = {}", human(v)).unwrap();
    }
    out
}

fn verdict_json(v: &CongruenceVerdict) -> Value {
    json!({ "passed": v.passed, "lhs": cyc_json(&v.lhs), "rhs": cyc_json(&v.rhs) })
}

pub fn congruences_json(name: &str, qmax: u64, suite: &CongruenceSuite) -> Value {
    let primes: Vec<Value> = suite
        .primes
        .iter()
        .map(|p| {
            json!({
                "q": p.q,
                "indicators_integral": p.indicators_integral,
                "p1": verdict_json(&p.p1),
                "p2": verdict_json(&p.p2),
            })
        })
        .collect();
    let units: Vec<Value> = suite
        .units
        .iter()
        .map(|(a, v)| json!({ "a": a, "p3": verdict_json(v) }))
        .collect();
    json!({ "name": name, "qmax": qmax, "passed": suite.passed(), "primes": primes, "units": units })
}

pub fn congruences_human(name: &str, qmax: u64, suite: &CongruenceSuite) -> String {
    let mark = |b: bool| if b { "pass" } else { "FAIL" };
    let mut out = format!("{name}: congruences for primes q <= {qmax} coprime to ord(T)\n");
    for p in &suite.primes {
        writeln!(
            out,
            "  q = {:>3}: nu_q integral {}, p1 {}, p2 {}",
            p.q,
            mark(p.indicators_integral),
            mark(p.p1.passed),
            mark(p.p2.passed)
        )
        .unwrap();
        if !p.p1.passed {
            writeln!(out, "    p1: {} vs {}", human(&p.p1.lhs), human(&p.p1.rhs)).unwrap();
        }
        if !p.p2.passed {
            writeln!(out, "    p2: {} vs {}", human(&p.p2.lhs), human(&p.p2.rhs)).unwrap();
        }
    }
    let bad: Vec<u64> = suite
        .units
        .iter()
        .filter(|(_, v)| !v.passed)
        .map(|(a, _)| *a)
        .collect();
    writeln!(
        out,
        "  p3 (unit dimensions) over {} Galois elements: {}",
        suite.units.len(),
        if bad.is_empty() {
            String::from("pass")
        } else {
            format!("FAIL at a = {bad:?}")
        }
    )
    .unwrap();
    writeln!(out, "  overall: {}", mark(suite.passed())).unwrap();
    out
}

pub fn pair_json(
    name: &str,
    pair: &NormalizedPair,
    rel: &PairRelations,
    violation: Option<(u32, usize)>,
) -> Value {
    let s: Vec<Vec<String>> = pair
        .s
        .rows()
        .iter()
        .map(|row| row.iter().map(|x| x.render()).collect())
        .collect();
    json!({
        "name": name,
        "conductor": pair.conductor,
        "D": cyc_json(&pair.d),
        "gamma": pair.gamma,
        "x_index": pair.x_index,
        "y": { "order": pair.y.order, "exponent": pair.y.exponent },
        "t_exponents": pair.t,
        "order": pair.order,
        "s": s,
        "relations": {
            "s4_identity": rel.s4_identity,
            "st3_equals_s2": rel.st3_equals_s2,
            "s2_charge_conjugation": rel.s2_charge_conjugation,
            "order_divides": rel.order_divides,
        },
        "galois_symmetry": violation.is_none(),
        "galois_violation": violation.map(|(a, i)| json!({ "a": a, "label": i })),
    })
}

pub fn pair_human(
    name: &str,
    pair: &NormalizedPair,
    rel: &PairRelations,
    violation: Option<(u32, usize)>,
) -> String {
    let mark = |b: bool| if b { "pass" } else { "FAIL" };
    let mut out = format!(
        "{name}: normalized modular pair over Q(zeta_{})\n",
        pair.conductor
    );
    writeln!(out, "  D = {}  (gamma = {:+})", human(&pair.d), pair.gamma).unwrap();
    writeln!(out, "  x = zeta_12^{}, y = {}", pair.x_index, pair.y).unwrap();
    let t: Vec<String> = pair.t.iter().map(|e| e.to_string()).collect();
    writeln!(out, "  t = zeta_{}^[{}]", pair.conductor, t.join(", ")).unwrap();
    writeln!(out, "  n = ord(t) = {}", pair.order).unwrap();
    writeln!(out, "  s^4 = 1: {}", mark(rel.s4_identity)).unwrap();
    writeln!(out, "  (st)^3 = s^2: {}", mark(rel.st3_equals_s2)).unwrap();
    writeln!(out, "  s^2 = C: {}", mark(rel.s2_charge_conjugation)).unwrap();
    writeln!(out, "  N | n | 12N: {}", mark(rel.order_divides)).unwrap();
    match violation {
        None => writeln!(out, "  Galois symmetry: pass").unwrap(),
        Some((a, i)) => writeln!(out, "  Galois symmetry: FAIL at a = {a}, label {i}").unwrap(),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(decimal15(1.618033988749895), "1.61803398874989");
        assert_eq!(decimal15(-2.0), "-2");
        assert_eq!(decimal15(0.0), "0");
        assert_eq!(decimal15(1234.5), "1234.5");
        assert_eq!(decimal15(8.158851774647218e41), "8.15885177464722e41");
    }

    #[test]
    fn human_forms() {
        assert_eq!(human(&CycNum::from_integer(4, 2)), "2");
        let i = CycNum::root_of_unity(4, 1);
        assert_eq!(human(&i), "4:[0,1] ~ 1i");
        let z = CycNum::root_of_unity(8, 1);
        let a = approx(&z);
        assert!(
            a.starts_with("0.70710678118654") && a.contains(" + 0.70710678118654"),
            "{a}"
        );
        assert!(approx(&z.conj()).contains(" - "));
    }
}
