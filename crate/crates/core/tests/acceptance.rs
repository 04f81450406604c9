//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use brownlab_core::checker::has_large_homogeneous_bruteforce;
use brownlab_core::constructions::ladder::ladder;
use brownlab_core::constructions::ps::extract_homogeneous_ps;
use brownlab_core::constructions::*;
use brownlab_core::search::{brown_number_enumerated, confirm_no_vdw_witness, Verdict};
use brownlab_core::vdw::ap_partition_check;
use brownlab_core::*;
use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn ladder_verification() -> Check {
    let expected = [2u64, 16, 2_097_152];
    for s in 0..=2u32 {
        let rep = ladder_verify(s).map_err(e2s)?;
        ensure(rep.length == expected[s as usize], || {
            format!("n_{s} = {}, expected {}", rep.length, expected[s as usize])
        })?;
        ensure(rep.classes.len() == 1 << s, || format!("stage {s}: wrong class count"))?;
        for c in &rep.classes {
            ensure(c.holds(), || {
                format!("stage {s}, color {}: {:?} failed", c.color, c.failures())
            })?;
        }
        let coloring = ladder(s).map_err(e2s)?.coloring.unwrap();
        ensure(
            is_witness(&coloring, &GrowthFn::exp2()).map_err(e2s)?.is_some(),
            || format!("stage {s} is not a witness"),
        )?;
    }
    Ok("n_s = 2, 16, 2097152; all classes pass size, star and span claims".into())
}

fn exact_brown_numbers() -> Check {
    let cfg = SearchConfig::default();
    let lin1 = GrowthFn::linear(1).unwrap();
    let lin2 = GrowthFn::linear(2).unwrap();
    let value = |f: &GrowthFn, r| -> std::result::Result<u64, String> {
        brown_number(f, r, &cfg)
            .map_err(e2s)?
            .exact_value()
            .ok_or_else(|| format!("{f}, r={r}: search did not complete"))
    };
    let a = value(&lin1, 1)?;
    let b = value(&lin2, 1)?;
    let c = value(&lin1, 2)?;
    let oa = brown_number_enumerated(&lin1, 1, 8).map_err(e2s)?;
    let ob = brown_number_enumerated(&lin2, 1, 8).map_err(e2s)?;
    let oc = brown_number_enumerated(&lin1, 2, 8).map_err(e2s)?;
    ensure(a == 2 && oa == Some(2), || format!("B_linear:1(1) = {a}, oracle {oa:?}"))?;
    ensure(b == 3 && ob == Some(3), || format!("B_linear:2(1) = {b}, oracle {ob:?}"))?;
    ensure(Some(c) == oc, || format!("B_linear:1(2) = {c}, oracle {oc:?}"))?;
    let ardal = ardal_bound(1, 2).map_err(e2s)?;
    ensure(big(c) <= ardal, || format!("B_linear:1(2) = {c} exceeds {ardal}"))?;
    Ok(format!(
        "B_linear:1(1) = {a}, B_linear:2(1) = {b}, B_linear:1(2) = {c} (oracle agrees, <= {ardal})"
    ))
}

fn lower_bound_chain() -> Check {
    let exp2 = GrowthFn::exp2();
    let c1 = Coloring::from_digits(2, "0011001100110011").unwrap();
    let cert = is_witness(&c1, &exp2)
        .map_err(e2s)?
        .ok_or("C_1 is not a witness")?;
    cert.validate().map_err(e2s)?;
    let capped = brown_number(&exp2, 2, &SearchConfig::with_cap(16)).map_err(e2s)?;
    let (lower, upper) = match capped.kind {
        OutcomeKind::Bracketed { lower, upper } => (lower, upper),
        OutcomeKind::Exact { value } => return Err(format!("capped search claimed exact {value}")),
    };
    let upper = upper.ok_or("bracket has no upper bound")?;
    ensure(17 <= lower && big(lower) <= upper && upper <= big(33), || {
        format!("bracket [{lower}, {upper}] outside [17, 33]")
    })?;
    let full = brown_number(&exp2, 2, &SearchConfig::default()).map_err(e2s)?;
    let exact = full.exact_value().ok_or("uncapped search did not complete")?;
    ensure((17..=33).contains(&exact), || format!("exact value {exact} outside [17, 33]"))?;
    let conf = confirm_no_witness(exact as usize, &exp2, 2, &SearchConfig::default())
        .map_err(e2s)?;
    ensure(conf.verdict == Verdict::NoWitness, || "no-witness confirmation failed".into())?;
    Ok(format!(
        "C_1 certifies B_exp2(2) > 16; bracket [{lower}, {upper}]; exact value {exact}"
    ))
}

fn bound_evaluators() -> Check {
    for ((m, r), v) in [((1, 1), 2u64), ((1, 2), 5), ((1, 3), 16), ((2, 2), 25)] {
        let got = ardal_bound(m, r).map_err(e2s)?;
        ensure(got == big(v), || format!("ardal({m}, {r}) = {got}, expected {v}"))?;
    }
    let exp2 = GrowthFn::exp2();
    let expect = [big(4), big(33), big(3) * (BigUint::one() << 33u32) + 1u32];
    for (r, v) in (1..=3).zip(expect.iter()) {
        let got = upper_bound_seq(&exp2, r).map_err(e2s)?.value;
        ensure(got == *v, || format!("n_{r} = {got}, expected {v}"))?;
    }
    for (k, n, v) in [(0, 5, 5u64), (3, 1, 16), (2, 2, 16)] {
        let got = tower(k, n).map_err(e2s)?;
        ensure(got == big(v), || format!("2_{k}({n}) = {got}"))?;
    }
    let chain = ladder_lower_bound_check(3).map_err(e2s)?;
    ensure(chain.all_hold(), || "n_s >= 2_s fails".into())?;
    let n3_bits = chain.steps[3].n_s_bits;
    ensure(n3_bits == 2_097_175, || format!("n_3 has {n3_bits} bits"))?;
    Ok(format!("ardal 2, 5, 16, 25; recursion 4, 33, 3*2^33+1; n_s >= 2_s for s <= 3 (n_3: {n3_bits} bits)"))
}

fn for_each_coloring(r: u32, n: usize, mut visit: impl FnMut(&Coloring) -> bool) -> bool {
    let total = (r as u64).pow(n as u32);
    let mut values = vec![0u32; n];
    for code in 0..total {
        let mut x = code;
        for v in values.iter_mut() {
            *v = (x % r as u64) as u32;
            x /= r as u64;
        }
        if !visit(&Coloring::new(r, values.clone()).unwrap()) {
            return false;
        }
    }
    true
}

fn oracle_equivalence() -> Check {
    let fs = [
        GrowthFn::linear(1).unwrap(),
        GrowthFn::linear(2).unwrap(),
        GrowthFn::exp2(),
    ];
    let mut checked = 0u64;
    let mut disagreement = None;
    for f in &fs {
        for n in 1..=12 {
            let ok = for_each_coloring(2, n, |c| {
                checked += 1;
                let fast = has_large_homogeneous(c, f).unwrap().is_some();
                let slow = has_large_homogeneous_bruteforce(c, f).unwrap().is_some();
                if fast != slow {
                    disagreement = Some(format!("{f} on {c}"));
                }
                fast == slow
            });
            if !ok {
                return Err(format!("disagreement: {}", disagreement.unwrap()));
            }
        }
    }
    let exhaustive = checked;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..100_000u64 {
        let n = rng.gen_range(0..=12);
        let c = Coloring::new(3, (0..n).map(|_| rng.gen_range(0..3)).collect()).unwrap();
        let f = &fs[(i % 3) as usize];
        let fast = has_large_homogeneous(&c, f).map_err(e2s)?.is_some();
        let slow = has_large_homogeneous_bruteforce(&c, f).map_err(e2s)?.is_some();
        ensure(fast == slow, || format!("disagreement: {f} on {c}"))?;
    }
    Ok(format!(
        "{exhaustive} exhaustive 2-colorings and 100000 random 3-colorings, 0 disagreements"
    ))
}

fn diagonal_lemma() -> Check {
    for d in 1..=64u64 {
        let m = diag_bound_check(d, 100_000).map_err(e2s)?;
        ensure(m == d, || format!("d = {d}: largest bounded-gap set has size {m}"))?;
    }
    Ok("max homogeneous set with gaps <= d is exactly d for d = 1..64 on 10^5 positions".into())
}

fn van_der_waerden() -> Check {
    let cfg = SearchConfig::default();
    for l in 1..=8 {
        let v = vdw_number(1, l, &cfg).map_err(e2s)?.exact_value();
        ensure(v == Some(l as u64), || format!("W(1, {l}) = {v:?}"))?;
    }
    for r in 1..=5 {
        let v = vdw_number(r, 1, &cfg).map_err(e2s)?.exact_value();
        ensure(v == Some(1), || format!("W({r}, 1) = {v:?}"))?;
    }
    let out = vdw_number(2, 3, &cfg).map_err(e2s)?;
    let w = out.exact_value().ok_or("W(2, 3) search did not complete")?;
    ensure(out.witness.len() as u64 == w - 1, || "witness has the wrong length".into())?;
    ensure(
        ap_partition_check(&out.witness, 3).map_err(e2s)?.is_none(),
        || "witness contains a monochromatic 3-AP".into(),
    )?;
    let conf = confirm_no_vdw_witness(w as usize, 2, 3, &cfg).map_err(e2s)?;
    ensure(conf.verdict == Verdict::NoWitness, || "no-witness confirmation failed".into())?;
    let all_have_ap = for_each_coloring(2, w as usize, |c| {
        ap_partition_check(c, 3).unwrap().is_some()
    });
    ensure(all_have_ap, || format!("some 2-coloring of {w} avoids 3-APs"))?;
    Ok(format!("W(1, l) = l, W(r, 1) = 1, W(2, 3) = {w} (witness {}, confirmed)", out.witness))
}

fn constructions() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    // 141 blocks hold 10011 elements
    let k_max = 141;
    for _ in 0..100 {
        let r = rng.gen_range(2..9u32);
        let values: Vec<u32> = (0..=k_max).map(|_| rng.gen_range(1..r)).collect();
        let seq = ps_generate(&Coloring::new(r, values.clone()).unwrap(), k_max).map_err(e2s)?;
        for n in 1..=k_max {
            let b = seq.block(n).unwrap();
            ensure(b.len() == n, || format!("|I_{n}| = {}", b.len()))?;
            if n >= 2 {
                ensure(b.windows(2).all(|w| w[1] - w[0] == values[n] as u64), || {
                    format!("I_{n} gaps differ from C({n})")
                })?;
            }
            if n < k_max {
                let sep = seq.block(n + 1).unwrap()[0] - b[n - 1];
                ensure(sep == n as u64, || format!("separation after I_{n} is {sep}"))?;
            }
        }
        for (k, &x) in seq.elements.iter().enumerate().take(10_001) {
            let k = k as u64;
            ensure(x <= r as u64 * k * (k + 1) / 2, || format!("x_{k} = {x} too large"))?;
        }
    }

    for _ in 0..100 {
        let horizon = rng.gen_range(50..2000u64);
        let d = rng.gen_range(1..8u64);
        let mut x = Vec::new();
        let mut p = rng.gen_range(0..20u64);
        while p < horizon {
            for _ in 0..rng.gen_range(1..30) {
                if p >= horizon {
                    break;
                }
                x.push(p);
                p += rng.gen_range(1..=d);
            }
            p += rng.gen_range(1..100);
        }
        let xs = FiniteSet::new(x.clone()).unwrap();
        let dec = decompose_ps(&xs, d, horizon).map_err(e2s)?;
        let low = |v: &u64| v + d < horizon;
        let meet: Vec<u64> = dec
            .y
            .iter()
            .copied()
            .filter(|&v| dec.z.contains(v) && low(&v))
            .collect();
        let x_low: Vec<u64> = x.iter().copied().filter(low).collect();
        ensure(meet == x_low, || format!("X != Y ∩ Z for d = {d}, horizon = {horizon}"))?;
    }

    let mut instances = 0;
    for n in 1..=5usize {
        for d in 1..=3u64 {
            for e in 1..=3u64 {
                let values: Vec<u32> = (0..=80).map(|_| rng.gen_range(1..=d as u32)).collect();
                let seq = ps_generate(&Coloring::new(d as u32 + 1, values).unwrap(), 80)
                    .map_err(e2s)?;
                let two_ne = 2 * n as u64 * e;
                let p = (two_ne - 1) * two_ne / 2 + 2 * n as u64;
                let mut y = Vec::new();
                let mut j = rng.gen_range(0..50u64);
                for _ in 0..rng.gen_range(0..6) {
                    y.push(j);
                    j += rng.gen_range(e + 1..4 * e + 6);
                }
                for _ in 0..p {
                    y.push(j);
                    j += rng.gen_range(1..=e);
                }
                let y = FiniteSet::new(y).unwrap();
                let ex = extract_homogeneous_ps(d, e, &y, &seq, n).map_err(e2s)?;
                ensure(ex.verified && ex.subset.len() == n && gap_size(&ex.subset) <= e * d, || {
                    format!("extraction failed for n = {n}, d = {d}, e = {e}")
                })?;
                instances += 1;
            }
        }
    }
    Ok(format!(
        "100 generated sequences (k <= 10^4), 100 decompositions, {instances} extractions"
    ))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Check); 8] = [
        (1, "ladder verification", Duration::from_secs(30), ladder_verification),
        (2, "exact Brown numbers", Duration::from_secs(5), exact_brown_numbers),
        (3, "lower-bound chain", Duration::from_secs(600), lower_bound_chain),
        (4, "bound evaluators", Duration::from_secs(5), bound_evaluators),
        (5, "oracle equivalence", Duration::from_secs(120), oracle_equivalence),
        (6, "diagonal lemma", Duration::from_secs(10), diagonal_lemma),
        (7, "van der Waerden", Duration::from_secs(60), van_der_waerden),
        (8, "constructions", Duration::from_secs(30), constructions),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(msg) if elapsed <= limit => ("PASS", msg),
            Ok(msg) => ("FAIL", format!("{msg}; took longer than {limit:?}")),
            Err(msg) => ("FAIL", msg),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {id} [{status}] {name} ({:.2}s, limit {}s): {detail}",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
