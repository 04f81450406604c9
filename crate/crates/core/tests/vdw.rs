use brownlab_core::vdw::{ap_partition_check, ap_report, ap_transfer, longest_ap};
use brownlab_core::*;
use proptest::prelude::*;

/// Every `(start, diff)` pair, extended greedily.
fn longest_ap_oracle(h: &[u64]) -> usize {
    if h.len() <= 1 {
        return h.len();
    }
    let mut best = 2;
    for &a in h {
        for &b in h {
            if b <= a {
                continue;
            }
            let d = b - a;
            let mut len = 1;
            while h.contains(&(a + len as u64 * d)) {
                len += 1;
            }
            best = best.max(len);
        }
    }
    best
}

proptest! {
    #[test]
    fn longest_ap_matches_oracle(mut h in prop::collection::vec(0u64..400, 0..200)) {
        h.sort();
        h.dedup();
        let ap = longest_ap(&h);
        prop_assert_eq!(ap.len, longest_ap_oracle(&h));
        for x in ap.elements() {
            prop_assert!(h.binary_search(&x).is_ok());
        }
    }

    #[test]
    fn transfer_multiplies_differences(
        a in 0u64..100, q in 1u64..20, len in 1usize..40,
        s in 0u64..10, t in 1u64..5, k in 1usize..10,
    ) {
        let x = FiniteSet::new((0..len as u64).map(|i| a + i * q).collect()).unwrap();
        let inner: Vec<u64> = (0..k as u64).map(|i| s + i * t).collect();
        let inner = FiniteSet::new(inner).unwrap();
        match ap_transfer(&x, &inner) {
            Ok(out) => {
                prop_assert_eq!(out.len(), k);
                for w in out.windows(2) {
                    prop_assert_eq!(w[1] - w[0], q * t);
                }
            }
            Err(Error::InvalidArgument(_)) => {
                prop_assert!(inner.max().unwrap() >= len as u64);
            }
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn partition_check_finds_least_witness(values in prop::collection::vec(0u32..3, 0..40), l in 1usize..5) {
        let c = Coloring::new(3, values.clone()).unwrap();
        let got = ap_partition_check(&c, l).unwrap();
        let mut expect = None;
        'outer: for start in 0..values.len() {
            let max_d = if l == 1 { 0 } else { values.len() };
            for d in (if l == 1 { 0 } else { 1 })..=max_d {
                let idx: Vec<usize> = (0..l).map(|k| start + k * d).collect();
                if idx.iter().all(|&i| i < values.len() && values[i] == values[start]) {
                    expect = Some((values[start], start as u64, d as u64));
                    break 'outer;
                }
            }
        }
        prop_assert_eq!(got.map(|w| (w.color, w.ap.start, w.ap.diff)), expect);
    }
}

#[test]
fn report_per_class() {
    let c = Coloring::from_digits(2, "00100110").unwrap();
    let rep = ap_report(&c);
    assert_eq!(rep.classes[0].ap.len, 3);
    assert_eq!(rep.classes[1].ap.len, 2);
}

/// Every 2-coloring of an 18-term progression has a monochromatic 3-term
/// progression inside the progression.
#[test]
fn partition_regularity_on_a_progression() {
    let w = vdw_number(2, 3, &SearchConfig::default())
        .unwrap()
        .exact_value()
        .unwrap() as usize;
    let len = 2 * w;
    for (a, q) in [(0u64, 1u64), (5, 3), (100, 7)] {
        let host: Vec<u64> = (0..len as u64).map(|i| a + i * q).collect();
        for code in 0u32..1 << len {
            let found = (0..2).any(|color| {
                let class: Vec<u64> = (0..len)
                    .filter(|&i| code >> i & 1 == color)
                    .map(|i| host[i])
                    .collect();
                longest_ap(&class).len >= 3
            });
            assert!(found, "a={a} q={q} code={code:b}");
        }
    }
}
