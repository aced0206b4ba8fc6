use std::sync::OnceLock;

use adinkra::heights::{count_heights, enumerate, from_pins, validate, HeightViolation};
use adinkra::{Error, HeightFn, PinSet, Vertex};
use proptest::prelude::*;

/// Every height by direct search over values 0..=n, keeping those with minimum 0.
fn brute_force(n: u8) -> Vec<Vec<u8>> {
    fn go(n: u8, i: usize, vals: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let size = 1usize << n;
        if i == size {
            if vals.contains(&0) {
                out.push(vals.clone());
            }
            return;
        }
        for x in 0..=n {
            let ok = (0..n).all(|j| {
                let w = i ^ (1 << j);
                w > i || vals[w].abs_diff(x) == 1
            });
            if ok {
                vals.push(x);
                go(n, i + 1, vals, out);
                vals.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=4 {
        let mut got: Vec<Vec<u8>> = enumerate(n).unwrap().iter().map(|h| h.values().to_vec()).collect();
        got.sort();
        assert_eq!(got, brute_force(n), "n = {n}");
    }
}

#[test]
fn streaming_count_agrees() {
    for n in 1..=4 {
        assert_eq!(count_heights(n, |_, _| {}).unwrap(), enumerate(n).unwrap().len() as u64);
    }
    assert_eq!(count_heights(5, |_, _| {}).unwrap(), 395_094);
}

#[test]
fn too_large_is_refused() {
    assert_eq!(enumerate(6).unwrap_err(), Error::TooLarge(6));
}

#[test]
fn validation_names_the_problem() {
    assert!(matches!(validate(2, &[0, 1, 1]), Err(HeightViolation::Length { .. })));
    assert!(matches!(validate(2, &[0, 1, 1, 0]), Ok(())));
    assert!(matches!(validate(2, &[0, 2, 1, 2]), Err(HeightViolation::Edge { .. })));
    assert!(matches!(validate(2, &[1, 2, 2, 1]), Err(HeightViolation::Min(1))));
}

#[test]
fn pins_must_share_parity() {
    let a = Vertex::new(3, 0b000).unwrap();
    let b = Vertex::new(3, 0b001).unwrap();
    assert!(matches!(PinSet::new(vec![(a, 2), (b, 2)]), Err(Error::PinParity(..))));
    assert!(matches!(PinSet::new(vec![]), Err(Error::NoPins)));
}

#[test]
fn single_pin_gives_a_cone() {
    for n in 1..=5 {
        let top = Vertex::ones(n).unwrap();
        let h = from_pins(&PinSet::new(vec![(top, u32::from(n))]).unwrap()).unwrap();
        assert_eq!(h, HeightFn::fully_extended(n).unwrap());
    }
}

fn heights4() -> &'static [HeightFn] {
    static H: OnceLock<Vec<HeightFn>> = OnceLock::new();
    H.get_or_init(|| enumerate(4).unwrap())
}

fn heights5() -> &'static [HeightFn] {
    static H: OnceLock<Vec<HeightFn>> = OnceLock::new();
    H.get_or_init(|| enumerate(5).unwrap())
}

fn is_valid(h: &HeightFn) -> bool {
    let vals: Vec<i64> = h.values().iter().map(|&x| i64::from(x)).collect();
    validate(h.n(), &vals).is_ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_walks_stay_in_the_census(start in 0usize..990, moves in prop::collection::vec(any::<(bool, u16)>(), 0..60)) {
        let all = heights4();
        let mut h = all[start].clone();
        for (down, pick) in moves {
            let targets = if down { h.lowering_targets() } else { h.raising_targets() };
            if targets.is_empty() {
                continue;
            }
            let v = targets[usize::from(pick) % targets.len()];
            let next = if down { h.lower(v).unwrap() } else { h.raise(v).unwrap() };
            // lowering and raising undo each other
            let back = if down { next.raise(v).unwrap() } else { next.lower(v).unwrap() };
            prop_assert_eq!(&back, &h);
            h = next;
            prop_assert!(is_valid(&h));
            prop_assert!(all.binary_search(&h).is_ok());
        }
    }

    #[test]
    fn symmetries_preserve_heights(i in 0usize..395_094, bits in 0u32..32) {
        let h = &heights5()[i];
        let u = Vertex::new(5, bits).unwrap();
        let inv = h.invert();
        prop_assert_eq!(&inv.invert(), h);
        for g in [inv, h.shift(u).unwrap(), h.rainbow_rotate(u).unwrap()] {
            prop_assert!(is_valid(&g));
            prop_assert!(heights5().binary_search(&g).is_ok());
        }
        prop_assert_eq!(&h.shift(u).unwrap().shift(u).unwrap(), h);
    }

    #[test]
    fn extrema_are_strict(i in 0usize..990) {
        let h = &heights4()[i];
        for v in h.lowering_targets() {
            prop_assert!(v.neighbors().iter().all(|&(_, w)| h.at(w) + 1 == h.at(v)));
        }
        for v in h.raising_targets() {
            prop_assert!(v.neighbors().iter().all(|&(_, w)| h.at(w) == h.at(v) + 1));
        }
    }
}
