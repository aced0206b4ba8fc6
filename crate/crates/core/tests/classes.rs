use std::collections::{BTreeMap, BTreeSet};

use adinkra::heights::{comb_classes, from_pins, orbit, reduced_gamma, HeightFn, PinSet};
use adinkra::hypercube::generators;
use adinkra::Vertex;
use itertools::Itertools;

/// Arrows of the reduced digraph on H^4 expected; a node is named by its level sizes
/// read from the top, with a letter to tell apart classes of the same shape.
const GAMMA4_ARROWS: [(&str, &str); 40] = [
    ("hfe", "h4741"), ("h4741", "h3751"), ("h1474", "hfe"), ("h1474", "h484a"),
    ("h484a", "h385a"), ("h484a", "h4741"), ("h385a", "h3751"), ("h385a", "h286a"),
    ("h583a", "h484a"), ("h583a", "h484b"), ("h583a", "h484c"), ("h484b", "h385a"),
    ("h484b", "h385b"), ("h484c", "h385a"), ("h3751", "h2761"), ("h1573", "h583a"),
    ("h1573", "h1474"), ("h286a", "h187"), ("h286a", "h2761"), ("h682a", "h583a"),
    ("h682a", "h583b"), ("h385b", "h286a"), ("h385b", "h286b"), ("h583b", "h484b"),
    ("h583b", "h484d"), ("h2761", "h1771"), ("h2761", "h2662"), ("h1672", "h682a"),
    ("h1672", "h1573"), ("h1771", "h1672"), ("h1771", "h781"), ("h187", "h1771"),
    ("h187", "h88"), ("h781", "h682a"), ("h781", "h682b"), ("h286b", "h187"),
    ("h682b", "h583b"), ("h484d", "h385b"), ("h88", "h781"), ("h2662", "h1672"),
];

fn shape(h: &HeightFn) -> String {
    if *h == HeightFn::fully_extended(h.n()).unwrap() {
        return "hfe".into();
    }
    let levels: String = h.layer_profile().iter().rev().map(|c| format!("{c:x}")).collect();
    format!("h{levels}")
}

fn strip_letter(name: &str) -> &str {
    if name == "hfe" {
        return name;
    }
    name.trim_end_matches(|c: char| c.is_ascii_alphabetic() && c != 'h')
}

#[test]
fn reduced_gamma_4_arrows() {
    let rg = reduced_gamma(4).unwrap();
    let classes = &rg.classes;
    assert_eq!(classes.len(), 24);
    let computed_shapes: Vec<String> = (0..classes.len()).map(|i| shape(classes.representative(i))).collect();

    let mut named_by_shape: BTreeMap<String, BTreeSet<&str>> = BTreeMap::new();
    for (a, b) in GAMMA4_ARROWS {
        named_by_shape.entry(strip_letter(a).to_string()).or_default().insert(a);
        named_by_shape.entry(strip_letter(b).to_string()).or_default().insert(b);
    }
    let mut computed_by_shape: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, s) in computed_shapes.iter().enumerate() {
        computed_by_shape.entry(s.clone()).or_default().push(i);
    }
    let named_counts: BTreeMap<&String, usize> = named_by_shape.iter().map(|(k, v)| (k, v.len())).collect();
    let computed_counts: BTreeMap<&String, usize> = computed_by_shape.iter().map(|(k, v)| (k, v.len())).collect();
    assert_eq!(named_counts, computed_counts);

    let expected: BTreeSet<(&str, &str)> = GAMMA4_ARROWS.iter().copied().collect();
    let computed: BTreeSet<(usize, usize)> = rg
        .edges
        .iter()
        .filter(|(a, b)| a != b)
        .map(|&(a, b)| (a as usize, b as usize))
        .collect();
    assert_eq!(computed.len(), expected.len());

    // try every way of matching lettered names to classes of the same shape
    let groups: Vec<(Vec<&str>, Vec<usize>)> = named_by_shape
        .iter()
        .map(|(s, names)| (names.iter().copied().collect(), computed_by_shape[s].clone()))
        .collect();
    let found = groups
        .iter()
        .map(|(_, ids)| ids.iter().copied().permutations(ids.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .any(|choice| {
            let mut name_of = BTreeMap::new();
            for ((names, _), ids) in groups.iter().zip(&choice) {
                for (name, &id) in names.iter().zip(ids) {
                    name_of.insert(id, *name);
                }
            }
            computed.iter().map(|(a, b)| (name_of[a], name_of[b])).collect::<BTreeSet<_>>() == expected
        });
    assert!(found, "no relabeling of the computed classes reproduces the expected arrows");
}

type Pins = Vec<(Vertex, u32)>;

fn vx(s: &str) -> Vertex {
    Vertex::from_coords(&s.bytes().map(|b| b - b'0').collect::<Vec<_>>()).unwrap()
}

fn at(h: u32, vs: &[&str]) -> Vec<(Vertex, u32)> {
    vs.iter().map(|s| (vx(s), h)).collect()
}

fn whites_except(n: u8, h: u32, removed: &[u32]) -> PinSet {
    let pins = Vertex::all(n)
        .unwrap()
        .filter(|v| v.is_white() && !removed.contains(&u32::from(v.bits())))
        .map(|v| (v, h))
        .collect();
    PinSet::new(pins).unwrap()
}

#[test]
fn pinned_representatives_of_h4() {
    // name, pins, class size
    let mut rows: Vec<(&str, Pins, usize)> = vec![
        ("hfe", at(4, &["1111"]), 16),
        ("h4741", at(3, &["0111", "1011", "1101", "1110"]), 16),
        ("h3751", at(3, &["0111", "1011", "1101"]), 64),
        ("h2761", [at(3, &["0111", "1011"]), at(2, &["1100"])].concat(), 96),
        ("h2662", at(2, &["0111", "1011"]), 48),
        ("h1771", [at(3, &["0111"]), at(2, &["1100", "1010", "1001"])].concat(), 64),
        ("h187", [at(2, &["0111"]), at(1, &["0000", "1100", "1010", "1001"])].concat(), 16),
        ("h286b", at(2, &["0001", "1110"]), 8),
        ("h286a", [at(2, &["0111", "1011"]), at(1, &["0000", "1100"])].concat(), 48),
        ("h385b", at(2, &["0100", "0001", "1110"]), 48),
        ("h385a", [at(2, &["0111", "1011", "1101"]), at(1, &["0000"])].concat(), 64),
        ("h484d", at(2, &["0100", "1011", "1110", "0001"]), 12),
        ("h484b", at(2, &["0111", "1011", "1110", "0001"]), 96),
        ("h484c", at(2, &["0111", "1011", "1101", "0001"]), 16),
        ("h484a", [at(2, &["0111", "1011", "1101", "1110"]), at(1, &["0000"])].concat(), 16),
    ];
    let whites = |removed: &[&str]| -> Vec<(Vertex, u32)> {
        whites_except(4, 2, &removed.iter().map(|s| u32::from(vx(s).bits())).collect::<Vec<_>>()).pins().to_vec()
    };
    rows.push(("h88", whites(&[]), 2));
    rows.push(("h781", whites(&["1000"]), 16));
    rows.push(("h682b", whites(&["0001", "1110"]), 8));
    rows.push(("h682a", whites(&["1000", "0100"]), 48));
    rows.push(("h583b", whites(&["0001", "1101", "1110"]), 48));
    rows.push(("h583a", whites(&["1000", "0100", "0010"]), 64));

    for (name, pins, size) in rows {
        let h = from_pins(&PinSet::new(pins).unwrap()).unwrap();
        assert_eq!(shape(&h), strip_letter(name), "{name}");
        assert_eq!(orbit(&h).unwrap().len(), size, "{name}");
    }
}

#[test]
fn letters_separate_classes_of_one_shape() {
    // same level sizes, different classes
    let pair = |a: Vec<(Vertex, u32)>, b: Vec<(Vertex, u32)>| {
        let ha = from_pins(&PinSet::new(a).unwrap()).unwrap();
        let hb = from_pins(&PinSet::new(b).unwrap()).unwrap();
        assert_eq!(shape(&ha), shape(&hb));
        assert!(!orbit(&ha).unwrap().contains(&hb));
    };
    pair(at(2, &["0111", "1011", "1110", "0001"]), at(2, &["0111", "1011", "1101", "0001"]));
    pair(at(2, &["0001", "1110"]), [at(2, &["0111", "1011"]), at(1, &["0000", "1100"])].concat());
}

#[test]
fn class_counts_in_low_dimension() {
    let counts: Vec<usize> = (1..=4).map(|n| comb_classes(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 2, 5, 24]);
}

#[test]
fn classes_are_closed_under_generators() {
    for n in 2..=4 {
        let classes = comb_classes(n).unwrap();
        for g in generators(n).unwrap() {
            let table = g.table();
            for (i, h) in classes.heights.iter().enumerate() {
                let moved = h.compose_table(&table);
                assert_eq!(classes.class_of_height(&moved), Some(classes.class_of[i] as usize));
            }
        }
    }
}

#[test]
fn reduced_digraph_is_well_defined() {
    for n in 1..=4 {
        assert!(reduced_gamma(n).unwrap().is_well_defined(), "n = {n}");
    }
}

#[test]
fn reduced_digraph_in_dimensions_one_and_two() {
    let one = reduced_gamma(1).unwrap();
    assert_eq!(one.classes.len(), 1);
    assert_eq!(one.edges.iter().copied().collect::<Vec<_>>(), [(0, 0)]);

    let two = reduced_gamma(2).unwrap();
    assert_eq!(two.classes.len(), 2);
    let mut sizes = two.classes.sizes();
    sizes.sort_unstable();
    assert_eq!(sizes, [2, 4]);
}

#[test]
fn arrows_among_valise_neighbours_on_h5() {
    // the valise and the classes obtained by taking white pins off it
    let removals: [&[u32]; 7] = [
        &[],
        &[0b00001],
        &[0b00001, 0b00010],
        &[0b00001, 0b01110],
        &[0b00001, 0b00010, 0b00100],
        &[0b00001, 0b00010, 0b01110],
        &[0b00001, 0b00010, 0b11100],
    ];
    let orbits: Vec<BTreeSet<HeightFn>> = removals
        .iter()
        .map(|r| orbit(&from_pins(&whites_except(5, 5, r)).unwrap()).unwrap().into_iter().collect())
        .collect();
    let sizes: Vec<usize> = orbits.iter().map(BTreeSet::len).collect();
    assert_eq!(sizes, [2, 32, 160, 80, 320, 480, 320]);

    let mut arrows = BTreeSet::new();
    for (a, members) in orbits.iter().enumerate() {
        for h in members {
            for v in h.lowering_targets() {
                let lowered = h.lower(v).unwrap();
                if let Some(b) = orbits.iter().position(|o| o.contains(&lowered)) {
                    arrows.insert((a, b));
                }
            }
        }
    }
    let want: BTreeSet<(usize, usize)> =
        [(0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (2, 6), (3, 5), (3, 6)].into_iter().collect();
    assert_eq!(arrows, want);
}
