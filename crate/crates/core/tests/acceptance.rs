//! Acceptance gate. Each test prints exactly one verdict line of the
//! form "acceptance N (<name>): PASS" or "... FAIL" and then asserts
//! it, so a red run still shows the per-criterion verdict. Time
//! budgets are pinned next to the criteria they protect.

mod common;

use std::fs;
use std::time::{Duration, Instant};

use costrata::bruhat::bruhat_order;
use costrata::cosets::{coset_poset, double_cosets};
use costrata::coxeter::{build_group, CoxeterDatum, EnumeratedGroup, ParabolicSubset};
use costrata::hecke::{a_function, AMethod};
use costrata::homdim::{BlockContext, BlockSpec};
use costrata::stratorder::{check_bruhat_conformance, regular_block_data};
use costrata::wposet::{canonical_form, catalog, is_isomorphic, IsoMode, WeightedPoset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// CLI type, reference subdirectory, expected grid size.
const FIGURE_TYPES: [(&str, &str, usize); 5] = [
    ("A2", "a2", 16),
    ("B2", "b2", 16),
    ("G2", "g2", 16),
    ("A3", "a3", 64),
    ("B3", "b3", 64),
];

/// Every implemented type of order at most 48.
const SMALL_TYPES: &[&str] = &["A1", "A1xA1", "A2", "B2", "A1xA2", "G2", "A3", "B3"];

const FIGURE_BUDGET: Duration = Duration::from_secs(10);
const ISO_BUDGET: Duration = Duration::from_secs(5);
const A_FUNCTION_BUDGET: Duration = Duration::from_secs(60);

fn group(name: &str) -> EnumeratedGroup {
    build_group(&CoxeterDatum::parse(name).unwrap()).unwrap()
}

fn report(n: usize, name: &str, ok: bool) {
    println!("acceptance {n} ({name}): {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "acceptance {n} ({name})");
}

#[test]
fn acceptance_1_figure_posets() {
    let start = Instant::now();
    let mut ok = true;
    let mut total = 0usize;
    for (type_name, subdir, expected_cells) in FIGURE_TYPES {
        let g = group(type_name);
        let grid = catalog(&g).unwrap();
        ok &= grid.cells.len() == expected_cells;
        for cell in &grid.cells {
            total += 1;
            let path = common::golden_dir().join(subdir).join(format!(
                "S_{}__G_{}.json",
                cell.s_set.label(),
                cell.g_set.label()
            ));
            let text = match fs::read_to_string(&path) {
                Ok(t) => t,
                Err(_) => {
                    ok = false;
                    continue;
                }
            };
            let golden = WeightedPoset::from_json(text.trim()).unwrap();
            ok &= canonical_form(&golden).signature == canonical_form(&cell.poset).signature;
        }
    }
    ok &= total == 176;
    ok &= start.elapsed() < FIGURE_BUDGET;
    report(1, "figure posets", ok);
}

#[test]
fn acceptance_2_weight_identities() {
    let mut ok = true;
    for (type_name, _, _) in FIGURE_TYPES {
        let g = group(type_name);
        for s_set in ParabolicSubset::all_subsets(g.rank()) {
            let s_order = g.parabolic_elements(&s_set).len() as u64;
            for g_set in ParabolicSubset::all_subsets(g.rank()) {
                let cells = double_cosets(&g, &g_set, &s_set);
                let mut weight_sum = 0u64;
                for cell in &cells {
                    ok &= cell.weight * s_order == cell.member_ids.len() as u64;
                    weight_sum += cell.weight;
                }
                ok &= weight_sum == g.order() as u64 / s_order;
            }
        }
    }
    report(2, "weight identities", ok);
}

#[test]
fn acceptance_3_group_orders() {
    let expected: [(&str, u128); 11] = [
        ("A1", 2),
        ("A2", 6),
        ("A3", 24),
        ("A4", 120),
        ("A5", 720),
        ("B2", 8),
        ("B3", 48),
        ("B4", 384),
        ("D4", 192),
        ("G2", 12),
        ("F4", 1152),
    ];
    let mut ok = true;
    for (name, order) in expected {
        let datum = CoxeterDatum::parse(name).unwrap();
        ok &= datum.order() == order;
        let g = build_group(&datum).unwrap();
        ok &= g.order() as u128 == order;
    }
    report(3, "group orders", ok);
}

#[test]
fn acceptance_4_cross_type_isomorphisms() {
    let start = Instant::now();
    let free = |name: &str, members: &[usize]| {
        let g = group(name);
        let g_set = ParabolicSubset::from_indices(g.rank(), members).unwrap();
        coset_poset(&g, &g_set, &ParabolicSubset::empty(g.rank())).unwrap()
    };

    let a3_by_a2 = free("A3", &[1, 2]);
    let b2_by_a1 = free("B2", &[1]);
    let a5_by_a4 = free("A5", &[1, 2, 3, 4]);
    let g2_by_a1 = free("G2", &[1]);
    let b3_by_b2 = free("B3", &[2, 3]);
    let b3_by_a2 = free("B3", &[1, 2]);
    let d4_by_a3 = free("D4", &[1, 2, 3]);

    let mut ok = true;
    ok &= is_isomorphic(&a3_by_a2, &b2_by_a1, IsoMode::Unweighted).is_some();
    ok &= is_isomorphic(&a5_by_a4, &g2_by_a1, IsoMode::Unweighted).is_some();
    ok &= is_isomorphic(&g2_by_a1, &b3_by_b2, IsoMode::Unweighted).is_some();
    ok &= is_isomorphic(&a5_by_a4, &b3_by_b2, IsoMode::Unweighted).is_some();
    ok &= is_isomorphic(&b3_by_a2, &d4_by_a3, IsoMode::Unweighted).is_some();

    // The weight profile separates what the shapes identify.
    ok &= is_isomorphic(&a3_by_a2, &b2_by_a1, IsoMode::Weighted).is_none();
    ok &= a3_by_a2.weights().iter().all(|&w| w == 6);
    ok &= b2_by_a1.weights().iter().all(|&w| w == 2);

    ok &= start.elapsed() < ISO_BUDGET;
    report(4, "cross-type isomorphisms", ok);
}

#[test]
fn acceptance_5_a_function() {
    let start = Instant::now();
    let mut ok = true;

    let mut type_a_elements = 0usize;
    for name in &["A1", "A2", "A3"] {
        let g = group(name);
        let hecke = a_function(&g, AMethod::Hecke).unwrap();
        let rsk = a_function(&g, AMethod::Rsk).unwrap();
        ok &= hecke.values() == rsk.values();
        type_a_elements += g.order();
    }
    ok &= type_a_elements == 32;

    for name in SMALL_TYPES {
        let g = group(name);
        let table = a_function(&g, AMethod::Auto).unwrap();
        ok &= table.value(g.identity()) == 0;
        for w in g.elements() {
            ok &= table.value(w) == table.value(g.inverse(w));
        }
        for j_set in ParabolicSubset::all_subsets(g.rank()) {
            let wj = g.longest_element(&j_set);
            ok &= table.value(wj) == g.length(wj);
        }
    }

    ok &= start.elapsed() < A_FUNCTION_BUDGET;
    report(5, "a-function", ok);
}

#[test]
fn acceptance_6_homological_dimensions() {
    let block = |name: &str, g: &str| {
        let datum = CoxeterDatum::parse(name).unwrap();
        let g_set = ParabolicSubset::parse(datum.rank(), g).unwrap();
        BlockContext::new(BlockSpec::regular(datum, g_set)).unwrap()
    };
    let mut ok = true;

    let reference = block("A2", "s1");
    ok &= reference.finitistic_dimension().unwrap() == 2;
    let w0 = reference
        .group()
        .longest_element(&ParabolicSubset::full(2));
    ok &= reference.proj_dim_tilting(w0).unwrap() == 1;

    for name in &[
        "A1", "A1xA1", "A1xA1xA1", "A2", "A1xA2", "A3", "B2", "A1xB2", "B3", "C3", "G2", "A1xG2",
        "D3",
    ] {
        ok &= block(name, "all").finitistic_dimension().unwrap() == 0;
    }

    for name in SMALL_TYPES {
        let datum = CoxeterDatum::parse(name).unwrap();
        for g_set in ParabolicSubset::all_subsets(datum.rank()) {
            let b = BlockContext::new(BlockSpec::regular(datum.clone(), g_set)).unwrap();
            let fd = b.finitistic_dimension().unwrap();
            let max_inj = b
                .longest_reps()
                .iter()
                .map(|&w| b.proj_dim_injective(w).unwrap())
                .max()
                .unwrap();
            ok &= max_inj == fd;
        }
    }
    report(6, "homological dimensions", ok);
}

#[test]
fn acceptance_7_essential_orders() {
    let mut ok = true;
    let types = ["A1", "A2", "A3", "B2", "B3"];
    let mut datasets = Vec::new();
    for name in types {
        let g = group(name);
        let data = regular_block_data(&g);
        ok &= data.check_idempotence().unwrap();
        ok &= data.check_reciprocity().unwrap();
        ok &= data.essential_order().unwrap() == bruhat_order(&g).reversed();

        let mut no_base = data.clone();
        no_base.base_order = None;
        ok &= no_base.essential_order().unwrap() == data.essential_order().unwrap();

        let essential = data.essential_order().unwrap();
        let base = data.base_order_relation().unwrap().unwrap();
        for i in 0..data.size() {
            for j in 0..data.size() {
                if essential.leq(i, j) {
                    ok &= base.leq(i, j);
                }
            }
        }
        for g_set in ParabolicSubset::all_subsets(g.rank()) {
            ok &= check_bruhat_conformance(&g, &g_set).unwrap();
        }
        datasets.push(data);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x0ddba11);
    for _ in 0..100 {
        let reference = &datasets[rng.gen_range(0..datasets.len())];
        let mut data = reference.clone();
        let n = data.size();
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        data.proj_delta.as_mut().unwrap()[i][j] += rng.gen_range(1..=3u64);
        ok &= !data.check_reciprocity().unwrap();
    }
    report(7, "essential orders", ok);
}

#[test]
fn acceptance_8_serialization() {
    let mut ok = true;
    let mut total = 0usize;
    for (_, subdir, _) in FIGURE_TYPES {
        let dir = common::golden_dir().join(subdir);
        let mut entries: Vec<_> = fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|e| e == "json"))
            .collect();
        entries.sort();
        for path in entries {
            total += 1;
            let text = fs::read_to_string(&path).unwrap();
            let poset = WeightedPoset::from_json(text.trim()).unwrap();
            let round = WeightedPoset::from_json(&poset.to_json()).unwrap();
            ok &= round == poset;
            ok &= common::check_poset_dot(&poset).is_ok();
        }
    }
    ok &= total == 176;
    report(8, "serialization", ok);
}
