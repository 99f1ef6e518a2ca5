//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails.

mod common;

use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{gl_order, sl_order, to_sets, Oracle};
use grassmann::involutions::{
    generated_group_order, verify_adjacency_transvection, verify_lemma_3_1, verify_prop_3_1, verify_swap_example,
};
use grassmann::maps::{
    automorphism_group_order, collineation_and_duality_subgroup_order, collineation_generators, grassmann_graph,
    preserves_distance, random_group_elements, DistanceTable, FramePlanes, GrassmannianMap, Mode,
};
use grassmann::rset::{is_rset, verify_theorem_2_1, verify_theorem_2_3};
use grassmann::{Budget, Field, GrassmannianIndex, Report, Space};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SWEEPS: [(usize, usize, u32); 4] = [(4, 2, 2), (4, 2, 3), (5, 2, 2), (5, 3, 2)];

fn space(p: u32, n: usize) -> Space {
    Space::new(Field::new(p, 1).unwrap(), n)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn passed(r: &Report) -> Result<(), String> {
    ensure(r.passed, format!("{} failed: {:?}", r.theorem, r.counterexamples.first()))
}

fn recognizer_matches_oracle() -> Outcome {
    let b = Budget::default();
    let s3 = space(2, 3);
    let lines = common::planes(&s3, 1);
    let o3 = Oracle::new(2, 3);
    let mut positives = 0;
    for mask in 0u32..1 << lines.len() {
        let members: Vec<_> = (0..lines.len()).filter(|i| mask >> i & 1 == 1).map(|i| lines[i].clone()).collect();
        let got = is_rset(&s3, &members);
        ensure(got == o3.is_rset(&to_sets(&o3, &members)), format!("disagreement on line subset {mask:#b}"))?;
        positives += got as usize;
    }
    let s4 = space(2, 4);
    let planes = GrassmannianIndex::new(&s4, 2, &b).unwrap();
    let o4 = Oracle::new(2, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut positives4 = 0;
    for t in 0..10_000 {
        let size = rng.gen_range(1..=5);
        let members: Vec<_> = sample(&mut rng, planes.len(), size).into_iter().map(|i| planes.get(i).clone()).collect();
        let got = is_rset(&s4, &members);
        ensure(got == o4.is_rset(&to_sets(&o4, &members)), format!("disagreement on sample {t}"))?;
        positives4 += got as usize;
    }
    Ok(format!("128 line subsets ({positives} R-sets), 10000 plane samples ({positives4} R-sets)"))
}

fn sweep_reports(verify: fn(&Space, usize, &Budget) -> grassmann::Result<Report>) -> Result<Vec<Report>, String> {
    SWEEPS
        .iter()
        .map(|&(n, k, p)| verify(&space(p, n), k, &Budget::default()).map_err(|e| e.to_string()))
        .collect()
}

fn degree_counts(reports: &[Report]) -> String {
    reports
        .iter()
        .map(|r| {
            let counts: Vec<String> = r.counts_by_degree.iter().map(|(d, c)| format!("{d}:{c}")).collect();
            format!("({},{},{}) {{{}}}", r.params.n, r.params.k, r.params.p, counts.join(" "))
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn theorem_2_1_sweep() -> Outcome {
    let reports = sweep_reports(verify_theorem_2_1)?;
    for r in &reports {
        let bad: Vec<_> = r.counterexamples.iter().filter(|c| !c.kind.starts_with("n_count") && c.kind != "exact_iff_n_count").collect();
        ensure(bad.is_empty(), format!("({},{},{}): {:?}", r.params.n, r.params.k, r.params.p, bad.first()))?;
        ensure(r.counts_by_degree.keys().all(|d| d.as_str() <= "2"), "degree above two")?;
    }
    Ok(degree_counts(&reports))
}

fn theorem_2_3_sweep() -> Outcome {
    let reports = sweep_reports(verify_theorem_2_3)?;
    for r in &reports {
        passed(r)?;
        ensure(r.counts_by_degree.keys().all(|d| d == "0" || d == "1"), "degree above one")?;
    }
    Ok(degree_counts(&reports))
}

fn n_count_well_defined() -> Outcome {
    let reports = sweep_reports(verify_theorem_2_1)?;
    let mut profiled = 0;
    for r in &reports {
        let bad: Vec<_> =
            r.counterexamples.iter().filter(|c| c.kind == "n_count_not_well_defined" || c.kind == "exact_iff_n_count").collect();
        ensure(bad.is_empty(), format!("{:?}", bad.first()))?;
        profiled += r.details["minimal_supersets_profiled"].as_u64().unwrap_or(0);
    }
    ensure(profiled > 0, "no minimal supersets were profiled")?;
    Ok(format!("{profiled} minimal exact supersets profiled, n(R') constant on each R'"))
}

fn graph_automorphisms() -> Outcome {
    let b = Budget::default();
    let s4 = space(2, 4);
    let (_, g) = grassmann_graph(&s4, 2, &b).map_err(|e| e.to_string())?;
    let aut = automorphism_group_order(&g, &b).map_err(|e| e.to_string())?;
    let closure = collineation_and_duality_subgroup_order(&s4, 2, &b).map_err(|e| e.to_string())?;
    let (_, k7) = grassmann_graph(&space(2, 3), 1, &b).map_err(|e| e.to_string())?;
    let complete = automorphism_group_order(&k7, &b).map_err(|e| e.to_string())?;
    ensure(aut == 40320 && closure == 40320 && complete == 5040, format!("aut {aut}, closure {closure}, complete {complete}"))?;
    Ok(format!("Aut G_2(F_2^4) = {aut} = closure {closure}; Aut G_1(F_2^3) = {complete}"))
}

fn regularity_and_distance() -> Outcome {
    let b = Budget::default();
    let mut notes = Vec::new();
    for (p, mode) in [(2, Mode::Exhaustive), (3, Mode::Exhaustive)] {
        let s = space(p, 4);
        let g2 = GrassmannianIndex::new(&s, 2, &b).unwrap();
        let d = DistanceTable::new(&s, &g2);
        let gens = collineation_generators(&s, &g2).map_err(|e| e.to_string())?;
        let frames = FramePlanes::new(&s, &g2, &g2, mode, &b).map_err(|e| e.to_string())?;
        for (t, m) in random_group_elements(&gens, 100, 24, 60 + p as u64).iter().enumerate() {
            ensure(preserves_distance(m, &d, &d), format!("q={p}: element {t} changes a distance"))?;
            ensure(frames.is_regular(&s, m, &g2, &g2).unwrap(), format!("q={p}: element {t} is not regular"))?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(70 + p as u64);
        for t in 0..100 {
            let pick = sample(&mut rng, g2.len(), 2);
            let swap = GrassmannianMap::transposition(&g2, pick.index(0), pick.index(1));
            ensure(!preserves_distance(&swap, &d, &d), format!("q={p}: transposition {t} preserves distances"))?;
        }
        notes.push(format!("q={p}: 100 group elements regular over {} frames ({}) and isometric, 100 transpositions not", frames.frame_count(), mode.name()));
    }
    Ok(notes.join("; "))
}

fn commuting_iff_rset() -> Outcome {
    let b = Budget::default();
    let ex = verify_prop_3_1(&space(3, 3), 1, Mode::Exhaustive, &b).map_err(|e| e.to_string())?;
    passed(&ex)?;
    let sa = verify_prop_3_1(&space(3, 4), 2, Mode::Sampled { samples: 10_000, seed: 7 }, &b).map_err(|e| e.to_string())?;
    passed(&sa)?;
    Ok(format!(
        "(3,1,3) exhaustive: {} families of size <= 2 that are R-sets, {} larger cliques; (4,2,3): {} of 10000 samples R-sets",
        ex.details["rset_families_of_size_at_most_two"], ex.details["cliques_of_size_at_least_three"], sa.details["rset_samples"]
    ))
}

fn commuting_iff_preserving() -> Outcome {
    let b = Budget::default();
    let mut notes = Vec::new();
    for n in [2, 3] {
        let r = verify_lemma_3_1(&space(3, n), 1, &b).map_err(|e| e.to_string())?;
        passed(&r)?;
        notes.push(format!("n={n}: {} involutions x {} matrices", r.details["involutions"], r.details["invertible_matrices"]));
    }
    Ok(notes.join("; "))
}

fn adjacency_iff_transvection() -> Outcome {
    let b = Budget::default();
    let ex = verify_adjacency_transvection(&space(3, 3), 1, Mode::Exhaustive, &b).map_err(|e| e.to_string())?;
    passed(&ex)?;
    let sa = verify_adjacency_transvection(&space(3, 4), 2, Mode::Sampled { samples: 10_000, seed: 9 }, &b)
        .map_err(|e| e.to_string())?;
    passed(&sa)?;
    Ok(format!(
        "(3,1,3): {} pairs, {} adjacent; (4,2,3): 10000 samples, {} adjacent",
        ex.details["checked"], ex.details["adjacent"], sa.details["adjacent"]
    ))
}

fn involution_generation() -> Outcome {
    let b = Budget::default();
    let cases = [(3, 1, sl_order(3, 3)), (3, 2, 2 * sl_order(3, 3)), (2, 1, gl_order(2, 3))];
    let mut notes = Vec::new();
    for (n, k, expected) in cases {
        let got = generated_group_order(&space(3, n), k, &b).map_err(|e| e.to_string())? as u64;
        ensure(got == expected, format!("({k},{}) over GF(3): {got} != {expected}", n - k))?;
        notes.push(format!("({k},{}): {got}", n - k));
    }
    Ok(notes.join(", "))
}

fn swap_example() -> Outcome {
    let r = verify_swap_example(&space(3, 4), 2, &Budget::default()).map_err(|e| e.to_string())?;
    passed(&r)?;
    Ok(format!("regular over {} frames; adjacency witness {}", r.details["frames"], r.details["adjacency_witness"]))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("R-set recognizer matches the brute-force oracle", recognizer_matches_oracle),
        ("degree at most two above the threshold, two exactly on the extremal classes", theorem_2_1_sweep),
        ("exact above s, degree at most one at s, one exactly on the three-class shapes", theorem_2_3_sweep),
        ("n(R') is the same for all minimal exact supersets", n_count_well_defined),
        ("Grassmann graph automorphisms equal the collineation and duality closure", graph_automorphisms),
        ("group elements are regular isometries, transpositions are not", regularity_and_distance),
        ("commuting involutions correspond to R-sets of pairs", commuting_iff_rset),
        ("commuting with an involution means preserving its eigenspaces", commuting_iff_preserving),
        ("adjacent involutions have transvection products", adjacency_iff_transvection),
        ("involutions generate the expected groups", involution_generation),
        ("a partial swap is regular but breaks adjacency", swap_example),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS ({secs:.1}s) {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL ({secs:.1}s) {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
