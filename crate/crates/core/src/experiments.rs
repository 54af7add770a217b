//! The reproduction suite: thirteen numbered checks over every module, shared
//! by the command-line `verify-paper` and the acceptance tests.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    asymptotic_excess, barnette_larman_clm, kalai_kleitman_clm, known_hb, known_hb_table, polytope_bounds,
    spindle_excess, strong_dstep, DStep,
};
use crate::clm::{
    bl_decompose, complete_clm, example_hnp5, extend_nonpure, injective_clm, kk_split, legal_check, legal_double,
    max_clm_search, multicomplex_to_complex, LayeredMulticomplex, LegalSequence, NonpureLayeredFamily,
};
use crate::complex::{Face, Facet, Multiset, PureComplex, PureMulticomplex};
use crate::constructions::{
    barycentric_subdivision, complete_complex, corridor_2complex, grid_graph, hamiltonian_decomposition, nabla,
    product_induced_path, PathStrategy,
};
use crate::decomposability::{
    dk_obstruction_witness, is_k_decomposable, is_weakly_k_decomposable, provan_billera_check, verify_certificate,
};
use crate::diameter::{
    binomial, corridor_upper_bound, dual_diameter, hirsch_excess, longest_induced_path_johnson, SearchMode,
};
use crate::error::Result;
use crate::nonrevisiting::sweep_all_pairs;

/// `Small` skips the slowest instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Small,
    #[default]
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    /// What failed, or a short summary of what was measured.
    pub detail: String,
    pub elapsed_ms: u128,
}

impl CheckResult {
    /// One line: `[PASS] 01 corridor (12 ms): detail`.
    pub fn line(&self) -> String {
        format!(
            "[{}] {:02} {} ({} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.detail
        )
    }
}

pub const CHECKS: [(u8, &str); 13] = [
    (1, "corridor"),
    (2, "hamiltonian-decomposition"),
    (3, "join-product"),
    (4, "clm-extremal"),
    (5, "clm-search"),
    (6, "kk-bl-invariants"),
    (7, "substitution"),
    (8, "nonpure-family"),
    (9, "legal-sequences"),
    (10, "non-revisiting"),
    (11, "decomposability"),
    (12, "bounds-table"),
    (13, "johnson-induced-paths"),
];

/// Collects failures; the first few are reported.
#[derive(Default)]
struct Log {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Log {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn within(&mut self, label: &str, elapsed: Duration, limit: Duration) {
        self.notes.push(format!("{label} {:.3}s", elapsed.as_secs_f64()));
        self.check(elapsed < limit, || {
            format!("{label} took {:.1}s, limit {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64())
        });
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn result(self, id: u8, elapsed: Duration) -> CheckResult {
        let name = CHECKS.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1).to_string();
        let passed = self.failures.is_empty();
        let detail = if passed {
            self.notes.join("; ")
        } else {
            let mut shown: Vec<String> = self.failures.iter().take(3).cloned().collect();
            if self.failures.len() > 3 {
                shown.push(format!("and {} more", self.failures.len() - 3));
            }
            shown.join("; ")
        };
        CheckResult { id, name, passed, detail, elapsed_ms: elapsed.as_millis() }
    }
}

/// Runs one check. Errors inside a check count as failures.
pub fn run_check(id: u8, scale: Scale, seed: u64) -> CheckResult {
    let start = Instant::now();
    let mut log = Log::default();
    let outcome = match id {
        1 => corridor(&mut log, scale),
        2 => hamiltonian(&mut log),
        3 => join_product(&mut log, seed),
        4 => clm_extremal(&mut log),
        5 => clm_search(&mut log, scale),
        6 => kk_bl(&mut log, seed),
        7 => substitution(&mut log),
        8 => nonpure(&mut log),
        9 => legal(&mut log),
        10 => non_revisiting(&mut log, scale),
        11 => decomposability(&mut log),
        12 => bounds_table(&mut log),
        13 => johnson(&mut log, scale),
        _ => {
            log.failures.push(format!("no check numbered {id}"));
            Ok(())
        }
    };
    if let Err(e) = outcome {
        log.failures.push(format!("error: {e}"));
    }
    log.result(id, start.elapsed())
}

pub fn run_all(scale: Scale, seed: u64) -> Vec<CheckResult> {
    CHECKS.iter().map(|&(id, _)| run_check(id, scale, seed)).collect()
}

fn corridor(log: &mut Log, scale: Scale) -> Result<()> {
    let t = Instant::now();
    let c = corridor_2complex(13)?;
    let diam = dual_diameter(&c)?.diameter;
    log.within("n=13", t.elapsed(), Duration::from_secs(1));
    let k = 4;
    log.check(c.is_corridor(), || "corridor(13) is not a corridor".into());
    log.check(c.len() == 35, || format!("corridor(13) has {} facets", c.len()));
    log.check(diam == 34 && diam == 2 * k * k + k - 2, || format!("corridor(13) diameter {diam}"));
    let top = if scale == Scale::Small { 25 } else { 40 };
    for n in 7..=top {
        let c = corridor_2complex(n)?;
        let diam = dual_diameter(&c)?.diameter as u64;
        let lower = (2 * (n as u64 - 3).pow(2)).div_ceil(9);
        let upper = corridor_upper_bound(n, 3)?;
        log.check(c.is_corridor() && c.is_pseudomanifold(), || format!("n={n}: not a pseudomanifold corridor"));
        log.check(diam >= lower, || format!("n={n}: diameter {diam} < {lower}"));
        log.check(diam <= upper, || format!("n={n}: diameter {diam} > bound {upper}"));
    }
    log.note(format!("n in 7..={top} checked"));
    Ok(())
}

fn hamiltonian(log: &mut Log) -> Result<()> {
    let t = Instant::now();
    for k in 1..=8 {
        let h = hamiltonian_decomposition(k)?;
        let m = 2 * k + 1;
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for (c, cycle) in h.cycles.iter().enumerate() {
            let mut verts = cycle.clone();
            verts.sort_unstable();
            log.check(verts == (0..m).collect::<Vec<_>>(), || format!("k={k}: cycle {c} is not Hamiltonian"));
            for (a, b) in h.cycle_edges(c) {
                seen.insert((a.min(b), a.max(b)));
                count += 1;
            }
        }
        log.check(h.cycles.len() == k, || format!("k={k}: {} cycles", h.cycles.len()));
        log.check(count == m * k && seen.len() == m * k, || format!("k={k}: edges not partitioned"));
    }
    log.within("k<=8", t.elapsed(), Duration::from_secs(1));
    Ok(())
}

fn random_complex(rng: &mut ChaCha8Rng, n: usize, d: usize) -> PureComplex {
    let all = complete_complex(n, d);
    loop {
        let picked: Vec<Facet> = all.facets().iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if !picked.is_empty() {
            return PureComplex::new(n, d, picked).expect("facets of the complete complex");
        }
    }
}

fn join_product(log: &mut Log, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..50 {
        let (n1, n2) = (rng.gen_range(2..=6), rng.gen_range(2..=6));
        let (d1, d2) = (rng.gen_range(1..n1), rng.gen_range(1..n2));
        let (c1, c2) = (random_complex(&mut rng, n1, d1), random_complex(&mut rng, n2, d2));
        let join = c1.join(&c2);
        let (g1, g2, gj) = (c1.dual_graph(), c2.dual_graph(), join.dual_graph());
        let product = g1.cartesian_product(&g2);
        // The bijection (i, j) -> facet i ∪ shifted facet j.
        let m = c2.len();
        let map: Vec<usize> = (0..c1.len() * m)
            .map(|p| join.facet_index(&c1.facets()[p / m].plus(&c2.facets()[p % m].shifted(n1))).unwrap())
            .collect();
        let mapped: BTreeSet<(usize, usize)> =
            product.edges().map(|(a, b)| (map[a].min(map[b]), map[a].max(map[b]))).collect();
        let direct: BTreeSet<(usize, usize)> = gj.edges().collect();
        log.check(join.len() == c1.len() * m && mapped == direct, || format!("trial {trial}: join graph differs"));
    }
    for l1 in 2..=8 {
        for l2 in 2..=8 {
            for strategy in [PathStrategy::Vertical, PathStrategy::Zigzag] {
                let p = product_induced_path(l1, l2, strategy)?;
                let nodes: Vec<usize> = p.iter().map(|&(i, j)| i * (l2 + 1) + j).collect();
                log.check(grid_graph(l1, l2).is_induced_path(&nodes), || format!("{strategy:?} {l1}x{l2} not induced"));
                if strategy == PathStrategy::Vertical {
                    let want = (l1 / 2 + 1) * l2 + l1;
                    log.check(p.len() - 1 == want, || format!("{l1}x{l2}: length {} != {want}", p.len() - 1));
                }
            }
        }
    }
    let z = product_induced_path(12, 12, PathStrategy::Zigzag)?;
    let ratio = z.len() as f64 / 169.0;
    log.check(ratio >= 0.6, || format!("zigzag ratio {ratio:.3} < 0.6"));
    log.note(format!("50 joins; zigzag 12x12 uses {}/169 = {ratio:.3}", z.len()));
    Ok(())
}

fn clm_extremal(log: &mut Log) -> Result<()> {
    let t = Instant::now();
    for n in 2..=6 {
        for d in 2..=6 {
            for (kind, m) in [("complete", complete_clm(n, d)?), ("injective", injective_clm(n, d)?)] {
                log.check(m.validate(), || format!("{kind}({n},{d}) invalid"));
                log.check(m.length() == d * (n - 1), || format!("{kind}({n},{d}) length {}", m.length()));
            }
        }
    }
    log.within("2<=n,d<=6", t.elapsed(), Duration::from_secs(10));
    Ok(())
}

fn clm_search(log: &mut Log, scale: Scale) -> Result<()> {
    let mut cases = vec![(2, 1, 1), (2, 2, 2), (2, 3, 3), (2, 4, 4), (3, 2, 4), (4, 2, 6)];
    if scale == Scale::Full {
        cases.push((3, 3, 6));
    }
    for (n, d, want) in cases {
        let t = Instant::now();
        let r = max_clm_search(n, d, None)?;
        log.check(r.length == want, || format!("H_clm({n},{d}) = {} != {want}", r.length));
        let w = r.witness_clm()?;
        log.check(w.validate() && w.length() == want, || format!("({n},{d}) witness invalid"));
        log.within(&format!("({n},{d})={} in {} states", r.length, r.states), t.elapsed(), Duration::from_secs(600));
    }
    Ok(())
}

/// A random valid c.l.m. built layer by layer: a facet may join a layer
/// unless one of its faces was met before and missed by the previous layer.
fn random_clm(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Result<LayeredMulticomplex> {
    let all = PureMulticomplex::complete(n, d);
    let mut used: BTreeSet<Multiset> = BTreeSet::new();
    let mut closed: BTreeSet<Multiset> = BTreeSet::new();
    let mut last: Vec<Multiset> = Vec::new();
    let mut layers: Vec<Vec<Multiset>> = Vec::new();
    loop {
        let allowed: Vec<&Multiset> = all
            .facets()
            .iter()
            .filter(|f| !used.contains(*f) && f.subfaces().iter().all(|s| s.cardinality() == 0 || !closed.contains(s)))
            .collect();
        if allowed.is_empty() || (!layers.is_empty() && rng.gen_bool(0.15)) {
            break;
        }
        let mut layer: Vec<Multiset> = allowed.iter().filter(|_| rng.gen_bool(0.4)).map(|f| (*f).clone()).collect();
        if layer.is_empty() {
            layer.push(allowed[rng.gen_range(0..allowed.len())].clone());
        }
        let before: BTreeSet<Multiset> = used.iter().chain(&last).flat_map(|f| f.subfaces()).collect();
        let now: BTreeSet<Multiset> = layer.iter().flat_map(|f| f.subfaces()).collect();
        closed.extend(before.difference(&now).cloned());
        used.extend(layer.iter().cloned());
        last = layer.clone();
        layers.push(layer);
    }
    LayeredMulticomplex::from_layers(n, d, layers)
}

fn kk_bl_holds(log: &mut Log, m: &LayeredMulticomplex, label: &str) {
    let (n, d) = (m.base().n(), m.base().d());
    let len = m.length();
    log.check(m.validate(), || format!("{label}: invalid"));
    log.check(len as f64 <= kalai_kleitman_clm(n as u64, d as u64) + 1e-9, || {
        format!("{label}: length {len} above KK")
    });
    log.check(len as u64 <= barnette_larman_clm(n as u64, d as u64), || format!("{label}: length {len} above BL"));
    let s = kk_split(m);
    log.check(s.prefix + s.middle + s.suffix == len + 1, || format!("{label}: KK split does not partition"));
    if s.middle > 0 {
        let sup = m.layer_supports();
        let ok = s.witness.is_some_and(|w| sup[s.prefix..s.prefix + s.middle].iter().all(|l| l.contains(&w)));
        log.check(ok, || format!("{label}: no element common to the middle layers"));
    }
    let pieces = bl_decompose(m);
    let total: usize = pieces.iter().map(|p| p.elements).sum();
    log.check(total < 2 * n, || format!("{label}: BL pieces use {total} elements"));
    let joined: usize = pieces.iter().map(|p| p.length()).sum::<usize>() + pieces.len() - 1;
    log.check(joined == len, || format!("{label}: BL lengths do not add up"));
}

fn kk_bl(log: &mut Log, seed: u64) -> Result<()> {
    let mut count = 0;
    for n in 2..=5 {
        for d in 1..=5 {
            kk_bl_holds(log, &complete_clm(n, d)?, &format!("complete({n},{d})"));
            kk_bl_holds(log, &injective_clm(n, d)?, &format!("injective({n},{d})"));
            count += 2;
        }
    }
    for (n, d) in [(2, 3), (3, 2), (4, 2)] {
        kk_bl_holds(log, &max_clm_search(n, d, None)?.witness_clm()?, &format!("witness({n},{d})"));
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b6b);
    for i in 0..200 {
        let (n, d) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let m = random_clm(&mut rng, n, d)?;
        kk_bl_holds(log, &m, &format!("random #{i} ({n},{d})"));
        count += 1;
    }
    log.note(format!("{count} instances"));
    Ok(())
}

fn substitution(log: &mut Log) -> Result<()> {
    for n in 1..=5 {
        for d in 1..=5 {
            for (kind, m) in [("complete", complete_clm(n, d)?), ("injective", injective_clm(n, d)?)] {
                let c = multicomplex_to_complex(&m)?;
                log.check(c.validate() == m.validate(), || format!("{kind}({n},{d}): validity changed"));
                log.check(c.length() == m.length(), || format!("{kind}({n},{d}): length changed"));
                log.check(c.base().d() == d && c.base().len() == m.base().len(), || {
                    format!("{kind}({n},{d}): shape changed")
                });
            }
        }
    }
    Ok(())
}

fn nonpure(log: &mut Log) -> Result<()> {
    let f = example_hnp5();
    log.check(f.len() == 11, || format!("example has {} layers", f.len()));
    log.check(f.validate()?, || "example fails the interval condition".into());
    let mut g = NonpureLayeredFamily::from_lists(1, &[&[&[1]], &[&[]]])?;
    for step in 1..=5 {
        let next = extend_nonpure(&g)?;
        log.check(next.len() == g.len() + 2, || format!("step {step}: length {} -> {}", g.len(), next.len()));
        log.check(next.validate()?, || format!("step {step}: invalid"));
        g = next;
    }
    let twice = extend_nonpure(&extend_nonpure(&f)?)?;
    log.check(twice.len() == 15 && twice.validate()?, || "example extended twice".into());
    log.note(format!("seed grows to {} layers on {} elements", g.len(), g.n));
    Ok(())
}

fn legal(log: &mut Log) -> Result<()> {
    let positives: Vec<(usize, Vec<u32>)> = vec![
        (0, vec![0]),
        (1, vec![0]),
        (1, vec![1, 0]),
        (1, vec![0, 1]),
        (2, vec![3, 3]),
        (3, vec![7, 7]),
        (4, vec![15, 15]),
    ];
    for (n, sets) in positives {
        let s = LegalSequence::new(n, sets)?;
        log.check(legal_check(&s)?, || format!("{s:?} rejected"));
    }
    let negatives: Vec<(usize, Vec<u32>)> =
        vec![(0, vec![0, 0]), (1, vec![1, 1]), (1, vec![1, 0, 1]), (2, vec![1, 2, 1]), (3, vec![3, 4, 6])];
    for (n, sets) in negatives {
        let s = LegalSequence::new(n, sets)?;
        log.check(!legal_check(&s)?, || format!("{s:?} accepted"));
    }
    let seeds = [LegalSequence::new(0, vec![0])?, LegalSequence::new(1, vec![1, 0])?];
    for seed in &seeds {
        for i in 1..=3 {
            let out = legal_double(seed, i)?;
            log.check(out.len() == (i + 1) * seed.len(), || format!("double({seed:?}, {i}) length {}", out.len()));
            if out.n <= crate::caps::caps().legal_elements && out.len() <= crate::caps::caps().legal_len {
                log.check(legal_check(&out)?, || format!("{out:?} rejected"));
            }
        }
    }
    Ok(())
}

fn non_revisiting(log: &mut Log, scale: Scale) -> Result<()> {
    let dims: &[(usize, u64)] = if scale == Scale::Small { &[(3, 60)] } else { &[(3, 60), (4, 1800)] };
    for &(d, limit) in dims {
        let t = Instant::now();
        let c = barycentric_subdivision(&complete_complex(d + 1, d)).complex;
        let r = sweep_all_pairs(&c)?;
        log.check(r.passed(), || format!("d={d}: {r:?}"));
        log.check(r.pairs == c.len() * c.len(), || format!("d={d}: {} pairs", r.pairs));
        log.within(
            &format!("{} facets, {} pairs, longest {} <= {}", c.len(), r.pairs, r.max_length, r.bound),
            t.elapsed(),
            Duration::from_secs(limit),
        );
    }
    Ok(())
}

fn decomposability(log: &mut Log) -> Result<()> {
    let t = Instant::now();
    let r = is_weakly_k_decomposable(&nabla(2, 2)?, 0, None)?;
    log.check(!r.decomposable, || "nabla(2,2) reported weakly vertex-decomposable".into());
    log.within(&format!("nabla(2,2) in {} states", r.states), t.elapsed(), Duration::from_secs(600));
    let w = dk_obstruction_witness(2, 2)?;
    log.check(w.confirmed(), || "obstruction not confirmed".into());
    log.note(format!("{} cases, {} ordered triples", w.cases.len(), w.sequences_checked));

    let hexagon = PureComplex::from_lists(6, 2, (0..6).map(|i| vec![i, (i + 1) % 6]).collect())?;
    let mut fixtures =
        vec![hexagon, nabla(1, 1)?, nabla(1, 2)?, barycentric_subdivision(&complete_complex(3, 2)).complex];
    for n in 3..=6 {
        for d in 1..n {
            fixtures.push(complete_complex(n, d));
        }
    }
    let mut certified = 0;
    for c in &fixtures {
        for k in 0..c.d() {
            for weak in [false, true] {
                let dec = if weak { is_weakly_k_decomposable(c, k, None)? } else { is_k_decomposable(c, k, None)? };
                if let Some(tree) = &dec.certificate {
                    certified += 1;
                    log.check(verify_certificate(tree, k, weak).is_ok(), || {
                        format!("certificate replay failed (k={k})")
                    });
                }
            }
            let pb = provan_billera_check(c, k, None)?;
            log.check(pb.holds, || format!("Provan-Billera fails: {pb:?}"));
        }
    }
    log.note(format!("{certified} certificates replayed"));
    Ok(())
}

fn bounds_table(log: &mut Log) -> Result<()> {
    log.check(hirsch_excess(8, 4, 5)? == Ratio::new(1, 4), || "hirsch_excess(8,4,5)".into());
    log.check(spindle_excess(25, 5, 6)? == Ratio::new(1, 20), || "spindle_excess(25,5,6)".into());
    log.check(asymptotic_excess(Ratio::new(1, 20), 2)? == Ratio::new(1, 40), || "asymptotic_excess".into());
    let s = strong_dstep(25, 5, 6)?;
    log.check(s == DStep { dim: 20, facets: 40, diameter_lower: 21, violates_hirsch: true }, || {
        format!("strong_dstep(25,5,6) = {s:?}")
    });
    log.check(strong_dstep(48, 5, 6)?.dim == 43, || "strong_dstep(48,5,6)".into());
    let expected = [
        ((8, 4), 4),
        ((9, 4), 5),
        ((10, 5), 5),
        ((10, 4), 5),
        ((11, 5), 6),
        ((11, 4), 6),
        ((12, 6), 6),
        ((12, 4), 7),
        ((12, 5), 7),
    ];
    log.check(known_hb_table().len() == 9, || "table size".into());
    for ((n, d), v) in expected {
        log.check(known_hb(n, d) == Some(v), || format!("known_hb({n},{d})"));
    }
    for n in 4..=30u64 {
        log.check(known_hb(n, 2) == Some(n / 2), || format!("d=2, n={n}"));
        log.check(known_hb(n, 3) == Some(2 * n / 3 - 1), || format!("d=3, n={n}"));
    }
    for d in 2..=8u64 {
        for k in 1..d {
            log.check(known_hb(d + k, d) == known_hb(2 * k, k), || format!("reduction at ({},{d})", d + k));
        }
    }
    let lower = polytope_bounds(12, 4).into_iter().find(|e| e.name == "bounded_lower").and_then(|e| e.exact);
    log.check(lower == Some(Ratio::from_integer(7)) && known_hb(12, 4) == Some(7), || "lower bound at (12,4)".into());
    Ok(())
}

/// Longest induced path in `J(n, d)` by trying every vertex subset, with
/// adjacency read off bitmasks. Independent of the graph and search code.
pub fn johnson_oracle(n: usize, d: usize) -> usize {
    let nodes: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == d).collect();
    let m = nodes.len();
    assert!(m <= 20, "oracle is exponential");
    let adj: Vec<u32> = (0..m)
        .map(|i| (0..m).filter(|&j| (nodes[i] ^ nodes[j]).count_ones() == 2).fold(0, |a, j| a | 1 << j))
        .collect();
    let mut best = 1;
    for set in 1u32..(1 << m) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        let members: Vec<usize> = (0..m).filter(|&i| set >> i & 1 == 1).collect();
        let degrees: Vec<u32> = members.iter().map(|&i| (adj[i] & set).count_ones()).collect();
        if degrees.iter().any(|&g| g > 2) || degrees.iter().sum::<u32>() as usize != 2 * (size - 1) {
            continue;
        }
        // A forest with size−1 edges and degrees ≤ 2 is a path iff connected.
        let mut reached = 1u32 << members[0];
        loop {
            let grow = (0..m).filter(|&i| reached >> i & 1 == 1).fold(reached, |r, i| r | (adj[i] & set));
            if grow == reached {
                break;
            }
            reached = grow;
        }
        if reached == set {
            best = size;
        }
    }
    best - 1
}

/// All `(n, d)` with `1 ≤ d < n` and `C(n, d) ≤ limit`.
pub fn johnson_cases(limit: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 2..=limit as usize {
        for d in 1..n {
            if binomial(n as u64, d as u64) <= limit {
                out.push((n, d));
            }
        }
    }
    out
}

fn johnson(log: &mut Log, scale: Scale) -> Result<()> {
    let t = Instant::now();
    let limit = if scale == Scale::Small { 10 } else { 15 };
    let cases = johnson_cases(limit);
    for &(n, d) in &cases {
        let oracle = johnson_oracle(n, d);
        let exact = longest_induced_path_johnson(n, d, SearchMode::Exact, None)?;
        log.check(exact.optimal && exact.length() == oracle, || {
            format!("J({n},{d}): {} vs oracle {oracle}", exact.length())
        });
    }
    log.within(&format!("{} cases", cases.len()), t.elapsed(), Duration::from_secs(600));
    Ok(())
}
