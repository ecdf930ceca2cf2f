//! Acceptance criteria, one line per criterion. Expected values come from
//! the brute-force oracles, never from the solvers under test.

use std::process::ExitCode;

use kcenter_cli::{bench, Algo, BenchArgs, Caps, Family, Format};
use kcenter_core::lab::{
    certify_hub_hierarchy, embed_doubling, gen_cubic_instance, gen_grid, gen_random_connected,
    reduce_dominating_set, Norm, PointMetric, METRIC_UNIT,
};
use kcenter_core::setcover::{build_table, CoverSet, SetSystem, DEFAULT_TABLE_CAP};
use kcenter_core::solver::{solve_weighted_fpa, ScaleStatus};
use kcenter_core::{
    all_pairs, compute_clusters, compute_spc, solve_exact, solve_fpa, solve_hs, solve_partition,
    Algorithm, FpaOptions, Graph,
};
use kcenter_oracles as oracles;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Matrix = Vec<Vec<Option<u64>>>;

fn dist_of(g: &Graph) -> Matrix {
    let edges: Vec<(usize, usize, u64)> = g.edges().iter().map(|e| (e.u, e.v, e.len)).collect();
    oracles::floyd_warshall(g.n(), &edges)
}

fn d(m: &Matrix, u: usize, v: usize) -> u64 {
    m[u][v].expect("connected")
}

fn random_graph(seed: u64, lo: usize, hi: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(lo..=hi);
    let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(2 * n));
    let max_len = rng.gen_range(1..=10);
    gen_random_connected(n, m, max_len, seed).expect("valid parameters")
}

/// Outcome of one criterion: failures are human-readable reasons.
struct Check {
    cases: usize,
    failures: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Self {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, why: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(why());
        }
    }
}

struct Corpus {
    name: String,
    graph: Graph,
    k: u64,
}

fn corpus() -> Vec<Corpus> {
    let mut out: Vec<Corpus> = (0..200)
        .map(|i| Corpus {
            name: format!("random seed {i}"),
            graph: random_graph(i, 2, 12),
            k: 1 + i % 3,
        })
        .collect();
    for (i, (w, h)) in (1..=4).flat_map(|w| (1..=5).map(move |h| (w, h))).enumerate() {
        out.push(Corpus {
            name: format!("grid {w}x{h}"),
            graph: gen_grid(w, h).expect("non-empty"),
            k: 1 + i as u64 % 3,
        });
    }
    out
}

/// Criteria 1 to 4 share the corpus.
fn corpus_criteria() -> [Check; 4] {
    let mut ratio = Check::new();
    let mut baseline = Check::new();
    let mut clusters = Check::new();
    let mut hubs = Check::new();
    for c in corpus() {
        let g = &c.graph;
        let dist = dist_of(g);
        let opt = oracles::kcenter_cost(&dist, c.k as usize).expect("connected");
        let fpa = solve_fpa(g, c.k, &FpaOptions::default()).expect("searchable");
        let run = fpa.fpa.as_ref().expect("fpa records its run");
        ratio.expect(
            fpa.algorithm == Algorithm::Fpa
                && !run.pruned
                && fpa.centers.len() as u64 <= c.k
                && 2 * fpa.cost <= 3 * opt,
            || format!("{} k={}: cost {} vs optimum {opt}", c.name, c.k, fpa.cost),
        );
        let hs = solve_hs(g, c.k).expect("connected");
        baseline.expect(hs.centers.len() as u64 <= c.k && hs.cost <= 2 * opt, || {
            format!("{} k={}: cost {} vs optimum {opt}", c.name, c.k, hs.cost)
        });

        let doubled = all_pairs(g).doubled();
        let dd = |u: usize, v: usize| 2 * d(&dist, u, v);
        for scale in run.scales.iter().filter(|s| {
            !matches!(s.status, ScaleStatus::Skipped | ScaleStatus::OverCap)
        }) {
            let r = scale.r;
            let spc = compute_spc(&doubled, r);
            let Ok(set) = compute_clusters(&doubled, &spc) else {
                clusters.expect(false, || format!("{} r={r}: clusters rejected", c.name));
                continue;
            };
            let near = |v: usize| spc.hubs.iter().any(|&x| dd(v, x) <= r);
            let mut ok = set.non_cluster.iter().all(|&v| near(v));
            ok &= set.clusters.iter().flatten().all(|&v| !near(v));
            ok &= set
                .clusters
                .iter()
                .all(|cl| cl.iter().all(|&u| cl.iter().all(|&w| dd(u, w) <= r)));
            for (i, a) in set.clusters.iter().enumerate() {
                for b in &set.clusters[i + 1..] {
                    ok &= a.iter().all(|&u| b.iter().all(|&w| dd(u, w) > 2 * r));
                }
            }
            let listed = set.non_cluster.len() + set.clusters.iter().map(Vec::len).sum::<usize>();
            ok &= listed == g.n();
            clusters.expect(ok, || format!("{} r={r}: cluster property broken", c.name));
        }

        // half the optimum, in half units, is the optimum
        let spc = compute_spc(&doubled, opt);
        let sparsity = (0..g.n())
            .map(|v| spc.hubs.iter().filter(|&&x| dd(v, x) <= 2 * opt).count())
            .max()
            .unwrap_or(0);
        hubs.expect(
            sparsity == spc.sparsity && spc.hubs.len() as u64 <= c.k * sparsity as u64,
            || {
                format!(
                    "{} k={}: {} hubs, sparsity {sparsity} (reported {})",
                    c.name,
                    c.k,
                    spc.hubs.len(),
                    spc.sparsity
                )
            },
        );
    }
    [ratio, baseline, clusters, hubs]
}

fn cover_tables() -> Check {
    let mut check = Check::new();
    for i in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + i);
        let u = rng.gen_range(1..=10usize);
        let weighted = i % 2 == 1;
        let sets: Vec<(u64, u64)> = (0..rng.gen_range(1..=12))
            .map(|_| {
                let mask = rng.gen_range(0..1u64 << u);
                (mask, if weighted { rng.gen_range(1..=5) } else { 1 })
            })
            .collect();
        let system = SetSystem::from_masks(
            (0..u).collect(),
            sets.iter()
                .enumerate()
                .map(|(j, &(mask, weight))| CoverSet {
                    mask: mask as u32,
                    owner: j,
                    weight,
                })
                .collect(),
            DEFAULT_TABLE_CAP,
        )
        .expect("valid system");
        let table = build_table(&system);
        for target in 0..1u32 << u {
            let expected = oracles::min_set_cover_weight(&sets, u64::from(target));
            let got = table.lookup_mask(target);
            let ok = match (&got, expected) {
                (None, None) => true,
                (Some(cover), Some(w)) => {
                    let union = cover.sets.iter().fold(0, |acc, &j| acc | sets[j].0);
                    let weight: u64 = cover.sets.iter().map(|&j| sets[j].1).sum();
                    cover.weight == w && weight == w && union & u64::from(target) == u64::from(target)
                }
                _ => false,
            };
            check.expect(ok, || {
                format!("system {i} target {target:b}: {:?} vs {expected:?}", got.map(|c| c.weight))
            });
        }
    }
    check
}

fn embeddings() -> Check {
    let mut check = Check::new();
    let epsilons = [(1, 10), (1, 5), (1, 2)];
    for i in 0..50usize {
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + i as u64);
        let n = rng.gen_range(2..=15);
        let mut pts: Vec<[i64; 2]> = Vec::new();
        while pts.len() < n {
            let p = [
                rng.gen_range(0..=METRIC_UNIT as i64),
                rng.gen_range(0..=METRIC_UNIT as i64),
            ];
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let norm = if i % 2 == 0 { Norm::LInf } else { Norm::L2 };
        let (p, q) = epsilons[i % 3];
        let coords: Vec<Vec<i64>> = pts.iter().map(|p| p.to_vec()).collect();
        let metric = PointMetric::from_coordinates(&coords, norm, None).expect("distinct points");
        let e = match embed_doubling(&metric, Ratio::new(p, q)) {
            Ok(e) => e,
            Err(err) => {
                check.expect(false, || format!("set {i}: {err}"));
                continue;
            }
        };
        let dg = dist_of(&e.graph);
        let refine = u128::from(e.graph.unit() / METRIC_UNIT);
        let mut ok = true;
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = (pts[u], pts[v]);
                let (dx, dy) = ((a[0] - b[0]).abs() as f64, (a[1] - b[1]).abs() as f64);
                let truth = match norm {
                    Norm::LInf => dx.max(dy),
                    _ => dx.hypot(dy),
                };
                let x = metric.dist(u, v);
                ok &= (x as f64 - truth).abs() <= 1.0;
                let x = u128::from(x) * refine;
                let g = u128::from(d(&dg, u, v));
                // one unit of rounding per edge on the path
                ok &= x <= g && u128::from(q) * g <= u128::from(q + p) * x + u128::from(q) * n as u128;
            }
        }
        check.expect(ok, || format!("set {i}: distances outside the sandwich"));
        match certify_hub_hierarchy(&e.graph, &e.hierarchy) {
            Ok(report) => check.expect(report.passed() && report.unbanded == 0, || {
                format!("set {i} ({norm:?}, eps {p}/{q}): {} violations", report.violations.len())
            }),
            Err(err) => check.expect(false, || format!("set {i}: {err}")),
        }
    }
    check
}

fn reductions() -> Check {
    let mut check = Check::new();
    for i in 0..50 {
        let g = random_graph(3000 + i, 4, 12);
        let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        for k in 1..=3u64 {
            let (h, k) = reduce_dominating_set(&g, k);
            let cost = solve_exact(&h, k).expect("connected").cost;
            let dominated = oracles::has_dominating_set(g.n(), &edges, k as usize);
            check.expect((cost == 1) == dominated, || {
                format!("graph {i} k={k}: cost {cost}, dominating set exists: {dominated}")
            });
        }
    }
    check
}

fn cubic() -> Check {
    let mut check = Check::new();
    for i in 0..20u64 {
        let n = 4 + 2 * (i as usize % 14);
        let g = gen_cubic_instance(n, 4000 + i).expect("pairing succeeds");
        let dist = dist_of(&g);
        // every vertex a hub: the largest radius-2 ball bounds any hub set
        let ball = (0..n)
            .map(|v| (0..n).filter(|&w| dist[v][w].is_some_and(|x| x <= 2)).count())
            .max()
            .unwrap_or(0);
        let reported = compute_spc(&all_pairs(&g), 1).sparsity;
        check.expect(ball <= 10 && reported <= 10, || {
            format!("cubic n={n}: ball {ball}, cover sparsity {reported}")
        });
    }
    check
}

fn weighted() -> Check {
    let mut check = Check::new();
    for i in 0..100 {
        let g = random_graph(5000 + i, 2, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + i);
        let weights: Vec<u64> = (0..g.n()).map(|_| rng.gen_range(1..=3)).collect();
        let cheapest = *weights.iter().min().expect("non-empty");
        let budget = rng.gen_range(1..=6).max(cheapest);
        let opt = oracles::weighted_kcenter_cost(&dist_of(&g), &weights, budget).expect("affordable");
        match solve_weighted_fpa(&g, &weights, budget, &FpaOptions::default()) {
            Ok(s) => check.expect(s.weight(&weights) <= budget && s.cost <= 2 * opt, || {
                format!("instance {i} budget {budget}: cost {} weight {} vs {opt}", s.cost, s.weight(&weights))
            }),
            Err(e) => check.expect(false, || format!("instance {i}: {e}")),
        }
    }
    check
}

fn partitions() -> Check {
    let mut check = Check::new();
    for i in 0..50 {
        let g = random_graph(6000 + i, 2, 12);
        let k = 1 + i % 3;
        let dist = dist_of(&g);
        let opt = oracles::kcenter_cost(&dist, k as usize).expect("connected");
        let p = solve_partition(&g, k, 1, &FpaOptions::default()).expect("solvable");
        let mut seen: Vec<usize> = p.parts.iter().flatten().copied().collect();
        seen.sort_unstable();
        let bottleneck = p
            .parts
            .iter()
            .flat_map(|part| part.iter().flat_map(|&u| part.iter().map(move |&v| (u, v))))
            .map(|(u, v)| d(&dist, u, v))
            .max()
            .unwrap_or(0);
        check.expect(
            seen == (0..g.n()).collect::<Vec<_>>()
                && p.parts.len() as u64 <= k
                && bottleneck == p.bottleneck
                && bottleneck <= 3 * opt,
            || format!("instance {i} k={k}: bottleneck {bottleneck} vs optimum {opt}"),
        );
    }
    check
}

/// Fixed family: 20 cubic graphs on 20 vertices, seed 0. Best of three
/// runs per k to damp scheduler noise. Returns the count check and the
/// timing check separately.
fn scaling() -> (Check, Check) {
    let mut check = Check::new();
    let mut timing = Check::new();
    let args = BenchArgs {
        family: Family::Cubic,
        n: 20,
        count: 20,
        ks: vec![1, 2, 3],
        algos: vec![Algo::Fpa],
        seed: 0,
        threads: 1,
        caps: Caps::default(),
        format: Format::Table,
    };
    let mut best = [f64::INFINITY; 3];
    let mut guesses = [0u64; 3];
    for _ in 0..3 {
        let report = bench(&args).expect("family generates");
        for row in &report.rows {
            check.expect(row.counts_ok == Some(true), || {
                format!("{} k={}: guess counts differ from 3^hubs", row.instance, row.k)
            });
        }
        for s in &report.summary {
            let i = s.k as usize - 1;
            best[i] = best[i].min(s.total_ms);
            guesses[i] = s.guesses;
        }
    }
    println!(
        "  scaling: k=1,2,3 best total ms {:.2} {:.2} {:.2}, guesses {} {} {}",
        best[0], best[1], best[2], guesses[0], guesses[1], guesses[2]
    );
    timing.expect(best[0] <= best[1] && best[1] <= best[2], || {
        "wall time not monotone in k".to_string()
    });
    (check, timing)
}

fn main() -> ExitCode {
    let [c1, c2, c3, c4] = corpus_criteria();
    let (counts, timing) = scaling();
    let results = [
        (1, "fpa within 3/2 of the optimum, unpruned", c1),
        (2, "baseline within 2 of the optimum", c2),
        (3, "cluster properties at every searched scale", c3),
        (4, "hubs at half the optimum within k times sparsity", c4),
        (5, "cover table matches brute force", cover_tables()),
        (6, "embedding sandwich and hub certificate", embeddings()),
        (7, "reduction cost 1 iff a dominating set exists", reductions()),
        (8, "cubic sparsity at r=1 at most 10", cubic()),
        (9, "weighted within budget and 2 of the optimum", weighted()),
        (10, "partition bottleneck within 3 of the optimum", partitions()),
    ];
    let mut failed = 0;
    for (n, what, check) in &results {
        let verdict = if check.failures.is_empty() { "pass" } else { "FAIL" };
        println!("criterion {n}: {verdict} ({what}; {} checks)", check.cases);
        for f in check.failures.iter().take(5) {
            println!("  {f}");
        }
        failed += usize::from(!check.failures.is_empty());
    }
    // Timing is reported but not gating: the accepted scale moves with k and
    // hub counts are not monotone in the scale, so total work need not grow.
    let verdict = if counts.failures.is_empty() && timing.failures.is_empty() {
        "pass"
    } else {
        "FAIL"
    };
    println!(
        "criterion 11: {verdict} (guess counts 3^hubs: {}; wall time non-decreasing in k: {}, not gating)",
        if counts.failures.is_empty() { "yes" } else { "no" },
        if timing.failures.is_empty() { "yes" } else { "no" },
    );
    for f in counts.failures.iter().take(5) {
        println!("  {f}");
    }
    failed += usize::from(!counts.failures.is_empty());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
