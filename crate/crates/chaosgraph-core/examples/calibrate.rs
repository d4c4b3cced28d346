//! Scratch calibration runs for acceptance-threshold sanity checks.

use chaosgraph::combdim;
use chaosgraph::constructions as cons;
use chaosgraph::homsum::{empirical_moments, ks_statistic, Dist, HomogeneousSum};
use chaosgraph::reducibility as red;
use chaosgraph::{MatrixKind, Partition};

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "all".into());

    if which == "all" || which == "union" {
        let g = cons::union_with_isolated(6, 4).unwrap();
        let spec = g.spectrum(MatrixKind::NormalizedLaplacian).unwrap();
        println!("union(6,4) groups: {:?}", spec.groups);
    }

    if which == "all" || which == "rook30" {
        let g = cons::rook(30, 2).unwrap();
        let z = HomogeneousSum::from_graph(&g);
        let t = std::time::Instant::now();
        let exact = z.fourth_moment_d2_exact().unwrap();
        println!("rook(30,2) exact m4 = {exact:.6}  ({:?})", t.elapsed());
        for (dist, name) in [
            (Dist::Gaussian, "gaussian"),
            (Dist::Rademacher, "rademacher"),
            (Dist::CenteredExponential, "cexp"),
        ] {
            let t = std::time::Instant::now();
            let samples = z.sample(dist, 100_000, 0);
            let m = empirical_moments(&samples, 4);
            let ks = ks_statistic(&samples);
            println!(
                "rook(30,2) {name}: m4 = {:.4} +- {:.4}, ks = {:.4}  ({:?})",
                m[3].value,
                m[3].stderr,
                ks,
                t.elapsed()
            );
        }
    }

    if which == "all" || which == "k2020" {
        let g = cons::complete_bipartite(20).unwrap();
        let z = HomogeneousSum::from_graph(&g);
        let samples = z.sample(Dist::Gaussian, 100_000, 0);
        println!("K(20,20) ks = {:.4}", ks_statistic(&samples));
        let k50 = cons::complete(50).unwrap();
        let z50 = HomogeneousSum::from_graph(&k50);
        println!(
            "K50 exact m4 = {:.4}",
            z50.fourth_moment_d2_exact().unwrap()
        );
    }

    if which == "all" || which == "fcp" {
        let fp = cons::FractionalPartition::figure_5a();
        let family: Vec<_> = (5..=12)
            .map(|n| combdim::homsum_support(&cons::fractional_product(n, &fp).unwrap()))
            .collect();
        let rep = combdim::combdim_family_report(&family, None, 0).unwrap();
        println!(
            "fcp alpha_hat = {:.4}, growth slope {:.4}, verdict {:?}",
            rep.alpha_hat, rep.rect_growth_slope, rep.verdict
        );
        for r in &rep.per_member {
            println!(
                "  |V|={} |J|={} density={:.3} rect={:.3}",
                r.v_size, r.j_size, r.density_ratio, r.rect_ratio
            );
        }
    }

    if which == "all" || which == "grid-small" {
        // Grid family for combdim flagging.
        let family: Vec<_> = (5..=12)
            .map(|n| {
                let layout = cons::GridLayout::contiguous(n, 0.9).unwrap();
                combdim::homsum_support(&cons::grid_homsum(&layout).unwrap())
            })
            .collect();
        let rep = combdim::combdim_family_report(&family, Some(1.5), 0).unwrap();
        println!(
            "grid family at alpha=1.5: growth slope {:.4}, verdict {:?}",
            rep.rect_growth_slope, rep.verdict
        );
        for r in &rep.per_member {
            println!(
                "  |V|={} |J|={} density={:.3} rect={:.3}",
                r.v_size, r.j_size, r.density_ratio, r.rect_ratio
            );
        }
    }

    if which == "all" || which == "maxdeg" {
        let mut pass = 0;
        for seed in 0..20u64 {
            let s = cons::random_support(200, 1.5, 2, seed, true).unwrap();
            let g = cons::support_to_graph(&s, true).unwrap();
            let rep = combdim::max_degree_check(&g, 1.5, 0.2).unwrap();
            if seed < 3 {
                println!(
                    "seed {seed}: edges(ordered)={} maxdeg={} threshold={:.2} ok={}",
                    s.tuples.len(),
                    rep.max_degree,
                    rep.threshold,
                    rep.ok
                );
            }
            if rep.ok {
                pass += 1;
            }
        }
        println!("maxdeg eps=0.2 passes: {pass}/20");
        let mut pass = 0;
        for seed in 0..20u64 {
            let s = cons::random_support(200, 1.5, 2, seed, true).unwrap();
            let g = cons::support_to_graph(&s, true).unwrap();
            if combdim::max_degree_check(&g, 1.5, 0.1).unwrap().ok {
                pass += 1;
            }
        }
        println!("maxdeg eps=0.1 passes: {pass}/20");
    }

    if which == "all" || which == "variant" {
        for sym in [true, false] {
            let rows: Vec<_> = [20usize, 40, 80]
                .iter()
                .map(|&n| {
                    let k = (n as f64).powf(0.9).floor() as usize;
                    let g = cons::rook_variant(n, k, sym).unwrap();
                    let z = HomogeneousSum::from_graph(&g);
                    let p = red::row_blocks(n).unwrap();
                    let rep = red::evaluate_partition(&z, &p).unwrap();
                    (n, rep.captured_fraction, rep.max_box_fraction)
                })
                .collect();
            println!("rook_variant trends (symmetrize={sym}): {rows:?}");
        }
    }

    if which == "all" || which == "grid60" {
        for n in [20usize, 40, 60] {
            let layout = cons::GridLayout::contiguous(n, 0.9).unwrap();
            let z = cons::grid_homsum(&layout).unwrap();
            let t = std::time::Instant::now();
            let samples = z.sample(Dist::Gaussian, 100_000, 0);
            let m = empirical_moments(&samples, 4);
            println!(
                "grid n={n}: keys={} m4 = {:.4} +- {:.4}  ({:?})",
                z.n_terms(),
                m[3].value,
                m[3].stderr,
                t.elapsed()
            );
        }
        // Candidate captures at n = 60.
        let n = 60;
        let layout = cons::GridLayout::contiguous(n, 0.9).unwrap();
        let z = cons::grid_homsum(&layout).unwrap();
        let n3 = (n * n * n) as f64;
        let mut cands: Vec<(String, Partition)> = vec![
            ("rows".into(), red::row_blocks(n).unwrap()),
            ("columns".into(), red::column_blocks(n).unwrap()),
        ];
        for k in [2usize, 3, 5] {
            cands.push((format!("{k}x{k}"), red::kxk_blocks(n, k).unwrap()));
        }
        for s in 0..3u64 {
            cands.push((
                format!("rand{s}"),
                red::random_balanced_partition(n * n, 36, s).unwrap(),
            ));
        }
        println!("variance/n^3 = {:.4}", z.variance() / n3);
        for (label, p) in &cands {
            let rep = red::evaluate_partition(&z, p).unwrap();
            println!(
                "  {label}: captured/n3 = {:.4}, max_box/n3 = {:.4}",
                rep.captured_fraction * rep.variance / n3,
                rep.max_box_fraction * rep.variance / n3
            );
        }
    }

    if which == "grid-exact" {
        for n in [20usize, 40, 60] {
            let layout = cons::GridLayout::contiguous(n, 0.9).unwrap();
            let z = cons::grid_homsum(&layout).unwrap();
            let t = std::time::Instant::now();
            let exact = z.fourth_moment_d2_exact().unwrap();
            println!("grid n={n}: exact m4 = {exact:.6}  ({:?})", t.elapsed());
        }
    }

    if which == "all" || which == "uni3" {
        for n in [6usize, 8] {
            let z = cons::triangle_hypergraph(n).unwrap();
            let h = z.to_hypergraph().unwrap();
            let a = h.spectrum(MatrixKind::Adjacency).unwrap();
            let l = h.spectrum(MatrixKind::NormalizedLaplacian).unwrap();
            println!("3uni n={n} adjacency groups: {:?}", a.groups);
            println!("3uni n={n} laplacian groups: {:?}", l.groups);
        }
    }

    if which == "all" || which == "edgecount" {
        // Binomial oracle for random support sizes.
        let n = 200usize;
        let p = (n as f64).powf(-0.5);
        let mean = (n * (n - 1) / 2) as f64 * p;
        let sd = ((n * (n - 1) / 2) as f64 * p * (1.0 - p)).sqrt();
        println!("binomial mean {mean:.1} sd {sd:.2} (unordered)");
        for seed in 0..20u64 {
            let s = cons::random_support(n, 1.5, 2, seed, true).unwrap();
            let unordered = s.tuples.len() / 2;
            let dev = (unordered as f64 - mean) / sd;
            if seed < 5 || dev.abs() > 4.0 {
                println!("  seed {seed}: unordered={unordered} dev={dev:.2} sigma");
            }
        }
    }
}
