//! Benchmarks of the data-parallel inner loops. With the default `parallel`
//! feature the same workload is measured on the full rayon pool and on a
//! single-thread pool; building with `--no-default-features` benches the
//! plain sequential code path.

use criterion::{criterion_group, criterion_main, Criterion};

use newton_smoothing::newton::star_function;
use newton_smoothing::oracle::{
    estimate_fourier_transform, estimate_sublevel_measure, FourierOptions, SublevelOptions,
};
use newton_smoothing::pipeline::analyze_all_permutations;
use newton_smoothing::poly::{parse_polynomial, BlockStructure, Polynomial, StarFunction};
use newton_smoothing::rat::ratio;

fn fixture() -> (Polynomial, StarFunction, BlockStructure) {
    let p = parse_polynomial("t1^2*t2^2", 2).unwrap();
    let star = star_function(&p).unwrap();
    let blocks = BlockStructure::singletons(2, vec![ratio(1, 2), ratio(1, 2)]).unwrap();
    (p, star, blocks)
}

#[cfg(feature = "parallel")]
type Pool = Option<rayon::ThreadPool>;
#[cfg(not(feature = "parallel"))]
type Pool = Option<()>;

fn scoped<T: Send>(pool: &Pool, work: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    if let Some(p) = pool {
        return p.install(work);
    }
    let _ = pool;
    work()
}

fn bench_workloads(c: &mut Criterion, label: &str, pool: &Pool) {
    let (p, star, blocks) = fixture();

    let sub_opts = SublevelOptions { budget: 600_000, seed: 7, ..Default::default() };
    c.bench_function(&format!("sublevel_measure/{label}"), |b| {
        b.iter(|| scoped(pool, || estimate_sublevel_measure(&star, &blocks, 1e-5, &sub_opts).unwrap()))
    });

    let four_opts = FourierOptions { depth: Some(10), budget: 1_500_000, ..Default::default() };
    let alpha0 = BlockStructure::singletons(2, vec![ratio(0, 1), ratio(0, 1)]).unwrap();
    c.bench_function(&format!("fourier_transform/{label}"), |b| {
        b.iter(|| {
            scoped(pool, || {
                estimate_fourier_transform(&p, &alpha0, &[0.0, 0.0, 192.0], &four_opts).unwrap()
            })
        })
    });

    let p4 = parse_polynomial("t1^2 + t2^2 + t3^4 + t4^4 + t1*t2*t3*t4", 4).unwrap();
    let star4 = star_function(&p4).unwrap();
    let blocks4 = BlockStructure::from_one_based(
        4,
        vec![vec![1, 2], vec![3], vec![4]],
        vec![ratio(1, 2), ratio(1, 3), ratio(0, 1)],
    )
    .unwrap();
    c.bench_function(&format!("permutation_pipeline/{label}"), |b| {
        b.iter(|| scoped(pool, || analyze_all_permutations(&star4, &blocks4).unwrap()))
    });
}

fn benches(c: &mut Criterion) {
    #[cfg(feature = "parallel")]
    {
        bench_workloads(c, "parallel", &None);
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        bench_workloads(c, "single_thread", &Some(single));
    }
    #[cfg(not(feature = "parallel"))]
    bench_workloads(c, "sequential", &None);
}

criterion_group! {
    name = suite;
    config = Criterion::default().sample_size(10);
    targets = benches
}
criterion_main!(suite);
