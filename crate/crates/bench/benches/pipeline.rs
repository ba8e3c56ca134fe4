use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ncpfiber_bench::{fp, group, lattice};
use ncpfiber_core::homology::smith_normal_form;
use ncpfiber_core::{lcc, monodromy, FqComplex, NcpLattice};

fn lattice_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("lattice");
    for spec in ["A3", "B3", "A4", "D4"] {
        let grp = group(spec);
        g.bench_function(spec, |b| b.iter(|| NcpLattice::canonical(black_box(grp.clone())).unwrap()));
    }
    g.finish();
}

fn fp_homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("fp_homology");
    g.sample_size(20);
    for spec in ["A3", "B3", "A4", "D4"] {
        let l = lattice(spec);
        g.bench_function(spec, |b| {
            b.iter(|| ncpfiber_core::FpComplex::build(l.clone()).unwrap().complex().homology().unwrap())
        });
    }
    g.finish();
}

fn snf(c: &mut Criterion) {
    let f = fp("D4");
    let m = f.complex().boundary_matrix(2);
    c.bench_function("snf/D4_d2", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn lattice_chain_complex(c: &mut Criterion) {
    let f = fp("A4");
    c.bench_function("lcc/A4", |b| b.iter(|| lcc::build_lattice_chain_complex(f.lattice()).unwrap().homology()));
}

fn monodromy_fq(c: &mut Criterion) {
    let f = fp("A3");
    let q = FqComplex::build(&f).unwrap();
    let mut g = c.benchmark_group("monodromy");
    g.sample_size(10);
    g.bench_function("fq/A3", |b| b.iter(|| monodromy::fq_report(&f, &q, 64).unwrap()));
    g.finish();
}

criterion_group!(benches, lattice_build, fp_homology, snf, lattice_chain_complex, monodromy_fq);
criterion_main!(benches);
