use criterion::{black_box, criterion_group, criterion_main, Criterion};
use mirrorci::exactalg::{int, HPoly};
use mirrorci::hypergeom::{build_i, CISpec, EquivContext};
use mirrorci::locrec::{closed_form_z, solve_class_p, transform_abc, Direction};
use mirrorci::mirror::MirrorFrame;
use mirrorci::pfcheck::{pf_operator, verify_annihilation};

fn quintic() -> CISpec {
    CISpec::new(4, vec![5]).unwrap()
}

fn exact_arithmetic(c: &mut Criterion) {
    let a = (1..=12).fold(HPoly::one(), |acc, m| acc.mul(&HPoly::linear(int(1_000_003 * m), int(m))));
    let b = (7..=18).fold(HPoly::one(), |acc, m| acc.mul(&HPoly::linear(int(1_000_003 * m), int(m))));
    c.bench_function("hpoly_gcd_deg12", |bench| bench.iter(|| black_box(&a).gcd(black_box(&b))));
}

fn non_equivariant(c: &mut Criterion) {
    let s = quintic();
    c.bench_function("quintic_instantons_order10", |bench| {
        bench.iter(|| MirrorFrame::build(&s, 10).unwrap().instantons(&s).unwrap())
    });
    let op = pf_operator(&s).unwrap();
    let i = build_i(&s, 20).unwrap();
    c.bench_function("quintic_annihilation_order20", |bench| bench.iter(|| verify_annihilation(&op, &i, 20).unwrap()));
}

fn equivariant(c: &mut Criterion) {
    let s = quintic();
    let ctx = EquivContext::sample(&s, 3, 0, 20).unwrap();
    let mut group = c.benchmark_group("quintic_equivariant_order3");
    group.sample_size(10);
    group.bench_function("closed_form", |bench| bench.iter(|| closed_form_z(&s, &ctx, 3).unwrap()));
    group.bench_function("class_p", |bench| bench.iter(|| solve_class_p(&s, &ctx, 3).unwrap()));
    let p = solve_class_p(&s, &ctx, 3).unwrap();
    group.bench_function("forward_transform", |bench| {
        bench.iter(|| transform_abc(&p, &s, &ctx, 3, Direction::Forward).unwrap())
    });
    group.finish();
}

criterion_group!(benches, exact_arithmetic, non_equivariant, equivariant);
criterion_main!(benches);
