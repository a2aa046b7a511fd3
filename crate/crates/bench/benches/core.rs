use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use truncvqe::simulator::{Entanglement, Observable};
use truncvqe::vqe::Spsa;
use truncvqe::{classify, jordan_wigner, prepare_state, Ansatz, SpsaConfig};
use truncvqe_bench::{angles, fixture};

fn jw(c: &mut Criterion) {
    for name in ["h4", "lih"] {
        let h = fixture(name);
        c.bench_function(&format!("jordan_wigner/{name}"), |b| b.iter(|| jordan_wigner(black_box(&h))));
    }
    let h = fixture("lih");
    c.bench_function("classify/lih", |b| b.iter(|| classify(black_box(&h))));
}

fn expectation(c: &mut Criterion) {
    for name in ["h4", "lih"] {
        let q = jordan_wigner(&fixture(name));
        let n = q.num_qubits();
        let ansatz = Ansatz::two_local(n, 3, Entanglement::Linear).unwrap();
        let state = prepare_state(&ansatz, &angles(ansatz.num_parameters())).unwrap();
        let obs = Observable::new(&q).unwrap();
        c.bench_function(&format!("expectation/{name}"), |b| b.iter(|| obs.expectation(black_box(&state)).unwrap()));
        c.bench_function(&format!("prepare_state/{name}"), |b| {
            let theta = angles(ansatz.num_parameters());
            b.iter(|| prepare_state(&ansatz, black_box(&theta)).unwrap())
        });
    }
}

fn spsa_step(c: &mut Criterion) {
    let q = jordan_wigner(&fixture("h2"));
    let ansatz = Ansatz::two_local(4, 3, Entanglement::Linear).unwrap();
    let obs = Observable::new(&q).unwrap();
    let mut objective = |t: &[f64]| obs.expectation(&prepare_state(&ansatz, t).unwrap()).unwrap();
    let config = SpsaConfig { gain: Some(0.1), ..SpsaConfig::default() };
    let mut spsa = Spsa::new(&config, 1_000_000).unwrap();
    let mut theta = angles(ansatz.num_parameters());
    c.bench_function("spsa_step/h2", |b| b.iter(|| spsa.step(&mut objective, &mut theta, &mut |_| {}).unwrap()));
}

criterion_group!(benches, jw, expectation, spsa_step);
criterion_main!(benches);
