use qaoa_bench::ansatz::AnsatzSpec;
use qaoa_bench::objective::Evaluator;
use qaoa_bench::optimizers::{shc_rr, Budget, RngStream};
use qaoa_bench::problems::ProblemInstance;

#[test]
fn probe_depth_saturation() {
    for seed in [1000u64, 1003, 1007] {
        let n = 5 + (seed % 6) as usize;
        let inst = ProblemInstance::random_ising(seed, n).unwrap();
        let opt = inst.brute_force_optimum().unwrap().opt_value;
        println!("instance seed {seed} n {n}: edges {} opt {opt}", inst.edges.len());
        for (layers, budget_big) in [(1usize, (1000, 200)), (2, (1000, 200))] {
            let spec = AnsatzSpec::new(layers, false).unwrap();
            let mut ev = Evaluator::new(&inst, spec).unwrap();
            let mut f = |p: &[f64]| ev.evaluate(p);
            let mut rng = RngStream::new(5, seed, layers as u64).rng();
            let normal = shc_rr(&mut f, 3 * layers, Budget::new(100, 50).unwrap(), 0.2, &mut rng);
            let mut rng = RngStream::new(6, seed, layers as u64).rng();
            let big = shc_rr(
                &mut f,
                3 * layers,
                Budget::new(budget_big.0, budget_big.1).unwrap(),
                0.2,
                &mut rng,
            );
            println!(
                "  {}p: achieved(100x50) {:.4} gap {:.4} | achieved(1000x200) {:.4} gap {:.4}",
                3 * layers,
                normal.best_value,
                normal.best_value - opt,
                big.best_value,
                big.best_value - opt
            );
        }
    }
}
