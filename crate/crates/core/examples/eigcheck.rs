use noisefloor::matrix::Matrix;
use noisefloor::rng::CounterRng;
use noisefloor::spectrum::eigen::{jacobi_eigenvalues, sym_eigenvalues};
use std::time::Instant;

fn main() {
    let n = 256;
    let rng = CounterRng::new(123, 0, 0);
    let mut m = Matrix::zeros(n, n);
    let mut idx = 0;
    for i in 0..n {
        for j in i..n {
            let v = rng.normal_at(idx);
            idx += 1;
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    let t = Instant::now();
    let a = sym_eigenvalues(&m).unwrap();
    let t_ql = t.elapsed();
    let t = Instant::now();
    let b = jacobi_eigenvalues(&m).unwrap();
    let t_j = t.elapsed();
    let worst = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0f64, f64::max);
    println!("QL {:?}  Jacobi {:?}  max|diff| {:.3e}", t_ql, t_j, worst);
    // print a few for numpy comparison
    for i in [0, 1, 127, 254, 255] {
        println!("{} {:.15e}", i, a[i]);
    }
}
