//! Fixtures shared by the benchmarks.

use mahlerlab::{ConvexBody3, Vec3};

/// `n` points spread over a sphere by a golden-angle spiral, with radii wobbling
/// between 0.8 and 1.2 so the hull is not regular.
pub fn spiral_points(n: usize) -> Vec<Vec3> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden * i as f64;
            let scale = 1.0 + 0.2 * (7.0 * t).sin();
            Vec3::new(r * t.cos(), r * t.sin(), z) * scale
        })
        .collect()
}

pub fn spiral_body(n: usize) -> ConvexBody3 {
    ConvexBody3::from_points(&spiral_points(n)).expect("spiral points span space")
}
