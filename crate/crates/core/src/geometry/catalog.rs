//! Named polytopes used throughout the tests and the CLI.

use super::LatticePolytope;

/// The standard simplex `conv{0, e_1, …, e_n}` in `ℤ^n`.
pub fn simplex(n: usize) -> LatticePolytope {
    let mut verts = vec![vec![0; n]];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        verts.push(e);
    }
    LatticePolytope::new(n, verts)
        .expect("simplex")
        .with_name(format!("D{n}"))
}

/// `c·Δ_1 = conv{0, c}`.
pub fn segment(c: i64) -> LatticePolytope {
    LatticePolytope::new(1, vec![vec![0], vec![c]])
        .expect("segment")
        .with_name(if c == 1 { "D1".to_string() } else { format!("{c}D1") })
}

/// The unit square `Δ_1 × Δ_1`.
pub fn square() -> LatticePolytope {
    LatticePolytope::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
        .expect("square")
        .with_name("SQ")
}

/// `conv{(1,0), (0,1), (−1,0)}`: four lattice points, five column vectors.
pub fn t1() -> LatticePolytope {
    LatticePolytope::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, 0]])
        .expect("T1")
        .with_name("T1")
}

/// `conv{(1,0), (0,1), (−1,−1)}`: no column vectors.
pub fn t2() -> LatticePolytope {
    LatticePolytope::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]])
        .expect("T2")
        .with_name("T2")
}

/// `Δ_1 × 2Δ_1`.
pub fn segment_times_double_segment() -> LatticePolytope {
    segment(1)
        .product(&segment(2))
        .expect("product")
        .with_name("D1x2D1")
}

/// The polytopes of the dimension-formula check, in a fixed order.
pub fn standard() -> Vec<LatticePolytope> {
    vec![simplex(1), simplex(2), segment(2), square(), t1(), t2()]
}

pub fn by_name(name: &str) -> Option<LatticePolytope> {
    let p = match name {
        "D1" | "Delta1" => simplex(1),
        "D2" | "Delta2" => simplex(2),
        "D3" | "Delta3" => simplex(3),
        "2D1" | "2Delta1" => segment(2),
        "3D1" | "3Delta1" => segment(3),
        "2D2" | "2Delta2" => simplex(2).dilate(2).ok()?,
        "SQ" => square(),
        "T1" => t1(),
        "T2" => t2(),
        "2T2" => t2().dilate(2).ok()?,
        "D1x2D1" => segment_times_double_segment(),
        _ => return None,
    };
    Some(p)
}

pub const NAMES: &[&str] = &["D1", "D2", "D3", "2D1", "3D1", "2D2", "SQ", "T1", "T2", "2T2", "D1x2D1"];
