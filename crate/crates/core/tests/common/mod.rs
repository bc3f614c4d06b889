//! Two-dimensional quadrature oracle for the oscillator matrix elements,
//! shared by the operator tests and the acceptance run.
#![allow(dead_code)]

use num_complex::Complex64 as C64;
use vibronic::basis::{ladder_operators, position_operators, second_order_operators, BasisState, Orbital, Spin, VibronicBasis};
use vibronic::operator::OperatorMatrix;

/// Largest oscillator level compared.
pub const N_MAX: u32 = 3;

/// Normalized 1D Hermite function φ_k(ξ) in units of √(ħ/μω).
pub fn hermite_function(k: usize, xi: f64) -> f64 {
    // Stable recurrence for the normalized functions.
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * xi * xi).exp();
    for j in 0..k {
        let next = (2.0 / (j as f64 + 1.0)).sqrt() * xi * cur - (j as f64 / (j as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Cartesian expansion {(n_x, n_y) → c} of the circular state |n, m⟩ =
/// (a₊†)^p (a₋†)^q / √(p! q!) |0⟩ with p = (n+m)/2, q = (n−m)/2 and
/// a±† = (a_x† ± i a_y†)/√2.
pub fn circular_state(n: u32, m: i32) -> Vec<((usize, usize), C64)> {
    let p = ((n as i32 + m) / 2) as usize;
    let q = ((n as i32 - m) / 2) as usize;
    let mut out: Vec<((usize, usize), C64)> = Vec::new();
    let i = C64::new(0.0, 1.0);
    for a in 0..=p {
        for b in 0..=q {
            // (a_x† + i a_y†)^p → choose a factors of a_x†, the rest i·a_y†;
            // (a_x† − i a_y†)^q → choose b factors of a_x†, the rest −i·a_y†.
            let nx = a + b;
            let ny = (p - a) + (q - b);
            let coeff = binomial(p, a) * binomial(q, b) * i.powu((p - a) as u32) * (-i).powu((q - b) as u32);
            // (a†)^k|0⟩ = √k! |k⟩.
            let c = coeff * (factorial(nx) * factorial(ny)).sqrt()
                / (2f64.powi((p + q) as i32).sqrt() * (factorial(p) * factorial(q)).sqrt());
            match out.iter_mut().find(|(k, _)| *k == (nx, ny)) {
                Some((_, v)) => *v += c,
                None => out.push(((nx, ny), c)),
            }
        }
    }
    out
}

pub struct Grid {
    pub xi: Vec<f64>,
    pub h: f64,
}

impl Grid {
    pub fn new() -> Self {
        let h = 0.05;
        let xi = (-240..=240).map(|k| k as f64 * h).collect();
        Grid { xi, h }
    }
}

/// Wavefunction of |n, m⟩ on the grid (row-major over ξ, η).
pub fn wavefunction(grid: &Grid, n: u32, m: i32) -> Vec<C64> {
    let expansion = circular_state(n, m);
    let k = grid.xi.len();
    let table: Vec<Vec<f64>> = (0..=N_MAX as usize).map(|j| grid.xi.iter().map(|&x| hermite_function(j, x)).collect()).collect();
    let mut psi = vec![C64::new(0.0, 0.0); k * k];
    for ((nx, ny), c) in expansion {
        for a in 0..k {
            for b in 0..k {
                psi[a * k + b] += c * table[nx][a] * table[ny][b];
            }
        }
    }
    psi
}

/// ⟨bra| f(ξ, η) |ket⟩ by the trapezoidal rule (spectrally accurate for
/// Gaussian-decaying integrands).
pub fn integrate(grid: &Grid, bra: &[C64], ket: &[C64], f: impl Fn(f64, f64) -> C64) -> C64 {
    let k = grid.xi.len();
    let mut s = C64::new(0.0, 0.0);
    for a in 0..k {
        for b in 0..k {
            s += bra[a * k + b].conj() * f(grid.xi[a], grid.xi[b]) * ket[a * k + b];
        }
    }
    s * grid.h * grid.h
}

pub fn levels() -> Vec<(u32, i32)> {
    (0..=N_MAX).flat_map(|n| (-(n as i32)..=n as i32).step_by(2).map(move |m| (n, m))).collect()
}

pub fn element(op: &OperatorMatrix, basis: &VibronicBasis, bra: (u32, i32), ket: (u32, i32)) -> C64 {
    let idx = |(n, m): (u32, i32)| {
        basis
            .index_of(&BasisState {
                n,
                m,
                orbital: Orbital::Minus,
                spin: Spin::Down,
            })
            .unwrap()
    };
    op.get(idx(bra), idx(ket))
}

/// Largest |matrix − quadrature| over Q±, x²−y² and 2xy for all pairs of
/// levels n, n′ ≤ [`N_MAX`] (operators in units of √(ħ/2μω)).
pub fn worst_oracle_error() -> f64 {
    let grid = Grid::new();
    // Large enough that no element with n, n′ ≤ 3 touches the truncation.
    let basis = VibronicBasis::new(8);
    let (qp, qm) = ladder_operators(&basis, None);
    let second = second_order_operators(&basis, None);
    let states: Vec<((u32, i32), Vec<C64>)> = levels().into_iter().map(|s| (s, wavefunction(&grid, s.0, s.1))).collect();
    // x/ℓ = √2 ξ.
    let r2 = 2f64.sqrt();
    let i = C64::new(0.0, 1.0);
    type Profile = Box<dyn Fn(f64, f64) -> C64>;
    let ops: [(&OperatorMatrix, Profile); 4] = [
        (&qp, Box::new(move |x, y| r2 * (x + i * y))),
        (&qm, Box::new(move |x, y| r2 * (x - i * y))),
        (&second.x2_minus_y2, Box::new(|x, y| C64::new(2.0 * (x * x - y * y), 0.0))),
        (&second.two_xy, Box::new(|x, y| C64::new(4.0 * x * y, 0.0))),
    ];
    let mut worst: f64 = 0.0;
    for (op, f) in &ops {
        for (bra, wb) in &states {
            for (ket, wk) in &states {
                let quad = integrate(&grid, wb, wk, f);
                worst = worst.max((quad - element(op, &basis, *bra, *ket)).norm());
            }
        }
    }
    worst
}

/// Largest deviation of the potential-energy diagonal (ħω/4)⟨x²+y²⟩ from
/// ½(n+1)ħω for levels below the truncation edge.
pub fn worst_potential_identity_error(n_cut: usize) -> f64 {
    let basis = VibronicBasis::new(n_cut);
    let (x, y) = position_operators(&basis, None);
    let r2 = &(&x * &x) + &(&y * &y);
    basis
        .states()
        .iter()
        .enumerate()
        .filter(|(_, s)| (s.n as usize) < n_cut)
        .map(|(k, s)| (0.25 * r2.get(k, k).re - 0.5 * (s.n as f64 + 1.0)).abs().max(r2.get(k, k).im.abs()))
        .fold(0.0, f64::max)
}
