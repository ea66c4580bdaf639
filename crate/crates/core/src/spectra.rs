//! Dense symmetric eigenvalues for adjacency and Laplacian matrices, and the
//! spectral checks built on them.
//!
//! The solver reduces the matrix to tridiagonal form with Householder
//! reflections and runs implicit QL with Wilkinson shifts. A few eigenpairs
//! are then confirmed on the original matrix: inverse iteration on the
//! tridiagonal matrix, back-transformed through the stored reflections.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{EmbeddedGraph, FullereneGraph};
use crate::transversal::{Transversal, Verdict};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Largest matrix order accepted.
pub const MAX_ORDER: usize = 5000;
const RESIDUAL_TOL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("matrix order {0} exceeds the dense budget of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("QL iteration did not converge at index {0}")]
    NoConvergence(usize),
    #[error("eigenpair {index} has relative residual {residual:e}")]
    Residual { index: usize, residual: f64 },
    #[error("vertices {0} and {1} of the set are adjacent")]
    NotIndependent(usize, usize),
    #[error("tolerance must be positive and finite")]
    BadTolerance,
}

/// Row-major dense symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> SymMatrix {
        SymMatrix { n, a: vec![0.0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.a[i * self.n + j] = x;
        self.a[j * self.n + i] = x;
    }

    fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.a[i * self.n..(i + 1) * self.n].iter().zip(v).map(|(x, y)| x * y).sum()).collect()
    }
}

pub fn adjacency_matrix(g: &EmbeddedGraph) -> SymMatrix {
    induced_adjacency(g, &vec![true; g.n()])
}

/// Adjacency matrix of the subgraph induced by the flagged vertices, in
/// increasing vertex order.
fn induced_adjacency(g: &EmbeddedGraph, keep: &[bool]) -> SymMatrix {
    let ids: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in ids.iter().enumerate() {
        local[v] = i;
    }
    let mut m = SymMatrix::zeros(ids.len());
    for &(u, v) in g.edges() {
        if keep[u] && keep[v] {
            m.set(local[u], local[v], 1.0);
        }
    }
    m
}

pub fn laplacian_matrix(g: &EmbeddedGraph) -> SymMatrix {
    let mut m = SymMatrix::zeros(g.n());
    for v in 0..g.n() {
        m.set(v, v, g.degree(v) as f64);
    }
    for &(u, v) in g.edges() {
        m.set(u, v, -1.0);
    }
    m
}

/// Tridiagonal form `T = Qᵀ A Q` with `Q = H_0 H_1 ⋯`.
struct Tridiagonal {
    d: Vec<f64>,
    /// `e[i] = T[i][i+1]`; the last entry is zero.
    e: Vec<f64>,
    /// Reflection `H_k = I - beta v vᵀ`, acting on indices `k+1..n`.
    reflections: Vec<(Vec<f64>, f64)>,
}

fn tridiagonalize(m: &SymMatrix) -> Tridiagonal {
    let n = m.n;
    let mut a = m.a.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut reflections = Vec::with_capacity(n.saturating_sub(2));
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let mut v: Vec<f64> = (0..len).map(|i| a[(k + 1 + i) * n + k]).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        d[k] = a[k * n + k];
        if norm == 0.0 {
            e[k] = 0.0;
            reflections.push((v, 0.0));
            continue;
        }
        let alpha = if v[0] > 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        let beta = 2.0 / vv;
        e[k] = alpha;
        // Trailing block B ← H B H with H = I - beta v vᵀ.
        let off = k + 1;
        let mut p = vec![0.0; len];
        for i in 0..len {
            let row = &a[(off + i) * n + off..(off + i) * n + n];
            p[i] = beta * row.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>();
        }
        let kk = 0.5 * beta * p.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>();
        let w: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - kk * vi).collect();
        for i in 0..len {
            let row = (off + i) * n + off;
            for j in 0..len {
                a[row + j] -= v[i] * w[j] + w[i] * v[j];
            }
        }
        reflections.push((v, beta));
    }
    if n >= 2 {
        d[n - 2] = a[(n - 2) * n + n - 2];
        e[n - 2] = a[(n - 1) * n + n - 2];
    }
    if n >= 1 {
        d[n - 1] = a[(n - 1) * n + n - 1];
        e[n - 1] = 0.0;
    }
    Tridiagonal { d, e, reflections }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL.
fn tridiagonal_eigenvalues(d: &[f64], e: &[f64]) -> Result<Vec<f64>, SpectraError> {
    let n = d.len();
    let mut d = d.to_vec();
    let mut e = e.to_vec();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(SpectraError::NoConvergence(l));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// Solves `(T - shift·I) x = rhs` by Gaussian elimination with partial
/// pivoting on the band.
fn solve_shifted(d: &[f64], e: &[f64], shift: f64, mut rhs: Vec<f64>) -> Vec<f64> {
    let n = d.len();
    let tiny = 1e-300;
    let mut diag: Vec<f64> = d.iter().map(|x| x - shift).collect();
    let mut sub: Vec<f64> = e[..n.saturating_sub(1)].to_vec();
    let mut sup: Vec<f64> = sub.clone();
    let mut sup2 = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        if diag[i].abs() >= sub[i].abs() {
            if diag[i] == 0.0 {
                diag[i] = tiny;
            }
            let f = sub[i] / diag[i];
            diag[i + 1] -= f * sup[i];
            rhs[i + 1] -= f * rhs[i];
        } else {
            let f = diag[i] / sub[i];
            let (old_diag_next, old_sup) = (diag[i + 1], sup[i]);
            diag[i] = sub[i];
            sup[i] = old_diag_next;
            diag[i + 1] = old_sup - f * old_diag_next;
            if i + 2 < n {
                sup2[i] = sup[i + 1];
                sup[i + 1] = -f * sup2[i];
            }
            rhs.swap(i, i + 1);
            rhs[i + 1] -= f * rhs[i];
        }
        sub[i] = 0.0;
    }
    if n > 0 && diag[n - 1] == 0.0 {
        diag[n - 1] = tiny;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        if i + 1 < n {
            acc -= sup[i] * x[i + 1];
        }
        if i + 2 < n {
            acc -= sup2[i] * x[i + 2];
        }
        x[i] = acc / diag[i];
    }
    x
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// Relative residual `‖Av - λv‖ / ‖v‖` of an eigenvector for `lambda`
/// obtained by inverse iteration.
fn spot_residual(m: &SymMatrix, tri: &Tridiagonal, lambda: f64) -> f64 {
    let n = m.n;
    let scale = tri.d.iter().chain(&tri.e).fold(1.0f64, |acc, x| acc.max(x.abs()));
    let shift = lambda + 1e-10 * scale;
    let mut w: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7 + 3) as f64).sin()).collect();
    for _ in 0..3 {
        w = solve_shifted(&tri.d, &tri.e, shift, w);
        normalize(&mut w);
    }
    // v = H_0 H_1 ⋯ w
    let mut v = w;
    for (k, (h, beta)) in tri.reflections.iter().enumerate().rev() {
        let tail = &mut v[k + 1..];
        let dot: f64 = tail.iter().zip(h).map(|(x, y)| x * y).sum();
        tail.iter_mut().zip(h).for_each(|(x, y)| *x -= beta * dot * y);
    }
    let av = m.mul_vec(&v);
    let res = av.iter().zip(&v).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    res / norm
}

/// All eigenvalues, ascending, with residual spot checks at the smallest,
/// middle and largest eigenvalue.
pub fn symmetric_eigenvalues(m: &SymMatrix) -> Result<Vec<f64>, SpectraError> {
    if m.n > MAX_ORDER {
        return Err(SpectraError::TooLarge(m.n));
    }
    if m.n == 0 {
        return Ok(Vec::new());
    }
    let tri = tridiagonalize(m);
    let values = tridiagonal_eigenvalues(&tri.d, &tri.e)?;
    let mut spots = vec![0, m.n / 2, m.n - 1];
    spots.dedup();
    for index in spots {
        let residual = spot_residual(m, &tri, values[index]);
        if residual > RESIDUAL_TOL {
            return Err(SpectraError::Residual { index, residual });
        }
    }
    Ok(values)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub tolerance: f64,
}

impl Spectrum {
    pub fn new(eigenvalues: Vec<f64>, tolerance: f64) -> Result<Spectrum, SpectraError> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(SpectraError::BadTolerance);
        }
        Ok(Spectrum { eigenvalues, tolerance })
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn positives(&self) -> usize {
        self.eigenvalues.iter().filter(|&&x| x > self.tolerance).count()
    }

    pub fn zeros(&self) -> usize {
        self.eigenvalues.iter().filter(|&&x| x.abs() <= self.tolerance).count()
    }
}

pub fn adjacency_spectrum(g: &EmbeddedGraph) -> Result<Spectrum, SpectraError> {
    adjacency_spectrum_tol(g, DEFAULT_TOLERANCE)
}

pub fn adjacency_spectrum_tol(g: &EmbeddedGraph, tolerance: f64) -> Result<Spectrum, SpectraError> {
    Spectrum::new(symmetric_eigenvalues(&adjacency_matrix(g))?, tolerance)
}

pub fn laplacian_spectrum(g: &EmbeddedGraph) -> Result<Spectrum, SpectraError> {
    Spectrum::new(symmetric_eigenvalues(&laplacian_matrix(g))?, DEFAULT_TOLERANCE)
}

pub fn smallest_eigenvalue(g: &EmbeddedGraph) -> Result<f64, SpectraError> {
    Ok(adjacency_spectrum(g)?.min())
}

/// `-3 + 8·sqrt(3/(5n))`.
pub fn lambda_min_bound(n: usize) -> f64 {
    -3.0 + 8.0 * (3.0 / (5.0 * n as f64)).sqrt()
}

/// Verdict for `lhs ≤ rhs` with a tolerance band counted as equality.
pub fn float_verdict(lhs: f64, rhs: f64, tol: f64) -> Verdict {
    if (lhs - rhs).abs() <= tol {
        Verdict::Equality
    } else if lhs < rhs {
        Verdict::Holds
    } else {
        Verdict::Violated
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxCutCheck {
    /// `3n/2 - |J|`, the size of the cut between the colour classes of `G - J`.
    pub cut: usize,
    /// Largest Laplacian eigenvalue.
    pub mu_max: f64,
    /// `n·mu_max/4`.
    pub bound: f64,
    pub holds: bool,
}

/// `3n/2 - |J| ≤ n·μ_n/4`, up to `1e-6`.
pub fn maxcut_spectral_check(f: &FullereneGraph, tr: &Transversal) -> Result<MaxCutCheck, SpectraError> {
    let n = f.n();
    let mu_max = laplacian_spectrum(f.graph())?.max();
    let cut = 3 * n / 2 - tr.len();
    let bound = n as f64 * mu_max / 4.0;
    Ok(MaxCutCheck { cut, mu_max, bound, holds: cut as f64 <= bound + 1e-6 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShellVerdict {
    True,
    False,
    /// Some eigenvalue of `G - A` is within the tolerance of zero.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedShell {
    pub verdict: ShellVerdict,
    /// `n - |A|`.
    pub remaining: usize,
    pub positives: usize,
    pub zeros: usize,
    /// `n - |A|` is odd, so "exactly half positive" cannot hold.
    pub odd_remainder: bool,
}

/// Whether exactly half of the eigenvalues of `G - A` are positive.
pub fn closed_shell_check(g: &EmbeddedGraph, a: &[usize], tolerance: f64) -> Result<ClosedShell, SpectraError> {
    let mut keep = vec![true; g.n()];
    for &v in a {
        keep[v] = false;
    }
    for &(u, v) in g.edges() {
        if !keep[u] && !keep[v] {
            return Err(SpectraError::NotIndependent(u.min(v), u.max(v)));
        }
    }
    let m = induced_adjacency(g, &keep);
    let spectrum = Spectrum::new(symmetric_eigenvalues(&m)?, tolerance)?;
    let remaining = spectrum.len();
    let positives = spectrum.positives();
    let zeros = spectrum.zeros();
    let odd_remainder = remaining % 2 == 1;
    let verdict = if zeros > 0 {
        ShellVerdict::Indeterminate
    } else if !odd_remainder && 2 * positives == remaining {
        ShellVerdict::True
    } else {
        ShellVerdict::False
    };
    Ok(ClosedShell { verdict, remaining, positives, zeros, odd_remainder })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goldberg::{dodecahedron, icosahedral_fullerene, GeodesicSpec};
    use crate::graph::samples::{cycle, k4};
    use crate::transversal::odd_cycle_transversal;
    use proptest::prelude::*;

    const PHI: f64 = 1.618_033_988_749_895;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn k4_spectrum() {
        let s = adjacency_spectrum(&k4()).unwrap();
        assert!(close(&s.eigenvalues, &[-1.0, -1.0, -1.0, 3.0], 1e-12));
        assert!((smallest_eigenvalue(&k4()).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn cycles_match_cosines() {
        for n in 3..40 {
            let s = adjacency_spectrum(&cycle(n)).unwrap();
            let mut want: Vec<f64> =
                (0..n).map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos()).collect();
            want.sort_by(|a, b| a.total_cmp(b));
            assert!(close(&s.eigenvalues, &want, 1e-10), "C{n}");
        }
    }

    #[test]
    fn buckminsterfullerene_minimum() {
        let f = icosahedral_fullerene(GeodesicSpec::new(1).unwrap());
        let s = adjacency_spectrum(f.graph()).unwrap();
        assert!((s.min() + PHI * PHI).abs() < 1e-9);
        assert!((s.max() - 3.0).abs() < 1e-9);
        assert!(s.trace().abs() < 60.0 * 1e-8);
        let lap = laplacian_spectrum(f.graph()).unwrap();
        assert!((lap.max() - (3.0 - s.min())).abs() < 1e-8);
        assert!((lap.trace() - 180.0).abs() < 1e-8);
        assert!(s.min() <= lambda_min_bound(60));
        assert!((lambda_min_bound(60) + 2.2).abs() < 1e-12);
    }

    #[test]
    fn maxcut_on_classics() {
        for f in [dodecahedron(), icosahedral_fullerene(GeodesicSpec::new(1).unwrap())] {
            let tr = odd_cycle_transversal(&f).unwrap();
            let c = maxcut_spectral_check(&f, &tr).unwrap();
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn closed_shell_small_cases() {
        let edge = EmbeddedGraph::from_rotation(vec![vec![1], vec![0]]).unwrap();
        let c = closed_shell_check(&edge, &[], DEFAULT_TOLERANCE).unwrap();
        assert_eq!(c.verdict, ShellVerdict::True);
        let tri = cycle(3);
        let c = closed_shell_check(&tri, &[], DEFAULT_TOLERANCE).unwrap();
        assert_eq!((c.verdict, c.odd_remainder), (ShellVerdict::False, true));
        let c4 = cycle(4);
        assert_eq!(closed_shell_check(&c4, &[], DEFAULT_TOLERANCE).unwrap().verdict, ShellVerdict::Indeterminate);
        assert_eq!(
            closed_shell_check(&c4, &[0, 1], DEFAULT_TOLERANCE),
            Err(SpectraError::NotIndependent(0, 1))
        );
        assert_eq!(closed_shell_check(&c4, &[0], DEFAULT_TOLERANCE).unwrap().remaining, 3);
    }

    #[test]
    fn guards() {
        assert_eq!(Spectrum::new(vec![], 0.0), Err(SpectraError::BadTolerance));
        assert_eq!(symmetric_eigenvalues(&SymMatrix::zeros(MAX_ORDER + 1)), Err(SpectraError::TooLarge(MAX_ORDER + 1)));
        assert!(symmetric_eigenvalues(&SymMatrix::zeros(0)).unwrap().is_empty());
    }

    #[test]
    fn matches_nalgebra_on_geodesic_duals() {
        let t = crate::goldberg::icosahedral_dual(GeodesicSpec::new(2).unwrap());
        let m = adjacency_matrix(t.graph());
        let ours = symmetric_eigenvalues(&m).unwrap();
        let n = m.n();
        let dm = nalgebra::DMatrix::from_fn(n, n, |i, j| m.get(i, j));
        let mut theirs: Vec<f64> = dm.symmetric_eigenvalues().iter().copied().collect();
        theirs.sort_by(|a, b| a.total_cmp(b));
        assert!(close(&ours, &theirs, 1e-9));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn random_symmetric_matrices(n in 1usize..25, seed in proptest::collection::vec(-5.0f64..5.0, 625)) {
            let mut m = SymMatrix::zeros(n);
            for i in 0..n {
                for j in i..n {
                    m.set(i, j, seed[i * 25 + j]);
                }
            }
            let ours = symmetric_eigenvalues(&m).unwrap();
            let dm = nalgebra::DMatrix::from_fn(n, n, |i, j| m.get(i, j));
            let mut theirs: Vec<f64> = dm.symmetric_eigenvalues().iter().copied().collect();
            theirs.sort_by(|a, b| a.total_cmp(b));
            prop_assert!(close(&ours, &theirs, 1e-9));
        }
    }
}
