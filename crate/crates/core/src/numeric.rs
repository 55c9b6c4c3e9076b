//! Floating-point cross-validation of the symbolic engine: metric evaluation,
//! finite-difference curvature, and parallel-transport holonomy estimates
//! around coordinate rectangles.
//!
//! Everything here is deliberately independent of the symbolic curvature
//! pipeline: Christoffel symbols are recovered from central differences of the
//! metric components, and the metric is inverted numerically, so general
//! fiber metrics g are supported too.

use crate::error::CoreError;
use crate::metric::{adapted_frame, metric_matrix, WalkerMetric};
use crate::poly::Polynomial;

/// The metric, its inverse and Christoffel symbols evaluated at a point.
#[derive(Clone, Debug)]
pub struct EvaluatedMetric {
    pub point: Vec<f64>,
    pub matrix: Vec<Vec<f64>>,
    pub inverse: Vec<Vec<f64>>,
    pub christoffel: Vec<Vec<Vec<f64>>>,
}

impl EvaluatedMetric {
    /// Evaluate at `point`; `step` is the finite-difference step for the
    /// Christoffel symbols.
    pub fn at(w: &WalkerMetric, point: &[f64], step: f64) -> Result<Self, CoreError> {
        let d = w.dim();
        if point.len() != d {
            return Err(CoreError::ShapeMismatch(format!(
                "point has {} coordinates, metric needs {}",
                point.len(),
                d
            )));
        }
        let h = metric_matrix(w);
        let matrix = eval_matrix(&h, point);
        let inverse = invert(&matrix).ok_or_else(|| {
            CoreError::ShapeMismatch("metric is numerically singular at the given point".into())
        })?;
        let christoffel = gamma_at(&h, point, step)?;
        Ok(EvaluatedMetric {
            point: point.to_vec(),
            matrix,
            inverse,
            christoffel,
        })
    }
}

fn eval_matrix(h: &[Vec<Polynomial>], point: &[f64]) -> Vec<Vec<f64>> {
    h.iter()
        .map(|row| row.iter().map(|p| p.eval_f64(point)).collect())
        .collect()
}

/// Gauss-Jordan inverse; returns None on (near-)singular input.
fn invert(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let (pivot, mag) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if mag < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        let p = a[col][col];
        for v in a[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0.0 {
                let factor = a[r][col];
                for c in 0..2 * n {
                    let delta = factor * a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Christoffel symbols at a point from central differences of h.
fn gamma_at(h: &[Vec<Polynomial>], point: &[f64], step: f64) -> Result<Vec<Vec<Vec<f64>>>, CoreError> {
    let d = h.len();
    // dh[c][i][j] = d_c h_ij
    let mut dh = vec![vec![vec![0.0; d]; d]; d];
    for c in 0..d {
        let mut plus = point.to_vec();
        let mut minus = point.to_vec();
        plus[c] += step;
        minus[c] -= step;
        for i in 0..d {
            for j in 0..d {
                dh[c][i][j] = (h[i][j].eval_f64(&plus) - h[i][j].eval_f64(&minus)) / (2.0 * step);
            }
        }
    }
    let hm = eval_matrix(h, point);
    let inv = invert(&hm).ok_or_else(|| {
        CoreError::ShapeMismatch("metric is numerically singular at the given point".into())
    })?;
    let mut gamma = vec![vec![vec![0.0; d]; d]; d];
    for l in 0..d {
        for i in 0..d {
            for j in 0..d {
                let lowered = 0.5 * (dh[i][j][l] + dh[j][i][l] - dh[l][i][j]);
                for k in 0..d {
                    gamma[k][i][j] += inv[k][l] * lowered;
                }
            }
        }
    }
    Ok(gamma)
}

/// Central-difference approximation of the (4,0) curvature R_{abcd} at a
/// point, entirely from numerical derivatives of the metric components.
pub fn fd_curvature(w: &WalkerMetric, point: &[f64], step: f64) -> Result<Vec<Vec<Vec<Vec<f64>>>>, CoreError> {
    if step <= 0.0 {
        return Err(CoreError::ShapeMismatch("step must be positive".into()));
    }
    let d = w.dim();
    if point.len() != d {
        return Err(CoreError::ShapeMismatch(format!(
            "point has {} coordinates, metric needs {}",
            point.len(),
            d
        )));
    }
    let h = metric_matrix(w);
    // dgamma[a][k][i][j] = d_a Gamma^k_ij, central difference of gamma_at
    let mut dgamma = vec![vec![vec![vec![0.0; d]; d]; d]; d];
    for a in 0..d {
        let mut plus = point.to_vec();
        let mut minus = point.to_vec();
        plus[a] += step;
        minus[a] -= step;
        let gp = gamma_at(&h, &plus, step)?;
        let gm = gamma_at(&h, &minus, step)?;
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    dgamma[a][k][i][j] = (gp[k][i][j] - gm[k][i][j]) / (2.0 * step);
                }
            }
        }
    }
    let gamma = gamma_at(&h, point, step)?;
    let hm = eval_matrix(&h, point);
    let mut out = vec![vec![vec![vec![0.0; d]; d]; d]; d];
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let mut mixed = dgamma[a][e][b][c] - dgamma[b][e][a][c];
                    for m in 0..d {
                        mixed += gamma[e][a][m] * gamma[m][b][c] - gamma[e][b][m] * gamma[m][a][c];
                    }
                    for s in 0..d {
                        out[a][b][c][s] += mixed * hm[e][s];
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A coordinate rectangle loop for parallel transport.
#[derive(Clone, Debug)]
pub struct LoopSpec {
    /// Ordered pair of coordinate slot indices spanning the rectangle.
    pub plane: (usize, usize),
    pub center: Vec<f64>,
    /// Half side length of the rectangle.
    pub radius: f64,
    /// Integration steps per side.
    pub steps: usize,
    /// Step-halving agreement tolerance for convergence.
    pub tol: f64,
}

impl LoopSpec {
    pub fn new(plane: (usize, usize), center: Vec<f64>, radius: f64, steps: usize) -> Self {
        LoopSpec {
            plane,
            center,
            radius,
            steps,
            tol: 1e-8,
        }
    }

    fn validate(&self, dim: usize) -> Result<(), CoreError> {
        if self.center.len() != dim {
            return Err(CoreError::ShapeMismatch(format!(
                "loop center has {} coordinates, metric needs {}",
                self.center.len(),
                dim
            )));
        }
        if self.plane.0 >= dim || self.plane.1 >= dim || self.plane.0 == self.plane.1 {
            return Err(CoreError::InvalidIndexPair(self.plane.0, self.plane.1));
        }
        if !(self.radius > 0.0) {
            return Err(CoreError::ShapeMismatch("loop radius must be positive".into()));
        }
        if self.steps < 16 {
            return Err(CoreError::ShapeMismatch("loop needs at least 16 steps per side".into()));
        }
        Ok(())
    }

    /// Base point of the loop (the corner where transport starts and ends).
    pub fn base_point(&self) -> Vec<f64> {
        let mut p = self.center.clone();
        p[self.plane.0] -= self.radius;
        p[self.plane.1] -= self.radius;
        p
    }
}

/// Result of parallel transport around a loop.
#[derive(Clone, Debug)]
pub struct LoopTransport {
    /// Transport matrix in coordinate basis at the base point.
    pub matrix: Vec<Vec<f64>>,
    /// The n x n block of the transport in the adapted frame (X, E_i, Z),
    /// acting on the screen directions E_1..E_n.
    pub screen_block: Vec<Vec<f64>>,
    /// Antisymmetric part of (screen_block - identity); first-order estimate
    /// of the so(n) holonomy element generated by the loop.
    pub screen_log: Vec<Vec<f64>>,
    /// max |h(Mv, Mw) - h(v, w)| over coordinate basis pairs at the base
    /// point; parallel transport is an isometry, so this measures the
    /// integration error.
    pub isometry_defect: f64,
}

/// Parallel transport around the rectangle loop by classical 4th-order
/// Runge-Kutta, with a step-halving convergence check.
pub fn loop_transport(w: &WalkerMetric, spec: &LoopSpec) -> Result<LoopTransport, CoreError> {
    spec.validate(w.dim())?;
    let h = metric_matrix(w);
    let coarse = transport_once(&h, spec, spec.steps)?;
    let fine = transport_once(&h, spec, 2 * spec.steps)?;
    let mut disagreement = 0.0f64;
    for (rc, rf) in coarse.iter().zip(&fine) {
        for (a, b) in rc.iter().zip(rf) {
            disagreement = disagreement.max((a - b).abs());
        }
    }
    if disagreement > spec.tol {
        return Err(CoreError::NonConvergence(format!(
            "step halving changed the transport matrix by {disagreement:.3e} (tolerance {:.3e}); increase steps",
            spec.tol
        )));
    }
    let matrix = fine;
    let base = spec.base_point();

    // isometry defect against h at the base point
    let hm = eval_matrix(&h, &base);
    let d = w.dim();
    let mut defect = 0.0f64;
    for v in 0..d {
        for s in 0..d {
            let mut pairing = 0.0;
            for a in 0..d {
                for b in 0..d {
                    pairing += matrix[a][v] * hm[a][b] * matrix[b][s];
                }
            }
            defect = defect.max((pairing - hm[v][s]).abs());
        }
    }

    // conjugate into the adapted frame at the base point
    let frame = adapted_frame(w)?;
    let mut fmat = vec![vec![0.0; d]; d];
    for (col, column) in (0..d).map(|c| match c {
        0 => frame.x(),
        c if c <= w.n() => frame.e(c),
        _ => frame.z(),
    }).enumerate() {
        for (row, p) in column.iter().enumerate() {
            fmat[row][col] = p.eval_f64(&base);
        }
    }
    let finv = invert(&fmat)
        .ok_or_else(|| CoreError::ShapeMismatch("adapted frame is singular".into()))?;
    let mut framed = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..d {
            for a in 0..d {
                for b in 0..d {
                    framed[i][j] += finv[i][a] * matrix[a][b] * fmat[b][j];
                }
            }
        }
    }
    let n = w.n();
    let mut screen_block = vec![vec![0.0; n]; n];
    let mut screen_log = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            screen_block[i][j] = framed[i + 1][j + 1];
        }
    }
    for i in 0..n {
        for j in 0..n {
            let di = if i == j { 1.0 } else { 0.0 };
            let dj = di;
            screen_log[i][j] = 0.5 * ((screen_block[i][j] - di) - (screen_block[j][i] - dj));
        }
    }
    Ok(LoopTransport {
        matrix,
        screen_block,
        screen_log,
        isometry_defect: defect,
    })
}

fn transport_once(h: &[Vec<Polynomial>], spec: &LoopSpec, steps: usize) -> Result<Vec<Vec<f64>>, CoreError> {
    let d = h.len();
    let (pa, pb) = spec.plane;
    let r = spec.radius;
    let mut m: Vec<Vec<f64>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut pos = spec.base_point();
    // sides: +a, +b, -a, -b
    let sides = [(pa, 1.0), (pb, 1.0), (pa, -1.0), (pb, -1.0)];
    let fd_step = 1e-5;
    for &(axis, dir) in &sides {
        let len = 2.0 * r;
        let dt = len / steps as f64;
        let mut vel = vec![0.0; d];
        vel[axis] = dir;
        for s in 0..steps {
            let t0: Vec<f64> = {
                let mut p = pos.clone();
                p[axis] += dir * (s as f64) * dt;
                p
            };
            let mid = {
                let mut p = t0.clone();
                p[axis] += dir * dt / 2.0;
                p
            };
            let end = {
                let mut p = t0.clone();
                p[axis] += dir * dt;
                p
            };
            let g0 = gamma_at(h, &t0, fd_step)?;
            let gm = gamma_at(h, &mid, fd_step)?;
            let g1 = gamma_at(h, &end, fd_step)?;
            // dV/dt = A(t) V with A^k_m = -Gamma^k_{cm} v^c
            let a0 = gamma_to_rhs(&g0, &vel);
            let am = gamma_to_rhs(&gm, &vel);
            let a1 = gamma_to_rhs(&g1, &vel);
            m = rk4_step(&m, &a0, &am, &a1, dt);
        }
        pos[axis] += dir * len;
    }
    Ok(m)
}

fn gamma_to_rhs(gamma: &[Vec<Vec<f64>>], vel: &[f64]) -> Vec<Vec<f64>> {
    let d = vel.len();
    let mut a = vec![vec![0.0; d]; d];
    for k in 0..d {
        for mm in 0..d {
            for c in 0..d {
                if vel[c] != 0.0 {
                    a[k][mm] -= gamma[k][c][mm] * vel[c];
                }
            }
        }
    }
    a
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let d = a.len();
    let mut out = vec![vec![0.0; d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] != 0.0 {
                for j in 0..d {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

fn mat_axpy(y: &mut [Vec<f64>], alpha: f64, x: &[Vec<f64>]) {
    for (yr, xr) in y.iter_mut().zip(x) {
        for (yv, xv) in yr.iter_mut().zip(xr) {
            *yv += alpha * xv;
        }
    }
}

/// One RK4 step for M' = A(t) M given A at the start, middle and end.
fn rk4_step(m: &[Vec<f64>], a0: &[Vec<f64>], am: &[Vec<f64>], a1: &[Vec<f64>], dt: f64) -> Vec<Vec<f64>> {
    let k1 = mat_mul(a0, m);
    let mut m2 = m.to_vec();
    mat_axpy(&mut m2, dt / 2.0, &k1);
    let k2 = mat_mul(am, &m2);
    let mut m3 = m.to_vec();
    mat_axpy(&mut m3, dt / 2.0, &k2);
    let k3 = mat_mul(am, &m3);
    let mut m4 = m.to_vec();
    mat_axpy(&mut m4, dt, &k3);
    let k4 = mat_mul(a1, &m4);
    let mut out = m.to_vec();
    mat_axpy(&mut out, dt / 6.0, &k1);
    mat_axpy(&mut out, dt / 3.0, &k2);
    mat_axpy(&mut out, dt / 3.0, &k3);
    mat_axpy(&mut out, dt / 6.0, &k4);
    out
}

/// Least-squares residual (Frobenius norm) of `target` against the span of
/// `basis`; all matrices flattened row-major. Used for screen-membership
/// checks of numeric holonomy estimates.
pub fn span_residual(target: &[Vec<f64>], basis: &[Vec<Vec<f64>>]) -> f64 {
    let flat = |m: &[Vec<f64>]| -> Vec<f64> { m.iter().flatten().copied().collect() };
    let t = flat(target);
    if basis.is_empty() {
        return t.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    // Gram-Schmidt; near-dependent directions are dropped
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for m in basis {
        let mut v = flat(m);
        for q in &ortho {
            let dot: f64 = v.iter().zip(q).map(|(x, y)| x * y).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= dot * qi;
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-10 {
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            ortho.push(v);
        }
    }
    let mut resid = t;
    for q in &ortho {
        let dot: f64 = resid.iter().zip(q).map(|(x, y)| x * y).sum();
        for (ri, qi) in resid.iter_mut().zip(q) {
            *ri -= dot * qi;
        }
    }
    resid.iter().map(|v| v * v).sum::<f64>().sqrt()
}
