//! The Walker metric data type: matrix assembly, exact inverse, Christoffel
//! symbols, the adapted null frame and the recurrence 1-form.
//!
//! Index convention throughout: slot 0 is `x`, slots `1..=n` are `y_i`, slot
//! `n+1` is `z`. The stored `u_i` IS the metric component `h(d/dy_i, d/dz)`,
//! i.e. the metric reads `2 dx dz + f dz^2 + 2 sum u_i dy_i dz + sum g_ij dy_i dy_j`.

use crate::error::CoreError;
use crate::poly::{Polynomial, Var};

#[derive(Clone, PartialEq, Debug)]
pub struct WalkerMetric {
    n: usize,
    f: Polynomial,
    u: Vec<Polynomial>,
    /// None means the identity fiber metric g = delta.
    g: Option<Vec<Vec<Polynomial>>>,
}

impl WalkerMetric {
    /// n >= 1; u_i and g_ij must not depend on x; g symmetric.
    pub fn new(n: usize, f: Polynomial, u: Vec<Polynomial>, g: Option<Vec<Vec<Polynomial>>>) -> Result<Self, CoreError> {
        if n < 1 {
            return Err(CoreError::ShapeMismatch("fiber dimension n must be >= 1".into()));
        }
        if f.n() != n || u.len() != n || u.iter().any(|p| p.n() != n) {
            return Err(CoreError::ShapeMismatch(format!(
                "metric data must live on the n={n} chart"
            )));
        }
        for (i, ui) in u.iter().enumerate() {
            if ui.depends_on(Var::X) {
                return Err(CoreError::DependsOnX(format!("u{}", i + 1)));
            }
        }
        if let Some(g) = &g {
            if g.len() != n || g.iter().any(|row| row.len() != n) {
                return Err(CoreError::ShapeMismatch("g must be n x n".into()));
            }
            for i in 0..n {
                for j in 0..n {
                    if g[i][j] != g[j][i] {
                        return Err(CoreError::ShapeMismatch(format!("g is not symmetric at ({i},{j})")));
                    }
                    if g[i][j].depends_on(Var::X) {
                        return Err(CoreError::DependsOnX(format!("g{}{}", i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(WalkerMetric { n, f, u, g })
    }

    /// Flat-screen metric (g = delta) from f and u.
    pub fn flat_screen(n: usize, f: Polynomial, u: Vec<Polynomial>) -> Result<Self, CoreError> {
        WalkerMetric::new(n, f, u, None)
    }

    /// The flat Minkowski metric in Walker form.
    pub fn flat(n: usize) -> Self {
        WalkerMetric {
            n,
            f: Polynomial::zero(n),
            u: vec![Polynomial::zero(n); n],
            g: None,
        }
    }

    /// pp-wave form: f only, u = 0, g = delta.
    pub fn pp_form(n: usize, f: Polynomial) -> Result<Self, CoreError> {
        WalkerMetric::new(n, f, vec![Polynomial::zero(n); n], None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 2
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn u(&self) -> &[Polynomial] {
        &self.u
    }

    pub fn has_identity_fiber(&self) -> bool {
        match &self.g {
            None => true,
            Some(g) => {
                let n = self.n;
                (0..n).all(|i| {
                    (0..n).all(|j| {
                        if i == j {
                            g[i][j] == Polynomial::one(n)
                        } else {
                            g[i][j].is_zero()
                        }
                    })
                })
            }
        }
    }

    pub fn g(&self, i: usize, j: usize) -> Polynomial {
        match &self.g {
            None => {
                if i == j {
                    Polynomial::one(self.n)
                } else {
                    Polynomial::zero(self.n)
                }
            }
            Some(g) => g[i][j].clone(),
        }
    }

    /// Slot index of the x coordinate.
    pub fn ix(&self) -> usize {
        0
    }

    /// Slot index of y_i (1-based i).
    pub fn iy(&self, i: usize) -> usize {
        i
    }

    /// Slot index of the z coordinate.
    pub fn iz(&self) -> usize {
        self.n + 1
    }

    pub fn var(&self, slot: usize) -> Var {
        Var::from_index(slot, self.n)
    }

    /// Largest total degree among f and the u_i; drives the default holonomy
    /// derivative order.
    pub fn max_degree(&self) -> u32 {
        self.u
            .iter()
            .map(|p| p.total_degree())
            .chain(std::iter::once(self.f.total_degree()))
            .max()
            .unwrap_or(0)
    }
}

/// The (n+2)x(n+2) symmetric polynomial matrix of the metric.
pub fn metric_matrix(w: &WalkerMetric) -> Vec<Vec<Polynomial>> {
    let n = w.n();
    let d = w.dim();
    let mut h = vec![vec![Polynomial::zero(n); d]; d];
    h[0][n + 1] = Polynomial::one(n);
    h[n + 1][0] = Polynomial::one(n);
    h[n + 1][n + 1] = w.f().clone();
    for i in 1..=n {
        h[i][n + 1] = w.u()[i - 1].clone();
        h[n + 1][i] = w.u()[i - 1].clone();
        for j in 1..=n {
            h[i][j] = w.g(i - 1, j - 1);
        }
    }
    h
}

/// Exact polynomial inverse; requires the identity fiber metric.
///
/// For g = delta: h^xx = sum u_i^2 - f, h^{x y_i} = -u_i, h^xz = 1,
/// h^{y_i y_j} = delta_ij, everything else 0.
pub fn inverse_metric(w: &WalkerMetric) -> Result<Vec<Vec<Polynomial>>, CoreError> {
    if !w.has_identity_fiber() {
        return Err(CoreError::GeneralFiberMetric);
    }
    let n = w.n();
    let d = w.dim();
    let mut inv = vec![vec![Polynomial::zero(n); d]; d];
    let mut hxx = w.f().neg();
    for ui in w.u() {
        hxx = hxx.add(&ui.mul(ui));
    }
    inv[0][0] = hxx;
    inv[0][n + 1] = Polynomial::one(n);
    inv[n + 1][0] = Polynomial::one(n);
    for i in 1..=n {
        inv[0][i] = w.u()[i - 1].neg();
        inv[i][0] = w.u()[i - 1].neg();
        inv[i][i] = Polynomial::one(n);
    }
    Ok(inv)
}

/// Christoffel symbols Gamma^k_{ij}, dense over (k, i, j), symmetric in (i, j).
pub fn christoffel(w: &WalkerMetric) -> Result<Vec<Vec<Vec<Polynomial>>>, CoreError> {
    let inv = inverse_metric(w)?;
    let h = metric_matrix(w);
    let n = w.n();
    let d = w.dim();
    let half = crate::scalar::Scalar::from_frac(1, 2);
    // lowered symbols Gamma_{l,ij} = 1/2 (d_i h_jl + d_j h_il - d_l h_ij)
    let mut lowered = vec![vec![vec![Polynomial::zero(n); d]; d]; d];
    for l in 0..d {
        for i in 0..d {
            for j in i..d {
                let p = h[j][l]
                    .diff(w.var(i))
                    .add(&h[i][l].diff(w.var(j)))
                    .sub(&h[i][j].diff(w.var(l)))
                    .scale(&half);
                lowered[l][i][j] = p.clone();
                lowered[l][j][i] = p;
            }
        }
    }
    let mut gamma = vec![vec![vec![Polynomial::zero(n); d]; d]; d];
    for k in 0..d {
        for i in 0..d {
            for j in i..d {
                let mut p = Polynomial::zero(n);
                for l in 0..d {
                    if inv[k][l].is_zero() || lowered[l][i][j].is_zero() {
                        continue;
                    }
                    p = p.add(&inv[k][l].mul(&lowered[l][i][j]));
                }
                gamma[k][i][j] = p.clone();
                gamma[k][j][i] = p;
            }
        }
    }
    Ok(gamma)
}

/// The adapted null frame X = d/dx, Z = d/dz - (f/2) d/dx, E_i = d/dy_i - u_i d/dx.
/// Vectors are stored as polynomial coefficient columns over the coordinate basis.
#[derive(Clone, Debug)]
pub struct AdaptedFrame {
    pub n: usize,
    /// columns: frame vectors in coordinate components; order X, E_1..E_n, Z
    pub columns: Vec<Vec<Polynomial>>,
}

impl AdaptedFrame {
    pub fn x(&self) -> &[Polynomial] {
        &self.columns[0]
    }

    pub fn e(&self, i: usize) -> &[Polynomial] {
        &self.columns[i]
    }

    pub fn z(&self) -> &[Polynomial] {
        &self.columns[self.n + 1]
    }
}

pub fn adapted_frame(w: &WalkerMetric) -> Result<AdaptedFrame, CoreError> {
    if !w.has_identity_fiber() {
        return Err(CoreError::GeneralFiberMetric);
    }
    let n = w.n();
    let d = w.dim();
    let mut columns = vec![vec![Polynomial::zero(n); d]; d];
    columns[0][0] = Polynomial::one(n); // X
    for i in 1..=n {
        columns[i][i] = Polynomial::one(n); // E_i
        columns[i][0] = w.u()[i - 1].neg();
    }
    columns[n + 1][n + 1] = Polynomial::one(n); // Z
    columns[n + 1][0] = w.f().neg().scale(&crate::scalar::Scalar::from_frac(1, 2));
    Ok(AdaptedFrame { n, columns })
}

/// Symbolic contraction h(v, w) for coefficient-column vectors.
pub fn pair(h: &[Vec<Polynomial>], v: &[Polynomial], w: &[Polynomial]) -> Polynomial {
    let n = h.len() - 2;
    let mut acc = Polynomial::zero(n);
    for (a, va) in v.iter().enumerate() {
        if va.is_zero() {
            continue;
        }
        for (b, wb) in w.iter().enumerate() {
            if wb.is_zero() || h[a][b].is_zero() {
                continue;
            }
            acc = acc.add(&va.mul(wb).mul(&h[a][b]));
        }
    }
    acc
}

/// The 1-form Theta with nabla(d/dx) = Theta (x) d/dx; Theta = (1/2)(df/dx) dz.
#[derive(Clone, PartialEq, Debug)]
pub struct RecurrenceForm {
    /// components over (x, y_1..y_n, z); only the dz slot can be nonzero
    pub components: Vec<Polynomial>,
}

impl RecurrenceForm {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }
}

pub fn recurrence_form(w: &WalkerMetric) -> RecurrenceForm {
    let n = w.n();
    let mut components = vec![Polynomial::zero(n); w.dim()];
    components[n + 1] = w.f().diff(Var::X).scale(&crate::scalar::Scalar::from_frac(1, 2));
    RecurrenceForm { components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn flat_matrix_shape() {
        let w = WalkerMetric::flat(2);
        let h = metric_matrix(&w);
        // antidiagonal 2dxdz plus identity y-block
        assert_eq!(h[0][3], Polynomial::one(2));
        assert_eq!(h[1][1], Polynomial::one(2));
        assert_eq!(h[2][2], Polynomial::one(2));
        assert!(h[3][3].is_zero());
        assert!(h[0][0].is_zero());
    }

    #[test]
    fn ike96_component() {
        let n = 5;
        let u1 = p("-y3^2 - 4*y4^2 - y5^2", n);
        let mut u = vec![Polynomial::zero(n); n];
        u[0] = u1.clone();
        let w = WalkerMetric::flat_screen(n, Polynomial::zero(n), u).unwrap();
        let h = metric_matrix(&w);
        assert_eq!(h[1][6], u1);
    }

    #[test]
    fn pp_form_component() {
        let w = WalkerMetric::pp_form(1, p("y1^2", 1)).unwrap();
        let h = metric_matrix(&w);
        assert_eq!(h[2][2], p("y1^2", 1));
    }

    #[test]
    fn inverse_is_exact() {
        let n = 2;
        let mut u = vec![Polynomial::zero(n); n];
        u[0] = p("y2", n);
        for w in [
            WalkerMetric::flat(n),
            WalkerMetric::pp_form(n, p("y1^2", n)).unwrap(),
            WalkerMetric::flat_screen(n, Polynomial::zero(n), u).unwrap(),
        ] {
            let h = metric_matrix(&w);
            let inv = inverse_metric(&w).unwrap();
            let d = w.dim();
            for i in 0..d {
                for j in 0..d {
                    let mut acc = Polynomial::zero(n);
                    for k in 0..d {
                        acc = acc.add(&h[i][k].mul(&inv[k][j]));
                    }
                    let expected = if i == j { Polynomial::one(n) } else { Polynomial::zero(n) };
                    assert_eq!(acc, expected, "product entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn inverse_closed_form() {
        let n = 2;
        let w = WalkerMetric::pp_form(n, p("y1^2", n)).unwrap();
        let inv = inverse_metric(&w).unwrap();
        assert_eq!(inv[0][0], p("-y1^2", n));
        let mut u = vec![Polynomial::zero(n); n];
        u[0] = p("y2", n);
        let w = WalkerMetric::flat_screen(n, Polynomial::zero(n), u).unwrap();
        let inv = inverse_metric(&w).unwrap();
        assert_eq!(inv[0][0], p("y2^2", n));
        assert_eq!(inv[0][1], p("-y2", n));
    }

    #[test]
    fn general_fiber_rejected() {
        let n = 1;
        let g = vec![vec![p("1 + y1^2", n)]];
        let w = WalkerMetric::new(n, Polynomial::zero(n), vec![Polynomial::zero(n)], Some(g)).unwrap();
        assert!(matches!(inverse_metric(&w), Err(CoreError::GeneralFiberMetric)));
    }

    #[test]
    fn christoffel_flat_and_pp() {
        let n = 2;
        assert!(christoffel(&WalkerMetric::flat(n))
            .unwrap()
            .iter()
            .flatten()
            .flatten()
            .all(Polynomial::is_zero));

        // f = f(y,z), u = 0: Gamma^x_zz = 1/2 df/dz, Gamma^{y_i}_zz = -1/2 df/dy_i,
        // Gamma^x_{y_i z} = 1/2 df/dy_i
        let f = p("y1^2*z + y2^3", n);
        let w = WalkerMetric::pp_form(n, f.clone()).unwrap();
        let g = christoffel(&w).unwrap();
        let half = crate::scalar::Scalar::from_frac(1, 2);
        let z = w.iz();
        assert_eq!(g[0][z][z], f.diff(Var::Z).scale(&half));
        for i in 1..=n {
            assert_eq!(g[i][z][z], f.diff(Var::Y(i)).scale(&half).neg());
            assert_eq!(g[0][i][z], f.diff(Var::Y(i)).scale(&half));
        }
    }

    #[test]
    fn christoffel_x_dependent_f() {
        let n = 1;
        let f = p("x*y1^2", n);
        let w = WalkerMetric::pp_form(n, f.clone()).unwrap();
        let g = christoffel(&w).unwrap();
        let half = crate::scalar::Scalar::from_frac(1, 2);
        assert_eq!(g[0][0][w.iz()], f.diff(Var::X).scale(&half));
    }

    #[test]
    fn metric_compatibility() {
        let n = 2;
        let mut u = vec![Polynomial::zero(n); n];
        u[0] = p("y2^2*z", n);
        let w = WalkerMetric::flat_screen(n, p("y1^3 + z*y2", n), u).unwrap();
        let h = metric_matrix(&w);
        let gamma = christoffel(&w).unwrap();
        let d = w.dim();
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    // d_k h_ij - Gamma^l_{ki} h_lj - Gamma^l_{kj} h_il = 0
                    let mut acc = h[i][j].diff(w.var(k));
                    for l in 0..d {
                        acc = acc.sub(&gamma[l][k][i].mul(&h[l][j]));
                        acc = acc.sub(&gamma[l][k][j].mul(&h[i][l]));
                    }
                    assert!(acc.is_zero(), "nabla h != 0 at ({k},{i},{j})");
                }
            }
        }
    }

    #[test]
    fn parallel_line_field() {
        // Gamma^a_{x b} = 0 for a != x
        let n = 2;
        let w = WalkerMetric::flat_screen(n, p("x*y1^2 + z", n), vec![p("y2", n), Polynomial::zero(n)]).unwrap();
        let gamma = christoffel(&w).unwrap();
        let d = w.dim();
        for a in 1..d {
            for b in 0..d {
                assert!(gamma[a][0][b].is_zero(), "Gamma^{a}_(x,{b}) nonzero");
            }
        }
    }

    #[test]
    fn frame_invariants() {
        let n = 5;
        let mut u = vec![Polynomial::zero(n); n];
        u[0] = p("-y3^2 - 4*y4^2 - y5^2", n);
        u[2] = p("-2*sqrt3*y2*y3 - 2*y4*y5", n);
        u[4] = p("2*sqrt3*y2*y5 + 2*y3*y4", n);
        let w = WalkerMetric::flat_screen(n, p("y1^2", n), u.clone()).unwrap();
        let h = metric_matrix(&w);
        let fr = adapted_frame(&w).unwrap();
        // E_1 = d/dy1 - u_1 d/dx
        assert_eq!(fr.e(1)[0], u[0].neg());
        // all frame pairings, symbolically
        assert!(pair(&h, fr.x(), fr.x()).is_zero());
        assert_eq!(pair(&h, fr.x(), fr.z()), Polynomial::one(n));
        assert!(pair(&h, fr.z(), fr.z()).is_zero());
        for i in 1..=n {
            assert!(pair(&h, fr.x(), fr.e(i)).is_zero());
            assert!(pair(&h, fr.z(), fr.e(i)).is_zero());
            for j in 1..=n {
                let expected = if i == j { Polynomial::one(n) } else { Polynomial::zero(n) };
                assert_eq!(pair(&h, fr.e(i), fr.e(j)), expected);
            }
        }
    }

    #[test]
    fn recurrence_form_cases() {
        let n = 1;
        assert!(recurrence_form(&WalkerMetric::pp_form(n, p("y1^2", n)).unwrap()).is_zero());
        assert!(recurrence_form(&WalkerMetric::flat(n)).is_zero());
        let theta = recurrence_form(&WalkerMetric::pp_form(n, p("x*y1^2", n)).unwrap());
        assert_eq!(theta.components[2], p("1/2*y1^2", n));
        assert!(theta.components[0].is_zero());
        assert!(theta.components[1].is_zero());
    }

    #[test]
    fn x_dependent_u_rejected() {
        let n = 1;
        assert!(matches!(
            WalkerMetric::flat_screen(n, Polynomial::zero(n), vec![p("x*y1", n)]),
            Err(CoreError::DependsOnX(_))
        ));
    }
}
