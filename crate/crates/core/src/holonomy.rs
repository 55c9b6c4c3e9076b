//! Infinitesimal holonomy of Walker metrics: exact spans of curvature
//! derivatives evaluated at a point, projected into the parabolic algebra
//! p = (R + so(n)) |x R^n, together with the so(n) screen projection and
//! algebraic property detection (abelian / solvable / 2-step / irreducible).
//!
//! All metrics here are polynomial, hence real-analytic, so the holonomy
//! algebra is generated by the covariant derivatives of the curvature tensor
//! at a single point; the loop-transport oracle in `numeric` provides an
//! independent lower-bound check.

use crate::error::CoreError;
use crate::linalg::{QMatrix, SpanBasis};
use crate::metric::{christoffel, WalkerMetric};
use crate::scalar::Scalar;
use crate::tensor::{cov_deriv_with, riemann, Tensor};

/// Element (a, A, v) of the parabolic algebra p = (R + so(n)) |x R^n, i.e.
/// the block matrix (a, v^t, 0; 0, A, v; 0, 0, -a) in the adapted frame
/// (X, E_1..E_n, Z).
#[derive(Clone, Debug, PartialEq)]
pub struct ParabolicElement {
    pub a: Scalar,
    pub rot: QMatrix,
    pub v: Vec<Scalar>,
}

impl ParabolicElement {
    pub fn zero(n: usize) -> Self {
        ParabolicElement {
            a: Scalar::zero(),
            rot: QMatrix::zeros(n, n),
            v: vec![Scalar::zero(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.rot.is_zero() && self.v.iter().all(Scalar::is_zero)
    }

    /// [(a,A,x),(b,B,y)] = (0, [A,B], (A + a Id) y - (B + b Id) x).
    pub fn bracket(&self, other: &ParabolicElement) -> ParabolicElement {
        let n = self.n();
        let rot = self.rot.commutator(&other.rot);
        let mut v = vec![Scalar::zero(); n];
        for i in 0..n {
            let mut acc = &(&self.a * &other.v[i]) - &(&other.a * &self.v[i]);
            for j in 0..n {
                acc = &acc + &(&self.rot[(i, j)] * &other.v[j]);
                acc = &acc - &(&other.rot[(i, j)] * &self.v[j]);
            }
            v[i] = acc;
        }
        ParabolicElement {
            a: Scalar::zero(),
            rot,
            v,
        }
    }

    /// The (n+2)x(n+2) matrix in the adapted frame basis (X, E_1..E_n, Z).
    pub fn to_matrix(&self) -> QMatrix {
        let n = self.n();
        let mut m = QMatrix::zeros(n + 2, n + 2);
        m[(0, 0)] = self.a.clone();
        m[(n + 1, n + 1)] = -&self.a;
        for i in 0..n {
            m[(0, i + 1)] = self.v[i].clone();
            m[(i + 1, n + 1)] = self.v[i].clone();
            for j in 0..n {
                m[(i + 1, j + 1)] = self.rot[(i, j)].clone();
            }
        }
        m
    }

    /// Flattened coordinates (a, A entries, v entries) for span arithmetic.
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(1 + self.n() * self.n() + self.n());
        out.push(self.a.clone());
        out.extend(self.rot.flatten());
        out.extend(self.v.iter().cloned());
        out
    }
}

/// A spanning set of the so(n) screen holonomy algebra.
#[derive(Clone, Debug)]
pub struct ScreenAlgebra {
    pub generators: Vec<QMatrix>,
    pub dim: usize,
}

impl ScreenAlgebra {
    pub fn n(&self) -> usize {
        self.generators.first().map_or(0, |g| g.rows)
    }

    /// Brackets of generators stay in the span (exactly).
    pub fn is_bracket_closed(&self) -> bool {
        let mut span = SpanBasis::new(self.n() * self.n());
        for g in &self.generators {
            span.insert(g.flatten());
        }
        self.generators.iter().enumerate().all(|(i, g)| {
            self.generators[i..]
                .iter()
                .all(|h| span.contains(&g.commutator(h).flatten()))
        })
    }
}

/// Result of the curvature-derivative holonomy computation.
#[derive(Clone, Debug)]
pub struct HolonomySpan {
    pub full: Vec<ParabolicElement>,
    pub screen: ScreenAlgebra,
    /// False when the span was still growing at `max_order`; the result is
    /// then only a lower bound.
    pub stabilized: bool,
    /// Highest derivative order that was actually evaluated.
    pub orders_used: usize,
}

/// The so(n) part of a curvature-derivative endomorphism: entry (i,j) is
/// h((nabla^m R)(d_a, d_b; dirs) E_j, E_i) at `point`, where `t` is the
/// rank-(4+m) lowered derivative tensor with derivative slots appended last.
pub fn screen_projection(
    w: &WalkerMetric,
    t: &Tensor,
    uv: (usize, usize),
    dirs: &[u8],
    point: &[Scalar],
) -> Result<QMatrix, CoreError> {
    let (element, _) = extract_element(w, t, uv, dirs, point)?;
    Ok(element.rot)
}

/// Extract the full parabolic element of an evaluated curvature derivative.
fn extract_element(
    w: &WalkerMetric,
    t: &Tensor,
    uv: (usize, usize),
    dirs: &[u8],
    point: &[Scalar],
) -> Result<(ParabolicElement, ()), CoreError> {
    let n = w.n();
    if point.len() != w.dim() {
        return Err(CoreError::ShapeMismatch(format!(
            "point has {} coordinates, metric needs {}",
            point.len(),
            w.dim()
        )));
    }
    let (a_idx, b_idx) = (uv.0 as u8, uv.1 as u8);
    let z = w.iz() as u8;
    let comp = |c: u8, d: u8| -> Scalar {
        let mut idx = vec![a_idx, b_idx, c, d];
        idx.extend_from_slice(dirs);
        t.get(&idx).eval(point)
    };
    let u_at: Vec<Scalar> = w.u().iter().map(|p| p.eval(point)).collect();
    let f_half = w.f().eval(point) * Scalar::from_frac(1, 2);

    // a = h(R X, Z) with X = d/dx, Z = d/dz - (f/2) d/dx
    let a = comp(0, z);

    // A_ij = h(R E_j, E_i), E_i = d/dy_i - u_i d/dx
    let rot = QMatrix::from_fn(n, n, |i, j| {
        let mut acc = comp((j + 1) as u8, (i + 1) as u8);
        acc = &acc - &(&u_at[i] * &comp((j + 1) as u8, 0));
        acc = &acc - &(&u_at[j] * &comp(0, (i + 1) as u8));
        &acc + &(&(&u_at[i] * &u_at[j]) * &comp(0, 0))
    });

    // v_j = h(R Z, E_j)
    let mut v = vec![Scalar::zero(); n];
    for j in 0..n {
        let mut acc = comp(z, (j + 1) as u8);
        acc = &acc - &(&u_at[j] * &comp(z, 0));
        acc = &acc - &(&f_half * &comp(0, (j + 1) as u8));
        v[j] = &acc + &(&(&f_half * &u_at[j]) * &comp(0, 0));
    }
    Ok((ParabolicElement { a, rot, v }, ()))
}

/// Default derivative order bound: the span of a polynomial metric of total
/// degree d stops growing within about d orders; two extra orders give the
/// stabilization check room to confirm.
pub fn default_max_order(w: &WalkerMetric) -> usize {
    w.max_degree() as usize + 3
}

/// Span of the parabolic projections of nabla^m R at `point`, m = 0..max
/// with early stop once the span is stable for two consecutive orders.
pub fn infinitesimal_holonomy(
    w: &WalkerMetric,
    point: &[Scalar],
    max_order: Option<usize>,
) -> Result<HolonomySpan, CoreError> {
    let n = w.n();
    let max_order = max_order.unwrap_or_else(|| default_max_order(w));
    let gamma = christoffel(w)?;
    let mut full_span = SpanBasis::new(1 + n * n + n);
    let mut full: Vec<ParabolicElement> = Vec::new();
    let mut screen_span = SpanBasis::new(n * n);
    let mut screen: Vec<QMatrix> = Vec::new();

    let mut t = riemann(w)?;
    let mut stable_orders = 0usize;
    let mut stabilized = false;
    let mut orders_used = 0usize;
    for m in 0..=max_order {
        orders_used = m;
        let mut grew = false;
        // derivative-direction suffixes that actually occur
        let mut suffixes: Vec<Vec<u8>> = t.iter().map(|(k, _)| k[4..].to_vec()).collect();
        suffixes.sort();
        suffixes.dedup();
        for dirs in &suffixes {
            for a in 0..w.dim() {
                for b in (a + 1)..w.dim() {
                    let (el, ()) = extract_element(w, &t, (a, b), dirs, point)?;
                    if el.is_zero() {
                        continue;
                    }
                    if full_span.insert(el.flatten()) {
                        grew = true;
                        if !el.rot.is_zero() && screen_span.insert(el.rot.flatten()) {
                            screen.push(el.rot.clone());
                        }
                        full.push(el);
                    } else if !el.rot.is_zero() && screen_span.insert(el.rot.flatten()) {
                        grew = true;
                        screen.push(el.rot);
                    }
                }
            }
        }
        if grew {
            stable_orders = 0;
        } else {
            stable_orders += 1;
            if stable_orders >= 2 {
                stabilized = true;
                break;
            }
        }
        if m < max_order {
            t = cov_deriv_with(&t, w, &gamma);
        }
    }
    Ok(HolonomySpan {
        full,
        screen: ScreenAlgebra {
            dim: screen_span.dim(),
            generators: screen,
        },
        stabilized,
        orders_used,
    })
}

/// Algebraic properties of a matrix Lie algebra span, by exact arithmetic.
#[derive(Clone, Debug)]
pub struct AlgebraProps {
    pub dim: usize,
    pub abelian: bool,
    pub solvable: bool,
    /// h' != 0 and h'' = 0.
    pub two_step_solvable: bool,
    /// Commutant of the representation has dimension 1 (irreducible over R,
    /// with the usual complex-type caveat).
    pub irreducible: bool,
    pub commutant_dim: usize,
}

fn span_of(mats: &[QMatrix], width: usize) -> (SpanBasis, Vec<QMatrix>) {
    let mut span = SpanBasis::new(width);
    let mut basis = Vec::new();
    for m in mats {
        if span.insert(m.flatten()) {
            basis.push(m.clone());
        }
    }
    (span, basis)
}

/// Close a span under brackets (the generated Lie algebra).
fn bracket_closure(mats: &[QMatrix], width: usize) -> Vec<QMatrix> {
    let (mut span, mut basis) = span_of(mats, width);
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for b in &basis.clone() {
                let c = f.commutator(b);
                if span.insert(c.flatten()) {
                    next.push(c.clone());
                    basis.push(c);
                }
            }
        }
        frontier = next;
    }
    basis
}

fn derived(mats: &[QMatrix], width: usize) -> Vec<QMatrix> {
    let mut all = Vec::new();
    for (i, a) in mats.iter().enumerate() {
        for b in &mats[i + 1..] {
            all.push(a.commutator(b));
        }
    }
    // the derived algebra of a Lie algebra is again bracket-closed as a span
    span_of(&all, width).1
}

pub fn algebra_props(generators: &[QMatrix]) -> AlgebraProps {
    if generators.is_empty() {
        return AlgebraProps {
            dim: 0,
            abelian: true,
            solvable: true,
            two_step_solvable: false,
            irreducible: false,
            commutant_dim: 0,
        };
    }
    let d = generators[0].rows;
    let width = d * d;
    let algebra = bracket_closure(generators, width);
    let dim = algebra.len();

    let mut series = vec![algebra.clone()];
    loop {
        let next = derived(series.last().unwrap(), width);
        if next.is_empty() || next.len() == series.last().unwrap().len() {
            series.push(next);
            break;
        }
        series.push(next);
    }
    let solvable = series.last().unwrap().is_empty();
    let abelian = series.len() >= 2 && series[1].is_empty();
    let two_step_solvable =
        series.len() >= 3 && !series[1].is_empty() && series[2].is_empty();

    // commutant: matrices M with [M, g] = 0 for every generator
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in &algebra {
        // (gM - Mg)_{ij} = sum_k g_ik M_kj - M_ik g_kj = 0
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![Scalar::zero(); width];
                for k in 0..d {
                    row[k * d + j] = &row[k * d + j] + &g[(i, k)];
                    row[i * d + k] = &row[i * d + k] - &g[(k, j)];
                }
                rows.push(row);
            }
        }
    }
    let commutant_dim = QMatrix::from_rows(rows).kernel_basis().len();

    AlgebraProps {
        dim,
        abelian,
        solvable,
        two_step_solvable,
        irreducible: commutant_dim == 1,
        commutant_dim,
    }
}
