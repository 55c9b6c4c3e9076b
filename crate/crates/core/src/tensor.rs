//! Covariant tensors with polynomial components: Riemann and Ricci curvature,
//! covariant derivatives, generic metric-traced contraction and the flat
//! codifferential check for the Ricci-isotropy criterion.
//!
//! Curvature sign convention: `R(U,V)W = nabla_U nabla_V W - nabla_V nabla_U W
//! - nabla_[U,V] W` and `R(U,V,W,S) = h(R(U,V)W, S)`. Components are stored
//! sparsely; for Walker metrics almost all of them vanish.

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::metric::{christoffel, inverse_metric, metric_matrix, WalkerMetric};
use crate::poly::{Polynomial, Var};
use crate::scalar::Scalar;

/// Sparse covariant tensor on the (n+2)-dimensional Walker chart.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor {
    n: usize,
    rank: usize,
    comps: BTreeMap<Vec<u8>, Polynomial>,
}

impl Tensor {
    pub fn zero(n: usize, rank: usize) -> Self {
        Tensor {
            n,
            rank,
            comps: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 2
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn get(&self, idx: &[u8]) -> Polynomial {
        debug_assert_eq!(idx.len(), self.rank);
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.n))
    }

    pub fn set(&mut self, idx: Vec<u8>, p: Polynomial) {
        debug_assert_eq!(idx.len(), self.rank);
        if p.is_zero() {
            self.comps.remove(&idx);
        } else {
            self.comps.insert(idx, p);
        }
    }

    pub fn add_assign(&mut self, idx: Vec<u8>, p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        let cur = self.get(&idx);
        self.set(idx, cur.add(p));
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u8>, &Polynomial)> {
        self.comps.iter()
    }

    pub fn num_nonzero(&self) -> usize {
        self.comps.len()
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        assert_eq!((self.n, self.rank), (other.n, other.rank));
        let mut out = self.clone();
        for (k, p) in &other.comps {
            out.add_assign(k.clone(), &p.neg());
        }
        out
    }

    /// Outer product; `other` slots are appended after `self` slots.
    pub fn tensor_product(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.n, other.n);
        let mut out = Tensor::zero(self.n, self.rank + other.rank);
        for (k1, p1) in &self.comps {
            for (k2, p2) in &other.comps {
                let mut idx = k1.clone();
                idx.extend_from_slice(k2);
                out.add_assign(idx, &p1.mul(p2));
            }
        }
        out
    }

    /// Contract covariant slots `s1 < s2` with the inverse metric.
    pub fn contract_pair(&self, s1: usize, s2: usize, inv: &[Vec<Polynomial>]) -> Result<Tensor, CoreError> {
        if s1 >= self.rank || s2 >= self.rank || s1 == s2 {
            return Err(CoreError::InvalidIndexPair(s1, s2));
        }
        let (s1, s2) = (s1.min(s2), s1.max(s2));
        let mut out = Tensor::zero(self.n, self.rank - 2);
        for (k, p) in &self.comps {
            let a = k[s1] as usize;
            let b = k[s2] as usize;
            if inv[a][b].is_zero() {
                continue;
            }
            let mut idx = Vec::with_capacity(self.rank - 2);
            for (s, &i) in k.iter().enumerate() {
                if s != s1 && s != s2 {
                    idx.push(i);
                }
            }
            out.add_assign(idx, &p.mul(&inv[a][b]));
        }
        Ok(out)
    }

    /// Contract several 1-based slot pairs (as quoted trace conventions use);
    /// pairs refer to slots of `self` before any contraction.
    pub fn contract_pairs(&self, pairs: &[(usize, usize)], inv: &[Vec<Polynomial>]) -> Result<Tensor, CoreError> {
        // map 1-based original slots to current slots as pairs are removed
        let mut remaining: Vec<usize> = (0..self.rank).collect();
        let mut t = self.clone();
        for &(p1, p2) in pairs {
            if p1 == 0 || p2 == 0 || p1 > self.rank || p2 > self.rank {
                return Err(CoreError::InvalidIndexPair(p1, p2));
            }
            let c1 = remaining
                .iter()
                .position(|&s| s == p1 - 1)
                .ok_or(CoreError::InvalidIndexPair(p1, p2))?;
            let c2 = remaining
                .iter()
                .position(|&s| s == p2 - 1)
                .ok_or(CoreError::InvalidIndexPair(p1, p2))?;
            t = t.contract_pair(c1, c2, inv)?;
            let (lo, hi) = (c1.min(c2), c1.max(c2));
            remaining.remove(hi);
            remaining.remove(lo);
        }
        Ok(t)
    }

    /// Full antisymmetrization over the given slots (no 1/k! normalization;
    /// vanishing is all that is ever tested).
    pub fn antisymmetrize(&self, slots: &[usize]) -> Tensor {
        let mut out = Tensor::zero(self.n, self.rank);
        let perms = permutations(slots.len());
        for (k, p) in &self.comps {
            for (perm, sign) in &perms {
                let mut idx = k.clone();
                for (pos, &src) in perm.iter().enumerate() {
                    idx[slots[pos]] = k[slots[src]];
                }
                let signed = if *sign > 0 { p.clone() } else { p.neg() };
                out.add_assign(idx, &signed);
            }
        }
        out
    }
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    fn build(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i32)>) {
        if rest.is_empty() {
            let mut inv = 0;
            for i in 0..prefix.len() {
                for j in (i + 1)..prefix.len() {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            build(prefix, rest, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    build(&mut Vec::new(), &mut (0..k).collect(), &mut out);
    out
}

/// The (4,0) Riemann curvature tensor R_{abcd} = h(R(d_a, d_b) d_c, d_d).
pub fn riemann(w: &WalkerMetric) -> Result<Tensor, CoreError> {
    let gamma = christoffel(w)?;
    let h = metric_matrix(w);
    let n = w.n();
    let d = w.dim();
    // mixed curvature R^e_{abc}: R(d_a, d_b) d_c = R^e_{abc} d_e
    let mut lowered = Tensor::zero(n, 4);
    for a in 0..d {
        for b in (a + 1)..d {
            for c in 0..d {
                for e in 0..d {
                    let mut comp = gamma[e][b][c].diff(w.var(a)).sub(&gamma[e][a][c].diff(w.var(b)));
                    for m in 0..d {
                        if !gamma[m][b][c].is_zero() && !gamma[e][a][m].is_zero() {
                            comp = comp.add(&gamma[e][a][m].mul(&gamma[m][b][c]));
                        }
                        if !gamma[m][a][c].is_zero() && !gamma[e][b][m].is_zero() {
                            comp = comp.sub(&gamma[e][b][m].mul(&gamma[m][a][c]));
                        }
                    }
                    if comp.is_zero() {
                        continue;
                    }
                    for s in 0..d {
                        if h[e][s].is_zero() {
                            continue;
                        }
                        let p = comp.mul(&h[e][s]);
                        lowered.add_assign(vec![a as u8, b as u8, c as u8, s as u8], &p);
                        lowered.add_assign(vec![b as u8, a as u8, c as u8, s as u8], &p.neg());
                    }
                }
            }
        }
    }
    Ok(lowered)
}

/// Covariant derivative; the new (direction) slot is appended last:
/// (nabla T)_{a1..ar,c} = d_c T_{a1..ar} - sum_m Gamma^d_{c a_m} T_{..d..}.
pub fn cov_deriv(t: &Tensor, w: &WalkerMetric) -> Result<Tensor, CoreError> {
    let gamma = christoffel(w)?;
    Ok(cov_deriv_with(t, w, &gamma))
}

/// Same as [`cov_deriv`] with precomputed Christoffel symbols.
pub fn cov_deriv_with(t: &Tensor, w: &WalkerMetric, gamma: &[Vec<Vec<Polynomial>>]) -> Tensor {
    let n = w.n();
    let d = w.dim();
    let mut out = Tensor::zero(n, t.rank() + 1);
    for (k, p) in t.iter() {
        for c in 0..d {
            let dp = p.diff(w.var(c));
            if !dp.is_zero() {
                let mut idx = k.clone();
                idx.push(c as u8);
                out.add_assign(idx, &dp);
            }
        }
        for (m, &am) in k.iter().enumerate() {
            // T entry with slot m equal to am feeds outputs with slot m = a,
            // weight -Gamma^{am}_{c a}
            for c in 0..d {
                for a in 0..d {
                    let g = &gamma[am as usize][c][a];
                    if g.is_zero() {
                        continue;
                    }
                    let mut idx = k.clone();
                    idx[m] = a as u8;
                    idx.push(c as u8);
                    out.add_assign(idx, &p.mul(g).neg());
                }
            }
        }
    }
    out
}

/// Ricci tensor Ric_{bc} = h^{ad} R_{abcd} (symmetric (n+2)x(n+2) matrix).
pub fn ricci(w: &WalkerMetric) -> Result<Vec<Vec<Polynomial>>, CoreError> {
    let r = riemann(w)?;
    let inv = inverse_metric(w)?;
    let tr = r.contract_pairs(&[(1, 4)], &inv)?;
    let d = w.dim();
    let mut out = vec![vec![Polynomial::zero(w.n()); d]; d];
    for (k, p) in tr.iter() {
        out[k[0] as usize][k[1] as usize] = p.clone();
    }
    Ok(out)
}

/// The z-family of 1-forms phi = sum u_k dy_k read on flat R^n.
#[derive(Clone, Debug)]
pub struct PhiFamily {
    pub n: usize,
    pub components: Vec<Polynomial>,
}

impl PhiFamily {
    pub fn of(w: &WalkerMetric) -> Self {
        PhiFamily {
            n: w.n(),
            components: w.u().to_vec(),
        }
    }

    /// d(phi) component pairs (i, j) with d_i u_j - d_j u_i != 0.
    pub fn closure_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                let d = self.components[j - 1]
                    .diff(Var::Y(i))
                    .sub(&self.components[i - 1].diff(Var::Y(j)));
                if !d.is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.closure_violations().is_empty()
    }
}

/// Components of the flat codifferential d*(d phi_z) on R^n, in the
/// normalization that makes component i equal Ric(d/dz, d/dy_i) of the
/// Brinkmann metric with these u_i exactly (verified symbolically against
/// [`ricci`]): component i = -1/2 sum_k (d_k d_k u_i - d_k d_i u_k).
pub fn codifferential_check(phi: &PhiFamily) -> Vec<Polynomial> {
    let n = phi.n;
    let half = Scalar::from_frac(1, 2);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let mut acc = Polynomial::zero(n);
        for k in 1..=n {
            let lap = phi.components[i - 1].diff(Var::Y(k)).diff(Var::Y(k));
            let mixed = phi.components[k - 1].diff(Var::Y(i)).diff(Var::Y(k));
            acc = acc.sub(&lap).add(&mixed);
        }
        out.push(acc.scale(&half));
    }
    out
}

/// Named trace conditions from the pp-wave theory. All use the (4,0)
/// curvature tensor and metric-traced slot pairs of R (x) R, slots 1..8.
pub struct TraceConditions;

impl TraceConditions {
    /// tr_{(3,5)(4,6)}(R (x) R); vanishes exactly on pp-waves.
    pub fn pp_trace(r: &Tensor, inv: &[Vec<Polynomial>]) -> Result<Tensor, CoreError> {
        r.tensor_product(r).contract_pairs(&[(3, 5), (4, 6)], inv)
    }

    /// ||R||^2 = tr_{(1,5)(2,6)(3,7)(4,8)}(R (x) R); a scalar.
    pub fn norm_squared(r: &Tensor, inv: &[Vec<Polynomial>]) -> Result<Polynomial, CoreError> {
        let t = r
            .tensor_product(r)
            .contract_pairs(&[(1, 5), (2, 6), (3, 7), (4, 8)], inv)?;
        Ok(t.get(&[]))
    }

    /// tr_{(1,5)(4,8)}(R (x) R); rank 4.
    pub fn phi_trace(r: &Tensor, inv: &[Vec<Polynomial>]) -> Result<Tensor, CoreError> {
        r.tensor_product(r).contract_pairs(&[(1, 5), (4, 8)], inv)
    }

    /// Lambda_{(1,2,3)}(xi (x) R) for xi = dz (the 1-form h(d/dx, .)).
    pub fn lambda_123(r: &Tensor, n: usize) -> Tensor {
        let mut xi = Tensor::zero(n, 1);
        xi.set(vec![(n + 1) as u8], Polynomial::one(n));
        xi.tensor_product(r).antisymmetrize(&[0, 1, 2])
    }
}
