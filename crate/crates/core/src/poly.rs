//! Sparse multivariate polynomials in the Walker chart variables
//! `x, y1..yn, z`, with exact `Scalar` coefficients.
//!
//! Canonical form: a term map with no zero coefficients; two polynomials are
//! equal iff the maps are equal. Printing uses graded-lexicographic order.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::CoreError;
use crate::scalar::Scalar;

/// A coordinate variable of the Walker chart on R^(n+2).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    X,
    /// 1-based fiber coordinate y_i
    Y(usize),
    Z,
}

impl Var {
    /// Slot in the exponent vector: x=0, y_i=i, z=n+1.
    pub fn index(self, n: usize) -> usize {
        match self {
            Var::X => 0,
            Var::Y(i) => {
                assert!(i >= 1 && i <= n, "y{i} out of range for n={n}");
                i
            }
            Var::Z => n + 1,
        }
    }

    pub fn from_index(idx: usize, n: usize) -> Var {
        if idx == 0 {
            Var::X
        } else if idx <= n {
            Var::Y(idx)
        } else if idx == n + 1 {
            Var::Z
        } else {
            panic!("variable index {idx} out of range for n={n}")
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::X => "x".into(),
            Var::Y(i) => format!("y{i}"),
            Var::Z => "z".into(),
        }
    }
}

pub type Mono = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Mono, Scalar>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut p = Polynomial::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n + 2], c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, Scalar::one())
    }

    pub fn int(n: usize, c: i64) -> Self {
        Polynomial::constant(n, Scalar::from_int(c))
    }

    pub fn var(n: usize, v: Var) -> Self {
        Polynomial::var_pow(n, v, 1)
    }

    pub fn var_pow(n: usize, v: Var, e: u32) -> Self {
        let mut p = Polynomial::zero(n);
        let mut mono = vec![0u32; n + 2];
        mono[v.index(n)] = e;
        p.terms.insert(mono, Scalar::one());
        p
    }

    /// Fiber dimension of the ambient chart (arity is n+2).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.n + 2
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&vec![0u32; self.n + 2])
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        let idx = v.index(self.n);
        self.terms.keys().map(|m| m[idx]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    pub fn add_term(&mut self, mono: Mono, c: Scalar) {
        assert_eq!(mono.len(), self.n + 2, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn check_arity(&self, other: &Polynomial) -> Result<(), CoreError> {
        if self.n != other.n {
            Err(CoreError::ArityMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_arity(other).expect("polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_arity(other).expect("polynomial arity mismatch");
        let mut out = Polynomial::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mono: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(mono, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, t)| (m.clone(), t * c)).collect(),
        }
    }

    /// Exact partial derivative.
    pub fn diff(&self, v: Var) -> Polynomial {
        let idx = v.index(self.n);
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let e = m[idx];
            if e == 0 {
                continue;
            }
            let mut mono = m.clone();
            mono[idx] = e - 1;
            out.add_term(mono, c * &Scalar::from_int(e as i64));
        }
        out
    }

    /// Antiderivative in `v` with no v-free terms: d(antideriv)/dv == self.
    pub fn antideriv(&self, v: Var) -> Polynomial {
        let idx = v.index(self.n);
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let mut mono = m.clone();
            mono[idx] += 1;
            let e = mono[idx] as i64;
            out.add_term(mono, c * &Scalar::from_frac(1, e));
        }
        out
    }

    /// Exact evaluation at a point given by one scalar per variable.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.n + 2, "evaluation point arity mismatch");
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in point.iter().zip(m.iter()) {
                for _ in 0..e {
                    t = &t * xi;
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.n + 2, "evaluation point arity mismatch");
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for (xi, &e) in point.iter().zip(m.iter()) {
                t *= xi.powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Substitute `value` for variable `v` (exact, polynomial value allowed).
    pub fn substitute(&self, v: Var, value: &Polynomial) -> Polynomial {
        self.check_arity(value).expect("polynomial arity mismatch");
        let idx = v.index(self.n);
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(self.n, c.clone());
            let mut mono = m.clone();
            let e = mono[idx];
            mono[idx] = 0;
            let mut base = Polynomial::zero(self.n);
            base.terms.insert(mono, Scalar::one());
            term = term.mul(&base);
            for _ in 0..e {
                term = term.mul(value);
            }
            out = out.add(&term);
        }
        out
    }
}

fn grlex(a: &Mono, b: &Mono) -> std::cmp::Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    db.cmp(&da).then_with(|| a.cmp(b))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // split each Q(sqrt3) coefficient into its rational and sqrt3 parts so
        // the printed form stays inside the term grammar
        let mut parts: Vec<(Mono, Scalar, bool)> = Vec::new();
        for (m, c) in &self.terms {
            if !c.a.is_zero() {
                let mut s = c.clone();
                s.b = num_traits::Zero::zero();
                parts.push((m.clone(), s, false));
            }
            if !c.b.is_zero() {
                let mut s = Scalar::zero();
                s.a = c.b.clone();
                parts.push((m.clone(), s, true));
            }
        }
        parts.sort_by(|x, y| grlex(&x.0, &y.0));
        for (i, (m, c, has_sqrt3)) in parts.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let trivial_coeff = mag.is_one();
            if !trivial_coeff {
                factors.push(format!("{}", mag.a));
            }
            if *has_sqrt3 {
                factors.push("sqrt3".into());
            }
            for (idx, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = Var::from_index(idx, self.n).name();
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Parse a polynomial in the text grammar: terms joined by `+`/`-`, each term
/// a `*`-product of an optional rational coefficient, an optional `sqrt3`
/// factor and variable powers `x^a`, `y3^2`, `z`.
pub fn parse_polynomial(input: &str, n: usize) -> Result<Polynomial, CoreError> {
    let s = input.trim();
    if s.is_empty() {
        return Err(CoreError::Parse("empty polynomial".into()));
    }
    let mut out = Polynomial::zero(n);
    // split on top-level + and - (no parentheses in the grammar)
    let chars: Vec<char> = s.chars().collect();
    let mut term_start = 0usize;
    let mut sign = 1i64;
    let mut i = 0usize;
    let flush = |start: usize, end: usize, sign: i64, out: &mut Polynomial| -> Result<(), CoreError> {
        let t = chars[start..end].iter().collect::<String>();
        let t = t.trim();
        if t.is_empty() {
            return Err(CoreError::Parse(format!("empty term in `{input}`")));
        }
        let (mono, coeff) = parse_term(t, n)?;
        out.add_term(mono, &coeff * &Scalar::from_int(sign));
        Ok(())
    };
    // leading sign
    if chars[0] == '-' {
        sign = -1;
        term_start = 1;
        i = 1;
    } else if chars[0] == '+' {
        term_start = 1;
        i = 1;
    }
    let mut prev_is_op = true;
    while i < chars.len() {
        let c = chars[i];
        if (c == '+' || c == '-') && !prev_is_op {
            // `e`-style exponents never occur; +/- always separate terms
            flush(term_start, i, sign, &mut out)?;
            sign = if c == '-' { -1 } else { 1 };
            term_start = i + 1;
            prev_is_op = true;
        } else if !c.is_whitespace() {
            prev_is_op = c == '*' || c == '^' || c == '/';
        }
        i += 1;
    }
    flush(term_start, chars.len(), sign, &mut out)?;
    Ok(out)
}

fn parse_term(t: &str, n: usize) -> Result<(Mono, Scalar), CoreError> {
    let mut mono = vec![0u32; n + 2];
    let mut coeff = Scalar::one();
    for raw in t.split('*') {
        let f = raw.trim();
        if f.is_empty() {
            return Err(CoreError::Parse(format!("empty factor in term `{t}`")));
        }
        if f == "sqrt3" {
            coeff = &coeff * &Scalar::sqrt3();
            continue;
        }
        let (base, exp) = match f.split_once('^') {
            Some((b, e)) => {
                let e: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| CoreError::Parse(format!("invalid exponent in `{f}`")))?;
                (b.trim(), e)
            }
            None => (f, 1),
        };
        if base.starts_with(|c: char| c.is_ascii_digit()) {
            // numeric coefficient, possibly a fraction
            let c = Scalar::parse_rational(base)?;
            let mut p = Scalar::one();
            for _ in 0..exp {
                p = &p * &c;
            }
            coeff = &coeff * &p;
        } else if base == "x" {
            mono[0] += exp;
        } else if base == "z" {
            mono[n + 1] += exp;
        } else if let Some(num) = base.strip_prefix('y') {
            let i: usize = num
                .parse()
                .map_err(|_| CoreError::Parse(format!("invalid variable `{base}`")))?;
            if i < 1 || i > n {
                return Err(CoreError::UnknownVariable(base.to_string(), n));
            }
            mono[i] += exp;
        } else {
            return Err(CoreError::Parse(format!("unknown factor `{base}`")));
        }
    }
    Ok((mono, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn arith_identities() {
        let n = 2;
        let a = p("y1 + z", n);
        let b = p("y1 - z", n);
        assert_eq!(a.mul(&b), p("y1^2 - z^2", n));
        assert_eq!(a.add(&Polynomial::zero(n)), a);
        let half = p("1/2*y1", n);
        let third = p("1/3*y1", n);
        assert_eq!(half.mul(&third), p("1/6*y1^2", n));
    }

    #[test]
    fn diff_and_antideriv() {
        let n = 2;
        assert_eq!(p("y1^2*z", n).diff(Var::Y(1)), p("2*y1*z", n));
        assert_eq!(p("y1^2", n).diff(Var::X), Polynomial::zero(n));
        assert_eq!(p("z^4", n).diff(Var::Z), p("4*z^3", n));
        assert_eq!(p("2*y1", n).antideriv(Var::Y(1)), p("y1^2", n));
        assert_eq!(Polynomial::zero(n).antideriv(Var::Y(1)), Polynomial::zero(n));
        assert_eq!(p("y2*z", n).antideriv(Var::Y(1)), p("y1*y2*z", n));
    }

    #[test]
    fn parse_print_roundtrip() {
        let n = 5;
        for s in [
            "-y3^2 - 4*y4^2 - y5^2",
            "-2*sqrt3*y2*y3 - 2*y4*y5",
            "8/3*y1*y4",
            "x*y1^2 + 1/2*z",
            "0",
        ] {
            let q = p(s, n);
            let printed = q.to_string();
            assert_eq!(parse_polynomial(&printed, n).unwrap(), q, "roundtrip of `{s}` via `{printed}`");
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_polynomial("y7", 5).is_err());
        assert!(parse_polynomial("q + 1", 5).is_err());
        assert!(parse_polynomial("", 5).is_err());
    }

    #[test]
    fn eval_exact() {
        let n = 1;
        let q = p("x*y1^2 - 1/2*z", n);
        let pt = [
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(4),
        ];
        assert_eq!(q.eval(&pt), Scalar::from_int(16));
    }

    #[test]
    #[should_panic(expected = "arity mismatch")]
    fn arity_mismatch_panics() {
        let a = Polynomial::one(2);
        let b = Polynomial::one(3);
        let _ = a.add(&b);
    }
}
