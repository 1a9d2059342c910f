//! Sparse polynomials over Q in x, y, z, t, plus points and lines of P^3.
//!
//! Text format (parser accepts a superset of plain monomial sums):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' digits)?
//! atom   := digits ['/' digits] | 'x' | 'y' | 'z' | 't' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Printing always produces graded-lex ordered
//! monomials such as `x^2*z + y^3` or `2*x^2*y - x*z*t`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::qlinalg::{self, q, QMatrix};

pub const VARS: [char; 4] = ['x', 'y', 'z', 't'];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial `{input}` at offset {offset}: {reason}")]
    Parse { input: String, offset: usize, reason: String },
    #[error("form `{0}` is not homogeneous linear")]
    NotLinear(String),
    #[error("line forms `{0}` and `{1}` are linearly dependent")]
    DegenerateLine(String, String),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
}

/// Exponent vector ordered graded-lexicographically (total degree first,
/// then x before y before z before t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(q(c))
    }

    /// The k-th variable (0 = x, 1 = y, 2 = z, 3 = t).
    pub fn var(k: usize) -> Self {
        let mut e = [0; 4];
        e[k] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn monomial(exp: [u32; 4], c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial(exp), c);
        p
    }

    /// Linear form `c0 x + c1 y + c2 z + c3 t`.
    pub fn linear(c: &[BigRational]) -> Self {
        let mut p = Self::zero();
        for (k, v) in c.iter().enumerate() {
            let mut e = [0; 4];
            e[k] = 1;
            p.add_term(Monomial(e), v.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common degree of all terms, `None` for the zero polynomial or a
    /// non-homogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero();
        for (m, v) in &self.terms {
            p.add_term(*m, v * c);
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::from_int(1);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn partial(&self, k: usize) -> Self {
        let mut p = Self::zero();
        for (m, v) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut exp = m.0;
            exp[k] -= 1;
            p.add_term(Monomial(exp), v * q(i64::from(e)));
        }
        p
    }

    pub fn eval(&self, pt: &[BigRational; 4]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, v) in &self.terms {
            let mut t = v.clone();
            for (k, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &pt[k];
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficients of a linear form in (x, y, z, t) order.
    pub fn linear_coeffs(&self) -> Result<[BigRational; 4], PolyError> {
        if self.homogeneous_degree() != Some(1) {
            return Err(PolyError::NotLinear(self.to_string()));
        }
        let mut c = [q(0), q(0), q(0), q(0)];
        for (m, v) in &self.terms {
            let k = m.0.iter().position(|&e| e == 1).expect("degree one monomial");
            c[k] = v.clone();
        }
        Ok(c)
    }

    pub fn parse(input: &str) -> Result<Self, PolyError> {
        let mut p = Parser { src: input, chars: input.char_indices().collect(), pos: 0 };
        p.skip_ws();
        if p.peek().is_none() {
            return Err(p.error("empty input"));
        }
        let out = p.expr()?;
        p.skip_ws();
        if p.peek().is_some() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, v) in &o.terms {
            p.add_term(*m, v.clone());
        }
        p
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, v) in &o.terms {
            p.add_term(*m, -v.clone());
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&q(-1))
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (m1, v1) in &self.terms {
            for (m2, v2) in &o.terms {
                let mut e = m1.0;
                for k in 0..4 {
                    e[k] += m2.0[k];
                }
                p.add_term(Monomial(e), v1 * v2);
            }
        }
        p
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(fmt_coeff(&mag));
            }
            for (k, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(VARS[k].to_string()),
                    _ => factors.push(format!("{}^{e}", VARS[k])),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> PolyError {
        let offset = self.chars.get(self.pos).map_or(self.src.len(), |c| c.0);
        PolyError::Parse { input: self.src.into(), offset, reason: reason.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn digits(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        self.skip_ws();
        let mut neg = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            neg = c == '-';
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_digit() || VARS.contains(&c) || c == '(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits()?;
            let e = e.to_u32().filter(|&e| e <= 64).ok_or_else(|| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                self.skip_ws();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits()?;
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    return Ok(MultiPoly::constant(BigRational::new(n, d)));
                }
                Ok(MultiPoly::constant(BigRational::from_integer(n)))
            }
            Some(c) if VARS.contains(&c) => {
                self.pos += 1;
                Ok(MultiPoly::var(VARS.iter().position(|&v| v == c).expect("variable")))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("expected number, variable or `(`")),
        }
    }
}

/// A point of P^3 given by a nonzero representative.
#[derive(Debug, Clone)]
pub struct PointP3 {
    pub coords: [BigRational; 4],
}

impl PointP3 {
    pub fn new(coords: [BigRational; 4]) -> Result<Self, PolyError> {
        if coords.iter().all(Zero::is_zero) {
            return Err(PolyError::ZeroPoint);
        }
        Ok(Self { coords })
    }

    pub fn from_ints(c: [i64; 4]) -> Result<Self, PolyError> {
        Self::new(c.map(q))
    }

    /// Integer representative if every coordinate is integral.
    pub fn to_ints(&self) -> Option<[i64; 4]> {
        let mut out = [0i64; 4];
        for (o, c) in out.iter_mut().zip(&self.coords) {
            if !c.is_integer() {
                return None;
            }
            *o = c.numer().to_i64()?;
        }
        Some(out)
    }
}

/// Equality up to scalar: every 2x2 minor of the stacked coordinates is zero.
impl PartialEq for PointP3 {
    fn eq(&self, o: &Self) -> bool {
        (0..4).all(|i| {
            (i + 1..4).all(|j| &self.coords[i] * &o.coords[j] == &self.coords[j] * &o.coords[i])
        })
    }
}

impl Eq for PointP3 {}

impl fmt::Display for PointP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_coeff).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// Line of P^3 cut out by two independent linear forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineP3 {
    pub forms: [MultiPoly; 2],
}

/// How two lines of P^3 sit relative to each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineMeet {
    Same,
    Point(PointP3),
    Skew,
}

impl LineP3 {
    pub fn new(a: MultiPoly, b: MultiPoly) -> Result<Self, PolyError> {
        let ca = a.linear_coeffs()?;
        let cb = b.linear_coeffs()?;
        if qlinalg::rank(&vec![ca.to_vec(), cb.to_vec()]) < 2 {
            return Err(PolyError::DegenerateLine(a.to_string(), b.to_string()));
        }
        Ok(Self { forms: [a, b] })
    }

    pub fn parse(a: &str, b: &str) -> Result<Self, PolyError> {
        Self::new(MultiPoly::parse(a)?, MultiPoly::parse(b)?)
    }

    pub fn coefficient_matrix(&self) -> QMatrix {
        self.forms
            .iter()
            .map(|f| f.linear_coeffs().expect("checked at construction").to_vec())
            .collect()
    }

    /// Two points spanning the line: the reduced echelon kernel basis of
    /// the 2x4 coefficient matrix.
    pub fn spanning_points(&self) -> [PointP3; 2] {
        let ker = qlinalg::nullspace(&self.coefficient_matrix(), 4);
        debug_assert_eq!(ker.len(), 2);
        let to_pt = |v: &Vec<BigRational>| {
            PointP3::new([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
                .expect("kernel vector is nonzero")
        };
        [to_pt(&ker[0]), to_pt(&ker[1])]
    }

    pub fn contains_point(&self, p: &PointP3) -> bool {
        self.forms.iter().all(|f| f.eval(&p.coords).is_zero())
    }

    /// Points `s P + u Q` for the given parameter pairs.
    pub fn sample_points(&self, params: &[(i64, i64)]) -> Vec<PointP3> {
        let [p, qq] = self.spanning_points();
        params
            .iter()
            .map(|&(s, u)| {
                let c = std::array::from_fn(|k| q(s) * &p.coords[k] + q(u) * &qq.coords[k]);
                PointP3::new(c).expect("distinct spanning points")
            })
            .collect()
    }

    pub fn meet(&self, other: &LineP3) -> LineMeet {
        let mut m = self.coefficient_matrix();
        m.extend(other.coefficient_matrix());
        match qlinalg::rank(&m) {
            2 => LineMeet::Same,
            3 => {
                let v = qlinalg::nullspace(&m, 4).remove(0);
                LineMeet::Point(
                    PointP3::new([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
                        .expect("nonzero kernel vector"),
                )
            }
            _ => LineMeet::Skew,
        }
    }
}

impl fmt::Display for LineP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.forms[0], self.forms[1])
    }
}

/// Binary form in the line parameters (s, u).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BinaryForm {
    pub terms: BTreeMap<[u32; 2], BigRational>,
}

impl BinaryForm {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: [u32; 2], c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let mut out = BinaryForm::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term([a[0] + b[0], a[1] + b[1]], x * y);
            }
        }
        out
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| format!("({})*s^{}*u^{}", fmt_coeff(c), e[0], e[1]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn poly_eval(p: &MultiPoly, pt: &PointP3) -> BigRational {
    p.eval(&pt.coords)
}

/// Substitute the parametrization `[s:u] -> s P + u Q` of the line.
pub fn restrict_to_line(p: &MultiPoly, line: &LineP3) -> BinaryForm {
    let [pp, qq] = line.spanning_points();
    let coord: Vec<BinaryForm> = (0..4)
        .map(|k| {
            let mut b = BinaryForm::default();
            b.add_term([1, 0], pp.coords[k].clone());
            b.add_term([0, 1], qq.coords[k].clone());
            b
        })
        .collect();
    let mut out = BinaryForm::default();
    for (m, c) in p.terms() {
        let mut t = BinaryForm::default();
        t.add_term([0, 0], c.clone());
        for (k, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                t = t.mul(&coord[k]);
            }
        }
        for (e, v) in t.terms {
            out.add_term(e, v);
        }
    }
    out
}

/// All four partial derivatives vanish at `pt`.
pub fn jacobian_vanishes(p: &MultiPoly, pt: &PointP3) -> bool {
    (0..4).all(|k| p.partial(k).eval(&pt.coords).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    fn pt(c: [i64; 4]) -> PointP3 {
        PointP3::from_ints(c).unwrap()
    }

    #[test]
    fn eval_examples() {
        let r1 = p("x^2*z + y^3");
        assert!(poly_eval(&r1, &pt([1, 0, 0, 0])).is_zero());
        assert!(poly_eval(&r1, &pt([0, 0, 0, 1])).is_zero());
        assert_eq!(poly_eval(&r1, &pt([1, 1, 1, 0])), q(2));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("x^2*z + y^3").to_string(), "x^2*z + y^3");
        assert_eq!(p("y^3+x^2 z").to_string(), "x^2*z + y^3");
        assert_eq!(p("(x-y)*(x+y)").to_string(), "x^2 - y^2");
        assert_eq!(p("-2x^2y + 1/2 t").to_string(), "-2*x^2*y + 1/2*t");
        assert_eq!(p("x - x").to_string(), "0");
        assert_eq!(p("3").to_string(), "3");
        for s in ["x^2*y - 2*x^2*z - x*y^2 + x*y*z - y^2*t + y*z*t + y*t^2", "x*y*t - x*z*t + y^3"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(MultiPoly::parse("").is_err());
        assert!(MultiPoly::parse("x +").is_err());
        assert!(MultiPoly::parse("w").is_err());
        assert!(MultiPoly::parse("(x").is_err());
        assert!(MultiPoly::parse("x^").is_err());
        assert!(MultiPoly::parse("1/0").is_err());
        assert!(matches!(MultiPoly::parse("x $"), Err(PolyError::Parse { offset: 2, .. })));
    }

    #[test]
    fn restriction_examples() {
        let g1 = p("x*y^2 + y*t^2 + z^3");
        assert!(restrict_to_line(&g1, &LineP3::parse("y", "z").unwrap()).is_zero());
        let r1 = p("x^2*z + y^3");
        assert!(restrict_to_line(&r1, &LineP3::parse("x", "y").unwrap()).is_zero());
        let r = restrict_to_line(&r1, &LineP3::parse("y", "t").unwrap());
        // y = t = 0 leaves x^2 z on the (x, z) line: a single s^2 u or s u^2 term
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms.values().next().unwrap(), &q(1));
    }

    #[test]
    fn degenerate_line_rejected() {
        assert!(matches!(LineP3::parse("x", "2*x"), Err(PolyError::DegenerateLine(..))));
        assert!(matches!(LineP3::parse("x^2", "y"), Err(PolyError::NotLinear(_))));
        assert!(matches!(LineP3::parse("x + 1", "y"), Err(PolyError::NotLinear(_))));
    }

    #[test]
    fn jacobian_examples() {
        let g1 = p("x*y^2 + y*t^2 + z^3");
        assert!(jacobian_vanishes(&g1, &pt([1, 0, 0, 0])));
        assert!(!jacobian_vanishes(&g1, &pt([0, 1, 0, 0])));
        let g15 = p("x^2*y - x*y^2 + x*z^2 - y*t^2");
        assert!(jacobian_vanishes(&g15, &pt([1, 0, 0, 1])));
    }

    #[test]
    fn projective_equality() {
        assert_eq!(pt([1, 2, 0, -1]), pt([-2, -4, 0, 2]));
        assert_ne!(pt([1, 2, 0, -1]), pt([1, 2, 0, 1]));
        assert!(PointP3::from_ints([0, 0, 0, 0]).is_err());
    }

    #[test]
    fn line_meets() {
        let a = LineP3::parse("x", "y").unwrap();
        let b = LineP3::parse("x", "t").unwrap();
        let c = LineP3::parse("z", "t").unwrap();
        assert_eq!(a.meet(&b), LineMeet::Point(pt([0, 0, 1, 0])));
        assert_eq!(a.meet(&c), LineMeet::Skew);
        let a2 = LineP3::parse("x + y", "x - y").unwrap();
        assert_eq!(a.meet(&a2), LineMeet::Same);
    }

    #[test]
    fn spanning_points_lie_on_line() {
        let l = LineP3::parse("x - t", "y - z + t").unwrap();
        for s in l.sample_points(&[(1, 0), (0, 1), (2, -3)]) {
            assert!(l.contains_point(&s));
        }
    }
}
