//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are keyed by exponent vectors against a declared, ordered variable
//! list. No zero coefficient is ever stored. Canonical text form sorts terms
//! by graded lexicographic order over the declared variable order, and the
//! parser accepts the same grammar (plus ordinary `+ - * ^ ( )` expressions,
//! which is how printed polynomials are entered as test data).

use crate::rat::{format_rat, parse_rat, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// Sparse polynomial in the variables `vars` with `Rat` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    /// The monomial `c * var` (degree one).
    pub fn var(vars: &[&str], name: &str) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        let idx = p.index_of(name)?;
        let mut exp = vec![0; p.vars.len()];
        exp[idx] = 1;
        p.terms.insert(exp, Rat::one());
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn index_of(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    fn insert_term(&mut self, exp: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_term(&mut self, exps: &[(&str, u32)], c: Rat) -> Result<(), PolyError> {
        let mut exp = vec![0u32; self.vars.len()];
        for (name, e) in exps {
            let i = self.index_of(name)?;
            exp[i] += e;
        }
        self.insert_term(exp, c);
        Ok(())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            Rat::one(),
        );
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of the monomial given by `exps` (unmentioned vars are 0).
    pub fn coeff(&self, exps: &[(&str, u32)]) -> Rat {
        let mut exp = vec![0u32; self.vars.len()];
        for (name, e) in exps {
            match self.index_of(name) {
                Ok(i) => exp[i] += e,
                Err(_) => return Rat::zero(),
            }
        }
        self.terms.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Substitutes `expr` for `var`; `expr` must share this variable list.
    pub fn substitute(&self, var: &str, expr: &MultiPoly) -> Result<Self, PolyError> {
        assert_eq!(self.vars, expr.vars, "substitution across variable sets");
        let idx = self.index_of(var)?;
        let max_pow = self
            .terms
            .keys()
            .map(|e| e[idx])
            .max()
            .unwrap_or(0);
        // Precompute powers of the replacement.
        let mut powers = Vec::with_capacity(max_pow as usize + 1);
        let one = Self::constant(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            Rat::one(),
        );
        powers.push(one);
        for k in 1..=max_pow {
            let next = &powers[k as usize - 1] * expr;
            powers.push(next);
        }
        let mut result = Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (exp, c) in &self.terms {
            let k = exp[idx];
            let mut base_exp = exp.clone();
            base_exp[idx] = 0;
            for (rep_exp, rep_c) in &powers[k as usize].terms {
                let mut e = base_exp.clone();
                for (i, r) in rep_exp.iter().enumerate() {
                    e[i] += r;
                }
                result.insert_term(e, c * rep_c);
            }
        }
        Ok(result)
    }

    /// Substitutes a constant for `var`.
    pub fn substitute_const(&self, var: &str, value: &Rat) -> Result<Self, PolyError> {
        let idx = self.index_of(var)?;
        let mut result = Self {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (exp, c) in &self.terms {
            let k = exp[idx];
            let mut e = exp.clone();
            e[idx] = 0;
            let mut v = c.clone();
            for _ in 0..k {
                v *= value;
            }
            result.insert_term(e, v);
        }
        Ok(result)
    }

    /// Evaluates at a full point (one value per declared variable).
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rat::zero();
        for (exp, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Reinterprets the polynomial over a different variable list; every
    /// variable actually present must exist in the target list.
    pub fn rename_vars(&self, vars: &[&str]) -> Result<Self, PolyError> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let used = self.terms.keys().any(|e| e[i] > 0);
            match vars.iter().position(|t| t == v) {
                Some(j) => map.push(Some(j)),
                None if !used => map.push(None),
                None => return Err(PolyError::UnknownVariable(v.clone())),
            }
        }
        let mut out = Self::zero(vars);
        for (exp, c) in &self.terms {
            let mut e = vec![0u32; vars.len()];
            for (i, &k) in exp.iter().enumerate() {
                if k > 0 {
                    e[map[i].expect("checked above")] += k;
                }
            }
            out.insert_term(e, c.clone());
        }
        Ok(out)
    }

    /// Dense coefficient vector (constant first) of a univariate polynomial;
    /// errors if any other variable occurs.
    pub fn univariate_in(&self, var: &str) -> Result<Vec<Rat>, PolyError> {
        let idx = self.index_of(var)?;
        let mut out = vec![Rat::zero(); self.total_degree() as usize + 1];
        for (exp, c) in &self.terms {
            for (i, &e) in exp.iter().enumerate() {
                if i != idx && e > 0 {
                    return Err(PolyError::UnknownVariable(self.vars[i].clone()));
                }
            }
            out[exp[idx] as usize] = c.clone();
        }
        while out.len() > 1 && out.last().unwrap().is_zero() {
            out.pop();
        }
        Ok(out)
    }

    /// Groups terms by their exponents in `outer`, returning each "outer"
    /// monomial with its coefficient polynomial in the remaining variables.
    pub fn coefficients_by(&self, outer: &[&str]) -> Result<Vec<(Vec<u32>, MultiPoly)>, PolyError> {
        let idxs: Vec<usize> = outer
            .iter()
            .map(|v| self.index_of(v))
            .collect::<Result<_, _>>()?;
        let mut groups: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (exp, c) in &self.terms {
            let key: Vec<u32> = idxs.iter().map(|&i| exp[i]).collect();
            let mut rest = exp.clone();
            for &i in &idxs {
                rest[i] = 0;
            }
            groups
                .entry(key)
                .or_insert_with(|| Self {
                    vars: self.vars.clone(),
                    terms: BTreeMap::new(),
                })
                .insert_term(rest, c.clone());
        }
        Ok(groups.into_iter().collect())
    }

    /// Graded-lex sorted canonical text, coefficients as `p/q`.
    pub fn canonical_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (i, key) in keys.iter().enumerate() {
            let c = &self.terms[*key];
            if i == 0 {
                if c.is_negative() {
                    out.push_str("- ");
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let ac = c.abs();
            let monom: Vec<String> = key
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        self.vars[j].clone()
                    } else {
                        format!("{}^{}", self.vars[j], e)
                    }
                })
                .collect();
            if monom.is_empty() {
                out.push_str(&format_rat(&ac));
            } else {
                if !ac.is_one() {
                    out.push_str(&format_rat(&ac));
                    out.push('*');
                }
                out.push_str(&monom.join("*"));
            }
        }
        out
    }

    /// Parses an expression over `vars` built from rationals, variables,
    /// `+ - * ^` and parentheses. Juxtaposition is not multiplication; `*`
    /// is required, matching the canonical text form.
    pub fn parse(vars: &[&str], input: &str) -> Result<Self, PolyError> {
        Parser {
            vars,
            bytes: input.as_bytes(),
            pos: 0,
            input,
        }
        .parse_all()
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self.canonical_text())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "mixed variable sets");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "mixed variable sets");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "mixed variable sets");
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(e, ca * cb);
            }
        }
        out
    }
}

struct Parser<'a> {
    vars: &'a [&'a str],
    bytes: &'a [u8],
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            offset: self.pos,
            message: message.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<MultiPoly, PolyError> {
        let p = self.parse_expr()?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return self.err("trailing input");
        }
        Ok(p)
    }

    fn parse_expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.parse_product()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.parse_product()?
            }
            _ => self.parse_product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.parse_product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.parse_product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_product(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.parse_power()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            acc = &acc * &self.parse_power()?;
        }
        Ok(acc)
    }

    fn parse_power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.parse_atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let n: u32 = self.input[start..self.pos]
                .parse()
                .map_err(|_| PolyError::Parse {
                    offset: start,
                    message: "bad exponent".to_string(),
                })?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.parse_power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_digit()
                        || self.bytes[self.pos] == b'.'
                        || self.bytes[self.pos] == b'/')
                {
                    // a slash only continues the literal if a digit follows
                    if self.bytes[self.pos] == b'/'
                        && !self
                            .bytes
                            .get(self.pos + 1)
                            .is_some_and(|b| b.is_ascii_digit())
                    {
                        break;
                    }
                    self.pos += 1;
                }
                let lit = &self.input[start..self.pos];
                let c = parse_rat(lit).map_err(|_| PolyError::Parse {
                    offset: start,
                    message: format!("bad numeric literal `{lit}`"),
                })?;
                Ok(MultiPoly::constant(self.vars, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.input[start..self.pos];
                MultiPoly::var(self.vars, name)
            }
            _ => self.err("expected atom"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn xy(src: &str) -> MultiPoly {
        MultiPoly::parse(&["x", "y"], src).unwrap()
    }

    #[test]
    fn square_of_sum_expands() {
        assert_eq!(xy("(x+y)^2"), xy("x^2 + 2*x*y + y^2"));
    }

    #[test]
    fn cancellation_yields_empty_map() {
        let p = xy("3*x^2*y - 1/2");
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn cube_shift_matches_binomial() {
        // (x - c)^3for a random-ish rational c
        let c = ratio(7, 3);
        let p = xy("x").substitute(
            "x",
            &(&xy("x") - &MultiPoly::constant(&["x", "y"], c.clone())),
        );
        let p = p.unwrap().pow(3);
        let expect = MultiPoly::parse(&["x", "y"], "x^3 - 7*x^2 + 49/3*x - 343/27").unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn substitution_shift_then_unshift_is_identity() {
        let p = xy("2*x^3*y - 5*x + y^2 - 7");
        let c = MultiPoly::constant(&["x", "y"], ratio(9, 4));
        let fwd = p.substitute("x", &(&xy("x") + &c)).unwrap();
        let back = fwd.substitute("x", &(&xy("x") - &c)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn gap_substitution_example() {
        // a2 - a1 under a2 -> a1 + s1 becomes s1
        let p = MultiPoly::parse(&["a1", "a2", "s1"], "a2 - a1").unwrap();
        let rep = MultiPoly::parse(&["a1", "a2", "s1"], "a1 + s1").unwrap();
        let q = p.substitute("a2", &rep).unwrap();
        assert_eq!(q, MultiPoly::parse(&["a1", "a2", "s1"], "s1").unwrap());
    }

    #[test]
    fn canonical_text_round_trips() {
        let p = xy("-x^2 + 3/2*x*y - y + 2");
        let text = p.canonical_text();
        assert_eq!(text, "- x^2 + 3/2*x*y - y + 2");
        assert_eq!(MultiPoly::parse(&["x", "y"], &text).unwrap(), p);
    }

    #[test]
    fn eval_and_univariate() {
        let p = xy("x^2*y - 3");
        assert_eq!(p.eval(&[rat(2), rat(5)]), rat(17));
        let u = MultiPoly::parse(&["x", "y"], "x^3 - 2*x").unwrap();
        assert_eq!(
            u.univariate_in("x").unwrap(),
            vec![rat(0), rat(-2), rat(0), rat(1)]
        );
        assert!(p.univariate_in("x").is_err());
    }

    #[test]
    fn coefficients_by_groups_outer_monomials() {
        let p = MultiPoly::parse(&["a", "b", "x"], "a*x^2 + 2*b*x^2 - a*b + x").unwrap();
        let groups = p.coefficients_by(&["x"]).unwrap();
        assert_eq!(groups.len(), 3);
        let (e2, c2) = groups.iter().find(|(e, _)| e[0] == 2).unwrap();
        assert_eq!(e2, &vec![2]);
        assert_eq!(c2, &MultiPoly::parse(&["a", "b", "x"], "a + 2*b").unwrap());
    }
}
