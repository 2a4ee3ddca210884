//! Text form `c*x0^a0*...*xr^ar + ...`, every exponent written out.

use std::fmt;
use std::str::FromStr;

use super::{Field, FieldTag, HPoly, PolyError};

impl<F: Field> fmt::Display for HPoly<F> {
    /// Highest lexicographic monomial first; exact coefficients carry their
    /// sign as the joining operator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (exps, c)) in self.terms().rev().enumerate() {
            let mut coeff = c.render();
            if F::TAG == FieldTag::ExactRational {
                if let Some(abs) = coeff.strip_prefix('-') {
                    let abs = abs.to_string();
                    if n == 0 {
                        write!(f, "-")?;
                    } else {
                        write!(f, " - ")?;
                    }
                    coeff = abs;
                } else if n > 0 {
                    write!(f, " + ")?;
                }
            } else if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{coeff}")?;
            for (j, a) in exps.iter().enumerate() {
                write!(f, "*x{j}^{a}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> FromStr for HPoly<F> {
    type Err = PolyError;

    /// Infers the variable count from the highest index present. The zero
    /// polynomial needs [`HPoly::parse_in`].
    fn from_str(s: &str) -> Result<Self, PolyError> {
        parse(s, None)
    }
}

impl<F: Field> HPoly<F> {
    /// Parses with a known variable count and degree; accepts `"0"`.
    pub fn parse_in(s: &str, nvars: usize, degree: u32) -> Result<Self, PolyError> {
        let p: HPoly<F> = parse(s, Some(nvars))?;
        if p.is_zero() {
            return Ok(Self::zero(nvars, degree));
        }
        if p.degree() != degree {
            return Err(PolyError::Degree {
                left: p.degree(),
                right: degree,
            });
        }
        Ok(p)
    }
}

fn perr(msg: impl Into<String>) -> PolyError {
    PolyError::Parse(msg.into())
}

/// Splits at top-level `+`/`-`, keeping each sign with its term.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    let mut prev2: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let exponent_sign = matches!(prev, Some('e' | 'E')) && prev2.is_some_and(|c| c.is_ascii_digit() || c == '.');
        if depth == 0 && (ch == '+' || ch == '-') && !exponent_sign {
            if !cur.trim().is_empty() {
                out.push((negative, cur.trim().to_string()));
                negative = false;
            }
            cur.clear();
            if ch == '-' {
                negative = !negative;
            }
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev2 = prev;
            prev = Some(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push((negative, cur.trim().to_string()));
    }
    out
}

fn parse<F: Field>(s: &str, nvars: Option<usize>) -> Result<HPoly<F>, PolyError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(perr("empty input"));
    }
    let mut parsed: Vec<(Vec<(usize, u32)>, F)> = Vec::new();
    let mut max_var = 0usize;
    for (negative, term) in split_terms(s) {
        let mut coeff = F::one();
        let mut vars = Vec::new();
        for factor in term.split('*').map(str::trim) {
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.trim().parse::<u32>().map_err(|_| perr(factor))?),
                    None => (rest, 1),
                };
                let idx: usize = idx.trim().parse().map_err(|_| perr(factor))?;
                max_var = max_var.max(idx + 1);
                vars.push((idx, exp));
            } else {
                let c = F::parse_coeff(factor).ok_or_else(|| perr(format!("bad coefficient {factor:?}")))?;
                coeff = coeff * c;
            }
        }
        if negative {
            coeff = -coeff;
        }
        parsed.push((vars, coeff));
    }
    let n = match nvars {
        Some(n) if n < max_var => {
            return Err(PolyError::Index {
                index: max_var - 1,
                nvars: n,
            })
        }
        Some(n) => n,
        None => max_var,
    };
    let mut degree = None;
    let mut terms = Vec::new();
    for (vars, c) in parsed {
        let mut e = vec![0u32; n];
        for (i, a) in vars {
            e[i] += a;
        }
        let d: u32 = e.iter().sum();
        if c.is_zero() {
            continue;
        }
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => return Err(PolyError::NotHomogeneous { exps: e, degree: d0 }),
            _ => {}
        }
        terms.push((e, c));
    }
    HPoly::from_terms(n, degree.unwrap_or(0), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::Rational;
    use num_complex::Complex64;

    #[test]
    fn render_parse_round_trip() {
        let s = "-3/2*x0^2*x1^0 + 1*x0^1*x1^1 - 7*x0^0*x1^2";
        let p: HPoly<Rational> = s.parse().unwrap();
        assert_eq!(p.to_string(), s);
        assert_eq!(p.to_string().parse::<HPoly<Rational>>().unwrap(), p);
    }

    #[test]
    fn lenient_input() {
        let p: HPoly<Rational> = "x0*x1 - x1^2 + 2*x0^2".parse().unwrap();
        assert_eq!(p.to_string(), "2*x0^2*x1^0 + 1*x0^1*x1^1 - 1*x0^0*x1^2");
        assert!("x0^2 + x1".parse::<HPoly<Rational>>().is_err());
        let z = HPoly::<Rational>::parse_in("0", 4, 3).unwrap();
        assert!(z.is_zero() && z.nvars() == 4 && z.degree() == 3);
    }

    #[test]
    fn complex_round_trip() {
        let p: HPoly<Complex64> = "(0.5,-1e-3)*x0^1*x1^0 - 2.5e-7*x0^0*x1^1".parse().unwrap();
        assert_eq!(p.coeff(&[0, 1]), Complex64::new(-2.5e-7, 0.0));
        assert_eq!(p.to_string().parse::<HPoly<Complex64>>().unwrap(), p);
    }
}
