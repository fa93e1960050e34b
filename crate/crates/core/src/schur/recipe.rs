//! Construction recipes and their compact, replayable text form.
//!
//! ```text
//! moebius(<a>,<sign>)
//! symext(<a>,<p>,<m>,<sign>)
//! blaschke(<phase>;<re>:<im>,<re>:<im>,...)
//! schur(<re>:<im>,...)
//! convex(<w>*<recipe>;<w>*<recipe>;...)
//! ```
//!
//! Reals are written with 17 significant digits, so parsing the text
//! reproduces the recipe bit for bit.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SchurFunction;
use crate::error::{BohrError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Recipe {
    Moebius { a: f64, sign: Sign },
    SymmetricExtremal { a: f64, p: usize, m: usize, sign: Sign },
    Blaschke { zeros: Vec<Complex64>, phase: f64 },
    SchurParams { params: Vec<Complex64> },
    ConvexCombo { weights: Vec<f64>, parts: Vec<Recipe> },
}

impl Recipe {
    pub fn build(&self, order: usize) -> Result<SchurFunction> {
        match self {
            Recipe::Moebius { a, sign } => super::moebius(*a, *sign, order),
            Recipe::SymmetricExtremal { a, p, m, sign } => {
                super::symmetric_extremal(*a, *p, *m, *sign, order)
            }
            Recipe::Blaschke { zeros, phase } => super::blaschke(zeros, *phase, order),
            Recipe::SchurParams { params } => super::from_schur_params(params, order),
            Recipe::ConvexCombo { weights, parts } => super::convex_combo(weights, parts, order),
        }
    }
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn cplx(z: &Complex64) -> String {
    format!("{}:{}", real(z.re), real(z.im))
}

fn join<T>(items: &[T], sep: &str, f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Recipe {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Moebius { a, sign } => write!(out, "moebius({},{})", real(*a), sign.symbol()),
            Recipe::SymmetricExtremal { a, p, m, sign } => {
                write!(out, "symext({},{p},{m},{})", real(*a), sign.symbol())
            }
            Recipe::Blaschke { zeros, phase } => {
                write!(out, "blaschke({};{})", real(*phase), join(zeros, ",", cplx))
            }
            Recipe::SchurParams { params } => write!(out, "schur({})", join(params, ",", cplx)),
            Recipe::ConvexCombo { weights, parts } => {
                let body: Vec<String> = weights
                    .iter()
                    .zip(parts)
                    .map(|(w, p)| format!("{}*{p}", real(*w)))
                    .collect();
                write!(out, "convex({})", body.join(";"))
            }
        }
    }
}

impl FromStr for Recipe {
    type Err = BohrError;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.trim(),
            pos: 0,
        };
        let recipe = p.recipe()?;
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(recipe)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> BohrError {
        BohrError::RecipeParse(format!("{what} at byte {} of `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'))
        {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error("malformed number"))
    }

    fn integer(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error("malformed integer"))
    }

    fn sign(&mut self) -> Result<Sign> {
        if self.eat('+') {
            Ok(Sign::Plus)
        } else if self.eat('-') {
            Ok(Sign::Minus)
        } else {
            Err(self.error("expected sign"))
        }
    }

    fn complex(&mut self) -> Result<Complex64> {
        let re = self.number()?;
        self.expect(':')?;
        let im = self.number()?;
        Ok(Complex64::new(re, im))
    }

    fn complex_list(&mut self) -> Result<Vec<Complex64>> {
        let mut out = Vec::new();
        if self.peek() == Some(')') {
            return Ok(out);
        }
        loop {
            out.push(self.complex()?);
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }

    fn recipe(&mut self) -> Result<Recipe> {
        let name = self.ident().to_owned();
        self.expect('(')?;
        let recipe = match name.as_str() {
            "moebius" => {
                let a = self.number()?;
                self.expect(',')?;
                Recipe::Moebius {
                    a,
                    sign: self.sign()?,
                }
            }
            "symext" => {
                let a = self.number()?;
                self.expect(',')?;
                let p = self.integer()?;
                self.expect(',')?;
                let m = self.integer()?;
                self.expect(',')?;
                Recipe::SymmetricExtremal {
                    a,
                    p,
                    m,
                    sign: self.sign()?,
                }
            }
            "blaschke" => {
                let phase = self.number()?;
                self.expect(';')?;
                Recipe::Blaschke {
                    zeros: self.complex_list()?,
                    phase,
                }
            }
            "schur" => Recipe::SchurParams {
                params: self.complex_list()?,
            },
            "convex" => {
                let mut weights = Vec::new();
                let mut parts = Vec::new();
                loop {
                    weights.push(self.number()?);
                    self.expect('*')?;
                    parts.push(self.recipe()?);
                    if !self.eat(';') {
                        break;
                    }
                }
                Recipe::ConvexCombo { weights, parts }
            }
            other => return Err(self.error(&format!("unknown recipe `{other}`"))),
        };
        self.expect(')')?;
        Ok(recipe)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips_exactly() {
        let third = 1.0 / 3.0;
        let recipe = Recipe::ConvexCombo {
            weights: vec![third, 1.0 - third],
            parts: vec![
                Recipe::Blaschke {
                    zeros: vec![Complex64::new(0.1, -0.2), Complex64::new(-1e-300, 0.7)],
                    phase: -2.5,
                },
                Recipe::ConvexCombo {
                    weights: vec![1.0],
                    parts: vec![Recipe::SchurParams {
                        params: vec![Complex64::new(0.3, 0.0)],
                    }],
                },
            ],
        };
        let text = recipe.to_string();
        assert_eq!(text.parse::<Recipe>().unwrap(), recipe);

        let m = Recipe::SymmetricExtremal {
            a: 0.1,
            p: 3,
            m: 2,
            sign: Sign::Minus,
        };
        assert_eq!(m.to_string(), "symext(1.0000000000000001e-1,3,2,-)");
        assert_eq!(m.to_string().parse::<Recipe>().unwrap(), m);
    }

    #[test]
    fn malformed_text_is_rejected() {
        for bad in [
            "",
            "moebius(0.5)",
            "moebius(0.5,*)",
            "wat(1)",
            "schur(0.1:0.2",
            "schur(0.1)x",
        ] {
            assert!(bad.parse::<Recipe>().is_err(), "{bad}");
        }
    }
}
