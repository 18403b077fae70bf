//! The group-description grammar and its evaluation against the catalog.
//!
//! ```text
//! spec := term ('x' term)*
//! term := 'C'int | 'D'int | 'Q8' | 'S'int
//!       | 'E(' int ',' int ')'
//!       | 'A(' int ';' int (',' int)* ')'
//!       | 'W(' spec ',' spec ')'
//!       | '(' spec ')'
//! ```
//!
//! Whitespace-insensitive, case-sensitive. Parse errors carry the byte
//! position; semantic checks (D2, S9, non-prime p, ...) run after parsing.

use std::fmt;

use wreath_core::groups::{
    abelian, cyclic, dihedral, direct_product, elementary_abelian, quaternion8, symmetric,
    wreath_product, FiniteGroup,
};
use wreath_core::numtheory::factorize;
use wreath_core::oracle::{brute_force_spectrum_with, OracleOptions};
use wreath_core::spectra::{spectrum, OrderSpectrum};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Dihedral(u64),
    Quaternion8,
    Symmetric(u64),
    ElementaryAbelian(u64, u32),
    Abelian(u64, Vec<u32>),
    Product(Vec<GroupSpec>),
    Wreath(Box<GroupSpec>, Box<GroupSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Grammar errors carry a byte position; semantic errors (D2, non-prime p,
/// out-of-range S n) are reported after a successful parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    Parse(ParseError),
    Semantic(String),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Parse(e) => e.fmt(f),
            SpecError::Semantic(msg) => write!(f, "invalid group description: {msg}"),
        }
    }
}

impl std::error::Error for SpecError {}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            got => Err(self.error(format!(
                "expected '{}', found {}",
                c as char,
                got.map_or("end of input".to_string(), |g| format!("'{}'", g as char))
            ))),
        }
    }

    fn error(&self, message: String) -> ParseError {
        ParseError { pos: self.pos, message }
    }

    fn parse_int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer".into()));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError { pos: start, message: "integer too large".into() })
    }

    fn parse_spec(&mut self) -> Result<GroupSpec, ParseError> {
        let mut terms = vec![self.parse_term()?];
        while self.peek() == Some(b'x') {
            self.pos += 1;
            terms.push(self.parse_term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            GroupSpec::Product(terms)
        })
    }

    fn parse_term(&mut self) -> Result<GroupSpec, ParseError> {
        match self.peek() {
            Some(b'C') => {
                self.pos += 1;
                Ok(GroupSpec::Cyclic(self.parse_int()?))
            }
            Some(b'D') => {
                self.pos += 1;
                Ok(GroupSpec::Dihedral(self.parse_int()?))
            }
            Some(b'S') => {
                self.pos += 1;
                Ok(GroupSpec::Symmetric(self.parse_int()?))
            }
            Some(b'Q') => {
                self.pos += 1;
                let n = self.parse_int()?;
                if n != 8 {
                    return Err(self.error(format!("unknown atom Q{n}; only Q8 is available")));
                }
                Ok(GroupSpec::Quaternion8)
            }
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(')?;
                let p = self.parse_int()?;
                self.expect(b',')?;
                let k = self.parse_int()?;
                self.expect(b')')?;
                let k = u32::try_from(k)
                    .map_err(|_| self.error("rank too large".into()))?;
                Ok(GroupSpec::ElementaryAbelian(p, k))
            }
            Some(b'A') => {
                self.pos += 1;
                self.expect(b'(')?;
                let p = self.parse_int()?;
                self.expect(b';')?;
                let mut exps = vec![self.parse_int()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    exps.push(self.parse_int()?);
                }
                self.expect(b')')?;
                let exps: Vec<u32> = exps
                    .into_iter()
                    .map(u32::try_from)
                    .collect::<Result<_, _>>()
                    .map_err(|_| self.error("exponent too large".into()))?;
                Ok(GroupSpec::Abelian(p, exps))
            }
            Some(b'W') => {
                self.pos += 1;
                self.expect(b'(')?;
                let a = self.parse_spec()?;
                self.expect(b',')?;
                let b = self.parse_spec()?;
                self.expect(b')')?;
                Ok(GroupSpec::Wreath(Box::new(a), Box::new(b)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_spec()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

/// Parse a group description. Grammar errors carry positions; constructor
/// preconditions (D2, non-prime p, ...) are reported as semantic errors.
pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut parser = Parser { text: text.as_bytes(), pos: 0 };
    let spec = parser.parse_spec().map_err(SpecError::Parse)?;
    parser.skip_ws();
    if parser.pos != parser.text.len() {
        return Err(SpecError::Parse(
            parser.error("trailing input after group description".into()),
        ));
    }
    spec.check_semantics().map_err(SpecError::Semantic)?;
    Ok(spec)
}

impl GroupSpec {
    fn check_semantics(&self) -> Result<(), String> {
        match self {
            GroupSpec::Cyclic(n) if *n < 2 => Err(format!("C{n}: cyclic groups need n ≥ 2")),
            GroupSpec::Dihedral(n) if *n < 3 => Err(format!("D{n}: dihedral groups need n ≥ 3")),
            GroupSpec::Symmetric(n) if !(2..=6).contains(n) => {
                Err(format!("S{n}: symmetric groups are available for 2 ≤ n ≤ 6"))
            }
            GroupSpec::ElementaryAbelian(p, k) => {
                check_prime(*p)?;
                if *k == 0 {
                    return Err("E(p, k) needs k ≥ 1".into());
                }
                Ok(())
            }
            GroupSpec::Abelian(p, exps) => {
                check_prime(*p)?;
                if exps.contains(&0) {
                    return Err("A(p; ...) exponents must be ≥ 1".into());
                }
                Ok(())
            }
            GroupSpec::Product(terms) => {
                terms.iter().try_for_each(GroupSpec::check_semantics)
            }
            GroupSpec::Wreath(a, b) => {
                a.check_semantics()?;
                b.check_semantics()
            }
            _ => Ok(()),
        }
    }

    /// Build the group as an explicit Cayley table (caps apply).
    pub fn materialize(&self) -> wreath_core::Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => cyclic(*n as usize),
            GroupSpec::Dihedral(n) => dihedral(*n as usize),
            GroupSpec::Quaternion8 => Ok(quaternion8()),
            GroupSpec::Symmetric(n) => symmetric(*n as usize),
            GroupSpec::ElementaryAbelian(p, k) => elementary_abelian(*p, *k),
            GroupSpec::Abelian(p, exps) => abelian(*p, exps),
            GroupSpec::Product(terms) => {
                let mut acc: Option<FiniteGroup> = None;
                for term in terms {
                    let g = term.materialize()?;
                    acc = Some(match acc {
                        None => g,
                        Some(prev) => direct_product(&prev, &g)?,
                    });
                }
                Ok(acc.expect("products have at least two terms"))
            }
            GroupSpec::Wreath(a, b) => wreath_product(&a.materialize()?, &b.materialize()?),
        }
    }

    /// Order spectrum of the described group. A top-level wreath is
    /// enumerated through the oracle (no table), so it is only limited by
    /// the enumeration cap; everything else is materialized.
    pub fn spectrum_of(&self, opts: &OracleOptions) -> wreath_core::Result<OrderSpectrum> {
        match self {
            GroupSpec::Wreath(a, b) => {
                brute_force_spectrum_with(&a.materialize()?, &b.materialize()?, opts)
            }
            _ => Ok(spectrum(&self.materialize()?)),
        }
    }

    /// Exponent list of an abelian p-group description: C p^e, E(p, k),
    /// A(p; ...), and products of those over one prime.
    pub fn abelian_exponents(&self) -> Option<(u64, Vec<u32>)> {
        match self {
            GroupSpec::Cyclic(n) => {
                let f = factorize(*n).ok()?;
                match f.factors.as_slice() {
                    [(p, e)] => Some((*p, vec![*e])),
                    _ => None,
                }
            }
            GroupSpec::ElementaryAbelian(p, k) => Some((*p, vec![1; *k as usize])),
            GroupSpec::Abelian(p, exps) => Some((*p, exps.clone())),
            GroupSpec::Product(terms) => {
                let mut p = None;
                let mut exps = Vec::new();
                for term in terms {
                    let (tp, te) = term.abelian_exponents()?;
                    if *p.get_or_insert(tp) != tp {
                        return None;
                    }
                    exps.extend(te);
                }
                Some((p?, exps))
            }
            _ => None,
        }
    }
}

fn check_prime(p: u64) -> Result<(), String> {
    let f = factorize(p).map_err(|e| e.to_string())?;
    if f.factors.len() != 1 || f.factors[0].1 != 1 {
        return Err(format!("{p} is not prime"));
    }
    Ok(())
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::ElementaryAbelian(p, k) => write!(f, "E({p}, {k})"),
            GroupSpec::Abelian(p, exps) => {
                let list: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
                write!(f, "A({p}; {})", list.join(", "))
            }
            GroupSpec::Product(terms) => {
                let rendered: Vec<String> = terms
                    .iter()
                    .map(|t| match t {
                        GroupSpec::Product(_) => format!("({t})"),
                        _ => t.to_string(),
                    })
                    .collect();
                write!(f, "{}", rendered.join(" x "))
            }
            GroupSpec::Wreath(a, b) => write!(f, "W({a}, {b})"),
        }
    }
}
