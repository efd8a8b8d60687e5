use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    /// `+1`, `−1` or `0`.
    pub fn signum(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }
}

/// A periodic sign pattern: `c(n)` should have the sign of `symbols[n mod period]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPattern {
    symbols: Vec<Sign>,
}

impl SignPattern {
    pub fn new(symbols: Vec<Sign>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Parse("sign pattern is empty".into()));
        }
        if symbols.iter().all(|s| *s == Sign::Zero) {
            return Err(Error::Parse("sign pattern needs a nonzero symbol".into()));
        }
        Ok(SignPattern { symbols })
    }

    pub fn period(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[Sign] {
        &self.symbols
    }

    pub fn at(&self, n: u64) -> Sign {
        self.symbols[(n % self.symbols.len() as u64) as usize]
    }
}

/// Accepts `+`, `-` (or `−`) and `0`; spaces are ignored, and a trailing
/// `^k` or a parenthesised group `(..)^k` repeats, e.g. `(+-)^3`.
impl FromStr for SignPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let expanded = expand_groups(&cleaned)?;
        let symbols = expanded
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                '0' => Ok(Sign::Zero),
                other => Err(Error::Parse(format!("bad sign symbol '{other}' in '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        SignPattern::new(symbols)
    }
}

fn expand_groups(s: &str) -> Result<String> {
    let Some(open) = s.find('(') else { return Ok(s.to_string()) };
    let close = s[open..].find(')').map(|i| open + i).ok_or_else(|| Error::Parse(format!("unclosed '(' in '{s}'")))?;
    let inner = &s[open + 1..close];
    let rest = &s[close + 1..];
    let (times, rest) = match rest.strip_prefix('^') {
        Some(r) => {
            let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
            let t = digits.parse::<usize>().map_err(|_| Error::Parse(format!("bad repeat count in '{s}'")))?;
            (t, &r[digits.len()..])
        }
        None => (1, rest),
    };
    Ok(format!("{}{}{}", &s[..open], inner.repeat(times), expand_groups(rest)?))
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}
