//! Literal syntax for elements of `Z[ζ_21]`.
//!
//! A value is a sum of terms `[c*]atom` joined by `+`/`-`, where an atom is
//! an integer, `z^k` (`ζ_21^k`), `xi^k` (`ζ_7^k`), `w`, `wbar`, `b` or `bbar`.

use minifold_core::reptheory::{b, omega, xi};
use minifold_core::{Error, Result, Zeta21};
use num_bigint::BigInt;
use num_traits::Zero;

fn atom(s: &str) -> Result<Zeta21> {
    let power = |rest: &str| -> Result<u32> {
        match rest.strip_prefix('^') {
            None if rest.is_empty() => Ok(1),
            Some(e) => e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{s}`"))),
            None => Err(Error::Parse(format!("unknown atom `{s}`"))),
        }
    };
    Ok(match s {
        "w" => omega(),
        "wbar" => omega().conj(),
        "b" => b(),
        "bbar" => b().conj(),
        _ if s.starts_with("xi") => xi().pow(power(&s[2..])?),
        _ if s.starts_with('z') => Zeta21::root_of_unity(power(&s[1..])? as i64),
        _ => {
            let n: i64 = s.parse().map_err(|_| Error::Parse(format!("unknown atom `{s}`")))?;
            Zeta21::from_i64_coeffs(&[n])
        }
    })
}

pub fn parse_value(s: &str) -> Result<Zeta21> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty value".into()));
    }
    let mut total = Zeta21::zero();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 0..=bytes.len() {
        let boundary = i == bytes.len() || (i > start && (bytes[i] == b'+' || bytes[i] == b'-'));
        if !boundary {
            continue;
        }
        let term = &s[start..i];
        let (neg, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        let value = match body.split_once('*') {
            Some((c, a)) => {
                let c: i64 = c.parse().map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?;
                atom(a)?.scale(&BigInt::from(c))
            }
            None => atom(body)?,
        };
        total = if neg { total - value } else { total + value };
        start = i;
    }
    Ok(total)
}

/// Short name for values that appear in the character table.
pub fn describe(v: &Zeta21) -> String {
    let named = [
        ("b", b()),
        ("bbar", b().conj()),
        ("w", omega()),
        ("wbar", omega().conj()),
    ];
    for (name, value) in named {
        if *v == value {
            return name.to_string();
        }
    }
    match v.as_scalar() {
        Some(n) => n.to_string(),
        None => v.to_string(),
    }
}
