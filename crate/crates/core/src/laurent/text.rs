//! Line-oriented text form: one term per line, `coeff e1 e2 .. ek`, graded-lex order.

use std::str::FromStr;

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

impl<C: Coefficient> LaurentPoly<C> {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.iter() {
            out.push_str(&c.to_string());
            for x in e {
                out.push(' ');
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text form. Blank lines are ignored; terms may come in any order.
    pub fn from_text(k: usize, text: &str) -> Result<Self>
    where
        C: FromStr,
    {
        let mut terms = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let bad = |what: &str| Error::InvalidInput(format!("line {}: {what}", lineno + 1));
            let c = fields
                .next()
                .and_then(|s| s.parse::<C>().ok())
                .ok_or_else(|| bad("bad coefficient"))?;
            let e = fields
                .map(|s| s.parse::<i32>().map_err(|_| bad("bad exponent")))
                .collect::<Result<Vec<_>>>()?;
            if e.len() != k {
                return Err(Error::Dimension {
                    expected: k,
                    got: e.len(),
                });
            }
            terms.push((e, c));
        }
        Self::from_terms(k, terms)
    }
}

#[cfg(test)]
mod tests {
    use crate::Poly;
    use num_bigint::BigInt;

    #[test]
    fn text_form_is_graded_lex() {
        let p = Poly::from_terms(
            3,
            vec![
                (vec![1, 0, 0], BigInt::from(1)),
                (vec![-1, 0, 0], BigInt::from(1)),
                (vec![0, 0, 0], BigInt::from(-7)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_text(), "1 -1 0 0\n-7 0 0 0\n1 1 0 0\n");
        assert_eq!(Poly::from_text(3, &p.to_text()).unwrap(), p);
    }

    #[test]
    fn text_form_rejects_wrong_arity() {
        assert!(Poly::from_text(3, "1 0 0\n").is_err());
        assert!(Poly::from_text(2, "x 0 0\n").is_err());
    }
}
