//! JSON series dump.
//!
//! `{"window":{"L":..,"K":..,"O":..},"terms":[{"word":[..],"coeff":"p/q"}]}`,
//! terms sorted lexicographically by word. A `t`-polynomial coefficient is
//! written as `{"t":[["c0","c1",..]]}`, lowest degree first.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeff::{Coefficient, TPoly};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::Series;
use crate::window::TruncationWindow;
use crate::word::Word;

#[derive(Serialize, Deserialize)]
struct Dump {
    window: TruncationWindow,
    terms: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    word: Vec<i32>,
    coeff: Value,
}

/// Coefficients that can be written to and read from the dump.
pub trait JsonCoefficient: Coefficient {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonCoefficient for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            Value::Object(_) => {
                let p = TPoly::from_json(v)?;
                match p.degree() {
                    None => Ok(Rational::zero()),
                    Some(0) => Ok(p.coeff(0)),
                    Some(_) => Err(Error::Parse("t-polynomial where a rational was expected".into())),
                }
            }
            _ => Err(Error::Parse(format!("bad coefficient {v}"))),
        }
    }
}

impl JsonCoefficient for TPoly {
    fn to_json(&self) -> Value {
        let inner: Vec<Value> = self.coeffs().iter().map(|c| Value::String(c.to_string())).collect();
        serde_json::json!({ "t": [inner] })
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Ok(TPoly::constant(s.parse()?)),
            Value::Object(m) => {
                let bad = || Error::Parse(format!("bad t-polynomial {v}"));
                let outer = m.get("t").and_then(Value::as_array).ok_or_else(bad)?;
                let inner = outer.first().and_then(Value::as_array).ok_or_else(bad)?;
                let coeffs = inner
                    .iter()
                    .map(|c| c.as_str().ok_or_else(bad).and_then(str::parse))
                    .collect::<Result<Vec<Rational>>>()?;
                Ok(TPoly::new(coeffs))
            }
            _ => Err(Error::Parse(format!("bad coefficient {v}"))),
        }
    }
}

pub fn to_json<C: JsonCoefficient>(s: &Series<C>) -> String {
    let dump = Dump {
        window: *s.window(),
        terms: s.sorted_terms().into_iter().map(|(w, c)| Term { word: w.to_vec(), coeff: c.to_json() }).collect(),
    };
    serde_json::to_string(&dump).expect("serializable")
}

pub fn from_json<C: JsonCoefficient>(text: &str) -> Result<Series<C>> {
    let dump: Dump = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut terms = Vec::with_capacity(dump.terms.len());
    for t in dump.terms {
        let w = Word::from(t.word);
        if !dump.window.admits(&w) {
            return Err(Error::OutsideWindow(w));
        }
        terms.push((w, C::from_json(&t.coeff)?));
    }
    Ok(Series::from_terms(terms, dump.window))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_stable_layout() {
        let w = TruncationWindow::new(2, 3);
        let s = Series::from_terms(
            [
                (Word::from([2]), Rational::new(-1, 2)),
                (Word::from([0, 1]), Rational::one()),
                (Word::empty(), Rational::from(3)),
            ],
            w,
        );
        assert_eq!(
            to_json(&s),
            r#"{"window":{"L":2,"K":3,"O":0},"terms":[{"word":[],"coeff":"3"},{"word":[0,1],"coeff":"1"},{"word":[2],"coeff":"-1/2"}]}"#
        );
        let back: Series = from_json(&to_json(&s)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn tpoly_layout() {
        let w = TruncationWindow::new(1, 1);
        let s = Series::monomial(Word::from([1]), TPoly::t(), w);
        let text = to_json(&s);
        assert!(text.contains(r#""coeff":{"t":[["0","1"]]}"#));
        let back: Series<TPoly> = from_json(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_words_outside_window() {
        let text = r#"{"window":{"L":1,"K":1,"O":0},"terms":[{"word":[5],"coeff":"1"}]}"#;
        assert!(from_json::<Rational>(text).is_err());
    }
}
