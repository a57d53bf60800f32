//! Text, LaTeX and JSON renderings of elements.
//!
//! The JSON form is
//! `{"terms": [{"coeff": {"num": text, "den": [text, …]}, "word": [["z", i, j] | ["t", i] | …]}]}`
//! with one `den` entry per linear factor, repeated by multiplicity.

use reducta::coeffring::Coefficient;
use reducta::weights::GeneratorId;
use reducta::zn::{Basis, ZElement};
use reducta::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::expr::{parse, parse_element};

/// Output formats shared by the element-printing commands.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct CoeffJson {
    pub num: String,
    pub den: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct TermJson {
    pub coeff: CoeffJson,
    pub word: Vec<Value>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug, Default)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

fn coeff_json(c: &Coefficient) -> CoeffJson {
    let mut den = Vec::new();
    for (lf, m) in c.den_linear() {
        den.extend(std::iter::repeat_n(lf.to_string(), *m as usize));
    }
    if !c.den_general().is_one() {
        den.push(c.den_general().to_string());
    }
    CoeffJson {
        num: c.numerator().to_string(),
        den,
    }
}

fn letter_json(basis: Basis, g: GeneratorId) -> Value {
    let (name, cartan) = match (basis, g.is_cartan()) {
        (Basis::Plain, true) => ("t", true),
        (Basis::Plain, false) => ("z", false),
        (Basis::Hat, true) => ("tring", true),
        (Basis::Hat, false) => ("zhat", false),
    };
    if cartan {
        serde_json::json!([name, g.i])
    } else {
        serde_json::json!([name, g.i, g.j])
    }
}

pub fn to_json(x: &ZElement) -> ElementJson {
    ElementJson {
        terms: x
            .iter()
            .map(|(w, c)| TermJson {
                coeff: coeff_json(c),
                word: w.iter().map(|&g| letter_json(x.basis(), g)).collect(),
            })
            .collect(),
    }
}

pub fn to_json_string(x: &ZElement) -> String {
    serde_json::to_string_pretty(&to_json(x)).expect("serializable")
}

fn bad_json(msg: impl Into<String>) -> Error {
    Error::Syntax { pos: 0, msg: msg.into() }
}

fn letter_from_json(v: &Value, n: usize) -> Result<(Basis, GeneratorId)> {
    let arr = v.as_array().ok_or_else(|| bad_json("a letter must be an array"))?;
    let name = arr.first().and_then(Value::as_str).ok_or_else(|| bad_json("letter name missing"))?;
    let idx: Vec<usize> = arr[1..]
        .iter()
        .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| bad_json("letter index must be a number")))
        .collect::<Result<_>>()?;
    if idx.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::IndexOutOfRange(format!("{v} (rank {n})")));
    }
    match (name, idx.as_slice()) {
        ("z", &[i, j]) => Ok((Basis::Plain, GeneratorId::new(i, j))),
        ("t", &[i]) => Ok((Basis::Plain, GeneratorId::new(i, i))),
        ("zhat", &[i, j]) => Ok((Basis::Hat, GeneratorId::new(i, j))),
        ("tring", &[i]) => Ok((Basis::Hat, GeneratorId::new(i, i))),
        _ => Err(bad_json(format!("unknown letter {v}"))),
    }
}

/// Inverse of [`to_json`] for rank `n`.
pub fn from_json(json: &ElementJson, n: usize) -> Result<ZElement> {
    let mut basis = None;
    let mut out = ZElement::zero(n);
    for term in &json.terms {
        let mut c = parse_element(&term.coeff.num, n)?.coeff(&[]);
        for d in &term.coeff.den {
            c = c.checked_div(&parse_element(d, n)?.coeff(&[]))?;
        }
        let mut word = Vec::new();
        for v in &term.word {
            let (b, g) = letter_from_json(v, n)?;
            if basis.is_some_and(|prev| prev != b) {
                return Err(bad_json("plain and hat letters mixed"));
            }
            basis = Some(b);
            word.push(g);
        }
        out.add_term(word, c);
    }
    Ok(out.with_basis(basis.unwrap_or(Basis::Plain)))
}

pub fn from_json_str(s: &str, n: usize) -> Result<ZElement> {
    let json: ElementJson = serde_json::from_str(s).map_err(|e| bad_json(e.to_string()))?;
    from_json(&json, n)
}

/// LaTeX of the canonical text form.
pub fn to_latex(x: &ZElement) -> String {
    parse(&x.to_string(), x.n()).expect("canonical text parses").to_latex()
}

pub fn render(x: &ZElement, format: Format) -> String {
    match format {
        Format::Text => x.to_string(),
        Format::Latex => to_latex(x),
        Format::Json => to_json_string(x),
    }
}
