//! Expression language for `gcrf eval`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := '-' term | primary
//! primary := NAME '(' expr (',' expr)* ')' | '(' expr ',' expr ')' | '(' expr ')'
//!          | NAME | 'd/d'COORD | INT | '"' polynomial '"'
//! ```
//!
//! Names resolve, in order, to the file's named vectors and forms, `A`,
//! `pi`, `Z` and `xi` (first contact pair), a coordinate function, and
//! `dCOORD`. A pair `(X, a)` is a section of `TM ⊕ T*M`; the integer `0`
//! stands for the zero tensor of whatever kind an operator expects.

use gcrf_core::biggeom::{courant_bracket, GenEndomorphism, GenSection};
use gcrf_core::scalar::Poly;
use gcrf_core::structures::TensorValue;
use gcrf_core::tensor::{
    c_concomitant, coord_form, coord_vector, cr_tensor, interior_product, lie_bracket, nijenhuis, pairing,
    poisson_bracket_1forms, schouten, schouten_concomitant, sharp, Co, Contra, DiffForm, Endomorphism, Multivector,
};

use crate::instance_file::LoadedInstance;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at {pos}: {msg}")]
pub struct EvalError {
    /// Byte offset into the expression.
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError { pos, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    CoordVector(String),
    Int(i64),
    Str(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, EvalError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    let ident_char = |c: u8| c.is_ascii_alphanumeric() || c == b'_';
    while k < b.len() {
        let c = b[k];
        if c.is_ascii_whitespace() {
            k += 1;
            continue;
        }
        let start = k;
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'"' => {
                let Some(end) = src[k + 1..].find('"') else {
                    return err(start, "unterminated string");
                };
                k += end + 2;
                out.push((Tok::Str(src[start + 1..start + 1 + end].to_string()), start));
                continue;
            }
            b'0'..=b'9' => {
                while k < b.len() && b[k].is_ascii_digit() {
                    k += 1;
                }
                let n = src[start..k].parse().map_err(|_| EvalError { pos: start, msg: "integer out of range".into() })?;
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while k < b.len() && ident_char(b[k]) {
                    k += 1;
                }
                let word = &src[start..k];
                if word == "d" && src[k..].starts_with("/d") {
                    let s = k + 2;
                    let mut e = s;
                    while e < b.len() && ident_char(b[e]) {
                        e += 1;
                    }
                    if e == s {
                        return err(s, "expected a coordinate after `d/d`");
                    }
                    k = e;
                    out.push((Tok::CoordVector(src[s..e].to_string()), start));
                } else {
                    out.push((Tok::Ident(word.to_string()), start));
                }
                continue;
            }
            _ => return err(start, format!("unexpected character `{}`", src[start..].chars().next().unwrap_or(' '))),
        };
        out.push((tok, start));
        k += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

/// Result of an evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Poly),
    /// A multivector field of any degree.
    Multi(Multivector),
    Form(DiffForm),
    Section(GenSection),
    Endo(Endomorphism),
}

impl Value {
    fn kind(&self) -> String {
        match self {
            Value::Scalar(_) => "a function".into(),
            Value::Multi(m) => format!("a {}-vector field", m.degree()),
            Value::Form(w) => format!("a {}-form", w.degree()),
            Value::Section(_) => "a section of TM + T*M".into(),
            Value::Endo(_) => "an endomorphism field".into(),
        }
    }

    fn is_zero_scalar(&self) -> bool {
        matches!(self, Value::Scalar(p) if p.is_zero())
    }

    pub fn into_tensor(self) -> TensorValue {
        match self {
            Value::Scalar(p) => TensorValue::Scalar(p),
            Value::Multi(m) => TensorValue::Multivector(m),
            Value::Form(w) => TensorValue::Form(w),
            Value::Section(s) => TensorValue::Section(s),
            Value::Endo(a) => TensorValue::Matrix(a),
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    m: &'a LoadedInstance,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), EvalError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            err(self.pos(), format!("expected {what}"))
        }
    }

    fn dim(&self) -> usize {
        self.m.instance.dim()
    }

    fn expr(&mut self) -> Result<(Value, usize), EvalError> {
        let (mut acc, start) = self.term()?;
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok((acc, start)),
            };
            let op = self.bump().1;
            let (rhs, _) = self.term()?;
            let rhs = if neg { negate(rhs) } else { rhs };
            acc = add(acc, rhs, op)?;
        }
    }

    fn term(&mut self) -> Result<(Value, usize), EvalError> {
        if *self.peek() == Tok::Minus {
            let p = self.bump().1;
            let (v, _) = self.term()?;
            return Ok((negate(v), p));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<(Value, usize), EvalError> {
        let (tok, p) = self.bump();
        let n = self.dim();
        let v = match tok {
            Tok::Int(k) => Value::Scalar(Poly::int(n, k)),
            Tok::Str(s) => Value::Scalar(
                Poly::parse(&s, &self.m.instance.patch).map_err(|e| EvalError { pos: p + 1, msg: e.to_string() })?,
            ),
            Tok::CoordVector(name) => match self.m.instance.patch.index_of(&name) {
                Some(i) => Value::Multi(coord_vector(n, i)),
                None => return err(p, format!("`{name}` is not a coordinate")),
            },
            Tok::LParen => {
                let (first, _) = self.expr()?;
                if *self.peek() == Tok::Comma {
                    self.bump();
                    let (second, p2) = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    let x = vector1((first, p + 1), n)?;
                    let a = form1((second, p2), n)?;
                    Value::Section(GenSection::new(x, a))
                } else {
                    self.expect(Tok::RParen, "`)`")?;
                    first
                }
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let mut args = vec![self.expr()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen, "`,` or `)`")?;
                    self.call(&name, p, args)?
                } else {
                    self.resolve(&name, p)?
                }
            }
            Tok::End => return err(p, "unexpected end of expression"),
            _ => return err(p, "expected an operand"),
        };
        Ok((v, p))
    }

    fn resolve(&self, name: &str, p: usize) -> Result<Value, EvalError> {
        let inst = &self.m.instance;
        let n = inst.dim();
        if let Some(v) = self.m.vectors.get(name) {
            return Ok(Value::Multi(v.clone()));
        }
        if let Some(w) = self.m.forms.get(name) {
            return Ok(Value::Form(w.clone()));
        }
        match name {
            "A" => return inst.a.clone().map(Value::Endo).ok_or(EvalError { pos: p, msg: "the instance has no A".into() }),
            "pi" => return Ok(Value::Multi(inst.pi.clone())),
            "Z" | "xi" => {
                let Some(c) = inst.contact.first() else {
                    return err(p, "the instance has no contact data");
                };
                return Ok(if name == "Z" { Value::Multi(c.z.clone()) } else { Value::Form(c.xi.clone()) });
            }
            _ => {}
        }
        if let Some(i) = inst.patch.index_of(name) {
            return Ok(Value::Scalar(Poly::var(n, i)));
        }
        if let Some(i) = name.strip_prefix('d').and_then(|c| inst.patch.index_of(c)) {
            return Ok(Value::Form(coord_form(n, i)));
        }
        err(p, format!("unknown name `{name}`"))
    }

    fn a(&self, p: usize) -> Result<Endomorphism, EvalError> {
        self.m.instance.a.clone().ok_or(EvalError { pos: p, msg: "the instance has no A".into() })
    }

    fn call(&self, name: &str, p: usize, args: Vec<(Value, usize)>) -> Result<Value, EvalError> {
        let n = self.dim();
        let pi = &self.m.instance.pi;
        let arity = |k: usize| -> Result<(), EvalError> {
            if args.len() == k {
                Ok(())
            } else {
                err(p, format!("`{name}` takes {k} argument{}, found {}", if k == 1 { "" } else { "s" }, args.len()))
            }
        };
        let mut it = args.clone().into_iter();
        let mut next = || it.next().expect("arity checked");
        Ok(match name {
            "lie" => {
                arity(2)?;
                let (x, y) = (vector1(next(), n)?, vector1(next(), n)?);
                Value::Multi(lie_bracket(&x, &y).map_err(|e| EvalError { pos: p, msg: e.to_string() })?)
            }
            "schouten" => {
                arity(2)?;
                let (x, y) = (as_vector(next().0, args[0].1, n)?, as_vector(next().0, args[1].1, n)?);
                Value::Multi(schouten(&x, &y))
            }
            "courant" => {
                arity(2)?;
                let (e1, e2) = (as_section(next(), n)?, as_section(next(), n)?);
                Value::Section(courant_bracket(&e1, &e2))
            }
            "d" => {
                arity(1)?;
                let (v, q) = next();
                match v {
                    Value::Scalar(f) => Value::Form(DiffForm::scalar(f).d()),
                    Value::Form(w) => Value::Form(w.d()),
                    other => return err(q, format!("`d` needs a form, found {}", other.kind())),
                }
            }
            "L" => {
                arity(2)?;
                let x = vector1(next(), n)?;
                let (v, _) = next();
                match v {
                    Value::Scalar(f) => Value::Scalar(pairing(&DiffForm::scalar(f).d(), &x)),
                    Value::Multi(t) => Value::Multi(t.lie_derivative(&x)),
                    Value::Form(w) => Value::Form(w.lie_derivative(&x)),
                    Value::Endo(a) => Value::Endo(a.lie_derivative(&x)),
                    Value::Section(s) => Value::Section(GenSection::new(s.vec.lie_derivative(&x), s.form.lie_derivative(&x))),
                }
            }
            "i" => {
                arity(2)?;
                let (u, q1) = next();
                let (t, q2) = next();
                match (u, t) {
                    (Value::Multi(x), Value::Form(w)) if x.degree() == 1 => {
                        Value::Form(interior_product::<Co>(&x, &w).map_err(|e| EvalError { pos: q2, msg: e.to_string() })?)
                    }
                    (Value::Form(a), Value::Multi(m)) if a.degree() == 1 => {
                        Value::Multi(interior_product::<Contra>(&a, &m).map_err(|e| EvalError { pos: q2, msg: e.to_string() })?)
                    }
                    (u, t) => {
                        return err(q1, format!("`i` contracts a vector into a form or a 1-form into a multivector, found {} and {}", u.kind(), t.kind()))
                    }
                }
            }
            "sharp" => {
                if args.len() == 1 {
                    Value::Multi(sharp(pi, &form1(next(), n)?))
                } else {
                    arity(2)?;
                    let (b, q) = next();
                    let b = as_vector(b, q, n)?;
                    if b.degree() != 2 {
                        return err(q, "`sharp` needs a bivector");
                    }
                    Value::Multi(sharp(&b, &form1(next(), n)?))
                }
            }
            "nijenhuis" | "S_A" => {
                arity(2)?;
                let a = self.a(p)?;
                let (x, y) = (vector1(next(), n)?, vector1(next(), n)?);
                Value::Multi(if name == "S_A" { cr_tensor(&a, &x, &y) } else { nijenhuis(&a, &x, &y) })
            }
            "S_Phi" => {
                arity(2)?;
                let phi = GenEndomorphism::quasi_classical(self.a(p)?, pi.clone());
                let (e1, e2) = (as_section(next(), n)?, as_section(next(), n)?);
                Value::Section(phi.s_phi(&e1, &e2))
            }
            "R" => {
                arity(2)?;
                let a = self.a(p)?;
                let (x, al) = (vector1(next(), n)?, form1(next(), n)?);
                Value::Multi(schouten_concomitant(pi, &a, &x, &al))
            }
            "C" => {
                arity(2)?;
                let a = self.a(p)?;
                let (al, be) = (form1(next(), n)?, form1(next(), n)?);
                Value::Form(c_concomitant(pi, &a, &al, &be))
            }
            "pb1" => {
                arity(2)?;
                let (al, be) = (form1(next(), n)?, form1(next(), n)?);
                Value::Form(poisson_bracket_1forms(pi, &al, &be))
            }
            _ => return err(p, format!("unknown operator `{name}`")),
        })
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Scalar(p) => Value::Scalar(-&p),
        Value::Multi(m) => Value::Multi(-&m),
        Value::Form(w) => Value::Form(-&w),
        Value::Section(s) => Value::Section(-&s),
        Value::Endo(a) => Value::Endo(-&a),
    }
}

fn add(a: Value, b: Value, pos: usize) -> Result<Value, EvalError> {
    if b.is_zero_scalar() {
        return Ok(a);
    }
    if a.is_zero_scalar() {
        return Ok(b);
    }
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
        (Value::Multi(x), Value::Multi(y)) if x.degree() == y.degree() => Value::Multi(&x + &y),
        (Value::Form(x), Value::Form(y)) if x.degree() == y.degree() => Value::Form(&x + &y),
        (Value::Section(x), Value::Section(y)) => Value::Section(&x + &y),
        (Value::Endo(x), Value::Endo(y)) => Value::Endo(&x + &y),
        (x, y) => return err(pos, format!("cannot add {} and {}", x.kind(), y.kind())),
    })
}

fn as_vector(v: Value, pos: usize, n: usize) -> Result<Multivector, EvalError> {
    match v {
        Value::Multi(m) => Ok(m),
        Value::Scalar(f) if f.is_zero() => Ok(Multivector::zero(n, 1)),
        Value::Scalar(f) => Ok(Multivector::scalar(f)),
        other => err(pos, format!("expected a multivector field, found {}", other.kind())),
    }
}

fn as_form(v: Value, pos: usize, n: usize) -> Result<DiffForm, EvalError> {
    match v {
        Value::Form(w) => Ok(w),
        Value::Scalar(f) if f.is_zero() => Ok(DiffForm::zero(n, 1)),
        other => err(pos, format!("expected a form, found {}", other.kind())),
    }
}

fn vector1((v, pos): (Value, usize), n: usize) -> Result<Multivector, EvalError> {
    let x = as_vector(v, pos, n)?;
    if x.degree() != 1 {
        return err(pos, format!("expected a vector field, found a {}-vector field", x.degree()));
    }
    Ok(x)
}

fn form1((v, pos): (Value, usize), n: usize) -> Result<DiffForm, EvalError> {
    let w = as_form(v, pos, n)?;
    if w.degree() != 1 {
        return err(pos, format!("expected a 1-form, found a {}-form", w.degree()));
    }
    Ok(w)
}

fn as_section((v, pos): (Value, usize), n: usize) -> Result<GenSection, EvalError> {
    match v {
        Value::Section(s) => Ok(s),
        Value::Multi(m) if m.degree() == 1 => Ok(GenSection::from_vector(m)),
        Value::Form(w) if w.degree() == 1 => Ok(GenSection::from_form(w)),
        Value::Scalar(f) if f.is_zero() => Ok(GenSection::zero(n)),
        other => err(pos, format!("expected a section of TM + T*M, found {}", other.kind())),
    }
}

/// Evaluates `src` against the tensors of `m`.
pub fn evaluate(m: &LoadedInstance, src: &str) -> Result<Value, EvalError> {
    let mut p = Parser { toks: lex(src)?, at: 0, m };
    let (v, _) = p.expr()?;
    if *p.peek() != Tok::End {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(v)
}

/// Canonical printed form of a value.
pub fn render(m: &LoadedInstance, v: Value) -> String {
    v.into_tensor().display(&m.instance.patch).to_string()
}
