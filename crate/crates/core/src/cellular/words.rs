use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tableaux::{perm, CosetRep, StdTableau};

/// One letter of a word in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Token {
    T(usize),
    TInv(usize),
    E(usize),
    /// `X_j^a`.
    X(usize, i64),
    /// `X_i - u_s`.
    XMinusU(usize, usize),
    /// `Σ_w T_w` over a list of words.
    Sum(Vec<GenWord>),
}

/// A product of tokens, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GenWord(pub Vec<Token>);

impl GenWord {
    pub fn identity() -> Self {
        GenWord(Vec::new())
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `T_{i_1} ⋯ T_{i_k}`.
    pub fn t_word(word: &[usize]) -> Self {
        GenWord(word.iter().map(|&i| Token::T(i)).collect())
    }

    pub fn push(&mut self, t: Token) {
        if let Token::X(_, 0) = t {
            return;
        }
        self.0.push(t);
    }

    pub fn extend(&mut self, w: GenWord) {
        for t in w.0 {
            self.push(t);
        }
    }

    pub fn concat(mut self, w: GenWord) -> Self {
        self.extend(w);
        self
    }

    /// The anti-involution `*`: reverse every product, fixing each generator.
    pub fn star(&self) -> Self {
        GenWord(
            self.0
                .iter()
                .rev()
                .map(|t| match t {
                    Token::Sum(ws) => Token::Sum(ws.iter().map(|w| w.star()).collect()),
                    other => other.clone(),
                })
                .collect(),
        )
    }

    /// Checks every index against `n` strands and `r` parameters.
    pub fn validate(&self, n: usize, r: usize) -> Result<()> {
        let bad = |what: String| Err(Error::OutOfRange(what));
        for t in &self.0 {
            match t {
                Token::T(i) | Token::TInv(i) | Token::E(i) if *i == 0 || *i >= n => {
                    return bad(format!("generator index {i} outside 1..{n}"))
                }
                Token::X(j, _) if *j == 0 || *j > n => return bad(format!("X index {j} outside 1..={n}")),
                Token::XMinusU(i, s) if *i == 0 || *i > n || *s == 0 || *s > r => {
                    return bad(format!("(X_{i} - u_{s}) outside n = {n}, r = {r}"))
                }
                Token::Sum(ws) => {
                    for w in ws {
                        w.validate(n, r)?;
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::T(i) => write!(f, "T{i}"),
            Token::TInv(i) => write!(f, "T{i}^-1"),
            Token::E(i) => write!(f, "E{i}"),
            Token::X(j, 1) => write!(f, "X{j}"),
            Token::X(j, a) => write!(f, "X{j}^{a}"),
            Token::XMinusU(i, s) => write!(f, "(X{i}-u{s})"),
            Token::Sum(ws) => {
                let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                write!(f, "[{}]", parts.join(" + "))
            }
        }
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `E^f = E_{n-1} E_{n-3} ⋯ E_{n-2f+1}`.
pub fn e_f(f: usize, n: usize) -> GenWord {
    GenWord((1..=f).map(|j| Token::E(n + 1 - 2 * j)).collect())
}

/// `X^κ = X_{n-1}^{k_{n-1}} X_{n-3}^{k_{n-3}} ⋯`, zero exponents dropped.
pub fn x_kappa(kappa: &[i64]) -> GenWord {
    let n = kappa.len();
    let mut w = GenWord::identity();
    let mut i = n;
    while i >= 2 {
        w.push(Token::X(i - 1, kappa[i - 2]));
        i -= 2;
    }
    w
}

/// `M_st = T_{d(s)^-1} Π_{s≥2} Π_{i ≤ a_{s-1}} (X_i - u_s) Σ_{w ∈ S_λ} T_w T_{d(t)}`.
pub fn m_word(s: &StdTableau, t: &StdTableau) -> Result<GenWord> {
    if s.shape() != t.shape() {
        return Err(Error::ShapeMismatch(format!("{} vs {}", s.shape(), t.shape())));
    }
    let shape = s.shape();
    if shape.is_empty() {
        return Ok(GenWord::identity());
    }
    let mut w = GenWord::t_word(&perm::reduced_word(&perm::inverse(&s.d())));
    let mut a = 0;
    for comp in 2..=shape.r() {
        a += shape.component(comp - 1).iter().sum::<usize>();
        for i in 1..=a {
            w.push(Token::XMinusU(i, comp));
        }
    }
    let stab = crate::tableaux::row_stabilizer(shape);
    w.push(Token::Sum(stab.iter().map(|g| GenWord::t_word(&perm::reduced_word(g))).collect()));
    w.extend(GenWord::t_word(&perm::reduced_word(&t.d())));
    Ok(w)
}

/// One index `(t, κ, d)` of the cell datum.
#[derive(Clone, Debug)]
pub struct CellIndex {
    pub t: StdTableau,
    pub kappa: Vec<i64>,
    pub d: CosetRep,
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?}, {:?})", self.t, self.kappa, self.d.word)
    }
}

/// `C = T_e^* X^ρ E^f M_st X^κ T_d`.
pub fn cell_word(f: usize, n: usize, left: &CellIndex, right: &CellIndex) -> Result<GenWord> {
    let te = GenWord::t_word(&left.d.reduced_word()).star();
    let m = m_word(&left.t, &right.t)?;
    let w = te
        .concat(x_kappa(&left.kappa))
        .concat(e_f(f, n))
        .concat(m)
        .concat(x_kappa(&right.kappa))
        .concat(GenWord::t_word(&right.d.reduced_word()));
    Ok(w)
}
