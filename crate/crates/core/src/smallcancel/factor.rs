use super::ScError;

/// A free factor of a free product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    /// `Z/p`; `p = 0` is the infinite cyclic group.
    Cyclic(u32),
    FreeAbelian(usize),
    Free(usize),
}

impl Factor {
    /// Number of generating symbols.
    pub fn rank(&self) -> usize {
        match *self {
            Factor::Cyclic(_) => 1,
            Factor::FreeAbelian(r) | Factor::Free(r) => r,
        }
    }

    pub fn identity(&self) -> Element {
        match *self {
            Factor::Cyclic(p) => Element::Cyclic { k: 0, p },
            Factor::FreeAbelian(r) => Element::Vector(vec![0; r]),
            Factor::Free(_) => Element::Word(Vec::new()),
        }
    }

    /// The `i`-th generator raised to `sign = ±1`.
    pub fn generator(&self, i: usize, sign: i64) -> Element {
        match *self {
            Factor::Cyclic(p) => Element::Cyclic { k: 0, p }.add_k(sign),
            Factor::FreeAbelian(r) => {
                let mut v = vec![0; r];
                v[i] = sign;
                Element::Vector(v)
            }
            Factor::Free(_) => Element::Word(vec![sign as i32 * (i as i32 + 1)]),
        }
    }
}

/// An element of a factor; each variant carries what its arithmetic needs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    /// Residue `k` in `[0, p)`, or any integer when `p = 0`.
    Cyclic { k: i64, p: u32 },
    Vector(Vec<i64>),
    /// Freely reduced; letter `±(i + 1)` is generator `i` to the power `±1`.
    Word(Vec<i32>),
}

impl Element {
    fn add_k(self, d: i64) -> Element {
        match self {
            Element::Cyclic { k, p } => Element::Cyclic { k: reduce_mod(k + d, p), p },
            other => other,
        }
    }

    pub fn multiply(&self, other: &Element) -> Result<Element, ScError> {
        match (self, other) {
            (Element::Cyclic { k: a, p }, Element::Cyclic { k: b, p: q }) if p == q => {
                Ok(Element::Cyclic { k: reduce_mod(a + b, *p), p: *p })
            }
            (Element::Vector(a), Element::Vector(b)) if a.len() == b.len() => {
                Ok(Element::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
            (Element::Word(a), Element::Word(b)) => Ok(Element::Word(free_reduce(a.iter().chain(b).copied()))),
            _ => Err(ScError::Malformed(format!("cannot multiply {self:?} by {other:?}"))),
        }
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::Cyclic { k, p } => Element::Cyclic { k: reduce_mod(-k, *p), p: *p },
            Element::Vector(v) => Element::Vector(v.iter().map(|x| -x).collect()),
            Element::Word(w) => Element::Word(w.iter().rev().map(|x| -x).collect()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Cyclic { k, .. } => *k == 0,
            Element::Vector(v) => v.iter().all(|&x| x == 0),
            Element::Word(w) => w.is_empty(),
        }
    }

    /// Written in the factor's symbols, e.g. `c^3`, `a^2 b^-1`.
    pub fn render(&self, symbols: &[String]) -> String {
        let parts: Vec<String> = match self {
            Element::Cyclic { k, p } => {
                // Residues past p/2 read better as negative powers.
                let k = if *p > 0 && 2 * k > i64::from(*p) { k - i64::from(*p) } else { *k };
                vec![power(&symbols[0], k)]
            }
            Element::Vector(v) => v.iter().zip(symbols).filter(|(x, _)| **x != 0).map(|(x, s)| power(s, *x)).collect(),
            Element::Word(w) => return super::render_free(symbols, w),
        };
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

pub(crate) fn power(s: &str, e: i64) -> String {
    if e == 1 {
        s.to_string()
    } else {
        format!("{s}^{e}")
    }
}

fn reduce_mod(k: i64, p: u32) -> i64 {
    if p == 0 {
        k
    } else {
        k.rem_euclid(i64::from(p))
    }
}

/// Stack-based free reduction.
pub(crate) fn free_reduce(letters: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for x in letters {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}
