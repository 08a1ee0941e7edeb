//! Small-cancellation checkers for free groups and free products: the
//! symmetrised family, its pieces, and the `C′(λ)` and `T(q)` conditions.

mod factor;
mod family;
mod template;

use num_rational::Ratio;
use thiserror::Error;

pub use factor::{Element, Factor};
pub use family::{
    cprime, inverse_word, pieces, product_reduced, t_violation, triple_violation, validate_relator, verify_piece, CPrimeVerdict,
    CPrimeWitness, Letter, Multiply, Piece, PieceReport, SymmetrizedFamily,
};
pub use template::{Affine, Expanded, FactorSpec, Groups, Param, Presentation, Relators, Template, Term, MAX_EXPANDED};

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no relators")]
    NoRelators,
    #[error("relator {0} is empty")]
    TrivialRelator(usize),
    #[error("relator {0} is not reduced")]
    NotReduced(usize),
    #[error("relator {0} is not cyclically reduced")]
    NotCyclicallyReduced(usize),
    #[error("relator {0} has free-product length below 2")]
    TooShort(usize),
    #[error("{label}: {source}")]
    InRelator { label: String, source: Box<ScError> },
    #[error("relator {0} is trivial after substitution")]
    TrivialAfterSubstitution(String),
    #[error("empty index set")]
    EmptyIndexSet,
    #[error("T({0}) is not supported here (free products: t = 4; free groups: t >= 3)")]
    UnsupportedT(usize),
    #[error("lambda must lie strictly between 0 and 1, got {0}")]
    InvalidLambda(String),
    #[error("malformed element: {0}")]
    Malformed(String),
}

/// A letter of a free product: a nontrivial element of one factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorLetter {
    pub factor: usize,
    pub element: Element,
}

impl Letter for FactorLetter {
    fn inverse(&self) -> Self {
        FactorLetter { factor: self.factor, element: self.element.inverse() }
    }

    fn same_factor(&self, other: &Self) -> bool {
        self.factor == other.factor
    }
}

impl Multiply for FactorLetter {
    fn times(&self, other: &Self) -> Self {
        FactorLetter { factor: self.factor, element: self.element.multiply(&other.element).expect("same factor") }
    }
}

/// Free-group word with runs written as powers, e.g. `a^2 b^-1`.
pub fn render_free(symbols: &[String], w: &[i32]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let j = (i..w.len()).find(|&j| w[j] != w[i]).unwrap_or(w.len());
        let x = w[i];
        let e = (j - i) as i64 * i64::from(x.signum());
        parts.push(factor::power(&symbols[x.unsigned_abs() as usize - 1], e));
        i = j;
    }
    parts.join(" ")
}

/// Free-product word; letters spanning several symbols are parenthesised.
pub fn render_product(factors: &[FactorSpec], w: &[FactorLetter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|x| {
            let s = x.element.render(&factors[x.factor].symbols);
            if s.contains(' ') {
                format!("({s})")
            } else {
                s
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorInfo {
    pub label: String,
    pub word: String,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceInfo {
    pub word: String,
    pub length: usize,
    pub consolidated: bool,
    pub witnesses: (String, String),
    /// `|p| / |r|` against the shortest admitting member.
    pub ratio: Ratio<i64>,
    pub shortest: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPrimeInfo {
    pub piece: String,
    pub piece_length: usize,
    pub relator: String,
    pub relator_length: usize,
    pub other: String,
    pub ratio: Ratio<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPrimeOutcome {
    pub pass: bool,
    pub max_ratio: Ratio<i64>,
    pub witness: Option<CPrimeInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TWitness {
    /// Relators `r₀ … r_{h-1}` with no product `rᵢ r_{i+1}` (weakly) reduced:
    /// symmetrised members for free groups, input relators for free products.
    Cycle(Vec<String>),
    /// Letters of the input relators with `y₁ y₂ y₃ = 1`.
    Letters { factor: String, letters: [String; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TOutcome {
    pub pass: bool,
    pub witness: Option<TWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScReport {
    pub free_product: bool,
    pub lambda: Ratio<i64>,
    pub t: usize,
    pub relators: Vec<RelatorInfo>,
    pub family_size: usize,
    pub max_piece: usize,
    pub pieces: Vec<PieceInfo>,
    pub cprime: CPrimeOutcome,
    pub t_condition: TOutcome,
    pub notes: Vec<String>,
}

/// Expands `p`, symmetrises, and decides `C′(λ)` and `T(t)`.
pub fn check_small_cancellation(p: &Presentation, lambda: Ratio<i64>, t: usize) -> Result<ScReport, ScError> {
    if lambda <= Ratio::from_integer(0) || lambda >= Ratio::from_integer(1) {
        return Err(ScError::InvalidLambda(lambda.to_string()));
    }
    let expanded = p.expand()?;
    match (&p.groups, expanded.relators) {
        (Groups::Free { generators }, Relators::Free(rs)) => {
            if t < 3 {
                return Err(ScError::UnsupportedT(t));
            }
            let render = |w: &[i32]| render_free(generators, w);
            let fam = symmetrize_labelled(rs, &expanded.labels)?;
            let walk = t_violation(&fam, t).map(|w| TWitness::Cycle(w.into_iter().map(|i| render(&fam.members[i])).collect()));
            Ok(assemble(&fam, &expanded.labels, lambda, t, &render, walk, Vec::new(), false))
        }
        (Groups::Product { factors }, Relators::Product(rs)) => {
            if t != 4 {
                return Err(ScError::UnsupportedT(t));
            }
            if let Some(i) = rs.iter().position(|r| r.len() < 2) {
                return Err(ScError::InRelator { label: expanded.labels[i].clone(), source: Box::new(ScError::TooShort(i)) });
            }
            let render = |w: &[FactorLetter]| render_product(factors, w);
            let fam = symmetrize_labelled(rs, &expanded.labels)?;
            // Both parts of T(4) quantify over the input relators here.
            let walk = triple_violation(&fam.relators)
                .map(|w| TWitness::Cycle(w.into_iter().map(|i| render(&fam.relators[i])).collect()));
            let witness = walk.or_else(|| letter_triple(factors, &fam.relators));
            let notes = vec![
                "cyclic conjugates are taken at letter boundaries".to_string(),
                "relators of free-product length below 2 are refused".to_string(),
            ];
            Ok(assemble(&fam, &expanded.labels, lambda, t, &render, witness, notes, true))
        }
        _ => unreachable!("expansion follows the declared groups"),
    }
}

fn symmetrize_labelled<L: Letter>(rs: Vec<Vec<L>>, labels: &[String]) -> Result<SymmetrizedFamily<L>, ScError> {
    SymmetrizedFamily::new(rs).map_err(|e| match e {
        ScError::NotReduced(i) | ScError::NotCyclicallyReduced(i) | ScError::TrivialRelator(i) => {
            ScError::InRelator { label: labels[i].clone(), source: Box::new(e) }
        }
        other => other,
    })
}

#[allow(clippy::too_many_arguments)]
fn assemble<L: Letter>(
    fam: &SymmetrizedFamily<L>,
    labels: &[String],
    lambda: Ratio<i64>,
    t: usize,
    render: &dyn Fn(&[L]) -> String,
    t_witness: Option<TWitness>,
    notes: Vec<String>,
    free_product: bool,
) -> ScReport {
    let member = |i: usize| render(&fam.members[i]);
    let rep = pieces(fam);
    let pieces = rep
        .pieces
        .iter()
        .map(|p| PieceInfo {
            word: render(&p.word),
            length: p.len(),
            consolidated: p.consolidated,
            witnesses: (member(p.witnesses.0), member(p.witnesses.1)),
            ratio: p.ratio,
            shortest: member(p.shortest),
        })
        .collect();
    let v = cprime(fam, lambda);
    let cprime = CPrimeOutcome {
        pass: v.pass,
        max_ratio: v.max_ratio,
        witness: v.witness.map(|w| CPrimeInfo {
            piece: render(&w.piece),
            piece_length: w.piece.len(),
            relator: member(w.relator),
            relator_length: fam.members[w.relator].len(),
            other: member(w.other),
            ratio: w.ratio,
        }),
    };
    ScReport {
        free_product,
        lambda,
        t,
        relators: fam
            .relators
            .iter()
            .zip(labels)
            .map(|(r, l)| RelatorInfo { label: l.clone(), word: render(r), length: r.len() })
            .collect(),
        family_size: fam.len(),
        max_piece: rep.max_length,
        pieces,
        cprime,
        t_condition: TOutcome { pass: t_witness.is_none(), witness: t_witness },
        notes,
    }
}

/// Letters `y₁, y₂, y₃` of one factor, each occurring in an input relator,
/// with `y₁ y₂ y₃ = 1`. Such a product is trivial in the free product only
/// when all three letters lie in one factor.
fn letter_triple(factors: &[FactorSpec], relators: &[Vec<FactorLetter>]) -> Option<TWitness> {
    for (f, spec) in factors.iter().enumerate() {
        let mut ys: Vec<&Element> =
            relators.iter().flatten().filter(|x| x.factor == f).map(|x| &x.element).collect();
        ys.sort();
        ys.dedup();
        for a in &ys {
            for b in &ys {
                let ab = a.multiply(b).expect("same factor");
                for c in &ys {
                    if ab.multiply(c).expect("same factor").is_identity() {
                        let r = |e: &Element| e.render(&spec.symbols);
                        return Some(TWitness::Letters { factor: spec.name.clone(), letters: [r(a), r(b), r(c)] });
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(text: &str, lambda: (i64, i64), t: usize) -> ScReport {
        check_small_cancellation(&Presentation::parse(text).unwrap(), Ratio::new(lambda.0, lambda.1), t).unwrap()
    }

    #[test]
    fn free_group_examples() {
        let r = check("generators a b\nparam n = 1..3\nrelator (a^n b^n)^5", (1, 4), 4);
        assert!(r.cprime.pass && r.t_condition.pass);
        assert_eq!(r.family_size, 24);
        let r = check("generators a b\nparam n = 1..3\nrelator (a^n b^n)^4", (1, 4), 4);
        assert!(!r.cprime.pass && r.t_condition.pass);
        let w = r.cprime.witness.unwrap();
        assert_eq!((w.piece_length, w.relator_length), (2, 8));
        assert!(!r.free_product);
    }

    #[test]
    fn free_product_examples() {
        let k = "factor F1 free-abelian 2 a b\nfactor F2 free-abelian 2 c d\nparam n = 1..2\nrelator (a^n b^n c^n d^n)^5";
        let r = check(k, (1, 4), 4);
        assert!(r.cprime.pass && r.t_condition.pass, "{r:?}");
        assert!(r.free_product);
        assert!(r.pieces.iter().all(|p| p.length <= 1));

        let h = |p: u32| {
            format!("factor A cyclic {p} a\nfactor B cyclic {p} b\nfactor C cyclic {p} c\nfactor D cyclic {p} d\nparam n = 1..2\nrelator [(ab)^n,(cd)^n]^5")
        };
        let r = check(&h(4), (1, 4), 4);
        assert!(r.cprime.pass && r.t_condition.pass, "{r:?}");
        let r = check(&h(4).replace("cyclic 4 a", "cyclic 3 a"), (1, 4), 4);
        assert!(matches!(r.t_condition.witness, Some(TWitness::Letters { .. })));
    }

    #[test]
    fn input_errors() {
        let p = Presentation::parse("generators a b\nrelator a b a^-1").unwrap();
        let e = check_small_cancellation(&p, Ratio::new(1, 4), 4).unwrap_err();
        assert!(e.to_string().contains("a b a^-1"), "{e}");
        assert!(matches!(check_small_cancellation(&p, Ratio::new(1, 1), 4), Err(ScError::InvalidLambda(_))));
        let p = Presentation::parse("factor A cyclic 5 a\nfactor B cyclic 5 b\nrelator a b").unwrap();
        assert!(matches!(check_small_cancellation(&p, Ratio::new(1, 4), 5), Err(ScError::UnsupportedT(5))));
        let p = Presentation::parse("factor A cyclic 5 a\nfactor B cyclic 5 b\nrelator a^2").unwrap();
        assert!(check_small_cancellation(&p, Ratio::new(1, 4), 4).is_err());
    }
}
