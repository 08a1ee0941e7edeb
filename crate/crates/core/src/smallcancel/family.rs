use std::collections::BTreeSet;
use std::fmt::Debug;

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use rayon::prelude::*;

use super::ScError;

/// A letter of a free group or of a free product.
pub trait Letter: Clone + Ord + Debug + Send + Sync {
    fn inverse(&self) -> Self;
    /// Whether two letters lie in one free factor and so merge when adjacent.
    /// Always false in a free group.
    fn same_factor(&self, other: &Self) -> bool;
}

impl Letter for i32 {
    fn inverse(&self) -> Self {
        -self
    }

    fn same_factor(&self, _: &Self) -> bool {
        false
    }
}

/// Whether `x y` is a legal adjacent pair in a (weakly) reduced word.
fn adjacent_ok<L: Letter>(x: &L, y: &L) -> bool {
    *y != x.inverse() && !x.same_factor(y)
}

/// Whether the product `p u` of two reduced words is (weakly) reduced.
pub fn product_reduced<L: Letter>(p: &[L], u: &[L]) -> bool {
    match (p.last(), u.first()) {
        (Some(x), Some(y)) => *y != x.inverse(),
        _ => true,
    }
}

pub fn inverse_word<L: Letter>(w: &[L]) -> Vec<L> {
    w.iter().rev().map(Letter::inverse).collect()
}

/// Checks reducedness, including across the cyclic seam; on failure names the
/// offending relator by index.
pub fn validate_relator<L: Letter>(index: usize, r: &[L]) -> Result<(), ScError> {
    if r.is_empty() {
        return Err(ScError::TrivialRelator(index));
    }
    if r.windows(2).any(|w| !adjacent_ok(&w[0], &w[1])) {
        return Err(ScError::NotReduced(index));
    }
    if r.len() > 1 && !adjacent_ok(&r[r.len() - 1], &r[0]) {
        return Err(ScError::NotCyclicallyReduced(index));
    }
    Ok(())
}

/// Input relators closed under letter-boundary rotations and inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetrizedFamily<L> {
    pub relators: Vec<Vec<L>>,
    /// Sorted and deduplicated.
    pub members: Vec<Vec<L>>,
}

impl<L: Letter> SymmetrizedFamily<L> {
    pub fn new(relators: Vec<Vec<L>>) -> Result<Self, ScError> {
        if relators.is_empty() {
            return Err(ScError::NoRelators);
        }
        let mut set = BTreeSet::new();
        for (i, r) in relators.iter().enumerate() {
            validate_relator(i, r)?;
            for w in [r.clone(), inverse_word(r)] {
                for s in 0..w.len() {
                    set.insert(w[s..].iter().chain(&w[..s]).cloned().collect::<Vec<L>>());
                }
            }
        }
        Ok(SymmetrizedFamily { relators, members: set.into_iter().collect() })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &[L]) -> bool {
        self.members.binary_search_by(|m| m.as_slice().cmp(w)).is_ok()
    }

    /// Length of the longest piece shared by members `i` and `j`, and whether
    /// its last letter is a consolidated junction letter.
    pub fn pair_piece(&self, i: usize, j: usize) -> (usize, bool) {
        let (a, b) = (&self.members[i], &self.members[j]);
        let l = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        if l < a.len() && l < b.len() && a[l].same_factor(&b[l]) {
            (l + 1, true)
        } else {
            (l, false)
        }
    }

    /// Whether `r = p u` with the product (weakly) reduced for some `u`.
    pub fn admits(r: &[L], p: &[L]) -> bool {
        let Some((last, head)) = p.split_last() else { return true };
        r.len() >= p.len() && r[..head.len()] == *head && (r[head.len()] == *last || r[head.len()].same_factor(last))
    }

    /// The cofactor `u` with `r = p u`; requires `admits(r, p)`.
    pub fn cofactor(r: &[L], p: &[L]) -> Vec<L>
    where
        L: Multiply,
    {
        let k = p.len();
        if k == 0 || r[k - 1] == p[k - 1] {
            return r[k..].to_vec();
        }
        let junction = p[k - 1].inverse().times(&r[k - 1]);
        std::iter::once(junction).chain(r[k..].iter().cloned()).collect()
    }
}

/// Multiplication within one factor, needed to split a junction letter.
pub trait Multiply: Letter {
    /// Product of two letters of one factor; never the identity when called.
    fn times(&self, other: &Self) -> Self;
}

impl Multiply for i32 {
    fn times(&self, _: &Self) -> Self {
        unreachable!("free-group letters never consolidate")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece<L> {
    pub word: Vec<L>,
    /// Whether the last letter is a consolidated junction letter.
    pub consolidated: bool,
    /// Distinct members `r₁ = p u₁` and `r₂ = p u₂`, by index.
    pub witnesses: (usize, usize),
    /// `|p| / |r|` for the shortest member `r` admitting `r = p u`.
    pub ratio: Ratio<i64>,
    pub shortest: usize,
}

impl<L> Piece<L> {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceReport<L> {
    /// Maximal pieces, longest first.
    pub pieces: Vec<Piece<L>>,
    pub max_length: usize,
}

/// Longest pieces over all unordered pairs, as `(length, consolidated, i, j)`.
fn pair_scan<L: Letter>(fam: &SymmetrizedFamily<L>) -> Vec<(usize, bool, usize, usize)> {
    let m = fam.len();
    (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..m).filter_map(move |j| {
                let (l, c) = fam.pair_piece(i, j);
                (l > 0).then_some((l, c, i, j))
            })
        })
        .collect()
}

pub fn pieces<L: Letter>(fam: &SymmetrizedFamily<L>) -> PieceReport<L> {
    let mut words: Vec<(Vec<L>, bool, usize, usize)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (l, c, i, j) in pair_scan(fam) {
        let word = fam.members[i][..l].to_vec();
        if seen.insert(word.clone()) {
            words.push((word, c, i, j));
        }
    }
    let maximal: Vec<_> = words
        .iter()
        .filter(|(w, ..)| !seen.iter().any(|o: &Vec<L>| o.len() > w.len() && o.starts_with(w)))
        .cloned()
        .collect();
    let mut pieces: Vec<Piece<L>> = maximal
        .into_iter()
        .map(|(word, consolidated, i, j)| {
            let shortest = (0..fam.len())
                .filter(|&k| SymmetrizedFamily::admits(&fam.members[k], &word))
                .min_by_key(|&k| (fam.members[k].len(), k))
                .expect("a witness admits its piece");
            let ratio = Ratio::new(word.len() as i64, fam.members[shortest].len() as i64);
            Piece { word, consolidated, witnesses: (i, j), ratio, shortest }
        })
        .collect();
    pieces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.word.cmp(&b.word)));
    PieceReport { max_length: pieces.first().map_or(0, Piece::len), pieces }
}

/// Re-checks a piece letter by letter: both witnesses factor as `p u` with
/// the product (weakly) reduced, and they are distinct.
pub fn verify_piece<L: Multiply>(fam: &SymmetrizedFamily<L>, piece: &Piece<L>) -> bool {
    let (i, j) = piece.witnesses;
    if i == j || fam.members[i] == fam.members[j] {
        return false;
    }
    [i, j].iter().all(|&k| {
        let r = &fam.members[k];
        if !SymmetrizedFamily::admits(r, &piece.word) {
            return false;
        }
        let u = SymmetrizedFamily::cofactor(r, &piece.word);
        let reduced = |w: &[L]| w.windows(2).all(|x| adjacent_ok(&x[0], &x[1]));
        reduced(&piece.word) && reduced(&u) && product_reduced(&piece.word, &u)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPrimeWitness<L> {
    pub piece: Vec<L>,
    /// Member with `r = p u`, of length at most `|p| / λ`.
    pub relator: usize,
    pub other: usize,
    pub ratio: Ratio<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPrimeVerdict<L> {
    pub pass: bool,
    /// Largest `|p| / |r|` over pieces and members admitting them.
    pub max_ratio: Ratio<i64>,
    /// The pair attaining the maximum; present whenever a piece exists.
    pub witness: Option<CPrimeWitness<L>>,
}

/// `C′(λ)`: every piece `p` and member `r = p u` satisfy `|p| < λ|r|`.
/// Checking both members of each maximal pair covers every admissible `r`,
/// since any such `r` forms a pair with either witness.
pub fn cprime<L: Letter>(fam: &SymmetrizedFamily<L>, lambda: Ratio<i64>) -> CPrimeVerdict<L> {
    let mut best: Option<(Ratio<i64>, usize, usize, usize, usize)> = None;
    for (l, _, i, j) in pair_scan(fam) {
        for (r, o) in [(i, j), (j, i)] {
            let len = fam.members[r].len();
            let ratio = Ratio::new(l as i64, len as i64);
            let better = best.as_ref().is_none_or(|b| (ratio, std::cmp::Reverse(len)) > (b.0, std::cmp::Reverse(fam.members[b.1].len())));
            if better {
                best = Some((ratio, r, o, l, len));
            }
        }
    }
    match best {
        None => CPrimeVerdict { pass: true, max_ratio: Ratio::from_integer(0), witness: None },
        Some((ratio, r, o, l, _)) => CPrimeVerdict {
            pass: ratio < lambda,
            max_ratio: ratio,
            witness: Some(CPrimeWitness { piece: fam.members[r][..l].to_vec(), relator: r, other: o, ratio }),
        },
    }
}

/// Members `r₀ … r_{h-1}` with no product `rᵢ r_{i+1}` (indices mod h)
/// (weakly) reduced and `rᵢ ≠ r_{i+1}⁻¹`, for the smallest such `3 ≤ h < q`.
pub fn t_violation<L: Letter>(fam: &SymmetrizedFamily<L>, q: usize) -> Option<Vec<usize>> {
    cancelling_walk(&fam.members, q, true)
}

/// Relators `r, s, t` of the given (unsymmetrised) family, repetitions
/// allowed, with none of `rs`, `st`, `tr` weakly reduced.
pub fn triple_violation<L: Letter>(relators: &[Vec<L>]) -> Option<Vec<usize>> {
    cancelling_walk(relators, 4, false)
}

fn cancelling_walk<L: Letter>(words: &[Vec<L>], q: usize, skip_inverse: bool) -> Option<Vec<usize>> {
    let m = words.len();
    let succ: Vec<FixedBitSet> = (0..m)
        .into_par_iter()
        .map(|i| {
            let r = &words[i];
            let inv = inverse_word(r);
            let mut out = FixedBitSet::with_capacity(m);
            for (j, s) in words.iter().enumerate() {
                if !product_reduced(r, s) && !(skip_inverse && *s == inv) {
                    out.insert(j);
                }
            }
            out
        })
        .collect();
    (3..q).find_map(|h| (0..m).find_map(|s| closed_walk(&succ, s, h)))
}

fn closed_walk(succ: &[FixedBitSet], start: usize, h: usize) -> Option<Vec<usize>> {
    let m = succ.len();
    let mut layers = vec![FixedBitSet::with_capacity(m)];
    layers[0].insert(start);
    for t in 0..h {
        let mut next = FixedBitSet::with_capacity(m);
        for v in layers[t].ones() {
            next.union_with(&succ[v]);
        }
        layers.push(next);
    }
    if !layers[h].contains(start) {
        return None;
    }
    let mut walk = vec![start];
    let mut cur = start;
    for t in (1..h).rev() {
        cur = layers[t].ones().find(|&v| succ[v].contains(cur)).expect("layer predecessor");
        walk.push(cur);
    }
    walk.reverse();
    walk.rotate_right(1);
    Some(walk)
}
