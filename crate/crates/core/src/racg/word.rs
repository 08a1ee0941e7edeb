use super::DefiningGraph;

/// Shortlex-least reduced word for the element `w`, letters ordered by
/// vertex index.
///
/// Deleting a pair `v ... v` whose letters in between all commute with `v`
/// preserves the element, and a word without such a pair is reduced. Reduced
/// words of one element differ by commutations only, so the lexicographically
/// least one is found greedily.
pub fn normal_form(dg: &DefiningGraph, w: &[usize]) -> Vec<usize> {
    let mut w = w.to_vec();
    while let Some((i, j)) = cancelling_pair(dg, &w) {
        w.remove(j);
        w.remove(i);
    }
    lex_least(dg, &w)
}

fn cancelling_pair(dg: &DefiningGraph, w: &[usize]) -> Option<(usize, usize)> {
    for j in 0..w.len() {
        for i in (0..j).rev() {
            if w[i] == w[j] {
                return Some((i, j));
            }
            if !dg.commute(w[i], w[j]) {
                break;
            }
        }
    }
    None
}

fn lex_least(dg: &DefiningGraph, w: &[usize]) -> Vec<usize> {
    let mut rest = w.to_vec();
    let mut out = Vec::with_capacity(w.len());
    while !rest.is_empty() {
        let pick = (0..rest.len())
            .filter(|&p| rest[..p].iter().all(|&a| dg.commute(a, rest[p])))
            .min_by_key(|&p| rest[p])
            .expect("the first letter is always available");
        out.push(rest.remove(pick));
    }
    out
}

/// Normal form of `w s` for a normal form `w`.
pub fn right_multiply(dg: &DefiningGraph, w: &[usize], s: usize) -> Vec<usize> {
    let mut v = w.to_vec();
    let cancel = (0..v.len()).rev().take_while(|&i| v[i] == s || dg.commute(v[i], s)).find(|&i| v[i] == s);
    match cancel {
        Some(i) => {
            v.remove(i);
            v
        }
        None => {
            v.push(s);
            lex_least(dg, &v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    fn dg(vs: &[&str], es: &[(&str, &str)]) -> DefiningGraph {
        DefiningGraph::new(build::named(vs, es)).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let edge = dg(&["a", "b"], &[("a", "b")]);
        assert!(normal_form(&edge, &[0, 1, 0, 1]).is_empty());
        let free = dg(&["a", "b"], &[]);
        assert_eq!(normal_form(&free, &[0, 1, 0, 1]), vec![0, 1, 0, 1]);
        let path = dg(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        // Adjacent generators commute, so a b a = b; a and c do not.
        assert_eq!(normal_form(&path, &[0, 1, 0]), vec![1]);
        assert_eq!(normal_form(&path, &[0, 2, 0]), vec![0, 2, 0]);
        // a and c commute, so c a is rewritten to a c.
        let p = dg(&["a", "b", "c"], &[("a", "c")]);
        assert_eq!(normal_form(&p, &[2, 0]), vec![0, 2]);
    }

    #[test]
    fn right_multiplication_matches_normal_form() {
        let g = dg(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        let words: Vec<Vec<usize>> = vec![vec![], vec![0, 2], vec![1, 0, 3], vec![2, 1, 0, 3, 2]];
        for w in words {
            let w = normal_form(&g, &w);
            for s in 0..4 {
                let mut ws = w.clone();
                ws.push(s);
                assert_eq!(right_multiply(&g, &w, s), normal_form(&g, &ws));
            }
        }
    }
}
