//! Independent oracles for the word problem in small braid groups.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use artin_core::{CoxeterGraph, GarsideGroup, GeneratorWord};

/// Reduced word in a free group; letter `±(k+1)` is `x_k^±1`.
pub type FreeWord = Vec<i8>;

fn push_reduced(out: &mut FreeWord, l: i8) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Artin's faithful action of the braid group `B_{n+1}` on the free group
/// `F_{n+1}`. Generator `a_i` of `A(A_n)` (chain labeling) acts as `σ_i`:
/// `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i`.
pub struct ArtinAction {
    strands: usize,
}

impl ArtinAction {
    pub fn new(rank: usize) -> Self {
        ArtinAction { strands: rank + 1 }
    }

    /// Image of `x_j` under `σ_i^{±1}` (`i`, `j` 0-based).
    fn letter_image(&self, i: usize, inverse: bool, j: usize) -> FreeWord {
        let (xi, xi1) = (i as i8 + 1, i as i8 + 2);
        match (inverse, j) {
            (false, j) if j == i => vec![xi, xi1, -xi],
            (false, j) if j == i + 1 => vec![xi],
            (true, j) if j == i => vec![xi1],
            (true, j) if j == i + 1 => vec![-xi1, xi, xi1],
            _ => vec![j as i8 + 1],
        }
    }

    /// Images of every free generator under the automorphism of `word`.
    /// Equal keys iff equal braids, by faithfulness.
    pub fn key(&self, word: &GeneratorWord) -> Vec<FreeWord> {
        let mut images: Vec<FreeWord> = (0..self.strands).map(|j| vec![j as i8 + 1]).collect();
        for l in word.letters() {
            // φ_{w·l}(x_j) = φ_w(φ_l(x_j))
            images = (0..self.strands)
                .map(|j| {
                    let mut out = FreeWord::new();
                    for &y in &self.letter_image(l.generator, l.inverse, j) {
                        let img = &images[(y.unsigned_abs() - 1) as usize];
                        if y > 0 {
                            img.iter().for_each(|&z| push_reduced(&mut out, z));
                        } else {
                            img.iter().rev().for_each(|&z| push_reduced(&mut out, -z));
                        }
                    }
                    out
                })
                .collect();
        }
        images
    }
}

/// Every word of length `0..=max_len` over `a_1^{±1}, …, a_rank^{±1}`.
pub fn all_words(rank: usize, max_len: usize) -> Vec<GeneratorWord> {
    let letters: Vec<i64> = (1..=rank as i64).flat_map(|i| [i, -i]).collect();
    let mut out = vec![Vec::<i64>::new()];
    let mut frontier = out.clone();
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w| letters.iter().map(move |&l| {
                let mut v = w.clone();
                v.push(l);
                v
            }))
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out.iter().map(|w| GeneratorWord::from_signed(w)).collect()
}

/// Outcome of comparing normal-form equality against an oracle partition.
#[derive(Debug, Default)]
pub struct Agreement {
    pub words: usize,
    pub classes: usize,
    /// Pairs of words one side calls equal and the other does not, one witness per class.
    pub disagreements: Vec<(String, String)>,
}

/// Compares two partitions of `words`: by normal form and by `key`.
/// Agreement on every pair is equivalent to the two class maps being
/// mutually consistent.
pub fn compare_partitions<K: std::hash::Hash + Eq + Clone>(
    group: &GarsideGroup,
    words: &[GeneratorWord],
    key: impl Fn(&GeneratorWord) -> K,
) -> Agreement {
    let mut by_nf: HashMap<String, (K, usize)> = HashMap::new();
    let mut by_key: HashMap<K, (String, usize)> = HashMap::new();
    let mut result = Agreement { words: words.len(), ..Default::default() };
    for (idx, w) in words.iter().enumerate() {
        let nf = group.format(&group.normalize(w).unwrap());
        let k = key(w);
        match by_nf.get(&nf) {
            Some((k0, first)) if *k0 != k => {
                result.disagreements.push((words[*first].to_string(), w.to_string()));
            }
            Some(_) => {}
            None => {
                by_nf.insert(nf.clone(), (k.clone(), idx));
            }
        }
        match by_key.get(&k) {
            Some((nf0, first)) if *nf0 != nf => {
                result.disagreements.push((words[*first].to_string(), w.to_string()));
            }
            Some(_) => {}
            None => {
                by_key.insert(k, (nf, idx));
            }
        }
    }
    result.classes = by_nf.len();
    result
}

/// Class of a positive word under the braid and commutation moves, as the
/// lexicographically least word reachable. Moves preserve length, so the
/// closure is finite; the positive monoid embeds in the group, so two
/// positive words are equal iff their closures meet.
pub fn positive_closure_key(graph: &CoxeterGraph, word: &[usize]) -> Vec<usize> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::from([word.to_vec()]);
    seen.insert(word.to_vec());
    while let Some(w) = queue.pop_front() {
        for p in 0..w.len() {
            let mut moves = Vec::new();
            if p + 1 < w.len() && w[p] != w[p + 1] && !graph.adjacent(w[p], w[p + 1]) {
                let mut v = w.clone();
                v.swap(p, p + 1);
                moves.push(v);
            }
            if p + 2 < w.len() && w[p] == w[p + 2] && w[p] != w[p + 1] && graph.adjacent(w[p], w[p + 1]) {
                let mut v = w.clone();
                v[p] = w[p + 1];
                v[p + 1] = w[p];
                v[p + 2] = w[p + 1];
                moves.push(v);
            }
            for v in moves {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen.into_iter().next().expect("nonempty closure")
}

/// Every positive word of length `0..=max_len` over `rank` generators (0-based letters).
pub fn positive_words(rank: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = out.clone();
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w: &Vec<usize>| (0..rank).map(move |g| {
                let mut v = w.clone();
                v.push(g);
                v
            }))
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}
