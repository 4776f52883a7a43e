//! Traces of words in two generators and the semi-arithmeticity check.
//!
//! Words use the letters `A`, `B` and `a = A^-1`, `b = B^-1`. Traces follow
//! from `tr A`, `tr B`, `tr AB` alone by the `SL(2)` identities
//! `X^-1 = tr(X) I - X` and `X^2 = tr(X) X - I`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::trace_data::TraceData;
use crate::error::Result;
use crate::field::radical::rational_in;
use crate::field::rational::rat;
use crate::field::RadicalElem;

const LETTERS: [char; 4] = ['A', 'a', 'B', 'b'];

fn inverse(c: char) -> char {
    match c {
        'A' => 'a',
        'a' => 'A',
        'B' => 'b',
        'b' => 'B',
        _ => unreachable!("not a generator letter: {c}"),
    }
}

/// Free and cyclic reduction.
fn cyclic_reduce(w: &[char]) -> Vec<char> {
    let mut out: Vec<char> = Vec::with_capacity(w.len());
    for &c in w {
        if out.last() == Some(&inverse(c)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    while out.len() >= 2 && out[0] == inverse(*out.last().unwrap()) {
        out.remove(0);
        out.pop();
    }
    out
}

/// Lexicographically least rotation, the memo key for a cyclic word.
fn canonical(w: &[char]) -> String {
    (0..w.len().max(1))
        .map(|i| {
            w[i.min(w.len())..]
                .iter()
                .chain(&w[..i.min(w.len())])
                .collect::<String>()
        })
        .min()
        .unwrap_or_default()
}

/// Evaluates traces of words exactly, with memoization on cyclic words.
pub struct WordTraces {
    tr_a: RadicalElem,
    tr_b: RadicalElem,
    tr_ab: RadicalElem,
    memo: HashMap<String, RadicalElem>,
}

impl WordTraces {
    pub fn new(t: &TraceData) -> Result<Self> {
        let (tr_a, tr_b, tr_ab) = t.lifted()?;
        Ok(Self {
            tr_a,
            tr_b,
            tr_ab,
            memo: HashMap::new(),
        })
    }

    fn constant(&self, n: i64) -> RadicalElem {
        rational_in(self.tr_a.ext(), rat(n))
    }

    fn generator(&self, c: char) -> &RadicalElem {
        match c.to_ascii_uppercase() {
            'A' => &self.tr_a,
            _ => &self.tr_b,
        }
    }

    /// Trace of `word`, e.g. `"AbaB"`.
    pub fn trace(&mut self, word: &str) -> RadicalElem {
        let w: Vec<char> = word.chars().collect();
        self.trace_of(&w)
    }

    fn trace_of(&mut self, w: &[char]) -> RadicalElem {
        let w = cyclic_reduce(w);
        let key = canonical(&w);
        if let Some(t) = self.memo.get(&key) {
            return t.clone();
        }
        let w: Vec<char> = key.chars().collect();
        let t = self.compute(&w);
        self.memo.insert(key, t.clone());
        t
    }

    fn compute(&mut self, w: &[char]) -> RadicalElem {
        match w.len() {
            0 => return self.constant(2),
            1 => return self.generator(w[0]).clone(),
            _ => {}
        }
        // U x^-1 V = tr(x) UV - U x V
        if let Some(i) = w.iter().position(|c| c.is_ascii_lowercase()) {
            let x = w[i];
            let mut shorter = w.to_vec();
            shorter.remove(i);
            let mut flipped = w.to_vec();
            flipped[i] = inverse(x);
            let t1 = self.trace_of(&shorter);
            let t2 = self.trace_of(&flipped);
            return &(self.generator(x) * &t1) - &t2;
        }
        // positive word: look for a cyclically adjacent repeated letter, XXV
        let n = w.len();
        if let Some(i) = (0..n).find(|&i| w[i] == w[(i + 1) % n]) {
            let rot: Vec<char> = w[i..].iter().chain(&w[..i]).copied().collect();
            let x = rot[0];
            // tr(XXV) = tr(X) tr(XV) - tr(V)
            let t1 = self.trace_of(&rot[1..]);
            let t2 = self.trace_of(&rot[2..]);
            return &(self.generator(x) * &t1) - &t2;
        }
        // alternating word (AB)^k: Chebyshev recursion in tr AB
        let k = n / 2;
        let mut prev = self.constant(2);
        let mut cur = self.tr_ab.clone();
        for _ in 1..k {
            let next = &(&self.tr_ab * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// All freely reduced words of length `1..=max_len`, by length and then in
/// the letter order `A, a, B, b`.
pub fn reduced_words(max_len: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut layer: Vec<String> = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for c in LETTERS {
                if w.ends_with(inverse(c)) {
                    continue;
                }
                next.push(format!("{w}{c}"));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SemiArithmeticVerdict {
    Pass,
    Fail { word: String, trace: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiArithmeticReport {
    /// The base field is real quadratic, hence totally real.
    pub totally_real: bool,
    pub depth: usize,
    pub words_checked: usize,
    pub verdict: SemiArithmeticVerdict,
}

impl SemiArithmeticReport {
    pub fn passed(&self) -> bool {
        self.verdict == SemiArithmeticVerdict::Pass
    }
}

/// Checks that the traces of `A`, `B`, `AB` and, for `depth >= 2`, of every
/// reduced word of length at most `depth` are algebraic integers. Returns the
/// first failing word.
pub fn semi_arithmetic_check(t: &TraceData, depth: usize) -> Result<SemiArithmeticReport> {
    if depth == 0 {
        return Err(crate::Error::InvalidArgument("word depth must be at least 1".into()));
    }
    let words: Vec<String> = if depth == 1 {
        vec!["A".into(), "B".into(), "AB".into()]
    } else {
        reduced_words(depth)
    };
    let mut wt = WordTraces::new(t)?;
    let mut checked: HashMap<String, bool> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        let tr = wt.trace(w);
        let key = format!("{:?}", tr);
        let ok = *checked.entry(key).or_insert_with(|| tr.is_algebraic_integer());
        if !ok {
            let trace = tr
                .to_tower()
                .map_or_else(|| format!("{:.17e}", tr.to_f64()), |x| x.to_string());
            return Ok(SemiArithmeticReport {
                totally_real: true,
                depth,
                words_checked: i + 1,
                verdict: SemiArithmeticVerdict::Fail { word: w.clone(), trace },
            });
        }
    }
    Ok(SemiArithmeticReport {
        totally_real: true,
        depth,
        words_checked: words.len(),
        verdict: SemiArithmeticVerdict::Pass,
    })
}
