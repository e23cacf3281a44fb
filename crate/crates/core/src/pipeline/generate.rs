//! Seeded synthetic corpora drawn from disjoint pattern languages.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, PStr, Symbol};
use crate::corpus::Corpus;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::pattern::{to_dfa, Atom, Bound, PatternExpr};

/// Direct sampling attempts before falling back to automaton-guided sampling.
const DIRECT_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct Language {
    pub pattern: PatternExpr,
    pub weight: f64,
    pub label: String,
}

/// What to generate. Build with [`CorpusSpec::from_json`] or directly,
/// then call [`CorpusSpec::validate`] (done by [`generate`]).
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusSpec {
    pub alphabet: Alphabet,
    pub languages: Vec<Language>,
    pub min_len: usize,
    pub max_len: usize,
    pub count: usize,
    /// Split `count` across languages in proportion to the weights instead
    /// of drawing each string's language at random.
    pub stratified: bool,
    pub seed: u64,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct LanguageFile {
    pattern: String,
    #[serde(default = "unit_weight")]
    weight: f64,
    #[serde(default)]
    label: Option<String>,
}

fn unit_weight() -> f64 {
    1.0
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    #[serde(default)]
    alphabet: Option<String>,
    languages: Vec<LanguageFile>,
    min_len: usize,
    max_len: usize,
    count: usize,
    #[serde(default)]
    stratified: bool,
    #[serde(default)]
    seed: u64,
}

impl CorpusSpec {
    /// Parses a JSON spec such as
    ///
    /// ```json
    /// {"alphabet": "ab", "languages": [{"pattern": "a+"}, {"pattern": "(ab)+", "weight": 2}],
    ///  "min_len": 5, "max_len": 10, "count": 30}
    /// ```
    ///
    /// Labels default to the language's position in the list.
    pub fn from_json(text: &str, default_alphabet: &Alphabet) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(text)?;
        let alphabet = match file.alphabet {
            Some(s) => Alphabet::new(s.chars())?,
            None => default_alphabet.clone(),
        };
        let languages = file
            .languages
            .into_iter()
            .enumerate()
            .map(|(i, l)| {
                Ok(Language {
                    pattern: PatternExpr::parse(&l.pattern, &alphabet)?,
                    weight: l.weight,
                    label: l.label.unwrap_or_else(|| i.to_string()),
                })
            })
            .collect::<Result<_>>()?;
        Ok(CorpusSpec {
            alphabet,
            languages,
            min_len: file.min_len,
            max_len: file.max_len,
            count: file.count,
            stratified: file.stratified,
            seed: file.seed,
        })
    }

    fn text(&self, p: &PatternExpr) -> String {
        p.to_text(&self.alphabet)
    }

    /// Checks weights and lengths, that every language has a string in the
    /// length window, and that no two languages share one there.
    pub fn validate(&self) -> Result<Vec<Dfa>> {
        if self.languages.is_empty() {
            return Err(Error::argument("spec lists no languages"));
        }
        if self.min_len > self.max_len {
            return Err(Error::argument(format!(
                "min_len {} exceeds max_len {}",
                self.min_len, self.max_len
            )));
        }
        let k = self.alphabet.len();
        let mut dfas = Vec::with_capacity(self.languages.len());
        for lang in &self.languages {
            if !(lang.weight.is_finite() && lang.weight > 0.0) {
                return Err(Error::argument(format!(
                    "weight of `{}` must be positive",
                    self.text(&lang.pattern)
                )));
            }
            let dfa = to_dfa(&lang.pattern, k);
            if !dfa.accepts_length_in(self.min_len, self.max_len) {
                return Err(Error::Generation {
                    pattern: self.text(&lang.pattern),
                    reason: format!("no string with length in {}..={}", self.min_len, self.max_len),
                });
            }
            dfas.push(dfa);
        }
        for i in 0..dfas.len() {
            for j in i + 1..dfas.len() {
                let both = dfas[i].intersection(&dfas[j])?;
                if both.accepts_length_in(self.min_len, self.max_len) {
                    return Err(Error::Generation {
                        pattern: self.text(&self.languages[i].pattern),
                        reason: format!(
                            "overlaps `{}` within the length window",
                            self.text(&self.languages[j].pattern)
                        ),
                    });
                }
            }
        }
        Ok(dfas)
    }
}

/// Draws a labeled corpus. Deterministic in `spec` (including its seed),
/// and every string matches the pattern it is labeled with.
pub fn generate(spec: &CorpusSpec) -> Result<Corpus> {
    let dfas = spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut picks: Vec<usize> = if spec.stratified {
        stratify(spec)
    } else {
        let dist =
            WeightedIndex::new(spec.languages.iter().map(|l| l.weight)).map_err(|e| Error::argument(e.to_string()))?;
        (0..spec.count).map(|_| dist.sample(&mut rng)).collect()
    };
    if spec.stratified {
        picks.shuffle(&mut rng);
    }
    let mut samplers: Vec<Sampler> = spec
        .languages
        .iter()
        .zip(dfas)
        .map(|(l, dfa)| Sampler::new(&l.pattern, dfa, spec))
        .collect();
    let mut strings = Vec::with_capacity(picks.len());
    let mut labels = Vec::with_capacity(picks.len());
    for li in picks {
        let x = samplers[li].sample(&mut rng);
        debug_assert!(samplers[li].dfa.accepts(&x));
        strings.push(x);
        labels.push(spec.languages[li].label.clone());
    }
    Corpus::labeled(strings, labels)
}

/// Per-language counts by largest remainder, expanded in language order.
fn stratify(spec: &CorpusSpec) -> Vec<usize> {
    let total: f64 = spec.languages.iter().map(|l| l.weight).sum();
    let quotas: Vec<f64> = spec
        .languages
        .iter()
        .map(|l| spec.count as f64 * l.weight / total)
        .collect();
    let mut counts: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let mut order: Vec<usize> = (0..quotas.len()).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (quotas[a] - quotas[a].floor(), quotas[b] - quotas[b].floor());
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    let missing = spec.count - counts.iter().sum::<usize>();
    for &i in order.iter().take(missing) {
        counts[i] += 1;
    }
    counts
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i, c))
        .collect()
}

struct Sampler<'a> {
    pattern: &'a PatternExpr,
    dfa: Dfa,
    alphabet_size: usize,
    min_len: usize,
    max_len: usize,
    weights: Option<Vec<Vec<f64>>>,
}

impl<'a> Sampler<'a> {
    fn new(pattern: &'a PatternExpr, dfa: Dfa, spec: &CorpusSpec) -> Self {
        Sampler {
            pattern,
            dfa,
            alphabet_size: spec.alphabet.len(),
            min_len: spec.min_len,
            max_len: spec.max_len,
            weights: None,
        }
    }

    fn sample(&mut self, rng: &mut ChaCha8Rng) -> PStr {
        for _ in 0..DIRECT_ATTEMPTS {
            let target = rng.gen_range(self.min_len..=self.max_len);
            let mut out = Vec::with_capacity(target);
            fill(self.pattern, target, self.alphabet_size, rng, &mut out);
            if (self.min_len..=self.max_len).contains(&out.len()) && self.dfa.accepts(&out) {
                return PStr::new(out);
            }
        }
        self.guided(rng)
    }

    /// Uniform length among feasible ones, then a walk weighted by the
    /// number of accepted completions.
    fn guided(&mut self, rng: &mut ChaCha8Rng) -> PStr {
        let (dfa, max_len) = (&self.dfa, self.max_len);
        let weights = self.weights.get_or_insert_with(|| dfa.completion_weights(max_len));
        let start = dfa.start() as usize;
        let lengths: Vec<usize> = (self.min_len..=max_len).filter(|&l| weights[l][start] > 0.0).collect();
        let len = *lengths.choose(rng).expect("validated: some length is feasible");
        let mut q = dfa.start();
        let mut out = Vec::with_capacity(len);
        for remaining in (1..=len).rev() {
            let row = &weights[remaining - 1];
            let choices: Vec<f64> = (0..self.alphabet_size)
                .map(|a| row[dfa.next(q, a as Symbol) as usize])
                .collect();
            let a = WeightedIndex::new(&choices)
                .expect("a feasible state has a feasible successor")
                .sample(rng);
            out.push(a as Symbol);
            q = dfa.next(q, a as Symbol);
        }
        PStr::new(out)
    }
}

/// Appends a random member of `L(p)` of length `target` where the bounds
/// allow it, and as close as they allow otherwise.
///
/// The slack above the shortest member is handed out left to right among
/// the repeats that can grow: each takes a uniform amount between half and
/// all of an even share of what is left, and the last one takes the rest.
/// Counts therefore stay balanced, so `a+b+` yields neither near-`a+` nor
/// near-`ab+` strings.
fn fill(p: &PatternExpr, target: usize, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Symbol>) {
    let atoms = match p {
        PatternExpr::Universal => {
            out.extend((0..target).map(|_| rng.gen_range(0..k) as Symbol));
            return;
        }
        PatternExpr::Seq(atoms) => atoms,
    };
    let mins: Vec<usize> = atoms.iter().map(atom_min_len).collect();
    let mut slack = target.saturating_sub(mins.iter().fold(0, |a, &m| a.saturating_add(m)));
    let mut growable = atoms.iter().filter(|a| can_grow(a)).count();
    for (atom, &min) in atoms.iter().zip(&mins) {
        match atom {
            Atom::Lit(s) => out.push(*s),
            Atom::Rep { body, bound } => {
                let mut extra = 0;
                if can_grow(atom) {
                    extra = if growable == 1 {
                        slack
                    } else {
                        let share = slack / growable;
                        rng.gen_range(share.div_ceil(2)..=share)
                    };
                    slack -= extra;
                    growable -= 1;
                }
                fill_rep(body, *bound, min + extra, k, rng, out);
            }
        }
    }
}

fn fill_rep(body: &PatternExpr, bound: Bound, allot: usize, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Symbol>) {
    let lo = bound.lower() as usize;
    let hi = bound.upper().map_or(usize::MAX, |h| h as usize);
    let count = match fixed_len(body) {
        Some(0) => lo,
        Some(unit) => (allot / unit).clamp(lo, hi),
        None => {
            let most = (allot / to_usize(body.min_len()).max(1)).clamp(lo, hi);
            rng.gen_range(lo..=most)
        }
    };
    if count == 0 {
        return;
    }
    let (per_copy, spare) = (allot / count, allot % count);
    for c in 0..count {
        fill(body, per_copy + usize::from(c < spare), k, rng, out);
    }
}

fn can_grow(a: &Atom) -> bool {
    match a {
        Atom::Lit(_) => false,
        Atom::Rep { body, bound } => {
            fixed_len(body).is_none() || (bound.upper() != Some(bound.lower()) && fixed_len(body) != Some(0))
        }
    }
}

/// Length shared by every member of `L(p)`, if there is one.
fn fixed_len(p: &PatternExpr) -> Option<usize> {
    match p {
        PatternExpr::Universal => None,
        PatternExpr::Seq(atoms) => atoms.iter().try_fold(0usize, |acc, a| match a {
            Atom::Lit(_) => Some(acc + 1),
            Atom::Rep { body, bound } => {
                let unit = fixed_len(body)?;
                if unit == 0 {
                    Some(acc)
                } else if bound.upper() == Some(bound.lower()) {
                    Some(acc + unit * bound.lower() as usize)
                } else {
                    None
                }
            }
        }),
    }
}

fn atom_min_len(a: &Atom) -> usize {
    match a {
        Atom::Lit(_) => 1,
        Atom::Rep { body, bound } => to_usize(body.min_len()).saturating_mul(bound.lower() as usize),
    }
}

fn to_usize(n: u64) -> usize {
    usize::try_from(n).unwrap_or(usize::MAX)
}
