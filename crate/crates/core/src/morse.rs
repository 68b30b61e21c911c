//! Discrete Morse functions on simplicial complexes: validation,
//! classification of simplices into critical / `D` / `E` cells, and the
//! induced global covering family `K_n = C_n ∪ D_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::global::GlobalCoveringFamily;
use crate::poset::GradedPoset;
use crate::simplex::{normalize_simplex_key, SimplicialComplex};

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorseError {
    #[error("cannot parse `{0}` as an exact rational")]
    BadRational(String),
    #[error("no value given for simplex `{0}`")]
    MissingValue(String),
    #[error("value given for `{0}`, which is not a simplex of the complex")]
    UnknownSimplex(String),
    #[error("not a Morse function: {0}")]
    NotMorse(MorseViolation),
    #[error("simplex `{0}` has both a lower coface and a higher face")]
    NotPartition(String),
    #[error("pairing between E_{} and D_{n} is not a bijection", .n - 1)]
    PairingNotBijective { n: usize },
}

/// Parses `"a"`, `"a/b"` or a finite decimal `"1.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, MorseError> {
    let bad = || MorseError::BadRational(s.to_string());
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad())?;
        let d: i64 = den.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole: i64 = if int.is_empty() || int == "-" || int == "+" { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let mag = whole.abs().checked_mul(den).and_then(|x| x.checked_add(f)).ok_or_else(bad)?;
        return Ok(Rational::new(if negative { -mag } else { mag }, den));
    }
    t.parse::<i64>().map(Rational::from_integer).map_err(|_| bad())
}

/// `"a"` for integers and `"a/b"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A real-valued (here: rational-valued) function on the simplices of a
/// complex, stored on its face poset.
#[derive(Clone, Debug)]
pub struct MorseFunction {
    poset: Arc<GradedPoset>,
    values: Vec<Rational>,
}

impl MorseFunction {
    /// Values keyed by simplex name (vertex names separated by spaces, any order).
    pub fn new(complex: &SimplicialComplex, f: &BTreeMap<String, Rational>) -> Result<Self, MorseError> {
        let poset = Arc::new(complex.face_poset());
        let mut values = vec![None; poset.len()];
        for (key, &v) in f {
            let name = normalize_simplex_key(key);
            let p = poset.index_of(&name).map_err(|_| MorseError::UnknownSimplex(key.clone()))?;
            values[p] = Some(v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(p, v)| v.ok_or_else(|| MorseError::MissingValue(poset.id(p).to_string())))
            .collect::<Result<_, _>>()?;
        Ok(MorseFunction { poset, values })
    }

    pub fn from_values(poset: Arc<GradedPoset>, values: Vec<Rational>) -> Self {
        assert_eq!(poset.len(), values.len(), "one value per simplex");
        MorseFunction { poset, values }
    }

    /// `f(σ) = dim σ`.
    pub fn dimension(poset: Arc<GradedPoset>) -> Self {
        let values = (0..poset.len()).map(|p| Rational::from_integer(poset.degree(p) as i64)).collect();
        MorseFunction { poset, values }
    }

    pub fn poset(&self) -> &Arc<GradedPoset> {
        &self.poset
    }

    pub fn value(&self, p: usize) -> Rational {
        self.values[p]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Cofaces `q^{n+1} ⊃ p` with `f(q) ≤ f(p)`.
    pub fn lower_cofaces(&self, p: usize) -> Vec<usize> {
        self.poset.predecessors(p).iter().copied().filter(|&q| self.values[q] <= self.values[p]).collect()
    }

    /// Faces `q^{n−1} ⊂ p` with `f(p) ≤ f(q)`.
    pub fn higher_faces(&self, p: usize) -> Vec<usize> {
        self.poset.successors(p).iter().copied().filter(|&q| self.values[p] <= self.values[q]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MorseFailure {
    /// More than one coface with value at most `f(p)`.
    Cofaces,
    /// More than one face with value at least `f(p)`.
    Faces,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseViolation {
    pub simplex: String,
    pub failure: MorseFailure,
    pub offending: Vec<String>,
}

impl fmt::Display for MorseViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.failure {
            MorseFailure::Cofaces => "cofaces with value not above it",
            MorseFailure::Faces => "faces with value not below it",
        };
        write!(f, "simplex `{}` has {} {what}: {:?}", self.simplex, self.offending.len(), self.offending)
    }
}

/// Checks both cardinality conditions on every simplex; returns the first violator.
pub fn validate_morse(mf: &MorseFunction) -> Result<(), MorseViolation> {
    let names = |v: Vec<usize>| v.into_iter().map(|q| mf.poset.id(q).to_string()).collect::<Vec<_>>();
    for p in 0..mf.poset.len() {
        let up = mf.lower_cofaces(p);
        if up.len() > 1 {
            return Err(MorseViolation {
                simplex: mf.poset.id(p).into(),
                failure: MorseFailure::Cofaces,
                offending: names(up),
            });
        }
        let down = mf.higher_faces(p);
        if down.len() > 1 {
            return Err(MorseViolation {
                simplex: mf.poset.id(p).into(),
                failure: MorseFailure::Faces,
                offending: names(down),
            });
        }
    }
    Ok(())
}

/// Simplices of each dimension split into critical cells `C_n`, cells `D_n`
/// with a higher face and cells `E_n` with a lower coface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseClassification {
    pub critical: Vec<Vec<usize>>,
    pub d: Vec<Vec<usize>>,
    pub e: Vec<Vec<usize>>,
    /// `(p, q)` with `p ∈ E_{n−1}` and `q ∈ D_n` its unique lower coface.
    pub pairing: Vec<(usize, usize)>,
}

impl MorseClassification {
    pub fn critical_counts(&self) -> Vec<usize> {
        self.critical.iter().map(Vec::len).collect()
    }
}

/// Classifies every simplex and builds the pairing `E_{n−1} → D_n`,
/// verifying that the classes partition each dimension and that the
/// pairing is bijective.
pub fn classify(mf: &MorseFunction) -> Result<MorseClassification, MorseError> {
    validate_morse(mf).map_err(MorseError::NotMorse)?;
    let poset = &mf.poset;
    let top = poset.max_degree().map_or(0, |d| d + 1);
    let mut critical = vec![Vec::new(); top];
    let mut d = vec![Vec::new(); top];
    let mut e = vec![Vec::new(); top];
    let mut pairing = Vec::new();
    for p in 0..poset.len() {
        let n = poset.degree(p);
        let up = mf.lower_cofaces(p);
        let down = mf.higher_faces(p);
        match (up.as_slice(), down.is_empty()) {
            ([], true) => critical[n].push(p),
            ([], false) => d[n].push(p),
            ([q], true) => {
                e[n].push(p);
                pairing.push((p, *q));
            }
            _ => return Err(MorseError::NotPartition(poset.id(p).to_string())),
        }
    }
    for n in 1..top {
        let mut targets: Vec<usize> = pairing
            .iter()
            .filter(|&&(p, _)| poset.degree(p) == n - 1)
            .map(|&(p, q)| {
                let back = mf.higher_faces(q);
                if back != [p] {
                    return usize::MAX;
                }
                q
            })
            .collect();
        targets.sort_unstable();
        if targets != d[n] {
            return Err(MorseError::PairingNotBijective { n });
        }
    }
    if top > 0 && !d[0].is_empty() {
        return Err(MorseError::PairingNotBijective { n: 0 });
    }
    Ok(MorseClassification { critical, d, e, pairing })
}

/// `K_n = C_n ∪ D_n`.
pub fn family_from_morse(c: &MorseClassification) -> GlobalCoveringFamily {
    let k = c
        .critical
        .iter()
        .zip(&c.d)
        .map(|(a, b)| {
            let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
            v.sort_unstable();
            v
        })
        .collect();
    GlobalCoveringFamily { k }
}

/// A random Morse function from a random sequence of removals: at each
/// step either a free pair `p ⊂ q` (with `q` maximal and the only remaining
/// coface of `p`) or a maximal simplex is removed. Later removals get smaller
/// values, and both cells of a removed pair share one value.
pub fn random_morse_function<R: Rng>(rng: &mut R, poset: Arc<GradedPoset>, collapse_bias: f64) -> MorseFunction {
    let len = poset.len();
    let mut alive = vec![true; len];
    let mut stamp = vec![0i64; len];
    let mut remaining = len;
    let mut t = len as i64;
    let maximal = |alive: &[bool], q: usize| poset.predecessors(q).iter().all(|&r| !alive[r]);
    while remaining > 0 {
        let tops: Vec<usize> = (0..len).filter(|&q| alive[q] && maximal(&alive, q)).collect();
        let pairs: Vec<(usize, usize)> = tops
            .iter()
            .flat_map(|&q| poset.successors(q).iter().map(move |&p| (p, q)))
            .filter(|&(p, q)| alive[p] && poset.predecessors(p).iter().all(|&r| r == q || !alive[r]))
            .collect();
        if !pairs.is_empty() && rng.gen_bool(collapse_bias) {
            let (p, q) = pairs[rng.gen_range(0..pairs.len())];
            alive[p] = false;
            alive[q] = false;
            stamp[p] = t;
            stamp[q] = t;
            remaining -= 2;
        } else {
            let q = tops[rng.gen_range(0..tops.len())];
            alive[q] = false;
            stamp[q] = t;
            remaining -= 1;
        }
        t -= 1;
    }
    let values = stamp.into_iter().map(Rational::from_integer).collect();
    MorseFunction { poset, values }
}
