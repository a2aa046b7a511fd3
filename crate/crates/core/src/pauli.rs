//! Pauli strings and real-weighted Pauli sums.
//!
//! A [`PauliString`] is stored as two bitplanes (`x`, `z`) so that qubit `q`
//! carries `I`, `X`, `Z` or `Y` according to the bits at position `q`:
//!
//! | x | z | factor |
//! |---|---|--------|
//! | 0 | 0 | I      |
//! | 1 | 0 | X      |
//! | 0 | 1 | Z      |
//! | 1 | 1 | Y      |
//!
//! Internally a string is read as `i^(x·z) X^x Z^z`, which makes products a
//! handful of bit operations. Text labels list qubit 0 first, so `ZIIX` has
//! `Z` on qubit 0 and `X` on qubit 3.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

/// Coefficients with magnitude below this are treated as floating-point residue.
pub const DROP_TOLERANCE: f64 = 1e-12;

/// Largest register a [`PauliString`] can describe.
pub const MAX_QUBITS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PauliError {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },
    #[error("qubit count must be between 1 and {MAX_QUBITS}, got {0}")]
    QubitCount(usize),
    #[error("invalid Pauli label {0:?}")]
    InvalidLabel(String),
    #[error("non-finite coefficient {0}")]
    NonFinite(f64),
    #[error("invalid histogram bin edges: {0}")]
    BinEdges(&'static str),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A power of `i`: one of `1, i, -1, -i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(power: u32) -> Self {
        Phase((power % 4) as u8)
    }

    /// Exponent `k` in `i^k`, in `0..4`.
    pub fn power(self) -> u32 {
        self.0 as u32
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Tensor product of single-qubit Paulis on `num_qubits` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    num_qubits: u8,
    x: u64,
    z: u64,
}

fn check_qubits(num_qubits: usize) -> Result<(), PauliError> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(PauliError::QubitCount(num_qubits));
    }
    Ok(())
}

fn mask(num_qubits: usize) -> u64 {
    if num_qubits == 64 {
        u64::MAX
    } else {
        (1u64 << num_qubits) - 1
    }
}

impl PauliString {
    pub fn identity(num_qubits: usize) -> Result<Self, PauliError> {
        check_qubits(num_qubits)?;
        Ok(Self { num_qubits: num_qubits as u8, x: 0, z: 0 })
    }

    /// Builds a string from raw bitplanes. Bits above `num_qubits` are rejected.
    pub fn from_bits(num_qubits: usize, x: u64, z: u64) -> Result<Self, PauliError> {
        check_qubits(num_qubits)?;
        let m = mask(num_qubits);
        if x & !m != 0 || z & !m != 0 {
            return Err(PauliError::InvalidLabel(format!(
                "bits set above qubit {}",
                num_qubits - 1
            )));
        }
        Ok(Self { num_qubits: num_qubits as u8, x, z })
    }

    pub fn from_factors(factors: &[Pauli]) -> Result<Self, PauliError> {
        check_qubits(factors.len())?;
        let (mut x, mut z) = (0u64, 0u64);
        for (q, p) in factors.iter().enumerate() {
            let (bx, bz) = p.bits();
            x |= (bx as u64) << q;
            z |= (bz as u64) << q;
        }
        Ok(Self { num_qubits: factors.len() as u8, x, z })
    }

    /// `pauli` on `qubit`, identity elsewhere.
    pub fn single(num_qubits: usize, qubit: usize, pauli: Pauli) -> Result<Self, PauliError> {
        let mut s = Self::identity(num_qubits)?;
        if qubit >= num_qubits {
            return Err(PauliError::InvalidLabel(format!("qubit {qubit} out of range")));
        }
        s.set(qubit, pauli);
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits as usize
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, pauli: Pauli) {
        let (bx, bz) = pauli.bits();
        let bit = 1u64 << qubit;
        self.x = (self.x & !bit) | if bx { bit } else { 0 };
        self.z = (self.z & !bit) | if bz { bit } else { 0 };
    }

    pub fn factors(&self) -> Vec<Pauli> {
        (0..self.num_qubits()).map(|q| self.get(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// True when every factor is `I` or `Z`.
    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    /// Qubits carrying a non-identity factor.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    /// Number of `Y` factors.
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Factor-wise agreement wherever both strings act non-trivially.
    pub fn qubitwise_commutes(&self, other: &PauliString) -> bool {
        let both = self.support() & other.support();
        ((self.x ^ other.x) | (self.z ^ other.z)) & both == 0
    }

    /// Full operator commutation (even number of anticommuting positions).
    pub fn commutes(&self, other: &PauliString) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones().is_multiple_of(2)
    }
}

/// Product `a·b = phase · product`, applied factor-wise.
pub fn multiply(a: &PauliString, b: &PauliString) -> Result<(Phase, PauliString), PauliError> {
    if a.num_qubits != b.num_qubits {
        return Err(PauliError::QubitMismatch { left: a.num_qubits(), right: b.num_qubits() });
    }
    Ok(multiply_unchecked(a, b))
}

pub(crate) fn multiply_unchecked(a: &PauliString, b: &PauliString) -> (Phase, PauliString) {
    let x = a.x ^ b.x;
    let z = a.z ^ b.z;
    // i^ya X^xa Z^za · i^yb X^xb Z^zb = i^(ya+yb) (-1)^(za·xb) X^x Z^z, then re-absorb i^-yc.
    let power = a.y_count() + b.y_count() + 2 * (a.z & b.x).count_ones() + 3 * (x & z).count_ones();
    (Phase::from_power(power), PauliString { num_qubits: a.num_qubits, x, z })
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let factors = s
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(PauliError::InvalidLabel(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        PauliString::from_factors(&factors)
    }
}

/// A real coefficient attached to a Pauli string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(coefficient: f64, string: PauliString) -> Self {
        Self { coefficient, string }
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.16e} {}", self.coefficient, self.string)
    }
}

/// Simplified real-weighted sum of Pauli strings.
///
/// Every string appears at most once and no stored coefficient is smaller in
/// magnitude than [`DROP_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct QubitHamiltonian {
    num_qubits: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl QubitHamiltonian {
    pub fn new(num_qubits: usize) -> Result<Self, PauliError> {
        check_qubits(num_qubits)?;
        Ok(Self { num_qubits, terms: BTreeMap::new() })
    }

    /// Sums duplicate strings and drops residue below [`DROP_TOLERANCE`].
    pub fn from_terms<I>(num_qubits: usize, terms: I) -> Result<Self, PauliError>
    where
        I: IntoIterator<Item = PauliTerm>,
    {
        let mut acc = Self::new(num_qubits)?;
        for t in terms {
            if t.string.num_qubits() != num_qubits {
                return Err(PauliError::QubitMismatch { left: num_qubits, right: t.string.num_qubits() });
            }
            if !t.coefficient.is_finite() {
                return Err(PauliError::NonFinite(t.coefficient));
            }
            *acc.terms.entry(t.string).or_insert(0.0) += t.coefficient;
        }
        acc.prune();
        Ok(acc)
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.abs() >= DROP_TOLERANCE);
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of stored terms, identity included.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms that need measuring (everything but the identity).
    pub fn measurable_len(&self) -> usize {
        self.terms.keys().filter(|s| !s.is_identity()).count()
    }

    pub fn coefficient(&self, string: &PauliString) -> f64 {
        self.terms.get(string).copied().unwrap_or(0.0)
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.terms
            .iter()
            .find(|(s, _)| s.is_identity())
            .map(|(_, c)| *c)
            .unwrap_or(0.0)
    }

    pub fn contains(&self, string: &PauliString) -> bool {
        self.terms.contains_key(string)
    }

    pub fn iter(&self) -> impl Iterator<Item = PauliTerm> + '_ {
        self.terms.iter().map(|(s, c)| PauliTerm::new(*c, *s))
    }

    pub fn strings(&self) -> impl Iterator<Item = &PauliString> + '_ {
        self.terms.keys()
    }

    /// True when no term has an `X` or `Y` factor.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(PauliString::is_diagonal)
    }

    /// Coefficient-wise sum, pruning anything that cancels below tolerance.
    pub fn add(&self, other: &QubitHamiltonian) -> Result<QubitHamiltonian, PauliError> {
        if self.num_qubits != other.num_qubits {
            return Err(PauliError::QubitMismatch { left: self.num_qubits, right: other.num_qubits });
        }
        let mut out = self.clone();
        for (s, c) in &other.terms {
            *out.terms.entry(*s).or_insert(0.0) += c;
        }
        out.prune();
        Ok(out)
    }

    pub fn scaled(&self, factor: f64) -> QubitHamiltonian {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|c| *c *= factor);
        out.prune();
        out
    }

    /// Keeps the terms for which `keep` returns true.
    pub fn filtered<F>(&self, mut keep: F) -> QubitHamiltonian
    where
        F: FnMut(&PauliTerm) -> bool,
    {
        let terms = self
            .terms
            .iter()
            .filter(|(s, c)| keep(&PauliTerm::new(**c, **s)))
            .map(|(s, c)| (*s, *c))
            .collect();
        QubitHamiltonian { num_qubits: self.num_qubits, terms }
    }

    /// Sum of `|c_k|` over all terms.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Line-oriented text form: a `# qubits: N` header, then `<coefficient> <label>` per term.
    pub fn to_text(&self) -> String {
        let mut out = format!("# qubits: {}\n", self.num_qubits);
        for t in self.iter() {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses [`to_text`](Self::to_text) output. The header may be omitted when at least one term is present.
    pub fn from_text(text: &str) -> Result<QubitHamiltonian, PauliError> {
        let mut declared: Option<usize> = None;
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(n) = comment.trim().strip_prefix("qubits:") {
                    let n = n.trim().parse::<usize>().map_err(|e| PauliError::Parse {
                        line: line_no,
                        message: format!("bad qubit count: {e}"),
                    })?;
                    declared = Some(n);
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(coef), Some(label), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(PauliError::Parse {
                    line: line_no,
                    message: "expected `<coefficient> <label>`".into(),
                });
            };
            let coefficient = coef.parse::<f64>().map_err(|e| PauliError::Parse {
                line: line_no,
                message: format!("bad coefficient {coef:?}: {e}"),
            })?;
            let string = label.parse::<PauliString>().map_err(|e| PauliError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            terms.push(PauliTerm::new(coefficient, string));
        }
        let num_qubits = match (declared, terms.first()) {
            (Some(n), _) => n,
            (None, Some(t)) => t.string.num_qubits(),
            (None, None) => {
                return Err(PauliError::Parse { line: 0, message: "no terms and no `# qubits:` header".into() })
            }
        };
        QubitHamiltonian::from_terms(num_qubits, terms)
    }
}

/// One bin of a coefficient-magnitude histogram, covering `[lower, upper)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub term_count: usize,
    pub norm_sum: f64,
}

/// Distribution of `|c_k|` over the non-identity terms of a Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientHistogram {
    pub bins: Vec<HistogramBin>,
    /// Coefficient of the identity term, which is kept out of the bins.
    pub identity: Option<f64>,
}

impl CoefficientHistogram {
    pub fn binned_terms(&self) -> usize {
        self.bins.iter().map(|b| b.term_count).sum()
    }
}

/// Bins non-identity terms by `|c_k|`.
///
/// `n` edges produce `n + 1` bins: `[0, e0)`, `[e0, e1)`, ..., `[e_{n-1}, inf)`.
pub fn coefficient_histogram(
    h: &QubitHamiltonian,
    bin_edges: &[f64],
) -> Result<CoefficientHistogram, PauliError> {
    if bin_edges.is_empty() {
        return Err(PauliError::BinEdges("no edges"));
    }
    if bin_edges.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(PauliError::BinEdges("edges must be positive and finite"));
    }
    if bin_edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PauliError::BinEdges("edges must be strictly ascending"));
    }
    let mut lowers = vec![0.0];
    lowers.extend_from_slice(bin_edges);
    let mut bins: Vec<HistogramBin> = lowers
        .iter()
        .enumerate()
        .map(|(i, &lower)| HistogramBin {
            lower,
            upper: bin_edges.get(i).copied().unwrap_or(f64::INFINITY),
            term_count: 0,
            norm_sum: 0.0,
        })
        .collect();
    let mut identity = None;
    for t in h.iter() {
        if t.string.is_identity() {
            identity = Some(t.coefficient);
            continue;
        }
        let mag = t.coefficient.abs();
        // number of edges <= mag is the bin index
        let idx = bin_edges.partition_point(|&e| e <= mag);
        bins[idx].term_count += 1;
        bins[idx].norm_sum += mag;
    }
    Ok(CoefficientHistogram { bins, identity })
}

/// Greedy first-fit partition of the non-identity terms into qubit-wise commuting groups.
///
/// Terms are visited by descending `|c_k|` (ties broken by string order) and
/// placed into the first group they are compatible with.
pub fn qubitwise_commuting_groups(h: &QubitHamiltonian) -> Vec<Vec<PauliTerm>> {
    let mut terms: Vec<PauliTerm> = h.iter().filter(|t| !t.string.is_identity()).collect();
    terms.sort_by(|a, b| {
        b.coefficient
            .abs()
            .total_cmp(&a.coefficient.abs())
            .then_with(|| a.string.cmp(&b.string))
    });
    // each group keeps the union of its members' factors as a measurement basis
    let mut bases: Vec<PauliString> = Vec::new();
    let mut groups: Vec<Vec<PauliTerm>> = Vec::new();
    for t in terms {
        match bases.iter().position(|b| b.qubitwise_commutes(&t.string)) {
            Some(g) => {
                bases[g].x |= t.string.x;
                bases[g].z |= t.string.z;
                groups[g].push(t);
            }
            None => {
                bases.push(t.string);
                groups.push(vec![t]);
            }
        }
    }
    groups
}
