//! The exterior algebra `∧{Θ_n, Ξ_n}` with exact rational coefficients.
//!
//! A [`Monomial`] is the canonical product `θ_A ξ_B`: all θ's in increasing
//! index order followed by all ξ's in increasing index order. Supports are
//! bitmasks (bit `k-1` is index `k`), so signs of reorderings come from
//! popcounts.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combin::{mask_to_indices, subsets_colex};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::paths::{Path, Step};

/// Largest rank representable with `u32` supports.
pub const MAX_RANK: usize = 31;

/// Default ceiling for operations that walk all `4^n` monomials.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Environment variable overriding [`DEFAULT_ENUMERATION_CAP`].
pub const ENUMERATION_CAP_ENV: &str = "FERMIONIC_MAX_N";

static PROCESS_CAP: AtomicUsize = AtomicUsize::new(0);

/// Sets a process-wide cap used when no explicit override is passed.
/// `None` clears it.
pub fn set_process_enumeration_cap(cap: Option<usize>) {
    PROCESS_CAP.store(cap.map_or(0, |c| c + 1), AtomicOrdering::Relaxed);
}

/// Effective enumeration cap: explicit override, else the process-wide cap,
/// else the environment, else the default.
pub fn enumeration_cap(override_cap: Option<usize>) -> usize {
    override_cap
        .or_else(|| PROCESS_CAP.load(AtomicOrdering::Relaxed).checked_sub(1))
        .or_else(|| {
            std::env::var(ENUMERATION_CAP_ENV)
                .ok()
                .and_then(|v| v.trim().parse().ok())
        })
        .unwrap_or(DEFAULT_ENUMERATION_CAP)
}

pub fn check_enumeration_cap(n: usize, override_cap: Option<usize>) -> Result<()> {
    let cap = enumeration_cap(override_cap).min(MAX_RANK);
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    /// θ-degree
    pub i: usize,
    /// ξ-degree
    pub j: usize,
}

impl Bidegree {
    pub fn new(i: usize, j: usize) -> Self {
        Bidegree { i, j }
    }

    pub fn total(self) -> usize {
        self.i + self.j
    }

    pub fn within(self, n: usize) -> bool {
        self.i <= n && self.j <= n
    }

    /// All bidegrees `(i, j)` with `0 <= i, j <= n`, lexicographically sorted.
    pub fn all(n: usize) -> Vec<Bidegree> {
        (0..=n)
            .flat_map(|i| (0..=n).map(move |j| Bidegree::new(i, j)))
            .collect()
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// A single exterior generator, used for words in arbitrary order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Theta(usize),
    Xi(usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::Theta(k) | Generator::Xi(k) => k,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    n: u8,
    theta: u32,
    xi: u32,
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Parity of the number of pairs `(a, b)` with `a ∈ left`, `b ∈ right`,
/// `a > b`: the sign of merging two increasing words.
fn merge_parity(left: u32, right: u32) -> u32 {
    let mut parity = 0;
    let mut r = right;
    while r != 0 {
        let b = r.trailing_zeros();
        parity ^= left.checked_shr(b + 1).unwrap_or(0).count_ones() & 1;
        r &= r - 1;
    }
    parity
}

impl Monomial {
    pub fn new(n: usize, theta: u32, xi: u32) -> Result<Self> {
        if n > MAX_RANK {
            return Err(Error::RankTooLarge(n));
        }
        let outside = (theta | xi) & !full_mask(n);
        if outside != 0 {
            return Err(Error::IndexOutOfRange {
                index: 32 - outside.leading_zeros() as usize,
                n,
            });
        }
        Ok(Monomial {
            n: n as u8,
            theta,
            xi,
        })
    }

    pub fn one(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank {n} too large");
        Monomial {
            n: n as u8,
            theta: 0,
            xi: 0,
        }
    }

    /// Builds `θ_A ξ_B` from 1-based index lists (order and repeats ignored).
    pub fn from_supports(n: usize, theta: &[usize], xi: &[usize]) -> Result<Self> {
        let to_mask = |idx: &[usize]| -> Result<u32> {
            idx.iter().try_fold(0u32, |m, &k| {
                if k == 0 || k > n || k > MAX_RANK {
                    Err(Error::IndexOutOfRange { index: k, n })
                } else {
                    Ok(m | 1 << (k - 1))
                }
            })
        };
        Monomial::new(n, to_mask(theta)?, to_mask(xi)?)
    }

    pub fn rank(&self) -> usize {
        self.n as usize
    }

    pub fn theta_mask(&self) -> u32 {
        self.theta
    }

    pub fn xi_mask(&self) -> u32 {
        self.xi
    }

    pub fn theta_support(&self) -> Vec<usize> {
        mask_to_indices(self.theta)
    }

    pub fn xi_support(&self) -> Vec<usize> {
        mask_to_indices(self.xi)
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(
            self.theta.count_ones() as usize,
            self.xi.count_ones() as usize,
        )
    }

    pub fn degree(&self) -> usize {
        self.bidegree().total()
    }

    pub fn is_one(&self) -> bool {
        self.theta == 0 && self.xi == 0
    }

    /// The generators of this monomial in canonical order.
    pub fn word(&self) -> Vec<Generator> {
        self.theta_support()
            .into_iter()
            .map(Generator::Theta)
            .chain(self.xi_support().into_iter().map(Generator::Xi))
            .collect()
    }

    /// Product of canonical monomials: `None` when it vanishes, otherwise
    /// `(negative, monomial)`.
    pub fn mul_signed(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        debug_assert_eq!(self.n, other.n);
        if self.theta & other.theta != 0 || self.xi & other.xi != 0 {
            return None;
        }
        // θ_A ξ_B θ_C ξ_D: move θ_C left across ξ_B, then merge each block
        let cross = (self.xi.count_ones() * other.theta.count_ones()) & 1;
        let parity =
            cross ^ merge_parity(self.theta, other.theta) ^ merge_parity(self.xi, other.xi);
        Some((
            parity == 1,
            Monomial {
                n: self.n,
                theta: self.theta | other.theta,
                xi: self.xi | other.xi,
            },
        ))
    }

    /// Step `k` is Up if `k ∉ A ∪ B`, θ-horizontal if `k ∈ A − B`,
    /// ξ-horizontal if `k ∈ B − A` and Down if `k ∈ A ∩ B`.
    pub fn to_path(&self) -> Path {
        let steps = (0..self.rank())
            .map(|k| {
                let t = self.theta >> k & 1 == 1;
                let x = self.xi >> k & 1 == 1;
                match (t, x) {
                    (false, false) => Step::Up,
                    (true, false) => Step::HorizTheta,
                    (false, true) => Step::HorizXi,
                    (true, true) => Step::Down,
                }
            })
            .collect();
        Path::new(steps)
    }

    pub fn from_path(path: &Path) -> Result<Monomial> {
        let n = path.len();
        if n > MAX_RANK {
            return Err(Error::RankTooLarge(n));
        }
        let (mut theta, mut xi) = (0u32, 0u32);
        for (k, step) in path.steps().iter().enumerate() {
            match step {
                Step::Up => {}
                Step::HorizTheta => theta |= 1 << k,
                Step::HorizXi => xi |= 1 << k,
                Step::Down => {
                    theta |= 1 << k;
                    xi |= 1 << k;
                }
            }
        }
        Ok(Monomial {
            n: n as u8,
            theta,
            xi,
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .word()
            .into_iter()
            .map(|g| match g {
                Generator::Theta(k) => format!("t{k}"),
                Generator::Xi(k) => format!("x{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Canonical monomials of bidegree `d`, ordered by colex θ-support and then
/// colex ξ-support.
pub fn bidegree_basis(n: usize, d: Bidegree) -> Vec<Monomial> {
    if !d.within(n) || n > MAX_RANK {
        return Vec::new();
    }
    let xs = subsets_colex(n, d.j);
    subsets_colex(n, d.i)
        .into_iter()
        .flat_map(|t| {
            xs.iter().map(move |&x| Monomial {
                n: n as u8,
                theta: t,
                xi: x,
            })
        })
        .collect()
}

/// Every monomial of rank `n`, refusing ranks above the enumeration cap.
pub fn all_monomials(n: usize, override_cap: Option<usize>) -> Result<Vec<Monomial>> {
    check_enumeration_cap(n, override_cap)?;
    let m = 1u64 << n;
    Ok((0..m)
        .flat_map(|t| {
            (0..m).map(move |x| Monomial {
                n: n as u8,
                theta: t as u32,
                xi: x as u32,
            })
        })
        .collect())
}

/// A finite exact-rational combination of monomials of a fixed rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Element {
    pub fn zero(n: usize) -> Self {
        Element {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Element::from_monomial(Monomial::one(n))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Element::from_term(m, BigRational::one())
    }

    pub fn from_term(m: Monomial, coeff: BigRational) -> Self {
        let mut e = Element::zero(m.rank());
        e.add_term(m, coeff);
        e
    }

    pub fn theta(n: usize, k: usize) -> Result<Self> {
        Ok(Element::from_monomial(Monomial::from_supports(
            n,
            &[k],
            &[],
        )?))
    }

    pub fn xi(n: usize, k: usize) -> Result<Self> {
        Ok(Element::from_monomial(Monomial::from_supports(
            n,
            &[],
            &[k],
        )?))
    }

    /// Product of generators in the given order, re-sorted with signs.
    pub fn from_word(n: usize, word: &[Generator]) -> Result<Self> {
        let mut negative = false;
        let mut acc = Monomial::one(n.min(MAX_RANK));
        if n > MAX_RANK {
            return Err(Error::RankTooLarge(n));
        }
        for &g in word {
            let m = match g {
                Generator::Theta(k) => Monomial::from_supports(n, &[k], &[])?,
                Generator::Xi(k) => Monomial::from_supports(n, &[], &[k])?,
            };
            match acc.mul_signed(&m) {
                None => return Ok(Element::zero(n)),
                Some((neg, prod)) => {
                    negative ^= neg;
                    acc = prod;
                }
            }
        }
        let coeff = if negative {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        Ok(Element::from_term(acc, coeff))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Element {
        if c.is_zero() {
            return Element::zero(self.n);
        }
        Element {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.same_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    /// Exterior product; fails when the ranks differ.
    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.same_rank(other)?;
        let mut out = Element::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((neg, m)) = a.mul_signed(b) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Element {
        let mut acc = Element::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    fn same_rank(&self, other: &Element) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Distinct bidegrees of the nonzero terms, sorted.
    pub fn bidegrees(&self) -> Vec<Bidegree> {
        let mut ds: Vec<Bidegree> = self.terms.keys().map(|m| m.bidegree()).collect();
        ds.sort();
        ds.dedup();
        ds
    }

    /// The single monomial of a `±m`-shaped element.
    pub fn as_signed_monomial(&self) -> Option<(bool, Monomial)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((false, *m))
        } else if (-c).is_one() {
            Some((true, *m))
        } else {
            None
        }
    }

    /// Coefficient vector with respect to an ordered monomial basis.
    /// Terms outside the basis are ignored.
    pub fn coordinates(&self, basis: &[Monomial]) -> Vec<BigRational> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    /// Parses the text form, e.g. `-2*t1 t2 x1 x2 + 1*t3` or `x2 t1 - 1/2`.
    /// Generators may come in any order; the sign of sorting them is applied.
    pub fn parse(n: usize, text: &str) -> Result<Element> {
        parse::parse_element(n, text)
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    theta: m.theta_support(),
                    xi: m.xi_support(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ElementJson) -> Result<Element> {
        let mut out = Element::zero(json.n);
        for term in &json.terms {
            let coeff: BigRational = parse_rational(&term.coeff)?;
            let word: Vec<Generator> = term
                .theta
                .iter()
                .map(|&k| Generator::Theta(k))
                .chain(term.xi.iter().map(|&k| Generator::Xi(k)))
                .collect();
            out = out.checked_add(&Element::from_word(json.n, &word)?.scale(&coeff))?;
        }
        Ok(out)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs)
            .expect("rank mismatch in exterior addition")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.checked_mul(rhs)
            .expect("rank mismatch in exterior product")
    }
}

pub(crate) fn format_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mag = format_rational(&c.abs());
            let body = if m.is_one() {
                mag
            } else {
                format!("{mag}*{m}")
            };
            match (idx, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub theta: Vec<usize>,
    pub xi: Vec<usize>,
    pub coeff: String,
}

mod parse {
    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    enum Token {
        Number(BigRational),
        Gen(Generator),
        Plus,
        Minus,
        Star,
    }

    fn tokenize(text: &str) -> Result<Vec<Token>> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut pos = 0;
        let digits = |pos: &mut usize| -> String {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            chars[start..*pos].iter().collect()
        };
        while pos < chars.len() {
            let c = chars[pos];
            match c {
                c if c.is_whitespace() => pos += 1,
                '+' => {
                    out.push(Token::Plus);
                    pos += 1;
                }
                '-' => {
                    out.push(Token::Minus);
                    pos += 1;
                }
                '*' => {
                    out.push(Token::Star);
                    pos += 1;
                }
                't' | 'x' | 'θ' | 'ξ' => {
                    pos += 1;
                    let idx = digits(&mut pos);
                    let k: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("generator {c:?} needs an index")))?;
                    out.push(Token::Gen(if c == 't' || c == 'θ' {
                        Generator::Theta(k)
                    } else {
                        Generator::Xi(k)
                    }));
                }
                d if d.is_ascii_digit() => {
                    let mut lit = digits(&mut pos);
                    // allow whitespace around '/'
                    let mut look = pos;
                    while look < chars.len() && chars[look] == ' ' {
                        look += 1;
                    }
                    if look < chars.len() && chars[look] == '/' {
                        look += 1;
                        while look < chars.len() && chars[look] == ' ' {
                            look += 1;
                        }
                        pos = look;
                        let den = digits(&mut pos);
                        if den.is_empty() {
                            return Err(Error::Parse("missing denominator".into()));
                        }
                        lit = format!("{lit}/{den}");
                    }
                    out.push(Token::Number(parse_rational(&lit)?));
                }
                other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
            }
        }
        Ok(out)
    }

    pub(super) fn parse_element(n: usize, text: &str) -> Result<Element> {
        let tokens = tokenize(text)?;
        let mut out = Element::zero(n);
        let mut pos = 0;
        let mut first = true;
        while pos < tokens.len() {
            let mut negative = false;
            let mut saw_sign = false;
            while let Some(tok @ (Token::Plus | Token::Minus)) = tokens.get(pos) {
                negative ^= *tok == Token::Minus;
                saw_sign = true;
                pos += 1;
            }
            if !first && !saw_sign {
                return Err(Error::Parse("expected '+' or '-' between terms".into()));
            }
            let mut coeff = BigRational::one();
            let mut word = Vec::new();
            let mut seen_anything = false;
            if let Some(Token::Number(c)) = tokens.get(pos) {
                coeff = c.clone();
                pos += 1;
                seen_anything = true;
                if tokens.get(pos) == Some(&Token::Star) {
                    pos += 1;
                    if !matches!(tokens.get(pos), Some(Token::Gen(_))) {
                        return Err(Error::Parse("'*' must be followed by a generator".into()));
                    }
                }
            }
            loop {
                match tokens.get(pos) {
                    Some(Token::Gen(g)) => {
                        word.push(*g);
                        seen_anything = true;
                        pos += 1;
                    }
                    Some(Token::Star) if !word.is_empty() => pos += 1,
                    _ => break,
                }
            }
            if !seen_anything {
                return Err(Error::Parse("empty term".into()));
            }
            if negative {
                coeff = -coeff;
            }
            out = out.checked_add(&Element::from_word(n, &word)?.scale(&coeff))?;
            first = false;
        }
        if first {
            return Err(Error::Parse("empty expression".into()));
        }
        Ok(out)
    }
}

/// Normal form of a word by adjacent transpositions, one sign flip per
/// swap. Slow but independent of the popcount sign rule; `None` if the word
/// repeats a generator.
pub fn bubble_sort_word(n: usize, word: &[Generator]) -> Result<Option<(bool, Monomial)>> {
    let key = |g: &Generator| match *g {
        Generator::Theta(k) => k,
        Generator::Xi(k) => MAX_RANK + 1 + k,
    };
    let mut w = word.to_vec();
    let mut negative = false;
    for pass in 0..w.len() {
        for p in 0..w.len().saturating_sub(1 + pass) {
            if key(&w[p]) > key(&w[p + 1]) {
                w.swap(p, p + 1);
                negative = !negative;
            }
        }
    }
    if w.windows(2).any(|pair| pair[0] == pair[1]) {
        return Ok(None);
    }
    let theta: Vec<usize> = w
        .iter()
        .filter(|g| matches!(g, Generator::Theta(_)))
        .map(|g| g.index())
        .collect();
    let xi: Vec<usize> = w
        .iter()
        .filter(|g| matches!(g, Generator::Xi(_)))
        .map(|g| g.index())
        .collect();
    Ok(Some((negative, Monomial::from_supports(n, &theta, &xi)?)))
}

/// `δ_n = θ_1ξ_1 + ... + θ_nξ_n`.
pub fn casimir(n: usize) -> Element {
    let mut e = Element::zero(n);
    for k in 0..n {
        let m = Monomial::new(n, 1 << k, 1 << k).expect("rank checked");
        e.add_term(m, BigRational::one());
    }
    e
}

/// `δ_n^k`, nonzero exactly when `k <= n`.
pub fn casimir_power(n: usize, k: usize) -> Element {
    casimir(n).pow(k)
}

/// `v(A, B) = ξ_{c1}θ_{c1}⋯ξ_{ct}θ_{ct} · θ_{a1}⋯θ_{ar} · ξ_{b1}⋯ξ_{bs}` with
/// `c ∈ A∩B`, `a ∈ A−B`, `b ∈ B−A` ascending, in canonical form.
pub fn v_basis_element(a: &[usize], b: &[usize], n: usize) -> Result<Element> {
    let m = Monomial::from_supports(n, a, b)?;
    let (am, bm) = (m.theta_mask(), m.xi_mask());
    let mut word = Vec::with_capacity(m.degree());
    for c in mask_to_indices(am & bm) {
        word.push(Generator::Xi(c));
        word.push(Generator::Theta(c));
    }
    word.extend(mask_to_indices(am & !bm).into_iter().map(Generator::Theta));
    word.extend(mask_to_indices(bm & !am).into_iter().map(Generator::Xi));
    Element::from_word(n, &word)
}

/// Sign of `v(A, B)` relative to the canonical monomial `θ_A ξ_B`.
///
/// Each pair `ξ_cθ_c` is even, so it equals `-θ_cξ_c` and commutes with
/// everything. The remaining sign is that of moving the θ's of `A∩B` out of
/// the ξ block of `A∩B` and merging.
pub fn v_basis_sign(theta: u32, xi: u32) -> bool {
    let m = Monomial {
        n: MAX_RANK as u8,
        theta,
        xi,
    };
    let c = theta & xi;
    // v(A,B) = (-1)^{|C|} θ_C ξ_C θ_{A-B} ξ_{B-A} with pairs interleaved;
    // interleaved θ_cξ_c pairs equal θ_C ξ_C up to the sign of unshuffling.
    let pairs = c.count_ones();
    let unshuffle = pairs * pairs.saturating_sub(1) / 2;
    let cm = Monomial {
        n: m.n,
        theta: c,
        xi: c,
    };
    let rest = Monomial {
        n: m.n,
        theta: theta & !xi,
        xi: xi & !theta,
    };
    let (neg, _) = cm.mul_signed(&rest).expect("disjoint supports");
    (pairs + unshuffle + neg as u32) % 2 == 1
}

/// Matrix of the multiplication pairing `∧_{i,j} ⊗ ∧_{n-i,n-j} → ∧_{n,n}`:
/// entry `(a, b)` is the coefficient of the top monomial in `a·b`.
pub fn pairing_matrix(n: usize, d: Bidegree) -> Result<ExactMatrix> {
    if !d.within(n) {
        return Err(Error::BidegreeOutOfRange { i: d.i, j: d.j, n });
    }
    let rows = bidegree_basis(n, d);
    let cols = bidegree_basis(n, Bidegree::new(n - d.i, n - d.j));
    Ok(ExactMatrix::from_fn(
        rows.len(),
        cols.len(),
        |r, c| match rows[r].mul_signed(&cols[c]) {
            None => BigRational::zero(),
            Some((true, _)) => -BigRational::one(),
            Some((false, _)) => BigRational::one(),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: usize, s: &str) -> Element {
        Element::parse(n, s).unwrap()
    }

    #[test]
    fn generator_relations() {
        let t1 = Element::theta(2, 1).unwrap();
        let t2 = Element::theta(2, 2).unwrap();
        let x1 = Element::xi(2, 1).unwrap();
        assert!((&t1 * &t1).is_zero());
        assert_eq!(&t2 * &t1, -&(&t1 * &t2));
        assert_eq!(&t1 * &x1, -&(&x1 * &t1));
        assert_eq!((&t2 * &t1).to_string(), "-1*t1 t2");
    }

    #[test]
    fn casimir_square_for_two() {
        let d = casimir(2);
        let sq = &d * &d;
        assert_eq!(sq, el(2, "-2*t1 t2 x1 x2"));
        assert_eq!(sq, el(2, "2*t1 x1 t2 x2"));
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimir(1), el(1, "t1 x1"));
        assert_eq!(casimir(3), el(3, "t1 x1 + t2 x2 + t3 x3"));
        assert!(casimir(3)
            .terms()
            .all(|(m, _)| m.bidegree() == Bidegree::new(1, 1)));
        assert!(casimir_power(3, 4).is_zero());
        let top = casimir_power(3, 3);
        assert!(!top.is_zero());
        assert_eq!(top.bidegrees(), vec![Bidegree::new(3, 3)]);
        assert_eq!(casimir_power(5, 0), Element::one(5));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = Element::one(2);
        let b = Element::one(3);
        assert_eq!(
            a.checked_mul(&b),
            Err(Error::RankMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn v_basis_examples() {
        assert_eq!(v_basis_element(&[1], &[], 1).unwrap(), el(1, "t1"));
        assert_eq!(v_basis_element(&[1], &[1], 1).unwrap(), el(1, "-1*t1 x1"));
        assert!(v_basis_element(&[3], &[], 2).is_err());
        // δ·v(A,B) carries a global minus sign relative to Σ v(A∪c, B∪c)
        let lhs = &casimir(2) * &v_basis_element(&[1], &[], 2).unwrap();
        let rhs = v_basis_element(&[1, 2], &[2], 2).unwrap();
        assert_eq!(lhs, -&rhs);
    }

    #[test]
    fn v_basis_sign_matches_word_product() {
        let n = 5;
        for theta in 0..32u32 {
            for xi in 0..32u32 {
                let m = Monomial::new(n, theta, xi).unwrap();
                let v = v_basis_element(&m.theta_support(), &m.xi_support(), n).unwrap();
                let (neg, mm) = v.as_signed_monomial().unwrap();
                assert_eq!(mm, m);
                assert_eq!(neg, v_basis_sign(theta, xi), "A={theta:b} B={xi:b}");
            }
        }
    }

    #[test]
    fn path_round_trip_and_figure_path() {
        for n in 0..=6 {
            for m in all_monomials(n, None).unwrap() {
                assert_eq!(Monomial::from_path(&m.to_path()).unwrap(), m);
            }
        }
        assert_eq!(Monomial::one(3).to_path().to_string(), "U U U");
        let sigma: Path = "U U Ht D D Ht U U D".parse().unwrap();
        let m = Monomial::from_path(&sigma).unwrap();
        assert_eq!(m.theta_support(), vec![3, 4, 5, 6, 9]);
        assert_eq!(m.xi_support(), vec![4, 5, 9]);
    }

    #[test]
    fn text_round_trip_and_reordering() {
        let e = el(3, "-2*t1 t2 x1 x2 + 1*t3");
        assert_eq!(e.to_string(), "-2*t1 t2 x1 x2 + 1*t3");
        assert_eq!(el(3, &e.to_string()), e);
        assert_eq!(el(2, "x1 t1"), el(2, "-t1 x1"));
        assert_eq!(el(2, "3/4 + t2*t1"), el(2, "3/4 - t1 t2"));
        assert_eq!(el(2, "θ1 ξ2"), el(2, "t1 x2"));
        assert_eq!(el(2, "t1 t1"), Element::zero(2));
        assert_eq!(Element::zero(2).to_string(), "0");
        assert!(Element::parse(2, "t3").is_err());
        assert!(Element::parse(2, "t1 +").is_err());
        assert!(Element::parse(2, "").is_err());
        assert!(Element::parse(2, "2 t1 3").is_err());
        assert!(Element::parse(2, "1/0").is_err());
    }

    #[test]
    fn json_round_trip_and_reordering() {
        let e = el(3, "-2*t1 t2 x1 x2 + 1/3*t3");
        let json = serde_json::to_string(&e.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"terms":[{"theta":[1,2],"xi":[1,2],"coeff":"-2"},{"theta":[3],"xi":[],"coeff":"1/3"}]}"#
        );
        let back: ElementJson = serde_json::from_str(&json).unwrap();
        assert_eq!(Element::from_json(&back).unwrap(), e);
        let swapped: ElementJson =
            serde_json::from_str(r#"{"n":2,"terms":[{"theta":[2,1],"xi":[],"coeff":"5"}]}"#)
                .unwrap();
        assert_eq!(Element::from_json(&swapped).unwrap(), el(2, "-5*t1 t2"));
    }

    #[test]
    fn monomial_bounds() {
        assert!(Monomial::new(3, 0b1000, 0).is_err());
        assert!(Monomial::from_supports(3, &[0], &[]).is_err());
        assert!(Monomial::new(32, 0, 0).is_err());
        assert_eq!(bidegree_basis(3, Bidegree::new(1, 2)).len(), 9);
        assert!(bidegree_basis(3, Bidegree::new(4, 0)).is_empty());
        assert!(matches!(
            all_monomials(13, None),
            Err(Error::EnumerationCap { .. })
        ));
        assert!(all_monomials(2, Some(1)).is_err());
    }

    #[test]
    fn pairing_is_perfect_small() {
        for n in 0..=3 {
            for d in Bidegree::all(n) {
                let m = pairing_matrix(n, d).unwrap();
                assert_eq!(m.rank(), m.rows());
                assert_eq!(m.rows(), m.cols());
            }
        }
    }
}
