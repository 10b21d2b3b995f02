//! The truncated free group algebra `T_k(E) = k[F_E] / J^{k+1}` for `k = 1, 2`.
//!
//! An element is written in the basis `1`, `(e-1)`, `(e-1)(f-1)`:
//!
//! ```text
//! a = c + sum_e a_e (e-1) + sum_{e,f} a_ef (e-1)(f-1)
//! ```
//!
//! The constant `c` is the augmentation; the augmentation ideal `J` is the set
//! of elements with `c = 0`, and any product of `k + 1` elements of `J`
//! vanishes. Coefficients are stored sparsely and only flattened into dense
//! rows (order: `1`, then `(e-1)` by edge id, then `(e-1)(f-1)`
//! lexicographically in `(e, f)`) when handed to the linear algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{EdgeBijection, EdgeId, Letter, Sign, Word};

/// Truncation level `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Level {
    One,
    Two,
}

impl Level {
    pub fn as_u8(self) -> u8 {
        match self {
            Level::One => 1,
            Level::Two => 2,
        }
    }

    /// Dimension `1 + m (+ m^2)` of `T_k` on `m` generators.
    pub fn ambient_dim(self, m: usize) -> usize {
        match self {
            Level::One => 1 + m,
            Level::Two => 1 + m + m * m,
        }
    }
}

impl TryFrom<u8> for Level {
    type Error = Error;

    fn try_from(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Level::One),
            2 => Ok(Level::Two),
            _ => Err(Error::UnsupportedLevel(k)),
        }
    }
}

impl From<Level> for u8 {
    fn from(k: Level) -> u8 {
        k.as_u8()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncElement<F: Field> {
    field: F,
    level: Level,
    constant: F::Elem,
    deg1: BTreeMap<EdgeId, F::Elem>,
    deg2: BTreeMap<(EdgeId, EdgeId), F::Elem>,
}

fn bump<K: Ord + Clone, F: Field>(f: F, map: &mut BTreeMap<K, F::Elem>, key: &K, x: &F::Elem) {
    if f.is_zero(x) {
        return;
    }
    match map.get_mut(key) {
        Some(v) => {
            *v = f.add(v, x);
            if f.is_zero(v) {
                map.remove(key);
            }
        }
        None => {
            map.insert(key.clone(), x.clone());
        }
    }
}

impl<F: Field> TruncElement<F> {
    pub fn zero(field: F, level: Level) -> Self {
        Self {
            field,
            level,
            constant: field.zero(),
            deg1: BTreeMap::new(),
            deg2: BTreeMap::new(),
        }
    }

    pub fn scalar(field: F, level: Level, c: F::Elem) -> Self {
        Self {
            constant: c,
            ..Self::zero(field, level)
        }
    }

    pub fn one(field: F, level: Level) -> Self {
        Self::scalar(field, level, field.one())
    }

    /// The generator class `(e - 1)`.
    pub fn generator(field: F, level: Level, e: impl Into<EdgeId>) -> Self {
        let mut a = Self::zero(field, level);
        a.deg1.insert(e.into(), field.one());
        a
    }

    /// The image of a single letter: `e` goes to `1 + (e-1)` and `e^{-1}` to
    /// `1 - (e-1) + (e-1)^2`.
    pub fn letter(field: F, level: Level, letter: &Letter) -> Self {
        let mut a = Self::one(field, level);
        a.deg1
            .insert(letter.edge.clone(), field.from_i64(letter.sign.value()));
        if letter.sign == Sign::Minus && level == Level::Two {
            a.deg2
                .insert((letter.edge.clone(), letter.edge.clone()), field.one());
        }
        a
    }

    /// Adds `x (e-1)(f-1)`; ignored at level 1.
    pub fn add_deg2(&mut self, e: EdgeId, f: EdgeId, x: &F::Elem) {
        if self.level == Level::Two {
            bump(self.field, &mut self.deg2, &(e, f), x);
        }
    }

    pub fn add_deg1(&mut self, e: EdgeId, x: &F::Elem) {
        bump(self.field, &mut self.deg1, &e, x);
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// The augmentation, i.e. the coefficient of `1`.
    pub fn constant(&self) -> &F::Elem {
        &self.constant
    }

    pub fn deg1(&self) -> &BTreeMap<EdgeId, F::Elem> {
        &self.deg1
    }

    pub fn deg2(&self) -> &BTreeMap<(EdgeId, EdgeId), F::Elem> {
        &self.deg2
    }

    pub fn coeff1(&self, e: &EdgeId) -> F::Elem {
        self.deg1
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff2(&self, e: &EdgeId, f: &EdgeId) -> F::Elem {
        self.deg2
            .get(&(e.clone(), f.clone()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.constant) && self.deg1.is_empty() && self.deg2.is_empty()
    }

    pub fn in_augmentation_ideal(&self) -> bool {
        self.field.is_zero(&self.constant)
    }

    /// Every edge id with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = &EdgeId> {
        self.deg1
            .keys()
            .chain(self.deg2.keys().flat_map(|(e, f)| [e, f]))
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            Err(Error::LevelMismatch(
                self.level.as_u8(),
                other.level.as_u8(),
            ))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let f = self.field;
        let mut out = self.clone();
        out.constant = f.add(&out.constant, &other.constant);
        for (e, x) in &other.deg1 {
            bump(f, &mut out.deg1, e, x);
        }
        for (k, x) in &other.deg2 {
            bump(f, &mut out.deg2, k, x);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.level);
        }
        Self {
            field: f,
            level: self.level,
            constant: f.mul(c, &self.constant),
            deg1: self
                .deg1
                .iter()
                .map(|(k, x)| (k.clone(), f.mul(c, x)))
                .collect(),
            deg2: self
                .deg2
                .iter()
                .map(|(k, x)| (k.clone(), f.mul(c, x)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    /// Truncated product: degrees above the level are discarded.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let f = self.field;
        let (a0, b0) = (&self.constant, &other.constant);
        let mut out = Self::scalar(f, self.level, f.mul(a0, b0));
        for (e, x) in &other.deg1 {
            bump(f, &mut out.deg1, e, &f.mul(a0, x));
        }
        for (e, x) in &self.deg1 {
            bump(f, &mut out.deg1, e, &f.mul(b0, x));
        }
        if self.level == Level::Two {
            for (k, x) in &other.deg2 {
                bump(f, &mut out.deg2, k, &f.mul(a0, x));
            }
            for (k, x) in &self.deg2 {
                bump(f, &mut out.deg2, k, &f.mul(b0, x));
            }
            for (e, x) in &self.deg1 {
                for (g, y) in &other.deg1 {
                    bump(f, &mut out.deg2, &(e.clone(), g.clone()), &f.mul(x, y));
                }
            }
        }
        Ok(out)
    }

    /// The image of a word under `F_E -> T_k(E)`, computed as the product of
    /// the letter images.
    pub fn embed_word(field: F, level: Level, word: &Word) -> Self {
        word.letters()
            .iter()
            .fold(Self::one(field, level), |acc, l| {
                acc.multiply(&Self::letter(field, level, l))
                    .expect("levels agree")
            })
    }

    /// Applies the algebra map induced by an edge bijection: `(e-1)` goes to
    /// `(f-1)` when `e -> f`, and to `-(f-1) + (f-1)^2` when `e -> f^{-1}`.
    pub fn pushforward(&self, phi: &EdgeBijection) -> Result<Self> {
        let f = self.field;
        let level = self.level;
        let mut images: HashMap<&EdgeId, Self> = HashMap::new();
        for e in self.support() {
            if images.contains_key(e) {
                continue;
            }
            let (target, sign) = phi.get(e)?;
            let mut x = Self::letter(f, level, &Letter::new(target.clone(), *sign));
            x.constant = f.zero();
            images.insert(e, x);
        }
        let mut out = Self::scalar(f, level, self.constant.clone());
        for (e, c) in &self.deg1 {
            out = out.add(&images[e].scale(c))?;
        }
        for ((e, g), c) in &self.deg2 {
            out = out.add(&images[e].multiply(&images[g])?.scale(c))?;
        }
        Ok(out)
    }

    /// Dense coordinates in the fixed basis order for the given edge order.
    /// Fails if the element involves an edge outside `order`.
    pub fn flatten(&self, order: &[EdgeId]) -> Result<Vec<F::Elem>> {
        let f = self.field;
        let m = order.len();
        let index: HashMap<&EdgeId, usize> =
            order.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let pos = |e: &EdgeId| {
            index
                .get(e)
                .copied()
                .ok_or_else(|| Error::UnknownEdge(e.clone()))
        };
        let mut row = vec![f.zero(); self.level.ambient_dim(m)];
        row[0] = self.constant.clone();
        for (e, x) in &self.deg1 {
            row[1 + pos(e)?] = x.clone();
        }
        for ((e, g), x) in &self.deg2 {
            row[1 + m + pos(e)? * m + pos(g)?] = x.clone();
        }
        Ok(row)
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn from_row(field: F, level: Level, order: &[EdgeId], row: &[F::Elem]) -> Result<Self> {
        let m = order.len();
        if row.len() != level.ambient_dim(m) {
            return Err(Error::DimensionMismatch {
                left: level.ambient_dim(m),
                right: row.len(),
            });
        }
        let mut a = Self::scalar(field, level, row[0].clone());
        for (i, e) in order.iter().enumerate() {
            a.add_deg1(e.clone(), &row[1 + i]);
        }
        if level == Level::Two {
            for (i, e) in order.iter().enumerate() {
                for (j, g) in order.iter().enumerate() {
                    a.add_deg2(e.clone(), g.clone(), &row[1 + m + i * m + j]);
                }
            }
        }
        Ok(a)
    }
}

impl<F: Field> fmt::Display for TruncElement<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = self.field;
        let mut terms: Vec<(String, String)> = Vec::new();
        if !f.is_zero(&self.constant) {
            terms.push((f.to_fraction_string(&self.constant), String::new()));
        }
        for (e, x) in &self.deg1 {
            terms.push((f.to_fraction_string(x), format!("({e}-1)")));
        }
        for ((e, g), x) in &self.deg2 {
            terms.push((f.to_fraction_string(x), format!("({e}-1)({g}-1)")));
        }
        if terms.is_empty() {
            return out.write_str("0");
        }
        for (i, (c, basis)) in terms.iter().enumerate() {
            let c = c.strip_suffix("/1").unwrap_or(c);
            let (neg, mag) = match c.strip_prefix('-') {
                Some(m) => (true, m),
                None => (false, c),
            };
            match (i, neg) {
                (0, true) => out.write_str("-")?,
                (0, false) => {}
                (_, true) => out.write_str(" - ")?,
                (_, false) => out.write_str(" + ")?,
            }
            if basis.is_empty() {
                out.write_str(mag)?;
            } else if mag == "1" {
                out.write_str(basis)?;
            } else {
                write!(out, "{mag}{basis}")?;
            }
        }
        Ok(())
    }
}
