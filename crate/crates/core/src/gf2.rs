//! Bit-packed linear algebra over GF(2).
//!
//! Every routine is deterministic: elimination always takes the first
//! available pivot, scanning columns left to right.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid bit character {0:?}")]
    BadBit(char),
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        xor_words(&mut self.words, &other.words);
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        iter_ones(&self.words)
    }

    pub fn first_one(&self) -> Option<usize> {
        first_one_from(&self.words, 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVector {
    type Err = LinalgError;

    /// Parses a string of `0`/`1` characters, first character = index 0.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(LinalgError::BadBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_bools(&bits))
    }
}

fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + t)
            }
        })
    })
}

fn first_one_from(words: &[u64], start: usize) -> Option<usize> {
    let mut wi = start / WORD;
    if wi >= words.len() {
        return None;
    }
    let mut w = words[wi] & (!0u64 << (start % WORD));
    loop {
        if w != 0 {
            return Some(wi * WORD + w.trailing_zeros() as usize);
        }
        wi += 1;
        if wi >= words.len() {
            return None;
        }
        w = words[wi];
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors, each of length `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::LengthMismatch { expected: cols, got: r.len() });
            }
            m.row_mut(i).copy_from_slice(&r.words);
        }
        Ok(m)
    }

    /// Parses rows written as `0`/`1` strings.
    pub fn parse_rows(rows: &[&str]) -> Result<Self, LinalgError> {
        let vs = rows.iter().map(|r| r.parse()).collect::<Result<Vec<BitVector>, _>>()?;
        let cols = vs.first().map_or(0, BitVector::len);
        Self::from_rows(cols, &vs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector { len: self.cols, words: self.row_words(r).to_vec() }
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        iter_ones(self.row_words(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// `dst ^= src` on rows.
    fn xor_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            self.row_mut(dst).fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        xor_words(a, b);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix-vector product `m·v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, LinalgError> {
        if v.len != self.cols {
            return Err(LinalgError::LengthMismatch { expected: self.cols, got: v.len });
        }
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(&v.words)
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::LengthMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row_ones(r).collect::<Vec<_>>() {
                let (s, o) = (out.stride, r * out.stride);
                xor_words(&mut out.data[o..o + s], other.row_words(k));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let (wi, mask) = (c / WORD, 1u64 << (c % WORD));
            let Some(p) = (r..self.rows).find(|&i| self.data[i * self.stride + wi] & mask != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.data[i * self.stride + wi] & mask != 0 {
                    self.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn rank_in_place(&mut self) -> usize {
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let (wi, mask) = (c / WORD, 1u64 << (c % WORD));
            let Some(p) = (r..self.rows).find(|&i| self.data[i * self.stride + wi] & mask != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in r + 1..self.rows {
                if self.data[i * self.stride + wi] & mask != 0 {
                    self.xor_rows(i, r);
                }
            }
            r += 1;
        }
        r
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        Ok(())
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    m.clone().rank_in_place()
}

/// Basis of `{v : m·v = 0}`, one vector per free column (left to right).
pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVector> {
    let mut e = m.clone();
    let pivots = e.rref_in_place();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BitVector::unit(m.cols, f);
            for (i, &p) in pivots.iter().enumerate() {
                if e.get(i, f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// One solution of `m·x = rhs` (free variables set to zero), if any.
pub fn solve(m: &BitMatrix, rhs: &BitVector) -> Result<Option<BitVector>, LinalgError> {
    if rhs.len != m.rows {
        return Err(LinalgError::LengthMismatch { expected: m.rows, got: rhs.len });
    }
    let mut aug = BitMatrix::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in m.row_ones(r) {
            aug.set(r, c, true);
        }
        if rhs.get(r) {
            aug.set(r, m.cols, true);
        }
    }
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = BitVector::zeros(m.cols);
    for (i, &p) in pivots.iter().enumerate() {
        if aug.get(i, m.cols) {
            x.set(p, true);
        }
    }
    Ok(Some(x))
}

fn check_lengths(len: usize, vs: &[BitVector]) -> Result<(), LinalgError> {
    match vs.iter().find(|v| v.len != len) {
        Some(v) => Err(LinalgError::LengthMismatch { expected: len, got: v.len }),
        None => Ok(()),
    }
}

pub fn member(span: &[BitVector], v: &BitVector) -> Result<bool, LinalgError> {
    check_lengths(v.len, span)?;
    let mut e = Echelon::new(v.len);
    for s in span {
        e.insert(s.clone());
    }
    Ok(e.contains(v))
}

pub fn quotient_dim(ambient_dim: usize, span: &[BitVector]) -> Result<usize, LinalgError> {
    check_lengths(ambient_dim, span)?;
    let mut e = Echelon::new(ambient_dim);
    for s in span {
        e.insert(s.clone());
    }
    Ok(ambient_dim - e.rank())
}

/// Incrementally grown echelon basis of a subspace of GF(2)^len.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<BitVector>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon { len, pivot_row: vec![None; len], rows: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: BitVector) -> BitVector {
        assert_eq!(v.len, self.len, "echelon length mismatch");
        let mut pos = 0;
        while let Some(i) = first_one_from(&v.words, pos) {
            if let Some(r) = self.pivot_row[i] {
                xor_words(&mut v.words, &self.rows[r].words);
            }
            pos = i + 1;
        }
        v
    }

    /// Leading-bit reduction only; cheaper than [`Echelon::reduce`] when only zero-ness matters.
    fn reduce_leading(&self, mut v: BitVector) -> BitVector {
        while let Some(i) = v.first_one() {
            match self.pivot_row[i] {
                Some(r) => xor_words(&mut v.words, &self.rows[r].words),
                None => break,
            }
        }
        v
    }

    /// Adds `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: BitVector) -> bool {
        let v = self.reduce_leading(v);
        match v.first_one() {
            None => false,
            Some(p) => {
                self.pivot_row[p] = Some(self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce_leading(v.clone()).is_zero()
    }
}
