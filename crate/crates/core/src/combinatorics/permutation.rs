use std::fmt;

use serde::{Serialize, Serializer};

use super::partition::Partition;
use crate::error::{Result, WgError};

/// A point of a permutation domain. Positive values are plain labels
/// `1, 2, ...`; negative values are hatted labels, `-a` standing for `â`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub i32);

impl Label {
    pub fn plain(a: usize) -> Label {
        Label(a as i32)
    }

    pub fn hatted(a: usize) -> Label {
        Label(-(a as i32))
    }

    pub fn is_hatted(self) -> bool {
        self.0 < 0
    }

    /// `â`, with `â̂ = a`.
    pub fn hat(self) -> Label {
        Label(-self.0)
    }

    /// The label with its hat forgotten.
    pub fn base(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn machine(self) -> String {
        if self.is_hatted() {
            format!("{}h", self.base())
        } else {
            self.0.to_string()
        }
    }

    pub fn unicode(self) -> String {
        if self.is_hatted() {
            format!("{}\u{302}", self.base())
        } else {
            self.0.to_string()
        }
    }

    pub fn parse(token: &str) -> Result<Label> {
        let t = token.trim();
        let (digits, hatted) = if let Some(d) = t.strip_suffix('h') {
            (d, true)
        } else if let Some(d) = t.strip_suffix('\u{302}') {
            (d, true)
        } else {
            (t, false)
        };
        let a: usize = digits
            .parse()
            .map_err(|_| WgError::Parse(format!("bad label {token:?}")))?;
        if a == 0 {
            return Err(WgError::Parse("labels start at 1".into()));
        }
        Ok(if hatted {
            Label::hatted(a)
        } else {
            Label::plain(a)
        })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.machine())
    }
}

/// The label set a permutation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// `{1, ..., k}`
    Plain(usize),
    /// `[n] ∪ [n̂]`, `2n` points.
    Hatted(usize),
}

impl Domain {
    pub fn size(self) -> usize {
        match self {
            Domain::Plain(k) => k,
            Domain::Hatted(n) => 2 * n,
        }
    }

    /// Dense index of a label. Hatted domains store `1..n` at `0..n` and
    /// `1̂..n̂` at `n..2n`.
    pub fn index_of(self, label: Label) -> Option<usize> {
        let a = label.base();
        match self {
            Domain::Plain(k) if !label.is_hatted() && (1..=k).contains(&a) => Some(a - 1),
            Domain::Hatted(n) if (1..=n).contains(&a) => {
                Some(if label.is_hatted() { n + a - 1 } else { a - 1 })
            }
            _ => None,
        }
    }

    pub fn label_of(self, index: usize) -> Label {
        match self {
            Domain::Plain(_) => Label::plain(index + 1),
            Domain::Hatted(n) => {
                if index < n {
                    Label::plain(index + 1)
                } else {
                    Label::hatted(index - n + 1)
                }
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Plain(k) => write!(f, "{{1..{k}}}"),
            Domain::Hatted(n) => write!(f, "[{n}]u[{n}^]"),
        }
    }
}

/// Rendering of hats in cycle notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelStyle {
    /// `4h`
    Machine,
    /// `4̂`
    Unicode,
}

/// A bijection of a finite domain, stored as a dense image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    domain: Domain,
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(domain: Domain) -> Self {
        Permutation {
            domain,
            images: (0..domain.size()).collect(),
        }
    }

    pub fn from_images(domain: Domain, images: Vec<usize>) -> Result<Self> {
        let size = domain.size();
        if images.len() != size {
            return Err(WgError::InvalidPermutation(format!(
                "{} images for a domain of size {size}",
                images.len()
            )));
        }
        let mut seen = vec![false; size];
        for &i in &images {
            if i >= size || std::mem::replace(&mut seen[i], true) {
                return Err(WgError::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
        }
        Ok(Permutation { domain, images })
    }

    pub(crate) fn from_images_unchecked(domain: Domain, images: Vec<usize>) -> Self {
        debug_assert_eq!(images.len(), domain.size());
        Permutation { domain, images }
    }

    pub fn from_cycles(domain: Domain, cycles: &[Vec<Label>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..domain.size()).collect();
        let mut seen = vec![false; domain.size()];
        for cycle in cycles {
            let idx = cycle
                .iter()
                .map(|&l| {
                    domain.index_of(l).ok_or_else(|| {
                        WgError::InvalidPermutation(format!("label {l} not in {domain}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            for (j, &i) in idx.iter().enumerate() {
                if std::mem::replace(&mut seen[i], true) {
                    return Err(WgError::InvalidPermutation(format!(
                        "label {} repeated",
                        domain.label_of(i)
                    )));
                }
                images[i] = idx[(j + 1) % idx.len()];
            }
        }
        Ok(Permutation { domain, images })
    }

    /// Parses cycle notation such as `"(1 2)(3 4h)"`; fixed points may be omitted.
    pub fn parse(domain: Domain, s: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| WgError::Parse(format!("expected '(' in {s:?}")))?;
            let end = body
                .find(')')
                .ok_or_else(|| WgError::Parse(format!("unclosed cycle in {s:?}")))?;
            let labels = body[..end]
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(Label::parse)
                .collect::<Result<Vec<_>>>()?;
            if !labels.is_empty() {
                cycles.push(labels);
            }
            rest = body[end + 1..].trim_start();
        }
        Permutation::from_cycles(domain, &cycles)
    }

    pub fn transposition(domain: Domain, a: Label, b: Label) -> Result<Self> {
        Permutation::from_cycles(domain, &[vec![a, b]])
    }

    /// The standard permutation of cycletype `alpha`: its cycles are runs of
    /// consecutive integers of weakly decreasing length, e.g. `(3,2) ↦ (123)(45)`.
    pub fn standard(alpha: &Partition) -> Self {
        Permutation {
            domain: Domain::Plain(alpha.weight()),
            images: standard_images(alpha.parts(), 0),
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn apply(&self, label: Label) -> Option<Label> {
        self.domain
            .index_of(label)
            .map(|i| self.domain.label_of(self.images[i]))
    }

    /// `self ∘ other`: the map `x ↦ self(other(x))`. Products are read right to left.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.domain != other.domain {
            return Err(WgError::DomainMismatch {
                left: self.domain.to_string(),
                right: other.domain.to_string(),
            });
        }
        Ok(Permutation {
            domain: self.domain,
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation {
            domain: self.domain,
            images: inv,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycles as dense indices, each starting at its least index, ordered by
    /// least index. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// `ℓ(σ)`, the number of cycles including fixed points.
    pub fn num_cycles(&self) -> usize {
        count_cycles(&self.images)
    }

    pub fn cycletype(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
    }

    /// The hat involution `σ ↦ h ∘ σ⁻¹ ∘ h`, where `h` exchanges `a` and `â`.
    /// Each cycle `(a b c)` becomes `(ĉ b̂ â)`.
    pub fn hat(&self) -> Result<Permutation> {
        let Domain::Hatted(n) = self.domain else {
            return Err(WgError::NotHatted(self.domain.to_string()));
        };
        let inv = self.inverse();
        let h = |i: usize| if i < n { i + n } else { i - n };
        let images = (0..2 * n).map(|i| h(inv.images[h(i)])).collect();
        Ok(Permutation {
            domain: self.domain,
            images,
        })
    }

    pub fn is_palindromic(&self) -> Result<bool> {
        Ok(self.hat()? == *self)
    }

    /// Places a permutation of `{1..k}` inside a larger plain domain or a
    /// hatted domain, fixing every new point.
    pub fn embed(&self, domain: Domain) -> Result<Permutation> {
        let Domain::Plain(k) = self.domain else {
            return Err(WgError::DomainMismatch {
                left: self.domain.to_string(),
                right: domain.to_string(),
            });
        };
        let fits = match domain {
            Domain::Plain(m) | Domain::Hatted(m) => m >= k,
        };
        if !fits {
            return Err(WgError::DomainMismatch {
                left: self.domain.to_string(),
                right: domain.to_string(),
            });
        }
        let mut images: Vec<usize> = (0..domain.size()).collect();
        images[..k].copy_from_slice(&self.images);
        Ok(Permutation { domain, images })
    }

    pub fn to_cycle_string(&self, style: LabelStyle) -> String {
        let render = |i: usize| {
            let l = self.domain.label_of(i);
            match style {
                LabelStyle::Machine => l.machine(),
                LabelStyle::Unicode => l.unicode(),
            }
        };
        let mut s = String::new();
        for cycle in self.cycles() {
            if cycle.len() == 1 {
                continue;
            }
            s.push('(');
            s.push_str(
                &cycle
                    .iter()
                    .map(|&i| render(i))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }
}

/// Image array of the standard permutation with the given cycle lengths,
/// acting on indices `offset..offset + Σ parts`.
pub(crate) fn standard_images(parts: &[usize], offset: usize) -> Vec<usize> {
    let mut images = Vec::with_capacity(parts.iter().sum());
    let mut start = offset;
    for &len in parts {
        for j in 0..len {
            images.push(start + (j + 1) % len);
        }
        start += len;
    }
    images
}

pub(crate) fn count_cycles(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut count = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
        }
    }
    count
}

pub(crate) fn cycletype_of(images: &[usize]) -> Partition {
    let mut seen = vec![false; images.len()];
    let mut lens = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
            len += 1;
        }
        lens.push(len);
    }
    Partition::from_unsorted(lens)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string(LabelStyle::Machine))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
