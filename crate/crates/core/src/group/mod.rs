//! Finite groups given by multiplication tables.
//!
//! Elements are identified by their position `0..n`; labels are only used
//! for display. All constructions (families, products, quotients) pin the
//! element order so downstream vertex numbering is reproducible.

mod family;
mod ops;
mod subgroup;

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

pub use family::{build_family, parse_group_spec, GroupFamilySpec, MAX_SYMMETRIC_DEGREE};
pub(crate) use ops::quotient_with_representatives;
pub use ops::{
    atom, atoms, complement, direct_product, direct_square, direct_square_bounded, is_eulerian,
    is_normal_set, quotient, DIRECT_SQUARE_BOUND,
};
pub use subgroup::{
    all_subgroups, all_subgroups_bounded, subgroup_generated, Subgroup, SUBGROUP_ENUMERATION_BOUND,
};

/// Index of a group element.
pub type Element = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major `order × order` table, `table[i * order + j] = g_i · g_j`.
    table: Vec<Element>,
    identity: Element,
    inverses: Vec<Element>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table and derives identity and inverses.
    pub fn from_table(rows: Vec<Vec<Element>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            table.extend_from_slice(row);
        }
        Self::from_flat_table(n, table, labels)
    }

    pub(crate) fn from_flat_table(
        n: usize,
        table: Vec<Element>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        debug_assert_eq!(table.len(), n * n);
        if let Some(&bad) = table.iter().find(|&&x| x >= n) {
            return Err(Error::NotAGroup(format!("entry {bad} out of range 0..{n}")));
        }
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(Error::NotAGroup(format!(
                    "{} labels given for {n} elements",
                    labels.len()
                )));
            }
        }

        // Latin square: every row and column is a permutation.
        let mut seen = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let x = table[i * n + j];
                if seen[x] == i {
                    return Err(Error::NotAGroup(format!("row {i} is not a permutation")));
                }
                seen[x] = i;
            }
        }
        seen.fill(usize::MAX);
        for j in 0..n {
            for i in 0..n {
                let x = table[i * n + j];
                if seen[x] == j {
                    return Err(Error::NotAGroup(format!("column {j} is not a permutation")));
                }
                seen[x] = j;
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e * n + j] == j && table[j * n + e] == j))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;

        let mut inverses = Vec::with_capacity(n);
        for i in 0..n {
            let inv = (0..n)
                .find(|&j| table[i * n + j] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {i} has no right inverse")))?;
            if table[inv * n + i] != identity {
                return Err(Error::NotAGroup(format!(
                    "element {i} has no two-sided inverse"
                )));
            }
            inverses.push(inv);
        }

        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }

        Ok(FiniteGroup {
            order: n,
            table,
            identity,
            inverses,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: Element) -> Element {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[Element] {
        &self.inverses
    }

    /// `g · x · g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: Element, x: Element) -> Element {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    pub fn row(&self, a: Element) -> &[Element] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: Element) -> String {
        match &self.labels {
            Some(labels) => labels[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::NotAGroup(format!(
                "{} labels given for {} elements",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn pow(&self, g: Element, k: usize) -> Element {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: Element) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub(crate) fn check_element(&self, g: Element) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: g,
                order: self.order,
            })
        }
    }

    /// Parses the Cayley-table text format: `n`, then `n` rows of `n`
    /// 0-based indices, then an optional `labels: ...` line.
    pub fn parse_table_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (line_no, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing group order"))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid order `{first}`")))?;
        if n == 0 {
            return Err(Error::parse(line_no, "group order must be positive"));
        }

        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let (line_no, line) = lines.next().ok_or_else(|| {
                Error::parse(line_no, format!("expected {n} table rows, found {r}"))
            })?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("invalid index `{tok}`")))?;
                    if v >= n {
                        return Err(Error::parse(
                            line_no,
                            format!("index {v} out of range 0..{n}"),
                        ));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(Error::parse(
                    line_no,
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
            rows.push(row);
        }

        let mut labels = None;
        if let Some((line_no, line)) = lines.next() {
            let rest = line
                .strip_prefix("labels:")
                .ok_or_else(|| Error::parse(line_no, "unexpected trailing content"))?;
            let parsed: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            if parsed.len() != n {
                return Err(Error::parse(
                    line_no,
                    format!("{} labels given for {n} elements", parsed.len()),
                ));
            }
            labels = Some(parsed);
            if let Some((line_no, _)) = lines.next() {
                return Err(Error::parse(line_no, "unexpected content after labels"));
            }
        }

        Self::from_table(rows, labels)
    }

    pub fn read_table_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse_table_text(&text)
    }

    pub fn to_table_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.order);
        for a in self.elements() {
            let row: Vec<String> = self.row(a).iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        if let Some(labels) = &self.labels {
            let _ = writeln!(out, "labels: {}", labels.join(" "));
        }
        out
    }
}
