use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::{direct_product, FiniteGroup};
use crate::error::{Error, Result};

/// Largest symmetric group the builder will construct (720 elements).
pub const MAX_SYMMETRIC_DEGREE: usize = 6;

/// A recipe for one of the built-in groups.
///
/// The textual form is `Z<n>`, `D<m>` (dihedral of order `2m`), `S<m>`,
/// products joined by `x` (left associative) and `@<path>` for a Cayley
/// table file. A file operand runs to the end of the string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupFamilySpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    DirectProduct(Box<GroupFamilySpec>, Box<GroupFamilySpec>),
    TableFile(PathBuf),
}

impl GroupFamilySpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        build_family(self)
    }

    pub fn product(left: GroupFamilySpec, right: GroupFamilySpec) -> Self {
        GroupFamilySpec::DirectProduct(Box::new(left), Box::new(right))
    }
}

impl fmt::Display for GroupFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamilySpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupFamilySpec::Dihedral(m) => write!(f, "D{m}"),
            GroupFamilySpec::Symmetric(m) => write!(f, "S{m}"),
            GroupFamilySpec::DirectProduct(a, b) => write!(f, "{a}x{b}"),
            GroupFamilySpec::TableFile(p) => write!(f, "@{}", p.display()),
        }
    }
}

impl FromStr for GroupFamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

/// Parses the group grammar; errors carry a 0-based character position.
pub fn parse_group_spec(s: &str) -> Result<GroupFamilySpec> {
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };

    let parse_factor = |pos: &mut usize| -> Result<GroupFamilySpec> {
        skip_ws(pos);
        let start = *pos;
        let Some(&head) = chars.get(*pos) else {
            return Err(Error::parse(start, "expected a group factor"));
        };
        if head == '@' {
            let path: String = chars[*pos + 1..].iter().collect();
            let path = path.trim();
            if path.is_empty() {
                return Err(Error::parse(start + 1, "missing table file path"));
            }
            *pos = chars.len();
            return Ok(GroupFamilySpec::TableFile(PathBuf::from(path)));
        }
        *pos += 1;
        let digits_start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        let digits: String = chars[digits_start..*pos].iter().collect();
        let make: fn(usize) -> GroupFamilySpec = match head {
            'Z' => GroupFamilySpec::Cyclic,
            'D' => GroupFamilySpec::Dihedral,
            'S' => GroupFamilySpec::Symmetric,
            other => {
                return Err(Error::parse(
                    start,
                    format!("unsupported group token `{other}` (expected Z, D, S or @file)"),
                ))
            }
        };
        if digits.is_empty() {
            return Err(Error::parse(digits_start, format!("`{head}` needs a size")));
        }
        let value: usize = digits
            .parse()
            .map_err(|_| Error::parse(digits_start, format!("size `{digits}` is too large")))?;
        if value == 0 {
            return Err(Error::parse(digits_start, "size must be positive"));
        }
        Ok(make(value))
    };

    let mut spec = parse_factor(&mut pos)?;
    loop {
        skip_ws(&mut pos);
        match chars.get(pos) {
            None => return Ok(spec),
            Some('x') | Some('×') => {
                pos += 1;
                let rhs = parse_factor(&mut pos)?;
                spec = GroupFamilySpec::product(spec, rhs);
            }
            Some(other) => {
                return Err(Error::parse(pos, format!("unexpected `{other}`")));
            }
        }
    }
}

pub fn build_family(spec: &GroupFamilySpec) -> Result<FiniteGroup> {
    match spec {
        GroupFamilySpec::Cyclic(n) => cyclic(*n),
        GroupFamilySpec::Dihedral(m) => dihedral(*m),
        GroupFamilySpec::Symmetric(m) => symmetric(*m),
        GroupFamilySpec::DirectProduct(a, b) => {
            Ok(direct_product(&build_family(a)?, &build_family(b)?))
        }
        GroupFamilySpec::TableFile(path) => FiniteGroup::read_table_file(path),
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::UnsupportedFamily("cyclic group of order 0".into()));
    }
    let table = (0..n * n).map(|x| (x / n + x % n) % n).collect();
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteGroup::from_flat_table(n, table, Some(labels))
}

/// `D_m` of order `2m`: index `i < m` is `r^i`, index `m + i` is `s·r^i`,
/// with `r·s = s·r⁻¹`.
fn dihedral(m: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::UnsupportedFamily("dihedral group D0".into()));
    }
    let n = 2 * m;
    let decode = |x: usize| (x / m, x % m);
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let (fa, ra) = decode(a);
        for b in 0..n {
            let (fb, rb) = decode(b);
            // (s^fa r^ra)(s^fb r^rb) = s^(fa+fb) r^((-1)^fb ra + rb)
            let twisted = if fb == 1 { (m - ra) % m } else { ra };
            table.push(((fa + fb) % 2) * m + (twisted + rb) % m);
        }
    }
    let labels = (0..n)
        .map(|x| {
            let (f, r) = decode(x);
            match (f, r) {
                (0, 0) => "e".to_string(),
                (0, 1) => "r".to_string(),
                (0, r) => format!("r{r}"),
                (_, 0) => "s".to_string(),
                (_, 1) => "sr".to_string(),
                (_, r) => format!("sr{r}"),
            }
        })
        .collect();
    FiniteGroup::from_flat_table(n, table, Some(labels))
}

/// `S_m` on permutations of `0..m` in lexicographic one-line order, with
/// `(p·q)(x) = p(q(x))`.
fn symmetric(m: usize) -> Result<FiniteGroup> {
    if m > MAX_SYMMETRIC_DEGREE {
        return Err(Error::UnsupportedFamily(format!(
            "symmetric degree {m} exceeds {MAX_SYMMETRIC_DEGREE}"
        )));
    }
    let perms = permutations_lex(m);
    let n = perms.len();
    let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let mut table = Vec::with_capacity(n * n);
    let mut composed = vec![0; m];
    for p in &perms {
        for q in &perms {
            for x in 0..m {
                composed[x] = p[q[x]];
            }
            table.push(index_of(&composed));
        }
    }
    let labels = perms
        .iter()
        .map(|p| {
            let body: Vec<String> = p.iter().map(ToString::to_string).collect();
            format!("[{}]", body.join(""))
        })
        .collect();
    FiniteGroup::from_flat_table(n, table, Some(labels))
}

fn permutations_lex(m: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..m).collect();
    let mut out = vec![current.clone()];
    loop {
        // Standard next-permutation step.
        let Some(i) = (1..m).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..m).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}
