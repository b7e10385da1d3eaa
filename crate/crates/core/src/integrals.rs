//! Molecular integrals: FCIDUMP I/O, frozen-core folding and active-space selection.
//!
//! Integrals are held in spatial-orbital form. Two-electron integrals use
//! chemists' notation `(pq|rs)` and are stored densely with all eight
//! permutational images populated.

use std::fmt::Write as _;

use thiserror::Error;

/// Tolerance used when two listed images of the same integral disagree.
const CONFLICT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FcidumpError {
    #[error("FCIDUMP header is missing required key {0}")]
    MissingKey(&'static str),
    #[error("malformed FCIDUMP header: {0}")]
    MalformedHeader(String),
    #[error("line {line}: cannot parse record {text:?}")]
    MalformedRecord { line: usize, text: String },
    #[error("line {line}: orbital index {index} outside [0, {norb}]")]
    IndexOutOfBounds { line: usize, index: i64, norb: usize },
    #[error("line {line}: integral {indices:?} = {new} conflicts with earlier value {existing}")]
    Conflict {
        line: usize,
        indices: [usize; 4],
        existing: f64,
        new: f64,
    },
    #[error("open-shell input (MS2={0}) is not supported")]
    OpenShell(i64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegralError {
    #[error("cannot freeze {n_frozen} orbitals out of {n_spatial}")]
    TooManyFrozenOrbitals { n_frozen: usize, n_spatial: usize },
    #[error("cannot freeze {n_frozen} doubly occupied orbitals with only {n_electrons} electrons")]
    TooFewElectrons { n_frozen: usize, n_electrons: usize },
    #[error("active space needs an even electron count, got {0}")]
    OddActiveElectrons(usize),
    #[error("active window [{start}, {end}) does not fit {n_spatial} orbitals / {n_occupied} occupied")]
    WindowOutOfBounds {
        start: i64,
        end: i64,
        n_spatial: usize,
        n_occupied: usize,
    },
    #[error("inconsistent integral data: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralSet {
    n_spatial: usize,
    n_electrons: usize,
    h: Vec<f64>,
    g: Vec<f64>,
    e_constant: f64,
    orbsym: Vec<u8>,
    point_group_order: u8,
}

/// Smallest Abelian group order (1, 2, 4 or 8) covering the given labels.
fn group_order_for(orbsym: &[u8]) -> u8 {
    let max = orbsym.iter().copied().max().unwrap_or(1);
    match max {
        0..=1 => 1,
        2 => 2,
        3..=4 => 4,
        _ => 8,
    }
}

/// MOLPRO product of two Abelian irrep labels.
pub fn irrep_product(a: u8, b: u8) -> u8 {
    ((a - 1) ^ (b - 1)) + 1
}

impl IntegralSet {
    /// Builds an integral set from dense arrays (`h`: n², `g`: n⁴, row-major).
    ///
    /// Validates shapes, symmetry of `h`, eightfold symmetry of `g` and orbital labels.
    pub fn new(
        n_spatial: usize,
        n_electrons: usize,
        h: Vec<f64>,
        g: Vec<f64>,
        e_constant: f64,
        orbsym: Vec<u8>,
    ) -> Result<Self, IntegralError> {
        let n = n_spatial;
        if h.len() != n * n || g.len() != n * n * n * n {
            return Err(IntegralError::Invalid(format!(
                "array sizes h={} g={} do not match n_spatial={n}",
                h.len(),
                g.len()
            )));
        }
        if orbsym.len() != n {
            return Err(IntegralError::Invalid(format!(
                "orbsym has {} labels for {n} orbitals",
                orbsym.len()
            )));
        }
        if orbsym.iter().any(|&s| s == 0 || s > 8) {
            return Err(IntegralError::Invalid("orbsym labels must lie in 1..=8".into()));
        }
        let set = Self {
            n_spatial,
            n_electrons,
            h,
            g,
            e_constant,
            point_group_order: group_order_for(&orbsym),
            orbsym,
        };
        for p in 0..n {
            for q in 0..n {
                if (set.h(p, q) - set.h(q, p)).abs() > CONFLICT_TOLERANCE {
                    return Err(IntegralError::Invalid(format!("h[{p}][{q}] != h[{q}][{p}]")));
                }
                for r in 0..n {
                    for s in 0..n {
                        let v = set.g(p, q, r, s);
                        for w in [set.g(q, p, r, s), set.g(p, q, s, r), set.g(r, s, p, q)] {
                            if (v - w).abs() > CONFLICT_TOLERANCE {
                                return Err(IntegralError::Invalid(format!(
                                    "(pq|rs) symmetry broken at ({p}{q}|{r}{s})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(set)
    }

    pub fn n_spatial(&self) -> usize {
        self.n_spatial
    }

    pub fn n_spin_orbitals(&self) -> usize {
        2 * self.n_spatial
    }

    pub fn n_electrons(&self) -> usize {
        self.n_electrons
    }

    /// Number of doubly occupied orbitals in the closed-shell reference.
    pub fn n_occupied(&self) -> usize {
        self.n_electrons / 2
    }

    pub fn e_constant(&self) -> f64 {
        self.e_constant
    }

    pub fn orbsym(&self) -> &[u8] {
        &self.orbsym
    }

    pub fn point_group_order(&self) -> u8 {
        self.point_group_order
    }

    #[inline]
    pub fn h(&self, p: usize, q: usize) -> f64 {
        self.h[p * self.n_spatial + q]
    }

    /// `(pq|rs)` in chemists' notation.
    #[inline]
    pub fn g(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_spatial;
        self.g[((p * n + q) * n + r) * n + s]
    }

    /// Closed-shell Hartree–Fock energy of the lowest `n_electrons / 2` orbitals,
    /// including the constant.
    pub fn hf_energy(&self) -> f64 {
        let occ = self.n_occupied();
        let mut e = self.e_constant;
        for i in 0..occ {
            e += 2.0 * self.h(i, i);
            for j in 0..occ {
                e += 2.0 * self.g(i, i, j, j) - self.g(i, j, j, i);
            }
        }
        e
    }

    /// Irrep label of the product of the listed spatial orbitals.
    pub fn irrep_of(&self, orbitals: &[usize]) -> u8 {
        orbitals
            .iter()
            .fold(1, |acc, &p| irrep_product(acc, self.orbsym[p]))
    }

    /// Folds the lowest `n_frozen` doubly occupied orbitals into the one-body
    /// integrals and the constant.
    pub fn freeze_core(&self, n_frozen: usize) -> Result<Self, IntegralError> {
        if n_frozen == 0 {
            return Ok(self.clone());
        }
        if n_frozen >= self.n_spatial {
            return Err(IntegralError::TooManyFrozenOrbitals {
                n_frozen,
                n_spatial: self.n_spatial,
            });
        }
        if 2 * n_frozen > self.n_electrons {
            return Err(IntegralError::TooFewElectrons {
                n_frozen,
                n_electrons: self.n_electrons,
            });
        }
        let keep: Vec<usize> = (n_frozen..self.n_spatial).collect();
        Ok(self.fold(n_frozen, &keep))
    }

    /// Restricts to `n_active_spatial` orbitals holding `n_active_electrons`, starting
    /// at `n_occ − n_active_electrons/2`. Lower orbitals are folded, higher ones dropped.
    pub fn select_active_space(
        &self,
        n_active_electrons: usize,
        n_active_spatial: usize,
    ) -> Result<Self, IntegralError> {
        if n_active_electrons % 2 != 0 {
            return Err(IntegralError::OddActiveElectrons(n_active_electrons));
        }
        let n_occ = self.n_occupied() as i64;
        let start = n_occ - (n_active_electrons / 2) as i64;
        let end = start + n_active_spatial as i64;
        if start < 0
            || end > self.n_spatial as i64
            || n_active_electrons > 2 * n_active_spatial
            || n_active_spatial == 0
        {
            return Err(IntegralError::WindowOutOfBounds {
                start,
                end,
                n_spatial: self.n_spatial,
                n_occupied: self.n_occupied(),
            });
        }
        let start = start as usize;
        let keep: Vec<usize> = (start..end as usize).collect();
        Ok(self.fold(start, &keep))
    }

    /// Folds orbitals `0..n_core` as doubly occupied and keeps `keep` as the new basis.
    fn fold(&self, n_core: usize, keep: &[usize]) -> Self {
        let m = keep.len();
        let mut h = vec![0.0; m * m];
        for (a, &p) in keep.iter().enumerate() {
            for (b, &q) in keep.iter().enumerate() {
                let mut v = self.h(p, q);
                for i in 0..n_core {
                    v += 2.0 * self.g(p, q, i, i) - self.g(p, i, i, q);
                }
                h[a * m + b] = v;
            }
        }
        let mut e_core = 0.0;
        for i in 0..n_core {
            e_core += 2.0 * self.h(i, i);
            for j in 0..n_core {
                e_core += 2.0 * self.g(i, i, j, j) - self.g(i, j, j, i);
            }
        }
        let mut g = vec![0.0; m * m * m * m];
        for (a, &p) in keep.iter().enumerate() {
            for (b, &q) in keep.iter().enumerate() {
                for (c, &r) in keep.iter().enumerate() {
                    for (d, &s) in keep.iter().enumerate() {
                        g[((a * m + b) * m + c) * m + d] = self.g(p, q, r, s);
                    }
                }
            }
        }
        let orbsym: Vec<u8> = keep.iter().map(|&p| self.orbsym[p]).collect();
        Self {
            n_spatial: m,
            n_electrons: self.n_electrons - 2 * n_core,
            h,
            g,
            e_constant: self.e_constant + e_core,
            orbsym,
            point_group_order: self.point_group_order,
        }
    }

    /// FCIDUMP text with one record per unique nonzero integral.
    pub fn to_fcidump(&self) -> String {
        let n = self.n_spatial;
        let mut out = String::new();
        let orbsym: Vec<String> = self.orbsym.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(
            out,
            " &FCI NORB={n},NELEC={},MS2=0,\n  ORBSYM={},\n  ISYM=1,\n &END",
            self.n_electrons,
            orbsym.join(",")
        );
        for p in 0..n {
            for q in 0..=p {
                for r in 0..n {
                    for s in 0..=r {
                        if p * (p + 1) / 2 + q < r * (r + 1) / 2 + s {
                            continue;
                        }
                        let v = self.g(p, q, r, s);
                        if v != 0.0 {
                            let _ = writeln!(out, "{v:e} {} {} {} {}", p + 1, q + 1, r + 1, s + 1);
                        }
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..=p {
                let v = self.h(p, q);
                if v != 0.0 {
                    let _ = writeln!(out, "{v:e} {} {} 0 0", p + 1, q + 1);
                }
            }
        }
        let _ = writeln!(out, "{:e} 0 0 0 0", self.e_constant);
        out
    }

    pub fn parse_fcidump(text: &str) -> Result<Self, FcidumpError> {
        parse_fcidump(text)
    }
}

struct Header {
    norb: usize,
    nelec: usize,
    orbsym: Vec<u8>,
}

fn parse_header(header: &str) -> Result<Header, FcidumpError> {
    let cleaned = header.replace(',', " ");
    let mut entries: Vec<(String, Vec<String>)> = Vec::new();
    for token in cleaned.split_whitespace() {
        let upper = token.to_ascii_uppercase();
        if upper.starts_with('&') || upper.starts_with('$') || upper == "/" {
            continue;
        }
        if let Some((key, value)) = upper.split_once('=') {
            let mut values = Vec::new();
            if !value.is_empty() {
                values.push(value.to_string());
            }
            entries.push((key.to_string(), values));
        } else if let Some((_, values)) = entries.last_mut() {
            values.push(upper);
        } else {
            return Err(FcidumpError::MalformedHeader(format!("stray token {token:?}")));
        }
    }
    let find = |key: &'static str| entries.iter().find(|(k, _)| k == key).map(|(_, v)| v);
    let scalar = |key: &'static str| -> Result<Option<i64>, FcidumpError> {
        match find(key) {
            None => Ok(None),
            Some(v) if v.len() == 1 => v[0]
                .parse::<i64>()
                .map(Some)
                .map_err(|_| FcidumpError::MalformedHeader(format!("{key}={}", v[0]))),
            Some(v) => Err(FcidumpError::MalformedHeader(format!("{key} has {} values", v.len()))),
        }
    };
    let norb = scalar("NORB")?.ok_or(FcidumpError::MissingKey("NORB"))?;
    let nelec = scalar("NELEC")?.ok_or(FcidumpError::MissingKey("NELEC"))?;
    if norb <= 0 || nelec < 0 {
        return Err(FcidumpError::MalformedHeader(format!("NORB={norb}, NELEC={nelec}")));
    }
    let ms2 = scalar("MS2")?.unwrap_or(0);
    if ms2 != 0 {
        return Err(FcidumpError::OpenShell(ms2));
    }
    let norb = norb as usize;
    let orbsym = match find("ORBSYM") {
        None => vec![1; norb],
        Some(values) => {
            let labels = values
                .iter()
                .map(|v| v.parse::<u8>().ok().filter(|&s| (1..=8).contains(&s)))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| FcidumpError::MalformedHeader(format!("ORBSYM={values:?}")))?;
            if labels.len() != norb {
                return Err(FcidumpError::MalformedHeader(format!(
                    "ORBSYM has {} labels, NORB={norb}",
                    labels.len()
                )));
            }
            labels
        }
    };
    Ok(Header {
        norb,
        nelec: nelec as usize,
        orbsym,
    })
}

fn parse_value(token: &str) -> Option<f64> {
    token.replace(['D', 'd'], "e").parse().ok()
}

/// Parses FCIDUMP text (namelist header, then `value i j k l` records, 1-based).
pub fn parse_fcidump(text: &str) -> Result<IntegralSet, FcidumpError> {
    let mut header = String::new();
    let mut body_start = None;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        let upper = t.to_ascii_uppercase();
        if upper.starts_with("&END") || upper == "/" || upper.ends_with("&END") {
            header.push_str(&t[..t.len() - if upper == "/" { 1 } else { 4 }]);
            body_start = Some(i + 1);
            break;
        }
        header.push(' ');
        header.push_str(t);
    }
    let body_start =
        body_start.ok_or_else(|| FcidumpError::MalformedHeader("no &END terminator".into()))?;
    let Header {
        norb,
        nelec,
        orbsym,
    } = parse_header(&header)?;
    let n = norb;

    let mut h = vec![0.0; n * n];
    let mut h_set = vec![false; n * n];
    let mut g = vec![0.0; n * n * n * n];
    let mut g_set = vec![false; n * n * n * n];
    let mut e_constant = 0.0;
    let mut constant_set = false;

    for (offset, line) in text.lines().skip(body_start).enumerate() {
        let line_no = body_start + offset + 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let malformed = || FcidumpError::MalformedRecord {
            line: line_no,
            text: line.to_string(),
        };
        if tokens.len() != 5 {
            return Err(malformed());
        }
        let value = parse_value(tokens[0]).ok_or_else(malformed)?;
        let mut idx = [0i64; 4];
        for (slot, tok) in idx.iter_mut().zip(&tokens[1..]) {
            *slot = tok.parse().map_err(|_| malformed())?;
            if *slot < 0 || *slot > n as i64 {
                return Err(FcidumpError::IndexOutOfBounds {
                    line: line_no,
                    index: *slot,
                    norb: n,
                });
            }
        }
        let [i, j, k, l] = idx.map(|v| v as usize);
        let check = |existing: f64, set: bool| -> Result<(), FcidumpError> {
            if set && (existing - value).abs() > CONFLICT_TOLERANCE {
                return Err(FcidumpError::Conflict {
                    line: line_no,
                    indices: [i, j, k, l],
                    existing,
                    new: value,
                });
            }
            Ok(())
        };
        match (i, j, k, l) {
            (0, 0, 0, 0) => {
                check(e_constant, constant_set)?;
                e_constant = value;
                constant_set = true;
            }
            // orbital energies carry no Hamiltonian information
            (_, 0, 0, 0) => {}
            (i, j, 0, 0) if i > 0 && j > 0 => {
                let (p, q) = (i - 1, j - 1);
                check(h[p * n + q], h_set[p * n + q])?;
                for (a, b) in [(p, q), (q, p)] {
                    h[a * n + b] = value;
                    h_set[a * n + b] = true;
                }
            }
            (i, j, k, l) if i > 0 && j > 0 && k > 0 && l > 0 => {
                let (p, q, r, s) = (i - 1, j - 1, k - 1, l - 1);
                let at = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
                let first = at(p, q, r, s);
                check(g[first], g_set[first])?;
                for (a, b, c, d) in [
                    (p, q, r, s),
                    (q, p, r, s),
                    (p, q, s, r),
                    (q, p, s, r),
                    (r, s, p, q),
                    (s, r, p, q),
                    (r, s, q, p),
                    (s, r, q, p),
                ] {
                    g[at(a, b, c, d)] = value;
                    g_set[at(a, b, c, d)] = true;
                }
            }
            _ => return Err(malformed()),
        }
    }

    Ok(IntegralSet {
        n_spatial: n,
        n_electrons: nelec,
        h,
        g,
        e_constant,
        point_group_order: group_order_for(&orbsym),
        orbsym,
    })
}
