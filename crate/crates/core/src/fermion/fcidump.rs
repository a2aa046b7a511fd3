//! FCIDUMP reader and writer.
//!
//! The file carries spatial-orbital integrals for a closed-shell reference:
//! a `&FCI ... &END` namelist header (`NORB`, `NELEC`, optional `MS2`,
//! `ORBSYM`, `ISYM`) followed by `value i j k l` lines with 1-based indices.
//! Two-electron lines use chemist notation `(ij|kl)`; `k = l = 0` marks a
//! one-electron integral and an all-zero index line the core energy.

use thiserror::Error;

use super::{FermionError, FermionHamiltonian};
use crate::pauli::DROP_TOLERANCE;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FcidumpError {
    #[error("malformed header: {0}")]
    Header(String),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: orbital index {index} out of range 1..={norb}")]
    IndexOutOfRange { line: usize, index: usize, norb: usize },
    #[error(transparent)]
    Fermion(#[from] FermionError),
}

/// Real spatial-orbital integrals as stored in an FCIDUMP file.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialIntegrals {
    pub norb: usize,
    pub nelec: usize,
    pub ms2: i64,
    pub core_energy: f64,
    /// `h_pq`, row-major `norb x norb`.
    pub one_body: Vec<f64>,
    /// Chemist-notation `(pq|rs)`, row-major `norb^4`.
    pub two_body: Vec<f64>,
}

impl SpatialIntegrals {
    pub fn zero(norb: usize, nelec: usize) -> Self {
        Self {
            norb,
            nelec,
            ms2: 0,
            core_energy: 0.0,
            one_body: vec![0.0; norb * norb],
            two_body: vec![0.0; norb.pow(4)],
        }
    }

    fn idx4(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        let n = self.norb;
        ((p * n + q) * n + r) * n + s
    }

    pub fn eri(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.two_body[self.idx4(p, q, r, s)]
    }

    pub fn h1(&self, p: usize, q: usize) -> f64 {
        self.one_body[p * self.norb + q]
    }

    /// Sets `(pq|rs)` and its seven permutational partners.
    pub fn set_eri(&mut self, p: usize, q: usize, r: usize, s: usize, value: f64) {
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
            let i = self.idx4(a, b, c, d);
            self.two_body[i] = value;
        }
    }

    pub fn set_h1(&mut self, p: usize, q: usize, value: f64) {
        let n = self.norb;
        self.one_body[p * n + q] = value;
        self.one_body[q * n + p] = value;
    }

    pub fn parse(text: &str) -> Result<Self, FcidumpError> {
        let (header, body_start) = split_header(text)?;
        let norb = header_usize(&header, "NORB")?;
        let nelec = header_usize(&header, "NELEC")?;
        let ms2 = match header_value(&header, "MS2") {
            Some(v) => v.parse::<i64>().map_err(|_| FcidumpError::Header(format!("bad MS2 value {v:?}")))?,
            None => 0,
        };
        if norb == 0 {
            return Err(FcidumpError::Header("NORB must be positive".into()));
        }
        let mut ints = SpatialIntegrals::zero(norb, nelec);
        ints.ms2 = ms2;
        let mut saw_core = false;
        for (offset, raw) in text.lines().skip(body_start).enumerate() {
            let line = offset + body_start + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(FcidumpError::Line { line, message: format!("expected 5 fields, found {}", fields.len()) });
            }
            let value = parse_value(fields[0])
                .ok_or_else(|| FcidumpError::Line { line, message: format!("non-numeric value {:?}", fields[0]) })?;
            let mut idx = [0usize; 4];
            for (slot, f) in idx.iter_mut().zip(&fields[1..]) {
                *slot = f
                    .parse::<usize>()
                    .map_err(|_| FcidumpError::Line { line, message: format!("bad orbital index {f:?}") })?;
                if *slot > norb {
                    return Err(FcidumpError::IndexOutOfRange { line, index: *slot, norb });
                }
            }
            match idx {
                [0, 0, 0, 0] => {
                    ints.core_energy = value;
                    saw_core = true;
                }
                // orbital energies; not part of the Hamiltonian
                [_, 0, 0, 0] => {}
                [p, q, 0, 0] if p > 0 && q > 0 => ints.set_h1(p - 1, q - 1, value),
                [p, q, r, s] if p > 0 && q > 0 && r > 0 && s > 0 => {
                    if value.abs() >= DROP_TOLERANCE {
                        ints.set_eri(p - 1, q - 1, r - 1, s - 1, value);
                    }
                }
                _ => {
                    return Err(FcidumpError::Line { line, message: format!("unrecognized index pattern {idx:?}") })
                }
            }
        }
        if !saw_core {
            log::warn!("FCIDUMP has no core-energy line; using 0");
        }
        Ok(ints)
    }

    /// Serializes with 17 significant digits, listing each symmetry-unique
    /// non-zero integral once.
    pub fn to_fcidump(&self) -> String {
        let n = self.norb;
        let mut out = String::new();
        out.push_str(&format!(" &FCI NORB={},NELEC={},MS2={},\n", n, self.nelec, self.ms2));
        out.push_str(&format!("  ORBSYM={}\n", vec!["1"; n].join(",") + ","));
        out.push_str("  ISYM=1,\n &END\n");
        let pair = |a: usize, b: usize| a * (a + 1) / 2 + b;
        for p in 0..n {
            for q in 0..=p {
                for r in 0..n {
                    for s in 0..=r {
                        if pair(r, s) > pair(p, q) {
                            continue;
                        }
                        let v = self.eri(p, q, r, s);
                        if v != 0.0 {
                            out.push_str(&format!("{:.16e} {} {} {} {}\n", v, p + 1, q + 1, r + 1, s + 1));
                        }
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..=p {
                let v = self.h1(p, q);
                if v != 0.0 {
                    out.push_str(&format!("{:.16e} {} {} 0 0\n", v, p + 1, q + 1));
                }
            }
        }
        out.push_str(&format!("{:.16e} 0 0 0 0\n", self.core_energy));
        out
    }

    /// Expands to interleaved spin-orbitals and converts `(pq|rs)` to the
    /// physicist tensor `h_ijkl = (il|jk)` with spin conservation on each electron.
    pub fn to_fermion_hamiltonian(&self) -> Result<FermionHamiltonian, FcidumpError> {
        let m = 2 * self.norb;
        let mut one = vec![0.0; m * m];
        let mut two = vec![0.0; m.pow(4)];
        let spatial = |mode: usize| mode / 2;
        let spin = |mode: usize| mode % 2;
        for i in 0..m {
            for j in 0..m {
                if spin(i) == spin(j) {
                    one[i * m + j] = self.h1(spatial(i), spatial(j));
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        if spin(i) != spin(l) || spin(j) != spin(k) {
                            continue;
                        }
                        let v = self.eri(spatial(i), spatial(l), spatial(j), spatial(k));
                        if v.abs() >= DROP_TOLERANCE {
                            two[((i * m + j) * m + k) * m + l] = v;
                        }
                    }
                }
            }
        }
        Ok(FermionHamiltonian::new(m, self.core_energy, one, two)?.with_num_electrons(self.nelec))
    }
}

/// Parses FCIDUMP text straight into a spin-orbital [`FermionHamiltonian`].
pub fn parse_fcidump(text: &str) -> Result<FermionHamiltonian, FcidumpError> {
    SpatialIntegrals::parse(text)?.to_fermion_hamiltonian()
}

pub fn write_fcidump(integrals: &SpatialIntegrals) -> String {
    integrals.to_fcidump()
}

/// Returns the namelist body (between `&FCI` and the terminator) and the
/// index of the first line after the header.
fn split_header(text: &str) -> Result<(String, usize), FcidumpError> {
    let mut body = String::new();
    let mut started = false;
    for (i, line) in text.lines().enumerate() {
        let mut rest = line.trim();
        if !started {
            if rest.is_empty() {
                continue;
            }
            let upper = rest.to_ascii_uppercase();
            if !upper.starts_with("&FCI") {
                return Err(FcidumpError::Header(format!("expected `&FCI` on line {}", i + 1)));
            }
            rest = &rest[4..];
            started = true;
        }
        let upper = rest.to_ascii_uppercase();
        if let Some(pos) = upper.find("&END").or_else(|| upper.find('/')) {
            body.push_str(&rest[..pos]);
            return Ok((body, i + 1));
        }
        body.push_str(rest);
        body.push(',');
    }
    Err(FcidumpError::Header(if started { "missing `&END`".into() } else { "empty input".into() }))
}

fn header_value<'a>(header: &'a str, key: &str) -> Option<&'a str> {
    header.split(',').find_map(|item| {
        let (k, v) = item.split_once('=')?;
        k.trim().eq_ignore_ascii_case(key).then(|| v.trim())
    })
}

fn header_usize(header: &str, key: &str) -> Result<usize, FcidumpError> {
    let v = header_value(header, key).ok_or_else(|| FcidumpError::Header(format!("missing {key}")))?;
    v.parse::<usize>().map_err(|_| FcidumpError::Header(format!("bad {key} value {v:?}")))
}

fn parse_value(field: &str) -> Option<f64> {
    // Fortran writers may use D exponents
    let v = field.replace(['D', 'd'], "E").parse::<f64>().ok()?;
    v.is_finite().then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H2: &str = include_str!("../../../../fixtures/h2.fcidump");

    #[test]
    fn core_only_file() {
        let text = " &FCI NORB=2,NELEC=2,MS2=0,\n &END\n  1.5 0 0 0 0\n";
        let h = parse_fcidump(text).unwrap();
        assert_eq!(h.num_modes(), 4);
        assert_eq!(h.constant(), 1.5);
        assert!(h.one_body_tensor().iter().all(|v| *v == 0.0));
        assert!(h.two_body_tensor().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn missing_core_defaults_to_zero() {
        let text = "&FCI NORB=1,NELEC=1 /\n -0.5 1 1 0 0\n";
        let h = parse_fcidump(text).unwrap();
        assert_eq!(h.constant(), 0.0);
        assert_eq!(h.one_body(0, 0), -0.5);
        assert_eq!(h.one_body(1, 1), -0.5);
        assert_eq!(h.one_body(0, 1), 0.0);
    }

    #[test]
    fn h2_fixture_has_four_spin_orbitals() {
        let h = parse_fcidump(H2).unwrap();
        assert_eq!(h.num_modes(), 4);
        assert_eq!(h.num_electrons(), Some(2));
        // (11|22) is the alpha/beta Coulomb integral between the two spatial orbitals
        let ints = SpatialIntegrals::parse(H2).unwrap();
        assert_eq!(h.two_body(0, 3, 3, 0), ints.eri(0, 0, 1, 1));
        assert_eq!(h.two_body(0, 1, 1, 0), ints.eri(0, 0, 0, 0));
        // exchange-type entries vanish between opposite spins
        assert_eq!(h.two_body(0, 1, 0, 1), 0.0);
    }

    #[test]
    fn header_errors() {
        assert!(matches!(SpatialIntegrals::parse(""), Err(FcidumpError::Header(_))));
        assert!(matches!(SpatialIntegrals::parse("1.0 0 0 0 0"), Err(FcidumpError::Header(_))));
        assert!(matches!(SpatialIntegrals::parse("&FCI NORB=2,\n&END\n"), Err(FcidumpError::Header(_))));
        assert!(matches!(SpatialIntegrals::parse("&FCI NORB=x,NELEC=2\n&END\n"), Err(FcidumpError::Header(_))));
        assert!(matches!(SpatialIntegrals::parse("&FCI NORB=2,NELEC=2\n"), Err(FcidumpError::Header(_))));
    }

    #[test]
    fn body_errors_carry_line_numbers() {
        let head = "&FCI NORB=2,NELEC=2,\n&END\n";
        assert_eq!(
            SpatialIntegrals::parse(&format!("{head}0.1 3 1 1 1\n")),
            Err(FcidumpError::IndexOutOfRange { line: 3, index: 3, norb: 2 })
        );
        assert!(matches!(
            SpatialIntegrals::parse(&format!("{head}abc 1 1 1 1\n")),
            Err(FcidumpError::Line { line: 3, .. })
        ));
        assert!(matches!(
            SpatialIntegrals::parse(&format!("{head}\n0.1 1 1 1\n")),
            Err(FcidumpError::Line { line: 4, .. })
        ));
        assert!(matches!(
            SpatialIntegrals::parse(&format!("{head}0.1 1 0 1 0\n")),
            Err(FcidumpError::Line { .. })
        ));
    }

    #[test]
    fn fortran_exponents_and_orbital_energies() {
        let text = "&FCI NORB=1,NELEC=2,ORBSYM=1,ISYM=1,\n&END\n 0.5D+00 1 1 1 1\n -0.25 1 0 0 0\n 1.0 0 0 0 0\n";
        let ints = SpatialIntegrals::parse(text).unwrap();
        assert_eq!(ints.eri(0, 0, 0, 0), 0.5);
        assert_eq!(ints.h1(0, 0), 0.0);
        assert_eq!(ints.core_energy, 1.0);
    }

    #[test]
    fn eightfold_fill() {
        let mut ints = SpatialIntegrals::zero(3, 2);
        ints.set_eri(0, 1, 2, 1, 0.25);
        for (p, q, r, s) in [(1, 0, 2, 1), (0, 1, 1, 2), (2, 1, 0, 1), (1, 2, 1, 0)] {
            assert_eq!(ints.eri(p, q, r, s), 0.25);
        }
        assert_eq!(ints.eri(0, 2, 1, 1), 0.0);
    }

    #[test]
    fn write_then_parse_fixture() {
        let ints = SpatialIntegrals::parse(H2).unwrap();
        let again = SpatialIntegrals::parse(&ints.to_fcidump()).unwrap();
        assert_eq!(ints, again);
    }
}
