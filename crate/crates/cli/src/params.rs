//! Construction parameters shared by every build kind and verify suite.

use std::collections::BTreeMap;

use orthocell::crystal::{make_orthotopic_group, torus_group};
use orthocell::rational::{format_rational, int, parse_rational};
use orthocell::{AffineSignedIsometry, Orthotope, OrthotopicGroup, Point, Rational};

use crate::document::ComplexDocument;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GroupKind {
    /// Lattice translations only.
    Tor,
    /// Lattice translations plus the `--generator` isometries.
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// Redirect one table entry of the Lattès map to a wrong target class.
    TableEntry,
}

#[derive(Clone, Debug)]
pub struct Params {
    pub dim: usize,
    pub l: usize,
    pub lambda: usize,
    /// Half-sides for `k`, `cube` and `rec`; lattice periods for groups.
    pub sides: Option<Vec<Rational>>,
    pub group: GroupKind,
    pub generators: Vec<AffineSignedIsometry>,
    /// Side lengths of a fundamental domain `∏[0, b_i]` overriding the
    /// lattice box.
    pub domain: Option<Vec<Rational>>,
    pub seed: u64,
    pub radius: usize,
    pub samples: usize,
    pub level: usize,
    pub input: Option<ComplexDocument>,
    pub fault: Option<Fault>,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            dim: 2,
            l: 2,
            lambda: 2,
            sides: None,
            group: GroupKind::Tor,
            generators: Vec::new(),
            domain: None,
            seed: 0,
            radius: orthocell::crystal::DEFAULT_RADIUS,
            samples: 100,
            level: 0,
            input: None,
            fault: None,
        }
    }
}

fn join(values: &[Rational]) -> String {
    values.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

/// Parses `a1,a2,...` into positive rationals.
pub fn parse_sides(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',')
        .map(|t| {
            let r = parse_rational(t).map_err(|e| CliError::Usage(e.to_string()))?;
            if !r.is_positive() {
                return Err(CliError::Usage(format!("side {t:?} must be positive")));
            }
            Ok(r)
        })
        .collect()
}

/// Parses a generator written as the image of `(x1, ..., xn)`, optionally
/// followed by `@` and a translation: `-x2,x1@1/2,0` is
/// `(x1, x2) ↦ (-x2 + 1/2, x1)`.
pub fn parse_generator(s: &str) -> Result<AffineSignedIsometry, CliError> {
    let bad = |why: &str| CliError::Usage(format!("bad generator {s:?}: {why}"));
    let (linear, translation) = match s.split_once('@') {
        Some((l, t)) => (l, Some(t)),
        None => (s, None),
    };
    let images: Vec<&str> = linear.split(',').map(str::trim).collect();
    let n = images.len();
    let mut perm = vec![usize::MAX; n];
    let mut signs = vec![1i8; n];
    for (j, img) in images.iter().enumerate() {
        let (sign, var) = match img.strip_prefix('-') {
            Some(v) => (-1, v),
            None => (1, img.strip_prefix('+').unwrap_or(img)),
        };
        let i: usize = var
            .strip_prefix('x')
            .and_then(|k| k.parse().ok())
            .filter(|k| (1..=n).contains(k))
            .ok_or_else(|| bad("each image must be ±x<k> with 1 ≤ k ≤ n"))?;
        if perm[i - 1] != usize::MAX {
            return Err(bad("a variable appears twice"));
        }
        perm[i - 1] = j;
        signs[i - 1] = sign;
    }
    let t = match translation {
        Some(t) => {
            let coords = t
                .split(',')
                .map(|c| parse_rational(c).map_err(|e| CliError::Usage(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            if coords.len() != n {
                return Err(bad("translation length differs from the dimension"));
            }
            Point::new(coords)
        }
        None => Point::origin(n),
    };
    Ok(AffineSignedIsometry::new(perm, signs, t))
}

impl Params {
    fn sides_or_ones(&self) -> Result<Vec<Rational>, CliError> {
        match &self.sides {
            Some(s) if s.len() != self.dim => {
                Err(CliError::Usage(format!("--sides has {} entries but --dim is {}", s.len(), self.dim)))
            }
            Some(s) => Ok(s.clone()),
            None => Ok(vec![int(1); self.dim]),
        }
    }

    /// `∏[-a_i, a_i]` when sides are given.
    pub fn orthotope(&self) -> Result<Option<Orthotope>, CliError> {
        match &self.sides {
            None => Ok(None),
            Some(_) => Ok(Some(Orthotope::centered(&self.sides_or_ones()?)?)),
        }
    }

    pub fn group(&self) -> Result<OrthotopicGroup, CliError> {
        let sigma = self.sides_or_ones()?;
        let group = match self.group {
            GroupKind::Tor => {
                if !self.generators.is_empty() {
                    return Err(CliError::Usage("--generator requires --group custom".into()));
                }
                torus_group(&sigma)?
            }
            GroupKind::Custom => {
                if let Some(g) = self.generators.iter().find(|g| g.ambient_dim() != self.dim) {
                    return Err(CliError::Usage(format!("generator {g} does not act on dimension {}", self.dim)));
                }
                make_orthotopic_group(&sigma, self.generators.clone())?
            }
        };
        match &self.domain {
            None => Ok(group),
            Some(b) if b.len() != self.dim => {
                Err(CliError::Usage(format!("--domain has {} entries but --dim is {}", b.len(), self.dim)))
            }
            Some(b) => Ok(group.with_domain(Orthotope::corner(b)?)?),
        }
    }

    /// Parameters as recorded in document metadata and reports.
    pub fn metadata(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::from([
            ("dim".to_string(), self.dim.to_string()),
            ("l".to_string(), self.l.to_string()),
            ("lambda".to_string(), self.lambda.to_string()),
            ("seed".to_string(), self.seed.to_string()),
            ("radius".to_string(), self.radius.to_string()),
            ("samples".to_string(), self.samples.to_string()),
        ]);
        if let Some(s) = &self.sides {
            m.insert("sides".into(), join(s));
        }
        if self.group == GroupKind::Custom {
            m.insert("group".into(), "custom".into());
            let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
            m.insert("generators".into(), gens.join("; "));
        }
        if let Some(b) = &self.domain {
            m.insert("domain".into(), join(b));
        }
        if let Some(f) = self.fault {
            m.insert("inject_fault".into(), format!("{f:?}"));
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_syntax() {
        let g = parse_generator("-x2,x1@1/2,0").unwrap();
        assert_eq!(g.apply(&Point::from_ints(&[3, 5])), Point::new(vec![orthocell::rational::rat(-9, 2), int(3)]));
        assert_eq!(parse_generator("-x1").unwrap().apply(&Point::from_ints(&[2])), Point::from_ints(&[-2]));
        assert!(parse_generator("x1,x1").is_err());
        assert!(parse_generator("x3,x1").is_err());
        assert!(parse_generator("x1@1,2").is_err());
    }

    #[test]
    fn sides_must_be_positive() {
        assert_eq!(parse_sides("1,3/2").unwrap(), vec![int(1), orthocell::rational::rat(3, 2)]);
        assert!(parse_sides("1,0").is_err());
        assert!(parse_sides("x").is_err());
    }
}
