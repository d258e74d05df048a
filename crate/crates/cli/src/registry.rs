//! Named strategies: build kinds, verification suites and exporters are
//! registered as trait objects and looked up by the name given on the
//! command line.

use std::collections::BTreeMap;

use orthocell::complex::{verify_cell_decomposition, verify_refinement};
use orthocell::crystal::{orbit_intersection_check, verify_normal_fundamental_domain};
use orthocell::lattes::{
    build_lattes_cell_map, build_quotient_complexes, degree_count, verify_conjugation, verify_markov, verify_quotient,
};
use orthocell::rational::int;
use orthocell::symmetric::{
    build_k_orthotope, build_k_standard, build_k_subdivided, build_k_subdivided_orthotope, build_ko,
};
use orthocell::symmetry::{
    check_family_invariance, check_stabilizer_property, enumerate_cube_symmetries, enumerate_orthotope_symmetries,
};
use orthocell::{CellComplex, CheckOutcome, ConvexCell, Orthotope, SymmetryGroup, VerificationReport};

use crate::document::ComplexDocument;
use crate::error::CliError;
use crate::export::{Exporter, JsonExporter, OffExporter};
use crate::params::{Fault, Params};

pub trait Construction: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn build(&self, p: &Params) -> Result<ComplexDocument, CliError>;
}

pub trait VerificationSuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn run(&self, p: &Params) -> Result<Vec<VerificationReport>, CliError>;

    /// Whether the suite checks a user document given with `--input`.
    fn accepts_input(&self) -> bool {
        false
    }

    /// Whether the suite honours `--inject-fault`.
    fn accepts_fault(&self) -> bool {
        false
    }
}

#[derive(Default)]
pub struct Registry {
    constructions: BTreeMap<&'static str, Box<dyn Construction>>,
    suites: BTreeMap<&'static str, Box<dyn VerificationSuite>>,
    exporters: BTreeMap<&'static str, Box<dyn Exporter>>,
}

fn lookup<'a, T: ?Sized>(what: &str, map: &'a BTreeMap<&'static str, Box<T>>, name: &str) -> Result<&'a T, CliError> {
    map.get(name).map(|b| &**b).ok_or_else(|| {
        let known: Vec<&str> = map.keys().copied().collect();
        CliError::Usage(format!("unknown {what} {name:?}; expected one of: {}", known.join(", ")))
    })
}

impl Registry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Every built-in strategy.
    pub fn with_defaults() -> Self {
        let mut r = Self::empty();
        r.register_construction(Box::new(BuildKo));
        r.register_construction(Box::new(BuildK));
        r.register_construction(Box::new(BuildKSubdivided));
        r.register_construction(Box::new(BuildCube));
        r.register_construction(Box::new(BuildRec));
        r.register_construction(Box::new(BuildQuotient));
        r.register_suite(Box::new(CellDecompSuite));
        r.register_suite(Box::new(RefinementSuite));
        r.register_suite(Box::new(InvarianceSuite));
        r.register_suite(Box::new(StabilizerSuite));
        r.register_suite(Box::new(OrbitSuite));
        r.register_suite(Box::new(MarkovSuite));
        r.register_suite(Box::new(AllSuite));
        r.register_exporter(Box::new(OffExporter));
        r.register_exporter(Box::new(JsonExporter));
        r
    }

    /// Later registrations replace earlier ones with the same name.
    pub fn register_construction(&mut self, c: Box<dyn Construction>) {
        self.constructions.insert(c.name(), c);
    }

    pub fn register_suite(&mut self, s: Box<dyn VerificationSuite>) {
        self.suites.insert(s.name(), s);
    }

    pub fn register_exporter(&mut self, e: Box<dyn Exporter>) {
        self.exporters.insert(e.name(), e);
    }

    pub fn construction(&self, name: &str) -> Result<&dyn Construction, CliError> {
        lookup("build kind", &self.constructions, name)
    }

    pub fn suite(&self, name: &str) -> Result<&dyn VerificationSuite, CliError> {
        lookup("verify suite", &self.suites, name)
    }

    pub fn exporter(&self, name: &str) -> Result<&dyn Exporter, CliError> {
        lookup("export format", &self.exporters, name)
    }

    pub fn constructions(&self) -> impl Iterator<Item = &dyn Construction> {
        self.constructions.values().map(|b| &**b)
    }

    pub fn suites(&self) -> impl Iterator<Item = &dyn VerificationSuite> {
        self.suites.values().map(|b| &**b)
    }

    pub fn exporters(&self) -> impl Iterator<Item = &dyn Exporter> {
        self.exporters.values().map(|b| &**b)
    }
}

fn metadata(kind: &str, p: &Params) -> BTreeMap<String, String> {
    let mut m = p.metadata();
    m.insert("kind".into(), kind.into());
    m
}

fn k_complex(p: &Params) -> Result<CellComplex, CliError> {
    Ok(match p.orthotope()? {
        Some(q) => build_k_orthotope(&q)?,
        None => build_k_standard(p.dim)?,
    })
}

fn k_subdivided(p: &Params) -> Result<CellComplex, CliError> {
    Ok(match p.orthotope()? {
        Some(q) => build_k_subdivided_orthotope(&q, p.l)?,
        None => build_k_subdivided(p.dim, p.l)?,
    })
}

fn box_complex(p: &Params) -> Result<CellComplex, CliError> {
    let q = p.orthotope()?.unwrap_or_else(|| Orthotope::standard_cube(p.dim, p.dim));
    Ok(q.structure())
}

fn symmetries(p: &Params) -> Result<SymmetryGroup, CliError> {
    Ok(match p.orthotope()? {
        Some(q) => enumerate_orthotope_symmetries(&q),
        None => enumerate_cube_symmetries(p.dim),
    })
}

struct BuildKo;

impl Construction for BuildKo {
    fn name(&self) -> &'static str {
        "ko"
    }

    fn describe(&self) -> &'static str {
        "intersections of the fundamental half-space families in the cube"
    }

    fn build(&self, p: &Params) -> Result<ComplexDocument, CliError> {
        if p.sides.is_some() {
            return Err(CliError::Usage("ko is defined on the standard cube only; drop --sides".into()));
        }
        Ok(ComplexDocument::from_cell_list(p.dim, &build_ko(p.dim)?, metadata(self.name(), p)))
    }
}

struct BuildK;

impl Construction for BuildK {
    fn name(&self) -> &'static str {
        "k"
    }

    fn describe(&self) -> &'static str {
        "symmetric decomposition of the cube, or of ∏[-a_i, a_i] with --sides"
    }

    fn build(&self, p: &Params) -> Result<ComplexDocument, CliError> {
        Ok(ComplexDocument::from_complex(&k_complex(p)?, metadata(self.name(), p)))
    }
}

struct BuildKSubdivided;

impl Construction for BuildKSubdivided {
    fn name(&self) -> &'static str {
        "k-subdivided"
    }

    fn describe(&self) -> &'static str {
        "symmetric decomposition of each of the l^d subcubes (--l)"
    }

    fn build(&self, p: &Params) -> Result<ComplexDocument, CliError> {
        Ok(ComplexDocument::from_complex(&k_subdivided(p)?, metadata(self.name(), p)))
    }
}

struct BuildCube;

impl Construction for BuildCube {
    fn name(&self) -> &'static str {
        "cube"
    }

    fn describe(&self) -> &'static str {
        "face structure of a cube"
    }

    fn build(&self, p: &Params) -> Result<ComplexDocument, CliError> {
        if let Some(q) = p.orthotope()? {
            if !q.is_cube() {
                return Err(CliError::Usage("cube needs equal --sides; use rec for orthotopes".into()));
            }
        }
        Ok(ComplexDocument::from_complex(&box_complex(p)?, metadata(self.name(), p)))
    }
}

struct BuildRec;

impl Construction for BuildRec {
    fn name(&self) -> &'static str {
        "rec"
    }

    fn describe(&self) -> &'static str {
        "face structure of the orthotope ∏[-a_i, a_i]"
    }

    fn build(&self, p: &Params) -> Result<ComplexDocument, CliError> {
        Ok(ComplexDocument::from_complex(&box_complex(p)?, metadata(self.name(), p)))
    }
}

struct BuildQuotient;

impl Construction for BuildQuotient {
    fn name(&self) -> &'static str {
        "quotient"
    }

    fn describe(&self) -> &'static str {
        "cells over the fundamental domain with orbit keys (--level 0 or 1 for D0 or D1)"
    }

    fn build(&self, p: &Params) -> Result<ComplexDocument, CliError> {
        let group = p.group()?;
        let (d0, d1) = build_quotient_complexes(&group, p.lambda)?;
        let q = match p.level {
            0 => d0,
            1 => d1,
            other => return Err(CliError::Usage(format!("--level must be 0 or 1, got {other}"))),
        };
        let mut m = metadata(self.name(), p);
        m.insert("level".into(), p.level.to_string());
        m.insert("classes".into(), q.len().to_string());
        Ok(ComplexDocument::from_quotient(&q, m))
    }
}

struct CellDecompSuite;

impl VerificationSuite for CellDecompSuite {
    fn name(&self) -> &'static str {
        "cell-decomp"
    }

    fn describe(&self) -> &'static str {
        "K_d and K_{d,l} are cell decompositions (or the --input document is)"
    }

    fn accepts_input(&self) -> bool {
        true
    }

    fn run(&self, p: &Params) -> Result<Vec<VerificationReport>, CliError> {
        if let Some(doc) = &p.input {
            return Ok(vec![titled(verify_cell_decomposition(&doc.to_complex()?), "input document")]);
        }
        let mut out = vec![titled(verify_cell_decomposition(&k_complex(p)?), "K_d")];
        if p.l > 1 {
            out.push(titled(verify_cell_decomposition(&k_subdivided(p)?), "K_{d,l}"));
        }
        Ok(out)
    }
}

fn titled(mut r: VerificationReport, what: &str) -> VerificationReport {
    r.title = format!("{}: {what}", r.title);
    r
}

struct RefinementSuite;

impl VerificationSuite for RefinementSuite {
    fn name(&self) -> &'static str {
        "refinement"
    }

    fn describe(&self) -> &'static str {
        "K_{d,l} refines K_d and K_d refines the cube structure"
    }

    fn run(&self, p: &Params) -> Result<Vec<VerificationReport>, CliError> {
        let k = k_complex(p)?;
        Ok(vec![
            titled(verify_refinement(&k_subdivided(p)?, &k), "K_{d,l} over K_d"),
            titled(verify_refinement(&k, &box_complex(p)?), "K_d over the cube structure"),
        ])
    }
}

struct InvarianceSuite;

fn invariance_check(name: &str, cells: &[ConvexCell], g: &SymmetryGroup) -> CheckOutcome {
    CheckOutcome::from_results(
        format!("{name} is invariant under every symmetry"),
        g.elements().iter().map(|t| match check_family_invariance(t, cells) {
            Ok(true) => None,
            Ok(false) => Some(format!("{t} does not preserve {name}")),
            Err(e) => Some(format!("{t}: {e}")),
        }),
    )
}

impl VerificationSuite for InvarianceSuite {
    fn name(&self) -> &'static str {
        "invariance"
    }

    fn describe(&self) -> &'static str {
        "K°_d and K_{d,l} are invariant under the symmetries of the cube"
    }

    fn run(&self, p: &Params) -> Result<Vec<VerificationReport>, CliError> {
        let g = symmetries(p)?;
        let mut report = VerificationReport::new(format!("invariance under {} symmetries", g.order()));
        if p.sides.is_none() {
            report.push(invariance_check("K°_d", &build_ko(p.dim)?, &g));
        }
        report.push(invariance_check("K_{d,l}", k_subdivided(p)?.cells(), &g));
        Ok(vec![report])
    }
}

struct StabilizerSuite;

impl VerificationSuite for StabilizerSuite {
    fn name(&self) -> &'static str {
        "stabilizer"
    }

    fn describe(&self) -> &'static str {
        "a symmetry moving a point of a K_d cell into that cell fixes it (--samples, --seed)"
    }

    fn run(&self, p: &Params) -> Result<Vec<VerificationReport>, CliError> {
        let g = symmetries(p)?;
        let r = check_stabilizer_property(k_complex(p)?.cells(), &g, p.samples, p.seed);
        Ok(vec![titled(r, "K_d")])
    }
}

struct OrbitSuite;

impl VerificationSuite for OrbitSuite {
    fn name(&self) -> &'static str {
        "orbit"
    }

    fn describe(&self) -> &'static str {
        "Q is a normal fundamental domain and group images meet K_n(Q) cells only at fixed points"
    }

    fn run(&self, p: &Params) -> Result<Vec<VerificationReport>, CliError> {
        let group = p.group()?;
        let k = build_k_orthotope(group.domain())?;
        Ok(vec![
            verify_normal_fundamental_domain(&group, p.radius),
            orbit_intersection_check(&group, k.cells(), p.samples, p.seed),
        ])
    }
}

struct MarkovSuite;

impl VerificationSuite for MarkovSuite {
    fn name(&self) -> &'static str {
        "markov"
    }

    fn describe(&self) -> &'static str {
        "D1 = K_{n,λ}(Q)/Γ and D0 = K_n(Q)/Γ form a cellular Markov partition of x ↦ λx"
    }

    fn accepts_fault(&self) -> bool {
        true
    }

    fn run(&self, p: &Params) -> Result<Vec<VerificationReport>, CliError> {
        let group = p.group()?;
        let mut conj = VerificationReport::new("conjugation");
        let normalizes = verify_conjugation(&group, &int(p.lambda as i64))?;
        let mut c = CheckOutcome::new("x ↦ λx normalizes the group");
        c.record(normalizes, || format!("λ = {} does not normalize the point group", p.lambda));
        conj.push(c);
        if !normalizes {
            return Ok(vec![conj]);
        }

        let mut record = build_lattes_cell_map(&group, p.lambda)?;
        if p.fault == Some(Fault::TableEntry) {
            let k = record.d1.top_cells()[0];
            record.table[k].target = (record.table[k].target + 1) % record.d0.len();
        }
        let mut out = vec![
            conj,
            titled(verify_quotient(&group, &record.d0), "D0"),
            titled(verify_quotient(&group, &record.d1), "D1"),
            verify_markov(&record),
        ];

        let mut degree = VerificationReport::new("degree");
        let expected = p.lambda.pow(p.dim as u32);
        let mut d = CheckOutcome::new("every top class of D0 has λ^n top preimages");
        for (class, count) in degree_count(&record) {
            d.record(count == expected, || format!("class {class} has {count} preimages, expected {expected}"));
        }
        degree.push(d);
        out.push(degree);
        Ok(out)
    }
}

struct AllSuite;

impl VerificationSuite for AllSuite {
    fn name(&self) -> &'static str {
        "all"
    }

    fn describe(&self) -> &'static str {
        "every other suite in turn"
    }

    fn run(&self, p: &Params) -> Result<Vec<VerificationReport>, CliError> {
        let suites: [&dyn VerificationSuite; 6] =
            [&CellDecompSuite, &RefinementSuite, &InvarianceSuite, &StabilizerSuite, &OrbitSuite, &MarkovSuite];
        let mut out = Vec::new();
        for s in suites {
            out.extend(s.run(p)?);
        }
        Ok(out)
    }
}
