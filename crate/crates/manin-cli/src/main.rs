//! Command-line front end: construct, enumerate, classify, verify; emit
//! deterministic JSON or TSV reports.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical verification failed,
//! 2 usage or parse error.

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use manin_core::bd::{
    canonical_extension, chains, check_iv, check_v, enumerate_phi, group_a_phi, s_phi_compatible,
    witness_search, PhiExtension, PhiMap, WitnessSearchSpace,
};
use manin_core::doubles::{build_double, case3_double, q_form, real_double, DoubleVariant};
use manin_core::liealg::{build_algebra, WeylBasisAlgebra};
use manin_core::manin::{
    build_w_phi, build_w_phi_cap, build_w_sigma_phi_a, canonical_phi_cap, verify_manin,
    ManinTriple,
};
use manin_core::realform::{build_theta, real_form, RealFormData, SignCharacter};
use manin_core::rootsys::{
    build_root_system, DiagramAutomorphism, Family, RootSystemSpec,
};
use manin_core::scalar::Scalar;
use manin_core::subspace::{echelon_basis_tagged, FieldTag, Subspace};
use report::*;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::rc::Rc;

#[derive(Parser)]
#[command(name = "manin", version, about = "Exact constructions of Manin triples of simple Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Roots, Cartan matrix and Killing gram of a root system
    Roots {
        family: String,
        rank: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// All admissible maps φ with their maximal chains
    BdList {
        family: String,
        rank: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Complex Manin triples W(φ) in the split double
    ClassifyComplex {
        family: String,
        rank: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Real Manin triples for a real-form descriptor (su2, sl2R, sl3R or JSON)
    ClassifyReal {
        descriptor: String,
        /// Optional extension file: Φ basis (inner) or a φ-specific Cartan map (outer)
        #[arg(long)]
        extension: Option<PathBuf>,
        /// Maximum simple-reflection word length in the witness search
        #[arg(long)]
        search_depth: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify a serialized triple document
    Verify { file: PathBuf },
}

/// Print a line, tolerating a closed pipe.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Roots {
            family,
            rank,
            format,
        } => run_roots(&family, rank, format),
        Command::BdList {
            family,
            rank,
            format,
        } => run_bd_list(&family, rank, format),
        Command::ClassifyComplex {
            family,
            rank,
            format,
        } => run_classify_complex(&family, rank, format),
        Command::ClassifyReal {
            descriptor,
            extension,
            search_depth,
            format,
        } => run_classify_real(&descriptor, extension, search_depth, format),
        Command::Verify { file } => run_verify(&file),
    }
}

fn parse_spec(family: &str, rank: usize) -> Result<RootSystemSpec, String> {
    let fam = Family::parse(family).map_err(|e| e.to_string())?;
    RootSystemSpec::new(fam, rank).map_err(|e| e.to_string())
}

fn rational_str(r: &manin_core::rootsys::Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

// ---------------------------------------------------------------------------
// roots

#[derive(Serialize)]
struct RootsInput {
    family: String,
    rank: usize,
}

#[derive(Serialize)]
struct RootsResult {
    simple_roots: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    positive_count: usize,
    cartan: Vec<Vec<i64>>,
    killing_gram: Vec<Vec<String>>,
}

fn run_roots(family: &str, rank: usize, format: Format) -> Result<ExitCode, String> {
    let spec = parse_spec(family, rank)?;
    let rs = build_root_system(spec);
    let result = RootsResult {
        simple_roots: rs.simple_roots.iter().map(|r| r.coords.clone()).collect(),
        positive_roots: rs.positive_roots.iter().map(|r| r.coords.clone()).collect(),
        positive_count: rs.positive_roots.len(),
        cartan: rs.cartan.clone(),
        killing_gram: rs
            .killing_gram
            .iter()
            .map(|row| row.iter().map(rational_str).collect())
            .collect(),
    };
    match format {
        Format::Json => {
            let rep = Report {
                tool: ToolInfo::current(),
                command: "roots".into(),
                input: RootsInput {
                    family: family.to_uppercase(),
                    rank,
                },
                results: vec![result],
            };
            emit(&serde_json::to_string_pretty(&rep).unwrap());
        }
        Format::Tsv => {
            for (k, r) in result.simple_roots.iter().enumerate() {
                emit(&format!("simple\t{k}\t{}", join_i64(r)));
            }
            for (k, r) in result.positive_roots.iter().enumerate() {
                emit(&format!("positive\t{k}\t{}", join_i64(r)));
            }
            for (i, row) in result.cartan.iter().enumerate() {
                emit(&format!("cartan\t{i}\t{}", join_i64(row)));
            }
            for (i, row) in result.killing_gram.iter().enumerate() {
                emit(&format!("gram\t{i}\t{}", row.join("\t")));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn join_i64(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("\t")
}

// ---------------------------------------------------------------------------
// bd-list

#[derive(Serialize)]
struct BdEntry {
    phi: PhiDoc,
    chains: Vec<ChainDoc>,
}

fn run_bd_list(family: &str, rank: usize, format: Format) -> Result<ExitCode, String> {
    let spec = parse_spec(family, rank)?;
    let rs = build_root_system(spec);
    let results: Vec<BdEntry> = enumerate_phi(&rs)
        .iter()
        .map(|phi| BdEntry {
            phi: PhiDoc::of(phi),
            chains: chains(phi).iter().map(ChainDoc::of).collect(),
        })
        .collect();
    match format {
        Format::Json => {
            let rep = Report {
                tool: ToolInfo::current(),
                command: "bd-list".into(),
                input: RootsInput {
                    family: family.to_uppercase(),
                    rank,
                },
                results,
            };
            emit(&serde_json::to_string_pretty(&rep).unwrap());
        }
        Format::Tsv => {
            for (k, e) in results.iter().enumerate() {
                let map: Vec<String> = e.phi.map.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                let cs: Vec<String> = e
                    .chains
                    .iter()
                    .map(|c| {
                        c.roots
                            .iter()
                            .map(|r| r.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                emit(&format!("phi\t{k}\t{}\t{}", map.join(","), cs.join(";")));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// classify-complex

#[derive(Serialize)]
struct ComplexEntry {
    phi: PhiDoc,
    chains: Vec<ChainDoc>,
    extension: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    triple: Option<TripleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationDoc>,
}

fn triple_doc_complex(spec: RootSystemSpec, t: &ManinTriple) -> TripleDoc {
    TripleDoc {
        double_variant: t.double.variant.tag().into(),
        field: "C".into(),
        family: spec.family.to_string(),
        rank: spec.rank,
        sigma: None,
        g_basis: basis_doc(&t.g_sub),
        w_basis: basis_doc(&t.w_sub),
        form_scale: t.form.scale.to_canonical_string(),
    }
}

fn run_classify_complex(family: &str, rank: usize, format: Format) -> Result<ExitCode, String> {
    let spec = parse_spec(family, rank)?;
    let alg = Rc::new(build_algebra(Rc::new(build_root_system(spec))));
    let d = Rc::new(build_double(Rc::clone(&alg), DoubleVariant::SplitC));
    let mut all_pass = true;
    let mut results = Vec::new();
    for phi in enumerate_phi(&alg.root_system) {
        let chain_docs: Vec<ChainDoc> = chains(&phi).iter().map(ChainDoc::of).collect();
        match canonical_extension(&alg, &phi) {
            None => results.push(ComplexEntry {
                phi: PhiDoc::of(&phi),
                chains: chain_docs,
                extension: "extension required".into(),
                triple: None,
                verification: None,
            }),
            Some(ext) => {
                let w = build_w_phi(&ext, &d).map_err(|e| e.to_string())?;
                let triple = ManinTriple {
                    double: Rc::clone(&d),
                    form: q_form(&d, Scalar::one()).map_err(|e| e.to_string())?,
                    g_sub: d.canonical_g_sub(),
                    w_sub: w,
                };
                let rep = verify_manin(&triple);
                all_pass &= rep.pass();
                results.push(ComplexEntry {
                    phi: PhiDoc::of(&phi),
                    chains: chain_docs,
                    extension: "canonical".into(),
                    triple: Some(triple_doc_complex(spec, &triple)),
                    verification: Some(VerificationDoc::of(&rep)),
                });
            }
        }
    }
    emit_entries("classify-complex", family, rank, &results, format);
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn emit_entries<R: Serialize>(
    command: &str,
    family: &str,
    rank: usize,
    results: &[R],
    format: Format,
) {
    match format {
        Format::Json => {
            let rep = Report {
                tool: ToolInfo::current(),
                command: command.into(),
                input: RootsInput {
                    family: family.to_uppercase(),
                    rank,
                },
                results: results.iter().collect(),
            };
            emit(&serde_json::to_string_pretty(&rep).unwrap());
        }
        Format::Tsv => {
            for (k, e) in results.iter().enumerate() {
                let flat = serde_json::to_string(e).unwrap();
                emit(&format!("{command}\t{k}\t{flat}"));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// classify-real

#[derive(Serialize, Deserialize, Clone, Debug)]
struct Descriptor {
    family: String,
    rank: usize,
    epsilon: u8,
    /// Permutation of simple-root indices (0-based); identity for inner forms.
    s: Vec<usize>,
    chi: Vec<i8>,
}

fn parse_descriptor(text: &str) -> Result<Descriptor, String> {
    match text {
        "su2" => Ok(Descriptor {
            family: "A".into(),
            rank: 1,
            epsilon: 0,
            s: vec![0],
            chi: vec![1],
        }),
        "sl2R" => Ok(Descriptor {
            family: "A".into(),
            rank: 1,
            epsilon: 0,
            s: vec![0],
            chi: vec![-1],
        }),
        "sl3R" => Ok(Descriptor {
            family: "A".into(),
            rank: 2,
            epsilon: 1,
            s: vec![1, 0],
            chi: vec![1, 1],
        }),
        other => {
            let raw = if other.trim_start().starts_with('{') {
                other.to_string()
            } else {
                std::fs::read_to_string(other)
                    .map_err(|e| format!("descriptor {other:?}: {e}"))?
            };
            serde_json::from_str(&raw).map_err(|e| format!("descriptor parse: {e}"))
        }
    }
}

fn realize(desc: &Descriptor) -> Result<(Rc<WeylBasisAlgebra>, RealFormData), String> {
    let spec = parse_spec(&desc.family, desc.rank)?;
    let alg = Rc::new(build_algebra(Rc::new(build_root_system(spec))));
    if desc.s.len() != desc.rank || desc.chi.len() != desc.rank {
        return Err("descriptor s/chi length must equal the rank".into());
    }
    let s = DiagramAutomorphism {
        perm: desc.s.clone(),
    };
    if desc.epsilon == 0 && !s.is_identity() {
        return Err("inner forms (epsilon = 0) take the identity permutation".into());
    }
    let chi = SignCharacter::new(desc.chi.clone()).map_err(|e| e.to_string())?;
    let theta = build_theta(&alg, &s, desc.epsilon, &chi).map_err(|e| e.to_string())?;
    let rf = real_form(&alg, &theta).map_err(|e| e.to_string())?;
    Ok((alg, rf))
}

#[derive(Serialize)]
struct SignClassEntry {
    signs: Vec<i8>,
    witness: WitnessDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    triple: Option<TripleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w_dim: Option<usize>,
}

#[derive(Serialize)]
struct InnerResult {
    path: String,
    a_r_classes: Vec<SignClassEntry>,
    phi_source: String,
    triple: TripleDoc,
    verification: VerificationDoc,
}

#[derive(Serialize)]
struct OuterPhiEntry {
    phi: PhiDoc,
    chains: Vec<ChainDoc>,
    s_compatible: bool,
    extension: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    satisfies_v: Option<bool>,
    classes: Vec<SignClassEntry>,
    underdetermined: Vec<usize>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum RealEntry {
    Inner(InnerResult),
    Outer(OuterPhiEntry),
}

#[derive(Serialize, Deserialize)]
struct ExtensionFile {
    /// Inner path: basis of Φ in realified Cartan coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    phi_basis: Option<Vec<Vec<String>>>,
    /// Outer path: restrict to this φ with this Cartan map (columns over h̄₁ = h).
    #[serde(skip_serializing_if = "Option::is_none")]
    phi: Option<PhiDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cartan_map: Option<Vec<Vec<String>>>,
}

fn search_space(depth_flag: Option<usize>) -> WitnessSearchSpace {
    let depth = depth_flag.or_else(|| {
        std::env::var("MANIN_SEARCH_DEPTH")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    match depth {
        Some(d) => WitnessSearchSpace { max_word_len: d },
        None => WitnessSearchSpace::default(),
    }
}

fn triple_doc_real(desc: &Descriptor, t: &ManinTriple) -> TripleDoc {
    TripleDoc {
        double_variant: t.double.variant.tag().into(),
        field: "R".into(),
        family: desc.family.to_uppercase(),
        rank: desc.rank,
        sigma: Some(SigmaDoc {
            epsilon: desc.epsilon,
            s: desc.s.clone(),
            chi: desc.chi.clone(),
        }),
        g_basis: basis_doc(&t.g_sub),
        w_basis: basis_doc(&t.w_sub),
        form_scale: t.form.scale.to_canonical_string(),
    }
}

fn run_classify_real(
    descriptor: &str,
    extension: Option<PathBuf>,
    search_depth: Option<usize>,
    format: Format,
) -> Result<ExitCode, String> {
    let desc = parse_descriptor(descriptor)?;
    let (alg, rf) = realize(&desc)?;
    let space = search_space(search_depth);
    let ext_file: Option<ExtensionFile> = match &extension {
        None => None,
        Some(p) => {
            let raw = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            Some(serde_json::from_str(&raw).map_err(|e| format!("extension file: {e}"))?)
        }
    };

    let mut all_pass = true;
    let results: Vec<RealEntry> = if rf.is_inner() {
        vec![classify_inner(&desc, &alg, &rf, space, &ext_file, &mut all_pass)?]
    } else {
        classify_outer(&desc, &alg, &rf, space, &ext_file, &mut all_pass)?
    };

    match format {
        Format::Json => {
            let rep = Report {
                tool: ToolInfo::current(),
                command: "classify-real".into(),
                input: desc,
                results,
            };
            emit(&serde_json::to_string_pretty(&rep).unwrap());
        }
        Format::Tsv => {
            for (k, e) in results.iter().enumerate() {
                emit(&format!("class\t{k}\t{}", serde_json::to_string(e).unwrap()));
            }
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn classify_inner(
    desc: &Descriptor,
    alg: &Rc<WeylBasisAlgebra>,
    rf: &RealFormData,
    space: WitnessSearchSpace,
    ext_file: &Option<ExtensionFile>,
    all_pass: &mut bool,
) -> Result<RealEntry, String> {
    let n = alg.rank();
    let id = DiagramAutomorphism::identity(n);
    let group = group_a_phi(n, &PhiMap::empty(), &id).map_err(|e| e.to_string())?;
    let a_r_classes: Vec<SignClassEntry> = group
        .elements
        .iter()
        .map(|a| SignClassEntry {
            signs: a.signs.clone(),
            witness: WitnessDoc::of(&witness_search(rf, a, space)),
            triple: None,
            verification: None,
            w_dim: None,
        })
        .collect();

    let (phi_sub, phi_source) = match ext_file.as_ref().and_then(|f| f.phi_basis.as_ref()) {
        Some(rows) => {
            let vecs = parse_basis(rows)?;
            for v in &vecs {
                if v.len() != 2 * n {
                    return Err("Φ basis vectors live in realified Cartan coordinates".into());
                }
            }
            (
                echelon_basis_tagged(2 * n, vecs, FieldTag::RealRestricted),
                "supplied".to_string(),
            )
        }
        None => (canonical_phi_cap(alg), "canonical".to_string()),
    };
    let (triple, rep) = build_w_phi_cap(rf, &phi_sub).map_err(|e| e.to_string())?;
    *all_pass &= rep.pass();
    Ok(RealEntry::Inner(InnerResult {
        path: "inner".into(),
        a_r_classes,
        phi_source,
        triple: triple_doc_real(desc, &triple),
        verification: VerificationDoc::of(&rep),
    }))
}

fn classify_outer(
    desc: &Descriptor,
    alg: &Rc<WeylBasisAlgebra>,
    rf: &RealFormData,
    space: WitnessSearchSpace,
    ext_file: &Option<ExtensionFile>,
    all_pass: &mut bool,
) -> Result<Vec<RealEntry>, String> {
    let n = alg.rank();
    let s = rf.theta.s.clone();
    let mut out = Vec::new();
    let restrict = ext_file.as_ref().and_then(|f| f.phi.as_ref());
    for phi in enumerate_phi(&alg.root_system) {
        if let Some(sel) = restrict {
            if PhiDoc::of(&phi).map != sel.map {
                continue;
            }
        }
        let chain_docs: Vec<ChainDoc> = chains(&phi).iter().map(ChainDoc::of).collect();
        if !s_phi_compatible(&phi, &s) {
            out.push(RealEntry::Outer(OuterPhiEntry {
                phi: PhiDoc::of(&phi),
                chains: chain_docs,
                s_compatible: false,
                extension: "none".into(),
                satisfies_v: None,
                classes: Vec::new(),
                underdetermined: Vec::new(),
            }));
            continue;
        }
        let (ext, ext_kind) = match supplied_extension(alg, &phi, ext_file)? {
            Some(e) => (Some(e), "supplied".to_string()),
            None => (
                canonical_extension(alg, &phi),
                "canonical".to_string(),
            ),
        };
        let Some(ext) = ext else {
            out.push(RealEntry::Outer(OuterPhiEntry {
                phi: PhiDoc::of(&phi),
                chains: chain_docs,
                s_compatible: true,
                extension: "extension required".into(),
                satisfies_v: None,
                classes: Vec::new(),
                underdetermined: Vec::new(),
            }));
            continue;
        };
        if !check_iv(&ext) {
            out.push(RealEntry::Outer(OuterPhiEntry {
                phi: PhiDoc::of(&phi),
                chains: chain_docs,
                s_compatible: true,
                extension: format!("{ext_kind} (condition iv fails)"),
                satisfies_v: None,
                classes: Vec::new(),
                underdetermined: Vec::new(),
            }));
            continue;
        }
        let v = check_v(&ext, &rf.sigma).map_err(|e| e.to_string())?;
        if !v {
            out.push(RealEntry::Outer(OuterPhiEntry {
                phi: PhiDoc::of(&phi),
                chains: chain_docs,
                s_compatible: true,
                extension: ext_kind,
                satisfies_v: Some(false),
                classes: Vec::new(),
                underdetermined: Vec::new(),
            }));
            continue;
        }
        let group = group_a_phi(n, &phi, &s).map_err(|e| e.to_string())?;
        let mut classes = Vec::new();
        for a in &group.elements {
            let witness = witness_search(rf, a, space);
            let (triple, rep, _) = build_w_sigma_phi_a(&ext, a, rf).map_err(|e| e.to_string())?;
            *all_pass &= rep.pass();
            classes.push(SignClassEntry {
                signs: a.signs.clone(),
                witness: WitnessDoc::of(&witness),
                w_dim: Some(triple.w_sub.dim()),
                triple: Some(triple_doc_real(desc, &triple)),
                verification: Some(VerificationDoc::of(&rep)),
            });
        }
        out.push(RealEntry::Outer(OuterPhiEntry {
            phi: PhiDoc::of(&phi),
            chains: chain_docs,
            s_compatible: true,
            extension: ext_kind,
            satisfies_v: Some(true),
            classes,
            underdetermined: group.underdetermined,
        }));
    }
    Ok(out)
}

fn supplied_extension(
    alg: &Rc<WeylBasisAlgebra>,
    phi: &PhiMap,
    ext_file: &Option<ExtensionFile>,
) -> Result<Option<PhiExtension>, String> {
    let Some(f) = ext_file else { return Ok(None) };
    let (Some(sel), Some(cm)) = (&f.phi, &f.cartan_map) else {
        return Ok(None);
    };
    if PhiDoc::of(phi).map != sel.map {
        return Ok(None);
    }
    let n = alg.rank();
    let rows = parse_basis(cm)?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err("cartan_map must be rank × rank".into());
    }
    let m = manin_core::matrix::Matrix::from_rows(rows);
    let full = Subspace::full(n, FieldTag::Complex);
    PhiExtension::new(Rc::clone(alg), phi.clone(), full.clone(), full, m)
        .map(Some)
        .map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize)]
struct VerifyResult {
    verification: VerificationDoc,
}

fn run_verify(file: &PathBuf) -> Result<ExitCode, String> {
    let raw = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let doc: TripleDoc =
        serde_json::from_str(&raw).map_err(|e| format!("triple document: {e}"))?;
    let triple = rebuild_triple(&doc)?;
    let rep = verify_manin(&triple);
    let out = Report {
        tool: ToolInfo::current(),
        command: "verify".into(),
        input: doc,
        results: vec![VerifyResult {
            verification: VerificationDoc::of(&rep),
        }],
    };
    emit(&serde_json::to_string_pretty(&out).unwrap());
    Ok(if rep.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn rebuild_triple(doc: &TripleDoc) -> Result<ManinTriple, String> {
    let spec = parse_spec(&doc.family, doc.rank)?;
    let alg = Rc::new(build_algebra(Rc::new(build_root_system(spec))));
    let variant = DoubleVariant::from_tag(&doc.double_variant).map_err(|e| e.to_string())?;
    let scale = Scalar::parse(&doc.form_scale).map_err(|e| e.to_string())?;
    let expected_field = if variant.is_real() { "R" } else { "C" };
    if doc.field != expected_field {
        return Err(format!(
            "field {:?} is inconsistent with variant {}",
            doc.field, doc.double_variant
        ));
    }
    let double = match variant {
        DoubleVariant::NilpotentC | DoubleVariant::SplitC => {
            Rc::new(build_double(Rc::clone(&alg), variant))
        }
        DoubleVariant::RealCase3 => Rc::new(case3_double(Rc::clone(&alg))),
        DoubleVariant::RealCase1 | DoubleVariant::RealCase2 => {
            let sig = doc
                .sigma
                .as_ref()
                .ok_or("variants A1R/A2R need the sigma descriptor")?;
            let s = DiagramAutomorphism { perm: sig.s.clone() };
            let chi = SignCharacter::new(sig.chi.clone()).map_err(|e| e.to_string())?;
            let theta = build_theta(&alg, &s, sig.epsilon, &chi).map_err(|e| e.to_string())?;
            let rf = real_form(&alg, &theta).map_err(|e| e.to_string())?;
            Rc::new(real_double(&rf, variant))
        }
    };
    let tag = double.field;
    let g_vecs = parse_basis(&doc.g_basis)?;
    let w_vecs = parse_basis(&doc.w_basis)?;
    for v in g_vecs.iter().chain(&w_vecs) {
        if v.len() != double.dim {
            return Err(format!(
                "basis vector length {} ≠ double dimension {}",
                v.len(),
                double.dim
            ));
        }
    }
    let g_sub = echelon_basis_tagged(double.dim, g_vecs, tag);
    let w_sub = echelon_basis_tagged(double.dim, w_vecs, tag);
    let form = q_form(&double, scale).map_err(|e| e.to_string())?;
    Ok(ManinTriple {
        double,
        form,
        g_sub,
        w_sub,
    })
}
