//! One function per subcommand. Each returns a [`Report`]; `Err` means the
//! input could not be read or interpreted.

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

use discoloc_core::fincat::LawViolation;
use discoloc_core::ktheory::{k0_group, k0_presentation, K0Presentation, PointedCategory, TruncatedAbelian};
use discoloc_core::lifting::{is_finitely_well_complete, strong_monos};
use discoloc_core::model::{
    bijection_suite, colocalization_from_coreflector, colocalization_poset, colocalizations_via_op, discrete_structure,
    enumerate_localizations, fibrant_objects, fibrant_replacement_functor, homotopy_category,
    localization_from_reflector, maps_between_fibrants_are_fibrations, verify_model_axioms, AxiomFamily,
    LocalizationPoset, ModelStructure, Provenance,
};
use discoloc_core::monad::{
    essential_image, idempotency_failure, monad_from_reflector, monad_morphism_exists, reflector_from_monad,
    verify_monad, MonadLaw,
};
use discoloc_core::reflect::{enumerate_replete_reflective, find_coreflector, find_reflector, inverted_class};
use discoloc_core::ring::{localization_exists_verdict, HomError, HomSpec};
use discoloc_core::{
    is_finitely_bicomplete, limit_search, validate_category, FinCat, FullSubcat, MonadData, MorphismClass, RingHom,
    Shape, Validation,
};

use crate::input::{
    load_category, load_classes, load_monad, load_raw, load_ring, parse_json, parse_truncated, split_names, stem,
};
use crate::{Caps, Status};

pub struct Report {
    pub status: Status,
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
}

impl Report {
    fn new<T: Serialize>(status: Status, body: &T, lines: Vec<String>) -> Result<Self> {
        Ok(Report {
            status,
            text: lines.join("\n") + "\n",
            json: serde_json::to_value(body)?,
            dot: None,
        })
    }

    /// A hypothesis of the requested computation fails.
    fn refused(command: &str, subject: &str, reason: String) -> Result<Self> {
        #[derive(Serialize)]
        struct Refusal<'a> {
            subject: &'a str,
            verdict: &'static str,
            reason: &'a str,
        }
        let body = Refusal {
            subject,
            verdict: "fail",
            reason: &reason,
        };
        Report::new(
            Status::Negative,
            &body,
            vec![format!("{command} {subject}: FAIL"), format!("  {reason}")],
        )
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Negative
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn subcat(c: &FinCat, list: &str) -> Result<FullSubcat> {
    Ok(FullSubcat::from_names(c, &split_names(list))?)
}

#[derive(Serialize)]
struct MorphismRow {
    name: String,
    src: String,
    dst: String,
    iso: bool,
    mono: bool,
    epi: bool,
}

#[derive(Serialize)]
struct ValidateReport {
    category: String,
    valid: bool,
    violation: Option<LawViolation>,
    morphisms: Vec<MorphismRow>,
}

pub fn validate(path: &str, caps: &Caps) -> Result<Report> {
    let raw = load_raw(path, caps)?;
    let name = stem(path);
    let validation = validate_category(&raw).with_context(|| format!("{path} is not a composition table"))?;
    let (violation, morphisms) = match validation {
        Validation::Violation(v) => (Some(v), Vec::new()),
        Validation::Pass => {
            let c = FinCat::from_raw(&raw)?;
            let rows = c
                .morphisms()
                .map(|f| {
                    let p = c.morphism_predicates(f);
                    MorphismRow {
                        name: c.mor_name(f).to_string(),
                        src: c.obj_name(c.src(f)).to_string(),
                        dst: c.obj_name(c.dst(f)).to_string(),
                        iso: p.is_iso,
                        mono: p.is_mono,
                        epi: p.is_epi,
                    }
                })
                .collect();
            (None, rows)
        }
    };
    let valid = violation.is_none();
    let mut lines = vec![format!("validate {name}: {}", mark(valid))];
    match &violation {
        Some(v) => lines.push(format!("  {v}")),
        None => {
            lines.push(format!(
                "  {} objects, {} morphisms",
                raw.objects.len(),
                morphisms.len()
            ));
            for m in &morphisms {
                let flags: Vec<&str> = [(m.iso, "iso"), (m.mono, "mono"), (m.epi, "epi")]
                    .iter()
                    .filter_map(|&(b, s)| b.then_some(s))
                    .collect();
                lines.push(format!("  {}: {} -> {}  {}", m.name, m.src, m.dst, flags.join(" ")));
            }
        }
    }
    let body = ValidateReport {
        category: name,
        valid,
        violation,
        morphisms,
    };
    Report::new(status(valid), &body, lines)
}

#[derive(Serialize)]
struct LimitsReport {
    category: String,
    terminal: Option<String>,
    initial: Option<String>,
    bicomplete: bool,
    missing: Option<String>,
    thin: bool,
    well_complete: bool,
    co_well_complete: bool,
    strong_monos: Vec<String>,
    strong_epis: Vec<String>,
}

pub fn limits(path: &str, caps: &Caps) -> Result<Report> {
    let c = load_category(path, caps)?;
    let apex =
        |shape| -> Result<Option<String>> { Ok(limit_search(&c, shape)?.map(|l| c.obj_name(l.apex).to_string())) };
    let b = is_finitely_bicomplete(&c);
    let op = c.opposite();
    let body = LimitsReport {
        category: stem(path),
        terminal: apex(Shape::Terminal)?,
        initial: apex(Shape::Initial)?,
        bicomplete: b.bicomplete,
        missing: b.missing.map(|s| s.describe(&c)),
        thin: b.thin,
        well_complete: is_finitely_well_complete(&c).well_complete,
        co_well_complete: is_finitely_well_complete(&op).well_complete,
        strong_monos: strong_monos(&c).names(&c),
        strong_epis: strong_monos(&op).names(&c),
    };
    let ok = body.bicomplete && body.well_complete && body.co_well_complete;
    let none = || "none".to_string();
    let mut lines = vec![
        format!("limits {}: {}", body.category, mark(ok)),
        format!("  terminal: {}", body.terminal.clone().unwrap_or_else(none)),
        format!("  initial: {}", body.initial.clone().unwrap_or_else(none)),
        format!("  finitely bicomplete: {}", mark(body.bicomplete)),
    ];
    if let Some(m) = &body.missing {
        lines.push(format!("    missing {m}"));
    }
    lines.push(format!("  thin: {}", body.thin));
    lines.push(format!("  finitely well-complete: {}", mark(body.well_complete)));
    lines.push(format!("  finitely co-well-complete: {}", mark(body.co_well_complete)));
    lines.push(format!("  strong monos: {}", braces(&body.strong_monos)));
    lines.push(format!("  strong epis: {}", braces(&body.strong_epis)));
    Report::new(status(ok), &body, lines)
}

#[derive(Serialize)]
struct StructureRow {
    members: Vec<String>,
    cof: Vec<String>,
    we: Vec<String>,
    fib: Vec<String>,
    axioms: bool,
    counterexample: Option<String>,
}

fn members(m: &ModelStructure) -> Option<&FullSubcat> {
    match &m.provenance {
        Provenance::Localization { members } | Provenance::Colocalization { members } => Some(members),
        Provenance::Discrete | Provenance::Supplied => None,
    }
}

fn structure_row(c: &FinCat, m: &ModelStructure) -> StructureRow {
    let report = verify_model_axioms(m);
    StructureRow {
        members: members(m).map(|s| s.names(c)).unwrap_or_default(),
        cof: m.cof.names(c),
        we: m.we.names(c),
        fib: m.fib.names(c),
        axioms: report.passes(),
        counterexample: report.first_counterexample().map(|x| x.describe(c)),
    }
}

fn structure_lines(rows: &[StructureRow], lines: &mut Vec<String>) {
    for (i, r) in rows.iter().enumerate() {
        lines.push(format!("  [{i}] A = {}  axioms {}", braces(&r.members), mark(r.axioms)));
        lines.push(format!("      cof = {}", braces(&r.cof)));
        lines.push(format!("      we  = {}", braces(&r.we)));
        lines.push(format!("      fib = {}", braces(&r.fib)));
        if let Some(x) = &r.counterexample {
            lines.push(format!("      counterexample: {x}"));
        }
    }
}

fn edges(pairs: &[(usize, usize)]) -> String {
    if pairs.is_empty() {
        return "none".into();
    }
    pairs
        .iter()
        .map(|(i, j)| format!("{i} < {j}"))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Serialize)]
struct PosetReport {
    category: String,
    count: usize,
    structures: Vec<StructureRow>,
    /// Covering pairs `(i, j)` with `we_i ⊂ we_j`.
    hasse: Vec<(usize, usize)>,
    order_reversing: bool,
    injective: bool,
    dot: String,
}

fn poset_report(c: &FinCat, name: String, poset: &LocalizationPoset) -> PosetReport {
    PosetReport {
        count: poset.len(),
        structures: poset.structures.iter().map(|m| structure_row(c, m)).collect(),
        hasse: poset.hasse.clone(),
        order_reversing: poset.checks.order_reversing,
        injective: poset.checks.injective,
        dot: poset.to_dot(c, &name),
        category: name,
    }
}

pub fn enumerate(path: &str, caps: &Caps) -> Result<Report> {
    let c = load_category(path, caps)?;
    let name = stem(path);
    let poset = match enumerate_localizations(&c) {
        Ok(p) => p,
        Err(e) => return Report::refused("enumerate-localizations", &name, e.to_string()),
    };
    let body = poset_report(&c, name, &poset);
    let ok = body.order_reversing && body.injective && body.structures.iter().all(|r| r.axioms);
    let mut lines = vec![format!(
        "enumerate-localizations {}: {} structures",
        body.category, body.count
    )];
    structure_lines(&body.structures, &mut lines);
    lines.push(format!("  order by we inclusion (Hasse): {}", edges(&body.hasse)));
    lines.push(format!(
        "  reverses subcategory inclusion: {}",
        mark(body.order_reversing)
    ));
    lines.push(format!(
        "  distinct subcategories give distinct structures: {}",
        mark(body.injective)
    ));
    lines.push(String::new());
    lines.push(body.dot.trim_end().to_string());
    let dot = body.dot.clone();
    let mut report = Report::new(status(ok), &body, lines)?;
    report.dot = Some(dot);
    Ok(report)
}

pub struct ModelChoice<'a> {
    pub model: Option<&'a str>,
    pub subcat: Option<&'a str>,
    pub coreflective: bool,
}

#[derive(Serialize)]
struct FamilyRow {
    family: AxiomFamily,
    pass: bool,
    counterexample: Option<String>,
}

#[derive(Serialize)]
struct ModelReport {
    category: String,
    structure: String,
    cof: Vec<String>,
    we: Vec<String>,
    fib: Vec<String>,
    missing_limit: Option<String>,
    families: Vec<FamilyRow>,
    acyclic_fibrations_are_isomorphisms: Option<bool>,
    fibrant_maps_are_fibrations: Option<bool>,
    failure: Option<String>,
}

pub fn verify_model(path: &str, choice: ModelChoice<'_>, caps: &Caps) -> Result<Report> {
    let c = load_category(path, caps)?;
    let name = stem(path);
    let built = match (choice.model, choice.subcat) {
        (Some(file), _) => {
            let (cof, we, fib) = load_classes(file, &c)?;
            Ok(ModelStructure::supplied(&c, cof, we, fib))
        }
        (None, Some(list)) => {
            let a = subcat(&c, list)?;
            if choice.coreflective {
                find_coreflector(&c, &a)
                    .map_err(|e| e.to_string())
                    .and_then(|r| colocalization_from_coreflector(&c, &r).map_err(|e| e.to_string()))
            } else {
                find_reflector(&c, &a)
                    .map_err(|e| e.to_string())
                    .and_then(|r| localization_from_reflector(&c, &r).map_err(|e| e.to_string()))
            }
        }
        (None, None) => discrete_structure(&c).map_err(|e| e.to_string()),
    };
    let m = match built {
        Ok(m) => m,
        Err(reason) => return Report::refused("verify-model", &name, reason),
    };
    let structure = match &m.provenance {
        Provenance::Discrete => "discrete".to_string(),
        Provenance::Localization { members } => format!("localization at {}", braces(&members.names(&c))),
        Provenance::Colocalization { members } => format!("colocalization at {}", braces(&members.names(&c))),
        Provenance::Supplied => format!("classes from {}", stem(choice.model.unwrap_or_default())),
    };
    let report = verify_model_axioms(&m);
    let families = report
        .families
        .iter()
        .map(|r| FamilyRow {
            family: r.family,
            pass: r.counterexample.is_none(),
            counterexample: r.counterexample.as_ref().map(|x| x.describe(&c)),
        })
        .collect();
    let localization = matches!(m.provenance, Provenance::Discrete | Provenance::Localization { .. });
    let rigid = localization.then(|| m.acyclic_fibrations() == MorphismClass::isomorphisms(&c));
    let fibrant_maps = localization.then(|| maps_between_fibrants_are_fibrations(&m));
    let failure = report
        .first_failure()
        .map(|(family, x)| match family {
            Some(f) => format!("{f:?}: {}", x.describe(&c)),
            None => format!("not finitely bicomplete: {}", x.describe(&c)),
        })
        .or_else(|| (rigid == Some(false)).then(|| "acyclic fibrations differ from the isomorphisms".to_string()))
        .or_else(|| match fibrant_maps {
            Some(Err(f)) => Some(format!(
                "{} joins fibrant objects but is not a fibration",
                c.mor_name(f)
            )),
            _ => None,
        });
    let body = ModelReport {
        category: name,
        structure,
        cof: m.cof.names(&c),
        we: m.we.names(&c),
        fib: m.fib.names(&c),
        missing_limit: report.bicomplete.as_ref().map(|x| x.describe(&c)),
        families,
        acyclic_fibrations_are_isomorphisms: rigid,
        fibrant_maps_are_fibrations: fibrant_maps.map(|r| r.is_ok()),
        failure,
    };
    let ok = body.failure.is_none();
    let mut lines = vec![
        format!("verify-model {} ({}): {}", body.category, body.structure, mark(ok)),
        format!("  cof = {}", braces(&body.cof)),
        format!("  we  = {}", braces(&body.we)),
        format!("  fib = {}", braces(&body.fib)),
    ];
    if let Some(missing) = &body.missing_limit {
        lines.push(format!("  finitely bicomplete: FAIL ({missing})"));
    }
    for f in &body.families {
        lines.push(format!("  {:?}: {}", f.family, mark(f.pass)));
        if let Some(x) = &f.counterexample {
            lines.push(format!("    counterexample: {x}"));
        }
    }
    if let Some(b) = body.acyclic_fibrations_are_isomorphisms {
        lines.push(format!("  acyclic fibrations = isomorphisms: {}", mark(b)));
    }
    if let Some(b) = body.fibrant_maps_are_fibrations {
        lines.push(format!("  maps between fibrant objects are fibrations: {}", mark(b)));
    }
    Report::new(status(ok), &body, lines)
}

#[derive(Serialize)]
struct ReplacementRow {
    object: String,
    target: String,
    unit: String,
}

#[derive(Serialize)]
struct HomotopyReport {
    category: String,
    structure: String,
    fibrant: Vec<String>,
    replacements: Vec<ReplacementRow>,
    fillers_unique: bool,
    functorial: bool,
    adjunction_pairs_checked: usize,
    adjunction: bool,
    inverts_weak_equivalences: bool,
    homotopy_classes_singletons: bool,
    full_and_faithful: bool,
    essentially_surjective: bool,
    parallel_pairs_checked: usize,
    homotopy_category_morphisms: Vec<String>,
}

pub fn homotopy(path: &str, list: Option<&str>, caps: &Caps) -> Result<Report> {
    let c = load_category(path, caps)?;
    let name = stem(path);
    let built = match list {
        Some(list) => {
            let a = subcat(&c, list)?;
            find_reflector(&c, &a)
                .map_err(|e| e.to_string())
                .and_then(|r| localization_from_reflector(&c, &r).map_err(|e| e.to_string()))
        }
        None => discrete_structure(&c).map_err(|e| e.to_string()),
    };
    let m = match built {
        Ok(m) => m,
        Err(reason) => return Report::refused("homotopy-category", &name, reason),
    };
    let (replacement, view) = match fibrant_replacement_functor(&m).and_then(|p| Ok((p, homotopy_category(&m)?))) {
        Ok(pair) => pair,
        Err(e) => return Report::refused("homotopy-category", &name, e.to_string()),
    };
    let rc = &replacement.certificate;
    let ec = &view.certificate;
    let body = HomotopyReport {
        category: name,
        structure: list.map_or_else(|| "discrete".to_string(), |l| format!("localization at {{{l}}}")),
        fibrant: fibrant_objects(&m).names(&c),
        replacements: c
            .objects()
            .map(|x| {
                let r = replacement.replacements[x.0];
                ReplacementRow {
                    object: c.obj_name(x).to_string(),
                    target: c.obj_name(r.target).to_string(),
                    unit: c.mor_name(r.unit).to_string(),
                }
            })
            .collect(),
        fillers_unique: rc.non_unique_fillers.is_empty(),
        functorial: rc.functorial,
        adjunction_pairs_checked: rc.adjunction_pairs_checked,
        adjunction: rc.adjunction_failure.is_none(),
        inverts_weak_equivalences: ec.inverts_weak_equivalences,
        homotopy_classes_singletons: ec.homotopy_classes_singletons,
        full_and_faithful: ec.full_and_faithful,
        essentially_surjective: ec.essentially_surjective,
        parallel_pairs_checked: ec.parallel_pairs_checked,
        homotopy_category_morphisms: view
            .category
            .morphisms()
            .map(|f| view.category.mor_name(f).to_string())
            .collect(),
    };
    let ok = rc.holds() && ec.holds();
    let mut lines = vec![
        format!("homotopy-category {} ({}): {}", body.category, body.structure, mark(ok)),
        format!("  fibrant objects: {}", braces(&body.fibrant)),
    ];
    for r in &body.replacements {
        lines.push(format!("  P({}) = {} via {}", r.object, r.target, r.unit));
    }
    lines.push(format!(
        "  fillers unique ({} diagrams): {}",
        rc.diagrams_checked,
        mark(body.fillers_unique)
    ));
    lines.push(format!("  P is a functor: {}", mark(body.functorial)));
    lines.push(format!(
        "  P left adjoint to the inclusion ({} pairs): {}",
        body.adjunction_pairs_checked,
        mark(body.adjunction)
    ));
    lines.push(format!(
        "  P inverts weak equivalences: {}",
        mark(body.inverts_weak_equivalences)
    ));
    lines.push(format!(
        "  homotopy classes are singletons ({} parallel pairs): {}",
        body.parallel_pairs_checked,
        mark(body.homotopy_classes_singletons)
    ));
    lines.push(format!("  fully faithful: {}", mark(body.full_and_faithful)));
    lines.push(format!(
        "  essentially surjective: {}",
        mark(body.essentially_surjective)
    ));
    lines.push(format!("  Ho morphisms: {}", braces(&body.homotopy_category_morphisms)));
    Report::new(status(ok), &body, lines)
}

fn describe_law(c: &FinCat, law: &MonadLaw) -> String {
    match law {
        MonadLaw::Associativity(x) => format!("associativity μ∘Tμ = μ∘μT fails at {}", c.obj_name(*x)),
        MonadLaw::LeftUnit(x) => format!("unit law μ∘Tη = id fails at {}", c.obj_name(*x)),
        MonadLaw::RightUnit(x) => format!("unit law μ∘ηT = id fails at {}", c.obj_name(*x)),
        other => other.to_string(),
    }
}

fn on_objects(c: &FinCat, m: &MonadData) -> Vec<String> {
    c.objects()
        .map(|x| format!("{} ↦ {}", c.obj_name(x), c.obj_name(m.functor.on_obj(x))))
        .collect()
}

#[derive(Serialize)]
struct MonadRow {
    members: Vec<String>,
    on_objects: Vec<String>,
    unit: Vec<String>,
    laws: bool,
    idempotent: bool,
    essential_image: Vec<String>,
}

#[derive(Serialize)]
struct MonadsReport {
    category: String,
    monads: Vec<MonadRow>,
    /// `(i, j)` when a monad morphism from monad `i` to monad `j` exists.
    morphisms: Vec<(usize, usize)>,
    order_matches: bool,
}

#[derive(Serialize)]
struct MonadCheck {
    category: String,
    monad: String,
    on_objects: Vec<String>,
    law_violation: Option<String>,
    idempotent: Option<bool>,
    idempotency_failure: Option<String>,
    essential_image: Option<Vec<String>>,
    reflector: Option<String>,
}

pub fn monads(path: &str, monad: Option<&str>, caps: &Caps) -> Result<Report> {
    let c = load_category(path, caps)?;
    match monad {
        Some(file) => check_monad(&c, stem(path), file),
        None => list_monads(&c, stem(path)),
    }
}

fn check_monad(c: &FinCat, name: String, file: &str) -> Result<Report> {
    let m = load_monad(file, c)?;
    let law = verify_monad(c, &m)?;
    let mut body = MonadCheck {
        category: name,
        monad: stem(file),
        on_objects: on_objects(c, &m),
        law_violation: law.as_ref().map(|l| describe_law(c, l)),
        idempotent: None,
        idempotency_failure: None,
        essential_image: None,
        reflector: None,
    };
    if law.is_none() {
        let failure = idempotency_failure(c, &m);
        body.idempotent = Some(failure.is_none());
        body.idempotency_failure = failure.map(|x| c.obj_name(x).to_string());
        if failure.is_none() {
            body.essential_image = Some(essential_image(c, &m).names(c));
            body.reflector = Some(match reflector_from_monad(c, &m) {
                Ok(r) => format!("reflector onto {} recovers the monad", braces(&r.subcat.names(c))),
                Err(e) => format!("FAIL: {e}"),
            });
        }
    }
    let ok = body.law_violation.is_none()
        && body.idempotent == Some(true)
        && body.reflector.as_deref().is_some_and(|r| !r.starts_with("FAIL"));
    let mut lines = vec![
        format!("monads {} --monad {}: {}", body.category, body.monad, mark(ok)),
        format!("  T on objects: {}", body.on_objects.join(", ")),
        format!("  monad laws: {}", body.law_violation.as_deref().unwrap_or("pass")),
    ];
    if let Some(idem) = body.idempotent {
        let at = body
            .idempotency_failure
            .as_ref()
            .map_or(String::new(), |x| format!(" (fails at {x})"));
        lines.push(format!("  idempotent: {}{at}", mark(idem)));
    }
    if let Some(img) = &body.essential_image {
        lines.push(format!("  essential image: {}", braces(img)));
    }
    if let Some(r) = &body.reflector {
        lines.push(format!("  {r}"));
    }
    Report::new(status(ok), &body, lines)
}

fn list_monads(c: &FinCat, name: String) -> Result<Report> {
    let reflectors = enumerate_replete_reflective(c);
    let data: Vec<MonadData> = reflectors.iter().map(|r| monad_from_reflector(c, r)).collect();
    let rows: Vec<MonadRow> = reflectors
        .iter()
        .zip(&data)
        .map(|(r, m)| MonadRow {
            members: r.subcat.names(c),
            on_objects: on_objects(c, m),
            unit: m.unit.components.iter().map(|&f| c.mor_name(f).to_string()).collect(),
            laws: verify_monad(c, m).ok().flatten().is_none(),
            idempotent: idempotency_failure(c, m).is_none(),
            essential_image: essential_image(c, m).names(c),
        })
        .collect();
    let n = data.len();
    let mut morphisms = Vec::new();
    let mut order_matches = true;
    for i in 0..n {
        for j in 0..n {
            let exists = monad_morphism_exists(c, &data[i], &data[j]).is_some();
            if exists && i != j {
                morphisms.push((i, j));
            }
            order_matches &= exists == reflectors[j].subcat.is_subset(&reflectors[i].subcat);
        }
    }
    let body = MonadsReport {
        category: name,
        monads: rows,
        morphisms,
        order_matches,
    };
    let ok = body.order_matches
        && body
            .monads
            .iter()
            .all(|r| r.laws && r.idempotent && r.essential_image == r.members);
    let mut lines = vec![format!(
        "monads {}: {} idempotent monads from reflective subcategories",
        body.category, n
    )];
    for (i, r) in body.monads.iter().enumerate() {
        lines.push(format!(
            "  [{i}] A = {}  laws {}  idempotent {}",
            braces(&r.members),
            mark(r.laws),
            mark(r.idempotent)
        ));
        lines.push(format!("      T: {}", r.on_objects.join(", ")));
        lines.push(format!("      η: {}", r.unit.join(", ")));
    }
    let arrows: Vec<String> = body.morphisms.iter().map(|(i, j)| format!("{i} → {j}")).collect();
    lines.push(format!(
        "  monad morphisms: {}",
        if arrows.is_empty() {
            "none".to_string()
        } else {
            arrows.join(", ")
        }
    ));
    lines.push(format!(
        "  A ⊆ A' exactly when T_A' → T_A: {}",
        mark(body.order_matches)
    ));
    Report::new(status(ok), &body, lines)
}

pub fn bijections(path: &str, caps: &Caps) -> Result<Report> {
    let c = load_category(path, caps)?;
    let name = stem(path);
    let r = match bijection_suite(&c) {
        Ok(r) => r,
        Err(e) => return Report::refused("bijections", &name, e.to_string()),
    };
    let mut lines = vec![
        format!("bijections {name}: {}", mark(r.holds())),
        format!("  replete reflective subcategories: {}", r.reflectors),
        format!("  Refl → Loc → Refl: {}", mark(r.refl_loc_refl)),
        format!("  Loc → Refl → Loc: {}", mark(r.loc_refl_loc)),
        format!("  Refl → IdemMonads → Refl: {}", mark(r.refl_monad_refl)),
        format!("  model axioms: {}", mark(r.axioms)),
        format!("  induced monads idempotent: {}", mark(r.monads_idempotent)),
        format!(
            "  Refl → Loc order-reversing ({} pairs): {}",
            r.pairs_checked,
            mark(r.loc_order_reversing)
        ),
        format!(
            "  Refl^op → IdemMonads order-preserving: {}",
            mark(r.monad_order_matches)
        ),
    ];
    lines.extend(r.failures.iter().map(|f| format!("  failure: {f}")));
    let mut json = serde_json::to_value(&r)?;
    json["category"] = Value::String(name);
    Ok(Report {
        status: status(r.holds()),
        text: lines.join("\n") + "\n",
        json,
        dot: None,
    })
}

#[derive(Serialize)]
struct ColocalizationReport {
    #[serde(flatten)]
    poset: PosetReport,
    direct_count: usize,
    classes_agree: bool,
    order_agrees: bool,
}

pub fn colocalizations(path: &str, caps: &Caps) -> Result<Report> {
    let c = load_category(path, caps)?;
    let name = stem(path);
    let (via_op, direct) = match colocalizations_via_op(&c).and_then(|v| Ok((v, colocalization_poset(&c)?))) {
        Ok(pair) => pair,
        Err(e) => return Report::refused("colocalizations", &name, e.to_string()),
    };
    let classes_agree = via_op.len() == direct.len()
        && via_op
            .structures
            .iter()
            .zip(&direct.structures)
            .all(|(a, b)| a.same_classes(b) && a.provenance == b.provenance);
    let body = ColocalizationReport {
        direct_count: direct.len(),
        classes_agree,
        order_agrees: via_op.order == direct.order && via_op.hasse == direct.hasse,
        poset: poset_report(&c, name, &via_op),
    };
    let p = &body.poset;
    let ok = body.classes_agree
        && body.order_agrees
        && p.order_reversing
        && p.injective
        && p.structures.iter().all(|r| r.axioms);
    let mut lines = vec![format!("colocalizations {}: {} structures", p.category, p.count)];
    structure_lines(&p.structures, &mut lines);
    lines.push(format!("  order by we inclusion (Hasse): {}", edges(&p.hasse)));
    lines.push(format!("  reverses subcategory inclusion: {}", mark(p.order_reversing)));
    lines.push(format!(
        "  via C^op agrees with direct coreflective enumeration ({} structures): {}",
        body.direct_count,
        mark(body.classes_agree && body.order_agrees)
    ));
    lines.push(String::new());
    lines.push(p.dot.trim_end().to_string());
    let dot = p.dot.clone();
    let mut report = Report::new(status(ok), &body, lines)?;
    report.dot = Some(dot);
    Ok(report)
}

#[derive(Serialize)]
struct RingReport {
    ring: String,
    algebra: String,
    ring_size: usize,
    algebra_size: usize,
    map: Vec<String>,
    tensor_order: Option<String>,
    algebra_order: usize,
    iso: bool,
    localization_exists: bool,
    conclusion: String,
}

pub fn ring_check(ring: &str, algebra: &str, map: Option<&str>, caps: &Caps) -> Result<Report> {
    let r = load_ring(ring, caps)?
        .build(caps.max_ring)
        .with_context(|| format!("ring in {ring}"))?;
    let s = load_ring(algebra, caps)?
        .build(caps.max_ring)
        .with_context(|| format!("ring in {algebra}"))?;
    let phi = match map {
        Some(file) => RingHom::from_spec(&parse_json::<HomSpec>(file)?, &r, &s),
        None => RingHom::from_integers(&r, &s),
    };
    let title = format!("{} → {}", stem(ring), stem(algebra));
    let phi = match phi {
        Ok(phi) => phi,
        Err(e @ HomError::NotHomomorphism { .. }) => return Report::refused("ring-check", &title, e.to_string()),
        Err(e) => return Err(e).context("ring map"),
    };
    let verdict = localization_exists_verdict(&r, &s, &phi);
    let body = RingReport {
        ring: stem(ring),
        algebra: stem(algebra),
        ring_size: r.size(),
        algebra_size: s.size(),
        map: (0..r.size())
            .map(|a| format!("{} ↦ {}", r.label(a), s.label(phi.apply(a))))
            .collect(),
        tensor_order: verdict.multiplication.tensor_order.as_ref().map(ToString::to_string),
        algebra_order: verdict.multiplication.algebra_order,
        iso: verdict.multiplication.iso,
        localization_exists: verdict.exists,
        conclusion: verdict.conclusion.clone(),
    };
    let lines = vec![
        format!("ring-check {title}: {}", mark(body.localization_exists)),
        format!("  φ: {}", body.map.join(", ")),
        format!(
            "  |S ⊗_R S| = {}, |S| = {}",
            body.tensor_order.as_deref().unwrap_or("infinite"),
            body.algebra_order
        ),
        format!("  {}", body.conclusion),
    ];
    Report::new(status(body.localization_exists), &body, lines)
}

pub enum K0Source<'a> {
    Category { path: &'a str, subcat: Option<&'a str> },
    Truncated(&'a str),
}

#[derive(Serialize)]
struct K0Report {
    source: String,
    generators: Vec<String>,
    relations: usize,
    cofiber_rows: usize,
    weak_equivalence_rows: usize,
    morphisms_considered: usize,
    generators_with_unit_row: usize,
    invariant_factors: Vec<String>,
    trivial: bool,
    smith_verified: bool,
    note: Option<String>,
}

pub fn k0(source: K0Source<'_>, caps: &Caps) -> Result<Report> {
    let (title, presentation, note) = match source {
        K0Source::Category { path, subcat: list } => {
            let c = load_category(path, caps)?;
            let title = stem(path);
            let we = match list {
                Some(list) => match find_reflector(&c, &subcat(&c, list)?) {
                    Ok(r) => inverted_class(&c, &r),
                    Err(e) => return Report::refused("k0", &title, e.to_string()),
                },
                None => MorphismClass::isomorphisms(&c),
            };
            let pointed = match PointedCategory::new(&c, we) {
                Ok(p) => p,
                Err(e) => return Report::refused("k0", &title, e.to_string()),
            };
            if let Err(e) = pointed.try_relations() {
                return Report::refused("k0", &title, e.to_string());
            }
            (title, k0_presentation(&pointed), None)
        }
        K0Source::Truncated(arg) => {
            let spec = parse_truncated(arg)?;
            let t = TruncatedAbelian::build(spec.p, spec.bound, spec.we)?;
            if t.objects.len() > caps.max_objects {
                anyhow::bail!(
                    "{} isomorphism classes exceed --max-objects {}",
                    t.objects.len(),
                    caps.max_objects
                );
            }
            let title = format!("p={},bound={},we={:?}", spec.p, spec.bound, spec.we).to_lowercase();
            let note = "abelian p-groups of order ≤ p^bound are not closed under products; \
                        cofibers stay within the bound, which is all K₀ needs"
                .to_string();
            (title, k0_presentation(&t), Some(note))
        }
    };
    k0_report(title, &presentation, note)
}

fn k0_report(source: String, p: &K0Presentation, note: Option<String>) -> Result<Report> {
    let group = k0_group(p);
    let body = K0Report {
        source,
        generators: p.generators.clone(),
        relations: p.relations.len(),
        cofiber_rows: p.cofiber_rows(),
        weak_equivalence_rows: p.weak_equivalence_rows(),
        morphisms_considered: p.morphisms_considered,
        generators_with_unit_row: p.generators_with_unit_row().len(),
        invariant_factors: group.invariant_factors.iter().map(ToString::to_string).collect(),
        trivial: group.is_trivial(),
        smith_verified: group.smith_verified,
        note,
    };
    let ok = body.trivial && body.smith_verified;
    let group_text = if body.trivial {
        "0".to_string()
    } else {
        body.invariant_factors
            .iter()
            .map(|d| if d == "0" { "Z".to_string() } else { format!("Z/{d}") })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    };
    let mut lines = vec![
        format!("k0 {}: {}", body.source, mark(ok)),
        format!(
            "  generators ({}): {}",
            body.generators.len(),
            body.generators.join(", ")
        ),
        format!(
            "  relations: {} ({} cofiber sequences, {} weak equivalences, from {} morphisms)",
            body.relations, body.cofiber_rows, body.weak_equivalence_rows, body.morphisms_considered
        ),
        format!("  generators killed by a single row: {}", body.generators_with_unit_row),
        format!("  invariant factors: [{}]", body.invariant_factors.join(", ")),
        format!("  K₀ = {group_text}"),
        format!("  Smith form verified: {}", mark(body.smith_verified)),
    ];
    if let Some(n) = &body.note {
        lines.push(format!("  note: {n}"));
    }
    Report::new(status(ok), &body, lines)
}
