//! Command dispatch: each command runs engine pipelines on a manifest and
//! turns the results into report entries.

use thiserror::Error;
use tsgeom::check::IdentityCheck;
use tsgeom::curvature::{
    antisymmetry_check, bianchi_check, metric_compatibility_check, pair_symmetry_check, ricci, ricci_symmetry_check,
    riemann, scalar, torsion_check, verify_proposition1, CurvatureTensor, RicciTensor,
};
use tsgeom::frame::{add_vec, scale_vec, Manifold};
use tsgeom::structure::{
    check_structure, classify, extract_alpha_beta, nabla_eta_check, nabla_phi_check, nabla_xi_check, StructureData,
    StructureError,
};
use tsgeom::submanifold::{
    check_invariant, gauss_equation_check, involutivity_check, normal_metric_check, reciprocity_check,
    sigma_symmetry_check, verify_theorem1, Splitting, Submanifold, SubmanifoldError, SubmanifoldSpec,
};
use tsgeom::tachibana::{sigma_tensor, theorem_report, Ambient, TachibanaError, THEOREMS};
use tsgeom::Expr;

use crate::manifest::{Manifest, Reference};
use crate::report::{Entry, Report, ReportBuilder, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    StructureCheck,
    Curvature,
    Prop1,
    SubmanifoldReport(String),
    Theorem(u8, String),
    All,
}

impl Command {
    pub fn label(&self) -> String {
        match self {
            Command::StructureCheck => "structure-check".into(),
            Command::Curvature => "curvature".into(),
            Command::Prop1 => "prop1".into(),
            Command::SubmanifoldReport(n) => format!("submanifold-report {n}"),
            Command::Theorem(t, n) => format!("theorem {t} {n}"),
            Command::All => "all".into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("manifest has no [structure] block")]
    MissingStructure,
    #[error("no submanifold named '{0}'")]
    UnknownSubmanifold(String),
    #[error("theorem index {0} is outside 2..=9")]
    TheoremIndex(u8),
    #[error("cannot build submanifold '{name}': {source}")]
    Submanifold { name: String, source: SubmanifoldError },
    #[error(transparent)]
    Tachibana(#[from] TachibanaError),
}

/// Ambient data computed once per run.
struct Session<'a> {
    manifest: &'a Manifest,
    riemann: Option<CurvatureTensor>,
    ricci: Option<RicciTensor>,
}

impl<'a> Session<'a> {
    fn m(&self) -> &'a Manifold {
        &self.manifest.manifold
    }

    fn structure(&self) -> Result<&'a StructureData, CommandError> {
        self.manifest.structure.as_ref().ok_or(CommandError::MissingStructure)
    }

    fn riemann(&mut self) -> &CurvatureTensor {
        if self.riemann.is_none() {
            self.riemann = Some(riemann(self.m()));
        }
        self.riemann.as_ref().unwrap()
    }

    fn ricci(&mut self) -> &RicciTensor {
        if self.ricci.is_none() {
            let r = self.riemann().clone();
            self.ricci = Some(ricci(&r, &self.m().metric));
        }
        self.ricci.as_ref().unwrap()
    }
}

pub fn run_command(cmd: &Command, manifest: &Manifest, seed: u64) -> Result<Report, CommandError> {
    if let Command::Theorem(t, _) = cmd {
        if !THEOREMS.contains(t) {
            return Err(CommandError::TheoremIndex(*t));
        }
    }
    let mut ses = Session {
        manifest,
        riemann: None,
        ricci: None,
    };
    let mut rb = ReportBuilder::new(cmd.label(), &manifest.manifold.chart, seed);
    match cmd {
        Command::StructureCheck => structure_check(&ses, &mut rb)?,
        Command::Curvature => curvature(&mut ses, &mut rb),
        Command::Prop1 => prop1(&mut ses, &mut rb)?,
        Command::SubmanifoldReport(name) => {
            let spec = lookup(manifest, name)?;
            submanifold_report(&mut ses, &mut rb, spec)?;
        }
        Command::Theorem(t, name) => {
            let spec = lookup(manifest, name)?;
            theorems(&mut ses, &mut rb, spec, &[*t], false)?;
        }
        Command::All => {
            curvature(&mut ses, &mut rb);
            if manifest.structure.is_some() {
                structure_check(&ses, &mut rb)?;
                prop1(&mut ses, &mut rb)?;
            }
            for spec in &manifest.submanifolds {
                submanifold_report(&mut ses, &mut rb, spec)?;
                if manifest.structure.is_some() {
                    let all: Vec<u8> = THEOREMS.collect();
                    theorems(&mut ses, &mut rb, spec, &all, true)?;
                }
            }
        }
    }
    Ok(rb.finish())
}

fn lookup<'a>(manifest: &'a Manifest, name: &str) -> Result<&'a SubmanifoldSpec, CommandError> {
    manifest
        .submanifold(name)
        .ok_or_else(|| CommandError::UnknownSubmanifold(name.to_string()))
}

/// α, β from the structure, or a FAIL entry explaining why they are missing.
fn parameters(m: &Manifold, s: &StructureData, rb: &mut ReportBuilder) -> Option<(Expr, Expr)> {
    match extract_alpha_beta(m, s) {
        Ok(p) => Some((p.alpha, p.beta)),
        Err(StructureError::NotAlmostContact(failing)) => {
            let report = check_structure(m, s);
            let ws: Vec<_> = failing
                .iter()
                .filter_map(|id| report.get(id))
                .flat_map(|c| c.witnesses().iter().cloned())
                .collect();
            rb.push(
                Entry::new(
                    "alpha, beta",
                    Status::Fail,
                    format!("not a metric almost-contact structure: {}", failing.join(", ")),
                )
                .witnesses(rb.chart(), &ws),
            );
            None
        }
        Err(StructureError::NotTransSasakian(p)) => {
            let e = Entry::new(
                "alpha, beta",
                Status::Fail,
                "nabla xi is not of the form -alpha phi - beta phi^2",
            )
            .value("alpha", rb.render(&p.alpha))
            .value("beta", rb.render(&p.beta))
            .witnesses(rb.chart(), &p.nabla_xi.witnesses);
            rb.push(e);
            None
        }
        Err(e) => {
            // φX and φ²X never independent: only α = β = 0 can be tested.
            let zero = Expr::zero();
            let c = nabla_xi_check(m, s, &zero, &zero);
            if c.holds() {
                rb.push(Entry::new(
                    "alpha, beta",
                    Status::Info,
                    format!("{e}; nabla xi = 0, taking alpha = beta = 0"),
                ));
                Some((zero.clone(), zero))
            } else {
                rb.push(Entry::new("alpha, beta", Status::Fail, e.to_string()).witnesses(rb.chart(), c.witnesses()));
                None
            }
        }
    }
}

fn structure_check(ses: &Session, rb: &mut ReportBuilder) -> Result<(), CommandError> {
    let m = ses.m();
    let s = ses.structure()?;
    for c in &check_structure(m, s).checks {
        rb.check(c);
    }
    let Some((alpha, beta)) = parameters(m, s, rb) else {
        return Ok(());
    };
    let xi_alpha = m.derive(s.xi(), &alpha);
    let xi_beta = m.derive(s.xi(), &beta);
    rb.push(
        Entry::new(
            "alpha, beta",
            Status::Info,
            "solved from nabla xi = -alpha phi - beta phi^2",
        )
        .value("alpha", rb.render(&alpha))
        .value("beta", rb.render(&beta))
        .value("xi(alpha)", rb.render(&xi_alpha))
        .value("xi(beta)", rb.render(&xi_beta)),
    );
    rb.check(&nabla_xi_check(m, s, &alpha, &beta));
    rb.check(&nabla_phi_check(m, s, &alpha, &beta));
    rb.check(&nabla_eta_check(m, s, &alpha, &beta));
    rb.push(Entry::new(
        "classification",
        Status::Info,
        classify(&alpha, &beta).to_string(),
    ));
    if let Some(r) = &ses.manifest.reference {
        compare_reference(
            m,
            s,
            r,
            &ses.manifest.frame_names,
            [&alpha, &beta, &xi_alpha, &xi_beta],
            rb,
        );
    }
    Ok(())
}

/// Compares engine values with reference values up to sign: a magnitude
/// mismatch fails, a sign mismatch is flagged.
fn compare_reference(
    m: &Manifold,
    s: &StructureData,
    r: &Reference,
    frame_names: &[String],
    engine: [&Expr; 4],
    rb: &mut ReportBuilder,
) {
    let names = ["alpha", "beta", "xi(alpha)", "xi(beta)"];
    let refs = [&r.alpha, &r.beta, &r.xi_alpha, &r.xi_beta];
    for ((name, e), rf) in names.iter().zip(engine).zip(refs) {
        let Some(rf) = rf else { continue };
        rb.push(sign_entry(
            rb,
            &format!("{name} vs reference"),
            std::slice::from_ref(e),
            std::slice::from_ref(rf),
        ));
    }
    for (x, y, v) in &r.connection {
        let got = m.covariant(&m.basis(*x), &m.basis(*y));
        let id = format!("nabla_{} {} vs reference", frame_names[*x], frame_names[*y]);
        rb.push(sign_entry(rb, &id, &got, v));
    }
    // Which sign flips of (alpha, beta) turn the engine's nabla xi into the
    // reference entries along xi.
    let along_xi: Vec<_> = r.connection.iter().filter(|(_, y, _)| m.basis(*y) == s.xi()).collect();
    if along_xi.is_empty() {
        return;
    }
    let (alpha, beta) = (engine[0], engine[1]);
    let mut matches = Vec::new();
    for (sa, sb) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
        let ok = along_xi.iter().all(|(x, _, v)| {
            let e = m.basis(*x);
            let pred = add_vec(
                &scale_vec(&-&alpha.scale(sa), &s.apply_phi(&e)),
                &scale_vec(&-&beta.scale(sb), &s.apply_phi2(&e)),
            );
            &pred == v
        });
        if ok {
            matches.push(format!(
                "({}alpha, {}beta)",
                if sa < 0 { "-" } else { "" },
                if sb < 0 { "-" } else { "" }
            ));
        }
    }
    let detail = if matches.is_empty() {
        "reference nabla xi is not of the form -a phi - b phi^2 for a = +-alpha, b = +-beta".to_string()
    } else {
        format!(
            "reference nabla xi equals -a phi - b phi^2 with (a, b) = {}",
            matches.join(" or ")
        )
    };
    rb.push(Entry::new("reference sign pattern", Status::Info, detail));
}

fn sign_entry(rb: &ReportBuilder, id: &str, got: &[Expr], want: &[Expr]) -> Entry {
    let mut flipped = Vec::new();
    let mut wrong = Vec::new();
    for (k, (g, w)) in got.iter().zip(want).enumerate() {
        if g == w {
            continue;
        }
        if g == &-w {
            flipped.push(k);
        } else {
            wrong.push(k);
        }
    }
    let show = |v: &[Expr]| v.iter().map(|e| rb.render(e)).collect::<Vec<_>>().join(", ");
    let (status, detail) = if !wrong.is_empty() {
        (Status::Fail, "magnitudes differ".to_string())
    } else if flipped.is_empty() {
        (Status::Pass, "magnitudes and signs agree".to_string())
    } else {
        (
            Status::Pass,
            format!(
                "magnitudes agree; sign DISAGREES in component(s) {}",
                flipped
                    .iter()
                    .map(|k| (k + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        )
    };
    let mut e = Entry::new(id, status, detail)
        .value("engine", show(got))
        .value("reference", show(want))
        .value(
            "sign agrees",
            if flipped.is_empty() && wrong.is_empty() {
                "yes"
            } else {
                "no"
            },
        );
    for k in wrong {
        e.witnesses.push(crate::report::WitnessOut {
            index: vec![k + 1],
            value: rb.render(&(&got[k] - &want[k])),
        });
    }
    e
}

fn curvature(ses: &mut Session, rb: &mut ReportBuilder) {
    let m = ses.m();
    rb.check(&torsion_check(m));
    rb.check(&metric_compatibility_check(m));
    let r = ses.riemann().clone();
    let n = m.dim();
    let mut rc = IdentityCheck::new("riemann", "R(E_i,E_j)E_k components, listed as (l,i,j,k)");
    let mut sc = IdentityCheck::new("ricci", "Ricci tensor S(E_j,E_k)");
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    rc.push(vec![l, i, j, k], r.get(l, i, j, k).clone(), Expr::zero());
                }
            }
        }
    }
    let ric = ses.ricci().clone();
    for j in 0..n {
        for k in j..n {
            sc.push(vec![j, k], ric.get(j, k).clone(), Expr::zero());
        }
    }
    rb.tensor(&rc);
    rb.tensor(&sc);
    let tau = scalar(&ric, &m.metric);
    rb.push(Entry::new("scalar curvature", Status::Info, "tau = g^(jk) S_jk").value("tau", rb.render(&tau)));
    rb.check(&antisymmetry_check(&r));
    rb.check(&bianchi_check(&r));
    rb.check(&pair_symmetry_check(&r, &m.metric));
    rb.check(&ricci_symmetry_check(&ric));
}

fn prop1(ses: &mut Session, rb: &mut ReportBuilder) -> Result<(), CommandError> {
    let m = ses.m();
    let s = ses.structure()?;
    let Some((alpha, beta)) = parameters(m, s, rb) else {
        return Ok(());
    };
    let r = ses.riemann().clone();
    let ric = ses.ricci().clone();
    match verify_proposition1(m, s, &alpha, &beta, &r, &ric) {
        Ok(checks) => checks.iter().for_each(|c| rb.check(c)),
        Err(e) => rb.push(Entry::new(
            "curvature identities",
            Status::Info,
            format!("skipped: {e}"),
        )),
    }
    Ok(())
}

fn build_submanifold(
    m: &Manifold,
    spec: &SubmanifoldSpec,
    rb: &mut ReportBuilder,
) -> Result<Option<Submanifold>, CommandError> {
    let tag = |id: &str| format!("{}: {id}", spec.name);
    match Submanifold::new(m, spec) {
        Ok(sub) => {
            rb.check(&tagged(involutivity_check(m, &sub.split), &spec.name));
            Ok(Some(sub))
        }
        Err(SubmanifoldError::NotInvolutive(ws)) => {
            rb.push(
                Entry::new(
                    tag("involutive"),
                    Status::Fail,
                    "brackets of tangent fields leave the distribution",
                )
                .witnesses(rb.chart(), &ws),
            );
            Ok(None)
        }
        Err(source) => Err(CommandError::Submanifold {
            name: spec.name.clone(),
            source,
        }),
    }
}

fn tagged(mut c: IdentityCheck, name: &str) -> IdentityCheck {
    c.id = format!("{name}: {}", c.id);
    c
}

fn submanifold_report(ses: &mut Session, rb: &mut ReportBuilder, spec: &SubmanifoldSpec) -> Result<(), CommandError> {
    let m = ses.m();
    let name = &spec.name;
    let Some(sub) = build_submanifold(m, spec, rb)? else {
        return Ok(());
    };
    if let Some(leaf) = sub.split.leaf() {
        let mut e = Entry::new(
            format!("{name}: leaf"),
            Status::Info,
            "restricted to the integral manifold",
        );
        for (i, v) in leaf.substitutions() {
            e = e.value(m.chart.names()[*i].clone(), rb.render(v));
        }
        rb.push(e);
    }
    rb.push(
        Entry::new(format!("{name}: dimensions"), Status::Info, "tangent and normal ranks")
            .value("dim", sub.dim().to_string())
            .value("codim", sub.codim().to_string()),
    );
    let mut invariant = None;
    if let Ok(s) = ses.structure() {
        let inv = check_invariant(m, s, &sub.split);
        rb.flag(&tagged(inv.xi_tangent.clone(), name));
        rb.flag(&tagged(inv.phi_stable.clone(), name));
        invariant = Some(inv.is_invariant());
    }
    let sigma = sub.split.finish(sigma_tensor(&sub)?.zero_check(
        &format!("{name}: sigma"),
        "second fundamental form sigma(e_a,e_b), listed as (a,b,normal)",
    ));
    rb.tensor(&sigma);
    rb.push(Entry::new(
        format!("{name}: totally geodesic"),
        Status::flag(sub.is_totally_geodesic()),
        "sigma = 0",
    ));
    let rperp = sub.normal_curvature(m);
    let mut rc = IdentityCheck::new(
        format!("{name}: normal curvature"),
        "R-perp(e_a,e_b) n_alpha, listed as (a,b,alpha,beta)",
    );
    for a in 0..sub.dim() {
        for b in 0..sub.dim() {
            for al in 0..sub.codim() {
                for (be, v) in rperp.on_frame(a, b, al).iter().enumerate() {
                    rc.push(vec![a, b, al, be], v.clone(), Expr::zero());
                }
            }
        }
    }
    rb.tensor(&sub.split.finish(rc));
    rb.check(&tagged(sigma_symmetry_check(&sub), name));
    rb.check(&tagged(reciprocity_check(&sub), name));
    rb.check(&tagged(normal_metric_check(m, &sub), name));
    let r = ses.riemann().clone();
    for c in gauss_equation_check(m, &sub, &r) {
        rb.check(&tagged(c, name));
    }
    if invariant == Some(true) {
        let s = ses.structure()?;
        let checks = verify_theorem1(m, s, &sub, &r).map_err(|source| CommandError::Submanifold {
            name: name.clone(),
            source,
        })?;
        for c in checks {
            if c.checked() > 0 {
                rb.check(&tagged(c, name));
            }
        }
    }
    Ok(())
}

fn theorems(
    ses: &mut Session,
    rb: &mut ReportBuilder,
    spec: &SubmanifoldSpec,
    which: &[u8],
    skip_refused: bool,
) -> Result<(), CommandError> {
    let m = ses.m();
    let s = ses.structure()?;
    let name = &spec.name;
    let split = Splitting::new(m, spec).map_err(|source| CommandError::Submanifold {
        name: name.clone(),
        source,
    })?;
    let inv = check_invariant(m, s, &split);
    if !inv.is_invariant() {
        if skip_refused {
            rb.push(Entry::new(
                format!("{name}: theorems"),
                Status::Info,
                "skipped: the distribution is not invariant",
            ));
        } else {
            let ws: Vec<_> = inv
                .xi_tangent
                .witnesses()
                .iter()
                .chain(inv.phi_stable.witnesses())
                .cloned()
                .collect();
            rb.push(
                Entry::new(
                    format!("{name}: theorems"),
                    Status::Fail,
                    "refused: the distribution is not invariant",
                )
                .witnesses(rb.chart(), &ws),
            );
        }
        return Ok(());
    }
    let Some(sub) = build_submanifold(m, spec, rb)? else {
        return Ok(());
    };
    let Some((alpha, beta)) = parameters(m, s, rb) else {
        return Ok(());
    };
    let amb = Ambient::new(m, s, alpha, beta)?;
    for &t in which {
        let r = theorem_report(&amb, &sub, t)?;
        let tag = |id: &str| format!("T{t} {name}: {id}");
        rb.tensor(&r.hypothesis.zero_check(
            &tag(&r.hypothesis_label),
            "hypothesis tensor, listed as (slots..., normal)",
        ));
        for d in &r.disjuncts {
            match &d.expr {
                None => rb.push(Entry::new(tag(&d.label), Status::flag(d.holds), "conclusion")),
                Some(e) => {
                    let mut c = IdentityCheck::new(tag(&d.label), "conclusion");
                    c.push(vec![], e.clone(), Expr::zero());
                    rb.flag(&c);
                }
            }
        }
        for d in &r.proof_conditions {
            let mut c = IdentityCheck::new(tag(&format!("proof: {}", d.label)), "final condition of the argument");
            c.push(vec![], d.expr.clone().unwrap_or_else(Expr::zero), Expr::zero());
            rb.flag(&c);
        }
        for note in &r.notes {
            rb.push(Entry::new(tag("note"), Status::Info, note.clone()));
        }
        let detail = if t == 3 {
            format!(
                "Q(g,sigma) zero: {}; totally geodesic: {}",
                r.hypothesis_zero, r.totally_geodesic
            )
        } else if !r.hypothesis_zero {
            "hypothesis tensor is nonzero; nothing is claimed".to_string()
        } else if r.verdict {
            format!("rescued by: {}", r.rescued_by().join("; "))
        } else {
            "hypothesis holds but no stated condition does".to_string()
        };
        let mut e = Entry::new(
            tag("verdict"),
            if r.verdict { Status::Pass } else { Status::Fail },
            detail,
        );
        if !r.verdict {
            let ws: Vec<_> = if t == 3 {
                r.hypothesis.nonzero()
            } else {
                r.disjuncts
                    .iter()
                    .enumerate()
                    .filter_map(|(k, d)| {
                        d.expr
                            .clone()
                            .map(|value| tsgeom::check::Witness { index: vec![k], value })
                    })
                    .collect()
            };
            e = e.witnesses(rb.chart(), &ws);
            if e.witnesses.is_empty() {
                let sigma = sigma_tensor(&sub)?.map(|x| sub.split.restrict(x));
                e = e.witnesses(rb.chart(), &sigma.nonzero());
            }
        }
        rb.push(e);
    }
    Ok(())
}
