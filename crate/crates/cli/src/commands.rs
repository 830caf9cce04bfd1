//! One function per subcommand. Every command reads the scene, runs the
//! relevant module, and fills a deterministic report; verdict failures turn
//! into exit code 1 in the driver.

use std::time::Instant;

use multiplank::experiments::{
    self, pizza_best_piece, pizza_bound, sharpness_min_covering_radius,
    sharpness_two_multiplanks, Cover, CoveringInstance,
};
use multiplank::geom::{circumcenter, Membership, Point, Tolerance};
use multiplank::inradii;
use multiplank::normed::{self, NormedMultiPlank};
use multiplank::sample_box;
use multiplank::stratify::Stratification;

use crate::report::Report;
use crate::scene::Scene;
use crate::{render, Cli, CliError, Command, Output};

#[derive(Debug, Clone)]
pub struct Opts {
    pub budget: usize,
    pub seed: u64,
    pub resolution: usize,
    pub k: usize,
    pub closed: bool,
    pub strata: bool,
    pub tol: Tolerance,
    pub out: Option<std::path::PathBuf>,
}

impl Opts {
    pub fn from_cli(cli: &Cli, scene: &Scene) -> Result<Self, CliError> {
        let tol = scene.tolerance(cli.eps_geom, cli.eps_opt)?;
        if cli.budget < 1 {
            return Err(CliError::input("budget must be at least 1"));
        }
        Ok(Opts {
            budget: cli.budget,
            seed: cli.seed.unwrap_or(scene.seed),
            resolution: cli.resolution.clamp(16, 4096),
            k: cli.k,
            closed: cli.closed,
            strata: cli.strata,
            tol,
            out: cli.out.clone(),
        })
    }

    /// The flag state that participates in the inputs digest.
    pub fn canonical_string(&self) -> String {
        format!(
            "budget={};seed={};resolution={};k={};closed={};strata={};eps_geom={};eps_opt={}",
            self.budget,
            self.seed,
            self.resolution,
            self.k,
            self.closed,
            self.strata,
            self.tol.eps_geom,
            self.tol.eps_opt
        )
    }
}

pub fn dispatch(
    command: Command,
    scene: &Scene,
    opts: &Opts,
    digest: String,
) -> Result<Output, CliError> {
    let start = Instant::now();
    let mut out = match command {
        Command::Meb => cmd_meb(scene, opts, digest),
        Command::Inradii => cmd_inradii(scene, opts, digest),
        Command::PlankCheck => cmd_plank_check(scene, opts, digest),
        Command::Stratify => cmd_stratify(scene, opts, digest),
        Command::Verify => cmd_verify(scene, opts, digest),
        Command::Pizza => cmd_pizza(scene, opts, digest),
        Command::Sharpness => cmd_sharpness(scene, opts, digest),
        Command::Normed => cmd_normed(scene, opts, digest),
        Command::Render => cmd_render(scene, opts, digest),
    }?;
    out.report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(out)
}

fn only_report(report: Report) -> Output {
    Output { report, svg: None }
}

fn cmd_meb(scene: &Scene, opts: &Opts, digest: String) -> Result<Output, CliError> {
    let sets = scene.point_sets()?;
    if sets.is_empty() {
        return Err(CliError::input("meb needs at least one generating set"));
    }
    let mut report = Report::new("meb", digest);
    for (i, pts) in sets.iter().enumerate() {
        let ball = multiplank::geom::min_enclosing_ball(pts, opts.tol.eps_geom)
            .map_err(|e| CliError::input(format!("generating_sets[{i}]: {e}")))?;
        report.metric(format!("meb.{i}.radius"), ball.radius);
        report.metric(format!("meb.{i}.center_norm"), ball.center.norm());
        let contains_all = pts.iter().all(|p| ball.contains(p, opts.tol.eps_geom));
        report.verdict(format!("meb.{i}.contains_all"), contains_all);
        report.witness(&ball.center);
    }
    Ok(only_report(report))
}

fn cmd_inradii(scene: &Scene, opts: &Opts, digest: String) -> Result<Output, CliError> {
    let body = scene.required_body("K", &opts.tol)?;
    if opts.k < 1 || opts.k > body.dim() {
        return Err(CliError::input(format!("k must lie in 1..={}", body.dim())));
    }
    let radii = inradii::intrinsic_radii(&body, opts.k, &opts.tol)
        .map_err(|e| CliError::input(format!("intrinsic radii: {e}")))?;
    let mut report = Report::new("inradii", digest);
    report.metric("upper", radii.upper);
    report.metric("lower", radii.lower);
    report.metric("k", opts.k as f64);
    report.verdict("lower_le_upper", radii.lower <= radii.upper + opts.tol.eps_opt);
    for b in &radii.upper_subspace.basis {
        report.witness(b);
    }
    Ok(only_report(report))
}

fn cmd_plank_check(scene: &Scene, opts: &Opts, digest: String) -> Result<Output, CliError> {
    let planks = scene.planks(opts.closed, &opts.tol)?;
    if planks.is_empty() {
        return Err(CliError::input("plank-check needs at least one generating set"));
    }
    let mut report = Report::new("plank-check", digest);
    let mut budget_used = 0u64;
    for (i, plank) in planks.iter().enumerate() {
        let r = plank.inradius();
        let scale = 3.0 * r.max(1e-6);
        let lo = plank.translation().coords().iter().map(|c| c - scale).collect::<Vec<_>>();
        let hi = plank.translation().coords().iter().map(|c| c + scale).collect::<Vec<_>>();
        let samples = sample_box(
            &Point::from_slice(&lo),
            &Point::from_slice(&hi),
            opts.budget,
            opts.seed.wrapping_add(i as u64),
        );
        budget_used += samples.len() as u64;
        let mut disagreements = 0u64;
        let mut witness: Option<Point> = None;
        for p in &samples {
            let a = plank.contains(p, &opts.tol).map_err(|e| CliError::input(e.to_string()))?;
            let b = plank
                .contains_via_cells(p, &opts.tol)
                .map_err(|e| CliError::input(e.to_string()))?;
            if a != Membership::Boundary && b != Membership::Boundary && a != b {
                disagreements += 1;
                if witness.is_none() {
                    witness = Some(p.clone());
                }
            }
        }
        report.metric(format!("plank.{i}.inradius"), r);
        report.metric(format!("plank.{i}.disagreements"), disagreements as f64);
        report.verdict(format!("plank.{i}.def_equivalence"), disagreements == 0);
        if let Some(w) = witness {
            report.witness(&w);
        }
    }
    report.budget_used = budget_used;
    Ok(only_report(report))
}

fn cmd_stratify(scene: &Scene, opts: &Opts, digest: String) -> Result<Output, CliError> {
    if scene.dim != 2 {
        return Err(CliError::input("stratify is a 2D command"));
    }
    let planks = scene.planks(opts.closed, &opts.tol)?;
    if planks.is_empty() {
        return Err(CliError::input("stratify needs at least one generating set"));
    }
    let mut report = Report::new("stratify", digest);
    let mut budget_used = 0u64;
    for (i, plank) in planks.iter().enumerate() {
        let strat = Stratification::build(plank, &opts.tol)
            .map_err(|e| CliError::input(format!("generating_sets[{i}]: {e}")))?;
        let Some(s2) = strat.full2d() else {
            return Err(CliError::input(format!(
                "generating_sets[{i}] is rank-deficient; stratify needs full rank"
            )));
        };
        // Full sphere property, re-verified here against every point.
        let pts = plank.generating_set().points();
        let mut full_sphere = true;
        let mut min_circum = f64::INFINITY;
        for cell in &s2.fd.cells {
            let verts = [
                pts[cell[0]].clone(),
                pts[cell[1]].clone(),
                pts[cell[2]].clone(),
            ];
            let c = circumcenter(&verts, opts.tol.eps_geom)
                .map_err(|e| CliError::input(e.to_string()))?;
            let radius = c.dist(&verts[0]);
            min_circum = min_circum.min(radius);
            let band = opts.tol.eps_geom * (1.0 + radius) * 10.0;
            if pts.iter().any(|p| c.dist(p) > radius + band) {
                full_sphere = false;
            }
        }
        let r = plank.inradius();
        let scale = 3.0 * r.max(1e-6);
        let samples = sample_box(
            &Point::xy(-scale, -scale),
            &Point::xy(scale, scale),
            opts.budget,
            opts.seed.wrapping_add(i as u64),
        );
        budget_used += samples.len() as u64;
        let mut disagreements = 0u64;
        for p in &samples {
            let a = plank.contains(p, &opts.tol).map_err(|e| CliError::input(e.to_string()))?;
            let b = strat
                .contains_via_strata(p, &opts.tol)
                .map_err(|e| CliError::input(e.to_string()))?;
            if a != Membership::Boundary && b != Membership::Boundary && a != b {
                disagreements += 1;
            }
        }
        report.metric(format!("strat.{i}.cells"), s2.fd.cells.len() as f64);
        report.metric(format!("strat.{i}.edges"), s2.edges.len() as f64);
        report.metric(format!("strat.{i}.min_circumradius"), min_circum);
        report.metric(format!("strat.{i}.inradius"), r);
        report.metric(format!("strat.{i}.disagreements"), disagreements as f64);
        report.verdict(format!("strat.{i}.full_sphere"), full_sphere);
        report.verdict(format!("strat.{i}.equivalence"), disagreements == 0);
        report.verdict(
            format!("strat.{i}.circumradius_ge_inradius"),
            min_circum >= r - opts.tol.eps_geom * (1.0 + r),
        );
    }
    report.budget_used = budget_used;
    Ok(only_report(report))
}

fn cmd_verify(scene: &Scene, opts: &Opts, digest: String) -> Result<Output, CliError> {
    let body = scene.required_body("K", &opts.tol)?;
    if opts.k < 1 || opts.k > body.dim() {
        return Err(CliError::input(format!("k must lie in 1..={}", body.dim())));
    }
    let mut covers: Vec<Cover> = scene
        .planks(opts.closed, &opts.tol)?
        .into_iter()
        .map(Cover::Plank)
        .collect();
    for (name, _) in scene.bodies.iter() {
        if name == "K" {
            continue;
        }
        let piece = scene.required_body(name, &opts.tol)?;
        covers.push(Cover::Body(piece));
    }
    if covers.is_empty() {
        return Err(CliError::input("verify needs multi-planks or cover bodies"));
    }
    let inst = CoveringInstance {
        body,
        covers,
        k: opts.k,
        budget: opts.budget,
        seed: opts.seed,
    };
    let mut report = Report::new("verify", digest);
    let coverage = experiments::verify_covering(&inst, &opts.tol);
    report.budget_used = coverage.samples as u64;
    report.metric("coverage_fraction", coverage.fraction);
    report.verdict("covered", coverage.uncovered.is_none());
    if let Some(w) = &coverage.uncovered {
        report.witness(w);
        return Ok(only_report(report));
    }
    let pants = experiments::verify_pants_inequality(&inst, &opts.tol)
        .map_err(|e| CliError::input(e.to_string()))?;
    report.metric("lhs_sum_inradii", pants.lhs);
    report.metric("rhs_lower_intrinsic", pants.rhs);
    report.verdict("pants_inequality", pants.holds);
    Ok(only_report(report))
}

fn cmd_pizza(scene: &Scene, opts: &Opts, digest: String) -> Result<Output, CliError> {
    if scene.dim != 2 {
        return Err(CliError::input("pizza is a 2D command"));
    }
    let fans = scene.fan_list()?;
    let res = pizza_best_piece(&fans, opts.budget);
    let mut report = Report::new("pizza", digest);
    report.budget_used = res.evaluations;
    report.metric("best_piece", res.radius);
    report.metric("certified_gap", res.certified_gap);
    report.metric("fans", fans.len() as f64);
    report.witness(&res.center);
    if !fans.is_empty() {
        let m = fans[0].arms;
        if fans.iter().all(|f| f.arms == m) {
            let bound = pizza_bound(m, fans.len()).map_err(|e| CliError::input(e.to_string()))?;
            report.metric("bound", bound);
            report.verdict("bound_holds", res.radius >= bound - res.certified_gap - 1e-9);
        }
    }
    Ok(only_report(report))
}

fn cmd_sharpness(scene: &Scene, opts: &Opts, digest: String) -> Result<Output, CliError> {
    let dto = scene
        .sharpness
        .as_ref()
        .ok_or_else(|| CliError::input("sharpness needs a scene \"sharpness\" section"))?;
    let mut report = Report::new("sharpness", digest);
    report.metric("n_points", dto.n_points as f64);
    match dto.r {
        Some(r) => {
            let rep = sharpness_two_multiplanks(dto.n_points, r, opts.budget, opts.seed, &opts.tol)
                .map_err(|e| CliError::input(e.to_string()))?;
            report.budget_used = opts.budget as u64;
            report.metric("r", r);
            report.metric("fraction", rep.fraction);
            report.verdict("covers", rep.covers);
            if let Some(w) = &rep.witness {
                report.witness(w);
            }
        }
        None => {
            let r = sharpness_min_covering_radius(dto.n_points, opts.budget, opts.seed, &opts.tol)
                .map_err(|e| CliError::input(e.to_string()))?;
            report.budget_used = opts.budget as u64;
            report.metric("min_covering_r", r);
            report.verdict("ge_half", r >= 0.5 - 1e-9);
        }
    }
    Ok(only_report(report))
}

fn cmd_normed(scene: &Scene, opts: &Opts, digest: String) -> Result<Output, CliError> {
    if scene.dim != 2 {
        return Err(CliError::input("normed is a 2D command"));
    }
    let gauge = scene
        .gauge_polygon(&opts.tol)?
        .ok_or_else(|| CliError::input("normed needs a gauge polygon"))?;
    let mut report = Report::new("normed", digest);

    // Norm axioms on sampled pairs.
    let pairs = sample_box(&Point::xy(-5.0, -5.0), &Point::xy(5.0, 5.0), 2 * opts.budget, opts.seed);
    let mut tri_ok = true;
    let mut homog_ok = true;
    let mut worst = 0.0f64;
    for pair in pairs.chunks_exact(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let lhs = gauge.norm(&(a + b));
        let rhs = gauge.norm(a) + gauge.norm(b);
        if lhs > rhs + 1e-9 {
            tri_ok = false;
            worst = worst.max(lhs - rhs);
        }
        let lam = 0.5 + gauge.norm(b) * 0.1;
        let h_lhs = gauge.norm(&a.scale(lam));
        let h_rhs = lam * gauge.norm(a);
        if (h_lhs - h_rhs).abs() > 1e-9 * (1.0 + h_rhs) {
            homog_ok = false;
        }
    }
    report.budget_used = opts.budget as u64;
    report.metric("triangle_worst_violation", worst);
    report.verdict("triangle_inequality", tri_ok);
    report.verdict("positive_homogeneity", homog_ok);

    // Normed multi-planks from the scene's generating sets.
    let sets = scene.point_sets()?;
    let mut planks: Vec<NormedMultiPlank> = Vec::new();
    for (i, pts) in sets.iter().enumerate() {
        let (plank, _) = NormedMultiPlank::from_points_centered(pts, gauge.clone(), &opts.tol)
            .map_err(|e| CliError::input(format!("generating_sets[{i}]: {e}")))?;
        report.metric(format!("normed.{i}.inradius"), plank.inradius());
        report.verdict(
            format!("normed.{i}.origin_inside"),
            plank.contains(&Point::xy(0.0, 0.0), &opts.tol) == Membership::Inside,
        );
        planks.push(plank);
    }
    if !planks.is_empty() {
        let shifts = sample_box(&Point::xy(-1.5, -1.5), &Point::xy(1.5, 1.5), 10, opts.seed + 1);
        let mut escape_ok = true;
        for s in &shifts {
            let rep = normed::normed_farthest_escape_check(&planks, s, &opts.tol)
                .map_err(|e| CliError::input(e.to_string()))?;
            escape_ok &= rep.ok;
        }
        report.verdict("escape_ok", escape_ok);
    }

    if let Some(body) = scene.body("K", &opts.tol)? {
        let k = opts.k.min(2).max(1);
        let up = normed::normed_upper_intrinsic(&body, k, &gauge, &opts.tol)
            .map_err(|e| CliError::input(e.to_string()))?;
        let lo = normed::normed_lower_intrinsic(&body, k, &gauge, &opts.tol)
            .map_err(|e| CliError::input(e.to_string()))?;
        report.metric("normed_upper", up);
        report.metric("normed_lower", lo);
        report.metric("k", k as f64);
    }
    Ok(only_report(report))
}

fn cmd_render(scene: &Scene, opts: &Opts, digest: String) -> Result<Output, CliError> {
    let svg = render::render_scene(scene, opts)?;
    if let Some(path) = &opts.out {
        std::fs::write(path, svg.as_bytes())
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
    }
    let mut report = Report::new("render", digest);
    report.metric("svg.bytes", svg.len() as f64);
    report.metric("svg.resolution", opts.resolution as f64);
    report.verdict("rendered", true);
    Ok(Output { report, svg: Some(svg) })
}
