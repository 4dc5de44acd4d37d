use std::path::Path;

use num_traits::{One, Signed, Zero};
use onepoint::bounds::{
    all_face_volume_checks, beta_lower_bounds, blichfeldt_all_faces, chain_decompose,
    check_all_partitions, det_b, onepoint_beta, reduced_system, section_volume_identity_check,
    vd_cd_report, zpw_chain_lower_check, ParallelotopeBox, Partition, SortedBary,
};
use onepoint::certificate::second_interior_point;
use onepoint::generators::{
    canonical_examples, enumerate_onepoint_triangles_2d, planar_volume_bound, sylvester,
    zpw_simplex, GeneratedSimplex, Verification,
};
use onepoint::points::{count_closure_points, enumerate_interior};
use onepoint::report::{AtlasRecord, CertificateDoc, Entry, Report};
use onepoint::simplex::{
    barycentric_by_inverse, barycentric_of, barycentric_of_int, format_index_set,
    format_int_vector, format_rat_vector, normalized_volume, IntVector,
};
use onepoint::{BigInt, Error, FaceIndex, LatticeSimplex, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::input::{load_simplex, parse_point, render_simplex};
use crate::{Check, Registry, RunConfig};

pub fn register_all(r: &mut Registry) {
    r.register(Box::new(Verify));
    r.register(Box::new(Bary));
    r.register(Box::new(Ineq));
    r.register(Box::new(Bounds));
    r.register(Box::new(Chain));
    r.register(Box::new(Cert));
    r.register(Box::new(Gen));
    r.register(Box::new(Atlas2d));
    r.register(Box::new(CorpusReport));
}

fn single_input(config: &RunConfig) -> Result<(String, LatticeSimplex), CliError> {
    match config.inputs.as_slice() {
        [path] => Ok((path.display().to_string(), load_simplex(path)?)),
        [] => Err(CliError::Usage(format!("`{}` needs a simplex file", config.check))),
        _ => Err(CliError::Usage(format!("`{}` takes exactly one simplex file", config.check))),
    }
}

fn vertices_text(s: &LatticeSimplex) -> String {
    let v: Vec<String> = s.vertices().iter().map(|v| format_int_vector(v)).collect();
    v.join(" ")
}

fn rational_point(config: &RunConfig, s: &LatticeSimplex) -> Result<Option<Vec<Rat>>, CliError> {
    let Some(text) = &config.point else {
        return Ok(None);
    };
    let p = parse_point(text)?;
    if p.len() != s.ambient_dim() {
        return Err(CliError::Usage(format!(
            "--point has {} coordinates, the simplex lives in dimension {}",
            p.len(),
            s.ambient_dim()
        )));
    }
    Ok(Some(p))
}

/// `--point` if given (it must be integral), otherwise the lexicographically
/// smallest interior lattice point.
fn lattice_point(config: &RunConfig, s: &LatticeSimplex) -> Result<IntVector, CliError> {
    if let Some(p) = rational_point(config, s)? {
        if p.iter().any(|c| !c.is_integer()) {
            return Err(CliError::Usage("--point must be a lattice point".into()));
        }
        return Ok(p.into_iter().map(|c| c.to_integer()).collect());
    }
    let census = enumerate_interior(s, config.cap)?;
    census
        .points
        .into_iter()
        .next()
        .ok_or(CliError::Math(Error::NotOnePoint { interior: 0 }))
}

fn base_report(check: &str, path: &str, s: &LatticeSimplex) -> Report {
    Report::new(check)
        .input("simplex", path)
        .input("vertices", vertices_text(s))
}

fn partition_label(p: &Partition) -> String {
    format!("I={} J={}", format_index_set(p.i()), format_index_set(p.j()))
}

fn face_label(f: &FaceIndex) -> String {
    format!("I={}", format_index_set(f.removed()))
}

fn rat_slack(value: &Rat, bound: &Rat) -> Option<String> {
    Some((value - bound).to_string())
}

struct Verify;

impl Check for Verify {
    fn name(&self) -> &'static str {
        "verify"
    }

    fn about(&self) -> &'static str {
        "membership: exactly one interior lattice point"
    }

    fn run(&self, config: &RunConfig) -> Result<Vec<Report>, CliError> {
        let (path, s) = single_input(config)?;
        let census = enumerate_interior(&s, config.cap)?;
        let mut r = base_report("verify", &path, &s);
        r.push(Entry::verdict("interior points", census.len(), census.len() == 1));
        if let [p] = census.points.as_slice() {
            r.push(Entry::info("interior point", format_int_vector(p)));
            let beta = barycentric_of_int(&s, p)?;
            r.push(Entry::info("barycentric", format_rat_vector(beta.coords())));
        } else {
            let listed: Vec<String> = census.points.iter().map(|p| format_int_vector(p)).collect();
            let listed = if listed.is_empty() { "none".to_string() } else { listed.join(" ") };
            r.push(Entry::info("interior list", listed));
        }
        r.push(Entry::info("normalized volume", normalized_volume(&s)));
        r.push(Entry::info("lattice points", count_closure_points(&s, config.cap)?));
        Ok(vec![r])
    }
}

struct Bary;

impl Check for Bary {
    fn name(&self) -> &'static str {
        "bary"
    }

    fn about(&self) -> &'static str {
        "barycentric coordinates of --point"
    }

    fn run(&self, config: &RunConfig) -> Result<Vec<Report>, CliError> {
        let (path, s) = single_input(config)?;
        let x = rational_point(config, &s)?
            .ok_or_else(|| CliError::Usage("`bary` needs --point".into()))?;
        let beta = barycentric_of(&s, &x)?;
        let mut r = base_report("bary", &path, &s).input("point", format_rat_vector(&x));
        r.push(Entry::info("barycentric", format_rat_vector(beta.coords())));
        r.push(Entry::verdict(
            "sum",
            beta.coords().iter().sum::<Rat>(),
            beta.coords().iter().sum::<Rat>().is_one(),
        ));
        let zeros: Vec<usize> = (0..beta.len()).filter(|&i| beta[i].is_zero()).collect();
        let position = if beta.coords().iter().any(Signed::is_negative) {
            "outside".to_string()
        } else if zeros.is_empty() {
            "interior".to_string()
        } else {
            format!("boundary, face I={}", format_index_set(&zeros))
        };
        r.push(Entry::info("position", position));
        let other = barycentric_by_inverse(&s, &x)?;
        r.push(Entry::verdict("matrix inverse agrees", other == beta, other == beta));
        Ok(vec![r])
    }
}

struct Ineq;

impl Check for Ineq {
    fn name(&self) -> &'static str {
        "ineq"
    }

    fn about(&self) -> &'static str {
        "sum/product inequality for every partition, and the reduced system"
    }

    fn run(&self, config: &RunConfig) -> Result<Vec<Report>, CliError> {
        let (path, s) = single_input(config)?;
        let p = lattice_point(config, &s)?;
        let beta = barycentric_of_int(&s, &p)?;
        if !beta.is_interior() {
            return Err(CliError::Usage(format!("{} is not interior", format_int_vector(&p))));
        }
        let mut r = base_report("ineq", &path, &s)
            .input("point", format_int_vector(&p))
            .input("barycentric", format_rat_vector(beta.coords()));
        for rec in check_all_partitions(&beta).records {
            r.push(Entry::check(
                format!("partition {}", partition_label(&rec.partition)),
                &rec.lhs,
                &rec.rhs,
                Some(rec.slack.to_string()),
                !rec.slack.is_negative(),
            ));
        }
        let sb = SortedBary::new(&beta);
        r = r.input("sorted order", format_index_set(&sb.perm));
        for (j, slack) in reduced_system(&sb).iter().enumerate() {
            r.push(Entry::verdict(format!("reduced {j}"), slack, !slack.is_negative()));
        }
        for t in 1..=sb.dim() {
            let part = sb.cut(t)?;
            r.push(Entry::info(
                format!("det B {}", partition_label(&part)),
                det_b(&beta, &part)?,
            ));
        }
        Ok(vec![r])
    }
}

struct Bounds;

impl Check for Bounds {
    fn name(&self) -> &'static str {
        "bounds"
    }

    fn about(&self) -> &'static str {
        "coordinate bounds, face volume bounds, section law, Blichfeldt"
    }

    fn run(&self, config: &RunConfig) -> Result<Vec<Report>, CliError> {
        let (path, s) = single_input(config)?;
        let (p, beta) = onepoint_beta(&s, config.cap)?;
        let d = s.dim();
        let base = || base_report("bounds", &path, &s).input("point", format_int_vector(&p));

        let mut coords = base();
        coords.check = "bounds/coordinates".into();
        let report = beta_lower_bounds(&beta);
        for b in &report.bounds {
            coords.push(Entry::check(
                format!("beta_({}) at vertex {}", b.index, b.vertex),
                &b.beta,
                &b.bound,
                rat_slack(&b.beta, &b.bound),
                b.pass,
            ));
        }
        for rel in &report.relaxed {
            coords.push(Entry::check(
                format!("relaxed {}", rel.j),
                &rel.lhs,
                &rel.rhs,
                rat_slack(&rel.lhs, &rel.rhs),
                rel.pass,
            ));
        }

        let mut faces = base();
        faces.check = "bounds/face-volume".into();
        for c in all_face_volume_checks(&s, &beta)? {
            faces.push(Entry::check(
                format!("{} N={}", face_label(&c.face), format_index_set(&c.n)),
                &c.volume,
                &c.bound,
                Some(c.slack.to_string()),
                c.pass,
            ));
        }

        let mut sections = base();
        sections.check = "bounds/sections".into();
        for fi in FaceIndex::all(s.vertex_count()) {
            let c = section_volume_identity_check(&s, &beta, &fi)?;
            sections.push(Entry::check(
                format!("section {}", face_label(&fi)),
                &c.section_volume,
                &c.predicted,
                None,
                c.pass,
            ));
        }
        let pbox = ParallelotopeBox::new(&s, &beta, &p, 0)?;
        let inside = pbox.interior_points(&s, config.cap)?;
        let minkowski = Rat::from_integer(num_traits::pow(BigInt::from(2), d));
        sections.push(Entry::check(
            "parallelotope volume",
            &pbox.volume,
            &minkowski,
            rat_slack(&minkowski, &pbox.volume),
            pbox.within_minkowski(d),
        ));
        sections.push(Entry::verdict("parallelotope interior points", inside.len(), inside == vec![p.clone()]));

        let mut blich = base();
        blich.check = "bounds/blichfeldt".into();
        for (fi, c) in blichfeldt_all_faces(&s, config.cap)? {
            blich.push(Entry::check(
                format!("face {}", face_label(&fi)),
                c.points,
                &c.bound,
                Some(c.slack.to_string()),
                c.pass,
            ));
        }
        Ok(vec![coords, faces, sections, blich])
    }
}

struct Chain;

impl Check for Chain {
    fn name(&self) -> &'static str {
        "chain"
    }

    fn about(&self) -> &'static str {
        "face chain upper bounds for a file, or the Sylvester lower chain for --dim"
    }

    fn run(&self, config: &RunConfig) -> Result<Vec<Report>, CliError> {
        if config.inputs.is_empty() {
            let d = config
                .dim
                .ok_or_else(|| CliError::Usage("`chain` needs a simplex file or --dim".into()))?;
            let mut r = Report::new("chain/lower").input("dim", d);
            for l in zpw_chain_lower_check(d, config.cap)? {
                r.push(Entry::check(
                    format!("G_{} volume", l.level),
                    &l.volume,
                    &l.volume_bound,
                    rat_slack(&l.volume, &l.volume_bound),
                    l.volume_pass,
                ));
                r.push(Entry::verdict(
                    format!("G_{} volume = (t_{} - 1)/{}!", l.level, l.level + 1, l.level),
                    &l.product_volume,
                    l.identity_holds,
                ));
                let squared = BigInt::from(l.points) * BigInt::from(l.points);
                r.push(Entry::check(
                    format!("G_{} points squared", l.level),
                    &squared,
                    &l.squared_card_bound,
                    Some((&squared - &l.squared_card_bound).to_string()),
                    l.card_pass,
                ));
            }
            return Ok(vec![r]);
        }
        let (path, s) = single_input(config)?;
        let chain = chain_decompose(&s, config.cap)?;
        let mut r = base_report("chain", &path, &s)
            .input("point", format_int_vector(&chain.point))
            .input("sorted order", format_index_set(&chain.sorted.perm));
        for l in &chain.levels {
            r.push(Entry::info(
                format!("G_{} vertices", l.level),
                format_index_set(l.face.kept()),
            ));
            r.push(Entry::check(
                format!("G_{} volume", l.level),
                &l.volume,
                &l.volume_bound,
                rat_slack(&l.volume_bound, &l.volume),
                l.volume_pass,
            ));
            let points = BigInt::from(l.points);
            r.push(Entry::check(
                format!("G_{} points", l.level),
                &points,
                &l.card_bound,
                Some((&l.card_bound - &points).to_string()),
                l.card_pass,
            ));
        }
        r.push(Entry::verdict("nested", chain.nested, chain.nested));
        Ok(vec![r])
    }
}

struct Cert;

impl Check for Cert {
    fn name(&self) -> &'static str {
        "cert"
    }

    fn about(&self) -> &'static str {
        "certificate for a second interior lattice point"
    }

    fn run(&self, config: &RunConfig) -> Result<Vec<Report>, CliError> {
        let (path, s) = single_input(config)?;
        let p = lattice_point(config, &s)?;
        let mut r = base_report("cert", &path, &s).input("point", format_int_vector(&p));
        match second_interior_point(&s, &p, config.cap)? {
            Some(c) => {
                r.push(Entry::info("det B", &c.det_b));
                r.push(Entry::verdict("q interior", format_int_vector(&c.q), c.q_interior));
                r.push(Entry::verdict("q differs from p", c.q_distinct, c.q_distinct));
                let census = enumerate_interior(&s, config.cap)?;
                let listed = census.points.contains(&c.q);
                r.push(Entry::verdict("q found by enumeration", listed, listed));
                r.certificate = Some(CertificateDoc::from(&c));
            }
            None => r.push(Entry::info("certificate", "absent: det B >= 1 for every cut")),
        }
        Ok(vec![r])
    }
}

struct Gen;

fn generated_report(g: &GeneratedSimplex) -> Report {
    let mut r = Report::new(format!("gen/{}", g.name)).input("vertices", vertices_text(&g.simplex));
    r.push(Entry::info("interior point", format_int_vector(&g.interior_point)));
    r.push(Entry::info("normalized volume", normalized_volume(&g.simplex)));
    if let Ok(beta) = barycentric_of_int(&g.simplex, &g.interior_point) {
        r.push(Entry::info("barycentric", format_rat_vector(beta.coords())));
    }
    r.push(Entry::verdict("verified", g.verified, g.verified));
    r
}

impl Check for Gen {
    fn name(&self) -> &'static str {
        "gen"
    }

    fn about(&self) -> &'static str {
        "Sylvester table, Sylvester simplex and canonical examples for --dim"
    }

    fn run(&self, config: &RunConfig) -> Result<Vec<Report>, CliError> {
        let d = config
            .dim
            .ok_or_else(|| CliError::Usage("`gen` needs --dim".into()))?;
        if d == 0 {
            return Err(CliError::Usage("--dim must be at least 1".into()));
        }
        let seq = sylvester(d + 1);
        let checks = seq.check();
        let mut table = Report::new("gen/sylvester").input("terms", d + 1);
        for (k, t) in seq.terms().iter().enumerate() {
            table.push(Entry::info(format!("t_{}", k + 1), t));
        }
        table.push(Entry::verdict("product form", checks.product_form, checks.product_form));
        table.push(Entry::verdict("growth bounds", checks.bounds, checks.bounds));
        table.push(Entry::verdict("unit partition", checks.unit_partition, checks.unit_partition));

        let cap = config.cap;
        let mut generated = vec![zpw_simplex(d, Verification::Verify, cap)?];
        generated.extend(canonical_examples(d, Verification::Verify, cap)?);
        if let Some(dir) = &config.out {
            std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
            for g in &generated {
                let file = dir.join(format!("{}.toml", g.name));
                std::fs::write(&file, render_simplex(&g.simplex)).map_err(|e| io_error(&file, e))?;
            }
        }
        let mut reports = vec![table];
        reports.extend(generated.iter().map(generated_report));
        Ok(reports)
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

struct Atlas2d;

impl Check for Atlas2d {
    fn name(&self) -> &'static str {
        "atlas2d"
    }

    fn about(&self) -> &'static str {
        "every one-point lattice triangle class with vertices in [-radius, radius]^2"
    }

    fn run(&self, config: &RunConfig) -> Result<Vec<Report>, CliError> {
        let atlas = enumerate_onepoint_triangles_2d(config.radius, config.cap)?;
        let mut r = Report::new("atlas2d")
            .input("radius", config.radius)
            .input("twice-area search limit", atlas.twice_area_limit);
        r.push(Entry::info("triangles", atlas.triangles));
        r.push(Entry::info("classes", atlas.classes.len()));
        if let Some(max) = atlas.max_volume() {
            let bound = planar_volume_bound();
            r.push(Entry::check(
                "max normalized volume",
                &max.volume,
                &bound,
                rat_slack(&bound, &max.volume),
                max.volume <= bound,
            ));
        }
        if let Some(points) = atlas.max_points() {
            r.push(Entry::info("max lattice points", points));
        }
        for (k, c) in atlas.classes.iter().enumerate() {
            r.push(Entry::verdict(format!("class {k} bounds"), c.pass(), c.pass()));
        }
        r.atlas = atlas.classes.iter().map(AtlasRecord::from).collect();
        Ok(vec![r])
    }
}

struct CorpusReport;

const INVARIANCE_MAPS: usize = 20;

fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..d + 2 {
        let a = rng.random_range(0..d);
        if d > 1 && rng.random_bool(0.7) {
            let b = (a + rng.random_range(1..d)) % d;
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            let source_row = u[a].clone();
            for (t, v) in u[b].iter_mut().zip(&source_row) {
                *t += sign * v;
            }
        } else {
            u[a].iter_mut().for_each(|v| *v = -*v);
        }
    }
    u
}

fn apply(u: &[Vec<i64>], shift: &[i64], x: &[BigInt]) -> IntVector {
    u.iter()
        .zip(shift)
        .map(|(row, s)| {
            row.iter()
                .zip(x)
                .map(|(a, b)| BigInt::from(*a) * b)
                .sum::<BigInt>()
                + s
        })
        .collect()
}

/// Volume, interior count and sorted coordinates under seeded random
/// unimodular affine maps.
fn invariance(
    members: &[(String, LatticeSimplex)],
    seed: u64,
    cap: u64,
) -> Result<(usize, Vec<String>), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut maps = 0;
    for (name, s) in members.iter().filter(|(_, s)| s.dim() <= 3) {
        let (p, beta) = onepoint_beta(s, cap)?;
        let d = s.dim();
        for _ in 0..INVARIANCE_MAPS {
            let u = random_unimodular(&mut rng, d);
            let shift: Vec<i64> = (0..d).map(|_| rng.random_range(-5..=5)).collect();
            let image = LatticeSimplex::new(s.vertices().iter().map(|v| apply(&u, &shift, v)).collect())?;
            let q = apply(&u, &shift, &p);
            let image_beta = barycentric_of_int(&image, &q)?;
            let census = enumerate_interior(&image, cap)?;
            maps += 1;
            let ok = normalized_volume(&image) == normalized_volume(s)
                && census.points == vec![q]
                && SortedBary::new(&image_beta).sorted == SortedBary::new(&beta).sorted;
            if !ok {
                failures.push(name.clone());
            }
        }
    }
    Ok((maps, failures))
}

impl Check for CorpusReport {
    fn name(&self) -> &'static str {
        "report"
    }

    fn about(&self) -> &'static str {
        "largest volume and smallest coordinate over a corpus, with seeded invariance checks"
    }

    fn run(&self, config: &RunConfig) -> Result<Vec<Report>, CliError> {
        let mut members: Vec<(String, LatticeSimplex)> = Vec::new();
        let source = if config.inputs.is_empty() {
            let d = config
                .dim
                .ok_or_else(|| CliError::Usage("`report` needs simplex files or --dim".into()))?;
            if d == 0 {
                return Err(CliError::Usage("--dim must be at least 1".into()));
            }
            let cap = config.cap;
            let mut gens = vec![zpw_simplex(d, Verification::Verify, cap)?];
            gens.extend(canonical_examples(d, Verification::Verify, cap)?);
            members.extend(gens.into_iter().map(|g| (g.name, g.simplex)));
            if d == 2 {
                let atlas = enumerate_onepoint_triangles_2d(config.radius, cap)?;
                members.extend(
                    atlas
                        .classes
                        .into_iter()
                        .enumerate()
                        .map(|(k, c)| (format!("atlas-{k}"), c.form.simplex)),
                );
            }
            format!("generated, dim {d}")
        } else {
            for path in &config.inputs {
                members.push((path.display().to_string(), load_simplex(path)?));
            }
            "files".to_string()
        };
        let corpus: Vec<LatticeSimplex> = members.iter().map(|(_, s)| s.clone()).collect();
        let summary = vd_cd_report(&corpus, config.cap)?;
        let mut r = Report::new("report")
            .input("corpus", source)
            .input("members", summary.members)
            .input("seed", config.seed);
        r.push(Entry::check(
            format!("max volume ({})", members[summary.max_volume_member].0),
            &summary.max_volume,
            &summary.volume_bound,
            rat_slack(&summary.volume_bound, &summary.max_volume),
            summary.max_volume <= summary.volume_bound,
        ));
        r.push(Entry::check(
            format!("min coordinate ({})", members[summary.min_beta_member].0),
            &summary.min_beta,
            &summary.beta_bound,
            rat_slack(&summary.min_beta, &summary.beta_bound),
            summary.min_beta >= summary.beta_bound,
        ));
        r.push(Entry::info(
            "alternative coordinate bound (comparison only)",
            &summary.alternative_beta_bound,
        ));
        let (maps, failures) = invariance(&members, config.seed, config.cap)?;
        r.push(Entry::verdict(
            format!("invariance under {maps} seeded unimodular maps"),
            if failures.is_empty() {
                "holds".to_string()
            } else {
                format!("broken for {}", failures.join(", "))
            },
            failures.is_empty(),
        ));
        for (name, s) in &members {
            let (p, beta) = onepoint_beta(s, config.cap)?;
            let ineq = check_all_partitions(&beta);
            let theorem = ineq.pass && second_interior_point(s, &p, config.cap)?.is_none();
            r.push(Entry::verdict(
                format!("{name} partitions"),
                ineq.min_slack().map_or_else(|| "none".to_string(), ToString::to_string),
                theorem,
            ));
        }
        Ok(vec![r])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use onepoint::BarycentricVector;

    #[test]
    fn standard_registry_has_every_check() {
        let r = Registry::standard();
        assert_eq!(
            r.names(),
            vec!["verify", "bary", "ineq", "bounds", "chain", "cert", "gen", "atlas2d", "report"]
        );
        assert!(r.iter().all(|c| !c.about().is_empty()));
    }

    #[test]
    #[should_panic(expected = "registered twice")]
    fn duplicate_names_rejected() {
        let mut r = Registry::standard();
        r.register(Box::new(Verify));
    }

    #[test]
    fn partition_labels() {
        let p = Partition::new(3, &[1]).unwrap();
        assert_eq!(partition_label(&p), "I={1} J={0,2}");
        let b = BarycentricVector::new(vec![Rat::new(1.into(), 2.into()); 2]).unwrap();
        assert!(check_all_partitions(&b).pass);
    }
}
