//! SVG drawings: the annulus cell complex `A_p` and the branched annulus
//! `B_p`, both embedded in the unit disk. Critical direction sets are colored
//! by argument, critical level sets are greyscale by height, and the puncture
//! at each root is enlarged to a small boundary circle.

use num_complex::Complex64;
use std::fmt::Write as _;

use crate::annulus::{disk_radius_for_height, height_for_radius, AnnulusComplex};
use crate::lifting::{newton_snap, DirectionTrace, LevelTrace, StepPolicy, TracedStrand};
use crate::poly::PolyContext;
use crate::{Error, Result};

pub const DEFAULT_PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#17becf",
];

#[derive(Debug, Clone)]
pub struct RenderConfig {
    /// Puncture-enlargement outer radius; must be evenly covered, i.e. below
    /// half the smallest critical value modulus.
    pub alpha: f64,
    /// Radius the puncture is inflated to; `0 < beta < alpha`.
    pub beta: f64,
    pub samples_per_curve: usize,
    pub palette: Vec<String>,
    pub canvas_size: u32,
}

impl RenderConfig {
    /// Defaults scaled to the polynomial: `alpha = 0.4 x min |cvl|`,
    /// `beta = alpha / 2`.
    pub fn for_context(ctx: &PolyContext) -> Self {
        let min_cv = ctx
            .crit
            .critical_values
            .entries
            .iter()
            .map(|e| e.value.norm())
            .fold(f64::INFINITY, f64::min);
        RenderConfig {
            alpha: 0.4 * min_cv,
            beta: 0.2 * min_cv,
            samples_per_curve: 512,
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
            canvas_size: 1000,
        }
    }

    pub fn validate(&self, ctx: &PolyContext) -> Result<()> {
        let min_cv = ctx
            .crit
            .critical_values
            .entries
            .iter()
            .map(|e| e.value.norm())
            .fold(f64::INFINITY, f64::min);
        if !(self.beta > 0.0 && self.beta < self.alpha) {
            return Err(Error::InvalidRenderConfig {
                detail: "need 0 < beta < alpha".into(),
            });
        }
        if self.alpha >= 0.5 * min_cv {
            return Err(Error::InvalidRenderConfig {
                detail: format!(
                    "alpha {} must stay below half the smallest critical value modulus {}",
                    self.alpha,
                    0.5 * min_cv
                ),
            });
        }
        if self.samples_per_curve < 2 {
            return Err(Error::InvalidRenderConfig {
                detail: "samples_per_curve must be at least 2".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RenderStats {
    pub max_point_norm: f64,
    pub root_circles: usize,
    pub direction_families: usize,
    pub level_families: usize,
    pub latitude_circles: usize,
    pub radial_segments: usize,
    pub value_dots: usize,
    pub path_elements: usize,
}

#[derive(Debug, Clone)]
pub struct SvgDocument {
    pub content: String,
    pub stats: RenderStats,
}

/// Traces backing a branched-annulus drawing: the root circles (the level set
/// at radius beta) and regular traces offset to either side of each critical
/// longitude and latitude.
#[derive(Debug, Clone)]
pub struct RenderTraces {
    pub root_circles: LevelTrace,
    pub direction_pairs: Vec<(DirectionTrace, DirectionTrace)>,
    pub level_pairs: Vec<(LevelTrace, LevelTrace)>,
}

/// Trace everything a branched-annulus drawing needs. Critical curves are
/// approximated by regular traces at offsets of 1e-3 of the relevant gap;
/// the strands slow down near the branch points but stay regular.
pub fn sample_render_traces(
    ctx: &PolyContext,
    cells: &AnnulusComplex,
    cfg: &RenderConfig,
    policy: &StepPolicy,
    parallel: bool,
) -> Result<RenderTraces> {
    cfg.validate(ctx)?;
    let root_circles = crate::lifting::trace_level_circle(
        ctx,
        cfg.beta,
        height_for_radius(cfg.beta),
        policy,
        parallel,
    )?;
    if root_circles.components.len() != ctx.degree() {
        return Err(Error::MissingTraces {
            detail: format!(
                "expected {} root circles, traced {}",
                ctx.degree(),
                root_circles.components.len()
            ),
        });
    }

    let delta_u = 1e-3 * cells.min_argument_gap();
    let direction_pairs = cells
        .critical_arguments
        .iter()
        .map(|&u| {
            let before = crate::lifting::trace_direction_ray(ctx, u - delta_u, policy, parallel)?;
            let after = crate::lifting::trace_direction_ray(ctx, u + delta_u, policy, parallel)?;
            Ok((before, after))
        })
        .collect::<Result<Vec<_>>>()?;

    let delta_t = 1e-3 * cells.min_height_gap();
    let level_pairs = cells
        .critical_heights
        .iter()
        .map(|&t| {
            let below = crate::lifting::trace_level_circle(
                ctx,
                crate::annulus::radius_for_height(t - delta_t),
                t - delta_t,
                policy,
                parallel,
            )?;
            let above = crate::lifting::trace_level_circle(
                ctx,
                crate::annulus::radius_for_height(t + delta_t),
                t + delta_t,
                policy,
                parallel,
            )?;
            Ok((below, above))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(RenderTraces {
        root_circles,
        direction_pairs,
        level_pairs,
    })
}

/// Which curve families a branched drawing includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchedStyle {
    /// Direction and level families.
    Full,
    /// Level families only: the union of the critical level sets, i.e. the
    /// cactus diagrams.
    CactiOnly,
}

struct Canvas {
    size: f64,
    scale: f64,
    stats: RenderStats,
    body: String,
}

impl Canvas {
    fn new(size: u32) -> Self {
        Canvas {
            size: size as f64,
            scale: 0.48 * size as f64,
            stats: RenderStats::default(),
            body: String::new(),
        }
    }

    fn observe(&mut self, disk_point: Complex64) -> (f64, f64) {
        let norm = disk_point.norm();
        if norm > self.stats.max_point_norm {
            self.stats.max_point_norm = norm;
        }
        (
            self.size / 2.0 + disk_point.re * self.scale,
            self.size / 2.0 - disk_point.im * self.scale,
        )
    }

    fn circle(&mut self, center: Complex64, disk_radius: f64, style: &str) {
        let (cx, cy) = self.observe(center);
        let _ = writeln!(
            self.body,
            "<circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"{:.3}\" {style}/>",
            disk_radius * self.scale
        );
    }

    fn path(&mut self, points: &[Complex64], closed: bool, style: &str) {
        if points.len() < 2 {
            return;
        }
        let mut data = String::new();
        for (i, &p) in points.iter().enumerate() {
            let (x, y) = self.observe(p);
            let _ = write!(data, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" });
        }
        if closed {
            data.push('Z');
        }
        let _ = writeln!(self.body, "<path d=\"{}\" {style}/>", data.trim_end());
        self.stats.path_elements += 1;
    }

    fn dot(&mut self, center: Complex64, radius_px: f64, style: &str) {
        let (cx, cy) = self.observe(center);
        let _ = writeln!(
            self.body,
            "<circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"{radius_px:.3}\" {style}/>"
        );
    }

    fn label(&mut self, center: Complex64, dx: f64, text: &str) {
        let (cx, cy) = self.observe(center);
        let _ = writeln!(
            self.body,
            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"14\" font-family=\"monospace\">{text}</text>",
            cx + dx,
            cy - 6.0
        );
    }

    fn group_open(&mut self, attrs: &str) {
        let _ = writeln!(self.body, "<g {attrs}>");
    }

    fn group_close(&mut self) {
        self.body.push_str("</g>\n");
    }

    fn finish(self) -> SvgDocument {
        let size = self.size as u32;
        let content = format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n<rect width=\"{size}\" height=\"{size}\" fill=\"#ffffff\"/>\n{}</svg>\n",
            self.body
        );
        SvgDocument {
            content,
            stats: self.stats,
        }
    }
}

fn greyscale(index: usize, total: usize) -> String {
    let level = if total <= 1 {
        60
    } else {
        40 + (140 * index) / (total - 1)
    };
    format!("#{level:02x}{level:02x}{level:02x}")
}

fn hue(cfg: &RenderConfig, index: usize) -> &str {
    &cfg.palette[index % cfg.palette.len()]
}

/// Draw the annulus complex: latitude circles at disk radius
/// `sqrt((1+t)/2)`, radial critical longitudes, the two boundary circles and
/// a dot per critical value.
pub fn render_annulus_complex(
    cells: &AnnulusComplex,
    critical_values: &[Complex64],
    cfg: &RenderConfig,
) -> SvgDocument {
    let mut canvas = Canvas::new(cfg.canvas_size);
    let origin = Complex64::new(0.0, 0.0);
    let inner = cfg.beta / (cfg.beta * cfg.beta + 1.0).sqrt();

    canvas.circle(
        origin,
        1.0,
        "fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"",
    );
    canvas.circle(
        origin,
        inner,
        "fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"",
    );

    let ell = cells.ell();
    for (i, &t) in cells.critical_heights.iter().enumerate() {
        let style = format!(
            "fill=\"none\" stroke=\"{}\" stroke-width=\"2\"",
            greyscale(i, ell)
        );
        canvas.circle(origin, disk_radius_for_height(t), &style);
        canvas.stats.latitude_circles += 1;
    }

    for (j, &u) in cells.critical_arguments.iter().enumerate() {
        let dir = Complex64::from_polar(1.0, u);
        let style = format!(
            "fill=\"none\" stroke=\"{}\" stroke-width=\"2\"",
            hue(cfg, j)
        );
        canvas.path(&[dir * inner, dir], false, &style);
        canvas.stats.radial_segments += 1;
    }

    for (i, &v) in critical_values.iter().enumerate() {
        let point = crate::annulus::to_annulus(v).expect("nonzero critical value");
        let disk = Complex64::from_polar(disk_radius_for_height(point.height), point.argument);
        let style = format!("fill=\"{}\"", hue(cfg, cells.value_argument_index[i]));
        canvas.dot(disk, 6.0, &style);
        canvas.stats.value_dots += 1;
    }

    canvas.finish()
}

/// Enlarge the punctures: inside `|p| < alpha`, push the point outward along
/// its own sheet so the root neighborhoods open into disks of radius beta.
fn enlarge(ctx: &PolyContext, cfg: &RenderConfig, z: Complex64) -> Complex64 {
    let w = ctx.poly.eval(z);
    let rho = w.norm();
    if rho >= cfg.alpha || rho == 0.0 {
        return z;
    }
    let epsilon = cfg.beta / cfg.alpha;
    let target = w * ((1.0 - epsilon) + epsilon * cfg.alpha / rho);
    newton_snap(
        &ctx.poly,
        target,
        z,
        0.5 * (1.0 + z.norm()),
        1e-10 * (1.0 + target.norm()),
    )
    .unwrap_or(z)
}

fn resample(points: &[Complex64], n: usize) -> Vec<Complex64> {
    if points.len() <= 1 {
        return points.to_vec();
    }
    (0..n)
        .map(|i| points[(i * (points.len() - 1)) / (n - 1).max(1)])
        .collect()
}

fn strand_points(ctx: &PolyContext, cfg: &RenderConfig, strand: &TracedStrand) -> Vec<Complex64> {
    resample(&strand.points().collect::<Vec<_>>(), cfg.samples_per_curve)
        .into_iter()
        .map(|z| crate::annulus::to_disk(enlarge(ctx, cfg, z)))
        .collect()
}

/// Draw the branched annulus in the unit disk.
pub fn render_branched_annulus(
    ctx: &PolyContext,
    cells: &AnnulusComplex,
    traces: &RenderTraces,
    cfg: &RenderConfig,
    style: BranchedStyle,
) -> Result<SvgDocument> {
    cfg.validate(ctx)?;
    if traces.direction_pairs.len() != cells.k() || traces.level_pairs.len() != cells.ell() {
        return Err(Error::MissingTraces {
            detail: format!(
                "have {} direction and {} level pairs for k = {}, ell = {}",
                traces.direction_pairs.len(),
                traces.level_pairs.len(),
                cells.k(),
                cells.ell()
            ),
        });
    }

    let mut canvas = Canvas::new(cfg.canvas_size);
    let origin = Complex64::new(0.0, 0.0);
    canvas.circle(
        origin,
        1.0,
        "fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"",
    );

    // Critical vertices in disk coordinates, for the joins and markers.
    let critical_disk: Vec<Complex64> = ctx
        .crit
        .critical_points
        .entries
        .iter()
        .map(|e| crate::annulus::to_disk(enlarge(ctx, cfg, e.value)))
        .collect();

    // Greyscale level families, bottom to top.
    for (i, (below, above)) in traces.level_pairs.iter().enumerate() {
        let stroke = greyscale(i, cells.ell());
        canvas.group_open(&format!(
            "id=\"level-family-{i}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\""
        ));
        for trace in [below, above] {
            for comp in &trace.components {
                let points: Vec<Complex64> = resample(&comp.curve, cfg.samples_per_curve)
                    .into_iter()
                    .map(|z| crate::annulus::to_disk(enlarge(ctx, cfg, z)))
                    .collect();
                canvas.path(&points, true, "");
            }
        }
        canvas.stats.level_families += 1;
        canvas.group_close();
    }

    // Colored direction families, one per critical argument.
    if style == BranchedStyle::Full {
        for (j, (before, after)) in traces.direction_pairs.iter().enumerate() {
            let stroke = hue(cfg, j).to_string();
            canvas.group_open(&format!(
                "id=\"direction-family-{j}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\""
            ));
            for trace in [before, after] {
                for strand in &trace.strands {
                    let points = strand_points(ctx, cfg, strand);
                    // Join the strand to any critical vertex of this argument
                    // it grazes.
                    for (cp, &vertex) in critical_disk.iter().enumerate() {
                        let value_index = ctx.crit.value_of[cp];
                        if cells.value_argument_index[value_index] != j {
                            continue;
                        }
                        if let Some(closest) = points
                            .iter()
                            .min_by(|a, b| {
                                (*a - vertex)
                                    .norm()
                                    .partial_cmp(&(*b - vertex).norm())
                                    .expect("finite points")
                            })
                            .copied()
                        {
                            if (closest - vertex).norm() < 0.08 {
                                canvas.path(&[closest, vertex], false, "");
                            }
                        }
                    }
                    canvas.path(&points, false, "");
                }
            }
            canvas.stats.direction_families += 1;
            canvas.group_close();
        }
    }

    // Root circles on top, with labels.
    canvas.group_open("id=\"root-circles\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"");
    for comp in &traces.root_circles.components {
        let points: Vec<Complex64> = resample(&comp.curve, cfg.samples_per_curve)
            .into_iter()
            .map(crate::annulus::to_disk)
            .collect();
        canvas.path(&points, true, "");
        canvas.stats.root_circles += 1;
    }
    canvas.group_close();

    canvas.group_open("id=\"markers\"");
    for (i, &root) in ctx.roots.iter().enumerate() {
        let disk = crate::annulus::to_disk(root);
        canvas.dot(disk, 3.0, "fill=\"#000000\"");
        canvas.label(disk, 6.0, &format!("r{i}"));
    }
    for (i, &vertex) in critical_disk.iter().enumerate() {
        canvas.dot(vertex, 3.0, "fill=\"#d62728\"");
        canvas.label(vertex, 6.0, &format!("b{i}"));
    }
    canvas.group_close();

    Ok(canvas.finish())
}
