//! File emission: CSV tables, minimal SVG plots, and run manifests.
//!
//! CSV is RFC-4180 style with a header row, '\n' newlines, dot decimal
//! separator, and fixed scientific notation, so files are locale-independent
//! and byte-stable across runs. SVG 1.1 is emitted directly (polylines,
//! axes, arrow glyphs); no plotting dependency.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::bohm::Trajectory;
use crate::config::ExperimentConfig;
use crate::constants::PhysicalConstants;
use crate::density::DensityProfile;
use crate::ensemble::{EnsembleResult, Histogram};
use crate::error::Result;

/// Formats one float in fixed scientific notation.
pub fn num(v: f64) -> String {
    format!("{v:.12e}")
}

/// Density profile CSV: header comment carries t and y.
pub fn density_csv(profile: &DensityProfile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# t = {} s, y = {} m", num(profile.t), num(profile.y));
    s.push_str("z_m,rho_per_m\n");
    for (z, rho) in profile.grid_z.iter().zip(&profile.values) {
        let _ = writeln!(s, "{},{}", num(*z), num(*rho));
    }
    s
}

/// Trajectory CSV: one row per recorded step.
pub fn trajectory_csv(trajectory: &Trajectory) -> String {
    let mut s = String::new();
    let a = &trajectory.atom;
    let _ = writeln!(
        s,
        "# theta0 = {} rad, phi0 = {} rad, z0 = {} m, x0 = {} m, outcome = {:?}",
        num(a.theta0),
        num(a.phi0),
        num(a.z0),
        num(a.x0),
        trajectory.outcome
    );
    s.push_str("t_s,z_m,x_m,cos_theta\n");
    for p in &trajectory.points {
        let _ = writeln!(s, "{},{},{},{}", num(p.t), num(p.z), num(p.x), num(p.cos_theta));
    }
    s
}

/// Per-atom impact table.
pub fn impacts_csv(result: &EnsembleResult) -> String {
    let mut s = String::from("theta0_rad,phi0_rad,z0_m,x0_m,z_impact_m,outcome\n");
    for i in &result.impacts {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{:?}",
            num(i.atom.theta0),
            num(i.atom.phi0),
            num(i.atom.z0),
            num(i.atom.x0),
            num(i.z_impact),
            i.outcome
        );
    }
    s
}

/// Histogram table: bin edges and normalized masses.
pub fn histogram_csv(histogram: &Histogram) -> String {
    let mut s = String::from("z_lo_m,z_hi_m,mass\n");
    for (i, mass) in histogram.masses.iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{}",
            num(histogram.edges[i]),
            num(histogram.edges[i + 1]),
            num(*mass)
        );
    }
    s
}

/// Manifest written alongside every output set; a run is replayable from it.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub seed: Option<u64>,
    pub parameters: serde_json::Value,
    pub config: ExperimentConfig,
    pub constants: PhysicalConstants,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(
        command: &str,
        seed: Option<u64>,
        parameters: serde_json::Value,
        config: &ExperimentConfig,
        constants: &PhysicalConstants,
    ) -> Self {
        Self {
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            parameters,
            config: *config,
            constants: *constants,
            outputs: Vec::new(),
        }
    }

    pub fn record_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    /// Serializes to `<dir>/manifest.json` and returns the path.
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join("manifest.json");
        let body = serde_json::to_string_pretty(self).expect("manifest serializes");
        fs::write(&path, body + "\n")?;
        Ok(path)
    }
}

/// Writes `content` to `dir/name`, creating the directory, and logs the path
/// into the manifest.
pub fn write_output(
    dir: &Path,
    name: &str,
    content: &str,
    manifest: &mut RunManifest,
) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, content)?;
    manifest.record_output(&path);
    Ok(path)
}

/// Small hand-rolled SVG line chart.
pub struct SvgPlot {
    width: f64,
    height: f64,
    margin: f64,
    x_range: (f64, f64),
    y_range: (f64, f64),
    title: String,
    x_label: String,
    y_label: String,
    body: String,
}

/// Line colors cycled by series index.
pub const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

impl SvgPlot {
    pub fn new(
        title: &str,
        x_label: &str,
        y_label: &str,
        x_range: (f64, f64),
        y_range: (f64, f64),
    ) -> Self {
        Self {
            width: 860.0,
            height: 560.0,
            margin: 70.0,
            x_range,
            y_range,
            title: title.to_string(),
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
            body: String::new(),
        }
    }

    fn to_px(&self, x: f64, y: f64) -> (f64, f64) {
        let fx = (x - self.x_range.0) / (self.x_range.1 - self.x_range.0);
        let fy = (y - self.y_range.0) / (self.y_range.1 - self.y_range.0);
        (
            self.margin + fx * (self.width - 2.0 * self.margin),
            self.height - self.margin - fy * (self.height - 2.0 * self.margin),
        )
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], color: &str) {
        if points.is_empty() {
            return;
        }
        let mut attr = String::new();
        for &(x, y) in points {
            let (px, py) = self.to_px(x, y);
            let _ = write!(attr, "{px:.2},{py:.2} ");
        }
        let _ = writeln!(
            self.body,
            r##"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"##,
            attr.trim_end()
        );
    }

    /// Arrow glyph at data point (x, y), tilted `angle` radians off the
    /// vertical (+y) axis; used for spin orientations along trajectories.
    pub fn arrow(&mut self, x: f64, y: f64, angle: f64, color: &str) {
        let (cx, cy) = self.to_px(x, y);
        let len = 14.0;
        let (dx, dy) = (angle.sin() * len, -angle.cos() * len);
        let (x1, y1) = (cx - 0.5 * dx, cy - 0.5 * dy);
        let (x2, y2) = (cx + 0.5 * dx, cy + 0.5 * dy);
        // Two short head strokes rotated +/- 150 degrees from the shaft.
        let heads: String = [150f64.to_radians(), -150f64.to_radians()]
            .iter()
            .map(|rot| {
                let hx = dx * rot.cos() - dy * rot.sin();
                let hy = dx * rot.sin() + dy * rot.cos();
                format!(
                    r##"<line x1="{x2:.2}" y1="{y2:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="1.2"/>"##,
                    x2 + 0.35 * hx,
                    y2 + 0.35 * hy
                )
            })
            .collect();
        let _ = writeln!(
            self.body,
            r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="1.2"/>{heads}"##
        );
    }

    pub fn text(&mut self, x: f64, y: f64, label: &str, color: &str) {
        let (px, py) = self.to_px(x, y);
        let _ = writeln!(
            self.body,
            r##"<text x="{px:.2}" y="{py:.2}" font-size="13" fill="{color}">{label}</text>"##
        );
    }

    fn axes(&self) -> String {
        let mut s = String::new();
        let (x0, y0) = (self.margin, self.height - self.margin);
        let (x1, y1) = (self.width - self.margin, self.margin);
        let _ = writeln!(
            s,
            r##"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none" stroke="#333"/>"##,
            x1 - x0,
            y0 - y1
        );
        for i in 0..=4 {
            let f = f64::from(i) / 4.0;
            let xv = self.x_range.0 + f * (self.x_range.1 - self.x_range.0);
            let yv = self.y_range.0 + f * (self.y_range.1 - self.y_range.0);
            let px = x0 + f * (x1 - x0);
            let py = y0 - f * (y0 - y1);
            let _ = writeln!(
                s,
                r##"<line x1="{px:.1}" y1="{y0}" x2="{px:.1}" y2="{}" stroke="#333"/>"##,
                y0 + 5.0
            );
            let _ = writeln!(
                s,
                r##"<text x="{px:.1}" y="{}" font-size="11" text-anchor="middle" fill="#333">{xv:.3e}</text>"##,
                y0 + 20.0
            );
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{py:.1}" x2="{x0}" y2="{py:.1}" stroke="#333"/>"##,
                x0 - 5.0
            );
            let _ = writeln!(
                s,
                r##"<text x="{}" y="{py:.1}" font-size="11" text-anchor="end" fill="#333">{yv:.3e}</text>"##,
                x0 - 8.0
            );
        }
        let _ = writeln!(
            s,
            r##"<text x="{:.1}" y="24" font-size="15" text-anchor="middle" fill="#111">{}</text>"##,
            self.width / 2.0,
            self.title
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.1}" y="{:.1}" font-size="13" text-anchor="middle" fill="#111">{}</text>"##,
            self.width / 2.0,
            self.height - 18.0,
            self.x_label
        );
        let _ = writeln!(
            s,
            r##"<text x="18" y="{:.1}" font-size="13" text-anchor="middle" fill="#111" transform="rotate(-90 18 {:.1})">{}</text>"##,
            self.height / 2.0,
            self.height / 2.0,
            self.y_label
        );
        s
    }

    pub fn render(&self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}{}</svg>\n",
            self.width, self.height, self.width, self.height, self.axes(), self.body
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Experiment;
    use crate::density::ZGrid;

    #[test]
    fn density_csv_shape() {
        let e = Experiment::silver_defaults();
        let grid = ZGrid::new(-1e-3, 1e-3, 8).unwrap();
        let p = e.density_profile(0.0, &grid).unwrap();
        let csv = density_csv(&p);
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("# t = "));
        assert_eq!(lines.next().unwrap(), "z_m,rho_per_m");
        assert_eq!(csv.lines().count(), 2 + 8);
    }

    #[test]
    fn csv_numbers_are_scientific_with_dot() {
        let s = num(1.0304455964e-5);
        assert!(s.contains('e') && s.contains('.'), "{s}");
        assert!(!s.contains(','));
    }

    #[test]
    fn svg_renders_well_formed_document() {
        let mut plot = SvgPlot::new("demo", "x", "y", (0.0, 1.0), (-1.0, 1.0));
        plot.polyline(&[(0.0, -1.0), (0.5, 0.0), (1.0, 1.0)], PALETTE[0]);
        plot.arrow(0.5, 0.0, 0.7, PALETTE[1]);
        plot.text(0.1, 0.8, "label", "#000");
        let svg = plot.render();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("polyline"));
    }

    #[test]
    fn manifest_round_trip() {
        let e = Experiment::silver_defaults();
        let dir = tempfile::tempdir().unwrap();
        let mut m = RunManifest::new(
            "density",
            Some(42),
            serde_json::json!({"times": [0.0]}),
            e.config(),
            e.constants(),
        );
        write_output(dir.path(), "a.csv", "x\n", &mut m).unwrap();
        let path = m.write(dir.path()).unwrap();
        let text = std::fs::read_to_string(path).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["command"], "density");
        assert_eq!(v["seed"], 42);
        assert_eq!(v["config"]["m"], 1.8e-25);
        assert!(v["outputs"][0].as_str().unwrap().ends_with("a.csv"));
    }
}
