//! Sweeps of the wall pressure ratio and entropy contribution over the normal Mach number.
//!
//! Rows are ordered by sample, then by kind in the order requested. Samples are
//! evaluated in parallel but assembled in index order, so output is identical
//! from run to run.

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::euler::GasModel;
use crate::wall::{delta_s, pstar_ratio, vacuum_limit, WallFluxKind};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub gas: GasModel,
    pub ma_min: f64,
    pub ma_max: f64,
    pub samples: usize,
    pub kinds: Vec<WallFluxKind>,
    /// Scale factor `rho c` in `delta_s = rho c Ma_n (P*/P - 1)`.
    pub rho_c: f64,
    /// ExactRP samples at or below `vacuum_limit + vacuum_eps` are skipped.
    pub vacuum_eps: f64,
}

impl Default for SweepSpec {
    /// Wide range `[-5 + 1e-3, 5]`, 2001 samples, all kinds, `gamma = 7/5`, `rho c = 1`.
    fn default() -> Self {
        Self {
            gas: GasModel::AIR,
            ma_min: -5.0 + 1e-3,
            ma_max: 5.0,
            samples: 2001,
            kinds: WallFluxKind::ALL.to_vec(),
            rho_c: 1.0,
            vacuum_eps: 1e-3,
        }
    }
}

impl SweepSpec {
    /// Subsonic range `[-1, 1]`.
    pub fn subsonic() -> Self {
        Self {
            ma_min: -1.0,
            ma_max: 1.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ma_min.is_finite() && self.ma_max.is_finite() && self.ma_min < self.ma_max) {
            return Err(Error::InvalidRange(format!(
                "need ma_min < ma_max, got [{}, {}]",
                self.ma_min, self.ma_max
            )));
        }
        if self.samples < 2 {
            return Err(Error::InvalidRange(format!(
                "need at least 2 samples, got {}",
                self.samples
            )));
        }
        if self.kinds.is_empty() {
            return Err(Error::InvalidRange("no wall flux kinds selected".into()));
        }
        if !(self.rho_c > 0.0 && self.rho_c.is_finite()) {
            return Err(Error::InvalidRange(format!(
                "rho_c must be positive, got {}",
                self.rho_c
            )));
        }
        if !(self.vacuum_eps >= 0.0) {
            return Err(Error::InvalidRange(format!(
                "vacuum_eps must be >= 0, got {}",
                self.vacuum_eps
            )));
        }
        Ok(())
    }

    /// Equispaced samples, with `Ma_n = 0` inserted when it lies strictly inside the range
    /// and is not already a sample.
    pub fn grid(&self) -> Vec<f64> {
        let h = (self.ma_max - self.ma_min) / (self.samples - 1) as f64;
        let mut g: Vec<f64> = (0..self.samples)
            .map(|i| {
                if i + 1 == self.samples {
                    self.ma_max
                } else {
                    self.ma_min + i as f64 * h
                }
            })
            .collect();
        if self.ma_min < 0.0 && self.ma_max > 0.0 && !g.contains(&0.0) {
            let pos = g.partition_point(|&m| m < 0.0);
            g.insert(pos, 0.0);
        }
        g
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub ma_n: f64,
    pub kind: WallFluxKind,
    pub pstar_ratio: f64,
    pub delta_s: f64,
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let guard = vacuum_limit(&spec.gas) + spec.vacuum_eps;
    let per_sample: Vec<Result<Vec<SweepRow>>> = spec
        .grid()
        .into_par_iter()
        .map(|ma| {
            let mut rows = Vec::with_capacity(spec.kinds.len());
            for &kind in &spec.kinds {
                if kind == WallFluxKind::ExactRP && ma <= guard {
                    continue;
                }
                let ratio = pstar_ratio(kind, ma, &spec.gas)?;
                rows.push(SweepRow {
                    ma_n: ma,
                    kind,
                    pstar_ratio: ratio,
                    // + 0.0 turns -0.0 (P* = P on the negative side) into 0.0
                    delta_s: delta_s(spec.rho_c, 1.0, ma, ratio) + 0.0,
                });
            }
            Ok(rows)
        })
        .collect();
    let mut out = Vec::new();
    for rows in per_sample {
        out.extend(rows?);
    }
    Ok(out)
}

/// Rows of one kind, in sample order.
pub fn column(rows: &[SweepRow], kind: WallFluxKind) -> Vec<SweepRow> {
    rows.iter().filter(|r| r.kind == kind).copied().collect()
}

pub const CSV_HEADER: &str = "ma_n,kind,pstar_ratio,delta_s";

/// 17 significant digits, `\n` line endings.
pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{:.16e},{},{:.16e},{:.16e}",
            r.ma_n,
            r.kind.name(),
            r.pstar_ratio,
            r.delta_s
        )?;
    }
    Ok(())
}

/// Bisection for a sign change of `f` in `[a, b]`; returns the bracket midpoint once narrower than `tol`.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Option<f64> {
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// Locate the negative-Mach sign change of `delta_s` for `kind`: the bracket comes from
/// adjacent sweep samples, the root is refined by bisection on the closed form.
pub fn locate_sign_change(
    spec: &SweepSpec,
    rows: &[SweepRow],
    kind: WallFluxKind,
    tol: f64,
) -> Option<f64> {
    let col = column(rows, kind);
    let bracket = col
        .windows(2)
        .find(|w| w[1].ma_n < 0.0 && w[0].delta_s < 0.0 && w[1].delta_s >= 0.0)?;
    let f = |m: f64| {
        pstar_ratio(kind, m, &spec.gas)
            .map(|r| delta_s(spec.rho_c, 1.0, m, r))
            .unwrap_or(f64::NAN)
    };
    bisect(f, bracket[0].ma_n, bracket[1].ma_n, tol)
}

const SVG_W: f64 = 800.0;
const SVG_H: f64 = 520.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 150.0;
const MARGIN_T: f64 = 20.0;
const MARGIN_B: f64 = 50.0;
const COLORS: [&str; 8] = [
    "#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2",
];

/// Minimal static SVG: one polyline of `delta_s` against `Ma_n` per kind.
pub fn write_svg<W: Write>(spec: &SweepSpec, rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    let finite: Vec<&SweepRow> = rows.iter().filter(|r| r.delta_s.is_finite()).collect();
    let (x0, x1) = (spec.ma_min, spec.ma_max);
    let mut y0 = finite
        .iter()
        .map(|r| r.delta_s)
        .fold(f64::INFINITY, f64::min)
        .min(0.0);
    let mut y1 = finite
        .iter()
        .map(|r| r.delta_s)
        .fold(f64::NEG_INFINITY, f64::max)
        .max(0.0);
    if y1 - y0 < 1e-300 {
        y0 -= 1.0;
        y1 += 1.0;
    }
    let pw = SVG_W - MARGIN_L - MARGIN_R;
    let ph = SVG_H - MARGIN_T - MARGIN_B;
    let sx = |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| MARGIN_T + (y1 - y) / (y1 - y0) * ph;

    let mut s = String::new();
    // writing into a String cannot fail
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_W}" height="{SVG_H}" viewBox="0 0 {SVG_W} {SVG_H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{SVG_W}" height="{SVG_H}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#999" stroke-dasharray="4 3"/>"##,
            sx(x0),
            sy(0.0),
            sx(x1),
            sy(0.0)
        );
    }
    for i in 0..=4 {
        let fx = x0 + (x1 - x0) * i as f64 / 4.0;
        let fy = y0 + (y1 - y0) * i as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{}</text>"#,
            sx(fx),
            SVG_H - MARGIN_B + 18.0,
            tick(fx)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{}</text>"#,
            MARGIN_L - 6.0,
            sy(fy) + 4.0,
            tick(fy)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">Ma_n</text>"#,
        MARGIN_L + 0.5 * pw,
        SVG_H - 8.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.3}" text-anchor="middle" transform="rotate(-90 16 {:.3})">Δs</text>"#,
        MARGIN_T + 0.5 * ph,
        MARGIN_T + 0.5 * ph
    );
    for (idx, kind) in spec.kinds.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let pts: Vec<String> = finite
            .iter()
            .filter(|r| r.kind == *kind)
            .map(|r| format!("{:.3},{:.3}", sx(r.ma_n), sy(r.delta_s)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline data-kind="{}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            kind.name(),
            pts.join(" ")
        );
        let ly = MARGIN_T + 16.0 + 18.0 * idx as f64;
        let lx = SVG_W - MARGIN_R + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{color}" stroke-width="2"/><text x="{:.3}" y="{:.3}">{}</text>"#,
            ly - 4.0,
            lx + 20.0,
            ly - 4.0,
            lx + 26.0,
            ly,
            kind.name()
        );
    }
    s.push_str("</svg>\n");
    out.write_all(s.as_bytes())
}

fn tick(v: f64) -> String {
    if v == 0.0 || (v.abs() >= 1e-2 && v.abs() < 1e4) {
        format!("{}", (v * 1000.0).round() / 1000.0)
    } else {
        format!("{v:.2e}")
    }
}
