//! CSV tables for waveforms, field maps, fields and observables.
//!
//! Numbers are written with 17 significant digits so the text round-trips
//! to the same f64; rows are LF-terminated.

use std::io::Write;
use std::path::Path;

use crate::em_gauge::{branch_for, closed_form_fields, fields_from_potential, separation_field, FieldFamily};
use crate::error::Result;
use crate::exec;
use crate::observables::{density_of, spin_of};
use crate::profiles::{Event, Profile2D};
use crate::solutions::{local_phase_energy, Helicity, Solution, Species, SpinorValue};
use crate::verifier::Grid;

use super::config::RunConfig;

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// A header plus rows of numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|&x| num(x)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Write via a sibling temporary file and rename over the target.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    let res = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if res.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    res
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// The event at comoving coordinate `w` on the line through the locus at t = 0.
fn along(sol: &Solution, w: f64) -> Event {
    match sol {
        Solution::WeylTransverse(t) => {
            let (x0, y0) = t.p.center();
            Event::new(0.0, x0, y0, w)
        }
        _ => {
            let n = sol.direction().unit();
            Event::new(0.0, w * n[0], w * n[1], w * n[2])
        }
    }
}

/// Index of the component shown as `c1`: the first one, except for
/// transverse solutions whose populated component is the lower one.
fn c1_index(sol: &Solution) -> usize {
    match sol {
        Solution::WeylTransverse(t) if !t.upper() => 1,
        _ => 0,
    }
}

/// Analytic |c1| from the profiles, independent of the spinor assembly.
fn envelope(sol: &Solution, e: &Event) -> f64 {
    let w = sol.comoving(e);
    match sol {
        Solution::Dirac(s) => {
            let (c, sn) = s.dir.half_angle();
            let (f, g) = (s.f.value(w), s.g.value(w));
            match s.species {
                Species::Particle => (f * c - g * sn).abs(),
                Species::Antiparticle => (f * sn + g * c).abs(),
            }
        }
        Solution::WeylDirectional(s) => {
            let (c, sn) = s.dir.half_angle();
            let f = s.f.value(w).abs();
            match s.helicity {
                Helicity::Positive => f * c,
                Helicity::Negative => f * sn,
            }
        }
        Solution::WeylTransverse(s) => (s.p.eval(e.x, e.y).value * s.f.value(w)).abs(),
    }
}

/// `w,re_c1,im_c1,envelope,local_energy` at uniform w.
pub fn waveform(cfg: &RunConfig) -> Table {
    let sol = &cfg.solution;
    let k = c1_index(sol);
    let ws = linspace(cfg.output.w_min, cfg.output.w_max, cfg.output.rows);
    let rows = exec::map(&ws, |&w| {
        let e = along(sol, w);
        let c1 = sol.eval(&e).components()[k];
        vec![w, c1.re, c1.im, envelope(sol, &e), local_phase_energy(sol, &e)]
    });
    Table {
        header: vec!["w", "re_c1", "im_c1", "envelope", "local_energy"],
        rows,
    }
}

/// `w,density,sx,sy,sz,total_spin,helicity` along the propagation line.
///
/// The helicity column is 2·n·S: ±1 for Weyl states, (f² − g²)/(f² + g²)
/// times the species sign for Dirac states. Spin columns are NaN where the
/// density falls below the floor.
pub fn observables(cfg: &RunConfig) -> Table {
    let sol = &cfg.solution;
    let n = sol.direction().unit();
    let ws = linspace(cfg.output.w_min, cfg.output.w_max, cfg.output.rows);
    let rows = exec::map(&ws, |&w| {
        let psi: SpinorValue = sol.eval(&along(sol, w));
        let d = density_of(&psi);
        let (s, total, hel) = match spin_of(&psi) {
            Ok(s) => {
                let hel = 2.0 * (n[0] * s.sx + n[1] * s.sy + n[2] * s.sz);
                (s.as_array(), s.norm(), hel)
            }
            Err(_) => ([f64::NAN; 3], f64::NAN, f64::NAN),
        };
        vec![w, d, s[0], s[1], s[2], total, hel]
    });
    Table {
        header: vec!["w", "density", "sx", "sy", "sz", "total_spin", "helicity"],
        rows,
    }
}

/// Closed-form E and B over the verification grid with the FD cross-check.
pub fn fields(cfg: &RunConfig, grid: &Grid) -> Result<Table> {
    let family = FieldFamily::for_solution(&cfg.solution);
    let pot = family.assembly(cfg.potential.gauge.clone());
    let q = cfg.potential.q;
    let fd = cfg.verify.fd;
    let events = grid.events();
    let rows = exec::map(&events, |e| -> Result<Vec<f64>> {
        let a = closed_form_fields(&family, &cfg.potential.gauge, q, e)?;
        let b = fields_from_potential(&pot, q, e, &fd)?;
        let mut r = vec![e.t, e.x, e.y, e.z];
        r.extend(a.e);
        r.extend(a.b);
        r.push(a.max_abs_diff(&b));
        Ok(r)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        header: vec!["t", "x", "y", "z", "ex", "ey", "ez", "bx", "by", "bz", "fd_diff"],
        rows,
    })
}

/// `x,y,Bz,p,p_inv` on a square grid around the profile centre.
///
/// `Bz` is the separation field of the configured (helicity, sense) branch
/// and `p_inv` the reciprocal profile r₁/p.
pub fn fieldmap(cfg: &RunConfig) -> Result<Table> {
    let Solution::WeylTransverse(t) = &cfg.solution else {
        return Err(crate::error::Error::invalid(
            "family",
            "separation maps need a transverse solution",
        ));
    };
    let p: &Profile2D = &t.p;
    let (x0, y0) = p.center();
    let o = &cfg.output;
    let xs = linspace(x0 - o.map_half_width, x0 + o.map_half_width, o.map_points);
    let ys = linspace(y0 - o.map_half_width, y0 + o.map_half_width, o.map_points);
    let pts: Vec<(f64, f64)> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| (x, y))).collect();
    let branch = branch_for(t.helicity, t.sense);
    let rows = exec::map(&pts, |&(x, y)| -> Result<Vec<f64>> {
        let bz = separation_field(p, cfg.potential.q, branch, x, y)?;
        let pv = p.eval_positive(x, y)?.value;
        Ok(vec![x, y, bz, pv, o.r1 / pv])
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        header: vec!["x", "y", "Bz", "p", "p_inv"],
        rows,
    })
}
