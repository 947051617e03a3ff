//! The corpus benchmark: direct standard enumeration against the via-quad
//! pipeline, one CSV row per gluing file.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use normsurf::convert::{enumerate_std_via_quad, ConvertOptions};
use normsurf::coords::standard_matching_system;
use normsurf::enumerate::{enumerate_solution_set_with, EnumerateOptions};
use normsurf::{build_skeleton, parse_triangulation, validate_compact, Error};
use rayon::prelude::*;

pub const HEADER_COMMENT: &str = "# normsurf bench v1\n";
pub const COLUMNS: [&str; 9] =
    ["input", "n", "quad_size", "std_size", "direct_secs", "pipeline_secs", "speedup", "max_list_ratio", "status"];

/// One benchmarked input. Censored runs keep the time limit as their time
/// and leave the sizes they did not reach empty.
#[derive(Clone, Debug, Default)]
pub struct BenchRecord {
    pub input: String,
    pub n: Option<usize>,
    pub quad_size: Option<usize>,
    pub std_size: Option<usize>,
    pub direct_secs: Option<f64>,
    pub pipeline_secs: Option<f64>,
    pub max_list_ratio: Option<f64>,
    pub status: String,
}

impl BenchRecord {
    pub fn speedup(&self) -> Option<f64> {
        match (self.status.as_str(), self.direct_secs, self.pipeline_secs) {
            ("ok", Some(d), Some(p)) if p > 0.0 => Some(d / p),
            _ => None,
        }
    }

    fn fields(&self) -> [String; 9] {
        fn opt<T: ToString>(x: Option<T>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        let secs = |x: Option<f64>| x.map(|v| format!("{v:.6}")).unwrap_or_default();
        [
            self.input.clone(),
            opt(self.n),
            opt(self.quad_size),
            opt(self.std_size),
            secs(self.direct_secs),
            secs(self.pipeline_secs),
            self.speedup().map(|v| format!("{v:.3}")).unwrap_or_default(),
            self.max_list_ratio.map(|v| format!("{v:.4}")).unwrap_or_default(),
            self.status.clone(),
        ]
    }
}

/// The `.tri` files of a directory in name order.
fn gluing_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("reading directory {}", dir.display()))? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "tri") {
            paths.push(path);
        }
    }
    paths.sort();
    Ok(paths)
}

fn bench_file(path: &Path, timeout: Duration) -> BenchRecord {
    let mut rec = BenchRecord {
        input: path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
        ..Default::default()
    };
    let loaded = fs::read_to_string(path)
        .map_err(|e| e.to_string())
        .and_then(|t| parse_triangulation(&t).map_err(|e| e.to_string()))
        .and_then(|tri| build_skeleton(&tri).map(|s| (tri, s)).map_err(|e| e.to_string()));
    let (tri, skel) = match loaded {
        Ok(v) => v,
        Err(e) => {
            rec.status = format!("error: {e}");
            return rec;
        }
    };
    rec.n = Some(tri.size());
    if !validate_compact(&tri, &skel).is_compact {
        rec.status = "error: not compact".into();
        return rec;
    }

    let start = Instant::now();
    let opts = EnumerateOptions { deadline: Some(start + timeout), ..Default::default() };
    let direct = enumerate_solution_set_with(&standard_matching_system(&tri, &skel), &opts);
    let direct_censored = matches!(direct, Err(Error::Timeout));
    rec.direct_secs = Some(if direct_censored { timeout.as_secs_f64() } else { start.elapsed().as_secs_f64() });

    let start = Instant::now();
    let opts = ConvertOptions { deadline: Some(start + timeout), ..Default::default() };
    let pipeline = enumerate_std_via_quad(&tri, &skel, &opts);
    let pipeline_censored = matches!(pipeline, Err(Error::Timeout));
    rec.pipeline_secs = Some(if pipeline_censored { timeout.as_secs_f64() } else { start.elapsed().as_secs_f64() });

    let mut problems = Vec::new();
    match direct {
        Ok(set) => rec.std_size = Some(set.len()),
        Err(Error::Timeout) => problems.push("censored-direct".to_string()),
        Err(e) => problems.push(format!("error: {e}")),
    }
    match pipeline {
        Ok((set, trace)) => {
            if rec.std_size.is_some_and(|k| k != set.len()) {
                problems.push("error: pipeline disagrees with direct".into());
            }
            rec.std_size = Some(set.len());
            rec.quad_size = trace.per_vertex_sizes.first().copied();
            rec.max_list_ratio = Some(trace.max_list_ratio());
        }
        Err(Error::Timeout) => problems.push("censored-pipeline".into()),
        Err(e) => problems.push(format!("error: {e}")),
    }
    rec.status = if problems.is_empty() { "ok".into() } else { problems.join("; ") };
    rec
}

/// Runs the benchmark over `dir` with `jobs` files in flight and returns
/// the CSV text.
pub fn run(dir: &Path, timeout_secs: u64, jobs: usize) -> Result<String> {
    let files = gluing_files(dir)?;
    let timeout = Duration::from_secs(timeout_secs);
    let records: Vec<BenchRecord> = if jobs <= 1 {
        files.iter().map(|p| bench_file(p, timeout)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
        pool.install(|| files.par_iter().map(|p| bench_file(p, timeout)).collect())
    };
    to_csv(&records)
}

pub fn to_csv(records: &[BenchRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(HEADER_COMMENT.as_bytes().to_vec());
    w.write_record(COLUMNS)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
