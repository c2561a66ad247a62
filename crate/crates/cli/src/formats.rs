//! Versioned file formats. Motion sequences travel either as a structured
//! JSON document or as a flat `frame,joint,x,y,z` table with a `#` comment
//! preamble; the two are loss-free interconvertible because every float is
//! written in shortest round-trip decimal form (serde_json for JSON, the
//! standard float formatter for the table).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use freqkal::kalman::ChannelReport;
use freqkal::metrics::MetricReport;
use freqkal::motion::{validate, MotionSequence};
use freqkal::synth::SynthSpec;
use freqkal::{AngleConstraint, Axis, RefinementConfig, Skeleton, VectorSpec};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

fn io_err(path: &Path, err: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {err}", path.display()))
}

fn check_version(version: u32, path: &Path) -> Result<(), CliError> {
    if version != FORMAT_VERSION {
        return Err(io_err(
            path,
            format!("unsupported format_version {version} (this build reads {FORMAT_VERSION})"),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------- motion

#[derive(Serialize, Deserialize)]
struct MotionDoc {
    format_version: u32,
    fps: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    joint_names: Option<Vec<String>>,
    /// `frames[t][j] = [x, y, z]`
    frames: Vec<Vec<[f64; 3]>>,
}

/// Reads either motion format, sniffing JSON by a leading `{`.
pub fn read_motion(path: &Path) -> Result<MotionSequence, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let motion = if text.trim_start().starts_with('{') {
        parse_motion_json(&text, path)?
    } else {
        parse_motion_csv(&text, path)?
    };
    // finiteness is a file invariant, so a violation is a parse error
    validate(&motion).map_err(|e| io_err(path, e))?;
    Ok(motion)
}

fn parse_motion_json(text: &str, path: &Path) -> Result<MotionSequence, CliError> {
    let doc: MotionDoc = serde_json::from_str(text).map_err(|e| io_err(path, e))?;
    check_version(doc.format_version, path)?;
    let frames = doc.frames.len();
    let joints = doc.frames.first().map_or(0, Vec::len);
    for (t, frame) in doc.frames.iter().enumerate() {
        if frame.len() != joints {
            return Err(io_err(
                path,
                format!("frame {t} has {} joints, frame 0 has {joints}", frame.len()),
            ));
        }
    }
    let mut data = Vec::with_capacity(frames * joints * 3);
    for frame in &doc.frames {
        for joint in frame {
            data.extend_from_slice(joint);
        }
    }
    MotionSequence::from_flat(frames, joints, doc.fps, doc.joint_names, data)
        .map_err(|e| io_err(path, e))
}

fn parse_motion_csv(text: &str, path: &Path) -> Result<MotionSequence, CliError> {
    let bad = |msg: String| io_err(path, msg);
    let mut fps = 1.0;
    let mut joint_names: Option<Vec<String>> = None;
    let mut rows: Vec<(usize, usize, [f64; 3])> = Vec::new();
    let mut header_seen = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(v) = comment.strip_prefix("format_version:") {
                let v: u32 = v
                    .trim()
                    .parse()
                    .map_err(|e| bad(format!("line {}: bad format_version: {e}", lineno + 1)))?;
                check_version(v, path)?;
            } else if let Some(v) = comment.strip_prefix("fps:") {
                fps = v
                    .trim()
                    .parse()
                    .map_err(|e| bad(format!("line {}: bad fps: {e}", lineno + 1)))?;
            } else if let Some(v) = comment.strip_prefix("joint_names:") {
                joint_names =
                    Some(v.trim().split(',').map(|s| s.trim().to_string()).collect());
            }
            continue;
        }
        if !header_seen {
            if line != "frame,joint,x,y,z" {
                return Err(bad(format!(
                    "line {}: expected header `frame,joint,x,y,z`, got `{line}`",
                    lineno + 1
                )));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(bad(format!("line {}: expected 5 fields", lineno + 1)));
        }
        let parse_idx = |s: &str, what: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| bad(format!("line {}: bad {what}: {e}", lineno + 1)))
        };
        let parse_val = |s: &str, what: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| bad(format!("line {}: bad {what}: {e}", lineno + 1)))
        };
        rows.push((
            parse_idx(fields[0], "frame index")?,
            parse_idx(fields[1], "joint index")?,
            [
                parse_val(fields[2], "x")?,
                parse_val(fields[3], "y")?,
                parse_val(fields[4], "z")?,
            ],
        ));
    }
    if !header_seen {
        return Err(bad("missing `frame,joint,x,y,z` header".into()));
    }
    if rows.is_empty() {
        return Err(bad("no data rows".into()));
    }
    let frames = rows.iter().map(|r| r.0).max().unwrap() + 1;
    let joints = rows.iter().map(|r| r.1).max().unwrap() + 1;
    let mut data = vec![None::<[f64; 3]>; frames * joints];
    for (t, j, v) in rows {
        let slot = &mut data[t * joints + j];
        if slot.is_some() {
            return Err(bad(format!("duplicate row for frame {t}, joint {j}")));
        }
        *slot = Some(v);
    }
    let mut flat = Vec::with_capacity(frames * joints * 3);
    for (i, slot) in data.into_iter().enumerate() {
        match slot {
            Some(v) => flat.extend_from_slice(&v),
            None => {
                return Err(bad(format!(
                    "missing row for frame {}, joint {}",
                    i / joints,
                    i % joints
                )))
            }
        }
    }
    MotionSequence::from_flat(frames, joints, fps, joint_names, flat)
        .map_err(|e| io_err(path, e))
}

/// Writes the flat table when the path ends in `.csv`, JSON otherwise.
pub fn write_motion(path: &Path, motion: &MotionSequence) -> Result<(), CliError> {
    let csv = path
        .extension()
        .map_or(false, |e| e.eq_ignore_ascii_case("csv"));
    let text = if csv {
        motion_to_csv(motion)
    } else {
        let mut doc_frames = Vec::with_capacity(motion.frames());
        for t in 0..motion.frames() {
            let mut frame = Vec::with_capacity(motion.joints());
            for j in 0..motion.joints() {
                frame.push([
                    motion.get(t, j, Axis::X),
                    motion.get(t, j, Axis::Y),
                    motion.get(t, j, Axis::Z),
                ]);
            }
            doc_frames.push(frame);
        }
        let doc = MotionDoc {
            format_version: FORMAT_VERSION,
            fps: motion.fps(),
            joint_names: motion.joint_names().map(<[String]>::to_vec),
            frames: doc_frames,
        };
        let mut s = serde_json::to_string(&doc).expect("motion serializes");
        s.push('\n');
        s
    };
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn motion_to_csv(motion: &MotionSequence) -> String {
    let mut out = String::new();
    out.push_str(&format!("# format_version: {FORMAT_VERSION}\n"));
    out.push_str(&format!("# fps: {}\n", motion.fps()));
    if let Some(names) = motion.joint_names() {
        out.push_str(&format!("# joint_names: {}\n", names.join(",")));
    }
    out.push_str("frame,joint,x,y,z\n");
    for t in 0..motion.frames() {
        for j in 0..motion.joints() {
            out.push_str(&format!(
                "{t},{j},{},{},{}\n",
                motion.get(t, j, Axis::X),
                motion.get(t, j, Axis::Y),
                motion.get(t, j, Axis::Z),
            ));
        }
    }
    out
}

/// Motion files (`.json`/`.csv`) in a directory, sorted by file name so
/// sample ordering is reproducible.
pub fn motion_files_sorted(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| io_err(dir, e))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().map_or(false, |ext| {
                ext.eq_ignore_ascii_case("json") || ext.eq_ignore_ascii_case("csv")
            })
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(io_err(dir, "no .json or .csv motion files"));
    }
    Ok(files)
}

// ----------------------------------------------------------- constraints

#[derive(Serialize, Deserialize)]
struct ConstraintDoc {
    format_version: u32,
    joint_count: usize,
    constraints: Vec<ConstraintEntry>,
}

#[derive(Serialize, Deserialize)]
struct ConstraintEntry {
    name: String,
    #[serde(rename = "type")]
    kind: String,
    /// (tail joint, head joint) of the constrained bone
    vec1: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vec2: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    plane: Option<[usize; 3]>,
    cos_min: f64,
    cos_max: f64,
}

pub fn read_constraints(path: &Path) -> Result<Skeleton, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let doc: ConstraintDoc = serde_json::from_str(&text).map_err(|e| io_err(path, e))?;
    check_version(doc.format_version, path)?;
    let mut constraints = Vec::with_capacity(doc.constraints.len());
    for entry in doc.constraints {
        let target = match entry.kind.as_str() {
            "bone_bone" => {
                let v = entry.vec2.ok_or_else(|| {
                    io_err(path, format!("constraint `{}`: bone_bone needs vec2", entry.name))
                })?;
                VectorSpec::Bone { tail: v[0], head: v[1] }
            }
            "bone_plane" => {
                let p = entry.plane.ok_or_else(|| {
                    io_err(path, format!("constraint `{}`: bone_plane needs plane", entry.name))
                })?;
                VectorSpec::Plane { a: p[0], b: p[1], c: p[2] }
            }
            other => {
                return Err(io_err(
                    path,
                    format!("constraint `{}`: unknown type `{other}`", entry.name),
                ))
            }
        };
        constraints.push(AngleConstraint {
            name: entry.name,
            bone: (entry.vec1[0], entry.vec1[1]),
            target,
            cos_min: entry.cos_min,
            cos_max: entry.cos_max,
        });
    }
    let skeleton = Skeleton::from_constraints(doc.joint_count, constraints);
    skeleton.validate().map_err(|e| io_err(path, e))?;
    Ok(skeleton)
}

// ------------------------------------------------------------- parts map

#[derive(Deserialize)]
struct PartsDoc {
    format_version: u32,
    /// joint name -> body-part label
    parts: BTreeMap<String, String>,
}

pub fn read_parts_map(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let doc: PartsDoc = serde_json::from_str(&text).map_err(|e| io_err(path, e))?;
    check_version(doc.format_version, path)?;
    Ok(doc.parts)
}

// --------------------------------------------------------------- reports

#[derive(Serialize, Deserialize)]
pub struct RefineReport {
    pub format_version: u32,
    pub command: String,
    /// Re-running with this config and the same input reproduces the run.
    pub config: RefinementConfig,
    pub input: String,
    pub output: String,
    pub frames: usize,
    pub joints: usize,
    pub fps: f64,
    pub channels: Vec<ChannelReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Serialize, Deserialize)]
pub struct SidecarChannel {
    pub joint_index: usize,
    pub axis: Axis,
    /// Measured post-noise high-band ratio; absent for white noise, which
    /// has no band structure to measure against.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    pub noise_energy: f64,
}

/// Written next to synthesized noisy output; doubles as a replayable spec
/// echo (`synth --config <sidecar>`).
#[derive(Serialize, Deserialize)]
pub struct SynthSidecar {
    pub format_version: u32,
    pub command: String,
    pub spec: SynthSpec,
    pub channels: Vec<SidecarChannel>,
}

#[derive(Serialize, Deserialize)]
pub struct EvaluateReport {
    pub format_version: u32,
    pub command: String,
    pub metrics: MetricReport,
}

#[derive(Serialize, Deserialize)]
pub struct JitterRow {
    pub part: String,
    pub base: f64,
    pub ours: f64,
    /// `None` when the base jerk is zero.
    pub reduction_pct: Option<f64>,
}

#[derive(Serialize, Deserialize)]
pub struct JitterReport {
    pub format_version: u32,
    pub command: String,
    pub fps_scaled: bool,
    pub rows: Vec<JitterRow>,
    pub average: JitterRow,
}

#[derive(Serialize, Deserialize)]
pub struct CompareRow {
    pub label: String,
    pub mse_vs_clean: f64,
    pub mean_jerk: f64,
}

#[derive(Serialize, Deserialize)]
pub struct CompareReport {
    pub format_version: u32,
    pub command: String,
    pub config: RefinementConfig,
    pub gammas: Vec<f64>,
    pub rows: Vec<CompareRow>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    fs::write(path, text).map_err(|e| io_err(path, e))
}

/// Accepts a bare `RefinementConfig` document or a refine report (the
/// echoed config is extracted from its `config` field).
pub fn read_refine_config(path: &Path) -> Result<RefinementConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| io_err(path, e))?;
    let node = value.get("config").cloned().unwrap_or(value);
    serde_json::from_value(node).map_err(|e| io_err(path, e))
}

/// Accepts a bare `SynthSpec` document or a synth sidecar (extracting its
/// `spec` field).
pub fn read_synth_spec(path: &Path) -> Result<SynthSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| io_err(path, e))?;
    let node = value.get("spec").cloned().unwrap_or(value);
    serde_json::from_value(node).map_err(|e| io_err(path, e))
}

/// `base.ext` -> `base.tag.ext` (used for the noisy twin of a clean file).
pub fn with_tag(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}.{tag}.{ext}"),
        None => format!("{stem}.{tag}"),
    };
    path.with_file_name(name)
}
