//! Corpus, sweeps, verification and the report plumbing behind the CLI.

pub mod analyze;
pub mod compare;
pub mod corpus;
pub mod format;
pub mod sweep;
pub mod verify;

use std::io::Write;

use serde::Serialize;

use crate::adjacency::Adjacency;
use crate::cayley::{gamma_component_graph, gamma_graph, Component};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupFamilySpec, Subgroup};
use crate::par::Execution;

use analyze::{analyze_instance, parse_subgroup_generators, subgroup_string};
use corpus::{DEFAULT_VERIFY_ORDER, HARD_ORDER_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Verify,
    Sweep,
    Compare,
    Export,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub group_spec: Option<String>,
    pub subgroup_spec: Option<String>,
    pub group2: Option<String>,
    pub subgroup2: Option<String>,
    pub max_order: Option<usize>,
    pub format: OutputFormat,
    /// Worker count; `Some(1)` forces the sequential path.
    pub jobs: Option<usize>,
    pub theorem: Option<String>,
    pub inject_fault: bool,
    /// `export` only: write one component graph instead of `Γ_H(G)`.
    pub component: Option<Component>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            group_spec: None,
            subgroup_spec: None,
            group2: None,
            subgroup2: None,
            max_order: None,
            format: OutputFormat::default(),
            jobs: None,
            theorem: None,
            inject_fault: false,
            component: None,
        }
    }

    pub fn execution(&self) -> Execution {
        match self.jobs {
            Some(1) => Execution::Sequential,
            _ => Execution::default(),
        }
    }
}

/// Runs one command, writing the report to `out`, and returns the exit
/// code (0 success, 1 verification failure). Errors map to exit code 2.
pub fn run(config: &RunConfig, out: &mut impl Write) -> Result<i32> {
    let (code, bytes) = with_pool(config.jobs, || {
        let mut buf = Vec::new();
        dispatch(config, &mut buf).map(|code| (code, buf))
    })??;
    out.write_all(&bytes).map_err(Error::Output)?;
    out.flush().map_err(Error::Output)?;
    Ok(code)
}

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match jobs {
        Some(j) if j > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::InvalidIndex(format!("cannot start {j} workers: {e}")))?;
            Ok(pool.install(f))
        }
        _ => Ok(f()),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_pool<R: Send>(_jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    Ok(f())
}

fn require<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| Error::InvalidIndex(format!("missing required flag --{flag}")))
}

fn max_order(config: &RunConfig, default: usize) -> Result<usize> {
    let m = config.max_order.unwrap_or(default);
    if m > HARD_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded {
            order: m,
            bound: HARD_ORDER_BOUND,
        });
    }
    Ok(m)
}

/// A group and subgroup resolved from CLI strings.
pub struct Instance {
    pub name: String,
    pub group: FiniteGroup,
    pub subgroup: Subgroup,
}

pub fn resolve_instance(group_spec: &str, subgroup_spec: Option<&str>) -> Result<Instance> {
    let spec: GroupFamilySpec = group_spec.parse()?;
    let group = spec.build()?;
    if group.order() > HARD_ORDER_BOUND {
        return Err(Error::OrderBoundExceeded {
            order: group.order(),
            bound: HARD_ORDER_BOUND,
        });
    }
    let subgroup = parse_subgroup_generators(&group, subgroup_spec.unwrap_or(""))?;
    Ok(Instance {
        name: spec.to_string(),
        group,
        subgroup,
    })
}

fn to_json(value: &impl Serialize) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Output(e.into()))
}

fn emit(out: &mut Vec<u8>, text: &str) {
    out.extend_from_slice(text.as_bytes());
    if !text.ends_with('\n') {
        out.push(b'\n');
    }
}

fn dispatch(config: &RunConfig, out: &mut Vec<u8>) -> Result<i32> {
    let exec = config.execution();
    match config.command {
        Command::Analyze => {
            let inst = resolve_instance(
                require(&config.group_spec, "group")?,
                config.subgroup_spec.as_deref(),
            )?;
            match config.format {
                OutputFormat::Json => {
                    let report = analyze_instance(&inst.name, &inst.group, &inst.subgroup, exec)?;
                    emit(out, &to_json(&report)?);
                }
                OutputFormat::Csv => {
                    let row = sweep::sweep_row(&inst.name, &inst.group, &inst.subgroup, exec);
                    sweep::write_csv(&[row], &mut *out)?;
                }
                OutputFormat::Text => {
                    let report = analyze_instance(&inst.name, &inst.group, &inst.subgroup, exec)?;
                    emit(out, &format::analyze_text(&report));
                }
            }
            Ok(0)
        }
        Command::Verify => {
            let options = verify::VerifyOptions {
                max_order: max_order(config, DEFAULT_VERIFY_ORDER)?,
                theorem: config.theorem.clone(),
                inject_fault: config.inject_fault,
                execution: exec,
            };
            let report = verify::verify(&options)?;
            match config.format {
                OutputFormat::Json => emit(out, &to_json(&report)?),
                OutputFormat::Csv => format::verify_csv(&report, &mut *out)?,
                OutputFormat::Text => emit(out, &format::verify_text(&report)),
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Sweep => {
            let rows = sweep::sweep(max_order(config, HARD_ORDER_BOUND)?, exec)?;
            match config.format {
                OutputFormat::Json => emit(out, &to_json(&rows)?),
                OutputFormat::Csv => sweep::write_csv(&rows, &mut *out)?,
                OutputFormat::Text => emit(out, &format::sweep_text(&rows)),
            }
            Ok(0)
        }
        Command::Compare => {
            let left = resolve_instance(
                require(&config.group_spec, "group")?,
                config.subgroup_spec.as_deref(),
            )?;
            let right = resolve_instance(
                require(&config.group2, "group2")?,
                config.subgroup2.as_deref(),
            )?;
            let lg = gamma_graph(&left.group, &left.subgroup)?;
            let rg = gamma_graph(&right.group, &right.subgroup)?;
            let lname = format!(
                "{} {}",
                left.name,
                subgroup_string(left.subgroup.elements())
            );
            let rname = format!(
                "{} {}",
                right.name,
                subgroup_string(right.subgroup.elements())
            );
            let report =
                compare::compare_graphs((&lname, lg.adjacency()), (&rname, rg.adjacency()), exec)?;
            match config.format {
                OutputFormat::Json => emit(out, &to_json(&report)?),
                OutputFormat::Csv => format::compare_csv(&report, &mut *out)?,
                OutputFormat::Text => emit(out, &format::compare_text(&report)),
            }
            Ok(0)
        }
        Command::Export => {
            let inst = resolve_instance(
                require(&config.group_spec, "group")?,
                config.subgroup_spec.as_deref(),
            )?;
            let adjacency: Adjacency = match config.component {
                Some(c) => gamma_component_graph(&inst.group, &inst.subgroup, c)?
                    .adjacency()
                    .clone(),
                None => gamma_graph(&inst.group, &inst.subgroup)?
                    .adjacency()
                    .clone(),
            };
            let header = ExportHeader {
                vertices: adjacency.vertex_count(),
                degree: adjacency.regular_degree(),
                group: inst.name.clone(),
                subgroup: inst.subgroup.elements().to_vec(),
                component: config.component.map(|c| format!("{c:?}").to_lowercase()),
            };
            match config.format {
                OutputFormat::Json => {
                    let bits = adjacency.to_bit_lines();
                    let rows: Vec<&str> = bits.lines().collect();
                    emit(
                        out,
                        &to_json(&serde_json::json!({ "header": header, "rows": rows }))?,
                    );
                }
                OutputFormat::Csv => {
                    let mut writer = csv::Writer::from_writer(&mut *out);
                    writer
                        .write_record(["u", "v"])
                        .map_err(|e| Error::Output(e.into()))?;
                    for u in 0..adjacency.vertex_count() {
                        for v in adjacency.neighbors(u).filter(|&v| v > u) {
                            writer
                                .write_record([u.to_string(), v.to_string()])
                                .map_err(|e| Error::Output(e.into()))?;
                        }
                    }
                    writer.flush().map_err(Error::Output)?;
                }
                OutputFormat::Text => {
                    emit(
                        out,
                        &serde_json::to_string(&header).map_err(|e| Error::Output(e.into()))?,
                    );
                    emit(out, &adjacency.to_bit_lines());
                }
            }
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct ExportHeader {
    vertices: usize,
    degree: Option<usize>,
    group: String,
    subgroup: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    component: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(config: &RunConfig) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(config, &mut out).unwrap();
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn analyze_json_is_deterministic() {
        let mut config = RunConfig::new(Command::Analyze);
        config.group_spec = Some("Z6".into());
        config.subgroup_spec = Some("3".into());
        config.format = OutputFormat::Json;
        let (code, a) = run_text(&config);
        assert_eq!(code, 0);
        config.jobs = Some(1);
        let (_, b) = run_text(&config);
        config.jobs = Some(3);
        let (_, c) = run_text(&config);
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(a.contains("\"is_integral\": true"));
    }

    #[test]
    fn export_text() {
        let mut config = RunConfig::new(Command::Export);
        config.group_spec = Some("Z5".into());
        config.subgroup_spec = Some(String::new());
        let (_, text) = run_text(&config);
        let mut lines = text.lines();
        let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(header["vertices"], 25);
        assert_eq!(header["degree"], 12);
        assert_eq!(lines.count(), 25);
    }

    #[test]
    fn errors() {
        let mut config = RunConfig::new(Command::Analyze);
        assert!(run(&config, &mut Vec::new()).is_err());
        config.group_spec = Some("Q8".into());
        assert!(matches!(
            run(&config, &mut Vec::new()),
            Err(Error::Parse { .. })
        ));
        config.group_spec = Some("Z17".into());
        assert!(matches!(
            run(&config, &mut Vec::new()),
            Err(Error::OrderBoundExceeded { .. })
        ));
        let mut sweep = RunConfig::new(Command::Sweep);
        sweep.max_order = Some(17);
        assert!(run(&sweep, &mut Vec::new()).is_err());
    }
}
