use serde::Serialize;
use serde_json::json;

use snc_core::air::build_air;
use snc_core::codec::{extract_plan, CodeSpec, SideInfo};
use snc_core::finite_field::{format_decimal_matrix, BitVector};
use snc_core::mds::{build_mds, compare_lengths, Winner};
use snc_core::oracles::{brute_mais, brute_minrank2, check_decodable, roundtrip_sim, MAIS_CAP};
use snc_core::report::{preset_table, render_analysis_tsv, render_plan_tsv, render_sweep_tsv, sweep};
use snc_core::snc::{analyze, build_graph, mais_formula, minrank_status};
use snc_core::{Error, Result, SncInstance};

use crate::{Baseline, Command, InstanceArgs, OracleKind};

/// Buffered stdout plus whether a verification failed.
pub struct Output {
    pub stdout: String,
    pub mismatch: bool,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, mismatch: false }
    }

    fn verdict(stdout: String, passed: bool) -> Self {
        Self { stdout, mismatch: !passed }
    }
}

impl InstanceArgs {
    fn instance(self) -> Result<SncInstance> {
        SncInstance::new(self.k, self.d, self.u)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn run(command: Command) -> Result<Output> {
    match command {
        Command::Air { rows, cols, verify, chain } => air(rows, cols, verify, chain),
        Command::Analyze { inst, json, .. } => {
            let report = analyze(&inst.instance()?);
            Ok(Output::ok(if json { to_json(&report) } else { render_analysis_tsv(&report) }))
        }
        Command::Encode { inst, messages } => {
            let spec = CodeSpec::for_instance(&inst.instance()?)?;
            let x: BitVector = messages.parse()?;
            Ok(Output::ok(format!("{}\n", spec.encode(&x)?)))
        }
        Command::Decode { inst, receiver, code, sideinfo } => {
            let spec = CodeSpec::for_instance(&inst.instance()?)?;
            let c: BitVector = code.parse()?;
            let side = SideInfo::parse(&sideinfo)?;
            let bit = spec.decode(receiver, &c, &side)?;
            Ok(Output::ok(format!("{}\n", u8::from(bit))))
        }
        Command::Plan { inst, json } => {
            let plan = extract_plan(&CodeSpec::for_instance(&inst.instance()?)?)?;
            Ok(Output::ok(if json { to_json(&plan) } else { render_plan_tsv(&plan) }))
        }
        Command::Verify { inst, trials, seed, with_oracles, inject_corruption, cap, jobs } => {
            verify(inst.instance()?, trials, seed, with_oracles, inject_corruption, cap, jobs)
        }
        Command::Oracle { which, inst, cap, jobs, json } => oracle(which, inst.instance()?, cap, jobs, json),
        Command::Sweep { k, d, u_from, u_to, preset, json } => {
            let rows = if preset {
                preset_table()
            } else {
                // clap guarantees all four are present without the preset.
                sweep(k.unwrap_or(0), d.unwrap_or(0), u_from.unwrap_or(0)..=u_to.unwrap_or(0))?
            };
            Ok(Output::ok(if json { to_json(&rows) } else { render_sweep_tsv(&rows) }))
        }
        Command::Baseline { which: Baseline::Mds { inst, encode, compare } } => mds(inst.instance()?, encode, compare),
    }
}

fn air(rows: usize, cols: usize, verify: bool, chain: bool) -> Result<Output> {
    let air = build_air(rows, cols)?;
    let mut out = air.matrix().to_text();
    if chain {
        out.push_str(&format!("lambda\t{}\n", join(&air.chain().lambda, " ")));
        out.push_str(&format!("beta\t{}\n", join(&air.chain().beta, " ")));
    }
    let mut passed = true;
    if verify {
        match air.first_deficient_window() {
            None => out.push_str("PASS\n"),
            Some(start) => {
                passed = false;
                out.push_str(&format!("FAIL\twindow starting at row {start} is rank deficient\n"));
            }
        }
    }
    Ok(Output::verdict(out, passed))
}

fn verify(
    inst: SncInstance,
    trials: usize,
    seed: u64,
    with_oracles: bool,
    corrupt: Option<usize>,
    cap: usize,
    jobs: usize,
) -> Result<Output> {
    let mut spec = CodeSpec::for_instance(&inst)?;
    if let Some(row) = corrupt {
        if row >= inst.k() {
            return Err(Error::ReceiverOutOfRange { receiver: row, k: inst.k() });
        }
        spec = spec.with_corrupted_expanded_row(row);
    }
    let graph = build_graph(&inst);
    let roundtrip = roundtrip_sim(&spec, trials, seed);
    let undecodable: Vec<usize> = check_decodable(&graph, spec.expanded())
        .iter()
        .enumerate()
        .filter(|(_, &ok)| !ok)
        .map(|(r, _)| r)
        .collect();
    let mut passed = roundtrip.passed() && undecodable.is_empty();

    let (mut mais, mut minrank) = (json!(null), json!(null));
    if with_oracles {
        mais = match brute_mais(&graph) {
            Ok(res) => {
                let formula = mais_formula(&inst);
                passed &= res.size == formula;
                json!({ "oracle": res.size, "formula": formula, "agree": res.size == formula })
            }
            Err(e) => json!({ "skipped": e.to_string() }),
        };
        let status = minrank_status(&inst);
        minrank = match brute_minrank2(&graph, Some(status.lower()), cap, jobs) {
            Ok(res) => {
                passed &= status.admits(res.value);
                json!({ "oracle": res.value, "formula": status.to_string(), "agree": status.admits(res.value) })
            }
            Err(e) => json!({ "skipped": e.to_string() }),
        };
    }

    let report = json!({
        "instance": inst,
        "passed": passed,
        "roundtrip": roundtrip,
        "decodable": { "receivers": inst.k(), "undecodable": undecodable },
        "mais": mais,
        "minrank": minrank,
    });
    Ok(Output::verdict(to_json(&report), passed))
}

#[derive(Serialize)]
struct OracleRow {
    oracle: String,
    formula: String,
    agree: bool,
}

fn oracle(which: OracleKind, inst: SncInstance, cap: usize, jobs: usize, json: bool) -> Result<Output> {
    let graph = build_graph(&inst);
    let row = match which {
        OracleKind::Mais => {
            if inst.k() > MAIS_CAP {
                return Err(Error::TooLarge { size: inst.k(), cap: MAIS_CAP });
            }
            let value = brute_mais(&graph)?.size;
            let formula = mais_formula(&inst);
            OracleRow { oracle: value.to_string(), formula: formula.to_string(), agree: value == formula }
        }
        OracleKind::Minrank => {
            let status = minrank_status(&inst);
            let value = brute_minrank2(&graph, Some(status.lower()), cap, jobs)?.value;
            OracleRow { oracle: value.to_string(), formula: status.to_string(), agree: status.admits(value) }
        }
        OracleKind::Decodable => {
            let spec = CodeSpec::for_instance(&inst)?;
            let count = check_decodable(&graph, spec.expanded()).iter().filter(|&&ok| ok).count();
            OracleRow { oracle: count.to_string(), formula: inst.k().to_string(), agree: count == inst.k() }
        }
    };
    let agree = row.agree;
    let out = if json {
        to_json(&row)
    } else {
        format!("oracle\tformula\tagree\n{}\t{}\t{}\n", row.oracle, row.formula, row.agree)
    };
    Ok(Output::verdict(out, agree))
}

fn mds(inst: SncInstance, encode: Option<String>, compare: bool) -> Result<Output> {
    let spec = build_mds(&inst);
    let mut out = String::new();
    if compare {
        let c = compare_lengths(&inst);
        let winner = match c.winner {
            Winner::Air => "air",
            Winner::Mds => "mds",
        };
        out.push_str("gamma\tmds_length\twinner\ttie\tconjecture_value\n");
        out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", c.gamma, c.mds_length, winner, c.tie, c.conjecture_value));
    }
    if let Some(csv) = encode {
        let x = csv
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        out.push_str(&join(&spec.encode(&x)?, ","));
        out.push('\n');
    }
    if !compare && out.is_empty() {
        out = format_decimal_matrix(spec.generator());
    }
    Ok(Output::ok(out))
}
