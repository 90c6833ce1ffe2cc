use std::path::PathBuf;
use std::process::Command;

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/supdense.h")
}

#[test]
fn header_declares_every_entry_point() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "sd_last_error",
        "sd_oracle_from_graph_file",
        "sd_oracle_from_edges",
        "sd_oracle_from_table_file",
        "sd_oracle_len",
        "sd_oracle_free",
        "sd_matroid_cardinality",
        "sd_matroid_partition",
        "sd_matroid_from_json",
        "sd_matroid_free",
        "sd_densest",
        "sd_den_m_greedy",
        "sd_den_combo_greedy",
        "sd_den_knapsack_greedy",
        "sd_densest_closure",
        "sd_result_density",
        "sd_result_len",
        "sd_result_members",
        "sd_result_free",
    ] {
        assert!(
            text.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(text.contains("typedef struct SdOracle SdOracle;"));
    assert!(text.contains("SD_STATUS_INFEASIBLE = 2"));
}

#[test]
fn header_compiles_as_c_and_cxx() {
    for (cc, lang) in [("cc", "c"), ("c++", "c++")] {
        let Ok(out) = Command::new(cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(header())
            .output()
        else {
            eprintln!("{cc} not found, skipping");
            continue;
        };
        assert!(
            out.status.success(),
            "{cc}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}
