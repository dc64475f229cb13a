//! Stored min-shadow tables must regenerate byte for byte.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use shadowlab::verify::{min_shadow_table, MinShadowTable};

const TABLES: [(usize, usize, usize, usize); 4] = [(4, 2, 1, 1), (5, 2, 1, 1), (5, 3, 1, 1), (6, 3, 2, 1)];

fn path(n: usize, k: usize, t: usize, j: usize) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden/v1")
        .join(format!("min_shadow_n{n}_k{k}_t{t}_j{j}.csv"))
}

#[test]
fn min_shadow_tables_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (n, k, t, j) in TABLES {
        let csv = min_shadow_table(n, k, t, j).unwrap().to_csv();
        let file = path(n, k, t, j);
        if update {
            std::fs::write(&file, &csv).unwrap();
            continue;
        }
        let stored = std::fs::read_to_string(&file).unwrap_or_else(|e| panic!("{}: {e}", file.display()));
        assert_eq!(csv, stored, "{} differs from a fresh run", file.display());
        let parsed = MinShadowTable::from_csv(n, k, t, j, &stored).unwrap();
        assert_eq!(parsed.to_csv(), stored);
    }
}

#[test]
fn smallest_table_by_hand() {
    let stored = std::fs::read_to_string(path(4, 2, 1, 1)).unwrap();
    assert_eq!(stored, "size,min_shadow,witness\n1,2,0x3\n2,3,0x3 0x5\n3,3,0x3 0x5 0x6\n");
}
