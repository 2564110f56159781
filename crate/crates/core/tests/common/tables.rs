//! Published ray tables in their printed column layout.

use entrocone::scenarios::MarginalScenario;
use entrocone::{int, Rational};

/// Ray on the observable space of `sc` from `(variables, value)` entries;
/// unlisted coordinates are zero.
pub fn ray(sc: &MarginalScenario, entries: &[(&[&str], i64)]) -> Result<Vec<Rational>, String> {
    let mut v = vec![int(0); sc.space.dim()];
    for (names, x) in entries {
        v[sc.space.index_of_names(names).map_err(|e| e.to_string())?] = int(*x);
    }
    Ok(v)
}

/// Bipartite row in table layout: `H(A_x)`, `H(B_y)`, then `H(A_x B_y)` with
/// `y` running fastest.
pub fn bipartite_row(sc: &MarginalScenario, m: usize, row: &[i64]) -> Result<Vec<Rational>, String> {
    let a: Vec<String> = (0..m).map(|x| format!("A{x}")).collect();
    let b: Vec<String> = (0..m).map(|y| format!("B{y}")).collect();
    let mut v = vec![int(0); sc.space.dim()];
    let mut set = |names: &[&str], x: i64| -> Result<(), String> {
        v[sc.space.index_of_names(names).map_err(|e| e.to_string())?] = int(x);
        Ok(())
    };
    for x in 0..m {
        set(&[&a[x]], row[x])?;
        set(&[&b[x]], row[m + x])?;
        for y in 0..m {
            set(&[&a[x], &b[y]], row[2 * m + x * m + y])?;
        }
    }
    Ok(v)
}

pub const TABLE_ONE: [[i64; 8]; 5] = [
    [1, 0, 0, 0, 1, 1, 0, 0],
    [1, 0, 1, 0, 1, 1, 1, 0],
    [1, 1, 1, 0, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 2],
];

/// `(row, column, value)` of misprinted entries; the printed rows lie outside
/// the nonsignaling cone.
pub const TABLE_ONE_MISPRINTS: [(usize, usize, i64); 1] = [(2, 7, 1)];
pub const TABLE_TWO_MISPRINTS: [(usize, usize, i64); 1] = [(5, 13, 0)];

pub const TABLE_TWO: [[i64; 15]; 20] = [
    [1, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 1, 1, 1, 1, 0, 0, 1, 0, 0],
    [1, 1, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 0, 0],
    [1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 2, 1, 1, 1, 0],
    [1, 1, 1, 1, 1, 1, 2, 2, 1, 2, 2, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 2, 1, 2, 2, 2, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 2, 1, 2, 1, 2, 1, 2, 1, 1],
    [1, 1, 1, 1, 1, 0, 2, 1, 1, 2, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 0, 1, 2, 1, 2, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 2, 2, 1, 2, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 2, 1, 2, 1, 1],
    [1, 1, 1, 1, 1, 0, 2, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 2, 2, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 2, 1, 2, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 1, 1, 1],
];

/// `H(X0) H(X1) H(G0) H(G1) H(X0,G0) H(X1,G1) H(M)`.
pub const IC_TABLE: [[i64; 7]; 8] = [
    [0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 1, 0, 1, 0],
    [0, 0, 1, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 1, 0],
    [1, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 1, 0, 1, 1],
    [1, 0, 1, 0, 1, 0, 1],
    [1, 1, 1, 1, 1, 1, 1],
];

pub fn ic_rows(sc: &MarginalScenario) -> Result<Vec<Vec<Rational>>, String> {
    let cols: [&[&str]; 7] = [&["X0"], &["X1"], &["G0"], &["G1"], &["X0", "G0"], &["X1", "G1"], &["M"]];
    IC_TABLE
        .iter()
        .map(|r| {
            let entries: Vec<(&[&str], i64)> = cols.iter().zip(r).map(|(c, &x)| (*c, x)).collect();
            ray(sc, &entries)
        })
        .collect()
}
