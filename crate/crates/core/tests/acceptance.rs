//! The thirteen reproduction checks at full scale; one test per check.

use diameter_lab::experiments::{run_check, Scale};

fn check(id: u8) {
    let r = run_check(id, Scale::Full, 0);
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

macro_rules! checks {
    ($($name:ident = $id:expr;)*) => {
        $(
            #[test]
            fn $name() {
                check($id);
            }
        )*
    };
}

checks! {
    criterion_01_corridor = 1;
    criterion_02_hamiltonian_decomposition = 2;
    criterion_03_join_product = 3;
    criterion_04_clm_extremal = 4;
    criterion_05_clm_search = 5;
    criterion_06_kk_bl_invariants = 6;
    criterion_07_substitution = 7;
    criterion_08_nonpure_family = 8;
    criterion_09_legal_sequences = 9;
    criterion_10_non_revisiting = 10;
    criterion_11_decomposability = 11;
    criterion_12_bounds_table = 12;
    criterion_13_johnson_induced_paths = 13;
}
