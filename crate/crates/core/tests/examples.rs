macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(group_elements, "group_elements.rs", group_elements_runs);
example!(
    transposition_walk,
    "transposition_walk.rs",
    transposition_walk_runs
);
example!(
    signed_permutations,
    "signed_permutations.rs",
    signed_permutations_runs
);
example!(dihedral, "dihedral.rs", dihedral_runs);
example!(known_formulas, "known_formulas.rs", known_formulas_runs);
example!(pairwise_engine, "pairwise_engine.rs", pairwise_engine_runs);
example!(monte_carlo, "monte_carlo.rs", monte_carlo_runs);
example!(command_line, "command_line.rs", command_line_runs);
