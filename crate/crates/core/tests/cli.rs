use schubert_core::cli::{run, EXIT_OK, EXIT_PRECONDITION, EXIT_RESOURCE, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("schubert").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn stdout_of(args: &[&str]) -> String {
    let (code, out, err) = invoke(args);
    assert_eq!(code, EXIT_OK, "stderr: {err}");
    out
}

#[test]
fn march_single_row() {
    assert_eq!(stdout_of(&["march", "4317625", "--rows", "2"]), "4517326\n");
}

#[test]
fn march_with_steps() {
    assert_eq!(
        stdout_of(&["march", "4317625", "--rows", "1,3", "--steps"]),
        "march toward row 1: 5317426\nadd box (5,4): 5317624\nmarch toward row 3: 5347126\n5347126\n"
    );
}

#[test]
fn multiply_json() {
    assert_eq!(stdout_of(&["multiply", "321", "132"]), "{\"341256\":1,\"421356\":1,\"431256\":-1}\n");
    assert_eq!(stdout_of(&["multiply", "321", "132", "--cohomology", "--format", "text"]), "[341256] + [421356]\n");
    assert_eq!(stdout_of(&["multiply", "21", "132"]), "{\"23145\":1,\"31245\":1,\"32145\":-1}\n");
}

#[test]
fn identity_tree() {
    assert_eq!(stdout_of(&["tree", "1", "--t", "1"]), "1\n");
    assert_eq!(
        stdout_of(&["tree", "1", "--t", "1", "--format", "json"]),
        "{\"label\":\"1\",\"march\":[],\"children\":[]}\n"
    );
}

#[test]
fn tree_text_and_dot() {
    let text = stdout_of(&["tree", "321465", "--t", "2"]);
    assert_eq!(
        text,
        "321465\n  -[4]-> 321546\n    -[1]-> 421356\n    -[2]-> 341256\n    -[3]-> 324156\n      -> ∅\n    \
         -[1,2]-> 431256\n    -[1,3]-> 423156\n      -> ∅\n    -[2,3]-> 342156\n      -> ∅\n    \
         -[1,2,3]-> 432156\n      -> ∅\n"
    );
    let dot = stdout_of(&["tree", "321465", "--t", "2", "--format", "dot"]);
    assert!(dot.starts_with("digraph march_tree {\n  n0 [label=\"321465\"];\n"));
    assert_eq!(dot.matches(" -> ").count(), 12);
    assert_eq!(dot.matches("[label=\"∅\"]").count(), 4);
}

#[test]
fn cohomology_tree_has_single_marches() {
    let text = stdout_of(&["tree", "321465", "--t", "2", "--cohomology"]);
    assert!(!text.contains("-[1,2]->"));
    assert!(text.contains("-[3]-> 324156"));
}

#[test]
fn diagram_output() {
    assert_eq!(
        stdout_of(&["diagram", "4317625"]),
        "□ □ □ ● · · ·\n□ □ ● · · · ·\n● · · · · · ·\n· □ · · □ □ ●\n· □ · · □ ● ·\n· ● · · · · ·\n· · · · ● · ·\n\
         length: 10\ncorner: (5,5)\npivots: (1,4) (2,3) (3,1)\n"
    );
    assert_eq!(stdout_of(&["diagram", "1"]), "●\nlength: 0\ncorner: none\npivots: none\n");
}

#[test]
fn groth_output() {
    assert_eq!(stdout_of(&["groth", "132"]), "x1 + x2 - x1*x2\n");
    assert_eq!(stdout_of(&["groth", "132", "--truncate", "1"]), "x1\n");
    assert_eq!(stdout_of(&["groth", "1"]), "1\n");
}

#[test]
fn product_outputs() {
    assert_eq!(
        stdout_of(&["product", "321", "132", "--n", "3", "--t", "2"]),
        "{\"341256\":1,\"421356\":1,\"431256\":-1}\n"
    );
    assert_eq!(
        stdout_of(&["product", "41352", "43215", "--n", "5", "--t", "7", "--cohomology", "--format", "text"]),
        "[413569827,10] + [413629857,10]\n"
    );
}

#[test]
fn verify_report() {
    let out = stdout_of(&["verify", "3412", "3214", "--n", "4", "--t", "4"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["match"], true);
    assert_eq!(v["problem"]["rho"], "12463578");
    assert_eq!(v["tree_expansion"].as_object().unwrap().len(), 9);
    assert_eq!(v["discrepancies"], serde_json::json!([]));
}

#[test]
fn verify_paper_passes() {
    let out = stdout_of(&["verify-paper"]);
    assert!(!out.contains("FAIL"));
    assert!(out.ends_with("checks passed\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["march", "4317625", "--rows", "4"]).0, EXIT_PRECONDITION);
    assert_eq!(invoke(&["march", "1", "--rows", "1"]).0, EXIT_PRECONDITION);
    assert_eq!(invoke(&["diagram", "4417"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["tree", "321465"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["product", "4321", "2143", "--n", "4", "--t", "1"]).0, EXIT_PRECONDITION);
    assert_eq!(invoke(&["product", "21", "21", "--n", "2", "--t", "9"]).0, EXIT_PRECONDITION);
    assert_eq!(invoke(&["tree", "321465", "--t", "2", "--node-ceiling", "3"]).0, EXIT_RESOURCE);
    assert_eq!(invoke(&["verify", "41352", "43215", "--n", "5", "--t", "7"]).0, EXIT_RESOURCE);
    let (code, _, err) = invoke(&["march", "4317625", "--rows", "4"]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert_eq!(err, "error: row 4 is not a pivot row of 4317625\n");
}

#[test]
fn outputs_are_byte_stable() {
    let args = ["tree", "34127658", "--t", "4", "--format", "json"];
    let first = stdout_of(&args);
    assert_eq!(first, stdout_of(&args));
    let parallel = stdout_of(&["tree", "34127658", "--t", "4", "--format", "json", "--parallel"]);
    assert_eq!(first, parallel);
}
