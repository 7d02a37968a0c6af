use descent_forge::builtin::{builtin, SHIPPED};
use descent_forge::instance::{builtin_file_name, parse_instance, render_builtin, InstanceSpec};
use descent_forge::Error;

const SPLIT2: &str = r#"
name = "split2(2)"
p = 2

[[algebra]]
name = "B"
dim = 1
unit = [1]
struct_consts = [[[1]]]

[[algebra]]
name = "S"
dim = 2
unit = [1, 1]
struct_consts = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]

[extension]
base = "B"
top = "S"
matrix = [[1], [1]]
"#;

fn messages(text: &str) -> Vec<String> {
    match parse_instance(text) {
        Err(Error::Instance(m)) => m,
        other => panic!("expected an instance error, got {other:?}"),
    }
}

#[test]
fn parses_split2() {
    let spec = parse_instance(SPLIT2).unwrap();
    assert_eq!(spec.extension.top().dim(), 2);
    assert_eq!(spec.extension.base().dim(), 1);
    assert_eq!(spec.field().modulus(), 2);
    assert_eq!(spec.seed, 0);
    assert!(spec.comatrix.is_none());
    assert_eq!(spec.hash.len(), 64);
}

#[test]
fn rejects_composite_modulus() {
    let m = messages(&SPLIT2.replace("p = 2", "p = 4"));
    assert_eq!(m.len(), 1);
    assert!(m[0].contains("modulus must be prime"), "{m:?}");
    assert!(m[0].starts_with("line 3:"), "{m:?}");
}

#[test]
fn forwards_unit_diagnostics() {
    let m = messages(&SPLIT2.replace("unit = [1, 1]", "unit = [1, 0]"));
    assert!(m.iter().any(|s| s.contains("1 * e1 != e1")), "{m:?}");
    assert!(m.iter().all(|s| s.starts_with("line 11: algebra[1] `S`")), "{m:?}");
}

#[test]
fn reports_offending_triple() {
    // e0 = 1, e1 e1 = e2, e1 e2 = 0, e2 e1 = e1, e2 e2 = 0:
    // (e1 e1) e1 = e2 e1 = e1 but e1 (e1 e1) = e1 e2 = 0
    let text = r#"
name = "bad"
p = 2

[[algebra]]
name = "B"
dim = 1
unit = [1]
struct_consts = [[[1]]]

[[algebra]]
name = "S"
dim = 3
unit = [1, 0, 0]
struct_consts = [
  [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
  [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
  [[0, 0, 1], [0, 1, 0], [0, 0, 0]],
]

[extension]
base = "B"
top = "S"
matrix = [[1], [0], [0]]
"#;
    let m = messages(text);
    assert!(m.iter().any(|s| s.contains("associativity fails at (e1, e1, e1)")), "{m:?}");
}

#[test]
fn syntax_errors_carry_a_line() {
    let m = messages(&SPLIT2.replace("matrix = [[1], [1]]", "matrix = [[1], [1]"));
    assert!(m[0].starts_with("line 20: syntax"), "{m:?}");
}

#[test]
fn dimension_mismatches() {
    let m = messages(&SPLIT2.replace("matrix = [[1], [1]]", "matrix = [[1, 0], [1, 0]]"));
    assert!(m[0].contains("extension.matrix: expected 2x1, got 2x2"), "{m:?}");
    let m = messages(&SPLIT2.replace("unit = [1, 1]", "unit = [1, 1, 0]"));
    assert!(m[0].contains("unit: 3 coordinates, dim is 2"), "{m:?}");
    let m = messages(&SPLIT2.replace("unit = [1, 1]", "unit = [1, 2]"));
    assert!(m[0].contains("not reduced mod 2"), "{m:?}");
}

#[test]
fn names_must_resolve() {
    let m = messages(&SPLIT2.replace("top = \"S\"", "top = \"T\""));
    assert!(m[0].contains("extension.top: unknown algebra `T`"), "{m:?}");
    let m = messages(&SPLIT2.replace("name = \"S\"", "name = \"B\""));
    assert!(m[0].contains("duplicate algebra name"), "{m:?}");
}

#[test]
fn rejects_non_morphisms_and_non_injective_maps() {
    let m = messages(&SPLIT2.replace("matrix = [[1], [1]]", "matrix = [[1], [0]]"));
    assert!(m[0].contains("f(1) != 1"), "{m:?}");
    // swap the roles: the projection F_2 x F_2 -> F_2 onto the first factor
    let text = SPLIT2
        .replace("top = \"S\"", "top = \"X\"")
        .replace("base = \"B\"", "base = \"S\"")
        .replace("name = \"B\"", "name = \"X\"")
        .replace("matrix = [[1], [1]]", "matrix = [[1, 0]]");
    let m = messages(&text);
    assert!(m[0].contains("extension.matrix: extension is not injective"), "{m:?}");
}

#[test]
fn unknown_fields_and_conflicting_blocks() {
    let m = messages(&SPLIT2.replace("p = 2", "p = 2\ncolour = 1"));
    assert!(m[0].contains("colour"), "{m:?}");
    let comatrix = "\n[comatrix]\nbase = \"B\"\nalgebra = \"B\"\ndim = 1\nleft_action = [[[1]]]\nright_action = [[[1]]]\n";
    let m = messages(&format!("{SPLIT2}{comatrix}"));
    assert!(m[0].contains("not both"), "{m:?}");
}

#[test]
fn budgets_override_defaults() {
    let spec = parse_instance(&format!("{SPLIT2}\n[budgets]\nsubspaces = 10\n")).unwrap();
    assert_eq!(spec.budgets.subspaces, 10);
    assert_eq!(spec.budgets.endos, 1 << 20);
}

#[test]
fn builtins_round_trip() {
    for name in SHIPPED {
        let b = builtin(name).unwrap();
        let spec = InstanceSpec::builtin(name).unwrap();
        assert_eq!(&spec.name, name);
        assert_eq!(spec.extension.base(), b.extension.base(), "{name}");
        assert_eq!(spec.extension.top(), b.extension.top(), "{name}");
        assert_eq!(spec.extension.map().matrix(), b.extension.map().matrix(), "{name}");
        assert_eq!(spec.comatrix, b.comatrix, "{name}");
    }
}

#[test]
fn shipped_files_match_the_library() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances");
    for name in SHIPPED {
        let path = dir.join(builtin_file_name(name));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, render_builtin(name).unwrap(), "{name}");
        assert_eq!(parse_instance(&text).unwrap().hash, InstanceSpec::builtin(name).unwrap().hash);
    }
}

#[test]
fn hash_depends_on_the_bytes() {
    let a = parse_instance(SPLIT2).unwrap();
    let b = parse_instance(&format!("{SPLIT2}\n")).unwrap();
    assert_ne!(a.hash, b.hash);
    assert_eq!(a.hash, parse_instance(SPLIT2).unwrap().hash);
}
