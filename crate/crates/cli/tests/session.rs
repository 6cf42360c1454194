use fgrad_cli::{parse_session, Arg, CommandKind, ModuleExpr, Pos, Value};

const EXAMPLE: &str = include_str!("fixtures/example_att.fg");

fn diag(src: &str) -> (Pos, String) {
    let d = parse_session(src).unwrap_err();
    (d.pos, d.message)
}

#[test]
fn example_parse_tree() {
    let s = parse_session(EXAMPLE).unwrap();
    let ring = s.ring.as_ref().unwrap();
    assert_eq!(ring.name, "R");
    assert_eq!(ring.ring.variables(), ["x", "y"]);
    assert_eq!(s.bindings.len(), 3);
    assert_eq!(s.bindings.iter().map(|b| b.name.as_str()).collect::<Vec<_>>(), ["M", "N", "a"]);
    match &s.bindings[1].value {
        Value::Module(ModuleExpr::Sum(terms)) => assert_eq!(terms.len(), 2),
        v => panic!("{v:?}"),
    }
    assert!(matches!(&s.bindings[2].value, Value::Ideal(g) if g.len() == 2));
    let kinds: Vec<CommandKind> = s.commands.iter().map(|c| c.kind).collect();
    assert_eq!(kinds, [CommandKind::AttTop, CommandKind::AttTopLocal]);
    assert_eq!(s.commands[0].arg("N").unwrap().0, &Arg::Name("N".into()));
    assert_eq!(s.commands[0].pos, Pos { line: 6, col: 1 });
}

#[test]
fn empty_session() {
    for src in ["", "\n\n", "# nothing here\n"] {
        let s = parse_session(src).unwrap();
        assert!(s.ring.is_none() && s.bindings.is_empty() && s.commands.is_empty());
    }
}

#[test]
fn canonical_round_trip() {
    let canonical = parse_session(EXAMPLE).unwrap().to_string();
    assert_eq!(parse_session(&canonical).unwrap().to_string(), canonical);
    let src = "ring S = GF(7)[u,v,w] graded standard order lex;\n\
               ideal a = (u^2, u*v);\n\
               sequence xs = (v, w);\n\
               module M = coker [[u, v], [0, u]] twists (0, 0);\n\
               module N = cyclic (u*v) twist 1 ++ cyclic ();\n\
               fgrad a=a b=(v, w) M=M;\n\
               ns-verify a=a xs=xs M=S N=N window=[-2..2];\n\
               ext i=1 M=M N=S;\n";
    assert_eq!(parse_session(src).unwrap().to_string(), src);
}

#[test]
fn twisted_coker_round_trips() {
    let src = "ring R = Q[x,y] graded fine;\nmodule M = coker [[x, y], [0, x]] twists ((0,0), (-1,1));\n";
    let s = parse_session(src).unwrap();
    assert_eq!(s.to_string(), src);
}

#[test]
fn mismatched_rows_point_at_the_matrix() {
    let src = "ring R = Q[x,y];\nmodule M = coker [[x][y]];\n";
    assert_eq!(diag(src).0, Pos { line: 2, col: 18 });
    let src = "ring R = Q[x,y];\nmodule M = coker [[x, y], [x]];\n";
    let (pos, msg) = diag(src);
    assert_eq!(pos, Pos { line: 2, col: 18 });
    assert!(msg.contains("row 2"), "{msg}");
}

#[test]
fn inhomogeneous_generator_is_located() {
    let (pos, msg) = diag("ring R = Q[x,y];\nideal a = (x, x + y^2);\n");
    assert_eq!(pos, Pos { line: 2, col: 15 });
    assert!(msg.contains("inhomogeneous"));
    // fine grading: x + y is inhomogeneous
    assert!(parse_session("ring R = Q[x,y] graded fine;\nideal a = (x + y);\n").is_err());
    assert!(parse_session("ring R = Q[x,y];\nideal a = (x + y);\n").is_ok());
}

#[test]
fn unbound_names() {
    let (pos, msg) = diag("ring R = Q[x];\nfgrad a=b b=(x);\n");
    assert_eq!(pos, Pos { line: 2, col: 9 });
    assert!(msg.contains("unbound name `b`"));
    let (pos, _) = diag("ring R = Q[x];\nmodule M = K;\n");
    assert_eq!(pos, Pos { line: 2, col: 12 });
    // names bind before use
    assert!(parse_session("ring R = Q[x];\nfgrad a=a b=(x);\nideal a = (x);\n").is_err());
}

#[test]
fn ring_errors() {
    let (pos, msg) = diag("ring R = Q[x,y];\nideal a = (x*z);\n");
    assert_eq!(pos.line, 2);
    assert!(msg.contains("z"), "{msg}");
    let (pos, msg) = diag("ring R = Q[x];\nring S = Q[y];\n");
    assert_eq!(pos, Pos { line: 2, col: 1 });
    assert!(msg.contains("one ring"));
    let (_, msg) = diag("ideal a = (x);\n");
    assert!(msg.contains("no ring"));
    assert!(parse_session("ring R = GF(6)[x];\n").is_err());
    assert!(parse_session("ring R = ZZ/101[x];\n").is_ok());
}

#[test]
fn statement_errors() {
    let (pos, msg) = diag("ring R = Q[x]\n");
    assert_eq!(pos, Pos { line: 1, col: 14 });
    assert!(msg.contains("missing `;`"));
    let (_, msg) = diag("ring R = Q[x];\nfrobnicate a=(x);\n");
    assert!(msg.contains("unknown statement"));
    let (pos, msg) = diag("ring R = Q[x];\nfgrad a=(x) c=(x);\n");
    assert_eq!(pos, Pos { line: 2, col: 13 });
    assert!(msg.contains("no argument `c`"));
    let (_, msg) = diag("ring R = Q[x];\nfgrad a=(x) a=(x);\n");
    assert!(msg.contains("twice"));
    let (_, msg) = diag("ring R = Q[x];\nideal a = (x);\nmodule a = R;\n");
    assert!(msg.contains("already bound"));
    let (_, msg) = diag("ring R = Q[x];\nideal a = (x);\nmodule M = a;\n");
    assert!(msg.contains("not a module"));
}

#[test]
fn windows_and_integers() {
    let s = parse_session("ring R = Q[x,y] graded fine;\ncech-table a=(x) N=R window=[-4..2];\next i=3 M=R N=R;\n").unwrap();
    assert_eq!(s.commands[0].arg("window").unwrap().0, &Arg::Range(-4, 2));
    assert_eq!(s.commands[1].arg("i").unwrap().0, &Arg::Int(3));
    assert!(parse_session("ring R = Q[x];\nhilbert M=R window=[3..1];\n").is_err());
}
