use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kerrep_cli::{parse_problem, print_problem, run, Outcome};

fn file(name: &str, text: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn kerrep(args: &[&str]) -> Outcome {
    run(std::iter::once("kerrep").chain(args.iter().copied()))
}

fn scalar_rep(name: &str, field: &str, entry: &str) -> String {
    file(name, &format!("field {}\nvars z\nmatrix 1 1\n{}\n", field, entry))
}

#[test]
fn solve_fibonacci() {
    let fib = scalar_rep("fib.krep", "QQ", "z^2 - z - 1");
    let out = kerrep(&["solve", &fib, "--window", "5"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("dim 2\n"));
    assert_eq!(out.stdout.matches("basis ").count(), 2);
    // Each basis trajectory is a valid trajectory file body.
    for block in out.stdout.split("basis ").skip(1) {
        let body: String = block.lines().skip(1).map(|l| format!("{}\n", l)).collect();
        let traj = file("fib_basis.traj", &format!("field QQ\nvars z\n{}", body));
        assert_eq!(kerrep(&["member", &fib, &traj]).code, 0);
    }
}

#[test]
fn solve_window_shapes() {
    let k = file("koszul.krep", "field GF 7\nvars z1 z2\nmatrix 1 2\nz1 z2\n");
    assert!(kerrep(&["solve", &k, "--window", "3,3"]).stdout.starts_with("dim 1\n"));
    assert!(kerrep(&["solve", &k, "--window", "3"]).stdout.starts_with("dim 1\n"));
    let bad = kerrep(&["solve", &k, "--window", "1,2,3"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("3 bounds"));
}

#[test]
fn containment_decisions() {
    let a = scalar_rep("contains_a.krep", "QQ", "z^2 - 1");
    let b = scalar_rep("contains_b.krep", "QQ", "z - 1");
    let yes = kerrep(&["contains", &a, &b]);
    assert_eq!((yes.code, yes.stdout.as_str()), (0, "B(b) ⊆ B(a): true\n"));
    let no = kerrep(&["contains", &b, &a]);
    assert_eq!((no.code, no.stdout.as_str()), (1, "B(b) ⊆ B(a): false\n"));
    assert_eq!(kerrep(&["contains", &a, &a]).code, 0);
    let other = scalar_rep("contains_gf.krep", "GF 5", "z - 1");
    assert_eq!(kerrep(&["contains", &a, &other]).code, 2);
}

#[test]
fn membership() {
    let fib = scalar_rep("member_fib.krep", "QQ", "z^2 - z - 1");
    let seq = |name: &str, vals: &[i64]| {
        let pts: String = vals.iter().enumerate().map(|(t, v)| format!("point {} : {}\n", t, v)).collect();
        file(name, &format!("field QQ\nvars z\nwindow {}\n{}", vals.len() - 1, pts))
    };
    let good = kerrep(&["member", &fib, &seq("good.traj", &[1, 1, 2, 3, 5, 8])]);
    assert_eq!(good.code, 0);
    assert!(good.stdout.starts_with("member: true\nchecked 4\n"));
    let bad = kerrep(&["member", &fib, &seq("bad.traj", &[1, 1, 2, 3, 5, 9])]);
    assert_eq!(bad.code, 1);
    assert!(bad.stdout.contains("violation: column 1 at point 3\n"));
    let short = kerrep(&["member", &fib, &seq("short.traj", &[1, 1])]);
    assert_eq!(short.code, 2);
    assert!(short.stderr.contains("vacuous"));
}

#[test]
fn nc_membership() {
    let g = file("nc_g.krep", "field QQ\nvars a b\nncmatrix 1 1\na - b\n");
    let sset = |name: &str, v: [i64; 3]| {
        file(
            name,
            &format!(
                "field QQ\nvars a b\nstates 3\ngenerators 0\ntrans 1 : 0 -> 1\ntrans 2 : 0 -> 2\nvalue 0 : {}\nvalue 1 : {}\nvalue 2 : {}\n",
                v[0], v[1], v[2]
            ),
        )
    };
    assert_eq!(kerrep(&["member", &g, &sset("const.sset", [1, 1, 1])]).code, 0);
    let out = kerrep(&["member", &g, &sset("skew.sset", [1, 2, 3])]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("violation: column 1 at state 0"));
}

#[test]
fn resolution_and_syzygies() {
    let k = file("res.krep", "field QQ\nvars z1 z2\nmatrix 1 2\nz1, z2\n");
    let out = kerrep(&["resolve", &k]);
    assert_eq!(
        out.stdout,
        "length 2\nG1 1 x 2\nz1, z2\nG2 2 x 1\nz2\n-z1\n\
         exact at G1: product zero true, kernel in image true\n\
         exact at G2: product zero true, kernel in image true\n"
    );
    assert_eq!(kerrep(&["syz", &k]).stdout, "matrix 2 1\nz2\n-z1\n");
    let z = file("res_zero.krep", "field QQ\nvars z\nmatrix 1 1\n0\n");
    assert_eq!(kerrep(&["resolve", &z]).stdout, "length 0\n");
    let gb = kerrep(&["gb", &file("gb.krep", "field QQ\nvars z\nmatrix 1 2\nz^2 - 1, z - 1\n")]);
    assert_eq!(gb.stdout, "basis 1\n[z - 1]\n");
}

#[test]
fn smith_and_decompose() {
    let d = file("diag.krep", "field QQ\nvars z\nmatrix 2 2\nz, 0\n0, z - 1\n");
    let smith = kerrep(&["smith", &d]);
    assert!(smith.stdout.starts_with("invariant factors: 1, z^2 - z\nD 2 x 2\n1, 0\n0, z^2 - z\n"));
    let dec = kerrep(&["decompose", &d]);
    assert_eq!(dec.stdout, "free rank 0\ninvariant factors: z^2 - z\ntorsion dim 2\n");
    let free = file("free.krep", "field QQ\nvars z\nmatrix 1 0\n");
    assert_eq!(kerrep(&["decompose", &free]).stdout, "free rank 1\ninvariant factors: (none)\ntorsion dim 0\n");
    let multi = file("multi.krep", "field QQ\nvars z1 z2\nmatrix 1 1\nz1\n");
    let err = kerrep(&["smith", &multi]);
    assert_eq!(err.code, 2);
    assert!(err.stderr.contains("univariate"));
}

#[test]
fn lifting() {
    let g = scalar_rep("lift_g.krep", "QQ", "z - 1");
    let f = scalar_rep("lift_f.krep", "QQ", "z^2 - 1");
    let h0 = scalar_rep("lift_h0.krep", "QQ", "1");
    let zero = scalar_rep("lift_zero.krep", "QQ", "0");
    assert_eq!(kerrep(&["lift", &g, &f, &h0]).stdout, "H1 1 x 1\nz + 1\n");
    assert_eq!(kerrep(&["lift", &g, &f, &zero]).stdout, "H1 1 x 1\n0\n");
    let none = kerrep(&["lift", &scalar_rep("lift_z.krep", "QQ", "z"), &g, &h0]);
    assert_eq!((none.code, none.stdout.as_str()), (1, "no lift\n"));
}

#[test]
fn dualize() {
    let g = scalar_rep("dual_g.krep", "QQ", "z - 1");
    assert_eq!(kerrep(&["dualize", &g]).stdout, "A^1 / <[z - 1]>\n");
    let f = file("filt.krep", "field GF 2\nfiltration\ndims 1 2 3\nmap 0 : 1 0\nmap 1 : 1 0 0 1 0 0\n");
    let out = kerrep(&["dualize", &f]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "tower\ndims 1 2 3\nmap 0 : 1 0\nmap 1 : 1 0 0 0 1 0\ndouble dual: true\n");
    let tower: String = out.stdout.lines().take(4).map(|l| format!("{}\n", l)).collect();
    let t = file("tower.krep", &format!("field GF 2\n{}", tower));
    let back = kerrep(&["dualize", &t]);
    assert_eq!(back.stdout, "filtration\ndims 1 2 3\nmap 0 : 1 0\nmap 1 : 1 0 0 1 0 0\ndouble dual: true\n");
}

#[test]
fn noncommutative_dimensions() {
    assert_eq!(kerrep(&["nc-kernel-dims", "--n", "2", "--degree", "4"]).stdout, "0 0 1 4 11\n");
    assert_eq!(kerrep(&["nc-kernel-dims", "--n", "1", "--degree", "3"]).stdout, "0 0 0 0\n");
    let span = kerrep(&["nc-span-dims", "--degree", "4", "--field", "GF 2"]);
    assert!(span.stdout.ends_with("dims 0 0 1 4 11\nproducts 0 0 1 4 12\n"));
    let gens = file("nc_gens.krep", "field QQ\nvars a b\nncmatrix 1 1\na*b - b*a\n");
    let from_file = kerrep(&["nc-span-dims", &gens, "--degree", "2"]);
    assert!(from_file.stdout.ends_with("dims 0 0 1\nproducts 0 0 1\n"));
    assert_eq!(kerrep(&["nc-kernel-dims", "--n", "2", "--degree", "40"]).code, 2);
}

#[test]
fn density_and_codec() {
    let out = kerrep(&["demo-density", "--max-t", "3"]);
    assert_eq!(out.stdout, "T=0 rank 1 of 1\nT=1 rank 2 of 2\nT=2 rank 3 of 3\nT=3 rank 4 of 4\n");
    let t = file("codec.traj", "field QQ\nvars z\nwindow 2\npoint 0 : 1\npoint 1 : 2\npoint 2 : 3\n");
    let enc = kerrep(&["codec", "encode", &t]);
    assert_eq!(enc.stdout, "z^-1 + 2*z^-2 + 3*z^-3\n");
    let dec = kerrep(&["codec", "decode", enc.stdout.trim_end(), "--len", "3"]);
    assert_eq!(dec.stdout, "window 2\npoint 0 : 1\npoint 1 : 2\npoint 2 : 3\n");
    let zero = file("codec0.traj", "field QQ\nvars z\nwindow 1\npoint 0 : 0\npoint 1 : 0\n");
    assert_eq!(kerrep(&["codec", "encode", &zero]).stdout, "\n");
    assert_eq!(kerrep(&["codec", "decode", "z^-1 +", "--len", "2"]).code, 2);
}

#[test]
fn json_reports() {
    let a = scalar_rep("json_a.krep", "QQ", "z^2 - 1");
    let b = scalar_rep("json_b.krep", "QQ", "z - 1");
    let out = kerrep(&["--json", "contains", &a, &b]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    for key in ["command", "inputs", "result", "certificates", "timings"] {
        assert!(v.get(key).is_some(), "missing {}", key);
    }
    assert_eq!(v["command"], "contains");
    assert_eq!(v["result"]["contains"], true);
    let lift = kerrep(&["lift", &b, &a, &scalar_rep("json_h0.krep", "QQ", "1"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&lift.stdout).unwrap();
    assert_eq!(v["certificates"]["h0_f_equals_g_h1"], true);
    assert_eq!(v["result"]["h1"]["entries"][0][0], "z + 1");
}

#[test]
fn errors_and_usage() {
    let bad = file("bad.krep", "field GF 4\nvars z\nmatrix 1 1\nz\n");
    let out = kerrep(&["gb", &bad]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.ends_with("bad.krep:1:10: 4 is not prime\n"), "{}", out.stderr);
    let unknown = file("unknown.krep", "field QQ\nvars z\nmatrix 1 1\nz + y\n");
    assert!(kerrep(&["gb", &unknown]).stderr.contains("unknown.krep:4:5:"));
    assert_eq!(kerrep(&["gb", "/nonexistent/file.krep"]).code, 2);
    assert_eq!(kerrep(&["frobnicate"]).code, 2);
    assert_eq!(kerrep(&["--help"]).code, 0);
    let traj = file("not_matrix.traj", "field QQ\nvars z\nwindow 0\npoint 0 : 1\n");
    assert!(kerrep(&["smith", &traj]).stderr.contains("expected a matrix, found a trajectory"));
}

#[test]
fn output_is_deterministic() {
    let k = file("det.krep", "field GF 5\nvars x y\nmatrix 2 3\nx^2 + y, x*y, 1\ny^2, x + y, x\n");
    for cmd in ["gb", "syz", "resolve", "dualize"] {
        let first = kerrep(&[cmd, &k]);
        assert_eq!(first.code, 0, "{}: {}", cmd, first.stderr);
        for _ in 0..3 {
            assert_eq!(kerrep(&[cmd, &k]), first);
        }
    }
}

fn random_poly_text(rng: &mut ChaCha8Rng, vars: &[&str]) -> String {
    let terms = rng.gen_range(0..4);
    if terms == 0 {
        return "0".into();
    }
    (0..terms)
        .map(|_| {
            let c: i64 = rng.gen_range(-9..=9);
            let mut t = c.to_string();
            for v in vars {
                match rng.gen_range(0..3) {
                    0 => {}
                    1 => t.push_str(&format!("*{}", v)),
                    _ => t.push_str(&format!("*{}^{}", v, rng.gen_range(2..4))),
                }
            }
            t
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[test]
fn print_parse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for case in 0..200 {
        let field = ["QQ", "GF 2", "GF 7", "GF 101"][case % 4];
        let vars: &[&str] = [&["z"][..], &["x", "y"][..], &["a", "b", "c"][..]][case % 3];
        let (r, c) = (rng.gen_range(0..4), rng.gen_range(0..4));
        let kind = if case % 5 == 0 { "ncmatrix" } else { "matrix" };
        let mut text = format!("field {}\nvars {}\n{} {} {}\n", field, vars.join(" "), kind, r, c);
        if c > 0 {
            for _ in 0..r {
                let row: Vec<String> = (0..c).map(|_| random_poly_text(&mut rng, vars)).collect();
                text.push_str(&row.join(", "));
                text.push('\n');
            }
        }
        let p = parse_problem(&text).unwrap_or_else(|e| panic!("{}\n{}", e, text));
        let once = print_problem(&p);
        let q = parse_problem(&once).unwrap();
        assert_eq!(q, p, "{}", once);
        assert_eq!(print_problem(&q), once);
    }
}

#[test]
fn mutated_inputs_never_panic() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let base = "field GF 7\nvars z1 z2\norder lex\nmatrix 2 2\nz1^2 - z2, 3*z1*z2\n(z1 + 1)^2, -z2/2\n";
    for _ in 0..2000 {
        let mut s = base.as_bytes().to_vec();
        for _ in 0..rng.gen_range(1..=4) {
            let at = rng.gen_range(0..s.len());
            s[at] = b"0123456789 ,:^*+-/()\nz#"[rng.gen_range(0..23)];
        }
        if let Err(e) = kerrep_cli::parse_problem_bytes(&s) {
            assert!(e.line >= 1 && e.column >= 1);
        }
    }
}
