//! The fixed command sequence behind the golden transcript.

use std::fmt::Write as _;
use std::path::PathBuf;

pub fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

pub fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/transcript.txt")
}

/// Invocations as argument lists; `@name` expands to a model file under
/// `tests/data`.
pub const COMMANDS: &[&[&str]] = &[
    &["order", "e0", "e1"],
    &["order", "3/2*e0 - 2*e3", "3/2*e0 - e3"],
    &["--model", "@z1.model", "order", "b1.-2 + e4", "e3"],
    &["--model", "@z2.model", "order", "-b1.0", "-b2.7"],
    &["eval", "chi(x)", "--at", "-e2"],
    &["eval", "ichi(x)", "--at", "c"],
    &["eval", "ichi(x)", "--at", "-e5"],
    &["eval", "chi(x) + div(x, 2) - d", "--at", "3*e1 + e4"],
    &["eval", "chi(x) + inf", "--at", "e1"],
    &["eval", "div(x, 0)", "--at", "e1"],
    &["eval", "chi(x)", "--at", "b1.0"],
    &["chifn", "chi^{1}(x) + [e3 - e5]", "--verify"],
    &["chifn", "-3/2*chi^{-1}(x) - chi^{0}(x)", "--verify"],
    &["chifn", "chi^{0}(x)", "--verify"],
    &["--model", "@z1.model", "chifn", "chi^{2}(x) + [b1.4]", "--verify"],
    &["piecewise", "chi(x + [e4])", "--verify"],
    &["piecewise", "ichi(x) - x", "--verify"],
    &["--model", "@loose.model", "piecewise", "chi(x - [g1])", "--verify"],
    &["defset", "chi(x) + [e4] < 0", "--verify"],
    &["defset", "x = c or (x < 0 and not (ichi(x) = inf))", "--verify"],
    &["defset", "x < x", "--verify"],
    &["--model", "@z1.model", "--window", "8", "defset", "x < [-b1.0] or x = [-e3]", "--verify"],
    &["defset", "forall y (x = y)"],
    &["--json", "defset", "chi(x) + [e4] < 0", "--verify"],
    &["extend", "--plan", "1"],
    &["--model", "@z1.model", "extend", "--plan", "1,2,2"],
    &["extend", "--plan", "2"],
    &["extend", "--plan", "1,1", "--verify", "--samples", "300"],
    &["adjoin", "--at", "e9/2", "--succ", "e5"],
    &["adjoin", "--at", "e9/2", "--succ", "e7"],
    &["adjoin", "--at", "e-1/2", "--succ", "e0"],
    &["--model", "@z2.model", "quotient", "--keep", "2"],
    &["--model", "@z2.model", "quotient", "--keep", "4"],
    &["--model", "@z2.model", "classify", "--sub", "0", "--a", "-e1 + b1.0 + b2.0"],
    &["--model", "@z1.model", "classify", "--sub", "0", "--a", "b1.0"],
    &["--model", "@loose.model", "classify", "--sub", "0", "--a", "-g1 + e3", "--verify", "--samples", "300"],
    &["--model", "@z1.model", "classify", "--sub", "0,1", "--a", "e2 - b1.5"],
    &["--model", "@broken.model", "check"],
    &["check", "--samples", "300", "--seed", "7"],
    &["--json", "--model", "@z2.model", "check", "--samples", "100"],
    &["frobnicate"],
    &["order", "e0"],
    &["eval", "chi(x)", "--at", "-e2", "--bogus"],
];

fn expand(args: &[&str]) -> Vec<String> {
    args.iter()
        .map(|a| match a.strip_prefix('@') {
            Some(name) => data(name),
            None => (*a).to_string(),
        })
        .collect()
}

/// Runs every command in-process and renders the transcript. Model paths
/// are shown by file name so the text does not depend on the checkout.
pub fn transcript() -> String {
    let mut s = String::new();
    for cmd in COMMANDS {
        let out = pdg::run(std::iter::once("pdg".to_string()).chain(expand(cmd)));
        let shown: Vec<String> = cmd.iter().map(|a| format!("{:?}", a.trim_start_matches('@'))).collect();
        let _ = writeln!(s, "$ pdg {}", shown.join(" "));
        s.push_str(&out.stdout);
        s.push_str(&out.stderr);
        let _ = writeln!(s, "[exit {}]", out.code);
    }
    s
}
