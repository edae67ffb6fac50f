//! Benchmark helpers: synthetic corpus generation shared by the criterion
//! benches.

use std::fmt::Write as _;

/// Generates a deterministic synthetic C file with `n` logging call sites,
/// used to size pipeline benches without bundling a large corpus.
pub fn synthetic_source(n: usize) -> String {
    let mut out = String::new();
    out.push_str("#include <stdio.h>\n\n");
    for i in 0..n {
        let _ = write!(
            out,
            "static int check_entry_{i}(int value, const char *name)\n\
             {{\n\
             \tif (value < {i}) {{\n\
             \t\tlog_error(\"entry %s must be at least {i} for slot %d\", name, value);\n\
             \t\treturn -1;\n\
             \t}}\n\
             \treturn 0;\n\
             }}\n\n"
        );
    }
    out
}
