#![no_main]

use amphase_core::expr::Expr;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(e) = Expr::parse(src) {
            for x in [-1.5, 0.0, 0.5, 2.0] {
                let _ = e.eval(x);
            }
        }
    }
});
