//! Instance and trace text formats, with replay validation.

use dyncover::{SetSystem, UpdateTrace};

fn main() {
    let system = SetSystem::parse("4 3\n2 0 1\n2 1 2\n2 2 3\n").unwrap();
    println!("n = {}, m = {}, f = {}", system.n(), system.m(), system.f());
    print!("{}", system.to_text());

    let trace = UpdateTrace::parse("trace 4 3\n+ 0\n+ 2\n?\n- 0\n?\n").unwrap();
    trace.check_against(&system).unwrap();
    println!("active at queries: {:?}", trace.query_states());

    match SetSystem::parse("2 1\n3 0 1\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    let bad = UpdateTrace::parse("trace 4 3\n- 1\n").unwrap();
    println!("rejected: {}", bad.validate().unwrap_err());
}
