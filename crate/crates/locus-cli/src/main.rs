//! CLI entry point. Placeholder while the library takes shape.

fn main() {}
