use std::env;
use std::path::Path;

fn main() {
    let crate_dir = env::var("CARGO_MANIFEST_DIR").unwrap();

    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_language(cbindgen::Language::C)
        .with_include_guard("NETPART_H")
        .with_cpp_compat(true)
        .with_header("/* C interface for the netpart connectivity library. */")
        .generate()
        .expect("unable to generate C bindings")
        .write_to_file(Path::new(&crate_dir).join("include").join("netpart.h"));

    println!("cargo:rerun-if-changed=src/lib.rs");
}
