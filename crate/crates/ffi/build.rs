fn main() {
    #[cfg(feature = "gen_h")]
    {
        let dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
        let config = cbindgen::Config::from_file(format!("{dir}/cbindgen.toml")).unwrap();
        cbindgen::Builder::new()
            .with_crate(&dir)
            .with_config(config)
            .generate()
            .expect("unable to generate header")
            .write_to_file(format!("{dir}/include/symbreak.h"));
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
}
