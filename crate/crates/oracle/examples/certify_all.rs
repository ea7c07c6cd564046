fn main() {
    for f in ncg_oracle::FIXTURES {
        let t = std::time::Instant::now();
        match ncg_oracle::certify(f.id) {
            Ok(r) => println!("{} | {}\t# {:?}", r.id, r.value, t.elapsed()),
            Err(e) => println!("# {e}"),
        }
    }
}
