fn main() {
    let b = cast_core::ksk::rhomb_edge_instance(7, 4, &[0, 2]).unwrap();
    match cast_core::ksk::ksk_check(&b) {
        Ok(rep) => println!("ok={} violation={:?}", rep.ok, rep.violation),
        Err(e) => println!("error: {}", e),
    }
}
