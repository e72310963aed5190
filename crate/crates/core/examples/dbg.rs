use braidoids::invariants::{normalized_polynomial, closure_pair_invariant};
use braidoids::map::knotoid::{KnotoidMap, MapMode};
use braidoids::map::moves::{apply_reidemeister, reidemeister_sites, MoveSite};

fn trefoil_map() -> KnotoidMap {
    let mut alpha = vec![0usize; 12];
    let mut wire = |a: usize, b: usize, alpha: &mut Vec<usize>| { alpha[a] = b; alpha[b] = a; };
    wire(0, 7, &mut alpha); wire(2, 9, &mut alpha); wire(4, 11, &mut alpha);
    wire(1, 6, &mut alpha); wire(3, 8, &mut alpha); wire(5, 10, &mut alpha);
    KnotoidMap::from_parts(vec![1, 1, 1], alpha, false, 0, MapMode::Spherical).unwrap()
}

fn main() {
    let t = trefoil_map();
    let p0 = normalized_polynomial(&t, 20).unwrap();
    println!("trefoil normalized: {p0}");
    // Exhaustively try every site at small depth and check invariance.
    let mut frontier = vec![t.clone()];
    let mut checked = 0;
    for depth in 0..2 {
        let mut next = Vec::new();
        for m in &frontier {
            for site in reidemeister_sites(m, m.n_crossings() + 2, false) {
                match apply_reidemeister(m, site) {
                    Ok((nm, inv)) => {
                        let p = normalized_polynomial(&nm, 20).unwrap();
                        if p != p0 {
                            println!("INVARIANCE BROKEN depth {depth} site {site:?}: {p}");
                            return;
                        }
                        // inverse roundtrip
                        if let Ok((back, _)) = apply_reidemeister(&nm, inv) {
                            if back.spherical_code() != m.spherical_code() {
                                println!("INVERSE MISMATCH {site:?} -> {inv:?}");
                            }
                        } else {
                            println!("INVERSE FAILED for {site:?} -> {inv:?}");
                        }
                        checked += 1;
                        if matches!(site, MoveSite::R3 { .. }) && next.len() < 40 {
                            next.push(nm);
                        }
                    }
                    Err(e) => println!("APPLY FAILED {site:?}: {e}"),
                }
            }
        }
        if !next.is_empty() { frontier = next; } 
    }
    println!("checked {checked} move applications, all invariant");
    // closure pair of the trivial knotoid under a pile of kinks
    let mut m = KnotoidMap::trivial_knotoid(false);
    for i in 0..3 {
        let (nm, _) = apply_reidemeister(&m, MoveSite::R1Pos { host: i % 2, loop_over: i % 2 == 0 }).unwrap();
        m = nm;
    }
    let pair = closure_pair_invariant(&m, 20).unwrap();
    println!("kinked arc closure pair: ({}, {})", pair.0, pair.1);
}
