use locus_core::files::MapSpec;
use locus_core::groebner::elimination_generator;
use locus_core::invariants::{build_h, delta, multiplicity};
use locus_core::linsys::{default_nodes, vandermonde_system};
use locus_core::monomial::MonomialOrder;
use locus_core::parse::parse_polynomial;
use locus_core::poly::{Polynomial, Rat};
use locus_core::resultant::{as_unipoly_in, resultant};
use locus_core::vars::VarList;
use std::time::Instant;

fn main() {
    let f = MapSpec::from_parts(
        vec!["z1".into(), "z2".into()],
        &["z1^2".to_string(), "z2^3".to_string()],
        None,
    )
    .unwrap();

    let t0 = Instant::now();
    let mult = multiplicity(&f).unwrap();
    println!("multiplicity: {:?}  [{:?}]", mult.value, t0.elapsed());

    let lsys = vandermonde_system(2, 2, &default_nodes(2)).unwrap();
    let h = build_h(&f, &lsys.rows, 3).unwrap();
    println!(
        "H built: degs {:?}",
        h.iter().map(|p| p.degree()).collect::<Vec<_>>()
    );

    // one fast-route resultant at node a
    for a in [1i64, 7, 60, 200] {
        let t1 = Instant::now();
        let ring = VarList::new(["_e0", "y1", "y2", "t"]);
        let e0 = Polynomial::var(ring.clone(), 0);
        let t = Polynomial::var(ring.clone(), 3);
        let zk = t.sub(&e0.scale(&Rat::from_integer(a.into()))).unwrap();
        let images = vec![zk, e0];
        let ord = MonomialOrder::DegRevLex;
        let mut unis = Vec::new();
        for (j, hj) in h.iter().enumerate() {
            let yj = Polynomial::var(ring.clone(), 1 + j);
            let g = yj.sub(&hj.substitute(&images).unwrap()).unwrap();
            unis.push(as_unipoly_in(&g, 0, &ord));
        }
        let build_t = t1.elapsed();
        let t2 = Instant::now();
        let res = resultant(&unis[0], &unis[1], 4, &ord);
        println!(
            "a={}: build {:?}, resultant {:?}, {} terms, lc const: {}",
            a,
            build_t,
            t2.elapsed(),
            res.terms.len(),
            unis
                .iter()
                .all(|u| u.lc().num_terms() == 1 && u.lc().terms[0].0.is_one())
        );
    }

    // one GB elimination for comparison (n=2 heavy)
    let zv = f.vars.clone();
    let n_form = parse_polynomial("z1 + z2", zv).unwrap();
    let t3 = Instant::now();
    let img = elimination_generator(&h, &n_form).unwrap();
    println!(
        "GB elimination: {:?}, P has {} terms, deg {:?}",
        t3.elapsed(),
        img.p.num_terms(),
        img.p.degree()
    );
    let d = delta(&img.p, 2).unwrap();
    println!("delta: r+1={} delta={:?}", d.r_plus_1, d.delta);
}
