//! Build characteristic and genus-raising covers of a random graph manifold
//! and check their certificates.

use gmanvol::coverings::{self, BoundaryOrder};
use gmanvol::graph;
use gmanvol::sample::{random_graph, RandomGraphSpec};
use rand::SeedableRng;

fn main() -> gmanvol::Result<()> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let spec = RandomGraphSpec { min_boundary: 2, max_boundary: 3, ..Default::default() };
    let gm = random_graph(&mut rng, &spec);
    println!("base: {} pieces, {} tori", gm.pieces.len(), gm.edges.len());

    println!("genus 2, one boundary circle, degree 3:");
    for order in [BoundaryOrder::Trivial, BoundaryOrder::Full] {
        println!("  {order:?}: {:?}", coverings::riemann_hurwitz_genus(2, 1, 3, order));
    }

    let q = coverings::admissible_characteristic_prime(&gm, 2);
    let cov = coverings::characteristic_cover(&gm, q)?;
    println!("characteristic cover, q = {q}: degree {}", cov.certificate.total_degree);
    for (id, rec) in &cov.certificate.per_piece {
        println!("  {id}: genus {} boundary {} over {}", rec.genus_up, rec.boundary_up, rec.over);
    }
    println!("  problems: {:?}", coverings::verify_covering_certificate(&cov, &gm));

    let center = gm.pieces[0].id.clone();
    let raised = coverings::genus_raising_cover(&gm, &center, 3)?;
    println!("genus-raising cover centred at {center}: {} pieces", raised.manifold.pieces.len());
    for p in &raised.manifold.pieces {
        println!("  {}: genus {} boundary {}", p.id, p.genus, p.boundary_count);
    }
    println!("  valid: {}", graph::validate(&raised.manifold).is_empty());
    println!("  problems: {:?}", coverings::verify_covering_certificate(&raised, &gm));
    Ok(())
}
