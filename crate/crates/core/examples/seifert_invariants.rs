//! Euler number, geometry and horizontal foliations of closed Seifert
//! manifolds given by unnormalized invariants.

use gmanvol::seifert::{self, SeifertInvariants};

fn main() -> gmanvol::Result<()> {
    let examples = [
        SeifertInvariants::new(0, [(2, 1), (3, 1), (7, 1)])?,
        SeifertInvariants::new(2, [(1, 2)])?,
        SeifertInvariants::new(2, [(1, 3)])?,
        SeifertInvariants::new(1, [(2, 1), (2, -1)])?,
    ];
    for inv in &examples {
        println!("{inv}");
        println!("  e = {}", seifert::euler_number(inv));
        println!("  chi_orb = {}", seifert::orbifold_euler_char(inv));
        println!("  geometry = {:?}", seifert::geometry_type(inv));
        match seifert::ehn_horizontal_foliation(inv) {
            Ok(holds) => println!("  horizontal foliation: {holds}"),
            Err(e) => println!("  horizontal foliation: {e}"),
        }
        println!("  smallest base genus with a foliation: {}", seifert::min_genus_for_ehn(inv.exceptional()));
    }

    // circle bundles over a genus-3 surface: foliated exactly when |e| <= 4
    let foliated: Vec<i64> = (-6..=6)
        .filter(|&e| seifert::milnor_wood_check(e, 3).unwrap())
        .collect();
    println!("genus 3 bundles with a flat structure: e in {foliated:?}");
    Ok(())
}
