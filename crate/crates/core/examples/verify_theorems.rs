//! Runs the structural checks over a range of q for both families.

use psl_maniplex::census::verify_structure;
use psl_maniplex::group::Family;

fn main() -> psl_maniplex::Result<()> {
    for (family, qs) in [
        (Family::Psl, &[4u64, 5, 7, 8, 9, 11, 13, 16, 17, 19][..]),
        (Family::Pgl, &[5, 7, 9, 11][..]),
    ] {
        for &q in qs {
            let report = verify_structure(q, family)?;
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.name.as_str())
                .collect();
            println!("{family}({q}): {}", if failed.is_empty() { "all checks pass".to_owned() } else { format!("failed {failed:?}") });
        }
    }
    Ok(())
}
