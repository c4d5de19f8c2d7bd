use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use psl_maniplex::group::{center_order, identify_subgroup, Family, GroupContext, SubgroupTag};

const QS: [u64; 8] = [5, 7, 9, 11, 13, 17, 19, 25];

fn ctx(q: u64) -> &'static GroupContext {
    static CTXS: OnceLock<Vec<GroupContext>> = OnceLock::new();
    let all = CTXS.get_or_init(|| {
        QS.iter()
            .map(|&q| GroupContext::enumerate(q, Family::Psl).unwrap())
            .collect()
    });
    &all[QS.iter().position(|&x| x == q).unwrap()]
}

fn is_abelian(ctx: &GroupContext, h: &[u32]) -> bool {
    h.iter().all(|&a| h.iter().all(|&b| ctx.commute(a, b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involution_centralizers_are_maximal_dihedral(qi in 0..QS.len(), pick in any::<prop::sample::Index>()) {
        let q = QS[qi];
        let g = ctx(q);
        let x = g.involutions()[pick.index(g.involutions().len())];
        let c = g.centralizer(x);
        let kind = identify_subgroup(g, &c).unwrap();
        let n = (c.len() / 2) as u64;
        prop_assert!(n == q.div_ceil(2) || n == (q - 1) / 2);
        prop_assert_eq!(kind.tag, SubgroupTag::Dihedral(n));
    }

    #[test]
    fn non_abelian_subgroups_have_small_centres(qi in 0..QS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let g = ctx(QS[qi]);
        let n = g.order() as u32;
        let h = g.closure(&[a % n, b % n, c % n]);
        if h.len() < g.order() && !is_abelian(g, &h) {
            prop_assert!(center_order(g, &h) <= 2);
        }
    }

    #[test]
    fn two_generated_subgroups_are_classified(qi in 0..QS.len(), a in any::<u32>(), b in any::<u32>()) {
        let g = ctx(QS[qi]);
        let n = g.order() as u32;
        let h = g.closure(&[a % n, b % n]);
        let kind = identify_subgroup(g, &h).unwrap();
        prop_assert_eq!(kind.order as usize, h.len());
    }

    /// A dihedral group of order 2k, k ≥ 3 dividing n = (q ± 1)/2, lies in
    /// exactly one dihedral group of order 2n.
    #[test]
    fn dihedral_overgroups_are_unique(qi in 0..QS.len(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let q = QS[qi];
        let g = ctx(q);
        let inv = g.involutions();
        let (a, b) = (inv[i.index(inv.len())], inv[j.index(inv.len())]);
        let r = g.mul(a, b);
        let k = g.element_order(r);
        prop_assume!(k >= 3);
        for n in [(q - 1) / 2, q.div_ceil(2)] {
            if n % k != 0 {
                continue;
            }
            // The rotation subgroup of any such overgroup is a cyclic
            // group of order n containing a·b.
            let mut overgroups = BTreeSet::new();
            for z in 0..g.order() as u32 {
                if g.element_order(z) != n {
                    continue;
                }
                let cyc = g.closure(&[z]);
                if cyc.binary_search(&r).is_err() {
                    continue;
                }
                let d = g.closure(&[z, a]);
                if d.len() as u64 == 2 * n {
                    overgroups.insert(d);
                }
            }
            prop_assert_eq!(overgroups.len(), 1, "k = {}, n = {}", k, n);
        }
    }
}

/// Two elements generating the dihedral group `c`: a rotation of maximal
/// order and any involution outside its cyclic group.
fn dihedral_generators(g: &GroupContext, c: &[u32]) -> [u32; 2] {
    let rot = *c.iter().max_by_key(|&&x| g.element_order(x)).unwrap();
    let cyc = g.closure(&[rot]);
    let refl = *c.iter().find(|x| cyc.binary_search(x).is_err()).unwrap();
    [rot, refl]
}

/// Whether adding any element outside `c` generates the whole group.
fn is_maximal(g: &GroupContext, c: &[u32]) -> bool {
    let [r, s] = dihedral_generators(g, c);
    (0..g.order() as u32)
        .filter(|y| c.binary_search(y).is_err())
        .all(|y| g.generates(&[r, s, y]))
}

#[test]
fn involution_centralizers_are_maximal_from_q_11() {
    for q in [11u64, 13, 17, 19, 25] {
        let g = ctx(q);
        let reps: BTreeSet<u32> = g
            .involutions()
            .iter()
            .map(|&x| g.involution_class(x).unwrap().0)
            .collect();
        for x in reps {
            assert!(is_maximal(g, &g.centralizer(x)), "q = {q}");
        }
    }
}

#[test]
fn small_q_centralizers_are_not_maximal() {
    // C(x) is D4 ⊂ A4 at q = 5 and D8 ⊂ S4 at q = 7 and 9.
    for q in [5u64, 7, 9] {
        let g = ctx(q);
        let c = g.centralizer(g.involutions()[0]);
        assert!(!is_maximal(g, &c), "q = {q}");
    }
}

#[test]
fn klein_fours_have_several_dihedral_overgroups() {
    // The uniqueness statement needs k ≥ 3: in PSL(2, 7) a Klein four-group
    // sits in more than one dihedral group of order 8.
    let g = ctx(7);
    let inv = g.involutions();
    let a = inv[0];
    let b = *inv.iter().find(|&&b| b != a && g.commute(a, b)).unwrap();
    let v = g.closure(&[a, b]);
    let d8s: BTreeSet<Vec<u32>> = inv
        .iter()
        .map(|&z| g.centralizer(z))
        .filter(|c| c.len() == 8 && v.iter().all(|x| c.binary_search(x).is_ok()))
        .collect();
    assert!(d8s.len() > 1);
}

#[test]
fn subfield_subgroups() {
    // PSL(2, 25) contains PGL(2, 5) and A5 ≅ PSL(2, 5); PSL(2, 9) contains A5
    // only via the exceptional isomorphism with A6.
    let g = ctx(25);
    let mut tags = BTreeSet::new();
    let inv = g.involutions();
    for &a in inv.iter().take(2) {
        for &b in inv.iter().step_by(7) {
            for &c in inv.iter().step_by(11) {
                if let Some(h) = g.proper_closure(&[a, b, c]) {
                    tags.insert(identify_subgroup(g, &h).unwrap().tag);
                }
            }
        }
    }
    assert!(tags.contains(&SubgroupTag::Pgl(5)), "{tags:?}");
}
