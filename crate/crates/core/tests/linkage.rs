use takiff_core::blocks::{block_label_f, linkage_chain, BlockLabel};
use takiff_core::rootsys::{RootDatum, Series, Weight};
use takiff_core::takiff::{SuperWeight, Takiff};
use takiff_core::Limits;

fn check_box(series: Series, rank: usize) {
    let rd = RootDatum::new(series, rank).unwrap();
    let tk = Takiff::new(&rd);
    let limits = Limits::default();
    let mut chains = 0;
    for c0 in 0..=3 {
        for c1 in 0..=3 {
            for a in -3..=3 {
                let x = SuperWeight::new(Weight(vec![c0, c1]), a);
                let BlockLabel::Minuscule(nu) = block_label_f(&rd, &x).unwrap() else {
                    panic!("rank two labels are minuscule weights");
                };
                let steps = linkage_chain(&tk, &x, &limits).unwrap();
                if steps.is_empty() {
                    assert_eq!(x, SuperWeight::new(nu, 0));
                    continue;
                }
                chains += 1;
                assert_eq!(steps[0].from, x);
                assert_eq!(steps.last().unwrap().to, SuperWeight::new(nu, 0), "chain from {x}");
                for w in steps.windows(2) {
                    assert_eq!(w[0].to, w[1].from);
                }
                for s in &steps {
                    assert!(s.multiplicity > 0.into(), "{x}: zero step {} -> {}", s.from, s.to);
                    assert_eq!(tk.delta_mult(&s.standard, &s.simple).unwrap(), s.multiplicity);
                    let ends = [&s.from, &s.to];
                    assert!(ends.contains(&&s.standard) || ends.contains(&&s.simple));
                }
            }
        }
    }
    assert!(chains > 0);
}

#[test]
fn every_weight_in_a2_box_reaches_its_label() {
    check_box(Series::A, 2);
}

#[test]
fn every_weight_in_b2_box_reaches_its_label() {
    check_box(Series::B, 2);
}
