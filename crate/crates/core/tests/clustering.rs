use posinfer::{agglomerate, cut_k, cut_threshold, DistMatrix, Linkage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[allow(clippy::needless_range_loop)]
fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> DistMatrix {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = rng.gen_range(0.0..1.0);
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    DistMatrix::from_rows(rows).unwrap()
}

#[test]
fn lower_cuts_refine_higher_cuts() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let grid: Vec<f64> = (0..20).map(|i| i as f64 / 19.0).collect();
    for _ in 0..50 {
        let m = random_matrix(&mut rng, 12);
        for linkage in [Linkage::Single, Linkage::Complete, Linkage::Average] {
            let d = agglomerate(&m, linkage);
            assert!(d.merges().windows(2).all(|w| w[0].height <= w[1].height));
            let cuts: Vec<_> = grid.iter().map(|&t| cut_threshold(&d, t).unwrap()).collect();
            for i in 0..cuts.len() {
                for j in i + 1..cuts.len() {
                    assert!(cuts[i].refines(&cuts[j]));
                }
            }
            let by_k: Vec<_> = (1..=12).map(|k| cut_k(&d, k).unwrap()).collect();
            for (i, c) in by_k.iter().enumerate() {
                assert_eq!(c.k(), i + 1);
                for coarser in &by_k[..i] {
                    assert!(c.refines(coarser));
                }
            }
        }
    }
}

#[test]
fn ties_and_tiny_inputs_are_deterministic() {
    let m = DistMatrix::from_rows(vec![vec![0.0; 4]; 4]).unwrap();
    let d = agglomerate(&m, Linkage::Average);
    let pairs: Vec<_> = d.merges().iter().map(|m| (m.left, m.right)).collect();
    // ties go to the pair whose smallest leaves are smallest
    assert_eq!(pairs, vec![(0, 1), (2, 4), (3, 5)]);
    let one = agglomerate(&DistMatrix::from_rows(vec![vec![0.0]]).unwrap(), Linkage::Single);
    assert!(one.merges().is_empty());
    assert_eq!(one.to_newick(), "0;\n");
    assert!(cut_k(&one, 2).is_err());
}
