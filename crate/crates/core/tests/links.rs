use kirbylab::links::{chain, disjoint_union, handle_slide_mapped, hopf_link, stabilize, trefoil, unknot, LinkDiagram};

fn slide_congruence(m: &[Vec<i64>], i: usize, j: usize) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut e = vec![vec![0i64; n]; n];
    for k in 0..n {
        e[k][k] = 1;
    }
    e[i][j] = 1;
    let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect()).collect()
    };
    let et: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| e[c][r]).collect()).collect();
    mul(&mul(&e, &m.to_vec()), &et)
}

fn corpus() -> Vec<LinkDiagram> {
    vec![
        disjoint_union(&unknot(0), &unknot(0)),
        disjoint_union(&unknot(1), &unknot(-2)),
        hopf_link(0, 0),
        hopf_link(1, -1),
        hopf_link(2, 0),
        chain(3, &[0, 1, 0]),
        disjoint_union(&trefoil(1), &unknot(1)),
        disjoint_union(&unknot(-1), &trefoil(-1)),
    ]
}

#[test]
fn slides_act_by_congruence_on_linking_matrix() {
    let mut count = 0;
    for l in corpus() {
        let n = l.num_components();
        let ld = l.linking_data();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let s = handle_slide_mapped(&l, i, j).unwrap();
                assert_eq!(s.diagram.num_components(), n);
                let new = s.diagram.linking_data();
                let expect = slide_congruence(&ld.matrix, i, j);
                for a in 0..n {
                    for b in 0..n {
                        assert_eq!(
                            new.matrix[s.component_map[a]][s.component_map[b]],
                            expect[a][b],
                            "slide {i} over {j} in\n{l}"
                        );
                    }
                }
                assert_eq!(new.b_minus, ld.b_minus);
                count += 1;
            }
        }
    }
    assert!(count >= 10);
}

#[test]
fn slide_over_framed_unknot_changes_framing() {
    let l = disjoint_union(&unknot(0), &unknot(1));
    let s = handle_slide_mapped(&l, 0, 1).unwrap();
    let m = s.diagram.linking_data().matrix;
    assert_eq!(m[s.component_map[0]][s.component_map[0]], 1);
    assert_eq!(m[s.component_map[0]][s.component_map[1]], 1);
}

#[test]
fn stabilization_and_union() {
    for l in corpus() {
        let b = l.linking_data().b_minus;
        assert_eq!(stabilize(&l, 1).linking_data().b_minus, b);
        assert_eq!(stabilize(&l, -1).linking_data().b_minus, b + 1);
        let u = disjoint_union(&l, &hopf_link(0, 0));
        assert_eq!(u.num_components(), l.num_components() + 2);
    }
    let s = stabilize(&LinkDiagram::empty(), 1);
    assert_eq!(s.linking_data().matrix, vec![vec![1]]);
}
