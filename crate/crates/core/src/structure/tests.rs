use super::*;

fn el(s: &str, p: usize, q: usize) -> SuperElement {
    SuperElement::parse(s, p, q).unwrap()
}

fn h(s: &str, k: usize) -> SmoothExpr {
    SmoothExpr::parse(s, k).unwrap()
}

#[test]
fn multi_indices_are_complete() {
    assert_eq!(multi_indices(2, 2), vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    assert_eq!(multi_indices(3, 3).len(), 3 + 6 + 10);
}

#[test]
fn first_order_case_in_one_two() {
    let a = el("x1 + sin(x1)*t1t2", 1, 2);
    let r = apply_smooth(&h("exp(x1)", 1), &[a]).unwrap();
    assert_eq!(r.to_string(), "exp(x1) + exp(x1)*sin(x1)*t1t2");
}

#[test]
fn projection_returns_argument() {
    let a = el("x1 + x2*t1t2", 2, 4);
    let b = el("exp(x2) - t1t3 + t2t3t1t4", 2, 4);
    assert_eq!(apply_smooth(&h("x2", 2), &[a.clone(), b.clone()]).unwrap(), b);
    assert_eq!(apply_smooth(&h("x1", 2), &[a.clone(), b]).unwrap(), a);
}

#[test]
fn square_needs_second_order() {
    let a = el("t1t2 + t3t4", 0, 4);
    let full = apply_smooth(&h("x1^2", 1), std::slice::from_ref(&a)).unwrap();
    assert_eq!(full, &a * &a);
    assert_eq!(full.to_string(), "2*t1t2t3t4");
    let first = apply_smooth_with(&h("x1^2", 1), &[a], Expansion::FirstOrder).unwrap();
    assert!(first.is_zero());
}

#[test]
fn exp_of_nilpotent_is_truncated_series() {
    let a = el("t1t2 + t3t4", 0, 4);
    let r = apply_smooth(&h("exp(x1)", 1), &[a]).unwrap();
    assert_eq!(r, el("1 + t1t2 + t3t4 + t1t2t3t4", 0, 4));
}

#[test]
fn product_function_is_ring_product() {
    let a = el("x1 + t1t2 + x2*t3t4", 2, 6);
    let b = el("sin(x2) + t1t3 + t5t6 + t1t2t3t4", 2, 6);
    assert_eq!(apply_smooth(&h("x1*x2", 2), &[a.clone(), b.clone()]).unwrap(), &a * &b);
}

#[test]
fn rejects_odd_arguments() {
    let a = el("t1", 1, 2);
    assert!(matches!(apply_smooth(&h("exp(x1)", 1), &[a]), Err(StructureError::NotEven { .. })));
    let b = el("x1", 1, 2);
    assert!(matches!(apply_smooth(&h("x1*x2", 2), &[b]), Err(StructureError::FunctionArity { .. })));
}
