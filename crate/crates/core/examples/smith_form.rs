//! Smith normal form of a matrix and the cokernel it describes.

use leavitt::{cokernel, smith_normal_form, IntMatrix};

fn main() -> leavitt::Result<()> {
    let a = IntMatrix::from_rows(vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?;
    let s = smith_normal_form(&a)?;
    println!("A =\n{a}");
    println!("U =\n{}", s.left);
    println!("V =\n{}", s.right);
    println!("UAV =\n{}", s.diagonal_matrix);
    assert_eq!(&(&s.left * &a) * &s.right, s.diagonal_matrix);

    let coker = cokernel(&a)?;
    println!("coker A = {}", coker.group());
    let e1 = vec![1.into(), 0.into(), 0.into()];
    println!("e1 -> {:?}", coker.coordinates(&e1)?.coords());
    Ok(())
}
