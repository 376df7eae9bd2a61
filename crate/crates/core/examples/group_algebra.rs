//! Arithmetic in the group algebra of the quaternion group over GF(2) and GF(3).

use lienil::catalog;
use lienil::expr::{eval_str, Bindings};
use lienil::AlgebraContext;

fn main() -> lienil::Result<()> {
    let q8 = catalog::bundled()
        .into_iter()
        .find(|s| s.name == "Q8")
        .expect("bundled")
        .build(64)?;
    let (i, j) = (q8.generators()[0], q8.generators()[1]);

    for p in [2, 3] {
        let ctx = AlgebraContext::new(&q8, p)?;
        let x = ctx.combination([(1, i), (1, j)]);
        let y = ctx.combination([(1, q8.identity()), (-1, i)]);
        println!("over GF({p}):");
        println!("  x = i + j, y = 1 - i");
        println!("  [x, y] has {} terms", ctx.lie_bracket(&x, &y).support().count());
        println!("  [i, j, j] = 0: {}", ctx.left_normed(&[ctx.basis(i), ctx.basis(j), ctx.basis(j)])?.is_zero());

        let env: Bindings = [("a".to_string(), i), ("b".to_string(), j)].into();
        let hats = eval_str(&ctx, "hat(a) hat(b)", &env).expect("valid expression");
        println!("  hat(i) hat(j) has augmentation {}", ctx.augmentation(&hats));
    }
    Ok(())
}
