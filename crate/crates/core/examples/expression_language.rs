//! Parsing integrands, symbolic partial derivatives and evaluation.

use fracvar::{parse, Environment, Var};

fn main() -> fracvar::Result<()> {
    let l = parse("x^4 + u^2 + sin(y)*v")?;
    println!("L        = {l}");
    for var in [Var::Y, Var::U, Var::V] {
        println!("dL/d{:<4} = {}", var.name(), l.diff(var));
    }

    let mut env = Environment::default();
    env.set(Var::X, 0.5);
    env.set(Var::Y, 0.1);
    env.set(Var::U, 0.3);
    env.set(Var::V, -0.2);
    println!("L(0.5, 0.1, 0.3, -0.2) = {}", l.eval(&env)?);

    // Special functions are part of the language.
    let psi = parse("(u - gamma(alpha+1))^2 * digamma(2)")?;
    println!("{psi}");

    match parse("x +* 2") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
