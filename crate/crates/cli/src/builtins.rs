//! Named inputs, written `builtin:NAME` or `builtin:NAME(ARGS)`.

use tropmat::arith::{int, rat};
use tropmat::lorentzian::{basis_polynomial, elementary_symmetric, HomPoly};
use tropmat::matroid::{
    graphic_kn, projective_plane, quotient_from_modular_cut, sets, uniform, upward_closure, v8_minus, vamos,
};
use tropmat::valuated::ValuatedMatroid;
use tropmat::{Matroid, Rat};

use crate::io::{bad, In};

pub const NAMES: &[&str] = &[
    "uniform(d,n)",
    "vamos",
    "v8_minus",
    "v8_minus_q1",
    "v8_minus_q2",
    "projective_plane(2|3)",
    "fano",
    "graphic_K(n)",
    "u34_quotient(1|2|3)",
    "trivial(<matroid>)",
    "four_point",
    "h1",
    "h2",
    "g2",
    "basis(<matroid>)",
    "elementary(k,n)",
    "A1",
    "A2",
    "A3",
];

pub enum Builtin {
    Matroid(Matroid),
    Valuated(ValuatedMatroid),
    Poly(HomPoly),
    Matrix(Vec<Vec<Rat>>),
}

/// Splits `name(args)` into the name and the top-level comma-separated args.
fn split_call(s: &str) -> In<(&str, Vec<&str>)> {
    let s = s.trim();
    let Some(open) = s.find('(') else {
        return Ok((s, vec![]));
    };
    if !s.ends_with(')') {
        return bad(format!("unbalanced parentheses in builtin {s:?}"));
    }
    let inner = &s[open + 1..s.len() - 1];
    let mut args = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return bad(format!("unbalanced parentheses in builtin {s:?}"));
    }
    if !inner.trim().is_empty() {
        args.push(inner[start..].trim());
    }
    Ok((&s[..open], args))
}

fn num(args: &[&str], k: usize, name: &str) -> In<usize> {
    args.get(k)
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| crate::io::InputError(format!("{name} needs integer argument {}", k + 1)))
}

fn arity(args: &[&str], k: usize, name: &str) -> In<()> {
    if args.len() != k {
        return bad(format!("{name} takes {k} argument(s), got {}", args.len()));
    }
    Ok(())
}

/// The 4×4 or 5×5 matrix with zero diagonal, ones elsewhere and `39/10` at `(i, j)`.
pub fn example_matrix(n: usize, i: usize, j: usize) -> Vec<Vec<Rat>> {
    let mut a: Vec<Vec<Rat>> = (0..n).map(|r| (0..n).map(|c| int(i64::from(r != c))).collect()).collect();
    a[i][j] = rat(39, 10);
    a[j][i] = rat(39, 10);
    a
}

pub fn h1() -> HomPoly {
    HomPoly::from_quadratic_form(&example_matrix(4, 0, 1)).expect("nonnegative form")
}

pub fn h2() -> HomPoly {
    HomPoly::from_quadratic_form(&example_matrix(4, 2, 3)).expect("nonnegative form")
}

/// `f_{U_{3,4}} + w_5 h_2`.
pub fn g2() -> HomPoly {
    basis_polynomial(&uniform(3, 4)).with_new_variable(&h2()).expect("degrees match")
}

pub fn v8_minus_quotients() -> (Matroid, Matroid) {
    let v8 = v8_minus();
    let q = |gens: &[&str]| {
        let cut = upward_closure(&v8, &sets(gens)).expect("flats of V8-");
        quotient_from_modular_cut(&v8, &cut).expect("modular cut")
    };
    (q(&["127", "568", "3478"]), q(&["12", "34", "56"]))
}

pub fn u34_quotient(k: usize) -> In<Matroid> {
    let bases = match k {
        1 => return Ok(uniform(2, 4)),
        2 => sets(&["13", "14", "23", "24"]),
        3 => sets(&["23", "24", "34"]),
        _ => return bad("u34_quotient takes 1, 2 or 3"),
    };
    Ok(Matroid::from_bases(4, bases)?)
}

/// Rank 2 on four points: 1 on `12` and `34`, 0 elsewhere.
pub fn four_point() -> ValuatedMatroid {
    let vals = [("12", 1), ("13", 0), ("14", 0), ("23", 0), ("24", 0), ("34", 1)];
    let values = vals.iter().map(|&(s, v)| (sets(&[s])[0], int(v))).collect();
    ValuatedMatroid::new(4, 2, values).expect("valid valuation")
}

pub fn lookup(spec: &str) -> In<Builtin> {
    let (name, args) = split_call(spec)?;
    Ok(match name {
        "uniform" => {
            arity(&args, 2, name)?;
            let (d, n) = (num(&args, 0, name)?, num(&args, 1, name)?);
            if d > n || n > 64 {
                return bad(format!("uniform needs d ≤ n ≤ 64, got ({d}, {n})"));
            }
            Builtin::Matroid(uniform(d, n))
        }
        "vamos" => Builtin::Matroid(vamos()),
        "v8_minus" => Builtin::Matroid(v8_minus()),
        "v8_minus_q1" => Builtin::Matroid(v8_minus_quotients().0),
        "v8_minus_q2" => Builtin::Matroid(v8_minus_quotients().1),
        "projective_plane" => {
            arity(&args, 1, name)?;
            match num(&args, 0, name)? {
                q @ (2 | 3) => Builtin::Matroid(projective_plane(q as u8)?),
                q => return bad(format!("projective_plane supports q = 2 or 3, got {q}")),
            }
        }
        "fano" => Builtin::Matroid(projective_plane(2)?),
        "graphic_K" => {
            arity(&args, 1, name)?;
            match num(&args, 0, name)? {
                n @ 2..=6 => Builtin::Matroid(graphic_kn(n)),
                n => return bad(format!("graphic_K supports 2 ≤ n ≤ 6, got {n}")),
            }
        }
        "u34_quotient" => {
            arity(&args, 1, name)?;
            Builtin::Matroid(u34_quotient(num(&args, 0, name)?)?)
        }
        "trivial" => {
            arity(&args, 1, name)?;
            Builtin::Valuated(ValuatedMatroid::trivial(&matroid(args[0])?))
        }
        "four_point" => Builtin::Valuated(four_point()),
        "h1" => Builtin::Poly(h1()),
        "h2" => Builtin::Poly(h2()),
        "g2" => Builtin::Poly(g2()),
        "basis" => {
            arity(&args, 1, name)?;
            Builtin::Poly(basis_polynomial(&matroid(args[0])?))
        }
        "elementary" => {
            arity(&args, 2, name)?;
            let (k, n) = (num(&args, 0, name)?, num(&args, 1, name)?);
            if k > n || n > 64 {
                return bad(format!("elementary needs k ≤ n ≤ 64, got ({k}, {n})"));
            }
            Builtin::Poly(elementary_symmetric(n, k))
        }
        "A1" => Builtin::Matrix(example_matrix(4, 0, 1)),
        "A2" => Builtin::Matrix(example_matrix(4, 2, 3)),
        "A3" => Builtin::Matrix(example_matrix(5, 0, 1)),
        _ => return bad(format!("unknown builtin {name:?}; known: {}", NAMES.join(", "))),
    })
}

/// A builtin that must be a matroid.
pub fn matroid(spec: &str) -> In<Matroid> {
    match lookup(spec)? {
        Builtin::Matroid(m) => Ok(m),
        _ => bad(format!("builtin {spec:?} is not a matroid")),
    }
}
