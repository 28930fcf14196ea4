use std::collections::BTreeSet;
use std::sync::Arc;

use crate::complex::{CellTuple, Comp, Graph1Complex, ProductComplex, ProductSubcomplex};

use super::graphs::{cycle, theta, wheel, wheel_tilde};
use super::ConstructionError;

/// Closure of the squares `a x b` named by local edge ids.
fn squares<S: AsRef<str>>(parent: Arc<ProductComplex>, pairs: &[(S, S)]) -> ProductSubcomplex {
    let cells: Vec<CellTuple> = pairs
        .iter()
        .map(|(a, b)| parent.cell(&[a.as_ref(), b.as_ref()]).expect("generated ids exist"))
        .collect();
    ProductSubcomplex::closure(parent, cells).expect("generated cells are valid")
}

fn square_product(g: &Graph1Complex) -> Arc<ProductComplex> {
    Arc::new(ProductComplex::new(vec![g.clone(), g.clone()]).expect("two factors"))
}

fn check_min(name: &str, value: usize, min: usize) -> Result<(), ConstructionError> {
    if value < min {
        return Err(ConstructionError::param(name, value, &format!("must be at least {min}")));
    }
    Ok(())
}

/// Union over `j` of `m_j x m_j` and `m_j x m_{j+1}` in `theta(m+1)^2`, indices mod `m+1`.
pub fn m0_surface(m: usize) -> Result<ProductSubcomplex, ConstructionError> {
    check_min("m", m, 1)?;
    let p = square_product(&theta(m + 1)?);
    let q = m + 1;
    let pairs: Vec<(String, String)> = (0..q)
        .flat_map(|j| {
            [
                (format!("m{j}"), format!("m{j}")),
                (format!("m{j}"), format!("m{}", (j + 1) % q)),
            ]
        })
        .collect();
    Ok(squares(p, &pairs))
}

/// `m0 x m0`, `m_i x m_{i+1}` and `m_{i+1} x m_i` for `i < m`, and `m_m x m_m`.
pub fn involution_surface(m: usize) -> Result<ProductSubcomplex, ConstructionError> {
    check_min("m", m, 1)?;
    let p = square_product(&theta(m + 1)?);
    let mut pairs = vec![("m0".to_string(), "m0".to_string())];
    for i in 0..m {
        pairs.push((format!("m{i}"), format!("m{}", i + 1)));
        pairs.push((format!("m{}", i + 1), format!("m{i}")));
    }
    pairs.push((format!("m{m}"), format!("m{m}")));
    Ok(squares(p, &pairs))
}

/// Full product of cycles of the given lengths: the torus of that dimension.
pub fn torus_product(lengths: &[usize]) -> Result<ProductSubcomplex, ConstructionError> {
    let factors = lengths.iter().map(|&n| cycle(n)).collect::<Result<Vec<_>, _>>()?;
    let parent = Arc::new(ProductComplex::new(factors).map_err(ConstructionError::Complex)?);
    Ok(ProductSubcomplex::full(parent))
}

/// Cell-wise product of subcomplexes, concatenating factor lists.
pub fn product_of(a: &ProductSubcomplex, b: &ProductSubcomplex) -> ProductSubcomplex {
    let factors: Vec<Graph1Complex> = a.parent().factors().iter().chain(b.parent().factors()).cloned().collect();
    let parent = Arc::new(ProductComplex::new(factors).expect("nonempty"));
    let cells: BTreeSet<CellTuple> = a
        .cells()
        .iter()
        .flat_map(|x| b.cells().iter().map(move |y| x.concat(y)))
        .collect();
    ProductSubcomplex::new(parent, cells).expect("products of face-closed sets are face-closed")
}

fn equal_factors(m: &ProductSubcomplex) -> Result<(), ConstructionError> {
    let p = m.parent();
    if p.factor_count() != 2 || p.factor(0) != p.factor(1) {
        return Err(ConstructionError::FactorMismatch);
    }
    Ok(())
}

/// `(s, t)` in `M` iff `(t, s)` in `M`.
pub fn swap_invariance_check(m: &ProductSubcomplex) -> Result<bool, ConstructionError> {
    equal_factors(m)?;
    Ok(m
        .cells()
        .iter()
        .all(|c| m.contains(&CellTuple(vec![c.0[1], c.0[0]]))))
}

fn closed_vertices(g: &Graph1Complex, c: Comp) -> Vec<u32> {
    match c {
        Comp::Vertex(v) => vec![v],
        Comp::Edge(e) => {
            let ed = g.edge(e as usize);
            vec![ed.tail as u32, ed.head as u32]
        }
    }
}

/// Every cell `(s, t)` of `M` has disjoint closed factors, so `M` misses the diagonal.
pub fn diagonal_disjointness_check(m: &ProductSubcomplex) -> Result<bool, ConstructionError> {
    equal_factors(m)?;
    let g = m.parent().factor(0);
    Ok(m.cells().iter().all(|c| {
        let a = closed_vertices(g, c.0[0]);
        closed_vertices(g, c.0[1]).iter().all(|v| !a.contains(v))
    }))
}

/// Circle `A_1 B_1 ... A_k B_k` and a second circle through the same arcs
/// `A_j`, traversing `A_1` in the same and `A_2` in the opposite sense
/// (the control variant traverses every arc in the same sense).
fn cauty_odd_base(k: usize, control: bool) -> Graph1Complex {
    let a = |j: usize| format!("a{}", (j - 1) % k + 1);
    let b = |j: usize| format!("b{}", (j - 1) % k + 1);
    let mut vs = Vec::new();
    let mut es = Vec::new();
    for j in 1..=k {
        vs.push(a(j));
        vs.push(b(j));
        es.push((format!("A{j}"), a(j), b(j)));
        es.push((format!("B{j}"), b(j), a(j + 1)));
    }
    for j in 1..=k {
        let (t, h) = match (control, j) {
            (false, 1) => (b(1), b(2)),
            (false, 2) => (a(2), a(3)),
            _ => (b(j), a(j + 1)),
        };
        es.push((format!("C{j}"), t, h));
    }
    Graph1Complex::new(&vs, &es).expect("generated graph is valid")
}

fn theta_t() -> Graph1Complex {
    Graph1Complex::new(
        &["w0", "w1"],
        &[("t", "w0", "w1"), ("t1", "w0", "w1"), ("t2", "w0", "w1")],
    )
    .expect("theta-curve")
}

/// The union of the tori `S x S2` and `S' x S2'` minus the `k` open squares `A_j x t`.
pub fn cauty_odd(k: usize, control: bool) -> Result<ProductSubcomplex, ConstructionError> {
    check_min("k", k, 2)?;
    let p1 = cauty_odd_base(k, control);
    let parent = Arc::new(ProductComplex::new(vec![p1, theta_t()]).expect("two factors"));
    let s1: Vec<String> = (1..=k).flat_map(|j| [format!("A{j}"), format!("B{j}")]).collect();
    let s1p: Vec<String> = (1..=k).flat_map(|j| [format!("A{j}"), format!("C{j}")]).collect();
    let mut pairs = Vec::new();
    for (circle, other) in [(&s1, "t1"), (&s1p, "t2")] {
        for x in circle {
            for y in ["t", other] {
                if !(y == "t" && x.starts_with('A')) {
                    pairs.push((x.clone(), y.to_string()));
                }
            }
        }
    }
    Ok(squares(parent, &pairs))
}

fn cauty_even_pairs(n: usize) -> Vec<(String, String)> {
    let mut pairs = BTreeSet::new();
    for i in 0..n {
        let s = [format!("s{i}"), format!("r{i}"), format!("s{}", (i + 1) % n)];
        for x in &s {
            for y in &s {
                let diag_i = *x == s[0] && *y == s[0];
                let diag_next = *x == s[2] && *y == s[2];
                if !diag_i && !diag_next {
                    pairs.insert((x.clone(), y.clone()));
                }
            }
        }
    }
    pairs.into_iter().collect()
}

/// Union of the tori `S_i x S_i`, `S_i = s_i + r_i + s_{i+1}` in the wheel,
/// each without the open squares `s_i x s_i` and `s_{i+1} x s_{i+1}`.
pub fn cauty_even(n: usize) -> Result<ProductSubcomplex, ConstructionError> {
    check_min("n", n, 3)?;
    if n.is_multiple_of(2) {
        return Err(ConstructionError::param("n", n, "must be odd"));
    }
    Ok(squares(square_product(&wheel(n)?), &cauty_even_pairs(n)))
}

/// Connected sum of `cauty_even(n-1)` with the torus over the bigon `r0 + x`:
/// the open square `r0 x r0` is replaced by `r0 x x`, `x x r0` and `x x x`.
pub fn cauty_even_plus(n: usize) -> Result<ProductSubcomplex, ConstructionError> {
    check_min("n", n, 4)?;
    if n % 2 == 1 {
        return Err(ConstructionError::param("n", n, "must be even"));
    }
    let mut pairs: Vec<(String, String)> = cauty_even_pairs(n - 1)
        .into_iter()
        .filter(|(a, b)| !(a == "r0" && b == "r0"))
        .collect();
    for (a, b) in [("r0", "x"), ("x", "r0"), ("x", "x")] {
        pairs.push((a.into(), b.into()));
    }
    Ok(squares(square_product(&wheel_tilde(n - 1)?), &pairs))
}

/// Graph made of two `n`-cycles `a{j}_0`, `a{j}_1` joined by rungs `i{j}`.
pub fn ladder_ring(n: usize) -> Graph1Complex {
    let mut vs = Vec::new();
    let mut es = Vec::new();
    for j in 0..n {
        vs.push(format!("z{j}_0"));
        vs.push(format!("z{j}_1"));
    }
    for j in 0..n {
        let k = (j + 1) % n;
        es.push((format!("a{j}_0"), format!("z{j}_0"), format!("z{k}_0")));
        es.push((format!("a{j}_1"), format!("z{j}_1"), format!("z{k}_1")));
        es.push((format!("i{j}"), format!("z{j}_0"), format!("z{j}_1")));
    }
    Graph1Complex::new(&vs, &es).expect("generated graph is valid")
}

/// Union of the tori `S_j x S_{j+2}` minus the open squares `i_{j+1} x i_{j+3}`,
/// where `S_j = i_j + a_j_0 + a_j_1 + i_{j+1}`.
pub fn example_5b4(n: usize) -> Result<ProductSubcomplex, ConstructionError> {
    check_min("n", n, 4)?;
    let s = |j: usize| {
        let j = j % n;
        [format!("i{j}"), format!("a{j}_0"), format!("a{j}_1"), format!("i{}", (j + 1) % n)]
    };
    let holes: BTreeSet<(String, String)> = (0..n)
        .map(|j| (format!("i{}", (j + 1) % n), format!("i{}", (j + 3) % n)))
        .collect();
    let mut pairs = BTreeSet::new();
    for j in 0..n {
        for x in s(j) {
            for y in s(j + 2) {
                let pair = (x.clone(), y);
                if !holes.contains(&pair) {
                    pairs.insert(pair);
                }
            }
        }
    }
    let pairs: Vec<(String, String)> = pairs.into_iter().collect();
    Ok(squares(square_product(&ladder_ring(n)), &pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_counts() {
        assert_eq!(m0_surface(1).unwrap(), ProductSubcomplex::full(square_product(&theta(2).unwrap())));
        assert_eq!(m0_surface(2).unwrap().cells_of_dim(2).count(), 6);
        assert_eq!(involution_surface(1).unwrap(), m0_surface(1).unwrap());
        assert_eq!(involution_surface(3).unwrap().cells_of_dim(2).count(), 8);
        assert_eq!(cauty_even(3).unwrap().cells_of_dim(2).count(), 21);
        assert_eq!(example_5b4(4).unwrap().cells_of_dim(2).count(), 56);
        assert_eq!(cauty_odd(2, false).unwrap().cells_of_dim(2).count(), 12);
    }

    #[test]
    fn parameter_checks() {
        assert!(m0_surface(0).is_err());
        assert!(cauty_even(4).is_err());
        assert!(cauty_even_plus(5).is_err());
        assert!(cauty_odd(1, false).is_err());
        assert!(example_5b4(3).is_err());
    }

    #[test]
    fn symmetry_checks() {
        assert!(swap_invariance_check(&involution_surface(2).unwrap()).unwrap());
        assert!(!swap_invariance_check(&m0_surface(2).unwrap()).unwrap());
        assert!(!diagonal_disjointness_check(&involution_surface(2).unwrap()).unwrap());
        assert!(diagonal_disjointness_check(&example_5b4(4).unwrap()).unwrap());
        assert!(swap_invariance_check(&torus_product(&[3]).unwrap()).is_err());
    }
}
