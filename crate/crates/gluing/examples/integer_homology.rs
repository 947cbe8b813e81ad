use gluing::homalg::{mobius, smith, Coeff, CochainComplex, IntMatrix, Poset};
use gluing::sections::order_complex;

fn main() {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith(&m);
    let diag: Vec<String> = s.diag.iter().map(|d| d.to_string()).collect();
    println!("Smith form diagonal: {}", diag.join(", "));
    assert_eq!(s.u.mul(&m).mul(&s.v), s.s);

    // reduced cochains of a hexagon: a circle
    let k = 3;
    let hexagon = order_complex(2 * k, |a, b| a == b || (a < k && b >= k && (b - k == a || (b - k + 1) % k == a)), &[]);
    let c = hexagon.reduced_cochains();
    for coeff in [Coeff::Z, Coeff::Zmod(2), Coeff::Q] {
        let hs: Vec<String> = c.all_cohomology(coeff).iter().map(|(n, h)| format!("H~{n} = {h}")).collect();
        println!("circle over {coeff}: {}", hs.join(", "));
    }

    // a complex with torsion: Z --2--> Z
    let d = IntMatrix::from_rows(&[vec![2]]).to_sparse();
    let c = CochainComplex::free(0, vec![1, 1], vec![d]);
    println!("Z --2--> Z: H1 = {}, H1 mod 2 = {}, kernel of reduction = {}", c.cohomology(1, Coeff::Z), c.cohomology(1, Coeff::Zmod(2)), c.induced_kernel(1, Coeff::Z, Coeff::Zmod(2)));

    // Möbius function of the Boolean lattice on 3 atoms
    let b3 = Poset::from_fn(8, |a, b| a & b == a);
    let mu = mobius(&b3);
    println!("mu(empty, S) for |S| = 0..3: {:?}", [0, 1, 3, 7].map(|s| mu[0][s]));
}
