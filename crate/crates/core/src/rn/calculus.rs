//! Translation-invariant calculi on ℝ and ℝ² built from a generator `c(p)`.

use std::collections::BTreeSet;

use super::coord::DiffOp;
use super::generator::{term_operator, GenTerm, GeneratorFunction, MOMENTA};
use super::RnError;
use crate::linalg;
use crate::scalars::Scalar;

const MAX_CLOSURE_STEPS: usize = 256;
const MAX_TAYLOR_ORDER: u32 = 64;

/// `p_n = c^{(n)} − c^{(n)}(0)` for a derivative multi-index `n ≠ 0`.
#[derive(Clone, Debug)]
pub struct DerivedElement {
    pub index: [u32; 2],
    pub function: GeneratorFunction,
}

/// A normalized basis vector of `L`, together with the Taylor monomial it is dual to.
#[derive(Clone, Debug)]
pub struct BasisVector {
    pub label: String,
    pub function: GeneratorFunction,
    pub pivot: (usize, u32),
}

/// `L = span{p_n}` with a basis normalized so that its Taylor coefficients at
/// the pivot monomials form the identity.
#[derive(Clone, Debug)]
pub struct TangentData {
    pub nvars: usize,
    pub derived: Vec<DerivedElement>,
    pub basis: Vec<BasisVector>,
}

fn coordinate_rows(fs: &[&GeneratorFunction]) -> Vec<Vec<Scalar>> {
    let keys: BTreeSet<GenTerm> = fs.iter().flat_map(|f| f.terms().map(|(t, _)| t.clone())).collect();
    fs.iter()
        .map(|f| {
            keys.iter()
                .map(|k| f.terms().find(|(t, _)| *t == k).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero))
                .collect()
        })
        .collect()
}

fn is_independent_of(candidate: &GeneratorFunction, span: &[GeneratorFunction]) -> bool {
    let mut all: Vec<&GeneratorFunction> = span.iter().collect();
    all.push(candidate);
    let rows = coordinate_rows(&all);
    linalg::rank(&rows) == all.len()
}

fn taylor_columns(nvars: usize, order: u32) -> Vec<(usize, u32)> {
    (1..=order).flat_map(|m| (0..nvars).map(move |a| (a, m))).collect()
}

fn taylor_row(f: &GeneratorFunction, cols: &[(usize, u32)]) -> Vec<Scalar> {
    cols.iter().map(|&(a, m)| f.taylor_coefficient(a, m)).collect()
}

fn basis_label(nvars: usize, pivot: (usize, u32)) -> String {
    let p = MOMENTA[pivot.0];
    let mono = if pivot.1 == 1 { p.to_string() } else { format!("{p}^{}", pivot.1) };
    if nvars == 1 && pivot.0 != 0 {
        unreachable!("one-variable calculi only use the first momentum");
    }
    format!("e[{mono}]")
}

/// Derivative closure of `c`, the spanning set `{c^{(n)} − c^{(n)}(0)}` and a
/// normalized basis of `L`.
pub fn tangent_space_from_c(c: &GeneratorFunction, nvars: usize) -> Result<TangentData, RnError> {
    if c.arity() > nvars {
        return Err(RnError::Arity { needed: c.arity(), nvars });
    }
    let mut closure: Vec<GeneratorFunction> = Vec::new();
    let mut derived = Vec::new();
    let mut queue: Vec<([u32; 2], GeneratorFunction)> = vec![([0, 0], c.clone())];
    let mut steps = 0;
    while let Some((index, f)) = queue.pop() {
        for axis in 0..nvars {
            steps += 1;
            if steps > MAX_CLOSURE_STEPS {
                return Err(RnError::NonStabilizing);
            }
            let d = f.derivative(axis);
            let mut next = index;
            next[axis] += 1;
            if d.is_zero() {
                continue;
            }
            derived.push(DerivedElement { index: next, function: d.centered() });
            if is_independent_of(&d, &closure) {
                closure.push(d.clone());
                queue.insert(0, (next, d));
            }
        }
    }
    derived.sort_by_key(|d| (d.index[0] + d.index[1], d.index[1]));
    derived.dedup_by_key(|d| d.index);

    let centered: Vec<GeneratorFunction> = closure.iter().map(GeneratorFunction::centered).filter(|g| !g.is_zero()).collect();
    let refs: Vec<&GeneratorFunction> = centered.iter().collect();
    let keep = linalg::independent_indices(&coordinate_rows(&refs));
    let spanning: Vec<GeneratorFunction> = keep.into_iter().map(|i| centered[i].clone()).collect();
    let dim = spanning.len();
    if dim == 0 {
        return Ok(TangentData { nvars, derived, basis: Vec::new() });
    }

    let mut order = dim as u32;
    let (cols, pivots, rows) = loop {
        let cols = taylor_columns(nvars, order);
        let rows: Vec<Vec<Scalar>> = spanning.iter().map(|f| taylor_row(f, &cols)).collect();
        let (_, pivots) = linalg::rref(&rows);
        if pivots.len() == dim {
            break (cols, pivots, rows);
        }
        order += 1;
        if order > MAX_TAYLOR_ORDER {
            return Err(RnError::NonStabilizing);
        }
    };
    // [T_P | I] → [I | T_P⁻¹]
    let augmented: Vec<Vec<Scalar>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Scalar> = pivots.iter().map(|&p| r[p].clone()).collect();
            row.extend((0..dim).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    let (inv, _) = linalg::rref(&augmented);
    let basis = (0..dim)
        .map(|i| {
            let function = (0..dim).fold(GeneratorFunction::zero(), |acc, j| acc.add(&spanning[j].scale(&inv[i][dim + j])));
            let pivot = cols[pivots[i]];
            BasisVector { label: basis_label(nvars, pivot), function, pivot }
        })
        .collect();
    Ok(TangentData { nvars, derived, basis })
}

impl TangentData {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the normalized basis, if `f ∈ L`.
    pub fn coordinates_of(&self, f: &GeneratorFunction) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.basis.iter().map(|b| f.taylor_coefficient(b.pivot.0, b.pivot.1)).collect();
        let rebuilt = self.basis.iter().zip(&coords).fold(GeneratorFunction::zero(), |acc, (b, c)| acc.add(&b.function.scale(c)));
        (rebuilt == *f).then_some(coords)
    }

    /// `g_{ji}(t)` as operators: `e_j(p + t) − e_j(t) = Σ_i e_i(p) g_{ji}(t)`.
    /// Fails with the offending component if some `h_τ − h_τ(0)` is not in `L`.
    pub fn translation_coefficients(&self) -> Result<Vec<Vec<DiffOp>>, RnError> {
        let n = self.dimension();
        let mut g = vec![vec![DiffOp::zero(); n]; n];
        for (j, e) in self.basis.iter().enumerate() {
            for (tau, h) in e.function.translation_split() {
                let h0 = h.centered();
                if h0.is_zero() {
                    continue;
                }
                let coords = self.coordinates_of(&h0).ok_or_else(|| RnError::NotTranslationClosed(format!("{} at {h0}", e.label)))?;
                let op = term_operator(&tau);
                for (i, c) in coords.iter().enumerate() {
                    g[j][i] = g[j][i].add(&op.scale(c));
                }
            }
        }
        Ok(g)
    }

    /// Exact membership of every projected translate `e(p + t) − e(t)` in `L ⊗ Fun(t)`.
    pub fn translation_closure_report(&self) -> Vec<(String, bool)> {
        self.basis
            .iter()
            .map(|e| {
                let ok = e.function.translation_split().into_values().all(|h| {
                    let h0 = h.centered();
                    h0.is_zero() || self.coordinates_of(&h0).is_some()
                });
                (e.label.clone(), ok)
            })
            .collect()
    }
}

/// The second-order part of the calculus: a basis of Ω², the wedge table on
/// basis 1-forms and the exterior derivative of basis 1-forms.
#[derive(Clone, Debug)]
pub struct Omega2 {
    pub names: Vec<String>,
    /// A wedge `θ_i ∧ θ_j` equal to each basis 2-form.
    pub representatives: Vec<(usize, usize)>,
    /// `θ_i ∧ θ_j = Σ c·β_k`.
    pub wedge: Vec<Vec<Vec<(usize, Scalar)>>>,
    /// `dθ_m = Σ c·β_k`.
    pub d_theta: Vec<Vec<(usize, Scalar)>>,
    /// `f·β_k = Σ_l β_l · op(f)`; derived from the 1-form rules.
    pub left_rule: Vec<Vec<(usize, DiffOp)>>,
}

#[derive(Clone, Debug)]
pub struct CalculusSpec {
    pub name: String,
    pub nvars: usize,
    pub generator: GeneratorFunction,
    pub tangent: TangentData,
    /// Names of the basis 1-forms dual to the basis of `L`.
    pub forms: Vec<String>,
    /// `f·θ_m = Σ_j θ_j · op(f)`.
    pub left_rule: Vec<Vec<(usize, DiffOp)>>,
    /// `Ψ⁻¹(f ⊗ e_j) = Σ_i e_i ⊗ op(f)`.
    pub braid_rule: Vec<Vec<(usize, DiffOp)>>,
    pub omega2: Option<Omega2>,
}

fn form_name(nvars: usize, pivot: (usize, u32)) -> String {
    let coord = ["x", "y"][pivot.0];
    match (nvars, pivot.1) {
        (_, 1) => format!("d{coord}"),
        (1, 2) => "w".to_string(),
        (1, m) => format!("w{m}"),
        (_, m) => format!("w{coord}{m}"),
    }
}

fn lattice_generator(axis: usize, step: Scalar) -> GeneratorFunction {
    let norm = step.pow(-2).expect("lattice step is nonzero");
    GeneratorFunction::exp(axis, step).scale(&norm)
}

fn nonzero_pairs(ops: impl IntoIterator<Item = (usize, DiffOp)>) -> Vec<(usize, DiffOp)> {
    ops.into_iter().filter(|(_, op)| !op.is_zero()).collect()
}

impl CalculusSpec {
    pub fn from_generator(c: GeneratorFunction, nvars: usize) -> Result<Self, RnError> {
        let mut spec = Self::build(format!("c = {c}"), c, nvars)?;
        for known in [Self::jet(2)?, Self::finite_difference_1d()?, Self::finite_difference_2d()?] {
            let same = known.nvars == spec.nvars
                && known.tangent.basis.len() == spec.tangent.basis.len()
                && known.tangent.basis.iter().zip(&spec.tangent.basis).all(|(a, b)| a.function == b.function);
            if same {
                spec.omega2 = known.omega2;
            }
        }
        Ok(spec)
    }

    fn build(name: String, c: GeneratorFunction, nvars: usize) -> Result<Self, RnError> {
        let tangent = tangent_space_from_c(&c, nvars)?;
        let g = tangent.translation_coefficients()?;
        let n = tangent.dimension();
        let forms = tangent.basis.iter().map(|b| form_name(nvars, b.pivot)).collect();
        let left_rule = (0..n).map(|m| nonzero_pairs((0..n).map(|j| (j, g[j][m].clone())))).collect();
        let braid_rule = (0..n).map(|j| nonzero_pairs((0..n).map(|i| (i, g[j][i].clone())))).collect();
        Ok(CalculusSpec { name, nvars, generator: c, tangent, forms, left_rule, braid_rule, omega2: None })
    }

    /// The `n`-jet calculus, `c = p^{n+1}/(n+1)!`.
    pub fn jet(n: u32) -> Result<Self, RnError> {
        if n == 0 {
            return Err(RnError::Unsupported("jet order must be at least 1".into()));
        }
        let fact: i64 = (1..=(n as i64 + 1)).product();
        let c = GeneratorFunction::monomial(0, n + 1).scale(&Scalar::from_ratio(1, fact));
        let mut spec = Self::build(format!("jet:{n}"), c, 1)?;
        if n == 2 {
            spec.attach_omega2(
                vec!["(dx)^2".into(), "dx^w".into()],
                vec![(0, 0), (0, 1)],
                vec![
                    vec![vec![(0, Scalar::one())], vec![(1, Scalar::one())]],
                    vec![vec![(1, Scalar::from_i64(-1))], vec![]],
                ],
                vec![vec![], vec![(0, Scalar::one())]],
            );
        }
        Ok(spec)
    }

    /// The lattice calculus on `λℤ`, `c = λ⁻²e^{λp}`.
    pub fn finite_difference_1d() -> Result<Self, RnError> {
        let c = lattice_generator(0, Scalar::lambda());
        let mut spec = Self::build("fd:1".into(), c, 1)?;
        spec.attach_omega2(vec![], vec![], vec![vec![vec![]]], vec![vec![]]);
        Ok(spec)
    }

    /// The lattice calculus on `λℤ × μℤ`, `c = λ⁻²e^{λp} + μ⁻²e^{μq}`.
    pub fn finite_difference_2d() -> Result<Self, RnError> {
        let c = lattice_generator(0, Scalar::lambda()).add(&lattice_generator(1, Scalar::mu()));
        let mut spec = Self::build("fd:2".into(), c, 2)?;
        spec.attach_omega2(
            vec!["dx^dy".into()],
            vec![(0, 1)],
            vec![vec![vec![], vec![(0, Scalar::one())]], vec![vec![(0, Scalar::from_i64(-1))], vec![]]],
            vec![vec![], vec![]],
        );
        Ok(spec)
    }

    /// Parses `jet:<n>`, `fd:1` or `fd:2`.
    pub fn named(name: &str) -> Result<Self, RnError> {
        match name {
            "fd:1" => Self::finite_difference_1d(),
            "fd:2" => Self::finite_difference_2d(),
            _ => match name.strip_prefix("jet:").and_then(|n| n.parse::<u32>().ok()) {
                Some(n) => Self::jet(n),
                None => Err(RnError::Unsupported(format!("unknown calculus '{name}'"))),
            },
        }
    }

    fn attach_omega2(
        &mut self,
        names: Vec<String>,
        representatives: Vec<(usize, usize)>,
        wedge: Vec<Vec<Vec<(usize, Scalar)>>>,
        d_theta: Vec<Vec<(usize, Scalar)>>,
    ) {
        let mut omega = Omega2 { names, representatives, wedge, d_theta, left_rule: Vec::new() };
        omega.left_rule = omega.representatives.iter().map(|&(i, j)| self.derive_two_form_rule(&omega, i, j)).collect();
        self.omega2 = Some(omega);
    }

    /// `f·(θ_i ∧ θ_j) = Σ_{k,l} (θ_k ∧ θ_l) · (op_{lj} ∘ op_{ki})(f)`, expanded
    /// along the wedge table.
    pub fn derive_two_form_rule(&self, omega: &Omega2, i: usize, j: usize) -> Vec<(usize, DiffOp)> {
        let n_two = omega.names.len();
        let mut acc = vec![DiffOp::zero(); n_two];
        for (k, op_ki) in &self.left_rule[i] {
            for (l, op_lj) in &self.left_rule[j] {
                let op = op_lj.compose(op_ki);
                for (b, c) in &omega.wedge[*k][*l] {
                    acc[*b] = acc[*b].add(&op.scale(c));
                }
            }
        }
        nonzero_pairs(acc.into_iter().enumerate())
    }

    /// Checks that the derived 2-form rules agree with `f·(θ_i ∧ θ_j)` computed
    /// pair by pair, as operators.
    pub fn omega2_consistency(&self) -> Vec<((usize, usize), bool)> {
        let Some(omega) = &self.omega2 else {
            return Vec::new();
        };
        let n = self.dimension();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let direct = self.derive_two_form_rule(omega, i, j);
                let mut via_table = vec![DiffOp::zero(); omega.names.len()];
                for (b, c) in &omega.wedge[i][j] {
                    for (l, op) in &omega.left_rule[*b] {
                        via_table[*l] = via_table[*l].add(&op.scale(c));
                    }
                }
                let ok = nonzero_pairs(via_table.into_iter().enumerate()) == direct;
                out.push(((i, j), ok));
            }
        }
        out
    }

    pub fn dimension(&self) -> usize {
        self.tangent.dimension()
    }

    pub fn omega2_dimension(&self) -> Option<usize> {
        self.omega2.as_ref().map(|o| o.names.len())
    }

    pub fn form_index(&self, name: &str) -> Option<usize> {
        self.forms.iter().position(|f| f == name)
    }

    pub fn two_form_index(&self, name: &str) -> Option<usize> {
        self.omega2.as_ref()?.names.iter().position(|f| f == name)
    }

    /// Human-readable bimodule relations `f·θ_m = Σ θ_j·op(f)`.
    pub fn relations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (m, rule) in self.left_rule.iter().enumerate() {
            let rhs: Vec<String> = rule.iter().map(|(j, op)| format!("{}·[{op}](f)", self.forms[*j])).collect();
            out.push(format!("f·{} = {}", self.forms[m], rhs.join(" + ")));
        }
        if let Some(o) = &self.omega2 {
            for (k, rule) in o.left_rule.iter().enumerate() {
                let rhs: Vec<String> = rule.iter().map(|(j, op)| format!("{}·[{op}](f)", o.names[*j])).collect();
                out.push(format!("f·{} = {}", o.names[k], rhs.join(" + ")));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_dimensions() {
        for n in 1..=5 {
            let spec = CalculusSpec::jet(n).unwrap();
            assert_eq!(spec.dimension(), n as usize);
            for (m, b) in spec.tangent.basis.iter().enumerate() {
                assert_eq!(b.function, GeneratorFunction::monomial(0, m as u32 + 1));
            }
        }
    }

    #[test]
    fn exponential_gives_one_dimension() {
        let spec = CalculusSpec::finite_difference_1d().unwrap();
        assert_eq!(spec.dimension(), 1);
        let lam = Scalar::lambda();
        let expected = GeneratorFunction::exp(0, lam.clone())
            .sub(&GeneratorFunction::constant(Scalar::one()))
            .scale(&lam.inv().unwrap());
        assert_eq!(spec.tangent.basis[0].function, expected);
    }

    #[test]
    fn two_dimensional_lattice() {
        let spec = CalculusSpec::finite_difference_2d().unwrap();
        assert_eq!(spec.dimension(), 2);
        assert_eq!(spec.forms, vec!["dx", "dy"]);
    }

    #[test]
    fn translation_closure_holds() {
        for spec in [CalculusSpec::jet(3).unwrap(), CalculusSpec::finite_difference_2d().unwrap()] {
            assert!(spec.tangent.translation_closure_report().iter().all(|(_, ok)| *ok));
        }
    }

    #[test]
    fn omega2_tables_are_consistent() {
        for spec in [CalculusSpec::jet(2).unwrap(), CalculusSpec::finite_difference_1d().unwrap(), CalculusSpec::finite_difference_2d().unwrap()] {
            assert!(spec.omega2_consistency().iter().all(|(_, ok)| *ok), "{}", spec.name);
        }
    }

    #[test]
    fn generator_scaling_gives_same_calculus() {
        let c = GeneratorFunction::monomial(0, 3);
        let spec = CalculusSpec::from_generator(c, 1).unwrap();
        assert_eq!(spec.dimension(), 2);
        assert_eq!(spec.omega2_dimension(), Some(2));
    }

    #[test]
    fn mixed_generator() {
        // c = p^2 + e^{λp}: derivatives 2p + λe^{λp}, 2 + λ²e^{λp}, λ³e^{λp}
        let c = GeneratorFunction::monomial(0, 2).add(&GeneratorFunction::exp(0, Scalar::lambda()));
        let data = tangent_space_from_c(&c, 1).unwrap();
        assert_eq!(data.dimension(), 2);
        assert!(data.translation_closure_report().iter().all(|(_, ok)| *ok));
    }
}
