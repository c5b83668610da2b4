//! Verification suites bundling the algebraic identities of every module into
//! deterministic reports.

use rand::Rng;

use crate::gauge::{self, GaugeTransformation};
use crate::random;
use crate::report::{Check, Report};
use crate::rn::{shift, CalculusSpec, CoordFunction, DiffOp, GeneratorFunction, GradedForm};
use crate::scalars::{Scalar, Var};
use crate::uqsu2::{
    antipode, braided_lie_space, braided_lie_table, casimir, casimir_c, casimir_coproduct_closed_form, check_tangent_space,
    coproduct, coproduct_on_leg, counit, express_in, fundamental_rep, is_central, q_limit_diagnostic, reference_casimir_basis,
    tangent_space_from_central, Matrix2, TangentSpace, TensorElement, UqElement,
};

pub const SUITES: [&str; 8] = ["hopf", "casimir", "bralie", "check-L", "jets", "finite-diff", "gauge-jet", "gauge-fd"];

const SEED: u64 = 20_240_601;

/// Runs a suite by name; `all` runs every suite in order.
pub fn run_suite(name: &str) -> Option<Report> {
    Some(match name {
        "hopf" => hopf(),
        "casimir" => casimir_suite(),
        "bralie" => bralie(),
        "check-L" => check_l(),
        "jets" => jets(),
        "finite-diff" => finite_diff(),
        "gauge-jet" => gauge_jet(),
        "gauge-fd" => gauge_fd(),
        "all" => {
            // suites are independent and seeded, so running them on separate
            // threads leaves the absorbed order and contents unchanged
            let reports: Vec<Report> = std::thread::scope(|scope| {
                let handles: Vec<_> = SUITES.iter().map(|s| scope.spawn(move || run_suite(s).expect("known suite"))).collect();
                handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
            });
            let mut all = Report::new("all");
            for r in reports {
                all.absorb(r);
            }
            all
        }
        _ => return None,
    })
}

/// Counts how many samples satisfy a property and reports the first failure.
fn sampled(name: &str, results: impl IntoIterator<Item = (bool, String)>) -> Check {
    let mut total = 0;
    let mut ok = 0;
    let mut first_failure = None;
    for (pass, detail) in results {
        total += 1;
        if pass {
            ok += 1;
        } else if first_failure.is_none() {
            first_failure = Some(detail);
        }
    }
    let lhs = match first_failure {
        None => format!("{ok}/{total} hold"),
        Some(d) => format!("{ok}/{total} hold; first failure: {d}"),
    };
    Check::new(name, lhs, format!("{total}/{total} hold"), ok == total && total > 0)
}

fn apply_antipode_leg(t: &TensorElement, leg: usize) -> TensorElement {
    t.map_leg(leg, 1, |m| TensorElement::from_legs(&[antipode(&UqElement::monomial(*m))]))
}

fn apply_counit_leg(t: &TensorElement, leg: usize) -> TensorElement {
    t.map_leg(leg, 0, |m| TensorElement::one(0).scale(&counit(&UqElement::monomial(*m))))
}

fn tensor_to_element(t: &TensorElement) -> UqElement {
    t.contract()
}

pub fn hopf() -> Report {
    let mut r = Report::new("hopf");
    let mut rng = random::rng(SEED);
    let samples: Vec<UqElement> = (0..50).map(|_| random::pbw_element(&mut rng, 3)).collect();

    r.push(sampled(
        "(Δ⊗id)Δ = (id⊗Δ)Δ on 50 random elements",
        samples.iter().map(|u| {
            let d = coproduct(u);
            (coproduct_on_leg(&d, 0) == coproduct_on_leg(&d, 1), u.to_string())
        }),
    ));
    r.push(sampled(
        "(ε⊗id)Δ = id = (id⊗ε)Δ on 50 random elements",
        samples.iter().map(|u| {
            let d = coproduct(u);
            let left = tensor_to_element(&apply_counit_leg(&d, 0));
            let right = tensor_to_element(&apply_counit_leg(&d, 1));
            (left == *u && right == *u, u.to_string())
        }),
    ));
    r.push(sampled(
        "m(S⊗id)Δ = ε·1 on 50 random elements",
        samples.iter().map(|u| {
            let lhs = apply_antipode_leg(&coproduct(u), 0).contract();
            (lhs == UqElement::scalar(counit(u)), u.to_string())
        }),
    ));
    r.push(sampled(
        "m(id⊗S)Δ = ε·1 on 50 random elements",
        samples.iter().map(|u| {
            let lhs = apply_antipode_leg(&coproduct(u), 1).contract();
            (lhs == UqElement::scalar(counit(u)), u.to_string())
        }),
    ));
    r.push(sampled(
        "Δ(uv) = Δ(u)Δ(v) on 25 random pairs",
        samples.chunks(2).map(|p| {
            let lhs = coproduct(&p[0].multiply(&p[1]));
            let rhs = coproduct(&p[0]).multiply(&coproduct(&p[1]));
            (lhs == rhs, format!("({}, {})", p[0], p[1]))
        }),
    ));
    r.push(Check::equal("S(Xp)", &antipode(&UqElement::x_plus()), &UqElement::x_plus().scale(&-Scalar::q())));
    r.push(Check::equal("S(Xm)", &antipode(&UqElement::x_minus()), &UqElement::x_minus().scale(&-Scalar::q_pow(-1))));
    r.push(Check::equal("S(K)", &antipode(&UqElement::k()), &UqElement::k_pow(-1)));
    let qq = &Scalar::q_pow(2) + &Scalar::q_pow(-2);
    r.push(Check::equal("ρ(C) = (q^2 + q^-2)·1", &fundamental_rep(&casimir_c()), &Matrix2::identity().scale(&qq)));
    r
}

pub fn casimir_suite() -> Report {
    let mut r = Report::new("casimir");
    let (c, cq) = casimir();
    r.push(Check::equal("ΔC closed form", &coproduct(&c), &casimir_coproduct_closed_form()));
    r.push(Check::holds("C central", c.to_string(), is_central(&c)));
    r.push(Check::equal("ε(c_q)", &counit(&cq), &Scalar::zero()));
    let space = match tangent_space_from_central(&cq) {
        Ok(s) => s,
        Err(e) => {
            r.push(Check::new("tangent space from c_q", e.to_string(), "four elements", false));
            return r;
        }
    };
    for (label, reference) in reference_casimir_basis() {
        let computed = space.element(&label).cloned().unwrap_or_else(UqElement::zero);
        r.push(Check::equal(label, &computed, &reference));
    }
    r.push(Check::equal("rank over Q(q)", &space.rank(), &4));
    match q_limit_diagnostic(&space, 2..=6) {
        Ok(samples) => {
            for s in &samples {
                r.note(format!("numeric: q = 1 + 10^-{}: angle(x_a-1, x_d-1) = {:.6e} rad", s.k, s.angle));
            }
            let monotone = samples.windows(2).all(|w| w[1].angle < w[0].angle);
            let angles: Vec<String> = samples.iter().map(|s| format!("{:.3e}", s.angle)).collect();
            r.push(Check::holds("q→1 angle decreases (numeric, k = 2..6)", angles.join(", "), monotone));
        }
        Err(e) => r.push(Check::new("q→1 diagnostic", e.to_string(), "", false)),
    }
    r
}

pub fn bralie() -> Report {
    let mut r = Report::new("bralie");
    for entry in braided_lie_table() {
        let name = format!("[{},{}]", entry.left, entry.right);
        let pass = entry.passes();
        let rhs = match (&entry.expected, &entry.coordinates) {
            (Some(e), _) => e.to_string(),
            (None, Some(_)) => "in span{h, x, y, gamma}".to_string(),
            (None, None) => "not in span{h, x, y, gamma}".to_string(),
        };
        r.push(Check::new(name, entry.computed.to_string(), rhs, pass));
    }
    if let Ok(space) = tangent_space_from_central(&casimir().1) {
        for change in express_in(&space, &braided_lie_space()) {
            match change.coordinates {
                Some(coords) => {
                    let parts: Vec<String> = ["h", "x", "y", "gamma", "1"].iter().zip(&coords).filter(|(_, c)| !c.is_zero()).map(|(l, c)| format!("({c})*{l}")).collect();
                    r.note(format!("{} = {}", change.label, parts.join(" + ")));
                }
                None => r.note(format!("{} is outside span{{h, x, y, gamma, 1}}", change.label)),
            }
        }
    }
    r
}

pub fn check_l() -> Report {
    let mut r = Report::new("check-L");
    let push_conditions = |r: &mut Report, label: &str, space: &TangentSpace| {
        let check = check_tangent_space(space);
        r.push(Check::holds(format!("{label}: L ⊂ ker ε"), format!("rank {}", space.rank()), check.counit_zero));
        for (g, ok) in &check.adjoint_stable {
            r.push(Check::holds(format!("{label}: Ad_{g}(L) ⊆ L"), format!("rank {}", space.rank()), *ok));
        }
        r.push(Check::holds(format!("{label}: (Δ - id⊗1)L ⊆ A⊗L"), format!("rank {}", space.rank()), check.coproduct_stable));
        check
    };
    if let Ok(space) = tangent_space_from_central(&casimir().1) {
        push_conditions(&mut r, "Casimir L", &space);
    }
    push_conditions(&mut r, "braided Lie span", &braided_lie_space());
    let xp = TangentSpace::new(vec!["Xp".into()], vec![UqElement::x_plus()]);
    let check = check_tangent_space(&xp);
    let detail = check.failures.first().cloned().unwrap_or_default();
    r.push(Check::new("span{Xp} rejected by the coproduct condition", detail, "rejected", !check.coproduct_stable));
    r
}

fn x() -> CoordFunction {
    CoordFunction::var(Var::X)
}

fn y() -> CoordFunction {
    CoordFunction::var(Var::Y)
}

fn one_form(spec: &CalculusSpec, name: &str) -> GradedForm {
    let i = spec.form_index(name).expect("basis form");
    GradedForm::basis(spec, 1, i, CoordFunction::one()).expect("degree 1")
}

fn two_form(spec: &CalculusSpec, name: &str) -> GradedForm {
    let i = spec.two_form_index(name).expect("basis 2-form");
    GradedForm::basis(spec, 2, i, CoordFunction::one()).expect("degree 2")
}

fn form_eq(spec: &CalculusSpec, name: &str, lhs: &GradedForm, rhs: &GradedForm) -> Check {
    gauge::form_check(spec, name, lhs, rhs)
}

/// Renders `Σ e_i ⊗ g_i`.
fn braided_text(spec: &CalculusSpec, terms: &[(usize, CoordFunction)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms.iter().map(|(i, g)| format!("{} ⊗ ({g})", spec.tangent.basis[*i].label)).collect::<Vec<_>>().join(" + ")
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Properties shared by every calculus: braided Leibniz rule, bimodule law,
/// translation closure, Ω² consistency, d² = 0 and middle-linearity of ∧.
fn structural_checks(r: &mut Report, spec: &CalculusSpec, vars: &[Var], rng: &mut impl Rng) {
    let tag = &spec.name;
    let pairs: Vec<(Scalar, Scalar)> = (0..50).map(|_| (random::polynomial(rng, vars, 6), random::polynomial(rng, vars, 6))).collect();
    for (j, e) in spec.tangent.basis.iter().enumerate() {
        r.push(sampled(
            &format!("{tag}: braided Leibniz for {} on 50 random pairs", e.label),
            pairs.iter().map(|(f, g)| {
                let lhs = spec.partial(j, &(f * g));
                let braided = spec.braiding_inverse(f, j).into_iter().fold(CoordFunction::zero(), |acc, (i, fi)| &acc + &(&fi * &spec.partial(i, g)));
                let rhs = &(&spec.partial(j, f) * g) + &braided;
                (lhs == rhs, format!("f = {f}, g = {g}"))
            }),
        ));
    }
    r.push(sampled(
        &format!("{tag}: f·(g·φ) = (fg)·φ on 20 random triples"),
        (0..20).map(|_| {
            let f = random::polynomial(rng, vars, 3);
            let g = random::rational(rng, vars, 2);
            let phi = GradedForm { degree: 1, coeffs: (0..spec.dimension()).map(|_| random::polynomial(rng, vars, 2)).collect() };
            let lhs = spec.left_mult(&f, &spec.left_mult(&g, &phi).expect("degree 1")).expect("degree 1");
            let rhs = spec.left_mult(&(&f * &g), &phi).expect("degree 1");
            (lhs == rhs, format!("f = {f}, g = {g}"))
        }),
    ));
    for (label, ok) in spec.tangent.translation_closure_report() {
        r.push(Check::holds(format!("{tag}: e(p+t) - e(t) ∈ L⊗Fun(t) for {label}"), label.clone(), ok));
    }
    let Some(omega) = &spec.omega2 else {
        return;
    };
    let consistent = spec.omega2_consistency();
    r.push(Check::holds(
        format!("{tag}: Ω² left-multiplication rules consistent with the wedge table"),
        format!("{} pairs", consistent.len()),
        consistent.iter().all(|(_, ok)| *ok),
    ));
    if omega.names.is_empty() {
        r.push(Check::holds(format!("{tag}: Ω² = 0"), "no 2-forms", true));
        return;
    }
    r.push(sampled(
        &format!("{tag}: d(d f) = 0 on 20 random rational f"),
        (0..20).map(|_| {
            let f = random::rational(rng, vars, 4);
            (spec.d1(&spec.d0(&f)).expect("Ω² present").is_zero(), f.to_string())
        }),
    ));
    r.push(sampled(
        &format!("{tag}: (φ·f)∧χ = φ∧(f·χ) on 20 random triples"),
        (0..20).map(|_| {
            let f = random::rational(rng, vars, 2);
            let phi = GradedForm { degree: 1, coeffs: (0..spec.dimension()).map(|_| random::polynomial(rng, vars, 2)).collect() };
            let chi = GradedForm { degree: 1, coeffs: (0..spec.dimension()).map(|_| random::polynomial(rng, vars, 2)).collect() };
            let lhs = spec.wedge(&phi.right_mult(&f), &chi).expect("Ω² present");
            let rhs = spec.wedge(&phi, &spec.left_mult(&f, &chi).expect("degree 1")).expect("Ω² present");
            (lhs == rhs, format!("f = {f}"))
        }),
    ));
    r.push(sampled(
        &format!("{tag}: d(f·φ) = df∧φ + f·dφ on 20 random pairs"),
        (0..20).map(|_| {
            let f = random::polynomial(rng, vars, 3);
            let phi = GradedForm { degree: 1, coeffs: (0..spec.dimension()).map(|_| random::polynomial(rng, vars, 3)).collect() };
            let lhs = spec.d1(&spec.left_mult(&f, &phi).expect("degree 1")).expect("Ω² present");
            let rhs = spec
                .wedge(&spec.d0(&f), &phi)
                .and_then(|a| a.add(&spec.left_mult(&f, &spec.d1(&phi)?)?))
                .expect("Ω² present");
            (lhs == rhs, format!("f = {f}"))
        }),
    ));
}

pub fn jets() -> Report {
    let mut r = Report::new("jets");
    let mut rng = random::rng(SEED + 1);
    for n in 1..=5u32 {
        let spec = match CalculusSpec::jet(n) {
            Ok(s) => s,
            Err(e) => {
                r.push(Check::new(format!("jet:{n}"), e.to_string(), "", false));
                continue;
            }
        };
        r.push(Check::equal(format!("c = p^{}/{}!: dim L", n + 1, n + 1), &spec.dimension(), &(n as usize)));
        let basis_ok = spec.tangent.basis.iter().enumerate().all(|(m, b)| b.function == GeneratorFunction::monomial(0, m as u32 + 1));
        let shown: Vec<String> = spec.tangent.basis.iter().map(|b| b.function.to_string()).collect();
        r.push(Check::holds(format!("jet:{n}: L = span{{p, ..., p^{n}}}"), shown.join(", "), basis_ok));
        // f·θ_m = Σ_k binom(m+k, m) θ_{m+k} f^(k)
        let mut rule_ok = true;
        for m in 1..=n {
            let mut expected: Vec<(usize, DiffOp)> = Vec::new();
            for k in 0..=(n - m) {
                let op = DiffOp::derivative(0, k).scale(&Scalar::from_i64(binomial(m + k, m)));
                expected.push(((m + k - 1) as usize, op));
            }
            rule_ok &= spec.left_rule[(m - 1) as usize] == expected;
        }
        r.push(Check::holds(format!("jet:{n}: f·θ_m = Σ binom(m+k,m) θ_(m+k) f^(k)"), format!("{} rules", n), rule_ok));
    }

    let spec = CalculusSpec::jet(2).expect("2-jet");
    let (dx, w) = (one_form(&spec, "dx"), one_form(&spec, "w"));
    let two = Scalar::from_i64(2);
    let x3 = &(&x() * &x()) * &x();
    r.push(Check::equal("jet:2: ∂_(p^2) x^3", &spec.partial(1, &x3), &(&Scalar::from_i64(6) * &x())));
    r.push(Check::equal("jet:2: ∂_p 1", &spec.partial(0, &CoordFunction::one()), &CoordFunction::zero()));
    let f = random::polynomial(&mut rng, &[Var::X], 6);
    let psi = spec.braiding_inverse(&f, 1);
    let expected = vec![(0usize, &two * &crate::rn::derivative(&f, 0)), (1usize, f.clone())];
    r.push(Check::new("jet:2: Ψ⁻¹(f⊗p^2) = p^2⊗f + p⊗2f'", braided_text(&spec, &psi), braided_text(&spec, &expected), psi == expected));
    r.push(form_eq(&spec, "jet:2: d(x^2) = dx·2x + w·2", &spec.d0(&(&x() * &x())), &GradedForm { degree: 1, coeffs: vec![&two * &x(), two.clone()] }));
    r.push(form_eq(&spec, "jet:2: d(x) = dx", &spec.d0(&x()), &dx));
    r.push(form_eq(&spec, "jet:2: x·dx = dx·x + 2w", &spec.left_mult(&x(), &dx).unwrap(), &dx.right_mult(&x()).add(&w.right_mult(&two)).unwrap()));
    let witness = spec.left_mult(&x(), &spec.d0(&x())).unwrap().sub(&spec.d0(&x()).right_mult(&x())).unwrap().right_mult(&Scalar::from_ratio(1, 2));
    r.push(form_eq(&spec, "jet:2: w = ½(x·dx - dx·x)", &witness, &w));
    r.push(sampled(
        "jet:2: f·dx - dx·f = 2w·f' and f·w = w·f on 20 random f",
        (0..20).map(|_| {
            let f = random::polynomial(&mut rng, &[Var::X], 6);
            let lhs = spec.left_mult(&f, &dx).unwrap().sub(&dx.right_mult(&f)).unwrap();
            let rhs = w.right_mult(&(&two * &crate::rn::derivative(&f, 0)));
            let comm = spec.left_mult(&f, &w).unwrap() == w.right_mult(&f);
            (lhs == rhs && comm, f.to_string())
        }),
    ));
    let dxdx = two_form(&spec, "(dx)^2");
    let dxw = two_form(&spec, "dx^w");
    r.push(form_eq(&spec, "jet:2: dw = (dx)^2", &spec.d1(&w).unwrap(), &dxdx));
    r.push(form_eq(&spec, "jet:2: w∧w = 0", &spec.wedge(&w, &w).unwrap(), &GradedForm::zero(&spec, 2).unwrap()));
    r.push(form_eq(&spec, "jet:2: w∧dx = -dx∧w", &spec.wedge(&w, &dx).unwrap(), &dxw.neg()));
    r.push(form_eq(&spec, "jet:2: dx∧dx = (dx)^2", &spec.wedge(&dx, &dx).unwrap(), &dxdx));
    r.push(form_eq(&spec, "jet:2: x·dw = dw·x", &spec.left_mult(&x(), &spec.d1(&w).unwrap()).unwrap(), &spec.d1(&w).unwrap().right_mult(&x())));
    r.push(form_eq(&spec, "jet:2: x·dx∧w = dx∧w·x", &spec.left_mult(&x(), &dxw).unwrap(), &dxw.right_mult(&x())));
    r.push(form_eq(&spec, "jet:2: d(dx) = 0", &spec.d1(&dx).unwrap(), &GradedForm::zero(&spec, 2).unwrap()));
    r.push(sampled(
        "jet:2: d(d x^k) = 0 for k = 0..8",
        (0..=8).map(|k| {
            let f = x().pow(k).unwrap();
            (spec.d1(&spec.d0(&f)).unwrap().is_zero(), format!("x^{k}"))
        }),
    ));
    structural_checks(&mut r, &spec, &[Var::X], &mut rng);
    for n in [1, 3] {
        let spec = CalculusSpec::jet(n).expect("jet");
        structural_checks(&mut r, &spec, &[Var::X], &mut rng);
    }
    r
}

pub fn finite_diff() -> Report {
    let mut r = Report::new("finite-diff");
    let mut rng = random::rng(SEED + 2);
    let lam = Scalar::lambda();
    let mu = Scalar::mu();
    let spec = CalculusSpec::finite_difference_1d().expect("fd:1");
    r.push(Check::equal("c = lam^-2*exp(lam*p): dim L", &spec.dimension(), &1));
    let p1 = GeneratorFunction::exp(0, lam.clone()).sub(&GeneratorFunction::constant(Scalar::one())).scale(&lam.inv().unwrap());
    r.push(Check::equal("fd:1: L = span{(exp(lam*p) - 1)/lam}", &spec.tangent.basis[0].function, &p1));
    let dx = one_form(&spec, "dx");
    r.push(Check::equal("fd:1: ∂ x^2 = 2x + lam", &spec.partial(0, &(&x() * &x())), &(&(&Scalar::from_i64(2) * &x()) + &lam)));
    let psi = spec.braiding_inverse(&x(), 0);
    let expected = vec![(0usize, &x() + &lam)];
    r.push(Check::new("fd:1: Ψ⁻¹(x⊗p1) = p1⊗(x + lam)", braided_text(&spec, &psi), braided_text(&spec, &expected), psi == expected));
    // literal substitution, independent of the shift operator
    let literal_shift = |f: &Scalar, v: Var, by: &Scalar| f.substitute(&|u| if u == v { &crate::scalars::Poly::var(u) + by.numer() } else { crate::scalars::Poly::var(u) }).expect("shift");
    r.push(sampled(
        "fd:1: ∂f = (f(x+lam) - f(x))/lam on 20 random rational f",
        (0..20).map(|_| {
            let f = random::rational(&mut rng, &[Var::X], 4);
            let quotient = &(&literal_shift(&f, Var::X, &lam) - &f) / &lam;
            (spec.partial(0, &f) == quotient, f.to_string())
        }),
    ));
    r.push(sampled(
        "fd:1: f·dx - dx·f = lam·df on 30 random f of degree ≤ 6",
        (0..30).map(|_| {
            let f = random::polynomial(&mut rng, &[Var::X], 6);
            let lhs = spec.left_mult(&f, &dx).unwrap().sub(&dx.right_mult(&f)).unwrap();
            let rhs = spec.d0(&f).right_mult(&lam);
            (lhs == rhs, f.to_string())
        }),
    ));
    r.push(sampled(
        "fd:1: f·dx = dx·f(x+lam) on 20 random f",
        (0..20).map(|_| {
            let f = random::rational(&mut rng, &[Var::X], 3);
            (spec.left_mult(&f, &dx).unwrap() == dx.right_mult(&literal_shift(&f, Var::X, &lam)), f.to_string())
        }),
    ));
    r.push(form_eq(&spec, "fd:1: d(x) = dx", &spec.d0(&x()), &dx));
    structural_checks(&mut r, &spec, &[Var::X], &mut rng);

    let spec = CalculusSpec::finite_difference_2d().expect("fd:2");
    r.push(Check::equal("c = lam^-2*exp(lam*p) + mu^-2*exp(mu*q): dim L", &spec.dimension(), &2));
    let (dx, dy) = (one_form(&spec, "dx"), one_form(&spec, "dy"));
    let dxdy = two_form(&spec, "dx^dy");
    r.push(sampled(
        "fd:2: ∂_x, ∂_y are difference quotients on 20 random f",
        (0..20).map(|_| {
            let f = random::rational(&mut rng, &[Var::X, Var::Y], 3);
            let qx = &(&literal_shift(&f, Var::X, &lam) - &f) / &lam;
            let qy = &(&literal_shift(&f, Var::Y, &mu) - &f) / &mu;
            (spec.partial(0, &f) == qx && spec.partial(1, &f) == qy, f.to_string())
        }),
    ));
    r.push(sampled(
        "fd:2: f·dx = dx·f(x+lam,y), f·dy = dy·f(x,y+mu) on 20 random f",
        (0..20).map(|_| {
            let f = random::rational(&mut rng, &[Var::X, Var::Y], 3);
            let ok_x = spec.left_mult(&f, &dx).unwrap() == dx.right_mult(&literal_shift(&f, Var::X, &lam));
            let ok_y = spec.left_mult(&f, &dy).unwrap() == dy.right_mult(&literal_shift(&f, Var::Y, &mu));
            (ok_x && ok_y, f.to_string())
        }),
    ));
    let zero2 = GradedForm::zero(&spec, 2).unwrap();
    r.push(form_eq(&spec, "fd:2: dy∧dx = -dx∧dy", &spec.wedge(&dy, &dx).unwrap(), &dxdy.neg()));
    r.push(form_eq(&spec, "fd:2: dx∧dx = 0", &spec.wedge(&dx, &dx).unwrap(), &zero2));
    r.push(form_eq(&spec, "fd:2: dy∧dy = 0", &spec.wedge(&dy, &dy).unwrap(), &zero2));
    r.push(form_eq(&spec, "fd:2: x·dx∧dy = dx∧dy·(x + lam)", &spec.left_mult(&x(), &dxdy).unwrap(), &dxdy.right_mult(&(&x() + &lam))));
    r.push(form_eq(&spec, "fd:2: y·dx∧dy = dx∧dy·(y + mu)", &spec.left_mult(&y(), &dxdy).unwrap(), &dxdy.right_mult(&(&y() + &mu))));
    r.push(form_eq(&spec, "fd:2: d(dx) = 0", &spec.d1(&dx).unwrap(), &zero2));
    r.push(form_eq(&spec, "fd:2: d(dy) = 0", &spec.d1(&dy).unwrap(), &zero2));
    let g = random::polynomial(&mut rng, &[Var::X, Var::Y], 3);
    let dg = spec.d0(&g);
    r.push(form_eq(&spec, "fd:2: d(dx·g) = -dx∧dg", &spec.d1(&dx.right_mult(&g)).unwrap(), &spec.wedge(&dx, &dg).unwrap().neg()));
    let a = crate::rn::symbol('a');
    let shifted = shift(&shift(&a, 0, &lam), 1, &mu);
    r.push(form_eq(&spec, "fd:2: a·dx∧dy = dx∧dy·a(x+lam,y+mu)", &spec.left_mult(&a, &dxdy).unwrap(), &dxdy.right_mult(&shifted)));
    structural_checks(&mut r, &spec, &[Var::X, Var::Y], &mut rng);
    r
}

fn random_field(rng: &mut impl Rng, spec: &CalculusSpec, vars: &[Var]) -> GradedForm {
    GradedForm { degree: 1, coeffs: (0..spec.dimension()).map(|_| random::rational(rng, vars, 2)).collect() }
}

fn random_gamma(rng: &mut impl Rng, vars: &[Var]) -> GaugeTransformation {
    GaugeTransformation::new(random::rational(rng, vars, 2)).expect("nonzero")
}

/// Randomized gauge identities shared by both calculi.
fn gauge_random_checks(r: &mut Report, spec: &CalculusSpec, vars: &[Var], rng: &mut impl Rng) {
    let tag = &spec.name;
    let mut lemma_results: [Vec<(bool, String)>; 3] = Default::default();
    let mut invariance = Vec::new();
    for _ in 0..20 {
        let alpha = random_field(rng, spec, vars);
        let g = random_gamma(rng, vars);
        let psi = random::rational(rng, vars, 2);
        let detail = format!("alpha = {}, gamma = {}, psi = {psi}", spec.display(&alpha), g.gamma());
        let checks = gauge::verify_lemmas(spec, &alpha, &g, &psi).expect("Ω² present");
        for (slot, c) in lemma_results.iter_mut().zip(checks) {
            slot.push((c.pass, detail.clone()));
        }
        if spec.name == "jet:2" {
            let f = gauge::curvature(spec, &alpha).unwrap();
            let fg = gauge::curvature(spec, &gauge::gauge_transform(spec, &alpha, &g).unwrap()).unwrap();
            invariance.push((f == fg, detail));
        }
    }
    let [l1, l2, l3] = lemma_results;
    r.push(sampled(&format!("{tag}: F(α^γ) = γ⁻¹F(α)γ on 20 random (α, γ)"), l1));
    r.push(sampled(&format!("{tag}: ∇^γψ^γ = γ⁻¹∇ψ on 20 random (α, γ, ψ)"), l2));
    r.push(sampled(&format!("{tag}: ∇²ψ = Fψ on 20 random (α, ψ)"), l3));
    if !invariance.is_empty() {
        r.push(sampled(&format!("{tag}: F(α^γ) = F(α) on 20 random (α, γ)"), invariance));
    }
    r.push(sampled(
        &format!("{tag}: γ⁻¹dγ is flat for 20 random γ"),
        (0..20).map(|_| {
            let g = random_gamma(rng, vars);
            (gauge::is_flat(spec, &gauge::pure_gauge(spec, &g).unwrap()).unwrap(), g.gamma().to_string())
        }),
    ));
    r.push(sampled(
        &format!("{tag}: (α^γ1)^γ2 = α^(γ1γ2) on 10 random triples"),
        (0..10).map(|_| {
            let alpha = random_field(rng, spec, vars);
            let (g1, g2) = (random_gamma(rng, vars), random_gamma(rng, vars));
            let lhs = gauge::gauge_transform(spec, &gauge::gauge_transform(spec, &alpha, &g1).unwrap(), &g2).unwrap();
            let rhs = gauge::gauge_transform(spec, &alpha, &g1.compose(&g2)).unwrap();
            (lhs == rhs, format!("gamma1 = {}, gamma2 = {}", g1.gamma(), g2.gamma()))
        }),
    ));
    let zero = GradedForm::zero(spec, 1).unwrap();
    let trivial = gauge::verify_lemmas(spec, &zero, &GaugeTransformation::identity(), &x()).unwrap();
    r.push(Check::holds(format!("{tag}: lemmas at α = 0, γ = 1"), "three identities", trivial.iter().all(|c| c.pass)));
}

pub fn gauge_jet() -> Report {
    let mut r = Report::new("gauge-jet");
    let mut rng = random::rng(SEED + 3);
    match gauge::jet_symbolic_checks() {
        Ok(checks) => r.extend(checks),
        Err(e) => r.push(Check::new("symbolic checks", e.to_string(), "", false)),
    }
    match gauge::covd1_adjudication() {
        Ok((checks, notes)) => {
            r.extend(checks);
            for n in notes {
                r.note(n);
            }
        }
        Err(e) => r.push(Check::new("covd1 adjudication", e.to_string(), "", false)),
    }
    let spec = CalculusSpec::jet(2).expect("2-jet");
    let xinv = x().inv().unwrap();
    let flat = GradedForm { degree: 1, coeffs: vec![xinv.clone(), &Scalar::from_i64(-2) * &(&xinv * &xinv)] };
    r.push(Check::holds("jet:2: (a, b) = (1/x, -2/x^2) is flat", spec.display(&flat).to_string(), gauge::is_flat(&spec, &flat).unwrap()));
    let curved = GradedForm { degree: 1, coeffs: vec![x(), CoordFunction::zero()] };
    r.push(Check::holds("jet:2: (a, b) = (x, 0) is not flat", spec.display(&curved).to_string(), !gauge::is_flat(&spec, &curved).unwrap()));
    let gx = GaugeTransformation::new(x()).unwrap();
    r.push(form_eq(&spec, "jet:2: γ⁻¹dγ at γ = x", &gauge::pure_gauge(&spec, &gx).unwrap(), &flat));
    let zero = GradedForm::zero(&spec, 1).unwrap();
    r.push(form_eq(&spec, "jet:2: 0^γ at γ = x", &gauge::gauge_transform(&spec, &zero, &gx).unwrap(), &flat));
    let alpha = GradedForm { degree: 1, coeffs: vec![x(), &x() * &x()] };
    let constant = GaugeTransformation::new(Scalar::from_i64(5)).unwrap();
    r.push(form_eq(&spec, "jet:2: constant γ leaves α unchanged", &gauge::gauge_transform(&spec, &alpha, &constant).unwrap(), &alpha));
    gauge_random_checks(&mut r, &spec, &[Var::X], &mut rng);
    r
}

pub fn gauge_fd() -> Report {
    let mut r = Report::new("gauge-fd");
    let mut rng = random::rng(SEED + 4);
    match gauge::lattice_symbolic_checks() {
        Ok(checks) => r.extend(checks),
        Err(e) => r.push(Check::new("symbolic checks", e.to_string(), "", false)),
    }
    let spec = CalculusSpec::finite_difference_2d().expect("fd:2");
    let lam = Scalar::lambda();
    let gx = GaugeTransformation::new(x()).unwrap();
    let expected = GradedForm { degree: 1, coeffs: vec![(&x() + &lam).inv().unwrap(), CoordFunction::zero()] };
    r.push(form_eq(&spec, "fd:2: γ⁻¹dγ at γ = x", &gauge::pure_gauge(&spec, &gx).unwrap(), &expected));
    let alpha = GradedForm { degree: 1, coeffs: vec![y(), CoordFunction::zero()] };
    let f = gauge::curvature(&spec, &alpha).unwrap();
    r.push(form_eq(&spec, "fd:2: F(dx·y) = -dx∧dy", &f, &two_form(&spec, "dx^dy").neg()));
    let fg = gauge::curvature(&spec, &gauge::gauge_transform(&spec, &alpha, &gx).unwrap()).unwrap();
    r.push(form_eq(&spec, "fd:2: F(dx·y) after γ = x scales by x/(x + lam)", &fg, &f.right_mult(&(&x() / &(&x() + &lam)))));
    let zero = GradedForm::zero(&spec, 1).unwrap();
    let g = random_gamma(&mut rng, &[Var::X, Var::Y]);
    let z = gauge::curvature(&spec, &gauge::gauge_transform(&spec, &zero, &g).unwrap()).unwrap();
    r.push(form_eq(&spec, "fd:2: F(0^γ) = 0", &z, &GradedForm::zero(&spec, 2).unwrap()));
    r.push(sampled(
        "fd:2: F(α^γ) = F(α)·γ/γ(x+lam,y+mu) on 10 random (α, γ)",
        (0..10).map(|_| {
            let alpha = random_field(&mut rng, &spec, &[Var::X, Var::Y]);
            let g = random_gamma(&mut rng, &[Var::X, Var::Y]);
            let f = gauge::curvature(&spec, &alpha).unwrap();
            let fg = gauge::curvature(&spec, &gauge::gauge_transform(&spec, &alpha, &g).unwrap()).unwrap();
            let factor = g.gamma() / &shift(&shift(g.gamma(), 0, &lam), 1, &Scalar::mu());
            (fg == f.right_mult(&factor), g.gamma().to_string())
        }),
    ));
    gauge_random_checks(&mut r, &spec, &[Var::X, Var::Y], &mut rng);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope").is_none());
    }

    #[test]
    fn bralie_suite_passes() {
        let r = bralie();
        assert_eq!(r.checks.len(), 16);
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn all_is_deterministic() {
        let a = run_suite("all").unwrap();
        assert!(a.all_passed(), "{}", a.to_text());
        assert_eq!(a.to_json_string(), run_suite("all").unwrap().to_json_string());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 0), 1);
    }
}
