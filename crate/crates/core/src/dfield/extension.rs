use super::poly::{self, eval_in};
use super::{derive_base, DifferentialField, Field, RatFunc, Rational, RationalFunctions};
use crate::error::{Error, Result};

/// Element of `E = F[x]/(m)`: coordinates in the power basis `1, θ, …, θ^{d-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtElem {
    coeffs: Vec<RatFunc>,
}

impl ExtElem {
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_zero)
    }

    /// `coeffs[0]` when every higher coordinate vanishes.
    pub fn rational_part(&self) -> Option<RatFunc> {
        if self.coeffs[1..].iter().all(RatFunc::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

/// A finite Galois extension `E = F[x]/(m)` of `F = Q(t)`, together with an
/// explicit list of its `F`-automorphisms, each given by the image of the
/// generator `θ` (identity first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField {
    generator: String,
    minpoly: Vec<RatFunc>,
    automorphisms: Vec<ExtElem>,
    // composition[i][j] = index of σ_i ∘ σ_j
    composition: Vec<Vec<usize>>,
    generator_derivative: ExtElem,
}

impl ExtensionField {
    /// Presents `F[x]/(m)` with only the identity automorphism attached.
    ///
    /// `minpoly` lists coefficients lowest degree first; it is made monic and
    /// must be squarefree of degree at least one. Irreducibility is not
    /// checked; a zero divisor surfaces later as [`Error::NotInvertible`].
    pub fn new(generator: &str, minpoly: Vec<RatFunc>) -> Result<Self> {
        let f = RationalFunctions;
        let m = poly::trim(&f, minpoly);
        if m.len() < 2 {
            return Err(Error::InvalidExtension(
                "minimal polynomial must have degree at least 1".into(),
            ));
        }
        let m = poly::monic(&f, &m);
        let dm = poly::formal_derivative(&f, &m);
        if poly::gcd(&f, &m, &dm).len() != 1 {
            return Err(Error::InvalidExtension(
                "minimal polynomial is not squarefree".into(),
            ));
        }
        let d = m.len() - 1;
        let mut field = ExtensionField {
            generator: generator.to_string(),
            minpoly: m,
            automorphisms: Vec::new(),
            composition: vec![vec![0]],
            generator_derivative: ExtElem {
                coeffs: vec![RatFunc::zero(); d],
            },
        };
        field.automorphisms.push(field.generator());
        field.generator_derivative = field.compute_generator_derivative()?;
        Ok(field)
    }

    /// `F` itself as the degree-one extension `F[x]/(x)`. The generator has
    /// an empty name and cannot be referenced in expressions.
    pub fn trivial() -> Self {
        Self::new("", vec![RatFunc::zero(), RatFunc::one()]).expect("x is squarefree")
    }

    /// `F(√a)` with generator `name` and automorphisms `θ ↦ θ, θ ↦ -θ`.
    pub fn quadratic(name: &str, a: RatFunc) -> Result<Self> {
        let field = Self::new(name, vec![-&a, RatFunc::zero(), RatFunc::one()])?;
        let theta = field.generator();
        let conj = field.neg(&theta);
        field.with_automorphisms(vec![theta, conj])
    }

    /// Attaches the automorphism group, given by generator images, after
    /// checking the Galois condition: exactly `d` distinct roots of `m`,
    /// identity first, closed under composition.
    pub fn with_automorphisms(mut self, images: Vec<ExtElem>) -> Result<Self> {
        let d = self.degree();
        if images.len() != d {
            return Err(Error::InvalidExtension(format!(
                "a degree-{d} Galois extension needs exactly {d} automorphisms, got {}",
                images.len()
            )));
        }
        if images.iter().any(|r| r.coeffs.len() != d) {
            return Err(Error::Dimension("automorphism image has wrong length".into()));
        }
        if images[0] != self.generator() {
            return Err(Error::InvalidExtension(
                "the first automorphism must be the identity".into(),
            ));
        }
        for (i, r) in images.iter().enumerate() {
            if !self.is_zero(&self.eval_minpoly(r)) {
                return Err(Error::InvalidExtension(format!(
                    "automorphism {i}: image {} is not a root of the minimal polynomial",
                    self.render(r)
                )));
            }
            if images[..i].contains(r) {
                return Err(Error::InvalidExtension(format!(
                    "automorphism {i} duplicates an earlier image"
                )));
            }
        }
        self.automorphisms = images;
        let mut table = vec![vec![0; d]; d];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let image = self.apply_automorphism(i, &self.automorphisms[j].clone())?;
                *slot = self
                    .automorphisms
                    .iter()
                    .position(|r| *r == image)
                    .ok_or_else(|| {
                        Error::InvalidExtension(format!(
                            "automorphism list is not closed under composition (σ{i}∘σ{j})"
                        ))
                    })?;
            }
        }
        self.composition = table;
        Ok(self)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn generator_name(&self) -> &str {
        &self.generator
    }

    /// Monic minimal polynomial, lowest degree first.
    pub fn minpoly(&self) -> &[RatFunc] {
        &self.minpoly
    }

    /// Generator images, identity first.
    pub fn automorphisms(&self) -> &[ExtElem] {
        &self.automorphisms
    }

    /// Whether the attached automorphism list has the full order `d`.
    pub fn is_galois(&self) -> bool {
        self.automorphisms.len() == self.degree()
    }

    /// Index of `σ_i ∘ σ_j`.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.composition[i][j]
    }

    pub fn generator(&self) -> ExtElem {
        self.reduce(vec![RatFunc::zero(), RatFunc::one()])
    }

    pub fn embed(&self, f: &RatFunc) -> ExtElem {
        let mut coeffs = vec![RatFunc::zero(); self.degree()];
        coeffs[0] = f.clone();
        ExtElem { coeffs }
    }

    /// Element from power-basis coordinates of any length, reduced modulo `m`.
    pub fn element(&self, coeffs: Vec<RatFunc>) -> ExtElem {
        self.reduce(coeffs)
    }

    fn reduce(&self, p: Vec<RatFunc>) -> ExtElem {
        let f = RationalFunctions;
        let d = self.degree();
        let mut r = if p.len() > d {
            poly::divrem(&f, &p, &self.minpoly).expect("monic modulus").1
        } else {
            poly::trim(&f, p)
        };
        r.resize(d, RatFunc::zero());
        ExtElem { coeffs: r }
    }

    fn eval_minpoly(&self, x: &ExtElem) -> ExtElem {
        eval_in::<RationalFunctions, Self>(self, |c| self.embed(c), &self.minpoly, x)
    }

    /// `θ' = -(Σ m_i' θ^i) / m_x(θ)`.
    fn compute_generator_derivative(&self) -> Result<ExtElem> {
        let f = RationalFunctions;
        let theta = self.generator();
        let dcoeffs: Vec<RatFunc> = self.minpoly.iter().map(derive_base).collect();
        let numer = eval_in::<RationalFunctions, Self>(self, |c| self.embed(c), &dcoeffs, &theta);
        let mx = poly::formal_derivative(&f, &self.minpoly);
        let denom = eval_in::<RationalFunctions, Self>(self, |c| self.embed(c), &mx, &theta);
        let inv = self.inv(&denom).map_err(|_| {
            Error::InvalidExtension("m_x(θ) is not invertible; minimal polynomial not squarefree".into())
        })?;
        Ok(self.neg(&self.mul(&numer, &inv)))
    }

    pub fn generator_derivative(&self) -> &ExtElem {
        &self.generator_derivative
    }

    /// The ring homomorphism fixing `F` and sending `θ` to the image with the
    /// given index.
    pub fn apply_automorphism(&self, index: usize, e: &ExtElem) -> Result<ExtElem> {
        let image = self
            .automorphisms
            .get(index)
            .ok_or(Error::AutomorphismIndex {
                index,
                order: self.automorphisms.len(),
            })?;
        if index == 0 {
            return Ok(e.clone());
        }
        Ok(eval_in::<RationalFunctions, Self>(
            self,
            |c| self.embed(c),
            &e.coeffs,
            image,
        ))
    }
}

impl Field for ExtensionField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        self.embed(&RatFunc::zero())
    }

    fn one(&self) -> ExtElem {
        self.embed(&RatFunc::one())
    }

    fn from_rational(&self, q: &Rational) -> ExtElem {
        self.embed(&RatFunc::constant(q.clone()))
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        if let Some(c) = a.rational_part() {
            return ExtElem {
                coeffs: b.coeffs.iter().map(|y| &c * y).collect(),
            };
        }
        if let Some(c) = b.rational_part() {
            return ExtElem {
                coeffs: a.coeffs.iter().map(|x| x * &c).collect(),
            };
        }
        self.reduce(poly::mul(&RationalFunctions, &a.coeffs, &b.coeffs))
    }

    fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = a.rational_part() {
            return Ok(self.embed(&c.recip()?));
        }
        let f = RationalFunctions;
        let rep = poly::trim(&f, a.coeffs.clone());
        let (g, s, _) = poly::ext_gcd(&f, &rep, &self.minpoly);
        if g.len() != 1 {
            return Err(Error::NotInvertible);
        }
        Ok(self.reduce(s))
    }

    fn render(&self, a: &ExtElem) -> String {
        let mut out = String::new();
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = if i == 0 {
                c.to_string()
            } else {
                let power = if i == 1 {
                    self.generator.clone()
                } else {
                    format!("{}^{i}", self.generator)
                };
                let cs = c.to_string();
                if c.is_one() {
                    power
                } else if cs == "-1" {
                    format!("-{power}")
                } else if cs.contains(['/', ' ']) {
                    format!("({cs})*{power}")
                } else {
                    format!("{cs}*{power}")
                }
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl DifferentialField for ExtensionField {
    /// `(Σ a_i θ^i)' = Σ a_i' θ^i + (Σ i a_i θ^{i-1}) θ'`.
    fn derive(&self, e: &ExtElem) -> ExtElem {
        let own = ExtElem {
            coeffs: e.coeffs.iter().map(derive_base).collect(),
        };
        let f = RationalFunctions;
        let formal = poly::formal_derivative(&f, &poly::trim(&f, e.coeffs.clone()));
        if formal.is_empty() {
            return own;
        }
        let formal = self.reduce(formal);
        self.add(&own, &self.mul(&formal, &self.generator_derivative))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfield::Polynomial;

    fn t() -> RatFunc {
        RatFunc::t()
    }

    fn half_over_t() -> RatFunc {
        RatFunc::new(Polynomial::from_ints(&[1]), Polynomial::from_ints(&[0, 2])).unwrap()
    }

    fn sqrt_t() -> ExtensionField {
        ExtensionField::quadratic("s", t()).unwrap()
    }

    #[test]
    fn generator_derivative_sqrt_t() {
        let e = sqrt_t();
        // θ' = 1/(2θ) = θ/(2t)
        assert_eq!(e.generator_derivative().coeffs(), &[RatFunc::zero(), half_over_t()]);
        assert_eq!(e.derive(&e.generator()), *e.generator_derivative());
    }

    #[test]
    fn generator_derivative_constant_minpoly() {
        let e = ExtensionField::quadratic("r", RatFunc::from_int(2)).unwrap();
        assert!(e.generator_derivative().is_zero());
    }

    #[test]
    fn generator_derivative_cube_root() {
        // m = x^3 - t: θ' = 1/(3θ^2) = θ/(3t) since θ·θ^2 = t
        let e = ExtensionField::new("c", vec![-&t(), RatFunc::zero(), RatFunc::zero(), RatFunc::one()]).unwrap();
        let third_over_t = RatFunc::new(Polynomial::from_ints(&[1]), Polynomial::from_ints(&[0, 3])).unwrap();
        assert_eq!(
            e.generator_derivative().coeffs(),
            &[RatFunc::zero(), third_over_t, RatFunc::zero()]
        );
        let theta = e.generator();
        let sq = e.mul(&theta, &theta);
        assert_eq!(e.mul(&theta, &sq), e.embed(&t()));
    }

    #[test]
    fn derive_square_matches_base() {
        let e = sqrt_t();
        let s = e.generator();
        let s2 = e.mul(&s, &s);
        assert_eq!(s2.rational_part(), Some(t()));
        assert_eq!(e.derive(&s2), e.one());
        let f = RatFunc::new(Polynomial::from_ints(&[1, 0, 1]), Polynomial::from_ints(&[-1, 1])).unwrap();
        assert_eq!(e.derive(&e.embed(&f)), e.embed(&f.derivative()));
    }

    #[test]
    fn inverses() {
        let e = sqrt_t();
        let s = e.generator();
        assert_eq!(e.inv(&e.one()).unwrap(), e.one());
        assert_eq!(e.inv(&s).unwrap(), e.element(vec![RatFunc::zero(), t().recip().unwrap()]));
        // 1/(1+s) = (1-s)/(1-t)
        let one_plus_s = e.add(&e.one(), &s);
        let inv = e.inv(&one_plus_s).unwrap();
        let expected = e.mul(&e.sub(&e.one(), &s), &e.embed(&(&RatFunc::one() - &t()).recip().unwrap()));
        assert_eq!(inv, expected);
        assert_eq!(e.inv(&e.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn zero_divisor_is_reported() {
        // x^2 - 1 is squarefree but reducible
        let e = ExtensionField::new("u", vec![RatFunc::from_int(-1), RatFunc::zero(), RatFunc::one()]).unwrap();
        let u_minus_1 = e.sub(&e.generator(), &e.one());
        assert_eq!(e.inv(&u_minus_1), Err(Error::NotInvertible));
    }

    #[test]
    fn automorphisms_act() {
        let e = sqrt_t();
        let a = e.element(vec![t(), RatFunc::from_int(3)]);
        assert_eq!(e.apply_automorphism(0, &a).unwrap(), a);
        let conj = e.apply_automorphism(1, &a).unwrap();
        assert_eq!(conj, e.element(vec![t(), RatFunc::from_int(-3)]));
        assert_eq!(e.apply_automorphism(1, &conj).unwrap(), a);
        assert_eq!(e.compose(1, 1), 0);
        assert!(matches!(e.apply_automorphism(2, &a), Err(Error::AutomorphismIndex { .. })));
    }

    #[test]
    fn galois_validation() {
        let base = ExtensionField::new("s", vec![-&t(), RatFunc::zero(), RatFunc::one()]).unwrap();
        let s = base.generator();
        let three = vec![s.clone(), base.neg(&s), base.one()];
        assert!(base.clone().with_automorphisms(three).is_err());
        let not_root = vec![s.clone(), base.add(&s, &base.one())];
        assert!(base.clone().with_automorphisms(not_root).is_err());
        let dup = vec![s.clone(), s.clone()];
        assert!(base.clone().with_automorphisms(dup).is_err());
        let not_identity_first = vec![base.neg(&s), s.clone()];
        assert!(base.with_automorphisms(not_identity_first).is_err());
    }

    #[test]
    fn non_squarefree_rejected() {
        // x^2 - 2x + 1 = (x-1)^2
        let m = vec![RatFunc::one(), RatFunc::from_int(-2), RatFunc::one()];
        assert!(matches!(ExtensionField::new("x", m), Err(Error::InvalidExtension(_))));
    }

    #[test]
    fn trivial_extension() {
        let e = ExtensionField::trivial();
        assert_eq!(e.degree(), 1);
        assert!(e.is_galois());
        let a = e.embed(&t());
        assert_eq!(e.derive(&a), e.one());
        assert_eq!(a.rational_part(), Some(t()));
    }

    #[test]
    fn render() {
        let e = sqrt_t();
        assert_eq!(e.render(&e.zero()), "0");
        assert_eq!(e.render(&e.generator_derivative().clone()), "(1/(2*t))*s");
        let a = e.element(vec![t(), RatFunc::from_int(-1)]);
        assert_eq!(e.render(&a), "t - s");
    }
}
