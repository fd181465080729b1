//! Symbolic front-door adjustment formula
//! `Σ_z P(z|x) Σ_{x′} P(y|x′,z) P(x′)`.
//!
//! Value symbols are node names in lowercase. A primed symbol (`x′`) is a
//! separate summation variable ranging over the same node as its unprimed
//! counterpart.
//!
//! The JSON form mirrors the AST. Each node is an object with a `kind` tag:
//!
//! ```text
//! {"kind":"sum","bound":[Symbol...],"body":Node}
//! {"kind":"product","factors":[Node...]}
//! {"kind":"prob","target":[Symbol...],"given":[Symbol...]}
//! Symbol = {"name":"x","primed":true}
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::admg::Admg;
use crate::varset::VarSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EstimandError {
    #[error("the adjustment set is empty")]
    EmptyZ,
    #[error("X, Y and Z must be pairwise disjoint")]
    OverlappingSets,
    #[error("X and Y must be nonempty")]
    EmptyTreatmentOrOutcome,
    #[error("node names `{0}` and `{1}` map to the same value symbol")]
    SymbolCollision(String, String),
    #[error("bound variable `{0}` is bound twice or also occurs free")]
    BadBinding(String),
    #[error("malformed estimand JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub primed: bool,
}

impl Symbol {
    pub fn plain(name: impl Into<String>) -> Self {
        Symbol {
            name: name.into(),
            primed: false,
        }
    }

    pub fn primed(name: impl Into<String>) -> Self {
        Symbol {
            name: name.into(),
            primed: true,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if self.primed {
            f.write_str("′")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Estimand {
    Sum {
        bound: Vec<Symbol>,
        body: Box<Estimand>,
    },
    Product {
        factors: Vec<Estimand>,
    },
    Prob {
        target: Vec<Symbol>,
        given: Vec<Symbol>,
    },
}

/// Lowercased value symbols for the members of `set`, in index order.
fn symbols(g: &Admg, set: &VarSet) -> Vec<Symbol> {
    set.iter()
        .map(|v| Symbol::plain(g.name(v).to_lowercase()))
        .collect()
}

/// Fails if two node names in `set` lowercase to the same symbol.
pub fn check_symbol_collisions(g: &Admg, set: &VarSet) -> Result<(), EstimandError> {
    let mut seen: HashMap<String, &str> = HashMap::new();
    for v in set.iter() {
        let name = g.name(v);
        if let Some(prev) = seen.insert(name.to_lowercase(), name) {
            return Err(EstimandError::SymbolCollision(
                prev.to_string(),
                name.to_string(),
            ));
        }
    }
    Ok(())
}

/// Front-door adjustment formula for `P(y | do(x))` with adjustment set `z`.
pub fn fd_estimand(
    g: &Admg,
    x: &VarSet,
    y: &VarSet,
    z: &VarSet,
) -> Result<Estimand, EstimandError> {
    if x.is_empty() || y.is_empty() {
        return Err(EstimandError::EmptyTreatmentOrOutcome);
    }
    if !x.is_disjoint(y) || !x.is_disjoint(z) || !y.is_disjoint(z) {
        return Err(EstimandError::OverlappingSets);
    }
    if z.is_empty() {
        return Err(EstimandError::EmptyZ);
    }
    check_symbol_collisions(g, &x.union(y).union(z))?;

    let (xs, ys, zs) = (symbols(g, x), symbols(g, y), symbols(g, z));
    let xp: Vec<Symbol> = xs.iter().map(|s| Symbol::primed(s.name.clone())).collect();
    let mut y_given = xp.clone();
    y_given.extend(zs.iter().cloned());

    let inner = Estimand::Sum {
        bound: xp.clone(),
        body: Box::new(Estimand::Product {
            factors: vec![
                Estimand::Prob {
                    target: ys,
                    given: y_given,
                },
                Estimand::Prob {
                    target: xp,
                    given: Vec::new(),
                },
            ],
        }),
    };
    let e = Estimand::Sum {
        bound: zs.clone(),
        body: Box::new(Estimand::Product {
            factors: vec![
                Estimand::Prob {
                    target: zs,
                    given: xs,
                },
                inner,
            ],
        }),
    };
    e.validate()?;
    Ok(e)
}

fn join(symbols: &[Symbol]) -> String {
    symbols
        .iter()
        .map(Symbol::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl Estimand {
    /// Text rendering, e.g. `Σ_z P(z|x) Σ_{x′} P(y|x′,z) P(x′)`.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out);
        out
    }

    fn write_text(&self, out: &mut String) {
        match self {
            Estimand::Sum { bound, body } => {
                out.push_str("Σ_");
                let sub = join(bound);
                if bound.len() == 1 && sub.chars().count() == 1 {
                    out.push_str(&sub);
                } else {
                    out.push('{');
                    out.push_str(&sub);
                    out.push('}');
                }
                out.push(' ');
                body.write_text(out);
            }
            Estimand::Product { factors } if factors.is_empty() => out.push('1'),
            Estimand::Product { factors } => {
                for (i, f) in factors.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    let wrap = matches!(f, Estimand::Sum { .. }) && i + 1 < factors.len();
                    if wrap {
                        out.push('(');
                    }
                    f.write_text(out);
                    if wrap {
                        out.push(')');
                    }
                }
            }
            Estimand::Prob { target, given } => {
                out.push_str("P(");
                out.push_str(&join(target));
                if !given.is_empty() {
                    out.push('|');
                    out.push_str(&join(given));
                }
                out.push(')');
            }
        }
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string(self).expect("estimand serializes")
    }

    pub fn parse_json(text: &str) -> Result<Estimand, EstimandError> {
        let e: Estimand =
            serde_json::from_str(text).map_err(|e| EstimandError::Json(e.to_string()))?;
        e.validate()?;
        Ok(e)
    }

    /// Bound variables must be distinct and must not occur free.
    pub fn validate(&self) -> Result<(), EstimandError> {
        let mut bound = Vec::new();
        self.collect_bound(&mut bound);
        let mut seen = HashSet::new();
        for s in &bound {
            if !seen.insert(s) {
                return Err(EstimandError::BadBinding(s.to_string()));
            }
        }
        let mut free = HashSet::new();
        self.collect_free(&mut Vec::new(), &mut free);
        if let Some(s) = bound.iter().find(|s| free.contains(*s)) {
            return Err(EstimandError::BadBinding(s.to_string()));
        }
        Ok(())
    }

    fn collect_bound<'a>(&'a self, out: &mut Vec<&'a Symbol>) {
        match self {
            Estimand::Sum { bound, body } => {
                out.extend(bound.iter());
                body.collect_bound(out);
            }
            Estimand::Product { factors } => factors.iter().for_each(|f| f.collect_bound(out)),
            Estimand::Prob { .. } => {}
        }
    }

    fn collect_free<'a>(&'a self, scope: &mut Vec<&'a Symbol>, out: &mut HashSet<&'a Symbol>) {
        match self {
            Estimand::Sum { bound, body } => {
                let depth = scope.len();
                scope.extend(bound.iter());
                body.collect_free(scope, out);
                scope.truncate(depth);
            }
            Estimand::Product { factors } => {
                factors.iter().for_each(|f| f.collect_free(scope, out))
            }
            Estimand::Prob { target, given } => {
                out.extend(target.iter().chain(given).filter(|s| !scope.contains(s)));
            }
        }
    }

    /// Numeric value under a discrete joint distribution over the observed
    /// variables. `assignment` fixes the free symbols.
    ///
    /// Returns NaN if a conditional probability has a zero-mass condition.
    pub fn evaluate(&self, joint: &DiscreteJoint, assignment: &HashMap<Symbol, usize>) -> f64 {
        match self {
            Estimand::Sum { bound, body } => {
                let cards: Vec<usize> = bound.iter().map(|s| joint.cardinality(&s.name)).collect();
                let mut env = assignment.clone();
                let mut total = 0.0;
                for values in product_space(&cards) {
                    for (s, &v) in bound.iter().zip(&values) {
                        env.insert(s.clone(), v);
                    }
                    total += body.evaluate(joint, &env);
                }
                total
            }
            Estimand::Product { factors } => factors
                .iter()
                .map(|f| f.evaluate(joint, assignment))
                .product(),
            Estimand::Prob { target, given } => {
                let fix = |syms: &[Symbol]| -> Vec<(usize, usize)> {
                    syms.iter()
                        .map(|s| (joint.index_of(&s.name), assignment[s]))
                        .collect()
                };
                let cond = fix(given);
                let mut both = cond.clone();
                both.extend(fix(target));
                joint.marginal(&both) / joint.marginal(&cond)
            }
        }
    }
}

impl fmt::Display for Estimand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

fn product_space(cards: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &c in cards {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..c).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Joint probability table over named discrete variables, stored row-major
/// with the first variable varying slowest.
#[derive(Debug, Clone)]
pub struct DiscreteJoint {
    names: Vec<String>,
    cards: Vec<usize>,
    probs: Vec<f64>,
}

impl DiscreteJoint {
    /// Builds the table by evaluating `p` on every joint assignment.
    pub fn from_fn(vars: &[(&str, usize)], p: impl Fn(&[usize]) -> f64) -> Self {
        let cards: Vec<usize> = vars.iter().map(|&(_, c)| c).collect();
        let probs = product_space(&cards).iter().map(|vals| p(vals)).collect();
        DiscreteJoint {
            names: vars.iter().map(|&(n, _)| n.to_string()).collect(),
            cards,
            probs,
        }
    }

    pub fn index_of(&self, name: &str) -> usize {
        self.names
            .iter()
            .position(|n| n == name)
            .unwrap_or_else(|| panic!("unknown variable `{name}`"))
    }

    pub fn cardinality(&self, name: &str) -> usize {
        self.cards[self.index_of(name)]
    }

    /// Probability that each listed variable takes the listed value.
    pub fn marginal(&self, fixed: &[(usize, usize)]) -> f64 {
        let cards = &self.cards;
        let mut total = 0.0;
        for (row, values) in product_space(cards).iter().enumerate() {
            if fixed.iter().all(|&(var, val)| values[var] == val) {
                total += self.probs[row];
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{canon, set};

    #[test]
    fn canonical_formula() {
        let g = canon();
        let e = fd_estimand(&g, &set(&g, "X"), &set(&g, "Y"), &set(&g, "Z")).unwrap();
        assert_eq!(e.render_text(), "Σ_z P(z|x) Σ_{x′} P(y|x′,z) P(x′)");
        assert_eq!(e.to_string(), e.render_text());
    }

    #[test]
    fn multivariate_sets() {
        let g = Admg::build::<&str>(&["X", "A", "B", "Y"], &[], &[]).unwrap();
        let e = fd_estimand(&g, &set(&g, "X"), &set(&g, "Y"), &set(&g, "A,B")).unwrap();
        assert_eq!(e.render_text(), "Σ_{a,b} P(a,b|x) Σ_{x′} P(y|x′,a,b) P(x′)");
    }

    #[test]
    fn binding_order_is_z_then_x_prime() {
        let g = canon();
        let e = fd_estimand(&g, &set(&g, "X"), &set(&g, "Y"), &set(&g, "Z")).unwrap();
        let Estimand::Sum { bound, body } = &e else {
            panic!("outer sum")
        };
        assert_eq!(bound, &[Symbol::plain("z")]);
        let Estimand::Product { factors } = body.as_ref() else {
            panic!("product")
        };
        let Estimand::Sum { bound, .. } = &factors[1] else {
            panic!("inner sum")
        };
        assert_eq!(bound, &[Symbol::primed("x")]);
    }

    #[test]
    fn empty_product_is_one() {
        assert_eq!(Estimand::Product { factors: vec![] }.render_text(), "1");
    }

    #[test]
    fn errors() {
        let g = canon();
        assert_eq!(
            fd_estimand(&g, &set(&g, "X"), &set(&g, "Y"), &VarSet::new()),
            Err(EstimandError::EmptyZ)
        );
        assert_eq!(
            fd_estimand(&g, &set(&g, "X"), &set(&g, "X"), &set(&g, "Z")),
            Err(EstimandError::OverlappingSets)
        );
        let g = Admg::build::<&str>(&["X", "Y", "z", "Z"], &[], &[]).unwrap();
        assert!(matches!(
            fd_estimand(&g, &set(&g, "X"), &set(&g, "Y"), &set(&g, "z,Z")),
            Err(EstimandError::SymbolCollision(_, _))
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = canon();
        let e = fd_estimand(&g, &set(&g, "X"), &set(&g, "Y"), &set(&g, "Z")).unwrap();
        let json = e.render_json();
        assert!(json.starts_with(r#"{"kind":"sum","bound":[{"name":"z","primed":false}]"#));
        assert_eq!(Estimand::parse_json(&json).unwrap(), e);
    }

    #[test]
    fn validation_rejects_rebinding() {
        let bad = Estimand::Sum {
            bound: vec![Symbol::plain("x")],
            body: Box::new(Estimand::Sum {
                bound: vec![Symbol::plain("x")],
                body: Box::new(Estimand::Prob {
                    target: vec![Symbol::plain("x")],
                    given: vec![],
                }),
            }),
        };
        assert!(matches!(bad.validate(), Err(EstimandError::BadBinding(_))));
        assert!(Estimand::parse_json(&bad.render_json()).is_err());
    }

    #[test]
    fn nested_sum_in_product_is_parenthesized() {
        let sum = Estimand::Sum {
            bound: vec![Symbol::plain("a")],
            body: Box::new(Estimand::Prob {
                target: vec![Symbol::plain("a")],
                given: vec![],
            }),
        };
        let p = Estimand::Product {
            factors: vec![
                sum.clone(),
                Estimand::Prob {
                    target: vec![Symbol::plain("b")],
                    given: vec![],
                },
            ],
        };
        assert_eq!(p.render_text(), "(Σ_a P(a)) P(b)");
    }

    #[test]
    fn evaluate_marginal_sums_to_one() {
        let joint = DiscreteJoint::from_fn(&[("a", 2), ("b", 3)], |v| {
            [0.1, 0.2, 0.1, 0.3, 0.2, 0.1][v[0] * 3 + v[1]]
        });
        let e = Estimand::Sum {
            bound: vec![Symbol::plain("a"), Symbol::plain("b")],
            body: Box::new(Estimand::Prob {
                target: vec![Symbol::plain("a"), Symbol::plain("b")],
                given: vec![],
            }),
        };
        assert!((e.evaluate(&joint, &HashMap::new()) - 1.0).abs() < 1e-12);
    }
}
