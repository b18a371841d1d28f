//! Dihedral subgroups of Aut(O) = N(O)/Q^x given by explicit presentations.

use std::collections::BTreeSet;
use std::fmt;

use exact_math::{fmt_rat, int, parse_rat, BigInt, Rat};
use num_traits::{One, ToPrimitive, Zero};
use quaternion_orders::{find_trace_zero, OrderDoc, QuatElt, QuatOrder};
use serde::{Deserialize, Serialize};

use crate::residue::{int_coords, mat_mul, IntOrder, Mat4};
use crate::{ActionError, Result};

/// The class [b] in Aut(O) of an element b of O normalizing O.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutClass {
    rep: QuatElt,
    order: QuatOrder,
}

impl AutClass {
    pub fn new(order: &QuatOrder, b: &QuatElt) -> Result<Self> {
        if !order.is_in_normalizer(b)? {
            return Err(ActionError::Relation(format!("{b} does not normalize O")));
        }
        let rep = order.primitive_multiple(b)?;
        Ok(AutClass { rep, order: order.clone() })
    }

    pub fn rep(&self) -> &QuatElt {
        &self.rep
    }

    pub fn order(&self) -> &QuatOrder {
        &self.order
    }

    /// Matrix over Z of x -> b^-1 x b in the order basis.
    pub fn matrix(&self) -> Mat4 {
        let io = IntOrder::new(&self.order);
        let c = int_coords(&self.order, &self.rep).expect("primitive representative lies in O");
        io.right_conjugation(&c).expect("representative normalizes O")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DihedralKind {
    D1,
    D2,
    D3,
    D4,
    D6,
}

impl DihedralKind {
    pub const ALL: [DihedralKind; 5] = [Self::D1, Self::D2, Self::D3, Self::D4, Self::D6];

    pub fn group_order(self) -> usize {
        match self {
            Self::D1 => 2,
            Self::D2 => 4,
            Self::D3 => 6,
            Self::D4 => 8,
            Self::D6 => 12,
        }
    }
}

impl fmt::Display for DihedralKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for DihedralKind {
    type Err = ActionError;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| ActionError::Domain(format!("unknown dihedral kind {s:?}")))
    }
}

/// A validated dihedral action. `elements` is the presentation: [b] for D1, [i, j] for
/// D2 and D4, [omega, j] for D3 and D6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralAction {
    kind: DihedralKind,
    order: QuatOrder,
    elements: Vec<QuatElt>,
    generators: Vec<AutClass>,
    m: i64,
    n: Option<i64>,
}

fn scalar_square(x: &QuatElt) -> Option<Rat> {
    x.mul(x).as_scalar()
}

fn integer_square(x: &QuatElt, name: &str) -> Result<i64> {
    scalar_square(x)
        .filter(|s| s.is_integer() && x.as_scalar().is_none())
        .and_then(|s| s.to_integer().to_i64())
        .ok_or_else(|| ActionError::Relation(format!("{name}^2 is an integer")))
}

fn divides_disc(m: i64, disc: &BigInt, name: &str) -> Result<()> {
    if m == 0 || !(disc % BigInt::from(m.abs())).is_zero() {
        return Err(ActionError::Relation(format!("{name}^2 = {m} divides disc(B) = {disc}")));
    }
    Ok(())
}

fn anticommute(x: &QuatElt, y: &QuatElt) -> bool {
    x.mul(y).add(&y.mul(x)).is_zero()
}

impl DihedralAction {
    pub fn kind(&self) -> DihedralKind {
        self.kind
    }

    pub fn order(&self) -> &QuatOrder {
        &self.order
    }

    pub fn elements(&self) -> &[QuatElt] {
        &self.elements
    }

    pub fn generators(&self) -> &[AutClass] {
        &self.generators
    }

    /// Square of b for D1, of i for D2, of j for D3, D4 and D6.
    pub fn m(&self) -> i64 {
        self.m
    }

    /// Square of j for D2 (where `m` is the square of i).
    pub fn n(&self) -> Option<i64> {
        self.n
    }

    /// Generator matrices x -> g^-1 x g.
    pub fn matrices(&self) -> Vec<Mat4> {
        self.generators.iter().map(AutClass::matrix).collect()
    }

    /// The image of the group in GL_4(Z), closed under multiplication.
    pub fn group_matrices(&self) -> Vec<Mat4> {
        let gens = self.matrices();
        let mut seen: BTreeSet<Mat4> = BTreeSet::new();
        let mut frontier = vec![crate::residue::identity()];
        seen.insert(frontier[0]);
        while let Some(g) = frontier.pop() {
            for h in &gens {
                let p = mat_mul(&g, h);
                // Finite subgroups of Aut(O) have order at most 12; stop early otherwise.
                if seen.insert(p) && seen.len() <= 24 {
                    frontier.push(p);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn to_doc(&self) -> ActionDoc {
        let coords = |x: &QuatElt| -> [String; 4] { std::array::from_fn(|k| fmt_rat(&x.coords()[k])) };
        ActionDoc {
            kind: self.kind,
            order: self.order.to_doc(),
            generators: self.generators.iter().map(|g| coords(&g.rep)).collect(),
            presentation: self.elements.iter().map(coords).collect(),
            params: ActionParams { m: self.m, n: self.n },
        }
    }

    pub fn from_doc(doc: &ActionDoc) -> Result<Self> {
        let order = QuatOrder::from_doc(&doc.order)?;
        let alg = order.algebra().clone();
        let elements = doc
            .presentation
            .iter()
            .map(|c| {
                let r: std::result::Result<Vec<Rat>, _> = c.iter().map(|s| parse_rat(s)).collect();
                r.map(|v| alg.elt_rat([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| ActionError::Document(e.to_string()))?;
        let action = build_dihedral_action(&order, doc.kind, &elements)?;
        if action.m != doc.params.m || action.n != doc.params.n {
            return Err(ActionError::Document("params disagree with the presentation".into()));
        }
        Ok(action)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ActionDoc = serde_json::from_str(s).map_err(|e| ActionError::Document(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionParams {
    pub m: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    pub kind: DihedralKind,
    pub order: OrderDoc,
    pub generators: Vec<[String; 4]>,
    pub presentation: Vec<[String; 4]>,
    pub params: ActionParams,
}

/// Validates a presentation and builds the action. The parameters (m, n) are: D1 m = b^2;
/// D2 m = i^2, n = j^2; D4 m = j^2; D3 and D6 m = j^2.
pub fn build_dihedral_action(o: &QuatOrder, kind: DihedralKind, elements: &[QuatElt]) -> Result<DihedralAction> {
    let expected = if kind == DihedralKind::D1 { 1 } else { 2 };
    if elements.len() != expected {
        return Err(ActionError::Domain(format!("{kind} needs {expected} presentation elements")));
    }
    for (k, x) in elements.iter().enumerate() {
        if x.algebra() != o.algebra() {
            return Err(ActionError::Domain("presentation element from another algebra".into()));
        }
        if !o.contains(x) {
            return Err(ActionError::Relation(format!("presentation element {k} lies in O")));
        }
    }
    let disc = o.algebra().discriminant();
    let one = o.algebra().one();
    let (gens, m, n) = match kind {
        DihedralKind::D1 => {
            let b = &elements[0];
            let m = integer_square(b, "b")?;
            if m == 1 {
                return Err(ActionError::Relation("b^2 != 1".into()));
            }
            divides_disc(m, &disc, "b")?;
            (vec![b.clone()], m, None)
        }
        DihedralKind::D2 | DihedralKind::D4 => {
            let (i, j) = (&elements[0], &elements[1]);
            let mi = integer_square(i, "i")?;
            let mj = integer_square(j, "j")?;
            if !anticommute(i, j) {
                return Err(ActionError::Relation("ij = -ji".into()));
            }
            divides_disc(mj, &disc, "j")?;
            if kind == DihedralKind::D2 {
                divides_disc(mi, &disc, "i")?;
                (vec![i.clone(), j.clone()], mi, Some(mj))
            } else {
                if mi != -1 {
                    return Err(ActionError::Relation("i^2 = -1".into()));
                }
                (vec![one.add(i), j.clone()], mj, None)
            }
        }
        DihedralKind::D3 | DihedralKind::D6 => {
            let (w, j) = (&elements[0], &elements[1]);
            if !w.mul(w).add(w).add(&one).is_zero() {
                return Err(ActionError::Relation("omega^2 + omega + 1 = 0".into()));
            }
            let mj = integer_square(j, "j")?;
            divides_disc(mj, &disc, "j")?;
            let rhs = j.mul(&one.neg().sub(w));
            if w.mul(j) != rhs {
                return Err(ActionError::Relation("omega j = j (-1 - omega)".into()));
            }
            let g = if kind == DihedralKind::D3 { one.add(w) } else { one.sub(w) };
            (vec![g, j.clone()], mj, None)
        }
    };
    let generators = gens
        .iter()
        .map(|g| AutClass::new(o, g))
        .collect::<Result<Vec<_>>>()?;
    let action = DihedralAction {
        kind,
        order: o.clone(),
        elements: elements.to_vec(),
        generators,
        m,
        n,
    };
    let size = action.group_matrices().len();
    if size != kind.group_order() {
        return Err(ActionError::Relation(format!(
            "generated group has order {size}, expected {}",
            kind.group_order()
        )));
    }
    Ok(action)
}

fn signed_divisors(disc: &BigInt) -> Vec<i64> {
    let d = disc.to_u64().expect("small discriminant");
    let mut out = Vec::new();
    for k in exact_math::integer::divisors(d) {
        let k = k as i64;
        out.push(-k);
        if k != 1 {
            out.push(k);
        }
    }
    out.sort_by_key(|m| (m.abs(), -m.signum()));
    out
}

fn first_anticommuting(o: &QuatOrder, x: &QuatElt, height: i64) -> Option<QuatElt> {
    let disc = o.algebra().discriminant();
    for n in signed_divisors(&disc) {
        if let Some(y) = find_trace_zero(o, n, height).into_iter().find(|y| anticommute(x, y)) {
            return Some(y);
        }
    }
    None
}

/// An element omega of O with omega^2 + omega + 1 = 0, from s = 2 omega + 1 with s^2 = -3.
pub fn find_omega(o: &QuatOrder, height: i64) -> Option<QuatElt> {
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let one = o.algebra().one();
    find_trace_zero(o, -3, height)
        .into_iter()
        .map(|s| s.sub(&one).scale(&half))
        .find(|w| o.contains(w))
}

/// Searches the coordinate box of the given height for a presentation of `kind`.
pub fn search_action(o: &QuatOrder, kind: DihedralKind, height: i64) -> Result<DihedralAction> {
    let disc = o.algebra().discriminant();
    let not_found = || ActionError::NotFound(format!("{kind} within height {height}"));
    match kind {
        DihedralKind::D1 => {
            for m in signed_divisors(&disc) {
                for b in find_trace_zero(o, m, height) {
                    if let Ok(a) = build_dihedral_action(o, kind, &[b]) {
                        return Ok(a);
                    }
                }
            }
            Err(not_found())
        }
        DihedralKind::D2 => {
            for m in signed_divisors(&disc) {
                for i in find_trace_zero(o, m, height) {
                    if let Some(j) = first_anticommuting(o, &i, height) {
                        if let Ok(a) = build_dihedral_action(o, kind, &[i.clone(), j]) {
                            return Ok(a);
                        }
                    }
                }
            }
            Err(not_found())
        }
        DihedralKind::D4 => {
            for i in find_trace_zero(o, -1, height) {
                if let Some(j) = first_anticommuting(o, &i, height) {
                    if let Ok(a) = build_dihedral_action(o, kind, &[i.clone(), j]) {
                        return Ok(a);
                    }
                }
            }
            Err(not_found())
        }
        DihedralKind::D3 | DihedralKind::D6 => {
            let half = Rat::new(BigInt::one(), BigInt::from(2));
            let one = o.algebra().one();
            for s in find_trace_zero(o, -3, height) {
                let w = s.sub(&one).scale(&half);
                if !o.contains(&w) {
                    continue;
                }
                if let Some(j) = first_anticommuting(o, &s, height) {
                    if let Ok(a) = build_dihedral_action(o, kind, &[w, j]) {
                        return Ok(a);
                    }
                }
            }
            Err(not_found())
        }
    }
}

/// The maximal order of (-1, 6) with basis 1, (1+i+ij)/2, (1-i+ij)/2, (j+ij)/2.
pub fn disc6_order() -> QuatOrder {
    let alg = quaternion_orders::QuatAlgebra::from_ints(-1, 6);
    let h = Rat::new(BigInt::one(), BigInt::from(2));
    let (z, o) = (int(0), int(1));
    let basis = [
        [o.clone(), z.clone(), z.clone(), z.clone()],
        [h.clone(), h.clone(), z.clone(), h.clone()],
        [h.clone(), -h.clone(), z.clone(), h.clone()],
        [z.clone(), z, h.clone(), h],
    ];
    QuatOrder::new(alg, basis).expect("valid order")
}

/// A maximal order containing Z<i, j> for integral a, b.
pub fn maximal_order(a: i64, b: i64) -> Result<QuatOrder> {
    let alg = quaternion_orders::QuatAlgebra::from_ints(a, b);
    Ok(QuatOrder::standard(&alg)?.saturate_to_maximal())
}

/// The three presentations on (-1, 6) used throughout: D1 with b = i, D2 with
/// (i, (j+ij)/2) of squares (-1, 3), and D4 with (i, j).
pub fn disc6_actions() -> Vec<DihedralAction> {
    let o = disc6_order();
    let alg = o.algebra().clone();
    let i = alg.i();
    let j = alg.j();
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let j3 = j.add(&alg.k()).scale(&half);
    vec![
        build_dihedral_action(&o, DihedralKind::D1, &[i.clone()]).expect("D1"),
        build_dihedral_action(&o, DihedralKind::D2, &[i.clone(), j3]).expect("D2"),
        build_dihedral_action(&o, DihedralKind::D4, &[i, j]).expect("D4"),
    ]
}

/// Squares of the presentation elements: D1 [b^2], D2/D4 [i^2, j^2], D3/D6 [j^2].
pub fn presentation_squares(a: &DihedralAction) -> Vec<i64> {
    match a.kind {
        DihedralKind::D1 => vec![a.m],
        DihedralKind::D2 => vec![a.m, a.n.expect("D2 has n")],
        DihedralKind::D4 => vec![-1, a.m],
        DihedralKind::D3 | DihedralKind::D6 => vec![a.m],
    }
}
