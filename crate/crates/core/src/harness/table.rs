//! Quasi-isolated 2-block data of E6(q) recomputed from the root system.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicOrder;
use crate::error::{Error, Result};
use crate::grouptool::examples::{cyclic, direct_product, symmetric};
use crate::grouptool::{wreath_product, Fingerprint, Perm, SmallGroup};
use crate::rootsys::{classify_subsystem, RootSystem, SubSystem};
use crate::semisimple::{
    classify_torsion, normalize_twist, rational_type, relative_weyl_block, s0, verify_minimal_d_split,
    DualTorusElement,
};
use crate::torus::{e_of, polynomial_order};
use crate::weyl::{longest_element, WeylElement, WeylGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementClass {
    /// Centralizer `A2+A2+A2`, represented by `s₀`.
    A2Cubed,
    /// Centralizer `D4` with `|A(s)| = 3`.
    D4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistKind {
    Untwisted,
    /// Order-3 element of `W(s)` stabilizing `Δ(s)`.
    Triality,
    /// Maps `s` to `s⁻¹`.
    Ennola,
}

/// Reference relative Weyl groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelativeWeylLabel {
    A2WrC3,
    A2,
    D4Triality,
    B3,
    G2,
    A2xA1,
    A1WrC3,
    A1,
    A2xA2,
}

impl RelativeWeylLabel {
    pub fn name(&self) -> &'static str {
        match self {
            RelativeWeylLabel::A2WrC3 => "A2 wr 3",
            RelativeWeylLabel::A2 => "A2",
            RelativeWeylLabel::D4Triality => "D4.3",
            RelativeWeylLabel::B3 => "B3",
            RelativeWeylLabel::G2 => "G2",
            RelativeWeylLabel::A2xA1 => "A2xA1",
            RelativeWeylLabel::A1WrC3 => "A1 wr 3",
            RelativeWeylLabel::A1 => "A1",
            RelativeWeylLabel::A2xA2 => "A2xA2",
        }
    }

    pub fn reference(&self) -> Result<SmallGroup> {
        match self {
            RelativeWeylLabel::A2WrC3 => wreath_product(&symmetric(3), 3),
            RelativeWeylLabel::A2 => Ok(symmetric(3)),
            RelativeWeylLabel::D4Triality => d4_triality_group(),
            RelativeWeylLabel::B3 => weyl_small_group("B3"),
            RelativeWeylLabel::G2 => weyl_small_group("G2"),
            RelativeWeylLabel::A2xA1 => Ok(direct_product(&symmetric(3), &cyclic(2))),
            RelativeWeylLabel::A1WrC3 => wreath_product(&cyclic(2), 3),
            RelativeWeylLabel::A1 => Ok(cyclic(2)),
            RelativeWeylLabel::A2xA2 => Ok(direct_product(&symmetric(3), &symmetric(3))),
        }
    }
}

fn to_perm(w: &WeylElement) -> Perm {
    w.perm().iter().map(|&x| u32::from(x)).collect()
}

/// Weyl group as a permutation group on its roots.
pub fn weyl_small_group(label: &str) -> Result<SmallGroup> {
    let phi = RootSystem::shared(label)?;
    let gens: Vec<Perm> = (0..phi.rank()).map(|i| to_perm(&WeylElement::simple_reflection(&phi, i))).collect();
    SmallGroup::generate(&gens, 1_000_000)
}

/// `W(D4) ⋊ C3` with the triality diagram symmetry.
pub fn d4_triality_group() -> Result<SmallGroup> {
    let phi = RootSystem::shared("D4")?;
    let mut gens: Vec<Perm> = (0..4).map(|i| to_perm(&WeylElement::simple_reflection(&phi, i))).collect();
    let tri = phi
        .diagram_automorphisms()
        .into_iter()
        .find(|s| s.iter().enumerate().any(|(i, &j)| j != i && s[j] != i))
        .ok_or(Error::Unsupported("D4".into(), "no triality"))?;
    gens.push(to_perm(&WeylElement::diagram_symmetry(&phi, &tri)?));
    SmallGroup::generate(&gens, 10_000)
}

/// Expected values of one row.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1Row {
    pub number: u8,
    pub class: ElementClass,
    pub twist: TwistKind,
    pub e: u8,
    pub centralizer_type: &'static str,
    pub rational_centralizer: &'static str,
    pub rational_component_order: usize,
    pub levi: &'static str,
    pub levi_torus: &'static str,
    pub centralizer_in_levi: &'static str,
    pub centralizer_in_levi_components: usize,
    pub relative_weyl: RelativeWeylLabel,
    pub relative_weyl_order: usize,
}

impl Table1Row {
    /// Row applies to `q`: `q mod 3` fixes the twist family and `q mod 4` fixes `e`.
    pub fn is_live(&self, q: &BigInt) -> bool {
        let r3 = q.mod_floor(&BigInt::from(3));
        let family = match self.twist {
            TwistKind::Untwisted | TwistKind::Triality => r3 == BigInt::from(1),
            TwistKind::Ennola => r3 == BigInt::from(2),
        };
        family && e_of(q) == self.e
    }
}

macro_rules! row {
    ($n:expr, $cl:ident, $tw:ident, $e:expr, $ct:expr, $rc:expr, $ra:expr, $l:expr, $lt:expr, $cl_l:expr, $cl_c:expr, $rw:ident, $ro:expr) => {
        Table1Row {
            number: $n,
            class: ElementClass::$cl,
            twist: TwistKind::$tw,
            e: $e,
            centralizer_type: $ct,
            rational_centralizer: $rc,
            rational_component_order: $ra,
            levi: $l,
            levi_torus: $lt,
            centralizer_in_levi: $cl_l,
            centralizer_in_levi_components: $cl_c,
            relative_weyl: RelativeWeylLabel::$rw,
            relative_weyl_order: $ro,
        }
    };
}

/// The twelve rows with `λ = 1`.
pub fn table1_rows() -> Vec<Table1Row> {
    vec![
        row!(1, A2Cubed, Untwisted, 1, "A2+A2+A2", "A2(q)^3", 3, "Φ1^6", "Φ1^6", "Φ1^6", 1, A2WrC3, 648),
        row!(2, A2Cubed, Triality, 1, "A2+A2+A2", "A2(q^3)", 3, "Φ1^2.A2(q)^2", "Φ1^2", "Φ1^2.Φ3^2", 3, A2, 6),
        row!(3, D4, Untwisted, 1, "D4", "Φ1^2.D4(q)", 3, "Φ1^6", "Φ1^6", "Φ1^6", 1, D4Triality, 576),
        row!(4, D4, Ennola, 1, "D4", "Φ1.Φ2.2D4(q)", 1, "Φ1^4.A1(q)^2", "Φ1^4", "Φ1^4.Φ2^2", 1, B3, 48),
        row!(5, D4, Triality, 1, "D4", "Φ3.3D4(q)", 3, "Φ1^2.A2(q)^2", "Φ1^2", "Φ1^2.Φ3^2", 3, G2, 12),
        row!(6, A2Cubed, Ennola, 1, "A2+A2+A2", "A2(q^2).2A2(q)", 1, "Φ1^3.A1(q)^3", "Φ1^3", "Φ1^3.Φ2^3", 1, A2xA1, 12),
        row!(7, A2Cubed, Untwisted, 2, "A2+A2+A2", "A2(q)^3", 3, "Φ1^2.Φ2^3.A1(q)", "Φ1^2.Φ2^3", "Φ1^3.Φ2^3", 1, A1WrC3, 24),
        row!(8, A2Cubed, Triality, 2, "A2+A2+A2", "A2(q^3)", 3, "Φ2.A2(q^2).A1(q)", "Φ2", "Φ1.Φ2.Φ3.Φ6", 3, A1, 2),
        row!(9, D4, Untwisted, 2, "D4", "Φ1^2.D4(q)", 3, "Φ1^2.Φ2^4", "Φ1^2.Φ2^4", "Φ1^2.Φ2^4", 1, D4Triality, 576),
        row!(10, D4, Ennola, 2, "D4", "Φ1.Φ2.2D4(q)", 1, "Φ1^2.Φ2^4", "Φ1^2.Φ2^4", "Φ1^2.Φ2^4", 1, B3, 48),
        row!(11, D4, Triality, 2, "D4", "Φ3.3D4(q)", 3, "Φ2^2.A2(q^2)", "Φ2^2", "Φ2^2.Φ3.Φ6", 3, G2, 12),
        row!(12, A2Cubed, Ennola, 2, "A2+A2+A2", "A2(q^2).2A2(q)", 1, "Φ1^2.Φ2^4", "Φ1^2.Φ2^4", "Φ1^2.Φ2^4", 1, A2xA2, 36),
    ]
}

/// Quantities recomputed for one row.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1Computed {
    pub representative: Vec<i64>,
    pub centralizer_type: String,
    pub component_order: u128,
    pub rational_centralizer: String,
    pub rational_component_order: usize,
    pub twist_word: Vec<usize>,
    pub levi: String,
    pub levi_roots: String,
    pub levi_torus: String,
    pub levi_is_minimal: bool,
    pub centralizer_in_levi: String,
    pub centralizer_in_levi_components: usize,
    pub relative_weyl_order: usize,
    pub relative_weyl_fingerprint: Fingerprint,
    pub fingerprint_matches: bool,
}

/// Per-row comparison.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1Check {
    pub row: u8,
    pub computed: Table1Computed,
    pub mismatches: Vec<String>,
}

impl Table1Check {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Representative of the D4 class: first 3-torsion point with centralizer `D4` and `|A(s)| = 3`.
pub fn d4_representative(phi: &RootSystem) -> Result<DualTorusElement> {
    classify_torsion(phi, 3)?
        .into_iter()
        .find(|c| c.centralizer.label == "D4" && c.centralizer.component_order == 3)
        .map(|c| c.representative)
        .ok_or(Error::LemmaViolation("no D4 class with |A(s)| = 3".into()))
}

/// Shared data for one element class.
struct ClassData {
    s: DualTorusElement,
    sub: SubSystem,
    component_order: u128,
    /// Elements of `W(s)` that preserve the positive roots of `Φ(s)`.
    complement: Vec<WeylElement>,
}

fn class_data(weyl: &WeylGroup, class: ElementClass) -> Result<ClassData> {
    let phi = weyl.root_system();
    let s = match class {
        ElementClass::A2Cubed => s0(phi)?,
        ElementClass::D4 => d4_representative(phi)?,
    };
    let sub = classify_subsystem(phi, &s.root_indices(phi))?;
    let pos: Vec<usize> = sub.positive_roots(phi);
    let stab = s.stabilizer(weyl);
    let complement: Vec<WeylElement> =
        stab.iter().map(|&i| weyl.elements()[i].clone()).filter(|w| w.image_set(&pos) == pos).collect();
    let component_order = (stab.len() as u128) / sub.label().weyl_order();
    Ok(ClassData { s, sub, component_order, complement })
}

/// Longest element of the reflection subgroup of `sub`.
fn subsystem_longest(phi: &RootSystem, sub: &SubSystem) -> WeylElement {
    let mut w = WeylElement::identity(phi);
    'outer: loop {
        for &b in &sub.base {
            if phi.is_positive(w.apply(b)) {
                w = w.compose(phi, &WeylElement::reflection(phi, b));
                continue 'outer;
            }
        }
        return w;
    }
}

fn base_twist(weyl: &WeylGroup, data: &ClassData, kind: TwistKind) -> Result<WeylElement> {
    let phi = weyl.root_system();
    match kind {
        TwistKind::Untwisted => Ok(WeylElement::identity(phi)),
        TwistKind::Triality => data
            .complement
            .iter()
            .find(|w| w.order() == 3)
            .cloned()
            .ok_or(Error::LemmaViolation("no order-3 element stabilizing Δ(s)".into())),
        TwistKind::Ennola => {
            let inv = data.s.inverse();
            let all: Vec<usize> = (0..phi.rank()).collect();
            let w0 = longest_element(phi, &all);
            if data.s.act(phi, &w0) == inv {
                return Ok(w0);
            }
            weyl.elements()
                .iter()
                .find(|w| data.s.act(phi, w) == inv)
                .cloned()
                .ok_or(Error::LemmaViolation("s is not conjugate to its inverse".into()))
        }
    }
}

fn expect<T: PartialEq + std::fmt::Display>(out: &mut Vec<String>, what: &str, got: T, want: T) {
    if got != want {
        out.push(format!("{what}: computed {got}, expected {want}"));
    }
}

/// Recompute one row from the root system.
pub fn check_row(weyl: &WeylGroup, row: &Table1Row) -> Result<Table1Check> {
    let phi: &Arc<RootSystem> = weyl.root_system();
    let data = class_data(weyl, row.class)?;
    let m0 = base_twist(weyl, &data, row.twist)?;
    let m1 = normalize_twist(phi, &data.sub, &m0)?;
    let md = if row.e == 1 { m1.clone() } else { subsystem_longest(phi, &data.sub).compose(phi, &m1) };
    let d = u32::from(row.e);

    let rational = rational_type(phi, &data.sub, &m1)?;
    let rational_component_order = data.complement.iter().filter(|a| a.compose(phi, &m1) == m1.compose(phi, a)).count();

    let split = verify_minimal_d_split(phi, &data.s, &md, d, None)?;
    let lsub = classify_subsystem(phi, &split.levi_roots)?;
    let levi = rational_type(phi, &lsub, &md)?;
    let rel = relative_weyl_block(weyl, &data.s, &split.levi_roots, &md)?;
    let full = polynomial_order(md.matrix())?;
    let reference = row.relative_weyl.reference()?;
    let fingerprint = rel.fingerprint();
    let fingerprint_matches = fingerprint == reference.fingerprint();

    let computed = Table1Computed {
        representative: data.s.pairing().to_vec(),
        centralizer_type: data.sub.label().to_string(),
        component_order: data.component_order,
        rational_centralizer: rational.to_string(),
        rational_component_order,
        twist_word: md.reduced_word(phi),
        levi: levi.to_string(),
        levi_roots: lsub.label().to_string(),
        levi_torus: split.torus_part.to_string(),
        levi_is_minimal: split.passed(),
        centralizer_in_levi: full.to_string(),
        centralizer_in_levi_components: rel.levi_part_order,
        relative_weyl_order: rel.order(),
        relative_weyl_fingerprint: fingerprint,
        fingerprint_matches,
    };
    let mut mm = Vec::new();
    expect(&mut mm, "centralizer type", computed.centralizer_type.as_str(), row.centralizer_type);
    expect(&mut mm, "|A(s)|", computed.component_order, 3);
    expect(&mut mm, "rational centralizer", computed.rational_centralizer.as_str(), row.rational_centralizer);
    expect(&mut mm, "|A(s)^F|", computed.rational_component_order, row.rational_component_order);
    expect(&mut mm, "L^F", computed.levi.as_str(), row.levi);
    let want_torus: CyclotomicOrder = row.levi_torus.parse()?;
    expect(&mut mm, "L^F torus", split.torus_part.clone(), want_torus);
    let want_cl: CyclotomicOrder = row.centralizer_in_levi.parse()?;
    expect(&mut mm, "C_L*(s)^F", full, want_cl);
    expect(&mut mm, "C_L*(s) components", computed.centralizer_in_levi_components, row.centralizer_in_levi_components);
    expect(&mut mm, "relative Weyl order", computed.relative_weyl_order, row.relative_weyl_order);
    if !computed.levi_is_minimal {
        mm.push("Levi is not minimal d-split for s".into());
    }
    if !fingerprint_matches {
        mm.push(format!("relative Weyl group is not {}", row.relative_weyl.name()));
    }
    Ok(Table1Check { row: row.number, computed, mismatches: mm })
}

/// Check every row live at `q`; other rows are returned as `None`.
pub fn verify_table1(q: &BigInt) -> Result<Vec<(Table1Row, Option<Table1Check>)>> {
    let weyl = WeylGroup::shared("E6")?;
    let mut out = Vec::new();
    for row in table1_rows() {
        let check = if row.is_live(q) { Some(check_row(&weyl, &row)?) } else { None };
        out.push((row, check));
    }
    Ok(out)
}

/// Roots of the Levi subsystem `A2⁽¹⁾ ∪ A2⁽²⁾` as root indices.
pub fn levi_a2_a2(phi: &RootSystem) -> Result<Vec<usize>> {
    let gens = [[0, 1, 0, 1, 1, 1], [1, 0, 1, 1, 1, 0], [0, 0, 1, 1, 1, 1], [1, 1, 1, 1, 0, 0]];
    let idx: Vec<usize> = gens
        .iter()
        .map(|g| phi.index_of(g).ok_or(Error::NotClosed(format!("{g:?} is not a root"))))
        .collect::<Result<_>>()?;
    let roots = crate::rootsys::reflection_closure(phi, &idx);
    let set: HashSet<usize> = roots.iter().copied().collect();
    if set.len() != 12 {
        return Err(Error::LemmaViolation(format!("closure has {} roots, expected 12", set.len())));
    }
    Ok(roots)
}
