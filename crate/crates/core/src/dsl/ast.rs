#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Ring(RingExpr),
    Ideal(IdealExpr),
    MultSet(MultExpr),
    Element(ElemExpr),
    Hom(HomExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Zmod(u64),
    Product(Box<RingExpr>, Box<RingExpr>),
    PolyQuot { base: Box<RingExpr>, var: String, modulus: Vec<Term> },
    Quot(Box<RingExpr>, IdealExpr),
    Amalg(Box<RingExpr>, HomExpr, IdealExpr),
    Sub(Box<RingExpr>, Vec<ElemExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealExpr {
    pub gens: Vec<ElemExpr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultExpr {
    pub gens: Vec<ElemExpr>,
    pub include_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemExpr {
    Poly(Vec<Term>),
    Pair(Box<ElemExpr>, Box<ElemExpr>),
}

/// `coeff * var^exp`; a constant has no variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: u64,
    pub var: Option<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomExpr {
    Id,
    Reduce(Box<RingExpr>),
    Table(Box<RingExpr>, Vec<u64>),
}
