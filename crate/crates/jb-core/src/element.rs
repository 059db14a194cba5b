use nalgebra::DVector;

/// Which half of the pair an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// An element of V^+ or V^- in flat coordinates against the family basis.
///
/// dim V^+ = dim V^- for all supported families, so one coordinate length
/// serves both sides; the `side` tag keeps the parity bookkeeping honest.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub coords: DVector<f64>,
    pub side: Side,
}

impl Element {
    pub fn new(coords: DVector<f64>, side: Side) -> Self {
        Element { coords, side }
    }

    pub fn plus(coords: DVector<f64>) -> Self {
        Element::new(coords, Side::Plus)
    }

    pub fn minus(coords: DVector<f64>) -> Self {
        Element::new(coords, Side::Minus)
    }

    pub fn zero(n: usize, side: Side) -> Self {
        Element::new(DVector::zeros(n), side)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }

    pub fn scale(&self, c: f64) -> Element {
        Element::new(&self.coords * c, self.side)
    }

    pub fn add(&self, other: &Element) -> Element {
        debug_assert_eq!(self.side, other.side);
        Element::new(&self.coords + &other.coords, self.side)
    }

    pub fn sub(&self, other: &Element) -> Element {
        debug_assert_eq!(self.side, other.side);
        Element::new(&self.coords - &other.coords, self.side)
    }
}
