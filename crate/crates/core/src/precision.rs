/// Working precision for computations that offer an extended-precision path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    /// IEEE binary64.
    #[default]
    Double,
    /// MPFR floats with the given significand width.
    Bits(u32),
}

impl Precision {
    /// `bits <= 53` selects double precision.
    pub fn from_bits(bits: u32) -> Self {
        if bits <= 53 {
            Precision::Double
        } else {
            Precision::Bits(bits)
        }
    }

    pub fn bits(&self) -> u32 {
        match self {
            Precision::Double => 53,
            Precision::Bits(b) => *b,
        }
    }

    pub fn doubled(&self) -> Self {
        Precision::Bits(2 * self.bits())
    }
}
