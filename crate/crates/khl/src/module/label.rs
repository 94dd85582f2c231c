use std::fmt;

/// Structured basis label. Constructions compose (powers of sums of powers,
/// tensor factors, simplicial levels), so identity and display both need the
/// full history of how a basis vector was produced.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// Anonymous generator `e_i`.
    E(usize),
    /// Symmetric or divided monomial: weakly increasing input positions.
    Multi(Vec<usize>),
    /// Exterior monomial: strictly increasing input positions.
    Wedge(Vec<usize>),
    /// Tensor word: arbitrary input positions in order.
    Word(Vec<usize>),
    /// Component `part` of a direct sum, wrapping the inner label.
    Part(usize, Box<Label>),
    /// Binary tensor of labels (left ⊗ right).
    Tens(Box<Label>, Box<Label>),
    /// Degeneracy class in a levelwise construction: the `inner` generator
    /// of level `level`, indexed by the ascending step set of a surjection.
    Level {
        level: usize,
        steps: Vec<usize>,
        inner: usize,
    },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(v: &[usize], sep: &str) -> String {
            v.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(sep)
        }
        match self {
            Label::E(i) => write!(f, "e{i}"),
            Label::Multi(v) => write!(f, "{{{}}}", join(v, ",")),
            Label::Wedge(v) => write!(f, "({})", join(v, "^")),
            Label::Word(v) => write!(f, "[{}]", join(v, ",")),
            Label::Part(k, inner) => write!(f, "in{k}({inner})"),
            Label::Tens(a, b) => write!(f, "{a}*{b}"),
            Label::Level {
                level,
                steps,
                inner,
            } => write!(f, "lv{level}<{}>:{inner}", join(steps, ",")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_compact() {
        let l = Label::Tens(
            Box::new(Label::Wedge(vec![0, 2])),
            Box::new(Label::Multi(vec![1, 1])),
        );
        assert_eq!(l.to_string(), "(0^2)*{1,1}");
        let lv = Label::Level {
            level: 2,
            steps: vec![1, 3],
            inner: 0,
        };
        assert_eq!(lv.to_string(), "lv2<1,3>:0");
    }
}
