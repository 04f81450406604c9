use std::fmt;

use crate::error::{Error, Result};
use crate::set::FiniteSet;

/// A coloring of the positions `0..len` with colors `0..palette`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    palette: u32,
    values: Vec<u32>,
}

impl Coloring {
    pub fn new(palette: u32, values: Vec<u32>) -> Result<Self> {
        if palette == 0 && !values.is_empty() {
            return Err(Error::invalid("palette must be at least 1 for a nonempty coloring"));
        }
        if let Some((pos, &v)) = values.iter().enumerate().find(|(_, &v)| v >= palette) {
            return Err(Error::invalid(format!(
                "color {v} at position {pos} is outside palette {palette}"
            )));
        }
        Ok(Coloring { palette, values })
    }

    /// Builds a coloring from a string of decimal digits, e.g. `"0011"`.
    pub fn from_digits(palette: u32, digits: &str) -> Result<Self> {
        let values = digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::invalid(format!("not a digit: {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Coloring::new(palette, values)
    }

    pub fn empty(palette: u32) -> Self {
        Coloring {
            palette,
            values: Vec::new(),
        }
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, pos: usize) -> Option<u32> {
        self.values.get(pos).copied()
    }

    /// The positions carrying color `color`.
    pub fn color_class(&self, color: u32) -> Result<FiniteSet> {
        if color >= self.palette {
            return Err(Error::invalid(format!(
                "color {color} outside palette {}",
                self.palette
            )));
        }
        Ok(FiniteSet::from_sorted_unchecked(
            self.values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == color)
                .map(|(i, _)| i as u64)
                .collect(),
        ))
    }

    /// All color classes in color order.
    pub fn color_classes(&self) -> Vec<FiniteSet> {
        let mut classes = vec![Vec::new(); self.palette as usize];
        for (i, &v) in self.values.iter().enumerate() {
            classes[v as usize].push(i as u64);
        }
        classes
            .into_iter()
            .map(FiniteSet::from_sorted_unchecked)
            .collect()
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.palette > 10 { " " } else { "" };
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_of_c1() {
        let c = Coloring::from_digits(2, "0011001100110011").unwrap();
        assert_eq!(
            c.color_class(0).unwrap().as_slice(),
            &[0, 1, 4, 5, 8, 9, 12, 13]
        );
        assert_eq!(
            c.color_class(1).unwrap().as_slice(),
            &[2, 3, 6, 7, 10, 11, 14, 15]
        );
    }

    #[test]
    fn single_color() {
        let c = Coloring::from_digits(1, "000").unwrap();
        assert_eq!(c.color_class(0).unwrap().as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn rejects_out_of_palette() {
        let c = Coloring::from_digits(2, "01").unwrap();
        assert!(matches!(c.color_class(2), Err(Error::InvalidArgument(_))));
        assert!(Coloring::from_digits(2, "012").is_err());
        assert!(Coloring::new(0, vec![0]).is_err());
        assert!(Coloring::new(0, vec![]).is_ok());
    }
}
