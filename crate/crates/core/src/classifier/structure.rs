use std::cmp::Ordering;
use std::fmt;

use super::ClassifyError;
use crate::polycert::{closest_to_zero_with_sign, sign_on_ray, RationalFunction, Ray, RaySign};
use crate::rational::{sign_of, Rational};
use crate::shiftcalc::{q_diagonal, QDiagonal};
use crate::weightspec::WeightSpec;

/// Comparison of `|β_n|` with `|β_{n+1}|`, i.e. the sign of `d_{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Lt,
    Eq,
    Gt,
}

impl Relation {
    fn from_sign(sign: Ordering) -> Self {
        match sign {
            Ordering::Greater => Relation::Lt,
            Ordering::Equal => Relation::Eq,
            Ordering::Less => Relation::Gt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Eq => "=",
            Relation::Gt => ">",
        }
    }
}

/// Shape of the modulus sequence along one tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    StrictIncrease,
    Constant(Rational),
    /// Nondecreasing with `|β_n| = |β_{n+1}|` exactly at the listed `n`.
    Increasing { equalities: Vec<i64> },
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::StrictIncrease => write!(f, "strictly increasing"),
            Shape::Constant(c) => write!(f, "constant {c}"),
            Shape::Increasing { equalities } => {
                let list: Vec<String> = equalities.iter().map(i64::to_string).collect();
                write!(f, "increasing, flat at n = {}", list.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureProfile {
    pub window_start: i64,
    pub window_end: i64,
    /// Relations for `n ≤ L - 2`.
    pub left_shape: Shape,
    /// Relations for `n = L - 1, …, R`.
    pub window_relations: Vec<Relation>,
    /// Relations for `n ≥ R + 1`.
    pub right_shape: Shape,
    /// Smallest `k` with `|β_k| = |β_{k+1}|` and strict increase before it.
    pub first_equality_index: Option<i64>,
}

impl StructureProfile {
    fn left_ray(&self) -> Ray {
        Ray::AtMost(self.window_start - 2)
    }

    pub fn relation(&self, n: i64) -> Relation {
        let tail = |shape: &Shape| match shape {
            Shape::StrictIncrease => Relation::Lt,
            Shape::Constant(_) => Relation::Eq,
            Shape::Increasing { equalities } if equalities.contains(&n) => Relation::Eq,
            Shape::Increasing { .. } => Relation::Lt,
        };
        if self.left_ray().contains(n) {
            tail(&self.left_shape)
        } else if n <= self.window_end {
            self.window_relations[(n - self.window_start + 1) as usize]
        } else {
            tail(&self.right_shape)
        }
    }

    pub fn is_globally_constant(&self) -> bool {
        matches!(self.left_shape, Shape::Constant(_))
            && matches!(self.right_shape, Shape::Constant(_))
            && self.window_relations.iter().all(|&r| r == Relation::Eq)
    }

    /// Indices `n ≥ from` where `|β_n| = |β_{n+1}|`, except that a constant
    /// right tail contributes only its first index.
    pub(crate) fn equality_candidates(&self, from: i64) -> Vec<i64> {
        let mut out = Vec::new();
        if let Shape::Increasing { equalities } = &self.left_shape {
            out.extend(equalities.iter().copied().filter(|&n| n >= from));
        }
        for n in (self.window_start - 1)..=self.window_end {
            if n >= from && self.relation(n) == Relation::Eq {
                out.push(n);
            }
        }
        match &self.right_shape {
            Shape::Constant(_) => out.push((self.window_end + 1).max(from)),
            Shape::Increasing { equalities } => out.extend(equalities.iter().copied().filter(|&n| n >= from)),
            Shape::StrictIncrease => {}
        }
        out
    }

    /// True when `|β_n| = |β_{n+1}|` for every `n ≥ from`.
    pub(crate) fn all_equal_from(&self, from: i64) -> bool {
        if !matches!(self.right_shape, Shape::Constant(_)) {
            return false;
        }
        let window_ok = (from.max(self.window_start - 1)..=self.window_end).all(|n| self.relation(n) == Relation::Eq);
        let left_ok = match &self.left_shape {
            _ if from > self.window_start - 2 => true,
            Shape::Constant(_) => true,
            Shape::StrictIncrease => false,
            Shape::Increasing { equalities } => (from..=self.window_start - 2).all(|n| equalities.contains(&n)),
        };
        window_ok && left_ok
    }

    /// First `n > after` with `|β_n| < |β_{n+1}|`.
    pub(crate) fn first_rise_after(&self, after: i64) -> Option<i64> {
        let mut n = after + 1;
        while n <= self.window_end {
            if self.relation(n) == Relation::Lt {
                return Some(n);
            }
            n += 1;
        }
        match &self.right_shape {
            Shape::Constant(_) => None,
            Shape::StrictIncrease => Some(n),
            Shape::Increasing { equalities } => (n..).find(|m| !equalities.contains(m)),
        }
    }
}

/// Ray-level relation functions: `rel(n) = d_{n+1}` as rational functions.
pub(crate) struct Relations {
    pub q: QDiagonal,
    left: RationalFunction,
    right: RationalFunction,
    left_ray: Ray,
    right_ray: Ray,
}

impl Relations {
    pub fn new(spec: &WeightSpec) -> Result<Self, ClassifyError> {
        let q = q_diagonal(spec)?;
        Ok(Relations {
            left: q.left_tail_form.shift_index(1),
            right: q.right_tail_form.shift_index(1),
            left_ray: Ray::AtMost(spec.window_start - 2),
            right_ray: Ray::AtLeast(spec.window_end() + 1),
            q,
        })
    }

    fn explicit_range(&self) -> std::ops::RangeInclusive<i64> {
        (self.q.window_start() - 1)..=self.q.window_end()
    }

    pub fn relation(&self, n: i64) -> Relation {
        Relation::from_sign(sign_of(&self.q.at(n + 1)))
    }

    /// Decreasing step of smallest `|n|`, ties toward negative.
    fn decrease_witness(&self) -> Result<Option<i64>, ClassifyError> {
        let mut candidates = Vec::new();
        candidates.extend(closest_to_zero_with_sign(&self.left, self.left_ray, Ordering::Less)?);
        candidates.extend(self.explicit_range().filter(|&n| self.relation(n) == Relation::Gt).min_by_key(|&n| (n.unsigned_abs(), n)));
        candidates.extend(closest_to_zero_with_sign(&self.right, self.right_ray, Ordering::Less)?);
        Ok(candidates.into_iter().min_by_key(|&n| (n.unsigned_abs(), n)))
    }

    fn shape(&self, f: &RationalFunction, ray: Ray, spec: &WeightSpec) -> Result<Shape, ClassifyError> {
        Ok(match sign_on_ray(f, ray)? {
            RaySign::IdenticallyZero => Shape::Constant(spec.eval_exact(ray.endpoint())?),
            RaySign::StrictlyPositive => Shape::StrictIncrease,
            RaySign::HasZeroAt { zeros, elsewhere: Ordering::Greater } => Shape::Increasing { equalities: zeros },
            other => unreachable!("nonnegative relations on a hyponormal tail, got {other:?}"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyponormalCheck {
    Hyponormal(StructureProfile),
    /// `|β_w| > |β_{w+1}|` at the witness `w`.
    NotHyponormal { witness: i64 },
}

pub(crate) fn profile(spec: &WeightSpec, rel: &Relations) -> Result<HyponormalCheck, ClassifyError> {
    if let Some(witness) = rel.decrease_witness()? {
        return Ok(HyponormalCheck::NotHyponormal { witness });
    }
    let left_shape = rel.shape(&rel.left, rel.left_ray, spec)?;
    let right_shape = rel.shape(&rel.right, rel.right_ray, spec)?;
    let window_relations: Vec<Relation> = rel.explicit_range().map(|n| rel.relation(n)).collect();
    let mut profile = StructureProfile {
        window_start: spec.window_start,
        window_end: spec.window_end(),
        left_shape,
        window_relations,
        right_shape,
        first_equality_index: None,
    };
    if !matches!(profile.left_shape, Shape::Constant(_)) {
        profile.first_equality_index = profile.equality_candidates(i64::MIN).first().copied();
    }
    Ok(HyponormalCheck::Hyponormal(profile))
}

pub fn check_hyponormal(spec: &WeightSpec) -> Result<HyponormalCheck, ClassifyError> {
    let rel = Relations::new(spec)?;
    profile(spec, &rel)
}
