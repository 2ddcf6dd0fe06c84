//! Finite filtrations `0 = C_0 ⊆ C_1 ⊆ ... ⊆ C_n = C` and the check that matched
//! ghosts compose to a map killed by `Ext(C, -)`.

use crate::error::{Error, Result};
use crate::linalg::Mat;

use super::ext::ext_on_map;
use super::module::{Module, ModuleMap};

#[derive(Clone, Debug)]
pub struct FiltrationChain {
    pub object: Module,
    /// `steps[k]` is the inclusion `C_k -> C_{k+1}` (with `C_0 = 0`).
    pub steps: Vec<ModuleMap>,
    /// `factors[k] = C_{k+1} / C_k`.
    pub factors: Vec<Module>,
}

/// Outcome of [`filtration_ghost_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationVerdict {
    /// Precondition failed at the given step: `Ext(factor, f) ≠ 0`.
    PreconditionFailed { step: usize },
    /// Precondition held; `vanishes` records whether `Ext(C, f_n ... f_1) = 0`.
    Checked { vanishes: bool },
}

impl FiltrationChain {
    /// Builds the chain from nested subspaces of `C` (columns span `C_1, ..., C_{n-1}`).
    pub fn from_subspaces(object: &Module, spans: &[Mat]) -> Result<Self> {
        let f = object.field();
        let mut subs = vec![object.submodule(&Mat::zeros(f, object.dim(), 0))?];
        for s in spans {
            subs.push(object.submodule(s)?);
        }
        subs.push(object.submodule(&Mat::identity(f, object.dim()))?);
        let mut steps = Vec::new();
        let mut factors = Vec::new();
        for w in subs.windows(2) {
            let coords = w[1]
                .incl
                .mat
                .solve(&w[0].incl.mat)?
                .ok_or_else(|| Error::InvalidModule("filtration is not nested".into()))?;
            let step = ModuleMap::new_unchecked(w[0].module.clone(), w[1].module.clone(), coords);
            factors.push(step.cokernel().module);
            steps.push(step);
        }
        // Replace the top by the object itself so the chain ends at C.
        let top = subs.last().unwrap();
        let last = steps.last_mut().unwrap();
        *last = ModuleMap::new_unchecked(last.source.clone(), object.clone(), top.incl.mat.mul(&last.mat));
        Ok(Self { object: object.clone(), steps, factors })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Given maps `f_1, ..., f_n` (composable, `f_1` first) with `Ext(C_k/C_{k-1}, f_k) = 0`,
/// decides whether `Ext(C, f_n ∘ ... ∘ f_1) = 0`.
pub fn filtration_ghost_check(filt: &FiltrationChain, maps: &[ModuleMap]) -> Result<FiltrationVerdict> {
    if maps.len() != filt.len() {
        return Err(Error::Mismatch("need one map per filtration step".into()));
    }
    for (k, (factor, f)) in filt.factors.iter().zip(maps).enumerate() {
        if !ext_on_map(factor, f)?.is_zero() {
            return Ok(FiltrationVerdict::PreconditionFailed { step: k });
        }
    }
    let mut comp = maps[0].clone();
    for f in &maps[1..] {
        comp = f.compose(&comp)?;
    }
    Ok(FiltrationVerdict::Checked { vanishes: ext_on_map(&filt.object, &comp)?.is_zero() })
}
